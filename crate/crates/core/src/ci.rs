//! Complete-intersection classification of matrix Schubert varieties, with a
//! recursion certificate and an independent minimal-generator-count oracle.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use serde::{Serialize, Serializer};

use crate::detideal::{describe, fulton_generators, GeneratorCells, LabeledMinor};
use crate::error::{Error, Result};
use crate::perm::{Cell, PartialPermutation, Permutation};
use crate::poly::{buchberger, minor, normal_form, Field, Grid, Monomial, Polynomial, Rational, TermOrder};

/// Largest `n` accepted by [`minimal_generator_count`].
pub const ORACLE_MAX_N: usize = 6;

/// One cell of `D_{>0}(w)` and the block `w_{(p,q)}` extracted there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateNode {
    pub cell: Cell,
    pub rank: usize,
    pub is_permutation: bool,
    /// The block in one-line notation, or its rows joined by `/` when it is
    /// not a permutation matrix.
    pub block: String,
    /// Classification of the block, present when it is a permutation.
    pub child: Option<Certificate>,
}

/// The recursion tree behind a verdict: one node per cell of `D_{>0}(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub w: String,
    pub verdict: bool,
    pub nodes: Vec<CertificateNode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    BlockNotPermutation,
    BlockNotCompleteIntersection,
}

/// A pair `(p-i, q)` or `(p, q-i)` in `D(w)` for some `(p,q)` in `D_{>0}(w)`
/// and `1 <= i <= r_{p,q}(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma51Violation {
    pub cell: Cell,
    pub i: usize,
    pub offending: Cell,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma51Report {
    pub holds: bool,
    pub violations: Vec<Lemma51Violation>,
}

/// The first cell of `D_{>0}(w)`, row-major, where the criterion fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cell: Cell,
    pub rank: usize,
    pub reason: FailureReason,
    /// Violations of the necessary condition located at this cell.
    pub lemma51_violations: Vec<Lemma51Violation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CIReport {
    pub w: String,
    pub verdict: bool,
    pub codim: usize,
    /// Minimal number of generators, filled in by [`CIReport::with_mu`].
    pub mu: Option<usize>,
    #[serde(serialize_with = "serialize_generators")]
    pub generators: Option<Vec<LabeledMinor<Rational>>>,
    pub witness: Option<Witness>,
    pub certificate: Certificate,
}

fn serialize_generators<S: Serializer>(
    gens: &Option<Vec<LabeledMinor<Rational>>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match gens {
        None => s.serialize_none(),
        Some(gens) => s.collect_seq(gens.iter().map(|g| &g.poly)),
    }
}

impl CIReport {
    pub fn with_mu(mut self, mu: usize) -> Self {
        self.mu = Some(mu);
        self
    }
}

fn cache() -> &'static RwLock<HashMap<Vec<usize>, Certificate>> {
    static CACHE: OnceLock<RwLock<HashMap<Vec<usize>, Certificate>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Evaluates the recursive criterion, memoized on one-line notation.
pub fn certificate(w: &Permutation) -> Certificate {
    let key = w.images();
    if let Some(hit) = cache().read().expect("cache lock").get(&key) {
        return hit.clone();
    }
    let mut nodes = Vec::new();
    for (cell, rank) in w.diagram().rank_positive() {
        let block = w.submatrix_w(cell).expect("diagram cells have room for their block");
        let child = block.as_permutation().map(|b| certificate(&b));
        nodes.push(CertificateNode {
            cell,
            rank,
            is_permutation: child.is_some(),
            block: describe(&block.block),
            child,
        });
    }
    let verdict = nodes.iter().all(|n| n.child.as_ref().is_some_and(|c| c.verdict));
    let cert = Certificate {
        w: w.to_string(),
        verdict,
        nodes,
    };
    cache().write().expect("cache lock").insert(key, cert.clone());
    cert
}

/// Classifies `w`: the matrix Schubert variety is a complete intersection iff
/// every block `w_{(p,q)}`, `(p,q)` in `D_{>0}(w)`, is a permutation of size
/// `r_{p,q}(w)` that is itself a complete intersection.
pub fn is_complete_intersection(w: &Permutation) -> CIReport {
    let certificate = certificate(w);
    let witness = certificate.nodes.iter().find_map(|n| {
        let reason = match &n.child {
            None => FailureReason::BlockNotPermutation,
            Some(c) if !c.verdict => FailureReason::BlockNotCompleteIntersection,
            Some(_) => return None,
        };
        Some(Witness {
            cell: n.cell,
            rank: n.rank,
            reason,
            lemma51_violations: lemma51_violations_at(w, n.cell, n.rank),
        })
    });
    let generators = certificate.verdict.then(|| explicit_generators(w, &()));
    CIReport {
        w: w.to_string(),
        verdict: certificate.verdict,
        codim: w.coxeter_length(),
        mu: None,
        generators,
        witness,
        certificate,
    }
}

/// Classifies a partial permutation through its extension to a permutation.
pub fn is_complete_intersection_partial(w: &PartialPermutation) -> CIReport {
    let mut report = is_complete_intersection(&w.extend_to_permutation());
    report.w = describe(w);
    report
}

/// The generators `x[p,q]` for `(p,q)` in `D_{=0}(w)` and the determinant of
/// the `(r+1) x (r+1)` block with southeast corner `(p,q)` for `(p,q)` in
/// `D_{>0}(w)`, in row-major cell order.
pub fn ci_generators<F: Field>(w: &Permutation, ctx: &F::Context) -> Result<Vec<LabeledMinor<F>>> {
    if !certificate(w).verdict {
        return Err(Error::domain(format!("{w} is not a complete intersection")));
    }
    Ok(explicit_generators(w, ctx))
}

fn explicit_generators<F: Field>(w: &Permutation, ctx: &F::Context) -> Vec<LabeledMinor<F>> {
    let grid = Grid::square(w.size());
    w.diagram()
        .iter()
        .map(|(cell, r)| {
            let rows: Vec<usize> = (cell.p - r..=cell.p).collect();
            let cols: Vec<usize> = (cell.q - r..=cell.q).collect();
            let poly = minor(grid, ctx, &rows, &cols).expect("block inside the grid");
            LabeledMinor { cell, rows, cols, poly }
        })
        .collect()
}

fn lemma51_violations_at(w: &Permutation, cell: Cell, rank: usize) -> Vec<Lemma51Violation> {
    let diagram = w.diagram();
    let mut out = Vec::new();
    for i in 1..=rank {
        for offending in [Cell::new(cell.p - i, cell.q), Cell::new(cell.p, cell.q - i)] {
            if diagram.contains(offending) {
                out.push(Lemma51Violation { cell, i, offending });
            }
        }
    }
    out
}

/// The necessary condition for a complete intersection: no cell of `D(w)`
/// within `r_{p,q}(w)` steps north or west of any `(p,q)` in `D_{>0}(w)`.
pub fn lemma51_check(w: &Permutation) -> Lemma51Report {
    let violations: Vec<_> = w
        .diagram()
        .rank_positive()
        .into_iter()
        .flat_map(|(cell, r)| lemma51_violations_at(w, cell, r))
        .collect();
    Lemma51Report {
        holds: violations.is_empty(),
        violations,
    }
}

/// Whether `D_{>0}(w)` is contained in the essential set.
pub fn positive_diagram_is_essential(w: &Permutation) -> bool {
    let essential: Vec<Cell> = w.essential_set().into_iter().map(|(c, _)| c).collect();
    w.diagram().rank_positive().iter().all(|(c, _)| essential.contains(c))
}

/// `mu(I_w) = dim_K I_w / m I_w`, computed degree by degree: the generators of
/// degree `d` contribute the rank of their normal forms modulo the ideal of
/// the lower-degree generators.
pub fn minimal_generator_count<F: Field>(w: &Permutation, ctx: &F::Context) -> Result<usize> {
    if w.size() > ORACLE_MAX_N {
        return Err(Error::Capability {
            operation: "minimal_generator_count",
            bound: ORACLE_MAX_N,
            got: w.size(),
        });
    }
    let ideal = fulton_generators::<F>(w.as_partial(), ctx, GeneratorCells::Essential);
    Ok(minimal_generator_count_of(&ideal.polynomials()))
}

/// `mu` of the ideal generated by homogeneous polynomials.
pub fn minimal_generator_count_of<F: Field>(generators: &[Polynomial<F>]) -> usize {
    let mut by_degree: BTreeMap<u32, Vec<Polynomial<F>>> = BTreeMap::new();
    for g in generators.iter().filter(|g| !g.is_zero()) {
        assert!(g.is_homogeneous(), "generator {g} is not homogeneous");
        by_degree.entry(g.total_degree().unwrap()).or_default().push(g.clone());
    }
    let ord = TermOrder::AntidiagonalLex;
    let mut lower: Vec<Polynomial<F>> = Vec::new();
    let mut mu = 0;
    for gens in by_degree.values() {
        let basis = buchberger(&lower, ord);
        mu += linear_rank(gens.iter().map(|g| normal_form(g, &basis, ord)));
        lower.extend(gens.iter().cloned());
    }
    mu
}

/// Dimension of the span of `polys`, by Gaussian elimination on leading terms.
pub fn linear_rank<F: Field>(polys: impl IntoIterator<Item = Polynomial<F>>) -> usize {
    let ord = TermOrder::AntidiagonalLex;
    let mut pivots: HashMap<Monomial, Polynomial<F>> = HashMap::new();
    for mut p in polys {
        while !p.is_zero() {
            let (c, m) = p.leading_term(ord).expect("nonzero");
            match pivots.get(m) {
                Some(pivot) => p = p.sub(&pivot.scale(c)),
                None => {
                    let m = m.clone();
                    pivots.insert(m, p.monic(ord));
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Fp, PrimeModulus};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn labels(gens: &[LabeledMinor<Rational>]) -> Vec<String> {
        gens.iter().map(LabeledMinor::label).collect()
    }

    #[test]
    fn example_462153_is_ci() {
        let w = perm("462153");
        let report = is_complete_intersection(&w);
        assert!(report.verdict);
        assert_eq!(report.codim, 9);
        assert!(report.witness.is_none());
        assert_eq!(
            labels(report.generators.as_ref().unwrap()),
            vec![
                "x[1,1]", "x[1,2]", "x[1,3]", "x[2,1]", "x[2,2]", "x[2,3]", "[12|45]", "x[3,1]", "[345|123]"
            ]
        );
        assert_eq!(minimal_generator_count::<Rational>(&w, &()).unwrap(), 9);
        assert!(lemma51_check(&w).holds);
    }

    #[test]
    fn example_361452_fails_at_2_5() {
        let w = perm("361452");
        let report = is_complete_intersection(&w);
        assert!(!report.verdict);
        assert!(report.generators.is_none());
        let witness = report.witness.unwrap();
        assert_eq!(witness.cell, Cell::new(2, 5));
        assert_eq!(witness.reason, FailureReason::BlockNotPermutation);
        assert_eq!(witness.lemma51_violations[0].offending, Cell::new(2, 4));
        let lemma = lemma51_check(&w);
        assert!(!lemma.holds);
        let pairs: Vec<(Cell, Cell)> = lemma.violations.iter().map(|v| (v.cell, v.offending)).collect();
        assert_eq!(
            pairs,
            vec![(Cell::new(2, 5), Cell::new(2, 4)), (Cell::new(5, 2), Cell::new(4, 2))]
        );
        assert!(minimal_generator_count::<Rational>(&w, &()).unwrap() > w.coxeter_length());
    }

    #[test]
    fn example_352614_fails_at_4_4() {
        let w = perm("352614");
        let report = is_complete_intersection(&w);
        assert!(!report.verdict);
        let witness = report.witness.unwrap();
        assert_eq!(witness.cell, Cell::new(4, 4));
        assert_eq!(witness.rank, 2);
        assert_eq!(witness.reason, FailureReason::BlockNotPermutation);
        // D_{>0} = E_{>0} holds here even though w is not a complete intersection
        assert!(positive_diagram_is_essential(&w));
        assert!(minimal_generator_count::<Rational>(&w, &()).unwrap() > w.coxeter_length());
    }

    #[test]
    fn trivial_cases() {
        let id = Permutation::identity(4);
        let report = is_complete_intersection(&id);
        assert!(report.verdict);
        assert!(report.generators.unwrap().is_empty());
        assert!(lemma51_check(&id).holds);
        assert_eq!(minimal_generator_count::<Rational>(&id, &()).unwrap(), 0);

        assert_eq!(labels(&ci_generators::<Rational>(&perm("21"), &()).unwrap()), vec!["x[1,1]"]);
        let w0 = Permutation::longest(4);
        let gens = ci_generators::<Rational>(&w0, &()).unwrap();
        assert_eq!(gens.len(), 6);
        assert!(gens.iter().all(|g| g.size() == 1 && g.rows[0] + g.cols[0] <= 4));
        assert!(ci_generators::<Rational>(&perm("352614"), &()).is_err());
    }

    #[test]
    fn certificate_covers_positive_diagram() {
        let w = perm("462153");
        let cert = certificate(&w);
        let cells: Vec<Cell> = cert.nodes.iter().map(|n| n.cell).collect();
        assert_eq!(cells, vec![Cell::new(2, 5), Cell::new(5, 3)]);
        assert_eq!(cert.nodes[1].block, "21");
        assert!(cert.nodes[1].child.as_ref().unwrap().verdict);
    }

    #[test]
    fn report_json_shape() {
        let report = is_complete_intersection(&perm("2143")).with_mu(2);
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["verdict"], true);
        assert_eq!(v["mu"], 2);
        assert_eq!(v["generators"][0], "x[1,1]");
        assert!(v["witness"].is_null());
    }

    #[test]
    fn prime_field_oracle_agrees() {
        let ctx = PrimeModulus::default();
        for s in ["462153", "361452", "352614", "35142"] {
            let w = perm(s);
            assert_eq!(
                minimal_generator_count::<Fp>(&w, &ctx).unwrap(),
                minimal_generator_count::<Rational>(&w, &()).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn oracle_rejects_large_n() {
        let w = Permutation::identity(7);
        assert!(matches!(
            minimal_generator_count::<Rational>(&w, &()),
            Err(Error::Capability { bound: 6, got: 7, .. })
        ));
    }

    #[test]
    fn partial_permutations_classify_through_extension() {
        let w = PartialPermutation::new(2, 2, vec![Some(2), None]).unwrap();
        let report = is_complete_intersection_partial(&w);
        assert!(report.verdict);
        assert_eq!(report.codim, w.diagram().len());
    }
}
