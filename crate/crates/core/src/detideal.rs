//! Schubert determinantal ideals, their antidiagonal initial ideals, and the
//! monomial-ideal utilities built on top of them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Cell, PartialPermutation};
use crate::poly::{
    antidiagonal, buchberger, minor, Field, Grid, IdealPresentation, Monomial, Polynomial, TermOrder,
};

/// Which cells index the minors in [`fulton_generators`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorCells {
    /// The essential set `E(w)`: the usual, smaller generating set.
    Essential,
    /// Every cell of the diagram `D(w)`.
    Diagram,
}

/// One minor `[rows | cols]` of the generic matrix, tagged with the cell it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMinor<F: Field> {
    pub cell: Cell,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: Polynomial<F>,
}

impl<F: Field> LabeledMinor<F> {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn label(&self) -> String {
        minor_label(&self.rows, &self.cols)
    }

    pub fn antidiagonal(&self) -> Monomial {
        antidiagonal(self.poly.grid(), &self.rows, &self.cols)
    }
}

/// `x[p,q]` for a 1-minor, `[12|34]` for larger ones (comma-separated
/// indices once any index exceeds 9).
pub fn minor_label(rows: &[usize], cols: &[usize]) -> String {
    if rows.len() == 1 {
        return format!("x[{},{}]", rows[0], cols[0]);
    }
    let compact = rows.iter().chain(cols).all(|&k| k <= 9);
    let join = |v: &[usize]| {
        if compact {
            v.iter().map(ToString::to_string).collect::<String>()
        } else {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        }
    };
    format!("[{}|{}]", join(rows), join(cols))
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(1, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// The Schubert determinantal ideal `I_w` with its Fulton generators.
#[derive(Debug, Clone)]
pub struct SchubertIdeal<F: Field> {
    source: PartialPermutation,
    grid: Grid,
    cells: Vec<(Cell, usize)>,
    generators: Vec<LabeledMinor<F>>,
}

/// The Fulton generators of `I_w`: for every `(p,q)` in `E(w)` (or `D(w)`)
/// all minors of size `r_{p,q}(w) + 1` of the upper-left `p x q` generic
/// submatrix. Cells are visited row-major; within a cell minors are listed by
/// row subset, then column subset, lexicographically.
pub fn fulton_generators<F: Field>(w: &PartialPermutation, ctx: &F::Context, which: GeneratorCells) -> SchubertIdeal<F> {
    let grid = Grid::new(w.rows(), w.cols());
    let cells = match which {
        GeneratorCells::Essential => w.essential_set(),
        GeneratorCells::Diagram => w.diagram().iter().collect(),
    };
    let mut generators = Vec::new();
    for &(cell, r) in &cells {
        let size = r + 1;
        for rows in subsets(cell.p, size) {
            for cols in subsets(cell.q, size) {
                let poly = minor(grid, ctx, &rows, &cols).expect("indices inside the grid");
                generators.push(LabeledMinor {
                    cell,
                    rows: rows.clone(),
                    cols,
                    poly,
                });
            }
        }
    }
    SchubertIdeal {
        source: w.clone(),
        grid,
        cells,
        generators,
    }
}

impl<F: Field> SchubertIdeal<F> {
    pub fn source(&self) -> &PartialPermutation {
        &self.source
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// The cells (with ranks) the generators were built from.
    pub fn cells(&self) -> &[(Cell, usize)] {
        &self.cells
    }

    pub fn generators(&self) -> &[LabeledMinor<F>] {
        &self.generators
    }

    pub fn polynomials(&self) -> Vec<Polynomial<F>> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn presentation(&self) -> IdealPresentation<F> {
        IdealPresentation::new(self.grid, self.polynomials())
    }

    /// A shorter generating set of the same ideal: the distinct 1-minors,
    /// followed by every larger minor that does not already lie in the ideal
    /// of those variables.
    pub fn pruned(&self) -> Vec<LabeledMinor<F>> {
        let mut vars: Vec<&LabeledMinor<F>> = Vec::new();
        for g in self.generators.iter().filter(|g| g.size() == 1) {
            if !vars.iter().any(|v| v.rows == g.rows && v.cols == g.cols) {
                vars.push(g);
            }
        }
        vars.sort_by_key(|g| (g.rows[0], g.cols[0]));
        let var_monomials: Vec<Monomial> = vars.iter().map(|g| g.antidiagonal()).collect();
        let mut out: Vec<LabeledMinor<F>> = vars.into_iter().cloned().collect();
        for g in self.generators.iter().filter(|g| g.size() > 1) {
            let redundant = monomial_quotient_membership(&g.poly, &var_monomials);
            let duplicate = out.iter().any(|h| h.rows == g.rows && h.cols == g.cols);
            if !redundant && !duplicate {
                out.push(g.clone());
            }
        }
        out
    }
}

/// A monomial ideal given by its minimal generators, sorted ascending under
/// [`TermOrder::AntidiagonalLex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    grid: Grid,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(grid: Grid, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by(|a, b| TermOrder::AntidiagonalLex.compare(a, b));
        all.dedup();
        let mut minimal: Vec<Monomial> = Vec::with_capacity(all.len());
        // a divisor precedes its multiples in any monomial order
        for m in all {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        MonomialIdeal { grid, gens: minimal }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn with_generator(&self, m: Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.grid, self.gens.iter().cloned().chain(std::iter::once(m)))
    }

    /// `(J : m)`, generated by `g / gcd(g, m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.grid, self.gens.iter().map(|g| g.colon(m)))
    }

    pub fn render(&self) -> Vec<String> {
        self.gens.iter().map(|m| self.grid.render(m)).collect()
    }
}

/// `J_w`: the ideal generated by the antidiagonals of the Fulton generators.
pub fn antidiagonal_ideal(w: &PartialPermutation) -> MonomialIdeal {
    let grid = Grid::new(w.rows(), w.cols());
    let mut gens = Vec::new();
    for (cell, r) in w.essential_set() {
        for rows in subsets(cell.p, r + 1) {
            for cols in subsets(cell.q, r + 1) {
                gens.push(antidiagonal(grid, &rows, &cols));
            }
        }
    }
    MonomialIdeal::new(grid, gens)
}

/// Outcome of comparing the initial ideal of `I_w` (via Buchberger) with `J_w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroebnerReport {
    pub w: String,
    #[serde(rename = "match")]
    pub matches: bool,
    pub gb_leading: Vec<String>,
    pub antidiagonal: Vec<String>,
}

/// Computes the reduced Gröbner basis of the Fulton generators under the
/// antidiagonal order and checks that its leading monomials generate `J_w`.
pub fn verify_groebner<F: Field>(w: &PartialPermutation, ctx: &F::Context) -> GroebnerReport {
    let ideal = fulton_generators::<F>(w, ctx, GeneratorCells::Essential);
    verify_groebner_with(w, &ideal.polynomials())
}

/// [`verify_groebner`] for an explicit generating set.
pub fn verify_groebner_with<F: Field>(w: &PartialPermutation, generators: &[Polynomial<F>]) -> GroebnerReport {
    let grid = Grid::new(w.rows(), w.cols());
    let basis = buchberger(generators, TermOrder::AntidiagonalLex);
    let leading = MonomialIdeal::new(
        grid,
        basis
            .iter()
            .map(|g| g.leading_monomial(TermOrder::AntidiagonalLex).expect("nonzero").clone()),
    );
    let expected = antidiagonal_ideal(w);
    GroebnerReport {
        w: describe(w),
        matches: leading == expected,
        gb_leading: leading.render(),
        antidiagonal: expected.render(),
    }
}

/// One-line notation for permutations, the dense rows otherwise.
pub fn describe(w: &PartialPermutation) -> String {
    match w.to_permutation() {
        Ok(p) => p.to_string(),
        Err(_) => w.to_string().replace('\n', "/"),
    }
}

/// The height of a squarefree monomial ideal: the smallest set of variables
/// meeting the support of every generator (an exact minimum vertex cover of
/// the generator hypergraph).
pub fn monomial_codim(j: &MonomialIdeal) -> Result<usize> {
    if !j.is_squarefree() {
        return Err(Error::domain("monomial_codim needs a squarefree monomial ideal"));
    }
    if j.grid().num_vars() > 128 {
        return Err(Error::domain("monomial_codim supports at most 128 variables"));
    }
    let edges: Vec<u128> = j
        .generators()
        .iter()
        .map(|m| m.support().fold(0u128, |acc, k| acc | (1u128 << k)))
        .collect();
    if edges.iter().any(|&e| e == 0) {
        return Err(Error::domain("the unit ideal has no finite height"));
    }
    let mut best = greedy_cover(&edges);
    branch(&edges, 0, 0, &mut best);
    Ok(best)
}

fn greedy_cover(edges: &[u128]) -> usize {
    let mut chosen = 0u128;
    let mut size = 0;
    loop {
        let open: Vec<u128> = edges.iter().copied().filter(|e| e & chosen == 0).collect();
        if open.is_empty() {
            return size;
        }
        let best_var = (0..128)
            .max_by_key(|&v| open.iter().filter(|e| *e >> v & 1 == 1).count())
            .unwrap();
        chosen |= 1 << best_var;
        size += 1;
    }
}

/// Lower bound: a set of pairwise disjoint open edges needs one variable each.
fn packing_bound(open: &[u128]) -> usize {
    let mut used = 0u128;
    let mut count = 0;
    for &e in open {
        if e & used == 0 {
            used |= e;
            count += 1;
        }
    }
    count
}

fn branch(edges: &[u128], chosen: u128, size: usize, best: &mut usize) {
    let mut open: Vec<u128> = edges.iter().copied().filter(|e| e & chosen == 0).collect();
    if open.is_empty() {
        *best = (*best).min(size);
        return;
    }
    open.sort_by_key(|e| e.count_ones());
    if size + packing_bound(&open) >= *best {
        return;
    }
    let pivot = open[0];
    let mut vars: Vec<u32> = (0..128).filter(|&v| pivot >> v & 1 == 1).collect();
    vars.sort_by_key(|&v| std::cmp::Reverse(open.iter().filter(|e| *e >> v & 1 == 1).count()));
    for v in vars {
        branch(edges, chosen | (1 << v), size + 1, best);
    }
}

/// Whether every term of `f` is divisible by one of `gens`, i.e. `f` lies in
/// the monomial ideal they generate.
pub fn monomial_quotient_membership<F: Field>(f: &Polynomial<F>, gens: &[Monomial]) -> bool {
    f.monomials().all(|m| gens.iter().any(|g| g.divides(m)))
}

/// Whether the variable `c` is a nonzerodivisor on `K[x]/J` for a squarefree
/// monomial ideal `J`: for every minimal generator `D` divisible by `c`,
/// `D / c` must lie in `J`.
pub fn is_nonzerodivisor_on_monomial_quotient(c: &Monomial, j: &MonomialIdeal) -> Result<bool> {
    if c.degree() != 1 {
        return Err(Error::domain("c must be a single variable"));
    }
    if !j.is_squarefree() {
        return Err(Error::domain("J must be squarefree"));
    }
    Ok(j
        .generators()
        .iter()
        .filter_map(|d| c.quotient_of(d))
        .all(|rest| j.contains(&rest)))
}
