//! Checks of the localization argument at `c = x[i0, w(i0)]`: the choice of
//! `c`, membership of minors in `<c> + J_w`, the initial ideal of
//! `<c> + I_w`, `c` as a nonzerodivisor on `K[x]/J_w`, and the identity
//! `I = I'` after inverting `c`.

use serde::Serialize;

use crate::detideal::{
    antidiagonal_ideal, fulton_generators, is_nonzerodivisor_on_monomial_quotient, minor_label,
    monomial_quotient_membership, subsets, GeneratorCells, LabeledMinor, MonomialIdeal,
};
use crate::error::{Error, Result};
use crate::perm::{Cell, DeletedRowCol, Permutation};
use crate::poly::{
    antidiagonal, buchberger, minor, saturate, Grid, IdealPresentation, Polynomial, Rational, TermOrder,
    VariableId,
};

/// Largest `n` accepted by the verification procedures.
pub const VERIFY_MAX_N: usize = 6;

const ORD: TermOrder = TermOrder::AntidiagonalLex;

fn check_size(operation: &'static str, w: &Permutation) -> Result<()> {
    if w.size() > VERIFY_MAX_N {
        return Err(Error::Capability {
            operation,
            bound: VERIFY_MAX_N,
            got: w.size(),
        });
    }
    Ok(())
}

fn require_c(w: &Permutation) -> Result<Cell> {
    find_c(w).ok_or_else(|| Error::domain(format!("{w} is regular: no element c exists")))
}

/// `(i0, w(i0))` for the smallest `i0` such that some cell of `E_{>0}(w)`
/// lies strictly southeast of it; `None` exactly when `E_{>0}(w)` is empty.
pub fn find_c(w: &Permutation) -> Option<Cell> {
    let positive: Vec<Cell> = w
        .essential_set()
        .into_iter()
        .filter(|&(_, r)| r > 0)
        .map(|(c, _)| c)
        .collect();
    (1..=w.size())
        .map(|i| Cell::new(i, w.at(i)))
        .find(|c0| positive.iter().any(|e| e.p > c0.p && e.q > c0.q))
}

/// The shape of `D(w)` around `c` in the upper-left `p0 x q0` window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    /// Every window cell in `D(w)` other than `c` has rank 0, and `c` is the
    /// only entry of `w` in the window.
    pub holds: bool,
    /// Every window cell other than `c` lies in `D(w)`.
    pub window_in_diagram: bool,
    /// Every cell of `D(w)` in rows `1..=p0` has rank 0.
    pub rows_rank_zero: bool,
    pub only_entry: bool,
}

pub fn verify_d0_window(w: &Permutation, c: Cell) -> WindowReport {
    let diagram = w.diagram();
    let window: Vec<Cell> = (1..=c.p)
        .flat_map(|p| (1..=c.q).map(move |q| Cell::new(p, q)))
        .filter(|&x| x != c)
        .collect();
    let window_rank_zero = window.iter().all(|&x| diagram.rank(x).map_or(true, |r| r == 0));
    let only_entry = w.at(c.p) == c.q && (1..c.p).all(|i| w.at(i) > c.q);
    let rows_rank_zero = diagram.iter().filter(|(x, _)| x.p <= c.p).all(|(_, r)| r == 0);
    WindowReport {
        holds: window_rank_zero && only_entry,
        window_in_diagram: window.iter().all(|&x| diagram.contains(x)),
        rows_rank_zero,
        only_entry,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub holds: bool,
    /// Minors whose antidiagonal is divisible by `c`.
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Every minor of the generic `n x n` matrix whose antidiagonal is divisible
/// by `c` lies, term by term, in `<c> + J_w`.
pub fn verify_lemma1(w: &Permutation) -> Result<Lemma1Report> {
    check_size("verify_lemma1", w)?;
    let c = require_c(w)?;
    let n = w.size();
    let grid = Grid::square(n);
    let cm = grid.var(c.p, c.q);
    let mut gens = antidiagonal_ideal(w.as_partial()).generators().to_vec();
    gens.push(cm.clone());
    let mut checked = 0;
    let mut violations = Vec::new();
    for k in 1..=n {
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                if !cm.divides(&antidiagonal(grid, &rows, &cols)) {
                    continue;
                }
                checked += 1;
                let delta = minor::<Rational>(grid, &(), &rows, &cols)?;
                if !monomial_quotient_membership(&delta, &gens) {
                    violations.push(minor_label(&rows, &cols));
                }
            }
        }
    }
    Ok(Lemma1Report {
        holds: violations.is_empty(),
        checked,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    /// The initial ideal of `<c> + I_w` equals `<c> + J_w`.
    pub holds: bool,
    /// The initial ideal contains `<c> + J_w`.
    pub contains: bool,
    pub gb_leading: Vec<String>,
    pub expected: Vec<String>,
}

fn schubert_presentation(w: &Permutation) -> IdealPresentation<Rational> {
    let ideal = fulton_generators::<Rational>(w.as_partial(), &(), GeneratorCells::Essential);
    IdealPresentation::new(ideal.grid(), ideal.pruned().into_iter().map(|g| g.poly).collect())
}

pub fn verify_lemma2(w: &Permutation) -> Result<Lemma2Report> {
    check_size("verify_lemma2", w)?;
    let c = require_c(w)?;
    let presentation = schubert_presentation(w);
    let grid = presentation.grid();
    let mut gens = presentation.generators().to_vec();
    gens.push(Polynomial::var(grid, &(), c.p, c.q));
    let basis = buchberger(&gens, ORD);
    let leading = MonomialIdeal::new(grid, basis.iter().map(|g| g.leading_monomial(ORD).unwrap().clone()));
    let expected = antidiagonal_ideal(w.as_partial()).with_generator(grid.var(c.p, c.q));
    Ok(Lemma2Report {
        holds: leading == expected,
        contains: expected.generators().iter().all(|m| leading.contains(m)),
        gb_leading: leading.render(),
        expected: expected.render(),
    })
}

/// `c` is a nonzerodivisor on `K[x]/J_w`.
pub fn verify_lemma3_nzd(w: &Permutation) -> Result<bool> {
    let c = require_c(w)?;
    let j = antidiagonal_ideal(w.as_partial());
    is_nonzerodivisor_on_monomial_quotient(&j.grid().var(c.p, c.q), &j)
}

/// The change of variables `x'[p,q] = x[p,q] - x[p,q0]*x[p0,q]/c` off the
/// cross `Gamma` through `c`, and the ideal `I'` written in the original
/// variables with denominators cleared.
#[derive(Debug, Clone)]
pub struct LocalizationSetup {
    pub w: Permutation,
    pub c: Cell,
    pub w_prime: DeletedRowCol,
    /// Cells in row `p0` or column `q0`.
    pub gamma: Vec<Cell>,
    /// Fulton generators of `I_{w'}`, indexed by original row and column labels.
    pub primed_generators: Vec<LabeledMinor<Rational>>,
    /// The distinct primed generators after pruning, as in [`crate::detideal::SchubertIdeal::pruned`].
    pub primed_pruned: Vec<LabeledMinor<Rational>>,
    /// `x[p,q]` for cells of `Gamma` west or north of `c`.
    pub gamma_variables: Vec<Polynomial<Rational>>,
    /// The cleared primed generators followed by the `Gamma` variables.
    pub cleared_generators: Vec<Polynomial<Rational>>,
}

/// `x'[2,1]` for a 1-minor, `[34|12]'` otherwise.
pub fn primed_label(rows: &[usize], cols: &[usize]) -> String {
    if rows.len() == 1 {
        format!("x'[{},{}]", rows[0], cols[0])
    } else {
        format!("{}'", minor_label(rows, cols))
    }
}

impl LocalizationSetup {
    pub fn grid(&self) -> Grid {
        Grid::square(self.w.size())
    }

    pub fn c_polynomial(&self) -> Polynomial<Rational> {
        Polynomial::var(self.grid(), &(), self.c.p, self.c.q)
    }

    /// `c * x'[p,q] = c*x[p,q] - x[p,q0]*x[p0,q]`.
    pub fn cleared_variable(&self, p: usize, q: usize) -> Polynomial<Rational> {
        let g = self.grid();
        let x = |i, j| Polynomial::<Rational>::var(g, &(), i, j);
        self.c_polynomial().mul(&x(p, q)).sub(&x(p, self.c.q).mul(&x(self.c.p, q)))
    }

    /// Reads `f` as a polynomial in the primed variables (off `Gamma`) and
    /// returns `c^d * f(x')` for homogeneous `f` of degree `d`, expressed in
    /// the original variables.
    pub fn clear_primed(&self, f: &Polynomial<Rational>) -> Polynomial<Rational> {
        let g = self.grid();
        let d = f.total_degree().unwrap_or(0);
        assert!(f.is_homogeneous(), "clear_primed needs a homogeneous polynomial");
        let mut out = Polynomial::zero(g);
        for (m, coeff) in f.terms() {
            let mut term = Polynomial::constant(g, coeff.clone());
            for slot in m.support() {
                let VariableId::Grid { i, j } = g.variable(slot) else {
                    panic!("auxiliary variable in a primed polynomial");
                };
                assert!(i != self.c.p && j != self.c.q, "x[{i},{j}] lies on Gamma");
                term = term.mul(&self.cleared_variable(i, j).pow(m.exponent(slot) as u32));
            }
            out = out.add(&term);
        }
        debug_assert!(out.is_zero() || out.total_degree() == Some(2 * d));
        out
    }

    /// Divides out the largest power of `c` dividing every term.
    pub fn strip_c(&self, f: &Polynomial<Rational>) -> Polynomial<Rational> {
        let cm = self.grid().var(self.c.p, self.c.q);
        let mut f = f.clone();
        while !f.is_zero() {
            match f.exact_div_monomial(&cm) {
                Some(q) => f = q,
                None => break,
            }
        }
        f
    }

    pub fn presentation(&self) -> IdealPresentation<Rational> {
        IdealPresentation::new(self.grid(), self.cleared_generators.clone())
    }
}

pub fn build_localization(w: &Permutation) -> Result<LocalizationSetup> {
    let c = require_c(w)?;
    let n = w.size();
    let grid = Grid::square(n);
    let w_prime = w.delete_row_col(c.p, c.q)?;
    let relabel = |m: &LabeledMinor<Rational>| {
        let rows: Vec<usize> = m.rows.iter().map(|&a| w_prime.row_labels[a - 1]).collect();
        let cols: Vec<usize> = m.cols.iter().map(|&b| w_prime.col_labels[b - 1]).collect();
        let poly = minor::<Rational>(grid, &(), &rows, &cols).expect("inside the grid");
        LabeledMinor {
            cell: w_prime.original_cell(m.cell),
            rows,
            cols,
            poly,
        }
    };
    let ideal_prime = fulton_generators::<Rational>(w_prime.perm.as_partial(), &(), GeneratorCells::Essential);
    let primed_generators: Vec<_> = ideal_prime.generators().iter().map(relabel).collect();
    let primed_pruned: Vec<_> = ideal_prime.pruned().iter().map(relabel).collect();

    let gamma: Vec<Cell> = (1..=n)
        .flat_map(|p| (1..=n).map(move |q| Cell::new(p, q)))
        .filter(|x| x.p == c.p || x.q == c.q)
        .collect();
    let gamma_variables: Vec<_> = gamma
        .iter()
        .filter(|x| x.p < c.p || x.q < c.q)
        .map(|x| Polynomial::var(grid, &(), x.p, x.q))
        .collect();

    let mut setup = LocalizationSetup {
        w: w.clone(),
        c,
        w_prime,
        gamma,
        primed_generators,
        primed_pruned,
        gamma_variables,
        cleared_generators: Vec::new(),
    };
    let mut cleared = Vec::new();
    for g in &setup.primed_generators {
        let h = setup.strip_c(&setup.clear_primed(&g.poly));
        if !h.is_zero() && !cleared.contains(&h) {
            cleared.push(h);
        }
    }
    cleared.extend(setup.gamma_variables.iter().cloned());
    setup.cleared_generators = cleared;
    Ok(setup)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalizationIdentityReport {
    pub holds: bool,
    /// Every cleared generator of `I'` lies in `(I_w : c^inf)`.
    pub iprime_in_i: bool,
    /// Every Fulton generator of `I_w` lies in `(I' : c^inf)`.
    pub i_in_iprime: bool,
    /// `(I_w : c^inf)` is a proper ideal.
    pub proper: bool,
}

/// `I = I'` in `K[x][1/c]`, tested as equality of `c`-saturations.
pub fn verify_i_equals_iprime(w: &Permutation) -> Result<LocalizationIdentityReport> {
    check_size("verify_i_equals_iprime", w)?;
    let setup = build_localization(w)?;
    let c = setup.c_polynomial();
    let sat_i = saturate(&schubert_presentation(w), &c).groebner_basis(ORD);
    let sat_iprime = saturate(&setup.presentation(), &c).groebner_basis(ORD);
    let fulton = fulton_generators::<Rational>(w.as_partial(), &(), GeneratorCells::Essential);
    let iprime_in_i = sat_i.contains_all(&setup.cleared_generators);
    let i_in_iprime = sat_iprime.contains_all(fulton.generators().iter().map(|g| &g.poly));
    let proper = !sat_i.is_unit_ideal();
    Ok(LocalizationIdentityReport {
        holds: iprime_in_i && i_in_iprime && proper,
        iprime_in_i,
        i_in_iprime,
        proper,
    })
}

/// The per-permutation summary of every localization check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub w: String,
    pub c: Option<[usize; 2]>,
    pub lemma1: bool,
    pub lemma2: bool,
    pub lemma3_nzd: bool,
    #[serde(rename = "I_eq_Iprime")]
    pub i_eq_iprime: bool,
    pub d0_window: bool,
    /// Set for regular `w`, where no `c` exists and every check is vacuous.
    pub skipped: bool,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.lemma1 && self.lemma2 && self.lemma3_nzd && self.i_eq_iprime && self.d0_window
    }
}

pub fn verify_localization(w: &Permutation) -> Result<VerificationReport> {
    check_size("verify_localization", w)?;
    let Some(c) = find_c(w) else {
        return Ok(VerificationReport {
            w: w.to_string(),
            c: None,
            lemma1: true,
            lemma2: true,
            lemma3_nzd: true,
            i_eq_iprime: true,
            d0_window: true,
            skipped: true,
        });
    };
    Ok(VerificationReport {
        w: w.to_string(),
        c: Some([c.p, c.q]),
        lemma1: verify_lemma1(w)?.holds,
        lemma2: verify_lemma2(w)?.holds,
        lemma3_nzd: verify_lemma3_nzd(w)?,
        i_eq_iprime: verify_i_equals_iprime(w)?.holds,
        d0_window: verify_d0_window(w, c).holds,
        skipped: false,
    })
}

/// Non-regular permutations of `S_5` with length at most 6, plus `35142`.
pub fn s5_localization_sample() -> Vec<Permutation> {
    let mut out: Vec<Permutation> = Permutation::all(5)
        .into_iter()
        .filter(|w| find_c(w).is_some() && w.coxeter_length() <= 6)
        .collect();
    let extra: Permutation = "35142".parse().unwrap();
    if !out.contains(&extra) {
        out.push(extra);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn c_for_examples() {
        assert_eq!(find_c(&perm("35142")), Some(Cell::new(1, 3)));
        assert_eq!(find_c(&Permutation::identity(4)), None);
        assert_eq!(find_c(&Permutation::longest(5)), None);
    }

    #[test]
    fn window_for_35142() {
        let w = perm("35142");
        let report = verify_d0_window(&w, Cell::new(1, 3));
        assert!(report.holds && report.window_in_diagram && report.rows_rank_zero && report.only_entry);
        let bad = verify_d0_window(&w, Cell::new(2, 5));
        assert!(!bad.holds);
    }

    #[test]
    fn lemmas_for_35142() {
        let w = perm("35142");
        let l1 = verify_lemma1(&w).unwrap();
        assert!(l1.holds, "{l1:?}");
        assert!(l1.checked > 1);
        let l2 = verify_lemma2(&w).unwrap();
        assert!(l2.holds && l2.contains, "{l2:?}");
        assert!(verify_lemma3_nzd(&w).unwrap());
        assert!(verify_lemma1(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn localization_of_35142() {
        let w = perm("35142");
        let setup = build_localization(&w).unwrap();
        assert_eq!(setup.w_prime.perm.to_string(), "4132");
        let names: Vec<String> = setup.primed_pruned.iter().map(|g| primed_label(&g.rows, &g.cols)).collect();
        assert_eq!(names, vec!["x'[2,1]", "x'[2,2]", "x'[2,4]", "[34|12]'"]);
        let g = setup.grid();
        let p = |s: &str| parse_polynomial(g, s).unwrap();
        for expected in [
            "x[1,3]*x[2,1] - x[2,3]*x[1,1]",
            "x[1,3]*x[2,2] - x[2,3]*x[1,2]",
            "x[1,3]*x[2,4] - x[2,3]*x[1,4]",
        ] {
            assert!(setup.cleared_generators.contains(&p(expected)), "{expected}");
        }
        assert_eq!(setup.gamma.len(), 9);
        assert_eq!(setup.gamma_variables, vec![p("x[1,1]"), p("x[1,2]")]);
        let cm = g.var(1, 3);
        for h in &setup.cleared_generators {
            assert!(h.exact_div_monomial(&cm).is_none());
        }
        let report = verify_i_equals_iprime(&w).unwrap();
        assert!(report.holds, "{report:?}");
    }

    #[test]
    fn regular_permutations_are_skipped() {
        let report = verify_localization(&perm("2134")).unwrap();
        assert!(report.skipped && report.c.is_none());
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["I_eq_Iprime"], true);
    }
}
