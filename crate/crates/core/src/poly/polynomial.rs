use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::field::Field;
use super::monomial::{Grid, Monomial, TermOrder};
use crate::error::{Error, Result};

/// A sparse polynomial over a grid of variables.
///
/// Terms are kept sorted in descending [`TermOrder::Elimination`] order with
/// no zero coefficients, so equal polynomials have identical term lists. On
/// polynomials free of the auxiliary variable this is also descending
/// antidiagonal order.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    grid: Grid,
    terms: Vec<(Monomial, F)>,
}

pub(crate) const CANONICAL: TermOrder = TermOrder::Elimination;

impl<F: Field> Polynomial<F> {
    pub fn zero(grid: Grid) -> Self {
        Polynomial { grid, terms: Vec::new() }
    }

    pub fn constant(grid: Grid, c: F) -> Self {
        Self::term(grid, c, grid.one())
    }

    pub fn term(grid: Grid, c: F, m: Monomial) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { grid, terms }
    }

    pub fn var(grid: Grid, ctx: &F::Context, i: usize, j: usize) -> Self {
        Self::term(grid, F::one(ctx), grid.var(i, j))
    }

    pub fn monomial(grid: Grid, ctx: &F::Context, m: Monomial) -> Self {
        Self::term(grid, F::one(ctx), m)
    }

    /// Builds a polynomial from arbitrary terms, combining like monomials.
    pub fn from_terms(grid: Grid, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), grid.num_vars(), "monomial from another grid");
            match acc.get_mut(&m) {
                Some(existing) => *existing = existing.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| CANONICAL.compare(&b.0, &a.0));
        Polynomial { grid, terms }
    }

    /// Terms sorted descending under `ord`.
    pub(crate) fn sorted_terms(&self, ord: TermOrder) -> Vec<(Monomial, F)> {
        let mut t = self.terms.clone();
        if ord != CANONICAL && self.terms.iter().any(|(m, _)| m.aux_exponent() > 0) {
            t.sort_by(|a, b| ord.compare(&b.0, &a.0));
        }
        t
    }

    pub(crate) fn from_sorted(grid: Grid, mut terms: Vec<(Monomial, F)>, ord: TermOrder) -> Self {
        if ord != CANONICAL && terms.iter().any(|(m, _)| m.aux_exponent() > 0) {
            terms.sort_by(|a, b| CANONICAL.compare(&b.0, &a.0));
        }
        Polynomial { grid, terms }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F> {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c)
    }

    /// The largest term under `ord`.
    pub fn leading_term(&self, ord: TermOrder) -> Result<(&F, &Monomial)> {
        let best = match ord {
            CANONICAL => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| ord.compare(&a.0, &b.0)),
        };
        best.map(|(m, c)| (c, m))
            .ok_or_else(|| Error::domain("leading term of the zero polynomial"))
    }

    pub fn leading_monomial(&self, ord: TermOrder) -> Result<&Monomial> {
        self.leading_term(ord).map(|(_, m)| m)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            grid: self.grid,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.grid);
        }
        Polynomial {
            grid: self.grid,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// Multiplies by the term `c * m`; monomial multiplication preserves the order.
    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.grid);
        }
        Polynomial {
            grid: self.grid,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_grid(other);
        Polynomial {
            grid: self.grid,
            terms: merge(&self.terms, &other.terms, CANONICAL, |c| c.clone()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_grid(other);
        Polynomial {
            grid: self.grid,
            terms: merge(&self.terms, &other.terms, CANONICAL, F::neg),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_grid(other);
        let mut acc = Self::zero(self.grid);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(c, m));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let ctx = self.terms.first().map(|(_, c)| c.context());
        let mut acc = match ctx {
            Some(ctx) => Self::constant(self.grid, F::one(&ctx)),
            None => return if e == 0 { panic!("0^0 has no field context") } else { self.clone() },
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides every term by `m`, if `m` divides every term.
    pub fn exact_div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| m.quotient_of(t).map(|q| (q, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { grid: self.grid, terms })
    }

    /// Scales so that the leading coefficient under `ord` is 1.
    pub fn monic(&self, ord: TermOrder) -> Self {
        match self.leading_term(ord) {
            Ok((c, _)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    fn check_grid(&self, other: &Self) {
        assert_eq!(self.grid, other.grid, "polynomials over different grids");
    }

    /// Canonical text form, e.g. `-x[1,4]*x[2,3] + x[1,3]*x[2,4]`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = self.grid.render(m);
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Serializes as the canonical text form.
impl<F: Field> serde::Serialize for Polynomial<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.render())
    }
}

/// Merges two descending term lists, mapping the right-hand coefficients
/// through `rhs` (identity for addition, negation for subtraction).
pub(crate) fn merge<F: Field>(
    a: &[(Monomial, F)],
    b: &[(Monomial, F)],
    ord: TermOrder,
    rhs: impl Fn(&F) -> F,
) -> Vec<(Monomial, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ord.compare(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), rhs(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = a[i].1.add(&rhs(&b[j].1));
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
    out
}

/// The minor `[rows | cols]` of the generic matrix on `grid`, expanded
/// exactly by cofactor expansion along the first row with memoization on the
/// remaining column set.
pub fn minor<F: Field>(grid: Grid, ctx: &F::Context, rows: &[usize], cols: &[usize]) -> Result<Polynomial<F>> {
    if rows.len() != cols.len() || rows.is_empty() {
        return Err(Error::domain("a minor needs equally many rows and columns, at least one"));
    }
    let strictly_increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
    if !strictly_increasing(rows) || !strictly_increasing(cols) {
        return Err(Error::domain("minor indices must be strictly increasing"));
    }
    if rows.iter().any(|&i| i == 0 || i > grid.rows) || cols.iter().any(|&j| j == 0 || j > grid.cols) {
        return Err(Error::domain("minor indices outside the grid"));
    }
    if rows.len() > 16 {
        return Err(Error::domain("minor too large"));
    }
    let mut memo: HashMap<u32, Polynomial<F>> = HashMap::new();
    let full = (1u32 << cols.len()) - 1;
    Ok(expand(grid, ctx, rows, cols, 0, full, &mut memo))
}

fn expand<F: Field>(
    grid: Grid,
    ctx: &F::Context,
    rows: &[usize],
    cols: &[usize],
    row: usize,
    mask: u32,
    memo: &mut HashMap<u32, Polynomial<F>>,
) -> Polynomial<F> {
    if row == rows.len() {
        return Polynomial::constant(grid, F::one(ctx));
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let mut acc = Polynomial::zero(grid);
    let mut sign_positive = true;
    for (k, &col) in cols.iter().enumerate() {
        if mask & (1 << k) == 0 {
            continue;
        }
        let sub = expand(grid, ctx, rows, cols, row + 1, mask & !(1 << k), memo);
        let coeff = F::from_i64(ctx, if sign_positive { 1 } else { -1 });
        acc = acc.add(&sub.mul_term(&coeff, &grid.var(rows[row], col)));
        sign_positive = !sign_positive;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// The product of the antidiagonal entries of `[rows | cols]`.
pub fn antidiagonal(grid: Grid, rows: &[usize], cols: &[usize]) -> Monomial {
    let t = rows.len();
    let vars: Vec<(usize, usize)> = (0..t).map(|k| (rows[k], cols[t - 1 - k])).collect();
    grid.monomial(&vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{Fp, PrimeModulus, Rational};

    type P = Polynomial<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(&(), v)
    }

    #[test]
    fn one_by_one_minor_is_a_variable() {
        let g = Grid::square(5);
        let m: P = minor(g, &(), &[1], &[3]).unwrap();
        assert_eq!(m, P::var(g, &(), 1, 3));
    }

    #[test]
    fn two_by_two_minor() {
        let g = Grid::square(4);
        let m: P = minor(g, &(), &[1, 2], &[3, 4]).unwrap();
        let expected = P::monomial(g, &(), g.monomial(&[(1, 3), (2, 4)]))
            .sub(&P::monomial(g, &(), g.monomial(&[(1, 4), (2, 3)])));
        assert_eq!(m, expected);
        assert_eq!(m.render(), "-x[1,4]*x[2,3] + x[1,3]*x[2,4]");
        let (c, lm) = m.leading_term(TermOrder::AntidiagonalLex).unwrap();
        assert_eq!(*c, q(-1));
        assert_eq!(*lm, g.monomial(&[(1, 4), (2, 3)]));
    }

    #[test]
    fn three_and_four_minors_lead_with_antidiagonal() {
        let g = Grid::square(4);
        let m3: P = minor(g, &(), &[1, 2, 3], &[1, 2, 3]).unwrap();
        assert_eq!(m3.num_terms(), 6);
        assert_eq!(
            *m3.leading_monomial(TermOrder::AntidiagonalLex).unwrap(),
            g.monomial(&[(1, 3), (2, 2), (3, 1)])
        );
        let m4: P = minor(g, &(), &[1, 2, 3, 4], &[1, 2, 3, 4]).unwrap();
        assert_eq!(m4.num_terms(), 24);
        assert_eq!(
            *m4.leading_monomial(TermOrder::AntidiagonalLex).unwrap(),
            g.monomial(&[(1, 4), (2, 3), (3, 2), (4, 1)])
        );
    }

    #[test]
    fn minor_rejects_bad_indices() {
        let g = Grid::square(3);
        assert!(minor::<Rational>(g, &(), &[1, 2], &[1]).is_err());
        assert!(minor::<Rational>(g, &(), &[2, 1], &[1, 2]).is_err());
        assert!(minor::<Rational>(g, &(), &[1, 1], &[1, 2]).is_err());
        assert!(minor::<Rational>(g, &(), &[1, 4], &[1, 2]).is_err());
    }

    #[test]
    fn leading_term_of_zero_is_an_error() {
        assert!(P::zero(Grid::square(2)).leading_term(TermOrder::AntidiagonalLex).is_err());
    }

    #[test]
    fn arithmetic_basics() {
        let g = Grid::square(2);
        let x = P::var(g, &(), 1, 1);
        let y = P::var(g, &(), 2, 2);
        let s = x.add(&y);
        assert_eq!(s.mul(&s), x.mul(&x).add(&x.mul(&y).scale(&q(2))).add(&y.mul(&y)));
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.pow(2), s.mul(&s));
        assert_eq!(s.pow(0), P::constant(g, q(1)));
        let xy = x.mul(&y);
        assert_eq!(xy.exact_div_monomial(&g.var(1, 1)).unwrap(), y);
        assert!(s.exact_div_monomial(&g.var(1, 1)).is_none());
    }

    #[test]
    fn prime_field_minor() {
        let ctx = PrimeModulus::default();
        let g = Grid::square(3);
        let m: Polynomial<Fp> = minor(g, &ctx, &[1, 2, 3], &[1, 2, 3]).unwrap();
        assert_eq!(m.num_terms(), 6);
        assert!(m.is_homogeneous());
    }
}
