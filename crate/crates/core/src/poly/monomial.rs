use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// The ambient `rows x cols` grid of variables `x[i,j]`, plus one auxiliary
/// variable `t` reserved for saturation.
///
/// Variables are laid out so that the lexicographic order on exponent vectors
/// is the elimination order: slot 0 is `t`, then `x[1,cols], ..., x[1,1]`,
/// `x[2,cols], ..., x[2,1]`, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariableId {
    Grid { i: usize, j: usize },
    Aux,
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableId::Grid { i, j } => write!(f, "x[{i},{j}]"),
            VariableId::Aux => write!(f, "t"),
        }
    }
}

impl Grid {
    pub const fn new(rows: usize, cols: usize) -> Self {
        Grid { rows, cols }
    }

    pub const fn square(n: usize) -> Self {
        Grid { rows: n, cols: n }
    }

    pub fn num_vars(&self) -> usize {
        1 + self.rows * self.cols
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j)
    }

    /// Slot of `x[i,j]` in exponent vectors. Panics outside the grid.
    pub fn index(&self, i: usize, j: usize) -> usize {
        assert!(self.contains(i, j), "x[{i},{j}] outside the {}x{} grid", self.rows, self.cols);
        1 + (i - 1) * self.cols + (self.cols - j)
    }

    pub fn variable(&self, slot: usize) -> VariableId {
        if slot == 0 {
            return VariableId::Aux;
        }
        let k = slot - 1;
        VariableId::Grid {
            i: k / self.cols + 1,
            j: self.cols - k % self.cols,
        }
    }

    pub fn one(&self) -> Monomial {
        Monomial {
            exps: vec![0; self.num_vars()],
        }
    }

    pub fn var(&self, i: usize, j: usize) -> Monomial {
        let mut m = self.one();
        m.exps[self.index(i, j)] = 1;
        m
    }

    pub fn aux(&self) -> Monomial {
        let mut m = self.one();
        m.exps[0] = 1;
        m
    }

    pub fn monomial(&self, vars: &[(usize, usize)]) -> Monomial {
        let mut m = self.one();
        for &(i, j) in vars {
            m.exps[self.index(i, j)] += 1;
        }
        m
    }

    /// Renders a monomial as `x[1,3]*x[2,4]^2`, or `1`.
    pub fn render(&self, m: &Monomial) -> String {
        let factors: Vec<String> = m
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(slot, &e)| {
                let v = self.variable(slot);
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

/// A monomial as a dense exponent vector over a [`Grid`] layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u8>,
}

impl Monomial {
    pub(crate) fn from_exponents(exps: Vec<u8>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn aux_exponent(&self) -> u8 {
        self.exps[0]
    }

    pub fn exponent(&self, slot: usize) -> u8 {
        self.exps[slot]
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Slots with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(k, _)| k)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `m / gcd(m, other)`
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a.saturating_sub(*b)).collect(),
        }
    }
}

/// Monomial orders on a grid layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum TermOrder {
    /// Lex with `x[i,j] > x[i',j']` iff `i < i'`, or `i = i'` and `j > j'`.
    /// The auxiliary variable only breaks ties.
    #[default]
    AntidiagonalLex,
    /// The auxiliary variable first, then [`TermOrder::AntidiagonalLex`].
    Elimination,
}

impl TermOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Elimination => a.exps.cmp(&b.exps),
            TermOrder::AntidiagonalLex => a.exps[1..]
                .cmp(&b.exps[1..])
                .then(a.exps[0].cmp(&b.exps[0])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_round_trip() {
        let g = Grid::new(3, 4);
        for i in 1..=3 {
            for j in 1..=4 {
                assert_eq!(g.variable(g.index(i, j)), VariableId::Grid { i, j });
            }
        }
        assert_eq!(g.variable(0), VariableId::Aux);
    }

    #[test]
    fn antidiagonal_term_of_2x2_minor_is_larger() {
        let g = Grid::square(4);
        let anti = g.monomial(&[(1, 4), (2, 3)]);
        let diag = g.monomial(&[(1, 3), (2, 4)]);
        for ord in [TermOrder::AntidiagonalLex, TermOrder::Elimination] {
            assert_eq!(ord.compare(&anti, &diag), Ordering::Greater);
            assert_eq!(ord.compare(&anti, &anti), Ordering::Equal);
            assert_eq!(ord.compare(&g.one(), &g.var(1, 1)), Ordering::Less);
        }
    }

    #[test]
    fn elimination_puts_aux_first() {
        let g = Grid::square(2);
        let t = g.aux();
        let big = g.monomial(&[(1, 2), (1, 2), (1, 1)]);
        assert_eq!(TermOrder::Elimination.compare(&t, &big), Ordering::Greater);
        assert_eq!(TermOrder::AntidiagonalLex.compare(&t, &big), Ordering::Less);
    }

    #[test]
    fn divisibility_helpers() {
        let g = Grid::square(2);
        let a = g.monomial(&[(1, 1), (2, 2)]);
        let b = g.monomial(&[(1, 1), (1, 1), (2, 2), (2, 1)]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b).unwrap(), g.monomial(&[(1, 1), (2, 1)]));
        assert_eq!(a.lcm(&g.var(1, 2)), g.monomial(&[(1, 1), (2, 2), (1, 2)]));
        assert!(a.is_coprime(&g.var(1, 2)));
        assert_eq!(g.render(&b), "x[1,1]^2*x[2,2]*x[2,1]");
        assert_eq!(g.render(&g.one()), "1");
    }
}
