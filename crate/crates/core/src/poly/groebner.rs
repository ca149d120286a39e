//! Multivariate division, Buchberger's algorithm and saturation.

use std::cmp::Ordering;

use super::field::Field;
use super::monomial::{Grid, Monomial, TermOrder};
use super::polynomial::{merge, Polynomial};

type Terms<F> = Vec<(Monomial, F)>;

/// A list of generators of an ideal of `K[x]` over a fixed grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation<F: Field> {
    grid: Grid,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> IdealPresentation<F> {
    /// Zero generators are dropped.
    pub fn new(grid: Grid, generators: Vec<Polynomial<F>>) -> Self {
        for g in &generators {
            assert_eq!(g.grid(), grid, "generator over a different grid");
        }
        IdealPresentation {
            grid,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner_basis(&self, ord: TermOrder) -> GroebnerBasis<F> {
        GroebnerBasis {
            grid: self.grid,
            ord,
            basis: buchberger(&self.generators, ord),
        }
    }
}

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    grid: Grid,
    ord: TermOrder,
    basis: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn polynomials(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn order(&self) -> TermOrder {
        self.ord
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn reduce(&self, f: &Polynomial<F>) -> Polynomial<F> {
        normal_form(f, &self.basis, self.ord)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn contains_all<'a>(&self, fs: impl IntoIterator<Item = &'a Polynomial<F>>) -> bool {
        fs.into_iter().all(|f| self.contains(f))
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Leading monomials in basis order; they minimally generate the initial ideal.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial(self.ord).expect("nonzero basis element").clone())
            .collect()
    }
}

struct Reducer<'a, F: Field> {
    lead: &'a Monomial,
    lead_coeff: &'a F,
    tail: &'a [(Monomial, F)],
}

fn reducers<'a, F: Field>(basis: &'a [Terms<F>], ord: TermOrder) -> Vec<Reducer<'a, F>> {
    let mut rs: Vec<Reducer<'a, F>> = basis
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| Reducer {
            lead: &g[0].0,
            lead_coeff: &g[0].1,
            tail: &g[1..],
        })
        .collect();
    // smallest leading monomial first; the sort is stable so ties keep input order
    rs.sort_by(|a, b| ord.compare(a.lead, b.lead));
    rs
}

/// Full reduction of `p` (sorted descending under `ord`) by `rs`.
fn reduce_terms<F: Field>(mut p: Terms<F>, rs: &[Reducer<'_, F>], ord: TermOrder) -> Terms<F> {
    let mut remainder = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        match rs.iter().find(|r| r.lead.divides(m)) {
            Some(r) => {
                let q = r.lead.quotient_of(m).expect("divides");
                let factor = c.div(r.lead_coeff);
                let scaled: Terms<F> = r.tail.iter().map(|(t, a)| (t.mul(&q), a.mul(&factor))).collect();
                p = merge(&p[start + 1..], &scaled, ord, F::neg);
                start = 0;
            }
            None => {
                remainder.push(p[start].clone());
                start += 1;
            }
        }
    }
    remainder
}

/// The remainder of `f` on division by `basis` under `ord`: no term of the
/// result is divisible by a leading monomial of `basis`.
///
/// Among the eligible divisors the one with the smallest leading monomial is
/// used, ties broken by position in `basis`.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>], ord: TermOrder) -> Polynomial<F> {
    let sorted: Vec<Terms<F>> = basis.iter().map(|g| g.sorted_terms(ord)).collect();
    let rs = reducers(&sorted, ord);
    Polynomial::from_sorted(f.grid(), reduce_terms(f.sorted_terms(ord), &rs, ord), ord)
}

fn make_monic<F: Field>(p: &mut Terms<F>) {
    if let Some((_, c)) = p.first() {
        if !c.is_one() {
            let inv = c.inv();
            for (_, a) in p.iter_mut() {
                *a = a.mul(&inv);
            }
        }
    }
}

fn s_polynomial<F: Field>(f: &Terms<F>, g: &Terms<F>, ord: TermOrder) -> Terms<F> {
    let lcm = f[0].0.lcm(&g[0].0);
    let uf = f[0].0.quotient_of(&lcm).unwrap();
    let ug = g[0].0.quotient_of(&lcm).unwrap();
    let cf = f[0].1.inv();
    let cg = g[0].1.inv();
    let a: Terms<F> = f[1..].iter().map(|(m, c)| (m.mul(&uf), c.mul(&cf))).collect();
    let b: Terms<F> = g[1..].iter().map(|(m, c)| (m.mul(&ug), c.mul(&cg))).collect();
    merge(&a, &b, ord, F::neg)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger<F: Field> {
    ord: TermOrder,
    polys: Vec<Terms<F>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<F: Field> Buchberger<F> {
    fn lead(&self, k: usize) -> &Monomial {
        &self.polys[k][0].0
    }

    fn reduce(&self, p: Terms<F>) -> Terms<F> {
        let basis: Vec<&Terms<F>> = (0..self.polys.len()).filter(|&k| self.active[k]).map(|k| &self.polys[k]).collect();
        let mut rs: Vec<Reducer<'_, F>> = basis
            .iter()
            .map(|g| Reducer {
                lead: &g[0].0,
                lead_coeff: &g[0].1,
                tail: &g[1..],
            })
            .collect();
        rs.sort_by(|a, b| self.ord.compare(a.lead, b.lead));
        reduce_terms(p, &rs, self.ord)
    }

    /// Gebauer-Möller installation of a new basis element.
    fn update(&mut self, mut h: Terms<F>) {
        make_monic(&mut h);
        let hk = self.polys.len();
        let hl = h[0].0.clone();
        self.polys.push(h);
        self.active.push(false);

        let candidates: Vec<(usize, Monomial)> = (0..hk)
            .filter(|&k| self.active[k])
            .map(|k| (k, hl.lcm(self.lead(k))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (k, lcm)) in candidates.iter().enumerate() {
            let coprime = hl.is_coprime(self.lead(*k));
            let dominated = candidates[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|(_, other)| other.divides(lcm));
            if coprime || !dominated {
                kept.push((*k, lcm.clone()));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(k, _)| !hl.is_coprime(self.lead(*k)))
            .map(|(k, lcm)| Pair { i: k, j: hk, lcm })
            .collect();

        let old = std::mem::take(&mut self.pairs);
        for pair in old {
            let li = self.polys[pair.i][0].0.clone();
            let lj = self.polys[pair.j][0].0.clone();
            let drop = hl.divides(&pair.lcm) && li.lcm(&hl) != pair.lcm && lj.lcm(&hl) != pair.lcm;
            if !drop {
                self.pairs.push(pair);
            }
        }
        self.pairs.extend(new_pairs);

        for k in 0..hk {
            if self.active[k] && hl.divides(self.lead(k)) {
                self.active[k] = false;
            }
        }
        self.active[hk] = true;
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            ord.compare(&pa.lcm, &pb.lcm)
                .then((pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Buchberger's algorithm with the coprime and chain criteria and the normal
/// selection strategy. Returns the reduced Gröbner basis: monic,
/// interreduced, sorted by ascending leading monomial. The unit ideal yields
/// `[1]` and the zero ideal yields `[]`.
pub fn buchberger<F: Field>(generators: &[Polynomial<F>], ord: TermOrder) -> Vec<Polynomial<F>> {
    let Some(grid) = generators.first().map(Polynomial::grid) else {
        return Vec::new();
    };
    let mut state = Buchberger {
        ord,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in generators {
        let h = state.reduce(g.sorted_terms(ord));
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return vec![Polynomial::constant(grid, F::one(&h[0].1.context()))];
        }
        state.update(h);
    }
    while let Some(pair) = state.next_pair() {
        let s = s_polynomial(&state.polys[pair.i], &state.polys[pair.j], ord);
        let h = state.reduce(s);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return vec![Polynomial::constant(grid, F::one(&h[0].1.context()))];
        }
        state.update(h);
    }

    // minimal basis: active leads are pairwise non-dividing after the updates
    let mut minimal: Vec<Terms<F>> = (0..state.polys.len())
        .filter(|&k| state.active[k])
        .map(|k| state.polys[k].clone())
        .collect();
    minimal.sort_by(|a, b| ord.compare(&a[0].0, &b[0].0));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Terms<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, g)| g.clone())
            .collect();
        let rs = reducers(&others, ord);
        let tail = reduce_terms(minimal[k][1..].to_vec(), &rs, ord);
        let mut g = vec![minimal[k][0].clone()];
        g.extend(tail);
        make_monic(&mut g);
        reduced.push(Polynomial::from_sorted(grid, g, ord));
    }
    reduced
}

/// Whether every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis<F: Field>(basis: &[Polynomial<F>], ord: TermOrder) -> bool {
    let sorted: Vec<Terms<F>> = basis.iter().filter(|g| !g.is_zero()).map(|g| g.sorted_terms(ord)).collect();
    let rs = reducers(&sorted, ord);
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let s = s_polynomial(&sorted[i], &sorted[j], ord);
            if !reduce_terms(s, &rs, ord).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Whether `basis` is monic, has no term divisible by another element's
/// leading monomial, and is sorted by ascending leading monomial.
pub fn is_reduced<F: Field>(basis: &[Polynomial<F>], ord: TermOrder) -> bool {
    let leads: Vec<&Monomial> = match basis.iter().map(|g| g.leading_monomial(ord)).collect() {
        Ok(l) => l,
        Err(_) => return false,
    };
    let sorted = leads.windows(2).all(|w| ord.compare(w[0], w[1]) == Ordering::Less);
    let monic = basis.iter().all(|g| g.leading_term(ord).map(|(c, _)| c.is_one()).unwrap_or(false));
    let interreduced = basis.iter().enumerate().all(|(k, g)| {
        g.monomials()
            .all(|m| leads.iter().enumerate().all(|(l, lead)| l == k || !lead.divides(m)))
    });
    sorted && monic && interreduced
}

/// Generators of the saturation `(I : c^∞)`: a Gröbner basis of
/// `I + <1 - t*c>` under the elimination order, restricted to `t`-free
/// elements. The result is the reduced Gröbner basis of the saturation under
/// [`TermOrder::AntidiagonalLex`].
pub fn saturate<F: Field>(ideal: &IdealPresentation<F>, c: &Polynomial<F>) -> IdealPresentation<F> {
    assert!(!c.is_zero(), "saturation by zero");
    let grid = ideal.grid();
    let ctx = c.terms()[0].1.context();
    let one = Polynomial::constant(grid, F::one(&ctx));
    let tc = c.mul_term(&F::one(&ctx), &grid.aux());
    let mut gens = ideal.generators().to_vec();
    gens.push(one.sub(&tc));
    let gb = buchberger(&gens, TermOrder::Elimination);
    let kept = gb
        .into_iter()
        .filter(|g| g.monomials().all(|m| m.aux_exponent() == 0))
        .collect();
    IdealPresentation::new(grid, kept)
}
