//! Sparse multivariate polynomials over the rationals in grevlex order, a
//! Buchberger basis, and multiplication matrices of zero-dimensional
//! quotients.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::{Matrix, Scalar};

/// An exponent vector, ordered by graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(alloc::vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Mono::one(n);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0).rev() {
                if a != b {
                    // smaller exponent in the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub n: usize,
    pub terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.last_key_value()
    }

    fn lm(&self) -> &Mono {
        self.leading().expect("nonzero polynomial").0
    }

    /// `self - c * m * g`.
    fn sub_multiple(&mut self, c: &BigRational, m: &Mono, g: &Poly) {
        for (k, v) in &g.terms {
            self.add_term(k.mul(m), -(c * v));
        }
    }

    fn monic(mut self) -> Poly {
        if let Some((_, c)) = self.leading() {
            let inv = c.recip();
            for v in self.terms.values_mut() {
                *v *= &inv;
            }
        }
        self
    }

    /// Full reduction modulo `basis`.
    pub fn normal_form(&self, basis: &[Poly]) -> Poly {
        let mut p = self.clone();
        let mut r = Poly::zero(self.n);
        while let Some((m, c)) = p.terms.pop_last() {
            match basis.iter().find(|g| g.lm().divides(&m)) {
                Some(g) => {
                    let (gm, gc) = g.leading().unwrap();
                    let q = &c / gc;
                    let shift = m.div(gm);
                    // the leading term cancels; subtract the rest
                    for (k, v) in g.terms.iter().rev().skip(1) {
                        p.add_term(k.mul(&shift), -(&q * v));
                    }
                }
                None => {
                    r.terms.insert(m, c);
                }
            }
        }
        r
    }
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let mut s = Poly::zero(f.n);
    s.sub_multiple(&-fc.recip(), &l.div(fm), f);
    s.sub_multiple(&gc.recip(), &l.div(gm), g);
    s
}

/// Reduced Groebner basis, or `None` when more than `budget` S-polynomials
/// would be needed.
pub fn groebner(input: &[Poly], budget: usize) -> Option<Vec<Poly>> {
    let mut basis: Vec<Poly> = Vec::new();
    for p in input {
        let r = p.normal_form(&basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut spent = 0;
    while let Some((i, j)) = pairs.pop() {
        if basis[i].lm().coprime(basis[j].lm()) {
            continue;
        }
        spent += 1;
        if spent > budget {
            return None;
        }
        let r = s_poly(&basis[i], &basis[j]).normal_form(&basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimal, then reduced
    let mut keep: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let reduced: Vec<Poly> = (0..keep.len())
        .map(|i| {
            let (m, c) = keep[i].leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let others: Vec<Poly> = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            let mut tail = keep[i].clone();
            tail.terms.remove(&m);
            let mut out = tail.normal_form(&others);
            out.terms.insert(m, c);
            out
        })
        .collect();
    let mut reduced = reduced;
    reduced.sort_by(|a, b| a.lm().cmp(b.lm()));
    Some(reduced)
}

/// Monomials outside the leading-term ideal, in increasing order; `None`
/// if there are infinitely many (the ideal is not zero-dimensional).
pub fn standard_monomials(basis: &[Poly], n: usize) -> Option<Vec<Mono>> {
    let pure = |i: usize| basis.iter().any(|g| g.lm().0.iter().enumerate().all(|(k, &e)| (k == i) == (e > 0)));
    if basis.iter().any(|g| g.lm().degree() == 0) {
        return Some(Vec::new());
    }
    if !(0..n).all(pure) {
        return None;
    }
    let mut out = Vec::new();
    let mut frontier = alloc::vec![Mono::one(n)];
    let mut seen = alloc::collections::BTreeSet::new();
    while let Some(m) = frontier.pop() {
        if !seen.insert(m.clone()) || basis.iter().any(|g| g.lm().divides(&m)) {
            continue;
        }
        for i in 0..n {
            frontier.push(m.mul(&Mono::var(n, i)));
        }
        out.push(m);
    }
    out.sort();
    Some(out)
}

/// Matrix of multiplication by `x_i` on the quotient, in the basis of
/// standard monomials (column `b` holds the normal form of `x_i b`).
pub fn multiplication_matrix(basis: &[Poly], std: &[Mono], i: usize) -> Matrix {
    let n = std.first().map_or(0, |m| m.0.len());
    let index: BTreeMap<&Mono, usize> = std.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut out = Matrix::zeros(std.len(), std.len());
    for (col, b) in std.iter().enumerate() {
        let mut p = Poly::zero(n);
        p.add_term(b.mul(&Mono::var(n, i)), BigRational::one());
        for (m, c) in p.normal_form(basis).terms {
            out[(index[&m], col)] = Scalar::rational(c);
        }
    }
    out
}
