//! Brute-force idempotent finder by successive resultants, independent of
//! the library's Groebner backend.
//!
//! For a unital algebra with a Frobenius form, an idempotent `x` satisfies
//! `(x, e) = (x x, e) = (x, x)`, so the length condition is linear. After
//! substituting it, variables are eliminated pairwise with Sylvester
//! resultants (computed by evaluation and interpolation), rational roots of
//! the final univariate eliminant are found exactly, and every candidate is
//! back-substituted into the full system.

use std::collections::BTreeMap;

use axial_core::algebra::Algebra;
use axial_core::exactnum::univariate::UniPoly;
use axial_core::exactnum::{Matrix, Scalar, Vector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;
type Mono = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
struct P {
    k: usize,
    t: BTreeMap<Mono, Q>,
}

fn q(s: &Scalar) -> Q {
    s.as_rational().expect("rational algebra").clone()
}

impl P {
    fn zero(k: usize) -> P {
        P { k, t: BTreeMap::new() }
    }

    fn add(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.t.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.t.remove(&m);
        }
    }

    fn involves(&self, v: usize) -> bool {
        self.t.keys().any(|m| m[v] > 0)
    }

    fn deg_in(&self, v: usize) -> u32 {
        self.t.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    fn total_degree(&self) -> u32 {
        self.t.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn is_constant(&self) -> bool {
        self.t.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    fn eval_partial(&self, v: usize, x: &Q) -> P {
        let mut out = P::zero(self.k);
        for (m, c) in &self.t {
            let mut m2 = m.clone();
            let e = m2[v];
            m2[v] = 0;
            out.add(m2, c * pow(x, e));
        }
        out
    }

    /// Coefficients of powers of `v` evaluated at `point` (all other
    /// variables), ascending.
    fn coeffs_at(&self, v: usize, point: &BTreeMap<usize, Q>) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.deg_in(v) as usize + 1];
        for (m, c) in &self.t {
            let mut term = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if i != v && e > 0 {
                    term *= pow(&point[&i], e);
                }
            }
            out[m[v] as usize] += term;
        }
        out
    }
}

fn pow(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |a, _| a * x)
}

fn int(i: usize) -> Q {
    Q::from_integer(BigInt::from(i))
}

/// Ascending coefficients of the polynomial through `(i, ys[i])`.
fn interpolate(ys: &[Q]) -> Vec<Q> {
    let n = ys.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / int(level);
        }
    }
    // expand the Newton form
    let mut coeffs = vec![Q::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - i) + dd[i]
        let mut next = vec![Q::zero(); n];
        for (d, c) in coeffs.iter().enumerate() {
            if d + 1 < n {
                next[d + 1] += c;
            }
            next[d] -= c * int(i);
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Interpolates `f` on the grid `{0..=deg}^free`.
fn interp(k: usize, free: &[usize], deg: u32, point: &mut BTreeMap<usize, Q>, f: &dyn Fn(&BTreeMap<usize, Q>) -> Q) -> P {
    let Some((&v, rest)) = free.split_first() else {
        let mut p = P::zero(k);
        p.add(vec![0; k], f(point));
        return p;
    };
    let slices: Vec<P> = (0..=deg as usize)
        .map(|t| {
            point.insert(v, int(t));
            interp(k, rest, deg, point, f)
        })
        .collect();
    point.remove(&v);
    let monos: std::collections::BTreeSet<Mono> = slices.iter().flat_map(|s| s.t.keys().cloned()).collect();
    let mut out = P::zero(k);
    for m in monos {
        let ys: Vec<Q> = slices.iter().map(|s| s.t.get(&m).cloned().unwrap_or_else(Q::zero)).collect();
        for (e, c) in interpolate(&ys).into_iter().enumerate() {
            let mut m2 = m.clone();
            m2[v] = e as u32;
            out.add(m2, c);
        }
    }
    out
}

fn sylvester_det(a: &[Q], b: &[Q]) -> Q {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    let mut m = Matrix::zeros(size, size);
    for r in 0..db {
        for (i, c) in a.iter().rev().enumerate() {
            m[(r, r + i)] = Scalar::rational(c.clone());
        }
    }
    for r in 0..da {
        for (i, c) in b.iter().rev().enumerate() {
            m[(db + r, r + i)] = Scalar::rational(c.clone());
        }
    }
    q(&m.determinant())
}

/// `Res_v(a, b)` over the variables in `free`.
fn resultant(a: &P, b: &P, v: usize, free: &[usize]) -> P {
    let deg = a.total_degree() * b.total_degree();
    let f = |pt: &BTreeMap<usize, Q>| sylvester_det(&a.coeffs_at(v, pt), &b.coeffs_at(v, pt));
    interp(a.k, free, deg, &mut BTreeMap::new(), &f)
}

/// Univariate eliminants in `first` from polynomials in `first` and `rest`.
fn eliminate(polys: Vec<P>, first: usize, rest: &[usize]) -> Vec<P> {
    let Some((&v, others)) = rest.split_last() else {
        return polys;
    };
    let (with, without): (Vec<P>, Vec<P>) = polys.into_iter().partition(|p| p.involves(v));
    let mut free: Vec<usize> = others.to_vec();
    free.push(first);
    let mut next = without;
    for i in 0..with.len() {
        for j in i + 1..with.len() {
            let r = resultant(&with[i], &with[j], v, &free);
            if !r.t.is_empty() {
                next.push(r);
            }
        }
    }
    eliminate(next, first, others)
}

fn solve(polys: Vec<P>, active: &[usize]) -> Vec<BTreeMap<usize, Q>> {
    let polys: Vec<P> = polys.into_iter().filter(|p| !p.t.is_empty()).collect();
    if polys.iter().any(P::is_constant) {
        return Vec::new();
    }
    let Some((&first, rest)) = active.split_first() else {
        return vec![BTreeMap::new()];
    };
    let elim = eliminate(polys.clone(), first, rest);
    let mut g: Option<UniPoly> = None;
    for p in elim.iter().filter(|p| !p.t.is_empty()) {
        let mut c = vec![Q::zero(); p.deg_in(first) as usize + 1];
        for (m, x) in &p.t {
            c[m[first] as usize] += x;
        }
        let u = UniPoly::new(c);
        g = Some(match g {
            None => u,
            Some(h) => h.gcd(&u),
        });
    }
    let g = g.expect("oracle: the projection is not zero-dimensional");
    let mut out = Vec::new();
    for r in g.rational_roots() {
        let sub: Vec<P> = polys.iter().map(|p| p.eval_partial(first, &r)).collect();
        for mut sol in solve(sub, rest) {
            sol.insert(first, r.clone());
            out.push(sol);
        }
    }
    out
}

/// All idempotents of `alg` with `(x, x) = length`, sorted. Needs an
/// identity and a Frobenius form attached to the algebra.
pub fn idempotents_by_resultants(alg: &Algebra, length: &Scalar) -> Vec<Vector> {
    let n = alg.dim();
    let form = alg.form().expect("form attached");
    let e = alg.identity_of().expect("unital");
    let c = form.gram().mul_vec(&e);
    let j = c.iter().position(|x| !x.is_zero()).expect("nonzero");
    let mut x0 = Vector::zeros(n);
    x0[j] = length / &c[j];
    let kernel = Matrix::from_rows(vec![c.0.clone()]).unwrap().kernel_basis();
    let k = kernel.len();
    // x = x0 + sum_i y_i kernel[i]; the system is x x - x = 0 and (x, x) = L
    let var = |i: usize| {
        let mut m = vec![0; k];
        m[i] += 1;
        m
    };
    let pair = |i: usize, j: usize| {
        let mut m = vec![0; k];
        m[i] += 1;
        m[j] += 1;
        m
    };
    let mut polys = Vec::new();
    let x0x0 = alg.multiply(&x0, &x0).unwrap();
    for comp in 0..n {
        let mut p = P::zero(k);
        p.add(vec![0; k], q(&x0x0[comp]) - q(&x0[comp]));
        for i in 0..k {
            let lin = alg.multiply(&x0, &kernel[i]).unwrap();
            p.add(var(i), int(2) * q(&lin[comp]) - q(&kernel[i][comp]));
            for jj in i..k {
                let prod = alg.multiply(&kernel[i], &kernel[jj]).unwrap();
                let coef = if i == jj { q(&prod[comp]) } else { int(2) * q(&prod[comp]) };
                p.add(pair(i, jj), coef);
            }
        }
        polys.push(p);
    }
    let mut len = P::zero(k);
    len.add(vec![0; k], q(&form.eval(&x0, &x0)) - q(length));
    for i in 0..k {
        len.add(var(i), int(2) * q(&form.eval(&x0, &kernel[i])));
        for jj in i..k {
            let v = q(&form.eval(&kernel[i], &kernel[jj]));
            len.add(pair(i, jj), if i == jj { v } else { int(2) * v });
        }
    }
    polys.push(len);
    let active: Vec<usize> = (0..k).collect();
    let mut out: Vec<Vector> = solve(polys, &active)
        .into_iter()
        .map(|sol| {
            let mut x = x0.clone();
            for (i, y) in sol {
                x = x.add_scaled(&Scalar::rational(y), &kernel[i]);
            }
            x
        })
        .filter(|x| alg.multiply(x, x).unwrap() == *x && form.eval(x, x) == *length)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Sanity check of the interpolation helper, run by the oracle test.
pub fn interpolation_self_check() {
    let ys: Vec<Q> = (0..4).map(|x| int(x * x * x) - int(2 * x) + int(1)).collect();
    assert_eq!(interpolate(&ys), vec![int(1), -int(2), int(0), int(1)]);
}
