//! Floating-point Newton iteration on `x x = x`, exact refinement and
//! rational reconstruction.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::Algebra;
use crate::exactnum::univariate::reconstruct;
use crate::exactnum::{Matrix, Scalar, Vector};
use crate::forms::BilinearForm;

/// Largest accepted denominator is `2^MAX_DEN_BITS`.
pub const MAX_DEN_BITS: u32 = 256;
const REFINE_BITS: [u32; 5] = [96, 192, 384, 768, 1536];

pub(crate) struct Outcome {
    pub exact: Vec<Vector>,
    pub numeric: Vec<Vec<f64>>,
    pub starts_used: usize,
}

/// Structure constants and Gram matrix in floating point.
struct Float {
    n: usize,
    c: Vec<Vec<Vec<f64>>>,
    gram: Vec<Vec<f64>>,
}

impl Float {
    fn new(alg: &Algebra, form: &BilinearForm) -> Self {
        let n = alg.dim();
        let f = |s: &Scalar| s.to_f64().expect("rational algebra");
        let c = (0..n).map(|i| (0..n).map(|j| alg.product(i, j).iter().map(f).collect()).collect()).collect();
        let gram = (0..n).map(|i| (0..n).map(|j| f(&form.gram()[(i, j)])).collect()).collect();
        Float { n, c, gram }
    }

    fn mul(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.n];
        for i in 0..self.n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..self.n {
                let s = x[i] * y[j];
                if s == 0.0 {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    *o += s * c;
                }
            }
        }
        out
    }

    fn length(&self, x: &[f64]) -> f64 {
        (0..self.n).map(|i| (0..self.n).map(|j| x[i] * self.gram[i][j] * x[j]).sum::<f64>()).sum()
    }

    /// Newton on `x x - x`; `None` unless the residual drops below `1e-12`.
    fn newton(&self, mut x: Vec<f64>, iterations: usize) -> Option<Vec<f64>> {
        let n = self.n;
        for _ in 0..iterations {
            let sq = self.mul(&x, &x);
            let f: Vec<f64> = sq.iter().zip(&x).map(|(a, b)| a - b).collect();
            let res = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if !res.is_finite() || x.iter().any(|v| v.abs() > 1e6) {
                return None;
            }
            if res < 1e-12 {
                return Some(x);
            }
            // J = 2 ad_x - I
            let mut j = alloc::vec![alloc::vec![0.0; n]; n];
            for (col, jc) in (0..n).map(|k| {
                let mut e = alloc::vec![0.0; n];
                e[k] = 1.0;
                (k, self.mul(&x, &e))
            }) {
                for r in 0..n {
                    j[r][col] = 2.0 * jc[r] - if r == col { 1.0 } else { 0.0 };
                }
            }
            let d = solve_f64(j, f)?;
            for (xi, di) in x.iter_mut().zip(d) {
                *xi -= di;
            }
        }
        None
    }
}

/// Gaussian elimination with partial pivoting.
fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &k| a[i][c].abs().total_cmp(&a[k][c].abs()))?;
        if a[p][c].abs() < 1e-14 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            if f != 0.0 {
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
                b[r] -= f * b[c];
            }
        }
    }
    let mut x = alloc::vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_to(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigRational::from_integer(pow2(bits));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    BigRational::new((x * &scale + half).floor().to_integer(), pow2(bits))
}

fn rational(s: &Scalar) -> BigRational {
    s.as_rational().expect("rational algebra").clone()
}

/// Exact Newton steps at growing precision, trying a reconstruction after
/// each; the result is an exact idempotent of the target length.
fn refine(alg: &Algebra, form: &BilinearForm, target: &Scalar, start: &[f64]) -> Option<Vector> {
    let n = alg.dim();
    let mut x: Vec<BigRational> = start.iter().map(|v| BigRational::from_float(*v).unwrap_or_else(BigRational::zero)).collect();
    let max_den = pow2(MAX_DEN_BITS);
    for bits in REFINE_BITS {
        let xv = Vector(x.iter().cloned().map(Scalar::rational).collect());
        let f = &alg.mul(&xv, &xv) - &xv;
        let ad = alg.adjoint_matrix(&xv).ok()?;
        let j = Matrix::from_fn(n, n, |r, c| {
            let two = &ad[(r, c)] * &Scalar::from_int(2);
            if r == c {
                two - Scalar::one()
            } else {
                two
            }
        });
        let d = j.solve(&f)?;
        x = x.iter().zip(d.iter()).map(|(a, b)| round_to(&(a - rational(b)), bits)).collect();
        let tol = BigRational::new(BigInt::one(), pow2(bits - 16));
        let den_cap = pow2(((bits - 16) / 2 - 1).min(MAX_DEN_BITS)).min(max_den.clone());
        let cand: Option<Vec<Scalar>> =
            x.iter().map(|c| reconstruct(c, &tol, &den_cap).map(Scalar::rational)).collect();
        if let Some(c) = cand {
            let v = Vector(c);
            if alg.mul(&v, &v) == v && form.eval(&v, &v) == *target {
                return Some(v);
            }
        }
    }
    None
}

fn close_f(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-7)
}

fn to_f64(v: &Vector) -> Vec<f64> {
    v.iter().map(|s| s.to_f64().unwrap_or(f64::NAN)).collect()
}

/// Starting points: basis vectors, pairwise sums, then seeded random
/// points, at most `starts` in all.
fn starts(n: usize, seed: u64, count: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..n {
        let mut e = alloc::vec![0.0; n];
        e[i] = 1.0;
        out.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut e = alloc::vec![0.0; n];
            e[i] = 1.0;
            e[j] = 1.0;
            out.push(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let p = (0..n).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.5 - 1.0).collect();
        out.push(p);
    }
    out.truncate(count);
    out
}

pub(crate) fn search(
    alg: &Algebra,
    form: &BilinearForm,
    target: &Scalar,
    seed: u64,
    max_starts: usize,
    iterations: usize,
    symmetries: &[Matrix],
) -> Outcome {
    let fl = Float::new(alg, form);
    let goal = target.to_f64().expect("rational length");
    let mut exact: Vec<Vector> = Vec::new();
    let mut exact_f: Vec<Vec<f64>> = Vec::new();
    let mut numeric: Vec<Vec<f64>> = Vec::new();
    let pts = starts(alg.dim(), seed, max_starts);
    let used = pts.len();
    for p in pts {
        let Some(x) = fl.newton(p, iterations) else { continue };
        if (fl.length(&x) - goal).abs() > 1e-6 * goal.abs().max(1.0) {
            continue;
        }
        if exact_f.iter().chain(&numeric).any(|y| close_f(&x, y)) {
            continue;
        }
        match refine(alg, form, target, &x) {
            Some(v) => {
                for w in super::orbit(&v, symmetries) {
                    if !exact.contains(&w) {
                        exact_f.push(to_f64(&w));
                        exact.push(w);
                    }
                }
            }
            None => numeric.push(x),
        }
    }
    numeric.sort_by(|a, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(core::cmp::Ordering::Equal));
    Outcome { exact, numeric, starts_used: used }
}
