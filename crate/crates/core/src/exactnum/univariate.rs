//! Dense univariate polynomials over the rationals: exact rational roots
//! and simplest-fraction reconstruction.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<BigRational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Quotient and remainder of polynomial division; panics on zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.0.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lc;
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] = &r[k + i] - &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn square_free(&self) -> UniPoly {
        if self.degree().unwrap_or(0) < 1 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Positive rescaling to a primitive integer polynomial (signs preserved).
    fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        UniPoly::new(ints.into_iter().map(|c| BigRational::from_integer(c / &g)).collect())
    }

    /// Distinct rational roots in ascending order.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.degree().unwrap_or(0) < 1 {
            return Vec::new();
        }
        let f = self.square_free().primitive();
        let lc = f.leading().unwrap().numer().abs();
        // any rational root p/q in lowest terms has q | lc; two such
        // fractions are at least 1/lc^2 apart
        let target_width = BigRational::new(BigInt::one(), BigInt::from(2) * &lc * &lc);
        let bound = {
            let l = f.leading().unwrap();
            let m = f.0.iter().map(|c| (c / l).abs()).max().unwrap();
            m + BigRational::one()
        };
        let sturm = sturm_sequence(&f);
        let count = |a: &BigRational, b: &BigRational| variations(&sturm, a) - variations(&sturm, b);
        let mut roots = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            let n = count(&a, &b);
            if n == 0 {
                continue;
            }
            if n > 1 {
                let m = (&a + &b) / BigRational::from_integer(2.into());
                stack.push((a, m.clone()));
                stack.push((m, b));
                continue;
            }
            // exactly one root in (a, b]
            let (mut a, mut b) = (a, b);
            let found = loop {
                if f.eval(&b).is_zero() {
                    break Some(b);
                }
                if &b - &a < target_width {
                    let c = simplest_between(&a, &b);
                    break f.eval(&c).is_zero().then_some(c);
                }
                let m = (&a + &b) / BigRational::from_integer(2.into());
                if count(&a, &m) == 1 {
                    b = m;
                } else {
                    a = m;
                }
            };
            if let Some(r) = found {
                roots.push(r);
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

fn sturm_sequence(f: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![f.clone(), f.derivative().primitive()];
    loop {
        let n = seq.len();
        if seq[n - 1].degree().is_none_or(|d| d == 0) {
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-BigRational::one()).primitive());
    }
    seq
}

fn variations(seq: &[UniPoly], x: &BigRational) -> i64 {
    let mut last = 0i8;
    let mut v = 0;
    for p in seq {
        let s = p.eval(x);
        let sg = if s.is_positive() {
            1
        } else if s.is_negative() {
            -1
        } else {
            0
        };
        if sg != 0 {
            if last != 0 && sg != last {
                v += 1;
            }
            last = sg;
        }
    }
    v
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (smallest absolute numerator among those).
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi, "empty interval");
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let fl = lo.floor();
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Reconstructs a rational from an approximation `x` known to within `tol`,
/// accepting only denominators up to `max_den`.
pub fn reconstruct(x: &BigRational, tol: &BigRational, max_den: &BigInt) -> Option<BigRational> {
    let c = simplest_between(&(x - tol), &(x + tol));
    (c.denom() <= max_den).then_some(c)
}
