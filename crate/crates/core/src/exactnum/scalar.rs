//! Exact scalars: rationals, optionally extended by a root `w` of a monic
//! irreducible quadratic `w^2 + c1*w + c0` over the rationals.

use alloc::string::{String, ToString};
use alloc::sync::Arc;

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumError;

/// A quadratic extension `Q(w)` with `w^2 + c1*w + c0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    c1: BigRational,
    c0: BigRational,
}

impl QuadraticField {
    /// Builds `Q[w]/(w^2 + c1*w + c0)`, rejecting reducible polynomials.
    pub fn new(c1: BigRational, c0: BigRational) -> Result<Arc<Self>, NumError> {
        let disc = &c1 * &c1 - BigRational::from_integer(4.into()) * &c0;
        if is_rational_square(&disc) {
            return Err(NumError::ReducibleQuadratic(disc.to_string()));
        }
        Ok(Arc::new(QuadraticField { c1, c0 }))
    }

    /// The field generated by a root of a monic quadratic given as
    /// `[c0, c1, 1]` (ascending coefficients).
    pub fn from_monic(coeffs: &[Scalar]) -> Result<Arc<Self>, NumError> {
        if coeffs.len() != 3 || !coeffs[2].is_one() {
            return Err(NumError::NotMonicQuadratic);
        }
        let c0 = coeffs[0].as_rational().ok_or(NumError::NotRational)?.clone();
        let c1 = coeffs[1].as_rational().ok_or(NumError::NotRational)?.clone();
        Self::new(c1, c0)
    }

    pub fn c1(&self) -> &BigRational {
        &self.c1
    }

    pub fn c0(&self) -> &BigRational {
        &self.c0
    }

    /// The root `w` itself.
    pub fn generator(self: &Arc<Self>) -> Scalar {
        Scalar::from_parts(BigRational::zero(), BigRational::one(), Some(self.clone()))
    }

    /// The two roots `w` and its conjugate `-c1 - w`.
    pub fn roots(self: &Arc<Self>) -> [Scalar; 2] {
        let w = self.generator();
        let conj = Scalar::from_parts(-self.c1.clone(), -BigRational::one(), Some(self.clone()));
        [w, conj]
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^2 + ({})*w + ({})", self.c1, self.c0)
    }
}

fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    is_sq(q.numer()) && is_sq(q.denom())
}

/// An exact scalar `re + ext*w`.
///
/// When `ext` is zero the scalar is rational and carries no field; rational
/// scalars combine freely with elements of any extension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    ext: BigRational,
    field: Option<Arc<QuadraticField>>,
}

fn same_field(a: &Arc<QuadraticField>, b: &Arc<QuadraticField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn join_fields(
    a: &Option<Arc<QuadraticField>>,
    b: &Option<Arc<QuadraticField>>,
) -> Result<Option<Arc<QuadraticField>>, NumError> {
    match (a, b) {
        (None, None) => Ok(None),
        (Some(f), None) | (None, Some(f)) => Ok(Some(f.clone())),
        (Some(f), Some(g)) if same_field(f, g) => Ok(Some(f.clone())),
        _ => Err(NumError::FieldMismatch),
    }
}

impl Scalar {
    pub fn from_parts(re: BigRational, ext: BigRational, field: Option<Arc<QuadraticField>>) -> Self {
        if ext.is_zero() {
            Scalar { re, ext, field: None }
        } else {
            assert!(field.is_some(), "extension part without a field");
            Scalar { re, ext, field }
        }
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar { re: q, ext: BigRational::zero(), field: None }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `n/d`; panics when `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ext.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.ext.is_zero() && self.re.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.ext.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.re)
    }

    pub fn real_part(&self) -> &BigRational {
        &self.re
    }

    pub fn ext_part(&self) -> &BigRational {
        &self.ext
    }

    pub fn field(&self) -> Option<&Arc<QuadraticField>> {
        self.field.as_ref()
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, NumError> {
        let field = join_fields(&self.field, &o.field)?;
        Ok(Scalar::from_parts(&self.re + &o.re, &self.ext + &o.ext, field))
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, NumError> {
        let field = join_fields(&self.field, &o.field)?;
        Ok(Scalar::from_parts(&self.re - &o.re, &self.ext - &o.ext, field))
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, NumError> {
        let field = join_fields(&self.field, &o.field)?;
        if self.ext.is_zero() {
            return Ok(Scalar::from_parts(&self.re * &o.re, &self.re * &o.ext, field));
        }
        if o.ext.is_zero() {
            return Ok(Scalar::from_parts(&self.re * &o.re, &self.ext * &o.re, field));
        }
        let k = field.as_ref().expect("both parts irrational");
        // w^2 = -c1*w - c0
        let bb = &self.ext * &o.ext;
        let re = &self.re * &o.re - &bb * &k.c0;
        let ext = &self.re * &o.ext + &self.ext * &o.re - &bb * &k.c1;
        Ok(Scalar::from_parts(re, ext, field))
    }

    /// Field norm `(a + b w)(a + b w')`.
    pub fn norm(&self) -> BigRational {
        match &self.field {
            None => self.re.clone(),
            Some(k) => {
                &self.re * &self.re - &self.re * &self.ext * &k.c1 + &self.ext * &self.ext * &k.c0
            }
        }
    }

    pub fn conjugate(&self) -> Scalar {
        match &self.field {
            None => self.clone(),
            Some(k) => Scalar::from_parts(&self.re - &self.ext * &k.c1, -self.ext.clone(), self.field.clone()),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.ext.is_zero() {
            return Some(Scalar::rational(self.re.recip()));
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Scalar::from_parts(&c.re / &n, &c.ext / &n, c.field))
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, NumError> {
        let inv = o.inv().ok_or(NumError::DivisionByZero)?;
        self.try_mul(&inv)
    }

    pub fn to_f64(&self) -> Option<f64> {
        if !self.is_rational() {
            return None;
        }
        self.re.to_f64()
    }

    /// Canonical text form: `p/q` for rationals, `p/q+r/s*w` otherwise.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses `p/q`, `p`, or `p/q+r/s*w` (also `r/s*w`, `p-r/s*w`, `w`).
    pub fn parse(s: &str, field: Option<&Arc<QuadraticField>>) -> Result<Scalar, NumError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(NumError::Parse(String::from(s)));
        }
        if !s.contains('w') {
            return parse_rational(s).map(Scalar::rational);
        }
        let k = field.ok_or(NumError::NoField)?;
        let body = s.strip_suffix('w').ok_or_else(|| NumError::Parse(String::from(s)))?;
        // find the split between real and extension part: last '+'/'-' not at
        // position 0 and not following '/'
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'/' | b'+' | b'-') {
                split = Some(i);
                break;
            }
        }
        let (re_txt, ext_txt) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let ext_txt = ext_txt.strip_suffix('*').unwrap_or(ext_txt);
        let ext_txt = ext_txt.strip_prefix('+').unwrap_or(ext_txt);
        let ext = match ext_txt {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t)?,
        };
        let re = parse_rational(re_txt)?;
        Ok(Scalar::from_parts(re, ext, Some(k.clone())))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, NumError> {
    let s = s.trim();
    let bad = || NumError::Parse(String::from(s));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(NumError::ZeroDenominator(String::from(s)));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for Scalar {
    type Err = NumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s, None)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ext.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.ext.is_negative() {
            write!(f, "{}-{}*w", self.re, -self.ext.clone())
        } else {
            write!(f, "{}+{}*w", self.re, self.ext)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rationals order numerically; extension elements order by
/// `(real part, extension part)`, which is a canonical but not a field order.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re
            .cmp(&other.re)
            .then_with(|| self.ext.cmp(&other.ext))
            .then_with(|| match (&self.field, &other.field) {
                (Some(a), Some(b)) => (&a.c1, &a.c0).cmp(&(&b.c1, &b.c0)),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect("incompatible scalar fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("incompatible scalar fields")
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$checked(rhs).expect("incompatible scalar fields")
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("incompatible scalar fields")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.try_div(rhs).expect("division by zero or incompatible fields")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::from_parts(-self.re, -self.ext, self.field)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Checks that all scalars live in one field; returns that field.
pub fn common_field<'a, I>(items: I) -> Result<Option<Arc<QuadraticField>>, NumError>
where
    I: IntoIterator<Item = &'a Scalar>,
{
    let mut acc: Option<Arc<QuadraticField>> = None;
    for s in items {
        acc = join_fields(&acc, &s.field)?;
    }
    Ok(acc)
}

/// Sum of products, used in the hot loops of matrix multiplication.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fractions_reduce() {
        let s = Scalar::frac(6, -8);
        assert_eq!(s.to_string(), "-3/4");
        assert_eq!(Scalar::frac(4, 2).to_string(), "2");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(matches!("1/0".parse::<Scalar>(), Err(NumError::ZeroDenominator(_))));
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn extension_satisfies_defining_polynomial() {
        // w^2 + w + 1 (primitive cube root of unity)
        let k = QuadraticField::new(q(1, 1), q(1, 1)).unwrap();
        let w = k.generator();
        let lhs = &(&w * &w) + &w;
        assert_eq!(lhs + Scalar::one(), Scalar::zero());
        let w3 = &(&w * &w) * &w;
        assert_eq!(w3, Scalar::one());
    }

    #[test]
    fn reducible_quadratic_rejected() {
        // w^2 - 1
        assert!(QuadraticField::new(q(0, 1), q(-1, 1)).is_err());
        assert!(QuadraticField::new(q(0, 1), q(-4, 9)).is_err());
        assert!(QuadraticField::new(q(0, 1), q(-2, 1)).is_ok());
    }

    #[test]
    fn mixed_extensions_rejected() {
        let k1 = QuadraticField::new(q(0, 1), q(-2, 1)).unwrap();
        let k2 = QuadraticField::new(q(0, 1), q(-3, 1)).unwrap();
        let a = k1.generator();
        let b = k2.generator();
        assert_eq!(a.try_add(&b), Err(NumError::FieldMismatch));
        assert_eq!(a.try_mul(&b), Err(NumError::FieldMismatch));
        // rationals mix with anything
        assert!(a.try_add(&Scalar::frac(1, 2)).is_ok());
        // structurally equal fields are compatible
        let k3 = QuadraticField::new(q(0, 1), q(-2, 1)).unwrap();
        assert!(a.try_mul(&k3.generator()).is_ok());
    }

    #[test]
    fn inverse_in_extension() {
        let k = QuadraticField::new(q(0, 1), q(-2, 1)).unwrap();
        let x = Scalar::parse("3/2+5/7*w", Some(&k)).unwrap();
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Scalar::one());
        assert_eq!(x.to_string(), "3/2+5/7*w");
    }

    #[test]
    fn parse_extension_forms() {
        let k = QuadraticField::new(q(1, 1), q(1, 1)).unwrap();
        let w = k.generator();
        assert_eq!(Scalar::parse("w", Some(&k)).unwrap(), w);
        assert_eq!(Scalar::parse("-w", Some(&k)).unwrap(), -&w);
        let a = Scalar::parse("1/2-3/4*w", Some(&k)).unwrap();
        assert_eq!(a.to_string(), "1/2-3/4*w");
        assert_eq!(Scalar::parse("-1/2+-3/4*w", Some(&k)).unwrap().to_string(), "-1/2-3/4*w");
        assert_eq!(Scalar::parse(&a.to_string(), Some(&k)).unwrap(), a);
        assert!(matches!(Scalar::parse("w", None), Err(NumError::NoField)));
    }

    #[test]
    fn extension_collapses_to_rational() {
        let k = QuadraticField::new(q(0, 1), q(-2, 1)).unwrap();
        let w = k.generator();
        let two = &w * &w;
        assert!(two.is_rational());
        assert!(two.field().is_none());
        assert_eq!(two, Scalar::from_int(2));
    }

    #[test]
    fn roots_are_conjugate() {
        let k = QuadraticField::new(q(-1, 1), q(-1, 1)).unwrap();
        let [r1, r2] = k.roots();
        assert_eq!(&r1 + &r2, Scalar::one());
        assert_eq!(&r1 * &r2, Scalar::from_int(-1));
    }
}
