//! Named objects: the eight Norton-Sakuma algebras, the standard fusion laws
//! and Matsuo algebras of 3-transposition groups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::algebra::{Algebra, AlgebraError};
use crate::exactnum::{Matrix, Scalar, Vector};
use crate::forms::BilinearForm;
use crate::fusion::{FusionError, FusionLaw};
use crate::groups::{conjugacy_class, GroupError, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown Norton-Sakuma type `{0}`")]
    UnknownType(String),
    #[error("product {0} * {1} is not determined by the table")]
    Incomplete(String, String),
    #[error("symmetry images disagree on {0} * {1}")]
    Inconsistent(String, String),
    #[error("class representative is not an involution")]
    NotInvolution,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The Norton-Sakuma types, named after classes of the Monster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NsType {
    A2,
    B2,
    A3,
    C3,
    A4,
    B4,
    A5,
    A6,
}

impl NsType {
    pub const ALL: [NsType; 8] =
        [NsType::A2, NsType::B2, NsType::A3, NsType::C3, NsType::A4, NsType::B4, NsType::A5, NsType::A6];

    pub fn name(self) -> &'static str {
        match self {
            NsType::A2 => "2A",
            NsType::B2 => "2B",
            NsType::A3 => "3A",
            NsType::C3 => "3C",
            NsType::A4 => "4A",
            NsType::B4 => "4B",
            NsType::A5 => "5A",
            NsType::A6 => "6A",
        }
    }

    /// The leading number: the size of the closure of `{a0, a1}`.
    pub fn number(self) -> usize {
        match self {
            NsType::A2 | NsType::B2 => 2,
            NsType::A3 | NsType::C3 => 3,
            NsType::A4 | NsType::B4 => 4,
            NsType::A5 => 5,
            NsType::A6 => 6,
        }
    }

    pub fn with_number(n: usize) -> Vec<NsType> {
        NsType::ALL.into_iter().filter(|t| t.number() == n).collect()
    }

    /// The type forced on a 2-generated subalgebra of this one whose pair
    /// has product order `order`, from the inclusions 4A > 2B, 4B > 2A and
    /// 6A > 2A, 3A.
    pub fn contained_type(self, order: usize) -> Option<NsType> {
        match (self, order) {
            (NsType::A4, 2) => Some(NsType::B2),
            (NsType::B4, 2) => Some(NsType::A2),
            (NsType::A6, 2) => Some(NsType::A2),
            (NsType::A6, 3) => Some(NsType::A3),
            _ => None,
        }
    }

    /// `(a0, a1)` in the algebra of this type.
    pub fn axis_product_value(self) -> Scalar {
        let ns = norton_sakuma(self);
        ns.algebra.form().expect("form attached").eval(&ns.axes[0], &ns.axes[1])
    }
}

impl fmt::Display for NsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NsType {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        NsType::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::UnknownType(s.to_string()))
    }
}

/// A Norton-Sakuma algebra with its Frobenius form attached. `axes` starts
/// with `a0`, `a1`, followed by the remaining axes in basis order.
#[derive(Clone, Debug)]
pub struct NortonSakuma {
    pub kind: NsType,
    pub algebra: Algebra,
    pub axes: Vec<Vector>,
}

type Combo = Vec<(String, Scalar)>;

/// The printed part of a table row, before symmetry closure.
struct Row {
    names: Vec<String>,
    products: Vec<(String, String, Combo)>,
    form: Vec<(String, String, Scalar)>,
    /// Basis permutations (by name) under which the algebra is symmetric.
    symmetries: Vec<BTreeMap<String, String>>,
    axes: Vec<String>,
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn row(t: NsType) -> Row {
    let s = |x: &str| x.to_string();
    if t == NsType::A2 {
        let names = alloc::vec![s("a0"), s("a1"), s("a_rho")];
        let c = |a: &str, b: &str, x: &str| alloc::vec![(s(a), q(1, 8)), (s(b), q(1, 8)), (s(x), q(-1, 8))];
        let swap = |a: &str, b: &str| {
            names.iter().map(|n| (n.clone(), if n == a { s(b) } else if n == b { s(a) } else { n.clone() })).collect()
        };
        return Row {
            products: alloc::vec![(s("a0"), s("a1"), c("a0", "a1", "a_rho"))],
            form: alloc::vec![(s("a0"), s("a1"), q(1, 8))],
            symmetries: alloc::vec![swap("a0", "a1"), swap("a1", "a_rho")],
            axes: names.clone(),
            names,
        };
    }
    let n = t.number() as i64;
    let idx: Vec<i64> = match n {
        2 => alloc::vec![0, 1],
        3 => alloc::vec![-1, 0, 1],
        4 => alloc::vec![-1, 0, 1, 2],
        5 => alloc::vec![-2, -1, 0, 1, 2],
        _ => alloc::vec![-2, -1, 0, 1, 2, 3],
    };
    // axis names with indices read modulo n
    let a = |k: i64| -> String {
        let k = k.rem_euclid(n);
        let i = idx.iter().find(|&&i| i.rem_euclid(n) == k).unwrap();
        format!("a{i}")
    };
    let lin = |terms: &[(&str, i64, i64)]| -> Combo { terms.iter().map(|&(x, p, d)| (s(x), q(p, d))).collect() };
    let ax = |k: i64, p: i64, d: i64| (a(k), q(p, d));
    let mut products: Vec<(String, String, Combo)> = Vec::new();
    let mut form: Vec<(String, String, Scalar)> = Vec::new();
    let extras: Vec<&str>;
    let mut extra_axes: Vec<&str> = Vec::new();
    match t {
        NsType::B2 => {
            products.push((a(0), a(1), Vec::new()));
            form.push((a(0), a(1), q(0, 1)));
            extras = Vec::new();
        }
        NsType::A3 => {
            products.push((a(0), a(1), alloc::vec![ax(0, 1, 16), ax(1, 1, 16), ax(-1, 1, 32), (s("u_rho"), q(-135, 2048))]));
            let mut c = alloc::vec![ax(0, 2, 9), ax(1, -1, 9), ax(-1, -1, 9)];
            c.push((s("u_rho"), q(5, 32)));
            products.push((a(0), s("u_rho"), c));
            products.push((s("u_rho"), s("u_rho"), lin(&[("u_rho", 1, 1)])));
            form.push((a(0), a(1), q(13, 256)));
            form.push((a(0), s("u_rho"), q(1, 4)));
            form.push((s("u_rho"), s("u_rho"), q(8, 5)));
            extras = alloc::vec!["u_rho"];
        }
        NsType::C3 => {
            products.push((a(0), a(1), alloc::vec![ax(0, 1, 64), ax(1, 1, 64), ax(-1, -1, 64)]));
            form.push((a(0), a(1), q(1, 64)));
            extras = Vec::new();
        }
        NsType::A4 => {
            let mut c = alloc::vec![ax(0, 3, 64), ax(1, 3, 64), ax(-1, 1, 64), ax(2, 1, 64)];
            c.push((s("v_rho"), q(-3, 64)));
            products.push((a(0), a(1), c));
            let mut c = alloc::vec![ax(0, 5, 16), ax(1, -2, 16), ax(2, -1, 16), ax(-1, -2, 16)];
            c.push((s("v_rho"), q(3, 16)));
            products.push((a(0), s("v_rho"), c));
            products.push((a(0), a(2), Vec::new()));
            products.push((s("v_rho"), s("v_rho"), lin(&[("v_rho", 1, 1)])));
            form.push((a(0), a(1), q(1, 32)));
            form.push((a(0), a(2), q(0, 1)));
            form.push((a(0), s("v_rho"), q(3, 8)));
            form.push((s("v_rho"), s("v_rho"), q(2, 1)));
            extras = alloc::vec!["v_rho"];
        }
        NsType::B4 => {
            let mut c = alloc::vec![ax(0, 1, 64), ax(1, 1, 64), ax(-1, -1, 64), ax(2, -1, 64)];
            c.push((s("a_rho2"), q(1, 64)));
            products.push((a(0), a(1), c));
            let mut c = alloc::vec![ax(0, 1, 8), ax(2, 1, 8)];
            c.push((s("a_rho2"), q(-1, 8)));
            products.push((a(0), a(2), c));
            let mut c = alloc::vec![ax(0, 1, 8), ax(2, -1, 8)];
            c.push((s("a_rho2"), q(1, 8)));
            products.push((a(0), s("a_rho2"), c));
            form.push((a(0), a(1), q(1, 64)));
            form.push((a(0), a(2), q(1, 8)));
            form.push((a(0), s("a_rho2"), q(1, 8)));
            extras = alloc::vec!["a_rho2"];
            extra_axes = alloc::vec!["a_rho2"];
        }
        NsType::A5 => {
            let mut c = alloc::vec![ax(0, 3, 128), ax(1, 3, 128), ax(2, -1, 128), ax(-1, -1, 128), ax(-2, -1, 128)];
            c.push((s("w_rho"), q(1, 1)));
            products.push((a(0), a(1), c));
            let mut c = alloc::vec![ax(0, 3, 128), ax(2, 3, 128), ax(1, -1, 128), ax(-1, -1, 128), ax(-2, -1, 128)];
            c.push((s("w_rho"), q(-1, 1)));
            products.push((a(0), a(2), c));
            let mut c = alloc::vec![ax(1, 7, 4096), ax(-1, 7, 4096), ax(2, -7, 4096), ax(-2, -7, 4096)];
            c.push((s("w_rho"), q(7, 32)));
            products.push((a(0), s("w_rho"), c));
            let ww = (-2..=2).map(|k| ax(k, 175, 1 << 19)).collect();
            products.push((s("w_rho"), s("w_rho"), ww));
            form.push((a(0), a(1), q(3, 128)));
            form.push((a(0), a(2), q(3, 128)));
            form.push((a(0), s("w_rho"), q(0, 1)));
            form.push((s("w_rho"), s("w_rho"), q(875, 1 << 19)));
            extras = alloc::vec!["w_rho"];
        }
        NsType::A6 => {
            let mut c = alloc::vec![ax(0, 1, 64), ax(1, 1, 64), ax(-2, -1, 64), ax(-1, -1, 64), ax(2, -1, 64), ax(3, -1, 64)];
            c.push((s("a_rho3"), q(1, 64)));
            c.push((s("u_rho2"), q(45, 2048)));
            products.push((a(0), a(1), c));
            let mut c = alloc::vec![ax(0, 2, 32), ax(2, 2, 32), ax(-2, 1, 32)];
            c.push((s("u_rho2"), q(-135, 2048)));
            products.push((a(0), a(2), c));
            let mut c = alloc::vec![ax(0, 2, 9), ax(2, -1, 9), ax(-2, -1, 9)];
            c.push((s("u_rho2"), q(5, 32)));
            products.push((a(0), s("u_rho2"), c));
            products.push((s("u_rho2"), s("u_rho2"), lin(&[("u_rho2", 1, 1)])));
            let mut c = alloc::vec![ax(0, 1, 8), ax(3, 1, 8)];
            c.push((s("a_rho3"), q(-1, 8)));
            products.push((a(0), a(3), c));
            // a0 and a3 generate a 2A subalgebra with third axis a_rho3
            let mut c = alloc::vec![ax(0, 1, 8), ax(3, -1, 8)];
            c.push((s("a_rho3"), q(1, 8)));
            products.push((a(0), s("a_rho3"), c));
            products.push((s("a_rho3"), s("u_rho2"), Vec::new()));
            form.push((a(0), a(1), q(5, 256)));
            form.push((a(0), a(2), q(13, 256)));
            form.push((a(0), s("u_rho2"), q(1, 4)));
            form.push((s("u_rho2"), s("u_rho2"), q(8, 5)));
            form.push((a(0), a(3), q(1, 8)));
            form.push((a(0), s("a_rho3"), q(1, 8)));
            form.push((s("a_rho3"), s("u_rho2"), q(0, 1)));
            extras = alloc::vec!["a_rho3", "u_rho2"];
            extra_axes = alloc::vec!["a_rho3"];
        }
        NsType::A2 => unreachable!(),
    }
    let mut names: Vec<String> = idx.iter().map(|&i| a(i)).collect();
    let mut axes = names.clone();
    names.extend(extras.iter().map(|e| s(e)));
    axes.extend(extra_axes.iter().map(|e| s(e)));
    // the dihedral reflections k -> -k and k -> 1 - k; extras are fixed
    let refl = |f: &dyn Fn(i64) -> i64| -> BTreeMap<String, String> {
        let mut m: BTreeMap<String, String> = idx.iter().map(|&i| (a(i), a(f(i)))).collect();
        for e in &extras {
            m.insert(s(e), s(e));
        }
        m
    };
    let symmetries = alloc::vec![refl(&|i| -i), refl(&|i| 1 - i)];
    Row { names, products, form, symmetries, axes }
}

/// Closes a table row under its symmetries. Axes square to themselves and
/// have length 1.
fn close(r: &Row) -> Result<(Algebra, Vec<usize>), CatalogError> {
    let pos = |x: &String| r.names.iter().position(|n| n == x).expect("known basis name");
    let key = |i: usize, j: usize| (i.min(j), i.max(j));
    let mut prods: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
    let mut form: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    let axes: Vec<usize> = r.axes.iter().map(pos).collect();
    for &x in &axes {
        prods.insert((x, x), [(x, Scalar::one())].into_iter().collect());
        form.insert((x, x), Scalar::one());
    }
    for (x, y, c) in &r.products {
        let combo = c.iter().filter(|(_, v)| !v.is_zero()).map(|(z, v)| (pos(z), v.clone())).collect();
        prods.insert(key(pos(x), pos(y)), combo);
    }
    for (x, y, v) in &r.form {
        form.insert(key(pos(x), pos(y)), v.clone());
    }
    let perms: Vec<Vec<usize>> =
        r.symmetries.iter().map(|m| r.names.iter().map(|n| pos(&m[n])).collect()).collect();
    let name = |i: usize| r.names[i].clone();
    loop {
        let mut grew = false;
        for p in &perms {
            for ((i, j), c) in prods.clone() {
                let k = key(p[i], p[j]);
                let img: BTreeMap<usize, Scalar> = c.iter().map(|(z, v)| (p[*z], v.clone())).collect();
                match prods.get(&k) {
                    Some(old) if *old != img => return Err(CatalogError::Inconsistent(name(k.0), name(k.1))),
                    Some(_) => {}
                    None => {
                        prods.insert(k, img);
                        grew = true;
                    }
                }
            }
            for ((i, j), v) in form.clone() {
                let k = key(p[i], p[j]);
                match form.get(&k) {
                    Some(old) if *old != v => return Err(CatalogError::Inconsistent(name(k.0), name(k.1))),
                    Some(_) => {}
                    None => {
                        form.insert(k, v);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let n = r.names.len();
    let algebra = Algebra::try_new(r.names.clone(), |i, j| {
        let c = prods.get(&(i, j)).ok_or_else(|| AlgebraError::MissingProduct(i, j))?;
        let mut v = Vector::zeros(n);
        for (z, x) in c {
            v[*z] = x.clone();
        }
        Ok(v)
    })
    .map_err(|e| match e {
        AlgebraError::MissingProduct(i, j) => CatalogError::Incomplete(name(i), name(j)),
        e => e.into(),
    })?;
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = form.get(&(i, j)).ok_or_else(|| CatalogError::Incomplete(name(i), name(j)))?;
            gram[(i, j)] = v.clone();
            gram[(j, i)] = v.clone();
        }
    }
    let algebra = algebra.with_form(BilinearForm::new(gram).expect("symmetric by construction"))?;
    Ok((algebra, axes))
}

/// The Norton-Sakuma algebra of type `t` over the rationals.
pub fn norton_sakuma(t: NsType) -> NortonSakuma {
    let r = row(t);
    let (algebra, axis_idx) = close(&r).expect("the printed table closes under its symmetries");
    let a0 = algebra.index_of("a0").unwrap();
    let a1 = algebra.index_of("a1").unwrap();
    let mut order = alloc::vec![a0, a1];
    order.extend(axis_idx.into_iter().filter(|&i| i != a0 && i != a1));
    order[2..].sort();
    let axes = order.into_iter().map(|i| algebra.basis_vector(i)).collect();
    NortonSakuma { kind: t, algebra, axes }
}

/// `(1, 1)` for the identity of the algebra of type `t`.
pub fn identity_length(t: NsType) -> Scalar {
    let ns = norton_sakuma(t);
    let e = ns.algebra.identity_of().expect("Norton-Sakuma algebras are unital");
    ns.algebra.form().expect("form attached").eval(&e, &e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawKind {
    Monster,
    AlmostMonster,
    Jordan,
}

impl FromStr for LawKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "monster" => Ok(LawKind::Monster),
            "almost_monster" | "almost-monster" => Ok(LawKind::AlmostMonster),
            "jordan" => Ok(LawKind::Jordan),
            _ => Err(format!("unknown fusion law kind `{s}`")),
        }
    }
}

/// Monster type `(alpha, beta)`, its almost-Monster variant, or Jordan type
/// `eta`, each with its `{+1, -1}` grading.
pub fn make_law(kind: LawKind, params: &[Scalar]) -> Result<FusionLaw, FusionError> {
    let want = if kind == LawKind::Jordan { 1 } else { 2 };
    if params.len() != want {
        return Err(FusionError::DegenerateParameters);
    }
    for (i, p) in params.iter().enumerate() {
        if p.is_zero() || p.is_one() || params[..i].contains(p) {
            return Err(FusionError::DegenerateParameters);
        }
    }
    let mut eig = alloc::vec![Scalar::one(), Scalar::zero()];
    eig.extend(params.iter().cloned());
    let v = |xs: &[usize]| xs.to_vec();
    match kind {
        LawKind::Jordan => {
            let rules = [(0, 0, v(&[0])), (1, 1, v(&[1])), (0, 2, v(&[2])), (1, 2, v(&[2])), (2, 2, v(&[0, 1]))];
            FusionLaw::new(eig, &rules, Some(alloc::vec![1, 1, -1]))
        }
        _ => {
            let aa = if kind == LawKind::Monster { v(&[0, 1]) } else { v(&[0, 1, 2]) };
            let rules = [
                (0, 0, v(&[0])),
                (1, 1, v(&[1])),
                (0, 2, v(&[2])),
                (0, 3, v(&[3])),
                (1, 2, v(&[2])),
                (1, 3, v(&[3])),
                (2, 2, aa),
                (2, 3, v(&[3])),
                (3, 3, v(&[0, 1, 2])),
            ];
            FusionLaw::new(eig, &rules, Some(alloc::vec![1, 1, 1, -1]))
        }
    }
}

/// `M(1/4, 1/32)`.
pub fn monster_law() -> FusionLaw {
    make_law(LawKind::Monster, &[q(1, 4), q(1, 32)]).expect("valid parameters")
}

/// The Matsuo algebra of the class of `rep` in `g`: basis the class,
/// `a a = a`, `a b = 0` for commuting pairs and `(eta/2)(a + b - a^b)` for
/// pairs with product of order 3, with the form `(a, a) = 1`, `(a, b)` equal
/// to `0` or `eta/2` accordingly.
pub fn matsuo_algebra(g: &PermGroup, rep: &Permutation, eta: &Scalar) -> Result<(Algebra, Vec<Vector>), CatalogError> {
    if !rep.is_involution() {
        return Err(CatalogError::NotInvolution);
    }
    let class = conjugacy_class(g, rep)?;
    let n = class.len();
    let index: BTreeMap<&Permutation, usize> = class.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let half = eta * &q(1, 2);
    let mut gram = Matrix::identity(n);
    let mut third: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            match class[i].then(&class[j]).order() {
                2 => {}
                3 => {
                    let c = index[&class[i].conjugate_by(&class[j])];
                    third.insert((i, j), c);
                    gram[(i, j)] = half.clone();
                    gram[(j, i)] = half.clone();
                }
                _ => return Err(GroupError::NotThreeTransposition(i, j).into()),
            }
        }
    }
    let names = (0..n).map(|i| format!("t{i}")).collect();
    let alg = Algebra::new(names, |i, j| {
        let mut v = Vector::zeros(n);
        if i == j {
            v[i] = Scalar::one();
        } else if let Some(&c) = third.get(&(i, j)) {
            v[i] = half.clone();
            v[j] = half.clone();
            v[c] = -&half;
        }
        v
    })?;
    let alg = alg.with_form(BilinearForm::new(gram).expect("symmetric"))?;
    let axes = (0..n).map(|i| alg.basis_vector(i)).collect();
    Ok((alg, axes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for t in NsType::ALL {
            assert_eq!(t.name().parse::<NsType>().unwrap(), t);
        }
        assert!("7A".parse::<NsType>().is_err());
    }

    #[test]
    fn incomplete_row_is_reported() {
        let mut r = row(NsType::A3);
        r.products.retain(|(x, y, _)| !(x == "a0" && y == "u_rho"));
        assert!(matches!(close(&r), Err(CatalogError::Incomplete(..))));
    }

    #[test]
    fn inconsistent_row_is_reported() {
        let mut r = row(NsType::C3);
        r.products.push(("a1".into(), "a-1".into(), alloc::vec![("a1".into(), q(1, 2))]));
        assert!(matches!(close(&r), Err(CatalogError::Inconsistent(..))));
    }

    #[test]
    fn basis_order_follows_the_table() {
        let ns = norton_sakuma(NsType::A6);
        assert_eq!(ns.algebra.names(), &["a-2", "a-1", "a0", "a1", "a2", "a3", "a_rho3", "u_rho2"]);
        assert_eq!(ns.axes.len(), 7);
        assert_eq!(ns.axes[0], ns.algebra.basis_vector(2));
    }

    #[test]
    fn law_parameters_checked() {
        assert!(make_law(LawKind::Monster, &[q(1, 4), q(1, 4)]).is_err());
        assert!(make_law(LawKind::Jordan, &[q(1, 1)]).is_err());
        assert!(make_law(LawKind::Jordan, &[q(0, 1)]).is_err());
        assert!(make_law(LawKind::Monster, &[q(1, 4)]).is_err());
    }

    #[test]
    fn almost_monster_alpha_square() {
        let law = make_law(LawKind::AlmostMonster, &[q(1, 2), q(1, 8)]).unwrap();
        assert_eq!(law.product(2, 2).iter().copied().collect::<Vec<_>>(), alloc::vec![0, 1, 2]);
    }
}
