//! Text format for algebras with an optional form and named vectors.
//!
//! ```text
//! # comment
//! dim 3
//! field Q                  (or `field c0 c1 1` for w^2 + c1 w + c0 = 0)
//! basis a0 a1 a_rho
//! sparse                   (optional: omitted products are zero)
//! products
//! 0 0 : 1 0 0
//! 0 1 : 1/8 1/8 -1/8
//! ...
//! form                     (optional, entries i <= j)
//! 0 0 : 1
//! axes                     (optional)
//! a0 : 1 0 0
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use axial_core::algebra::{Algebra, AlgebraError};
use axial_core::exactnum::{Matrix, QuadraticField, Scalar, Vector};
use axial_core::forms::BilinearForm;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Missing(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn at(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Line { line, msg: msg.into() }
}

/// An algebra together with named vectors (usually its axes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: Algebra,
    pub axes: Vec<(String, Vector)>,
}

impl AlgebraFile {
    pub fn new(algebra: Algebra) -> Self {
        AlgebraFile { algebra, axes: Vec::new() }
    }

    /// Names each vector by its basis name when it is a basis vector, and
    /// `x<k>` otherwise.
    pub fn with_axes(algebra: Algebra, axes: &[Vector]) -> Self {
        let named = axes
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let unit = (0..algebra.dim()).find(|&i| *v == algebra.basis_vector(i));
                let name = unit.map_or_else(|| format!("x{k}"), |i| algebra.names()[i].clone());
                (name, v.clone())
            })
            .collect();
        AlgebraFile { algebra, axes: named }
    }

    pub fn axis(&self, name: &str) -> Option<&Vector> {
        self.axes.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

fn row(v: &[Scalar]) -> String {
    v.iter().map(Scalar::to_text).collect::<Vec<_>>().join(" ")
}

/// Writes the file; with `sparse`, zero products are left out.
pub fn serialize(file: &AlgebraFile, sparse: bool) -> String {
    let alg = &file.algebra;
    let n = alg.dim();
    let mut out = String::new();
    writeln!(out, "dim {n}").unwrap();
    match alg.field() {
        None => writeln!(out, "field Q").unwrap(),
        Some(k) => writeln!(out, "field {} {} 1", k.c0(), k.c1()).unwrap(),
    }
    writeln!(out, "basis {}", alg.names().join(" ")).unwrap();
    if sparse {
        writeln!(out, "sparse").unwrap();
    }
    writeln!(out, "products").unwrap();
    for i in 0..n {
        for j in i..n {
            let p = alg.product(i, j);
            if sparse && p.is_zero() {
                continue;
            }
            writeln!(out, "{i} {j} : {}", row(p)).unwrap();
        }
    }
    if let Some(f) = alg.form() {
        writeln!(out, "form").unwrap();
        for i in 0..n {
            for j in i..n {
                writeln!(out, "{i} {j} : {}", f.gram()[(i, j)]).unwrap();
            }
        }
    }
    if !file.axes.is_empty() {
        writeln!(out, "axes").unwrap();
        for (name, v) in &file.axes {
            writeln!(out, "{name} : {}", row(v)).unwrap();
        }
    }
    out
}

#[derive(PartialEq)]
enum Block {
    Header,
    Products,
    Form,
    Axes,
}

struct Header {
    dim: Option<usize>,
    field: Option<Option<Arc<QuadraticField>>>,
    names: Option<Vec<String>>,
    sparse: bool,
}

fn scalars(text: &str, line: usize, field: Option<&Arc<QuadraticField>>) -> Result<Vec<Scalar>, FormatError> {
    text.split_whitespace()
        .map(|t| Scalar::parse(t, field).map_err(|e| at(line, format!("bad scalar `{t}`: {e}"))))
        .collect()
}

fn pair(lhs: &str, line: usize, dim: usize) -> Result<(usize, usize), FormatError> {
    let idx: Vec<usize> = lhs
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| at(line, format!("bad index `{t}`"))))
        .collect::<Result<_, _>>()?;
    let &[i, j] = idx.as_slice() else {
        return Err(at(line, "expected two indices before `:`"));
    };
    if i >= dim || j >= dim {
        return Err(at(line, format!("index out of range for dimension {dim}")));
    }
    Ok((i.min(j), i.max(j)))
}

pub fn parse(text: &str) -> Result<AlgebraFile, FormatError> {
    let mut h = Header { dim: None, field: None, names: None, sparse: false };
    let mut block = Block::Header;
    let mut products: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    let mut form: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    let mut has_form = false;
    let mut axes: Vec<(String, Vector)> = Vec::new();
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match content {
            "products" | "form" | "axes" => {
                let dim = h.dim.ok_or_else(|| at(line, "`dim` must come first"))?;
                let names = h.names.as_ref().ok_or_else(|| at(line, "`basis` line missing"))?;
                if names.len() != dim {
                    return Err(at(line, format!("{} basis names for dimension {dim}", names.len())));
                }
                h.field.get_or_insert(None);
                block = match content {
                    "products" => Block::Products,
                    "form" => {
                        has_form = true;
                        Block::Form
                    }
                    _ => Block::Axes,
                };
                continue;
            }
            _ => {}
        }
        let field = h.field.clone().flatten();
        match block {
            Block::Header => {
                let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
                let rest = rest.trim();
                match key {
                    "dim" => h.dim = Some(rest.parse().map_err(|_| at(line, format!("bad dimension `{rest}`")))?),
                    "basis" => h.names = Some(rest.split_whitespace().map(String::from).collect()),
                    "sparse" => h.sparse = true,
                    "field" if rest == "Q" => h.field = Some(None),
                    "field" => {
                        let c = scalars(rest, line, None)?;
                        let k = QuadraticField::from_monic(&c).map_err(|e| at(line, e.to_string()))?;
                        h.field = Some(Some(k));
                    }
                    _ => return Err(at(line, format!("unknown header line `{content}`"))),
                }
            }
            Block::Products | Block::Form => {
                let dim = h.dim.unwrap_or(0);
                let (lhs, rhs) = content.split_once(':').ok_or_else(|| at(line, "expected `i j : values`"))?;
                let key = pair(lhs, line, dim)?;
                let vals = scalars(rhs, line, field.as_ref())?;
                if block == Block::Products {
                    if vals.len() != dim {
                        return Err(at(line, format!("{} coordinates for dimension {dim}", vals.len())));
                    }
                    if products.insert(key, Vector(vals)).is_some() {
                        return Err(at(line, format!("duplicate product {} {}", key.0, key.1)));
                    }
                } else {
                    let [v] = <[Scalar; 1]>::try_from(vals).map_err(|_| at(line, "expected one form value"))?;
                    if form.insert(key, v).is_some() {
                        return Err(at(line, format!("duplicate form entry {} {}", key.0, key.1)));
                    }
                }
            }
            Block::Axes => {
                let dim = h.dim.unwrap_or(0);
                let (name, rhs) = content.split_once(':').ok_or_else(|| at(line, "expected `name : values`"))?;
                let vals = scalars(rhs, line, field.as_ref())?;
                if vals.len() != dim {
                    return Err(at(line, format!("{} coordinates for dimension {dim}", vals.len())));
                }
                let name = name.trim().to_string();
                if axes.iter().any(|(n, _)| *n == name) {
                    return Err(at(line, format!("duplicate vector name `{name}`")));
                }
                axes.push((name, Vector(vals)));
            }
        }
    }
    let dim = h.dim.ok_or_else(|| FormatError::Missing("`dim` line missing".into()))?;
    let names = h.names.ok_or_else(|| FormatError::Missing("`basis` line missing".into()))?;
    if names.len() != dim {
        return Err(at(last_line, format!("{} basis names for dimension {dim}", names.len())));
    }
    let field = h.field.flatten();
    let mut missing = None;
    let alg = Algebra::new(names, |i, j| match products.get(&(i, j)) {
        Some(v) => v.clone(),
        None => {
            if !h.sparse && missing.is_none() {
                missing = Some((i, j));
            }
            Vector::zeros(dim)
        }
    })?;
    if let Some((i, j)) = missing {
        return Err(FormatError::Missing(format!("product {i} {j} not listed (add `sparse` to default to zero)")));
    }
    let mut alg = match field {
        Some(k) => alg.extend_scalars(k)?,
        None => alg,
    };
    if has_form {
        let mut gram = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let v = form
                    .get(&(i, j))
                    .cloned()
                    .ok_or_else(|| FormatError::Missing(format!("form entry {i} {j} not listed")))?;
                gram[(i, j)] = v.clone();
                gram[(j, i)] = v;
            }
        }
        let f = BilinearForm::new(gram).map_err(AlgebraError::from)?;
        alg = alg.with_form(f)?;
    }
    Ok(AlgebraFile { algebra: alg, axes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use axial_core::catalog::{norton_sakuma, NsType};

    #[test]
    fn norton_sakuma_round_trip() {
        for t in NsType::ALL {
            let ns = norton_sakuma(t);
            let file = AlgebraFile::with_axes(ns.algebra, &ns.axes);
            for sparse in [false, true] {
                assert_eq!(parse(&serialize(&file, sparse)).unwrap(), file);
            }
        }
    }

    #[test]
    fn six_a_has_dim_eight_and_a_form() {
        let ns = norton_sakuma(NsType::A6);
        let back = parse(&serialize(&AlgebraFile::new(ns.algebra), false)).unwrap();
        assert_eq!(back.algebra.dim(), 8);
        assert!(back.algebra.form().is_some());
    }

    const TINY: &str = "dim 1\nfield Q\nbasis x\nproducts\n0 0 : 1\n";

    #[test]
    fn zero_denominator_reports_its_line() {
        let bad = TINY.replace("0 0 : 1", "0 0 : 1/0");
        let err = parse(&bad).unwrap_err();
        assert!(matches!(err, FormatError::Line { line: 5, .. }), "{err}");
    }

    #[test]
    fn duplicate_pair_is_rejected() {
        let bad = format!("{TINY}0 0 : 2\n");
        assert!(matches!(parse(&bad).unwrap_err(), FormatError::Line { line: 6, .. }));
    }

    #[test]
    fn missing_pair_needs_sparse() {
        let text = "dim 2\nfield Q\nbasis x y\nproducts\n0 0 : 1 0\n";
        assert!(matches!(parse(text).unwrap_err(), FormatError::Missing(_)));
        let sparse = text.replace("basis x y", "basis x y\nsparse");
        assert!(parse(&sparse).unwrap().algebra.product(1, 1).is_zero());
    }

    #[test]
    fn wrong_coordinate_count() {
        let bad = TINY.replace("0 0 : 1", "0 0 : 1 0");
        assert!(matches!(parse(&bad).unwrap_err(), FormatError::Line { line: 5, .. }));
    }

    #[test]
    fn quadratic_field_round_trip() {
        let text = "dim 1\nfield -1 -1 1\nbasis x\nproducts\n0 0 : 1/2+1/3*w\n";
        let file = parse(text).unwrap();
        assert!(file.algebra.field().is_some());
        assert_eq!(parse(&serialize(&file, false)).unwrap(), file);
    }
}
