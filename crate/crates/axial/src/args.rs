//! Parsing of command-line values: algebra sources, vectors, matrices and
//! fusion laws.

use axial_core::catalog::{make_law, matsuo_algebra, monster_law, norton_sakuma, LawKind, NsType};
use axial_core::exactnum::{Matrix, Scalar, Vector};
use axial_core::fusion::FusionLaw;
use axial_core::groups::involution_classes;

use crate::algebra_file::{self, AlgebraFile};
use crate::{group_file, CliError};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `ns:<type>`, `matsuo:<group>:<eta>` or a path to an algebra file.
pub fn load_algebra(spec: &str) -> Result<AlgebraFile, CliError> {
    if let Some(t) = spec.strip_prefix("ns:") {
        let t: NsType = t.parse()?;
        let ns = norton_sakuma(t);
        return Ok(AlgebraFile::with_axes(ns.algebra, &ns.axes));
    }
    if let Some(rest) = spec.strip_prefix("matsuo:") {
        let (group, eta) = rest.rsplit_once(':').ok_or_else(|| usage("expected matsuo:<group>:<eta>"))?;
        let eta = Scalar::parse(eta, None).map_err(|e| usage(format!("bad eta `{eta}`: {e}")))?;
        let g = if std::path::Path::new(group).is_file() {
            group_file::load(group)?
        } else {
            group_file::load(&format!("fixture:{group}"))?
        };
        let mut last = None;
        for class in involution_classes(&g) {
            match matsuo_algebra(&g, &class[0], &eta) {
                Ok((alg, axes)) => return Ok(AlgebraFile::with_axes(alg, &axes)),
                Err(e) => last = Some(e),
            }
        }
        return Err(last.map_or_else(|| usage("group has no involutions"), CliError::from));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| CliError::Io(spec.into(), e))?;
    Ok(algebra_file::parse(&text)?)
}

fn scalar(s: &str, file: &AlgebraFile) -> Result<Scalar, CliError> {
    Scalar::parse(s, file.algebra.field()).map_err(|e| usage(format!("bad scalar `{s}`: {e}")))
}

/// Vector of a known name: an entry of the axes block or a basis element.
fn named(file: &AlgebraFile, name: &str) -> Option<Vector> {
    file.axis(name).cloned().or_else(|| file.algebra.index_of(name).map(|i| file.algebra.basis_vector(i)))
}

fn known_names(file: &AlgebraFile) -> Vec<&str> {
    let mut names: Vec<&str> =
        file.axes.iter().map(|(n, _)| n.as_str()).chain(file.algebra.names().iter().map(String::as_str)).collect();
    names.sort_by_key(|n| std::cmp::Reverse(n.len()));
    names
}

/// A combination such as `a0+a1-1/2*a_rho`. Names are matched greedily, so
/// basis names containing `-` work as written.
fn combination(file: &AlgebraFile, s: &str) -> Result<Vector, CliError> {
    let bad = || usage(format!("cannot read `{s}` as a vector"));
    let names = known_names(file);
    let mut out = Vector::zeros(file.algebra.dim());
    let mut rest = s.trim();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = Scalar::one();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        } else if !first {
            return Err(bad());
        }
        first = false;
        let mut coef = Scalar::one();
        if rest.starts_with(|c: char| c.is_ascii_digit()) {
            let end = rest.find('*').ok_or_else(bad)?;
            coef = scalar(&rest[..end], file)?;
            rest = rest[end + 1..].trim_start();
        }
        let name = names.iter().find(|n| rest.starts_with(**n)).ok_or_else(bad)?;
        let v = named(file, name).expect("listed name");
        out = out.add_scaled(&(&sign * &coef), &v);
        rest = rest[name.len()..].trim_start();
    }
    if first {
        return Err(bad());
    }
    Ok(out)
}

/// Comma-separated coordinates, or a combination of named vectors.
pub fn vector(file: &AlgebraFile, s: &str) -> Result<Vector, CliError> {
    let n = file.algebra.dim();
    let coords = s.contains(',') || (n == 1 && !s.chars().any(|c| c.is_alphabetic() && c != 'w'));
    if !coords {
        return combination(file, s);
    }
    let v: Vec<Scalar> = s.split(',').map(|t| scalar(t, file)).collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(usage(format!("vector `{s}` has {} coordinates, the algebra has dimension {n}", v.len())));
    }
    Ok(Vector(v))
}

/// Vectors separated by `;`, or by `,` when every item is a combination.
pub fn vectors(file: &AlgebraFile, s: &str) -> Result<Vec<Vector>, CliError> {
    if s.contains(';') {
        return s.split(';').filter(|t| !t.trim().is_empty()).map(|t| vector(file, t)).collect();
    }
    let items: Result<Vec<Vector>, _> = s.split(',').map(|t| combination(file, t)).collect();
    match items {
        Ok(v) => Ok(v),
        Err(_) => Ok(vec![vector(file, s)?]),
    }
}

/// Rows separated by `;`, entries by `,` or spaces.
pub fn matrix(file: &AlgebraFile, s: &str) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<Scalar>> = s
        .split(';')
        .map(|r| r.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(|t| scalar(t, file)).collect())
        .collect::<Result<_, _>>()?;
    Matrix::from_rows(rows).map_err(|e| usage(format!("bad matrix: {e}")))
}

/// `monster`, `monster:α,β`, `almost_monster:α,β` or `jordan:η`.
pub fn law(s: &str) -> Result<FusionLaw, CliError> {
    let (kind, params) = s.split_once(':').unwrap_or((s, ""));
    let kind: LawKind = kind.parse().map_err(usage)?;
    if params.is_empty() {
        return match kind {
            LawKind::Monster => Ok(monster_law()),
            _ => Err(usage(format!("law `{s}` needs parameters"))),
        };
    }
    let p: Vec<Scalar> = params
        .split(',')
        .map(|t| Scalar::parse(t, None).map_err(|e| usage(format!("bad law parameter `{t}`: {e}"))))
        .collect::<Result<_, _>>()?;
    Ok(make_law(kind, &p)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(t: &str) -> AlgebraFile {
        load_algebra(&format!("ns:{t}")).unwrap()
    }

    #[test]
    fn combinations_with_dashed_names() {
        let f = ns("4B");
        let v = vector(&f, "a-1 + 2*a0 - 1/2*a_rho2").unwrap();
        let i = |n: &str| f.algebra.index_of(n).unwrap();
        assert_eq!(v[i("a-1")], Scalar::one());
        assert_eq!(v[i("a0")], Scalar::from_int(2));
        assert_eq!(v[i("a_rho2")], Scalar::frac(-1, 2));
    }

    #[test]
    fn coordinates_and_lists() {
        let f = ns("2B");
        assert_eq!(vector(&f, "1,1").unwrap(), Vector::from_ints(&[1, 1]));
        assert_eq!(vectors(&f, "a0,a1").unwrap().len(), 2);
        assert_eq!(vectors(&f, "1,0;0,1").unwrap().len(), 2);
        assert_eq!(vectors(&f, "1,0").unwrap().len(), 1);
        assert!(vector(&f, "1,0,0").is_err());
        assert!(vector(&f, "b7").is_err());
    }

    #[test]
    fn laws() {
        assert_eq!(law("monster").unwrap(), monster_law());
        assert_eq!(law("monster:1/4,1/32").unwrap(), monster_law());
        assert!(law("jordan:1/32").is_ok());
        assert!(law("jordan").is_err());
        assert!(law("monster:1,1/32").is_err());
        assert!(law("bogus").is_err());
    }

    #[test]
    fn matsuo_source() {
        let f = load_algebra("matsuo:S3:1/32").unwrap();
        assert_eq!(f.algebra.dim(), 3);
        assert_eq!(f.axes.len(), 3);
    }
}
