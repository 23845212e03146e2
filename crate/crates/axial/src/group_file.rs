//! Permutation groups as text: a `degree` line, then one `gen` line of
//! images (0-based) per generator. `fixture:<name>` names a built-in group.

use std::fmt::Write as _;

use axial_core::groups::{fixtures, GroupError, PermGroup, Permutation};

#[derive(Debug, thiserror::Error)]
pub enum GroupFileError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("`degree` line missing")]
    NoDegree,
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub fn serialize(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for s in g.generators() {
        let images: Vec<String> = s.images().map(|i| i.to_string()).collect();
        writeln!(out, "gen {}", images.join(" ")).unwrap();
    }
    out
}

pub fn parse(text: &str) -> Result<PermGroup, GroupFileError> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let at = |msg: String| GroupFileError::Line { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match key {
            "degree" => degree = Some(rest.trim().parse::<usize>().map_err(|_| at(format!("bad degree `{rest}`")))?),
            "gen" => {
                let n = degree.ok_or_else(|| at("`degree` must come first".into()))?;
                let images: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| at(format!("bad point `{t}`"))))
                    .collect::<Result<_, _>>()?;
                if images.len() != n {
                    return Err(at(format!("{} images for degree {n}", images.len())));
                }
                gens.push(Permutation::from_images(images).map_err(|e| at(e.to_string()))?);
            }
            _ => return Err(at(format!("unknown line `{content}`"))),
        }
    }
    Ok(PermGroup::new(degree.ok_or(GroupFileError::NoDegree)?, gens)?)
}

/// Reads `fixture:<name>` or a group file from disk.
pub fn load(spec: &str) -> Result<PermGroup, crate::CliError> {
    match spec.strip_prefix("fixture:") {
        Some(name) => Ok(fixtures::fixture(name)?),
        None => {
            let text = std::fs::read_to_string(spec).map_err(|e| crate::CliError::Io(spec.into(), e))?;
            Ok(parse(&text)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_round_trip() {
        for name in fixtures::NAMES {
            let g = fixtures::fixture(name).unwrap();
            let back = parse(&serialize(&g)).unwrap();
            assert_eq!(back.generators(), g.generators());
            assert_eq!(back.order(), g.order());
        }
    }

    #[test]
    fn bad_image_count() {
        let err = parse("degree 3\ngen 0 1\n").unwrap_err();
        assert!(matches!(err, GroupFileError::Line { line: 2, .. }));
    }

    #[test]
    fn not_a_permutation() {
        assert!(matches!(parse("degree 2\ngen 0 0\n").unwrap_err(), GroupFileError::Line { line: 2, .. }));
    }
}
