//! Reading ideals and arrangements from files and flags.

use std::fs;
use std::path::Path;

use subcyc_core::poset::{parse_rational, AffineSubspace};
use subcyc_core::{parse_ideal, MonomialIdeal};

use crate::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(keep, _)| keep)
}

/// Ideal text from a file: comments removed, lines joined. A generator per
/// line and comma-separated lists both work.
pub fn ideal_from_file(text: &str, nvars: Option<usize>) -> Result<MonomialIdeal, CliError> {
    let joined = text
        .lines()
        .map(strip_comment)
        .flat_map(|l| l.split(','))
        .map(str::trim)
        .filter(|m| !m.is_empty())
        .collect::<Vec<_>>()
        .join(", ");
    parse_ideal(&joined, nvars).map_err(|e| CliError::Input(format!("{e} (in `{joined}`)")))
}

/// Arrangement file: one block of rows `a1 ... an | b` per subspace, blocks
/// separated by blank lines, `#` starts a comment. Coefficients are
/// integers or fractions `p/q`.
pub fn parse_arrangement(
    text: &str,
    nvars: Option<usize>,
) -> Result<(usize, Vec<AffineSubspace>), CliError> {
    let mut blocks: Vec<Vec<(usize, Vec<_>, _)>> = vec![Vec::new()];
    let mut n = nvars;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            if !blocks.last().is_some_and(Vec::is_empty) {
                blocks.push(Vec::new());
            }
            continue;
        }
        let err = |msg: String| CliError::Input(format!("line {lineno}: {msg}"));
        let (lhs, rhs) = line
            .split_once('|')
            .ok_or_else(|| err("expected `a1 ... an | b`".into()))?;
        let coeffs = lhs
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| err(format!("bad coefficient `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let b = parse_rational(rhs).ok_or_else(|| err(format!("bad constant `{}`", rhs.trim())))?;
        match n {
            None => n = Some(coeffs.len()),
            Some(k) if k != coeffs.len() => {
                return Err(err(format!("{} coefficients, expected {k}", coeffs.len())));
            }
            _ => {}
        }
        blocks
            .last_mut()
            .expect("at least one block")
            .push((lineno, coeffs, b));
    }
    blocks.retain(|b| !b.is_empty());
    let n = n
        .filter(|_| !blocks.is_empty())
        .ok_or_else(|| CliError::Input("arrangement has no subspaces".into()))?;
    let mut out = Vec::with_capacity(blocks.len());
    for block in blocks {
        let first = block[0].0;
        let eqs = block.into_iter().map(|(_, a, b)| (a, b)).collect();
        let space = AffineSubspace::new(n, eqs)
            .map_err(|e| CliError::Input(format!("line {first}: {e}")))?
            .ok_or_else(|| {
                CliError::Input(format!("line {first}: equations have no common solution"))
            })?;
        out.push(space);
    }
    Ok((n, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangement_blocks() {
        let text = "# two lines\n1 0 | 0\n\n0 1 | 1/2\n\n\n1 1 | 3  # diagonal\n";
        let (n, spaces) = parse_arrangement(text, None).unwrap();
        assert_eq!(n, 2);
        assert_eq!(spaces.len(), 3);
        assert!(spaces.iter().all(|s| s.codimension() == 1));
    }

    #[test]
    fn arrangement_errors() {
        let e = parse_arrangement("1 0 | 0\n1 0 0 | 1\n", None).unwrap_err();
        assert!(e.to_string().starts_with("line 2:"), "{e}");
        let e = parse_arrangement("1 0 | 0\n1 0 | 1\n", None).unwrap_err();
        assert!(e.to_string().contains("no common solution"));
        assert!(parse_arrangement("1 x | 0", None).is_err());
        assert!(parse_arrangement("# nothing\n", None).is_err());
    }

    #[test]
    fn ideal_file() {
        let i = ideal_from_file("x1*x2   # first\nx1*x3,\n\n", None).unwrap();
        assert_eq!(i.to_string(), "x1*x2, x1*x3");
    }
}
