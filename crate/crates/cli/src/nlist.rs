//! `--n` values: `3`, `2,3,5` or `2-5`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NListError {
    #[error("empty entry in `{0}`")]
    Empty(String),
    #[error("`{0}` is not a non-negative integer")]
    NotInteger(String),
    #[error("range `{0}` is decreasing")]
    Decreasing(String),
}

fn int(s: &str) -> Result<usize, NListError> {
    s.trim()
        .parse()
        .map_err(|_| NListError::NotInteger(s.trim().to_string()))
}

/// Parses a comma-separated list of integers and inclusive ranges, keeping
/// order and dropping repeats. A blank string is the empty list.
pub fn parse(src: &str) -> Result<Vec<usize>, NListError> {
    let mut out: Vec<usize> = Vec::new();
    if src.trim().is_empty() {
        return Ok(out);
    }
    for part in src.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(NListError::Empty(src.to_string()));
        }
        let values = match part.split_once('-').or_else(|| part.split_once("..")) {
            Some((a, b)) => {
                let (a, b) = (
                    int(a)?,
                    int(b.trim_start_matches('.').trim_start_matches('='))?,
                );
                if b < a {
                    return Err(NListError::Decreasing(part.to_string()));
                }
                (a..=b).collect()
            }
            None => vec![int(part)?],
        };
        for v in values {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse("3"), Ok(vec![3]));
        assert_eq!(parse(" "), Ok(vec![]));
        assert_eq!(parse("2, 4,3"), Ok(vec![2, 4, 3]));
        assert_eq!(parse("2-5"), Ok(vec![2, 3, 4, 5]));
        assert_eq!(parse("2..4"), Ok(vec![2, 3, 4]));
        assert_eq!(parse("2..=4,2"), Ok(vec![2, 3, 4]));
        assert_eq!(parse("5-2"), Err(NListError::Decreasing("5-2".into())));
        assert_eq!(parse("a"), Err(NListError::NotInteger("a".into())));
        assert_eq!(parse("2,,3"), Err(NListError::Empty("2,,3".into())));
    }
}
