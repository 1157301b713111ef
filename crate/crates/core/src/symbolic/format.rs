//! Line-oriented text format for pattern lists.
//!
//! ```text
//! # comment
//! 0101
//! rows=2;cols=3;
//! a b c
//! d e f
//! ```
//!
//! A 1D pattern is a line whose characters are its symbols. A 2D pattern is a
//! `rows=r;cols=c;` header followed by `r` lines of `c` whitespace-separated
//! tokens, top row first.

use std::fmt::Display;

use super::{Dim, Pattern, SymbolicError};

pub fn parse_patterns(text: &str) -> Result<Vec<Pattern<String>>, SymbolicError> {
    let mut out = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty());
    while let Some((line, content)) = lines.next() {
        if let Some(header) = content.strip_prefix("rows=") {
            let (rows, cols) = parse_header(header).ok_or_else(|| SymbolicError::Parse {
                line,
                msg: format!("bad 2D header `{content}`"),
            })?;
            let mut grid = Vec::with_capacity(rows);
            for _ in 0..rows {
                let (line, content) = lines.next().ok_or_else(|| SymbolicError::Parse {
                    line,
                    msg: format!("expected {rows} rows"),
                })?;
                let row: Vec<String> = content.split_whitespace().map(str::to_owned).collect();
                if row.len() != cols {
                    return Err(SymbolicError::Parse {
                        line,
                        msg: format!("expected {cols} symbols, found {}", row.len()),
                    });
                }
                grid.push(row);
            }
            grid.reverse();
            out.push(Pattern::grid(&grid)?);
        } else {
            out.push(Pattern::word(content.chars().map(String::from)));
        }
    }
    Ok(out)
}

/// Parse a file whose symbols are all single characters.
pub fn parse_char_patterns(text: &str) -> Result<Vec<Pattern<char>>, SymbolicError> {
    parse_patterns(text)?
        .into_iter()
        .map(|p| {
            if let Some((_, s)) = p.cells().find(|(_, s)| s.chars().count() != 1) {
                return Err(SymbolicError::Parse {
                    line: 0,
                    msg: format!("symbol `{s}` is not a single character"),
                });
            }
            Ok(p.map(|s| s.chars().next().expect("one char")))
        })
        .collect()
}

/// Render one pattern. 2D patterns must be full rectangles.
pub fn write_pattern<S: Clone + Eq + Display>(p: &Pattern<S>) -> String {
    match p.dim() {
        Dim::One => {
            let mut s: String = p.symbols().iter().map(|c| c.to_string()).collect();
            s.push('\n');
            s
        }
        Dim::Two => {
            let rows = p.rows().unwrap_or_default();
            let cols = rows.first().map_or(0, Vec::len);
            let mut s = format!("rows={};cols={};\n", rows.len(), cols);
            for row in rows.iter().rev() {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                s.push_str(&cells.join(" "));
                s.push('\n');
            }
            s
        }
    }
}

pub fn write_patterns<'a, S: Clone + Eq + Display + 'a>(
    ps: impl IntoIterator<Item = &'a Pattern<S>>,
) -> String {
    ps.into_iter().map(write_pattern).collect()
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_header(rest: &str) -> Option<(usize, usize)> {
    let (rows, rest) = rest.split_once(';')?;
    let cols = rest.strip_prefix("cols=")?.trim_end_matches(';');
    Some((rows.trim().parse().ok()?, cols.trim().parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_mixed_file() {
        let text = "# forbidden\n00\nrows=2;cols=3;\na b c\nd e f\n";
        let ps = parse_patterns(text).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].symbols(), ["0", "0"]);
        let rows = ps[1].rows().unwrap();
        assert_eq!(rows[0], ["d", "e", "f"]);
        assert_eq!(rows[1], ["a", "b", "c"]);
        assert_eq!(write_patterns(&ps), "00\nrows=2;cols=3;\na b c\nd e f\n");
    }

    #[test]
    fn short_grid_is_an_error() {
        let err = parse_patterns("rows=2;cols=2;\n0 1\n").unwrap_err();
        assert!(matches!(err, SymbolicError::Parse { .. }));
        let err = parse_patterns("rows=1;cols=2;\n0 1 1\n").unwrap_err();
        assert!(matches!(err, SymbolicError::Parse { line: 2, .. }));
    }

    #[test]
    fn char_patterns_reject_long_tokens() {
        assert!(parse_char_patterns("rows=1;cols=1;\nab\n").is_err());
        assert_eq!(
            parse_char_patterns("012\n").unwrap()[0].symbols(),
            ['0', '1', '2']
        );
    }
}
