//! Word files: ASCII decimal symbols separated by whitespace, one word per
//! line. Blank lines and lines starting with `#` are ignored.

use dccodes::algebra::Symbol;

use crate::CliError;

pub fn parse_words(text: &str, q: u32, len: usize) -> Result<Vec<Vec<Symbol>>, CliError> {
    let mut words = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let word = line
            .split_whitespace()
            .map(|tok| {
                let v: Symbol = tok.parse().map_err(|_| {
                    CliError::Parse(format!("line {lineno}: {tok:?} is not a symbol"))
                })?;
                if v >= q {
                    return Err(CliError::Parse(format!(
                        "line {lineno}: symbol {v} is outside [0, {q})"
                    )));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if word.len() != len {
            return Err(CliError::Parse(format!(
                "line {lineno}: expected {len} symbols, found {}",
                word.len()
            )));
        }
        words.push(word);
    }
    Ok(words)
}

pub fn format_word(w: &[Symbol]) -> String {
    let mut s = String::with_capacity(2 * w.len());
    for (i, x) in w.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&x.to_string());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_input() {
        assert!(parse_words("0 1 2", 2, 3).is_err());
        assert!(parse_words("0 1", 2, 3).is_err());
        assert!(parse_words("0 x 1", 2, 3).is_err());
        assert!(parse_words("0 -1 1", 2, 3).is_err());
    }

    #[test]
    fn skips_comments_and_blanks() {
        let w = parse_words("# header\n\n1 0 1\n  0 0 1  \n", 2, 3).unwrap();
        assert_eq!(w, vec![vec![1, 0, 1], vec![0, 0, 1]]);
    }

    proptest! {
        #[test]
        fn round_trip(words in prop::collection::vec(prop::collection::vec(0u32..7, 5), 0..8)) {
            let text: String = words.iter().map(|w| format_word(w) + "\n").collect();
            prop_assert_eq!(parse_words(&text, 7, 5).unwrap(), words);
        }
    }
}
