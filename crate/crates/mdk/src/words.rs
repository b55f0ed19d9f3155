//! Text syntax for bracket words.
//!
//! Tokens are whitespace-separated: `a<i>` (opening) and `b<i>` (closing),
//! with the bracket aliases `(<i>` and `)<i>`.

use std::fmt;

use mdk_core::dyck::DyckSymbol;

#[derive(Debug, PartialEq, Eq)]
pub struct WordParseError {
    pub token: String,
}

impl fmt::Display for WordParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bad word token `{}` (expected a<i>, b<i>, (<i> or )<i>)",
            self.token
        )
    }
}

impl std::error::Error for WordParseError {}

pub fn parse_word(text: &str) -> Result<Vec<DyckSymbol>, WordParseError> {
    let mut word = Vec::new();
    for tok in text.split_whitespace() {
        let (opening, digits) = match tok.split_at(1) {
            ("a", rest) | ("(", rest) => (true, rest),
            ("b", rest) | (")", rest) => (false, rest),
            _ => return Err(WordParseError { token: tok.into() }),
        };
        let index: u8 = digits
            .parse()
            .ok()
            .filter(|&i| i >= 1)
            .ok_or_else(|| WordParseError { token: tok.into() })?;
        word.push(if opening {
            DyckSymbol::alpha(index)
        } else {
            DyckSymbol::beta(index)
        });
    }
    Ok(word)
}

pub fn format_word(w: &[DyckSymbol]) -> String {
    w.iter()
        .map(|s| crate::render::symbol_ascii(*s))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_and_bracket_syntax_agree() {
        assert_eq!(parse_word("a1 b2").unwrap(), parse_word("(1 )2").unwrap());
        assert_eq!(parse_word("").unwrap(), vec![]);
        assert_eq!(format_word(&parse_word("a2 b1").unwrap()), "a2 b1");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_word("a0").is_err());
        assert!(parse_word("c1").is_err());
        assert!(parse_word("a").is_err());
    }
}
