use num_bigint::BigInt;

use crate::error::{ParseError, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Arrow,
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    And,
    Or,
    Map,
    Set,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Arrow => "->",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Eq => "=",
            Tok::Ge => ">=",
            Tok::Gt => ">",
            Tok::And => "and",
            Tok::Or => "or",
            Tok::Map => "map",
            Tok::Set => "set",
            _ => "?",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let mut adv = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            adv(1, &mut i);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(ParseError {
                    pos: Pos {
                        line,
                        col: col + (i - start),
                    },
                    message: "decimal literals are not supported; write a fraction such as 1/2"
                        .into(),
                });
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Num(text.parse().expect("digits")),
                pos,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = match text.as_str() {
                "and" => Tok::And,
                "or" => Tok::Or,
                "map" => Tok::Map,
                "set" => Tok::Set,
                _ => Tok::Ident(text),
            };
            out.push(Token { tok, pos });
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match (c, next) {
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('<', Some('=')) => (Tok::Le, 2),
            ('>', Some('=')) => (Tok::Ge, 2),
            ('=', Some('=')) => (Tok::Eq, 2),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('/', _) => (Tok::Slash, 1),
            ('^', _) => (Tok::Caret, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (',', _) => (Tok::Comma, 1),
            (':', _) => (Tok::Colon, 1),
            ('<', _) => (Tok::Lt, 1),
            ('>', _) => (Tok::Gt, 1),
            ('=', _) => (Tok::Eq, 1),
            ('≤', _) => (Tok::Le, 1),
            ('≥', _) => (Tok::Ge, 1),
            _ => {
                return Err(ParseError {
                    pos,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        adv(len, &mut i);
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_kinds() {
        let toks = lex("map R^2 -> R^1 :\n (x*y <= 3) # c\n and").unwrap();
        assert_eq!(toks[0].tok, Tok::Map);
        assert_eq!(toks[4].tok, Tok::Arrow);
        let le = toks.iter().find(|t| t.tok == Tok::Le).unwrap();
        assert_eq!(le.pos, Pos { line: 2, col: 7 });
        assert_eq!(toks[toks.len() - 2].tok, Tok::And);
        let err = lex("x + 0.5").unwrap_err();
        assert_eq!(err.pos.col, 6);
    }
}
