//! Hand-rolled lexer for the `.adl` format.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{Nat, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(Nat),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Ellipsis,
    At,
    Pipe,
    Minus,
    Question,
    /// `#!` directive line, split into words.
    Pragma(Vec<String>),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => alloc::format!("identifier `{s}`"),
            Tok::Nat(n) => alloc::format!("number `{n}`"),
            Tok::LBrace => String::from("`{`"),
            Tok::RBrace => String::from("`}`"),
            Tok::LBracket => String::from("`[`"),
            Tok::RBracket => String::from("`]`"),
            Tok::LParen => String::from("`(`"),
            Tok::RParen => String::from("`)`"),
            Tok::Comma => String::from("`,`"),
            Tok::Colon => String::from("`:`"),
            Tok::Dot => String::from("`.`"),
            Tok::Ellipsis => String::from("`...`"),
            Tok::At => String::from("`@`"),
            Tok::Pipe => String::from("`|`"),
            Tok::Minus => String::from("`-`"),
            Tok::Question => String::from("`?`"),
            Tok::Pragma(_) => String::from("pragma"),
            Tok::Eof => String::from("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub pos: Pos,
    pub message: String,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(input: &str) -> Result<Vec<Spanned>, LexError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if let Some(ch) = c {
                if ch == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            bump!();
            // `#!` starts a directive, plain `#` a comment running to EOL.
            let pragma = chars.peek() == Some(&'!');
            let mut body = String::new();
            while let Some(&c2) = chars.peek() {
                if c2 == '\n' {
                    break;
                }
                body.push(c2);
                bump!();
            }
            if pragma {
                let words = body[1..]
                    .split(|c: char| c.is_whitespace() || c == ':' || c == ',')
                    .filter(|w| !w.is_empty())
                    .map(String::from)
                    .collect();
                toks.push(Spanned {
                    tok: Tok::Pragma(words),
                    pos,
                });
            }
            continue;
        }
        if is_ident_start(c) {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if is_ident_continue(c2) {
                    s.push(c2);
                    bump!();
                } else {
                    break;
                }
            }
            toks.push(Spanned {
                tok: Tok::Ident(s),
                pos,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_digit() {
                    s.push(c2);
                    bump!();
                } else {
                    break;
                }
            }
            let n: BigUint = s.parse().expect("digits parse as a natural number");
            toks.push(Spanned {
                tok: Tok::Nat(n),
                pos,
            });
            continue;
        }
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            '@' => Tok::At,
            '|' => Tok::Pipe,
            '-' => Tok::Minus,
            '?' => Tok::Question,
            '.' => {
                bump!();
                if chars.peek() == Some(&'.') {
                    bump!();
                    if chars.peek() == Some(&'.') {
                        bump!();
                        toks.push(Spanned {
                            tok: Tok::Ellipsis,
                            pos,
                        });
                        continue;
                    }
                    return Err(LexError {
                        pos,
                        message: String::from("expected `...` or `.`"),
                    });
                }
                toks.push(Spanned { tok: Tok::Dot, pos });
                continue;
            }
            other => {
                return Err(LexError {
                    pos,
                    message: alloc::format!("unexpected character `{other}`"),
                })
            }
        };
        bump!();
        toks.push(Spanned { tok, pos });
    }
    toks.push(Spanned {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(toks)
}
