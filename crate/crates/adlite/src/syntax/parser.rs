//! Recursive-descent parser for the `.adl` format.
//!
//! The grammar is LL(1) over the token stream except for one global choice:
//! an inclusion `X sub Y` with no inverse marker, no `some`, no `not`, no
//! conjunction and no `bot` could relate either concepts or roles. Such
//! axioms are classified in a second pass from the way the names are used
//! elsewhere (assertion arity, `some`, `not`, `-`, pragmas); unresolved
//! names default to concepts.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::lexer::{lex, Spanned, Tok};
use super::{
    temporal_attr, AttrValue, Axiom, BasicConcept, ConceptRhs, Ident, Ontology, Pos, Role,
    RoleRhs, Specifier, ValType,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax {
        pos: Pos,
        expected: Vec<String>,
        found: String,
    },
    Type {
        pos: Pos,
        message: String,
    },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Type { pos, .. } => *pos,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                pos,
                expected,
                found,
            } => {
                write!(f, "{pos}: expected ")?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        write!(f, " or ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ", found {found}")
            }
            ParseError::Type { pos, message } => write!(f, "{pos}: {message}"),
        }
    }
}

const KEYWORDS: &[&str] = &["and", "sub", "bot", "not", "some"];

#[derive(Clone, Debug)]
enum RawAtom {
    Exists(Role),
    Plain {
        name: Ident,
        inverse: bool,
        spec: Specifier,
    },
}

#[derive(Clone, Debug)]
enum RawRhs {
    Bottom,
    Exists(Role),
    NotRole(Role),
    Plain {
        name: Ident,
        inverse: bool,
        spec: Specifier,
    },
}

#[derive(Clone, Debug)]
enum RawAxiom {
    Done(Axiom),
    Inclusion {
        prefix: Vec<(Ident, Specifier)>,
        lhs: Vec<RawAtom>,
        rhs: RawRhs,
    },
}

struct Parser {
    toks: Vec<Spanned>,
    i: usize,
    roles: BTreeSet<Ident>,
    concepts: BTreeSet<Ident>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek2(&self) -> &Tok {
        let j = (self.i + 1).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            expected: expected.iter().map(|s| String::from(*s)).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(&[what])
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn name(&mut self) -> Result<Ident, ParseError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let id = Ident::new(s);
                self.bump();
                Ok(id)
            }
            _ => self.err(&["name"]),
        }
    }

    /// A single attribute-value pair `a : v`, with value-type checking for
    /// the temporal attributes.
    fn pair(&mut self) -> Result<(Ident, AttrValue), ParseError> {
        let attr = self.name()?;
        self.expect(&Tok::Colon, "`:`")?;
        let vpos = self.pos();
        let value = match self.peek().clone() {
            Tok::Question => {
                self.bump();
                AttrValue::Var(self.name()?)
            }
            Tok::Nat(n) => {
                self.bump();
                AttrValue::Time(n)
            }
            Tok::LBracket => {
                self.bump();
                let lo = match self.peek().clone() {
                    Tok::Nat(n) => {
                        self.bump();
                        n
                    }
                    _ => return self.err(&["number"]),
                };
                self.expect(&Tok::Comma, "`,`")?;
                let hi = match self.peek().clone() {
                    Tok::Nat(n) => {
                        self.bump();
                        n
                    }
                    _ => return self.err(&["number"]),
                };
                self.expect(&Tok::RBracket, "`]`")?;
                if lo > hi {
                    return Err(ParseError::Type {
                        pos: vpos,
                        message: alloc::format!(
                            "empty interval [{lo},{hi}]: endpoints must satisfy k <= l"
                        ),
                    });
                }
                AttrValue::Interval(lo, hi)
            }
            Tok::Ident(_) => {
                let n = self.name()?;
                if self.peek() == &Tok::Dot {
                    self.bump();
                    let b = self.name()?;
                    AttrValue::Proj(n, b)
                } else {
                    AttrValue::Name(n)
                }
            }
            _ => return self.err(&["value"]),
        };
        check_pair_type(&attr, &value, vpos)?;
        Ok((attr, value))
    }

    /// Specifier in brace form: `{}`, `{...}`, `{a:b, c:d}`, `{a:b, ...}`.
    fn brace_specifier(&mut self) -> Result<Specifier, ParseError> {
        self.expect(&Tok::LBrace, "`{`")?;
        let mut pairs = Vec::new();
        let mut open = false;
        if self.peek() == &Tok::Ellipsis {
            self.bump();
            open = true;
        } else if self.peek() != &Tok::RBrace {
            loop {
                pairs.push(self.pair()?);
                if self.peek() == &Tok::Comma {
                    self.bump();
                    if self.peek() == &Tok::Ellipsis {
                        self.bump();
                        open = true;
                        break;
                    }
                    continue;
                }
                break;
            }
        }
        self.expect(&Tok::RBrace, "`}`")?;
        Ok(Specifier::Set { open, pairs })
    }

    /// Specifier position: a brace specifier or a bare set variable.
    fn specifier(&mut self) -> Result<Specifier, ParseError> {
        match self.peek() {
            Tok::LBrace => self.brace_specifier(),
            Tok::Ident(_) => Ok(Specifier::Var(self.name()?)),
            _ => self.err(&["specifier"]),
        }
    }

    /// Optional `@S` suffix; `default` is used when elided.
    fn opt_spec(&mut self, default: Specifier) -> Result<Specifier, ParseError> {
        if self.peek() == &Tok::At {
            self.bump();
            self.specifier()
        } else {
            Ok(default)
        }
    }

    /// `NAME [-] [@S]` in role position.
    fn role(&mut self) -> Result<Role, ParseError> {
        let name = self.name()?;
        let inverse = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let spec = self.opt_spec(Specifier::any())?;
        self.roles.insert(name.clone());
        Ok(Role {
            name,
            inverse,
            spec,
        })
    }

    fn raw_atom(&mut self) -> Result<RawAtom, ParseError> {
        if self.is_keyword("some") {
            self.bump();
            return Ok(RawAtom::Exists(self.role()?));
        }
        let name = self.name()?;
        let inverse = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let spec = self.opt_spec(Specifier::any())?;
        if inverse {
            self.roles.insert(name.clone());
        }
        Ok(RawAtom::Plain {
            name,
            inverse,
            spec,
        })
    }

    fn raw_rhs(&mut self) -> Result<RawRhs, ParseError> {
        if self.is_keyword("bot") {
            self.bump();
            return Ok(RawRhs::Bottom);
        }
        if self.is_keyword("not") {
            self.bump();
            return Ok(RawRhs::NotRole(self.role()?));
        }
        if self.is_keyword("some") {
            self.bump();
            return Ok(RawRhs::Exists(self.role()?));
        }
        let name = self.name()?;
        let inverse = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let spec = self.opt_spec(Specifier::any())?;
        if inverse {
            self.roles.insert(name.clone());
        }
        Ok(RawRhs::Plain {
            name,
            inverse,
            spec,
        })
    }

    /// One axiom. Assertions are final; inclusions stay raw until the
    /// classification pass.
    fn axiom(&mut self) -> Result<RawAxiom, ParseError> {
        // Prefix bindings `X:{...}, Y:{...} |` are detected by `NAME :`.
        let mut prefix = Vec::new();
        while matches!(self.peek(), Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()))
            && self.peek2() == &Tok::Colon
        {
            let var = self.name()?;
            self.expect(&Tok::Colon, "`:`")?;
            let spec = self.brace_specifier()?;
            prefix.push((var, spec));
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Pipe => break,
                _ => return self.err(&["`,`", "`|`"]),
            }
        }
        if !prefix.is_empty() {
            self.expect(&Tok::Pipe, "`|`")?;
        }

        if prefix.is_empty() && !self.is_keyword("some") {
            // Could be an assertion: NAME `(` ...
            if matches!(self.peek(), Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()))
                && self.peek2() == &Tok::LParen
            {
                let name = self.name()?;
                self.expect(&Tok::LParen, "`(`")?;
                let first = self.name()?;
                let second = if self.peek() == &Tok::Comma {
                    self.bump();
                    Some(self.name()?)
                } else {
                    None
                };
                self.expect(&Tok::RParen, "`)`")?;
                let spec = self.opt_spec(Specifier::empty())?;
                return Ok(RawAxiom::Done(match second {
                    None => {
                        self.concepts.insert(name.clone());
                        Axiom::ConceptAssertion {
                            concept: name,
                            individual: first,
                            spec,
                        }
                    }
                    Some(second) => {
                        self.roles.insert(name.clone());
                        Axiom::RoleAssertion {
                            role: name,
                            subject: first,
                            object: second,
                            spec,
                        }
                    }
                }));
            }
        }

        let mut lhs = Vec::new();
        lhs.push(self.raw_atom()?);
        while self.is_keyword("and") {
            self.bump();
            lhs.push(self.raw_atom()?);
        }
        if !self.is_keyword("sub") {
            return self.err(&["`sub`", "`and`"]);
        }
        self.bump();
        let rhs = self.raw_rhs()?;
        Ok(RawAxiom::Inclusion { prefix, lhs, rhs })
    }
}

fn check_pair_type(attr: &Ident, value: &AttrValue, pos: Pos) -> Result<(), ParseError> {
    let want = match temporal_attr(attr) {
        Some(t) => t.valtype(),
        None => ValType::Abstract,
    };
    let ok = match value {
        AttrValue::Var(_) => true,
        AttrValue::Name(_) => want == ValType::Abstract,
        AttrValue::Time(_) => want == ValType::TimePoint,
        AttrValue::Interval(_, _) => want == ValType::Interval,
        AttrValue::Proj(_, b) => {
            let bt = temporal_attr(b).map_or(ValType::Abstract, |t| t.valtype());
            bt == want
        }
    };
    if ok {
        Ok(())
    } else {
        Err(ParseError::Type {
            pos,
            message: alloc::format!(
                "attribute `{attr}` has value type {}, got an incompatible value",
                match want {
                    ValType::Abstract => "abstract annotation",
                    ValType::TimePoint => "time point",
                    ValType::Interval => "interval",
                }
            ),
        })
    }
}

fn atom_forces_concept(lhs: &[RawAtom], rhs: &RawRhs) -> bool {
    lhs.len() > 1
        || lhs.iter().any(|a| matches!(a, RawAtom::Exists(_)))
        || matches!(rhs, RawRhs::Bottom | RawRhs::Exists(_))
}

fn atom_forces_role(lhs: &[RawAtom], rhs: &RawRhs) -> bool {
    matches!(rhs, RawRhs::NotRole(_))
        || lhs
            .iter()
            .any(|a| matches!(a, RawAtom::Plain { inverse: true, .. }))
        || matches!(rhs, RawRhs::Plain { inverse: true, .. })
}

/// Parses an ontology from `.adl` text.
pub fn parse_ontology(input: &str) -> Result<Ontology, ParseError> {
    let toks = lex(input).map_err(|e| ParseError::Syntax {
        pos: e.pos,
        expected: Vec::new(),
        found: e.message,
    })?;
    let mut p = Parser {
        toks,
        i: 0,
        roles: BTreeSet::new(),
        concepts: BTreeSet::new(),
    };
    let mut raw = Vec::new();
    let mut positions = Vec::new();
    loop {
        while let Tok::Pragma(words) = p.peek().clone() {
            p.bump();
            if let Some((kind, names)) = words.split_first() {
                for n in names {
                    if kind == "roles" {
                        p.roles.insert(Ident::new(n));
                    } else if kind == "concepts" {
                        p.concepts.insert(Ident::new(n));
                    }
                }
            }
        }
        if p.peek() == &Tok::Eof {
            break;
        }
        let pos = p.pos();
        raw.push(p.axiom()?);
        positions.push(pos);
    }

    // Classification of names from concept/role positions.
    for ax in &raw {
        if let RawAxiom::Inclusion { lhs, rhs, .. } = ax {
            if atom_forces_concept(lhs, rhs) && !atom_forces_role(lhs, rhs) {
                for a in lhs {
                    if let RawAtom::Plain { name, .. } = a {
                        p.concepts.insert(name.clone());
                    }
                }
                if let RawRhs::Plain { name, .. } = rhs {
                    p.concepts.insert(name.clone());
                }
            }
        }
    }
    // Propagate role classification through ambiguous inclusions to fixpoint.
    loop {
        let mut changed = false;
        for ax in &raw {
            if let RawAxiom::Inclusion { lhs, rhs, .. } = ax {
                if atom_forces_concept(lhs, rhs) {
                    continue;
                }
                let mut names = Vec::new();
                if let Some(RawAtom::Plain { name, .. }) = lhs.first() {
                    names.push(name.clone());
                }
                if let RawRhs::Plain { name, .. } = rhs {
                    names.push(name.clone());
                }
                let role_like = atom_forces_role(lhs, rhs)
                    || names
                        .iter()
                        .any(|n| p.roles.contains(n) && !p.concepts.contains(n));
                if role_like {
                    for n in names {
                        changed |= p.roles.insert(n);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let roles = p.roles.clone();
    let mut axioms = Vec::new();
    for ax in raw {
        match ax {
            RawAxiom::Done(a) => axioms.push(a),
            RawAxiom::Inclusion { prefix, lhs, rhs } => {
                let concept_forced = atom_forces_concept(&lhs, &rhs);
                let role_forced = atom_forces_role(&lhs, &rhs);
                let as_role = !concept_forced
                    && (role_forced
                        || lhs.iter().chain(core::iter::empty()).any(|a| match a {
                            RawAtom::Plain { name, .. } => roles.contains(name),
                            _ => false,
                        })
                        || matches!(&rhs, RawRhs::Plain { name, .. } if roles.contains(name)));
                if as_role {
                    let lhs_role = match lhs.into_iter().next().expect("nonempty lhs") {
                        RawAtom::Plain {
                            name,
                            inverse,
                            spec,
                        } => Role {
                            name,
                            inverse,
                            spec,
                        },
                        RawAtom::Exists(_) => unreachable!("exists forces a concept inclusion"),
                    };
                    let rhs_role = match rhs {
                        RawRhs::NotRole(r) => RoleRhs::Negative(r),
                        RawRhs::Plain {
                            name,
                            inverse,
                            spec,
                        } => RoleRhs::Positive(Role {
                            name,
                            inverse,
                            spec,
                        }),
                        _ => unreachable!("bottom/exists force a concept inclusion"),
                    };
                    axioms.push(Axiom::RoleInclusion {
                        prefix,
                        lhs: lhs_role,
                        rhs: rhs_role,
                    });
                } else {
                    let lhs_c = lhs
                        .into_iter()
                        .map(|a| match a {
                            RawAtom::Exists(r) => BasicConcept::Exists(r),
                            RawAtom::Plain { name, spec, .. } => BasicConcept::Atom { name, spec },
                        })
                        .collect();
                    let rhs_c = match rhs {
                        RawRhs::Bottom => ConceptRhs::Bottom,
                        RawRhs::Exists(r) => ConceptRhs::Basic(BasicConcept::Exists(r)),
                        RawRhs::Plain { name, spec, .. } => {
                            ConceptRhs::Basic(BasicConcept::Atom { name, spec })
                        }
                        RawRhs::NotRole(_) => unreachable!("not forces a role inclusion"),
                    };
                    axioms.push(Axiom::ConceptInclusion {
                        prefix,
                        lhs: lhs_c,
                        rhs: rhs_c,
                    });
                }
            }
        }
    }
    Ok(Ontology { axioms, positions })
}

/// Parses a standalone specifier (brace form or set variable).
pub fn parse_specifier(input: &str) -> Result<Specifier, ParseError> {
    let toks = lex(input).map_err(|e| ParseError::Syntax {
        pos: e.pos,
        expected: Vec::new(),
        found: e.message,
    })?;
    let mut p = Parser {
        toks,
        i: 0,
        roles: BTreeSet::new(),
        concepts: BTreeSet::new(),
    };
    let spec = p.specifier()?;
    if p.peek() != &Tok::Eof {
        return p.err(&["end of input"]);
    }
    Ok(spec)
}
