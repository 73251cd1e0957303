//! Abstract syntax of attributed DL-Lite (plain and temporal dialects),
//! together with the textual `.adl` format: lexer, parser, pretty-printer
//! and the structural validator.

mod lexer;
mod parser;
mod printer;
mod validate;

pub use parser::{parse_ontology, parse_specifier, ParseError};
pub use printer::{print_axiom, print_ontology};
pub use validate::{validate_ontology, ValidationReport, Violation};

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

/// Natural number used for time points and interval endpoints.
pub type Nat = BigUint;

/// An interned-by-value identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(pub String);

impl Ident {
    pub fn new(s: &str) -> Self {
        Ident(String::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Ident {
    fn from(s: &str) -> Self {
        Ident::new(s)
    }
}

/// The seven temporal attributes of the temporal dialect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TemporalAttr {
    Time,
    Before,
    After,
    Until,
    Since,
    During,
    Between,
}

impl TemporalAttr {
    pub fn name(self) -> &'static str {
        match self {
            TemporalAttr::Time => "time",
            TemporalAttr::Before => "before",
            TemporalAttr::After => "after",
            TemporalAttr::Until => "until",
            TemporalAttr::Since => "since",
            TemporalAttr::During => "during",
            TemporalAttr::Between => "between",
        }
    }

    pub fn valtype(self) -> ValType {
        match self {
            TemporalAttr::During | TemporalAttr::Between => ValType::Interval,
            _ => ValType::TimePoint,
        }
    }
}

/// Value type of an attribute: abstract annotation, time point, or interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValType {
    Abstract,
    TimePoint,
    Interval,
}

/// Recognizes the reserved temporal attribute names.
pub fn temporal_attr(name: &Ident) -> Option<TemporalAttr> {
    match name.as_str() {
        "time" => Some(TemporalAttr::Time),
        "before" => Some(TemporalAttr::Before),
        "after" => Some(TemporalAttr::After),
        "until" => Some(TemporalAttr::Until),
        "since" => Some(TemporalAttr::Since),
        "during" => Some(TemporalAttr::During),
        "between" => Some(TemporalAttr::Between),
        _ => None,
    }
}

/// Value type of an attribute name (`Abstract` for everything non-temporal).
pub fn valtype(name: &Ident) -> ValType {
    temporal_attr(name).map_or(ValType::Abstract, TemporalAttr::valtype)
}

/// Attribute value inside a specifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AttrValue {
    /// Annotation name from `N_a`.
    Name(Ident),
    /// Object variable (written `?x`).
    Var(Ident),
    /// Set projection `X.a`: all values of attribute `a` in `X`.
    Proj(Ident, Ident),
    /// Time point.
    Time(Nat),
    /// Interval `[k, l]` with `k <= l`.
    Interval(Nat, Nat),
}

/// Ground annotation value: part of the syntactic annotation domain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AnnoValue {
    Name(Ident),
    Time(Nat),
    Interval(Nat, Nat),
}

impl AnnoValue {
    pub fn to_attr_value(&self) -> AttrValue {
        match self {
            AnnoValue::Name(n) => AttrValue::Name(n.clone()),
            AnnoValue::Time(t) => AttrValue::Time(t.clone()),
            AnnoValue::Interval(a, b) => AttrValue::Interval(a.clone(), b.clone()),
        }
    }
}

impl fmt::Display for AnnoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnnoValue::Name(n) => write!(f, "{n}"),
            AnnoValue::Time(t) => write!(f, "{t}"),
            AnnoValue::Interval(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Annotation-set specifier: a set variable, a closed specifier, or an
/// open specifier (closed plus a trailing `...`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Specifier {
    Var(Ident),
    Set {
        open: bool,
        pairs: Vec<(Ident, AttrValue)>,
    },
}

impl Specifier {
    pub fn closed(pairs: Vec<(Ident, AttrValue)>) -> Self {
        Specifier::Set { open: false, pairs }
    }

    pub fn open(pairs: Vec<(Ident, AttrValue)>) -> Self {
        Specifier::Set { open: true, pairs }
    }

    /// The open empty specifier, `{...}`: matches any annotation set.
    pub fn any() -> Self {
        Specifier::open(Vec::new())
    }

    /// The closed empty specifier, `{}`: matches exactly the empty set.
    pub fn empty() -> Self {
        Specifier::closed(Vec::new())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Specifier::Var(_) => false,
            Specifier::Set { pairs, .. } => pairs
                .iter()
                .all(|(_, v)| !matches!(v, AttrValue::Var(_) | AttrValue::Proj(_, _))),
        }
    }

    /// Canonical ground form: pairs sorted, duplicates removed.
    pub fn to_ground(&self) -> Option<GroundSpecifier> {
        match self {
            Specifier::Var(_) => None,
            Specifier::Set { open, pairs } => {
                let mut set = BTreeSet::new();
                for (a, v) in pairs {
                    let gv = match v {
                        AttrValue::Name(n) => AnnoValue::Name(n.clone()),
                        AttrValue::Time(t) => AnnoValue::Time(t.clone()),
                        AttrValue::Interval(u, w) => AnnoValue::Interval(u.clone(), w.clone()),
                        _ => return None,
                    };
                    set.insert((a.clone(), gv));
                }
                Some(GroundSpecifier {
                    open: *open,
                    pairs: set,
                })
            }
        }
    }
}

/// Ground specifier in canonical form (sorted, deduplicated pair set).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroundSpecifier {
    pub open: bool,
    pub pairs: BTreeSet<(Ident, AnnoValue)>,
}

impl GroundSpecifier {
    pub fn closed_empty() -> Self {
        GroundSpecifier {
            open: false,
            pairs: BTreeSet::new(),
        }
    }

    pub fn open_empty() -> Self {
        GroundSpecifier {
            open: true,
            pairs: BTreeSet::new(),
        }
    }

    pub fn to_specifier(&self) -> Specifier {
        Specifier::Set {
            open: self.open,
            pairs: self
                .pairs
                .iter()
                .map(|(a, v)| (a.clone(), v.to_attr_value()))
                .collect(),
        }
    }

    /// Pairs whose attribute is one of the temporal attributes.
    pub fn temporal_pairs(&self) -> impl Iterator<Item = (&Ident, &AnnoValue)> {
        self.pairs
            .iter()
            .filter(|(a, _)| temporal_attr(a).is_some())
            .map(|(a, v)| (a, v))
    }

    /// Pairs whose attribute is not temporal.
    pub fn abstract_pairs(&self) -> impl Iterator<Item = (&Ident, &AnnoValue)> {
        self.pairs
            .iter()
            .filter(|(a, _)| temporal_attr(a).is_none())
            .map(|(a, v)| (a, v))
    }

    pub fn has_temporal_pair(&self) -> bool {
        self.temporal_pairs().next().is_some()
    }

    /// The specifier with all temporal pairs removed.
    pub fn abstract_part(&self) -> GroundSpecifier {
        GroundSpecifier {
            open: self.open,
            pairs: self
                .abstract_pairs()
                .map(|(a, v)| (a.clone(), v.clone()))
                .collect(),
        }
    }

    /// `S(a:v)`: the abstract part of `S` extended with the single pair `a:v`.
    pub fn with_pair(&self, attr: &Ident, value: &AnnoValue) -> GroundSpecifier {
        let mut out = self.abstract_part();
        out.pairs.insert((attr.clone(), value.clone()));
        out
    }
}

impl fmt::Display for GroundSpecifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, v)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}:{v}")?;
        }
        if self.open {
            if !self.pairs.is_empty() {
                write!(f, ", ")?;
            }
            write!(f, "...")?;
        }
        write!(f, "}}")
    }
}

/// Syntactic specifier implication `S => T`: `T` is open and the pairs of
/// `S` form a superset of the pairs of `T`.
pub fn ground_specifier_implies(s: &GroundSpecifier, t: &GroundSpecifier) -> bool {
    t.open && t.pairs.is_subset(&s.pairs)
}

/// Errors raised by [`specifier_implies`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecifierError {
    NonGroundSpecifier,
}

impl fmt::Display for SpecifierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecifierError::NonGroundSpecifier => write!(f, "specifier is not ground"),
        }
    }
}

/// Specifier implication on syntactic specifiers; both must be ground.
pub fn specifier_implies(s: &Specifier, t: &Specifier) -> Result<bool, SpecifierError> {
    let (gs, gt) = match (s.to_ground(), t.to_ground()) {
        (Some(gs), Some(gt)) => (gs, gt),
        _ => return Err(SpecifierError::NonGroundSpecifier),
    };
    Ok(ground_specifier_implies(&gs, &gt))
}

/// A role expression `R@S` or `R-@S`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Role {
    pub name: Ident,
    pub inverse: bool,
    pub spec: Specifier,
}

/// Right side of a role inclusion: a role or a negated role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoleRhs {
    Positive(Role),
    Negative(Role),
}

/// Basic concept: annotated concept name or existential role restriction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasicConcept {
    Atom { name: Ident, spec: Specifier },
    Exists(Role),
}

/// Right side of a concept inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConceptRhs {
    Basic(BasicConcept),
    Bottom,
}

/// A single axiom: assertion, concept inclusion, or role inclusion.
/// Inclusions carry a prefix of set-variable bindings `X1:S1, ..., Xn:Sn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    ConceptAssertion {
        concept: Ident,
        individual: Ident,
        spec: Specifier,
    },
    RoleAssertion {
        role: Ident,
        subject: Ident,
        object: Ident,
        spec: Specifier,
    },
    ConceptInclusion {
        prefix: Vec<(Ident, Specifier)>,
        lhs: Vec<BasicConcept>,
        rhs: ConceptRhs,
    },
    RoleInclusion {
        prefix: Vec<(Ident, Specifier)>,
        lhs: Role,
        rhs: RoleRhs,
    },
}

impl Axiom {
    pub fn is_assertion(&self) -> bool {
        matches!(
            self,
            Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. }
        )
    }

    /// All specifiers of the axiom, paired with a flag telling whether the
    /// specifier is attached to a role.
    pub fn specifiers(&self) -> Vec<(&Specifier, bool)> {
        let mut out = Vec::new();
        match self {
            Axiom::ConceptAssertion { spec, .. } => out.push((spec, false)),
            Axiom::RoleAssertion { spec, .. } => out.push((spec, true)),
            Axiom::ConceptInclusion { prefix, lhs, rhs } => {
                for (_, s) in prefix {
                    out.push((s, false));
                }
                for b in lhs {
                    match b {
                        BasicConcept::Atom { spec, .. } => out.push((spec, false)),
                        BasicConcept::Exists(r) => out.push((&r.spec, true)),
                    }
                }
                match rhs {
                    ConceptRhs::Basic(BasicConcept::Atom { spec, .. }) => out.push((spec, false)),
                    ConceptRhs::Basic(BasicConcept::Exists(r)) => out.push((&r.spec, true)),
                    ConceptRhs::Bottom => {}
                }
            }
            Axiom::RoleInclusion { prefix, lhs, rhs } => {
                for (_, s) in prefix {
                    out.push((s, false));
                }
                out.push((&lhs.spec, true));
                match rhs {
                    RoleRhs::Positive(r) | RoleRhs::Negative(r) => out.push((&r.spec, true)),
                }
            }
        }
        out
    }
}

/// Source position (1-based line and column).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A parsed ontology: axioms in input order plus their source positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ontology {
    pub axioms: Vec<Axiom>,
    pub positions: Vec<Pos>,
}

impl Ontology {
    pub fn new(axioms: Vec<Axiom>) -> Self {
        let positions = axioms.iter().map(|_| Pos::default()).collect();
        Ontology { axioms, positions }
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// True iff any temporal attribute occurs anywhere in the ontology.
    pub fn temporal(&self) -> bool {
        self.axioms.iter().any(|ax| {
            ax.specifiers().iter().any(|(s, _)| match s {
                Specifier::Var(_) => false,
                Specifier::Set { pairs, .. } => pairs.iter().any(|(a, v)| {
                    temporal_attr(a).is_some()
                        || matches!(v, AttrValue::Time(_) | AttrValue::Interval(_, _))
                }),
            })
        })
    }

    /// True iff some right side of a role inclusion is negated.
    pub fn has_negative_role_inclusion(&self) -> bool {
        self.axioms.iter().any(|ax| {
            matches!(
                ax,
                Axiom::RoleInclusion {
                    rhs: RoleRhs::Negative(_),
                    ..
                }
            )
        })
    }
}
