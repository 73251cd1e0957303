//! Grounding and translation to plain Horn DL-Lite: annotation-domain
//! extraction, compatible-assignment enumeration, Z-instances, and the
//! renaming of annotated names `E@S` to fresh plain names `E_S` together
//! with the specifier-implication bridge axioms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::semantics::{eval_specifier, Assignment, FiniteInterpretation};
use crate::syntax::{
    ground_specifier_implies, valtype, AnnoValue, AttrValue, Axiom, BasicConcept, ConceptRhs,
    GroundSpecifier, Ident, Nat, Ontology, Role, RoleRhs, Specifier, ValType,
};

/// Elements of the annotation domain occurring in an ontology, plus the
/// attribute-value pairs occurring syntactically (used by pair-restricted
/// grounding).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnnotationDomain {
    pub names: BTreeSet<Ident>,
    pub times: BTreeSet<Nat>,
    pub intervals: BTreeSet<(Nat, Nat)>,
    pub pairs: BTreeSet<(Ident, AnnoValue)>,
}

impl AnnotationDomain {
    pub fn is_empty(&self) -> bool {
        self.names.is_empty() && self.times.is_empty() && self.intervals.is_empty()
    }

    /// Smallest and largest numbers occurring (0 if none occurs).
    pub fn bounds(&self) -> (Nat, Nat) {
        let mut nums: BTreeSet<&Nat> = self.times.iter().collect();
        for (a, b) in &self.intervals {
            nums.insert(a);
            nums.insert(b);
        }
        match (nums.iter().next(), nums.iter().next_back()) {
            (Some(lo), Some(hi)) => ((*lo).clone(), (*hi).clone()),
            _ => (Nat::from(0u32), Nat::from(0u32)),
        }
    }
}

/// Collects the annotation names (and, in temporal ontologies, time points
/// and intervals) occurring anywhere in `o`.
pub fn annotation_domain(o: &Ontology) -> AnnotationDomain {
    let mut dom = AnnotationDomain::default();
    for ax in &o.axioms {
        for (s, _) in ax.specifiers() {
            let Specifier::Set { pairs, .. } = s else {
                continue;
            };
            for (a, v) in pairs {
                dom.names.insert(a.clone());
                match v {
                    AttrValue::Name(n) => {
                        dom.names.insert(n.clone());
                        dom.pairs.insert((a.clone(), AnnoValue::Name(n.clone())));
                    }
                    AttrValue::Time(t) => {
                        dom.times.insert(t.clone());
                        dom.pairs.insert((a.clone(), AnnoValue::Time(t.clone())));
                    }
                    AttrValue::Interval(u, w) => {
                        dom.intervals.insert((u.clone(), w.clone()));
                        dom.pairs
                            .insert((a.clone(), AnnoValue::Interval(u.clone(), w.clone())));
                    }
                    AttrValue::Proj(_, b) => {
                        dom.names.insert(b.clone());
                    }
                    AttrValue::Var(_) => {}
                }
            }
        }
    }
    dom
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroundingMode {
    Exhaustive,
    PairRestricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroundingConfig {
    pub mode: GroundingMode,
    /// Bound on the annotation-element count; set variables range over at
    /// most `cap * cap` candidate pairs.
    pub cap: usize,
}

impl Default for GroundingConfig {
    fn default() -> Self {
        GroundingConfig {
            mode: GroundingMode::PairRestricted,
            cap: crate::semantics::DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroundingError {
    CapExceeded { pairs: usize, cap: usize },
    NonGroundAssertion { axiom: usize },
    UnboundVariable(Ident),
}

impl fmt::Display for GroundingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundingError::CapExceeded { pairs, cap } => write!(
                f,
                "assignment enumeration over {pairs} candidate pairs exceeds the cap of {cap}"
            ),
            GroundingError::NonGroundAssertion { axiom } => {
                write!(f, "axiom {axiom}: assertion specifier is not ground")
            }
            GroundingError::UnboundVariable(x) => write!(f, "unbound variable {x}"),
        }
    }
}

// --- Ground axioms ---------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroundRole {
    pub name: Ident,
    pub inverse: bool,
    pub spec: GroundSpecifier,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroundBasic {
    Atom { name: Ident, spec: GroundSpecifier },
    Exists(GroundRole),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroundConceptRhs {
    Basic(GroundBasic),
    Bottom,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroundRoleRhs {
    Positive(GroundRole),
    Negative(GroundRole),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroundAxiom {
    ConceptAssertion {
        concept: Ident,
        individual: Ident,
        spec: GroundSpecifier,
    },
    RoleAssertion {
        role: Ident,
        subject: Ident,
        object: Ident,
        spec: GroundSpecifier,
    },
    ConceptInclusion {
        lhs: Vec<GroundBasic>,
        rhs: GroundConceptRhs,
    },
    RoleInclusion {
        lhs: GroundRole,
        rhs: GroundRoleRhs,
    },
}

/// A variable-free ontology.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundOntology {
    pub axioms: Vec<GroundAxiom>,
}

impl GroundRole {
    pub fn to_role(&self) -> Role {
        Role {
            name: self.name.clone(),
            inverse: self.inverse,
            spec: self.spec.to_specifier(),
        }
    }
}

impl GroundAxiom {
    pub fn to_axiom(&self) -> Axiom {
        match self {
            GroundAxiom::ConceptAssertion {
                concept,
                individual,
                spec,
            } => Axiom::ConceptAssertion {
                concept: concept.clone(),
                individual: individual.clone(),
                spec: spec.to_specifier(),
            },
            GroundAxiom::RoleAssertion {
                role,
                subject,
                object,
                spec,
            } => Axiom::RoleAssertion {
                role: role.clone(),
                subject: subject.clone(),
                object: object.clone(),
                spec: spec.to_specifier(),
            },
            GroundAxiom::ConceptInclusion { lhs, rhs } => Axiom::ConceptInclusion {
                prefix: Vec::new(),
                lhs: lhs.iter().map(ground_basic_to_basic).collect(),
                rhs: match rhs {
                    GroundConceptRhs::Bottom => ConceptRhs::Bottom,
                    GroundConceptRhs::Basic(b) => ConceptRhs::Basic(ground_basic_to_basic(b)),
                },
            },
            GroundAxiom::RoleInclusion { lhs, rhs } => Axiom::RoleInclusion {
                prefix: Vec::new(),
                lhs: lhs.to_role(),
                rhs: match rhs {
                    GroundRoleRhs::Positive(r) => RoleRhs::Positive(r.to_role()),
                    GroundRoleRhs::Negative(r) => RoleRhs::Negative(r.to_role()),
                },
            },
        }
    }
}

fn ground_basic_to_basic(b: &GroundBasic) -> BasicConcept {
    match b {
        GroundBasic::Atom { name, spec } => BasicConcept::Atom {
            name: name.clone(),
            spec: spec.to_specifier(),
        },
        GroundBasic::Exists(r) => BasicConcept::Exists(r.to_role()),
    }
}

impl GroundOntology {
    pub fn to_ontology(&self) -> Ontology {
        Ontology::new(self.axioms.iter().map(GroundAxiom::to_axiom).collect())
    }

    /// All `(kind, name, specifier)` triples occurring in the ontology.
    pub fn occurring(&self) -> BTreeSet<(NameKind, Ident, GroundSpecifier)> {
        let mut out = BTreeSet::new();
        fn add_basic(b: &GroundBasic, out: &mut BTreeSet<(NameKind, Ident, GroundSpecifier)>) {
            match b {
                GroundBasic::Atom { name, spec } => {
                    out.insert((NameKind::Concept, name.clone(), spec.clone()));
                }
                GroundBasic::Exists(r) => {
                    out.insert((NameKind::Role, r.name.clone(), r.spec.clone()));
                }
            }
        }
        for ax in &self.axioms {
            match ax {
                GroundAxiom::ConceptAssertion { concept, spec, .. } => {
                    out.insert((NameKind::Concept, concept.clone(), spec.clone()));
                }
                GroundAxiom::RoleAssertion { role, spec, .. } => {
                    out.insert((NameKind::Role, role.clone(), spec.clone()));
                }
                GroundAxiom::ConceptInclusion { lhs, rhs } => {
                    for b in lhs {
                        add_basic(b, &mut out);
                    }
                    if let GroundConceptRhs::Basic(b) = rhs {
                        add_basic(b, &mut out);
                    }
                }
                GroundAxiom::RoleInclusion { lhs, rhs } => {
                    out.insert((NameKind::Role, lhs.name.clone(), lhs.spec.clone()));
                    let r = match rhs {
                        GroundRoleRhs::Positive(r) | GroundRoleRhs::Negative(r) => r,
                    };
                    out.insert((NameKind::Role, r.name.clone(), r.spec.clone()));
                }
            }
        }
        out
    }
}

// --- Assignment enumeration -------------------------------------------------

/// The universe of candidate attribute-value pairs for set variables.
fn pair_universe(dom: &AnnotationDomain, mode: GroundingMode) -> Vec<(AnnoValue, AnnoValue)> {
    match mode {
        GroundingMode::PairRestricted => dom
            .pairs
            .iter()
            .map(|(a, v)| (AnnoValue::Name(a.clone()), v.clone()))
            .collect(),
        GroundingMode::Exhaustive => {
            let mut out = Vec::new();
            for a in &dom.names {
                match valtype(a) {
                    ValType::Abstract => {
                        for n in &dom.names {
                            out.push((AnnoValue::Name(a.clone()), AnnoValue::Name(n.clone())));
                        }
                    }
                    ValType::TimePoint => {
                        for t in &dom.times {
                            out.push((AnnoValue::Name(a.clone()), AnnoValue::Time(t.clone())));
                        }
                    }
                    ValType::Interval => {
                        for iv in &dom.intervals {
                            out.push((
                                AnnoValue::Name(a.clone()),
                                AnnoValue::Interval(iv.0.clone(), iv.1.clone()),
                            ));
                        }
                    }
                }
            }
            out
        }
    }
}

/// Syntactic self-interpretation over the annotation domain, used only for
/// evaluating prefix constraints during enumeration.
fn syntactic_interpretation(dom: &AnnotationDomain) -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new();
    for n in &dom.names {
        i.annotations.insert(AnnoValue::Name(n.clone()));
    }
    for t in &dom.times {
        i.annotations.insert(AnnoValue::Time(t.clone()));
    }
    for (u, w) in &dom.intervals {
        i.annotations
            .insert(AnnoValue::Interval(u.clone(), w.clone()));
    }
    i
}

/// Sorts of the object variables of an axiom, inferred from the value types
/// of the attributes they are paired with.
fn object_var_sorts(ax: &Axiom) -> BTreeMap<Ident, ValType> {
    let mut sorts = BTreeMap::new();
    let mut scan = |s: &Specifier| {
        if let Specifier::Set { pairs, .. } = s {
            for (a, v) in pairs {
                if let AttrValue::Var(x) = v {
                    sorts.entry(x.clone()).or_insert_with(|| valtype(a));
                }
            }
        }
    };
    if let Axiom::ConceptInclusion { prefix, .. } | Axiom::RoleInclusion { prefix, .. } = ax {
        for (_, s) in prefix {
            scan(s);
        }
    }
    for (s, _) in ax.specifiers() {
        scan(s);
    }
    sorts
}

/// Set variables of an axiom, split into all of them and those that occur
/// in a role position (whose assignments must stay free of temporal pairs).
fn set_vars_of(ax: &Axiom) -> (BTreeSet<Ident>, BTreeSet<Ident>) {
    let mut all = BTreeSet::new();
    let mut role_attached = BTreeSet::new();
    for (s, role_pos) in ax.specifiers() {
        match s {
            Specifier::Var(x) => {
                all.insert(x.clone());
                if role_pos {
                    role_attached.insert(x.clone());
                }
            }
            Specifier::Set { pairs, .. } => {
                for (_, v) in pairs {
                    if let AttrValue::Proj(x, _) = v {
                        all.insert(x.clone());
                    }
                }
            }
        }
    }
    if let Axiom::ConceptInclusion { prefix, .. } | Axiom::RoleInclusion { prefix, .. } = ax {
        for (x, s) in prefix {
            all.insert(x.clone());
            if let Specifier::Set { pairs, .. } = s {
                for (_, v) in pairs {
                    if let AttrValue::Proj(y, _) = v {
                        all.insert(y.clone());
                    }
                }
            }
        }
    }
    (all, role_attached)
}

fn is_temporal_pair(p: &(AnnoValue, AnnoValue)) -> bool {
    match &p.0 {
        AnnoValue::Name(a) => crate::syntax::temporal_attr(a).is_some(),
        _ => false,
    }
}

fn subsets(pairs: &[(AnnoValue, AnnoValue)]) -> Vec<BTreeSet<(AnnoValue, AnnoValue)>> {
    let n = pairs.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let mut s = BTreeSet::new();
        for (k, p) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                s.insert(p.clone());
            }
        }
        out.push(s);
    }
    out
}

/// Enumerates all assignments compatible with an inclusion over the given
/// annotation domain. Assertions yield the single empty assignment.
pub fn enumerate_assignments(
    ax: &Axiom,
    dom: &AnnotationDomain,
    config: GroundingConfig,
) -> Result<Vec<Assignment>, GroundingError> {
    let (set_vars, atemporal_vars) = set_vars_of(ax);
    let obj_sorts = object_var_sorts(ax);
    if set_vars.is_empty() && obj_sorts.is_empty() {
        return Ok(alloc::vec![Assignment::default()]);
    }

    let universe = pair_universe(dom, config.mode);
    // Hard limit independent of the configured cap: subset enumeration is
    // 2^pairs.
    let budget = (config.cap * config.cap).min(20);
    if !set_vars.is_empty() && universe.len() > budget {
        return Err(GroundingError::CapExceeded {
            pairs: universe.len(),
            cap: config.cap,
        });
    }
    let atemporal_universe: Vec<(AnnoValue, AnnoValue)> = universe
        .iter()
        .filter(|p| !is_temporal_pair(p))
        .cloned()
        .collect();

    let j = syntactic_interpretation(dom);
    let prefix: &[(Ident, Specifier)] = match ax {
        Axiom::ConceptInclusion { prefix, .. } | Axiom::RoleInclusion { prefix, .. } => prefix,
        _ => &[],
    };

    let full_rels = subsets(&universe);
    let atemporal_rels = if atemporal_vars.is_empty() {
        Vec::new()
    } else {
        subsets(&atemporal_universe)
    };

    let elements = |sort: ValType| -> Vec<AnnoValue> {
        match sort {
            ValType::Abstract => dom
                .names
                .iter()
                .map(|n| AnnoValue::Name(n.clone()))
                .collect(),
            ValType::TimePoint => dom
                .times
                .iter()
                .map(|t| AnnoValue::Time(t.clone()))
                .collect(),
            ValType::Interval => dom
                .intervals
                .iter()
                .map(|(u, w)| AnnoValue::Interval(u.clone(), w.clone()))
                .collect(),
        }
    };

    struct Ctx<'a> {
        atemporal_vars: &'a BTreeSet<Ident>,
        full_rels: &'a [BTreeSet<(AnnoValue, AnnoValue)>],
        atemporal_rels: &'a [BTreeSet<(AnnoValue, AnnoValue)>],
        elements: &'a dyn Fn(ValType) -> Vec<AnnoValue>,
        prefix: &'a [(Ident, Specifier)],
        j: &'a FiniteInterpretation,
    }

    fn rec(
        ctx: &Ctx<'_>,
        set_vars: &[Ident],
        obj_vars: &[(Ident, ValType)],
        z: &mut Assignment,
        out: &mut Vec<Assignment>,
    ) -> Result<(), GroundingError> {
        if let Some((x, rest)) = set_vars.split_first() {
            let rels = if ctx.atemporal_vars.contains(x) {
                ctx.atemporal_rels
            } else {
                ctx.full_rels
            };
            for rel in rels {
                z.set_vars.insert(x.clone(), rel.clone());
                rec(ctx, rest, obj_vars, z, out)?;
            }
            z.set_vars.remove(x);
            return Ok(());
        }
        if let Some(((x, sort), rest)) = obj_vars.split_first() {
            for e in (ctx.elements)(*sort) {
                z.obj_vars.insert(x.clone(), e);
                rec(ctx, &[], rest, z, out)?;
            }
            z.obj_vars.remove(x);
            return Ok(());
        }
        for (x, s) in ctx.prefix {
            let ss = eval_specifier(s, ctx.j, z)
                .map_err(|_| GroundingError::UnboundVariable(x.clone()))?;
            let bound = z
                .set_vars
                .get(x)
                .ok_or_else(|| GroundingError::UnboundVariable(x.clone()))?;
            if !ss.contains(bound) {
                return Ok(());
            }
        }
        out.push(z.clone());
        Ok(())
    }

    let ctx = Ctx {
        atemporal_vars: &atemporal_vars,
        full_rels: &full_rels,
        atemporal_rels: &atemporal_rels,
        elements: &elements,
        prefix,
        j: &j,
    };
    let set_vars: Vec<Ident> = set_vars.into_iter().collect();
    let obj_vars: Vec<(Ident, ValType)> = obj_sorts.into_iter().collect();
    let mut out = Vec::new();
    let mut z = Assignment::default();
    rec(&ctx, &set_vars, &obj_vars, &mut z, &mut out)?;
    Ok(out)
}

// --- Z-instances -------------------------------------------------------------

fn ground_value(v: &AttrValue, z: &Assignment) -> Result<AnnoValue, GroundingError> {
    Ok(match v {
        AttrValue::Name(n) => AnnoValue::Name(n.clone()),
        AttrValue::Time(t) => AnnoValue::Time(t.clone()),
        AttrValue::Interval(u, w) => AnnoValue::Interval(u.clone(), w.clone()),
        AttrValue::Var(x) => z
            .obj_vars
            .get(x)
            .cloned()
            .ok_or_else(|| GroundingError::UnboundVariable(x.clone()))?,
        AttrValue::Proj(_, _) => unreachable!("projections are expanded by ground_specifier"),
    })
}

/// Instantiates a specifier under `z`: set variables become closed
/// specifiers, projections `a:X.b` expand to all `a:c` with `(b,c) ∈ Z(X)`.
fn ground_specifier(s: &Specifier, z: &Assignment) -> Result<GroundSpecifier, GroundingError> {
    match s {
        Specifier::Var(x) => {
            let rel = z
                .set_vars
                .get(x)
                .ok_or_else(|| GroundingError::UnboundVariable(x.clone()))?;
            let mut pairs = BTreeSet::new();
            for (a, v) in rel {
                let AnnoValue::Name(attr) = a else {
                    // Pair universes only put attribute names first.
                    continue;
                };
                pairs.insert((attr.clone(), v.clone()));
            }
            Ok(GroundSpecifier { open: false, pairs })
        }
        Specifier::Set { open, pairs } => {
            let mut out = BTreeSet::new();
            for (a, v) in pairs {
                if let AttrValue::Proj(x, b) = v {
                    let rel = z
                        .set_vars
                        .get(x)
                        .ok_or_else(|| GroundingError::UnboundVariable(x.clone()))?;
                    for (first, second) in rel {
                        if *first == AnnoValue::Name(b.clone()) {
                            out.insert((a.clone(), second.clone()));
                        }
                    }
                } else {
                    out.insert((a.clone(), ground_value(v, z)?));
                }
            }
            Ok(GroundSpecifier {
                open: *open,
                pairs: out,
            })
        }
    }
}

fn ground_role(r: &Role, z: &Assignment) -> Result<GroundRole, GroundingError> {
    Ok(GroundRole {
        name: r.name.clone(),
        inverse: r.inverse,
        spec: ground_specifier(&r.spec, z)?,
    })
}

fn ground_basic(b: &BasicConcept, z: &Assignment) -> Result<GroundBasic, GroundingError> {
    Ok(match b {
        BasicConcept::Atom { name, spec } => GroundBasic::Atom {
            name: name.clone(),
            spec: ground_specifier(spec, z)?,
        },
        BasicConcept::Exists(r) => GroundBasic::Exists(ground_role(r, z)?),
    })
}

/// The Z-instance of an axiom.
pub fn instantiate(ax: &Axiom, z: &Assignment) -> Result<GroundAxiom, GroundingError> {
    Ok(match ax {
        Axiom::ConceptAssertion {
            concept,
            individual,
            spec,
        } => GroundAxiom::ConceptAssertion {
            concept: concept.clone(),
            individual: individual.clone(),
            spec: ground_specifier(spec, z)?,
        },
        Axiom::RoleAssertion {
            role,
            subject,
            object,
            spec,
        } => GroundAxiom::RoleAssertion {
            role: role.clone(),
            subject: subject.clone(),
            object: object.clone(),
            spec: ground_specifier(spec, z)?,
        },
        Axiom::ConceptInclusion { lhs, rhs, .. } => GroundAxiom::ConceptInclusion {
            lhs: lhs
                .iter()
                .map(|b| ground_basic(b, z))
                .collect::<Result<_, _>>()?,
            rhs: match rhs {
                ConceptRhs::Bottom => GroundConceptRhs::Bottom,
                ConceptRhs::Basic(b) => GroundConceptRhs::Basic(ground_basic(b, z)?),
            },
        },
        Axiom::RoleInclusion { lhs, rhs, .. } => GroundAxiom::RoleInclusion {
            lhs: ground_role(lhs, z)?,
            rhs: match rhs {
                RoleRhs::Positive(r) => GroundRoleRhs::Positive(ground_role(r, z)?),
                RoleRhs::Negative(r) => GroundRoleRhs::Negative(ground_role(r, z)?),
            },
        },
    })
}

/// Grounds an ontology over an explicit annotation domain: all assertions
/// plus all Z-instances of inclusions for compatible assignments. Output
/// order is canonical (axiom order, then assignment order, deduplicated).
pub fn ground_ontology_over(
    o: &Ontology,
    dom: &AnnotationDomain,
    config: GroundingConfig,
) -> Result<GroundOntology, GroundingError> {
    let mut axioms = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, ax) in o.axioms.iter().enumerate() {
        if ax.is_assertion() {
            let g = instantiate(ax, &Assignment::default())
                .map_err(|_| GroundingError::NonGroundAssertion { axiom: idx })?;
            if seen.insert(g.clone()) {
                axioms.push(g);
            }
            continue;
        }
        for z in enumerate_assignments(ax, dom, config)? {
            let g = instantiate(ax, &z)?;
            if seen.insert(g.clone()) {
                axioms.push(g);
            }
        }
    }
    Ok(GroundOntology { axioms })
}

/// Grounds an ontology over its own annotation domain.
pub fn ground_ontology(
    o: &Ontology,
    config: GroundingConfig,
) -> Result<GroundOntology, GroundingError> {
    ground_ontology_over(o, &annotation_domain(o), config)
}

// --- Plain Horn DL-Lite --------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NameKind {
    Concept,
    Role,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlainRole {
    pub name: Ident,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlainBasic {
    Atom(Ident),
    Exists(PlainRole),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlainConceptRhs {
    Basic(PlainBasic),
    Bottom,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlainRoleRhs {
    Positive(PlainRole),
    Negative(PlainRole),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlainAxiom {
    ConceptAssertion {
        concept: Ident,
        individual: Ident,
    },
    RoleAssertion {
        role: Ident,
        subject: Ident,
        object: Ident,
    },
    ConceptInclusion {
        lhs: Vec<PlainBasic>,
        rhs: PlainConceptRhs,
    },
    RoleInclusion {
        lhs: PlainRole,
        rhs: PlainRoleRhs,
    },
}

/// A plain Horn DL-Lite ontology over fresh `E_S` names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlainOntology {
    pub axioms: Vec<PlainAxiom>,
}

impl PlainOntology {
    pub fn has_negative_role_inclusion(&self) -> bool {
        self.axioms.iter().any(|ax| {
            matches!(
                ax,
                PlainAxiom::RoleInclusion {
                    rhs: PlainRoleRhs::Negative(_),
                    ..
                }
            )
        })
    }

    /// Re-expresses the plain ontology in attributed syntax (assertions get
    /// the closed empty specifier, expressions the open empty one).
    pub fn to_ontology(&self) -> Ontology {
        let basic = |b: &PlainBasic| match b {
            PlainBasic::Atom(n) => BasicConcept::Atom {
                name: n.clone(),
                spec: Specifier::any(),
            },
            PlainBasic::Exists(r) => BasicConcept::Exists(Role {
                name: r.name.clone(),
                inverse: r.inverse,
                spec: Specifier::any(),
            }),
        };
        let role = |r: &PlainRole| Role {
            name: r.name.clone(),
            inverse: r.inverse,
            spec: Specifier::any(),
        };
        Ontology::new(
            self.axioms
                .iter()
                .map(|ax| match ax {
                    PlainAxiom::ConceptAssertion {
                        concept,
                        individual,
                    } => Axiom::ConceptAssertion {
                        concept: concept.clone(),
                        individual: individual.clone(),
                        spec: Specifier::empty(),
                    },
                    PlainAxiom::RoleAssertion {
                        role: r,
                        subject,
                        object,
                    } => Axiom::RoleAssertion {
                        role: r.clone(),
                        subject: subject.clone(),
                        object: object.clone(),
                        spec: Specifier::empty(),
                    },
                    PlainAxiom::ConceptInclusion { lhs, rhs } => Axiom::ConceptInclusion {
                        prefix: Vec::new(),
                        lhs: lhs.iter().map(basic).collect(),
                        rhs: match rhs {
                            PlainConceptRhs::Bottom => ConceptRhs::Bottom,
                            PlainConceptRhs::Basic(b) => ConceptRhs::Basic(basic(b)),
                        },
                    },
                    PlainAxiom::RoleInclusion { lhs, rhs } => Axiom::RoleInclusion {
                        prefix: Vec::new(),
                        lhs: role(lhs),
                        rhs: match rhs {
                            PlainRoleRhs::Positive(r) => RoleRhs::Positive(role(r)),
                            PlainRoleRhs::Negative(r) => RoleRhs::Negative(role(r)),
                        },
                    },
                })
                .collect(),
        )
    }
}

/// Bidirectional table of fresh plain names for `(kind, name, specifier)`
/// triples. Fresh names are stable hashes of the canonical specifier form,
/// so reruns produce identical names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameTable {
    pub forward: BTreeMap<(NameKind, Ident, GroundSpecifier), Ident>,
    pub reverse: BTreeMap<Ident, (NameKind, Ident, GroundSpecifier)>,
}

fn canonical_spec_string(spec: &GroundSpecifier) -> String {
    let mut s = String::from(if spec.open { "open" } else { "closed" });
    for (a, v) in &spec.pairs {
        s.push_str(&format!("|{a}:{v}"));
    }
    s
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for b in bytes {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

impl NameTable {
    pub fn lookup(&self, kind: NameKind, name: &Ident, spec: &GroundSpecifier) -> Option<&Ident> {
        self.forward.get(&(kind, name.clone(), spec.clone()))
    }

    pub fn resolve(&self, plain: &Ident) -> Option<&(NameKind, Ident, GroundSpecifier)> {
        self.reverse.get(plain)
    }

    pub fn fresh(&mut self, kind: NameKind, name: &Ident, spec: &GroundSpecifier) -> Ident {
        if let Some(existing) = self.lookup(kind, name, spec) {
            return existing.clone();
        }
        let key = format!(
            "{}|{name}|{}",
            match kind {
                NameKind::Concept => "C",
                NameKind::Role => "R",
            },
            canonical_spec_string(spec)
        );
        let hash = fnv1a(key.as_bytes());
        let mut candidate = Ident(format!("{name}_{:08x}", hash & 0xffff_ffff));
        if self.reverse.contains_key(&candidate) {
            candidate = Ident(format!("{name}_{hash:016x}"));
        }
        let mut salt = 0usize;
        while self.reverse.contains_key(&candidate) {
            candidate = Ident(format!("{name}_{hash:016x}_{salt}"));
            salt += 1;
        }
        self.forward
            .insert((kind, name.clone(), spec.clone()), candidate.clone());
        self.reverse
            .insert(candidate.clone(), (kind, name.clone(), spec.clone()));
        candidate
    }
}

/// Translates a ground ontology into plain Horn DL-Lite: every annotated
/// name `E@S` becomes a fresh name `E_S`, and for every pair of occurring
/// specifiers of the same name with `S => T` a bridge axiom `E_S sub E_T`
/// is added.
pub fn dllite_translate(g: &GroundOntology) -> (PlainOntology, NameTable) {
    let mut table = NameTable::default();
    // Registration in canonical order keeps fresh names stable under axiom
    // reordering.
    let occurring = g.occurring();
    for (kind, name, spec) in &occurring {
        table.fresh(*kind, name, spec);
    }

    let plain_role = |table: &NameTable, r: &GroundRole| PlainRole {
        name: table
            .lookup(NameKind::Role, &r.name, &r.spec)
            .expect("role name registered")
            .clone(),
        inverse: r.inverse,
    };
    let plain_basic = |table: &NameTable, b: &GroundBasic| match b {
        GroundBasic::Atom { name, spec } => PlainBasic::Atom(
            table
                .lookup(NameKind::Concept, name, spec)
                .expect("concept name registered")
                .clone(),
        ),
        GroundBasic::Exists(r) => PlainBasic::Exists(plain_role(table, r)),
    };

    let mut axioms = Vec::new();
    for ax in &g.axioms {
        axioms.push(match ax {
            GroundAxiom::ConceptAssertion {
                concept,
                individual,
                spec,
            } => PlainAxiom::ConceptAssertion {
                concept: table
                    .lookup(NameKind::Concept, concept, spec)
                    .expect("registered")
                    .clone(),
                individual: individual.clone(),
            },
            GroundAxiom::RoleAssertion {
                role,
                subject,
                object,
                spec,
            } => PlainAxiom::RoleAssertion {
                role: table
                    .lookup(NameKind::Role, role, spec)
                    .expect("registered")
                    .clone(),
                subject: subject.clone(),
                object: object.clone(),
            },
            GroundAxiom::ConceptInclusion { lhs, rhs } => PlainAxiom::ConceptInclusion {
                lhs: lhs.iter().map(|b| plain_basic(&table, b)).collect(),
                rhs: match rhs {
                    GroundConceptRhs::Bottom => PlainConceptRhs::Bottom,
                    GroundConceptRhs::Basic(b) => PlainConceptRhs::Basic(plain_basic(&table, b)),
                },
            },
            GroundAxiom::RoleInclusion { lhs, rhs } => PlainAxiom::RoleInclusion {
                lhs: plain_role(&table, lhs),
                rhs: match rhs {
                    GroundRoleRhs::Positive(r) => PlainRoleRhs::Positive(plain_role(&table, r)),
                    GroundRoleRhs::Negative(r) => PlainRoleRhs::Negative(plain_role(&table, r)),
                },
            },
        });
    }

    // Bridges E_S sub E_T for S => T among occurring specifiers, per name.
    let mut per_name: BTreeMap<(NameKind, Ident), Vec<&GroundSpecifier>> = BTreeMap::new();
    for (kind, name, spec) in &occurring {
        per_name
            .entry((*kind, name.clone()))
            .or_default()
            .push(spec);
    }
    let mut seen: BTreeSet<PlainAxiom> = axioms.iter().cloned().collect();
    for ((kind, name), specs) in &per_name {
        for s in specs {
            for t in specs {
                if s == t || !ground_specifier_implies(s, t) {
                    continue;
                }
                let bridge = match kind {
                    NameKind::Concept => PlainAxiom::ConceptInclusion {
                        lhs: alloc::vec![PlainBasic::Atom(
                            table.lookup(*kind, name, s).expect("registered").clone()
                        )],
                        rhs: PlainConceptRhs::Basic(PlainBasic::Atom(
                            table.lookup(*kind, name, t).expect("registered").clone(),
                        )),
                    },
                    NameKind::Role => PlainAxiom::RoleInclusion {
                        lhs: PlainRole {
                            name: table.lookup(*kind, name, s).expect("registered").clone(),
                            inverse: false,
                        },
                        rhs: PlainRoleRhs::Positive(PlainRole {
                            name: table.lookup(*kind, name, t).expect("registered").clone(),
                            inverse: false,
                        }),
                    },
                };
                if seen.insert(bridge.clone()) {
                    axioms.push(bridge);
                }
            }
        }
    }

    (PlainOntology { axioms }, table)
}

/// Structural quasi-chainedness: rewritten as a rule, every body atom shares
/// at most one variable with the union of the preceding body atoms.
pub fn is_quasi_chained(p: &PlainOntology) -> bool {
    for ax in &p.axioms {
        let bodies: Vec<Vec<usize>> = match ax {
            PlainAxiom::ConceptInclusion { lhs, .. } => {
                // Variable 0 is the shared element; each existential atom
                // brings a fresh variable.
                let mut next = 1;
                lhs.iter()
                    .map(|b| match b {
                        PlainBasic::Atom(_) => alloc::vec![0],
                        PlainBasic::Exists(_) => {
                            let v = next;
                            next += 1;
                            alloc::vec![0, v]
                        }
                    })
                    .collect()
            }
            PlainAxiom::RoleInclusion { rhs, .. } => match rhs {
                PlainRoleRhs::Positive(_) => alloc::vec![alloc::vec![0, 1]],
                PlainRoleRhs::Negative(_) => {
                    alloc::vec![alloc::vec![0, 1], alloc::vec![0, 1]]
                }
            },
            _ => continue,
        };
        let mut prior: BTreeSet<usize> = BTreeSet::new();
        for body in bodies {
            let shared = body.iter().filter(|v| prior.contains(v)).count();
            if shared > 1 {
                return false;
            }
            prior.extend(body);
        }
    }
    true
}
