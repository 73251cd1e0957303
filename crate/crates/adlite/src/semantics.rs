//! Standard (non-geometric) semantics over finite interpretations: specifier
//! and expression evaluation, assignment enumeration, and model checking.
//!
//! Everything here reads specifiers opaquely, i.e. temporal attribute-value
//! pairs are ordinary annotation pairs. The dedicated temporal semantics
//! (global interpretations over a sequence of time points) lives in the
//! `temporal` module.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{
    AnnoValue, AttrValue, Axiom, BasicConcept, ConceptRhs, Ident, Ontology, Role, RoleRhs,
    Specifier,
};

/// A finite binary relation over the annotation domain.
pub type AnnotationSet = BTreeSet<(AnnoValue, AnnoValue)>;

/// Default cap on `|Δ_a|` for exhaustive set-variable enumeration.
pub const DEFAULT_CAP: usize = 4;

/// A finite interpretation. Names without an explicit denotation denote
/// themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteInterpretation {
    pub individuals: BTreeSet<Ident>,
    pub annotations: BTreeSet<AnnoValue>,
    pub ind_names: BTreeMap<Ident, Ident>,
    pub anno_names: BTreeMap<Ident, AnnoValue>,
    pub concepts: BTreeMap<Ident, BTreeSet<(Ident, AnnotationSet)>>,
    pub roles: BTreeMap<Ident, BTreeSet<(Ident, Ident, AnnotationSet)>>,
}

impl FiniteInterpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn denote_ind(&self, name: &Ident) -> Ident {
        self.ind_names
            .get(name)
            .cloned()
            .unwrap_or_else(|| name.clone())
    }

    pub fn denote_anno(&self, name: &Ident) -> AnnoValue {
        self.anno_names
            .get(name)
            .cloned()
            .unwrap_or_else(|| AnnoValue::Name(name.clone()))
    }

    pub fn add_concept_fact(&mut self, concept: &str, ind: &str, f: AnnotationSet) {
        self.individuals.insert(Ident::new(ind));
        self.concepts
            .entry(Ident::new(concept))
            .or_default()
            .insert((Ident::new(ind), f));
    }

    pub fn add_role_fact(&mut self, role: &str, subj: &str, obj: &str, f: AnnotationSet) {
        self.individuals.insert(Ident::new(subj));
        self.individuals.insert(Ident::new(obj));
        self.roles
            .entry(Ident::new(role))
            .or_default()
            .insert((Ident::new(subj), Ident::new(obj), f));
    }

    fn concept_ext(&self, name: &Ident) -> impl Iterator<Item = &(Ident, AnnotationSet)> {
        self.concepts.get(name).into_iter().flatten()
    }

    fn role_ext(&self, name: &Ident) -> impl Iterator<Item = &(Ident, Ident, AnnotationSet)> {
        self.roles.get(name).into_iter().flatten()
    }
}

/// Variable assignment: set variables to annotation sets, object variables
/// to annotation-domain elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub set_vars: BTreeMap<Ident, AnnotationSet>,
    pub obj_vars: BTreeMap<Ident, AnnoValue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    UnboundVariable(Ident),
    CapExceeded { domain: usize, cap: usize },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable(x) => write!(f, "unbound variable {x}"),
            EvalError::CapExceeded { domain, cap } => write!(
                f,
                "annotation domain has {domain} elements, exhaustive enumeration capped at {cap}"
            ),
        }
    }
}

/// Evaluation of a specifier: a singleton for closed specifiers and set
/// variables, the upward closure of a finite core for open specifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecSet {
    Singleton(AnnotationSet),
    UpClosure(AnnotationSet),
}

impl SpecSet {
    pub fn contains(&self, f: &AnnotationSet) -> bool {
        match self {
            SpecSet::Singleton(g) => f == g,
            SpecSet::UpClosure(g) => g.is_subset(f),
        }
    }

    pub fn core(&self) -> &AnnotationSet {
        match self {
            SpecSet::Singleton(g) | SpecSet::UpClosure(g) => g,
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(self, SpecSet::UpClosure(_))
    }
}

/// Evaluates a specifier under an interpretation and assignment.
pub fn eval_specifier(
    s: &Specifier,
    i: &FiniteInterpretation,
    z: &Assignment,
) -> Result<SpecSet, EvalError> {
    match s {
        Specifier::Var(x) => z
            .set_vars
            .get(x)
            .cloned()
            .map(SpecSet::Singleton)
            .ok_or_else(|| EvalError::UnboundVariable(x.clone())),
        Specifier::Set { open, pairs } => {
            let mut core = AnnotationSet::new();
            for (a, v) in pairs {
                let attr = i.denote_anno(a);
                match v {
                    AttrValue::Name(n) => {
                        core.insert((attr, i.denote_anno(n)));
                    }
                    AttrValue::Time(t) => {
                        core.insert((attr, AnnoValue::Time(t.clone())));
                    }
                    AttrValue::Interval(u, w) => {
                        core.insert((attr, AnnoValue::Interval(u.clone(), w.clone())));
                    }
                    AttrValue::Var(x) => {
                        let val = z
                            .obj_vars
                            .get(x)
                            .cloned()
                            .ok_or_else(|| EvalError::UnboundVariable(x.clone()))?;
                        core.insert((attr, val));
                    }
                    AttrValue::Proj(x, b) => {
                        let rel = z
                            .set_vars
                            .get(x)
                            .ok_or_else(|| EvalError::UnboundVariable(x.clone()))?;
                        let b_den = i.denote_anno(b);
                        for (first, second) in rel {
                            if *first == b_den {
                                core.insert((attr.clone(), second.clone()));
                            }
                        }
                    }
                }
            }
            Ok(if *open {
                SpecSet::UpClosure(core)
            } else {
                SpecSet::Singleton(core)
            })
        }
    }
}

/// Elements of `(A@S)^{I,Z}`.
pub fn concept_atom_members(
    name: &Ident,
    spec: &Specifier,
    i: &FiniteInterpretation,
    z: &Assignment,
) -> Result<BTreeSet<Ident>, EvalError> {
    let ss = eval_specifier(spec, i, z)?;
    Ok(i
        .concept_ext(name)
        .filter(|(_, f)| ss.contains(f))
        .map(|(d, _)| d.clone())
        .collect())
}

/// Pairs of `(P)^{I,Z}` for a role expression `R@S` or `R-@S`.
pub fn role_pairs(
    role: &Role,
    i: &FiniteInterpretation,
    z: &Assignment,
) -> Result<BTreeSet<(Ident, Ident)>, EvalError> {
    let ss = eval_specifier(&role.spec, i, z)?;
    Ok(i
        .role_ext(&role.name)
        .filter(|(_, _, f)| ss.contains(f))
        .map(|(d, e, _)| {
            if role.inverse {
                (e.clone(), d.clone())
            } else {
                (d.clone(), e.clone())
            }
        })
        .collect())
}

/// Pairs of `(¬P)^{I,Z}`: complement within `Δ_i × Δ_i`.
pub fn neg_role_pairs(
    role: &Role,
    i: &FiniteInterpretation,
    z: &Assignment,
) -> Result<BTreeSet<(Ident, Ident)>, EvalError> {
    let pos = role_pairs(role, i, z)?;
    let mut out = BTreeSet::new();
    for d in &i.individuals {
        for e in &i.individuals {
            if !pos.contains(&(d.clone(), e.clone())) {
                out.insert((d.clone(), e.clone()));
            }
        }
    }
    Ok(out)
}

/// Elements of a basic concept: `A@S` or `∃P`.
pub fn basic_concept_members(
    b: &BasicConcept,
    i: &FiniteInterpretation,
    z: &Assignment,
) -> Result<BTreeSet<Ident>, EvalError> {
    match b {
        BasicConcept::Atom { name, spec } => concept_atom_members(name, spec, i, z),
        BasicConcept::Exists(r) => Ok(role_pairs(r, i, z)?.into_iter().map(|(d, _)| d).collect()),
    }
}

/// Elements of a conjunction of basic concepts.
pub fn conjunction_members(
    conj: &[BasicConcept],
    i: &FiniteInterpretation,
    z: &Assignment,
) -> Result<BTreeSet<Ident>, EvalError> {
    let mut iter = conj.iter();
    let Some(first) = iter.next() else {
        return Ok(i.individuals.clone());
    };
    let mut acc = basic_concept_members(first, i, z)?;
    for b in iter {
        let next = basic_concept_members(b, i, z)?;
        acc = acc.intersection(&next).cloned().collect();
    }
    Ok(acc)
}

/// All annotation-set candidates over the interpretation's annotation
/// domain, enumerated deterministically (by subset bitmask over the sorted
/// pair list).
fn all_annotation_sets(i: &FiniteInterpretation) -> Vec<AnnotationSet> {
    let pairs: Vec<(AnnoValue, AnnoValue)> = i
        .annotations
        .iter()
        .flat_map(|a| i.annotations.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let n = pairs.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let mut set = AnnotationSet::new();
        for (k, p) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                set.insert(p.clone());
            }
        }
        out.push(set);
    }
    out
}

/// Set and object variables occurring in an inclusion (prefix and body).
fn axiom_variables(ax: &Axiom) -> (BTreeSet<Ident>, BTreeSet<Ident>) {
    fn scan(s: &Specifier, set_vars: &mut BTreeSet<Ident>, obj_vars: &mut BTreeSet<Ident>) {
        match s {
            Specifier::Var(x) => {
                set_vars.insert(x.clone());
            }
            Specifier::Set { pairs, .. } => {
                for (_, v) in pairs {
                    match v {
                        AttrValue::Var(x) => {
                            obj_vars.insert(x.clone());
                        }
                        AttrValue::Proj(x, _) => {
                            set_vars.insert(x.clone());
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let mut set_vars = BTreeSet::new();
    let mut obj_vars = BTreeSet::new();
    if let Axiom::ConceptInclusion { prefix, .. } | Axiom::RoleInclusion { prefix, .. } = ax {
        for (x, s) in prefix {
            set_vars.insert(x.clone());
            scan(s, &mut set_vars, &mut obj_vars);
        }
    }
    for (s, _) in ax.specifiers() {
        scan(s, &mut set_vars, &mut obj_vars);
    }
    (set_vars, obj_vars)
}

/// All assignments for the variables of `ax`, restricted to those that
/// satisfy the prefix constraints `Z(X_i) ∈ S_i^{I,Z}`.
pub fn compatible_assignments(
    ax: &Axiom,
    i: &FiniteInterpretation,
    cap: usize,
) -> Result<Vec<Assignment>, EvalError> {
    let (set_vars, obj_vars) = axiom_variables(ax);
    if set_vars.is_empty() && obj_vars.is_empty() {
        return Ok(alloc::vec![Assignment::default()]);
    }
    let pair_count = i.annotations.len() * i.annotations.len();
    if i.annotations.len() > cap || (!set_vars.is_empty() && pair_count > 20) {
        return Err(EvalError::CapExceeded {
            domain: i.annotations.len(),
            cap: cap.min(4),
        });
    }
    let relations = all_annotation_sets(i);
    let elements: Vec<AnnoValue> = i.annotations.iter().cloned().collect();

    let prefix: &[(Ident, Specifier)] = match ax {
        Axiom::ConceptInclusion { prefix, .. } | Axiom::RoleInclusion { prefix, .. } => prefix,
        _ => &[],
    };

    let set_vars: Vec<Ident> = set_vars.into_iter().collect();
    let obj_vars: Vec<Ident> = obj_vars.into_iter().collect();
    let mut out = Vec::new();
    let mut z = Assignment::default();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        set_vars: &[Ident],
        obj_vars: &[Ident],
        relations: &[AnnotationSet],
        elements: &[AnnoValue],
        prefix: &[(Ident, Specifier)],
        i: &FiniteInterpretation,
        z: &mut Assignment,
        out: &mut Vec<Assignment>,
    ) -> Result<(), EvalError> {
        if let Some((x, rest)) = set_vars.split_first() {
            for rel in relations {
                z.set_vars.insert(x.clone(), rel.clone());
                rec(rest, obj_vars, relations, elements, prefix, i, z, out)?;
            }
            z.set_vars.remove(x);
            return Ok(());
        }
        if let Some((x, rest)) = obj_vars.split_first() {
            for e in elements {
                z.obj_vars.insert(x.clone(), e.clone());
                rec(&[], rest, relations, elements, prefix, i, z, out)?;
            }
            z.obj_vars.remove(x);
            return Ok(());
        }
        for (x, s) in prefix {
            let ss = eval_specifier(s, i, z)?;
            let bound = z
                .set_vars
                .get(x)
                .ok_or_else(|| EvalError::UnboundVariable(x.clone()))?;
            if !ss.contains(bound) {
                return Ok(());
            }
        }
        out.push(z.clone());
        Ok(())
    }

    rec(
        &set_vars, &obj_vars, &relations, &elements, prefix, i, &mut z, &mut out,
    )?;
    Ok(out)
}

/// Per-axiom outcome of a model check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelReport {
    pub failures: Vec<AxiomFailure>,
}

impl ModelReport {
    pub fn is_model(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Satisfaction of a single axiom; failures are appended to `out`.
fn check_axiom(
    idx: usize,
    ax: &Axiom,
    i: &FiniteInterpretation,
    cap: usize,
    out: &mut Vec<AxiomFailure>,
) -> Result<(), EvalError> {
    let z0 = Assignment::default();
    match ax {
        Axiom::ConceptAssertion {
            concept,
            individual,
            spec,
        } => {
            let ss = eval_specifier(spec, i, &z0)?;
            let d = i.denote_ind(individual);
            let ok = i
                .concept_ext(concept)
                .any(|(e, f)| *e == d && ss.contains(f));
            if !ok {
                out.push(AxiomFailure {
                    axiom: idx,
                    detail: format!("assertion {concept}({individual}) does not hold"),
                });
            }
        }
        Axiom::RoleAssertion {
            role,
            subject,
            object,
            spec,
        } => {
            let ss = eval_specifier(spec, i, &z0)?;
            let d = i.denote_ind(subject);
            let e = i.denote_ind(object);
            let ok = i
                .role_ext(role)
                .any(|(x, y, f)| *x == d && *y == e && ss.contains(f));
            if !ok {
                out.push(AxiomFailure {
                    axiom: idx,
                    detail: format!("assertion {role}({subject},{object}) does not hold"),
                });
            }
        }
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            for z in compatible_assignments(ax, i, cap)? {
                let left = conjunction_members(lhs, i, &z)?;
                let right = match rhs {
                    ConceptRhs::Bottom => BTreeSet::new(),
                    ConceptRhs::Basic(b) => basic_concept_members(b, i, &z)?,
                };
                if let Some(witness) = left.difference(&right).next() {
                    out.push(AxiomFailure {
                        axiom: idx,
                        detail: format!(
                            "inclusion fails at {witness} under assignment {}",
                            describe_assignment(&z)
                        ),
                    });
                    break;
                }
            }
        }
        Axiom::RoleInclusion { lhs, rhs, .. } => {
            for z in compatible_assignments(ax, i, cap)? {
                let left = role_pairs(lhs, i, &z)?;
                let right = match rhs {
                    RoleRhs::Positive(r) => role_pairs(r, i, &z)?,
                    RoleRhs::Negative(r) => neg_role_pairs(r, i, &z)?,
                };
                if let Some((d, e)) = left.difference(&right).next() {
                    out.push(AxiomFailure {
                        axiom: idx,
                        detail: format!(
                            "role inclusion fails at ({d},{e}) under assignment {}",
                            describe_assignment(&z)
                        ),
                    });
                    break;
                }
            }
        }
    }
    Ok(())
}

fn describe_assignment(z: &Assignment) -> String {
    let mut s = String::from("{");
    for (x, rel) in &z.set_vars {
        let _ = core::fmt::Write::write_fmt(&mut s, format_args!("{x}={rel:?} "));
    }
    for (x, v) in &z.obj_vars {
        let _ = core::fmt::Write::write_fmt(&mut s, format_args!("?{x}={v} "));
    }
    s.push('}');
    s
}

/// Checks whether `i` is a model of `o` under the plain attributed
/// semantics; assignments are enumerated exhaustively (exact for
/// `|Δ_a| <= cap`). Failures are ordered by axiom index.
pub fn check_model(
    i: &FiniteInterpretation,
    o: &Ontology,
    cap: usize,
) -> Result<ModelReport, EvalError> {
    let mut failures = Vec::new();
    for (idx, ax) in o.axioms.iter().enumerate() {
        check_axiom(idx, ax, i, cap, &mut failures)?;
    }
    Ok(ModelReport { failures })
}
