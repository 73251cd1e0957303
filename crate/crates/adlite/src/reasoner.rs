//! Saturation of plain Horn DL-Lite: satisfiability and construction of a
//! finite model with self-named individuals.
//!
//! The chase creates at most one witness per role-atom pattern (role name
//! plus direction), shared across all triggering individuals, which bounds
//! the fact base and guarantees termination. Witnesses of the two
//! directions of a role are never merged; sharing them would let unrelated
//! concept memberships meet on one element and produce spurious clashes.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::grounding::{
    dllite_translate, ground_ontology, GroundingConfig, GroundingError, PlainAxiom, PlainBasic,
    PlainConceptRhs, PlainOntology, PlainRole, PlainRoleRhs,
};
use crate::semantics::FiniteInterpretation;
use crate::syntax::{Ident, Ontology};

/// Saturated set of facts over named and witness individuals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactBase {
    pub concepts: BTreeMap<Ident, BTreeSet<Ident>>,
    pub roles: BTreeMap<Ident, BTreeSet<(Ident, Ident)>>,
    pub individuals: BTreeSet<Ident>,
    pub witnesses: BTreeSet<Ident>,
    pub unsat: bool,
    /// Description of the first clash, when unsatisfiable.
    pub clash: Option<String>,
}

impl FactBase {
    pub fn holds_concept(&self, concept: &Ident, ind: &Ident) -> bool {
        self.concepts
            .get(concept)
            .is_some_and(|s| s.contains(ind))
    }

    pub fn holds_role(&self, role: &Ident, subj: &Ident, obj: &Ident) -> bool {
        self.roles
            .get(role)
            .is_some_and(|s| s.contains(&(subj.clone(), obj.clone())))
    }

    fn fact_count(&self) -> usize {
        self.concepts.values().map(BTreeSet::len).sum::<usize>()
            + self.roles.values().map(BTreeSet::len).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReasonerError {
    Grounding(GroundingError),
    Unsatisfiable,
}

impl fmt::Display for ReasonerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReasonerError::Grounding(e) => write!(f, "{e}"),
            ReasonerError::Unsatisfiable => write!(f, "ontology is unsatisfiable"),
        }
    }
}

impl From<GroundingError> for ReasonerError {
    fn from(e: GroundingError) -> Self {
        ReasonerError::Grounding(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Fact {
    Concept(Ident, Ident),
    Role(Ident, Ident, Ident),
}

struct Saturator<'a> {
    p: &'a PlainOntology,
    fb: FactBase,
    queue: VecDeque<Fact>,
}

impl<'a> Saturator<'a> {
    fn new(p: &'a PlainOntology) -> Self {
        Saturator {
            p,
            fb: FactBase::default(),
            queue: VecDeque::new(),
        }
    }

    fn add_concept(&mut self, concept: &Ident, ind: &Ident) {
        self.fb.individuals.insert(ind.clone());
        if self
            .fb
            .concepts
            .entry(concept.clone())
            .or_default()
            .insert(ind.clone())
        {
            self.queue.push_back(Fact::Concept(concept.clone(), ind.clone()));
        }
    }

    fn add_role(&mut self, role: &Ident, subj: &Ident, obj: &Ident) {
        self.fb.individuals.insert(subj.clone());
        self.fb.individuals.insert(obj.clone());
        if self
            .fb
            .roles
            .entry(role.clone())
            .or_default()
            .insert((subj.clone(), obj.clone()))
        {
            self.queue
                .push_back(Fact::Role(role.clone(), subj.clone(), obj.clone()));
        }
    }

    /// `d` has some `P`-successor.
    fn exists_holds(&self, p: &PlainRole, d: &Ident) -> bool {
        self.fb.roles.get(&p.name).is_some_and(|pairs| {
            pairs
                .iter()
                .any(|(x, y)| if p.inverse { y == d } else { x == d })
        })
    }

    fn basic_holds(&self, b: &PlainBasic, d: &Ident) -> bool {
        match b {
            PlainBasic::Atom(a) => self.fb.holds_concept(a, d),
            PlainBasic::Exists(p) => self.exists_holds(p, d),
        }
    }

    /// Witness element for a role-atom pattern; one per (name, direction).
    fn witness_for(&mut self, p: &PlainRole) -> Ident {
        let mut name = if p.inverse {
            Ident(format!("_w_{}_inv", p.name))
        } else {
            Ident(format!("_w_{}", p.name))
        };
        while self.fb.individuals.contains(&name) && !self.fb.witnesses.contains(&name) {
            name = Ident(format!("{}_", name.0));
        }
        self.fb.witnesses.insert(name.clone());
        name
    }

    fn apply_concept_rhs(&mut self, axiom_idx: usize, rhs: &PlainConceptRhs, d: &Ident) {
        match rhs {
            PlainConceptRhs::Basic(PlainBasic::Atom(a)) => self.add_concept(a, d),
            PlainConceptRhs::Basic(PlainBasic::Exists(p)) => {
                if !self.exists_holds(p, d) {
                    let w = self.witness_for(p);
                    if p.inverse {
                        self.add_role(&p.name, &w, d);
                    } else {
                        self.add_role(&p.name, d, &w);
                    }
                }
            }
            PlainConceptRhs::Bottom => {
                self.fb.unsat = true;
                self.fb.clash = Some(format!("axiom {axiom_idx} derives bottom at {d}"));
            }
        }
    }

    /// Fires every rule whose body may involve the new fact.
    fn propagate(&mut self, fact: &Fact) {
        for (idx, ax) in self.p.axioms.iter().enumerate() {
            if self.fb.unsat {
                return;
            }
            match ax {
                PlainAxiom::ConceptInclusion { lhs, rhs } => {
                    let mut candidates: BTreeSet<Ident> = BTreeSet::new();
                    match fact {
                        Fact::Concept(a, d) => {
                            if lhs.iter().any(|b| matches!(b, PlainBasic::Atom(x) if x == a)) {
                                candidates.insert(d.clone());
                            }
                        }
                        Fact::Role(r, d, e) => {
                            for b in lhs {
                                if let PlainBasic::Exists(p) = b {
                                    if &p.name == r {
                                        candidates
                                            .insert(if p.inverse { e.clone() } else { d.clone() });
                                    }
                                }
                            }
                        }
                    }
                    for d in candidates {
                        if lhs.iter().all(|b| self.basic_holds(b, &d)) {
                            self.apply_concept_rhs(idx, rhs, &d);
                        }
                    }
                }
                PlainAxiom::RoleInclusion {
                    lhs,
                    rhs: PlainRoleRhs::Positive(q),
                } => {
                    if let Fact::Role(r, d, e) = fact {
                        if r == &lhs.name {
                            // Orient the pair as (subject, object) of the
                            // left role expression.
                            let (s, o) = if lhs.inverse {
                                (e.clone(), d.clone())
                            } else {
                                (d.clone(), e.clone())
                            };
                            if q.inverse {
                                self.add_role(&q.name, &o, &s);
                            } else {
                                self.add_role(&q.name, &s, &o);
                            }
                        }
                    }
                }
                // Negative role inclusions are disjointness constraints,
                // checked once the fixpoint is reached.
                PlainAxiom::RoleInclusion { .. } => {}
                _ => {}
            }
        }
    }

    fn run(mut self) -> FactBase {
        for ax in &self.p.axioms {
            match ax {
                PlainAxiom::ConceptAssertion {
                    concept,
                    individual,
                } => self.add_concept(concept, individual),
                PlainAxiom::RoleAssertion {
                    role,
                    subject,
                    object,
                } => self.add_role(role, subject, object),
                _ => {}
            }
        }
        while let Some(fact) = self.queue.pop_front() {
            if self.fb.unsat {
                break;
            }
            self.propagate(&fact);
        }
        if !self.fb.unsat {
            for (idx, ax) in self.p.axioms.iter().enumerate() {
                if let PlainAxiom::RoleInclusion {
                    lhs,
                    rhs: PlainRoleRhs::Negative(q),
                } = ax
                {
                    let lhs_pairs = oriented_pairs(&self.fb, lhs);
                    let rhs_pairs = oriented_pairs(&self.fb, q);
                    if let Some(pair) = lhs_pairs.intersection(&rhs_pairs).next() {
                        self.fb.unsat = true;
                        self.fb.clash = Some(format!(
                            "axiom {idx}: role disjointness violated at ({},{})",
                            pair.0, pair.1
                        ));
                        break;
                    }
                }
            }
        }
        self.fb
    }
}

fn oriented_pairs(fb: &FactBase, p: &PlainRole) -> BTreeSet<(Ident, Ident)> {
    fb.roles
        .get(&p.name)
        .into_iter()
        .flatten()
        .map(|(d, e)| {
            if p.inverse {
                (e.clone(), d.clone())
            } else {
                (d.clone(), e.clone())
            }
        })
        .collect()
}

/// Least fixpoint of the plain ontology's rules over its assertions.
/// Unsatisfiability is a result, not an error.
pub fn saturate(p: &PlainOntology) -> FactBase {
    let fb = Saturator::new(p).run();
    debug_assert!(fb.unsat || fb.fact_count() < 1 << 24);
    fb
}

/// Grounds, translates and saturates an ontology, treating every
/// attribute-value pair opaquely. Temporal satisfiability must go through
/// `temporal::temporal_translate` first.
pub fn is_satisfiable(o: &Ontology, config: GroundingConfig) -> Result<bool, ReasonerError> {
    let g = ground_ontology(o, config)?;
    let (plain, _) = dllite_translate(&g);
    Ok(!saturate(&plain).unsat)
}

/// Reads the saturated fact base off as a finite interpretation whose
/// domain is exactly the named and witness individuals, each interpreted
/// as itself; annotation sets are empty.
pub fn finite_model(p: &PlainOntology) -> Result<FiniteInterpretation, ReasonerError> {
    let fb = saturate(p);
    if fb.unsat {
        return Err(ReasonerError::Unsatisfiable);
    }
    Ok(fact_base_interpretation(&fb))
}

/// The interpretation induced by a fact base (empty annotation sets).
pub fn fact_base_interpretation(fb: &FactBase) -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new();
    i.individuals = fb.individuals.clone();
    for (a, inds) in &fb.concepts {
        for d in inds {
            i.concepts
                .entry(a.clone())
                .or_default()
                .insert((d.clone(), BTreeSet::new()));
        }
    }
    for (r, pairs) in &fb.roles {
        for (d, e) in pairs {
            i.roles
                .entry(r.clone())
                .or_default()
                .insert((d.clone(), e.clone(), BTreeSet::new()));
        }
    }
    i
}
