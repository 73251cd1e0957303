//! Temporally attributed DL-Lite over discrete time: the per-attribute
//! global semantics, the role/attribute restrictions that recover convex
//! geometric models, the sharp-expansion of temporal annotations into unit
//! intervals, the translation to a plain attributed ontology, assembly of
//! the temporal model bundle, and the global-interpretation check.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::geometry::{
    build_model_for_ground, BuildError, BuiltModel, GeometricInterpretation, GeometryError,
    Region,
};
use crate::grounding::{
    annotation_domain, ground_ontology_over, AnnotationDomain, GroundAxiom, GroundBasic,
    GroundConceptRhs, GroundOntology, GroundingConfig, GroundingError, NameKind,
};
use crate::semantics::{AnnotationSet, AxiomFailure, ModelReport};
use crate::syntax::{
    temporal_attr, AnnoValue, Axiom, BasicConcept, ConceptRhs, GroundSpecifier, Ident, Nat,
    Ontology, RoleRhs, Specifier, TemporalAttr,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TemporalError {
    UnsupportedAttribute(Ident),
    RestrictionViolated(RestrictionReport),
    Unsatisfiable,
    Grounding(GroundingError),
    Geometry(GeometryError),
    /// The bounded-domain oracle only evaluates variable-free ontologies.
    NonGround(String),
    /// Exhaustive grounding put a boundary time point inside a specifier;
    /// the truncated per-time-point family cannot represent it.
    BoundaryConstant(String),
}

impl fmt::Display for TemporalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemporalError::UnsupportedAttribute(a) => {
                write!(f, "unsupported temporal attribute `{a}`")
            }
            TemporalError::RestrictionViolated(r) => {
                write!(f, "temporal restrictions violated: {r}")
            }
            TemporalError::Unsatisfiable => write!(f, "ontology is unsatisfiable"),
            TemporalError::Grounding(e) => write!(f, "{e}"),
            TemporalError::Geometry(e) => write!(f, "{e}"),
            TemporalError::NonGround(s) => write!(f, "not ground: {s}"),
            TemporalError::BoundaryConstant(s) => write!(
                f,
                "annotation `{s}` uses a boundary time point; model assembly \
                 supports constants within the occurring range only"
            ),
        }
    }
}

impl From<GroundingError> for TemporalError {
    fn from(e: GroundingError) -> Self {
        TemporalError::Grounding(e)
    }
}

impl From<GeometryError> for TemporalError {
    fn from(e: GeometryError) -> Self {
        TemporalError::Geometry(e)
    }
}

impl From<BuildError> for TemporalError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Grounding(g) => TemporalError::Grounding(g),
            BuildError::Unsatisfiable => TemporalError::Unsatisfiable,
            BuildError::Geometry(g) => TemporalError::Geometry(g),
        }
    }
}

// --- Restrictions -------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictionViolation {
    /// A specifier attached to a role carries a temporal attribute.
    TemporalRoleSpecifier { axiom: usize, attr: Ident },
    /// `before`, `after` or `between` occurs.
    ForbiddenAttribute { axiom: usize, attr: Ident },
}

impl fmt::Display for RestrictionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictionViolation::TemporalRoleSpecifier { axiom, attr } => {
                write!(f, "axiom {axiom}: temporal attribute `{attr}` on a role specifier")
            }
            RestrictionViolation::ForbiddenAttribute { axiom, attr } => {
                write!(f, "axiom {axiom}: forbidden temporal attribute `{attr}`")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RestrictionReport {
    pub violations: Vec<RestrictionViolation>,
}

impl RestrictionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for RestrictionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn is_disjunctive(attr: TemporalAttr) -> bool {
    matches!(
        attr,
        TemporalAttr::Before | TemporalAttr::After | TemporalAttr::Between
    )
}

/// Checks the two restrictions under which convex geometric models exist:
/// (i) every specifier attached to a role is atemporal, and (ii) `before`,
/// `after` and `between` do not occur.
pub fn check_temporal_restrictions(o: &Ontology) -> RestrictionReport {
    let mut violations = Vec::new();
    for (idx, ax) in o.axioms.iter().enumerate() {
        for (spec, role_pos) in ax.specifiers() {
            let Specifier::Set { pairs, .. } = spec else {
                continue;
            };
            for (a, _) in pairs {
                let Some(t) = temporal_attr(a) else {
                    continue;
                };
                if is_disjunctive(t) {
                    violations.push(RestrictionViolation::ForbiddenAttribute {
                        axiom: idx,
                        attr: a.clone(),
                    });
                }
                if role_pos {
                    violations.push(RestrictionViolation::TemporalRoleSpecifier {
                        axiom: idx,
                        attr: a.clone(),
                    });
                }
            }
        }
    }
    RestrictionReport { violations }
}

// --- Temporal implication -------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalBounds {
    pub k_min: Nat,
    pub k_max: Nat,
}

impl TemporalBounds {
    pub fn of(dom: &AnnotationDomain) -> Self {
        let (k_min, k_max) = dom.bounds();
        TemporalBounds { k_min, k_max }
    }
}

fn nat_range(lo: &Nat, hi: &Nat) -> Vec<Nat> {
    let mut out = Vec::new();
    let mut j = lo.clone();
    while j <= *hi {
        out.push(j.clone());
        j += 1u32;
    }
    out
}

fn pred_or_zero(n: &Nat) -> Nat {
    if n.is_zero() {
        Nat::from(0u32)
    } else {
        n - 1u32
    }
}

/// The set of time points a single annotation requires to be true, clipped
/// to the bounded domain `[lo, hi]`: `time:k` requires `{k}`,
/// `during:[u,v]` requires `[u,v]`, `since:k` requires `[k,hi]`, and
/// `until:k` requires `[lo,k]`.
fn required_range(
    attr: TemporalAttr,
    value: &AnnoValue,
    lo: &Nat,
    hi: &Nat,
) -> Result<(Nat, Nat), TemporalError> {
    match (attr, value) {
        (TemporalAttr::Time, AnnoValue::Time(k)) => Ok((k.clone(), k.clone())),
        (TemporalAttr::During, AnnoValue::Interval(u, v)) => Ok((u.clone(), v.clone())),
        (TemporalAttr::Since, AnnoValue::Time(k)) => Ok((k.clone(), hi.clone())),
        (TemporalAttr::Until, AnnoValue::Time(k)) => Ok((lo.clone(), k.clone())),
        _ => Err(TemporalError::UnsupportedAttribute(Ident::new(attr.name()))),
    }
}

/// Decides whether a single temporal annotation entails another, by
/// inclusion of required ranges over the bounded domain
/// `[max(0, k_min - 1), k_max + 1]` (the bounds are widened to cover the
/// constants of both pairs, which makes the answer domain-independent).
/// Only `time`, `during`, `since` and `until` are supported.
pub fn temporal_implies(
    p1: &(Ident, AnnoValue),
    p2: &(Ident, AnnoValue),
    bounds: &TemporalBounds,
) -> Result<bool, TemporalError> {
    let a1 = temporal_attr(&p1.0).ok_or_else(|| TemporalError::UnsupportedAttribute(p1.0.clone()))?;
    let a2 = temporal_attr(&p2.0).ok_or_else(|| TemporalError::UnsupportedAttribute(p2.0.clone()))?;
    if is_disjunctive(a1) {
        return Err(TemporalError::UnsupportedAttribute(p1.0.clone()));
    }
    if is_disjunctive(a2) {
        return Err(TemporalError::UnsupportedAttribute(p2.0.clone()));
    }
    let mut k_min = bounds.k_min.clone();
    let mut k_max = bounds.k_max.clone();
    for v in [&p1.1, &p2.1] {
        match v {
            AnnoValue::Time(k) => {
                k_min = k_min.min(k.clone());
                k_max = k_max.max(k.clone());
            }
            AnnoValue::Interval(u, w) => {
                k_min = k_min.min(u.clone());
                k_max = k_max.max(w.clone());
            }
            AnnoValue::Name(n) => {
                return Err(TemporalError::UnsupportedAttribute(n.clone()));
            }
        }
    }
    let lo = pred_or_zero(&k_min);
    let hi = &k_max + 1u32;
    let (s1, e1) = required_range(a1, &p1.1, &lo, &hi)?;
    let (s2, e2) = required_range(a2, &p2.1, &lo, &hi)?;
    Ok(s1 <= s2 && e2 <= e1)
}

// --- Sharp expansion ------------------------------------------------------------

/// The sharp-expansion of a concept annotated with a single temporal pair:
/// `during` decomposes into unit intervals, `time:k` rewrites through
/// `during:[k,k]`, `since`/`until` add their boundary conjunct, and values
/// at `k_min`/`k_max` are fixpoints. Returns the conjunct specifiers (all
/// sharing the abstract part of `spec`).
pub fn sharp_expand(
    spec: &GroundSpecifier,
    attr: &Ident,
    value: &AnnoValue,
    bounds: &TemporalBounds,
) -> Result<Vec<GroundSpecifier>, TemporalError> {
    let t = temporal_attr(attr).ok_or_else(|| TemporalError::UnsupportedAttribute(attr.clone()))?;
    if is_disjunctive(t) {
        return Err(TemporalError::UnsupportedAttribute(attr.clone()));
    }
    let during = Ident::new(TemporalAttr::During.name());
    let unit = |j: &Nat| spec.with_pair(&during, &AnnoValue::Interval(j.clone(), j.clone()));
    let boundary = |k: &Nat| k == &bounds.k_min || k == &bounds.k_max;
    let mut out = Vec::new();
    match (t, value) {
        (TemporalAttr::During, AnnoValue::Interval(u, v)) => {
            let from = u.clone().max(bounds.k_min.clone());
            let to = v.clone().min(bounds.k_max.clone());
            for j in nat_range(&from, &to) {
                out.push(unit(&j));
            }
        }
        (TemporalAttr::Time, AnnoValue::Time(k)) => {
            if boundary(k) {
                out.push(spec.with_pair(attr, value));
            } else {
                out.push(unit(k));
            }
        }
        (TemporalAttr::Since, AnnoValue::Time(k)) => {
            if boundary(k) {
                out.push(spec.with_pair(attr, value));
            } else {
                for j in nat_range(k, &bounds.k_max) {
                    out.push(unit(&j));
                }
                out.push(spec.with_pair(attr, &AnnoValue::Time(bounds.k_max.clone())));
            }
        }
        (TemporalAttr::Until, AnnoValue::Time(k)) => {
            if boundary(k) {
                out.push(spec.with_pair(attr, value));
            } else {
                for j in nat_range(&bounds.k_min, k) {
                    out.push(unit(&j));
                }
                out.push(spec.with_pair(attr, &AnnoValue::Time(bounds.k_min.clone())));
            }
        }
        _ => return Err(TemporalError::UnsupportedAttribute(attr.clone())),
    }
    Ok(out)
}

/// Uniform variant used by the translation: no fixpoint at the boundary,
/// so boundary `time`/`since`/`until` values also decompose into unit
/// intervals (sound in both directions; the fixpoint form of
/// [`sharp_expand`] would leave boundary annotations unconnected to the
/// per-time-point regions).
///
/// Annotations whose constants fall outside `[k_min, k_max]` can arise
/// from exhaustive grounding over the boundary-extended domain; they are
/// left opaque (no equivalence holds for them even over the truncated
/// domain — the implication pass still relates them soundly).
fn uniform_sharp(
    spec: &GroundSpecifier,
    attr: &Ident,
    value: &AnnoValue,
    bounds: &TemporalBounds,
) -> Result<Vec<GroundSpecifier>, TemporalError> {
    let t = temporal_attr(attr).ok_or_else(|| TemporalError::UnsupportedAttribute(attr.clone()))?;
    let during = Ident::new(TemporalAttr::During.name());
    let since = Ident::new(TemporalAttr::Since.name());
    let until = Ident::new(TemporalAttr::Until.name());
    let unit = |j: &Nat| spec.with_pair(&during, &AnnoValue::Interval(j.clone(), j.clone()));
    let in_range = |k: &Nat| *k >= bounds.k_min && *k <= bounds.k_max;
    let opaque = |out: &mut Vec<GroundSpecifier>| out.push(spec.with_pair(attr, value));
    let mut out = Vec::new();
    match (t, value) {
        (TemporalAttr::During, AnnoValue::Interval(u, v)) => {
            if !in_range(u) || !in_range(v) {
                opaque(&mut out);
            } else {
                for j in nat_range(u, v) {
                    out.push(unit(&j));
                }
            }
        }
        (TemporalAttr::Time, AnnoValue::Time(k)) => {
            if !in_range(k) {
                opaque(&mut out);
            } else {
                out.push(unit(k));
            }
        }
        (TemporalAttr::Since, AnnoValue::Time(k)) => {
            if !in_range(k) {
                opaque(&mut out);
            } else {
                for j in nat_range(k, &bounds.k_max) {
                    out.push(unit(&j));
                }
                out.push(spec.with_pair(&since, &AnnoValue::Time(bounds.k_max.clone())));
            }
        }
        (TemporalAttr::Until, AnnoValue::Time(k)) => {
            if !in_range(k) {
                opaque(&mut out);
            } else {
                for j in nat_range(&bounds.k_min, k) {
                    out.push(unit(&j));
                }
                out.push(spec.with_pair(&until, &AnnoValue::Time(bounds.k_min.clone())));
            }
        }
        _ => return Err(TemporalError::UnsupportedAttribute(attr.clone())),
    }
    Ok(out)
}

/// Conjunct set of the full equivalence for a temporal specifier: the
/// union of the uniform expansions of its temporal pairs.
fn uniform_conjuncts(
    spec: &GroundSpecifier,
    bounds: &TemporalBounds,
) -> Result<BTreeSet<GroundSpecifier>, TemporalError> {
    let mut out = BTreeSet::new();
    for (a, v) in spec.temporal_pairs() {
        for c in uniform_sharp(spec, a, v, bounds)? {
            out.insert(c);
        }
    }
    Ok(out)
}

// --- Translation -----------------------------------------------------------------

/// Result of the temporal-to-plain translation: a ground attributed
/// ontology in which temporal pairs can be treated opaquely, plus the
/// temporal bounds and the truncated mechanical domain `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalTranslation {
    pub ground: GroundOntology,
    pub bounds: TemporalBounds,
    pub lo: Nat,
    pub hi: Nat,
}

impl TemporalTranslation {
    pub fn to_ontology(&self) -> Ontology {
        self.ground.to_ontology()
    }
}

fn concept_inclusion(lhs: Vec<(Ident, GroundSpecifier)>, rhs: (Ident, GroundSpecifier)) -> GroundAxiom {
    GroundAxiom::ConceptInclusion {
        lhs: lhs
            .into_iter()
            .map(|(name, spec)| GroundBasic::Atom { name, spec })
            .collect(),
        rhs: GroundConceptRhs::Basic(GroundBasic::Atom {
            name: rhs.0,
            spec: rhs.1,
        }),
    }
}

/// `S ⇒ T` for ground specifiers: every temporal pair of `T` is implied by
/// some temporal pair of `S`, and the non-temporal parts satisfy the
/// open/closed side condition (superset for open `T`, equality for a pair
/// of closed specifiers).
pub fn temporal_specifier_implies(
    s: &GroundSpecifier,
    t: &GroundSpecifier,
    bounds: &TemporalBounds,
) -> Result<bool, TemporalError> {
    for (c, d) in t.temporal_pairs() {
        let mut found = false;
        for (a, b) in s.temporal_pairs() {
            if temporal_implies(&(a.clone(), b.clone()), &(c.clone(), d.clone()), bounds)
                .unwrap_or(false)
            {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    let s_abs: BTreeSet<_> = s.abstract_pairs().collect();
    let t_abs: BTreeSet<_> = t.abstract_pairs().collect();
    Ok(if t.open {
        t_abs.is_subset(&s_abs)
    } else {
        !s.open && s_abs == t_abs
    })
}

fn fresh_annotation_name(dom: &AnnotationDomain) -> Ident {
    let mut name = String::from("_fresh");
    while dom.names.contains(&Ident(name.clone())) {
        name.push('_');
    }
    Ident(name)
}

fn translate_impl(
    o: &Ontology,
    config: GroundingConfig,
    strict: bool,
) -> Result<TemporalTranslation, TemporalError> {
    let report = check_temporal_restrictions(o);
    let relevant: Vec<&RestrictionViolation> = report
        .violations
        .iter()
        .filter(|v| strict || matches!(v, RestrictionViolation::ForbiddenAttribute { .. }))
        .collect();
    if !relevant.is_empty() {
        return Err(TemporalError::RestrictionViolated(RestrictionReport {
            violations: relevant.into_iter().cloned().collect(),
        }));
    }

    // Extended grounding domain: the occurring elements plus a fresh
    // abstract name and the two boundary time points.
    let mut dom = annotation_domain(o);
    let bounds = TemporalBounds::of(&dom);
    let lo = pred_or_zero(&bounds.k_min);
    let hi = &bounds.k_max + 1u32;
    dom.names.insert(fresh_annotation_name(&dom));
    dom.times.insert(lo.clone());
    dom.times.insert(hi.clone());

    let grounded = ground_ontology_over(o, &dom, config)?;
    let mut axioms = grounded.axioms.clone();
    let mut seen: BTreeSet<GroundAxiom> = axioms.iter().cloned().collect();
    let push = |axioms: &mut Vec<GroundAxiom>, seen: &mut BTreeSet<GroundAxiom>, ax: GroundAxiom| {
        if seen.insert(ax.clone()) {
            axioms.push(ax);
        }
    };

    // Sharp equivalences (both directions) for every occurring annotated
    // concept with temporal pairs, transitively over introduced atoms.
    let mut atoms: BTreeSet<(Ident, GroundSpecifier)> = grounded
        .occurring()
        .into_iter()
        .filter(|(kind, _, _)| *kind == NameKind::Concept)
        .map(|(_, name, spec)| (name, spec))
        .collect();
    let mut queue: Vec<(Ident, GroundSpecifier)> = atoms.iter().cloned().collect();
    while let Some((name, spec)) = queue.pop() {
        if !spec.has_temporal_pair() {
            continue;
        }
        let conjuncts = uniform_conjuncts(&spec, &bounds)?;
        for c in &conjuncts {
            if atoms.insert((name.clone(), c.clone())) {
                queue.push((name.clone(), c.clone()));
            }
        }
        if conjuncts.len() == 1 && conjuncts.contains(&spec) {
            continue;
        }
        for c in &conjuncts {
            push(
                &mut axioms,
                &mut seen,
                concept_inclusion(
                    alloc::vec![(name.clone(), spec.clone())],
                    (name.clone(), c.clone()),
                ),
            );
        }
        push(
            &mut axioms,
            &mut seen,
            concept_inclusion(
                conjuncts
                    .iter()
                    .map(|c| (name.clone(), c.clone()))
                    .collect(),
                (name.clone(), spec.clone()),
            ),
        );
    }

    // Boundary windows: families with a since (until) atom get the
    // `during:[k_max, k_max+1]` (`during:[max(k_min-1,0), k_min]`) region
    // identified with the boundary atom, so that the per-time-point family
    // is populated beyond the occurring constants. The identification is
    // exact over the truncated domain.
    let during = Ident::new(TemporalAttr::During.name());
    let since = Ident::new(TemporalAttr::Since.name());
    let until = Ident::new(TemporalAttr::Until.name());
    let mut windows: Vec<(Ident, GroundSpecifier, GroundSpecifier)> = Vec::new();
    for (name, spec) in &atoms {
        for (a, v) in spec.temporal_pairs() {
            if *a == since && *v == AnnoValue::Time(bounds.k_max.clone()) {
                let w = spec.with_pair(&during, &AnnoValue::Interval(bounds.k_max.clone(), hi.clone()));
                windows.push((name.clone(), w, spec.clone()));
            }
            if *a == until && *v == AnnoValue::Time(bounds.k_min.clone()) && lo < bounds.k_min {
                let w = spec.with_pair(&during, &AnnoValue::Interval(lo.clone(), bounds.k_min.clone()));
                windows.push((name.clone(), w, spec.clone()));
            }
        }
    }
    for (name, window, boundary_atom) in windows {
        atoms.insert((name.clone(), window.clone()));
        push(
            &mut axioms,
            &mut seen,
            concept_inclusion(
                alloc::vec![(name.clone(), window.clone())],
                (name.clone(), boundary_atom.clone()),
            ),
        );
        push(
            &mut axioms,
            &mut seen,
            concept_inclusion(
                alloc::vec![(name.clone(), boundary_atom)],
                (name.clone(), window),
            ),
        );
    }

    // Temporal implication pass: S ⇒ T over all occurring atoms (concepts
    // and roles), including the introduced ones.
    let interim = GroundOntology {
        axioms: axioms.clone(),
    };
    let mut per_name: BTreeMap<(NameKind, Ident), BTreeSet<GroundSpecifier>> = BTreeMap::new();
    for (kind, name, spec) in interim.occurring() {
        per_name.entry((kind, name)).or_default().insert(spec);
    }
    for ((kind, name), specs) in &per_name {
        for s in specs {
            for t in specs {
                if s == t || !temporal_specifier_implies(s, t, &bounds)? {
                    continue;
                }
                let ax = match kind {
                    NameKind::Concept => concept_inclusion(
                        alloc::vec![(name.clone(), s.clone())],
                        (name.clone(), t.clone()),
                    ),
                    NameKind::Role => GroundAxiom::RoleInclusion {
                        lhs: crate::grounding::GroundRole {
                            name: name.clone(),
                            inverse: false,
                            spec: s.clone(),
                        },
                        rhs: crate::grounding::GroundRoleRhs::Positive(
                            crate::grounding::GroundRole {
                                name: name.clone(),
                                inverse: false,
                                spec: t.clone(),
                            },
                        ),
                    },
                };
                push(&mut axioms, &mut seen, ax);
            }
        }
    }

    Ok(TemporalTranslation {
        ground: GroundOntology { axioms },
        bounds,
        lo,
        hi,
    })
}

/// Grounds a temporal ontology over the boundary-extended domain and adds
/// the sharp equivalences and temporal-implication inclusions, producing a
/// plain attributed ontology for the standard pipeline. Requires both
/// restrictions (atemporal role specifiers; no before/after/between).
pub fn temporal_translate(
    o: &Ontology,
    config: GroundingConfig,
) -> Result<TemporalTranslation, TemporalError> {
    translate_impl(o, config, true)
}

/// Like [`temporal_translate`] but without the atemporal-role restriction;
/// roles keep their temporal pairs opaquely. Sound for refuting
/// satisfiability, incomplete in general (joint implications between role
/// annotations are not derived). Used for diagnostics.
pub fn temporal_translate_relaxed(
    o: &Ontology,
    config: GroundingConfig,
) -> Result<TemporalTranslation, TemporalError> {
    translate_impl(o, config, false)
}

// --- Temporal model bundle ----------------------------------------------------

/// A global geometric interpretation together with the per-time-point
/// family over the truncated domain `[lo, hi]`. All members share the
/// dimension, the map and the individual vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalModelBundle {
    pub global: GeometricInterpretation,
    pub family: Vec<(Nat, GeometricInterpretation)>,
    pub bounds: TemporalBounds,
    pub lo: Nat,
    pub hi: Nat,
}

impl TemporalModelBundle {
    pub fn interpretation_at(&self, j: &Nat) -> Option<&GeometricInterpretation> {
        self.family.iter().find(|(k, _)| k == j).map(|(_, eta)| eta)
    }
}

/// Bundle plus the underlying translation and construction products.
#[derive(Clone, Debug)]
pub struct BuiltTemporalModel {
    pub bundle: TemporalModelBundle,
    pub translation: TemporalTranslation,
    pub built: BuiltModel,
}

/// Runs the full pipeline on the temporal translation and assembles the
/// bundle: concept regions of temporally annotated names become
/// intersections of their expansion regions, role regions are copied
/// (atemporal), and the member at time `j` holds the `during:[j,j]`
/// regions (boundary windows outside `[k_min, k_max]`).
pub fn build_temporal_model(
    o: &Ontology,
    config: GroundingConfig,
) -> Result<BuiltTemporalModel, TemporalError> {
    let t = temporal_translate(o, config)?;
    // Exhaustive grounding over the extended domain can pin boundary time
    // points inside specifiers; the truncated family has no member that
    // could carry such an annotation faithfully (the seeded windows are
    // the two exceptions the construction itself introduces).
    let window_hi = AnnoValue::Interval(t.bounds.k_max.clone(), t.hi.clone());
    let window_lo = AnnoValue::Interval(t.lo.clone(), t.bounds.k_min.clone());
    for (_, name, spec) in t.ground.occurring() {
        for (a, v) in spec.temporal_pairs() {
            if *v == window_hi || *v == window_lo {
                continue;
            }
            let in_range = |k: &Nat| *k >= t.bounds.k_min && *k <= t.bounds.k_max;
            let ok = match v {
                AnnoValue::Time(k) => in_range(k),
                AnnoValue::Interval(u, w) => in_range(u) && in_range(w),
                AnnoValue::Name(_) => false,
            };
            if !ok {
                return Err(TemporalError::BoundaryConstant(format!("{name}@…{a}:{v}")));
            }
        }
    }
    let built = build_model_for_ground(t.ground.clone())?;
    let eta_prime = &built.eta;
    let m = eta_prime.m();

    let mut global = GeometricInterpretation::new(eta_prime.map.clone())?;
    global.individuals = eta_prime.individuals.clone();
    global.roles = eta_prime.roles.clone();
    for ((name, spec), region) in &eta_prime.concepts {
        if !spec.has_temporal_pair() {
            global
                .concepts
                .insert((name.clone(), spec.clone()), region.clone());
            continue;
        }
        let conjuncts = uniform_conjuncts(spec, &t.bounds)?;
        let mut acc: Option<Region> = None;
        for c in &conjuncts {
            let r = eta_prime.concept_region(name, c);
            acc = Some(match acc {
                None => r,
                Some(prev) => prev.intersect_one_hot(&r).ok_or_else(|| {
                    GeometryError::UnsupportedRegionStructure(String::from(
                        "temporal intersection over non-one-hot regions",
                    ))
                })?,
            });
        }
        let region = acc.unwrap_or_else(|| Region::empty(m));
        global.concepts.insert((name.clone(), spec.clone()), region);
    }

    // Family bases: abstract parts of every populated concept key.
    let bases: BTreeSet<(Ident, GroundSpecifier)> = eta_prime
        .concepts
        .keys()
        .map(|(name, spec)| (name.clone(), spec.abstract_part()))
        .collect();
    let during = Ident::new(TemporalAttr::During.name());
    let mut family = Vec::new();
    for j in nat_range(&t.lo, &t.hi) {
        let mut eta_j = GeometricInterpretation::new(eta_prime.map.clone())?;
        eta_j.individuals = eta_prime.individuals.clone();
        eta_j.roles = global.roles.clone();
        for (name, base) in &bases {
            let window = if j > t.bounds.k_max {
                AnnoValue::Interval(t.bounds.k_max.clone(), t.hi.clone())
            } else if j < t.bounds.k_min {
                AnnoValue::Interval(t.lo.clone(), t.bounds.k_min.clone())
            } else {
                AnnoValue::Interval(j.clone(), j.clone())
            };
            let key = base.with_pair(&during, &window);
            let region = eta_prime.concept_region(name, &key);
            if !region.is_empty() {
                eta_j
                    .concepts
                    .insert((name.clone(), base.clone()), region);
            }
        }
        family.push((j, eta_j));
    }

    Ok(BuiltTemporalModel {
        bundle: TemporalModelBundle {
            global,
            family,
            bounds: t.bounds.clone(),
            lo: t.lo.clone(),
            hi: t.hi.clone(),
        },
        translation: t,
        built,
    })
}

// --- Global-interpretation check -------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalViolation {
    pub name: Ident,
    pub spec: GroundSpecifier,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GlobalReport {
    pub checked_points: usize,
    pub violations: Vec<GlobalViolation>,
}

impl GlobalReport {
    pub fn is_global(&self) -> bool {
        self.violations.is_empty()
    }
}

fn member_at(
    bundle: &TemporalModelBundle,
    j: &Nat,
    name: &Ident,
    base: &GroundSpecifier,
    p: &[crate::geometry::Q],
) -> bool {
    bundle
        .interpretation_at(j)
        .map(|eta| eta.concept_region(name, base).contains_point(p) == Ok(true))
        .unwrap_or(false)
}

/// Verifies the per-attribute conditions of the global semantics at every
/// generator point and named vector: membership in a temporally annotated
/// concept region must coincide with the required per-time-point
/// memberships of its abstract part across the family, and role
/// memberships must agree across all family members.
pub fn check_global(
    bundle: &TemporalModelBundle,
    domain_names: &BTreeSet<Ident>,
) -> Result<GlobalReport, TemporalError> {
    let mut probes: Vec<Vec<crate::geometry::Q>> =
        bundle.global.individuals.values().cloned().collect();
    for region in bundle.global.concepts.values() {
        probes.extend(region.generators.iter().cloned());
    }
    for (_, eta_j) in &bundle.family {
        for region in eta_j.concepts.values() {
            probes.extend(region.generators.iter().cloned());
        }
    }
    probes.sort();
    probes.dedup();

    let mut violations = Vec::new();
    let all_js = nat_range(&bundle.lo, &bundle.hi);
    for ((name, spec), region) in &bundle.global.concepts {
        if !spec.has_temporal_pair() {
            continue;
        }
        let names_of_spec: BTreeSet<Ident> = spec
            .pairs
            .iter()
            .map(|(a, _)| a.clone())
            .filter(|a| temporal_attr(a).is_none())
            .collect();
        if !names_of_spec.is_subset(domain_names) {
            continue;
        }
        let base = spec.abstract_part();
        for p in &probes {
            let lhs = region.contains_point(p) == Ok(true);
            let mut rhs = all_js.iter().any(|j| member_at(bundle, j, name, &base, p));
            let mut first_failure: Option<(Ident, Nat)> = None;
            for (a, v) in spec.temporal_pairs() {
                let t = temporal_attr(a)
                    .ok_or_else(|| TemporalError::UnsupportedAttribute(a.clone()))?;
                if is_disjunctive(t) {
                    return Err(TemporalError::UnsupportedAttribute(a.clone()));
                }
                let (from, to) = required_range(t, v, &bundle.lo, &bundle.hi)?;
                for j in nat_range(&from.clone().max(bundle.lo.clone()), &to.clone().min(bundle.hi.clone())) {
                    if !member_at(bundle, &j, name, &base, p) {
                        if first_failure.is_none() {
                            first_failure = Some((a.clone(), j.clone()));
                        }
                        rhs = false;
                    }
                }
            }
            if lhs != rhs {
                let detail = match (lhs, first_failure) {
                    (true, Some((a, j))) => {
                        format!("point in the global region but not at `{a}` time {j}")
                    }
                    (true, None) => String::from(
                        "point in the global region but the base condition fails",
                    ),
                    (false, _) => String::from(
                        "per-time-point conditions hold but the point is outside the global region",
                    ),
                };
                violations.push(GlobalViolation {
                    name: name.clone(),
                    spec: spec.clone(),
                    detail,
                });
            }
        }
    }

    // Roles are atemporal: memberships agree across the family.
    for ((name, spec), region) in &bundle.global.roles {
        for (j, eta_j) in &bundle.family {
            if eta_j.role_region(name, spec) != *region {
                violations.push(GlobalViolation {
                    name: name.clone(),
                    spec: spec.clone(),
                    detail: format!("role region differs at time {j}"),
                });
            }
        }
    }

    Ok(GlobalReport {
        checked_points: probes.len(),
        violations,
    })
}

// --- Bounded-domain standard semantics -------------------------------------------

/// A finite family of per-time-point interpretations over the inclusive
/// domain `[lo, hi]`; annotation sets attached to facts carry only
/// abstract pairs. The derived global interpretation reads temporally
/// annotated memberships off the family via the per-attribute conditions;
/// purely abstract annotations hold iff they hold at some time point.
/// Per-time-point concept extensions: facts with abstract annotations.
pub type TimedConceptExt = BTreeMap<Ident, BTreeSet<(Ident, AnnotationSet)>>;
/// Per-time-point role extensions.
pub type TimedRoleExt = BTreeMap<Ident, BTreeSet<(Ident, Ident, AnnotationSet)>>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TemporalFamily {
    pub lo: Nat,
    pub hi: Nat,
    pub individuals: BTreeSet<Ident>,
    pub abstract_values: BTreeSet<AnnoValue>,
    pub concepts: BTreeMap<Nat, TimedConceptExt>,
    pub roles: BTreeMap<Nat, TimedRoleExt>,
}

impl TemporalFamily {
    pub fn new(lo: u32, hi: u32) -> Self {
        TemporalFamily {
            lo: Nat::from(lo),
            hi: Nat::from(hi),
            ..Default::default()
        }
    }

    pub fn add_concept_at(&mut self, j: u32, concept: &str, ind: &str, f: AnnotationSet) {
        self.individuals.insert(Ident::new(ind));
        self.concepts
            .entry(Nat::from(j))
            .or_default()
            .entry(Ident::new(concept))
            .or_default()
            .insert((Ident::new(ind), f));
    }

    pub fn add_role_at(&mut self, j: u32, role: &str, subj: &str, obj: &str, f: AnnotationSet) {
        self.individuals.insert(Ident::new(subj));
        self.individuals.insert(Ident::new(obj));
        self.roles
            .entry(Nat::from(j))
            .or_default()
            .entry(Ident::new(role))
            .or_default()
            .insert((Ident::new(subj), Ident::new(obj), f));
    }

    fn concept_holds_at(&self, j: &Nat, name: &Ident, d: &Ident, fi: &AnnotationSet) -> bool {
        self.concepts
            .get(j)
            .and_then(|m| m.get(name))
            .is_some_and(|s| s.contains(&(d.clone(), fi.clone())))
    }

    fn role_holds_at(
        &self,
        j: &Nat,
        name: &Ident,
        d: &Ident,
        e: &Ident,
        fi: &AnnotationSet,
    ) -> bool {
        self.roles
            .get(j)
            .and_then(|m| m.get(name))
            .is_some_and(|s| s.contains(&(d.clone(), e.clone(), fi.clone())))
    }

    /// Membership of an annotated tuple in the derived global
    /// interpretation. `holds_at(j)` must answer membership of the tuple
    /// with the abstract part of `f` at time `j`.
    fn global_member(&self, f: &AnnotationSet, holds_at: &dyn Fn(&Nat) -> bool) -> bool {
        let temporal: Vec<(&Ident, &AnnoValue)> = f
            .iter()
            .filter_map(|(a, v)| match a {
                AnnoValue::Name(n) if temporal_attr(n).is_some() => Some((n, v)),
                _ => None,
            })
            .collect();
        let all_js = nat_range(&self.lo, &self.hi);
        if !all_js.iter().any(holds_at) {
            return false;
        }
        for (attr, value) in temporal {
            let Some(t) = temporal_attr(attr) else {
                continue;
            };
            let in_domain = |k: &Nat| *k >= self.lo && *k <= self.hi;
            let ok = match (t, value) {
                (TemporalAttr::Time, AnnoValue::Time(x)) => in_domain(x) && holds_at(x),
                (TemporalAttr::Before, AnnoValue::Time(x)) => {
                    in_domain(x)
                        && all_js.iter().any(|j| j < x && holds_at(j))
                }
                (TemporalAttr::After, AnnoValue::Time(x)) => {
                    in_domain(x)
                        && all_js.iter().any(|j| j > x && holds_at(j))
                }
                (TemporalAttr::Until, AnnoValue::Time(x)) => {
                    in_domain(x) && all_js.iter().filter(|j| *j <= x).all(holds_at)
                }
                (TemporalAttr::Since, AnnoValue::Time(x)) => {
                    in_domain(x) && all_js.iter().filter(|j| *j >= x).all(holds_at)
                }
                (TemporalAttr::During, AnnoValue::Interval(u, v)) => {
                    in_domain(u)
                        && in_domain(v)
                        && all_js
                            .iter()
                            .filter(|j| *j >= u && *j <= v)
                            .all(holds_at)
                }
                (TemporalAttr::Between, AnnoValue::Interval(u, v)) => {
                    in_domain(u)
                        && in_domain(v)
                        && all_js
                            .iter()
                            .any(|j| j >= u && j <= v && holds_at(j))
                }
                _ => false,
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

fn abstract_part_of(f: &AnnotationSet) -> AnnotationSet {
    f.iter()
        .filter(|(a, _)| !matches!(a, AnnoValue::Name(n) if temporal_attr(n).is_some()))
        .cloned()
        .collect()
}

fn spec_core(spec: &GroundSpecifier) -> AnnotationSet {
    spec.pairs
        .iter()
        .map(|(a, v)| (AnnoValue::Name(a.clone()), v.clone()))
        .collect()
}

/// Abstract pair candidates for open-specifier matching: non-temporal
/// attribute names paired with abstract values.
fn abstract_pair_space(family: &TemporalFamily, names: &BTreeSet<Ident>) -> Vec<(AnnoValue, AnnoValue)> {
    let mut out = Vec::new();
    for a in names {
        if temporal_attr(a).is_some() {
            continue;
        }
        for v in &family.abstract_values {
            out.push((AnnoValue::Name(a.clone()), v.clone()));
        }
    }
    out
}

/// Members of an annotated concept in the derived global interpretation.
fn concept_members_global(
    family: &TemporalFamily,
    name: &Ident,
    spec: &GroundSpecifier,
    names: &BTreeSet<Ident>,
) -> Result<BTreeSet<Ident>, TemporalError> {
    let core = spec_core(spec);
    let core_abs = abstract_part_of(&core);
    let mut out = BTreeSet::new();
    for d in &family.individuals {
        let member_with = |fi: &AnnotationSet| {
            family.global_member(&core, &|j| family.concept_holds_at(j, name, d, fi))
        };
        let hit = if !spec.open {
            member_with(&core_abs)
        } else {
            // Open: some finite superset matches; extending the temporal
            // part only strengthens the conditions, so it suffices to vary
            // the abstract part over supersets of the core.
            supersets_of(&core_abs, &abstract_pair_space(family, names))?
                .iter()
                .any(member_with)
        };
        if hit {
            out.insert(d.clone());
        }
    }
    Ok(out)
}

fn role_pairs_global(
    family: &TemporalFamily,
    role: &crate::syntax::Role,
    names: &BTreeSet<Ident>,
) -> Result<BTreeSet<(Ident, Ident)>, TemporalError> {
    let spec = role
        .spec
        .to_ground()
        .ok_or_else(|| TemporalError::NonGround(format!("role specifier on {}", role.name)))?;
    let core = spec_core(&spec);
    let core_abs = abstract_part_of(&core);
    let mut out = BTreeSet::new();
    for d in &family.individuals {
        for e in &family.individuals {
            let member_with = |fi: &AnnotationSet| {
                family.global_member(&core, &|j| family.role_holds_at(j, &role.name, d, e, fi))
            };
            let hit = if !spec.open {
                member_with(&core_abs)
            } else {
                supersets_of(&core_abs, &abstract_pair_space(family, names))?
                    .iter()
                    .any(member_with)
            };
            if hit {
                let pair = if role.inverse {
                    (e.clone(), d.clone())
                } else {
                    (d.clone(), e.clone())
                };
                out.insert(pair);
            }
        }
    }
    Ok(out)
}

fn supersets_of(
    core: &AnnotationSet,
    space: &[(AnnoValue, AnnoValue)],
) -> Result<Vec<AnnotationSet>, TemporalError> {
    let extra: Vec<&(AnnoValue, AnnoValue)> =
        space.iter().filter(|p| !core.contains(p)).collect();
    let n = extra.len();
    if n > 16 {
        return Err(TemporalError::Grounding(GroundingError::CapExceeded {
            pairs: n,
            cap: 4,
        }));
    }
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1u32 << n) {
        let mut s = core.clone();
        for (k, p) in extra.iter().enumerate() {
            if mask & (1 << k) != 0 {
                s.insert((*p).clone());
            }
        }
        out.push(s);
    }
    Ok(out)
}

fn basic_members_global(
    family: &TemporalFamily,
    b: &BasicConcept,
    names: &BTreeSet<Ident>,
) -> Result<BTreeSet<Ident>, TemporalError> {
    match b {
        BasicConcept::Atom { name, spec } => {
            let g = spec
                .to_ground()
                .ok_or_else(|| TemporalError::NonGround(format!("specifier on {name}")))?;
            concept_members_global(family, name, &g, names)
        }
        BasicConcept::Exists(r) => Ok(role_pairs_global(family, r, names)?
            .into_iter()
            .map(|(d, _)| d)
            .collect()),
    }
}

/// Checks a ground temporal ontology against the global interpretation
/// derived from a family of per-time-point interpretations. This is the
/// standard-semantics oracle for the temporal dialect; inclusions with
/// variables are out of scope.
pub fn check_temporal_model(
    family: &TemporalFamily,
    o: &Ontology,
) -> Result<ModelReport, TemporalError> {
    let names: BTreeSet<Ident> = annotation_domain(o).names;
    let mut failures = Vec::new();
    for (idx, ax) in o.axioms.iter().enumerate() {
        match ax {
            Axiom::ConceptAssertion {
                concept,
                individual,
                spec,
            } => {
                let g = spec
                    .to_ground()
                    .ok_or_else(|| TemporalError::NonGround(format!("axiom {idx}")))?;
                let members = concept_members_global(family, concept, &g, &names)?;
                if !members.contains(individual) {
                    failures.push(AxiomFailure {
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
                let r = crate::syntax::Role {
                    name: role.clone(),
                    inverse: false,
                    spec: spec.clone(),
                };
                let pairs = role_pairs_global(family, &r, &names)?;
                if !pairs.contains(&(subject.clone(), object.clone())) {
                    failures.push(AxiomFailure {
                        axiom: idx,
                        detail: format!("assertion {role}({subject},{object}) does not hold"),
                    });
                }
            }
            Axiom::ConceptInclusion { prefix, lhs, rhs } => {
                if !prefix.is_empty() {
                    return Err(TemporalError::NonGround(format!("axiom {idx} has a prefix")));
                }
                let mut left: Option<BTreeSet<Ident>> = None;
                for b in lhs {
                    let members = basic_members_global(family, b, &names)?;
                    left = Some(match left {
                        None => members,
                        Some(prev) => prev.intersection(&members).cloned().collect(),
                    });
                }
                let left = left.unwrap_or_default();
                let right = match rhs {
                    ConceptRhs::Bottom => BTreeSet::new(),
                    ConceptRhs::Basic(b) => basic_members_global(family, b, &names)?,
                };
                if let Some(w) = left.difference(&right).next() {
                    failures.push(AxiomFailure {
                        axiom: idx,
                        detail: format!("inclusion fails at {w}"),
                    });
                }
            }
            Axiom::RoleInclusion { prefix, lhs, rhs } => {
                if !prefix.is_empty() {
                    return Err(TemporalError::NonGround(format!("axiom {idx} has a prefix")));
                }
                let left = role_pairs_global(family, lhs, &names)?;
                let right = match rhs {
                    RoleRhs::Positive(r) => role_pairs_global(family, r, &names)?,
                    RoleRhs::Negative(r) => {
                        let pos = role_pairs_global(family, r, &names)?;
                        let mut out = BTreeSet::new();
                        for d in &family.individuals {
                            for e in &family.individuals {
                                if !pos.contains(&(d.clone(), e.clone())) {
                                    out.insert((d.clone(), e.clone()));
                                }
                            }
                        }
                        out
                    }
                };
                if let Some((d, e)) = left.difference(&right).next() {
                    failures.push(AxiomFailure {
                        axiom: idx,
                        detail: format!("role inclusion fails at ({d},{e})"),
                    });
                }
            }
        }
    }
    Ok(ModelReport { failures })
}
