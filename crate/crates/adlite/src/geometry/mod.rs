//! Exact-rational geometric interpretations: linear maps satisfying the
//! injectivity conditions, V-polytope regions per annotated name, ground
//! axiom satisfaction, model construction from finite models, transport
//! between linear maps, the induced-interpretation check, verification,
//! and convexity counterexample probes.

pub mod lp;
pub mod matrix;
pub mod region;

pub use matrix::{validate_linear_map, LinearMap, Q};
pub use region::{regions_disjoint, Region};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::grounding::{
    ground_ontology, GroundAxiom, GroundBasic, GroundConceptRhs, GroundOntology, GroundRole,
    GroundRoleRhs, GroundingConfig, GroundingError, NameKind, NameTable, PlainOntology,
};
use crate::reasoner;
use crate::semantics::FiniteInterpretation;
use crate::syntax::{ground_specifier_implies, GroundSpecifier, Ident, Ontology};

use matrix::{basis_vec, midpoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    DimensionMismatch { expected: usize, got: usize },
    UnvalidatedMap,
    SingularMap,
    NegativeRoleInclusionPresent,
    UnsupportedRegionStructure(String),
    StarCollision(Ident),
    MissingIndividual(Ident),
    DomainMismatch(String),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            GeometryError::UnvalidatedMap => write!(f, "linear map fails conditions (i)-(iii)"),
            GeometryError::SingularMap => write!(f, "linear map is singular"),
            GeometryError::NegativeRoleInclusionPresent => {
                write!(f, "negative role inclusions admit no convex model construction")
            }
            GeometryError::UnsupportedRegionStructure(s) => {
                write!(f, "unsupported region structure: {s}")
            }
            GeometryError::StarCollision(n) => {
                write!(f, "reserved annotation name `{n}` occurs in the domain")
            }
            GeometryError::MissingIndividual(n) => write!(f, "no vector for individual `{n}`"),
            GeometryError::DomainMismatch(s) => write!(f, "{s}"),
        }
    }
}

/// An `m`-dimensional `f`-geometric interpretation: one vector per
/// individual, one region per populated `(name, ground specifier)` pair.
/// Absent pairs denote the empty region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricInterpretation {
    pub map: LinearMap,
    pub individuals: BTreeMap<Ident, Vec<Q>>,
    pub concepts: BTreeMap<(Ident, GroundSpecifier), Region>,
    pub roles: BTreeMap<(Ident, GroundSpecifier), Region>,
}

impl GeometricInterpretation {
    /// Requires a map satisfying conditions (i)-(iii); caches its inverse.
    pub fn new(mut map: LinearMap) -> Result<Self, GeometryError> {
        if !validate_linear_map(&map) {
            return Err(GeometryError::UnvalidatedMap);
        }
        map.ensure_inverse()?;
        Ok(GeometricInterpretation {
            map,
            individuals: BTreeMap::new(),
            concepts: BTreeMap::new(),
            roles: BTreeMap::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.map.half_dim()
    }

    pub fn vector(&self, a: &Ident) -> Result<&Vec<Q>, GeometryError> {
        self.individuals
            .get(a)
            .ok_or_else(|| GeometryError::MissingIndividual(a.clone()))
    }

    pub fn set_individual(&mut self, a: Ident, v: Vec<Q>) -> Result<(), GeometryError> {
        if v.len() != self.m() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.m(),
                got: v.len(),
            });
        }
        self.individuals.insert(a, v);
        Ok(())
    }

    pub fn concept_region(&self, name: &Ident, spec: &GroundSpecifier) -> Region {
        self.concepts
            .get(&(name.clone(), spec.clone()))
            .cloned()
            .unwrap_or_else(|| Region::empty(self.m()))
    }

    pub fn role_region(&self, name: &Ident, spec: &GroundSpecifier) -> Region {
        self.roles
            .get(&(name.clone(), spec.clone()))
            .cloned()
            .unwrap_or_else(|| Region::empty(2 * self.m()))
    }

    pub fn set_concept_region(
        &mut self,
        name: Ident,
        spec: GroundSpecifier,
        region: Region,
    ) -> Result<(), GeometryError> {
        if region.dim != self.m() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.m(),
                got: region.dim,
            });
        }
        self.concepts.insert((name, spec), region);
        Ok(())
    }

    pub fn set_role_region(
        &mut self,
        name: Ident,
        spec: GroundSpecifier,
        region: Region,
    ) -> Result<(), GeometryError> {
        if region.dim != 2 * self.m() {
            return Err(GeometryError::DimensionMismatch {
                expected: 2 * self.m(),
                got: region.dim,
            });
        }
        self.roles.insert((name, spec), region);
        Ok(())
    }

    /// `f(η(a), η(b))`.
    pub fn pair_point(&self, a: &Ident, b: &Ident) -> Result<Vec<Q>, GeometryError> {
        let va = self.vector(a)?;
        let vb = self.vector(b)?;
        Ok(self.map.apply_pair(va, vb))
    }

    /// Region of a role expression: the stored region, or for `R-@S` the
    /// image of the stored region under `f ∘ swap ∘ f⁻¹`.
    pub fn role_expr_region(&self, role: &GroundRole) -> Result<Region, GeometryError> {
        let base = self.role_region(&role.name, &role.spec);
        if !role.inverse {
            return Ok(base);
        }
        let mut gens = Vec::with_capacity(base.generators.len());
        for g in &base.generators {
            let w = self.map.apply_inverse(g)?;
            let (u, v) = self.map.split(&w);
            gens.push(self.map.apply_pair(v, u));
        }
        Region::from_generators(2 * self.m(), gens)
    }

    /// `η(∃P)`: first-half projection of `f⁻¹` applied to the generators,
    /// exact because linear images of V-polytopes are V-polytopes.
    pub fn exists_region(&self, role: &GroundRole) -> Result<Region, GeometryError> {
        let oriented = self.role_expr_region(role)?;
        let mut gens = Vec::with_capacity(oriented.generators.len());
        for g in &oriented.generators {
            let w = self.map.apply_inverse(g)?;
            let (u, _) = self.map.split(&w);
            gens.push(u.to_vec());
        }
        Region::from_generators(self.m(), gens)
    }

    pub fn basic_region(&self, b: &GroundBasic) -> Result<Region, GeometryError> {
        match b {
            GroundBasic::Atom { name, spec } => Ok(self.concept_region(name, spec)),
            GroundBasic::Exists(r) => self.exists_region(r),
        }
    }
}

// --- Satisfaction of ground axioms ------------------------------------------

/// Containment of a V-polytope in a convex region: every generator is a
/// member.
fn hull_inside(lhs: &Region, rhs: &Region) -> Result<bool, GeometryError> {
    for g in &lhs.generators {
        if !rhs.contains_point(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Satisfaction of a ground axiom per the geometric semantics: assertions
/// are region memberships, inclusions are region containments.
///
/// Conjunctions on the left are exact when every conjunct region carries
/// the one-hot structure (hull intersection = hull of the generator-set
/// intersection); inclusions into bottom also accept two arbitrary
/// conjuncts via exact disjointness. Anything else is reported as
/// unsupported rather than approximated.
pub fn geometric_satisfies(
    eta: &GeometricInterpretation,
    ax: &GroundAxiom,
) -> Result<bool, GeometryError> {
    match ax {
        GroundAxiom::ConceptAssertion {
            concept,
            individual,
            spec,
        } => {
            let v = eta.vector(individual)?;
            eta.concept_region(concept, spec).contains_point(v)
        }
        GroundAxiom::RoleAssertion {
            role,
            subject,
            object,
            spec,
        } => {
            let w = eta.pair_point(subject, object)?;
            eta.role_region(role, spec).contains_point(&w)
        }
        GroundAxiom::RoleInclusion { lhs, rhs } => {
            let left = eta.role_expr_region(lhs)?;
            match rhs {
                GroundRoleRhs::Positive(q) => hull_inside(&left, &eta.role_expr_region(q)?),
                GroundRoleRhs::Negative(q) => regions_disjoint(&left, &eta.role_expr_region(q)?),
            }
        }
        GroundAxiom::ConceptInclusion { lhs, rhs } => {
            let regions: Vec<Region> = lhs
                .iter()
                .map(|b| eta.basic_region(b))
                .collect::<Result<_, _>>()?;
            let lhs_region = if regions.len() == 1 {
                Some(regions[0].clone())
            } else if regions.iter().all(|r| r.one_hot) {
                let mut acc = regions[0].clone();
                for r in &regions[1..] {
                    acc = acc.intersect_one_hot(r).expect("all conjuncts are one-hot");
                }
                Some(acc)
            } else {
                None
            };
            match (lhs_region, rhs) {
                (Some(l), GroundConceptRhs::Bottom) => Ok(l.is_empty()),
                (Some(l), GroundConceptRhs::Basic(b)) => hull_inside(&l, &eta.basic_region(b)?),
                (None, GroundConceptRhs::Bottom) if regions.len() == 2 => {
                    regions_disjoint(&regions[0], &regions[1])
                }
                (None, _) => Err(GeometryError::UnsupportedRegionStructure(String::from(
                    "containment of an intersection of non-one-hot hulls",
                ))),
            }
        }
    }
}

// --- Model construction ------------------------------------------------------

/// Builds the convex geometric model of a finite model `j` of the
/// translated plain ontology: `m = max(1, |Δ_i|)`, individuals one-hot,
/// `η(E@S)` the hull of the vectors (or `f`-images of vector pairs) of the
/// members of `E_S`. Plain names missing from the table are read as the
/// original name with the closed empty specifier.
pub fn build_geometric_model(
    j: &FiniteInterpretation,
    table: &NameTable,
    plain: &PlainOntology,
    map: LinearMap,
) -> Result<GeometricInterpretation, GeometryError> {
    if plain.has_negative_role_inclusion() {
        return Err(GeometryError::NegativeRoleInclusionPresent);
    }
    let m = j.individuals.len().max(1);
    if map.half_dim() != m {
        return Err(GeometryError::DimensionMismatch {
            expected: m,
            got: map.half_dim(),
        });
    }
    let mut eta = GeometricInterpretation::new(map)?;
    for (k, d) in j.individuals.iter().enumerate() {
        eta.set_individual(d.clone(), basis_vec(m, k))?;
    }

    let resolve =
        |kind: NameKind, plain_name: &Ident| -> Result<(Ident, GroundSpecifier), GeometryError> {
            match table.resolve(plain_name) {
                None => Ok((plain_name.clone(), GroundSpecifier::closed_empty())),
                Some((k, name, spec)) if *k == kind => Ok((name.clone(), spec.clone())),
                Some(_) => Err(GeometryError::DomainMismatch(format!(
                    "plain name `{plain_name}` resolves to the wrong kind"
                ))),
            }
        };

    for (plain_name, ext) in &j.concepts {
        let (name, spec) = resolve(NameKind::Concept, plain_name)?;
        let gens: Vec<Vec<Q>> = ext
            .iter()
            .map(|(d, _)| eta.vector(d).cloned())
            .collect::<Result<_, _>>()?;
        let region = Region::from_generators(m, gens)?;
        eta.set_concept_region(name, spec, region)?;
    }
    for (plain_name, ext) in &j.roles {
        let (name, spec) = resolve(NameKind::Role, plain_name)?;
        let gens: Vec<Vec<Q>> = ext
            .iter()
            .map(|(d, e, _)| eta.pair_point(d, e))
            .collect::<Result<_, _>>()?;
        let region = Region::from_generators(2 * m, gens)?;
        eta.set_role_region(name, spec, region)?;
    }
    Ok(eta)
}

/// A fact `E(t)@S` satisfied by a geometric interpretation over named
/// individuals.
pub type PhiFact = (NameKind, Ident, GroundSpecifier, Vec<Ident>);

/// `Φ(η)`: all facts over named individuals and populated specifiers that
/// the interpretation satisfies, decided by exact membership.
pub fn phi(eta: &GeometricInterpretation) -> Result<BTreeSet<PhiFact>, GeometryError> {
    let mut out = BTreeSet::new();
    for ((name, spec), region) in &eta.concepts {
        for (d, v) in &eta.individuals {
            if region.contains_point(v)? {
                out.insert((
                    NameKind::Concept,
                    name.clone(),
                    spec.clone(),
                    alloc::vec![d.clone()],
                ));
            }
        }
    }
    for ((name, spec), region) in &eta.roles {
        for d in eta.individuals.keys() {
            for e in eta.individuals.keys() {
                let w = eta.pair_point(d, e)?;
                if region.contains_point(&w)? {
                    out.insert((
                        NameKind::Role,
                        name.clone(),
                        spec.clone(),
                        alloc::vec![d.clone(), e.clone()],
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Transport to another combining map: same individuals and concept
/// regions, role generators mapped through `f' ∘ f⁻¹`; satisfaction of
/// every ground axiom is preserved.
pub fn transport_model(
    eta: &GeometricInterpretation,
    map2: LinearMap,
) -> Result<GeometricInterpretation, GeometryError> {
    if map2.half_dim() != eta.m() {
        return Err(GeometryError::DimensionMismatch {
            expected: eta.m(),
            got: map2.half_dim(),
        });
    }
    let mut out = GeometricInterpretation::new(map2)?;
    out.individuals = eta.individuals.clone();
    out.concepts = eta.concepts.clone();
    for ((name, spec), region) in &eta.roles {
        let gens: Vec<Vec<Q>> = region
            .generators
            .iter()
            .map(|g| Ok(out.map.apply(&eta.map.apply_inverse(g)?)))
            .collect::<Result<_, GeometryError>>()?;
        let moved = Region::from_generators(2 * eta.m(), gens)?;
        out.roles.insert((name.clone(), spec.clone()), moved);
    }
    Ok(out)
}

// --- Induced interpretation check ---------------------------------------------

/// Outcome of evaluating one ground axiom in the induced interpretation
/// `I(η, D*)` restricted to a probe set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InducedOutcome {
    NoViolationFound,
    Violated(Vec<Q>),
}

fn spec_names(spec: &GroundSpecifier) -> BTreeSet<Ident> {
    let mut out = BTreeSet::new();
    for (a, v) in &spec.pairs {
        out.insert(a.clone());
        if let crate::syntax::AnnoValue::Name(n) = v {
            out.insert(n.clone());
        }
    }
    out
}

fn axiom_spec_names(ax: &GroundAxiom) -> BTreeSet<Ident> {
    let mut out = BTreeSet::new();
    let mut add = |s: &GroundSpecifier| {
        out.extend(spec_names(s));
    };
    match ax {
        GroundAxiom::ConceptAssertion { spec, .. } | GroundAxiom::RoleAssertion { spec, .. } => {
            add(spec)
        }
        GroundAxiom::ConceptInclusion { lhs, rhs } => {
            for b in lhs {
                match b {
                    GroundBasic::Atom { spec, .. } => add(spec),
                    GroundBasic::Exists(r) => add(&r.spec),
                }
            }
            if let GroundConceptRhs::Basic(b) = rhs {
                match b {
                    GroundBasic::Atom { spec, .. } => add(spec),
                    GroundBasic::Exists(r) => add(&r.spec),
                }
            }
        }
        GroundAxiom::RoleInclusion { lhs, rhs } => {
            add(&lhs.spec);
            match rhs {
                GroundRoleRhs::Positive(r) | GroundRoleRhs::Negative(r) => add(&r.spec),
            }
        }
    }
    out
}

/// Membership scans in `I(η, D*)`. A point belongs to `(A@S)^I` iff some
/// populated specifier `T` built on `D` matches `S` (equal to `S` when `S`
/// is closed; any pair superset when `S` is open) and the point lies in
/// the `T` region. Monotonicity of regions makes this coincide with the
/// direct region lookup.
struct Induced<'a> {
    eta: &'a GeometricInterpretation,
    domain: &'a BTreeSet<Ident>,
}

impl Induced<'_> {
    fn spec_matches(&self, populated: &GroundSpecifier, query: &GroundSpecifier) -> bool {
        if !spec_names(populated).is_subset(self.domain) {
            return false;
        }
        if query.open {
            query.pairs.is_subset(&populated.pairs)
        } else {
            populated == query
        }
    }

    fn concept_member(
        &self,
        name: &Ident,
        spec: &GroundSpecifier,
        p: &[Q],
    ) -> Result<bool, GeometryError> {
        for ((n, t), region) in &self.eta.concepts {
            if n == name && self.spec_matches(t, spec) && region.contains_point(p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn role_member(&self, role: &GroundRole, w: &[Q]) -> Result<bool, GeometryError> {
        for (n, t) in self.eta.roles.keys() {
            if n == &role.name && self.spec_matches(t, &role.spec) {
                let oriented = self.eta.role_expr_region(&GroundRole {
                    name: role.name.clone(),
                    inverse: role.inverse,
                    spec: t.clone(),
                })?;
                if oriented.contains_point(w)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn exists_member(&self, role: &GroundRole, p: &[Q]) -> Result<bool, GeometryError> {
        for (n, t) in self.eta.roles.keys() {
            if n == &role.name && self.spec_matches(t, &role.spec) {
                let ex = self.eta.exists_region(&GroundRole {
                    name: role.name.clone(),
                    inverse: role.inverse,
                    spec: t.clone(),
                })?;
                if ex.contains_point(p)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn basic_member(&self, b: &GroundBasic, p: &[Q]) -> Result<bool, GeometryError> {
        match b {
            GroundBasic::Atom { name, spec } => self.concept_member(name, spec, p),
            GroundBasic::Exists(r) => self.exists_member(r, p),
        }
    }
}

/// Default probe points: named vectors, all region generators, and all
/// pairwise midpoints, split by ambient dimension.
fn default_probes(eta: &GeometricInterpretation) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    let mut low: Vec<Vec<Q>> = eta.individuals.values().cloned().collect();
    for region in eta.concepts.values() {
        low.extend(region.generators.iter().cloned());
    }
    let mut high: Vec<Vec<Q>> = Vec::new();
    for region in eta.roles.values() {
        high.extend(region.generators.iter().cloned());
    }
    for va in eta.individuals.values() {
        for vb in eta.individuals.values() {
            high.push(eta.map.apply_pair(va, vb));
        }
    }
    let mids = |points: &[Vec<Q>]| -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                out.push(midpoint(p, q));
            }
        }
        out
    };
    let lm = mids(&low);
    low.extend(lm);
    let hm = mids(&high);
    high.extend(hm);
    low.sort();
    low.dedup();
    high.sort();
    high.dedup();
    (low, high)
}

/// Evaluates a ground axiom in the induced interpretation `I(η, D*)`
/// restricted to the probe points (defaults plus `extra_probes`, routed by
/// dimension). Sound with respect to `geometric_satisfies`: a geometrically
/// satisfied axiom is never reported violated.
pub fn induced_check(
    eta: &GeometricInterpretation,
    domain: &BTreeSet<Ident>,
    star: &Ident,
    ax: &GroundAxiom,
    extra_probes: &[Vec<Q>],
) -> Result<InducedOutcome, GeometryError> {
    if domain.contains(star) {
        return Err(GeometryError::StarCollision(star.clone()));
    }
    let names = axiom_spec_names(ax);
    if !names.is_subset(domain) {
        return Err(GeometryError::DomainMismatch(format!(
            "axiom uses annotation names outside the induced domain: {:?}",
            names.difference(domain).collect::<Vec<_>>()
        )));
    }
    let ind = Induced { eta, domain };
    let (mut low, mut high) = default_probes(eta);
    for p in extra_probes {
        if p.len() == eta.m() {
            low.push(p.clone());
        } else if p.len() == 2 * eta.m() {
            high.push(p.clone());
        }
    }

    match ax {
        GroundAxiom::ConceptAssertion {
            concept,
            individual,
            spec,
        } => {
            let v = eta.vector(individual)?;
            if ind.concept_member(concept, spec, v)? {
                Ok(InducedOutcome::NoViolationFound)
            } else {
                Ok(InducedOutcome::Violated(v.clone()))
            }
        }
        GroundAxiom::RoleAssertion {
            role,
            subject,
            object,
            spec,
        } => {
            let w = eta.pair_point(subject, object)?;
            let r = GroundRole {
                name: role.clone(),
                inverse: false,
                spec: spec.clone(),
            };
            if ind.role_member(&r, &w)? {
                Ok(InducedOutcome::NoViolationFound)
            } else {
                Ok(InducedOutcome::Violated(w))
            }
        }
        GroundAxiom::ConceptInclusion { lhs, rhs } => {
            for p in &low {
                let mut all = true;
                for b in lhs {
                    if !ind.basic_member(b, p)? {
                        all = false;
                        break;
                    }
                }
                if !all {
                    continue;
                }
                let ok = match rhs {
                    GroundConceptRhs::Bottom => false,
                    GroundConceptRhs::Basic(b) => ind.basic_member(b, p)?,
                };
                if !ok {
                    return Ok(InducedOutcome::Violated(p.clone()));
                }
            }
            Ok(InducedOutcome::NoViolationFound)
        }
        GroundAxiom::RoleInclusion { lhs, rhs } => {
            for w in &high {
                if !ind.role_member(lhs, w)? {
                    continue;
                }
                let ok = match rhs {
                    GroundRoleRhs::Positive(q) => ind.role_member(q, w)?,
                    GroundRoleRhs::Negative(q) => !ind.role_member(q, w)?,
                };
                if !ok {
                    return Ok(InducedOutcome::Violated(w.clone()));
                }
            }
            Ok(InducedOutcome::NoViolationFound)
        }
    }
}

// --- Verification ------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Axiom,
    Monotonicity,
    Convexity,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub kind: VerifyKind,
    pub axiom: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn is_model(&self) -> bool {
        self.failures.is_empty()
    }
}

fn describe_ground_axiom(ax: &GroundAxiom) -> String {
    crate::syntax::print_axiom(&ax.to_axiom())
}

/// Checks all assertions and all ground instances of `o` against `η`, plus
/// the definitional side conditions: monotonicity of regions along
/// specifier implication and midpoint convexity of every populated region.
pub fn verify_geometric_model(
    eta: &GeometricInterpretation,
    o: &Ontology,
    config: GroundingConfig,
) -> Result<VerifyReport, GroundingError> {
    let ground = ground_ontology(o, config)?;
    Ok(verify_against_ground(eta, &ground))
}

/// Like [`verify_geometric_model`] but over an already-ground ontology.
pub fn verify_against_ground(
    eta: &GeometricInterpretation,
    ground: &GroundOntology,
) -> VerifyReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (idx, gax) in ground.axioms.iter().enumerate() {
        checked += 1;
        match geometric_satisfies(eta, gax) {
            Ok(true) => {}
            Ok(false) => failures.push(VerifyFailure {
                kind: VerifyKind::Axiom,
                axiom: Some(idx),
                detail: format!("not satisfied: {}", describe_ground_axiom(gax)),
            }),
            Err(GeometryError::UnsupportedRegionStructure(s)) => failures.push(VerifyFailure {
                kind: VerifyKind::Unsupported,
                axiom: Some(idx),
                detail: format!("{s}: {}", describe_ground_axiom(gax)),
            }),
            Err(e) => failures.push(VerifyFailure {
                kind: VerifyKind::Axiom,
                axiom: Some(idx),
                detail: format!("{e}: {}", describe_ground_axiom(gax)),
            }),
        }
    }

    // Monotonicity: populated S => T forces region containment.
    fn check_mono(
        keys: &BTreeMap<(Ident, GroundSpecifier), Region>,
        failures: &mut Vec<VerifyFailure>,
    ) {
        let mut grouped: BTreeMap<&Ident, Vec<&GroundSpecifier>> = BTreeMap::new();
        for (name, spec) in keys.keys() {
            grouped.entry(name).or_default().push(spec);
        }
        for (name, specs) in grouped {
            for s in &specs {
                for t in &specs {
                    if s == t || !ground_specifier_implies(s, t) {
                        continue;
                    }
                    let rs = &keys[&(name.clone(), (**s).clone())];
                    let rt = &keys[&(name.clone(), (**t).clone())];
                    if hull_inside(rs, rt) != Ok(true) {
                        failures.push(VerifyFailure {
                            kind: VerifyKind::Monotonicity,
                            axiom: None,
                            detail: format!("region of {name} not monotone along implication"),
                        });
                    }
                }
            }
        }
    }
    check_mono(&eta.concepts, &mut failures);
    check_mono(&eta.roles, &mut failures);

    // Convexity spot check: midpoints of generator pairs stay inside.
    for ((name, _), region) in eta.concepts.iter().chain(eta.roles.iter()) {
        for mp in region.generator_midpoints() {
            if region.contains_point(&mp) != Ok(true) {
                failures.push(VerifyFailure {
                    kind: VerifyKind::Convexity,
                    axiom: None,
                    detail: format!("midpoint escapes the region of {name}"),
                });
            }
        }
    }

    VerifyReport { checked, failures }
}

// --- Midpoint convexity probe ---------------------------------------------------

/// Diagnostic role-conjunction rule (`R1 ⊓ R2 ⊑ R3`); not expressible in
/// the ontology syntax, accepted here for counterexample reproduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleConjunctionRule {
    pub lhs: Vec<(Ident, GroundSpecifier)>,
    pub rhs: (Ident, GroundSpecifier),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeStep {
    RoleMembership {
        role: Ident,
        spec: GroundSpecifier,
    },
    ConceptMembership {
        concept: Ident,
        spec: GroundSpecifier,
    },
    /// Membership forced by the temporal attribute semantics (a `during` or
    /// `time` annotation covered by per-time-point memberships).
    TemporalJoin {
        kind: NameKind,
        name: Ident,
        spec: GroundSpecifier,
    },
    RoleConjunction {
        role: Ident,
        spec: GroundSpecifier,
    },
    InclusionFired {
        axiom: usize,
        name: Ident,
        spec: GroundSpecifier,
    },
    BottomViolation {
        axiom: usize,
    },
    NegativeViolation {
        axiom: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeDiagnostic {
    pub pair: (Ident, Ident),
    pub point: Vec<Q>,
    pub chain: Vec<ProbeStep>,
    pub violated: String,
}

type FactKey = (Ident, GroundSpecifier);

fn fact_matches(facts: &BTreeSet<FactKey>, name: &Ident, query: &GroundSpecifier) -> bool {
    facts
        .iter()
        .any(|(n, t)| n == name && (t == query || ground_specifier_implies(t, query)))
}

/// For every pair of named individuals, tests the midpoint `δ` (and its
/// pair image `f(δ,δ)`) against all populated regions, closes the
/// memberships under the temporal attribute semantics, the diagnostic
/// role-conjunction rules and the positive ground inclusions of `o`, and
/// reports every bottom or negative-inclusion violation forced by
/// convexity.
pub fn midpoint_probe(
    eta: &GeometricInterpretation,
    o: &Ontology,
    extra_rules: &[RoleConjunctionRule],
    config: GroundingConfig,
) -> Result<Vec<ProbeDiagnostic>, GroundingError> {
    let ground = ground_ontology(o, config)?;
    let occurring = ground.occurring();
    let mut out = Vec::new();

    let inds: Vec<(&Ident, &Vec<Q>)> = eta.individuals.iter().collect();
    for (i, (a, va)) in inds.iter().enumerate() {
        for (b, vb) in &inds[i + 1..] {
            let delta = midpoint(va, vb);
            let w = eta.map.apply_pair(&delta, &delta);

            let mut chain: Vec<ProbeStep> = Vec::new();
            let mut cfacts: BTreeSet<FactKey> = BTreeSet::new();
            let mut rfacts: BTreeSet<FactKey> = BTreeSet::new();

            for ((name, spec), region) in &eta.concepts {
                if region.contains_point(&delta) == Ok(true)
                    && cfacts.insert((name.clone(), spec.clone()))
                {
                    chain.push(ProbeStep::ConceptMembership {
                        concept: name.clone(),
                        spec: spec.clone(),
                    });
                }
            }
            for ((name, spec), region) in &eta.roles {
                if region.contains_point(&w) == Ok(true)
                    && rfacts.insert((name.clone(), spec.clone()))
                {
                    chain.push(ProbeStep::RoleMembership {
                        role: name.clone(),
                        spec: spec.clone(),
                    });
                }
            }

            let mut violations: Vec<(usize, String)> = Vec::new();
            loop {
                let mut changed = false;

                for (kind, name, spec) in &occurring {
                    let facts = match kind {
                        NameKind::Concept => &cfacts,
                        NameKind::Role => &rfacts,
                    };
                    if !spec.has_temporal_pair() || facts.contains(&(name.clone(), spec.clone()))
                    {
                        continue;
                    }
                    if temporal_pairs_covered(facts, name, spec) {
                        match kind {
                            NameKind::Concept => {
                                cfacts.insert((name.clone(), spec.clone()));
                            }
                            NameKind::Role => {
                                rfacts.insert((name.clone(), spec.clone()));
                            }
                        }
                        chain.push(ProbeStep::TemporalJoin {
                            kind: *kind,
                            name: name.clone(),
                            spec: spec.clone(),
                        });
                        changed = true;
                    }
                }

                for rule in extra_rules {
                    if rfacts.contains(&rule.rhs) {
                        continue;
                    }
                    if rule.lhs.iter().all(|(n, s)| fact_matches(&rfacts, n, s)) {
                        rfacts.insert(rule.rhs.clone());
                        chain.push(ProbeStep::RoleConjunction {
                            role: rule.rhs.0.clone(),
                            spec: rule.rhs.1.clone(),
                        });
                        changed = true;
                    }
                }

                for (idx, gax) in ground.axioms.iter().enumerate() {
                    match gax {
                        GroundAxiom::ConceptInclusion { lhs, rhs } => {
                            let holds = lhs.iter().all(|bc| match bc {
                                GroundBasic::Atom { name, spec } => {
                                    fact_matches(&cfacts, name, spec)
                                }
                                GroundBasic::Exists(r) => fact_matches(&rfacts, &r.name, &r.spec),
                            });
                            if !holds {
                                continue;
                            }
                            match rhs {
                                GroundConceptRhs::Bottom => {
                                    if !violations.iter().any(|(i, _)| *i == idx) {
                                        violations.push((idx, describe_ground_axiom(gax)));
                                        chain.push(ProbeStep::BottomViolation { axiom: idx });
                                    }
                                }
                                GroundConceptRhs::Basic(GroundBasic::Atom { name, spec }) => {
                                    if cfacts.insert((name.clone(), spec.clone())) {
                                        chain.push(ProbeStep::InclusionFired {
                                            axiom: idx,
                                            name: name.clone(),
                                            spec: spec.clone(),
                                        });
                                        changed = true;
                                    }
                                }
                                GroundConceptRhs::Basic(GroundBasic::Exists(_)) => {}
                            }
                        }
                        GroundAxiom::RoleInclusion {
                            lhs,
                            rhs: GroundRoleRhs::Negative(q),
                        } => {
                            if fact_matches(&rfacts, &lhs.name, &lhs.spec)
                                && fact_matches(&rfacts, &q.name, &q.spec)
                                && !violations.iter().any(|(i, _)| *i == idx)
                            {
                                violations.push((idx, describe_ground_axiom(gax)));
                                chain.push(ProbeStep::NegativeViolation { axiom: idx });
                            }
                        }
                        GroundAxiom::RoleInclusion {
                            lhs,
                            rhs: GroundRoleRhs::Positive(q),
                        }
                            if !lhs.inverse
                                && !q.inverse
                                && fact_matches(&rfacts, &lhs.name, &lhs.spec)
                                && rfacts.insert((q.name.clone(), q.spec.clone()))
                            => {
                                chain.push(ProbeStep::InclusionFired {
                                    axiom: idx,
                                    name: q.name.clone(),
                                    spec: q.spec.clone(),
                                });
                                changed = true;
                            }
                        _ => {}
                    }
                }

                if !changed {
                    break;
                }
            }

            for (_, desc) in violations {
                out.push(ProbeDiagnostic {
                    pair: ((*a).clone(), (*b).clone()),
                    point: delta.clone(),
                    chain: chain.clone(),
                    violated: desc,
                });
            }
        }
    }
    Ok(out)
}

/// All time/during pairs of `spec` are covered by per-time-point facts
/// with the same abstract part.
fn temporal_pairs_covered(
    facts: &BTreeSet<FactKey>,
    name: &Ident,
    spec: &GroundSpecifier,
) -> bool {
    use crate::syntax::{AnnoValue, TemporalAttr};
    let time_attr = Ident::new(TemporalAttr::Time.name());
    for (attr, value) in spec.temporal_pairs() {
        let at_time = |k: &crate::syntax::Nat| -> bool {
            let query = spec.with_pair(&time_attr, &AnnoValue::Time(k.clone()));
            fact_matches(facts, name, &query)
        };
        let covered = match (crate::syntax::temporal_attr(attr), value) {
            (Some(TemporalAttr::Time), AnnoValue::Time(k)) => at_time(k),
            (Some(TemporalAttr::During), AnnoValue::Interval(u, v)) => {
                let mut j = u.clone();
                let mut all = true;
                loop {
                    if !at_time(&j) {
                        all = false;
                        break;
                    }
                    if j == *v {
                        break;
                    }
                    j += 1u32;
                }
                all
            }
            // until/since/before/after/between need unbounded coverage; the
            // probe does not derive them.
            _ => false,
        };
        if !covered {
            return false;
        }
    }
    true
}

// --- Pipeline helpers -----------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    Grounding(GroundingError),
    Unsatisfiable,
    Geometry(GeometryError),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Grounding(e) => write!(f, "{e}"),
            BuildError::Unsatisfiable => write!(f, "ontology is unsatisfiable"),
            BuildError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl From<GroundingError> for BuildError {
    fn from(e: GroundingError) -> Self {
        BuildError::Grounding(e)
    }
}

impl From<GeometryError> for BuildError {
    fn from(e: GeometryError) -> Self {
        BuildError::Geometry(e)
    }
}

/// Output of the full construction; the intermediate products are kept for
/// verification and inspection.
#[derive(Clone, Debug)]
pub struct BuiltModel {
    pub ground: GroundOntology,
    pub plain: PlainOntology,
    pub table: NameTable,
    pub facts: reasoner::FactBase,
    pub model: FiniteInterpretation,
    pub eta: GeometricInterpretation,
}

/// Ground → translate → saturate → finite model → one-hot geometric model.
/// `map` defaults to vector concatenation in the required dimension.
pub fn build_model_for_ontology(
    o: &Ontology,
    config: GroundingConfig,
    map: Option<LinearMap>,
) -> Result<BuiltModel, BuildError> {
    let ground = ground_ontology(o, config)?;
    let mut built = build_model_for_ground(ground)?;
    if let Some(f) = map {
        built.eta = build_geometric_model(&built.model, &built.table, &built.plain, f)?;
    }
    Ok(built)
}

/// The same construction starting from an already-ground ontology.
pub fn build_model_for_ground(ground: GroundOntology) -> Result<BuiltModel, BuildError> {
    let (plain, table) = crate::grounding::dllite_translate(&ground);
    let facts = reasoner::saturate(&plain);
    if facts.unsat {
        return Err(BuildError::Unsatisfiable);
    }
    let model = reasoner::fact_base_interpretation(&facts);
    let m = model.individuals.len().max(1);
    let eta = build_geometric_model(&model, &table, &plain, LinearMap::concatenation(m))?;
    Ok(BuiltModel {
        ground,
        plain,
        table,
        facts,
        model,
        eta,
    })
}

/// One-hot embedding of the assertions alone (no saturation, no bridges):
/// the raw picture used by the counterexample probes.
pub fn naive_assertion_embedding(o: &Ontology) -> Result<GeometricInterpretation, GeometryError> {
    let mut individuals = BTreeSet::new();
    for ax in &o.axioms {
        match ax {
            crate::syntax::Axiom::ConceptAssertion { individual, .. } => {
                individuals.insert(individual.clone());
            }
            crate::syntax::Axiom::RoleAssertion {
                subject, object, ..
            } => {
                individuals.insert(subject.clone());
                individuals.insert(object.clone());
            }
            _ => {}
        }
    }
    let m = individuals.len().max(1);
    let mut eta = GeometricInterpretation::new(LinearMap::concatenation(m))?;
    for (k, d) in individuals.iter().enumerate() {
        eta.set_individual(d.clone(), basis_vec(m, k))?;
    }
    let mut cgens: BTreeMap<(Ident, GroundSpecifier), Vec<Vec<Q>>> = BTreeMap::new();
    let mut rgens: BTreeMap<(Ident, GroundSpecifier), Vec<Vec<Q>>> = BTreeMap::new();
    for ax in &o.axioms {
        match ax {
            crate::syntax::Axiom::ConceptAssertion {
                concept,
                individual,
                spec,
            } => {
                let g = spec.to_ground().ok_or_else(|| {
                    GeometryError::DomainMismatch(String::from("non-ground assertion"))
                })?;
                let v = eta.vector(individual)?.clone();
                cgens.entry((concept.clone(), g)).or_default().push(v);
            }
            crate::syntax::Axiom::RoleAssertion {
                role,
                subject,
                object,
                spec,
            } => {
                let g = spec.to_ground().ok_or_else(|| {
                    GeometryError::DomainMismatch(String::from("non-ground assertion"))
                })?;
                let w = eta.pair_point(subject, object)?;
                rgens.entry((role.clone(), g)).or_default().push(w);
            }
            _ => {}
        }
    }
    for ((name, spec), gens) in cgens {
        let region = Region::from_generators(m, gens)?;
        eta.set_concept_region(name, spec, region)?;
    }
    for ((name, spec), gens) in rgens {
        let region = Region::from_generators(2 * m, gens)?;
        eta.set_role_region(name, spec, region)?;
    }
    Ok(eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounding::GroundingMode;
    use crate::syntax::parse_ontology;
    use alloc::vec;
    use matrix::q_ratio;

    fn id(s: &str) -> Ident {
        Ident::new(s)
    }

    fn cfg() -> GroundingConfig {
        GroundingConfig {
            mode: GroundingMode::PairRestricted,
            cap: 4,
        }
    }

    fn spec_of(s: &str) -> GroundSpecifier {
        let o = parse_ontology(&alloc::format!("Zc(zz)@{s}")).unwrap();
        match &o.axioms[0] {
            crate::syntax::Axiom::ConceptAssertion { spec, .. } => spec.to_ground().unwrap(),
            _ => unreachable!(),
        }
    }

    const TEMPORAL_CE: &str = "R(a,a)@{time:1}\nR(b,b)@{time:1}\nR(a,b)@{time:2}\nR(b,a)@{time:2}\n\
                       some R@{during:[1,2]} sub A\nsome R@{time:1} and A sub bot";

    const ROLE_CONJ_CE: &str = "R1(a,a)\nR1(b,b)\nR2(a,b)\nR2(b,a)\nsome R1 sub A\nsome R3 and A sub bot";

    fn chase_built() -> BuiltModel {
        let o = parse_ontology("A(a)\nA sub some R\nsome R- sub B").unwrap();
        build_model_for_ontology(&o, cfg(), None).unwrap()
    }

    #[test]
    fn build_assigns_basis_vectors_and_hulls() {
        let o = parse_ontology("A(a)\nR(a,b)").unwrap();
        let built = build_model_for_ontology(&o, cfg(), None).unwrap();
        let eta = &built.eta;
        assert_eq!(eta.m(), 2);
        assert_eq!(eta.vector(&id("a")).unwrap(), &basis_vec(2, 0));
        assert_eq!(eta.vector(&id("b")).unwrap(), &basis_vec(2, 1));
        let empty = GroundSpecifier::closed_empty();
        let ra = eta.concept_region(&id("A"), &empty);
        assert_eq!(ra.generators, vec![basis_vec(2, 0)]);
        let rr = eta.role_region(&id("R"), &empty);
        assert_eq!(rr.generators.len(), 1);
        assert_eq!(
            rr.generators[0],
            eta.map
                .apply_pair(&basis_vec(2, 0), &basis_vec(2, 1))
        );
    }

    #[test]
    fn lone_individual_without_facts_builds_a_one_dimensional_empty_model() {
        let mut j = crate::semantics::FiniteInterpretation::new();
        j.individuals.insert(id("a"));
        let eta = build_geometric_model(
            &j,
            &crate::grounding::NameTable::default(),
            &crate::grounding::PlainOntology::default(),
            LinearMap::concatenation(1),
        )
        .unwrap();
        assert_eq!(eta.m(), 1);
        assert!(eta.concepts.is_empty());
        assert!(eta.roles.is_empty());
    }

    #[test]
    fn phi_matches_fact_base_on_chase_example() {
        let built = chase_built();
        let facts = phi(&built.eta).unwrap();
        // Expected: A(a), R(a,w), B(w) and nothing else over named tuples.
        let mut expected = BTreeSet::new();
        let w = built.facts.witnesses.iter().next().unwrap().clone();
        let empty = GroundSpecifier::closed_empty();
        let open = GroundSpecifier::open_empty();
        expected.insert((NameKind::Concept, id("A"), empty.clone(), vec![id("a")]));
        expected.insert((NameKind::Concept, id("B"), open.clone(), vec![w.clone()]));
        expected.insert((
            NameKind::Role,
            id("R"),
            open.clone(),
            vec![id("a"), w.clone()],
        ));
        // The closed-empty A bridges into the open-empty A.
        expected.insert((NameKind::Concept, id("A"), open, vec![id("a")]));
        assert_eq!(facts, expected);
    }

    #[test]
    fn satisfies_assertion_by_generator_membership() {
        let o = parse_ontology("A(a)@{p:q}").unwrap();
        let built = build_model_for_ontology(&o, cfg(), None).unwrap();
        let g = crate::grounding::ground_ontology(&o, cfg()).unwrap();
        assert_eq!(geometric_satisfies(&built.eta, &g.axioms[0]), Ok(true));
    }

    #[test]
    fn satisfies_conjunction_inside_conjunct() {
        let o = parse_ontology("A(a)\nB(a)\nA and B sub A").unwrap();
        let built = build_model_for_ontology(&o, cfg(), None).unwrap();
        let g = crate::grounding::ground_ontology(&o, cfg()).unwrap();
        let incl = g
            .axioms
            .iter()
            .find(|ax| matches!(ax, GroundAxiom::ConceptInclusion { .. }))
            .unwrap();
        assert_eq!(geometric_satisfies(&built.eta, incl), Ok(true));
    }

    #[test]
    fn counterexample_regions_violate_bottom_inclusion_at_midpoint() {
        let o = parse_ontology(TEMPORAL_CE).unwrap();
        let mut eta = naive_assertion_embedding(&o).unwrap();
        // Force the paper's derivation: A contains the midpoint of a and b.
        let delta = midpoint(
            &eta.vector(&id("a")).unwrap().clone(),
            &eta.vector(&id("b")).unwrap().clone(),
        );
        eta.set_concept_region(
            id("A"),
            GroundSpecifier::open_empty(),
            Region::from_generators(2, vec![delta.clone()]).unwrap(),
        )
        .unwrap();
        let g = crate::grounding::ground_ontology(&o, cfg()).unwrap();
        let bottom = g
            .axioms
            .iter()
            .find(|ax| {
                matches!(
                    ax,
                    GroundAxiom::ConceptInclusion {
                        rhs: GroundConceptRhs::Bottom,
                        ..
                    }
                )
            })
            .unwrap();
        assert_eq!(geometric_satisfies(&eta, bottom), Ok(false));
        // The induced check pinpoints the violation at the midpoint.
        let domain: BTreeSet<Ident> = [id("time"), id("during")].into_iter().collect();
        let outcome = induced_check(&eta, &domain, &id("star"), bottom, &[]).unwrap();
        assert_eq!(outcome, InducedOutcome::Violated(delta));
    }

    #[test]
    fn induced_check_never_violates_satisfied_axioms_on_built_model() {
        let built = chase_built();
        let domain: BTreeSet<Ident> = BTreeSet::new();
        for gax in &built.ground.axioms {
            assert_eq!(geometric_satisfies(&built.eta, gax), Ok(true));
            let outcome =
                induced_check(&built.eta, &domain, &id("star"), gax, &[]).unwrap();
            assert_eq!(outcome, InducedOutcome::NoViolationFound);
        }
    }

    #[test]
    fn induced_check_rejects_star_in_domain() {
        let built = chase_built();
        let domain: BTreeSet<Ident> = [id("star")].into_iter().collect();
        let err = induced_check(
            &built.eta,
            &domain,
            &id("star"),
            &built.ground.axioms[0],
            &[],
        )
        .unwrap_err();
        assert!(matches!(err, GeometryError::StarCollision(_)));
    }

    #[test]
    fn empty_interpretation_has_no_violations() {
        let eta = GeometricInterpretation::new(LinearMap::concatenation(1)).unwrap();
        let o = parse_ontology("A sub B").unwrap();
        let g = crate::grounding::ground_ontology(&o, cfg()).unwrap();
        let outcome = induced_check(
            &eta,
            &BTreeSet::new(),
            &id("star"),
            &g.axioms[0],
            &[],
        )
        .unwrap();
        assert_eq!(outcome, InducedOutcome::NoViolationFound);
    }

    #[test]
    fn extra_probes_reach_points_outside_the_default_set() {
        // A violation at a derived-region generator that no default probe
        // covers: the interpretation has no individuals and no concept
        // generators, so only an explicit probe finds it.
        let mut eta = GeometricInterpretation::new(LinearMap::concatenation(2)).unwrap();
        let u = vec![q_ratio(1, 3), q_ratio(0, 1)];
        let v = vec![q_ratio(0, 1), q_ratio(2, 3)];
        let w = eta.map.apply_pair(&u, &v);
        eta.set_role_region(
            id("R"),
            GroundSpecifier::open_empty(),
            Region::from_generators(4, vec![w]).unwrap(),
        )
        .unwrap();
        let o = parse_ontology("R(zz,zz)
some R sub B").unwrap();
        let g = crate::grounding::ground_ontology(&o, cfg()).unwrap();
        let incl = g
            .axioms
            .iter()
            .find(|ax| matches!(ax, GroundAxiom::ConceptInclusion { .. }))
            .unwrap();
        assert_eq!(geometric_satisfies(&eta, incl), Ok(false));
        let domain = BTreeSet::new();
        assert_eq!(
            induced_check(&eta, &domain, &id("star"), incl, &[]).unwrap(),
            InducedOutcome::NoViolationFound,
        );
        assert_eq!(
            induced_check(&eta, &domain, &id("star"), incl, core::slice::from_ref(&u)).unwrap(),
            InducedOutcome::Violated(u),
        );
    }

    #[test]
    fn transport_preserves_verdicts() {
        let built = chase_built();
        let moved = transport_model(&built.eta, LinearMap::half_swap(built.eta.m())).unwrap();
        for gax in &built.ground.axioms {
            assert_eq!(
                geometric_satisfies(&built.eta, gax),
                geometric_satisfies(&moved, gax)
            );
        }
        // Identity transport returns an equal interpretation.
        let same = transport_model(&built.eta, built.eta.map.clone()).unwrap();
        assert_eq!(same.roles, built.eta.roles);
        assert_eq!(same.concepts, built.eta.concepts);
    }

    #[test]
    fn transport_rejects_singular_maps() {
        let built = chase_built();
        let dim = 2 * built.eta.m();
        let rows: Vec<Vec<Q>> = (0..dim).map(|_| matrix::zero_vec(dim)).collect();
        let f2 = LinearMap::new(rows).unwrap();
        assert!(matches!(
            transport_model(&built.eta, f2),
            Err(GeometryError::UnvalidatedMap)
        ));
    }

    #[test]
    fn verify_passes_on_built_model_and_fails_after_mutation() {
        let o = parse_ontology("A(a)@{p:q}\nA@{p:q} sub B@{r:s, ...}\nR(a,b)").unwrap();
        let built = build_model_for_ontology(&o, cfg(), None).unwrap();
        let report = verify_geometric_model(&built.eta, &o, cfg()).unwrap();
        assert!(report.is_model(), "{:?}", report.failures);

        // Dropping a generator breaks at least one assertion.
        let mut broken = built.eta.clone();
        let key = (id("A"), spec_of("{p:q}"));
        let mut region = broken.concepts.get(&key).unwrap().clone();
        region.generators.clear();
        broken.concepts.insert(key, region);
        let report = verify_geometric_model(&broken, &o, cfg()).unwrap();
        assert!(!report.is_model());
    }

    #[test]
    fn verify_accepts_empty_ontology() {
        let o = parse_ontology("").unwrap();
        let eta = GeometricInterpretation::new(LinearMap::concatenation(1)).unwrap();
        let report = verify_geometric_model(&eta, &o, cfg()).unwrap();
        assert!(report.is_model());
    }

    #[test]
    fn negative_role_inclusions_are_rejected_by_construction() {
        let o = parse_ontology("R(a,b)\nR sub not S").unwrap();
        let err = build_model_for_ontology(&o, cfg(), None).unwrap_err();
        assert!(matches!(
            err,
            BuildError::Geometry(GeometryError::NegativeRoleInclusionPresent)
        ));
    }

    #[test]
    fn temporal_counterexample_probe_reports_the_full_chain() {
        let o = parse_ontology(TEMPORAL_CE).unwrap();
        let eta = naive_assertion_embedding(&o).unwrap();
        let diags = midpoint_probe(&eta, &o, &[], cfg()).unwrap();
        assert_eq!(diags.len(), 1);
        let d = &diags[0];
        assert_eq!(d.pair, (id("a"), id("b")));
        assert_eq!(d.point, vec![q_ratio(1, 2), q_ratio(1, 2)]);
        let t1 = spec_of("{time:1}");
        let t2 = spec_of("{time:2}");
        let d12 = spec_of("{during:[1,2]}");
        let expected_prefix = [ProbeStep::RoleMembership {
                role: id("R"),
                spec: t1,
            },
            ProbeStep::RoleMembership {
                role: id("R"),
                spec: t2,
            },
            ProbeStep::TemporalJoin {
                kind: NameKind::Role,
                name: id("R"),
                spec: d12,
            }];
        assert_eq!(&d.chain[..3], &expected_prefix[..]);
        assert!(matches!(
            d.chain[3],
            ProbeStep::InclusionFired { ref name, .. } if *name == id("A")
        ));
        assert!(matches!(d.chain[4], ProbeStep::BottomViolation { .. }));
        assert!(d.violated.contains("bot"));
    }

    #[test]
    fn role_conjunction_probe_needs_the_diagnostic_rule() {
        let o = parse_ontology(ROLE_CONJ_CE).unwrap();
        let eta = naive_assertion_embedding(&o).unwrap();
        // Without the diagnostic rule nothing closes over R3.
        assert!(midpoint_probe(&eta, &o, &[], cfg()).unwrap().is_empty());
        let rule = RoleConjunctionRule {
            lhs: vec![
                (id("R1"), GroundSpecifier::open_empty()),
                (id("R2"), GroundSpecifier::open_empty()),
            ],
            rhs: (id("R3"), GroundSpecifier::closed_empty()),
        };
        let diags = midpoint_probe(&eta, &o, &[rule], cfg()).unwrap();
        assert_eq!(diags.len(), 1);
        let d = &diags[0];
        assert!(d
            .chain
            .iter()
            .any(|s| matches!(s, ProbeStep::RoleConjunction { role, .. } if *role == id("R3"))));
        assert!(d.violated.contains("R3"));
    }

    #[test]
    fn probe_on_single_individual_reports_nothing() {
        let o = parse_ontology("A(a)\nA sub bot").unwrap();
        let eta = naive_assertion_embedding(&o).unwrap();
        assert!(midpoint_probe(&eta, &o, &[], cfg()).unwrap().is_empty());
    }
}
