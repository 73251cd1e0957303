//! Shared test support: the corpus, deterministic generators, and the
//! independent oracles (fraction-free rank, an attributed-level chase with
//! a model-check certificate, and the truth-vector semantics of temporal
//! annotations). The oracles deliberately do not call the implementation
//! paths they are used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::RngExt;

use adlite::geometry::{
    validate_linear_map, BuiltModel, GeometricInterpretation, LinearMap, Q,
};
use adlite::grounding::{
    GroundAxiom, GroundBasic, GroundConceptRhs, GroundRole, GroundRoleRhs, NameKind,
};
use adlite::semantics::{
    check_model, eval_specifier, AnnotationSet, Assignment, FiniteInterpretation,
};
use adlite::syntax::{
    temporal_attr, AnnoValue, AttrValue, Axiom, BasicConcept, ConceptRhs, GroundSpecifier, Ident,
    Nat, Ontology, Role, RoleRhs, Specifier, TemporalAttr,
};

// --- corpus -----------------------------------------------------------------

pub const SAT_CORPUS: &[(&str, &str)] = &[
    ("c01", include_str!("../corpus/c01.adl")),
    ("c02", include_str!("../corpus/c02.adl")),
    ("c03", include_str!("../corpus/c03.adl")),
    ("c04", include_str!("../corpus/c04.adl")),
    ("c05", include_str!("../corpus/c05.adl")),
    ("c06", include_str!("../corpus/c06.adl")),
    ("c07", include_str!("../corpus/c07.adl")),
    ("c08", include_str!("../corpus/c08.adl")),
    ("c09", include_str!("../corpus/c09.adl")),
    ("c10", include_str!("../corpus/c10.adl")),
    ("c11", include_str!("../corpus/c11.adl")),
    ("c12", include_str!("../corpus/c12.adl")),
    ("chase", include_str!("../corpus/chase.adl")),
];

pub const UNSAT_CORPUS: &[(&str, &str)] = &[
    ("clash", include_str!("../corpus/clash.adl")),
    ("u01", include_str!("../corpus/u01.adl")),
    ("u02", include_str!("../corpus/u02.adl")),
    ("u03", include_str!("../corpus/u03.adl")),
    ("u04", include_str!("../corpus/u04.adl")),
];

pub const TEMPORAL_CORPUS: &[(&str, &str)] = &[
    ("t01", include_str!("../corpus/t01.adl")),
    ("t02", include_str!("../corpus/t02.adl")),
    ("t03", include_str!("../corpus/t03.adl")),
    ("t04", include_str!("../corpus/t04.adl")),
    ("t05", include_str!("../corpus/t05.adl")),
    ("t06", include_str!("../corpus/t06.adl")),
    ("t07", include_str!("../corpus/t07.adl")),
    ("t08", include_str!("../corpus/t08.adl")),
    ("t09", include_str!("../corpus/t09.adl")),
    ("t10", include_str!("../corpus/t10.adl")),
];

pub const TEMPORAL_CE: &str = include_str!("../corpus/temporal_counterexample.adl");
pub const ROLE_CONJ_CE: &str = include_str!("../corpus/role_conj_counterexample.adl");

pub fn parse(src: &str) -> Ontology {
    let o = adlite::parse_ontology(src).expect("corpus parses");
    assert!(
        adlite::validate_ontology(&o).is_valid(),
        "corpus validates: {src}"
    );
    o
}

// --- fraction-free rank oracle ------------------------------------------------

/// Rank by Bareiss fraction-free elimination over integers; the input is
/// the rational matrix scaled row-wise by denominators.
pub fn bareiss_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .map(|x| x.denom().clone())
                .fold(BigInt::one(), |acc, d| {
                    let g = num_integer::Integer::gcd(&acc, &d);
                    acc / g * d
                });
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pivot) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        for r in (row + 1)..nrows {
            for c in (col + 1)..ncols {
                let v = (&m[row][col] * &m[r][c] - &m[r][col] * &m[row][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        if row == nrows {
            break;
        }
    }
    row
}

// --- attributed-level chase oracle ---------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum OFact {
    Concept(Ident, Ident, AnnotationSet),
    Role(Ident, Ident, Ident, AnnotationSet),
}

fn collect_values(o: &Ontology) -> BTreeSet<AnnoValue> {
    let mut out = BTreeSet::new();
    for ax in &o.axioms {
        for (s, _) in ax.specifiers() {
            if let Specifier::Set { pairs, .. } = s {
                for (a, v) in pairs {
                    out.insert(AnnoValue::Name(a.clone()));
                    match v {
                        AttrValue::Name(n) => {
                            out.insert(AnnoValue::Name(n.clone()));
                        }
                        AttrValue::Time(t) => {
                            out.insert(AnnoValue::Time(t.clone()));
                        }
                        AttrValue::Interval(u, w) => {
                            out.insert(AnnoValue::Interval(u.clone(), w.clone()));
                        }
                        AttrValue::Proj(_, b) => {
                            out.insert(AnnoValue::Name(b.clone()));
                        }
                        AttrValue::Var(_) => {}
                    }
                }
            }
        }
    }
    out
}

fn subsets_of(pairs: &[(AnnoValue, AnnoValue)]) -> Vec<AnnotationSet> {
    let n = pairs.len();
    assert!(n <= 16, "oracle pair space too large");
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1u32 << n) {
        let mut s = AnnotationSet::new();
        for (k, p) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                s.insert(p.clone());
            }
        }
        out.push(s);
    }
    out
}

struct OracleState {
    facts: BTreeSet<OFact>,
    individuals: BTreeSet<Ident>,
    witnesses: BTreeMap<(Ident, AnnotationSet, bool), Ident>,
}

impl OracleState {
    fn concept_match(&self, name: &Ident, d: &Ident, ss: &adlite::semantics::SpecSet) -> bool {
        self.facts.iter().any(|f| match f {
            OFact::Concept(n, e, set) => n == name && e == d && ss.contains(set),
            _ => false,
        })
    }

    fn role_successor(
        &self,
        role: &Role,
        d: &Ident,
        ss: &adlite::semantics::SpecSet,
    ) -> Option<Ident> {
        self.facts.iter().find_map(|f| match f {
            OFact::Role(n, x, y, set) if n == &role.name && ss.contains(set) => {
                let (subj, obj) = if role.inverse { (y, x) } else { (x, y) };
                if subj == d {
                    Some(obj.clone())
                } else {
                    None
                }
            }
            _ => None,
        })
    }

    fn role_pairs(&self, role: &Role, ss: &adlite::semantics::SpecSet) -> Vec<(Ident, Ident)> {
        self.facts
            .iter()
            .filter_map(|f| match f {
                OFact::Role(n, x, y, set) if n == &role.name && ss.contains(set) => {
                    Some(if role.inverse {
                        (y.clone(), x.clone())
                    } else {
                        (x.clone(), y.clone())
                    })
                }
                _ => None,
            })
            .collect()
    }
}

/// Satisfiability by a chase at the attributed level: inclusions fire
/// directly on annotated facts under all compatible assignments, without
/// the fresh-name translation. A satisfiable verdict is certified by
/// running the model checker on the final fact set; an inconclusive
/// certificate is an error.
pub fn oracle_satisfiable(o: &Ontology) -> Result<bool, String> {
    let values = collect_values(o);
    let names: Vec<Ident> = values
        .iter()
        .filter_map(|v| match v {
            AnnoValue::Name(n) => Some(n.clone()),
            _ => None,
        })
        .collect();
    let pair_space: Vec<(AnnoValue, AnnoValue)> = names
        .iter()
        .flat_map(|a| {
            names
                .iter()
                .map(move |b| (AnnoValue::Name(a.clone()), AnnoValue::Name(b.clone())))
        })
        .collect();
    let relations = subsets_of(&pair_space);
    let j = FiniteInterpretation::new();

    let mut st = OracleState {
        facts: BTreeSet::new(),
        individuals: BTreeSet::new(),
        witnesses: BTreeMap::new(),
    };

    let ground_core = |s: &Specifier, z: &Assignment| -> Result<AnnotationSet, String> {
        Ok(eval_specifier(s, &j, z)
            .map_err(|e| format!("oracle eval: {e}"))?
            .core()
            .clone())
    };

    for ax in &o.axioms {
        match ax {
            Axiom::ConceptAssertion {
                concept,
                individual,
                spec,
            } => {
                let core = ground_core(spec, &Assignment::default())?;
                st.individuals.insert(individual.clone());
                st.facts
                    .insert(OFact::Concept(concept.clone(), individual.clone(), core));
            }
            Axiom::RoleAssertion {
                role,
                subject,
                object,
                spec,
            } => {
                let core = ground_core(spec, &Assignment::default())?;
                st.individuals.insert(subject.clone());
                st.individuals.insert(object.clone());
                st.facts.insert(OFact::Role(
                    role.clone(),
                    subject.clone(),
                    object.clone(),
                    core,
                ));
            }
            _ => {}
        }
    }

    // Assignments: set variables over all relations over the names, object
    // variables over the names; prefix constraints checked by evaluation.
    let assignments_for = |ax: &Axiom| -> Result<Vec<Assignment>, String> {
        let mut set_vars = BTreeSet::new();
        let mut obj_vars = BTreeSet::new();
        for (s, _) in ax.specifiers() {
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
        let prefix: &[(Ident, Specifier)] = match ax {
            Axiom::ConceptInclusion { prefix, .. } | Axiom::RoleInclusion { prefix, .. } => {
                for (x, _) in prefix {
                    set_vars.insert(x.clone());
                }
                prefix
            }
            _ => &[],
        };
        let mut out = vec![Assignment::default()];
        for x in &set_vars {
            let mut next = Vec::new();
            for z in &out {
                for rel in &relations {
                    let mut z2 = z.clone();
                    z2.set_vars.insert(x.clone(), rel.clone());
                    next.push(z2);
                }
            }
            out = next;
        }
        for x in &obj_vars {
            let mut next = Vec::new();
            for z in &out {
                for n in &names {
                    let mut z2 = z.clone();
                    z2.obj_vars.insert(x.clone(), AnnoValue::Name(n.clone()));
                    next.push(z2);
                }
            }
            out = next;
        }
        let mut compatible = Vec::new();
        'outer: for z in out {
            for (x, s) in prefix {
                let ss = eval_specifier(s, &j, &z).map_err(|e| format!("oracle eval: {e}"))?;
                let bound = z.set_vars.get(x).ok_or("unbound set variable")?;
                if !ss.contains(bound) {
                    continue 'outer;
                }
            }
            compatible.push(z);
        }
        Ok(compatible)
    };

    let mut rounds = 0usize;
    loop {
        rounds += 1;
        if rounds > 10_000 {
            return Err("oracle did not terminate".into());
        }
        let mut new_facts: Vec<OFact> = Vec::new();
        for ax in &o.axioms {
            match ax {
                Axiom::ConceptInclusion { lhs, rhs, .. } => {
                    for z in assignments_for(ax)? {
                        for d in st.individuals.clone() {
                            let mut all = true;
                            for b in lhs {
                                let holds = match b {
                                    BasicConcept::Atom { name, spec } => {
                                        let ss = eval_specifier(spec, &j, &z)
                                            .map_err(|e| format!("{e}"))?;
                                        st.concept_match(name, &d, &ss)
                                    }
                                    BasicConcept::Exists(r) => {
                                        let ss = eval_specifier(&r.spec, &j, &z)
                                            .map_err(|e| format!("{e}"))?;
                                        st.role_successor(r, &d, &ss).is_some()
                                    }
                                };
                                if !holds {
                                    all = false;
                                    break;
                                }
                            }
                            if !all {
                                continue;
                            }
                            match rhs {
                                ConceptRhs::Bottom => return Ok(false),
                                ConceptRhs::Basic(BasicConcept::Atom { name, spec }) => {
                                    let core = ground_core(spec, &z)?;
                                    new_facts.push(OFact::Concept(name.clone(), d.clone(), core));
                                }
                                ConceptRhs::Basic(BasicConcept::Exists(r)) => {
                                    let ss = eval_specifier(&r.spec, &j, &z)
                                        .map_err(|e| format!("{e}"))?;
                                    if st.role_successor(r, &d, &ss).is_none() {
                                        let core = ground_core(&r.spec, &z)?;
                                        let key = (r.name.clone(), core.clone(), r.inverse);
                                        let w = st
                                            .witnesses
                                            .entry(key)
                                            .or_insert_with(|| {
                                                Ident::new(&format!(
                                                    "_ow{}",
                                                    st.individuals.len() + new_facts.len()
                                                ))
                                            })
                                            .clone();
                                        let fact = if r.inverse {
                                            OFact::Role(r.name.clone(), w, d.clone(), core)
                                        } else {
                                            OFact::Role(r.name.clone(), d.clone(), w, core)
                                        };
                                        new_facts.push(fact);
                                    }
                                }
                            }
                        }
                    }
                }
                Axiom::RoleInclusion {
                    lhs,
                    rhs: RoleRhs::Positive(q),
                    ..
                } => {
                    for z in assignments_for(ax)? {
                        let ss = eval_specifier(&lhs.spec, &j, &z).map_err(|e| format!("{e}"))?;
                        let core = ground_core(&q.spec, &z)?;
                        for (d, e) in st.role_pairs(lhs, &ss) {
                            let fact = if q.inverse {
                                OFact::Role(q.name.clone(), e, d, core.clone())
                            } else {
                                OFact::Role(q.name.clone(), d, e, core.clone())
                            };
                            new_facts.push(fact);
                        }
                    }
                }
                _ => {}
            }
        }
        let mut changed = false;
        for f in new_facts {
            match &f {
                OFact::Concept(_, d, _) => {
                    st.individuals.insert(d.clone());
                }
                OFact::Role(_, d, e, _) => {
                    st.individuals.insert(d.clone());
                    st.individuals.insert(e.clone());
                }
            }
            changed |= st.facts.insert(f);
        }
        if !changed {
            break;
        }
    }

    // Negative role inclusions are disjointness constraints on the chase.
    for ax in &o.axioms {
        if let Axiom::RoleInclusion {
            lhs,
            rhs: RoleRhs::Negative(q),
            ..
        } = ax
        {
            for z in assignments_for(ax)? {
                let ls = eval_specifier(&lhs.spec, &j, &z).map_err(|e| format!("{e}"))?;
                let qs = eval_specifier(&q.spec, &j, &z).map_err(|e| format!("{e}"))?;
                let left: BTreeSet<_> = st.role_pairs(lhs, &ls).into_iter().collect();
                let right: BTreeSet<_> = st.role_pairs(q, &qs).into_iter().collect();
                if left.intersection(&right).next().is_some() {
                    return Ok(false);
                }
            }
        }
    }

    // Certificate: the fixpoint must be a model.
    let mut i = FiniteInterpretation::new();
    i.individuals = st.individuals.clone();
    i.annotations = values.clone();
    for f in &st.facts {
        match f {
            OFact::Concept(name, d, set) => {
                i.concepts
                    .entry(name.clone())
                    .or_default()
                    .insert((d.clone(), set.clone()));
            }
            OFact::Role(name, d, e, set) => {
                i.roles
                    .entry(name.clone())
                    .or_default()
                    .insert((d.clone(), e.clone(), set.clone()));
            }
        }
    }
    let report = check_model(&i, o, values.len().max(1)).map_err(|e| format!("{e}"))?;
    if report.is_model() {
        Ok(true)
    } else {
        Err(format!(
            "oracle fixpoint is not a model: {:?}",
            report.failures
        ))
    }
}

// --- temporal truth-vector oracle ----------------------------------------------

/// Satisfaction of one temporal annotation over a truth vector indexed by
/// `[lo, hi]`: `truth[j - lo]` says whether the fact holds at time `j`.
pub fn annotation_satisfied(attr: TemporalAttr, value: &AnnoValue, truth: &[bool], lo: u64) -> bool {
    let hi = lo + truth.len() as u64 - 1;
    let holds = |j: u64| -> bool {
        if j < lo || j > hi {
            return false;
        }
        truth[(j - lo) as usize]
    };
    let base = truth.iter().any(|b| *b);
    if !base {
        return false;
    }
    let as_u64 = |n: &Nat| -> Option<u64> { u64::try_from(n.clone()).ok() };
    match (attr, value) {
        (TemporalAttr::Time, AnnoValue::Time(k)) => as_u64(k).is_some_and(|k| k >= lo && k <= hi && holds(k)),
        (TemporalAttr::Before, AnnoValue::Time(k)) => as_u64(k)
            .is_some_and(|k| k >= lo && k <= hi && (lo..k).any(holds)),
        (TemporalAttr::After, AnnoValue::Time(k)) => as_u64(k)
            .is_some_and(|k| k >= lo && k <= hi && ((k + 1)..=hi).any(holds)),
        (TemporalAttr::Until, AnnoValue::Time(k)) => {
            as_u64(k).is_some_and(|k| k >= lo && k <= hi && (lo..=k).all(holds))
        }
        (TemporalAttr::Since, AnnoValue::Time(k)) => {
            as_u64(k).is_some_and(|k| k >= lo && k <= hi && (k..=hi).all(holds))
        }
        (TemporalAttr::During, AnnoValue::Interval(u, v)) => {
            match (as_u64(u), as_u64(v)) {
                (Some(u), Some(v)) => {
                    u >= lo && v <= hi && (u..=v).all(holds)
                }
                _ => false,
            }
        }
        (TemporalAttr::Between, AnnoValue::Interval(u, v)) => match (as_u64(u), as_u64(v)) {
            (Some(u), Some(v)) => u >= lo && v <= hi && (u..=v).any(holds),
            _ => false,
        },
        _ => false,
    }
}

/// Entailment between single temporal annotations by enumerating all truth
/// vectors over `[lo, hi]`.
pub fn oracle_temporal_implies(
    p1: (TemporalAttr, &AnnoValue),
    p2: (TemporalAttr, &AnnoValue),
    lo: u64,
    hi: u64,
) -> bool {
    let n = (hi - lo + 1) as u32;
    for mask in 0u64..(1u64 << n) {
        let truth: Vec<bool> = (0..n).map(|k| mask & (1 << k) != 0).collect();
        if annotation_satisfied(p1.0, p1.1, &truth, lo)
            && !annotation_satisfied(p2.0, p2.1, &truth, lo)
        {
            return false;
        }
    }
    true
}

/// Satisfaction of a full specifier (its temporal pairs) over one truth
/// vector; abstract pairs are carried by the vector itself.
pub fn spec_satisfied(spec: &GroundSpecifier, truth: &[bool], lo: u64) -> bool {
    if !truth.iter().any(|b| *b) {
        return false;
    }
    for (a, v) in spec.temporal_pairs() {
        let Some(t) = temporal_attr(a) else {
            continue;
        };
        if !annotation_satisfied(t, v, truth, lo) {
            return false;
        }
    }
    true
}

// --- deterministic generators -----------------------------------------------------

pub fn gen_matrix(rng: &mut StdRng, dim: usize) -> Vec<Vec<Q>> {
    (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let n = rng.random_range(-3i64..=3);
                    let d = rng.random_range(1i64..=2);
                    Q::new(BigInt::from(n), BigInt::from(d))
                })
                .collect()
        })
        .collect()
}

/// A matrix that is singular by construction: one row becomes a scalar
/// multiple of another (or zero for 1x1... dim 2 keeps a duplicate row).
pub fn gen_singular_matrix(rng: &mut StdRng, dim: usize) -> Vec<Vec<Q>> {
    let mut m = gen_matrix(rng, dim);
    if dim == 1 {
        m[0][0] = Q::zero();
        return m;
    }
    let src = rng.random_range(0..dim);
    let mut dst = rng.random_range(0..dim);
    while dst == src {
        dst = rng.random_range(0..dim);
    }
    let scale = Q::from_integer(BigInt::from(rng.random_range(-2i64..=2)));
    m[dst] = m[src].iter().map(|x| x * &scale).collect();
    m
}

pub fn gen_validated_map(rng: &mut StdRng, m: usize) -> LinearMap {
    loop {
        let rows = gen_matrix(rng, 2 * m);
        if let Ok(map) = LinearMap::new(rows) {
            if validate_linear_map(&map) {
                return map;
            }
        }
    }
}

/// A random satisfiable ontology: positive axioms only.
pub fn gen_ontology_text(rng: &mut StdRng) -> String {
    let concepts = ["A", "B", "C"];
    let roles = ["R", "S"];
    let inds = ["a", "b"];
    let pairs = ["p:q", "q:p", "p:p"];
    let mut out = String::new();
    let spec = |rng: &mut StdRng, allow_var: bool| -> (String, bool) {
        match rng.random_range(0..6) {
            0 => ("".into(), false),
            1 => (format!("@{{{}}}", pairs[rng.random_range(0..3)]), false),
            2 => (format!("@{{{}, ...}}", pairs[rng.random_range(0..3)]), false),
            3 => ("@{}".into(), false),
            4 if allow_var => ("@X".into(), true),
            _ => ("@{...}".into(), false),
        }
    };
    for _ in 0..rng.random_range(2..=3) {
        if rng.random_range(0..2) == 0 {
            let c = concepts[rng.random_range(0..3)];
            let d = inds[rng.random_range(0..2)];
            let s = match rng.random_range(0..3) {
                0 => String::new(),
                _ => format!("@{{{}}}", pairs[rng.random_range(0..3)]),
            };
            out.push_str(&format!("{c}({d}){s}\n"));
        } else {
            let r = roles[rng.random_range(0..2)];
            let d = inds[rng.random_range(0..2)];
            let e = inds[rng.random_range(0..2)];
            out.push_str(&format!("{r}({d},{e})\n"));
        }
    }
    for _ in 0..rng.random_range(2..=4) {
        match rng.random_range(0..6) {
            0 => {
                let (s1, v1) = spec(rng, true);
                let (s2, _) = spec(rng, false);
                let a = concepts[rng.random_range(0..3)];
                let b = concepts[rng.random_range(0..3)];
                if v1 {
                    out.push_str(&format!("X:{{p:q, ...}} | {a}{s1} sub {b}@X\n"));
                } else {
                    out.push_str(&format!("{a}{s1} sub {b}{s2}\n"));
                }
            }
            1 => {
                let r = roles[rng.random_range(0..2)];
                let a = concepts[rng.random_range(0..3)];
                out.push_str(&format!("some {r} sub {a}\n"));
            }
            2 => {
                let r = roles[rng.random_range(0..2)];
                let a = concepts[rng.random_range(0..3)];
                let inv = if rng.random_range(0..2) == 0 { "-" } else { "" };
                out.push_str(&format!("{a} sub some {r}{inv}\n"));
            }
            3 => {
                let a = concepts[rng.random_range(0..3)];
                let b = concepts[rng.random_range(0..3)];
                let c = concepts[rng.random_range(0..3)];
                out.push_str(&format!("{a} and {b} sub {c}\n"));
            }
            4 => {
                let r = roles[rng.random_range(0..2)];
                let s = roles[rng.random_range(0..2)];
                if r != s {
                    out.push_str(&format!("{r} sub {s}\n"));
                }
            }
            _ => {
                let r = roles[rng.random_range(0..2)];
                let a = concepts[rng.random_range(0..3)];
                out.push_str(&format!("some {r}- sub {a}\n"));
            }
        }
    }
    out
}

/// Random ground axioms over the vocabulary of a built model.
pub fn gen_ground_axioms(rng: &mut StdRng, built: &BuiltModel, n: usize) -> Vec<GroundAxiom> {
    let occurring: Vec<_> = built.ground.occurring().into_iter().collect();
    let concepts: Vec<_> = occurring
        .iter()
        .filter(|(k, _, _)| *k == NameKind::Concept)
        .cloned()
        .collect();
    let roles: Vec<_> = occurring
        .iter()
        .filter(|(k, _, _)| *k == NameKind::Role)
        .cloned()
        .collect();
    let inds: Vec<Ident> = built.eta.individuals.keys().cloned().collect();
    let mut out = Vec::new();
    if inds.is_empty() {
        return out;
    }
    let pick_concept = |rng: &mut StdRng| -> Option<(Ident, GroundSpecifier)> {
        if concepts.is_empty() {
            return None;
        }
        let (_, name, spec) = &concepts[rng.random_range(0..concepts.len())];
        Some((name.clone(), spec.clone()))
    };
    let pick_role = |rng: &mut StdRng| -> Option<GroundRole> {
        if roles.is_empty() {
            return None;
        }
        let (_, name, spec) = &roles[rng.random_range(0..roles.len())];
        Some(GroundRole {
            name: name.clone(),
            inverse: rng.random_range(0..2) == 0,
            spec: spec.clone(),
        })
    };
    let pick_basic = |rng: &mut StdRng| -> Option<GroundBasic> {
        if rng.random_range(0..2) == 0 {
            pick_concept(rng).map(|(name, spec)| GroundBasic::Atom { name, spec })
        } else {
            pick_role(rng).map(GroundBasic::Exists)
        }
    };
    while out.len() < n {
        let ax = match rng.random_range(0..5) {
            0 => pick_concept(rng).and_then(|(name, spec)| {
                if spec.open {
                    return None;
                }
                Some(GroundAxiom::ConceptAssertion {
                    concept: name,
                    individual: inds[rng.random_range(0..inds.len())].clone(),
                    spec,
                })
            }),
            1 => pick_role(rng).and_then(|r| {
                if r.spec.open || r.inverse {
                    return None;
                }
                Some(GroundAxiom::RoleAssertion {
                    role: r.name,
                    subject: inds[rng.random_range(0..inds.len())].clone(),
                    object: inds[rng.random_range(0..inds.len())].clone(),
                    spec: r.spec,
                })
            }),
            2 => match (pick_basic(rng), pick_basic(rng)) {
                (Some(l), Some(r)) => Some(GroundAxiom::ConceptInclusion {
                    lhs: vec![l],
                    rhs: GroundConceptRhs::Basic(r),
                }),
                _ => None,
            },
            3 => pick_basic(rng).map(|l| GroundAxiom::ConceptInclusion {
                lhs: vec![l],
                rhs: GroundConceptRhs::Bottom,
            }),
            _ => match (pick_role(rng), pick_role(rng)) {
                (Some(l), Some(r)) => Some(GroundAxiom::RoleInclusion {
                    lhs: l,
                    rhs: GroundRoleRhs::Positive(r),
                }),
                _ => None,
            },
        };
        if let Some(ax) = ax {
            out.push(ax);
        }
    }
    out
}

/// Random tiny finite interpretation for semantics-oracle agreement
/// (|Δ_i| <= 3, |Δ_a| <= 3).
pub fn gen_interpretation(rng: &mut StdRng) -> FiniteInterpretation {
    gen_interpretation_sized(rng, 2)
}

pub fn gen_interpretation_sized(rng: &mut StdRng, n_annos: usize) -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new();
    let inds = ["d", "e", "g"];
    let annos = &["p", "q", "r"][..n_annos];
    for a in annos {
        i.annotations.insert(AnnoValue::Name(Ident::new(a)));
    }
    let n_inds = rng.random_range(1..=3);
    for d in inds.iter().take(n_inds) {
        i.individuals.insert(Ident::new(d));
    }
    let pairset = |rng: &mut StdRng| -> AnnotationSet {
        let mut f = AnnotationSet::new();
        for a in annos {
            for b in annos {
                if rng.random_range(0..5) == 0 {
                    f.insert((
                        AnnoValue::Name(Ident::new(a)),
                        AnnoValue::Name(Ident::new(b)),
                    ));
                }
            }
        }
        f
    };
    for c in ["A", "B"] {
        for d in inds.iter().take(n_inds) {
            if rng.random_range(0..2) == 0 {
                let f = pairset(rng);
                i.concepts
                    .entry(Ident::new(c))
                    .or_default()
                    .insert((Ident::new(d), f));
            }
        }
    }
    for r in ["R"] {
        for d in inds.iter().take(n_inds) {
            for e in inds.iter().take(n_inds) {
                if rng.random_range(0..3) == 0 {
                    let f = pairset(rng);
                    i.roles
                        .entry(Ident::new(r))
                        .or_default()
                        .insert((Ident::new(d), Ident::new(e), f));
                }
            }
        }
    }
    i
}

pub fn concat_pair(eta: &GeometricInterpretation, a: &str, b: &str) -> Vec<Q> {
    eta.map
        .apply_pair(
            eta.vector(&Ident::new(a)).unwrap(),
            eta.vector(&Ident::new(b)).unwrap(),
        )
}

// --- brute-force model checker -----------------------------------------------

/// Fully materialized re-implementation of axiom satisfaction: annotation
/// sets range over all subsets of the pair space, open specifiers are
/// matched by explicit superset enumeration, and memberships are computed
/// from first principles. Exponential; only for tiny interpretations.
pub fn brute_check_model(i: &FiniteInterpretation, o: &Ontology) -> bool {
    let pair_space: Vec<(AnnoValue, AnnoValue)> = i
        .annotations
        .iter()
        .flat_map(|a| i.annotations.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let all_sets = subsets_of(&pair_space);

    fn instantiate(
        i: &FiniteInterpretation,
        pairs: &[(Ident, AttrValue)],
        z: &Assignment,
    ) -> Option<AnnotationSet> {
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
                    core.insert((attr, z.obj_vars.get(x)?.clone()));
                }
                AttrValue::Proj(x, b) => {
                    let rel = z.set_vars.get(x)?;
                    let b_den = i.denote_anno(b);
                    for (f, s) in rel {
                        if *f == b_den {
                            core.insert((attr.clone(), s.clone()));
                        }
                    }
                }
            }
        }
        Some(core)
    }

    // Matching annotation sets of a specifier, fully enumerated.
    let matching = |s: &Specifier, z: &Assignment| -> Option<Vec<AnnotationSet>> {
        match s {
            Specifier::Var(x) => Some(vec![z.set_vars.get(x)?.clone()]),
            Specifier::Set { open, pairs } => {
                let core = instantiate(i, pairs, z)?;
                if *open {
                    Some(
                        all_sets
                            .iter()
                            .filter(|f| core.is_subset(f))
                            .cloned()
                            .collect(),
                    )
                } else {
                    Some(vec![core])
                }
            }
        }
    };

    let concept_members = |name: &Ident, s: &Specifier, z: &Assignment| -> BTreeSet<Ident> {
        let Some(fs) = matching(s, z) else {
            return BTreeSet::new();
        };
        let mut out = BTreeSet::new();
        if let Some(ext) = i.concepts.get(name) {
            for (d, f) in ext {
                if fs.contains(f) {
                    out.insert(d.clone());
                }
            }
        }
        out
    };
    let role_member_pairs = |r: &Role, z: &Assignment| -> BTreeSet<(Ident, Ident)> {
        let Some(fs) = matching(&r.spec, z) else {
            return BTreeSet::new();
        };
        let mut out = BTreeSet::new();
        if let Some(ext) = i.roles.get(&r.name) {
            for (d, e, f) in ext {
                if fs.contains(f) {
                    if r.inverse {
                        out.insert((e.clone(), d.clone()));
                    } else {
                        out.insert((d.clone(), e.clone()));
                    }
                }
            }
        }
        out
    };
    let basic_members = |b: &BasicConcept, z: &Assignment| -> BTreeSet<Ident> {
        match b {
            BasicConcept::Atom { name, spec } => concept_members(name, spec, z),
            BasicConcept::Exists(r) => role_member_pairs(r, z).into_iter().map(|(d, _)| d).collect(),
        }
    };

    // All assignments over the axiom's variables.
    let assignments = |ax: &Axiom| -> Vec<Assignment> {
        let mut set_vars = BTreeSet::new();
        let mut obj_vars = BTreeSet::new();
        for (s, _) in ax.specifiers() {
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
        let prefix: &[(Ident, Specifier)] = match ax {
            Axiom::ConceptInclusion { prefix, .. } | Axiom::RoleInclusion { prefix, .. } => {
                for (x, _) in prefix {
                    set_vars.insert(x.clone());
                }
                prefix
            }
            _ => &[],
        };
        let mut out = vec![Assignment::default()];
        for x in &set_vars {
            out = out
                .into_iter()
                .flat_map(|z| {
                    all_sets.iter().map(move |rel| {
                        let mut z2 = z.clone();
                        z2.set_vars.insert(x.clone(), rel.clone());
                        z2
                    })
                })
                .collect();
        }
        for x in &obj_vars {
            out = out
                .into_iter()
                .flat_map(|z| {
                    i.annotations.iter().map(move |e| {
                        let mut z2 = z.clone();
                        z2.obj_vars.insert(x.clone(), e.clone());
                        z2
                    })
                })
                .collect();
        }
        out.retain(|z| {
            prefix.iter().all(|(x, s)| match (z.set_vars.get(x), matching(s, z)) {
                (Some(bound), Some(fs)) => fs.contains(bound),
                _ => false,
            })
        });
        out
    };

    for ax in &o.axioms {
        let holds = match ax {
            Axiom::ConceptAssertion {
                concept,
                individual,
                spec,
            } => concept_members(concept, spec, &Assignment::default())
                .contains(&i.denote_ind(individual)),
            Axiom::RoleAssertion {
                role,
                subject,
                object,
                spec,
            } => role_member_pairs(
                &Role {
                    name: role.clone(),
                    inverse: false,
                    spec: spec.clone(),
                },
                &Assignment::default(),
            )
            .contains(&(i.denote_ind(subject), i.denote_ind(object))),
            Axiom::ConceptInclusion { lhs, rhs, .. } => assignments(ax).iter().all(|z| {
                let mut left: Option<BTreeSet<Ident>> = None;
                for b in lhs {
                    let members = basic_members(b, z);
                    left = Some(match left {
                        None => members,
                        Some(prev) => prev.intersection(&members).cloned().collect(),
                    });
                }
                let left = left.unwrap_or_default();
                let right = match rhs {
                    ConceptRhs::Bottom => BTreeSet::new(),
                    ConceptRhs::Basic(b) => basic_members(b, z),
                };
                left.is_subset(&right)
            }),
            Axiom::RoleInclusion { lhs, rhs, .. } => assignments(ax).iter().all(|z| {
                let left = role_member_pairs(lhs, z);
                let right = match rhs {
                    RoleRhs::Positive(r) => role_member_pairs(r, z),
                    RoleRhs::Negative(r) => {
                        let pos = role_member_pairs(r, z);
                        let mut out = BTreeSet::new();
                        for d in &i.individuals {
                            for e in &i.individuals {
                                if !pos.contains(&(d.clone(), e.clone())) {
                                    out.insert((d.clone(), e.clone()));
                                }
                            }
                        }
                        out
                    }
                };
                left.is_subset(&right)
            }),
        };
        if !holds {
            return false;
        }
    }
    true
}
