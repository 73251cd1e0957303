//! Structural validation: object-variable safety, value types, specifier
//! shape of assertions, set-variable declarations, and disjoint use of the
//! name classes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{
    temporal_attr, AttrValue, Axiom, BasicConcept, ConceptRhs, Ident, Ontology, RoleRhs,
    Specifier, ValType,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Object variable on the right side of an inclusion without a left
    /// occurrence.
    UnsafeObjectVariable { axiom: usize, var: Ident },
    /// Attribute paired with a value of the wrong type.
    IllTypedPair {
        axiom: usize,
        attr: Ident,
        detail: String,
    },
    /// Assertion specifier contains variables or projections.
    NonGroundAssertionSpecifier { axiom: usize },
    /// Assertion specifier is open or a set variable.
    NonClosedAssertionSpecifier { axiom: usize },
    /// Set variable used in an inclusion body but not declared in the prefix.
    UndeclaredSetVariable { axiom: usize, var: Ident },
    /// One identifier used in two disjoint name classes.
    MixedNameUse { name: Ident, uses: String },
    /// Interval with endpoints out of order.
    EmptyInterval { axiom: usize, attr: Ident },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnsafeObjectVariable { axiom, var } => {
                write!(f, "axiom {axiom}: unsafe object variable ?{var}")
            }
            Violation::IllTypedPair {
                axiom,
                attr,
                detail,
            } => write!(f, "axiom {axiom}: ill-typed pair on `{attr}`: {detail}"),
            Violation::NonGroundAssertionSpecifier { axiom } => {
                write!(f, "axiom {axiom}: assertion specifier must be ground")
            }
            Violation::NonClosedAssertionSpecifier { axiom } => {
                write!(f, "axiom {axiom}: assertion specifier must be closed")
            }
            Violation::UndeclaredSetVariable { axiom, var } => {
                write!(f, "axiom {axiom}: set variable {var} is not declared")
            }
            Violation::MixedNameUse { name, uses } => {
                write!(f, "identifier `{name}` used as {uses}")
            }
            Violation::EmptyInterval { axiom, attr } => {
                write!(f, "axiom {axiom}: empty interval on `{attr}`")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

fn spec_obj_vars(s: &Specifier, out: &mut BTreeSet<Ident>) {
    if let Specifier::Set { pairs, .. } = s {
        for (_, v) in pairs {
            if let AttrValue::Var(x) = v {
                out.insert(x.clone());
            }
        }
    }
}

fn spec_set_vars(s: &Specifier, out: &mut BTreeSet<Ident>) {
    match s {
        Specifier::Var(x) => {
            out.insert(x.clone());
        }
        Specifier::Set { pairs, .. } => {
            for (_, v) in pairs {
                if let AttrValue::Proj(x, _) = v {
                    out.insert(x.clone());
                }
            }
        }
    }
}

fn check_spec_pairs(
    axiom: usize,
    s: &Specifier,
    var_sorts: &mut BTreeMap<Ident, (ValType, Ident)>,
    out: &mut Vec<Violation>,
) {
    let Specifier::Set { pairs, .. } = s else {
        return;
    };
    for (attr, v) in pairs {
        let want = match temporal_attr(attr) {
            Some(t) => t.valtype(),
            None => ValType::Abstract,
        };
        match v {
            AttrValue::Name(_) if want != ValType::Abstract => out.push(Violation::IllTypedPair {
                axiom,
                attr: attr.clone(),
                detail: String::from("expected a temporal value, got an annotation name"),
            }),
            AttrValue::Time(_) if want != ValType::TimePoint => {
                out.push(Violation::IllTypedPair {
                    axiom,
                    attr: attr.clone(),
                    detail: String::from("expected value type other than time point"),
                })
            }
            AttrValue::Interval(lo, hi) => {
                if want != ValType::Interval {
                    out.push(Violation::IllTypedPair {
                        axiom,
                        attr: attr.clone(),
                        detail: String::from("expected value type other than interval"),
                    });
                } else if lo > hi {
                    out.push(Violation::EmptyInterval {
                        axiom,
                        attr: attr.clone(),
                    });
                }
            }
            AttrValue::Proj(_, b) => {
                let bt = temporal_attr(b).map_or(ValType::Abstract, |t| t.valtype());
                if bt != want {
                    out.push(Violation::IllTypedPair {
                        axiom,
                        attr: attr.clone(),
                        detail: format!("projection on `{b}` has a different value type"),
                    });
                }
            }
            AttrValue::Var(x) => {
                if let Some((prev, first_attr)) = var_sorts.get(x) {
                    if *prev != want {
                        out.push(Violation::IllTypedPair {
                            axiom,
                            attr: attr.clone(),
                            detail: format!(
                                "object variable ?{x} already used with `{first_attr}` of a different value type"
                            ),
                        });
                    }
                } else {
                    var_sorts.insert(x.clone(), (want, attr.clone()));
                }
            }
            _ => {}
        }
    }
}

/// Validates a parsed ontology; the ontology is valid iff the report is
/// empty.
pub fn validate_ontology(o: &Ontology) -> ValidationReport {
    let mut violations = Vec::new();
    let mut var_sorts: BTreeMap<Ident, (ValType, Ident)> = BTreeMap::new();

    // Name classes, with a sample use for diagnostics.
    let mut individuals = BTreeSet::new();
    let mut annotations = BTreeSet::new();
    let mut concepts = BTreeSet::new();
    let mut roles = BTreeSet::new();

    let note_spec_names = |s: &Specifier, annotations: &mut BTreeSet<Ident>| {
        if let Specifier::Set { pairs, .. } = s {
            for (a, v) in pairs {
                annotations.insert(a.clone());
                match v {
                    AttrValue::Name(n) => {
                        annotations.insert(n.clone());
                    }
                    AttrValue::Proj(_, b) => {
                        annotations.insert(b.clone());
                    }
                    _ => {}
                }
            }
        }
    };

    for (i, ax) in o.axioms.iter().enumerate() {
        for (s, _) in ax.specifiers() {
            note_spec_names(s, &mut annotations);
            check_spec_pairs(i, s, &mut var_sorts, &mut violations);
        }
        match ax {
            Axiom::ConceptAssertion {
                concept,
                individual,
                spec,
            } => {
                concepts.insert(concept.clone());
                individuals.insert(individual.clone());
                check_assertion_spec(i, spec, &mut violations);
            }
            Axiom::RoleAssertion {
                role,
                subject,
                object,
                spec,
            } => {
                roles.insert(role.clone());
                individuals.insert(subject.clone());
                individuals.insert(object.clone());
                check_assertion_spec(i, spec, &mut violations);
            }
            Axiom::ConceptInclusion { prefix, lhs, rhs } => {
                for b in lhs {
                    match b {
                        BasicConcept::Atom { name, .. } => {
                            concepts.insert(name.clone());
                        }
                        BasicConcept::Exists(r) => {
                            roles.insert(r.name.clone());
                        }
                    }
                }
                match rhs {
                    ConceptRhs::Basic(BasicConcept::Atom { name, .. }) => {
                        concepts.insert(name.clone());
                    }
                    ConceptRhs::Basic(BasicConcept::Exists(r)) => {
                        roles.insert(r.name.clone());
                    }
                    ConceptRhs::Bottom => {}
                }
                check_inclusion(i, prefix, ax, &mut violations);
            }
            Axiom::RoleInclusion { prefix, lhs, rhs } => {
                roles.insert(lhs.name.clone());
                match rhs {
                    RoleRhs::Positive(r) | RoleRhs::Negative(r) => {
                        roles.insert(r.name.clone());
                    }
                }
                check_inclusion(i, prefix, ax, &mut violations);
            }
        }
    }

    let classes: [(&BTreeSet<Ident>, &str); 4] = [
        (&concepts, "a concept name"),
        (&roles, "a role name"),
        (&individuals, "an individual name"),
        (&annotations, "an annotation name"),
    ];
    for a in 0..classes.len() {
        for b in (a + 1)..classes.len() {
            for name in classes[a].0.intersection(classes[b].0) {
                violations.push(Violation::MixedNameUse {
                    name: name.clone(),
                    uses: format!("both {} and {}", classes[a].1, classes[b].1),
                });
            }
        }
    }

    ValidationReport { violations }
}

fn check_assertion_spec(i: usize, spec: &Specifier, out: &mut Vec<Violation>) {
    match spec {
        Specifier::Var(_) => {
            out.push(Violation::NonClosedAssertionSpecifier { axiom: i });
        }
        Specifier::Set { open, .. } => {
            if *open {
                out.push(Violation::NonClosedAssertionSpecifier { axiom: i });
            }
            if !spec.is_ground() {
                out.push(Violation::NonGroundAssertionSpecifier { axiom: i });
            }
        }
    }
}

/// Safety and declaredness for one inclusion.
fn check_inclusion(
    i: usize,
    prefix: &[(Ident, Specifier)],
    ax: &Axiom,
    out: &mut Vec<Violation>,
) {
    let declared: BTreeSet<Ident> = prefix.iter().map(|(x, _)| x.clone()).collect();
    let prefix_spec: BTreeMap<&Ident, Vec<&Specifier>> = {
        let mut m: BTreeMap<&Ident, Vec<&Specifier>> = BTreeMap::new();
        for (x, s) in prefix {
            m.entry(x).or_default().push(s);
        }
        m
    };

    let (lhs_specs, rhs_specs): (Vec<&Specifier>, Vec<&Specifier>) = match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            let l = lhs
                .iter()
                .map(|b| match b {
                    BasicConcept::Atom { spec, .. } => spec,
                    BasicConcept::Exists(r) => &r.spec,
                })
                .collect();
            let r = match rhs {
                ConceptRhs::Basic(BasicConcept::Atom { spec, .. }) => alloc::vec![spec],
                ConceptRhs::Basic(BasicConcept::Exists(r)) => alloc::vec![&r.spec],
                ConceptRhs::Bottom => Vec::new(),
            };
            (l, r)
        }
        Axiom::RoleInclusion { lhs, rhs, .. } => {
            let r = match rhs {
                RoleRhs::Positive(r) | RoleRhs::Negative(r) => &r.spec,
            };
            (alloc::vec![&lhs.spec], alloc::vec![r])
        }
        _ => return,
    };

    let side_vars = |specs: &[&Specifier]| -> (BTreeSet<Ident>, BTreeSet<Ident>) {
        let mut ovars = BTreeSet::new();
        let mut svars = BTreeSet::new();
        for s in specs {
            spec_obj_vars(s, &mut ovars);
            spec_set_vars(s, &mut svars);
        }
        // Object variables in the prefix specifier of a set variable
        // occurring on this side also count for this side.
        for x in svars.clone() {
            if let Some(defs) = prefix_spec.get(&x) {
                for d in defs {
                    spec_obj_vars(d, &mut ovars);
                }
            }
        }
        (ovars, svars)
    };

    let (left_ovars, left_svars) = side_vars(&lhs_specs);
    let (right_ovars, right_svars) = side_vars(&rhs_specs);

    for x in left_svars.union(&right_svars) {
        if !declared.contains(x) {
            out.push(Violation::UndeclaredSetVariable {
                axiom: i,
                var: x.clone(),
            });
        }
    }
    for v in right_ovars.difference(&left_ovars) {
        out.push(Violation::UnsafeObjectVariable {
            axiom: i,
            var: v.clone(),
        });
    }
}
