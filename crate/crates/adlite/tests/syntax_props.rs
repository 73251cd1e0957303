//! Property tests for the textual format and specifier implication.

mod common;

use proptest::prelude::*;

use adlite::syntax::{
    ground_specifier_implies, parse_ontology, print_ontology, specifier_implies,
    validate_ontology, AttrValue, Axiom, BasicConcept, ConceptRhs, GroundSpecifier, Ident, Nat,
    Ontology, Role, RoleRhs, Specifier, Violation,
};

fn ident(pool: &'static [&'static str]) -> impl Strategy<Value = Ident> {
    prop::sample::select(pool).prop_map(Ident::new)
}

fn concept_name() -> impl Strategy<Value = Ident> {
    ident(&["Ca", "Cb", "Cc"])
}

fn role_name() -> impl Strategy<Value = Ident> {
    ident(&["Ra", "Rb"])
}

fn individual() -> impl Strategy<Value = Ident> {
    ident(&["ia", "ib"])
}

fn anno_name() -> impl Strategy<Value = Ident> {
    ident(&["pa", "pb"])
}

fn set_var() -> impl Strategy<Value = Ident> {
    ident(&["Xv", "Yv"])
}

fn obj_var() -> impl Strategy<Value = Ident> {
    ident(&["xo", "yo"])
}

fn nat() -> impl Strategy<Value = Nat> {
    (0u32..4).prop_map(Nat::from)
}

/// Well-typed attribute-value pairs (the parser enforces value types).
fn pair() -> impl Strategy<Value = (Ident, AttrValue)> {
    prop_oneof![
        (anno_name(), anno_name().prop_map(AttrValue::Name)),
        (anno_name(), obj_var().prop_map(AttrValue::Var)),
        (
            anno_name(),
            (set_var(), anno_name()).prop_map(|(x, b)| AttrValue::Proj(x, b))
        ),
        (Just(Ident::new("time")), nat().prop_map(AttrValue::Time)),
        (
            Just(Ident::new("during")),
            (nat(), nat()).prop_map(|(a, b)| {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                AttrValue::Interval(lo, hi)
            })
        ),
    ]
}

fn brace_specifier() -> impl Strategy<Value = Specifier> {
    (prop::collection::vec(pair(), 0..3), any::<bool>())
        .prop_map(|(pairs, open)| Specifier::Set { open, pairs })
}

fn specifier() -> impl Strategy<Value = Specifier> {
    prop_oneof![
        3 => brace_specifier(),
        1 => set_var().prop_map(Specifier::Var),
    ]
}

fn role() -> impl Strategy<Value = Role> {
    (role_name(), any::<bool>(), specifier()).prop_map(|(name, inverse, spec)| Role {
        name,
        inverse,
        spec,
    })
}

fn basic() -> impl Strategy<Value = BasicConcept> {
    prop_oneof![
        (concept_name(), specifier()).prop_map(|(name, spec)| BasicConcept::Atom { name, spec }),
        role().prop_map(BasicConcept::Exists),
    ]
}

fn prefix() -> impl Strategy<Value = Vec<(Ident, Specifier)>> {
    prop::collection::vec((set_var(), brace_specifier()), 0..2)
}

fn axiom() -> impl Strategy<Value = Axiom> {
    prop_oneof![
        (concept_name(), individual(), specifier()).prop_map(|(concept, individual, spec)| {
            Axiom::ConceptAssertion {
                concept,
                individual,
                spec,
            }
        }),
        (role_name(), individual(), individual(), specifier()).prop_map(
            |(role, subject, object, spec)| Axiom::RoleAssertion {
                role,
                subject,
                object,
                spec,
            }
        ),
        (
            prefix(),
            prop::collection::vec(basic(), 1..3),
            prop_oneof![
                basic().prop_map(ConceptRhs::Basic),
                Just(ConceptRhs::Bottom)
            ]
        )
            .prop_map(|(prefix, lhs, rhs)| Axiom::ConceptInclusion { prefix, lhs, rhs }),
        (
            prefix(),
            role(),
            role(),
            any::<bool>()
        )
            .prop_map(|(prefix, lhs, rhs, negative)| Axiom::RoleInclusion {
                prefix,
                lhs,
                rhs: if negative {
                    RoleRhs::Negative(rhs)
                } else {
                    RoleRhs::Positive(rhs)
                },
            }),
    ]
}

fn ontology() -> impl Strategy<Value = Ontology> {
    prop::collection::vec(axiom(), 0..6).prop_map(Ontology::new)
}

fn ground_spec() -> impl Strategy<Value = GroundSpecifier> {
    (
        prop::collection::btree_set((anno_name(), anno_name()), 0..3),
        any::<bool>(),
    )
        .prop_map(|(pairs, open)| GroundSpecifier {
            open,
            pairs: pairs
                .into_iter()
                .map(|(a, b)| (a, adlite::syntax::AnnoValue::Name(b)))
                .collect(),
        })
}

proptest! {
    #[test]
    fn parse_print_is_identity(o in ontology()) {
        let printed = print_ontology(&o);
        let reparsed = parse_ontology(&printed).unwrap_or_else(|e| {
            panic!("print produced unparseable text: {e}\n{printed}")
        });
        prop_assert_eq!(&reparsed.axioms, &o.axioms, "printed:\n{}", printed);
    }

    #[test]
    fn implies_reflexive_on_open(s in ground_spec()) {
        let expected = s.open;
        prop_assert_eq!(ground_specifier_implies(&s, &s), expected);
    }

    #[test]
    fn implies_never_true_for_closed_target(s in ground_spec(), t in ground_spec()) {
        if !t.open {
            prop_assert!(!ground_specifier_implies(&s, &t));
        }
    }

    #[test]
    fn implies_transitive(s in ground_spec(), t in ground_spec(), u in ground_spec()) {
        if ground_specifier_implies(&s, &t) && ground_specifier_implies(&t, &u) {
            prop_assert!(ground_specifier_implies(&s, &u));
        }
    }
}

#[test]
fn corpus_normalization_is_idempotent() {
    for (_, src) in common::SAT_CORPUS
        .iter()
        .chain(common::UNSAT_CORPUS)
        .chain(common::TEMPORAL_CORPUS)
    {
        let once = parse_ontology(src).unwrap();
        let printed = print_ontology(&once);
        let twice = parse_ontology(&printed).unwrap();
        assert_eq!(once.axioms, twice.axioms);
        assert_eq!(printed, print_ontology(&twice));
    }
}

#[test]
fn specifier_implies_requires_ground_input() {
    let s = Specifier::Var(Ident::new("X"));
    assert!(specifier_implies(&s, &Specifier::any()).is_err());
}

/// Moving a fresh object variable onto a right side must be rejected.
#[test]
fn unsafe_mutations_are_rejected() {
    let fresh = Ident::new("zz");
    let mut mutated = 0;
    for (_, src) in common::SAT_CORPUS.iter().chain(common::TEMPORAL_CORPUS) {
        let o = parse_ontology(src).unwrap();
        assert!(validate_ontology(&o).is_valid());
        for (idx, ax) in o.axioms.iter().enumerate() {
            let mut o2 = o.clone();
            let injected = match &mut o2.axioms[idx] {
                Axiom::ConceptInclusion {
                    rhs: ConceptRhs::Basic(b),
                    ..
                } => inject(b, &fresh),
                Axiom::RoleInclusion { rhs, .. } => {
                    let r = match rhs {
                        RoleRhs::Positive(r) | RoleRhs::Negative(r) => r,
                    };
                    inject_spec(&mut r.spec, &fresh)
                }
                _ => false,
            };
            let _ = ax;
            if injected {
                mutated += 1;
                let report = validate_ontology(&o2);
                assert!(
                    report.violations.iter().any(|v| matches!(
                        v,
                        Violation::UnsafeObjectVariable { var, .. } if *var == fresh
                    )),
                    "mutation of axiom {idx} not flagged in:\n{src}"
                );
            }
        }
    }
    assert!(mutated > 10, "mutation coverage too small: {mutated}");
}

fn inject(b: &mut BasicConcept, fresh: &Ident) -> bool {
    match b {
        BasicConcept::Atom { spec, .. } => inject_spec(spec, fresh),
        BasicConcept::Exists(r) => inject_spec(&mut r.spec, fresh),
    }
}

fn inject_spec(spec: &mut Specifier, fresh: &Ident) -> bool {
    match spec {
        Specifier::Set { pairs, .. } => {
            pairs.push((Ident::new("pa"), AttrValue::Var(fresh.clone())));
            true
        }
        Specifier::Var(_) => false,
    }
}

// Region membership sanity over random rational data.
mod region_props {
    use adlite::geometry::{Q, Region};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn gens(dim: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
        prop::collection::vec(
            prop::collection::vec((-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d)), dim),
            1..5,
        )
    }

    proptest! {
        #[test]
        fn convex_combinations_are_members(points in gens(3), weights in prop::collection::vec(0u32..=4, 1..5)) {
            let region = Region::from_generators(3, points.clone()).unwrap();
            let n = points.len().min(weights.len());
            let total: u32 = weights[..n].iter().sum();
            prop_assume!(total > 0);
            let mut combo = vec![q(0, 1); 3];
            for (p, w) in points[..n].iter().zip(&weights[..n]) {
                for (c, x) in combo.iter_mut().zip(p) {
                    *c += x * q(i64::from(*w), i64::from(total));
                }
            }
            prop_assert!(region.contains_point(&combo).unwrap());
        }

        #[test]
        fn points_beyond_the_bounding_box_are_outside(points in gens(2)) {
            let region = Region::from_generators(2, points.clone()).unwrap();
            let max_coord = points
                .iter()
                .flatten()
                .cloned()
                .fold(q(0, 1), |acc, x| if x > acc { x } else { acc });
            let outside = vec![max_coord + q(1, 1), q(0, 1)];
            prop_assert!(!region.contains_point(&outside).unwrap());
        }
    }
}

proptest! {
    // The parser returns errors, never panics, on arbitrary input.
    #[test]
    fn parser_never_panics(input in "[ -~\n]{0,80}") {
        let _ = parse_ontology(&input);
    }

    #[test]
    fn parser_never_panics_on_unicode(input in "\\PC{0,40}") {
        let _ = parse_ontology(&input);
    }
}
