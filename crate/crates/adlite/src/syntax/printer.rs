//! Pretty-printer for the `.adl` format. `parse(print(o)) == o` for every
//! parseable ontology; specifiers are always printed explicitly.

use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt::Write;

use super::{
    AttrValue, Axiom, BasicConcept, ConceptRhs, Ident, Ontology, Role, RoleRhs, Specifier,
};

fn write_value(out: &mut String, v: &AttrValue) {
    match v {
        AttrValue::Name(n) => {
            let _ = write!(out, "{n}");
        }
        AttrValue::Var(x) => {
            let _ = write!(out, "?{x}");
        }
        AttrValue::Proj(x, a) => {
            let _ = write!(out, "{x}.{a}");
        }
        AttrValue::Time(t) => {
            let _ = write!(out, "{t}");
        }
        AttrValue::Interval(a, b) => {
            let _ = write!(out, "[{a},{b}]");
        }
    }
}

fn write_spec(out: &mut String, s: &Specifier) {
    match s {
        Specifier::Var(x) => {
            let _ = write!(out, "{x}");
        }
        Specifier::Set { open, pairs } => {
            out.push('{');
            for (i, (a, v)) in pairs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{a}:");
                write_value(out, v);
            }
            if *open {
                if !pairs.is_empty() {
                    out.push_str(", ");
                }
                out.push_str("...");
            }
            out.push('}');
        }
    }
}

fn write_role(out: &mut String, r: &Role) {
    let _ = write!(out, "{}", r.name);
    if r.inverse {
        out.push('-');
    }
    out.push('@');
    write_spec(out, &r.spec);
}

fn write_basic(out: &mut String, b: &BasicConcept) {
    match b {
        BasicConcept::Atom { name, spec } => {
            let _ = write!(out, "{name}@");
            write_spec(out, spec);
        }
        BasicConcept::Exists(r) => {
            out.push_str("some ");
            write_role(out, r);
        }
    }
}

/// Prints a single axiom (no trailing newline).
pub fn print_axiom(ax: &Axiom) -> String {
    let mut out = String::new();
    match ax {
        Axiom::ConceptAssertion {
            concept,
            individual,
            spec,
        } => {
            let _ = write!(out, "{concept}({individual})@");
            write_spec(&mut out, spec);
        }
        Axiom::RoleAssertion {
            role,
            subject,
            object,
            spec,
        } => {
            let _ = write!(out, "{role}({subject},{object})@");
            write_spec(&mut out, spec);
        }
        Axiom::ConceptInclusion { prefix, lhs, rhs } => {
            write_prefix(&mut out, prefix);
            for (i, b) in lhs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" and ");
                }
                write_basic(&mut out, b);
            }
            out.push_str(" sub ");
            match rhs {
                ConceptRhs::Bottom => out.push_str("bot"),
                ConceptRhs::Basic(b) => write_basic(&mut out, b),
            }
        }
        Axiom::RoleInclusion { prefix, lhs, rhs } => {
            write_prefix(&mut out, prefix);
            write_role(&mut out, lhs);
            out.push_str(" sub ");
            match rhs {
                RoleRhs::Positive(r) => write_role(&mut out, r),
                RoleRhs::Negative(r) => {
                    out.push_str("not ");
                    write_role(&mut out, r);
                }
            }
        }
    }
    out
}

fn write_prefix(out: &mut String, prefix: &[(Ident, Specifier)]) {
    if prefix.is_empty() {
        return;
    }
    for (i, (x, s)) in prefix.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{x}:");
        write_spec(out, s);
    }
    out.push_str(" | ");
}

/// Role names that the parser cannot re-infer from the printed text alone:
/// they occur only in unmarked role inclusions.
fn uninferable_roles(o: &Ontology) -> BTreeSet<Ident> {
    let mut marked = BTreeSet::new();
    let mut bare = BTreeSet::new();
    for ax in &o.axioms {
        match ax {
            Axiom::RoleAssertion { role, .. } => {
                marked.insert(role.clone());
            }
            Axiom::ConceptInclusion { lhs, rhs, .. } => {
                for b in lhs {
                    if let BasicConcept::Exists(r) = b {
                        marked.insert(r.name.clone());
                    }
                }
                if let ConceptRhs::Basic(BasicConcept::Exists(r)) = rhs {
                    marked.insert(r.name.clone());
                }
            }
            Axiom::RoleInclusion { lhs, rhs, .. } => {
                let rrole = match rhs {
                    RoleRhs::Positive(r) | RoleRhs::Negative(r) => r,
                };
                if lhs.inverse {
                    marked.insert(lhs.name.clone());
                }
                if rrole.inverse || matches!(rhs, RoleRhs::Negative(_)) {
                    marked.insert(rrole.name.clone());
                }
                bare.insert(lhs.name.clone());
                bare.insert(rrole.name.clone());
            }
            Axiom::ConceptAssertion { .. } => {}
        }
    }
    bare.difference(&marked).cloned().collect()
}

/// Prints an ontology in canonical `.adl` form, one axiom per line.
pub fn print_ontology(o: &Ontology) -> String {
    let mut out = String::new();
    let pragma = uninferable_roles(o);
    if !pragma.is_empty() {
        out.push_str("#! roles:");
        for r in &pragma {
            let _ = write!(out, " {r}");
        }
        out.push('\n');
    }
    for ax in &o.axioms {
        out.push_str(&print_axiom(ax));
        out.push('\n');
    }
    out
}
