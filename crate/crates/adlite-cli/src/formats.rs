//! On-disk formats: geometric models and temporal bundles in a line-based
//! text form and a JSON mirror, plus fact files for finite interpretations.
//! Rationals are serialized as `p/q` strings, so round trips are bit-exact.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use adlite::geometry::{GeometricInterpretation, LinearMap, Q, Region};
use adlite::semantics::FiniteInterpretation;
use adlite::syntax::{parse_specifier, GroundSpecifier, Ident, Nat, Specifier};
use adlite::temporal::{TemporalBounds, TemporalModelBundle};

use serde_json::{json, Map, Value};

#[derive(Debug)]
pub enum FormatError {
    Malformed(String),
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatError::Malformed(s) => write!(f, "malformed model file: {s}"),
        }
    }
}

impl std::error::Error for FormatError {}

fn err<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Malformed(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// A model file holds either a plain geometric model or a temporal bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelFile {
    Plain(GeometricInterpretation),
    Bundle(TemporalModelBundle),
}

// --- text ----------------------------------------------------------------

fn write_vec(out: &mut String, v: &[Q]) {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x}");
    }
    out.push('\n');
}

fn write_model_body(out: &mut String, eta: &GeometricInterpretation) {
    let m = eta.m();
    let _ = writeln!(out, "m {m}");
    let _ = writeln!(out, "map {}", 2 * m);
    for row in eta.map.rows() {
        write_vec(out, row);
    }
    for (name, v) in &eta.individuals {
        let _ = write!(out, "individual {name} ");
        write_vec(out, v);
    }
    for ((name, spec), region) in &eta.concepts {
        let _ = writeln!(out, "concept {name} {} {spec}", region.generators.len());
        for g in &region.generators {
            write_vec(out, g);
        }
    }
    for ((name, spec), region) in &eta.roles {
        let _ = writeln!(out, "role {name} {} {spec}", region.generators.len());
        for g in &region.generators {
            write_vec(out, g);
        }
    }
}

pub fn write_model_text(model: &ModelFile) -> String {
    let mut out = String::new();
    match model {
        ModelFile::Plain(eta) => {
            out.push_str("adlite-model 1\n");
            write_model_body(&mut out, eta);
        }
        ModelFile::Bundle(bundle) => {
            out.push_str("adlite-bundle 1\n");
            let _ = writeln!(
                out,
                "bounds {} {} {} {}",
                bundle.bounds.k_min, bundle.bounds.k_max, bundle.lo, bundle.hi
            );
            out.push_str("global\n");
            write_model_body(&mut out, &bundle.global);
            for (j, eta) in &bundle.family {
                let _ = writeln!(out, "time {j}");
                write_model_body(&mut out, eta);
            }
        }
    }
    out.push_str("end\n");
    out
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    i: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            lines: text.lines().collect(),
            i: 0,
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.i).copied().map(str::trim)
    }

    fn next(&mut self) -> Result<&'a str, FormatError> {
        let line = self.lines.get(self.i).copied();
        self.i += 1;
        line.map(str::trim)
            .ok_or_else(|| FormatError::Malformed("unexpected end of file".into()))
    }
}

fn parse_q(tok: &str) -> Result<Q, FormatError> {
    Q::from_str(tok).map_err(|e| FormatError::Malformed(format!("bad rational `{tok}`: {e}")))
}

fn parse_vec(line: &str, dim: usize) -> Result<Vec<Q>, FormatError> {
    let v: Vec<Q> = line
        .split_whitespace()
        .map(parse_q)
        .collect::<Result<_, _>>()?;
    if v.len() != dim {
        return err(format!("expected {dim} coordinates, got {}", v.len()));
    }
    Ok(v)
}

fn ground_spec_of(text: &str) -> Result<GroundSpecifier, FormatError> {
    let spec: Specifier = parse_specifier(text)
        .map_err(|e| FormatError::Malformed(format!("bad specifier `{text}`: {e}")))?;
    spec.to_ground()
        .ok_or_else(|| FormatError::Malformed(format!("specifier `{text}` is not ground")))
}

fn parse_model_body(lines: &mut Lines) -> Result<GeometricInterpretation, FormatError> {
    let header = lines.next()?;
    let m: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["m", m] => m
            .parse()
            .map_err(|_| FormatError::Malformed("bad dimension".into()))?,
        _ => return err("expected `m <dim>`"),
    };
    let map_header = lines.next()?;
    let dim: usize = match map_header.split_whitespace().collect::<Vec<_>>()[..] {
        ["map", d] => d
            .parse()
            .map_err(|_| FormatError::Malformed("bad map dimension".into()))?,
        _ => return err("expected `map <dim>`"),
    };
    if dim != 2 * m {
        return err("map dimension must be twice the model dimension");
    }
    let mut rows = Vec::with_capacity(dim);
    for _ in 0..dim {
        rows.push(parse_vec(lines.next()?, dim)?);
    }
    let map = LinearMap::new(rows).map_err(|e| FormatError::Malformed(format!("{e}")))?;
    let mut eta = GeometricInterpretation::new(map)
        .map_err(|e| FormatError::Malformed(format!("{e}")))?;

    while let Some(line) = lines.peek() {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("individual") => {
                let line = lines.next()?;
                let rest = line.trim_start_matches("individual").trim_start();
                let (name, coords) = rest
                    .split_once(' ')
                    .ok_or_else(|| FormatError::Malformed("bad individual line".into()))?;
                eta.set_individual(Ident::new(name), parse_vec(coords, m)?)
                    .map_err(|e| FormatError::Malformed(format!("{e}")))?;
            }
            Some(kw @ ("concept" | "role")) => {
                let line = lines.next()?;
                let rest = line[kw.len()..].trim_start();
                let (name, rest) = rest
                    .split_once(' ')
                    .ok_or_else(|| FormatError::Malformed(format!("bad {kw} line")))?;
                let (count, spec_text) = rest
                    .split_once(' ')
                    .ok_or_else(|| FormatError::Malformed(format!("bad {kw} line")))?;
                let count: usize = count
                    .parse()
                    .map_err(|_| FormatError::Malformed("bad generator count".into()))?;
                let spec = ground_spec_of(spec_text)?;
                let gdim = if kw == "concept" { m } else { 2 * m };
                let mut gens = Vec::with_capacity(count);
                for _ in 0..count {
                    gens.push(parse_vec(lines.next()?, gdim)?);
                }
                let region = Region::from_generators(gdim, gens)
                    .map_err(|e| FormatError::Malformed(format!("{e}")))?;
                if kw == "concept" {
                    eta.set_concept_region(Ident::new(name), spec, region)
                } else {
                    eta.set_role_region(Ident::new(name), spec, region)
                }
                .map_err(|e| FormatError::Malformed(format!("{e}")))?;
            }
            _ => break,
        }
    }
    Ok(eta)
}

fn parse_nat(tok: &str) -> Result<Nat, FormatError> {
    Nat::from_str(tok).map_err(|_| FormatError::Malformed(format!("bad natural `{tok}`")))
}

pub fn parse_model_text(text: &str) -> Result<ModelFile, FormatError> {
    let mut lines = Lines::new(text);
    match lines.next()? {
        "adlite-model 1" => {
            let eta = parse_model_body(&mut lines)?;
            if lines.next()? != "end" {
                return err("expected `end`");
            }
            Ok(ModelFile::Plain(eta))
        }
        "adlite-bundle 1" => {
            let bounds_line = lines.next()?;
            let toks: Vec<&str> = bounds_line.split_whitespace().collect();
            let [_, k_min, k_max, lo, hi] = toks[..] else {
                return err("expected `bounds <k_min> <k_max> <lo> <hi>`");
            };
            let bounds = TemporalBounds {
                k_min: parse_nat(k_min)?,
                k_max: parse_nat(k_max)?,
            };
            let (lo, hi) = (parse_nat(lo)?, parse_nat(hi)?);
            if lines.next()? != "global" {
                return err("expected `global`");
            }
            let global = parse_model_body(&mut lines)?;
            let mut family = Vec::new();
            loop {
                let line = lines.next()?;
                if line == "end" {
                    break;
                }
                let Some(j) = line.strip_prefix("time ") else {
                    return err("expected `time <j>` or `end`");
                };
                family.push((parse_nat(j.trim())?, parse_model_body(&mut lines)?));
            }
            Ok(ModelFile::Bundle(TemporalModelBundle {
                global,
                family,
                bounds,
                lo,
                hi,
            }))
        }
        other => err(format!("unknown header `{other}`")),
    }
}

// --- json ------------------------------------------------------------------

fn vec_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn model_json(eta: &GeometricInterpretation) -> Value {
    let mut individuals = Map::new();
    for (name, v) in &eta.individuals {
        individuals.insert(name.to_string(), vec_json(v));
    }
    let regions = |map: &std::collections::BTreeMap<(Ident, GroundSpecifier), Region>| {
        Value::Array(
            map.iter()
                .map(|((name, spec), region)| {
                    json!({
                        "name": name.to_string(),
                        "spec": spec.to_string(),
                        "generators": region
                            .generators
                            .iter()
                            .map(|g| vec_json(g))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    };
    json!({
        "m": eta.m(),
        "map": eta.map.rows().iter().map(|r| vec_json(r)).collect::<Vec<_>>(),
        "individuals": individuals,
        "concepts": regions(&eta.concepts),
        "roles": regions(&eta.roles),
    })
}

pub fn write_model_json(model: &ModelFile) -> String {
    let value = match model {
        ModelFile::Plain(eta) => json!({
            "format": "adlite-model",
            "version": 1,
            "model": model_json(eta),
        }),
        ModelFile::Bundle(bundle) => json!({
            "format": "adlite-bundle",
            "version": 1,
            "bounds": {
                "k_min": bundle.bounds.k_min.to_string(),
                "k_max": bundle.bounds.k_max.to_string(),
                "lo": bundle.lo.to_string(),
                "hi": bundle.hi.to_string(),
            },
            "global": model_json(&bundle.global),
            "family": bundle
                .family
                .iter()
                .map(|(j, eta)| json!({"time": j.to_string(), "model": model_json(eta)}))
                .collect::<Vec<_>>(),
        }),
    };
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

fn q_from_json(v: &Value) -> Result<Q, FormatError> {
    match v {
        Value::String(s) => parse_q(s),
        _ => err("rationals must be strings"),
    }
}

fn vec_from_json(v: &Value, dim: usize) -> Result<Vec<Q>, FormatError> {
    let Value::Array(items) = v else {
        return err("expected an array of coordinates");
    };
    if items.len() != dim {
        return err(format!("expected {dim} coordinates"));
    }
    items.iter().map(q_from_json).collect()
}

fn model_from_json(v: &Value) -> Result<GeometricInterpretation, FormatError> {
    let m = v["m"]
        .as_u64()
        .ok_or_else(|| FormatError::Malformed("missing m".into()))? as usize;
    let dim = 2 * m;
    let Value::Array(rows) = &v["map"] else {
        return err("missing map");
    };
    let rows: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| vec_from_json(r, dim))
        .collect::<Result<_, _>>()?;
    let map = LinearMap::new(rows).map_err(|e| FormatError::Malformed(format!("{e}")))?;
    let mut eta =
        GeometricInterpretation::new(map).map_err(|e| FormatError::Malformed(format!("{e}")))?;
    let Value::Object(individuals) = &v["individuals"] else {
        return err("missing individuals");
    };
    for (name, coords) in individuals {
        eta.set_individual(Ident::new(name), vec_from_json(coords, m)?)
            .map_err(|e| FormatError::Malformed(format!("{e}")))?;
    }
    for (key, gdim, is_concept) in [("concepts", m, true), ("roles", dim, false)] {
        let Value::Array(entries) = &v[key] else {
            return err(format!("missing {key}"));
        };
        for e in entries {
            let name = e["name"]
                .as_str()
                .ok_or_else(|| FormatError::Malformed("missing region name".into()))?;
            let spec = ground_spec_of(
                e["spec"]
                    .as_str()
                    .ok_or_else(|| FormatError::Malformed("missing region spec".into()))?,
            )?;
            let Value::Array(gens) = &e["generators"] else {
                return err("missing generators");
            };
            let gens: Vec<Vec<Q>> = gens
                .iter()
                .map(|g| vec_from_json(g, gdim))
                .collect::<Result<_, _>>()?;
            let region = Region::from_generators(gdim, gens)
                .map_err(|e| FormatError::Malformed(format!("{e}")))?;
            if is_concept {
                eta.set_concept_region(Ident::new(name), spec, region)
            } else {
                eta.set_role_region(Ident::new(name), spec, region)
            }
            .map_err(|e| FormatError::Malformed(format!("{e}")))?;
        }
    }
    Ok(eta)
}

pub fn parse_model_json(text: &str) -> Result<ModelFile, FormatError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| FormatError::Malformed(format!("{e}")))?;
    match value["format"].as_str() {
        Some("adlite-model") => Ok(ModelFile::Plain(model_from_json(&value["model"])?)),
        Some("adlite-bundle") => {
            let b = &value["bounds"];
            let nat_field = |k: &str| -> Result<Nat, FormatError> {
                parse_nat(
                    b[k].as_str()
                        .ok_or_else(|| FormatError::Malformed(format!("missing bounds.{k}")))?,
                )
            };
            let bounds = TemporalBounds {
                k_min: nat_field("k_min")?,
                k_max: nat_field("k_max")?,
            };
            let (lo, hi) = (nat_field("lo")?, nat_field("hi")?);
            let global = model_from_json(&value["global"])?;
            let Value::Array(entries) = &value["family"] else {
                return err("missing family");
            };
            let mut family = Vec::new();
            for e in entries {
                let j = parse_nat(
                    e["time"]
                        .as_str()
                        .ok_or_else(|| FormatError::Malformed("missing time".into()))?,
                )?;
                family.push((j, model_from_json(&e["model"])?));
            }
            Ok(ModelFile::Bundle(TemporalModelBundle {
                global,
                family,
                bounds,
                lo,
                hi,
            }))
        }
        _ => err("unknown JSON format"),
    }
}

/// Writes a model in the requested format.
pub fn write_model(model: &ModelFile, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => write_model_text(model),
        OutputFormat::Json => write_model_json(model),
    }
}

/// Parses a model file, auto-detecting text vs JSON.
pub fn parse_model(text: &str) -> Result<ModelFile, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_model_json(text)
    } else {
        parse_model_text(text)
    }
}

// --- fact files ---------------------------------------------------------------

/// Serializes a finite interpretation as a flat fact file: domain pragmas
/// followed by one assertion per fact. Annotation sets are printed as
/// closed specifiers.
pub fn write_fact_file(i: &FiniteInterpretation) -> String {
    let mut out = String::new();
    if !i.individuals.is_empty() {
        let _ = write!(out, "#! individuals:");
        for d in &i.individuals {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
    }
    if !i.annotations.is_empty() {
        let _ = write!(out, "#! annotations:");
        for a in &i.annotations {
            let _ = write!(out, " {a}");
        }
        out.push('\n');
    }
    let spec_of = |f: &adlite::semantics::AnnotationSet| -> String {
        let mut s = String::from("{");
        for (k, (a, v)) in f.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{a}:{v}");
        }
        s.push('}');
        s
    };
    for (name, ext) in &i.concepts {
        for (d, f) in ext {
            let _ = writeln!(out, "{name}({d})@{}", spec_of(f));
        }
    }
    for (name, ext) in &i.roles {
        for (d, e, f) in ext {
            let _ = writeln!(out, "{name}({d},{e})@{}", spec_of(f));
        }
    }
    out
}

/// Reads a fact file back into a finite interpretation.
pub fn parse_fact_file(text: &str) -> Result<FiniteInterpretation, FormatError> {
    let mut i = FiniteInterpretation::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("#!") {
            let mut words = rest
                .split(|c: char| c.is_whitespace() || c == ':')
                .filter(|w| !w.is_empty());
            match words.next() {
                Some("individuals") => {
                    for w in words {
                        i.individuals.insert(Ident::new(w));
                    }
                }
                Some("annotations") => {
                    for w in words {
                        i.annotations.insert(parse_anno_value(w)?);
                    }
                }
                _ => {}
            }
        }
    }
    let o = adlite::parse_ontology(text)
        .map_err(|e| FormatError::Malformed(format!("fact file: {e}")))?;
    for ax in &o.axioms {
        match ax {
            adlite::syntax::Axiom::ConceptAssertion {
                concept,
                individual,
                spec,
            } => {
                let g = spec
                    .to_ground()
                    .ok_or_else(|| FormatError::Malformed("non-ground fact".into()))?;
                let f: adlite::semantics::AnnotationSet = g
                    .pairs
                    .iter()
                    .map(|(a, v)| (adlite::syntax::AnnoValue::Name(a.clone()), v.clone()))
                    .collect();
                i.add_concept_fact(concept.as_str(), individual.as_str(), f);
            }
            adlite::syntax::Axiom::RoleAssertion {
                role,
                subject,
                object,
                spec,
            } => {
                let g = spec
                    .to_ground()
                    .ok_or_else(|| FormatError::Malformed("non-ground fact".into()))?;
                let f: adlite::semantics::AnnotationSet = g
                    .pairs
                    .iter()
                    .map(|(a, v)| (adlite::syntax::AnnoValue::Name(a.clone()), v.clone()))
                    .collect();
                i.add_role_fact(role.as_str(), subject.as_str(), object.as_str(), f);
            }
            _ => return err("fact files may only contain assertions"),
        }
    }
    Ok(i)
}

/// An annotation value in pragma position: a natural, `[k,l]`, or a name.
fn parse_anno_value(w: &str) -> Result<adlite::syntax::AnnoValue, FormatError> {
    use adlite::syntax::AnnoValue;
    if let Some(body) = w.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (a, b) = body
            .split_once(',')
            .ok_or_else(|| FormatError::Malformed(format!("bad interval `{w}`")))?;
        return Ok(AnnoValue::Interval(
            Nat::from_str(a.trim())
                .map_err(|_| FormatError::Malformed(format!("bad interval `{w}`")))?,
            Nat::from_str(b.trim())
                .map_err(|_| FormatError::Malformed(format!("bad interval `{w}`")))?,
        ));
    }
    if w.chars().all(|c| c.is_ascii_digit()) && !w.is_empty() {
        return Ok(AnnoValue::Time(Nat::from_str(w).expect("digits")));
    }
    Ok(AnnoValue::Name(Ident::new(w)))
}

/// Name-table sidecar: one line `plain<TAB>kind<TAB>name<TAB>spec`.
pub fn write_name_table(table: &adlite::grounding::NameTable) -> String {
    let mut out = String::new();
    for (plain, (kind, name, spec)) in &table.reverse {
        let kind = match kind {
            adlite::grounding::NameKind::Concept => "concept",
            adlite::grounding::NameKind::Role => "role",
        };
        let _ = writeln!(out, "{plain}\t{kind}\t{name}\t{spec}");
    }
    out
}

/// The annotation names of an ontology, used as the induced-check domain.
pub fn annotation_names(o: &adlite::Ontology) -> BTreeSet<Ident> {
    adlite::grounding::annotation_domain(o).names
}

/// Pulls a saturated fact base back through the name table: each plain
/// fact `E_S(t)` becomes a fact of the original name annotated with the
/// pair set of `S`.
pub fn resolved_interpretation(
    fb: &adlite::reasoner::FactBase,
    table: &adlite::grounding::NameTable,
) -> FiniteInterpretation {
    use adlite::grounding::NameKind;
    use adlite::syntax::AnnoValue;
    let mut i = FiniteInterpretation::new();
    i.individuals = fb.individuals.clone();
    let anno_set = |spec: &GroundSpecifier| -> adlite::semantics::AnnotationSet {
        spec.pairs
            .iter()
            .map(|(a, v)| (AnnoValue::Name(a.clone()), v.clone()))
            .collect()
    };
    for (plain, inds) in &fb.concepts {
        let (name, f) = match table.resolve(plain) {
            Some((NameKind::Concept, name, spec)) => {
                for (a, v) in &spec.pairs {
                    i.annotations.insert(AnnoValue::Name(a.clone()));
                    i.annotations.insert(v.clone());
                }
                (name.clone(), anno_set(spec))
            }
            _ => (plain.clone(), adlite::semantics::AnnotationSet::new()),
        };
        for d in inds {
            i.concepts
                .entry(name.clone())
                .or_default()
                .insert((d.clone(), f.clone()));
        }
    }
    for (plain, pairs) in &fb.roles {
        let (name, f) = match table.resolve(plain) {
            Some((NameKind::Role, name, spec)) => {
                for (a, v) in &spec.pairs {
                    i.annotations.insert(AnnoValue::Name(a.clone()));
                    i.annotations.insert(v.clone());
                }
                (name.clone(), anno_set(spec))
            }
            _ => (plain.clone(), adlite::semantics::AnnotationSet::new()),
        };
        for (d, e) in pairs {
            i.roles
                .entry(name.clone())
                .or_default()
                .insert((d.clone(), e.clone(), f.clone()));
        }
    }
    i
}

#[cfg(test)]
mod tests {
    use super::*;
    use adlite::syntax::AnnoValue;

    #[test]
    fn fact_files_roundtrip() {
        let mut i = FiniteInterpretation::new();
        i.annotations.insert(AnnoValue::Name(Ident::new("p")));
        i.annotations.insert(AnnoValue::Time(Nat::from(3u32)));
        let mut f = adlite::semantics::AnnotationSet::new();
        f.insert((
            AnnoValue::Name(Ident::new("p")),
            AnnoValue::Name(Ident::new("q")),
        ));
        i.add_concept_fact("A", "d", f.clone());
        i.add_role_fact("R", "d", "e", adlite::semantics::AnnotationSet::new());
        let text = write_fact_file(&i);
        let back = parse_fact_file(&text).unwrap();
        assert_eq!(back.concepts, i.concepts);
        assert_eq!(back.roles, i.roles);
        assert_eq!(back.individuals, i.individuals);
        assert!(back.annotations.is_superset(&i.annotations));
    }
}
