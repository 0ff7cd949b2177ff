//! Self-contained certificate files and their independent checker.
//!
//! A certificate carries raw tables for everything it mentions: the
//! base category, every presheaf (levels and actions), and every map
//! (components). The checker rebuilds all of it from those tables,
//! which re-validates associativity, functoriality, and naturality,
//! and then evaluates a fixed list of composite equations for the
//! certificate kind. Nothing the constructing run computed is trusted;
//! only the tables are.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::RetractCertificate;
use crate::index_cat::{CategoryData, IndexCategory};
use crate::lifting::LiftingProblem;
use crate::limits::{product, product_map};
use crate::presheaf::{MapData, Presheaf, PresheafMap};

pub const CERTIFICATE_SCHEMA: u32 = 1;
pub const RETRACT_KIND: &str = "retract-certificate";
pub const LIFT_KIND: &str = "lift-certificate";

/// One serialized map: endpoint names into the objects table plus the
/// raw component tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMap {
    pub source: String,
    pub target: String,
    pub components: MapData,
}

/// One equation between composition chains. Chains list map names
/// outermost first, so `["h", "graph_t"]` denotes h after graph_t;
/// the token `id:<object>` denotes an identity map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub label: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

/// A complete certificate document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: u32,
    pub kind: String,
    pub base: CategoryData,
    pub objects: BTreeMap<String, crate::presheaf::PresheafData>,
    pub maps: BTreeMap<String, NamedMap>,
    pub equations: Vec<Equation>,
    pub transcript: Vec<String>,
}

fn eq(label: &str, lhs: &[&str], rhs: &[&str]) -> Equation {
    Equation {
        label: label.to_string(),
        lhs: lhs.iter().map(|s| s.to_string()).collect(),
        rhs: rhs.iter().map(|s| s.to_string()).collect(),
    }
}

/// The equations a certificate of the given kind must state and pass.
pub fn required_equations(kind: &str) -> Vec<Equation> {
    match kind {
        RETRACT_KIND => vec![
            eq("contraction retracts the graph of t", &["h", "graph_t"], &["id:x"]),
            eq("z after the contraction", &["z_component", "h"], &["z_component", "pr1"]),
            eq("t after the contraction", &["t_component", "h"], &["pr2"]),
            eq("iz is the structure map after z", &["iz"], &["structure", "z_component"]),
            eq("graph of t projects to the identity", &["pr1", "graph_t"], &["id:x"]),
            eq("graph of t projects to t", &["pr2", "graph_t"], &["t_component"]),
            eq("graph of iz projects to the identity", &["pr1", "graph_iz"], &["id:x"]),
            eq("graph of iz projects to iz", &["pr2", "graph_iz"], &["iz"]),
            eq("fiber over Z equalizes iz and t", &["iz", "z_section"], &["t_component", "z_section"]),
            eq("Z row section square", &["graph_iz", "z_section"], &["graph_t", "z_section"]),
            eq("Z row retraction square", &["z_section", "z_retraction"], &["h", "graph_iz"]),
            eq("Z row identity composite", &["z_retraction", "z_section"], &["id:over_z"]),
            eq(
                "cylinder row section square",
                &["crossed_fiber", "cylinder_section"],
                &["graph_t", "fiber_inclusion"],
            ),
            eq(
                "cylinder row retraction square",
                &["fiber_inclusion", "cylinder_retraction"],
                &["h", "crossed_fiber"],
            ),
            eq(
                "cylinder row identity composite",
                &["cylinder_retraction", "cylinder_section"],
                &["id:over_source_cylinder"],
            ),
            eq("retract domain identity", &["r_dom", "s_dom"], &["id:domain"]),
            eq("retract codomain identity", &["r_cod", "s_cod"], &["id:x"]),
            eq("retract section square", &["replacement", "s_dom"], &["s_cod", "pulled"]),
            eq("retract retraction square", &["pulled", "r_dom"], &["r_cod", "replacement"]),
            eq("codomain section is the graph of t", &["s_cod"], &["graph_t"]),
            eq("codomain retraction is the contraction", &["r_cod"], &["h"]),
        ],
        LIFT_KIND => vec![
            eq("square commutes", &["right", "top"], &["bottom", "left"]),
            eq("upper triangle", &["lift", "left"], &["top"]),
            eq("lower triangle", &["right", "lift"], &["bottom"]),
        ],
        _ => Vec::new(),
    }
}

/// Serializes a retract certificate into a self-contained file.
pub fn retract_certificate_file(cert: &RetractCertificate) -> Result<CertificateFile> {
    let cube = cert.cube();
    let gtc = cube.gtc();
    let x = cube.x();
    let interval = gtc.interval();
    let z_obj = gtc.c().target();
    let cylinder = product(x, interval)?;
    let over_sc = cube.over_source_cylinder().apex();
    let crossed_cylinder = product(over_sc, interval)?;
    let iz = gtc.i().compose(cube.z())?;
    let graph_t = cert.retract().s_cod.clone();
    let graph_iz = cylinder.gap(x, &[&PresheafMap::identity(x), &iz])?;
    let crossed_fiber = product_map(
        &crossed_cylinder,
        &cylinder,
        cube.b(),
        &PresheafMap::identity(interval),
    )?;

    let mut objects = BTreeMap::new();
    objects.insert("x".to_string(), x.to_data());
    objects.insert("interval".to_string(), interval.to_data());
    objects.insert("z".to_string(), z_obj.to_data());
    objects.insert("cylinder".to_string(), cylinder.apex().to_data());
    objects.insert("over_z".to_string(), cube.over_z().apex().to_data());
    objects.insert("over_source_cylinder".to_string(), over_sc.to_data());
    objects.insert("crossed_cylinder".to_string(), crossed_cylinder.apex().to_data());
    objects.insert("domain".to_string(), cube.domain().to_data());
    objects.insert("replacement_domain".to_string(), cert.v().domain().to_data());

    let named = |source: &str, target: &str, map: &PresheafMap| NamedMap {
        source: source.to_string(),
        target: target.to_string(),
        components: map.to_data(),
    };
    let mut maps = BTreeMap::new();
    maps.insert("pulled".to_string(), named("domain", "x", cube.pulled()));
    maps.insert("replacement".to_string(), named("replacement_domain", "cylinder", cert.v().u()));
    maps.insert("h".to_string(), named("cylinder", "x", cert.h()));
    maps.insert("z_component".to_string(), named("x", "z", cube.z()));
    maps.insert("t_component".to_string(), named("x", "interval", cube.t()));
    maps.insert("structure".to_string(), named("z", "interval", gtc.i()));
    maps.insert("iz".to_string(), named("x", "interval", &iz));
    maps.insert("pr1".to_string(), named("cylinder", "x", cylinder.leg("pr1")));
    maps.insert("pr2".to_string(), named("cylinder", "interval", cylinder.leg("pr2")));
    maps.insert("graph_t".to_string(), named("x", "cylinder", &graph_t));
    maps.insert("graph_iz".to_string(), named("x", "cylinder", &graph_iz));
    maps.insert("z_section".to_string(), named("over_z", "x", cert.z_section()));
    maps.insert("z_retraction".to_string(), named("x", "over_z", cert.z_retraction()));
    maps.insert("fiber_inclusion".to_string(), named("over_source_cylinder", "x", cube.b()));
    maps.insert(
        "cylinder_section".to_string(),
        named("over_source_cylinder", "crossed_cylinder", cert.cylinder_section()),
    );
    maps.insert(
        "cylinder_retraction".to_string(),
        named("crossed_cylinder", "over_source_cylinder", cert.cylinder_retraction()),
    );
    maps.insert(
        "crossed_fiber".to_string(),
        named("crossed_cylinder", "cylinder", &crossed_fiber),
    );
    maps.insert("s_dom".to_string(), named("domain", "replacement_domain", &cert.retract().s_dom));
    maps.insert("r_dom".to_string(), named("replacement_domain", "domain", &cert.retract().r_dom));
    maps.insert("s_cod".to_string(), named("x", "cylinder", &cert.retract().s_cod));
    maps.insert("r_cod".to_string(), named("cylinder", "x", &cert.retract().r_cod));

    Ok(CertificateFile {
        schema: CERTIFICATE_SCHEMA,
        kind: RETRACT_KIND.to_string(),
        base: x.base().to_data(),
        objects,
        maps,
        equations: required_equations(RETRACT_KIND),
        transcript: cert.transcript().to_vec(),
    })
}

/// Serializes a solved lifting problem into a self-contained file.
pub fn lift_certificate_file(
    problem: &LiftingProblem,
    lift: &PresheafMap,
) -> Result<CertificateFile> {
    if lift.source() != problem.left().target() || lift.target() != problem.right().source() {
        return Err(Error::contract("lift endpoints do not match the problem"));
    }
    let mut objects = BTreeMap::new();
    objects.insert("left_source".to_string(), problem.left().source().to_data());
    objects.insert("left_target".to_string(), problem.left().target().to_data());
    objects.insert("right_source".to_string(), problem.right().source().to_data());
    objects.insert("right_target".to_string(), problem.right().target().to_data());
    let named = |source: &str, target: &str, map: &PresheafMap| NamedMap {
        source: source.to_string(),
        target: target.to_string(),
        components: map.to_data(),
    };
    let mut maps = BTreeMap::new();
    maps.insert("left".to_string(), named("left_source", "left_target", problem.left()));
    maps.insert("right".to_string(), named("right_source", "right_target", problem.right()));
    maps.insert("top".to_string(), named("left_source", "right_source", problem.top()));
    maps.insert("bottom".to_string(), named("left_target", "right_target", problem.bottom()));
    maps.insert("lift".to_string(), named("left_target", "right_source", lift));
    Ok(CertificateFile {
        schema: CERTIFICATE_SCHEMA,
        kind: LIFT_KIND.to_string(),
        base: problem.left().base().to_data(),
        objects,
        maps,
        equations: required_equations(LIFT_KIND),
        transcript: Vec::new(),
    })
}

/// Outcome of independently checking a certificate file. Empty
/// failures means everything the kind requires was rebuilt and passed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: String,
    pub objects: usize,
    pub maps: usize,
    pub equations_checked: usize,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.failures.is_empty()
    }
}

fn evaluate_chain(
    chain: &[String],
    objects: &BTreeMap<String, Presheaf>,
    maps: &BTreeMap<String, PresheafMap>,
) -> std::result::Result<PresheafMap, String> {
    if chain.is_empty() {
        return Err("empty composition chain".to_string());
    }
    let lookup = |token: &str| -> std::result::Result<PresheafMap, String> {
        if let Some(name) = token.strip_prefix("id:") {
            objects
                .get(name)
                .map(PresheafMap::identity)
                .ok_or_else(|| format!("identity of unknown object {name:?}"))
        } else {
            maps.get(token).cloned().ok_or_else(|| format!("unknown map {token:?}"))
        }
    };
    let mut acc = lookup(chain.last().unwrap())?;
    for token in chain.iter().rev().skip(1) {
        let outer = lookup(token)?;
        acc = outer
            .compose(&acc)
            .map_err(|e| format!("chain does not compose at {token:?}: {e}"))?;
    }
    Ok(acc)
}

/// Rebuilds every object and map of the file from raw tables and
/// checks all equations of the file plus the fixed set its kind
/// requires. All reconstruction problems are reported as failures,
/// never trusted away.
pub fn verify_certificate(file: &CertificateFile) -> VerificationReport {
    let mut failures = Vec::new();
    if file.schema != CERTIFICATE_SCHEMA {
        failures.push(format!("unsupported schema {}", file.schema));
    }
    let base = match IndexCategory::from_data(&file.base) {
        Ok(cat) => Some(Arc::new(cat)),
        Err(e) => {
            failures.push(format!("base category does not validate: {e}"));
            None
        }
    };

    let mut objects = BTreeMap::new();
    let mut maps = BTreeMap::new();
    if let Some(base) = &base {
        for (name, data) in &file.objects {
            match Presheaf::from_data(base.clone(), data) {
                Ok(p) => {
                    objects.insert(name.clone(), p);
                }
                Err(e) => failures.push(format!("object {name:?} does not validate: {e}")),
            }
        }
        for (name, named) in &file.maps {
            let source = objects.get(&named.source);
            let target = objects.get(&named.target);
            match (source, target) {
                (Some(s), Some(t)) => match PresheafMap::from_data(s, t, &named.components) {
                    Ok(m) => {
                        maps.insert(name.clone(), m);
                    }
                    Err(e) => failures.push(format!("map {name:?} does not validate: {e}")),
                },
                _ => failures.push(format!(
                    "map {name:?} references unknown endpoints {:?} -> {:?}",
                    named.source, named.target
                )),
            }
        }
    }

    let required = required_equations(&file.kind);
    if required.is_empty() && file.kind != RETRACT_KIND && file.kind != LIFT_KIND {
        failures.push(format!("unknown certificate kind {:?}", file.kind));
    }
    for needed in &required {
        if !file.equations.iter().any(|e| e.lhs == needed.lhs && e.rhs == needed.rhs) {
            failures.push(format!("required equation missing: {}", needed.label));
        }
    }

    let mut equations_checked = 0;
    let mut seen = std::collections::BTreeSet::new();
    for equation in file.equations.iter().chain(required.iter()) {
        let key = (equation.lhs.clone(), equation.rhs.clone());
        if !seen.insert(key) {
            continue;
        }
        equations_checked += 1;
        let lhs = evaluate_chain(&equation.lhs, &objects, &maps);
        let rhs = evaluate_chain(&equation.rhs, &objects, &maps);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                if l != r {
                    failures.push(format!("equation fails: {}", equation.label));
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                failures.push(format!("equation {} cannot be evaluated: {e}", equation.label));
            }
        }
    }

    VerificationReport {
        kind: file.kind.clone(),
        objects: objects.len(),
        maps: maps.len(),
        equations_checked,
        failures,
    }
}

/// Renders a certificate deterministically; equal inputs produce
/// byte-identical output.
pub fn to_json(file: &CertificateFile) -> Result<String> {
    let mut text = serde_json::to_string_pretty(file)
        .map_err(|e| Error::Schema(format!("certificate serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn parse(text: &str) -> Result<CertificateFile> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("certificate parse error: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::pullback_gtc_retract;
    use crate::gtc::{boundary_simplex, build_gtc};
    use crate::index_cat::preset_simplex;
    use crate::lifting::{solve_lift, FibrationWitness};
    use crate::presheaf::{yoneda, yoneda_map, CofibrationClass, PresheafContext};
    use crate::Budget;

    fn sample_certificate() -> CertificateFile {
        let base = Arc::new(preset_simplex(1).unwrap());
        let interval = yoneda(&base, 1);
        let ctx = PresheafContext::new(base.clone(), interval.clone(), CofibrationClass::Monomorphisms)
            .unwrap();
        let c = boundary_simplex(&base, 1).unwrap();
        let spec = build_gtc(&ctx, &c, &PresheafMap::identity(&interval)).unwrap();
        let p = PresheafMap::identity(spec.codomain());
        let witness = FibrationWitness::by_search(p, Budget::default());
        let cert = pullback_gtc_retract(&spec, &witness).unwrap();
        retract_certificate_file(&cert).unwrap()
    }

    #[test]
    fn retract_certificates_round_trip_and_verify() {
        let file = sample_certificate();
        let text = to_json(&file).unwrap();
        let back = parse(&text).unwrap();
        assert_eq!(back, file);
        let report = verify_certificate(&back);
        assert!(report.is_verified(), "failures: {:?}", report.failures);
        assert_eq!(report.kind, RETRACT_KIND);
        assert_eq!(report.equations_checked, required_equations(RETRACT_KIND).len());
    }

    #[test]
    fn emission_is_deterministic() {
        let a = to_json(&sample_certificate()).unwrap();
        let b = to_json(&sample_certificate()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tampered_components_are_caught() {
        let mut file = sample_certificate();
        let entry = file.maps.get_mut("r_dom").unwrap();
        let row = entry.components.components.iter_mut().next().unwrap().1;
        if !row.is_empty() {
            row[0] = (row[0] + 1) % 2;
        }
        let report = verify_certificate(&file);
        assert!(!report.is_verified());
    }

    #[test]
    fn missing_required_equations_are_caught() {
        let mut file = sample_certificate();
        file.equations.clear();
        let report = verify_certificate(&file);
        assert!(report
            .failures
            .iter()
            .any(|f| f.contains("required equation missing")));
    }

    #[test]
    fn lift_certificates_verify_and_catch_bad_lifts() {
        let base = Arc::new(preset_simplex(1).unwrap());
        let interval = yoneda(&base, 1);
        let point = yoneda(&base, 0);
        let v0 = yoneda_map(&base, base.hom(0, 1)[0]);
        let collapse = crate::limits::terminal_map(&interval);
        let problem = LiftingProblem::new(
            v0.clone(),
            v0.clone(),
            PresheafMap::identity(&point),
            v0.compose(&collapse).unwrap(),
        )
        .unwrap();
        let lift = solve_lift(&problem, &Budget::default()).unwrap().unwrap();
        let file = lift_certificate_file(&problem, &lift).unwrap();
        let report = verify_certificate(&file);
        assert!(report.is_verified(), "failures: {:?}", report.failures);

        let mut bad = file.clone();
        let entry = bad.maps.get_mut("lift").unwrap();
        for (_, row) in entry.components.components.iter_mut() {
            for v in row.iter_mut() {
                *v = (*v + 1) % 2;
            }
        }
        assert!(!verify_certificate(&bad).is_verified());
    }
}
