//! Scenario files: a versioned JSON format declaring a base shape,
//! named presheaves and maps built from a fixed vocabulary, declared
//! fibrations, and one task to execute. Reports are plain data; the
//! text form is a rendering of the same report, so equal inputs and
//! options produce byte-identical output either way.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::certificate::{lift_certificate_file, retract_certificate_file, verify_certificate};
use crate::error::{Error, Result};
use crate::frobenius::{
    frobenius_witness, left_fibration_counterexample, pullback_gtc_retract, pushforward,
    verify_adjunction,
};
use crate::generate::{random_map, random_presheaf, random_problem, seeded};
use crate::gtc::{boundary_cube, boundary_simplex, build_gtc};
use crate::index_cat::{preset_cube, preset_poset, preset_simplex, CategoryData, IndexCategory};
use crate::lifting::{all_lifts, solve_lift, FibrationWitness, GtcProblem, LiftingProblem};
use crate::lifting::lift_via_retract;
use crate::limits::{initial, initial_map, product, terminal, terminal_map, ConeResult};
use crate::presheaf::{
    codiscrete, yoneda, CofibrationClass, MapData, Presheaf, PresheafContext, PresheafData,
    PresheafMap,
};
use crate::Budget;

pub const SCENARIO_SCHEMA: u32 = 1;
pub const DEFAULT_SEED: u64 = 17;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseDecl {
    Simplex(usize),
    Cube(usize),
    Poset { name: String, elements: Vec<String>, leq: Vec<(String, String)> },
    Category(CategoryData),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresheafDecl {
    Representable(String),
    Codiscrete(usize),
    Product([String; 2]),
    Terminal {},
    Initial {},
    Tables(PresheafData),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedPresheafDecl {
    pub name: String,
    #[serde(flatten)]
    pub decl: PresheafDecl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapDecl {
    Identity(String),
    Initial(String),
    Terminal(String),
    Boundary(usize),
    Projection { of: String, onto: u8 },
    Tables { source: String, target: String, components: MapData },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedMapDecl {
    pub name: String,
    #[serde(flatten)]
    pub decl: MapDecl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskDecl {
    Validate {},
    Lift { left: String, right: String, top: String, bottom: String },
    Gtc { c: String, i: String },
    Retract {
        c: String,
        i: String,
        fibration: String,
        #[serde(default)]
        problems: usize,
    },
    Pushforward {
        f: String,
        p: String,
        #[serde(default)]
        family: usize,
    },
    Counterexample {},
}

fn default_cofibrations() -> String {
    "monomorphisms".to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub schema: u32,
    pub name: String,
    pub base: BaseDecl,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<String>,
    #[serde(default = "default_cofibrations")]
    pub cofibrations: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub presheaves: Vec<NamedPresheafDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<NamedMapDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fibrations: Vec<String>,
    pub task: TaskDecl,
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("scenario parse error: {e}")))
}

pub fn emit_scenario(scenario: &Scenario) -> Result<String> {
    let mut text = serde_json::to_string_pretty(scenario)
        .map_err(|e| Error::Schema(format!("scenario serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Everything a scenario declares, constructed and validated.
pub struct ResolvedScenario {
    pub name: String,
    pub base: Arc<IndexCategory>,
    pub cofibrations: CofibrationClass,
    pub ctx: Option<PresheafContext>,
    pub presheaves: BTreeMap<String, Presheaf>,
    pub cones: BTreeMap<String, ConeResult>,
    pub maps: BTreeMap<String, PresheafMap>,
    pub witnesses: BTreeMap<String, Arc<FibrationWitness>>,
    pub task: TaskDecl,
}

impl ResolvedScenario {
    fn map(&self, name: &str) -> Result<&PresheafMap> {
        self.maps.get(name).ok_or_else(|| Error::Schema(format!("no map named {name:?}")))
    }

    fn witness(&self, name: &str) -> Result<&Arc<FibrationWitness>> {
        self.witnesses
            .get(name)
            .ok_or_else(|| Error::Schema(format!("map {name:?} is not declared as a fibration")))
    }

    fn context(&self) -> Result<&PresheafContext> {
        self.ctx
            .as_ref()
            .ok_or_else(|| Error::Schema("this task needs a declared interval".to_string()))
    }
}

pub fn resolve(scenario: &Scenario, budget: &Budget) -> Result<ResolvedScenario> {
    if scenario.schema != SCENARIO_SCHEMA {
        return Err(Error::Schema(format!("unsupported scenario schema {}", scenario.schema)));
    }
    let base = Arc::new(match &scenario.base {
        BaseDecl::Simplex(n) => preset_simplex(*n)?,
        BaseDecl::Cube(n) => preset_cube(*n)?,
        BaseDecl::Poset { name, elements, leq } => {
            let elements: Vec<&str> = elements.iter().map(String::as_str).collect();
            let leq: Vec<(&str, &str)> =
                leq.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            preset_poset(name.clone(), &elements, &leq)?
        }
        BaseDecl::Category(data) => IndexCategory::from_data(data)?,
    });
    let cofibrations = match scenario.cofibrations.as_str() {
        "monomorphisms" => CofibrationClass::Monomorphisms,
        "all" => CofibrationClass::All,
        other => return Err(Error::Schema(format!("unknown cofibration class {other:?}"))),
    };

    let mut presheaves: BTreeMap<String, Presheaf> = BTreeMap::new();
    let mut cones: BTreeMap<String, ConeResult> = BTreeMap::new();
    for d in &scenario.presheaves {
        if presheaves.contains_key(&d.name) {
            return Err(Error::Schema(format!("duplicate presheaf name {:?}", d.name)));
        }
        let built = match &d.decl {
            PresheafDecl::Representable(id) => {
                let o = base
                    .object_index(id)
                    .ok_or_else(|| Error::Schema(format!("base has no object {id:?}")))?;
                yoneda(&base, o)
            }
            PresheafDecl::Codiscrete(n) => codiscrete(&base, *n)?,
            PresheafDecl::Product([a, b]) => {
                let pa = presheaves
                    .get(a)
                    .ok_or_else(|| Error::Schema(format!("no presheaf named {a:?}")))?;
                let pb = presheaves
                    .get(b)
                    .ok_or_else(|| Error::Schema(format!("no presheaf named {b:?}")))?;
                let cone = product(pa, pb)?;
                let apex = cone.apex().clone();
                cones.insert(d.name.clone(), cone);
                apex
            }
            PresheafDecl::Terminal {} => terminal(&base).apex().clone(),
            PresheafDecl::Initial {} => initial(&base).apex().clone(),
            PresheafDecl::Tables(data) => Presheaf::from_data(base.clone(), data)?,
        };
        presheaves.insert(d.name.clone(), built.with_name(d.name.clone()));
    }

    let mut maps: BTreeMap<String, PresheafMap> = BTreeMap::new();
    for d in &scenario.maps {
        if maps.contains_key(&d.name) {
            return Err(Error::Schema(format!("duplicate map name {:?}", d.name)));
        }
        let built = match &d.decl {
            MapDecl::Identity(p) => PresheafMap::identity(
                presheaves
                    .get(p)
                    .ok_or_else(|| Error::Schema(format!("no presheaf named {p:?}")))?,
            ),
            MapDecl::Initial(p) => initial_map(
                presheaves
                    .get(p)
                    .ok_or_else(|| Error::Schema(format!("no presheaf named {p:?}")))?,
            ),
            MapDecl::Terminal(p) => terminal_map(
                presheaves
                    .get(p)
                    .ok_or_else(|| Error::Schema(format!("no presheaf named {p:?}")))?,
            ),
            MapDecl::Boundary(n) => match &scenario.base {
                BaseDecl::Simplex(_) => boundary_simplex(&base, *n)?,
                BaseDecl::Cube(_) => boundary_cube(&base, *n)?,
                _ => {
                    return Err(Error::Schema(
                        "boundary declarations need a simplex or cube preset".to_string(),
                    ))
                }
            },
            MapDecl::Projection { of, onto } => {
                let cone = cones
                    .get(of)
                    .ok_or_else(|| Error::Schema(format!("{of:?} is not a declared product")))?;
                match onto {
                    1 => cone.leg("pr1").clone(),
                    2 => cone.leg("pr2").clone(),
                    _ => return Err(Error::Schema("projections go onto factor 1 or 2".into())),
                }
            }
            MapDecl::Tables { source, target, components } => {
                let s = presheaves
                    .get(source)
                    .ok_or_else(|| Error::Schema(format!("no presheaf named {source:?}")))?;
                let t = presheaves
                    .get(target)
                    .ok_or_else(|| Error::Schema(format!("no presheaf named {target:?}")))?;
                PresheafMap::from_data(s, t, components)?
            }
        };
        maps.insert(d.name.clone(), built);
    }

    let ctx = match &scenario.interval {
        Some(name) => {
            let interval = presheaves
                .get(name)
                .ok_or_else(|| Error::Schema(format!("no presheaf named {name:?}")))?;
            Some(PresheafContext::new(base.clone(), interval.clone(), cofibrations)?)
        }
        None => None,
    };

    let mut witnesses = BTreeMap::new();
    for name in &scenario.fibrations {
        let map = maps
            .get(name)
            .ok_or_else(|| Error::Schema(format!("declared fibration {name:?} is not a map")))?;
        witnesses.insert(
            name.clone(),
            Arc::new(FibrationWitness::by_search(map.clone(), *budget)),
        );
    }

    Ok(ResolvedScenario {
        name: scenario.name.clone(),
        base,
        cofibrations,
        ctx,
        presheaves,
        cones,
        maps,
        witnesses,
        task: scenario.task.clone(),
    })
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub seed: u64,
    pub budget: Budget,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: DEFAULT_SEED, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub schema: u32,
    pub scenario: String,
    pub task: String,
    pub outcome: String,
    pub lines: Vec<String>,
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario: {}\n", self.scenario));
        out.push_str(&format!("task: {}\n", self.task));
        out.push_str(&format!("outcome: {}\n", self.outcome));
        for line in &self.lines {
            out.push_str(&format!("  {line}\n"));
        }
        for failure in &self.failures {
            out.push_str(&format!("  failure: {failure}\n"));
        }
        out
    }

    pub fn render_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Schema(format!("report serialization failed: {e}")))?;
        text.push('\n');
        Ok(text)
    }
}

fn embed<T: Serialize>(value: &T) -> Result<serde_json::Value> {
    serde_json::to_value(value).map_err(|e| Error::Schema(format!("report data failed: {e}")))
}

/// Maps a scenario or verification outcome to the process exit code:
/// 0 all checks passed, 1 a mathematical check failed or a required
/// lift is absent, 2 invalid input, 3 budget exceeded.
pub fn exit_code(outcome: &Result<ScenarioReport>) -> i32 {
    match outcome {
        Ok(report) if report.passed() => 0,
        Ok(_) => 1,
        Err(Error::BudgetExceeded { .. }) => 3,
        Err(Error::CheckFailed { .. }) | Err(Error::NotFibration { .. }) => 1,
        Err(_) => 2,
    }
}

pub fn run_scenario(scenario: &Scenario, options: &RunOptions) -> Result<ScenarioReport> {
    let resolved = resolve(scenario, &options.budget)?;
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let mut data = None;
    let task;
    match &resolved.task {
        TaskDecl::Validate {} => {
            task = "validate";
            lines.push(format!(
                "{} presheaves and {} maps validated over {}",
                resolved.presheaves.len(),
                resolved.maps.len(),
                resolved.base.name()
            ));
        }
        TaskDecl::Lift { left, right, top, bottom } => {
            task = "lift";
            let problem = LiftingProblem::new(
                resolved.map(left)?.clone(),
                resolved.map(right)?.clone(),
                resolved.map(top)?.clone(),
                resolved.map(bottom)?.clone(),
            )?;
            match solve_lift(&problem, &options.budget)? {
                Some(lift) => {
                    lines.push("lift found".to_string());
                    data = Some(embed(&lift_certificate_file(&problem, &lift)?)?);
                }
                None => failures.push("no lift exists for the posed square".to_string()),
            }
        }
        TaskDecl::Gtc { c, i } => {
            task = "gtc";
            let ctx = resolved.context()?;
            let spec = build_gtc(ctx, resolved.map(c)?, resolved.map(i)?)?;
            lines.push(format!("domain levels: {:?}", spec.domain().levels()));
            lines.push(format!("codomain levels: {:?}", spec.codomain().levels()));
            lines.push(format!("cogap is mono: {}", spec.u().is_mono()));
            lines.extend(spec.transcript().iter().cloned());
        }
        TaskDecl::Retract { c, i, fibration, problems } => {
            task = "retract";
            let ctx = resolved.context()?;
            let spec = build_gtc(ctx, resolved.map(c)?, resolved.map(i)?)?;
            let witness = resolved.witness(fibration)?;
            let cert = pullback_gtc_retract(&spec, witness)?;
            lines.push(format!(
                "pulled-back domain levels: {:?}",
                cert.cube().domain().levels()
            ));
            lines.push(format!(
                "replacement domain levels: {:?}",
                cert.v().domain().levels()
            ));
            let file = retract_certificate_file(&cert)?;
            let verification = verify_certificate(&file);
            if verification.is_verified() {
                lines.push(format!(
                    "certificate re-verified: {} objects, {} maps, {} equations",
                    verification.objects, verification.maps, verification.equations_checked
                ));
            } else {
                failures.extend(
                    verification.failures.iter().map(|f| format!("re-verification: {f}")),
                );
            }
            if *problems > 0 {
                let mut rng = seeded(options.seed);
                let mut produced = 0;
                let mut agreed = 0;
                let mut draws = 0;
                while produced < *problems && draws < *problems * 20 {
                    draws += 1;
                    let Some(problem) = random_problem(
                        cert.cube().pulled(),
                        witness.map(),
                        &mut rng,
                        &options.budget,
                    )?
                    else {
                        continue;
                    };
                    produced += 1;
                    let direct = !all_lifts(&problem, &options.budget)?.is_empty();
                    let via = lift_via_retract(
                        &problem,
                        cert.v().u(),
                        cert.retract(),
                        |induced| {
                            let gp = GtcProblem::new(cert.v().clone(), induced.clone())?;
                            witness.solve(&gp)
                        },
                    );
                    match via {
                        Ok(lift) if direct => {
                            if problem.is_solution(&lift) {
                                agreed += 1;
                            } else {
                                failures.push(format!(
                                    "problem {produced}: transported lift fails a triangle"
                                ));
                            }
                        }
                        Ok(_) => failures.push(format!(
                            "problem {produced}: retract route found a lift where none exists"
                        )),
                        Err(_) if !direct => agreed += 1,
                        Err(e) => failures.push(format!(
                            "problem {produced}: retract route failed but enumeration found a lift: {e}"
                        )),
                    }
                }
                if produced < *problems {
                    failures.push(format!(
                        "only {produced} of {problems} transported problems could be drawn"
                    ));
                }
                lines.push(format!(
                    "{agreed} of {produced} transported problems agreed with enumeration"
                ));
            }
            data = Some(embed(&file)?);
        }
        TaskDecl::Pushforward { f, p, family } => {
            task = "pushforward";
            let f_map = resolved.map(f)?;
            let p_map = resolved.map(p)?;
            let result = pushforward(f_map, p_map, &options.budget)?;
            lines.push(format!("pushforward levels: {:?}", result.xprime().levels()));
            lines.push("section families verified at every representable".to_string());
            let whole = PresheafMap::identity(p_map.target());
            let adjunction = verify_adjunction(&result, &whole, &options.budget)?;
            if adjunction.failures.is_empty() {
                lines.push(format!(
                    "transposition over the whole target: {} maps each way",
                    adjunction.direct
                ));
            } else {
                failures.extend(adjunction.failures.iter().map(|s| format!("adjunction: {s}")));
            }
            if *family > 0 {
                let ctx = resolved.context()?;
                let fw = frobenius_witness(&result, resolved.witness(f)?, resolved.witness(p)?)?;
                let mut rng = seeded(options.seed);
                let mut produced = 0;
                let mut agreed = 0;
                let mut draws = 0;
                while produced < *family && draws < *family * 30 {
                    draws += 1;
                    let a = random_presheaf(ctx.base(), &mut rng, 6)?;
                    let Some(i) = random_map(&a, ctx.interval(), &mut rng, &options.budget)?
                    else {
                        continue;
                    };
                    let spec = build_gtc(ctx, &initial_map(&a), &i)?;
                    let Some(problem) =
                        random_problem(spec.u(), result.pushed(), &mut rng, &options.budget)?
                    else {
                        continue;
                    };
                    produced += 1;
                    let direct = solve_lift(&problem, &options.budget)?;
                    let via = fw.solve(&GtcProblem::new(spec, problem.clone())?);
                    match (via, direct) {
                        (Ok(lift), Some(_)) => {
                            if problem.is_solution(&lift) {
                                agreed += 1;
                            } else {
                                failures.push(format!(
                                    "family member {produced}: witness lift fails a triangle"
                                ));
                            }
                        }
                        (Err(_), None) => agreed += 1,
                        (Ok(_), None) => failures.push(format!(
                            "family member {produced}: witness found a lift where none exists"
                        )),
                        (Err(e), Some(_)) => failures.push(format!(
                            "family member {produced}: witness failed but a lift exists: {e}"
                        )),
                    }
                }
                if produced < *family {
                    failures.push(format!(
                        "only {produced} of {family} family members could be drawn"
                    ));
                }
                lines.push(format!(
                    "{agreed} of {produced} family members agreed with direct search"
                ));
            }
            data = Some(embed(&serde_json::json!({
                "levels": result.xprime().levels(),
                "direct": adjunction.direct,
                "transposed": adjunction.transposed,
            }))?);
        }
        TaskDecl::Counterexample {} => {
            task = "counterexample";
            let report = left_fibration_counterexample()?;
            lines.extend(report.transcript.iter().cloned());
            if !report.holds() {
                failures.push("at least one part of the counterexample failed".to_string());
            }
            data = Some(embed(&report)?);
        }
    }
    let outcome = if failures.is_empty() { "pass" } else { "fail" };
    Ok(ScenarioReport {
        schema: SCENARIO_SCHEMA,
        scenario: resolved.name,
        task: task.to_string(),
        outcome: outcome.to_string(),
        lines,
        failures,
        data,
    })
}

pub const BUNDLED: &[(&str, &str)] = &[
    ("retract_reflexive_graphs", include_str!("../scenarios/retract_reflexive_graphs.json")),
    ("retract_cube1", include_str!("../scenarios/retract_cube1.json")),
    (
        "pushforward_reflexive_graphs",
        include_str!("../scenarios/pushforward_reflexive_graphs.json"),
    ),
    (
        "left_fibration_counterexample",
        include_str!("../scenarios/left_fibration_counterexample.json"),
    ),
];

pub fn bundled_scenario(name: &str) -> Result<Scenario> {
    for (n, text) in BUNDLED {
        if *n == name {
            return parse_scenario(text);
        }
    }
    Err(Error::Schema(format!("no bundled scenario named {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_scenarios_parse_and_round_trip() {
        for (name, text) in BUNDLED {
            let scenario = parse_scenario(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(&scenario.name, name);
            let emitted = emit_scenario(&scenario).unwrap();
            let back = parse_scenario(&emitted).unwrap();
            assert_eq!(back, scenario);
        }
    }

    #[test]
    fn bundled_scenarios_resolve() {
        for (name, text) in BUNDLED {
            let scenario = parse_scenario(text).unwrap();
            resolve(&scenario, &Budget::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn the_counterexample_scenario_passes() {
        let scenario = bundled_scenario("left_fibration_counterexample").unwrap();
        let report = run_scenario(&scenario, &RunOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.task, "counterexample");
    }

    #[test]
    fn the_graph_retract_scenario_passes_and_is_deterministic() {
        let scenario = bundled_scenario("retract_reflexive_graphs").unwrap();
        let options = RunOptions::default();
        let first = run_scenario(&scenario, &options).unwrap();
        assert!(first.passed(), "{:?}", first.failures);
        let second = run_scenario(&scenario, &options).unwrap();
        assert_eq!(first.render_json().unwrap(), second.render_json().unwrap());
        assert_eq!(first.render_text(), second.render_text());
    }

    #[test]
    fn the_cube_retract_scenario_passes() {
        let scenario = bundled_scenario("retract_cube1").unwrap();
        let report = run_scenario(&scenario, &RunOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn the_pushforward_scenario_passes() {
        let scenario = bundled_scenario("pushforward_reflexive_graphs").unwrap();
        let report = run_scenario(&scenario, &RunOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let levels = report
            .data
            .as_ref()
            .and_then(|d| d.get("levels"))
            .and_then(|l| l.as_array())
            .map(|l| l.iter().filter_map(|v| v.as_u64()).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(levels, vec![8, 48]);
    }

    #[test]
    fn unknown_references_are_schema_errors() {
        let mut scenario = bundled_scenario("retract_reflexive_graphs").unwrap();
        scenario.task = TaskDecl::Gtc { c: "missing".into(), i: "structure".into() };
        let outcome = run_scenario(&scenario, &RunOptions::default());
        assert_eq!(exit_code(&outcome), 2);
    }

    #[test]
    fn absent_lifts_exit_one() {
        let scenario = Scenario {
            schema: SCENARIO_SCHEMA,
            name: "no-lift".into(),
            base: BaseDecl::Simplex(1),
            interval: None,
            cofibrations: default_cofibrations(),
            presheaves: vec![
                NamedPresheafDecl { name: "pt".into(), decl: PresheafDecl::Terminal {} },
                NamedPresheafDecl { name: "none".into(), decl: PresheafDecl::Initial {} },
            ],
            maps: vec![
                NamedMapDecl { name: "collapse".into(), decl: MapDecl::Initial("pt".into()) },
                NamedMapDecl { name: "top".into(), decl: MapDecl::Identity("none".into()) },
                NamedMapDecl { name: "bottom".into(), decl: MapDecl::Identity("pt".into()) },
            ],
            fibrations: Vec::new(),
            task: TaskDecl::Lift {
                left: "collapse".into(),
                right: "collapse".into(),
                top: "top".into(),
                bottom: "bottom".into(),
            },
        };
        let outcome = run_scenario(&scenario, &RunOptions::default());
        assert_eq!(exit_code(&outcome), 1);
    }

    #[test]
    fn non_commuting_squares_exit_two() {
        let base = Arc::new(crate::index_cat::preset_simplex(1).unwrap());
        let interval = yoneda(&base, base.object_index("[1]").unwrap());
        let endpoints: Vec<usize> = base.hom(0, 1);
        let v0 = crate::presheaf::yoneda_map(&base, endpoints[0]);
        let v1 = crate::presheaf::yoneda_map(&base, endpoints[1]);
        assert!(LiftingProblem::new(
            v0.clone(),
            PresheafMap::identity(&interval),
            v1.clone(),
            PresheafMap::identity(&interval),
        )
        .is_err());
        let scenario = Scenario {
            schema: SCENARIO_SCHEMA,
            name: "skew".into(),
            base: BaseDecl::Simplex(1),
            interval: None,
            cofibrations: default_cofibrations(),
            presheaves: vec![
                NamedPresheafDecl {
                    name: "arrow".into(),
                    decl: PresheafDecl::Representable("[1]".into()),
                },
                NamedPresheafDecl { name: "pt".into(), decl: PresheafDecl::Terminal {} },
            ],
            maps: vec![
                NamedMapDecl { name: "left".into(), decl: MapDecl::Terminal("arrow".into()) },
                NamedMapDecl { name: "stay".into(), decl: MapDecl::Identity("arrow".into()) },
                NamedMapDecl { name: "point".into(), decl: MapDecl::Identity("pt".into()) },
            ],
            fibrations: Vec::new(),
            task: TaskDecl::Lift {
                left: "left".into(),
                right: "stay".into(),
                top: "stay".into(),
                bottom: "point".into(),
            },
        };
        let outcome = run_scenario(&scenario, &RunOptions::default());
        assert_eq!(exit_code(&outcome), 2);
    }
}
