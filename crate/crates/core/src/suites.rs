//! Batch property suites over seeded random inputs, plus the
//! closed-form cell-count oracle for open prisms.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::{random_map, random_presheaf, random_problem, random_subobject, seeded};
use crate::gtc::{boundary_simplex, build_gtc, graph_map, prism_gtc};
use crate::index_cat::{preset_cube, preset_poset, preset_simplex};
use crate::lifting::{all_lifts, solve_lift};
use crate::limits::{check_pullback_square, initial_map, terminal_map};
use crate::presheaf::{yoneda, yoneda_map, CofibrationClass, Presheaf, PresheafContext};
use crate::search::enumerate_maps;
use crate::Budget;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The bases the batch suites run over, each paired with its interval:
/// truncated simplex shapes with the representable arrow, the
/// one-dimensional cube shape, and two four-element posets where the
/// representable at the top element serves as the interval.
pub fn standard_contexts() -> Result<Vec<PresheafContext>> {
    let mut out = Vec::new();
    for n in [1usize, 2] {
        let base = Arc::new(preset_simplex(n)?);
        out.push(context_at(&base, "[1]")?);
    }
    let cube = Arc::new(preset_cube(1)?);
    out.push(context_at(&cube, "[1]")?);
    let chain = Arc::new(preset_poset(
        "chain4",
        &["0", "1", "2", "3"],
        &[("0", "1"), ("0", "2"), ("0", "3"), ("1", "2"), ("1", "3"), ("2", "3")],
    )?);
    out.push(context_at(&chain, "3")?);
    let diamond = Arc::new(preset_poset(
        "diamond",
        &["bot", "a", "b", "top"],
        &[("bot", "a"), ("bot", "b"), ("bot", "top"), ("a", "top"), ("b", "top")],
    )?);
    out.push(context_at(&diamond, "top")?);
    Ok(out)
}

fn context_at(
    base: &Arc<crate::index_cat::IndexCategory>,
    interval_object: &str,
) -> Result<PresheafContext> {
    let o = base
        .object_index(interval_object)
        .ok_or_else(|| Error::contract(format!("base has no object {interval_object}")))?;
    PresheafContext::new(base.clone(), yoneda(base, o), CofibrationClass::Monomorphisms)
}

/// Draws `cases` pairs of an object X and a map i into the interval,
/// builds the generating trivial cofibration of the empty cofibration
/// into X with structure map i, and checks that its cogap is the
/// graph of i up to the pushout injection, and that the graph is mono.
pub fn graph_gtc_suite(
    ctx: &PresheafContext,
    seed: u64,
    cases: usize,
    max_total: usize,
    budget: &Budget,
) -> Result<SuiteOutcome> {
    let mut rng = seeded(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    let mut draws = 0;
    while done < cases {
        draws += 1;
        if draws > cases * 20 {
            failures.push("ran out of draws before filling the suite".into());
            break;
        }
        let x = random_presheaf(ctx.base(), &mut rng, max_total)?;
        let Some(i) = random_map(&x, ctx.interval(), &mut rng, budget)? else {
            continue;
        };
        done += 1;
        let spec = match build_gtc(ctx, &initial_map(&x), &i) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("case {done}: construction failed: {e}"));
                continue;
            }
        };
        let graph = graph_map(&i)?;
        if !graph.is_mono() {
            failures.push(format!("case {done}: the graph is not mono"));
        }
        let into = spec.cone().leg("left");
        if !into.is_iso() {
            failures.push(format!("case {done}: the pushout injection is not invertible"));
            continue;
        }
        if spec.u().compose(into)? != graph {
            failures.push(format!("case {done}: the cogap does not restrict to the graph"));
        }
    }
    Ok(SuiteOutcome {
        name: format!("graphs as generating trivial cofibrations over {}", ctx.base().name()),
        cases: done,
        failures,
    })
}

/// Draws `cases` pairs of a mono c and a structure map i, builds the
/// generating trivial cofibration, and checks the defining square is
/// a pullback with a mono crossed edge.
pub fn square_cofibration_suite(
    ctx: &PresheafContext,
    seed: u64,
    cases: usize,
    max_total: usize,
    budget: &Budget,
) -> Result<SuiteOutcome> {
    let mut rng = seeded(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    let mut draws = 0;
    while done < cases {
        draws += 1;
        if draws > cases * 20 {
            failures.push("ran out of draws before filling the suite".into());
            break;
        }
        let z = random_presheaf(ctx.base(), &mut rng, max_total)?;
        let (_, c) = random_subobject(&z, &mut rng)?;
        let Some(i) = random_map(&z, ctx.interval(), &mut rng, budget)? else {
            continue;
        };
        done += 1;
        let spec = match build_gtc(ctx, &c, &i) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("case {done}: construction failed: {e}"));
                continue;
            }
        };
        if !check_pullback_square(spec.square())? {
            failures.push(format!("case {done}: the defining square is not a pullback"));
        }
        if !spec.crossed().is_mono() {
            failures.push(format!("case {done}: the crossed cofibration is not mono"));
        }
    }
    Ok(SuiteOutcome {
        name: format!("defining squares over {}", ctx.base().name()),
        cases: done,
        failures,
    })
}

/// Draws `cases` commuting squares and checks that the first-solution
/// solver and full enumeration agree on solvability, and that every
/// reported lift closes both triangles.
pub fn lift_consistency_suite(
    ctx: &PresheafContext,
    seed: u64,
    cases: usize,
    max_total: usize,
    budget: &Budget,
) -> Result<SuiteOutcome> {
    let mut rng = seeded(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    let mut draws = 0;
    while done < cases {
        draws += 1;
        if draws > cases * 30 {
            failures.push("ran out of draws before filling the suite".into());
            break;
        }
        let x = random_presheaf(ctx.base(), &mut rng, max_total)?;
        let (_, left) = random_subobject(&x, &mut rng)?;
        let w = random_presheaf(ctx.base(), &mut rng, max_total)?;
        let v = random_presheaf(ctx.base(), &mut rng, max_total)?;
        let Some(right) = random_map(&w, &v, &mut rng, budget)? else {
            continue;
        };
        let Some(problem) = random_problem(&left, &right, &mut rng, budget)? else {
            continue;
        };
        done += 1;
        let first = solve_lift(&problem, budget)?;
        let every = all_lifts(&problem, budget)?;
        match (&first, every.len()) {
            (Some(lift), n) if n > 0 => {
                if !problem.is_solution(lift) {
                    failures.push(format!("case {done}: the first solution fails a triangle"));
                }
                if every.iter().any(|l| !problem.is_solution(l)) {
                    failures.push(format!("case {done}: an enumerated lift fails a triangle"));
                }
            }
            (None, 0) => {}
            (first, n) => {
                failures.push(format!(
                    "case {done}: first-solution search found {} while enumeration found {n}",
                    if first.is_some() { "a lift" } else { "none" },
                ));
            }
        }
    }
    Ok(SuiteOutcome {
        name: format!("lift solver consistency over {}", ctx.base().name()),
        cases: done,
        failures,
    })
}

/// Checks, on every standard base, that natural maps out of each
/// representable are counted by the corresponding level, both for all
/// representables and for a seeded random target.
pub fn representable_count_suite(budget: &Budget) -> Result<SuiteOutcome> {
    let mut failures = Vec::new();
    let mut cases = 0;
    for ctx in standard_contexts()? {
        let base = ctx.base();
        let mut rng = seeded(1);
        let mut targets: Vec<Presheaf> =
            (0..base.object_count()).map(|d| yoneda(base, d)).collect();
        targets.push(random_presheaf(base, &mut rng, 16)?);
        for c in 0..base.object_count() {
            let yc = yoneda(base, c);
            for p in &targets {
                cases += 1;
                let found = enumerate_maps(&yc, p, budget)?.len();
                if found != p.level(c) {
                    failures.push(format!(
                        "maps from the representable at {} of {} into {} number {found}, level has {}",
                        base.object_id(c),
                        base.name(),
                        p.name(),
                        p.level(c)
                    ));
                }
            }
        }
    }
    Ok(SuiteOutcome { name: "representable map counts".into(), cases, failures })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Closed-form cell counts for the open prism over the n-simplex at
/// simplex level k: (domain, codomain) sizes of the inclusion.
pub fn prism_level_counts(n: usize, k: usize) -> (usize, usize) {
    let total = binomial(n + k + 1, k + 1);
    let surjections = binomial(k, n);
    (total + (total - surjections) * (k + 1), total * (k + 2))
}

/// Builds each open prism inclusion with n at most 2 over the base
/// truncated at dimension 3 twice: once by the dedicated constructor
/// and once from the boundary inclusion with a constant structure
/// map assembled through the terminal object. Checks the two agree up
/// to the canonical comparison and match the closed-form counts.
pub fn prism_comparison_suite() -> Result<SuiteOutcome> {
    let base = Arc::new(preset_simplex(3)?);
    let ctx = context_at(&base, "[1]")?;
    let point = base
        .object_index("[0]")
        .ok_or_else(|| Error::contract("simplex base lacks [0]"))?;
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 0..=2usize {
        for eps in 0..=1usize {
            cases += 1;
            let tag = format!("n={n} endpoint={eps}");
            let prism = prism_gtc(&base, n, eps)?;
            let c = if n == 0 {
                initial_map(&yoneda(&base, point))
            } else {
                boundary_simplex(&base, n)?
            };
            let vertex_id = format!("[0]->[1]:{eps}");
            let vertex = base
                .morphism_index(&vertex_id)
                .ok_or_else(|| Error::contract(format!("base has no morphism {vertex_id}")))?;
            let constant =
                yoneda_map(&base, vertex).compose(&terminal_map(c.target()))?;
            let direct = match build_gtc(&ctx, &c, &constant) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("{tag}: direct construction failed: {e}"));
                    continue;
                }
            };
            let comparison = match prism.cone().cogap(
                direct.domain(),
                &[direct.cone().leg("left"), direct.cone().leg("right")],
            ) {
                Ok(m) => m,
                Err(e) => {
                    failures.push(format!("{tag}: no comparison between the two domains: {e}"));
                    continue;
                }
            };
            if !comparison.is_iso() {
                failures.push(format!("{tag}: the canonical comparison is not invertible"));
                continue;
            }
            if direct.u().compose(&comparison)? != *prism.u() {
                failures.push(format!("{tag}: the cogaps disagree across the comparison"));
            }
            for k in 0..base.object_count() {
                let level = base
                    .object_index(&format!("[{k}]"))
                    .ok_or_else(|| Error::contract("simplex base objects must be [k]"))?;
                let (dom, cod) = prism_level_counts(n, k);
                if prism.domain().level(level) != dom {
                    failures.push(format!(
                        "{tag}: domain at [{k}] has {} cells, the oracle says {dom}",
                        prism.domain().level(level)
                    ));
                }
                if prism.codomain().level(level) != cod {
                    failures.push(format!(
                        "{tag}: codomain at [{k}] has {} cells, the oracle says {cod}",
                        prism.codomain().level(level)
                    ));
                }
            }
        }
    }
    Ok(SuiteOutcome { name: "open prisms against the count oracle".into(), cases, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_standard_bases_build() {
        let ctxs = standard_contexts().unwrap();
        assert_eq!(ctxs.len(), 5);
    }

    #[test]
    fn binomials_are_the_usual_ones() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(prism_level_counts(1, 0), (4, 4));
        assert_eq!(prism_level_counts(1, 1), (7, 9));
    }

    #[test]
    fn small_graph_suites_pass() {
        let ctxs = standard_contexts().unwrap();
        let budget = Budget::default();
        for ctx in &ctxs {
            let outcome = graph_gtc_suite(ctx, 42, 3, 10, &budget).unwrap();
            assert!(outcome.passed(), "{}: {:?}", outcome.name, outcome.failures);
            assert_eq!(outcome.cases, 3);
        }
    }

    #[test]
    fn small_square_suites_pass() {
        let ctxs = standard_contexts().unwrap();
        let budget = Budget::default();
        for ctx in &ctxs {
            let outcome = square_cofibration_suite(ctx, 43, 3, 10, &budget).unwrap();
            assert!(outcome.passed(), "{}: {:?}", outcome.name, outcome.failures);
        }
    }

    #[test]
    fn small_lift_suites_pass() {
        let ctx = &standard_contexts().unwrap()[0];
        let budget = Budget::default();
        let outcome = lift_consistency_suite(ctx, 44, 5, 8, &budget).unwrap();
        assert!(outcome.passed(), "{:?}", outcome.failures);
        assert_eq!(outcome.cases, 5);
    }

    #[test]
    fn representable_counts_hold_everywhere() {
        let outcome = representable_count_suite(&Budget::default()).unwrap();
        assert!(outcome.passed(), "{:?}", outcome.failures);
        assert!(outcome.cases >= 20);
    }

    #[test]
    fn prisms_match_their_oracle() {
        let outcome = prism_comparison_suite().unwrap();
        assert!(outcome.passed(), "{:?}", outcome.failures);
        assert_eq!(outcome.cases, 6);
    }
}
