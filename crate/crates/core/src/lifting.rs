//! Lifting problems, the diagonal-filler search, witnessed fibrations,
//! and retracts in the arrow category.
//!
//! A lifting problem is a commuting square; a solution is a diagonal
//! filler satisfying both triangles. The search is complete at desk
//! scale and deterministic: fillers come out in lexicographic order of
//! their component tables, so the first one is canonical. Fibrations
//! are never decided in the absolute; they are carried as witnesses
//! that produce (and cache) a checked lift for each posed problem.

use crate::error::{Error, Result};
use crate::gtc::GtcSpec;
use crate::presheaf::{MapData, Presheaf, PresheafData, PresheafMap};
use crate::search::MapSearch;
use crate::Budget;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// A commuting square: `left` down the left side, `right` down the
/// right side, `top` and `bottom` across.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingProblem {
    left: PresheafMap,
    right: PresheafMap,
    top: PresheafMap,
    bottom: PresheafMap,
}

impl LiftingProblem {
    pub fn new(
        left: PresheafMap,
        right: PresheafMap,
        top: PresheafMap,
        bottom: PresheafMap,
    ) -> Result<Self> {
        if top.source() != left.source() {
            return Err(Error::contract("lifting square: top must start where left starts"));
        }
        if top.target() != right.source() {
            return Err(Error::contract("lifting square: top must end where right starts"));
        }
        if bottom.source() != left.target() {
            return Err(Error::contract("lifting square: bottom must start where left ends"));
        }
        if bottom.target() != right.target() {
            return Err(Error::contract("lifting square: bottom must end where right ends"));
        }
        if right.compose(&top)? != bottom.compose(&left)? {
            return Err(Error::contract("lifting square does not commute"));
        }
        Ok(LiftingProblem { left, right, top, bottom })
    }

    pub fn left(&self) -> &PresheafMap {
        &self.left
    }

    pub fn right(&self) -> &PresheafMap {
        &self.right
    }

    pub fn top(&self) -> &PresheafMap {
        &self.top
    }

    pub fn bottom(&self) -> &PresheafMap {
        &self.bottom
    }

    /// Whether a map is a diagonal filler for this square.
    pub fn is_solution(&self, lift: &PresheafMap) -> bool {
        lift.source() == self.left.target()
            && lift.target() == self.right.source()
            && lift.compose(&self.left).is_ok_and(|m| m == self.top)
            && self.right.compose(lift).is_ok_and(|m| m == self.bottom)
    }

    pub fn to_data(&self) -> LiftingProblemData {
        LiftingProblemData {
            left_source: self.left.source().to_data(),
            left_target: self.left.target().to_data(),
            right_source: self.right.source().to_data(),
            right_target: self.right.target().to_data(),
            left: self.left.to_data(),
            right: self.right.to_data(),
            top: self.top.to_data(),
            bottom: self.bottom.to_data(),
        }
    }

    pub fn from_data(
        base: &Arc<crate::index_cat::IndexCategory>,
        data: &LiftingProblemData,
    ) -> Result<Self> {
        let a = Presheaf::from_data(base.clone(), &data.left_source)?;
        let b = Presheaf::from_data(base.clone(), &data.left_target)?;
        let x = Presheaf::from_data(base.clone(), &data.right_source)?;
        let y = Presheaf::from_data(base.clone(), &data.right_target)?;
        LiftingProblem::new(
            PresheafMap::from_data(&a, &b, &data.left)?,
            PresheafMap::from_data(&x, &y, &data.right)?,
            PresheafMap::from_data(&a, &x, &data.top)?,
            PresheafMap::from_data(&b, &y, &data.bottom)?,
        )
    }

    /// Deterministic encoding of the full square, tables included.
    /// Equal problems have equal keys across runs and processes.
    pub fn canonical_key(&self) -> String {
        serde_json::to_string(&self.to_data()).expect("problem data serializes")
    }

    fn search(&self) -> Result<MapSearch<'_>> {
        let mut search = MapSearch::new(self.left.target(), self.right.source())?;
        let base = self.left.base().clone();
        for o in 0..base.object_count() {
            for b in 0..self.left.target().level(o) {
                let wanted = self.bottom.apply(o, b);
                search.restrict(o, b, |x| self.right.apply(o, x) == wanted);
            }
        }
        for o in 0..base.object_count() {
            for a in 0..self.left.source().level(o) {
                search.preassign(o, self.left.apply(o, a), self.top.apply(o, a))?;
            }
        }
        Ok(search)
    }

    fn accept(&self, components: Vec<Vec<usize>>) -> PresheafMap {
        let lift = PresheafMap::new(
            self.left.target().clone(),
            self.right.source().clone(),
            components,
        )
        .expect("search yields natural assignments");
        assert!(self.is_solution(&lift), "search yields diagonal fillers");
        lift
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingProblemData {
    pub left_source: PresheafData,
    pub left_target: PresheafData,
    pub right_source: PresheafData,
    pub right_target: PresheafData,
    pub left: MapData,
    pub right: MapData,
    pub top: MapData,
    pub bottom: MapData,
}

/// The lexicographically first diagonal filler, or None when the
/// square has none. Complete: absence means no filler exists.
pub fn solve_lift(problem: &LiftingProblem, budget: &Budget) -> Result<Option<PresheafMap>> {
    Ok(problem.search()?.first(budget)?.map(|c| problem.accept(c)))
}

/// Every diagonal filler, duplicate-free, lexicographically ordered.
pub fn all_lifts(problem: &LiftingProblem, budget: &Budget) -> Result<Vec<PresheafMap>> {
    Ok(problem
        .search()?
        .all(budget)?
        .into_iter()
        .map(|c| problem.accept(c))
        .collect())
}

/// Outcome of checking one map against a family of problems: lifts
/// for all of them, or the first member with none.
#[derive(Debug, Clone)]
pub enum RlpOutcome {
    Certified(Vec<PresheafMap>),
    Refuted { index: usize, problem: Box<LiftingProblem> },
}

impl RlpOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, RlpOutcome::Certified(_))
    }
}

/// Solves each problem of the family in order; all members must have
/// the given map as their right leg.
pub fn rlp_certificate(
    p: &PresheafMap,
    family: &[LiftingProblem],
    budget: &Budget,
) -> Result<RlpOutcome> {
    let mut lifts = Vec::with_capacity(family.len());
    for (index, problem) in family.iter().enumerate() {
        if problem.right() != p {
            return Err(Error::contract(format!(
                "family member {index} does not have the given map as its right leg"
            )));
        }
        match solve_lift(problem, budget)? {
            Some(lift) => lifts.push(lift),
            None => {
                return Ok(RlpOutcome::Refuted { index, problem: Box::new(problem.clone()) })
            }
        }
    }
    Ok(RlpOutcome::Certified(lifts))
}

/// Maps exhibiting one arrow as a retract of another in the arrow
/// category: sections s and retractions r on domain and codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractData {
    pub s_dom: PresheafMap,
    pub r_dom: PresheafMap,
    pub s_cod: PresheafMap,
    pub r_cod: PresheafMap,
}

impl RetractData {
    pub fn identity(u: &PresheafMap) -> Self {
        RetractData {
            s_dom: PresheafMap::identity(u.source()),
            r_dom: PresheafMap::identity(u.source()),
            s_cod: PresheafMap::identity(u.target()),
            r_cod: PresheafMap::identity(u.target()),
        }
    }

    pub fn to_data(&self) -> RetractDataData {
        RetractDataData {
            s_dom: self.s_dom.to_data(),
            r_dom: self.r_dom.to_data(),
            s_cod: self.s_cod.to_data(),
            r_cod: self.r_cod.to_data(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractDataData {
    pub s_dom: MapData,
    pub r_dom: MapData,
    pub s_cod: MapData,
    pub r_cod: MapData,
}

/// Verifies the four retract equations of u against v, returning the
/// names of the failing ones (empty means u is a retract of v via the
/// given data). Misaligned endpoints are contract errors.
pub fn check_retract(
    u: &PresheafMap,
    v: &PresheafMap,
    data: &RetractData,
) -> Result<Vec<String>> {
    if data.s_dom.source() != u.source() || data.s_dom.target() != v.source() {
        return Err(Error::contract("s_dom must run from the domain of u to the domain of v"));
    }
    if data.r_dom.source() != v.source() || data.r_dom.target() != u.source() {
        return Err(Error::contract("r_dom must run from the domain of v to the domain of u"));
    }
    if data.s_cod.source() != u.target() || data.s_cod.target() != v.target() {
        return Err(Error::contract("s_cod must run from the codomain of u to the codomain of v"));
    }
    if data.r_cod.source() != v.target() || data.r_cod.target() != u.target() {
        return Err(Error::contract("r_cod must run from the codomain of v to the codomain of u"));
    }
    let mut failures = Vec::new();
    if data.r_dom.compose(&data.s_dom)? != PresheafMap::identity(u.source()) {
        failures.push("r_dom ∘ s_dom = id".to_string());
    }
    if data.r_cod.compose(&data.s_cod)? != PresheafMap::identity(u.target()) {
        failures.push("r_cod ∘ s_cod = id".to_string());
    }
    if v.compose(&data.s_dom)? != data.s_cod.compose(u)? {
        failures.push("v ∘ s_dom = s_cod ∘ u".to_string());
    }
    if u.compose(&data.r_dom)? != data.r_cod.compose(v)? {
        failures.push("u ∘ r_dom = r_cod ∘ v".to_string());
    }
    Ok(failures)
}

/// Solves a lifting problem whose left leg is a retract of v: the
/// problem is transported along the retract data, handed to the
/// v-solver, and the returned lift is pulled back across the section.
/// Both triangles are verified before returning.
pub fn lift_via_retract(
    problem: &LiftingProblem,
    v: &PresheafMap,
    data: &RetractData,
    solver: impl FnOnce(&LiftingProblem) -> Result<PresheafMap>,
) -> Result<PresheafMap> {
    let failures = check_retract(problem.left(), v, data)?;
    if !failures.is_empty() {
        return Err(Error::contract(format!(
            "retract data does not exhibit the left leg as a retract: {} fails",
            failures.join(", ")
        )));
    }
    let induced = LiftingProblem::new(
        v.clone(),
        problem.right().clone(),
        problem.top().compose(&data.r_dom)?,
        problem.bottom().compose(&data.r_cod)?,
    )?;
    let inner = solver(&induced)?;
    if !induced.is_solution(&inner) {
        return Err(Error::check("lift via retract", "solver returned a non-filler"));
    }
    let lift = inner.compose(&data.s_cod)?;
    if !problem.is_solution(&lift) {
        return Err(Error::check(
            "lift via retract",
            "transported lift fails a triangle of the original square",
        ));
    }
    Ok(lift)
}

/// A lifting problem bundled with the generating-trivial-cofibration
/// structure of its left leg; witnesses take these as input.
#[derive(Debug, Clone)]
pub struct GtcProblem {
    gtc: GtcSpec,
    problem: LiftingProblem,
}

impl GtcProblem {
    pub fn new(gtc: GtcSpec, problem: LiftingProblem) -> Result<Self> {
        if problem.left() != gtc.u() {
            return Err(Error::contract(
                "the problem's left leg must be the bundled generating trivial cofibration",
            ));
        }
        Ok(GtcProblem { gtc, problem })
    }

    pub fn gtc(&self) -> &GtcSpec {
        &self.gtc
    }

    pub fn problem(&self) -> &LiftingProblem {
        &self.problem
    }
}

/// How a witness produces lifts.
pub trait LiftStrategy: Send + Sync {
    fn solve(&self, problem: &GtcProblem, budget: &Budget) -> Result<PresheafMap>;

    fn describe(&self) -> String;
}

/// Complete search; absence is reported as a fibration failure
/// carrying the unsolved square.
struct SearchStrategy;

impl LiftStrategy for SearchStrategy {
    fn solve(&self, gp: &GtcProblem, budget: &Budget) -> Result<PresheafMap> {
        solve_lift(gp.problem(), budget)?.ok_or_else(|| Error::NotFibration {
            detail: "no diagonal filler exists for the posed square".into(),
            problem: Box::new(gp.problem().clone()),
        })
    }

    fn describe(&self) -> String {
        "complete search".into()
    }
}

/// A map carried together with a procedure that produces a checked
/// lift for every generating-trivial-cofibration problem posed against
/// it. Lifts are cached by the canonical problem encoding; a cache hit
/// returns the identical lift the first query produced.
pub struct FibrationWitness {
    p: PresheafMap,
    strategy: Arc<dyn LiftStrategy>,
    budget: Budget,
    cache: Mutex<BTreeMap<String, PresheafMap>>,
}

impl std::fmt::Debug for FibrationWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FibrationWitness")
            .field("strategy", &self.strategy.describe())
            .field("cached", &self.cache.lock().unwrap().len())
            .finish_non_exhaustive()
    }
}

impl FibrationWitness {
    pub fn new(p: PresheafMap, strategy: Arc<dyn LiftStrategy>, budget: Budget) -> Self {
        FibrationWitness { p, strategy, budget, cache: Mutex::new(BTreeMap::new()) }
    }

    /// Witness backed by the complete deterministic search.
    pub fn by_search(p: PresheafMap, budget: Budget) -> Self {
        FibrationWitness::new(p, Arc::new(SearchStrategy), budget)
    }

    pub fn map(&self) -> &PresheafMap {
        &self.p
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn strategy_description(&self) -> String {
        self.strategy.describe()
    }

    /// Produces a lift for the posed problem. The problem's right leg
    /// must be the witnessed map; every returned lift satisfies both
    /// triangles, and equal problems return the identical lift.
    pub fn solve(&self, gp: &GtcProblem) -> Result<PresheafMap> {
        if gp.problem().right() != &self.p {
            return Err(Error::contract("posed problem is not against the witnessed map"));
        }
        let key = gp.problem().canonical_key();
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let lift = self.strategy.solve(gp, &self.budget)?;
        if !gp.problem().is_solution(&lift) {
            return Err(Error::check("witness", "strategy returned a non-filler"));
        }
        let mut cache = self.cache.lock().unwrap();
        Ok(cache.entry(key).or_insert(lift).clone())
    }

    pub fn cached_lifts(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtc::{biased_gtc, boundary_simplex, prism_gtc};
    use crate::index_cat::preset_simplex;
    use crate::limits::{initial_map, terminal, terminal_map};
    use crate::presheaf::{yoneda, yoneda_map, CofibrationClass, PresheafContext};

    fn base1() -> Arc<crate::index_cat::IndexCategory> {
        Arc::new(preset_simplex(1).unwrap())
    }

    #[test]
    fn iso_left_leg_always_lifts() {
        let base = base1();
        let i = yoneda(&base, 1);
        let id = PresheafMap::identity(&i);
        let collapse = yoneda_map(&base, base.morphism_index("[1]->[0]:00").unwrap());
        let problem =
            LiftingProblem::new(id.clone(), collapse.clone(), id.clone(), collapse.clone())
                .unwrap();
        let lift = solve_lift(&problem, &Budget::default()).unwrap().unwrap();
        assert_eq!(lift, id);
        assert_eq!(all_lifts(&problem, &Budget::default()).unwrap().len(), 1);
    }

    #[test]
    fn no_map_from_point_to_empty() {
        let base = base1();
        let pt = terminal(&base).apex().clone();
        let empty = crate::presheaf::Presheaf::empty(base.clone());
        let u = initial_map(&pt);
        let p = initial_map(&pt);
        let problem =
            LiftingProblem::new(u.clone(), p, initial_map(&empty), PresheafMap::identity(&pt))
                .unwrap();
        assert!(solve_lift(&problem, &Budget::default()).unwrap().is_none());
        assert!(all_lifts(&problem, &Budget::default()).unwrap().is_empty());
    }

    #[test]
    fn first_lift_heads_the_complete_list() {
        let base = base1();
        let i = yoneda(&base, 1);
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        // Endomorphisms of the interval fixing its first vertex: two
        // of them, so ordering is observable.
        let problem =
            LiftingProblem::new(v0.clone(), terminal_map(&i), v0.clone(), terminal_map(&i))
                .unwrap();
        let first = solve_lift(&problem, &Budget::default()).unwrap().unwrap();
        let all = all_lifts(&problem, &Budget::default()).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(&first, &all[0]);
        for w in all.windows(2) {
            assert!(w[0].components() < w[1].components());
        }
    }

    #[test]
    fn budget_overrun_is_an_error_not_absence() {
        let base = base1();
        let i = yoneda(&base, 1);
        let sq = crate::limits::product(&i, &i).unwrap();
        let problem = LiftingProblem::new(
            initial_map(sq.apex()),
            terminal_map(sq.apex()),
            initial_map(sq.apex()),
            terminal_map(sq.apex()),
        )
        .unwrap();
        let tiny = Budget { max_nodes: 1 };
        assert!(matches!(
            all_lifts(&problem, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn certificate_or_first_failure() {
        let base = base1();
        let i = yoneda(&base, 1);
        let interval = i.clone();
        let ctx = PresheafContext::new(base.clone(), interval, CofibrationClass::Monomorphisms)
            .unwrap();
        let v1 = yoneda_map(&base, base.morphism_index("[0]->[1]:1").unwrap());
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let pt = v1.source().clone();
        // The second vertex against the biased family: the point
        // inclusion and the boundary product.
        let family_c: Vec<PresheafMap> =
            vec![initial_map(&pt), boundary_simplex(&base, 1).unwrap()];
        let mut family = Vec::new();
        for c in &family_c {
            let u = biased_gtc(&ctx, c, &v0).unwrap();
            for top in crate::presheaf::enumerate_maps(u.source(), &pt, &Budget::default())
                .unwrap()
            {
                for bottom in
                    crate::presheaf::enumerate_maps(u.target(), &i, &Budget::default()).unwrap()
                {
                    if bottom.compose(&u).unwrap() == v1.compose(&top).unwrap() {
                        family.push(
                            LiftingProblem::new(u.clone(), v1.clone(), top.clone(), bottom)
                                .unwrap(),
                        );
                    }
                }
            }
        }
        assert!(!family.is_empty());
        let outcome = rlp_certificate(&v1, &family, &Budget::default()).unwrap();
        assert!(outcome.is_certified());
        // The first vertex fails against the same family: the square
        // over the identity bottom has no filler.
        let mut bad = Vec::new();
        for c in &family_c {
            let u = biased_gtc(&ctx, c, &v0).unwrap();
            for top in crate::presheaf::enumerate_maps(u.source(), &pt, &Budget::default())
                .unwrap()
            {
                for bottom in
                    crate::presheaf::enumerate_maps(u.target(), &i, &Budget::default()).unwrap()
                {
                    if bottom.compose(&u).unwrap() == v0.compose(&top).unwrap() {
                        bad.push(
                            LiftingProblem::new(u.clone(), v0.clone(), top.clone(), bottom)
                                .unwrap(),
                        );
                    }
                }
            }
        }
        let refuted = rlp_certificate(&v0, &bad, &Budget::default()).unwrap();
        assert!(!refuted.is_certified());
    }

    #[test]
    fn retract_equations_checked_and_named() {
        let base = base1();
        let i = yoneda(&base, 1);
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        assert!(check_retract(&v0, &v0, &RetractData::identity(&v0)).unwrap().is_empty());
        let broken = RetractData {
            s_dom: PresheafMap::identity(v0.source()),
            r_dom: PresheafMap::identity(v0.source()),
            s_cod: PresheafMap::identity(&i),
            r_cod: v0.compose(&terminal_map(&i)).unwrap(),
        };
        let failures = check_retract(&v0, &v0, &broken).unwrap();
        assert!(failures.iter().any(|f| f.contains("r_cod ∘ s_cod")));
    }

    #[test]
    fn retract_transport_reuses_the_inner_lift() {
        let base = base1();
        let i = yoneda(&base, 1);
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let problem = LiftingProblem::new(
            v0.clone(),
            terminal_map(&i),
            v0.clone(),
            terminal_map(&i),
        )
        .unwrap();
        let budget = Budget::default();
        let lift = lift_via_retract(&problem, &v0, &RetractData::identity(&v0), |pr| {
            solve_lift(pr, &budget)?.ok_or_else(|| Error::check("test", "expected a lift"))
        })
        .unwrap();
        assert!(problem.is_solution(&lift));
        assert_eq!(lift, solve_lift(&problem, &budget).unwrap().unwrap());
    }

    #[test]
    fn witness_caches_and_repeats_identically() {
        let base = base1();
        let spec = prism_gtc(&base, 0, 0).unwrap();
        let codomain = spec.codomain().clone();
        let witness = FibrationWitness::by_search(terminal_map(&codomain), Budget::default());
        let problem = LiftingProblem::new(
            spec.u().clone(),
            terminal_map(&codomain),
            spec.u().clone(),
            terminal_map(&codomain),
        )
        .unwrap();
        let gp = GtcProblem::new(spec.clone(), problem).unwrap();
        let first = witness.solve(&gp).unwrap();
        assert_eq!(witness.cached_lifts(), 1);
        let second = witness.solve(&gp).unwrap();
        assert_eq!(first, second);
        assert_eq!(witness.cached_lifts(), 1);
    }

    #[test]
    fn gtc_problem_rejects_mismatched_left_leg() {
        let base = base1();
        let spec = prism_gtc(&base, 0, 0).unwrap();
        let i = yoneda(&base, 1);
        let other = LiftingProblem::new(
            PresheafMap::identity(&i),
            PresheafMap::identity(&i),
            PresheafMap::identity(&i),
            PresheafMap::identity(&i),
        )
        .unwrap();
        assert!(GtcProblem::new(spec, other).is_err());
    }

    #[test]
    fn problem_round_trips_through_data() {
        let base = base1();
        let i = yoneda(&base, 1);
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let problem = LiftingProblem::new(
            v0.clone(),
            terminal_map(&i),
            v0.clone(),
            terminal_map(&i),
        )
        .unwrap();
        let data = problem.to_data();
        let back = LiftingProblem::from_data(&base, &data).unwrap();
        assert_eq!(problem, back);
        assert_eq!(problem.canonical_key(), back.canonical_key());
    }
}
