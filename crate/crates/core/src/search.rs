//! Backtracking search for natural maps, shared by map enumeration,
//! lift solving, and section enumeration.
//!
//! Variables are the source elements in canonical order (object index,
//! then element index). Branching always picks the first unassigned
//! variable and tries values in increasing order, so solutions are
//! emitted in lexicographic order of their flattened component
//! vectors; the first solution found is the canonical one. Assigning a
//! variable propagates along every base morphism: forward along
//! actions as forced assignments, backward as domain filters. Visited
//! assignments are counted against a budget and overruns are reported
//! as errors, never as silently truncated results.

use crate::error::{Error, Result};
use crate::presheaf::{Presheaf, PresheafMap};
use crate::Budget;

const UNSET: usize = usize::MAX;

#[derive(Clone, Debug)]
struct SmallSet {
    words: Vec<u64>,
}

impl SmallSet {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64).max(1)];
        let tail = n % 64;
        if n == 0 {
            words = vec![0];
        } else if tail != 0 {
            let last = words.len() - 1;
            words[last] = (1u64 << tail) - 1;
        }
        SmallSet { words }
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn values(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count());
        for (k, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(k * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }
}

enum TrailEntry {
    Assigned(usize),
    Narrowed(usize, SmallSet),
}

/// One search instance for natural maps `src -> dst`, with optional
/// per-element domain restrictions and pre-assignments.
pub(crate) struct MapSearch<'a> {
    src: &'a Presheaf,
    dst: &'a Presheaf,
    first_var: Vec<usize>,
    var_obj: Vec<usize>,
    vals: Vec<usize>,
    domains: Vec<SmallSet>,
    /// (target var, morphism): assigning v forces that var through the
    /// dst action of the morphism.
    edges_out: Vec<Vec<(usize, usize)>>,
    /// (source var, morphism): assigning v filters that var's domain.
    edges_in: Vec<Vec<(usize, usize)>>,
    trail: Vec<TrailEntry>,
    contradiction: bool,
    nodes: u64,
}

impl<'a> MapSearch<'a> {
    pub fn new(src: &'a Presheaf, dst: &'a Presheaf) -> Result<Self> {
        if src.base() != dst.base() {
            return Err(Error::contract("map search endpoints live over different bases"));
        }
        let base = src.base().clone();
        let mut first_var = Vec::with_capacity(base.object_count());
        let mut var_obj = Vec::new();
        for o in 0..base.object_count() {
            first_var.push(var_obj.len());
            var_obj.extend(std::iter::repeat_n(o, src.level(o)));
        }
        let n = var_obj.len();
        let domains: Vec<SmallSet> =
            (0..n).map(|v| SmallSet::full(dst.level(var_obj[v]))).collect();
        let mut edges_out = vec![Vec::new(); n];
        let mut edges_in = vec![Vec::new(); n];
        let mut search = MapSearch {
            src,
            dst,
            first_var,
            var_obj,
            vals: vec![UNSET; n],
            domains,
            edges_out: Vec::new(),
            edges_in: Vec::new(),
            trail: Vec::new(),
            contradiction: false,
            nodes: 0,
        };
        for m in base.non_identities().collect::<Vec<_>>() {
            let mor = base.morphism(m);
            for x in 0..src.level(mor.tgt) {
                let v = search.first_var[mor.tgt] + x;
                let w = search.first_var[mor.src] + src.act(m, x);
                if v == w {
                    // Self-loop: the value must be a fixed point of the
                    // dst action.
                    let dom = &mut search.domains[v];
                    for a in dom.values() {
                        if dst.act(m, a) != a {
                            dom.remove(a);
                        }
                    }
                    if dom.is_empty() {
                        search.contradiction = true;
                    }
                } else {
                    edges_out[v].push((w, m));
                    edges_in[w].push((v, m));
                }
            }
        }
        search.edges_out = edges_out;
        search.edges_in = edges_in;
        Ok(search)
    }

    fn var(&self, o: usize, x: usize) -> usize {
        self.first_var[o] + x
    }

    /// Narrows the domain of one source element. Call before solving.
    pub fn restrict(&mut self, o: usize, x: usize, allowed: impl Fn(usize) -> bool) {
        let v = self.var(o, x);
        for a in self.domains[v].values() {
            if !allowed(a) {
                self.domains[v].remove(a);
            }
        }
        if self.domains[v].is_empty() {
            self.contradiction = true;
        }
    }

    /// Forces one source element to a value, with propagation. Call
    /// before solving; a conflict marks the search as contradictory.
    pub fn preassign(&mut self, o: usize, x: usize, a: usize) -> Result<()> {
        if self.contradiction {
            return Ok(());
        }
        let v = self.var(o, x);
        if !self.assign(v, a, &Budget::default())? {
            self.contradiction = true;
        }
        Ok(())
    }

    fn assign(&mut self, v: usize, a: usize, budget: &Budget) -> Result<bool> {
        if self.vals[v] != UNSET {
            return Ok(self.vals[v] == a);
        }
        if !self.domains[v].contains(a) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > budget.max_nodes {
            return Err(Error::BudgetExceeded {
                limit: budget.max_nodes,
                at: self.src.base().object_id(self.var_obj[v]).to_string(),
            });
        }
        self.vals[v] = a;
        self.trail.push(TrailEntry::Assigned(v));
        for k in 0..self.edges_out[v].len() {
            let (w, m) = self.edges_out[v][k];
            let forced = self.dst.act(m, a);
            if !self.assign(w, forced, budget)? {
                return Ok(false);
            }
        }
        for k in 0..self.edges_in[v].len() {
            let (u, m) = self.edges_in[v][k];
            if self.vals[u] != UNSET {
                continue;
            }
            let mut narrowed: Option<SmallSet> = None;
            for b in self.domains[u].values() {
                if self.dst.act(m, b) != a {
                    if narrowed.is_none() {
                        narrowed = Some(self.domains[u].clone());
                    }
                    self.domains[u].remove(b);
                }
            }
            if let Some(old) = narrowed {
                self.trail.push(TrailEntry::Narrowed(u, old));
                if self.domains[u].is_empty() {
                    return Ok(false);
                }
                if let (1, Some(b)) = (self.domains[u].count(), self.domains[u].first()) {
                    if !self.assign(u, b, budget)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                TrailEntry::Assigned(v) => self.vals[v] = UNSET,
                TrailEntry::Narrowed(v, old) => self.domains[v] = old,
            }
        }
    }

    fn solution(&self) -> Vec<Vec<usize>> {
        (0..self.first_var.len())
            .map(|o| (0..self.src.level(o)).map(|x| self.vals[self.first_var[o] + x]).collect())
            .collect()
    }

    fn dfs(
        &mut self,
        cursor: usize,
        budget: &Budget,
        out: &mut Vec<Vec<Vec<usize>>>,
        first_only: bool,
    ) -> Result<bool> {
        let mut cursor = cursor;
        while cursor < self.vals.len() && self.vals[cursor] != UNSET {
            cursor += 1;
        }
        if cursor == self.vals.len() {
            out.push(self.solution());
            return Ok(first_only);
        }
        for a in self.domains[cursor].values() {
            let mark = self.trail.len();
            let ok = self.assign(cursor, a, budget)?;
            if ok && self.dfs(cursor + 1, budget, out, first_only)? {
                return Ok(true);
            }
            self.undo_to(mark);
        }
        Ok(false)
    }

    /// The lexicographically first solution, or None.
    pub fn first(mut self, budget: &Budget) -> Result<Option<Vec<Vec<usize>>>> {
        if self.contradiction {
            return Ok(None);
        }
        let mut out = Vec::new();
        self.dfs(0, budget, &mut out, true)?;
        Ok(out.pop())
    }

    /// All solutions, in lexicographic order of component vectors.
    pub fn all(mut self, budget: &Budget) -> Result<Vec<Vec<Vec<usize>>>> {
        if self.contradiction {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        self.dfs(0, budget, &mut out, false)?;
        Ok(out)
    }
}

/// Every natural map `x -> y`, duplicate-free, in canonical
/// (lexicographic) order. Re-running yields an identical list.
pub fn enumerate_maps(x: &Presheaf, y: &Presheaf, budget: &Budget) -> Result<Vec<PresheafMap>> {
    let search = MapSearch::new(x, y)?;
    let solutions = search.all(budget)?;
    Ok(solutions
        .into_iter()
        .map(|components| {
            PresheafMap::new(x.clone(), y.clone(), components)
                .expect("search only yields natural assignments")
        })
        .collect())
}

/// Every natural map `h` from the source of `over_x` to the source of
/// `over_y` satisfying `over_y ∘ h = over_x`, in canonical order.
pub fn enumerate_maps_over(
    over_x: &PresheafMap,
    over_y: &PresheafMap,
    budget: &Budget,
) -> Result<Vec<PresheafMap>> {
    if over_x.target() != over_y.target() {
        return Err(crate::error::Error::contract(
            "structure maps must share a target",
        ));
    }
    let x = over_x.source();
    let y = over_y.source();
    let mut search = MapSearch::new(x, y)?;
    for o in 0..x.base().object_count() {
        for e in 0..x.level(o) {
            let want = over_x.apply(o, e);
            search.restrict(o, e, |v| over_y.apply(o, v) == want);
        }
    }
    let solutions = search.all(budget)?;
    Ok(solutions
        .into_iter()
        .map(|components| {
            PresheafMap::new(x.clone(), y.clone(), components)
                .expect("search only yields natural assignments")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::index_cat::{preset_poset, preset_simplex};
    use crate::presheaf::yoneda;

    #[test]
    fn counts_match_levels_of_the_target() {
        // Nat(y(c), X) is in bijection with X(c).
        let base = Arc::new(preset_simplex(1).unwrap());
        let x = yoneda(&base, 1);
        for c in 0..2 {
            let y = yoneda(&base, c);
            let maps = enumerate_maps(&y, &x, &Budget::default()).unwrap();
            assert_eq!(maps.len(), x.level(c));
        }
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        let base = Arc::new(preset_simplex(1).unwrap());
        let x = yoneda(&base, 1);
        let maps = enumerate_maps(&x, &x, &Budget::default()).unwrap();
        assert_eq!(maps.len(), 3);
        let keys: Vec<Vec<Vec<usize>>> =
            maps.iter().map(|m| m.components().to_vec()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn restriction_and_preassignment_cut_the_count() {
        let base = Arc::new(preset_poset("chain", &["0", "1"], &[("0", "1")]).unwrap());
        let x = yoneda(&base, 0);
        // Two elements per level; the restriction map collapses to 0.
        let y = Presheaf::new(
            base.clone(),
            vec![2, 2],
            (0..base.morphism_count())
                .map(|m| if base.is_identity(m) { vec![0, 1] } else { vec![0, 0] })
                .collect(),
        )
        .unwrap();
        y.validate().unwrap();
        let all = enumerate_maps(&x, &y, &Budget::default()).unwrap();
        let mut restricted = MapSearch::new(&x, &y).unwrap();
        restricted.restrict(0, 0, |a| a == 1);
        let got = restricted.all(&Budget::default()).unwrap();
        assert!(got.len() < all.len());
        assert!(got.iter().all(|c| c[0][0] == 1));
        let mut pinned = MapSearch::new(&x, &y).unwrap();
        pinned.preassign(0, 0, 0).unwrap();
        let got = pinned.all(&Budget::default()).unwrap();
        assert!(got.iter().all(|c| c[0][0] == 0));
    }

    #[test]
    fn empty_source_has_exactly_one_map() {
        let base = Arc::new(preset_simplex(1).unwrap());
        let x = Presheaf::empty(base.clone());
        let y = yoneda(&base, 1);
        assert_eq!(enumerate_maps(&x, &y, &Budget::default()).unwrap().len(), 1);
        assert_eq!(enumerate_maps(&y, &x, &Budget::default()).unwrap().len(), 0);
    }

    #[test]
    fn tiny_budget_is_an_error_not_a_truncation() {
        let base = Arc::new(preset_simplex(1).unwrap());
        let x = yoneda(&base, 1);
        let err = enumerate_maps(&x, &x, &Budget::new(2));
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }
}
