//! Finite limits and colimits of presheaves, computed levelwise.
//!
//! Constructed apexes carry canonical element orderings: products and
//! pullbacks order pairs lexicographically, quotients (pushouts,
//! coequalizers) order classes by their least member in the disjoint
//! union, and subsets (equalizers) keep the ambient order, all densely
//! renumbered. Mediating maps are found by scanning the legs, so `gap`
//! and `cogap` need no side tables. Universal properties can be
//! re-verified against enumerated competitor cones.

use crate::error::{Error, Result};
use crate::presheaf::{enumerate_maps, Presheaf, PresheafMap};
use crate::Budget;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::index_cat::IndexCategory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeKind {
    Product,
    Pullback,
    Pushout,
    Equalizer,
    Coequalizer,
    Initial,
    Terminal,
}

impl ConeKind {
    pub fn is_limit(self) -> bool {
        matches!(
            self,
            ConeKind::Product | ConeKind::Pullback | ConeKind::Equalizer | ConeKind::Terminal
        )
    }
}

/// The defining maps of the diagram a cone was computed from, kept for
/// competitor-cone commutation checks and re-verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagram {
    Product,
    Terminal,
    Initial,
    /// Cospan f: X -> Z <- Y : g.
    Pullback { f: PresheafMap, g: PresheafMap },
    /// Span B <- f : A : g -> C.
    Pushout { f: PresheafMap, g: PresheafMap },
    /// Parallel pair f, g: X -> Y.
    Equalizer { f: PresheafMap, g: PresheafMap },
    Coequalizer { f: PresheafMap, g: PresheafMap },
}

/// A computed (co)limit: the apex with its projection or injection
/// legs, named for lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeResult {
    kind: ConeKind,
    apex: Presheaf,
    legs: Vec<(String, PresheafMap)>,
    diagram: Diagram,
}

impl ConeResult {
    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn apex(&self) -> &Presheaf {
        &self.apex
    }

    pub fn legs(&self) -> &[(String, PresheafMap)] {
        &self.legs
    }

    pub fn leg(&self, name: &str) -> &PresheafMap {
        &self
            .legs
            .iter()
            .find(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("cone has no leg named {name:?}"))
            .1
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    /// Checks that the given legs from `w` form a cone over the
    /// defining diagram.
    fn check_competitor_cone(&self, w: &Presheaf, legs: &[&PresheafMap]) -> Result<()> {
        if legs.len() != self.legs.len() {
            return Err(Error::contract(format!(
                "{} competitor legs for a cone with {}",
                legs.len(),
                self.legs.len()
            )));
        }
        for (q, (name, leg)) in legs.iter().zip(&self.legs) {
            if q.source() != w {
                return Err(Error::contract(format!("competitor leg {name:?} does not start at the given apex")));
            }
            let expected = if self.kind.is_limit() { leg.target() } else { leg.source() };
            let got = if self.kind.is_limit() { q.target() } else { q.source() };
            if got != expected {
                return Err(Error::contract(format!("competitor leg {name:?} has the wrong endpoint")));
            }
        }
        let commutes = match &self.diagram {
            Diagram::Product | Diagram::Terminal | Diagram::Initial => true,
            Diagram::Pullback { f, g } => {
                f.compose(legs[0])? == g.compose(legs[1])?
            }
            Diagram::Equalizer { f, g } => f.compose(legs[0])? == g.compose(legs[0])?,
            Diagram::Pushout { .. } | Diagram::Coequalizer { .. } => unreachable!(),
        };
        if !commutes {
            return Err(Error::contract("competitor cone does not commute with the diagram"));
        }
        Ok(())
    }

    fn check_competitor_cocone(&self, w: &Presheaf, legs: &[&PresheafMap]) -> Result<()> {
        if legs.len() != self.legs.len() {
            return Err(Error::contract(format!(
                "{} cocone legs for a cocone with {}",
                legs.len(),
                self.legs.len()
            )));
        }
        for (j, (name, leg)) in legs.iter().zip(&self.legs) {
            if j.target() != w {
                return Err(Error::contract(format!("cocone leg {name:?} does not land in the given target")));
            }
            if j.source() != leg.source() {
                return Err(Error::contract(format!("cocone leg {name:?} has the wrong source")));
            }
        }
        let commutes = match &self.diagram {
            Diagram::Initial => true,
            Diagram::Pushout { f, g } => legs[0].compose(f)? == legs[1].compose(g)?,
            Diagram::Coequalizer { f, g } => legs[0].compose(f)? == legs[0].compose(g)?,
            _ => unreachable!(),
        };
        if !commutes {
            return Err(Error::contract("competitor cocone does not commute with the diagram"));
        }
        Ok(())
    }

    /// Mediating map into the apex from a competitor cone.
    pub fn gap(&self, w: &Presheaf, legs: &[&PresheafMap]) -> Result<PresheafMap> {
        if !self.kind.is_limit() {
            return Err(Error::contract("gap applies to limit cones; use cogap"));
        }
        self.check_competitor_cone(w, legs)?;
        let base = self.apex.base().clone();
        let mut components = Vec::with_capacity(base.object_count());
        for o in 0..base.object_count() {
            let mut comp = Vec::with_capacity(w.level(o));
            for x in 0..w.level(o) {
                let e = (0..self.apex.level(o))
                    .find(|&e| {
                        self.legs
                            .iter()
                            .zip(legs)
                            .all(|((_, leg), q)| leg.apply(o, e) == q.apply(o, x))
                    })
                    .ok_or_else(|| {
                        Error::check(
                            "gap",
                            format!(
                                "no apex element matches the competitor at {} element {}",
                                base.object_id(o),
                                x
                            ),
                        )
                    })?;
                comp.push(e);
            }
            components.push(comp);
        }
        PresheafMap::new(w.clone(), self.apex.clone(), components)
    }

    /// Mediating map out of the apex to a competitor cocone.
    pub fn cogap(&self, w: &Presheaf, legs: &[&PresheafMap]) -> Result<PresheafMap> {
        if self.kind.is_limit() {
            return Err(Error::contract("cogap applies to colimit cocones; use gap"));
        }
        self.check_competitor_cocone(w, legs)?;
        let base = self.apex.base().clone();
        let mut components = Vec::with_capacity(base.object_count());
        for o in 0..base.object_count() {
            let mut comp = vec![usize::MAX; self.apex.level(o)];
            for ((_, leg), j) in self.legs.iter().zip(legs) {
                for x in 0..leg.source().level(o) {
                    let e = leg.apply(o, x);
                    let v = j.apply(o, x);
                    if comp[e] == usize::MAX {
                        comp[e] = v;
                    } else if comp[e] != v {
                        return Err(Error::check(
                            "cogap",
                            format!(
                                "cocone legs disagree on a glued class at {}",
                                base.object_id(o)
                            ),
                        ));
                    }
                }
            }
            if comp.iter().any(|&v| v == usize::MAX) {
                return Err(Error::check(
                    "cogap",
                    format!("apex element at {} has no preimage in the feet", base.object_id(o)),
                ));
            }
            components.push(comp);
        }
        PresheafMap::new(self.apex.clone(), w.clone(), components)
    }
}

fn disp(p: &Presheaf) -> &str {
    if p.name().is_empty() {
        "_"
    } else {
        p.name()
    }
}

pub fn terminal(base: &Arc<IndexCategory>) -> ConeResult {
    let levels = vec![1; base.object_count()];
    let action = (0..base.morphism_count()).map(|_| vec![0]).collect();
    let apex = Presheaf::new(base.clone(), levels, action)
        .expect("terminal tables are well formed")
        .with_labels(vec![vec!["*".into()]; base.object_count()])
        .expect("one label per level")
        .with_name("1");
    ConeResult { kind: ConeKind::Terminal, apex, legs: Vec::new(), diagram: Diagram::Terminal }
}

pub fn initial(base: &Arc<IndexCategory>) -> ConeResult {
    let apex = Presheaf::empty(base.clone());
    ConeResult { kind: ConeKind::Initial, apex, legs: Vec::new(), diagram: Diagram::Initial }
}

/// The unique map to the terminal presheaf.
pub fn terminal_map(p: &Presheaf) -> PresheafMap {
    terminal(p.base()).gap(p, &[]).expect("every presheaf maps to the terminal one")
}

/// The unique map from the empty presheaf.
pub fn initial_map(p: &Presheaf) -> PresheafMap {
    PresheafMap::new(
        Presheaf::empty(p.base().clone()),
        p.clone(),
        vec![Vec::new(); p.base().object_count()],
    )
    .expect("maps out of the empty presheaf are natural")
}

/// Binary product with lexicographically ordered pairs and legs
/// `pr1`, `pr2`.
pub fn product(x: &Presheaf, y: &Presheaf) -> Result<ConeResult> {
    if x.base() != y.base() {
        return Err(Error::contract("product factors live over different bases"));
    }
    let base = x.base().clone();
    let levels: Vec<usize> =
        (0..base.object_count()).map(|o| x.level(o) * y.level(o)).collect();
    let mut action = Vec::with_capacity(base.morphism_count());
    for m in 0..base.morphism_count() {
        let tgt = base.morphism(m).tgt;
        let src = base.morphism(m).src;
        let mut table = Vec::with_capacity(levels[tgt]);
        for a in 0..x.level(tgt) {
            for b in 0..y.level(tgt) {
                table.push(x.act(m, a) * y.level(src) + y.act(m, b));
            }
        }
        action.push(table);
    }
    let labels = (0..base.object_count())
        .map(|o| {
            let mut ls = Vec::with_capacity(levels[o]);
            for a in 0..x.level(o) {
                for b in 0..y.level(o) {
                    ls.push(format!("({},{})", x.label(o, a), y.label(o, b)));
                }
            }
            ls
        })
        .collect();
    let apex = Presheaf::new(base.clone(), levels, action)?
        .with_labels(labels)?
        .with_name(format!("({} x {})", disp(x), disp(y)));
    let pr1 = PresheafMap::new(
        apex.clone(),
        x.clone(),
        (0..base.object_count())
            .map(|o| {
                (0..x.level(o)).flat_map(|a| std::iter::repeat_n(a, y.level(o))).collect()
            })
            .collect(),
    )?;
    let pr2 = PresheafMap::new(
        apex.clone(),
        y.clone(),
        (0..base.object_count())
            .map(|o| (0..x.level(o)).flat_map(|_| 0..y.level(o)).collect())
            .collect(),
    )?;
    Ok(ConeResult {
        kind: ConeKind::Product,
        apex,
        legs: vec![("pr1".into(), pr1), ("pr2".into(), pr2)],
        diagram: Diagram::Product,
    })
}

/// Pullback of the cospan f: X -> Z <- Y : g, with legs `left` to X
/// and `right` to Y.
pub fn pullback(f: &PresheafMap, g: &PresheafMap) -> Result<ConeResult> {
    if f.target() != g.target() {
        return Err(Error::contract("pullback cospan targets differ"));
    }
    let x = f.source();
    let y = g.source();
    let base = x.base().clone();
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(base.object_count());
    for o in 0..base.object_count() {
        let mut level_pairs = Vec::new();
        for a in 0..x.level(o) {
            for b in 0..y.level(o) {
                if f.apply(o, a) == g.apply(o, b) {
                    level_pairs.push((a, b));
                }
            }
        }
        pairs.push(level_pairs);
    }
    let levels: Vec<usize> = pairs.iter().map(|p| p.len()).collect();
    let mut action = Vec::with_capacity(base.morphism_count());
    for m in 0..base.morphism_count() {
        let mor = base.morphism(m);
        let table = pairs[mor.tgt]
            .iter()
            .map(|&(a, b)| {
                let moved = (x.act(m, a), y.act(m, b));
                pairs[mor.src]
                    .binary_search(&moved)
                    .expect("naturality keeps matched pairs matched")
            })
            .collect();
        action.push(table);
    }
    let labels = (0..base.object_count())
        .map(|o| {
            pairs[o]
                .iter()
                .map(|&(a, b)| format!("({},{})", x.label(o, a), y.label(o, b)))
                .collect()
        })
        .collect();
    let apex = Presheaf::new(base.clone(), levels, action)?
        .with_labels(labels)?
        .with_name(format!("pb({} -> {} <- {})", disp(x), disp(f.target()), disp(y)));
    let left = PresheafMap::new(
        apex.clone(),
        x.clone(),
        pairs.iter().map(|p| p.iter().map(|&(a, _)| a).collect()).collect(),
    )?;
    let right = PresheafMap::new(
        apex.clone(),
        y.clone(),
        pairs.iter().map(|p| p.iter().map(|&(_, b)| b).collect()).collect(),
    )?;
    Ok(ConeResult {
        kind: ConeKind::Pullback,
        apex,
        legs: vec![("left".into(), left), ("right".into(), right)],
        diagram: Diagram::Pullback { f: f.clone(), g: g.clone() },
    })
}

/// Union-find with least-member representatives.
struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    fn new(n: usize) -> Self {
        Classes { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a < b {
            self.parent[b] = a;
        } else {
            self.parent[a] = b;
        }
    }

    /// Dense class index per element, classes ordered by least member.
    fn dense(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut class_of = vec![usize::MAX; n];
        let mut count = 0;
        for i in 0..n {
            let r = self.find(i);
            if class_of[r] == usize::MAX {
                class_of[r] = count;
                count += 1;
            }
            class_of[i] = class_of[r];
        }
        (class_of, count)
    }
}

/// Pushout of the span B <- f : A : g -> C, with injection legs `left`
/// from B and `right` from C. Classes are ordered by least member of
/// the disjoint union (all of B, then all of C).
pub fn pushout(f: &PresheafMap, g: &PresheafMap) -> Result<ConeResult> {
    if f.source() != g.source() {
        return Err(Error::contract("pushout span sources differ"));
    }
    let a = f.source();
    let b = f.target();
    let c = g.target();
    let base = b.base().clone();
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(base.object_count());
    let mut levels = Vec::with_capacity(base.object_count());
    for o in 0..base.object_count() {
        let mut uf = Classes::new(b.level(o) + c.level(o));
        for e in 0..a.level(o) {
            uf.union(f.apply(o, e), b.level(o) + g.apply(o, e));
        }
        let (classes, count) = uf.dense();
        class_of.push(classes);
        levels.push(count);
    }
    let mut action = Vec::with_capacity(base.morphism_count());
    for m in 0..base.morphism_count() {
        let mor = base.morphism(m);
        let mut table = vec![usize::MAX; levels[mor.tgt]];
        for x in 0..b.level(mor.tgt) {
            table[class_of[mor.tgt][x]] = class_of[mor.src][b.act(m, x)];
        }
        for x in 0..c.level(mor.tgt) {
            let e = class_of[mor.tgt][b.level(mor.tgt) + x];
            let v = class_of[mor.src][b.level(mor.src) + c.act(m, x)];
            debug_assert!(table[e] == usize::MAX || table[e] == v, "quotient action ill defined");
            table[e] = v;
        }
        action.push(table);
    }
    let labels = (0..base.object_count())
        .map(|o| {
            let mut ls = vec![String::new(); levels[o]];
            for x in (0..c.level(o)).rev() {
                ls[class_of[o][b.level(o) + x]] = format!("r:{}", c.label(o, x));
            }
            for x in (0..b.level(o)).rev() {
                ls[class_of[o][x]] = format!("l:{}", b.label(o, x));
            }
            ls
        })
        .collect();
    let apex = Presheaf::new(base.clone(), levels, action)?
        .with_labels(labels)?
        .with_name(format!("po({} <- {} -> {})", disp(b), disp(a), disp(c)));
    let left = PresheafMap::new(
        b.clone(),
        apex.clone(),
        (0..base.object_count())
            .map(|o| (0..b.level(o)).map(|x| class_of[o][x]).collect())
            .collect(),
    )?;
    let right = PresheafMap::new(
        c.clone(),
        apex.clone(),
        (0..base.object_count())
            .map(|o| (0..c.level(o)).map(|x| class_of[o][b.level(o) + x]).collect())
            .collect(),
    )?;
    Ok(ConeResult {
        kind: ConeKind::Pushout,
        apex,
        legs: vec![("left".into(), left), ("right".into(), right)],
        diagram: Diagram::Pushout { f: f.clone(), g: g.clone() },
    })
}

/// Equalizer of a parallel pair, with leg `include`.
pub fn equalizer(f: &PresheafMap, g: &PresheafMap) -> Result<ConeResult> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::contract("equalizer pair endpoints differ"));
    }
    let x = f.source();
    let base = x.base().clone();
    let members: Vec<Vec<usize>> = (0..base.object_count())
        .map(|o| (0..x.level(o)).filter(|&e| f.apply(o, e) == g.apply(o, e)).collect())
        .collect();
    let levels: Vec<usize> = members.iter().map(|m| m.len()).collect();
    let mut action = Vec::with_capacity(base.morphism_count());
    for m in 0..base.morphism_count() {
        let mor = base.morphism(m);
        let table = members[mor.tgt]
            .iter()
            .map(|&e| {
                members[mor.src]
                    .binary_search(&x.act(m, e))
                    .expect("naturality keeps equalized elements equalized")
            })
            .collect();
        action.push(table);
    }
    let labels = (0..base.object_count())
        .map(|o| members[o].iter().map(|&e| x.label(o, e)).collect())
        .collect();
    let apex = Presheaf::new(base.clone(), levels, action)?
        .with_labels(labels)?
        .with_name(format!("eq({})", disp(x)));
    let include = PresheafMap::new(apex.clone(), x.clone(), members)?;
    Ok(ConeResult {
        kind: ConeKind::Equalizer,
        apex,
        legs: vec![("include".into(), include)],
        diagram: Diagram::Equalizer { f: f.clone(), g: g.clone() },
    })
}

/// Whether `e` is an equalizer fork for the parallel pair (f, g):
/// `e` must equalize them and the comparison into the computed
/// equalizer must be an isomorphism.
pub fn is_equalizer_fork(e: &PresheafMap, f: &PresheafMap, g: &PresheafMap) -> Result<bool> {
    if e.target() != f.source() {
        return Err(Error::contract("fork leg must land in the pair's source"));
    }
    if f.compose(e)? != g.compose(e)? {
        return Ok(false);
    }
    let eq = equalizer(f, g)?;
    let cmp = eq.gap(e.source(), &[e])?;
    Ok(cmp.is_iso())
}

/// Coequalizer of a parallel pair, with leg `project`.
pub fn coequalizer(f: &PresheafMap, g: &PresheafMap) -> Result<ConeResult> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::contract("coequalizer pair endpoints differ"));
    }
    let x = f.source();
    let y = f.target();
    let base = y.base().clone();
    let mut class_of = Vec::with_capacity(base.object_count());
    let mut levels = Vec::with_capacity(base.object_count());
    for o in 0..base.object_count() {
        let mut uf = Classes::new(y.level(o));
        for e in 0..x.level(o) {
            uf.union(f.apply(o, e), g.apply(o, e));
        }
        let (classes, count) = uf.dense();
        class_of.push(classes);
        levels.push(count);
    }
    let mut action = Vec::with_capacity(base.morphism_count());
    for m in 0..base.morphism_count() {
        let mor = base.morphism(m);
        let mut table = vec![usize::MAX; levels[mor.tgt]];
        for e in 0..y.level(mor.tgt) {
            let v = class_of[mor.src][y.act(m, e)];
            debug_assert!(
                table[class_of[mor.tgt][e]] == usize::MAX || table[class_of[mor.tgt][e]] == v,
                "quotient action ill defined"
            );
            table[class_of[mor.tgt][e]] = v;
        }
        action.push(table);
    }
    let labels = (0..base.object_count())
        .map(|o| {
            let mut ls = vec![String::new(); levels[o]];
            for e in (0..y.level(o)).rev() {
                ls[class_of[o][e]] = y.label(o, e);
            }
            ls
        })
        .collect();
    let apex = Presheaf::new(base.clone(), levels, action)?
        .with_labels(labels)?
        .with_name(format!("coeq({})", disp(y)));
    let project = PresheafMap::new(y.clone(), apex.clone(), class_of)?;
    Ok(ConeResult {
        kind: ConeKind::Coequalizer,
        apex,
        legs: vec![("project".into(), project)],
        diagram: Diagram::Coequalizer { f: f.clone(), g: g.clone() },
    })
}

/// The pairing map `W -> X x Y` of two maps out of W.
pub fn pairing(prod: &ConeResult, f: &PresheafMap, g: &PresheafMap) -> Result<PresheafMap> {
    prod.gap(f.source(), &[f, g])
}

/// The product functor on maps: `f x g` between already-computed
/// products of the endpoints.
pub fn product_map(
    src_prod: &ConeResult,
    tgt_prod: &ConeResult,
    f: &PresheafMap,
    g: &PresheafMap,
) -> Result<PresheafMap> {
    let left = f.compose(src_prod.leg("pr1"))?;
    let right = g.compose(src_prod.leg("pr2"))?;
    tgt_prod.gap(src_prod.apex(), &[&left, &right])
}

/// A commuting square: top and left leave the same corner, right and
/// bottom meet at the opposite one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    pub top: PresheafMap,
    pub left: PresheafMap,
    pub right: PresheafMap,
    pub bottom: PresheafMap,
}

impl Square {
    pub fn new(
        top: PresheafMap,
        left: PresheafMap,
        right: PresheafMap,
        bottom: PresheafMap,
    ) -> Result<Self> {
        if top.source() != left.source() {
            return Err(Error::contract("square: top and left start at different corners"));
        }
        if top.target() != right.source() {
            return Err(Error::contract("square: right does not continue top"));
        }
        if left.target() != bottom.source() {
            return Err(Error::contract("square: bottom does not continue left"));
        }
        if right.target() != bottom.target() {
            return Err(Error::contract("square: right and bottom land in different corners"));
        }
        Ok(Square { top, left, right, bottom })
    }

    pub fn commutes(&self) -> Result<bool> {
        Ok(self.right.compose(&self.top)? == self.bottom.compose(&self.left)?)
    }
}

/// Whether the square is a pullback: recomputes the pullback of its
/// cospan and checks the comparison map is an isomorphism.
pub fn check_pullback_square(sq: &Square) -> Result<bool> {
    if !sq.commutes()? {
        return Ok(false);
    }
    let pb = pullback(&sq.bottom, &sq.right)?;
    let cmp = pb.gap(sq.top.source(), &[&sq.left, &sq.top])?;
    Ok(cmp.is_iso())
}

/// Instance check that pulling a pushout cocone back along `f`
/// yields a pushout cocone again.
///
/// The span `B <- A -> C` maps into `Q` by the cocone legs, and `Q`
/// maps to the target of `f` by `anchor`. The whole diagram is pulled
/// back along `f`, the pushout of the pulled-back span is recomputed,
/// and the comparison map must be an isomorphism. The input cocone is
/// required to be a pushout itself.
pub fn pullback_preserves_pushout(
    f: &PresheafMap,
    span_left: &PresheafMap,
    span_right: &PresheafMap,
    cocone_left: &PresheafMap,
    cocone_right: &PresheafMap,
    anchor: &PresheafMap,
) -> Result<bool> {
    let po = pushout(span_left, span_right)?;
    let cmp = po.cogap(anchor.source(), &[cocone_left, cocone_right])?;
    if !cmp.is_iso() {
        return Err(Error::contract("supplied cocone is not a pushout cocone"));
    }
    // Structure maps of the four corners over the anchor target.
    let to_x = |route: &PresheafMap| anchor.compose(route);
    let a_anchor = to_x(&cocone_left.compose(span_left)?)?;
    let b_anchor = to_x(cocone_left)?;
    let c_anchor = to_x(cocone_right)?;
    let pull = |m: &PresheafMap| pullback(m, f);
    let pa = pull(&a_anchor)?;
    let pb = pull(&b_anchor)?;
    let pc = pull(&c_anchor)?;
    let pq = pull(anchor)?;
    // Induced maps between the pulled-back corners.
    let lift_along = |target_cone: &ConeResult, edge: &PresheafMap, source_cone: &ConeResult| {
        let over = edge.compose(source_cone.leg("left"))?;
        target_cone.gap(source_cone.apex(), &[&over, source_cone.leg("right")])
    };
    let pa_pb = lift_along(&pb, span_left, &pa)?;
    let pa_pc = lift_along(&pc, span_right, &pa)?;
    let pb_pq = lift_along(&pq, cocone_left, &pb)?;
    let pc_pq = lift_along(&pq, cocone_right, &pc)?;
    let pulled_po = pushout(&pa_pb, &pa_pc)?;
    let cmp = pulled_po.cogap(pq.apex(), &[&pb_pq, &pc_pq])?;
    Ok(cmp.is_iso())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalReport {
    pub test_objects: usize,
    pub competitors: usize,
    pub failures: Vec<String>,
}

impl UniversalReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies the universal property of a cone against competitor cones
/// from every representable plus the supplied extra test objects:
/// each competitor must factor through the apex by exactly one map.
pub fn verify_universal(
    cone: &ConeResult,
    extras: &[&Presheaf],
    budget: &Budget,
) -> Result<UniversalReport> {
    let base = cone.apex().base().clone();
    let mut tests: Vec<Presheaf> =
        (0..base.object_count()).map(|c| crate::presheaf::yoneda(&base, c)).collect();
    tests.extend(extras.iter().map(|p| (*p).clone()));
    let mut competitors = 0usize;
    let mut failures = Vec::new();
    for w in &tests {
        let tuples: Vec<Vec<PresheafMap>> = if cone.kind().is_limit() {
            let lists: Vec<Vec<PresheafMap>> = cone
                .legs()
                .iter()
                .map(|(_, leg)| enumerate_maps(w, leg.target(), budget))
                .collect::<Result<_>>()?;
            cartesian(&lists)
        } else {
            let lists: Vec<Vec<PresheafMap>> = cone
                .legs()
                .iter()
                .map(|(_, leg)| enumerate_maps(leg.source(), w, budget))
                .collect::<Result<_>>()?;
            cartesian(&lists)
        };
        let candidates = if cone.kind().is_limit() {
            enumerate_maps(w, cone.apex(), budget)?
        } else {
            enumerate_maps(cone.apex(), w, budget)?
        };
        for tuple in tuples {
            let refs: Vec<&PresheafMap> = tuple.iter().collect();
            let mediating = if cone.kind().is_limit() {
                match cone.gap(w, &refs) {
                    Ok(m) => m,
                    Err(Error::Contract(_)) => continue, // not a commuting competitor
                    Err(e) => return Err(e),
                }
            } else {
                match cone.cogap(w, &refs) {
                    Ok(m) => m,
                    Err(Error::Contract(_)) => continue,
                    Err(e) => return Err(e),
                }
            };
            competitors += 1;
            let reproduces = cone.legs().iter().zip(&tuple).all(|((_, leg), q)| {
                let via = if cone.kind().is_limit() {
                    leg.compose(&mediating)
                } else {
                    mediating.compose(leg)
                };
                via.map(|v| &v == q).unwrap_or(false)
            });
            if !reproduces {
                failures.push(format!("mediating map does not reproduce a competitor over {}", disp(w)));
                continue;
            }
            let matching = candidates
                .iter()
                .filter(|cand| {
                    cone.legs().iter().zip(&tuple).all(|((_, leg), q)| {
                        let via = if cone.kind().is_limit() {
                            leg.compose(cand)
                        } else {
                            cand.compose(leg)
                        };
                        via.map(|v| &v == q).unwrap_or(false)
                    })
                })
                .count();
            if matching != 1 {
                failures.push(format!(
                    "{} mediating maps for a competitor over {}",
                    matching,
                    disp(w)
                ));
            }
        }
    }
    Ok(UniversalReport { test_objects: tests.len(), competitors, failures })
}

fn cartesian(lists: &[Vec<PresheafMap>]) -> Vec<Vec<PresheafMap>> {
    let mut out: Vec<Vec<PresheafMap>> = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|tuple| {
                list.iter().map(move |m| {
                    let mut t = tuple.clone();
                    t.push(m.clone());
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_cat::preset_simplex;
    use crate::presheaf::{yoneda, yoneda_map};

    fn base1() -> Arc<IndexCategory> {
        Arc::new(preset_simplex(1).unwrap())
    }

    #[test]
    fn square_of_intervals_has_four_vertices_nine_edges() {
        let base = base1();
        let i = yoneda(&base, 1);
        let sq = product(&i, &i).unwrap();
        assert_eq!(sq.apex().levels(), &[4, 9]);
        sq.apex().validate().unwrap();
        // Independent recount: pairs per level.
        for o in 0..2 {
            let expected = i.level(o) * i.level(o);
            assert_eq!(sq.apex().level(o), expected);
        }
    }

    #[test]
    fn terminal_is_the_point_representable_here() {
        let base = base1();
        let t = terminal(&base);
        t.apex().validate().unwrap();
        assert_eq!(t.apex().levels(), yoneda(&base, 0).levels());
    }

    #[test]
    fn distinct_vertices_pull_back_to_empty() {
        let base = base1();
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let v1 = yoneda_map(&base, base.morphism_index("[0]->[1]:1").unwrap());
        let pb = pullback(&v0, &v1).unwrap();
        assert!(pb.apex().is_empty_presheaf());
    }

    #[test]
    fn pullback_levels_match_a_direct_recount() {
        let base = base1();
        let i = yoneda(&base, 1);
        let sq = product(&i, &i).unwrap();
        let f = sq.leg("pr1").clone();
        let pb = pullback(&f, &f).unwrap();
        for o in 0..2 {
            let mut count = 0;
            for a in 0..sq.apex().level(o) {
                for b in 0..sq.apex().level(o) {
                    if f.apply(o, a) == f.apply(o, b) {
                        count += 1;
                    }
                }
            }
            assert_eq!(pb.apex().level(o), count);
        }
        pb.apex().validate().unwrap();
    }

    #[test]
    fn gluing_two_intervals_at_a_vertex() {
        let base = base1();
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let v1 = yoneda_map(&base, base.morphism_index("[0]->[1]:1").unwrap());
        // Wedge: end of one interval glued to start of the other.
        let po = pushout(&v1, &v0).unwrap();
        assert_eq!(po.apex().levels(), &[3, 5]);
        po.apex().validate().unwrap();
        assert_eq!(
            po.cogap(po.apex(), &[po.leg("left"), po.leg("right")]).unwrap(),
            PresheafMap::identity(po.apex())
        );
    }

    #[test]
    fn coproduct_levels_add() {
        let base = base1();
        let i = yoneda(&base, 1);
        let nothing = initial(&base);
        let from0 = |t: &Presheaf| {
            PresheafMap::new(
                nothing.apex().clone(),
                t.clone(),
                vec![Vec::new(); base.object_count()],
            )
            .unwrap()
        };
        let co = pushout(&from0(&i), &from0(&i)).unwrap();
        assert_eq!(co.apex().levels(), &[4, 6]);
    }

    #[test]
    fn equalizer_and_coequalizer_of_a_collapse() {
        let base = base1();
        let i = yoneda(&base, 1);
        let pt = yoneda(&base, 0);
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let collapse = yoneda_map(&base, base.morphism_index("[1]->[0]:00").unwrap());
        let const0 = v0.compose(&collapse).unwrap();
        let eq = equalizer(&const0, &PresheafMap::identity(&i)).unwrap();
        // Fixed elements of the constant endomorphism: vertex 0 and its
        // degenerate edge.
        assert_eq!(eq.apex().levels(), &[1, 1]);
        let coeq = coequalizer(&const0, &PresheafMap::identity(&i)).unwrap();
        assert_eq!(coeq.apex().levels(), pt.levels());
        coeq.apex().validate().unwrap();
    }

    #[test]
    fn computed_pullback_squares_check_and_products_do_not_fake_it() {
        let base = base1();
        let i = yoneda(&base, 1);
        let sq = product(&i, &i).unwrap();
        let f = sq.leg("pr1").clone();
        let pb = pullback(&f, &f).unwrap();
        let square = Square::new(
            pb.leg("right").clone(),
            pb.leg("left").clone(),
            f.clone(),
            f.clone(),
        )
        .unwrap();
        assert!(check_pullback_square(&square).unwrap());
        // Commuting square that is no pullback: collapsing the interval
        // over a constant square of points.
        let pt = yoneda(&base, 0);
        let collapse = yoneda_map(&base, base.morphism_index("[1]->[0]:00").unwrap());
        let not_pb = Square::new(
            collapse.clone(),
            collapse.clone(),
            PresheafMap::identity(&pt),
            PresheafMap::identity(&pt),
        )
        .unwrap();
        assert!(not_pb.commutes().unwrap());
        assert!(!check_pullback_square(&not_pb).unwrap());
    }

    #[test]
    fn universal_properties_hold_for_small_cones() {
        let base = base1();
        let i = yoneda(&base, 1);
        let budget = Budget::default();
        let prod = product(&i, &yoneda(&base, 0)).unwrap();
        assert!(verify_universal(&prod, &[], &budget).unwrap().ok());
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let v1 = yoneda_map(&base, base.morphism_index("[0]->[1]:1").unwrap());
        let po = pushout(&v1, &v0).unwrap();
        assert!(verify_universal(&po, &[], &budget).unwrap().ok());
        let pb = pullback(&v0, &PresheafMap::identity(&i)).unwrap();
        assert!(verify_universal(&pb, &[], &budget).unwrap().ok());
    }

    #[test]
    fn pulled_back_pushouts_stay_pushouts() {
        let base = base1();
        let i = yoneda(&base, 1);
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let v1 = yoneda_map(&base, base.morphism_index("[0]->[1]:1").unwrap());
        let po = pushout(&v1, &v0).unwrap();
        // Anchor the wedge over the interval: first copy as is, second
        // collapsed onto the shared vertex. Then pull back along a vertex.
        let collapse = yoneda_map(&base, base.morphism_index("[1]->[0]:00").unwrap());
        let const1 = v1.compose(&collapse).unwrap();
        let anchor = po.cogap(&i, &[&PresheafMap::identity(&i), &const1]).unwrap();
        assert!(pullback_preserves_pushout(
            &v0,
            &v1,
            &v0,
            po.leg("left"),
            po.leg("right"),
            &anchor
        )
        .unwrap());
    }

    #[test]
    fn product_map_and_pairing_agree_with_pointwise_composition() {
        let base = base1();
        let i = yoneda(&base, 1);
        let pt = yoneda(&base, 0);
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let p_src = product(&pt, &i).unwrap();
        let p_tgt = product(&i, &i).unwrap();
        let fx1 = product_map(&p_src, &p_tgt, &v0, &PresheafMap::identity(&i)).unwrap();
        assert_eq!(p_tgt.leg("pr1").compose(&fx1).unwrap(), v0.compose(p_src.leg("pr1")).unwrap());
        assert_eq!(p_tgt.leg("pr2").compose(&fx1).unwrap(), p_src.leg("pr2").clone());
        let graph = pairing(&p_tgt, &PresheafMap::identity(&i), &PresheafMap::identity(&i)).unwrap();
        assert!(graph.is_mono());
    }
}
