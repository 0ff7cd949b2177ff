//! Presheaves of finite sets over an index category, and the natural
//! maps between them.
//!
//! A presheaf stores one element count per object (elements are the
//! dense indices `0..k`) and one table per base morphism: for
//! `s: d -> c` the table sends level-`c` elements to level-`d`
//! elements. Optional labels and a display name ride along for
//! reporting but are ignored by equality, so two constructions that
//! agree table-for-table compare equal.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_cat::IndexCategory;

pub use crate::search::{enumerate_maps, enumerate_maps_over};

#[derive(Debug, Clone)]
pub struct Presheaf {
    base: Arc<IndexCategory>,
    name: String,
    levels: Vec<usize>,
    action: Vec<Vec<usize>>,
    labels: Option<Vec<Vec<String>>>,
}

impl PartialEq for Presheaf {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
            && self.levels == other.levels
            && self.action == other.action
    }
}

impl Eq for Presheaf {}

impl Presheaf {
    /// Structural checks: one table per base morphism, table lengths
    /// equal to the source-of-action level, entries in range.
    /// Functoriality is checked separately by [`Presheaf::validate`].
    pub fn new(base: Arc<IndexCategory>, levels: Vec<usize>, action: Vec<Vec<usize>>) -> Result<Self> {
        if levels.len() != base.object_count() {
            return Err(Error::contract(format!(
                "{} levels for {} objects",
                levels.len(),
                base.object_count()
            )));
        }
        if action.len() != base.morphism_count() {
            return Err(Error::contract(format!(
                "{} action tables for {} morphisms",
                action.len(),
                base.morphism_count()
            )));
        }
        for (m, table) in action.iter().enumerate() {
            let mor = base.morphism(m);
            if table.len() != levels[mor.tgt] {
                return Err(Error::contract(format!(
                    "action table for {:?} has length {}, expected {}",
                    mor.id,
                    table.len(),
                    levels[mor.tgt]
                )));
            }
            if table.iter().any(|&v| v >= levels[mor.src]) {
                return Err(Error::contract(format!(
                    "action table for {:?} has an entry out of range",
                    mor.id
                )));
            }
        }
        Ok(Presheaf { base, name: String::new(), levels, action, labels: None })
    }

    pub fn empty(base: Arc<IndexCategory>) -> Self {
        let levels = vec![0; base.object_count()];
        let action = (0..base.morphism_count()).map(|_| Vec::new()).collect();
        Presheaf { base, name: "0".into(), levels, action, labels: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        for (o, ls) in labels.iter().enumerate() {
            if ls.len() != self.levels[o] {
                return Err(Error::contract(format!(
                    "{} labels for {} elements at {}",
                    ls.len(),
                    self.levels[o],
                    self.base.object_id(o)
                )));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn base(&self) -> &Arc<IndexCategory> {
        &self.base
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn level(&self, o: usize) -> usize {
        self.levels[o]
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn act(&self, m: usize, x: usize) -> usize {
        self.action[m][x]
    }

    pub fn action_table(&self, m: usize) -> &[usize] {
        &self.action[m]
    }

    pub fn total_elements(&self) -> usize {
        self.levels.iter().sum()
    }

    pub fn is_empty_presheaf(&self) -> bool {
        self.levels.iter().all(|&k| k == 0)
    }

    /// All `(object, element)` pairs in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.levels.len()).flat_map(move |o| (0..self.levels[o]).map(move |x| (o, x)))
    }

    pub fn label(&self, o: usize, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[o][x].clone(),
            None => format!("{}.{}", self.base.object_id(o), x),
        }
    }

    /// Functoriality: identity actions are identities and composite
    /// actions factor contravariantly through the composition table.
    pub fn validate(&self) -> Result<()> {
        for o in 0..self.base.object_count() {
            let id = self.base.identity_of(o);
            for x in 0..self.levels[o] {
                if self.act(id, x) != x {
                    return Err(Error::check(
                        "presheaf-functoriality",
                        format!(
                            "identity action at {} moves element {}",
                            self.base.object_id(o),
                            x
                        ),
                    ));
                }
            }
        }
        for g in 0..self.base.morphism_count() {
            for f in 0..self.base.morphism_count() {
                let Some(gf) = self.base.composite(g, f) else { continue };
                // action(g∘f) = action(f) ∘ action(g) on level tgt(g).
                for x in 0..self.levels[self.base.morphism(g).tgt] {
                    if self.act(gf, x) != self.act(f, self.act(g, x)) {
                        return Err(Error::check(
                            "presheaf-functoriality",
                            format!(
                                "action of {:?} after {:?} disagrees with their composite at element {}",
                                self.base.morphism(f).id,
                                self.base.morphism(g).id,
                                x
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_data(&self) -> PresheafData {
        PresheafData {
            levels: (0..self.levels.len())
                .map(|o| (self.base.object_id(o).to_string(), self.levels[o]))
                .collect(),
            action: self
                .action
                .iter()
                .enumerate()
                .map(|(m, t)| (self.base.morphism(m).id.clone(), t.clone()))
                .collect(),
            labels: self.labels.as_ref().map(|ls| {
                ls.iter()
                    .enumerate()
                    .map(|(o, l)| (self.base.object_id(o).to_string(), l.clone()))
                    .collect()
            }),
        }
    }

    pub fn from_data(base: Arc<IndexCategory>, data: &PresheafData) -> Result<Self> {
        let mut levels = vec![0; base.object_count()];
        for (id, &k) in &data.levels {
            let o = base
                .object_index(id)
                .ok_or_else(|| Error::Schema(format!("unknown object {id:?} in levels")))?;
            levels[o] = k;
        }
        if data.levels.len() != base.object_count() {
            return Err(Error::Schema(format!(
                "levels name {} of {} objects",
                data.levels.len(),
                base.object_count()
            )));
        }
        let mut action = vec![Vec::new(); base.morphism_count()];
        for (id, t) in &data.action {
            let m = base
                .morphism_index(id)
                .ok_or_else(|| Error::Schema(format!("unknown morphism {id:?} in action")))?;
            action[m] = t.clone();
        }
        if data.action.len() != base.morphism_count() {
            return Err(Error::Schema(format!(
                "action names {} of {} morphisms",
                data.action.len(),
                base.morphism_count()
            )));
        }
        let mut p = Presheaf::new(base, levels, action)?;
        if let Some(ls) = &data.labels {
            let mut labels = vec![Vec::new(); p.base.object_count()];
            for (id, l) in ls {
                let o = p
                    .base
                    .object_index(id)
                    .ok_or_else(|| Error::Schema(format!("unknown object {id:?} in labels")))?;
                labels[o] = l.clone();
            }
            p = p.with_labels(labels)?;
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafData {
    pub levels: BTreeMap<String, usize>,
    pub action: BTreeMap<String, Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, Vec<String>>>,
}

/// The representable presheaf of an object: level `d` is `Hom(d, c)`
/// in morphism-index order, and morphisms act by precomposition.
pub fn yoneda(base: &Arc<IndexCategory>, c: usize) -> Presheaf {
    let homs: Vec<Vec<usize>> = (0..base.object_count()).map(|d| base.hom(d, c)).collect();
    let positions: Vec<BTreeMap<usize, usize>> = homs
        .iter()
        .map(|h| h.iter().enumerate().map(|(i, &m)| (m, i)).collect())
        .collect();
    let levels: Vec<usize> = homs.iter().map(|h| h.len()).collect();
    let mut action = Vec::with_capacity(base.morphism_count());
    for s in 0..base.morphism_count() {
        let mor = base.morphism(s);
        // s: e -> d sends f in Hom(d, c) to f∘s in Hom(e, c).
        let table = homs[mor.tgt]
            .iter()
            .map(|&f| positions[mor.src][&base.composite(f, s).expect("composable")])
            .collect();
        action.push(table);
    }
    let labels = homs
        .iter()
        .map(|h| h.iter().map(|&m| base.morphism(m).id.clone()).collect())
        .collect();
    Presheaf::new(Arc::clone(base), levels, action)
        .expect("representable tables are well formed")
        .with_labels(labels)
        .expect("one label per morphism")
        .with_name(format!("y({})", base.object_id(c)))
}

/// Carves the action-closed subpresheaf on the given members out of
/// `ambient`, returning it with its inclusion. `members[o]` must be a
/// strictly increasing selection of element indices at each level.
pub fn subpresheaf(ambient: &Presheaf, members: Vec<Vec<usize>>) -> Result<(Presheaf, PresheafMap)> {
    let base = ambient.base().clone();
    if members.len() != base.object_count() {
        return Err(Error::contract("one member list per object required"));
    }
    for (o, ms) in members.iter().enumerate() {
        if !ms.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::contract(format!(
                "member list at {} is not strictly increasing",
                base.object_id(o)
            )));
        }
        if ms.last().is_some_and(|&m| m >= ambient.level(o)) {
            return Err(Error::contract(format!("member out of range at {}", base.object_id(o))));
        }
    }
    let levels: Vec<usize> = members.iter().map(|ms| ms.len()).collect();
    let mut action = Vec::with_capacity(base.morphism_count());
    for m in 0..base.morphism_count() {
        let mor = base.morphism(m);
        let mut table = Vec::with_capacity(levels[mor.tgt]);
        for &e in &members[mor.tgt] {
            let moved = ambient.act(m, e);
            let pos = members[mor.src].binary_search(&moved).map_err(|_| {
                Error::contract(format!(
                    "selection is not action closed: {} moves element {} of {} outside it",
                    mor.id,
                    e,
                    base.object_id(mor.tgt)
                ))
            })?;
            table.push(pos);
        }
        action.push(table);
    }
    let labels = (0..base.object_count())
        .map(|o| members[o].iter().map(|&e| ambient.label(o, e)).collect())
        .collect();
    let sub = Presheaf::new(base, levels, action)?
        .with_labels(labels)?
        .with_name(format!("sub({})", ambient.name()));
    let include = PresheafMap::new(sub.clone(), ambient.clone(), members)?;
    Ok((sub, include))
}

/// The codiscrete presheaf on `n` colors: a cell over `c` is a
/// function from `Hom([0], c)` to the colors, restricted by
/// precomposition. Requires an object named `[0]`.
pub fn codiscrete(base: &Arc<IndexCategory>, n: usize) -> Result<Presheaf> {
    let vertex = base
        .object_index("[0]")
        .ok_or_else(|| Error::contract("codiscrete needs an object named [0]"))?;
    let verts: Vec<Vec<usize>> = (0..base.object_count()).map(|c| base.hom(vertex, c)).collect();
    let levels: Vec<usize> = verts.iter().map(|v| n.pow(v.len() as u32)).collect();
    // A function is encoded big-endian over the vertex list, so level
    // order is lexicographic in the value tuple.
    let digit = |code: usize, slot: usize, width: usize| -> usize {
        code / n.pow((width - 1 - slot) as u32) % n
    };
    let mut action = Vec::with_capacity(base.morphism_count());
    for m in 0..base.morphism_count() {
        let mor = base.morphism(m);
        let (wt, ws) = (verts[mor.tgt].len(), verts[mor.src].len());
        let mut table = Vec::with_capacity(levels[mor.tgt]);
        for code in 0..levels[mor.tgt] {
            let mut out = 0usize;
            for (slot, &w) in verts[mor.src].iter().enumerate() {
                let through = base.composite(m, w).expect("composable");
                let pos = verts[mor.tgt].iter().position(|&v| v == through).expect("present");
                out += digit(code, pos, wt) * n.pow((ws - 1 - slot) as u32);
            }
            table.push(out);
        }
        action.push(table);
    }
    let labels = (0..base.object_count())
        .map(|o| {
            let w = verts[o].len();
            (0..levels[o])
                .map(|code| (0..w).map(|s| digit(code, s, w).to_string()).collect::<String>())
                .collect()
        })
        .collect();
    let p = Presheaf::new(base.clone(), levels, action)?
        .with_labels(labels)?
        .with_name(format!("K{n}"));
    p.validate()?;
    Ok(p)
}

/// The natural map `y(src f) -> y(tgt f)` given by postcomposition
/// with `f`.
pub fn yoneda_map(base: &Arc<IndexCategory>, f: usize) -> PresheafMap {
    let mor = base.morphism(f).clone();
    let src = yoneda(base, mor.src);
    let tgt = yoneda(base, mor.tgt);
    let components: Vec<Vec<usize>> = (0..base.object_count())
        .map(|d| {
            let tgt_hom = base.hom(d, mor.tgt);
            base.hom(d, mor.src)
                .iter()
                .map(|&g| {
                    let fg = base.composite(f, g).expect("composable");
                    tgt_hom.iter().position(|&h| h == fg).expect("present")
                })
                .collect()
        })
        .collect();
    PresheafMap::new(src, tgt, components).expect("postcomposition is natural")
}

/// The map y(c) -> p classifying the element `x` of `p` at `c`: a
/// morphism g: d -> c is sent to the restriction of `x` along g.
pub fn element_map(p: &Presheaf, c: usize, x: usize) -> Result<PresheafMap> {
    let base = p.base().clone();
    if c >= base.object_count() || x >= p.level(c) {
        return Err(Error::contract("element out of range"));
    }
    let src = yoneda(&base, c);
    let components: Vec<Vec<usize>> = (0..base.object_count())
        .map(|d| base.hom(d, c).iter().map(|&g| p.act(g, x)).collect())
        .collect();
    PresheafMap::new(src, p.clone(), components)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafMap {
    source: Presheaf,
    target: Presheaf,
    components: Vec<Vec<usize>>,
}

impl PresheafMap {
    /// Builds a natural map. Component tables are checked structurally
    /// and for naturality against every base morphism; unnatural
    /// tables are rejected here rather than caught downstream.
    pub fn new(source: Presheaf, target: Presheaf, components: Vec<Vec<usize>>) -> Result<Self> {
        if source.base() != target.base() && !Arc::ptr_eq(source.base(), target.base()) {
            return Err(Error::contract("map endpoints live over different bases"));
        }
        let base = source.base().clone();
        if components.len() != base.object_count() {
            return Err(Error::contract(format!(
                "{} components for {} objects",
                components.len(),
                base.object_count()
            )));
        }
        for (o, comp) in components.iter().enumerate() {
            if comp.len() != source.level(o) {
                return Err(Error::contract(format!(
                    "component at {} has length {}, expected {}",
                    base.object_id(o),
                    comp.len(),
                    source.level(o)
                )));
            }
            if comp.iter().any(|&v| v >= target.level(o)) {
                return Err(Error::contract(format!(
                    "component at {} has an entry out of range",
                    base.object_id(o)
                )));
            }
        }
        for m in 0..base.morphism_count() {
            let mor = base.morphism(m);
            for x in 0..source.level(mor.tgt) {
                let down_then_map = components[mor.src][source.act(m, x)];
                let map_then_down = target.act(m, components[mor.tgt][x]);
                if down_then_map != map_then_down {
                    return Err(Error::check(
                        "naturality",
                        format!(
                            "square for {:?} fails at element {} of level {}",
                            mor.id,
                            x,
                            base.object_id(mor.tgt)
                        ),
                    ));
                }
            }
        }
        Ok(PresheafMap { source, target, components })
    }

    pub fn identity(x: &Presheaf) -> Self {
        let components = (0..x.base().object_count()).map(|o| (0..x.level(o)).collect()).collect();
        PresheafMap { source: x.clone(), target: x.clone(), components }
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    pub fn base(&self) -> &Arc<IndexCategory> {
        self.source.base()
    }

    pub fn apply(&self, o: usize, x: usize) -> usize {
        self.components[o][x]
    }

    pub fn component(&self, o: usize) -> &[usize] {
        &self.components[o]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// self ∘ other.
    pub fn compose(&self, other: &PresheafMap) -> Result<PresheafMap> {
        if other.target != self.source {
            return Err(Error::contract(format!(
                "cannot compose: inner map lands in {:?}, outer map starts at {:?}",
                other.target.name, self.source.name
            )));
        }
        let components = other
            .components
            .iter()
            .enumerate()
            .map(|(o, comp)| comp.iter().map(|&x| self.components[o][x]).collect())
            .collect();
        Ok(PresheafMap {
            source: other.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().enumerate().all(|(o, comp)| {
            let mut seen = vec![false; self.target.level(o)];
            comp.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono()
            && (0..self.components.len()).all(|o| self.source.level(o) == self.target.level(o))
    }

    pub fn inverse(&self) -> Result<PresheafMap> {
        if !self.is_iso() {
            return Err(Error::contract("inverse requested for a non-isomorphism"));
        }
        let components: Vec<Vec<usize>> = self
            .components
            .iter()
            .enumerate()
            .map(|(o, comp)| {
                let mut inv = vec![0; self.target.level(o)];
                for (x, &v) in comp.iter().enumerate() {
                    inv[v] = x;
                }
                inv
            })
            .collect();
        Ok(PresheafMap { source: self.target.clone(), target: self.source.clone(), components })
    }

    pub fn to_data(&self) -> MapData {
        MapData {
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(o, c)| (self.base().object_id(o).to_string(), c.clone()))
                .collect(),
        }
    }

    pub fn from_data(source: &Presheaf, target: &Presheaf, data: &MapData) -> Result<Self> {
        let base = source.base();
        let mut components = vec![Vec::new(); base.object_count()];
        for (id, c) in &data.components {
            let o = base
                .object_index(id)
                .ok_or_else(|| Error::Schema(format!("unknown object {id:?} in components")))?;
            components[o] = c.clone();
        }
        PresheafMap::new(source.clone(), target.clone(), components)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapData {
    pub components: BTreeMap<String, Vec<usize>>,
}

/// Which maps count as cofibrations. Classes are predicates checked
/// per instance; no closure properties are verified globally.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum CofibrationClass {
    /// Pointwise injective maps. The default.
    Monomorphisms,
    /// Every map.
    All,
    /// A caller-supplied predicate.
    #[serde(skip)]
    Custom(fn(&PresheafMap) -> bool),
}

impl CofibrationClass {
    pub fn accepts(&self, m: &PresheafMap) -> bool {
        match self {
            CofibrationClass::Monomorphisms => m.is_mono(),
            CofibrationClass::All => true,
            CofibrationClass::Custom(p) => p(m),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            CofibrationClass::Monomorphisms => "monomorphisms",
            CofibrationClass::All => "all",
            CofibrationClass::Custom(_) => "custom",
        }
    }
}

impl Default for CofibrationClass {
    fn default() -> Self {
        CofibrationClass::Monomorphisms
    }
}

/// A base category together with a chosen interval presheaf and
/// cofibration class. Cylinder constructions and certificates are read
/// relative to one of these.
#[derive(Debug, Clone)]
pub struct PresheafContext {
    base: Arc<IndexCategory>,
    interval: Presheaf,
    cofibrations: CofibrationClass,
}

impl PresheafContext {
    pub fn new(
        base: Arc<IndexCategory>,
        interval: Presheaf,
        cofibrations: CofibrationClass,
    ) -> Result<Self> {
        if interval.base() != &base {
            return Err(Error::contract("interval presheaf lives over a different base"));
        }
        Ok(PresheafContext { base, interval, cofibrations })
    }

    pub fn base(&self) -> &Arc<IndexCategory> {
        &self.base
    }

    pub fn interval(&self) -> &Presheaf {
        &self.interval
    }

    pub fn cofibrations(&self) -> &CofibrationClass {
        &self.cofibrations
    }

    /// Instance check that maps out of the empty presheaf are accepted
    /// as cofibrations, for the supplied sample targets.
    pub fn check_empty_cofibrant(&self, targets: &[&Presheaf]) -> bool {
        targets.iter().all(|t| {
            let from_empty = PresheafMap::new(
                Presheaf::empty(self.base.clone()),
                (*t).clone(),
                vec![Vec::new(); self.base.object_count()],
            )
            .expect("maps out of the empty presheaf are natural");
            self.cofibrations.accepts(&from_empty)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_cat::{preset_cube, preset_simplex};

    fn simplex1() -> Arc<IndexCategory> {
        Arc::new(preset_simplex(1).unwrap())
    }

    #[test]
    fn representable_interval_is_a_reflexive_graph() {
        let base = simplex1();
        let i = yoneda(&base, 1);
        assert_eq!(i.levels(), &[2, 3]);
        i.validate().unwrap();
        let pt = yoneda(&base, 0);
        assert_eq!(pt.levels(), &[1, 1]);
        pt.validate().unwrap();
    }

    #[test]
    fn representables_validate_on_cube_base() {
        let base = Arc::new(preset_cube(2).unwrap());
        for c in 0..base.object_count() {
            let y = yoneda(&base, c);
            y.validate().unwrap();
            for d in 0..base.object_count() {
                assert_eq!(y.level(d), base.hom(d, c).len());
            }
        }
    }

    #[test]
    fn corrupted_action_is_caught() {
        let base = simplex1();
        let y = yoneda(&base, 1);
        let mut action: Vec<Vec<usize>> =
            (0..base.morphism_count()).map(|m| y.action_table(m).to_vec()).collect();
        // Redirect one entry of a degeneracy action.
        let sigma = base.morphism_index("[1]->[0]:00").unwrap();
        action[sigma][0] = (action[sigma][0] + 1) % y.level(1);
        let broken = Presheaf::new(base, y.levels().to_vec(), action).unwrap();
        assert!(broken.validate().is_err());
    }

    #[test]
    fn corrupted_component_is_caught() {
        let base = simplex1();
        let m = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let mut components: Vec<Vec<usize>> = m.components().to_vec();
        components[0][0] = (components[0][0] + 1) % m.target().level(0);
        let err = PresheafMap::new(m.source().clone(), m.target().clone(), components);
        assert!(matches!(err, Err(Error::CheckFailed { .. })));
    }

    #[test]
    fn yoneda_maps_compose_like_morphisms() {
        let base = simplex1();
        let d0 = base.morphism_index("[0]->[1]:0").unwrap();
        let s = base.morphism_index("[1]->[0]:00").unwrap();
        let yd0 = yoneda_map(&base, d0);
        let ys = yoneda_map(&base, s);
        let composite = ys.compose(&yd0).unwrap();
        let direct = yoneda_map(&base, base.composite(s, d0).unwrap());
        assert_eq!(composite, direct);
        assert!(yd0.is_mono());
        assert!(!yd0.is_iso());
        assert!(!ys.is_mono());
        assert!(composite.is_iso());
    }

    #[test]
    fn inverse_round_trips() {
        let base = simplex1();
        let y = yoneda(&base, 1);
        let id = PresheafMap::identity(&y);
        let inv = id.inverse().unwrap();
        assert_eq!(inv.compose(&id).unwrap(), id);
    }

    #[test]
    fn empty_maps_are_cofibrations_by_default() {
        let base = simplex1();
        let interval = yoneda(&base, 1);
        let ctx =
            PresheafContext::new(base.clone(), interval.clone(), CofibrationClass::default())
                .unwrap();
        assert!(ctx.check_empty_cofibrant(&[&interval, &yoneda(&base, 0)]));
    }

    #[test]
    fn presheaf_data_round_trip() {
        let base = simplex1();
        let y = yoneda(&base, 1);
        let data = y.to_data();
        let back = Presheaf::from_data(base, &data).unwrap();
        assert_eq!(y, back);
    }
}
