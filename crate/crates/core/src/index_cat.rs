//! Finite index categories with explicit composition tables.
//!
//! Objects and morphisms live in dense index spaces; morphisms carry
//! stable string ids that double as descriptions (preset ids encode the
//! underlying monotone map, cube word, or order pair). Construction
//! only enforces structural well-formedness. The categorical laws are
//! checked by [`IndexCategory::validate`], which reports every
//! violation instead of stopping at the first, so deliberately broken
//! tables can be inspected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

const NO_ENTRY: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    /// Row-major `compose[g * morphisms.len() + f]` holds the index of
    /// g∘f (g after f), or `NO_ENTRY`.
    compose: Vec<u32>,
}

impl IndexCategory {
    /// Structural checks only: unique non-empty ids, endpoints in
    /// range, one identity per object, table entries in range. Law
    /// violations are left for `validate`.
    pub fn build(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let name = name.into();
        let mut seen = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            if o.is_empty() {
                return Err(Error::contract(format!("object {i} has an empty id")));
            }
            if seen.insert(o.clone(), i).is_some() {
                return Err(Error::contract(format!("duplicate object id {o:?}")));
            }
        }
        let mut seen = BTreeMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if m.id.is_empty() {
                return Err(Error::contract(format!("morphism {i} has an empty id")));
            }
            if seen.insert(m.id.clone(), i).is_some() {
                return Err(Error::contract(format!("duplicate morphism id {:?}", m.id)));
            }
            if m.src >= objects.len() || m.tgt >= objects.len() {
                return Err(Error::contract(format!(
                    "morphism {:?} has endpoints out of range",
                    m.id
                )));
            }
        }
        if identity.len() != objects.len() {
            return Err(Error::contract(format!(
                "{} identity entries for {} objects",
                identity.len(),
                objects.len()
            )));
        }
        for (o, &m) in identity.iter().enumerate() {
            if m >= morphisms.len() {
                return Err(Error::contract(format!(
                    "identity of {:?} is out of range",
                    objects[o]
                )));
            }
        }
        let n = morphisms.len();
        let mut compose = vec![NO_ENTRY; n * n];
        for &(g, f, gf) in composites {
            if g >= n || f >= n || gf >= n {
                return Err(Error::contract(format!(
                    "composite entry ({g}, {f}, {gf}) out of range"
                )));
            }
            let slot = &mut compose[g * n + f];
            if *slot != NO_ENTRY && *slot != gf as u32 {
                return Err(Error::contract(format!(
                    "conflicting composites for ({:?} after {:?})",
                    morphisms[g].id, morphisms[f].id
                )));
            }
            *slot = gf as u32;
        }
        Ok(IndexCategory { name, objects, morphisms, identity, compose })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == id)
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    pub fn identity_of(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identity[self.morphisms[m].src] == m
    }

    /// g∘f (g after f), or None when absent from the table.
    pub fn composite(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.compose[g * self.morphisms.len() + f];
        if v == NO_ENTRY {
            None
        } else {
            Some(v as usize)
        }
    }

    /// Morphism indices from `a` to `b`, in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == a && self.morphisms[m].tgt == b)
            .collect()
    }

    pub fn non_identities(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(|&m| !self.is_identity(m))
    }

    /// Checks every categorical law and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.morphisms.len();
        let id_of = |m: usize| self.morphisms[m].id.clone();

        for (o, &e) in self.identity.iter().enumerate() {
            let m = &self.morphisms[e];
            if m.src != o || m.tgt != o {
                violations.push(LawViolation::IdentityEndpoints {
                    object: self.objects[o].clone(),
                    identity: m.id.clone(),
                });
            }
        }

        let mut composable_pairs = 0usize;
        for g in 0..n {
            for f in 0..n {
                let chainable = self.morphisms[f].tgt == self.morphisms[g].src;
                match (chainable, self.composite(g, f)) {
                    (true, None) => {
                        composable_pairs += 1;
                        violations.push(LawViolation::MissingComposite {
                            g: id_of(g),
                            f: id_of(f),
                        });
                    }
                    (true, Some(gf)) => {
                        composable_pairs += 1;
                        let m = &self.morphisms[gf];
                        if m.src != self.morphisms[f].src || m.tgt != self.morphisms[g].tgt {
                            violations.push(LawViolation::CompositeEndpoints {
                                g: id_of(g),
                                f: id_of(f),
                                composite: m.id.clone(),
                            });
                        }
                    }
                    (false, Some(_)) => {
                        violations.push(LawViolation::SpuriousComposite {
                            g: id_of(g),
                            f: id_of(f),
                        });
                    }
                    (false, None) => {}
                }
            }
        }

        for f in 0..n {
            let m = &self.morphisms[f];
            if let Some(idf) = self.composite(self.identity[m.tgt], f) {
                if idf != f {
                    violations.push(LawViolation::LeftIdentity { f: id_of(f), got: id_of(idf) });
                }
            }
            if let Some(fid) = self.composite(f, self.identity[m.src]) {
                if fid != f {
                    violations.push(LawViolation::RightIdentity { f: id_of(f), got: id_of(fid) });
                }
            }
        }

        let mut triples_checked = 0usize;
        for h in 0..n {
            for g in 0..n {
                if self.morphisms[g].tgt != self.morphisms[h].src {
                    continue;
                }
                let Some(hg) = self.composite(h, g) else { continue };
                for f in 0..n {
                    if self.morphisms[f].tgt != self.morphisms[g].src {
                        continue;
                    }
                    let Some(gf) = self.composite(g, f) else { continue };
                    let left = self.composite(h, gf);
                    let right = self.composite(hg, f);
                    triples_checked += 1;
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            violations.push(LawViolation::Associativity {
                                h: id_of(h),
                                g: id_of(g),
                                f: id_of(f),
                                left: id_of(l),
                                right: id_of(r),
                            });
                        }
                    }
                }
            }
        }

        ValidationReport {
            objects: self.objects.len(),
            morphisms: n,
            composable_pairs,
            triples_checked,
            violations,
        }
    }

    pub fn to_data(&self) -> CategoryData {
        CategoryData {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismData {
                    id: m.id.clone(),
                    src: self.objects[m.src].clone(),
                    tgt: self.objects[m.tgt].clone(),
                })
                .collect(),
            identities: self.identity.iter().map(|&m| self.morphisms[m].id.clone()).collect(),
            composites: {
                let n = self.morphisms.len();
                let mut out = Vec::new();
                for g in 0..n {
                    for f in 0..n {
                        if let Some(gf) = self.composite(g, f) {
                            out.push([
                                self.morphisms[g].id.clone(),
                                self.morphisms[f].id.clone(),
                                self.morphisms[gf].id.clone(),
                            ]);
                        }
                    }
                }
                out
            },
        }
    }

    pub fn from_data(data: &CategoryData) -> Result<Self> {
        let obj_index: BTreeMap<&str, usize> =
            data.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mor_index: BTreeMap<&str, usize> =
            data.morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();
        let lookup_obj = |id: &str| {
            obj_index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Schema(format!("unknown object {id:?}")))
        };
        let lookup_mor = |id: &str| {
            mor_index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Schema(format!("unknown morphism {id:?}")))
        };
        let morphisms = data
            .morphisms
            .iter()
            .map(|m| {
                Ok(Morphism { id: m.id.clone(), src: lookup_obj(&m.src)?, tgt: lookup_obj(&m.tgt)? })
            })
            .collect::<Result<Vec<_>>>()?;
        if data.identities.len() != data.objects.len() {
            return Err(Error::Schema(format!(
                "{} identities for {} objects",
                data.identities.len(),
                data.objects.len()
            )));
        }
        let identity =
            data.identities.iter().map(|id| lookup_mor(id)).collect::<Result<Vec<_>>>()?;
        let composites = data
            .composites
            .iter()
            .map(|[g, f, gf]| Ok((lookup_mor(g)?, lookup_mor(f)?, lookup_mor(gf)?)))
            .collect::<Result<Vec<_>>>()?;
        IndexCategory::build(data.name.clone(), data.objects.clone(), morphisms, identity, &composites)
    }
}

/// Serialization mirror of an index category, with everything keyed by
/// string ids so files stay readable and order-stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryData {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismData>,
    pub identities: Vec<String>,
    pub composites: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismData {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub objects: usize,
    pub morphisms: usize,
    pub composable_pairs: usize,
    pub triples_checked: usize,
    pub violations: Vec<LawViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LawViolation {
    IdentityEndpoints { object: String, identity: String },
    MissingComposite { g: String, f: String },
    SpuriousComposite { g: String, f: String },
    CompositeEndpoints { g: String, f: String, composite: String },
    LeftIdentity { f: String, got: String },
    RightIdentity { f: String, got: String },
    Associativity { h: String, g: String, f: String, left: String, right: String },
}

pub const SIMPLEX_LEVEL_CAP: usize = 4;
pub const CUBE_DIMENSION_CAP: usize = 3;

/// Truncated simplex shapes: objects `[0]..[n]`, morphisms all monotone
/// maps, written by their value strings (`"[1]->[2]:02"` sends 0 to 0
/// and 1 to 2).
pub fn preset_simplex(n: usize) -> Result<IndexCategory> {
    if n > SIMPLEX_LEVEL_CAP {
        return Err(Error::contract(format!(
            "simplex truncation {n} exceeds cap {SIMPLEX_LEVEL_CAP}"
        )));
    }
    let objects: Vec<String> = (0..=n).map(|a| format!("[{a}]")).collect();
    let mut morphisms = Vec::new();
    let mut tuples: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            for t in monotone_tuples(a + 1, b) {
                let digits: String = t.iter().map(|v| v.to_string()).collect();
                morphisms.push(Morphism {
                    id: format!("[{a}]->[{b}]:{digits}"),
                    src: a,
                    tgt: b,
                });
                tuples.push((a, b, t));
            }
        }
    }
    let lookup: BTreeMap<(usize, usize, Vec<usize>), usize> =
        tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let identity: Vec<usize> =
        (0..=n).map(|a| lookup[&(a, a, (0..=a).collect::<Vec<_>>())]).collect();
    let mut composites = Vec::new();
    for (g, (b2, c, gt)) in tuples.iter().enumerate() {
        for (f, (a, b, ft)) in tuples.iter().enumerate() {
            if b != b2 {
                continue;
            }
            let comp: Vec<usize> = ft.iter().map(|&v| gt[v]).collect();
            composites.push((g, f, lookup[&(*a, *c, comp)]));
        }
    }
    IndexCategory::build(format!("simplex({n})"), objects, morphisms, identity, &composites)
}

/// Values of a simplex preset morphism, parsed back from its id.
pub fn simplex_values(m: &Morphism) -> Option<Vec<usize>> {
    let (_, digits) = m.id.split_once(':')?;
    digits.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeEntry {
    Zero,
    One,
    Var(usize),
}

/// Cube shapes with diagonals: objects `[0]..[n]`, a morphism
/// `[m]->[k]` assigns each of the k target coordinates a source
/// coordinate `x1..xm` or a constant, e.g. `"[2]->[3]:(x1,0,x1)"`.
pub fn preset_cube(n: usize) -> Result<IndexCategory> {
    if n > CUBE_DIMENSION_CAP {
        return Err(Error::contract(format!(
            "cube dimension {n} exceeds cap {CUBE_DIMENSION_CAP}"
        )));
    }
    // Entries encoded as 0, 1, then 2+i for the variable x(i+1).
    let objects: Vec<String> = (0..=n).map(|a| format!("[{a}]")).collect();
    let mut morphisms = Vec::new();
    let mut words: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for m in 0..=n {
        for k in 0..=n {
            for w in all_words(k, m + 2) {
                morphisms.push(Morphism {
                    id: format!("[{m}]->[{k}]:({})", render_word(&w)),
                    src: m,
                    tgt: k,
                });
                words.push((m, k, w));
            }
        }
    }
    let lookup: BTreeMap<(usize, usize, Vec<usize>), usize> =
        words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let identity: Vec<usize> =
        (0..=n).map(|m| lookup[&(m, m, (0..m).map(|i| i + 2).collect::<Vec<_>>())]).collect();
    let mut composites = Vec::new();
    for (g, (k2, l, gw)) in words.iter().enumerate() {
        for (f, (m, k, fw)) in words.iter().enumerate() {
            if k != k2 {
                continue;
            }
            let comp: Vec<usize> =
                gw.iter().map(|&e| if e < 2 { e } else { fw[e - 2] }).collect();
            composites.push((g, f, lookup[&(*m, *l, comp)]));
        }
    }
    IndexCategory::build(format!("cube({n})"), objects, morphisms, identity, &composites)
}

fn render_word(w: &[usize]) -> String {
    w.iter()
        .map(|&e| match e {
            0 => "0".to_string(),
            1 => "1".to_string(),
            v => format!("x{}", v - 1),
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Entries of a cube preset morphism, parsed back from its id.
pub fn cube_entries(m: &Morphism) -> Option<Vec<CubeEntry>> {
    let (_, word) = m.id.split_once(":(")?;
    let word = word.strip_suffix(')')?;
    if word.is_empty() {
        return Some(Vec::new());
    }
    word.split(',')
        .map(|tok| match tok {
            "0" => Some(CubeEntry::Zero),
            "1" => Some(CubeEntry::One),
            _ => tok.strip_prefix('x').and_then(|i| i.parse().ok()).map(CubeEntry::Var),
        })
        .collect()
}

/// Finite poset as a category: one morphism `x<=y` per related pair.
/// Reflexive pairs are implied; antisymmetry and transitivity of the
/// supplied relation are validated.
pub fn preset_poset(
    name: impl Into<String>,
    elements: &[&str],
    leq: &[(&str, &str)],
) -> Result<IndexCategory> {
    let name = name.into();
    let index: BTreeMap<&str, usize> =
        elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    if index.len() != elements.len() {
        return Err(Error::contract("duplicate poset elements"));
    }
    let k = elements.len();
    let mut rel = vec![false; k * k];
    for i in 0..k {
        rel[i * k + i] = true;
    }
    for &(x, y) in leq {
        let (Some(&i), Some(&j)) = (index.get(x), index.get(y)) else {
            return Err(Error::contract(format!("order pair ({x:?}, {y:?}) names unknown elements")));
        };
        rel[i * k + j] = true;
    }
    for i in 0..k {
        for j in 0..k {
            if i != j && rel[i * k + j] && rel[j * k + i] {
                return Err(Error::contract(format!(
                    "antisymmetry fails: {} <= {} and {} <= {}",
                    elements[i], elements[j], elements[j], elements[i]
                )));
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                if rel[i * k + j] && rel[j * k + l] && !rel[i * k + l] {
                    return Err(Error::contract(format!(
                        "transitivity fails: {} <= {} <= {} but ({} <= {}) is missing",
                        elements[i], elements[j], elements[l], elements[i], elements[l]
                    )));
                }
            }
        }
    }
    let objects: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut pair_index = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            if rel[i * k + j] {
                pair_index.insert((i, j), morphisms.len());
                morphisms.push(Morphism {
                    id: format!("{}<={}", elements[i], elements[j]),
                    src: i,
                    tgt: j,
                });
            }
        }
    }
    let identity: Vec<usize> = (0..k).map(|i| pair_index[&(i, i)]).collect();
    let mut composites = Vec::new();
    for (&(i, j), &f) in &pair_index {
        for (&(j2, l), &g) in &pair_index {
            if j == j2 {
                composites.push((g, f, pair_index[&(i, l)]));
            }
        }
    }
    IndexCategory::build(name, objects, morphisms, identity, &composites)
}

/// Weakly increasing tuples of the given length with values `0..=max`,
/// in lexicographic order.
fn monotone_tuples(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, len: usize, max: usize, lo: usize) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            rec(out, cur, len, max, v);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, len, max, 0);
    out
}

/// All tuples of the given length over an alphabet of the given size,
/// in lexicographic order.
fn all_words(len: usize, alphabet: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |e| {
                    let mut w = w.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn simplex_hom_counts_match_binomials() {
        for n in 0..=3 {
            let cat = preset_simplex(n).unwrap();
            for a in 0..=n {
                for b in 0..=n {
                    assert_eq!(
                        cat.hom(a, b).len(),
                        binom(a + b + 1, a + 1),
                        "hom([{a}],[{b}]) in simplex({n})"
                    );
                }
            }
        }
    }

    #[test]
    fn simplex_one_has_seven_morphisms() {
        let cat = preset_simplex(1).unwrap();
        assert_eq!(cat.object_count(), 2);
        assert_eq!(cat.morphism_count(), 7);
    }

    #[test]
    fn cube_hom_counts_match_powers() {
        for n in 0..=3 {
            let cat = preset_cube(n).unwrap();
            for m in 0..=n {
                for k in 0..=n {
                    assert_eq!(
                        cat.hom(m, k).len(),
                        (m + 2).pow(k as u32),
                        "hom([{m}],[{k}]) in cube({n})"
                    );
                }
            }
        }
    }

    #[test]
    fn presets_validate() {
        for cat in [
            preset_simplex(0).unwrap(),
            preset_simplex(1).unwrap(),
            preset_simplex(2).unwrap(),
            preset_simplex(3).unwrap(),
            preset_cube(1).unwrap(),
            preset_cube(2).unwrap(),
            diamond(),
        ] {
            let report = cat.validate();
            assert!(report.is_valid(), "{}: {:?}", cat.name(), report.violations);
        }
    }

    #[test]
    fn terminal_category_validates() {
        let cat = IndexCategory::build(
            "terminal",
            vec!["*".into()],
            vec![Morphism { id: "id".into(), src: 0, tgt: 0 }],
            vec![0],
            &[(0, 0, 0)],
        )
        .unwrap();
        assert!(cat.validate().is_valid());
    }

    #[test]
    fn simplex_composition_spot_checks() {
        let cat = preset_simplex(1).unwrap();
        let sigma = cat.morphism_index("[1]->[0]:00").unwrap();
        let delta0 = cat.morphism_index("[0]->[1]:0").unwrap();
        let got = cat.composite(delta0, sigma).unwrap();
        assert_eq!(cat.morphism(got).id, "[1]->[1]:00");
        let id1 = cat.identity_of(1);
        assert_eq!(cat.morphism(id1).id, "[1]->[1]:01");
        assert_eq!(cat.composite(sigma, delta0), Some(cat.identity_of(0)));
    }

    #[test]
    fn cube_composition_substitutes() {
        let cat = preset_cube(2).unwrap();
        let diag = cat.morphism_index("[1]->[2]:(x1,x1)").unwrap();
        let pr1 = cat.morphism_index("[2]->[1]:(x1)").unwrap();
        let got = cat.composite(pr1, diag).unwrap();
        assert_eq!(cat.morphism(got).id, "[1]->[1]:(x1)");
        let end0 = cat.morphism_index("[0]->[1]:(0)").unwrap();
        let got = cat.composite(diag, end0).unwrap();
        assert_eq!(cat.morphism(got).id, "[0]->[2]:(0,0)");
    }

    /// The broken table: a three-element monoid with one composite
    /// redirected, which shows up as an associativity failure on a
    /// chain of three morphisms.
    #[test]
    fn broken_associativity_is_reported() {
        let m = |id: &str| Morphism { id: id.into(), src: 0, tgt: 0 };
        let ms = vec![m("e"), m("r"), m("rr")];
        // Z/3 rotation table, except r∘r is corrupted to e.
        let composites = [
            (0, 0, 0),
            (0, 1, 1),
            (0, 2, 2),
            (1, 0, 1),
            (2, 0, 2),
            (1, 1, 0), // should be rr
            (1, 2, 0),
            (2, 1, 0),
            (2, 2, 1),
        ];
        let cat =
            IndexCategory::build("broken", vec!["*".into()], ms, vec![0], &composites).unwrap();
        let report = cat.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, LawViolation::Associativity { .. })));
    }

    #[test]
    fn missing_composite_is_reported() {
        let cat = IndexCategory::build(
            "gap",
            vec!["a".into(), "b".into()],
            vec![
                Morphism { id: "ida".into(), src: 0, tgt: 0 },
                Morphism { id: "idb".into(), src: 1, tgt: 1 },
                Morphism { id: "f".into(), src: 0, tgt: 1 },
            ],
            vec![0, 1],
            &[(0, 0, 0), (1, 1, 1), (2, 0, 2)], // (idb, f) missing
        )
        .unwrap();
        let report = cat.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, LawViolation::MissingComposite { g, f } if g == "idb" && f == "f")));
    }

    fn diamond() -> IndexCategory {
        preset_poset(
            "diamond",
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top"), ("bot", "top")],
        )
        .unwrap()
    }

    #[test]
    fn diamond_poset_has_nine_morphisms() {
        assert_eq!(diamond().morphism_count(), 9);
    }

    #[test]
    fn poset_axiom_violations_are_rejected() {
        assert!(preset_poset("bad", &["x", "y"], &[("x", "y"), ("y", "x")]).is_err());
        assert!(preset_poset("bad", &["x", "y", "z"], &[("x", "y"), ("y", "z")]).is_err());
    }

    #[test]
    fn category_data_round_trip() {
        let cat = preset_simplex(1).unwrap();
        let data = cat.to_data();
        let back = IndexCategory::from_data(&data).unwrap();
        assert_eq!(cat, back);
    }

    #[test]
    fn id_parsers_recover_descriptions() {
        let cat = preset_simplex(2).unwrap();
        let m = cat.morphism_index("[1]->[2]:02").unwrap();
        assert_eq!(simplex_values(cat.morphism(m)), Some(vec![0, 2]));
        let cat = preset_cube(2).unwrap();
        let m = cat.morphism_index("[2]->[2]:(x2,0)").unwrap();
        assert_eq!(
            cube_entries(cat.morphism(m)),
            Some(vec![CubeEntry::Var(2), CubeEntry::Zero])
        );
        let m = cat.morphism_index("[2]->[0]:()").unwrap();
        assert_eq!(cube_entries(cat.morphism(m)), Some(vec![]));
    }
}
