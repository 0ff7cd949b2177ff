//! Seeded random generation of presheaves and maps.
//!
//! Everything produced here comes from a closed toolbox of universal
//! constructions over representables: coproducts, products, quotients
//! by gluing two cells, and action-closed subobjects. Functoriality
//! and naturality therefore hold by construction; the random choices
//! only decide which construction to apply. All randomness flows
//! through a caller-provided ChaCha stream, so a seed fully
//! determines the output.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::index_cat::IndexCategory;
use crate::lifting::LiftingProblem;
use crate::limits::{coequalizer, initial_map, product, pushout};
use crate::presheaf::{element_map, subpresheaf, yoneda, Presheaf, PresheafMap};
use crate::search::{enumerate_maps, enumerate_maps_over};
use crate::Budget;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn total_size(p: &Presheaf) -> usize {
    p.levels().iter().sum()
}

/// Draws a presheaf whose element count stays at or below `max_total`.
pub fn random_presheaf(
    base: &Arc<IndexCategory>,
    rng: &mut ChaCha8Rng,
    max_total: usize,
) -> Result<Presheaf> {
    let mut p = build(base, rng, max_total, 2)?;
    let mut attempts = 0;
    while total_size(&p) > max_total && attempts < 8 {
        p = random_subobject(&p, rng)?.0;
        attempts += 1;
    }
    if total_size(&p) > max_total {
        p = smallest_representable(base);
    }
    Ok(p)
}

fn smallest_representable(base: &Arc<IndexCategory>) -> Presheaf {
    let best = (0..base.object_count())
        .min_by_key(|&c| total_size(&yoneda(base, c)))
        .unwrap_or(0);
    yoneda(base, best)
}

fn build(
    base: &Arc<IndexCategory>,
    rng: &mut ChaCha8Rng,
    max_total: usize,
    depth: usize,
) -> Result<Presheaf> {
    let representable = |rng: &mut ChaCha8Rng| {
        let c = rng.random_range(0..base.object_count());
        yoneda(base, c)
    };
    if depth == 0 {
        return Ok(representable(rng));
    }
    match rng.random_range(0..10u32) {
        0..=2 => Ok(representable(rng)),
        3 | 4 => {
            let a = build(base, rng, max_total, depth - 1)?;
            let b = build(base, rng, max_total, depth - 1)?;
            Ok(pushout(&initial_map(&a), &initial_map(&b))?.apex().clone())
        }
        5 | 6 => {
            let a = build(base, rng, max_total, depth - 1)?;
            let b = build(base, rng, max_total, depth - 1)?;
            let prod = product(&a, &b)?.apex().clone();
            if total_size(&prod) > max_total {
                Ok(random_subobject(&prod, rng)?.0)
            } else {
                Ok(prod)
            }
        }
        7 | 8 => Ok(random_subobject(&build(base, rng, max_total, depth - 1)?, rng)?.0),
        _ => {
            let p = build(base, rng, max_total, depth - 1)?;
            quotient_two_cells(&p, rng)
        }
    }
}

/// Glues two randomly chosen cells of the same level, when the
/// presheaf has a level with at least two; otherwise returns the
/// input unchanged.
fn quotient_two_cells(p: &Presheaf, rng: &mut ChaCha8Rng) -> Result<Presheaf> {
    let base = p.base().clone();
    let candidates: Vec<usize> = (0..base.object_count()).filter(|&o| p.level(o) >= 2).collect();
    if candidates.is_empty() {
        return Ok(p.clone());
    }
    let c = candidates[rng.random_range(0..candidates.len())];
    let x = rng.random_range(0..p.level(c));
    let mut y = rng.random_range(0..p.level(c));
    if y == x {
        y = (y + 1) % p.level(c);
    }
    let f = element_map(p, c, x)?;
    let g = element_map(p, c, y)?;
    Ok(coequalizer(&f, &g)?.apex().clone())
}

/// Draws an action-closed subobject: every element is kept with
/// probability one half, then the selection is closed under all
/// structure maps. Returns the subobject and its inclusion.
pub fn random_subobject(
    ambient: &Presheaf,
    rng: &mut ChaCha8Rng,
) -> Result<(Presheaf, PresheafMap)> {
    let base = ambient.base().clone();
    let mut keep: Vec<Vec<bool>> = (0..base.object_count())
        .map(|o| (0..ambient.level(o)).map(|_| rng.random_bool(0.5)).collect())
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for m in 0..base.morphism_count() {
            let mor = base.morphism(m);
            for e in 0..ambient.level(mor.tgt) {
                if keep[mor.tgt][e] {
                    let moved = ambient.act(m, e);
                    if !keep[mor.src][moved] {
                        keep[mor.src][moved] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    let members: Vec<Vec<usize>> = keep
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &k)| k).map(|(i, _)| i).collect())
        .collect();
    subpresheaf(ambient, members)
}

/// Draws a map uniformly among all natural maps from `src` to `tgt`,
/// or `None` when there are none.
pub fn random_map(
    src: &Presheaf,
    tgt: &Presheaf,
    rng: &mut ChaCha8Rng,
    budget: &Budget,
) -> Result<Option<PresheafMap>> {
    let all = enumerate_maps(src, tgt, budget)?;
    if all.is_empty() {
        return Ok(None);
    }
    let pick = rng.random_range(0..all.len());
    Ok(Some(all[pick].clone()))
}

/// Draws a lifting problem with the given vertical maps by choosing a
/// random bottom and then a random top among those closing the
/// square. Returns `None` when no commuting square exists within a
/// few bottom attempts.
pub fn random_problem(
    left: &PresheafMap,
    right: &PresheafMap,
    rng: &mut ChaCha8Rng,
    budget: &Budget,
) -> Result<Option<LiftingProblem>> {
    let bottoms = enumerate_maps(left.target(), right.target(), budget)?;
    if bottoms.is_empty() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..bottoms.len()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    for &bi in order.iter().take(8) {
        let bottom = &bottoms[bi];
        let corner = bottom.compose(left)?;
        let tops = enumerate_maps_over(&corner, right, budget)?;
        if tops.is_empty() {
            continue;
        }
        let top = tops[rng.random_range(0..tops.len())].clone();
        return Ok(Some(LiftingProblem::new(
            left.clone(),
            right.clone(),
            top,
            bottom.clone(),
        )?));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_cat::{preset_cube, preset_simplex};
    use crate::limits::terminal_map;

    #[test]
    fn equal_seeds_reproduce_equal_draws() {
        let base = Arc::new(preset_simplex(2).unwrap());
        let mut a = seeded(7);
        let mut b = seeded(7);
        for _ in 0..10 {
            let pa = random_presheaf(&base, &mut a, 30).unwrap();
            let pb = random_presheaf(&base, &mut b, 30).unwrap();
            assert_eq!(pa, pb);
        }
    }

    #[test]
    fn drawn_presheaves_respect_the_size_cap() {
        let base = Arc::new(preset_cube(1).unwrap());
        let mut rng = seeded(11);
        for _ in 0..40 {
            let p = random_presheaf(&base, &mut rng, 25).unwrap();
            assert!(total_size(&p) <= 25, "{} elements", total_size(&p));
        }
    }

    #[test]
    fn subobjects_include_monically_and_stay_closed() {
        let base = Arc::new(preset_simplex(2).unwrap());
        let mut rng = seeded(3);
        let ambient = yoneda(&base, 2);
        for _ in 0..20 {
            let (sub, include) = random_subobject(&ambient, &mut rng).unwrap();
            assert!(include.is_mono());
            assert_eq!(include.source(), &sub);
            assert_eq!(include.target(), &ambient);
        }
    }

    #[test]
    fn drawn_maps_land_where_requested() {
        let base = Arc::new(preset_simplex(1).unwrap());
        let mut rng = seeded(5);
        let budget = Budget::default();
        let interval = yoneda(&base, 1);
        for _ in 0..10 {
            let x = random_presheaf(&base, &mut rng, 12).unwrap();
            let m = random_map(&x, &interval, &mut rng, &budget).unwrap();
            if let Some(m) = m {
                assert_eq!(m.source(), &x);
                assert_eq!(m.target(), &interval);
            }
        }
    }

    #[test]
    fn drawn_problems_commute() {
        let base = Arc::new(preset_simplex(1).unwrap());
        let mut rng = seeded(9);
        let budget = Budget::default();
        let mut produced = 0;
        for _ in 0..10 {
            let x = random_presheaf(&base, &mut rng, 10).unwrap();
            let (_, include) = random_subobject(&x, &mut rng).unwrap();
            let right = terminal_map(&x);
            if let Some(problem) = random_problem(&include, &right, &mut rng, &budget).unwrap() {
                produced += 1;
                let lhs = problem.right().compose(problem.top()).unwrap();
                let rhs = problem.bottom().compose(problem.left()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(produced > 0);
    }
}
