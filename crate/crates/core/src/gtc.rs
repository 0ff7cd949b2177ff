//! Graphs, open-cylinder inclusions, and boundary inclusions.
//!
//! Given a cofibration c: C -> Z and a map i: Z -> I into the context
//! interval, the cylinder Z x I contains an open piece: the image of Z
//! along the graph of i together with the full cylinder over C. The
//! inclusion of that piece, as a cogap out of a pushout, is the
//! generating trivial cofibration determined by (c, i). Construction
//! eagerly verifies that the defining square is a pullback and that
//! the crossed map c x 1 is again a cofibration, so every downstream
//! consumer starts from a checked object.

use crate::error::{Error, Result};
use crate::index_cat::{cube_entries, IndexCategory};
use crate::limits::{
    check_pullback_square, initial_map, pairing, product, product_map, pushout, terminal_map,
    ConeResult, Square,
};
use crate::presheaf::{
    subpresheaf, yoneda, yoneda_map, CofibrationClass, Presheaf, PresheafContext, PresheafMap,
};
use std::sync::Arc;

/// The graph of i: X -> I, pairing the identity with i. Always a
/// monomorphism: the first projection retracts it.
pub fn graph_map(i: &PresheafMap) -> Result<PresheafMap> {
    let prod = product(i.source(), i.target())?;
    pairing(&prod, &PresheafMap::identity(i.source()), i)
}

/// A generating trivial cofibration presented by its defining data:
/// the cofibration c: C -> Z, the structure map i: Z -> I, the graph
/// square, the pushout domain D = Z u_C (C x I), and the cogap
/// u: D -> Z x I.
#[derive(Debug, Clone)]
pub struct GtcSpec {
    c: PresheafMap,
    i: PresheafMap,
    cofibrations: CofibrationClass,
    square: Square,
    cylinder: ConeResult,
    source_cylinder: ConeResult,
    cone: ConeResult,
    u: PresheafMap,
    transcript: Vec<String>,
}

impl GtcSpec {
    /// The underlying cofibration C -> Z.
    pub fn c(&self) -> &PresheafMap {
        &self.c
    }

    /// The structure map Z -> I.
    pub fn i(&self) -> &PresheafMap {
        &self.i
    }

    pub fn interval(&self) -> &Presheaf {
        self.i.target()
    }

    /// The cofibration class the construction was checked against.
    pub fn cofibrations(&self) -> &CofibrationClass {
        &self.cofibrations
    }

    /// Rebuilds the ambient context this map was constructed in.
    pub fn context(&self) -> PresheafContext {
        PresheafContext::new(
            self.c.base().clone(),
            self.interval().clone(),
            self.cofibrations,
        )
        .expect("interval and base were checked at construction")
    }

    /// The defining square: graph of i∘c on top, c on the left,
    /// c x 1 on the right, graph of i on the bottom.
    pub fn square(&self) -> &Square {
        &self.square
    }

    /// The product cone Z x I with its projections.
    pub fn cylinder(&self) -> &ConeResult {
        &self.cylinder
    }

    /// The product cone C x I with its projections.
    pub fn source_cylinder(&self) -> &ConeResult {
        &self.source_cylinder
    }

    /// The pushout cone for D, with leg `left` from Z and leg `right`
    /// from C x I.
    pub fn cone(&self) -> &ConeResult {
        &self.cone
    }

    /// The domain D = Z u_C (C x I).
    pub fn domain(&self) -> &Presheaf {
        self.cone.apex()
    }

    /// The codomain Z x I.
    pub fn codomain(&self) -> &Presheaf {
        self.cylinder.apex()
    }

    /// The generating trivial cofibration itself.
    pub fn u(&self) -> &PresheafMap {
        &self.u
    }

    /// The graph of i, eq. the bottom of the defining square.
    pub fn graph(&self) -> &PresheafMap {
        &self.square.bottom
    }

    /// The crossed cofibration c x 1, eq. the right of the square.
    pub fn crossed(&self) -> &PresheafMap {
        &self.square.right
    }

    /// Checks performed at construction, in order.
    pub fn transcript(&self) -> &[String] {
        &self.transcript
    }
}

/// Builds the generating trivial cofibration of (c, i) and verifies
/// its invariants: the square commutes and is a pullback, the crossed
/// map stays a cofibration, and the cogap restricts to the graph and
/// the crossed map on the pushout injections.
pub fn build_gtc(ctx: &PresheafContext, c: &PresheafMap, i: &PresheafMap) -> Result<GtcSpec> {
    if c.base() != ctx.base() || i.base() != ctx.base() {
        return Err(Error::contract("gtc data lives over a different base"));
    }
    if i.source() != c.target() {
        return Err(Error::contract("structure map must start at the cofibration target"));
    }
    if i.target() != ctx.interval() {
        return Err(Error::contract("structure map must land in the context interval"));
    }
    if !ctx.cofibrations().accepts(c) {
        return Err(Error::contract(format!(
            "cofibration class ({}) rejects the given map",
            ctx.cofibrations().describe()
        )));
    }
    let mut transcript = vec![format!("cofibration accepted ({})", ctx.cofibrations().describe())];
    let z = c.target();
    let cylinder = product(z, ctx.interval())?;
    let source_cylinder = product(c.source(), ctx.interval())?;
    let graph = pairing(&cylinder, &PresheafMap::identity(z), i)?;
    let ic = i.compose(c)?;
    let top = pairing(&source_cylinder, &PresheafMap::identity(c.source()), &ic)?;
    let crossed = product_map(
        &source_cylinder,
        &cylinder,
        c,
        &PresheafMap::identity(ctx.interval()),
    )?;
    let square = Square::new(top.clone(), c.clone(), crossed.clone(), graph.clone())?;
    if !square.commutes()? {
        return Err(Error::check("gtc square", "defining square does not commute"));
    }
    transcript.push("defining square commutes".into());
    if !check_pullback_square(&square)? {
        return Err(Error::check("gtc square", "defining square is not a pullback"));
    }
    transcript.push("defining square is a pullback".into());
    if !ctx.cofibrations().accepts(&crossed) {
        return Err(Error::check(
            "crossed cofibration",
            "cofibration class rejects c x 1",
        ));
    }
    transcript.push("crossed map accepted as a cofibration".into());
    let cone = pushout(c, &top)?;
    transcript.push(format!("pushout domain levels {:?}", cone.apex().levels()));
    let u = cone.cogap(cylinder.apex(), &[&graph, &crossed])?;
    if &u.compose(cone.leg("left"))? != &graph || &u.compose(cone.leg("right"))? != &crossed {
        return Err(Error::check(
            "cogap",
            "cogap does not restrict to the graph and the crossed map",
        ));
    }
    transcript.push("cogap restricts to the graph and the crossed map".into());
    Ok(GtcSpec {
        c: c.clone(),
        i: i.clone(),
        cofibrations: *ctx.cofibrations(),
        square,
        cylinder,
        source_cylinder,
        cone,
        u,
        transcript,
    })
}

/// The biased pushout product of a cofibration with a point of the
/// interval: the generating trivial cofibration whose structure map is
/// constant at that point.
pub fn biased_gtc(
    ctx: &PresheafContext,
    c: &PresheafMap,
    point: &PresheafMap,
) -> Result<PresheafMap> {
    if point.source().levels().iter().any(|&l| l != 1) {
        return Err(Error::contract("a point must start at the terminal presheaf"));
    }
    if point.target() != ctx.interval() {
        return Err(Error::contract("a point must land in the context interval"));
    }
    let constant = point.compose(&terminal_map(c.target()))?;
    Ok(build_gtc(ctx, c, &constant)?.u().clone())
}

fn level_object(base: &Arc<IndexCategory>, n: usize) -> Result<usize> {
    base.object_index(&format!("[{n}]")).ok_or_else(|| {
        Error::contract(format!("base {} has no object [{n}]; truncation too small", base.name()))
    })
}

/// Boundary of the n-simplex representable: the subpresheaf of cells
/// that are non-surjective as monotone maps, detected by the absence
/// of a section. Returns the inclusion.
pub fn boundary_simplex(base: &Arc<IndexCategory>, n: usize) -> Result<PresheafMap> {
    let obj = level_object(base, n)?;
    let ambient = yoneda(base, obj);
    let surjective = |f: usize| {
        let tgt = base.morphism(f).tgt;
        base.hom(tgt, base.morphism(f).src)
            .iter()
            .any(|&s| base.composite(f, s) == Some(base.identity_of(tgt)))
    };
    let members: Vec<Vec<usize>> = (0..base.object_count())
        .map(|d| {
            base.hom(d, obj)
                .iter()
                .enumerate()
                .filter(|&(_, &f)| !surjective(f))
                .map(|(e, _)| e)
                .collect()
        })
        .collect();
    let (_, include) = subpresheaf(&ambient, members)?;
    Ok(include)
}

/// Boundary of the k-cube representable: cells with some constant
/// coordinate. Returns the inclusion.
pub fn boundary_cube(base: &Arc<IndexCategory>, k: usize) -> Result<PresheafMap> {
    let obj = level_object(base, k)?;
    let ambient = yoneda(base, obj);
    let members: Vec<Vec<usize>> = (0..base.object_count())
        .map(|d| {
            base.hom(d, obj)
                .iter()
                .enumerate()
                .filter(|&(_, &f)| {
                    cube_entries(base.morphism(f))
                        .map(|entries| {
                            entries.iter().any(|e| !matches!(e, crate::index_cat::CubeEntry::Var(_)))
                        })
                        .unwrap_or(false)
                })
                .map(|(e, _)| e)
                .collect()
        })
        .collect();
    let (_, include) = subpresheaf(&ambient, members)?;
    Ok(include)
}

/// The open-prism inclusion over a truncated simplex base: boundary
/// of the n-simplex crossed with the interval, glued to the simplex
/// at height eps. Needs the base truncated at n+1 or above.
pub fn prism_gtc(base: &Arc<IndexCategory>, n: usize, eps: usize) -> Result<GtcSpec> {
    if eps > 1 {
        return Err(Error::contract("prism endpoint must be 0 or 1"));
    }
    level_object(base, n + 1)?;
    let simplex = level_object(base, n)?;
    let interval = yoneda(base, level_object(base, 1)?);
    let ctx = PresheafContext::new(
        base.clone(),
        interval,
        crate::presheaf::CofibrationClass::Monomorphisms,
    )?;
    let c = if n == 0 {
        initial_map(&yoneda(base, simplex))
    } else {
        boundary_simplex(base, n)?
    };
    let constant_id = format!("[{n}]->[1]:{}", eps.to_string().repeat(n + 1));
    let constant = base
        .morphism_index(&constant_id)
        .ok_or_else(|| Error::contract(format!("base has no morphism {constant_id}")))?;
    build_gtc(&ctx, &c, &yoneda_map(base, constant))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_cat::{preset_cube, preset_simplex};
    use crate::presheaf::CofibrationClass;

    fn simplex_ctx(n: usize) -> PresheafContext {
        let base = Arc::new(preset_simplex(n).unwrap());
        let interval = yoneda(&base, base.object_index("[1]").unwrap());
        PresheafContext::new(base, interval, CofibrationClass::Monomorphisms).unwrap()
    }

    #[test]
    fn graph_is_a_retractable_mono() {
        let ctx = simplex_ctx(1);
        let i = PresheafMap::identity(ctx.interval());
        let g = graph_map(&i).unwrap();
        assert!(g.is_mono());
        assert_eq!(g.target().levels(), &[4, 9]);
        let prod = product(ctx.interval(), ctx.interval()).unwrap();
        assert_eq!(prod.leg("pr1").compose(&g).unwrap(), PresheafMap::identity(ctx.interval()));
        assert_eq!(prod.leg("pr2").compose(&g).unwrap(), i);
    }

    #[test]
    fn iso_cofibration_gives_iso_gtc() {
        let ctx = simplex_ctx(1);
        let i = PresheafMap::identity(ctx.interval());
        let spec = build_gtc(&ctx, &PresheafMap::identity(ctx.interval()), &i).unwrap();
        assert!(spec.u().is_iso());
    }

    #[test]
    fn empty_source_reduces_to_the_graph() {
        let ctx = simplex_ctx(1);
        let i = PresheafMap::identity(ctx.interval());
        let spec = build_gtc(&ctx, &initial_map(ctx.interval()), &i).unwrap();
        let from_z = spec.cone().leg("left");
        assert!(from_z.is_iso());
        assert_eq!(spec.u().compose(from_z).unwrap(), graph_map(&i).unwrap());
    }

    #[test]
    fn interval_boundary_gtc_has_the_expected_size() {
        let ctx = simplex_ctx(1);
        let base = ctx.base().clone();
        let c = boundary_simplex(&base, 1).unwrap();
        assert_eq!(c.source().levels(), &[2, 2]);
        let v0 = yoneda_map(&base, base.morphism_index("[1]->[1]:00").unwrap());
        let spec = build_gtc(&ctx, &c, &v0).unwrap();
        assert_eq!(spec.domain().levels(), &[4, 7]);
        assert_eq!(spec.codomain().levels(), &[4, 9]);
        assert!(spec.u().is_mono());
        assert!(spec.square().commutes().unwrap());
    }

    #[test]
    fn biased_product_agrees_with_the_constant_construction() {
        let ctx = simplex_ctx(1);
        let base = ctx.base().clone();
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        // The representable point is the terminal presheaf here.
        let c = boundary_simplex(&base, 1).unwrap();
        let biased = biased_gtc(&ctx, &c, &v0).unwrap();
        let constant = v0.compose(&terminal_map(c.target())).unwrap();
        let direct = build_gtc(&ctx, &c, &constant).unwrap();
        assert_eq!(&biased, direct.u());
    }

    #[test]
    fn biased_product_of_the_empty_inclusion_is_the_point_itself() {
        let ctx = simplex_ctx(1);
        let base = ctx.base().clone();
        let v0 = yoneda_map(&base, base.morphism_index("[0]->[1]:0").unwrap());
        let point = yoneda(&base, 0);
        let u = biased_gtc(&ctx, &initial_map(&point), &v0).unwrap();
        assert_eq!(u, v0);
    }

    #[test]
    fn vertex_prisms_are_the_vertex_inclusions() {
        let base = Arc::new(preset_simplex(1).unwrap());
        for eps in 0..2 {
            let spec = prism_gtc(&base, 0, eps).unwrap();
            let vertex =
                yoneda_map(&base, base.morphism_index(&format!("[0]->[1]:{eps}")).unwrap());
            assert_eq!(spec.u(), &vertex);
        }
    }

    #[test]
    fn open_prism_sizes_over_the_two_truncation() {
        let base = Arc::new(preset_simplex(2).unwrap());
        let spec = prism_gtc(&base, 1, 0).unwrap();
        assert_eq!(spec.domain().levels(), &[4, 7, 10]);
        assert_eq!(spec.codomain().levels(), &[4, 9, 16]);
        let other = prism_gtc(&base, 1, 1).unwrap();
        assert_ne!(spec.u(), other.u());
        assert_eq!(spec.domain().levels(), other.domain().levels());
    }

    #[test]
    fn prism_needs_room_above() {
        let base = Arc::new(preset_simplex(1).unwrap());
        assert!(prism_gtc(&base, 1, 0).is_err());
    }

    #[test]
    fn cube_boundary_counts_constant_coordinate_cells() {
        let base = Arc::new(preset_cube(1).unwrap());
        let c = boundary_cube(&base, 1).unwrap();
        assert_eq!(c.source().levels(), &[2, 2]);
        assert!(c.is_mono());
        let base2 = Arc::new(preset_cube(2).unwrap());
        let c2 = boundary_cube(&base2, 2).unwrap();
        // Independent recount: entry words with a constant letter.
        let obj = base2.object_index("[2]").unwrap();
        for d in 0..base2.object_count() {
            let expected = base2
                .hom(d, obj)
                .iter()
                .filter(|&&f| {
                    cube_entries(base2.morphism(f))
                        .unwrap()
                        .iter()
                        .any(|e| !matches!(e, crate::index_cat::CubeEntry::Var(_)))
                })
                .count();
            assert_eq!(c2.source().level(d), expected);
        }
    }

    #[test]
    fn rejecting_cofibration_classes_reject() {
        let base = Arc::new(preset_simplex(1).unwrap());
        let interval = yoneda(&base, 1);
        let ctx =
            PresheafContext::new(base.clone(), interval.clone(), CofibrationClass::Custom(|m| m.is_iso()))
                .unwrap();
        let c = boundary_simplex(&base, 1).unwrap();
        let err = build_gtc(&ctx, &c, &PresheafMap::identity(&interval)).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }
}
