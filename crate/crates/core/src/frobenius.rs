//! Pulling generating trivial cofibrations back along fibrations, and
//! pushing fibrations forward along fibrations.
//!
//! The two halves fit together: `pullback_gtc_retract` certifies that
//! the pullback of a generating trivial cofibration along a fibration
//! is a retract of another generating trivial cofibration, and
//! `frobenius_witness` uses those certificates plus the pushforward
//! adjunction to solve lifting problems against a pushed-forward
//! fibration. Every construction verifies its own equations eagerly
//! and records what it checked in a transcript.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gtc::{biased_gtc, boundary_simplex, build_gtc, GtcSpec};
use crate::index_cat::preset_simplex;
use crate::lifting::{
    check_retract, lift_via_retract, rlp_certificate, solve_lift, FibrationWitness, GtcProblem,
    LiftStrategy, LiftingProblem, RetractData,
};
use crate::limits::{
    check_pullback_square, equalizer, initial_map, is_equalizer_fork, pairing, product,
    product_map, pullback, pushout, ConeKind, ConeResult, Square,
};
use crate::presheaf::{
    element_map, enumerate_maps, enumerate_maps_over, yoneda, yoneda_map, CofibrationClass,
    Presheaf, PresheafContext, PresheafMap,
};
use crate::Budget;

/// A generating trivial cofibration u: D -> Z x I pulled back along a
/// map p: X -> Z x I, organized as a cube: the defining square of u on
/// the bottom, its pullback along p on top, and four side faces. All
/// six faces are verified pullbacks. The upper span has a pushout
/// whose cogap is the pulled-back map, and a comparison isomorphism
/// identifies that pushout with the plain pullback of u along p.
#[derive(Debug, Clone)]
pub struct FrobeniusCube {
    gtc: GtcSpec,
    p: PresheafMap,
    z: PresheafMap,
    t: PresheafMap,
    over_z: ConeResult,
    over_source_cylinder: ConeResult,
    over_source: ConeResult,
    span_left: PresheafMap,
    span_right: PresheafMap,
    cone: ConeResult,
    pulled: PresheafMap,
    comparison: PresheafMap,
    transcript: Vec<String>,
}

impl FrobeniusCube {
    pub fn gtc(&self) -> &GtcSpec {
        &self.gtc
    }

    /// The map X -> Z x I the square was pulled back along.
    pub fn p(&self) -> &PresheafMap {
        &self.p
    }

    pub fn x(&self) -> &Presheaf {
        self.p.source()
    }

    /// First component of p.
    pub fn z(&self) -> &PresheafMap {
        &self.z
    }

    /// Second component of p.
    pub fn t(&self) -> &PresheafMap {
        &self.t
    }

    /// The pullback of X over Z (along the graph of the structure map).
    pub fn over_z(&self) -> &ConeResult {
        &self.over_z
    }

    /// The pullback of X over C x I (along the crossed map).
    pub fn over_source_cylinder(&self) -> &ConeResult {
        &self.over_source_cylinder
    }

    /// The pullback of X over C.
    pub fn over_source(&self) -> &ConeResult {
        &self.over_source
    }

    /// Upper-face edge into the fiber over Z.
    pub fn span_left(&self) -> &PresheafMap {
        &self.span_left
    }

    /// Upper-face edge into the fiber over C x I.
    pub fn span_right(&self) -> &PresheafMap {
        &self.span_right
    }

    /// The fiber inclusion over Z into X.
    pub fn a(&self) -> &PresheafMap {
        self.over_z.leg("right")
    }

    /// The fiber inclusion over C x I into X.
    pub fn b(&self) -> &PresheafMap {
        self.over_source_cylinder.leg("right")
    }

    /// The pushout of the upper span; its apex is the domain of the
    /// pulled-back map.
    pub fn cone(&self) -> &ConeResult {
        &self.cone
    }

    pub fn domain(&self) -> &Presheaf {
        self.cone.apex()
    }

    /// The pulled-back generating trivial cofibration, as the cogap of
    /// the upper face.
    pub fn pulled(&self) -> &PresheafMap {
        &self.pulled
    }

    /// Isomorphism from the upper pushout to the pullback of u along p.
    pub fn comparison(&self) -> &PresheafMap {
        &self.comparison
    }

    pub fn transcript(&self) -> &[String] {
        &self.transcript
    }
}

/// Pulls the defining square of a generating trivial cofibration back
/// along p and verifies the cube this produces face by face.
pub fn build_cube(gtc: &GtcSpec, p: &PresheafMap) -> Result<FrobeniusCube> {
    if p.target() != gtc.codomain() {
        return Err(Error::contract("p must land in the codomain of the generating trivial cofibration"));
    }
    let mut transcript = Vec::new();
    let z = gtc.cylinder().leg("pr1").compose(p)?;
    let t = gtc.cylinder().leg("pr2").compose(p)?;
    let c = gtc.c();
    let top = &gtc.square().top;
    let graph = gtc.graph();
    let crossed = gtc.crossed();

    let over_z = pullback(graph, p)?;
    let over_source_cylinder = pullback(crossed, p)?;
    let through = graph.compose(c)?;
    let over_source = pullback(&through, p)?;

    let q_z = over_z.leg("left").clone();
    let a = over_z.leg("right").clone();
    let q_ci = over_source_cylinder.leg("left").clone();
    let b = over_source_cylinder.leg("right").clone();
    let q_c = over_source.leg("left").clone();
    let x_c = over_source.leg("right").clone();

    let span_left = over_z.gap(over_source.apex(), &[&c.compose(&q_c)?, &x_c])?;
    let span_right = over_source_cylinder.gap(over_source.apex(), &[&top.compose(&q_c)?, &x_c])?;

    let faces = [
        ("bottom", gtc.square().clone()),
        ("top", Square::new(span_right.clone(), span_left.clone(), b.clone(), a.clone())?),
        ("left", Square::new(span_left.clone(), q_c.clone(), q_z.clone(), c.clone())?),
        ("back", Square::new(span_right.clone(), q_c.clone(), q_ci.clone(), top.clone())?),
        ("front", Square::new(a.clone(), q_z.clone(), p.clone(), graph.clone())?),
        ("right", Square::new(b.clone(), q_ci.clone(), p.clone(), crossed.clone())?),
    ];
    for (name, face) in &faces {
        if !check_pullback_square(face)? {
            return Err(Error::check("cube face", format!("the {name} face is not a pullback")));
        }
        transcript.push(format!("{name} face is a pullback"));
    }

    if !gtc.cofibrations().accepts(&b) {
        return Err(Error::check(
            "cube cofibration",
            "the pulled-back fiber inclusion over the source cylinder is not a cofibration",
        ));
    }
    transcript.push("fiber inclusion over the source cylinder is a cofibration".into());

    let cone = pushout(&span_left, &span_right)?;
    let pulled = cone.cogap(p.source(), &[&a, &b])?;
    transcript.push("pulled-back map assembled as the cogap of the upper face".into());

    let plain = pullback(gtc.u(), p)?;
    let from_z = plain.gap(over_z.apex(), &[&gtc.cone().leg("left").compose(&q_z)?, &a])?;
    let from_ci =
        plain.gap(over_source_cylinder.apex(), &[&gtc.cone().leg("right").compose(&q_ci)?, &b])?;
    let comparison = cone.cogap(plain.apex(), &[&from_z, &from_ci])?;
    if !comparison.is_iso() {
        return Err(Error::check(
            "cube comparison",
            "the upper pushout does not agree with the pullback of the cogap",
        ));
    }
    transcript.push("upper pushout is the pullback of the cogap, by comparison isomorphism".into());

    Ok(FrobeniusCube {
        gtc: gtc.clone(),
        p: p.clone(),
        z,
        t,
        over_z,
        over_source_cylinder,
        over_source,
        span_left,
        span_right,
        cone,
        pulled,
        comparison,
        transcript,
    })
}

/// Solves the canonical self-lifting problem of a fibration into a
/// cylinder: for p: X -> Z x I with components z and t, the square
/// with left leg the graph of t, right leg p, identity on top and
/// z x 1 on the bottom. The returned map H: X x I -> X satisfies
/// H after the graph of t = id, p after H = z x 1, and consequently
/// z after H = z pr1 and t after H = pr2. All four are asserted.
pub fn construct_h(
    cylinder: &ConeResult,
    cofibrations: CofibrationClass,
    p: &PresheafMap,
    witness: &FibrationWitness,
) -> Result<PresheafMap> {
    if witness.map() != p {
        return Err(Error::contract("the witness must wrap p"));
    }
    if cylinder.kind() != ConeKind::Product {
        return Err(Error::contract("the codomain decomposition must be a product cone"));
    }
    if p.target() != cylinder.apex() {
        return Err(Error::contract("p must land in the product apex"));
    }
    let x = p.source().clone();
    let interval = cylinder.leg("pr2").target().clone();
    let z = cylinder.leg("pr1").compose(p)?;
    let t = cylinder.leg("pr2").compose(p)?;

    let x_cyl = product(&x, &interval)?;
    let ident = PresheafMap::identity(&x);
    let graph_t = pairing(&x_cyl, &ident, &t)?;
    let z_crossed = product_map(&x_cyl, cylinder, &z, &PresheafMap::identity(&interval))?;
    let problem = LiftingProblem::new(graph_t.clone(), p.clone(), ident, z_crossed.clone())?;

    // The left leg is itself generating: the empty cofibration into X
    // with structure map t.
    let ctx = PresheafContext::new(x.base().clone(), interval.clone(), cofibrations)?;
    let spec = build_gtc(&ctx, &initial_map(&x), &t)?;
    let gp = GtcProblem::new(spec, problem)?;
    let h = witness.solve(&gp)?;

    if h.compose(&graph_t)? != PresheafMap::identity(&x) {
        return Err(Error::check("lift equations", "H does not retract the graph of t"));
    }
    if p.compose(&h)? != z_crossed {
        return Err(Error::check("lift equations", "H does not lie over z x 1"));
    }
    if z.compose(&h)? != z.compose(x_cyl.leg("pr1"))? {
        return Err(Error::check("lift equations", "z after H is not z after pr1"));
    }
    if t.compose(&h)? != *x_cyl.leg("pr2") {
        return Err(Error::check("lift equations", "t after H is not pr2"));
    }
    Ok(h)
}

/// A checked retract presentation of a pulled-back generating trivial
/// cofibration: the cube, the cylinder contraction H, the replacement
/// generating trivial cofibration v built from the pulled-back
/// cofibration b and the structure map i after z, the two
/// section/retraction rows the retract is glued from, and the retract
/// data itself.
#[derive(Debug, Clone)]
pub struct RetractCertificate {
    cube: FrobeniusCube,
    h: PresheafMap,
    v: GtcSpec,
    z_section: PresheafMap,
    z_retraction: PresheafMap,
    cylinder_section: PresheafMap,
    cylinder_retraction: PresheafMap,
    retract: RetractData,
    transcript: Vec<String>,
}

impl RetractCertificate {
    pub fn cube(&self) -> &FrobeniusCube {
        &self.cube
    }

    /// The cylinder contraction X x I -> X.
    pub fn h(&self) -> &PresheafMap {
        &self.h
    }

    /// The generating trivial cofibration the pulled-back map retracts
    /// onto.
    pub fn v(&self) -> &GtcSpec {
        &self.v
    }

    /// Section row over Z: the fiber inclusion a.
    pub fn z_section(&self) -> &PresheafMap {
        &self.z_section
    }

    /// Retraction X -> fiber over Z, induced by the equalizer property.
    pub fn z_retraction(&self) -> &PresheafMap {
        &self.z_retraction
    }

    /// Section row over the source cylinder: the graph of t after b.
    pub fn cylinder_section(&self) -> &PresheafMap {
        &self.cylinder_section
    }

    /// Retraction of the crossed fiber cylinder, induced by H.
    pub fn cylinder_retraction(&self) -> &PresheafMap {
        &self.cylinder_retraction
    }

    pub fn retract(&self) -> &RetractData {
        &self.retract
    }

    pub fn transcript(&self) -> &[String] {
        &self.transcript
    }
}

/// Certifies that the pullback of a generating trivial cofibration
/// along a fibration is a retract of a generating trivial cofibration.
/// The witness supplies the fibration p: X -> Z x I and solves the one
/// lifting problem the construction needs; everything else is limits,
/// colimits, and verified equations.
pub fn pullback_gtc_retract(
    gtc: &GtcSpec,
    witness: &FibrationWitness,
) -> Result<RetractCertificate> {
    let p = witness.map().clone();
    let cube = build_cube(gtc, &p)?;
    let h = construct_h(gtc.cylinder(), *gtc.cofibrations(), &p, witness)?;
    let mut transcript = cube.transcript().to_vec();
    transcript.push("cylinder contraction H solved and its four equations verified".into());

    let x = p.source().clone();
    let interval = gtc.interval().clone();
    let ident = PresheafMap::identity(&x);
    let x_cyl = product(&x, &interval)?;
    let t = cube.t().clone();
    let iz = gtc.i().compose(cube.z())?;
    let graph_t = pairing(&x_cyl, &ident, &t)?;
    let graph_iz = pairing(&x_cyl, &ident, &iz)?;
    let a = cube.a().clone();
    let b = cube.b().clone();

    // Replacement generating trivial cofibration.
    let ctx = gtc.context();
    let v = build_gtc(&ctx, &b, &iz)?;
    transcript.push("replacement map built from the pulled-back cofibration and i after z".into());

    // Row over Z. The fiber inclusion a equalizes iz and t, and the
    // retraction is the factorization of H after the graph of iz
    // through that equalizer.
    if !is_equalizer_fork(&a, &iz, &t)? {
        return Err(Error::check(
            "equalizer fork",
            "the fiber inclusion over Z does not equalize iz and t",
        ));
    }
    transcript.push("fiber inclusion over Z is the equalizer of iz and t".into());
    let eq = equalizer(&iz, &t)?;
    let fork_iso = eq.gap(cube.over_z().apex(), &[&a])?;
    let h_iz = h.compose(&graph_iz)?;
    let into_eq = eq.gap(&x, &[&h_iz])?;
    let z_retraction = fork_iso.inverse()?.compose(&into_eq)?;
    if a.compose(&z_retraction)? != h_iz {
        return Err(Error::check("first row", "the Z retraction does not factor H after the graph of iz"));
    }
    if z_retraction.compose(&a)? != PresheafMap::identity(cube.over_z().apex()) {
        return Err(Error::check("first row", "the Z row does not compose to the identity"));
    }
    if graph_iz.compose(&a)? != graph_t.compose(&a)? {
        return Err(Error::check("first row", "the section square over Z does not commute"));
    }
    transcript.push("Z row verified: section square, retraction square, identity composite".into());

    // Row over the source cylinder: pull the H problem back along the
    // cofibration. The section is the graph of t after b; the
    // retraction comes from the universal property of the fiber.
    let xci = cube.over_source_cylinder().apex().clone();
    let xci_cyl = product(&xci, &interval)?;
    let tb = t.compose(&b)?;
    let cylinder_section = pairing(&xci_cyl, &PresheafMap::identity(&xci), &tb)?;
    let b_crossed = product_map(&xci_cyl, &x_cyl, &b, &PresheafMap::identity(&interval))?;
    let crossed_face = Square::new(
        xci_cyl.leg("pr1").clone(),
        b_crossed.clone(),
        b.clone(),
        x_cyl.leg("pr1").clone(),
    )?;
    if !check_pullback_square(&crossed_face)? {
        return Err(Error::check(
            "second row",
            "the crossed fiber cylinder is not the pullback of the cylinder over X",
        ));
    }
    let q_ci = cube.over_source_cylinder().leg("left").clone();
    let to_source = gtc.source_cylinder().leg("pr1").compose(&q_ci)?;
    let leg_ci = pairing(
        gtc.source_cylinder(),
        &to_source.compose(xci_cyl.leg("pr1"))?,
        xci_cyl.leg("pr2"),
    )?;
    let leg_x = h.compose(&b_crossed)?;
    let cylinder_retraction =
        cube.over_source_cylinder().gap(xci_cyl.apex(), &[&leg_ci, &leg_x])?;
    if cylinder_retraction.compose(&cylinder_section)? != PresheafMap::identity(&xci) {
        return Err(Error::check("second row", "the source-cylinder row does not compose to the identity"));
    }
    if b_crossed.compose(&cylinder_section)? != graph_t.compose(&b)? {
        return Err(Error::check("second row", "the section square over the source cylinder does not commute"));
    }
    if b.compose(&cylinder_retraction)? != h.compose(&b_crossed)? {
        return Err(Error::check("second row", "the retraction square over the source cylinder does not commute"));
    }
    transcript.push(
        "source-cylinder row verified: pulled-back section, retraction, identity composite".into(),
    );

    // Glue the rows along the pushouts on both domains.
    let s_dom = cube.cone().cogap(
        v.domain(),
        &[&v.cone().leg("left").compose(&a)?, &v.cone().leg("right").compose(&cylinder_section)?],
    )?;
    let r_dom = v.cone().cogap(
        cube.domain(),
        &[
            &cube.cone().leg("left").compose(&z_retraction)?,
            &cube.cone().leg("right").compose(&cylinder_retraction)?,
        ],
    )?;
    let retract = RetractData { s_dom, r_dom, s_cod: graph_t, r_cod: h.clone() };
    let failures = check_retract(cube.pulled(), v.u(), &retract)?;
    if !failures.is_empty() {
        return Err(Error::check("retract equations", failures.join(", ")));
    }
    transcript.push("retract data verified against the replacement map".into());

    Ok(RetractCertificate {
        cube,
        h,
        v,
        z_section: a,
        z_retraction,
        cylinder_section,
        cylinder_retraction,
        retract,
        transcript,
    })
}

/// The pushforward of f: X -> Y along p: Y -> Y'. Elements over an
/// element b of Y' are sections: natural maps from the fiber of p at b
/// into X lying over Y. Fiber cones and ordered section tables are
/// retained so elements stay decodable and transposition is exact.
#[derive(Debug, Clone)]
pub struct PushforwardResult {
    f: PresheafMap,
    p: PresheafMap,
    xprime: Presheaf,
    pushed: PresheafMap,
    fibers: Vec<Vec<ConeResult>>,
    sections: Vec<Vec<Vec<PresheafMap>>>,
    offsets: Vec<Vec<usize>>,
}

impl PushforwardResult {
    pub fn f(&self) -> &PresheafMap {
        &self.f
    }

    pub fn p(&self) -> &PresheafMap {
        &self.p
    }

    pub fn xprime(&self) -> &Presheaf {
        &self.xprime
    }

    /// The pushed-forward map X' -> Y'.
    pub fn pushed(&self) -> &PresheafMap {
        &self.pushed
    }

    /// The fiber of p at element b of Y'(c), as a pullback cone with
    /// legs onto the representable and onto Y.
    pub fn fiber(&self, c: usize, b: usize) -> &ConeResult {
        &self.fibers[c][b]
    }

    /// The ordered section table at (c, b).
    pub fn sections(&self, c: usize, b: usize) -> &[PresheafMap] {
        &self.sections[c][b]
    }

    /// Splits an element of X'(c) into its base element and section
    /// index.
    pub fn decode(&self, c: usize, e: usize) -> (usize, usize) {
        let row = &self.offsets[c];
        let b = match row.binary_search(&e) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        (b, e - row[b])
    }

    pub fn encode(&self, c: usize, b: usize, k: usize) -> usize {
        self.offsets[c][b] + k
    }

    /// Transposes a map m from the pullback of a slice object A along
    /// p into X (lying over Y) to the map A -> X' (lying over Y').
    /// The source of m must be the pullback of the structure map of A
    /// against p, as computed by `pullback`.
    pub fn transpose(&self, alpha: &PresheafMap, m: &PresheafMap) -> Result<PresheafMap> {
        if alpha.target() != self.p.target() {
            return Err(Error::contract("the slice structure map must land in the pushforward base"));
        }
        let cone = pullback(alpha, &self.p)?;
        if m.source() != cone.apex() || m.target() != self.f.source() {
            return Err(Error::contract("transpose input must run from the pulled-back slice object into X"));
        }
        if self.f.compose(m)? != *cone.leg("right") {
            return Err(Error::contract("transpose input must lie over Y"));
        }
        let a = alpha.source();
        let base = a.base().clone();
        let mut components = Vec::with_capacity(base.object_count());
        for c in 0..base.object_count() {
            let mut row = Vec::with_capacity(a.level(c));
            for e in 0..a.level(c) {
                let b = alpha.apply(c, e);
                let fiber = &self.fibers[c][b];
                let classify = element_map(a, c, e)?;
                let into_pullback = cone.gap(
                    fiber.apex(),
                    &[&classify.compose(fiber.leg("left"))?, fiber.leg("right")],
                )?;
                let section = m.compose(&into_pullback)?;
                let k = self.sections[c][b]
                    .iter()
                    .position(|s| *s == section)
                    .ok_or_else(|| {
                        Error::check("transpose", "restricted section missing from the table")
                    })?;
                row.push(self.encode(c, b, k));
            }
            components.push(row);
        }
        PresheafMap::new(a.clone(), self.xprime.clone(), components)
    }

    /// Inverse direction: turns a map n: A -> X' lying over Y' into
    /// the map from the pullback of A along p into X lying over Y.
    pub fn untranspose(&self, alpha: &PresheafMap, n: &PresheafMap) -> Result<PresheafMap> {
        if n.source() != alpha.source() || n.target() != &self.xprime {
            return Err(Error::contract("untranspose input must run from the slice object into the pushforward"));
        }
        if self.pushed.compose(n)? != *alpha {
            return Err(Error::contract("untranspose input must lie over the pushforward base"));
        }
        let cone = pullback(alpha, &self.p)?;
        let base = alpha.base().clone();
        let mut components = Vec::with_capacity(base.object_count());
        for c in 0..base.object_count() {
            let id_pos = base
                .hom(c, c)
                .iter()
                .position(|&mi| base.is_identity(mi))
                .expect("hom(c, c) contains the identity");
            let mut row = Vec::with_capacity(cone.apex().level(c));
            for w in 0..cone.apex().level(c) {
                let e = cone.leg("left").apply(c, w);
                let y = cone.leg("right").apply(c, w);
                let (b, k) = self.decode(c, n.apply(c, e));
                let fiber = &self.fibers[c][b];
                let at = (0..fiber.apex().level(c))
                    .find(|&q| {
                        fiber.leg("left").apply(c, q) == id_pos
                            && fiber.leg("right").apply(c, q) == y
                    })
                    .ok_or_else(|| {
                        Error::check("untranspose", "fiber element missing for a pullback pair")
                    })?;
                row.push(self.sections[c][b][k].apply(c, at));
            }
            components.push(row);
        }
        PresheafMap::new(cone.apex().clone(), self.f.source().clone(), components)
    }
}

/// Both hom-sets of the pushforward adjunction at one slice object,
/// with any bijection failures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdjunctionReport {
    pub direct: usize,
    pub transposed: usize,
    pub failures: Vec<String>,
}

/// Enumerates both sides of the adjunction at the slice object with
/// structure map `alpha` and checks that transposition is a bijection
/// with the stated inverse.
pub fn verify_adjunction(
    result: &PushforwardResult,
    alpha: &PresheafMap,
    budget: &Budget,
) -> Result<AdjunctionReport> {
    let cone = pullback(alpha, result.p())?;
    let lower = enumerate_maps_over(cone.leg("right"), result.f(), budget)?;
    let upper = enumerate_maps_over(alpha, result.pushed(), budget)?;
    let mut failures = Vec::new();
    if lower.len() != upper.len() {
        failures.push(format!("hom-set sizes differ: {} below, {} above", lower.len(), upper.len()));
    }
    for (i, m) in lower.iter().enumerate() {
        let n = result.transpose(alpha, m)?;
        if !upper.contains(&n) {
            failures.push(format!("transpose of lower map {i} is not a slice map above"));
        }
        if result.untranspose(alpha, &n)? != *m {
            failures.push(format!("round trip through the transpose moved lower map {i}"));
        }
    }
    for (i, n) in upper.iter().enumerate() {
        let m = result.untranspose(alpha, n)?;
        if !lower.contains(&m) {
            failures.push(format!("untranspose of upper map {i} is not a slice map below"));
        }
        if result.transpose(alpha, &m)? != *n {
            failures.push(format!("round trip through the untranspose moved upper map {i}"));
        }
    }
    Ok(AdjunctionReport { direct: lower.len(), transposed: upper.len(), failures })
}

/// Computes the pushforward of f along p by enumerating sections of f
/// over each fiber of p, then verifies the adjunction bijection at
/// every representable slice object.
pub fn pushforward(f: &PresheafMap, p: &PresheafMap, budget: &Budget) -> Result<PushforwardResult> {
    if f.target() != p.source() {
        return Err(Error::contract("pushforward needs the target of f to be the source of p"));
    }
    let base = f.base().clone();
    let yprime = p.target();
    let n = base.object_count();

    let mut fibers: Vec<Vec<ConeResult>> = Vec::with_capacity(n);
    let mut sections: Vec<Vec<Vec<PresheafMap>>> = Vec::with_capacity(n);
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut levels = Vec::with_capacity(n);
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(n);
    for c in 0..n {
        let mut fiber_row = Vec::with_capacity(yprime.level(c));
        let mut section_row = Vec::with_capacity(yprime.level(c));
        let mut offset_row = Vec::with_capacity(yprime.level(c));
        let mut label_row = Vec::new();
        let mut level = 0usize;
        for b in 0..yprime.level(c) {
            let classify = element_map(yprime, c, b)?;
            let fiber = pullback(&classify, p)?;
            let secs = enumerate_maps_over(fiber.leg("right"), f, budget)?;
            offset_row.push(level);
            for k in 0..secs.len() {
                label_row.push(format!("({}; s{})", yprime.label(c, b), k));
            }
            level += secs.len();
            fiber_row.push(fiber);
            section_row.push(secs);
        }
        fibers.push(fiber_row);
        sections.push(section_row);
        offsets.push(offset_row);
        levels.push(level);
        labels.push(label_row);
    }

    let mut action: Vec<Vec<usize>> = Vec::with_capacity(base.morphism_count());
    for m in 0..base.morphism_count() {
        let mor = base.morphism(m).clone();
        let (d, c) = (mor.src, mor.tgt);
        let ym = yoneda_map(&base, m);
        let mut table = vec![0usize; levels[c]];
        for b in 0..yprime.level(c) {
            if sections[c][b].is_empty() {
                continue;
            }
            let restricted_b = yprime.act(m, b);
            let carrier = fibers[c][b].gap(
                fibers[d][restricted_b].apex(),
                &[
                    &ym.compose(fibers[d][restricted_b].leg("left"))?,
                    fibers[d][restricted_b].leg("right"),
                ],
            )?;
            for (k, s) in sections[c][b].iter().enumerate() {
                let restricted = s.compose(&carrier)?;
                let k2 = sections[d][restricted_b]
                    .iter()
                    .position(|cand| *cand == restricted)
                    .ok_or_else(|| {
                        Error::check("pushforward action", "restricted section missing from the table")
                    })?;
                table[offsets[c][b] + k] = offsets[d][restricted_b] + k2;
            }
        }
        action.push(table);
    }

    let xprime = Presheaf::new(base.clone(), levels.clone(), action)?
        .with_labels(labels)?
        .with_name(format!("push({})", f.source().name()));
    let mut pushed_components = Vec::with_capacity(n);
    for c in 0..n {
        let mut row = Vec::with_capacity(levels[c]);
        for b in 0..yprime.level(c) {
            row.extend(std::iter::repeat_n(b, sections[c][b].len()));
        }
        pushed_components.push(row);
    }
    let pushed = PresheafMap::new(xprime.clone(), yprime.clone(), pushed_components)?;

    let result =
        PushforwardResult { f: f.clone(), p: p.clone(), xprime, pushed, fibers, sections, offsets };

    for c in 0..n {
        for b in 0..yprime.level(c) {
            let alpha = element_map(yprime, c, b)?;
            let report = verify_adjunction(&result, &alpha, budget)?;
            if !report.failures.is_empty() {
                return Err(Error::check(
                    "pushforward adjunction",
                    format!(
                        "representable slice object at {} element {} fails: {}",
                        base.object_id(c),
                        b,
                        report.failures.join("; ")
                    ),
                ));
            }
        }
    }
    Ok(result)
}

/// Lift strategy for a pullback of a witnessed fibration: transports
/// each problem across the pullback square, solves it with the inner
/// witness, and maps the lift back through the universal property.
struct PulledBackStrategy {
    inner: Arc<FibrationWitness>,
    cone: ConeResult,
    along: PresheafMap,
}

impl LiftStrategy for PulledBackStrategy {
    fn solve(&self, gp: &GtcProblem, _budget: &Budget) -> Result<PresheafMap> {
        let problem = gp.problem();
        let transported = LiftingProblem::new(
            problem.left().clone(),
            self.inner.map().clone(),
            self.cone.leg("right").compose(problem.top())?,
            self.along.compose(problem.bottom())?,
        )?;
        let inner_gp = GtcProblem::new(gp.gtc().clone(), transported)?;
        let inner_lift = self.inner.solve(&inner_gp)?;
        self.cone.gap(problem.bottom().source(), &[problem.bottom(), &inner_lift])
    }

    fn describe(&self) -> String {
        format!("pullback of ({})", self.inner.strategy_description())
    }
}

/// A witness for the pullback of a witnessed fibration along `along`:
/// the wrapped map is the left pullback projection, and lifts are
/// obtained by transporting problems to the inner witness.
pub fn pullback_witness(
    witness: &Arc<FibrationWitness>,
    along: &PresheafMap,
) -> Result<FibrationWitness> {
    if along.target() != witness.map().target() {
        return Err(Error::contract("the pullback leg must share the witnessed map's target"));
    }
    let cone = pullback(along, witness.map())?;
    let map = cone.leg("left").clone();
    let budget = *witness.budget();
    Ok(FibrationWitness::new(
        map,
        Arc::new(PulledBackStrategy { inner: witness.clone(), cone, along: along.clone() }),
        budget,
    ))
}

/// Lift strategy for a pushed-forward fibration: pulls the problem
/// back along p, certifies the pulled-back left leg as a retract of a
/// generating trivial cofibration, solves the transposed problem
/// against f through that retract, and transposes the lift back.
struct FrobeniusStrategy {
    result: PushforwardResult,
    f_witness: Arc<FibrationWitness>,
    p_witness: Arc<FibrationWitness>,
}

impl LiftStrategy for FrobeniusStrategy {
    fn solve(&self, gp: &GtcProblem, _budget: &Budget) -> Result<PresheafMap> {
        let problem = gp.problem();
        let u = problem.left();
        let g = problem.top();
        let beta = problem.bottom();
        let alpha = beta.compose(u)?;

        // Pull the generating trivial cofibration back along p.
        let pulled_a = pullback(&alpha, self.result.p())?;
        let pulled_b = pullback(beta, self.result.p())?;
        let pulled_u = pulled_b
            .gap(pulled_a.apex(), &[&u.compose(pulled_a.leg("left"))?, pulled_a.leg("right")])?;

        // Certify the pulled-back map as a retract, using the
        // pulled-back witness for the projection onto the codomain.
        let projection_witness = pullback_witness(&self.p_witness, beta)?;
        let certificate = pullback_gtc_retract(gp.gtc(), &projection_witness)?;

        // The certificate speaks about the cube's pushout domain;
        // bridge it to the slice pullback.
        let plain = pullback(u, projection_witness.map())?;
        let kappa = plain.gap(pulled_a.apex(), &[pulled_a.leg("left"), &pulled_u])?;
        let bridge = certificate.cube().comparison().inverse()?.compose(&kappa)?;
        if !bridge.is_iso() {
            return Err(Error::check(
                "pushforward bridge",
                "the slice pullback does not agree with the cube domain",
            ));
        }
        let data = RetractData {
            s_dom: certificate.retract().s_dom.compose(&bridge)?,
            r_dom: bridge.inverse()?.compose(&certificate.retract().r_dom)?,
            s_cod: certificate.retract().s_cod.clone(),
            r_cod: certificate.retract().r_cod.clone(),
        };

        // Transpose the problem below and solve it against f through
        // the retract.
        let transposed_top = self.result.untranspose(&alpha, g)?;
        let below = LiftingProblem::new(
            pulled_u.clone(),
            self.result.f().clone(),
            transposed_top,
            pulled_b.leg("right").clone(),
        )?;
        let lift_below = lift_via_retract(&below, certificate.v().u(), &data, |induced| {
            let induced_gp = GtcProblem::new(certificate.v().clone(), induced.clone())?;
            self.f_witness.solve(&induced_gp)
        })?;

        // Transpose the lift back above.
        let lift = self.result.transpose(beta, &lift_below)?;
        if lift.compose(u)? != *g {
            return Err(Error::check("pushforward lift", "the transposed lift misses the top of the square"));
        }
        Ok(lift)
    }

    fn describe(&self) -> String {
        format!(
            "pushforward transport: f by ({}), p by ({})",
            self.f_witness.strategy_description(),
            self.p_witness.strategy_description()
        )
    }
}

/// Builds a fibration witness for the pushed-forward map out of
/// witnesses for f and p. Lifts are produced constructively through
/// retract certificates and the adjunction, never by raw search.
pub fn frobenius_witness(
    result: &PushforwardResult,
    f_witness: &Arc<FibrationWitness>,
    p_witness: &Arc<FibrationWitness>,
) -> Result<FibrationWitness> {
    if f_witness.map() != result.f() {
        return Err(Error::contract("the f witness must wrap the pushed map"));
    }
    if p_witness.map() != result.p() {
        return Err(Error::contract("the p witness must wrap the base map"));
    }
    let budget = *f_witness.budget();
    Ok(FibrationWitness::new(
        result.pushed().clone(),
        Arc::new(FrobeniusStrategy {
            result: result.clone(),
            f_witness: f_witness.clone(),
            p_witness: p_witness.clone(),
        }),
        budget,
    ))
}

/// The four computations showing that point-biased fibrations lack
/// the pullback-stability enjoyed by witnessed fibrations: over the
/// one-truncated simplex base, the vertex inclusion at 0 is itself a
/// biased generating map, the vertex inclusion at 1 solves every
/// problem from the biased family, yet their pullback is empty and
/// fails an elementary lifting test.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub point_is_generating: bool,
    pub family_size: usize,
    pub problems_checked: usize,
    pub point_is_fibration: bool,
    pub pullback_is_initial: bool,
    pub final_lift_absent: bool,
    pub transcript: Vec<String>,
}

impl CounterexampleReport {
    pub fn holds(&self) -> bool {
        self.point_is_generating
            && self.point_is_fibration
            && self.pullback_is_initial
            && self.final_lift_absent
    }
}

/// Runs the counterexample end to end and reports each step.
pub fn left_fibration_counterexample() -> Result<CounterexampleReport> {
    let base = Arc::new(preset_simplex(1)?);
    let budget = Budget::default();
    let interval = yoneda(&base, 1);
    let ctx =
        PresheafContext::new(base.clone(), interval.clone(), CofibrationClass::Monomorphisms)?;
    let point = yoneda(&base, 0);
    let vertices = base.hom(0, 1);
    let v0 = yoneda_map(&base, vertices[0]);
    let v1 = yoneda_map(&base, vertices[1]);
    let mut transcript = Vec::new();

    let biased = biased_gtc(&ctx, &initial_map(&point), &v0)?;
    let point_is_generating = biased == v0;
    transcript.push(format!(
        "vertex inclusion at 0 {} the biased generating map of the empty cofibration",
        if point_is_generating { "equals" } else { "differs from" }
    ));

    let boundary = boundary_simplex(&base, 1)?;
    let family_maps =
        [biased.clone(), biased_gtc(&ctx, &boundary, &v0)?];
    let mut family = Vec::new();
    for u in &family_maps {
        for top in enumerate_maps(u.source(), &point, &budget)? {
            for bottom in enumerate_maps(u.target(), &interval, &budget)? {
                if v1.compose(&top)? == bottom.compose(u)? {
                    family.push(LiftingProblem::new(u.clone(), v1.clone(), top.clone(), bottom)?);
                }
            }
        }
    }
    let family_size = family_maps.len();
    let problems_checked = family.len();
    let point_is_fibration = rlp_certificate(&v1, &family, &budget)?.is_certified();
    transcript.push(format!(
        "vertex inclusion at 1 {} all {} problems from the biased family",
        if point_is_fibration { "solves" } else { "fails" },
        problems_checked
    ));

    let meet = pullback(&v0, &v1)?;
    let pullback_is_initial = meet.apex().is_empty_presheaf();
    transcript.push(format!(
        "pullback of the two vertex inclusions is {}",
        if pullback_is_initial { "empty" } else { "inhabited" }
    ));

    let empty = Presheaf::empty(base.clone());
    let final_problem = LiftingProblem::new(
        initial_map(&point),
        initial_map(&point),
        PresheafMap::identity(&empty),
        PresheafMap::identity(&point),
    )?;
    let final_lift_absent = solve_lift(&final_problem, &budget)?.is_none();
    transcript.push(format!(
        "the pulled-back map {} lift against the empty fibration",
        if final_lift_absent { "has no" } else { "has a" }
    ));

    Ok(CounterexampleReport {
        point_is_generating,
        family_size,
        problems_checked,
        point_is_fibration,
        pullback_is_initial,
        final_lift_absent,
        transcript,
    })
}
