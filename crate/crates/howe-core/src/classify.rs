//! Geometric isomorphism testing and automorphism-group labeling.
//!
//! Two nonsingular hyperelliptic models are isomorphic over the algebraic
//! closure iff a fractional-linear map carries the branch locus of one onto
//! the branch locus of the other. For the standard octic the eight branch
//! points live in `F_{p⁸}`, and every candidate map is determined by where
//! an ordered triple of roots goes, so the search space is the `8·7·6 =
//! 336` ordered triples of the target. The same search restricted to
//! self-maps measures the reduced automorphism group.
//!
//! Labels follow the classification of reduced orders for these curves:
//! `4 ↦ C2×C2×C2`, `8 ↦ C2×D8`, `16 ↦ V8`, `24 ↦ C2×S4`. The bijection is
//! re-validated at every prime against the canonical models `x⁸ − cx⁴ + 1`
//! (generic `c`), `x⁸ − 1`, and `x⁸ ± 14x⁴ + 1` before any label is
//! assigned, and `V8`/`C2×S4` labels are cross-checked by an explicit
//! isomorphism with their canonical model.

use alloc::vec::Vec;

use crate::error::{DomainError, InternalError, Result};
use crate::field::{FieldCtx, FieldElem, Tower};
use crate::standard_form::{legendre_triple, sqrt_choices, CurveAB};

/// The eight branch points of a nonsingular standard-form curve, lifted to
/// `F_{p⁸}` and sorted canonically. Closed under `r ↦ −r` and `r ↦ 1/r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchLocus {
    roots: [FieldElem; 8],
    source: CurveAB,
}

impl BranchLocus {
    pub fn roots(&self) -> &[FieldElem; 8] {
        &self.roots
    }

    pub fn source(&self) -> &CurveAB {
        &self.source
    }

    pub fn prime(&self) -> u64 {
        self.roots[0].prime()
    }
}

/// Roots of `(x⁴−ax²+1)(x⁴−bx²+1)` via the biquadratic structure: solve
/// `z² − az + 1` and `z² − bz + 1`, then take `±√z` for each of the four
/// `z` values, lifting through the tower as needed.
pub fn branch_locus(tower: &Tower, c: &CurveAB) -> Result<BranchLocus> {
    let ctx = tower.ctx(c.a.degree());
    if !c.is_nonsingular(ctx) {
        return Err(DomainError::SingularCurve.into());
    }
    let mut roots = Vec::with_capacity(8);
    for quartic_param in [&c.a, &c.b] {
        // z = (w ± √(w²−4))/2
        let disc = ctx.sub(&ctx.square(quartic_param), &ctx.from_u64(4));
        let delta = tower.sqrt_lift(&disc)?;
        let kd = delta.degree();
        let up = tower.ctx(kd);
        let w = tower.embed(quartic_param, kd)?;
        let half = up.inv(&up.from_u64(2))?;
        for sign in [false, true] {
            let d = if sign { up.neg(&delta) } else { delta };
            let z = up.mul(&up.add(&w, &d), &half);
            let x = tower.sqrt_lift(&z)?;
            let x8 = tower.embed(&x, 8)?;
            roots.push(x8);
            roots.push(tower.ctx(8).neg(&x8));
        }
    }
    roots.sort_unstable();
    roots.dedup();
    if roots.len() != 8 {
        return Err(InternalError::Invariant(
            "branch locus of a nonsingular curve must have 8 distinct points",
        )
        .into());
    }
    let mut arr = [roots[0]; 8];
    arr.copy_from_slice(&roots);
    Ok(BranchLocus {
        roots: arr,
        source: *c,
    })
}

/// 2×2 matrix acting projectively.
type Mat = [[FieldElem; 2]; 2];

/// The map sending the ordered triple `(r₁, r₂, r₃)` to `(0, 1, ∞)`.
fn triple_to_standard(ctx: &FieldCtx, r1: &FieldElem, r2: &FieldElem, r3: &FieldElem) -> Mat {
    let d23 = ctx.sub(r2, r3);
    let d21 = ctx.sub(r2, r1);
    [
        [d23, ctx.neg(&ctx.mul(r1, &d23))],
        [d21, ctx.neg(&ctx.mul(r3, &d21))],
    ]
}

fn adjugate(ctx: &FieldCtx, m: &Mat) -> Mat {
    [[m[1][1], ctx.neg(&m[0][1])], [ctx.neg(&m[1][0]), m[0][0]]]
}

fn mat_mul(ctx: &FieldCtx, a: &Mat, b: &Mat) -> Mat {
    let mut out = [[ctx.zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = ctx.add(&ctx.mul(&a[i][0], &b[0][j]), &ctx.mul(&a[i][1], &b[1][j]));
        }
    }
    out
}

/// Does the map with matrix `m` send every point of `src` into `dst`?
/// (Both sets have 8 elements and the map is injective, so "into" means
/// "onto".)
fn maps_onto(ctx: &FieldCtx, m: &Mat, src: &[FieldElem; 8], dst: &[FieldElem; 8]) -> bool {
    'roots: for r in src {
        let num = ctx.add(&ctx.mul(&m[0][0], r), &m[0][1]);
        let den = ctx.add(&ctx.mul(&m[1][0], r), &m[1][1]);
        if den.is_zero() {
            return false; // lands at infinity, which is never a branch point
        }
        for s in dst {
            if num == ctx.mul(s, &den) {
                continue 'roots;
            }
        }
        return false;
    }
    true
}

fn search_triples(
    ctx: &FieldCtx,
    src: &[FieldElem; 8],
    dst: &[FieldElem; 8],
    count_all: bool,
) -> usize {
    let base = triple_to_standard(ctx, &src[0], &src[1], &src[2]);
    let mut found = 0;
    for i in 0..8 {
        for j in 0..8 {
            if j == i {
                continue;
            }
            for k in 0..8 {
                if k == i || k == j {
                    continue;
                }
                let target = triple_to_standard(ctx, &dst[i], &dst[j], &dst[k]);
                let m = mat_mul(ctx, &adjugate(ctx, &target), &base);
                if maps_onto(ctx, &m, src, dst) {
                    found += 1;
                    if !count_all {
                        return found;
                    }
                }
            }
        }
    }
    found
}

/// Geometric isomorphism of the underlying curves: some fractional-linear
/// map over `F_{p⁸}` carries one branch locus onto the other. Twists are
/// identified.
pub fn are_isomorphic(ctx8: &FieldCtx, l1: &BranchLocus, l2: &BranchLocus) -> bool {
    assert_eq!(
        l1.prime(),
        l2.prime(),
        "isomorphism testing requires a common prime"
    );
    search_triples(ctx8, &l1.roots, &l2.roots, false) > 0
}

/// Order of the group of fractional-linear self-maps of the branch locus
/// (the reduced automorphism group). Always a multiple of 4 here: `x ↦ −x`
/// and `x ↦ ±1/x` are self-maps of every standard octic.
pub fn reduced_aut_order(ctx8: &FieldCtx, l: &BranchLocus) -> usize {
    search_triples(ctx8, &l.roots, &l.roots, true)
}

/// Automorphism-group label, determined by the reduced order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AutLabel {
    C2C2C2,
    C2D8,
    V8,
    C2S4,
}

impl AutLabel {
    pub fn reduced_order(&self) -> usize {
        match self {
            AutLabel::C2C2C2 => 4,
            AutLabel::C2D8 => 8,
            AutLabel::V8 => 16,
            AutLabel::C2S4 => 24,
        }
    }

    pub fn from_reduced_order(order: usize) -> Result<AutLabel> {
        match order {
            4 => Ok(AutLabel::C2C2C2),
            8 => Ok(AutLabel::C2D8),
            16 => Ok(AutLabel::V8),
            24 => Ok(AutLabel::C2S4),
            other => Err(InternalError::AutOrderOutOfRange { order: other }.into()),
        }
    }

    pub const ALL: [AutLabel; 4] = [
        AutLabel::C2C2C2,
        AutLabel::C2D8,
        AutLabel::V8,
        AutLabel::C2S4,
    ];
}

impl core::fmt::Display for AutLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            AutLabel::C2C2C2 => "C2xC2xC2",
            AutLabel::C2D8 => "C2xD8",
            AutLabel::V8 => "V8",
            AutLabel::C2S4 => "C2xS4",
        };
        write!(f, "{s}")
    }
}

/// Labeler with per-prime self-calibration. Construction measures the
/// canonical models `x⁸ − 1` (expects order 16), `x⁸ ± 14x⁴ + 1` (24
/// each), and the first generic `x⁸ − cx⁴ + 1` not isomorphic to those
/// (8); any mismatch is an internal error.
pub struct Classifier<'t> {
    tower: &'t Tower,
    canon_v8: BranchLocus,
    canon_s4: [BranchLocus; 2],
}

/// The `a + b = 0` representative of `y² = x⁸ − cx⁴ + 1`:
/// `a = √(c+2)`, `b = −a` (the square root exists in `F_{p²}`).
fn quartic_family_curve(tower: &Tower, c_val: i64) -> Result<CurveAB> {
    let ctx2 = tower.ctx(2);
    let a = tower.sqrt_lift(&ctx2.from_i64(c_val + 2))?;
    if a.degree() != 2 {
        return Err(InternalError::Invariant("F_p constants are squares in F_{p^2}").into());
    }
    let ctx2 = tower.ctx(2);
    Ok(CurveAB::new(a, ctx2.neg(&a)))
}

impl<'t> Classifier<'t> {
    pub fn new(tower: &'t Tower) -> Result<Classifier<'t>> {
        let p = tower.prime();
        if p <= 7 {
            return Err(DomainError::LabelsRequireLargeP { p }.into());
        }
        let ctx8 = tower.ctx(8);

        let canon_v8 = branch_locus(tower, &quartic_family_curve(tower, 0)?)?;
        let got = reduced_aut_order(ctx8, &canon_v8);
        if got != 16 {
            return Err(InternalError::CalibrationFailed {
                model: "x^8 - 1",
                expected: 16,
                got,
            }
            .into());
        }

        let s4_plus = branch_locus(tower, &quartic_family_curve(tower, -14)?)?;
        let got = reduced_aut_order(ctx8, &s4_plus);
        if got != 24 {
            return Err(InternalError::CalibrationFailed {
                model: "x^8 + 14x^4 + 1",
                expected: 24,
                got,
            }
            .into());
        }
        let s4_minus = branch_locus(tower, &quartic_family_curve(tower, 14)?)?;
        let got = reduced_aut_order(ctx8, &s4_minus);
        if got != 24 {
            return Err(InternalError::CalibrationFailed {
                model: "x^8 - 14x^4 + 1",
                expected: 24,
                got,
            }
            .into());
        }

        let classifier = Classifier {
            tower,
            canon_v8,
            canon_s4: [s4_plus, s4_minus],
        };

        // Generic member of the x⁸ − cx⁴ + 1 family: skip c values whose
        // curve degenerates or coincides with the 16/24 classes.
        let mut calibrated_generic = false;
        for c_val in 1..(p as i64) {
            if [0i64, 2, -2, 14, -14]
                .iter()
                .any(|&s| (c_val - s).rem_euclid(p as i64) == 0)
            {
                continue;
            }
            let curve = quartic_family_curve(tower, c_val)?;
            let locus = branch_locus(tower, &curve)?;
            if are_isomorphic(ctx8, &locus, &classifier.canon_v8)
                || are_isomorphic(ctx8, &locus, &classifier.canon_s4[0])
                || are_isomorphic(ctx8, &locus, &classifier.canon_s4[1])
            {
                continue;
            }
            let got = reduced_aut_order(ctx8, &locus);
            if got != 8 {
                return Err(InternalError::CalibrationFailed {
                    model: "x^8 - cx^4 + 1 (generic c)",
                    expected: 8,
                    got,
                }
                .into());
            }
            calibrated_generic = true;
            break;
        }
        if !calibrated_generic {
            return Err(InternalError::Invariant("no generic quartic-family member found").into());
        }
        Ok(classifier)
    }

    /// Label a branch locus, cross-checking `V8` and `C2×S4` against their
    /// canonical models.
    pub fn label(&self, locus: &BranchLocus) -> Result<(AutLabel, usize)> {
        let ctx8 = self.tower.ctx(8);
        let order = reduced_aut_order(ctx8, locus);
        let label = AutLabel::from_reduced_order(order)?;
        let consistent = match label {
            AutLabel::V8 => are_isomorphic(ctx8, locus, &self.canon_v8),
            AutLabel::C2S4 => {
                are_isomorphic(ctx8, locus, &self.canon_s4[0])
                    || are_isomorphic(ctx8, locus, &self.canon_s4[1])
            }
            AutLabel::C2D8 => {
                !are_isomorphic(ctx8, locus, &self.canon_v8)
                    && !are_isomorphic(ctx8, locus, &self.canon_s4[0])
                    && !are_isomorphic(ctx8, locus, &self.canon_s4[1])
            }
            AutLabel::C2C2C2 => true,
        };
        if !consistent {
            return Err(InternalError::Invariant(
                "label disagrees with canonical-model isomorphism",
            )
            .into());
        }
        Ok((label, order))
    }
}

/// Convenience wrapper building a fresh [`Classifier`] for one query.
pub fn aut_label(tower: &Tower, locus: &BranchLocus) -> Result<AutLabel> {
    Ok(Classifier::new(tower)?.label(locus)?.0)
}

/// `j = 256(λ²−λ+1)³ / (λ²(λ−1)²)` of the Legendre curve at λ.
pub fn j_invariant_legendre(ctx: &FieldCtx, lambda: &FieldElem) -> Result<FieldElem> {
    let one = ctx.one();
    if lambda.is_zero() || *lambda == one {
        return Err(DomainError::DegenerateLegendre.into());
    }
    let num = ctx.mul_u64(
        &ctx.pow(&ctx.add(&ctx.sub(&ctx.square(lambda), lambda), &one), 3),
        256,
    );
    let den = ctx.mul(&ctx.square(lambda), &ctx.square(&ctx.sub(lambda, &one)));
    ctx.div(&num, &den)
}

/// Sorted multiset of the quotient j-invariants, embedded into `F_{p⁸}`.
/// Used as a fast pre-filter during deduplication: distinct keys imply
/// non-isomorphic quotient triples for generic (order-4) curves; classes
/// with larger automorphism groups are re-merged by an explicit Möbius
/// pass afterwards, so the filter never has the final word.
pub fn j_multiset_key(tower: &Tower, c: &CurveAB) -> Result<[FieldElem; 3]> {
    let ch = sqrt_choices(tower, c)?;
    let ctx = tower.ctx(ch.degree());
    let tr = legendre_triple(ctx, &ch)?;
    let mut js = [tower.ctx(8).zero(); 3];
    for (slot, lam) in js.iter_mut().zip(tr.lambdas()) {
        let j = j_invariant_legendre(ctx, &lam)?;
        *slot = tower.embed(&j, 8)?;
    }
    js.sort_unstable();
    Ok(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_locus_structure() {
        let tower = Tower::new(11).unwrap();
        let ctx2 = tower.ctx(2);
        let ctx8 = tower.ctx(8);
        let c = CurveAB::new(ctx2.from_u64(3), ctx2.from_u64(7));
        let l = branch_locus(&tower, &c).unwrap();
        // Verify each root satisfies the octic, and the closures.
        let octic =
            CurveAB::new(tower.embed(&c.a, 8).unwrap(), tower.embed(&c.b, 8).unwrap()).octic(ctx8);
        let mut product = ctx8.one();
        for r in l.roots() {
            assert!(octic.eval(ctx8, r).is_zero());
            assert!(l.roots().contains(&ctx8.neg(r)));
            assert!(l.roots().contains(&ctx8.inv(r).unwrap()));
            product = ctx8.mul(&product, r);
        }
        assert_eq!(product, ctx8.one());
        // Singular input is rejected.
        assert!(branch_locus(&tower, &CurveAB::new(ctx2.from_u64(3), ctx2.from_u64(3))).is_err());
    }

    #[test]
    fn swapped_and_negated_parameters_are_isomorphic() {
        let tower = Tower::new(11).unwrap();
        let ctx2 = tower.ctx(2);
        let ctx8 = tower.ctx(8);
        let a = ctx2.from_u64(3);
        let b = ctx2.from_u64(7);
        let l1 = branch_locus(&tower, &CurveAB::new(a, b)).unwrap();
        let l2 = branch_locus(&tower, &CurveAB::new(b, a)).unwrap();
        assert!(are_isomorphic(ctx8, &l1, &l2));
        // (−a, −b) via x ↦ ix.
        let l3 = branch_locus(&tower, &CurveAB::new(ctx2.neg(&a), ctx2.neg(&b))).unwrap();
        assert!(are_isomorphic(ctx8, &l1, &l3));
        assert!(are_isomorphic(ctx8, &l1, &l1));
    }

    #[test]
    fn canonical_model_orders() {
        for p in [11u64, 13, 23] {
            let tower = Tower::new(p).unwrap();
            let ctx8 = tower.ctx(8);
            let v8 = branch_locus(&tower, &quartic_family_curve(&tower, 0).unwrap()).unwrap();
            assert_eq!(reduced_aut_order(ctx8, &v8), 16, "x^8-1 at p={p}");
            let s4 = branch_locus(&tower, &quartic_family_curve(&tower, 14).unwrap()).unwrap();
            assert_eq!(reduced_aut_order(ctx8, &s4), 24, "x^8-14x^4+1 at p={p}");
        }
    }

    #[test]
    fn orders_land_in_the_classification_and_generic_is_4() {
        let tower = Tower::new(13).unwrap();
        let ctx2 = tower.ctx(2);
        let ctx8 = tower.ctx(8);
        let mut seen4 = 0;
        let mut rng = crate::testutil::Rng::new(2);
        for _ in 0..12 {
            let a = rng.elem(ctx2);
            let b = rng.elem(ctx2);
            let c = CurveAB::new(a, b);
            if !c.is_nonsingular(ctx2) {
                continue;
            }
            let l = branch_locus(&tower, &c).unwrap();
            let order = reduced_aut_order(ctx8, &l);
            assert!(
                [4, 8, 16, 24].contains(&order),
                "order {order} at ({a}, {b})"
            );
            if order == 4 {
                seen4 += 1;
            }
        }
        assert!(seen4 > 0, "no generic order-4 curve in the sample");
    }

    /// Normalize a projective matrix so the first nonzero entry is 1.
    fn normalize(ctx: &FieldCtx, m: &Mat) -> Mat {
        let pivot = [m[0][0], m[0][1], m[1][0], m[1][1]]
            .into_iter()
            .find(|e| !e.is_zero())
            .unwrap();
        let inv = ctx.inv(&pivot).unwrap();
        [
            [ctx.mul(&m[0][0], &inv), ctx.mul(&m[0][1], &inv)],
            [ctx.mul(&m[1][0], &inv), ctx.mul(&m[1][1], &inv)],
        ]
    }

    #[test]
    fn self_maps_form_a_group() {
        // Collect the stabilizer of a locus with extra symmetry and check
        // closure under composition; validates the triple search finds an
        // actual group, not stray matches.
        let tower = Tower::new(11).unwrap();
        let ctx2 = tower.ctx(2);
        let ctx8 = tower.ctx(8);
        let l = branch_locus(&tower, &CurveAB::new(ctx2.from_u64(3), ctx2.from_u64(7))).unwrap();
        let roots = l.roots();
        let base = triple_to_standard(ctx8, &roots[0], &roots[1], &roots[2]);
        let mut maps = Vec::new();
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let target = triple_to_standard(ctx8, &roots[i], &roots[j], &roots[k]);
                    let m = mat_mul(ctx8, &adjugate(ctx8, &target), &base);
                    if maps_onto(ctx8, &m, roots, roots) {
                        maps.push(normalize(ctx8, &m));
                    }
                }
            }
        }
        assert_eq!(maps.len(), 8);
        for g in &maps {
            for h in &maps {
                let gh = normalize(ctx8, &mat_mul(ctx8, g, h));
                assert!(
                    maps.contains(&gh),
                    "stabilizer not closed under composition"
                );
            }
        }
    }

    #[test]
    fn classifier_calibrates_and_labels() {
        let tower = Tower::new(23).unwrap();
        let cls = Classifier::new(&tower).unwrap();
        let v8 = branch_locus(&tower, &quartic_family_curve(&tower, 0).unwrap()).unwrap();
        assert_eq!(cls.label(&v8).unwrap().0, AutLabel::V8);
        let s4 = branch_locus(&tower, &quartic_family_curve(&tower, 14).unwrap()).unwrap();
        assert_eq!(cls.label(&s4).unwrap().0, AutLabel::C2S4);
        let ctx2 = tower.ctx(2);
        let generic =
            branch_locus(&tower, &CurveAB::new(ctx2.from_u64(3), ctx2.from_u64(7))).unwrap();
        assert_eq!(cls.label(&generic).unwrap().0, AutLabel::C2C2C2);
        // Labels require p > 7.
        let small = Tower::new(7).unwrap();
        assert!(Classifier::new(&small).is_err());
    }

    #[test]
    fn j_invariant_distinguishes_and_matches_known_value() {
        let ctx = FieldCtx::new(13, 2).unwrap();
        // j(−1) = 256·27/4 = 1728.
        let j = j_invariant_legendre(&ctx, &ctx.from_i64(-1)).unwrap();
        assert_eq!(j, ctx.from_u64(1728 % 13));
        // Six-orbit invariance: j(λ) = j(1/λ) = j(1−λ).
        let lam = ctx.from_u64(5);
        let j1 = j_invariant_legendre(&ctx, &lam).unwrap();
        let j2 = j_invariant_legendre(&ctx, &ctx.inv(&lam).unwrap()).unwrap();
        let j3 = j_invariant_legendre(&ctx, &ctx.sub(&ctx.one(), &lam)).unwrap();
        assert_eq!(j1, j2);
        assert_eq!(j1, j3);
    }

    #[test]
    fn j_multiset_agrees_for_isomorphic_generic_curves() {
        let tower = Tower::new(13).unwrap();
        let ctx2 = tower.ctx(2);
        let a = ctx2.from_u64(4);
        let b = ctx2.from_u64(6);
        let k1 = j_multiset_key(&tower, &CurveAB::new(a, b)).unwrap();
        let k2 = j_multiset_key(&tower, &CurveAB::new(b, a)).unwrap();
        assert_eq!(k1, k2);
        let k3 = j_multiset_key(&tower, &CurveAB::new(ctx2.neg(&a), ctx2.neg(&b))).unwrap();
        assert_eq!(k1, k3);
    }
}
