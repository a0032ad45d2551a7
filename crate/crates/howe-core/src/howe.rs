//! Fiber-product constructions: two elliptic double covers
//! `E₁: y² = x(x−1)(x−λ₁)` and `E₂: y² = x(x−μ)(x−μλ₂)` glued over the
//! projective line, their genus classification, the third Legendre
//! parameter λ₃, the quadratic determining μ from a Legendre triple, and
//! the two equivalent hyperellipticity criteria (`μ²λ₂ = λ₁` and `D = 0`).
//!
//! Everything is a pure formula over whatever tower field hosts the inputs;
//! square roots that leave the field lift to the next tower level.

use alloc::vec::Vec;

use crate::error::{DomainError, Result};
use crate::field::{FieldCtx, FieldElem, Tower};
use crate::supersingular::hasse_poly;

/// Parameters of the two covers; all three values must avoid {0, 1} so
/// that `E₁` and `E₂` are nonsingular.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HoweInput {
    pub lambda1: FieldElem,
    pub lambda2: FieldElem,
    pub mu: FieldElem,
}

impl HoweInput {
    pub fn new(
        ctx: &FieldCtx,
        lambda1: FieldElem,
        lambda2: FieldElem,
        mu: FieldElem,
    ) -> Result<HoweInput> {
        let one = ctx.one();
        for v in [&lambda1, &lambda2, &mu] {
            if v.is_zero() || *v == one {
                return Err(DomainError::DegenerateLegendre.into());
            }
        }
        Ok(HoweInput {
            lambda1,
            lambda2,
            mu,
        })
    }
}

/// Branch-locus overlap of the two covers and the resulting genus.
///
/// The covers ramify over `S₁ = {0, 1, λ₁, ∞}` and `S₂ = {0, μ, μλ₂, ∞}`,
/// so the overlap is at least 2; the fiber product has genus
/// `5 − |S₁ ∩ S₂|` and is irreducible iff the overlap is at most 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusClass {
    pub overlap: usize,
    pub genus: usize,
    pub irreducible: bool,
}

pub fn classify_genus(ctx: &FieldCtx, input: &HoweInput) -> GenusClass {
    let mu_l2 = ctx.mul(&input.mu, &input.lambda2);
    // Coincidences among {1, λ₁} × {μ, μλ₂} beyond the shared {0, ∞}:
    // μ = 1 and μλ₂ = μ are excluded by the input invariants, leaving
    // μ = λ₁, μλ₂ = 1, μλ₂ = λ₁. At most two can hold at once, and then
    // only the pair (μ = λ₁, μλ₂ = 1).
    let coincidences = [
        input.mu == input.lambda1,
        mu_l2 == ctx.one(),
        mu_l2 == input.lambda1,
    ]
    .iter()
    .filter(|&&c| c)
    .count();
    let overlap = 2 + coincidences;
    GenusClass {
        overlap,
        genus: 5 - overlap,
        irreducible: overlap <= 3,
    }
}

/// The Legendre parameter of the third quotient:
/// `λ₃ = (μλ₂−1)(μ−λ₁) / ((μλ₂−λ₁)(μ−1))`.
///
/// Errors on a vanishing denominator. The value itself may be 0 or 1;
/// that happens exactly when the configuration is not of genus 3, and
/// callers treat it as the genus-degenerate outcome.
pub fn lambda3(ctx: &FieldCtx, input: &HoweInput) -> Result<FieldElem> {
    let one = ctx.one();
    let mu_l2 = ctx.mul(&input.mu, &input.lambda2);
    let den = ctx.mul(&ctx.sub(&mu_l2, &input.lambda1), &ctx.sub(&input.mu, &one));
    if den.is_zero() {
        return Err(DomainError::GenusDegenerate.into());
    }
    let num = ctx.mul(&ctx.sub(&mu_l2, &one), &ctx.sub(&input.mu, &input.lambda1));
    ctx.div(&num, &den)
}

/// The quadratic `μ²λ₂(1−λ₃) − μ(λ₁λ₂−λ₂λ₃−λ₃λ₁+1) + λ₁(1−λ₃) = 0`
/// recovering μ from a Legendre triple, with its discriminant
/// `D = (λ₁λ₂−λ₂λ₃−λ₃λ₁+1)² − 4λ₁λ₂(1−λ₃)²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuQuadratic {
    /// `[μ², μ, 1]` coefficients: `λ₂(1−λ₃)`, `−(λ₁λ₂−λ₂λ₃−λ₃λ₁+1)`, `λ₁(1−λ₃)`.
    pub coeffs: [FieldElem; 3],
    pub discriminant: FieldElem,
    /// Whether `D` is a square in the ambient field; when false the two μ
    /// values exist only in the quadratic extension and `roots` is empty.
    pub discriminant_is_square: bool,
    /// Roots in the ambient field: two, one (D = 0), or none.
    pub roots: Vec<FieldElem>,
}

pub fn mu_quadratic(
    ctx: &FieldCtx,
    lambda1: &FieldElem,
    lambda2: &FieldElem,
    lambda3: &FieldElem,
) -> Result<MuQuadratic> {
    let one = ctx.one();
    for v in [lambda1, lambda2, lambda3] {
        if v.is_zero() || *v == one {
            return Err(DomainError::DegenerateLegendre.into());
        }
    }
    let one_minus_l3 = ctx.sub(&one, lambda3);
    let lead = ctx.mul(lambda2, &one_minus_l3);
    if lead.is_zero() {
        return Err(DomainError::GenusDegenerate.into());
    }
    // λ₁λ₂ − λ₂λ₃ − λ₃λ₁ + 1
    let mid = ctx.add(
        &ctx.sub(
            &ctx.sub(&ctx.mul(lambda1, lambda2), &ctx.mul(lambda2, lambda3)),
            &ctx.mul(lambda3, lambda1),
        ),
        &one,
    );
    let tail = ctx.mul(lambda1, &one_minus_l3);
    let disc = ctx.sub(
        &ctx.square(&mid),
        &ctx.mul_u64(
            &ctx.mul(&ctx.mul(lambda1, lambda2), &ctx.square(&one_minus_l3)),
            4,
        ),
    );
    let mut roots = Vec::new();
    let is_square = ctx.is_square(&disc);
    if let Some(sq) = ctx.sqrt(&disc) {
        let half_lead = ctx.inv(&ctx.mul_u64(&lead, 2))?;
        roots.push(ctx.mul(&ctx.add(&mid, &sq), &half_lead));
        if !sq.is_zero() {
            roots.push(ctx.mul(&ctx.sub(&mid, &sq), &half_lead));
        }
        roots.sort_unstable();
    }
    Ok(MuQuadratic {
        coeffs: [lead, ctx.neg(&mid), tail],
        discriminant: disc,
        discriminant_is_square: is_square,
        roots,
    })
}

/// First hyperellipticity criterion: the Howe curve is hyperelliptic iff
/// `μ²λ₂ = λ₁`. Requires a genus-3 configuration.
pub fn is_hyperelliptic_mu(ctx: &FieldCtx, input: &HoweInput) -> Result<bool> {
    if classify_genus(ctx, input).genus != 3 {
        return Err(DomainError::NotGenus3.into());
    }
    Ok(ctx.mul(&ctx.square(&input.mu), &input.lambda2) == input.lambda1)
}

/// Second hyperellipticity criterion: `D = 0` for the discriminant of the
/// μ-quadratic at `(λ₁, λ₂, λ₃)`.
pub fn is_hyperelliptic_d(
    ctx: &FieldCtx,
    lambda1: &FieldElem,
    lambda2: &FieldElem,
    lambda3: &FieldElem,
) -> Result<bool> {
    let one = ctx.one();
    for v in [lambda1, lambda2, lambda3] {
        if v.is_zero() || *v == one {
            return Err(DomainError::DegenerateLegendre.into());
        }
    }
    let mid = ctx.add(
        &ctx.sub(
            &ctx.sub(&ctx.mul(lambda1, lambda2), &ctx.mul(lambda2, lambda3)),
            &ctx.mul(lambda3, lambda1),
        ),
        &one,
    );
    let d = ctx.sub(
        &ctx.square(&mid),
        &ctx.mul_u64(
            &ctx.mul(
                &ctx.mul(lambda1, lambda2),
                &ctx.square(&ctx.sub(&one, lambda3)),
            ),
            4,
        ),
    );
    Ok(d.is_zero())
}

/// The λ₃ values compatible with hyperellipticity for given λ₁, λ₂ — the
/// roots of `D = 0` viewed as a quadratic in λ₃:
///
/// - `λ₁ ≠ λ₂`: the set `{(√λ₁(λ₂−1) ± √λ₂(λ₁−1))² / (λ₁−λ₂)²}`, with the
///   square roots lifted up the tower when they leave the input field;
/// - `λ₁ = λ₂`: the single value `(λ₁+1)²/(4λ₁)`.
///
/// Every returned value satisfies `D(λ₁, λ₂, λ₃) = 0`.
pub fn lambda3_hyperelliptic(
    tower: &Tower,
    lambda1: &FieldElem,
    lambda2: &FieldElem,
) -> Result<Vec<FieldElem>> {
    let ctx = tower.ctx(lambda1.degree().max(lambda2.degree()));
    let l1 = tower.embed(lambda1, ctx.k())?;
    let l2 = tower.embed(lambda2, ctx.k())?;
    let one = ctx.one();
    for v in [&l1, &l2] {
        if v.is_zero() || *v == one {
            return Err(DomainError::DegenerateLegendre.into());
        }
    }
    if l1 == l2 {
        let num = ctx.square(&ctx.add(&l1, &one));
        let den = ctx.mul_u64(&l1, 4);
        return Ok(alloc::vec![ctx.div(&num, &den)?]);
    }
    let s1 = tower.sqrt_lift(&l1)?;
    let s2 = tower.sqrt_lift(&l2)?;
    let k = s1.degree().max(s2.degree());
    let up = tower.ctx(k);
    let s1 = tower.embed(&s1, k)?;
    let s2 = tower.embed(&s2, k)?;
    let l1u = tower.embed(&l1, k)?;
    let l2u = tower.embed(&l2, k)?;
    let one_up = up.one();
    let a = up.mul(&s1, &up.sub(&l2u, &one_up));
    let b = up.mul(&s2, &up.sub(&l1u, &one_up));
    let den_inv = up.inv(&up.square(&up.sub(&l1u, &l2u)))?;
    let mut out = alloc::vec![
        up.mul(&up.square(&up.add(&a, &b)), &den_inv),
        up.mul(&up.square(&up.sub(&a, &b)), &den_inv),
    ];
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// The equal-parameter family `λ₁ = λ₂ = λ`, `μ = −1` is hyperelliptic and
/// superspecial iff `H_p(λ) = H_p(λ²) = 0`. Rejects `λ ∈ {0, ±1}` (the
/// third quotient degenerates at `λ² = 1`).
pub fn equal_lambda_family_superspecial(ctx: &FieldCtx, lambda: &FieldElem) -> Result<bool> {
    let one = ctx.one();
    if lambda.is_zero() || *lambda == one || *lambda == ctx.neg(&one) {
        return Err(DomainError::DegenerateLegendre.into());
    }
    let h = hasse_poly(ctx.p())?;
    Ok(h.eval(ctx, lambda).is_zero() && h.eval(ctx, &ctx.square(lambda)).is_zero())
}
