//! Dense univariate polynomials over a tower field.
//!
//! Degrees stay small here (at most `4(p−1)` in the Cartier–Manin power),
//! so everything is schoolbook; no FFT. The zero polynomial is the empty
//! coefficient vector and `degree()` returns `None` for it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{DomainError, InternalError, Result};
use crate::field::{FieldCtx, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(coeffs: Vec<FieldElem>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one(ctx: &FieldCtx) -> Poly {
        Poly {
            coeffs: vec![ctx.one()],
        }
    }

    /// The monomial `c·x^n`.
    pub fn monomial(ctx: &FieldCtx, c: FieldElem, n: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ctx.zero(); n + 1];
        coeffs[n] = c;
        Poly { coeffs }
    }

    /// Build from any coefficient-like sequence through a mapping closure.
    pub fn from_fn<T: Copy>(ctx: &FieldCtx, src: &[T], f: impl Fn(T) -> FieldElem) -> Poly {
        let _ = ctx;
        Poly::new(src.iter().map(|&c| f(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `x^n` (zero beyond the degree).
    pub fn coeff(&self, ctx: &FieldCtx, n: usize) -> FieldElem {
        self.coeffs.get(n).copied().unwrap_or_else(|| ctx.zero())
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.add(&self.coeff(ctx, i), &other.coeff(ctx, i)));
        }
        Poly::new(out)
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.sub(&self.coeff(ctx, i), &other.coeff(ctx, i)));
        }
        Poly::new(out)
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, ctx: &FieldCtx, c: &FieldElem) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| ctx.mul(a, c)).collect())
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| ctx.neg(a)).collect())
    }

    pub fn divrem(&self, ctx: &FieldCtx, den: &Poly) -> Result<(Poly, Poly)> {
        if den.is_zero() {
            return Err(DomainError::DivisionByZero.into());
        }
        let db = den.coeffs.len();
        let mut rem = self.clone();
        if rem.coeffs.len() < db {
            return Ok((Poly::zero(), rem));
        }
        let mut quot = vec![ctx.zero(); rem.coeffs.len() - db + 1];
        let lead_inv = ctx.inv(&den.leading().unwrap())?;
        while rem.coeffs.len() >= db && !rem.is_zero() {
            let shift = rem.coeffs.len() - db;
            let c = ctx.mul(&rem.leading().unwrap(), &lead_inv);
            quot[shift] = c;
            for (j, bj) in den.coeffs.iter().enumerate() {
                let sub = ctx.mul(&c, bj);
                rem.coeffs[shift + j] = ctx.sub(&rem.coeffs[shift + j], &sub);
            }
            rem.trim();
        }
        Ok((Poly::new(quot), rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, ctx: &FieldCtx, other: &Poly) -> Result<Poly> {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        while !r1.is_zero() {
            let (_, rem) = r0.divrem(ctx, &r1)?;
            r0 = r1;
            r1 = rem;
        }
        if let Some(lead) = r0.leading() {
            let inv = ctx.inv(&lead)?;
            r0 = r0.scale(ctx, &inv);
        }
        Ok(r0)
    }

    /// Full power by binary exponentiation (no modulus; degrees stay small).
    pub fn pow(&self, ctx: &FieldCtx, e: u64) -> Poly {
        if e == 0 {
            return Poly::one(ctx);
        }
        let mut base = self.clone();
        let mut acc: Option<Poly> = None;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(ctx, &base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ctx, &base);
            }
        }
        acc.unwrap()
    }

    /// `self^e mod m` by binary exponentiation.
    pub fn pow_mod(&self, ctx: &FieldCtx, e: u128, m: &Poly) -> Result<Poly> {
        let mut base = self.divrem(ctx, m)?.1;
        let mut acc = Poly::one(ctx).divrem(ctx, m)?.1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base).divrem(ctx, m)?.1;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ctx, &base).divrem(ctx, m)?.1;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, ctx: &FieldCtx, x: &FieldElem) -> FieldElem {
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = ctx.mul(&acc, x);
            acc = ctx.add(&acc, c);
        }
        acc
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(ctx.mul_u64(c, i as u64));
        }
        Poly::new(out)
    }

    /// `gcd(f, f') = const`; false for the zero polynomial.
    pub fn is_squarefree(&self, ctx: &FieldCtx) -> Result<bool> {
        if self.is_zero() {
            return Ok(false);
        }
        let g = self.gcd(ctx, &self.derivative(ctx))?;
        Ok(g.degree() == Some(0))
    }
}

/// All roots of `f` in `ctx`, sorted in canonical element order.
///
/// Works by isolating the distinct-root part `gcd(f, x^q − x)` and then
/// splitting it with the quadratic-character map `(x + c)^{(q−1)/2}`,
/// scanning shifts `c` in canonical order, so the result (and the work
/// done) is deterministic.
pub fn roots(ctx: &FieldCtx, f: &Poly) -> Result<Vec<FieldElem>> {
    if f.is_zero() {
        return Err(DomainError::DivisionByZero.into());
    }
    let x = Poly::monomial(ctx, ctx.one(), 1);
    let xq = x.pow_mod(ctx, ctx.q(), f)?;
    let linear_part = f.gcd(ctx, &xq.sub(ctx, &x))?;
    let mut out = Vec::new();
    split_roots(ctx, &linear_part, &mut out)?;
    out.sort_unstable();
    Ok(out)
}

fn split_roots(ctx: &FieldCtx, h: &Poly, out: &mut Vec<FieldElem>) -> Result<()> {
    match h.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            // root of c1·x + c0
            let c0 = h.coeff(ctx, 0);
            let c1 = h.coeff(ctx, 1);
            out.push(ctx.neg(&ctx.div(&c0, &c1)?));
            return Ok(());
        }
        _ => {}
    }
    let half = (ctx.q() - 1) / 2;
    for c in ctx.elements() {
        let shifted = Poly::new(vec![c, ctx.one()]);
        let w = shifted.pow_mod(ctx, half, h)?;
        let g = h.gcd(ctx, &w.sub(ctx, &Poly::one(ctx)))?;
        let d = g.degree().unwrap_or(0);
        if d > 0 && d < h.degree().unwrap() {
            let (cofactor, rem) = h.divrem(ctx, &g)?;
            debug_assert!(rem.is_zero());
            split_roots(ctx, &g, out)?;
            split_roots(ctx, &cofactor, out)?;
            return Ok(());
        }
    }
    Err(InternalError::RootSplitStalled.into())
}
