//! Supersingularity and superspeciality tests.
//!
//! Three layers, from elliptic to genus 3:
//!
//! - the Deuring polynomial `H_p(t) = Σ binom((p−1)/2, i)² tⁱ`, whose roots
//!   in `F_{p²}` are exactly the supersingular Legendre parameters;
//! - the Hasse invariant of a quartic model `v² = g(u)`: the coefficient
//!   of `u^{p−1}` in `g^{(p−1)/2}`, zero iff the curve is supersingular;
//! - the 3×3 Hasse–Witt (Cartier–Manin) matrix of a genus-3 model
//!   `y² = f(x)` with `deg f = 8`: entry `(i, j)` is the coefficient of
//!   `x^{ip−j}` in `f^{(p−1)/2}`; the matrix vanishes iff the curve is
//!   superspecial.
//!
//! All functions are pure; they parallelize trivially over parameter grids.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{DomainError, InternalError, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;

/// The Deuring polynomial `H_p` with coefficients `binom((p−1)/2, i)²`
/// reduced mod `p`. Palindromic with `H_p(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HassePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl HassePoly {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluate at an element of any field of characteristic `p`.
    pub fn eval(&self, ctx: &FieldCtx, x: &FieldElem) -> FieldElem {
        assert_eq!(ctx.p(), self.p, "characteristic mismatch");
        let mut acc = ctx.zero();
        for &c in self.coeffs.iter().rev() {
            acc = ctx.mul(&acc, x);
            acc = ctx.add(&acc, &ctx.from_u64(c));
        }
        acc
    }
}

/// Build `H_p` by the multiplicative binomial recurrence
/// `binom(n, i+1) = binom(n, i)·(n−i)/(i+1)` mod `p`, then squaring.
pub fn hasse_poly(p: u64) -> Result<HassePoly> {
    if !crate::field::is_odd_prime(p) {
        return Err(DomainError::NotAnOddPrime(p).into());
    }
    let n = (p - 1) / 2;
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut binom = 1u64;
    coeffs.push(1);
    for i in 0..n {
        let num = (n - i) % p;
        let den = crate::field::invmod_u64((i + 1) % p, p);
        binom = binom * num % p * den % p;
        coeffs.push(binom * binom % p);
    }
    Ok(HassePoly { p, coeffs })
}

/// Supersingularity of the Legendre curve `y² = x(x−1)(x−λ)`:
/// true iff `H_p(λ) = 0`. Rejects the degenerate parameters `λ ∈ {0, 1}`.
pub fn is_supersingular_legendre(ctx: &FieldCtx, lambda: &FieldElem) -> Result<bool> {
    if lambda.is_zero() || *lambda == ctx.one() {
        return Err(DomainError::DegenerateLegendre.into());
    }
    let h = hasse_poly(ctx.p())?;
    Ok(h.eval(ctx, lambda).is_zero())
}

/// All supersingular Legendre parameters in `F_{p²} \ {0, 1}`, found by
/// exhaustive evaluation of `H_p` and returned in canonical element order.
///
/// Postcondition check: every root must be a fourth power in `F_{p²}`;
/// a violation is reported as an internal error.
pub fn supersingular_lambdas(ctx2: &FieldCtx) -> Result<Vec<FieldElem>> {
    assert_eq!(ctx2.k(), 2, "supersingular parameters live in F_{{p^2}}");
    let p = ctx2.p();
    let h = hasse_poly(p)?;
    let one = ctx2.one();
    let mut out = Vec::new();
    for x in ctx2.elements() {
        if x.is_zero() || x == one {
            continue;
        }
        if h.eval(ctx2, &x).is_zero() {
            if !ctx2.is_fourth_power(&x) {
                return Err(InternalError::FourthPowerPostcondition { p }.into());
            }
            out.push(x);
        }
    }
    Ok(out)
}

/// Hasse invariant of the genus-1 model `v² = g(u)` for a squarefree
/// quartic `g`: the coefficient of `u^{p−1}` in `g^{(p−1)/2}`. The curve is
/// supersingular iff the result is zero.
pub fn hasse_invariant_quartic(ctx: &FieldCtx, g: &Poly) -> Result<FieldElem> {
    if g.degree() != Some(4) {
        return Err(DomainError::WrongDegree {
            expected: 4,
            got: g.degree().unwrap_or(0),
        }
        .into());
    }
    if !g.is_squarefree(ctx)? {
        return Err(DomainError::RepeatedRoots.into());
    }
    let p = ctx.p();
    let power = g.pow(ctx, (p - 1) / 2);
    Ok(power.coeff(ctx, (p - 1) as usize))
}

/// The 3×3 Cartier–Manin matrix of `y² = f(x)`, `deg f = 8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseWittMatrix {
    entries: [[FieldElem; 3]; 3],
    source: Poly,
}

impl HasseWittMatrix {
    /// `entries[i][j]` is the coefficient of `x^{(i+1)p − (j+1)}` in
    /// `f^{(p−1)/2}`.
    pub fn entries(&self) -> &[[FieldElem; 3]; 3] {
        &self.entries
    }

    /// The octic the matrix was computed from.
    pub fn source(&self) -> &Poly {
        &self.source
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }
}

/// Compute the Hasse–Witt matrix by binary powering of `f` with dense
/// polynomial multiplication.
pub fn hasse_witt(ctx: &FieldCtx, f: &Poly) -> Result<HasseWittMatrix> {
    if f.degree() != Some(8) {
        return Err(DomainError::WrongDegree {
            expected: 8,
            got: f.degree().unwrap_or(0),
        }
        .into());
    }
    if !f.is_squarefree(ctx)? {
        return Err(DomainError::RepeatedRoots.into());
    }
    let p = ctx.p();
    let power = f.pow(ctx, (p - 1) / 2);
    let mut entries = [[ctx.zero(); 3]; 3];
    for i in 1..=3u64 {
        for j in 1..=3u64 {
            entries[i as usize - 1][j as usize - 1] = power.coeff(ctx, (i * p - j) as usize);
        }
    }
    Ok(HasseWittMatrix {
        entries,
        source: f.clone(),
    })
}

/// Superspeciality of the standard-form curve
/// `y² = (x⁴ − ax² + 1)(x⁴ − bx² + 1)` with `a, b ∈ F_{p²}`: true iff its
/// Hasse–Witt matrix is the zero matrix. Rejects singular parameters
/// (`a` or `b` in `{±2}`, or `a = b`).
///
/// The octic is even, so `f^{(p−1)/2} = G(x²)` with
/// `G = ((z²−az+1)(z²−bz+1))^{(p−1)/2}`; matrix entries at odd exponents
/// vanish identically and the remaining five are coefficients of `G`. This
/// halves every intermediate degree. Agreement with [`hasse_witt`] on the
/// full octic is exercised exhaustively in the test suite.
pub fn is_superspecial(ctx2: &FieldCtx, a: &FieldElem, b: &FieldElem) -> Result<bool> {
    assert_eq!(ctx2.k(), 2, "standard-form parameters live in F_{{p^2}}");
    if !crate::standard_form::nonsingular_ab(ctx2, a, b) {
        return Err(DomainError::SingularCurve.into());
    }
    let p = ctx2.p();
    let fp2 = Fp2::new(ctx2);
    // (z² − az + 1)(z² − bz + 1)
    let qa = fp2.quadratic(a);
    let qb = fp2.quadratic(b);
    let quartic = fp2.mul_poly(&qa, &qb);
    let g = fp2.pow_poly(&quartic, (p - 1) / 2);
    // Coefficients of x^{ip−j} in G(x²) for i+j even: indices (ip−j)/2.
    let targets = [
        (p - 1) / 2,     // (i, j) = (1, 1)
        (p - 3) / 2,     // (1, 3)
        p - 1,           // (2, 2)
        (3 * p - 1) / 2, // (3, 1)
        (3 * p - 3) / 2, // (3, 3)
    ];
    Ok(targets.iter().all(|&ix| g.is_zero_at(ix as usize)))
}

// --- fast arithmetic for polynomials over F_{p²} = F_p[t]/(t² − r) ---
//
// Coefficient pairs are kept reduced; convolution sums accumulate raw
// products and reduce once per output coefficient, which cannot overflow:
// partial products are < p² and the accumulators are 128-bit.

struct Fp2 {
    p: u64,
    r: u64,
}

struct Fp2Poly {
    c0: Vec<u64>,
    c1: Vec<u64>,
}

impl Fp2Poly {
    fn len(&self) -> usize {
        self.c0.len()
    }

    fn is_zero_at(&self, i: usize) -> bool {
        i >= self.len() || (self.c0[i] == 0 && self.c1[i] == 0)
    }
}

impl Fp2 {
    fn new(ctx2: &FieldCtx) -> Fp2 {
        // modulus is t² + m0 with m0 = p − r
        let m0 = ctx2.modulus()[0];
        Fp2 {
            p: ctx2.p(),
            r: (ctx2.p() - m0) % ctx2.p(),
        }
    }

    /// `z² − az + 1` as a coefficient-pair polynomial.
    fn quadratic(&self, a: &FieldElem) -> Fp2Poly {
        let ac = a.coeffs();
        let neg = |v: u64| if v == 0 { 0 } else { self.p - v };
        Fp2Poly {
            c0: vec![1, neg(ac[0]), 1],
            c1: vec![0, neg(ac[1]), 0],
        }
    }

    fn mul_poly(&self, a: &Fp2Poly, b: &Fp2Poly) -> Fp2Poly {
        let n = a.len() + b.len() - 1;
        let mut c0 = vec![0u64; n];
        let mut c1 = vec![0u64; n];
        let p = self.p as u128;
        for m in 0..n {
            let lo = m.saturating_sub(b.len() - 1);
            let hi = m.min(a.len() - 1);
            let (mut s00, mut s11, mut s01) = (0u128, 0u128, 0u128);
            for i in lo..=hi {
                let j = m - i;
                s00 += (a.c0[i] * b.c0[j]) as u128;
                s11 += (a.c1[i] * b.c1[j]) as u128;
                s01 += (a.c0[i] * b.c1[j] + a.c1[i] * b.c0[j]) as u128;
            }
            c0[m] = ((s00 % p + (self.r as u128) * (s11 % p)) % p) as u64;
            c1[m] = (s01 % p) as u64;
        }
        Fp2Poly { c0, c1 }
    }

    fn pow_poly(&self, f: &Fp2Poly, e: u64) -> Fp2Poly {
        assert!(e > 0);
        let mut acc: Option<Fp2Poly> = None;
        let mut base = Fp2Poly {
            c0: f.c0.clone(),
            c1: f.c1.clone(),
        };
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => self.mul_poly(&a, &base),
                    None => Fp2Poly {
                        c0: base.c0.clone(),
                        c1: base.c1.clone(),
                    },
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = self.mul_poly(&base, &base);
        }
        acc.unwrap()
    }
}
