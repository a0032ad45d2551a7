//! Deterministic construction of and exact arithmetic in the tower
//! `F_p ⊂ F_{p²} ⊂ F_{p⁴} ⊂ F_{p⁸}` for an odd prime `p`.
//!
//! Every field is represented directly over `F_p` as `F_p[t]/(m(t))` with a
//! deterministically chosen monic irreducible `m`:
//!
//! - `k = 1`: `m = t` by convention (elements are constants);
//! - `k = 2`: `m = t² − r` with `r` the least positive quadratic
//!   non-residue mod `p`;
//! - `k ∈ {4, 8}`: the first irreducible in the scan that enumerates monic
//!   polynomials `t^k + c_{k-1}t^{k-1} + … + c_0` by the integer
//!   `c_0 + c_1·p + c_2·p² + …` in increasing order.
//!
//! Elements are coefficient vectors in the generator `t`, always fully
//! reduced, so equality is plain coefficient comparison. The *canonical
//! order* on elements compares the integers `c_0 + c_1·p + …`; scans,
//! tie-breaks, and sorted output all use it. Embeddings up the tower send
//! the generator of each level to the canonically least root of its modulus
//! in the next level, fixed once at construction.
//!
//! Contexts are immutable after construction and safe to share; elements
//! are plain `Copy` values. Nothing here mutates shared state.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{DomainError, Error, InternalError, Result};
use crate::poly::Poly;

/// Largest supported characteristic. Everything is exact and
/// single-machine-word; the enumeration and counting routines are built for
/// small primes.
pub const MAX_PRIME: u64 = 9973;

const MAX_K: usize = 8;

/// Trial-division primality test; adequate for the supported range.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn invmod_u64(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p); a must be nonzero mod p.
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        let tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    debug_assert_eq!(old_r, 1, "invmod of non-unit");
    old_s.rem_euclid(p as i128) as u64
}

/// An element of a tower field, tagged with `(p, k)`. Coefficients are
/// little-endian in the generator and always reduced to `[0, p)`; unused
/// slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    p: u64,
    k: u8,
    c: [u64; MAX_K],
}

impl FieldElem {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k as usize
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c[..self.k as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// The canonical index `c_0 + c_1·p + … + c_{k-1}·p^{k-1}`.
    pub fn index(&self) -> u128 {
        let mut acc = 0u128;
        for &ci in self.c[..self.k as usize].iter().rev() {
            acc = acc * self.p as u128 + ci as u128;
        }
        acc
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.k)
            .cmp(&(other.p, other.k))
            .then_with(|| self.index().cmp(&other.index()))
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElem {
    /// Canonical string form `c0+c1*t+c2*t^2+…` with every coefficient
    /// printed, so output is positionally unambiguous.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c[0])?;
        for (i, &ci) in self.c[1..self.k as usize].iter().enumerate() {
            if i == 0 {
                write!(f, "+{ci}*t")?;
            } else {
                write!(f, "+{ci}*t^{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}({})", self.p, self.k, self)
    }
}

/// Arithmetic context for `F_{p^k}`, `k ∈ {1, 2, 4, 8}`. Construction is
/// deterministic: the same `(p, k)` always yields the same modulus, the
/// same embedding of the level below, and the same Tonelli–Shanks
/// non-residue.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    k: usize,
    /// Monic modulus, dense little-endian, length `k + 1`.
    modulus: Vec<u64>,
    base: Option<Box<FieldCtx>>,
    /// Image of the base field's generator in this field: the canonically
    /// least root of the base modulus.
    base_gen_image: Option<FieldElem>,
    /// Least quadratic non-residue in canonical element order.
    ts_nonresidue: FieldElem,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        // Deterministic construction makes (p, k) a complete identity.
        self.p == other.p && self.k == other.k
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Build the context for `F_{p^k}`. Base levels are constructed
    /// recursively, so a degree-8 context carries the whole tower.
    pub fn new(p: u64, k: usize) -> Result<FieldCtx> {
        if !is_odd_prime(p) {
            return Err(DomainError::NotAnOddPrime(p).into());
        }
        if p > MAX_PRIME {
            return Err(DomainError::PrimeTooLarge { p, max: MAX_PRIME }.into());
        }
        if !matches!(k, 1 | 2 | 4 | 8) {
            return Err(DomainError::UnsupportedDegree(k).into());
        }

        let modulus = select_modulus(p, k);
        let base = if k == 1 {
            None
        } else {
            Some(Box::new(FieldCtx::new(p, k / 2)?))
        };

        let mut ctx = FieldCtx {
            p,
            k,
            modulus,
            base,
            base_gen_image: None,
            ts_nonresidue: FieldElem {
                p,
                k: k as u8,
                c: [0; MAX_K],
            },
        };
        ctx.ts_nonresidue = ctx.find_nonresidue();
        if let Some(base) = ctx.base.as_deref() {
            let m = Poly::from_fn(&ctx, &base.modulus, |c| ctx.from_u64(c));
            let mut roots = crate::poly::roots(&ctx, &m)?;
            roots.sort_unstable();
            let img = *roots.first().ok_or(InternalError::Invariant(
                "base modulus has no root upstairs",
            ))?;
            ctx.base_gen_image = Some(img);
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Field size `q = p^k`.
    pub fn q(&self) -> u128 {
        (self.p as u128).pow(self.k as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn base(&self) -> Option<&FieldCtx> {
        self.base.as_deref()
    }

    pub fn contains(&self, x: &FieldElem) -> bool {
        x.p == self.p && x.k as usize == self.k
    }

    fn chk(&self, x: &FieldElem) {
        assert!(
            self.contains(x),
            "field context mismatch: element of F_{}^{} used in F_{}^{}",
            x.p,
            x.k,
            self.p,
            self.k
        );
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            p: self.p,
            k: self.k as u8,
            c: [0; MAX_K],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    /// The residue of an integer constant.
    pub fn from_u64(&self, c: u64) -> FieldElem {
        let mut e = self.zero();
        e.c[0] = c % self.p;
        e
    }

    /// `-c` for an integer constant; convenient for small signed values.
    pub fn from_i64(&self, c: i64) -> FieldElem {
        let r = c.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }

    /// Element from explicit residues; strict about range and length.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.k {
            return Err(DomainError::InvalidCoefficients(format!(
                "got {} coefficients for degree {}",
                coeffs.len(),
                self.k
            ))
            .into());
        }
        let mut e = self.zero();
        for (i, &ci) in coeffs.iter().enumerate() {
            if ci >= self.p {
                return Err(DomainError::InvalidCoefficients(format!(
                    "residue {ci} out of range [0, {})",
                    self.p
                ))
                .into());
            }
            e.c[i] = ci;
        }
        Ok(e)
    }

    /// The generator `t` (zero in the prime field, whose modulus is `t`).
    pub fn gen(&self) -> FieldElem {
        let mut e = self.zero();
        if self.k > 1 {
            e.c[1] = 1;
        }
        e
    }

    /// Inverse of [`FieldElem::index`].
    pub fn elem_from_index(&self, mut idx: u128) -> FieldElem {
        let mut e = self.zero();
        for i in 0..self.k {
            e.c[i] = (idx % self.p as u128) as u64;
            idx /= self.p as u128;
        }
        debug_assert_eq!(idx, 0, "index out of range");
        e
    }

    /// All field elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q()).map(move |i| self.elem_from_index(i))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.chk(a);
        self.chk(b);
        let mut out = self.zero();
        for i in 0..self.k {
            let s = a.c[i] + b.c[i];
            out.c[i] = if s >= self.p { s - self.p } else { s };
        }
        out
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.chk(a);
        self.chk(b);
        let mut out = self.zero();
        for i in 0..self.k {
            out.c[i] = if a.c[i] >= b.c[i] {
                a.c[i] - b.c[i]
            } else {
                a.c[i] + self.p - b.c[i]
            };
        }
        out
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        self.chk(a);
        let mut out = self.zero();
        for i in 0..self.k {
            out.c[i] = if a.c[i] == 0 { 0 } else { self.p - a.c[i] };
        }
        out
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.chk(a);
        self.chk(b);
        let k = self.k;
        // Schoolbook product; raw u64 accumulation is safe because
        // k·(p−1)² < 2^64 for p ≤ MAX_PRIME.
        let mut prod = [0u64; 2 * MAX_K - 1];
        for i in 0..k {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] += a.c[i] * b.c[j];
            }
        }
        for v in prod.iter_mut() {
            *v %= self.p;
        }
        // Fold x^i, i ≥ k, down with the monic modulus.
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let m = self.modulus[j];
                if m != 0 {
                    prod[i - k + j] = (prod[i - k + j] + c * (self.p - m)) % self.p;
                }
            }
        }
        let mut out = self.zero();
        out.c[..k].copy_from_slice(&prod[..k]);
        out
    }

    pub fn square(&self, a: &FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// `a·c` for an integer constant `c`.
    pub fn mul_u64(&self, a: &FieldElem, c: u64) -> FieldElem {
        self.chk(a);
        let c = c % self.p;
        let mut out = self.zero();
        for i in 0..self.k {
            out.c[i] = a.c[i] * c % self.p;
        }
        out
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.chk(a);
        if a.is_zero() {
            return Err(DomainError::DivisionByZero.into());
        }
        if self.k == 1 {
            return Ok(self.from_u64(invmod_u64(a.c[0], self.p)));
        }
        // Extended Euclid in F_p[t] on (modulus, a).
        let p = self.p;
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = a.coeffs().to_vec();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, rem) = rp_divrem(&r0, &r1, p);
            r0 = r1;
            r1 = rem;
            let qs1 = rp_mul(&q, &s1, p);
            let new_s = rp_sub(&s0, &qs1, p);
            s0 = s1;
            s1 = new_s;
        }
        // r0 = gcd (a unit since the modulus is irreducible and a ≠ 0).
        debug_assert_eq!(r0.len(), 1);
        let scale = invmod_u64(r0[0], p);
        let mut out = self.zero();
        for (i, &ci) in s0.iter().enumerate() {
            out.c[i] = ci * scale % p;
        }
        Ok(out)
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; `pow(0, 0) = 1` by convention.
    pub fn pow(&self, a: &FieldElem, e: u128) -> FieldElem {
        self.chk(a);
        if e == 0 {
            return self.one();
        }
        let mut base = *a;
        let mut acc = self.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// `x^p`; applying it `d` times fixes exactly the subfield `F_{p^d}`.
    pub fn frobenius(&self, a: &FieldElem) -> FieldElem {
        self.pow(a, self.p as u128)
    }

    /// Euler criterion: zero counts as a square.
    pub fn is_square(&self, a: &FieldElem) -> bool {
        self.chk(a);
        if a.is_zero() {
            return true;
        }
        self.pow(a, (self.q() - 1) / 2) == self.one()
    }

    /// Fourth-power test: for `4 | q − 1` this is `x^{(q−1)/4} = 1`; in
    /// general `x^{(q−1)/gcd(4, q−1)} = 1`, which coincides on the stated
    /// domain. Zero counts as a fourth power.
    pub fn is_fourth_power(&self, a: &FieldElem) -> bool {
        self.chk(a);
        if a.is_zero() {
            return true;
        }
        let q1 = self.q() - 1;
        let g = if q1.is_multiple_of(4) { 4 } else { 2 };
        self.pow(a, q1 / g) == self.one()
    }

    /// Tonelli–Shanks square root, or `None` for a non-square. Of the two
    /// roots, returns the one that comes first in canonical element order;
    /// together with the deterministic non-residue this fixes every sign
    /// choice once and for all.
    pub fn sqrt(&self, a: &FieldElem) -> Option<FieldElem> {
        self.chk(a);
        if a.is_zero() {
            return Some(*a);
        }
        let q1 = self.q() - 1;
        if self.pow(a, q1 / 2) != self.one() {
            return None;
        }
        let s = q1.trailing_zeros();
        let m = q1 >> s;
        let mut c = self.pow(&self.ts_nonresidue, m);
        let mut t = self.pow(a, m);
        let mut r = self.pow(a, m.div_ceil(2));
        let one = self.one();
        let mut level = s;
        while t != one {
            // Least i with t^(2^i) = 1; always < level.
            let mut i = 0;
            let mut probe = t;
            while probe != one {
                probe = self.square(&probe);
                i += 1;
            }
            let mut b = c;
            for _ in 0..level - i - 1 {
                b = self.square(&b);
            }
            r = self.mul(&r, &b);
            c = self.square(&b);
            t = self.mul(&t, &c);
            level = i;
        }
        debug_assert_eq!(self.square(&r), *a);
        let neg = self.neg(&r);
        Some(if r <= neg { r } else { neg })
    }

    fn find_nonresidue(&self) -> FieldElem {
        let q1 = self.q() - 1;
        let one = self.one();
        for x in self.elements().skip(1) {
            if self.pow(&x, q1 / 2) != one {
                return x;
            }
        }
        unreachable!("every finite field of odd order has a non-residue")
    }

    /// Image of an element of the base field (one level down).
    pub fn embed_from_base(&self, x: &FieldElem) -> FieldElem {
        let base = self.base.as_deref().expect("prime field has no base");
        base.chk(x);
        let g = self.base_gen_image.expect("embedding image missing");
        // Horner in the generator image.
        let mut acc = self.zero();
        for &ci in x.coeffs().iter().rev() {
            acc = self.mul(&acc, &g);
            acc = self.add(&acc, &self.from_u64(ci));
        }
        acc
    }

    /// Preimage under [`FieldCtx::embed_from_base`], if the element lies in
    /// the embedded base field.
    #[allow(clippy::needless_range_loop)] // index loops mirror the matrix layout
    pub fn descend_to_base(&self, x: &FieldElem) -> Option<FieldElem> {
        let base = self.base.as_deref()?;
        self.chk(x);
        let g = self.base_gen_image.expect("embedding image missing");
        // Solve sum_j y_j g^j = x by Gaussian elimination over F_p.
        let k = self.k;
        let d = base.k;
        let mut cols: Vec<FieldElem> = Vec::with_capacity(d);
        let mut acc = self.one();
        for _ in 0..d {
            cols.push(acc);
            acc = self.mul(&acc, &g);
        }
        // Augmented k×(d+1) matrix.
        let mut m = vec![vec![0u64; d + 1]; k];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..k {
                m[i][j] = col.c[i];
            }
        }
        for i in 0..k {
            m[i][d] = x.c[i];
        }
        let p = self.p;
        let mut rank_rows: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..d {
            let Some(pivot) = (row..k).find(|&r| m[r][col] != 0) else {
                return None; // dependent columns cannot happen; bail safely
            };
            m.swap(row, pivot);
            let inv = invmod_u64(m[row][col], p);
            for v in m[row].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..k {
                if r != row && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..=d {
                        let sub = f * m[row][c] % p;
                        m[r][c] = (m[r][c] + p - sub) % p;
                    }
                }
            }
            rank_rows.push(row);
            row += 1;
        }
        // Consistency: rows below the rank must have zero RHS.
        for r in row..k {
            if m[r][d] != 0 {
                return None;
            }
        }
        let mut coeffs = vec![0u64; d];
        for (col, &r) in rank_rows.iter().enumerate() {
            coeffs[col] = m[r][d];
        }
        Some(base.from_coeffs(&coeffs).expect("reduced residues"))
    }

    /// Parse the canonical element syntax `c0+c1*t+c2*t^2+…`. Terms may be
    /// omitted or reordered (`t^3+2` is accepted), but residues must lie in
    /// `[0, p)` and each power may appear at most once.
    pub fn parse_element(&self, s: &str) -> Result<FieldElem> {
        let err =
            |msg: &str| -> Error { DomainError::ParseElement(format!("{s:?}: {msg}")).into() };
        let mut coeffs = vec![None; self.k];
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coeff_str, pow): (&str, usize) = if let Some(rest) = term.strip_suffix("*t") {
                (rest, 1)
            } else if term == "t" {
                ("1", 1)
            } else if let Some(idx) = term.find("t^") {
                let pow: usize = term[idx + 2..].parse().map_err(|_| err("bad exponent"))?;
                let head = &term[..idx];
                let coeff = head.strip_suffix('*').unwrap_or(head);
                (if coeff.is_empty() { "1" } else { coeff }, pow)
            } else {
                (term, 0)
            };
            let coeff_str = coeff_str.trim();
            let c: u64 = coeff_str.parse().map_err(|_| err("bad coefficient"))?;
            if c >= self.p {
                return Err(err("residue out of range"));
            }
            if pow >= self.k {
                return Err(err("power exceeds field degree"));
            }
            if coeffs[pow].replace(c).is_some() {
                return Err(err("duplicate power"));
            }
        }
        let flat: Vec<u64> = coeffs.into_iter().map(|c| c.unwrap_or(0)).collect();
        self.from_coeffs(&flat)
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

// --- raw dense polynomial arithmetic over F_p (modulus bootstrap only) ---

fn rp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += (ai * bj % p) as u128;
        }
    }
    let mut out: Vec<u64> = out.into_iter().map(|v| (v % p as u128) as u64).collect();
    trim(&mut out);
    out
}

fn rp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        out.push((ai + p - bi) % p);
    }
    trim(&mut out);
    out
}

fn rp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: Vec<u64> = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![0u64; rem.len() - b.len() + 1];
    let lead_inv = invmod_u64(*b.last().unwrap(), p);
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * lead_inv % p;
        quot[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let sub = c * bj % p;
            rem[shift + j] = (rem[shift + j] + p - sub) % p;
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn rp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (_, rem) = rp_divrem(&r0, &r1, p);
        r0 = r1;
        r1 = rem;
    }
    r0
}

/// `x^e mod m` over F_p.
fn rp_pow_x_mod(e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let x = vec![0u64, 1];
    let mut base = rp_divrem(&x, m, p).1;
    let mut acc = vec![1u64];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = rp_divrem(&rp_mul(&acc, &base, p), m, p).1;
        }
        e >>= 1;
        if e > 0 {
            base = rp_divrem(&rp_mul(&base, &base, p), m, p).1;
        }
    }
    acc
}

/// Monic degree-k irreducibility over F_p: `x^{p^k} ≡ x (mod m)` and
/// `gcd(x^{p^d} − x, m) = 1` for every proper divisor `d` of `k`.
fn rp_is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    let xq = rp_pow_x_mod((p as u128).pow(k as u32), m, p);
    let x = vec![0u64, 1];
    if rp_sub(&xq, &x, p) != Vec::<u64>::new() {
        return false;
    }
    for d in 1..k {
        if !k.is_multiple_of(d) {
            continue;
        }
        let xd = rp_pow_x_mod((p as u128).pow(d as u32), m, p);
        let diff = rp_sub(&xd, &x, p);
        let g = rp_gcd(m, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn select_modulus(p: u64, k: usize) -> Vec<u64> {
    match k {
        1 => vec![0, 1],
        2 => {
            // Least positive quadratic non-residue via Euler's criterion.
            let r = (2..p)
                .find(|&r| mod_pow_u64(r, (p - 1) / 2, p) != 1)
                .expect("non-residue exists mod every odd prime");
            vec![p - r, 0, 1]
        }
        _ => {
            // Scan constant-through-leading coefficient vectors in
            // canonical (base-p integer) order; first irreducible wins.
            let mut n = 0u128;
            loop {
                let mut m = vec![0u64; k + 1];
                let mut rest = n;
                for slot in m.iter_mut().take(k) {
                    *slot = (rest % p as u128) as u64;
                    rest /= p as u128;
                }
                assert_eq!(rest, 0, "modulus scan exhausted");
                m[k] = 1;
                if rp_is_irreducible(&m, p) {
                    return m;
                }
                n += 1;
            }
        }
    }
}

fn mod_pow_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// The full tower `F_p ⊂ F_{p²} ⊂ F_{p⁴} ⊂ F_{p⁸}` with embeddings along
/// the unique path between levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    top: FieldCtx,
}

impl Tower {
    pub fn new(p: u64) -> Result<Tower> {
        Ok(Tower {
            top: FieldCtx::new(p, 8)?,
        })
    }

    pub fn prime(&self) -> u64 {
        self.top.p
    }

    /// The context at level `k ∈ {1, 2, 4, 8}`.
    pub fn ctx(&self, k: usize) -> &FieldCtx {
        let mut c = &self.top;
        loop {
            if c.k == k {
                return c;
            }
            c = c
                .base
                .as_deref()
                .unwrap_or_else(|| panic!("no tower level {k}"));
        }
    }

    /// Embed `x` into the level `k` at or above its own.
    pub fn embed(&self, x: &FieldElem, k: usize) -> Result<FieldElem> {
        let from = x.degree();
        if !matches!(k, 1 | 2 | 4 | 8) || k < from || !k.is_multiple_of(from) {
            return Err(DomainError::NoTowerPath { from, to: k }.into());
        }
        let mut cur = *x;
        let mut level = from;
        while level < k {
            level *= 2;
            cur = self.ctx(level).embed_from_base(&cur);
        }
        Ok(cur)
    }

    /// Express `x` in the level `d` below its own, if it lies there.
    pub fn descend(&self, x: &FieldElem, d: usize) -> Option<FieldElem> {
        let from = x.degree();
        if d > from || !from.is_multiple_of(d) || !matches!(d, 1 | 2 | 4 | 8) {
            return None;
        }
        let mut cur = *x;
        let mut level = from;
        while level > d {
            cur = self.ctx(level).descend_to_base(&cur)?;
            level /= 2;
        }
        Some(cur)
    }

    /// Smallest tower level whose field contains `x`.
    pub fn minimal_level(&self, x: &FieldElem) -> usize {
        let mut level = 1;
        while level < x.degree() {
            if self.descend(x, level).is_some() {
                return level;
            }
            level *= 2;
        }
        x.degree()
    }

    /// Square root of `x`, lifting up the tower as needed. Every element
    /// of `F_{p^k}` is a square in `F_{p^{2k}}`, so this only fails when
    /// `x` already lives at the top and is a non-square there.
    pub fn sqrt_lift(&self, x: &FieldElem) -> Result<FieldElem> {
        let mut level = x.degree();
        loop {
            let ctx = self.ctx(level);
            let lifted = self.embed(x, level)?;
            if let Some(r) = ctx.sqrt(&lifted) {
                return Ok(r);
            }
            if level == 8 {
                return Err(DomainError::TowerExhausted.into());
            }
            level *= 2;
        }
    }

    /// Embed two elements into their least common level.
    pub fn common(&self, a: &FieldElem, b: &FieldElem) -> Result<(FieldElem, FieldElem)> {
        let k = a.degree().max(b.degree());
        Ok((self.embed(a, k)?, self.embed(b, k)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn modulus_is_least_nonresidue_for_k2() {
        // Squares mod 7 are {1, 2, 4}, so 3 is the least non-residue.
        let f49 = FieldCtx::new(7, 2).unwrap();
        assert_eq!(f49.modulus(), &[4, 0, 1]); // t² − 3 = t² + 4
                                               // Squares mod 3 are {1}, so 2 is the least non-residue.
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]); // t² − 2 = t² + 1
    }

    #[test]
    fn prime_field_convention() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.modulus(), &[0, 1]);
        assert_eq!(f5.q(), 5);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldCtx::new(6, 2).is_err());
        assert!(FieldCtx::new(2, 2).is_err());
        assert!(FieldCtx::new(7, 3).is_err());
        assert!(FieldCtx::new(10007, 2).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        let three = f7.from_u64(3);
        assert_eq!(f7.inv(&three).unwrap(), f7.from_u64(5));
        assert_eq!(f7.pow(&three, 6), f7.one());
    }

    #[test]
    fn defining_relation_in_f9() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let t = f9.gen();
        assert_eq!(f9.mul(&t, &t), f9.from_u64(2));
        // t³ = t·t² = 2t.
        assert_eq!(f9.frobenius(&t), f9.mul_u64(&t, 2));
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f49 = FieldCtx::new(7, 2).unwrap();
        for c in 0..7 {
            let e = f49.from_u64(c);
            assert_eq!(f49.frobenius(&e), e);
        }
        for x in f49.elements() {
            assert_eq!(f49.frobenius(&f49.frobenius(&x)), x);
        }
    }

    #[test]
    fn square_detection_matches_exhaustive_table() {
        for p in [3u64, 5, 7, 11, 13] {
            for k in [1usize, 2] {
                let ctx = FieldCtx::new(p, k).unwrap();
                let mut squares: Vec<FieldElem> = ctx.elements().map(|x| ctx.square(&x)).collect();
                squares.sort_unstable();
                squares.dedup();
                for x in ctx.elements() {
                    assert_eq!(ctx.is_square(&x), squares.binary_search(&x).is_ok());
                }
            }
        }
    }

    #[test]
    fn sqrt_basics() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert!(!f7.is_square(&f7.from_u64(3)));
        assert_eq!(f7.sqrt(&f7.zero()), Some(f7.zero()));
        assert_eq!(f7.sqrt(&f7.one()), Some(f7.one()));
        assert_eq!(f7.sqrt(&f7.from_u64(3)), None);
        // sqrt(2) ∈ {3, 4}; 3 is canonically first.
        assert_eq!(f7.sqrt(&f7.from_u64(2)), Some(f7.from_u64(3)));
    }

    #[test]
    fn sqrt_squares_back_everywhere() {
        for (p, k) in [(13u64, 2usize), (7, 4), (5, 8)] {
            let ctx = FieldCtx::new(p, k).unwrap();
            let mut x = ctx.from_u64(1);
            let step = ctx.gen();
            for _ in 0..40 {
                x = ctx.add(&ctx.mul(&x, &step), &ctx.one());
                let sq = ctx.square(&x);
                let r = ctx.sqrt(&sq).expect("square has a root");
                assert_eq!(ctx.square(&r), sq);
                assert!(r == x || r == ctx.neg(&x));
            }
        }
    }

    #[test]
    fn unit_group_order() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        for x in f9.elements().skip(1) {
            assert_eq!(f9.pow(&x, f9.q() - 1), f9.one());
        }
    }

    #[test]
    fn embedding_is_injective_and_multiplicative_f9_to_f81() {
        let tower = Tower::new(3).unwrap();
        let f9 = tower.ctx(2);
        let mut images = vec![];
        for x in f9.elements() {
            for y in f9.elements() {
                let ex = tower.embed(&x, 4).unwrap();
                let ey = tower.embed(&y, 4).unwrap();
                let exy = tower.embed(&f9.mul(&x, &y), 4).unwrap();
                assert_eq!(tower.ctx(4).mul(&ex, &ey), exy);
                let exy_add = tower.embed(&f9.add(&x, &y), 4).unwrap();
                assert_eq!(tower.ctx(4).add(&ex, &ey), exy_add);
            }
            images.push(tower.embed(&x, 4).unwrap());
        }
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 9);
    }

    #[test]
    fn embed_fixes_constants_and_one() {
        let tower = Tower::new(5).unwrap();
        for k in [2usize, 4, 8] {
            let one = tower.ctx(1).one();
            assert_eq!(tower.embed(&one, k).unwrap(), tower.ctx(k).one());
            let c = tower.ctx(1).from_u64(3);
            assert_eq!(tower.embed(&c, k).unwrap(), tower.ctx(k).from_u64(3));
        }
    }

    #[test]
    fn descend_inverts_embed() {
        let tower = Tower::new(7).unwrap();
        let f49 = tower.ctx(2);
        for x in f49.elements() {
            let up = tower.embed(&x, 8).unwrap();
            assert_eq!(tower.descend(&up, 2), Some(x));
        }
        // A generator of F_{p^8} does not descend.
        let g8 = tower.ctx(8).gen();
        assert_eq!(tower.descend(&g8, 4), None);
    }

    #[test]
    fn sqrt_lift_always_succeeds_below_top() {
        let tower = Tower::new(7).unwrap();
        let f49 = tower.ctx(2);
        for x in f49.elements().take(49) {
            let r = tower.sqrt_lift(&x).unwrap();
            let ctx = tower.ctx(r.degree());
            let lifted = tower.embed(&x, r.degree()).unwrap();
            assert_eq!(ctx.square(&r), lifted);
        }
    }

    #[test]
    fn canonical_order_is_index_order() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let sorted: Vec<u128> = {
            let mut v: Vec<FieldElem> = f9.elements().collect();
            v.sort_unstable();
            v.iter().map(|e| e.index()).collect()
        };
        assert_eq!(sorted, (0..9).collect::<Vec<u128>>());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f49 = FieldCtx::new(7, 2).unwrap();
        let x = f49.from_coeffs(&[3, 5]).unwrap();
        assert_eq!(x.to_string(), "3+5*t");
        assert_eq!(f49.parse_element("3+5*t").unwrap(), x);
        assert_eq!(f49.parse_element("5*t+3").unwrap(), x);
        assert_eq!(f49.parse_element("t").unwrap(), f49.gen());
        assert!(f49.parse_element("7+0*t").is_err()); // residue out of range
        assert!(f49.parse_element("1+1*t+2*t").is_err()); // duplicate power
        assert!(f49.parse_element("1+1*t^2").is_err()); // power too large
        let f4 = FieldCtx::new(5, 4).unwrap();
        let y = f4.from_coeffs(&[1, 0, 2, 3]).unwrap();
        assert_eq!(f4.parse_element(&y.to_string()).unwrap(), y);
    }

    #[test]
    fn tower_moduli_are_deterministic() {
        let a = Tower::new(11).unwrap();
        let b = Tower::new(11).unwrap();
        for k in [1usize, 2, 4, 8] {
            assert_eq!(a.ctx(k).modulus(), b.ctx(k).modulus());
        }
    }
}
