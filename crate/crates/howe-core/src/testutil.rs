//! Deterministic sampling helpers for unit tests (SplitMix64).

use crate::field::{FieldCtx, FieldElem};

pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-enough element by index reduction.
    pub fn elem(&mut self, ctx: &FieldCtx) -> FieldElem {
        let q = ctx.q();
        ctx.elem_from_index(((self.next_u64() as u128) << 64 | self.next_u64() as u128) % q)
    }

    /// Element outside {0, 1}.
    pub fn elem_not_01(&mut self, ctx: &FieldCtx) -> FieldElem {
        loop {
            let x = self.elem(ctx);
            if !x.is_zero() && x != ctx.one() {
                return x;
            }
        }
    }
}
