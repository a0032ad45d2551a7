//! Enumeration of all superspecial nonsingular standard-form curves for a
//! prime `p`, up to geometric isomorphism.
//!
//! The structured route inverts the quotient construction: every
//! superspecial curve has supersingular quotients, whose Legendre
//! parameters are roots of the Deuring polynomial with square roots in
//! `F_{p²}`, so running the inverse transformation over every ordered pair
//! of supersingular parameters and every sign choice of their roots covers
//! every superspecial `(a, b)`. Superspeciality itself (Hasse–Witt zero) is
//! the single acceptance gate — no candidate is pre-filtered by the third
//! quotient.
//!
//! The brute route scans all of `F_{p²}²` directly and serves as the
//! independent oracle for the structured one (practical for `p ≤ 31`).
//!
//! Deduplication folds candidates in canonical order, grouping them by the
//! quotient j-invariant multiset before running the Möbius test; because
//! curves with extra automorphisms can present several quotient triples,
//! classes whose reduced order exceeds 4 are re-checked pairwise and merged
//! afterwards. The pre-filter therefore speeds things up but never decides
//! non-isomorphism on its own. Output is sorted by representative and is
//! byte-identical across runs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::classify::{
    are_isomorphic, branch_locus, j_multiset_key, reduced_aut_order, AutLabel, BranchLocus,
    Classifier,
};
use crate::error::{DomainError, InternalError, Result};
use crate::field::{is_odd_prime, FieldElem, Tower};
use crate::point_count::{count_hyperelliptic, CountResult, Verdict};
use crate::standard_form::{ab_from_sqrt_lambdas, nonsingular_ab, CurveAB};
use crate::supersingular::{is_superspecial, supersingular_lambdas};

/// Largest prime accepted by the brute-force scan.
pub const MAX_BRUTE_PRIME: u64 = 31;

/// One isomorphism class of superspecial curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClassRecord {
    pub p: u64,
    /// Lexicographically least `(a, b)` among the members found.
    pub rep: CurveAB,
    /// Automorphism-group label; suppressed for `p ≤ 7` where the
    /// classification does not apply.
    pub aut: Option<AutLabel>,
    /// Measured order of the reduced automorphism group.
    pub reduced_order: usize,
    /// Point count of the representative over `F_{p²}`.
    pub count: CountResult,
    /// Number of distinct superspecial `(a, b)` pairs in the class.
    pub class_size: usize,
    /// The `(√λ₁, √λ₂)` pairs that produced the representative
    /// (empty for the brute route).
    pub provenance: Vec<(FieldElem, FieldElem)>,
}

/// Per-prime class counts in label order `[C2×C2×C2, C2×D8, V8, C2×S4]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountsRow {
    pub p: u64,
    pub counts: [usize; 4],
    pub total: usize,
}

struct Class {
    rep: CurveAB,
    locus: BranchLocus,
    members: usize,
    provenance: Vec<(FieldElem, FieldElem)>,
    order: usize,
}

/// Fold a canonically sorted candidate pool into isomorphism classes.
fn dedup_classes(
    tower: &Tower,
    pool: BTreeMap<CurveAB, Vec<(FieldElem, FieldElem)>>,
) -> Result<Vec<Class>> {
    let ctx8 = tower.ctx(8);
    let mut classes: Vec<Class> = Vec::new();
    let mut groups: BTreeMap<[FieldElem; 3], Vec<usize>> = BTreeMap::new();
    for (curve, provenance) in pool {
        let key = j_multiset_key(tower, &curve)?;
        let locus = branch_locus(tower, &curve)?;
        let bucket = groups.entry(key).or_default();
        let mut joined = false;
        for &idx in bucket.iter() {
            if are_isomorphic(ctx8, &locus, &classes[idx].locus) {
                classes[idx].members += 1;
                joined = true;
                break;
            }
        }
        if !joined {
            let order = reduced_aut_order(ctx8, &locus);
            bucket.push(classes.len());
            classes.push(Class {
                rep: curve,
                locus,
                members: 1,
                provenance,
                order,
            });
        }
    }

    // Curves with extra automorphisms may carry different quotient-triple
    // j-multisets across their models, splitting one class over several
    // buckets; merge those back with explicit Möbius tests.
    let mut merged: Vec<Class> = Vec::new();
    'outer: for class in classes {
        if class.order > 4 {
            for existing in merged.iter_mut() {
                if existing.order == class.order
                    && are_isomorphic(ctx8, &class.locus, &existing.locus)
                {
                    existing.members += class.members;
                    // Pool iteration is sorted, so the earlier rep is least.
                    continue 'outer;
                }
            }
        }
        merged.push(class);
    }
    Ok(merged)
}

fn describe(tower: &Tower, classes: Vec<Class>) -> Result<Vec<IsoClassRecord>> {
    let p = tower.prime();
    let ctx2 = tower.ctx(2);
    let classifier = if p > 7 {
        Some(Classifier::new(tower)?)
    } else {
        None
    };
    let predicted = if p % 4 == 3 {
        Verdict::Maximal
    } else {
        Verdict::Minimal
    };
    let mut records = Vec::with_capacity(classes.len());
    for class in classes {
        let aut = match &classifier {
            Some(cls) => {
                let (label, order) = cls.label(&class.locus)?;
                debug_assert_eq!(order, class.order);
                Some(label)
            }
            None => None,
        };
        let count = count_hyperelliptic(ctx2, &class.rep.octic(ctx2), &ctx2.one())?;
        if count.verdict != predicted {
            return Err(InternalError::MaxMinViolation { p, n: count.n }.into());
        }
        records.push(IsoClassRecord {
            p,
            rep: class.rep,
            aut,
            reduced_order: class.order,
            count,
            class_size: class.members,
            provenance: class.provenance,
        });
    }
    records.sort_by_key(|a| a.rep);
    Ok(records)
}

/// Structured enumeration via the inverse transformation over supersingular
/// Legendre parameters.
pub fn enumerate_structured(p: u64) -> Result<Vec<IsoClassRecord>> {
    let tower = Tower::new(p)?;
    let ctx2 = tower.ctx(2);
    let lambdas = supersingular_lambdas(ctx2)?;
    let mut sqrts = Vec::with_capacity(lambdas.len());
    for lam in &lambdas {
        let s = ctx2
            .sqrt(lam)
            .ok_or(InternalError::FourthPowerPostcondition { p })?;
        sqrts.push(s);
    }

    let one = ctx2.one();
    let mut pool: BTreeMap<CurveAB, Vec<(FieldElem, FieldElem)>> = BTreeMap::new();
    for s1_base in &sqrts {
        for s2_base in &sqrts {
            for signs in 0..4u8 {
                let s1 = if signs & 1 == 0 {
                    *s1_base
                } else {
                    ctx2.neg(s1_base)
                };
                let s2 = if signs & 2 == 0 {
                    *s2_base
                } else {
                    ctx2.neg(s2_base)
                };
                if s1 == s2 || ctx2.mul(&s1, &s2) == one {
                    continue;
                }
                let (a, b) = ab_from_sqrt_lambdas(ctx2, &s1, &s2)?;
                if !nonsingular_ab(ctx2, &a, &b) {
                    continue;
                }
                let curve = if a <= b {
                    CurveAB::new(a, b)
                } else {
                    CurveAB::new(b, a)
                };
                pool.entry(curve).or_default().push((s1, s2));
            }
        }
    }

    pool = {
        let mut superspecial = BTreeMap::new();
        for (curve, prov) in pool {
            if is_superspecial(ctx2, &curve.a, &curve.b)? {
                superspecial.insert(curve, prov);
            }
        }
        superspecial
    };

    let classes = dedup_classes(&tower, pool)?;
    describe(&tower, classes)
}

/// Independent oracle: scan every `(a, b) ∈ F_{p²}²` directly.
/// Practical for `p ≤ 31` only.
pub fn enumerate_brute(p: u64) -> Result<Vec<IsoClassRecord>> {
    if p > MAX_BRUTE_PRIME {
        return Err(DomainError::BruteEnumerationTooLarge {
            p,
            max: MAX_BRUTE_PRIME,
        }
        .into());
    }
    let tower = Tower::new(p)?;
    let ctx2 = tower.ctx(2);
    let mut pool: BTreeMap<CurveAB, Vec<(FieldElem, FieldElem)>> = BTreeMap::new();
    for a in ctx2.elements() {
        for b in ctx2.elements() {
            if b < a || !nonsingular_ab(ctx2, &a, &b) {
                continue;
            }
            if is_superspecial(ctx2, &a, &b)? {
                pool.insert(CurveAB::new(a, b), Vec::new());
            }
        }
    }
    let classes = dedup_classes(&tower, pool)?;
    describe(&tower, classes)
}

/// Class counts per label for every prime in `[p_min, p_max]`, including
/// zero rows (callers decide whether to print them).
pub fn table(p_min: u64, p_max: u64) -> Result<Vec<CountsRow>> {
    if !(7 < p_min && p_min <= p_max && p_max < 1000) {
        return Err(DomainError::Precondition(alloc::format!(
            "table range must satisfy 7 < pmin <= pmax < 1000, got [{p_min}, {p_max}]"
        ))
        .into());
    }
    let mut rows = Vec::new();
    for p in p_min..=p_max {
        if !is_odd_prime(p) {
            continue;
        }
        let records = enumerate_structured(p)?;
        let mut counts = [0usize; 4];
        for r in &records {
            let label = r
                .aut
                .ok_or(InternalError::Invariant("labels required for table rows"))?;
            let slot = AutLabel::ALL.iter().position(|l| *l == label).unwrap();
            counts[slot] += 1;
        }
        rows.push(CountsRow {
            p,
            counts,
            total: records.len(),
        });
    }
    Ok(rows)
}
