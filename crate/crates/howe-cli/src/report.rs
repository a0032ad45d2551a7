//! JSON report schemas. Field order is fixed by the struct definitions and
//! every map is ordered, so identical invocations serialize byte-identically.

use serde::Serialize;

use howe_core::classify::AutLabel;
use howe_core::enumerate::{CountsRow, IsoClassRecord};
use howe_core::field::FieldCtx;
use howe_core::point_count::CountResult;
use howe_core::standard_form::LegendreTriple;

/// Field construction metadata: enough to reproduce every element string.
#[derive(Serialize)]
pub struct FieldMeta {
    pub p: u64,
    pub k: usize,
    /// Monic modulus, little-endian coefficients in `[0, p)`.
    pub modulus: Vec<u64>,
}

impl FieldMeta {
    pub fn of(ctx: &FieldCtx) -> FieldMeta {
        FieldMeta {
            p: ctx.p(),
            k: ctx.k(),
            modulus: ctx.modulus().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct CountJson {
    pub q: u64,
    pub genus: u32,
    pub n: u64,
    pub verdict: String,
}

impl From<CountResult> for CountJson {
    fn from(c: CountResult) -> CountJson {
        CountJson {
            q: c.q,
            genus: c.genus,
            n: c.n,
            verdict: c.verdict.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct TripleJson {
    pub field_degree: usize,
    pub lambda1: String,
    pub lambda2: String,
    pub lambda3: String,
    pub sqrt_lambda1: String,
    pub sqrt_lambda2: String,
}

impl TripleJson {
    pub fn of(tr: &LegendreTriple) -> TripleJson {
        TripleJson {
            field_degree: tr.lambda1.degree(),
            lambda1: tr.lambda1.to_string(),
            lambda2: tr.lambda2.to_string(),
            lambda3: tr.lambda3.to_string(),
            sqrt_lambda1: tr.sqrt_lambda1.to_string(),
            sqrt_lambda2: tr.sqrt_lambda2.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    pub field: FieldMeta,
    pub a: String,
    pub b: String,
    pub nonsingular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub superspecial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub legendre_triple: Option<TripleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<CountJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

/// Counts in the fixed label order of the enumeration.
#[derive(Serialize, Default)]
pub struct LabelCounts {
    #[serde(rename = "C2xC2xC2")]
    pub c2c2c2: usize,
    #[serde(rename = "C2xD8")]
    pub c2d8: usize,
    #[serde(rename = "V8")]
    pub v8: usize,
    #[serde(rename = "C2xS4")]
    pub c2s4: usize,
}

impl LabelCounts {
    pub fn from_array(counts: [usize; 4]) -> LabelCounts {
        LabelCounts {
            c2c2c2: counts[0],
            c2d8: counts[1],
            v8: counts[2],
            c2s4: counts[3],
        }
    }

    pub fn tally(records: &[IsoClassRecord]) -> Option<LabelCounts> {
        let mut counts = [0usize; 4];
        for r in records {
            let label = r.aut?;
            let slot = AutLabel::ALL.iter().position(|l| *l == label).unwrap();
            counts[slot] += 1;
        }
        Some(LabelCounts::from_array(counts))
    }
}

#[derive(Serialize)]
pub struct ClassJson {
    pub a: String,
    pub b: String,
    pub aut: Option<String>,
    pub reduced_order: usize,
    pub count: CountJson,
    pub class_size: usize,
    pub provenance: Vec<[String; 2]>,
}

impl ClassJson {
    pub fn of(r: &IsoClassRecord) -> ClassJson {
        ClassJson {
            a: r.rep.a.to_string(),
            b: r.rep.b.to_string(),
            aut: r.aut.map(|l| l.to_string()),
            reduced_order: r.reduced_order,
            count: r.count.into(),
            class_size: r.class_size,
            provenance: r
                .provenance
                .iter()
                .map(|(s1, s2)| [s1.to_string(), s2.to_string()])
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct EnumerateReport {
    pub field: FieldMeta,
    pub p: u64,
    pub oracle: bool,
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<LabelCounts>,
    pub classes: Vec<ClassJson>,
}

#[derive(Serialize)]
pub struct TableRowJson {
    pub p: u64,
    pub counts: LabelCounts,
    pub total: usize,
    pub empty: bool,
}

impl TableRowJson {
    pub fn of(row: &CountsRow) -> TableRowJson {
        TableRowJson {
            p: row.p,
            counts: LabelCounts::from_array(row.counts),
            total: row.total,
            empty: row.total == 0,
        }
    }
}

#[derive(Serialize)]
pub struct TableReport {
    pub pmin: u64,
    pub pmax: u64,
    pub rows: Vec<TableRowJson>,
}

#[derive(Serialize)]
pub struct GenusJson {
    pub overlap: usize,
    pub genus: usize,
    pub irreducible: bool,
}

#[derive(Serialize)]
pub struct HoweReport {
    pub field: FieldMeta,
    pub lambda1: String,
    pub lambda2: String,
    pub mu: String,
    pub genus: GenusJson,
    /// The third Legendre parameter; absent when its denominator vanishes.
    pub lambda3: Option<String>,
    /// True when λ₃ is undefined or lands in {0, 1}.
    pub genus_degenerate: bool,
    /// Hyperellipticity by the μ²λ₂ = λ₁ criterion; null off genus 3.
    pub hyperelliptic_mu: Option<bool>,
    /// Hyperellipticity by the D = 0 criterion; null when λ₃ degenerates.
    pub hyperelliptic_d: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
}

#[derive(Serialize)]
pub struct TwistReportJson {
    pub field: FieldMeta,
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub a: String,
    pub b: String,
    pub eps: String,
    pub eps_is_square: bool,
    pub count: CountJson,
    pub predicted: String,
    pub agrees: bool,
}
