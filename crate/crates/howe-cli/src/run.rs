//! Command definitions and execution.

use clap::{Parser, Subcommand, ValueEnum};

use howe_core::error::DomainError;
use howe_core::field::{FieldCtx, Tower};
use howe_core::howe::{classify_genus, is_hyperelliptic_mu, lambda3, mu_quadratic, HoweInput};
use howe_core::point_count::{count_hyperelliptic, TwistSpec, Verdict, MAX_COUNT_FIELD};
use howe_core::standard_form::{legendre_triple, sqrt_choices, CurveAB};
use howe_core::supersingular::is_superspecial;
use howe_core::Result;

use crate::accept::{self, Tier};
use crate::render;
use crate::report::*;

/// Exact computation with superspecial hyperelliptic genus-3 curves in the
/// standard form y² = (x⁴−ax²+1)(x⁴−bx²+1) over F_{p²}.
///
/// Field elements are written in the canonical syntax "c0+c1*t" with
/// residues in [0, p); the generator t satisfies the deterministic modulus
/// printed in every report. Limits: p is an odd prime at most 9973; point
/// counting requires the field to have at most 10^6 elements; brute
/// enumeration requires p at most 31; tables require 7 < pmin <= pmax < 1000.
#[derive(Parser)]
#[command(name = "howe3", version)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand)]
pub enum Command {
    /// Analyze one curve: nonsingularity, superspeciality, Legendre
    /// triple, point count over F_{p²}, and the maximal/minimal verdict.
    Check {
        /// Odd prime characteristic.
        #[arg(long)]
        p: u64,
        /// First parameter, an element of F_{p²} ("c0+c1*t").
        #[arg(long)]
        a: String,
        /// Second parameter, an element of F_{p²}.
        #[arg(long)]
        b: String,
    },
    /// Enumerate all superspecial classes at a prime, up to geometric
    /// isomorphism.
    Enumerate {
        #[arg(long)]
        p: u64,
        /// Use the exhaustive (a, b) scan instead of the structured
        /// enumeration (p <= 31).
        #[arg(long)]
        oracle: bool,
    },
    /// Class counts per automorphism label for every prime in a range.
    Table {
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Genus classification, λ₃, and both hyperellipticity criteria for a
    /// fiber-product configuration (λ₁, λ₂, μ).
    Howe {
        #[arg(long)]
        p: u64,
        /// λ₁ in F_{p²}, outside {0, 1}.
        #[arg(long)]
        l1: String,
        /// λ₂ in F_{p²}, outside {0, 1}.
        #[arg(long)]
        l2: String,
        /// μ in F_{p²}, outside {0, 1}.
        #[arg(long)]
        mu: String,
    },
    /// Count the twist εy² = f(x) over F_{p^{2e}} and compare with the
    /// predicted verdict. Requires a superspecial curve and p^{2e} <= 10^6.
    Twist {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Twist scalar in F_{p^{2e}}.
        #[arg(long)]
        eps: String,
        /// Extension parameter e ∈ {1, 2, 4}.
        #[arg(long)]
        e: u32,
    },
    /// Run the acceptance criteria and print one pass/fail line each.
    Selftest {
        #[arg(long, value_enum, default_value_t = Tier::Fast)]
        tier: Tier,
    },
}

pub struct RunOutput {
    pub text: String,
    pub status: i32,
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization is infallible")
}

pub fn run(cmd: Command) -> Result<RunOutput> {
    match cmd {
        Command::Check { p, a, b } => check(p, &a, &b),
        Command::Enumerate { p, oracle } => enumerate(p, oracle),
        Command::Table { pmin, pmax, format } => table(pmin, pmax, format),
        Command::Howe { p, l1, l2, mu } => howe(p, &l1, &l2, &mu),
        Command::Twist { p, a, b, eps, e } => twist(p, &a, &b, &eps, e),
        Command::Selftest { tier } => selftest(tier),
    }
}

fn check(p: u64, a: &str, b: &str) -> Result<RunOutput> {
    let tower = Tower::new(p)?;
    let ctx2: &FieldCtx = tower.ctx(2);
    let a = ctx2.parse_element(a)?;
    let b = ctx2.parse_element(b)?;
    let mut report = CheckReport {
        field: FieldMeta::of(ctx2),
        a: a.to_string(),
        b: b.to_string(),
        nonsingular: howe_core::standard_form::nonsingular_ab(ctx2, &a, &b),
        superspecial: None,
        legendre_triple: None,
        count: None,
        count_skipped: None,
        predicted: None,
        agrees: None,
    };
    if report.nonsingular {
        let curve = CurveAB::new(a, b);
        let superspecial = is_superspecial(ctx2, &a, &b)?;
        report.superspecial = Some(superspecial);
        let ch = sqrt_choices(&tower, &curve)?;
        let tr = legendre_triple(tower.ctx(ch.degree()), &ch)?;
        report.legendre_triple = Some(TripleJson::of(&tr));
        if ctx2.q() <= MAX_COUNT_FIELD {
            let count = count_hyperelliptic(ctx2, &curve.octic(ctx2), &ctx2.one())?;
            report.count = Some(count.into());
            if superspecial {
                let predicted = if p % 4 == 3 {
                    Verdict::Maximal
                } else {
                    Verdict::Minimal
                };
                report.predicted = Some(predicted.to_string());
                report.agrees = Some(count.verdict == predicted);
            }
        } else {
            report.count_skipped = Some(format!(
                "field size p^2 = {} exceeds the counting limit {MAX_COUNT_FIELD}",
                ctx2.q()
            ));
        }
    }
    Ok(RunOutput {
        text: json(&report),
        status: 0,
    })
}

fn enumerate(p: u64, oracle: bool) -> Result<RunOutput> {
    let records = if oracle {
        howe_core::enumerate::enumerate_brute(p)?
    } else {
        howe_core::enumerate::enumerate_structured(p)?
    };
    let ctx2 = FieldCtx::new(p, 2)?;
    let report = EnumerateReport {
        field: FieldMeta::of(&ctx2),
        p,
        oracle,
        total: records.len(),
        counts: LabelCounts::tally(&records),
        classes: records.iter().map(ClassJson::of).collect(),
    };
    Ok(RunOutput {
        text: json(&report),
        status: 0,
    })
}

fn table(pmin: u64, pmax: u64, format: TableFormat) -> Result<RunOutput> {
    let rows = howe_core::enumerate::table(pmin, pmax)?;
    let text = match format {
        TableFormat::Json => json(&TableReport {
            pmin,
            pmax,
            rows: rows.iter().map(TableRowJson::of).collect(),
        }),
        TableFormat::Csv => render::table_csv(&rows),
        TableFormat::Md => render::table_markdown(&rows),
    };
    Ok(RunOutput { text, status: 0 })
}

fn howe(p: u64, l1: &str, l2: &str, mu: &str) -> Result<RunOutput> {
    let tower = Tower::new(p)?;
    let ctx2 = tower.ctx(2);
    let input = HoweInput::new(
        ctx2,
        ctx2.parse_element(l1)?,
        ctx2.parse_element(l2)?,
        ctx2.parse_element(mu)?,
    )?;
    let genus = classify_genus(ctx2, &input);
    let l3 = match lambda3(ctx2, &input) {
        Ok(v) => Some(v),
        Err(howe_core::Error::Domain(DomainError::GenusDegenerate)) => None,
        Err(e) => return Err(e),
    };
    let degenerate = match &l3 {
        Some(v) => v.is_zero() || *v == ctx2.one(),
        None => true,
    };
    let hyperelliptic_mu = if genus.genus == 3 {
        Some(is_hyperelliptic_mu(ctx2, &input)?)
    } else {
        None
    };
    let (hyperelliptic_d, discriminant) = match &l3 {
        Some(v) if !degenerate => {
            let q = mu_quadratic(ctx2, &input.lambda1, &input.lambda2, v)?;
            (
                Some(q.discriminant.is_zero()),
                Some(q.discriminant.to_string()),
            )
        }
        _ => (None, None),
    };
    let report = HoweReport {
        field: FieldMeta::of(ctx2),
        lambda1: input.lambda1.to_string(),
        lambda2: input.lambda2.to_string(),
        mu: input.mu.to_string(),
        genus: GenusJson {
            overlap: genus.overlap,
            genus: genus.genus,
            irreducible: genus.irreducible,
        },
        lambda3: l3.map(|v| v.to_string()),
        genus_degenerate: degenerate,
        hyperelliptic_mu,
        hyperelliptic_d,
        discriminant,
    };
    Ok(RunOutput {
        text: json(&report),
        status: 0,
    })
}

fn twist(p: u64, a: &str, b: &str, eps: &str, e: u32) -> Result<RunOutput> {
    let tower = Tower::new(p)?;
    let ctx2 = tower.ctx(2);
    let a = ctx2.parse_element(a)?;
    let b = ctx2.parse_element(b)?;
    let k = match e {
        1 => 2,
        2 => 4,
        4 => 8,
        other => {
            return Err(DomainError::UnsupportedDegree(2 * other as usize).into());
        }
    };
    let ctx_big = tower.ctx(k);
    let eps = ctx_big.parse_element(eps)?;
    let curve = CurveAB::new(a, b);
    let report = howe_core::point_count::twist_verdict(&tower, &curve, &TwistSpec { eps, e })?;
    let out = TwistReportJson {
        field: FieldMeta::of(ctx_big),
        p,
        e,
        q: report.q,
        a: a.to_string(),
        b: b.to_string(),
        eps: eps.to_string(),
        eps_is_square: report.eps_is_square,
        count: report.count.into(),
        predicted: report.predicted.to_string(),
        agrees: report.agrees,
    };
    Ok(RunOutput {
        text: json(&out),
        status: 0,
    })
}

fn selftest(tier: Tier) -> Result<RunOutput> {
    let outcomes = accept::run_all(tier)?;
    let mut text = String::new();
    let mut all_passed = true;
    for o in &outcomes {
        all_passed &= o.passed;
        text.push_str(&format!(
            "criterion {:02} {}: {} ({})\n",
            o.number,
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        ));
    }
    text.push_str(if all_passed {
        "selftest: all criteria passed"
    } else {
        "selftest: FAILURES present"
    });
    Ok(RunOutput {
        text,
        status: if all_passed { 0 } else { 1 },
    })
}
