//! Plain-text renderers for the enumeration table.

use howe_core::enumerate::CountsRow;

const LABELS: [&str; 4] = ["C2xC2xC2", "C2xD8", "V8", "C2xS4"];

/// Markdown table with labels as rows and primes as columns, printing only
/// primes with at least one class.
pub fn table_markdown(rows: &[CountsRow]) -> String {
    let shown: Vec<&CountsRow> = rows.iter().filter(|r| r.total > 0).collect();
    let mut out = String::new();
    out.push_str("| Aut(C) |");
    for r in &shown {
        out.push_str(&format!(" p={} |", r.p));
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in &shown {
        out.push_str("---|");
    }
    out.push('\n');
    for (i, label) in LABELS.iter().enumerate() {
        out.push_str(&format!("| {label} |"));
        for r in &shown {
            out.push_str(&format!(" {} |", r.counts[i]));
        }
        out.push('\n');
    }
    out
}

/// CSV with one row per prime, zero rows included.
pub fn table_csv(rows: &[CountsRow]) -> String {
    let mut out = String::from("p,C2xC2xC2,C2xD8,V8,C2xS4,total\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.p, r.counts[0], r.counts[1], r.counts[2], r.counts[3], r.total
        ));
    }
    out
}
