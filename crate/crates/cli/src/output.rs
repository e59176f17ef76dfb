//! CSV rendering shared by `compute` and `sweep`.

use gmqd::channels::{ChannelKind, Locality};
use gmqd::dynamics::SweepRow;

pub const CSV_HEADER: &str = "t,gamma_a,gamma_b,channel,locality,b,c,d_numeric,d_closed,abs_err";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_row(row: &SweepRow, kind: ChannelKind, locality: Locality, b: f64, c: f64) -> String {
    let t = row.t.map(fmt_f64).unwrap_or_default();
    [
        t,
        fmt_f64(row.gamma_a),
        fmt_f64(row.gamma_b),
        kind.name().to_string(),
        locality.name().to_string(),
        fmt_f64(b),
        fmt_f64(c),
        fmt_f64(row.d_numeric),
        fmt_f64(row.d_closed),
        fmt_f64(row.abs_err),
    ]
    .join(",")
}

/// `# key=value` comment lines.
pub fn metadata_lines(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("# {k}={v}\n")).collect()
}
