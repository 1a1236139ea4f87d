use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use grayseg_core::RegionStats;

/// What a file path holds, judged by its extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Image,
    Text,
    Csv,
}

impl FileKind {
    pub fn of(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .with_context(|| format!("{} has no file extension", path.display()))?;
        match ext.as_str() {
            "pgm" | "pnm" | "png" => Ok(FileKind::Image),
            "txt" | "text" | "dat" => Ok(FileKind::Text),
            "csv" => Ok(FileKind::Csv),
            other => bail!("unsupported file extension {other:?} on {}", path.display()),
        }
    }
}

/// File stem used as a default run label.
pub fn stem_of(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("run")
        .to_string()
}

pub fn format_value(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.4}"),
        None => "undefined".to_string(),
    }
}

/// Renders one stats record as an aligned single-row table.
pub fn stats_table(stats: &RegionStats) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<12} {:>10} {:>12} {:>12} {:>12}  {}",
        "region", "n", "average", "std_dev", "coeff_var", "std_mode"
    )
    .unwrap();
    writeln!(
        out,
        "{:<12} {:>10} {:>12} {:>12} {:>12}  {}",
        stats.region_id.to_string(),
        stats.n,
        format!("{:.4}", stats.average),
        format!("{:.4}", stats.std_dev),
        format_value(stats.coeff_var),
        stats.std_mode
    )
    .unwrap();
    out
}
