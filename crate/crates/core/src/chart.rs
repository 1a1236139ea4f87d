//! Chart emission for comparison reports: a three-row CSV table or a
//! grouped SVG bar chart. Both encoders are pure functions of the report,
//! so identical reports always produce byte-identical output.

use std::fmt::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::stats::ComparisonReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartFormat {
    Csv,
    Svg,
}

impl FromStr for ChartFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ChartFormat::Csv),
            "svg" => Ok(ChartFormat::Svg),
            other => Err(Error::UnknownChartFormat(other.to_string())),
        }
    }
}

/// Renders the report in the requested format.
pub fn emit_chart(report: &ComparisonReport, format: ChartFormat) -> Vec<u8> {
    match format {
        ChartFormat::Csv => emit_csv(report),
        ChartFormat::Svg => emit_svg(report),
    }
}

/// One line per statistic: `statistic,<left>,<right>`. Undefined values
/// become empty fields.
fn emit_csv(report: &ComparisonReport) -> Vec<u8> {
    let mut out = format!("statistic,{},{}\n", report.left_label, report.right_label);
    for row in &report.rows {
        out.push_str(&row.statistic);
        out.push(',');
        if let Some(v) = row.left {
            write!(out, "{v}").unwrap();
        }
        out.push(',');
        if let Some(v) = row.right {
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out.into_bytes()
}

const SVG_WIDTH: f64 = 480.0;
const SVG_HEIGHT: f64 = 300.0;
const MARGIN_LEFT: f64 = 56.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 32.0;
const MARGIN_BOTTOM: f64 = 48.0;
const LEFT_FILL: &str = "#4e79a7";
const RIGHT_FILL: &str = "#f28e2b";

/// Grouped bar chart: one group per statistic, one bar per run.
fn emit_svg(report: &ComparisonReport) -> Vec<u8> {
    let plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let max = report
        .rows
        .iter()
        .flat_map(|r| [r.left, r.right])
        .flatten()
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);

    let mut svg = String::new();
    write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" \
         viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">\n"
    )
    .unwrap();
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Legend.
    write!(
        svg,
        "<rect x=\"{MARGIN_LEFT}\" y=\"8\" width=\"12\" height=\"12\" fill=\"{LEFT_FILL}\"/>\n\
         <text x=\"{:.2}\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
        MARGIN_LEFT + 16.0,
        xml_escape(&report.left_label)
    )
    .unwrap();
    write!(
        svg,
        "<rect x=\"{:.2}\" y=\"8\" width=\"12\" height=\"12\" fill=\"{RIGHT_FILL}\"/>\n\
         <text x=\"{:.2}\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
        MARGIN_LEFT + 140.0,
        MARGIN_LEFT + 156.0,
        xml_escape(&report.right_label)
    )
    .unwrap();

    // Axes.
    let base_y = MARGIN_TOP + plot_h;
    write!(
        svg,
        "<line x1=\"{MARGIN_LEFT}\" y1=\"{MARGIN_TOP}\" x2=\"{MARGIN_LEFT}\" y2=\"{base_y}\" stroke=\"black\"/>\n\
         <line x1=\"{MARGIN_LEFT}\" y1=\"{base_y}\" x2=\"{:.2}\" y2=\"{base_y}\" stroke=\"black\"/>\n\
         <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{max}</text>\n",
        MARGIN_LEFT + plot_w,
        MARGIN_LEFT - 4.0,
        MARGIN_TOP + 4.0,
    )
    .unwrap();

    let groups = report.rows.len() as f64;
    let group_w = plot_w / groups;
    let bar_w = group_w * 0.3;
    for (i, row) in report.rows.iter().enumerate() {
        let group_x = MARGIN_LEFT + i as f64 * group_w;
        for (value, offset, fill) in [
            (row.left, group_w * 0.15, LEFT_FILL),
            (row.right, group_w * 0.55, RIGHT_FILL),
        ] {
            if let Some(v) = value {
                let h = (v.max(0.0) / max) * plot_h;
                write!(
                    svg,
                    "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{fill}\"/>\n",
                    group_x + offset,
                    base_y - h,
                    bar_w,
                    h,
                )
                .unwrap();
            }
        }
        write!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{}</text>\n",
            group_x + group_w / 2.0,
            base_y + 16.0,
            xml_escape(&row.statistic),
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg.into_bytes()
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
