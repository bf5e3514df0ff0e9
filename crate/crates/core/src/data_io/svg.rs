use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Error, Result};
use crate::evaluator::{hard_conflicts, Assignment};
use crate::model::{ModelConfig, Schedule};
use crate::scalar::Scalar;

const WIDTH: f64 = 960.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const ROW_HEIGHT: f64 = 24.0;

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn clock(minutes: f64) -> String {
    let m = minutes.round() as i64;
    format!("{:02}:{:02}", m.div_euclid(60), m.rem_euclid(60))
}

fn header(svg: &mut String, height: f64, title: &str) {
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="11">
<style>
  .flight {{ fill: #1f77b4; }}
  .bar {{ fill: #1f77b4; }}
  .buffer {{ fill: #aec7e8; }}
  .conflict {{ fill: #d62728; stroke: #800000; stroke-width: 1; }}
  .axis {{ stroke: #333; stroke-width: 1; }}
  .grid {{ stroke: #ddd; stroke-width: 1; }}
</style>
<rect width="100%" height="100%" fill="white"/>
<text x="{x}" y="20" text-anchor="middle" font-size="14">{title}</text>"#,
        x = WIDTH / 2.0,
        title = escape(title),
    );
}

/// Scatter of arrival time (vertical) against flight index (horizontal),
/// one marker per flight.
pub fn emit_scatter_plot<T: Scalar>(schedule: &Schedule<T>, mut sink: impl Write) -> Result<()> {
    schedule.require_non_empty()?;
    let height = 520.0;
    let arrivals: Vec<f64> = schedule
        .flights()
        .iter()
        .map(|f| f.arrival().to_f64_lossy())
        .collect();
    let lo = arrivals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = arrivals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = (hi - lo).max(1.0);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = height - MARGIN_TOP - MARGIN_BOTTOM;
    let n = arrivals.len();
    let x_of = |i: usize| MARGIN_LEFT + plot_w * (i as f64 + 0.5) / n as f64;
    let y_of = |t: f64| MARGIN_TOP + plot_h * (1.0 - (t - lo) / span);

    let mut svg = String::new();
    header(
        &mut svg,
        height,
        &format!("{n} flights: arrival time by flight index"),
    );
    let (x0, y0, x1, y1) = (
        MARGIN_LEFT,
        MARGIN_TOP,
        WIDTH - MARGIN_RIGHT,
        height - MARGIN_BOTTOM,
    );
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/>"#
    );
    for k in 0..=4 {
        let t = lo + span * k as f64 / 4.0;
        let y = y_of(t);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            y + 4.0,
            clock(t)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">flight index</text>"#,
        (x0 + x1) / 2.0,
        height - 15.0
    );
    let radius = if n > 200 { 1.5 } else { 3.0 };
    for (i, (flight, &t)) in schedule.flights().iter().zip(&arrivals).enumerate() {
        let _ = writeln!(
            svg,
            r#"<circle class="flight" data-flight="{}" cx="{:.2}" cy="{:.2}" r="{radius}"/>"#,
            escape(flight.id()),
            x_of(i),
            y_of(t)
        );
    }
    svg.push_str("</svg>\n");
    sink.write_all(svg.as_bytes()).map_err(Error::from)
}

/// One row per gate, one bar per flight over its stay, with the buffer drawn
/// as lighter extensions on both sides. Flights in a hard conflict are drawn
/// in the conflict style.
pub fn emit_gantt<T: Scalar>(
    schedule: &Schedule<T>,
    assignment: &Assignment,
    cfg: &ModelConfig<T>,
    mut sink: impl Write,
) -> Result<()> {
    schedule.require_non_empty()?;
    let gates = assignment.resolve(schedule)?;
    let conflicted: HashSet<String> = hard_conflicts(schedule, assignment, cfg)?
        .into_iter()
        .flat_map(|(a, b)| [a, b])
        .collect();
    let b = cfg.buffer().to_f64_lossy();
    let flights = schedule.flights();
    let lo = flights
        .iter()
        .map(|f| f.arrival().to_f64_lossy() - b)
        .fold(f64::INFINITY, f64::min);
    let hi = flights
        .iter()
        .map(|f| f.departure().to_f64_lossy() + b)
        .fold(f64::NEG_INFINITY, f64::max);
    let span = (hi - lo).max(1.0);
    let rows = assignment.gate_count();
    let height = MARGIN_TOP + MARGIN_BOTTOM + ROW_HEIGHT * rows as f64;
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let x_of = |t: f64| MARGIN_LEFT + plot_w * (t - lo) / span;

    let mut svg = String::new();
    header(
        &mut svg,
        height,
        &format!("{} flights on {rows} gates", flights.len()),
    );
    for g in 0..rows {
        let y = MARGIN_TOP + ROW_HEIGHT * g as f64;
        let _ = writeln!(
            svg,
            r#"<g class="gate" data-gate="{}"><line class="grid" x1="{MARGIN_LEFT}" y1="{y}" x2="{}" y2="{y}"/><text x="{}" y="{:.1}" text-anchor="end">Gate {}</text></g>"#,
            g + 1,
            WIDTH - MARGIN_RIGHT,
            MARGIN_LEFT - 6.0,
            y + ROW_HEIGHT * 0.65,
            g + 1
        );
    }
    let axis_y = MARGIN_TOP + ROW_HEIGHT * rows as f64;
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{MARGIN_LEFT}" y1="{axis_y}" x2="{}" y2="{axis_y}"/>"#,
        WIDTH - MARGIN_RIGHT
    );
    for k in 0..=6 {
        let t = lo + span * k as f64 / 6.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#,
            x_of(t),
            axis_y + 16.0,
            clock(t)
        );
    }
    for (flight, &g) in flights.iter().zip(&gates) {
        let (a, d) = (
            flight.arrival().to_f64_lossy(),
            flight.departure().to_f64_lossy(),
        );
        let y = MARGIN_TOP + ROW_HEIGHT * g as f64 + 4.0;
        let h = ROW_HEIGHT - 8.0;
        if b > 0.0 {
            for (from, to) in [(a - b, a), (d, d + b)] {
                let _ = writeln!(
                    svg,
                    r#"<rect class="buffer" x="{:.2}" y="{y}" width="{:.2}" height="{h}"/>"#,
                    x_of(from),
                    x_of(to) - x_of(from)
                );
            }
        }
        let class = if conflicted.contains(flight.id()) {
            "bar conflict"
        } else {
            "bar"
        };
        let _ = writeln!(
            svg,
            r#"<rect class="{class}" data-flight="{id}" x="{:.2}" y="{y}" width="{:.2}" height="{h}"><title>{id} {} to {}</title></rect>"#,
            x_of(a),
            x_of(d) - x_of(a),
            clock(a),
            clock(d),
            id = escape(flight.id()),
        );
    }
    svg.push_str("</svg>\n");
    sink.write_all(svg.as_bytes()).map_err(Error::from)
}
