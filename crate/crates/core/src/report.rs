//! Deterministic reports and tables.
//!
//! Everything here renders to text, JSON or CSV with a fixed row order, so
//! two runs with the same configuration produce identical bytes whatever the
//! number of worker threads.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::engine::{route_commutation_report, Engine, RouteRow};
use crate::error::{Error, Result};
use crate::monomial::{BoundaryMonomial, Convention, Family};
use crate::printed::{literal_rule_diff, DiffEntry, DiscrepancyFamily};
use crate::rational::{frac, to_machine, to_text, Rational, RationalJson};
use crate::series::{operator_diff, Direction, OperatorTermDiff};

/// Output format shared by tables and reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Usage(format!("unknown format {s:?}"))),
        }
    }
}

fn rj(q: &Rational) -> serde_json::Value {
    serde_json::to_value(RationalJson::from(q)).expect("plain struct")
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// One row of a value table: `h(m, ḿ, m̀, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub m: u32,
    pub acute: u32,
    pub grave: u32,
    pub b: BoundaryMonomial,
    #[serde(with = "crate::rational::json")]
    pub value: Rational,
}

/// `h(m, ḿ, m̀, b)` for every `b` of degree at most `max_degree` and every
/// point split with `m + ḿ + m̀ <= max_points`.
pub fn value_table(engine: &Engine, max_degree: u32, max_points: u32) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for total in 0..=max_points {
        for m in (0..=total).rev() {
            let hat = total - m;
            for acute in (0..=hat).rev() {
                let grave = hat - acute;
                for k in 0..=max_degree {
                    let layer = engine.totals_layer(k, m, acute, grave)?;
                    for (b, v) in layer.iter() {
                        rows.push(TableRow {
                            m,
                            acute,
                            grave,
                            b: b.clone(),
                            value: v.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

pub fn render_table(rows: &[TableRow], conv: Convention, max_degree: u32, max_points: u32, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "m": r.m,
                        "acute": r.acute,
                        "grave": r.grave,
                        "points": r.acute + r.grave,
                        "b": r.b.to_string(),
                        "value": rj(&r.value),
                    })
                })
                .collect();
            out = pretty(&json!({
                "dot_weight": conv.dot_weight.as_str(),
                "max_degree": max_degree,
                "max_points": max_points,
                "rows": rows,
            }));
        }
        Format::Csv => {
            writeln!(out, "# dot_weight={}", conv.dot_weight).unwrap();
            writeln!(out, "m,acute,grave,b,num,den").unwrap();
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.m,
                    r.acute,
                    r.grave,
                    r.b,
                    r.value.numer(),
                    r.value.denom()
                )
                .unwrap();
            }
        }
        Format::Text => {
            writeln!(
                out,
                "# dot_weight={} max_degree={max_degree} max_points={max_points}",
                conv.dot_weight
            )
            .unwrap();
            writeln!(out, "# m acute grave b value").unwrap();
            for r in rows {
                writeln!(out, "{} {} {} {} {}", r.m, r.acute, r.grave, r.b, to_text(&r.value)).unwrap();
            }
        }
    }
    out
}

/// The published closed form of the zero-point slice against the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InitialSliceRow {
    pub b: BoundaryMonomial,
    /// `[p_b] exp(p̄_1 + ṗ_1 / 2)`.
    #[serde(with = "crate::rational::json")]
    pub closed_form: Rational,
    /// `h́(0, 0, 0, b)`: the closed form read as each refined series.
    #[serde(with = "crate::rational::json")]
    pub each: Rational,
    /// `h(0, 0, 0, b)`: the closed form read as their sum.
    #[serde(with = "crate::rational::json")]
    pub sum: Rational,
}

fn closed_form(b: &BoundaryMonomial) -> Rational {
    let bars = b.s_bar(1);
    let dots = b.s_dot(1);
    if b.component_count() != bars + dots {
        return Rational::zero();
    }
    let fact = |n: u32| -> Rational { (1..=n).map(|k| Rational::from_integer(k.into())).product() };
    let mut half = Rational::from_integer(1.into());
    for _ in 0..dots {
        half *= frac(1, 2);
    }
    half / (fact(bars) * fact(dots))
}

/// Rows where the closed form disagrees with either reading.
pub fn initial_slice(engine: &Engine, max_degree: u32) -> Result<Vec<InitialSliceRow>> {
    let mut rows = Vec::new();
    for k in 0..=max_degree {
        let layer = engine.refined_layer(k, 0, 0, 0)?;
        for (b, v) in layer.iter() {
            let closed = closed_form(b);
            if closed != v.acute || closed != v.total() {
                rows.push(InitialSliceRow {
                    b: b.clone(),
                    closed_form: closed,
                    each: v.acute.clone(),
                    sum: v.total(),
                });
            }
        }
    }
    Ok(rows)
}

/// Every disagreement between the published tables and operators and the
/// normative gluing step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub dot_weight: String,
    pub max_degree: u32,
    pub max_points: u32,
    pub tables: Vec<DiffEntry>,
    pub operators: Vec<OperatorTermDiff>,
    pub initial_slice: Vec<InitialSliceRow>,
}

impl ConsistencyReport {
    pub fn build(conv: Convention, max_degree: u32, max_points: u32) -> Result<ConsistencyReport> {
        let engine = Engine::new(conv);
        let mut operators = Vec::new();
        for dir in Direction::ALL {
            operators.extend(operator_diff(dir, max_degree, conv)?);
        }
        Ok(ConsistencyReport {
            dot_weight: conv.dot_weight.as_str().to_string(),
            max_degree,
            max_points,
            tables: literal_rule_diff(max_degree, max_points, &engine)?,
            operators,
            initial_slice: initial_slice(&engine, max_degree)?,
        })
    }

    /// Discrepancy families that occur, as `(source, family)` with source a
    /// table or operator name.
    pub fn families(&self) -> Vec<(String, DiscrepancyFamily)> {
        let mut out: Vec<(String, DiscrepancyFamily)> = Vec::new();
        for d in &self.tables {
            for f in &d.families {
                out.push((format!("table:{}", d.table.as_str()), *f));
            }
        }
        for d in &self.operators {
            out.push((format!("operator:{}", d.direction.as_str()), d.family));
        }
        if !self.initial_slice.is_empty() {
            out.push(("initial-slice".into(), DiscrepancyFamily::InitialSlice));
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(&serde_json::to_value(self).expect("report serializes")),
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "# consistency report").unwrap();
        writeln!(
            w,
            "dot_weight={} max_degree={} max_points={}",
            self.dot_weight, self.max_degree, self.max_points
        )
        .unwrap();
        writeln!(w, "\n## families").unwrap();
        for (source, family) in self.families() {
            writeln!(w, "{source} {}", family.as_str()).unwrap();
        }
        writeln!(w, "\n## tables ({} values)", self.tables.len()).unwrap();
        for d in &self.tables {
            let split = match (d.acute, d.grave) {
                (Some(a), Some(g)) => format!("({}, {a}, {g})", d.m),
                _ => format!("({}, {})", d.m, d.points),
            };
            let fams: Vec<&str> = d.families.iter().map(|f| f.as_str()).collect();
            writeln!(
                w,
                "{} {split} {} printed={} normative={} ratio={} [{}]",
                d.table.as_str(),
                d.b,
                to_text(&d.printed),
                to_text(&d.normative),
                d.ratio.as_deref().unwrap_or("-"),
                fams.join(",")
            )
            .unwrap();
        }
        writeln!(w, "\n## operators ({} terms)", self.operators.len()).unwrap();
        for d in &self.operators {
            writeln!(
                w,
                "{} p[{}] d[{}] literal={} derived={} ratio={} [{}]",
                d.direction.as_str(),
                d.multiplier,
                d.derivatives,
                to_text(&d.literal),
                to_text(&d.derived),
                d.ratio.as_deref().unwrap_or("-"),
                d.family.as_str()
            )
            .unwrap();
        }
        writeln!(w, "\n## initial slice ({} monomials)", self.initial_slice.len()).unwrap();
        for r in &self.initial_slice {
            writeln!(
                w,
                "{} closed_form={} each={} sum={}",
                r.b,
                to_text(&r.closed_form),
                to_text(&r.each),
                to_text(&r.sum)
            )
            .unwrap();
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("section,source,index,monomial,other,printed,normative,families\n");
        for d in &self.tables {
            let index = match (d.acute, d.grave) {
                (Some(a), Some(g)) => format!("{} {a} {g}", d.m),
                _ => format!("{} {}", d.m, d.points),
            };
            let fams: Vec<&str> = d.families.iter().map(|f| f.as_str()).collect();
            writeln!(
                out,
                "table,{},{index},{},,{},{},{}",
                d.table.as_str(),
                d.b,
                to_machine(&d.printed),
                to_machine(&d.normative),
                fams.join(" ")
            )
            .unwrap();
        }
        for d in &self.operators {
            writeln!(
                out,
                "operator,{},,{},{},{},{},{}",
                d.direction.as_str(),
                d.multiplier,
                d.derivatives,
                to_machine(&d.literal),
                to_machine(&d.derived),
                d.family.as_str()
            )
            .unwrap();
        }
        for r in &self.initial_slice {
            writeln!(
                out,
                "initial-slice,,0 0 0,{},{},{},{},initial-slice",
                r.b,
                to_machine(&r.sum),
                to_machine(&r.closed_form),
                to_machine(&r.each)
            )
            .unwrap();
        }
        out
    }
}

/// `h(1, 1, b)` along both reduction orders.
pub struct RoutesReport {
    pub dot_weight: String,
    pub max_degree: u32,
    pub rows: Vec<RouteRow>,
}

impl RoutesReport {
    pub fn build(conv: Convention, max_degree: u32) -> Result<RoutesReport> {
        Ok(RoutesReport {
            dot_weight: conv.dot_weight.as_str().to_string(),
            max_degree,
            rows: route_commutation_report(max_degree, conv)?,
        })
    }

    pub fn nonzero(&self) -> usize {
        self.rows.iter().filter(|r| !r.difference.is_zero()).count()
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => {
                out = pretty(&json!({
                    "dot_weight": self.dot_weight,
                    "max_degree": self.max_degree,
                    "nonzero": self.nonzero(),
                    "rows": self.rows,
                }));
            }
            Format::Csv => {
                out.push_str("b,boundary_first,interior_first,difference\n");
                for r in &self.rows {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        r.b,
                        to_machine(&r.boundary_first),
                        to_machine(&r.interior_first),
                        to_machine(&r.difference)
                    )
                    .unwrap();
                }
            }
            Format::Text => {
                writeln!(
                    out,
                    "# h(1, 1, b): boundary point removed first vs interior point first"
                )
                .unwrap();
                writeln!(
                    out,
                    "dot_weight={} max_degree={} nonzero={}",
                    self.dot_weight,
                    self.max_degree,
                    self.nonzero()
                )
                .unwrap();
                for r in &self.rows {
                    writeln!(
                        out,
                        "{} {} {} {}",
                        r.b,
                        to_text(&r.boundary_first),
                        to_text(&r.interior_first),
                        to_text(&r.difference)
                    )
                    .unwrap();
                }
            }
        }
        out
    }
}

/// `∏_i w(i)^{sD_i(b)}`: rescales a value to the other dot weight.
pub fn dot_scale(b: &BoundaryMonomial, conv: Convention) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    for &(g, e) in b.powers() {
        if g.family() == Family::Dot {
            for _ in 0..e {
                acc *= Rational::from_integer(conv.dot_weight(g.index()).into());
            }
        }
    }
    acc
}
