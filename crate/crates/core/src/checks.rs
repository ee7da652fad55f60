//! Self-check suites at desk-scale bounds.
//!
//! Every suite is a list of named sub-checks. A sub-check either passes with
//! a one-line summary or fails with the first counterexample it met.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::classical::cut_and_join_check;
use crate::correlators::{contraction_step, SimpleKind};
use crate::engine::moves::fast_step;
use crate::engine::{Engine, Evaluation, GraveSide, Route};
use crate::error::{Error, Result};
use crate::monomial::{BoundaryMonomial, Convention};
use crate::rational::{frac, to_text};
use crate::report::dot_scale;
use crate::series::{build_operator, from_engine, residual, Direction, SeriesBounds, Source};
use crate::Layer;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Pde,
    Classical,
    Symmetry,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Oracle, Suite::Pde, Suite::Classical, Suite::Symmetry];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Pde => "pde",
            Suite::Classical => "classical",
            Suite::Symmetry => "symmetry",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown check suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    /// `Ok(summary)` or `Err(counterexample)`.
    pub outcome: std::result::Result<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub items: Vec<CheckItem>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.outcome.is_ok())
    }

    pub fn first_counterexample(&self) -> Option<&str> {
        self.items
            .iter()
            .find_map(|i| i.outcome.as_ref().err().map(String::as_str))
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            match &item.outcome {
                Ok(s) => writeln!(f, "PASS {} {}: {s}", self.suite.as_str(), item.name)?,
                Err(s) => writeln!(f, "FAIL {} {}: {s}", self.suite.as_str(), item.name)?,
            }
        }
        Ok(())
    }
}

type Sub = std::result::Result<String, String>;

fn item(name: &str, outcome: Sub) -> CheckItem {
    CheckItem {
        name: name.to_string(),
        outcome,
    }
}

/// Every `(m, ḿ, m̀)` with `m + ḿ + m̀ <= n`.
pub fn splits(n: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for m in 0..=n {
        for a in 0..=n - m {
            for g in 0..=n - m - a {
                out.push((m, a, g));
            }
        }
    }
    out
}

/// A layer of distinct values, so that no wrong weight cancels by accident.
pub fn generic_layer(k: u32) -> Layer {
    BoundaryMonomial::enumerate(k)
        .into_iter()
        .enumerate()
        .map(|(n, b)| (b, frac(2 * n as i64 + 3, 7 + (n * n) as i64)))
        .collect()
}

const CONVENTIONS: [Convention; 2] = [Convention::INDEX, Convention::TWICE_INDEX];

pub fn run(suite: Suite, conv: Convention) -> Result<CheckOutcome> {
    let items = match suite {
        Suite::Oracle => vec![
            item(
                "local moves vs contraction, generic layers, degree <= 6",
                moves_vs_contraction(6)?,
            ),
            item(
                "fast vs contraction engine, degree <= 5, points <= 3",
                engines_agree(5, 3)?,
            ),
        ],
        Suite::Pde => pde(conv)?,
        Suite::Classical => vec![item("cut-and-join vs brute force, d <= 4, m <= 4", classical(4, 4)?)],
        Suite::Symmetry => vec![
            item(
                "star symmetry, printed grave step, degree <= 5, points <= 3",
                star_symmetry(&Engine::new(conv), 5, 3)?,
            ),
            item(
                "star symmetry, mirrored grave step, degree <= 5, points <= 3",
                star_symmetry(&Engine::new(conv).with_grave_side(GraveSide::Mirrored), 5, 3)?,
            ),
            item("dot-weight covariance, degree <= 5, points <= 3", covariance(5, 3)?),
        ],
    };
    Ok(CheckOutcome { suite, items })
}

pub fn moves_vs_contraction(max_degree: u32) -> Result<Sub> {
    let mut count = 0;
    for conv in CONVENTIONS {
        for k in 0..=max_degree {
            let layer = generic_layer(k);
            for b in BoundaryMonomial::enumerate(k) {
                for kind in SimpleKind::ALL {
                    let fast = fast_step(&layer, kind, &b, conv);
                    let slow = contraction_step(&layer, kind, &b, conv)?;
                    if fast != slow {
                        return Ok(Err(format!(
                            "{kind:?} at {b} ({}): moves {} contraction {}",
                            conv.dot_weight,
                            to_text(&fast),
                            to_text(&slow)
                        )));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(Ok(format!("{count} steps agree")))
}

pub fn engines_agree(max_degree: u32, max_points: u32) -> Result<Sub> {
    let mut count = 0;
    for conv in CONVENTIONS {
        let fast = Engine::new(conv);
        let slow = Engine::new(conv).with_evaluation(Evaluation::Contraction);
        for (m, a, g) in splits(max_points) {
            for k in 0..=max_degree {
                let x = fast.refined_layer(k, m, a, g)?;
                let y = slow.refined_layer(k, m, a, g)?;
                for (b, v) in x.iter() {
                    let w = &y[b];
                    if v != w {
                        return Ok(Err(format!(
                            "h({m}, {a}, {g}, {b}) ({}): fast {}+{} contraction {}+{}",
                            conv.dot_weight,
                            to_text(&v.acute),
                            to_text(&v.grave),
                            to_text(&w.acute),
                            to_text(&w.grave)
                        )));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(Ok(format!("{count} refined values agree")))
}

pub const PDE_BOUNDS: SeriesBounds = SeriesBounds {
    m: 2,
    acute: 2,
    grave: 2,
    k: 6,
};

fn first_nonzero(r: &crate::series::TruncatedSeries<BoundaryMonomial>) -> Option<String> {
    r.iter()
        .find(|(_, v)| !v.is_zero())
        .map(|((m, a, g, b), v)| format!("({m}, {a}, {g}, {b}) = {}", to_text(v)))
}

fn pde(conv: Convention) -> Result<Vec<CheckItem>> {
    let boundary_first = Engine::new(conv);
    let interior_first = Engine::new(conv).with_route(Route::InteriorFirst);
    let (a, g, h) = from_engine(PDE_BOUNDS, &boundary_first)?;
    let (ai, gi, hi) = from_engine(PDE_BOUNDS, &interior_first)?;
    let mut items = Vec::new();
    let mut zero = |name: String, r: crate::series::TruncatedSeries<BoundaryMonomial>| {
        let outcome = match first_nonzero(&r) {
            None => Ok("residual vanishes identically".to_string()),
            Some(x) => Err(format!("nonzero residual at {x}")),
        };
        items.push(CheckItem { name, outcome });
    };
    for dir in [Direction::Beta, Direction::Gamma] {
        let op = build_operator(dir, Source::Derived, PDE_BOUNDS.k, conv)?;
        zero(
            format!("derived {} operator, boundary-first series", dir.as_str()),
            residual(dir, &a, &g, &h, &op)?,
        );
    }
    let alpha = build_operator(Direction::Alpha, Source::Derived, PDE_BOUNDS.k, conv)?;
    zero(
        "derived alpha operator, interior-first series".into(),
        residual(Direction::Alpha, &ai, &gi, &hi, &alpha)?,
    );
    if conv == Convention::INDEX {
        let op = build_operator(Direction::Gamma, Source::Literal, PDE_BOUNDS.k, conv)?;
        zero(
            "literal gamma operator, boundary-first series".into(),
            residual(Direction::Gamma, &a, &g, &h, &op)?,
        );
    }
    // The boundary-first series fails the alpha equation by exactly the
    // difference between the two routes.
    let r = residual(Direction::Alpha, &a, &g, &h, &alpha)?;
    let mut outcome = Ok(format!(
        "{} nonzero coefficients, all equal to the route difference",
        r.nonzero_count()
    ));
    'scan: for pa in 0..PDE_BOUNDS.acute {
        for pg in 0..=PDE_BOUNDS.grave {
            for b in BoundaryMonomial::enumerate_up_to(PDE_BOUNDS.k) {
                let expected = boundary_first.h_split(1, pa, pg, &b)? - interior_first.h_split(1, pa, pg, &b)?;
                let got = r.get(0, pa, pg, &b);
                if got != expected {
                    outcome = Err(format!(
                        "(0, {pa}, {pg}, {b}): residual {} route difference {}",
                        to_text(&got),
                        to_text(&expected)
                    ));
                    break 'scan;
                }
            }
        }
    }
    items.push(CheckItem {
        name: "alpha residual of boundary-first series at m = 0".into(),
        outcome,
    });
    Ok(items)
}

pub fn classical(d_max: u32, m_max: u32) -> Result<Sub> {
    let rows = cut_and_join_check(d_max, m_max)?;
    Ok(match rows.iter().find(|r| !r.agrees()) {
        None => Ok(format!("{} coefficients agree", rows.len())),
        Some(r) => Err(format!(
            "<{}>^{}: evolved {} brute force {}",
            r.partition,
            r.m,
            to_text(&r.evolved),
            to_text(&r.bruteforce)
        )),
    })
}

pub fn star_symmetry(e: &Engine, max_degree: u32, max_points: u32) -> Result<Sub> {
    let mut count = 0;
    for (m, a, g) in splits(max_points) {
        for k in 0..=max_degree {
            let here = e.refined_layer(k, m, a, g)?;
            let there = e.refined_layer(k, m, g, a)?;
            for (b, v) in here.iter() {
                let w = &there[&b.star()];
                if v.acute != w.grave {
                    return Ok(Err(format!(
                        "h'({m}, {a}, {g}, {b}) = {} but h`({m}, {g}, {a}, {}) = {}",
                        to_text(&v.acute),
                        b.star(),
                        to_text(&w.grave)
                    )));
                }
                count += 1;
            }
        }
    }
    for m in 0..=max_points {
        for points in 0..=max_points - m {
            for b in BoundaryMonomial::enumerate_up_to(max_degree) {
                let x = e.h_total(m, points, &b)?;
                let y = e.h_total(m, points, &b.star())?;
                if x != y {
                    return Ok(Err(format!(
                        "h({m}, {points}, {b}) = {} but h({m}, {points}, {}) = {}",
                        to_text(&x),
                        b.star(),
                        to_text(&y)
                    )));
                }
                count += 1;
            }
        }
    }
    Ok(Ok(format!("{count} values symmetric")))
}

pub fn covariance(max_degree: u32, max_points: u32) -> Result<Sub> {
    let index = Engine::new(Convention::INDEX);
    let twice = Engine::new(Convention::TWICE_INDEX);
    let mut count = 0;
    for (m, a, g) in splits(max_points) {
        for k in 0..=max_degree {
            let x = index.refined_layer(k, m, a, g)?;
            let y = twice.refined_layer(k, m, a, g)?;
            for (b, v) in x.iter() {
                let w = &y[b];
                let si = dot_scale(b, Convention::INDEX);
                let st = dot_scale(b, Convention::TWICE_INDEX);
                if &v.acute * &si != &w.acute * &st || &v.grave * &si != &w.grave * &st {
                    return Ok(Err(format!(
                        "({m}, {a}, {g}, {b}): index {}+{} twice-index {}+{}",
                        to_text(&v.acute),
                        to_text(&v.grave),
                        to_text(&w.acute),
                        to_text(&w.grave)
                    )));
                }
                count += 1;
            }
        }
    }
    Ok(Ok(format!("{count} refined values covariant")))
}
