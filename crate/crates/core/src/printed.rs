//! The recursion tables exactly as published, used as a diagnostic.
//!
//! Each table expresses a new value at `b` as a sum of coefficients times
//! old values at predecessors `b · x / y`, with multiplicities `s` read off
//! `b` itself. The coefficients here are transcribed literally, including
//! the ordered double sums; [`literal_rule_diff`] compares one step of each
//! table with the normative gluing step and lists every disagreement.
//!
//! One misprint is read charitably: a term of the interior table that names
//! the previous value `h(m, ḿ, ḿ, ...)` is taken to mean `h(m, m̂, ...)` like
//! its neighbours.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::correlators::SimpleKind;
use crate::engine::moves::predecessors;
use crate::engine::Engine;
use crate::error::Result;
use crate::monomial::{BoundaryMonomial, Convention, Family, Generator};
use crate::rational::{frac, int, Rational};
use crate::Layer;

/// A published recursion table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrintedTable {
    /// `h́(m, ḿ + 1, m̀, b)` from totals.
    Acute,
    /// `h̀(m, ḿ, m̀ + 1, b)` from totals.
    Grave,
    /// `h(m, m̂ + 1, b)`: acute plus grave.
    BoundaryTotal,
    /// `h(m + 1, m̂, b)`.
    Interior,
}

impl PrintedTable {
    pub const ALL: [PrintedTable; 4] = [
        PrintedTable::Acute,
        PrintedTable::Grave,
        PrintedTable::BoundaryTotal,
        PrintedTable::Interior,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PrintedTable::Acute => "acute",
            PrintedTable::Grave => "grave",
            PrintedTable::BoundaryTotal => "boundary-total",
            PrintedTable::Interior => "interior",
        }
    }
}

/// Why a printed coefficient differs from the normative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyFamily {
    /// A grave component traded for a dot of the same index.
    DotExchange,
    /// The predecessor equals the target: a pattern rewritten into itself.
    SelfPair,
    /// The closed form of the generating function at zero points.
    InitialSlice,
    Other,
}

impl DiscrepancyFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            DiscrepancyFamily::DotExchange => "dot-exchange",
            DiscrepancyFamily::SelfPair => "self-pair",
            DiscrepancyFamily::InitialSlice => "initial-slice",
            DiscrepancyFamily::Other => "other",
        }
    }
}

/// Classify a rewrite `target <- pred` by its shape.
pub fn classify(target: &BoundaryMonomial, pred: &BoundaryMonomial) -> DiscrepancyFamily {
    if target == pred {
        return DiscrepancyFamily::SelfPair;
    }
    for g in target.generators() {
        let swapped = match g.family() {
            Family::Grave => Generator::dot(g.index()),
            Family::Dot => Generator::grave(g.index()),
            _ => continue,
        };
        let one = |x: Generator| BoundaryMonomial::from_generators([x]);
        if target.exchange(&one(swapped), &one(g)).as_ref() == Some(pred) {
            return DiscrepancyFamily::DotExchange;
        }
    }
    DiscrepancyFamily::Other
}

struct Terms<'a> {
    b: &'a BoundaryMonomial,
    out: BTreeMap<BoundaryMonomial, Rational>,
}

impl Terms<'_> {
    /// `coef · h(b · num / den)`, read as `(b / den) · num`: the term is
    /// present only when `b` contains `den`.
    fn add(&mut self, coef: Rational, num: &[Generator], den: &[Generator]) {
        let num = BoundaryMonomial::from_generators(num.iter().copied());
        let den = BoundaryMonomial::from_generators(den.iter().copied());
        if let Some(rest) = self.b.divide(&den) {
            *self.out.entry(rest.mul(&num)).or_insert_with(Rational::zero) += coef;
        }
    }

    /// `s_g(b) + 1` as a rational.
    fn s1(&self, g: Generator) -> Rational {
        int(i64::from(self.b.multiplicity(g)) + 1)
    }
}

fn ui(n: u32) -> Rational {
    int(i64::from(n))
}

fn delta(a: u32, b: u32) -> Rational {
    if a == b {
        int(1)
    } else {
        Rational::zero()
    }
}

/// `(s_x + 1)(s_y + 1) + δ (s_x + 1)`.
fn pair_mult(t: &Terms, x: Generator, y: Generator) -> Rational {
    let base = t.s1(x) * t.s1(y);
    if x == y {
        base + t.s1(x)
    } else {
        base
    }
}

fn min_len(gens: &[Generator]) -> Rational {
    ui(gens.iter().map(|g| g.length()).min().expect("nonempty"))
}

fn acute_terms(t: &mut Terms, n: u32) {
    use Generator as G;
    for i in 1..=n {
        t.add(frac(i64::from(i), 2) * t.s1(G::dot(i)), &[G::dot(i)], &[G::grave(i)]);
    }
    for i in 1..=n {
        for j in 1..=n {
            t.add(t.s1(G::bar(i + j)), &[G::bar(i + j)], &[G::bar(i), G::grave(j)]);
            t.add(t.s1(G::grave(i + j)), &[G::grave(i + j)], &[G::grave(i), G::grave(j)]);
            t.add(
                t.s1(G::acute(i + j - 1)),
                &[G::acute(i + j - 1)],
                &[G::bar(i), G::bar(j)],
            );
        }
    }
}

fn grave_terms(t: &mut Terms, n: u32) {
    use Generator as G;
    for i in 1..=n {
        t.add(t.s1(G::grave(i)), &[G::grave(i)], &[G::dot(i)]);
    }
    for i in 1..=n {
        for j in 1..=n {
            t.add(
                int(2) * t.s1(G::bar(i)) * t.s1(G::grave(j)),
                &[G::bar(i), G::grave(j)],
                &[G::bar(i + j)],
            );
            t.add(
                int(2) * pair_mult(t, G::grave(i), G::grave(j)),
                &[G::grave(i), G::grave(j)],
                &[G::grave(i + j)],
            );
            if i + j > 1 {
                t.add(
                    frac(1, 2) * pair_mult(t, G::bar(i), G::bar(j)),
                    &[G::bar(i), G::bar(j)],
                    &[G::acute(i + j - 1)],
                );
            }
        }
    }
}

fn interior_terms(t: &mut Terms, n: u32) {
    use Generator as G;
    for i in 1..=n {
        for j in 1..=n {
            let (di, dj, dij) = (G::dot(i), G::dot(j), G::dot(i + j));
            t.add(frac(i64::from(i + j), 2) * t.s1(dij), &[dij], &[di, dj]);
            t.add(frac(i64::from(i * j), 2) * pair_mult(t, di, dj), &[di, dj], &[dij]);
            let bj = G::bar(j);
            let lb = ui(bj.length());
            t.add(lb.clone() * t.s1(G::bar(i + j)), &[G::bar(i + j)], &[di, bj]);
            t.add(ui(i) * lb * t.s1(di) * t.s1(bj), &[di, bj], &[G::bar(i + j)]);
            for make in [G::acute as fn(u32) -> Generator, G::grave] {
                let xj = make(j);
                let lx = ui(xj.length());
                t.add(int(2) * lx.clone() * t.s1(make(i + j)), &[make(i + j)], &[di, xj]);
                t.add(int(2) * ui(i) * lx * t.s1(di) * t.s1(xj), &[di, xj], &[make(i + j)]);
            }
        }
    }
    // four-index sums; all indices range over 1..=n
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if i + j == k + l {
                        for make in [G::acute as fn(u32) -> Generator, G::grave] {
                            let (bi, xj, bk, xl) = (G::bar(i), make(j), G::bar(k), make(l));
                            t.add(
                                int(2) * min_len(&[bi, xj, bk, xl]) * t.s1(bi) * t.s1(xj),
                                &[bi, xj],
                                &[bk, xl],
                            );
                        }
                        let dd = (int(1) + delta(i, j)) * (int(1) + delta(k, l));
                        let (bi, bj, bk, bl) = (G::bar(i), G::bar(j), G::bar(k), G::bar(l));
                        t.add(
                            dd.clone() * frac(1, 4) * min_len(&[bi, bj, bk, bl]) * pair_mult(t, bi, bj),
                            &[bi, bj],
                            &[bk, bl],
                        );
                        for make in [G::acute as fn(u32) -> Generator, G::grave] {
                            let (xi, xj, xk, xl) = (make(i), make(j), make(k), make(l));
                            t.add(
                                dd.clone() * min_len(&[xi, xj, xk, xl]) * pair_mult(t, xi, xj),
                                &[xi, xj],
                                &[xk, xl],
                            );
                        }
                    }
                    if i + j + 1 == k + l {
                        let (ai, gj, bk, bl) = (G::acute(i), G::grave(j), G::bar(k), G::bar(l));
                        t.add(
                            int(2) * (int(1) + delta(k, l)) * min_len(&[ai, gj, bk, bl]) * t.s1(ai) * t.s1(gj),
                            &[ai, gj],
                            &[bk, bl],
                        );
                    }
                    if i + j == k + l + 1 {
                        let (bi, bj, ak, gl) = (G::bar(i), G::bar(j), G::acute(k), G::grave(l));
                        t.add(
                            frac(1, 2) * (int(1) + delta(i, j)) * min_len(&[bi, bj, ak, gl]) * pair_mult(t, bi, bj),
                            &[bi, bj],
                            &[ak, gl],
                        );
                    }
                }
            }
        }
    }
}

/// The printed table as a map predecessor -> coefficient, for target `b`.
pub fn printed_predecessors(table: PrintedTable, b: &BoundaryMonomial) -> BTreeMap<BoundaryMonomial, Rational> {
    let mut t = Terms {
        b,
        out: BTreeMap::new(),
    };
    // no index can exceed the degree
    let n = b.degree().max(1);
    match table {
        PrintedTable::Acute => acute_terms(&mut t, n),
        PrintedTable::Grave => grave_terms(&mut t, n),
        PrintedTable::BoundaryTotal => {
            acute_terms(&mut t, n);
            grave_terms(&mut t, n);
        }
        PrintedTable::Interior => interior_terms(&mut t, n),
    }
    t.out.retain(|_, c| !c.is_zero());
    t.out
}

/// The normative counterpart of [`printed_predecessors`].
pub fn normative_predecessors(
    table: PrintedTable,
    b: &BoundaryMonomial,
    conv: Convention,
) -> BTreeMap<BoundaryMonomial, Rational> {
    let kinds: &[SimpleKind] = match table {
        PrintedTable::Acute => &[SimpleKind::AcuteSimple],
        PrintedTable::Grave => &[SimpleKind::GraveSimple],
        PrintedTable::BoundaryTotal => &[SimpleKind::AcuteSimple, SimpleKind::GraveSimple],
        PrintedTable::Interior => &[SimpleKind::InteriorSimple],
    };
    let mut out: BTreeMap<BoundaryMonomial, Rational> = BTreeMap::new();
    for &kind in kinds {
        for (pred, w) in predecessors(kind, b, conv) {
            *out.entry(pred).or_insert_with(Rational::zero) += w;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// One predecessor whose printed and normative weights differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermDiff {
    pub predecessor: BoundaryMonomial,
    #[serde(with = "crate::rational::json")]
    pub printed: Rational,
    #[serde(with = "crate::rational::json")]
    pub normative: Rational,
    pub family: DiscrepancyFamily,
}

/// Predecessor weights on which the printed table and the normative step
/// disagree at target `b`.
pub fn coefficient_diff(table: PrintedTable, b: &BoundaryMonomial, conv: Convention) -> Vec<TermDiff> {
    let printed = printed_predecessors(table, b);
    let normative = normative_predecessors(table, b, conv);
    let mut keys: Vec<&BoundaryMonomial> = printed.keys().chain(normative.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|pred| {
            let p = printed.get(pred).cloned().unwrap_or_else(Rational::zero);
            let q = normative.get(pred).cloned().unwrap_or_else(Rational::zero);
            (p != q).then(|| TermDiff {
                family: classify(b, pred),
                predecessor: pred.clone(),
                printed: p,
                normative: q,
            })
        })
        .collect()
}

/// A value on which one printed step disagrees with the normative step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    pub table: PrintedTable,
    /// Point counts of the value being produced. `acute` and `grave` are
    /// absent for the tables that work with totals.
    pub m: u32,
    pub points: u32,
    pub acute: Option<u32>,
    pub grave: Option<u32>,
    pub b: BoundaryMonomial,
    #[serde(with = "crate::rational::json")]
    pub printed: Rational,
    #[serde(with = "crate::rational::json")]
    pub normative: Rational,
    /// `printed / normative`, when the latter is nonzero.
    pub ratio: Option<String>,
    pub families: Vec<DiscrepancyFamily>,
}

fn apply(weights: &BTreeMap<BoundaryMonomial, Rational>, layer: &Layer) -> Rational {
    weights
        .iter()
        .filter_map(|(pred, w)| layer.get(pred).map(|h| w * h))
        .sum()
}

fn add_layers(a: &Layer, b: &Layer) -> Layer {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(k.clone()).or_insert_with(Rational::zero) += v;
    }
    out
}

/// Compare one step of every printed table with the normative step, for all
/// targets of degree at most `max_degree` whose total point count is at most
/// `max_points`. Both steps start from the same normative previous values.
pub fn literal_rule_diff(max_degree: u32, max_points: u32, engine: &Engine) -> Result<Vec<DiffEntry>> {
    let conv = engine.convention();
    let mut out = Vec::new();
    for table in PrintedTable::ALL {
        for k in 0..=max_degree {
            let targets = BoundaryMonomial::enumerate(k);
            let weights: Vec<_> = targets
                .iter()
                .map(|b| (printed_predecessors(table, b), normative_predecessors(table, b, conv)))
                .collect();
            // previous indices (m, ḿ, m̀) whose successor stays within max_points
            for total in 0..max_points {
                for m in 0..=total {
                    let hat = total - m;
                    let splits: Vec<(u32, u32)> = match table {
                        PrintedTable::Acute | PrintedTable::Grave => (0..=hat).map(|a| (a, hat - a)).collect(),
                        _ => vec![(hat, 0)],
                    };
                    for (a, g) in splits {
                        let prev = match table {
                            PrintedTable::Acute | PrintedTable::Grave => {
                                let layer = engine.totals_layer(k, m, a, g)?;
                                Layer::clone(&layer)
                            }
                            _ => {
                                let mut acc = Layer::new();
                                for x in 0..=hat {
                                    let layer = engine.totals_layer(k, m, x, hat - x)?;
                                    acc = add_layers(&acc, &layer);
                                }
                                acc
                            }
                        };
                        for (b, (pw, nw)) in targets.iter().zip(&weights) {
                            let printed = apply(pw, &prev);
                            let normative = apply(nw, &prev);
                            if printed == normative {
                                continue;
                            }
                            let mut families: Vec<DiscrepancyFamily> = coefficient_diff(table, b, conv)
                                .into_iter()
                                .filter(|d| prev.get(&d.predecessor).is_some_and(|h| !h.is_zero()))
                                .map(|d| d.family)
                                .collect();
                            families.sort();
                            families.dedup();
                            let (m_out, acute, grave, points) = match table {
                                PrintedTable::Acute => (m, Some(a + 1), Some(g), hat + 1),
                                PrintedTable::Grave => (m, Some(a), Some(g + 1), hat + 1),
                                PrintedTable::BoundaryTotal => (m, None, None, hat + 1),
                                PrintedTable::Interior => (m + 1, None, None, hat),
                            };
                            out.push(DiffEntry {
                                table,
                                m: m_out,
                                points,
                                acute,
                                grave,
                                b: b.clone(),
                                ratio: (!normative.is_zero())
                                    .then(|| crate::rational::to_text(&(&printed / &normative))),
                                printed,
                                normative,
                                families,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> BoundaryMonomial {
        text.parse().unwrap()
    }

    #[test]
    fn boundary_tables_agree_under_index() {
        for k in 0..=6 {
            for b in BoundaryMonomial::enumerate(k) {
                for table in [PrintedTable::Acute, PrintedTable::Grave, PrintedTable::BoundaryTotal] {
                    assert!(
                        coefficient_diff(table, &b, Convention::INDEX).is_empty(),
                        "{table:?} {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn interior_table_differs_only_on_self_pairs() {
        for k in 0..=6 {
            for b in BoundaryMonomial::enumerate(k) {
                for d in coefficient_diff(PrintedTable::Interior, &b, Convention::INDEX) {
                    assert_eq!(d.family, DiscrepancyFamily::SelfPair, "{b} {d:?}");
                }
            }
        }
        let diffs = coefficient_diff(PrintedTable::Interior, &m("B1^2"), Convention::INDEX);
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].printed, int(12));
        assert_eq!(diffs[0].normative, int(1));
    }

    #[test]
    fn dot_term_flagged_under_twice_index() {
        let d = coefficient_diff(PrintedTable::Acute, &m("G1"), Convention::TWICE_INDEX);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].family, DiscrepancyFamily::DotExchange);
        assert_eq!(d[0].printed, frac(1, 2));
        assert_eq!(d[0].normative, int(1));
    }

    #[test]
    fn classify_shapes() {
        assert_eq!(classify(&m("G1*B1"), &m("D1*B1")), DiscrepancyFamily::DotExchange);
        assert_eq!(classify(&m("B1^2"), &m("B1^2")), DiscrepancyFamily::SelfPair);
        assert_eq!(classify(&m("A1"), &m("B1^2")), DiscrepancyFamily::Other);
    }

    #[test]
    fn spec_diff_examples() {
        let e = Engine::new(Convention::INDEX);
        let rows = literal_rule_diff(2, 1, &e).unwrap();
        assert!(!rows.iter().any(|r| r.b == m("G1") && r.points == 1));
        let e = Engine::new(Convention::TWICE_INDEX);
        let rows = literal_rule_diff(2, 1, &e).unwrap();
        assert!(rows
            .iter()
            .any(|r| r.table == PrintedTable::Acute && r.families == [DiscrepancyFamily::DotExchange]));
        assert!(literal_rule_diff(0, 0, &e).unwrap().is_empty());
    }
}
