//! Truncated generating functions and the differential operators acting on
//! them.
//!
//! A series stores the coefficient of
//! `α^m/m! · β^ḿ/ḿ! · γ^m̀/m̀! · p_b` for `m, ḿ, m̀` and the p-weight of `b`
//! within fixed bounds. The operators are finite sums of terms
//! `coef · p_P · ∂_R` with `weight(P) = weight(R)`, so each degree block is
//! mapped to itself and nothing is lost to truncation.
//!
//! ```
//! use disk_hurwitz::engine::Engine;
//! use disk_hurwitz::monomial::Convention;
//! use disk_hurwitz::series::{build_operator, from_engine, residual, Direction, SeriesBounds, Source};
//!
//! let engine = Engine::new(Convention::INDEX);
//! let bounds = SeriesBounds { m: 1, acute: 1, grave: 1, k: 4 };
//! let (a, g, h) = from_engine(bounds, &engine).unwrap();
//! let op = build_operator(Direction::Gamma, Source::Literal, 4, Convention::INDEX).unwrap();
//! assert!(residual(Direction::Gamma, &a, &g, &h, &op).unwrap().is_zero());
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::correlators::{boundary_matches, interior_matches, SimpleKind};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::monomial::{BoundaryMonomial, Convention, Family, Generator};
use crate::printed::{classify, DiscrepancyFamily};
use crate::rational::{frac, int, Rational, RationalJson};

/// A monomial in commuting p-variables.
pub trait PMonomial: Clone + Ord + fmt::Display {
    fn weight(&self) -> u32;
    fn times(&self, other: &Self) -> Self;
    /// `self / other` when `other` divides `self`.
    fn quotient(&self, other: &Self) -> Option<Self>;
    /// The constant produced by `∂_other` acting on `p_self`.
    fn derivative_factor(&self, other: &Self) -> u64;
}

impl PMonomial for BoundaryMonomial {
    fn weight(&self) -> u32 {
        self.degree()
    }

    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn quotient(&self, other: &Self) -> Option<Self> {
        self.divide(other)
    }

    fn derivative_factor(&self, other: &Self) -> u64 {
        self.falling_factorial(other)
    }
}

/// `Σ coef · p_multiplier · ∂_derivatives`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyOperator<M: PMonomial> {
    /// Largest p-weight the term list is complete for.
    pub max_weight: u32,
    terms: BTreeMap<(M, M), Rational>,
}

impl<M: PMonomial> PolyOperator<M> {
    pub fn new(max_weight: u32) -> PolyOperator<M> {
        PolyOperator {
            max_weight,
            terms: BTreeMap::new(),
        }
    }

    /// Add `coef · p_multiplier · ∂_derivatives`; terms above the weight
    /// bound are ignored.
    pub fn add_term(&mut self, multiplier: M, derivatives: M, coef: Rational) {
        assert_eq!(
            multiplier.weight(),
            derivatives.weight(),
            "operator terms preserve weight: {multiplier} vs {derivatives}"
        );
        if multiplier.weight() > self.max_weight || coef.is_zero() {
            return;
        }
        let key = (multiplier, derivatives);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Terms as `((multiplier, derivatives), coef)`, in canonical order.
    pub fn terms(&self) -> &BTreeMap<(M, M), Rational> {
        &self.terms
    }

    pub fn coefficient(&self, multiplier: &M, derivatives: &M) -> Rational {
        self.terms
            .get(&(multiplier.clone(), derivatives.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn by_derivative(&self) -> BTreeMap<&M, Vec<(&M, &Rational)>> {
        let mut out: BTreeMap<&M, Vec<(&M, &Rational)>> = BTreeMap::new();
        for ((p, r), c) in &self.terms {
            out.entry(r).or_default().push((p, c));
        }
        out
    }
}

/// Inclusive bounds of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesBounds {
    pub m: u32,
    pub acute: u32,
    pub grave: u32,
    /// Largest p-weight.
    pub k: u32,
}

/// `(m, ḿ, m̀, monomial)`.
pub type SeriesKey<M> = (u32, u32, u32, M);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<M: PMonomial> {
    pub bounds: SeriesBounds,
    coeffs: BTreeMap<SeriesKey<M>, Rational>,
}

impl<M: PMonomial> TruncatedSeries<M> {
    pub fn new(bounds: SeriesBounds) -> TruncatedSeries<M> {
        TruncatedSeries {
            bounds,
            coeffs: BTreeMap::new(),
        }
    }

    fn in_bounds(&self, m: u32, a: u32, g: u32, mono: &M) -> bool {
        m <= self.bounds.m && a <= self.bounds.acute && g <= self.bounds.grave && mono.weight() <= self.bounds.k
    }

    pub fn get(&self, m: u32, a: u32, g: u32, mono: &M) -> Rational {
        self.coeffs
            .get(&(m, a, g, mono.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, m: u32, a: u32, g: u32, mono: M, value: Rational) -> Result<()> {
        if !self.in_bounds(m, a, g, &mono) {
            return Err(Error::Usage(format!(
                "index ({m}, {a}, {g}, {mono}) outside the series bounds"
            )));
        }
        if value.is_zero() {
            self.coeffs.remove(&(m, a, g, mono));
        } else {
            self.coeffs.insert((m, a, g, mono), value);
        }
        Ok(())
    }

    fn add_at(&mut self, key: SeriesKey<M>, value: Rational) {
        let slot = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Nonzero coefficients in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&SeriesKey<M>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient-wise sum; the bounds must agree.
    pub fn plus(&self, other: &TruncatedSeries<M>) -> Result<TruncatedSeries<M>> {
        if self.bounds != other.bounds {
            return Err(Error::Usage("adding series with different bounds".into()));
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_at(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// JSON object `"m,acute,grave,monomial" -> {"num", "den"}`.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for ((m, a, g, mono), v) in &self.coeffs {
            let json = serde_json::to_value(RationalJson::from(v)).expect("plain struct");
            map.insert(format!("{m},{a},{g},{mono}"), json);
        }
        Value::Object(map)
    }
}

/// Apply `op` slice by slice.
pub fn apply<M: PMonomial>(op: &PolyOperator<M>, s: &TruncatedSeries<M>) -> Result<TruncatedSeries<M>> {
    if op.max_weight < s.bounds.k {
        return Err(Error::Usage(format!(
            "operator built up to weight {} applied to a series of weight {}",
            op.max_weight, s.bounds.k
        )));
    }
    let grouped = op.by_derivative();
    let mut out = TruncatedSeries::new(s.bounds);
    for ((m, a, g, mono), v) in &s.coeffs {
        for (r, terms) in &grouped {
            let Some(rest) = mono.quotient(r) else {
                continue;
            };
            let factor = int(mono.derivative_factor(r) as i64) * v;
            for (p, c) in terms {
                out.add_at((*m, *a, *g, rest.times(p)), &factor * *c);
            }
        }
    }
    Ok(out)
}

/// Which parameter a differential equation differentiates in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Acute boundary points: `∂Á/∂β`.
    Beta,
    /// Grave boundary points: `∂H̀/∂γ`.
    Gamma,
    /// Interior points: `∂H/∂α`.
    Alpha,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Beta, Direction::Gamma, Direction::Alpha];

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Beta => "beta",
            Direction::Gamma => "gamma",
            Direction::Alpha => "alpha",
        }
    }

    pub fn kind(self) -> SimpleKind {
        match self {
            Direction::Beta => SimpleKind::AcuteSimple,
            Direction::Gamma => SimpleKind::GraveSimple,
            Direction::Alpha => SimpleKind::InteriorSimple,
        }
    }
}

/// Where an operator's coefficients come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Transcribed from the published formula.
    Literal,
    /// Generated from the three-point correlators.
    Derived,
}

fn mono(gens: &[Generator]) -> BoundaryMonomial {
    BoundaryMonomial::from_generators(gens.iter().copied())
}

fn len(gens: &[Generator]) -> Rational {
    int(i64::from(gens.iter().map(|g| g.length()).min().expect("nonempty")))
}

fn delta(a: u32, b: u32) -> Rational {
    int(i64::from(a == b))
}

fn literal_beta(op: &mut PolyOperator<BoundaryMonomial>, n: u32) {
    use Generator as G;
    for i in 1..=n {
        op.add_term(mono(&[G::grave(i)]), mono(&[G::dot(i)]), int(i64::from(i)));
        for j in 1..=n {
            op.add_term(mono(&[G::bar(i), G::grave(j)]), mono(&[G::bar(i + j)]), int(1));
            op.add_term(mono(&[G::grave(i), G::grave(j)]), mono(&[G::grave(i + j)]), int(1));
            op.add_term(mono(&[G::bar(i), G::bar(j)]), mono(&[G::acute(i + j - 1)]), int(1));
        }
    }
}

fn literal_gamma(op: &mut PolyOperator<BoundaryMonomial>, n: u32) {
    use Generator as G;
    for i in 1..=n {
        op.add_term(mono(&[G::dot(i)]), mono(&[G::grave(i)]), int(1));
        for j in 1..=n {
            op.add_term(mono(&[G::bar(i + j)]), mono(&[G::bar(i), G::grave(j)]), int(2));
            op.add_term(mono(&[G::grave(i + j)]), mono(&[G::grave(i), G::grave(j)]), int(2));
            if i + j > 1 {
                op.add_term(mono(&[G::acute(i + j - 1)]), mono(&[G::bar(i), G::bar(j)]), frac(1, 2));
            }
        }
    }
}

fn literal_alpha(op: &mut PolyOperator<BoundaryMonomial>, n: u32) {
    use Generator as G;
    let ui = |x: u32| int(i64::from(x));
    for i in 1..=n {
        for j in 1..=n {
            let (di, dj) = (G::dot(i), G::dot(j));
            op.add_term(mono(&[di, dj]), mono(&[G::dot(i + j)]), frac(i64::from(i + j), 2));
            op.add_term(mono(&[G::dot(i + j)]), mono(&[di, dj]), frac(i64::from(i * j), 2));
            let bj = G::bar(j);
            op.add_term(mono(&[di, bj]), mono(&[G::bar(i + j)]), ui(bj.length()));
            op.add_term(mono(&[G::bar(i + j)]), mono(&[di, bj]), ui(i * bj.length()));
            for make in [G::acute as fn(u32) -> Generator, G::grave] {
                let xj = make(j);
                op.add_term(mono(&[di, xj]), mono(&[make(i + j)]), ui(2 * xj.length()));
                op.add_term(mono(&[make(i + j)]), mono(&[di, xj]), ui(2 * i * xj.length()));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if i + j == k + l {
                        for make in [G::acute as fn(u32) -> Generator, G::grave] {
                            let (bi, xj, bk, xl) = (G::bar(i), make(j), G::bar(k), make(l));
                            op.add_term(mono(&[bk, xl]), mono(&[bi, xj]), int(2) * len(&[bi, xj, bk, xl]));
                        }
                        let dd = (int(1) + delta(i, j)) * (int(1) + delta(k, l));
                        let (bi, bj, bk, bl) = (G::bar(i), G::bar(j), G::bar(k), G::bar(l));
                        op.add_term(
                            mono(&[bk, bl]),
                            mono(&[bi, bj]),
                            dd.clone() * frac(1, 4) * len(&[bi, bj, bk, bl]),
                        );
                        for make in [G::grave as fn(u32) -> Generator, G::acute] {
                            let (xi, xj, xk, xl) = (make(i), make(j), make(k), make(l));
                            op.add_term(mono(&[xk, xl]), mono(&[xi, xj]), dd.clone() * len(&[xi, xj, xk, xl]));
                        }
                    }
                    if i + j + 1 == k + l {
                        let (ai, gj, bk, bl) = (G::acute(i), G::grave(j), G::bar(k), G::bar(l));
                        op.add_term(
                            mono(&[bk, bl]),
                            mono(&[ai, gj]),
                            int(2) * (int(1) + delta(k, l)) * len(&[ai, gj, bk, bl]),
                        );
                    }
                    if i + j == k + l + 1 {
                        let (bi, bj, ak, gl) = (G::bar(i), G::bar(j), G::acute(k), G::grave(l));
                        op.add_term(
                            mono(&[ak, gl]),
                            mono(&[bi, bj]),
                            frac(1, 2) * (int(1) + delta(i, j)) * len(&[bi, bj, ak, gl]),
                        );
                    }
                }
            }
        }
    }
}

/// `∏` over the components of `r` of 2 (acute, grave), 1 (bar) or `w(i)`
/// (dot): what `|Aut(d r)| / |Aut(d)|` contributes beyond the falling
/// factorial that `∂_r` produces.
fn family_weight(r: &BoundaryMonomial, conv: Convention) -> Rational {
    let mut acc = int(1);
    for g in r.generators() {
        acc *= match g.family() {
            Family::Acute | Family::Grave => int(2),
            Family::Bar => int(1),
            Family::Dot => Rational::from_integer(BigInt::from(conv.dot_weight(g.index()))),
        };
    }
    acc
}

fn derived(op: &mut PolyOperator<BoundaryMonomial>, kind: SimpleKind, k: u32, conv: Convention) -> Result<()> {
    for n in 1..=k {
        let small: Vec<BoundaryMonomial> = BoundaryMonomial::enumerate(n)
            .into_iter()
            .filter(|b| b.component_count() <= 2)
            .collect();
        for p in &small {
            for r in &small {
                let c = r.star();
                let matches = match kind {
                    SimpleKind::InteriorSimple => interior_matches(&c, p, conv)?,
                    _ => boundary_matches(&c, kind, p, conv)?,
                };
                let value: Rational = matches.into_iter().filter(|x| x.consumed == *p).map(|x| x.value).sum();
                if !value.is_zero() {
                    op.add_term(p.clone(), r.clone(), value * family_weight(r, conv));
                }
            }
        }
    }
    Ok(())
}

/// Materialize an operator up to p-weight `k`.
///
/// Derived operators pair every one- and two-component pattern with every
/// other through the correlator tables; literal ones follow the published
/// formulas term by term, with ordered index sums and `|.|` read as lengths.
pub fn build_operator(
    dir: Direction,
    source: Source,
    k: u32,
    conv: Convention,
) -> Result<PolyOperator<BoundaryMonomial>> {
    let mut op = PolyOperator::new(k);
    match source {
        Source::Literal => {
            let n = k.max(1);
            match dir {
                Direction::Beta => literal_beta(&mut op, n),
                Direction::Gamma => literal_gamma(&mut op, n),
                Direction::Alpha => literal_alpha(&mut op, n),
            }
        }
        Source::Derived => derived(&mut op, dir.kind(), k, conv)?,
    }
    Ok(op)
}

/// `(Á, H̀, H)` filled from `engine`.
pub fn from_engine(
    bounds: SeriesBounds,
    engine: &Engine,
) -> Result<(
    TruncatedSeries<BoundaryMonomial>,
    TruncatedSeries<BoundaryMonomial>,
    TruncatedSeries<BoundaryMonomial>,
)> {
    let mut a = TruncatedSeries::new(bounds);
    let mut g = TruncatedSeries::new(bounds);
    let mut h = TruncatedSeries::new(bounds);
    for k in 0..=bounds.k {
        for m in 0..=bounds.m {
            for ac in 0..=bounds.acute {
                for gr in 0..=bounds.grave {
                    let layer = engine.refined_layer(k, m, ac, gr)?;
                    for (b, v) in layer.iter() {
                        a.set(m, ac, gr, b.clone(), v.acute.clone())?;
                        g.set(m, ac, gr, b.clone(), v.grave.clone())?;
                        h.set(m, ac, gr, b.clone(), v.total())?;
                    }
                }
            }
        }
    }
    Ok((a, g, h))
}

/// `∂_dir X - op(H)` where `X` is `Á`, `H̀` or `H` for beta, gamma, alpha.
///
/// Only indices whose shifted index stays within the bounds are compared.
pub fn residual(
    dir: Direction,
    acute: &TruncatedSeries<BoundaryMonomial>,
    grave: &TruncatedSeries<BoundaryMonomial>,
    total: &TruncatedSeries<BoundaryMonomial>,
    op: &PolyOperator<BoundaryMonomial>,
) -> Result<TruncatedSeries<BoundaryMonomial>> {
    let bounds = total.bounds;
    if acute.bounds != bounds || grave.bounds != bounds {
        return Err(Error::Usage("series with different bounds".into()));
    }
    let (target, shift) = match dir {
        Direction::Beta => (acute, (0, 1, 0)),
        Direction::Gamma => (grave, (0, 0, 1)),
        Direction::Alpha => (total, (1, 0, 0)),
    };
    if bounds.m < shift.0 || bounds.acute < shift.1 || bounds.grave < shift.2 {
        return Err(Error::Usage("series bounds leave no room to differentiate".into()));
    }
    let applied = apply(op, total)?;
    let mut out = TruncatedSeries::new(bounds);
    let monomials = BoundaryMonomial::enumerate_up_to(bounds.k);
    for m in 0..=bounds.m - shift.0 {
        for a in 0..=bounds.acute - shift.1 {
            for g in 0..=bounds.grave - shift.2 {
                for b in &monomials {
                    let lhs = target.get(m + shift.0, a + shift.1, g + shift.2, b);
                    let rhs = applied.get(m, a, g, b);
                    out.set(m, a, g, b.clone(), lhs - rhs)?;
                }
            }
        }
    }
    Ok(out)
}

/// One operator term on which the literal and derived operators disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorTermDiff {
    pub direction: Direction,
    pub multiplier: BoundaryMonomial,
    pub derivatives: BoundaryMonomial,
    #[serde(with = "crate::rational::json")]
    pub literal: Rational,
    #[serde(with = "crate::rational::json")]
    pub derived: Rational,
    /// `literal / derived`, when the latter is nonzero.
    pub ratio: Option<String>,
    pub family: DiscrepancyFamily,
}

/// Term-by-term comparison of the literal and derived operators.
pub fn operator_diff(dir: Direction, k: u32, conv: Convention) -> Result<Vec<OperatorTermDiff>> {
    let lit = build_operator(dir, Source::Literal, k, conv)?;
    let der = build_operator(dir, Source::Derived, k, conv)?;
    let mut keys: Vec<&(BoundaryMonomial, BoundaryMonomial)> = lit.terms().keys().chain(der.terms().keys()).collect();
    keys.sort();
    keys.dedup();
    Ok(keys
        .into_iter()
        .filter_map(|(p, r)| {
            let x = lit.coefficient(p, r);
            let y = der.coefficient(p, r);
            (x != y).then(|| OperatorTermDiff {
                direction: dir,
                multiplier: p.clone(),
                derivatives: r.clone(),
                ratio: (!y.is_zero()).then(|| crate::rational::to_text(&(&x / &y))),
                literal: x,
                derived: y,
                family: classify(p, r),
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> BoundaryMonomial {
        text.parse().unwrap()
    }

    #[test]
    fn literal_terms_from_the_formulas() {
        let gamma = build_operator(Direction::Gamma, Source::Literal, 4, Convention::INDEX).unwrap();
        assert_eq!(gamma.coefficient(&m("D1"), &m("G1")), int(1));
        let beta = build_operator(Direction::Beta, Source::Literal, 4, Convention::INDEX).unwrap();
        assert_eq!(beta.coefficient(&m("G1"), &m("D1")), int(1));
        let derived = build_operator(Direction::Beta, Source::Derived, 4, Convention::INDEX).unwrap();
        assert_eq!(derived.coefficient(&m("G1"), &m("D1")), frac(1, 2));
    }

    #[test]
    fn gamma_literal_equals_derived() {
        assert!(operator_diff(Direction::Gamma, 8, Convention::INDEX)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn single_term_action() {
        let mut op = PolyOperator::new(2);
        op.add_term(m("G1"), m("D1"), frac(3, 2));
        let bounds = SeriesBounds {
            m: 0,
            acute: 0,
            grave: 0,
            k: 2,
        };
        let mut s = TruncatedSeries::new(bounds);
        s.set(0, 0, 0, m("D1"), frac(5, 7)).unwrap();
        let out = apply(&op, &s).unwrap();
        assert_eq!(out.get(0, 0, 0, &m("G1")), frac(15, 14));
        assert_eq!(out.nonzero_count(), 1);
    }

    #[test]
    fn weight_mismatch_is_a_usage_error() {
        let op: PolyOperator<BoundaryMonomial> = PolyOperator::new(2);
        let s = TruncatedSeries::new(SeriesBounds {
            m: 0,
            acute: 0,
            grave: 0,
            k: 4,
        });
        assert!(matches!(apply(&op, &s), Err(Error::Usage(_))));
    }

    #[test]
    fn json_keys() {
        let mut s = TruncatedSeries::new(SeriesBounds {
            m: 1,
            acute: 0,
            grave: 0,
            k: 2,
        });
        s.set(1, 0, 0, m("B1^2"), frac(1, 2)).unwrap();
        assert_eq!(s.to_json().to_string(), r#"{"1,0,0,B1^2":{"num":"1","den":"2"}}"#);
    }
}
