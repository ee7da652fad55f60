//! Memoized evaluation of disk Hurwitz numbers.
//!
//! Values are organized in *layers*: for a degree `k` and a point count
//! `(m, ḿ, m̀)` a layer holds the number for every monomial of degree `k`.
//! Each layer is obtained from one or two smaller layers by a gluing step, so
//! evaluation walks down `m + ḿ + m̀` until it reaches the base layer.
//!
//! ```
//! use disk_hurwitz::engine::Engine;
//! use disk_hurwitz::monomial::Convention;
//! use disk_hurwitz::rational::frac;
//!
//! let engine = Engine::new(Convention::INDEX);
//! let b = "B1^2".parse().unwrap();
//! assert_eq!(engine.h_total(1, 0, &b).unwrap(), frac(1, 2));
//! ```

pub mod cache;
pub mod moves;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlators::{contraction_step, SimpleKind};
use crate::error::Result;
use crate::monomial::{BoundaryMonomial, Convention, Family};
use crate::rational::{frac, Rational};
use crate::Layer;

/// `(m, ḿ, m̀, b)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HurwitzIndex {
    pub m: u32,
    pub acute: u32,
    pub grave: u32,
    pub b: BoundaryMonomial,
}

impl HurwitzIndex {
    pub fn new(m: u32, acute: u32, grave: u32, b: BoundaryMonomial) -> HurwitzIndex {
        HurwitzIndex { m, acute, grave, b }
    }

    pub fn points(&self) -> u32 {
        self.acute + self.grave
    }
}

/// `(h́, h̀)`: coverings whose last boundary point before the special value
/// is acute, resp. grave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedValue {
    pub acute: Rational,
    pub grave: Rational,
}

impl RefinedValue {
    pub fn zero() -> RefinedValue {
        RefinedValue {
            acute: Rational::zero(),
            grave: Rational::zero(),
        }
    }

    pub fn total(&self) -> Rational {
        &self.acute + &self.grave
    }
}

/// How a gluing step is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Evaluation {
    /// Local moves on `b`.
    #[default]
    Fast,
    /// Pairing against the whole previous layer.
    Contraction,
}

/// Which kind of point is removed first when both are present.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    #[default]
    BoundaryFirst,
    InteriorFirst,
}

/// How a grave step pairs the previous layer with the target.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GraveSide {
    /// `Σ h(β)|Aut β| <(β*, grave, b)>`, as the acute step.
    #[default]
    Printed,
    /// The acute step conjugated by star: `Σ h(β)|Aut β| <(β*, acute, b*)>`
    /// over the starred layer.
    Mirrored,
}

/// `(degree, m, ḿ, m̀)`.
pub type LayerKey = (u32, u32, u32, u32);

pub type RefinedLayer = std::collections::BTreeMap<BoundaryMonomial, RefinedValue>;

#[derive(Default)]
struct Memo {
    refined: HashMap<LayerKey, Arc<RefinedLayer>>,
    totals: HashMap<LayerKey, Arc<Layer>>,
}

/// `h(0, 0, b)`: `1/|Aut(b)|` for bar/dot monomials, zero otherwise.
pub fn base(b: &BoundaryMonomial, conv: Convention) -> Rational {
    if b.contains_family(Family::Acute) || b.contains_family(Family::Grave) {
        return Rational::zero();
    }
    Rational::new(BigInt::from(1), BigInt::from(b.aut_order(conv)))
}

/// One gluing step of `kind` onto `b` from a layer of totals.
pub fn step(
    layer: &Layer,
    kind: SimpleKind,
    b: &BoundaryMonomial,
    conv: Convention,
    eval: Evaluation,
) -> Result<Rational> {
    match eval {
        Evaluation::Fast => Ok(moves::fast_step(layer, kind, b, conv)),
        Evaluation::Contraction => contraction_step(layer, kind, b, conv),
    }
}

/// Layered, memoized evaluator for one convention.
///
/// Safe to share across threads. Results do not depend on query order or on
/// the number of worker threads.
pub struct Engine {
    conv: Convention,
    eval: Evaluation,
    route: Route,
    grave_side: GraveSide,
    memo: Mutex<Memo>,
}

impl Engine {
    pub fn new(conv: Convention) -> Engine {
        Engine {
            conv,
            eval: Evaluation::default(),
            route: Route::default(),
            grave_side: GraveSide::default(),
            memo: Mutex::new(Memo::default()),
        }
    }

    pub fn with_evaluation(mut self, eval: Evaluation) -> Engine {
        self.eval = eval;
        self
    }

    pub fn with_route(mut self, route: Route) -> Engine {
        self.route = route;
        self
    }

    pub fn with_grave_side(mut self, side: GraveSide) -> Engine {
        self.grave_side = side;
        self
    }

    pub fn grave_side(&self) -> GraveSide {
        self.grave_side
    }

    pub fn convention(&self) -> Convention {
        self.conv
    }

    pub fn evaluation(&self) -> Evaluation {
        self.eval
    }

    pub fn route(&self) -> Route {
        self.route
    }

    /// `h(m, ḿ, m̀, b)` for every `b` of degree `k`.
    pub fn totals_layer(&self, k: u32, m: u32, acute: u32, grave: u32) -> Result<Arc<Layer>> {
        let key = (k, m, acute, grave);
        if let Some(layer) = self.memo.lock().unwrap().totals.get(&key) {
            return Ok(layer.clone());
        }
        let refined = self.refined_layer(k, m, acute, grave)?;
        let layer: Layer = refined.iter().map(|(b, v)| (b.clone(), v.total())).collect();
        let mut memo = self.memo.lock().unwrap();
        Ok(memo.totals.entry(key).or_insert_with(|| Arc::new(layer)).clone())
    }

    /// `(h́, h̀)(m, ḿ, m̀, b)` for every `b` of degree `k`.
    pub fn refined_layer(&self, k: u32, m: u32, acute: u32, grave: u32) -> Result<Arc<RefinedLayer>> {
        let key = (k, m, acute, grave);
        if let Some(layer) = self.memo.lock().unwrap().refined.get(&key) {
            return Ok(layer.clone());
        }
        let layer = self.compute_refined(k, m, acute, grave)?;
        let mut memo = self.memo.lock().unwrap();
        Ok(memo.refined.entry(key).or_insert_with(|| Arc::new(layer)).clone())
    }

    fn compute_refined(&self, k: u32, m: u32, acute: u32, grave: u32) -> Result<RefinedLayer> {
        let monomials = BoundaryMonomial::enumerate(k);
        let conv = self.conv;
        let halves = |total: Rational| {
            let half = total * frac(1, 2);
            RefinedValue {
                acute: half.clone(),
                grave: half,
            }
        };
        if m == 0 && acute == 0 && grave == 0 {
            return Ok(monomials
                .into_iter()
                .map(|b| {
                    let h = base(&b, conv);
                    (b, halves(h))
                })
                .collect());
        }
        let interior = m > 0 && (acute + grave == 0 || self.route == Route::InteriorFirst);
        if interior {
            let prev = self.refined_layer(k, m - 1, acute, grave)?;
            if acute + grave == 0 {
                let totals = self.totals_layer(k, m - 1, 0, 0)?;
                return self.par_map(monomials, |b| {
                    Ok(halves(step(&totals, SimpleKind::InteriorSimple, b, conv, self.eval)?))
                });
            }
            let acute_prev: Layer = prev.iter().map(|(b, v)| (b.clone(), v.acute.clone())).collect();
            let grave_prev: Layer = prev.iter().map(|(b, v)| (b.clone(), v.grave.clone())).collect();
            return self.par_map(monomials, |b| {
                Ok(RefinedValue {
                    acute: step(&acute_prev, SimpleKind::InteriorSimple, b, conv, self.eval)?,
                    grave: step(&grave_prev, SimpleKind::InteriorSimple, b, conv, self.eval)?,
                })
            });
        }
        let from_acute = if acute > 0 {
            Some(self.totals_layer(k, m, acute - 1, grave)?)
        } else {
            None
        };
        let from_grave = if grave > 0 {
            let layer = self.totals_layer(k, m, acute, grave - 1)?;
            Some(match self.grave_side {
                GraveSide::Printed => layer,
                GraveSide::Mirrored => Arc::new(layer.iter().map(|(b, v)| (b.star(), v.clone())).collect()),
            })
        } else {
            None
        };
        self.par_map(monomials, |b| {
            let mut v = RefinedValue::zero();
            if let Some(layer) = &from_acute {
                v.acute = step(layer, SimpleKind::AcuteSimple, b, conv, self.eval)?;
            }
            if let Some(layer) = &from_grave {
                v.grave = match self.grave_side {
                    GraveSide::Printed => step(layer, SimpleKind::GraveSimple, b, conv, self.eval)?,
                    GraveSide::Mirrored => step(layer, SimpleKind::AcuteSimple, &b.star(), conv, self.eval)?,
                };
            }
            Ok(v)
        })
    }

    fn par_map<F>(&self, monomials: Vec<BoundaryMonomial>, f: F) -> Result<RefinedLayer>
    where
        F: Fn(&BoundaryMonomial) -> Result<RefinedValue> + Sync,
    {
        let values: Vec<Result<RefinedValue>> = monomials.par_iter().map(&f).collect();
        monomials.into_iter().zip(values).map(|(b, v)| Ok((b, v?))).collect()
    }

    pub fn h_refined(&self, idx: &HurwitzIndex) -> Result<RefinedValue> {
        let layer = self.refined_layer(idx.b.degree(), idx.m, idx.acute, idx.grave)?;
        Ok(layer.get(&idx.b).cloned().expect("layer covers its degree"))
    }

    /// `h(m, ḿ, m̀, b) = h́ + h̀`.
    pub fn h_split(&self, m: u32, acute: u32, grave: u32, b: &BoundaryMonomial) -> Result<Rational> {
        let layer = self.totals_layer(b.degree(), m, acute, grave)?;
        Ok(layer.get(b).cloned().expect("layer covers its degree"))
    }

    /// `h(m, m̂, b)`: the sum over all splits `ḿ + m̀ = m̂`.
    pub fn h_total(&self, m: u32, points: u32, b: &BoundaryMonomial) -> Result<Rational> {
        let mut acc = Rational::zero();
        for acute in 0..=points {
            acc += self.h_split(m, acute, points - acute, b)?;
        }
        Ok(acc)
    }

    /// One interior step from the layer `(m, ḿ, m̀)`, evaluated at `b`.
    pub fn h_interior_step(&self, m: u32, acute: u32, grave: u32, b: &BoundaryMonomial) -> Result<Rational> {
        let layer = self.totals_layer(b.degree(), m, acute, grave)?;
        step(&layer, SimpleKind::InteriorSimple, b, self.conv, self.eval)
    }

    /// Seed the totals of one layer. Used by the cache loader.
    pub(crate) fn insert_totals(&self, key: LayerKey, layer: Layer) {
        self.memo
            .lock()
            .unwrap()
            .totals
            .entry(key)
            .or_insert_with(|| Arc::new(layer));
    }

    /// Snapshot of every totals layer currently held, sorted by key.
    pub fn known_totals(&self) -> Vec<(LayerKey, Arc<Layer>)> {
        let memo = self.memo.lock().unwrap();
        let mut out: Vec<_> = memo.totals.iter().map(|(k, v)| (*k, v.clone())).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }
}

/// `h(1, 1, b)` along both routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteRow {
    pub b: BoundaryMonomial,
    #[serde(with = "crate::rational::json")]
    pub boundary_first: Rational,
    #[serde(with = "crate::rational::json")]
    pub interior_first: Rational,
    #[serde(with = "crate::rational::json")]
    pub difference: Rational,
}

/// Compare `h(1, 1, b)` computed by removing the boundary point first and by
/// removing the interior point first, for every `b` of degree at most `k`.
pub fn route_commutation_report(k: u32, conv: Convention) -> Result<Vec<RouteRow>> {
    let boundary = Engine::new(conv).with_route(Route::BoundaryFirst);
    let interior = Engine::new(conv).with_route(Route::InteriorFirst);
    let mut rows = Vec::new();
    for b in BoundaryMonomial::enumerate_up_to(k) {
        let x = boundary.h_total(1, 1, &b)?;
        let y = interior.h_total(1, 1, &b)?;
        rows.push(RouteRow {
            difference: &x - &y,
            b,
            boundary_first: x,
            interior_first: y,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(text: &str) -> BoundaryMonomial {
        text.parse().unwrap()
    }

    #[test]
    fn base_values() {
        let i = Convention::INDEX;
        assert_eq!(base(&m("B1^2"), i), frac(1, 2));
        assert_eq!(base(&m("A1"), i), Rational::zero());
        assert_eq!(base(&m("1"), i), int(1));
        assert_eq!(base(&m("D2"), i), frac(1, 2));
        assert_eq!(base(&m("D2"), Convention::TWICE_INDEX), frac(1, 4));
    }

    #[test]
    fn refined_examples() {
        let e = Engine::new(Convention::INDEX);
        let r = e.h_refined(&HurwitzIndex::new(0, 0, 1, m("A1"))).unwrap();
        assert_eq!(r.grave, frac(1, 2));
        let r = e.h_refined(&HurwitzIndex::new(0, 1, 0, m("G1"))).unwrap();
        assert_eq!(r.acute, frac(1, 2));
        let r = e.h_refined(&HurwitzIndex::new(0, 1, 0, m("A1"))).unwrap();
        assert_eq!(r.acute, Rational::zero());
    }

    #[test]
    fn total_examples() {
        let e = Engine::new(Convention::INDEX);
        assert_eq!(e.h_total(0, 0, &m("B1^2")).unwrap(), frac(1, 2));
        assert_eq!(e.h_total(0, 1, &m("A1")).unwrap(), frac(1, 2));
        assert_eq!(e.h_total(5, 3, &m("B1")).unwrap(), Rational::zero());
        assert_eq!(e.h_interior_step(0, 0, 0, &m("B1^2")).unwrap(), frac(1, 2));
        assert_eq!(e.h_interior_step(0, 0, 0, &m("D1")).unwrap(), Rational::zero());
    }

    #[test]
    fn route_report_trivial_rows() {
        let rows = route_commutation_report(0, Convention::INDEX).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].b.is_one() && rows[0].difference.is_zero());
    }
}
