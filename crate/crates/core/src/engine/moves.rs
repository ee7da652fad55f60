//! Local moves: the fast path of the gluing step.
//!
//! Instead of pairing `b` against every monomial of its degree, a move
//! rewrites a pattern `P` of one or two components of `b` into a pattern `R`,
//! giving a predecessor `β = (b / P) · R` whose value feeds `b`. The move
//! lists here are written out from the structure of the coverings directly
//! and are tested against the case matcher in [`crate::correlators`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::correlators::SimpleKind;
use crate::monomial::{BoundaryMonomial, Convention, Family, Generator};
use crate::rational::{frac, int, one, Rational};
use crate::Layer;

/// One rewrite `P -> R` with its case constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub consumed: BoundaryMonomial,
    pub produced: BoundaryMonomial,
    pub constant: Rational,
}

fn mono(gens: &[Generator]) -> BoundaryMonomial {
    BoundaryMonomial::from_generators(gens.iter().copied())
}

fn gens_of(b: &BoundaryMonomial, f: Family) -> Vec<(Generator, u32)> {
    b.powers().iter().copied().filter(|(g, _)| g.family() == f).collect()
}

/// Distinct two-component sub-multisets of `b` with families `f1`, `f2`.
fn pairs_in(b: &BoundaryMonomial, f1: Family, f2: Family) -> Vec<(Generator, Generator)> {
    let mut out = Vec::new();
    if f1 == f2 {
        let gs = gens_of(b, f1);
        for (n, &(g, e)) in gs.iter().enumerate() {
            if e >= 2 {
                out.push((g, g));
            }
            for &(h, _) in &gs[n + 1..] {
                out.push((g, h));
            }
        }
    } else {
        for (g, _) in gens_of(b, f1) {
            for (h, _) in gens_of(b, f2) {
                out.push((g, h));
            }
        }
    }
    out
}

/// Unordered splits `i + j = n`, `1 <= i <= j`.
fn splits(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=n / 2).map(move |i| (i, n - i))
}

/// Ordered splits `i + j = n`, `i, j >= 1`.
fn ordered_splits(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..n).map(move |i| (i, n - i))
}

fn diag(cond: bool) -> Rational {
    if cond {
        frac(1, 2)
    } else {
        one()
    }
}

fn len(gens: &[Generator]) -> Rational {
    int(i64::from(gens.iter().map(|g| g.length()).min().unwrap_or(0)))
}

/// The raw moves of `kind` applicable to `b`.
pub fn moves(kind: SimpleKind, b: &BoundaryMonomial) -> Vec<Move> {
    use Generator as Gn;
    let mut out = Vec::new();
    let mut push = |p: &[Generator], r: &[Generator], c: Rational| {
        out.push(Move {
            consumed: mono(p),
            produced: mono(r),
            constant: c,
        })
    };
    let acutes = gens_of(b, Family::Acute);
    let graves = gens_of(b, Family::Grave);
    let bars = gens_of(b, Family::Bar);
    let dots = gens_of(b, Family::Dot);
    match kind {
        SimpleKind::AcuteSimple => {
            for &(g, _) in &graves {
                push(&[g], &[Gn::dot(g.index())], frac(1, 2));
            }
            for (x, y) in pairs_in(b, Family::Bar, Family::Grave) {
                push(&[x, y], &[Gn::bar(x.index() + y.index())], one());
            }
            for (x, y) in pairs_in(b, Family::Grave, Family::Grave) {
                push(&[x, y], &[Gn::grave(x.index() + y.index())], diag(x == y));
            }
            for (x, y) in pairs_in(b, Family::Bar, Family::Bar) {
                push(&[x, y], &[Gn::acute(x.index() + y.index() - 1)], diag(x == y));
            }
        }
        SimpleKind::GraveSimple => {
            for &(d, _) in &dots {
                push(&[d], &[Gn::grave(d.index())], frac(1, 2));
            }
            for &(x, _) in &bars {
                for (i, j) in ordered_splits(x.index()) {
                    push(&[x], &[Gn::bar(i), Gn::grave(j)], one());
                }
            }
            for &(x, _) in &graves {
                for (i, j) in splits(x.index()) {
                    push(&[x], &[Gn::grave(i), Gn::grave(j)], diag(i == j));
                }
            }
            for &(x, _) in &acutes {
                for (i, j) in splits(x.index() + 1) {
                    push(&[x], &[Gn::bar(i), Gn::bar(j)], diag(i == j));
                }
            }
        }
        SimpleKind::InteriorSimple => {
            // a dot splits off, or two components merge with a dot
            for &(x, _) in &dots {
                for (i, j) in splits(x.index()) {
                    push(&[x], &[Gn::dot(i), Gn::dot(j)], diag(i == j));
                }
            }
            for (x, y) in pairs_in(b, Family::Dot, Family::Dot) {
                push(&[x, y], &[Gn::dot(x.index() + y.index())], diag(x == y));
            }
            for (fam, make) in [
                (Family::Bar, Gn::bar as fn(u32) -> Generator),
                (Family::Acute, Gn::acute),
                (Family::Grave, Gn::grave),
            ] {
                for &(x, _) in b.powers().iter().filter(|(g, _)| g.family() == fam) {
                    for (i, j) in ordered_splits(x.index()) {
                        let kept = make(j);
                        push(&[x], &[Gn::dot(i), kept], len(&[kept]));
                    }
                }
                for (d, x) in pairs_in(b, Family::Dot, fam) {
                    push(&[d, x], &[make(d.index() + x.index())], len(&[x]));
                }
            }
            // exchanges between two non-dot components
            for (x, y) in pairs_in(b, Family::Acute, Family::Bar) {
                for (i, j) in ordered_splits(x.index() + y.index()) {
                    let r = [Gn::acute(i), Gn::bar(j)];
                    push(&[x, y], &r, len(&[x, y, r[0], r[1]]));
                }
            }
            for (x, y) in pairs_in(b, Family::Grave, Family::Bar) {
                for (i, j) in ordered_splits(x.index() + y.index()) {
                    let r = [Gn::grave(i), Gn::bar(j)];
                    push(&[x, y], &r, len(&[x, y, r[0], r[1]]));
                }
            }
            for (x, y) in pairs_in(b, Family::Bar, Family::Bar) {
                for (i, j) in ordered_splits(x.index() + y.index() - 1) {
                    let r = [Gn::acute(i), Gn::grave(j)];
                    push(&[x, y], &r, len(&[x, y, r[0], r[1]]));
                }
                for (i, j) in splits(x.index() + y.index()) {
                    let r = [Gn::bar(i), Gn::bar(j)];
                    push(&[x, y], &r, diag(x == y && i == j) * len(&[x, y, r[0], r[1]]));
                }
            }
            for (x, y) in pairs_in(b, Family::Acute, Family::Grave) {
                for (i, j) in splits(x.index() + y.index() + 1) {
                    let r = [Gn::bar(i), Gn::bar(j)];
                    push(&[x, y], &r, len(&[x, y, r[0], r[1]]));
                }
            }
            for fam in [Family::Acute, Family::Grave] {
                let make = if fam == Family::Acute { Gn::acute } else { Gn::grave };
                for (x, y) in pairs_in(b, fam, fam) {
                    for (i, j) in splits(x.index() + y.index()) {
                        let r = [make(i), make(j)];
                        push(&[x, y], &r, diag(x == y && i == j) * len(&[x, y, r[0], r[1]]));
                    }
                }
            }
        }
    }
    out
}

fn aut(m: &BoundaryMonomial, conv: Convention) -> Rational {
    Rational::from_integer(BigInt::from(m.aut_order(conv)))
}

fn dot_gauge(p: &BoundaryMonomial, conv: Convention) -> Rational {
    let mut acc = one();
    for g in p.generators() {
        if g.family() == Family::Dot {
            acc *= frac(i64::from(g.index()), conv.dot_weight(g.index()) as i64);
        }
    }
    acc
}

/// Predecessors of `b` with their weights: the gluing step is
/// `h_new(b) = Σ weight · h(β)`.
pub fn predecessors(kind: SimpleKind, b: &BoundaryMonomial, conv: Convention) -> BTreeMap<BoundaryMonomial, Rational> {
    let mut out: BTreeMap<BoundaryMonomial, Rational> = BTreeMap::new();
    for mv in moves(kind, b) {
        let d = b.divide(&mv.consumed).expect("moves consume components of b");
        let beta = d.mul(&mv.produced);
        let w = aut(&beta, conv) / aut(&d, conv) * &mv.constant * dot_gauge(&mv.consumed, conv);
        *out.entry(beta).or_insert_with(Rational::zero) += w;
    }
    out.retain(|_, w| !w.is_zero());
    out
}

/// The gluing step evaluated through [`predecessors`].
pub fn fast_step(layer: &Layer, kind: SimpleKind, b: &BoundaryMonomial, conv: Convention) -> Rational {
    let mut acc = Rational::zero();
    for (beta, w) in predecessors(kind, b, conv) {
        if let Some(h) = layer.get(&beta) {
            acc += w * h;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> BoundaryMonomial {
        text.parse().unwrap()
    }

    #[test]
    fn moves_preserve_degree() {
        for k in 0..=8 {
            for b in BoundaryMonomial::enumerate(k) {
                for kind in SimpleKind::ALL {
                    for mv in moves(kind, &b) {
                        assert_eq!(mv.consumed.degree(), mv.produced.degree(), "{kind:?} {b} {mv:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn acute_predecessors_of_g1() {
        let p = predecessors(SimpleKind::AcuteSimple, &m("G1"), Convention::INDEX);
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(m("D1"), frac(1, 2))]);
    }

    #[test]
    fn grave_predecessors_of_a1() {
        let p = predecessors(SimpleKind::GraveSimple, &m("A1"), Convention::INDEX);
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(m("B1^2"), int(1))]);
    }
}
