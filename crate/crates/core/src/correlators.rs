//! Two- and three-point disk correlators.
//!
//! A three-point correlator `<(c, S, b)>` counts coverings of the disk with
//! boundary value `c`, a simple value `S` and boundary value `b`. Every
//! nonzero value comes from a small *case*: a pattern `P` of one or two
//! components of `b` is rewritten into a pattern `Q` of `c`, all other
//! components `d` pass straight through (appearing as `d` on the `b` side and
//! `d*` on the `c` side), and the value is a case constant divided by
//! `|Aut(d)|`.
//!
//! The matcher in this module works from both sides at once: it picks
//! candidate `Q` inside `c` and `P` inside `b` and checks that what is left
//! over agrees. The recursion engine never calls it on its hot path; it is
//! the oracle the engine's move generator is checked against.
//!
//! For the interior simple value the case list is closed under the boundary
//! symmetries: swapping the two boundary points and reversing orientation.
//! Distinct matches of one pair `(c, b)` are summed. They only coincide when a
//! case maps a pattern to itself, which happens for `b = c*`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::monomial::{BoundaryMonomial, Convention, Family, Generator};
use crate::rational::{frac, int, one, Rational};
use crate::Layer;

/// Kind of the simple critical value sitting between two boundary values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleKind {
    /// Interior value of type `a_1^m a_2`.
    InteriorSimple,
    /// Boundary value of type `A1 * B1^m * D1^n`.
    AcuteSimple,
    /// Boundary value of type `G1 * B1^m * D1^n`.
    GraveSimple,
}

impl SimpleKind {
    pub const ALL: [SimpleKind; 3] = [
        SimpleKind::InteriorSimple,
        SimpleKind::AcuteSimple,
        SimpleKind::GraveSimple,
    ];
}

/// Case labels. `A*` are the acute table, `G*` the grave table, `I*` the
/// interior table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    A1,
    A2,
    A3,
    A4,
    G1,
    G2,
    G3,
    G4,
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    I7,
    I8,
}

/// One way a pair `(c, b)` realizes a case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseMatch {
    pub case: CaseId,
    /// Pattern removed from `b`.
    pub consumed: BoundaryMonomial,
    /// Pattern present in `c`.
    pub emitted: BoundaryMonomial,
    /// Case constant including the `1/|Aut(d)|` factor.
    pub value: Rational,
}

type Rule = fn(&[Generator], &[Generator]) -> Option<Rational>;

/// `Q` slots are matched inside `c`, `P` slots inside `b`.
struct CaseForm {
    id: CaseId,
    q: &'static [Family],
    p: &'static [Family],
    rule: Rule,
}

use Family::{Acute as Ac, Bar as Br, Dot as Dt, Grave as Gr};

fn idx(g: &[Generator], n: usize) -> u32 {
    g[n].index()
}

fn half_if(cond: bool) -> Rational {
    if cond {
        frac(1, 2)
    } else {
        one()
    }
}

fn min_len(gens: &[Generator]) -> Rational {
    int(i64::from(gens.iter().map(|g| g.length()).min().expect("nonempty")))
}

const ACUTE_TABLE: &[CaseForm] = &[
    CaseForm {
        id: CaseId::A1,
        q: &[Dt],
        p: &[Gr],
        rule: |q, p| (idx(q, 0) == idx(p, 0)).then(|| frac(1, 2)),
    },
    CaseForm {
        id: CaseId::A2,
        q: &[Br],
        p: &[Br, Gr],
        rule: |q, p| (idx(q, 0) == idx(p, 0) + idx(p, 1)).then(one),
    },
    CaseForm {
        id: CaseId::A3,
        q: &[Ac],
        p: &[Gr, Gr],
        rule: |q, p| (idx(q, 0) == idx(p, 0) + idx(p, 1)).then(|| half_if(p[0] == p[1])),
    },
    CaseForm {
        id: CaseId::A4,
        q: &[Gr],
        p: &[Br, Br],
        rule: |q, p| (idx(q, 0) + 1 == idx(p, 0) + idx(p, 1)).then(|| half_if(p[0] == p[1])),
    },
];

const GRAVE_TABLE: &[CaseForm] = &[
    CaseForm {
        id: CaseId::G1,
        q: &[Ac],
        p: &[Dt],
        rule: |q, p| (idx(q, 0) == idx(p, 0)).then(|| frac(1, 2)),
    },
    CaseForm {
        id: CaseId::G2,
        q: &[Ac, Br],
        p: &[Br],
        rule: |q, p| (idx(p, 0) == idx(q, 0) + idx(q, 1)).then(one),
    },
    CaseForm {
        id: CaseId::G3,
        q: &[Ac, Ac],
        p: &[Gr],
        rule: |q, p| (idx(p, 0) == idx(q, 0) + idx(q, 1)).then(|| half_if(q[0] == q[1])),
    },
    CaseForm {
        id: CaseId::G4,
        q: &[Br, Br],
        p: &[Ac],
        rule: |q, p| (idx(p, 0) + 1 == idx(q, 0) + idx(q, 1)).then(|| half_if(q[0] == q[1])),
    },
];

// Slots of one family are always handed to the rules in canonical order, so
// for [Ac, Br] slot 0 is the acute component.
const INTERIOR_TABLE: &[CaseForm] = &[
    // D_i D_j <- D_{i+j}
    CaseForm {
        id: CaseId::I1,
        q: &[Dt, Dt],
        p: &[Dt],
        rule: |q, p| (idx(p, 0) == idx(q, 0) + idx(q, 1)).then(|| half_if(q[0] == q[1])),
    },
    // D_i B_j <- B_{i+j}, value |B_j|
    CaseForm {
        id: CaseId::I2,
        q: &[Br, Dt],
        p: &[Br],
        rule: |q, p| (idx(p, 0) == idx(q, 1) + idx(q, 0)).then(|| int(i64::from(q[0].length()))),
    },
    // D_i G_j <- A_{i+j}, value |G_j|
    CaseForm {
        id: CaseId::I3,
        q: &[Gr, Dt],
        p: &[Ac],
        rule: |q, p| (idx(p, 0) == idx(q, 1) + idx(q, 0)).then(|| int(i64::from(q[0].length()))),
    },
    // D_i A_j <- G_{i+j}, value |A_j|
    CaseForm {
        id: CaseId::I4,
        q: &[Ac, Dt],
        p: &[Gr],
        rule: |q, p| (idx(p, 0) == idx(q, 1) + idx(q, 0)).then(|| int(i64::from(q[0].length()))),
    },
    // B_i G_j <- B_k A_l with i + j = k + l
    CaseForm {
        id: CaseId::I5,
        q: &[Gr, Br],
        p: &[Ac, Br],
        rule: |q, p| (idx(q, 0) + idx(q, 1) == idx(p, 0) + idx(p, 1)).then(|| min_len(&[q[0], q[1], p[0], p[1]])),
    },
    // A_i G_j <- B_k B_l with i + j + 1 = k + l
    CaseForm {
        id: CaseId::I6,
        q: &[Ac, Gr],
        p: &[Br, Br],
        rule: |q, p| (idx(q, 0) + idx(q, 1) + 1 == idx(p, 0) + idx(p, 1)).then(|| min_len(&[q[0], q[1], p[0], p[1]])),
    },
    // G_i G_j <- A_k A_l with i + j = k + l
    CaseForm {
        id: CaseId::I7,
        q: &[Gr, Gr],
        p: &[Ac, Ac],
        rule: |q, p| {
            (idx(q, 0) + idx(q, 1) == idx(p, 0) + idx(p, 1))
                .then(|| half_if(q[0] == q[1] && p[0] == p[1]) * min_len(&[q[0], q[1], p[0], p[1]]))
        },
    },
    // B_i B_j <- B_k B_l with i + j = k + l
    CaseForm {
        id: CaseId::I8,
        q: &[Br, Br],
        p: &[Br, Br],
        rule: |q, p| {
            (idx(q, 0) + idx(q, 1) == idx(p, 0) + idx(p, 1))
                .then(|| half_if(q[0] == q[1] && p[0] == p[1]) * min_len(&[q[0], q[1], p[0], p[1]]))
        },
    },
];

/// Distinct sub-multisets of `m` whose families are exactly `fams` (one or
/// two slots). Each is returned in canonical order.
fn choose(m: &BoundaryMonomial, fams: &[Family]) -> Vec<Vec<Generator>> {
    let of = |f: Family| m.powers().iter().filter(move |(g, _)| g.family() == f);
    match fams {
        [f] => of(*f).map(|&(g, _)| vec![g]).collect(),
        [f1, f2] if f1 == f2 => {
            let gens: Vec<(Generator, u32)> = of(*f1).copied().collect();
            let mut out = Vec::new();
            for (a, &(g, e)) in gens.iter().enumerate() {
                if e >= 2 {
                    out.push(vec![g, g]);
                }
                for &(h, _) in &gens[a + 1..] {
                    out.push(vec![g, h]);
                }
            }
            out
        }
        [f1, f2] => {
            let mut out = Vec::new();
            for &(g, _) in of(*f1) {
                for &(h, _) in of(*f2) {
                    let mut pair = vec![g, h];
                    pair.sort();
                    out.push(pair);
                }
            }
            out
        }
        _ => unreachable!("case patterns have one or two slots"),
    }
}

struct RawMatch {
    case: CaseId,
    consumed: BoundaryMonomial,
    emitted: BoundaryMonomial,
    constant: Rational,
}

fn match_table(table: &[CaseForm], c: &BoundaryMonomial, b: &BoundaryMonomial) -> Vec<RawMatch> {
    let mut out = Vec::new();
    if c.degree() != b.degree() {
        return out;
    }
    for form in table {
        let qs = choose(c, form.q);
        if qs.is_empty() {
            continue;
        }
        for p in choose(b, form.p) {
            let p_mono = BoundaryMonomial::from_generators(p.iter().copied());
            let rest_b = b.divide(&p_mono).expect("chosen from b");
            let rest_b_star = rest_b.star();
            for q in &qs {
                let Some(value) = (form.rule)(q, &p) else {
                    continue;
                };
                let q_mono = BoundaryMonomial::from_generators(q.iter().copied());
                let rest_c = c.divide(&q_mono).expect("chosen from c");
                if rest_c == rest_b_star {
                    out.push(RawMatch {
                        case: form.id,
                        consumed: p_mono.clone(),
                        emitted: q_mono,
                        constant: value,
                    });
                }
            }
        }
    }
    out
}

/// `∏_{D_i ∈ P} i / w(i)`.
///
/// The case constants are normalized for `w(i) = i`; rescaling the dots
/// consumed from `b` keeps every Hurwitz number covariant under a change of
/// dot weight.
pub fn dot_rescaling(consumed: &BoundaryMonomial, conv: Convention) -> Rational {
    let mut acc = one();
    for &(g, e) in consumed.powers() {
        if g.family() == Family::Dot {
            let r = frac(i64::from(g.index()), conv.dot_weight(g.index()) as i64);
            for _ in 0..e {
                acc *= &r;
            }
        }
    }
    acc
}

fn aut_rational(m: &BoundaryMonomial, conv: Convention) -> Rational {
    Rational::from_integer(BigInt::from(m.aut_order(conv)))
}

fn finish(raw: RawMatch, b: &BoundaryMonomial, conv: Convention) -> CaseMatch {
    let d = b.divide(&raw.consumed).expect("consumed pattern lies in b");
    let value = raw.constant * dot_rescaling(&raw.consumed, conv) / aut_rational(&d, conv);
    CaseMatch {
        case: raw.case,
        consumed: raw.consumed,
        emitted: raw.emitted,
        value,
    }
}

/// `<(c, b)>`: `1/|Aut(b)|` when `c = b*`, else zero.
pub fn two_point(c: &BoundaryMonomial, b: &BoundaryMonomial, conv: Convention) -> Rational {
    if *c == b.star() {
        one() / aut_rational(b, conv)
    } else {
        Rational::zero()
    }
}

/// All case matches of `<(c, kind, b)>` for a boundary simple value.
pub fn boundary_matches(
    c: &BoundaryMonomial,
    kind: SimpleKind,
    b: &BoundaryMonomial,
    conv: Convention,
) -> Result<Vec<CaseMatch>> {
    let table = match kind {
        SimpleKind::AcuteSimple => ACUTE_TABLE,
        SimpleKind::GraveSimple => GRAVE_TABLE,
        SimpleKind::InteriorSimple => return Err(Error::Usage("interior kind passed to the boundary table".into())),
    };
    let raw = match_table(table, c, b);
    if raw.len() > 1 {
        return Err(Error::Inconsistency(format!(
            "{} boundary cases match ({c}, {kind:?}, {b})",
            raw.len()
        )));
    }
    Ok(raw.into_iter().map(|r| finish(r, b, conv)).collect())
}

/// `<(c, kind, b)>` for `kind` acute or grave.
pub fn three_point_boundary(
    c: &BoundaryMonomial,
    kind: SimpleKind,
    b: &BoundaryMonomial,
    conv: Convention,
) -> Result<Rational> {
    Ok(boundary_matches(c, kind, b, conv)?.into_iter().map(|m| m.value).sum())
}

/// All distinct case matches of `<a_1^m a_2, (c, b)>`.
pub fn interior_matches(c: &BoundaryMonomial, b: &BoundaryMonomial, conv: Convention) -> Result<Vec<CaseMatch>> {
    if c.degree() != b.degree() {
        return Ok(Vec::new());
    }
    let (cs, bs) = (c.star(), b.star());
    let mut found: BTreeMap<(BoundaryMonomial, BoundaryMonomial), RawMatch> = BTreeMap::new();
    // identity, boundary swap, orientation reversal, and both together
    let images: [(&BoundaryMonomial, &BoundaryMonomial, bool, bool); 4] = [
        (c, b, false, false),
        (b, c, true, false),
        (&bs, &cs, true, true),
        (&cs, &bs, false, true),
    ];
    for (ci, bi, swapped, starred) in images {
        for raw in match_table(INTERIOR_TABLE, ci, bi) {
            let (mut consumed, mut emitted) = if swapped {
                (raw.emitted, raw.consumed)
            } else {
                (raw.consumed, raw.emitted)
            };
            if starred {
                consumed = consumed.star();
                emitted = emitted.star();
            }
            let key = (consumed.clone(), emitted.clone());
            match found.get(&key) {
                Some(prev) if prev.constant != raw.constant => {
                    return Err(Error::Inconsistency(format!(
                        "interior cases {:?} and {:?} disagree on ({c}, {b})",
                        prev.case, raw.case
                    )));
                }
                Some(_) => {}
                None => {
                    found.insert(
                        key,
                        RawMatch {
                            case: raw.case,
                            consumed,
                            emitted,
                            constant: raw.constant,
                        },
                    );
                }
            }
        }
    }
    Ok(found.into_values().map(|r| finish(r, b, conv)).collect())
}

/// `<a_1^m a_2, (c, b)>`.
pub fn three_point_interior(c: &BoundaryMonomial, b: &BoundaryMonomial, conv: Convention) -> Result<Rational> {
    Ok(interior_matches(c, b, conv)?.into_iter().map(|m| m.value).sum())
}

pub fn three_point(c: &BoundaryMonomial, kind: SimpleKind, b: &BoundaryMonomial, conv: Convention) -> Result<Rational> {
    match kind {
        SimpleKind::InteriorSimple => three_point_interior(c, b, conv),
        _ => three_point_boundary(c, kind, b, conv),
    }
}

/// One gluing step: `Σ_β h(β) · |Aut(β)| · <(β*, kind, b)>` over every `β`
/// of the same degree as `b`. Missing layer entries read as zero.
///
/// This is the reference semantics of every recursion in the crate.
pub fn contraction_step(layer: &Layer, kind: SimpleKind, b: &BoundaryMonomial, conv: Convention) -> Result<Rational> {
    let mut acc = Rational::zero();
    for beta in BoundaryMonomial::enumerate(b.degree()) {
        let Some(h) = layer.get(&beta) else {
            continue;
        };
        if h.is_zero() {
            continue;
        }
        let corr = three_point(&beta.star(), kind, b, conv)?;
        if !corr.is_zero() {
            acc += h * aut_rational(&beta, conv) * corr;
        }
    }
    Ok(acc)
}
