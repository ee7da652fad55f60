//! Boundary value types.
//!
//! A boundary critical value is described by a bipartite graph whose
//! connected components come in four families. Each component is a
//! [`Generator`]; a whole graph is a [`BoundaryMonomial`], a commutative
//! monomial in the generators stored in canonical (sorted) form.
//!
//! ```
//! use disk_hurwitz::monomial::{BoundaryMonomial, Generator};
//!
//! let b: BoundaryMonomial = "A3*B2".parse().unwrap();
//! assert_eq!(b.degree(), 6 + 3);
//! assert_eq!(b.star().to_string(), "G3*B2");
//! assert_eq!(b.multiplicity(Generator::bar(2)), 1);
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError};

/// Component family of a boundary graph.
///
/// The declaration order is the canonical order used everywhere:
/// `Acute < Grave < Bar < Dot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `i` left and `i + 1` right vertices.
    Acute,
    /// `i + 1` left and `i` right vertices.
    Grave,
    /// Open chain with `i` left and `i` right vertices.
    Bar,
    /// Closed cycle with `i` left and `i` right vertices.
    Dot,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Acute, Family::Grave, Family::Bar, Family::Dot];

    pub fn letter(self) -> char {
        match self {
            Family::Acute => 'A',
            Family::Grave => 'G',
            Family::Bar => 'B',
            Family::Dot => 'D',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        match c {
            'A' => Some(Family::Acute),
            'G' => Some(Family::Grave),
            'B' => Some(Family::Bar),
            'D' => Some(Family::Dot),
            _ => None,
        }
    }

    /// Orientation reversal: swaps acute and grave.
    pub fn star(self) -> Family {
        match self {
            Family::Acute => Family::Grave,
            Family::Grave => Family::Acute,
            f => f,
        }
    }
}

/// A connected component type, e.g. `B(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    family: Family,
    index: u32,
}

impl Generator {
    /// Panics if `index == 0`.
    pub fn new(family: Family, index: u32) -> Generator {
        assert!(index >= 1, "generator index must be at least 1");
        Generator { family, index }
    }

    pub fn try_new(family: Family, index: u32) -> Option<Generator> {
        (index >= 1).then_some(Generator { family, index })
    }

    pub fn acute(index: u32) -> Generator {
        Generator::new(Family::Acute, index)
    }

    pub fn grave(index: u32) -> Generator {
        Generator::new(Family::Grave, index)
    }

    pub fn bar(index: u32) -> Generator {
        Generator::new(Family::Bar, index)
    }

    pub fn dot(index: u32) -> Generator {
        Generator::new(Family::Dot, index)
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn index(self) -> u32 {
        self.index
    }

    /// Number of edges of the component.
    pub fn length(self) -> u32 {
        match self.family {
            Family::Bar => 2 * self.index - 1,
            _ => 2 * self.index,
        }
    }

    pub fn star(self) -> Generator {
        Generator {
            family: self.family.star(),
            index: self.index,
        }
    }

    /// Automorphism factor contributed by one copy of this component.
    pub fn aut_weight(self, conv: Convention) -> u64 {
        match self.family {
            Family::Acute | Family::Grave => 2,
            Family::Bar => 1,
            Family::Dot => conv.dot_weight(self.index),
        }
    }

    /// All generators of length at most `k`, in canonical order.
    pub fn up_to_length(k: u32) -> Vec<Generator> {
        let mut out = Vec::new();
        for family in Family::ALL {
            let mut index = 1;
            while Generator::new(family, index).length() <= k {
                out.push(Generator::new(family, index));
                index += 1;
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

/// How many automorphisms a closed component `D(i)` is given.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DotWeight {
    /// `w(i) = i`
    #[default]
    Index,
    /// `w(i) = 2i`
    TwiceIndex,
}

impl DotWeight {
    pub fn as_str(self) -> &'static str {
        match self {
            DotWeight::Index => "index",
            DotWeight::TwiceIndex => "twice-index",
        }
    }
}

impl fmt::Display for DotWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DotWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "index" => Ok(DotWeight::Index),
            "twice-index" => Ok(DotWeight::TwiceIndex),
            other => Err(Error::Usage(format!("unknown dot weight `{other}`"))),
        }
    }
}

/// Automorphism conventions. Only the dot weight is configurable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    pub dot_weight: DotWeight,
}

impl Convention {
    pub const INDEX: Convention = Convention {
        dot_weight: DotWeight::Index,
    };
    pub const TWICE_INDEX: Convention = Convention {
        dot_weight: DotWeight::TwiceIndex,
    };

    /// `w(i)`.
    pub fn dot_weight(self, index: u32) -> u64 {
        match self.dot_weight {
            DotWeight::Index => u64::from(index),
            DotWeight::TwiceIndex => 2 * u64::from(index),
        }
    }
}

/// A multiset of generators in canonical form.
///
/// Entries are sorted by generator and every multiplicity is positive, so
/// structural equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BoundaryMonomial {
    terms: Vec<(Generator, u32)>,
}

impl BoundaryMonomial {
    /// The empty graph, written `1`.
    pub fn one() -> BoundaryMonomial {
        BoundaryMonomial::default()
    }

    pub fn from_generators<I: IntoIterator<Item = Generator>>(gens: I) -> BoundaryMonomial {
        let mut counts: BTreeMap<Generator, u32> = BTreeMap::new();
        for g in gens {
            *counts.entry(g).or_default() += 1;
        }
        BoundaryMonomial {
            terms: counts.into_iter().collect(),
        }
    }

    pub fn from_powers<I: IntoIterator<Item = (Generator, u32)>>(powers: I) -> BoundaryMonomial {
        let mut counts: BTreeMap<Generator, u32> = BTreeMap::new();
        for (g, e) in powers {
            if e > 0 {
                *counts.entry(g).or_default() += e;
            }
        }
        BoundaryMonomial {
            terms: counts.into_iter().collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(generator, multiplicity)` pairs in canonical order.
    pub fn powers(&self) -> &[(Generator, u32)] {
        &self.terms
    }

    /// Generators with repetition, in canonical order.
    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.terms.iter().flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
    }

    /// Number of connected components.
    pub fn component_count(&self) -> u32 {
        self.terms.iter().map(|&(_, e)| e).sum()
    }

    pub fn multiplicity(&self, g: Generator) -> u32 {
        match self.terms.binary_search_by(|(h, _)| h.cmp(&g)) {
            Ok(pos) => self.terms[pos].1,
            Err(_) => 0,
        }
    }

    /// `sA_i(b)`
    pub fn s_acute(&self, i: u32) -> u32 {
        self.family_multiplicity(Family::Acute, i)
    }

    /// `sG_i(b)`
    pub fn s_grave(&self, i: u32) -> u32 {
        self.family_multiplicity(Family::Grave, i)
    }

    /// `sB_i(b)`
    pub fn s_bar(&self, i: u32) -> u32 {
        self.family_multiplicity(Family::Bar, i)
    }

    /// `sD_i(b)`
    pub fn s_dot(&self, i: u32) -> u32 {
        self.family_multiplicity(Family::Dot, i)
    }

    pub fn family_multiplicity(&self, family: Family, i: u32) -> u32 {
        if i == 0 {
            return 0;
        }
        self.multiplicity(Generator::new(family, i))
    }

    pub fn contains_family(&self, family: Family) -> bool {
        self.terms.iter().any(|(g, _)| g.family == family)
    }

    /// Total edge count, i.e. the covering degree carried by this type.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|&(g, e)| g.length() * e).sum()
    }

    pub fn star(&self) -> BoundaryMonomial {
        BoundaryMonomial::from_powers(self.terms.iter().map(|&(g, e)| (g.star(), e)))
    }

    /// `∏ 2^{sA_i} sA_i! · ∏ 2^{sG_i} sG_i! · ∏ sB_i! · ∏ w(i)^{sD_i} sD_i!`
    pub fn aut_order(&self, conv: Convention) -> BigUint {
        let mut acc = BigUint::one();
        for &(g, e) in &self.terms {
            let w = BigUint::from(g.aut_weight(conv));
            for k in 1..=e {
                acc *= &w;
                acc *= BigUint::from(k);
            }
        }
        acc
    }

    /// Minimum component length. Undefined for the empty graph.
    pub fn min_length(&self) -> Result<u32, Error> {
        self.terms
            .iter()
            .map(|&(g, _)| g.length())
            .min()
            .ok_or_else(|| Error::Domain("minimum length of the empty monomial".into()))
    }

    pub fn mul(&self, other: &BoundaryMonomial) -> BoundaryMonomial {
        BoundaryMonomial::from_powers(self.terms.iter().chain(other.terms.iter()).copied())
    }

    pub fn mul_generator(&self, g: Generator) -> BoundaryMonomial {
        self.mul(&BoundaryMonomial::from_generators([g]))
    }

    /// `self / f` when `f` is a sub-multiset of `self`.
    pub fn divide(&self, f: &BoundaryMonomial) -> Option<BoundaryMonomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        let mut rest = f.terms.iter().peekable();
        for &(g, e) in &self.terms {
            let mut e = e;
            if let Some(&&(h, k)) = rest.peek() {
                match h.cmp(&g) {
                    Ordering::Less => return None,
                    Ordering::Equal => {
                        if k > e {
                            return None;
                        }
                        e -= k;
                        rest.next();
                    }
                    Ordering::Greater => {}
                }
            }
            if e > 0 {
                terms.push((g, e));
            }
        }
        if rest.next().is_some() {
            return None;
        }
        Some(BoundaryMonomial { terms })
    }

    /// `self · num / den`, absent when the quotient is not a monomial.
    pub fn exchange(&self, num: &BoundaryMonomial, den: &BoundaryMonomial) -> Option<BoundaryMonomial> {
        self.mul(num).divide(den)
    }

    /// `∏ s_X! / (s_X - r_X)!`: the factor produced by `∂^r` acting on this
    /// monomial, or zero when `r` is not contained in it.
    pub fn falling_factorial(&self, r: &BoundaryMonomial) -> u64 {
        let mut acc = 1u64;
        for &(g, k) in &r.terms {
            let s = self.multiplicity(g);
            if s < k {
                return 0;
            }
            for t in 0..k {
                acc *= u64::from(s - t);
            }
        }
        acc
    }

    /// Every monomial of degree exactly `k`, in canonical order.
    pub fn enumerate(k: u32) -> Vec<BoundaryMonomial> {
        let gens = Generator::up_to_length(k);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        enumerate_into(&gens, 0, k, &mut stack, &mut out);
        out.sort();
        out
    }

    /// Every monomial of degree at most `k`, by degree then canonical order.
    pub fn enumerate_up_to(k: u32) -> Vec<BoundaryMonomial> {
        (0..=k).flat_map(BoundaryMonomial::enumerate).collect()
    }
}

fn enumerate_into(
    gens: &[Generator],
    start: usize,
    remaining: u32,
    stack: &mut Vec<Generator>,
    out: &mut Vec<BoundaryMonomial>,
) {
    if remaining == 0 {
        out.push(BoundaryMonomial::from_generators(stack.iter().copied()));
        return;
    }
    for (pos, &g) in gens.iter().enumerate().skip(start) {
        if g.length() <= remaining {
            stack.push(g);
            enumerate_into(gens, pos, remaining - g.length(), stack, out);
            stack.pop();
        }
    }
}

impl PartialOrd for BoundaryMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BoundaryMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

impl fmt::Display for BoundaryMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("1");
        }
        for (pos, &(g, e)) in self.terms.iter().enumerate() {
            if pos > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BoundaryMonomial {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_monomial(text)
    }
}

fn parse_monomial(text: &str) -> Result<BoundaryMonomial, ParseError> {
    if text == "1" {
        return Ok(BoundaryMonomial::one());
    }
    if text.is_empty() {
        return Err(ParseError::new(0, "empty input"));
    }
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut powers = Vec::new();
    loop {
        let letter = bytes[pos] as char;
        let family =
            Family::from_letter(letter).ok_or_else(|| ParseError::new(pos, format!("unknown family `{letter}`")))?;
        pos += 1;
        let (index, next) = parse_number(bytes, pos, "generator index")?;
        if index == 0 {
            return Err(ParseError::new(pos, "generator index must be at least 1"));
        }
        pos = next;
        let mut exponent = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let (e, next) = parse_number(bytes, pos, "exponent")?;
            if e == 0 {
                return Err(ParseError::new(pos, "exponent must be at least 1"));
            }
            exponent = e;
            pos = next;
        }
        powers.push((Generator::new(family, index), exponent));
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'*' {
            return Err(ParseError::new(
                pos,
                format!("expected `*`, found `{}`", bytes[pos] as char),
            ));
        }
        pos += 1;
        if pos == bytes.len() {
            return Err(ParseError::new(pos, "dangling `*`"));
        }
    }
    Ok(BoundaryMonomial::from_powers(powers))
}

fn parse_number(bytes: &[u8], start: usize, what: &str) -> Result<(u32, usize), ParseError> {
    let end = bytes[start..]
        .iter()
        .position(|c| !c.is_ascii_digit())
        .map_or(bytes.len(), |n| start + n);
    if end == start {
        return Err(ParseError::new(start, format!("expected {what}")));
    }
    let digits = std::str::from_utf8(&bytes[start..end]).expect("ascii digits");
    let value = digits
        .parse::<u32>()
        .map_err(|_| ParseError::new(start, format!("{what} out of range")))?;
    Ok((value, end))
}

impl Serialize for BoundaryMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BoundaryMonomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> BoundaryMonomial {
        text.parse().unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Generator::bar(2).length(), 3);
        assert_eq!(Generator::acute(1).length(), 2);
        assert_eq!(Generator::dot(3).length(), 6);
        assert_eq!(Generator::grave(4).length(), 8);
    }

    #[test]
    fn degrees() {
        assert_eq!(BoundaryMonomial::one().degree(), 0);
        assert_eq!(m("B1^2*D1").degree(), 4);
        assert_eq!(m("A2*G1").degree(), 6);
    }

    #[test]
    fn star_swaps_acute_and_grave() {
        assert_eq!(BoundaryMonomial::one().star(), BoundaryMonomial::one());
        assert_eq!(m("A3*B2").star(), m("G3*B2"));
        assert_eq!(m("A1*G1^2*D2").star(), m("A1^2*G1*D2"));
    }

    #[test]
    fn aut_orders() {
        assert_eq!(BoundaryMonomial::one().aut_order(Convention::INDEX), BigUint::one());
        assert_eq!(m("G2^2*B1").aut_order(Convention::INDEX), BigUint::from(8u32));
        assert_eq!(m("D2").aut_order(Convention::INDEX), BigUint::from(2u32));
        assert_eq!(m("D2").aut_order(Convention::TWICE_INDEX), BigUint::from(4u32));
        // 1^3 3! for dots of index 1, 2^2 2! for the acute pair
        assert_eq!(m("A1^2*D1^3").aut_order(Convention::INDEX), BigUint::from(48u32));
    }

    #[test]
    fn min_lengths() {
        assert_eq!(m("B1*A2").min_length().unwrap(), 1);
        assert_eq!(m("D2").min_length().unwrap(), 4);
        assert!(matches!(BoundaryMonomial::one().min_length(), Err(Error::Domain(_))));
    }

    #[test]
    fn enumeration_small_degrees() {
        assert_eq!(BoundaryMonomial::enumerate(0), vec![BoundaryMonomial::one()]);
        assert_eq!(BoundaryMonomial::enumerate(1), vec![m("B1")]);
        let two = BoundaryMonomial::enumerate(2);
        assert_eq!(two, vec![m("A1"), m("G1"), m("B1^2"), m("D1")]);
        assert_eq!(BoundaryMonomial::enumerate(4).len(), 14);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(
            m("B1^2*D1"),
            BoundaryMonomial::from_powers([(Generator::bar(1), 2), (Generator::dot(1), 1)])
        );
        assert_eq!(m("1"), BoundaryMonomial::one());
        assert_eq!(m("D1*B1*B1").to_string(), "B1^2*D1");
        assert_eq!(m("G12^3").to_string(), "G12^3");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = "B0".parse::<BoundaryMonomial>().unwrap_err();
        assert_eq!(err.position, 1);
        let err = "B1*X2".parse::<BoundaryMonomial>().unwrap_err();
        assert_eq!(err.position, 3);
        let err = "B1^".parse::<BoundaryMonomial>().unwrap_err();
        assert_eq!(err.position, 3);
        assert!("B1*".parse::<BoundaryMonomial>().is_err());
        assert!("B1^0".parse::<BoundaryMonomial>().is_err());
        assert!("B1D1".parse::<BoundaryMonomial>().is_err());
        assert!("".parse::<BoundaryMonomial>().is_err());
        assert!("A".parse::<BoundaryMonomial>().is_err());
        assert!("1*B1".parse::<BoundaryMonomial>().is_err());
    }

    #[test]
    fn division() {
        assert_eq!(m("B1^2").divide(&m("B1")), Some(m("B1")));
        assert_eq!(m("A1").divide(&m("G1")), None);
        assert_eq!(m("A2*G1").divide(&BoundaryMonomial::one()), Some(m("A2*G1")));
        assert_eq!(m("B1").divide(&m("B1^2")), None);
        assert_eq!(m("A1*B1*D3").divide(&m("A1*D3")), Some(m("B1")));
        assert_eq!(m("A1*D3").divide(&m("D4")), None);
    }

    #[test]
    fn exchange_and_falling_factorial() {
        assert_eq!(m("G1*B2").exchange(&m("D1"), &m("G1")), Some(m("B2*D1")));
        assert_eq!(m("B2").exchange(&m("D1"), &m("G1")), None);
        assert_eq!(m("B1^3*G2").falling_factorial(&m("B1^2")), 6);
        assert_eq!(m("B1*G2").falling_factorial(&m("B1^2")), 0);
        assert_eq!(m("B1*G2").falling_factorial(&BoundaryMonomial::one()), 1);
    }

    #[test]
    fn accessors() {
        let b = m("A1^2*G3*B2^4*D1");
        assert_eq!(b.s_acute(1), 2);
        assert_eq!(b.s_grave(3), 1);
        assert_eq!(b.s_bar(2), 4);
        assert_eq!(b.s_dot(1), 1);
        assert_eq!(b.s_dot(0), 0);
        assert_eq!(b.component_count(), 8);
    }
}
