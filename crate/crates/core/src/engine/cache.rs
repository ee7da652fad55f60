//! Plain-text memo cache.
//!
//! ```text
//! format_version 1
//! dot_weight index
//! 0 0 0 B1^2 1 2
//! ```
//!
//! Records are `m acute grave monomial numerator denominator`, one per line,
//! in layer order. Every layer is written in full (zeros included) so a
//! loaded layer never has to be recomputed.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::engine::{Engine, LayerKey};
use crate::error::{Error, Result};
use crate::monomial::{BoundaryMonomial, DotWeight};
use crate::rational::from_parts;
use crate::Layer;

pub const FORMAT_VERSION: u32 = 1;

/// Write every totals layer `engine` has computed so far.
pub fn export<W: Write>(engine: &Engine, mut out: W) -> Result<()> {
    writeln!(out, "format_version {FORMAT_VERSION}")?;
    writeln!(out, "dot_weight {}", engine.convention().dot_weight)?;
    for ((_, m, acute, grave), layer) in engine.known_totals() {
        for (b, h) in layer.iter() {
            writeln!(out, "{m} {acute} {grave} {b} {} {}", h.numer(), h.denom())?;
        }
    }
    Ok(())
}

fn header<R: BufRead>(lines: &mut std::io::Lines<R>, key: &str) -> Result<String> {
    let line = lines
        .next()
        .ok_or_else(|| Error::Cache(format!("missing {key} line")))??;
    let mut parts = line.splitn(2, ' ');
    match (parts.next(), parts.next()) {
        (Some(k), Some(v)) if k == key => Ok(v.trim().to_string()),
        _ => Err(Error::Cache(format!("expected {key}, found {line:?}"))),
    }
}

/// Seed `engine` with the layers stored in `input`.
///
/// Fails on a version or dot-weight mismatch and on incomplete layers.
pub fn import<R: BufRead>(engine: &Engine, input: R) -> Result<usize> {
    let mut lines = input.lines();
    let version = header(&mut lines, "format_version")?;
    if version != FORMAT_VERSION.to_string() {
        return Err(Error::Cache(format!("unsupported format_version {version}")));
    }
    let weight: DotWeight = header(&mut lines, "dot_weight")?
        .parse()
        .map_err(|_| Error::Cache("unknown dot_weight".into()))?;
    if weight != engine.convention().dot_weight {
        return Err(Error::Cache(format!(
            "cache was built with dot_weight {weight}, engine uses {}",
            engine.convention().dot_weight
        )));
    }
    let mut layers: BTreeMap<LayerKey, Layer> = BTreeMap::new();
    for (n, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Cache(format!("malformed record on line {}", n + 3));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [m, acute, grave, b, num, den] = fields[..] else {
            return Err(bad());
        };
        let num_of = |s: &str| s.parse::<u32>().map_err(|_| bad());
        let b: BoundaryMonomial = b.parse().map_err(|_| bad())?;
        let value = from_parts(num, den).ok_or_else(bad)?;
        let key = (b.degree(), num_of(m)?, num_of(acute)?, num_of(grave)?);
        layers.entry(key).or_default().insert(b, value);
    }
    let count = layers.len();
    for (key, layer) in layers {
        if layer.len() != BoundaryMonomial::enumerate(key.0).len() {
            return Err(Error::Cache(format!("incomplete layer {key:?}")));
        }
        engine.insert_totals(key, layer);
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Convention;

    #[test]
    fn round_trip() {
        let e = Engine::new(Convention::INDEX);
        e.h_total(1, 1, &"B1^2".parse().unwrap()).unwrap();
        let mut buf = Vec::new();
        export(&e, &mut buf).unwrap();
        let fresh = Engine::new(Convention::INDEX);
        assert!(import(&fresh, buf.as_slice()).unwrap() > 0);
        let mut again = Vec::new();
        export(&fresh, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn convention_mismatch_is_an_error() {
        let e = Engine::new(Convention::INDEX);
        e.h_total(0, 1, &"G1".parse().unwrap()).unwrap();
        let mut buf = Vec::new();
        export(&e, &mut buf).unwrap();
        let other = Engine::new(Convention::TWICE_INDEX);
        assert!(matches!(import(&other, buf.as_slice()), Err(Error::Cache(_))));
    }

    #[test]
    fn incomplete_layer_is_an_error() {
        let text = "format_version 1\ndot_weight index\n0 0 0 B1^2 1 2\n";
        let e = Engine::new(Convention::INDEX);
        assert!(matches!(import(&e, text.as_bytes()), Err(Error::Cache(_))));
    }
}
