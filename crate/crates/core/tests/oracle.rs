use disk_hurwitz::correlators::{contraction_step, SimpleKind};
use disk_hurwitz::engine::moves::fast_step;
use disk_hurwitz::engine::{route_commutation_report, Engine, Evaluation};
use disk_hurwitz::rational::{frac, Rational};
use disk_hurwitz::{BoundaryMonomial, Convention, Layer};

/// A layer with distinct, generic values, so accidental cancellations do not
/// hide a wrong weight.
fn generic_layer(k: u32) -> Layer {
    BoundaryMonomial::enumerate(k)
        .into_iter()
        .enumerate()
        .map(|(n, b)| (b, frac(2 * n as i64 + 3, 7 + n as i64 * n as i64)))
        .collect()
}

#[test]
fn moves_match_contraction_on_generic_layers() {
    for conv in [Convention::INDEX, Convention::TWICE_INDEX] {
        for k in 0..=6 {
            let layer = generic_layer(k);
            for b in BoundaryMonomial::enumerate(k) {
                for kind in SimpleKind::ALL {
                    let fast = fast_step(&layer, kind, &b, conv);
                    let slow = contraction_step(&layer, kind, &b, conv).unwrap();
                    assert_eq!(fast, slow, "{kind:?} {b} {conv:?}");
                }
            }
        }
    }
}

#[test]
fn engine_modes_agree() {
    for conv in [Convention::INDEX, Convention::TWICE_INDEX] {
        let fast = Engine::new(conv);
        let slow = Engine::new(conv).with_evaluation(Evaluation::Contraction);
        for k in 0..=5 {
            for m in 0..=3u32 {
                for a in 0..=3 - m {
                    for g in 0..=3 - m - a {
                        assert_eq!(
                            *fast.refined_layer(k, m, a, g).unwrap(),
                            *slow.refined_layer(k, m, a, g).unwrap(),
                            "{k} {m} {a} {g}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn routes_disagree_on_lone_boundary_components() {
    let rows = route_commutation_report(4, Convention::INDEX).unwrap();
    let get = |b: &str| rows.iter().find(|r| r.b.to_string() == b).unwrap();
    assert_eq!(get("A1").boundary_first, frac(1, 2));
    assert_eq!(get("A1").interior_first, Rational::from_integer(0.into()));
    assert_eq!(get("G1*B1").difference, frac(-3, 2));
    assert_eq!(get("A2").difference, Rational::from_integer(0.into()));
    let nonzero = rows
        .iter()
        .filter(|r| r.difference != Rational::from_integer(0.into()))
        .count();
    assert_eq!(nonzero, 8);
}
