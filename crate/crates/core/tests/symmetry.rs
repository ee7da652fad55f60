use disk_hurwitz::checks::{covariance, splits, star_symmetry};
use disk_hurwitz::engine::{Engine, GraveSide};
use disk_hurwitz::rational::frac;
use disk_hurwitz::report::dot_scale;
use disk_hurwitz::{BoundaryMonomial, Convention};

fn m(s: &str) -> BoundaryMonomial {
    s.parse().unwrap()
}

#[test]
fn printed_grave_step_breaks_reflection() {
    let e = Engine::new(Convention::INDEX);
    assert_eq!(e.h_split(0, 1, 0, &m("G1*B1")).unwrap(), frac(3, 2));
    assert_eq!(e.h_split(0, 0, 1, &m("A1*B1")).unwrap(), frac(1, 2));
    let outcome = star_symmetry(&e, 5, 3).unwrap();
    assert_eq!(
        outcome.unwrap_err(),
        "h'(0, 1, 0, G1*B1) = 3/2 but h`(0, 0, 1, A1*B1) = 1/2"
    );
}

#[test]
fn mirrored_grave_step_is_star_symmetric() {
    for conv in [Convention::INDEX, Convention::TWICE_INDEX] {
        let e = Engine::new(conv).with_grave_side(GraveSide::Mirrored);
        assert!(star_symmetry(&e, 5, 3).unwrap().is_ok());
    }
}

#[test]
fn acute_steps_agree_between_grave_rules() {
    let printed = Engine::new(Convention::INDEX);
    let mirrored = Engine::new(Convention::INDEX).with_grave_side(GraveSide::Mirrored);
    for k in 0..=5 {
        for b in BoundaryMonomial::enumerate(k) {
            assert_eq!(
                printed.h_split(0, 1, 0, &b).unwrap(),
                mirrored.h_split(0, 1, 0, &b).unwrap()
            );
        }
    }
}

#[test]
fn dot_weight_covariance() {
    assert!(covariance(5, 3).unwrap().is_ok());
}

#[test]
fn covariance_by_hand() {
    let index = Engine::new(Convention::INDEX);
    let twice = Engine::new(Convention::TWICE_INDEX);
    for (mm, a, g) in splits(2) {
        for b in BoundaryMonomial::enumerate_up_to(4) {
            let x = index.h_split(mm, a, g, &b).unwrap() * dot_scale(&b, Convention::INDEX);
            let y = twice.h_split(mm, a, g, &b).unwrap() * dot_scale(&b, Convention::TWICE_INDEX);
            assert_eq!(x, y, "{mm} {a} {g} {b}");
        }
    }
}
