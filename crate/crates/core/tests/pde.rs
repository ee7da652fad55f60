use disk_hurwitz::checks::PDE_BOUNDS;
use disk_hurwitz::engine::{Engine, Route};
use disk_hurwitz::series::{build_operator, from_engine, operator_diff, residual, Direction, Source};
use disk_hurwitz::Convention;

fn nonzero(conv: Convention, route: Route, dir: Direction, src: Source) -> usize {
    let e = Engine::new(conv).with_route(route);
    let (a, g, h) = from_engine(PDE_BOUNDS, &e).unwrap();
    let op = build_operator(dir, src, PDE_BOUNDS.k, conv).unwrap();
    residual(dir, &a, &g, &h, &op).unwrap().nonzero_count()
}

#[test]
fn derived_boundary_operators_annihilate_boundary_first_series() {
    for conv in [Convention::INDEX, Convention::TWICE_INDEX] {
        for dir in [Direction::Beta, Direction::Gamma] {
            assert_eq!(
                nonzero(conv, Route::BoundaryFirst, dir, Source::Derived),
                0,
                "{conv:?} {dir:?}"
            );
        }
    }
}

#[test]
fn derived_alpha_operator_needs_interior_first_series() {
    for conv in [Convention::INDEX, Convention::TWICE_INDEX] {
        assert_eq!(
            nonzero(conv, Route::InteriorFirst, Direction::Alpha, Source::Derived),
            0
        );
        assert_eq!(
            nonzero(conv, Route::BoundaryFirst, Direction::Alpha, Source::Derived),
            260
        );
    }
}

#[test]
fn literal_operators_depend_on_dot_weight() {
    let bf = Route::BoundaryFirst;
    assert_eq!(nonzero(Convention::INDEX, bf, Direction::Gamma, Source::Literal), 0);
    assert!(nonzero(Convention::INDEX, bf, Direction::Beta, Source::Literal) > 0);
    assert_eq!(
        nonzero(Convention::TWICE_INDEX, bf, Direction::Beta, Source::Literal),
        0
    );
    assert!(nonzero(Convention::TWICE_INDEX, bf, Direction::Gamma, Source::Literal) > 0);
}

#[test]
fn gamma_operator_is_clean_under_index() {
    assert!(operator_diff(Direction::Gamma, 8, Convention::INDEX)
        .unwrap()
        .is_empty());
    let beta: Vec<String> = operator_diff(Direction::Beta, 4, Convention::INDEX)
        .unwrap()
        .iter()
        .map(|d| {
            format!(
                "{}<-{} {}",
                d.multiplier,
                d.derivatives,
                d.ratio.as_deref().unwrap_or("-")
            )
        })
        .collect();
    assert_eq!(beta, ["G1<-D1 2", "G2<-D2 2"]);
}
