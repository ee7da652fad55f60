use disk_hurwitz::correlators::{interior_matches, three_point_boundary, three_point_interior, SimpleKind};
use disk_hurwitz::rational::frac;
use disk_hurwitz::series::{apply, PolyOperator, SeriesBounds, TruncatedSeries};
use disk_hurwitz::{BoundaryMonomial, Convention};
use proptest::prelude::*;

fn monomial(max_degree: u32) -> impl Strategy<Value = BoundaryMonomial> {
    let all = BoundaryMonomial::enumerate_up_to(max_degree);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn convention() -> impl Strategy<Value = Convention> {
    prop_oneof![Just(Convention::INDEX), Just(Convention::TWICE_INDEX)]
}

proptest! {
    #[test]
    fn text_round_trip(b in monomial(8)) {
        let back: BoundaryMonomial = b.to_string().parse().unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn aut_is_multiplicative_on_disjoint_families(x in monomial(5), y in monomial(5), conv in convention()) {
        let disjoint = x.generators().all(|g| y.multiplicity(g) == 0);
        prop_assume!(disjoint);
        prop_assert_eq!(x.mul(&y).aut_order(conv), x.aut_order(conv) * y.aut_order(conv));
    }

    #[test]
    fn star_is_an_involution(b in monomial(8), conv in convention()) {
        prop_assert_eq!(b.star().star(), b.clone());
        prop_assert_eq!(b.star().degree(), b.degree());
        prop_assert_eq!(b.star().aut_order(conv), b.aut_order(conv));
    }

    #[test]
    fn boundary_tables_are_star_flips(c in monomial(5), b in monomial(5)) {
        // exact under index only: a dot consumed from b is rescaled, one in c is not
        let conv = Convention::INDEX;
        prop_assume!(c.degree() == b.degree());
        let acute = three_point_boundary(&c, SimpleKind::AcuteSimple, &b, conv).unwrap();
        let grave = three_point_boundary(&b.star(), SimpleKind::GraveSimple, &c.star(), conv).unwrap();
        prop_assert_eq!(acute, grave);
    }

    #[test]
    fn interior_table_is_star_flip_invariant(c in monomial(5), b in monomial(5)) {
        let conv = Convention::INDEX;
        prop_assume!(c.degree() == b.degree());
        prop_assert_eq!(
            three_point_interior(&c, &b, conv).unwrap(),
            three_point_interior(&b.star(), &c.star(), conv).unwrap()
        );
    }

    #[test]
    fn interior_matches_are_distinct(c in monomial(6), b in monomial(6)) {
        prop_assume!(c.degree() == b.degree());
        let matches = interior_matches(&c, &b, Convention::INDEX).unwrap();
        let mut keys: Vec<_> = matches.iter().map(|m| (m.consumed.clone(), m.emitted.clone())).collect();
        let n = keys.len();
        keys.sort();
        keys.dedup();
        prop_assert_eq!(keys.len(), n);
    }

    #[test]
    fn apply_is_linear(xs in proptest::collection::vec((monomial(3), -5i64..5), 0..6),
                       ys in proptest::collection::vec((monomial(3), -5i64..5), 0..6)) {
        let bounds = SeriesBounds { m: 0, acute: 0, grave: 0, k: 3 };
        let fill = |v: &[(BoundaryMonomial, i64)]| {
            let mut s = TruncatedSeries::new(bounds);
            for (b, c) in v {
                let old = s.get(0, 0, 0, b);
                s.set(0, 0, 0, b.clone(), old + frac(*c, 1)).unwrap();
            }
            s
        };
        let mut op = PolyOperator::new(3);
        op.add_term("B1*G1".parse().unwrap(), "B2".parse().unwrap(), frac(3, 2));
        op.add_term("D1".parse().unwrap(), "B1^2".parse().unwrap(), frac(-1, 3));
        let (x, y) = (fill(&xs), fill(&ys));
        let lhs = apply(&op, &x.plus(&y).unwrap()).unwrap();
        let rhs = apply(&op, &x).unwrap().plus(&apply(&op, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs.to_json(), rhs.to_json());
    }
}

#[test]
fn non_diagonal_boundary_values_are_unique() {
    // at most one case of each boundary table fires; more would be an error
    for k in 0..=6 {
        for c in BoundaryMonomial::enumerate(k) {
            for b in BoundaryMonomial::enumerate(k) {
                for kind in [SimpleKind::AcuteSimple, SimpleKind::GraveSimple] {
                    three_point_boundary(&c, kind, &b, Convention::INDEX).unwrap();
                }
            }
        }
    }
}
