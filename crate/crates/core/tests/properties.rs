mod common;

use orchard_core::crossings::{
    convex_crossings, edge_crossing_counts, point_cycle_contribution, point_in_polygon, total_crossings,
    total_crossings_naive,
};
use orchard_core::exact_geom::{orientation, ratio, rational_circle_point, strictly_separates};
use orchard_core::{CircularOrder, Drawing, Point, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn point() -> impl Strategy<Value = Point> {
    (-50i64..50, -50i64..50, 1i64..7, 1i64..7).prop_map(|(x, y, dx, dy)| Point::new(ratio(x, dx), ratio(y, dy)))
}

fn drawing() -> impl Strategy<Value = Drawing> {
    any::<u64>().prop_map(|seed| common::random_graph_drawing(&mut ChaCha8Rng::seed_from_u64(seed), 12, 20))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orientation_is_antisymmetric(p in point(), q in point(), r in point()) {
        prop_assert_eq!(orientation(&p, &q, &r).sign(), -orientation(&q, &p, &r).sign());
        prop_assert_eq!(orientation(&p, &q, &r), orientation(&q, &r, &p));
    }

    #[test]
    fn separation_is_symmetric(u in point(), v in point(), s in point(), t in point()) {
        let a = strictly_separates(&u, &v, &s, &t);
        prop_assert_eq!(a, strictly_separates(&v, &u, &s, &t));
        prop_assert_eq!(a, strictly_separates(&u, &v, &t, &s));
    }

    /// Four points in general position: exactly one of the three pairings
    /// separates mutually when they are in convex position, none when one
    /// lies inside the triangle of the others.
    #[test]
    fn quadruple_pairings(u in point(), v in point(), s in point(), t in point()) {
        let pts = [u, v, s, t];
        prop_assume!(orchard_core::exact_geom::is_general_position(&pts));
        let mutual = |a: usize, b: usize, c: usize, d: usize| {
            strictly_separates(&pts[a], &pts[b], &pts[c], &pts[d])
                && strictly_separates(&pts[c], &pts[d], &pts[a], &pts[b])
        };
        let count = [mutual(0, 1, 2, 3), mutual(0, 2, 1, 3), mutual(0, 3, 1, 2)].iter().filter(|&&b| b).count();
        let inside_triangle = |i: usize| {
            let o: Vec<usize> = (0..4).filter(|&j| j != i).collect();
            let sign = orientation(&pts[o[0]], &pts[o[1]], &pts[o[2]]).sign();
            [(o[0], o[1]), (o[1], o[2]), (o[2], o[0])]
                .iter()
                .all(|&(a, b)| orientation(&pts[a], &pts[b], &pts[i]).sign() == sign)
        };
        let convex = !(0..4).any(inside_triangle);
        prop_assert_eq!(count, usize::from(convex));
    }

    #[test]
    fn circle_points_lie_on_the_unit_circle(num in -10_000i64..10_000, den in 1i64..10_000) {
        let p = rational_circle_point(&ratio(num, den));
        prop_assert_eq!(&p.x * &p.x + &p.y * &p.y, Rational::from_integer(1.into()));
    }

    #[test]
    fn naive_and_optimized_counts_agree(d in drawing()) {
        prop_assert_eq!(total_crossings_naive(&d), total_crossings(&d));
        prop_assert_eq!(edge_crossing_counts(&d).iter().sum::<u64>(), total_crossings(&d));
    }

    #[test]
    fn convex_count_matches_realized_drawing(d in drawing(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let m = d.graph().vertex_count();
        let mut perm: Vec<usize> = (0..m).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let ord = CircularOrder::new(perm).unwrap();
        prop_assert_eq!(convex_crossings(d.graph(), &ord).unwrap(), total_crossings(&ord.realize(d.graph()).unwrap()));
    }

    /// An edge can only be crossed by lines through two of the other points.
    #[test]
    fn per_edge_count_is_bounded(d in drawing()) {
        let m = d.graph().vertex_count() as u64;
        for c in edge_crossing_counts(&d) {
            prop_assert!(c <= (m - 2) * (m - 3) / 2);
        }
    }

    /// Nonsingular affine maps preserve every orientation up to one global
    /// sign, so crossing counts are unchanged.
    #[test]
    fn counts_are_affine_invariant(
        d in drawing(),
        (a, b, c, e) in (-5i64..6, -5i64..6, -5i64..6, -5i64..6),
        (tx, ty) in (-20i64..20, -20i64..20),
    ) {
        prop_assume!(a * e - b * c != 0);
        let map = |p: &Point| {
            let r = |k: i64| Rational::from_integer(k.into());
            Point::new(&p.x * r(a) + &p.y * r(b) + r(tx), &p.x * r(c) + &p.y * r(e) + r(ty))
        };
        let moved = Drawing::new(d.graph().clone(), d.placement().iter().map(map).collect()).unwrap();
        prop_assert_eq!(total_crossings(&moved), total_crossings(&d));
    }

    #[test]
    fn separated_point_contribution(seed in any::<u64>(), n in 3usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = common::simple_cycle_with_point(&mut rng, n);
        let cycle: Vec<usize> = (0..n).collect();
        let inside = point_in_polygon(d.point(n), &d.placement()[..n]).unwrap();
        let c = point_cycle_contribution(&d, &cycle, n).unwrap() as usize;
        let floor = if inside { n } else { n - 2 };
        prop_assert!(c >= floor);
    }
}
