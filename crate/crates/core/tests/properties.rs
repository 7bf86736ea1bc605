use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use farey_bary::bary::{bary_expand, bary_partition_triangles, bary_replay};
use farey_bary::delta::{delta, delta_inverse, delta_n};
use farey_bary::exact::{barycentric_coords, shoelace_area, triangle_area};
use farey_bary::farey::{expand, partition_triangles, replay};
use farey_bary::singular::radius_bound;
use farey_bary::{CaseTag, ExpansionSequence, PlanePoint, Termination};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn interior_point() -> impl Strategy<Value = PlanePoint> {
    (3i64..2000).prop_flat_map(|d| (Just(d), 2..d)).prop_flat_map(|(d, a)| {
        (1..a).prop_map(move |b| PlanePoint::new(q(a, d), q(b, d)))
    })
}

fn raw_sequence(max: usize) -> impl Strategy<Value = ExpansionSequence> {
    prop::collection::vec(0usize..3, 0..max)
        .prop_map(|v| ExpansionSequence::from_raw(&v.iter().map(|&i| CaseTag::ALL[i]).collect::<Vec<_>>()))
}

#[test]
fn farey_partition_tiles_the_base_triangle() {
    for depth in 0..=5 {
        let tris = partition_triangles(depth);
        let total: Q = tris.iter().map(|t| triangle_area(t).unwrap()).sum();
        assert_eq!(total, q(1, 2));
        for t in &tris {
            assert_eq!(shoelace_area(&t.points().unwrap()).abs(), triangle_area(t).unwrap());
        }
    }
    let total: Q = bary_partition_triangles(5)
        .iter()
        .map(|t| shoelace_area(&t.points().unwrap()).abs())
        .sum();
    assert_eq!(total, q(1, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_replays_to_a_triangle_holding_the_point(p in interior_point()) {
        let s = expand(&p, 40).unwrap();
        for k in 0..=s.len() {
            let t = replay(&s.prefix(k));
            let (a, b, c) = barycentric_coords(&p, &t).unwrap();
            prop_assert!(!a.is_negative() && !b.is_negative() && !c.is_negative());
        }
    }

    #[test]
    fn bary_expansion_replays_too(p in interior_point()) {
        let s = bary_expand(&p, 30).unwrap();
        let t = bary_replay(&s);
        let (a, b, c) = barycentric_coords(&p, t.triangle()).unwrap();
        prop_assert!(!a.is_negative() && !b.is_negative() && !c.is_negative());
    }

    #[test]
    fn largest_radius_is_bounded_by_step_counts(s in raw_sequence(30)) {
        // A leading case-I run only repeats (0,0) and (1,0), so the bound is
        // stated for sequences that open with another case.
        let s = ExpansionSequence::from_raw(&[CaseTag::II]).concat(&s);
        for k in 0..=s.len() {
            let prefix = s.prefix(k);
            let radii = replay(&prefix).radii();
            prop_assert!(radii.iter().all(|r| *r >= BigInt::one()));
            prop_assert!(*radii.iter().max().unwrap() <= radius_bound(&prefix));
        }
    }

    #[test]
    fn delta_n_keeps_barycentric_coordinates(p in interior_point(), n in 0u64..12) {
        let img = delta_n(&p, n).unwrap();
        prop_assert!(img.in_base_triangle());
        let s = expand(&p, n).unwrap();
        if s.termination == Termination::DepthLimit {
            let f = barycentric_coords(&p, &replay(&s)).unwrap();
            let b = barycentric_coords(&img, bary_replay(&s).triangle()).unwrap();
            prop_assert_eq!(f, b);
        }
    }

    #[test]
    fn delta_round_trip_is_exact(p in interior_point()) {
        let tol = q(1, 1_000_000);
        let d = delta(&p, &tol).unwrap();
        prop_assert!(d.error_bound <= tol);
        let back = delta_inverse(&d.value, &tol).unwrap();
        prop_assert_eq!(back.value, p);
        prop_assert_eq!(back.depth_used, d.depth_used);
    }

    #[test]
    fn delta_preserves_the_first_coordinate_order(p in interior_point()) {
        let img = delta(&p, &q(1, 1000)).unwrap().value;
        prop_assert!(img.y <= img.x && img.x <= Q::one() && !img.y.is_negative());
    }
}
