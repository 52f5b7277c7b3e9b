use std::f64::consts::PI;

use proptest::prelude::*;

use hypergrid::fib::FibWord;
use hypergrid::nav::{edge_toward, neighbor};
use hypergrid::{absolute_from, ball, distance, neighbors, origin_direction, recenter, shortest_path, Address, Grid};

fn word_strategy(max_len: usize) -> impl Strategy<Value = FibWord> {
    prop::collection::vec(any::<bool>(), 0..max_len).prop_map(|bits| {
        let mut digits = vec![1u8];
        for b in bits {
            let d = if *digits.last().unwrap() == 1 { 0 } else { u8::from(b) };
            digits.push(d);
        }
        FibWord::from_digits(digits).unwrap()
    })
}

fn address_strategy(max_len: usize) -> impl Strategy<Value = Address> {
    (prop_oneof![Just(Grid::Pentagrid), Just(Grid::Heptagrid)], 1u8..=7, word_strategy(max_len), any::<bool>())
        .prop_map(|(grid, sector, word, center)| {
            if center {
                Address::center(grid)
            } else {
                Address::node(grid, (sector - 1) % grid.p() + 1, word).unwrap()
            }
        })
}

fn pair_strategy(max_len: usize) -> impl Strategy<Value = (Address, Address)> {
    (address_strategy(max_len), 1u8..=7, word_strategy(max_len)).prop_map(|(a, sector, word)| {
        let b = Address::node(a.grid, (sector - 1) % a.grid.p() + 1, word).unwrap();
        (a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn crossing_back_returns(a in address_strategy(40)) {
        for e in 0..a.grid.p() {
            let (n, back) = neighbor(&a, e).unwrap();
            let (m, again) = neighbor(&n, back).unwrap();
            prop_assert_eq!(&m, &a);
            prop_assert_eq!(again, e);
            prop_assert_eq!(distance(&a, &n).unwrap(), 1);
        }
    }

    #[test]
    fn distance_is_symmetric_and_bounded((a, b) in pair_strategy(25)) {
        let d = distance(&a, &b).unwrap();
        prop_assert_eq!(d, distance(&b, &a).unwrap());
        prop_assert!(d <= a.depth() + b.depth());
        prop_assert!(d >= a.depth().abs_diff(b.depth()));
        prop_assert_eq!(d == 0, a == b);
    }

    #[test]
    fn paths_are_walks_of_length_distance((a, b) in pair_strategy(20)) {
        let path = shortest_path(&a, &b).unwrap();
        prop_assert_eq!(path.len(), distance(&a, &b).unwrap() + 1);
        for w in path.windows(2) {
            prop_assert!(neighbors(&w[0]).contains(&w[1]));
        }
    }

    #[test]
    fn recentering_round_trips((a, c) in pair_strategy(20)) {
        let r = recenter(&a, &c).unwrap();
        prop_assert_eq!(r.depth(), distance(&a, &c).unwrap());
        prop_assert_eq!(absolute_from(&c, &r).unwrap(), a.clone());
        prop_assert!(recenter(&c, &c).unwrap().is_center());
    }
}

#[test]
fn arrow_from_a_root_points_across_edge_zero() {
    for grid in Grid::ALL {
        for s in 1..=grid.p() {
            let root = Address::root(grid, s).unwrap();
            let angle = origin_direction(&root).unwrap();
            assert!((angle - PI / grid.p() as f64).abs() < 1e-9, "{root}: {angle}");
            assert_eq!(edge_toward(grid, angle), 0);
        }
        assert!(origin_direction(&Address::center(grid)).is_err());
    }
}

#[test]
fn following_the_arrow_reaches_the_center() {
    for grid in Grid::ALL {
        for start in ball(grid, 4).into_iter().filter(|a| !a.is_center()) {
            let mut here = start.clone();
            let mut steps = 0;
            while !here.is_center() {
                let e = edge_toward(grid, origin_direction(&here).unwrap());
                let (next, _) = neighbor(&here, e).unwrap();
                assert_eq!(next.depth() + 1, here.depth(), "from {start}: arrow at {here} leads away");
                here = next;
                steps += 1;
            }
            assert_eq!(steps, start.depth());
        }
    }
}

#[test]
fn deep_arrow_still_points_home() {
    let word: FibWord = "10".repeat(600).trim_end_matches('0').parse().unwrap();
    for grid in Grid::ALL {
        let mut here = Address::node(grid, 4, word.clone()).unwrap();
        for _ in 0..5 {
            let angle = origin_direction(&here).unwrap();
            assert!(angle.is_finite());
            let (next, _) = neighbor(&here, edge_toward(grid, angle)).unwrap();
            assert_eq!(next.depth() + 1, here.depth());
            here = next;
        }
    }
}

#[test]
fn sectors_are_rotations_of_each_other() {
    for grid in Grid::ALL {
        let p = grid.p();
        let layout = hypergrid::layout::Layout::new(grid);
        for word in ["1", "10", "1001", "10100"] {
            let w: FibWord = word.parse().unwrap();
            for s in 1..=p {
                let here = Address::node(grid, s, w.clone()).unwrap();
                let next = Address::node(grid, s % p + 1, w.clone()).unwrap();
                let (a, b) = (layout.patch(&here).center, layout.patch(&next).center);
                let turn = (b.angle() - a.angle()).rem_euclid(2.0 * PI);
                assert!((turn - 2.0 * PI / p as f64).abs() < 1e-6, "{here} -> {next}: {turn}");
                assert!((a.norm() - b.norm()).abs() < 1e-9);
                // in canonical pose the arrow only depends on the word
                let d = origin_direction(&here).unwrap() - origin_direction(&next).unwrap();
                assert!(d.sin().abs() < 1e-6 && d.cos() > 0.0, "{here}: arrow differs by {d}");
            }
        }
    }
}
