//! Randomized properties checked against brute force.

use cubic27::autgrp::{compute_aut, ScanOptions};
use cubic27::forms::generate;
use cubic27::gf::{Embedding, Fe, Field};
use cubic27::linalg::det;
use cubic27::lines::{find_lines, lines_exhaustive};
use cubic27::projgeom::Line3;
use cubic27::surface::{is_smooth, CubicForm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn random_form(f: &Field, seed: u64) -> CubicForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CubicForm::new(f, std::array::from_fn(|_| f.random(&mut rng)))
}

fn random_invertible(f: &Field, seed: u64) -> [[Fe; 4]; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: [[Fe; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| f.random(&mut rng)));
        if !det(f, &m.iter().map(|r| r.to_vec()).collect()).is_zero() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn rational_lines_match_brute_force(seed in any::<u64>(), which in 0usize..4) {
        let (p, k) = [(2, 1), (3, 1), (5, 1), (3, 2)][which];
        let f = Field::gf(p, k).unwrap();
        let form = random_form(&f, seed);
        prop_assume!(!form.is_zero() && is_smooth(&form, 12).unwrap().smooth);
        let cfg = find_lines(&form, 12).unwrap();
        let e = Embedding::new(&f, &cfg.field).unwrap();
        let ours: BTreeSet<Line3> = cfg
            .lines
            .iter()
            .filter_map(|l| {
                let u: Option<Vec<Fe>> = l.u.iter().map(|&x| e.preimage(x)).collect();
                let v: Option<Vec<Fe>> = l.v.iter().map(|&x| e.preimage(x)).collect();
                Line3::through(&f, u?.try_into().ok()?, v?.try_into().ok()?).ok()
            })
            .collect();
        let brute: BTreeSet<Line3> = lines_exhaustive(&form).into_iter().collect();
        prop_assert_eq!(ours, brute);
    }

    #[test]
    fn field_inverse_and_frobenius(seed in any::<u64>(), which in 0usize..3) {
        let (p, k) = [(2, 7), (3, 5), (101, 2)][which];
        let f = Field::gf(p, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = f.random_nonzero(&mut rng);
        prop_assert_eq!(f.mul(a, f.inv(a)), f.one());
        let mut b = a;
        for _ in 0..k {
            b = f.frob(b);
        }
        prop_assert_eq!(b, a);
        prop_assert_eq!(f.frob_inv(f.frob(a)), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 4, ..ProptestConfig::default() })]

    #[test]
    fn automorphism_group_is_a_coordinate_invariant(seed in any::<u64>()) {
        let f = Field::prime(11).unwrap();
        let clebsch = generate(&f, "5A", &[]).unwrap();
        let moved = clebsch.transform(&random_invertible(&f, seed));
        let a = compute_aut(&find_lines(&moved, 12).unwrap(), ScanOptions::default()).unwrap();
        prop_assert_eq!(a.order, 120);
        prop_assert_eq!(a.stratum.name, "5A");
    }
}
