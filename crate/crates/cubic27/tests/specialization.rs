//! Specializing a normal form's parameters lands in the stratum the poset predicts.

use cubic27::autgrp::{compute_aut, ScanOptions};
use cubic27::forms::{generate, strata_poset};
use cubic27::gf::{Fe, Field};
use cubic27::lines::find_lines;

fn stratum_of(f: &Field, stratum: &str, params: &[Fe]) -> (String, usize) {
    let form = generate(f, stratum, params).unwrap();
    let cfg = find_lines(&form, 12).unwrap();
    let a = compute_aut(&cfg, ScanOptions::default()).unwrap();
    (a.stratum.display.to_string(), a.order)
}

fn arrow(p: u32, from: &str, to: &str) -> bool {
    strata_poset(p).iter().any(|&(a, b)| a == from && b == to)
}

#[test]
fn cyclic_3d_with_c1_zero_is_3a() {
    let f = Field::prime(101).unwrap();
    let (s, order) = stratum_of(&f, "3D", &[f.from_i64(5), f.zero()]);
    assert_eq!((s.as_str(), order), ("3A", 54));
    assert!(arrow(0, "3D", "3A"));
}

#[test]
fn cyclic_3a_degenerations() {
    let f = Field::prime(11).unwrap();
    assert_eq!(stratum_of(&f, "3A", &[f.zero()]), ("3C".into(), 648));
    // 3(sqrt3 - 1) with sqrt3 = 5
    assert_eq!(stratum_of(&f, "3A", &[f.from_i64(12)]), ("12A".into(), 108));
    assert!(arrow(0, "3A", "3C") && arrow(0, "3A", "12A"));
}

#[test]
fn symmetric_4b_with_c_zero_is_fermat() {
    let f = Field::gf(7, 2).unwrap();
    assert_eq!(stratum_of(&f, "4B", &[f.zero()]), ("3C".into(), 648));
    assert!(arrow(0, "4B", "3C"));
    let f = Field::gf(2, 2).unwrap();
    assert_eq!(stratum_of(&f, "4B", &[f.zero()]), ("3C (=5A=12A)".into(), 25920));
    assert!(arrow(2, "4A=4B=6E", "3C=5A=12A"));
}

#[test]
fn poset_arrows_point_downward() {
    // every arrow goes from a smaller generic group to a larger one
    let order = |s: &str| match s {
        "1A" => 1,
        "2A" => 2,
        "2B" => 4,
        "3D" => 6,
        "4A" => 4,
        "4B" => 24,
        "6E" => 12,
        "3A" => 54,
        "3C" => 648,
        "5A" => 120,
        "8A" => 8,
        "12A" => 108,
        other => panic!("{other}"),
    };
    let generic = |s: &str| s.split('=').map(order).max().unwrap();
    for p in [0, 2, 3, 5, 7] {
        for (a, b) in strata_poset(p) {
            assert!(generic(b) % generic(a) == 0 || generic(a) < generic(b), "{a} -> {b} at p={p}");
        }
    }
}
