//! Parallel versus sequential W(E6) candidate scans.
//!
//! The full scan tests all 51840 relabellings of the 27 lines; the prefiltered
//! scan only those preserving the Eckardt trios.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cubic27::autgrp::{compute_aut, ScanMode, ScanOptions};
use cubic27::forms::generate;
use cubic27::gf::Field;
use cubic27::lines::{find_lines, LineConfiguration};
use std::hint::black_box;

fn surfaces() -> Vec<(&'static str, LineConfiguration)> {
    let gf7 = Field::prime(7).unwrap();
    let gf11 = Field::prime(11).unwrap();
    let gf101 = Field::prime(101).unwrap();
    let mut out = vec![];
    for (name, f, stratum, params) in [
        ("fermat-gf7", &gf7, "3C", vec![]),
        ("clebsch-gf11", &gf11, "5A", vec![]),
        ("3d-gf101", &gf101, "3D", vec![gf101.from_i64(5), gf101.from_i64(7)]),
    ] {
        let form = generate(f, stratum, &params).unwrap();
        out.push((name, find_lines(&form, 12).unwrap()));
    }
    out
}

fn scan(c: &mut Criterion) {
    let cases = surfaces();
    let mut modes = vec![("sequential", ScanMode::Sequential)];
    if cfg!(feature = "parallel") {
        modes.push(("parallel", ScanMode::Parallel));
    }
    for prefilter in [false, true] {
        let mut g = c.benchmark_group(if prefilter { "prefiltered-scan" } else { "full-scan" });
        g.sample_size(10);
        for (name, cfg) in &cases {
            for &(label, mode) in &modes {
                g.bench_with_input(BenchmarkId::new(label, name), cfg, |b, cfg| {
                    b.iter(|| compute_aut(black_box(cfg), ScanOptions { prefilter, mode }).unwrap().order)
                });
            }
        }
        g.finish();
    }
}

criterion_group!(benches, scan);
criterion_main!(benches);
