//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Everything is exact arithmetic; tolerance is zero throughout.

use std::collections::BTreeMap;
use std::time::Instant;

use weyl_restrict::group::{
    compare_groups, generate_extended, generate_weyl, restricted_image, GroupComparison,
    GroupTable, DEFAULT_ENUM_CAP,
};
use weyl_restrict::invariants::{
    char_poly_generators, check_surjectivity, remark_counterexample, verify_restriction_identities,
    SurjEntry,
};
use weyl_restrict::poly::Polynomial;
use weyl_restrict::rat::ratio;
use weyl_restrict::root_system::{RootSystem, TypeLabel};
use weyl_restrict::spaces::{
    lookup_space, restricted_root_data, verify_theorem_ihia, Family, FamilyParams,
};
use weyl_restrict::sweep::{run_sweep, SweepOptions};
use weyl_restrict::transfer::{
    gamma_transfer, laplacian_symbol, random_invariant_symbol, rho_shift, OperatorSymbol,
    RhoConvention,
};

fn report(criterion: u32, desc: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("ACCEPTANCE {criterion}: PASS - {desc}");
    } else {
        println!("ACCEPTANCE {criterion}: FAIL - {desc}");
        for f in failures {
            println!("    {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {criterion}: {failures:?}");
}

fn fact(m: usize) -> usize {
    (1..=m).product()
}

struct Cache(BTreeMap<(TypeLabel, usize, bool), GroupTable>);

impl Cache {
    fn new() -> Self {
        Cache(BTreeMap::new())
    }
    fn get(&mut self, label: TypeLabel, rank: usize, extended: bool) -> GroupTable {
        self.0
            .entry((label, rank, extended))
            .or_insert_with(|| {
                let rs = RootSystem::build(label, rank).unwrap();
                if extended {
                    generate_extended(&rs, DEFAULT_ENUM_CAP).unwrap()
                } else {
                    generate_weyl(&rs, DEFAULT_ENUM_CAP).unwrap()
                }
            })
            .clone()
    }
}

#[test]
fn criterion_01_group_orders() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cache = Cache::new();
    for label in TypeLabel::ALL {
        for rank in label.min_rank()..=6 {
            let order = cache.get(label, rank, false).order();
            let expected = label.weyl_order(rank);
            if order != expected {
                failures.push(format!(
                    "|W({label}_{rank})| = {order}, expected {expected}"
                ));
            }
        }
    }
    for rank in 2..=6usize {
        let order = cache.get(TypeLabel::D, rank, true).order();
        let expected = (1 << rank) * fact(rank);
        if order != expected {
            failures.push(format!("|W~(D_{rank})| = {order}, expected {expected}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 10.0 {
        failures.push(format!("runtime {elapsed:?} exceeds 10 s"));
    }
    report(
        1,
        &format!("closure-enumerated group orders, ranks <= 6, in {elapsed:?}"),
        &failures,
    );
}

#[test]
fn criterion_02_admext_part1_abc() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cache = Cache::new();
    for label in [TypeLabel::A, TypeLabel::B, TypeLabel::C] {
        for k in label.min_rank() + 1..=6 {
            for n in label.min_rank()..k {
                let big = cache.get(label, k, false);
                let img = restricted_image(&big, n).unwrap();
                let small = cache.get(label, n, false);
                if compare_groups(&img.table, &small).unwrap() != GroupComparison::Equal {
                    failures.push(format!("{label} {k}->{n}: image != W_{n}"));
                }
                let expected_stab = match label {
                    TypeLabel::A => fact(k - n) * fact(n + 1),
                    _ => (1 << (k - n)) * fact(k - n) * (1 << n) * fact(n),
                };
                if img.stabilizer_order != expected_stab {
                    failures.push(format!(
                        "{label} {k}->{n}: stabilizer {} != formula {expected_stab}",
                        img.stabilizer_order
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 30.0 {
        failures.push(format!("runtime {elapsed:?} exceeds 30 s"));
    }
    report(
        2,
        &format!("restricted Weyl images and stabilizer orders (A/B/C) in {elapsed:?}"),
        &failures,
    );
}

const D_PAIRS: [(usize, usize); 3] = [(5, 4), (6, 4), (6, 5)];

#[test]
fn criterion_03_admext_part2_d() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cache = Cache::new();
    for (k, n) in D_PAIRS {
        let img = restricted_image(&cache.get(TypeLabel::D, k, false), n).unwrap();
        let w_n = cache.get(TypeLabel::D, n, false);
        let hyper = cache.get(TypeLabel::D, n, true);
        if compare_groups(&w_n, &img.table).unwrap() != GroupComparison::ProperSubgroup {
            failures.push(format!(
                "D {k}->{n}: W(D_{n}) not a proper subgroup of the image"
            ));
        }
        if compare_groups(&img.table, &hyper).unwrap() != GroupComparison::Equal
            || img.table.order() != (1 << n) * fact(n)
        {
            failures.push(format!(
                "D {k}->{n}: image order {} != hyperoctahedral {}",
                img.table.order(),
                (1 << n) * fact(n)
            ));
        }
        let gens = char_poly_generators(TypeLabel::D, k).unwrap();
        for nu in 1..=k {
            if !gens.p(nu).restrict(n).all_exponents_even() {
                failures.push(format!(
                    "D {k}->{n}: restricted p_{{{k},{nu}}} has odd exponents"
                ));
            }
        }
        let surj = check_surjectivity(TypeLabel::D, k, n, false).unwrap();
        match surj.entries.first() {
            Some(SurjEntry::Obstruction {
                certified: true, ..
            }) => {}
            other => failures.push(format!(
                "D {k}->{n}: no obstruction certificate ({other:?})"
            )),
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 30.0 {
        failures.push(format!("runtime {elapsed:?} exceeds 30 s"));
    }
    report(
        3,
        &format!("type D strict containment + Pfaffian obstruction in {elapsed:?}"),
        &failures,
    );
}

#[test]
fn criterion_04_admext_parts3_4_d() {
    let mut failures = Vec::new();
    let mut cache = Cache::new();
    for (k, n) in D_PAIRS {
        let img_ext = restricted_image(&cache.get(TypeLabel::D, k, true), n).unwrap();
        let wt_n = cache.get(TypeLabel::D, n, true);
        if compare_groups(&img_ext.table, &wt_n).unwrap() != GroupComparison::Equal {
            failures.push(format!("D {k}->{n}: restricted W~ image != W~(D_{n})"));
        }
        let surj = check_surjectivity(TypeLabel::D, k, n, true).unwrap();
        if !surj.pass || surj.entries.len() != n {
            failures.push(format!(
                "D {k}->{n}: extended surjectivity witnesses failed ({:?})",
                surj.entries
            ));
        }
        if !surj
            .entries
            .iter()
            .all(|e| matches!(e, SurjEntry::Witness { verified: true, .. }))
        {
            failures.push(format!("D {k}->{n}: unverified extended witness"));
        }
    }
    report(
        4,
        "type D extended groups restrict onto extended groups with verified witnesses",
        &failures,
    );
}

#[test]
fn criterion_05_restriction_identities() {
    let mut failures = Vec::new();
    let mut count = 0usize;
    for label in TypeLabel::ALL {
        for k in label.min_propagation_rank()..=7 {
            for n in label.min_propagation_rank()..k {
                let r = verify_restriction_identities(label, k, n).unwrap();
                count += r.items.len();
                if !r.pass {
                    failures.push(format!("{label} {k}->{n}: {:?}", r.items));
                }
            }
        }
    }
    report(
        5,
        &format!("restriction identities, {count} displayed identities exact for k <= 7"),
        &failures,
    );
}

#[test]
fn criterion_06_remark_counterexample() {
    let mut failures = Vec::new();
    let r = remark_counterexample(TypeLabel::B, 4, 2, DEFAULT_ENUM_CAP).unwrap();
    if !r.minus_id_in_restricted_image {
        failures.push("-id missing from the restricted group on the A_2 factor".into());
    }
    if !r.minus_id_absent_from_small_weyl {
        failures.push("-id unexpectedly present in W(A_2)".into());
    }
    if !r.invariants_even_on_factor.iter().all(|(_, e)| *e) {
        failures.push("a restricted invariant is not even on the factor".into());
    }
    report(
        6,
        "B_4 minus alpha_2: -id in restricted image, invariants even on the A_2 factor",
        &failures,
    );
}

#[test]
fn criterion_07_ihia() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let splits = [
        lookup_space(Family::AI, FamilyParams::J(3)).unwrap(),
        lookup_space(Family::AI, FamilyParams::J(4)).unwrap(),
        lookup_space(Family::CI, FamilyParams::J(2)).unwrap(),
        lookup_space(Family::CI, FamilyParams::J(3)).unwrap(),
        lookup_space(Family::BDI, FamilyParams::PQ(4, 4)).unwrap(),
        lookup_space(Family::BDI, FamilyParams::PQ(4, 3)).unwrap(),
        lookup_space(Family::BDI, FamilyParams::PQ(5, 4)).unwrap(),
    ];
    for s in splits {
        let r = verify_theorem_ihia(&s, DEFAULT_ENUM_CAP).unwrap();
        if !r.pass || r.case != "split" {
            failures.push(format!("{s}: split case failed"));
        }
    }
    let complex = [
        (Family::ComplexA, vec![2usize, 3, 4]),
        (Family::ComplexB, vec![2, 3, 4]),
        (Family::ComplexC, vec![2, 3, 4]),
        (Family::ComplexD, vec![4]),
    ];
    for (f, js) in complex {
        for j in js {
            let s = lookup_space(f, FamilyParams::J(j)).unwrap();
            let r = verify_theorem_ihia(&s, DEFAULT_ENUM_CAP).unwrap();
            if !r.pass || r.case != "complex-diagonal" {
                failures.push(format!("{s}: complex diagonal case failed"));
            }
        }
    }
    // out-of-scope families get a distinct error, not a failure
    let s = lookup_space(Family::AIII, FamilyParams::PQ(3, 2)).unwrap();
    if !matches!(
        verify_theorem_ihia(&s, DEFAULT_ENUM_CAP),
        Err(weyl_restrict::Error::OutOfScopeFamily(_))
    ) {
        failures.push("AIII(3,2) should be rejected as out of scope".into());
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 60.0 {
        failures.push(format!("runtime {elapsed:?} exceeds 60 s"));
    }
    report(
        7,
        &format!("IhIa split + complex diagonal cases (D_4-complex included) in {elapsed:?}"),
        &failures,
    );
}

#[test]
fn criterion_08_table_consistency() {
    let mut failures = Vec::new();
    // the table's Dim M formulas, restated independently of the library
    let dim_formula = |family: Family, params: FamilyParams| -> usize {
        match (family, params) {
            (Family::AIII, FamilyParams::PQ(p, q)) => 2 * p * q,
            (Family::BDI, FamilyParams::PQ(p, q)) => p * q,
            (Family::CII, FamilyParams::PQ(p, q)) => 4 * p * q,
            (Family::ComplexA, FamilyParams::J(j)) => j * j - 1,
            (Family::ComplexB, FamilyParams::J(j)) | (Family::ComplexC, FamilyParams::J(j)) => {
                2 * j * j + j
            }
            (Family::ComplexD, FamilyParams::J(j)) => 2 * j * j - j,
            (Family::AI, FamilyParams::J(j)) => (j - 1) * (j + 2) / 2,
            (Family::AII, FamilyParams::J(j)) => 2 * j * j - j - 1,
            (Family::DIII, FamilyParams::J(j)) => j * (j - 1),
            (Family::CI, FamilyParams::J(j)) => j * (j + 1),
            _ => unreachable!(),
        }
    };
    let mut count = 0usize;
    for family in Family::ALL {
        let params_list: Vec<FamilyParams> = if family.takes_pq() {
            (1..=8)
                .flat_map(|p| (1..=8).map(move |q| FamilyParams::PQ(p, q)))
                .collect()
        } else {
            (1..=8).map(FamilyParams::J).collect()
        };
        for params in params_list {
            let Ok(s) = lookup_space(family, params) else {
                continue;
            };
            if s.dim != dim_formula(family, params) {
                failures.push(format!("{s}: dim {} != table formula", s.dim));
            }
            match restricted_root_data(&s) {
                Ok(d) => {
                    let mult_sum: usize = d
                        .positive_roots_with_multiplicity()
                        .iter()
                        .map(|(_, m)| m)
                        .sum();
                    if s.rank + mult_sum != s.dim {
                        failures.push(format!("{s}: rank + sum m != dim"));
                    }
                }
                // a data inconsistency aborts the suite
                Err(e) => panic!("multiplicity table inconsistent: {e}"),
            }
            count += 1;
        }
    }
    report(
        8,
        &format!("rank + sum of multiplicities = Dim M on {count} table instances (p,q,j <= 8)"),
        &failures,
    );
}

#[test]
fn criterion_09_non_reduced_flags() {
    let mut failures = Vec::new();
    for family in Family::ALL {
        let params_list: Vec<FamilyParams> = if family.takes_pq() {
            (1..=8)
                .flat_map(|p| (1..=8).map(move |q| FamilyParams::PQ(p, q)))
                .collect()
        } else {
            (1..=8).map(FamilyParams::J).collect()
        };
        for params in params_list {
            let Ok(s) = lookup_space(family, params) else {
                continue;
            };
            let d = restricted_root_data(&s).unwrap();
            let expect_nonreduced = match (family, params) {
                (Family::AIII, FamilyParams::PQ(p, q)) => p != q,
                (Family::CII, FamilyParams::PQ(p, q)) => p != q,
                (Family::DIII, FamilyParams::J(j)) => j % 2 == 1,
                _ => false,
            };
            if d.reduced != !expect_nonreduced {
                failures.push(format!("{s}: reduced flag {}", d.reduced));
            }
        }
    }
    report(
        9,
        "non-reduced cases are exactly AIII p!=q, CII p!=q, DIII odd j",
        &failures,
    );
}

#[test]
fn criterion_10_transfer() {
    let mut failures = Vec::new();
    let bdi = |p, q| lookup_space(Family::BDI, FamilyParams::PQ(p, q)).unwrap();
    let ci = |j| lookup_space(Family::CI, FamilyParams::J(j)).unwrap();
    // `paper` preset: shift = (k^2 - n^2)/4 on the hyperbolic chain
    for k in 3..=12usize {
        for n in 2..k {
            let r = rho_shift(&bdi(k, 1), &bdi(n, 1), RhoConvention::Paper).unwrap();
            if r.shift != ratio((k * k - n * n) as i64, 4) {
                failures.push(format!("hyperbolic shift wrong at k={k}, n={n}"));
            }
        }
    }
    // Laplacian transfer identity on BDI(.,1) and CI chains
    for (large, small) in [
        (bdi(7, 1), bdi(4, 1)),
        (bdi(12, 1), bdi(5, 1)),
        (ci(4), ci(3)),
        (ci(5), ci(2)),
    ] {
        let sym = laplacian_symbol(&large, RhoConvention::Table).unwrap();
        let t = gamma_transfer(&sym, &large, &small, DEFAULT_ENUM_CAP).unwrap();
        let small_sym = laplacian_symbol(&small, RhoConvention::Table).unwrap();
        let shift = rho_shift(&large, &small, RhoConvention::Table).unwrap();
        let expected = small_sym.symbol.sub(&Polynomial::constant(
            small_sym.symbol.num_vars(),
            shift.shift,
        ));
        if t.symbol != expected {
            failures.push(format!("Laplacian transfer wrong on {large} -> {small}"));
        }
    }
    // homomorphism + tower composition on 100 seeded random invariant pairs
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let top = ci(5);
    let mid = ci(3);
    let bottom = ci(2);
    let wrap = |p: Polynomial| OperatorSymbol {
        space: top.to_string(),
        sigma_half_type: TypeLabel::C,
        sigma_half_rank: 5,
        symbol: p,
    };
    for i in 0..100 {
        let a = random_invariant_symbol(TypeLabel::C, 5, &mut rng).unwrap();
        let b = random_invariant_symbol(TypeLabel::C, 5, &mut rng).unwrap();
        let ta = gamma_transfer(&wrap(a.clone()), &top, &mid, DEFAULT_ENUM_CAP).unwrap();
        let tb = gamma_transfer(&wrap(b.clone()), &top, &mid, DEFAULT_ENUM_CAP).unwrap();
        let tsum = gamma_transfer(&wrap(a.add(&b)), &top, &mid, DEFAULT_ENUM_CAP).unwrap();
        let tprod = gamma_transfer(&wrap(a.mul(&b)), &top, &mid, DEFAULT_ENUM_CAP).unwrap();
        if tsum.symbol != ta.symbol.add(&tb.symbol) || tprod.symbol != ta.symbol.mul(&tb.symbol) {
            failures.push(format!("homomorphism violated on pair {i}"));
            break;
        }
        let via = gamma_transfer(&ta, &mid, &bottom, DEFAULT_ENUM_CAP).unwrap();
        let direct = gamma_transfer(&wrap(a), &top, &bottom, DEFAULT_ENUM_CAP).unwrap();
        if via.symbol != direct.symbol {
            failures.push(format!("tower composition violated on symbol {i}"));
            break;
        }
    }
    report(
        10,
        "Laplacian transfer, preset rho-shift formula, homomorphism + tower on 100 pairs",
        &failures,
    );
}

#[test]
fn criterion_11_sweep_determinism() {
    let mut failures = Vec::new();
    let opts = SweepOptions::default();
    let a = run_sweep(opts).unwrap();
    let b = run_sweep(opts).unwrap();
    if !a.pass {
        failures.push("default sweep reports failures".into());
    }
    let ja = serde_json::to_string_pretty(&a).unwrap();
    let jb = serde_json::to_string_pretty(&b).unwrap();
    if ja != jb {
        failures.push("sweep JSON differs between runs".into());
    }
    report(
        11,
        "two default sweeps produce byte-identical JSON (binary-level check in the cli crate)",
        &failures,
    );
}
