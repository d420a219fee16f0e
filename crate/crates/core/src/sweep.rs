//! The full verification matrix: every theorem, identity, and consistency
//! check at desk scale, assembled into one deterministic report.
//!
//! Identical inputs produce byte-identical JSON: sections and cases are
//! emitted in fixed order, random property checks use a fixed seed, and
//! no timing data enters the report.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::group::{
    compare_groups, generate_extended, generate_weyl, restricted_image, GroupComparison, GroupTable,
};
use crate::invariants::{
    remark_counterexample, verify_restriction_identities, verify_theorem_admext,
};
use crate::poly::Polynomial;
use crate::rat::ratio;
use crate::root_system::{RootSystem, TypeLabel};
use crate::spaces::{
    lookup_space, restricted_root_data, verify_theorem_ihia, Family, FamilyParams, SpaceDescriptor,
};
use crate::transfer::{
    gamma_transfer, laplacian_symbol, random_invariant_symbol, rho_shift, OperatorSymbol,
    RhoConvention,
};
use crate::SCHEMA_VERSION;

#[derive(Clone, Debug, Serialize)]
pub struct SweepCase {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSection {
    pub id: String,
    pub title: String,
    pub cases: Vec<SweepCase>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema: String,
    pub max_rank: usize,
    pub sections: Vec<SweepSection>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    /// Rank cap for group enumeration sweeps.
    pub max_rank: usize,
    /// Enumeration cap passed to group generation (env-overridable).
    pub enum_cap: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            max_rank: 6,
            enum_cap: crate::DEFAULT_ENUM_CAP,
        }
    }
}

fn case(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> SweepCase {
    SweepCase {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn section(id: &str, title: &str, cases: Vec<SweepCase>) -> SweepSection {
    let pass = cases.iter().all(|c| c.pass);
    SweepSection {
        id: id.to_string(),
        title: title.to_string(),
        cases,
        pass,
    }
}

/// Cache of enumerated tables keyed by (type, rank, extended).
struct Tables {
    cap: usize,
    map: BTreeMap<(TypeLabel, usize, bool), GroupTable>,
}

impl Tables {
    fn new(cap: usize) -> Self {
        Tables {
            cap,
            map: BTreeMap::new(),
        }
    }

    fn get(&mut self, label: TypeLabel, rank: usize, extended: bool) -> Result<&GroupTable> {
        if !self.map.contains_key(&(label, rank, extended)) {
            let rs = RootSystem::build_capped(label, rank, self.cap.max(crate::DEFAULT_RANK_CAP))?;
            let table = if extended {
                generate_extended(&rs, self.cap)?
            } else {
                generate_weyl(&rs, self.cap)?
            };
            self.map.insert((label, rank, extended), table);
        }
        Ok(&self.map[&(label, rank, extended)])
    }
}

fn bdi(p: usize, q: usize) -> Result<SpaceDescriptor> {
    lookup_space(Family::BDI, FamilyParams::PQ(p, q))
}

fn ci(j: usize) -> Result<SpaceDescriptor> {
    lookup_space(Family::CI, FamilyParams::J(j))
}

pub fn run_sweep(opts: SweepOptions) -> Result<SweepReport> {
    let mut tables = Tables::new(opts.enum_cap);
    let max_rank = opts.max_rank.min(opts.enum_cap);
    let mut sections = Vec::new();

    // 1: closure-enumerated group orders against the structural formulas
    {
        let mut cases = Vec::new();
        for label in TypeLabel::ALL {
            for rank in label.min_rank()..=max_rank {
                let order = tables.get(label, rank, false)?.order();
                let expected = label.weyl_order(rank);
                cases.push(case(
                    format!("|W({label}_{rank})|"),
                    order == expected,
                    format!("enumerated {order}, formula {expected}"),
                ));
            }
        }
        for rank in 2..=max_rank {
            let order = tables.get(TypeLabel::D, rank, true)?.order();
            let expected = (1 << rank) * (1..=rank).product::<usize>();
            cases.push(case(
                format!("|W~(D_{rank})|"),
                order == expected,
                format!("enumerated {order}, formula {expected}"),
            ));
        }
        sections.push(section("1-group-orders", "Group orders by closure", cases));
    }

    // 2: restricted Weyl images and stabilizer orders for A/B/C
    {
        let fact = |m: usize| (1..=m).product::<usize>();
        let mut cases = Vec::new();
        for label in [TypeLabel::A, TypeLabel::B, TypeLabel::C] {
            for k in label.min_rank() + 1..=max_rank {
                for n in label.min_rank()..k {
                    let big = tables.get(label, k, false)?.clone();
                    let img = restricted_image(&big, n)?;
                    let small = tables.get(label, n, false)?;
                    let equal = compare_groups(&img.table, small)? == GroupComparison::Equal;
                    let expected_stab = match label {
                        TypeLabel::A => fact(k - n) * fact(n + 1),
                        _ => (1 << (k - n)) * fact(k - n) * (1 << n) * fact(n),
                    };
                    let stab_ok = img.stabilizer_order == expected_stab;
                    let surj = crate::invariants::check_surjectivity(label, k, n, false)?;
                    cases.push(case(
                        format!("{label}: {k} -> {n}"),
                        equal && stab_ok && surj.pass,
                        format!(
                            "image order {} = |W({label}_{n})| {}; stabilizer {} vs formula {expected_stab}; {} witnesses",
                            img.table.order(),
                            small.order(),
                            img.stabilizer_order,
                            surj.entries.len()
                        ),
                    ));
                }
            }
        }
        sections.push(section(
            "2-admext-abc",
            "Restriction of Weyl groups, types A/B/C",
            cases,
        ));
    }

    // 3 and 4: the type-D pairs, split into the strict-containment side
    // and the extended-group side of the theorem
    {
        let mut strict_cases = Vec::new();
        let mut extended_cases = Vec::new();
        let pairs: Vec<(usize, usize)> = [(5usize, 4usize), (6, 4), (6, 5)]
            .into_iter()
            .filter(|(k, _)| *k <= max_rank)
            .collect();
        if pairs.is_empty() {
            strict_cases.push(case("skipped", true, "no D pairs within max-rank"));
            extended_cases.push(case("skipped", true, "no D pairs within max-rank"));
        }
        for (k, n) in pairs {
            let report = verify_theorem_admext(TypeLabel::D, k, n, opts.enum_cap)?;
            for claim in &report.claims {
                let target = if claim.id.starts_with('2') {
                    &mut strict_cases
                } else if claim.id.starts_with('3') || claim.id.starts_with('4') {
                    &mut extended_cases
                } else {
                    continue; // identities are section 5's job
                };
                target.push(case(
                    format!("D {k} -> {n}: {}", claim.id),
                    claim.pass,
                    claim.detail.clone(),
                ));
            }
        }
        sections.push(section(
            "3-admext-d-strict",
            "Type D: strict containment and Pfaffian obstruction",
            strict_cases,
        ));
        sections.push(section(
            "4-admext-d-extended",
            "Type D: extended groups and extended invariants",
            extended_cases,
        ));
    }

    // 5: the displayed restriction identities, exact polynomial equality
    {
        let poly_rank = max_rank + 1;
        let mut cases = Vec::new();
        for label in TypeLabel::ALL {
            for k in label.min_propagation_rank()..=poly_rank {
                for n in label.min_propagation_rank()..=k {
                    let r = verify_restriction_identities(label, k, n)?;
                    cases.push(case(
                        format!("{label}: p_{{{k},nu}}| vs rank {n}"),
                        r.pass,
                        format!("{} identities", r.items.len()),
                    ));
                }
            }
        }
        sections.push(section(
            "5-restriction-identities",
            "Restriction identities of invariant generators",
            cases,
        ));
    }

    // 6: the counterexample mechanism when propagation is violated
    {
        let mut cases = Vec::new();
        for (label, k, i) in [(TypeLabel::B, 4, 2), (TypeLabel::C, 5, 3)] {
            let r = remark_counterexample(label, k, i, opts.enum_cap)?;
            cases.push(case(
                format!("{label}_{k} remove alpha_{i}"),
                r.pass,
                format!(
                    "factors {:?}; -id in image: {}; -id absent from W(A_l): {}; invariants even: {}",
                    r.factors,
                    r.minus_id_in_restricted_image,
                    r.minus_id_absent_from_small_weyl,
                    r.invariants_even_on_factor.iter().all(|(_, e)| *e)
                ),
            ));
        }
        sections.push(section(
            "6-remark-counterexample",
            "Removing inner simple roots breaks restriction",
            cases,
        ));
    }

    // 7: restriction from the full Cartan (split and complex cases)
    {
        let mut cases = Vec::new();
        let split: Vec<SpaceDescriptor> = vec![
            lookup_space(Family::AI, FamilyParams::J(4))?,
            ci(3)?,
            bdi(4, 4)?,
            bdi(5, 4)?,
        ];
        for s in split {
            let r = verify_theorem_ihia(&s, opts.enum_cap)?;
            cases.push(case(format!("{s}"), r.pass, r.case));
        }
        let complex: Vec<SpaceDescriptor> = [
            (Family::ComplexA, vec![2usize, 3, 4]),
            (Family::ComplexB, vec![2, 3, 4]),
            (Family::ComplexC, vec![3, 4]),
            (Family::ComplexD, vec![4]),
        ]
        .into_iter()
        .flat_map(|(f, js)| js.into_iter().map(move |j| (f, j)))
        .map(|(f, j)| lookup_space(f, FamilyParams::J(j)))
        .collect::<Result<_>>()?;
        for s in complex {
            let r = verify_theorem_ihia(&s, opts.enum_cap)?;
            cases.push(case(format!("{s}"), r.pass, r.case));
        }
        sections.push(section(
            "7-ihia",
            "Restriction from the full Cartan to a",
            cases,
        ));
    }

    // 8: the multiplicity table against the Dim column; a failure here is
    // corrupt shipped data and aborts the whole sweep via the error path
    {
        let mut cases = Vec::new();
        for family in Family::ALL {
            let mut count = 0usize;
            if family.takes_pq() {
                for p in 1..=8 {
                    for q in 1..=8 {
                        if let Ok(s) = lookup_space(family, FamilyParams::PQ(p, q)) {
                            restricted_root_data(&s)?;
                            count += 1;
                        }
                    }
                }
            } else {
                for j in 1..=8 {
                    if let Ok(s) = lookup_space(family, FamilyParams::J(j)) {
                        restricted_root_data(&s)?;
                        count += 1;
                    }
                }
            }
            cases.push(case(
                format!("{family}"),
                true,
                format!("rank + sum m = dim on {count} instances"),
            ));
        }
        sections.push(section(
            "8-table-consistency",
            "Multiplicity table vs the Dim column",
            cases,
        ));
    }

    // 9: the non-reduced list is exactly AIII p!=q, CII p!=q, DIII odd
    {
        let mut cases = Vec::new();
        let mut all_ok = true;
        let mut scanned = 0usize;
        for family in Family::ALL {
            if family.takes_pq() {
                for p in 1..=8 {
                    for q in 1..=8 {
                        if let Ok(s) = lookup_space(family, FamilyParams::PQ(p, q)) {
                            let d = restricted_root_data(&s)?;
                            let expect_nonreduced =
                                matches!(family, Family::AIII | Family::CII) && p != q;
                            all_ok &= d.reduced == !expect_nonreduced;
                            scanned += 1;
                        }
                    }
                }
            } else {
                for j in 1..=8 {
                    if let Ok(s) = lookup_space(family, FamilyParams::J(j)) {
                        let d = restricted_root_data(&s)?;
                        let expect_nonreduced = family == Family::DIII && j % 2 == 1;
                        all_ok &= d.reduced == !expect_nonreduced;
                        scanned += 1;
                    }
                }
            }
        }
        cases.push(case(
            "non-reduced flags",
            all_ok,
            format!("{scanned} instances match the three-case list"),
        ));
        sections.push(section(
            "9-non-reduced-flags",
            "Non-reduced restricted root systems",
            cases,
        ));
    }

    // 10: symbol transfer
    {
        let mut cases = Vec::new();
        // the hyperbolic chain under the `paper` preset
        let mut shift_ok = true;
        for k in 3..=12usize {
            for n in 2..k {
                let r = rho_shift(&bdi(k, 1)?, &bdi(n, 1)?, RhoConvention::Paper)?;
                shift_ok &= r.shift == ratio((k * k - n * n) as i64, 4);
            }
        }
        cases.push(case(
            "hyperbolic rho-shift (`paper` preset)",
            shift_ok,
            "shift = (k^2 - n^2)/4 for 2 <= n < k <= 12",
        ));
        // Laplacian transfer identity on BDI(.,1) and CI chains
        let mut lap_ok = true;
        let chain_pairs = [
            (bdi(7, 1)?, bdi(4, 1)?),
            (bdi(11, 1)?, bdi(6, 1)?),
            (ci(4)?, ci(2)?),
            (ci(5)?, ci(3)?),
        ];
        for (large, small) in &chain_pairs {
            let sym = laplacian_symbol(large, RhoConvention::Table)?;
            let t = gamma_transfer(&sym, large, small, opts.enum_cap)?;
            let small_sym = laplacian_symbol(small, RhoConvention::Table)?;
            let shift = rho_shift(large, small, RhoConvention::Table)?;
            let expected = small_sym.symbol.sub(&Polynomial::constant(
                small_sym.symbol.num_vars(),
                shift.shift,
            ));
            lap_ok &= t.symbol == expected;
        }
        cases.push(case(
            "Laplacian transfer",
            lap_ok,
            "transfer(Delta_k) = Delta_n - (|rho_k|^2 - |rho_n|^2) on BDI(.,1) and CI chains",
        ));
        // homomorphism and tower composition on seeded random symbols
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let top = ci(5)?;
        let mid = ci(3)?;
        let bottom = ci(2)?;
        let wrap = |p: Polynomial| OperatorSymbol {
            space: top.to_string(),
            sigma_half_type: TypeLabel::C,
            sigma_half_rank: 5,
            symbol: p,
        };
        let mut homo_ok = true;
        let mut tower_ok = true;
        for _ in 0..100 {
            let a = random_invariant_symbol(TypeLabel::C, 5, &mut rng)?;
            let b = random_invariant_symbol(TypeLabel::C, 5, &mut rng)?;
            let ta = gamma_transfer(&wrap(a.clone()), &top, &mid, opts.enum_cap)?;
            let tb = gamma_transfer(&wrap(b.clone()), &top, &mid, opts.enum_cap)?;
            let tsum = gamma_transfer(&wrap(a.add(&b)), &top, &mid, opts.enum_cap)?;
            let tprod = gamma_transfer(&wrap(a.mul(&b)), &top, &mid, opts.enum_cap)?;
            homo_ok &= tsum.symbol == ta.symbol.add(&tb.symbol)
                && tprod.symbol == ta.symbol.mul(&tb.symbol);
            let via = gamma_transfer(&ta, &mid, &bottom, opts.enum_cap)?;
            let direct = gamma_transfer(&wrap(a), &top, &bottom, opts.enum_cap)?;
            tower_ok &= via.symbol == direct.symbol;
        }
        cases.push(case(
            "transfer homomorphism",
            homo_ok,
            "additive and multiplicative on 100 random invariant pairs",
        ));
        cases.push(case(
            "transfer tower composition",
            tower_ok,
            "k -> m -> n equals k -> n on 100 random invariant symbols",
        ));
        sections.push(section("10-transfer", "Operator symbol transfer", cases));
    }

    let pass = sections.iter().all(|s| s.pass);
    Ok(SweepReport {
        schema: SCHEMA_VERSION.to_string(),
        max_rank,
        sections,
        pass,
    })
}
