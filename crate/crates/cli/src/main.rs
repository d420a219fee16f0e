//! Batch command-line front end: construction, verification, and sweeps.
//!
//! Exit codes: 0 when every verified claim passes, 1 when a claim checks
//! out false, 2 on usage or precondition errors.

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use weyl_restrict::invariants::{
    char_poly_generators, check_surjectivity, remark_counterexample, verify_restriction_identities,
    verify_theorem_admext,
};
use weyl_restrict::spaces::{
    check_propagation, lookup_space, restricted_root_data, verify_theorem_admext_gk,
    verify_theorem_ihia, Family, FamilyParams, SpaceDescriptor,
};
use weyl_restrict::sweep::{run_sweep, SweepOptions, SweepReport};
use weyl_restrict::transfer::{gamma_transfer, laplacian_symbol, rho_shift, RhoConvention};
use weyl_restrict::{
    enumeration_cap_from_env, generate_extended, generate_weyl, RootSystem, TypeLabel,
};

#[derive(Parser)]
#[command(
    name = "weyl-restrict",
    about = "Classical root systems, Weyl group restriction, and invariant polynomial transfer in exact arithmetic",
    version
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TypeRank {
    /// Root system type: A, B, C, or D
    #[arg(long = "type")]
    type_label: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Args)]
struct TypePair {
    /// Root system type: A, B, C, or D
    #[arg(long = "type")]
    type_label: String,
    /// Larger rank
    #[arg(long)]
    k: usize,
    /// Smaller rank
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct FamilyArgs {
    /// Table family: A-complex, B-complex, D-complex, C-complex, AIII, AI, AII, BDI, DIII, CII, CI
    #[arg(long)]
    family: String,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a classical root system
    Roots {
        #[command(flatten)]
        tr: TypeRank,
        /// List only the positive roots
        #[arg(long)]
        positive: bool,
    },
    /// Enumerate a Weyl group or its extension by closure
    Weyl {
        #[command(flatten)]
        tr: TypeRank,
        /// Adjoin the diagram involution (type D)
        #[arg(long)]
        extended: bool,
        /// Refuse to serialize element lists above this order
        #[arg(long, default_value_t = 10_000)]
        max_order: usize,
    },
    /// Invariant generators from the characteristic polynomial
    Invariants {
        #[command(flatten)]
        tr: TypeRank,
    },
    /// Check the restriction identities between two ranks
    Restrict {
        #[command(flatten)]
        tp: TypePair,
    },
    /// Verify the restriction theorem for one (type, k, n)
    VerifyAdmext {
        #[command(flatten)]
        tp: TypePair,
    },
    /// Surjectivity witnesses or the Pfaffian obstruction
    Surjectivity {
        #[command(flatten)]
        tp: TypePair,
        /// Target the extended-invariant algebra
        #[arg(long)]
        extended: bool,
    },
    /// The counterexample from removing an inner simple root
    Remark {
        #[command(flatten)]
        tr: TypeRank,
        /// Index of the removed simple root (1-based)
        #[arg(long)]
        remove: usize,
    },
    /// Verify restriction from the full Cartan for one space
    VerifyIhia {
        #[command(flatten)]
        fa: FamilyArgs,
    },
    /// Verify the symmetric-space restriction theorem for a propagation pair
    #[command(name = "verify-g-k")]
    VerifyGK {
        /// Larger space, e.g. BDI:6,3 or CI:4
        #[arg(long)]
        from: String,
        /// Smaller space
        #[arg(long)]
        to: String,
    },
    /// Symmetric-space table lookup with restricted-root data
    Spaces {
        #[command(flatten)]
        fa: FamilyArgs,
    },
    /// Check whether one space propagates another
    Propagate {
        /// Larger space
        #[arg(long)]
        from: String,
        /// Smaller space
        #[arg(long)]
        to: String,
    },
    /// Transfer an operator symbol along a propagation
    Transfer {
        /// Larger space, e.g. BDI:7,1
        #[arg(long)]
        from: String,
        /// Smaller space, e.g. BDI:4,1
        #[arg(long)]
        to: String,
        /// Operator whose symbol to transfer
        #[arg(long, default_value = "laplacian")]
        op: String,
        /// rho normalization: table (multiplicity-derived) or paper
        #[arg(long, default_value = "table")]
        rho_convention: String,
    },
    /// Run the full verification matrix and print a summary
    Sweep {
        /// Rank cap for the group-enumeration sweeps
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
    },
}

fn parse_type(s: &str) -> Result<TypeLabel, weyl_restrict::Error> {
    s.parse()
}

fn family_params(fa: &FamilyArgs) -> Result<(Family, FamilyParams), String> {
    let family: Family = fa.family.parse().map_err(|e| format!("{e}"))?;
    let params = if family.takes_pq() {
        match (fa.p, fa.q) {
            (Some(p), Some(q)) => FamilyParams::PQ(p, q),
            _ => return Err(format!("{family} needs --p and --q")),
        }
    } else {
        match fa.j {
            Some(j) => FamilyParams::J(j),
            None => return Err(format!("{family} needs --j")),
        }
    };
    Ok((family, params))
}

/// Compact space spec `FAMILY:params`, e.g. `BDI:7,1` or `CI:4`.
fn parse_space_spec(s: &str) -> Result<SpaceDescriptor, String> {
    let (family_str, params_str) = s
        .split_once(':')
        .ok_or_else(|| format!("expected FAMILY:params, got `{s}`"))?;
    let family: Family = family_str.parse().map_err(|e| format!("{e}"))?;
    let nums: Vec<usize> = params_str
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad parameters in `{s}`"))?;
    let params = match (family.takes_pq(), nums.as_slice()) {
        (true, [p, q]) => FamilyParams::PQ(*p, *q),
        (false, [j]) => FamilyParams::J(*j),
        _ => {
            return Err(format!(
                "{family} takes {} parameters",
                if family.takes_pq() { "two" } else { "one" }
            ))
        }
    };
    lookup_space(family, params).map_err(|e| format!("{e}"))
}

struct Outcome {
    value: serde_json::Value,
    /// None when nothing is verified (pure construction/lookup).
    pass: Option<bool>,
    text: String,
}

fn run(cli: &Cli, cap: usize) -> Result<Outcome, String> {
    let emap = |e: weyl_restrict::Error| format!("{e}");
    match &cli.command {
        Command::Roots { tr, positive } => {
            let label = parse_type(&tr.type_label).map_err(emap)?;
            let rs = RootSystem::build(label, tr.rank).map_err(emap)?;
            let text = if *positive {
                let pos = rs.positive_roots();
                format!(
                    "{label}_{} positive roots ({}):\n{}",
                    tr.rank,
                    pos.len(),
                    pos.iter()
                        .map(|r| format!("  {}", weyl_restrict::rat::vec_display(r)))
                        .collect::<Vec<_>>()
                        .join("\n")
                )
            } else {
                format!(
                    "{label}_{}: {} roots in Q^{}, {} simple, degenerate: {}",
                    tr.rank,
                    rs.roots.len(),
                    rs.ambient_dim,
                    rs.simple_roots.len(),
                    rs.degenerate
                )
            };
            let value = if *positive {
                json!({
                    "schema": weyl_restrict::SCHEMA_VERSION,
                    "type": rs.type_label,
                    "rank": rs.rank,
                    "positive_roots": rs.positive_roots().iter().map(|r| weyl_restrict::rat::vec_value(r)).collect::<Vec<_>>(),
                })
            } else {
                let mut v = serde_json::to_value(&rs).map_err(|e| e.to_string())?;
                v.as_object_mut()
                    .unwrap()
                    .insert("schema".into(), json!(weyl_restrict::SCHEMA_VERSION));
                v
            };
            Ok(Outcome {
                value,
                pass: None,
                text,
            })
        }
        Command::Weyl {
            tr,
            extended,
            max_order,
        } => {
            let label = parse_type(&tr.type_label).map_err(emap)?;
            let rs = RootSystem::build(label, tr.rank).map_err(emap)?;
            let table = if *extended {
                generate_extended(&rs, cap).map_err(emap)?
            } else {
                generate_weyl(&rs, cap).map_err(emap)?
            };
            if cli.json && table.order() > *max_order {
                return Err(format!(
                    "table order {} exceeds --max-order {}; raise the guard to serialize",
                    table.order(),
                    max_order
                ));
            }
            let text = format!(
                "{}({label}_{}): order {}, kind {:?}",
                if *extended { "W~" } else { "W" },
                tr.rank,
                table.order(),
                table.kind
            );
            let mut v = serde_json::to_value(&table).map_err(|e| e.to_string())?;
            v.as_object_mut()
                .unwrap()
                .insert("schema".into(), json!(weyl_restrict::SCHEMA_VERSION));
            Ok(Outcome {
                value: v,
                pass: None,
                text,
            })
        }
        Command::Invariants { tr } => {
            let label = parse_type(&tr.type_label).map_err(emap)?;
            let g = char_poly_generators(label, tr.rank).map_err(emap)?;
            let text = g
                .generators
                .iter()
                .enumerate()
                .map(|(i, p)| format!("p_{{{},{}}} = {p}", tr.rank, i + 1))
                .collect::<Vec<_>>()
                .join("\n");
            let value = json!({
                "schema": weyl_restrict::SCHEMA_VERSION,
                "type": g.type_label,
                "rank": g.rank,
                "degrees": g.expected_degrees(),
                "generators": g.generators,
                "pfaffian_square_sign": g.pfaffian_square_sign,
            });
            Ok(Outcome {
                value,
                pass: None,
                text,
            })
        }
        Command::Restrict { tp } => {
            let label = parse_type(&tp.type_label).map_err(emap)?;
            let r = verify_restriction_identities(label, tp.k, tp.n).map_err(emap)?;
            let text = r
                .items
                .iter()
                .map(|i| {
                    format!(
                        "p_{{{},{}}}|: {} [{}]",
                        tp.k,
                        i.nu,
                        i.identity,
                        if i.pass { "ok" } else { "FAIL" }
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome {
                pass: Some(r.pass),
                value: serde_json::to_value(&r).map_err(|e| e.to_string())?,
                text,
            })
        }
        Command::VerifyAdmext { tp } => {
            let label = parse_type(&tp.type_label).map_err(emap)?;
            let r = verify_theorem_admext(label, tp.k, tp.n, cap).map_err(emap)?;
            let text = claims_text(
                &format!("AdmExt {label} {} -> {}", tp.k, tp.n),
                &r.claims,
                r.pass,
            );
            Ok(Outcome {
                pass: Some(r.pass),
                value: serde_json::to_value(&r).map_err(|e| e.to_string())?,
                text,
            })
        }
        Command::Surjectivity { tp, extended } => {
            let label = parse_type(&tp.type_label).map_err(emap)?;
            let r = check_surjectivity(label, tp.k, tp.n, *extended).map_err(emap)?;
            let text = format!(
                "surjectivity {label} {} -> {} (extended: {extended}): {}",
                tp.k,
                tp.n,
                if r.pass { "pass" } else { "FAIL" }
            );
            Ok(Outcome {
                pass: Some(r.pass),
                value: serde_json::to_value(&r).map_err(|e| e.to_string())?,
                text,
            })
        }
        Command::Remark { tr, remove } => {
            let label = parse_type(&tr.type_label).map_err(emap)?;
            let r = remark_counterexample(label, tr.rank, *remove, cap).map_err(emap)?;
            let text = format!(
                "{label}_{} minus alpha_{}: factors {:?}; -id in restricted image: {}; -id in W(A_l): {}; invariants even on factor: {} => {}",
                tr.rank,
                remove,
                r.factors,
                r.minus_id_in_restricted_image,
                !r.minus_id_absent_from_small_weyl,
                r.invariants_even_on_factor.iter().all(|(_, e)| *e),
                if r.pass { "pass" } else { "FAIL" }
            );
            Ok(Outcome {
                pass: Some(r.pass),
                value: serde_json::to_value(&r).map_err(|e| e.to_string())?,
                text,
            })
        }
        Command::VerifyIhia { fa } => {
            let (family, params) = family_params(fa)?;
            let s = lookup_space(family, params).map_err(emap)?;
            let r = verify_theorem_ihia(&s, cap).map_err(emap)?;
            let text = claims_text(&format!("IhIa {s} [{}]", r.case), &r.claims, r.pass);
            Ok(Outcome {
                pass: Some(r.pass),
                value: serde_json::to_value(&r).map_err(|e| e.to_string())?,
                text,
            })
        }
        Command::VerifyGK { from, to } => {
            let large = parse_space_spec(from)?;
            let small = parse_space_spec(to)?;
            let r = verify_theorem_admext_gk(&large, &small, cap).map_err(emap)?;
            let text = claims_text(
                &format!("AdmExtG/K {large} propagates {small} ({})", r.sigma_half),
                &r.claims,
                r.pass,
            );
            Ok(Outcome {
                pass: Some(r.pass),
                value: serde_json::to_value(&r).map_err(|e| e.to_string())?,
                text,
            })
        }
        Command::Spaces { fa } => {
            let (family, params) = family_params(fa)?;
            let s = lookup_space(family, params).map_err(emap)?;
            let d = restricted_root_data(&s).map_err(emap)?;
            let text = format!(
                "{s}: G = {} (compact {}), K = {}, rank {}, dim {}\nSigma_1/2 = {}_{} ({}), rho = {}",
                s.noncompact,
                s.compact,
                s.k_subgroup,
                s.rank,
                s.dim,
                d.sigma_half_type,
                d.sigma_half_rank,
                if d.reduced { "reduced" } else { "non-reduced" },
                weyl_restrict::rat::vec_display(&d.rho)
            );
            let mut v = serde_json::to_value(&s).map_err(|e| e.to_string())?;
            let data = serde_json::to_value(&d).map_err(|e| e.to_string())?;
            let obj = v.as_object_mut().unwrap();
            obj.insert("schema".into(), json!(weyl_restrict::SCHEMA_VERSION));
            for (key, val) in data.as_object().unwrap() {
                obj.insert(key.clone(), val.clone());
            }
            Ok(Outcome {
                value: v,
                pass: None,
                text,
            })
        }
        Command::Propagate { from, to } => {
            let large = parse_space_spec(from)?;
            let small = parse_space_spec(to)?;
            let r = check_propagation(&large, &small).map_err(emap)?;
            let text = format!(
                "{} {} {} ({} into {}, rule: {})",
                r.large,
                if r.propagates {
                    "propagates"
                } else {
                    "does not propagate"
                },
                r.small,
                r.sigma_small,
                r.sigma_large,
                r.rule
            );
            Ok(Outcome {
                pass: Some(r.propagates),
                value: serde_json::to_value(&r).map_err(|e| e.to_string())?,
                text,
            })
        }
        Command::Transfer {
            from,
            to,
            op,
            rho_convention,
        } => {
            if op != "laplacian" {
                return Err(format!("unknown operator `{op}` (supported: laplacian)"));
            }
            let convention: RhoConvention = rho_convention.parse().map_err(emap)?;
            let large = parse_space_spec(from)?;
            let small = parse_space_spec(to)?;
            let sym = laplacian_symbol(&large, convention).map_err(emap)?;
            let transferred = gamma_transfer(&sym, &large, &small, cap).map_err(emap)?;
            let shift = rho_shift(&large, &small, convention).map_err(emap)?;
            let text = format!(
                "Gamma transfer {large} -> {small} [{convention}]\n  shift |rho_k|^2 - |rho_n|^2 = {}\n  symbol_n = {}",
                shift.shift, transferred.symbol
            );
            let value = json!({
                "schema": weyl_restrict::SCHEMA_VERSION,
                "from": shift.from,
                "to": shift.to,
                "convention": convention,
                "shift": weyl_restrict::rat::rat_value(&shift.shift),
                "table_shift": weyl_restrict::rat::rat_value(&shift.table_shift),
                "paper_shift": shift.paper_shift.as_ref().map(weyl_restrict::rat::rat_value),
                "symbol_n": transferred,
            });
            Ok(Outcome {
                value,
                pass: None,
                text,
            })
        }
        Command::Sweep { max_rank } => {
            let report = run_sweep(SweepOptions {
                max_rank: *max_rank,
                enum_cap: cap,
            })
            .map_err(emap)?;
            let text = sweep_text(&report);
            Ok(Outcome {
                pass: Some(report.pass),
                value: serde_json::to_value(&report).map_err(|e| e.to_string())?,
                text,
            })
        }
    }
}

fn claims_text(header: &str, claims: &[weyl_restrict::invariants::Claim], pass: bool) -> String {
    let mut out = vec![format!(
        "{header}: {}",
        if pass { "all claims pass" } else { "FAILURES" }
    )];
    for c in claims {
        out.push(format!(
            "  [{}] {}: {}",
            if c.pass { "ok" } else { "FAIL" },
            c.id,
            c.detail
        ));
    }
    out.join("\n")
}

fn sweep_text(report: &SweepReport) -> String {
    let mut out = vec![format!(
        "verification sweep (max rank {}): {}",
        report.max_rank,
        if report.pass { "ALL PASS" } else { "FAILURES" }
    )];
    for s in &report.sections {
        let passed = s.cases.iter().filter(|c| c.pass).count();
        out.push(format!(
            "  [{}] {:<26} {passed}/{} {}",
            if s.pass { "ok" } else { "FAIL" },
            s.id,
            s.cases.len(),
            s.title
        ));
        for c in s.cases.iter().filter(|c| !c.pass) {
            out.push(format!("      FAIL {}: {}", c.name, c.detail));
        }
    }
    out.join("\n")
}

fn main() {
    let cli = Cli::parse();
    let cap = enumeration_cap_from_env();
    match run(&cli, cap) {
        Ok(outcome) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.value).expect("report serialization")
                );
            } else {
                println!("{}", outcome.text);
            }
            std::process::exit(match outcome.pass {
                Some(false) => 1,
                _ => 0,
            });
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}
