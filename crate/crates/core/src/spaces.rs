//! The classification table of irreducible Riemannian symmetric spaces
//! with classical G, restricted-root data (type, multiplicities, rho),
//! propagation checks, and the in-scope symmetric-space theorems.
//!
//! The multiplicity table is shipped data from the standard classification;
//! every entry is validated at load time against the master consistency
//! check `rank + sum of multiplicities = dim M` from the table's Dim column.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::{generate_extended, restricted_image, GroupComparison};
use crate::invariants::{char_poly_generators, Claim};
use crate::poly::{is_invariant, Polynomial};
use crate::rat::{dot, rat, unit_vec, vec_value, Rat, RatVec};
use crate::root_system::{RootSystem, TypeLabel};
use crate::SCHEMA_VERSION;

/// The 11 rows of the classification table ("G classical, K connected").
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Family {
    ComplexA,
    ComplexB,
    ComplexD,
    ComplexC,
    AIII,
    AI,
    AII,
    BDI,
    DIII,
    CII,
    CI,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::ComplexA,
        Family::ComplexB,
        Family::ComplexD,
        Family::ComplexC,
        Family::AIII,
        Family::AI,
        Family::AII,
        Family::BDI,
        Family::DIII,
        Family::CII,
        Family::CI,
    ];

    pub fn takes_pq(self) -> bool {
        matches!(self, Family::AIII | Family::BDI | Family::CII)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::ComplexA => "A-complex",
            Family::ComplexB => "B-complex",
            Family::ComplexD => "D-complex",
            Family::ComplexC => "C-complex",
            Family::AIII => "AIII",
            Family::AI => "AI",
            Family::AII => "AII",
            Family::BDI => "BDI",
            Family::DIII => "DIII",
            Family::CII => "CII",
            Family::CI => "CI",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A-complex" | "a-complex" => Ok(Family::ComplexA),
            "B-complex" | "b-complex" => Ok(Family::ComplexB),
            "D-complex" | "d-complex" => Ok(Family::ComplexD),
            "C-complex" | "c-complex" => Ok(Family::ComplexC),
            "AIII" | "aiii" => Ok(Family::AIII),
            "AI" | "ai" => Ok(Family::AI),
            "AII" | "aii" => Ok(Family::AII),
            "BDI" | "bdi" => Ok(Family::BDI),
            "DIII" | "diii" => Ok(Family::DIII),
            "CII" | "cii" => Ok(Family::CII),
            "CI" | "ci" => Ok(Family::CI),
            other => Err(Error::InvalidParams(format!(
                "unknown family `{other}` (expected A-complex, B-complex, D-complex, C-complex, AIII, AI, AII, BDI, DIII, CII, CI)"
            ))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyParams {
    J(usize),
    PQ(usize, usize),
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyParams::J(j) => write!(f, "j={j}"),
            FamilyParams::PQ(p, q) => write!(f, "p={p},q={q}"),
        }
    }
}

/// One row of the table instantiated at concrete parameters.
#[derive(Clone, Debug)]
pub struct SpaceDescriptor {
    pub family: Family,
    pub params: FamilyParams,
    pub noncompact: String,
    pub compact: String,
    pub k_subgroup: String,
    pub rank: usize,
    pub dim: usize,
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.params)
    }
}

pub fn lookup_space(family: Family, params: FamilyParams) -> Result<SpaceDescriptor> {
    let bad = |msg: &str| Error::InvalidParams(format!("{family}: {msg}"));
    let (rank, dim, noncompact, compact, k_subgroup) = match (family, params) {
        (Family::ComplexA, FamilyParams::J(j)) => {
            if j < 2 {
                return Err(bad("needs j >= 2"));
            }
            (
                j - 1,
                j * j - 1,
                format!("SL({j},C)"),
                format!("SU({j}) x SU({j})"),
                format!("diag SU({j})"),
            )
        }
        (Family::ComplexB, FamilyParams::J(j)) => {
            if j < 1 {
                return Err(bad("needs j >= 1"));
            }
            (
                j,
                2 * j * j + j,
                format!("SO({},C)", 2 * j + 1),
                format!("SO({0}) x SO({0})", 2 * j + 1),
                format!("diag SO({})", 2 * j + 1),
            )
        }
        (Family::ComplexD, FamilyParams::J(j)) => {
            if j < 2 {
                return Err(bad("needs j >= 2"));
            }
            (
                j,
                2 * j * j - j,
                format!("SO({},C)", 2 * j),
                format!("SO({0}) x SO({0})", 2 * j),
                format!("diag SO({})", 2 * j),
            )
        }
        (Family::ComplexC, FamilyParams::J(j)) => {
            if j < 1 {
                return Err(bad("needs j >= 1"));
            }
            (
                j,
                2 * j * j + j,
                format!("Sp({j},C)"),
                format!("Sp({j}) x Sp({j})"),
                format!("diag Sp({j})"),
            )
        }
        (Family::AIII, FamilyParams::PQ(p, q)) => {
            if p < 1 || q < 1 {
                return Err(bad("needs p, q >= 1"));
            }
            (
                p.min(q),
                2 * p * q,
                format!("SU({p},{q})"),
                format!("SU({})", p + q),
                format!("S(U({p}) x U({q}))"),
            )
        }
        (Family::AI, FamilyParams::J(j)) => {
            if j < 2 {
                return Err(bad("needs j >= 2"));
            }
            (
                j - 1,
                (j - 1) * (j + 2) / 2,
                format!("SL({j},R)"),
                format!("SU({j})"),
                format!("SO({j})"),
            )
        }
        (Family::AII, FamilyParams::J(j)) => {
            if j < 2 {
                return Err(bad("needs j >= 2"));
            }
            (
                j - 1,
                2 * j * j - j - 1,
                format!("SU*({}) = SL({j},H)", 2 * j),
                format!("SU({})", 2 * j),
                format!("Sp({j})"),
            )
        }
        (Family::BDI, FamilyParams::PQ(p, q)) => {
            if p < 1 || q < 1 || p + q < 3 {
                return Err(bad("needs p, q >= 1 and p + q >= 3"));
            }
            (
                p.min(q),
                p * q,
                format!("SO_o({p},{q})"),
                format!("SO({})", p + q),
                format!("SO({p}) x SO({q})"),
            )
        }
        (Family::DIII, FamilyParams::J(j)) => {
            if j < 2 {
                return Err(bad("needs j >= 2"));
            }
            (
                j / 2,
                j * (j - 1),
                format!("SO*({})", 2 * j),
                format!("SO({})", 2 * j),
                format!("U({j})"),
            )
        }
        (Family::CII, FamilyParams::PQ(p, q)) => {
            if p < 1 || q < 1 {
                return Err(bad("needs p, q >= 1"));
            }
            (
                p.min(q),
                4 * p * q,
                format!("Sp({p},{q})"),
                format!("Sp({})", p + q),
                format!("Sp({p}) x Sp({q})"),
            )
        }
        (Family::CI, FamilyParams::J(j)) => {
            if j < 1 {
                return Err(bad("needs j >= 1"));
            }
            (
                j,
                j * (j + 1),
                format!("Sp({j},R)"),
                format!("Sp({j})"),
                format!("U({j})"),
            )
        }
        (f, p) => {
            return Err(Error::InvalidParams(format!(
                "{f} takes {} parameters, got {p}",
                if f.takes_pq() { "(p, q)" } else { "(j)" }
            )))
        }
    };
    Ok(SpaceDescriptor {
        family,
        params,
        noncompact,
        compact,
        k_subgroup,
        rank,
        dim,
    })
}

/// Shapes of positive restricted roots.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootShape {
    /// `f_i - f_j` (and `f_i + f_j` outside type A).
    Pair,
    /// `f_i`.
    Single,
    /// `2 f_i`.
    Double,
}

/// Restricted-root data of a symmetric space: the type and rank of
/// `Sigma_{1/2}`, whether the full system is reduced, multiplicities per
/// root shape, and `rho = (1/2) sum m_alpha alpha` over the positive
/// system of the full Sigma.
#[derive(Clone, Debug)]
pub struct RestrictedRootData {
    pub sigma_half_type: TypeLabel,
    pub sigma_half_rank: usize,
    pub reduced: bool,
    pub multiplicities: BTreeMap<RootShape, usize>,
    pub rho: RatVec,
}

impl RestrictedRootData {
    pub fn ambient_dim(&self) -> usize {
        self.sigma_half_type.ambient_dim(self.sigma_half_rank)
    }

    /// `|rho|^2` under the standard inner product on the f-coordinates.
    pub fn rho_norm_sq(&self) -> Rat {
        dot(&self.rho, &self.rho)
    }

    /// Positive roots of the full restricted system Sigma (including the
    /// `2 f_i` entries of non-reduced cases) with their multiplicities.
    pub fn positive_roots_with_multiplicity(&self) -> Vec<(RatVec, usize)> {
        let r = self.sigma_half_rank;
        let s = self.ambient_dim();
        let mut out = Vec::new();
        if let Some(&m) = self.multiplicities.get(&RootShape::Pair) {
            match self.sigma_half_type {
                TypeLabel::A => {
                    for i in 1..s {
                        for j in 0..i {
                            let mut v = unit_vec(s, i);
                            v[j] = rat(-1);
                            out.push((v, m));
                        }
                    }
                }
                _ => {
                    for i in 1..r {
                        for j in 0..i {
                            let mut v = unit_vec(s, i);
                            v[j] = rat(-1);
                            out.push((v, m));
                            let mut w = unit_vec(s, i);
                            w[j] = rat(1);
                            out.push((w, m));
                        }
                    }
                }
            }
        }
        if let Some(&m) = self.multiplicities.get(&RootShape::Single) {
            for i in 0..r {
                out.push((unit_vec(s, i), m));
            }
        }
        if let Some(&m) = self.multiplicities.get(&RootShape::Double) {
            for i in 0..r {
                let mut v = unit_vec(s, i);
                v[i] = rat(2);
                out.push((v, m));
            }
        }
        out
    }
}

/// Restricted-root data per family, from the standard classification.
/// The master consistency check `rank + sum m_alpha = dim` runs on every
/// call; a failing entry is a data bug and errors out.
pub fn restricted_root_data(s: &SpaceDescriptor) -> Result<RestrictedRootData> {
    let (sigma_type, r, reduced, mults): (TypeLabel, usize, bool, Vec<(RootShape, usize)>) =
        match (s.family, s.params) {
            (Family::ComplexA, FamilyParams::J(j)) => {
                (TypeLabel::A, j - 1, true, vec![(RootShape::Pair, 2)])
            }
            (Family::ComplexB, FamilyParams::J(j)) => (
                TypeLabel::B,
                j,
                true,
                vec![(RootShape::Pair, 2), (RootShape::Single, 2)],
            ),
            (Family::ComplexD, FamilyParams::J(j)) => {
                (TypeLabel::D, j, true, vec![(RootShape::Pair, 2)])
            }
            (Family::ComplexC, FamilyParams::J(j)) => (
                TypeLabel::C,
                j,
                true,
                vec![(RootShape::Pair, 2), (RootShape::Double, 2)],
            ),
            (Family::AIII, FamilyParams::PQ(p, q)) => {
                let m = p.min(q);
                let d = p.abs_diff(q);
                if d == 0 {
                    (
                        TypeLabel::C,
                        m,
                        true,
                        vec![(RootShape::Pair, 2), (RootShape::Double, 1)],
                    )
                } else {
                    (
                        TypeLabel::B,
                        m,
                        false,
                        vec![
                            (RootShape::Pair, 2),
                            (RootShape::Single, 2 * d),
                            (RootShape::Double, 1),
                        ],
                    )
                }
            }
            (Family::AI, FamilyParams::J(j)) => {
                (TypeLabel::A, j - 1, true, vec![(RootShape::Pair, 1)])
            }
            (Family::AII, FamilyParams::J(j)) => {
                (TypeLabel::A, j - 1, true, vec![(RootShape::Pair, 4)])
            }
            (Family::BDI, FamilyParams::PQ(p, q)) => {
                let m = p.min(q);
                let d = p.abs_diff(q);
                if d == 0 {
                    (TypeLabel::D, m, true, vec![(RootShape::Pair, 1)])
                } else {
                    (
                        TypeLabel::B,
                        m,
                        true,
                        vec![(RootShape::Pair, 1), (RootShape::Single, d)],
                    )
                }
            }
            (Family::DIII, FamilyParams::J(j)) => {
                let m = j / 2;
                if j % 2 == 0 {
                    (
                        TypeLabel::C,
                        m,
                        true,
                        vec![(RootShape::Pair, 4), (RootShape::Double, 1)],
                    )
                } else {
                    (
                        TypeLabel::B,
                        m,
                        false,
                        vec![
                            (RootShape::Pair, 4),
                            (RootShape::Single, 4),
                            (RootShape::Double, 1),
                        ],
                    )
                }
            }
            (Family::CII, FamilyParams::PQ(p, q)) => {
                let m = p.min(q);
                let d = p.abs_diff(q);
                if d == 0 {
                    (
                        TypeLabel::C,
                        m,
                        true,
                        vec![(RootShape::Pair, 4), (RootShape::Double, 3)],
                    )
                } else {
                    (
                        TypeLabel::B,
                        m,
                        false,
                        vec![
                            (RootShape::Pair, 4),
                            (RootShape::Single, 4 * d),
                            (RootShape::Double, 3),
                        ],
                    )
                }
            }
            (Family::CI, FamilyParams::J(j)) => (
                TypeLabel::C,
                j,
                true,
                vec![(RootShape::Pair, 1), (RootShape::Double, 1)],
            ),
            _ => unreachable!("lookup_space validated the parameter shape"),
        };
    let multiplicities: BTreeMap<RootShape, usize> = mults.into_iter().collect();
    let mut data = RestrictedRootData {
        sigma_half_type: sigma_type,
        sigma_half_rank: r,
        reduced,
        multiplicities,
        rho: Vec::new(),
    };
    // master consistency check against the table's Dim column
    let mult_sum: usize = data
        .positive_roots_with_multiplicity()
        .iter()
        .map(|(_, m)| m)
        .sum();
    if s.rank + mult_sum != s.dim {
        return Err(Error::InvalidParams(format!(
            "multiplicity table inconsistent for {s}: rank {} + sum m = {} but dim = {}",
            s.rank,
            s.rank + mult_sum,
            s.dim
        )));
    }
    // rho = (1/2) sum m_alpha alpha
    let ambient = data.ambient_dim();
    let mut rho = vec![Rat::default(); ambient];
    for (root, m) in data.positive_roots_with_multiplicity() {
        for (c, x) in rho.iter_mut().zip(root) {
            *c = &*c + x * rat(m as i64);
        }
    }
    let half = crate::rat::ratio(1, 2);
    data.rho = rho.iter().map(|c| c * &half).collect();
    Ok(data)
}

#[derive(Clone, Debug, Serialize)]
pub struct PropagationReport {
    pub schema: String,
    pub large: String,
    pub small: String,
    pub sigma_large: String,
    pub sigma_small: String,
    pub rule: String,
    pub propagates: bool,
}

/// Does the large space propagate the small one? True iff the Sigma_{1/2}
/// systems have the same type and the large rank is at least the small
/// (equal ranks included), i.e. simple roots are only added at the left
/// end of the diagram.
pub fn check_propagation(
    large: &SpaceDescriptor,
    small: &SpaceDescriptor,
) -> Result<PropagationReport> {
    let dl = restricted_root_data(large)?;
    let ds = restricted_root_data(small)?;
    let sigma_large = format!("{}_{}", dl.sigma_half_type, dl.sigma_half_rank);
    let sigma_small = format!("{}_{}", ds.sigma_half_type, ds.sigma_half_rank);
    let (rule, propagates) = if dl.sigma_half_type != ds.sigma_half_type {
        ("type-mismatch".to_string(), false)
    } else if dl.sigma_half_rank == ds.sigma_half_rank {
        ("identical-restricted-systems".to_string(), true)
    } else if dl.sigma_half_rank > ds.sigma_half_rank {
        ("left-extension".to_string(), true)
    } else {
        ("rank-decreases".to_string(), false)
    };
    Ok(PropagationReport {
        schema: SCHEMA_VERSION.to_string(),
        large: large.to_string(),
        small: small.to_string(),
        sigma_large,
        sigma_small,
        rule,
        propagates,
    })
}

/// Factorwise propagation for products: some enumeration of the small
/// factors must pair each with a distinct propagating large factor.
pub fn check_propagation_product(
    large: &[SpaceDescriptor],
    small: &[SpaceDescriptor],
) -> Result<bool> {
    if small.len() > large.len() {
        return Ok(false);
    }
    let mut edges = vec![Vec::new(); small.len()];
    for (i, s) in small.iter().enumerate() {
        for (j, l) in large.iter().enumerate() {
            if check_propagation(l, s)?.propagates {
                edges[i].push(j);
            }
        }
    }
    fn assign(i: usize, edges: &[Vec<usize>], used: &mut Vec<bool>) -> bool {
        if i == edges.len() {
            return true;
        }
        for &j in &edges[i] {
            if !used[j] {
                used[j] = true;
                if assign(i + 1, edges, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    Ok(assign(0, &edges, &mut vec![false; large.len()]))
}

#[derive(Clone, Debug, Serialize)]
pub struct GkReport {
    pub schema: String,
    pub theorem: String,
    pub large: String,
    pub small: String,
    pub sigma_half: String,
    pub claims: Vec<Claim>,
    pub pass: bool,
}

/// Restriction theorem for symmetric-space propagation, verified on the
/// Sigma_{1/2} systems: the group and invariant claims reduce to the
/// root-system engine there.
pub fn verify_theorem_admext_gk(
    large: &SpaceDescriptor,
    small: &SpaceDescriptor,
    cap: usize,
) -> Result<GkReport> {
    let prop = check_propagation(large, small)?;
    if !prop.propagates {
        return Err(Error::NotAPropagation(format!(
            "{} does not propagate {} ({} vs {})",
            large, small, prop.sigma_large, prop.sigma_small
        )));
    }
    let dl = restricted_root_data(large)?;
    let ds = restricted_root_data(small)?;
    let mut claims = vec![Claim::new(
        "propagation",
        true,
        format!(
            "{} into {} by {}",
            prop.sigma_small, prop.sigma_large, prop.rule
        ),
    )];
    if dl.sigma_half_rank == ds.sigma_half_rank {
        claims.push(Claim::new(
            "equal-rank",
            true,
            "a_k = a_n; restriction of groups and invariants is the identity".to_string(),
        ));
    } else {
        let engine = crate::invariants::verify_theorem_admext(
            dl.sigma_half_type,
            dl.sigma_half_rank,
            ds.sigma_half_rank,
            cap,
        )?;
        claims.extend(engine.claims);
    }
    let pass = claims.iter().all(|c| c.pass);
    Ok(GkReport {
        schema: SCHEMA_VERSION.to_string(),
        theorem: "AdmExtG/K".to_string(),
        large: large.to_string(),
        small: small.to_string(),
        sigma_half: format!("{} -> {}", prop.sigma_small, prop.sigma_large),
        claims,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IhIaReport {
    pub schema: String,
    pub theorem: String,
    pub space: String,
    pub case: String,
    pub claims: Vec<Claim>,
    pub pass: bool,
}

fn is_split_family(s: &SpaceDescriptor) -> bool {
    match (s.family, s.params) {
        (Family::AI, _) | (Family::CI, _) => true,
        (Family::BDI, FamilyParams::PQ(p, q)) => p == q || p == q + 1 || q == p + 1,
        _ => false,
    }
}

fn is_complex_family(s: &SpaceDescriptor) -> bool {
    matches!(
        s.family,
        Family::ComplexA | Family::ComplexB | Family::ComplexD | Family::ComplexC
    )
}

/// Restriction from the full Cartan h to a: in scope are the split case
/// (a = h_R, the claims are identities) and the complex case (h is two
/// copies of a and the diagonal stabilizer of W~ x W~ restricts onto W~,
/// with invariant preimages q tensor 1).
pub fn verify_theorem_ihia(s: &SpaceDescriptor, cap: usize) -> Result<IhIaReport> {
    let data = restricted_root_data(s)?;
    let label = data.sigma_half_type;
    let r = data.sigma_half_rank;
    let mut claims = Vec::new();
    let case;
    if is_split_family(s) {
        case = "split";
        // a = h_R: the stabilizer is the whole group and restriction is the
        // identity map; run it anyway rather than asserting it
        let rs = RootSystem::build_capped(label, r, cap.max(crate::DEFAULT_RANK_CAP))?;
        let wt = generate_extended(&rs, cap)?;
        let img = restricted_image(&wt, r)?;
        claims.push(Claim::new(
            "split-identity",
            img.stabilizer_order == wt.order()
                && crate::group::compare_groups(&img.table, &wt)? == GroupComparison::Equal,
            format!(
                "a = h_R for {}; stabilizer is all of W~ (order {}) and restriction is the identity",
                s, wt.order()
            ),
        ));
    } else if is_complex_family(s) {
        case = "complex-diagonal";
        let rs = RootSystem::build_capped(label, r, cap.max(crate::DEFAULT_RANK_CAP))?;
        let wt = generate_extended(&rs, cap)?;
        let ambient = rs.ambient_dim;
        // W~(g,h) = W~ x W~ acting on h = a + a
        let prod = wt.product(&wt);
        // diagonal subspace basis (b, b)
        let a_basis: Vec<RatVec> = match label {
            TypeLabel::A => crate::group::embedded_basis(label, ambient, r)?,
            _ => (0..r).map(|i| unit_vec(ambient, i)).collect(),
        };
        let diag_basis: Vec<RatVec> = a_basis
            .iter()
            .map(|b| {
                let mut v = b.clone();
                v.extend_from_slice(b);
                v
            })
            .collect();
        let stab = prod.stabilizer_of_span(&diag_basis);
        // the induced map on the diagonal is the first-factor action
        let mut restricted: std::collections::BTreeSet<crate::SignedPermutation> =
            Default::default();
        let mut pairs_diagonal = true;
        for e in &stab.elements {
            let u = e.restrict(ambient)?;
            // second factor must agree with the first on a
            let v_perm: Vec<usize> = e.perm()[ambient..].iter().map(|&p| p - ambient).collect();
            let v = crate::SignedPermutation::new(v_perm, e.signs()[ambient..].to_vec())?;
            if a_basis.iter().any(|b| u.apply(b) != v.apply(b)) {
                pairs_diagonal = false;
            }
            restricted.insert(u);
        }
        let image_elements: Vec<_> = restricted.into_iter().collect();
        let equals_wt = image_elements == wt.elements;
        claims.push(Claim::new(
            "diagonal-stabilizer-restriction",
            equals_wt && pairs_diagonal && stab.order() == wt.order(),
            format!(
                "stabilizer of the diagonal in W~ x W~ ({} pairs scanned) has order {} and restricts onto W~({label}_{r}) of order {}",
                prod.order(),
                stab.order(),
                wt.order()
            ),
        ));
        // invariant surjectivity via q tensor 1
        let gens = char_poly_generators(label, r)?;
        let targets: Vec<(String, Polynomial)> = match label {
            TypeLabel::D => std::iter::once((format!("p_{{{r},1}}^2"), gens.p(1).mul(gens.p(1))))
                .chain((2..=r).map(|nu| (format!("p_{{{r},{nu}}}"), gens.p(nu).clone())))
                .collect(),
            TypeLabel::A => (1..=r + 1)
                .map(|nu| (format!("p_{{{r},{nu}}}"), gens.p(nu).clone()))
                .collect(),
            _ => (1..=r)
                .map(|nu| (format!("p_{{{r},{nu}}}"), gens.p(nu).clone()))
                .collect(),
        };
        let mut all_ok = true;
        let mut details = Vec::new();
        for (name, q) in &targets {
            let q1 = q.extend(2 * ambient);
            let invariant = is_invariant(&prod, &q1)?;
            let restricts = q1.restrict_to_diagonal() == *q;
            all_ok &= invariant && restricts;
            details.push(format!(
                "{name} tensor 1: invariant {invariant}, restricts to {name} {restricts}"
            ));
        }
        claims.push(Claim::new(
            "invariant-surjectivity-q-tensor-1",
            all_ok,
            details.join("; "),
        ));
    } else {
        return Err(Error::OutOfScopeFamily(s.to_string()));
    }
    let pass = claims.iter().all(|c| c.pass);
    Ok(IhIaReport {
        schema: SCHEMA_VERSION.to_string(),
        theorem: "IhIa".to_string(),
        space: s.to_string(),
        case: case.to_string(),
        claims,
        pass,
    })
}

impl Serialize for SpaceDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SpaceDescriptor", 8)?;
        st.serialize_field("family", &self.family.to_string())?;
        match self.params {
            FamilyParams::J(j) => st.serialize_field("j", &j)?,
            FamilyParams::PQ(p, q) => {
                st.serialize_field("p", &p)?;
                st.serialize_field("q", &q)?;
            }
        }
        st.serialize_field("noncompact", &self.noncompact)?;
        st.serialize_field("compact", &self.compact)?;
        st.serialize_field("K", &self.k_subgroup)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("dim", &self.dim)?;
        st.end()
    }
}

impl Serialize for RestrictedRootData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RestrictedRootData", 5)?;
        st.serialize_field(
            "sigma_half",
            &format!("{}_{}", self.sigma_half_type, self.sigma_half_rank),
        )?;
        st.serialize_field("reduced", &self.reduced)?;
        let mults: Vec<serde_json::Value> = self
            .multiplicities
            .iter()
            .map(|(shape, m)| {
                json!({
                    "shape": match shape {
                        RootShape::Pair => "f_i+-f_j",
                        RootShape::Single => "f_i",
                        RootShape::Double => "2f_i",
                    },
                    "multiplicity": m,
                })
            })
            .collect();
        st.serialize_field("multiplicities", &mults)?;
        st.serialize_field("rho", &vec_value(&self.rho))?;
        st.serialize_field("rho_norm_sq", &crate::rat::rat_value(&self.rho_norm_sq()))?;
        st.end()
    }
}
