//! Symbol-level transfer of invariant differential operators along a
//! propagation: the Laplacian symbol, the transfer homomorphism (restriction
//! of invariant polynomials in the spectral parameter), and the rho-shift.
//!
//! Two rho conventions coexist. The default derives rho from the
//! multiplicity table; the `paper` preset uses the rank-one hyperbolic
//! normalization rho_k = (k/2) alpha, which disagrees with the
//! table-derived ((k-1)/2) alpha for SO_o(1,k). Reports carry both values
//! for that family; nothing is reconciled silently.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::generate_extended;
use crate::invariants::char_poly_generators;
use crate::poly::{is_invariant, Polynomial};
use crate::rat::{rat, rat_value, ratio, Rat};
use crate::root_system::{RootSystem, TypeLabel};
use crate::spaces::{
    check_propagation, restricted_root_data, Family, FamilyParams, SpaceDescriptor,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoConvention {
    /// rho from the shipped multiplicity table (default).
    Table,
    /// The rank-one hyperbolic normalization rho_k = (k/2) alpha.
    Paper,
}

impl fmt::Display for RhoConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoConvention::Table => write!(f, "table"),
            RhoConvention::Paper => write!(f, "paper"),
        }
    }
}

impl FromStr for RhoConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "table" => Ok(RhoConvention::Table),
            "paper" => Ok(RhoConvention::Paper),
            other => Err(Error::InvalidParams(format!(
                "unknown rho convention `{other}` (expected table or paper)"
            ))),
        }
    }
}

/// A W~-invariant polynomial in the spectral parameter lambda, attached to
/// the Sigma_{1/2} data of a symmetric space.
#[derive(Clone, Debug)]
pub struct OperatorSymbol {
    pub space: String,
    pub sigma_half_type: TypeLabel,
    pub sigma_half_rank: usize,
    pub symbol: Polynomial,
}

/// The rank-one hyperbolic parameter of SO_o(p,1) / SO_o(1,q); the
/// `paper` preset is defined only there.
fn hyperbolic_k(s: &SpaceDescriptor) -> Option<usize> {
    match (s.family, s.params) {
        (Family::BDI, FamilyParams::PQ(p, 1)) => Some(p),
        (Family::BDI, FamilyParams::PQ(1, q)) => Some(q),
        _ => None,
    }
}

/// `|rho|^2` under the chosen convention.
pub fn rho_norm_sq(s: &SpaceDescriptor, convention: RhoConvention) -> Result<Rat> {
    match convention {
        RhoConvention::Table => Ok(restricted_root_data(s)?.rho_norm_sq()),
        RhoConvention::Paper => {
            let k = hyperbolic_k(s).ok_or_else(|| {
                Error::InvalidParams(format!(
                    "the `paper` rho preset applies only to the rank-one hyperbolic family BDI(k,1), not {s}"
                ))
            })?;
            Ok(ratio((k * k) as i64, 4))
        }
    }
}

/// Laplacian symbol `lambda_1^2 + ... + lambda_r^2 - |rho|^2` in the
/// coordinates of a*.
pub fn laplacian_symbol(s: &SpaceDescriptor, convention: RhoConvention) -> Result<OperatorSymbol> {
    let data = restricted_root_data(s)?;
    let vars = data.ambient_dim();
    let mut sym = Polynomial::zero(vars);
    for i in 0..vars {
        sym = sym.add(&Polynomial::var(vars, i).pow(2));
    }
    sym = sym.sub(&Polynomial::constant(vars, rho_norm_sq(s, convention)?));
    Ok(OperatorSymbol {
        space: s.to_string(),
        sigma_half_type: data.sigma_half_type,
        sigma_half_rank: data.sigma_half_rank,
        symbol: sym,
    })
}

#[derive(Clone, Debug)]
pub struct RhoShift {
    pub from: String,
    pub to: String,
    pub convention: RhoConvention,
    /// `|rho_k|^2 - |rho_n|^2` under the chosen convention.
    pub shift: Rat,
    pub table_shift: Rat,
    /// Present for the rank-one hyperbolic family, where the two
    /// normalizations genuinely disagree.
    pub paper_shift: Option<Rat>,
}

pub fn rho_shift(
    large: &SpaceDescriptor,
    small: &SpaceDescriptor,
    convention: RhoConvention,
) -> Result<RhoShift> {
    let prop = check_propagation(large, small)?;
    if !prop.propagates {
        return Err(Error::NotAPropagation(format!(
            "{large} does not propagate {small}"
        )));
    }
    let table_shift =
        rho_norm_sq(large, RhoConvention::Table)? - rho_norm_sq(small, RhoConvention::Table)?;
    let paper_shift = match (hyperbolic_k(large), hyperbolic_k(small)) {
        (Some(_), Some(_)) => Some(
            rho_norm_sq(large, RhoConvention::Paper)? - rho_norm_sq(small, RhoConvention::Paper)?,
        ),
        _ => None,
    };
    let shift = match convention {
        RhoConvention::Table => table_shift.clone(),
        RhoConvention::Paper => paper_shift.clone().ok_or_else(|| {
            Error::InvalidParams(format!(
                "the `paper` rho preset applies only to the rank-one hyperbolic family, not {large} -> {small}"
            ))
        })?,
    };
    Ok(RhoShift {
        from: large.to_string(),
        to: small.to_string(),
        convention,
        shift,
        table_shift,
        paper_shift,
    })
}

/// Transfer of an invariant symbol along a propagation: restriction of the
/// polynomial to the smaller spectral parameter space. The result must be
/// W~-invariant on the small side (that is the content of the surjectivity
/// theorem); violation is reported as an error, not silently accepted.
pub fn gamma_transfer(
    sym: &OperatorSymbol,
    large: &SpaceDescriptor,
    small: &SpaceDescriptor,
    cap: usize,
) -> Result<OperatorSymbol> {
    let prop = check_propagation(large, small)?;
    if !prop.propagates {
        return Err(Error::NotAPropagation(format!(
            "{large} does not propagate {small}"
        )));
    }
    let dl = restricted_root_data(large)?;
    let ds = restricted_root_data(small)?;
    if sym.sigma_half_type != dl.sigma_half_type || sym.sigma_half_rank != dl.sigma_half_rank {
        return Err(Error::InvalidParams(format!(
            "symbol belongs to {}_{}, not to {large}",
            sym.sigma_half_type, sym.sigma_half_rank
        )));
    }
    let restricted = sym.symbol.restrict(ds.ambient_dim());
    if ds.sigma_half_rank >= ds.sigma_half_type.min_rank() && ds.sigma_half_rank <= cap {
        let rs = RootSystem::build_capped(
            ds.sigma_half_type,
            ds.sigma_half_rank,
            cap.max(crate::DEFAULT_RANK_CAP),
        )?;
        let wt = generate_extended(&rs, cap)?;
        if !is_invariant(&wt, &restricted)? {
            return Err(Error::InvarianceViolated(format!(
                "transfer of a symbol from {large} to {small} left the invariant algebra"
            )));
        }
    }
    Ok(OperatorSymbol {
        space: small.to_string(),
        sigma_half_type: ds.sigma_half_type,
        sigma_half_rank: ds.sigma_half_rank,
        symbol: restricted,
    })
}

/// Random element of the W~-invariant algebra: a small integer combination
/// of products of the invariant generators. Used by the property sweeps.
pub fn random_invariant_symbol<R: Rng>(
    label: TypeLabel,
    rank: usize,
    rng: &mut R,
) -> Result<Polynomial> {
    let gens = char_poly_generators(label, rank)?;
    let vars = gens.num_vars();
    // extended generating set: replace the Pfaffian by its square for D
    let basis: Vec<Polynomial> = match label {
        TypeLabel::D => std::iter::once(gens.p(1).mul(gens.p(1)))
            .chain((2..=rank).map(|nu| gens.p(nu).clone()))
            .collect(),
        _ => gens.generators.clone(),
    };
    let mut out = Polynomial::constant(vars, rat(rng.gen_range(-3..=3)));
    for _ in 0..3 {
        let c = rat(rng.gen_range(-3..=3));
        let a = &basis[rng.gen_range(0..basis.len())];
        if rng.gen_bool(0.5) {
            let b = &basis[rng.gen_range(0..basis.len())];
            out = out.add(&a.mul(b).scale(&c));
        } else {
            out = out.add(&a.scale(&c));
        }
    }
    Ok(out)
}

impl Serialize for OperatorSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("OperatorSymbol", 3)?;
        st.serialize_field("space", &self.space)?;
        st.serialize_field(
            "sigma_half",
            &format!("{}_{}", self.sigma_half_type, self.sigma_half_rank),
        )?;
        st.serialize_field("symbol", &self.symbol)?;
        st.end()
    }
}

impl Serialize for RhoShift {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RhoShift", 6)?;
        st.serialize_field("from", &self.from)?;
        st.serialize_field("to", &self.to)?;
        st.serialize_field("convention", &self.convention)?;
        st.serialize_field("shift", &rat_value(&self.shift))?;
        st.serialize_field("table_shift", &rat_value(&self.table_shift))?;
        st.serialize_field("paper_shift", &self.paper_shift.as_ref().map(rat_value))?;
        st.end()
    }
}
