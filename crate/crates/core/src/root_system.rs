//! Classical root systems A_k, B_k, C_k, D_k in the coordinate conventions
//! used throughout the crate.
//!
//! Coordinates are stored left-to-right as `(x_1, ..., x_s)` with the basis
//! vector `f_j` at index `j-1`; simple roots are numbered with `alpha_1` at
//! the right end of the Dynkin diagram. A rank-n system embeds in a rank-k
//! system of the same type as the first n coordinates (first n+1 for type A),
//! with zeros above.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{is_zero_vec, rat, reflect, sub_vec, unit_vec, vec_value, Rat, RatVec};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 4] = [TypeLabel::A, TypeLabel::B, TypeLabel::C, TypeLabel::D];

    /// Smallest rank at which construction is permitted.
    pub fn min_rank(self) -> usize {
        match self {
            TypeLabel::A | TypeLabel::B | TypeLabel::C => 1,
            TypeLabel::D => 2,
        }
    }

    /// Smallest rank admitted by the propagation diagrams
    /// (A: 1, B: 2, C: 3, D: 4); below this a system is degenerate.
    pub fn min_propagation_rank(self) -> usize {
        match self {
            TypeLabel::A => 1,
            TypeLabel::B => 2,
            TypeLabel::C => 3,
            TypeLabel::D => 4,
        }
    }

    pub fn ambient_dim(self, rank: usize) -> usize {
        match self {
            TypeLabel::A => rank + 1,
            _ => rank,
        }
    }

    /// Number of coordinates carrying the embedded rank-n subspace.
    pub fn embedded_dim(self, n: usize) -> usize {
        self.ambient_dim(n)
    }

    /// Total number of roots.
    pub fn root_count(self, rank: usize) -> usize {
        match self {
            TypeLabel::A => rank * (rank + 1),
            TypeLabel::B | TypeLabel::C => 2 * rank * rank,
            TypeLabel::D => 2 * rank * (rank - 1),
        }
    }

    /// Weyl group order: (k+1)!, 2^k k!, 2^k k!, 2^{k-1} k!.
    pub fn weyl_order(self, rank: usize) -> usize {
        let fact = |m: usize| (1..=m).product::<usize>();
        match self {
            TypeLabel::A => fact(rank + 1),
            TypeLabel::B | TypeLabel::C => (1 << rank) * fact(rank),
            TypeLabel::D => (1 << (rank - 1)) * fact(rank),
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
        };
        write!(f, "{c}")
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(TypeLabel::A),
            "B" | "b" => Ok(TypeLabel::B),
            "C" | "c" => Ok(TypeLabel::C),
            "D" | "d" => Ok(TypeLabel::D),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

/// Default cap on constructible rank.
pub const DEFAULT_RANK_CAP: usize = 8;

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub ambient_dim: usize,
    /// Full root set, sorted for deterministic serialization.
    pub roots: Vec<RatVec>,
    /// Simple roots `alpha_1 .. alpha_k` (alpha_1 at the diagram's right end).
    pub simple_roots: Vec<RatVec>,
    /// Below the propagation diagram's rank bound (B_1, C_1, C_2, D_2, D_3).
    pub degenerate: bool,
}

impl RootSystem {
    pub fn build(label: TypeLabel, rank: usize) -> Result<Self> {
        Self::build_capped(label, rank, DEFAULT_RANK_CAP)
    }

    pub fn build_capped(label: TypeLabel, rank: usize, cap: usize) -> Result<Self> {
        let min = label.min_rank();
        if rank < min || rank > cap {
            return Err(Error::RankOutOfRange {
                label,
                rank,
                min,
                max: cap,
            });
        }
        let s = label.ambient_dim(rank);
        let f = |j: usize| unit_vec(s, j); // f_{j+1}
        let mut roots: Vec<RatVec> = Vec::new();
        let mut simple: Vec<RatVec> = Vec::new();
        match label {
            TypeLabel::A => {
                for i in 0..s {
                    for j in 0..s {
                        if i != j {
                            roots.push(sub_vec(&f(i), &f(j)));
                        }
                    }
                }
                for i in 1..s {
                    simple.push(sub_vec(&f(i), &f(i - 1)));
                }
            }
            TypeLabel::B | TypeLabel::C | TypeLabel::D => {
                for i in 1..s {
                    for j in 0..i {
                        for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let mut v = vec![Rat::zero(); s];
                            v[i] = rat(si);
                            v[j] = rat(sj);
                            roots.push(v);
                        }
                    }
                }
                match label {
                    TypeLabel::B => {
                        for i in 0..s {
                            let mut v = vec![Rat::zero(); s];
                            v[i] = rat(1);
                            roots.push(v.clone());
                            v[i] = rat(-1);
                            roots.push(v);
                        }
                        simple.push(f(0));
                    }
                    TypeLabel::C => {
                        for i in 0..s {
                            let mut v = vec![Rat::zero(); s];
                            v[i] = rat(2);
                            roots.push(v.clone());
                            v[i] = rat(-2);
                            roots.push(v);
                        }
                        let mut a1 = vec![Rat::zero(); s];
                        a1[0] = rat(2);
                        simple.push(a1);
                    }
                    TypeLabel::D => {
                        let mut a1 = vec![Rat::zero(); s];
                        a1[0] = rat(1);
                        a1[1] = rat(1);
                        simple.push(a1);
                    }
                    TypeLabel::A => unreachable!(),
                }
                for i in 1..s {
                    simple.push(sub_vec(&f(i), &f(i - 1)));
                }
            }
        }
        roots.sort();
        let degenerate = rank < label.min_propagation_rank();
        let rs = RootSystem {
            type_label: label,
            rank,
            ambient_dim: s,
            roots,
            simple_roots: simple,
            degenerate,
        };
        debug_assert_eq!(rs.roots.len(), label.root_count(rank));
        Ok(rs)
    }

    pub fn contains_root(&self, v: &[Rat]) -> bool {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).is_ok()
    }

    /// Coefficients of `v` in the simple-root basis, if `v` lies in the span.
    pub fn simple_coefficients(&self, v: &[Rat]) -> Option<RatVec> {
        solve_in_basis(&self.simple_roots, v)
    }

    /// Positive roots: the roots whose expansion in the simple basis has
    /// all coefficients nonnegative (they come out integral as well).
    pub fn positive_roots(&self) -> Vec<RatVec> {
        use num_traits::Signed;
        self.roots
            .iter()
            .filter(|r| {
                self.simple_coefficients(r)
                    .map(|cs| cs.iter().all(|c| !c.is_negative()))
                    .unwrap_or(false)
            })
            .cloned()
            .collect()
    }

    /// Every root reflected in every root stays a root.
    pub fn is_closed_under_reflections(&self) -> bool {
        self.roots.iter().all(|alpha| {
            self.roots
                .iter()
                .all(|beta| self.contains_root(&reflect(beta, alpha)))
        })
    }

    /// Restriction of a covector to the embedded rank-n subspace, expressed
    /// in the subspace's coordinates. For type A the result is only defined
    /// modulo constants (the trace functional); `canonicalize_a` reduces
    /// that ambiguity by subtracting the mean.
    pub fn restrict_covector(&self, v: &[Rat], n: usize) -> RatVec {
        let m = self.type_label.embedded_dim(n);
        v[..m].to_vec()
    }
}

/// Solve `sum_j c_j basis_j = v` by Gaussian elimination; `None` when `v`
/// is outside the span. The basis is assumed linearly independent.
pub fn solve_in_basis(basis: &[RatVec], v: &[Rat]) -> Option<RatVec> {
    let rows = v.len();
    let cols = basis.len();
    // augmented matrix, one row per ambient coordinate
    let mut m: Vec<RatVec> = (0..rows)
        .map(|i| {
            let mut row: RatVec = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let mut pivot_row_of_col = vec![usize::MAX; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * pv;
                }
            }
        }
        pivot_row_of_col[c] = r;
        r += 1;
    }
    // consistency: rows without pivots must have zero RHS
    if m.iter().skip(r).any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut coeffs = vec![Rat::zero(); cols];
    for (c, &pr) in pivot_row_of_col.iter().enumerate() {
        if pr != usize::MAX {
            coeffs[c] = m[pr][cols].clone();
        }
    }
    Some(coeffs)
}

impl Serialize for RootSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RootSystem", 4)?;
        s.serialize_field("type", &self.type_label)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field(
            "roots",
            &self.roots.iter().map(|r| vec_value(r)).collect::<Vec<_>>(),
        )?;
        s.serialize_field(
            "simple",
            &self
                .simple_roots
                .iter()
                .map(|r| vec_value(r))
                .collect::<Vec<_>>(),
        )?;
        s.end()
    }
}

/// Outcome of checking that rank-k simple roots restrict onto rank-n simple
/// roots index by index (and restrict to zero or non-simple vectors above n).
#[derive(Clone, Debug, Serialize)]
pub struct SimpleRestrictionReport {
    #[serde(rename = "type")]
    pub type_label: TypeLabel,
    pub k: usize,
    pub n: usize,
    pub pass: bool,
    /// Index of the first failing simple root, if any.
    pub failing_index: Option<usize>,
    pub details: Vec<String>,
}

/// For type A two truncated covectors agree on the trace-zero subspace iff
/// they differ by a constant vector.
fn covectors_agree_on_embedded(label: TypeLabel, a: &[Rat], b: &[Rat]) -> bool {
    match label {
        TypeLabel::A => {
            let d = sub_vec(a, b);
            d.iter().all(|x| *x == d[0])
        }
        _ => a == b,
    }
}

fn covector_zero_on_embedded(label: TypeLabel, a: &[Rat]) -> bool {
    match label {
        TypeLabel::A => a.iter().all(|x| *x == a[0]),
        _ => is_zero_vec(a),
    }
}

pub fn verify_simple_restriction(
    label: TypeLabel,
    k: usize,
    n: usize,
) -> Result<SimpleRestrictionReport> {
    if n > k || n < label.min_rank() {
        return Err(Error::InvalidRankPair { label, k, n });
    }
    let big = RootSystem::build_capped(label, k, k.max(DEFAULT_RANK_CAP))?;
    let small = RootSystem::build_capped(label, n, k.max(DEFAULT_RANK_CAP))?;
    let mut pass = true;
    let mut failing = None;
    let mut details = Vec::new();
    for j in 1..=k {
        let restricted = big.restrict_covector(&big.simple_roots[j - 1], n);
        if j <= n {
            let ok = covectors_agree_on_embedded(label, &restricted, &small.simple_roots[j - 1]);
            details.push(format!(
                "alpha_{{{k},{j}}}| {} alpha_{{{n},{j}}}",
                if ok { "=" } else { "!=" }
            ));
            if !ok {
                pass = false;
                failing.get_or_insert(j);
            }
        } else {
            let zero = covector_zero_on_embedded(label, &restricted);
            let simple_hit = small
                .simple_roots
                .iter()
                .any(|s| covectors_agree_on_embedded(label, &restricted, s));
            let ok = zero || !simple_hit;
            details.push(format!(
                "alpha_{{{k},{j}}}| is {}",
                if zero {
                    "zero"
                } else if ok {
                    "nonzero and non-simple"
                } else {
                    "simple (violation)"
                }
            ));
            if !ok {
                pass = false;
                failing.get_or_insert(j);
            }
        }
    }
    Ok(SimpleRestrictionReport {
        type_label: label,
        k,
        n,
        pass,
        failing_index: failing,
        details,
    })
}
