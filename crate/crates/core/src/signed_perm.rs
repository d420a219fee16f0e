//! Signed permutations: the universal representation for classical Weyl
//! group elements.
//!
//! An element is a permutation of coordinates together with a sign per
//! coordinate. The action on a vector is `y[perm[i]] = signs[i] * x[i]`,
//! i.e. signs are indexed by the *source* coordinate.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{Rat, RatVec};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "perm has length {n}, signs has length {}",
                signs.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation(format!(
                    "perm {perm:?} is not a bijection on 0..{n}"
                )));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidPermutation(format!(
                "signs {signs:?} must be +/-1"
            )));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// Transposition of coordinates `i` and `j` (plain signs).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        SignedPermutation {
            perm,
            signs: vec![1; n],
        }
    }

    /// Sign flip of a single coordinate.
    pub fn sign_flip(n: usize, i: usize) -> Self {
        let mut signs = vec![1; n];
        signs[i] = -1;
        SignedPermutation {
            perm: (0..n).collect(),
            signs,
        }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i) && self.signs.iter().all(|&s| s == 1)
    }

    /// Image of the basis vector `e_i`: `(target index, sign)`.
    pub fn apply_basis(&self, i: usize) -> (usize, i8) {
        (self.perm[i], self.signs[i])
    }

    pub fn apply(&self, v: &[Rat]) -> RatVec {
        debug_assert_eq!(v.len(), self.size());
        let mut out = vec![Rat::default(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = if self.signs[i] == 1 { x.clone() } else { -x };
        }
        out
    }

    /// `self . other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.size(), other.size());
        let n = self.size();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[i] = self.perm[other.perm[i]];
            signs[i] = other.signs[i] * self.signs[other.perm[i]];
        }
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.size();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// Product of all signs; `-1` exactly for odd numbers of sign changes.
    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    pub fn is_plain(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    /// Dimension of the fixed subspace: one per permutation cycle whose
    /// sign product is +1.
    pub fn fixed_space_dim(&self) -> usize {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut dim = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut i = start;
            let mut prod = 1i8;
            loop {
                seen[i] = true;
                prod *= self.signs[i];
                i = self.perm[i];
                if i == start {
                    break;
                }
            }
            if prod == 1 {
                dim += 1;
            }
        }
        dim
    }

    /// Orthogonal reflections are exactly the non-identity elements fixing
    /// a hyperplane.
    pub fn is_reflection(&self) -> bool {
        !self.is_identity() && self.fixed_space_dim() == self.size() - 1
    }

    /// Induced signed permutation on the first `m` coordinates. Errors if
    /// the element does not map that coordinate set to itself.
    pub fn restrict(&self, m: usize) -> Result<Self> {
        if m > self.size() {
            return Err(Error::SubspaceOutOfRange {
                n: m,
                size: self.size(),
            });
        }
        if (0..m).any(|i| self.perm[i] >= m) {
            return Err(Error::SubspaceNotPreserved);
        }
        Ok(SignedPermutation {
            perm: self.perm[..m].to_vec(),
            signs: self.signs[..m].to_vec(),
        })
    }

    /// Block direct sum acting on the concatenation of the two coordinate sets.
    pub fn block_sum(&self, other: &Self) -> Self {
        let n = self.size();
        let mut perm = self.perm.clone();
        perm.extend(other.perm.iter().map(|&p| p + n));
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        SignedPermutation { perm, signs }
    }

    /// Recognize the reflection in `root` as a signed permutation.
    /// Returns `None` when the reflection is not a signed coordinate map
    /// (never happens for classical roots).
    pub fn from_reflection(root: &[Rat]) -> Option<Self> {
        use crate::rat::{reflect, unit_vec};
        use num_traits::{One, Zero};
        let n = root.len();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            let image = reflect(&unit_vec(n, i), root);
            let mut hit = None;
            for (j, x) in image.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if hit.is_some() {
                    return None;
                }
                let sign = if *x == Rat::one() {
                    1
                } else if *x == -Rat::one() {
                    -1
                } else {
                    return None;
                };
                hit = Some((j, sign));
            }
            let (j, s) = hit?;
            perm[i] = j;
            signs[i] = s;
        }
        SignedPermutation::new(perm, signs).ok()
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SignedPermutation", 2)?;
        let one_based: Vec<usize> = self.perm.iter().map(|&p| p + 1).collect();
        s.serialize_field("perm", &one_based)?;
        s.serialize_field("signs", &self.signs)?;
        s.end()
    }
}
