//! Sparse multivariate polynomials over exact rationals, with signed
//! permutation actions, restriction to coordinate subspaces, the trace
//! quotient for type A, and Reynolds averaging.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::rat::{rat, rat_num_den, Rat};
use crate::signed_perm::SignedPermutation;

/// Exponent vector with graded-lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial(vec![0; num_vars]), c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rat::one())
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut exp = vec![0u32; num_vars];
        exp[i] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial(exp), Rat::one());
        p
    }

    pub fn monomial(num_vars: usize, exps: Vec<u32>, c: Rat) -> Self {
        assert_eq!(exps.len(), num_vars);
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Add `c * m`, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.num_vars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.num_vars);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Action of a signed permutation: `act(w, p) = p o w^{-1}`.
    /// On a monomial this pushes exponents forward along the permutation
    /// and multiplies the coefficient by the source signs raised to the
    /// exponents.
    pub fn act(&self, w: &SignedPermutation) -> Result<Self> {
        if w.size() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: w.size(),
            });
        }
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            let (exps, flip) = act_monomial(m, w);
            out.add_term(exps, if flip { -c } else { c.clone() });
        }
        Ok(out)
    }

    /// Substitute 0 for every variable of index > n; result in n variables.
    pub fn restrict(&self, n: usize) -> Self {
        assert!(n <= self.num_vars);
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            if m.0[n..].iter().all(|&e| e == 0) {
                out.add_term(Monomial(m.0[..n].to_vec()), c.clone());
            }
        }
        out
    }

    /// Pad with fresh trailing variables.
    pub fn extend(&self, num_vars: usize) -> Self {
        assert!(num_vars >= self.num_vars);
        let mut out = Self::zero(num_vars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.resize(num_vars, 0);
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Substitute 0 for every variable whose index is not in `support`
    /// (0-based); the variable count is unchanged.
    pub fn zero_outside(&self, support: &[usize]) -> Self {
        let keep: Vec<bool> = (0..self.num_vars).map(|i| support.contains(&i)).collect();
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().all(|(i, &e)| e == 0 || keep[i]) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Canonical representative modulo the trace relation
    /// `x_1 + ... + x_m = 0`: substitutes `x_m := -(x_1 + ... + x_{m-1})`.
    /// Two polynomials agree on the trace-zero hyperplane iff their
    /// reductions are structurally equal.
    pub fn reduce_trace_zero(&self) -> Result<Self> {
        let m = self.num_vars;
        if m < 2 {
            return Err(Error::TooFewVariables { min: 2, got: m });
        }
        let mut neg_sum = Self::zero(m);
        for i in 0..m - 1 {
            neg_sum = neg_sum.sub(&Self::var(m, i));
        }
        // cache powers of the substituted linear form
        let max_pow = self.terms.keys().map(|mo| mo.0[m - 1]).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_pow as usize + 1);
        powers.push(Self::one(m));
        for e in 1..=max_pow {
            powers.push(powers[(e - 1) as usize].mul(&neg_sum));
        }
        let mut out = Self::zero(m);
        for (mo, c) in &self.terms {
            let e_last = mo.0[m - 1];
            let mut base_exps = mo.0.clone();
            base_exps[m - 1] = 0;
            let base = Self::monomial(m, base_exps, c.clone());
            out = out.add(&base.mul(&powers[e_last as usize]));
        }
        Ok(out)
    }

    /// Every exponent of every monomial is even.
    pub fn all_exponents_even(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e % 2 == 0))
    }

    /// The monomials with all exponents even.
    pub fn even_part(&self) -> Self {
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0.iter().all(|&e| e % 2 == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// First monomial (graded-lex order) carrying an odd exponent, with the
    /// offending variable index.
    pub fn first_odd_exponent(&self) -> Option<(Monomial, usize)> {
        self.terms
            .keys()
            .find_map(|m| m.0.iter().position(|&e| e % 2 == 1).map(|i| (m.clone(), i)))
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[i] = e - 1;
                out.add_term(Monomial(exps), c * rat(e as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.num_vars);
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Evaluation on the diagonal of a doubled space: a polynomial in 2s
    /// variables becomes one in s variables by identifying the two copies.
    pub fn restrict_to_diagonal(&self) -> Self {
        assert!(self.num_vars.is_multiple_of(2));
        let s = self.num_vars / 2;
        let mut out = Self::zero(s);
        for (m, c) in &self.terms {
            let exps: Vec<u32> = (0..s).map(|i| m.0[i] + m.0[s + i]).collect();
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }
}

fn act_monomial(m: &Monomial, w: &SignedPermutation) -> (Monomial, bool) {
    let n = m.0.len();
    let mut exps = vec![0u32; n];
    let mut flip = false;
    for (i, &e) in m.0.iter().enumerate() {
        let (j, s) = w.apply_basis(i);
        exps[j] = e;
        if s == -1 && e % 2 == 1 {
            flip = !flip;
        }
    }
    (Monomial(exps), flip)
}

/// Reynolds operator: `(1/|g|) sum_w act(w, p)`, the projection onto
/// g-invariants. Summation follows the table's canonical element order.
pub fn reynolds(g: &GroupTable, p: &Polynomial) -> Result<Polynomial> {
    if g.size != p.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: p.num_vars(),
            got: g.size,
        });
    }
    let mut acc = Polynomial::zero(p.num_vars());
    for w in &g.elements {
        for (m, c) in &p.terms {
            let (exps, flip) = act_monomial(m, w);
            acc.add_term(exps, if flip { -c } else { c.clone() });
        }
    }
    let inv = Rat::one() / rat(g.order() as i64);
    Ok(acc.scale(&inv))
}

/// Invariance check on the table's generators; falls back to the full
/// table when the table carries no generating set.
pub fn is_invariant(g: &GroupTable, p: &Polynomial) -> Result<bool> {
    if g.generators.is_empty() {
        return is_invariant_full(g, p);
    }
    for w in &g.generators {
        if &p.act(w)? != p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Invariance checked against every element (slow mode).
pub fn is_invariant_full(g: &GroupTable, p: &Polynomial) -> Result<bool> {
    for w in &g.elements {
        if &p.act(w)? != p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All exponent vectors in `num_vars` variables of total degree <= `max_deg`.
pub fn monomials_up_to_degree(num_vars: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; num_vars];
    fn rec(i: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == current.len() {
            out.push(Monomial(current.clone()));
            return;
        }
        for e in 0..=remaining {
            current[i] = e;
            rec(i + 1, remaining - e, current, out);
        }
        current[i] = 0;
    }
    rec(0, max_deg, &mut current, &mut out);
    out.sort();
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest degree first reads better
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            use num_traits::Signed;
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.0.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            exp: Vec<u32>,
            num: serde_json::Value,
            den: serde_json::Value,
        }
        let mut s = serializer.serialize_struct("Polynomial", 2)?;
        s.serialize_field("vars", &self.num_vars)?;
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let (num, den) = rat_num_den(c);
                Term {
                    exp: m.0.clone(),
                    num,
                    den,
                }
            })
            .collect();
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_weyl, DEFAULT_ENUM_CAP};
    use crate::root_system::{RootSystem, TypeLabel};

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn arithmetic_basics() {
        let p = x(2, 0).add(&x(2, 1)); // x1 + x2
        let q = p.mul(&p);
        let expected = x(2, 0)
            .pow(2)
            .add(&x(2, 0).mul(&x(2, 1)).scale(&rat(2)))
            .add(&x(2, 1).pow(2));
        assert_eq!(q, expected);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn act_examples() {
        // sign flip of x1 fixes x1^2 + x2 in the x1^2 part
        let p = x(2, 0).pow(2).add(&x(2, 1));
        let flip = SignedPermutation::sign_flip(2, 0);
        assert_eq!(p.act(&flip).unwrap(), p);
        // transposition sends x1 to x2
        let t = SignedPermutation::transposition(2, 0, 1);
        assert_eq!(x(2, 0).act(&t).unwrap(), x(2, 1));
        // dimension mismatch is an error
        assert!(x(3, 0).act(&t).is_err());
    }

    #[test]
    fn act_is_group_action() {
        let w1 = SignedPermutation::new(vec![2, 0, 1], vec![-1, 1, 1]).unwrap();
        let w2 = SignedPermutation::new(vec![1, 2, 0], vec![1, -1, -1]).unwrap();
        let p = x(3, 0)
            .pow(3)
            .add(&x(3, 1).mul(&x(3, 2)))
            .sub(&x(3, 2).pow(2).scale(&rat(7)));
        let lhs = p.act(&w1.compose(&w2)).unwrap();
        let rhs = p.act(&w2).unwrap().act(&w1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn restrict_examples() {
        // x3^2 + x1 x2 restricted to 2 vars drops x3^2
        let p = x(3, 2).pow(2).add(&x(3, 0).mul(&x(3, 1)));
        assert_eq!(p.restrict(2), x(2, 0).mul(&x(2, 1)));
        // restricting to all variables is the identity
        assert_eq!(p.restrict(3), p);
        // e_2 of the squared variables keeps only the surviving product
        let e2_sq = x(3, 0)
            .pow(2)
            .mul(&x(3, 1).pow(2))
            .add(&x(3, 0).pow(2).mul(&x(3, 2).pow(2)))
            .add(&x(3, 1).pow(2).mul(&x(3, 2).pow(2)));
        assert_eq!(e2_sq.restrict(2), x(2, 0).pow(2).mul(&x(2, 1).pow(2)));
    }

    #[test]
    fn reynolds_examples() {
        let rs = RootSystem::build(TypeLabel::B, 2).unwrap();
        let w = generate_weyl(&rs, DEFAULT_ENUM_CAP).unwrap();
        // sign changes kill odd monomials
        assert!(reynolds(&w, &x(2, 0)).unwrap().is_zero());
        // projection fixes invariants, and is idempotent
        let inv = x(2, 0).pow(2).add(&x(2, 1).pow(2));
        assert_eq!(reynolds(&w, &inv).unwrap(), inv);
        let p = x(2, 0).pow(2);
        let r = reynolds(&w, &p).unwrap();
        assert_eq!(reynolds(&w, &r).unwrap(), r);
        assert!(is_invariant(&w, &r).unwrap());
        // already-symmetric polynomial on A_1
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let w = generate_weyl(&rs, DEFAULT_ENUM_CAP).unwrap();
        let p = x(2, 0).mul(&x(2, 1));
        assert_eq!(reynolds(&w, &p).unwrap(), p);
    }

    #[test]
    fn invariance_examples() {
        let rs = RootSystem::build(TypeLabel::B, 2).unwrap();
        let w = generate_weyl(&rs, DEFAULT_ENUM_CAP).unwrap();
        assert!(is_invariant(&w, &x(2, 0).pow(2).add(&x(2, 1).pow(2))).unwrap());
        assert!(is_invariant(&w, &Polynomial::constant(2, rat(5))).unwrap());
        assert!(!is_invariant(&w, &x(2, 0)).unwrap());
        // generator-mode and full-mode agree
        let p = x(2, 0).pow(2).mul(&x(2, 1).pow(2));
        assert_eq!(
            is_invariant(&w, &p).unwrap(),
            is_invariant_full(&w, &p).unwrap()
        );
    }

    #[test]
    fn trace_reduction() {
        let m = 3;
        // e_1 reduces to zero
        let e1 = x(m, 0).add(&x(m, 1)).add(&x(m, 2));
        assert!(e1.reduce_trace_zero().unwrap().is_zero());
        // x3 reduces to -x1 - x2
        let r = x(m, 2).reduce_trace_zero().unwrap();
        assert_eq!(r, x(m, 0).neg().sub(&x(m, 1)));
        assert!(x(1, 0).reduce_trace_zero().is_err());
    }

    #[test]
    fn diagonal_restriction() {
        // q tensor 1 evaluated on the diagonal gives back q
        let q = x(2, 0).pow(2).add(&x(2, 1).scale(&rat(3)));
        let q1 = q.extend(4);
        assert_eq!(q1.restrict_to_diagonal(), q);
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let ms = monomials_up_to_degree(2, 2);
        let degs: Vec<u32> = ms.iter().map(Monomial::degree).collect();
        let mut sorted = degs.clone();
        sorted.sort();
        assert_eq!(degs, sorted);
        assert_eq!(ms.len(), 6);
    }

    #[test]
    fn json_shape() {
        let p = x(4, 0)
            .pow(2)
            .add(&Polynomial::constant(4, crate::rat::ratio(1, 2)));
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["vars"], 4);
        assert_eq!(v["terms"][0]["exp"], serde_json::json!([0, 0, 0, 0]));
        assert_eq!(v["terms"][0]["num"], 1);
        assert_eq!(v["terms"][0]["den"], 2);
        assert_eq!(v["terms"][1]["exp"], serde_json::json!([2, 0, 0, 0]));
    }

    #[test]
    fn display_reads_naturally() {
        let p = x(2, 0).pow(2).sub(&x(2, 1).scale(&rat(3)));
        assert_eq!(p.to_string(), "x1^2 - 3*x2");
    }
}
