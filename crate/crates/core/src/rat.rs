//! Exact rational scalars and vectors.
//!
//! Everything in this crate computes over `Q`; there is no floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Vector with exact rational entries.
pub type RatVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(dim: usize) -> RatVec {
    vec![Rat::zero(); dim]
}

/// Standard basis vector `f_{i+1}` (0-based index).
pub fn unit_vec(dim: usize, i: usize) -> RatVec {
    let mut v = zero_vec(dim);
    v[i] = Rat::one();
    v
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_vec(a: &[Rat]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn scale_vec(c: &Rat, a: &[Rat]) -> RatVec {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Reflection of `v` in the hyperplane orthogonal to `root`:
/// `v - 2 (v, root)/(root, root) * root`.
pub fn reflect(v: &[Rat], root: &[Rat]) -> RatVec {
    let c = rat(2) * dot(v, root) / dot(root, root);
    sub_vec(v, &scale_vec(&c, root))
}

/// Row space of a set of vectors in reduced row echelon form.
/// Built once, then used for exact span-membership tests.
pub struct RowSpace {
    dim: usize,
    /// (pivot column, row) pairs; each row has 1 at its pivot and 0 at other pivots.
    rows: Vec<(usize, RatVec)>,
}

impl RowSpace {
    pub fn new(dim: usize, vectors: &[RatVec]) -> Self {
        let mut rows: Vec<(usize, RatVec)> = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), dim);
            if let Some((p, r)) = Self::reduce_against(&rows, v) {
                for (_, row) in rows.iter_mut() {
                    if !row[p].is_zero() {
                        let c = row[p].clone();
                        *row = sub_vec(row, &scale_vec(&c, &r));
                    }
                }
                rows.push((p, r));
                rows.sort_by_key(|(p, _)| *p);
            }
        }
        RowSpace { dim, rows }
    }

    /// Reduce `v` against the existing rows; `Some((pivot, normalized))` if nonzero.
    fn reduce_against(rows: &[(usize, RatVec)], v: &[Rat]) -> Option<(usize, RatVec)> {
        let mut w = v.to_vec();
        for (p, row) in rows {
            if !w[*p].is_zero() {
                let c = w[*p].clone();
                w = sub_vec(&w, &scale_vec(&c, row));
            }
        }
        let p = w.iter().position(|x| !x.is_zero())?;
        let c = w[p].clone();
        Some((p, w.iter().map(|x| x / &c).collect()))
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim);
        Self::reduce_against(&self.rows, v).is_none()
    }
}

/// Rank of a rational matrix given as rows.
pub fn matrix_rank(rows: &[RatVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    RowSpace::new(rows[0].len(), rows).rank()
}

fn bigint_value(n: &BigInt) -> Value {
    match i64::try_from(n.clone()) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

/// JSON form of a rational: plain integer when the denominator is 1,
/// `{"num": .., "den": ..}` otherwise.
pub fn rat_value(r: &Rat) -> Value {
    if r.denom().is_one() {
        bigint_value(r.numer())
    } else {
        let mut m = serde_json::Map::new();
        m.insert("num".into(), bigint_value(r.numer()));
        m.insert("den".into(), bigint_value(r.denom()));
        Value::Object(m)
    }
}

pub fn vec_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_value).collect())
}

/// Explicit `{"num","den"}` pair, used where the format always carries both.
pub fn rat_num_den(r: &Rat) -> (Value, Value) {
    (bigint_value(r.numer()), bigint_value(r.denom()))
}

pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}

/// Human-readable vector form, e.g. `(1, 3/2, -2)`.
pub fn vec_display(v: &[Rat]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(", "))
}
