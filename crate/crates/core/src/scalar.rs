//! Exact integer arithmetic shared by the counting and lattice-geometry code.
//!
//! Everything here is generic over [`ExactInt`], which any signed integer
//! type from `num` satisfies (`i64`, `i128`, `BigInt`, ...). Machine integers
//! are fine for determinants of small 0/±1 matrices; counts that grow
//! quickly should use `BigInt`.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use serde::Serializer;

/// Signed exact integer usable as a matrix entry or a counter.
pub trait ExactInt: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display {}

impl<T> ExactInt for T where T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display {}

pub(crate) fn from_usize<T: ExactInt>(x: usize) -> T {
    T::from_usize(x).expect("value does not fit the scalar type")
}

/// Writes a JSON-style integer when it fits `i64`, a decimal string otherwise.
pub fn serialize_exact<T: ExactInt, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.collect_str(x),
    }
}

/// Sequence form of [`serialize_exact`].
pub fn serialize_exact_seq<T: ExactInt, S: Serializer>(xs: &[T], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Exact(x))?;
    }
    seq.end()
}

struct Exact<'a, T>(&'a T);

impl<T: ExactInt> serde::Serialize for Exact<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_exact(self.0, s)
    }
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial<T: ExactInt>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact
        acc = acc * T::from_u64(n - i).expect("overflow") / T::from_u64(i + 1).expect("overflow");
    }
    acc
}

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
///
/// Every intermediate division is exact, so the computation stays in `T`.
pub fn determinant<T: ExactInt>(matrix: &[Vec<T>]) -> T {
    let size = matrix.len();
    if size == 0 {
        return T::one();
    }
    debug_assert!(matrix.iter().all(|row| row.len() == size));
    let mut m: Vec<Vec<T>> = matrix.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num / prev.clone();
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[size - 1][size - 1].clone()
}
