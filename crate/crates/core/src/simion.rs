//! The type-B associahedron as a flag complex on arrows.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{validation, Error, Result};
use crate::representation::{
    all_arrows, arrows_compatible, span_nests, spans_cross, Arrow, ArrowSet, MAX_SET_N,
};
use crate::scalar::{binomial, from_usize, serialize_exact_seq, ExactInt};
use crate::Count;

/// Default bound on `n` for exhaustive face enumeration.
pub const ENUMERATION_LIMIT: u32 = 7;

/// A set of pairwise compatible arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NoncrossingFace {
    arrows: ArrowSet,
}

impl NoncrossingFace {
    pub fn new(arrows: ArrowSet) -> Result<Self> {
        let list = arrows.to_vec();
        if !is_face(&list) {
            return Err(validation(format!("{arrows} is not a face")));
        }
        Ok(Self { arrows })
    }

    pub fn from_arrows(n: u32, arrows: &[Arrow]) -> Result<Self> {
        Self::new(ArrowSet::from_arrows(n, arrows)?)
    }

    pub fn n(&self) -> u32 {
        self.arrows.n()
    }

    pub fn arrows(&self) -> ArrowSet {
        self.arrows
    }

    pub fn to_vec(&self) -> Vec<Arrow> {
        self.arrows.to_vec()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.len() as i64 - 1
    }
}

impl Serialize for NoncrossingFace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.arrows.serialize(s)
    }
}

/// Pairwise compatible; arrows with different `n` never form a face.
pub fn is_face(s: &[Arrow]) -> bool {
    s.iter().enumerate().all(|(i, a)| {
        s[i + 1..]
            .iter()
            .all(|b| a != b && arrows_compatible(a, b).unwrap_or(false))
    })
}

fn compatibility_rows(n: u32) -> Vec<u128> {
    let arrows = all_arrows(n);
    arrows
        .iter()
        .map(|a| {
            arrows.iter().fold(0u128, |acc, b| {
                if a != b && arrows_compatible(a, b).unwrap_or(false) {
                    acc | 1u128 << b.index()
                } else {
                    acc
                }
            })
        })
        .collect()
}

fn check_gate(n: u32, limit: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let limit = limit.min(MAX_SET_N);
    if n > limit {
        return Err(Error::UnsupportedScale {
            what: "face enumeration",
            n,
            limit,
        });
    }
    Ok(())
}

/// Calls `visit` on every clique of the compatibility graph, restricted to
/// `dim + 1` arrows when `dim` is given.
pub fn for_each_face(n: u32, dim: Option<i64>, limit: u32, mut visit: impl FnMut(ArrowSet)) -> Result<()> {
    check_gate(n, limit)?;
    let rows = compatibility_rows(n);
    let want = dim.map(|d| d + 1);
    if matches!(want, Some(k) if k < 0 || k > n as i64) {
        return Ok(());
    }
    fn grow(
        n: u32,
        rows: &[u128],
        clique: u128,
        size: i64,
        candidates: u128,
        want: Option<i64>,
        visit: &mut dyn FnMut(ArrowSet),
    ) {
        if want.is_none() || want == Some(size) {
            visit(ArrowSet::from_bits(n, clique));
        }
        if want == Some(size) {
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(n, rows, clique | 1u128 << i, size + 1, rest & rows[i], want, visit);
        }
    }
    let all = rows.iter().enumerate().fold(0u128, |acc, (i, _)| acc | 1u128 << i);
    grow(n, &rows, 0, 0, all, want, &mut visit);
    Ok(())
}

pub fn enumerate_faces(n: u32, dim: Option<i64>) -> Result<Vec<NoncrossingFace>> {
    enumerate_faces_with_limit(n, dim, ENUMERATION_LIMIT)
}

pub fn enumerate_faces_with_limit(n: u32, dim: Option<i64>, limit: u32) -> Result<Vec<NoncrossingFace>> {
    let mut out = Vec::new();
    for_each_face(n, dim, limit, |arrows| out.push(NoncrossingFace { arrows }))?;
    Ok(out)
}

pub fn enumerate_facets(n: u32) -> Result<Vec<NoncrossingFace>> {
    enumerate_faces(n, Some(n as i64 - 1))
}

pub fn is_facet(s: &[Arrow]) -> bool {
    match s.first() {
        None => false,
        Some(a) => s.len() == a.n() as usize && is_face(s),
    }
}

/// The direct characterization of facets by their arrows.
pub fn satisfies_facet_conditions(s: &[Arrow]) -> bool {
    let Some(first) = s.first() else {
        return false;
    };
    let n = first.n();
    if s.len() != n as usize || s.iter().any(|a| a.n() != n) {
        return false;
    }
    let diameters: Vec<&Arrow> = s.iter().filter(|a| a.is_diameter()).collect();
    if diameters.len() != 1 {
        return false;
    }
    let k = diameters[0].head();
    let (backward, forward): (Vec<&Arrow>, Vec<&Arrow>) = s.iter().partition(|a| a.is_backward());
    let distinct = |a: &Arrow, b: &Arrow| {
        let mut e = [a.tail(), a.head(), b.tail(), b.head()];
        e.sort_unstable();
        e.windows(2).all(|w| w[0] != w[1])
    };
    let weakly_nested = |a: &Arrow, b: &Arrow| {
        let (sa, sb) = (a.span(), b.span());
        (sa.0 <= sb.0 && sb.1 <= sa.1) || (sb.0 <= sa.0 && sa.1 <= sb.1)
    };
    let no_back_nests_forward = backward
        .iter()
        .all(|b| forward.iter().all(|f| !(distinct(b, f) && span_nests(b, f))));
    let type_one_has_no_forward = k != 1 || forward.is_empty();
    let forward_nest = forward.iter().all(|f| f.tail() < k && f.head() >= k)
        && forward
            .iter()
            .enumerate()
            .all(|(i, a)| forward[i + 1..].iter().all(|b| weakly_nested(a, b)));
    let heads_not_tails = s.iter().all(|a| s.iter().all(|b| a.head() != b.tail()));
    let no_crossing = s
        .iter()
        .enumerate()
        .all(|(i, a)| s[i + 1..].iter().all(|b| !spans_cross(a, b)));
    no_back_nests_forward && type_one_has_no_forward && forward_nest && heads_not_tails && no_crossing
}

/// The `k` of the unique diameter arrow `(k-1, k)`, or `(n+1, 1)` for `k = 1`.
pub fn facet_type(s: &[Arrow]) -> Result<u32> {
    let diameters: Vec<&Arrow> = s.iter().filter(|a| a.is_diameter()).collect();
    match diameters.as_slice() {
        [d] if is_facet(s) => Ok(d.head()),
        _ => Err(Error::Invariant(format!(
            "not a facet: {} arrows, {} diameter arrows",
            s.len(),
            diameters.len()
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FMode {
    Formula,
    Enumerated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HMode {
    Formula,
    FromF,
}

/// `f_{-1}, f_0, ..., f_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceVectorOf<T> {
    n: u32,
    entries: Vec<T>,
}

impl<T: ExactInt> FaceVectorOf<T> {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Includes `f_{-1} = 1`.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// Number of faces of dimension `d`, `-1 <= d <= n-1`.
    pub fn get(&self, d: i64) -> Option<&T> {
        usize::try_from(d + 1).ok().and_then(|i| self.entries.get(i))
    }

    pub fn total(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, x| acc + x.clone())
    }
}

impl<T: ExactInt> Serialize for FaceVectorOf<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_exact_seq(&self.entries, s)
    }
}

pub fn f_vector_of<T: ExactInt>(n: u32, mode: FMode, limit: u32) -> Result<FaceVectorOf<T>> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let entries = match mode {
        FMode::Formula => (0..=n as u64)
            .map(|j| binomial::<T>(n as u64 + j, j) * binomial::<T>(n as u64, j))
            .collect(),
        FMode::Enumerated => {
            let mut counts = vec![0usize; n as usize + 1];
            for_each_face(n, None, limit, |s| counts[s.len()] += 1)?;
            counts
                .into_iter()
                .map(from_usize)
                .collect()
        }
    };
    Ok(FaceVectorOf { n, entries })
}

pub fn f_vector(n: u32, mode: FMode) -> Result<crate::FaceVector> {
    f_vector_of::<Count>(n, mode, ENUMERATION_LIMIT)
}

/// `h_k = sum_{i<=k} (-1)^{k-i} C(n-i, k-i) f_{i-1}`.
pub fn h_from_f<T: ExactInt>(f: &FaceVectorOf<T>) -> Vec<T> {
    let n = f.n as u64;
    (0..=n)
        .map(|k| {
            (0..=k).fold(T::zero(), |acc, i| {
                let term = binomial::<T>(n - i, k - i) * f.entries[i as usize].clone();
                if (k - i) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

pub fn h_vector(n: u32, mode: HMode) -> Result<Vec<Count>> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(match mode {
        HMode::Formula => (0..=n as u64)
            .map(|i| {
                let c = binomial::<Count>(n as u64, i);
                &c * &c
            })
            .collect(),
        HMode::FromF => h_from_f(&f_vector(n, FMode::Formula)?),
    })
}

/// Facets grouped by type.
pub fn facets_by_type(n: u32) -> Result<BTreeMap<u32, Vec<NoncrossingFace>>> {
    let mut out: BTreeMap<u32, Vec<NoncrossingFace>> = (1..=n + 1).map(|k| (k, Vec::new())).collect();
    for f in enumerate_facets(n)? {
        let k = facet_type(&f.to_vec())?;
        out.get_mut(&k).expect("type in range").push(f);
    }
    Ok(out)
}
