//! The Legendre polytope `P_n`: the convex hull of all `e_j - e_i` (`i != j`)
//! inside the hyperplane `x_1 + ... + x_{n+1} = 0`.
//!
//! Every face is `conv(I x J)` for disjoint nonempty node sets `I` (tails)
//! and `J` (heads), of dimension `|I| + |J| - 2`; facets are the faces with
//! `I ∪ J = {1, ..., n+1}`. Face enumeration is on demand.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{domain, validation, Error, Result};
use crate::representation::{all_arrows, Arrow, ArrowSet};
use crate::scalar::{determinant, ExactInt};

/// Largest `n` accepted by the exhaustive total-unimodularity scan.
pub const TU_SCAN_LIMIT: u32 = 3;

/// Node sets are bitmasks over `1..=n+1` (bit `k-1` for node `k`).
const MAX_NODES: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeFace {
    n: u32,
    tails: u32,
    heads: u32,
}

fn mask_of(nodes: &[u32], n: u32) -> Result<u32> {
    let mut mask = 0u32;
    for &k in nodes {
        if !(1..=n + 1).contains(&k) {
            return Err(validation(format!("node {k} outside 1..={}", n + 1)));
        }
        mask |= 1 << (k - 1);
    }
    Ok(mask)
}

fn nodes_of(mask: u32) -> Vec<u32> {
    (0..MAX_NODES).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

impl LatticeFace {
    pub fn new(n: u32, tails: &[u32], heads: &[u32]) -> Result<Self> {
        if n == 0 || n + 1 > MAX_NODES {
            return Err(domain(format!("n = {n} outside 1..={}", MAX_NODES - 1)));
        }
        let (i, j) = (mask_of(tails, n)?, mask_of(heads, n)?);
        Self::from_masks(n, i, j)
    }

    pub(crate) fn from_masks(n: u32, tails: u32, heads: u32) -> Result<Self> {
        if tails == 0 || heads == 0 {
            return Err(validation("face needs nonempty tail and head sets"));
        }
        if tails & heads != 0 {
            return Err(validation("tail and head sets of a face must be disjoint"));
        }
        Ok(Self { n, tails, heads })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn tails(&self) -> Vec<u32> {
        nodes_of(self.tails)
    }

    pub fn heads(&self) -> Vec<u32> {
        nodes_of(self.heads)
    }

    pub(crate) fn masks(&self) -> (u32, u32) {
        (self.tails, self.heads)
    }

    pub fn dim(&self) -> u32 {
        self.tails.count_ones() + self.heads.count_ones() - 2
    }

    pub fn is_facet(&self) -> bool {
        self.tails | self.heads == (1u32 << (self.n + 1)) - 1
    }

    pub fn contains(&self, a: &Arrow) -> bool {
        a.n() == self.n && self.tails >> (a.tail() - 1) & 1 == 1 && self.heads >> (a.head() - 1) & 1 == 1
    }

    /// The vertex set `I x J`, in lexicographic order.
    pub fn vertices(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for t in self.tails() {
            for h in self.heads() {
                out.push(Arrow::new(self.n, t, h).expect("disjoint I and J"));
            }
        }
        out
    }

    pub fn vertex_set(&self) -> Result<ArrowSet> {
        ArrowSet::from_arrows(self.n, &self.vertices())
    }
}

impl Serialize for LatticeFace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LatticeFace", 2)?;
        st.serialize_field("I", &self.tails())?;
        st.serialize_field("J", &self.heads())?;
        st.end()
    }
}

/// Integer point of `R^{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LatticeVector<T>(pub Vec<T>);

impl<T: ExactInt> LatticeVector<T> {
    pub fn zero(dim: usize) -> Self {
        Self(vec![T::zero(); dim])
    }

    pub fn coordinate_sum(&self) -> T {
        self.0.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
}

/// `e_head - e_tail`.
pub fn vertex_coordinates<T: ExactInt>(a: &Arrow) -> LatticeVector<T> {
    let mut v = LatticeVector::zero(a.n() as usize + 1);
    v.0[a.head() as usize - 1] = T::one();
    v.0[a.tail() as usize - 1] = -T::one();
    v
}

/// All faces `(I, J)` of `P_n`, optionally only those of dimension `dim`.
pub fn enumerate_faces(n: u32, dim: Option<u32>) -> Result<Vec<LatticeFace>> {
    if n == 0 || n + 1 > 20 {
        return Err(domain(format!("face enumeration supports 1 <= n <= 19, got {n}")));
    }
    if let Some(d) = dim {
        if d > n - 1 {
            return Err(domain(format!("face dimension {d} outside 0..={}", n - 1)));
        }
    }
    let nodes = n + 1;
    let mut out = Vec::new();
    // each node goes to I, J, or neither
    let total = 3u64.pow(nodes);
    for code in 0..total {
        let (mut c, mut tails, mut heads) = (code, 0u32, 0u32);
        for b in 0..nodes {
            match c % 3 {
                1 => tails |= 1 << b,
                2 => heads |= 1 << b,
                _ => {}
            }
            c /= 3;
        }
        if tails == 0 || heads == 0 {
            continue;
        }
        let face = LatticeFace { n, tails, heads };
        if dim.is_none_or(|d| face.dim() == d) {
            out.push(face);
        }
    }
    out.sort();
    Ok(out)
}

/// The facets of `P_n` itself: one per proper nonempty tail set.
pub fn polytope_facets(n: u32) -> Vec<LatticeFace> {
    let full = (1u32 << (n + 1)) - 1;
    (1..full)
        .map(|tails| LatticeFace {
            n,
            tails,
            heads: full & !tails,
        })
        .collect()
}

/// Codimension-one faces of `f`: drop one tail (when `|I| >= 2`) or one head
/// (when `|J| >= 2`).
pub fn face_facets(f: &LatticeFace) -> Result<Vec<LatticeFace>> {
    if f.dim() == 0 {
        return Err(domain("a vertex has no facets"));
    }
    let mut out = Vec::new();
    let drop_each = |mask: u32| -> Vec<u32> {
        if mask.count_ones() < 2 {
            return Vec::new();
        }
        (0..MAX_NODES)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| mask & !(1 << b))
            .collect()
    };
    for tails in drop_each(f.tails) {
        out.push(LatticeFace { tails, ..*f });
    }
    for heads in drop_each(f.heads) {
        out.push(LatticeFace { heads, ..*f });
    }
    Ok(out)
}

/// Facets of `P_n` containing the vertex `a`.
pub fn maximal_faces_containing(a: &Arrow) -> Vec<LatticeFace> {
    polytope_facets(a.n())
        .into_iter()
        .filter(|f| f.contains(a))
        .collect()
}

/// The smallest face of `P_n` containing all of `arrows`, if any: it exists
/// iff no node is both a head and a tail.
pub fn smallest_face_containing(n: u32, arrows: &[Arrow]) -> Option<LatticeFace> {
    let (mut tails, mut heads) = (0u32, 0u32);
    for a in arrows {
        tails |= 1 << (a.tail() - 1);
        heads |= 1 << (a.head() - 1);
    }
    LatticeFace::from_masks(n, tails, heads).ok()
}

/// Forest test on the undirected graph underlying `arrows`.
///
/// For arrow sets inside a common face this decides affine independence.
pub fn is_simplex_set(arrows: &[Arrow]) -> bool {
    let size = arrows.iter().map(|a| a.n() as usize + 2).max().unwrap_or(0);
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in arrows {
        let (x, y) = (find(&mut parent, a.tail() as usize), find(&mut parent, a.head() as usize));
        if x == y {
            return false;
        }
        parent[x] = y;
    }
    true
}

/// Partial sums `c_i = x_1 + ... + x_i` (`i = 1..n`): coordinates of a
/// zero-sum vector in the lattice basis `e_i - e_{i+1}`.
fn hyperplane_coordinates<T: ExactInt>(v: &LatticeVector<T>) -> Vec<T> {
    let mut acc = T::zero();
    let mut out = Vec::with_capacity(v.0.len().saturating_sub(1));
    for x in &v.0[..v.0.len() - 1] {
        acc = acc + x.clone();
        out.push(acc.clone());
    }
    out
}

/// Normalized volume of the simplex spanned by `points` in the zero-sum
/// hyperplane lattice: `|det|` of the edge vectors in the basis `e_i - e_{i+1}`.
pub fn simplex_normalized_volume<T: ExactInt>(points: &[LatticeVector<T>]) -> Result<T> {
    let first = points.first().ok_or_else(|| domain("empty point set"))?;
    let ambient = first.0.len();
    if ambient < 2 || points.len() != ambient {
        return Err(domain(format!(
            "need {ambient} points in R^{ambient} for a full simplex, got {}",
            points.len()
        )));
    }
    for p in points {
        if p.0.len() != ambient {
            return Err(domain("points have mixed dimensions"));
        }
        if !p.coordinate_sum().is_zero() {
            return Err(domain("point does not lie in the zero-sum hyperplane"));
        }
    }
    let rows: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| hyperplane_coordinates(&p.sub(first)))
        .collect();
    Ok(determinant(&rows).abs())
}

/// Cone over a boundary simplex of `P_n` with apex at the origin.
pub fn cone_volume<T: ExactInt>(simplex: &[Arrow]) -> Result<T> {
    let n = simplex.first().ok_or_else(|| domain("empty simplex"))?.n();
    let mut points = vec![LatticeVector::zero(n as usize + 1)];
    points.extend(simplex.iter().map(vertex_coordinates));
    simplex_normalized_volume(&points)
}

/// The `(n+1) x n(n+1)` matrix whose columns are the vertices of `P_n`.
pub fn incidence_matrix<T: ExactInt>(n: u32) -> Vec<Vec<T>> {
    let cols: Vec<LatticeVector<T>> = all_arrows(n).iter().map(vertex_coordinates).collect();
    (0..=n as usize)
        .map(|r| cols.iter().map(|c| c.0[r].clone()).collect())
        .collect()
}

fn subsets(size: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, size: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..size {
            if size - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, size, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, size, k, &mut Vec::new(), &mut out);
    out
}

/// Whether every square submatrix has determinant in `{-1, 0, 1}`.
pub fn is_totally_unimodular<T: ExactInt>(matrix: &[Vec<T>]) -> bool {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    for k in 1..=rows.min(cols) {
        let col_sets = subsets(cols, k);
        for rs in subsets(rows, k) {
            for cs in &col_sets {
                let sub: Vec<Vec<T>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| matrix[r][c].clone()).collect())
                    .collect();
                if determinant(&sub).abs() > T::one() {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive total-unimodularity scan of the vertex matrix, gated to
/// `n <= TU_SCAN_LIMIT`.
pub fn incidence_is_totally_unimodular(n: u32) -> Result<bool> {
    incidence_is_totally_unimodular_with_limit(n, TU_SCAN_LIMIT)
}

pub fn incidence_is_totally_unimodular_with_limit(n: u32, limit: u32) -> Result<bool> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    if n > limit {
        return Err(Error::UnsupportedScale {
            what: "total unimodularity scan",
            n,
            limit,
        });
    }
    Ok(is_totally_unimodular(&incidence_matrix::<i64>(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::all_arrows;

    fn arrow(n: u32, t: u32, h: u32) -> Arrow {
        Arrow::new(n, t, h).unwrap()
    }

    // rank by fraction-free elimination over i128
    fn rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let (a, b) = (m[r][c], m[i][c]);
                    for j in 0..cols {
                        m[i][j] = m[i][j] * a - m[r][j] * b;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn affine_rank(arrows: &[Arrow]) -> usize {
        let pts: Vec<LatticeVector<i64>> = arrows.iter().map(vertex_coordinates).collect();
        let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| p.sub(&pts[0]).0).collect();
        rank(&diffs)
    }

    #[test]
    fn coordinates() {
        assert_eq!(vertex_coordinates::<i64>(&arrow(2, 2, 1)).0, vec![1, -1, 0]);
        assert_eq!(vertex_coordinates::<i64>(&arrow(2, 1, 3)).0, vec![-1, 0, 1]);
        for a in all_arrows(4) {
            let v = vertex_coordinates::<i64>(&a);
            assert_eq!(v.coordinate_sum(), 0);
            let w = vertex_coordinates::<i64>(&a.reversed());
            assert_eq!(v.0.iter().map(|x| -x).collect::<Vec<_>>(), w.0);
        }
    }

    #[test]
    fn face_counts() {
        assert_eq!(enumerate_faces(2, Some(0)).unwrap().len(), 6);
        let edges = enumerate_faces(2, Some(1)).unwrap();
        assert_eq!(edges.len(), 6);
        assert!(edges.iter().all(LatticeFace::is_facet));
        let facets: Vec<_> = enumerate_faces(3, Some(2)).unwrap();
        assert_eq!(facets.len(), 14);
        let squares = facets.iter().filter(|f| f.tails().len() == 2).count();
        assert_eq!(squares, 6);
        assert!(enumerate_faces(3, Some(3)).is_err());
        for n in 1..=5 {
            let facets: Vec<_> = enumerate_faces(n, None).unwrap().into_iter().filter(|f| f.is_facet()).collect();
            assert_eq!(facets.len(), (1 << (n + 1)) - 2);
            assert_eq!(polytope_facets(n).len(), facets.len());
            assert_eq!(enumerate_faces(n, Some(0)).unwrap().len(), (n * (n + 1)) as usize);
        }
    }

    #[test]
    fn central_symmetry_of_faces() {
        let faces = enumerate_faces(4, None).unwrap();
        for f in &faces {
            let g = LatticeFace::new(4, &f.heads(), &f.tails()).unwrap();
            assert!(faces.contains(&g));
        }
    }

    #[test]
    fn facets_of_faces() {
        let f = LatticeFace::new(3, &[1, 2], &[3]).unwrap();
        let got = face_facets(&f).unwrap();
        assert_eq!(
            got,
            vec![
                LatticeFace::new(3, &[2], &[3]).unwrap(),
                LatticeFace::new(3, &[1], &[3]).unwrap()
            ]
        );
        let square = LatticeFace::new(3, &[1, 2], &[3, 4]).unwrap();
        assert_eq!(face_facets(&square).unwrap().len(), 4);
        assert!(face_facets(&LatticeFace::new(3, &[1], &[2]).unwrap()).is_err());
    }

    #[test]
    fn facet_count_matches_subface_scan() {
        for n in 1..=4 {
            let faces = enumerate_faces(n, None).unwrap();
            for f in faces.iter().filter(|f| f.dim() >= 1) {
                let verts = f.vertices();
                // codim-one faces of f found by scanning all faces inside it
                let scanned = faces
                    .iter()
                    .filter(|g| g.dim() + 1 == f.dim() && g.vertices().iter().all(|v| verts.contains(v)))
                    .count();
                let (i, j) = (f.tails().len(), f.heads().len());
                let formula = if i >= 2 { i } else { 0 } + if j >= 2 { j } else { 0 };
                assert_eq!(scanned, formula);
                assert_eq!(face_facets(f).unwrap().len(), formula);
            }
        }
    }

    #[test]
    fn dimension_matches_affine_rank() {
        for n in 1..=4 {
            for f in enumerate_faces(n, None).unwrap() {
                assert_eq!(affine_rank(&f.vertices()), f.dim() as usize);
            }
        }
    }

    #[test]
    fn maximal_faces() {
        let got = maximal_faces_containing(&arrow(2, 2, 1));
        let mut want = vec![
            LatticeFace::new(2, &[2], &[1, 3]).unwrap(),
            LatticeFace::new(2, &[2, 3], &[1]).unwrap(),
        ];
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want);
        assert_eq!(maximal_faces_containing(&arrow(3, 4, 1)).len(), 4);
        for n in 1..=5 {
            for a in all_arrows(n) {
                assert_eq!(maximal_faces_containing(&a).len(), 1 << (n - 1));
            }
        }
    }

    #[test]
    fn common_face_iff_no_head_is_a_tail() {
        let n = 3;
        let arrows = all_arrows(n);
        for bits in 0u32..(1 << arrows.len()) {
            if bits.count_ones() > 4 {
                continue;
            }
            let set: Vec<Arrow> = (0..arrows.len()).filter(|i| bits >> i & 1 == 1).map(|i| arrows[i]).collect();
            let clash = set.iter().any(|a| set.iter().any(|b| a.head() == b.tail()));
            let in_face = polytope_facets(n).iter().any(|f| set.iter().all(|a| f.contains(a)));
            assert_eq!(!clash, in_face);
            assert_eq!(smallest_face_containing(n, &set).is_some() || set.is_empty(), in_face);
        }
    }

    #[test]
    fn simplex_sets() {
        assert!(is_simplex_set(&[arrow(3, 1, 2), arrow(3, 3, 2), arrow(3, 3, 4)]));
        assert!(!is_simplex_set(&[arrow(3, 1, 3), arrow(3, 1, 4), arrow(3, 2, 3), arrow(3, 2, 4)]));
        assert!(is_simplex_set(&[]));
        // forest iff affinely independent, for subsets of a common face
        for f in enumerate_faces(4, None).unwrap() {
            let verts = f.vertices();
            if verts.len() > 9 {
                continue;
            }
            for bits in 1u32..(1 << verts.len()) {
                let set: Vec<Arrow> = (0..verts.len()).filter(|i| bits >> i & 1 == 1).map(|i| verts[i]).collect();
                assert_eq!(is_simplex_set(&set), affine_rank(&set) + 1 == set.len());
            }
        }
    }

    #[test]
    fn volumes() {
        let origin = LatticeVector::<i64>::zero(3);
        let pts = vec![origin.clone(), vertex_coordinates(&arrow(2, 2, 1)), vertex_coordinates(&arrow(2, 3, 1))];
        assert_eq!(simplex_normalized_volume(&pts).unwrap(), 1);
        let degenerate = vec![origin.clone(), vertex_coordinates(&arrow(2, 2, 1)), vertex_coordinates(&arrow(2, 2, 1))];
        assert_eq!(simplex_normalized_volume(&degenerate).unwrap(), 0);
        assert!(simplex_normalized_volume(&pts[..2]).is_err());
        let off = vec![LatticeVector(vec![1i64, 0, 0]), origin.clone(), origin];
        assert!(simplex_normalized_volume(&off).is_err());
        // doubled edge vectors scale the volume by 2^n
        let big = vec![LatticeVector::<i64>::zero(3), LatticeVector(vec![2, -2, 0]), LatticeVector(vec![2, 0, -2])];
        assert_eq!(simplex_normalized_volume(&big).unwrap(), 4);
    }

    #[test]
    fn total_unimodularity() {
        for n in 1..=3 {
            assert!(incidence_is_totally_unimodular(n).unwrap());
        }
        assert!(matches!(incidence_is_totally_unimodular(4), Err(Error::UnsupportedScale { .. })));
        let bad = vec![vec![1i64, 1], vec![-1, 1]];
        assert!(!is_totally_unimodular(&bad));
    }

    #[test]
    fn face_json() {
        let f = LatticeFace::new(3, &[2, 1], &[4]).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"I":[1,2],"J":[4]}"#);
    }
}
