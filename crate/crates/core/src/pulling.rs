//! Pulling triangulations of the boundary of `P_n`.
//!
//! Given a linear order on the vertices, the recursion takes the least
//! vertex `v` of the current polytopal complex, cones `v` over the
//! triangulations of those facets of the maximal cells through `v` that miss
//! `v`, and recurses on the complex of faces avoiding `v`. No new vertices are
//! introduced. The triangulation of a single face `conv(I x J)` depends only on
//! the order restricted to that face, so it is memoized by `(I, J)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{domain, validation, Result};
use crate::legendre::{face_facets, is_simplex_set, polytope_facets, smallest_face_containing, LatticeFace};
use crate::representation::{all_arrows, Arrow, ArrowSet, MAX_SET_N};

/// A total order on the `n(n+1)` vertices of `P_n`; the least is pulled first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullOrder {
    n: u32,
    sequence: Vec<Arrow>,
    rank: Vec<usize>,
}

impl PullOrder {
    pub fn new(n: u32, sequence: Vec<Arrow>) -> Result<Self> {
        if n == 0 {
            return Err(domain("n must be at least 1"));
        }
        let total = (n as usize) * (n as usize + 1);
        if sequence.len() != total {
            return Err(validation(format!(
                "order lists {} arrows, expected {total}",
                sequence.len()
            )));
        }
        let mut rank = vec![usize::MAX; total];
        for (r, a) in sequence.iter().enumerate() {
            if a.n() != n {
                return Err(validation(format!("arrow {a} has n = {}, expected {n}", a.n())));
            }
            if rank[a.index()] != usize::MAX {
                return Err(validation(format!("arrow {a} appears twice in the order")));
            }
            rank[a.index()] = r;
        }
        Ok(Self { n, sequence, rank })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sequence(&self) -> &[Arrow] {
        &self.sequence
    }

    pub fn rank(&self, a: &Arrow) -> usize {
        self.rank[a.index()]
    }

    pub fn precedes(&self, a: &Arrow, b: &Arrow) -> bool {
        self.rank(a) < self.rank(b)
    }

    pub fn least<'a>(&self, arrows: impl IntoIterator<Item = &'a Arrow>) -> Option<Arrow> {
        arrows.into_iter().min_by_key(|a| self.rank(a)).copied()
    }
}

impl Serialize for PullOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.sequence.serialize(s)
    }
}

/// Named ways of building a [`PullOrder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderScheme {
    /// `(i, j)` before `(i', j')` iff `i < i'`, or `i = i'` and `j < j'`.
    Lex,
    /// Backward arrows first, then forward; each class in reverse
    /// lexicographic order.
    RevlexBackwardFirst,
    /// Backward before forward; within a class by span length, ties broken
    /// lexicographically.
    SimionCanonical,
    Explicit(Vec<Arrow>),
}

fn span_len(a: &Arrow) -> u32 {
    a.tail().abs_diff(a.head())
}

pub fn make_order(n: u32, scheme: &OrderScheme) -> Result<PullOrder> {
    let mut arrows = all_arrows(n);
    match scheme {
        OrderScheme::Lex => {}
        OrderScheme::RevlexBackwardFirst => {
            arrows.sort_by_key(|a| (a.is_forward(), std::cmp::Reverse((a.tail(), a.head()))));
        }
        OrderScheme::SimionCanonical => {
            arrows.sort_by_key(|a| (a.is_forward(), span_len(a), a.tail(), a.head()));
        }
        OrderScheme::Explicit(list) => arrows = list.clone(),
    }
    PullOrder::new(n, arrows)
}

/// Uniformly shuffled order.
pub fn random_order(n: u32, seed: u64) -> Result<PullOrder> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arrows = all_arrows(n);
    arrows.shuffle(&mut rng);
    PullOrder::new(n, arrows)
}

/// Strict precedence forced by the Simion conditions `(1)`-`(3)`.
fn simion_forces(a: &Arrow, b: &Arrow) -> bool {
    if a.is_backward() != b.is_backward() {
        return a.is_backward();
    }
    let (sa, sb) = (a.span(), b.span());
    a != b && sb.0 <= sa.0 && sa.1 <= sb.1
}

/// Random linear extension of the Simion conditions: at each step a minimal
/// remaining arrow is picked uniformly.
pub fn random_simion_order(n: u32, seed: u64) -> Result<PullOrder> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining = all_arrows(n);
    let mut sequence = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let minimal: Vec<usize> = (0..remaining.len())
            .filter(|&i| !remaining.iter().any(|b| simion_forces(b, &remaining[i])))
            .collect();
        let pick = minimal[rng.gen_range(0..minimal.len())];
        sequence.push(remaining.swap_remove(pick));
    }
    PullOrder::new(n, sequence)
}

/// Backward arrows precede forward ones, and within each direction a
/// nested span precedes the span nesting it.
pub fn is_valid_simion_order(order: &PullOrder) -> bool {
    let seq = order.sequence();
    seq.iter()
        .all(|a| seq.iter().all(|b| !simion_forces(a, b) || order.precedes(a, b)))
}

/// A simplicial complex on arrows, stored by its maximal faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: u32,
    facets: BTreeSet<ArrowSet>,
}

impl SimplicialComplex {
    /// Keeps only the inclusion-maximal simplices.
    pub fn from_simplices(n: u32, simplices: impl IntoIterator<Item = ArrowSet>) -> Result<Self> {
        ArrowSet::empty(n)?;
        let mut all: Vec<ArrowSet> = simplices.into_iter().collect::<HashSet<_>>().into_iter().collect();
        for s in &all {
            if s.n() != n {
                return Err(domain("simplex with mismatched n"));
            }
        }
        all.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut facets: Vec<ArrowSet> = Vec::new();
        for s in all {
            if !facets.iter().any(|f| s.is_subset(f)) {
                facets.push(s);
            }
        }
        Ok(Self {
            n,
            facets: facets.into_iter().collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn facets(&self) -> &BTreeSet<ArrowSet> {
        &self.facets
    }

    /// Facets as arrow lists, sorted lexicographically.
    pub fn sorted_facets(&self) -> Vec<Vec<Arrow>> {
        let mut out: Vec<Vec<Arrow>> = self.facets.iter().map(ArrowSet::to_vec).collect();
        out.sort();
        out
    }

    pub fn contains_face(&self, s: &ArrowSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(f))
    }

    pub fn vertices(&self) -> ArrowSet {
        let empty = ArrowSet::empty(self.n).expect("n checked at construction");
        self.facets.iter().fold(empty, |acc, f| acc.union(f))
    }

    /// Every face, the empty face included.
    pub fn all_faces(&self) -> HashSet<ArrowSet> {
        let mut out = HashSet::new();
        for f in &self.facets {
            let bits = f.bits();
            // walk all submasks of the facet
            let mut sub = bits;
            loop {
                out.insert(ArrowSet::from_bits(self.n, sub));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & bits;
            }
        }
        out
    }

    /// `f_{-1}, f_0, ..., f_{d}` with `f_{-1} = 1`.
    pub fn f_vector(&self) -> Vec<u64> {
        let faces = self.all_faces();
        let top = faces.iter().map(ArrowSet::len).max().unwrap_or(0);
        let mut f = vec![0u64; top + 1];
        for s in &faces {
            f[s.len()] += 1;
        }
        f
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(ArrowSet::len);
        match sizes.next() {
            None => true,
            Some(k) => sizes.all(|s| s == k),
        }
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SimplicialComplex", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("facets", &self.sorted_facets())?;
        st.end()
    }
}

struct Engine<'a> {
    order: &'a PullOrder,
    memo: HashMap<(u32, u32), Rc<Vec<u128>>>,
}

fn bit(a: &Arrow) -> u128 {
    1u128 << a.index()
}

impl Engine<'_> {
    /// Maximal simplices of the pulling triangulation of `conv(I x J)`.
    fn face(&mut self, f: &LatticeFace) -> Rc<Vec<u128>> {
        if let Some(hit) = self.memo.get(&f.masks()) {
            return Rc::clone(hit);
        }
        let verts = f.vertices();
        let v = self.order.least(&verts).expect("faces are nonempty");
        let out = if f.dim() == 0 {
            vec![bit(&v)]
        } else {
            let mut out = Vec::new();
            for g in face_facets(f).expect("dim >= 1") {
                if g.contains(&v) {
                    continue;
                }
                for s in self.face(&g).iter() {
                    out.push(s | bit(&v));
                }
            }
            out
        };
        let out = Rc::new(out);
        self.memo.insert(f.masks(), Rc::clone(&out));
        out
    }
}

fn contained_in(a: &LatticeFace, b: &LatticeFace) -> bool {
    let ((ai, aj), (bi, bj)) = (a.masks(), b.masks());
    ai & !bi == 0 && aj & !bj == 0
}

fn maximal_cells(mut cells: Vec<LatticeFace>) -> Vec<LatticeFace> {
    cells.sort_by_key(|c| std::cmp::Reverse(c.dim()));
    cells.dedup();
    let mut out: Vec<LatticeFace> = Vec::new();
    for c in cells {
        if !out.iter().any(|m| contained_in(&c, m)) {
            out.push(c);
        }
    }
    out
}

/// Pulling triangulation of the boundary complex of `P_n`.
pub fn pull_triangulate(n: u32, order: &PullOrder) -> Result<SimplicialComplex> {
    if order.n() != n {
        return Err(validation(format!("order is for n = {}, not {n}", order.n())));
    }
    if n > MAX_SET_N {
        return Err(domain(format!("triangulation supports n <= {MAX_SET_N}")));
    }
    let mut engine = Engine {
        order,
        memo: HashMap::new(),
    };
    let mut cells = polytope_facets(n);
    let mut simplices: Vec<u128> = Vec::new();
    while !cells.is_empty() {
        let v = cells
            .iter()
            .flat_map(LatticeFace::vertices)
            .min_by_key(|a| order.rank(a))
            .expect("cells are nonempty");
        let mut rest = Vec::new();
        for cell in cells {
            if !cell.contains(&v) {
                rest.push(cell);
                continue;
            }
            if cell.dim() == 0 {
                simplices.push(bit(&v));
                continue;
            }
            for g in face_facets(&cell).expect("dim >= 1") {
                if g.contains(&v) {
                    continue;
                }
                simplices.extend(engine.face(&g).iter().map(|s| s | bit(&v)));
                rest.push(g);
            }
        }
        cells = maximal_cells(rest);
    }
    SimplicialComplex::from_simplices(n, simplices.into_iter().map(|b| ArrowSet::from_bits(n, b)))
}

/// Inclusion-minimal vertex sets that are not faces of `c`.
pub fn minimal_nonfaces(c: &SimplicialComplex) -> Vec<ArrowSet> {
    let faces = c.all_faces();
    let vertices: Vec<Arrow> = c.vertices().to_vec();
    let mut found: HashSet<ArrowSet> = HashSet::new();
    for f in &faces {
        for x in &vertices {
            if f.contains(x) {
                continue;
            }
            let s = f.with(*x);
            if faces.contains(&s) || found.contains(&s) {
                continue;
            }
            if s.iter().all(|y| faces.contains(&s.without(y))) {
                found.insert(s);
            }
        }
    }
    let mut out: Vec<ArrowSet> = found.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.to_vec()));
    out
}

pub fn is_flag(c: &SimplicialComplex) -> bool {
    minimal_nonfaces(c).iter().all(|s| s.len() == 2)
}

/// Of the square face `{x1, x2} x {y1, y2}`, the diagonal through the
/// vertex pulled first.
pub fn square_diagonal(x1: u32, x2: u32, y1: u32, y2: u32, order: &PullOrder) -> Result<(Arrow, Arrow)> {
    let nodes = [x1, x2, y1, y2];
    if nodes.iter().collect::<HashSet<_>>().len() != 4 {
        return Err(domain(format!("square needs four distinct nodes, got {nodes:?}")));
    }
    let n = order.n();
    let a = |t, h| Arrow::new(n, t, h);
    let diagonals = [(a(x1, y1)?, a(x2, y2)?), (a(x1, y2)?, a(x2, y1)?)];
    let first = order
        .least(&[diagonals[0].0, diagonals[0].1, diagonals[1].0, diagonals[1].1])
        .expect("four vertices");
    let (p, q) = if first == diagonals[0].0 || first == diagonals[0].1 {
        diagonals[0]
    } else {
        diagonals[1]
    };
    Ok((p.min(q), p.max(q)))
}

/// Every simplex lies in a face of `P_n` and is affinely independent there.
pub fn is_geometric(c: &SimplicialComplex) -> bool {
    c.facets().iter().all(|f| {
        let arrows = f.to_vec();
        smallest_face_containing(c.n(), &arrows).is_some() && is_simplex_set(&arrows)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::all_arrows;

    fn arrow(n: u32, t: u32, h: u32) -> Arrow {
        Arrow::new(n, t, h).unwrap()
    }

    // per-cell oracle: union over the facets of P_n of the plain recursive
    // pulling triangulation of each facet, no memo, no complex bookkeeping
    fn oracle(n: u32, order: &PullOrder) -> SimplicialComplex {
        fn tri(f: &LatticeFace, order: &PullOrder) -> Vec<ArrowSet> {
            let verts = f.vertices();
            let v = *verts.iter().min_by_key(|a| order.rank(a)).unwrap();
            if verts.len() == 1 {
                return vec![ArrowSet::from_arrows(f.n(), &[v]).unwrap()];
            }
            face_facets(f)
                .unwrap()
                .iter()
                .filter(|g| !g.contains(&v))
                .flat_map(|g| tri(g, order))
                .map(|s| s.with(v))
                .collect()
        }
        let simplices = polytope_facets(n).iter().flat_map(|f| tri(f, order)).collect::<Vec<_>>();
        SimplicialComplex::from_simplices(n, simplices).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        crate::scalar::binomial::<i64>(n, k) as u64
    }

    fn expected_f(n: u32) -> Vec<u64> {
        let n = n as u64;
        (0..=n).map(|j| binom(n + j, j) * binom(n, j)).collect()
    }

    #[test]
    fn order_schemes() {
        let lex = make_order(2, &OrderScheme::Lex).unwrap();
        let want: Vec<Arrow> = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)]
            .iter()
            .map(|&(t, h)| arrow(2, t, h))
            .collect();
        assert_eq!(lex.sequence(), &want[..]);
        let simion = make_order(2, &OrderScheme::SimionCanonical).unwrap();
        let want: Vec<Arrow> = [(2, 1), (3, 2), (3, 1), (1, 2), (2, 3), (1, 3)]
            .iter()
            .map(|&(t, h)| arrow(2, t, h))
            .collect();
        assert_eq!(simion.sequence(), &want[..]);
        for n in 2..=5 {
            assert!(is_valid_simion_order(&make_order(n, &OrderScheme::SimionCanonical).unwrap()));
            assert!(!is_valid_simion_order(&make_order(n, &OrderScheme::Lex).unwrap()));
            assert!(!is_valid_simion_order(&make_order(n, &OrderScheme::RevlexBackwardFirst).unwrap()));
        }
        // for n = 1 backward-first already satisfies everything
        assert!(is_valid_simion_order(&make_order(1, &OrderScheme::RevlexBackwardFirst).unwrap()));
    }

    #[test]
    fn explicit_orders_are_validated() {
        let mut seq = all_arrows(2);
        assert!(make_order(2, &OrderScheme::Explicit(seq.clone())).is_ok());
        seq[1] = seq[0];
        assert!(make_order(2, &OrderScheme::Explicit(seq.clone())).is_err());
        seq.pop();
        assert!(make_order(2, &OrderScheme::Explicit(seq)).is_err());
        assert!(make_order(2, &OrderScheme::Explicit(all_arrows(3))).is_err());
    }

    #[test]
    fn swapping_incomparable_arrows_keeps_validity() {
        let order = make_order(3, &OrderScheme::SimionCanonical).unwrap();
        let mut seq = order.sequence().to_vec();
        // (1,2) and (2,3) are adjacent same-length forward arrows
        let i = seq.iter().position(|a| *a == arrow(3, 1, 2)).unwrap();
        assert_eq!(seq[i + 1], arrow(3, 2, 3));
        seq.swap(i, i + 1);
        assert!(is_valid_simion_order(&PullOrder::new(3, seq).unwrap()));
    }

    #[test]
    fn random_simion_orders_are_valid() {
        for n in 1..=5 {
            for seed in 0..10 {
                assert!(is_valid_simion_order(&random_simion_order(n, seed).unwrap()));
            }
        }
        assert_eq!(random_order(4, 7).unwrap(), random_order(4, 7).unwrap());
    }

    #[test]
    fn hexagon() {
        for seed in 0..5 {
            let c = pull_triangulate(2, &random_order(2, seed).unwrap()).unwrap();
            assert_eq!(c.facets().len(), 6);
            for f in c.facets() {
                assert!(polytope_facets(2).iter().any(|e| e.vertex_set().unwrap() == *f));
            }
            let mnf = minimal_nonfaces(&c);
            assert_eq!(mnf.len(), 9);
            assert!(mnf.iter().all(|s| s.len() == 2));
        }
    }

    #[test]
    fn lex_triangulation_counts() {
        let c = pull_triangulate(3, &make_order(3, &OrderScheme::Lex).unwrap()).unwrap();
        assert_eq!(c.f_vector(), vec![1, 12, 30, 20]);
    }

    #[test]
    fn engine_matches_per_cell_oracle() {
        for n in 1..=4 {
            for seed in 0..6 {
                let order = random_order(n, seed).unwrap();
                assert_eq!(pull_triangulate(n, &order).unwrap(), oracle(n, &order), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn any_order_gives_the_same_numbers_and_is_flag() {
        for n in 1..=4 {
            for seed in 0..20 {
                let c = pull_triangulate(n, &random_order(n, 1000 + seed).unwrap()).unwrap();
                assert_eq!(c.f_vector(), expected_f(n));
                assert!(c.is_pure());
                assert!(is_geometric(&c));
                assert!(is_flag(&c));
                assert_eq!(c.vertices().len(), (n * (n + 1)) as usize);
            }
        }
    }

    #[test]
    fn hollow_triangle_is_not_flag() {
        let (a, b, c) = (arrow(3, 1, 2), arrow(3, 1, 3), arrow(3, 1, 4));
        let sets = [[a, b], [b, c], [a, c]].map(|p| ArrowSet::from_arrows(3, &p).unwrap());
        let cx = SimplicialComplex::from_simplices(3, sets).unwrap();
        let mnf = minimal_nonfaces(&cx);
        assert_eq!(mnf, vec![ArrowSet::from_arrows(3, &[a, b, c]).unwrap()]);
        assert!(!is_flag(&cx));
    }

    #[test]
    fn square_diagonals() {
        let n = 4;
        let (x1, x2, y1, y2) = (1, 2, 3, 4);
        let mut seq = all_arrows(n);
        let pos = seq.iter().position(|a| *a == arrow(n, x1, y1)).unwrap();
        let first = seq.remove(pos);
        seq.insert(0, first);
        let order = PullOrder::new(n, seq).unwrap();
        assert_eq!(square_diagonal(x1, x2, y1, y2, &order).unwrap(), (arrow(n, 1, 3), arrow(n, 2, 4)));

        let mut seq = all_arrows(n);
        let pos = seq.iter().position(|a| *a == arrow(n, x1, y2)).unwrap();
        let first = seq.remove(pos);
        seq.insert(0, first);
        let order = PullOrder::new(n, seq).unwrap();
        assert_eq!(square_diagonal(x1, x2, y1, y2, &order).unwrap(), (arrow(n, 1, 4), arrow(n, 2, 3)));

        assert!(square_diagonal(1, 2, 2, 3, &order).is_err());
    }

    #[test]
    fn square_diagonal_is_the_edge() {
        for n in 3..=4 {
            for seed in 0..4 {
                let order = random_order(n, seed).unwrap();
                let c = pull_triangulate(n, &order).unwrap();
                let m = n + 1;
                for x1 in 1..=m {
                    for x2 in x1 + 1..=m {
                        for y1 in 1..=m {
                            for y2 in y1 + 1..=m {
                                if [y1, y2].contains(&x1) || [y1, y2].contains(&x2) {
                                    continue;
                                }
                                let (p, q) = square_diagonal(x1, x2, y1, y2, &order).unwrap();
                                let edge = ArrowSet::from_arrows(n, &[p, q]).unwrap();
                                assert!(c.contains_face(&edge));
                                let other = if p == arrow(n, x1, y1) || q == arrow(n, x1, y1) {
                                    [arrow(n, x1, y2), arrow(n, x2, y1)]
                                } else {
                                    [arrow(n, x1, y1), arrow(n, x2, y2)]
                                };
                                assert!(!c.contains_face(&ArrowSet::from_arrows(n, &other).unwrap()));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn simion_orders_fix_the_square_diagonal() {
        // x1<x2, y1<y2; each row: the relative order of the four nodes, and
        // the diagonal every Simion-valid order keeps
        type Row = ([u32; 4], ((usize, usize), (usize, usize)));
        let rows: [Row; 6] = [
            // positions hold (x1, x2, y1, y2)
            ([1, 2, 3, 4], ((0, 3), (1, 2))),
            ([1, 3, 2, 4], ((0, 3), (1, 2))),
            ([1, 4, 2, 3], ((0, 2), (1, 3))),
            ([2, 3, 1, 4], ((0, 2), (1, 3))),
            ([2, 4, 1, 3], ((0, 2), (1, 3))),
            ([3, 4, 1, 2], ((0, 3), (1, 2))),
        ];
        let n = 3;
        for seed in 0..10 {
            let order = random_simion_order(n, seed).unwrap();
            for (nodes, ((t1, h1), (t2, h2))) in rows {
                let [x1, x2, y1, y2] = nodes;
                let got = square_diagonal(x1, x2, y1, y2, &order).unwrap();
                let e1 = arrow(n, nodes[t1], nodes[h1]);
                let e2 = arrow(n, nodes[t2], nodes[h2]);
                assert_eq!(got, (e1.min(e2), e1.max(e2)), "{nodes:?}");
            }
        }
    }

    #[test]
    fn complex_json() {
        let c = pull_triangulate(1, &make_order(1, &OrderScheme::Lex).unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"n":1,"facets":[[[1,2]],[[2,1]]]}"#
        );
        let o = make_order(1, &OrderScheme::Lex).unwrap();
        assert_eq!(serde_json::to_string(&o).unwrap(), "[[1,2],[2,1]]");
    }
}
