//! B-diagonals of the centrally symmetric (2n+2)-gon, their arc and arrow
//! encodings, and the compatibility (noncrossing) predicate on arrows.
//!
//! Polygon vertices are labelled `1..=2n+2`, with `k + n + 1` standing for the
//! antipode of `k`. A B-diagonal is either a diameter `{i, i+n+1}` or a
//! centrally symmetric pair of diagonals. Each B-diagonal is sent to a pair of
//! antipodal arcs on the circle of circumference `2n+2`, and projecting one of
//! those arcs modulo `n+1` gives an arc whose endpoints are the head and tail
//! of the associated arrow.

use std::fmt;

use num_traits::Num;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{domain, validation, Result};

/// Largest `n` for which an [`ArrowSet`] fits its bitmask (`n(n+1) <= 128`).
pub const MAX_SET_N: u32 = 10;

/// The vertex `e_head - e_tail` of the Legendre polytope, written `(tail, head)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    n: u32,
    tail: u32,
    head: u32,
}

impl Arrow {
    pub fn new(n: u32, tail: u32, head: u32) -> Result<Self> {
        if n == 0 {
            return Err(domain("n must be at least 1"));
        }
        let m = n + 1;
        if !(1..=m).contains(&tail) || !(1..=m).contains(&head) {
            return Err(validation(format!(
                "arrow ({tail},{head}) has an endpoint outside 1..={m}"
            )));
        }
        if tail == head {
            return Err(validation(format!("arrow ({tail},{head}) is a loop")));
        }
        Ok(Self { n, tail, head })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    pub fn head(&self) -> u32 {
        self.head
    }

    pub fn is_backward(&self) -> bool {
        self.tail > self.head
    }

    pub fn is_forward(&self) -> bool {
        self.tail < self.head
    }

    /// The closed span `[min, max]` of the two endpoints on the line.
    pub fn span(&self) -> (u32, u32) {
        (self.tail.min(self.head), self.tail.max(self.head))
    }

    /// Position in lexicographic `(tail, head)` order, in `0..n(n+1)`.
    pub fn index(&self) -> usize {
        let skip = usize::from(self.head > self.tail);
        (self.tail as usize - 1) * self.n as usize + self.head as usize - 1 - skip
    }

    pub fn from_index(n: u32, index: usize) -> Result<Self> {
        let per_tail = n as usize;
        if n == 0 || index >= per_tail * (per_tail + 1) {
            return Err(domain(format!("arrow index {index} out of range for n = {n}")));
        }
        let tail = (index / per_tail) as u32 + 1;
        let mut head = (index % per_tail) as u32 + 1;
        if head >= tail {
            head += 1;
        }
        Ok(Self { n, tail, head })
    }

    /// The diameter arrows are `(k-1, k)` and `(n+1, 1)`.
    pub fn is_diameter(&self) -> bool {
        self.head == self.tail + 1 || (self.tail == self.n + 1 && self.head == 1)
    }

    pub fn reversed(&self) -> Self {
        Self {
            n: self.n,
            tail: self.head,
            head: self.tail,
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tail, self.head)
    }
}

impl Serialize for Arrow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.tail, self.head].serialize(s)
    }
}

/// All `n(n+1)` arrows, in lexicographic order.
pub fn all_arrows(n: u32) -> Vec<Arrow> {
    (0..(n as usize) * (n as usize + 1))
        .map(|i| Arrow::from_index(n, i).expect("index in range"))
        .collect()
}

/// A set of arrows sharing the same `n`, stored as a bitmask over arrow indices.
///
/// Iteration yields arrows in lexicographic order, so two sets are equal
/// exactly when their sorted arrow sequences are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowSet {
    n: u32,
    bits: u128,
}

impl ArrowSet {
    pub fn empty(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_SET_N {
            return Err(domain(format!(
                "arrow sets support 1 <= n <= {MAX_SET_N}, got n = {n}"
            )));
        }
        Ok(Self { n, bits: 0 })
    }

    pub fn from_arrows<'a>(n: u32, arrows: impl IntoIterator<Item = &'a Arrow>) -> Result<Self> {
        let mut set = Self::empty(n)?;
        for a in arrows {
            if a.n != n {
                return Err(domain(format!("arrow {a} belongs to n = {}, not {n}", a.n)));
            }
            set.insert(*a);
        }
        Ok(set)
    }

    pub fn from_pairs(n: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        let arrows = pairs
            .iter()
            .map(|&(t, h)| Arrow::new(n, t, h))
            .collect::<Result<Vec<_>>>()?;
        Self::from_arrows(n, &arrows)
    }

    pub(crate) fn from_bits(n: u32, bits: u128) -> Self {
        Self { n, bits }
    }

    pub(crate) fn bits(&self) -> u128 {
        self.bits
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn insert(&mut self, a: Arrow) {
        debug_assert_eq!(a.n, self.n);
        self.bits |= 1u128 << a.index();
    }

    pub fn with(mut self, a: Arrow) -> Self {
        self.insert(a);
        self
    }

    pub fn without(mut self, a: Arrow) -> Self {
        self.bits &= !(1u128 << a.index());
        self
    }

    pub fn contains(&self, a: &Arrow) -> bool {
        a.n == self.n && self.bits >> a.index() & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Arrow> + '_ {
        let n = self.n;
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(Arrow::from_index(n, i).expect("bit in range"))
        })
    }

    pub fn to_vec(&self) -> Vec<Arrow> {
        self.iter().collect()
    }

    pub fn pairs(&self) -> Vec<[u32; 2]> {
        self.iter().map(|a| [a.tail, a.head]).collect()
    }
}

impl fmt::Display for ArrowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ArrowSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

/// The two shapes a B-diagonal can take, in canonical form.
///
/// `Pair { u, v }` stands for `{{u, v}, {u+n+1, v+n+1}}` where `1 <= u <= n+1`
/// and going from `u` to `v` in increasing direction is the shorter way around
/// (`2 <= v - u <= n` modulo `2n+2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BDiagonalKind {
    Diameter { i: u32 },
    Pair { u: u32, v: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BDiagonal {
    n: u32,
    kind: BDiagonalKind,
}

fn wrap(x: i64, m: i64) -> u32 {
    ((x - 1).rem_euclid(m) + 1) as u32
}

impl BDiagonal {
    /// Validates a B-diagonal given in canonical form.
    pub fn new(n: u32, kind: BDiagonalKind) -> Result<Self> {
        if n == 0 {
            return Err(domain("n must be at least 1"));
        }
        let half = n + 1;
        match kind {
            BDiagonalKind::Diameter { i } => {
                if !(1..=half).contains(&i) {
                    return Err(validation(format!("diameter index {i} outside 1..={half}")));
                }
            }
            BDiagonalKind::Pair { u, v } => {
                if !(1..=half).contains(&u) || !(1..=2 * half).contains(&v) {
                    return Err(validation(format!(
                        "pair ({u},{v}) is not in canonical range u <= {half}, v <= {}",
                        2 * half
                    )));
                }
                let d = (v as i64 - u as i64).rem_euclid(2 * half as i64) as u32;
                if !(2..=n).contains(&d) {
                    return Err(validation(format!(
                        "pair ({u},{v}) is not a canonical non-diameter diagonal"
                    )));
                }
            }
        }
        Ok(Self { n, kind })
    }

    pub fn diameter(n: u32, i: u32) -> Result<Self> {
        Self::new(n, BDiagonalKind::Diameter { i })
    }

    /// Builds the B-diagonal containing the polygon diagonal `{a, b}`, with
    /// labels in `1..=2n+2`, and brings it to canonical form.
    pub fn from_labels(n: u32, a: u32, b: u32) -> Result<Self> {
        if n == 0 {
            return Err(domain("n must be at least 1"));
        }
        let full = 2 * (n + 1);
        if !(1..=full).contains(&a) || !(1..=full).contains(&b) || a == b {
            return Err(validation(format!("{{{a},{b}}} is not a diagonal of the {full}-gon")));
        }
        let half = (n + 1) as i64;
        let mut d = (b as i64 - a as i64).rem_euclid(full as i64);
        let (mut u, mut v) = (a as i64, b as i64);
        if d == half {
            return Self::diameter(n, wrap(u, half));
        }
        if d > half {
            std::mem::swap(&mut u, &mut v);
            d = full as i64 - d;
        }
        if d == 1 {
            return Err(validation(format!("{{{a},{b}}} is a polygon edge, not a diagonal")));
        }
        if u > half {
            u -= half;
            v -= half;
        }
        Self::new(
            n,
            BDiagonalKind::Pair {
                u: u as u32,
                v: wrap(v, full as i64),
            },
        )
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> BDiagonalKind {
        self.kind
    }

    pub fn is_diameter(&self) -> bool {
        matches!(self.kind, BDiagonalKind::Diameter { .. })
    }

    /// The polygon diagonals making up this B-diagonal (one for a diameter).
    pub fn diagonals(&self) -> Vec<(u32, u32)> {
        let half = self.n + 1;
        let full = 2 * half as i64;
        match self.kind {
            BDiagonalKind::Diameter { i } => vec![(i, i + half)],
            BDiagonalKind::Pair { u, v } => vec![
                (u, v),
                (u + half, wrap(v as i64 + half as i64, full)),
            ],
        }
    }
}

impl fmt::Display for BDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .diagonals()
            .iter()
            .map(|(a, b)| format!("{{{a},{b}}}"))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for BDiagonal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.kind.serialize(s)
    }
}

/// All `n(n+1)` B-diagonals: diameters first, then pairs by `(u, v)`.
pub fn all_bdiagonals(n: u32) -> Vec<BDiagonal> {
    let half = n + 1;
    let mut out: Vec<BDiagonal> = (1..=half)
        .map(|i| BDiagonal::diameter(n, i).expect("in range"))
        .collect();
    for u in 1..=half {
        for d in 2..=n {
            let kind = BDiagonalKind::Pair { u, v: u + d };
            out.push(BDiagonal::new(n, kind).expect("in range"));
        }
    }
    out
}

/// Closed arc on the circle of circumference `modulus`: it starts at `start`
/// (in `1..=modulus`) and runs `len` units in increasing direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CircularArc {
    pub start: u32,
    pub len: u32,
    #[serde(rename = "mod")]
    pub modulus: u32,
}

impl CircularArc {
    pub fn new(modulus: u32, start: u32, len: u32) -> Result<Self> {
        if modulus < 2 || !(1..=modulus).contains(&start) || len == 0 || len >= modulus {
            return Err(validation(format!(
                "arc start {start} len {len} is not a proper arc on circumference {modulus}"
            )));
        }
        Ok(Self { modulus, start, len })
    }

    /// The last point of the arc, in `1..=modulus`.
    pub fn end(&self) -> u32 {
        wrap(self.start as i64 + self.len as i64, self.modulus as i64)
    }

    fn offset(&self, point: u32) -> u32 {
        (point as i64 - self.start as i64).rem_euclid(self.modulus as i64) as u32
    }

    /// Weak containment of `other` in `self`.
    pub fn contains_arc(&self, other: &Self) -> bool {
        self.offset(other.start) + other.len <= self.len
    }

    /// No shared point, endpoints included.
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.offset(other.start) > self.len && other.offset(self.start) > other.len
    }

    pub fn nested_or_disjoint(&self, other: &Self) -> bool {
        self.contains_arc(other) || other.contains_arc(self) || self.is_disjoint(other)
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self {
            start: wrap(self.start as i64 + by, self.modulus as i64),
            ..*self
        }
    }

    /// Integer points covered by the arc, in walking order.
    pub fn points(&self) -> Vec<u32> {
        (0..=self.len)
            .map(|k| wrap(self.start as i64 + k as i64, self.modulus as i64))
            .collect()
    }
}

/// A centrally symmetric pair of arcs on the circle of circumference `2n+2`.
/// The arc starting in `1..=n+1` is stored first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ArcPair {
    #[serde(skip)]
    n: u32,
    arcs: [CircularArc; 2],
}

impl ArcPair {
    /// The pair `{[u, u+len], [u+n+1, u+n+1+len]}`, normalized.
    pub fn from_arc(n: u32, arc: CircularArc) -> Self {
        let half = n + 1;
        debug_assert_eq!(arc.modulus, 2 * half);
        let other = arc.shifted(half as i64);
        let arcs = if arc.start <= half { [arc, other] } else { [other, arc] };
        Self { n, arcs }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arcs(&self) -> [CircularArc; 2] {
        self.arcs
    }

    /// Rotation of both arcs by `by` positions of the (2n+2)-gon.
    pub fn rotated(&self, by: i64) -> Self {
        Self::from_arc(self.n, self.arcs[0].shifted(by))
    }
}

/// The modulo `n+1` map from `(0, 2n+2]` onto `(0, n+1]`.
///
/// Generic over the number type so that integer and rational points
/// go through the same code.
pub fn pi<T: Num + PartialOrd + Copy>(x: T, n: T) -> Result<T> {
    let half = n + T::one();
    if n <= T::zero() {
        return Err(domain("n must be positive"));
    }
    if x <= T::zero() || x > half + half {
        return Err(domain("point outside the fundamental domain (0, 2n+2]"));
    }
    Ok(if x <= half { x } else { x - half })
}

pub fn arc_of_bdiagonal(d: &BDiagonal) -> Result<ArcPair> {
    let d = BDiagonal::new(d.n, d.kind)?;
    let n = d.n;
    let full = 2 * (n + 1);
    let arc = match d.kind {
        BDiagonalKind::Diameter { i } => CircularArc::new(full, i, n)?,
        BDiagonalKind::Pair { u, v } => {
            let d = (v as i64 - u as i64).rem_euclid(full as i64) as u32;
            CircularArc::new(full, u, d - 1)?
        }
    };
    Ok(ArcPair::from_arc(n, arc))
}

/// The arc of `(0, n+1]` swept from the head of `a` to its tail.
pub fn image_arc(a: &Arrow) -> CircularArc {
    let m = a.n + 1;
    let len = (a.tail as i64 - a.head as i64).rem_euclid(m as i64) as u32;
    CircularArc {
        modulus: m,
        start: a.head,
        len,
    }
}

/// Projects an arc of the (2n+2)-circle modulo `n+1`.
pub fn project_arc(n: u32, arc: &CircularArc) -> Result<CircularArc> {
    let start = pi(arc.start, n)?;
    CircularArc::new(n + 1, start, arc.len)
}

pub fn arrow_of_bdiagonal(d: &BDiagonal) -> Result<Arrow> {
    let pair = arc_of_bdiagonal(d)?;
    let projected = project_arc(d.n, &pair.arcs()[0])?;
    Arrow::new(d.n, projected.end(), projected.start)
}

pub fn bdiagonal_of_arrow(a: &Arrow) -> BDiagonal {
    let arc = image_arc(a);
    let kind = if arc.len == a.n {
        BDiagonalKind::Diameter { i: a.head }
    } else {
        BDiagonalKind::Pair {
            u: a.head,
            v: a.head + arc.len + 1,
        }
    };
    BDiagonal::new(a.n, kind).expect("arrow image is a valid B-diagonal")
}

fn check_pair(a: &Arrow, b: &Arrow) -> Result<()> {
    if a.n != b.n {
        return Err(domain(format!("arrows {a} and {b} have different n")));
    }
    if a == b {
        return Err(domain(format!("compatibility of {a} with itself is undefined")));
    }
    Ok(())
}

/// Two arrows are compatible when their image arcs are nested or disjoint.
pub fn arrows_compatible(a: &Arrow, b: &Arrow) -> Result<bool> {
    check_pair(a, b)?;
    Ok(image_arc(a).nested_or_disjoint(&image_arc(b)))
}

fn strictly_inside(x: u32, span: (u32, u32)) -> bool {
    span.0 < x && x < span.1
}

/// Four distinct endpoints, exactly one of `b` strictly inside the span of `a`.
pub(crate) fn spans_cross(a: &Arrow, b: &Arrow) -> bool {
    let sa = a.span();
    strictly_inside(b.tail, sa) != strictly_inside(b.head, sa)
        && ![b.tail, b.head].contains(&sa.0)
        && ![b.tail, b.head].contains(&sa.1)
}

/// Strict span containment of `inner` in `outer`.
pub(crate) fn span_nests(outer: &Arrow, inner: &Arrow) -> bool {
    let (o, i) = (outer.span(), inner.span());
    o.0 < i.0 && i.1 < o.1
}

/// The same predicate as [`arrows_compatible`], decided by the four
/// forbidden configurations on the line `1..=n+1`.
pub fn arrows_compatible_by_cases(a: &Arrow, b: &Arrow) -> Result<bool> {
    check_pair(a, b)?;
    if a.head == b.tail || b.head == a.tail {
        return Ok(false);
    }
    if a.head == b.head || a.tail == b.tail {
        return Ok(true);
    }
    let crossing = spans_cross(a, b);
    let ok = match (a.is_backward(), b.is_backward()) {
        (true, true) => !crossing,
        (false, false) => span_nests(a, b) || span_nests(b, a),
        (true, false) => !(crossing || span_nests(a, b)),
        (false, true) => !(crossing || span_nests(b, a)),
    };
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(n: u32, t: u32, h: u32) -> Arrow {
        Arrow::new(n, t, h).unwrap()
    }

    #[test]
    fn arrow_validation() {
        assert!(Arrow::new(0, 1, 2).is_err());
        assert!(Arrow::new(2, 1, 1).is_err());
        assert!(Arrow::new(2, 4, 1).is_err());
        let a = arrow(3, 4, 2);
        assert!(a.is_backward());
        assert!(!a.is_forward());
    }

    #[test]
    fn index_roundtrip() {
        for n in 1..=8 {
            let arrows = all_arrows(n);
            assert_eq!(arrows.len(), (n * (n + 1)) as usize);
            for (i, a) in arrows.iter().enumerate() {
                assert_eq!(a.index(), i);
            }
            let mut sorted = arrows.clone();
            sorted.sort_by_key(|a| (a.tail, a.head));
            assert_eq!(sorted, arrows);
        }
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi(10, 7).unwrap(), 2);
        assert_eq!(pi(5, 7).unwrap(), 5);
        assert_eq!(pi(16, 7).unwrap(), 8);
        assert!(pi(0, 7).is_err());
        assert!(pi(17, 7).is_err());
        use num_rational::Rational64;
        let x = Rational64::new(21, 2);
        assert_eq!(pi(x, Rational64::from(7)).unwrap(), Rational64::new(5, 2));
    }

    #[test]
    fn arc_examples() {
        let d = BDiagonal::from_labels(7, 2, 5).unwrap();
        assert_eq!(d.kind(), BDiagonalKind::Pair { u: 2, v: 5 });
        let p = arc_of_bdiagonal(&d).unwrap();
        assert_eq!(p.arcs()[0], CircularArc::new(16, 2, 2).unwrap());
        assert_eq!(p.arcs()[1], CircularArc::new(16, 10, 2).unwrap());
        assert_eq!(p.arcs()[1].end(), 12);

        let p = arc_of_bdiagonal(&BDiagonal::diameter(7, 3).unwrap()).unwrap();
        assert_eq!((p.arcs()[0].start, p.arcs()[0].end()), (3, 10));
        assert_eq!((p.arcs()[1].start, p.arcs()[1].end()), (11, 2));

        let p = arc_of_bdiagonal(&BDiagonal::diameter(1, 1).unwrap()).unwrap();
        assert_eq!((p.arcs()[0].start, p.arcs()[0].end()), (1, 2));
        assert_eq!((p.arcs()[1].start, p.arcs()[1].end()), (3, 4));
    }

    #[test]
    fn arrow_examples() {
        let d = BDiagonal::from_labels(7, 2, 5).unwrap();
        assert_eq!(arrow_of_bdiagonal(&d).unwrap(), arrow(7, 4, 2));
        // {4, 6bar} with 6bar = 14
        let d = BDiagonal::from_labels(7, 4, 14).unwrap();
        assert_eq!(arrow_of_bdiagonal(&d).unwrap(), arrow(7, 3, 6));
        for n in 1..=6 {
            let d = BDiagonal::diameter(n, 1).unwrap();
            assert_eq!(arrow_of_bdiagonal(&d).unwrap(), arrow(n, n + 1, 1));
            for i in 1..=n {
                let d = bdiagonal_of_arrow(&arrow(n, i, i + 1));
                assert_eq!(d, BDiagonal::diameter(n, i + 1).unwrap());
            }
        }
        assert_eq!(bdiagonal_of_arrow(&arrow(7, 4, 2)), BDiagonal::from_labels(7, 2, 5).unwrap());
    }

    #[test]
    fn inverse_rules_b_and_c() {
        let n = 6;
        let half = n + 1;
        for i in 1..=n {
            for j in i + 1..=n {
                // rule (b): backward (j,i) -> {{i, j+1}, ...}
                let d = bdiagonal_of_arrow(&arrow(n, j, i));
                assert_eq!(d, BDiagonal::from_labels(n, i, j + 1).unwrap());
            }
        }
        for i in 1..=half {
            for j in 1..i.saturating_sub(1) {
                // rule (c): forward (j,i) -> {{i, bar(j+1)}, ...}
                let d = bdiagonal_of_arrow(&arrow(n, j, i));
                assert_eq!(d, BDiagonal::from_labels(n, i, j + 1 + half).unwrap());
            }
        }
        for i in 2..=n {
            let d = bdiagonal_of_arrow(&arrow(n, half, i));
            assert_eq!(d, BDiagonal::from_labels(n, 1, i + half).unwrap());
        }
    }

    #[test]
    fn bdiagonal_validation() {
        assert!(BDiagonal::from_labels(7, 2, 3).is_err());
        assert!(BDiagonal::from_labels(7, 8, 9).is_err());
        assert!(BDiagonal::from_labels(7, 2, 2).is_err());
        assert!(BDiagonal::new(3, BDiagonalKind::Pair { u: 5, v: 7 }).is_err());
        assert!(BDiagonal::new(3, BDiagonalKind::Pair { u: 1, v: 2 }).is_err());
        assert!(BDiagonal::diameter(3, 5).is_err());
        // both representatives of a pair canonicalize identically
        assert_eq!(
            BDiagonal::from_labels(7, 10, 13).unwrap(),
            BDiagonal::from_labels(7, 5, 2).unwrap()
        );
        assert_eq!(BDiagonal::from_labels(7, 11, 3).unwrap(), BDiagonal::diameter(7, 3).unwrap());
        for n in 1..=6 {
            assert_eq!(all_bdiagonals(n).len(), (n * (n + 1)) as usize);
        }
    }

    #[test]
    fn bijection_and_arc_consistency() {
        for n in 1..=8 {
            let mut seen = std::collections::HashSet::new();
            for d in all_bdiagonals(n) {
                let a = arrow_of_bdiagonal(&d).unwrap();
                assert!(seen.insert(a));
                assert_eq!(bdiagonal_of_arrow(&a), d);
                let pair = arc_of_bdiagonal(&d).unwrap();
                for arc in pair.arcs() {
                    assert_eq!(project_arc(n, &arc).unwrap(), image_arc(&a));
                }
            }
            for a in all_arrows(n) {
                assert_eq!(arrow_of_bdiagonal(&bdiagonal_of_arrow(&a)).unwrap(), a);
                assert_eq!(a.is_diameter(), image_arc(&a).len == n);
            }
        }
    }

    #[test]
    fn image_arc_examples() {
        let arc = image_arc(&arrow(7, 4, 2));
        assert_eq!((arc.start, arc.len), (2, 2));
        let arc = image_arc(&arrow(7, 3, 6));
        assert_eq!((arc.start, arc.len), (6, 5));
        assert_eq!(arc.points(), vec![6, 7, 8, 1, 2, 3]);
        let arc = image_arc(&arrow(2, 1, 2));
        assert_eq!((arc.start, arc.len), (2, 2));
    }

    #[test]
    fn compatibility_examples() {
        assert!(arrows_compatible(&arrow(10, 3, 1), &arrow(10, 6, 5)).unwrap());
        assert!(!arrows_compatible(&arrow(5, 3, 1), &arrow(5, 6, 3)).unwrap());
        assert!(!arrows_compatible(&arrow(3, 1, 3), &arrow(3, 2, 4)).unwrap());
        assert!(arrows_compatible_by_cases(&arrow(10, 3, 8), &arrow(10, 3, 9)).unwrap());
        assert!(arrows_compatible_by_cases(&arrow(10, 10, 9), &arrow(10, 11, 9)).unwrap());
        assert!(!arrows_compatible_by_cases(&arrow(3, 1, 3), &arrow(3, 2, 4)).unwrap());
        assert!(arrows_compatible(&arrow(3, 1, 3), &arrow(3, 1, 3)).is_err());
        assert!(arrows_compatible(&arrow(3, 1, 3), &arrow(4, 1, 3)).is_err());
        assert!(arrows_compatible_by_cases(&arrow(3, 1, 3), &arrow(3, 1, 3)).is_err());
    }

    #[test]
    fn predicates_agree_and_are_symmetric() {
        for n in 1..=8 {
            let arrows = all_arrows(n);
            for a in &arrows {
                for b in &arrows {
                    if a == b {
                        continue;
                    }
                    let arc = arrows_compatible(a, b).unwrap();
                    assert_eq!(arc, arrows_compatible_by_cases(a, b).unwrap(), "{a} {b}");
                    assert_eq!(arc, arrows_compatible(b, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn diagonals_noncrossing_iff_arcs_nested_or_disjoint() {
        // chord crossing in the (2n+2)-gon, straight from the polygon picture
        fn chords_cross(full: u32, (a, b): (u32, u32), (c, d): (u32, u32)) -> bool {
            if [a, b].contains(&c) || [a, b].contains(&d) {
                return false;
            }
            let between = |x: u32| {
                let off = |y: u32| (y as i64 - a as i64).rem_euclid(full as i64);
                off(x) < off(b)
            };
            between(c) != between(d)
        }
        for n in 1..=6 {
            let full = 2 * (n + 1);
            let ds = all_bdiagonals(n);
            for x in &ds {
                for y in &ds {
                    if x == y {
                        continue;
                    }
                    let cross = x
                        .diagonals()
                        .iter()
                        .any(|&p| y.diagonals().iter().any(|&q| chords_cross(full, p, q)));
                    let (ax, ay) = (arrow_of_bdiagonal(x).unwrap(), arrow_of_bdiagonal(y).unwrap());
                    assert_eq!(!cross, arrows_compatible(&ax, &ay).unwrap(), "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn serialization_shapes() {
        let a = arrow(7, 4, 2);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[4,2]");
        let d = BDiagonal::diameter(7, 3).unwrap();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"kind":"diameter","i":3}"#);
        let d = BDiagonal::from_labels(7, 2, 5).unwrap();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"kind":"pair","u":2,"v":5}"#);
        let arc = image_arc(&a);
        assert_eq!(serde_json::to_string(&arc).unwrap(), r#"{"start":2,"len":2,"mod":8}"#);
    }
}
