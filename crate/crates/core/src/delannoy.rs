//! Valid digraphs and balanced Delannoy words.
//!
//! A valid digraph on a node set `V` is a face of the type-B associahedron
//! written on `V` instead of `1..=n+1`. [`sp`] sends backward-only digraphs
//! to Schröder words and [`dp`] extends it to every valid digraph through the
//! twist [`tw`]. [`multiset_of_digraph`] gives the same word without recursion.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, validation, Error, Result};
use crate::representation::Arrow;
use crate::scalar::binomial;
use crate::simion::{for_each_face, is_face};
use crate::Count;

/// A node set with arrows between its nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDigraph")]
pub struct Digraph {
    nodes: BTreeSet<u32>,
    arrows: BTreeSet<(u32, u32)>,
}

#[derive(Deserialize)]
struct RawDigraph {
    nodes: Vec<u32>,
    arrows: Vec<(u32, u32)>,
}

impl TryFrom<RawDigraph> for Digraph {
    type Error = Error;

    fn try_from(raw: RawDigraph) -> Result<Self> {
        Digraph::new(raw.nodes, raw.arrows)
    }
}

impl Digraph {
    pub fn new(nodes: impl IntoIterator<Item = u32>, arrows: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let nodes: BTreeSet<u32> = nodes.into_iter().collect();
        if nodes.is_empty() {
            return Err(validation("a digraph needs at least one node"));
        }
        if nodes.contains(&0) {
            return Err(validation("nodes are positive integers"));
        }
        let arrows: BTreeSet<(u32, u32)> = arrows.into_iter().collect();
        for &(t, h) in &arrows {
            if t == h {
                return Err(validation(format!("loop ({t},{h})")));
            }
            if !nodes.contains(&t) || !nodes.contains(&h) {
                return Err(validation(format!("arrow ({t},{h}) leaves the node set")));
            }
        }
        Ok(Self { nodes, arrows })
    }

    /// Nodes `1..=m`.
    pub fn on_range(m: u32, arrows: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        Self::new(1..=m, arrows)
    }

    /// The digraph on `1..=n+1` drawn by a set of arrows.
    pub fn from_arrows(n: u32, arrows: &[Arrow]) -> Result<Self> {
        Self::on_range(n + 1, arrows.iter().map(|a| (a.tail(), a.head())))
    }

    pub fn nodes(&self) -> &BTreeSet<u32> {
        &self.nodes
    }

    pub fn arrows(&self) -> &BTreeSet<(u32, u32)> {
        &self.arrows
    }

    pub fn min_node(&self) -> u32 {
        *self.nodes.first().expect("nonempty")
    }

    pub fn max_node(&self) -> u32 {
        *self.nodes.last().expect("nonempty")
    }

    pub fn has_forward(&self) -> bool {
        self.arrows.iter().any(|&(t, h)| t < h)
    }

    /// Induced subdigraph on the nodes satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(u32) -> bool) -> Self {
        Self {
            nodes: self.nodes.iter().copied().filter(|&x| keep(x)).collect(),
            arrows: self.arrows.iter().copied().filter(|&(t, h)| keep(t) && keep(h)).collect(),
        }
    }

    /// Arrows relabelled along the order isomorphism `V -> 1..=|V|`.
    pub fn compressed_arrows(&self) -> Result<Vec<Arrow>> {
        let rank: BTreeMap<u32, u32> = self.nodes.iter().enumerate().map(|(i, &x)| (x, i as u32 + 1)).collect();
        let n = self.nodes.len() as u32 - 1;
        self.arrows
            .iter()
            .map(|(t, h)| Arrow::new(n, rank[t], rank[h]))
            .collect()
    }

    /// No crossings, forward arrows nest, no backward arrow nests a forward
    /// one, and no head is a tail.
    pub fn is_valid(&self) -> bool {
        if self.arrows.is_empty() {
            return true;
        }
        self.compressed_arrows().map(|s| is_face(&s)).unwrap_or(false)
    }

    fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(validation("digraph is not valid"))
        }
    }
}

/// `U`, `D` or `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    D,
    U,
    H,
}

impl Letter {
    fn length(self) -> usize {
        match self {
            Letter::H => 2,
            _ => 1,
        }
    }

    fn step(self) -> i64 {
        match self {
            Letter::U => 1,
            Letter::D => -1,
            Letter::H => 0,
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::U => 'U',
            Letter::D => 'D',
            Letter::H => 'H',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DelannoyWord(pub Vec<Letter>);

impl DelannoyWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// `U` and `D` count 1, `H` counts 2.
    pub fn length(&self) -> usize {
        weighted_len(&self.0)
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn is_balanced(&self) -> bool {
        height(&self.0) == 0
    }

    /// Balanced and never below the axis.
    pub fn is_schroder(&self) -> bool {
        is_schroder(&self.0)
    }
}

fn weighted_len(w: &[Letter]) -> usize {
    w.iter().map(|l| l.length()).sum()
}

fn height(w: &[Letter]) -> i64 {
    w.iter().map(|l| l.step()).sum()
}

fn is_schroder(w: &[Letter]) -> bool {
    let mut h = 0;
    for l in w {
        h += l.step();
        if h < 0 {
            return false;
        }
    }
    h == 0
}

impl fmt::Display for DelannoyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl FromStr for DelannoyWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                'U' | 'u' => Ok(Letter::U),
                'D' | 'd' => Ok(Letter::D),
                'H' | 'h' => Ok(Letter::H),
                _ => Err(validation(format!("unexpected {c:?} at position {i} of a Delannoy word"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(DelannoyWord)
    }
}

impl Serialize for DelannoyWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DelannoyWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A letter carrying a node index, ordered `D_x < U_x < H_x < D_{x+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexedLetter {
    pub letter: Letter,
    pub index: u32,
}

impl IndexedLetter {
    pub fn new(letter: Letter, index: u32) -> Self {
        Self { letter, index }
    }
}

impl Ord for IndexedLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.index, self.letter).cmp(&(other.index, other.letter))
    }
}

impl PartialOrd for IndexedLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter.as_char(), self.index)
    }
}

fn sp_rec(a: &Digraph, out: &mut Vec<Letter>) {
    if a.nodes.len() == 1 {
        return;
    }
    let v = a.min_node();
    match a.arrows.iter().filter(|&&(_, h)| h == v).map(|&(t, _)| t).min() {
        None => {
            out.push(Letter::H);
            sp_rec(&a.induced(|x| x != v), out);
        }
        Some(w) => {
            out.push(Letter::U);
            sp_rec(&a.induced(|x| v < x && x <= w), out);
            out.push(Letter::D);
            sp_rec(&a.induced(|x| !(v < x && x <= w)), out);
        }
    }
}

/// Schröder word of a valid backward-only digraph.
pub fn sp(a: &Digraph) -> Result<DelannoyWord> {
    if a.has_forward() {
        return Err(domain("sp takes backward arrows only"));
    }
    a.require_valid()?;
    let mut out = Vec::new();
    sp_rec(a, &mut out);
    Ok(DelannoyWord(out))
}

fn check_word_length(w: &[Letter], nodes: &[u32]) -> Result<()> {
    let want = 2 * (nodes.len() - 1);
    if weighted_len(w) != want {
        return Err(validation(format!(
            "word has length {}, expected {want} for {} nodes",
            weighted_len(w),
            nodes.len()
        )));
    }
    Ok(())
}

fn sorted_nodes(nodes: &BTreeSet<u32>) -> Result<Vec<u32>> {
    if nodes.is_empty() {
        return Err(validation("empty node set"));
    }
    Ok(nodes.iter().copied().collect())
}

fn sp_inv_rec(w: &[Letter], nodes: &[u32], out: &mut Vec<(u32, u32)>) {
    match w.first() {
        None => {}
        Some(Letter::H) => sp_inv_rec(&w[1..], &nodes[1..], out),
        Some(_) => {
            let mut h = 0;
            let close = w
                .iter()
                .position(|l| {
                    h += l.step();
                    h == 0
                })
                .expect("Schröder words return to the axis");
            let beta = &w[1..close];
            let p = weighted_len(beta) / 2;
            sp_inv_rec(beta, &nodes[1..p + 2], out);
            let mut rest = vec![nodes[0]];
            rest.extend_from_slice(&nodes[p + 2..]);
            sp_inv_rec(&w[close + 1..], &rest, out);
            out.push((nodes[p + 1], nodes[0]));
        }
    }
}

/// Backward-only digraph on `nodes` whose Schröder word is `w`.
pub fn sp_inverse(w: &DelannoyWord, nodes: &BTreeSet<u32>) -> Result<Digraph> {
    let list = sorted_nodes(nodes)?;
    if !w.is_schroder() {
        return Err(validation(format!("{w} is not a Schröder word")));
    }
    check_word_length(&w.0, &list)?;
    let mut arrows = Vec::new();
    sp_inv_rec(&w.0, &list, &mut arrows);
    Digraph::new(list, arrows)
}

fn tw_unchecked(a: &Digraph) -> Digraph {
    let (v, w) = (a.min_node(), a.max_node());
    let mut out = a.induced(|x| x != v);
    for &(t, z) in &a.arrows {
        if t == v && z < w {
            out.arrows.insert((w, z));
        }
    }
    out
}

/// Drops the least node `v`; each forward `(v, z)` with `z < max` becomes
/// the backward arrow `(max, z)`.
pub fn tw(a: &Digraph) -> Result<Digraph> {
    let (v, w) = (a.min_node(), a.max_node());
    if !a.arrows.contains(&(v, w)) {
        return Err(domain(format!("tw needs the forward arrow ({v},{w})")));
    }
    a.require_valid()?;
    Ok(tw_unchecked(a))
}

fn tw_inverse_unchecked(b: &Digraph, v: u32) -> Digraph {
    let w = b.max_node();
    let mut nodes = b.nodes.clone();
    nodes.insert(v);
    let mut arrows: BTreeSet<(u32, u32)> = b
        .arrows
        .iter()
        .map(|&(t, h)| if t == w { (v, h) } else { (t, h) })
        .collect();
    arrows.insert((v, w));
    Digraph { nodes, arrows }
}

/// Adds `v` below every node and the arrow `(v, max)`; each backward
/// `(max, z)` becomes `(v, z)`.
pub fn tw_inverse(b: &Digraph, v: u32) -> Result<Digraph> {
    if v == 0 || v >= b.min_node() {
        return Err(domain(format!("node {v} is not below the node set")));
    }
    b.require_valid()?;
    Ok(tw_inverse_unchecked(b, v))
}

/// The forward arrow nesting all others.
fn outermost_forward(a: &Digraph) -> Option<(u32, u32)> {
    a.arrows
        .iter()
        .copied()
        .filter(|&(t, h)| t < h)
        .min_by_key(|&(t, h)| (t, std::cmp::Reverse(h)))
}

fn dp_rec(a: &Digraph, out: &mut Vec<Letter>) {
    match outermost_forward(a) {
        None => sp_rec(a, out),
        Some((x, y)) => {
            sp_rec(&a.induced(|z| z <= x), out);
            out.push(Letter::D);
            dp_rec(&tw_unchecked(&a.induced(|z| x <= z && z <= y)), out);
            out.push(Letter::U);
            sp_rec(&a.induced(|z| y <= z), out);
        }
    }
}

/// Balanced Delannoy word of a valid digraph.
pub fn dp(a: &Digraph) -> Result<DelannoyWord> {
    a.require_valid()?;
    let mut out = Vec::new();
    dp_rec(a, &mut out);
    Ok(DelannoyWord(out))
}

fn dp_inv_rec(w: &[Letter], nodes: &[u32], out: &mut BTreeSet<(u32, u32)>) {
    if is_schroder(w) {
        let mut arrows = Vec::new();
        sp_inv_rec(w, nodes, &mut arrows);
        out.extend(arrows);
        return;
    }
    let mut h = 0;
    let first_d = w
        .iter()
        .position(|l| {
            h += l.step();
            h < 0
        })
        .expect("not Schröder, so the path dips below the axis");
    let mut h = 0;
    let last_u = w
        .iter()
        .rposition(|l| {
            h += l.step();
            h > 0
        })
        .expect("balanced and not Schröder");
    let beta = &w[..first_d];
    let gamma = &w[first_d + 1..last_u];
    let delta = &w[last_u + 1..];
    let p = weighted_len(beta) / 2;
    let q = weighted_len(gamma) / 2;
    let mut arrows = Vec::new();
    sp_inv_rec(beta, &nodes[..p + 1], &mut arrows);
    sp_inv_rec(delta, &nodes[p + q + 1..], &mut arrows);
    out.extend(arrows);
    let inner_nodes = &nodes[p + 1..p + q + 2];
    let mut inner = BTreeSet::new();
    dp_inv_rec(gamma, inner_nodes, &mut inner);
    let b = Digraph {
        nodes: inner_nodes.iter().copied().collect(),
        arrows: inner,
    };
    out.extend(tw_inverse_unchecked(&b, nodes[p]).arrows);
}

/// Valid digraph on `nodes` whose Delannoy word is `w`.
pub fn dp_inverse(w: &DelannoyWord, nodes: &BTreeSet<u32>) -> Result<Digraph> {
    let list = sorted_nodes(nodes)?;
    if !w.is_balanced() {
        return Err(validation(format!("{w} is not balanced")));
    }
    check_word_length(&w.0, &list)?;
    let mut arrows = BTreeSet::new();
    dp_inv_rec(&w.0, &list, &mut arrows);
    Digraph::new(list, arrows)
}

fn component_maxima(a: &Digraph) -> BTreeSet<u32> {
    let mut parent: BTreeMap<u32, u32> = a.nodes.iter().map(|&x| (x, x)).collect();
    fn find(parent: &mut BTreeMap<u32, u32>, x: u32) -> u32 {
        let p = parent[&x];
        if p == x {
            return x;
        }
        let r = find(parent, p);
        parent.insert(x, r);
        r
    }
    for &(t, h) in &a.arrows {
        let (rt, rh) = (find(&mut parent, t), find(&mut parent, h));
        // keep the larger node as the root
        let (lo, hi) = if rt < rh { (rt, rh) } else { (rh, rt) };
        parent.insert(lo, hi);
    }
    let nodes: Vec<u32> = a.nodes.iter().copied().collect();
    nodes.into_iter().map(|x| find(&mut parent, x)).collect()
}

fn rewire_forward(a: &Digraph, m: &mut Vec<IndexedLetter>) -> BTreeSet<(u32, u32)> {
    let mut heads: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let mut scratch: BTreeSet<(u32, u32)> = BTreeSet::new();
    for &(t, h) in &a.arrows {
        if t < h {
            heads.entry(t).or_default().push(h);
        } else {
            scratch.insert((t, h));
        }
    }
    for (&x, hs) in &heads {
        let w = *hs.iter().max().expect("nonempty");
        m.push(IndexedLetter::new(Letter::D, x));
        m.push(IndexedLetter::new(Letter::U, w));
        scratch.extend(hs.iter().filter(|&&y| y < w).map(|&y| (w, y)));
    }
    scratch
}

/// The backward arrows left after each forward arrow `(x, y)` below the
/// largest head `w` of `x` is replaced by `(w, y)` and `(x, w)` is dropped.
/// The result need not be valid.
pub fn rewired_arrows(a: &Digraph) -> Result<BTreeSet<(u32, u32)>> {
    a.require_valid()?;
    Ok(rewire_forward(a, &mut Vec::new()))
}

/// The indexed-letter multiset read off a valid digraph, sorted.
pub fn multiset_of_digraph(a: &Digraph) -> Result<Vec<IndexedLetter>> {
    a.require_valid()?;
    let mut m = Vec::new();
    let top = a.max_node();
    for x in component_maxima(a) {
        if x < top {
            m.push(IndexedLetter::new(Letter::H, x));
        }
    }
    let scratch = rewire_forward(a, &mut m);
    let mut tails: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &(t, h) in &scratch {
        tails.entry(h).or_default().push(t);
    }
    for (&y, ts) in &tails {
        let top_tail = *ts.iter().max().expect("nonempty");
        m.push(IndexedLetter::new(Letter::U, y));
        for &x in ts {
            m.push(IndexedLetter::new(Letter::D, x));
            if x != top_tail {
                m.push(IndexedLetter::new(Letter::U, x));
            }
        }
    }
    m.sort();
    Ok(m)
}

/// Sorts the multiset and forgets the indices.
pub fn word_of_multiset(m: &[IndexedLetter]) -> DelannoyWord {
    let mut sorted = m.to_vec();
    sorted.sort();
    DelannoyWord(sorted.into_iter().map(|l| l.letter).collect())
}

/// Balanced Delannoy words of length `2n` with `k` up steps, or all of them.
pub fn count_paths(n: u64, k: Option<u64>) -> Result<Count> {
    match k {
        Some(k) if k > n => Err(domain(format!("k = {k} exceeds n = {n}"))),
        Some(k) => Ok(binomial::<Count>(n + k, k) * binomial::<Count>(n, k)),
        None => Ok((0..=n).map(|k| binomial::<Count>(n + k, k) * binomial::<Count>(n, k)).sum()),
    }
}

/// Every balanced Delannoy word of length `2n`.
pub fn balanced_words(n: usize) -> Vec<DelannoyWord> {
    fn grow(rest: usize, h: i64, cur: &mut Vec<Letter>, out: &mut Vec<DelannoyWord>) {
        if rest == 0 {
            if h == 0 {
                out.push(DelannoyWord(cur.clone()));
            }
            return;
        }
        if h.unsigned_abs() as usize > rest {
            return;
        }
        for l in [Letter::U, Letter::D, Letter::H] {
            if l.length() <= rest {
                cur.push(l);
                grow(rest - l.length(), h + l.step(), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(2 * n, 0, &mut Vec::new(), &mut out);
    out
}

/// Every valid digraph on `1..=m`.
pub fn valid_digraphs(m: u32, limit: u32) -> Result<Vec<Digraph>> {
    if m == 0 {
        return Err(domain("at least one node"));
    }
    if m == 1 {
        return Ok(vec![Digraph::on_range(1, [])?]);
    }
    let mut out = Vec::new();
    for_each_face(m - 1, None, limit, |s| {
        out.push(Digraph::from_arrows(m - 1, &s.to_vec()).expect("faces are digraphs"))
    })?;
    Ok(out)
}
