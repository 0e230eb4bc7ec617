//! Finite posets, the fence / circular fence / chainlink families, and the
//! brute-force ideal enumeration that serves as the oracle for the transfer
//! calculus.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::qpoly::QPolynomial;
use crate::scalar::Ring;
use crate::transfer::RankMatrix;

/// Default element cap for brute-force enumeration.
pub const DEFAULT_CAP: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(n: usize) -> Self {
        BitRow(vec![0; n.div_ceil(64).max(1)])
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn or(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn low_word(&self) -> u64 {
        self.0[0]
    }
}

/// A finite poset stored as its cover relation (transitive reduction) plus
/// the strict order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    covers: Vec<(usize, usize)>,
    above: Vec<BitRow>,
    below: Vec<BitRow>,
}

impl FinitePoset {
    /// Build from generating relations `(lower, upper)`. Self-pairs are
    /// ignored, implied relations are dropped, cycles are rejected.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut succ = vec![Vec::new(); n];
        for &(lo, hi) in relations {
            for id in [lo, hi] {
                if id >= n {
                    return Err(Error::InvalidElement { id, size: n });
                }
            }
            if lo != hi {
                succ[lo].push(hi);
            }
        }
        let mut above = vec![BitRow::new(n); n];
        for (start, row) in above.iter_mut().enumerate() {
            let mut stack: Vec<usize> = succ[start].clone();
            while let Some(v) = stack.pop() {
                if row.get(v) {
                    continue;
                }
                if v == start {
                    return Err(Error::Cyclic(start));
                }
                row.set(v);
                stack.extend(succ[v].iter().copied());
            }
        }
        let mut below = vec![BitRow::new(n); n];
        for (i, row) in above.iter().enumerate() {
            for (j, b) in below.iter_mut().enumerate() {
                if row.get(j) {
                    b.set(i);
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            let mut implied = BitRow::new(n);
            for k in 0..n {
                if above[i].get(k) {
                    implied.or(&above[k]);
                }
            }
            for j in 0..n {
                if above[i].get(j) && !implied.get(j) {
                    covers.push((i, j));
                }
            }
        }
        Ok(FinitePoset {
            n,
            covers,
            above,
            below,
        })
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relations(n, &[]).expect("antichain is acyclic")
    }

    /// `x_0 < x_1 < ... < x_{n-1}`
    pub fn chain(n: usize) -> Self {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(n, &rel).expect("chain is acyclic")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strict order `i < j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i].get(j)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn down_set_size(&self, i: usize) -> usize {
        self.below[i].count() + 1
    }

    pub fn up_set_size(&self, i: usize) -> usize {
        self.above[i].count() + 1
    }

    pub fn dual(&self) -> FinitePoset {
        let rel: Vec<_> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        Self::from_relations(self.n, &rel).expect("dual of a poset is a poset")
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &FinitePoset) -> FinitePoset {
        let mut rel = self.covers.clone();
        rel.extend(other.covers.iter().map(|&(a, b)| (a + self.n, b + self.n)));
        Self::from_relations(self.n + other.n, &rel).expect("union of posets is a poset")
    }

    /// Smallest-index-first topological order.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = (0..self.n)
            .map(|i| self.covers.iter().filter(|c| c.1 == i).count())
            .collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..self.n).filter(|&i| indeg[i] == 0).collect();
        let mut out = Vec::with_capacity(self.n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            out.push(v);
            for &(a, b) in &self.covers {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        out
    }

    /// Whether `ideal` (given as a membership list) is down-closed.
    pub fn is_lower_ideal(&self, member: &[bool]) -> bool {
        self.covers
            .iter()
            .all(|&(lo, hi)| !member[hi] || member[lo])
    }

    /// Poset isomorphism by backtracking; intended for small instances.
    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        if self.n != other.n || self.covers.len() != other.covers.len() {
            return false;
        }
        let sig = |p: &FinitePoset, i: usize| {
            let lower = p.covers.iter().filter(|c| c.1 == i).count();
            let upper = p.covers.iter().filter(|c| c.0 == i).count();
            (lower, upper, p.down_set_size(i), p.up_set_size(i))
        };
        let a: Vec<_> = (0..self.n).map(|i| sig(self, i)).collect();
        let b: Vec<_> = (0..other.n).map(|i| sig(other, i)).collect();
        let mut sa = a.clone();
        let mut sb = b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
        fn search(
            i: usize,
            p: &FinitePoset,
            q: &FinitePoset,
            a: &[(usize, usize, usize, usize)],
            b: &[(usize, usize, usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == p.n {
                return true;
            }
            for cand in 0..q.n {
                if used[cand] || a[i] != b[cand] {
                    continue;
                }
                let consistent = (0..i)
                    .all(|j| p.lt(j, i) == q.lt(map[j], cand) && p.lt(i, j) == q.lt(cand, map[j]));
                if !consistent {
                    continue;
                }
                map[i] = cand;
                used[cand] = true;
                if search(i + 1, p, q, a, b, map, used) {
                    return true;
                }
                used[cand] = false;
            }
            false
        }
        search(0, self, other, &a, &b, &mut map, &mut used)
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    covers: Vec<[usize; 2]>,
}

impl Serialize for FinitePoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetJson {
            n: self.n,
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PosetJson::deserialize(d)?;
        let rel: Vec<_> = raw.covers.iter().map(|c| (c[0], c[1])).collect();
        FinitePoset::from_relations(raw.n, &rel).map_err(serde::de::Error::custom)
    }
}

/// A poset with designated left (target) and right (source) elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedPoset {
    pub poset: FinitePoset,
    pub left: usize,
    pub right: usize,
}

impl OrientedPoset {
    pub fn new(poset: FinitePoset, left: usize, right: usize) -> Result<Self> {
        for id in [left, right] {
            if id >= poset.size() {
                return Err(Error::InvalidElement {
                    id,
                    size: poset.size(),
                });
            }
        }
        Ok(OrientedPoset { poset, left, right })
    }

    /// Single node, left = right.
    pub fn up_step() -> Self {
        OrientedPoset {
            poset: FinitePoset::chain(1),
            left: 0,
            right: 0,
        }
    }

    /// `m`-element chain, left at the minimum, right at the maximum.
    pub fn increasing_chain(m: usize) -> Self {
        assert!(m > 0, "chain needs at least one element");
        OrientedPoset {
            poset: FinitePoset::chain(m),
            left: 0,
            right: m - 1,
        }
    }

    /// `m`-element chain, left at the maximum, right at the minimum.
    pub fn decreasing_chain(m: usize) -> Self {
        assert!(m > 0, "chain needs at least one element");
        OrientedPoset {
            poset: FinitePoset::chain(m),
            left: m - 1,
            right: 0,
        }
    }

    /// The `a x b` box (product of an `a`-chain and a `b`-chain); left is
    /// `(a-1, 0)`, right is `(0, b-1)`.
    pub fn box_poset(a: usize, b: usize) -> Self {
        assert!(a > 0 && b > 0, "box sides must be positive");
        let id = |i: usize, j: usize| i * b + j;
        let mut rel = Vec::new();
        for i in 0..a {
            for j in 0..b {
                if i + 1 < a {
                    rel.push((id(i, j), id(i + 1, j)));
                }
                if j + 1 < b {
                    rel.push((id(i, j), id(i, j + 1)));
                }
            }
        }
        let poset = FinitePoset::from_relations(a * b, &rel).expect("box is acyclic");
        OrientedPoset {
            poset,
            left: id(a - 1, 0),
            right: id(0, b - 1),
        }
    }

    /// Link `self.right` below `other.left`; the result keeps `self.left`
    /// and `other.right`.
    pub fn link(&self, other: &OrientedPoset) -> OrientedPoset {
        let n = self.poset.size();
        let mut rel = self.poset.covers().to_vec();
        rel.extend(other.poset.covers().iter().map(|&(a, b)| (a + n, b + n)));
        rel.push((self.right, other.left + n));
        let poset = FinitePoset::from_relations(n + other.poset.size(), &rel)
            .expect("linking two posets cannot create a cycle");
        OrientedPoset {
            poset,
            left: self.left,
            right: other.right + n,
        }
    }

    /// Close up by adding `right <= left`.
    pub fn closure(&self) -> Result<FinitePoset> {
        let mut rel = self.poset.covers().to_vec();
        rel.push((self.right, self.left));
        FinitePoset::from_relations(self.poset.size(), &rel)
    }
}

/// Fence poset on `sum(c) + 1` nodes: up-run `c_1`, down-run `c_2`, ...
pub fn build_fence(c: &Composition) -> Result<FinitePoset> {
    if c.is_empty() {
        return Err(Error::EmptyComposition);
    }
    let n = c.total() + 1;
    FinitePoset::from_relations(n, &zigzag(c, n))
}

/// Circular fence on `sum(c)` nodes: the fence with its two endpoints identified.
pub fn build_circular_fence(c: &Composition) -> Result<FinitePoset> {
    c.require_even()?;
    let n = c.total();
    FinitePoset::from_relations(n, &zigzag(c, n))
}

fn zigzag(c: &Composition, n: usize) -> Vec<(usize, usize)> {
    let mut rel = Vec::with_capacity(c.total());
    let mut idx = 0;
    for (run, &len) in c.parts().iter().enumerate() {
        for _ in 0..len {
            let (a, b) = (idx, (idx + 1) % n);
            rel.push(if run % 2 == 0 { (a, b) } else { (b, a) });
            idx += 1;
        }
    }
    rel
}

/// Element index of `y_{i,j}` (chain `i`, position `j` counted from 1 at the bottom).
fn chain_offsets(a: &Composition) -> Vec<usize> {
    a.parts()
        .iter()
        .scan(0, |acc, &p| {
            let o = *acc;
            *acc += p;
            Some(o)
        })
        .collect()
}

/// Chainlink poset: chains of lengths `a_i`, with the top `l` elements of
/// chain `i` covering the bottom `l` elements of chain `i+1` (cyclically):
/// `y_{i, a_i - l + j} > y_{i+1, j}` for `j = 1..l`.
///
/// Lower ideals correspond to lattice points of the chainlink polytope via
/// `x_i = |I ∩ chain i|`.
pub fn build_chainlink_poset(a: &Composition, l: usize) -> Result<FinitePoset> {
    if a.is_weak() {
        return Err(Error::ZeroPart {
            index: a.parts().iter().position(|&p| p == 0).unwrap_or(0),
        });
    }
    if l > a.min_part() {
        return Err(Error::Precondition(format!(
            "l <= min(a): l = {l} > min(a) = {}",
            a.min_part()
        )));
    }
    let off = chain_offsets(a);
    let s = a.len();
    let mut rel = Vec::new();
    for (i, &len) in a.parts().iter().enumerate() {
        for j in 1..len {
            rel.push((off[i] + j - 1, off[i] + j));
        }
        let next = (i + 1) % s;
        for j in 1..=l {
            let upper = off[i] + len - l + j - 1;
            let lower = off[next] + j - 1;
            rel.push((lower, upper));
        }
    }
    FinitePoset::from_relations(a.total(), &rel)
}

/// The composition `(a_1, l^k, a_2, l^k, ..., a_s, l^k)`.
pub fn stretched_composition(a: &Composition, l: usize, k: usize) -> Composition {
    let mut parts = Vec::with_capacity(a.len() * (k + 1));
    for &p in a.parts() {
        parts.push(p);
        parts.extend(std::iter::repeat_n(l, k));
    }
    Composition::weak(parts).expect("nonempty")
}

/// `k`-stretch of the chainlink poset: the chainlink poset of
/// `(a_1, l^k, ..., a_s, l^k)` with link `l`.
pub fn build_stretched_chainlink(a: &Composition, l: usize, k: usize) -> Result<FinitePoset> {
    if l == 0 && k > 0 {
        return Err(Error::Precondition(
            "stretching inserts parts of size l, so l >= 1".into(),
        ));
    }
    build_chainlink_poset(&stretched_composition(a, l, k), l)
}

/// Ideal counter over bitmasks; element indices are relabelled along a
/// linear extension so the lowest set bit of any subset is minimal in it.
struct IdealCounter<C> {
    up: Vec<u64>,
    memo: HashMap<u64, QPolynomial<C>>,
}

impl<C: Ring> IdealCounter<C> {
    fn count(&mut self, set: u64) -> QPolynomial<C> {
        if set == 0 {
            return QPolynomial::one();
        }
        if let Some(p) = self.memo.get(&set) {
            return p.clone();
        }
        let x = set.trailing_zeros() as usize;
        let without_up = self.count(set & !self.up[x]);
        let with_x = self.count(set & !(1u64 << x)).shift(1);
        let r = &without_up + &with_x;
        self.memo.insert(set, r.clone());
        r
    }
}

struct Relabelled<C> {
    counter: IdealCounter<C>,
    pos: Vec<usize>,
    down: Vec<u64>,
    full: u64,
}

fn relabel<C: Ring>(p: &FinitePoset, cap: usize) -> Result<Relabelled<C>> {
    let n = p.size();
    if n > cap.min(64) {
        return Err(Error::CapExceeded {
            size: n,
            cap: cap.min(64),
        });
    }
    let order = p.linear_extension();
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let remap = |row: &BitRow, me: usize| -> u64 {
        let w = row.low_word();
        (0..n)
            .filter(|&v| w >> v & 1 == 1)
            .fold(1u64 << pos[me], |m, v| m | 1 << pos[v])
    };
    let mut up = vec![0; n];
    let mut down = vec![0; n];
    for v in 0..n {
        up[pos[v]] = remap(&p.above[v], v);
        down[pos[v]] = remap(&p.below[v], v);
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(Relabelled {
        counter: IdealCounter {
            up,
            memo: HashMap::new(),
        },
        pos,
        down,
        full,
    })
}

/// Rank polynomial `sum_I q^|I|` over lower ideals, with the default cap.
pub fn rank_polynomial_bruteforce<C: Ring>(p: &FinitePoset) -> Result<QPolynomial<C>> {
    rank_polynomial_bruteforce_with_cap(p, DEFAULT_CAP)
}

pub fn rank_polynomial_bruteforce_with_cap<C: Ring>(
    p: &FinitePoset,
    cap: usize,
) -> Result<QPolynomial<C>> {
    let mut r = relabel::<C>(p, cap)?;
    Ok(r.counter.count(r.full))
}

/// Rank matrix of an oriented poset by direct ideal classification:
/// `[[R|x_R∈I, R|x_R∉I], [R|x_R∈I,x_L∉I, R|x_R∉I,x_L∉I]]`.
pub fn rank_matrix_bruteforce<C: Ring>(op: &OrientedPoset) -> Result<RankMatrix<C>> {
    rank_matrix_bruteforce_with_cap(op, DEFAULT_CAP)
}

pub fn rank_matrix_bruteforce_with_cap<C: Ring>(
    op: &OrientedPoset,
    cap: usize,
) -> Result<RankMatrix<C>> {
    let mut r = relabel::<C>(&op.poset, cap)?;
    let (xr, xl) = (r.pos[op.right], r.pos[op.left]);
    let down_r = r.down[xr];
    let up_r = r.counter.up[xr];
    let up_l = r.counter.up[xl];
    let lift = down_r.count_ones() as usize;

    let r_in = r.counter.count(r.full & !down_r).shift(lift);
    let r_out = r.counter.count(r.full & !up_r);
    let r_in_l_out = if down_r >> xl & 1 == 1 {
        QPolynomial::zero()
    } else {
        r.counter.count(r.full & !down_r & !up_l).shift(lift)
    };
    let r_out_l_out = r.counter.count(r.full & !up_r & !up_l);
    Ok(RankMatrix::new([[r_in, r_out], [r_in_l_out, r_out_l_out]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = QPolynomial<BigInt>;

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn fence_shapes() {
        let f = build_fence(&comp(&[2, 1, 1, 2])).unwrap();
        assert_eq!(f.size(), 7);
        // x1<x2<x3>x4<x5>x6>x7 with 0-based ids
        assert_eq!(
            f.covers(),
            &[(0, 1), (1, 2), (3, 2), (3, 4), (5, 4), (6, 5)]
        );
        assert_eq!(build_fence(&comp(&[1])).unwrap(), FinitePoset::chain(2));
        let c3 = build_fence(&comp(&[3])).unwrap();
        assert_eq!(c3.covers().len(), 3);
        assert!(c3.is_isomorphic(&FinitePoset::chain(4)));
    }

    #[test]
    fn circular_fence_shapes() {
        let f = build_circular_fence(&comp(&[2, 1, 1, 2])).unwrap();
        assert_eq!(f.size(), 6);
        assert_eq!(f.covers().len(), 6);
        let two = build_circular_fence(&comp(&[1, 1])).unwrap();
        assert_eq!(two.covers(), &[(0, 1)]);
        assert_eq!(
            rank_polynomial_bruteforce::<BigInt>(&two).unwrap(),
            P::from_i64s(&[1, 1, 1])
        );
        assert!(matches!(
            build_circular_fence(&comp(&[1, 1, 1])),
            Err(Error::OddLength(3))
        ));
    }

    #[test]
    fn chainlink_shapes() {
        let p = build_chainlink_poset(&comp(&[6, 4, 5]), 2).unwrap();
        assert_eq!(p.size(), 15);
        // 12 chain covers + 6 cross covers
        assert_eq!(p.covers().len(), 18);
        let zero = build_chainlink_poset(&comp(&[2, 3]), 0).unwrap();
        assert!(zero.is_isomorphic(&FinitePoset::chain(2).disjoint_union(&FinitePoset::chain(3))));
        assert!(build_chainlink_poset(&comp(&[2, 3]), 3).is_err());
        // all parts equal to l closes a cycle
        assert!(matches!(
            build_chainlink_poset(&comp(&[2, 2]), 2),
            Err(Error::Cyclic(_))
        ));
    }

    #[test]
    fn stretched_shapes() {
        let p = build_stretched_chainlink(&comp(&[6, 4, 5]), 2, 1).unwrap();
        assert_eq!(p.size(), 21);
        assert_eq!(
            build_stretched_chainlink(&comp(&[3, 4]), 1, 0).unwrap(),
            build_chainlink_poset(&comp(&[3, 4]), 1).unwrap()
        );
    }

    #[test]
    fn rank_polynomial_examples() {
        let crown = build_circular_fence(&comp(&[1, 1, 1, 1])).unwrap();
        assert_eq!(
            rank_polynomial_bruteforce::<BigInt>(&crown).unwrap(),
            P::from_i64s(&[1, 2, 1, 2, 1])
        );
        let f = build_circular_fence(&comp(&[2, 1, 1, 2])).unwrap();
        assert_eq!(
            rank_polynomial_bruteforce::<BigInt>(&f).unwrap(),
            P::from_i64s(&[1, 2, 3, 3, 3, 2, 1])
        );
        let anti = FinitePoset::antichain(5);
        assert_eq!(
            rank_polynomial_bruteforce::<BigInt>(&anti).unwrap(),
            P::from_i64s(&[1, 1]).pow(5)
        );
        let cl = build_chainlink_poset(&comp(&[2, 2]), 1).unwrap();
        assert_eq!(
            rank_polynomial_bruteforce::<BigInt>(&cl).unwrap(),
            P::from_i64s(&[1, 2, 1, 2, 1])
        );
    }

    #[test]
    fn cap_enforced() {
        let big = FinitePoset::antichain(30);
        assert_eq!(
            rank_polynomial_bruteforce::<BigInt>(&big),
            Err(Error::CapExceeded { size: 30, cap: 26 })
        );
        assert!(rank_polynomial_bruteforce_with_cap::<BigInt>(&big, 40).is_ok());
    }

    #[test]
    fn rank_matrix_examples() {
        let u = rank_matrix_bruteforce::<BigInt>(&OrientedPoset::up_step()).unwrap();
        assert_eq!(u, RankMatrix::from_i64s([[&[0, 1], &[1]], [&[], &[1]]]));
        let up2 = rank_matrix_bruteforce::<BigInt>(&OrientedPoset::increasing_chain(2)).unwrap();
        assert_eq!(
            up2,
            RankMatrix::from_i64s([[&[0, 0, 1], &[1, 1]], [&[], &[1]]])
        );
        let down2 = rank_matrix_bruteforce::<BigInt>(&OrientedPoset::decreasing_chain(2)).unwrap();
        assert_eq!(
            down2,
            RankMatrix::from_i64s([[&[0, 1, 1], &[1]], [&[0, 1], &[1]]])
        );
    }

    #[test]
    fn json_round_trip() {
        let p = build_circular_fence(&comp(&[2, 1, 1, 2])).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with(r#"{"n":6,"covers":[[0,1]"#));
        let back: FinitePoset = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<FinitePoset>(r#"{"n":2,"covers":[[0,1],[1,0]]}"#).is_err());
        assert!(serde_json::from_str::<FinitePoset>(r#"{"n":2,"covers":[[0,5]]}"#).is_err());
    }

    #[test]
    fn isomorphism_distinguishes() {
        let a = build_circular_fence(&comp(&[2, 1, 1, 2])).unwrap();
        let shifted = build_circular_fence(&comp(&[2, 2, 1, 1])).unwrap();
        let rotated = build_circular_fence(&comp(&[1, 2, 2, 1])).unwrap();
        assert!(a.is_isomorphic(&rotated));
        // one-part shift is the vertical reflection
        assert!(shifted.is_isomorphic(&a.dual()));
        assert!(!shifted.is_isomorphic(&a));
        assert!(!a.is_isomorphic(&FinitePoset::chain(6)));
    }
}
