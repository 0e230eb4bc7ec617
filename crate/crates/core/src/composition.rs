use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of nonnegative integers.
///
/// Constructed through [`Composition::new`] all parts are positive; a weak
/// composition (zeros allowed) comes from [`Composition::weak`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if let Some(index) = parts.iter().position(|&p| p == 0) {
            return Err(Error::ZeroPart { index });
        }
        Ok(Composition(parts))
    }

    pub fn weak(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        Ok(Composition(parts))
    }

    /// Parse comma-separated integers, e.g. `"6,4,5"`. Zeros are rejected.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(Self::parse_parts(s)?)
    }

    /// Like [`Composition::parse`] but zeros are allowed.
    pub fn parse_weak(s: &str) -> Result<Self> {
        Self::weak(Self::parse_parts(s)?)
    }

    fn parse_parts(s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::EmptyComposition);
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::MalformedComposition(s.to_string()))
            })
            .collect()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn min_part(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn is_weak(&self) -> bool {
        self.0.contains(&0)
    }

    pub fn require_even(&self) -> Result<()> {
        if self.len() % 2 == 1 {
            return Err(Error::OddLength(self.len()));
        }
        Ok(())
    }

    /// Multiply every part by `k`.
    pub fn scaled(&self, k: usize) -> Composition {
        Composition(self.0.iter().map(|p| p * k).collect())
    }

    /// Cyclic rotation by one step to the right: `(c_1..c_m) -> (c_m, c_1..c_{m-1})`.
    pub fn shift(&self) -> Composition {
        let mut v = self.0.clone();
        v.rotate_right(1);
        Composition(v)
    }

    /// Remove zero parts of a cyclic weak composition by merging the two
    /// neighbours of each zero. Returns `None` when everything collapses.
    pub fn merge_cyclic_zeros(&self) -> Option<Composition> {
        let mut v = self.0.clone();
        while let Some(i) = v.iter().position(|&p| p == 0) {
            let m = v.len();
            if m <= 2 {
                return None;
            }
            let prev = (i + m - 1) % m;
            let next = (i + 1) % m;
            v[prev] += v[next];
            // remove the larger index first so the smaller one stays valid
            let (hi, lo) = if i > next { (i, next) } else { (next, i) };
            v.remove(hi);
            v.remove(lo);
        }
        Some(Composition(v))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Composition::parse(s)
    }
}

/// All compositions of `total` into positive parts, in lexicographic order.
pub fn compositions_of(total: usize) -> Vec<Composition> {
    fn go(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for first in 1..=rest {
            prefix.push(first);
            go(rest - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if total > 0 {
        go(total, &mut Vec::new(), &mut out);
    }
    out
}

/// All compositions with exactly `len` parts, each in `lo..=hi`.
pub fn bounded_compositions(len: usize, lo: usize, hi: usize) -> Vec<Composition> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Composition).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reject() {
        assert_eq!(Composition::parse("6,4,5").unwrap().parts(), &[6, 4, 5]);
        assert_eq!(Composition::parse(" 1, 2 ").unwrap().total(), 3);
        assert!(matches!(
            Composition::parse("1,0"),
            Err(Error::ZeroPart { index: 1 })
        ));
        assert!(matches!(
            Composition::parse(""),
            Err(Error::EmptyComposition)
        ));
        assert!(matches!(
            Composition::parse("1,x"),
            Err(Error::MalformedComposition(_))
        ));
        assert!(Composition::parse_weak("1,0,2").unwrap().is_weak());
    }

    #[test]
    fn compositions_count() {
        for n in 1..10 {
            assert_eq!(compositions_of(n).len(), 1 << (n - 1));
        }
        assert_eq!(bounded_compositions(3, 2, 5).len(), 64);
    }

    #[test]
    fn zero_merging() {
        let c = Composition::weak(vec![0, 1, 2, 3]).unwrap();
        // neighbours 3 and 1 merge
        assert_eq!(c.merge_cyclic_zeros().unwrap().parts(), &[2, 4]);
        let c = Composition::weak(vec![2, 1, 0, 1]).unwrap();
        assert_eq!(c.merge_cyclic_zeros().unwrap().parts(), &[2, 2]);
        assert_eq!(
            Composition::weak(vec![0, 1]).unwrap().merge_cyclic_zeros(),
            None
        );
    }
}
