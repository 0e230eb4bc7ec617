//! Scans over families: unimodality of circular fences, the zero-part rank
//! recurrence, and stretched chainlink posets.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::composition::{bounded_compositions, compositions_of, Composition};
use crate::error::{Error, Result};
use crate::poset::{build_fence, build_stretched_chainlink, rank_polynomial_bruteforce};
use crate::qpoly::{analyze_modality, QPolynomial};
use crate::transfer::{alternating_trace, circular_fence_rank_polynomial};
use crate::{Integer, QPoly};

/// Pairs `(a, l)` with `s ∈ lens`, parts in `1..=max_part` and `1 ≤ 2l ≤ min(a)`.
pub fn chainlink_family(lens: RangeInclusive<usize>, max_part: usize) -> Vec<(Composition, usize)> {
    lens.flat_map(|s| bounded_compositions(s, 1, max_part))
        .flat_map(|a| (1..=a.min_part() / 2).map(move |l| (a.clone(), l)))
        .collect()
}

/// Largest total accepted by [`unimodality_scan`].
pub const SCAN_MAX_TOTAL: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub composition: Composition,
    pub peak_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub max_total: usize,
    pub instances_checked: usize,
    /// Non-unimodal instances, in enumeration order.
    pub violations: Vec<Violation>,
    /// Non-unimodal instances outside the `(a,1,a,1)` / `(1,a,1,a)` patterns.
    pub unexpected: Vec<Composition>,
    /// Pattern instances that turned out unimodal.
    pub missing: Vec<Composition>,
    /// Instances whose rank polynomial is not palindromic.
    pub asymmetric: Vec<Composition>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanResult {
    pub fn passed(&self) -> bool {
        self.unexpected.is_empty() && self.missing.is_empty() && self.asymmetric.is_empty()
    }
}

/// `(a,1,a,1)` or `(1,a,1,a)` for some `a ≥ 1`, read literally.
pub fn is_exception_pattern(c: &Composition) -> bool {
    match *c.parts() {
        [a, 1, b, 1] | [1, a, 1, b] => a == b,
        _ => false,
    }
}

/// Even-length compositions with total in `2..=max_total`, by total then
/// lexicographically.
pub fn even_compositions(max_total: usize) -> Vec<Composition> {
    (2..=max_total)
        .flat_map(compositions_of)
        .filter(|c| c.len() % 2 == 0)
        .collect()
}

/// Classifies every circular fence with `Σc ≤ max_total` by modality.
pub fn unimodality_scan(max_total: usize) -> Result<ScanResult> {
    if max_total > SCAN_MAX_TOTAL {
        return Err(Error::Precondition(format!(
            "max_total <= {SCAN_MAX_TOTAL}: max_total = {max_total}"
        )));
    }
    let start = Instant::now();
    let inputs = even_compositions(max_total);
    let rows: Vec<(Composition, usize, bool)> = inputs
        .par_iter()
        .map(|c| {
            let p: QPoly = circular_fence_rank_polynomial(c)?;
            let m = analyze_modality(&p)?;
            Ok((c.clone(), m.peak_count, p.is_palindromic()))
        })
        .collect::<Result<_>>()?;
    let mut result = ScanResult {
        max_total,
        instances_checked: rows.len(),
        violations: Vec::new(),
        unexpected: Vec::new(),
        missing: Vec::new(),
        asymmetric: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for (c, peaks, palindromic) in rows {
        let pattern = is_exception_pattern(&c);
        if peaks > 1 {
            if !pattern {
                result.unexpected.push(c.clone());
            }
            result.violations.push(Violation {
                composition: c.clone(),
                peak_count: peaks,
            });
        } else if pattern {
            result.missing.push(c.clone());
        }
        if !palindromic {
            result.asymmetric.push(c);
        }
    }
    result.elapsed = start.elapsed();
    Ok(result)
}

#[derive(Clone, Debug, Serialize)]
pub struct FenceScan {
    pub max_total: usize,
    pub instances_checked: usize,
    pub non_unimodal: Vec<Composition>,
}

/// Checks that the (non-circular) fence of every composition with
/// `Σc ≤ max_total` has a unimodal rank polynomial, by ideal enumeration.
pub fn fence_unimodality_scan(max_total: usize) -> Result<FenceScan> {
    let inputs: Vec<Composition> = (1..=max_total).flat_map(compositions_of).collect();
    let flags: Vec<bool> = inputs
        .par_iter()
        .map(|c| {
            let p: QPoly = rank_polynomial_bruteforce(&build_fence(c)?)?;
            Ok(analyze_modality(&p)?.unimodal)
        })
        .collect::<Result<_>>()?;
    let non_unimodal = inputs
        .iter()
        .zip(&flags)
        .filter(|(_, &ok)| !ok)
        .map(|(c, _)| c.clone())
        .collect();
    Ok(FenceScan {
        max_total,
        instances_checked: inputs.len(),
        non_unimodal,
    })
}

fn weak(parts: Vec<usize>) -> Composition {
    Composition::weak(parts).expect("nonempty")
}

/// Checks `R(a,1,b,X) = R(a-1,1,b,X) + R(a,1,b-1,X) - R(a-1,1,b-1,X)
/// + R(a+b+1,X) - R(a+b,X)`, where a zero part merges its neighbours.
pub fn verify_rank_recurrence(a: usize, b: usize, x: &Composition) -> Result<bool> {
    if x.len().is_multiple_of(2) {
        return Err(Error::EvenLength(x.len()));
    }
    if a == 0 || b == 0 {
        return Err(Error::Precondition("a >= 1 and b >= 1".into()));
    }
    if x.is_weak() {
        return Err(Error::ZeroPart {
            index: x.parts().iter().position(|&p| p == 0).unwrap_or(0),
        });
    }
    let total = a + b + 1 + x.total();
    if total > 18 {
        return Err(Error::Precondition(format!(
            "a + 1 + b + |X| <= 18: {total}"
        )));
    }
    let with = |head: &[usize]| {
        weak(
            head.iter()
                .copied()
                .chain(x.parts().iter().copied())
                .collect(),
        )
    };
    let r = |head: &[usize]| alternating_trace::<Integer>(&with(head));
    let lhs = r(&[a, 1, b])?;
    let rhs = &(&(&(&r(&[a - 1, 1, b])? + &r(&[a, 1, b - 1])?) - &r(&[a - 1, 1, b - 1])?)
        + &r(&[a + b + 1])?)
        - &r(&[a + b])?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StretchRow {
    pub k: usize,
    pub size: usize,
    pub rank_polynomial: QPolynomial<Integer>,
    pub peak_count: usize,
    pub palindromic: bool,
}

/// Rank polynomials and peak counts of the `k`-stretches for `k = 0..=k_max`,
/// by ideal enumeration (poset size capped as in the posets module).
pub fn stretch_analysis(a: &Composition, l: usize, k_max: usize) -> Result<Vec<StretchRow>> {
    (0..=k_max)
        .map(|k| {
            let p = build_stretched_chainlink(a, l, k)?;
            let poly: QPoly = rank_polynomial_bruteforce(&p)?;
            let m = analyze_modality(&poly)?;
            Ok(StretchRow {
                k,
                size: p.size(),
                palindromic: poly.is_palindromic(),
                peak_count: m.peak_count,
                rank_polynomial: poly,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        Composition::parse(s).unwrap()
    }

    #[test]
    fn small_scans() {
        let r = unimodality_scan(4).unwrap();
        assert_eq!(
            r.violations,
            vec![Violation {
                composition: c("1,1,1,1"),
                peak_count: 2
            }]
        );
        assert!(r.passed());
        let r = unimodality_scan(2).unwrap();
        assert_eq!(r.instances_checked, 1);
        assert!(r.violations.is_empty());
        let r = unimodality_scan(8).unwrap();
        let found: Vec<Composition> = r.violations.iter().map(|v| v.composition.clone()).collect();
        for s in ["1,1,1,1", "2,1,2,1", "1,2,1,2", "3,1,3,1", "1,3,1,3"] {
            assert!(found.contains(&c(s)), "{s}");
        }
        assert_eq!(found.len(), 5);
        assert!(r.passed());
        assert!(unimodality_scan(19).is_err());
    }

    #[test]
    fn family_sizes() {
        let f = chainlink_family(1..=1, 5);
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|(a, l)| 2 * l <= a.min_part()));
    }

    #[test]
    fn patterns() {
        assert!(is_exception_pattern(&c("4,1,4,1")));
        assert!(is_exception_pattern(&c("1,2,1,2")));
        assert!(!is_exception_pattern(&c("2,1,3,1")));
        assert!(!is_exception_pattern(&c("1,1,2,1,1,2")));
    }

    #[test]
    fn recurrence_examples() {
        assert!(verify_rank_recurrence(2, 2, &c("1")).unwrap());
        assert!(verify_rank_recurrence(1, 1, &c("3")).unwrap());
        assert!(verify_rank_recurrence(1, 2, &c("1,1,1")).unwrap());
        assert!(verify_rank_recurrence(1, 1, &c("1,1")).is_err());
    }

    #[test]
    fn fences_unimodal() {
        let r = fence_unimodality_scan(8).unwrap();
        assert!(r.non_unimodal.is_empty());
        assert_eq!(r.instances_checked, 255);
    }

    #[test]
    fn stretch_rows() {
        let rows = stretch_analysis(&c("2,2"), 1, 2).unwrap();
        assert_eq!(rows[0].rank_polynomial, QPoly::from_i64s(&[1, 2, 1, 2, 1]));
        assert_eq!(rows[0].peak_count, 2);
        assert_eq!(rows[1].size, 6);
        assert!(rows.iter().all(|r| r.palindromic));
        let rows = stretch_analysis(&c("4,4"), 2, 0).unwrap();
        assert_eq!(rows[0].peak_count, 3);
    }
}
