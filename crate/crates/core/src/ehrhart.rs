//! Dilation counts of chainlink-polytope sections and quasi-polynomial fits.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::geometry::{
    build_chainlink_hrep, chainlink_vertices, count_lattice_points, section_vertices, solve,
};
use crate::poset::{build_chainlink_poset, rank_polynomial_bruteforce, DEFAULT_CAP};
use crate::qpoly::QPolynomial;
use crate::scalar::{denominator_lcm, display_vec, Field};
use crate::transfer::chainlink_rank_polynomial;
use crate::{Integer, Rational};

/// `k ↦ constituents[k mod period](k)`, coefficients constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial<F> {
    period: usize,
    constituents: Vec<Vec<F>>,
    degree: usize,
}

impl<F: Field> QuasiPolynomial<F> {
    /// Constituents are padded with zeros to `degree + 1` coefficients.
    pub fn new(constituents: Vec<Vec<F>>, degree: usize) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::Precondition("period >= 1".into()));
        }
        let mut constituents = constituents;
        for c in &mut constituents {
            if c.len() > degree + 1 {
                if c[degree + 1..].iter().any(|x| !x.is_zero()) {
                    return Err(Error::Invariant(format!(
                        "constituent exceeds degree {degree}"
                    )));
                }
                c.truncate(degree + 1);
            }
            c.resize(degree + 1, F::zero());
        }
        Ok(QuasiPolynomial {
            period: constituents.len(),
            constituents,
            degree,
        })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn constituents(&self) -> &[Vec<F>] {
        &self.constituents
    }

    pub fn eval(&self, k: u64) -> F {
        let c = &self.constituents[(k % self.period as u64) as usize];
        let x = F::from_int(i64::try_from(k).expect("dilation fits in i64"));
        c.iter()
            .rev()
            .fold(F::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    /// Whether every constituent is the same polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.constituents.windows(2).all(|w| w[0] == w[1])
    }
}

impl<F: Field> Serialize for QuasiPolynomial<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            period: usize,
            constituents: Vec<Vec<String>>,
            degree: usize,
        }
        Raw {
            period: self.period,
            constituents: self
                .constituents
                .iter()
                .map(|c| c.iter().map(|x| x.to_string()).collect())
                .collect(),
            degree: self.degree,
        }
        .serialize(s)
    }
}

impl<'de, F: Field> Deserialize<'de> for QuasiPolynomial<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            period: usize,
            constituents: Vec<Vec<String>>,
            degree: usize,
        }
        let raw = Raw::deserialize(d)?;
        let constituents = raw
            .constituents
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| display_vec::parse(x))
                    .collect::<std::result::Result<Vec<F>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let qp = QuasiPolynomial::new(constituents, raw.degree).map_err(D::Error::custom)?;
        if qp.period != raw.period {
            return Err(D::Error::custom(
                "period does not match the number of constituents",
            ));
        }
        Ok(qp)
    }
}

/// Counts `L_t(k) = #(CL^{kt}(k a, k l) ∩ Z^s)`, caching rank polynomials
/// of the dilated chainlink posets across calls.
pub struct SectionCounter {
    a: Composition,
    l: usize,
    rank_polys: Mutex<HashMap<u64, Option<Arc<QPolynomial<Integer>>>>>,
}

impl SectionCounter {
    pub fn new(a: &Composition, l: usize) -> Self {
        SectionCounter {
            a: a.clone(),
            l,
            rank_polys: Mutex::new(HashMap::new()),
        }
    }

    /// Rank polynomial of `P_CL(k a, k l)`: by transfer matrices when
    /// `2l ≤ min(a)`, by ideal enumeration when the poset is small enough,
    /// otherwise unavailable.
    fn rank_poly(&self, k: u64) -> Result<Option<Arc<QPolynomial<Integer>>>> {
        if let Some(p) = self.rank_polys.lock().expect("cache lock").get(&k) {
            return Ok(p.clone());
        }
        let kk = usize::try_from(k).map_err(|_| Error::Overflow)?;
        let ka = self.a.scaled(kk);
        let poly = if 2 * self.l <= self.a.min_part() {
            Some(Arc::new(chainlink_rank_polynomial(&ka, kk * self.l)?))
        } else if self.l <= self.a.min_part() && ka.total() <= DEFAULT_CAP {
            Some(Arc::new(rank_polynomial_bruteforce(
                &build_chainlink_poset(&ka, kk * self.l)?,
            )?))
        } else {
            None
        };
        self.rank_polys
            .lock()
            .expect("cache lock")
            .insert(k, poly.clone());
        Ok(poly)
    }

    /// `L_t(k)`; a disagreement between the two counting paths is an error.
    pub fn count(&self, t: i64, k: u64) -> Result<u64> {
        let n = i64::try_from(self.a.total()).map_err(|_| Error::Overflow)?;
        if !(0..=n).contains(&t) {
            return Err(Error::Precondition(format!("0 <= t <= {n}: t = {t}")));
        }
        if k == 0 {
            return Err(Error::Precondition("dilation k >= 1".into()));
        }
        let kk = usize::try_from(k).map_err(|_| Error::Overflow)?;
        let p = build_chainlink_hrep::<Rational>(&self.a.scaled(kk), kk * self.l);
        let kt = Rational::from_integer(BigInt::from(t) * BigInt::from(k));
        let enumerated = count_lattice_points(&p, Some(&kt), 1)?;
        if let Some(poly) = self.rank_poly(k)? {
            let e = usize::try_from(t as u64 * k).map_err(|_| Error::Overflow)?;
            let transfer = poly.coeff(e).to_u64().ok_or(Error::Overflow)?;
            if transfer != enumerated {
                return Err(Error::PathDisagreement {
                    t,
                    k,
                    transfer,
                    enumeration: enumerated,
                });
            }
        }
        Ok(enumerated)
    }

    /// Counts for `k = 1..=m`, computed in parallel, in order.
    pub fn counts(&self, t: i64, m: u64) -> Result<Vec<u64>> {
        (1..=m).into_par_iter().map(|k| self.count(t, k)).collect()
    }
}

pub fn count_dilated_section(a: &Composition, l: usize, t: i64, k: u64) -> Result<u64> {
    SectionCounter::new(a, l).count(t, k)
}

/// Affine dimension of the section `CL^t(a, l)`.
pub fn section_dimension(a: &Composition, l: usize, t: i64) -> Result<usize> {
    let v = section_vertices::<Rational>(a, l, &Rational::from_integer(t.into()))?;
    v.affine_dim().ok_or(Error::EmptySection)
}

/// Lowest common multiple of the denominators of the section's vertex coordinates.
pub fn section_vertex_period(a: &Composition, l: usize, t: i64) -> Result<usize> {
    let v = section_vertices::<Rational>(a, l, &Rational::from_integer(t.into()))?;
    if v.is_empty() {
        return Err(Error::EmptySection);
    }
    let all: Vec<Rational> = v.vertices.into_iter().flatten().collect();
    denominator_lcm(&all).to_usize().ok_or(Error::Overflow)
}

/// Fits constituents of the given period and degree through the samples
/// `k = 1..=period (degree + 1)`, then checks `max(4, period)` further samples.
pub fn fit_quasipolynomial<F: Field>(
    period: usize,
    degree: usize,
    count: impl Fn(u64) -> Result<u64> + Sync,
) -> Result<QuasiPolynomial<F>> {
    if period == 0 {
        return Err(Error::Precondition("period >= 1".into()));
    }
    let fit_n = (period * (degree + 1)) as u64;
    let extra = period.max(4) as u64;
    let samples: Vec<u64> = (1..=fit_n + extra)
        .into_par_iter()
        .map(&count)
        .collect::<Result<_>>()?;
    let mut constituents = vec![Vec::new(); period];
    for (r, slot) in constituents.iter_mut().enumerate() {
        let ks: Vec<u64> = (1..=fit_n)
            .filter(|k| (*k as usize) % period == r)
            .collect();
        let rows: Vec<Vec<F>> = ks
            .iter()
            .map(|&k| {
                let x = F::from_int(k as i64);
                let mut p = F::one();
                (0..=degree)
                    .map(|_| {
                        let v = p.clone();
                        p = p.clone() * x.clone();
                        v
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<F> = ks
            .iter()
            .map(|&k| from_u64(samples[(k - 1) as usize]))
            .collect();
        *slot = solve(rows, rhs)
            .ok_or_else(|| Error::Invariant("singular interpolation system".into()))?;
    }
    let qp = QuasiPolynomial::new(constituents, degree)?;
    for k in fit_n + 1..=fit_n + extra {
        let counted = samples[(k - 1) as usize];
        let predicted = qp.eval(k);
        if predicted != from_u64(counted) {
            return Err(Error::Validation {
                k,
                predicted: predicted.to_string(),
                counted,
            });
        }
    }
    Ok(qp)
}

fn from_u64<F: Field>(n: u64) -> F {
    F::from_int(i64::try_from(n).expect("count fits in i64"))
}

fn require_half_link(a: &Composition, l: usize) -> Result<()> {
    if 2 * l > a.min_part() {
        return Err(Error::Precondition(format!(
            "2l <= min(a): 2*{l} = {} > min(a) = {}",
            2 * l,
            a.min_part()
        )));
    }
    Ok(())
}

/// Period-2 fit of `k ↦ L_t(k)` with the degree taken from the section's
/// vertex affine rank. Requires `2l ≤ min(a)`.
pub fn fit_section_quasipolynomial<F: Field>(
    a: &Composition,
    l: usize,
    t: i64,
) -> Result<QuasiPolynomial<F>> {
    require_half_link(a, l)?;
    fit_section_with(&SectionCounter::new(a, l), t, 2)
}

/// Like [`fit_section_quasipolynomial`] without the `2l ≤ min(a)`
/// requirement; the period is the lcm of the section's vertex denominators.
pub fn fit_section_quasipolynomial_forced<F: Field>(
    a: &Composition,
    l: usize,
    t: i64,
) -> Result<QuasiPolynomial<F>> {
    let period = section_vertex_period(a, l, t)?;
    fit_section_with(&SectionCounter::new(a, l), t, period)
}

/// Fit against an existing counter with an explicit period.
pub fn fit_section_with<F: Field>(
    counter: &SectionCounter,
    t: i64,
    period: usize,
) -> Result<QuasiPolynomial<F>> {
    let degree = section_dimension(&counter.a, counter.l, t)?;
    fit_quasipolynomial(period, degree, |k| counter.count(t, k))
}

/// Shared leading coefficient of the constituents: `lim L(k) / k^d`.
pub fn relative_volume<F: Field>(qp: &QuasiPolynomial<F>) -> Result<F> {
    let d = qp.degree();
    let lead = qp.constituents()[0][d].clone();
    if qp.constituents().iter().any(|c| c[d] != lead) {
        return Err(Error::LeadingMismatch);
    }
    if lead.is_zero() {
        return Err(Error::Precondition(format!("degree {d} is not attained")));
    }
    Ok(lead)
}

/// Ehrhart polynomial of the full polytope `CL(a, l)` (period 1, degree the
/// polytope's dimension), fitted on `k = 1..=d+1` and validated on 4 more.
pub fn full_polytope_ehrhart<F: Field>(a: &Composition, l: usize) -> Result<QuasiPolynomial<F>> {
    let degree = chainlink_vertices::<Rational>(a, l)?
        .affine_dim()
        .ok_or(Error::EmptySection)?;
    let p = build_chainlink_hrep::<Rational>(a, l);
    fit_quasipolynomial(1, degree, |k| count_lattice_points(&p, None, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionPair {
    pub t: i64,
    pub complement: i64,
    /// `L_t(k) = L_{n-t}(k)` for `k = 1..=4`.
    pub counts_equal: bool,
    pub counts_t: Vec<u64>,
    pub counts_complement: Vec<u64>,
    /// Fitted quasi-polynomials coincide.
    pub fits_equal: bool,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementaryReport {
    pub composition: Composition,
    pub link: usize,
    pub n: usize,
    pub forced: bool,
    pub pairs: Vec<SectionPair>,
    /// Values of `t ≤ n - t` whose pair differs in counts or fits.
    pub violations: Vec<i64>,
}

impl ComplementaryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Number of dilations compared directly in [`check_complementary_symmetry`].
pub const SYMMETRY_DILATIONS: u64 = 4;

/// Compares `t` and `n - t` sections for every `0 ≤ t ≤ n/2`. Without
/// `force` this needs `2l ≤ min(a)` and fits with period 2; with `force` the
/// period is the lcm of both sections' vertex denominators.
pub fn check_complementary_symmetry<F: Field>(
    a: &Composition,
    l: usize,
    force: bool,
) -> Result<ComplementaryReport> {
    if !force {
        require_half_link(a, l)?;
    }
    let n = a.total() as i64;
    let counter = SectionCounter::new(a, l);
    let mut pairs = Vec::new();
    for t in 0..=n / 2 {
        let u = n - t;
        let counts_t = counter.counts(t, SYMMETRY_DILATIONS)?;
        let counts_complement = counter.counts(u, SYMMETRY_DILATIONS)?;
        let period = if force {
            section_vertex_period(a, l, t)?.lcm(&section_vertex_period(a, l, u)?)
        } else {
            2
        };
        let fit_t: QuasiPolynomial<F> = fit_section_with(&counter, t, period)?;
        let fit_u: QuasiPolynomial<F> = fit_section_with(&counter, u, period)?;
        pairs.push(SectionPair {
            t,
            complement: u,
            counts_equal: counts_t == counts_complement,
            counts_t,
            counts_complement,
            fits_equal: fit_t == fit_u,
            period,
        });
    }
    let violations = pairs
        .iter()
        .filter(|p| !(p.counts_equal && p.fits_equal))
        .map(|p| p.t)
        .collect();
    Ok(ComplementaryReport {
        composition: a.clone(),
        link: l,
        n: a.total(),
        forced: force,
        pairs,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        Composition::parse(s).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn segment_counts() {
        let counts: Vec<u64> = (1..=4)
            .map(|k| count_dilated_section(&c("2,2"), 1, 2, k).unwrap())
            .collect();
        assert_eq!(counts, vec![1, 3, 3, 5]);
        assert_eq!(count_dilated_section(&c("6,4,5"), 3, 7, 1).unwrap(), 9);
        assert_eq!(count_dilated_section(&c("6,4,5"), 3, 8, 1).unwrap(), 10);
        assert_eq!(count_dilated_section(&c("6,4,5"), 2, 0, 3).unwrap(), 1);
        assert!(count_dilated_section(&c("2,2"), 1, 5, 1).is_err());
    }

    #[test]
    fn segment_fit() {
        let qp: QuasiPolynomial<Rational> = fit_section_quasipolynomial(&c("2,2"), 1, 2).unwrap();
        assert_eq!(qp.period(), 2);
        assert_eq!(qp.constituents()[0], vec![r(1, 1), r(1, 1)]);
        assert_eq!(qp.constituents()[1], vec![r(0, 1), r(1, 1)]);
        assert_eq!(relative_volume(&qp).unwrap(), r(1, 1));
        let point: QuasiPolynomial<Rational> =
            fit_section_quasipolynomial(&c("2,2"), 1, 0).unwrap();
        assert_eq!(point.degree(), 0);
        assert!(point.is_polynomial());
        assert_eq!(relative_volume(&point).unwrap(), r(1, 1));
    }

    #[test]
    fn complementary_example_pair() {
        let a = c("6,4,5");
        let x: QuasiPolynomial<Rational> = fit_section_quasipolynomial(&a, 2, 4).unwrap();
        let y: QuasiPolynomial<Rational> = fit_section_quasipolynomial(&a, 2, 11).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn forced_ratio() {
        let a = c("6,4,5");
        assert!(fit_section_quasipolynomial::<Rational>(&a, 3, 7).is_err());
        let x: QuasiPolynomial<Rational> = fit_section_quasipolynomial_forced(&a, 3, 7).unwrap();
        let y: QuasiPolynomial<Rational> = fit_section_quasipolynomial_forced(&a, 3, 8).unwrap();
        let vx = relative_volume(&x).unwrap();
        let vy = relative_volume(&y).unwrap();
        assert_eq!(vx, r(71, 12));
        assert_eq!(vy, r(6, 1));
        assert_eq!(&vx / &vy, r(71, 72));
    }

    #[test]
    fn forced_symmetry_violation() {
        let report = check_complementary_symmetry::<Rational>(&c("6,4,5"), 3, true).unwrap();
        assert!(report.violations.contains(&7));
        assert!(check_complementary_symmetry::<Rational>(&c("6,4,5"), 3, false).is_err());
        let ok = check_complementary_symmetry::<Rational>(&c("2,2"), 1, false).unwrap();
        assert!(ok.passed());
        assert_eq!(ok.pairs.len(), 3);
    }

    #[test]
    fn full_polytope() {
        let qp: QuasiPolynomial<Rational> = full_polytope_ehrhart(&c("6,4,5"), 2).unwrap();
        assert!(qp.is_polynomial());
        assert_eq!(relative_volume(&qp).unwrap(), r(90, 1));
        let qp: QuasiPolynomial<Rational> = full_polytope_ehrhart(&c("4,4,4,4"), 1).unwrap();
        assert_eq!(relative_volume(&qp).unwrap(), r(449, 2));
    }

    #[test]
    fn json_shape() {
        let qp: QuasiPolynomial<Rational> = fit_section_quasipolynomial(&c("2,2"), 1, 2).unwrap();
        let s = serde_json::to_string(&qp).unwrap();
        assert_eq!(
            s,
            r#"{"period":2,"constituents":[["1","1"],["0","1"]],"degree":1}"#
        );
        let back: QuasiPolynomial<Rational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, qp);
    }
}
