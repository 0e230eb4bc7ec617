//! The 2×2 rank-matrix calculus for oriented posets.
//!
//! Linking the source of one oriented poset below the target of the next
//! multiplies their rank matrices; closing an oriented poset into a cycle
//! takes the trace. `U` is the single-node up step, `D` the down step and
//! `box_matrix(a, b)` the rank matrix of the oriented `a × b` box.

use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::qpoly::{gaussian_binomial, QPolynomial};
use crate::scalar::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent, bound(serialize = "C: Ring"))]
pub struct RankMatrix<C> {
    entries: [[QPolynomial<C>; 2]; 2],
}

impl<C: Ring> RankMatrix<C> {
    pub fn new(entries: [[QPolynomial<C>; 2]; 2]) -> Self {
        RankMatrix { entries }
    }

    pub fn from_i64s(e: [[&[i64]; 2]; 2]) -> Self {
        let p = QPolynomial::from_i64s;
        RankMatrix::new([[p(e[0][0]), p(e[0][1])], [p(e[1][0]), p(e[1][1])]])
    }

    pub fn identity() -> Self {
        let (o, z) = (QPolynomial::one(), QPolynomial::zero());
        RankMatrix::new([[o.clone(), z.clone()], [z, o]])
    }

    pub fn scalar(p: QPolynomial<C>) -> Self {
        let z = QPolynomial::zero();
        RankMatrix::new([[p.clone(), z.clone()], [z, p]])
    }

    pub fn entry(&self, i: usize, j: usize) -> &QPolynomial<C> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[[QPolynomial<C>; 2]; 2] {
        &self.entries
    }

    pub fn trace(&self) -> QPolynomial<C> {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn det(&self) -> QPolynomial<C> {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    pub fn transpose(&self) -> Self {
        let e = &self.entries;
        RankMatrix::new([
            [e[0][0].clone(), e[1][0].clone()],
            [e[0][1].clone(), e[1][1].clone()],
        ])
    }

    pub fn scale(&self, p: &QPolynomial<C>) -> Self {
        let e = &self.entries;
        RankMatrix::new([[p * &e[0][0], p * &e[0][1]], [p * &e[1][0], p * &e[1][1]]])
    }

    /// Entry-wise evaluation at a value of `q`.
    pub fn eval(&self, q: &C) -> [[C; 2]; 2] {
        let e = &self.entries;
        [
            [e[0][0].eval(q), e[0][1].eval(q)],
            [e[1][0].eval(q), e[1][1].eval(q)],
        ]
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<'a, C: Ring> Mul<&'a RankMatrix<C>> for &'a RankMatrix<C> {
    type Output = RankMatrix<C>;

    fn mul(self, rhs: &RankMatrix<C>) -> RankMatrix<C> {
        let (a, b) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        RankMatrix::new([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

impl<'a, C: Ring> Add<&'a RankMatrix<C>> for &'a RankMatrix<C> {
    type Output = RankMatrix<C>;

    fn add(self, rhs: &RankMatrix<C>) -> RankMatrix<C> {
        let (a, b) = (&self.entries, &rhs.entries);
        RankMatrix::new([
            [&a[0][0] + &b[0][0], &a[0][1] + &b[0][1]],
            [&a[1][0] + &b[1][0], &a[1][1] + &b[1][1]],
        ])
    }
}

impl<'a, C: Ring> Sub<&'a RankMatrix<C>> for &'a RankMatrix<C> {
    type Output = RankMatrix<C>;

    fn sub(self, rhs: &RankMatrix<C>) -> RankMatrix<C> {
        let (a, b) = (&self.entries, &rhs.entries);
        RankMatrix::new([
            [&a[0][0] - &b[0][0], &a[0][1] - &b[0][1]],
            [&a[1][0] - &b[1][0], &a[1][1] - &b[1][1]],
        ])
    }
}

/// `U = [[q, 1], [0, 1]]`
pub fn up_matrix<C: Ring>() -> RankMatrix<C> {
    RankMatrix::from_i64s([[&[0, 1], &[1]], [&[], &[1]]])
}

/// `D = [[1+q, -q], [1, 0]]`
pub fn down_matrix<C: Ring>() -> RankMatrix<C> {
    RankMatrix::from_i64s([[&[1, 1], &[0, -1]], [&[1], &[]]])
}

/// Rank matrix of the oriented `a × b` box:
/// `[[q^b [a+b-1, b], [a+b-1, b-1]], [q^b [a+b-2, b], [a+b-2, b-1]]]`.
pub fn box_matrix<C: Ring>(a: usize, b: usize) -> Result<RankMatrix<C>> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition(format!(
            "box sides must be >= 1, got {a} x {b}"
        )));
    }
    let bi = b as i64;
    Ok(RankMatrix::new([
        [
            gaussian_binomial(a + b - 1, bi).shift(b),
            gaussian_binomial(a + b - 1, bi - 1),
        ],
        [
            gaussian_binomial(a + b - 2, bi).shift(b),
            gaussian_binomial(a + b - 2, bi - 1),
        ],
    ]))
}

fn check_link(a: &Composition, l: usize) -> Result<()> {
    if a.is_weak() {
        return Err(Error::ZeroPart {
            index: a.parts().iter().position(|&p| p == 0).unwrap_or(0),
        });
    }
    if 2 * l > a.min_part() {
        return Err(Error::Precondition(format!(
            "2l <= min(a): 2*{l} = {} > min(a) = {}",
            2 * l,
            a.min_part()
        )));
    }
    Ok(())
}

/// Rank polynomial of the chainlink poset `P_CL(a, l)`:
/// `tr(U^{d_1} B U^{d_2} B ... U^{d_s} B)` with `d_i = a_i - 2l` and
/// `B = box_matrix(2, l)`; for `l = 0` the product of `[a_i + 1]_q`.
pub fn chainlink_rank_polynomial<C: Ring>(a: &Composition, l: usize) -> Result<QPolynomial<C>> {
    chainlink_rank_polynomial_with(a, l, box_matrix::<C>)
}

/// As [`chainlink_rank_polynomial`] with a caller-supplied box matrix.
pub fn chainlink_rank_polynomial_with<C: Ring>(
    a: &Composition,
    l: usize,
    box_fn: impl Fn(usize, usize) -> Result<RankMatrix<C>>,
) -> Result<QPolynomial<C>> {
    check_link(a, l)?;
    if l == 0 {
        return Ok(a.parts().iter().fold(QPolynomial::one(), |acc, &p| {
            &acc * &QPolynomial::q_integer(p + 1)
        }));
    }
    let b = box_fn(2, l)?;
    let u = up_matrix::<C>();
    let product = a.parts().iter().fold(RankMatrix::identity(), |acc, &p| {
        &(&acc * &u.pow(p - 2 * l)) * &b
    });
    Ok(product.trace())
}

/// `tr(D^{c_1} U^{c_2} D^{c_3} ... U^{c_m})` for an even-length weak
/// composition. Zero parts contribute identity factors, which merges
/// their neighbours.
pub fn alternating_trace<C: Ring>(c: &Composition) -> Result<QPolynomial<C>> {
    c.require_even()?;
    let (d, u) = (down_matrix::<C>(), up_matrix::<C>());
    let product = c
        .parts()
        .iter()
        .enumerate()
        .fold(RankMatrix::identity(), |acc, (i, &p)| {
            let step = if i % 2 == 0 { &d } else { &u };
            &acc * &step.pow(p)
        });
    Ok(product.trace())
}

/// Rank polynomial of the circular fence poset via the alternating D/U trace.
pub fn circular_fence_rank_polynomial<C: Ring>(c: &Composition) -> Result<QPolynomial<C>> {
    if let Some(index) = c.parts().iter().position(|&p| p == 0) {
        return Err(Error::ZeroPart { index });
    }
    alternating_trace(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One entry per identity name: whether every instance passed.
    pub fn summary(&self) -> Vec<(&'static str, bool)> {
        let mut out: Vec<(&'static str, bool)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|(n, _)| *n == c.identity) {
                Some(entry) => entry.1 &= c.passed,
                None => out.push((c.identity, c.passed)),
            }
        }
        out
    }
}

pub const ID_TRACE_B: &str = "tr(B) = [a+b,b] - q^a [a+b-2,a], symmetric about ab/2";
pub const ID_DET_B: &str = "det(B) symmetric about ab";
pub const ID_TRACE_BU: &str = "tr(BU) = (q^(b+1) + 1) [a+b-1,b], symmetric about (ab+1)/2";
pub const ID_DET_BU: &str = "det(BU) symmetric about ab+1";
pub const ID_CAYLEY_B: &str = "B^2 = tr(B) B - det(B) I";
pub const ID_ONE: &str = "DUD = DU + UD - U + D^3 - D^2";
pub const ID_CAYLEY_U: &str = "U^2 = (q+1) U - q I";

/// Check the box-matrix trace/determinant closed forms and symmetries,
/// Cayley–Hamilton for `B` and `U`, and the down-step identity.
pub fn verify_matrix_identities<C: Ring>(a_max: usize, b_max: usize) -> Result<IdentityReport> {
    if a_max == 0 || b_max == 0 {
        return Err(Error::Precondition("identity bounds must be >= 1".into()));
    }
    let u = up_matrix::<C>();
    let d = down_matrix::<C>();
    let mut report = IdentityReport::default();
    for a in 1..=a_max {
        for b in 1..=b_max {
            let bx = box_matrix::<C>(a, b)?;
            let ab = (a * b) as i64;
            let mut push = |identity, passed| {
                report.checks.push(IdentityCheck {
                    identity,
                    a: Some(a),
                    b: Some(b),
                    passed,
                })
            };

            let tr = bx.trace();
            let closed = &gaussian_binomial::<C>(a + b, b as i64)
                - &gaussian_binomial::<C>(a + b - 2, a as i64).shift(a);
            push(ID_TRACE_B, tr == closed && tr.is_symmetric_about(ab));

            push(ID_DET_B, bx.det().is_symmetric_about(2 * ab));

            let bu = &bx * &u;
            let tr_bu = bu.trace();
            let closed_bu = &(&QPolynomial::monomial(b + 1) + &QPolynomial::one())
                * &gaussian_binomial::<C>(a + b - 1, b as i64);
            push(
                ID_TRACE_BU,
                tr_bu == closed_bu && tr_bu.is_symmetric_about(ab + 1),
            );

            push(ID_DET_BU, bu.det().is_symmetric_about(2 * ab + 2));

            let lhs = &bx * &bx;
            let rhs = &bx.scale(&tr) - &RankMatrix::scalar(bx.det());
            push(ID_CAYLEY_B, lhs == rhs);
        }
    }
    let dud = &(&d * &u) * &d;
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let rhs = &(&(&(&(&d * &u) + &(&u * &d)) - &u) + &d3) - &d2;
    report.checks.push(IdentityCheck {
        identity: ID_ONE,
        a: None,
        b: None,
        passed: dud == rhs,
    });

    let q_plus_one = QPolynomial::from_i64s(&[1, 1]);
    let rhs = &u.scale(&q_plus_one) - &RankMatrix::scalar(QPolynomial::monomial(1));
    report.checks.push(IdentityCheck {
        identity: ID_CAYLEY_U,
        a: None,
        b: None,
        passed: &u * &u == rhs,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{rank_matrix_bruteforce, OrientedPoset};
    use num_bigint::BigInt;

    type M = RankMatrix<BigInt>;
    type P = QPolynomial<BigInt>;

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn up_step() {
        let u = up_matrix::<BigInt>();
        let one = BigInt::from(1);
        assert_eq!(u.eval(&one), [[1.into(), 1.into()], [0.into(), 1.into()]]);
        assert_eq!(
            u,
            rank_matrix_bruteforce(&OrientedPoset::up_step()).unwrap()
        );
        assert_eq!(u.pow(2), M::from_i64s([[&[0, 0, 1], &[1, 1]], [&[], &[1]]]));
    }

    #[test]
    fn down_step() {
        let (d, u) = (down_matrix::<BigInt>(), up_matrix::<BigInt>());
        assert_eq!(d.det(), P::monomial(1));
        for n in 1..=6 {
            let oracle = rank_matrix_bruteforce(&OrientedPoset::decreasing_chain(n)).unwrap();
            assert_eq!(&d.pow(n - 1) * &u, oracle, "decreasing chain of {n}");
        }
    }

    #[test]
    fn box_examples() {
        let b22 = box_matrix::<BigInt>(2, 2).unwrap();
        assert_eq!(
            b22,
            M::from_i64s([[&[0, 0, 1, 1, 1], &[1, 1, 1]], [&[0, 0, 1], &[1, 1]]])
        );
        assert_eq!(box_matrix::<BigInt>(1, 1).unwrap(), up_matrix());
        assert_eq!(
            box_matrix::<BigInt>(3, 4).unwrap(),
            rank_matrix_bruteforce(&OrientedPoset::box_poset(3, 4)).unwrap()
        );
        assert!(box_matrix::<BigInt>(0, 2).is_err());
    }

    #[test]
    fn chainlink_examples() {
        let p: P = chainlink_rank_polynomial(&comp(&[6, 4, 5]), 2).unwrap();
        assert_eq!(
            p,
            P::from_i64s(&[1, 3, 6, 9, 12, 14, 16, 17, 17, 16, 14, 12, 9, 6, 3, 1])
        );
        let p: P = chainlink_rank_polynomial(&comp(&[2, 2]), 1).unwrap();
        assert_eq!(p, P::from_i64s(&[1, 2, 1, 2, 1]));
        let p: P = chainlink_rank_polynomial(&comp(&[3, 3]), 0).unwrap();
        assert_eq!(p, P::from_i64s(&[1, 1, 1, 1]).pow(2));
        assert!(matches!(
            chainlink_rank_polynomial::<BigInt>(&comp(&[6, 4, 5]), 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn circular_examples() {
        let p: P = circular_fence_rank_polynomial(&comp(&[1, 1, 1, 1])).unwrap();
        assert_eq!(p, P::from_i64s(&[1, 2, 1, 2, 1]));
        let p: P = circular_fence_rank_polynomial(&comp(&[2, 1, 1, 2])).unwrap();
        assert_eq!(p, P::from_i64s(&[1, 2, 3, 3, 3, 2, 1]));
        let a: P = circular_fence_rank_polynomial(&comp(&[2, 2, 1, 1])).unwrap();
        let b: P = circular_fence_rank_polynomial(&comp(&[1, 2, 2, 1])).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            circular_fence_rank_polynomial::<BigInt>(&comp(&[1, 1, 1])),
            Err(Error::OddLength(3))
        ));
    }

    #[test]
    fn identity_examples() {
        let b = box_matrix::<BigInt>(2, 2).unwrap();
        let tr = b.trace();
        assert_eq!(tr, P::from_i64s(&[1, 1, 1, 1, 1]));
        assert!(tr.is_symmetric_about(4));
        let tr_bu = (&b * &up_matrix()).trace();
        assert_eq!(
            tr_bu,
            &P::from_i64s(&[1, 0, 0, 1]) * &P::from_i64s(&[1, 1, 1])
        );
        assert!(tr_bu.is_symmetric_about(5));
        let report = verify_matrix_identities::<BigInt>(2, 2).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.summary().len(), 7);
    }

    #[test]
    fn transposed_box_breaks_the_example() {
        let p: P = chainlink_rank_polynomial_with(&comp(&[6, 4, 5]), 2, |a, b| {
            box_matrix::<BigInt>(a, b).map(|m| m.transpose())
        })
        .unwrap();
        assert_ne!(
            p,
            P::from_i64s(&[1, 3, 6, 9, 12, 14, 16, 17, 17, 16, 14, 12, 9, 6, 3, 1])
        );
    }

    #[test]
    fn machine_width_coefficients() {
        let p: QPolynomial<i64> = chainlink_rank_polynomial(&comp(&[6, 4, 5]), 2).unwrap();
        assert_eq!(p.value_at_one(), 156);
    }
}
