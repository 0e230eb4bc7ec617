//! Exact polynomials in one variable `q`, Gaussian binomials, and the
//! symmetry / modality analysis used throughout the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{display_vec, Ring};

/// Dense polynomial `c_0 + c_1 q + ... + c_d q^d` with trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPolynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> QPolynomial<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| C::from_i64(c).expect("coefficient fits"))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial {
            coeffs: vec![C::one()],
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `q^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = C::one();
        QPolynomial { coeffs }
    }

    /// `1 + q + ... + q^(n-1)`, the q-integer `[n]_q`.
    pub fn q_integer(n: usize) -> Self {
        QPolynomial {
            coeffs: vec![C::one(); n],
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn eval(&self, q: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * q.clone() + c.clone())
    }

    /// Sum of coefficients, the value at `q = 1`.
    pub fn value_at_one(&self) -> C {
        self.coeffs.iter().cloned().fold(C::zero(), |a, b| a + b)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// `c_i = c_{deg - i}` for every `i`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// `c_i = c_{2 center - i}` for every `i`, given `twice_center = 2 center`.
    /// The zero polynomial is symmetric about every center.
    pub fn is_symmetric_about(&self, twice_center: i64) -> bool {
        let (Some(lo), Some(hi)) = (self.valuation(), self.degree()) else {
            return true;
        };
        if (lo + hi) as i64 != twice_center {
            return false;
        }
        (lo..=hi).all(|i| self.coeffs[i] == self.coeffs[lo + hi - i])
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> QPolynomial<D> {
        QPolynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Ring> fmt::Display for QPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < C::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl<'a, C: Ring> Add<&'a QPolynomial<C>> for &'a QPolynomial<C> {
    type Output = QPolynomial<C>;

    fn add(self, rhs: &QPolynomial<C>) -> QPolynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, C: Ring> Sub<&'a QPolynomial<C>> for &'a QPolynomial<C> {
    type Output = QPolynomial<C>;

    fn sub(self, rhs: &QPolynomial<C>) -> QPolynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, C: Ring> Mul<&'a QPolynomial<C>> for &'a QPolynomial<C> {
    type Output = QPolynomial<C>;

    fn mul(self, rhs: &QPolynomial<C>) -> QPolynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        QPolynomial::from_coeffs(out)
    }
}

impl<C: Ring> Neg for &QPolynomial<C> {
    type Output = QPolynomial<C>;

    fn neg(self) -> QPolynomial<C> {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Ring> $tr for QPolynomial<C> {
            type Output = QPolynomial<C>;
            fn $m(self, rhs: QPolynomial<C>) -> QPolynomial<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Ring> Serialize for QPolynomial<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        display_vec::serialize(&self.coeffs, s)
    }
}

impl<'de, C: Ring> Deserialize<'de> for QPolynomial<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        display_vec::deserialize(d).map(QPolynomial::from_coeffs)
    }
}

/// The Gaussian binomial `[n choose k]_q`, zero outside `0 <= k <= n`.
///
/// Built row by row from `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
pub fn gaussian_binomial<C: Ring>(n: usize, k: i64) -> QPolynomial<C> {
    if k < 0 || k as usize > n {
        return QPolynomial::zero();
    }
    let k = k as usize;
    let mut row: Vec<QPolynomial<C>> = vec![QPolynomial::one()];
    for m in 1..=n {
        let width = m.min(k) + 1;
        let mut next = Vec::with_capacity(width);
        for j in 0..width {
            let left = if j == 0 {
                QPolynomial::zero()
            } else {
                row[j - 1].clone()
            };
            let right = row
                .get(j)
                .map(|p| p.shift(j))
                .unwrap_or_else(QPolynomial::zero);
            next.push(&left + &right);
        }
        row = next;
    }
    row.swap_remove(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    #[serde(serialize_with = "crate::scalar::display_one")]
    pub center: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModalityReport {
    pub peak_count: usize,
    pub unimodal: bool,
}

/// Palindromicity of the coefficient list; the center is `deg/2`.
pub fn analyze_symmetry<C: Ring>(p: &QPolynomial<C>) -> Result<SymmetryReport> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    Ok(SymmetryReport {
        symmetric: p.is_palindromic(),
        center: BigRational::new(BigInt::from(deg), BigInt::from(2)),
    })
}

/// Count peaks: maximal plateaus strictly above both neighbours, where the
/// ends of the sequence count as strictly smaller neighbours.
pub fn analyze_modality<C: Ring>(p: &QPolynomial<C>) -> Result<ModalityReport> {
    count_peaks(p.coeffs())
}

pub fn count_peaks<C: Ring>(values: &[C]) -> Result<ModalityReport> {
    if let Some((exponent, v)) = values.iter().enumerate().find(|(_, v)| **v < C::zero()) {
        return Err(Error::NegativeCoefficient {
            value: v.to_string(),
            exponent,
        });
    }
    let mut plateaus: Vec<&C> = Vec::new();
    for v in values {
        if plateaus.last() != Some(&v) {
            plateaus.push(v);
        }
    }
    let peak_count = (0..plateaus.len())
        .filter(|&i| {
            let left = i == 0 || plateaus[i - 1] < plateaus[i];
            let right = i + 1 == plateaus.len() || plateaus[i + 1] < plateaus[i];
            left && right
        })
        .count();
    Ok(ModalityReport {
        peak_count,
        unimodal: peak_count <= 1,
    })
}
