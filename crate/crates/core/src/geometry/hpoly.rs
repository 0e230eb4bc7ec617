use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::scalar::{display_vec, Field};

/// A linear constraint `coeffs · x ≤ bound` (or `=` when stored as an equality).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row<F> {
    pub coeffs: Vec<F>,
    pub bound: F,
}

impl<F: Field> Row<F> {
    pub fn new(coeffs: Vec<F>, bound: F) -> Self {
        Row { coeffs, bound }
    }

    pub fn from_ints(coeffs: &[i64], bound: i64) -> Self {
        Row {
            coeffs: coeffs.iter().map(|&c| F::from_int(c)).collect(),
            bound: F::from_int(bound),
        }
    }

    pub fn eval(&self, x: &[F]) -> F {
        self.coeffs
            .iter()
            .zip(x)
            .fold(F::zero(), |acc, (c, v)| acc + c.clone() * v.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

#[derive(Serialize, Deserialize)]
struct RawRow {
    a: Vec<String>,
    b: String,
}

impl<F: Field> Serialize for Row<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawRow {
            a: self.coeffs.iter().map(|c| c.to_string()).collect(),
            b: self.bound.to_string(),
        }
        .serialize(s)
    }
}

impl<'de, F: Field> Deserialize<'de> for Row<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRow::deserialize(d)?;
        let coeffs = raw
            .a
            .iter()
            .map(|s| display_vec::parse(s))
            .collect::<std::result::Result<Vec<F>, _>>()
            .map_err(D::Error::custom)?;
        let bound = display_vec::parse(&raw.b).map_err(D::Error::custom)?;
        Ok(Row { coeffs, bound })
    }
}

/// Exact H-representation `{x : A x ≤ b, E x = f}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "F: Field"))]
pub struct HPolytope<F> {
    dim: usize,
    ineqs: Vec<Row<F>>,
    eqs: Vec<Row<F>>,
}

impl<F: Field> HPolytope<F> {
    /// Builds the system, dropping exact duplicate rows (first occurrence kept).
    pub fn new(dim: usize, ineqs: Vec<Row<F>>, eqs: Vec<Row<F>>) -> Result<Self> {
        for row in ineqs.iter().chain(&eqs) {
            if row.coeffs.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.coeffs.len(),
                });
            }
        }
        Ok(HPolytope {
            dim,
            ineqs: dedup(ineqs),
            eqs: dedup(eqs),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[Row<F>] {
        &self.ineqs
    }

    pub fn eqs(&self) -> &[Row<F>] {
        &self.eqs
    }

    pub fn with_equality(&self, row: Row<F>) -> Result<Self> {
        let mut eqs = self.eqs.clone();
        eqs.push(row);
        HPolytope::new(self.dim, self.ineqs.clone(), eqs)
    }

    /// Intersection with the hyperplane `x_1 + ... + x_dim = t`.
    pub fn sum_section(&self, t: F) -> Self {
        self.with_equality(Row::new(vec![F::one(); self.dim], t))
            .expect("row has the polytope's dimension")
    }

    /// `k · P`: every right-hand side multiplied by `k`.
    pub fn dilate(&self, k: &F) -> Self {
        let scale = |rows: &[Row<F>]| {
            rows.iter()
                .map(|r| Row::new(r.coeffs.clone(), r.bound.clone() * k.clone()))
                .collect()
        };
        HPolytope {
            dim: self.dim,
            ineqs: scale(&self.ineqs),
            eqs: scale(&self.eqs),
        }
    }

    pub fn contains(&self, x: &[F]) -> bool {
        x.len() == self.dim
            && self.ineqs.iter().all(|r| r.eval(x) <= r.bound)
            && self.eqs.iter().all(|r| r.eval(x) == r.bound)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(bound = "")]
        struct Raw<F: Field> {
            dim: usize,
            ineqs: Vec<Row<F>>,
            #[serde(default)]
            eqs: Vec<Row<F>>,
        }
        let raw: Raw<F> = serde_json::from_str(s)?;
        HPolytope::new(raw.dim, raw.ineqs, raw.eqs)
    }
}

impl<'de, F: Field> Deserialize<'de> for HPolytope<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        HPolytope::from_json(&value.to_string()).map_err(D::Error::custom)
    }
}

fn dedup<F: Field>(rows: Vec<Row<F>>) -> Vec<Row<F>> {
    let mut out: Vec<Row<F>> = Vec::with_capacity(rows.len());
    for r in rows {
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

fn unit<F: Field>(dim: usize, i: usize, c: i64) -> Vec<F> {
    let mut v = vec![F::zero(); dim];
    v[i] = F::from_int(c);
    v
}

fn to_i64(n: usize) -> i64 {
    i64::try_from(n).expect("composition part fits in i64")
}

/// `CL(a, l)`: for each `i`, `-x_i ≤ 0`, `x_i ≤ a_i` and
/// `x_i - x_{i+1} ≤ a_i - l` (cyclic). Any `l` is accepted.
pub fn build_chainlink_hrep<F: Field>(a: &Composition, l: usize) -> HPolytope<F> {
    let s = a.len();
    let mut rows = Vec::with_capacity(3 * s);
    for (i, &ai) in a.parts().iter().enumerate() {
        rows.push(Row::new(unit(s, i, -1), F::zero()));
        rows.push(Row::new(unit(s, i, 1), F::from_int(to_i64(ai))));
        let mut link = unit::<F>(s, i, 1);
        link[(i + 1) % s] = link[(i + 1) % s].clone() - F::one();
        rows.push(Row::new(link, F::from_int(to_i64(ai) - to_i64(l))));
    }
    HPolytope {
        dim: s,
        ineqs: rows,
        eqs: Vec::new(),
    }
}

/// Order polytope: `0 ≤ x_i ≤ 1` and `x_i ≤ x_j` for each cover `i ≺ j`.
/// Its lattice points are indicator vectors of upper sets.
pub fn build_order_polytope<F: Field>(p: &FinitePoset) -> HPolytope<F> {
    let n = p.size();
    let mut rows = Vec::with_capacity(2 * n + p.covers().len());
    for i in 0..n {
        rows.push(Row::new(unit(n, i, -1), F::zero()));
        rows.push(Row::new(unit(n, i, 1), F::one()));
    }
    for &(lo, hi) in p.covers() {
        let mut c = unit::<F>(n, lo, 1);
        c[hi] = -F::one();
        rows.push(Row::new(c, F::zero()));
    }
    HPolytope::new(n, rows, Vec::new()).expect("rows have dimension n")
}

/// Order polytope of the dual poset (`x_i ≥ x_j` for `i ≺ j`); lattice points
/// are indicator vectors of lower ideals, so dilate-`k` sections count
/// multichains of ideals by total size.
pub fn build_ideal_polytope<F: Field>(p: &FinitePoset) -> HPolytope<F> {
    build_order_polytope(&p.dual())
}

/// Polytope on `(x_1, y_1, ..., x_s, y_s)` for `c = (a_1, b_1, ..., a_s, b_s)`:
/// `0 ≤ x_i ≤ a_i + 1`, `0 ≤ y_i ≤ b_i - 1`, `(b_i - 1)(x_i - a_i) ≤ y_i`,
/// `y_i ≤ (b_i - 1) x_{i+1}`, together with the combined inequality
/// `x_i - x_{i+1} ≤ a_i`. The last one is implied when `b_i ≥ 2` and keeps
/// the `b_i = 1` case equal to the chainlink system.
pub fn build_general_fence_polytope<F: Field>(c: &Composition) -> Result<HPolytope<F>> {
    c.require_even()?;
    if let Some(index) = c.parts().iter().position(|&p| p == 0) {
        return Err(Error::ZeroPart { index });
    }
    let s = c.len() / 2;
    let dim = 2 * s;
    let xi = |i: usize| 2 * (i % s);
    let yi = |i: usize| 2 * i + 1;
    let mut rows = Vec::new();
    for i in 0..s {
        let a = to_i64(c.parts()[2 * i]);
        let b = to_i64(c.parts()[2 * i + 1]);
        rows.push(Row::new(unit(dim, xi(i), -1), F::zero()));
        rows.push(Row::new(unit(dim, xi(i), 1), F::from_int(a + 1)));
        rows.push(Row::new(unit(dim, yi(i), -1), F::zero()));
        rows.push(Row::new(unit(dim, yi(i), 1), F::from_int(b - 1)));

        let mut lower = unit::<F>(dim, xi(i), b - 1);
        lower[yi(i)] = -F::one();
        rows.push(Row::new(lower, F::from_int((b - 1) * a)));

        let mut upper = unit::<F>(dim, yi(i), 1);
        upper[xi(i + 1)] = upper[xi(i + 1)].clone() - F::from_int(b - 1);
        rows.push(Row::new(upper, F::zero()));

        let mut link = unit::<F>(dim, xi(i), 1);
        link[xi(i + 1)] = link[xi(i + 1)].clone() - F::one();
        rows.push(Row::new(link, F::from_int(a)));
    }
    HPolytope::new(dim, rows, Vec::new())
}
