use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive};

use super::hpoly::{build_chainlink_hrep, HPolytope, Row};
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::qpoly::QPolynomial;
use crate::scalar::{Field, Ring};

/// Integer row `a · x ≤ b` (or `=`), scaled from a rational row.
#[derive(Clone, Debug)]
struct IntRow {
    a: Vec<i128>,
    b: i128,
    eq: bool,
}

fn integerize<F: Field>(row: &Row<F>, rhs_scale: &F, eq: bool) -> Result<IntRow> {
    let bound = row.bound.clone() * rhs_scale.clone();
    let lcm = row
        .coeffs
        .iter()
        .chain(std::iter::once(&bound))
        .fold(BigInt::one(), |acc, v| acc.lcm(&v.denom_big()));
    let scale = |v: &F| -> Result<i128> {
        (v.numer_big() * (&lcm / v.denom_big()))
            .to_i128()
            .ok_or(Error::Overflow)
    };
    Ok(IntRow {
        a: row.coeffs.iter().map(scale).collect::<Result<_>>()?,
        b: scale(&bound)?,
        eq,
    })
}

/// Per-coordinate integer bounds of a bounded system.
fn coordinate_bounds<F: Field>(p: &HPolytope<F>, k: &F) -> Result<Vec<(i128, i128)>> {
    let dim = p.dim();
    let rows: Vec<Row<F>> = p
        .ineqs()
        .iter()
        .chain(p.eqs())
        .map(|r| Row::new(r.coeffs.clone(), r.bound.clone() * k.clone()))
        .chain(p.eqs().iter().map(|r| {
            Row::new(
                r.coeffs.iter().map(|c| -c.clone()).collect(),
                -(r.bound.clone() * k.clone()),
            )
        }))
        .collect();
    let mut bounds = Vec::with_capacity(dim);
    for j in 0..dim {
        let (mut lo, mut hi) = single_variable_bounds(&rows, j);
        if lo.is_none() || hi.is_none() {
            let projected = eliminate_all_but(&rows, j, dim);
            let (l2, h2) = single_variable_bounds(&projected, j);
            lo = lo.or(l2);
            hi = hi.or(h2);
        }
        match (lo, hi) {
            (Some(l), Some(h)) => {
                let l = l.ceil_big().to_i128().ok_or(Error::Overflow)?;
                let h = h.floor_big().to_i128().ok_or(Error::Overflow)?;
                bounds.push((l, h));
            }
            _ => return Err(Error::Unbounded(j)),
        }
    }
    Ok(bounds)
}

fn single_variable_bounds<F: Field>(rows: &[Row<F>], j: usize) -> (Option<F>, Option<F>) {
    let mut lo: Option<F> = None;
    let mut hi: Option<F> = None;
    for r in rows {
        let single = r
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i == j || c.is_zero());
        let c = &r.coeffs[j];
        if !single || c.is_zero() {
            continue;
        }
        let v = r.bound.clone() / c.clone();
        if c.is_positive() {
            hi = Some(match hi {
                Some(h) if h <= v => h,
                _ => v,
            });
        } else {
            lo = Some(match lo {
                Some(l) if l >= v => l,
                _ => v,
            });
        }
    }
    (lo, hi)
}

/// Fourier–Motzkin elimination of every coordinate except `keep`.
fn eliminate_all_but<F: Field>(rows: &[Row<F>], keep: usize, dim: usize) -> Vec<Row<F>> {
    let mut current = rows.to_vec();
    for v in (0..dim).filter(|&v| v != keep) {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in current {
            let c = r.coeffs[v].clone();
            if c.is_positive() {
                pos.push(r);
            } else if c.is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let (cp, cn) = (p.coeffs[v].clone(), -n.coeffs[v].clone());
                let coeffs: Vec<F> = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(x, y)| x.clone() * cn.clone() + y.clone() * cp.clone())
                    .collect();
                let bound = p.bound.clone() * cn.clone() + n.bound.clone() * cp.clone();
                let row = Row::new(coeffs, bound);
                if !rest.contains(&row) {
                    rest.push(row);
                }
            }
        }
        current = rest;
    }
    current
}

/// Integer points of `k · P` (optionally with `Σx = k · section_sum`) in
/// lexicographic order, passed to `visit`.
pub fn visit_lattice_points<F: Field>(
    p: &HPolytope<F>,
    section_sum: Option<&F>,
    dilation: u64,
    mut visit: impl FnMut(&[i64]),
) -> Result<()> {
    let k = F::from_int(i64::try_from(dilation).map_err(|_| Error::Overflow)?);
    let sliced;
    let p = match section_sum {
        Some(t) => {
            sliced = p.sum_section(t.clone());
            &sliced
        }
        None => p,
    };
    let dim = p.dim();
    let bounds = coordinate_bounds(p, &k)?;
    let mut rows = Vec::new();
    for r in p.ineqs() {
        rows.push(integerize(r, &k, false)?);
    }
    for r in p.eqs() {
        rows.push(integerize(r, &k, true)?);
    }
    if dim == 0 {
        if rows.iter().all(|r| if r.eq { r.b == 0 } else { r.b >= 0 }) {
            visit(&[]);
        }
        return Ok(());
    }
    // suffix[r][j] = (min, max) of Σ_{i ≥ j} a_i x_i over the bounding box.
    let suffix: Vec<Vec<(i128, i128)>> = rows
        .iter()
        .map(|r| {
            let mut acc = vec![(0i128, 0i128); dim + 1];
            for j in (0..dim).rev() {
                let (lo, hi) = (r.a[j] * bounds[j].0, r.a[j] * bounds[j].1);
                acc[j] = (acc[j + 1].0 + lo.min(hi), acc[j + 1].1 + lo.max(hi));
            }
            acc
        })
        .collect();
    let mut dfs = Dfs {
        rows: &rows,
        suffix: &suffix,
        bounds: &bounds,
        partial: vec![0; rows.len()],
        point: vec![0; dim],
    };
    dfs.run(0, &mut visit);
    Ok(())
}

struct Dfs<'a> {
    rows: &'a [IntRow],
    suffix: &'a [Vec<(i128, i128)>],
    bounds: &'a [(i128, i128)],
    partial: Vec<i128>,
    point: Vec<i64>,
}

impl Dfs<'_> {
    fn run(&mut self, j: usize, visit: &mut impl FnMut(&[i64])) {
        let dim = self.point.len();
        if j == dim {
            visit(&self.point);
            return;
        }
        let (mut lo, mut hi) = self.bounds[j];
        for (r, row) in self.rows.iter().enumerate() {
            let c = row.a[j];
            let (rest_min, rest_max) = self.suffix[r][j + 1];
            // c x_j ≤ b - partial - rest_min
            let upper = row.b - self.partial[r] - rest_min;
            if c > 0 {
                hi = hi.min(upper.div_euclid(c));
            } else if c < 0 {
                lo = lo.max(ceil_div(upper, c));
            } else if upper < 0 {
                return;
            }
            if row.eq {
                // c x_j ≥ b - partial - rest_max
                let lower = row.b - self.partial[r] - rest_max;
                if c > 0 {
                    lo = lo.max(ceil_div_pos(lower, c));
                } else if c < 0 {
                    hi = hi.min((-lower).div_euclid(-c));
                } else if lower > 0 {
                    return;
                }
            }
            if lo > hi {
                return;
            }
        }
        for v in lo..=hi {
            for (r, row) in self.rows.iter().enumerate() {
                self.partial[r] += row.a[j] * v;
            }
            self.point[j] = v as i64;
            self.run(j + 1, visit);
            for (r, row) in self.rows.iter().enumerate() {
                self.partial[r] -= row.a[j] * v;
            }
        }
    }
}

/// Smallest x with `c x ≤ u` for `c < 0`, i.e. `ceil(u / c)`. Divisors
/// passed to `div_euclid` are positive, so it floors.
fn ceil_div(u: i128, c: i128) -> i128 {
    -(u.div_euclid(-c))
}

/// `ceil(l / c)` for `c > 0`.
fn ceil_div_pos(l: i128, c: i128) -> i128 {
    -((-l).div_euclid(c))
}

/// All integer points of `k · P` (optionally on `Σx = k · t`), lexicographic.
pub fn enumerate_lattice_points<F: Field>(
    p: &HPolytope<F>,
    section_sum: Option<&F>,
    dilation: u64,
) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    visit_lattice_points(p, section_sum, dilation, |x| out.push(x.to_vec()))?;
    Ok(out)
}

pub fn count_lattice_points<F: Field>(
    p: &HPolytope<F>,
    section_sum: Option<&F>,
    dilation: u64,
) -> Result<u64> {
    let mut n = 0u64;
    visit_lattice_points(p, section_sum, dilation, |_| n += 1)?;
    Ok(n)
}

/// Number of integer points of `k · P` grouped by coordinate sum.
pub fn lattice_counts_by_sum<F: Field>(p: &HPolytope<F>, dilation: u64) -> Result<Vec<u64>> {
    let mut hist: Vec<u64> = Vec::new();
    visit_lattice_points(p, None, dilation, |x| {
        let s: i64 = x.iter().sum();
        let s = usize::try_from(s).expect("points of a nonnegative polytope");
        if hist.len() <= s {
            hist.resize(s + 1, 0);
        }
        hist[s] += 1;
    })?;
    Ok(hist)
}

/// `Σ q^{x_1 + ... + x_s}` over the integer points of `CL(a, l)`.
pub fn lattice_generating_function<C: Ring>(a: &Composition, l: usize) -> Result<QPolynomial<C>> {
    let p: HPolytope<crate::Rational> = build_chainlink_hrep(a, l);
    let hist = lattice_counts_by_sum(&p, 1)?;
    Ok(QPolynomial::from_coeffs(
        hist.into_iter()
            .map(|n| C::from_u64(n).expect("count fits the coefficient ring"))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hpoly::build_order_polytope;
    use crate::poset::FinitePoset;
    use crate::{QPoly, Rational};

    fn cl(s: &str, l: usize) -> HPolytope<Rational> {
        build_chainlink_hrep(&Composition::parse(s).unwrap(), l)
    }

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn two_by_two_link_one() {
        let pts = enumerate_lattice_points(&cl("2,2", 1), None, 1).unwrap();
        assert_eq!(pts.len(), 7);
        assert!(!pts.contains(&vec![2, 0]));
        assert!(!pts.contains(&vec![0, 2]));
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
    }

    #[test]
    fn section_counts_differ() {
        let p = cl("6,4,5", 3);
        assert_eq!(count_lattice_points(&p, Some(&r(7)), 1).unwrap(), 9);
        assert_eq!(count_lattice_points(&p, Some(&r(8)), 1).unwrap(), 10);
    }

    #[test]
    fn cuboid_count() {
        assert_eq!(
            count_lattice_points(&cl("6,4,5", 0), None, 1).unwrap(),
            7 * 5 * 6
        );
    }

    #[test]
    fn dilation_matches_scaled_parts() {
        let p = cl("3,2", 1);
        let q = cl("9,6", 3);
        assert_eq!(
            count_lattice_points(&p, Some(&r(2)), 3).unwrap(),
            count_lattice_points(&q, Some(&r(6)), 1).unwrap()
        );
    }

    #[test]
    fn fractional_section_sum() {
        let half = Rational::new(5.into(), 2.into());
        assert_eq!(
            count_lattice_points(&cl("2,2", 1), Some(&half), 1).unwrap(),
            0
        );
        assert_eq!(
            count_lattice_points(&cl("2,2", 1), Some(&half), 2).unwrap(),
            2
        );
    }

    #[test]
    fn generating_function_small() {
        let g: QPoly = lattice_generating_function(&Composition::parse("2,2").unwrap(), 1).unwrap();
        assert_eq!(g, QPoly::from_i64s(&[1, 2, 1, 2, 1]));
    }

    #[test]
    fn two_chain_triangle() {
        let p: HPolytope<Rational> = build_order_polytope(&FinitePoset::chain(2));
        assert_eq!(count_lattice_points(&p, None, 1).unwrap(), 3);
        assert_eq!(count_lattice_points(&p, None, 2).unwrap(), 6);
    }

    #[test]
    fn needs_elimination_for_bounds() {
        // Triangle x ≥ 0, y ≥ 0, x + y ≤ 3: no explicit upper bounds.
        let rows = vec![
            Row::from_ints(&[-1, 0], 0),
            Row::from_ints(&[0, -1], 0),
            Row::from_ints(&[1, 1], 3),
        ];
        let p = HPolytope::<Rational>::new(2, rows, vec![]).unwrap();
        assert_eq!(count_lattice_points(&p, None, 1).unwrap(), 10);
    }

    #[test]
    fn unbounded_rejected() {
        let p = HPolytope::<Rational>::new(1, vec![Row::from_ints(&[-1], 0)], vec![]).unwrap();
        assert_eq!(count_lattice_points(&p, None, 1), Err(Error::Unbounded(0)));
    }
}
