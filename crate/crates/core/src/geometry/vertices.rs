use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::hpoly::HPolytope;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Largest dimension accepted by [`enumerate_vertices`].
pub const VERTEX_DIM_CAP: usize = 8;

/// Vertices of a polytope with the indices of the inequalities tight at each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet<F> {
    pub dim: usize,
    pub vertices: Vec<Vec<F>>,
    pub tight_sets: Vec<Vec<usize>>,
}

impl<F: Field> VertexSet<F> {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull of the vertices; `None` when empty.
    pub fn affine_dim(&self) -> Option<usize> {
        let first = self.vertices.first()?;
        let diffs: Vec<Vec<F>> = self.vertices[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(first)
                    .map(|(x, y)| x.clone() - y.clone())
                    .collect()
            })
            .collect();
        Some(rank(diffs))
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.vertices.iter().any(|w| w.as_slice() == v)
    }

    /// Whether every coordinate of every vertex lies in `(1/2) Z`.
    pub fn is_half_integral(&self) -> bool {
        let two = F::from_int(2);
        self.vertices
            .iter()
            .flatten()
            .all(|x| (x.clone() * two.clone()).is_integral())
    }
}

impl<F: Field> Serialize for VertexSet<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let vertices: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        let mut st = s.serialize_struct("VertexSet", 5)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("empty", &self.is_empty())?;
        st.serialize_field("affine_dim", &self.affine_dim())?;
        st.serialize_field("vertices", &vertices)?;
        st.serialize_field("tight_sets", &self.tight_sets)?;
        st.end()
    }
}

/// Rank of a list of row vectors.
#[allow(clippy::needless_range_loop)]
pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in (r + 1)..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone() / rows[r][c].clone();
            for k in c..cols {
                let v = rows[r][k].clone() * f.clone();
                rows[i][k] = rows[i][k].clone() - v;
            }
        }
        r += 1;
    }
    r
}

/// Unique solution of a square system, `None` if singular.
#[allow(clippy::needless_range_loop)]
pub fn solve<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Option<Vec<F>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        let pivot = a[c][c].clone();
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() / pivot.clone();
            for k in c..n {
                let v = a[c][k].clone() * f.clone();
                a[i][k] = a[i][k].clone() - v;
            }
            let v = b[c].clone() * f;
            b[i] = b[i].clone() - v;
        }
    }
    Some((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect())
}

/// Independent subset of the equality rows, or `None` if inconsistent.
fn independent_equalities<F: Field>(p: &HPolytope<F>) -> Option<Vec<(Vec<F>, F)>> {
    let mut chosen: Vec<(Vec<F>, F)> = Vec::new();
    for e in p.eqs() {
        let mut with: Vec<Vec<F>> = chosen.iter().map(|(c, _)| c.clone()).collect();
        with.push(e.coeffs.clone());
        if rank(with) > chosen.len() {
            chosen.push((e.coeffs.clone(), e.bound.clone()));
        } else {
            let mut aug: Vec<Vec<F>> = chosen
                .iter()
                .map(|(c, b)| {
                    c.iter()
                        .cloned()
                        .chain(std::iter::once(b.clone()))
                        .collect()
                })
                .collect();
            let before = rank(aug.clone());
            aug.push(
                e.coeffs
                    .iter()
                    .cloned()
                    .chain(std::iter::once(e.bound.clone()))
                    .collect(),
            );
            if rank(aug) > before {
                return None;
            }
        }
    }
    Some(chosen)
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All vertices of a bounded polytope: every choice of `dim - rank(E)`
/// inequalities is solved together with the equalities and kept if feasible.
/// Output is sorted lexicographically. An empty polytope yields an empty set.
pub fn enumerate_vertices<F: Field>(p: &HPolytope<F>) -> Result<VertexSet<F>> {
    let dim = p.dim();
    if dim > VERTEX_DIM_CAP {
        return Err(Error::DimensionCap {
            dim,
            cap: VERTEX_DIM_CAP,
        });
    }
    let empty = VertexSet {
        dim,
        vertices: Vec::new(),
        tight_sets: Vec::new(),
    };
    let Some(eqs) = independent_equalities(p) else {
        return Ok(empty);
    };
    let need = dim - eqs.len();
    let ineqs = p.ineqs();
    let mut found: BTreeMap<Vec<F>, Vec<usize>> = BTreeMap::new();
    combinations(ineqs.len(), need, |subset| {
        let mut a: Vec<Vec<F>> = eqs.iter().map(|(c, _)| c.clone()).collect();
        let mut b: Vec<F> = eqs.iter().map(|(_, v)| v.clone()).collect();
        for &i in subset {
            a.push(ineqs[i].coeffs.clone());
            b.push(ineqs[i].bound.clone());
        }
        let Some(x) = solve(a, b) else {
            return;
        };
        if found.contains_key(&x) || !p.contains(&x) {
            return;
        }
        let tight = ineqs
            .iter()
            .enumerate()
            .filter(|(_, r)| r.eval(&x) == r.bound)
            .map(|(i, _)| i)
            .collect();
        found.insert(x, tight);
    });
    let (vertices, tight_sets) = found.into_iter().unzip();
    Ok(VertexSet {
        dim,
        vertices,
        tight_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hpoly::{build_order_polytope, Row};
    use crate::poset::FinitePoset;
    use crate::Rational;

    #[test]
    fn unit_square() {
        let p: HPolytope<Rational> = build_order_polytope(&FinitePoset::antichain(2));
        let v = enumerate_vertices(&p).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v.affine_dim(), Some(2));
        assert!(v.tight_sets.iter().all(|t| t.len() == 2));
    }

    #[test]
    fn segment_section() {
        let p: HPolytope<Rational> = build_order_polytope(&FinitePoset::antichain(2));
        let v = enumerate_vertices(&p.sum_section(Rational::from_int(1))).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.affine_dim(), Some(1));
    }

    #[test]
    fn empty_section() {
        let p: HPolytope<Rational> = build_order_polytope(&FinitePoset::antichain(2));
        let v = enumerate_vertices(&p.sum_section(Rational::from_int(3))).unwrap();
        assert!(v.is_empty());
        assert_eq!(v.affine_dim(), None);
    }

    #[test]
    fn inconsistent_equalities() {
        let p = HPolytope::<Rational>::new(
            1,
            vec![Row::from_ints(&[1], 1), Row::from_ints(&[-1], 0)],
            vec![Row::from_ints(&[1], 0), Row::from_ints(&[2], 1)],
        )
        .unwrap();
        assert!(enumerate_vertices(&p).unwrap().is_empty());
    }

    #[test]
    fn cap() {
        let p: HPolytope<Rational> = build_order_polytope(&FinitePoset::antichain(9));
        assert!(matches!(
            enumerate_vertices(&p),
            Err(Error::DimensionCap { .. })
        ));
    }

    #[test]
    fn solve_and_rank() {
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>();
        assert_eq!(rank(vec![r(&[1, 2]), r(&[2, 4])]), 1);
        let x = solve(vec![r(&[2, 1]), r(&[1, 3])], r(&[3, 5])).unwrap();
        assert_eq!(
            x,
            vec![
                Rational::new(4.into(), 5.into()),
                Rational::new(7.into(), 5.into())
            ]
        );
        assert!(solve(vec![r(&[1, 2]), r(&[2, 4])], r(&[1, 2])).is_none());
    }
}
