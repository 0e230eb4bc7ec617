use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::hpoly::{build_chainlink_hrep, HPolytope};
use super::vertices::{enumerate_vertices, rank, VertexSet};
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::scalar::Field;

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

fn int<F: Field>(n: usize) -> F {
    F::from_int(i64::try_from(n).expect("fits in i64"))
}

/// Points with `x_i ∈ {0, l, a_i - l, a_i}` that are vertices of `CL(a, l)`.
pub fn vertex_candidates<F: Field>(a: &Composition, l: usize) -> Vec<Vec<F>> {
    let p: HPolytope<F> = build_chainlink_hrep(a, l);
    let choices: Vec<Vec<F>> = a
        .parts()
        .iter()
        .map(|&ai| {
            let mut c = vec![int(0), int(l), int(ai.saturating_sub(l)), int(ai)];
            c.sort();
            c.dedup();
            c
        })
        .collect();
    let mut out = Vec::new();
    let mut point = Vec::with_capacity(a.len());
    candidates_rec(&p, &choices, &mut point, &mut out);
    out.sort();
    out
}

fn candidates_rec<F: Field>(
    p: &HPolytope<F>,
    choices: &[Vec<F>],
    point: &mut Vec<F>,
    out: &mut Vec<Vec<F>>,
) {
    let j = point.len();
    if j == choices.len() {
        if !p.contains(point) {
            return;
        }
        let tight: Vec<Vec<F>> = p
            .ineqs()
            .iter()
            .filter(|r| r.eval(point) == r.bound)
            .map(|r| r.coeffs.clone())
            .collect();
        if rank(tight) == p.dim() {
            out.push(point.clone());
        }
        return;
    }
    for v in &choices[j] {
        point.push(v.clone());
        candidates_rec(p, choices, point, out);
        point.pop();
    }
}

/// Vertices of `CL(a, l)`. When `2l ≤ min(a)` the generic enumeration is
/// cross-checked against [`vertex_candidates`].
pub fn chainlink_vertices<F: Field>(a: &Composition, l: usize) -> Result<VertexSet<F>> {
    let v = enumerate_vertices(&build_chainlink_hrep::<F>(a, l))?;
    if 2 * l <= a.min_part() {
        let candidates = vertex_candidates::<F>(a, l);
        if candidates != v.vertices {
            return Err(Error::Invariant(format!(
                "vertices of CL({a}, {l}) are not all of the form {{0, l, a_i - l, a_i}}"
            )));
        }
    }
    Ok(v)
}

/// Vertices of the section `CL^t(a, l) = CL(a, l) ∩ {Σx = t}`.
///
/// For `2l ≤ min(a)` and integral `t` every coordinate is checked to be
/// half-integral.
pub fn section_vertices<F: Field>(a: &Composition, l: usize, t: &F) -> Result<VertexSet<F>> {
    if t.is_negative() || *t > int(a.total()) {
        return Err(Error::Precondition(format!(
            "0 <= t <= {}: t = {t}",
            a.total()
        )));
    }
    let p = build_chainlink_hrep::<F>(a, l).sum_section(t.clone());
    let v = enumerate_vertices(&p)?;
    if 2 * l <= a.min_part() && t.is_integral() && !v.is_half_integral() {
        return Err(Error::Invariant(format!(
            "section t = {t} of CL({a}, {l}) has a vertex outside (1/2)Z^s"
        )));
    }
    Ok(v)
}

pub type Mat3 = [[i64; 3]; 3];

/// Transfer matrix for a part with `a_i > 2l`.
pub const VERTEX_MATRIX_A: Mat3 = [[1, 1, 1], [1, 0, 0], [1, 1, 1]];
/// Transfer matrix for a part with `a_i = 2l`.
pub const VERTEX_MATRIX_B: Mat3 = [[1, 1, 1], [1, 0, 0], [1, 0, 1]];

fn mat3_mul(x: &[[BigInt; 3]; 3], y: &[[BigInt; 3]; 3]) -> [[BigInt; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &x[i][k] * &y[k][j]).sum()))
}

fn mat3_big(m: &Mat3) -> [[BigInt; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from(m[i][j])))
}

fn mat3_identity() -> [[BigInt; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    })
}

/// `tr(M_1 ··· M_s)`.
pub fn trace_of_product(factors: &[Mat3]) -> BigInt {
    let p = factors
        .iter()
        .fold(mat3_identity(), |acc, m| mat3_mul(&acc, &mat3_big(m)));
    (0..3).map(|i| p[i][i].clone()).sum()
}

/// `tr(M^s)`.
pub fn trace_power(m: &Mat3, s: usize) -> BigInt {
    trace_of_product(&vec![*m; s])
}

/// Vertex count of `CL(a, l)` as `tr(A_1 ··· A_s)` with `A_i` the `A`
/// matrix when `a_i > 2l` and the `B` matrix when `a_i = 2l`.
pub fn vertex_count_trace(a: &Composition, l: usize) -> Result<BigInt> {
    if l == 0 {
        return Err(Error::Precondition("l >= 1".into()));
    }
    require_half_link(a, l)?;
    let factors: Vec<Mat3> = a
        .parts()
        .iter()
        .map(|&ai| {
            if ai == 2 * l {
                VERTEX_MATRIX_B
            } else {
                VERTEX_MATRIX_A
            }
        })
        .collect();
    Ok(trace_of_product(&factors))
}

/// Volume of `CL(a, l)` as `tr(Π_i [[a_i, -l²/2], [1, 0]])`.
pub fn volume_trace<F: Field>(a: &Composition, l: usize) -> Result<F> {
    require_half_link(a, l)?;
    let h = int::<F>(l * l) / F::from_int(2);
    let mut p = [[F::one(), F::zero()], [F::zero(), F::one()]];
    for &ai in a.parts() {
        let m = [[int::<F>(ai), -h.clone()], [F::one(), F::zero()]];
        p = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                p[i][0].clone() * m[0][j].clone() + p[i][1].clone() * m[1][j].clone()
            })
        });
    }
    Ok(p[0][0].clone() + p[1][1].clone())
}

/// Edges of the cycle graph on `s` vertices as vertex pairs. `s = 1` has no
/// usable edge and `s = 2` has two parallel edges.
pub fn cycle_edges(s: usize) -> Vec<(usize, usize)> {
    match s {
        0 | 1 => Vec::new(),
        _ => (0..s).map(|i| (i, (i + 1) % s)).collect(),
    }
}

/// All matchings of the `s`-cycle, as edge-index lists (including the empty one).
pub fn cycle_matchings(s: usize) -> Vec<Vec<usize>> {
    let edges = cycle_edges(s);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << edges.len()) {
        let chosen: Vec<usize> = (0..edges.len()).filter(|&e| mask >> e & 1 == 1).collect();
        let mut used = vec![false; s];
        let ok = chosen.iter().all(|&e| {
            let (u, v) = edges[e];
            let free = !used[u] && !used[v];
            used[u] = true;
            used[v] = true;
            free
        });
        if ok {
            out.push(chosen);
        }
    }
    out
}

/// Volume of `CL(a, l)` by inclusion–exclusion over matchings `M` of the
/// `s`-cycle: `Σ_M (-l²/2)^{|M|} Π_{i ∉ V(M)} a_i`.
pub fn volume_inclusion_exclusion<F: Field>(a: &Composition, l: usize) -> Result<F> {
    require_half_link(a, l)?;
    let s = a.len();
    if s > 20 {
        return Err(Error::Precondition(format!(
            "s <= 20 for matching enumeration: s = {s}"
        )));
    }
    let edges = cycle_edges(s);
    let h = int::<F>(l * l) / F::from_int(2);
    let mut total = F::zero();
    for m in cycle_matchings(s) {
        let mut covered = vec![false; s];
        for &e in &m {
            covered[edges[e].0] = true;
            covered[edges[e].1] = true;
        }
        let mut term = a
            .parts()
            .iter()
            .zip(&covered)
            .filter(|(_, &c)| !c)
            .fold(F::one(), |acc, (&ai, _)| acc * int(ai));
        for _ in &m {
            term = term * h.clone();
        }
        if m.len() % 2 == 1 {
            term = -term;
        }
        total = total + term;
    }
    Ok(total)
}

/// Face structure of `CL(a, l)` for `0 < l < min(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub composition: Composition,
    pub link: usize,
    pub facets: usize,
    pub expected_facets: usize,
    pub full_dimensional: bool,
    pub vertices: usize,
    /// Every vertex lies on exactly `s` facets.
    pub simple: bool,
    /// Simplicity is only claimed for `2l < min(a)`.
    pub simplicity_required: bool,
    /// Facet indices (positions in the list of facet-defining rows) per vertex.
    pub incidence: Vec<Vec<usize>>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.facets == self.expected_facets
            && self.full_dimensional
            && (self.simple || !self.simplicity_required)
    }
}

pub fn combinatorial_structure<F: Field>(a: &Composition, l: usize) -> Result<StructureReport> {
    let s = a.len();
    if l == 0 || l >= a.min_part() {
        return Err(Error::Precondition(format!(
            "0 < l < min(a): l = {l}, min(a) = {}",
            a.min_part()
        )));
    }
    if s < 2 {
        return Err(Error::Precondition(
            "s >= 2 (a single part has no link inequality)".into(),
        ));
    }
    let p: HPolytope<F> = build_chainlink_hrep(a, l);
    let v = enumerate_vertices(&p)?;
    let full_dimensional = v.affine_dim() == Some(s);
    let facet_rows: Vec<usize> = (0..p.ineqs().len())
        .filter(|&i| {
            let on: Vec<Vec<F>> = v
                .vertices
                .iter()
                .zip(&v.tight_sets)
                .filter(|(_, t)| t.contains(&i))
                .map(|(x, _)| x.clone())
                .collect();
            let face = VertexSet {
                dim: s,
                vertices: on,
                tight_sets: Vec::new(),
            };
            face.affine_dim() == Some(s - 1)
        })
        .collect();
    let incidence: Vec<Vec<usize>> = v
        .tight_sets
        .iter()
        .map(|t| {
            facet_rows
                .iter()
                .enumerate()
                .filter(|(_, r)| t.contains(r))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let simple = incidence.iter().all(|f| f.len() == s);
    Ok(StructureReport {
        composition: a.clone(),
        link: l,
        facets: facet_rows.len(),
        expected_facets: 3 * s,
        full_dimensional,
        vertices: v.len(),
        simple,
        simplicity_required: 2 * l < a.min_part(),
        incidence,
    })
}

/// Whether some relabelling of facets carries one vertex–facet incidence
/// structure onto the other.
pub fn same_incidence_structure(x: &StructureReport, y: &StructureReport) -> bool {
    if x.facets != y.facets || x.vertices != y.vertices || x.facets > 64 {
        return false;
    }
    let masks = |r: &StructureReport| -> Vec<u64> {
        r.incidence
            .iter()
            .map(|f| f.iter().fold(0u64, |m, &k| m | 1 << k))
            .collect()
    };
    let (mx, my) = (masks(x), masks(y));
    let degree = |m: &[u64], f: usize| m.iter().filter(|&&v| v >> f & 1 == 1).count();
    let dx: Vec<usize> = (0..x.facets).map(|f| degree(&mx, f)).collect();
    let dy: Vec<usize> = (0..y.facets).map(|f| degree(&my, f)).collect();
    let mut perm = vec![usize::MAX; x.facets];
    let mut used = vec![false; y.facets];
    match_facets(0, &mx, &my, &dx, &dy, &mut perm, &mut used)
}

fn restricted(masks: &[u64], keep: u64) -> Vec<u64> {
    let mut v: Vec<u64> = masks.iter().map(|m| m & keep).collect();
    v.sort_unstable();
    v
}

fn match_facets(
    f: usize,
    mx: &[u64],
    my: &[u64],
    dx: &[usize],
    dy: &[usize],
    perm: &mut [usize],
    used: &mut [bool],
) -> bool {
    if f == perm.len() {
        return true;
    }
    for g in 0..dy.len() {
        if used[g] || dx[f] != dy[g] {
            continue;
        }
        perm[f] = g;
        used[g] = true;
        // Translate x's masks restricted to facets 0..=f and compare with y's
        // masks restricted to their images.
        let keep_y = (0..=f).fold(0u64, |m, k| m | 1 << perm[k]);
        let translated: Vec<u64> = mx
            .iter()
            .map(|&m| {
                (0..=f)
                    .filter(|&k| m >> k & 1 == 1)
                    .fold(0u64, |acc, k| acc | 1 << perm[k])
            })
            .collect();
        let ok = restricted(&translated, keep_y) == restricted(my, keep_y);
        if ok && match_facets(f + 1, mx, my, dx, dy, perm, used) {
            return true;
        }
        used[g] = false;
        perm[f] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn c(s: &str) -> Composition {
        Composition::parse(s).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn vertex_counts() {
        // a_2 = 2l, so the trace is tr(A B A) = 13, not tr(A^3) = 14.
        let v = chainlink_vertices::<Rational>(&c("6,4,5"), 2).unwrap();
        assert_eq!(v.len(), 13);
        assert_eq!(
            vertex_count_trace(&c("6,4,5"), 2).unwrap(),
            BigInt::from(13)
        );
        assert_eq!(
            chainlink_vertices::<Rational>(&c("6,5,5"), 2)
                .unwrap()
                .len(),
            14
        );
        assert_eq!(
            chainlink_vertices::<Rational>(&c("4,4"), 2).unwrap().len(),
            6
        );
        assert_eq!(vertex_count_trace(&c("4,4"), 2).unwrap(), BigInt::from(6));
    }

    #[test]
    fn pell_and_b_traces() {
        let pell: Vec<BigInt> = (1..=4).map(|s| trace_power(&VERTEX_MATRIX_A, s)).collect();
        assert_eq!(pell, [2, 6, 14, 34].map(BigInt::from));
        let b: Vec<BigInt> = (0..=3).map(|s| trace_power(&VERTEX_MATRIX_B, s)).collect();
        assert_eq!(b, [3, 2, 6, 11].map(BigInt::from));
    }

    #[test]
    fn section_pairs() {
        let v = section_vertices(&c("2,2"), 1, &r(2, 1)).unwrap();
        assert_eq!(
            v.vertices,
            vec![vec![r(1, 2), r(3, 2)], vec![r(3, 2), r(1, 2)]]
        );
        let v = section_vertices(&c("3,3,3"), 2, &r(5, 1)).unwrap();
        assert!(v.contains(&[r(8, 3), r(5, 3), r(2, 3)]));
        assert!(!v.is_half_integral());
        let v = section_vertices(&c("6,4,5"), 2, &r(0, 1)).unwrap();
        assert_eq!(v.vertices, vec![vec![r(0, 1); 3]]);
        assert_eq!(v.affine_dim(), Some(0));
    }

    #[test]
    fn section_bounds() {
        assert!(section_vertices(&c("2,2"), 1, &r(5, 1)).is_err());
        assert!(section_vertices(&c("2,2"), 1, &r(-1, 1)).is_err());
    }

    #[test]
    fn volumes() {
        assert_eq!(volume_trace::<Rational>(&c("6,4,5"), 2).unwrap(), r(90, 1));
        assert_eq!(
            volume_inclusion_exclusion::<Rational>(&c("6,4,5"), 2).unwrap(),
            r(90, 1)
        );
        assert_eq!(volume_trace::<Rational>(&c("2,2"), 1).unwrap(), r(3, 1));
        // 256 - 4 * 8 + 2 * (1/4): a perfect matching leaves no free factor.
        assert_eq!(
            volume_inclusion_exclusion::<Rational>(&c("4,4,4,4"), 1).unwrap(),
            r(449, 2)
        );
        assert_eq!(
            volume_trace::<Rational>(&c("4,4,4,4"), 1).unwrap(),
            r(449, 2)
        );
        assert_eq!(volume_trace::<Rational>(&c("6,4,5"), 0).unwrap(), r(120, 1));
        assert_eq!(
            volume_inclusion_exclusion::<Rational>(&c("7"), 3).unwrap(),
            r(7, 1)
        );
    }

    #[test]
    fn matchings_of_small_cycles() {
        assert_eq!(cycle_matchings(1).len(), 1);
        assert_eq!(cycle_matchings(2).len(), 3);
        assert_eq!(cycle_matchings(3).len(), 4);
        assert_eq!(cycle_matchings(4).len(), 7);
    }

    #[test]
    fn structure() {
        // 2l = a_2: nine facets, but one vertex lies on four of them.
        let boundary = combinatorial_structure::<Rational>(&c("6,4,5"), 2).unwrap();
        assert_eq!(boundary.facets, 9);
        assert_eq!(boundary.vertices, 13);
        assert!(!boundary.simple && !boundary.simplicity_required);
        assert!(boundary.passed());

        let x = combinatorial_structure::<Rational>(&c("6,5,5"), 2).unwrap();
        assert!(x.simple && x.simplicity_required && x.passed());
        let y = combinatorial_structure::<Rational>(&c("7,9,8"), 3).unwrap();
        assert!(same_incidence_structure(&x, &y));
        assert!(!same_incidence_structure(&x, &boundary));
        let z = combinatorial_structure::<Rational>(&c("5,5"), 2).unwrap();
        assert_eq!(z.facets, 6);
        assert!(z.simple && z.simplicity_required);
        assert!(!same_incidence_structure(&x, &z));
        assert!(combinatorial_structure::<Rational>(&c("4,5"), 4).is_err());
        assert!(combinatorial_structure::<Rational>(&c("5"), 2).is_err());
    }
}
