//! Published numbers, recomputed. Each row states the claim, the value as
//! published, the value computed here, and whether they agree.

use chainlink::analysis::stretch_analysis;
use chainlink::ehrhart::{
    count_dilated_section, fit_section_quasipolynomial_forced, relative_volume,
};
use chainlink::geometry::{
    build_ideal_polytope, chainlink_vertices, count_lattice_points, section_vertices,
    vertex_count_trace,
};
use chainlink::poset::build_circular_fence;
use chainlink::qpoly::analyze_modality;
use chainlink::transfer::{
    box_matrix, chainlink_rank_polynomial_with, circular_fence_rank_polynomial,
};
use chainlink::{Composition, QPoly, QuasiPoly, RankMat, Rational, Result};
use serde::Serialize;
use serde_json::json;

use crate::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproRow {
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

fn row(
    claim: impl Into<String>,
    expected: impl Into<String>,
    observed: Result<String>,
) -> ReproRow {
    let expected = expected.into();
    let (observed, pass) = match observed {
        Ok(o) => {
            let pass = o == expected;
            (o, pass)
        }
        Err(e) => (format!("error: {e}"), false),
    };
    ReproRow {
        claim: claim.into(),
        expected,
        observed,
        pass,
    }
}

fn comp(s: &str) -> Composition {
    Composition::parse(s).expect("fixed composition")
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn list<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn coeffs(p: &QPoly) -> String {
    list(p.coeffs())
}

fn point(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

const STRETCH_LISTS: [&[i64]; 4] = [
    &[1, 2, 1, 2, 1],
    &[1, 2, 3, 2, 3, 2, 3, 2, 1],
    &[1, 2, 3, 4, 3, 4, 3, 4, 3, 4, 3, 2, 1],
    &[1, 2, 3, 4, 5, 4, 5, 4, 5, 4, 5, 4, 5, 4, 3, 2, 1],
];

pub fn repro_rows() -> Vec<ReproRow> {
    repro_rows_with(&box_matrix)
}

/// As [`repro_rows`], with the box matrix used by the transfer computation
/// supplied by the caller.
pub fn repro_rows_with(box_fn: &dyn Fn(usize, usize) -> Result<RankMat>) -> Vec<ReproRow> {
    let mut rows = Vec::new();

    rows.push(row(
        "rank polynomial of CL((6,4,5),2)",
        "[1,3,6,9,12,14,16,17,17,16,14,12,9,6,3,1]",
        chainlink_rank_polynomial_with(&comp("6,4,5"), 2, box_fn).map(|p: QPoly| coeffs(&p)),
    ));

    rows.push(row(
        "circular fence (1,1,1,1): rank polynomial and peaks",
        "[1,2,1,2,1]; 2 peaks",
        circular_fence_rank_polynomial(&comp("1,1,1,1")).and_then(|p: QPoly| {
            Ok(format!(
                "{}; {} peaks",
                coeffs(&p),
                analyze_modality(&p)?.peak_count
            ))
        }),
    ));

    let a = comp("6,4,5");
    rows.push(row(
        "lattice points of CL^7((6,4,5),3) and CL^8((6,4,5),3)",
        "9, 10",
        (|| {
            Ok(format!(
                "{}, {}",
                count_dilated_section(&a, 3, 7, 1)?,
                count_dilated_section(&a, 3, 8, 1)?
            ))
        })(),
    ));

    rows.push(row(
        "gate (3,1,2,1,1,1), dilation 2, sections 4 and 5",
        "84, 83",
        (|| {
            let p = build_ideal_polytope::<Rational>(&build_circular_fence(&comp("3,1,2,1,1,1"))?);
            Ok(format!(
                "{}, {}",
                count_lattice_points(&p, Some(&int(4)), 2)?,
                count_lattice_points(&p, Some(&int(5)), 2)?
            ))
        })(),
    ));

    rows.push(row(
        "vertices of CL^2((2,2),1)",
        "(1/2,3/2), (3/2,1/2)",
        section_vertices::<Rational>(&comp("2,2"), 1, &int(2)).map(|v| {
            v.vertices
                .iter()
                .map(|x| point(x))
                .collect::<Vec<_>>()
                .join(", ")
        }),
    ));

    rows.push(row(
        "CL^5((3,3,3),2) has the vertex (8/3,5/3,2/3)",
        "present",
        section_vertices::<Rational>(&comp("3,3,3"), 2, &int(5)).map(|v| {
            let target = [int(8) / int(3), int(5) / int(3), int(2) / int(3)];
            if v.contains(&target) {
                "present"
            } else {
                "absent"
            }
            .to_string()
        }),
    ));

    let stretched = stretch_analysis(&comp("2,2"), 1, 5);
    for (k, expected) in STRETCH_LISTS.iter().enumerate() {
        rows.push(row(
            format!("{k}-stretch of CL((2,2),1): rank sequence"),
            list(expected),
            stretched.clone().map(|r| coeffs(&r[k].rank_polynomial)),
        ));
    }
    rows.push(row(
        "k-stretch of CL((2,2),1) has k+2 peaks, k = 0..5",
        "[2,3,4,5,6,7]",
        stretched
            .clone()
            .map(|r| list(&r.iter().map(|x| x.peak_count).collect::<Vec<_>>())),
    ));

    rows.push(row(
        "vertex counts of CL((5,...,5),2), s = 1..4",
        "[2,6,14,34]",
        (1..=4)
            .map(|s| {
                let a = Composition::new(vec![5; s])?;
                let n = chainlink_vertices::<Rational>(&a, 2)?.len();
                let trace = vertex_count_trace(&a, 2)?;
                if trace != n.into() {
                    return Err(chainlink::Error::Invariant(format!(
                        "s={s}: {n} vertices, trace {trace}"
                    )));
                }
                Ok(n)
            })
            .collect::<Result<Vec<usize>>>()
            .map(|v| list(&v)),
    ));

    rows.push(row(
        "section volumes of CL^7((6,4,5),3) : CL^8((6,4,5),3)",
        "71:72",
        (|| {
            let x: QuasiPoly = fit_section_quasipolynomial_forced(&a, 3, 7)?;
            let y: QuasiPoly = fit_section_quasipolynomial_forced(&a, 3, 8)?;
            let r = relative_volume(&x)? / relative_volume(&y)?;
            Ok(format!("{}:{}", r.numer(), r.denom()))
        })(),
    ));

    rows
}

pub fn report(rows: &[ReproRow]) -> Report {
    let failed = rows.iter().filter(|r| !r.pass).count();
    Report::checked(
        json!({"rows": rows, "passed": rows.len() - failed, "failed": failed}),
        failed == 0,
    )
}
