use std::path::Path;

use chainlink::analysis::{
    chainlink_family, fence_unimodality_scan, stretch_analysis, unimodality_scan,
    verify_rank_recurrence,
};
use chainlink::ehrhart::{
    check_complementary_symmetry, count_dilated_section, fit_section_quasipolynomial,
    fit_section_quasipolynomial_forced, full_polytope_ehrhart, relative_volume, section_dimension,
    section_vertex_period, SectionCounter, SYMMETRY_DILATIONS,
};
use chainlink::geometry::{
    build_chainlink_hrep, build_general_fence_polytope, build_ideal_polytope, build_order_polytope,
    chainlink_vertices, combinatorial_structure, count_lattice_points, enumerate_lattice_points,
    enumerate_vertices, lattice_counts_by_sum, lattice_generating_function,
    same_incidence_structure, section_vertices, trace_power, vertex_count_trace,
    volume_inclusion_exclusion, volume_trace, VERTEX_MATRIX_A,
};
use chainlink::poset::{
    build_chainlink_poset, build_circular_fence, build_fence, build_stretched_chainlink,
    rank_matrix_bruteforce, rank_matrix_bruteforce_with_cap, rank_polynomial_bruteforce,
    rank_polynomial_bruteforce_with_cap, stretched_composition,
};
use chainlink::qpoly::{analyze_modality, analyze_symmetry, gaussian_binomial};
use chainlink::transfer::{
    alternating_trace, box_matrix, chainlink_rank_polynomial, circular_fence_rank_polynomial,
    down_matrix, up_matrix, verify_matrix_identities,
};
use chainlink::{
    Composition, Error, FinitePoset, OrientedPoset, Polytope, QPoly, QuasiPoly, RankMat, Rational,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{
    ChainlinkArgs, CliError, Command, EhrhartArgs, Encoding, MatrixArgs, PointsArgs, RankPolyArgs,
    Report, ScanCommand, StructureArgs, SymmetryArgs, VerticesArgs, VolumeArgs, VolumeMethod,
};

type Res = Result<Report, CliError>;

pub fn dispatch(cmd: &Command) -> Res {
    match cmd {
        Command::RankPoly(a) => rank_poly(a),
        Command::Qbinom { n, k } => {
            let g: QPoly = gaussian_binomial(*n, *k);
            Ok(Report::ok(json!({"n": n, "k": k, "polynomial": g})))
        }
        Command::Matrix(a) => matrix(a),
        Command::Points(a) => points(a),
        Command::Vertices(a) => vertices(a),
        Command::Volume(a) => volume(a),
        Command::Ehrhart(a) => ehrhart(a),
        Command::Symmetry(a) => symmetry(a),
        Command::Scan(s) => scan(s),
        Command::Stretch { input, k } => stretch(input, *k),
        Command::Identities { amax, bmax } => identities(*amax, *bmax),
        Command::Recurrence { a, b, tail } => {
            let holds = verify_rank_recurrence(*a, *b, tail)?;
            Ok(Report::checked(
                json!({"a": a, "b": b, "tail": tail, "holds": holds}),
                holds,
            ))
        }
        Command::Structure(a) => structure(a),
        Command::Repro => Ok(crate::repro::report(&crate::repro::repro_rows())),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read_file(path)?).map_err(|e| CliError::Lib(Error::Json(e.to_string())))
}

fn rational(s: &str) -> Result<Rational, CliError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| usage(format!("not an exact number: `{s}`")))
}

fn check_link_at_most_min(a: &Composition, l: usize) -> Result<(), CliError> {
    if l > a.min_part() {
        return Err(Error::Precondition(format!(
            "l <= min(a): l = {l} > min(a) = {}",
            a.min_part()
        ))
        .into());
    }
    Ok(())
}

fn describe(p: &QPoly) -> Result<Value, CliError> {
    let sym = analyze_symmetry(p)?;
    let m = analyze_modality(p)?;
    Ok(json!({
        "rank_polynomial": p,
        "degree": p.degree(),
        "ideals": p.value_at_one().to_string(),
        "symmetric": sym.symmetric,
        "center": sym.center.to_string(),
        "peak_count": m.peak_count,
        "unimodal": m.unimodal,
    }))
}

fn with_fields(mut v: Value, extra: Value) -> Value {
    if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
        for (k, x) in more {
            map.insert(k, x);
        }
    }
    v
}

fn rank_poly(args: &RankPolyArgs) -> Res {
    let (input, method, p): (Value, &str, QPoly) = if let Some(a) = &args.chainlink {
        let l = args.link.expect("clap requires --link");
        check_link_at_most_min(a, l)?;
        if let Some(k) = args.stretch {
            let p = rank_polynomial_bruteforce(&build_stretched_chainlink(a, l, k)?)?;
            (
                json!({"chainlink": a, "link": l, "stretch": k}),
                "ideals",
                p,
            )
        } else if 2 * l <= a.min_part() {
            (
                json!({"chainlink": a, "link": l}),
                "transfer",
                chainlink_rank_polynomial(a, l)?,
            )
        } else {
            (
                json!({"chainlink": a, "link": l}),
                "lattice",
                lattice_generating_function(a, l)?,
            )
        }
    } else if let Some(c) = &args.circular_fence {
        (
            json!({"circular_fence": c}),
            "transfer",
            circular_fence_rank_polynomial(c)?,
        )
    } else if let Some(c) = &args.fence {
        (
            json!({"fence": c}),
            "ideals",
            rank_polynomial_bruteforce(&build_fence(c)?)?,
        )
    } else if let Some(c) = &args.alternating {
        (json!({"alternating": c}), "transfer", alternating_trace(c)?)
    } else {
        let path = args.poset.as_ref().expect("clap requires one input");
        let poset: FinitePoset = read_json(path)?;
        let p = match args.cap {
            Some(cap) => rank_polynomial_bruteforce_with_cap(&poset, cap)?,
            None => rank_polynomial_bruteforce(&poset)?,
        };
        (
            json!({"poset": path.display().to_string(), "size": poset.size()}),
            "ideals",
            p,
        )
    };
    let body = describe(&p)?;
    Ok(Report::ok(with_fields(
        json!({"input": input, "method": method}),
        body,
    )))
}

#[derive(Deserialize)]
struct OrientedFile {
    n: usize,
    covers: Vec<[usize; 2]>,
    left: usize,
    right: usize,
}

fn matrix_json(m: &RankMat) -> Value {
    json!({"entries": m, "trace": m.trace(), "det": m.det()})
}

fn matrix(args: &MatrixArgs) -> Res {
    let (name, m): (String, RankMat) = if args.up {
        ("U".into(), up_matrix())
    } else if args.down {
        ("D".into(), down_matrix())
    } else if let Some(ab) = &args.box_ {
        let [a, b] = ab.parts() else {
            return Err(usage("--box takes exactly two parts `a,b`"));
        };
        (format!("B({a},{b})"), box_matrix(*a, *b)?)
    } else {
        let path = args.oriented.as_ref().expect("clap requires one matrix");
        let raw: OrientedFile = read_json(path)?;
        let rel: Vec<(usize, usize)> = raw.covers.iter().map(|c| (c[0], c[1])).collect();
        let op = OrientedPoset::new(
            FinitePoset::from_relations(raw.n, &rel)?,
            raw.left,
            raw.right,
        )?;
        let m = match args.cap {
            Some(cap) => rank_matrix_bruteforce_with_cap(&op, cap)?,
            None => rank_matrix_bruteforce(&op)?,
        };
        (path.display().to_string(), m)
    };
    let powered = m.pow(args.power);
    Ok(Report::ok(with_fields(
        json!({"matrix": name, "power": args.power}),
        matrix_json(&powered),
    )))
}

fn points(args: &PointsArgs) -> Res {
    let section = args.section.as_deref().map(rational).transpose()?;
    let k = args.dilate;
    if k == 0 {
        return Err(usage("--dilate must be at least 1"));
    }
    let (input, polytope): (Value, Polytope) = if let Some(a) = &args.chainlink {
        let l = args.link.expect("clap requires --link");
        check_link_at_most_min(a, l)?;
        // Integral sections go through the cross-checked counter.
        if let (Some(t), false) = (&section, args.list) {
            if t.is_integer() {
                let t = t.to_integer().try_into().map_err(|_| Error::Overflow)?;
                let n = count_dilated_section(a, l, t, k)?;
                return Ok(Report::ok(json!({
                    "input": {"chainlink": a, "link": l},
                    "section": t,
                    "dilate": k,
                    "count": n,
                })));
            }
        }
        (
            json!({"chainlink": a, "link": l}),
            build_chainlink_hrep(a, l),
        )
    } else if let Some(c) = &args.order_polytope {
        let gate = build_circular_fence(c)?;
        (
            json!({"order_polytope": c, "encoding": encoding_name(args.encoding)}),
            order_like(&gate, args.encoding),
        )
    } else if let Some(path) = &args.poset {
        let p: FinitePoset = read_json(path)?;
        (
            json!({"poset": path.display().to_string(), "encoding": encoding_name(args.encoding)}),
            order_like(&p, args.encoding),
        )
    } else if let Some(c) = &args.general_fence {
        (
            json!({"general_fence": c}),
            build_general_fence_polytope(c)?,
        )
    } else {
        let path = args.polytope.as_ref().expect("clap requires one input");
        (
            json!({"polytope": path.display().to_string()}),
            Polytope::from_json(&read_file(path)?)?,
        )
    };
    let mut out = json!({"input": input, "dilate": k});
    match &section {
        Some(t) => {
            out["section"] = json!(t.to_string());
            out["count"] = json!(count_lattice_points(&polytope, Some(t), k)?);
        }
        None => {
            let hist = lattice_counts_by_sum(&polytope, k)?;
            out["count"] = json!(hist.iter().sum::<u64>());
            out["counts_by_sum"] = json!(hist);
        }
    }
    if args.list {
        out["points"] = json!(enumerate_lattice_points(&polytope, section.as_ref(), k)?);
    }
    Ok(Report::ok(out))
}

fn encoding_name(e: Encoding) -> &'static str {
    match e {
        Encoding::Ideal => "ideal",
        Encoding::Order => "order",
    }
}

fn order_like(p: &FinitePoset, e: Encoding) -> Polytope {
    match e {
        Encoding::Ideal => build_ideal_polytope(p),
        Encoding::Order => build_order_polytope(p),
    }
}

fn vertices(args: &VerticesArgs) -> Res {
    let Some(a) = &args.chainlink else {
        let path = args.polytope.as_ref().expect("clap requires one input");
        let p = Polytope::from_json(&read_file(path)?)?;
        let v = enumerate_vertices(&p)?;
        return Ok(Report::ok(
            json!({"input": {"polytope": path.display().to_string()}, "vertices": v}),
        ));
    };
    let l = args.link.expect("clap requires --link");
    check_link_at_most_min(a, l)?;
    let input = json!({"chainlink": a, "link": l});
    if let Some(t) = &args.section {
        let t = rational(t)?;
        let v = section_vertices::<Rational>(a, l, &t)?;
        return Ok(Report::ok(json!({
            "input": input,
            "section": t.to_string(),
            "count": v.len(),
            "half_integral": v.is_half_integral(),
            "vertices": v,
        })));
    }
    let v = chainlink_vertices::<Rational>(a, l)?;
    let mut out = json!({"input": input, "count": v.len()});
    let mut ok = true;
    if l >= 1 && 2 * l <= a.min_part() {
        let trace = vertex_count_trace(a, l)?;
        ok = trace == v.len().into();
        out["trace_formula"] = json!(trace.to_string());
        if 2 * l < a.min_part() {
            out["companion_pell"] = json!(trace_power(&VERTEX_MATRIX_A, a.len()).to_string());
        }
    }
    out["vertices"] = serde_json::to_value(&v).expect("vertex sets serialize");
    Ok(Report::checked(out, ok))
}

fn volume(args: &VolumeArgs) -> Res {
    let ChainlinkArgs {
        chainlink: a,
        link: l,
    } = &args.input;
    let (a, l) = (a, *l);
    let mut out = json!({"input": {"chainlink": a, "link": l}});
    let mut values: Vec<Rational> = Vec::new();
    let all = args.method == VolumeMethod::All;
    if all || args.method == VolumeMethod::Trace {
        let v: Rational = volume_trace(a, l)?;
        out["trace"] = json!(v.to_string());
        values.push(v);
    }
    if all || args.method == VolumeMethod::Inclexcl {
        let v: Rational = volume_inclusion_exclusion(a, l)?;
        out["inclexcl"] = json!(v.to_string());
        values.push(v);
    }
    if all || args.method == VolumeMethod::Ehrhart {
        let qp: QuasiPoly = full_polytope_ehrhart(a, l)?;
        let v = relative_volume(&qp)?;
        out["ehrhart"] = json!(v.to_string());
        values.push(v);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    out["volume"] = json!(values[0].to_string());
    if values.len() > 1 {
        out["agree"] = json!(agree);
    }
    Ok(Report::checked(out, agree))
}

fn quasi_json(qp: &QuasiPoly) -> Result<Value, CliError> {
    let vol = relative_volume(qp)?;
    Ok(json!({
        "quasi_polynomial": qp,
        "polynomial": qp.is_polynomial(),
        "relative_volume": vol.to_string(),
        "values": (1..=4).map(|k| qp.eval(k).to_string()).collect::<Vec<_>>(),
    }))
}

fn ehrhart(args: &EhrhartArgs) -> Res {
    let ChainlinkArgs {
        chainlink: a,
        link: l,
    } = &args.input;
    let l = *l;
    let input = json!({"chainlink": a, "link": l});
    let Some(t) = args.section else {
        let qp: QuasiPoly = full_polytope_ehrhart(a, l)?;
        return Ok(Report::ok(with_fields(
            json!({"input": input, "full": true}),
            quasi_json(&qp)?,
        )));
    };
    let qp: QuasiPoly = if args.force {
        fit_section_quasipolynomial_forced(a, l, t)?
    } else {
        fit_section_quasipolynomial(a, l, t)?
    };
    let head = json!({
        "input": input,
        "section": t,
        "dimension": section_dimension(a, l, t)?,
        "vertex_period": section_vertex_period(a, l, t)?,
        "forced": args.force,
    });
    Ok(Report::ok(with_fields(head, quasi_json(&qp)?)))
}

fn symmetry(args: &SymmetryArgs) -> Res {
    let ChainlinkArgs {
        chainlink: a,
        link: l,
    } = &args.input;
    let l = *l;
    if args.all_sections {
        let r = check_complementary_symmetry::<Rational>(a, l, args.force)?;
        let ok = r.passed();
        return Ok(Report::checked(
            serde_json::to_value(&r).expect("reports serialize"),
            ok,
        ));
    }
    check_link_at_most_min(a, l)?;
    let t = args
        .section
        .expect("clap requires --section or --all-sections");
    let n = a.total() as i64;
    if !(0..=n).contains(&t) {
        return Err(Error::Precondition(format!("0 <= t <= n: t = {t}, n = {n}")).into());
    }
    let counter = SectionCounter::new(a, l);
    let counts_t = counter.counts(t, SYMMETRY_DILATIONS)?;
    let counts_c = counter.counts(n - t, SYMMETRY_DILATIONS)?;
    let counts_equal = counts_t == counts_c;
    let mut out = json!({
        "input": {"chainlink": a, "link": l},
        "t": t,
        "complement": n - t,
        "counts_t": counts_t,
        "counts_complement": counts_c,
        "counts_equal": counts_equal,
    });
    let mut ok = counts_equal;
    if args.force || 2 * l <= a.min_part() {
        let fit = |s: i64| -> Result<QuasiPoly, CliError> {
            Ok(if args.force {
                fit_section_quasipolynomial_forced(a, l, s)?
            } else {
                fit_section_quasipolynomial(a, l, s)?
            })
        };
        let (x, y) = (fit(t)?, fit(n - t)?);
        let fits_equal = x == y;
        ok &= fits_equal;
        out["fits_equal"] = json!(fits_equal);
        out["relative_volume_t"] = json!(relative_volume(&x)?.to_string());
        out["relative_volume_complement"] = json!(relative_volume(&y)?.to_string());
    }
    Ok(Report::checked(out, ok))
}

fn scan(cmd: &ScanCommand) -> Res {
    match cmd {
        ScanCommand::Unimodality { max_total, csv } => {
            let r = unimodality_scan(*max_total)?;
            let ok = r.passed();
            let mut report =
                Report::checked(serde_json::to_value(&r).expect("reports serialize"), ok);
            if *csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["composition", "peak_count"])
                    .map_err(|e| usage(e.to_string()))?;
                for v in &r.violations {
                    w.write_record([v.composition.to_string(), v.peak_count.to_string()])
                        .map_err(|e| usage(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
                report.csv = Some(String::from_utf8(bytes).expect("csv output is utf-8"));
            }
            Ok(report)
        }
        ScanCommand::Fence { max_total } => {
            let r = fence_unimodality_scan(*max_total)?;
            let ok = r.non_unimodal.is_empty();
            Ok(Report::checked(
                serde_json::to_value(&r).expect("reports serialize"),
                ok,
            ))
        }
        ScanCommand::Chainlink { max_len, max_part } => {
            if *max_len == 0 {
                return Err(usage("--max-len must be at least 1"));
            }
            let family = chainlink_family(1..=*max_len, *max_part);
            let mut mismatches = Vec::new();
            let mut asymmetric = Vec::new();
            let mut ideal_checked = 0usize;
            for (a, l) in &family {
                let transfer: QPoly = chainlink_rank_polynomial(a, *l)?;
                let lattice: QPoly = lattice_generating_function(a, *l)?;
                let mut agree = transfer == lattice;
                if a.total() <= chainlink::poset::DEFAULT_CAP {
                    let ideals: QPoly = rank_polynomial_bruteforce(&build_chainlink_poset(a, *l)?)?;
                    agree &= transfer == ideals;
                    ideal_checked += 1;
                }
                if !agree {
                    mismatches.push(json!({"chainlink": a, "link": l}));
                }
                if !transfer.is_palindromic() {
                    asymmetric.push(json!({"chainlink": a, "link": l}));
                }
            }
            let ok = mismatches.is_empty() && asymmetric.is_empty();
            Ok(Report::checked(
                json!({
                    "max_len": max_len,
                    "max_part": max_part,
                    "instances_checked": family.len(),
                    "ideal_enumerations": ideal_checked,
                    "mismatches": mismatches,
                    "asymmetric": asymmetric,
                }),
                ok,
            ))
        }
    }
}

fn stretch(input: &ChainlinkArgs, k: usize) -> Res {
    let (a, l) = (&input.chainlink, input.link);
    check_link_at_most_min(a, l)?;
    let rows = stretch_analysis(a, l, k)?;
    let ok = rows.iter().all(|r| r.palindromic);
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "composition": stretched_composition(a, l, r.k),
                "size": r.size,
                "rank_polynomial": r.rank_polynomial,
                "peak_count": r.peak_count,
                "palindromic": r.palindromic,
            })
        })
        .collect();
    Ok(Report::checked(
        json!({"input": {"chainlink": a, "link": l}, "rows": rows}),
        ok,
    ))
}

fn identities(amax: usize, bmax: usize) -> Res {
    let r = verify_matrix_identities::<chainlink::Integer>(amax, bmax)?;
    let summary: Vec<Value> = r
        .summary()
        .into_iter()
        .map(|(name, passed)| json!({"identity": name, "passed": passed}))
        .collect();
    let failures: Vec<&chainlink::transfer::IdentityCheck> =
        r.checks.iter().filter(|c| !c.passed).collect();
    Ok(Report::checked(
        json!({
            "amax": amax,
            "bmax": bmax,
            "instances": r.checks.len(),
            "summary": summary,
            "failures": failures,
        }),
        r.all_passed(),
    ))
}

fn structure(args: &StructureArgs) -> Res {
    let ChainlinkArgs {
        chainlink: a,
        link: l,
    } = &args.input;
    let r = combinatorial_structure::<Rational>(a, *l)?;
    let mut ok = r.passed();
    let mut out = serde_json::to_value(&r).expect("reports serialize");
    out["passed"] = json!(ok);
    if let (Some(b), Some(m)) = (&args.against, args.against_link) {
        let other = combinatorial_structure::<Rational>(b, m)?;
        let same = same_incidence_structure(&r, &other);
        ok &= same;
        out["against"] =
            json!({"chainlink": b, "link": m, "facets": other.facets, "vertices": other.vertices});
        out["same_structure"] = json!(same);
    }
    Ok(Report::checked(out, ok))
}
