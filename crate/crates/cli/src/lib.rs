//! Command-line front end. [`run`] parses an argument vector, calls the
//! library and renders the result; the binary only forwards to it.

pub mod commands;
pub mod render;
pub mod repro;

use std::path::PathBuf;

use chainlink::{Composition, Error};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub use repro::{repro_rows, repro_rows_with, ReproRow};

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            // Internal cross-checks that disagree are findings, not bad input.
            CliError::Lib(
                Error::Invariant(_)
                | Error::PathDisagreement { .. }
                | Error::Validation { .. }
                | Error::LeadingMismatch,
            ) => EXIT_VIOLATION,
            CliError::Lib(_) => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

/// What a handler produced: a JSON document, whether every check in it
/// held, and optionally a CSV rendering that replaces the JSON.
pub struct Report {
    pub value: Value,
    pub ok: bool,
    pub csv: Option<String>,
}

impl Report {
    pub fn ok(value: Value) -> Self {
        Report {
            value,
            ok: true,
            csv: None,
        }
    }

    pub fn checked(value: Value, ok: bool) -> Self {
        Report {
            value,
            ok,
            csv: None,
        }
    }
}

fn composition(s: &str) -> Result<Composition, String> {
    Composition::parse(s).map_err(|e| e.to_string())
}

fn weak_composition(s: &str) -> Result<Composition, String> {
    Composition::parse_weak(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(
    name = "chainlink",
    version,
    about = "Chainlink polytopes, fence posets and rank polynomials"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Show rationals as decimals (table output only).
    #[arg(long, global = true)]
    pub float: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ChainlinkArgs {
    /// Composition `a`, comma separated.
    #[arg(long, value_parser = composition)]
    pub chainlink: Composition,
    /// Link parameter `l`.
    #[arg(long)]
    pub link: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank polynomial of a chainlink, fence, circular fence or poset file.
    RankPoly(RankPolyArgs),
    /// Gaussian binomial coefficient `[n choose k]_q`.
    Qbinom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: i64,
    },
    /// Rank matrices of the generators or of an oriented poset file.
    Matrix(MatrixArgs),
    /// Lattice points of a (dilated, sliced) polytope.
    Points(PointsArgs),
    /// Vertices of a chainlink polytope, a section, or a polytope file.
    Vertices(VerticesArgs),
    /// Volume of a chainlink polytope.
    Volume(VolumeArgs),
    /// Ehrhart quasi-polynomial of a section or the full polytope.
    Ehrhart(EhrhartArgs),
    /// Compare complementary sections `t` and `n - t`.
    Symmetry(SymmetryArgs),
    /// Family scans.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Rank polynomials of the `k`-stretches for `k = 0..=K`.
    Stretch {
        #[command(flatten)]
        input: ChainlinkArgs,
        #[arg(long = "k")]
        k: usize,
    },
    /// Check the matrix identities for `1 <= a <= amax`, `1 <= b <= bmax`.
    Identities {
        #[arg(long, default_value_t = 5)]
        amax: usize,
        #[arg(long, default_value_t = 5)]
        bmax: usize,
    },
    /// Check the zero-part rank recurrence for `(a, 1, b, X)`.
    Recurrence {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Odd-length tail `X`.
        #[arg(long, value_parser = composition)]
        tail: Composition,
    },
    /// Facet and vertex structure of a chainlink polytope.
    Structure(StructureArgs),
    /// Reproduce the published numbers, one row per claim.
    Repro,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true)))]
pub struct RankPolyArgs {
    #[arg(long, value_parser = composition, group = "input", requires = "link")]
    pub chainlink: Option<Composition>,
    #[arg(long, requires = "chainlink")]
    pub link: Option<usize>,
    /// Even-length composition.
    #[arg(long, value_parser = composition, group = "input")]
    pub circular_fence: Option<Composition>,
    #[arg(long, value_parser = composition, group = "input")]
    pub fence: Option<Composition>,
    /// Even-length weak composition; evaluates `tr(D^c1 U^c2 ...)` directly.
    #[arg(long, value_parser = weak_composition, group = "input")]
    pub alternating: Option<Composition>,
    /// JSON file `{"n": .., "covers": [[lo, hi], ..]}`.
    #[arg(long, group = "input")]
    pub poset: Option<PathBuf>,
    /// Use the `k`-stretch of the chainlink poset.
    #[arg(long, requires = "chainlink")]
    pub stretch: Option<usize>,
    /// Enumeration cap for `--poset`.
    #[arg(long, requires = "poset")]
    pub cap: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true)))]
pub struct MatrixArgs {
    #[arg(long, group = "which")]
    pub up: bool,
    #[arg(long, group = "which")]
    pub down: bool,
    /// Box matrix `B(a, b)`, given as `a,b`.
    #[arg(long = "box", value_parser = composition, group = "which")]
    pub box_: Option<Composition>,
    /// JSON file `{"n": .., "covers": [..], "left": i, "right": j}`.
    #[arg(long, group = "which")]
    pub oriented: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub power: usize,
    #[arg(long, requires = "oriented")]
    pub cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Encoding {
    /// `x_i >= x_j` whenever `i < j`: points are lower ideals.
    Ideal,
    /// `x_i <= x_j` whenever `i < j`: points are upper sets.
    Order,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true)))]
pub struct PointsArgs {
    #[arg(long, value_parser = composition, group = "input", requires = "link")]
    pub chainlink: Option<Composition>,
    #[arg(long, requires = "chainlink")]
    pub link: Option<usize>,
    /// Order polytope of the circular fence of this composition.
    #[arg(long, value_parser = composition, group = "input")]
    pub order_polytope: Option<Composition>,
    /// Order polytope of a poset file.
    #[arg(long, group = "input")]
    pub poset: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Encoding::Ideal)]
    pub encoding: Encoding,
    /// Circular-fence polytope of this even-length composition.
    #[arg(long, value_parser = composition, group = "input")]
    pub general_fence: Option<Composition>,
    /// JSON H-representation `{"dim", "ineqs", "eqs"}`.
    #[arg(long, group = "input")]
    pub polytope: Option<PathBuf>,
    /// Restrict to `Σx = K·T`; `T` may be a fraction `p/q`.
    #[arg(long)]
    pub section: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub dilate: u64,
    /// Also print the points.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true)))]
pub struct VerticesArgs {
    #[arg(long, value_parser = composition, group = "input", requires = "link")]
    pub chainlink: Option<Composition>,
    #[arg(long, requires = "chainlink")]
    pub link: Option<usize>,
    #[arg(long, group = "input")]
    pub polytope: Option<PathBuf>,
    /// Section `Σx = T`; `T` may be a fraction `p/q`.
    #[arg(long, requires = "chainlink")]
    pub section: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VolumeMethod {
    Trace,
    Inclexcl,
    Ehrhart,
    All,
}

#[derive(Args, Debug)]
pub struct VolumeArgs {
    #[command(flatten)]
    pub input: ChainlinkArgs,
    #[arg(long, value_enum, default_value_t = VolumeMethod::All)]
    pub method: VolumeMethod,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("what").required(true)))]
pub struct EhrhartArgs {
    #[command(flatten)]
    pub input: ChainlinkArgs,
    #[arg(long, group = "what", allow_hyphen_values = true)]
    pub section: Option<i64>,
    /// Full polytope instead of a section.
    #[arg(long, group = "what")]
    pub full: bool,
    /// Period from the section's vertex denominators instead of 2.
    #[arg(long, requires = "section")]
    pub force: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("what").required(true)))]
pub struct SymmetryArgs {
    #[command(flatten)]
    pub input: ChainlinkArgs,
    #[arg(long, group = "what", allow_hyphen_values = true)]
    pub section: Option<i64>,
    #[arg(long, group = "what")]
    pub all_sections: bool,
    /// Allow `2l > min(a)`, fitting with the vertex-denominator period.
    #[arg(long)]
    pub force: bool,
}

#[derive(Subcommand, Debug)]
pub enum ScanCommand {
    /// Circular fences with even length and total at most N.
    Unimodality {
        #[arg(long, default_value_t = 14)]
        max_total: usize,
        /// Emit the non-unimodal instances as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Fences of every composition with total at most N.
    Fence {
        #[arg(long, default_value_t = 12)]
        max_total: usize,
    },
    /// Chainlinks with `s <= max-len`, parts `<= max-part`, `1 <= 2l <= min`:
    /// transfer, lattice and ideal counts agree and are palindromic.
    Chainlink {
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 5)]
        max_part: usize,
    },
}

#[derive(Args, Debug)]
pub struct StructureArgs {
    #[command(flatten)]
    pub input: ChainlinkArgs,
    /// Second composition to compare incidence structure with.
    #[arg(long, value_parser = composition, requires = "against_link")]
    pub against: Option<Composition>,
    #[arg(long, requires = "against")]
    pub against_link: Option<usize>,
}

/// Runs one command. `args` excludes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("chainlink"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    if cli.float && format == Format::Json {
        return Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: "error: --float applies to table output only\n".into(),
        };
    }
    match commands::dispatch(&cli.command) {
        Ok(report) => {
            let stdout = match (&report.csv, format) {
                (Some(csv), _) => csv.clone(),
                (None, Format::Json) => {
                    let mut s =
                        serde_json::to_string_pretty(&report.value).expect("json values serialize");
                    s.push('\n');
                    s
                }
                (None, Format::Table) => render::table(&report.value, cli.float),
            };
            Outcome {
                code: if report.ok { EXIT_OK } else { EXIT_VIOLATION },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Every library operation with one invocation that reaches it. Arguments
/// starting with `@` name fixture files supplied by the tests.
pub const COVERAGE: &[(&str, &[&str])] = &[
    ("gaussian_binomial", &["qbinom", "--n", "5", "--k", "2"]),
    ("analyze_symmetry", &["rank-poly", "--fence", "1,2"]),
    ("analyze_modality", &["rank-poly", "--fence", "1,2"]),
    ("count_peaks", &["rank-poly", "--fence", "1,2"]),
    ("compositions_of", &["scan", "fence", "--max-total", "4"]),
    (
        "bounded_compositions",
        &["scan", "chainlink", "--max-len", "2", "--max-part", "3"],
    ),
    ("build_fence", &["rank-poly", "--fence", "1,2"]),
    (
        "build_circular_fence",
        &["points", "--order-polytope", "1,1"],
    ),
    (
        "build_chainlink_poset",
        &["scan", "chainlink", "--max-len", "2", "--max-part", "3"],
    ),
    (
        "stretched_composition",
        &["stretch", "--chainlink", "2,2", "--link", "1", "--k", "1"],
    ),
    (
        "build_stretched_chainlink",
        &[
            "rank-poly",
            "--chainlink",
            "2,2",
            "--link",
            "1",
            "--stretch",
            "1",
        ],
    ),
    (
        "rank_polynomial_bruteforce",
        &["rank-poly", "--fence", "1,2"],
    ),
    (
        "rank_polynomial_bruteforce_with_cap",
        &["rank-poly", "--poset", "@chain3", "--cap", "10"],
    ),
    (
        "rank_matrix_bruteforce",
        &["matrix", "--oriented", "@oriented"],
    ),
    (
        "rank_matrix_bruteforce_with_cap",
        &["matrix", "--oriented", "@oriented", "--cap", "10"],
    ),
    ("up_matrix", &["matrix", "--up"]),
    ("down_matrix", &["matrix", "--down"]),
    ("box_matrix", &["matrix", "--box", "2,1"]),
    (
        "chainlink_rank_polynomial",
        &["rank-poly", "--chainlink", "6,4,5", "--link", "2"],
    ),
    ("chainlink_rank_polynomial_with", &["repro"]),
    (
        "alternating_trace",
        &["rank-poly", "--alternating", "2,0,1,1"],
    ),
    (
        "circular_fence_rank_polynomial",
        &["rank-poly", "--circular-fence", "1,1,1,1"],
    ),
    (
        "verify_matrix_identities",
        &["identities", "--amax", "2", "--bmax", "2"],
    ),
    (
        "build_chainlink_hrep",
        &["points", "--chainlink", "2,2", "--link", "1"],
    ),
    (
        "build_order_polytope",
        &["points", "--order-polytope", "1,1", "--encoding", "order"],
    ),
    (
        "build_ideal_polytope",
        &["points", "--order-polytope", "1,1"],
    ),
    (
        "build_general_fence_polytope",
        &["points", "--general-fence", "2,1,1,2"],
    ),
    (
        "visit_lattice_points",
        &["points", "--chainlink", "2,2", "--link", "1"],
    ),
    (
        "enumerate_lattice_points",
        &["points", "--chainlink", "2,2", "--link", "1", "--list"],
    ),
    (
        "count_lattice_points",
        &[
            "points",
            "--chainlink",
            "2,2",
            "--link",
            "1",
            "--section",
            "1/2",
        ],
    ),
    (
        "lattice_counts_by_sum",
        &["points", "--chainlink", "2,2", "--link", "1"],
    ),
    (
        "lattice_generating_function",
        &["rank-poly", "--chainlink", "3,3", "--link", "2"],
    ),
    ("rank", &["vertices", "--chainlink", "2,2", "--link", "1"]),
    ("solve", &["vertices", "--chainlink", "2,2", "--link", "1"]),
    ("enumerate_vertices", &["vertices", "--polytope", "@square"]),
    (
        "vertex_candidates",
        &["vertices", "--chainlink", "2,2", "--link", "1"],
    ),
    (
        "chainlink_vertices",
        &["vertices", "--chainlink", "2,2", "--link", "1"],
    ),
    (
        "section_vertices",
        &[
            "vertices",
            "--chainlink",
            "2,2",
            "--link",
            "1",
            "--section",
            "2",
        ],
    ),
    (
        "trace_of_product",
        &["vertices", "--chainlink", "2,2", "--link", "1"],
    ),
    (
        "trace_power",
        &["vertices", "--chainlink", "5,5", "--link", "2"],
    ),
    (
        "vertex_count_trace",
        &["vertices", "--chainlink", "2,2", "--link", "1"],
    ),
    (
        "volume_trace",
        &[
            "volume",
            "--chainlink",
            "6,4,5",
            "--link",
            "2",
            "--method",
            "trace",
        ],
    ),
    (
        "cycle_edges",
        &[
            "volume",
            "--chainlink",
            "6,4,5",
            "--link",
            "2",
            "--method",
            "inclexcl",
        ],
    ),
    (
        "cycle_matchings",
        &[
            "volume",
            "--chainlink",
            "6,4,5",
            "--link",
            "2",
            "--method",
            "inclexcl",
        ],
    ),
    (
        "volume_inclusion_exclusion",
        &[
            "volume",
            "--chainlink",
            "6,4,5",
            "--link",
            "2",
            "--method",
            "inclexcl",
        ],
    ),
    (
        "combinatorial_structure",
        &["structure", "--chainlink", "5,5", "--link", "2"],
    ),
    (
        "same_incidence_structure",
        &[
            "structure",
            "--chainlink",
            "6,5,5",
            "--link",
            "2",
            "--against",
            "7,9,8",
            "--against-link",
            "3",
        ],
    ),
    (
        "count_dilated_section",
        &[
            "points",
            "--chainlink",
            "6,4,5",
            "--link",
            "3",
            "--section",
            "7",
        ],
    ),
    (
        "section_dimension",
        &[
            "ehrhart",
            "--chainlink",
            "2,2",
            "--link",
            "1",
            "--section",
            "2",
        ],
    ),
    (
        "section_vertex_period",
        &[
            "ehrhart",
            "--chainlink",
            "6,4,5",
            "--link",
            "3",
            "--section",
            "7",
            "--force",
        ],
    ),
    (
        "denominator_lcm",
        &[
            "ehrhart",
            "--chainlink",
            "6,4,5",
            "--link",
            "3",
            "--section",
            "7",
            "--force",
        ],
    ),
    (
        "fit_quasipolynomial",
        &["ehrhart", "--chainlink", "2,2", "--link", "1", "--full"],
    ),
    (
        "fit_section_quasipolynomial",
        &[
            "ehrhart",
            "--chainlink",
            "2,2",
            "--link",
            "1",
            "--section",
            "2",
        ],
    ),
    (
        "fit_section_quasipolynomial_forced",
        &[
            "ehrhart",
            "--chainlink",
            "6,4,5",
            "--link",
            "3",
            "--section",
            "7",
            "--force",
        ],
    ),
    (
        "fit_section_with",
        &[
            "symmetry",
            "--chainlink",
            "2,2",
            "--link",
            "1",
            "--section",
            "1",
        ],
    ),
    (
        "relative_volume",
        &[
            "volume",
            "--chainlink",
            "2,2",
            "--link",
            "1",
            "--method",
            "ehrhart",
        ],
    ),
    (
        "full_polytope_ehrhart",
        &["ehrhart", "--chainlink", "2,2", "--link", "1", "--full"],
    ),
    (
        "check_complementary_symmetry",
        &[
            "symmetry",
            "--chainlink",
            "2,2",
            "--link",
            "1",
            "--all-sections",
        ],
    ),
    (
        "chainlink_family",
        &["scan", "chainlink", "--max-len", "2", "--max-part", "3"],
    ),
    (
        "is_exception_pattern",
        &["scan", "unimodality", "--max-total", "6"],
    ),
    (
        "even_compositions",
        &["scan", "unimodality", "--max-total", "6"],
    ),
    (
        "unimodality_scan",
        &["scan", "unimodality", "--max-total", "6"],
    ),
    (
        "fence_unimodality_scan",
        &["scan", "fence", "--max-total", "4"],
    ),
    (
        "verify_rank_recurrence",
        &["recurrence", "--a", "2", "--b", "2", "--tail", "1"],
    ),
    (
        "stretch_analysis",
        &["stretch", "--chainlink", "2,2", "--link", "1", "--k", "2"],
    ),
];
