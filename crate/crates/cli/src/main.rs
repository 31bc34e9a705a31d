//! `bourbakikit`: compute and verify Bourbaki sequences of Koszul cycles
//! from the command line.
//!
//! Exit codes: 0 when every check passed, 1 when a verification failed
//! (the report is still written), 2 for usage and input errors.

use bourbakikit::algebra::Polynomial;
use bourbakikit::bourbaki::{
    bourbaki_number, check_bourbaki_map, check_presentation_criterion, e1_from_resolution,
    extract_bourbaki_ideal, generic_bourbaki_search, taylor_presentation, BourbakiCertificate,
    IdealGens, DEFAULT_ATTEMPTS, DEFAULT_SEED,
};
use bourbakikit::catalog::{self, CatalogBundle, DEFAULT_BUDGET};
use bourbakikit::combin::binomial;
use bourbakikit::koszul::{cycle_rank, differential, truncated_resolution};
use bourbakikit::linalg::PolyMatrix;
use bourbakikit::rees::{self, Classification, DEFAULT_TMAX};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "bourbakikit", version, about = "Bourbaki sequences of Koszul cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Koszul complex data.
    #[command(subcommand)]
    Koszul(KoszulCmd),
    /// Explicit Bourbaki sequences.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Torsion-free cokernel test for a map into a free module.
    CheckMap {
        #[arg(long)]
        matrix: PathBuf,
        /// Minor size; defaults to the number of columns.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Test the minors of a presentation matrix.
    CheckPresentation {
        #[arg(long)]
        matrix: PathBuf,
        /// Rank of the presented module.
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Number of generators; defaults to the number of rows.
        #[arg(long)]
        beta0: Option<usize>,
    },
    /// Recover the Bourbaki ideal from a presentation matrix, or from
    /// monomial generators through their pairwise syzygies.
    ExtractIdeal {
        #[arg(long, conflicts_with = "gens", required_unless_present = "gens")]
        matrix: Option<PathBuf>,
        #[arg(long)]
        gens: Option<PathBuf>,
    },
    /// Bourbaki number of Z_i, or `k(r-1) - e1` from explicit values.
    BourbakiNumber {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, conflicts_with_all = ["n", "i"], requires_all = ["r", "e1"])]
        k: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        e1: Option<i64>,
    },
    /// Numerical obstruction to multigraded Bourbaki sequences of Z_i.
    Obstruction {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// Random integral Bourbaki maps for Z_i (or a given matrix).
    SearchGeneric {
        #[arg(long, required_unless_present = "matrix")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "matrix")]
        i: Option<usize>,
        #[arg(long, conflicts_with_all = ["n", "i"], requires = "rank")]
        matrix: Option<PathBuf>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
        attempts: usize,
    },
    /// Exhaustive search over canonical-basis submodules of K_i.
    SearchMultigraded {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Test every subset, without the face-count pruning.
        #[arg(long)]
        no_pruning: bool,
    },
    /// The Rees algebra of the Z_(n-2) Bourbaki ideal.
    #[command(subcommand)]
    Rees(ReesCmd),
}

#[derive(Subcommand, Debug)]
enum KoszulCmd {
    /// Matrix of the differential K_i -> K_(i-1).
    Diff {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Z_(n-1) with ideal (x_i, x_j).
    Ztop {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Z_(n-2) with the circular squarefree monomials.
    Zn2 {
        #[arg(long)]
        n: usize,
    },
    /// Z_2 with F spanned by e_(i,i+1) - e_(i+1,i+2).
    Z2 {
        #[arg(long)]
        n: usize,
    },
    /// n = 6, Z_3 with nine basis differences.
    N6z3,
    /// n = 6, Z_3 with nine basis elements; the certificate must fail.
    N6z3Bad,
}

#[derive(Args, Debug, Clone, Copy)]
struct Bounds {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_TMAX)]
    tmax: i64,
    /// Bound on the x-coordinates; defaults to n * tmax.
    #[arg(long = "box")]
    bx: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum ReesCmd {
    /// Every bounded cone point decomposes over the generators.
    Normality(Bounds),
    /// Minimal interior points and the Gorenstein/type-two classification.
    Canonical(Bounds),
    /// Every interior point reduces by F_1 (or F_2 for odd n).
    Reduction(Bounds),
}

/// A computed report: its JSON form, its text form and whether every check passed.
struct Outcome {
    value: Value,
    text: String,
    ok: bool,
}

/// `{"n": 3, "gens": ["x1*x2", "x2*x3"]}`; structured polynomials are accepted too.
#[derive(serde::Deserialize)]
struct GensInput {
    n: usize,
    gens: Vec<GenEntry>,
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum GenEntry {
    Poly(Polynomial),
    Text(String),
}

impl GensInput {
    fn polynomials(self) -> CliResult<Vec<Polynomial>> {
        let n = self.n;
        self.gens
            .into_iter()
            .map(|g| match g {
                GenEntry::Poly(p) if p.nvars() == n => Ok(p),
                GenEntry::Poly(p) => Err(InputError(format!(
                    "generator in {} variables, expected {n}",
                    p.nvars()
                ))),
                GenEntry::Text(t) => Ok(Polynomial::parse(n, &t)?),
            })
            .collect()
    }
}

#[derive(Debug)]
struct InputError(String);

impl From<bourbakikit::Error> for InputError {
    fn from(e: bourbakikit::Error) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn certificate_text(c: &BourbakiCertificate) -> String {
    format!(
        "verdict: {}\ncode: {}\nminor size: {}\ngcd of minors: {}\nmatrix: {}x{} ({})\n",
        c.verdict,
        c.code,
        c.minor_size,
        c.gcd_witness,
        c.matrix_used.rows(),
        c.matrix_used.cols(),
        c.matrix_used.fingerprint()
    )
}

fn ideal_text(g: &IdealGens) -> String {
    let mut s = String::new();
    for p in &g.gens {
        let _ = writeln!(s, "  {p}");
    }
    s
}

fn bundle_outcome(b: &CatalogBundle) -> Outcome {
    let mut text = format!("{} (n = {}, i = {})\nF generators:", b.name, b.n, b.i);
    for g in &b.generators {
        let _ = write!(text, " {g}");
    }
    text.push('\n');
    text += &certificate_text(&b.certificate);
    let _ = writeln!(text, "divisor: {}", b.extraction.divisor);
    if let Some(m) = b.ideal.twist {
        let _ = writeln!(text, "twist: {m}");
    }
    let _ = writeln!(text, "ideal:\n{}", ideal_text(&b.ideal).trim_end());
    if let Some(ok) = b.ideal_matches() {
        let _ = writeln!(text, "matches expected ideal: {ok}");
    }
    if let Some(ok) = b.divisor_matches() {
        let _ = writeln!(text, "matches expected divisor: {ok}");
    }
    if let Some(w) = &b.witness {
        let _ = writeln!(text, "block minor: {}", w.value);
    }
    let mut value = to_value(b);
    value["ideal_matches"] = json!(b.ideal_matches());
    value["divisor_matches"] = json!(b.divisor_matches());
    Outcome { value, text, ok: b.all_checks_pass() }
}

fn run_catalog(cmd: &CatalogCmd) -> CliResult<Outcome> {
    Ok(match *cmd {
        CatalogCmd::Ztop { n, i, j } => bundle_outcome(&catalog::z_top(n, i, j)?),
        CatalogCmd::Zn2 { n } => bundle_outcome(&catalog::z_nminus2(n)?),
        CatalogCmd::Z2 { n } => {
            let b = catalog::z2(n)?;
            let mut o = bundle_outcome(&b);
            let degree_ok = catalog::z2_degree_check(n)?;
            let _ = writeln!(o.text, "a: {}\ngenerated in degree n-2: {degree_ok}", catalog::z2_divisor(n));
            o.value["a"] = to_value(&catalog::z2_divisor(n));
            o.value["degree_check"] = json!(degree_ok);
            o.ok &= degree_ok;
            o
        }
        CatalogCmd::N6z3 => {
            let b = catalog::n6_z3_explicit()?;
            let mut o = bundle_outcome(&b);
            let ct = b.extraction.submatrix.transpose();
            let want = catalog::n6_z3_displayed_ct();
            let display_ok = (0..want.rows()).all(|r| ct.row(r) == want.row(r));
            let _ = writeln!(o.text, "C^T matches the displayed matrix: {display_ok}");
            o.value["display_matches"] = json!(display_ok);
            o.ok &= display_ok;
            o
        }
        CatalogCmd::N6z3Bad => {
            let c = catalog::n6_z3_bad_configuration()?;
            let factor = Polynomial::parse(6, "x2*x4*x6")?;
            let divisible = c.gcd_witness.div_exact(&factor).is_ok();
            let mut text = certificate_text(&c);
            let _ = writeln!(text, "gcd divisible by x2*x4*x6: {divisible}");
            let mut value = to_value(&c);
            value["divisible_by_x2x4x6"] = json!(divisible);
            Outcome { value, text, ok: !c.verdict && divisible }
        }
    })
}

fn run_rees(cmd: &ReesCmd) -> CliResult<Outcome> {
    let bounds = match cmd {
        ReesCmd::Normality(b) | ReesCmd::Canonical(b) | ReesCmd::Reduction(b) => *b,
    };
    let bx = bounds.bx.unwrap_or_else(|| rees::default_box_for(bounds.n, bounds.tmax));
    let head = format!("n = {}, t_max = {}, box = {bx}\n", bounds.n, bounds.tmax);
    Ok(match cmd {
        ReesCmd::Normality(_) => {
            let r = rees::normality_check(bounds.n, bounds.tmax, bx)?;
            let mut text = head;
            let _ = writeln!(
                text,
                "enumerated: {}\noutside: {}\nboundary: {}\ninterior: {}\ndecomposed: {}\n\
                 cone points without decomposition: {}\ndecomposable points outside the cone: {}",
                r.enumerated,
                r.outside,
                r.boundary,
                r.interior,
                r.decomposed,
                r.counterexample_count,
                r.semigroup_outside_count
            );
            for v in r.counterexamples.iter().chain(&r.semigroup_outside) {
                let _ = writeln!(text, "  {v}");
            }
            Outcome { value: to_value(&r), text, ok: r.passed() }
        }
        ReesCmd::Canonical(_) => {
            let r = rees::canonical_generators(bounds.n, bounds.tmax, bx)?;
            let mut text = head;
            let _ = writeln!(text, "interior points: {}\ngenerators:", r.interior_points);
            for g in &r.generators {
                let _ = writeln!(text, "  {g}");
            }
            let class = match r.classification {
                Classification::Gorenstein => "gorenstein",
                Classification::TypeTwo => "type two",
                Classification::Inconclusive => "inconclusive",
            };
            let _ = writeln!(text, "classification: {class}");
            let expected = if bounds.n % 2 == 0 {
                Classification::Gorenstein
            } else {
                Classification::TypeTwo
            };
            let ok = r.pairwise_incomparable
                && (r.classification == expected || r.classification == Classification::Inconclusive);
            Outcome { value: to_value(&r), text, ok }
        }
        ReesCmd::Reduction(_) => {
            let r = rees::interior_reduction_check(bounds.n, bounds.tmax, bx)?;
            let mut text = head;
            let _ = writeln!(
                text,
                "interior points: {}\nreduced by F1: {}\nreduced by F2: {}\nviolations: {}",
                r.interior_checked, r.via_f1, r.via_f2, r.violation_count
            );
            for v in &r.violations {
                let _ = writeln!(text, "  {v}");
            }
            Outcome { value: to_value(&r), text, ok: r.passed() }
        }
    })
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Koszul(KoszulCmd::Diff { n, i }) => {
            let d = differential(*n, *i)?;
            Ok(Outcome {
                text: format!("d_{i}: K_{i} -> K_{} (n = {n})\n{}", i - 1, d.matrix),
                value: to_value(&d.matrix),
                ok: true,
            })
        }
        Command::Catalog(c) => run_catalog(c),
        Command::CheckMap { matrix, s } => {
            let m: PolyMatrix = read_json(matrix)?;
            let c = check_bourbaki_map(&m, s.unwrap_or(m.cols()))?;
            Ok(Outcome { text: certificate_text(&c), value: to_value(&c), ok: c.verdict })
        }
        Command::CheckPresentation { matrix, rank, beta0 } => {
            let m: PolyMatrix = read_json(matrix)?;
            let c = check_presentation_criterion(&m, beta0.unwrap_or(m.rows()), *rank)?;
            Ok(Outcome { text: certificate_text(&c), value: to_value(&c), ok: c.verdict })
        }
        Command::ExtractIdeal { matrix, gens } => {
            let b: PolyMatrix = match (matrix, gens) {
                (Some(path), _) => read_json(path)?,
                (None, Some(path)) => {
                    let g: GensInput = read_json(path)?;
                    taylor_presentation(&g.polynomials()?)?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let e = extract_bourbaki_ideal(&b)?;
            let cols: Vec<String> = e.columns.iter().map(|c| c.to_string()).collect();
            let text = format!(
                "columns: {}\ndivisor: {}\nideal:\n{}",
                cols.join(" "),
                e.divisor,
                ideal_text(&e.ideal)
            );
            Ok(Outcome { value: to_value(&e), text, ok: true })
        }
        Command::BourbakiNumber { n, i, k, r, e1 } => {
            if let (Some(k), Some(r), Some(e1)) = (k, r, e1) {
                if *r < 1 {
                    return Err(InputError("rank must be positive".into()));
                }
                let m = bourbaki_number(*k, *r, *e1);
                return Ok(Outcome {
                    value: json!({ "k": k, "r": r, "e1": e1, "m": m }),
                    text: format!("m = {k}*({r} - 1) - {e1} = {m}\n"),
                    ok: true,
                });
            }
            let (Some(n), Some(i)) = (n, i) else {
                return Err(InputError("give --n and --i, or --k, --r and --e1".into()));
            };
            let (n, i) = (*n, *i);
            if i < 1 || i > n {
                return Err(InputError(format!("need 1 <= i <= n, got i = {i}, n = {n}")));
            }
            let res = truncated_resolution(n, i)?;
            let e1 = e1_from_resolution(&res);
            let r = cycle_rank(n, i) as i64;
            let m = bourbaki_number(i as i64, r, e1);
            let (ni, ii) = (n as i64, i as i64);
            let closed = ii * r - ni * binomial(ni - 2, ii - 2) as i64 - ii;
            let ok = m == closed;
            Ok(Outcome {
                value: json!({ "n": n, "i": i, "k": i, "r": r, "e1": e1, "m": m, "closed_form": closed }),
                text: format!(
                    "Z_{i}, n = {n}: k = {i}, r = {r}, e1 = {e1}\nm = {m}\nclosed form: {closed}\n"
                ),
                ok,
            })
        }
        Command::Obstruction { n, i } => {
            let holds = catalog::multigraded_obstruction(*n, *i)?;
            let verdict = if holds { "not excluded" } else { "excluded" };
            Ok(Outcome {
                value: json!({ "n": n, "i": i, "inequality_holds": holds, "verdict": verdict }),
                text: format!("n = {n}, i = {i}: multigraded Bourbaki sequences {verdict}\n"),
                ok: true,
            })
        }
        Command::SearchGeneric { n, i, matrix, rank, seed, attempts } => {
            let (a, r) = match (matrix, n, i) {
                (Some(path), _, _) => {
                    let a: PolyMatrix = read_json(path)?;
                    (a, rank.expect("clap requires --rank"))
                }
                (None, Some(n), Some(i)) => {
                    if *i < 1 || *i > *n {
                        return Err(InputError(format!("need 1 <= i <= n, got i = {i}, n = {n}")));
                    }
                    (differential(*n, *i)?.matrix, cycle_rank(*n, *i) as usize)
                }
                _ => return Err(InputError("give --n and --i, or --matrix and --rank".into())),
            };
            let rep = generic_bourbaki_search(&a, a.cols(), r, *seed, *attempts)?;
            let mut text = format!(
                "seed: {seed}\nsuccess: {}\nattempts: {}\n",
                rep.success, rep.attempts
            );
            if let Some(c) = &rep.certificate {
                text += &certificate_text(c);
            }
            Ok(Outcome { value: to_value(&rep), text, ok: rep.success })
        }
        Command::SearchMultigraded { n, i, budget, no_pruning } => {
            let r = catalog::multigraded_search_with(*n, *i, *budget, !no_pruning)?;
            let mut text = format!(
                "n = {n}, i = {i}, subsets of size {} from {} basis elements\n\
                 total: {}\npassing: {}\nfailing: {}\npruned: {}\nunexplored: {}\ncomplete: {}\n\
                 numerical bound holds: {}\n",
                r.subset_size,
                r.basis_size,
                r.total,
                r.passing,
                r.failing,
                r.pruned,
                r.unexplored,
                r.complete,
                r.bound_holds
            );
            for ex in &r.examples {
                let names: Vec<String> = ex.iter().map(|w| w.to_string()).collect();
                let _ = writeln!(text, "  {}", names.join(" "));
            }
            // A passing subset where none can exist contradicts the known results.
            let contradiction = r.passing > 0 && (!r.bound_holds || (*n, *i) == (6, 3));
            Ok(Outcome { value: to_value(&r), text, ok: !contradiction })
        }
        Command::Rees(c) => run_rees(c),
    }
}

fn configure_threads() -> Result<(), InputError> {
    if let Ok(v) = std::env::var("BOURBAKIKIT_THREADS") {
        let k: usize = v
            .parse()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| InputError(format!("BOURBAKIKIT_THREADS={v} is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| InputError(e.to_string()))?;
    }
    Ok(())
}

fn emit(cli: &Cli, o: &Outcome) -> std::io::Result<()> {
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&o.value).expect("json");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = o.text.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    };
    match &cli.out {
        Some(p) => std::fs::write(p, body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(body.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(InputError(e)) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(o) => {
            if let Err(e) = emit(&cli, &o) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
