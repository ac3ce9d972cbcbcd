//! `coxalt`: mod-p cohomology checks for alternating subgroups of Coxeter
//! groups.
//!
//! Exit codes: 0 success, 1 assertion failure, 2 hypothesis refusal,
//! 3 resource cap, 4 input error.

mod config;
mod records;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coxalt_core::cohomology::{
    alternating_presentation, cohomology_cocycle, cohomology_cyclic_sylow, h1_from_presentation, ss_bottom_row,
    verify_main_theorem, verify_sign_split, verify_twisted_theorem, CocycleConfig, DegreeRecord, Limits, Method,
    Status, DEFAULT_MEMORY_BUDGET,
};
use coxalt_core::complex::{build_coxeter_complex, CoxeterComplex, DEFAULT_SIMPLEX_CAP};
use coxalt_core::coxeter::{check_odd_prime, parse_graph, scan_low_rank_p_torsion, CoxeterMatrix};
use coxalt_core::group::{
    alternating_subgroup, enumerate_group_cached, Character, CosetCache, GroupRealization, SubgroupHandle,
    DEFAULT_GROUP_CAP,
};
use coxalt_core::linalg::{cochain_complex, invariant_cochain_complex, BettiProfile};
use coxalt_core::report::{catalog_lines, render, Format};
use coxalt_core::suite::run_all;
use coxalt_core::Error;

use config::{FileConfig, CACHE_ENV};
use records::{tuple, BottomRowRecord, ComplexRecord, FailureRecord};

const EXIT_ASSERTION: u8 = 1;
const EXIT_REFUSAL: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "coxalt", version, about = "Mod-p cohomology checks for alternating subgroups of Coxeter groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Odd prime; repeat for several.
    #[arg(long = "p", global = true, value_name = "PRIME")]
    primes: Vec<u64>,
    /// Degree bound for direct cohomology computations.
    #[arg(long, global = true)]
    kmax: Option<usize>,
    /// Report format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Coset-table cache directory (also COXALT_CACHE_DIR).
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    /// Group element cap for coset enumeration.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Memory budget in bytes for the cocycle method.
    #[arg(long, global = true)]
    mem: Option<u64>,
    /// key=value configuration file; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Md,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Md => Format::Markdown,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GroupArg {
    /// The alternating subgroup A_W.
    Alt,
    /// W itself.
    Whole,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Auto,
    Cocycle,
    CyclicSylow,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the table of finite irreducible types with orders and p-freeness rules.
    Catalog,
    /// Check vanishing of H^k(A_W, F_p) below degree p-2.
    Verify {
        graph: String,
        /// Also check H^k(W, F_p[-1]).
        #[arg(long)]
        twisted: bool,
        /// Only H^1 from the presentation of A_W (works for infinite W).
        #[arg(long)]
        h1: bool,
        /// Also check the sign-split identity up to --kmax (default 2).
        #[arg(long)]
        sign_split: bool,
    },
    /// Compute H^k(H, F_p[χ]) for k ≤ --kmax.
    Cohomology {
        graph: String,
        #[arg(long, value_enum, default_value = "alt")]
        group: GroupArg,
        /// Use the sign character as coefficients.
        #[arg(long)]
        sign: bool,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Betti profile of the Coxeter complex.
    Complex {
        graph: String,
        /// Also the orbit space under A_W.
        #[arg(long)]
        orbit: bool,
    },
    /// Compare the spectral sequence bottom row with the orbit-space cohomology.
    SsCheck { graph: String },
    /// Check that p-free low-rank types have no p-torsion.
    Scan,
    /// Run the full acceptance suite.
    VerifyAll,
    /// Write the Coxeter complex as "dim v0 v1 ..." lines.
    ExportComplex {
        graph: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Write a coboundary matrix as "p rows cols" then "row col value" lines.
    DumpMatrix {
        graph: String,
        /// Coboundary from degree k to k+1.
        #[arg(long)]
        degree: usize,
        /// The invariant cochain complex of A_W instead of the full one.
        #[arg(long)]
        orbit: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// Effective settings after merging flags, environment and config file.
#[derive(Clone, Debug)]
struct RunConfig {
    primes: Vec<u64>,
    kmax: Option<usize>,
    format: Format,
    cache: Option<CosetCache>,
    cap: usize,
    mem: u64,
}

impl RunConfig {
    fn resolve(args: &GlobalArgs) -> Result<Self, Failure> {
        let file = match &args.config {
            Some(path) => FileConfig::load(path).map_err(Failure::input)?,
            None => FileConfig::default(),
        };
        let primes = if args.primes.is_empty() { file.primes } else { args.primes.clone() };
        for &p in &primes {
            check_odd_prime(p).map_err(Failure::from)?;
        }
        let cache_dir = args
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .or(file.cache_dir);
        let cap = args.cap.or(file.cap).unwrap_or(DEFAULT_GROUP_CAP);
        let mem = args.mem.or(file.mem).unwrap_or(DEFAULT_MEMORY_BUDGET);
        if cap == 0 || mem == 0 {
            return Err(Failure::input("--cap and --mem must be positive"));
        }
        Ok(RunConfig {
            primes,
            kmax: args.kmax.or(file.kmax),
            format: args.format.map(Format::from).or(file.format).unwrap_or_default(),
            cache: cache_dir.map(CosetCache::new),
            cap,
            mem,
        })
    }

    fn limits(&self) -> Limits {
        Limits {
            group_cap: self.cap,
            cocycle: CocycleConfig {
                cap: None,
                memory_budget: self.mem,
            },
            cache: self.cache.clone(),
        }
    }

    fn primes_or(&self, default: &[u64]) -> Vec<u64> {
        if self.primes.is_empty() {
            default.to_vec()
        } else {
            self.primes.clone()
        }
    }

    fn require_primes(&self) -> Result<Vec<u64>, Failure> {
        if self.primes.is_empty() {
            Err(Failure::input("at least one --p is required"))
        } else {
            Ok(self.primes.clone())
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind: "input-error",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::HypothesisViolated(_) | Error::NotCyclicSylow { .. } => (EXIT_REFUSAL, "hypothesis-violated"),
            Error::CapExceeded { .. } | Error::MemoryBudget { .. } => (EXIT_RESOURCE, "resource-cap"),
            Error::Integrity(_) => (EXIT_ASSERTION, "assertion-failure"),
            _ => (EXIT_INPUT, "input-error"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

/// Report text plus the exit code it implies.
struct Outcome {
    text: String,
    code: u8,
    notes: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: 0,
            notes: Vec::new(),
        }
    }
}

fn parse(graph: &str) -> Result<CoxeterMatrix, Failure> {
    let m = parse_graph(graph)?;
    m.validate().map_err(Error::InvalidMatrix)?;
    Ok(m)
}

fn require_finite(m: &CoxeterMatrix) -> Result<(), Failure> {
    if m.order().is_finite() {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(format!("{} is not of finite type", m.type_name())).into())
    }
}

fn realize(m: &CoxeterMatrix, cfg: &RunConfig) -> Result<Arc<GroupRealization>, Failure> {
    require_finite(m)?;
    Ok(Arc::new(enumerate_group_cached(m, cfg.cap, cfg.cache.as_ref())?))
}

fn complex_of(g: &GroupRealization, cfg: &RunConfig) -> Result<CoxeterComplex, Failure> {
    Ok(build_coxeter_complex(g, DEFAULT_SIMPLEX_CAP, cfg.cache.as_ref())?)
}

fn degree_code(records: &[DegreeRecord]) -> u8 {
    if records.iter().any(|r| r.status == Status::Fail) {
        EXIT_ASSERTION
    } else if records.iter().any(|r| r.status == Status::Unverified) {
        EXIT_RESOURCE
    } else {
        0
    }
}

fn cmd_catalog(cfg: &RunConfig) -> Outcome {
    Outcome::ok(render(&catalog_lines(8, 12), cfg.format))
}

fn cmd_verify(graph: &str, twisted: bool, h1: bool, sign_split: bool, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let m = parse(graph)?;
    let name = m.type_name();
    let mut records = Vec::new();
    let mut notes = Vec::new();
    if h1 {
        let pres = alternating_presentation(&m, 0)?;
        notes.push(format!("presentation of A[{name}]: {pres}"));
        for p in cfg.primes_or(&[3, 5, 7]) {
            records.push(DegreeRecord {
                group: format!("A[{name}]"),
                p,
                character: "trivial".into(),
                degree: 1,
                dim: Some(h1_from_presentation(&pres, p)?),
                method: Method::PresentationH1,
                status: Status::Info,
            });
        }
    } else {
        let limits = cfg.limits();
        for p in cfg.require_primes()? {
            let r = verify_main_theorem(&m, p, &limits)?;
            notes.push(format!("{} p={p}: {}", r.group, r.note));
            records.extend(r.records);
            if twisted {
                let r = verify_twisted_theorem(&m, p, &limits)?;
                notes.push(format!("{} sign p={p}: {}", r.group, r.note));
                records.extend(r.records);
            }
            if sign_split {
                let r = verify_sign_split(&m, p, cfg.kmax.unwrap_or(2), &limits)?;
                records.extend(r.records());
            }
        }
    }
    Ok(Outcome {
        code: degree_code(&records),
        text: render(&records, cfg.format),
        notes,
    })
}

fn cmd_cohomology(graph: &str, group: GroupArg, sign: bool, method: MethodArg, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let m = parse(graph)?;
    let g = realize(&m, cfg)?;
    let (h, label) = match group {
        GroupArg::Alt => (alternating_subgroup(&g), format!("A[{}]", m.type_name())),
        GroupArg::Whole => (SubgroupHandle::whole(&g), format!("W[{}]", m.type_name())),
    };
    let chi = sign.then(|| Character::sign(m.rank()));
    let kmax = cfg.kmax.unwrap_or(2);
    let cocycle = CocycleConfig {
        cap: None,
        memory_budget: cfg.mem,
    };
    let mut records = Vec::new();
    for p in cfg.require_primes()? {
        let result = match method {
            MethodArg::Cocycle => cohomology_cocycle(&h, p, chi.as_ref(), kmax, &cocycle)?,
            MethodArg::CyclicSylow => cohomology_cyclic_sylow(&h, p, chi.as_ref(), kmax)?,
            MethodArg::Auto => match cohomology_cyclic_sylow(&h, p, chi.as_ref(), kmax) {
                Err(Error::NotCyclicSylow { .. }) => cohomology_cocycle(&h, p, chi.as_ref(), kmax, &cocycle)?,
                other => other?,
            },
        };
        for (k, &d) in result.dims.iter().enumerate() {
            records.push(DegreeRecord {
                group: label.clone(),
                p,
                character: result.character.clone(),
                degree: k,
                dim: Some(d),
                method: result.method,
                status: Status::Info,
            });
        }
    }
    Ok(Outcome::ok(render(&records, cfg.format)))
}

fn sphere_label(b: &BettiProfile, dim: usize) -> String {
    if *b == BettiProfile::sphere(dim) {
        format!("S^{dim}")
    } else {
        "not a sphere".into()
    }
}

fn cmd_complex(graph: &str, orbit: bool, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let m = parse(graph)?;
    let g = realize(&m, cfg)?;
    let x = complex_of(&g, cfg)?;
    let name = m.type_name();
    let dim = x.dimension();
    let expected = BettiProfile::sphere(dim);
    let mut records = Vec::new();
    let mut notes = Vec::new();
    for p in cfg.primes_or(&[3]) {
        let c = cochain_complex(&x, p)?;
        let b = c.betti();
        notes.push(format!("X[{name}] p={p}: {}", sphere_label(&b, dim)));
        records.push(ComplexRecord {
            complex: format!("X[{name}]"),
            p,
            cells: tuple(c.dims()),
            betti: b.to_string(),
            expected: expected.to_string(),
            sphere: b == expected,
        });
        if orbit {
            let alt = alternating_subgroup(&g);
            let c = invariant_cochain_complex(&x, &g, &alt, p, None)?;
            let b = c.betti();
            notes.push(format!("X[{name}]/A p={p}: {}", sphere_label(&b, dim)));
            records.push(ComplexRecord {
                complex: format!("X[{name}]/A"),
                p,
                cells: tuple(c.dims()),
                betti: b.to_string(),
                expected: expected.to_string(),
                sphere: b == expected,
            });
        }
    }
    let code = if records.iter().all(|r| r.sphere) { 0 } else { EXIT_ASSERTION };
    Ok(Outcome {
        text: render(&records, cfg.format),
        code,
        notes,
    })
}

fn cmd_ss_check(graph: &str, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let m = parse(graph)?;
    let g = realize(&m, cfg)?;
    let x = complex_of(&g, cfg)?;
    let alt = alternating_subgroup(&g);
    let mut records = Vec::new();
    for p in cfg.require_primes()? {
        let r = ss_bottom_row(&x, &g, &alt, p)?;
        records.push(BottomRowRecord {
            group: format!("E2[{}]", m.type_name()),
            p,
            e1: tuple(&r.e1_dims),
            e2: r.e2_dims.to_string(),
            invariant: r.invariant_betti.to_string(),
            matches: r.matches(),
        });
    }
    let code = if records.iter().all(|r| r.matches) { 0 } else { EXIT_ASSERTION };
    Ok(Outcome {
        text: render(&records, cfg.format),
        code,
        notes: Vec::new(),
    })
}

fn cmd_scan(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let mut entries = Vec::new();
    let mut holds = true;
    for p in cfg.primes_or(&[5, 7, 11]) {
        let r = scan_low_rank_p_torsion(p)?;
        holds &= r.holds;
        entries.extend(r.entries.into_iter().map(|e| (p, e)));
    }
    let rows: Vec<_> = entries.into_iter().map(|(p, entry)| coxalt_core::report::ScanLine { p, entry }).collect();
    Ok(Outcome {
        text: render(&rows, cfg.format),
        code: if holds { 0 } else { EXIT_ASSERTION },
        notes: Vec::new(),
    })
}

fn cmd_verify_all(cfg: &RunConfig) -> Outcome {
    let outcomes = run_all();
    let notes = outcomes.iter().map(ToString::to_string).collect();
    Outcome {
        code: if outcomes.iter().all(|o| o.passed) { 0 } else { EXIT_ASSERTION },
        text: render(&outcomes, cfg.format),
        notes,
    }
}

fn write_output(text: String, out: Option<&PathBuf>) -> Result<Outcome, Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn cmd_export(graph: &str, out: Option<&PathBuf>, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let m = parse(graph)?;
    let g = realize(&m, cfg)?;
    let x = complex_of(&g, cfg)?;
    write_output(x.to_export_text(), out)
}

fn cmd_dump(graph: &str, degree: usize, orbit: bool, out: Option<&PathBuf>, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let m = parse(graph)?;
    let g = realize(&m, cfg)?;
    let x = complex_of(&g, cfg)?;
    let p = match cfg.primes_or(&[3]).as_slice() {
        [p] => *p,
        _ => return Err(Failure::input("dump-matrix takes a single --p")),
    };
    let c = if orbit {
        invariant_cochain_complex(&x, &g, &alternating_subgroup(&g), p, None)?
    } else {
        cochain_complex(&x, p)?
    };
    let d = c.differential(degree).ok_or_else(|| {
        Failure::input(format!(
            "no coboundary from degree {degree}; the complex has {} of them",
            c.differentials().len()
        ))
    })?;
    write_output(d.to_dump(), out)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let cfg = RunConfig::resolve(&cli.global)?;
    match &cli.command {
        Command::Catalog => Ok(cmd_catalog(&cfg)),
        Command::Verify {
            graph,
            twisted,
            h1,
            sign_split,
        } => cmd_verify(graph, *twisted, *h1, *sign_split, &cfg),
        Command::Cohomology {
            graph,
            group,
            sign,
            method,
        } => cmd_cohomology(graph, *group, *sign, *method, &cfg),
        Command::Complex { graph, orbit } => cmd_complex(graph, *orbit, &cfg),
        Command::SsCheck { graph } => cmd_ss_check(graph, &cfg),
        Command::Scan => cmd_scan(&cfg),
        Command::VerifyAll => Ok(cmd_verify_all(&cfg)),
        Command::ExportComplex { graph, out } => cmd_export(graph, out.as_ref(), &cfg),
        Command::DumpMatrix {
            graph,
            degree,
            orbit,
            out,
        } => cmd_dump(graph, *degree, *orbit, out.as_ref(), &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT),
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
            let _ = stdout.flush();
            let mut stderr = std::io::stderr().lock();
            for note in &outcome.notes {
                let _ = writeln!(stderr, "note: {note}");
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            let record = FailureRecord {
                error: f.kind,
                exit_code: i32::from(f.code),
                message: f.message,
            };
            eprintln!("{}", serde_json::to_string(&record).expect("record serializes"));
            ExitCode::from(f.code)
        }
    }
}
