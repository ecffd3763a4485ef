//! Command-line front end: parses arguments, calls the library, renders
//! either human-readable text or versioned JSON.
//!
//! Exit codes: 0 = computed (whatever the verdict), 1 = usage error,
//! 2 = internal invariant violation (a failing self-check grid, a
//! crosscheck violation, or an inconsistency inside a criterion).

use crate::containment::{self, ContainmentError};
use crate::oracle::{self, OracleError};
use crate::reduction::{self, ChainOutcome};
use crate::search;
use crate::seq::{IntSequence, MultiplicitySequence};
use crate::speciality::{self, OrderStrategy};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::io::Write;

pub const SCHEMA_VERSION: u32 = 1;

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_INVARIANT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "fatpoints",
    version,
    about = "Certificates for planar fat-point linear systems: reduction proofs, containment criteria, finite-field oracle",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit machine-readable JSON (schema_version included)
    #[arg(long, global = true)]
    json: bool,

    /// Master seed for all sampling (env: FATPOINTS_SEED)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Working prime for the oracle (env: FATPOINTS_PRIME)
    #[arg(long, global = true)]
    prime: Option<u64>,

    /// Worker threads for scans and grids (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a chain of reductions to a sequence and print the trace
    Reduce {
        /// Input sequence, e.g. 1..10 or 5,5,3,1
        #[arg(long)]
        seq: String,
        /// Reduction parameters in order, e.g. 4,4,4,3,3,3,3
        #[arg(long)]
        ms: String,
    },
    /// Prove h1-regularity of L(d; m1,...,ms) by a reduction chain
    Prove {
        #[arg(long)]
        d: u64,
        /// Multiplicities; compressed a^b and ranges accepted
        #[arg(long)]
        mults: String,
        /// as-given | descending | kryterium | backtrack=<n>
        #[arg(long, default_value = "as-given")]
        order: String,
    },
    /// Closed-form non-speciality criterion at a fixed degree
    Criterion {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        mults: String,
    },
    /// Decide the symbolic-power containment for all r at once
    Containment {
        #[arg(long)]
        mults: String,
        /// Print the full transcript of every comparison
        #[arg(long)]
        explain: bool,
    },
    /// Finite-field interpolation oracle
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Scan two-block families (a^p, b^q) for degree-search failures
    Scan {
        /// Ranges, e.g. "a=2..130,p=9..12,b=1..12,q=80..224"
        #[arg(long)]
        family: String,
        /// Cell cap (default 200000)
        #[arg(long)]
        cap: Option<u128>,
        /// Override the cell cap
        #[arg(long)]
        force: bool,
    },
    /// Verify one finite-case grid exhaustively
    #[command(name = "verify-lemma")]
    VerifyLemma {
        /// drugie | hopefullylast | comb1 | nowa2
        #[arg(long)]
        name: String,
        /// Range overrides, e.g. "m0=2..6,s=8..33" or "x=4..33,s=9..16"
        #[arg(long)]
        grid: Option<String>,
    },
    /// Run the built-in finite-case grids
    Selftest {
        /// Run the finite-case grids (the default and only suite)
        #[arg(long)]
        finite_cases: bool,
    },
    /// Audit every prover verdict against the oracle over a grid
    Crosscheck {
        #[arg(long)]
        dmax: u64,
        #[arg(long)]
        smax: usize,
        #[arg(long)]
        mmax: u64,
        #[arg(long)]
        trials: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Observed dimension of L(d; mults) at random configurations
    Dim {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        mults: String,
        #[arg(long)]
        trials: Option<u32>,
    },
    /// Initial-degree scan of the scale-fold symbolic power
    Alpha {
        #[arg(long)]
        mults: String,
        #[arg(long)]
        scale: u64,
        #[arg(long)]
        trials: Option<u32>,
    },
    /// Degree-by-degree containment evidence at one configuration
    Containment {
        #[arg(long)]
        mults: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        tmax: Option<u64>,
    },
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema_version: u32,
    command: &'static str,
    seed: u64,
    prime: u64,
    result: T,
}

struct Ctx {
    json: bool,
    seed: u64,
    prime: u64,
}

impl Ctx {
    fn emit<T: Serialize>(
        &self,
        out: &mut dyn Write,
        command: &'static str,
        result: &T,
        human: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
    ) -> i32 {
        if self.json {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command,
                seed: self.seed,
                prime: self.prime,
                result,
            };
            match serde_json::to_string_pretty(&env) {
                Ok(s) => {
                    let _ = writeln!(out, "{s}");
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(out, "serialization error: {e}");
                    EXIT_INVARIANT
                }
            }
        } else {
            let _ = human(out);
            EXIT_OK
        }
    }
}

fn env_u64(err: &mut dyn Write, name: &str) -> Result<Option<u64>, i32> {
    match std::env::var(name) {
        Ok(v) => v.parse::<u64>().map(Some).map_err(|_| {
            let _ = writeln!(err, "error: {name}={v} is not an unsigned integer");
            EXIT_USAGE
        }),
        Err(_) => Ok(None),
    }
}

pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    run(&args, &mut stdout, &mut stderr)
}

pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    if let Some(n) = cli.threads {
        // a second initialization in the same process is fine to ignore
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }

    let seed = match cli.seed {
        Some(s) => s,
        None => match env_u64(err, "FATPOINTS_SEED") {
            Ok(v) => v.unwrap_or(oracle::DEFAULT_SEED),
            Err(code) => return code,
        },
    };
    let prime = match cli.prime {
        Some(p) => p,
        None => match env_u64(err, "FATPOINTS_PRIME") {
            Ok(v) => v.unwrap_or(oracle::DEFAULT_PRIME),
            Err(code) => return code,
        },
    };
    let ctx = Ctx { json: cli.json, seed, prime };

    match cli.command {
        Command::Reduce { seq, ms } => cmd_reduce(&ctx, out, err, &seq, &ms),
        Command::Prove { d, mults, order } => cmd_prove(&ctx, out, err, d, &mults, &order),
        Command::Criterion { d, mults } => cmd_criterion(&ctx, out, err, d, &mults),
        Command::Containment { mults, explain } => {
            cmd_containment(&ctx, out, err, &mults, explain)
        }
        Command::Oracle { cmd } => match cmd {
            OracleCmd::Dim { d, mults, trials } => {
                cmd_oracle_dim(&ctx, out, err, d, &mults, trials.unwrap_or(oracle::DEFAULT_TRIALS))
            }
            OracleCmd::Alpha { mults, scale, trials } => cmd_oracle_alpha(
                &ctx,
                out,
                err,
                &mults,
                scale,
                trials.unwrap_or(oracle::DEFAULT_TRIALS),
            ),
            OracleCmd::Containment { mults, r, tmax } => {
                cmd_oracle_containment(&ctx, out, err, &mults, r, tmax)
            }
        },
        Command::Scan { family, cap, force } => cmd_scan(&ctx, out, err, &family, cap, force),
        Command::VerifyLemma { name, grid } => cmd_verify_lemma(&ctx, out, err, &name, grid.as_deref()),
        Command::Selftest { finite_cases: _ } => cmd_selftest(&ctx, out),
        Command::Crosscheck { dmax, smax, mmax, trials } => cmd_crosscheck(
            &ctx,
            out,
            dmax,
            smax,
            mmax,
            trials.unwrap_or(oracle::DEFAULT_TRIALS),
        ),
    }
}

fn usage_err(err: &mut dyn Write, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

fn parse_mults(err: &mut dyn Write, text: &str) -> Result<MultiplicitySequence, i32> {
    MultiplicitySequence::parse(text).map_err(|e| usage_err(err, e))
}

// raw order as typed, positive entries
fn parse_raw_mults(err: &mut dyn Write, text: &str) -> Result<Vec<u64>, i32> {
    let seq = IntSequence::parse(text).map_err(|e| usage_err(&mut *err, e))?;
    if seq.is_empty() {
        return Err(usage_err(err, "multiplicity list must be non-empty"));
    }
    if seq.entries().contains(&0) {
        return Err(usage_err(err, "multiplicities must be positive"));
    }
    Ok(seq.entries().to_vec())
}

/// Renders a chain trace in the tabular layout: a state row per sequence,
/// a delta row per reduction showing -r at each reduced position.
fn render_chain_table(
    out: &mut dyn Write,
    initial: &IntSequence,
    steps: &[reduction::ReductionStep],
    failed: Option<(&reduction::ReductionFailure, u64, &IntSequence)>,
) -> std::io::Result<()> {
    let ncols = initial.len();
    let width = initial
        .entries()
        .iter()
        .map(|e| e.to_string().len() + 1)
        .max()
        .unwrap_or(2)
        .max(3);
    let state_row = |seq: &IntSequence| -> String {
        let mut row = String::new();
        for i in 0..ncols {
            let cell = seq
                .entries()
                .get(i)
                .map(|e| e.to_string())
                .unwrap_or_default();
            row.push_str(&format!("{cell:>width$}"));
        }
        row
    };
    let delta_row = |len: usize, m: u64, reducers: &[(u64, u64)], blocked: Option<(u64, u64)>| {
        let mut cells: Vec<String> = vec![String::new(); ncols];
        for c in cells.iter_mut().take(len) {
            *c = ".".into();
        }
        for &(k, r) in reducers {
            let pos = len - m as usize + k as usize - 1;
            cells[pos] = format!("-{r}");
        }
        if let Some((k, r)) = blocked {
            let pos = len - m as usize + k as usize - 1;
            cells[pos] = format!("!{r}");
        }
        let mut row = String::new();
        for c in &cells {
            row.push_str(&format!("{c:>width$}"));
        }
        row
    };

    writeln!(out, "{} |", state_row(initial))?;
    for step in steps {
        writeln!(
            out,
            "{} | {}",
            delta_row(step.input.len(), step.m, &step.reducers, None),
            step.m
        )?;
        writeln!(out, "{} |", state_row(&step.output))?;
    }
    if let Some((failure, m, input)) = failed {
        match failure.reason {
            reduction::FailureReason::TooShort => {
                writeln!(out, "stop: sequence of length {} is too short for m = {m}", input.len())?;
            }
            reduction::FailureReason::FlatTail => {
                let k = failure.stop_index.unwrap_or(0);
                let blocked = failure.blocking_reducer.map(|r| (k, r));
                writeln!(
                    out,
                    "{} | {m}",
                    delta_row(input.len(), m, &failure.partial_reducers, blocked)
                )?;
                writeln!(
                    out,
                    "stop (Z{} = Z{}): reducer {} already used{}",
                    k.saturating_sub(1),
                    k,
                    failure.blocking_reducer.unwrap_or(0),
                    failure
                        .witness
                        .map(|(wk, wl)| format!("; witness positions k={wk}, l={wl}"))
                        .unwrap_or_default()
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_reduce(ctx: &Ctx, out: &mut dyn Write, err: &mut dyn Write, seq: &str, ms: &str) -> i32 {
    let initial = match IntSequence::parse(seq) {
        Ok(s) => s,
        Err(e) => return usage_err(err, e),
    };
    let ms = match IntSequence::parse(ms) {
        Ok(s) => s.entries().to_vec(),
        Err(e) => return usage_err(err, e),
    };
    match reduction::reduce_chain(&initial, &ms) {
        Ok(outcome) => ctx.emit(out, "reduce", &outcome, |out| {
            match &outcome {
                ChainOutcome::Complete(cert) => {
                    render_chain_table(out, &cert.initial, &cert.steps, None)?;
                    writeln!(out, "final: ({}), size {}", cert.final_seq, cert.final_size)
                }
                ChainOutcome::Failed(fail) => {
                    let last_input = fail
                        .completed_steps
                        .last()
                        .map(|s| s.output.stripped())
                        .unwrap_or_else(|| initial.clone());
                    render_chain_table(
                        out,
                        &initial,
                        &fail.completed_steps,
                        Some((&fail.failure, ms[fail.step_index - 1], &last_input)),
                    )?;
                    writeln!(out, "chain failed at step {}", fail.step_index)
                }
            }
        }),
        Err(e) => usage_err(err, e),
    }
}

// the chain prover materializes the staircase (1,…,d+1)
const MAX_PROVER_DEGREE: u64 = 10_000_000;

fn cmd_prove(
    ctx: &Ctx,
    out: &mut dyn Write,
    err: &mut dyn Write,
    d: u64,
    mults: &str,
    order: &str,
) -> i32 {
    if d > MAX_PROVER_DEGREE {
        return usage_err(err, format!("degree {d} exceeds the supported maximum {MAX_PROVER_DEGREE}"));
    }
    let raw = match parse_raw_mults(err, mults) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let sorted = MultiplicitySequence::new(raw.clone()).expect("validated");
    let verdict = if order == "as-given" {
        let mut v = speciality::prove_h1_regular_with_order(d, &raw);
        v.order_used = Some(raw);
        v
    } else {
        let strategy: OrderStrategy = match order.parse() {
            Ok(s) => s,
            Err(e) => return usage_err(err, e),
        };
        speciality::prove_h1_regular(d, &sorted, strategy)
    };
    ctx.emit(out, "prove", &verdict, |out| {
        writeln!(
            out,
            "L({d}; {sorted}): non-special {:?}, effective {:?}, h1-regular {:?} ({} order(s) tried)",
            verdict.nonspecial, verdict.effective, verdict.h1_regular, verdict.orders_tried
        )?;
        if let Some(cert) = &verdict.certificate {
            render_chain_table(out, &cert.initial, &cert.steps, None)?;
            writeln!(out, "final: ({}), size {}", cert.final_seq, cert.final_size)?;
        } else if let Some(fail) = &verdict.chain_failure {
            writeln!(
                out,
                "chain failed at step {} ({:?})",
                fail.step_index, fail.failure.reason
            )?;
        }
        Ok(())
    })
}

fn cmd_criterion(ctx: &Ctx, out: &mut dyn Write, err: &mut dyn Write, d: u64, mults: &str) -> i32 {
    let mults = match parse_mults(err, mults) {
        Ok(m) => m,
        Err(code) => return code,
    };
    match speciality::closed_form_criterion(d, &mults) {
        Ok(verdict) => ctx.emit(out, "criterion", &verdict, |out| {
            writeln!(
                out,
                "L({d}; {mults}): non-special {:?}, effective {:?}, h1-regular {:?}",
                verdict.nonspecial, verdict.effective, verdict.h1_regular
            )?;
            writeln!(
                out,
                "L = vdim+1 = {}, threshold = {}, degree floor m1+m2 = {}",
                verdict.criterion_lhs.as_ref().unwrap(),
                verdict.criterion_rhs.as_ref().unwrap(),
                mults.nth(1).unwrap() + mults.nth(2).unwrap()
            )
        }),
        Err(e) => usage_err(err, e),
    }
}

fn write_conditions(out: &mut dyn Write, c: &containment::DegreeConditions) -> std::io::Result<()> {
    writeln!(out, "  at degree d = {}:", c.d)?;
    writeln!(
        out,
        "    d(d+3) = {} {} {} = sum m_i(m_i+1) + rho(m4)   [{}]",
        c.reg_lhs,
        if c.reg_ok { ">=" } else { "<" },
        c.reg_rhs,
        ok_str(c.reg_ok)
    )?;
    writeln!(
        out,
        "    d = {} {} {} = m1+m2   [{}]",
        c.d,
        if c.degree_floor_ok { ">=" } else { "<" },
        c.degree_floor,
        ok_str(c.degree_floor_ok)
    )?;
    writeln!(
        out,
        "    d+2 = {} vs 2*sum/sqrt(s+1) = {}   [{}]",
        c.d + 2,
        c.nagata_bound,
        ok_str(c.nagata_ok)
    )?;
    writeln!(
        out,
        "    d+2 = {} vs m1+m2+m3+m4 = {}   [{}]",
        c.d + 2,
        c.cremona_rhs,
        ok_str(c.cremona_ok)
    )?;
    writeln!(
        out,
        "    d+2 = {} vs 2*m1 = {}   [{}]",
        c.d + 2,
        c.big_point_rhs,
        ok_str(c.big_point_ok)
    )
}

fn ok_str(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "fails"
    }
}

fn cmd_containment(
    ctx: &Ctx,
    out: &mut dyn Write,
    err: &mut dyn Write,
    mults: &str,
    explain: bool,
) -> i32 {
    let mults = match parse_mults(err, mults) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let verdict = containment::prove_containment(&mults);
    ctx.emit(out, "containment", &verdict, |out| {
        writeln!(
            out,
            "I^(2r) in M^r I^r for ({}): {} (route {:?})",
            mults.to_compressed(),
            if verdict.proven { "proven for all r >= 1" } else { "unknown" },
            verdict.route
        )?;
        if let Some(d) = verdict.witness_d {
            writeln!(out, "witness degree {d}, admitted by {:?}", verdict.branches)?;
        }
        if explain {
            for line in &verdict.subfacts {
                writeln!(out, "  - {line}")?;
            }
            if let Some(c) = &verdict.conditions {
                write_conditions(out, c)?;
            }
            writeln!(out, "  {}", verdict.diagnostics)?;
        }
        Ok(())
    })
}

fn oracle_exit(err: &mut dyn Write, e: OracleError) -> i32 {
    match e {
        OracleError::Internal(_) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVARIANT
        }
        other => usage_err(err, other),
    }
}

fn cmd_oracle_dim(
    ctx: &Ctx,
    out: &mut dyn Write,
    err: &mut dyn Write,
    d: u64,
    mults: &str,
    trials: u32,
) -> i32 {
    let mults = match parse_mults(err, mults) {
        Ok(m) => m,
        Err(code) => return code,
    };
    match oracle::dim_system(d, &mults, ctx.prime, trials, ctx.seed) {
        Ok(report) => ctx.emit(out, "oracle-dim", &report, |out| {
            writeln!(
                out,
                "L({d}; {mults}) over F_{}: dim {} (edim {}), certificate {:?}; \
                 matrix {}x{}, max rank {} over {} trial(s), seed {}",
                report.prime,
                report.dim_observed,
                report.edim,
                report.certificate,
                report.rows,
                report.cols,
                report.max_rank,
                report.trials_run,
                report.seed
            )
        }),
        Err(e) => oracle_exit(err, e),
    }
}

fn cmd_oracle_alpha(
    ctx: &Ctx,
    out: &mut dyn Write,
    err: &mut dyn Write,
    mults: &str,
    scale: u64,
    trials: u32,
) -> i32 {
    let mults = match parse_mults(err, mults) {
        Ok(m) => m,
        Err(code) => return code,
    };
    match oracle::alpha_scan(&mults, scale, ctx.prime, trials, ctx.seed) {
        Ok(report) => ctx.emit(out, "oracle-alpha", &report, |out| {
            writeln!(
                out,
                "alpha of the {}-fold symbolic power of ({}): lower bound {}, observed {}{}",
                report.scale,
                mults.to_compressed(),
                report.alpha_lb,
                report.alpha_observed,
                if report.certified_exact { " (exact)" } else { "" }
            )
        }),
        Err(e) => oracle_exit(err, e),
    }
}

fn cmd_oracle_containment(
    ctx: &Ctx,
    out: &mut dyn Write,
    err: &mut dyn Write,
    mults: &str,
    r: u64,
    tmax: Option<u64>,
) -> i32 {
    let mults = match parse_mults(err, mults) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let tmax = match tmax {
        Some(t) => t,
        None => {
            // default: r·(regularity bound + 1); past that degree the graded
            // pieces repeat the same story
            let reg_bound = speciality::reg_upper_bound(&mults).unwrap_or_else(|_| {
                u64::try_from(mults.sum()).unwrap_or(u64::MAX / 2) + 1
            });
            r.saturating_mul(reg_bound + 1)
        }
    };
    match oracle::truncated_containment_check(&mults, r, ctx.prime, tmax, ctx.seed) {
        Ok(report) => ctx.emit(out, "oracle-containment", &report, |out| {
            writeln!(
                out,
                "degree-by-degree check of I^(2r) in M^r I^r at one configuration, r = {r}, t <= {tmax}:",
            )?;
            writeln!(out, "  t\tdim sym\tdim prod\tcontained")?;
            for row in &report.per_degree {
                writeln!(
                    out,
                    "  {}\t{}\t{}\t{}",
                    row.t, row.dim_symbolic, row.dim_product, row.contained
                )?;
            }
            writeln!(
                out,
                "{}",
                if report.all_contained {
                    "contained at every degree checked (evidence at this configuration)"
                } else {
                    "CONTAINMENT FAILED at some degree; investigate"
                }
            )
        }),
        Err(e) => oracle_exit(err, e),
    }
}

fn cmd_scan(
    ctx: &Ctx,
    out: &mut dyn Write,
    err: &mut dyn Write,
    family: &str,
    cap: Option<u128>,
    force: bool,
) -> i32 {
    let family = match search::FamilyRanges::parse(family) {
        Ok(f) => f,
        Err(e) => return usage_err(err, e),
    };
    let cap = if force {
        u128::MAX
    } else {
        cap.unwrap_or(search::DEFAULT_SCAN_CAP)
    };
    match search::scan_degree_criterion_failures(&family, cap) {
        Ok(hits) => ctx.emit(out, "scan", &hits, |out| {
            writeln!(out, "mults\ts\tboundary_degree")?;
            for hit in &hits {
                writeln!(
                    out,
                    "{}\t{}\t{}",
                    hit.mults,
                    hit.s,
                    hit.boundary_degree.map_or("-".into(), |d| d.to_string())
                )?;
            }
            writeln!(out, "# {} failing sequence(s)", hits.len())
        }),
        Err(e) => usage_err(err, e),
    }
}

fn parse_grid_ranges(
    err: &mut dyn Write,
    text: &str,
) -> Result<std::collections::BTreeMap<String, (u64, u64)>, i32> {
    let mut map = std::collections::BTreeMap::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((key, range)) = part.split_once('=') else {
            return Err(usage_err(err, format!("bad grid range `{part}`; expected k=lo..hi")));
        };
        let Some((lo, hi)) = range.split_once("..") else {
            return Err(usage_err(err, format!("bad grid range `{part}`; expected k=lo..hi")));
        };
        let lo: u64 = lo
            .trim()
            .parse()
            .map_err(|_| usage_err(&mut *err, format!("bad bound in `{part}`")))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .map_err(|_| usage_err(&mut *err, format!("bad bound in `{part}`")))?;
        if lo > hi {
            return Err(usage_err(err, format!("empty range `{part}`")));
        }
        map.insert(key.trim().to_string(), (lo, hi));
    }
    Ok(map)
}

fn grid_exit(ctx: &Ctx, out: &mut dyn Write, command: &'static str, reports: &[search::GridReport]) -> i32 {
    let code = ctx.emit(out, command, &reports, |out| {
        for g in reports {
            writeln!(
                out,
                "{}: {} cells, {} failure(s): {}",
                g.name,
                g.cells,
                g.failures.len(),
                if g.passed { "PASS" } else { "FAIL" }
            )?;
            for f in g.failures.iter().take(20) {
                writeln!(out, "  {f}")?;
            }
        }
        Ok(())
    });
    if reports.iter().all(|g| g.passed) {
        code
    } else {
        EXIT_INVARIANT
    }
}

fn cmd_verify_lemma(
    ctx: &Ctx,
    out: &mut dyn Write,
    err: &mut dyn Write,
    name: &str,
    grid: Option<&str>,
) -> i32 {
    let ranges = match grid {
        Some(g) => match parse_grid_ranges(err, g) {
            Ok(r) => Some(r),
            Err(code) => return code,
        },
        None => None,
    };
    let get = |key: &str, default: (u64, u64)| -> (u64, u64) {
        ranges
            .as_ref()
            .and_then(|r| r.get(key).copied())
            .unwrap_or(default)
    };
    let report = match name {
        "drugie" => {
            if ranges.is_some() {
                search::grid_almost_simple_ranged(get("m0", (2, 6)), get("s", (8, 36)))
            } else {
                search::grid_almost_simple()
            }
        }
        "hopefullylast" => search::grid_almost_homogeneous_ranged(
            get("m", (2, 3)),
            get("s", (8, 21)),
            ranges.as_ref().and_then(|r| r.get("m0").copied()),
        ),
        "comb1" => search::grid_uniformly_fat_ranged(get("x", (4, 12)), get("s", (9, 14))),
        "nowa2" => search::grid_fatness_poly_ranged(get("x", (4, 33)), get("s", (9, 16))),
        other => {
            return usage_err(
                err,
                format!("unknown grid `{other}` (expected drugie, hopefullylast, comb1 or nowa2)"),
            )
        }
    };
    grid_exit(ctx, out, "verify-lemma", &[report])
}

fn cmd_selftest(ctx: &Ctx, out: &mut dyn Write) -> i32 {
    let reports = search::verify_finite_cases();
    grid_exit(ctx, out, "selftest", &reports)
}

fn cmd_crosscheck(
    ctx: &Ctx,
    out: &mut dyn Write,
    dmax: u64,
    smax: usize,
    mmax: u64,
    trials: u32,
) -> i32 {
    let limits = search::CrosscheckLimits { d_max: dmax, s_max: smax, m_max: mmax };
    match search::crosscheck_reduction_vs_oracle(limits, ctx.prime, trials, ctx.seed) {
        Ok(report) => {
            let code = ctx.emit(out, "crosscheck", &report, |out| {
                writeln!(
                    out,
                    "{} instances, {} chain proofs, {} criterion proofs, {} oracle checks: {}",
                    report.instances,
                    report.chain_proofs,
                    report.criterion_proofs,
                    report.oracle_checks,
                    if report.passed { "PASS" } else { "FAIL" }
                )?;
                for v in report.violations.iter().take(20) {
                    writeln!(out, "  {v}")?;
                }
                Ok(())
            });
            if report.passed {
                code
            } else {
                EXIT_INVARIANT
            }
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_USAGE
        }
    }
}

// keep the containment error type in the public surface of this module for
// exit-code mapping by embedders
#[allow(dead_code)]
fn containment_exit(err: &mut dyn Write, e: ContainmentError) -> i32 {
    match e {
        ContainmentError::Internal(_) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVARIANT
        }
        other => usage_err(err, other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_vec(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("fatpoints".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn reduce_renders_trace_and_final() {
        let (code, out, _) = run_vec(&["reduce", "--seq", "1..10", "--ms", "4,4,4,3,3,3,3"]);
        assert_eq!(code, 0);
        assert!(out.contains("final: (1), size 1"));
        assert!(out.contains("-4"));
    }

    #[test]
    fn bad_input_is_usage_error() {
        let (code, _, err) = run_vec(&["prove", "--d", "9", "--mults", "4,x"]);
        assert_eq!(code, 1);
        assert!(err.contains("error"));
        let (code, _, _) = run_vec(&["criterion", "--d", "5", "--mults", "2,1,1"]);
        assert_eq!(code, 1);
        let (code, _, _) = run_vec(&["nonsense"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn json_envelope_present() {
        let (code, out, _) = run_vec(&["--json", "containment", "--mults", "5,1^8"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["command"], "containment");
        assert_eq!(v["result"]["proven"], true);
        assert_eq!(v["result"]["route"], "almost-simple");
    }

    #[test]
    fn selftest_passes() {
        let (code, out, _) = run_vec(&["selftest", "--finite-cases"]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS"));
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_vec(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("fatpoints"));
    }
}
