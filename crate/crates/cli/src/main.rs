use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use oppairs_core::combinat::{rank_counts_mod, rank_counts_series, RankKind};
use oppairs_core::special::{eta_quotient, named_series_in, EtaQuotientSpec, NamedSeriesId};
use oppairs_core::verify::{default_params, run_all, run_check, scan_progressions, CheckId, CheckReport, Params};
use oppairs_core::{Integers, IntegersMod, Ring, TruncatedSeries};

const DEFAULT_BUDGET: &str = "500";

const SERIES_HELP: &str = "Named series (pp, op, A, B, b, c, p_minus2, chan_a, PD, phi_plus, \
phi_minus, psi, r2, r8) or an eta quotient `c * q^d * (k1)^e1 (k2)^e2 ...`, where `(k)^e` \
stands for (q^k; q^k)_inf^e. Example: \"12 * (2)^6 (3)^6 (1)^-14\"";

#[derive(Parser)]
#[command(name = "oppairs", version, about = "Overpartition pairs: series, ranks and congruence checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first N coefficients of a series.
    Expand {
        #[arg(long, help = SERIES_HELP)]
        series: String,
        /// Number of coefficients.
        #[arg(long, env = "OPP_BUDGET_N", default_value = DEFAULT_BUDGET)]
        n: usize,
        /// Reduce coefficients modulo M.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Rank distribution of overpartition pairs of n.
    Rank {
        /// r1, r2 or r3.
        #[arg(long)]
        kind: RankKind,
        #[arg(long)]
        n: usize,
        /// Fold ranks into residue classes mod t.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Run one check, or all of them.
    Verify {
        /// Check id, or `all`.
        #[arg(long)]
        check: String,
        /// Shorthand for `--param N=<n>`.
        #[arg(long)]
        n: Option<i64>,
        /// Extra parameter as name=value; repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, i64)>,
        /// Scale for default ranges.
        #[arg(long, env = "OPP_BUDGET_N", default_value = DEFAULT_BUDGET)]
        budget: i64,
    },
    /// Search for progressions An+B with pp(An+B) = 0 mod M (heuristic).
    Scan {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        a_max: usize,
        /// Window: arguments below N are sampled.
        #[arg(long, env = "OPP_BUDGET_N", default_value = "2000")]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (name, value) = s.split_once('=').ok_or("expected name=value")?;
    let value = value.parse().map_err(|_| format!("`{value}` is not an integer"))?;
    Ok((name.to_string(), value))
}

/// Exit status plus a message for stderr.
struct Failure(u8, String);

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

fn io_err(e: io::Error) -> Failure {
    Failure(1, e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Expand { series, n, modulus, format } => expand(&mut out, &series, n, modulus, format),
        Command::Rank { kind, n, t } => rank(&mut out, kind, n, t),
        Command::Verify { check, n, params, budget } => verify(&mut out, &check, n, params, budget),
        Command::Scan { modulus, a_max, n } => scan(&mut out, modulus, a_max, n),
    };
    let result = result.and_then(|code| out.flush().map(|_| code).map_err(io_err));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

#[derive(Serialize)]
struct ValueRow<'a> {
    n: usize,
    value: &'a str,
}

fn expand(out: &mut impl Write, series: &str, n: usize, modulus: Option<u64>, format: Format) -> Result<u8, Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let source = match series.parse::<NamedSeriesId>() {
        Ok(id) => Source::Named(id),
        Err(_) => Source::Eta(series.parse::<EtaQuotientSpec>().map_err(|e| {
            usage(format!("`{series}` is neither a named series nor an eta quotient ({e})"))
        })?),
    };
    match modulus {
        None => write_series(out, &source.build(&Integers, n)?, format),
        Some(m) => write_series(out, &source.build(&IntegersMod::new(m).map_err(usage)?, n)?, format),
    }
}

enum Source {
    Named(NamedSeriesId),
    Eta(EtaQuotientSpec),
}

impl Source {
    fn build<R: Ring>(&self, ring: &R, n: usize) -> Result<TruncatedSeries<R>, Failure> {
        match self {
            Source::Named(id) => named_series_in(ring, *id, n),
            Source::Eta(spec) => eta_quotient(ring, spec, n),
        }
        .map_err(usage)
    }
}

fn write_series<R: Ring>(out: &mut impl Write, s: &TruncatedSeries<R>, format: Format) -> Result<u8, Failure> {
    if let Format::Csv = format {
        writeln!(out, "n,value").map_err(io_err)?;
    }
    for (i, c) in s.coeffs().iter().enumerate() {
        let value = s.ring().display(c);
        match format {
            Format::Jsonl => write_json(out, &ValueRow { n: i, value: &value })?,
            Format::Csv => writeln!(out, "{i},{value}").map_err(io_err)?,
        }
    }
    Ok(0)
}

fn write_json(out: &mut impl Write, row: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, row).map_err(|e| Failure(1, e.to_string()))?;
    writeln!(out).map_err(io_err)
}

#[derive(Serialize)]
struct RankRow {
    m: i64,
    count: String,
}

#[derive(Serialize)]
struct ResidueRow {
    s: usize,
    count: String,
}

fn rank(out: &mut impl Write, kind: RankKind, n: usize, t: Option<usize>) -> Result<u8, Failure> {
    match t {
        None => {
            for (m, count) in rank_counts_series(n, kind).map_err(usage)? {
                write_json(out, &RankRow { m, count: count.to_string() })?;
            }
        }
        Some(t) => {
            for (s, count) in rank_counts_mod(n, kind, t).map_err(usage)?.into_iter().enumerate() {
                write_json(out, &ResidueRow { s, count: count.to_string() })?;
            }
        }
    }
    Ok(0)
}

fn verify(out: &mut impl Write, check: &str, n: Option<i64>, extra: Vec<(String, i64)>, budget: i64) -> Result<u8, Failure> {
    let reports: Vec<CheckReport> = if check == "all" {
        if n.is_some() || !extra.is_empty() {
            return Err(usage("--check all takes only --budget"));
        }
        run_all(budget).map_err(usage)?
    } else {
        let id: CheckId = check.parse().map_err(usage)?;
        let mut params: Params = default_params(id, budget);
        for (name, value) in n.map(|v| ("N".to_string(), v)).into_iter().chain(extra) {
            if !params.contains_key(&name) {
                return Err(usage(format!("check `{id}` has no parameter `{name}`")));
            }
            params.insert(name, value);
        }
        vec![run_check(id, &params).map_err(usage)?]
    };
    let mut failed = 0;
    for r in &reports {
        write_json(out, r)?;
        if !r.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", reports.len());
        Ok(1)
    } else {
        Ok(0)
    }
}

#[derive(Serialize)]
struct ScanRow {
    #[serde(rename = "A")]
    a: usize,
    #[serde(rename = "B")]
    b: usize,
    evidence: usize,
    nested_in: Option<(usize, usize)>,
    heuristic: bool,
}

fn scan(out: &mut impl Write, modulus: u64, a_max: usize, n: usize) -> Result<u8, Failure> {
    let candidates = scan_progressions(modulus, a_max, n).map_err(usage)?;
    eprintln!("{} candidate progressions mod {modulus} below {n}; evidence only, not proof", candidates.len());
    for c in candidates {
        write_json(
            out,
            &ScanRow {
                a: c.a,
                b: c.b,
                evidence: c.evidence,
                nested_in: c.nested_in,
                heuristic: true,
            },
        )?;
    }
    Ok(0)
}
