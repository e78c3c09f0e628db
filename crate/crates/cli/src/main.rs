//! `cdc`: bounds, tables, constructions and verification for constant
//! dimension codes.

use cdc_core::asymptotics::{
    better_than_mrd_envelope_ratio, better_than_mrd_limit_bound, better_than_mrd_ratio, lmrd_anticode_ratio_infimum,
};
use cdc_core::build::{Builder, Built};
use cdc_core::codefile::{read_code, write_code};
use cdc_core::combinatorics::{q_pochhammer, PochLen};
use cdc_core::construct::{gabidulin, greedy_cdc, lift, spread_construct, GreedyOrder};
use cdc_core::field::FieldSpec;
use cdc_core::interval::{round_half_even, Interval};
use cdc_core::lower::SeedTable;
use cdc_core::sweep::sweep;
use cdc_core::tables::{self, Which};
use cdc_core::verify::{verify_code, VerifyReport};
use cdc_core::{BoundReport, Bounds, Error, Params};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cdc", version, about = "Bounds and constructions for constant dimension subspace codes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args, Clone, Copy)]
struct ParamArgs {
    #[arg(short = 'q')]
    q: u64,
    #[arg(short = 'v')]
    v: u32,
    #[arg(short = 'd')]
    d: u32,
    #[arg(short = 'k')]
    k: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Lmrd,
    Spread,
    Greedy,
    ImprovedLinkage,
    /// Largest of all the above.
    Best,
}

#[derive(Subcommand)]
enum Cmd {
    /// Every applicable bound on A_q(v,d;k) with its source.
    Bound(ParamArgs),
    /// Bounds for A_2(v,4;3), v = 6..19: 1 absolute, 2 over the lifted MRD
    /// size, 3 over the MRD bound.
    Table {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=3))]
        which: u32,
    },
    /// Build an explicit code and write it in the code file format.
    Construct {
        #[arg(value_enum)]
        method: Method,
        #[arg(short = 'q')]
        q: u64,
        #[arg(short = 'v')]
        v: usize,
        /// Defaults to 2k.
        #[arg(short = 'd')]
        d: Option<usize>,
        #[arg(short = 'k')]
        k: usize,
        /// Greedy scan order: enumeration, reverse or shuffle:<seed>.
        #[arg(long, default_value = "shuffle:0")]
        order: GreedyOrder,
    },
    /// Check a code file: dimensions, rref form, duplicates, minimum distance.
    Verify { file: PathBuf },
    /// Best bounds over 4 <= v <= v-max, even 4 <= d <= 2k <= v.
    Sweep {
        #[arg(long = "q", value_delimiter = ',', default_value = "2,3")]
        qs: Vec<u64>,
        #[arg(long, default_value_t = 12)]
        v_max: u32,
    },
    /// Best lower bound on A_q(v,4;3) against the MRD bound as v grows.
    Asymptotics {
        #[arg(short = 'q', default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 30)]
        v_max: u32,
    },
}

enum Failure {
    Verify(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Core(Error::Budget(_)) => 3,
            Failure::Core(_) | Failure::Io(_) => 2,
        }
    }
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn engine() -> Result<Bounds, Failure> {
    Ok(Bounds::new(SeedTable::from_env()?))
}

fn bound_text(r: &BoundReport) -> String {
    let mut s = format!("{}\nlower bounds:\n", r.params);
    for b in &r.lower {
        let _ = writeln!(s, "  {b}");
    }
    s.push_str("upper bounds:\n");
    for b in &r.upper {
        let _ = writeln!(s, "  {b}");
    }
    let _ = writeln!(s, "best lower: {}\nbest upper: {}", r.best_lower, r.best_upper);
    if let Some(m) = &r.lmrd_subclass_upper {
        let _ = writeln!(s, "codes containing a lifted MRD code: at most {m}");
    }
    s
}

fn bound_csv(r: &BoundReport) -> String {
    let mut s = String::from("kind,name,value,via\n");
    let rows = r.lower.iter().map(|b| ("lower", b)).chain(r.upper.iter().map(|b| ("upper", b)));
    let best = [("best_lower", &r.best_lower), ("best_upper", &r.best_upper)];
    let sub = r.lmrd_subclass_upper.iter().map(|b| ("lmrd_subclass_upper", b));
    for (kind, b) in rows.chain(best).chain(sub) {
        let _ = writeln!(s, "{kind},{},{},\"{}\"", b.name, b.value, b.via.replace('"', "'"));
    }
    s
}

fn cmd_bound(p: ParamArgs, format: Format) -> Result<String, Failure> {
    let params = Params::new(p.q, p.v, p.d, p.k)?;
    let report = engine()?.report(params);
    Ok(match format {
        Format::Text => bound_text(&report),
        Format::Json => json(&report),
        Format::Csv => bound_csv(&report),
    })
}

fn cmd_table(which: u32, format: Format) -> Result<String, Failure> {
    let t = tables::standard(&mut engine()?, Which::from_index(which)?)?;
    Ok(match format {
        Format::Text => t.to_text(),
        Format::Json => json(&t),
        Format::Csv => t.to_csv(),
    })
}

fn construct(
    method: Method,
    field: &FieldSpec,
    v: usize,
    d: usize,
    k: usize,
    order: GreedyOrder,
) -> Result<Built, Failure> {
    if k > v {
        return Err(Error::Params(format!("k = {k} exceeds v = {v}")).into());
    }
    let built = match method {
        Method::Lmrd => {
            let lo = k.min(v - k);
            if d % 2 == 1 || d < 2 || d / 2 > lo {
                return Err(Error::Params(format!("lifted MRD codes need even 2 <= d <= {}", 2 * lo)).into());
            }
            Built { code: lift(&gabidulin(field, k, v - k, d / 2)?)?, how: "lifted MRD".into() }
        }
        Method::Spread => {
            if d != 2 * k {
                return Err(Error::Params(format!("a spread has d = 2k = {}", 2 * k)).into());
            }
            Built { code: spread_construct(field, v, k)?, how: "spread".into() }
        }
        Method::Greedy => Built { code: greedy_cdc(field, v, d, k, order)?, how: format!("greedy ({order})") },
        Method::ImprovedLinkage => Builder::new(field.clone(), d)?.improved_linkage(v, k)?,
        Method::Best => Builder::new(field.clone(), d)?.best(v, k)?,
    };
    Ok(built)
}

#[derive(Serialize)]
struct ConstructSummary<'a> {
    q: u32,
    v: usize,
    k: usize,
    n: usize,
    d: Option<u32>,
    how: &'a str,
    file: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    method: Method,
    q: u64,
    v: usize,
    d: Option<usize>,
    k: usize,
    order: GreedyOrder,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<(String, bool), Failure> {
    let field = FieldSpec::of_order(q)?;
    let built = construct(method, &field, v, d.unwrap_or(2 * k), k, order)?;
    let text = write_code(&built.code);
    let Some(path) = out else {
        return Ok((text, false));
    };
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let c = &built.code;
    let s = ConstructSummary {
        q: c.field.q(),
        v: c.v,
        k: c.k,
        n: c.len(),
        d: c.claimed_d,
        how: &built.how,
        file: Some(path.display().to_string()),
    };
    let msg = match format {
        Format::Json => json(&s),
        Format::Csv => format!(
            "q,v,k,n,d,how,file\n{},{},{},{},{},\"{}\",{}\n",
            s.q,
            s.v,
            s.k,
            s.n,
            s.d.map_or("inf".into(), |d| d.to_string()),
            s.how,
            path.display()
        ),
        Format::Text => format!(
            "wrote ({}, {}, {}; {})_{} code to {}\nconstruction: {}\n",
            s.v,
            s.n,
            s.d.map_or("inf".into(), |d| d.to_string()),
            s.k,
            s.q,
            path.display(),
            s.how
        ),
    };
    Ok((msg, true))
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = format!("codewords: {}\nv = {}, k = {}\n", r.n, r.v, r.k);
    let claimed = r.claimed_d.map_or("inf".to_string(), |d| d.to_string());
    let _ = writeln!(s, "claimed minimum distance: {claimed}");
    match (r.min_distance, r.witness) {
        (Some(d), Some((i, j))) => {
            let _ = writeln!(s, "minimum distance: {d} (codewords {i} and {j})");
        }
        _ => s.push_str("minimum distance: inf\n"),
    }
    if !r.k_uniform {
        s.push_str("error: codewords do not all have dimension k in ambient dimension v\n");
    }
    if !r.rref_ok {
        s.push_str("error: a representative is not a full-rank rref matrix\n");
    }
    if let Some((i, j)) = r.duplicate {
        let _ = writeln!(s, "error: duplicate codeword ({i} and {j})");
    }
    if r.budget_exceeded {
        let _ = writeln!(s, "error: pair budget exceeded after {} pairs", r.pairs_checked);
    }
    if let (Some(c), Some(m), Some((i, j))) = (r.claimed_d, r.min_distance, r.witness) {
        if m < c {
            let _ = writeln!(s, "error: claimed distance {c} but codewords {i} and {j} are at distance {m}");
        }
    }
    s.push_str(if r.ok() { "OK\n" } else { "FAILED\n" });
    s
}

fn cmd_verify(file: &PathBuf, format: Format) -> Result<(String, bool), Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
    let code = read_code(&text)?;
    let r = verify_code(&code);
    let out = match format {
        Format::Text => verify_text(&r),
        Format::Json => json(&r),
        Format::Csv => format!(
            "n,v,k,claimed_d,min_distance,ok\n{},{},{},{},{},{}\n",
            r.n,
            r.v,
            r.k,
            r.claimed_d.map_or("inf".into(), |d| d.to_string()),
            r.min_distance.map_or("inf".into(), |d| d.to_string()),
            r.ok()
        ),
    };
    if r.budget_exceeded {
        return Err(Error::Budget(format!("more than {} pairs", r.pairs_checked)).into());
    }
    Ok((out, r.ok()))
}

fn cmd_sweep(qs: &[u64], v_max: u32, format: Format) -> Result<String, Failure> {
    let s = sweep(qs, v_max, &SeedTable::from_env()?)?;
    let frac = s.linkage_fraction();
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                sweep: &'a cdc_core::sweep::Sweep,
                improved_linkage_fraction: f64,
            }
            json(&Out { sweep: &s, improved_linkage_fraction: frac })
        }
        Format::Csv => s.to_csv(),
        Format::Text => {
            let mut out = String::new();
            for r in &s.rows {
                let _ = writeln!(out, "{}  {} <= A <= {}", r.params, r.best_lower, r.best_upper);
            }
            let _ = writeln!(
                out,
                "improved linkage attains the best lower bound in {:.1}% of {} cells",
                100.0 * frac,
                s.rows.len()
            );
            if !s.ahlswede_wins.is_empty() {
                let cells: Vec<String> = s.ahlswede_wins.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(out, "intersection-counting bound strictly best at: {}", cells.join(", "));
            }
            out
        }
    })
}

fn fmt_interval(i: &Interval, digits: u32) -> String {
    format!("[{}, {}]", round_half_even(i.lo(), digits), round_half_even(i.hi(), digits))
}

fn cmd_asymptotics(q: u64, v_max: u32, format: Format) -> Result<String, Failure> {
    if v_max < 6 {
        return Err(Error::Params(format!("need v-max >= 6, got {v_max}")).into());
    }
    let mut e = engine()?;
    #[derive(Serialize)]
    struct Row {
        v: u32,
        over_mrd_bound: String,
        over_envelope: String,
    }
    let mut rows = Vec::new();
    for v in 6..=v_max {
        rows.push(Row {
            v,
            over_mrd_bound: round_half_even(&better_than_mrd_ratio(&mut e, q, v)?, 10),
            over_envelope: round_half_even(&better_than_mrd_envelope_ratio(&mut e, q, v)?, 10),
        });
    }
    let poch = q_pochhammer(q, PochLen::Infinite, 12)?;
    let inf = lmrd_anticode_ratio_infimum(q, 12)?;
    let limit = round_half_even(&better_than_mrd_limit_bound(q), 10);
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                q: u64,
                rows: Vec<Row>,
                pochhammer_infinite: [String; 2],
                lmrd_anticode_infimum: [String; 2],
                mrd_ratio_limit_bound: String,
            }
            let pair = |i: &Interval| [round_half_even(i.lo(), 12), round_half_even(i.hi(), 12)];
            json(&Out {
                q,
                rows,
                pochhammer_infinite: pair(&poch),
                lmrd_anticode_infimum: pair(&inf),
                mrd_ratio_limit_bound: limit,
            })
        }
        Format::Csv => {
            let mut s = String::from("v,over_mrd_bound,over_envelope\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{}", r.v, r.over_mrd_bound, r.over_envelope);
            }
            s
        }
        Format::Text => {
            let mut s = format!("best lower bound on A_{q}(v,4;3) over the MRD bound and over its envelope\n");
            for r in &rows {
                let _ = writeln!(s, "{:>3}  {}  {}", r.v, r.over_mrd_bound, r.over_envelope);
            }
            let _ = writeln!(s, "(1/q;1/q)_inf in {}", fmt_interval(&poch, 12));
            let _ = writeln!(s, "lifted MRD over Anticode, infimum in {}", fmt_interval(&inf, 12));
            let _ = writeln!(s, "limit guaranteed by q^(2v-10)(q^4+q+1): {limit}");
            s
        }
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (text, ok, written) = match cli.cmd {
        Cmd::Bound(p) => (cmd_bound(p, cli.format)?, true, false),
        Cmd::Table { which } => (cmd_table(which, cli.format)?, true, false),
        Cmd::Construct { method, q, v, d, k, order } => {
            let (msg, written) = cmd_construct(method, q, v, d, k, order, cli.out.as_ref(), cli.format)?;
            (msg, true, written)
        }
        Cmd::Verify { ref file } => {
            let (msg, ok) = cmd_verify(file, cli.format)?;
            (msg, ok, false)
        }
        Cmd::Sweep { ref qs, v_max } => (cmd_sweep(qs, v_max, cli.format)?, true, false),
        Cmd::Asymptotics { q, v_max } => (cmd_asymptotics(q, v_max, cli.format)?, true, false),
    };
    match (&cli.out, written) {
        (Some(path), false) => {
            std::fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
        }
        _ => print!("{text}"),
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify("verification failed".into()))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verify(m) | Failure::Io(m) => eprintln!("cdc: {m}"),
                Failure::Core(e) => eprintln!("cdc: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}
