//! The `chainring` command line.

use std::io::{self, Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::chainring::RingId;
use crate::codes::{
    self, code_cardinality, codewords, count_self_dual, dual_code, enumerate_codes, enumerate_self_dual,
    fixed_block_candidates, is_constacyclic, is_self_dual, materialize, CodeJson, CodeSpec,
};
use crate::crt::{ambient_mul, Decomposition};
use crate::error::{Error, Result};
use crate::factorization::{Context, Params, Variant, DEFAULT_SEED};
use crate::ideals::{count_ideals, count_via_parts, enumerate_ideals, IdealSpec};
use crate::modring::Poly;
use crate::oracle::{self, DUAL_BOUND, IDEAL_SEARCH_BOUND};
use crate::par::{set_jobs, Exec};

#[derive(Parser, Debug)]
#[command(name = "chainring", version, about = "Constacyclic codes over Z/p^s + u Z/p^s")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    #[arg(long, default_value_t = 2)]
    pub s: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub w: u64,
    #[command(flatten)]
    pub run: RunFlags,
}

#[derive(Args, Debug, Clone)]
pub struct RunFlags {
    /// Seed for the randomized factorization step.
    #[arg(long, env = "CHAINRING_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Largest code `materialize` will build.
    #[arg(long, default_value_t = codes::DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III-a")]
    IIIa,
    #[value(name = "III-b")]
    IIIb,
    #[value(name = "IV")]
    IV,
    #[value(name = "V")]
    V,
}

impl Case {
    fn matches(self, spec: &IdealSpec) -> bool {
        let name = match self {
            Case::I => "I",
            Case::II => "II",
            Case::IIIa => "III-a",
            Case::IIIb => "III-b",
            Case::IV => "IV",
            Case::V => "V",
        };
        spec.case_name() == name
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the derived parameters, factors, μ and δ.
    Ctx(Config),
    /// Print the factors of y^n - 1 over Z/p^s.
    Factor(Config),
    /// Count codes: per-factor ideal counts and their product.
    Count(Config),
    /// Stream the ideals of one factor, or whole codes.
    Enumerate {
        #[command(flatten)]
        config: Config,
        /// 1-based factor index; omit to enumerate codes.
        #[arg(long)]
        factor: Option<usize>,
        /// Keep only these cases (repeatable).
        #[arg(long = "case", value_enum)]
        cases: Vec<Case>,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Read a code as JSON and print its dual.
    Dual {
        /// JSON file; standard input when omitted.
        #[arg(long)]
        input: Option<String>,
        /// Also print the dual's codewords.
        #[arg(long)]
        codewords: bool,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Stream or count self-dual codes.
    Selfdual {
        #[command(flatten)]
        config: Config,
        #[arg(long)]
        count: bool,
        /// Print the admissible components of each fixed factor instead.
        #[arg(long)]
        candidates: bool,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Run the brute-force checks that fit this instance.
    Verify(Config),
    /// Print the idempotents of both ambient rings.
    Idempotents(Config),
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotSelfDualCompatible { .. } | Error::CapExceeded { .. } | Error::BoundExceeded { .. } => 3,
        Error::InternalInconsistency(_) => 4,
        _ => 2,
    }
}

/// Parses `args` and runs, writing to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Error::OutputClosed) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_err(e: io::Error) -> Error {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Error::OutputClosed
    } else {
        Error::InvalidInput(format!("i/o: {e}"))
    }
}

fn setup(run: &RunFlags) -> Exec {
    set_jobs(run.jobs);
    if run.jobs == 1 {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn context(c: &Config) -> Result<Context> {
    Context::new(Params::new(c.p, c.s, c.k, c.n, c.w), c.run.seed)
}

fn decomposition(c: &Config) -> Result<Decomposition> {
    Decomposition::new(context(c)?)
}

fn json_line(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<()> {
    let s = serde_json::to_string(v).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
    writeln!(out, "{s}").map_err(io_err)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Ctx(c) => {
            let ctx = context(&c)?;
            match c.run.format {
                Format::Text => writeln!(out, "{ctx}").map_err(io_err)?,
                Format::Json => json_line(out, &ctx.summary())?,
            }
        }
        Command::Factor(c) => {
            let ctx = context(&c)?;
            match c.run.format {
                Format::Text => {
                    for (i, f) in ctx.factors.iter().enumerate() {
                        writeln!(out, "f[{}] = {} (d = {})", i + 1, f, ctx.degree(i)).map_err(io_err)?;
                    }
                }
                Format::Json => {
                    let f: Vec<&[u64]> = ctx.factors.iter().map(|f| f.coeffs()).collect();
                    json_line(out, &json!({ "factors": f }))?;
                }
            }
        }
        Command::Count(c) => {
            let ctx = context(&c)?;
            let per: Vec<BigUint> = (0..ctx.r()).map(|i| count_ideals(ctx.p, ctx.degree(i), ctx.nu())).collect();
            let total: BigUint = per.iter().product();
            match c.run.format {
                Format::Text => {
                    let parts: Vec<String> = per.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{} = {}", parts.join(" × "), total).map_err(io_err)?;
                }
                Format::Json => {
                    let parts: Vec<String> = per.iter().map(|x| x.to_string()).collect();
                    json_line(out, &json!({ "per_factor": parts, "total": total.to_string() }))?;
                }
            }
        }
        Command::Enumerate { config, factor, cases, limit } => {
            let ctx = context(&config)?;
            let limit = limit.unwrap_or(u64::MAX) as usize;
            let keep = |s: &IdealSpec| cases.is_empty() || cases.iter().any(|c| c.matches(s));
            match factor {
                Some(i) => {
                    if i == 0 || i > ctx.r() {
                        return Err(Error::InvalidInput(format!("factor index {i} is outside 1..={}", ctx.r())));
                    }
                    let specs = enumerate_ideals(ctx.p, ctx.degree(i - 1), ctx.nu()).filter(|s| keep(s));
                    for spec in specs.take(limit) {
                        match config.run.format {
                            Format::Text => writeln!(out, "{spec}").map_err(io_err)?,
                            Format::Json => json_line(out, &spec)?,
                        }
                    }
                }
                None => {
                    let codes = enumerate_codes(&ctx, Variant::Plain).filter(|c| c.components.iter().all(keep));
                    for code in codes.take(limit) {
                        print_code(out, &ctx, &code, config.run.format)?;
                    }
                }
            }
        }
        Command::Dual { input, codewords: dump, run } => {
            let text = match input {
                Some(path) => std::fs::read_to_string(&path).map_err(io_err)?,
                None => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s).map_err(io_err)?;
                    s
                }
            };
            let parsed: CodeJson =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("code JSON: {e}")))?;
            let config = Config {
                p: parsed.p,
                s: parsed.s,
                k: parsed.k,
                n: parsed.n,
                w: parsed.w,
                run: run.clone(),
            };
            setup(&run);
            let dec = decomposition(&config)?;
            let ctx = dec.ctx();
            let code = parsed.into_spec(ctx)?;
            let dual = dual_code(&dec, &code)?;
            print_code(out, ctx, &dual, run.format)?;
            if dump {
                let set = materialize(&dec, &dual, run.cap)?;
                for w in codewords(ctx.ring(), ctx.len, &set) {
                    writeln!(out, "{w}").map_err(io_err)?;
                }
            }
        }
        Command::Selfdual { config, count, candidates, limit } => {
            let exec = setup(&config.run);
            let dec = decomposition(&config)?;
            let ctx = dec.ctx();
            if candidates {
                for i in (0..ctx.r()).filter(|&i| ctx.mu[i] == i) {
                    for spec in fixed_block_candidates(&dec, i, exec)? {
                        match config.run.format {
                            Format::Text => writeln!(out, "C[{}] = {spec}", i + 1).map_err(io_err)?,
                            Format::Json => json_line(out, &json!({ "factor": i + 1, "ideal": spec }))?,
                        }
                    }
                }
            } else if count {
                let n = count_self_dual(&dec, exec)?;
                match config.run.format {
                    Format::Text => writeln!(out, "{n}").map_err(io_err)?,
                    Format::Json => json_line(out, &json!({ "self_dual": n.to_string() }))?,
                }
            } else {
                let limit = limit.unwrap_or(u64::MAX) as usize;
                for code in enumerate_self_dual(&dec, exec)?.take(limit) {
                    print_code(out, ctx, &code, config.run.format)?;
                }
            }
        }
        Command::Verify(c) => {
            let exec = setup(&c.run);
            let dec = decomposition(&c)?;
            let report = verify(&dec, exec, c.run.cap);
            let mut failed = false;
            for check in &report {
                failed |= check.status == Status::Fail;
                match c.run.format {
                    Format::Text => writeln!(out, "{check}").map_err(io_err)?,
                    Format::Json => json_line(
                        out,
                        &json!({ "check": check.name, "status": check.status.label(), "detail": check.detail }),
                    )?,
                }
            }
            return Ok(if failed { 4 } else { 0 });
        }
        Command::Idempotents(c) => {
            let dec = decomposition(&c)?;
            let idem = dec.idempotents();
            match c.run.format {
                Format::Text => {
                    for (i, t) in idem.plain.iter().enumerate() {
                        writeln!(out, "theta[{}] = {}", i + 1, t).map_err(io_err)?;
                    }
                    for (i, t) in idem.hat.iter().enumerate() {
                        writeln!(out, "theta_hat[{}] = {}", i + 1, t).map_err(io_err)?;
                    }
                }
                Format::Json => {
                    let plain: Vec<&[u64]> = idem.plain.iter().map(|t| t.coeffs()).collect();
                    let hat: Vec<&[u64]> = idem.hat.iter().map(|t| t.coeffs()).collect();
                    json_line(out, &json!({ "theta": plain, "theta_hat": hat }))?;
                }
            }
        }
    }
    Ok(0)
}

fn print_code(out: &mut dyn Write, ctx: &Context, code: &CodeSpec, format: Format) -> Result<()> {
    match format {
        Format::Text => writeln!(out, "{code}").map_err(io_err),
        Format::Json => json_line(out, &code.to_json(ctx)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

/// One line of the `verify` report.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.status.label(), self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, r: Result<std::result::Result<String, String>>) -> Check {
    let (status, detail) = match r {
        Ok(Ok(d)) => (Status::Pass, d),
        Ok(Err(d)) => (Status::Fail, d),
        Err(Error::BoundExceeded { size, bound }) => (Status::Skip, format!("{size} exceeds {bound}")),
        Err(Error::CapExceeded { size, cap }) => (Status::Skip, format!("{size} exceeds {cap}")),
        Err(Error::NotSelfDualCompatible { .. }) => (Status::Skip, "no self-dual codes for these parameters".into()),
        Err(e) => (Status::Fail, e.to_string()),
    };
    Check { name, status, detail }
}

/// Most codes the exhaustive dual checks will visit.
const VERIFY_CODE_LIMIT: usize = 4096;

/// The brute-force battery: every check that fits this instance runs,
/// the rest are reported as skipped.
pub fn verify(dec: &Decomposition, exec: Exec, cap: u64) -> Vec<Check> {
    let ctx = dec.ctx();
    let started = Instant::now();
    let mut report = Vec::new();

    report.push(check(
        "factorization",
        {
            let z = ctx.ring();
            let prod = ctx.factors.iter().fold(Poly::one(z), |acc, f| &acc * f);
            let target = &Poly::monomial(z, 1, ctx.n as usize) - &Poly::one(z);
            Ok(if prod == target {
                Ok(format!("{} factors", ctx.r()))
            } else {
                Err("product of factors is not y^n - 1".into())
            })
        },
    ));

    report.push(check(
        "idempotents",
        (|| {
            for v in [Variant::Plain, Variant::Hat] {
                let th = dec.idempotents().get(v);
                for (i, a) in th.iter().enumerate() {
                    for (j, b) in th.iter().enumerate() {
                        let prod = ambient_mul(ctx, v, a, b);
                        if (i == j && prod != *a) || (i != j && !prod.is_zero()) {
                            return Ok(Err(format!("θ_{} θ_{} is wrong", i + 1, j + 1)));
                        }
                    }
                }
            }
            Ok(Ok(String::new()))
        })(),
    ));

    report.push(check(
        "ideal counts",
        (|| {
            for i in 0..ctx.r() {
                let d = ctx.degree(i);
                let n = count_ideals(ctx.p, d, ctx.nu());
                if n != count_via_parts(ctx.p, d, ctx.nu()) {
                    return Ok(Err(format!("closed form and parts differ at factor {}", i + 1)));
                }
                if n <= BigUint::from(1u32 << 20) && BigUint::from(enumerate_ideals(ctx.p, d, ctx.nu()).count()) != n {
                    return Ok(Err(format!("enumeration size differs at factor {}", i + 1)));
                }
            }
            Ok(Ok(String::new()))
        })(),
    ));

    report.push(check(
        "ideal classification",
        (|| {
            let mut checked = 0;
            for ring in dec.rings(Variant::Plain) {
                let size = oracle::pair_codec(ring).size();
                if size.is_none_or(|s| s > IDEAL_SEARCH_BOUND) {
                    continue;
                }
                let found = oracle::all_ideals_bruteforce(ring, exec)?;
                let mut matched = vec![false; found.len()];
                let d = ring.residue_degree();
                for spec in enumerate_ideals(ctx.p, d, ctx.nu()) {
                    let set = oracle::closure(&spec.generators(ring)?, ring, IDEAL_SEARCH_BOUND)?;
                    if BigUint::from(set.len()) != spec.cardinality(ctx.p, d, ctx.nu()) {
                        return Ok(Err(format!("|{spec}| is wrong")));
                    }
                    match found.iter().position(|f| *f == set) {
                        Some(j) if !matched[j] => matched[j] = true,
                        _ => return Ok(Err(format!("{spec} has no unique match"))),
                    }
                }
                if matched.iter().any(|m| !m) {
                    return Ok(Err(format!("{} has unlisted ideals", ring.id())));
                }
                checked += 1;
            }
            if checked == 0 {
                return Err(Error::BoundExceeded { size: "every factor ring".into(), bound: IDEAL_SEARCH_BOUND });
            }
            Ok(Ok(format!("{checked} factor rings")))
        })(),
    ));

    let small_codes = || -> Result<Vec<CodeSpec>> {
        let ambient = oracle::word_codec(ctx.ring(), ctx.len).size();
        if ambient.is_none_or(|s| s > DUAL_BOUND) {
            return Err(Error::BoundExceeded { size: "the ambient space".into(), bound: DUAL_BOUND });
        }
        let codes: Vec<CodeSpec> = enumerate_codes(ctx, Variant::Plain).take(VERIFY_CODE_LIMIT + 1).collect();
        if codes.len() > VERIFY_CODE_LIMIT {
            return Err(Error::BoundExceeded { size: "the code list".into(), bound: VERIFY_CODE_LIMIT as u64 });
        }
        Ok(codes)
    };

    report.push(check(
        "codes are constacyclic",
        (|| {
            let codes = small_codes()?;
            let gamma = (ctx.gamma(Variant::Plain), 0);
            for code in &codes {
                let set = materialize(dec, code, cap)?;
                if BigUint::from(set.len()) != code_cardinality(ctx, code) {
                    return Ok(Err(format!("{code} has the wrong size")));
                }
                if !is_constacyclic(ctx.ring(), ctx.len, &set, gamma) {
                    return Ok(Err(format!("{code} is not constacyclic")));
                }
            }
            Ok(Ok(format!("{} codes", codes.len())))
        })(),
    ));

    let mut brute_duals: Vec<(CodeSpec, bool)> = Vec::new();
    report.push(check(
        "dual table",
        (|| {
            let codes = small_codes()?;
            for code in &codes {
                let set = materialize(dec, code, cap)?;
                let brute = oracle::dual_bruteforce(&set, ctx.ring(), ctx.len, exec)?;
                let dual = dual_code(dec, code)?;
                if materialize(dec, &dual, cap)? != brute {
                    return Ok(Err(format!("dual of {code}")));
                }
                if dual_code(dec, &dual)? != *code {
                    return Ok(Err(format!("dual of the dual of {code}")));
                }
                brute_duals.push((code.clone(), brute == set));
            }
            Ok(Ok(format!("{} codes", codes.len())))
        })(),
    ));

    report.push(check(
        "self-dual conditions",
        (|| {
            if brute_duals.is_empty() {
                small_codes()?;
            }
            let mut count = 0;
            for (code, brute) in &brute_duals {
                if is_self_dual(dec, code)? != *brute {
                    return Ok(Err(format!("{code}")));
                }
                count += *brute as usize;
            }
            let listed = enumerate_self_dual(dec, exec)?.count();
            if listed != count || BigUint::from(count) != count_self_dual(dec, exec)? {
                return Ok(Err(format!("enumeration found {listed}, brute force {count}")));
            }
            Ok(Ok(format!("{count} self-dual codes")))
        })(),
    ));

    report.push(check(
        "dual components involutive",
        (|| {
            for i in 0..ctx.r() {
                let src = RingId { factor: i, variant: Variant::Plain };
                let back = dec.mu_target(src);
                for spec in enumerate_ideals(ctx.p, ctx.degree(i), ctx.nu()).take(2000) {
                    let d = codes::dual_component(dec, src, &spec)?;
                    if codes::dual_component(dec, back, &d)? != spec {
                        return Ok(Err(format!("{spec} at factor {}", i + 1)));
                    }
                }
            }
            Ok(Ok(String::new()))
        })(),
    ));

    report.push(Check {
        name: "elapsed",
        status: Status::Pass,
        detail: format!("{:.2?}", started.elapsed()),
    });
    report
}
