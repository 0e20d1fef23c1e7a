use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use qinv_core::classify::{self, CensusTables};
use qinv_core::construct::{self, CaseTag};
use qinv_core::eform::{self, MultiPoly};
use qinv_core::verify::{self, Level};
use qinv_core::{certify, linspace, Error, FieldCtx, FieldElem, Subspace};

/// Inversion and F_q-subspaces of finite fields.
///
/// Fields are written `p^k:M` for F_{p^M} with working subfield F_{p^k}.
/// Elements are comma-separated base-p digits, constant term first; subspaces
/// and coefficient lists separate elements with `;`.
#[derive(Parser)]
#[command(name = "qinv", version)]
struct Cli {
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Write a run manifest (JSON) to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a field: modulus, generator, subfield.
    Field {
        #[arg(long)]
        field: String,
    },
    /// Intersection size, bounds and certificate for a pair (A, B).
    Certify(CertifyArgs),
    /// Build the special pair for one of the four cases.
    Construct(ConstructArgs),
    /// Exhaustive censuses and orbit counts.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// The multivariate form E.
    #[command(subcommand)]
    Eform(EformCmd),
    /// Run the acceptance checks and print a pass/fail table.
    VerifyAll {
        #[arg(long, value_enum, default_value_t = LevelArg::Smoke)]
        level: LevelArg,
    },
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    field: String,
    #[arg(long = "A")]
    a: String,
    #[arg(long = "B")]
    b: String,
    /// Shift of A; with --beta, certifies (A + alpha)^{-1} ∩ (B + beta).
    #[arg(long, requires = "beta")]
    alpha: Option<String>,
    #[arg(long, requires = "alpha")]
    beta: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    field: String,
    /// 1 external, 2 secant, 3 tangent, 4 other.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    case: u8,
    #[arg(long, requires = "b")]
    a: Option<String>,
    #[arg(long, requires = "a")]
    b: Option<String>,
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// CSV rows `count,pairs` over all ordered pairs of d-subspaces of F_{q^e}.
    Census {
        /// Defaults to `p^k:4k` for the given `--q`.
        #[arg(long, required_unless_present = "q")]
        field: Option<String>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        e: usize,
        /// Worker threads; output does not depend on it.
        #[arg(long, env = "QINV_JOBS")]
        jobs: Option<usize>,
    },
    /// Equivalence classes of special pairs in F_{q^4} with a given count.
    Orbits {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        target: u64,
    },
}

#[derive(Subcommand)]
enum EformCmd {
    /// Expand E from coefficient lists.
    Build(EArgs),
    /// Monomial part, binomial linear factors and shape of E.
    Factors(EArgs),
    /// Check both exceptional factorization identities over F_p.
    Identities {
        #[arg(long)]
        p: u64,
    },
    /// F_q-valued coordinates on ker B and the transformed E.
    Coords {
        #[arg(long)]
        field: String,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
}

#[derive(Args)]
struct EArgs {
    #[arg(long)]
    field: String,
    /// `a_0;...;a_{n-1}`.
    #[arg(long)]
    a: String,
    /// `b_0;...;b_{n-1}`.
    #[arg(long)]
    b: String,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true, value_parser = parse_sign)]
    sign: i8,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Smoke,
    Desk,
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("sign must be 1 or -1, got {s}")),
    }
}

#[derive(Serialize)]
struct RunManifest {
    field: Option<String>,
    argv: Vec<String>,
    seed: u64,
    version: &'static str,
    wall_clock_seconds: f64,
}

enum Outcome {
    Ok,
    Assertion,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IdentityFailure(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn lit(ctx: &FieldCtx, e: FieldElem) -> String {
    ctx.format_elem(e)
}

fn lits(ctx: &FieldCtx, es: &[FieldElem]) -> Vec<String> {
    es.iter().map(|&e| lit(ctx, e)).collect()
}

fn terms_json(ctx: &FieldCtx, e: &MultiPoly) -> Value {
    Value::Array(e.format(ctx).into_iter().map(|(exp, c)| json!({ "exponent": exp, "coeff": c })).collect())
}

fn parse_list(ctx: &FieldCtx, s: &str) -> Res<Vec<FieldElem>> {
    Ok(s.split(';').map(|t| ctx.parse_elem(t)).collect::<Result<Vec<_>, _>>()?)
}

fn emit(v: &Value) {
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_field(spec: &str) -> Res<Outcome> {
    let f = FieldCtx::parse(spec)?;
    emit(&json!({
        "field": f.spec_string(),
        "p": f.p(),
        "k": f.k(),
        "q": f.q(),
        "degree": f.degree(),
        "size": f.size(),
        "fq_dim": f.fq_dim(),
        "modulus": f.modulus(),
        "generator": lit(&f, f.generator()),
        "fq_basis": lits(&f, f.fq_basis()),
    }));
    Ok(Outcome::Ok)
}

fn cmd_certify(args: &CertifyArgs) -> Res<Outcome> {
    let f = FieldCtx::parse(&args.field)?;
    let a = Subspace::parse(&f, &args.a)?;
    let b = Subspace::parse(&f, &args.b)?;
    if let (Some(al), Some(be)) = (&args.alpha, &args.beta) {
        let (alpha, beta) = (f.parse_elem(al)?, f.parse_elem(be)?);
        let qa = linspace::qpoly_from_subspace(&f, &a)?;
        let qb = linspace::qpoly_from_subspace(&f, &b)?;
        let w = certify::affine_intersection_bruteforce(&f, &a, alpha, &b, beta)?;
        let p = certify::affine_certificate(&f, &qa, alpha, &qb, beta)?;
        let contained = w.iter().all(|&x| p.eval(&f, x).is_zero());
        emit(&json!({
            "count": w.len(),
            "certificate_degree": p.degree(),
            "degree_bound": 2 * f.q().pow((a.dim() as u32).saturating_sub(1)),
            "certificate_ok": contained,
            "witnesses": lits(&f, &w),
        }));
        return Ok(if contained { Outcome::Ok } else { Outcome::Assertion });
    }
    let r = certify::verify_bounds(&f, &a, &b)?;
    emit(&json!({
        "count": r.count,
        "bounds": { "general": r.bound_general, "q2": r.bound_q2, "subfield_case": r.subfield_case, "within": r.within_bounds },
        "tight": r.tight,
        "c_degree": r.c_degree,
        "certificate_ok": r.certificate_ok,
        "witnesses": lits(&f, &r.witnesses),
    }));
    Ok(if r.certificate_ok && r.within_bounds { Outcome::Ok } else { Outcome::Assertion })
}

fn cmd_construct(args: &ConstructArgs) -> Res<Outcome> {
    let f = FieldCtx::parse(&args.field)?;
    let case = CaseTag::from_number(args.case)?;
    let (a, b) = match (&args.a, &args.b) {
        (Some(a), Some(b)) => (f.parse_elem(a)?, f.parse_elem(b)?),
        _ => construct::find_case_parameters(&f, case)?,
    };
    let (pair, sa, sb) = construct::make_special_pair(&f, 3, a, b)?;
    if pair.case_tag != Some(case) {
        return Err(Failure::Usage(format!("parameters fall in case {:?}, not {case:?}", pair.case_tag)));
    }
    let measured = linspace::inverse_intersection_bruteforce(&f, &sa, &sb)?.count as u64;
    let g = construct::geometry_report(&f, &pair, &sb)?;
    let ok = pair.prediction.admits(measured);
    emit(&json!({
        "q": pair.q,
        "d": pair.d,
        "case": case,
        "a": lit(&f, a),
        "b": lit(&f, b),
        "A": sa.format(&f),
        "B": sb.format(&f),
        "predicted": pair.prediction,
        "measured": measured,
        "geometry": {
            "line_form": lits(&f, &g.line_form),
            "conic_form": lits(&f, &g.conic_form),
            "nonsingular": g.nonsingular,
            "line_position": g.line_position,
            "point_counts": g.point_counts,
            "ratio": g.ratio,
        },
    }));
    Ok(if ok { Outcome::Ok } else { Outcome::Assertion })
}

/// `p^k` for a prime power `q`.
fn prime_power(q: u64) -> Res<(u64, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(|| Failure::Usage(format!("{q} is not a prime power")))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    if r != 1 {
        return Err(Failure::Usage(format!("{q} is not a prime power")));
    }
    Ok((p, k))
}

fn default_field(q: u64) -> Res<FieldCtx> {
    let (p, k) = prime_power(q)?;
    Ok(FieldCtx::new(p, 4 * k, k)?)
}

fn cmd_census(f: &FieldCtx, d: usize, e: usize, jobs: Option<usize>) -> Res<Outcome> {
    let subspaces = classify::enumerate_subspaces(f, d, e)?;
    let tables = CensusTables::new(f, subspaces)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| Failure::Internal(e.to_string()))?;
    let counts = pool.install(|| {
        (0..tables.len())
            .into_par_iter()
            .map(|i| tables.tally_row(i))
            .reduce(BTreeMap::new, |mut x, y| {
                classify::merge_tally(&mut x, &y);
                x
            })
    });
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(["count", "pairs"]).map_err(|e| Failure::Internal(e.to_string()))?;
    for (c, n) in &counts {
        w.serialize((c, n)).map_err(|e| Failure::Internal(e.to_string()))?;
    }
    w.flush().map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Outcome::Ok)
}

fn cmd_classify(c: &ClassifyCmd) -> Res<Outcome> {
    match c {
        ClassifyCmd::Census { field, q, d, e, jobs } => {
            let f = match (field, q) {
                (Some(s), _) => FieldCtx::parse(s)?,
                (None, Some(q)) => default_field(*q)?,
                (None, None) => unreachable!("clap requires one"),
            };
            cmd_census(&f, *d, *e, *jobs)
        }
        ClassifyCmd::Orbits { q, target } => {
            let f = default_field(*q)?;
            let r = classify::orbit_census(&f, *target)?;
            let classes: Vec<Value> = r
                .classes_by_action
                .iter()
                .map(|c| {
                    json!({ "a": lit(&f, c.a), "b": lit(&f, c.b), "members": c.members, "self_paired": c.self_paired, "count": c.count })
                })
                .collect();
            emit(&json!({
                "q": r.q,
                "target": r.target,
                "case": r.case,
                "parameter_pairs": r.parameter_pairs,
                "classes": r.classes,
                "classes_by_action": classes,
                "theorem_range": r.theorem_range,
            }));
            Ok(Outcome::Ok)
        }
    }
}

fn cmd_eform(c: &EformCmd) -> Res<Outcome> {
    match c {
        EformCmd::Build(x) | EformCmd::Factors(x) => {
            let f = FieldCtx::parse(&x.field)?;
            let (a, b) = (parse_list(&f, &x.a)?, parse_list(&f, &x.b)?);
            let e = eform::build_e(&f, &a, &b, x.sign)?;
            if matches!(c, EformCmd::Build(_)) {
                emit(&json!({ "n": e.nvars(), "terms": terms_json(&f, &e), "property": eform::check_property(&e) }));
                return Ok(Outcome::Ok);
            }
            if e.is_zero() {
                return Err(Failure::Usage("E is identically zero".into()));
            }
            let r = eform::factor_report(&f, &e)?;
            let factors: Vec<Value> = r
                .binomial_linear_factors
                .iter()
                .map(|b| json!({ "i": b.i, "j": b.j, "alpha": lit(&f, b.alpha), "beta": lit(&f, b.beta) }))
                .collect();
            let ok = r.expand(&f) == e;
            emit(&json!({
                "monomial_part": r.monomial_part,
                "binomial_linear_factors": factors,
                "residual": terms_json(&f, &r.residual),
                "shape": r.shape,
                "r": r.r,
                "n": r.n,
                "reexpands": ok,
            }));
            Ok(if ok { Outcome::Ok } else { Outcome::Assertion })
        }
        EformCmd::Identities { p } => {
            let [first, second] = eform::verify_exceptional_identities(*p)?;
            emit(&json!({ "p": p, "exc1": first, "exc2": second }));
            Ok(if first && second { Outcome::Ok } else { Outcome::Assertion })
        }
        EformCmd::Coords { field, a, b } => {
            let f = FieldCtx::parse(field)?;
            let qa = linspace::qpoly_from_subspace(&f, &Subspace::parse(&f, a)?)?;
            let qb = linspace::qpoly_from_subspace(&f, &Subspace::parse(&f, b)?)?;
            let cc = eform::coordinate_change(&f, &qb)?;
            let e = eform::e_of_pair(&f, &qa, &qb)?;
            let ez = cc.transform(&f, &e);
            emit(&json!({
                "gammas": lits(&f, &cc.gammas),
                "functionals": cc.functionals.iter().map(|r| lits(&f, r)).collect::<Vec<_>>(),
                "transition": cc.transition.iter().map(|r| lits(&f, r)).collect::<Vec<_>>(),
                "e": terms_json(&f, &e),
                "e_in_z": terms_json(&f, &ez),
                "defined_over_fq": eform::multipoly_defined_over_fq(&f, &ez),
            }));
            Ok(Outcome::Ok)
        }
    }
}

fn cmd_verify(level: LevelArg, seed: u64) -> Res<Outcome> {
    let level = match level {
        LevelArg::Smoke => Level::Smoke,
        LevelArg::Desk => Level::Desk,
    };
    let results = verify::run(level, seed, |r| {
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{}", r.line());
        let _ = out.flush();
    })?;
    let failed = results.iter().filter(|r| !r.pass).count();
    let _ = writeln!(std::io::stdout().lock(), "{} of {} passed", results.len() - failed, results.len());
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::Assertion })
}

fn field_of(c: &Command) -> Option<String> {
    match c {
        Command::Field { field } => Some(field.clone()),
        Command::Certify(a) => Some(a.field.clone()),
        Command::Construct(a) => Some(a.field.clone()),
        Command::Classify(ClassifyCmd::Census { field, .. }) => field.clone(),
        Command::Eform(EformCmd::Build(a) | EformCmd::Factors(a)) => Some(a.field.clone()),
        Command::Eform(EformCmd::Coords { field, .. }) => Some(field.clone()),
        _ => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let res = match &cli.command {
        Command::Field { field } => cmd_field(field),
        Command::Certify(a) => cmd_certify(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Classify(c) => cmd_classify(c),
        Command::Eform(c) => cmd_eform(c),
        Command::VerifyAll { level } => cmd_verify(*level, cli.seed),
    };
    if let Some(path) = &cli.manifest {
        let m = RunManifest {
            field: field_of(&cli.command),
            argv: std::env::args().collect(),
            seed: cli.seed,
            version: env!("CARGO_PKG_VERSION"),
            wall_clock_seconds: start.elapsed().as_secs_f64(),
        };
        let body = serde_json::to_string_pretty(&m).expect("serializable");
        if let Err(e) = std::fs::write(path, body) {
            eprintln!("error: cannot write manifest {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match res {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Assertion) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
