mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quot_dt::algebra::{parse_rational, CyclotomicField, Rational, ToJson, TruncatedSeries};
use quot_dt::characters::tvir;
use quot_dt::dt::{self, VerificationReport};
use quot_dt::measures::{random_eval_point, random_linear_point, AnyEvalPoint, LinearLiteral, LinearPoint, PointLiteral};
use quot_dt::partitions::{enumerate_colored, ColoredPartition};
use quot_dt::series::{dtell_closed, dtmot_closed};
use quot_dt::toric::{self, ToricData};

use output::{Format, Output};

#[derive(Parser)]
#[command(name = "quotdt", version, about = "Higher-rank DT partition functions of C^3 by exact localization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json, global = true)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List the r-colored plane partitions of size n.
    Enumerate {
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Print only the number of partitions.
        #[arg(long)]
        count_only: bool,
    },
    /// The virtual tangent character of a colored partition read from a JSON file.
    Tvir {
        #[arg(long)]
        input: PathBuf,
    },
    /// K-theoretic series by localization.
    Dtk {
        #[command(flatten)]
        series: SeriesArgs,
        /// JSON point: {"thalf": [..], "whalf": [..], "cyclotomic_order": m}.
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Cohomological series by localization.
    Dtcoh {
        #[command(flatten)]
        series: SeriesArgs,
        /// Equivariant parameters s1,s2,s3.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        s: Option<Vec<String>>,
        /// Framing parameters v1,..,vr (default v_j = j/101).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        v: Option<Vec<String>>,
        /// JSON point: {"s": [..], "v": [..]}.
        #[arg(long, conflicts_with = "s")]
        point: Option<PathBuf>,
    },
    /// Elliptic series by localization.
    Dtell {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 6)]
        p_order: usize,
        /// Restrict to (t1 t2 t3)^{1/2} = exp(pi i k / r) at a random point.
        #[arg(long, conflicts_with = "point")]
        k: Option<usize>,
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Closed-form motivic series.
    Dtmot {
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, visible_alias = "q-order", default_value_t = 4)]
        order: usize,
    },
    /// Global series of a toric 3-fold and the gluing check.
    Toric {
        /// Toric fixed-point data (JSON).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, visible_alias = "q-order", default_value_t = 3)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run one verification or all of them.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Truncation order in q.
    #[arg(long, visible_alias = "q-order")]
    order: Option<usize>,
    /// Seed for randomly drawn points.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    All,
    Kth,
    Framing,
    Product,
    Coh,
    Cy,
    Lambda,
    FramingExample,
    Bseries,
    EllipticExample,
    EllipticRestriction,
    Motivic,
    Gluing,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    /// Rank; `all` covers its own range of ranks.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, visible_alias = "q-order")]
    order: Option<usize>,
    #[arg(long, default_value_t = 6)]
    p_order: usize,
    #[arg(long, default_value_t = 4)]
    b_order: usize,
    /// Largest partition size for the b-series check.
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Toric data for `gluing` (default: the bundled P^3 and (P^1)^3).
    #[arg(long)]
    input: Option<PathBuf>,
}

type Fallible<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    match run(cli.command) {
        Ok(out) => {
            if let Err(e) = out.emit(format) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Fallible<T> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn fractions(values: &[String], what: &str) -> Fallible<Vec<Rational>> {
    values
        .iter()
        .map(|s| parse_rational(s.trim()).ok_or_else(|| format!("{what}: cannot parse {s:?} as a fraction")))
        .collect()
}

fn coefficients<R: ToJson + quot_dt::algebra::Ring>(s: &TruncatedSeries<R>) -> Vec<Value> {
    s.coeffs().iter().map(ToJson::to_json).collect()
}

fn run(command: Command) -> Fallible<Output> {
    match command {
        Command::Enumerate { r, n, count_only } => {
            let parts: Vec<ColoredPartition> = enumerate_colored(r, n).map_err(err)?.collect();
            let params = json!({"r": r, "n": n});
            if count_only {
                return Ok(Output::count("enumerate", params, parts.len()));
            }
            let listed = parts.iter().map(|p| serde_json::to_value(p).unwrap_or(Value::Null)).collect();
            Ok(Output::new("enumerate", params).with("count", json!(parts.len())).with_rows("partitions", listed))
        }
        Command::Tvir { input } => {
            let p: ColoredPartition = read_json(&input)?;
            let v = tvir(&p, None).map_err(err)?;
            let terms = v.dump(p.rank()).iter().map(|t| serde_json::to_value(t).unwrap_or(Value::Null)).collect();
            Ok(Output::new("tvir", json!({"partition": p, "r": p.rank()})).with_rows("character", terms))
        }
        Command::Dtk { series, point } => dtk(series, point),
        Command::Dtcoh { series, s, v, point } => dtcoh(series, s, v, point),
        Command::Dtell { series, p_order, k, point } => dtell(series, p_order, k, point),
        Command::Dtmot { r, order } => {
            if r == 0 {
                return Err("the rank r must be positive".into());
            }
            let s = dtmot_closed(r, order);
            Ok(Output::new("dtmot", json!({"r": r, "order": order})).with_coefficients(coefficients(&s)))
        }
        Command::Toric { input, r, order, trials, seed } => {
            let data = toric::load_toric(&input).map_err(err)?;
            let chi = toric::chern_integral_sampled(&data, seed).map_err(err)?;
            let global = toric::global_dt(&data, r, order, seed).map_err(err)?;
            let report = toric::verify_gluing(&data, r, order, trials, seed).map_err(err)?;
            let params = json!({"input": input.display().to_string(), "r": r, "order": order, "trials": trials, "seed": seed});
            Ok(Output::new("toric", params)
                .with("chern_integral", json!(chi))
                .with_coefficients(coefficients(&global))
                .with_report(report))
        }
        Command::Verify(args) => verify(args),
    }
}

fn dtk(args: SeriesArgs, point: Option<PathBuf>) -> Fallible<Output> {
    let order = args.order.unwrap_or(4);
    let params = json!({"r": args.r, "order": order, "seed": args.seed});
    let out = Output::new("dtk", params);
    let pt = match point {
        Some(path) => read_json::<PointLiteral>(&path)?.parse().map_err(err)?,
        None => AnyEvalPoint::Rational(random_eval_point(&mut dt::rng(args.seed), args.r)),
    };
    Ok(match pt {
        AnyEvalPoint::Rational(pt) => {
            let s = dt::dtk_localization(args.r, order, &pt).map_err(err)?;
            out.with("point", pt.to_json()).with_coefficients(coefficients(&s))
        }
        AnyEvalPoint::Cyclotomic(pt) => {
            let s = dt::dtk_localization(args.r, order, &pt).map_err(err)?;
            out.with("point", pt.to_json_with_order()).with_coefficients(coefficients(&s))
        }
    })
}

fn dtcoh(args: SeriesArgs, s: Option<Vec<String>>, v: Option<Vec<String>>, point: Option<PathBuf>) -> Fallible<Output> {
    let order = args.order.unwrap_or(4);
    let r = args.r;
    let default_v = || (1..=r as i64).map(|j| Rational::new(j.into(), 101.into())).collect::<Vec<_>>();
    let pt = match (point, s) {
        (Some(path), _) => read_json::<LinearLiteral>(&path)?.parse().map_err(err)?,
        (None, Some(s)) => {
            let s = fractions(&s, "--s")?;
            let s: [Rational; 3] = s.try_into().map_err(|_| "--s needs exactly three values".to_string())?;
            let v = match &v {
                Some(v) => fractions(v, "--v")?,
                None => default_v(),
            };
            LinearPoint::new(s, v)
        }
        (None, None) => {
            let mut pt = random_linear_point(&mut dt::rng(args.seed), r);
            if let Some(v) = &v {
                pt.v = fractions(v, "--v")?;
            }
            pt
        }
    };
    let series = dt::dtcoh_localization(r, order, &pt, None).map_err(err)?;
    let params = json!({"r": r, "order": order, "seed": args.seed});
    Ok(Output::new("dtcoh", params).with("point", pt.to_json()).with_coefficients(coefficients(&series)))
}

fn dtell(args: SeriesArgs, p_order: usize, k: Option<usize>, point: Option<PathBuf>) -> Fallible<Output> {
    let order = args.order.unwrap_or(3);
    let r = args.r;
    let params = json!({"r": r, "order": order, "p_order": p_order, "k": k, "seed": args.seed});
    let out = Output::new("dtell", params);
    if let Some(k) = k {
        if r == 0 {
            return Err("the rank r must be positive".into());
        }
        let field = CyclotomicField::new(2 * r as u32).map_err(err)?;
        let pt = dt::random_root_point(&mut dt::rng(args.seed), &field, r, k);
        let s = dt::dtell_localization(r, order, p_order, &pt).map_err(err)?;
        let closed = dtell_closed(r, k, order).map_err(err)?;
        return Ok(out
            .with("point", pt.to_json_with_order())
            .with("closed_form", json!(coefficients(&closed)))
            .with_coefficients(coefficients(&s)));
    }
    let pt = match point {
        Some(path) => read_json::<PointLiteral>(&path)?.parse().map_err(err)?,
        None => AnyEvalPoint::Rational(random_eval_point(&mut dt::rng(args.seed), r)),
    };
    Ok(match pt {
        AnyEvalPoint::Rational(pt) => {
            let s = dt::dtell_localization(r, order, p_order, &pt).map_err(err)?;
            out.with("point", pt.to_json()).with_coefficients(coefficients(&s))
        }
        AnyEvalPoint::Cyclotomic(pt) => {
            let s = dt::dtell_localization(r, order, p_order, &pt).map_err(err)?;
            out.with("point", pt.to_json_with_order()).with_coefficients(coefficients(&s))
        }
    })
}

fn gluing_inputs(input: &Option<PathBuf>) -> Fallible<Vec<(String, ToricData)>> {
    match input {
        Some(path) => Ok(vec![(path.display().to_string(), toric::load_toric(path).map_err(err)?)]),
        None => Ok(vec![
            ("P3".into(), ToricData::parse(toric::P3).map_err(err)?),
            ("P1xP1xP1".into(), ToricData::parse(toric::P1_CUBED).map_err(err)?),
        ]),
    }
}

fn verify(a: VerifyArgs) -> Fallible<Output> {
    let order = a.order.unwrap_or(4);
    let ell_order = a.order.unwrap_or(3).min(3);
    let (t, seed) = (a.trials, a.seed);
    let ranks = |default: &[usize]| a.r.map(|r| vec![r]).unwrap_or_else(|| default.to_vec());
    let mut reports: Vec<VerificationReport> = Vec::new();
    let mut push = |r: quot_dt::Result<VerificationReport>| -> Fallible<()> {
        reports.push(r.map_err(err)?);
        Ok(())
    };
    let all = matches!(a.check, Check::All);
    let wants = |c: Check| all || std::mem::discriminant(&a.check) == std::mem::discriminant(&c);
    if wants(Check::Kth) {
        for r in ranks(&[1, 2, 3]) {
            push(dt::verify_kth_closed(r, order, t, seed))?;
        }
    }
    if wants(Check::Framing) {
        for r in ranks(&[2, 3]) {
            push(dt::verify_framing_independence(r, order, t, seed))?;
        }
    }
    if wants(Check::Product) {
        for r in ranks(&[2, 3]) {
            push(dt::verify_product_formula(r, order, t, seed))?;
        }
    }
    if wants(Check::Coh) {
        for r in ranks(&[1, 2, 3]) {
            push(dt::verify_coh_closed(r, order, t, seed))?;
        }
    }
    if wants(Check::Cy) {
        for r in ranks(&[1, 2, 3]) {
            push(dt::verify_cy_specialization(r, order, t, seed))?;
        }
    }
    if wants(Check::Lambda) {
        for r in ranks(&[1, 2, 3]) {
            push(dt::verify_lambda_independence(r, order, t, seed))?;
        }
    }
    if wants(Check::FramingExample) {
        push(dt::verify_framing_example(t, seed))?;
    }
    if wants(Check::Bseries) {
        for r in ranks(&[1, 2]) {
            push(dt::verify_bseries_limit(r, a.n, a.b_order, t, seed))?;
        }
    }
    if wants(Check::EllipticExample) {
        let ks: Vec<i64> = match a.k {
            Some(k) => vec![k as i64],
            None => (0..6).collect(),
        };
        for k in ks {
            push(dt::verify_elliptic_example(k, a.p_order))?;
        }
    }
    if wants(Check::EllipticRestriction) {
        let cases: Vec<(usize, usize)> = match (a.r, a.k) {
            (Some(r), Some(k)) => vec![(r, k)],
            (None, None) => vec![(2, 1), (2, 2), (3, 3)],
            _ => return Err("elliptic-restriction needs both --r and --k, or neither".into()),
        };
        for (r, k) in cases {
            push(dt::verify_elliptic_restriction(r, k, ell_order, a.p_order, t, seed))?;
        }
    }
    if wants(Check::Motivic) {
        for r in ranks(&[1, 2, 3]) {
            push(dt::verify_motivic_factorization(r, order))?;
        }
    }
    if wants(Check::Gluing) {
        for (_, data) in gluing_inputs(&a.input)? {
            for r in ranks(&[1, 2]) {
                push(toric::verify_gluing(&data, r, ell_order, t, seed))?;
            }
        }
    }
    let name = serde_json::to_value(a.check.to_possible_value().map(|v| v.get_name().to_string())).unwrap_or(Value::Null);
    let params = json!({
        "check": name,
        "r": a.r,
        "order": order,
        "p_order": a.p_order,
        "b_order": a.b_order,
        "n": a.n,
        "k": a.k,
        "trials": t,
        "seed": seed,
    });
    Ok(Output::new("verify", params).with_reports(reports))
}
