//! Command-line front end: exact polynomial families, coefficient tables,
//! closed-form integrals, special values, Mahler measures, and the
//! verification batteries. Batch only; all state arrives via flags, so any
//! invocation is reproducible bit for bit.
//!
//! Exit codes: 0 success, 1 computation or verification failure, 2 usage.

use clap::{Args, Parser, Subcommand};
use qmahler::closedforms::{self, IntegralParams};
use qmahler::coeffs::{build_tables, CoeffKind};
use qmahler::lvalues::{self, Identity, IdentityCoeff};
use qmahler::measure::{measure_expression, Basis};
use qmahler::numbers::{PrecisionContext, Rational};
use qmahler::oracle::{verify_suite, Suite};
use qmahler::recpoly::{Family, PolynomialTables};
use qmahler::series::{extract_family, extract_family_convolution, AltFamily, ExtractionMethod};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qmahler",
    about = "Exact Mahler measures of the family y + prod((z_j + w)/(z_j + 1)) in zeta and L-values",
    version
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Decimal digits for numeric output (minimum 10)
    #[arg(long, global = true, default_value_t = 30)]
    digits: u32,

    /// Seed for the randomized verification batteries
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a recursively defined polynomial R, S, P, Q, Y or Z
    Poly(PolyArgs),
    /// Print a series-defined polynomial A..O
    Altpoly(AltpolyArgs),
    /// Print the coefficient tables a, b, c, d up to row n
    Coeffs(CoeffsArgs),
    /// Evaluate one of the closed-form log-power integrals
    Integral(IntegralArgs),
    /// Special values: zeta at odd integers, L(chi_-3, s), named identities
    Special(SpecialArgs),
    /// The exact Mahler measure m(Q_n) and its numeric value
    Measure(MeasureArgs),
    /// Render the first rows of the measure table
    Table(TableArgs),
    /// Run verification batteries
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PolyArgs {
    /// Family letter: R, S, P, Q, Y or Z
    #[arg(long)]
    family: String,
    #[arg(long)]
    k: u32,
}

#[derive(Args)]
struct AltpolyArgs {
    /// Family letter: A, B, C, D, E, F, G, K, L, U, V, W, N or O
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: usize,
    /// Extraction route: series (all families) or convolution (A, B only)
    #[arg(long, default_value = "series")]
    method: String,
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct IntegralArgs {
    /// f1, f2, g1, g2, fsum or gsum
    #[arg(long)]
    which: String,
    /// First parameter (rational, e.g. 1, 3/2 or 0.7)
    #[arg(long)]
    a: String,
    /// Second parameter
    #[arg(long)]
    b: String,
    #[arg(long)]
    k: u32,
}

#[derive(Args)]
struct SpecialArgs {
    /// Odd integer >= 3: print zeta at it
    #[arg(long)]
    zeta: Option<u32>,
    /// Integer >= 2: print L(chi_-3, s)
    #[arg(long)]
    lchi3: Option<u32>,
    /// Named identity (li-one, li-minus-one, li-omega-sum,
    /// li-minus-omega-sum, l-omega-diff, l-minus-omega-diff)
    #[arg(long)]
    identity: Option<String>,
    /// Identity parameter h
    #[arg(long)]
    h: Option<u32>,
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long)]
    n: u32,
    /// critical or derivative
    #[arg(long, default_value = "critical")]
    basis: String,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long = "max-n")]
    max_n: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// all, polys, integrals, identities, measures or torus
    #[arg(long, default_value = "all")]
    suite: String,
    /// Baseline relative tolerance for quadrature comparisons
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.digits < 10 {
        eprintln!("error: --digits must be at least 10");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn usage(msg: &str) -> qmahler::Error {
    qmahler::Error::Domain(msg.to_string())
}

fn run(cli: &Cli) -> Result<ExitCode, qmahler::Error> {
    let ctx = PrecisionContext::new(cli.digits);
    match &cli.cmd {
        Cmd::Poly(args) => {
            let family = Family::parse(&args.family)
                .ok_or_else(|| usage("unknown family (expected one of R,S,P,Q,Y,Z)"))?;
            let tables = PolynomialTables::new();
            let p = tables.get_poly(family, args.k);
            if cli.json {
                let mut obj = p.to_json();
                obj["family"] = family.as_str().into();
                obj["k"] = args.k.into();
                println!("{obj}");
            } else {
                println!("{p}");
            }
        }
        Cmd::Altpoly(args) => {
            let family = AltFamily::parse(&args.family)
                .ok_or_else(|| usage("unknown family (expected one of A..G, K, L, N, O, U..W)"))?;
            let (p, method) = match args.method.as_str() {
                "series" => (extract_family(family, args.m)?, ExtractionMethod::Series),
                "convolution" => (
                    extract_family_convolution(family, args.m)?,
                    ExtractionMethod::Convolution,
                ),
                _ => return Err(usage("--method must be series or convolution")),
            };
            if cli.json {
                let mut obj = p.to_json();
                obj["family"] = family.as_str().into();
                obj["m"] = args.m.into();
                obj["method"] = match method {
                    ExtractionMethod::Series => "series".into(),
                    ExtractionMethod::Convolution => "convolution".into(),
                };
                println!("{obj}");
            } else {
                println!("{p}");
            }
        }
        Cmd::Coeffs(args) => {
            let polys = PolynomialTables::new();
            let table = build_tables(&polys, args.n)?;
            if cli.json {
                let row = |kind: CoeffKind, start: u32, d_row: bool| -> serde_json::Value {
                    let rows: Vec<serde_json::Value> = (start..=args.n)
                        .map(|n| {
                            let upper = if d_row { n + 1 } else { n };
                            let cells: Vec<_> = (0..upper)
                                .filter_map(|j| table.rows(kind).get(&(n, j)))
                                .map(|v| v.to_json())
                                .collect();
                            serde_json::Value::Array(cells)
                        })
                        .collect();
                    serde_json::Value::Array(rows)
                };
                let obj = serde_json::json!({
                    "max_n": args.n,
                    "a": row(CoeffKind::A, 1, false),
                    "b": row(CoeffKind::B, 1, false),
                    "c": row(CoeffKind::C, 1, false),
                    "d": row(CoeffKind::D, 0, true),
                });
                println!("{obj}");
            } else {
                for (kind, label) in [
                    (CoeffKind::A, "a"),
                    (CoeffKind::B, "b"),
                    (CoeffKind::C, "c"),
                    (CoeffKind::D, "d"),
                ] {
                    for (&(n, j), v) in table.rows(kind) {
                        println!("{label}[{n},{j}] = {v}");
                    }
                }
            }
        }
        Cmd::Integral(args) => {
            let a = Rational::parse(&args.a).ok_or_else(|| usage("cannot parse --a"))?;
            let b = Rational::parse(&args.b).ok_or_else(|| usage("cannot parse --b"))?;
            let p = IntegralParams::new(a, b, args.k)?;
            let polys = PolynomialTables::new();
            let form = match args.which.as_str() {
                "f1" => closedforms::f1(&polys, &p)?,
                "f2" => closedforms::f2(&polys, &p)?,
                "g1" => closedforms::g1(&polys, &p)?,
                "g2" => closedforms::g2(&polys, &p)?,
                "fsum" => closedforms::f_sum(&polys, &p)?,
                "gsum" => closedforms::g_sum(&polys, &p)?,
                _ => return Err(usage("--which must be one of f1,f2,g1,g2,fsum,gsum")),
            };
            let numeric = form.eval(&ctx).to_decimal(cli.digits);
            if cli.json {
                let terms: Vec<_> = form
                    .terms()
                    .iter()
                    .map(|(&(i, j), c)| {
                        serde_json::json!({
                            "log_a_power": i,
                            "log_b_power": j,
                            "pi_power": form.k() + 1 - i - j,
                            "coeff": c.to_json(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "which": args.which,
                        "k": args.k,
                        "terms": terms,
                        "numeric": numeric,
                    })
                );
            } else {
                println!("{} = {}", render_logpi(&form), numeric);
            }
        }
        Cmd::Special(args) => {
            match (&args.zeta, &args.lchi3, &args.identity) {
                (Some(m), None, None) => {
                    let v = lvalues::zeta_odd(*m, &ctx)?;
                    let s = v.to_decimal(cli.digits);
                    if cli.json {
                        println!("{}", serde_json::json!({"zeta": m, "value": s}));
                    } else {
                        println!("zeta({m}) = {s}");
                    }
                }
                (None, Some(s), None) => {
                    let v = lvalues::l_chi3(*s, &ctx)?;
                    let d = v.to_decimal(cli.digits);
                    if cli.json {
                        println!("{}", serde_json::json!({"lchi3": s, "value": d}));
                    } else {
                        println!("L(chi_-3, {s}) = {d}");
                    }
                }
                (None, None, Some(name)) => {
                    let id = Identity::parse(name)
                        .ok_or_else(|| qmahler::Error::UnknownIdentity(name.clone()))?;
                    let h = args.h.ok_or_else(|| usage("--identity requires --h"))?;
                    let coeff = lvalues::reduce_identity(id, h)?;
                    let weight = lvalues::identity_weight(id, h);
                    match coeff {
                        IdentityCoeff::Zeta(c) => {
                            if cli.json {
                                println!(
                                    "{}",
                                    serde_json::json!({
                                        "identity": id.name(), "h": h,
                                        "kind": "zeta", "weight": weight,
                                        "coeff": c.json_str(),
                                    })
                                );
                            } else {
                                println!("combination = ({c}) * zeta({weight})");
                            }
                        }
                        IdentityCoeff::LTimesI(c) => {
                            if cli.json {
                                println!(
                                    "{}",
                                    serde_json::json!({
                                        "identity": id.name(), "h": h,
                                        "kind": "L", "weight": weight,
                                        "coeff": c.to_json(),
                                    })
                                );
                            } else {
                                println!("combination = ({c}) * i * L(chi_-3, {weight})");
                            }
                        }
                    }
                }
                _ => return Err(usage("pass exactly one of --zeta, --lchi3, --identity")),
            }
        }
        Cmd::Measure(args) => {
            let basis = Basis::parse(&args.basis)
                .ok_or_else(|| usage("--basis must be critical or derivative"))?;
            let polys = PolynomialTables::new();
            let table = build_tables(&polys, args.n.div_euclid(2))?;
            let expr = measure_expression(&table, args.n, basis)?;
            let numeric = expr.eval(&ctx)?.to_decimal(cli.digits);
            if cli.json {
                println!("{}", expr.to_json(Some(numeric)));
            } else {
                println!("m(Q_{}) = {} = {}", args.n, expr.render_text(), numeric);
            }
        }
        Cmd::Table(args) => {
            let polys = PolynomialTables::new();
            let table = build_tables(&polys, args.max_n.div_euclid(2).max(1))?;
            let mut rows = Vec::new();
            for n in 1..=args.max_n {
                let crit = measure_expression(&table, n, Basis::Critical)?;
                let deriv = crit.to_basis(Basis::Derivative)?;
                let numeric = crit.eval(&ctx)?.to_decimal(cli.digits);
                if cli.json {
                    rows.push(serde_json::json!({
                        "n": n,
                        "critical": crit.to_json(None),
                        "derivative": deriv.to_json(None),
                        "numeric": numeric,
                    }));
                } else {
                    println!("m(Q_{n}) = {}", crit.render_text());
                    println!("       = {}", deriv.render_text());
                    println!("       = {numeric}");
                }
            }
            if cli.json {
                println!("{}", serde_json::Value::Array(rows));
            }
        }
        Cmd::Verify(args) => {
            let suites: Vec<Suite> = if args.suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::parse(&args.suite).ok_or_else(|| {
                    usage("--suite must be all, polys, integrals, identities, measures or torus")
                })?]
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for s in suites {
                let rep = verify_suite(s, cli.seed, args.tol)?;
                all_pass &= rep.pass();
                if cli.json {
                    reports.push(rep.to_json());
                } else {
                    for c in &rep.checks {
                        println!(
                            "[{}] {}: target {:.2e}, achieved {:.2e}",
                            if c.pass { "PASS" } else { "FAIL" },
                            c.name,
                            c.target,
                            c.achieved
                        );
                    }
                    println!(
                        "suite {}: {}",
                        rep.suite,
                        if rep.pass() { "pass" } else { "FAIL" }
                    );
                }
            }
            if cli.json {
                println!("{}", serde_json::Value::Array(reports));
            }
            if !all_pass {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Text rendering of a closed-form value as ln/pi monomials.
fn render_logpi(form: &closedforms::LogPiForm) -> String {
    if form.terms().is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (&(i, j), c) in form.terms() {
        let mut s = format!("({c})");
        if i > 0 {
            s.push_str(&format!(" * ln|a|^{i}"));
        }
        if j > 0 {
            s.push_str(&format!(" * ln|b|^{j}"));
        }
        let e = form.k() + 1 - i - j;
        if e > 0 {
            s.push_str(&format!(" * pi^{e}"));
        }
        parts.push(s);
    }
    parts.join(" + ")
}
