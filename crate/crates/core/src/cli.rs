//! Command-line front end of the `fmethod` binary.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use crate::coeff::{parse_rational, ParamSpace, RatFunc};
use crate::geometries::{build_geometry, dpi_hat, GeometryFamily, GeometrySpec};
use crate::modforms::{delta, eisenstein, is_proportional, rc_bracket, QSeriesJson};
use crate::orthopoly::{gegenbauer, jacobi, Family};
use crate::singular::{
    closed_form, intertwining_check, ode_of_geometry, projectively_equal,
    reconstruct_vector_valued, solve_operator, solve_singular, sp_pattern, OdeSpec,
};
use crate::weyl::Poly;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "fmethod",
    version,
    about = "Exact construction of equivariant holomorphic differential operators"
)]
pub struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "FMETHOD_FORMAT",
        default_value = "text"
    )]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GeometryArgs {
    /// Geometry family: so, sp or uu.
    #[arg(long, value_parser = parse_family)]
    pub geometry: GeometryFamily,
    #[arg(long)]
    pub n: usize,
    /// `sym`, an integer or a fraction such as 7/2 (SO, SP).
    #[arg(long, default_value = "sym")]
    pub lambda: String,
    /// λ' of the first factor (UU).
    #[arg(long = "lambda-p", default_value = "sym")]
    pub lambda_p: String,
    /// λ'' of the second factor (UU).
    #[arg(long = "lambda-pp", default_value = "sym")]
    pub lambda_pp: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for the singular vector and print the differential operator.
    Singular {
        #[command(flatten)]
        geo: GeometryArgs,
        #[arg(long)]
        a: u32,
    },
    /// Print the radial ODE of the singular vector.
    Ode {
        #[command(flatten)]
        geo: GeometryArgs,
        #[arg(long)]
        a: u32,
        /// Rewrite in the variable of the classical equation.
        #[arg(long)]
        classical: bool,
    },
    /// Check the solved operator: intertwining (SO, UU n=1) or closed forms.
    Verify {
        #[command(flatten)]
        geo: GeometryArgs,
        #[arg(long)]
        a: u32,
        /// Largest monomial degree fed to the intertwining test (default 2a+4).
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Rankin-Cohen bracket of two Eisenstein series.
    Rc {
        #[arg(long)]
        k1: i64,
        #[arg(long)]
        k2: i64,
        #[arg(long)]
        a: u32,
        /// Truncation order N.
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// Report the scalar c with bracket = c·Δ; fail if there is none.
        #[arg(long)]
        check_delta: bool,
    },
    /// Jacobi or Gegenbauer polynomial.
    Orthopoly {
        #[arg(long, value_enum)]
        family: OrthoFamily,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value = "sym")]
        alpha: String,
        #[arg(long, default_value = "sym")]
        beta: String,
    },
    /// Describe a geometry and its Fourier-side generators.
    Geometry {
        #[arg(long, value_parser = parse_family)]
        geometry: GeometryFamily,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrthoFamily {
    Jacobi,
    Gegenbauer,
}

fn parse_family(s: &str) -> std::result::Result<GeometryFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `sym` keeps the parameter symbolic; anything else must be an exact rational.
fn param_value(s: &str) -> Result<Option<BigRational>> {
    if s == "sym" {
        Ok(None)
    } else {
        parse_rational(s).map(Some)
    }
}

fn assignments(g: &GeometrySpec, geo: &GeometryArgs) -> Result<Vec<(String, BigRational)>> {
    let pairs: Vec<(&str, &str)> = match g.family {
        GeometryFamily::Uu => vec![("lp", &geo.lambda_p), ("lpp", &geo.lambda_pp)],
        _ => vec![("l", &geo.lambda)],
    };
    let mut out = Vec::new();
    for (k, v) in pairs {
        if let Some(x) = param_value(v)? {
            out.push((k.to_string(), x));
        }
    }
    Ok(out)
}

fn substituted(c: &RatFunc, values: &[(String, BigRational)]) -> Result<RatFunc> {
    let mut c = c.clone();
    for (k, v) in values {
        c = c.substitute(k, v)?;
    }
    Ok(c)
}

fn poly_at(p: &Poly, values: &[(String, BigRational)]) -> Result<Poly> {
    let mut out = Poly::zero(p.ctx(), p.space());
    for (m, c) in p.terms() {
        out.add_term(m.clone(), substituted(c, values)?);
    }
    Ok(out)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

/// Failure raised while running a subcommand.
enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parse `args` (including the program name) and run; output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
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
    match execute(&cli) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Verify(report)) => {
            let _ = writeln!(out, "{report}");
            EXIT_VERIFY
        }
    }
}

fn execute(cli: &Cli) -> std::result::Result<String, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Singular { geo, a } => {
            let g = build_geometry(geo.geometry, geo.n)?;
            let values = assignments(&g, geo)?;
            let solved = solve_operator(&g, *a, &values)?;
            Ok(match fmt {
                Format::Json => json(&solved.to_json(&g.space)),
                Format::Latex => solved.operator().to_latex(),
                Format::Text => solved.operator().to_string(),
            })
        }
        Command::Ode { geo, a, classical } => {
            let g = build_geometry(geo.geometry, geo.n)?;
            let values = assignments(&g, geo)?;
            let mut ode = ode_of_geometry(&g, *a)?;
            if *classical {
                ode = ode.in_classical_variable()?;
            }
            let ode = OdeSpec {
                var: ode.var.clone(),
                tag: ode.tag,
                op: crate::orthopoly::SecondOrder {
                    theta_form: ode.op.theta_form,
                    c2: poly_at(&ode.op.c2, &values)?,
                    c1: poly_at(&ode.op.c1, &values)?,
                    c0: poly_at(&ode.op.c0, &values)?,
                },
            };
            Ok(match fmt {
                Format::Json => json(&ode.to_json()),
                Format::Latex => ode.to_latex(),
                Format::Text => ode.to_string(),
            })
        }
        Command::Verify { geo, a, degree } => verify(fmt, geo, *a, *degree),
        Command::Rc {
            k1,
            k2,
            a,
            terms,
            check_delta,
        } => {
            let f1 = eisenstein(*k1, *terms)?;
            let f2 = eisenstein(*k2, *terms)?;
            let b = rc_bracket(&f1, *k1, &f2, *k2, *a)?;
            let ratio = if *check_delta {
                match is_proportional(&b, &delta(*terms)) {
                    Some(c) => Some(c),
                    None => {
                        return Err(Failure::Verify(format!(
                            "bracket is not proportional to Delta: {b}"
                        )))
                    }
                }
            } else {
                None
            };
            Ok(match (fmt, ratio) {
                (Format::Json, None) => json(&b.to_json()),
                (Format::Json, Some(c)) => {
                    #[derive(Serialize)]
                    struct WithRatio {
                        series: QSeriesJson,
                        delta_ratio: String,
                    }
                    json(&WithRatio {
                        series: b.to_json(),
                        delta_ratio: c.to_string(),
                    })
                }
                (_, None) => b.to_string(),
                (_, Some(c)) => format!("{b}\nDelta ratio: {c}"),
            })
        }
        Command::Orthopoly {
            family,
            degree,
            alpha,
            beta,
        } => {
            let s = ParamSpace::new(&["alpha", "beta"]);
            let val = |name: &str, v: &str| -> Result<RatFunc> {
                Ok(match param_value(v)? {
                    Some(x) => RatFunc::from_rational(&s, x),
                    None => s.p(name),
                })
            };
            let al = val("alpha", alpha)?;
            let p = match family {
                OrthoFamily::Gegenbauer => gegenbauer(*degree, &al),
                OrthoFamily::Jacobi => jacobi(*degree, &al, &val("beta", beta)?),
            };
            Ok(match fmt {
                Format::Json => json(&p.to_json()),
                Format::Latex => p.to_latex(),
                Format::Text => {
                    let name = if p.family == Family::Jacobi { "P" } else { "C" };
                    format!("{name}_{} = {}", p.degree, p.poly)
                }
            })
        }
        Command::Geometry { geometry, n } => {
            let g = build_geometry(*geometry, *n)?;
            if fmt == Format::Json {
                return Ok(json(&g.to_json()));
            }
            let mut lines = Vec::new();
            for (gen, tau) in &g.nplus {
                let op = dpi_hat(&g, *gen)?;
                lines.push(match fmt {
                    Format::Latex => format!("\\widehat{{d\\pi}}({gen}) = {}", op.to_latex()),
                    _ => format!("{gen} [{tau:?}]: {op}"),
                });
            }
            Ok(lines.join("\n"))
        }
    }
}

#[derive(Serialize)]
struct CheckLine {
    check: String,
    passed: bool,
    residual: String,
}

fn verify(
    fmt: Format,
    geo: &GeometryArgs,
    a: u32,
    degree: Option<u32>,
) -> std::result::Result<String, Failure> {
    let g = build_geometry(geo.geometry, geo.n)?;
    if !assignments(&g, geo)?.is_empty() {
        return Err(Failure::Usage(
            "verify works with symbolic parameters only".into(),
        ));
    }
    let mut lines: Vec<CheckLine> = Vec::new();
    let oracle = !crate::geometries::g_tau_generators(&g).is_empty();
    if oracle {
        let d = degree.unwrap_or(2 * a + 4);
        if d < 2 * a {
            return Err(Failure::Usage(format!(
                "degree bound {d} is below 2a = {}",
                2 * a
            )));
        }
        let report = intertwining_check(&g, a, d)?;
        for gen in crate::geometries::g_tau_generators(&g) {
            let worst = report
                .failures
                .iter()
                .filter(|(x, _, _)| *x == gen)
                .max_by_key(|(_, _, r)| r.num_terms())
                .map(|(_, _, r)| r.to_string());
            lines.push(CheckLine {
                check: format!("intertwining {gen}"),
                passed: worst.is_none(),
                residual: worst.unwrap_or_else(|| "0".into()),
            });
        }
    }
    let p = solve_singular(&g, a)?;
    let cf = closed_form(&g, a)?;
    lines.push(CheckLine {
        check: "closed form".into(),
        passed: p.proportional(&cf),
        residual: if p.proportional(&cf) {
            "0".into()
        } else {
            format!("{p} vs {cf}")
        },
    });
    if g.family == GeometryFamily::Sp {
        let psi = reconstruct_vector_valued(&g, a, &p)?;
        let ok = projectively_equal(&psi, &sp_pattern(&g, a)?);
        lines.push(CheckLine {
            check: "substitution pattern".into(),
            passed: ok,
            residual: if ok { "0" } else { "mismatch" }.into(),
        });
    }
    let all = lines.iter().all(|l| l.passed);
    let text = match fmt {
        Format::Json => json(&lines),
        _ => lines
            .iter()
            .map(|l| {
                format!(
                    "{}: {} (residual {})",
                    l.check,
                    if l.passed { "pass" } else { "FAIL" },
                    l.residual
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    if all {
        Ok(text)
    } else {
        Err(Failure::Verify(text))
    }
}
