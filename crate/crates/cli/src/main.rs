//! `dalg`: a batch CLI over the differential algebra kernel.
//!
//! Exit codes: 0 = decision computed (including negative decisions),
//! 2 = parse error, 3 = validation error, 4 = internal certification failure.

mod output;
mod parser;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser as ClapParser, Subcommand};
use serde_json::{json, Value};

use dalg::decompose::zero_decompose_seeded;
use dalg::kolchin::{dimension_polynomial, is_luroth_shape, LeaderStairs, NumericalPolynomial};
use dalg::luroth::{
    build_system, certified_component, generators_equivalent, luroth_decide, u_block_stairs,
    LurothDecision, SubfieldPresentation,
};
use dalg::reduction::{ritt_reduce, AutoreducedSet};
use dalg::reparam::{is_proper, reparametrize, Pdrpe, ReparamOutcome};
use dalg::{DerivativeOperator, DiffPolynomial, DiffRationalFunction, Ranking, Symbol};

use output::{Config, Report, Timing, SCHEMA_VERSION};

#[derive(ClapParser)]
#[command(
    name = "dalg",
    version,
    about = "Differential algebra kernel: characteristic sets, Kolchin polynomials, \
             Luroth generators, proper re-parametrization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Session {
    /// Number of derivations (required unless provided by a file header)
    #[arg(short = 'm', long = "derivations")]
    m: Option<usize>,
    /// Declared variables, comma separated (inferred from the input if absent)
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// Read a declaration header plus one expression per line from a file
    #[arg(long)]
    file: Option<String>,
    /// Seed for the randomized subroutines
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit a JSON report instead of text
    #[arg(long)]
    json: bool,
    /// Include full certificates in the report
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the generators span a simple differential extension and
    /// compute a Lüroth generator
    Luroth {
        #[command(flatten)]
        session: Session,
        /// Generator expressions P/Q in the declared variables
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Differential dimension polynomial and the Lüroth shape test
    Kolchin {
        #[command(flatten)]
        session: Session,
        /// Generator expressions (pipeline mode)
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
        /// Leader stairs per variable, e.g. --stairs "1,0;0,1" (direct mode)
        #[arg(long)]
        stairs: Vec<String>,
        /// Number of variables with empty stairs (direct mode)
        #[arg(long, default_value_t = 0)]
        free: u32,
    },
    /// Wu–Ritt zero decomposition into coherent, irreducible components
    Decompose {
        #[command(flatten)]
        session: Session,
        /// System polynomials Σ
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
        /// Inequations D (repeatable)
        #[arg(long = "ineq")]
        ineqs: Vec<String>,
        /// Ranking: canonical, orderly, or elim:<v1,v2,...>
        #[arg(long)]
        ranking: Option<String>,
    },
    /// Ritt reduction of the first polynomial by the autoreduced remainder
    Reduce {
        #[command(flatten)]
        session: Session,
        /// F followed by the elements of the autoreduced set
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
        /// Ranking: canonical, orderly, or elim:<v1,v2,...>
        #[arg(long)]
        ranking: Option<String>,
    },
    /// Properness test and proper re-parametrization of parametric equations
    Reparam {
        #[command(flatten)]
        session: Session,
        /// Parametric components P_i/Q_i in one parameter
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Fractional-linear equivalence of two differential rational functions
    Equiv {
        #[command(flatten)]
        session: Session,
        /// Exactly two expressions
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
}

enum CliError {
    Parse(String),
    Validation(String),
    Certification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Certification(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) | CliError::Certification(m) => m,
        }
    }
}

fn kernel_error(e: dalg::Error) -> CliError {
    match e {
        dalg::Error::Certification(_) => CliError::Certification(e.to_string()),
        other => CliError::Validation(other.to_string()),
    }
}

/// Declared inputs after merging flags and an optional file.
struct ResolvedInput {
    m: usize,
    declared: Vec<Symbol>,
    declared_explicit: bool,
    expressions: Vec<String>,
}

fn resolve_input(session: &Session, exprs: &[String]) -> Result<ResolvedInput, CliError> {
    let mut m = session.m;
    let mut declared: Vec<Symbol> = session.vars.iter().map(|v| Symbol::new(v)).collect();
    let mut declared_explicit = !declared.is_empty();
    let mut expressions: Vec<String> = exprs.to_vec();

    if let Some(path) = &session.file {
        if !expressions.is_empty() {
            return Err(CliError::Validation(
                "provide expressions inline or via --file, not both".into(),
            ));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {path}: {e}")))?;
        let mut lines = text.lines().filter(|l| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let header = lines
            .next()
            .ok_or_else(|| CliError::Parse("empty input file".into()))?;
        for field in header.split_whitespace() {
            if let Some(v) = field.strip_prefix("m=") {
                let parsed = v
                    .parse()
                    .map_err(|_| CliError::Parse(format!("bad m in header: {field}")))?;
                if let Some(flag_m) = m {
                    if flag_m != parsed {
                        return Err(CliError::Validation(format!(
                            "-m {flag_m} contradicts header m={parsed}"
                        )));
                    }
                }
                m = Some(parsed);
            } else if let Some(v) = field.strip_prefix("vars=") {
                declared = v.split(',').map(Symbol::new).collect();
                declared_explicit = true;
            } else {
                return Err(CliError::Parse(format!(
                    "unknown header field `{field}` (expected m=<int> vars=<list>)"
                )));
            }
        }
        expressions = lines.map(|l| l.trim().to_string()).collect();
    }
    let m = m.ok_or_else(|| {
        CliError::Validation("the derivation count -m is required (or an m= header)".into())
    })?;
    if m == 0 {
        return Err(CliError::Validation("m must be at least 1".into()));
    }
    for s in &declared {
        let name = s.name();
        if name.len() > 1
            && name.starts_with('d')
            && name[1..].bytes().all(|b| b.is_ascii_digit())
        {
            return Err(CliError::Validation(format!(
                "variable name `{name}` collides with the derivation syntax d<i>"
            )));
        }
    }
    Ok(ResolvedInput {
        m,
        declared,
        declared_explicit,
        expressions,
    })
}

/// Parse all expressions; returns values and the variable order (declared, or
/// first occurrence across the inputs).
fn parse_all(input: &ResolvedInput) -> Result<(Vec<DiffRationalFunction>, Vec<Symbol>), CliError> {
    let declared = if input.declared_explicit {
        Some(input.declared.as_slice())
    } else {
        None
    };
    let mut values = Vec::new();
    let mut order: Vec<Symbol> = if input.declared_explicit {
        input.declared.clone()
    } else {
        Vec::new()
    };
    for text in &input.expressions {
        let (v, seen) = parser::parse_expression(text, input.m, declared)
            .map_err(|e| CliError::Parse(format!("in `{text}`: {e}")))?;
        if !input.declared_explicit {
            for s in seen {
                if !order.contains(&s) {
                    order.push(s);
                }
            }
        }
        values.push(v);
    }
    Ok((values, order))
}

fn require_polynomial(v: &DiffRationalFunction, what: &str) -> Result<DiffPolynomial, CliError> {
    v.as_polynomial().ok_or_else(|| {
        CliError::Validation(format!(
            "{what} must be a polynomial, got denominator {}",
            v.denominator()
        ))
    })
}

fn parse_ranking(spec: Option<&str>, vars: &[Symbol]) -> Result<Ranking, CliError> {
    match spec {
        None => Ok(Ranking::elimination(vars.to_vec())),
        Some("canonical") => Ok(Ranking::canonical(vars.to_vec())),
        Some("orderly") => Ok(Ranking::orderly(vars.to_vec())),
        Some(s) if s.starts_with("elim:") => {
            let names: Vec<Symbol> = s["elim:".len()..].split(',').map(Symbol::new).collect();
            for v in vars {
                if !names.contains(v) {
                    return Err(CliError::Validation(format!(
                        "ranking does not mention variable `{v}`"
                    )));
                }
            }
            Ok(Ranking::elimination(names))
        }
        Some(other) => Err(CliError::Validation(format!(
            "unknown ranking `{other}` (expected canonical, orderly, or elim:<vars>)"
        ))),
    }
}

fn ranking_name(r: &Ranking) -> String {
    let vars: Vec<&str> = r.symbols().iter().map(|s| s.name()).collect();
    match r.kind() {
        dalg::RankingKind::Canonical => format!("canonical[{}]", vars.join(",")),
        dalg::RankingKind::Orderly => format!("orderly[{}]", vars.join(",")),
        dalg::RankingKind::Elimination => format!("elim:{}", vars.join(",")),
    }
}

fn charset_json(comp: &dalg::decompose::DecompositionComponent) -> Value {
    json!({
        "charset": comp.charset.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "inequations": comp.inequations.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Result<(Report, Vec<String>, bool), CliError> {
    let start = Instant::now();
    match cli.command {
        Command::Luroth { session, exprs } => {
            let input = resolve_input(&session, &exprs)?;
            let (gens, vars) = parse_all(&input)?;
            if gens.is_empty() {
                return Err(CliError::Validation("no generators given".into()));
            }
            let pres = SubfieldPresentation::new(gens, vars.clone()).map_err(kernel_error)?;
            let out = luroth_decide(&pres, session.seed).map_err(kernel_error)?;
            let decision = match out.decision {
                LurothDecision::HasGenerator => "has_generator",
                LurothDecision::NoGenerator => "no_generator",
            };
            let mut result = json!({
                "decision": decision,
                "criterion": {
                    "d": out.criterion.d,
                    "l1": out.criterion.l1,
                    "t_size": out.criterion.t_size(),
                },
            });
            let mut human = vec![format!("decision: {decision}")];
            if let Some(v) = &out.generator {
                result["generator"] = json!(v.to_string());
                human.push(format!("generator: {v}"));
            } else {
                human.push(format!("T has cardinality {}", out.criterion.t_size()));
            }
            let mut cert = charset_json(&out.component);
            if session.verbose {
                cert["checks"] = json!({
                    "charset_in_reference_ideal": out.certificate.charset_in_reference_ideal,
                    "reference_in_saturation": out.certificate.reference_in_saturation,
                    "multipliers_nonzero_at_point": out.certificate.multipliers_nonzero_at_point,
                    "coherent": out.certificate.coherent,
                    "delta_irreducible": out.certificate.delta_irreducible,
                });
                cert["t_elements"] = json!(out
                    .criterion
                    .t_elements
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>());
            }
            human.push(format!(
                "charset: {}",
                out.component
                    .charset
                    .elements()
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(";  ")
            ));
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "luroth".into(),
                config: Config {
                    m: input.m,
                    variables: vars.iter().map(|s| s.name().to_string()).collect(),
                    ranking: None,
                    seed: session.seed,
                },
                result,
                certificate_summary: cert,
                timing: Timing {
                    total_ms: start.elapsed().as_millis(),
                },
            };
            Ok((report, human, session.json))
        }

        Command::Kolchin {
            session,
            exprs,
            stairs,
            free,
        } => {
            let input = resolve_input(&session, &exprs)?;
            let (omega, n, vars, extra): (NumericalPolynomial, u32, Vec<Symbol>, Value) =
                if !stairs.is_empty() {
                    if !input.expressions.is_empty() {
                        return Err(CliError::Validation(
                            "give either generator expressions or --stairs, not both".into(),
                        ));
                    }
                    let mut chains = Vec::new();
                    for chain in &stairs {
                        let mut ops = Vec::new();
                        for point in chain.split(';') {
                            let exps: Result<Vec<u32>, _> =
                                point.split(',').map(|x| x.trim().parse()).collect();
                            let exps = exps.map_err(|_| {
                                CliError::Parse(format!("bad stairs entry `{point}`"))
                            })?;
                            if exps.len() != input.m {
                                return Err(CliError::Validation(format!(
                                    "stairs entry `{point}` has {} exponents, expected m={}",
                                    exps.len(),
                                    input.m
                                )));
                            }
                            ops.push(DerivativeOperator::new(exps));
                        }
                        chains.push(ops);
                    }
                    let n = chains.len() as u32 + free;
                    let st = LeaderStairs::new(chains);
                    (
                        dimension_polynomial(&st, input.m, free),
                        n,
                        input.declared.clone(),
                        json!(null),
                    )
                } else {
                    let (gens, vars) = parse_all(&input)?;
                    if gens.is_empty() {
                        return Err(CliError::Validation(
                            "no generators or stairs given".into(),
                        ));
                    }
                    let pres =
                        SubfieldPresentation::new(gens, vars.clone()).map_err(kernel_error)?;
                    let system = build_system(&pres);
                    let (comp, _cert, _r2) =
                        certified_component(&system, &vars, session.seed)
                            .map_err(kernel_error)?;
                    let (st, n_free) = u_block_stairs(&comp, &vars);
                    (
                        dimension_polynomial(&st, input.m, n_free),
                        vars.len() as u32,
                        vars,
                        charset_json(&comp),
                    )
                };
            let shape = is_luroth_shape(&omega, n, input.m);
            let values: Vec<String> = (0..=6).map(|t| omega.eval(t).to_string()).collect();
            let result = json!({
                "omega": omega.to_string(),
                "omega_binomial_coefficients":
                    omega.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "values_t_0_to_6": values,
                "luroth_shape_s": shape,
                "n": n,
            });
            let human = vec![
                format!("omega(t) = {omega}"),
                match shape {
                    Some(s) => format!("Luroth shape: s = {s}"),
                    None => "Luroth shape: none".to_string(),
                },
            ];
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "kolchin".into(),
                config: Config {
                    m: input.m,
                    variables: vars.iter().map(|s| s.name().to_string()).collect(),
                    ranking: None,
                    seed: session.seed,
                },
                result,
                certificate_summary: extra,
                timing: Timing {
                    total_ms: start.elapsed().as_millis(),
                },
            };
            Ok((report, human, session.json))
        }

        Command::Decompose {
            session,
            exprs,
            ineqs,
            ranking,
        } => {
            let input = resolve_input(&session, &exprs)?;
            let (values, mut vars) = parse_all(&input)?;
            if values.is_empty() {
                return Err(CliError::Validation("no system polynomials given".into()));
            }
            let sigma: Vec<DiffPolynomial> = values
                .iter()
                .map(|v| require_polynomial(v, "a system element"))
                .collect::<Result<_, _>>()?;
            let mut ds = Vec::new();
            for text in &ineqs {
                let (v, seen) = parser::parse_expression(
                    text,
                    input.m,
                    input
                        .declared_explicit
                        .then_some(input.declared.as_slice()),
                )
                .map_err(|e| CliError::Parse(format!("in `{text}`: {e}")))?;
                if !input.declared_explicit {
                    for s in seen {
                        if !vars.contains(&s) {
                            vars.push(s);
                        }
                    }
                }
                ds.push(require_polynomial(&v, "an inequation")?);
            }
            let r = parse_ranking(ranking.as_deref(), &vars)?;
            let comps =
                zero_decompose_seeded(&sigma, &ds, &r, session.seed).map_err(kernel_error)?;
            let result = json!({
                "component_count": comps.len(),
                "components": comps.iter().map(charset_json).collect::<Vec<_>>(),
            });
            let mut human = vec![format!("{} component(s)", comps.len())];
            for (i, c) in comps.iter().enumerate() {
                human.push(format!(
                    "  [{}] charset: {}",
                    i + 1,
                    c.charset
                        .elements()
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(";  ")
                ));
                human.push(format!(
                    "      inequations: {}",
                    c.inequations
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(";  ")
                ));
            }
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "decompose".into(),
                config: Config {
                    m: input.m,
                    variables: vars.iter().map(|s| s.name().to_string()).collect(),
                    ranking: Some(ranking_name(&r)),
                    seed: session.seed,
                },
                result,
                certificate_summary: json!(null),
                timing: Timing {
                    total_ms: start.elapsed().as_millis(),
                },
            };
            Ok((report, human, session.json))
        }

        Command::Reduce {
            session,
            exprs,
            ranking,
        } => {
            let input = resolve_input(&session, &exprs)?;
            let (values, vars) = parse_all(&input)?;
            if values.len() < 2 {
                return Err(CliError::Validation(
                    "reduce needs F followed by at least one set element".into(),
                ));
            }
            let f = require_polynomial(&values[0], "F")?;
            let elements: Vec<DiffPolynomial> = values[1..]
                .iter()
                .map(|v| require_polynomial(v, "a set element"))
                .collect::<Result<_, _>>()?;
            let r = parse_ranking(ranking.as_deref(), &vars)?;
            let set = AutoreducedSet::new(elements, r.clone()).map_err(kernel_error)?;
            let cert = ritt_reduce(&f, &set);
            let verified = cert.verify(&f, &set);
            if !verified {
                return Err(CliError::Certification(
                    "reduction certificate failed to verify".into(),
                ));
            }
            let mut summary = json!({
                "identity_verified": verified,
                "multiplier_count": cert.multipliers.len(),
                "quotient_count": cert.quotients.len(),
            });
            if session.verbose {
                summary["multipliers"] = json!(cert
                    .multipliers
                    .iter()
                    .map(|(p, e)| json!([p.to_string(), e]))
                    .collect::<Vec<_>>());
                summary["quotients"] = json!(cert
                    .quotients
                    .iter()
                    .map(|(theta, idx, quot)| json!([theta.to_string(), idx, quot.to_string()]))
                    .collect::<Vec<_>>());
            }
            let result = json!({ "remainder": cert.remainder.to_string() });
            let human = vec![format!("remainder: {}", cert.remainder)];
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "reduce".into(),
                config: Config {
                    m: input.m,
                    variables: vars.iter().map(|s| s.name().to_string()).collect(),
                    ranking: Some(ranking_name(&r)),
                    seed: session.seed,
                },
                result,
                certificate_summary: summary,
                timing: Timing {
                    total_ms: start.elapsed().as_millis(),
                },
            };
            Ok((report, human, session.json))
        }

        Command::Reparam { session, exprs } => {
            let input = resolve_input(&session, &exprs)?;
            let (values, vars) = parse_all(&input)?;
            if values.is_empty() {
                return Err(CliError::Validation("no parametric components".into()));
            }
            if vars.len() != 1 {
                return Err(CliError::Validation(format!(
                    "parametric equations need exactly one parameter, found {}",
                    vars.len()
                )));
            }
            let p = Pdrpe::new(values, vars[0]).map_err(kernel_error)?;
            let report_proper = is_proper(&p, session.seed).map_err(kernel_error)?;
            let (result, mut human) = if report_proper.proper {
                let inv = report_proper.inversion.clone().unwrap();
                (
                    json!({"outcome": "already_proper", "inversion": inv.to_string()}),
                    vec![format!("already proper; inversion: {} = {inv}", vars[0])],
                )
            } else {
                match reparametrize(&p, session.seed).map_err(kernel_error)? {
                    ReparamOutcome::AlreadyProper { inversion } => (
                        json!({"outcome": "already_proper", "inversion": inversion.to_string()}),
                        vec![format!("already proper; inversion: {inversion}")],
                    ),
                    ReparamOutcome::Impossible { l1 } => (
                        json!({"outcome": "impossible", "l1": l1}),
                        vec![format!("no proper re-parametrization exists (l1 = {l1})")],
                    ),
                    ReparamOutcome::Reparametrized {
                        parameter,
                        equations,
                    } => {
                        let eq_strings: Vec<String> = equations
                            .components()
                            .iter()
                            .map(|c| c.to_string())
                            .collect();
                        (
                            json!({
                                "outcome": "reparametrized",
                                "parameter": parameter.to_string(),
                                "new_parameter_symbol": equations.parameter().name(),
                                "equations": eq_strings,
                            }),
                            vec![
                                format!("new parameter: v = {parameter}"),
                                format!(
                                    "equations: {}",
                                    equations
                                        .components()
                                        .iter()
                                        .enumerate()
                                        .map(|(i, c)| format!("x{} = {c}", i + 1))
                                        .collect::<Vec<_>>()
                                        .join(",  ")
                                ),
                            ],
                        )
                    }
                }
            };
            human.insert(
                0,
                format!(
                    "proper: {} (u-block size l1 = {})",
                    report_proper.proper, report_proper.l1
                ),
            );
            let cert = json!({
                "u_block": report_proper.u_block.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            });
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "reparam".into(),
                config: Config {
                    m: input.m,
                    variables: vars.iter().map(|s| s.name().to_string()).collect(),
                    ranking: None,
                    seed: session.seed,
                },
                result,
                certificate_summary: cert,
                timing: Timing {
                    total_ms: start.elapsed().as_millis(),
                },
            };
            Ok((report, human, session.json))
        }

        Command::Equiv { session, exprs } => {
            let input = resolve_input(&session, &exprs)?;
            let (values, vars) = parse_all(&input)?;
            if values.len() != 2 {
                return Err(CliError::Validation(
                    "equiv needs exactly two expressions".into(),
                ));
            }
            let found = generators_equivalent(&values[0], &values[1]);
            let (result, human) = match &found {
                Some((a, b, c, d)) => (
                    json!({
                        "equivalent": true,
                        "coefficients":
                            [a.to_string(), b.to_string(), c.to_string(), d.to_string()],
                    }),
                    vec![format!(
                        "equivalent: v2 = (a*v1 + b)/(c*v1 + d) with (a, b, c, d) = ({a}, {b}, {c}, {d})"
                    )],
                ),
                None => (
                    json!({"equivalent": false}),
                    vec!["not fractionally-linearly related".to_string()],
                ),
            };
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "equiv".into(),
                config: Config {
                    m: input.m,
                    variables: vars.iter().map(|s| s.name().to_string()).collect(),
                    ranking: None,
                    seed: session.seed,
                },
                result,
                certificate_summary: json!(null),
                timing: Timing {
                    total_ms: start.elapsed().as_millis(),
                },
            };
            Ok((report, human, session.json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, human, json)) => {
            report.print(json, &human);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
