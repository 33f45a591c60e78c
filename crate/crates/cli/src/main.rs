//! `algcomp`: construct, decide and certify from the command line.
//!
//! Every successful run prints one JSON envelope on stdout. Failures print a
//! JSON error object on stderr and exit with 2 (bad input), 3 (resource cap)
//! or 1 (anything else).

mod config;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use algcomp_core::circuit::{unit_assignment, CircuitGraph};
use algcomp_core::elusive::{
    build_elusive_map, det_hard_polynomial, effective_degree_bound,
    flatten_to_scalar, is_elusive_affine, is_elusive_bruteforce, klps_point, raz_lift,
    schedule_c45, schedule_super, strong_elusiveness, strong_elusiveness_index, BasisKind,
    ElusiveSpec, FieldKind, KTuple,
};
use algcomp_core::groebner::{
    buchberger, det_complexity, image_ideal, image_ideal_basis, in_image_over_c, in_zariski_closure,
    separating_generator, Budget, Ideal, SearchOutcome,
};
use algcomp_core::interp::{interpolate, interpolate_homogeneous};
use algcomp_core::resultant::{resultant_test_poly, resultant_test_value, test_poly_degree_bound};
use algcomp_core::{Error, MonomialOrder, Poly};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
            CliError::Core(e) => match e {
                Error::ResourceBudgetExceeded(_)
                | Error::FieldTooLarge { .. }
                | Error::PrimeCapExceeded { .. } => 3,
                _ => 2,
            },
        }
    }

    fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "invalid_params".into(),
            CliError::Internal(_) => "internal".into(),
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                let name = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("");
                snake(name)
            }
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Internal(m) => m.clone(),
        }
    }
}

fn snake(name: &str) -> String {
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() && i > 0 {
            out.push('_');
        }
        out.extend(c.to_lowercase());
    }
    out
}

#[derive(Parser, Debug)]
#[command(name = "algcomp", version, about = "Polynomial-type algebraic complexity toolkit")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file with `seed` and a `[budget]` table.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldArg {
    Complex,
    Real,
}

impl From<FieldArg> for FieldKind {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Complex => FieldKind::Complex,
            FieldArg::Real => FieldKind::Real,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Monomial,
    Pseudo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckMethod {
    Groebner,
    Affine,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Interpolate a value table on the simplex lattice.
    Interp {
        #[arg(long)]
        table: String,
        /// Return the homogenized map in s+1 variables.
        #[arg(long)]
        homogeneous: bool,
    },
    /// Reduced Gröbner basis of the given generators.
    Gb {
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long)]
        nvars: Option<usize>,
        /// lex, grevlex or block:K
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Generators of the ideal of the image closure.
    ImageIdeal {
        #[arg(long)]
        map: String,
    },
    /// Decide whether a point lies on the image and on its closure.
    Member {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
    },
    /// Determinantal complexity by increasing matrix size.
    Detcomp {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 3)]
        max: usize,
    },
    /// Resultant test value at a point, or the symbolic test polynomial.
    ResultantTest {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: Option<String>,
    },
    /// Map with root-of-unity coefficients.
    BuildElusive {
        /// Full spec as JSON; overrides the individual flags.
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value = "complex")]
        field: FieldArg,
        #[arg(long, value_enum, default_value = "monomial")]
        basis: BasisArg,
        #[arg(long)]
        threshold: Option<u64>,
    },
    /// Polynomial off the determinantal image of size m.
    DetHard {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "complex")]
        field: FieldArg,
        #[arg(long)]
        threshold: Option<u64>,
    },
    /// Elusiveness of a point tuple, or strong elusiveness of a map.
    CheckElusive {
        /// Points as JSON `[[..],..]` or text `(a,b); (c,d)`.
        #[arg(long, conflicts_with = "map")]
        tuple: Option<String>,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, value_enum, default_value = "groebner")]
        method: CheckMethod,
        /// With --map: report the largest s' <= s that works.
        #[arg(long)]
        index: bool,
    },
    /// Root-of-unity point off every degree-r image.
    KlpsPoint {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        m: usize,
        /// Degree of the maps to avoid; sets the bound D(m, r).
        #[arg(long, required_unless_present = "degree_bound")]
        r: Option<u64>,
        /// Explicit elimination degree bound, overriding D(m, r).
        #[arg(long)]
        degree_bound: Option<String>,
        #[arg(long, value_enum, default_value = "complex")]
        field: FieldArg,
        /// Lower triangular (s+1)x(s+1) JSON matrix of rationals.
        #[arg(long)]
        mixing: Option<String>,
        /// m-s-1 rationals; zeros by default.
        #[arg(long)]
        tail: Option<String>,
        #[arg(long)]
        threshold: Option<u64>,
    },
    /// Bilinear lift of a map with a square number of components.
    RazLift {
        #[arg(long)]
        map: String,
    },
    /// Parameter schedules for the lower-bound constructions.
    Schedule {
        #[command(subcommand)]
        which: ScheduleCmd,
    },
    /// Coefficient vector of the tuple computed under an edge assignment.
    Gamma {
        #[arg(long)]
        graph: String,
        /// Edge labels in edge order; all ones by default.
        #[arg(long)]
        assignment: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Syntactic degrees of a circuit graph.
    Syndeg {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
}

#[derive(Subcommand, Debug)]
enum ScheduleCmd {
    C45 {
        #[arg(long)]
        nprime: u64,
        #[arg(long)]
        r: u64,
    },
    Super {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        rprime: u64,
    },
}

/// What a handler hands back before the envelope is assembled.
struct Outcome {
    inputs: Value,
    params: Value,
    result: Value,
    /// Replaces the JSON envelope on stdout when set.
    raw: Option<String>,
}

impl Outcome {
    fn new(inputs: Value, params: Value, result: Value) -> Self {
        Outcome { inputs, params, result, raw: None }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    tool_version: &'static str,
    seed: u64,
    inputs_digest: String,
    inputs: &'a Value,
    params: &'a Value,
    result: &'a Value,
}

fn to_value<T: Serialize + ?Sized>(x: &T) -> Result<Value, CliError> {
    serde_json::to_value(x).map_err(|e| CliError::Internal(format!("serialization failed: {e}")))
}

fn digest(command: &str, seed: u64, inputs: &Value, params: &Value) -> String {
    // serde_json maps are sorted, so this encoding is canonical.
    let canon = json!({ "command": command, "seed": seed, "inputs": inputs, "params": params });
    hex::encode(Sha256::digest(canon.to_string().as_bytes()))
}

fn order_arg(s: &str) -> Result<MonomialOrder, CliError> {
    s.parse::<MonomialOrder>().map_err(CliError::from)
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Interp { .. } => "interp",
        Cmd::Gb { .. } => "gb",
        Cmd::ImageIdeal { .. } => "image-ideal",
        Cmd::Member { .. } => "member",
        Cmd::Detcomp { .. } => "detcomp",
        Cmd::ResultantTest { .. } => "resultant-test",
        Cmd::BuildElusive { .. } => "build-elusive",
        Cmd::DetHard { .. } => "det-hard",
        Cmd::CheckElusive { .. } => "check-elusive",
        Cmd::KlpsPoint { .. } => "klps-point",
        Cmd::RazLift { .. } => "raz-lift",
        Cmd::Schedule { which: ScheduleCmd::C45 { .. } } => "schedule c45",
        Cmd::Schedule { which: ScheduleCmd::Super { .. } } => "schedule super",
        Cmd::Gamma { .. } => "gamma",
        Cmd::Syndeg { .. } => "syndeg",
    }
}

fn dispatch(cmd: &Cmd, seed: u64, budget: &Budget) -> Result<Outcome, CliError> {
    let budget_json = to_value(budget)?;
    match cmd {
        Cmd::Interp { table, homogeneous } => {
            let t = input::table(table)?;
            let f = if *homogeneous { interpolate_homogeneous(&t)? } else { interpolate(&t)? };
            Ok(Outcome::new(
                json!({ "table": to_value(&t)? }),
                json!({ "homogeneous": homogeneous }),
                json!({ "map": to_value(&f)?, "text": f.to_string() }),
            ))
        }
        Cmd::Gb { gens, nvars, order } => {
            let gens = input::poly_list(gens, *nvars)?;
            let order = order_arg(order)?;
            let n = gens[0].nvars();
            let gb = buchberger(&Ideal::new(n, gens.clone(), order)?, budget)?;
            Ok(Outcome::new(
                json!({ "generators": to_value(&gens)? }),
                json!({ "order": order.to_string(), "budget": budget_json }),
                json!({
                    "basis": to_value(gb.basis())?,
                    "text": gb.basis().iter().map(Poly::to_string).collect::<Vec<_>>(),
                    "is_unit": gb.is_unit(),
                    "spolys_reduce_to_zero": gb.spolys_reduce_to_zero(),
                    "budget_used": to_value(&gb.budget_used())?,
                }),
            ))
        }
        Cmd::ImageIdeal { map } => {
            let f = input::polymap(map, None)?;
            let gb = image_ideal_basis(&f, budget)?;
            let gens = gb.eliminate_first(f.nvars());
            Ok(Outcome::new(
                json!({ "map": to_value(&f)? }),
                json!({ "order": gb.order().to_string(), "budget": budget_json }),
                json!({
                    "generators": to_value(&gens)?,
                    "text": gens.iter().map(Poly::to_string).collect::<Vec<_>>(),
                    "budget_used": to_value(&gb.budget_used())?,
                }),
            ))
        }
        Cmd::Member { map, point } => {
            let f = input::polymap(map, None)?;
            let b = input::point(point)?;
            let in_closure = in_zariski_closure(&b, &f, budget)?;
            let in_image = in_closure && in_image_over_c(&b, &f, budget)?;
            // A nonvanishing generator is a checkable witness for "outside".
            let witness = if in_closure {
                None
            } else {
                let gens = image_ideal(&f, budget)?;
                separating_generator(&b, &gens)?.map(|i| gens[i].clone())
            };
            Ok(Outcome::new(
                json!({ "map": to_value(&f)?, "point": to_value(&b)? }),
                json!({ "budget": budget_json }),
                json!({
                    "in_image": in_image,
                    "in_closure": in_closure,
                    "separating_generator": witness.as_ref().map(to_value).transpose()?,
                }),
            ))
        }
        Cmd::Detcomp { poly, max } => {
            let f = input::poly(poly, None)?;
            let out = det_complexity(&f, *max, budget, seed)?;
            let (c_det, above) = match &out {
                SearchOutcome::Found { alpha, .. } => (Some(*alpha), false),
                SearchOutcome::AboveCap { .. } => (None, true),
            };
            Ok(Outcome::new(
                json!({ "poly": to_value(&f)? }),
                json!({ "max": max, "budget": budget_json }),
                json!({
                    "c_det": c_det,
                    "above_cap": above,
                    "steps": to_value(out.steps())?,
                }),
            ))
        }
        Cmd::ResultantTest { map, point } => {
            let f = input::polymap(map, None)?;
            match point {
                Some(p) => {
                    let b = input::point(p)?;
                    let cert = resultant_test_value(&f, &b)?;
                    Ok(Outcome::new(
                        json!({ "map": to_value(&f)?, "point": to_value(&b)? }),
                        json!({}),
                        json!({
                            "certificate": to_value(&cert)?,
                            "certifies_outside": cert.certifies_outside(),
                        }),
                    ))
                }
                None => {
                    let r = resultant_test_poly(&f)?;
                    Ok(Outcome::new(
                        json!({ "map": to_value(&f)? }),
                        json!({ "degree_bound": test_poly_degree_bound(&f) }),
                        json!({ "test_poly": to_value(&r)?, "text": r.to_string() }),
                    ))
                }
            }
        }
        Cmd::BuildElusive { spec, n, p, s, r, m, field, basis, threshold } => {
            let spec: ElusiveSpec = match spec {
                Some(js) => serde_json::from_str(&input::load(js)?)
                    .map_err(|e| CliError::Usage(format!("bad spec JSON: {e}")))?,
                None => {
                    let need = |name: &str| CliError::Usage(format!("--{name} is required without --spec"));
                    ElusiveSpec {
                        n: n.ok_or_else(|| need("n"))?,
                        p: p.ok_or_else(|| need("p"))?,
                        s: s.ok_or_else(|| need("s"))?,
                        r: r.ok_or_else(|| need("r"))?,
                        m: m.ok_or_else(|| need("m"))?,
                        field: (*field).into(),
                        basis: match basis {
                            BasisArg::Monomial => BasisKind::Monomial,
                            BasisArg::Pseudo => BasisKind::PseudoMonomial,
                        },
                        k: None,
                        threshold: *threshold,
                    }
                }
            };
            let em = build_elusive_map(&spec)?;
            Ok(Outcome::new(
                json!({ "spec": to_value(&spec)? }),
                json!({}),
                json!({
                    "map": to_value(&em.map)?,
                    "text": em.map.to_string(),
                    "certificate": to_value(&em.certificate)?,
                }),
            ))
        }
        Cmd::DetHard { n, m, r, field, threshold } => {
            let d = det_hard_polynomial(*n, *m, *r, (*field).into(), *threshold)?;
            Ok(Outcome::new(
                json!({ "n": n, "m": m, "r": r }),
                json!({ "field": to_value(&FieldKind::from(*field))?, "threshold": threshold }),
                json!({
                    "poly": to_value(&d.poly)?,
                    "text": d.poly.to_string(),
                    "certificate": to_value(&d.certificate)?,
                }),
            ))
        }
        Cmd::CheckElusive { tuple, map, s, r, method, index } => {
            let method_name = match method {
                CheckMethod::Groebner => "groebner",
                CheckMethod::Affine => "affine",
            };
            match (tuple, map) {
                (Some(t), None) => {
                    let tup = KTuple::new(input::points(t)?)?;
                    let elusive = match method {
                        CheckMethod::Groebner => is_elusive_bruteforce(&tup, *s, *r, budget)?,
                        CheckMethod::Affine => {
                            if *r != 1 {
                                return Err(CliError::Usage("--method affine needs --r 1".into()));
                            }
                            is_elusive_affine(&tup, *s)?
                        }
                    };
                    Ok(Outcome::new(
                        json!({ "tuple": to_value(tup.points())? }),
                        json!({ "s": s, "r": r, "method": method_name, "budget": budget_json }),
                        json!({ "elusive": elusive, "k": tup.k(), "m": tup.m() }),
                    ))
                }
                (None, Some(mp)) => {
                    if matches!(method, CheckMethod::Affine) {
                        return Err(CliError::Usage("--method affine applies to --tuple only".into()));
                    }
                    let f = input::polymap(mp, None)?;
                    let result = if *index {
                        let idx = strong_elusiveness_index(&f, *r, *s, budget)?;
                        json!({ "strong_index": idx })
                    } else {
                        json!({ "strongly_elusive": strong_elusiveness(&f, *r, *s, budget)? })
                    };
                    Ok(Outcome::new(
                        json!({ "map": to_value(&f)? }),
                        json!({ "s": s, "r": r, "index": index, "method": method_name, "budget": budget_json }),
                        result,
                    ))
                }
                _ => Err(CliError::Usage("give exactly one of --tuple or --map".into())),
            }
        }
        Cmd::KlpsPoint { s, m, r, degree_bound, field, mixing, tail, threshold } => {
            let bound = match (degree_bound, r) {
                (Some(d), _) => d
                    .trim()
                    .parse::<BigUint>()
                    .map_err(|_| CliError::Usage(format!("--degree-bound must be a nonnegative integer, got {d:?}")))?,
                (None, Some(r)) => effective_degree_bound(*m as u64, *r),
                (None, None) => unreachable!("clap enforces --r or --degree-bound"),
            };
            let mixing = mixing.as_deref().map(input::matrix).transpose()?;
            let tail = match tail {
                Some(t) => input::rationals(t)?,
                None => vec![Default::default(); m.saturating_sub(s + 1)],
            };
            let kp = klps_point(*s, *m, &bound, mixing.as_deref(), &tail, (*field).into(), *threshold)?;
            Ok(Outcome::new(
                json!({
                    "s": s, "m": m, "degree_bound": bound.to_string(),
                    "mixing": mixing.as_ref().map(|a| a.iter().map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
                    "tail": tail.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                }),
                json!({ "field": to_value(&FieldKind::from(*field))?, "threshold": threshold }),
                to_value(&kp)?,
            ))
        }
        Cmd::RazLift { map } => {
            let f = input::polymap(map, None)?;
            let lift = raz_lift(&f)?;
            let flat = flatten_to_scalar(&lift)?;
            Ok(Outcome::new(
                json!({ "map": to_value(&f)? }),
                json!({}),
                json!({
                    "lift": to_value(&lift)?,
                    "lift_text": lift.to_string(),
                    "flattened": to_value(&flat)?,
                    "flattened_text": flat.to_string(),
                }),
            ))
        }
        Cmd::Schedule { which } => match which {
            ScheduleCmd::C45 { nprime, r } => Ok(Outcome::new(
                json!({ "nprime": nprime, "r": r }),
                json!({}),
                to_value(&schedule_c45(*nprime, *r)?)?,
            )),
            ScheduleCmd::Super { n, rprime } => Ok(Outcome::new(
                json!({ "n": n, "rprime": rprime }),
                json!({}),
                to_value(&schedule_super(*n, *rprime)?)?,
            )),
        },
        Cmd::Gamma { graph, assignment, emit } => {
            let g = input::graph(graph)?;
            let a = match assignment {
                Some(a) => input::point(a)?,
                None => unit_assignment(&g),
            };
            let f = g.evaluate(&a)?;
            let gamma = g.gamma_map(&a)?;
            let mut out = Outcome::new(
                json!({ "graph": to_value(&g)?, "assignment": to_value(&a)? }),
                json!({ "degree": g.syntactic_degree() }),
                json!({ "coeff_vector": to_value(&gamma)?, "map": to_value(&f)?, "text": f.to_string() }),
            );
            if let Emit::Dot = emit {
                out.raw = Some(g.to_dot());
            }
            Ok(out)
        }
        Cmd::Syndeg { graph, emit } => {
            let g = input::graph(graph)?;
            let mut out = Outcome::new(
                json!({ "graph": to_value(&g)? }),
                json!({}),
                syndeg_result(&g),
            );
            if let Emit::Dot = emit {
                out.raw = Some(g.to_dot());
            }
            Ok(out)
        }
    }
}

fn syndeg_result(g: &CircuitGraph) -> Value {
    let per_node: serde_json::Map<String, Value> = g
        .nodes()
        .iter()
        .zip(g.node_degrees())
        .map(|(n, d)| (n.id.clone(), json!(d)))
        .collect();
    json!({
        "syntactic_degree": g.syntactic_degree(),
        "node_degrees": per_node,
        "size": g.size(),
        "depth": g.depth(),
        "homogeneous": g.is_homogeneous_graph(),
    })
}

fn fail(command: &str, err: &CliError) -> ExitCode {
    let body = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": { "kind": err.kind(), "message": err.message() },
    });
    eprintln!("{body}");
    ExitCode::from(err.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let command = command_name(&cli.cmd);
    let env = std::env::var(config::BUDGET_ENV).ok();
    let settings = match config::load(cli.config.as_deref(), cli.seed, env) {
        Ok(s) => s,
        Err(m) => return fail(command, &CliError::Usage(m)),
    };
    let out = match dispatch(&cli.cmd, settings.seed, &settings.budget) {
        Ok(o) => o,
        Err(e) => return fail(command, &e),
    };
    if let Some(raw) = out.raw {
        return emit(command, &raw);
    }
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        tool_version: env!("CARGO_PKG_VERSION"),
        seed: settings.seed,
        inputs_digest: digest(command, settings.seed, &out.inputs, &out.params),
        inputs: &out.inputs,
        params: &out.params,
        result: &out.result,
    };
    match serde_json::to_string_pretty(&env) {
        Ok(s) => emit(command, &(s + "\n")),
        Err(e) => fail(command, &CliError::Internal(e.to_string())),
    }
}

/// Writes to stdout; a closed pipe downstream is not an error.
fn emit(command: &str, text: &str) -> ExitCode {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => fail(command, &CliError::Internal(format!("cannot write output: {e}"))),
    }
}
