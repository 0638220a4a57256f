//! The `knotpoly` command line.

use std::collections::HashMap;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chain_sheaf::{ch_from_definition, ch_poly, flow_poly, sh_from_definition, sh_poly, tension_poly};
use crate::colored_tutte::{w_forest_expansion, w_recursive, w_state_sum, WParams};
use crate::error::{Error, Result};
use crate::io::{parse_color_weights, parse_graph, parse_spec, GraphFile};
use crate::multigraph::{SignedGraph, DEFAULT_ENUMERATION_CAP};
use crate::polyring::{MultiPoly, VAR_T, VAR_Z1, VAR_Z2};
use crate::rational_links::{bracket_rational, bracket_theta, oracle_bracket, oracle_theta, transfer_bracket, RationalWord};
use crate::replacement::{
    build_replaced, q_gc_via_chain_poly, q_gs_via_sheaf_poly, q_hat_via_reductions, q_hat_via_w, ReplacementKind,
    ReplacementSpec,
};
use crate::signed_tutte::{jones, kauffman_bracket, q_poly, q_poly_in, q_via_state_sum, BracketValue, QConstants, Ring};
use crate::verify::{run_suite, Suite};

#[derive(Parser, Debug)]
#[command(name = "knotpoly", version, about = "Tutte-type graph polynomials and Kauffman brackets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Print a `{exponent-vector: coefficient}` JSON map instead of the canonical string
    #[arg(long)]
    json: bool,
    /// Largest edge count accepted by subset-enumeration methods
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Q[G] of a signed graph
    Q {
        graph: String,
        #[arg(long, value_enum, default_value_t = QMethod::Recursion)]
        method: QMethod,
        #[command(flatten)]
        common: Common,
    },
    /// W(G) of a colored graph
    W {
        graph: String,
        #[arg(long)]
        colors: String,
        /// Values for t, z1, z2, e.g. `t=d,z1=d,z2=d`; unset ones stay symbolic
        #[arg(long)]
        eval: Option<String>,
        #[arg(long, value_enum, default_value_t = WMethod::Recursion)]
        method: WMethod,
        #[command(flatten)]
        common: Common,
    },
    /// Kauffman bracket of a signed graph, optionally after replacement
    Bracket {
        graph: String,
        #[arg(long)]
        spec: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Jones polynomial from the bracket and a writhe
    Jones {
        graph: String,
        #[arg(long, allow_hyphen_values = true)]
        writhe: i64,
        #[arg(long)]
        spec: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Chain polynomial of a labelled graph
    Chain {
        graph: String,
        #[arg(long, value_enum, default_value_t = SumMethod::Recursion)]
        method: SumMethod,
        #[command(flatten)]
        common: Common,
    },
    /// Sheaf polynomial of a labelled graph
    Sheaf {
        graph: String,
        #[arg(long, value_enum, default_value_t = SumMethod::Recursion)]
        method: SumMethod,
        #[command(flatten)]
        common: Common,
    },
    /// Flow polynomial in q
    Flow {
        graph: String,
        #[command(flatten)]
        common: Common,
    },
    /// Tension polynomial in q
    Tension {
        graph: String,
        #[command(flatten)]
        common: Common,
    },
    /// Q of the graph obtained by replacing edges with chains and sheaves
    Replace {
        graph: String,
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value_t = RingArg::General)]
        ring: RingArg,
        #[arg(long, value_enum, default_value_t = ReplaceMethod::Weights)]
        method: ReplaceMethod,
        #[command(flatten)]
        common: Common,
    },
    /// Bracket of the rational link with word m1,m2,...
    Rational {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value_t = RationalMethod::Auto)]
        method: RationalMethod,
        #[command(flatten)]
        common: Common,
    },
    /// Bracket of the theta link L(m1,m2,m3)
    Theta {
        #[arg(allow_hyphen_values = true)]
        terms: String,
        #[arg(long, value_enum, default_value_t = ThetaMethod::Formula)]
        method: ThetaMethod,
        #[command(flatten)]
        common: Common,
    },
    /// Run the route-equivalence suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Small)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum QMethod {
    Recursion,
    StateSum,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WMethod {
    Recursion,
    StateSum,
    Forest,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SumMethod {
    Recursion,
    Definition,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RingArg {
    General,
    Bracket,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReplaceMethod {
    /// Build the replaced graph and recurse on it
    Explicit,
    /// W of the original graph with chain/sheaf weights
    Weights,
    /// Edge-by-edge chain/sheaf reductions
    Reductions,
    /// Chain or sheaf polynomial (all directives of one kind)
    Polynomial,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RationalMethod {
    Auto,
    Transfer,
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ThetaMethod {
    Formula,
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Small,
    Full,
}

/// Runs the CLI on `argv` (including the program name), writing results to
/// stdout and diagnostics to stderr. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid(path, format!("cannot read: {e}")))
}

fn load_graph(path: &str) -> Result<GraphFile> {
    parse_graph(&read(path)?)
}

fn load_spec(path: &str) -> Result<ReplacementSpec> {
    parse_spec(&read(path)?)
}

fn emit(out: &mut impl Write, p: &MultiPoly, json: bool) -> Result<i32> {
    let line = if json { p.to_json().to_string() } else { p.canonical_string() };
    writeln!(out, "{line}").map_err(|e| Error::Internal(format!("write failed: {e}")))?;
    Ok(0)
}

fn parse_eval(text: &str) -> Result<WParams> {
    let mut params = WParams::symbolic();
    let slots: HashMap<&str, usize> = [("t", VAR_T), ("z1", VAR_Z1), ("z2", VAR_Z2)].into_iter().collect();
    for part in text.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::invalid("--eval", format!("expected name=value, got `{part}`")))?;
        let name = name.trim();
        let value = MultiPoly::parse(value.trim()).map_err(|e| Error::invalid(format!("--eval {name}"), e.to_string()))?;
        match slots.get(name) {
            Some(&VAR_T) => params.t = value,
            Some(&VAR_Z1) => params.z1 = value,
            Some(_) => params.z2 = value,
            None => return Err(Error::invalid("--eval", format!("unknown parameter `{name}`"))),
        }
    }
    Ok(params)
}

fn bracket_of(g: &SignedGraph, spec: Option<&str>) -> Result<BracketValue> {
    match spec {
        None => kauffman_bracket(g),
        Some(path) => {
            let r = build_replaced(g, &load_spec(path)?)?;
            BracketValue::new(q_poly_in(&r.graph, &QConstants::bracket()))
        }
    }
}

fn parse_terms(text: &str, field: &str) -> Result<Vec<i32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|e| Error::invalid(field, format!("term `{}`: {e}", t.trim())))
        })
        .collect()
}

fn dispatch(command: Command, out: &mut impl Write) -> Result<i32> {
    match command {
        Command::Q { graph, method, common } => {
            let g = load_graph(&graph)?.into_signed()?;
            let p = match method {
                QMethod::Recursion => q_poly(&g),
                QMethod::StateSum => q_via_state_sum(&g, common.cap)?,
            };
            emit(out, &p, common.json)
        }
        Command::W { graph, colors, eval, method, common } => {
            let g = load_graph(&graph)?.into_colored()?;
            let cw = parse_color_weights(&read(&colors)?)?;
            let params = match eval {
                Some(text) => parse_eval(&text)?,
                None => WParams::symbolic(),
            };
            let p = match method {
                WMethod::Recursion => w_recursive(&g, &cw, &params)?,
                WMethod::StateSum => w_state_sum(&g, &cw, &params, common.cap)?,
                WMethod::Forest => w_forest_expansion(&g, &cw, &params, &g.default_order(), common.cap)?,
            };
            emit(out, &p, common.json)
        }
        Command::Bracket { graph, spec, common } => {
            let g = load_graph(&graph)?.into_signed()?;
            emit(out, bracket_of(&g, spec.as_deref())?.poly(), common.json)
        }
        Command::Jones { graph, writhe, spec, common } => {
            let g = load_graph(&graph)?.into_signed()?;
            let v = jones(&bracket_of(&g, spec.as_deref())?, writhe)?;
            let line = if common.json { v.to_json().to_string() } else { v.to_string() };
            writeln!(out, "{line}").map_err(|e| Error::Internal(format!("write failed: {e}")))?;
            Ok(0)
        }
        Command::Chain { graph, method, common } => {
            let g = load_graph(&graph)?.into_labeled()?;
            let p = match method {
                SumMethod::Recursion => ch_poly(&g)?,
                SumMethod::Definition => ch_from_definition(&g, common.cap)?,
            };
            emit(out, &p, common.json)
        }
        Command::Sheaf { graph, method, common } => {
            let g = load_graph(&graph)?.into_labeled()?;
            let p = match method {
                SumMethod::Recursion => sh_poly(&g)?,
                SumMethod::Definition => sh_from_definition(&g, common.cap)?,
            };
            emit(out, &p, common.json)
        }
        Command::Flow { graph, common } => emit(out, &flow_poly(&load_graph(&graph)?.shape()), common.json),
        Command::Tension { graph, common } => emit(out, &tension_poly(&load_graph(&graph)?.shape())?, common.json),
        Command::Replace { graph, spec, ring, method, common } => {
            let g = load_graph(&graph)?.into_signed()?;
            let spec = load_spec(&spec)?;
            let ring = match ring {
                RingArg::General => Ring::General,
                RingArg::Bracket => Ring::Bracket,
            };
            let p = match method {
                ReplaceMethod::Explicit => {
                    if ring == Ring::General {
                        if let Some((id, _)) = spec.iter().find(|(_, d)| d.n < 0) {
                            return Err(Error::NegativeInGeneralRing(id.clone()));
                        }
                    }
                    q_poly_in(&build_replaced(&g, &spec)?.graph, &QConstants::for_ring(ring))
                }
                ReplaceMethod::Weights => q_hat_via_w(&g, &spec, ring)?,
                ReplaceMethod::Reductions => q_hat_via_reductions(&g, &spec, ring)?,
                ReplaceMethod::Polynomial => match spec.iter().next().map(|(_, d)| d.kind) {
                    Some(ReplacementKind::Sheaf) => q_gs_via_sheaf_poly(&g, &spec, ring)?,
                    _ => q_gc_via_chain_poly(&g, &spec, ring)?,
                },
            };
            emit(out, &p, common.json)
        }
        Command::Rational { word, method, common } => {
            let w = RationalWord::new(parse_terms(&word, "word")?)?;
            let b = match method {
                RationalMethod::Auto => bracket_rational(&w)?,
                RationalMethod::Transfer => transfer_bracket(&w)?,
                RationalMethod::Oracle => oracle_bracket(&w)?,
            };
            emit(out, b.poly(), common.json)
        }
        Command::Theta { terms, method, common } => {
            let t = parse_terms(&terms, "terms")?;
            let [m1, m2, m3] = t[..] else {
                return Err(Error::invalid("terms", format!("expected 3 terms, got {}", t.len())));
            };
            let b = match method {
                ThetaMethod::Formula => bracket_theta(m1, m2, m3)?,
                ThetaMethod::Oracle => oracle_theta(m1, m2, m3)?,
            };
            emit(out, b.poly(), common.json)
        }
        Command::Verify { suite, seed } => {
            let suite = match suite {
                SuiteArg::Small => Suite::Small,
                SuiteArg::Full => Suite::Full,
            };
            let mut ok = true;
            for report in run_suite(suite, seed) {
                ok &= report.passed();
                writeln!(out, "{report}").map_err(|e| Error::Internal(format!("write failed: {e}")))?;
            }
            Ok(if ok { 0 } else { 2 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("knotpoly").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rational_words() {
        assert_eq!(run_str(&["rational", "1,1"]), (0, "-A^4 - A^-4\n".into(), String::new()));
        let (code, out, _) = run_str(&["rational", "-1,-1", "--method", "oracle"]);
        assert_eq!((code, out.as_str()), (0, "-A^4 - A^-4\n"));
        let (code, _, err) = run_str(&["rational", "0,1"]);
        assert_eq!(code, 1);
        assert!(err.contains("term 0"), "{err}");
    }

    #[test]
    fn theta_terms() {
        assert_eq!(run_str(&["theta", "1,1,1"]).1, "A^7 - A^3 - A^-5\n");
        assert_eq!(run_str(&["theta", "1,1"]).0, 1);
    }

    #[test]
    fn eval_parsing() {
        let p = parse_eval("t=d, z2=A^2").unwrap();
        assert_eq!(p.t, MultiPoly::var(crate::polyring::VAR_D));
        assert_eq!(p.z1, MultiPoly::var(VAR_Z1));
        assert!(parse_eval("x=1").is_err());
        assert!(parse_eval("t").is_err());
    }

    #[test]
    fn unknown_verb_is_input_error() {
        assert_eq!(run_str(&["frobnicate"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
