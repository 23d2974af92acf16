use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use forge_core::algebra::{format_polynomial, parse_document, parse_infix, vars, Document, Identity, OpSymbol, Signature, Variable};
use forge_core::consequence::{enumerate_basis, in_span, lifted_instances, same_degree_instances, sets_equivalent, Instance, SpanOutcome};
use forge_core::free_leibniz::{expand, expand_binary_tree};
use forge_core::kp::{kp_apply, VarietyPresentation};
use forge_core::replay::{replay_many, Section};
use forge_core::rightcomm::{permuted_associator_expand, JordanReducer};
use forge_core::systems::{
    build_envelope, check_leibniz, check_lts, envelope_json, lie_triple_check, lts_equations, render_table, render_vector, search_fp,
    two_dimensional_systems, CheckReport, TernarySystem,
};
use forge_core::{fixtures, Rational};

// stdout writes ignore errors so that `forge ... | head` exits quietly
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

const GRAMMAR: &str = "\
Expression grammar (prefix):
  expr     := ['+'|'-'] term (('+'|'-') term)*
  term     := [rational ['*']] atom
  atom     := var | opname '(' expr (',' expr)* ')' | '(' expr ')'
  rational := int ['/' posint]
  opname   := name ['_' variant]       e.g. br_1, br_2, br_3

Identity files: one entry per line, `name: expr [= expr]`; `# comment`;
declarations `op <name>/<arity> [variants <n>]`; indented lines continue
the previous entry.

Infix products (free-expand): juxtaposition or `*`, left-associative,
e.g. `(a*(b*c))*d`, `(ab)(cd)`.

Structure-constant JSON:
  {\"dim\": 2, \"basis\": [\"x\",\"y\"], \"triple\": {\"x,y,x\": \"y\", \"y,x,x\": \"-1*y\"}}
  omitted triples are zero; values are linear combinations of basis names.
Envelope JSON:
  {\"dim\": 6, \"basis\": [...], \"product\": {\"x,xy\": {\"y\": \"-1\"}}}";

#[derive(Parser)]
#[command(name = "forge", version, about = "Identities, normal forms and envelopes for Leibniz triple systems", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a variety presentation into its dialgebra counterpart.
    Kp {
        #[arg(long = "in")]
        input: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether target identities follow from generators at one degree.
    Span(SpanArgs),
    /// Compare two identity sets by mutual span inclusion.
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Comma-separated variables; `a,b,c,...` by default.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Normal form of a bracket expression in the free right Leibniz algebra.
    FreeExpand {
        #[arg(long)]
        expr: String,
    },
    /// Check identities in the free Leibniz algebra; ternary operations
    /// act as iterated products `(xy)z`.
    FreeCheck {
        #[arg(long)]
        identities: PathBuf,
    },
    /// Reduce permuted-associator expansions by the right Jordan identities.
    Jordan {
        /// Comma-separated names among lts-a, lts-b, lts1, lts2, lts3.
        #[arg(long, value_delimiter = ',', required = true)]
        check: Vec<String>,
        #[arg(long)]
        emit_certificate: bool,
    },
    /// Check the triple-system axioms on structure constants.
    Verify {
        #[arg(long)]
        system: PathBuf,
    },
    /// Build the Leibniz envelope of a triple system.
    Envelope {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Table)]
        emit: Emit,
        #[arg(long)]
        check_leibniz: bool,
    },
    /// Two-dimensional systems: check the known list or search over F_p.
    Classify2d(ClassifyArgs),
    /// Recompute a section's results and print PASS/FAIL per claim.
    Replay {
        /// Section name or alias, or `all`.
        section: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Args)]
struct SpanArgs {
    #[arg(long)]
    target: PathBuf,
    #[arg(long)]
    gens: PathBuf,
    #[arg(long)]
    degree: usize,
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// Also use one-degree lifts of lower-degree generators.
    #[arg(long)]
    lift: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, required_unless_present = "search_fp", conflicts_with = "search_fp")]
    verify_known: bool,
    /// Prime to search over; requires --mask.
    #[arg(long, requires = "mask")]
    search_fp: Option<u64>,
    /// Comma-separated unknowns allowed to be nonzero, e.g. alpha122,alpha222.
    #[arg(long, value_delimiter = ',')]
    mask: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Table,
    Json,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn document(path: &Path) -> Result<Document> {
    let text = read(path)?;
    parse_document(&text).with_context(|| format!("parsing {}", path.display()))
}

fn system(path: &Path) -> Result<TernarySystem> {
    TernarySystem::from_json(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

fn variables(given: &[String], degree: usize) -> Result<Vec<Variable>> {
    if given.is_empty() {
        if degree > 26 {
            bail!("degree {degree} needs explicit --vars");
        }
        return Ok(vars(&"abcdefghijklmnopqrstuvwxyz"[..degree]));
    }
    if given.len() != degree {
        bail!("--vars lists {} variables but the degree is {degree}", given.len());
    }
    Ok(given.iter().map(|v| Variable::new(v)).collect())
}

fn render_document(ids: &[Identity]) -> String {
    let sig = Signature::from_ops(ids.iter().flat_map(|i| i.signature().iter()));
    let mut s = sig.declarations();
    for id in ids {
        s.push_str(&format!("{}: {}\n", id.name(), format_polynomial(id.lhs())));
    }
    s
}

fn outcome_line<K: std::fmt::Display>(name: &str, o: &SpanOutcome<K>) -> String {
    match o {
        SpanOutcome::InSpan(c) => format!("PASS  {name} = {c}"),
        SpanOutcome::NotInSpan { witness, .. } => format!("FAIL  {name}: not in span (unmatched {witness})"),
    }
}

fn cmd_kp(input: &Path, out: Option<&Path>) -> Result<bool> {
    let doc = document(input)?;
    let kp = kp_apply(&VarietyPresentation::new(doc.identities()))?;
    let text = render_document(&kp.all());
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => out_raw!("{text}"),
    }
    Ok(true)
}

fn cmd_span(a: &SpanArgs) -> Result<bool> {
    let targets = document(&a.target)?.identities();
    let gens = document(&a.gens)?.identities();
    let letters = variables(&a.vars, a.degree)?;
    let mut ops: BTreeSet<OpSymbol> = BTreeSet::new();
    for id in targets.iter().chain(&gens) {
        ops.extend(id.signature().iter().cloned());
    }
    let mut instances: Vec<Instance> = Vec::new();
    for g in &gens {
        let d = g.variables().len();
        if d == a.degree {
            instances.extend(same_degree_instances(g, &letters)?);
        } else if a.lift && d + 1 == a.degree {
            let binary: Vec<&OpSymbol> = ops.iter().filter(|o| o.arity() == 2).collect();
            let [op] = binary[..] else {
                bail!("--lift needs exactly one binary operation, found {}", binary.len());
            };
            instances.extend(lifted_instances(g, a.degree, &letters, op)?);
        } else {
            bail!("generator {} has degree {d}, target degree is {}", g.name(), a.degree);
        }
    }
    let ops: Vec<OpSymbol> = ops.into_iter().collect();
    let basis = enumerate_basis(&ops, a.degree, &letters)?;
    let mut ok = true;
    for t in &targets {
        let o = in_span(t.lhs(), &instances, &basis)?;
        ok &= o.is_in_span();
        out!("{}", outcome_line(t.name(), &o));
    }
    Ok(ok)
}

fn cmd_equiv(a: &Path, b: &Path, degree: usize, given: &[String]) -> Result<bool> {
    let sa = document(a)?.identities();
    let sb = document(b)?.identities();
    let letters = variables(given, degree)?;
    let e = sets_equivalent(&sa, &sb, degree, &letters)?;
    out!("# A in span of B ({} instances)", e.forward_generators.len());
    for (n, o) in &e.forward {
        out!("{}", outcome_line(n, o));
    }
    out!("# B in span of A ({} instances)", e.backward_generators.len());
    for (n, o) in &e.backward {
        out!("{}", outcome_line(n, o));
    }
    out!("{}", if e.holds() { "EQUIVALENT" } else { "NOT EQUIVALENT" });
    Ok(e.holds())
}

fn cmd_free_expand(expr: &str) -> Result<bool> {
    let p = parse_infix(expr, &OpSymbol::new("lb", 2)).context("parsing --expr")?;
    out!("{}", expand_binary_tree(&p)?);
    Ok(true)
}

fn cmd_free_check(path: &Path) -> Result<bool> {
    let mut ok = true;
    for id in document(path)?.identities() {
        if !id.is_multilinear() {
            bail!("identity {} is not multilinear", id.name());
        }
        let e = expand(id.lhs())?;
        ok &= e.is_zero();
        if e.is_zero() {
            out!("PASS  {}", id.name());
        } else {
            out!("FAIL  {} = {e}", id.name());
        }
    }
    Ok(ok)
}

fn lts_name(s: &str) -> Result<&'static str> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "lts-a" => "LTS-A",
        "lts-b" => "LTS-B",
        "lts1" => "LTS1",
        "lts2" => "LTS2",
        "lts3" => "LTS3",
        other => bail!("unknown identity {other:?}; expected lts-a, lts-b, lts1, lts2 or lts3"),
    })
}

fn cmd_jordan(names: &[String], emit: bool) -> Result<bool> {
    let plain = JordanReducer::new(&[])?;
    let mut ok = true;
    for n in names {
        let name = lts_name(n)?;
        let e = permuted_associator_expand(&fixtures::identity("lts", name)?)?;
        if e.is_zero() {
            out!("PASS  {name}: vanishes under right commutativity");
            continue;
        }
        let stored = matches!(name, "LTS-B" | "LTS3").then(|| fixtures::jordan_certificate(name));
        let preferred: Vec<String> = stored.iter().flat_map(|c| c.keys().cloned()).collect();
        let own;
        let reducer = if preferred.is_empty() {
            &plain
        } else {
            own = JordanReducer::new(&preferred.iter().map(String::as_str).collect::<Vec<_>>())?;
            &own
        };
        let o = reducer.reduces(&e)?;
        match o.certificate() {
            Some(c) => {
                out!("PASS  {name}: {} straightened terms, {} generator instances", e.len(), c.terms.len());
                if emit {
                    out!("      {name} = {c}");
                }
            }
            None => {
                ok = false;
                out!("FAIL  {name}: not a consequence of RJ and RO");
            }
        }
    }
    Ok(ok)
}

fn print_report(label: &str, r: &CheckReport<Rational>, basis: &[String]) {
    out!("{}  {label} ({} tuples, {} violations)", if r.holds() { "PASS" } else { "FAIL" }, r.checked, r.violations.len());
    for v in r.violations.iter().take(5) {
        let args: Vec<&str> = v.tuple.iter().map(|&i| basis[i].as_str()).collect();
        out!("      {}({}) = {}", v.identity, args.join(","), render_vector(&v.value, basis));
    }
}

fn cmd_verify(path: &Path) -> Result<bool> {
    let t = system(path)?;
    let lts = check_lts(&t);
    print_report("LTS-A, LTS-B", &lts, t.basis());
    let lie = lie_triple_check(&t);
    out!("info  Lie triple axioms {}", if lie.holds() { "hold" } else { "fail" });
    Ok(lts.holds())
}

fn cmd_envelope(path: &Path, emit: Emit, leibniz: bool) -> Result<bool> {
    let t = system(path)?;
    let a = build_envelope(&t);
    match emit {
        Emit::Table => out_raw!("{}", render_table(&a)),
        Emit::Json => out!("{}", serde_json::to_string_pretty(&envelope_json(&a))?),
    }
    if !leibniz {
        return Ok(true);
    }
    let r = check_leibniz(&a);
    print_report("right Leibniz identity", &r, a.basis());
    Ok(r.holds())
}

fn cmd_classify(a: &ClassifyArgs) -> Result<bool> {
    let eqs = lts_equations(2);
    if a.verify_known {
        let mut ok = true;
        for (name, t) in two_dimensional_systems(&[0, 1, 2, -3]) {
            let pass = eqs.satisfied_by(&t) && check_lts(&t).holds();
            ok &= pass;
            out!("{}  {name}", if pass { "PASS" } else { "FAIL" });
        }
        return Ok(ok);
    }
    let p = a.search_fp.expect("clap requires one mode");
    let sols = search_fp(&eqs, p, &a.mask)?;
    out!("# {} points over F_{p}, unknowns outside the mask are zero", sols.points.len());
    out!("{}", sols.mask.join(" "));
    for pt in &sols.points {
        out!("{}", pt.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
    }
    Ok(true)
}

fn cmd_replay(section: &str, json: bool, parallel: bool) -> Result<bool> {
    let sections = Section::parse_many(section)?;
    let reports = replay_many(&sections, parallel)?;
    if json {
        let all: Vec<_> = reports.iter().map(|r| r.to_json()).collect();
        out!("{}", serde_json::to_string_pretty(&all)?);
    } else {
        for r in &reports {
            out_raw!("{}", r.to_text());
        }
    }
    Ok(reports.iter().all(|r| r.passed()))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Kp { input, out } => cmd_kp(&input, out.as_deref()),
        Command::Span(a) => cmd_span(&a),
        Command::Equiv { a, b, degree, vars } => cmd_equiv(&a, &b, degree, &vars),
        Command::FreeExpand { expr } => cmd_free_expand(&expr),
        Command::FreeCheck { identities } => cmd_free_check(&identities),
        Command::Jordan { check, emit_certificate } => cmd_jordan(&check, emit_certificate),
        Command::Verify { system } => cmd_verify(&system),
        Command::Envelope { system, emit, check_leibniz } => cmd_envelope(&system, emit, check_leibniz),
        Command::Classify2d(a) => cmd_classify(&a),
        Command::Replay { section, json, parallel } => cmd_replay(&section, json, parallel),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
