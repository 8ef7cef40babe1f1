use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symcoh::catalog::{builtin_group, k_cohomology_crosscheck, GroupSpec};
use symcoh::ce::{ncz_from_relative, ComputeConfig, FullComplex, RelativeComplex, MAX_EXTERIOR_DIM_ENV};
use symcoh::chern_weil::{epsilon_with, ChernWeil};
use symcoh::linalg::Field;
use symcoh::lie::{CartanDecomposition, CoefficientModule, LieAlgebra};
use symcoh::reports::full_report;
use symcoh::Error;

#[derive(Parser, Debug)]
#[command(name = "symcoh", version, about = "Relative Lie algebra cohomology and characteristic classes of symmetric pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Betti numbers of H^*(g; a)
    Cohomology,
    /// Betti numbers of H^*((g, k); a)
    Relative,
    /// Non-cohomologous-to-zero test, by κ and by odd generation
    Ncz,
    /// Invariant generators of k and their Chern–Weil classes
    ChernWeil,
    /// Ranks of the characteristic morphisms ε^n
    Epsilon,
    /// Compact dual of the pair
    Dual,
    /// Full report on H^n(G; U(1))
    Report,
    /// Cross-check H^*(k) against the primitive-degree tables
    Crosscheck,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Options {
    /// Builtin group, e.g. SL(3,R), SU*(4), Sp(2,R)
    #[arg(long, global = true)]
    group: Option<String>,
    /// Lie algebra JSON file
    #[arg(long, global = true, value_name = "FILE")]
    algebra: Option<PathBuf>,
    /// Decomposition JSON file (k_indices/p_indices or k_basis/p_basis)
    #[arg(long, global = true, value_name = "FILE")]
    decomposition: Option<PathBuf>,
    /// Coefficient module: `trivial` or a module JSON file
    #[arg(long, global = true, default_value = "trivial")]
    module: String,
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, env = MAX_EXTERIOR_DIM_ENV)]
    max_exterior_dim: Option<u128>,
    #[arg(long, global = true)]
    threads: Option<usize>,
}

/// Problems with the invocation itself (exit 1), as opposed to rejected
/// mathematical input (exit 2).
struct Usage(String);

enum Failure {
    Usage(Usage),
    Invalid(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u)
    }
}

struct Output {
    json: Value,
    text: String,
}

enum Input {
    Group(GroupSpec),
    Files { g: LieAlgebra, dec: Option<CartanDecomposition> },
}

impl Input {
    fn algebra(&self) -> &LieAlgebra {
        match self {
            Input::Group(s) => &s.g,
            Input::Files { g, .. } => g,
        }
    }

    fn decomposition(&self) -> Result<&CartanDecomposition, Usage> {
        match self {
            Input::Group(s) => Ok(&s.dec),
            Input::Files { dec: Some(d), .. } => Ok(d),
            Input::Files { dec: None, .. } => Err(Usage("this command needs --decomposition".into())),
        }
    }

    fn spec(&self) -> Result<&GroupSpec, Usage> {
        match self {
            Input::Group(s) => Ok(s),
            Input::Files { .. } => Err(Usage("this command needs --group".into())),
        }
    }

    fn name(&self) -> String {
        match self {
            Input::Group(s) => s.name.clone(),
            Input::Files { .. } => "custom".into(),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(Usage(format!("cannot read {}: {e}", path.display()))))
}

fn load(opts: &Options) -> Result<Input, Failure> {
    match (&opts.group, &opts.algebra) {
        (Some(_), Some(_)) => Err(Usage("give either --group or --algebra, not both".into()).into()),
        (None, None) => Err(Usage("one of --group or --algebra is required".into()).into()),
        (Some(name), None) => {
            if opts.decomposition.is_some() {
                return Err(Usage("--decomposition needs --algebra".into()).into());
            }
            Ok(Input::Group(builtin_group(name)?))
        }
        (None, Some(path)) => {
            let g = LieAlgebra::from_json(&read(path)?)?;
            let dec = match &opts.decomposition {
                Some(p) => Some(CartanDecomposition::from_json(&g, &read(p)?)?),
                None => None,
            };
            Ok(Input::Files { g, dec })
        }
    }
}

fn module(opts: &Options, g: &LieAlgebra) -> Result<CoefficientModule, Failure> {
    if opts.module == "trivial" {
        return Ok(CoefficientModule::trivial(g, 1));
    }
    Ok(CoefficientModule::from_json(g, &read(&PathBuf::from(&opts.module))?)?)
}

fn config(opts: &Options) -> ComputeConfig {
    let mut c = ComputeConfig::default();
    if let Some(m) = opts.max_exterior_dim {
        c.max_exterior_dim = m;
    }
    c
}

fn betti_text(label: &str, betti: &[usize]) -> String {
    let mut s = format!("{label}\n  degree  betti\n");
    for (n, b) in betti.iter().enumerate() {
        s.push_str(&format!("  {n:>6}  {b:>5}\n"));
    }
    s
}

fn run(cmd: Command, opts: &Options) -> Result<Output, Failure> {
    let input = load(opts)?;
    let cfg = config(opts);
    let max = opts.max_degree;
    let name = input.name();
    match cmd {
        Command::Cohomology => {
            let g = input.algebra();
            let m = module(opts, g)?;
            let h = FullComplex::with_config(g, &m, cfg).cohomology(max.min(g.dim()))?;
            let betti = h.betti();
            Ok(Output {
                text: betti_text(&format!("H^*({name}) route {}", h.route()), &betti),
                json: json!({"command": "cohomology", "input": name, "route": h.route(), "betti": betti,
                             "differential_ranks": h.differential_ranks()}),
            })
        }
        Command::Relative => {
            let dec = input.decomposition()?;
            let m = module(opts, dec.parent())?;
            let rel = RelativeComplex::from_decomposition(dec, &m)?.with_config(cfg);
            let h = rel.cohomology(max)?;
            let betti = h.betti();
            Ok(Output {
                text: betti_text(&format!("H^*(({name}, k)) quotient dim {}", rel.quotient_dim()), &betti),
                json: json!({"command": "relative", "input": name, "betti": betti,
                             "cochain_dims": rel.cochain_dims(max)}),
            })
        }
        Command::Ncz => {
            let dec = input.decomposition()?;
            let m = module(opts, dec.parent())?;
            let rel = RelativeComplex::from_decomposition(dec, &m)?.with_config(cfg.clone());
            let r = ncz_from_relative(&rel, max, &cfg)?;
            let mut text = format!("n.c.z. of k in {name} through degree {}: {}\n", r.max_degree, r.ncz);
            text.push_str(&format!("  kappa path: {}\n", r.kappa_verdict));
            text.push_str(&format!(
                "  odd-generation path: {}\n",
                r.odd_generation.map_or("n/a".to_string(), |b| b.to_string())
            ));
            for d in &r.degrees {
                text.push_str(&format!(
                    "  degree {:>2}: relative {} absolute {} kappa rank {} injective {}\n",
                    d.degree,
                    d.relative_betti,
                    d.full_betti.map_or("-".into(), |b| b.to_string()),
                    d.kappa_rank,
                    d.injective
                ));
            }
            if let Some(d) = r.first_failure {
                text.push_str(&format!("  fails at degree {d}\n"));
            }
            Ok(Output { text, json: json!({"command": "ncz", "input": name, "result": r}) })
        }
        Command::ChernWeil => {
            let spec = input.spec()?;
            let cw = ChernWeil::with_config(&spec.dec, cfg)?;
            let top = max.min(spec.dec.p_dim());
            let rel = cw.complex().cohomology(top)?;
            let mut rows = Vec::new();
            let mut text = format!("Chern–Weil on {} (k = {})\n", spec.name, spec.k_name);
            for (_, p) in spec.generator_forms(top)? {
                let omega = cw.cw(&p)?;
                let coords = rel.class_of(&omega)?;
                let nonzero = coords.iter().any(|c| !c.is_zero());
                let class: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                text.push_str(&format!("  {:<6} degree {:>2}  class {:?}  nonzero {}\n", p.name(), 2 * p.degree(), class, nonzero));
                rows.push(json!({"generator": p.name(), "form_degree": p.degree(), "degree": 2 * p.degree(),
                                 "invariant": p.is_invariant(), "class": class, "nonzero": nonzero}));
            }
            Ok(Output { text, json: json!({"command": "chern-weil", "input": name, "generators": rows}) })
        }
        Command::Epsilon => {
            let spec = input.spec()?;
            let cw = ChernWeil::with_config(&spec.dec, cfg)?;
            let rel = cw.complex().cohomology(max)?;
            let mut table = serde_json::Map::new();
            let mut text = format!("epsilon ranks for {}\n", spec.name);
            for n in 1..=max {
                let e = epsilon_with(spec, &cw, &rel, n)?;
                let extra = if e.hopf_vanishing {
                    " (odd degree)".to_string()
                } else if e.nonzero_monomials.is_empty() {
                    String::new()
                } else {
                    format!("  nonzero on {}", e.nonzero_monomials.join(", "))
                };
                text.push_str(&format!("  {n:>3}  rank {}{extra}\n", e.rank));
                table.insert(n.to_string(), serde_json::to_value(&e).expect("serializable"));
            }
            Ok(Output { text, json: json!({"command": "epsilon", "input": name, "epsilon": table}) })
        }
        Command::Dual => {
            let dec = input.decomposition()?;
            let dual = dec.compact_dual()?;
            let sig = dual.killing_signature();
            let compact = dual.is_compact_semisimple();
            let doc: Value = serde_json::from_str(&dual.to_json()).expect("algebra JSON");
            Ok(Output {
                text: format!(
                    "compact dual of {name}: dim {}, Killing signature (+{}, -{}, 0:{}), negative definite {}\n",
                    dual.dim(),
                    sig.0,
                    sig.1,
                    sig.2,
                    compact
                ),
                json: json!({"command": "dual", "input": name, "algebra": doc,
                             "killing_signature": [sig.0, sig.1, sig.2], "negative_definite": compact}),
            })
        }
        Command::Report => {
            let spec = input.spec()?;
            let r = full_report(spec, max, &cfg)?;
            let json = serde_json::to_value(&r).expect("report serializes");
            Ok(Output { text: r.to_text(), json })
        }
        Command::Crosscheck => {
            let spec = input.spec()?;
            let c = k_cohomology_crosscheck(spec, &cfg)?;
            let dual_ok = spec.dec.checked_compact_dual().is_ok();
            let text = format!(
                "{}: H^*({}) computed {:?}, expected {:?} from primitive degrees {:?}: {}\ncompact dual negative definite: {}\n",
                spec.name,
                c.k_name,
                c.computed,
                c.expected,
                c.primitive_degrees,
                if c.passed { "pass" } else { "FAIL" },
                dual_ok
            );
            Ok(Output { text, json: json!({"command": "crosscheck", "input": name, "k": c, "dual_negative_definite": dual_ok}) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: could not set thread count: {e}");
        }
    }
    let json = cli.opts.format == Format::Json;
    match run(cli.command, &cli.opts) {
        Ok(out) => {
            let body = if json {
                format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json"))
            } else {
                out.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            if json {
                let doc = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
