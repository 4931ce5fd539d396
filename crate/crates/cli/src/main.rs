use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotoid::chord::{chord_of_singular, regular_diagram, singular_height};
use knotoid::closure::{closure, ClosureKind};
use knotoid::codec::{emit_ktd, parse_ktd};
use knotoid::invariants::{
    evaluate, skein_extend_with, turaev_coefficients, vassiliev_coefficients, Invariant, InvariantValue, StateSumConfig,
};
use knotoid::moves::{random_walk_steps, WalkConfig};
use knotoid::poly::rational_json;
use knotoid::{CrossingKind, Error, KnotoidDiagram};

#[derive(Parser)]
#[command(name = "knotoid", version, about = "Invariants, closures and chord calculus for knotoid diagrams")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Inv {
    Bracket,
    F,
    Turaev,
    Affine,
    Vbar,
    Vcoeff,
    Tcoeff,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Closure {
    U,
    O,
    V,
    S,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an invariant of a KTD diagram.
    Compute {
        #[arg(long, value_enum)]
        inv: Inv,
        /// Sum over resolutions of singular crossings.
        #[arg(long)]
        skein: bool,
        /// Highest coefficient index for vcoeff / tcoeff.
        #[arg(long, default_value_t = 3)]
        order: u32,
        /// Crossing cap for state sums.
        #[arg(long, default_value_t = 24)]
        max_crossings: usize,
        input: Option<PathBuf>,
    },
    /// Close a knotoid diagram along its minimal shortcut.
    Closure {
        #[arg(long = "type", value_enum)]
        kind: Closure,
        input: Option<PathBuf>,
    },
    /// Winding number of the singular loop of a one-singularity diagram.
    Chord { input: Option<PathBuf> },
    /// Emit the regular diagram with the given winding number.
    Regular {
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
    },
    /// Random isotopy walk; with --check, compare invariants at every step.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        check: bool,
        input: Option<PathBuf>,
    },
    /// Exponential expansion coefficients of f (v_n) and T (t_{k,l}).
    Expand {
        #[arg(long, default_value_t = 3)]
        order: u32,
        input: Option<PathBuf>,
    },
    /// Parse and validate a KTD file.
    Validate { input: Option<PathBuf> },
}

enum Failure {
    Domain(Error),
    Parse(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Parse(e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<KnotoidDiagram, Failure> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(e.to_string()))?;
            s
        }
    };
    Ok(parse_ktd(&text)?)
}

fn invariant(inv: Inv) -> Option<Invariant> {
    match inv {
        Inv::Bracket => Some(Invariant::Bracket),
        Inv::F => Some(Invariant::Normalized),
        Inv::Turaev => Some(Invariant::Turaev),
        Inv::Affine => Some(Invariant::Affine),
        Inv::Vbar => Some(Invariant::Vbar),
        Inv::Vcoeff | Inv::Tcoeff => None,
    }
}

fn vcoeff(d: &KnotoidDiagram, order: u32) -> Result<(String, Value), Failure> {
    let v = vassiliev_coefficients(d, order)?;
    let text = v.iter().enumerate().map(|(n, c)| format!("v{n} = {c}\n")).collect();
    let terms: Vec<Value> = v.iter().enumerate().map(|(n, c)| json!([[n], rational_json(c)])).collect();
    Ok((text, json!({ "invariant": "vcoeff", "terms": terms })))
}

fn tcoeff(d: &KnotoidDiagram, order: u32) -> Result<(String, Value), Failure> {
    let t = turaev_coefficients(d, order)?;
    let text = t.iter().map(|((k, l), c)| format!("t{k},{l} = {c}\n")).collect();
    let terms: Vec<Value> = t.iter().map(|((k, l), c)| json!([[k, l], rational_json(c)])).collect();
    Ok((text, json!({ "invariant": "tcoeff", "terms": terms })))
}

fn emit(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text if text.ends_with('\n') => text,
        Format::Text => text + "\n",
        Format::Json => value.to_string() + "\n",
    }
}

fn compute(
    inv: Inv,
    skein: bool,
    order: u32,
    cfg: &StateSumConfig,
    d: &KnotoidDiagram,
    format: Format,
) -> Result<String, Failure> {
    if let Some(i) = invariant(inv) {
        let v: InvariantValue = if skein { skein_extend_with(i, d, cfg)? } else { evaluate(i, d, cfg)? };
        return Ok(emit(format, v.to_string(), v.to_json(i.name())));
    }
    if skein {
        return Err(Failure::Domain(Error::Construction("--skein applies to polynomial invariants".into())));
    }
    let (text, value) = if inv == Inv::Vcoeff { vcoeff(d, order)? } else { tcoeff(d, order)? };
    Ok(emit(format, text, value))
}

fn fuzz(d: &KnotoidDiagram, steps: usize, seed: u64, check: bool, format: Format) -> Result<String, Failure> {
    let cfg = WalkConfig::for_diagram(d);
    let walk = random_walk_steps(d, steps, seed, &cfg);
    let last = walk.last().map_or_else(|| d.clone(), |s| s.diagram.clone());
    let mut mismatches = Vec::new();
    if check {
        let sums = StateSumConfig::default();
        let probes: Vec<Invariant> = [Invariant::Normalized, Invariant::Turaev, Invariant::Affine, Invariant::Vbar]
            .into_iter()
            .filter(|&i| evaluate(i, d, &sums).is_ok())
            .collect();
        let base: Vec<InvariantValue> = probes.iter().map(|&i| evaluate(i, d, &sums)).collect::<Result<_, _>>()?;
        for (k, step) in walk.iter().enumerate() {
            for (i, b) in probes.iter().zip(&base) {
                if &evaluate(*i, &step.diagram, &sums)? != b {
                    mismatches.push((k, i.name()));
                }
            }
        }
    }
    match format {
        Format::Text => {
            let mut out = format!("# seed {seed}, {} steps\n", walk.len());
            if check {
                out += &format!("# invariance: {}\n", if mismatches.is_empty() { "ok" } else { "FAILED" });
                for (k, name) in &mismatches {
                    out += &format!("# step {k}: {name} changed\n");
                }
            }
            Ok(out + &emit_ktd(&last))
        }
        Format::Json => {
            let bad: Vec<Value> = mismatches.iter().map(|(k, n)| json!({ "step": k, "invariant": n })).collect();
            Ok(json!({
                "seed": seed,
                "steps": walk.len(),
                "checked": check,
                "mismatches": bad,
                "diagram": emit_ktd(&last),
            })
            .to_string()
                + "\n")
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Compute { inv, skein, order, max_crossings, input } => {
            let d = read_input(&input)?;
            let cfg = StateSumConfig { max_crossings, ..StateSumConfig::default() };
            compute(inv, skein, order, &cfg, &d, format)
        }
        Command::Closure { kind, input } => {
            let d = read_input(&input)?;
            let kind = match kind {
                Closure::U => ClosureKind::Under,
                Closure::O => ClosureKind::Over,
                Closure::V => ClosureKind::Virtual,
                Closure::S => ClosureKind::Singular,
            };
            let c = closure(&d, kind, None)?;
            let value =
                json!({ "crossings": c.crossing_count(), "added": c.added_crossings(), "diagram": c.to_text() });
            Ok(emit(format, c.to_text(), value))
        }
        Command::Chord { input } => {
            let c = chord_of_singular(&read_input(&input)?)?;
            Ok(emit(format, c.to_string(), json!({ "winding": c.w, "height": singular_height(c) })))
        }
        Command::Regular { w } => {
            let d = regular_diagram(w);
            Ok(emit(format, emit_ktd(&d), json!({ "w": w, "diagram": emit_ktd(&d) })))
        }
        Command::Fuzz { steps, seed, check, input } => fuzz(&read_input(&input)?, steps, seed, check, format),
        Command::Expand { order, input } => {
            let d = read_input(&input)?;
            let (vt, vj) = vcoeff(&d, order)?;
            let (tt, tj) = tcoeff(&d, order)?;
            Ok(emit(format, vt + &tt, json!([vj, tj])))
        }
        Command::Validate { input } => {
            let d = read_input(&input)?;
            let text = format!(
                "valid: {} crossings ({} classical, {} singular, {} virtual), {} edges",
                d.crossing_count(),
                d.count_kind(CrossingKind::Classical),
                d.count_kind(CrossingKind::Singular),
                d.count_kind(CrossingKind::Virtual),
                d.edge_count()
            );
            Ok(emit(format, text, json!({ "valid": true, "crossings": d.crossing_count(), "edges": d.edge_count() })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: Parse: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
