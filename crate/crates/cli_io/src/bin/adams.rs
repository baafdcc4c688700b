use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cli_io::prompt::{self, Prompter};
use cli_io::session::{self, RunConfig, THREADS_ENV};
use cli_io::{run, ClassToken, CliError};
use resolution::{ExtClass, Resolution};
use secondary_lift::SecondaryValue;
use sseq_engine::ChartKind;

/// Adams spectral sequence data at p = 2: d₂ differentials, products and
/// Massey products in π_{*,*}Cτ², and the differentials they propagate.
///
/// Values not given as flags are prompted for on stderr and read from stdin.
/// Data is written to stdout unless --output is given.
#[derive(Parser)]
#[command(name = "adams", version)]
struct Cli {
    /// S_2, or the path of a module file (filtration_one only).
    #[arg(long, global = true)]
    module: Option<String>,
    /// Directory for resumable checkpoints; "" for none.
    #[arg(long, global = true)]
    save_dir: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    max_n: Option<i32>,
    #[arg(long, global = true)]
    max_s: Option<u32>,
    /// Worker threads (default: $ADAMS_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write per-generator timings of the secondary computation here.
    #[arg(long, global = true)]
    timing: Option<PathBuf>,
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, hide = true)]
    stop_after_stem: Option<i32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All nonzero d₂ on basis classes.
    Secondary,
    /// All products with the standard lift of one class.
    Product {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i32>,
        #[arg(long)]
        s: Option<u32>,
        /// [c₀, c₁, …] or x_(n, s, i).
        #[arg(long)]
        class: Option<ClassToken>,
    },
    /// <-, b, a> for all (-).
    Massey {
        #[command(flatten)]
        a: ASpec,
        #[command(flatten)]
        b: BSpec,
    },
    /// All E₂ products with h_0, h_1, h_2, h_3.
    #[command(name = "filtration_one")]
    FiltrationOne,
    /// Hidden extensions and the differentials they propagate from d₂.
    Propagate {
        /// Extra multiplier NAME=x_(n, s, i), besides h_0, h_1, h_2, h_0^2.
        #[arg(long = "multiplier")]
        multipliers: Vec<String>,
    },
    /// SVG chart of the E₂ page with d₂, or of the E₃ page.
    Chart {
        #[arg(long, value_enum, default_value_t = Page::E3)]
        page: Page,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Page {
    E2,
    E3,
}

macro_rules! spec {
    ($name:ident, $n:literal, $s:literal, $e:literal, $c:literal, $tn:literal, $tc:literal) => {
        #[derive(clap::Args)]
        struct $name {
            #[arg(long = $n, id = $n, allow_negative_numbers = true)]
            n: Option<i32>,
            #[arg(long = $s, id = $s)]
            s: Option<u32>,
            #[arg(long = $e, id = $e)]
            name: Option<String>,
            #[arg(long = $c, id = $c)]
            class: Option<ClassToken>,
            #[arg(long = $tn, id = $tn)]
            tau_name: Option<String>,
            #[arg(long = $tc, id = $tc)]
            tau_class: Option<ClassToken>,
        }
    };
}

spec!(ASpec, "a-n", "a-s", "a-name", "a-class", "a-tau-name", "a-tau-class");
spec!(BSpec, "b-n", "b-s", "b-name", "b-class", "b-tau-name", "b-tau-class");

struct Spec {
    n: Option<i32>,
    s: Option<u32>,
    name: Option<String>,
    class: Option<ClassToken>,
    tau_name: Option<String>,
    tau_class: Option<ClassToken>,
}

impl From<ASpec> for Spec {
    fn from(a: ASpec) -> Self {
        Spec { n: a.n, s: a.s, name: a.name, class: a.class, tau_name: a.tau_name, tau_class: a.tau_class }
    }
}

impl From<BSpec> for Spec {
    fn from(b: BSpec) -> Self {
        Spec { n: b.n, s: b.s, name: b.name, class: b.class, tau_name: b.tau_name, tau_class: b.tau_class }
    }
}

type Io = Prompter<io::StdinLock<'static>, io::Stderr>;

fn config(cli: &Cli, p: &mut Io) -> Result<RunConfig, CliError> {
    let module = p.value(cli.module.clone(), prompt::MODULE, Some(session::SPHERE))?;
    let save_dir: String = p.value(cli.save_dir.clone(), prompt::SAVE_DIR, Some(""))?;
    let max_n = p.value(cli.max_n, prompt::MAX_N, Some("30"))?;
    let max_s = p.value(cli.max_s, prompt::MAX_S, Some("15"))?;
    let cfg = RunConfig {
        module,
        save_dir: (!save_dir.is_empty()).then(|| PathBuf::from(save_dir)),
        max_n,
        max_s,
        timing: cli.timing.clone(),
        stop_after_stem: cli.stop_after_stem,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn read_class(
    p: &mut Io,
    res: &Resolution,
    n: i32,
    s: u32,
    given: Option<ClassToken>,
    prompt: &str,
) -> Result<ExtClass, CliError> {
    let token: ClassToken = p.value(given, prompt, None)?;
    Ok(token.resolve(res, n, s)?)
}

/// Reads `[e] + τ[f]` in the order of the interactive session; returns the
/// display name and value.
fn read_value(p: &mut Io, res: &Resolution, label: &str, spec: Spec) -> Result<(String, SecondaryValue), CliError> {
    let n = p.value(spec.n, &format!("n of {label}:"), None)?;
    let s = p.value(spec.s, &format!("s of {label}:"), None)?;
    let name: String = p.value(spec.name, &format!("Name of Ext part of {label}:"), None)?;
    let e = read_class(p, res, n, s, spec.class, &format!("Input Ext class {name}:"))?;
    let tau_name: String = p.value(spec.tau_name, &format!("Name of τ part of {label}:"), Some(""))?;
    if tau_name.is_empty() {
        return Ok((name, run::value(res, e, None)?));
    }
    let f = read_class(p, res, n, s + 1, spec.tau_class, &format!("Input Ext class {tau_name}:"))?;
    Ok((format!("{name} + τ {tau_name}"), run::value(res, e, Some(f))?))
}

fn parse_multiplier(res: &Resolution, text: &str) -> Result<(String, SecondaryValue), CliError> {
    let bad = || CliError::Usage(format!("--multiplier {text:?}: expected NAME=x_(n, s, i)"));
    let (name, token) = text.split_once('=').ok_or_else(bad)?;
    let token: ClassToken = token.parse()?;
    let ClassToken::Basis { n, s, .. } = token else {
        return Err(bad());
    };
    Ok((name.trim().to_string(), run::value(res, token.resolve(res, n, s)?, None)?))
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(|l| l.to_string() + "\n").collect()
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let mut p = Prompter::new(io::stdin().lock(), io::stderr());
    if matches!(cli.command, Command::Massey { .. }) {
        for line in prompt::MASSEY_BANNER {
            p.say(line)?;
        }
    }
    let cfg = config(&cli, &mut p)?;
    let (max_n, max_s) = (cfg.max_n, cfg.max_s);
    let text = match cli.command {
        Command::Secondary => lines(&run::d2_lines(&*session::secondary(&cfg)?, max_n, max_s)?),
        Command::FiltrationOne => lines(&run::filtration_one_lines(&session::resolve(&cfg)?, max_n, max_s)?),
        Command::Product { name, n, s, class } => {
            let name: String = p.value(name, prompt::PRODUCT_NAME, None)?;
            let n = p.value(n, &format!("n of Ext class {name}:"), None)?;
            let s = p.value(s, &format!("s of Ext class {name}:"), None)?;
            let token: ClassToken = p.value(class, prompt::INPUT_CLASS, None)?;
            let sec = session::secondary(&cfg)?;
            let x = token.resolve(sec.resolution(), n, s)?;
            lines(&run::product_lines(&sec, &name, x, max_n, max_s)?)
        }
        Command::Massey { a, b } => {
            let sec = session::secondary(&cfg)?;
            let a = read_value(&mut p, sec.resolution(), "a", a.into())?;
            let b = read_value(&mut p, sec.resolution(), "b", b.into())?;
            lines(&run::massey_lines(&sec, (&a.0, a.1), (&b.0, b.1), max_n, max_s)?)
        }
        Command::Propagate { multipliers } => {
            let sec = session::secondary(&cfg)?;
            let mut all = run::standard_multipliers(&sec)?;
            for m in &multipliers {
                all.push(parse_multiplier(sec.resolution(), m)?);
            }
            let prop = run::propagate(&sec, &all, max_n, max_s)?;
            format!("# hidden extensions\n{}# differentials\n{}", lines(&prop.extensions), lines(&prop.derived))
        }
        Command::Chart { page } => {
            let kind = match page {
                Page::E2 => ChartKind::E2,
                Page::E3 => ChartKind::E3,
            };
            run::chart(&*session::secondary(&cfg)?, kind, max_n, max_s)?
        }
    };
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(CliError::io("<output>"))
}

fn threads(cli: &Cli) -> Result<(), CliError> {
    let n = match cli.threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => {
                Some(v.parse().map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v:?} is not a thread count")))?)
            }
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = threads(&cli).and_then(|_| {
        let mut out: Box<dyn Write> = match &cli.output {
            Some(path) => Box::new(BufWriter::new(File::create(path).map_err(CliError::io(path))?)),
            None => Box::new(io::stdout().lock()),
        };
        execute(cli, &mut out)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
