use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use crosscap::cc_engine::{enumerate_min_sequences, u_minus_of_code};
use crosscap::embedding::Diagram;
use crosscap::flype::{apply_flype, enumerate_orbit, flype_candidates};
use crosscap::oracle::{beta1_oracle, crosscap_oracle, seifert_state, state_circles};
use crosscap::splice_table::summand_names;
use crosscap::tables::{read_expected, verify};
use crosscap::{CodeFormat, DtCode, FaceColor, GaussCode, KnotName, TableSet};

#[derive(Parser)]
#[command(
    name = "crosscap",
    version,
    about = "Crosscap numbers of prime alternating knots"
)]
struct Cli {
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Gauss,
    Dt,
}

impl From<Format> for CodeFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Gauss => CodeFormat::Gauss,
            Format::Dt => CodeFormat::Dt,
        }
    }
}

#[derive(Args)]
struct CodeArg {
    /// Knot code, e.g. "1,2,3,1,2,3" or "4,6,2"
    code: String,

    #[arg(long, value_enum, default_value = "gauss")]
    format: Format,
}

impl CodeArg {
    fn parse(&self) -> Result<GaussCode> {
        let code = match self.format {
            Format::Gauss => self.code.parse()?,
            Format::Dt => GaussCode::from_dt(&self.code.parse::<DtCode>()?)?,
        };
        Ok(code)
    }
}

#[derive(Args)]
struct TablesArg {
    /// Directory holding the persisted tables
    #[arg(long, default_value = "tables")]
    out: PathBuf,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    max_n: u32,

    #[command(flatten)]
    tables: TablesArg,
}

#[derive(Subcommand)]
enum Command {
    /// Add "name,code" rows to the diagram table
    Ingest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "dt")]
        format: Format,
        #[command(flatten)]
        tables: TablesArg,
    },
    /// Print the reduced form of a code
    Canon(CodeArg),
    /// Convert between Gauss and DT codes
    Dt(CodeArg),
    /// Print face data and crossing signs
    Faces(CodeArg),
    /// List flype candidates and their results
    Flypes(CodeArg),
    /// List the DT codes of every diagram in the flype orbit
    Orbit(CodeArg),
    /// Splice at every crossing and name the summands when tables exist
    Splice {
        #[command(flatten)]
        code: CodeArg,
        #[command(flatten)]
        tables: TablesArg,
    },
    /// Look up knots by name, or run the recursion on a code
    Cc {
        /// Knot names such as 7_4
        names: Vec<String>,
        /// Code to evaluate directly (may be composite)
        #[arg(long)]
        code: Option<String>,
        #[arg(long, value_enum, default_value = "gauss")]
        format: Format,
        #[command(flatten)]
        tables: TablesArg,
    },
    /// State-surface bounds of a code
    Oracle(CodeArg),
    BuildDdt(BuildArgs),
    BuildDsplice(BuildArgs),
    BuildDcc(BuildArgs),
    /// Compare crosscap numbers against an expected file or the oracle
    Verify {
        /// "name,value" rows
        #[arg(long, required_unless_present = "oracle")]
        input: Option<PathBuf>,
        /// Check against the state-surface oracle instead
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        #[command(flatten)]
        tables: TablesArg,
    },
    /// Every minimal splice sequence, as positions in the current word
    MinSequences {
        #[command(flatten)]
        code: CodeArg,
        #[command(flatten)]
        tables: TablesArg,
    },
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn load(tables: &TablesArg) -> Result<TableSet> {
    TableSet::load(&tables.out).with_context(|| format!("reading {}", tables.out.display()))
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Ingest {
            input,
            format,
            tables,
        } => {
            let mut set = load(&tables)?;
            let count = set
                .ingest(&input, format.into())
                .with_context(|| format!("ingesting {}", input.display()))?;
            set.save(&tables.out)?;
            println!("ingested {count} knots");
        }
        Command::Canon(arg) => println!("{}", arg.parse()?.reduced_form()),
        Command::Dt(arg) => match arg.format {
            Format::Gauss => println!("{}", arg.parse()?.to_dt()?),
            Format::Dt => println!("{}", arg.parse()?),
        },
        Command::Faces(arg) => {
            let d = Diagram::new(arg.parse()?)?;
            for color in [FaceColor::A, FaceColor::B] {
                let crossings = d.faces.crossings_around(color);
                let edges = d.faces.edges_around(color);
                println!("crossings around {color:?} faces: {crossings:?}");
                println!("edges around {color:?} faces: {edges:?}");
            }
            println!("signs: {:?}", d.signs.0);
        }
        Command::Flypes(arg) => {
            let code = arg.parse()?.reduced_form();
            let d = Diagram::new(code.clone())?;
            for fc in flype_candidates(&code, &d.faces) {
                let result = match apply_flype(&code, &fc) {
                    Ok(next) => next.reduced_form().to_dt()?.to_string(),
                    Err(e) => format!("skipped: {e}"),
                };
                println!(
                    "e1={} e2={} c={} {:?}: {result}",
                    fc.e1, fc.e2, fc.c, fc.color
                );
            }
        }
        Command::Orbit(arg) => {
            for dt in enumerate_orbit(&arg.parse()?)? {
                println!("{dt}");
            }
        }
        Command::Splice { code, tables } => {
            let code = code.parse()?;
            let ddt = load(&tables)?.dt_index();
            for k in 1..=code.crossings() as u32 {
                let next = code.splice_at(k)?;
                let names = match summand_names(&next, &ddt) {
                    Ok(names) => join(names, " # "),
                    Err(_) => "?".into(),
                };
                println!("{k}: [{next}] {names}");
            }
        }
        Command::Cc {
            names,
            code,
            format,
            tables,
        } => {
            let set = load(&tables)?;
            if let Some(code) = code {
                let code = CodeArg { code, format }.parse()?;
                println!("{}", u_minus_of_code(&code, &set.dt_index(), &set.d_cc)?);
            }
            for name in names {
                let knot: KnotName = name.parse()?;
                match set.d_cc.get(&knot) {
                    Some(v) => println!("{knot},{v}"),
                    None => bail!("no value for {knot}; run build-dcc first"),
                }
            }
        }
        Command::Oracle(arg) => {
            let d = Diagram::new(arg.parse()?)?;
            let seifert = state_circles(&d, seifert_state(&d));
            println!("crosscap {}", crosscap_oracle(&d));
            println!("beta1 {}", beta1_oracle(&d));
            println!("seifert circles {seifert}");
        }
        Command::BuildDdt(args) => {
            let mut set = load(&args.tables)?;
            set.build_ddt(args.max_n)?;
            set.save(&args.tables.out)?;
            let total: usize = set.d_dt.range(..=args.max_n).map(|(_, l)| l.len()).sum();
            println!("{total} diagrams");
        }
        Command::BuildDsplice(args) => {
            let mut set = load(&args.tables)?;
            set.build_dsplice(args.max_n)?;
            set.save(&args.tables.out)?;
            let total: usize = set
                .d_splice
                .range(..=args.max_n)
                .map(|(_, l)| l.len())
                .sum();
            println!("{total} splice rows");
        }
        Command::BuildDcc(args) => {
            let mut set = load(&args.tables)?;
            set.build_dcc(args.max_n)?;
            set.save(&args.tables.out)?;
            for (n, level) in set.d_cc.levels().range(3..) {
                println!("level {n}: {} knots", level.len());
            }
        }
        Command::Verify {
            input,
            oracle,
            max_n,
            tables,
        } => {
            let set = load(&tables)?;
            let report = match input {
                Some(path) if !oracle => verify(&read_expected(&path)?, &set.d_cc),
                _ => set.verify_oracle(max_n)?,
            };
            println!("{report}");
            return Ok(report.is_clean());
        }
        Command::MinSequences { code, tables } => {
            let code = code.parse()?;
            let set = load(&tables)?;
            for seq in enumerate_min_sequences(&code, &set.dt_index(), &set.d_cc)? {
                println!("{}", join(seq, ","));
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
