use std::path::PathBuf;
use std::process::ExitCode;

use amalgam_core::arcs::orbit_table_csv;
use amalgam_core::{
    export, field_table, format_orbits, verify, Config, Context, ExportFormat, GroupScope, HarnessError, Side, DEFAULT_MODULUS,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "amalgam", version, about = "Build and verify the locally 5-arc transitive coset graph of PSU(3,8)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Primitive degree-6 polynomial over GF(2) as a bitmask (0b..., 0x... or decimal).
    #[arg(long, global = true, value_parser = parse_modulus, default_value_t = DEFAULT_MODULUS)]
    modulus: u32,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Rebuild the graph instead of reading or writing the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "both")]
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Graph6,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the field, groups and graph and write the cache.
    Build,
    /// Evaluate the claims and print the report.
    Verify {
        #[arg(long, value_enum, default_value = "both")]
        group: GroupArg,
        /// Comma-separated claim ids or id prefixes.
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
        /// Random vertices on which local characteristic is re-checked.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Write the graph as an edge list, graph6 or JSON adjacency.
    Export {
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Orbits of a vertex stabilizer on s-arcs from a base vertex.
    Arcs {
        /// 1 for the valency-4 base vertex, 2 for the valency-3 one; both if omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        side: Option<u8>,
        /// Arc length; 0 to 8 for the whole table if omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=8))]
        s: Option<u8>,
        #[arg(long, value_enum, default_value = "both")]
        group: GroupArg,
    },
    /// Dump the antilog table of the field.
    FieldTable,
}

fn parse_modulus(s: &str) -> Result<u32, String> {
    let parsed = if let Some(b) = s.strip_prefix("0b") {
        u32::from_str_radix(b, 2)
    } else if let Some(h) = s.strip_prefix("0x") {
        u32::from_str_radix(h, 16)
    } else {
        s.parse()
    };
    parsed.map_err(|e| format!("invalid modulus {s:?}: {e}"))
}

fn scope(g: GroupArg) -> GroupScope {
    match g {
        GroupArg::H => GroupScope::H,
        GroupArg::K => GroupScope::K,
        GroupArg::Both => GroupScope::Both,
    }
}

fn config(g: &Global) -> Config {
    Config { modulus: g.modulus, use_cache: !g.no_cache, ..Config::default() }
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    let g = &cli.global;
    match cli.cmd {
        Cmd::FieldTable => {
            print!("{}", field_table(g.modulus)?);
            Ok(0)
        }
        Cmd::Build => {
            let mut ctx = Context::new(config(g))?;
            let source = ctx.ensure_graph()?;
            let summary = ctx.graph().summary();
            if g.json {
                println!("{}", serde_json::json!({ "source": source, "cache": ctx.cache_path(), "summary": summary }));
            } else {
                println!(
                    "{} vertices ({} + {}), {} edges, {:?}; cache {}",
                    summary.side1 + summary.side2,
                    summary.side1,
                    summary.side2,
                    summary.edges,
                    source,
                    ctx.cache_path().display()
                );
            }
            Ok(0)
        }
        Cmd::Verify { group, claims, samples } => {
            let mut ctx = Context::new(Config { groups: scope(group), claims, samples, ..config(g) })?;
            let report = verify(&mut ctx)?;
            if g.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(amalgam_core::harness::exit_code(&report))
        }
        Cmd::Export { format, out } => {
            let mut ctx = Context::new(config(g))?;
            ctx.ensure_graph()?;
            let format = match format {
                FormatArg::EdgeList => ExportFormat::EdgeList,
                FormatArg::Graph6 => ExportFormat::Graph6,
                FormatArg::Json => ExportFormat::Json,
            };
            export(ctx.graph(), format, &out)?;
            Ok(0)
        }
        Cmd::Arcs { side, s, group } => {
            let mut ctx = Context::new(config(g))?;
            ctx.ensure_graph()?;
            let sides: Vec<Side> = match side {
                Some(1) => vec![Side::One],
                Some(_) => vec![Side::Two],
                None => vec![Side::One, Side::Two],
            };
            let lengths: Vec<usize> = s.map_or((0..=8).collect(), |s| vec![s as usize]);
            let mut rows = Vec::new();
            for w in scope(group).groups() {
                for &sd in &sides {
                    for &s in &lengths {
                        rows.push(ctx.arc_row(sd, s, w));
                    }
                }
            }
            if g.json {
                println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
            } else if rows.len() == 1 {
                println!("{}", format_orbits(&rows[0]));
            } else {
                print!("{}", orbit_table_csv(&rows));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
