use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cubecensus::blocks::{assemble_triangulation, format_selftest, selftest};
use cubecensus::census::{classify, run_census, verify_theorem, ClassRow, Record};
use cubecensus::enumeration::enumerate_canonical;
use cubecensus::CubeGluing;

#[derive(Parser, Debug)]
#[command(name = "cubecensus", version, about = "Census of closed 3-manifolds glued from one cube")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Only pair opposite faces.
    #[arg(long, global = true)]
    opposite_only: bool,
    /// Worker threads for classification.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Gluing-spec file, one pair per line (`classify` only).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Also print the assembled triangulation (`classify` only).
    #[arg(long, global = true)]
    dump_triangulation: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// List canonical classes with orbit sizes.
    Enumerate,
    /// Classify the gluing in `--input`.
    Classify,
    /// Classify every canonical class.
    Census,
    /// Run the census and check the non-orientable classification.
    Verify,
    Blocks {
        #[command(subcommand)]
        action: BlocksAction,
    },
    /// Same as `blocks selftest`.
    BlocksSelftest,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum BlocksAction {
    /// Compare block edge valences with the expected table.
    Selftest,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    #[value(alias = "structured")]
    Records,
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(1)
}

fn row_text(row: &ClassRow) -> String {
    let mut out = format!("class: {}\norbit size: {}\nmanifold: {}\n", row.class_id, row.orbit_size, row.manifold);
    if let Some(d) = &row.diagnostic {
        out += &format!("diagnostic: {d}\n");
    }
    if let Some(fp) = &row.fingerprint {
        out += &format!("orientable: {}\nH1: {}\nH1 mod 2: {}\nH1 mod 3: {}\n", fp.orientable, fp.h1, fp.h1_mod2, fp.h1_mod3);
        if let Some(h) = &fp.double_cover_h1 {
            out += &format!("double cover H1: {h}\n");
        }
    }
    if let (Some(kind), Some(tets), Some(v)) = (row.block_kind, row.tet_count, &row.valences) {
        let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        out += &format!("block: {}\ntetrahedra: {tets}\nvalences: {}\n", kind.name(), v.join(","));
    }
    if let Some(c) = &row.covers {
        out += &format!("cyclic covers: {c}\n");
    }
    if let Some(r) = &row.reference {
        out += &format!("reference: {r}\n");
    }
    out
}

fn run(cli: Cli) -> ExitCode {
    let command = match cli.command {
        Command::Blocks { action: BlocksAction::Selftest } => Command::BlocksSelftest,
        c => c,
    };
    if command != Command::Classify {
        if cli.input.is_some() {
            return fail("--input is only accepted by classify");
        }
        if cli.dump_triangulation {
            return fail("--dump-triangulation is only accepted by classify");
        }
    }
    if command == Command::Verify && cli.opposite_only {
        return fail("verify needs the full census; drop --opposite-only");
    }
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            return fail(e);
        }
    }
    match command {
        Command::Enumerate => {
            let classes = enumerate_canonical(cli.opposite_only);
            for c in &classes {
                match cli.format {
                    Format::Text => println!("{}\t{}", c.id(), c.orbit_size),
                    Format::Records => println!(
                        "{}",
                        serde_json::json!({ "classId": c.id(), "orbitSize": c.orbit_size })
                    ),
                }
            }
            if cli.format == Format::Text {
                println!("# {} classes", classes.len());
            }
            ExitCode::SUCCESS
        }
        Command::Classify => {
            let Some(path) = cli.input else {
                return fail("classify needs --input PATH");
            };
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            };
            let g = match CubeGluing::parse(&text) {
                Ok(g) => g,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            };
            if cli.opposite_only && !g.is_opposite_matching() {
                return fail("--opposite-only given but the gluing pairs non-opposite faces");
            }
            let row = classify(&g);
            match cli.format {
                Format::Text => print!("{}", row_text(&row)),
                Format::Records => println!("{}", serde_json::to_string(&Record::from(&row)).expect("plain data")),
            }
            if cli.dump_triangulation {
                match assemble_triangulation(&g) {
                    Ok(a) => print!("{}", a.triangulation.dump()),
                    Err(e) => eprintln!("no triangulation: {e}"),
                }
            }
            ExitCode::SUCCESS
        }
        Command::Census => {
            let report = run_census(cli.opposite_only);
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Records => print!("{}", report.to_records()),
            }
            ExitCode::SUCCESS
        }
        Command::Verify => {
            let v = verify_theorem(&run_census(false));
            match cli.format {
                Format::Text => print!("{}", v.to_text()),
                Format::Records => println!("{}", serde_json::to_string(&v).expect("plain data")),
            }
            if v.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Command::BlocksSelftest => {
            let rows = selftest();
            match cli.format {
                Format::Text => print!("{}", format_selftest(&rows)),
                Format::Records => {
                    for r in &rows {
                        println!("{}", serde_json::to_string(r).expect("plain data"));
                    }
                }
            }
            if rows.iter().all(|r| r.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Command::Blocks { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = e.print();
            ExitCode::from(1)
        }
    }
}
