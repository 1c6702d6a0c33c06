//! `ginv`: command-line front end. Every command prints one line of canonical
//! JSON (sorted keys, big integers as decimal strings).
//!
//! Exit codes: 0 success, 1 malformed input, 2 mathematical inconsistency.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use catenary::configuration::{catenary_from_config, configuration_of, Configuration};
use catenary::constructions::{
    cat_qcone, g_dual, g_free_coextension, g_free_extension, g_free_product, g_lift, g_relax, g_shuffle, g_truncate,
};
use catenary::freeproduct::detect_free_product;
use catenary::ginvariant::{
    catenary_from_g, g_brute_force_with_limit, g_from_catenary, g_invariant, tutte_brute_force_with_limit,
    tutte_from_g, DEFAULT_ORACLE_LIMIT,
};
use catenary::parameters::{family_counts, flat_count, flat_count_coloops, has_spanning_circuit, FamilyKind};
use catenary::reconstruction::{
    circuit_deck, copoint_deck, girth_deck, h_sums, rank_k_deck, DeckFile, DeckRole,
};
use catenary::verify::verify;
use catenary::{BuildOptions, CatenaryData, Error, GInvariant, Matroid, MatroidFile};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ginv", version, about = "G-invariant, catenary data and Tutte polynomial of small matroids")]
struct Cli {
    /// Largest ground set for the brute-force oracles.
    #[arg(long, global = true, env = "GINV_ORACLE_LIMIT", default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Symbol,
    Gamma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpKind {
    Dual,
    Truncate,
    Lift,
    Freeext,
    Freecoext,
    Relax,
    Sum,
    Freeproduct,
    Qcone,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Role {
    Copoint,
    Circuit,
    RankK,
    HSums,
    Girth,
}

impl From<Role> for DeckRole {
    fn from(r: Role) -> Self {
        match r {
            Role::Copoint => DeckRole::Copoint,
            Role::Circuit => DeckRole::Circuit,
            Role::RankK => DeckRole::RankK,
            Role::HSums => DeckRole::HSums,
            Role::Girth => DeckRole::Girth,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ParamChoice {
    /// Number of flats of rank K and size S.
    #[arg(long, num_args = 2, value_names = ["K", "S"])]
    flats: Option<Vec<usize>>,
    /// Number of flats of rank K and size S with C coloops in the restriction.
    #[arg(long, num_args = 3, value_names = ["K", "S", "C"])]
    coloops: Option<Vec<usize>>,
    /// Number of circuits of size S.
    #[arg(long, value_name = "S")]
    circuits: Option<usize>,
    /// Number of cocircuits of size S.
    #[arg(long, value_name = "S")]
    cocircuits: Option<usize>,
    /// Whether some circuit is spanning.
    #[arg(long)]
    hamiltonian: bool,
}

#[derive(Subcommand)]
enum Command {
    /// The G-invariant of a matroid file.
    Ginv {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "symbol")]
        basis: Basis,
        /// Use the permutation oracle instead of flag enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Catenary data (flag counts by composition).
    Catenary { file: PathBuf },
    /// The Tutte polynomial, specialized from the G-invariant.
    Tutte {
        file: PathBuf,
        /// Use the subset-expansion oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Parameters derived from the G-invariant.
    Params {
        file: PathBuf,
        #[command(flatten)]
        choice: ParamChoice,
    },
    /// A construction applied at the level of invariants.
    Op {
        #[arg(value_enum)]
        kind: OpKind,
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
        /// Cone parameter for qcone.
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, value_enum, default_value = "symbol")]
        basis: Basis,
    },
    /// The configuration (labeled lattice of cyclic flats) of a coloop-free matroid.
    Config { file: PathBuf },
    /// Catenary data computed from a configuration file alone.
    ConfigCatenary { file: PathBuf },
    /// Sharp free-product factorizations visible in the G-invariant.
    DetectFreeproduct { file: PathBuf },
    /// Reassemble the G-invariant from a deck file.
    Reconstruct {
        #[arg(long)]
        deck: PathBuf,
        #[arg(long, value_enum)]
        role: Option<Role>,
    },
    /// Write the deck of a matroid.
    Deck {
        file: PathBuf,
        #[arg(long, value_enum)]
        role: Role,
        /// Rank for rank-k decks; girth parameter for girth decks.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the identity suite on a matroid.
    Verify {
        file: PathBuf,
        /// Include constructions, parameters, configurations and free products.
        #[arg(long)]
        deep: bool,
    },
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_inconsistency() {
            Failure::Math(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, path: &Path) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_matroid(path: &Path) -> CliResult<Matroid> {
    let file: MatroidFile = parse(read_json(path)?, path)?;
    Ok(file.build(BuildOptions::default())?)
}

/// A matroid file, a G-invariant file or a catenary file.
enum Input {
    Matroid(Matroid),
    Invariant(GInvariant),
}

impl Input {
    fn g(&self) -> GInvariant {
        match self {
            Input::Matroid(m) => g_invariant(m),
            Input::Invariant(g) => g.clone(),
        }
    }

    fn matroid(self, path: &Path) -> CliResult<Matroid> {
        match self {
            Input::Matroid(m) => Ok(m),
            Input::Invariant(_) => Err(input_err(format!("{}: this command needs a matroid file", path.display()))),
        }
    }
}

fn load(path: &Path) -> CliResult<Input> {
    let v = read_json(path)?;
    if v.get("presentation").is_some() {
        let file: MatroidFile = parse(v, path)?;
        Ok(Input::Matroid(file.build(BuildOptions::default())?))
    } else if v.get("coeffs").is_some() {
        Ok(Input::Invariant(parse(v, path)?))
    } else if v.get("counts").is_some() {
        let c: CatenaryData = parse(v, path)?;
        Ok(Input::Invariant(g_from_catenary(&c)))
    } else {
        Err(input_err(format!(
            "{}: expected a matroid, G-invariant or catenary file",
            path.display()
        )))
    }
}

fn emit(v: impl serde::Serialize) -> CliResult<()> {
    // Round-tripping through Value sorts object keys.
    let v = serde_json::to_value(v).map_err(|e| Failure::Input(e.to_string()))?;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{v}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Input(e.to_string())),
        _ => Ok(()),
    }
}

fn emit_g(g: &GInvariant, basis: Basis) -> CliResult<()> {
    match basis {
        Basis::Symbol => emit(g),
        Basis::Gamma => emit(catenary_from_g(g)?),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let limit = cli.oracle_limit;
    match cli.command {
        Command::Ginv { file, basis, oracle } => {
            let g = if oracle {
                g_brute_force_with_limit(&load_matroid(&file)?, limit)?
            } else {
                load(&file)?.g()
            };
            emit_g(&g, basis)
        }
        Command::Catenary { file } => emit(catenary_from_g(&load(&file)?.g())?),
        Command::Tutte { file, oracle } => {
            if oracle {
                emit(tutte_brute_force_with_limit(&load_matroid(&file)?, limit)?)
            } else {
                emit(tutte_from_g(&load(&file)?.g())?)
            }
        }
        Command::Params { file, choice } => {
            let g = load(&file)?.g();
            if let Some(ks) = choice.flats {
                let count = flat_count(&catenary_from_g(&g)?, ks[0], ks[1])?;
                emit(json!({"parameter": "flats", "k": ks[0], "s": ks[1], "count": count.to_string()}))
            } else if let Some(ksc) = choice.coloops {
                let count = flat_count_coloops(&catenary_from_g(&g)?, ksc[0], ksc[1], ksc[2])?;
                emit(json!({"parameter": "coloops", "k": ksc[0], "s": ksc[1], "c": ksc[2], "count": count.to_string()}))
            } else if let Some(s) = choice.circuits {
                let count = family_counts(&g, FamilyKind::Circuit, s, None)?;
                emit(json!({"parameter": "circuits", "s": s, "count": count.to_string()}))
            } else if let Some(s) = choice.cocircuits {
                let count = family_counts(&g, FamilyKind::Cocircuit, s, None)?;
                emit(json!({"parameter": "cocircuits", "s": s, "count": count.to_string()}))
            } else {
                emit(json!({"parameter": "hamiltonian", "value": has_spanning_circuit(&g)?}))
            }
        }
        Command::Op { kind, files, q, basis } => {
            let binary = matches!(kind, OpKind::Sum | OpKind::Freeproduct);
            if files.len() != if binary { 2 } else { 1 } {
                return Err(input_err(format!("this operation takes {} file(s)", if binary { 2 } else { 1 })));
            }
            if q.is_some() != (kind == OpKind::Qcone) {
                return Err(input_err("--q goes with qcone and only with qcone"));
            }
            let g = load(&files[0])?.g();
            let out = match kind {
                OpKind::Dual => g_dual(&g),
                OpKind::Truncate => g_truncate(&g)?,
                OpKind::Lift => g_lift(&g)?,
                OpKind::Freeext => g_free_extension(&g),
                OpKind::Freecoext => g_free_coextension(&g),
                OpKind::Relax => g_relax(&g)?,
                OpKind::Sum => g_shuffle(&g, &load(&files[1])?.g()),
                OpKind::Freeproduct => g_free_product(&g, &load(&files[1])?.g()),
                OpKind::Qcone => g_from_catenary(&cat_qcone(&catenary_from_g(&g)?, q.unwrap())?),
            };
            emit_g(&out, basis)
        }
        Command::Config { file } => emit(configuration_of(&load(&file)?.matroid(&file)?)?),
        Command::ConfigCatenary { file } => {
            let c: Configuration = parse(read_json(&file)?, &file)?;
            emit(catenary_from_config(&c)?)
        }
        Command::DetectFreeproduct { file } => emit(detect_free_product(&load(&file)?.g())?),
        Command::Reconstruct { deck, role } => {
            let d: DeckFile = parse(read_json(&deck)?, &deck)?;
            if let Some(role) = role {
                if DeckRole::from(role) != d.role {
                    return Err(input_err("--role does not match the role recorded in the deck file"));
                }
            }
            emit(d.reconstruct()?)
        }
        Command::Deck { file, role, k } => {
            let m = load(&file)?.matroid(&file)?;
            let need_k = || k.ok_or_else(|| input_err("this deck role needs --k"));
            let deck = match role {
                Role::Copoint => DeckFile::from_invariant_deck(DeckRole::Copoint, &copoint_deck(&m)),
                Role::Circuit => DeckFile::from_invariant_deck(DeckRole::Circuit, &circuit_deck(&m)),
                Role::HSums => DeckFile::from_invariant_deck(DeckRole::HSums, &h_sums(&m)),
                Role::RankK => DeckFile::from_pair_deck(need_k()?, &rank_k_deck(&m, need_k()?)?),
                Role::Girth => {
                    let g = need_k()?;
                    let mut d = DeckFile::from_invariant_deck(DeckRole::Girth, &girth_deck(&m, g)?);
                    d.k = Some(g);
                    d.n = Some(m.size());
                    d
                }
            };
            emit(deck)
        }
        Command::Verify { file, deep } => {
            let report = verify(&load_matroid(&file)?, deep, limit);
            let ok = report.ok();
            emit(report)?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Math("some identities failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("inconsistent: {msg}");
            ExitCode::from(2)
        }
    }
}
