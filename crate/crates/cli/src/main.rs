use std::fmt::Write as _;
use std::io::{ErrorKind, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sperner_core::families::{build_f, build_g, build_m, build_s, build_u, Parity, PrimedGroundEncoding};
use sperner_core::format::{
    appendix_json, class_label, cmp_display, display_representative, function_to_json, parse_function, parse_systems,
    render_appendix_text, render_label, to_json, to_shorthand,
};
use sperner_core::functions::{clone_report, function_deck, term_function, FiniteFunction};
use sperner_core::iso::find_isomorphism;
use sperner_core::minors::{hypergraph_deck, hypomorphic, sperner_deck, strongly_hypomorphic, Deck};
use sperner_core::{deck_table, Error, SetSystem};

#[derive(Parser)]
#[command(name = "sperner", version, about = "Decks, isomorphism and reconstruction of Sperner systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a member of a named family: G m i, F m, M m i, U n i, S m i.
    Family {
        #[arg(ignore_case = true)]
        name: FamilyName,
        /// m, or n for U.
        size: usize,
        /// Parity index 1 (odd) or 2 (even).
        parity: Option<usize>,
        /// Print E_m labels such as 3' and 0 instead of a file.
        #[arg(long)]
        primed_labels: bool,
        #[arg(long, value_enum, default_value_t = SystemFormat::Json)]
        format: SystemFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the deck of each system (or function) in a file.
    Deck {
        /// File path or family token such as M3_1.
        input: String,
        #[arg(long, value_enum, default_value_t = DeckMode::Sperner)]
        mode: DeckMode,
        /// Ground set size for shorthand input.
        #[arg(long)]
        n: Option<usize>,
        /// Replace input that is not an antichain by its minimal blocks.
        #[arg(long)]
        minimalize: bool,
    },
    /// Compare two systems; exits 0 when the relation holds and 1 otherwise.
    Check {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Relation::Iso)]
        relation: Relation,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        minimalize: bool,
    },
    /// Deck table of all Sperner systems over [n], 2 <= n <= 5.
    Appendix {
        n: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Membership of a Boolean function in the named clones.
    Clones {
        /// Function file, or with --term a system file or family token.
        input: String,
        /// Use the term function of a Sperner system.
        #[arg(long)]
        term: bool,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    G,
    F,
    M,
    U,
    S,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemFormat {
    Json,
    Shorthand,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeckMode {
    Sperner,
    Hypergraph,
    Function,
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Iso,
    Hypomorphic,
    Strong,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(cli.command, &mut out) {
        Ok(code) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                _ => code,
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap() { 3 } else { 2 })
        }
    }
}

fn run(command: Command, out: &mut String) -> Outcome<ExitCode> {
    match command {
        Command::Family { name, size, parity, primed_labels, format, out: path } => {
            let (system, encoding) = family(name, size, parity)?;
            let text = if primed_labels { encoding.render(&system) } else { render_system(&system, format)? };
            emit(&text, path.as_deref(), out)?;
        }
        Command::Deck { input, mode, n, minimalize } => {
            let text = match mode {
                DeckMode::Function => render_function_deck(&parse_function(&read(&input)?)?)?,
                DeckMode::Sperner | DeckMode::Hypergraph => {
                    let systems = load_systems(&input, n, minimalize)?;
                    let mut buf = String::new();
                    for (k, s) in systems.iter().enumerate() {
                        if systems.len() > 1 {
                            let _ = writeln!(buf, "{}# {}", if k > 0 { "\n" } else { "" }, render_label(s));
                        }
                        let deck = match mode {
                            DeckMode::Sperner => sperner_deck(s)?,
                            _ => hypergraph_deck(s)?,
                        };
                        buf.push_str(&render_deck(&deck)?);
                    }
                    buf
                }
            };
            out.push_str(&text);
        }
        Command::Check { a, b, relation, n, minimalize } => {
            let a = load_one(&a, n, minimalize)?;
            let b = load_one(&b, n, minimalize)?;
            if a.n() != b.n() {
                return Err(Failure::Usage(format!("ground sets differ: {} vs {}", a.n(), b.n())));
            }
            let holds = match relation {
                Relation::Iso => {
                    let w = find_isomorphism(&a, &b)?;
                    match &w {
                        Some(w) => {
                            let images: Vec<String> = w.images().iter().map(|e| e.to_string()).collect();
                            let _ = writeln!(out, "isomorphic\nwitness {}", images.join(" "));
                        }
                        None => out.push_str("not isomorphic\n"),
                    }
                    w.is_some()
                }
                Relation::Hypomorphic => {
                    let h = hypomorphic(&a, &b)?;
                    let _ = writeln!(out, "{}", if h { "hypomorphic" } else { "not hypomorphic" });
                    h
                }
                Relation::Strong => {
                    let h = strongly_hypomorphic(&a, &b)?;
                    let _ = writeln!(out, "{}", if h { "strongly hypomorphic" } else { "not strongly hypomorphic" });
                    h
                }
            };
            return Ok(ExitCode::from(if holds { 0 } else { 1 }));
        }
        Command::Appendix { n, format } => {
            let table = deck_table(n)?;
            match format {
                TableFormat::Text => out.push_str(&render_appendix_text(&table)?),
                TableFormat::Json => {
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&appendix_json(&table)).expect("json"));
                }
            }
        }
        Command::Clones { input, term, n } => {
            let f = if term { term_function(&load_one(&input, n, false)?)? } else { parse_function(&read(&input)?)? };
            for (name, member) in clone_report(&f)?.entries() {
                let _ = writeln!(out, "{name} {}", if member { "✓" } else { "✗" });
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parity_of(parity: Option<usize>) -> Outcome<Parity> {
    let p = parity.ok_or_else(|| Failure::Usage("this family needs a parity index 1 or 2".into()))?;
    Ok(Parity::from_index(p)?)
}

fn family(name: FamilyName, size: usize, parity: Option<usize>) -> Outcome<(SetSystem, PrimedGroundEncoding)> {
    let (system, m, extras) = match name {
        FamilyName::G => (build_g(size, parity_of(parity)?)?, size, 0),
        FamilyName::F => {
            if parity.is_some() {
                return Err(Failure::Usage("F takes no parity".into()));
            }
            (build_f(size)?, size, 0)
        }
        FamilyName::M => (build_m(size, parity_of(parity)?)?, size, 0),
        FamilyName::U => {
            let s = build_u(size, parity_of(parity)?)?;
            let m = (size - 1) / 2;
            (s, m, size - 2 * m)
        }
        FamilyName::S => (build_s(size, parity_of(parity)?)?, size, 0),
    };
    Ok((system.into_inner(), PrimedGroundEncoding::new(m, extras)?))
}

/// Tokens such as `M3_1`, `U8_2` or `F4`.
fn family_token(token: &str) -> Option<Outcome<SetSystem>> {
    let mut chars = token.chars();
    let name = match chars.next()? {
        'G' => FamilyName::G,
        'F' => FamilyName::F,
        'M' => FamilyName::M,
        'U' => FamilyName::U,
        'S' => FamilyName::S,
        _ => return None,
    };
    let rest = chars.as_str();
    let (size, parity) = match rest.split_once('_') {
        Some((s, p)) => (s.parse().ok()?, Some(p.parse().ok()?)),
        None => (rest.parse().ok()?, None),
    };
    Some(family(name, size, parity).map(|(s, _)| s))
}

fn read(path: &str) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn load_systems(input: &str, n: Option<usize>, minimalize: bool) -> Outcome<Vec<SetSystem>> {
    let systems = if !Path::new(input).exists() {
        match family_token(input) {
            Some(s) => vec![s?],
            None => return Err(Failure::Usage(format!("{input}: no such file or family"))),
        }
    } else {
        parse_systems(&read(input)?, n)?
    };
    if systems.is_empty() {
        return Err(Failure::Usage(format!("{input}: no systems found")));
    }
    Ok(systems
        .into_iter()
        .map(|s| {
            if s.is_antichain() {
                s
            } else if minimalize {
                eprintln!("warning: {} is not an antichain; using its minimal blocks", render_label(&s));
                s.minimalize().into_inner()
            } else {
                eprintln!("warning: {} is not an antichain", render_label(&s));
                s
            }
        })
        .collect())
}

fn load_one(input: &str, n: Option<usize>, minimalize: bool) -> Outcome<SetSystem> {
    let mut systems = load_systems(input, n, minimalize)?;
    if systems.len() != 1 {
        return Err(Failure::Usage(format!("{input}: expected one system, found {}", systems.len())));
    }
    Ok(systems.remove(0))
}

fn render_system(s: &SetSystem, format: SystemFormat) -> Outcome<String> {
    Ok(match format {
        SystemFormat::Json => to_json(s),
        SystemFormat::Shorthand => to_shorthand(s)?,
    })
}

fn emit(text: &str, path: Option<&Path>, out: &mut String) -> Outcome<()> {
    match path {
        Some(path) => {
            std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            let _ = writeln!(out, "{text}");
            Ok(())
        }
    }
}

/// One `label ×multiplicity` line per card, in display order.
fn render_deck(deck: &Deck) -> Outcome<String> {
    let mut cards = Vec::new();
    for (form, mult) in deck.iter() {
        let system = form.to_system();
        cards.push((display_representative(&system)?, class_label(form)?, mult));
    }
    cards.sort_by(|a, b| cmp_display(&a.0, &b.0));
    Ok(cards.into_iter().map(|(_, label, mult)| format!("{label} ×{mult}\n")).collect())
}

fn render_function_deck(f: &FiniteFunction) -> Outcome<String> {
    let deck = function_deck(f)?;
    Ok(deck.cards().iter().map(|(card, mult)| format!("{} ×{mult}\n", function_to_json(card))).collect())
}
