//! Subcommand definitions and dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use monstate_core::engine::{self, EngineOptions};
use monstate_core::modifier::{self, Modifier, DEFAULT_CELL_BUDGET};
use monstate_core::monster::{self, MonsterSpec, DEFAULT_LETTER_BUDGET};
use monstate_core::oracle::{self, Operation, DEFAULT_WORD_BUDGET};
use monstate_core::transform::{closure, transformation_count, Transformation};
use monstate_core::{Cdfa, StateSet};

use crate::{dot, json, Error};

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(Error::stdout)?
    };
}

#[derive(Parser)]
#[command(
    name = "monstate",
    version,
    about = "Monsters, modifiers, and exact state complexity for regular languages"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build the monster automata for given sizes and final sets.
    Monster {
        /// Component sizes, comma-separated (e.g. 2,3).
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Final sets: state indices comma-separated within a component,
        /// components separated by semicolons (e.g. "1;0,2").
        #[arg(long)]
        finals: String,
        /// Directory for the JSON files m1.json, m2.json, ..
        #[arg(long)]
        out: PathBuf,
        /// Cap on alphabet size.
        #[arg(long, default_value_t = DEFAULT_LETTER_BUDGET)]
        letter_budget: u64,
    },
    /// Apply a modifier chain to automata loaded from JSON.
    Apply {
        /// Modifier chain (e.g. star.inter or inter.2:star).
        #[arg(long)]
        modifier: String,
        /// Input files, comma-separated, one per modifier input.
        #[arg(long, value_delimiter = ',', required = true)]
        auto: Vec<PathBuf>,
        /// Write the result as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the result as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cap on output table cells.
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        cell_budget: u64,
    },
    /// Minimize an automaton loaded from JSON.
    Minimize {
        #[arg(long)]
        auto: PathBuf,
        /// Write the minimal automaton as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the minimal automaton as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Sweep final-set choices of a monster and report minimal sizes.
    Sc {
        /// Modifier chain (e.g. sroot or star.inter).
        #[arg(long)]
        modifier: String,
        /// Monster component sizes, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Which rows to sweep and report.
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
        /// Write the reported rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads for the sweep.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Keep duplicate letters instead of merging them before minimizing.
        #[arg(long)]
        no_dedupe: bool,
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        cell_budget: u64,
        #[arg(long, default_value_t = DEFAULT_LETTER_BUDGET)]
        letter_budget: u64,
    },
    /// Check a modifier against its word-level oracle on given automata.
    Check {
        /// Operation name: union, inter, xor, comp, prefin, conc, star,
        /// sroot, or mirror.
        #[arg(long)]
        op: String,
        /// Input files, comma-separated, one per operand.
        #[arg(long, value_delimiter = ',', required = true)]
        auto: Vec<PathBuf>,
        /// Compare on every word up to this length.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_WORD_BUDGET)]
        word_budget: u64,
    },
    /// Close a set of transformations under composition.
    Semigroup {
        /// Domain size.
        #[arg(long)]
        n: usize,
        /// Generators separated by semicolons, each an image word: a digit
        /// string (e.g. "102;120") or comma-separated values.
        #[arg(long)]
        generators: String,
        /// Cap on closure size.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    /// Every final-set tuple.
    All,
    /// Sweep every tuple, report only the maximizing rows.
    ArgmaxOnly,
    /// One representative per relabeling class fixing state 0.
    Canonical,
}

impl FamilyArg {
    fn name(self) -> &'static str {
        match self {
            FamilyArg::All => "all",
            FamilyArg::ArgmaxOnly => "argmax-only",
            FamilyArg::Canonical => "canonical",
        }
    }
}

/// Parses a final-set specification against the component sizes.
pub fn parse_finals(spec: &str, sizes: &[usize]) -> Result<Vec<StateSet>, Error> {
    let parts: Vec<&str> = spec.split(';').collect();
    if parts.len() != sizes.len() {
        return Err(Error::Format(format!(
            "finals: expected {} components separated by ';', got {}",
            sizes.len(),
            parts.len()
        )));
    }
    parts
        .iter()
        .zip(sizes)
        .enumerate()
        .map(|(i, (part, &n))| {
            let mut set = StateSet::empty(n);
            if part.trim().is_empty() {
                return Ok(set);
            }
            for item in part.split(',') {
                let q: usize = item.trim().parse().map_err(|_| {
                    Error::Format(format!(
                        "finals component {}: invalid state index {:?}",
                        i + 1,
                        item.trim()
                    ))
                })?;
                if q >= n {
                    return Err(Error::Format(format!(
                        "finals component {}: state {q} out of range (must be < {n})",
                        i + 1
                    )));
                }
                set.insert(q);
            }
            Ok(set)
        })
        .collect()
}

/// Parses a semicolon-separated generator list into transformations on `n`
/// points.
pub fn parse_generators(spec: &str, n: usize) -> Result<Vec<Transformation>, Error> {
    spec.split(';')
        .enumerate()
        .map(|(i, word)| {
            let word = word.trim();
            let invalid = |what: &str| {
                Error::Format(format!("generators: entry {} {what}", i + 1))
            };
            if word.is_empty() {
                return Err(invalid("is empty"));
            }
            let image: Vec<usize> = if word.contains(',') {
                word.split(',')
                    .map(|item| {
                        item.trim()
                            .parse()
                            .map_err(|_| invalid(&format!("has invalid value {:?}", item.trim())))
                    })
                    .collect::<Result<_, _>>()?
            } else {
                word.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| invalid(&format!("has invalid digit {c:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            if image.len() != n {
                return Err(invalid(&format!(
                    "has {} values, domain size is {n}",
                    image.len()
                )));
            }
            if let Some(&v) = image.iter().find(|&&v| v >= n) {
                return Err(invalid(&format!("maps outside the domain: {v} >= {n}")));
            }
            Ok(Transformation::from_image(image)?)
        })
        .collect()
}

fn format_finals(finals: &[StateSet]) -> String {
    let parts: Vec<String> = finals.iter().map(|f| f.to_string()).collect();
    format!("({})", parts.join(","))
}

fn format_sizes(sizes: &[usize]) -> String {
    let parts: Vec<String> = sizes.iter().map(|n| n.to_string()).collect();
    parts.join(",")
}

fn format_word(word: &[usize], labels: Option<&[String]>) -> String {
    if word.is_empty() {
        return String::from("the empty word");
    }
    match labels {
        Some(labels) => word
            .iter()
            .map(|&a| labels[a].as_str())
            .collect::<Vec<_>>()
            .join(" "),
        None => {
            let parts: Vec<String> = word.iter().map(|a| a.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_auto(path: &Path) -> Result<Cdfa, Error> {
    match json::from_json(&read_file(path)?) {
        Ok(dfa) => Ok(dfa),
        Err(Error::Format(message)) => {
            Err(Error::Format(format!("{}: {message}", path.display())))
        }
        Err(other) => Err(other),
    }
}

/// CSV rendering of sweep rows: columns `F1..Fk,min_states`, final sets as
/// semicolon-joined state indices.
fn csv_text(arity: usize, rows: &[(&[StateSet], usize)]) -> String {
    let mut text = String::new();
    for i in 1..=arity {
        text.push_str(&format!("F{i},"));
    }
    text.push_str("min_states\n");
    for (finals, count) in rows {
        for set in finals.iter() {
            let members: Vec<String> = set.iter().map(|q| q.to_string()).collect();
            text.push_str(&members.join(";"));
            text.push(',');
        }
        text.push_str(&format!("{count}\n"));
    }
    text
}

/// Evaluates every choice, in order, optionally across worker threads.
/// Results are keyed by index so the outcome is deterministic either way;
/// on multiple failures the earliest index wins.
fn run_choices(
    m: &dyn Modifier,
    sizes: &[usize],
    choices: &[Vec<StateSet>],
    opts: &EngineOptions,
    threads: usize,
) -> Result<Vec<usize>, Error> {
    if sizes.len() != m.arity() {
        return Err(monstate_core::Error::ArityMismatch {
            expected: m.arity(),
            got: sizes.len(),
        }
        .into());
    }
    if threads <= 1 {
        return choices
            .iter()
            .map(|finals| engine::evaluate_choice(m, sizes, finals, opts).map_err(Error::Core))
            .collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<monstate_core::Result<usize>>>> =
        choices.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads.min(choices.len()) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= choices.len() {
                    break;
                }
                let verdict = engine::evaluate_choice(m, sizes, &choices[index], opts);
                *slots[index].lock().expect("worker holds lock briefly") = Some(verdict);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("workers finished")
                .expect("every index visited")
                .map_err(Error::Core)
        })
        .collect()
}

/// Runs one subcommand, writing the summary to `stdout`. Returns the
/// process exit code: 0 on success, 3 when a check finds a counterexample.
pub fn run(command: Command, stdout: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Monster {
            sizes,
            finals,
            out: out_dir,
            letter_budget,
        } => {
            let finals = parse_finals(&finals, &sizes)?;
            let spec = MonsterSpec::new(sizes.clone(), finals)?;
            let autos = monster::build_with_budget(&spec, letter_budget)?;
            let letters = autos[0].letter_count();
            let labels: Vec<String> = (0..letters as u64)
                .map(|a| spec.letter_label(a))
                .collect::<Result<_, _>>()?;
            fs::create_dir_all(&out_dir).map_err(|source| Error::Io {
                path: out_dir.display().to_string(),
                source,
            })?;
            say!(
                stdout,
                "monster sizes=({}) finals={}",
                format_sizes(&sizes),
                format_finals(spec.finals())
            );
            say!(stdout, "alphabet: {letters} letters");
            for (i, dfa) in autos.into_iter().enumerate() {
                let labeled = dfa.with_labels(labels.clone())?;
                let path = out_dir.join(format!("m{}.json", i + 1));
                write_file(&path, &json::to_json(&labeled))?;
                say!(
                    stdout,
                    "component {}: {} states -> {}",
                    i + 1,
                    labeled.state_count(),
                    path.display()
                );
            }
            Ok(0)
        }

        Command::Apply {
            modifier,
            auto,
            dot: dot_path,
            out: out_path,
            cell_budget,
        } => {
            let m = modifier::parse(&modifier)?;
            let inputs: Vec<Cdfa> = auto.iter().map(|p| load_auto(p)).collect::<Result<_, _>>()?;
            let refs: Vec<&Cdfa> = inputs.iter().collect();
            let result = modifier::apply_with_budget(m.as_ref(), &refs, cell_budget)?;
            say!(stdout, "apply modifier={} inputs={}", m.name(), refs.len());
            say!(
                stdout,
                "result: {} states, initial {}, {} finals",
                result.state_count(),
                result.initial(),
                result.finals().len()
            );
            if let Some(path) = out_path {
                write_file(&path, &json::to_json(&result))?;
                say!(stdout, "wrote {}", path.display());
            }
            if let Some(path) = dot_path {
                write_file(&path, &dot::to_dot(&result))?;
                say!(stdout, "wrote {}", path.display());
            }
            Ok(0)
        }

        Command::Minimize {
            auto,
            out: out_path,
            dot: dot_path,
        } => {
            let input = load_auto(&auto)?;
            let detail = input.minimize_detailed();
            say!(stdout, "minimize {}", auto.display());
            say!(
                stdout,
                "states: {} -> {}",
                input.state_count(),
                detail.dfa.state_count()
            );
            say!(stdout, "accessible: {}", detail.accessible_states);
            let merged = detail.classes.iter().filter(|c| c.len() >= 2).count();
            say!(stdout, "merged classes: {merged}");
            if let Some(path) = out_path {
                write_file(&path, &json::to_json(&detail.dfa))?;
                say!(stdout, "wrote {}", path.display());
            }
            if let Some(path) = dot_path {
                write_file(&path, &dot::to_dot(&detail.dfa))?;
                say!(stdout, "wrote {}", path.display());
            }
            Ok(0)
        }

        Command::Sc {
            modifier,
            sizes,
            family,
            csv,
            parallel,
            no_dedupe,
            cell_budget,
            letter_budget,
        } => {
            let m = modifier::parse(&modifier)?;
            let opts = EngineOptions {
                dedupe_letters: !no_dedupe,
                cell_budget,
                letter_budget,
            };
            let choices = match family {
                FamilyArg::All | FamilyArg::ArgmaxOnly => engine::enumerate_all_finals(&sizes)?,
                FamilyArg::Canonical => engine::canonical_family(&sizes)?,
            };
            let counts = run_choices(m.as_ref(), &sizes, &choices, &opts, parallel)?;
            let maximum = *counts.iter().max().expect("family is nonempty");
            let reported: Vec<(&[StateSet], usize)> = choices
                .iter()
                .zip(&counts)
                .filter(|(_, &count)| family != FamilyArg::ArgmaxOnly || count == maximum)
                .map(|(finals, &count)| (finals.as_slice(), count))
                .collect();
            say!(
                stdout,
                "sc modifier={} sizes=({}) family={}",
                m.name(),
                format_sizes(&sizes),
                family.name()
            );
            for (finals, count) in &reported {
                say!(stdout, "F={}  min_states={count}", format_finals(finals));
            }
            say!(stdout, "maximum: {maximum}");
            let argmax: Vec<String> = choices
                .iter()
                .zip(&counts)
                .filter(|(_, &count)| count == maximum)
                .map(|(finals, _)| format_finals(finals))
                .collect();
            say!(stdout, "argmax: {}", argmax.join(" "));
            if let Some(path) = csv {
                write_file(&path, &csv_text(sizes.len(), &reported))?;
                say!(stdout, "wrote {}", path.display());
            }
            Ok(0)
        }

        Command::Check {
            op,
            auto,
            max_len,
            word_budget,
        } => {
            let op = Operation::parse(&op)?;
            let inputs: Vec<Cdfa> = auto.iter().map(|p| load_auto(p)).collect::<Result<_, _>>()?;
            if inputs.len() != op.arity() {
                return Err(monstate_core::Error::ArityMismatch {
                    expected: op.arity(),
                    got: inputs.len(),
                }
                .into());
            }
            let refs: Vec<&Cdfa> = inputs.iter().collect();
            let m = op.modifier();
            match oracle::exhaustive_agree(op, m.as_ref(), &refs, max_len, word_budget)? {
                None => {
                    say!(
                        stdout,
                        "check op={}: agreement on all words up to length {max_len}",
                        op.name()
                    );
                    Ok(0)
                }
                Some(word) => {
                    say!(
                        stdout,
                        "check op={}: counterexample at {}",
                        op.name(),
                        format_word(&word, refs[0].labels())
                    );
                    Ok(3)
                }
            }
        }

        Command::Semigroup {
            n,
            generators,
            limit,
        } => {
            let gens = parse_generators(&generators, n)?;
            let elements = closure(n, &gens, limit)?;
            say!(stdout, "semigroup n={n} generators={}", gens.len());
            say!(stdout, "closure size: {}", elements.len());
            if let Some(total) = transformation_count(n) {
                let full = elements.len() as u64 == total;
                say!(stdout, "full monoid: {}", if full { "yes" } else { "no" });
            }
            Ok(0)
        }
    }
}
