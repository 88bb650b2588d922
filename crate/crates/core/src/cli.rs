//! Command-line front end. Kept separate from `main.rs` so integration tests
//! can exercise argument handling without spawning a process.

use std::fmt::Display;
use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{build_px, compile_witness, parse_certificate};
use crate::freegroup;
use crate::hurwitz::BraidWord;
use crate::orbit::{orbit_search, stabilizer_check, SearchBudget, SearchStatus};
use crate::product::{embed_factorization, parse_pair_factorization};
use crate::reduction;

#[derive(Parser, Debug)]
#[command(
    name = "hurwitz",
    version,
    about = "Hurwitz moves on group factorizations"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Maximum number of node expansions.
    #[arg(long = "budget-nodes", default_value_t = 100_000)]
    nodes: usize,
    /// Maximum braid word length (search depth).
    #[arg(long = "budget-braid-len", default_value_t = 12)]
    braid_len: usize,
    /// Maximum word length per tuple entry before pruning.
    #[arg(long = "budget-elem-len", default_value_t = 64)]
    elem_len: usize,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.nodes,
            max_braid_length: self.braid_len,
            max_element_length: self.elem_len,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a braid word to a factorization over F_2 (+) F_2.
    Act {
        /// Factorization, `[ ( u | v ) ; ... ]`, or `@path` to read a file.
        factorization: String,
        /// Braid word as signed generator indices, e.g. `1 -2 1`.
        #[arg(allow_hyphen_values = true)]
        braid: String,
    },
    /// Compile a presentation and word into a 1-factorization whose Hurwitz
    /// class encodes the word problem instance.
    Ftl {
        /// Presentation, `< a b | a b a^-1 b^-1 >`, or `@path`.
        presentation: String,
        /// Query word over the presentation's named generators.
        word: String,
        /// Print the pre-embedding tuple instead of the final one.
        #[arg(long)]
        no_embed: bool,
    },
    /// Compile a membership certificate into an explicit braid carrying the
    /// tuple for one query word to the tuple for another, and verify it.
    CompileWitness {
        /// Presentation, `< a b | ... >`, or `@path`.
        presentation: String,
        /// Source query word over the named generators.
        word_a: String,
        /// Target query word over the named generators.
        word_b: String,
        /// Certificate lines `<sign> r<j> by <word over w1..wq>`, or `@path`.
        #[arg(allow_hyphen_values = true)]
        certificate: String,
    },
    /// Breadth-first search for a braid carrying one factorization to another.
    Orbit {
        /// Source factorization, or `@path`.
        from: String,
        /// Target factorization, or `@path`.
        to: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Search from both endpoints simultaneously.
        #[arg(long)]
        bidirectional: bool,
    },
    /// Check whether a braid word stabilizes a factorization.
    Stabcheck {
        /// Factorization, or `@path`.
        factorization: String,
        /// Braid word as signed generator indices.
        #[arg(allow_hyphen_values = true)]
        braid: String,
    },
    /// Reduced form, cyclic data, and root decomposition of a word.
    Wordinfo {
        /// Word over x1, x2, ..., e.g. `x1 x2^-1 x1`.
        word: String,
    },
}

/// Replace an `@path` argument with the file's contents.
fn load(arg: &str) -> std::io::Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map(|s| s.trim().to_string()),
        None => Ok(arg.to_string()),
    }
}

fn emit<T: Display>(format: Format, text: T, structured: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Structured => println!("{structured}"),
    }
}

fn run(cli: Cli) -> std::result::Result<i32, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Act {
            factorization,
            braid,
        } => {
            let f = parse_pair_factorization(&load(&factorization)?)?;
            let b = BraidWord::parse(&load(&braid)?, f.len().max(2))?;
            let out = f.apply_braid(&b)?;
            emit(cli.format, &out, json!({ "result": out.to_string() }));
            Ok(0)
        }
        Command::Ftl {
            presentation,
            word,
            no_embed,
        } => {
            let named = reduction::parse_presentation(&load(&presentation)?)?;
            let w = named.parse_named_word(&word)?;
            let f = if no_embed {
                reduction::ftl_b_px(&named.presentation, &w)?
            } else {
                reduction::ftl_b(&named.presentation, &w)?
            };
            emit(cli.format, &f, json!({ "result": f.to_string() }));
            Ok(0)
        }
        Command::CompileWitness {
            presentation,
            word_a,
            word_b,
            certificate,
        } => {
            let named = reduction::parse_presentation(&load(&presentation)?)?;
            let wa = named.parse_named_word(&word_a)?;
            let wb = named.parse_named_word(&word_b)?;
            let spec_a = reduction::ftl_b_spec(&named.presentation, &wa)?;
            let spec_b = reduction::ftl_b_spec(&named.presentation, &wb)?;
            let cert = parse_certificate(&load(&certificate)?, spec_a.p(), spec_a.q())?;
            let compiled = compile_witness(&cert, &spec_a)?;
            // Pre-embedding check, then transport through the embedding.
            let moved = build_px(&spec_a).apply_braid(&compiled.braid)?;
            let verified_pre = moved == build_px(&spec_b);
            let verified_post = embed_factorization(&build_px(&spec_a))
                .apply_braid(&compiled.braid)?
                == embed_factorization(&build_px(&spec_b));
            let verified = verified_pre && verified_post;
            emit(
                cli.format,
                format_args!(
                    "braid: {}\ntarget: {}\nverified: {verified}",
                    compiled.braid, compiled.target_h
                ),
                json!({
                    "braid": compiled.braid.to_string(),
                    "target": compiled.target_h.to_string(),
                    "verified": verified,
                }),
            );
            Ok(if verified { 0 } else { 1 })
        }
        Command::Orbit {
            from,
            to,
            budget,
            bidirectional,
        } => {
            let f1 = parse_pair_factorization(&load(&from)?)?;
            let f2 = parse_pair_factorization(&load(&to)?)?;
            let out = orbit_search(&f1, &f2, &budget.budget(), bidirectional)?;
            let status = match out.status {
                SearchStatus::Found => "found",
                SearchStatus::ExhaustedBudget => "exhausted-budget",
                SearchStatus::InvariantMismatch => "invariant-mismatch",
            };
            let witness = out.witness.as_ref().map(|b| b.to_string());
            emit(
                cli.format,
                format_args!(
                    "status: {status}\nwitness: {}\nnodes-expanded: {}\nfrontier-peak: {}\ndedup-hits: {}\npruned: {}",
                    witness.as_deref().unwrap_or("-"),
                    out.stats.nodes_expanded,
                    out.stats.frontier_peak,
                    out.stats.dedup_hits,
                    out.stats.pruned,
                ),
                json!({
                    "status": status,
                    "witness": witness,
                    "stats": {
                        "nodes_expanded": out.stats.nodes_expanded,
                        "frontier_peak": out.stats.frontier_peak,
                        "dedup_hits": out.stats.dedup_hits,
                        "pruned": out.stats.pruned,
                    },
                }),
            );
            Ok(if out.status == SearchStatus::Found {
                0
            } else {
                1
            })
        }
        Command::Stabcheck {
            factorization,
            braid,
        } => {
            let f = parse_pair_factorization(&load(&factorization)?)?;
            let b = BraidWord::parse(&load(&braid)?, f.len().max(2))?;
            let stable = stabilizer_check(&f, &b)?;
            emit(
                cli.format,
                format_args!("stabilizes: {stable}"),
                json!({ "stabilizes": stable }),
            );
            Ok(if stable { 0 } else { 1 })
        }
        Command::Wordinfo { word } => {
            let w = freegroup::parse_word(&word)?;
            let (core, conj) = freegroup::cyclic_reduce(&w);
            let (root, power) = if core.is_identity() {
                ("e".to_string(), 0)
            } else {
                let (r, k) = freegroup::root_decompose(&core)?;
                (r.to_string(), k)
            };
            emit(
                cli.format,
                format_args!(
                    "reduced: {w}\nlength: {}\ncyclic-core: {core}\nconjugator: {conj}\ncanonical-cyclic: {}\nroot: {root}\npower: {power}",
                    w.len(),
                    freegroup::canonical_cyclic_form(&w),
                ),
                json!({
                    "reduced": w.to_string(),
                    "length": w.len(),
                    "cyclic_core": core.to_string(),
                    "conjugator": conj.to_string(),
                    "canonical_cyclic": freegroup::canonical_cyclic_form(&w).to_string(),
                    "root": root,
                    "power": power,
                }),
            );
            Ok(0)
        }
    }
}

/// Parse `args` (including argv[0]) and execute; returns the process exit
/// code. 0 = success/verified, 1 = verification failure or not found,
/// 2 = parse/usage errors.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with success status.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
