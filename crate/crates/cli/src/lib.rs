//! The `msdb` command-line tool. [`run`] holds the whole program so it can
//! be driven from tests with in-memory streams.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use multishift::counting::{
    count_formula_with, count_log10, count_recursion_with, Branch, CountResult,
};
use multishift::frobenius::{build_instance_with, longest_nonrepresentable_with};
use multishift::generate::generate_with;
use multishift::graphs::{arborescence_count, build_word_graph_with, euler_count_best};
use multishift::limits::DEFAULT_ENUMERATION_CAP;
use multishift::word::checked_pow;
use multishift::{
    enumerate_all, frobenius_number, is_multishift_db, Algorithm, DbParams, Error,
    GreedyPreference, Limits, Word,
};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "msdb", version, about = "Generate, verify and count m-shift de Bruijn sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(flatten)]
    guards: GuardArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Args, Debug)]
struct GuardArgs {
    /// Longest sequence, in symbols, that may be built.
    #[arg(long, global = true, default_value_t = Limits::default().max_symbols)]
    max_symbols: u64,
    /// Most decimal digits an exact count may have.
    #[arg(long, global = true, default_value_t = Limits::default().max_digits)]
    max_digits: u64,
    /// Most automaton states the Frobenius analysis may create.
    #[arg(long, global = true, default_value_t = Limits::default().max_states)]
    max_states: u64,
    /// Most vertices an explicit word graph may have.
    #[arg(long, global = true, default_value_t = Limits::default().max_graph_vertices)]
    max_graph_vertices: u64,
}

impl GuardArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_symbols: self.max_symbols,
            max_digits: self.max_digits,
            max_states: self.max_states,
            max_graph_vertices: self.max_graph_vertices,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    /// Alphabet size a.
    #[arg(long, short = 'a')]
    alphabet: u32,
    /// Shift m.
    #[arg(long, short = 'm')]
    shift: usize,
    /// Order n.
    #[arg(long, short = 'n')]
    order: usize,
}

impl ParamArgs {
    fn params(&self) -> Result<DbParams, Error> {
        DbParams::new(self.alphabet, self.shift, self.order)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Auto,
    Block,
    Multiple,
    Interleave,
    Greedy,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Auto => Algorithm::Auto,
            AlgorithmArg::Block => Algorithm::Block,
            AlgorithmArg::Multiple => Algorithm::Multiple,
            AlgorithmArg::Interleave => Algorithm::Interleave,
            AlgorithmArg::Greedy => Algorithm::Greedy,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PreferArg {
    Largest,
    Smallest,
}

impl From<PreferArg> for GreedyPreference {
    fn from(p: PreferArg) -> Self {
        match p {
            PreferArg::Largest => GreedyPreference::Largest,
            PreferArg::Smallest => GreedyPreference::Smallest,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Formula,
    Recursion,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a sequence.
    Generate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Auto)]
        algorithm: AlgorithmArg,
        /// Only used by the greedy construction.
        #[arg(long, value_enum, default_value_t = PreferArg::Largest)]
        prefer: PreferArg,
    },
    /// Check a word; "-" reads it from standard input.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        word: String,
    },
    /// Count sequences.
    Count {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = CountMethod::Formula)]
        method: CountMethod,
    },
    /// Count sequences by exhaustive search.
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        /// Stop with a guard error after this many sequences.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        /// Also print the sequences (at most 1024).
        #[arg(long)]
        words: bool,
    },
    /// Statistics of the word graph G(m, n); the order may be 0.
    Graph {
        #[arg(long, short = 'a')]
        alphabet: u32,
        #[arg(long, short = 'm')]
        shift: usize,
        #[arg(long, short = 'n')]
        order: usize,
        /// Also list every arc.
        #[arg(long)]
        arcs: bool,
    },
    /// Longest words not representable over the set built from a sequence.
    Frobenius {
        #[command(flatten)]
        params: ParamArgs,
        /// Sequence of order n−m used to pick the removed words.
        #[arg(long)]
        tau: Option<String>,
        /// Also print every word of the set.
        #[arg(long)]
        dump_s: bool,
    },
}

/// Result of a successful command: the payload and whether the answer was
/// negative (exit code 1).
struct Output {
    json: Value,
    plain: String,
    negative: bool,
}

impl Output {
    fn positive(json: Value, plain: String) -> Self {
        Output {
            json,
            plain,
            negative: false,
        }
    }
}

/// Runs the program and returns its exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let message = e.to_string();
            let first = message
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            report(stderr, "usage", first);
            return EXIT_USAGE;
        }
    };

    let limits = cli.guards.limits();
    match execute(&cli.command, &limits, stdin) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => out.json.to_string(),
                Format::Plain => out.plain,
            };
            let _ = writeln!(stdout, "{text}");
            if out.negative {
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            report(stderr, e.kind(), &e.to_string());
            if e.is_guard() {
                EXIT_GUARD
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn report(stderr: &mut dyn Write, kind: &str, message: &str) {
    let line = json!({ "error": kind, "message": message });
    let _ = writeln!(stderr, "{line}");
}

fn execute(command: &Command, limits: &Limits, stdin: &mut dyn Read) -> Result<Output, Error> {
    match command {
        Command::Generate {
            params,
            algorithm,
            prefer,
        } => {
            let p = params.params()?;
            let alg = Algorithm::from(*algorithm);
            let w = generate_with(p, alg, (*prefer).into(), limits)?;
            let text = w.render(p.a);
            Ok(Output::positive(
                json!({
                    "algorithm": alg.resolve(p).name(),
                    "length": w.len(),
                    "word": text,
                }),
                text,
            ))
        }
        Command::Verify { params, word } => {
            let p = params.params()?;
            let text = if word == "-" {
                let mut buf = String::new();
                stdin
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::EmptyInput(format!("cannot read standard input: {e}")))?;
                buf
            } else {
                word.clone()
            };
            let w = Word::parse(&text, p.a)?;
            let report = is_multishift_db(&w, p)?;
            let mut plain = vec![
                if report.ok { "ok" } else { "not ok" }.to_string(),
                format!(
                    "length: {} (expected {})",
                    report.length, report.expected_length
                ),
                format!("missing: {}", report.missing_count),
                format!("duplicated: {}", report.duplicated_count),
            ];
            plain.extend(
                report
                    .missing
                    .iter()
                    .map(|m| format!("  missing {}", m.render(p.a))),
            );
            plain.extend(
                report
                    .duplicated
                    .iter()
                    .map(|(d, c)| format!("  duplicated {} x{c}", d.render(p.a))),
            );
            Ok(Output {
                json: report.to_json(),
                plain: plain.join("\n"),
                negative: !report.ok,
            })
        }
        Command::Count { params, method } => {
            let p = params.params()?;
            let result = match method {
                CountMethod::Formula => count_formula_with(p, limits)?,
                CountMethod::Recursion => {
                    let exact = count_recursion_with(p, limits)?;
                    CountResult {
                        digits: exact.to_string().len() as u64,
                        exact: Some(exact),
                        log10: count_log10(p),
                        branch: if p.n <= p.m {
                            Branch::OrderAtMostShift
                        } else {
                            Branch::ShiftAtMostOrder
                        },
                    }
                }
            };
            let json = result.to_json();
            let mut plain = Vec::new();
            if let Some(exact) = &result.exact {
                plain.push(format!("exact: {exact}"));
            }
            plain.push(format!("log10: {}", result.log10));
            plain.push(format!("digits: {}", result.digits));
            plain.push(format!("branch: {}", json["branch"].as_str().unwrap_or("")));
            Ok(Output::positive(json, plain.join("\n")))
        }
        Command::Enumerate { params, cap, words } => {
            let p = params.params()?;
            let e = enumerate_all(p, *cap)?;
            let listed: Option<Vec<String>> = if *words {
                e.words
                    .as_ref()
                    .map(|ws| ws.iter().map(|w| w.render(p.a)).collect())
            } else {
                None
            };
            let mut json = json!({ "count": e.count.to_string() });
            let mut plain = vec![format!("count: {}", e.count)];
            if *words {
                match &listed {
                    Some(ws) => plain.extend(ws.iter().cloned()),
                    None => plain.push("words: omitted, more than 1024".to_string()),
                }
                json["words"] = json!(listed);
            }
            Ok(Output::positive(json, plain.join("\n")))
        }
        Command::Graph {
            alphabet,
            shift,
            order,
            arcs,
        } => graph(*alphabet, *shift, *order, *arcs, limits),
        Command::Frobenius {
            params,
            tau,
            dump_s,
        } => frobenius(*params, tau.as_deref(), *dump_s, limits),
    }
}

/// Counts that exceed a guard are reported as `null` so the rest of the
/// statistics remain available for large graphs.
fn optional_count(r: Result<impl ToString, Error>) -> Result<Option<String>, Error> {
    match r {
        Ok(x) => Ok(Some(x.to_string())),
        Err(e) if e.is_guard() => Ok(None),
        Err(e) => Err(e),
    }
}

fn graph(a: u32, m: usize, n: usize, list_arcs: bool, limits: &Limits) -> Result<Output, Error> {
    let g = build_word_graph_with(a, m, n, limits)?;
    let arborescences = optional_count(arborescence_count(&g))?;
    let tours = optional_count(euler_count_best(&g))?;
    let mut json = json!({
        "vertices": g.vertex_count().to_string(),
        "arcs": g.arc_count().to_string(),
        "degree": g.regular_degree(),
        "connected": g.is_connected(),
        "arborescences": arborescences,
        "euler_tours": tours,
    });
    let show = |x: &Option<String>| x.clone().unwrap_or_else(|| "too large".to_string());
    let mut plain = vec![
        format!("vertices: {}", g.vertex_count()),
        format!("arcs: {}", g.arc_count()),
        format!(
            "degree: {}",
            g.regular_degree()
                .map_or("irregular".to_string(), |d| d.to_string())
        ),
        format!("connected: {}", g.is_connected()),
        format!("arborescences: {}", show(&arborescences)),
        format!("euler_tours: {}", show(&tours)),
    ];
    if list_arcs {
        let mut listed = Vec::new();
        for e in 0..g.arc_count() {
            let tail = g.vertex_label(g.tail(e))?.render(a);
            let head = g.vertex_label(g.head(e))?.render(a);
            let label = g.arc_label(e)?.render(a);
            plain.push(format!("{label}: {tail} -> {head}"));
            listed.push(json!({ "label": label, "tail": tail, "head": head }));
        }
        json["arc_list"] = Value::Array(listed);
    }
    Ok(Output::positive(json, plain.join("\n")))
}

fn frobenius(
    params: ParamArgs,
    tau: Option<&str>,
    dump_s: bool,
    limits: &Limits,
) -> Result<Output, Error> {
    let a = params.alphabet;
    let tau = tau.map(|t| Word::parse(t, a)).transpose()?;
    let inst = build_instance_with(a, params.shift, params.order, tau, limits)?;
    let longest = longest_nonrepresentable_with(&inst, limits)?;
    let l = inst.l();
    let g = frobenius_number(params.shift as u64, l).ok();

    let mut json = json!({
        "m": params.shift,
        "n": params.order,
        "l": l,
        "g": g,
        "tau": inst.tau().render(a),
        "excluded_count": inst.excluded().len(),
        "excluded": inst.excluded().iter().map(|w| w.render(a)).collect::<Vec<_>>(),
    });
    let details = longest.to_json(a);
    if let (Value::Object(target), Value::Object(extra)) = (&mut json, details) {
        target.extend(extra);
    }

    let mut plain = vec![
        format!("m: {}", params.shift),
        format!("n: {}", params.order),
        format!("l: {l}"),
        format!(
            "g: {}",
            g.map_or("undefined".to_string(), |g| g.to_string())
        ),
        format!("tau: {}", inst.tau().render(a)),
        format!("excluded_count: {}", inst.excluded().len()),
    ];
    match (longest.finite, longest.max_length) {
        (false, _) => plain.push("longest_length: infinite".to_string()),
        (true, None) => plain.push("longest_length: none, every word is representable".to_string()),
        (true, Some(len)) => {
            plain.push(format!("longest_length: {len}"));
            plain.push(format!("longest_count: {}", longest.count));
            if let Some(ws) = &longest.words {
                plain.extend(ws.iter().map(|w| w.render(a)));
            }
        }
    }

    if dump_s {
        let size = inst.excluded().len() as u64;
        let total = checked_pow(a as u64, params.shift)?
            .saturating_add(checked_pow(a as u64, params.order)?)
            .saturating_sub(size);
        let symbols = total.saturating_mul(params.order as u64);
        if symbols > limits.max_symbols {
            return Err(Error::Guard {
                what: "set listing",
                requested: symbols.to_string(),
                limit: limits.max_symbols.to_string(),
            });
        }
        let words: Vec<String> = inst.s_words()?.map(|w| w.render(a)).collect();
        plain.push(format!("s: {} words", words.len()));
        plain.extend(words.iter().cloned());
        json["s"] = json!(words);
    }

    Ok(Output {
        json,
        plain: plain.join("\n"),
        negative: !longest.finite,
    })
}
