//! Command-line front end. [`run`] is a pure function of its arguments and
//! standard input, so it can be driven directly from tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{hilbert_family, hilbert_intermediate, triple, unrealizable_example, HilbertState, TripleRule};
use crate::enumeration::{enumerate_forests_with_ceiling, enumerate_schemes, EnumerationSpec, Filters, DEFAULT_CEILING};
use crate::error::Error;
use crate::moves::{swap, swap_search, SearchStatus, SwapMove, DEFAULT_MAX_STATES};
use crate::notation::{decode_json, encode_json, parse_viro, print_forest, print_viro};
use crate::proof::{example_3_4_trace, prove};
use crate::scheme::{check_theorem_1_1, lambda_counts, stats, validate, ComplexScheme, LambdaCounts, OvalPath, Theorem11Report};

#[derive(Debug, Parser)]
#[command(name = "complex-schemes", version, about = "Complex schemes of plane real curves")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Exit with status 1 when a check or search verdict is negative
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct SchemeInput {
    /// Curve degree (required for notation input)
    #[arg(long)]
    degree: Option<u32>,

    /// Scheme in Viro notation, or a JSON scheme document
    #[arg(long, conflicts_with = "scheme_file")]
    scheme: Option<String>,

    /// Read the scheme from a file instead of standard input
    #[arg(long)]
    scheme_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical form of a scheme
    Parse(SchemeInput),
    /// Oval counts, genus, deficit and the four Λ counts
    Stats(SchemeInput),
    /// Evaluate both orientation inequalities
    Check(SchemeInput),
    /// Swap a pair of parallel ovals
    Swap {
        #[command(flatten)]
        input: SchemeInput,
        /// Dotted path of the outer oval, e.g. "1.0"
        #[arg(long)]
        path: OvalPath,
    },
    /// Breadth-first search for swaps reaching a scheme that satisfies both inequalities
    SwapSearch {
        #[command(flatten)]
        input: SchemeInput,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// List all schemes with a given number of ovals
    Enumerate {
        #[arg(long)]
        ovals: usize,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        violating_left: bool,
        #[arg(long)]
        violating_right: bool,
        #[arg(long)]
        valid_only: bool,
        /// Largest accepted oval count
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
    },
    /// Exhaustively check the integer system of the inequality proof
    Prove {
        #[arg(long)]
        k_max: i64,
    },
    /// Arithmetic of the direct degree 9 argument
    #[command(name = "trace-3-4")]
    Trace34,
    /// Build schemes from the constructions
    #[command(subcommand)]
    Construct(Construct),
    /// The tripled degree 12p-3 scheme and its check report
    Example {
        #[arg(long)]
        p: u32,
    },
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// The Hilbert-type M-curve C_{4p-1}
    Hilbert {
        #[arg(long)]
        p: u32,
        /// Return the intermediate curve C_{4p+1} instead
        #[arg(long)]
        intermediate: bool,
    },
    /// Triple a scheme, or the family member selected by --p
    Triple {
        #[command(flatten)]
        input: SchemeInput,
        #[arg(long, conflicts_with_all = ["scheme", "scheme_file"])]
        p: Option<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
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

struct Ctx<'a> {
    format: Format,
    stdin: &'a mut dyn Read,
    stdout: String,
    stderr: String,
    /// False when the command's verdict is negative.
    verdict: bool,
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Output { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut ctx = Ctx { format: cli.format, stdin, stdout: String::new(), stderr: String::new(), verdict: true };
    let code = match execute(cli.command, &mut ctx) {
        Ok(()) if cli.strict && !ctx.verdict => 1,
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(ctx.stderr, "error: {msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(ctx.stderr, "error: {e}");
            2
        }
    };
    Output { code, stdout: ctx.stdout, stderr: ctx.stderr }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes")
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str, doc: Option<String>) {
        match (self.format, doc) {
            (Format::Json, Some(doc)) => {
                self.stdout.push_str(&doc);
                self.stdout.push('\n');
            }
            _ => self.stdout.push_str(text),
        }
    }

    fn read_scheme(&mut self, input: &SchemeInput) -> Result<ComplexScheme, Failure> {
        let text = match (&input.scheme, &input.scheme_file) {
            (Some(s), _) => s.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
            (None, None) => {
                let mut buf = String::new();
                self.stdin
                    .read_to_string(&mut buf)
                    .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
                buf
            }
        };
        let scheme = if text.trim_start().starts_with('{') {
            let scheme = decode_json(&text)?;
            if let Some(d) = input.degree.filter(|&d| d != scheme.degree) {
                return Err(Failure::Usage(format!("--degree {d} disagrees with the document's degree {}", scheme.degree)));
            }
            scheme
        } else {
            let degree = input.degree.ok_or_else(|| Failure::Usage("--degree is required for notation input".into()))?;
            parse_viro(text.trim(), degree)?
        };
        for v in validate(&scheme) {
            let _ = writeln!(self.stderr, "warning: {v}");
        }
        Ok(scheme)
    }
}

fn execute(command: Command, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    match command {
        Command::Parse(input) => {
            let scheme = ctx.read_scheme(&input)?;
            ctx.emit(&format!("{}\n", print_viro(&scheme)), Some(encode_json(&scheme)));
        }
        Command::Stats(input) => {
            let scheme = ctx.read_scheme(&input)?;
            let st = stats(&scheme)?;
            let mut text = String::new();
            let _ = writeln!(text, "scheme: {}", print_viro(&scheme));
            let _ = writeln!(text, "degree: {}", st.degree);
            let _ = writeln!(text, "pseudoline: {}", if st.pseudoline { "yes" } else { "no" });
            let _ = writeln!(text, "l: {}", st.l);
            let _ = writeln!(text, "r: {}", st.r);
            let _ = writeln!(text, "g: {}", st.g);
            if let Some(k) = st.k {
                let _ = writeln!(text, "k: {k}");
            }
            let _ = writeln!(text, "s: {}", st.s);
            text.push_str(&lambda_lines(&st.lambdas));
            #[derive(Serialize)]
            struct Doc<'a> {
                scheme: String,
                #[serde(flatten)]
                stats: &'a crate::scheme::SchemeStats,
            }
            ctx.emit(&text, Some(json(&Doc { scheme: print_viro(&scheme), stats: &st })));
        }
        Command::Check(input) => {
            let scheme = ctx.read_scheme(&input)?;
            let report = check_theorem_1_1(&scheme)?;
            ctx.verdict = report.both_hold;
            let mut text = format!("scheme: {}\n", print_viro(&scheme));
            let _ = writeln!(text, "degree: {}", report.degree);
            let _ = writeln!(text, "k: {}", report.k);
            let _ = writeln!(text, "l: {}", report.l);
            let _ = writeln!(text, "s: {}", report.s);
            text.push_str(&lambda_lines(&report.lambdas));
            text.push_str(&inequality_lines(&report));
            let _ = writeln!(text, "verdict: {}", pass_fail(report.both_hold));
            #[derive(Serialize)]
            struct Doc<'a> {
                scheme: String,
                #[serde(flatten)]
                report: &'a Theorem11Report,
            }
            ctx.emit(&text, Some(json(&Doc { scheme: print_viro(&scheme), report: &report })));
        }
        Command::Swap { input, path } => {
            let scheme = ctx.read_scheme(&input)?;
            let out = swap(&scheme, &SwapMove::new(path.clone()))?;
            #[derive(Serialize)]
            struct Doc<'a> {
                path: &'a OvalPath,
                notation: String,
                scheme: &'a ComplexScheme,
            }
            let notation = print_viro(&out);
            ctx.emit(&format!("{notation}\n"), Some(json(&Doc { path: &path, notation: notation.clone(), scheme: &out })));
        }
        Command::SwapSearch { input, max_states } => {
            let scheme = ctx.read_scheme(&input)?;
            search(ctx, &scheme, max_states)?;
        }
        Command::Enumerate { ovals, degree, violating_left, violating_right, valid_only, ceiling } => {
            let filters = Filters { valid_only, violating_left, violating_right };
            enumerate(ctx, ovals, degree, filters, ceiling)?;
        }
        Command::Prove { k_max } => {
            if k_max < 1 {
                return Err(Failure::Usage("--k-max must be at least 1".into()));
            }
            let report = prove(k_max);
            ctx.verdict = report.verified;
            let mut text = String::from("eliminations:\n");
            for step in &report.eliminations {
                let _ = writeln!(text, "  {step}");
            }
            let _ = writeln!(
                text,
                "{:>4} {:>6} {:>5} {:>6} {:>10} {:>8} {:>14} {:>6} {:>6}",
                "k", "g", "a", "value", "candidates", "feasible", "without-bezout", "min-r1", "max-r1"
            );
            for r in &report.rows {
                let min_r1 = r.min_r1.map_or_else(|| "-".to_string(), |v| v.to_string());
                let _ = writeln!(
                    text,
                    "{:>4} {:>6} {:>5} {:>6} {:>10} {:>8} {:>14} {:>6} {:>6}",
                    r.k, r.g, r.a, r.contradiction_value, r.candidates, r.feasible, r.feasible_without_bezout, min_r1, r.max_r1_allowed
                );
            }
            let _ = writeln!(text, "verdict: {} (k = 1..{k_max})", pass_fail(report.verified));
            ctx.emit(&text, Some(json(&report)));
        }
        Command::Trace34 => {
            let t = example_3_4_trace();
            ctx.verdict = t.contradiction;
            let mut text = String::new();
            let _ = writeln!(text, "scheme: {}", t.scheme);
            let _ = writeln!(text, "degree: {}", t.degree);
            let _ = writeln!(text, "g: {}", t.g);
            let _ = writeln!(text, "r: {}", t.r);
            let _ = writeln!(text, "l: {}", t.l);
            let _ = writeln!(text, "s: {}", t.s);
            let _ = writeln!(text, "separating morphism degree <= (g + r + 1)/2 = {}", t.gabard_degree);
            let _ = writeln!(text, "fiber points on ovals >= {}", t.fiber_points_on_ovals_min);
            let _ = writeln!(text, "fiber points on J <= {}", t.fiber_points_on_pseudoline_max);
            let _ = writeln!(text, "bezout budget: {} * {} = {}", t.auxiliary_degree, t.degree, t.bezout_budget);
            let _ = writeln!(text, "forced intersections: {} + {} = {}", t.forced_on_ovals, t.forced_on_pseudoline, t.forced);
            let _ = writeln!(
                text,
                "verdict: {}",
                if t.contradiction { format!("contradiction ({} > {})", t.forced, t.bezout_budget) } else { "no contradiction".into() }
            );
            ctx.emit(&text, Some(json(&t)));
        }
        Command::Construct(Construct::Hilbert { p, intermediate }) => {
            let state = if intermediate { hilbert_intermediate(p)? } else { hilbert_family(p)? };
            ctx.emit(&hilbert_text(&state), Some(state.to_json()));
        }
        Command::Construct(Construct::Triple { input, p }) => {
            let source = match p {
                Some(p) => unrealizable_example(p)?.source,
                None => ctx.read_scheme(&input)?,
            };
            let out = triple(&source, &TripleRule::default())?;
            ctx.emit(&format!("{}\n", print_viro(&out)), Some(encode_json(&out)));
        }
        Command::Example { p } => {
            let ex = unrealizable_example(p)?;
            let r = &ex.report;
            ctx.verdict = r.both_hold;
            #[derive(Serialize)]
            struct Doc<'a> {
                degree: u32,
                l: i64,
                left_margin: i64,
                right_margin: i64,
                lp_plus: u64,
                ln_minus: u64,
                left_lhs: i64,
                left_rhs: i64,
                right_lhs: i64,
                right_rhs: i64,
                p: u32,
                source_degree: u32,
                scheme: &'a str,
            }
            let notation = print_viro(&ex.scheme);
            let doc = Doc {
                degree: r.degree,
                l: r.l,
                left_margin: r.left_margin,
                right_margin: r.right_margin,
                lp_plus: r.lambdas.lp_plus,
                ln_minus: r.lambdas.ln_minus,
                left_lhs: r.left_lhs,
                left_rhs: r.left_rhs,
                right_lhs: r.right_lhs,
                right_rhs: r.right_rhs,
                p,
                source_degree: ex.source.degree,
                scheme: &notation,
            };
            let mut text = format!("p: {p}\nsource degree: {}\n", ex.source.degree);
            let _ = writeln!(text, "degree: {}", r.degree);
            let _ = writeln!(text, "l: {}", r.l);
            text.push_str(&lambda_lines(&r.lambdas));
            text.push_str(&inequality_lines(r));
            let _ = writeln!(text, "scheme: {notation}");
            ctx.emit(&text, Some(json(&doc)));
        }
    }
    Ok(())
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn lambda_lines(l: &LambdaCounts) -> String {
    format!("Lp+: {}\nLp-: {}\nLn+: {}\nLn-: {}\n", l.lp_plus, l.lp_minus, l.ln_plus, l.ln_minus)
}

fn inequality_lines(r: &Theorem11Report) -> String {
    let line = |name: &str, lhs: i64, rhs: i64, margin: i64| {
        let rel = if margin >= 0 { ">=" } else { "<" };
        format!("{name}: {lhs} {rel} {rhs} {} (margin {margin})\n", pass_fail(margin >= 0))
    };
    line("left", r.left_lhs, r.left_rhs, r.left_margin) + &line("right", r.right_lhs, r.right_rhs, r.right_margin)
}

fn hilbert_text(state: &HilbertState) -> String {
    let scheme = state.scheme();
    let mut text = String::new();
    let _ = writeln!(text, "degree: {}", state.degree());
    let _ = writeln!(text, "scheme: {}", print_viro(&scheme));
    let _ = writeln!(text, "l: {}", scheme.oval_count());
    let _ = writeln!(text, "encirclers: {}", state.encircler_count());
    if let Some(v) = state.crossing_oval() {
        let _ = writeln!(text, "V: {} (meets E at {} points)", v.sign.symbol(), state.crossing_points());
    }
    let _ = writeln!(text, "negative ovals in disk: {}", state.lambda_minus_disk());
    text.push_str(&lambda_lines(&lambda_counts(&scheme)));
    text
}

fn search(ctx: &mut Ctx<'_>, scheme: &ComplexScheme, max_states: usize) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Doc {
        status: &'static str,
        distance: Option<usize>,
        explored: Option<usize>,
        moves: Vec<OvalPath>,
        result: Option<String>,
    }
    let doc = match swap_search(scheme, max_states) {
        Ok(outcome) => {
            let status = match outcome.status {
                SearchStatus::AlreadySatisfies => "already_satisfies",
                SearchStatus::Reached => "reached",
                SearchStatus::Unreachable => "unreachable",
            };
            ctx.verdict = outcome.status != SearchStatus::Unreachable;
            let (moves, result) = match outcome.witness {
                Some(w) => (w.moves.into_iter().map(|m| m.parent_path).collect::<Vec<_>>(), Some(print_viro(&w.scheme))),
                None => (Vec::new(), None),
            };
            Doc { status, distance: result.as_ref().map(|_| moves.len()), explored: Some(outcome.explored), moves, result }
        }
        Err(Error::LimitExceeded(_)) => {
            ctx.verdict = false;
            let _ = writeln!(ctx.stderr, "warning: search stopped after {max_states} states");
            Doc { status: "limit_exceeded", distance: None, explored: None, moves: Vec::new(), result: None }
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = format!("status: {}\n", doc.status);
    if let Some(d) = doc.distance {
        let _ = writeln!(text, "distance: {d}");
    }
    if let Some(n) = doc.explored {
        let _ = writeln!(text, "explored: {n}");
    }
    if !doc.moves.is_empty() {
        let paths: Vec<String> = doc.moves.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(text, "moves: {}", paths.join(" "));
    }
    if let Some(r) = &doc.result {
        let _ = writeln!(text, "result: {r}");
    }
    ctx.emit(&text, Some(json(&doc)));
    Ok(())
}

fn enumerate(ctx: &mut Ctx<'_>, ovals: usize, degree: Option<u32>, filters: Filters, ceiling: usize) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Row {
        notation: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        valid: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        left_margin: Option<i64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        right_margin: Option<i64>,
    }
    let rows: Vec<Row> = match degree {
        None => {
            if filters != Filters::default() {
                return Err(Failure::Usage("filters need --degree".into()));
            }
            enumerate_forests_with_ceiling(ovals, ceiling)?
                .iter()
                .map(|f| Row { notation: print_forest(f), valid: None, left_margin: None, right_margin: None })
                .collect()
        }
        Some(d) => {
            let spec = EnumerationSpec { ceiling, ..EnumerationSpec::new(ovals, Some(d)).with_filters(filters) };
            enumerate_schemes(&spec)?
                .into_iter()
                .map(|e| Row {
                    notation: print_viro(&e.scheme),
                    valid: Some(e.violations.is_empty()),
                    left_margin: e.report.as_ref().map(|r| r.left_margin),
                    right_margin: e.report.as_ref().map(|r| r.right_margin),
                })
                .collect()
        }
    };
    let text: String = rows.iter().map(|r| format!("{}\n", r.notation)).collect();
    ctx.emit(&text, Some(json(&rows)));
    Ok(())
}
