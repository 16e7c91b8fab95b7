//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 1 when a verification suite or an internal check fails, 2 on
//! bad input.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::board::{Cell, FerrersBoard};
use crate::error::{Result, RookError};
use crate::fs_bijection::{equivalence_script, transport_with_script};
use crate::gm_engine::{GmOptions, Visit};
use crate::gm_rook::{embed_in_triangle, GmRookTransport};
use crate::hit::{hit_numbers, q_hit_polynomial, xi_statistic, FullPlacement};
use crate::placement::{q_rook_polynomial, rook_count, rook_numbers, validate_placement};
use crate::poly::are_equivalent;
use crate::verify::{self, Budget, DEFAULT_MAX_CELLS};

pub const BUDGET_ENV: &str = "ROOKLAB_BUDGET_CELLS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "rooklab", version, about = "m-level rook theory on Ferrers boards")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BoardArgs {
    /// Column heights, lowest column first, e.g. 1,3,3,4
    #[arg(long)]
    pub board: FerrersBoard,
    #[arg(long)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub from: FerrersBoard,
    #[arg(long)]
    pub to: FerrersBoard,
    #[arg(long)]
    pub m: usize,
    /// Rook cells as column,row pairs, e.g. "3,2;2,3" or "[[3,2],[2,3]]"
    #[arg(long, allow_hyphen_values = true)]
    pub placement: String,
    /// Print every intermediate board and placement
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// m-level rook numbers
    Count {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long)]
        k: Option<usize>,
    },
    /// q-rook polynomial over k-rook placements
    Qpoly {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long)]
        k: usize,
    },
    /// Singleton board of the same level counts
    Singleton {
        #[command(flatten)]
        board: BoardArgs,
    },
    /// The l-operator
    Lop {
        #[command(flatten)]
        board: BoardArgs,
    },
    /// m-increasing representative and the script reaching it
    Rep {
        #[command(flatten)]
        board: BoardArgs,
    },
    /// Decide rook equivalence
    Equiv {
        #[arg(long)]
        a: FerrersBoard,
        #[arg(long)]
        b: FerrersBoard,
        #[arg(long)]
        m: usize,
    },
    /// Carry a placement between equivalent boards
    Transport {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Involution-principle transport between equivalent singleton boards
    GmTransport {
        #[command(flatten)]
        pair: PairArgs,
        /// Side of the ambient triangle; defaults to the smallest that fits both boards
        #[arg(long = "N", alias = "n")]
        n: Option<usize>,
    },
    /// Hit numbers inside Sq_{N,m}
    Hit {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Generating function of xi over hit sets
    HitQpoly {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// The xi statistic of a full placement
    Xi {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        rooks: String,
    },
    /// Run exhaustive invariant suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_cells: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        m_list: Vec<usize>,
    },
}

/// Parse rook cells from `"3,2;2,3"`, `"(3,2),(2,3)"` or JSON `[[3,2],[2,3]]`.
pub fn parse_cells(s: &str) -> Result<Vec<Cell>> {
    if s.contains('-') {
        return Err(RookError::Parse(format!("negative coordinate in {s:?}")));
    }
    if let Some(bad) = s.chars().find(|c| !(c.is_ascii_digit() || " ,;()[]".contains(*c))) {
        return Err(RookError::Parse(format!("unexpected {bad:?} in {s:?}")));
    }
    let numbers: Vec<usize> = s
        .split(|c: char| !c.is_ascii_digit())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| RookError::Parse(format!("bad number {t:?}"))))
        .collect::<Result<_>>()?;
    if numbers.len() % 2 == 1 {
        return Err(RookError::Parse(format!("odd number of coordinates in {s:?}")));
    }
    Ok(numbers.chunks(2).map(|p| Cell::new(p[0], p[1])).collect())
}

fn exit_code(e: &RookError) -> i32 {
    match e {
        RookError::InternalNonTermination
        | RookError::IterationCapExceeded { .. }
        | RookError::InvolutionViolation(_)
        | RookError::SignViolation(_) => 1,
        _ => 2,
    }
}

fn wants_json(argv: &[String]) -> bool {
    argv.windows(2).any(|w| w[0] == "--format" && w[1] == "json") || argv.iter().any(|a| a == "--format=json")
}

/// Run with process arguments (including the program name) on stdout/stderr.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            if wants_json(argv) {
                let body = json!({"error": "usage", "message": e.kind().to_string(), "detail": e.to_string()});
                let _ = writeln!(out, "{body}");
            } else {
                let _ = write!(err, "{e}");
            }
            return 2;
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(output) => {
            match format {
                Format::Text => {
                    let _ = write!(out, "{}", output.text);
                }
                Format::Json => {
                    let _ = writeln!(out, "{}", output.json);
                }
            }
            output.code
        }
        Err(e) => {
            match format {
                Format::Text => {
                    let _ = writeln!(err, "error: {e}");
                }
                Format::Json => {
                    let _ = writeln!(
                        out,
                        "{}",
                        json!({"error": format!("{e:?}").split(['(', ' ']).next(), "message": e.to_string()})
                    );
                }
            }
            exit_code(&e)
        }
    }
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        let mut text = text.into();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Output { text, json, code: 0 }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn cells_text(cells: &[Cell]) -> String {
    serde_json::to_string(cells).expect("cells serialize")
}

/// Smallest `N` with both boards inside `Delta_{N,m}`.
fn default_triangle_side(a: &FerrersBoard, b: &FerrersBoard, m: usize) -> Result<usize> {
    let start = a
        .strip_leading_zeros()
        .num_columns()
        .max(b.strip_leading_zeros().num_columns())
        .max(1);
    let limit = start + a.max_height().max(b.max_height()) + 1;
    (start..=limit)
        .find(|&n| embed_in_triangle(a, m, n).is_ok() && embed_in_triangle(b, m, n).is_ok())
        .ok_or_else(|| {
            embed_in_triangle(a, m, limit)
                .and(embed_in_triangle(b, m, limit))
                .err()
                .unwrap_or(RookError::DoesNotFit)
        })
}

fn execute(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Count {
            board: BoardArgs { board, m },
            k,
        } => Ok(match k {
            Some(k) => {
                let count = rook_count(&board, m, k);
                Output::ok(
                    count.to_string(),
                    json!({"board": board, "m": m, "k": k, "count": count}),
                )
            }
            None => {
                let counts = rook_numbers(&board, m);
                Output::ok(join(&counts), json!({"board": board, "m": m, "rook_numbers": counts}))
            }
        }),
        Command::Qpoly {
            board: BoardArgs { board, m },
            k,
        } => {
            let poly = q_rook_polynomial(&board, m, k);
            Ok(Output::ok(
                poly.to_string(),
                json!({"board": board, "m": m, "k": k, "polynomial": poly}),
            ))
        }
        Command::Singleton {
            board: BoardArgs { board, m },
        } => {
            let s = board.singleton_of(m);
            Ok(Output::ok(s.to_string(), json!({"board": s})))
        }
        Command::Lop {
            board: BoardArgs { board, m },
        } => {
            let l = board.l_operator(m);
            Ok(Output::ok(l.to_string(), json!({"board": l})))
        }
        Command::Rep {
            board: BoardArgs { board, m },
        } => {
            let (rep, script) = board.m_increasing_representative(m)?;
            let mut text = format!("{rep}\n");
            for step in &script.steps {
                text.push_str(&format!("  {step}\n"));
            }
            Ok(Output::ok(text, json!({"representative": rep, "script": script})))
        }
        Command::Equiv { a, b, m } => {
            let (ra, _) = a.m_increasing_representative(m)?;
            let (rb, _) = b.m_increasing_representative(m)?;
            let equivalent = are_equivalent(&a, &b, m)?;
            let text = if equivalent {
                format!("true\nrepresentative: {ra}")
            } else {
                format!("false\nrepresentatives: {ra} vs {rb}")
            };
            Ok(Output::ok(
                text,
                json!({"equivalent": equivalent, "representatives": [ra, rb]}),
            ))
        }
        Command::Transport { pair } => transport_command(pair),
        Command::GmTransport { pair, n } => gm_transport_command(pair, n),
        Command::Hit {
            board: BoardArgs { board, m },
            n,
            k,
        } => {
            let h = hit_numbers(&board, m, n)?;
            Ok(match k {
                Some(k) => {
                    let v = h.get(k).copied().unwrap_or(0);
                    Output::ok(
                        v.to_string(),
                        json!({"board": board, "m": m, "N": n, "k": k, "hit_number": v}),
                    )
                }
                None => Output::ok(join(&h), json!({"board": board, "m": m, "N": n, "hit_numbers": h})),
            })
        }
        Command::HitQpoly {
            board: BoardArgs { board, m },
            n,
            k,
        } => {
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=n).collect(),
            };
            let polys = ks
                .iter()
                .map(|&k| q_hit_polynomial(&board, m, n, k))
                .collect::<Result<Vec<_>>>()?;
            let text = if k.is_some() {
                polys[0].to_string()
            } else {
                ks.iter().zip(&polys).map(|(k, p)| format!("k={k}: {p}\n")).collect()
            };
            let entries: Vec<Value> = ks
                .iter()
                .zip(&polys)
                .map(|(k, p)| json!({"k": k, "polynomial": p}))
                .collect();
            Ok(Output::ok(
                text,
                json!({"board": board, "m": m, "N": n, "polynomials": entries}),
            ))
        }
        Command::Xi {
            board: BoardArgs { board, m },
            n,
            rooks,
        } => {
            let placement = FullPlacement::new(n, m, &parse_cells(&rooks)?)?;
            let xi = xi_statistic(&board, m, n, &placement)?;
            Ok(Output::ok(
                xi.to_string(),
                json!({"board": board, "m": m, "N": n, "rooks": placement, "xi": xi}),
            ))
        }
        Command::Verify {
            suite,
            max_cells,
            m_list,
        } => {
            if m_list.contains(&0) {
                return Err(RookError::Parse("m must be positive".into()));
            }
            let max_cells = match max_cells {
                Some(c) => c,
                None => match std::env::var(BUDGET_ENV) {
                    Ok(v) => v
                        .trim()
                        .parse()
                        .map_err(|_| RookError::Parse(format!("{BUDGET_ENV}={v:?}")))?,
                    Err(_) => DEFAULT_MAX_CELLS,
                },
            };
            let reports = verify::run(&suite, &Budget { max_cells, m_list })?;
            let mut text = String::new();
            for r in &reports {
                match &r.counterexample {
                    None => text.push_str(&format!("ok   {} ({} cases)\n", r.suite, r.cases)),
                    Some(c) => text.push_str(&format!("FAIL {} after {} cases: {c}\n", r.suite, r.cases)),
                }
            }
            let passed = reports.iter().all(|r| r.passed());
            Ok(Output {
                text,
                json: json!({"max_cells": max_cells, "passed": passed, "suites": reports}),
                code: if passed { 0 } else { 1 },
            })
        }
    }
}

fn transport_command(pair: PairArgs) -> Result<Output> {
    let PairArgs {
        from,
        to,
        m,
        placement,
        trace,
    } = pair;
    let cells = parse_cells(&placement)?;
    let start = validate_placement(&from, m, &cells)?;
    let script = equivalence_script(&from, &to, m)?;
    let image = transport_with_script(&script, &from, &to, m, &cells)?;
    let mut text = String::new();
    let mut steps = Vec::new();
    if trace {
        let mut current = start.cells().to_vec();
        text.push_str(&format!("start on {from}\n{}", from.render(m, &current)));
        for step in &script.steps {
            current = step.apply(m, &current)?;
            current.sort();
            text.push_str(&format!("{step}\n{}", step.target.render(m, &current)));
            steps.push(json!({"step": step, "placement": current}));
        }
    }
    text.push_str(&format!("{}\n", cells_text(image.cells())));
    let mut body = json!({"from": from, "to": to, "m": m, "placement": image});
    if trace {
        body["trace"] = Value::Array(steps);
    }
    Ok(Output::ok(text, body))
}

fn gm_transport_command(pair: PairArgs, n: Option<usize>) -> Result<Output> {
    let PairArgs {
        from,
        to,
        m,
        placement,
        trace,
    } = pair;
    let cells = parse_cells(&placement)?;
    let start = validate_placement(&from, m, &cells)?;
    let n = match n {
        Some(n) => n,
        None => default_triangle_side(&from, &to, m)?,
    };
    let engine = GmRookTransport::new(&from, &to, m, n, cells.len())?;
    let (out, visits) = engine.transport(start.cells(), GmOptions::default())?;
    let image = validate_placement(&to, m, &out)?;
    let mut text = String::new();
    if trace {
        for visit in &visits.visits {
            let (side, c) = match visit {
                Visit::Source(c) => ("source", c),
                Visit::Target(c) => ("target", c),
            };
            text.push_str(&format!("{side} sign {:?}\n{}", c.sign(), c.render()));
        }
        text.push_str(&format!("loops: {}\n", visits.loops));
    }
    text.push_str(&format!("{}\n", cells_text(image.cells())));
    let mut body = json!({"from": from, "to": to, "m": m, "N": n, "placement": image});
    if trace {
        body["trace"] = to_value(&visits);
    }
    Ok(Output::ok(text, body))
}
