//! Text and line-delimited JSON renderings of command results.
//!
//! Every machine record is one JSON object on one line, carrying a
//! `"command"` field naming the subcommand that produced it.

use std::io::{self, Write};

use cdnim_core::oracle::{Mismatch, VerifyReport};
use cdnim_core::strategy::{classify, Outcome, StrategyAdvice};
use cdnim_core::{sg_formula, valuation, Grundy, Ord2Value, Position};
use serde::Serialize;

use crate::wire::{move_records, AdviceRecord, MoveRecord};

/// Mismatches listed individually in text output before truncating.
pub const TEXT_MISMATCH_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Serialize)]
struct SgRecord<'a> {
    command: &'static str,
    position: &'a Position,
    sg: Grundy,
    lambda: Ord2Value,
    iota: usize,
    status: Outcome,
}

#[derive(Serialize)]
struct MovesRecord<'a> {
    command: &'static str,
    position: &'a Position,
    terminal: bool,
    moves: Vec<MoveRecord>,
}

#[derive(Serialize)]
struct BestRecord<'a> {
    command: &'static str,
    position: &'a Position,
    #[serde(flatten)]
    advice: AdviceRecord,
}

#[derive(Serialize)]
struct MismatchRecord<'a> {
    command: &'static str,
    kind: &'static str,
    position: &'a Position,
    formula: Grundy,
    oracle: Grundy,
}

#[derive(Serialize)]
struct SummaryRecord {
    command: &'static str,
    kind: &'static str,
    dims: usize,
    max: u64,
    positions: u64,
    mismatches: usize,
    passed: bool,
    elapsed_ms: Option<f64>,
}

fn json_line<W: Write, T: Serialize>(out: &mut W, record: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    writeln!(out)
}

fn move_line(m: &MoveRecord) -> String {
    let succ = Position::new(m.successor.clone()).expect("nonempty");
    format!("{} {} -> {}", m.index, m.amount, succ)
}

pub fn write_sg<W: Write>(out: &mut W, position: &Position, format: Format) -> io::Result<()> {
    let v = valuation(position);
    let sg = sg_formula(position);
    let status = classify(position);
    match format {
        Format::Machine => json_line(
            out,
            &SgRecord {
                command: "sg",
                position,
                sg,
                lambda: v.lambda,
                iota: v.iota,
                status,
            },
        ),
        Format::Text => {
            writeln!(out, "position {position}")?;
            writeln!(out, "sg {sg}")?;
            writeln!(out, "lambda {}", v.lambda)?;
            writeln!(out, "iota {}", v.iota)?;
            writeln!(out, "status {status}")
        }
    }
}

pub fn write_moves<W: Write>(out: &mut W, position: &Position, format: Format) -> io::Result<()> {
    let moves = move_records(position);
    match format {
        Format::Machine => json_line(
            out,
            &MovesRecord {
                command: "moves",
                position,
                terminal: position.is_terminal(),
                moves,
            },
        ),
        Format::Text => {
            if moves.is_empty() {
                return writeln!(out, "terminal");
            }
            for m in &moves {
                writeln!(out, "{}", move_line(m))?;
            }
            Ok(())
        }
    }
}

pub fn write_best<W: Write>(
    out: &mut W,
    position: &Position,
    advice: &StrategyAdvice,
    format: Format,
) -> io::Result<()> {
    let record = AdviceRecord::new(position, advice);
    match format {
        Format::Machine => json_line(
            out,
            &BestRecord {
                command: "best",
                position,
                advice: record,
            },
        ),
        Format::Text => {
            writeln!(out, "position {position}")?;
            writeln!(out, "status {}", record.status)?;
            writeln!(out, "sg {}", record.sg)?;
            if let Some(m) = &record.recommended {
                writeln!(out, "move {}", move_line(m))?;
            }
            if let Some(m) = &record.fallback {
                writeln!(out, "fallback {}", move_line(m))?;
            }
            if let Some(t) = record.target_sg {
                writeln!(out, "target_sg {t}")?;
            }
            Ok(())
        }
    }
}

/// Writes the report. In text mode the elapsed time is left out so that
/// output is reproducible; callers print it separately.
pub fn write_verify<W: Write>(
    out: &mut W,
    report: &VerifyReport,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Machine => {
            for Mismatch {
                position,
                formula,
                oracle,
            } in &report.mismatches
            {
                json_line(
                    out,
                    &MismatchRecord {
                        command: "verify",
                        kind: "mismatch",
                        position,
                        formula: *formula,
                        oracle: *oracle,
                    },
                )?;
            }
            json_line(
                out,
                &SummaryRecord {
                    command: "verify",
                    kind: "summary",
                    dims: report.dims,
                    max: report.bound,
                    positions: report.checked,
                    mismatches: report.mismatches.len(),
                    passed: report.passed(),
                    elapsed_ms: report.elapsed.map(|d| d.as_secs_f64() * 1e3),
                },
            )
        }
        Format::Text => {
            for m in report.mismatches.iter().take(TEXT_MISMATCH_LIMIT) {
                writeln!(
                    out,
                    "mismatch {} formula {} oracle {}",
                    m.position, m.formula, m.oracle
                )?;
            }
            if report.mismatches.len() > TEXT_MISMATCH_LIMIT {
                writeln!(
                    out,
                    "... {} more",
                    report.mismatches.len() - TEXT_MISMATCH_LIMIT
                )?;
            }
            writeln!(out, "dims {}", report.dims)?;
            writeln!(out, "max {}", report.bound)?;
            writeln!(out, "positions {}", report.checked)?;
            writeln!(out, "mismatches {}", report.mismatches.len())?;
            writeln!(
                out,
                "result {}",
                if report.passed() { "pass" } else { "fail" }
            )
        }
    }
}
