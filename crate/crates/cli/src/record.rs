//! Machine-readable run records: one per decision-procedure invocation,
//! carrying the verdict, counterexample, and explored-state metrics.

use std::fmt;

use clap::ValueEnum;
use serde::Serialize;

use safa_core::EngineStats;

/// Which decision procedure answers the query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Bisimulation up to congruence with a SAT-backed closure.
    Bisim,
    /// Reverse-deterministic model exploration; handles any alternation.
    ReverseSfa,
    /// Determinize + union-find; requires nondeterministic (s-FA) shape.
    SfaEq,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Bisim => "bisim",
            Engine::ReverseSfa => "reverse-sfa",
            Engine::SfaEq => "sfa-eq",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct StatsRecord {
    pub pairs_explored: u64,
    pub sat_queries: u64,
    pub representatives: u64,
}

impl From<&EngineStats> for StatsRecord {
    fn from(s: &EngineStats) -> StatsRecord {
        StatsRecord {
            pairs_explored: s.pairs_explored,
            sat_queries: s.sat_queries,
            representatives: s.representatives,
        }
    }
}

/// One invocation's outcome in schema-stable form.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub engine: String,
    pub inputs: Vec<String>,
    /// `equivalent`/`inequivalent`, `empty`/`nonempty`, `sat`/`unsat`,
    /// `timeout`, or `error`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub stats: StatsRecord,
    pub wall_time_ms: u64,
    pub timed_out: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunRecord {
    pub fn print_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} ({}): {}\n",
            self.command,
            self.engine,
            self.inputs.join(", ")
        ));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(cex) = &self.counterexample {
            out.push_str(&format!("counterexample: {cex}\n"));
        }
        if let Some(err) = &self.error {
            out.push_str(&format!("error: {err}\n"));
        }
        out.push_str(&format!(
            "pairs explored: {}  sat queries: {}  representatives: {}\n",
            self.stats.pairs_explored, self.stats.sat_queries, self.stats.representatives
        ));
        out.push_str(&format!("wall time: {} ms\n", self.wall_time_ms));
        out
    }

    pub fn csv_header() -> &'static str {
        "command,engine,inputs,verdict,counterexample,pairs_explored,sat_queries,\
         representatives,wall_time_ms,timed_out,error"
    }

    pub fn csv_line(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.command,
            self.engine,
            quote(&self.inputs.join("; ")),
            self.verdict,
            quote(self.counterexample.as_deref().unwrap_or("")),
            self.stats.pairs_explored,
            self.stats.sat_queries,
            self.stats.representatives,
            self.wall_time_ms,
            self.timed_out,
            quote(self.error.as_deref().unwrap_or("")),
        )
    }
}
