//! Reports in text and JSON. Both renderings are produced from the same
//! structs, so they carry the same numbers.

use std::fmt;
use std::fmt::Write as _;

use critgroup::decomposition::{Check, DecompositionReport, DirectSumCertificate, Status};
use critgroup::json::{value, values};
use critgroup::{FinAbGroup, Multigraph};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Format, EXIT_INVALID, EXIT_OK, EXIT_VERIFY_FAILED};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub certificate: Option<DirectSumCertificate>,
}

impl Failure {
    pub fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Self {
        Failure { code, kind, message: message.into(), certificate: None }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(EXIT_INVALID, "invalid", message)
    }

    pub fn to_json(&self) -> String {
        let mut v = json!({ "error": self.kind, "exit_code": self.code, "message": self.message });
        if let Some(c) = &self.certificate {
            v["certificate"] = serde_json::to_value(c).expect("certificate");
        }
        serde_json::to_string_pretty(&v).expect("json")
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}", self.message)?;
        if let Some(c) = &self.certificate {
            let verdict = if c.divides { "no obstruction" } else { "the direct sum is not a subgroup of K(G)" };
            write!(f, "\ncertificate: |K(H1)| |K(H2)| |K(H3)| = {c}: {verdict}")?;
        }
        Ok(())
    }
}

pub struct ComputeOutput {
    vertices: usize,
    edges: usize,
    loops: usize,
    group: FinAbGroup,
    spanning_trees: BigInt,
}

impl ComputeOutput {
    pub fn new(g: &Multigraph, group: FinAbGroup, spanning_trees: BigInt) -> Self {
        ComputeOutput {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            loops: g.loop_count(),
            group,
            spanning_trees,
        }
    }

    pub fn render(&self, format: Format) -> (String, u8) {
        let text = match format {
            Format::Json => serde_json::to_string_pretty(&json!({
                "vertices": self.vertices,
                "edges": self.edges,
                "loops": self.loops,
                "invariant_factors": values(self.group.factors()),
                "order": value(&self.group.order()),
                "spanning_trees": value(&self.spanning_trees),
            }))
            .expect("json"),
            Format::Text => {
                let factors: Vec<String> = self.group.factors().iter().map(|d| d.to_string()).collect();
                format!(
                    "graph: {} vertices, {} edges ({} loops ignored)\ninvariant factors: [{}]\nK(G) = {}\norder: {}\nspanning trees: {}",
                    self.vertices,
                    self.edges,
                    self.loops,
                    factors.join(", "),
                    self.group,
                    self.group.order(),
                    self.spanning_trees
                )
            }
        };
        (text, EXIT_OK)
    }
}

#[derive(Serialize)]
pub struct OracleOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refused: Option<String>,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
pub struct VerifyOutput {
    vertices: usize,
    edges: usize,
    /// Order of the rotation.
    n: usize,
    report: DecompositionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleOutput>,
    pass: bool,
}

impl VerifyOutput {
    pub fn new(g: &Multigraph, n: usize, report: DecompositionReport, oracle: Option<OracleOutput>) -> Self {
        let oracle_ok = oracle.as_ref().is_none_or(|o| o.checks.iter().all(|c| c.status != Status::Fail));
        let pass = report.pass && oracle_ok;
        VerifyOutput { vertices: g.vertex_count(), edges: g.edge_count(), n, report, oracle, pass }
    }

    pub fn render(&self, format: Format) -> (String, u8) {
        let code = if self.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
        let text = match format {
            Format::Json => serde_json::to_string_pretty(self).expect("json"),
            Format::Text => self.text(),
        };
        (text, code)
    }

    fn text(&self) -> String {
        let r = &self.report;
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "graph: {} vertices, {} edges", self.vertices, self.edges).unwrap();
        writeln!(w, "action: dihedral of order {}, n = {}, s = {}, t = {}", 2 * self.n, r.n, r.s, r.t).unwrap();
        if r.swapped {
            writeln!(w, "labeling exchanged sigma1 and sigma2; H1 is the quotient by the file's sigma2").unwrap();
        }
        writeln!(w, "K(G) = {} (order {})", r.jacobian, r.jacobian.order()).unwrap();
        writeln!(w, "quotients:").unwrap();
        for q in &r.quotients {
            writeln!(
                w,
                "  {:<4} acting order {}, {} vertices, {} edges, K = {} (order {})",
                q.part.name(),
                q.acting_order,
                q.vertices,
                q.edges,
                q.jacobian,
                q.jacobian.order()
            )
            .unwrap();
        }
        writeln!(w, "J = P1 + P2 + P3 in K(G): {} (order {})", r.subgroup, r.subgroup.order()).unwrap();
        writeln!(w, "checks:").unwrap();
        for c in &r.checks {
            writeln!(w, "  {c}").unwrap();
        }
        if let Some(s) = &r.sweep {
            writeln!(
                w,
                "sweep: seed {}, {} divisors ({} in P12, {} in P), {} pullback samples; mismatches: membership {}, split {}, principal {}, pullback {}",
                s.seed,
                s.trials,
                s.members_p12,
                s.members_p,
                s.pullback_trials,
                s.membership_mismatches,
                s.split_failures,
                s.principal_mismatches,
                s.pullback_failures
            )
            .unwrap();
        }
        if let Some(o) = &self.oracle {
            writeln!(w, "oracle:").unwrap();
            if let Some(why) = &o.refused {
                writeln!(w, "  {why}").unwrap();
            }
            for c in &o.checks {
                writeln!(w, "  {c}").unwrap();
            }
        }
        writeln!(w, "generators (pullbacks of the standard generators of each K(H_i)):").unwrap();
        for g in &r.generators {
            writeln!(w, "  {}: {}", g.part.name(), compact(&g.divisor)).unwrap();
        }
        write!(w, "result: {}", if self.pass { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

/// `{a: 1, b: -1}` with zero entries dropped.
fn compact(divisor: &Value) -> String {
    let Some(map) = divisor.as_object() else {
        return divisor.to_string();
    };
    let parts: Vec<String> = map
        .iter()
        .filter(|(_, v)| v.as_i64() != Some(0))
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}: {s}"),
            v => format!("{k}: {v}"),
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}
