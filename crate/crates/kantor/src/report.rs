//! Report types: JSON-serializable results of identity suites, relation
//! tables and dimension computations, with markdown rendering.
//!
//! All container fields are ordered (vectors, BTreeMaps), so serializing
//! the same results twice yields byte-identical JSON. The only
//! run-dependent field is `timing_ms`, which consumers exclude when
//! comparing reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::SparseVec;

/// Result of checking one identity over a tuple space.
#[derive(Serialize, Clone, Debug)]
pub struct IdentityCheck {
    pub identity: String,
    pub mode: String,
    pub tuples_checked: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterExample>,
}

/// First failing tuple of an identity check, verbatim.
#[derive(Serialize, Clone, Debug)]
pub struct CounterExample {
    /// the argument vectors, index → coefficient
    pub args: Vec<BTreeMap<usize, String>>,
    pub lhs: BTreeMap<usize, String>,
    pub rhs: BTreeMap<usize, String>,
}

impl CounterExample {
    pub fn from_vectors(
        args: &[SparseVec<usize>],
        lhs: &SparseVec<usize>,
        rhs: &SparseVec<usize>,
    ) -> Self {
        fn conv(v: &SparseVec<usize>) -> BTreeMap<usize, String> {
            v.iter().map(|(k, c)| (*k, c.to_string())).collect()
        }
        CounterExample {
            args: args.iter().map(conv).collect(),
            lhs: conv(lhs),
            rhs: conv(rhs),
        }
    }
}

/// Axiom-suite report for one system.
#[derive(Serialize, Debug)]
pub struct AxiomReport {
    pub system: String,
    pub suite: String,
    pub dim: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

impl AxiomReport {
    pub fn new(
        system: &str,
        suite: &str,
        dim: usize,
        mode: &str,
        seed: Option<u64>,
        checks: Vec<IdentityCheck>,
    ) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        AxiomReport {
            system: system.into(),
            suite: suite.into(),
            dim,
            mode: mode.into(),
            seed,
            checks,
            pass,
        }
    }
}

/// Result of checking one commutation relation over index tuples.
#[derive(Serialize, Clone, Debug)]
pub struct RelationCheck {
    pub relation: String,
    pub mode: String,
    pub instances_checked: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct GradeDim {
    pub grade: i32,
    pub dim: usize,
}

/// Full report on a realized algebra.
#[derive(Serialize, Debug)]
pub struct GradedAlgebraReport {
    pub system: String,
    pub kind: String,
    pub graded_dims: Vec<GradeDim>,
    pub total_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_total: Option<usize>,
    pub commutation_table: Vec<RelationCheck>,
    pub identity_checks: Vec<IdentityCheck>,
    pub pass: bool,
    pub timing_ms: u64,
}

/// One row of the exceptional-algebra dimension table.
#[derive(Serialize, Debug)]
pub struct TableRow {
    pub system: String,
    pub algebra: String,
    pub graded_dims: Vec<GradeDim>,
    pub total_dim: usize,
    pub expected_total: usize,
    pub matches: bool,
    pub timing_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct DimensionTable {
    pub rows: Vec<TableRow>,
    pub pass: bool,
}

pub fn render_axioms_markdown(r: &AxiomReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# {} suite for {} (dim {}, {})\n\n",
        r.suite, r.system, r.dim, r.mode
    ));
    out.push_str("| identity | mode | tuples | pass |\n|---|---|---:|---|\n");
    for c in &r.checks {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            c.identity,
            c.mode,
            c.tuples_checked,
            if c.pass { "yes" } else { "NO" }
        ));
    }
    if let Some(c) = r.checks.iter().find_map(|c| c.counterexample.as_ref()) {
        out.push_str(&format!(
            "\nfirst counterexample: args {:?}, lhs {:?}, rhs {:?}\n",
            c.args, c.lhs, c.rhs
        ));
    }
    out
}

pub fn render_algebra_markdown(r: &GradedAlgebraReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# L({}) — {}\n\n", r.system, r.kind));
    out.push_str("| grade | dim |\n|---:|---:|\n");
    for g in &r.graded_dims {
        out.push_str(&format!("| {} | {} |\n", g.grade, g.dim));
    }
    out.push_str(&format!("| total | {} |\n", r.total_dim));
    if let Some(exp) = r.expected_total {
        out.push_str(&format!("\nexpected total: {}\n", exp));
    }
    if !r.commutation_table.is_empty() {
        out.push_str("\n| relation | mode | instances | pass |\n|---|---|---:|---|\n");
        for c in &r.commutation_table {
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                c.relation,
                c.mode,
                c.instances_checked,
                if c.pass { "yes" } else { "NO" }
            ));
        }
    }
    if !r.identity_checks.is_empty() {
        out.push_str("\n| check | mode | tuples | pass |\n|---|---|---:|---|\n");
        for c in &r.identity_checks {
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                c.identity,
                c.mode,
                c.tuples_checked,
                if c.pass { "yes" } else { "NO" }
            ));
        }
    }
    out.push_str(&format!("\ntiming: {} ms\n", r.timing_ms));
    out
}

pub fn render_dimension_table_markdown(t: &DimensionTable) -> String {
    let mut out = String::new();
    out.push_str("| system | algebra | graded dims | total | expected | ok |\n");
    out.push_str("|---|---|---|---:|---:|---|\n");
    for row in &t.rows {
        let dims = row
            .graded_dims
            .iter()
            .map(|g| g.dim.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "| {} | {} | ({}) | {} | {} | {} |\n",
            row.system,
            row.algebra,
            dims,
            row.total_dim,
            row.expected_total,
            match &row.error {
                Some(e) => format!("error: {e}"),
                None if row.matches => "yes".into(),
                None => "NO".into(),
            }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn identity_check_serialization_is_stable() {
        let mut v = SparseVec::new();
        v.insert(2usize, Scalar::ratio(-1, 2));
        let ce = CounterExample::from_vectors(&[v.clone()], &v, &SparseVec::new());
        let check = IdentityCheck {
            identity: "x".into(),
            mode: "sampled".into(),
            tuples_checked: 5,
            pass: false,
            counterexample: Some(ce),
        };
        let a = serde_json::to_string(&check).unwrap();
        let b = serde_json::to_string(&check).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"-1/2\""));
    }

    #[test]
    fn passing_check_omits_counterexample() {
        let check = IdentityCheck {
            identity: "y".into(),
            mode: "exhaustive".into(),
            tuples_checked: 100,
            pass: true,
            counterexample: None,
        };
        let s = serde_json::to_string(&check).unwrap();
        assert!(!s.contains("counterexample"));
    }
}
