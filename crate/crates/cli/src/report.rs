//! The `analyze` report: factorization, line size, degree layers and the
//! per-vector quantities.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use pauli_line::pauli::{self, PauliOp};
use pauli_line::proj_line;
use pauli_line::ring::PrimePower;
use pauli_line::symplectic;
use pauli_line::{Modulus, Vec2};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Default cap on `|P₁(Z_d)|` when listing the points through a vector.
pub const DEFAULT_LISTING_BUDGET: u128 = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub d: u64,
    pub factors: Vec<PrimePower>,
    /// Primes in the order used by every degree tuple.
    pub degree_order: Vec<u64>,
    pub squarefree: bool,
    pub line_cardinality: u128,
    pub group_order: u128,
    pub layers: Vec<LayerRow>,
    pub query: Option<VectorQuery>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerRow {
    pub degree: Vec<u32>,
    pub delta_sum: u32,
    pub vector_count: u128,
    pub operator_count: u128,
    pub pg_label: Option<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorQuery {
    pub vector: Vec2,
    pub degree: Vec<u32>,
    pub admissible: bool,
    pub points_through: u128,
    /// Generators of the containing points; `None` when the line is over budget.
    pub containing_points: Option<Vec<Vec2>>,
    pub perp_cardinality: u128,
    /// `None` for the zero vector, where the closed form does not apply.
    pub u_size: Option<u128>,
    pub u_equals_perp: bool,
    pub commuting_operators: u128,
}

pub fn analyze(m: &Modulus, vector: Option<(u64, u64)>, budget: u128) -> Result<AnalysisReport, CliError> {
    let d = m.d() as u128;
    let group_order = d
        .checked_mul(d)
        .and_then(|x| x.checked_mul(d))
        .ok_or(pauli_line::Error::Overflow(m.d()))?;
    let table = pauli::layer_table(m)?;
    let layers = table
        .entries
        .iter()
        .map(|(deg, e)| LayerRow {
            degree: deg.0.clone(),
            delta_sum: deg.total(),
            vector_count: e.vectors,
            operator_count: e.operators,
            pg_label: pauli::layer_pg_label(deg, m),
        })
        .collect();

    let query = match vector {
        None => None,
        Some((b, c)) => Some(query(m, Vec2::new(b, c, m), budget)?),
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        d: m.d(),
        factors: m.factors().to_vec(),
        degree_order: m.factors().iter().map(|f| f.p).collect(),
        squarefree: m.is_squarefree(),
        line_cardinality: proj_line::line_cardinality(m),
        group_order,
        layers,
        query,
    })
}

fn query(m: &Modulus, v: Vec2, budget: u128) -> Result<VectorQuery, CliError> {
    let containing_points = if proj_line::line_cardinality(m) <= budget {
        let cat = proj_line::enumerate_points_within(m, budget)?;
        Some(
            proj_line::points_through(v, &cat)
                .iter()
                .map(|p| p.generator())
                .collect(),
        )
    } else {
        None
    };
    Ok(VectorQuery {
        vector: v,
        degree: symplectic::degree(m, v).0,
        admissible: symplectic::is_admissible(m, v),
        points_through: proj_line::count_points_through(m, v),
        containing_points,
        perp_cardinality: symplectic::perp_cardinality(m, v),
        u_size: proj_line::u_size(m, v).ok(),
        u_equals_perp: proj_line::u_equals_perp(m, v),
        commuting_operators: pauli::commuting_count(m, PauliOp { a: 0, b: v.b, c: v.c })?,
    })
}

fn tuple<T: std::fmt::Display>(xs: &[T]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_text(r: &AnalysisReport) -> String {
    let m = Modulus::new(r.d).expect("report modulus is valid");
    let mut out = String::new();
    let _ = writeln!(out, "d = {m}");
    let _ = writeln!(out, "degree tuples list δ_p for p = {}", tuple(&r.degree_order));
    let _ = writeln!(out, "squarefree: {}", yes_no(r.squarefree));
    let _ = writeln!(out, "points on the projective line: {}", r.line_cardinality);
    let _ = writeln!(out, "group order: {}", r.group_order);
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:<14} {:>3} {:>12} {:>14}  pg-label",
        "layer", "Δ", "vectors", "operators"
    );
    for row in &r.layers {
        let label = row.pg_label.as_deref().map(tuple).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<14} {:>3} {:>12} {:>14}  {}",
            tuple(&row.degree),
            row.delta_sum,
            row.vector_count,
            row.operator_count,
            label
        );
    }
    if let Some(q) = &r.query {
        let _ = writeln!(out);
        let _ = writeln!(out, "vector {}", q.vector);
        let _ = writeln!(out, "  degree               {}", tuple(&q.degree));
        let _ = writeln!(out, "  admissible           {}", yes_no(q.admissible));
        let points = match &q.containing_points {
            Some(ps) => {
                let gens: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                format!("{}: {}", q.points_through, gens.join(" "))
            }
            None => format!("{} (listing over budget)", q.points_through),
        };
        let _ = writeln!(out, "  points through       {points}");
        let _ = writeln!(out, "  perp-set size        {}", q.perp_cardinality);
        let u = q.u_size.map(|u| u.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "  U size               {u}");
        let _ = writeln!(out, "  U = perp             {}", yes_no(q.u_equals_perp));
        let _ = writeln!(out, "  commuting operators  {}", q.commuting_operators);
    }
    out
}
