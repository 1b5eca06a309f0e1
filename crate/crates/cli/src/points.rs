//! Listing of `P₁(Z_d)` for the `points` command.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use pauli_line::proj_line;
use pauli_line::{Modulus, Vec2};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEntry {
    pub generator: Vec2,
    /// Generator reduced into each `Z_{p^ε}`, same order as `component_moduli`.
    pub components: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointListing {
    pub d: u64,
    pub count: usize,
    pub component_moduli: Vec<u64>,
    pub points: Vec<PointEntry>,
}

pub fn list(m: &Modulus, budget: u128) -> Result<PointListing, CliError> {
    let cat = proj_line::enumerate_points_within(m, budget)?;
    let points = cat
        .points()
        .iter()
        .map(|p| {
            let g = p.generator();
            PointEntry {
                generator: g,
                components: (0..m.rank()).map(|k| g.component(k, m)).collect(),
            }
        })
        .collect();
    Ok(PointListing {
        d: m.d(),
        count: cat.len(),
        component_moduli: m.factors().iter().map(|f| f.order()).collect(),
        points,
    })
}

pub fn render_text(l: &PointListing) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} points", l.count);
    for p in &l.points {
        let _ = writeln!(out, "{}", p.generator);
    }
    out
}
