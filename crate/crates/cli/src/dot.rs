//! Graphviz rendering of the layer structure: one node per vector of `Z_d²`,
//! grouped into one rank per degree, and one edge chain per point of the
//! projective line running through its `d` vectors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use pauli_line::proj_line;
use pauli_line::symplectic::{self, Degree};
use pauli_line::{Error, Modulus, Vec2};

/// Default cap on the number of nodes (`d²`).
pub const DEFAULT_NODE_BUDGET: u128 = 3_600;

fn node_id(v: Vec2) -> String {
    format!("\"{}_{}\"", v.b, v.c)
}

pub fn layers_dot(m: &Modulus, budget: u128) -> Result<String, Error> {
    let d = m.d();
    let nodes = d as u128 * d as u128;
    if nodes > budget {
        return Err(Error::BudgetExceeded {
            what: "layer diagram nodes",
            required: nodes,
            cap: budget,
        });
    }
    let cat = proj_line::enumerate_points(m)?;

    let mut layers: BTreeMap<Degree, Vec<Vec2>> = BTreeMap::new();
    for v in symplectic::all_vectors(m) {
        layers.entry(symplectic::degree(m, v)).or_default().push(v);
    }

    let primes: Vec<String> = m.factors().iter().map(|f| f.p.to_string()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "graph layers_{d} {{");
    let _ = writeln!(out, "  // d = {m}; degree tuples list δ_p for p = ({})", primes.join(","));
    let _ = writeln!(out, "  rankdir=TB;");
    let _ = writeln!(out, "  node [shape=circle, label=\"\", style=filled, fillcolor=white];");
    for (i, (deg, vs)) in layers.iter().enumerate() {
        let _ = writeln!(out, "  subgraph layer_{i} {{");
        let _ = writeln!(out, "    rank=same;");
        let _ = writeln!(out, "    // layer {deg}: {} vectors", vs.len());
        for &v in vs {
            let points = proj_line::count_points_through(m, v);
            // circle area grows with the number of points through the vector
            let width = 0.15 * (points as f64).sqrt();
            let _ = writeln!(
                out,
                "    {} [degree=\"{deg}\", points={points}, width={width:.3}, tooltip=\"{v}\"];",
                node_id(v)
            );
        }
        let _ = writeln!(out, "  }}");
    }
    for pt in cat.points() {
        let chain: Vec<String> = pt.vectors(m).map(node_id).collect();
        let _ = writeln!(out, "  {} [point=\"{}\"];", chain.join(" -- "), pt.generator());
    }
    let _ = writeln!(out, "}}");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_is_enforced() {
        let m = Modulus::new(61).unwrap();
        assert!(matches!(
            layers_dot(&m, DEFAULT_NODE_BUDGET),
            Err(Error::BudgetExceeded { cap: 3600, .. })
        ));
    }

    #[test]
    fn qubit_diagram() {
        let dot = layers_dot(&Modulus::new(2).unwrap(), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(dot.lines().filter(|l| l.contains("[degree=")).count(), 4);
        assert_eq!(dot.lines().filter(|l| l.contains("[point=")).count(), 3);
        assert!(dot.contains("\"0_0\" -- \"1_0\" [point=\"(1,0)\"];"));
    }
}
