//! The generalized Pauli group of one qudit, with elements kept in the normal
//! form `ω^a X^b Z^c`.
//!
//! Commutation depends only on `(b, c)`, so every count here factors through
//! `Z_d²` and the phase multiplicity `d`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Modulus;
use crate::symplectic::{self, Degree, Vec2};

/// `ω^a X^b Z^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliOp {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl PauliOp {
    pub const IDENTITY: PauliOp = PauliOp { a: 0, b: 0, c: 0 };

    pub fn new(a: u64, b: u64, c: u64, m: &Modulus) -> Self {
        PauliOp {
            a: m.reduce(a),
            b: m.reduce(b),
            c: m.reduce(c),
        }
    }

    pub fn vector(&self) -> Vec2 {
        Vec2 {
            b: self.b,
            c: self.c,
        }
    }

    /// Central elements `ω^a I`.
    pub fn is_central(&self) -> bool {
        self.b == 0 && self.c == 0
    }
}

/// All `d³` normal forms, lexicographic in `(a, b, c)`.
pub fn all_ops(m: &Modulus) -> impl Iterator<Item = PauliOp> + '_ {
    let d = m.d();
    (0..d).flat_map(move |a| {
        (0..d).flat_map(move |b| (0..d).map(move |c| PauliOp { a, b, c }))
    })
}

/// `(ω^a X^b Z^c)(ω^a' X^b' Z^c') = ω^{b'c + a + a'} X^{b+b'} Z^{c+c'}`.
pub fn multiply(m: &Modulus, g: PauliOp, h: PauliOp) -> PauliOp {
    PauliOp {
        a: m.add(m.mul(h.b, g.c), m.add(g.a, h.a)),
        b: m.add(g.b, h.b),
        c: m.add(g.c, h.c),
    }
}

/// `(ω^a X^b Z^c)⁻¹ = ω^{bc − a} X^{−b} Z^{−c}`.
pub fn inverse(m: &Modulus, g: PauliOp) -> PauliOp {
    PauliOp {
        a: m.sub(m.mul(g.b, g.c), g.a),
        b: m.neg(g.b),
        c: m.neg(g.c),
    }
}

/// `[g, h] = g h g⁻¹ h⁻¹ = ω^{cb' − c'b} I`.
pub fn commutator(m: &Modulus, g: PauliOp, h: PauliOp) -> PauliOp {
    PauliOp {
        a: symplectic::form(m, g.vector(), h.vector()),
        b: 0,
        c: 0,
    }
}

pub fn commutes(m: &Modulus, g: PauliOp, h: PauliOp) -> bool {
    symplectic::form(m, g.vector(), h.vector()) == 0
}

/// Number of `h ∈ G` commuting with `g`: `d·|(b,c)^⊥| = d² ∏ p_k^{δ_k}`.
pub fn commuting_count(m: &Modulus, g: PauliOp) -> Result<u128> {
    (m.d() as u128)
        .checked_mul(symplectic::perp_cardinality(m, g.vector()))
        .ok_or(Error::Overflow(m.d()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerEntry {
    pub vectors: u128,
    pub operators: u128,
}

/// Vectors of `Z_d²` (and operators of `G`) grouped by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerTable {
    pub entries: BTreeMap<Degree, LayerEntry>,
}

impl LayerTable {
    pub fn total_vectors(&self) -> u128 {
        self.entries.values().map(|e| e.vectors).sum()
    }

    pub fn total_operators(&self) -> u128 {
        self.entries.values().map(|e| e.operators).sum()
    }

    pub fn get(&self, degree: &[u32]) -> Option<&LayerEntry> {
        self.entries.get(&Degree(degree.to_vec()))
    }
}

/// Number of vectors of `Z_{p^ε}²` of degree exactly `δ`:
/// `p^{2(ε−δ)} − p^{2(ε−δ−1)}` for `δ < ε`, and 1 for `δ = ε`.
fn component_layer_count(p: u128, eps: u32, delta: u32) -> u128 {
    if delta == eps {
        1
    } else {
        p.pow(2 * (eps - delta)) - p.pow(2 * (eps - delta - 1))
    }
}

pub fn layer_table(m: &Modulus) -> Result<LayerTable> {
    let d = m.d() as u128;
    let mut entries = BTreeMap::new();
    let mut deg = vec![0u32; m.rank()];
    loop {
        let vectors: u128 = m
            .factors()
            .iter()
            .zip(&deg)
            .map(|(f, &delta)| component_layer_count(f.p as u128, f.exponent, delta))
            .product();
        let operators = vectors.checked_mul(d).ok_or(Error::Overflow(m.d()))?;
        entries.insert(Degree(deg.clone()), LayerEntry { vectors, operators });

        let mut k = 0;
        while k < deg.len() {
            deg[k] += 1;
            if deg[k] <= m.factors()[k].exponent {
                break;
            }
            deg[k] = 0;
            k += 1;
        }
        if k == deg.len() {
            break;
        }
    }
    Ok(LayerTable { entries })
}

/// For squarefree `d` with `r > 1`, a non-admissible degree `δ ∈ {0,1}^r`
/// is read as homogeneous coordinates of a point of `PG(r−1, 2)`.
pub fn layer_pg_label(degree: &Degree, m: &Modulus) -> Option<Vec<u8>> {
    if !m.is_squarefree() || m.rank() < 2 || degree.is_zero() {
        return None;
    }
    if degree.0.len() != m.rank() || degree.0.iter().any(|&x| x > 1) {
        return None;
    }
    Some(degree.0.iter().map(|&x| x as u8).collect())
}

/// Largest `d` accepted by [`maximal_commuting_sets`].
pub const MAXIMAL_SET_MODULUS_CAP: u64 = 64;
/// Default cap on the number of maximal sets reported.
pub const MAXIMAL_SET_COUNT_CAP: usize = 1_000_000;

/// A maximal set of pairwise perpendicular vectors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MaximalSet {
    pub vectors: Vec<Vec2>,
    pub free_cyclic: bool,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(x, y)| x & y).collect())
    }
    fn and_count(&self, other: &Bits) -> u32 {
        self.0.iter().zip(&other.0).map(|(x, y)| (x & y).count_ones()).sum()
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + t)
            })
        })
    }
}

struct CliqueSearch<'a> {
    adj: &'a [Bits],
    found: Vec<Vec<usize>>,
    cap: usize,
    overflow: bool,
}

impl CliqueSearch<'_> {
    // Bron–Kerbosch with Tomita pivoting.
    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bits, mut x: Bits) {
        if self.overflow {
            return;
        }
        if p.is_empty() {
            if x.is_empty() {
                if self.found.len() == self.cap {
                    self.overflow = true;
                    return;
                }
                self.found.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| (p.and_count(&self.adj[u]), std::cmp::Reverse(u)))
            .expect("p is non-empty");
        let candidates: Vec<usize> = p.iter().filter(|&v| !has(&self.adj[pivot], v)).collect();
        for v in candidates {
            r.push(v);
            self.expand(r, p.and(&self.adj[v]), x.and(&self.adj[v]));
            r.pop();
            p.clear(v);
            x.set(v);
        }
    }
}

fn has(b: &Bits, i: usize) -> bool {
    b.0[i / 64] >> (i % 64) & 1 == 1
}

pub fn maximal_commuting_sets(m: &Modulus) -> Result<Vec<MaximalSet>> {
    maximal_commuting_sets_within(m, MAXIMAL_SET_COUNT_CAP)
}

/// All maximal sets of pairwise perpendicular vectors of `Z_d²`, i.e. the
/// maximal cliques of the perpendicularity graph, sorted lexicographically.
/// Each set is flagged when it is a free cyclic submodule.
pub fn maximal_commuting_sets_within(m: &Modulus, cap: usize) -> Result<Vec<MaximalSet>> {
    let d = m.d();
    if d > MAXIMAL_SET_MODULUS_CAP {
        return Err(Error::BudgetExceeded {
            what: "maximal commuting set search (d)",
            required: d as u128,
            cap: MAXIMAL_SET_MODULUS_CAP as u128,
        });
    }
    let n = (d * d) as usize;
    let vecs: Vec<Vec2> = (0..n).map(|i| Vec2::from_index(i, d)).collect();
    // A clique is a set of mutually adjacent vertices; exclude self-loops.
    let adj: Vec<Bits> = vecs
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut row = Bits::empty(n);
            for (j, &w) in vecs.iter().enumerate() {
                if i != j && symplectic::form(m, v, w) == 0 {
                    row.set(j);
                }
            }
            row
        })
        .collect();

    let mut search = CliqueSearch {
        adj: &adj,
        found: Vec::new(),
        cap,
        overflow: false,
    };
    search.expand(&mut Vec::new(), Bits::full(n), Bits::empty(n));
    if search.overflow {
        return Err(Error::BudgetExceeded {
            what: "maximal commuting set search (sets)",
            required: cap as u128 + 1,
            cap: cap as u128,
        });
    }

    let mut sets: Vec<MaximalSet> = search
        .found
        .into_iter()
        .map(|clique| {
            let mut vectors: Vec<Vec2> = clique.into_iter().map(|i| vecs[i]).collect();
            vectors.sort_unstable();
            let free_cyclic = is_free_cyclic(m, &vectors);
            MaximalSet {
                vectors,
                free_cyclic,
            }
        })
        .collect();
    sets.sort_unstable();
    Ok(sets)
}

/// `set` (sorted) equals `Z_d·v` for some admissible `v`.
pub fn is_free_cyclic(m: &Modulus, set: &[Vec2]) -> bool {
    if set.len() as u64 != m.d() {
        return false;
    }
    let Some(&g) = set.iter().find(|&&v| symplectic::is_admissible(m, v)) else {
        return false;
    };
    let mut orbit: Vec<Vec2> = (0..m.d()).map(|u| g.scale(u, m)).collect();
    orbit.sort_unstable();
    orbit == set
}
