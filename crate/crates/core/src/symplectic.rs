//! The module `Z_d²`: the alternating form, vector degrees, perp-sets and the
//! `GL₂(Z_d)` action. Matrices act on row vectors from the right.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{self, Modulus};

/// Largest `d` for which a perp-set is materialized (`d² ≤ 2³²`).
pub const PERP_ENUMERATION_CAP: u64 = 1 << 16;

/// A vector `(b, c)` of `Z_d²`. Coordinates are kept reduced modulo `d`;
/// the modulus itself is passed alongside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub b: u64,
    pub c: u64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { b: 0, c: 0 };

    pub fn new(b: u64, c: u64, m: &Modulus) -> Self {
        Vec2 {
            b: m.reduce(b),
            c: m.reduce(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.b == 0 && self.c == 0
    }

    pub fn scale(self, u: u64, m: &Modulus) -> Self {
        Vec2 {
            b: m.mul(u, self.b),
            c: m.mul(u, self.c),
        }
    }

    pub fn add(self, other: Vec2, m: &Modulus) -> Self {
        Vec2 {
            b: m.add(self.b, other.b),
            c: m.add(self.c, other.c),
        }
    }

    /// Component in `Z_{d_k}²`.
    pub fn component(self, k: usize, m: &Modulus) -> (u64, u64) {
        let q = m.factors()[k].order();
        (self.b % q, self.c % q)
    }

    /// Dense index `b·d + c`, used by bitmaps over `Z_d²`.
    #[inline]
    pub(crate) fn index(self, d: u64) -> usize {
        (self.b * d + self.c) as usize
    }

    #[inline]
    pub(crate) fn from_index(i: usize, d: u64) -> Self {
        Vec2 {
            b: i as u64 / d,
            c: i as u64 % d,
        }
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.c)
    }
}

/// All `d²` vectors of `Z_d²` in lexicographic order.
pub fn all_vectors(m: &Modulus) -> impl Iterator<Item = Vec2> + '_ {
    let d = m.d();
    (0..d).flat_map(move |b| (0..d).map(move |c| Vec2 { b, c }))
}

/// Degree tuple `(δ_1, …, δ_r)`, components in ascending-prime order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree(pub Vec<u32>);

impl Degree {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `Δ = δ_1 + … + δ_r`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The all-`ε` tuple, carried only by the zero vector.
    pub fn top(m: &Modulus) -> Self {
        Degree(m.factors().iter().map(|f| f.exponent).collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A 2×2 matrix over `Z_d`, acting on row vectors as `(b, c)·A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: u64,
    pub a12: u64,
    pub a21: u64,
    pub a22: u64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a11: 1,
        a12: 0,
        a21: 0,
        a22: 1,
    };

    pub fn new(a11: u64, a12: u64, a21: u64, a22: u64, m: &Modulus) -> Self {
        Mat2 {
            a11: m.reduce(a11),
            a12: m.reduce(a12),
            a21: m.reduce(a21),
            a22: m.reduce(a22),
        }
    }

    pub fn det(&self, m: &Modulus) -> u64 {
        m.sub(m.mul(self.a11, self.a22), m.mul(self.a12, self.a21))
    }

    /// Membership in `GL₂(Z_d)`.
    pub fn is_invertible(&self, m: &Modulus) -> bool {
        ring::is_unit(self.det(m), m)
    }

    pub fn mul(&self, rhs: &Mat2, m: &Modulus) -> Mat2 {
        let dot = |x1, y1, x2, y2| m.add(m.mul(x1, y1), m.mul(x2, y2));
        Mat2 {
            a11: dot(self.a11, rhs.a11, self.a12, rhs.a21),
            a12: dot(self.a11, rhs.a12, self.a12, rhs.a22),
            a21: dot(self.a21, rhs.a11, self.a22, rhs.a21),
            a22: dot(self.a21, rhs.a12, self.a22, rhs.a22),
        }
    }
}

/// `[(b,c), (b',c')] = c·b' − c'·b`.
pub fn form(m: &Modulus, v: Vec2, w: Vec2) -> u64 {
    m.sub(m.mul(v.c, w.b), m.mul(w.c, v.b))
}

pub fn degree(m: &Modulus, v: Vec2) -> Degree {
    Degree(
        m.factors()
            .iter()
            .map(|f| f.valuation(v.b).min(f.valuation(v.c)))
            .collect(),
    )
}

/// Degree zero; equivalently `u ↦ (ub, uc)` is injective.
pub fn is_admissible(m: &Modulus, v: Vec2) -> bool {
    m.factors()
        .iter()
        .all(|f| f.valuation(v.b) == 0 || f.valuation(v.c) == 0)
}

/// `(b, c)·A`.
pub fn apply(m: &Modulus, v: Vec2, a: &Mat2) -> Vec2 {
    Vec2 {
        b: m.add(m.mul(v.b, a.a11), m.mul(v.c, a.a21)),
        c: m.add(m.mul(v.b, a.a12), m.mul(v.c, a.a22)),
    }
}

/// Returns `M ∈ GL₂(Z_d)` and `(q, 0)` with `v·M = (q, 0)` and
/// `q ≡ p_k^{δ_k}` in every component.
///
/// Per component, with `b = v·p^β` and `c = w·p^γ`:
/// for `β ≤ γ`, `M = [[v⁻¹, −w·p^{γ−β}], [0, v]]`;
/// for `γ < β`, `M = [[0, −w], [w⁻¹, v·p^{β−γ}]]`.
/// Both have determinant 1. Components are glued by CRT.
pub fn canonical_form(m: &Modulus, v: Vec2) -> (Mat2, Vec2) {
    let r = m.rank();
    let mut entries = [vec![0u64; r], vec![0u64; r], vec![0u64; r], vec![0u64; r]];
    let mut q = vec![0u64; r];
    for (k, f) in m.factors().iter().enumerate() {
        let order = f.order();
        let (bk, ck) = v.component(k, m);
        let rb = ring::power_rep(bk, *f);
        let rc = ring::power_rep(ck, *f);
        let inv = |x| ring::mod_inverse(x, order).expect("power_rep unit");
        let neg = |x: u64| (order - x % order) % order;
        let mul = |x, y| ring::mul_mod(x, y, order);
        let block = if rb.exponent <= rc.exponent {
            let shift = f.pow(rc.exponent - rb.exponent);
            [inv(rb.unit), neg(mul(rc.unit, shift)), 0, rb.unit % order]
        } else {
            let shift = f.pow(rb.exponent - rc.exponent);
            [0, neg(rc.unit), inv(rc.unit), mul(rb.unit, shift)]
        };
        for (slot, x) in entries.iter_mut().zip(block) {
            slot[k] = x;
        }
        q[k] = f.pow(rb.exponent.min(rc.exponent)) % order;
    }
    let glue = |xs: Vec<u64>| ring::crt_combine(&ring::CrtTuple(xs), m);
    let [e11, e12, e21, e22] = entries;
    let mat = Mat2 {
        a11: glue(e11),
        a12: glue(e12),
        a21: glue(e21),
        a22: glue(e22),
    };
    (mat, Vec2 { b: glue(q), c: 0 })
}

fn check_perp_cap(m: &Modulus) -> Result<()> {
    if m.d() > PERP_ENUMERATION_CAP {
        return Err(Error::BudgetExceeded {
            what: "perp-set enumeration",
            required: m.d() as u128 * m.d() as u128,
            cap: PERP_ENUMERATION_CAP as u128 * PERP_ENUMERATION_CAP as u128,
        });
    }
    Ok(())
}

/// `v^⊥` by scanning all of `Z_d²`, in lexicographic order.
pub fn perp_set(m: &Modulus, v: Vec2) -> Result<Vec<Vec2>> {
    check_perp_cap(m)?;
    Ok(all_vectors(m).filter(|&w| form(m, v, w) == 0).collect())
}

/// `|v^⊥| = d · ∏ p_k^{δ_k}`.
pub fn perp_cardinality(m: &Modulus, v: Vec2) -> u128 {
    let deg = degree(m, v);
    m.factors()
        .iter()
        .zip(deg.as_slice())
        .map(|(f, &delta)| (f.p as u128).pow(f.exponent + delta))
        .product()
}

/// The `Z_d`-submodule of `Z_d²` generated by `gens`, sorted.
pub fn generated_submodule<I>(m: &Modulus, gens: I) -> Result<Vec<Vec2>>
where
    I: IntoIterator<Item = Vec2>,
{
    check_perp_cap(m)?;
    let d = m.d();
    let mut seen = vec![false; (d * d) as usize];
    let mut members = vec![Vec2::ZERO];
    seen[0] = true;
    for g in gens {
        if seen[g.index(d)] {
            continue;
        }
        // members is a subgroup; adjoin the cosets members + u·g until u·g falls back in.
        let base = members.len();
        let mut shift = g;
        while !seen[shift.index(d)] {
            for i in 0..base {
                let x = members[i].add(shift, m);
                seen[x.index(d)] = true;
                members.push(x);
            }
            shift = shift.add(g, m);
        }
    }
    members.sort_unstable();
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn md(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn v(b: u64, c: u64) -> Vec2 {
        Vec2 { b, c }
    }

    #[test]
    fn form_examples() {
        let m = md(4);
        assert_eq!(form(&m, v(1, 0), v(0, 1)), 3);
        assert_eq!(form(&m, v(2, 0), v(1, 2)), 0);
        for d in [2, 7, 12] {
            let m = md(d);
            for x in all_vectors(&m) {
                assert_eq!(form(&m, x, x), 0);
            }
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&md(4), v(2, 0)), Degree(vec![1]));
        assert_eq!(degree(&md(12), v(0, 0)), Degree(vec![2, 1]));
        assert_eq!(degree(&md(12), v(4, 6)), Degree(vec![1, 0]));
    }

    #[test]
    fn admissibility_examples() {
        let twelve = md(12);
        assert!(is_admissible(&twelve, v(1, 5)));
        assert!(!is_admissible(&md(4), v(2, 0)));
        assert!(is_admissible(&twelve, v(3, 4)));
        // injectivity of u -> (3u, 4u) mod 12
        let images: BTreeSet<_> = (0..12).map(|u| v(3, 4).scale(u, &twelve)).collect();
        assert_eq!(images.len(), 12);
    }

    #[test]
    fn admissibility_matches_injectivity() {
        for d in [2, 4, 6, 8, 9, 12, 18, 30] {
            let m = md(d);
            for x in all_vectors(&m) {
                let images: BTreeSet<_> = (0..d).map(|u| x.scale(u, &m)).collect();
                assert_eq!(is_admissible(&m, x), images.len() as u64 == d, "d={d} {x}");
                assert_eq!(is_admissible(&m, x), degree(&m, x).is_zero());
            }
        }
    }

    #[test]
    fn apply_examples() {
        let m = md(4);
        assert_eq!(apply(&m, v(3, 1), &Mat2::IDENTITY), v(3, 1));
        let scalar = Mat2::new(3, 0, 0, 3, &m);
        assert!(scalar.is_invertible(&m));
        assert_eq!(apply(&m, v(2, 0), &scalar), v(2, 0));
        assert_eq!(apply(&m, v(1, 0), &Mat2::new(0, 3, 1, 0, &m)), v(0, 3));
    }

    #[test]
    fn canonical_form_examples() {
        let m = md(4);
        let (mat, target) = canonical_form(&m, v(2, 0));
        assert_eq!(target, v(2, 0));
        assert_eq!(apply(&m, v(2, 0), &mat), v(2, 0));

        let nine = md(9);
        let (mat, target) = canonical_form(&nine, v(0, 3));
        assert_eq!(target, v(3, 0));
        assert_eq!(apply(&nine, v(0, 3), &mat), v(3, 0));
        assert!(mat.is_invertible(&nine));

        for d in [5, 12, 36] {
            let m = md(d);
            for y in 0..d {
                let (mat, target) = canonical_form(&m, v(1, y));
                assert_eq!(target, v(1, 0));
                assert_eq!(apply(&m, v(1, y), &mat), v(1, 0));
            }
        }
    }

    #[test]
    fn perp_examples() {
        let m = md(4);
        let p = perp_set(&m, v(2, 0)).unwrap();
        assert_eq!(p.len(), 8);
        assert!(p.iter().all(|w| w.c == 0 || w.c == 2));
        assert_eq!(perp_set(&m, Vec2::ZERO).unwrap().len(), 16);
        let five = md(5);
        let expected: Vec<_> = (0..5).map(|x| v(x, 0)).collect();
        assert_eq!(perp_set(&five, v(1, 0)).unwrap(), expected);
    }

    #[test]
    fn perp_cardinality_examples() {
        assert_eq!(perp_cardinality(&md(4), v(2, 0)), 8);
        assert_eq!(perp_cardinality(&md(12), v(0, 0)), 144);
        assert_eq!(perp_cardinality(&md(12), v(4, 6)), 24);
        assert_eq!(perp_set(&md(12), v(4, 6)).unwrap().len(), 24);
    }

    #[test]
    fn perp_cap() {
        let m = md(PERP_ENUMERATION_CAP + 1);
        assert!(matches!(perp_set(&m, v(1, 0)), Err(Error::BudgetExceeded { .. })));
        // closed form still available
        assert_eq!(perp_cardinality(&m, v(1, 0)), m.d() as u128);
    }

    #[test]
    fn generated_submodule_of_single_vector_is_orbit() {
        let m = md(12);
        let span = generated_submodule(&m, [v(4, 6)]).unwrap();
        let orbit: BTreeSet<_> = (0..12).map(|u| v(4, 6).scale(u, &m)).collect();
        assert_eq!(span, orbit.into_iter().collect::<Vec<_>>());
        assert_eq!(generated_submodule(&m, [v(1, 0), v(0, 1)]).unwrap().len(), 144);
        assert_eq!(generated_submodule(&m, []).unwrap(), vec![Vec2::ZERO]);
    }
}
