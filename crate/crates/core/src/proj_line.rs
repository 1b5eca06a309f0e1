//! The projective line `P₁(Z_d)`: its points are the free cyclic submodules
//! `Z_d·(b, c)` of `Z_d²` with `(b, c)` admissible.
//!
//! A point is identified by a canonical generator. In each component
//! `Z_{p^ε}` the generator is either `(1, y)` with `y` arbitrary, or `(x, 1)`
//! with `x ∈ p·Z_{p^ε}`; the general generator is the CRT gluing of these, so
//! `P₁(Z_d)` is the product of the component lines.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{self, CrtTuple, Modulus};
use crate::symplectic::{self, Vec2};

/// Default cap on the number of points a catalog may hold.
pub const POINT_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    generator: Vec2,
}

impl Point {
    /// The point `Z_d·v` for an admissible `v`, with its generator normalized.
    pub fn through(m: &Modulus, v: Vec2) -> Result<Self> {
        let mut b = Vec::with_capacity(m.rank());
        let mut c = Vec::with_capacity(m.rank());
        for (k, f) in m.factors().iter().enumerate() {
            let q = f.order();
            let (vb, vc) = v.component(k, m);
            if vb % f.p != 0 {
                let inv = ring::mod_inverse(vb, q).expect("unit");
                b.push(1 % q);
                c.push(ring::mul_mod(vc, inv, q));
            } else if vc % f.p != 0 {
                let inv = ring::mod_inverse(vc, q).expect("unit");
                b.push(ring::mul_mod(vb, inv, q));
                c.push(1 % q);
            } else {
                return Err(Error::NotAdmissible {
                    b: v.b,
                    c: v.c,
                    d: m.d(),
                });
            }
        }
        Ok(Point {
            generator: Vec2 {
                b: ring::crt_combine(&CrtTuple(b), m),
                c: ring::crt_combine(&CrtTuple(c), m),
            },
        })
    }

    pub fn generator(&self) -> Vec2 {
        self.generator
    }

    /// The `d` vectors `u·g`, `u = 0..d`, in that order.
    pub fn vectors<'a>(&self, m: &'a Modulus) -> impl Iterator<Item = Vec2> + 'a {
        let g = self.generator;
        (0..m.d()).map(move |u| g.scale(u, m))
    }

    /// Membership solved per component: `w ∈ Z(1,y)` iff `w_c = w_b·y`,
    /// and `w ∈ Z(x,1)` iff `w_b = w_c·x`.
    pub fn contains(&self, m: &Modulus, w: Vec2) -> bool {
        m.factors().iter().enumerate().all(|(k, f)| {
            let q = f.order();
            let (gb, gc) = self.generator.component(k, m);
            let (wb, wc) = w.component(k, m);
            if gb % f.p != 0 {
                // gb == 1 here
                wc == ring::mul_mod(wb, gc, q)
            } else {
                wb == ring::mul_mod(wc, gb, q)
            }
        })
    }
}

/// `|P₁(Z_d)| = ∏ (p_k^{ε_k} + p_k^{ε_k − 1})`.
pub fn line_cardinality(m: &Modulus) -> u128 {
    m.factors()
        .iter()
        .map(|f| {
            let q = f.order() as u128;
            q + q / f.p as u128
        })
        .product()
}

/// Canonical generators of the component line `P₁(Z_{p^ε})`.
fn component_generators(f: ring::PrimePower) -> Vec<(u64, u64)> {
    let q = f.order();
    let first = (0..q).map(|y| (1 % q, y));
    let second = (0..q).step_by(f.p as usize).map(|x| (x, 1 % q));
    first.chain(second).collect()
}

/// Every point of `P₁(Z_d)`, ordered by generator.
#[derive(Debug, Clone)]
pub struct LineCatalog {
    modulus: Modulus,
    points: Vec<Point>,
}

impl LineCatalog {
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn enumerate_points(m: &Modulus) -> Result<LineCatalog> {
    enumerate_points_within(m, POINT_ENUMERATION_CAP)
}

pub fn enumerate_points_within(m: &Modulus, cap: u128) -> Result<LineCatalog> {
    let required = line_cardinality(m);
    if required > cap {
        return Err(Error::BudgetExceeded {
            what: "projective line enumeration",
            required,
            cap,
        });
    }
    let per_component: Vec<_> = m.factors().iter().map(|&f| component_generators(f)).collect();
    let mut points = Vec::with_capacity(required as usize);
    // odometer over the component generator lists
    let mut idx = vec![0usize; m.rank()];
    loop {
        let (b, c): (Vec<u64>, Vec<u64>) = idx
            .iter()
            .zip(&per_component)
            .map(|(&i, gens)| gens[i])
            .unzip();
        points.push(Point {
            generator: Vec2 {
                b: ring::crt_combine(&CrtTuple(b), m),
                c: ring::crt_combine(&CrtTuple(c), m),
            },
        });
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < per_component[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    points.sort_unstable();
    Ok(LineCatalog {
        modulus: m.clone(),
        points,
    })
}

/// `Z_d·v`.
pub fn cyclic_submodule(m: &Modulus, v: Vec2) -> BTreeSet<Vec2> {
    (0..m.d()).map(|u| v.scale(u, m)).collect()
}

pub fn points_through(v: Vec2, cat: &LineCatalog) -> Vec<Point> {
    cat.points
        .iter()
        .copied()
        .filter(|pt| pt.contains(&cat.modulus, v))
        .collect()
}

/// Indices `k` whose component of `v` vanishes.
fn zero_components(m: &Modulus, v: Vec2) -> Vec<bool> {
    (0..m.rank())
        .map(|k| v.component(k, m) == (0, 0))
        .collect()
}

/// Closed-form number of points containing `v`:
/// `∏_{j∉K} p_j^{δ_j} · ∏_{k∈K} (p_k^{ε_k} + p_k^{ε_k−1})`.
pub fn count_points_through(m: &Modulus, v: Vec2) -> u128 {
    let deg = symplectic::degree(m, v);
    m.factors()
        .iter()
        .zip(deg.as_slice())
        .zip(zero_components(m, v))
        .map(|((f, &delta), zero)| {
            let p = f.p as u128;
            if zero {
                p.pow(f.exponent) + p.pow(f.exponent - 1)
            } else {
                p.pow(delta)
            }
        })
        .product()
}

/// `U(v)`: the union of all points containing `v`.
pub fn union_u(v: Vec2, cat: &LineCatalog) -> BTreeSet<Vec2> {
    let m = &cat.modulus;
    points_through(v, cat)
        .iter()
        .flat_map(|pt| pt.vectors(m))
        .collect()
}

/// Closed-form `|U(v)|` for `v ≠ 0`.
pub fn u_size(m: &Modulus, v: Vec2) -> Result<u128> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let deg = symplectic::degree(m, v);
    let size = m
        .factors()
        .iter()
        .zip(deg.as_slice())
        .zip(zero_components(m, v))
        .map(|((f, &delta), zero)| {
            let p = f.p as u128;
            let eps = f.exponent;
            if zero {
                return p.pow(2 * eps);
            }
            let layered: u128 = (0..delta)
                .map(|s| (p.pow(eps - s) - p.pow(eps - s - 1)) * p.pow(delta - s))
                .sum();
            layered + p.pow(eps - delta)
        })
        .product();
    Ok(size)
}

/// `U(v) = v^⊥` holds exactly when every component of `v` is either zero or
/// admissible, i.e. `δ_k ∈ {0, ε_k}` for all `k`. For prime-power `d` this is
/// "zero or admissible"; for squarefree `d` it holds for every vector.
pub fn u_equals_perp(m: &Modulus, v: Vec2) -> bool {
    let deg = symplectic::degree(m, v);
    m.factors()
        .iter()
        .zip(deg.as_slice())
        .all(|(f, &delta)| delta == 0 || delta == f.exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::perp_set;

    fn md(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn v(b: u64, c: u64) -> Vec2 {
        Vec2 { b, c }
    }

    fn gens(cat: &LineCatalog) -> Vec<Vec2> {
        cat.points().iter().map(|p| p.generator()).collect()
    }

    #[test]
    fn enumerate_small_lines() {
        let cat = enumerate_points(&md(4)).unwrap();
        assert_eq!(
            gens(&cat),
            vec![v(0, 1), v(1, 0), v(1, 1), v(1, 2), v(1, 3), v(2, 1)]
        );
        assert_eq!(gens(&enumerate_points(&md(2)).unwrap()), vec![v(0, 1), v(1, 0), v(1, 1)]);
        assert_eq!(enumerate_points(&md(12)).unwrap().len(), 24);
    }

    #[test]
    fn d12_points_match_dedup_of_admissible_orbits() {
        let m = md(12);
        let orbits: BTreeSet<BTreeSet<Vec2>> = symplectic::all_vectors(&m)
            .filter(|&x| symplectic::is_admissible(&m, x))
            .map(|x| cyclic_submodule(&m, x))
            .collect();
        let cat = enumerate_points(&m).unwrap();
        let from_catalog: BTreeSet<BTreeSet<Vec2>> = cat
            .points()
            .iter()
            .map(|p| p.vectors(&m).collect())
            .collect();
        assert_eq!(orbits, from_catalog);
    }

    #[test]
    fn budget() {
        let m = md(12);
        let err = enumerate_points_within(&m, 23).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                what: "projective line enumeration",
                required: 24,
                cap: 23
            }
        );
    }

    #[test]
    fn cyclic_submodule_examples() {
        let m = md(4);
        assert_eq!(
            cyclic_submodule(&m, v(1, 2)),
            BTreeSet::from([v(0, 0), v(1, 2), v(2, 0), v(3, 2)])
        );
        assert_eq!(cyclic_submodule(&m, v(0, 0)), BTreeSet::from([v(0, 0)]));
        assert_eq!(cyclic_submodule(&m, v(2, 0)), BTreeSet::from([v(0, 0), v(2, 0)]));
    }

    #[test]
    fn orbit_size_divides_d() {
        for d in [6, 8, 12, 18] {
            let m = md(d);
            for x in symplectic::all_vectors(&m) {
                let n = cyclic_submodule(&m, x).len() as u64;
                assert_eq!(d % n, 0);
                assert_eq!(n == d, symplectic::is_admissible(&m, x));
            }
        }
    }

    #[test]
    fn through_rejects_non_admissible() {
        assert!(matches!(
            Point::through(&md(4), v(2, 0)),
            Err(Error::NotAdmissible { .. })
        ));
        assert_eq!(Point::through(&md(4), v(3, 2)).unwrap().generator(), v(1, 2));
        assert_eq!(Point::through(&md(4), v(2, 3)).unwrap().generator(), v(2, 1));
    }

    #[test]
    fn points_through_examples() {
        let m = md(4);
        let cat = enumerate_points(&m).unwrap();
        let through: Vec<_> = points_through(v(2, 0), &cat).iter().map(|p| p.generator()).collect();
        assert_eq!(through, vec![v(1, 0), v(1, 2)]);
        assert_eq!(points_through(Vec2::ZERO, &cat).len(), 6);

        let twelve = md(12);
        let cat12 = enumerate_points(&twelve).unwrap();
        assert_eq!(points_through(v(4, 6), &cat12).len(), 2);
    }

    #[test]
    fn count_points_through_examples() {
        assert_eq!(count_points_through(&md(4), v(2, 0)), 2);
        assert_eq!(count_points_through(&md(12), Vec2::ZERO), 24);
        // brute force over materialized points gives 8 for (6,0) in Z_12²
        let m = md(12);
        let cat = enumerate_points(&m).unwrap();
        let brute = cat
            .points()
            .iter()
            .filter(|p| p.vectors(&m).any(|w| w == v(6, 0)))
            .count();
        assert_eq!(brute, 8);
        assert_eq!(count_points_through(&m, v(6, 0)), 8);
    }

    #[test]
    fn union_examples() {
        let m = md(4);
        let cat = enumerate_points(&m).unwrap();
        let u = union_u(v(2, 0), &cat);
        assert_eq!(
            u,
            BTreeSet::from([v(0, 0), v(1, 0), v(2, 0), v(3, 0), v(1, 2), v(3, 2)])
        );
        assert!(perp_set(&m, v(2, 0)).unwrap().contains(&v(2, 2)));
        assert!(!u.contains(&v(2, 2)));
        assert_eq!(union_u(v(1, 0), &cat).len(), 4);
    }

    #[test]
    fn u_size_examples() {
        assert_eq!(u_size(&md(4), v(2, 0)), Ok(6));
        for q in [2, 3, 4, 8, 9, 25] {
            assert_eq!(u_size(&md(q), v(1, 0)), Ok(q as u128));
        }
        // (6,3) over Z_12: brute-force union has 36 vectors
        let m = md(12);
        let cat = enumerate_points(&m).unwrap();
        assert_eq!(union_u(v(6, 3), &cat).len(), 36);
        assert_eq!(u_size(&m, v(6, 3)), Ok(36));
        assert_eq!(u_size(&m, Vec2::ZERO), Err(Error::ZeroVector));
    }

    #[test]
    fn u_equals_perp_examples() {
        assert!(!u_equals_perp(&md(4), v(2, 0)));
        assert!(u_equals_perp(&md(12), Vec2::ZERO));
        assert!(u_equals_perp(&md(12), v(1, 7)));
        // mixed: zero mod 2, admissible mod 3
        assert!(u_equals_perp(&md(6), v(0, 2)));
        let m = md(6);
        let cat = enumerate_points(&m).unwrap();
        assert_eq!(union_u(v(0, 2), &cat).len(), perp_set(&m, v(0, 2)).unwrap().len());
        // zero mod 3, degree 1 < 2 mod 4
        assert!(!u_equals_perp(&md(12), v(6, 0)));
    }

    #[test]
    fn line_cardinality_closed_form() {
        assert_eq!(line_cardinality(&md(2)), 3);
        assert_eq!(line_cardinality(&md(4)), 6);
        assert_eq!(line_cardinality(&md(12)), 24);
        assert_eq!(line_cardinality(&md(60)), 144);
    }
}
