//! Arithmetic in `Z_d` and in its prime-power components `Z_{p^ε}`.
//!
//! Residues are plain `u64` values normalized to `0..d`. Products go through
//! `u128`, so every `d < 2^63` is safe. Exponents (`α`, `ε`, `δ`) are ordinary
//! integers and are never reduced modulo `d`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by [`Modulus::new`].
pub const MAX_MODULUS: u64 = (1 << 63) - 1;

/// One factor `p^ε` of the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub exponent: u32,
}

impl PrimePower {
    /// `p^ε`, the order of the component ring.
    pub fn order(&self) -> u64 {
        self.p.pow(self.exponent)
    }

    /// `p^k` for `k <= ε`.
    pub fn pow(&self, k: u32) -> u64 {
        debug_assert!(k <= self.exponent);
        self.p.pow(k)
    }

    /// Least `κ` with `x ∈ Z·p^κ` in `Z_{p^ε}`; `ε` for `x ≡ 0`.
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = x % self.order();
        if x == 0 {
            return self.exponent;
        }
        let mut k = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            k += 1;
        }
        k
    }
}

/// The modulus `d` together with its factorization `d = ∏ p_k^{ε_k}`,
/// primes in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    d: u64,
    factors: Vec<PrimePower>,
    // CRT idempotents: e_k ≡ 1 (mod d_k), e_k ≡ 0 (mod d_j) for j != k.
    idempotents: Vec<u64>,
}

impl Modulus {
    pub fn new(d: u64) -> Result<Self> {
        let factors = factorize(d)?;
        let idempotents = factors
            .iter()
            .map(|f| {
                let dk = f.order();
                let rest = d / dk;
                let inv = mod_inverse(rest % dk, dk).expect("coprime cofactors");
                mul_mod(rest, inv, d)
            })
            .collect();
        Ok(Self {
            d,
            factors,
            idempotents,
        })
    }

    #[inline]
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Number of prime-power components `r`.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// All `ε_k = 1`.
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.exponent == 1)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.d
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        ((x as u128 + y as u128) % self.d as u128) as u64
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        let (x, y) = (x % self.d, y % self.d);
        if x >= y {
            x - y
        } else {
            self.d - (y - x)
        }
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        self.sub(0, x)
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        mul_mod(x, y, self.d)
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} =", self.d)?;
        for (i, pp) in self.factors.iter().enumerate() {
            let sep = if i == 0 { " " } else { " · " };
            if pp.exponent == 1 {
                write!(f, "{sep}{}", pp.p)?;
            } else {
                write!(f, "{sep}{}^{}", pp.p, pp.exponent)?;
            }
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn mul_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 * y as u128) % m as u128) as u64
}

/// Extended Euclid over `i128`. `None` when `gcd(a, m) != 1`.
pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Trial-division factorization, primes ascending.
pub fn factorize(d: u64) -> Result<Vec<PrimePower>> {
    if !(2..=MAX_MODULUS).contains(&d) {
        return Err(Error::InvalidModulus(d));
    }
    let mut n = d;
    let mut out = Vec::new();
    let mut push = |n: &mut u64, p: u64| {
        let mut exponent = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            exponent += 1;
        }
        if exponent > 0 {
            out.push(PrimePower { p, exponent });
        }
    };
    push(&mut n, 2);
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        push(&mut n, p);
        p += 2;
    }
    if n > 1 {
        let last = n;
        push(&mut n, last);
    }
    Ok(out)
}

pub fn is_unit(a: u64, m: &Modulus) -> bool {
    gcd(a % m.d(), m.d()) == 1
}

pub fn inverse(a: u64, m: &Modulus) -> Result<u64> {
    mod_inverse(a % m.d(), m.d()).ok_or(Error::NonUnit { a, d: m.d() })
}

/// `a = u·p^α` with `u` a unit of `Z_{p^ε}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerRep {
    pub unit: u64,
    pub exponent: u32,
}

/// Power representation of `a` in `Z_{p^ε}`. Zero maps to `1·p^ε`.
pub fn power_rep(a: u64, pp: PrimePower) -> PowerRep {
    let q = pp.order();
    let a = a % q;
    let exponent = pp.valuation(a);
    if exponent == pp.exponent {
        return PowerRep { unit: 1, exponent };
    }
    PowerRep {
        unit: a / pp.pow(exponent),
        exponent,
    }
}

/// `{x ∈ Z_{p^ε} : p^α x = 0}`, sorted ascending.
pub fn annihilator(alpha: u32, pp: PrimePower) -> Vec<u64> {
    assert!(alpha <= pp.exponent, "alpha exceeds the exponent");
    let step = pp.pow(pp.exponent - alpha);
    (0..pp.pow(alpha)).map(|w| w * step).collect()
}

/// Residues of one `x ∈ Z_d` in each component `Z_{d_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrtTuple(pub Vec<u64>);

pub fn crt_split(x: u64, m: &Modulus) -> CrtTuple {
    CrtTuple(m.factors().iter().map(|f| x % f.order()).collect())
}

pub fn crt_combine(t: &CrtTuple, m: &Modulus) -> u64 {
    assert_eq!(t.0.len(), m.rank(), "tuple length differs from factor count");
    t.0.iter()
        .zip(&m.idempotents)
        .fold(0, |acc, (&x, &e)| m.add(acc, m.mul(x, e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: u64, exponent: u32) -> PrimePower {
        PrimePower { p, exponent }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap(), vec![pp(2, 2), pp(3, 1)]);
        assert_eq!(factorize(7).unwrap(), vec![pp(7, 1)]);
        assert_eq!(factorize(360).unwrap(), vec![pp(2, 3), pp(3, 2), pp(5, 1)]);
        assert_eq!(factorize(MAX_MODULUS).unwrap().iter().map(|f| f.order()).product::<u64>(), MAX_MODULUS);
    }

    #[test]
    fn factorize_rejects_small_and_huge() {
        assert_eq!(factorize(0), Err(Error::InvalidModulus(0)));
        assert_eq!(factorize(1), Err(Error::InvalidModulus(1)));
        assert!(factorize(u64::MAX).is_err());
    }

    #[test]
    fn large_prime_modulus() {
        // 2^61 - 1 is prime.
        let m = Modulus::new((1 << 61) - 1).unwrap();
        assert_eq!(m.rank(), 1);
        let a = 123_456_789_012_345;
        let inv = inverse(a, &m).unwrap();
        assert_eq!(m.mul(a, inv), 1);
    }

    #[test]
    fn units() {
        let four = Modulus::new(4).unwrap();
        assert!(is_unit(3, &four));
        assert!(!is_unit(2, &four));
        assert!(!is_unit(0, &Modulus::new(5).unwrap()));
    }

    #[test]
    fn inverses() {
        assert_eq!(inverse(3, &Modulus::new(4).unwrap()), Ok(3));
        assert_eq!(inverse(5, &Modulus::new(12).unwrap()), Ok(5));
        let m = Modulus::new(360).unwrap();
        assert_eq!(inverse(7, &m), Ok(103));
        assert_eq!(7 * 103 % 360, 1);
        assert_eq!(inverse(6, &m), Err(Error::NonUnit { a: 6, d: 360 }));
    }

    #[test]
    fn power_rep_examples() {
        assert_eq!(power_rep(2, pp(2, 2)), PowerRep { unit: 1, exponent: 1 });
        assert_eq!(power_rep(0, pp(2, 2)), PowerRep { unit: 1, exponent: 2 });
        assert_eq!(power_rep(12, pp(2, 4)), PowerRep { unit: 3, exponent: 2 });
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(annihilator(1, pp(2, 2)), vec![0, 2]);
        assert_eq!(annihilator(0, pp(3, 2)), vec![0]);
        assert_eq!(annihilator(2, pp(2, 2)), vec![0, 1, 2, 3]);
    }

    #[test]
    fn crt_examples() {
        let twelve = Modulus::new(12).unwrap();
        assert_eq!(crt_split(7, &twelve), CrtTuple(vec![3, 1]));
        assert_eq!(crt_split(0, &twelve), CrtTuple(vec![0, 0]));
        assert_eq!(crt_combine(&CrtTuple(vec![3, 1]), &twelve), 7);
        let sixty = Modulus::new(60).unwrap();
        assert_eq!(crt_split(11, &sixty), CrtTuple(vec![3, 2, 1]));
        assert_eq!(crt_combine(&CrtTuple(vec![0, 0, 0]), &sixty), 0);
        assert_eq!(crt_combine(&CrtTuple(vec![1, 1, 1]), &sixty), 1);
    }

    #[test]
    fn crt_round_trip_exhaustive() {
        for d in (2..=10_000u64).step_by(997).chain([9_240, 10_000]) {
            let m = Modulus::new(d).unwrap();
            for x in 0..d {
                assert_eq!(crt_combine(&crt_split(x, &m), &m), x, "d={d} x={x}");
            }
        }
    }

    #[test]
    fn power_rep_exhaustive() {
        for (p, e) in [(2, 12), (3, 7), (5, 5), (7, 4), (61, 2)] {
            let f = pp(p, e);
            for a in 0..f.order() {
                let rep = power_rep(a, f);
                assert_eq!(mul_mod(rep.unit, f.pow(rep.exponent), f.order()), a);
                assert!(!rep.unit.is_multiple_of(p));
                // minimality: a ∉ Z·p^{α+1}
                if rep.exponent < e {
                    assert_ne!(a % f.pow(rep.exponent + 1), 0);
                }
            }
        }
    }

    #[test]
    fn annihilator_exhaustive() {
        for (p, e) in [(2, 6), (3, 4), (5, 3)] {
            let f = pp(p, e);
            for alpha in 0..=e {
                let ann = annihilator(alpha, f);
                assert_eq!(ann.len() as u64, f.pow(alpha));
                let brute: Vec<u64> = (0..f.order())
                    .filter(|&x| mul_mod(f.pow(alpha), x, f.order()) == 0)
                    .collect();
                assert_eq!(ann, brute);
            }
        }
    }

    #[test]
    fn units_are_exactly_non_multiples_of_p() {
        for q in [2u64, 4, 8, 27, 25, 49, 1024, 3125] {
            let m = Modulus::new(q).unwrap();
            let p = m.factors()[0].p;
            for a in 0..q {
                assert_eq!(is_unit(a, &m), a % p != 0, "a={a} q={q}");
            }
        }
    }
}
