//! Exact base scalar rings and their canonical-form arithmetic.
//!
//! Three coefficient rings are supported: the prime fields GF(p), the chain
//! rings Z/p^k, and the rationals. Modular values are stored as canonical
//! representatives in `0..p^k`; rationals are always-reduced arbitrary
//! precision fractions. There is no floating point anywhere.

mod linalg;

pub use linalg::{
    canonical_row_form, canonical_rows, reduce_mod_row_module, row_module_contains,
    solve_linear, LinearSolution, ScalarMatrix,
};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A supported exact coefficient ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ScalarRing {
    /// GF(p), p prime.
    PrimeField { p: u64 },
    /// Z/p^k with k >= 2. `modulus` caches p^k.
    PrimePower { p: u64, k: u32, modulus: u64 },
    /// The rational numbers.
    Rational,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl ScalarRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ScalarRing::PrimeField { p })
    }

    /// Z/p^k. For k = 1 this canonicalizes to the prime field, so ring
    /// equality never depends on which constructor was used.
    pub fn prime_power(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ModulusOverflow { p, k });
        }
        if k == 1 {
            return Ok(ScalarRing::PrimeField { p });
        }
        let mut modulus: u64 = 1;
        for _ in 0..k {
            modulus = modulus
                .checked_mul(p)
                .filter(|m| *m < (1 << 31))
                .ok_or(Error::ModulusOverflow { p, k })?;
        }
        Ok(ScalarRing::PrimePower { p, k, modulus })
    }

    pub fn rationals() -> Self {
        ScalarRing::Rational
    }

    pub fn is_field(&self) -> bool {
        matches!(self, ScalarRing::PrimeField { .. } | ScalarRing::Rational)
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, ScalarRing::Rational)
    }

    /// Number of elements for the finite kinds.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            ScalarRing::PrimeField { p } => Some(*p),
            ScalarRing::PrimePower { modulus, .. } => Some(*modulus),
            ScalarRing::Rational => None,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            ScalarRing::PrimeField { p } => Some(*p),
            ScalarRing::PrimePower { modulus, .. } => Some(*modulus),
            ScalarRing::Rational => None,
        }
    }

    /// The prime underlying a modular ring.
    pub fn prime(&self) -> Option<u64> {
        match self {
            ScalarRing::PrimeField { p } | ScalarRing::PrimePower { p, .. } => Some(*p),
            ScalarRing::Rational => None,
        }
    }

    /// Length of the valuation chain: 1 for fields, k for Z/p^k.
    pub fn chain_length(&self) -> u32 {
        match self {
            ScalarRing::PrimePower { k, .. } => *k,
            _ => 1,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        Scalar::from_i64(*self, v)
    }

    /// Whether scalars of `self` reduce canonically into `target`:
    /// the identity, or Z/p^k onto Z/p^j (j <= k) over the same prime.
    pub fn reduces_to(&self, target: &ScalarRing) -> bool {
        if self == target {
            return true;
        }
        match (self, target) {
            (ScalarRing::PrimePower { p, k, .. }, ScalarRing::PrimePower { p: q, k: j, .. }) => {
                p == q && j <= k
            }
            (ScalarRing::PrimePower { p, .. }, ScalarRing::PrimeField { p: q }) => p == q,
            _ => false,
        }
    }

    /// All ring elements, in canonical order. Panics on the rationals.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        let m = self
            .cardinality()
            .expect("cannot enumerate an infinite scalar ring");
        (0..m).map(move |v| Scalar {
            ring: *self,
            repr: Repr::Mod(v),
        })
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::PrimeField { p } => write!(f, "GF({p})"),
            ScalarRing::PrimePower { p, k, .. } => write!(f, "Z/{p}^{k}"),
            ScalarRing::Rational => write!(f, "Q"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Mod(u64),
    Rat(BigRational),
}

/// An exact scalar in canonical form: a representative in `0..p^k` for the
/// modular kinds, a reduced fraction for the rationals. Equality is
/// representational equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    ring: ScalarRing,
    repr: Repr,
}

#[inline]
fn assert_same_ring(a: &Scalar, b: &Scalar) {
    assert!(
        a.ring == b.ring,
        "mixed-ring operands: {} vs {}",
        a.ring,
        b.ring
    );
}

impl Scalar {
    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn zero(ring: ScalarRing) -> Self {
        match ring {
            ScalarRing::Rational => Scalar {
                ring,
                repr: Repr::Rat(BigRational::zero()),
            },
            _ => Scalar {
                ring,
                repr: Repr::Mod(0),
            },
        }
    }

    pub fn one(ring: ScalarRing) -> Self {
        match ring {
            ScalarRing::Rational => Scalar {
                ring,
                repr: Repr::Rat(BigRational::one()),
            },
            _ => Scalar {
                ring,
                repr: Repr::Mod(1 % ring.modulus().unwrap()),
            },
        }
    }

    pub fn from_i64(ring: ScalarRing, v: i64) -> Self {
        match ring {
            ScalarRing::Rational => Scalar {
                ring,
                repr: Repr::Rat(BigRational::from(BigInt::from(v))),
            },
            _ => {
                let m = ring.modulus().unwrap() as i64;
                Scalar {
                    ring,
                    repr: Repr::Mod(v.rem_euclid(m) as u64),
                }
            }
        }
    }

    pub fn from_ratio(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Shape("rational with zero denominator".into()));
        }
        Ok(Scalar {
            ring: ScalarRing::Rational,
            repr: Repr::Rat(BigRational::new(num, den)),
        })
    }

    /// Canonical representative of a modular scalar.
    pub fn rep(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(v) => Some(*v),
            Repr::Rat(_) => None,
        }
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Mod(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Mod(v) => *v == 0,
            Repr::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.ring)
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        assert_same_ring(self, rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Mod(a), Repr::Mod(b)) => {
                let m = self.ring.modulus().unwrap();
                Scalar {
                    ring: self.ring,
                    repr: Repr::Mod((a + b) % m),
                }
            }
            (Repr::Rat(a), Repr::Rat(b)) => Scalar {
                ring: self.ring,
                repr: Repr::Rat(a + b),
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match &self.repr {
            Repr::Mod(a) => {
                let m = self.ring.modulus().unwrap();
                Scalar {
                    ring: self.ring,
                    repr: Repr::Mod(if *a == 0 { 0 } else { m - a }),
                }
            }
            Repr::Rat(a) => Scalar {
                ring: self.ring,
                repr: Repr::Rat(-a),
            },
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        assert_same_ring(self, rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Mod(a), Repr::Mod(b)) => {
                let m = self.ring.modulus().unwrap();
                Scalar {
                    ring: self.ring,
                    repr: Repr::Mod(a * b % m),
                }
            }
            (Repr::Rat(a), Repr::Rat(b)) => Scalar {
                ring: self.ring,
                repr: Repr::Rat(a * b),
            },
            _ => unreachable!(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match &self.repr {
            Repr::Mod(v) => {
                let p = self.ring.prime().unwrap();
                *v % p != 0
            }
            Repr::Rat(r) => !r.is_zero(),
        }
    }

    /// Multiplicative inverse, or `None` when the scalar is not a unit.
    pub fn inverse(&self) -> Option<Scalar> {
        match &self.repr {
            Repr::Mod(v) => {
                let m = self.ring.modulus().unwrap();
                inv_mod(*v, m).map(|w| Scalar {
                    ring: self.ring,
                    repr: Repr::Mod(w),
                })
            }
            Repr::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar {
                        ring: self.ring,
                        repr: Repr::Rat(r.recip()),
                    })
                }
            }
        }
    }

    /// p-adic valuation of a nonzero modular scalar, `None` for zero.
    /// Nonzero field scalars (including rationals) report 0.
    pub fn valuation(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        match (&self.ring, &self.repr) {
            (ScalarRing::PrimePower { p, .. }, Repr::Mod(v)) => {
                let mut v = *v;
                let mut e = 0;
                while v % p == 0 {
                    v /= p;
                    e += 1;
                }
                Some(e)
            }
            _ => Some(0),
        }
    }

    /// Writes a nonzero modular scalar as `unit * p^e` and returns the unit.
    /// For field scalars the unit is the scalar itself.
    pub fn unit_part(&self) -> Scalar {
        match (&self.ring, &self.repr) {
            (ScalarRing::PrimePower { p, .. }, Repr::Mod(v)) if *v != 0 => {
                let mut u = *v;
                while u % p == 0 {
                    u /= p;
                }
                Scalar {
                    ring: self.ring,
                    repr: Repr::Mod(u),
                }
            }
            _ => self.clone(),
        }
    }

    /// p^e as a scalar of this ring (fields: 1 for e = 0 only).
    pub fn pow_p(ring: ScalarRing, e: u32) -> Scalar {
        match ring {
            ScalarRing::PrimePower { p, modulus, .. } => {
                let mut v: u64 = 1;
                for _ in 0..e {
                    v = v * p % modulus;
                }
                Scalar {
                    ring,
                    repr: Repr::Mod(v),
                }
            }
            _ => {
                assert!(e == 0, "p^e with e > 0 only exists in a chain ring");
                Scalar::one(ring)
            }
        }
    }

    /// Exact division of the canonical representative by p^e. Requires
    /// valuation at least e. Fields only allow e = 0.
    pub fn divexact_pow_p(&self, e: u32) -> Scalar {
        if e == 0 {
            return self.clone();
        }
        match (&self.ring, &self.repr) {
            (ScalarRing::PrimePower { p, .. }, Repr::Mod(v)) => {
                let q = p.pow(e);
                assert!(v % q == 0, "inexact division by p^{e}");
                Scalar {
                    ring: self.ring,
                    repr: Repr::Mod(v / q),
                }
            }
            _ => panic!("divexact_pow_p on a field scalar"),
        }
    }

    /// Representative reduced modulo p^e (chain rings); fields reduce
    /// everything to zero, matching full elimination in echelon forms.
    pub fn rem_pow_p(&self, e: u32) -> Scalar {
        match (&self.ring, &self.repr) {
            (ScalarRing::PrimePower { p, .. }, Repr::Mod(v)) => Scalar {
                ring: self.ring,
                repr: Repr::Mod(v % p.pow(e)),
            },
            _ => Scalar::zero(self.ring),
        }
    }

    /// Floor division of the canonical representative by p^e (chain rings);
    /// on fields this divides by the pivot 1, i.e. returns the scalar.
    pub fn div_pow_p(&self, e: u32) -> Scalar {
        match (&self.ring, &self.repr) {
            (ScalarRing::PrimePower { p, .. }, Repr::Mod(v)) => Scalar {
                ring: self.ring,
                repr: Repr::Mod(v / p.pow(e)),
            },
            _ => self.clone(),
        }
    }

    /// Canonical reduction into a smaller ring of the same prime
    /// (Z/p^k -> Z/p^j), or the identity.
    pub fn reduce_into(&self, target: ScalarRing) -> Scalar {
        if self.ring == target {
            return self.clone();
        }
        assert!(
            self.ring.reduces_to(&target),
            "no canonical reduction {} -> {}",
            self.ring,
            target
        );
        match &self.repr {
            Repr::Mod(v) => Scalar {
                ring: target,
                repr: Repr::Mod(v % target.modulus().unwrap()),
            },
            Repr::Rat(_) => unreachable!(),
        }
    }

    /// Canonical lift along a reduction Z/p^k -> Z/p^j: the representative
    /// is reinterpreted in the larger ring.
    pub fn lift_into(&self, source: ScalarRing) -> Scalar {
        if self.ring == source {
            return self.clone();
        }
        assert!(
            source.reduces_to(&self.ring),
            "no canonical section {} -> {}",
            self.ring,
            source
        );
        match &self.repr {
            Repr::Mod(v) => Scalar {
                ring: source,
                repr: Repr::Mod(*v),
            },
            Repr::Rat(_) => unreachable!(),
        }
    }
}

/// Extended-Euclid inverse of `a` modulo `m`.
fn inv_mod(a: u64, m: u64) -> Option<u64> {
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

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Mod(v) => write!(f, "{v}"),
            Repr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Parses the scenario-file form of a scalar: an integer for the modular
/// kinds, an integer or `num/den` string for the rationals.
pub fn parse_scalar(ring: ScalarRing, text: &str) -> Result<Scalar> {
    let text = text.trim();
    match ring {
        ScalarRing::Rational => {
            if let Some((n, d)) = text.split_once('/') {
                let num: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Scenario(format!("bad rational: {text}")))?;
                let den: BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::Scenario(format!("bad rational: {text}")))?;
                Scalar::from_ratio(num, den)
            } else {
                let num: BigInt = text
                    .parse()
                    .map_err(|_| Error::Scenario(format!("bad rational: {text}")))?;
                Scalar::from_ratio(num, BigInt::one())
            }
        }
        _ => {
            let v: i64 = text
                .parse()
                .map_err(|_| Error::Scenario(format!("bad integer scalar: {text}")))?;
            Ok(Scalar::from_i64(ring, v))
        }
    }
}

/// Scenario-file rendering of a scalar; inverse of [`parse_scalar`].
pub fn render_scalar(s: &Scalar) -> String {
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zpk(p: u64, k: u32) -> ScalarRing {
        ScalarRing::prime_power(p, k).unwrap()
    }

    #[test]
    fn canonical_arithmetic_examples() {
        let z49 = zpk(7, 2);
        assert_eq!(
            z49.from_i64(40).add(&z49.from_i64(15)),
            z49.from_i64(6),
            "40 + 15 = 6 in Z/49"
        );
        let gf5 = ScalarRing::prime_field(5).unwrap();
        assert_eq!(gf5.from_i64(3).mul(&gf5.from_i64(4)), gf5.from_i64(2));
        let q = ScalarRing::rationals();
        let half = Scalar::from_ratio(1.into(), 2.into()).unwrap();
        let third = Scalar::from_ratio(1.into(), 3.into()).unwrap();
        assert_eq!(
            half.add(&third),
            Scalar::from_ratio(5.into(), 6.into()).unwrap()
        );
        let _ = q;
    }

    #[test]
    fn inverses() {
        let gf7 = ScalarRing::prime_field(7).unwrap();
        assert_eq!(gf7.from_i64(2).inverse(), Some(gf7.from_i64(4)));

        let z49 = zpk(7, 2);
        // 8 * 43 = 344 = 7 * 49 + 1
        assert_eq!(z49.from_i64(8).inverse(), Some(z49.from_i64(43)));
        assert_eq!(z49.from_i64(7).inverse(), None);

        for v in 1..49 {
            if let Some(inv) = z49.from_i64(v).inverse() {
                assert!(z49.from_i64(v).mul(&inv).is_one());
            }
        }
    }

    #[test]
    fn valuations_and_unit_parts() {
        let z8 = zpk(2, 3);
        assert_eq!(z8.from_i64(6).valuation(), Some(1));
        assert_eq!(z8.from_i64(4).valuation(), Some(2));
        assert_eq!(z8.from_i64(0).valuation(), None);
        assert_eq!(z8.from_i64(6).unit_part(), z8.from_i64(3));
        assert_eq!(z8.from_i64(6).divexact_pow_p(1), z8.from_i64(3));
    }

    #[test]
    fn prime_power_canonicalizes_k1() {
        assert_eq!(zpk(5, 1), ScalarRing::prime_field(5).unwrap());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(ScalarRing::prime_field(6).is_err());
        assert!(ScalarRing::prime_power(10, 2).is_err());
    }

    #[test]
    #[should_panic(expected = "mixed-ring")]
    fn mixed_ring_operands_panic() {
        let a = ScalarRing::prime_field(5).unwrap().from_i64(1);
        let b = zpk(7, 2).from_i64(1);
        let _ = a.add(&b);
    }

    #[test]
    fn reductions_and_lifts() {
        let z49 = zpk(7, 2);
        let gf7 = ScalarRing::prime_field(7).unwrap();
        assert_eq!(z49.from_i64(43).reduce_into(gf7), gf7.from_i64(1));
        assert_eq!(gf7.from_i64(5).lift_into(z49), z49.from_i64(5));
    }

    #[test]
    fn scalar_text_round_trip() {
        let q = ScalarRing::rationals();
        let s = parse_scalar(q, "-3/9").unwrap();
        assert_eq!(render_scalar(&s), "-1/3");
        let z49 = zpk(7, 2);
        assert_eq!(parse_scalar(z49, "-1").unwrap(), z49.from_i64(48));
    }
}
