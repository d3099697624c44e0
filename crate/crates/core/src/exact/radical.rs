//! Formal radicals: products of rationals raised to rational exponents.
//!
//! A nonzero rational factors as `(-1)^s · Π p^e`. A radical keeps the
//! exponent of `-1` modulo 2 and a rational exponent per prime, and it is
//! read as `exp(iπ·s) · Π p^e` with positive real prime powers. That reading
//! is a group homomorphism into the algebraic numbers, so two radicals are
//! the same algebraic number whenever their exponent data agree, and
//! identities can be checked without floating point.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::ExactRational;

/// Prime factorization by trial division.
///
/// Intended for the small structure constants this crate deals with; the
/// cost grows with the second-largest prime factor.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u64> {
    let mut out = BTreeMap::new();
    if n.is_zero() || n.is_one() {
        return out;
    }
    if let Some(small) = n.to_u64() {
        for (p, e) in factorize_u64(small) {
            out.insert(BigUint::from(p), e);
        }
        return out;
    }
    let mut rest = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= rest {
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.insert(d.clone(), e);
            if let Some(small) = rest.to_u64() {
                for (p, e) in factorize_u64(small) {
                    *out.entry(BigUint::from(p)).or_insert(0) += e;
                }
                return out;
            }
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        *out.entry(rest).or_insert(0) += 1;
    }
    out
}

fn factorize_u64(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Radical {
    /// Exponent of -1, reduced into [0, 2).
    sign_exponent: BigRational,
    primes: BTreeMap<BigUint, BigRational>,
}

fn reduce_mod_two(x: BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let k = (&x / &two).floor();
    x - k * two
}

impl Radical {
    pub fn one() -> Self {
        Radical::default()
    }

    /// Panics on zero.
    pub fn from_rational(r: &ExactRational) -> Self {
        assert!(!r.is_zero(), "radical of zero");
        let (num, den) = r.abs_parts();
        let mut primes = BTreeMap::new();
        for (p, e) in factorize(&num) {
            *primes.entry(p).or_insert_with(BigRational::zero) += BigRational::from_integer(e.into());
        }
        for (p, e) in factorize(&den) {
            *primes.entry(p).or_insert_with(BigRational::zero) -= BigRational::from_integer(e.into());
        }
        primes.retain(|_, e| !e.is_zero());
        let sign_exponent = if r.is_negative() {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        Radical {
            sign_exponent,
            primes,
        }
    }

    pub fn is_one(&self) -> bool {
        self.sign_exponent.is_zero() && self.primes.is_empty()
    }

    pub fn pow(&self, q: &BigRational) -> Radical {
        if q.is_zero() {
            return Radical::one();
        }
        let mut primes: BTreeMap<_, _> = self
            .primes
            .iter()
            .map(|(p, e)| (p.clone(), e * q))
            .collect();
        primes.retain(|_, e: &mut BigRational| !e.is_zero());
        Radical {
            sign_exponent: reduce_mod_two(&self.sign_exponent * q),
            primes,
        }
    }

    pub fn mul(&self, other: &Radical) -> Radical {
        let mut primes = self.primes.clone();
        for (p, e) in &other.primes {
            *primes.entry(p.clone()).or_insert_with(BigRational::zero) += e;
        }
        primes.retain(|_, e| !e.is_zero());
        Radical {
            sign_exponent: reduce_mod_two(&self.sign_exponent + &other.sign_exponent),
            primes,
        }
    }

    pub fn inv(&self) -> Radical {
        self.pow(&-BigRational::one())
    }

    /// The rational value, if every exponent is an integer.
    pub fn to_rational(&self) -> Option<ExactRational> {
        if !self.sign_exponent.is_integer() {
            return None;
        }
        let mut acc = if self.sign_exponent.is_zero() {
            ExactRational::one()
        } else {
            -ExactRational::one()
        };
        for (p, e) in &self.primes {
            if !e.is_integer() {
                return None;
            }
            let base = ExactRational::from_integer(BigInt::from(p.clone()));
            acc = acc * base.pow(&e.to_integer());
        }
        Some(acc)
    }
}

/// `Π bases[e]^exponents[e]` as a formal radical.
pub fn radical_product(bases: &[ExactRational], exponents: &[ExactRational]) -> Radical {
    assert_eq!(bases.len(), exponents.len());
    bases
        .iter()
        .zip(exponents)
        .filter(|(_, q)| !q.is_zero())
        .fold(Radical::one(), |acc, (b, q)| {
            acc.mul(&Radical::from_rational(b).pow(q.as_big()))
        })
}
