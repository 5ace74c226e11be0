//! Cycles whose represented integers carry arithmetic structure: three
//! squares, three cubes, or six primes.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::cycles::represented_abs;
use crate::ops::{add, mul, sub, Point};
use crate::{Error, Result};

/// Default ceiling for [`sieve_primes`].
pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;

/// Primality table for `0..=limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    composite: Vec<bool>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.composite.len() as u64 - 1
    }

    /// Panics if `n` is above the sieved limit.
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && !self.composite[n as usize]
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit()).filter(|&n| self.is_prime(n))
    }

    pub fn count(&self) -> usize {
        self.primes().count()
    }
}

pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_capped(limit, DEFAULT_SIEVE_CAP)
}

/// Sieve of Eratosthenes up to `limit`, refusing limits above `cap`.
pub fn sieve_primes_capped(limit: u64, cap: u64) -> Result<PrimeTable> {
    if limit > cap {
        return Err(Error::MemoryCap { limit, cap });
    }
    let n = usize::try_from(limit).map_err(|_| Error::MemoryCap { limit, cap })?;
    let mut composite = vec![false; n + 1];
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    Ok(PrimeTable { composite })
}

/// A generator whose cycle represents three perfect powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerTriple {
    pub t: u32,
    pub generator: Point,
    pub powers: [i64; 3],
    /// 2 for squares, 3 for cubes.
    pub exponent: u32,
    pub represented: BTreeSet<u64>,
}

impl PowerTriple {
    fn build(t: u32, generator: Point, powers: [i64; 3], exponent: u32) -> Result<Self> {
        let represented = represented_abs(generator)?;
        Ok(PowerTriple {
            t,
            generator,
            powers,
            exponent,
            represented,
        })
    }

    /// Each power is a perfect `exponent`-th power and lies in the represented set.
    pub fn verify(&self) -> bool {
        self.powers.iter().all(|&v| {
            v >= 0
                && exact_root(v as u64, self.exponent).is_some()
                && self.represented.contains(&(v as u64))
        })
    }

    /// The `exponent`-th roots of the three powers.
    pub fn roots(&self) -> [Option<u64>; 3] {
        self.powers.map(|v| {
            u64::try_from(v)
                .ok()
                .and_then(|v| exact_root(v, self.exponent))
        })
    }
}

/// `r` with `r^k = n`, if any.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    let guess = (n as f64).powf(1.0 / f64::from(k)).round() as u64;
    (guess.saturating_sub(2)..=guess + 2).find(|r| r.checked_pow(k) == Some(n))
}

fn pow(b: i64, e: u32) -> Result<i64> {
    b.checked_pow(e).ok_or(Error::Overflow)
}

fn positive(t: u32) -> Result<i64> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    Ok(i64::from(t))
}

/// `((2t²+1)², (2t²)²)`; the third square is `z − 2 = (2t)²`.
pub fn square_family_1(t: u32) -> Result<PowerTriple> {
    let tt = positive(t)?;
    let s = mul(2, mul(tt, tt)?)?;
    let x = pow(add(s, 1)?, 2)?;
    let y = pow(s, 2)?;
    let z = pow(mul(2, tt)?, 2)?;
    PowerTriple::build(t, Point::new(x, y), [x, y, z], 2)
}

/// `((2t²)², (2t²−1)²)`; the third square is `z = x − y + 1 = (2t)²`.
pub fn square_family_2(t: u32) -> Result<PowerTriple> {
    let tt = positive(t)?;
    let s = mul(2, mul(tt, tt)?)?;
    let x = pow(s, 2)?;
    let y = pow(sub(s, 1)?, 2)?;
    let z = pow(mul(2, tt)?, 2)?;
    PowerTriple::build(t, Point::new(x, y), [x, y, z], 2)
}

/// `(9t⁴)³ + (3t − 9t⁴)³ + (1 − 9t³)³`, which equals 1 for every `t`.
pub fn mahler_sum(t: u32) -> Result<i64> {
    let tt = i64::from(t);
    let a = mul(9, pow(tt, 4)?)?;
    let b = sub(mul(3, tt)?, a)?;
    let c = sub(1, mul(9, pow(tt, 3)?)?)?;
    add(add(pow(a, 3)?, pow(b, 3)?)?, pow(c, 3)?)
}

/// `((9t⁴+3t)³, (9t³+1)³)`; the third cube is `z − 2 = (9t⁴)³`.
///
/// Overflows `i64` from `t = 22` on.
pub fn cube_family(t: u32) -> Result<PowerTriple> {
    let tt = positive(t)?;
    let x = pow(add(mul(9, pow(tt, 4)?)?, mul(3, tt)?)?, 3)?;
    let y = pow(add(mul(9, pow(tt, 3)?)?, 1)?, 3)?;
    let z = pow(mul(9, pow(tt, 4)?)?, 3)?;
    PowerTriple::build(t, Point::new(x, y), [x, y, z], 3)
}

/// A pair `(p, q)` whose cycle represents only primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HexTuplePair {
    pub p: u64,
    pub q: u64,
    /// `{p, p−2, q, q−2, q−p+1, q−p−1}`
    pub hex: BTreeSet<u64>,
}

/// All `(p, q)` with `2 ≤ p ≤ q ≤ limit` whose represented set
/// `{p, p−2, q, q−2, |q−p|+1, |q−p|−1}` is made of primes, sorted.
pub fn prime_hex_search(limit: u64) -> Result<Vec<HexTuplePair>> {
    if limit < 2 {
        return Err(Error::InvalidArgument("limit must be at least 2".into()));
    }
    let table = sieve_primes(limit)?;
    // p and p−2 prime forces p ≥ 5
    let upper_twins: Vec<u64> = (5..=limit)
        .filter(|&p| table.is_prime(p) && table.is_prime(p - 2))
        .collect();
    // q − p must sit between two primes, so p < q and q − p ≥ 4
    let pairs: Vec<HexTuplePair> = upper_twins
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, &p)| {
            let table = &table;
            upper_twins[i + 1..].iter().filter_map(move |&q| {
                let d = q - p;
                (table.is_prime(d - 1) && table.is_prime(d + 1)).then(|| HexTuplePair {
                    p,
                    q,
                    hex: BTreeSet::from([p, p - 2, q, q - 2, d + 1, d - 1]),
                })
            })
        })
        .collect();
    Ok(pairs)
}

/// Number of distinct hex sets among `pairs`.
pub fn distinct_hex_sets(pairs: &[HexTuplePair]) -> usize {
    pairs.iter().map(|h| &h.hex).collect::<HashSet<_>>().len()
}

/// The lexicographically first pair for each first component.
pub fn first_per_component(pairs: &[HexTuplePair]) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for h in pairs {
        if out.last().is_none_or(|&(p, _)| p != h.p) {
            out.push((h.p, h.q));
        }
    }
    out
}
