//! Triangular numbers in residue classes modulo a prime.
//!
//! The integers represented on the parabola through the origin are exactly the
//! triangular numbers `T_k`. Completing the square turns `T_k ≡ l (mod p)`
//! into `(k + 2⁻¹)² ≡ 2l + 2⁻² (mod p)`, so for odd `p` a class has density
//! `2/p`, `1/p` or `0` according to whether `2l + 2⁻²` is a nonzero square,
//! zero, or a non-square. The zero case is the single exceptional class
//! `l ≡ −2⁻³`.

use num_rational::Ratio;
use serde::Serialize;

use crate::ops::triangular;
use crate::{Error, Result};

/// Largest modulus [`count_residues`] accepts by default.
pub const DEFAULT_MAX_MODULUS: i64 = 1_000_000;

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = u128::from(m);
    let mut b = u128::from(base) % m128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller–Rabin for all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (u128::from(x) * u128::from(x) % u128::from(n)) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn require_prime(p: i64) -> Result<u64> {
    match u64::try_from(p) {
        Ok(q) if is_prime(q) => Ok(q),
        _ => Err(Error::InvalidModulus(p, "a prime")),
    }
}

fn require_odd_prime(p: i64) -> Result<u64> {
    match require_prime(p) {
        Ok(q) if q != 2 => Ok(q),
        _ => Err(Error::InvalidModulus(p, "an odd prime")),
    }
}

/// Representative of `a` in `[0, p)`.
fn reduce(a: i64, p: u64) -> u64 {
    i128::from(a).rem_euclid(i128::from(p)) as u64
}

/// Legendre symbol `(a | p)` by Euler's criterion.
pub fn legendre(a: i64, p: i64) -> Result<i8> {
    let p = require_odd_prime(p)?;
    let r = mod_pow(reduce(a, p), (p - 1) / 2, p);
    Ok(match r {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

/// Inverse of `a` modulo the prime `p`, in `[1, p)`.
pub fn mod_inverse(a: i64, p: i64) -> Result<i64> {
    let q = require_prime(p)?;
    let a_red = reduce(a, q);
    if a_red == 0 {
        return Err(Error::NotInvertible {
            value: a,
            modulus: p,
        });
    }
    // extended Euclid on (a_red, q)
    let (mut r0, mut r1) = (i128::from(q), i128::from(a_red));
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    debug_assert_eq!(r0, 1);
    Ok(s0.rem_euclid(i128::from(q)) as i64)
}

/// The class `−2⁻³ (mod p)` that carries density `1/p`.
pub fn exceptional_residue(p: i64) -> Result<i64> {
    let q = require_odd_prime(p)?;
    let inv8 = mod_inverse(8, p)? as u64;
    Ok(((q - inv8) % q) as i64)
}

/// `2l + 2⁻² (mod p)`: the square that `(k + 2⁻¹)` must hit.
fn completed_square_target(l: i64, p: i64) -> Result<i64> {
    let q = require_odd_prime(p)?;
    let inv4 = mod_inverse(4, p)? as u128;
    Ok(((2 * u128::from(reduce(l, q)) + inv4) % u128::from(q)) as i64)
}

fn check_residue(l: i64, p: i64) -> Result<()> {
    if !(0..p).contains(&l) {
        return Err(Error::InvalidArgument(format!(
            "residue {l} not in [0, {p})"
        )));
    }
    Ok(())
}

/// Limit density of `{T_k}` in the class `l (mod p)`.
pub fn predicted_density(l: i64, p: i64) -> Result<Ratio<i64>> {
    require_prime(p)?;
    check_residue(l, p)?;
    if p == 2 {
        return Ok(Ratio::new(1, 2));
    }
    let c = completed_square_target(l, p)?;
    Ok(match legendre(c, p)? {
        0 => Ratio::new(1, p),
        1 => Ratio::new(2, p),
        _ => Ratio::from_integer(0),
    })
}

/// Residue counts of `T_0, …, T_{K−1}` modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityTable {
    pub p: i64,
    pub index_count: u64,
    /// `T_{K−1}`, the value cutoff these indices correspond to.
    pub implied_t: i64,
    pub counts: Vec<u64>,
    #[serde(serialize_with = "ser_ratios")]
    pub empirical: Vec<Ratio<i64>>,
    #[serde(serialize_with = "ser_ratios")]
    pub predicted: Vec<Ratio<i64>>,
    /// `None` for `p = 2`.
    pub exceptional: Option<i64>,
}

fn ser_ratios<S: serde::Serializer>(
    v: &[Ratio<i64>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

pub fn count_residues(p: i64, index_count: u64) -> Result<DensityTable> {
    count_residues_capped(p, index_count, DEFAULT_MAX_MODULUS)
}

pub fn count_residues_capped(p: i64, index_count: u64, max_modulus: i64) -> Result<DensityTable> {
    let q = require_prime(p)?;
    if p > max_modulus {
        return Err(Error::BudgetExceeded {
            what: "modulus",
            limit: max_modulus as u64,
        });
    }
    if index_count == 0 {
        return Err(Error::InvalidArgument(
            "index count must be at least 1".into(),
        ));
    }
    let k_max = i64::try_from(index_count).map_err(|_| Error::Overflow)?;
    let mut counts = vec![0u64; q as usize];
    // T_{k+1} = T_k + (k+1)
    let mut t = 0u64;
    for k in 0..index_count {
        counts[t as usize] += 1;
        t = (t + (k + 1) % q) % q;
    }
    let empirical = counts
        .iter()
        .map(|&c| Ratio::new(c as i64, k_max))
        .collect();
    let predicted = (0..p)
        .map(|l| predicted_density(l, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(DensityTable {
        p,
        index_count,
        implied_t: triangular(index_count - 1)?,
        counts,
        empirical,
        predicted,
        exceptional: if p == 2 {
            None
        } else {
            Some(exceptional_residue(p)?)
        },
    })
}

/// Agreement between counted and predicted densities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    #[serde(serialize_with = "ser_ratio")]
    pub max_abs_err: Ratio<i64>,
    pub within_tol: bool,
    /// Number of complete periods of `k ↦ T_k mod p` (period `2p`) in the indices.
    pub full_periods: u64,
    /// Over the full-period prefix each class holds exactly `2p·δ(l)` hits per period.
    pub period_exact: bool,
    pub ok: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn verify_density_theorem(p: i64, index_count: u64, tol: Ratio<i64>) -> Result<DensityReport> {
    let q = require_prime(p)?;
    if index_count < q {
        return Err(Error::InvalidArgument(format!("need at least {p} indices")));
    }
    let table = count_residues(p, index_count)?;
    let max_abs_err = table
        .empirical
        .iter()
        .zip(&table.predicted)
        .map(|(e, d)| if e > d { e - d } else { d - e })
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0));

    let period = 2 * q;
    let full_periods = index_count / period;
    let prefix = count_residues(p, (full_periods * period).max(1))?;
    let period_exact = full_periods == 0
        || prefix.counts.iter().zip(&table.predicted).all(|(&c, d)| {
            // hits per period = 2p·δ(l) ∈ {0, 2, 4}
            let per_period = d * Ratio::from_integer(period as i64);
            per_period.is_integer() && c == full_periods * per_period.to_integer() as u64
        });
    let within_tol = max_abs_err <= tol;
    Ok(DensityReport {
        max_abs_err,
        within_tol,
        full_periods,
        period_exact,
        ok: within_tol && period_exact,
    })
}

/// Residue counts of both coordinates of the vertex `(0,0)` and the nearest
/// `points` ladder points: `(T_k, T_{k+1})` then `(T_{k+1}, T_k)` for
/// `k = 0, 1, …`.
pub fn point_residue_counts(p: i64, points: u64) -> Result<Vec<u64>> {
    let q = require_prime(p)?;
    if p > DEFAULT_MAX_MODULUS {
        return Err(Error::BudgetExceeded {
            what: "modulus",
            limit: DEFAULT_MAX_MODULUS as u64,
        });
    }
    let mut counts = vec![0u64; q as usize];
    counts[0] += 2;
    for i in 0..points {
        let k = i / 2;
        let a = triangular(k)?;
        let b = triangular(k + 1)?;
        counts[(a as u64 % q) as usize] += 1;
        counts[(b as u64 % q) as usize] += 1;
    }
    Ok(counts)
}
