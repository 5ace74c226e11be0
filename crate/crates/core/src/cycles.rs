//! Orbits of the alternating `K′/K″` iteration.
//!
//! From `(x, y)` the chain
//!
//! ```text
//! (x,y) →K′ (−x+y+1, y) →K″ (−x+y+1, −x+2) →K′ (−y+2, −x+2)
//!       →K″ (−y+2, x−y+1) →K′ (x, x−y+1) →K″ (x,y)
//! ```
//!
//! closes after six steps. Points on one of the lines `y = −x+2`, `2y = x+1`,
//! `y = 2x−1` collapse the cycle to three points; `(1,1)` lies on all three
//! and is a fixed point.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::ops::{add, mul, sub, Point, StepOp};
use crate::{Error, Result};

/// Word that walks a cycle once: `K′, K″, K′, K″, K′, K″`.
pub const CYCLE_WORD: [StepOp; 6] = [
    StepOp::KPrime,
    StepOp::KDoublePrime,
    StepOp::KPrime,
    StepOp::KDoublePrime,
    StepOp::KPrime,
    StepOp::KDoublePrime,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub base: Point,
    /// The chain starting at `base`; `K″` maps the last entry back to `base`.
    pub ordered_points: [Point; 6],
    pub distinct_points: BTreeSet<Point>,
    /// 1, 3 or 6.
    pub cardinality: usize,
}

impl Cycle {
    /// Smallest point of the cycle; identical for every base on the same cycle.
    pub fn representative(&self) -> Point {
        *self
            .distinct_points
            .first()
            .expect("a cycle is never empty")
    }
}

pub fn cycle_of(p: Point) -> Result<Cycle> {
    let Point { x, y } = p;
    let a = add(sub(y, x)?, 1)?; // −x+y+1
    let b = sub(2, x)?; // −x+2
    let c = sub(2, y)?; // −y+2
    let d = add(sub(x, y)?, 1)?; // x−y+1
    let ordered_points = [
        p,
        Point::new(a, y),
        Point::new(a, b),
        Point::new(c, b),
        Point::new(c, d),
        Point::new(x, d),
    ];
    let distinct_points: BTreeSet<Point> = ordered_points.iter().copied().collect();
    let cardinality = distinct_points.len();
    Ok(Cycle {
        base: p,
        ordered_points,
        distinct_points,
        cardinality,
    })
}

/// The three lines on which cycles degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DegeneracyLine {
    /// `y = −x + 2`
    LineA,
    /// `2y = x + 1`
    LineB,
    /// `y = 2x − 1`
    LineC,
}

impl DegeneracyLine {
    pub const ALL: [DegeneracyLine; 3] = [
        DegeneracyLine::LineA,
        DegeneracyLine::LineB,
        DegeneracyLine::LineC,
    ];

    pub fn contains(self, p: Point) -> bool {
        let (x, y) = (i128::from(p.x), i128::from(p.y));
        match self {
            DegeneracyLine::LineA => x + y - 2 == 0,
            DegeneracyLine::LineB => 2 * y - x - 1 == 0,
            DegeneracyLine::LineC => 2 * x - y - 1 == 0,
        }
    }

    pub fn equation(self) -> &'static str {
        match self {
            DegeneracyLine::LineA => "y=-x+2",
            DegeneracyLine::LineB => "2y=x+1",
            DegeneracyLine::LineC => "y=2x-1",
        }
    }
}

/// Lines that contain at least one point of the cycle through `p`.
pub fn degeneracy_lines(p: Point) -> Result<BTreeSet<DegeneracyLine>> {
    let cycle = cycle_of(p)?;
    Ok(DegeneracyLine::ALL
        .into_iter()
        .filter(|line| cycle.ordered_points.iter().any(|&q| line.contains(q)))
        .collect())
}

/// Absolute values of every coordinate met on the cycle through `p`.
pub fn represented_abs(p: Point) -> Result<BTreeSet<u64>> {
    let cycle = cycle_of(p)?;
    Ok(cycle
        .ordered_points
        .iter()
        .flat_map(|q| [q.x.unsigned_abs(), q.y.unsigned_abs()])
        .collect())
}

fn abs(v: i64) -> Result<i64> {
    v.checked_abs().ok_or(Error::Overflow)
}

/// Total length of the closed polyline through the cycle,
/// `2(|2x−y−1| + |x+y−2| + |x−2y+1|)`. Zero-length steps of degenerate
/// cycles count as 0.
///
/// Summed over a box symmetric under `x ↔ y` this agrees with the two-term
/// form `4|2x−y−1| + 2|x+y−2|`, but the two differ pointwise.
pub fn cycle_length(p: Point) -> Result<i64> {
    let Point { x, y } = p;
    let u = abs(sub(sub(mul(2, x)?, y)?, 1)?)?;
    let v = abs(sub(add(x, y)?, 2)?)?;
    let w = abs(add(sub(x, mul(2, y)?)?, 1)?)?;
    mul(2, add(add(u, v)?, w)?)
}

/// Sum of the squared step lengths of the cycle, `12(x²+y²−xy−x−y+1)`.
pub fn step_square_sum(p: Point) -> Result<i64> {
    let Point { x, y } = p;
    let q = add(sub(mul(x, x)?, mul(x, y)?)?, mul(y, y)?)?;
    let q = add(sub(sub(q, x)?, y)?, 1)?;
    mul(12, q)
}

fn half_width(t: u32) -> Result<i64> {
    if t == 0 {
        return Err(Error::InvalidArgument(
            "half-width must be at least 1".into(),
        ));
    }
    Ok(i64::from(t))
}

/// `Σ S(x,y)` over `[−T,T]²` by direct summation.
pub fn step_square_grid_sum(t: u32) -> Result<i64> {
    let t = half_width(t)?;
    let mut total = 0i64;
    for x in -t..=t {
        for y in -t..=t {
            total = add(total, step_square_sum(Point::new(x, y))?)?;
        }
    }
    Ok(total)
}

/// Closed form of [`step_square_grid_sum`]: `4(2T+1)²(2T²+2T+3)`.
pub fn step_square_grid_sum_closed(t: u32) -> Result<i64> {
    let t = half_width(t)?;
    let side = add(mul(2, t)?, 1)?;
    let inner = add(add(mul(2, mul(t, t)?)?, mul(2, t)?)?, 3)?;
    mul(mul(4, mul(side, side)?)?, inner)
}

/// `A_step(T)²`, i.e. `Σ S / (6(2T+1)²) = (2/3)(2T²+2T+3)`.
///
/// Returned squared so the value stays rational; `A_step(T)` itself is its
/// square root.
pub fn avg_step_l2(t: u32) -> Result<Ratio<i64>> {
    let tt = half_width(t)?;
    let inner = add(add(mul(2, mul(tt, tt)?)?, mul(2, tt)?)?, 3)?;
    Ok(Ratio::new(mul(2, inner)?, 3))
}

/// Mean of [`cycle_length`] over the `(2T+1)²` bases in `[−T,T]²`.
///
/// Each cycle is weighted by how many of its nodes fall in the box.
pub fn avg_path_length(t: u32) -> Result<Ratio<i64>> {
    let tt = half_width(t)?;
    let rows: Vec<Result<i64>> = (-tt..=tt)
        .into_par_iter()
        .map(|x| (-tt..=tt).try_fold(0i64, |acc, y| add(acc, cycle_length(Point::new(x, y))?)))
        .collect();
    let mut total = 0i64;
    for r in rows {
        total = add(total, r?)?;
    }
    let side = add(mul(2, tt)?, 1)?;
    Ok(Ratio::new(total, mul(side, side)?))
}

/// Exact statistics of the `K` cycles over `[−T,T]²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStats {
    pub half_width: u32,
    /// `A_step(T)²`
    pub avg_step_l2_sq: Ratio<i64>,
    pub avg_path_length: Ratio<i64>,
    /// `(2/√3)²`: `A_step(T)² / T² → 4/3`.
    pub step_slope_sq: Ratio<i64>,
    /// `A_path(T) / T → 17/3`.
    pub path_slope: Ratio<i64>,
}

impl CycleStats {
    pub fn compute(t: u32) -> Result<Self> {
        Ok(CycleStats {
            half_width: t,
            avg_step_l2_sq: avg_step_l2(t)?,
            avg_path_length: avg_path_length(t)?,
            step_slope_sq: Ratio::new(4, 3),
            path_slope: Ratio::new(17, 3),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclePartitionReport {
    pub ok: bool,
    /// Bases whose cycle shares a point with a different cycle, sorted.
    pub violations: Vec<Point>,
}

/// Checks that cycles through `[−T,T]²` are pairwise equal or disjoint.
pub fn cycle_partition_check(t: u32) -> Result<CyclePartitionReport> {
    let tt = half_width(t)?;
    let rows: Vec<Result<Vec<Point>>> = (-tt..=tt)
        .into_par_iter()
        .map(|x| {
            let mut bad = Vec::new();
            for y in -tt..=tt {
                let p = Point::new(x, y);
                let cycle = cycle_of(p)?;
                for &q in &cycle.distinct_points {
                    if cycle_of(q)?.distinct_points != cycle.distinct_points {
                        bad.push(p);
                        break;
                    }
                }
            }
            Ok(bad)
        })
        .collect();
    let mut violations = Vec::new();
    for r in rows {
        violations.extend(r?);
    }
    violations.sort();
    Ok(CyclePartitionReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// Every distinct cycle with at least one node in `[lo, hi]²`, keyed by its
/// smallest point.
pub fn cycles_meeting_box(lo: i64, hi: i64) -> Result<BTreeMap<Point, Cycle>> {
    let mut out = BTreeMap::new();
    for x in lo..=hi {
        for y in lo..=hi {
            let c = cycle_of(Point::new(x, y))?;
            out.entry(c.representative()).or_insert(c);
        }
    }
    Ok(out)
}
