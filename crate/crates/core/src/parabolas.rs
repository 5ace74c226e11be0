//! Orbits of the `L′/L″` iteration: discrete parabolas.
//!
//! Each orbit has a lowest point `(m, m)` on the diagonal and is the
//! translate by `m` of the orbit of the origin, whose points are
//! `(T_k, T_{k+1})` (upper branch) and `(T_{k+1}, T_k)` (lower branch). All of
//! them satisfy `x + y − 2m = (x − y)²`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::ops::{add, mul, sub, triangular, OpWord, Point, StepOp};
use crate::{Error, Result};

/// The class of points sharing the vertex `(m, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParabolaClass {
    pub m: i64,
}

impl ParabolaClass {
    pub fn vertex(self) -> Point {
        Point::new(self.m, self.m)
    }

    pub fn contains(self, p: Point) -> bool {
        on_class(p, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// `y > x`
    Upper,
    /// `x > y`
    Lower,
}

/// Rung `k` of the ladder over `(m, m)`; its spread is `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rung {
    pub m: i64,
    pub k: u64,
    pub branch: Branch,
}

/// `m = (a + b − (a − b)²) / 2`.
pub fn vertex_of(p: Point) -> Result<i64> {
    let d = p.diff()?;
    let num = sub(add(p.x, p.y)?, mul(d, d)?)?;
    // a + b ≡ a − b ≡ (a − b)² (mod 2)
    debug_assert_eq!(num.rem_euclid(2), 0);
    Ok(num / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Descent {
    pub word: OpWord,
    pub vertex: Point,
}

/// The `|x − y|` L-steps that shrink the spread down to the diagonal.
pub fn descend_to_vertex(p: Point) -> Result<Descent> {
    let mut word = OpWord::new();
    let mut q = p;
    loop {
        let d = q.diff()?;
        let op = match d.signum() {
            0 => break,
            1 => StepOp::LPrime,
            _ => StepOp::LDoublePrime,
        };
        q = op.apply(q)?;
        word.push(op);
    }
    Ok(Descent { word, vertex: q })
}

pub fn rung_point(r: Rung) -> Result<Point> {
    let lo = add(triangular(r.k)?, r.m)?;
    let hi = add(triangular(r.k.checked_add(1).ok_or(Error::Overflow)?)?, r.m)?;
    Ok(match r.branch {
        Branch::Upper => Point::new(lo, hi),
        Branch::Lower => Point::new(hi, lo),
    })
}

/// The rung a point sits on; `None` for the vertex.
pub fn rung_of(p: Point) -> Result<Option<Rung>> {
    let d = p.diff()?;
    if d == 0 {
        return Ok(None);
    }
    let m = vertex_of(p)?;
    let branch = if d < 0 { Branch::Upper } else { Branch::Lower };
    Ok(Some(Rung {
        m,
        k: d.unsigned_abs() - 1,
        branch,
    }))
}

/// `n + 1` points from `(m, m)` alternating L-ops, beginning with `first`.
pub fn ladder(m: i64, n: usize, first: StepOp) -> Result<Vec<Point>> {
    let second = match first {
        StepOp::LPrime => StepOp::LDoublePrime,
        StepOp::LDoublePrime => StepOp::LPrime,
        other => {
            return Err(Error::InvalidArgument(format!(
                "ladder must start with L' or L'', got {other}"
            )))
        }
    };
    OpWord::alternating(first, second, n).trace(Point::new(m, m))
}

/// True iff `x + y − 2m = (x − y)²`.
pub fn on_class(p: Point, m: i64) -> bool {
    let (x, y, m) = (i128::from(p.x), i128::from(p.y), i128::from(m));
    x + y - 2 * m == (x - y) * (x - y)
}

/// Same parabola, i.e. same vertex. Points whose vertex overflows compare unequal.
pub fn equivalent(p: Point, q: Point) -> bool {
    matches!((vertex_of(p), vertex_of(q)), (Ok(a), Ok(b)) if a == b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolaPartitionReport {
    pub ok: bool,
    pub violations: Vec<Point>,
    /// Number of box points on each class `m`.
    pub class_histogram: BTreeMap<i64, u64>,
}

fn check_point(p: Point) -> Result<(i64, bool)> {
    let m = vertex_of(p)?;
    let descent = descend_to_vertex(p)?;
    let mut ok = on_class(p, m)
        && descent.vertex == Point::new(m, m)
        && descent.word.len() as u64 == p.spread()?;
    // climbing back regenerates p
    ok &= descent.word.inverse().apply(descent.vertex)? == p;
    if let Some(r) = rung_of(p)? {
        ok &= rung_point(r)? == p;
    }
    // exactly one class: the neighbouring vertices reject p
    ok &= !on_class(p, m - 1) && !on_class(p, m + 1);
    Ok((m, ok))
}

/// Verifies the parabola partition on `[−T,T]²`.
pub fn parabola_partition_check(t: u32) -> Result<ParabolaPartitionReport> {
    if t == 0 {
        return Err(Error::InvalidArgument(
            "box half-width must be at least 1".into(),
        ));
    }
    let t = i64::from(t);
    let rows: Vec<Result<Vec<(Point, i64, bool)>>> = (-t..=t)
        .into_par_iter()
        .map(|x| {
            (-t..=t)
                .map(|y| {
                    let p = Point::new(x, y);
                    check_point(p).map(|(m, ok)| (p, m, ok))
                })
                .collect()
        })
        .collect();
    let mut violations = Vec::new();
    let mut class_histogram = BTreeMap::new();
    for row in rows {
        for (p, m, ok) in row? {
            *class_histogram.entry(m).or_insert(0) += 1;
            if !ok {
                violations.push(p);
            }
        }
    }
    violations.sort();
    Ok(ParabolaPartitionReport {
        ok: violations.is_empty(),
        violations,
        class_histogram,
    })
}

/// Points of class `m` inside `[lo, hi]²`, ordered along the parabola from the
/// far end of the lower branch, through the vertex, out the upper branch.
pub fn class_points_in_box(m: i64, lo: i64, hi: i64) -> Result<Vec<Point>> {
    let inside = |p: Point| (lo..=hi).contains(&p.x) && (lo..=hi).contains(&p.y);
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for k in 0u64.. {
        // both coordinates grow with k, so once both branches leave the box above, stop
        let u = rung_point(Rung {
            m,
            k,
            branch: Branch::Upper,
        })?;
        if u.x > hi {
            break;
        }
        if inside(u) {
            upper.push(u);
        }
        let l = rung_point(Rung {
            m,
            k,
            branch: Branch::Lower,
        })?;
        if inside(l) {
            lower.push(l);
        }
    }
    let mut out: Vec<Point> = lower.into_iter().rev().collect();
    let v = Point::new(m, m);
    if inside(v) {
        out.push(v);
    }
    out.extend(upper);
    Ok(out)
}
