//! Taxicab and parabolic-taxicab distances on `ℤ²`.
//!
//! The parabolic-taxicab distance counts the fewest moves from
//! `{L′, L″, M′, M″, M‴, Mⁱᵛ}` joining two points. Every move has its inverse
//! in the set, so the move graph is undirected and distances come from
//! breadth-first search.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::ops::{OpWord, Point, StepOp};
use crate::{Error, Result};

/// Caps on radius and visited states for every search in this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_radius: u64,
    pub max_states: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_radius: 10_000,
            max_states: 100_000_000,
        }
    }
}

impl SearchBudget {
    fn check_radius(&self, r: u64) -> Result<()> {
        if r > self.max_radius {
            return Err(Error::BudgetExceeded {
                what: "radius",
                limit: self.max_radius,
            });
        }
        Ok(())
    }

    fn check_states(&self, n: usize) -> Result<()> {
        if n as u64 > self.max_states {
            return Err(Error::BudgetExceeded {
                what: "states",
                limit: self.max_states,
            });
        }
        Ok(())
    }
}

pub fn taxicab(p: Point, q: Point) -> Result<u64> {
    let dx = i128::from(p.x) - i128::from(q.x);
    let dy = i128::from(p.y) - i128::from(q.y);
    u64::try_from(dx.abs() + dy.abs()).map_err(|_| Error::Overflow)
}

/// Distinct images of `p` under the six metric generators.
pub fn neighbors(p: Point) -> Result<BTreeSet<Point>> {
    StepOp::METRIC_GENERATORS
        .iter()
        .map(|g| g.apply(p))
        .collect()
}

/// A minimal route between two points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub word: OpWord,
    /// Source first, target last.
    pub points: Vec<Point>,
}

impl PathWitness {
    pub fn source(&self) -> Point {
        self.points[0]
    }

    pub fn target(&self) -> Point {
        *self.points.last().expect("witness has at least one point")
    }

    /// Replays the word from the source and checks it lands on every listed point.
    pub fn replays(&self) -> bool {
        match self.word.trace(self.source()) {
            Ok(trace) => trace == self.points,
            Err(_) => false,
        }
    }
}

/// Parent pointers for one side of the search: `child ↦ (parent, op)`, where
/// `op` moves along the path in the source-to-target direction.
type Parents = HashMap<Point, Option<(Point, StepOp)>>;

struct Meet {
    point: Point,
    d: u64,
}

fn bidirectional(p: Point, q: Point, budget: &SearchBudget) -> Result<(Meet, Parents, Parents)> {
    let mut fwd: Parents = HashMap::from([(p, None)]);
    let mut bwd: Parents = HashMap::from([(q, None)]);
    if p == q {
        return Ok((Meet { point: p, d: 0 }, fwd, bwd));
    }
    let mut fwd_frontier = vec![p];
    let mut bwd_frontier = vec![q];
    let (mut fwd_depth, mut bwd_depth) = (0u64, 0u64);

    loop {
        budget.check_radius(fwd_depth + bwd_depth + 1)?;
        let forward = fwd_frontier.len() <= bwd_frontier.len();
        let (frontier, seen, other) = if forward {
            (&mut fwd_frontier, &mut fwd, &bwd)
        } else {
            (&mut bwd_frontier, &mut bwd, &fwd)
        };
        let mut next = Vec::new();
        let mut meet = None;
        for &u in frontier.iter() {
            for g in StepOp::METRIC_GENERATORS {
                let v = g.apply(u)?;
                if seen.contains_key(&v) {
                    continue;
                }
                let link = if forward { (u, g) } else { (u, g.inverse()) };
                seen.insert(v, Some(link));
                if meet.is_none() && other.contains_key(&v) {
                    meet = Some(v);
                }
                next.push(v);
            }
        }
        budget.check_states(fwd.len() + bwd.len())?;
        if forward {
            fwd_depth += 1;
            fwd_frontier = next;
        } else {
            bwd_depth += 1;
            bwd_frontier = next;
        }
        if let Some(point) = meet {
            return Ok((
                Meet {
                    point,
                    d: fwd_depth + bwd_depth,
                },
                fwd,
                bwd,
            ));
        }
        if fwd_frontier.is_empty() || bwd_frontier.is_empty() {
            unreachable!("the move graph is connected");
        }
    }
}

pub fn pc_distance(p: Point, q: Point, budget: &SearchBudget) -> Result<u64> {
    bidirectional(p, q, budget).map(|(meet, _, _)| meet.d)
}

pub fn pc_witness(p: Point, q: Point, budget: &SearchBudget) -> Result<PathWitness> {
    let (meet, fwd, bwd) = bidirectional(p, q, budget)?;

    let mut head = Vec::new();
    let mut cur = meet.point;
    while let Some((parent, op)) = fwd[&cur] {
        head.push(op);
        cur = parent;
    }
    head.reverse();

    let mut cur = meet.point;
    while let Some((next, op)) = bwd[&cur] {
        head.push(op);
        cur = next;
    }

    let word = OpWord(head);
    let points = word.trace(p)?;
    debug_assert_eq!(word.len() as u64, meet.d);
    debug_assert_eq!(points.last(), Some(&q));
    Ok(PathWitness { word, points })
}

/// Closed parabolic-taxicab ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ball {
    pub center: Point,
    pub radius: u64,
    pub points: BTreeSet<Point>,
    pub area: u64,
}

impl Ball {
    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }
}

/// Breadth-first layers around `center`; returns all points and the
/// cumulative count after each layer `0..=radius`.
fn layers(
    center: Point,
    radius: u64,
    budget: &SearchBudget,
) -> Result<(HashMap<Point, u64>, Vec<u64>)> {
    budget.check_radius(radius)?;
    let spread0 = center.spread()?;
    let mut dist = HashMap::from([(center, 0u64)]);
    let mut frontier = vec![center];
    let mut cumulative = vec![1u64];
    for r in 1..=radius {
        let mut next = Vec::new();
        for &u in &frontier {
            for g in StepOp::METRIC_GENERATORS {
                let v = g.apply(u)?;
                if dist.contains_key(&v) {
                    continue;
                }
                assert!(v.spread()? <= spread0 + r, "spread bound broken at {v}");
                dist.insert(v, r);
                next.push(v);
            }
        }
        budget.check_states(dist.len())?;
        cumulative.push(dist.len() as u64);
        frontier = next;
    }
    Ok((dist, cumulative))
}

pub fn ball(center: Point, radius: u64, budget: &SearchBudget) -> Result<Ball> {
    let (dist, _) = layers(center, radius, budget)?;
    let points: BTreeSet<Point> = dist.into_keys().collect();
    Ok(Ball {
        center,
        radius,
        area: points.len() as u64,
        points,
    })
}

/// Area of every ball around `center` of radius `0..=r_max`.
pub fn ball_areas(center: Point, r_max: u64, budget: &SearchBudget) -> Result<Vec<u64>> {
    layers(center, r_max, budget).map(|(_, areas)| areas)
}

/// Conjectured area of the radius-`r` ball (independent of the center on the diagonal).
pub fn ball_area_formula(r: u64) -> Result<u64> {
    let r = i128::from(r);
    let tail = if r % 2 == 0 { 12 } else { 15 };
    let cube = r
        .checked_mul(r)
        .and_then(|s| s.checked_mul(r))
        .ok_or(Error::Overflow)?;
    let num = cube
        .checked_mul(10)
        .and_then(|c| c.checked_add(9 * r * r + 26 * r + tail))
        .ok_or(Error::Overflow)?;
    assert_eq!(num % 12, 0, "numerator not divisible by 12 at r={r}");
    u64::try_from(num / 12).map_err(|_| Error::Overflow)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub ok: bool,
    pub first_mismatch: Option<u64>,
    pub areas: Vec<u64>,
    pub formula: Vec<u64>,
    /// Third differences of the area sequence run 6, 4, 6, 4, …
    pub third_differences_alternate: bool,
}

pub fn verify_ball_conjecture(r_max: u64, budget: &SearchBudget) -> Result<ConjectureReport> {
    let areas = ball_areas(Point::ORIGIN, r_max, budget)?;
    let formula = (0..=r_max)
        .map(ball_area_formula)
        .collect::<Result<Vec<_>>>()?;
    let first_mismatch = areas
        .iter()
        .zip(&formula)
        .position(|(a, f)| a != f)
        .map(|i| i as u64);

    let diff = |v: &[i64]| v.windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>();
    let signed: Vec<i64> = areas.iter().map(|&a| a as i64).collect();
    let third = diff(&diff(&diff(&signed)));
    let third_differences_alternate = third
        .iter()
        .enumerate()
        .all(|(i, &t)| t == if i % 2 == 0 { 6 } else { 4 });

    Ok(ConjectureReport {
        ok: first_mismatch.is_none() && third_differences_alternate,
        first_mismatch,
        areas,
        formula,
        third_differences_alternate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::VecDeque;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn d(p: Point, q: Point) -> u64 {
        pc_distance(p, q, &SearchBudget::default()).unwrap()
    }

    /// Plain single-source BFS until every point of `targets` is labelled.
    fn oracle_from(src: Point, targets: &BTreeSet<Point>) -> HashMap<Point, u64> {
        let mut dist = HashMap::from([(src, 0u64)]);
        let mut queue = VecDeque::from([src]);
        let mut remaining = targets.iter().filter(|t| **t != src).count();
        while remaining > 0 {
            let u = queue.pop_front().unwrap();
            let du = dist[&u];
            for g in StepOp::METRIC_GENERATORS {
                let v = g.apply(u).unwrap();
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(v) {
                    e.insert(du + 1);
                    if targets.contains(&v) {
                        remaining -= 1;
                    }
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    #[test]
    fn taxicab_examples() {
        assert_eq!(taxicab(pt(5, 2), pt(15, 23)).unwrap(), 31);
        assert_eq!(taxicab(pt(-4, 7), pt(-4, 7)).unwrap(), 0);
        assert_eq!(taxicab(pt(0, 0), pt(0, 1)).unwrap(), 1);
        assert_eq!(
            taxicab(pt(i64::MIN, i64::MIN), pt(i64::MAX, i64::MAX)).unwrap_err(),
            Error::Overflow
        );
    }

    #[test]
    fn neighbor_examples() {
        let n = neighbors(pt(0, 0)).unwrap();
        assert_eq!(
            n,
            BTreeSet::from([pt(1, 0), pt(-1, 0), pt(0, 1), pt(0, -1)])
        );
        let n = neighbors(pt(2, 5)).unwrap();
        assert_eq!(n.len(), 6);
        assert!(n.contains(&pt(9, 5)) && n.contains(&pt(2, 0)));
        for m in -5..5 {
            assert_eq!(neighbors(pt(m, m)).unwrap().len(), 4);
        }
        assert!(neighbors(pt(i64::MAX, 0)).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(d(pt(0, 0), pt(3, 6)), 3);
        assert_eq!(d(pt(5, 2), pt(15, 23)), 5);
        assert_eq!(d(pt(0, 0), pt(0, 1)), 1);
        assert_eq!(d(pt(0, 0), pt(1, 1)), 2);
        assert_eq!(d(pt(1, 1), pt(1, 1)), 0);
        let w = pc_witness(pt(0, 0), pt(3, 6), &SearchBudget::default()).unwrap();
        assert_eq!(w.word.len(), 3);
        assert!(w.replays());
    }

    #[test]
    fn budget_errors() {
        let tight = SearchBudget {
            max_radius: 3,
            max_states: 1_000_000,
        };
        assert!(matches!(
            pc_distance(pt(0, 0), pt(20, 0), &tight),
            Err(Error::BudgetExceeded { what: "radius", .. })
        ));
        let tiny = SearchBudget {
            max_radius: 100,
            max_states: 50,
        };
        assert!(matches!(
            pc_distance(pt(0, 0), pt(20, 0), &tiny),
            Err(Error::BudgetExceeded { what: "states", .. })
        ));
        assert!(ball(Point::ORIGIN, 4, &tight).is_err());
    }

    #[test]
    fn oracle_agreement_on_small_box() {
        let box6: BTreeSet<Point> = (-6..=6)
            .flat_map(|x| (-6..=6).map(move |y| pt(x, y)))
            .collect();
        let budget = SearchBudget::default();
        for &p in &box6 {
            let oracle = oracle_from(p, &box6);
            for &q in &box6 {
                assert_eq!(
                    pc_distance(p, q, &budget).unwrap(),
                    oracle[&q],
                    "{p} -> {q}"
                );
            }
        }
    }

    #[test]
    fn ball_examples() {
        let b = SearchBudget::default();
        assert_eq!(ball(Point::ORIGIN, 0, &b).unwrap().area, 1);
        assert_eq!(ball(Point::ORIGIN, 10, &b).unwrap().area, 931);
        assert_eq!(ball(pt(12, 0), 8, &b).unwrap().area, 2339);
        assert_eq!(ball(pt(3, 3), 10, &b).unwrap().area, 931);
    }

    #[test]
    fn ball_is_closed_under_inner_moves() {
        let b = SearchBudget::default();
        let center = pt(4, -1);
        let r = 6;
        let ball = ball(center, r, &b).unwrap();
        let oracle = oracle_from(center, &ball.points);
        for p in &ball.points {
            assert!(oracle[p] <= r);
            if oracle[p] < r {
                for n in neighbors(*p).unwrap() {
                    assert!(ball.contains(&n));
                }
            }
        }
        assert_eq!(ball.area, ball.points.len() as u64);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(ball_area_formula(0).unwrap(), 1);
        assert_eq!(ball_area_formula(10).unwrap(), 931);
        assert_eq!(ball_area_formula(17).unwrap(), 4349);
        assert_eq!(ball_area_formula(u64::MAX).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn conjecture_small() {
        let b = SearchBudget::default();
        let r = verify_ball_conjecture(17, &b).unwrap();
        assert!(r.ok);
        assert_eq!(
            r.areas,
            vec![
                1, 5, 15, 37, 75, 135, 221, 339, 493, 689, 931, 1225, 1575, 1987, 2465, 3015, 3641,
                4349
            ]
        );
        let r0 = verify_ball_conjecture(0, &b).unwrap();
        assert!(r0.ok && r0.areas == vec![1]);
    }

    #[test]
    fn diagonal_ball_swap_symmetry() {
        let b = SearchBudget::default();
        for m in [-3, 0, 5] {
            let ball = ball(pt(m, m), 7, &b).unwrap();
            for p in &ball.points {
                assert!(ball.contains(&pt(p.y, p.x)));
            }
        }
    }

    fn small() -> impl Strategy<Value = Point> {
        (-30i64..=30, -30i64..=30).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn metric_axioms(p in small(), q in small(), r in small()) {
            let (pq, qp) = (d(p, q), d(q, p));
            prop_assert_eq!(d(p, p), 0);
            prop_assert_eq!(pq, qp);
            prop_assert!(d(p, r) <= pq + d(q, r));
            prop_assert_eq!(pq == 0, p == q);
        }

        #[test]
        fn dominated_by_taxicab(p in small(), q in small()) {
            prop_assert!(d(p, q) <= taxicab(p, q).unwrap());
        }

        #[test]
        fn diagonal_translation(p in small(), q in small(), h in -50i64..50) {
            prop_assert_eq!(d(p.shifted(h).unwrap(), q.shifted(h).unwrap()), d(p, q));
        }

        #[test]
        fn witness_replays(p in small(), q in small()) {
            let w = pc_witness(p, q, &SearchBudget::default()).unwrap();
            prop_assert!(w.replays());
            prop_assert_eq!(w.source(), p);
            prop_assert_eq!(w.target(), q);
            prop_assert_eq!(w.word.len() as u64, d(p, q));
            prop_assert!(w.word.0.iter().all(|g| StepOp::METRIC_GENERATORS.contains(g)));
        }
    }
}
