//! Lattice points and the folded operators acting on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[inline]
pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `a·x + b·y + c`, checked.
#[inline]
fn affine(a: i64, x: i64, b: i64, y: i64, c: i64) -> Result<i64> {
    add(add(mul(a, x)?, mul(b, y)?)?, c)
}

/// A point of `ℤ²`.
///
/// Serializes as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Translation along the first diagonal, `(x + h, y + h)`.
    pub fn shifted(self, h: i64) -> Result<Point> {
        Ok(Point::new(add(self.x, h)?, add(self.y, h)?))
    }

    /// `x − y`, checked.
    pub fn diff(self) -> Result<i64> {
        sub(self.x, self.y)
    }

    /// The spread `|x − y|`.
    pub fn spread(self) -> Result<u64> {
        Ok(self.diff()?.unsigned_abs())
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Parses `"x,y"` (optional signs, no spaces).
impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("malformed point {s:?}, expected x,y"));
        let (x, y) = s.split_once(',').ok_or_else(bad)?;
        let parse = |t: &str| {
            if t.is_empty() || t.contains(char::is_whitespace) {
                return Err(bad());
            }
            t.parse::<i64>().map_err(|_| bad())
        };
        Ok(Point::new(parse(x)?, parse(y)?))
    }
}

/// Which half of a folded operator `{F′, F″}` acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `F′` rewrites the first coordinate.
    First,
    /// `F″` rewrites the second coordinate.
    Second,
}

/// The two-parameter family `F′(x,y) = (αx+βy+1, y)`, `F″(x,y) = (x, βx+αy+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenOpParams {
    pub alpha: i64,
    pub beta: i64,
    pub side: Side,
}

impl GenOpParams {
    pub const fn new(alpha: i64, beta: i64, side: Side) -> Self {
        GenOpParams { alpha, beta, side }
    }
}

pub fn apply_gen(params: GenOpParams, p: Point) -> Result<Point> {
    let GenOpParams { alpha, beta, side } = params;
    Ok(match side {
        Side::First => Point::new(affine(alpha, p.x, beta, p.y, 1)?, p.y),
        Side::Second => Point::new(p.x, affine(beta, p.x, alpha, p.y, 1)?),
    })
}

/// True iff `F′` and `F″` are involutions.
///
/// `F′∘F′(x,y) = (α²x + β(α+1)y + α + 1, y)`, so the identity requires
/// `α = −1`. The constant term keeps `α = 1, β = 0` from being the identity
/// (it is the shift `x ↦ x + 1`).
pub fn classify_involution(alpha: i64, _beta: i64) -> bool {
    alpha == -1
}

/// True iff `F′` and `F″` commute with diagonal translations `(x,y) ↦ (x+h, y+h)`.
pub fn classify_translation_invariant(alpha: i64, beta: i64) -> bool {
    alpha.checked_add(beta) == Some(1)
}

/// The concrete operator alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepOp {
    /// `K′(x,y) = (−x+y+1, y)`
    KPrime,
    /// `K″(x,y) = (x, x−y+1)`
    KDoublePrime,
    /// `L′(x,y) = (−x+2y+1, y)`
    LPrime,
    /// `L″(x,y) = (x, 2x−y+1)`
    LDoublePrime,
    /// `M′`: `x + 1`
    MRight,
    /// `M″`: `x − 1`
    MLeft,
    /// `M‴`: `y + 1`
    MUp,
    /// `Mⁱᵛ`: `y − 1`
    MDown,
}

impl StepOp {
    /// Generators of the parabolic-taxicab move graph, in tie-break order.
    pub const METRIC_GENERATORS: [StepOp; 6] = [
        StepOp::LPrime,
        StepOp::LDoublePrime,
        StepOp::MRight,
        StepOp::MLeft,
        StepOp::MUp,
        StepOp::MDown,
    ];

    pub fn apply(self, p: Point) -> Result<Point> {
        let Point { x, y } = p;
        Ok(match self {
            StepOp::KPrime => Point::new(affine(-1, x, 1, y, 1)?, y),
            StepOp::KDoublePrime => Point::new(x, affine(1, x, -1, y, 1)?),
            StepOp::LPrime => Point::new(affine(-1, x, 2, y, 1)?, y),
            StepOp::LDoublePrime => Point::new(x, affine(2, x, -1, y, 1)?),
            StepOp::MRight => Point::new(add(x, 1)?, y),
            StepOp::MLeft => Point::new(sub(x, 1)?, y),
            StepOp::MUp => Point::new(x, add(y, 1)?),
            StepOp::MDown => Point::new(x, sub(y, 1)?),
        })
    }

    pub fn inverse(self) -> StepOp {
        match self {
            StepOp::MRight => StepOp::MLeft,
            StepOp::MLeft => StepOp::MRight,
            StepOp::MUp => StepOp::MDown,
            StepOp::MDown => StepOp::MUp,
            involution => involution,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            StepOp::KPrime => "K'",
            StepOp::KDoublePrime => "K''",
            StepOp::LPrime => "L'",
            StepOp::LDoublePrime => "L''",
            StepOp::MRight => "M'",
            StepOp::MLeft => "M''",
            StepOp::MUp => "M'''",
            StepOp::MDown => "M^iv",
        }
    }
}

impl fmt::Display for StepOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for StepOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "K'" => StepOp::KPrime,
            "K''" => StepOp::KDoublePrime,
            "L'" => StepOp::LPrime,
            "L''" => StepOp::LDoublePrime,
            "M'" => StepOp::MRight,
            "M''" => StepOp::MLeft,
            "M'''" => StepOp::MUp,
            "M^iv" => StepOp::MDown,
            _ => return Err(Error::InvalidArgument(format!("unknown operator {s:?}"))),
        })
    }
}

impl Serialize for StepOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for StepOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn apply_step(op: StepOp, p: Point) -> Result<Point> {
    op.apply(p)
}

/// A sequence of operators, applied left to right (`ops[0]` first).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OpWord(pub Vec<StepOp>);

impl OpWord {
    pub fn new() -> Self {
        OpWord(Vec::new())
    }

    /// `len` operators alternating between `first` and `second`, starting with `first`.
    pub fn alternating(first: StepOp, second: StepOp, len: usize) -> Self {
        OpWord(
            (0..len)
                .map(|i| if i % 2 == 0 { first } else { second })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, op: StepOp) {
        self.0.push(op);
    }

    /// The word that undoes this one.
    pub fn inverse(&self) -> OpWord {
        OpWord(self.0.iter().rev().map(|op| op.inverse()).collect())
    }

    pub fn apply(&self, p: Point) -> Result<Point> {
        self.0.iter().try_fold(p, |q, op| op.apply(q))
    }

    /// Every point visited, starting with `p` itself.
    pub fn trace(&self, p: Point) -> Result<Vec<Point>> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(p);
        let mut q = p;
        for op in &self.0 {
            q = op.apply(q)?;
            out.push(q);
        }
        Ok(out)
    }
}

impl From<Vec<StepOp>> for OpWord {
    fn from(v: Vec<StepOp>) -> Self {
        OpWord(v)
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for op in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(op.symbol())?;
        }
        Ok(())
    }
}

pub fn apply_word(w: &OpWord, p: Point) -> Result<Point> {
    w.apply(p)
}

/// `T_k = k(k+1)/2`.
pub fn triangular(k: u64) -> Result<i64> {
    let k = i64::try_from(k).map_err(|_| Error::Overflow)?;
    triangular_signed(k)
}

/// `k(k+1)/2` for any `k`; note `T_{−1} = 0`.
pub(crate) fn triangular_signed(k: i64) -> Result<i64> {
    // one of k, k+1 is even
    let (a, b) = if k % 2 == 0 {
        (k / 2, add(k, 1)?)
    } else {
        (k, add(k, 1)? / 2)
    };
    mul(a, b)
}

/// Starting point for the closed-form iterates: on the x-axis `(a, 0)` or on
/// the y-axis `(0, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisStart {
    OnXAxis(i64),
    OnYAxis(i64),
}

impl AxisStart {
    pub fn point(self) -> Point {
        match self {
            AxisStart::OnXAxis(a) => Point::new(a, 0),
            AxisStart::OnYAxis(b) => Point::new(0, b),
        }
    }
}

/// Closed form of `n` alternating applications `L′, L″, L′, …` (starting with
/// `L′`) to a point on an axis.
///
/// With `u = ⌊(n+1)/2⌋` and `v = ⌊n/2⌋`:
///
/// ```text
/// (a, 0) ↦ ((1 − 2u)·a + T_{2u−1},  −2v·a + T_{2v})
/// (0, b) ↦ (2u·b + T_{2u−1},        (2v + 1)·b + T_{2v})
/// ```
pub fn alternating_iterate(n: u64, start: AxisStart) -> Result<Point> {
    let u = i64::try_from(n.div_ceil(2)).map_err(|_| Error::Overflow)?;
    let v = i64::try_from(n / 2).map_err(|_| Error::Overflow)?;
    let tu = triangular_signed(sub(mul(2, u)?, 1)?)?;
    let tv = triangular_signed(mul(2, v)?)?;
    match start {
        AxisStart::OnXAxis(a) => {
            let x = add(mul(sub(1, mul(2, u)?)?, a)?, tu)?;
            let y = add(mul(mul(-2, v)?, a)?, tv)?;
            Ok(Point::new(x, y))
        }
        AxisStart::OnYAxis(b) => {
            let x = add(mul(mul(2, u)?, b)?, tu)?;
            let y = add(mul(add(mul(2, v)?, 1)?, b)?, tv)?;
            Ok(Point::new(x, y))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use StepOp::*;

    const INVOLUTIONS: [StepOp; 4] = [KPrime, KDoublePrime, LPrime, LDoublePrime];

    fn pt(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn general_family_examples() {
        let f = |a, b, s, p| apply_gen(GenOpParams::new(a, b, s), p).unwrap();
        assert_eq!(f(2, 3, Side::First, pt(0, 0)), pt(1, 0));
        assert_eq!(f(-1, 2, Side::First, pt(1, 2)), pt(4, 2));
        assert_eq!(f(-1, 1, Side::Second, pt(3, 5)), pt(3, -1));
    }

    #[test]
    fn general_family_specializes_to_named_ops() {
        for x in -5..=5 {
            for y in -5..=5 {
                let p = pt(x, y);
                let g = |a, b, s| apply_gen(GenOpParams::new(a, b, s), p).unwrap();
                assert_eq!(g(-1, 1, Side::First), KPrime.apply(p).unwrap());
                assert_eq!(g(-1, 1, Side::Second), KDoublePrime.apply(p).unwrap());
                assert_eq!(g(-1, 2, Side::First), LPrime.apply(p).unwrap());
                assert_eq!(g(-1, 2, Side::Second), LDoublePrime.apply(p).unwrap());
            }
        }
    }

    #[test]
    fn step_examples() {
        assert_eq!(apply_step(LDoublePrime, pt(0, 0)).unwrap(), pt(0, 1));
        assert_eq!(apply_step(KPrime, pt(3, 5)).unwrap(), pt(3, 5));
        assert_eq!(apply_step(MDown, pt(14, 9)).unwrap(), pt(14, 8));
    }

    #[test]
    fn word_examples() {
        assert_eq!(apply_word(&OpWord::new(), pt(7, -3)).unwrap(), pt(7, -3));
        let w = OpWord(vec![LDoublePrime, LPrime, LDoublePrime]);
        assert_eq!(apply_word(&w, pt(0, 0)).unwrap(), pt(3, 6));
        assert_eq!(
            w.trace(pt(0, 0)).unwrap(),
            vec![pt(0, 0), pt(0, 1), pt(3, 1), pt(3, 6)]
        );
        let kk = OpWord(vec![KPrime, KPrime]);
        for (a, b) in [(0, 0), (-7, 12), (100, -3)] {
            assert_eq!(kk.apply(pt(a, b)).unwrap(), pt(a, b));
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(LPrime.apply(pt(0, i64::MAX)), Err(Error::Overflow));
        assert_eq!(MRight.apply(pt(i64::MAX, 0)), Err(Error::Overflow));
        assert_eq!(MDown.apply(pt(0, i64::MIN)), Err(Error::Overflow));
        assert_eq!(triangular(u64::MAX), Err(Error::Overflow));
        assert_eq!(triangular(1 << 33), Err(Error::Overflow));
    }

    #[test]
    fn classification_examples() {
        assert!(classify_involution(-1, 2));
        assert!(!classify_involution(2, 0));
        // F′ = (x+1, y): a translation, not the identity
        assert!(!classify_involution(1, 0));
        assert!(classify_translation_invariant(-1, 2));
        assert!(!classify_translation_invariant(-1, 1));
        assert!(classify_translation_invariant(1, 0));
    }

    fn brute_involution(alpha: i64, beta: i64) -> bool {
        [Side::First, Side::Second].into_iter().all(|side| {
            let f = GenOpParams::new(alpha, beta, side);
            (-6..=6).all(|x| {
                (-6..=6).all(|y| {
                    let p = pt(x, y);
                    apply_gen(f, apply_gen(f, p).unwrap()).unwrap() == p
                })
            })
        })
    }

    fn brute_translation_invariant(alpha: i64, beta: i64) -> bool {
        [Side::First, Side::Second].into_iter().all(|side| {
            let f = GenOpParams::new(alpha, beta, side);
            (-4..=4).all(|x| {
                (-4..=4).all(|y| {
                    (-3..=3).all(|h| {
                        let p = pt(x, y);
                        apply_gen(f, p.shifted(h).unwrap()).unwrap()
                            == apply_gen(f, p).unwrap().shifted(h).unwrap()
                    })
                })
            })
        })
    }

    #[test]
    fn classification_agrees_with_brute_force() {
        for alpha in -4..=4 {
            for beta in -4..=4 {
                assert_eq!(
                    classify_involution(alpha, beta),
                    brute_involution(alpha, beta),
                    "{alpha},{beta}"
                );
                assert_eq!(
                    classify_translation_invariant(alpha, beta),
                    brute_translation_invariant(alpha, beta),
                    "{alpha},{beta}"
                );
            }
        }
    }

    #[test]
    fn k_ops_are_not_translation_invariant() {
        let p = Point::ORIGIN;
        for op in [KPrime, KDoublePrime] {
            let lhs = op.apply(p.shifted(1).unwrap()).unwrap();
            let rhs = op.apply(p).unwrap().shifted(1).unwrap();
            assert_ne!(lhs, rhs, "{op}");
        }
    }

    #[test]
    fn triangular_examples() {
        assert_eq!(triangular(0).unwrap(), 0);
        assert_eq!(triangular(62).unwrap(), 1953);
        assert_eq!(triangular(63).unwrap(), 2016);
        assert_eq!(triangular_signed(-1).unwrap(), 0);
        for k in 0..2000u64 {
            assert_eq!(
                triangular(k + 1).unwrap() - triangular(k).unwrap(),
                k as i64 + 1
            );
        }
    }

    #[test]
    fn alternating_iterate_examples() {
        assert_eq!(
            alternating_iterate(0, AxisStart::OnXAxis(5)).unwrap(),
            pt(5, 0)
        );
        for a in [-3, 0, 4, 11] {
            assert_eq!(
                alternating_iterate(2, AxisStart::OnXAxis(a)).unwrap(),
                pt(-a + 1, -2 * a + 3)
            );
        }
        for b in [-3, 0, 4, 11] {
            assert_eq!(
                alternating_iterate(5, AxisStart::OnYAxis(b)).unwrap(),
                pt(6 * b + 15, 5 * b + 10)
            );
        }
    }

    #[test]
    fn alternating_iterate_matches_iteration() {
        for a in -20..=20 {
            for start in [AxisStart::OnXAxis(a), AxisStart::OnYAxis(a)] {
                let mut q = start.point();
                for n in 0..=100u64 {
                    assert_eq!(alternating_iterate(n, start).unwrap(), q, "n={n} {start:?}");
                    q = if n % 2 == 0 { LPrime } else { LDoublePrime }
                        .apply(q)
                        .unwrap();
                }
                let w = OpWord::alternating(LPrime, LDoublePrime, 100);
                assert_eq!(
                    w.apply(start.point()).unwrap(),
                    alternating_iterate(100, start).unwrap()
                );
            }
        }
    }

    #[test]
    fn point_parsing() {
        assert_eq!("3,-6".parse::<Point>().unwrap(), pt(3, -6));
        assert_eq!("+2,0".parse::<Point>().unwrap(), pt(2, 0));
        for bad in ["3", "3, 6", ",1", "a,b", "1,2,3", ""] {
            assert!(bad.parse::<Point>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn step_op_symbols_round_trip() {
        for op in [
            KPrime,
            KDoublePrime,
            LPrime,
            LDoublePrime,
            MRight,
            MLeft,
            MUp,
            MDown,
        ] {
            assert_eq!(op.symbol().parse::<StepOp>().unwrap(), op);
        }
    }

    proptest! {
        #[test]
        fn involutions_square_to_identity(x in -10_000i64..10_000, y in -10_000i64..10_000) {
            let p = pt(x, y);
            for op in INVOLUTIONS {
                prop_assert_eq!(op.apply(op.apply(p).unwrap()).unwrap(), p);
            }
        }

        #[test]
        fn m_ops_invert_each_other(x in -10_000i64..10_000, y in -10_000i64..10_000) {
            let p = pt(x, y);
            for op in [MRight, MLeft, MUp, MDown] {
                prop_assert_eq!(op.inverse().apply(op.apply(p).unwrap()).unwrap(), p);
            }
        }

        #[test]
        fn l_ops_commute_with_diagonal_shift(x in -1000i64..1000, y in -1000i64..1000, h in -1000i64..1000) {
            let p = pt(x, y);
            for op in [LPrime, LDoublePrime] {
                prop_assert_eq!(
                    op.apply(p.shifted(h).unwrap()).unwrap(),
                    op.apply(p).unwrap().shifted(h).unwrap()
                );
            }
        }

        #[test]
        fn word_inverse_undoes(ops in proptest::collection::vec(0usize..8, 0..20), x in -100i64..100, y in -100i64..100) {
            let all = [KPrime, KDoublePrime, LPrime, LDoublePrime, MRight, MLeft, MUp, MDown];
            let w = OpWord(ops.into_iter().map(|i| all[i]).collect());
            let p = pt(x, y);
            prop_assert_eq!(w.inverse().apply(w.apply(p).unwrap()).unwrap(), p);
        }
    }
}
