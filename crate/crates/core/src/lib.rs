//! Integer-lattice dynamics of the folded operators `K′/K″` and `L′/L″`.
//!
//! Alternating `K′` and `K″` sends every lattice point around a closed cycle of
//! (at most) six points; alternating `L′` and `L″` walks it up a discrete
//! parabola whose rungs sit on triangular numbers. Both families of orbits
//! partition `ℤ²`. Adding unit grid moves to the `L` ladders gives the
//! parabolic-taxicab metric, whose balls grow cubically.
//!
//! All arithmetic is exact: coordinates are checked `i64` values and every
//! overflow surfaces as [`Error::Overflow`].
//!
//! | module | contents |
//! |--------|----------|
//! | [`ops`] | points, the operator alphabet, the `(α, β)` family, words |
//! | [`cycles`] | six-point `K` cycles, degeneracy, path statistics |
//! | [`families`] | square/cube parameterized cycles, prime hex-tuples, sieve |
//! | [`parabolas`] | vertices, descent, ladders, parabola classes |
//! | [`densities`] | triangular numbers modulo a prime |
//! | [`metric`] | taxicab and parabolic-taxicab distances, balls |
//! | [`cli`] | the `ltraj` command-line front end and SVG output |

pub mod cli;
pub mod cycles;
pub mod densities;
mod error;
pub mod families;
pub mod metric;
pub mod ops;
pub mod parabolas;
pub mod svg;

pub use error::{Error, Result};
pub use ops::{OpWord, Point, StepOp};
