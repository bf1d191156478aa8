//! Dual-pivot quicksort with parametric pivot sampling, full cost
//! instrumentation, and an exact average-case analysis toolkit.
//!
//! The sampling parameter t = (t1, t2, t3) controls how a partitioning
//! step picks its two pivots: out of a sample of k = t1 + t2 + t3 + 2
//! elements, the pivots are chosen so that t1 sample elements lie below
//! the lower pivot, t2 between the pivots, and t3 above the upper pivot.
//! The crate provides
//!
//! * [`sort`]: the sorting algorithm itself, counting comparisons, swaps,
//!   and an abstract instruction measure per partitioning step,
//! * [`cost`]: per-step tolls from observed statistics and their exact
//!   expectations over uniformly random inputs,
//! * [`analysis`]: discrete and continuous entropy, leading-term
//!   coefficients, and closed-form identities behind the n log n law,
//! * [`recurrence`]: an exact full-history recurrence for expected
//!   partitioning costs plus an exhaustive brute-force oracle,
//! * [`dist`]: samplers and exact moments for the partition-size law,
//! * [`optimize`]: discrete and continuous search for cost-optimal t.
//!
//! Everything analytical is computed in exact rational arithmetic; floats
//! appear only in continuous limits, samplers, and display helpers.
//!
//! The crate is `no_std` compatible (with `alloc`); the default `std`
//! feature only forwards to the numeric dependencies.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod cost;
pub mod dist;
pub mod optimize;
pub mod params;
mod rational;
pub mod recurrence;
pub mod sort;

pub use cost::CostMeasure;
pub use params::{CallType, ParamError, PivotParams};
pub use rational::{rational_to_f64, Rational};
pub use sort::{sort, CostLedger, StepStats};
