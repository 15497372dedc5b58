//! Exact arithmetic for Cantor series number systems.
//!
//! A Cantor series fixes a base sequence `Q = (q_k)` with every `q_k >= 2`
//! and writes numbers in `[0, 1]` as sums of `d_k / (q_1 q_2 ... q_k)` with
//! digits `0 <= d_k <= q_k - 1`; a constant sequence recovers the ordinary
//! base-`b` expansion. This crate provides:
//!
//! * [`sequences`] — finitely described base sequences (constant, periodic,
//!   affine, factorial, explicit prefixes), their spec-string grammar, and
//!   exact partial products;
//! * [`expansion`] — streaming digit extraction for rationals via a
//!   bounded-residue recurrence, a from-scratch big-integer oracle for any
//!   single step, the shift operator, and the partial-sum decomposition
//!   identity;
//! * [`representation`] — finite / eventually periodic / truncated digit
//!   representations, exact evaluation back to reduced rationals, cylinder
//!   intervals, and truncation bounds;
//! * [`analysis`] — termination horizons, digit-period detection under
//!   periodic base sequences, unit-fraction closed forms, constant-shift
//!   windows, and block-grouping ratio checks.
//!
//! All arithmetic is exact; nothing ever rounds.
//!
//! ```
//! use cantor_series::{digit_stream, parse_spec, Rational};
//!
//! let odd = parse_spec("odd").unwrap(); // bases 3, 5, 7, ...
//! let x: Rational = "1/4".parse().unwrap();
//! let digits: Vec<_> = digit_stream(&x, &odd).unwrap().take(8).collect();
//! assert_eq!(cantor_series::render_digits(&digits), "035229[11]4");
//! ```

pub mod analysis;
pub mod error;
pub mod expansion;
pub mod representation;
pub mod sequences;

pub use analysis::{
    constant_shift_check, detect_period, finiteness_horizon, grouping_ratios,
    unit_fraction_digits, ConstantShiftReport, GroupingReport, PeriodReport,
    UnitFractionExpansion, UnitFractionOutcome,
};
pub use error::Error;
pub use expansion::{
    digit_stream, digits_direct, parse_digits, render_digits, shift_n, verify_decomposition,
    DigitStream, ExtractionState, ExtractionTrace, Rational,
};
pub use representation::{
    cylinder_interval, eval_finite, eval_periodic, truncation_bound, CantorRepr, Cylinder,
    ReprKind,
};
pub use sequences::{parse_spec, BaseSequenceSpec, PartialProduct, SpecKind};
