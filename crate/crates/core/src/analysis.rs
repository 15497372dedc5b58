//! Decision procedures over expansions: termination horizons, digit-period
//! detection under periodic base sequences, unit-fraction closed forms,
//! constant-shift windows, and the block-grouping rationality check.
//!
//! Procedures that quantify over all positions of an unbounded base sequence
//! take an explicit horizon or bound and never scan past it; where the spec
//! parameters decide a property outright (constant, periodic, affine,
//! factorial, prefixed), the result is additionally certified for every
//! index, not just the inspected ones.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::expansion::{digit_stream, shift_n, Rational};
use crate::representation::CantorRepr;
use crate::sequences::{BaseSequenceSpec, SpecKind};

/// Smallest `k <= bound` such that `r` divides `q_1 q_2 ... q_k`, if any.
///
/// Iterates the residual `m <- m / gcd(m, q_k)` starting from `m = r`; the
/// residual after step `k` equals `r / gcd(r, Q_k)`, so it hits 1 exactly at
/// the first divisible partial product. Every reduced fraction with
/// denominator `r` then has a terminating expansion, with all digits past
/// `k` equal to zero. Absence within the bound is a value, not an error.
pub fn finiteness_horizon(r: &BigInt, spec: &BaseSequenceSpec, bound: u64) -> Option<u64> {
    assert!(*r >= BigInt::one(), "denominator must be positive");
    let mut residual = r.clone();
    for k in 1..=bound {
        let g = residual.gcd(&spec.q_at(k));
        residual /= g;
        if residual.is_one() {
            return Some(k);
        }
    }
    None
}

/// Result of [`detect_period`].
///
/// `preperiod_len` and `period_len` are minimal in the sense of the residue
/// state map (residue, position mod base-sequence period): the first revisit
/// of a state fixes them. The digit lists are the aligned form ready for
/// evaluation: `preperiod_digits` is padded to the next multiple of the
/// base-sequence period (so its length may exceed `preperiod_len`) and
/// `period_digits` is the cycle read from there, whose length always equals
/// `period_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub preperiod_len: u64,
    pub period_len: u64,
    pub preperiod_digits: Vec<BigInt>,
    pub period_digits: Vec<BigInt>,
}

impl PeriodReport {
    pub fn aligned_preperiod_len(&self) -> u64 {
        self.preperiod_digits.len() as u64
    }

    pub fn to_repr(&self, spec: &BaseSequenceSpec) -> Result<CantorRepr, Error> {
        CantorRepr::eventually_periodic(
            self.preperiod_digits.clone(),
            self.period_digits.clone(),
            spec.clone(),
        )
    }
}

/// Find the eventual period of the digits of `x` under a periodic (or
/// constant) base sequence.
///
/// The extraction state `(residue, position mod L)` lives in a space of at
/// most `den * L` points and steps deterministically, so recording first
/// visits finds the entry point and cycle within `den * L + 1` digits.
pub fn detect_period(x: &Rational, spec: &BaseSequenceSpec) -> Result<PeriodReport, Error> {
    let cycle = spec.period_len().ok_or(Error::NonPeriodicSpec)?;
    let mut stream = digit_stream(x, spec)?;
    let mut digits: Vec<BigInt> = Vec::new();
    let mut first_visit: HashMap<(BigInt, u64), u64> = HashMap::new();
    first_visit.insert((stream.state().residue.clone(), 0), 0);
    loop {
        digits.push(stream.next().expect("stream is unbounded"));
        let n = stream.state().step;
        let key = (stream.state().residue.clone(), n % cycle);
        if let Some(&entry) = first_visit.get(&key) {
            let period_len = n - entry;
            let aligned = entry.div_ceil(cycle) * cycle;
            while (digits.len() as u64) < aligned + period_len {
                digits.push(stream.next().expect("stream is unbounded"));
            }
            let preperiod_digits = digits[..aligned as usize].to_vec();
            let period_digits =
                digits[aligned as usize..(aligned + period_len) as usize].to_vec();
            return Ok(PeriodReport {
                preperiod_len: entry,
                period_len,
                preperiod_digits,
                period_digits,
            });
        }
        first_visit.insert(key, n);
    }
}

/// Digits of `1/w` when they follow the closed form `(q_k - 1) / w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitFractionOutcome {
    Expansion(UnitFractionExpansion),
    /// `w` does not divide `q_k - 1` at this position; no closed form.
    NotDivisible { first_failing_index: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitFractionExpansion {
    /// `(q_k - 1) / w` for `k = 1 ..= horizon`.
    pub digits: Vec<BigInt>,
    /// True when the spec parameters prove divisibility at every index,
    /// not only up to the horizon.
    pub certified_for_all_indices: bool,
}

/// Closed-form digits of `1/w`: position `k` holds `(q_k - 1) / w` whenever
/// `w` divides every `q_k - 1`. `w = 1` yields the all-maximal digit string,
/// the representation of 1. For `w >= 2` the closed form is checked against
/// the extraction stream of `1/w` before returning.
pub fn unit_fraction_digits(
    w: &BigInt,
    spec: &BaseSequenceSpec,
    horizon: u64,
) -> UnitFractionOutcome {
    assert!(*w >= BigInt::one(), "w must be a positive integer");
    assert!(horizon >= 1, "horizon must be positive");
    let mut digits = Vec::with_capacity(horizon as usize);
    for k in 1..=horizon {
        let (digit, rem) = (spec.q_at(k) - BigInt::one()).div_rem(w);
        if !rem.is_zero() {
            return UnitFractionOutcome::NotDivisible {
                first_failing_index: k,
            };
        }
        digits.push(digit);
    }
    if *w > BigInt::one() {
        let x = Rational::new(BigInt::one(), w.clone()).expect("w >= 2 is proper");
        let streamed: Vec<BigInt> = digit_stream(&x, spec)
            .expect("1/w is a valid expansion input")
            .take(horizon as usize)
            .collect();
        assert_eq!(digits, streamed, "closed form must match extraction");
    }
    UnitFractionOutcome::Expansion(UnitFractionExpansion {
        digits,
        certified_for_all_indices: divides_every_base_less_one(w, spec),
    })
}

/// Does `w` divide `q_k - 1` for every `k >= 1`? Decided from the spec
/// parameters alone. For an affine sequence the differences `q_{k+1} - q_k`
/// equal the slope, so divisibility everywhere reduces to the slope and the
/// first term.
fn divides_every_base_less_one(w: &BigInt, spec: &BaseSequenceSpec) -> bool {
    if w.is_one() {
        return true;
    }
    let divides = |value: BigInt| (value % w).is_zero();
    match spec.kind() {
        SpecKind::Constant(b) => divides(b - BigInt::one()),
        SpecKind::Periodic(entries) => entries.iter().all(|e| divides(e - BigInt::one())),
        SpecKind::Affine { slope, intercept } => {
            divides(slope.clone()) && divides(slope + intercept - BigInt::one())
        }
        SpecKind::Factorial => false, // q_1 - 1 = 1 admits only w = 1
        SpecKind::ExplicitPrefix { prefix, tail } => {
            prefix.iter().all(|e| divides(e - BigInt::one()))
                && divides_every_base_less_one(w, tail)
        }
    }
}

/// Witness for [`constant_shift_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantShiftReport {
    /// The digit relation held at every window position.
    pub holds: bool,
    /// Smallest base over the window `start < n <= horizon`.
    pub min_base: BigInt,
    /// First position attaining `min_base`.
    pub min_base_step: u64,
    /// Digit at that position; the relation scales it to every other base.
    pub reference_digit: BigInt,
    /// First window position where the relation fails.
    pub first_violation: Option<u64>,
    /// Independent cross-check: the shifted value was identical across the
    /// whole window.
    pub shift_constant: bool,
    /// The shifted value at `start`.
    pub shift_value: Rational,
}

/// Check whether the digits over `start < n <= horizon` follow the constant
/// shift pattern: with `q0` the smallest base in the window and `e0` the
/// digit at its first attainment, every window digit must equal
/// `e0 * (q_n - 1) / (q0 - 1)` exactly (an integer). The shifted values over
/// the same window are compared as an independent cross-check.
pub fn constant_shift_check(
    x: &Rational,
    spec: &BaseSequenceSpec,
    start: u64,
    horizon: u64,
) -> Result<ConstantShiftReport, Error> {
    assert!(horizon > start, "window must be non-empty");
    let digits: Vec<BigInt> = digit_stream(x, spec)?.take(horizon as usize).collect();
    let digit_at = |n: u64| &digits[(n - 1) as usize];

    let mut min_base = spec.q_at(start + 1);
    let mut min_base_step = start + 1;
    for n in (start + 2)..=horizon {
        let base = spec.q_at(n);
        if base < min_base {
            min_base = base;
            min_base_step = n;
        }
    }
    let reference_digit = digit_at(min_base_step).clone();
    let scale = &min_base - BigInt::one();

    let mut first_violation = None;
    for n in (start + 1)..=horizon {
        let (expected, rem) = (&reference_digit * (spec.q_at(n) - BigInt::one())).div_rem(&scale);
        if !rem.is_zero() || expected != *digit_at(n) {
            first_violation = Some(n);
            break;
        }
    }

    let shift_value = shift_n(x, spec, start)?;
    let mut shift_constant = true;
    for n in (start + 1)..=horizon {
        if shift_n(x, spec, n)? != shift_value {
            shift_constant = false;
            break;
        }
    }

    Ok(ConstantShiftReport {
        holds: first_violation.is_none(),
        min_base,
        min_base_step,
        reference_digit,
        first_violation,
        shift_constant,
        shift_value,
    })
}

/// Result of [`grouping_ratios`]: one entry per block `(n_k, n_{k+1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupingReport {
    pub breakpoints: Vec<u64>,
    /// Mixed-radix value of each block's digits.
    pub block_values: Vec<BigInt>,
    /// Product of each block's bases, minus one.
    pub block_denominators: Vec<BigInt>,
    /// Reduced `value / denominator` per block.
    pub ratios: Vec<Rational>,
    pub constant: bool,
    /// The shared ratio when `constant`; equals the value shifted past the
    /// first breakpoint when the pattern continues beyond the horizon.
    pub common_ratio: Option<Rational>,
    /// Smallest block denominator (set when `constant`).
    pub min_denominator: Option<BigInt>,
    /// Block value rescaled to the smallest denominator (set when
    /// `constant`): every block value is this times `denominator / min`.
    pub value_at_min: Option<BigInt>,
}

/// Group digits into blocks `(n_k, n_{k+1}]` and compare the block ratios.
///
/// Each block contributes its digit value over its base product minus one;
/// all ratios being equal certifies the grouped expansion as the constant
/// geometric pattern of a rational.
pub fn grouping_ratios(
    x: &Rational,
    spec: &BaseSequenceSpec,
    breakpoints: &[u64],
    horizon: u64,
) -> Result<GroupingReport, Error> {
    if breakpoints.len() < 3 {
        return Err(Error::MalformedBreakpoints {
            message: format!(
                "need at least two blocks (three breakpoints), got {}",
                breakpoints.len()
            ),
        });
    }
    for pair in breakpoints.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::MalformedBreakpoints {
                message: format!("breakpoints must be strictly increasing ({} >= {})", pair[0], pair[1]),
            });
        }
    }
    let last = *breakpoints.last().expect("non-empty");
    if last > horizon {
        return Err(Error::MalformedBreakpoints {
            message: format!("last breakpoint {last} exceeds horizon {horizon}"),
        });
    }

    let digits: Vec<BigInt> = digit_stream(x, spec)?.take(last as usize).collect();
    let mut block_values = Vec::new();
    let mut block_denominators = Vec::new();
    let mut ratios = Vec::new();
    for pair in breakpoints.windows(2) {
        let mut value = BigInt::zero();
        let mut product = BigInt::one();
        for n in (pair[0] + 1)..=pair[1] {
            let base = spec.q_at(n);
            value = value * &base + &digits[(n - 1) as usize];
            product *= base;
        }
        let denominator = product - BigInt::one();
        ratios.push(Rational::new(value.clone(), denominator.clone())?);
        block_values.push(value);
        block_denominators.push(denominator);
    }

    let constant = ratios.windows(2).all(|pair| pair[0] == pair[1]);
    let (common_ratio, min_denominator, value_at_min) = if constant {
        let ratio = ratios[0].clone();
        let min = block_denominators.iter().min().cloned().expect("non-empty");
        // the reduced denominator divides every block denominator
        let (scaled, rem) = (ratio.num() * &min).div_rem(ratio.den());
        assert!(rem.is_zero(), "common ratio must scale to an integer");
        (Some(ratio), Some(min), Some(scaled))
    } else {
        (None, None, None)
    };

    Ok(GroupingReport {
        breakpoints: breakpoints.to_vec(),
        block_values,
        block_denominators,
        ratios,
        constant,
        common_ratio,
        min_denominator,
        value_at_min,
    })
}
