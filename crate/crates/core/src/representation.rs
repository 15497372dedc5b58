//! Digit representations and their exact evaluation.
//!
//! [`CantorRepr`] pairs a digit list with the base sequence it is relative
//! to: a finite (canonical, no trailing zeros) expansion, an eventually
//! periodic one over a periodic base sequence, or a bare truncated prefix.
//! Evaluation is exact; cylinders carry their interval endpoints as reduced
//! rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::expansion::{parse_digits, render_digits, Rational};
use crate::sequences::{parse_spec, BaseSequenceSpec};

/// The shape of a digit representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReprKind {
    /// Terminating expansion, trailing zeros trimmed.
    Finite(Vec<BigInt>),
    /// Preperiod then period, repeating forever. Only meaningful over a
    /// periodic (or constant) base sequence; both parts are aligned to the
    /// base-sequence period.
    EventuallyPeriodic {
        preperiod: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    /// A prefix of an expansion, kept verbatim.
    Truncated(Vec<BigInt>),
}

/// A digit representation relative to a base sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorRepr {
    kind: ReprKind,
    spec: BaseSequenceSpec,
}

/// Rank-`m` cylinder: all numbers whose first `m` digits equal `base`.
/// A closed interval of length exactly `1 / (q_1...q_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    base: Vec<BigInt>,
    spec: BaseSequenceSpec,
    left: Rational,
    right: Rational,
}

impl Cylinder {
    pub fn base(&self) -> &[BigInt] {
        &self.base
    }

    pub fn spec(&self) -> &BaseSequenceSpec {
        &self.spec
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn rank(&self) -> u64 {
        self.base.len() as u64
    }

    /// Closed-interval membership.
    pub fn contains(&self, x: &Rational) -> bool {
        self.left <= *x && *x <= self.right
    }
}

/// Check `0 <= digit <= q_k - 1` for digits occupying 1-based positions
/// `offset + 1 ..= offset + len`.
fn check_digit_bounds(
    digits: &[BigInt],
    spec: &BaseSequenceSpec,
    offset: u64,
) -> Result<(), Error> {
    for (i, d) in digits.iter().enumerate() {
        let position = offset + i as u64 + 1;
        let base = spec.q_at(position);
        if d.is_negative() || *d >= base {
            return Err(Error::DigitOutOfRange {
                position,
                digit: d.clone(),
                base,
            });
        }
    }
    Ok(())
}

/// Exact value of a finite digit list: the sum of `d_k / (q_1...q_k)`.
///
/// Horner form: the cumulative digit value `C = d_1 q_2...q_n + ... + d_n`
/// over the full product `Q_n`, reduced at the end.
pub fn eval_finite(digits: &[BigInt], spec: &BaseSequenceSpec) -> Result<Rational, Error> {
    check_digit_bounds(digits, spec, 0)?;
    let mut cumulative = BigInt::zero();
    let mut product = BigInt::one();
    for (i, d) in digits.iter().enumerate() {
        let base = spec.q_at(i as u64 + 1);
        cumulative = cumulative * &base + d;
        product *= base;
    }
    Rational::new(cumulative, product)
}

/// Exact value of preperiod + repeating period over a periodic base
/// sequence: `A + (1 / Q_m) * N / (P - 1)` where `A` is the preperiod value,
/// `P` the product of bases across one period block and `N` the block's
/// digit value.
///
/// Both the preperiod and the period must be aligned (lengths multiples of
/// the base-sequence period) and the all-maximal period is rejected: it is
/// the dual form of a terminating expansion.
pub fn eval_periodic(
    preperiod: &[BigInt],
    period: &[BigInt],
    spec: &BaseSequenceSpec,
) -> Result<Rational, Error> {
    validate_periodic_parts(preperiod, period, spec)?;
    let m = preperiod.len() as u64;
    let all_max = period.iter().enumerate().all(|(j, d)| {
        let base = spec.q_at(m + j as u64 + 1);
        *d == base - BigInt::one()
    });
    if all_max {
        return Err(Error::NonCanonicalTail);
    }

    let head = eval_finite(preperiod, spec)?;
    let mut block_value = BigInt::zero();
    let mut block_product = BigInt::one();
    for (j, d) in period.iter().enumerate() {
        let base = spec.q_at(m + j as u64 + 1);
        block_value = block_value * &base + d;
        block_product *= base;
    }
    let head_product = spec.partial_product(m).into_value();
    let tail = BigRational::new(block_value, head_product * (block_product - BigInt::one()));
    Rational::from_big_rational(head.as_big_rational() + tail)
}

fn validate_periodic_parts(
    preperiod: &[BigInt],
    period: &[BigInt],
    spec: &BaseSequenceSpec,
) -> Result<(), Error> {
    let cycle = spec.period_len().ok_or(Error::NonPeriodicSpec)?;
    if period.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let m = preperiod.len() as u64;
    if !m.is_multiple_of(cycle) {
        return Err(Error::MisalignedPreperiod {
            len: m,
            period: cycle,
        });
    }
    if !(period.len() as u64).is_multiple_of(cycle) {
        return Err(Error::MisalignedPeriod {
            len: period.len() as u64,
            period: cycle,
        });
    }
    check_digit_bounds(preperiod, spec, 0)?;
    check_digit_bounds(period, spec, m)?;
    Ok(())
}

/// The rank-`m` cylinder over `base`: endpoints `[value, value + 1/Q_m]`.
pub fn cylinder_interval(base: &[BigInt], spec: &BaseSequenceSpec) -> Result<Cylinder, Error> {
    let left = eval_finite(base, spec)?;
    let product = spec.partial_product(base.len() as u64).into_value();
    let width = BigRational::new(BigInt::one(), product);
    let right = Rational::from_big_rational(left.as_big_rational() + width)?;
    Ok(Cylinder {
        base: base.to_vec(),
        spec: spec.clone(),
        left,
        right,
    })
}

/// Width of the rank-`n` enclosure: `1 / (q_1...q_n)`. The `n`-digit partial
/// sum `S_n` of a valid expansion input satisfies `S_n <= x < S_n + bound`.
pub fn truncation_bound(
    x: &Rational,
    spec: &BaseSequenceSpec,
    n: u64,
) -> Result<Rational, Error> {
    if !x.is_proper() {
        return Err(Error::ImproperInput {
            num: x.num().clone(),
            den: x.den().clone(),
        });
    }
    Rational::new(BigInt::one(), spec.partial_product(n).into_value())
}

impl CantorRepr {
    /// Canonical terminating representation; trailing zeros are trimmed.
    pub fn finite(mut digits: Vec<BigInt>, spec: BaseSequenceSpec) -> Result<Self, Error> {
        check_digit_bounds(&digits, &spec, 0)?;
        while digits.last().is_some_and(Zero::is_zero) {
            digits.pop();
        }
        Ok(Self {
            kind: ReprKind::Finite(digits),
            spec,
        })
    }

    /// A verbatim prefix; trailing zeros are kept.
    pub fn truncated(digits: Vec<BigInt>, spec: BaseSequenceSpec) -> Result<Self, Error> {
        check_digit_bounds(&digits, &spec, 0)?;
        Ok(Self {
            kind: ReprKind::Truncated(digits),
            spec,
        })
    }

    /// Preperiod + period over a periodic (or constant) base sequence; both
    /// lengths must be multiples of the base-sequence period.
    pub fn eventually_periodic(
        preperiod: Vec<BigInt>,
        period: Vec<BigInt>,
        spec: BaseSequenceSpec,
    ) -> Result<Self, Error> {
        validate_periodic_parts(&preperiod, &period, &spec)?;
        Ok(Self {
            kind: ReprKind::EventuallyPeriodic { preperiod, period },
            spec,
        })
    }

    pub fn kind(&self) -> &ReprKind {
        &self.kind
    }

    pub fn spec(&self) -> &BaseSequenceSpec {
        &self.spec
    }

    /// Exact value of the representation.
    pub fn value(&self) -> Result<Rational, Error> {
        match &self.kind {
            ReprKind::Finite(digits) | ReprKind::Truncated(digits) => {
                eval_finite(digits, &self.spec)
            }
            ReprKind::EventuallyPeriodic { preperiod, period } => {
                eval_periodic(preperiod, period, &self.spec)
            }
        }
    }

    /// One-line record: `<spec> | <digits>`, with an eventually periodic
    /// part written as `<preperiod>(<period>)`.
    pub fn to_record_line(&self) -> String {
        match &self.kind {
            ReprKind::Finite(digits) | ReprKind::Truncated(digits) => {
                format!("{} | {}", self.spec, render_digits(digits))
            }
            ReprKind::EventuallyPeriodic { preperiod, period } => format!(
                "{} | {}({})",
                self.spec,
                render_digits(preperiod),
                render_digits(period)
            ),
        }
    }

    /// Parse a record line. Plain digit payloads come back as `Truncated`
    /// (the line format does not distinguish a canonical finite expansion
    /// from a prefix); `pre(period)` payloads come back eventually periodic.
    pub fn parse_record_line(line: &str) -> Result<Self, Error> {
        let (spec_text, payload) = line.split_once(" | ").ok_or_else(|| Error::RecordSyntax {
            message: format!("expected '<spec> | <digits>', got {line:?}"),
        })?;
        let spec = parse_spec(spec_text)?;
        if let Some(open) = payload.find('(') {
            let rest = &payload[open + 1..];
            let close = rest.len().checked_sub(1).filter(|_| rest.ends_with(')')).ok_or_else(
                || Error::RecordSyntax {
                    message: "unterminated period group".into(),
                },
            )?;
            let preperiod = parse_digits(&payload[..open])?;
            let period = parse_digits(&rest[..close])?;
            Self::eventually_periodic(preperiod, period, spec)
        } else {
            Self::truncated(parse_digits(payload)?, spec)
        }
    }
}
