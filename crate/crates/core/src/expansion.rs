//! Digit extraction for rationals in a Cantor series base.
//!
//! A proper fraction `p/r` has digits `d_1, d_2, ...` with
//! `0 <= d_n <= q_n - 1` such that `p/r` is the sum of `d_n / (q_1...q_n)`.
//! Two routes compute them:
//!
//! * [`DigitStream`] iterates the reduced residue: starting from `p`, each
//!   step multiplies by `q_n`, splits off the quotient by `r` as the digit,
//!   and keeps the remainder. Intermediate values never exceed `r * q_n`.
//! * [`digits_direct`] recomputes any single step from scratch with full
//!   products `q_1...q_n`, independently of the residue iteration; it is the
//!   oracle the stream is tested against.
//!
//! Both emit the canonical form of a terminating expansion (trailing zeros,
//! never the all-maximal tail), so the residue hits zero exactly when all
//! remaining digits are zero.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::sequences::BaseSequenceSpec;

/// An exact non-negative fraction, always reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Reduce `num/den`. The denominator must be nonzero and the value
    /// non-negative; `0/k` normalizes to `0/1`.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let ratio = BigRational::new(num, den);
        if ratio.is_negative() {
            return Err(Error::NegativeRational);
        }
        Ok(Self(ratio))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// True when the value lies in `[0, 1)`, i.e. `num < den`.
    /// Only proper fractions are valid expansion inputs.
    pub fn is_proper(&self) -> bool {
        self.num() < self.den()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn from_big_rational(value: BigRational) -> Result<Self, Error> {
        if value.is_negative() {
            return Err(Error::NegativeRational);
        }
        Ok(Self(value))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parse `P/R` (or a bare integer, read as `P/1`) with decimal parts;
    /// reduced on construction.
    fn from_str(s: &str) -> Result<Self, Error> {
        let parse_part = |part: &str| -> Result<BigInt, Error> {
            let digits = part.strip_prefix('-').unwrap_or(part);
            if digits.is_empty() || digits.bytes().any(|b| !b.is_ascii_digit()) {
                return Err(Error::RationalSyntax {
                    message: format!("{part:?} is not a decimal integer"),
                });
            }
            Ok(part.parse().expect("validated decimal integer"))
        };
        match s.split_once('/') {
            Some((p, r)) => Self::new(parse_part(p)?, parse_part(r)?),
            None => Self::new(parse_part(s)?, BigInt::one()),
        }
    }
}

/// Residue state after `step` digits: `residue / den = sigma^step(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionState {
    pub step: u64,
    pub residue: BigInt,
}

/// Full record of one extraction step, as computed by [`digits_direct`].
///
/// `step_numerator / den` is the shifted value scaled into `[0, q_n)`; its
/// integer part is the digit and `residue` is what remains:
/// `step_numerator = num * q_1...q_n - den * weighted_prefix` and
/// `step_numerator = den * digit + residue`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionTrace {
    pub step: u64,
    pub step_numerator: BigInt,
    pub weighted_prefix: BigInt,
    pub digit: BigInt,
    pub residue: BigInt,
}

/// Unbounded digit source for a proper fraction; see the module docs.
///
/// The iterator never ends: a terminating expansion keeps yielding zeros
/// once [`DigitStream::is_terminated`] turns true.
#[derive(Debug, Clone)]
pub struct DigitStream {
    spec: BaseSequenceSpec,
    den: BigInt,
    state: ExtractionState,
}

impl DigitStream {
    pub fn new(x: &Rational, spec: &BaseSequenceSpec) -> Result<Self, Error> {
        if !x.is_proper() {
            return Err(Error::ImproperInput {
                num: x.num().clone(),
                den: x.den().clone(),
            });
        }
        Ok(Self {
            spec: spec.clone(),
            den: x.den().clone(),
            state: ExtractionState {
                step: 0,
                residue: x.num().clone(),
            },
        })
    }

    pub fn state(&self) -> &ExtractionState {
        &self.state
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn spec(&self) -> &BaseSequenceSpec {
        &self.spec
    }

    /// Zero residue: every digit from here on is zero.
    pub fn is_terminated(&self) -> bool {
        self.state.residue.is_zero()
    }
}

impl Iterator for DigitStream {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        self.state.step += 1;
        let base = self.spec.q_at(self.state.step);
        let scaled = &base * &self.state.residue;
        let (digit, residue) = scaled.div_rem(&self.den);
        assert!(!digit.is_negative() && digit < base, "digit bound violated");
        self.state.residue = residue;
        Some(digit)
    }
}

/// Stream of digits of `x` in base `Q`, canonical (trailing-zeros) form.
pub fn digit_stream(x: &Rational, spec: &BaseSequenceSpec) -> Result<DigitStream, Error> {
    DigitStream::new(x, spec)
}

/// Recompute step `n` from scratch with full partial products.
///
/// Uses the closed form: the cumulative digit value over the first `n - 1`
/// positions equals `floor(num * Q_{n-1} / den)`, so no digit recurrence is
/// involved. Serves as the independent oracle for [`DigitStream`].
pub fn digits_direct(
    x: &Rational,
    spec: &BaseSequenceSpec,
    n: u64,
) -> Result<ExtractionTrace, Error> {
    assert!(n >= 1, "extraction steps are 1-based");
    if !x.is_proper() {
        return Err(Error::ImproperInput {
            num: x.num().clone(),
            den: x.den().clone(),
        });
    }
    let num = x.num();
    let den = x.den();
    let base = spec.q_at(n);
    let product_prev = spec.partial_product(n - 1).into_value();
    let product = &product_prev * &base;
    let prefix_value = (num * &product_prev).div_floor(den);
    let weighted_prefix = &base * &prefix_value;
    let step_numerator = num * &product - den * &weighted_prefix;
    let (digit, residue) = step_numerator.div_rem(den);
    Ok(ExtractionTrace {
        step: n,
        step_numerator,
        weighted_prefix,
        digit,
        residue,
    })
}

/// `sigma^n(x)`: drop the first `n` digits and rescale.
///
/// Computed as `(num * q_1...q_n mod den) / den`, reduced. For a terminating
/// expansion this is zero once `n` passes the last nonzero digit.
pub fn shift_n(x: &Rational, spec: &BaseSequenceSpec, n: u64) -> Result<Rational, Error> {
    if !x.is_proper() {
        return Err(Error::ImproperInput {
            num: x.num().clone(),
            den: x.den().clone(),
        });
    }
    let den = x.den();
    let mut acc = x.num().mod_floor(den);
    for k in 1..=n {
        acc = (acc * spec.q_at(k).mod_floor(den)).mod_floor(den);
    }
    Rational::new(acc, den.clone())
}

/// Exact check that `x` equals its `n`-term partial sum plus the shifted
/// remainder scaled by `1 / (q_1...q_n)`. Holds for every valid input; the
/// digits come from the stream and the remainder from [`shift_n`], so a
/// `true` result ties the two routes together.
pub fn verify_decomposition(
    x: &Rational,
    spec: &BaseSequenceSpec,
    n: u64,
) -> Result<bool, Error> {
    assert!(n >= 1, "decomposition depth must be positive");
    let mut stream = DigitStream::new(x, spec)?;
    let mut partial = BigRational::zero();
    let mut product = BigInt::one();
    for k in 1..=n {
        let digit = stream.next().expect("stream is unbounded");
        product *= spec.q_at(k);
        partial += BigRational::new(digit, product.clone());
    }
    let shifted = shift_n(x, spec, n)?;
    let rebuilt = partial + shifted.as_big_rational() / BigRational::from_integer(product);
    Ok(rebuilt == *x.as_big_rational())
}

/// Render digits in the compact convention: `0..=9` as single characters,
/// larger digits bracketed, no separators: `0, 3, 11, 4` becomes `"03[11]4"`.
pub fn render_digits(digits: &[BigInt]) -> String {
    let mut out = String::new();
    for d in digits {
        if d.is_negative() || *d >= BigInt::from(10) {
            out.push('[');
            out.push_str(&d.to_string());
            out.push(']');
        } else {
            out.push_str(&d.to_string());
        }
    }
    out
}

/// Inverse of [`render_digits`]. The empty string is the empty digit list.
pub fn parse_digits(text: &str) -> Result<Vec<BigInt>, Error> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'0'..=b'9' => {
                out.push(BigInt::from(bytes[i] - b'0'));
                i += 1;
            }
            b'[' => {
                let close = text[i..].find(']').ok_or_else(|| Error::DigitSyntax {
                    position: i,
                    message: "unterminated '['".into(),
                })? + i;
                let inner = &text[i + 1..close];
                if inner.is_empty() || inner.bytes().any(|b| !b.is_ascii_digit()) {
                    return Err(Error::DigitSyntax {
                        position: i + 1,
                        message: format!("{inner:?} is not a non-negative integer"),
                    });
                }
                out.push(inner.parse().expect("validated decimal integer"));
                i = close + 1;
            }
            other => {
                return Err(Error::DigitSyntax {
                    position: i,
                    message: format!("unexpected character {:?}", other as char),
                });
            }
        }
    }
    Ok(out)
}
