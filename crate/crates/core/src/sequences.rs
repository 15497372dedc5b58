//! Base sequences `Q = (q_k)` and their partial products `Q_n = q_1 q_2 ... q_n`.
//!
//! A base sequence assigns an integer radix `q_k >= 2` to every 1-based
//! position `k`. Specs are validated in full at construction time: every
//! constructor proves `q_k >= 2` for *all* k from the parameters alone, so the
//! rest of the crate never re-checks.
//!
//! Spec-string grammar (no whitespace, `INT` a decimal integer):
//!
//! ```text
//! spec := "const:" INT
//!       | "periodic:" INT ("," INT)*
//!       | "affine:" INT "," INT        # q_k = a*k + c
//!       | "odd"                        # affine:2,1
//!       | "even"                       # affine:2,0
//!       | "factorial"                  # q_k = k + 1
//!       | "prefix:" INT ("," INT)* ";" spec
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;

/// The validated shape of a base sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecKind {
    /// `q_k = b` for all k.
    Constant(BigInt),
    /// `q_k` cycles through the list; period length is the list length.
    Periodic(Vec<BigInt>),
    /// `q_k = slope * k + intercept`.
    Affine { slope: BigInt, intercept: BigInt },
    /// `q_k = k + 1`, so `Q_n = (n + 1)!`.
    Factorial,
    /// Hand-chosen leading bases followed by another spec, re-indexed from 1.
    ExplicitPrefix {
        prefix: Vec<BigInt>,
        tail: Box<BaseSequenceSpec>,
    },
}

/// A finitely describable rule producing `q_k >= 2` for every index `k >= 1`.
///
/// Immutable after validation; cheap to clone and safe to share across
/// threads. All query operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseSequenceSpec {
    kind: SpecKind,
}

/// Exact partial product `Q_n = q_1 q_2 ... q_n`, with `Q_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialProduct {
    n: u64,
    value: BigInt,
}

impl PartialProduct {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn into_value(self) -> BigInt {
        self.value
    }
}

fn two() -> BigInt {
    BigInt::from(2)
}

impl BaseSequenceSpec {
    /// Constant sequence `q_k = b`; requires `b >= 2`.
    pub fn constant(b: BigInt) -> Result<Self, Error> {
        if b < two() {
            return Err(Error::SpecValidation {
                message: format!("constant base must be at least 2, got {b}"),
            });
        }
        Ok(Self {
            kind: SpecKind::Constant(b),
        })
    }

    /// Periodic sequence cycling through `entries`; each entry must be >= 2.
    pub fn periodic(entries: Vec<BigInt>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::SpecValidation {
                message: "periodic list must be non-empty".into(),
            });
        }
        for (i, e) in entries.iter().enumerate() {
            if *e < two() {
                return Err(Error::SpecValidation {
                    message: format!("q_{} = {e} violates q_k >= 2", i + 1),
                });
            }
        }
        Ok(Self {
            kind: SpecKind::Periodic(entries),
        })
    }

    /// Affine sequence `q_k = slope * k + intercept`.
    ///
    /// Requires `slope >= 0` and `slope + intercept >= 2`; the sequence is
    /// then nondecreasing, so every term is at least `q_1 >= 2`.
    pub fn affine(slope: BigInt, intercept: BigInt) -> Result<Self, Error> {
        if slope.sign() == num_bigint::Sign::Minus {
            return Err(Error::SpecValidation {
                message: format!("affine slope must be non-negative, got {slope}"),
            });
        }
        let q1 = &slope + &intercept;
        if q1 < two() {
            return Err(Error::SpecValidation {
                message: format!("q_1 = {q1} violates q_k >= 2"),
            });
        }
        Ok(Self {
            kind: SpecKind::Affine { slope, intercept },
        })
    }

    /// The odd-base family `q_k = 2k + 1`.
    pub fn odd() -> Self {
        Self::affine(BigInt::from(2), BigInt::one()).expect("2k+1 is valid")
    }

    /// The even-base family `q_k = 2k`.
    pub fn even() -> Self {
        Self::affine(BigInt::from(2), BigInt::ZERO).expect("2k is valid")
    }

    /// The factorial family `q_k = k + 1`.
    pub fn factorial() -> Self {
        Self {
            kind: SpecKind::Factorial,
        }
    }

    /// Explicit leading bases followed by `tail`, whose indices restart at 1.
    pub fn with_prefix(prefix: Vec<BigInt>, tail: BaseSequenceSpec) -> Result<Self, Error> {
        if prefix.is_empty() {
            return Err(Error::SpecValidation {
                message: "prefix list must be non-empty".into(),
            });
        }
        for (i, e) in prefix.iter().enumerate() {
            if *e < two() {
                return Err(Error::SpecValidation {
                    message: format!("prefix entry q_{} = {e} violates q_k >= 2", i + 1),
                });
            }
        }
        Ok(Self {
            kind: SpecKind::ExplicitPrefix {
                prefix,
                tail: Box::new(tail),
            },
        })
    }

    pub fn kind(&self) -> &SpecKind {
        &self.kind
    }

    /// The base at 1-based position `k`. Always at least 2.
    ///
    /// Panics if `k == 0`; the crate has no 0-based positions.
    pub fn q_at(&self, k: u64) -> BigInt {
        assert!(k >= 1, "sequence positions are 1-based");
        match &self.kind {
            SpecKind::Constant(b) => b.clone(),
            SpecKind::Periodic(entries) => {
                let len = entries.len() as u64;
                entries[((k - 1) % len) as usize].clone()
            }
            SpecKind::Affine { slope, intercept } => slope * BigInt::from(k) + intercept,
            SpecKind::Factorial => BigInt::from(k + 1),
            SpecKind::ExplicitPrefix { prefix, tail } => {
                let len = prefix.len() as u64;
                if k <= len {
                    prefix[(k - 1) as usize].clone()
                } else {
                    tail.q_at(k - len)
                }
            }
        }
    }

    /// Exact product `q_1 q_2 ... q_n`; the empty product (`n = 0`) is 1.
    pub fn partial_product(&self, n: u64) -> PartialProduct {
        let mut value = BigInt::one();
        for k in 1..=n {
            value *= self.q_at(k);
        }
        PartialProduct { n, value }
    }

    /// Period length when the sequence is literally periodic: 1 for
    /// `Constant`, the list length for `Periodic`, `None` otherwise.
    pub fn period_len(&self) -> Option<u64> {
        match &self.kind {
            SpecKind::Constant(_) => Some(1),
            SpecKind::Periodic(entries) => Some(entries.len() as u64),
            _ => None,
        }
    }

    /// Render in the spec-string grammar. `parse` is the exact inverse.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BaseSequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SpecKind::Constant(b) => write!(f, "const:{b}"),
            SpecKind::Periodic(entries) => {
                write!(f, "periodic:")?;
                for (i, e) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            SpecKind::Affine { slope, intercept } => {
                if *slope == BigInt::from(2) && intercept.is_one() {
                    write!(f, "odd")
                } else if *slope == BigInt::from(2) && *intercept == BigInt::ZERO {
                    write!(f, "even")
                } else {
                    write!(f, "affine:{slope},{intercept}")
                }
            }
            SpecKind::Factorial => write!(f, "factorial"),
            SpecKind::ExplicitPrefix { prefix, tail } => {
                write!(f, "prefix:")?;
                for (i, e) in prefix.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ";{tail}")
            }
        }
    }
}

impl FromStr for BaseSequenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse_spec_at(s, 0)
    }
}

/// Parse a spec string; see the module docs for the grammar.
pub fn parse_spec(text: &str) -> Result<BaseSequenceSpec, Error> {
    text.parse()
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::SpecSyntax {
        position,
        message: message.into(),
    }
}

/// Parse `text` as a spec, reporting positions relative to the original
/// string by adding `base` (non-zero when recursing into a prefix tail).
fn parse_spec_at(text: &str, base: usize) -> Result<BaseSequenceSpec, Error> {
    if let Some(rest) = text.strip_prefix("const:") {
        let b = parse_int(rest, base + 6)?;
        BaseSequenceSpec::constant(b)
    } else if let Some(rest) = text.strip_prefix("periodic:") {
        let entries = parse_int_list(rest, base + 9)?;
        BaseSequenceSpec::periodic(entries)
    } else if let Some(rest) = text.strip_prefix("affine:") {
        let params = parse_int_list(rest, base + 7)?;
        if params.len() != 2 {
            return Err(syntax(
                base + 7,
                format!("affine takes exactly 2 parameters, got {}", params.len()),
            ));
        }
        let mut it = params.into_iter();
        BaseSequenceSpec::affine(it.next().unwrap(), it.next().unwrap())
    } else if let Some(rest) = text.strip_prefix("prefix:") {
        let body_at = base + 7;
        let semi = rest
            .find(';')
            .ok_or_else(|| syntax(base + text.len(), "expected ';' after prefix list"))?;
        let entries = parse_int_list(&rest[..semi], body_at)?;
        let tail = parse_spec_at(&rest[semi + 1..], body_at + semi + 1)?;
        BaseSequenceSpec::with_prefix(entries, tail)
    } else {
        match text {
            "odd" => Ok(BaseSequenceSpec::odd()),
            "even" => Ok(BaseSequenceSpec::even()),
            "factorial" => Ok(BaseSequenceSpec::factorial()),
            _ => Err(syntax(base, format!("unknown spec kind {text:?}"))),
        }
    }
}

/// A decimal integer: optional leading '-', then one or more digits.
fn parse_int(text: &str, position: usize) -> Result<BigInt, Error> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() {
        return Err(syntax(position, "expected an integer"));
    }
    if let Some(i) = digits.find(|c: char| !c.is_ascii_digit()) {
        let offset = text.len() - digits.len() + i;
        return Err(syntax(
            position + offset,
            format!(
                "unexpected character {:?} in integer",
                digits[i..].chars().next().unwrap()
            ),
        ));
    }
    Ok(text.parse().expect("validated decimal integer"))
}

fn parse_int_list(text: &str, position: usize) -> Result<Vec<BigInt>, Error> {
    let mut out = Vec::new();
    let mut at = position;
    for piece in text.split(',') {
        out.push(parse_int(piece, at)?);
        at += piece.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn q_at_affine_odd() {
        let odd = BaseSequenceSpec::odd();
        assert_eq!(odd.q_at(3), big(7));
        assert_eq!(odd.q_at(1), big(3));
    }

    #[test]
    fn q_at_factorial_and_constant() {
        assert_eq!(BaseSequenceSpec::factorial().q_at(1), big(2));
        let ten = BaseSequenceSpec::constant(big(10)).unwrap();
        assert_eq!(ten.q_at(99), big(10));
    }

    #[test]
    fn q_at_periodic_cycles() {
        let spec = BaseSequenceSpec::periodic(vec![big(2), big(3)]).unwrap();
        assert_eq!(spec.q_at(1), big(2));
        assert_eq!(spec.q_at(2), big(3));
        assert_eq!(spec.q_at(7), big(2));
    }

    #[test]
    fn q_at_prefix_reindexes_tail() {
        let spec =
            BaseSequenceSpec::with_prefix(vec![big(4), big(6)], BaseSequenceSpec::odd()).unwrap();
        assert_eq!(spec.q_at(1), big(4));
        assert_eq!(spec.q_at(2), big(6));
        assert_eq!(spec.q_at(3), big(3)); // tail's q_1
        assert_eq!(spec.q_at(5), big(7)); // tail's q_3
    }

    #[test]
    fn partial_products() {
        let odd = BaseSequenceSpec::odd();
        assert_eq!(*odd.partial_product(3).value(), big(105));
        assert_eq!(*odd.partial_product(0).value(), big(1));
        // 2*3*4*5*6*7
        assert_eq!(
            *BaseSequenceSpec::factorial().partial_product(6).value(),
            big(5040)
        );
    }

    #[test]
    fn partial_product_grows_at_least_geometrically() {
        let spec = BaseSequenceSpec::periodic(vec![big(2), big(5)]).unwrap();
        for n in 0..20u64 {
            let pp = spec.partial_product(n);
            assert!(*pp.value() >= BigInt::from(2).pow(n as u32));
            assert_eq!(pp.n(), n);
        }
    }

    #[test]
    fn parse_named_families() {
        assert_eq!(parse_spec("odd").unwrap(), BaseSequenceSpec::odd());
        assert_eq!(parse_spec("even").unwrap(), BaseSequenceSpec::even());
        assert_eq!(
            parse_spec("factorial").unwrap(),
            BaseSequenceSpec::factorial()
        );
        // odd is affine 2,1 and renders back under its family name
        assert_eq!(parse_spec("affine:2,1").unwrap(), BaseSequenceSpec::odd());
    }

    #[test]
    fn parse_periodic_and_prefix() {
        assert_eq!(
            parse_spec("periodic:2,3").unwrap(),
            BaseSequenceSpec::periodic(vec![big(2), big(3)]).unwrap()
        );
        let nested = parse_spec("prefix:4,6;prefix:9;odd").unwrap();
        assert_eq!(nested.q_at(3), big(9));
        assert_eq!(nested.q_at(4), big(3));
    }

    #[test]
    fn parse_rejects_invalid_bases() {
        match parse_spec("const:1") {
            Err(Error::SpecValidation { message }) => assert!(message.contains('1')),
            other => panic!("expected validation error, got {other:?}"),
        }
        match parse_spec("periodic:2,1,3") {
            Err(Error::SpecValidation { message }) => assert!(message.contains("q_2")),
            other => panic!("expected validation error, got {other:?}"),
        }
        assert!(parse_spec("affine:-1,4").is_err());
        assert!(parse_spec("affine:0,1").is_err());
        assert!(parse_spec("prefix:1;odd").is_err());
    }

    #[test]
    fn parse_reports_positions() {
        match parse_spec("const:x") {
            Err(Error::SpecSyntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_spec("periodic:2,3x") {
            Err(Error::SpecSyntax { position, .. }) => assert_eq!(position, 12),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_spec("prefix:2,3") {
            Err(Error::SpecSyntax { position, .. }) => assert_eq!(position, 10),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_spec("prefix:2;const:y") {
            Err(Error::SpecSyntax { position, .. }) => assert_eq!(position, 15),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_spec("oddx").is_err());
        assert!(parse_spec("").is_err());
    }

    #[test]
    fn affine_with_negative_intercept_is_valid() {
        // q_k = 5k - 3: 2, 7, 12, ...
        let spec = parse_spec("affine:5,-3").unwrap();
        assert_eq!(spec.q_at(1), big(2));
        assert_eq!(spec.q_at(3), big(12));
        assert_eq!(parse_spec(&spec.render()).unwrap(), spec);
    }

    #[test]
    fn render_round_trips() {
        for text in [
            "const:10",
            "periodic:2,3",
            "odd",
            "even",
            "factorial",
            "affine:3,4",
            "prefix:4,6;periodic:2,3",
            "prefix:2;prefix:3;factorial",
        ] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(parse_spec(&spec.render()).unwrap(), spec, "{text}");
        }
    }

    #[test]
    fn period_lengths() {
        assert_eq!(
            BaseSequenceSpec::constant(big(10)).unwrap().period_len(),
            Some(1)
        );
        assert_eq!(
            BaseSequenceSpec::periodic(vec![big(2), big(3), big(4)])
                .unwrap()
                .period_len(),
            Some(3)
        );
        assert_eq!(BaseSequenceSpec::odd().period_len(), None);
        assert_eq!(BaseSequenceSpec::factorial().period_len(), None);
    }
}
