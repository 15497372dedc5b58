//! Acceptance suite: runs every exit criterion in order and prints one
//! PASS/FAIL line per criterion. All checks are exact — no tolerances.
//!
//! ```text
//! cargo test -p cantor-cli --test acceptance
//! ```

use std::cell::RefCell;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use cantor_series::{
    detect_period, digit_stream, digits_direct, eval_periodic, finiteness_horizon, shift_n,
    unit_fraction_digits, verify_decomposition, BaseSequenceSpec, Rational, UnitFractionOutcome,
};

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn rat(p: u64, r: u64) -> Rational {
    Rational::new(big(p), big(r)).unwrap()
}

fn odd() -> BaseSequenceSpec {
    BaseSequenceSpec::odd()
}

fn grid_specs() -> Vec<BaseSequenceSpec> {
    vec![
        BaseSequenceSpec::constant(big(10)).unwrap(),
        BaseSequenceSpec::periodic(vec![big(2), big(3)]).unwrap(),
        BaseSequenceSpec::odd(),
        BaseSequenceSpec::even(),
        BaseSequenceSpec::factorial(),
    ]
}

/// Reduced proper fractions p/r with r <= max_den, including 0/1.
fn proper_fractions(max_den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for r in 1..=max_den {
        for p in 0..r {
            if big(p).gcd(&big(r)).is_one() {
                out.push((p, r));
            }
        }
    }
    out
}

/// Every digit generated anywhere in the suite passes through here, so the
/// positional bound is asserted exhaustively across criteria 1-9.
#[derive(Default)]
struct DigitAudit {
    checked: u64,
    violations: u64,
}

impl DigitAudit {
    fn check(&mut self, spec: &BaseSequenceSpec, position: u64, digit: &BigInt) {
        self.checked += 1;
        if digit < &BigInt::ZERO || *digit >= spec.q_at(position) {
            self.violations += 1;
        }
    }
}

thread_local! {
    static AUDIT: RefCell<DigitAudit> = RefCell::new(DigitAudit::default());
}

fn audited_digits(x: &Rational, spec: &BaseSequenceSpec, count: u64) -> Vec<BigInt> {
    let digits: Vec<BigInt> = digit_stream(x, spec)
        .expect("valid expansion input")
        .take(count as usize)
        .collect();
    AUDIT.with(|audit| {
        let mut audit = audit.borrow_mut();
        for (i, d) in digits.iter().enumerate() {
            audit.check(spec, i as u64 + 1, d);
        }
    });
    digits
}

fn criterion_1_golden_digits() {
    let quarter = audited_digits(&rat(1, 4), &odd(), 8);
    let expected: Vec<BigInt> = [0u64, 3, 5, 2, 2, 9, 11, 4].iter().map(|&v| big(v)).collect();
    assert_eq!(quarter, expected, "digits of 1/4");

    let three_eighths = audited_digits(&rat(3, 8), &odd(), 9);
    let expected: Vec<BigInt> = [1u64, 0, 4, 3, 4, 1, 9, 6, 7].iter().map(|&v| big(v)).collect();
    assert_eq!(three_eighths, expected, "digits of 3/8");
}

fn criterion_2_counting_digit_patterns() {
    let half = audited_digits(&rat(1, 2), &odd(), 200);
    for (i, d) in half.iter().enumerate() {
        assert_eq!(*d, big(i as u64 + 1), "digit {} of 1/2", i + 1);
    }

    let sixth = audited_digits(&rat(1, 6), &odd(), 200);
    assert_eq!(sixth[0], BigInt::ZERO, "first digit of 1/6");
    for (i, d) in sixth.iter().enumerate().skip(1) {
        assert_eq!(*d, big(i as u64 + 1), "digit {} of 1/6", i + 1);
    }

    let five_sixths = audited_digits(&rat(5, 6), &odd(), 200);
    assert_eq!(five_sixths[0], big(2), "first digit of 5/6");
    for (i, d) in five_sixths.iter().enumerate().skip(1) {
        assert_eq!(*d, big(i as u64 + 1), "digit {} of 5/6", i + 1);
    }
}

fn criterion_3_shift_fixed_point() {
    let half = rat(1, 2);
    for n in 0..=100u64 {
        assert_eq!(shift_n(&half, &odd(), n).unwrap(), half, "shift by {n}");
    }
}

fn criterion_4_oracle_equivalence() {
    for spec in grid_specs() {
        for &(p, r) in &proper_fractions(25) {
            let x = rat(p, r);
            let den = big(r);
            let streamed = audited_digits(&x, &spec, 30);
            let mut stream = digit_stream(&x, &spec).unwrap();
            let mut previous: Option<(BigInt, BigInt)> = None;
            for n in 1..=30u64 {
                stream.next();
                let trace = digits_direct(&x, &spec, n).unwrap();
                AUDIT.with(|audit| audit.borrow_mut().check(&spec, n, &trace.digit));
                assert_eq!(
                    streamed[(n - 1) as usize],
                    trace.digit,
                    "digit {n} of {p}/{r} in {spec}"
                );
                assert_eq!(
                    stream.state().residue,
                    trace.residue,
                    "residue {n} of {p}/{r} in {spec}"
                );
                if let Some((prev_numerator, prev_digit)) = previous {
                    let expected = spec.q_at(n) * (prev_numerator - &den * prev_digit);
                    assert_eq!(
                        trace.step_numerator, expected,
                        "step recurrence at {n} for {p}/{r} in {spec}"
                    );
                }
                previous = Some((trace.step_numerator, trace.digit));
            }
        }
    }
}

fn criterion_5_decomposition_identity() {
    for spec in grid_specs() {
        for &(p, r) in &proper_fractions(25) {
            let x = rat(p, r);
            for n in 1..=30u64 {
                assert!(
                    verify_decomposition(&x, &spec, n).unwrap(),
                    "decomposition of {p}/{r} in {spec} at depth {n}"
                );
            }
        }
    }
}

fn criterion_6_terminating_families() {
    for spec in [BaseSequenceSpec::factorial(), BaseSequenceSpec::even()] {
        for &(p, r) in &proper_fractions(20) {
            let k0 = finiteness_horizon(&big(r), &spec, 200)
                .unwrap_or_else(|| panic!("no horizon for r = {r} in {spec}"));
            audited_digits(&rat(p, r), &spec, k0);
            let mut stream = digit_stream(&rat(p, r), &spec).unwrap();
            for _ in 0..k0 {
                stream.next();
            }
            assert!(
                stream.is_terminated(),
                "{p}/{r} in {spec} still has residue after step {k0}"
            );
        }
    }
}

fn criterion_7_no_horizon_for_even_denominator_in_odd_base() {
    assert_eq!(finiteness_horizon(&big(4), &odd(), 1000), None);
    let product = odd().partial_product(1000).into_value();
    assert!(
        !(product % big(4)).is_zero(),
        "4 must not divide the odd-base partial product"
    );
}

fn criterion_8_period_detection_round_trip() {
    let specs = [
        BaseSequenceSpec::constant(big(10)).unwrap(),
        BaseSequenceSpec::periodic(vec![big(2), big(3)]).unwrap(),
        BaseSequenceSpec::periodic(vec![big(3), big(4), big(5)]).unwrap(),
    ];
    for spec in specs {
        let cycle = spec.period_len().unwrap();
        for &(p, r) in &proper_fractions(30) {
            let x = rat(p, r);
            let report = detect_period(&x, &spec).unwrap();
            assert!(
                report.preperiod_len + report.period_len <= r * cycle + 1,
                "state bound for {p}/{r} in {spec}"
            );
            AUDIT.with(|audit| {
                let mut audit = audit.borrow_mut();
                for (i, d) in report.preperiod_digits.iter().enumerate() {
                    audit.check(&spec, i as u64 + 1, d);
                }
                let offset = report.aligned_preperiod_len();
                for (i, d) in report.period_digits.iter().enumerate() {
                    audit.check(&spec, offset + i as u64 + 1, d);
                }
            });
            let value =
                eval_periodic(&report.preperiod_digits, &report.period_digits, &spec).unwrap();
            assert_eq!(value, x, "round trip of {p}/{r} in {spec}");
        }
    }
}

fn criterion_9_unit_fraction_closed_form() {
    match unit_fraction_digits(&big(2), &odd(), 100) {
        UnitFractionOutcome::Expansion(exp) => {
            for (i, d) in exp.digits.iter().enumerate() {
                assert_eq!(*d, big(i as u64 + 1), "closed-form digit {}", i + 1);
            }
            let streamed = audited_digits(&rat(1, 2), &odd(), 100);
            assert_eq!(exp.digits, streamed, "closed form matches the stream");
        }
        other => panic!("expected an expansion for w = 2, got {other:?}"),
    }
    assert_eq!(
        unit_fraction_digits(&big(3), &odd(), 100),
        UnitFractionOutcome::NotDivisible {
            first_failing_index: 1
        }
    );
}

fn criterion_10_digit_bound_audit() {
    AUDIT.with(|audit| {
        let audit = audit.borrow();
        assert!(
            audit.checked > 50_000,
            "audit looks vacuous: only {} digits checked",
            audit.checked
        );
        assert_eq!(audit.violations, 0, "digit bound violations");
    });
}

fn criterion_11_cli_golden_output() {
    let cases: [(&[&str], &str); 3] = [
        (
            &["expand", "--spec", "odd", "--x", "1/4", "--count", "8"],
            "035229[11]4...\n",
        ),
        (
            &["expand", "--spec", "odd", "--x", "3/8", "--count", "9"],
            "104341967...\n",
        ),
        (
            &["period", "--spec", "periodic:2,3", "--x", "1/5"],
            "preperiod= period=(01)\nx=1/5\n",
        ),
    ];
    for (args, expected) in cases {
        let output = Command::new(env!("CARGO_BIN_EXE_cantor"))
            .args(args)
            .output()
            .expect("failed to launch cantor");
        assert!(output.status.success(), "command {args:?} failed");
        assert_eq!(
            output.stdout,
            expected.as_bytes(),
            "stdout of {args:?}: got {:?}",
            String::from_utf8_lossy(&output.stdout)
        );
    }
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn()>)> = vec![
        (
            "golden digits of 1/4 and 3/8 in the odd base",
            Box::new(criterion_1_golden_digits),
        ),
        (
            "counting digit patterns of 1/2, 1/6, 5/6 in the odd base",
            Box::new(criterion_2_counting_digit_patterns),
        ),
        (
            "1/2 is a shift fixed point in the odd base up to n = 100",
            Box::new(criterion_3_shift_fixed_point),
        ),
        (
            "stream equals the direct oracle on the full grid (r <= 25, n <= 30)",
            Box::new(criterion_4_oracle_equivalence),
        ),
        (
            "partial sum + shifted remainder rebuilds x on the same grid",
            Box::new(criterion_5_decomposition_identity),
        ),
        (
            "factorial and even bases terminate every r <= 20 by the horizon",
            Box::new(criterion_6_terminating_families),
        ),
        (
            "r = 4 never divides an odd-base partial product (bound 1000)",
            Box::new(criterion_7_no_horizon_for_even_denominator_in_odd_base),
        ),
        (
            "period detection halts in r*L + 1 steps and re-evaluates exactly (r <= 30)",
            Box::new(criterion_8_period_detection_round_trip),
        ),
        (
            "unit fraction closed form for w = 2 in the odd base; absent for w = 3",
            Box::new(criterion_9_unit_fraction_closed_form),
        ),
        (
            "every digit generated above respects its positional bound",
            Box::new(criterion_10_digit_bound_audit),
        ),
        (
            "CLI golden outputs are byte-identical",
            Box::new(criterion_11_cli_golden_output),
        ),
    ];

    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (number, (name, body)) in criteria.into_iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(body)) {
            Ok(()) => println!("criterion {:2}: PASS  {name}", number + 1),
            Err(payload) => {
                failures += 1;
                let detail = payload
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| payload.downcast_ref::<&str>().copied())
                    .unwrap_or("panic");
                println!("criterion {:2}: FAIL  {name} — {detail}", number + 1);
            }
        }
    }
    let _ = std::panic::take_hook();
    if failures > 0 {
        eprintln!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
