//! Least integer threshold past which `A·m > B·(log m)^p + C` holds for good.

use rug::{Integer, Rational};

use crate::interval::Interval;

const MAX_BITS: u32 = 8192;
const SCAN_LIMIT: u64 = 100_000;

/// Inputs of `A·m > B·(log m)^p + C`, with `A > 0` and `B ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogInequality {
    pub a: Rational,
    pub b: Rational,
    pub p: u32,
    pub c: Rational,
}

impl LogInequality {
    pub fn new(a: Rational, b: Rational, p: u32, c: Rational) -> Self {
        assert!(a > 0, "A must be positive");
        assert!(b >= 0, "B must be non-negative");
        assert!(p >= 1, "p must be positive");
        LogInequality { a, b, p, c }
    }

    fn value(&self, m: &Integer, prec: u32) -> Interval {
        let mi = Interval::from_integer(prec, m);
        let l = mi.ln().pow_u(self.p);
        mi.mul_rational(&self.a).sub(&l.mul_rational(&self.b)).sub(&Interval::from_rational(prec, &self.c))
    }

    fn slope(&self, m: &Integer, prec: u32) -> Interval {
        let mi = Interval::from_integer(prec, m);
        let l = mi.ln().pow_u(self.p - 1);
        let pb = Rational::from(&self.b * self.p);
        Interval::from_rational(prec, &self.a).sub(&l.mul_rational(&pb).div(&mi))
    }

    fn start_bits(m: &Integer) -> u32 {
        (2 * m.significant_bits() + 96).max(128)
    }

    /// Whether `A·m > B·(log m)^p + C`, decided with enough precision.
    pub fn holds(&self, m: &Integer) -> bool {
        if *m <= 0 {
            return false;
        }
        let mut bits = Self::start_bits(m);
        loop {
            let v = self.value(m, bits);
            if v.is_pos() {
                return true;
            }
            if !v.contains_zero() || bits >= MAX_BITS {
                return false;
            }
            bits *= 2;
        }
    }

    fn slope_positive(&self, m: &Integer) -> bool {
        let mut bits = Self::start_bits(m);
        loop {
            let v = self.slope(m, bits);
            if v.is_pos() {
                return true;
            }
            if !v.contains_zero() || bits >= MAX_BITS {
                return false;
            }
            bits *= 2;
        }
    }

    fn slope_nonpositive(&self, m: &Integer) -> bool {
        let mut bits = Self::start_bits(m);
        loop {
            let v = self.slope(m, bits);
            if v.hi().is_sign_negative() || v.hi().is_zero() {
                return true;
            }
            if !v.contains_zero() || bits >= MAX_BITS {
                return false;
            }
            bits *= 2;
        }
    }
}

/// Least `m* ≥ 2` such that `A·m > B·(log m)^p + C` for every `m ≥ m*`.
///
/// The derivative `A − pB(log m)^{p−1}/m` increases on `m ≥ e^{p−1}`, so past
/// its sign change the left side minus the right side is increasing and a
/// bisection locates the final crossing; the remaining finite stretch below
/// is scanned.
pub fn solve_log_inequality(ineq: &LogInequality) -> Integer {
    let two = Integer::from(2);
    if ineq.b == 0 {
        let q = Rational::from(&ineq.c / &ineq.a);
        let m = q.floor().numer().clone() + 1u32;
        return m.max(two);
    }
    // Past `c0` the function (log m)^{p-1}/m is decreasing.
    let c0 = Integer::from(((ineq.p - 1) as f64).exp().ceil() as u64).max(two.clone());

    // Turning point: least t ≥ c0 with a certified positive slope.
    let mut hi = c0.clone();
    while !ineq.slope_positive(&hi) {
        hi *= 2;
    }
    let mut lo = c0.clone();
    let turn = if lo == hi {
        hi
    } else {
        // invariant: slope not certified at lo, certified at hi
        while Integer::from(&hi - &lo) > 1 {
            let mid = Integer::from(&lo + &hi) >> 1;
            if ineq.slope_positive(&mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    // From `turn` on the function is increasing: find the crossing.
    let mut top = turn.clone();
    while !ineq.holds(&top) {
        top *= 2;
    }
    let first = if ineq.holds(&turn) {
        turn.clone()
    } else {
        let (mut l, mut h) = (turn.clone(), top);
        while Integer::from(&h - &l) > 1 {
            let mid = Integer::from(&l + &h) >> 1;
            if ineq.holds(&mid) {
                h = mid;
            } else {
                l = mid;
            }
        }
        h
    };
    if first > turn {
        return first.max(two);
    }

    // The inequality already holds at the turning point; walk downwards.
    let mut m = turn;
    let mut steps = 0u64;
    while m > two {
        let prev = Integer::from(&m - 1u32);
        if prev >= c0 && steps >= SCAN_LIMIT && ineq.slope_nonpositive(&prev) {
            // decreasing on [c0, prev]: every value there exceeds the one at m
            m = c0.clone();
            steps = 0;
            continue;
        }
        if !ineq.holds(&prev) {
            return m;
        }
        m = prev;
        steps += 1;
    }
    two
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(a: i64, b: i64, p: u32, c: i64) -> Integer {
        solve_log_inequality(&LogInequality::new(a.into(), b.into(), p, c.into()))
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(solve(1, 0, 1, 0), 2);
        assert_eq!(solve(1, 1, 1, 0), 2);
        assert_eq!(solve(1, 0, 1, 10), 11);
    }

    #[test]
    fn quartic_logarithm() {
        let m = solve(1, 1, 4, 0);
        assert!((5490..=5510).contains(&m), "{m}");
        let ineq = LogInequality::new(1.into(), 1.into(), 4, 0.into());
        assert!(!ineq.holds(&Integer::from(&m - 1u32)));
        assert!(ineq.holds(&m));
    }

    #[test]
    fn degenerate_exit_example() {
        // 5 log m >= m/10 holds up to 282
        let ineq = LogInequality::new(Rational::from((1, 10)), 5.into(), 1, 0.into());
        assert_eq!(solve_log_inequality(&ineq), 283);
    }
}
