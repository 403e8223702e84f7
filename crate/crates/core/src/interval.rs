//! Outward-rounded real and complex interval arithmetic on top of MPFR.
//!
//! Every [`Interval`] is a closed set `[lo, hi]` of extended reals whose
//! endpoints are MPFR floats. Each operation rounds the lower endpoint
//! towards `-inf` and the upper one towards `+inf`, so the true result of
//! the operation on any pair of members always lies inside the output.
//! Undefined operations (division by an interval containing zero, the
//! logarithm of a non-positive number) return the whole line rather than
//! panicking; the caller then simply fails to certify whatever it wanted.

use std::cmp::Ordering;
use std::fmt;

use rug::float::{Constant, Round, Special};
use rug::ops::{AssignRound, Pow};
use rug::{Float, Integer, Rational};

fn down<T>(prec: u32, val: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Down).0
}

fn up<T>(prec: u32, val: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Up).0
}

fn fmin(a: Float, b: Float) -> Float {
    if b < a {
        b
    } else {
        a
    }
}

fn fmax(a: Float, b: Float) -> Float {
    if b > a {
        b
    } else {
        a
    }
}

/// A closed real interval with MPFR endpoints.
#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.decimal_strings(20);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Interval {
    /// Builds `[lo, hi]`; endpoints are taken verbatim.
    pub fn new(lo: Float, hi: Float) -> Self {
        debug_assert!(lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Greater), "inverted interval");
        Interval { lo, hi }
    }

    pub fn entire(prec: u32) -> Self {
        Interval { lo: Float::with_val(prec, Special::NegInfinity), hi: Float::with_val(prec, Special::Infinity) }
    }

    pub fn from_int(prec: u32, v: i64) -> Self {
        Interval { lo: down(prec, v), hi: up(prec, v) }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_int(prec, 0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(prec, 1)
    }

    pub fn from_integer(prec: u32, v: &Integer) -> Self {
        Interval { lo: down(prec, v), hi: up(prec, v) }
    }

    pub fn from_rational(prec: u32, v: &Rational) -> Self {
        Interval { lo: down(prec, v), hi: up(prec, v) }
    }

    /// The hull of two rationals, in either order.
    pub fn from_rationals(prec: u32, a: &Rational, b: &Rational) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Interval { lo: down(prec, a), hi: up(prec, b) }
    }

    pub fn point(v: Float) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn ln2(prec: u32) -> Self {
        Interval { lo: down(prec, Constant::Log2), hi: up(prec, Constant::Log2) }
    }

    pub fn pi(prec: u32) -> Self {
        Interval { lo: down(prec, Constant::Pi), hi: up(prec, Constant::Pi) }
    }

    /// Euler's number `e`.
    pub fn e(prec: u32) -> Self {
        Self::one(prec).exp()
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Re-rounds the endpoints outward to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Interval { lo: down(prec, &self.lo), hi: up(prec, &self.hi) }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    pub fn mid(&self) -> Float {
        let p = self.prec() + 2;
        let s = Float::with_val(p, &self.lo + &self.hi);
        s / 2u32
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn is_pos(&self) -> bool {
        self.lo > 0
    }

    pub fn is_neg(&self) -> bool {
        self.hi < 0
    }

    pub fn is_nonneg(&self) -> bool {
        self.lo >= 0
    }

    pub fn contains_integer(&self, v: &Integer) -> bool {
        self.lo <= *v && self.hi >= *v
    }

    pub fn contains_rational(&self, v: &Rational) -> bool {
        self.lo <= *v && self.hi >= *v
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && self.hi >= other.hi
    }

    /// Certified `self < other`.
    pub fn lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    /// Certified `self <= other`.
    pub fn le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn gt(&self, other: &Interval) -> bool {
        other.lt(self)
    }

    pub fn ge(&self, other: &Interval) -> bool {
        other.le(self)
    }

    /// The exact dyadic lower endpoint as a rational (panics on infinities).
    pub fn lo_rational(&self) -> Rational {
        self.lo.to_rational().expect("finite lower endpoint")
    }

    pub fn hi_rational(&self) -> Rational {
        self.hi.to_rational().expect("finite upper endpoint")
    }

    /// The lower endpoint rounded down to `bits` significant bits.
    pub fn lo_dyadic(&self, bits: u32) -> Rational {
        down(bits, &self.lo).to_rational().expect("finite lower endpoint")
    }

    /// The upper endpoint rounded up to `bits` significant bits.
    pub fn hi_dyadic(&self, bits: u32) -> Rational {
        up(bits, &self.hi).to_rational().expect("finite upper endpoint")
    }

    /// Integers certainly contained in the interval, if the interval is narrow
    /// enough to pin down a unique candidate.
    pub fn unique_integer(&self) -> Option<Integer> {
        if !self.is_finite() {
            return None;
        }
        let (c, _) = self.lo.to_integer_round(Round::Up)?;
        let (f, _) = self.hi.to_integer_round(Round::Down)?;
        if c == f {
            Some(c)
        } else {
            None
        }
    }

    pub fn floor_lo(&self) -> Option<Integer> {
        self.lo.to_integer_round(Round::Down).map(|x| x.0)
    }

    pub fn ceil_hi(&self) -> Option<Integer> {
        self.hi.to_integer_round(Round::Up).map(|x| x.0)
    }

    pub fn decimal_strings(&self, digits: usize) -> (String, String) {
        let lo = self.lo.to_string_radix_round(10, Some(digits), Round::Down);
        let hi = self.hi.to_string_radix_round(10, Some(digits), Round::Up);
        (lo, hi)
    }

    fn bin_prec(&self, other: &Interval) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let p = self.bin_prec(o);
        Interval { lo: down(p, &self.lo + &o.lo), hi: up(p, &self.hi + &o.hi) }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        let p = self.bin_prec(o);
        Interval { lo: down(p, &self.lo - &o.hi), hi: up(p, &self.hi - &o.lo) }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: Float::with_val(self.hi.prec(), -&self.hi), hi: Float::with_val(self.lo.prec(), -&self.lo) }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = self.bin_prec(o);
        if self.lo >= 0 && o.lo >= 0 {
            return Interval { lo: down(p, &self.lo * &o.lo), hi: up(p, &self.hi * &o.hi) };
        }
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let l = down(p, a * b);
            let h = up(p, a * b);
            if l.is_nan() || h.is_nan() {
                // 0 * inf: only possible for unbounded operands.
                return Interval::entire(p);
            }
            lo = Some(match lo {
                None => l,
                Some(x) => fmin(x, l),
            });
            hi = Some(match hi {
                None => h,
                Some(x) => fmax(x, h),
            });
        }
        Interval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn recip(&self) -> Interval {
        let p = self.prec();
        if self.contains_zero() {
            return Interval::entire(p);
        }
        Interval { lo: down(p, 1 / &self.hi), hi: up(p, 1 / &self.lo) }
    }

    pub fn div(&self, o: &Interval) -> Interval {
        if o.contains_zero() {
            return Interval::entire(self.bin_prec(o));
        }
        let p = self.bin_prec(o);
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let l = down(p, a / b);
            let h = up(p, a / b);
            if l.is_nan() || h.is_nan() {
                return Interval::entire(p);
            }
            lo = Some(match lo {
                None => l,
                Some(x) => fmin(x, l),
            });
            hi = Some(match hi {
                None => h,
                Some(x) => fmax(x, h),
            });
        }
        Interval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn mul_int(&self, k: &Integer) -> Interval {
        self.mul(&Interval::from_integer(self.prec(), k))
    }

    pub fn mul_rational(&self, k: &Rational) -> Interval {
        self.mul(&Interval::from_rational(self.prec(), k))
    }

    pub fn div_int(&self, k: i64) -> Interval {
        self.div(&Interval::from_int(self.prec(), k))
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let nlo = Float::with_val(self.lo.prec(), -&self.lo);
            Interval { lo: Float::with_val(self.prec(), 0), hi: fmax(nlo, self.hi.clone()) }
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        let p = a.prec();
        Interval { lo: down(p, a.lo.square_ref()), hi: up(p, a.hi.square_ref()) }
    }

    /// Integer power; exact sign handling for odd exponents.
    pub fn pow_u(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::one(self.prec());
        }
        let p = self.prec();
        if e.is_multiple_of(2) {
            let a = self.abs();
            return Interval { lo: down(p, (&a.lo).pow(e)), hi: up(p, (&a.hi).pow(e)) };
        }
        // Odd powers are monotone.
        Interval { lo: down(p, (&self.lo).pow(e)), hi: up(p, (&self.hi).pow(e)) }
    }

    /// `self^e` for an arbitrary-size exponent, by repeated squaring.
    pub fn pow_integer(&self, e: &Integer) -> Interval {
        if let Some(small) = e.to_u32() {
            return self.pow_u(small);
        }
        let mut result = Interval::one(self.prec());
        let mut base = self.clone();
        let bits = e.significant_bits();
        for i in 0..bits {
            if e.get_bit(i) {
                result = result.mul(&base);
            }
            if i + 1 < bits {
                base = base.sqr();
            }
        }
        result
    }

    pub fn sqrt(&self) -> Interval {
        let p = self.prec();
        if self.hi < 0 {
            return Interval::entire(p);
        }
        let lo = if self.lo <= 0 { Float::with_val(p, 0) } else { down(p, self.lo.sqrt_ref()) };
        Interval { lo, hi: up(p, self.hi.sqrt_ref()) }
    }

    pub fn ln(&self) -> Interval {
        let p = self.prec();
        if self.hi <= 0 {
            return Interval::entire(p);
        }
        let lo = if self.lo <= 0 { Float::with_val(p, Special::NegInfinity) } else { down(p, self.lo.ln_ref()) };
        Interval { lo, hi: up(p, self.hi.ln_ref()) }
    }

    pub fn exp(&self) -> Interval {
        let p = self.prec();
        Interval { lo: down(p, self.lo.exp_ref()), hi: up(p, self.hi.exp_ref()) }
    }

    /// `self^e` for a positive base and real exponent interval.
    pub fn powf(&self, e: &Interval) -> Interval {
        self.ln().mul(e).exp()
    }

    pub fn max(&self, o: &Interval) -> Interval {
        Interval { lo: fmax(self.lo.clone(), o.lo.clone()), hi: fmax(self.hi.clone(), o.hi.clone()) }
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval { lo: fmin(self.lo.clone(), o.lo.clone()), hi: fmin(self.hi.clone(), o.hi.clone()) }
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: fmin(self.lo.clone(), o.lo.clone()), hi: fmax(self.hi.clone(), o.hi.clone()) }
    }

    /// Intersection, or `None` when the two are disjoint.
    pub fn intersect(&self, o: &Interval) -> Option<Interval> {
        let lo = fmax(self.lo.clone(), o.lo.clone());
        let hi = fmin(self.hi.clone(), o.hi.clone());
        if lo > hi {
            None
        } else {
            Some(Interval { lo, hi })
        }
    }

    /// Replaces the lower endpoint by `max(lo, 0)`; used when the quantity is
    /// known to be non-negative for structural reasons.
    pub fn clamp_nonneg(&self) -> Interval {
        let p = self.prec();
        let lo = if self.lo < 0 { Float::with_val(p, 0) } else { self.lo.clone() };
        let hi = if self.hi < 0 { Float::with_val(p, 0) } else { self.hi.clone() };
        Interval { lo, hi }
    }

    /// The point interval at the upper endpoint.
    pub fn upper_point(&self) -> Interval {
        Interval::point(self.hi.clone())
    }

    /// The point interval at the lower endpoint.
    pub fn lower_point(&self) -> Interval {
        Interval::point(self.lo.clone())
    }
}

/// A rectangle in the complex plane.
#[derive(Clone, Debug, PartialEq)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        CInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        let p = re.prec();
        CInterval { re, im: Interval::zero(p) }
    }

    pub fn from_int(prec: u32, v: i64) -> Self {
        CInterval::real(Interval::from_int(prec, v))
    }

    pub fn from_integer(prec: u32, v: &Integer) -> Self {
        CInterval::real(Interval::from_integer(prec, v))
    }

    pub fn from_rational(prec: u32, v: &Rational) -> Self {
        CInterval::real(Interval::from_rational(prec, v))
    }

    pub fn point(re: Float, im: Float) -> Self {
        CInterval { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        CInterval { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn add(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> CInterval {
        CInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> CInterval {
        CInterval { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &CInterval) -> CInterval {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CInterval { re, im }
    }

    pub fn scale(&self, k: &Interval) -> CInterval {
        CInterval { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn sqr(&self) -> CInterval {
        let re = self.re.sqr().sub(&self.im.sqr());
        let two = Interval::from_int(self.prec(), 2);
        let im = self.re.mul(&self.im).mul(&two);
        CInterval { re, im }
    }

    /// `|z|^2`.
    pub fn norm2(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self) -> Interval {
        if self.im.is_point() && self.im.lo().is_zero() {
            return self.re.abs();
        }
        self.norm2().sqrt()
    }

    pub fn recip(&self) -> CInterval {
        let n = self.norm2();
        if n.contains_zero() {
            let p = self.prec();
            return CInterval { re: Interval::entire(p), im: Interval::entire(p) };
        }
        CInterval { re: self.re.div(&n), im: self.im.neg().div(&n) }
    }

    pub fn div(&self, o: &CInterval) -> CInterval {
        if o.im.is_point() && o.im.lo().is_zero() {
            return CInterval { re: self.re.div(&o.re), im: self.im.div(&o.re) };
        }
        let n = o.norm2();
        let num = self.mul(&o.conj());
        CInterval { re: num.re.div(&n), im: num.im.div(&n) }
    }

    pub fn pow_u(&self, e: u64) -> CInterval {
        let mut result = CInterval::from_int(self.prec(), 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    pub fn hull(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.hull(&o.re), im: self.im.hull(&o.im) }
    }

    pub fn intersect(&self, o: &CInterval) -> Option<CInterval> {
        Some(CInterval { re: self.re.intersect(&o.re)?, im: self.im.intersect(&o.im)? })
    }

    pub fn disjoint(&self, o: &CInterval) -> bool {
        self.intersect(o).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln2_brackets_the_double() {
        let l = Interval::ln2(200);
        assert!(l.lo() < l.hi());
        assert!(l.width() < Float::with_val(200, 1e-55));
    }

    #[test]
    fn division_by_zero_is_entire() {
        let a = Interval::one(64);
        let z = Interval::from_rationals(64, &Rational::from(-1), &Rational::from(1));
        assert!(!a.div(&z).is_finite());
    }

    #[test]
    fn pow_of_negative_interval() {
        let a = Interval::from_rationals(64, &Rational::from(-3), &Rational::from(2));
        let sq = a.pow_u(2);
        assert_eq!(*sq.lo(), 0);
        assert_eq!(*sq.hi(), 9);
        let cube = a.pow_u(3);
        assert_eq!(*cube.lo(), -27);
        assert_eq!(*cube.hi(), 8);
    }

    #[test]
    fn big_exponent_matches_small_path() {
        let a = Interval::from_rational(128, &Rational::from((3, 2)));
        let e = Integer::from(37);
        let direct = a.pow_u(37);
        let slow = {
            let mut r = Interval::one(128);
            for _ in 0..37 {
                r = r.mul(&a);
            }
            r
        };
        assert!(direct.intersect(&slow).is_some());
        assert!(a.pow_integer(&e).intersect(&slow).is_some());
    }

    #[test]
    fn unique_integer_detects_narrow_boxes() {
        let a = Interval::from_rationals(64, &Rational::from((39, 10)), &Rational::from((41, 10)));
        assert_eq!(a.unique_integer(), Some(Integer::from(4)));
        let b = Interval::from_rationals(64, &Rational::from((39, 10)), &Rational::from((51, 10)));
        assert_eq!(b.unique_integer(), None);
    }

    #[test]
    fn complex_division_roundtrip() {
        let p = 128;
        let z = CInterval::new(Interval::from_int(p, 3), Interval::from_int(p, -4));
        let w = CInterval::new(Interval::from_int(p, 1), Interval::from_int(p, 2));
        let q = z.div(&w).mul(&w);
        assert!(q.re.contains_integer(&Integer::from(3)));
        assert!(q.im.contains_integer(&Integer::from(-4)));
        assert!(z.abs().contains_integer(&Integer::from(5)));
    }
}
