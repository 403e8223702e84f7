//! Dense univariate polynomials over the integers and the rationals.
//!
//! Coefficients are stored from the constant term upwards and kept
//! normalized (no trailing zeros), so the zero polynomial is the empty vector.

use std::fmt;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::interval::{CInterval, Interval};

/// An integer polynomial, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl From<IntPoly> for Vec<String> {
    fn from(p: IntPoly) -> Self {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for IntPoly {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<Self, String> {
        let coeffs = v
            .iter()
            .map(|s| s.trim().parse::<Integer>().map_err(|e| format!("bad coefficient {s:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = Integer::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = mag != 1 || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn constant(c: Integer) -> Self {
        IntPoly::new(vec![c])
    }

    /// `X - r`.
    pub fn linear_root(r: &Integer) -> Self {
        IntPoly::new(vec![Integer::from(-r), Integer::from(1)])
    }

    /// `den·X - num` for a rational root `num/den`.
    pub fn from_rational_root(r: &Rational) -> Self {
        IntPoly::new(vec![Integer::from(-r.numer()), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> &Integer {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && *self.lc() == 1
    }

    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g.gcd_mut(c);
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if *self.lc() < 0 {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| Integer::from(c / &g)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| Integer::from(-c)).collect())
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += Integer::from(a * b);
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &Integer) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| Integer::from(c * k)).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| Integer::from(c * i as u64)).collect())
    }

    /// `p(-X)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { Integer::from(-c) } else { c.clone() })
                .collect(),
        )
    }

    /// `X^deg · p(1/X)`.
    pub fn reverse(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// `p(X^e)`.
    pub fn inflate(&self, e: usize) -> IntPoly {
        let mut out = vec![Integer::new(); self.degree() * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * e] = c.clone();
        }
        IntPoly::new(out)
    }

    pub fn eval_integer(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let p = x.prec();
        let mut acc = Interval::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Interval::from_integer(p, c));
        }
        acc
    }

    pub fn eval_complex(&self, z: &CInterval) -> CInterval {
        let p = z.prec();
        let mut acc = CInterval::from_int(p, 0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&CInterval::from_integer(p, c));
        }
        acc
    }

    /// Exact quotient if `o` divides `self` over the integers.
    pub fn div_exact(&self, o: &IntPoly) -> Option<IntPoly> {
        let (q, r) = QPoly::from_int(self).divrem(&QPoly::from_int(o));
        if !r.is_zero() {
            return None;
        }
        q.to_int_exact()
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_int(self)
    }

    /// Gcd over the rationals, returned primitive with positive leading coefficient.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        QPoly::from_int(self).gcd(&QPoly::from_int(o)).to_primitive_int()
    }

    /// Square-free decomposition (Yun): pairs `(factor, multiplicity)` with
    /// pairwise coprime primitive square-free factors whose product, with
    /// multiplicities, equals the primitive part of `self`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let f = QPoly::from_int(&self.primitive());
        if f.degree() == 0 {
            return vec![];
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divrem(&a0).0;
        let c = fp.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1u32;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            b = b.divrem(&a).0;
            let cn = d.divrem(&a).0;
            d = cn.sub(&b.derivative());
            if a.degree() > 0 {
                out.push((a.to_primitive_int(), i));
            }
            i += 1;
        }
        out
    }

    /// Product of the square-free factors (the radical).
    pub fn squarefree_part(&self) -> IntPoly {
        let parts = self.squarefree_decomposition();
        parts.iter().fold(IntPoly::constant(Integer::from(1)), |acc, (p, _)| acc.mul(p))
    }

    /// Cauchy bound: every complex root has modulus below `1 + max|c_i/lc|`.
    pub fn cauchy_bound(&self, prec: u32) -> Interval {
        let lc = Interval::from_integer(prec, self.lc()).abs();
        let mut m = Interval::zero(prec);
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            m = m.max(&Interval::from_integer(prec, c).abs().div(&lc));
        }
        m.add(&Interval::one(prec))
    }
}

/// A rational polynomial, constant term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        QPoly::new(p.coeffs.iter().map(|c| Rational::from(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::new(vec![]);
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        QPoly::new(out)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| Rational::from(c * i as u64)).collect())
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.coeffs.last().unwrap().clone();
        QPoly::new(self.coeffs.iter().map(|c| Rational::from(c / &lc)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.coeffs.last().unwrap().clone();
        if r.len() < d.coeffs.len() {
            return (QPoly::new(vec![]), self.clone());
        }
        let mut q = vec![Rational::new(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = Rational::from(&r[i + dd] / &lc);
            if c != 0 {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= Rational::from(&c * dc);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    /// Monic gcd (the gcd of two zero polynomials is zero).
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Clears denominators and content; leading coefficient made positive.
    pub fn to_primitive_int(&self) -> IntPoly {
        let mut l = Integer::from(1);
        for c in &self.coeffs {
            l.lcm_mut(c.denom());
        }
        let ints = self.coeffs.iter().map(|c| c.numer() * Integer::from(&l / c.denom())).collect();
        IntPoly::new(ints).primitive()
    }

    /// The same polynomial if every coefficient is an integer.
    pub fn to_int_exact(&self) -> Option<IntPoly> {
        if self.coeffs.iter().all(|c| *c.denom() == 1) {
            Some(IntPoly::new(self.coeffs.iter().map(|c| c.numer().clone()).collect()))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_readable() {
        assert_eq!(IntPoly::from_i64(&[-1, -1, 1]).to_string(), "X^2 - X - 1");
        assert_eq!(IntPoly::from_i64(&[-3, 2]).to_string(), "2X - 3");
        assert_eq!(IntPoly::from_i64(&[]).to_string(), "0");
    }

    #[test]
    fn yun_on_repeated_factors() {
        // (X-2)^2 (X+1)^3 (X^2+1)
        let a = IntPoly::from_i64(&[-2, 1]);
        let b = IntPoly::from_i64(&[1, 1]);
        let c = IntPoly::from_i64(&[1, 0, 1]);
        let f = a.mul(&a).mul(&b).mul(&b).mul(&b).mul(&c);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(c.clone(), 1), (a.clone(), 2), (b.clone(), 3)]);
        assert_eq!(f.squarefree_part(), c.mul(&a).mul(&b));
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::from_i64(&[-1, -1, 1]);
        let b = IntPoly::from_i64(&[2, 0, 3]);
        assert_eq!(a.mul(&b).div_exact(&a), Some(b.clone()));
        assert_eq!(a.mul(&b).add(&IntPoly::from_i64(&[1])).div_exact(&a), None);
        // divisible over Q only
        assert_eq!(IntPoly::from_i64(&[1, 1]).div_exact(&IntPoly::from_i64(&[2, 2])), None);
    }

    #[test]
    fn gcd_is_primitive() {
        let a = IntPoly::from_i64(&[-2, 1]);
        let f = a.mul(&IntPoly::from_i64(&[3, 5]));
        let g = a.mul(&IntPoly::from_i64(&[7, 0, 1]));
        assert_eq!(f.gcd(&g), a);
    }
}
