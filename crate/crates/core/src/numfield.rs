//! Exact arithmetic in a simple extension `ℚ(θ) = ℚ[y]/(f)`.

use rug::{Integer, Rational};

use crate::interval::CInterval;
use crate::poly::{IntPoly, QPoly};

/// The field `ℚ[y]/(f)` for an irreducible integer polynomial `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: QPoly,
    degree: usize,
}

/// An element of a [`NumberField`], as a reduced polynomial in the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfElem {
    coeffs: Vec<Rational>,
}

impl NfElem {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// `Some(q)` when the element is the rational `q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| *c == 0) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    /// Writes the element as `E(y)/D` with `E` integral and `D > 0`.
    pub fn integral_form(&self) -> (IntPoly, Integer) {
        let mut d = Integer::from(1);
        for c in &self.coeffs {
            d.lcm_mut(c.denom());
        }
        let e = self.coeffs.iter().map(|c| c.numer() * Integer::from(&d / c.denom())).collect();
        (IntPoly::new(e), d)
    }

    /// Evaluates the element at an enclosure of a conjugate of the generator.
    pub fn eval(&self, z: &CInterval) -> CInterval {
        let p = z.prec();
        let mut acc = CInterval::from_int(p, 0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&CInterval::from_rational(p, c));
        }
        acc
    }
}

impl NumberField {
    pub fn new(f: &IntPoly) -> Self {
        let modulus = QPoly::from_int(f).monic();
        NumberField { degree: modulus.degree(), modulus }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn reduce(&self, p: QPoly) -> NfElem {
        let r = if p.degree() >= self.degree && !p.is_zero() { p.divrem(&self.modulus).1 } else { p };
        let mut coeffs: Vec<Rational> = r.coeffs().to_vec();
        coeffs.resize(self.degree, Rational::new());
        NfElem { coeffs }
    }

    pub fn from_rational(&self, q: Rational) -> NfElem {
        self.reduce(QPoly::new(vec![q]))
    }

    pub fn from_int(&self, v: i64) -> NfElem {
        self.from_rational(Rational::from(v))
    }

    pub fn zero(&self) -> NfElem {
        self.from_int(0)
    }

    pub fn one(&self) -> NfElem {
        self.from_int(1)
    }

    pub fn generator(&self) -> NfElem {
        self.reduce(QPoly::new(vec![Rational::new(), Rational::from(1)]))
    }

    fn to_qpoly(&self, a: &NfElem) -> QPoly {
        QPoly::new(a.coeffs.clone())
    }

    pub fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| Rational::from(x + y)).collect() }
    }

    pub fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| Rational::from(x - y)).collect() }
    }

    pub fn neg(&self, a: &NfElem) -> NfElem {
        NfElem { coeffs: a.coeffs.iter().map(|x| Rational::from(-x)).collect() }
    }

    pub fn scale(&self, a: &NfElem, k: &Rational) -> NfElem {
        NfElem { coeffs: a.coeffs.iter().map(|x| Rational::from(x * k)).collect() }
    }

    pub fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.reduce(self.to_qpoly(a).mul(&self.to_qpoly(b)))
    }

    pub fn pow(&self, a: &NfElem, e: u32) -> NfElem {
        let mut r = self.one();
        let mut b = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// Multiplicative inverse via the extended Euclidean algorithm; `None` for zero.
    pub fn inv(&self, a: &NfElem) -> Option<NfElem> {
        if a.is_zero() {
            return None;
        }
        // Invariant: r_i = s_i · a (mod f).
        let mut r0 = self.modulus.clone();
        let mut r1 = self.to_qpoly(a);
        let mut s0 = QPoly::new(vec![]);
        let mut s1 = QPoly::new(vec![Rational::from(1)]);
        while r1.degree() > 0 {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let c = r1.coeff(0);
        if c == 0 {
            return None;
        }
        let inv_c = Rational::from(1) / c;
        Some(self.scale(&self.reduce(s1), &inv_c))
    }

    pub fn div(&self, a: &NfElem, b: &NfElem) -> Option<NfElem> {
        Some(self.mul(a, &self.inv(b)?))
    }
}

/// Polynomials with coefficients in a number field, constant term first.
pub type NfPoly = Vec<NfElem>;

pub fn nfpoly_trim(field: &NumberField, mut p: NfPoly) -> NfPoly {
    let _ = field;
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn nfpoly_mul(field: &NumberField, a: &[NfElem], b: &[NfElem]) -> NfPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    nfpoly_trim(field, out)
}

/// Divides by the monic-up-to-unit divisor `d`, which must divide exactly.
pub fn nfpoly_div_exact(field: &NumberField, num: &[NfElem], d: &[NfElem]) -> NfPoly {
    let mut r: Vec<NfElem> = num.to_vec();
    let dd = d.len() - 1;
    let lc_inv = field.inv(d.last().expect("nonzero divisor")).expect("invertible leading coefficient");
    if r.len() < d.len() {
        return vec![];
    }
    let mut q = vec![field.zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = field.mul(&r[i + dd], &lc_inv);
        for (j, dc) in d.iter().enumerate() {
            r[i + j] = field.sub(&r[i + j], &field.mul(&c, dc));
        }
        q[i] = c;
    }
    debug_assert!(r.iter().take(dd).all(|c| c.is_zero()), "inexact division");
    nfpoly_trim(field, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_field_inverse() {
        let k = NumberField::new(&IntPoly::from_i64(&[-1, -1, 1]));
        let phi = k.generator();
        let inv = k.inv(&phi).unwrap();
        // 1/phi = phi - 1
        assert_eq!(inv, k.sub(&phi, &k.one()));
        assert_eq!(k.mul(&phi, &inv), k.one());
    }

    #[test]
    fn cubic_inverse_roundtrip() {
        let k = NumberField::new(&IntPoly::from_i64(&[-1, -1, -1, 1]));
        let g = k.generator();
        let x = k.add(&k.mul(&g, &g), &k.from_rational(Rational::from((3, 7))));
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
    }

    #[test]
    fn polynomial_division() {
        let k = NumberField::new(&IntPoly::from_i64(&[-2, 0, 1]));
        let s = k.generator();
        // (X - s)(X + s) = X^2 - 2
        let a = vec![k.neg(&s), k.one()];
        let b = vec![s.clone(), k.one()];
        let prod = nfpoly_mul(&k, &a, &b);
        assert_eq!(prod, vec![k.from_int(-2), k.zero(), k.one()]);
        assert_eq!(nfpoly_div_exact(&k, &prod, &a), b);
    }
}
