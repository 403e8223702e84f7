//! Lower bounds for linear forms in logarithms `Λ = b₁ log η₁ + … + b_k log η_k`.

use rug::{Integer, Rational};
use serde::Serialize;

use crate::algebraic::{linear_form_height, modified_height, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::interval::Interval;

/// The exact rational factor `18(k+1)!·k^{k+1}·(32d)^{k+2}` of `C(k, d)`.
pub fn bw_rational_factor(k: u32, d: u32) -> Integer {
    let fact = Integer::from(Integer::factorial(k + 1));
    let kk = Integer::from(Integer::u_pow_u(k, k + 1));
    let dd = Integer::from(Integer::u_pow_u(32 * d, k + 2));
    fact * kk * dd * 18u32
}

/// `C(k, d) = 18(k+1)!·k^{k+1}·(32d)^{k+2}·log(2kd)`.
pub fn bw_constant(k: u32, d: u32, prec: u32) -> Interval {
    assert!(k >= 1 && d >= 1, "k and d must be positive");
    let log = Interval::from_int(prec, 2 * k as i64 * d as i64).ln();
    Interval::from_integer(prec, &bw_rational_factor(k, d)).mul(&log)
}

/// One instance of the linear form: the logarithm arguments `ηᵢ`, their
/// modified heights, the integer coefficients and, when known, `Λ` itself.
#[derive(Clone, Debug, Serialize)]
pub struct LinearFormInstance {
    pub k: u32,
    pub d: u32,
    #[serde(skip)]
    pub etas: Vec<Interval>,
    /// Upper bounds for `h′(ηᵢ)`.
    #[serde(skip)]
    pub heights: Vec<Interval>,
    #[serde(serialize_with = "integers_as_strings")]
    pub b: Vec<Integer>,
    #[serde(skip)]
    pub lambda: Option<Interval>,
}

fn integers_as_strings<S: serde::Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl LinearFormInstance {
    /// Builds an instance from positive real algebraic numbers; `d` is the
    /// degree of a field containing all of them.
    pub fn from_numbers(etas: &[AlgebraicNumber], b: Vec<Integer>, d: u32) -> Result<Self> {
        if etas.iter().any(|x| x.as_rational() == Some(Rational::from(1))) {
            return Err(Error::InvalidSpec("a logarithm argument equals 1".into()));
        }
        let heights = etas.iter().map(|x| modified_height(x, d as usize)).collect::<Result<Vec<_>>>()?;
        let values: Vec<Interval> = etas.iter().map(|x| x.enclosure().re.clone()).collect();
        let prec = values.first().map(|v| v.prec()).unwrap_or(128);
        let mut lambda = Interval::zero(prec);
        for (v, bi) in values.iter().zip(&b) {
            lambda = lambda.add(&v.ln().mul_int(bi));
        }
        Self::new(values, heights, b, d, Some(lambda))
    }

    pub fn new(
        etas: Vec<Interval>,
        heights: Vec<Interval>,
        b: Vec<Integer>,
        d: u32,
        lambda: Option<Interval>,
    ) -> Result<Self> {
        let k = etas.len();
        if k == 0 || d == 0 {
            return Err(Error::InvalidSpec("a linear form needs k ≥ 1 and d ≥ 1".into()));
        }
        if heights.len() != k || b.len() != k {
            return Err(Error::InvalidSpec("mismatched linear form data".into()));
        }
        if b.iter().all(|x| *x == 0) {
            return Err(Error::InvalidSpec("all coefficients of the linear form vanish".into()));
        }
        let one = Rational::from(1);
        for e in &etas {
            if !e.is_pos() {
                return Err(Error::NonPositiveValue(format!("{e}")));
            }
            if e.is_point() && e.contains_rational(&one) {
                return Err(Error::InvalidSpec("a logarithm argument equals 1".into()));
            }
        }
        let floor = Interval::one(etas[0].prec()).div_int(d as i64);
        let heights = heights.into_iter().map(|h| h.max(&floor)).collect();
        Ok(LinearFormInstance { k: k as u32, d, etas, heights, b, lambda })
    }

    /// `log B` with `B = max(|bᵢ|, e)`.
    pub fn log_b(&self, prec: u32) -> Interval {
        linear_form_height(&self.b, prec)
    }
}

/// `−C(k, d)·∏ h′(ηᵢ)·log B`, a lower bound for `log|Λ|` whenever `Λ ≠ 0`.
pub fn lambda_lower_bound(inst: &LinearFormInstance) -> Interval {
    let prec = inst.heights[0].prec();
    let mut prod = bw_constant(inst.k, inst.d, prec);
    for h in &inst.heights {
        prod = prod.mul(&h.upper_point());
    }
    prod.mul(&inst.log_b(prec).upper_point()).neg().lower_point()
}

/// Lower bound for `log|Φ|`, `Φ = e^Λ − 1`, valid when `0 < |Λ| ≤ 1/2`.
pub fn phi_lower_bound(inst: &LinearFormInstance) -> Interval {
    let prec = inst.heights[0].prec();
    lambda_lower_bound(inst).sub(&Interval::ln2(prec)).lower_point()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_constants() {
        assert_eq!(bw_rational_factor(1, 1), 1_179_648);
        assert_eq!(bw_rational_factor(3, 1), Integer::from(18 * 24 * 81) * Integer::from(32u64.pow(5)));
        let c = bw_constant(1, 1, 128);
        let want = 1_179_648.0 * std::f64::consts::LN_2;
        assert!((c.mid_f64() - want).abs() / want < 1e-12);
    }

    #[test]
    fn monotone_in_both_arguments() {
        for k in 1..6 {
            for d in 1..6 {
                let c = bw_constant(k, d, 128);
                assert!(c.lt(&bw_constant(k + 1, d, 128)));
                assert!(c.lt(&bw_constant(k, d + 1, 128)));
            }
        }
    }

    #[test]
    fn rational_instance() {
        let etas = vec![
            AlgebraicNumber::from_rational(&Rational::from((3, 2))),
            AlgebraicNumber::from_i64(2),
            AlgebraicNumber::from_i64(3),
        ];
        let b = vec![Integer::from(1), Integer::from(5), Integer::from(-3)];
        let inst = LinearFormInstance::from_numbers(&etas, b, 1).unwrap();
        let bound = lambda_lower_bound(&inst);
        let want = -(bw_rational_factor(3, 1).to_f64()) * 6f64.ln() * 3f64.ln() * 3f64.ln() * 5f64.ln();
        assert!((bound.mid_f64() - want).abs() / want.abs() < 1e-12);
        let lam = inst.lambda.as_ref().unwrap().abs().ln();
        assert!(lam.gt(&bound));
        let phi = phi_lower_bound(&inst);
        assert!(bound.sub(&Interval::ln2(128)).contains(&phi) || phi.le(&bound));
    }
}
