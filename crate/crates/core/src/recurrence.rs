//! Integer linear recurrences: specification, exact terms, characteristic and
//! minimal polynomials.

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, QPoly};

/// Largest accepted recurrence order.
pub const ORDER_CEILING: usize = 8;

/// `U_{n+k} = c₁U_{n+k−1} + … + c_kU_n` with initial terms `U₀ … U_{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    #[serde(default)]
    pub label: String,
    pub coefficients: Vec<i64>,
    pub initial: Vec<i64>,
}

impl RecurrenceSpec {
    pub fn new(label: impl Into<String>, coefficients: Vec<i64>, initial: Vec<i64>) -> Result<Self> {
        let spec = RecurrenceSpec { label: label.into(), coefficients, initial };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, SpecParseError> {
        let spec: RecurrenceSpec = serde_json::from_str(text).map_err(|e| SpecParseError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        spec.validate().map_err(|e| SpecParseError::Invalid(e.to_string()))?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.coefficients.len();
        if k == 0 {
            return Err(Error::InvalidSpec("order must be positive".into()));
        }
        if k > ORDER_CEILING {
            return Err(Error::InvalidSpec(format!("order {k} exceeds the ceiling {ORDER_CEILING}")));
        }
        if self.initial.len() != k {
            return Err(Error::InvalidSpec(format!("{} initial terms for order {k}", self.initial.len())));
        }
        if self.coefficients[k - 1] == 0 {
            return Err(Error::InvalidSpec("last coefficient c_k must be nonzero".into()));
        }
        if self.initial.iter().all(|&u| u == 0) {
            return Err(Error::InvalidSpec("initial terms are all zero".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// `U₀ … U_{count−1}`.
    pub fn terms(&self, count: usize) -> Vec<Integer> {
        let k = self.order();
        let mut out: Vec<Integer> = self.initial.iter().take(count).map(|&u| Integer::from(u)).collect();
        while out.len() < count {
            let n = out.len();
            let mut next = Integer::new();
            for (j, &c) in self.coefficients.iter().enumerate() {
                next += Integer::from(&out[n - 1 - j] * c);
            }
            out.push(next);
        }
        debug_assert!(count < k || out.len() == count);
        out
    }

    /// All terms in order, computed with a sliding window.
    pub fn term_iter(&self) -> impl Iterator<Item = Integer> + '_ {
        let mut window: Vec<Integer> = self.initial.iter().map(|&u| Integer::from(u)).collect();
        let mut pos = 0usize;
        std::iter::from_fn(move || {
            let k = window.len();
            if pos < k {
                pos += 1;
                return Some(window[pos - 1].clone());
            }
            let mut next = Integer::new();
            for (j, &c) in self.coefficients.iter().enumerate() {
                next += Integer::from(&window[k - 1 - j] * c);
            }
            window.remove(0);
            window.push(next.clone());
            Some(next)
        })
    }
}

/// Why a spec file could not be loaded.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecParseError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

/// The exact term `U_n`.
pub fn term(spec: &RecurrenceSpec, n: usize) -> Integer {
    let k = spec.order();
    if n < k {
        return Integer::from(spec.initial[n]);
    }
    spec.term_iter().nth(n).expect("infinite iterator")
}

/// `F(X) = X^k − c₁X^{k−1} − … − c_k`.
pub fn char_poly(spec: &RecurrenceSpec) -> IntPoly {
    let k = spec.order();
    let mut coeffs = vec![Integer::new(); k + 1];
    for (j, &c) in spec.coefficients.iter().enumerate() {
        coeffs[k - 1 - j] = Integer::from(-c);
    }
    coeffs[k] = Integer::from(1);
    IntPoly::new(coeffs)
}

/// Shortest linear recurrence of a rational sequence, as connection
/// coefficients `[1, d₁, …, d_L]` with `s_n + d₁s_{n−1} + … + d_Ls_{n−L} = 0`.
pub fn berlekamp_massey(s: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::from(1)];
    let mut b = vec![Rational::from(1)];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = Rational::from(1);
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += Rational::from(&c[i] * &s[n - i]);
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = Rational::from(&d / &bd);
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, Rational::new());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= Rational::from(&coef * bi);
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, Rational::new());
    c
}

/// Minimal polynomial of the sequence: the monic generator of the ideal of
/// polynomials annihilating it. It divides `char_poly(spec)`.
pub fn minimal_poly(spec: &RecurrenceSpec) -> Result<IntPoly> {
    let k = spec.order();
    let s: Vec<Rational> = spec.terms(2 * k).into_iter().map(Rational::from).collect();
    let c = berlekamp_massey(&s);
    let l = c.len() - 1;
    let q = QPoly::new((0..=l).map(|i| c[l - i].clone()).collect());
    let p = q.to_int_exact().ok_or_else(|| Error::InvalidSpec("minimal polynomial is not integral".into()))?;
    if p.degree() == 0 || p.coeff(0) == 0 {
        return Err(Error::InvalidSpec(format!("degenerate minimal polynomial {p}")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_terms() {
        let fib = RecurrenceSpec::new("fib", vec![1, 1], vec![0, 1]).unwrap();
        assert_eq!(term(&fib, 20), 6765);
        assert_eq!(term(&fib, 0), 0);
        let t: Vec<Integer> = fib.term_iter().take(8).collect();
        assert_eq!(t, fib.terms(8));
    }

    #[test]
    fn char_polys() {
        let trib = RecurrenceSpec::new("trib", vec![1, 1, 1], vec![0, 1, 1]).unwrap();
        assert_eq!(char_poly(&trib), IntPoly::from_i64(&[-1, -1, -1, 1]));
        assert_eq!(term(&trib, 15), 3136);
        let three = RecurrenceSpec::new("", vec![3], vec![1]).unwrap();
        assert_eq!(char_poly(&three), IntPoly::from_i64(&[-3, 1]));
    }

    #[test]
    fn minimal_polynomial_drops_silent_roots() {
        // X^2 - 4 with U_n = 2^n
        let s = RecurrenceSpec::new("", vec![0, 4], vec![1, 2]).unwrap();
        assert_eq!(minimal_poly(&s).unwrap(), IntPoly::from_i64(&[-2, 1]));
        let fib = RecurrenceSpec::new("", vec![1, 1], vec![0, 1]).unwrap();
        assert_eq!(minimal_poly(&fib).unwrap(), char_poly(&fib));
        let double = RecurrenceSpec::new("", vec![4, -4], vec![1, 2]).unwrap();
        assert_eq!(minimal_poly(&double).unwrap(), IntPoly::from_i64(&[-2, 1]));
        let lin = RecurrenceSpec::new("", vec![2, -1], vec![-10, -9]).unwrap();
        assert_eq!(minimal_poly(&lin).unwrap(), IntPoly::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn validation() {
        assert!(RecurrenceSpec::new("", vec![1, 0], vec![1, 1]).is_err());
        assert!(RecurrenceSpec::new("", vec![1], vec![0]).is_err());
        assert!(RecurrenceSpec::new("", vec![1; 9], vec![1; 9]).is_err());
        let e = RecurrenceSpec::from_json("{\"coefficients\": [1,\n 1], \"initial\": [0, }").unwrap_err();
        assert!(matches!(e, SpecParseError::Json { line: 2, .. }));
    }
}
