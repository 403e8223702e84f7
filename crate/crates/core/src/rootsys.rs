//! Roots of a characteristic polynomial: multiplicities, the dominant root and
//! non-degeneracy.

use std::cmp::Ordering;

use rug::Integer;
use serde::Serialize;

use crate::algebraic::AlgebraicNumber;
use crate::error::{DominanceFailure, Error, Result};
use crate::factor::factor_squarefree;
use crate::interval::{CInterval, Interval};
use crate::poly::IntPoly;
use crate::roots::{isolate_roots, PRECISION_CEILING};

/// A distinct root with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct CharRoot {
    pub value: AlgebraicNumber,
    pub multiplicity: u32,
}

impl CharRoot {
    pub fn modulus(&self) -> Interval {
        self.value.enclosure().abs()
    }
}

/// All distinct roots, ordered by decreasing modulus estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    pub poly: IntPoly,
    pub roots: Vec<CharRoot>,
    /// Index of the certified dominant root, when there is one.
    pub dominant: Option<usize>,
}

impl RootSystem {
    /// Isolates and groups the roots of a monic polynomial without deciding dominance.
    pub fn of(poly: &IntPoly, bits: u32) -> Result<Self> {
        if poly.degree() == 0 || poly.coeff(0) == 0 {
            return Err(Error::InvalidSpec(format!("{poly} needs positive degree and a nonzero constant term")));
        }
        let mut roots = Vec::new();
        for (f, mult) in poly.squarefree_decomposition() {
            if f.degree() == 0 {
                continue;
            }
            let f = f.primitive();
            let iso = isolate_roots(&f, bits)?;
            let (factors, refined) = factor_squarefree(&f, &iso)?;
            for (q, idx) in factors {
                let conj: Vec<_> = idx.iter().map(|&i| refined[i].clone()).collect();
                for k in 0..conj.len() {
                    roots.push(CharRoot {
                        value: AlgebraicNumber::from_conjugates(q.clone(), conj.clone(), k),
                        multiplicity: mult,
                    });
                }
            }
        }
        sort_by_modulus(&mut roots);
        Ok(RootSystem { poly: poly.clone(), roots, dominant: None })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn dominant_root(&self) -> Option<&CharRoot> {
        self.dominant.map(|i| &self.roots[i])
    }

    /// Upper bound for the largest modulus among non-dominant roots, or `None` when the dominant root is alone.
    pub fn second_modulus(&self) -> Option<Interval> {
        let d = self.dominant?;
        self.roots.iter().enumerate().filter(|(i, _)| *i != d).map(|(_, r)| r.modulus()).reduce(|a, b| a.max(&b))
    }

    fn refined(&self, bits: u32) -> Result<Self> {
        let roots = self
            .roots
            .iter()
            .map(|r| Ok(CharRoot { value: r.value.refined(bits)?, multiplicity: r.multiplicity }))
            .collect::<Result<Vec<_>>>()?;
        Ok(RootSystem { poly: self.poly.clone(), roots, dominant: self.dominant })
    }
}

fn sort_by_modulus(roots: &mut [CharRoot]) {
    roots.sort_by(|a, b| {
        let (ar, ai) = a.value.conjugates()[a.value.index()].approx();
        let (br, bi) = b.value.conjugates()[b.value.index()].approx();
        br.hypot(bi).total_cmp(&ar.hypot(ai)).then(br.total_cmp(&ar)).then(bi.total_cmp(&ai))
    });
}

fn modulus_equal(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<bool> {
    a.modulus_squared()?.equals(&b.modulus_squared()?)
}

/// Finds the roots of `poly`, certifies a unique root of maximal modulus and
/// checks that it is real.
pub fn analyze_roots(poly: &IntPoly, bits: u32) -> Result<RootSystem> {
    let mut sys = RootSystem::of(poly, bits)?;
    let mut b = bits;
    loop {
        let moduli: Vec<Interval> = sys.roots.iter().map(|r| r.modulus()).collect();
        let top_lo = moduli.iter().map(|m| m.lo().clone()).fold(None, |acc: Option<rug::Float>, v| match acc {
            Some(a) if a >= v => Some(a),
            _ => Some(v),
        });
        let top_lo = top_lo.expect("at least one root");
        let candidates: Vec<usize> = (0..moduli.len()).filter(|&i| *moduli[i].hi() >= top_lo).collect();
        if candidates.len() == 1 {
            let d = candidates[0];
            if !sys.roots[d].value.is_real() {
                return Err(Error::NoDominantRoot(DominanceFailure::EqualModuli {
                    witness: format!("{} and its complex conjugate", sys.roots[d].value),
                }));
            }
            sys.roots.swap(0, d);
            if d != 0 {
                sort_by_modulus(&mut sys.roots[1..]);
            }
            sys.dominant = Some(0);
            return Ok(sys);
        }
        let first = &sys.roots[candidates[0]].value;
        let mut all_equal = true;
        for &j in &candidates[1..] {
            if !modulus_equal(first, &sys.roots[j].value)? {
                all_equal = false;
                break;
            }
        }
        if all_equal {
            let names: Vec<String> = candidates.iter().map(|&i| sys.roots[i].value.to_string()).collect();
            return Err(Error::NoDominantRoot(DominanceFailure::EqualModuli { witness: names.join(", ") }));
        }
        if b >= PRECISION_CEILING {
            return Err(Error::NoDominantRoot(DominanceFailure::Unresolved { bits: b }));
        }
        b *= 2;
        sys = sys.refined(b)?;
    }
}

/// Decides whether `|α| > 1` for a real algebraic integer-like root.
pub fn modulus_exceeds_one(x: &AlgebraicNumber) -> Result<bool> {
    if let Some(q) = x.as_rational() {
        return Ok(q.abs() > 1);
    }
    let mut bits = 128;
    loop {
        let m = x.refined(bits)?.enclosure().abs();
        let one = Interval::one(m.prec());
        if m.gt(&one) {
            return Ok(true);
        }
        if m.lt(&one) {
            return Ok(false);
        }
        if !x.is_real() && x.modulus_squared()?.as_rational().is_some_and(|q| q == 1) {
            return Ok(false);
        }
        if bits >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "|α| > 1".into(), bits });
        }
        bits *= 2;
    }
}

/// Outcome of [`nondegeneracy_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Nondegeneracy {
    Pass,
    /// `roots[i] / roots[j]` is a primitive root of unity of the given order.
    Fail {
        i: usize,
        j: usize,
        order: u64,
        ratio: String,
    },
}

fn euler_phi(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

fn ratio_label(order: u64) -> String {
    match order {
        1 => "1".into(),
        2 => "-1".into(),
        n => format!("primitive {n}-th root of unity"),
    }
}

/// Checks that no ratio of two distinct roots is a root of unity. A ratio of
/// two roots has degree at most `D = deg αᵢ · deg αⱼ`, so only orders `N` with
/// `φ(N) ≤ D` can occur; each candidate is ruled out numerically when
/// possible and otherwise decided exactly by comparing `αᵢ^N` with `αⱼ^N`.
pub fn nondegeneracy_check(roots: &RootSystem) -> Result<Nondegeneracy> {
    let n = roots.len();
    for i in 0..n {
        for j in i + 1..n {
            let a = &roots.roots[i].value;
            let b = &roots.roots[j].value;
            let (ma, mb) = (a.enclosure().abs(), b.enclosure().abs());
            if ma.lt(&mb) || ma.gt(&mb) {
                continue;
            }
            if !modulus_equal(a, b)? {
                continue;
            }
            let d = (a.degree() * b.degree()) as u64;
            let limit = 2 * d * d + 2;
            for order in 1..=limit {
                if euler_phi(order) > d {
                    continue;
                }
                let mut bits = 128u32;
                let possible = loop {
                    let ea = a.enclosure_at(bits)?;
                    let eb = b.enclosure_at(bits)?;
                    let r = ea.div(&eb).pow_u(order);
                    let diff = r.sub(&CInterval::from_int(r.prec(), 1));
                    if !diff.contains_zero() {
                        break false;
                    }
                    if diff.abs().hi().to_f64() < 1e-30 || bits >= 1024 {
                        break true;
                    }
                    bits *= 2;
                };
                if !possible {
                    continue;
                }
                let exp = i64::try_from(order).expect("small order");
                if a.pow(exp)?.equals(&b.pow(exp)?)? {
                    let primitive = (1..order).filter(|k| order % k == 0).all(|k| {
                        let e = i64::try_from(k).expect("small");
                        !matches!(a.pow(e).and_then(|x| b.pow(e).and_then(|y| x.equals(&y))), Ok(true))
                    });
                    if primitive {
                        return Ok(Nondegeneracy::Fail { i, j, order, ratio: ratio_label(order) });
                    }
                }
            }
        }
    }
    Ok(Nondegeneracy::Pass)
}

/// Compares two root moduli with precision escalation.
pub fn compare_moduli(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<Ordering> {
    let mut bits = 128;
    loop {
        let ma = a.enclosure_at(bits)?.abs();
        let mb = b.enclosure_at(bits)?.abs();
        if ma.gt(&mb) {
            return Ok(Ordering::Greater);
        }
        if ma.lt(&mb) {
            return Ok(Ordering::Less);
        }
        if modulus_equal(a, b)? {
            return Ok(Ordering::Equal);
        }
        if bits >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "modulus comparison".into(), bits });
        }
        bits *= 2;
    }
}

/// `|x|` for a nonzero integer, as an interval.
pub fn integer_modulus(v: &Integer, prec: u32) -> Interval {
    Interval::from_integer(prec, v).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_roots() {
        let sys = analyze_roots(&IntPoly::from_i64(&[-1, -1, 1]), 128).unwrap();
        assert_eq!(sys.len(), 2);
        let d = sys.dominant_root().unwrap();
        assert!((d.value.enclosure().re.mid_f64() - 1.618033988749895).abs() < 1e-14);
        assert_eq!(d.multiplicity, 1);
        assert!(modulus_exceeds_one(&d.value).unwrap());
    }

    #[test]
    fn repeated_root() {
        let sys = analyze_roots(&IntPoly::from_i64(&[4, -4, 1]), 128).unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.roots[0].multiplicity, 2);
        assert_eq!(sys.roots[0].value.as_rational().unwrap(), 2);
    }

    #[test]
    fn symmetric_moduli_are_rejected() {
        let e = analyze_roots(&IntPoly::from_i64(&[-4, 0, 1]), 128).unwrap_err();
        assert!(matches!(e, Error::NoDominantRoot(DominanceFailure::EqualModuli { .. })));
        // X^3 - 8: 2 and 2ω share the modulus 2
        let e = analyze_roots(&IntPoly::from_i64(&[-8, 0, 0, 1]), 128).unwrap_err();
        assert!(matches!(e, Error::NoDominantRoot(DominanceFailure::EqualModuli { .. })));
        // complex pair on top: X^2 + 4 times X - 1
        let p = IntPoly::from_i64(&[4, 0, 1]).mul(&IntPoly::from_i64(&[-1, 1]));
        assert!(analyze_roots(&p, 128).is_err());
    }

    #[test]
    fn nondegeneracy_verdicts() {
        let fib = RootSystem::of(&IntPoly::from_i64(&[-1, -1, 1]), 128).unwrap();
        assert_eq!(nondegeneracy_check(&fib).unwrap(), Nondegeneracy::Pass);
        let sym = RootSystem::of(&IntPoly::from_i64(&[-4, 0, 1]), 128).unwrap();
        match nondegeneracy_check(&sym).unwrap() {
            Nondegeneracy::Fail { order, ratio, .. } => {
                assert_eq!(order, 2);
                assert_eq!(ratio, "-1");
            }
            v => panic!("{v:?}"),
        }
        let single = RootSystem::of(&IntPoly::from_i64(&[-2, 1]), 128).unwrap();
        assert_eq!(nondegeneracy_check(&single).unwrap(), Nondegeneracy::Pass);
        // X^2 + X + 1 times X - 3: the two cube roots of unity have ratio of order 3
        let p = IntPoly::from_i64(&[1, 1, 1]).mul(&IntPoly::from_i64(&[-3, 1]));
        let sys = RootSystem::of(&p, 128).unwrap();
        assert!(matches!(nondegeneracy_check(&sys).unwrap(), Nondegeneracy::Fail { order: 3, .. }));
    }
}
