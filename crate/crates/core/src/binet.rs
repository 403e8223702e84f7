//! Binet polynomials `U_n = Σ aᵢ(n)αᵢⁿ`.
//!
//! The exact route works in `K = ℚ(α)` for each irreducible factor of the
//! minimal polynomial. With `D(x) = x^L m(1/x)` the generating function is
//! `N(x)/D(x)`; writing `D = (1 − αx)^s E(x)` and expanding `h = N/E` in
//! `u = 1 − αx` gives the principal part `Σ_{j=1}^{s} h_{s−j} u^{−j}`, and
//! `u^{−j}` contributes `C(n+j−1, j−1)·αⁿ` to the `n`-th coefficient.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::algebraic::{scale_argument, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::factor::{bits_for_product, integer_poly_from_roots};
use crate::interval::CInterval;
use crate::numfield::{nfpoly_div_exact, nfpoly_mul, NfElem, NfPoly, NumberField};
use crate::poly::IntPoly;
use crate::recurrence::RecurrenceSpec;
use crate::roots::PRECISION_CEILING;
use crate::rootsys::RootSystem;

/// `aᵢ(X)` with coefficients in `ℚ(αᵢ)`, constant term first.
#[derive(Clone, Debug, PartialEq)]
pub struct BinetPoly {
    pub field: NumberField,
    pub coeffs: Vec<NfElem>,
}

impl BinetPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Exact value `a(n) ∈ ℚ(α)`.
    pub fn value_at(&self, n: &Integer) -> NfElem {
        let k = &self.field;
        let x = Rational::from(n);
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.scale(&acc, &x), c);
        }
        acc
    }

    /// Coefficient enclosures at a given enclosure of the root.
    pub fn enclosures(&self, root: &CInterval) -> Vec<CInterval> {
        self.coeffs.iter().map(|c| c.eval(root)).collect()
    }
}

/// Binet polynomials aligned with the roots of a [`RootSystem`].
#[derive(Clone, Debug, PartialEq)]
pub struct Binet {
    pub polys: Vec<BinetPoly>,
}

fn binomial_poly(j: usize) -> Vec<Rational> {
    // C(n+j−1, j−1) = (n+1)(n+2)…(n+j−1)/(j−1)!
    let mut p = vec![Rational::from(1)];
    let mut fact = Integer::from(1);
    for t in 1..j {
        let mut next = vec![Rational::new(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i] += Rational::from(c * t as i64);
            next[i + 1] += c;
        }
        p = next;
        fact *= t as i64;
    }
    p.into_iter().map(|c| c / Rational::from(fact.clone())).collect()
}

fn truncated_series_div(k: &NumberField, num: &[NfElem], den: &[NfElem], len: usize) -> Option<Vec<NfElem>> {
    let at = |p: &[NfElem], i: usize| p.get(i).cloned().unwrap_or_else(|| k.zero());
    let inv0 = k.inv(&at(den, 0))?;
    let mut out: Vec<NfElem> = Vec::with_capacity(len);
    for r in 0..len {
        let mut v = at(num, r);
        for i in 1..=r {
            v = k.sub(&v, &k.mul(&at(den, i), &out[r - i]));
        }
        out.push(k.mul(&v, &inv0));
    }
    Some(out)
}

/// Rewrites `P(x)` as a polynomial in `u = 1 − αx`, truncated below `u^len`.
fn substitute_u(k: &NumberField, p: &[NfElem], len: usize) -> Vec<NfElem> {
    let alpha = k.generator();
    let inv = k.inv(&alpha).expect("nonzero root");
    let mut out = vec![k.zero(); len];
    // (1 − u)^i as binomial rows.
    let mut pw = k.one();
    for (i, c) in p.iter().enumerate() {
        let ci = k.mul(c, &pw);
        let mut binom = Integer::from(1);
        for (r, slot) in out.iter_mut().enumerate().take(len.min(i + 1)) {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            let term = k.scale(&ci, &Rational::from(Integer::from(&binom * sign)));
            *slot = k.add(slot, &term);
            binom = binom * Integer::from(i - r) / Integer::from(r + 1);
        }
        pw = k.mul(&pw, &inv);
    }
    out
}

fn binet_for_factor(minpoly: &IntPoly, seq_poly: &IntPoly, terms: &[Integer], s: usize) -> Result<BinetPoly> {
    let k = NumberField::new(minpoly);
    let l = seq_poly.degree();
    let lift = |q: Rational| k.from_rational(q);
    // D(x) = x^L m(1/x)
    let d: NfPoly = (0..=l).map(|i| lift(Rational::from(seq_poly.coeff(l - i)))).collect();
    let mut num: NfPoly = vec![k.zero(); l];
    for i in 0..l {
        for j in 0..=i {
            let t = k.scale(&d[j], &Rational::from(terms[i - j].clone()));
            num[i] = k.add(&num[i], &t);
        }
    }
    let linear = vec![k.one(), k.neg(&k.generator())];
    let mut power: NfPoly = vec![k.one()];
    for _ in 0..s {
        power = nfpoly_mul(&k, &power, &linear);
    }
    let e = nfpoly_div_exact(&k, &d, &power);
    let nu = substitute_u(&k, &num, s);
    let eu = substitute_u(&k, &e, s);
    let h = truncated_series_div(&k, &nu, &eu, s)
        .ok_or_else(|| Error::InvalidSpec(format!("root of {minpoly} has multiplicity above {s}")))?;
    let mut coeffs = vec![k.zero(); s];
    for j in 1..=s {
        let g = &h[s - j];
        for (deg, c) in binomial_poly(j).into_iter().enumerate() {
            coeffs[deg] = k.add(&coeffs[deg], &k.scale(g, &c));
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(BinetPoly { field: k, coeffs })
}

/// Exact Binet polynomials for the roots of the sequence's minimal polynomial.
pub fn binet_coefficients(spec: &RecurrenceSpec, roots: &RootSystem) -> Result<Binet> {
    let l = roots.poly.degree();
    let terms = spec.terms(l.max(1));
    let mut cache: Vec<(IntPoly, u32, BinetPoly)> = Vec::new();
    let mut polys = Vec::with_capacity(roots.len());
    for r in &roots.roots {
        let mp = r.value.minpoly().clone();
        let found = cache.iter().find(|(p, m, _)| *p == mp && *m == r.multiplicity).map(|c| c.2.clone());
        let bp = match found {
            Some(bp) => bp,
            None => {
                let bp = binet_for_factor(&mp, &roots.poly, &terms, r.multiplicity as usize)?;
                cache.push((mp, r.multiplicity, bp.clone()));
                bp
            }
        };
        polys.push(bp);
    }
    Ok(Binet { polys })
}

impl Binet {
    /// Interval value of `Σ aᵢ(n)αᵢⁿ` with roots refined to `bits`.
    pub fn evaluate(&self, roots: &RootSystem, n: u64, bits: u32) -> Result<CInterval> {
        let prec = bits + 64;
        let mut acc = CInterval::from_int(prec, 0);
        let nn = CInterval::from_integer(prec, &Integer::from(n));
        for (r, bp) in roots.roots.iter().zip(&self.polys) {
            let z = r.value.enclosure_at(bits)?;
            let mut a = CInterval::from_int(prec, 0);
            for c in bp.enclosures(&z).iter().rev() {
                a = a.mul(&nn).add(c);
            }
            acc = acc.add(&a.mul(&z.pow_u(n)));
        }
        Ok(acc)
    }
}

/// Solves the generalized Vandermonde system `Σᵢ Σ_l c_{i,l} n^l αᵢⁿ = U_n`,
/// `n < k`, in complex interval arithmetic, escalating precision until every
/// reconstruction `n ≤ 4k` is certified to contain `U_n`. Returns the
/// coefficient enclosures per root, constant term first.
pub fn binet_vandermonde(spec: &RecurrenceSpec, roots: &RootSystem) -> Result<Vec<Vec<CInterval>>> {
    let k: usize = roots.roots.iter().map(|r| r.multiplicity as usize).sum();
    let terms = spec.terms(4 * k + 1);
    let mut bits = 128u32;
    loop {
        if let Some(sol) = vandermonde_at(roots, &terms, k, bits)? {
            let prec = bits + 64;
            let ok = (0..=4 * k).all(|n| {
                let nn = CInterval::from_int(prec, n as i64);
                let mut acc = CInterval::from_int(prec, 0);
                for (i, r) in roots.roots.iter().enumerate() {
                    let z = r.value.enclosure_at(bits).expect("refinable");
                    let mut a = CInterval::from_int(prec, 0);
                    for c in sol[i].iter().rev() {
                        a = a.mul(&nn).add(c);
                    }
                    acc = acc.add(&a.mul(&z.pow_u(n as u64)));
                }
                acc.re.contains_integer(&terms[n]) && acc.im.contains_zero()
            });
            if ok {
                return Ok(sol);
            }
        }
        if bits >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "Binet system".into(), bits });
        }
        bits *= 2;
    }
}

fn vandermonde_at(roots: &RootSystem, terms: &[Integer], k: usize, bits: u32) -> Result<Option<Vec<Vec<CInterval>>>> {
    let prec = bits + 64;
    let mut cols: Vec<(usize, usize, CInterval)> = Vec::new();
    for (i, r) in roots.roots.iter().enumerate() {
        let z = r.value.enclosure_at(bits)?;
        for l in 0..r.multiplicity as usize {
            cols.push((i, l, z.clone()));
        }
    }
    let mut m: Vec<Vec<CInterval>> = (0..k)
        .map(|n| {
            let mut row: Vec<CInterval> = cols
                .iter()
                .map(|(_, l, z)| {
                    let nl = if *l == 0 { Integer::from(1) } else { Integer::from(n).pow(*l as u32) };
                    z.pow_u(n as u64).mul(&CInterval::from_integer(prec, &nl))
                })
                .collect();
            row.push(CInterval::from_integer(prec, &terms[n]));
            row
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).max_by(|&a, &b| m[a][c].abs().lo().total_cmp(m[b][c].abs().lo())).expect("rows");
        if m[piv][c].contains_zero() {
            return Ok(None);
        }
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for r in 0..k {
            if r == c {
                continue;
            }
            let f = m[r][c].mul(&inv);
            let pivot = m[c].clone();
            for (x, p) in m[r].iter_mut().zip(&pivot).skip(c) {
                *x = x.sub(&f.mul(p));
            }
        }
    }
    let mut out: Vec<Vec<CInterval>> =
        roots.roots.iter().map(|r| vec![CInterval::from_int(prec, 0); r.multiplicity as usize]).collect();
    for (c, (i, l, _)) in cols.iter().enumerate() {
        out[*i][*l] = m[c][k].div(&m[c][c]);
    }
    Ok(Some(out))
}

/// The coefficients of `a(X)` for a root, as algebraic numbers.
pub fn binet_coefficient_numbers(bp: &BinetPoly, root: &AlgebraicNumber) -> Result<Vec<AlgebraicNumber>> {
    bp.coeffs.iter().map(|c| nf_to_algebraic(c, root)).collect()
}

/// Converts `e = E(α)/D ∈ ℚ(α)` into an [`AlgebraicNumber`] through
/// `Q(w) = ∏ (w − E(α_l))` over the conjugates of `α`, then `P(z) = Q(Dz)`.
pub fn nf_to_algebraic(e: &NfElem, root: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    if let Some(q) = e.as_rational() {
        return Ok(AlgebraicNumber::from_rational(&q));
    }
    let (ep, d) = e.integral_form();
    let hint = {
        let r = root.conjugates().iter().map(|c| c.modulus().hi().to_f64()).fold(1.0, f64::max);
        ep.coeffs().iter().map(|c| c.to_f64().abs()).sum::<f64>() * r.powi(ep.degree() as i32)
    };
    let mut bits = bits_for_product(root.degree(), hint);
    let q = loop {
        let r = root.refined(bits)?;
        let thetas: Vec<CInterval> = r.conjugates().iter().map(|c| ep.eval_complex(&c.enclosure)).collect();
        if let Some(q) = integer_poly_from_roots(&thetas) {
            break q;
        }
        if bits >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "Binet coefficient".into(), bits });
        }
        bits *= 2;
    };
    let p = scale_argument(&q, &d);
    AlgebraicNumber::from_poly_root(&p, |b| Ok(e.eval(&root.enclosure_at(b)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::recurrence::minimal_poly;
    use crate::rootsys::analyze_roots;

    fn setup(c: Vec<i64>, init: Vec<i64>) -> (RecurrenceSpec, RootSystem, Binet) {
        let spec = RecurrenceSpec::new("", c, init).unwrap();
        let roots = analyze_roots(&minimal_poly(&spec).unwrap(), 128).unwrap();
        let binet = binet_coefficients(&spec, &roots).unwrap();
        (spec, roots, binet)
    }

    #[test]
    fn fibonacci_coefficients() {
        let (_, roots, binet) = setup(vec![1, 1], vec![0, 1]);
        let a = binet.polys[0].enclosures(roots.roots[0].value.enclosure());
        assert_eq!(a.len(), 1);
        let inv_sqrt5 = Interval::from_int(200, 5).sqrt().recip();
        assert!(a[0].re.intersect(&inv_sqrt5).is_some());
        let nums = binet_coefficient_numbers(&binet.polys[0], &roots.roots[0].value).unwrap();
        assert_eq!(nums[0].minpoly(), &IntPoly::from_i64(&[-1, 0, 5]));
    }

    #[test]
    fn powers_of_two() {
        let (_, _, binet) = setup(vec![2], vec![1]);
        assert_eq!(binet.polys[0].coeffs[0].as_rational(), Some(Rational::from(1)));
    }

    #[test]
    fn confluent_root() {
        // U_n = (n + 1)·2^n
        let (spec, roots, binet) = setup(vec![4, -4], vec![1, 4]);
        assert_eq!(roots.roots[0].multiplicity, 2);
        let c: Vec<Option<Rational>> = binet.polys[0].coeffs.iter().map(|c| c.as_rational()).collect();
        assert_eq!(c, vec![Some(Rational::from(1)), Some(Rational::from(1))]);
        for n in 0..40u64 {
            let v = binet.evaluate(&roots, n, 128).unwrap();
            assert!(v.re.contains_integer(&crate::recurrence::term(&spec, n as usize)));
        }
    }

    #[test]
    fn exact_and_vandermonde_agree() {
        let (spec, roots, binet) = setup(vec![1, 1, 1], vec![0, 1, 1]);
        let v = binet_vandermonde(&spec, &roots).unwrap();
        for (i, r) in roots.roots.iter().enumerate() {
            let exact = binet.polys[i].enclosures(r.value.enclosure());
            assert!(exact[0].intersect(&v[i][0]).is_some());
        }
        for n in [0u64, 1, 7, 50, 120] {
            let val = binet.evaluate(&roots, n, 256).unwrap();
            assert!(val.re.contains_integer(&crate::recurrence::term(&spec, n as usize)));
        }
    }

    #[test]
    fn mixed_multiplicities() {
        // (X - 3)^2 (X + 1): U_n = (n + 2)·3^n + (−1)^n
        let spec = RecurrenceSpec::new("", vec![5, -3, -9], vec![3, 8, 37]).unwrap();
        let roots = analyze_roots(&minimal_poly(&spec).unwrap(), 128).unwrap();
        let binet = binet_coefficients(&spec, &roots).unwrap();
        let lead: Vec<Rational> = binet.polys[0].coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
        assert_eq!(lead, vec![Rational::from(2), Rational::from(1)]);
        assert_eq!(binet.polys[1].coeffs[0].as_rational(), Some(Rational::from(1)));
        let v = binet_vandermonde(&spec, &roots).unwrap();
        assert!(v[0][1].re.contains_integer(&Integer::from(1)));
    }
}
