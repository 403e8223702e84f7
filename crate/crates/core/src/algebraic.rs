//! Algebraic numbers given by a minimal polynomial and an isolating box, with
//! field operations, heights and a multiplicative independence test.

use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{bits_for_product, integer_poly_from_roots, irreducible_factor};
use crate::interval::{CInterval, Interval};
use crate::poly::IntPoly;
use crate::roots::{isolate_roots, refine_root, sort_roots, Root, PRECISION_CEILING};

/// Working precision, in bits, for enclosures that feed certified comparisons.
pub const WORKING_BITS: u32 = 128;

/// An algebraic number: its minimal polynomial over ℤ (primitive, positive
/// leading coefficient) together with certified boxes for all conjugates and
/// the index of the distinguished one.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    conjugates: Vec<Root>,
    index: usize,
    height: Interval,
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let (re, im) = (self.enclosure().re.mid_f64(), self.enclosure().im.mid_f64());
        if self.is_real() {
            write!(f, "root {re:.12} of {}", self.minpoly)
        } else {
            write!(f, "root {re:.12}{im:+.12}i of {}", self.minpoly)
        }
    }
}

fn height_from_parts(minpoly: &IntPoly, conjugates: &[Root]) -> Interval {
    let prec = conjugates.iter().map(|r| r.enclosure.prec()).max().unwrap_or(WORKING_BITS);
    let one = Interval::one(prec);
    let mut s = Interval::from_integer(prec, minpoly.lc()).abs().ln();
    for r in conjugates {
        s = s.add(&r.modulus().max(&one).ln());
    }
    s.div_int(minpoly.degree() as i64).clamp_nonneg()
}

impl AlgebraicNumber {
    fn assemble(minpoly: IntPoly, mut conjugates: Vec<Root>, target: &CInterval) -> Self {
        sort_roots(&mut conjugates);
        let index = conjugates
            .iter()
            .position(|r| r.enclosure == *target)
            .or_else(|| conjugates.iter().position(|r| !r.enclosure.disjoint(target)))
            .expect("distinguished root present");
        let height = height_from_parts(&minpoly, &conjugates);
        AlgebraicNumber { minpoly, conjugates, index, height }
    }

    /// Wraps an already certified root list of an irreducible polynomial.
    pub fn from_conjugates(minpoly: IntPoly, conjugates: Vec<Root>, index: usize) -> Self {
        let target = conjugates[index].enclosure.clone();
        AlgebraicNumber::assemble(minpoly.primitive(), conjugates, &target)
    }

    /// The complex conjugate, as another root of the same minimal polynomial.
    pub fn conjugate(&self) -> Self {
        if self.is_real() {
            return self.clone();
        }
        let (re, im) = self.conjugates[self.index].approx();
        let index = (0..self.conjugates.len())
            .filter(|&j| j != self.index && !self.conjugates[j].is_real)
            .min_by(|&a, &b| {
                let d = |j: usize| {
                    let (r, i) = self.conjugates[j].approx();
                    (r - re).hypot(i + im)
                };
                d(a).total_cmp(&d(b))
            })
            .expect("conjugation-closed root list");
        AlgebraicNumber { index, ..self.clone() }
    }

    /// `|x|²` as an algebraic number.
    pub fn modulus_squared(&self) -> Result<Self> {
        self.mul(&self.conjugate())
    }

    pub fn from_rational(q: &Rational) -> Self {
        let minpoly = IntPoly::from_rational_root(q);
        let root = Root { enclosure: CInterval::from_rational(WORKING_BITS, q), is_real: true };
        let target = root.enclosure.clone();
        AlgebraicNumber::assemble(minpoly, vec![root], &target)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from(v))
    }

    /// The root of `p` (any nonzero integer polynomial) singled out by
    /// `locate`, which must return an enclosure of that root at the requested
    /// precision. The minimal polynomial is the irreducible factor of `p`
    /// vanishing there.
    pub fn from_poly_root<F>(p: &IntPoly, locate: F) -> Result<Self>
    where
        F: Fn(u32) -> Result<CInterval>,
    {
        let sf = p.squarefree_part();
        if sf.degree() == 0 {
            return Err(Error::InvalidSpec("constant polynomial has no roots".into()));
        }
        let mut bits = 64;
        loop {
            let roots = isolate_roots(&sf, bits)?;
            let target = locate(bits + 32)?;
            let hits: Vec<usize> = (0..roots.len()).filter(|&i| !roots[i].enclosure.disjoint(&target)).collect();
            match hits.len() {
                0 => return Err(Error::InvalidSpec(format!("enclosure meets no root of {sf}"))),
                1 => {
                    let (q, idx, refined) = irreducible_factor(&sf, &roots, hits[0])?;
                    let target_box = refined[hits[0]].enclosure.clone();
                    let conj: Vec<Root> = idx.iter().map(|&i| refined[i].clone()).collect();
                    return Ok(AlgebraicNumber::assemble(q, conj, &target_box));
                }
                _ => {}
            }
            if bits >= PRECISION_CEILING {
                return Err(Error::PrecisionExhausted { stage: "root location".into(), bits });
            }
            bits *= 2;
        }
    }

    /// Builds a number from a claimed minimal polynomial and a rectangle that
    /// must contain exactly one of its roots. Irreducibility is checked.
    pub fn from_minpoly_region(minpoly: &IntPoly, region: &CInterval) -> Result<Self> {
        let p = minpoly.primitive();
        if p.degree() == 0 {
            return Err(Error::InvalidSpec("constant minimal polynomial".into()));
        }
        if p.squarefree_part() != p {
            return Err(Error::InvalidSpec(format!("{p} is not square-free")));
        }
        let mut bits = 64;
        loop {
            let roots = isolate_roots(&p, bits)?;
            let inside: Vec<usize> = (0..roots.len()).filter(|&i| region.contains_box(&roots[i].enclosure)).collect();
            let touching = roots.iter().filter(|r| !r.enclosure.disjoint(region)).count();
            if touching == inside.len() {
                if inside.len() != 1 {
                    return Err(Error::InvalidSpec(format!("region holds {} roots of {p}", inside.len())));
                }
                let (q, idx, refined) = irreducible_factor(&p, &roots, inside[0])?;
                if q.degree() != p.degree() {
                    return Err(Error::InvalidSpec(format!("{p} is reducible (factor {q})")));
                }
                let target = refined[inside[0]].enclosure.clone();
                let conj = idx.iter().map(|&i| refined[i].clone()).collect();
                return Ok(AlgebraicNumber::assemble(q, conj, &target));
            }
            if bits >= PRECISION_CEILING {
                return Err(Error::PrecisionExhausted { stage: "region check".into(), bits });
            }
            bits *= 2;
        }
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn leading_coeff(&self) -> &Integer {
        self.minpoly.lc()
    }

    pub fn conjugates(&self) -> &[Root] {
        &self.conjugates
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn enclosure(&self) -> &CInterval {
        &self.conjugates[self.index].enclosure
    }

    pub fn is_real(&self) -> bool {
        self.conjugates[self.index].is_real
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.degree() == 1 {
            let c = self.minpoly.coeffs();
            Some(Rational::from((Integer::from(-&c[0]), c[1].clone())))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|q| q == 0)
    }

    /// Sign of a real number.
    pub fn sign(&self) -> Option<Ordering> {
        if let Some(q) = self.as_rational() {
            return Some(q.cmp0());
        }
        let re = &self.enclosure().re;
        if !self.is_real() {
            None
        } else if re.is_pos() {
            Some(Ordering::Greater)
        } else if re.is_neg() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// The same number with every conjugate box shrunk below `2^-bits`
    /// relative width. The cached height only ever narrows.
    pub fn refined(&self, bits: u32) -> Result<Self> {
        if let Some(q) = self.as_rational() {
            let mut r = AlgebraicNumber::from_rational(&q);
            let prec = bits + 64;
            r.conjugates[0].enclosure = CInterval::from_rational(prec, &q);
            r.height = height_from_parts(&r.minpoly, &r.conjugates).intersect(&self.height).unwrap_or(r.height);
            return Ok(r);
        }
        let conjugates =
            self.conjugates.iter().map(|r| refine_root(&self.minpoly, r, bits)).collect::<Result<Vec<_>>>()?;
        let fresh = height_from_parts(&self.minpoly, &conjugates);
        let height = fresh.intersect(&self.height).unwrap_or(fresh);
        Ok(AlgebraicNumber { minpoly: self.minpoly.clone(), conjugates, index: self.index, height })
    }

    /// An enclosure of the number with relative width below `2^-bits`.
    pub fn enclosure_at(&self, bits: u32) -> Result<CInterval> {
        if let Some(q) = self.as_rational() {
            return Ok(CInterval::from_rational(bits + 64, &q));
        }
        Ok(self.refined(bits)?.enclosure().clone())
    }

    fn conjugates_at(&self, bits: u32) -> Result<Vec<CInterval>> {
        if let Some(q) = self.as_rational() {
            return Ok(vec![CInterval::from_rational(bits + 64, &q)]);
        }
        Ok(self.refined(bits)?.conjugates.into_iter().map(|r| r.enclosure).collect())
    }

    fn magnitude_hint(&self) -> f64 {
        self.conjugates.iter().map(|r| r.modulus().hi().to_f64()).fold(1.0, f64::max)
    }

    pub fn neg(&self) -> Self {
        let minpoly = self.minpoly.reflect().primitive();
        let conjugates: Vec<Root> =
            self.conjugates.iter().map(|r| Root { enclosure: r.enclosure.neg(), is_real: r.is_real }).collect();
        let target = self.enclosure().neg();
        AlgebraicNumber::assemble(minpoly, conjugates, &target)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidSpec("inverse of zero".into()));
        }
        if let Some(q) = self.as_rational() {
            return Ok(AlgebraicNumber::from_rational(&(Rational::from(1) / q)));
        }
        let minpoly = self.minpoly.reverse().primitive();
        let conjugates: Vec<Root> =
            self.conjugates.iter().map(|r| Root { enclosure: r.enclosure.recip(), is_real: r.is_real }).collect();
        if conjugates.iter().any(|r| !r.enclosure.is_finite()) {
            return self.refined(WORKING_BITS * 2)?.inv();
        }
        let target = self.enclosure().recip();
        Ok(AlgebraicNumber::assemble(minpoly, conjugates, &target))
    }

    /// Builds the number `f(self, other)` for `f` one of `+` or `·`, through
    /// the integer polynomial whose roots are `f(x_i, y_j)` over all conjugates.
    fn combine(&self, other: &AlgebraicNumber, product: bool) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return Ok(AlgebraicNumber::from_rational(&if product { a * b } else { a + b }));
        }
        let a = self.leading_coeff().clone();
        let b = other.leading_coeff().clone();
        let s = Integer::from(&a * &b);
        let n = self.degree() * other.degree();
        let sf = s.to_f64().abs();
        let hint = if product {
            sf * self.magnitude_hint() * other.magnitude_hint()
        } else {
            sf * (self.magnitude_hint() + other.magnitude_hint())
        };
        let mut bits = bits_for_product(n, hint);
        let q = loop {
            let xs = self.conjugates_at(bits)?;
            let ys = other.conjugates_at(bits)?;
            let sc = CInterval::from_integer(bits + 64, &s);
            let mut thetas = Vec::with_capacity(n);
            for x in &xs {
                for y in &ys {
                    let v = if product { x.mul(y) } else { x.add(y) };
                    thetas.push(v.mul(&sc));
                }
            }
            if let Some(q) = integer_poly_from_roots(&thetas) {
                break q;
            }
            if bits >= PRECISION_CEILING {
                return Err(Error::PrecisionExhausted { stage: "algebraic arithmetic".into(), bits });
            }
            bits *= 2;
        };
        let p = scale_argument(&q, &s);
        AlgebraicNumber::from_poly_root(&p, |b| {
            let x = self.enclosure_at(b)?;
            let y = other.enclosure_at(b)?;
            Ok(if product { x.mul(&y) } else { x.add(&y) })
        })
    }

    pub fn add(&self, other: &AlgebraicNumber) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &AlgebraicNumber) -> Result<Self> {
        self.combine(&other.neg(), false)
    }

    pub fn mul(&self, other: &AlgebraicNumber) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(AlgebraicNumber::from_i64(0));
        }
        self.combine(other, true)
    }

    pub fn div(&self, other: &AlgebraicNumber) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// Integer power (negative exponents invert first).
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if e == 0 {
            return Ok(AlgebraicNumber::from_i64(1));
        }
        if let Some(q) = self.as_rational() {
            let e = u32::try_from(e).map_err(|_| Error::InvalidSpec("exponent too large".into()))?;
            let num = Integer::from(q.numer().pow(e));
            let den = Integer::from(q.denom().pow(e));
            return Ok(AlgebraicNumber::from_rational(&Rational::from((num, den))));
        }
        let e32 = u32::try_from(e).map_err(|_| Error::InvalidSpec("exponent too large".into()))?;
        let a = self.leading_coeff().clone();
        let s = Integer::from((&a).pow(e32));
        let hint = (a.to_f64().abs() * self.magnitude_hint()).powf(e as f64);
        let mut bits = if hint.is_finite() {
            bits_for_product(self.degree(), hint)
        } else {
            (self.degree() as u32) * (e32 * ((a.to_f64().abs() * self.magnitude_hint()).log2().ceil() as u32 + 1) + 2)
                + 96
        };
        let q = loop {
            let xs = self.conjugates_at(bits)?;
            let sa = CInterval::from_integer(bits + 64, &a);
            let thetas: Vec<CInterval> = xs.iter().map(|x| x.mul(&sa).pow_u(e as u64)).collect();
            if let Some(q) = integer_poly_from_roots(&thetas) {
                break q;
            }
            if bits >= PRECISION_CEILING {
                return Err(Error::PrecisionExhausted { stage: "algebraic power".into(), bits });
            }
            bits *= 2;
        };
        let p = scale_argument(&q, &s);
        AlgebraicNumber::from_poly_root(&p, |b| Ok(self.enclosure_at(b + (e32.ilog2() + 1))?.pow_u(e as u64)))
    }

    /// `|x|` for a real number.
    pub fn abs_real(&self) -> Result<Self> {
        match self.sign() {
            Some(Ordering::Less) => Ok(self.neg()),
            Some(_) => Ok(self.clone()),
            None => Err(Error::NonPositiveValue(format!("{self} has no certified sign"))),
        }
    }

    /// Certified equality test.
    pub fn equals(&self, other: &AlgebraicNumber) -> Result<bool> {
        if self.minpoly != other.minpoly {
            return Ok(false);
        }
        if self.degree() == 1 {
            return Ok(true);
        }
        let mut bits = WORKING_BITS;
        loop {
            let roots = isolate_roots(&self.minpoly, bits)?;
            let a = self.enclosure_at(bits)?;
            let b = other.enclosure_at(bits)?;
            let ha: Vec<usize> = (0..roots.len()).filter(|&i| !roots[i].enclosure.disjoint(&a)).collect();
            let hb: Vec<usize> = (0..roots.len()).filter(|&i| !roots[i].enclosure.disjoint(&b)).collect();
            if ha.len() == 1 && hb.len() == 1 {
                return Ok(ha[0] == hb[0]);
            }
            if bits >= PRECISION_CEILING {
                return Err(Error::PrecisionExhausted { stage: "equality test".into(), bits });
            }
            bits *= 2;
        }
    }

    /// Serializable form: minimal polynomial and isolating rectangle.
    pub fn to_record(&self) -> AlgebraicRecord {
        let e = self.enclosure();
        AlgebraicRecord {
            minpoly: self.minpoly.coeffs().iter().map(|c| c.to_string()).collect(),
            region: [
                [e.re.lo_rational().to_string(), e.re.hi_rational().to_string()],
                [e.im.lo_rational().to_string(), e.im.hi_rational().to_string()],
            ],
        }
    }

    pub fn from_record(rec: &AlgebraicRecord) -> Result<Self> {
        let coeffs = rec
            .minpoly
            .iter()
            .map(|s| s.parse::<Integer>().map_err(|e| Error::InvalidSpec(format!("bad coefficient {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let parse = |s: &String| s.parse::<Rational>().map_err(|e| Error::InvalidSpec(format!("bad bound {s:?}: {e}")));
        let prec = 256;
        let re = Interval::from_rationals(prec, &parse(&rec.region[0][0])?, &parse(&rec.region[0][1])?);
        let im = Interval::from_rationals(prec, &parse(&rec.region[1][0])?, &parse(&rec.region[1][1])?);
        AlgebraicNumber::from_minpoly_region(&IntPoly::new(coeffs), &CInterval::new(re, im))
    }

    /// Absolute logarithmic Weil height, cached at construction.
    pub fn weil_height(&self) -> Interval {
        self.height.clone()
    }
}

/// `P(z) = Q(s·z)`.
pub(crate) fn scale_argument(q: &IntPoly, s: &Integer) -> IntPoly {
    let mut pw = Integer::from(1);
    let mut out = Vec::with_capacity(q.coeffs().len());
    for c in q.coeffs() {
        out.push(Integer::from(c * &pw));
        pw *= s;
    }
    IntPoly::new(out).primitive()
}

impl CInterval {
    /// Whether `inner` lies inside `self`.
    pub fn contains_box(&self, inner: &CInterval) -> bool {
        self.re.contains(&inner.re) && self.im.contains(&inner.im)
    }
}

/// JSON shape of an algebraic number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicRecord {
    pub minpoly: Vec<String>,
    pub region: [[String; 2]; 2],
}

/// Absolute logarithmic Weil height `h₀(x)`.
pub fn weil_height(x: &AlgebraicNumber) -> Interval {
    x.weil_height()
}

/// `h′(x) = max{d·h₀(x), |log x|, 1}/d` for a positive real `x`.
pub fn modified_height(x: &AlgebraicNumber, d: usize) -> Result<Interval> {
    if x.sign() != Some(Ordering::Greater) || !x.is_real() {
        return Err(Error::NonPositiveValue(format!("{x}")));
    }
    let h = x.weil_height();
    let p = h.prec().max(WORKING_BITS);
    let dd = Interval::from_int(p, d as i64);
    let lg = x.enclosure().re.ln().abs();
    Ok(h.mul(&dd).max(&lg).max(&Interval::one(p)).div(&dd))
}

/// `log B` with `B = max{|b_i|, e}`, the bound used for `h′(L)`.
pub fn linear_form_height(b: &[Integer], prec: u32) -> Interval {
    let m = b.iter().map(|x| Integer::from(x.abs_ref())).max().unwrap_or_default();
    if m <= 2 {
        Interval::one(prec)
    } else {
        Interval::from_integer(prec, &m).ln()
    }
}

/// Outcome of [`mult_independent`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Independence {
    /// No relation `x^p = y^q` exists: the height ratio and the log-modulus
    /// ratio, which would both equal `q/p`, are certified different.
    Independent,
    /// No relation with `1 ≤ p ≤ ceiling` exists.
    IndependentUpTo { ceiling: u64 },
    /// `x^p = y^q` verified exactly.
    Dependent { p: u64, q: u64 },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        !matches!(self, Independence::Dependent { .. })
    }
}

/// Denominator ceiling for the convergent scan.
pub const INDEPENDENCE_CEILING: u64 = 1_000_000;
/// Largest exponent sum for which a candidate relation is verified exactly.
pub const MAX_VERIFY_EXPONENT: u64 = 4096;

/// The rational with the smallest denominator in `[lo, hi]` (0 < lo ≤ hi),
/// or `None` once the denominator would exceed `ceiling`.
pub fn simplest_rational(lo: &Rational, hi: &Rational, ceiling: &Integer) -> Option<Rational> {
    // Continued-fraction descent keeping the convergent matrix.
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let (mut p0, mut q0, mut p1, mut q1) = (Integer::from(0), Integer::from(1), Integer::from(1), Integer::from(0));
    loop {
        let fl = Integer::from(lo.floor_ref());
        let candidate = if fl.clone() == lo { Some(fl.clone()) } else { None };
        let ceil_lo = Integer::from(lo.ceil_ref());
        let pick = candidate.or_else(|| if ceil_lo.clone() <= hi { Some(ceil_lo) } else { None });
        if let Some(a) = pick {
            let p = Integer::from(&a * &p1) + &p0;
            let q = Integer::from(&a * &q1) + &q0;
            if q > *ceiling {
                return None;
            }
            return Some(Rational::from((p, q)));
        }
        let p = Integer::from(&fl * &p1) + &p0;
        let q = Integer::from(&fl * &q1) + &q0;
        if q > *ceiling {
            return None;
        }
        p0 = p1;
        q0 = q1;
        p1 = p;
        q1 = q;
        let nlo = Rational::from(1) / (hi - &fl);
        let nhi = Rational::from(1) / (lo - &fl);
        lo = nlo;
        hi = nhi;
    }
}

/// Decides multiplicative (in)dependence of two real algebraic numbers of
/// modulus above one.
pub fn mult_independent(x: &AlgebraicNumber, y: &AlgebraicNumber) -> Result<Independence> {
    for v in [x, y] {
        if !v.is_real() || !v.enclosure().re.abs().gt(&Interval::one(WORKING_BITS)) {
            return Err(Error::InvalidSpec(format!("{v} is not a real number of modulus above one")));
        }
    }
    let mut bits = WORKING_BITS;
    loop {
        let xr = x.refined(bits)?;
        let yr = y.refined(bits)?;
        let hr = xr.weil_height().div(&yr.weil_height());
        let lr = xr.enclosure().re.abs().ln().div(&yr.enclosure().re.abs().ln());
        let Some(ratio) = hr.intersect(&lr) else {
            return Ok(Independence::Independent);
        };
        let lo = ratio.lo_rational();
        let hi = ratio.hi_rational();
        // Two distinct fractions with denominators up to the ceiling differ by
        // more than ceiling^-2, so a narrower window holds at most one.
        let ceiling = Integer::from(INDEPENDENCE_CEILING);
        let width = Rational::from(&hi - &lo);
        let limit = Rational::from((1, Integer::from(&ceiling * &ceiling) * 4));
        if width >= limit {
            if bits >= 4096 {
                return Err(Error::Inconclusive("height ratio too wide".into()));
            }
            bits *= 2;
            continue;
        }
        let Some(r) = simplest_rational(&lo, &hi, &ceiling) else {
            return Ok(Independence::IndependentUpTo { ceiling: INDEPENDENCE_CEILING });
        };
        let q = r.numer().to_u64().unwrap_or(u64::MAX);
        let p = r.denom().to_u64().unwrap_or(u64::MAX);
        if p.saturating_add(q).saturating_mul(2) > MAX_VERIFY_EXPONENT {
            return Err(Error::Inconclusive(format!("candidate relation x^{p} = y^{q} too large to verify")));
        }
        for j in 1..=2u64 {
            let xp = x.pow((j * p) as i64)?;
            let yq = y.pow((j * q) as i64)?;
            if xp.equals(&yq)? {
                return Ok(Independence::Dependent { p: j * p, q: j * q });
            }
        }
        // The only admissible ratio fails: no relation with p up to the ceiling.
        return Ok(Independence::IndependentUpTo { ceiling: INDEPENDENCE_CEILING });
    }
}
