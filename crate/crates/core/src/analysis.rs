//! Asymptotic data of one recurrence: the envelope `U_n = a(n)αⁿ + L(a′α′ⁿ)`,
//! the growth sandwich `C₁n^σ|α|ⁿ ≤ |U_n| ≤ C₂n^σ|α|ⁿ`, and the thresholds
//! `N₀`, `N₁`, `N₂`.

use std::cmp::Ordering;

use rug::{Integer, Rational};
use serde_json::{json, Value};

use crate::algebraic::AlgebraicNumber;
use crate::binet::{binet_coefficient_numbers, binet_coefficients, Binet, BinetPoly};
use crate::error::{Error, Result};
use crate::interval::{CInterval, Interval};
use crate::numfield::NfElem;
use crate::poly::IntPoly;
use crate::recurrence::{char_poly, minimal_poly, RecurrenceSpec};
use crate::roots::PRECISION_CEILING;
use crate::rootsys::{analyze_roots, modulus_exceeds_one, nondegeneracy_check, Nondegeneracy, RootSystem};

/// Widening applied to the growth constants: `C₁ = (1 − ε)·inf`, `C₂ = (1 + ε)·sup`.
pub const EPSILON: (i64, i64) = (1, 100);
/// Significant bits kept when a constant is committed to a rational.
pub const COMMIT_BITS: u32 = 64;
/// Largest tail start tried by the growth sandwich.
pub const TAIL_CEILING: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub bits: u32,
    /// Upper end of the exact enumeration that re-checks the sandwich.
    pub search_ceiling: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { bits: 128, search_ceiling: 300 }
    }
}

/// `(a″, A, α′, a′)` with `|U_n − a(n)αⁿ| ≤ a″·max(1,n)^A·ρⁿ ≤ a′·α′ⁿ`,
/// where `ρ = max(|α₂|, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub big_a: u32,
    pub a_second: Rational,
    pub alpha_prime: Rational,
    pub a_prime: Rational,
    pub rho: Rational,
}

/// `C₁, C₂` valid for `n ≥ N₂`, with `C₅ = C₂(1 + 1/|α|)` and `C₆ = C₁ − C₂/|α|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Growth {
    pub c1: Rational,
    pub c2: Rational,
    pub n2: u64,
    pub c5: Rational,
    pub c6: Rational,
    /// From here on the sandwich follows from the envelope alone.
    pub tail_start: u64,
}

fn eps() -> Rational {
    Rational::from(EPSILON)
}

fn q(prec: u32, v: &Rational) -> Interval {
    Interval::from_rational(prec, v)
}

fn dominant_modulus(roots: &RootSystem) -> Interval {
    roots.roots[0].modulus()
}

/// A dyadic rational strictly between `lo` (a rational) and the interval `hi`,
/// close to `sqrt(lo·hi)`.
fn geometric_mean_between(lo: &Rational, hi: &Interval) -> Option<Rational> {
    let prec = hi.prec();
    let g = q(prec, lo).mul(hi).sqrt();
    for bits in [24u32, 48, 96, 192] {
        let cand = g.mid_interval_rational(bits);
        if cand > *lo && q(prec, &cand).lt(hi) {
            return Some(cand);
        }
    }
    None
}

impl Interval {
    fn mid_interval_rational(&self, bits: u32) -> Rational {
        let m = Interval::point(self.mid());
        m.lo_dyadic(bits)
    }
}

/// Computes `(a″, A, α′, a′)`. With a single root the conventions
/// `α₂ = 1`, `a′ = a″ = A = 0` apply.
pub fn envelope_constants(roots: &RootSystem, binet: &Binet, bits: u32) -> Result<Envelope> {
    let mut b = bits;
    loop {
        let r = roots_at(roots, b)?;
        let alpha = dominant_modulus(&r);
        let prec = alpha.prec();
        let one = Interval::one(prec);
        let (rho_iv, big_a, a2) = if r.len() == 1 {
            (one.clone(), 0u32, Interval::zero(prec))
        } else {
            let second = r.second_modulus().expect("several roots");
            let mut a2 = Interval::zero(prec);
            let mut big_a = 0u32;
            for (root, bp) in r.roots.iter().zip(&binet.polys).skip(1) {
                big_a = big_a.max(bp.degree() as u32);
                for c in bp.enclosures(root.value.enclosure()) {
                    a2 = a2.add(&c.abs().upper_point());
                }
            }
            (second.max(&one), big_a, a2)
        };
        let rho = rho_iv.hi_dyadic(COMMIT_BITS);
        let Some(alpha_prime) = geometric_mean_between(&rho, &alpha) else {
            if b >= PRECISION_CEILING {
                return Err(Error::PrecisionExhausted { stage: "envelope".into(), bits: b });
            }
            b *= 2;
            continue;
        };
        if r.len() == 1 {
            return Ok(Envelope { big_a: 0, a_second: Rational::new(), alpha_prime, a_prime: Rational::new(), rho });
        }
        let ratio = q(prec, &rho).div(&q(prec, &alpha_prime));
        let m = max_power_times_geometric(big_a, &ratio);
        let a_prime = a2.mul(&m).hi_dyadic(COMMIT_BITS);
        return Ok(Envelope { big_a, a_second: a2.hi_dyadic(COMMIT_BITS), alpha_prime, a_prime, rho });
    }
}

/// Upper bound for `max_{n ≥ 0} max(1, n)^A·rⁿ` with `0 < r < 1`. The
/// function `n^A rⁿ` increases up to `n* = A/(−log r)` and decreases after,
/// so only the integers around `n*` matter.
pub fn max_power_times_geometric(big_a: u32, r: &Interval) -> Interval {
    let prec = r.prec();
    let one = Interval::one(prec);
    if big_a == 0 {
        return one;
    }
    let star = Interval::from_int(prec, big_a as i64).div(&r.ln().neg());
    let lo = star.floor_lo().unwrap_or_default().max(Integer::from(1));
    let hi = star.ceil_hi().unwrap_or_default().max(Integer::from(1));
    let mut best = one;
    let mut n = lo;
    while n <= hi {
        let v = Interval::from_integer(prec, &n).pow_u(big_a).mul(&r.pow_integer(&n));
        best = best.max(&v);
        n += 1;
    }
    best.upper_point()
}

fn roots_at(roots: &RootSystem, bits: u32) -> Result<RootSystem> {
    let mut out = roots.clone();
    for r in &mut out.roots {
        r.value = r.value.refined(bits)?;
    }
    Ok(out)
}

/// Finds `N₂`, `C₁`, `C₂` (and `C₅`, `C₆`) so that the sandwich holds for every
/// `n ≥ N₂` and `C₂ < C₁|α|`. Ratios `|U_n|/(n^σ|α|ⁿ)` are computed exactly
/// below a tail start `T`; from `T` on they lie within `S/T + a′(α′/|α|)^T`
/// of `|lc(a)|`, where `S` sums the lower coefficients of `a(X)`.
pub fn growth_constants(
    spec: &RecurrenceSpec,
    roots: &RootSystem,
    binet: &Binet,
    env: &Envelope,
    search_ceiling: u64,
    bits: u32,
) -> Result<Growth> {
    let r = roots_at(roots, bits)?;
    let alpha = dominant_modulus(&r);
    let prec = alpha.prec();
    let lead = &binet.polys[0];
    let sigma = lead.degree() as u32;
    let coeffs: Vec<Interval> = lead.enclosures(r.roots[0].value.enclosure()).iter().map(|c| c.abs()).collect();
    let lc = coeffs[sigma as usize].clone();
    if !lc.is_pos() {
        return Err(Error::hypothesis("growth", "leading Binet coefficient not certified nonzero"));
    }
    let s: Interval = coeffs[..sigma as usize].iter().fold(Interval::zero(prec), |acc, c| acc.add(&c.upper_point()));
    let qratio = q(prec, &env.alpha_prime).div(&alpha);
    let e = eps();
    let one_minus = Rational::from(1) - &e;
    let one_plus = Rational::from(1) + &e;
    let kappa = alpha.lo().to_f64() * one_minus.to_f64() / one_plus.to_f64();
    if kappa <= 1.0 {
        return Err(Error::hypothesis("growth", "cannot certify C2/C1 < |alpha|: |alpha| is too close to 1"));
    }
    let delta = (0.01f64).min((kappa - 1.0) / (2.0 * (kappa + 1.0)));
    let delta_q = Rational::from_f64(delta).expect("finite");
    let target = lc.lower_point().mul_rational(&delta_q);
    let a_prime = q(prec, &env.a_prime);
    let mut t: u64 = 1;
    let err = loop {
        let tt = Interval::from_integer(prec, &Integer::from(t));
        let err = s.div(&tt).add(&a_prime.mul(&qratio.pow_integer(&Integer::from(t))));
        if err.le(&target) {
            break err;
        }
        t *= 2;
        if t > TAIL_CEILING {
            return Err(Error::hypothesis("growth", "sandwich tail not reached below the ceiling"));
        }
    };
    let tail_lo = lc.sub(&err).lower_point();
    let tail_hi = lc.add(&err).upper_point();

    let terms = spec.terms(t as usize);
    let n_count = t as usize;
    let mut ratios: Vec<Interval> = Vec::with_capacity(n_count);
    let mut pw = Interval::one(prec);
    for (n, u) in terms.iter().enumerate() {
        if n > 0 {
            pw = pw.mul(&alpha);
        }
        let ns = Interval::from_integer(prec, &Integer::from(n)).pow_u(sigma);
        ratios.push(Interval::from_integer(prec, u).abs().div(&ns.mul(&pw)));
    }
    let mut suf_min = vec![tail_lo.clone(); n_count + 1];
    let mut suf_max = vec![tail_hi.clone(); n_count + 1];
    for n in (1..n_count).rev() {
        suf_min[n] = ratios[n].lower_point().min(&suf_min[n + 1]);
        suf_max[n] = ratios[n].upper_point().max(&suf_max[n + 1]);
    }
    for n2 in 1..=n_count {
        let inf = &suf_min[n2];
        if !inf.is_pos() {
            continue;
        }
        let c1 = inf.mul_rational(&one_minus).lo_dyadic(COMMIT_BITS);
        let c2 = suf_max[n2].mul_rational(&one_plus).hi_dyadic(COMMIT_BITS);
        let (c1i, c2i) = (q(prec, &c1), q(prec, &c2));
        if !c2i.lt(&alpha.mul(&c1i)) {
            continue;
        }
        let inv = alpha.recip();
        let c5 = c2i.mul(&Interval::one(prec).add(&inv)).hi_dyadic(COMMIT_BITS);
        let c6 = c1i.sub(&c2i.mul(&inv)).lo_dyadic(COMMIT_BITS);
        let g = Growth { c1, c2, n2: n2 as u64, c5, c6, tail_start: t };
        verify_sandwich(spec, roots, sigma, &g, search_ceiling)?;
        return Ok(g);
    }
    Err(Error::hypothesis("growth", "cannot certify C2/C1 < |alpha| below the tail start"))
}

/// Re-checks `C₁n^σ|α|ⁿ ≤ |U_n| ≤ C₂n^σ|α|ⁿ` for `N₂ ≤ n ≤ upto` with exact terms.
pub fn verify_sandwich(spec: &RecurrenceSpec, roots: &RootSystem, sigma: u32, g: &Growth, upto: u64) -> Result<()> {
    if upto < g.n2 {
        return Ok(());
    }
    let terms = spec.terms(upto as usize + 1);
    let mut bits = 128u32;
    'outer: loop {
        let alpha = roots.roots[0].value.enclosure_at(bits)?.abs();
        let prec = alpha.prec();
        let mut pw = alpha.pow_integer(&Integer::from(g.n2));
        for n in g.n2..=upto {
            if n > g.n2 {
                pw = pw.mul(&alpha);
            }
            let base = Interval::from_integer(prec, &Integer::from(n)).pow_u(sigma).mul(&pw);
            let u = Interval::from_integer(prec, &terms[n as usize]).abs();
            let lo_ok = q(prec, &g.c1).mul(&base).le(&u);
            let hi_ok = u.le(&q(prec, &g.c2).mul(&base));
            if !(lo_ok && hi_ok) {
                if bits >= 4096 {
                    return Err(Error::hypothesis("growth", format!("sandwich fails at n = {n}")));
                }
                bits *= 2;
                continue 'outer;
            }
        }
        return Ok(());
    }
}

/// Smallest `N₀` with `|U_{n+1}| > |U_n| > 0` for all `n ≥ N₀`. The growth
/// sandwich settles every `n ≥ N₂` (there `C₁|α| > C₂`); below `N₂` terms are
/// compared exactly. Without growth data no threshold can be certified.
pub fn monotonicity_threshold(spec: &RecurrenceSpec, growth: Option<&Growth>) -> Result<u64> {
    let Some(g) = growth else {
        let terms = spec.terms(64);
        let last_bad = (0..63).rev().find(|&n| !(terms[n + 1].clone().abs() > terms[n].clone().abs() && terms[n] != 0));
        let detail = match last_bad {
            Some(n) => format!("|U(n+1)| > |U(n)| > 0 fails at n = {n}"),
            None => "no certified growth bound".to_string(),
        };
        return Err(Error::hypothesis("monotonicity", format!("monotonicity threshold not found ({detail})")));
    };
    let terms = spec.terms(g.n2 as usize + 2);
    let ok = |n: usize| {
        let a = Integer::from(terms[n].abs_ref());
        let b = Integer::from(terms[n + 1].abs_ref());
        b > a && a > 0
    };
    let mut n0 = g.n2 as usize;
    while n0 > 0 && ok(n0 - 1) {
        n0 -= 1;
    }
    Ok(n0 as u64)
}

fn compare_abs(bp: &BinetPoly, x: &NfElem, y: &NfElem, root: &AlgebraicNumber) -> Result<Ordering> {
    let k = &bp.field;
    let d = k.sub(&k.mul(x, x), &k.mul(y, y));
    if d.is_zero() {
        return Ok(Ordering::Equal);
    }
    let mut bits = 128;
    loop {
        let v = d.eval(&root.enclosure_at(bits)?).re;
        if v.is_pos() {
            return Ok(Ordering::Greater);
        }
        if v.is_neg() {
            return Ok(Ordering::Less);
        }
        if bits >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "coefficient comparison".into(), bits });
        }
        bits *= 2;
    }
}

fn cauchy_bound(coeffs: &[Interval]) -> Option<Integer> {
    let lead = coeffs.last()?.abs();
    if !lead.is_pos() {
        return None;
    }
    let mut m = Interval::zero(lead.prec());
    for c in &coeffs[..coeffs.len() - 1] {
        m = m.max(&c.abs().div(&lead));
    }
    m.add(&Interval::one(lead.prec())).ceil_hi()
}

/// Smallest `N₁ ≥ 1` such that for every `n ≥ N₁`, `|a(n+1)| ≥ |a(n)|` and
/// `|a(n)| ≥ |a(n′)|` for all `0 ≤ n′ < n`. Past a Cauchy bound for the real
/// roots of `a·a′` the modulus increases, which caps the exact scan.
pub fn coefficient_threshold(bp: &BinetPoly, root: &AlgebraicNumber) -> Result<u64> {
    let deg = bp.degree();
    if deg == 0 {
        return Ok(1);
    }
    let mut bits = 128;
    let r = loop {
        let z = root.enclosure_at(bits)?;
        let c: Vec<Interval> = bp.enclosures(&z).into_iter().map(|c| c.re).collect();
        let dc: Vec<Interval> = c.iter().enumerate().skip(1).map(|(l, v)| v.mul_int(&Integer::from(l))).collect();
        if let (Some(ra), Some(rd)) = (cauchy_bound(&c), cauchy_bound(&dc)) {
            break ra.max(rd);
        }
        if bits >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "coefficient threshold".into(), bits });
        }
        bits *= 2;
    };
    let l = r.max(Integer::from(1)).to_u64().expect("small Cauchy bound") as usize;
    let mut vals: Vec<NfElem> = (0..l).map(|n| bp.value_at(&Integer::from(n))).collect();
    let mut arg_max = 0usize;
    for n in 1..l {
        if compare_abs(bp, &vals[n], &vals[arg_max], root)? == Ordering::Greater {
            arg_max = n;
        }
    }
    let mut n0 = l;
    loop {
        let v = bp.value_at(&Integer::from(n0));
        let reached = compare_abs(bp, &v, &vals[arg_max], root)? != Ordering::Less;
        vals.push(v);
        if reached {
            break;
        }
        n0 += 1;
    }
    vals.push(bp.value_at(&Integer::from(n0 + 1)));
    let mut good = vec![false; n0 + 1];
    let mut run_max = 0usize;
    for n in 0..n0 {
        let mono = compare_abs(bp, &vals[n + 1], &vals[n], root)? != Ordering::Less;
        let dom = n == 0 || compare_abs(bp, &vals[n], &vals[run_max], root)? != Ordering::Less;
        good[n] = mono && dom;
        if n > 0 && compare_abs(bp, &vals[n], &vals[run_max], root)? == Ordering::Greater {
            run_max = n;
        }
    }
    let mut n1 = n0.max(1);
    while n1 > 1 && good[n1 - 1] {
        n1 -= 1;
    }
    Ok(n1 as u64)
}

/// Everything attached to one sequence.
#[derive(Clone, Debug)]
pub struct SequenceAnalysis {
    pub spec: RecurrenceSpec,
    pub char_poly: IntPoly,
    pub minimal_poly: IntPoly,
    pub roots: RootSystem,
    pub nondegeneracy: Nondegeneracy,
    pub binet: Binet,
    /// Dominant root `α`.
    pub alpha: AlgebraicNumber,
    /// `|α|` as an algebraic number.
    pub alpha_abs: AlgebraicNumber,
    /// Coefficients of `a(X)` as algebraic numbers, constant term first.
    pub lead_coefficients: Vec<AlgebraicNumber>,
    pub sigma: u32,
    pub envelope: Envelope,
    pub growth: Growth,
    pub n0: u64,
    pub n1: u64,
    pub bits: u32,
}

impl SequenceAnalysis {
    pub fn new(spec: &RecurrenceSpec, config: &AnalysisConfig) -> Result<Self> {
        spec.validate()?;
        let bits = config.bits;
        let cp = char_poly(spec);
        let mp = minimal_poly(spec)?;
        let roots = analyze_roots(&mp, bits)?;
        let nondegeneracy = nondegeneracy_check(&roots)?;
        if let Nondegeneracy::Fail { i, j, ratio, .. } = &nondegeneracy {
            return Err(Error::hypothesis(
                "nondegeneracy",
                format!("roots {} and {} have ratio {ratio}", roots.roots[*i].value, roots.roots[*j].value),
            ));
        }
        let alpha = roots.roots[0].value.clone();
        if !modulus_exceeds_one(&alpha)? {
            monotonicity_threshold(spec, None)?;
        }
        let binet = binet_coefficients(spec, &roots)?;
        let envelope = envelope_constants(&roots, &binet, bits)?;
        let growth = growth_constants(spec, &roots, &binet, &envelope, config.search_ceiling, bits)?;
        let n0 = monotonicity_threshold(spec, Some(&growth))?;
        let n1 = coefficient_threshold(&binet.polys[0], &alpha)?;
        let lead_coefficients = binet_coefficient_numbers(&binet.polys[0], &alpha)?;
        let alpha_abs = alpha.abs_real()?;
        Ok(SequenceAnalysis {
            spec: spec.clone(),
            char_poly: cp,
            minimal_poly: mp,
            sigma: binet.polys[0].degree() as u32,
            roots,
            nondegeneracy,
            binet,
            alpha,
            alpha_abs,
            lead_coefficients,
            envelope,
            growth,
            n0,
            n1,
            bits,
        })
    }

    /// `|α|` as an interval at the given precision.
    pub fn alpha_modulus(&self, bits: u32) -> Result<Interval> {
        Ok(self.alpha.enclosure_at(bits)?.abs())
    }

    /// Enclosure of `a(n)` (real, as the dominant root is real).
    pub fn lead_value(&self, n: &Integer, bits: u32) -> Result<Interval> {
        let z = self.alpha.enclosure_at(bits)?;
        Ok(self.binet.polys[0].value_at(n).eval(&z).re)
    }

    /// Enclosures of the coefficients of `a(X)`.
    pub fn lead_enclosures(&self, bits: u32) -> Result<Vec<Interval>> {
        let z = self.alpha.enclosure_at(bits)?;
        Ok(self.binet.polys[0].enclosures(&z).into_iter().map(|c| c.re).collect())
    }

    pub fn to_json(&self) -> Value {
        let iv = |i: &Interval| {
            let (lo, hi) = i.decimal_strings(20);
            json!([lo, hi])
        };
        let civ = |c: &CInterval| json!({"re": iv(&c.re), "im": iv(&c.im)});
        let roots: Vec<Value> = self
            .roots
            .roots
            .iter()
            .zip(&self.binet.polys)
            .map(|(r, bp)| {
                json!({
                    "value": r.value.to_record(),
                    "multiplicity": r.multiplicity,
                    "modulus": iv(&r.modulus()),
                    "binet_polynomial": bp.enclosures(r.value.enclosure()).iter().map(civ).collect::<Vec<_>>(),
                })
            })
            .collect();
        let e = &self.envelope;
        let g = &self.growth;
        json!({
            "label": self.spec.label,
            "coefficients": self.spec.coefficients,
            "initial": self.spec.initial,
            "characteristic_polynomial": self.char_poly.to_string(),
            "minimal_polynomial": self.minimal_poly.to_string(),
            "roots": roots,
            "dominant_root": {
                "value": self.alpha.to_record(),
                "enclosure": iv(&self.alpha.enclosure().re),
                "height": iv(&self.alpha.weil_height()),
            },
            "nondegeneracy": self.nondegeneracy,
            "sigma": self.sigma,
            "lead_coefficient_heights": self.lead_coefficients.iter().map(|c| iv(&c.weil_height())).collect::<Vec<_>>(),
            "envelope": {
                "A": e.big_a,
                "a_second": e.a_second.to_string(),
                "alpha_prime": e.alpha_prime.to_string(),
                "a_prime": e.a_prime.to_string(),
                "rho": e.rho.to_string(),
            },
            "growth": {
                "epsilon": eps().to_string(),
                "C1": g.c1.to_string(),
                "C2": g.c2.to_string(),
                "N2": g.n2,
                "C5": g.c5.to_string(),
                "C6": g.c6.to_string(),
                "tail_start": g.tail_start,
            },
            "N0": self.n0,
            "N1": self.n1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyze(c: Vec<i64>, init: Vec<i64>) -> SequenceAnalysis {
        SequenceAnalysis::new(&RecurrenceSpec::new("", c, init).unwrap(), &AnalysisConfig::default()).unwrap()
    }

    #[test]
    fn fibonacci_analysis() {
        let a = analyze(vec![1, 1], vec![0, 1]);
        assert_eq!(a.sigma, 0);
        assert_eq!(a.n0, 2);
        assert_eq!(a.n1, 1);
        assert_eq!(a.envelope.big_a, 0);
        assert!((a.envelope.alpha_prime.to_f64() - 1.272019649514069).abs() < 1e-6);
        assert!((a.envelope.a_prime.to_f64() - 0.4472135954999579).abs() < 1e-12);
        assert!(a.growth.n2 <= 5);
        assert!(a.growth.c6 > 0);
    }

    #[test]
    fn powers_of_two_envelope() {
        let a = analyze(vec![2], vec![1]);
        assert_eq!(a.envelope.a_prime, 0);
        assert_eq!(a.envelope.a_second, 0);
        assert!((a.envelope.alpha_prime.to_f64() - 2f64.sqrt()).abs() < 1e-6);
        let tol = Rational::from((1, 1u64 << 60));
        let d1 = Rational::from((99, 100)) - &a.growth.c1;
        let d2 = a.growth.c2.clone() - Rational::from((101, 100));
        assert!(d1 >= 0 && d1 < tol);
        assert!(d2 >= 0 && d2 < tol);
        assert_eq!(a.growth.n2, 1);
    }

    #[test]
    fn roots_three_and_two() {
        // U_n = 3^n + 5·2^n
        let a = analyze(vec![5, -6], vec![6, 13]);
        assert_eq!(a.envelope.a_second, 5);
        assert_eq!(a.envelope.a_prime, 5);
        assert!((a.envelope.alpha_prime.to_f64() - 6f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn alternating_sequence_fails_monotonicity() {
        let spec = RecurrenceSpec::new("", vec![-1], vec![3]).unwrap();
        let e = SequenceAnalysis::new(&spec, &AnalysisConfig::default()).unwrap_err();
        match e {
            Error::HypothesisFailure { stage, reason } => {
                assert_eq!(stage, "monotonicity");
                assert!(reason.contains("monotonicity threshold not found"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn linear_coefficient_threshold() {
        // U_n = (n − 10)·2^n
        let a = analyze(vec![4, -4], vec![-10, -18]);
        assert_eq!(a.sigma, 1);
        assert_eq!(a.n1, 20);
        // U_n = n·2^n
        let b = analyze(vec![4, -4], vec![0, 2]);
        assert_eq!(b.n1, 1);
    }

    #[test]
    fn power_geometric_maximum() {
        let r = Interval::from_rational(128, &Rational::from((1, 2)));
        let m = max_power_times_geometric(2, &r);
        // n^2 / 2^n peaks at n = 3 with 9/8
        assert!(m.contains_rational(&Rational::from((9, 8))) || m.hi_rational() >= (9, 8));
        assert!(m.hi().to_f64() < 1.126);
    }
}
