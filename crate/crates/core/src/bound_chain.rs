//! The chain of explicit constants bounding every two-representation solution
//! of `U_n − U_{n₁} = V_m − V_{m₁}`.
//!
//! Stages run in order: [`BoundDerivation::new`] (orientation, `C₀`, the
//! field degree), [`BoundDerivation::cross_constants`], [`BoundDerivation::case0`],
//! [`BoundDerivation::case12`], [`BoundDerivation::case3`] and
//! [`BoundDerivation::finish`]. Every constant is committed as an exact
//! rational, rounded outward, and logged with its formula.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rug::{Integer, Rational};
use serde::Serialize;
use serde_json::{json, Value};

pub use crate::solve::{solve_log_inequality, LogInequality};

use crate::algebraic::{modified_height, mult_independent, Independence};
use crate::analysis::{AnalysisConfig, SequenceAnalysis, COMMIT_BITS};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linear_forms::bw_constant;
use crate::places::{compute_c0, poly_ratio_height_bound, PlaceSystem};
use crate::recurrence::RecurrenceSpec;
use crate::rootsys::compare_moduli;

const PREC: u32 = 192;

/// A rational lower bound for `1 − e^{−1/2}`: when `|Λ| > 1/2` the quantity
/// `|e^Λ − 1|` is at least this.
pub fn kappa() -> Rational {
    Rational::from((3934, 10000))
}

fn iv(r: &Rational) -> Interval {
    Interval::from_rational(PREC, r)
}

fn ivi(n: &Integer) -> Interval {
    Interval::from_integer(PREC, n)
}

fn up(i: &Interval) -> Rational {
    i.hi_dyadic(COMMIT_BITS)
}

fn down(i: &Interval) -> Rational {
    i.lo_dyadic(COMMIT_BITS)
}

fn pos_log(x: Interval) -> Interval {
    x.ln().max(&Interval::zero(PREC))
}

/// One line of the derivation trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantRecord {
    pub name: String,
    pub index: Option<u32>,
    /// Exact committed value, `p/q` or an integer; absent for unused indices.
    pub value: Option<String>,
    pub approx: Option<String>,
    pub formula: String,
    pub depends_on: Vec<String>,
    pub paper_anchor: String,
}

#[derive(Clone, Debug, Default)]
struct Trace {
    records: Vec<ConstantRecord>,
    values: BTreeMap<String, Rational>,
}

fn index_of(name: &str) -> Option<u32> {
    name.strip_prefix('C').and_then(|s| s.parse().ok())
}

fn approx(r: &Rational) -> String {
    let f = rug::Float::with_val(64, r);
    format!("{:.6e}", f.to_f64())
}

impl Trace {
    fn put(&mut self, name: &str, value: Rational, formula: &str, deps: &[&str], anchor: &str) -> Rational {
        self.records.push(ConstantRecord {
            name: name.to_string(),
            index: index_of(name),
            value: Some(value.to_string()),
            approx: Some(approx(&value)),
            formula: formula.to_string(),
            depends_on: deps.iter().map(|s| s.to_string()).collect(),
            paper_anchor: anchor.to_string(),
        });
        self.values.insert(name.to_string(), value.clone());
        value
    }

    fn upper(&mut self, name: &str, value: &Interval, formula: &str, deps: &[&str], anchor: &str) -> Rational {
        self.put(name, up(value), formula, deps, anchor)
    }

    fn lower(&mut self, name: &str, value: &Interval, formula: &str, deps: &[&str], anchor: &str) -> Rational {
        self.put(name, down(value), formula, deps, anchor)
    }

    fn int(&mut self, name: &str, value: &Integer, formula: &str, deps: &[&str], anchor: &str) -> Integer {
        self.put(name, Rational::from(value), formula, deps, anchor);
        value.clone()
    }
}

/// Per-sequence data used by the chain: `|α|`, `α′`, `a′`, the widened growth
/// constants and the coefficient envelope of `a(X)`.
#[derive(Clone, Debug)]
pub struct Side {
    pub modulus: Interval,
    pub log_modulus: Interval,
    pub alpha_prime: Rational,
    pub a_prime: Rational,
    pub c1: Rational,
    pub c2: Rational,
    /// Upper constant for `|U_n − U_{n₁}|`, valid for `n ≥ N₂` and `0 ≤ n₁ < n`.
    pub c_upper: Rational,
    /// Lower constant for `|U_n − U_{n₁}|` on the same range.
    pub c_lower: Rational,
    pub n0: u64,
    pub n1: u64,
    /// Start of the range on which `c_upper` and `c_lower` hold.
    pub n2: u64,
    pub sigma: u32,
    pub coeffs: Vec<Interval>,
    pub h0: Interval,
    /// `log(|α|/α′)`.
    pub gap: Interval,
}

fn base(modulus: &Interval, sigma: u32, n: u64) -> Interval {
    ivi(&Integer::from(n)).pow_u(sigma).mul(&modulus.pow_integer(&Integer::from(n)))
}

impl Side {
    pub fn of(an: &SequenceAnalysis) -> Result<Self> {
        let modulus = an.alpha_modulus(PREC)?;
        let g = &an.growth;
        let (c_upper, c_lower, n2) = widened_growth(an, &modulus)?;
        let gap = modulus.div(&iv(&an.envelope.alpha_prime)).ln();
        Ok(Side {
            log_modulus: modulus.ln(),
            alpha_prime: an.envelope.alpha_prime.clone(),
            a_prime: an.envelope.a_prime.clone(),
            c1: g.c1.clone(),
            c2: g.c2.clone(),
            c_upper,
            c_lower,
            n0: an.n0,
            n1: an.n1,
            n2,
            sigma: an.sigma,
            coeffs: an.lead_enclosures(PREC)?,
            h0: an.alpha.weil_height(),
            gap,
            modulus,
        })
    }

    /// Largest `|U_j|` for `j ≤ upto`.
    fn max_term(spec: &RecurrenceSpec, upto: u64) -> Integer {
        spec.terms(upto as usize + 1).into_iter().map(|t| t.abs()).max().unwrap_or_default()
    }
}

/// `C₂(1 + 1/|α|)` and `C₁ − C₂/|α|` cover `n₁ ≥ N₂`. Pairs with `n₁ < N₂`
/// are covered through `Q = max_{j < N₂} |U_j|`: the range start moves up to
/// the first `n ≥ max{N₀, N₂}` with `|U_n| > Q`, the upper constant grows by
/// `Q/(n^σ|α|ⁿ)` there, and the lower one is cut to the exact minimum of
/// `(|U_n| − Q)/(n^σ|α|ⁿ)` until `Q` drops below `C₁/2`. Returns the two
/// constants and the new range start.
fn widened_growth(an: &SequenceAnalysis, modulus: &Interval) -> Result<(Rational, Rational, u64)> {
    let g = &an.growth;
    if g.n2 == 0 {
        return Ok((g.c5.clone(), g.c6.clone(), 0));
    }
    let q = an.spec.terms(g.n2 as usize).into_iter().map(|t| t.abs()).max().unwrap_or_default();
    let mut start = g.n2.max(an.n0);
    let mut u = an.spec.term_iter().skip(start as usize).peekable();
    while u.peek().map(|t| Integer::from(t.abs_ref()) <= q).unwrap_or(false) {
        u.next();
        start += 1;
    }
    let qi = ivi(&q);
    let c_upper = iv(&g.c5).max(&iv(&g.c2).add(&qi.div(&base(modulus, an.sigma, start))));
    let half = iv(&g.c1).div_int(2);
    let mut low = iv(&g.c6).min(&half);
    let mut n = start;
    loop {
        let b = base(modulus, an.sigma, n);
        if qi.div(&b).le(&half) {
            break;
        }
        let un = u.next().expect("infinite");
        low = low.min(&ivi(&(un.abs() - &q)).div(&b).lower_point());
        n += 1;
        if n > start + 100_000 {
            return Err(Error::PrecisionExhausted { stage: "growth widening".into(), bits: PREC });
        }
    }
    if !low.is_pos() {
        return Err(Error::hypothesis("growth", "widened lower growth constant is not positive"));
    }
    Ok((up(&c_upper), down(&low), start))
}

/// Bounds `(hi, lo)` with `lo·n^σ ≤ |p(n)| ≤ hi·n^σ` for every `n ≥ from ≥ 1`.
pub fn poly_envelope(coeffs: &[Interval], from: u64) -> Result<(Interval, Interval)> {
    let sigma = coeffs.len() - 1;
    let hi = coeffs.iter().fold(Interval::zero(PREC), |acc, c| acc.add(&c.abs().upper_point()));
    let lc = coeffs[sigma].abs();
    if sigma == 0 {
        return Ok((hi, lc.lower_point()));
    }
    let s = coeffs[..sigma].iter().fold(Interval::zero(PREC), |acc, c| acc.add(&c.abs().upper_point()));
    let t = s.mul_int(&Integer::from(2)).div(&lc.lower_point()).ceil_hi().unwrap_or_default();
    let t = t.to_u64().unwrap_or(u64::MAX).max(from);
    let mut lo = lc.sub(&s.div(&ivi(&Integer::from(t)))).lower_point();
    for n in from..t {
        let x = ivi(&Integer::from(n));
        let mut v = Interval::zero(PREC);
        for c in coeffs.iter().rev() {
            v = v.mul(&x).add(c);
        }
        lo = lo.min(&v.abs().div(&x.pow_u(sigma as u32)).lower_point());
    }
    if !lo.is_pos() {
        return Err(Error::hypothesis("coefficient envelope", "polynomial coefficient vanishes past the threshold"));
    }
    Ok((hi, lo))
}

/// Orders the pair so the first dominant root has the larger modulus.
pub fn orient<'a>(
    u: &'a SequenceAnalysis,
    v: &'a SequenceAnalysis,
) -> Result<(&'a SequenceAnalysis, &'a SequenceAnalysis, bool)> {
    match compare_moduli(&u.alpha, &v.alpha)? {
        Ordering::Greater => Ok((u, v, false)),
        Ordering::Less => Ok((v, u, true)),
        Ordering::Equal => Err(Error::EqualDominantModuli),
    }
}

/// State of a derivation between stages.
#[derive(Clone, Debug)]
pub struct BoundDerivation {
    pub swapped: bool,
    pub u_label: String,
    pub v_label: String,
    pub places: PlaceSystem,
    pub d: u32,
    pub u: Side,
    pub v: Side,
    trace: Trace,
    u_seq: RecurrenceSpec,
    v_seq: RecurrenceSpec,
    /// `C̃` bounds for `h₀(a(n)/b(m))`, `h₀(a(n₁)/a(n))`, `h₀(b(m₁)/b(m))`.
    pub ct_ab: Rational,
    pub ct_aa: Rational,
    pub ct_bb: Rational,
    pub h_prime_alpha: Interval,
    pub h_prime_beta: Interval,
    pub exits: BTreeMap<String, Integer>,
    pub thresholds: BTreeMap<String, Integer>,
}

impl BoundDerivation {
    /// Orientation, independence, `C₀` and the field degree `d = [ℚ(α, β):ℚ]`.
    pub fn new(u: &SequenceAnalysis, v: &SequenceAnalysis) -> Result<Self> {
        match mult_independent(&u.alpha, &v.alpha)? {
            Independence::Dependent { p, q } => {
                return Err(Error::hypothesis(
                    "independence",
                    format!("dominant roots are dependent: ({})^{p} = ({})^{q}", u.alpha, v.alpha),
                ))
            }
            Independence::Independent | Independence::IndependentUpTo { .. } => {}
        }
        let (u, v, swapped) = orient(u, v)?;
        let places = compute_c0(&u.alpha, &v.alpha)?;
        let d = places.field.degree as u32;
        let mut trace = Trace::default();
        let c0_formula = match &places.c0_symbolic {
            Some(s) => format!("min(C̃₁, C̃₂)/|S| = {s}"),
            None => "min(C̃₁, C̃₂)/|S| over the selected pair of places".to_string(),
        };
        trace.put("C0", places.c0.clone(), &c0_formula, &[], "height lower bound for quotients of powers");
        let us = Side::of(u)?;
        let vs = Side::of(v)?;
        let ct_ab = poly_ratio_height_bound(&u.lead_coefficients, &v.lead_coefficients);
        let ct_aa = poly_ratio_height_bound(&u.lead_coefficients, &u.lead_coefficients);
        let ct_bb = poly_ratio_height_bound(&v.lead_coefficients, &v.lead_coefficients);
        let h_prime_alpha = modified_height(&u.alpha_abs, d as usize)?;
        let h_prime_beta = modified_height(&v.alpha_abs, d as usize)?;

        for (names, s) in [(["C1", "C2", "C5", "C6"], &us), (["C3", "C4", "C7", "C8"], &vs)] {
            let seq = if std::ptr::eq(s, &us) { "U" } else { "V" };
            trace.put(names[0], s.c1.clone(), &format!("(1 − ε)·inf |{seq}_n|/(n^σ|α|ⁿ)"), &[], "growth sandwich");
            trace.put(names[1], s.c2.clone(), &format!("(1 + ε)·sup |{seq}_n|/(n^σ|α|ⁿ)"), &[], "growth sandwich");
            trace.put(
                names[2],
                s.c_upper.clone(),
                "C₂(1 + 1/|α|), widened for small n₁",
                &[names[1]],
                "difference sandwich",
            );
            trace.put(
                names[3],
                s.c_lower.clone(),
                "C₁ − C₂/|α|, narrowed for small n₁",
                &[names[0], names[1]],
                "difference sandwich",
            );
        }
        trace.put("C10", Rational::new(), "", &[], "");
        if let Some(r) = trace.records.last_mut() {
            r.value = None;
            r.approx = None;
            r.formula = "index not used".into();
        }
        trace.values.remove("C10");
        for (name, val) in [("C~", &ct_ab), ("C~aa", &ct_aa), ("C~bb", &ct_bb)] {
            trace.put(
                name,
                val.clone(),
                "Horner height bound for a ratio of polynomial values",
                &[],
                "polynomial value heights",
            );
        }
        Ok(BoundDerivation {
            swapped,
            u_label: u.spec.label.clone(),
            v_label: v.spec.label.clone(),
            places,
            d,
            u: us,
            v: vs,
            trace,
            u_seq: u.spec.clone(),
            v_seq: v.spec.clone(),
            ct_ab,
            ct_aa,
            ct_bb,
            h_prime_alpha,
            h_prime_beta,
            exits: BTreeMap::new(),
            thresholds: BTreeMap::new(),
        })
    }

    pub fn value(&self, name: &str) -> Option<&Rational> {
        self.trace.values.get(name)
    }

    fn c(&self, name: &str) -> Interval {
        iv(self.trace.values.get(name).unwrap_or_else(|| panic!("{name} not derived yet")))
    }

    fn threshold(&self, name: &str) -> Integer {
        self.thresholds[name].clone()
    }

    fn log_threshold(&self, name: &str) -> Interval {
        ivi(&self.threshold(name)).ln()
    }

    fn record_threshold(&mut self, name: &str, value: Integer, formula: &str, deps: &[&str], anchor: &str) {
        self.trace.int(name, &value, formula, deps, anchor);
        self.thresholds.insert(name.to_string(), value);
    }

    /// `λ = log|β|/log|α|`.
    pub fn lambda(&self) -> Interval {
        self.v.log_modulus.div(&self.u.log_modulus)
    }

    /// `C₉`, `M₃`, `N₃`, `N₄`, `M₄` and the coefficient envelopes.
    pub fn cross_constants(&mut self) -> Result<()> {
        let (u, v) = (self.u.clone(), self.v.clone());
        let c9 = pos_log(self.c("C7").div(&self.c("C6"))).div(&u.log_modulus);
        let c9 = self.trace.upper("C9", &c9, "max{0, log(C₇/C₆)/log|α|}", &["C6", "C7"], "index comparison");
        let lam = self.lambda();
        if !lam.lt(&Interval::one(PREC)) {
            return Err(Error::EqualDominantModuli);
        }
        let a = down(&Interval::one(PREC).sub(&lam));
        let b = up(&Interval::from_int(PREC, v.sigma as i64).div(&u.log_modulus));
        let m3 = solve_log_inequality(&LogInequality::new(a, b, 1, c9));
        self.record_threshold(
            "M3",
            m3.clone(),
            "least m with m(1 − log|β|/log|α|) > τ·log m/log|α| + C₉ from there on",
            &["C9"],
            "index comparison",
        );
        // N₃: least n compatible with C₅n^σ|α|ⁿ ≥ C₈M₃^τ|β|^{M₃}.
        let m3u = m3.to_u64().ok_or_else(|| Error::hypothesis("cross constants", "M3 too large"))?;
        let rhs = self.c("C8").mul(&base(&v.modulus, v.sigma, m3u));
        let mut n3 = 0u64;
        while !self.c("C5").mul(&base(&u.modulus, u.sigma, n3)).upper_point().ge(&rhs.lower_point()) {
            n3 += 1;
        }
        self.record_threshold(
            "N3",
            Integer::from(n3),
            "least n with C₅n^σ|α|ⁿ ≥ C₈M₃^τ|β|^{M₃}",
            &["C5", "C8", "M3"],
            "index comparison",
        );
        let n4 = [u.n0, u.n1, u.n2, n3, 3].into_iter().max().expect("nonempty");
        let m4 = [v.n0, v.n1, v.n2, m3u, 3].into_iter().max().expect("nonempty");
        let growth = "growth threshold, raised until |U_n| exceeds every earlier term";
        for (name, val, formula) in [
            ("N0", u.n0, "monotonicity threshold of U"),
            ("N1", u.n1, "monotonicity threshold of |a(n)|"),
            ("N2", u.n2, growth),
            ("M0", v.n0, "monotonicity threshold of V"),
            ("M1", v.n1, "monotonicity threshold of |b(m)|"),
            ("M2", v.n2, growth),
        ] {
            self.record_threshold(name, Integer::from(val), formula, &[], "sequence thresholds");
        }
        self.record_threshold(
            "N4",
            Integer::from(n4),
            "max{N₀, N₁, N₂, N₃, 3}",
            &["N0", "N1", "N2", "N3"],
            "thresholds",
        );
        self.record_threshold(
            "M4",
            Integer::from(m4),
            "max{M₀, M₁, M₂, M₃, 3}",
            &["M0", "M1", "M2", "M3"],
            "thresholds",
        );

        let (ahi, alo) = poly_envelope(&u.coeffs, n4)?;
        let (bhi, blo) = poly_envelope(&v.coeffs, m4)?;
        self.trace.upper("a_hi", &ahi, "Σ|a_l|: |a(n)| ≤ a_hi·n^σ for n ≥ 1", &[], "coefficient envelopes");
        self.trace.lower("a_lo", &alo, "inf over n ≥ N₄ of |a(n)|/n^σ", &["N4"], "coefficient envelopes");
        self.trace.upper("b_hi", &bhi, "Σ|b_l|: |b(m)| ≤ b_hi·m^τ for m ≥ 1", &[], "coefficient envelopes");
        self.trace.lower("b_lo", &blo, "inf over m ≥ M₄ of |b(m)|/m^τ", &["M4"], "coefficient envelopes");
        self.trace.put("alpha'", u.alpha_prime.clone(), "dyadic point between max(|α₂|, 1) and |α|", &[], "envelope");
        self.trace.put("a'", u.a_prime.clone(), "envelope constant of U", &[], "envelope");
        self.trace.put("beta'", v.alpha_prime.clone(), "dyadic point between max(|β₂|, 1) and |β|", &[], "envelope");
        self.trace.put("b'", v.a_prime.clone(), "envelope constant of V", &[], "envelope");
        Ok(())
    }

    fn bw3(&self) -> Interval {
        bw_constant(3, self.d, PREC)
    }

    fn small_index_exits(&mut self) -> Result<()> {
        let (u, v) = (self.u.clone(), self.v.clone());
        let n4 = self.threshold("N4").to_u64().expect("small");
        let m4 = self.threshold("M4").to_u64().expect("small");
        // n ≤ N₄: |V_m − V_{m₁}| ≤ 2·max|U_j| while it is at least C₈m^τ|β|^m.
        let qu = ivi(&(Side::max_term(&self.u_seq, n4) * 2u32));
        let mut m = v.n2;
        while !self.c("C8").mul(&base(&v.modulus, v.sigma, m)).gt(&qu) {
            m += 1;
        }
        self.exits.insert("small_n".into(), Integer::from(m.saturating_sub(1)));
        let qv = ivi(&(Side::max_term(&self.v_seq, m4) * 2u32));
        let mut n = u.n2;
        while !self.c("C6").mul(&base(&u.modulus, u.sigma, n)).gt(&qv) {
            n += 1;
        }
        self.exits.insert("small_m".into(), Integer::from(n.saturating_sub(1)));
        Ok(())
    }

    fn exit_bound(&mut self, name: &str, a: Rational, b: Rational, p: u32, c: Rational) {
        let m = solve_log_inequality(&LogInequality::new(a, b, p, c));
        self.exits.insert(name.into(), m - 1u32);
    }

    /// `C₁₁ … C₁₈` and the exit for `Φ = 0`.
    pub fn case0(&mut self) -> Result<()> {
        self.small_index_exits()?;
        let t = &mut self.trace;
        let g = |t: &Trace, n: &str| iv(&t.values[n]);
        let r76 = g(t, "C7").div(&g(t, "C6"));
        let blo = g(t, "b_lo");
        let a1 = "case 0 inequality";
        t.upper("C11", &r76.mul(&g(t, "a_hi")).div(&blo), "C₇·a_hi/(C₆·b_lo)", &["C6", "C7", "a_hi", "b_lo"], a1);
        t.upper("C12", &r76.mul(&g(t, "a'")).div(&blo), "C₇·a′/(C₆·b_lo)", &["C6", "C7", "a'", "b_lo"], a1);
        t.upper("C13", &r76.mul(&g(t, "a'")).div(&blo), "C₇·a′/(C₆·b_lo)", &["C6", "C7", "a'", "b_lo"], a1);
        t.upper("C14", &g(t, "b'").div(&blo), "b′/b_lo", &["b'", "b_lo"], a1);
        t.upper("C15", &g(t, "b'").div(&blo), "b′/b_lo", &["b'", "b_lo"], a1);
        let c16 = g(t, "C11").add(&g(t, "C12")).add(&g(t, "C13")).mul_int(&Integer::from(2));
        t.upper("C16", &c16, "2(C₁₁ + C₁₂ + C₁₃)", &["C11", "C12", "C13"], a1);
        let c17 = Interval::one(PREC).add(&g(t, "C14")).add(&g(t, "C15")).mul_int(&Integer::from(2));
        t.upper("C17", &c17, "2(1 + C₁₄ + C₁₅)", &["C14", "C15"], a1);

        let log_m4 = self.log_threshold("M4");
        let log_m3 = self.log_threshold("M3");
        let d = Interval::from_int(PREC, self.d as i64);
        let ct = iv(&self.ct_ab);
        let ctp = ct.max(&Interval::one(PREC).div(&d.mul(&log_m4)));
        let bw = self.bw3();
        let hh = self.h_prime_alpha.mul(&self.h_prime_beta);
        let t = &mut self.trace;
        t.upper("C~'", &ctp, "max{C̃, 1/(d·log M₄)}: h′(η₁) ≤ C̃′·log m", &["C~", "M4"], "case 0 linear form");
        let k0 = bw.mul(&iv(&t.values["C~'"])).mul(&hh);
        let c16 = iv(&t.values["C16"]);
        let c17 = iv(&t.values["C17"]);
        let absorb = pos_log(c16.max(&c17).mul_int(&Integer::from(2))).div(&log_m4.sqr());
        let raw = k0.add(&absorb);
        let ka = iv(&kappa());
        let floor = c16.div(&ka).ln().max(&c17.div(&ka).ln()).div(&log_m3.sqr());
        t.upper(
            "C18",
            &raw.max(&floor),
            "max{C(3,d)·C̃′·h′(α)·h′(β) + log⁺(2·max{C₁₆, C₁₇})/(log M₄)², max{log(C₁₆/κ), log(C₁₇/κ)}/(log M₃)²}",
            &["C~'", "C16", "C17", "M3", "M4"],
            "case 0 lemma",
        );
        let c0 = self.trace.values["C0"].clone();
        self.exit_bound("phi0", c0, self.ct_ab.clone(), 1, Rational::new());
        Ok(())
    }

    /// `C₁₉ … C₃₅` and the exits for `Φ₁ = 0`, `Φ₂ = 0`.
    pub fn case12(&mut self) -> Result<()> {
        let (u, v) = (self.u.clone(), self.v.clone());
        let log_m4 = self.log_threshold("M4");
        let log_m3 = self.log_threshold("M3");
        let ln2 = Interval::ln2(PREC);
        let inv_d = Interval::one(PREC).div_int(self.d as i64);
        let bw = self.bw3();
        let hh = self.h_prime_alpha.mul(&self.h_prime_beta);
        let t = &mut self.trace;
        let g = |t: &Trace, n: &str| iv(&t.values[n]);
        let one = Interval::one(PREC);
        let a1 = "case 1 inequality";
        let a2 = "case 2 inequality";
        t.put("C19", t.values["C12"].clone(), "C₁₂", &["C12"], a1);
        t.put("C20", t.values["C13"].clone(), "C₁₃", &["C13"], a1);
        t.put("C21", t.values["C14"].clone(), "C₁₄", &["C14"], a1);
        t.put("C22", t.values["C15"].clone(), "C₁₅", &["C15"], a1);
        let c23 = one.add(&g(t, "C19")).add(&g(t, "C20")).add(&g(t, "C21")).add(&g(t, "C22"));
        t.upper("C23", &c23, "1 + C₁₉ + C₂₀ + C₂₁ + C₂₂", &["C19", "C20", "C21", "C22"], a1);
        let alo = g(t, "a_lo");
        t.upper("C24", &g(t, "a'").div(&alo), "a′/a_lo", &["a'", "a_lo"], a2);
        t.upper("C25", &g(t, "a'").div(&alo), "a′/a_lo", &["a'", "a_lo"], a2);
        let c26 = g(t, "b'").mul(&g(t, "C5")).div(&alo.mul(&g(t, "C8")));
        t.upper("C26", &c26, "b′·C₅/(a_lo·C₈)", &["b'", "C5", "C8", "a_lo"], a2);
        t.upper("C27", &c26, "b′·C₅/(a_lo·C₈)", &["b'", "C5", "C8", "a_lo"], a2);
        let c28 = one.add(&g(t, "C24")).add(&g(t, "C25")).add(&g(t, "C26")).add(&g(t, "C27"));
        t.upper("C28", &c28, "1 + C₂₄ + C₂₅ + C₂₆ + C₂₇", &["C24", "C25", "C26", "C27"], a2);

        let c18 = g(t, "C18");
        let c29 = iv(&self.ct_ab)
            .add(&iv(&self.ct_aa))
            .div(&log_m4)
            .add(&c18.mul(&u.h0).div(&u.gap))
            .add(&ln2.div(&log_m4.sqr()));
        t.upper(
            "C29",
            &c29,
            "(C̃ + C̃aa)/log M₄ + C₁₈·h₀(α)/log(|α|/α′) + log 2/(log M₄)²",
            &["C~", "C~aa", "C18", "M4"],
            "case 1 height",
        );
        let floor = inv_d.div(&log_m4.sqr());
        t.upper("C30", &g(t, "C29").max(&floor), "max{C₂₉, 1/(d(log M₄)²)}", &["C29", "M4"], "case 1 height");
        let c31 = iv(&self.ct_ab)
            .add(&iv(&self.ct_bb))
            .div(&log_m4)
            .add(&c18.mul(&v.h0).div(&v.gap))
            .add(&ln2.div(&log_m4.sqr()));
        t.upper(
            "C31",
            &c31,
            "(C̃ + C̃bb)/log M₄ + C₁₈·h₀(β)/log(|β|/β′) + log 2/(log M₄)²",
            &["C~", "C~bb", "C18", "M4"],
            "case 2 height",
        );
        t.upper("C32", &g(t, "C31").max(&floor), "max{C₃₁, 1/(d(log M₄)²)}", &["C31", "M4"], "case 2 height");
        let cube = log_m4.pow_u(3);
        let c33 = bw.mul(&g(t, "C30")).mul(&hh).add(&pos_log(g(t, "C23").mul_int(&Integer::from(2))).div(&cube));
        t.upper("C33", &c33, "C(3,d)·C₃₀·h′(α)·h′(β) + log⁺(2C₂₃)/(log M₄)³", &["C30", "C23", "M4"], "case 1 bound");
        let c34 = bw.mul(&g(t, "C32")).mul(&hh).add(&pos_log(g(t, "C28").mul_int(&Integer::from(2))).div(&cube));
        t.upper("C34", &c34, "C(3,d)·C₃₂·h′(α)·h′(β) + log⁺(2C₂₈)/(log M₄)³", &["C32", "C28", "M4"], "case 2 bound");
        let ka = iv(&kappa());
        let floor =
            g(t, "C28").div(&ka).ln().max(&g(t, "C23").div(&ka).ln()).div(&log_m3.pow_u(3)).max(&c18.div(&log_m4));
        t.upper(
            "C35",
            &g(t, "C33").max(&g(t, "C34")).max(&floor),
            "max{C₃₃, C₃₄}, raised to max{log(C₂₈/κ), log(C₂₃/κ)}/(log M₃)³ and C₁₈/log M₄",
            &["C33", "C34", "C23", "C28", "C18", "M3", "M4"],
            "case 1/2 lemma",
        );

        let c0 = self.trace.values["C0"].clone();
        let c29 = self.trace.values["C29"].clone();
        self.exit_bound("phi1", c0.clone(), c29, 2, Rational::new());
        // Φ₂ = 0 bounds n; n ≥ λm − (log⁺(C₅/C₈) + σ·log m)/log|α| turns it into a bound on m.
        let lam = self.lambda();
        let c0i = iv(&c0);
        let shift = pos_log(self.c("C5").div(&self.c("C8"))).div(&u.log_modulus);
        let b = self.c("C31").add(&c0i.mul_int(&Integer::from(u.sigma)).div(&u.log_modulus.mul(&log_m4)));
        self.exit_bound("phi2", down(&c0i.mul(&lam)), up(&b), 2, up(&c0i.mul(&shift)));
        Ok(())
    }

    /// `γ`, `Γ`, `C₃₆ … C₄₅` and the exit for `Φ₃ = 0`.
    pub fn case3(&mut self) -> Result<()> {
        let (u, v) = (self.u.clone(), self.v.clone());
        let log_m4 = self.log_threshold("M4");
        let m4 = self.threshold("M4");
        let ln2 = Interval::ln2(PREC);
        let one = Interval::one(PREC);
        let inv_d = one.div_int(self.d as i64);
        let bw = self.bw3();
        let hh = self.h_prime_alpha.mul(&self.h_prime_beta);
        let t = &mut self.trace;
        let g = |t: &Trace, n: &str| iv(&t.values[n]);
        let a3 = "case 3 inequality";
        let log_ap = iv(&u.alpha_prime).ln();
        let gamma = v.log_modulus.mul(&log_ap).div(&u.log_modulus).exp();
        t.upper("gamma", &gamma, "|β|^{log α′/log|α|}", &["alpha'"], a3);
        let big_gamma = v.modulus.div(&iv(&v.alpha_prime)).min(&v.modulus.div(&gamma));
        if !big_gamma.gt(&one) {
            return Err(Error::hypothesis("case 3", "Γ is not certified above 1"));
        }
        t.lower("Gamma", &big_gamma, "min{|β|/β′, |β|/γ}", &["gamma", "beta'"], a3);
        let c36 = iv(&u.alpha_prime).ln().mul(&g(t, "C9")).exp();
        t.upper("C36", &c36, "α′^{C₉}", &["alpha'", "C9"], a3);
        let denom = g(t, "b_lo").mul(&one.sub(&v.modulus.recip()));
        t.upper(
            "C37",
            &g(t, "C36").mul(&g(t, "a'")).div(&denom),
            "C₃₆·a′/(b_lo(1 − 1/|β|))",
            &["C36", "a'", "b_lo"],
            a3,
        );
        t.upper("C38", &g(t, "b'").div(&denom), "b′/(b_lo(1 − 1/|β|))", &["b'", "b_lo"], a3);
        t.upper("C39", &g(t, "b'").div(&denom), "b′/(b_lo(1 − 1/|β|))", &["b'", "b_lo"], a3);
        let c40 = g(t, "C37").mul_int(&Integer::from(2)).add(&g(t, "C38")).add(&g(t, "C39"));
        t.upper("C40", &c40, "2C₃₇ + C₃₈ + C₃₉", &["C37", "C38", "C39"], a3);
        let c35 = g(t, "C35");
        let c41 = iv(&self.ct_ab)
            .add(&iv(&self.ct_aa))
            .add(&iv(&self.ct_bb))
            .div(&log_m4.sqr())
            .add(&c35.mul(&u.h0.div(&u.gap).add(&v.h0.div(&v.gap))))
            .add(&ln2.mul_int(&Integer::from(2)).div(&log_m4.pow_u(3)));
        t.upper(
            "C41",
            &c41,
            "(C̃ + C̃aa + C̃bb)/(log M₄)² + C₃₅(h₀(α)/log(|α|/α′) + h₀(β)/log(|β|/β′)) + 2log 2/(log M₄)³",
            &["C~", "C~aa", "C~bb", "C35", "M4"],
            "case 3 height",
        );
        t.upper(
            "C42",
            &g(t, "C41").max(&inv_d.div(&log_m4.pow_u(3))),
            "max{C₄₁, 1/(d(log M₄)³)}",
            &["C41", "M4"],
            "case 3 height",
        );
        t.put("C43", t.values["C41"].clone(), "C₄₁", &["C41"], "case 3 degenerate exit");
        t.upper("C44", &bw.mul(&g(t, "C42")).mul(&hh), "C(3,d)·C₄₂·h′(α)·h′(β)", &["C42"], "case 3 bound");

        let c40r = t.values["C40"].clone();
        let gamma_lo = t.values["Gamma"].clone();
        let log_gamma = iv(&gamma_lo).ln();
        let c44 = t.values["C44"].clone();
        let mut c45 = m4.clone();
        if c40r > 0 {
            let c = up(&ln2.add(&iv(&c40r).ln()));
            let m = solve_log_inequality(&LogInequality::new(down(&log_gamma), c44, 4, c));
            let fallback = iv(&c40r).div(&iv(&kappa())).ln().div(&log_gamma).ceil_hi().unwrap_or_default();
            c45 = c45.max(m).max(fallback);
        }
        self.trace.int(
            "C45",
            &c45,
            "least m from which m·log Γ > C₄₄(log m)⁴ + log 2 + log C₄₀, raised to log(C₄₀/κ)/log Γ and M₄",
            &["Gamma", "C44", "C40", "M4"],
            "final bound",
        );
        let c0 = self.trace.values["C0"].clone();
        let c43 = self.trace.values["C43"].clone();
        self.exit_bound("phi3", c0, c43, 3, Rational::new());
        Ok(())
    }

    pub fn finish(self) -> BoundReport {
        let c45 = Integer::from(self.trace.values["C45"].numer());
        let mut bound = c45.clone();
        for v in self.exits.values() {
            bound = bound.max(v.clone());
        }
        for k in ["N4", "M4"] {
            bound = bound.max(self.thresholds[k].clone());
        }
        BoundReport {
            u_label: self.u_label,
            v_label: self.v_label,
            swapped: self.swapped,
            d: self.d,
            c0: self.places,
            records: self.trace.records,
            values: self.trace.values,
            thresholds: self.thresholds,
            exits: self.exits,
            c45,
            bound,
            mirrored: None,
        }
    }
}

/// The audited outcome of a derivation.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub u_label: String,
    pub v_label: String,
    pub swapped: bool,
    pub d: u32,
    pub c0: PlaceSystem,
    pub records: Vec<ConstantRecord>,
    pub values: BTreeMap<String, Rational>,
    pub thresholds: BTreeMap<String, Integer>,
    pub exits: BTreeMap<String, Integer>,
    pub c45: Integer,
    /// Every solution with `m > m₁` has both indices at most this.
    pub bound: Integer,
    /// The run with `n` and `n₁` interchanged, when it was performed.
    pub mirrored: Option<Box<BoundReport>>,
}

impl BoundReport {
    pub fn value(&self, name: &str) -> &Rational {
        &self.values[name]
    }

    pub fn threshold(&self, name: &str) -> u64 {
        self.thresholds[name].to_u64().expect("small threshold")
    }

    pub fn to_json(&self) -> Value {
        let constants: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "index": r.index,
                    "value": r.value,
                    "approx": r.approx,
                    "formula": r.formula,
                    "depends_on": r.depends_on,
                    "paper_anchor": r.paper_anchor,
                })
            })
            .collect();
        let exits: BTreeMap<&String, String> = self.exits.iter().map(|(k, v)| (k, v.to_string())).collect();
        json!({
            "u": self.u_label,
            "v": self.v_label,
            "orientation": if self.swapped { "swapped" } else { "direct" },
            "field_degree": self.d,
            "c0": self.c0.to_json(),
            "constants": constants,
            "exits": exits,
            "C45": self.c45.to_string(),
            "bound": self.bound.to_string(),
            "mirrored_bound": self.mirrored.as_ref().map(|m| m.bound.to_string()),
        })
    }
}

/// Runs every stage for one orientation.
pub fn derive_one(u: &SequenceAnalysis, v: &SequenceAnalysis) -> Result<BoundReport> {
    let mut d = BoundDerivation::new(u, v)?;
    d.cross_constants()?;
    d.case0()?;
    d.case12()?;
    d.case3()?;
    Ok(d.finish())
}

fn negated(spec: &RecurrenceSpec) -> RecurrenceSpec {
    RecurrenceSpec {
        label: format!("-{}", spec.label),
        coefficients: spec.coefficients.clone(),
        initial: spec.initial.iter().map(|x| -x).collect(),
    }
}

/// Both orientations: `n > n₁` directly, and `n < n₁` as the same problem
/// for `(U, −V)`. The reported bound is the larger of the two.
pub fn derive_all(u: &SequenceAnalysis, v: &SequenceAnalysis, config: &AnalysisConfig) -> Result<BoundReport> {
    let mut report = derive_one(u, v)?;
    let v_neg = SequenceAnalysis::new(&negated(&v.spec), config)?;
    let mirror = derive_one(u, &v_neg)?;
    report.bound = report.bound.clone().max(mirror.bound.clone());
    report.mirrored = Some(Box::new(mirror));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyze(label: &str, c: Vec<i64>, init: Vec<i64>) -> SequenceAnalysis {
        SequenceAnalysis::new(&RecurrenceSpec::new(label, c, init).unwrap(), &AnalysisConfig::default()).unwrap()
    }

    fn fib() -> SequenceAnalysis {
        analyze("fib", vec![1, 1], vec![0, 1])
    }

    fn trib() -> SequenceAnalysis {
        analyze("trib", vec![1, 1, 1], vec![0, 1, 1])
    }

    fn r(x: &Rational) -> Interval {
        iv(x)
    }

    #[test]
    fn fibonacci_tribonacci_invariants() {
        let rep = derive_one(&fib(), &trib()).unwrap();
        assert!(rep.swapped);
        assert_eq!(rep.d, 6);
        let c10 = rep.records.iter().find(|c| c.index == Some(10)).unwrap();
        assert!(c10.value.is_none());
        for rec in &rep.records {
            if let Some(v) = rep.values.get(&rec.name) {
                if rec.name != "a'" && rec.name != "b'" {
                    assert!(*v > 0, "{} = {v}", rec.name);
                }
            }
            for dep in &rec.depends_on {
                assert!(rep.values.contains_key(dep) || rep.thresholds.contains_key(dep), "{dep}");
            }
        }
        let gamma = r(rep.value("gamma"));
        assert!(r(rep.value("Gamma")).gt(&Interval::one(PREC)));
        assert!(gamma.gt(&Interval::one(PREC)));
        assert!(gamma.lt(&fib().alpha_modulus(PREC).unwrap()));
        let m4 = Integer::from(rep.threshold("M4"));
        assert!(rep.c45 >= m4);
        assert!(rep.bound >= rep.c45);
        let c35 = rep.value("C35");
        assert!(c35 >= rep.value("C33") && c35 >= rep.value("C34"));

        let ka = r(&kappa());
        let lm3 = ivi(&Integer::from(rep.threshold("M3"))).ln();
        let floor18 = r(rep.value("C16")).div(&ka).ln().max(&r(rep.value("C17")).div(&ka).ln()).div(&lm3.sqr());
        assert!(floor18.le(&r(rep.value("C18"))));
        let floor35 = r(rep.value("C28")).div(&ka).ln().max(&r(rep.value("C23")).div(&ka).ln()).div(&lm3.pow_u(3));
        assert!(floor35.le(&r(c35)));
        let floor45 = r(rep.value("C40")).div(&ka).ln().div(&r(rep.value("Gamma")).ln());
        assert!(floor45.le(&ivi(&rep.c45)));
        assert!(rep.c45 > Integer::from(Integer::u_pow_u(10, 15)));
    }

    #[test]
    fn orientation_of_two_and_fibonacci() {
        let two = analyze("two", vec![2], vec![1]);
        let rep = derive_one(&two, &fib()).unwrap();
        assert!(!rep.swapped);
        assert!(rep.bound > 0);
        assert_eq!(rep.to_json()["orientation"], "direct");
    }

    #[test]
    fn dependent_roots_are_rejected() {
        let two = analyze("two", vec![2], vec![1]);
        let four = analyze("four", vec![5, -4], vec![3, 6]);
        let e = derive_one(&two, &four).unwrap_err();
        match e {
            Error::HypothesisFailure { stage, .. } => assert_eq!(stage, "independence"),
            other => panic!("{other:?}"),
        }
        assert!(derive_one(&fib(), &fib()).is_err());
    }

    #[test]
    fn case_one_exit_example() {
        let ineq = LogInequality::new(Rational::from((1, 10)), 7.into(), 2, 0.into());
        let m = solve_log_inequality(&ineq);
        assert!(!ineq.holds(&Integer::from(&m - 1u32)));
        for k in 0..1000u32 {
            assert!(ineq.holds(&Integer::from(&m + k)));
        }
        assert!(m > 5000 && m < 5200, "{m}");
    }

    #[test]
    fn enlarging_c2_never_lowers_the_bound() {
        let base = derive_one(&trib(), &fib()).unwrap();
        let mut t = trib();
        let modulus = t.alpha_modulus(PREC).unwrap();
        t.growth.c2 *= Rational::from(2);
        t.growth.c5 = up(&r(&t.growth.c2).mul(&Interval::one(PREC).add(&modulus.recip())));
        let bigger = derive_one(&t, &fib()).unwrap();
        assert!(bigger.c45 >= base.c45);
        assert!(bigger.bound >= base.bound);
    }

    #[test]
    fn both_orientations_are_deterministic() {
        let cfg = AnalysisConfig::default();
        let a = derive_all(&fib(), &trib(), &cfg).unwrap();
        let b = derive_all(&fib(), &trib(), &cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let mirror = a.mirrored.as_ref().unwrap();
        assert!(a.bound >= mirror.bound);
    }

    #[test]
    fn polynomial_envelope_of_linear_coefficient() {
        // p(X) = X − 10 on n ≥ 1: |p(n)|/n bottoms out at n = 10
        let c = vec![Interval::from_int(PREC, -10), Interval::one(PREC)];
        let (hi, lo) = poly_envelope(&c, 11).unwrap();
        assert!(hi.contains_rational(&Rational::from(11)));
        assert!(lo.le(&Interval::one(PREC).div_int(11)));
        assert!(lo.is_pos());
        assert!(poly_envelope(&c, 1).is_err());
    }
}
