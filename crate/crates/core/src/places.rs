//! Places of the compositum `K = ℚ(x, y)` and the constants bounding
//! `h₀(xⁿ/yᵐ)` from below and `h₀(p(n)/q(m))` from above.

use std::fmt;

use rug::{Integer, Rational};
use serde::Serialize;

use crate::algebraic::{AlgebraicNumber, WORKING_BITS};
use crate::error::{Error, Result};
use crate::factor::{bits_for_product, integer_poly_from_roots, irreducible_factor, FACTOR_DEGREE_CEILING};
use crate::interval::{CInterval, Interval};
use crate::poly::IntPoly;
use crate::roots::{isolate_roots, Root, PRECISION_CEILING};

/// The compositum of the fields generated by two algebraic numbers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Compositum {
    pub degree: usize,
    /// Shift `t` of the primitive element `a·b·(x + t·y)`.
    pub shift: i64,
    /// Minimal polynomial of the primitive element.
    pub defining_poly: IntPoly,
    /// Embeddings of `K`, as (conjugate of x, conjugate of y) index pairs.
    pub embeddings: Vec<(usize, usize)>,
}

fn theta_boxes(x: &AlgebraicNumber, y: &AlgebraicNumber, t: i64, bits: u32) -> Result<Vec<CInterval>> {
    let s = Integer::from(x.leading_coeff() * y.leading_coeff());
    let prec = bits + 64;
    let sc = CInterval::from_integer(prec, &s);
    let tc = CInterval::from_int(prec, t);
    let xs = x.refined(bits)?;
    let ys = y.refined(bits)?;
    let mut out = Vec::new();
    for xi in xs.conjugates() {
        for yj in ys.conjugates() {
            out.push(xi.enclosure.add(&yj.enclosure.mul(&tc)).mul(&sc));
        }
    }
    Ok(out)
}

fn pairwise_disjoint(b: &[CInterval]) -> bool {
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| b[i].disjoint(&b[j])))
}

/// Builds `K = ℚ(x, y)` with a primitive element and its embeddings.
pub fn compositum(x: &AlgebraicNumber, y: &AlgebraicNumber) -> Result<Compositum> {
    let (dx, dy) = (x.degree(), y.degree());
    let full = dx * dy;
    if full > FACTOR_DEGREE_CEILING {
        return Err(Error::DegreeCeiling { stage: "compositum".into(), degree: full, ceiling: FACTOR_DEGREE_CEILING });
    }
    let hint = Integer::from(x.leading_coeff() * y.leading_coeff()).to_f64().abs()
        * 64.0
        * x.conjugates().iter().chain(y.conjugates()).map(|r| r.modulus().hi().to_f64()).fold(1.0, f64::max);
    let mut bits = bits_for_product(full, hint).max(WORKING_BITS);
    loop {
        for t in 1..=16 {
            let thetas = theta_boxes(x, y, t, bits)?;
            if !pairwise_disjoint(&thetas) {
                continue;
            }
            let Some(r) = integer_poly_from_roots(&thetas) else { continue };
            let pairs: Vec<(usize, usize)> = (0..dx).flat_map(|i| (0..dy).map(move |j| (i, j))).collect();
            let target = x.index() * dy + y.index();
            if gcd_usize(dx, dy) == 1 {
                return Ok(Compositum { degree: full, shift: t, defining_poly: r.primitive(), embeddings: pairs });
            }
            let roots = isolate_roots(&r, bits)?;
            let matched: Option<Vec<usize>> = thetas
                .iter()
                .map(|th| {
                    let hits: Vec<usize> = (0..roots.len()).filter(|&k| !roots[k].enclosure.disjoint(th)).collect();
                    (hits.len() == 1).then(|| hits[0])
                })
                .collect();
            let Some(matched) = matched else { continue };
            let mut seen = matched.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != roots.len() {
                continue;
            }
            let (q, idx, _) = irreducible_factor(&r.primitive(), &roots, matched[target])?;
            let embeddings = pairs.iter().zip(&matched).filter(|(_, m)| idx.contains(m)).map(|(p, _)| *p).collect();
            return Ok(Compositum { degree: q.degree(), shift: t, defining_poly: q, embeddings });
        }
        if bits >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "compositum".into(), bits });
        }
        bits *= 2;
    }
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Where a place comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlaceTag {
    Archimedean {
        x_conjugate: usize,
        y_conjugate: usize,
        complex: bool,
    },
    /// A prime of ℚ; `exponents` are `(−v_p(x), −v_p(y))`, so the row is
    /// `exponents · log p`.
    Finite {
        #[serde(serialize_with = "integer_as_string")]
        prime: Integer,
        exponents: (i64, i64),
    },
}

fn integer_as_string<S: serde::Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One place in `S` with its row `(log‖x‖_v, log‖y‖_v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Place {
    pub tag: PlaceTag,
    pub row: [Interval; 2],
}

/// `coeff · log prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicLog {
    pub coeff: Rational,
    pub prime: Integer,
}

impl fmt::Display for SymbolicLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff == 1 {
            write!(f, "log {}", self.prime)
        } else {
            write!(f, "{}·log {}", self.coeff, self.prime)
        }
    }
}

impl SymbolicLog {
    fn value(&self, prec: u32) -> Interval {
        Interval::from_integer(prec, &self.prime).ln().mul_rational(&self.coeff)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaceSystem {
    pub field: Compositum,
    pub places: Vec<Place>,
    pub selected: (usize, usize),
    pub matrix: [[Interval; 2]; 2],
    pub det_abs: Interval,
    pub c1_tilde: Interval,
    pub c2_tilde: Interval,
    /// Certified lower bound for `C₀`, as an exact rational.
    pub c0: Rational,
    pub c0_interval: Interval,
    pub c0_symbolic: Option<SymbolicLog>,
}

fn interval_json(i: &Interval) -> serde_json::Value {
    let (lo, hi) = i.decimal_strings(20);
    serde_json::json!([lo, hi])
}

impl PlaceSystem {
    pub fn to_json(&self) -> serde_json::Value {
        let places: Vec<serde_json::Value> = self
            .places
            .iter()
            .map(|p| serde_json::json!({"tag": p.tag, "row": [interval_json(&p.row[0]), interval_json(&p.row[1])]}))
            .collect();
        serde_json::json!({
            "field": self.field,
            "places": places,
            "selected_pair": [self.selected.0, self.selected.1],
            "matrix": self.matrix.iter().map(|r| vec![interval_json(&r[0]), interval_json(&r[1])]).collect::<Vec<_>>(),
            "det_abs": interval_json(&self.det_abs),
            "c1_tilde": interval_json(&self.c1_tilde),
            "c2_tilde": interval_json(&self.c2_tilde),
            "c0": self.c0.to_string(),
            "c0_interval": interval_json(&self.c0_interval),
            "c0_symbolic": self.c0_symbolic.as_ref().map(|s| s.to_string()),
        })
    }
}

/// Prime factors of a positive integer by trial division.
pub fn prime_factors(n: &Integer) -> Result<Vec<Integer>> {
    let mut n = Integer::from(n.abs_ref());
    let mut out = Vec::new();
    let mut p = Integer::from(2);
    let mut steps = 0u64;
    while Integer::from(&p * &p) <= n {
        if n.is_divisible(&p) {
            out.push(p.clone());
            while n.is_divisible(&p) {
                n /= &p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
        steps += 1;
        if steps > 50_000_000 {
            return Err(Error::Inconclusive(format!("could not factor {n}")));
        }
    }
    if n > 1 {
        out.push(n);
    }
    Ok(out)
}

/// `v_p(q)` for a nonzero rational.
pub fn valuation(q: &Rational, p: &Integer) -> i64 {
    let count = |n: &Integer| {
        let mut n = Integer::from(n.abs_ref());
        let mut k = 0i64;
        while n != 0 && n.is_divisible(p) {
            n /= p;
            k += 1;
        }
        k
    };
    count(q.numer()) - count(q.denom())
}

fn places_at(x: &AlgebraicNumber, y: &AlgebraicNumber, field: &Compositum, bits: u32) -> Result<Vec<Place>> {
    let prec = bits + 32;
    let mut out = Vec::new();
    if let (Some(qx), Some(qy)) = (x.as_rational(), y.as_rational()) {
        let lx = Interval::from_rational(prec, &qx).abs().ln();
        let ly = Interval::from_rational(prec, &qy).abs().ln();
        out.push(Place {
            tag: PlaceTag::Archimedean { x_conjugate: 0, y_conjugate: 0, complex: false },
            row: [lx, ly],
        });
        let mut primes = Vec::new();
        for n in [qx.numer(), qx.denom(), qy.numer(), qy.denom()] {
            primes.extend(prime_factors(n)?);
        }
        primes.sort();
        primes.dedup();
        for p in primes {
            let ex = -valuation(&qx, &p);
            let ey = -valuation(&qy, &p);
            let lp = Interval::from_integer(prec, &p).ln();
            let row = [lp.mul_int(&Integer::from(ex)), lp.mul_int(&Integer::from(ey))];
            out.push(Place { tag: PlaceTag::Finite { prime: p, exponents: (ex, ey) }, row });
        }
        return Ok(out);
    }
    let xr = x.refined(bits)?;
    let yr = y.refined(bits)?;
    let xc: Vec<&Root> = xr.conjugates().iter().collect();
    let yc: Vec<&Root> = yr.conjugates().iter().collect();
    let d = field.degree as i64;
    let mut used = vec![false; field.embeddings.len()];
    for (k, &(i, j)) in field.embeddings.iter().enumerate() {
        if used[k] {
            continue;
        }
        used[k] = true;
        let real = xc[i].is_real && yc[j].is_real;
        if !real {
            let ci = xc[i].enclosure.conj();
            let cj = yc[j].enclosure.conj();
            let partner =
                field.embeddings.iter().enumerate().position(|(l, &(a, b))| {
                    !used[l] && !xc[a].enclosure.disjoint(&ci) && !yc[b].enclosure.disjoint(&cj)
                });
            match partner {
                Some(l) => used[l] = true,
                None => return Err(Error::PrecisionExhausted { stage: "complex place pairing".into(), bits }),
            }
        }
        let nv = if real { 1 } else { 2 };
        let lx = xc[i].modulus().ln().mul_int(&Integer::from(nv)).div_int(d);
        let ly = yc[j].modulus().ln().mul_int(&Integer::from(nv)).div_int(d);
        out.push(Place {
            tag: PlaceTag::Archimedean { x_conjugate: i, y_conjugate: j, complex: !real },
            row: [lx, ly],
        });
    }
    Ok(out)
}

fn is_certified_zero(row: &[Interval; 2]) -> bool {
    row.iter().all(|v| v.is_point() && v.contains_zero())
}

/// `|c·log p₁·log p₂ / (2·max{|e₁| log p₁, |e₂| log p₂})|` in closed form when
/// one of the exponents vanishes.
fn symbolic_tilde(det_coeff: &Integer, rows: [(&Integer, i64); 2]) -> Option<SymbolicLog> {
    let (p1, e1) = rows[0];
    let (p2, e2) = rows[1];
    // |det| = |D|·log p1·log p2; the max picks whichever of |e_k| log p_k survives.
    let d = Rational::from(det_coeff.clone().abs());
    match (e1 == 0, e2 == 0) {
        (true, false) => Some(SymbolicLog { coeff: d / Rational::from(2 * e2.abs()), prime: p1.clone() }),
        (false, true) => Some(SymbolicLog { coeff: d / Rational::from(2 * e1.abs()), prime: p2.clone() }),
        _ => None,
    }
}

/// Constructs the place system and `C₀` with `h₀(xⁿ/yᵐ) ≥ C₀·max{|n|, |m|}`.
pub fn compute_c0(x: &AlgebraicNumber, y: &AlgebraicNumber) -> Result<PlaceSystem> {
    let field = compositum(x, y)?;
    let both_rational = x.as_rational().is_some() && y.as_rational().is_some();
    let mut bits = WORKING_BITS;
    loop {
        let all = places_at(x, y, &field, bits)?;
        let places: Vec<Place> = all.into_iter().filter(|p| !is_certified_zero(&p.row)).collect();
        let n = places.len();
        let mut best: Option<(usize, usize, Interval)> = None;
        let finite = |i: usize| matches!(places[i].tag, PlaceTag::Finite { .. });
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&places[i].row, &places[j].row);
                let det = a[0].mul(&b[1]).sub(&a[1].mul(&b[0])).abs();
                if !det.is_pos() {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((bi, bj, bd)) => {
                        if det.lo() > bd.hi() {
                            true
                        } else if bd.lo() > det.hi() {
                            false
                        } else {
                            // Indistinguishable: prefer pairs of finite places.
                            let score = |p: usize, q: usize| finite(p) as u8 + finite(q) as u8;
                            score(i, j) > score(*bi, *bj) || (score(i, j) == score(*bi, *bj) && det.lo() > bd.lo())
                        }
                    }
                };
                if better {
                    best = Some((i, j, det));
                }
            }
        }
        let Some((i, j, det_abs)) = best else {
            if bits >= 1024 || !both_rational && places.iter().all(|p| p.row[0].is_finite()) && bits >= 512 {
                return Err(Error::UnsupportedPlaceStructure(
                    "no pair of places with a certified nonsingular log matrix".into(),
                ));
            }
            bits *= 2;
            continue;
        };
        let (r1, r2) = (&places[i].row, &places[j].row);
        let max_y = r1[1].abs().max(&r2[1].abs());
        let max_x = r1[0].abs().max(&r2[0].abs());
        let two = Interval::from_int(det_abs.prec(), 2);
        let c1_tilde = det_abs.div(&two.mul(&max_y));
        let c2_tilde = det_abs.div(&two.mul(&max_x));
        let s = places.len() as i64;
        let c0_interval = c1_tilde.min(&c2_tilde).div_int(s);
        if !c0_interval.is_pos() {
            bits *= 2;
            continue;
        }
        let c0_symbolic = match (&places[i].tag, &places[j].tag) {
            (PlaceTag::Finite { prime: p1, exponents: e1 }, PlaceTag::Finite { prime: p2, exponents: e2 }) => {
                let dcoeff = Integer::from(e1.0 * e2.1 - e1.1 * e2.0);
                let t1 = symbolic_tilde(&dcoeff, [(p1, e1.1), (p2, e2.1)]);
                let t2 = symbolic_tilde(&dcoeff, [(p1, e1.0), (p2, e2.0)]);
                match (t1, t2) {
                    (Some(a), Some(b)) => {
                        let pick = if a == b || a.value(256).le(&b.value(256)) { a } else { b };
                        Some(SymbolicLog { coeff: pick.coeff / Rational::from(s), prime: pick.prime })
                    }
                    _ => None,
                }
            }
            _ => None,
        };
        let matrix = [[r1[0].clone(), r1[1].clone()], [r2[0].clone(), r2[1].clone()]];
        return Ok(PlaceSystem {
            field,
            c0: c0_interval.lo_rational(),
            c0_interval,
            c0_symbolic,
            places,
            selected: (i, j),
            matrix,
            det_abs,
            c1_tilde,
            c2_tilde,
        });
    }
}

/// `C` with `h₀(p(n)/q(m)) ≤ C·log max{n, m}` for `n, m ≥ 1`, `max{n, m} ≥ 2`,
/// given coefficient lists (constant term first). Evaluating by Horner's rule
/// costs `h₀(c_l) + log n` per step plus `log 2` for each nonzero addition.
pub fn poly_ratio_height_bound(p: &[AlgebraicNumber], q: &[AlgebraicNumber]) -> Rational {
    let prec = WORKING_BITS;
    let ln2 = Interval::ln2(prec);
    let part = |c: &[AlgebraicNumber]| -> Interval {
        let k = c.iter().rposition(|a| !a.is_zero()).unwrap_or(0);
        let mut s = Interval::zero(prec);
        let mut adds = 0i64;
        for (l, a) in c.iter().enumerate().take(k + 1) {
            s = s.add(&a.weil_height());
            if l < k && !a.is_zero() {
                adds += 1;
            }
        }
        s.add(&ln2.mul_int(&Integer::from(adds))).div(&ln2).add(&Interval::from_int(prec, k as i64))
    };
    part(p).add(&part(q)).hi_rational()
}
