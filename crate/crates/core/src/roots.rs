//! Certified isolation of the complex roots of a square-free integer polynomial.
//!
//! Approximations come from the Aberth–Ehrlich iteration run at a working
//! precision. They are then certified with the Weierstrass correction
//! `W_i = p(z_i) / (lc · ∏_{j≠i} (z_i − z_j))`: every root lies in the union of
//! the disks `|z − z_i| ≤ n·|W_i|`, and a union component made of `m` disks holds
//! exactly `m` roots. When the disks are pairwise disjoint each one therefore
//! isolates a single root. Real polynomials get one extra step: approximations
//! that are their own nearest conjugate are snapped onto the real axis, so the
//! resulting disk is symmetric and its unique root must be real.

use rug::float::Round;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::interval::{CInterval, Interval};
use crate::poly::IntPoly;

/// Working precision is never raised beyond this many bits.
pub const PRECISION_CEILING: u32 = 1 << 15;

/// One certified root.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    /// A rectangle containing exactly one root of the polynomial.
    pub enclosure: CInterval,
    /// Whether the root is certified to be real (then `enclosure.im` is `[0,0]`).
    pub is_real: bool,
}

impl Root {
    pub fn modulus(&self) -> Interval {
        self.enclosure.abs()
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.enclosure.re.mid_f64(), self.enclosure.im.mid_f64())
    }
}

#[derive(Clone)]
struct Cf {
    re: Float,
    im: Float,
}

impl Cf {
    fn new(prec: u32, re: f64, im: f64) -> Cf {
        Cf { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }
    fn zero(prec: u32) -> Cf {
        Cf::new(prec, 0.0, 0.0)
    }
    fn prec(&self) -> u32 {
        self.re.prec()
    }
    fn add(&self, o: &Cf) -> Cf {
        let p = self.prec();
        Cf { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
    fn sub(&self, o: &Cf) -> Cf {
        let p = self.prec();
        Cf { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
    fn mul(&self, o: &Cf) -> Cf {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Cf { re, im }
    }
    fn norm2(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }
    fn div(&self, o: &Cf) -> Cf {
        let p = self.prec();
        let n = o.norm2();
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        Cf { re: re / &n, im: im / &n }
    }
    fn abs(&self) -> Float {
        self.norm2().sqrt()
    }
    fn set_prec(&mut self, p: u32) {
        self.re.set_prec(p);
        self.im.set_prec(p);
    }
}

fn eval_with_derivative(coeffs: &[Float], z: &Cf) -> (Cf, Cf) {
    let p = z.prec();
    let mut v = Cf::zero(p);
    let mut d = Cf::zero(p);
    for c in coeffs.iter().rev() {
        d = d.mul(z).add(&v);
        v = v.mul(z);
        v.re += c;
    }
    (v, d)
}

fn initial_points(poly: &IntPoly, prec: u32) -> Vec<Cf> {
    let n = poly.degree();
    // Fujiwara-style radius from the coefficient sizes, in f64 logs to avoid overflow.
    let lc = poly.lc().to_f64().abs().ln();
    let mut r: f64 = 0.0;
    for k in 1..=n {
        let c = poly.coeff(n - k);
        if c != 0 {
            let lg = (c.to_f64().abs().ln() - lc) / k as f64;
            r = r.max(lg);
        }
    }
    let radius = r.exp().max(1e-3);
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Cf::new(prec, radius * theta.cos(), radius * theta.sin())
        })
        .collect()
}

fn aberth(coeffs: &[Float], z: &mut [Cf], tol_bits: u32, max_iter: usize) {
    let n = z.len();
    for _ in 0..max_iter {
        let mut worst = 0i64;
        let mut converged = true;
        for i in 0..n {
            let (v, d) = eval_with_derivative(coeffs, &z[i]);
            if v.re.is_zero() && v.im.is_zero() {
                continue;
            }
            let ratio = v.div(&d);
            let mut s = Cf::zero(z[i].prec());
            for j in 0..n {
                if j != i {
                    let diff = z[i].sub(&z[j]);
                    let one = Cf::new(z[i].prec(), 1.0, 0.0);
                    s = s.add(&one.div(&diff));
                }
            }
            let one = Cf::new(z[i].prec(), 1.0, 0.0);
            let w = ratio.div(&one.sub(&ratio.mul(&s)));
            if !(w.re.is_finite() && w.im.is_finite()) {
                continue;
            }
            z[i] = z[i].sub(&w);
            let wa = w.abs();
            let za = z[i].abs();
            let scale = if za > 1 { za } else { Float::with_val(wa.prec(), 1) };
            let rel = wa / scale;
            if !rel.is_zero() {
                let e = rel.get_exp().unwrap_or(i32::MIN) as i64;
                if e > -(tol_bits as i64) {
                    converged = false;
                }
                worst = worst.max(e);
            }
        }
        if converged {
            return;
        }
    }
}

/// Enforces exact conjugate symmetry; returns per-point realness flags.
fn symmetrize(z: &mut [Cf]) -> Vec<bool> {
    let n = z.len();
    let mut real = vec![false; n];
    let mut partner = vec![usize::MAX; n];
    for i in 0..n {
        if partner[i] != usize::MAX || real[i] {
            continue;
        }
        let conj = Cf { re: z[i].re.clone(), im: Float::with_val(z[i].prec(), -&z[i].im) };
        let self_dist = conj.sub(&z[i]).abs();
        let mut best: Option<(usize, Float)> = None;
        for j in 0..n {
            if j == i || partner[j] != usize::MAX || real[j] {
                continue;
            }
            let dj = conj.sub(&z[j]).abs();
            if best.as_ref().is_none_or(|(_, b)| dj < *b) {
                best = Some((j, dj));
            }
        }
        match best {
            Some((j, dj)) if dj < self_dist => {
                let (up, down) = if z[i].im >= 0 { (i, j) } else { (j, i) };
                let rep = z[up].clone();
                z[down] = Cf { re: rep.re.clone(), im: Float::with_val(rep.prec(), -&rep.im) };
                partner[i] = j;
                partner[j] = i;
            }
            _ => {
                real[i] = true;
                z[i].im = Float::with_val(z[i].prec(), 0);
            }
        }
    }
    real
}

fn to_point(c: &Cf) -> CInterval {
    CInterval::point(c.re.clone(), c.im.clone())
}

/// Tries to certify the current approximations; `None` if the disks overlap.
fn certify(poly: &IntPoly, z: &[Cf], real: &[bool], target_bits: u32) -> Option<Vec<Root>> {
    let n = z.len();
    let prec = z[0].prec();
    let lc = CInterval::from_integer(prec, poly.lc());
    let pts: Vec<CInterval> = z.iter().map(to_point).collect();
    let nn = Interval::from_int(prec, n as i64);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let num = poly.eval_complex(&pts[i]);
        let mut den = lc.clone();
        for j in 0..n {
            if j != i {
                den = den.mul(&pts[i].sub(&pts[j]));
            }
        }
        let w = num.div(&den).abs().mul(&nn);
        if !w.is_finite() {
            return None;
        }
        radii.push(w.hi().clone());
    }
    let factor = Interval::from_rational(prec, &rug::Rational::from((3, 2)));
    for i in 0..n {
        for j in (i + 1)..n {
            let d = pts[i].sub(&pts[j]).abs();
            let rr = Interval::point(Float::with_val_round(prec, &radii[i] + &radii[j], Round::Up).0).mul(&factor);
            if !d.gt(&rr) {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let r = &radii[i];
        let za = z[i].abs();
        let scale = if za > 1 { za } else { Float::with_val(prec, 1) };
        let rel = Float::with_val(prec, r / &scale);
        if !rel.is_zero() && rel.get_exp().is_some_and(|e| e > -(target_bits as i32)) {
            return None;
        }
        let lo_re = Float::with_val_round(prec, &z[i].re - r, Round::Down).0;
        let hi_re = Float::with_val_round(prec, &z[i].re + r, Round::Up).0;
        let re = Interval::new(lo_re, hi_re);
        let im = if real[i] {
            Interval::zero(prec)
        } else {
            let lo = Float::with_val_round(prec, &z[i].im - r, Round::Down).0;
            let hi = Float::with_val_round(prec, &z[i].im + r, Round::Up).0;
            Interval::new(lo, hi)
        };
        out.push(Root { enclosure: CInterval::new(re, im), is_real: real[i] });
    }
    Some(out)
}

/// Ordering used for every root list: decreasing modulus, then decreasing
/// real part, then decreasing imaginary part (all on midpoints).
pub fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        let (ar, ai) = a.approx();
        let (br, bi) = b.approx();
        let am = ar.hypot(ai);
        let bm = br.hypot(bi);
        bm.partial_cmp(&am)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(br.partial_cmp(&ar).unwrap_or(std::cmp::Ordering::Equal))
            .then(bi.partial_cmp(&ai).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Isolates every complex root of a square-free polynomial, each in a box
/// whose half-width is below `2^-bits · max(1, |root|)`.
pub fn isolate_roots(poly: &IntPoly, bits: u32) -> Result<Vec<Root>> {
    let n = poly.degree();
    if poly.is_zero() || n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        let prec = bits + 64;
        let r = rug::Rational::from((Integer::from(-&poly.coeffs()[0]), poly.coeffs()[1].clone()));
        return Ok(vec![Root { enclosure: CInterval::from_rational(prec, &r), is_real: true }]);
    }
    let mut prec = (bits + 64).max(128);
    let mut z = initial_points(poly, prec);
    loop {
        let coeffs: Vec<Float> = poly.coeffs().iter().map(|c| Float::with_val(prec, c)).collect();
        for c in z.iter_mut() {
            c.set_prec(prec);
        }
        aberth(&coeffs, &mut z, prec.saturating_sub(8), 400 + 8 * n);
        let mut zz = z.clone();
        let real = symmetrize(&mut zz);
        if let Some(mut roots) = certify(poly, &zz, &real, bits) {
            sort_roots(&mut roots);
            return Ok(roots);
        }
        if prec >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "root isolation".into(), bits: prec });
        }
        prec = (prec * 2).min(PRECISION_CEILING);
    }
}

/// Re-isolates the roots at `bits` and returns the unique new root whose box
/// meets `old` (which must contain exactly one root), intersected with `old`.
pub fn refine_root(poly: &IntPoly, old: &Root, bits: u32) -> Result<Root> {
    let mut b = bits;
    loop {
        let roots = isolate_roots(poly, b)?;
        let hits: Vec<&Root> = roots.iter().filter(|r| !r.enclosure.disjoint(&old.enclosure)).collect();
        if hits.len() == 1 {
            let r = hits[0];
            let enclosure = r.enclosure.intersect(&old.enclosure).expect("boxes meet");
            return Ok(Root { enclosure, is_real: r.is_real || old.is_real });
        }
        if b >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "root refinement".into(), bits: b });
        }
        b = (b * 2).min(PRECISION_CEILING);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_roots() {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let r = isolate_roots(&p, 100).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].is_real && r[1].is_real);
        assert!((r[0].approx().0 - 1.618033988749895).abs() < 1e-15);
        assert!((r[1].approx().0 + 0.618033988749895).abs() < 1e-15);
    }

    #[test]
    fn complex_pair_and_real() {
        // X^3 - X^2 - X - 1
        let p = IntPoly::from_i64(&[-1, -1, -1, 1]);
        let r = isolate_roots(&p, 80).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r[0].is_real);
        assert!(!r[1].is_real && !r[2].is_real);
        assert!((r[0].approx().0 - 1.839286755214161).abs() < 1e-14);
        // conjugate boxes
        assert_eq!(r[1].enclosure.re, r[2].enclosure.re);
    }

    #[test]
    fn cyclotomic_roots_are_all_found() {
        // X^6 + X^3 + 1 (ninth roots of unity of order 9)
        let p = IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]);
        let r = isolate_roots(&p, 60).unwrap();
        assert_eq!(r.len(), 6);
        for root in &r {
            assert!(root.modulus().contains_integer(&Integer::from(1)));
        }
    }

    #[test]
    fn close_real_roots_separate() {
        // (X - 1000)(X - 1001)(X^2 - 2)
        let p =
            IntPoly::from_i64(&[-1000, 1]).mul(&IntPoly::from_i64(&[-1001, 1])).mul(&IntPoly::from_i64(&[-2, 0, 1]));
        let r = isolate_roots(&p, 60).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|x| x.is_real));
    }

    #[test]
    fn refinement_keeps_the_same_root() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let r = isolate_roots(&p, 30).unwrap();
        let fine = refine_root(&p, &r[1], 300).unwrap();
        assert!(r[1].enclosure.re.contains(&fine.enclosure.re));
        assert!(fine.enclosure.re.hi() < &0);
    }
}
