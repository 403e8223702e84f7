//! Factorization over the integers by searching for subsets of certified roots.
//!
//! For a primitive square-free `p` with leading coefficient `L`, every factor
//! `Q` over the integers satisfies `L·∏_{r ∈ roots(Q)} (X − r) ∈ ℤ[X]`. A subset
//! of roots whose scaled product rounds to an integer polynomial dividing `p`,
//! and which does not vanish on any root outside the subset, is exactly the
//! root set of that factor. Scanning subsets by increasing size therefore finds
//! the minimal polynomial of a chosen root.

use rug::float::Round;
use rug::Integer;

use crate::error::{Error, Result};
use crate::interval::CInterval;
use crate::poly::IntPoly;
use crate::roots::{refine_root, Root, PRECISION_CEILING};

/// Largest degree handed to the subset search.
pub const FACTOR_DEGREE_CEILING: usize = 24;

enum Check {
    Factor(IntPoly),
    NotAFactor,
    Undecided,
}

/// Groups roots into conjugation-closed units (a real root, or a conjugate pair).
fn units(roots: &[Root]) -> Vec<Vec<usize>> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if roots[i].is_real {
            out.push(vec![i]);
            continue;
        }
        let conj = roots[i].enclosure.conj();
        let partner = (0..roots.len()).find(|&j| !used[j] && roots[j].enclosure == conj);
        match partner {
            Some(j) => {
                used[j] = true;
                out.push(vec![i, j]);
            }
            None => out.push(vec![i]),
        }
    }
    out
}

fn scaled_product(lc: &Integer, roots: &[&Root]) -> Vec<CInterval> {
    let prec = roots.iter().map(|r| r.enclosure.prec()).max().unwrap_or(128);
    let mut poly = vec![CInterval::from_integer(prec, lc)];
    for r in roots {
        let mut next = vec![CInterval::from_int(prec, 0); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(&r.enclosure));
        }
        poly = next;
    }
    poly
}

fn check_subset(p: &IntPoly, roots: &[Root], subset: &[usize]) -> Check {
    let chosen: Vec<&Root> = subset.iter().map(|&i| &roots[i]).collect();
    let coeffs = scaled_product(p.lc(), &chosen);
    let mut ints = Vec::with_capacity(coeffs.len());
    let mut undecided = false;
    for c in &coeffs {
        if !c.im.contains_zero() {
            return Check::NotAFactor;
        }
        let lo_c = c.re.lo().to_integer_round(Round::Up);
        let hi_f = c.re.hi().to_integer_round(Round::Down);
        let has_int = match (lo_c, hi_f) {
            (Some((x, _)), Some((y, _))) => x <= y,
            _ => true,
        };
        if !has_int {
            return Check::NotAFactor;
        }
        match c.re.unique_integer() {
            Some(v) if c.im.contains_zero() => ints.push(v),
            _ => {
                undecided = true;
                ints.push(Integer::new());
            }
        }
    }
    if undecided {
        return Check::Undecided;
    }
    let q = IntPoly::new(ints).primitive();
    if q.degree() != subset.len() || p.div_exact(&q).is_none() {
        return Check::NotAFactor;
    }
    for (i, r) in roots.iter().enumerate() {
        if subset.contains(&i) {
            continue;
        }
        let v = q.eval_complex(&r.enclosure);
        if v.contains_zero() {
            return Check::Undecided;
        }
    }
    Check::Factor(q)
}

/// Cheap floating-point necessary condition on the sub-leading coefficient.
fn trace_plausible(lc: f64, approx: &[(f64, f64)], subset: &[usize]) -> bool {
    let mut s = 0.0;
    let mut mag = 0.0;
    for &i in subset {
        s += approx[i].0;
        mag += approx[i].0.abs() + approx[i].1.abs();
    }
    let v = lc * s;
    let scale = lc.abs() * mag;
    if !scale.is_finite() || scale > 1e12 {
        return true;
    }
    (v - v.round()).abs() <= 1e-6 * (1.0 + scale)
}

fn search(p: &IntPoly, roots: &[Root], target: usize) -> (Option<(IntPoly, Vec<usize>)>, bool) {
    let n = roots.len();
    let groups = units(roots);
    let tunit = groups.iter().position(|u| u.contains(&target)).expect("target present");
    let others: Vec<&Vec<usize>> = groups.iter().enumerate().filter(|(i, _)| *i != tunit).map(|(_, u)| u).collect();
    let approx: Vec<(f64, f64)> = roots.iter().map(|r| r.approx()).collect();
    let lc = p.lc().to_f64();
    let mut undecided = false;
    let base = groups[tunit].clone();
    for size in base.len()..n {
        let mut found: Option<(IntPoly, Vec<usize>)> = None;
        let mut stack: Vec<usize> = Vec::new();
        fn rec(
            idx: usize,
            need: usize,
            others: &[&Vec<usize>],
            stack: &mut Vec<usize>,
            visit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if need == 0 {
                return visit(stack);
            }
            for k in idx..others.len() {
                let u = others[k];
                if u.len() > need {
                    continue;
                }
                let before = stack.len();
                stack.extend_from_slice(u);
                if rec(k + 1, need - u.len(), others, stack, visit) {
                    return true;
                }
                stack.truncate(before);
            }
            false
        }
        let mut visit = |extra: &[usize]| -> bool {
            let mut subset = base.clone();
            subset.extend_from_slice(extra);
            if !trace_plausible(lc, &approx, &subset) {
                return false;
            }
            match check_subset(p, roots, &subset) {
                Check::Factor(q) => {
                    subset.sort_unstable();
                    found = Some((q, subset));
                    true
                }
                Check::NotAFactor => false,
                Check::Undecided => {
                    undecided = true;
                    false
                }
            }
        };
        rec(0, size - base.len(), &others, &mut stack, &mut visit);
        if found.is_some() {
            return (found, undecided);
        }
        if undecided {
            // A smaller factor might hide behind an undecided subset.
            return (None, true);
        }
    }
    (Some((p.primitive(), (0..n).collect())), false)
}

/// The irreducible factor of the primitive square-free `p` vanishing at
/// `roots[target]`, where `roots` is the full certified root list of `p`.
/// Returns the factor, the indices of its roots, and the (possibly refined)
/// root list in the original order.
pub fn irreducible_factor(p: &IntPoly, roots: &[Root], target: usize) -> Result<(IntPoly, Vec<usize>, Vec<Root>)> {
    let n = roots.len();
    if n != p.degree() {
        return Err(Error::InvalidSpec(format!("root list of size {n} for a degree-{} polynomial", p.degree())));
    }
    if n > FACTOR_DEGREE_CEILING {
        return Err(Error::DegreeCeiling { stage: "factorization".into(), degree: n, ceiling: FACTOR_DEGREE_CEILING });
    }
    if n == 1 {
        return Ok((p.primitive(), vec![0], roots.to_vec()));
    }
    let mut current = roots.to_vec();
    let mut bits = current.iter().map(|r| r.enclosure.prec()).max().unwrap_or(128);
    loop {
        let (found, _) = search(p, &current, target);
        if let Some((q, idx)) = found {
            return Ok((q, idx, current));
        }
        if bits >= PRECISION_CEILING {
            return Err(Error::PrecisionExhausted { stage: "factorization".into(), bits });
        }
        bits = (bits * 2).min(PRECISION_CEILING);
        current = current.iter().map(|r| refine_root(p, r, bits)).collect::<Result<Vec<_>>>()?;
    }
}

/// Irreducible factors with the indices of their roots, and the refined roots.
pub type Factorization = (Vec<(IntPoly, Vec<usize>)>, Vec<Root>);

/// Splits a primitive square-free polynomial into irreducible factors, each
/// paired with the indices of its roots in `roots`.
pub fn factor_squarefree(p: &IntPoly, roots: &[Root]) -> Result<Factorization> {
    let mut covered = vec![false; roots.len()];
    let mut current = roots.to_vec();
    let mut out = Vec::new();
    while let Some(t) = covered.iter().position(|c| !c) {
        let (q, idx, refined) = irreducible_factor(p, &current, t)?;
        current = refined;
        for &i in &idx {
            covered[i] = true;
        }
        out.push((q, idx));
    }
    Ok((out, current))
}

/// Rounds `∏ (X − θ_i)` to an integer polynomial, given enclosures of
/// algebraic integers `θ_i` forming a conjugation-stable multiset. `None`
/// when the enclosures are too wide to round.
pub fn integer_poly_from_roots(thetas: &[CInterval]) -> Option<IntPoly> {
    let prec = thetas.iter().map(|t| t.prec()).max().unwrap_or(128);
    let mut poly = vec![CInterval::from_int(prec, 1)];
    for t in thetas {
        let mut next = vec![CInterval::from_int(prec, 0); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(t));
        }
        poly = next;
    }
    let mut ints = Vec::with_capacity(poly.len());
    for c in &poly {
        if !c.im.contains_zero() {
            return None;
        }
        ints.push(c.re.unique_integer()?);
    }
    Some(IntPoly::new(ints))
}

/// Enough working bits to round a product of `n` linear factors whose roots
/// are bounded by `bound` in modulus.
pub fn bits_for_product(n: usize, bound: f64) -> u32 {
    let b = bound.max(1.0).log2().ceil().max(0.0) as u32;
    (n as u32) * (b + 2) + 96
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::isolate_roots;

    fn factor_of(p: &IntPoly, target_approx: f64) -> IntPoly {
        let roots = isolate_roots(p, 80).unwrap();
        let t = roots
            .iter()
            .position(|r| (r.approx().0 - target_approx).abs() < 1e-6 && r.approx().1.abs() < 1e-9)
            .unwrap();
        irreducible_factor(p, &roots, t).unwrap().0
    }

    #[test]
    fn splits_a_product_of_two_quadratics() {
        let a = IntPoly::from_i64(&[-1, -1, 1]);
        let b = IntPoly::from_i64(&[-3, 0, 2]);
        let p = a.mul(&b);
        assert_eq!(factor_of(&p, 1.618033988749895), a);
        assert_eq!(factor_of(&p, (1.5f64).sqrt()), b);
    }

    #[test]
    fn irreducible_input_is_returned_whole() {
        let p = IntPoly::from_i64(&[-1, -1, -1, 1]);
        assert_eq!(factor_of(&p, 1.839286755214161), p);
    }

    #[test]
    fn complex_factor_with_real_companion() {
        // (X^2 + X + 1)(X - 5)(X^3 - 2)
        let c = IntPoly::from_i64(&[1, 1, 1]);
        let l = IntPoly::from_i64(&[-5, 1]);
        let cube = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let p = c.mul(&l).mul(&cube);
        let roots = isolate_roots(&p, 80).unwrap();
        let (factors, _) = factor_squarefree(&p, &roots).unwrap();
        let mut got: Vec<IntPoly> = factors.into_iter().map(|f| f.0).collect();
        got.sort_by_key(|f| f.degree());
        assert_eq!(got, vec![l, c, cube]);
    }

    #[test]
    fn rounding_a_root_product() {
        let roots = isolate_roots(&IntPoly::from_i64(&[-1, -1, 1]), 100).unwrap();
        let thetas: Vec<CInterval> = roots.iter().map(|r| r.enclosure.clone()).collect();
        assert_eq!(integer_poly_from_roots(&thetas), Some(IntPoly::from_i64(&[-1, -1, 1])));
    }
}
