//! Certificate polynomials whose roots contain `A^{-1} ∩ B`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::linspace::{self, QPoly, Subspace};
use crate::poly::{self, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub c: Poly,
    /// Present for `d > 1`.
    pub d: Option<Poly>,
    pub c0: Poly,
    pub bound_general: u64,
    /// `q^d - q^{d-1} + q^{d-2} - 1`, for `d > 1`.
    pub bound_q2: Option<u64>,
    /// Degree of `gcd(x^{q^d} A(1/x), B(x)/x)`.
    pub gcd_degree: usize,
}

fn qpow(ctx: &FieldCtx, i: usize) -> usize {
    (ctx.q() as usize).pow(i as u32)
}

fn check_pair(a: &QPoly, b: &QPoly) -> Result<usize> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    if a.dim() == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    if a.qcoeff(0).is_zero() || b.qcoeff(0).is_zero() {
        return Err(Error::NotSeparable);
    }
    Ok(a.dim())
}

/// `sum_{i<d} a_i x^{top - q^i}`.
fn reversed_low(ctx: &FieldCtx, a: &QPoly, top: usize) -> Poly {
    Poly::from_terms(ctx, (0..a.dim()).map(|i| (top - qpow(ctx, i), a.qcoeff(i))))
}

/// `sum_{j<n} b_j x^{q^j - shift}`.
fn low_part(ctx: &FieldCtx, b: &QPoly, n: usize, shift: usize) -> Poly {
    Poly::from_terms(ctx, (0..n).map(|j| (qpow(ctx, j) - shift, b.qcoeff(j))))
}

/// `C(x) = x^{q^{d-1}-1} - (sum_{i<d} a_i x^{q^{d-1}-q^i})(sum_{j<d} b_j x^{q^j-1})`.
pub fn certificate_c(ctx: &FieldCtx, a: &QPoly, b: &QPoly) -> Result<Poly> {
    let d = check_pair(a, b)?;
    let top = qpow(ctx, d - 1);
    let prod = reversed_low(ctx, a, top).mul(ctx, &low_part(ctx, b, d, 1));
    Ok(Poly::monomial(ctx.one(), top - 1).sub(ctx, &prod))
}

/// `D(x) = x^{q^d-q^{d-1}} + b_{d-1} - (sum_{j<d-1} b_j x^{q^j})(sum_{i<d} a_i x^{q^d-q^{d-1}-q^i})`.
pub fn certificate_d(ctx: &FieldCtx, a: &QPoly, b: &QPoly) -> Result<Poly> {
    let d = check_pair(a, b)?;
    if d < 2 {
        return Err(Error::Precondition("D(x) needs d > 1".into()));
    }
    let e = qpow(ctx, d) - qpow(ctx, d - 1);
    let prod = low_part(ctx, b, d - 1, 0).mul(ctx, &reversed_low(ctx, a, e));
    Ok(Poly::monomial(ctx.one(), e).add(ctx, &Poly::constant(b.qcoeff(d - 1))).sub(ctx, &prod))
}

/// `x^{1+q+...+q^{d-1}} (1 - (sum a_i / x^{q^i})(sum b_j x^{q^j}))`, sums over `< d`.
pub fn certificate_c0(ctx: &FieldCtx, a: &QPoly, b: &QPoly) -> Result<Poly> {
    let d = check_pair(a, b)?;
    let n: usize = (0..d).map(|i| qpow(ctx, i)).sum();
    let mut terms = vec![(n, ctx.one())];
    for i in 0..d {
        for j in 0..d {
            let c = ctx.mul(a.qcoeff(i), b.qcoeff(j));
            terms.push((n - qpow(ctx, i) + qpow(ctx, j), ctx.neg(c)));
        }
    }
    Ok(Poly::from_terms(ctx, terms))
}

/// `x^{q^d} A(1/x)`, whose roots are the inverses of `A \ {0}`.
pub fn reciprocal(ctx: &FieldCtx, a: &QPoly) -> Poly {
    let top = qpow(ctx, a.dim());
    Poly::from_terms(ctx, (0..=a.dim()).map(|i| (top - qpow(ctx, i), a.qcoeff(i))))
}

pub fn build_certificate(ctx: &FieldCtx, a: &QPoly, b: &QPoly) -> Result<Certificate> {
    let d = check_pair(a, b)?;
    let c = certificate_c(ctx, a, b)?;
    let dpoly = if d > 1 { Some(certificate_d(ctx, a, b)?) } else { None };
    let shift = 1 + (0..d - 1).map(|i| qpow(ctx, i)).sum::<usize>();
    let c0 = c.shift(shift);
    let direct = certificate_c0(ctx, a, b)?;
    if c0 != direct {
        return Err(Error::IdentityFailure("C0 expansions disagree".into()));
    }
    let b_over_x = low_part(ctx, b, d + 1, 1);
    let gcd_degree = poly::gcd(ctx, &reciprocal(ctx, a), &b_over_x)?.degree().unwrap_or(0);
    let q = ctx.q();
    Ok(Certificate {
        c,
        d: dpoly,
        c0,
        bound_general: 2 * q.pow(d as u32 - 1) - 2,
        bound_q2: (d > 1).then(|| q.pow(d as u32) - q.pow(d as u32 - 1) + q.pow(d as u32 - 2) - 1),
        gcd_degree,
    })
}

impl Certificate {
    /// Every witness is a root of `C` and, when present, of `D`.
    pub fn contains(&self, ctx: &FieldCtx, witnesses: &[FieldElem]) -> bool {
        witnesses.iter().all(|&w| {
            self.c.eval(ctx, w).is_zero() && self.d.as_ref().is_none_or(|d| d.eval(ctx, w).is_zero())
        })
    }

    /// Degree bounds on `C` and `D`.
    pub fn degrees_ok(&self) -> bool {
        self.c.degree().is_none_or(|g| g as u64 <= self.bound_general)
            && match (&self.d, self.bound_q2) {
                (Some(d), Some(bd)) => d.degree().is_none_or(|g| g as u64 <= bd),
                _ => true,
            }
    }
}

/// Certificate for `(A + alpha)^{-1} ∩ (B + beta)`:
/// `x C(x) + A(alpha) x^{q^{d-1}} (B(x) - x^{q^d}) + B(beta) x^{q^{d-1}} (A(1/x) - x^{-q^d})
///  - A(alpha) B(beta) x^{q^{d-1}}`.
pub fn affine_certificate(ctx: &FieldCtx, a: &QPoly, alpha: FieldElem, b: &QPoly, beta: FieldElem) -> Result<Poly> {
    let d = check_pair(a, b)?;
    ctx.check(alpha)?;
    ctx.check(beta)?;
    let top = qpow(ctx, d - 1);
    let aa = a.eval(ctx, alpha);
    let bb = b.eval(ctx, beta);
    let xc = certificate_c(ctx, a, b)?.shift(1);
    let b_low = low_part(ctx, b, d, 0).shift(top).scale(ctx, aa);
    let a_low = reversed_low(ctx, a, top).scale(ctx, bb);
    let cross = Poly::monomial(ctx.mul(aa, bb), top);
    Ok(xc.add(ctx, &b_low).add(ctx, &a_low).sub(ctx, &cross))
}

/// `(A + alpha)^{-1} ∩ (B + beta)` by brute force, sorted.
pub fn affine_intersection_bruteforce(
    ctx: &FieldCtx,
    a: &Subspace,
    alpha: FieldElem,
    b: &Subspace,
    beta: FieldElem,
) -> Result<Vec<FieldElem>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut w: Vec<FieldElem> = a
        .elements(ctx)
        .into_iter()
        .map(|e| ctx.add(e, alpha))
        .filter(|e| !e.is_zero())
        .map(|e| ctx.inv(e).expect("nonzero"))
        .filter(|&w| b.contains(ctx, ctx.sub(w, beta)))
        .collect();
    w.sort();
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub count: usize,
    pub bound_general: u64,
    /// The sharper bound, applicable when `q = 2` and `|B| > 2`.
    pub bound_q2: Option<u64>,
    /// `A^{-1} ⊆ B`; the bounds do not apply.
    pub subfield_case: bool,
    pub within_bounds: bool,
    pub tight: bool,
    pub c_degree: Option<usize>,
    pub certificate_ok: bool,
    pub witnesses: Vec<FieldElem>,
}

pub fn verify_bounds(ctx: &FieldCtx, a: &Subspace, b: &Subspace) -> Result<BoundsReport> {
    let inter = linspace::inverse_intersection_bruteforce(ctx, a, b)?;
    let qa = linspace::qpoly_from_subspace(ctx, a)?;
    let qb = linspace::qpoly_from_subspace(ctx, b)?;
    let cert = build_certificate(ctx, &qa, &qb)?;
    let d = a.dim() as u32;
    let q = ctx.q();
    let count = inter.count;
    let subfield_case = count as u64 == q.pow(d) - 1;
    let bound_q2 = if q == 2 && d > 1 { cert.bound_q2 } else { None };
    let applicable = bound_q2.unwrap_or(cert.bound_general);
    let within_bounds = subfield_case || count as u64 <= applicable;
    let certificate_ok = cert.contains(ctx, &inter.witnesses)
        && cert.degrees_ok()
        && cert.gcd_degree == count
        && (cert.c.is_zero() || poly::distinct_root_count(ctx, &cert.c)? >= count);
    Ok(BoundsReport {
        count,
        bound_general: cert.bound_general,
        bound_q2,
        subfield_case,
        within_bounds,
        tight: !subfield_case && count as u64 == applicable,
        c_degree: cert.c.degree(),
        certificate_ok,
        witnesses: inter.witnesses,
    })
}
