//! Extremal pairs built from `x^{q^d} + a x^{q^{d-1}} - x^q - a x`.

use serde::Serialize;

use crate::certify;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::linspace::{self, QPoly, Subspace};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    External,
    Secant,
    Tangent,
    Other,
}

impl CaseTag {
    pub fn number(self) -> u8 {
        match self {
            CaseTag::External => 1,
            CaseTag::Secant => 2,
            CaseTag::Tangent => 3,
            CaseTag::Other => 4,
        }
    }

    pub fn from_number(n: u8) -> Result<CaseTag> {
        match n {
            1 => Ok(CaseTag::External),
            2 => Ok(CaseTag::Secant),
            3 => Ok(CaseTag::Tangent),
            4 => Ok(CaseTag::Other),
            _ => Err(Error::Parse(format!("case must be 1..4, got {n}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Exact(u64),
    AtMost(u64),
}

impl Prediction {
    pub fn admits(self, count: u64) -> bool {
        match self {
            Prediction::Exact(n) => count == n,
            Prediction::AtMost(n) => count <= n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPair {
    pub q: u64,
    pub d: usize,
    pub a: FieldElem,
    pub b: FieldElem,
    /// Only meaningful for `d = 3`.
    pub case_tag: Option<CaseTag>,
    pub prediction: Prediction,
    pub qa: QPoly,
    pub qb: QPoly,
}

/// `x^{q^d} + c x^{q^{d-1}} - x^q - c x`.
pub fn special_qpoly(ctx: &FieldCtx, d: usize, c: FieldElem) -> Result<QPoly> {
    if d < 3 {
        return Err(Error::Precondition(format!("special pairs need d >= 3, got {d}")));
    }
    if c.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let mut coeffs = vec![FieldElem::ZERO; d + 1];
    coeffs[0] = ctx.neg(c);
    coeffs[1] = ctx.minus_one();
    coeffs[d - 1] = c;
    coeffs[d] = ctx.one();
    QPoly::new(coeffs)
}

/// Case and predicted count of the `d = 3` pair with parameters `a, b`.
pub fn classify_special_case(ctx: &FieldCtx, a: FieldElem, b: FieldElem) -> Result<(CaseTag, Prediction)> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let q = ctx.q();
    let na = ctx.pow(a, q + 1);
    let nb = ctx.pow(b, q + 1);
    let m1 = ctx.minus_one();
    let ab_one = ctx.mul(a, b) == ctx.one();
    if q % 2 == 1 {
        let h = q.div_ceil(2);
        let same_half = ctx.pow(a, h) == ctx.pow(b, h);
        if na == m1 && nb == m1 && !same_half && !ab_one {
            return Ok((CaseTag::External, Prediction::Exact(2 * q * q - 2)));
        }
        if na == m1 && same_half {
            return Ok((CaseTag::Secant, Prediction::Exact(2 * q * q - 2 * q)));
        }
    } else if na == ctx.one() && nb == ctx.one() && !ab_one {
        return Ok((CaseTag::Tangent, Prediction::Exact(2 * q * q - q - 1)));
    }
    if ab_one && (na == ctx.one() || na == m1) {
        return Ok((CaseTag::Other, Prediction::AtMost(q * q + q - 2)));
    }
    Ok((CaseTag::Other, Prediction::AtMost(q * q + 2 * q - 3)))
}

pub fn qd_bound(q: u64, d: usize) -> u64 {
    q.pow(d as u32 - 1) + 2 * q * q - 3
}

pub fn make_special_pair(
    ctx: &FieldCtx,
    d: usize,
    a: FieldElem,
    b: FieldElem,
) -> Result<(SpecialPair, Subspace, Subspace)> {
    ctx.check(a)?;
    ctx.check(b)?;
    let qa = special_qpoly(ctx, d, a)?;
    let qb = special_qpoly(ctx, d, b)?;
    let sa = linspace::kernel(ctx, &qa)?;
    let sb = linspace::kernel(ctx, &qb)?;
    let (case_tag, prediction) = if d == 3 {
        let (t, p) = classify_special_case(ctx, a, b)?;
        (Some(t), p)
    } else {
        (None, Prediction::AtMost(qd_bound(ctx.q(), d)))
    };
    let pair = SpecialPair { q: ctx.q(), d, a, b, case_tag, prediction, qa, qb };
    Ok((pair, sa, sb))
}

/// Parameters `c` whose special q-polynomial splits in the ambient field:
/// `c = -y^{q-1}` with `y` a nonzero value of `x -> x^{q^{d-1}} - x`.
pub fn splitting_parameters(ctx: &FieldCtx, d: usize) -> Result<Vec<FieldElem>> {
    if d < 3 {
        return Err(Error::Precondition(format!("special pairs need d >= 3, got {d}")));
    }
    if !ctx.fq_dim().is_multiple_of(d - 1) {
        return Err(Error::KernelTooSmall { expected: d, found: 0 });
    }
    let mut image: Vec<FieldElem> = ctx.elements().map(|x| ctx.sub(ctx.frobenius(x, d - 1), x)).collect();
    image.sort();
    image.dedup();
    let mut out: Vec<FieldElem> =
        image.into_iter().filter(|y| !y.is_zero()).map(|y| ctx.neg(ctx.pow(y, ctx.q() - 1))).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// First `(a, b)` in scan order realizing `case` at `d = 3`, with both kernels
/// split in the ambient field. Cases 1-3 scan `F_{q^2}^*`.
pub fn find_case_parameters(ctx: &FieldCtx, case: CaseTag) -> Result<(FieldElem, FieldElem)> {
    let q = ctx.q();
    let odd = q % 2 == 1;
    match case {
        CaseTag::External | CaseTag::Secant if !odd => return Err(Error::VacuousCase { case: case.number(), q }),
        CaseTag::Tangent if odd => return Err(Error::VacuousCase { case: case.number(), q }),
        _ => {}
    }
    let splitting = splitting_parameters(ctx, 3)?;
    let pool: Vec<FieldElem> = match case {
        CaseTag::Other => splitting,
        _ => {
            let sub: Vec<FieldElem> = ctx.subfield_elements(q * q)?.into_iter().filter(|e| !e.is_zero()).collect();
            sub.into_iter().filter(|e| splitting.binary_search(e).is_ok()).collect()
        }
    };
    for &a in &pool {
        for &b in &pool {
            if classify_special_case(ctx, a, b)?.0 == case {
                return Ok((a, b));
            }
        }
    }
    Err(Error::VacuousCase { case: case.number(), q })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinePosition {
    External,
    Secant,
    Tangent,
    /// The conic has fewer than `q + 1` points of `P(B)`.
    ConicNotRational,
    /// `ab = 1`: the conic degenerates.
    SingularConic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCounts {
    pub on_line: u64,
    pub on_conic: u64,
    pub on_both: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometryReport {
    /// Coefficients of `x0, x1, x2`.
    pub line_form: [FieldElem; 3],
    /// Coefficients of `x0^2, x1^2, x2^2, x0x1, x0x2, x1x2`.
    pub conic_form: [FieldElem; 6],
    pub nonsingular: bool,
    pub line_position: LinePosition,
    pub point_counts: PointCounts,
    /// `on_line + on_conic - on_both`.
    pub ratio: u64,
    pub count: u64,
}

/// Line/conic decomposition of `A^{-1} ∩ B` for a `d = 3` special pair,
/// viewed in the projective plane `P(B)` with `x_i = x^{q^i}`.
pub fn geometry_report(ctx: &FieldCtx, pair: &SpecialPair, b_space: &Subspace) -> Result<GeometryReport> {
    if pair.d != 3 {
        return Err(Error::Precondition("geometry needs d = 3".into()));
    }
    let q = ctx.q();
    let (a, b) = (pair.a, pair.b);
    let ab = ctx.mul(a, b);
    let qu = q as usize;
    let c = certify::certificate_c(ctx, &pair.qa, &pair.qb)?;
    let lhs = c.shift(qu + 2);
    let line = Poly::from_terms(ctx, [(qu * qu, ctx.one()), (1, ctx.minus_one())]);
    let conic = Poly::from_terms(
        ctx,
        [(qu * qu + qu, ab), (qu * qu + 1, b), (2 * qu, ctx.neg(a)), (qu + 1, ctx.neg(ab))],
    );
    if lhs != line.mul(ctx, &conic) {
        return Err(Error::IdentityFailure("x^{q+2} C(x) does not factor as line times conic".into()));
    }
    let line_form = [ctx.minus_one(), ctx.zero(), ctx.one()];
    let conic_form = [ctx.zero(), ctx.neg(a), ctx.zero(), ctx.neg(ab), b, ab];
    let (mut nl, mut nc, mut nb) = (0u64, 0u64, 0u64);
    for w in b_space.elements(ctx) {
        if w.is_zero() {
            continue;
        }
        let x = [w, ctx.frobenius(w, 1), ctx.frobenius(w, 2)];
        let on_l = ctx.sub(x[2], x[0]).is_zero();
        let quad = [
            ctx.mul(x[0], x[0]),
            ctx.mul(x[1], x[1]),
            ctx.mul(x[2], x[2]),
            ctx.mul(x[0], x[1]),
            ctx.mul(x[0], x[2]),
            ctx.mul(x[1], x[2]),
        ];
        let on_c = conic_form.iter().zip(&quad).fold(ctx.zero(), |s, (&k, &m)| ctx.add(s, ctx.mul(k, m))).is_zero();
        nl += on_l as u64;
        nc += on_c as u64;
        nb += (on_l && on_c) as u64;
    }
    let (on_line, on_conic, on_both) = (nl / (q - 1), nc / (q - 1), nb / (q - 1));
    let ratio = on_line + on_conic - on_both;
    let count = linspace::inverse_intersection_bruteforce(ctx, &linspace::kernel(ctx, &pair.qa)?, b_space)?.count as u64;
    if count != ratio * (q - 1) {
        return Err(Error::IdentityFailure(format!("point count {ratio} disagrees with witness count {count}")));
    }
    let nonsingular = ab != ctx.one();
    let line_position = if !nonsingular {
        LinePosition::SingularConic
    } else if on_conic != q + 1 {
        LinePosition::ConicNotRational
    } else {
        match on_both {
            0 => LinePosition::External,
            1 => LinePosition::Tangent,
            _ => LinePosition::Secant,
        }
    };
    Ok(GeometryReport {
        line_form,
        conic_form,
        nonsingular,
        line_position,
        point_counts: PointCounts { on_line, on_conic, on_both },
        ratio,
        count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QdReport {
    pub q: u64,
    pub d: usize,
    pub count: u64,
    pub bound: u64,
    pub within_bound: bool,
}

pub fn qd_configuration_bound(ctx: &FieldCtx, d: usize, a: FieldElem, b: FieldElem) -> Result<QdReport> {
    let (_, sa, sb) = make_special_pair(ctx, d, a, b)?;
    let count = linspace::inverse_intersection_bruteforce(ctx, &sa, &sb)?.count as u64;
    let bound = qd_bound(ctx.q(), d);
    Ok(QdReport { q: ctx.q(), d, count, bound, within_bound: count <= bound })
}

fn check_trace_alpha(ctx: &FieldCtx, alpha: FieldElem) -> Result<()> {
    ctx.check(alpha)?;
    let q = ctx.q();
    let q4 = q.pow(4);
    if !ctx.in_subfield(alpha, q4)? {
        return Err(Error::Precondition("alpha must lie in F_{q^4}".into()));
    }
    let sq = ctx.mul(alpha, alpha);
    if ctx.pow(sq, q * q) != sq || ctx.in_fq(sq) {
        return Err(Error::Precondition("alpha^2 must lie in F_{q^2} but not in F_q".into()));
    }
    Ok(())
}

/// Kernel of `x -> Tr_{F_{q^4}/F_q}(alpha x)`.
pub fn trace_kernel_space(ctx: &FieldCtx, alpha: FieldElem) -> Result<Subspace> {
    check_trace_alpha(ctx, alpha)?;
    let coeffs: Vec<FieldElem> = (0..4).map(|i| ctx.frobenius(alpha, i)).collect();
    let s = linspace::linear_kernel(ctx, &coeffs);
    if s.dim() != 3 {
        return Err(Error::KernelTooSmall { expected: 3, found: s.dim() });
    }
    Ok(s)
}

/// Roots of `P(alpha gamma^{-1} x)` and `P(alpha gamma x)` with
/// `P(x) = x^{q^3} + x^{q^2} + x^q + x`.
pub fn corollary_pair(ctx: &FieldCtx, alpha: FieldElem, gamma: FieldElem) -> Result<(Subspace, Subspace)> {
    check_trace_alpha(ctx, alpha)?;
    if gamma.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let t = linspace::linear_kernel(ctx, &[ctx.one(); 4]);
    if t.dim() != 3 {
        return Err(Error::KernelTooSmall { expected: 3, found: t.dim() });
    }
    let ainv = ctx.inv(alpha)?;
    let a = t.scale(ctx, ctx.mul(gamma, ainv));
    let b = t.scale(ctx, ctx.mul(ctx.inv(gamma)?, ainv));
    Ok((a, b))
}

/// Open window `(q^2 - 1 + floor(2 sqrt q)(q - 1), q^3 - 1)` for corollary counts.
pub fn corollary_window(q: u64) -> (u64, u64) {
    (q * q - 1 + isqrt(4 * q) * (q - 1), q * q * q - 1)
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_one_q3() {
        let f = FieldCtx::new(3, 4, 1).unwrap();
        let (a, b) = find_case_parameters(&f, CaseTag::External).unwrap();
        let (pair, sa, sb) = make_special_pair(&f, 3, a, b).unwrap();
        assert_eq!(pair.prediction, Prediction::Exact(16));
        assert_eq!(linspace::inverse_intersection_bruteforce(&f, &sa, &sb).unwrap().count, 16);
        let g = geometry_report(&f, &pair, &sb).unwrap();
        assert_eq!(g.line_position, LinePosition::External);
        assert_eq!(g.ratio, 8);
    }

    #[test]
    fn vacuous_cases() {
        let f = FieldCtx::new(2, 8, 2).unwrap();
        assert_eq!(find_case_parameters(&f, CaseTag::External), Err(Error::VacuousCase { case: 1, q: 4 }));
        let f = FieldCtx::new(3, 4, 1).unwrap();
        assert_eq!(find_case_parameters(&f, CaseTag::Tangent), Err(Error::VacuousCase { case: 3, q: 3 }));
    }

    #[test]
    fn trace_alpha_rejected() {
        let f = FieldCtx::new(3, 4, 1).unwrap();
        assert!(trace_kernel_space(&f, f.from_int(2)).is_err());
    }

    #[test]
    fn isqrt_floor() {
        assert_eq!(isqrt(12), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(corollary_window(3), (14, 26));
    }
}
