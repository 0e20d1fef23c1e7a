//! Dense univariate polynomials over the ambient field.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};

/// Coefficients constant term first, never with trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: FieldElem, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// Builds `sum c x^e` from `(e, c)` pairs; repeated exponents accumulate.
    pub fn from_terms(ctx: &FieldCtx, terms: impl IntoIterator<Item = (usize, FieldElem)>) -> Self {
        let mut coeffs = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, FieldElem::ZERO);
            }
            coeffs[e] = ctx.add(coeffs[e], c);
        }
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, FieldElem)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c))
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| ctx.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| ctx.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
                }
            }
        }
        Poly::new(out)
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Result<Poly> {
        let inv = ctx.inv(self.leading()).map_err(|_| Error::ZeroPolynomial)?;
        Ok(self.scale(ctx, inv))
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, ctx: &FieldCtx, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = ctx.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let f = ctx.mul(c, lead_inv);
            quot[top - dd] = f;
            let base = top - dd;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[base + i] = ctx.sub(rem[base + i], ctx.mul(f, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, ctx: &FieldCtx, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(ctx, divisor)?.1)
    }

    /// Horner evaluation.
    pub fn eval(&self, ctx: &FieldCtx, e: FieldElem) -> FieldElem {
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, e), c))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, ctx: &FieldCtx, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut result = Poly::constant(FieldElem::ONE).rem(ctx, modulus)?;
        let mut base = self.rem(ctx, modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(ctx, &base).rem(ctx, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ctx, &base).rem(ctx, modulus)?;
            }
        }
        Ok(result)
    }

    /// Coefficients raised to the `q^j`-th power.
    pub fn frobenius_coeffs(&self, ctx: &FieldCtx, j: usize) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| ctx.frobenius(c, j)).collect())
    }

    /// Roots in the ambient field, by exhaustive evaluation.
    pub fn roots_by_scan(&self, ctx: &FieldCtx) -> Result<Vec<FieldElem>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(ctx.elements().filter(|&e| self.eval(ctx, e).is_zero()).collect())
    }

    /// Polynomial literal: element literals separated by `;`, constant term first.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Poly> {
        if s.trim().is_empty() {
            return Ok(Poly::zero());
        }
        s.split(';').map(|t| ctx.parse_elem(t)).collect::<Result<Vec<_>>>().map(Poly::new)
    }

    pub fn format(&self, ctx: &FieldCtx) -> String {
        self.coeffs.iter().map(|&c| ctx.format_elem(c)).collect::<Vec<_>>().join(";")
    }
}

/// Monic greatest common divisor.
pub fn gcd(ctx: &FieldCtx, f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = a.rem(ctx, &b)?;
        a = b;
        b = r;
    }
    a.monic(ctx)
}

/// Number of distinct roots of `f` inside the ambient field, i.e.
/// `deg gcd(f, x^{p^M} - x)`, with `x^{p^M}` reduced modulo `f` by iterated
/// `p`-th powering.
pub fn distinct_root_count(ctx: &FieldCtx, f: &Poly) -> Result<usize> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(0);
    }
    let x = Poly::monomial(FieldElem::ONE, 1);
    let mut h = x.rem(ctx, f)?;
    for _ in 0..ctx.degree() {
        h = h.pow_mod(ctx, ctx.p(), f)?;
    }
    let diff = h.sub(ctx, &x);
    Ok(gcd(ctx, f, &diff)?.degree().unwrap_or(0))
}
