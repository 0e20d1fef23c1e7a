//! The form `E = x_0...x_{n-1} (1 ± (sum a_i/x_i)(sum b_j x_j))` and its
//! factorization data.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::linalg;
use crate::linspace::{self, QPoly, Subspace};
use crate::poly::{self, Poly};

pub type Exponent = Vec<u8>;

/// Sparse polynomial in `n` indeterminates; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exponent, FieldElem>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, exp: Exponent, c: FieldElem) -> Self {
        assert_eq!(exp.len(), n, "exponent length");
        let mut p = MultiPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn constant(n: usize, c: FieldElem) -> Self {
        MultiPoly::monomial(n, vec![0; n], c)
    }

    /// `c * x_i`.
    pub fn var(n: usize, i: usize, c: FieldElem) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiPoly::monomial(n, e, c)
    }

    pub fn from_terms(ctx: &FieldCtx, n: usize, terms: impl IntoIterator<Item = (Exponent, FieldElem)>) -> Self {
        let mut p = MultiPoly::zero(n);
        for (e, c) in terms {
            p.add_term(ctx, e, c);
        }
        p
    }

    fn add_term(&mut self, ctx: &FieldCtx, e: Exponent, c: FieldElem) {
        debug_assert_eq!(e.len(), self.n);
        let s = ctx.add(self.terms.get(&e).copied().unwrap_or(FieldElem::ZERO), c);
        if s.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, s);
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElem> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u8]) -> FieldElem {
        self.terms.get(e).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_in(&self, i: usize) -> u8 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(ctx, e.clone(), c);
        }
        out
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &MultiPoly) -> MultiPoly {
        self.add(ctx, &other.scale(ctx, ctx.minus_one()))
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElem) -> MultiPoly {
        MultiPoly::from_terms(ctx, self.n, self.terms.iter().map(|(e, &v)| (e.clone(), ctx.mul(v, c))))
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(ctx, e, ctx.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, ctx: &FieldCtx, k: u32) -> MultiPoly {
        (0..k).fold(MultiPoly::constant(self.n, ctx.one()), |acc, _| acc.mul(ctx, self))
    }

    pub fn map_coeffs(&self, ctx: &FieldCtx, f: impl Fn(FieldElem) -> FieldElem) -> MultiPoly {
        MultiPoly::from_terms(ctx, self.n, self.terms.iter().map(|(e, &c)| (e.clone(), f(c))))
    }

    pub fn eval(&self, ctx: &FieldCtx, point: &[FieldElem]) -> FieldElem {
        self.terms.iter().fold(FieldElem::ZERO, |acc, (e, &c)| {
            let m = e.iter().zip(point).fold(c, |m, (&k, &x)| ctx.mul(m, ctx.pow(x, k as u64)));
            ctx.add(acc, m)
        })
    }

    /// `x_i -> forms[i]`; all forms must share one variable count.
    pub fn substitute(&self, ctx: &FieldCtx, forms: &[MultiPoly]) -> MultiPoly {
        let m = forms.first().map_or(0, |f| f.n);
        let mut out = MultiPoly::zero(m);
        for (e, &c) in &self.terms {
            let mut t = MultiPoly::constant(m, c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(ctx, &forms[i].pow(ctx, k as u32));
                }
            }
            out = out.add(ctx, &t);
        }
        out
    }

    /// `x_i -> x^{q^i}`.
    pub fn to_univariate(&self, ctx: &FieldCtx) -> Poly {
        let q = ctx.q() as usize;
        Poly::from_terms(
            ctx,
            self.terms.iter().map(|(e, &c)| (e.iter().enumerate().map(|(i, &k)| k as usize * q.pow(i as u32)).sum(), c)),
        )
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Exponent {
        let mut m = vec![u8::MAX; self.n];
        for e in self.terms.keys() {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
        }
        if self.terms.is_empty() {
            m.fill(0);
        }
        m
    }

    pub fn div_monomial(&self, m: &[u8]) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.n);
        for (e, &c) in &self.terms {
            if e.iter().zip(m).any(|(a, b)| a < b) {
                return Err(Error::Precondition("monomial does not divide".into()));
            }
            out.terms.insert(e.iter().zip(m).map(|(a, b)| a - b).collect(), c);
        }
        Ok(out)
    }

    /// Exact quotient by `x_i + beta x_j`, or `None` if it does not divide.
    pub fn div_binomial(&self, ctx: &FieldCtx, i: usize, j: usize, beta: FieldElem) -> Option<MultiPoly> {
        let n = self.n;
        let top = self.degree_in(i) as usize;
        // slices[k] = coefficient of x_i^k, free of x_i
        let mut slices = vec![MultiPoly::zero(n); top + 1];
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            slices[k].add_term(ctx, e2, c);
        }
        let bxj = MultiPoly::var(n, j, beta);
        let mut quot = MultiPoly::zero(n);
        let mut prev = MultiPoly::zero(n);
        for k in (1..=top).rev() {
            let qk = slices[k].sub(ctx, &bxj.mul(ctx, &prev));
            for (e, &c) in &qk.terms {
                let mut e2 = e.clone();
                e2[i] = (k - 1) as u8;
                quot.add_term(ctx, e2, c);
            }
            prev = qk;
        }
        slices[0].sub(ctx, &bxj.mul(ctx, &prev)).is_zero().then_some(quot)
    }

    pub fn format(&self, ctx: &FieldCtx) -> Vec<(Exponent, String)> {
        self.terms.iter().map(|(e, &c)| (e.clone(), ctx.format_elem(c))).collect()
    }
}

/// `x_0...x_{n-1} (1 + sign (sum a_i/x_i)(sum b_j x_j))`.
pub fn build_e(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem], sign: i8) -> Result<MultiPoly> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::Precondition("E needs at least two indeterminates".into()));
    }
    let s = if sign < 0 { ctx.minus_one() } else { ctx.one() };
    let ones = vec![1u8; n];
    let mut terms = vec![(ones.clone(), ctx.one())];
    for i in 0..n {
        for j in 0..n {
            let mut e = ones.clone();
            e[i] -= 1;
            e[j] += 1;
            terms.push((e, ctx.mul(s, ctx.mul(a[i], b[j]))));
        }
    }
    let e = MultiPoly::from_terms(ctx, n, terms);
    if !check_property(&e) {
        return Err(Error::IdentityFailure("E violates the degree property".into()));
    }
    Ok(e)
}

/// `E` for the pair of q-polynomials, with the sign that makes `E(x, x^q, ...)`
/// equal to `C_0(x)`.
pub fn e_of_pair(ctx: &FieldCtx, a: &QPoly, b: &QPoly) -> Result<MultiPoly> {
    let d = a.dim();
    let ac: Vec<FieldElem> = (0..d).map(|i| a.qcoeff(i)).collect();
    let bc: Vec<FieldElem> = (0..d).map(|i| b.qcoeff(i)).collect();
    build_e(ctx, &ac, &bc, -1)
}

/// Degree at most two in each indeterminate, at most three in each pair.
pub fn check_property(e: &MultiPoly) -> bool {
    e.terms.keys().all(|x| {
        x.iter().all(|&k| k <= 2) && (0..x.len()).all(|i| (i + 1..x.len()).all(|j| x[i] + x[j] <= 3))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialFactor {
    pub i: usize,
    pub j: usize,
    pub alpha: FieldElem,
    pub beta: FieldElem,
}

/// All `x_i + beta x_j` (`i < j`, `beta != 0`, `beta` ambient) dividing `e`.
pub fn find_binomial_linear_factors(ctx: &FieldCtx, e: &MultiPoly) -> Result<Vec<BinomialFactor>> {
    if e.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = e.nvars();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // x_i = u x_j; group by the remaining monomial
            let mut groups: BTreeMap<Exponent, Vec<(usize, FieldElem)>> = BTreeMap::new();
            for (x, &c) in e.terms() {
                let mut y = x.clone();
                y[j] += y[i];
                y[i] = 0;
                groups.entry(y).or_default().push((x[i] as usize, c));
            }
            let mut g = Poly::zero();
            for terms in groups.values() {
                let p = Poly::from_terms(ctx, terms.iter().copied());
                g = if g.is_zero() { p } else if p.is_zero() { g } else { poly::gcd(ctx, &g, &p)? };
            }
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            for u in g.roots_by_scan(ctx)?.into_iter().filter(|u| !u.is_zero()) {
                let beta = ctx.neg(u);
                if e.div_binomial(ctx, i, j, beta).is_some() {
                    out.push(BinomialFactor { i, j, alpha: ctx.one(), beta });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Shape {
    IrreducibleCandidate,
    /// Two linear factors in the same two indeterminates.
    Exc1,
    /// A binomial linear factor times a quadratic in three indeterminates.
    Exc2,
    OtherSplit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub monomial_part: Exponent,
    /// With multiplicity.
    pub binomial_linear_factors: Vec<BinomialFactor>,
    pub residual: MultiPoly,
    pub shape: Shape,
    /// Degree of the first non-monomial factor.
    pub r: usize,
    /// Total degree of the non-monomial part.
    pub n: usize,
}

pub fn factor_report(ctx: &FieldCtx, e: &MultiPoly) -> Result<FactorReport> {
    let monomial_part = e.monomial_content();
    let core = e.div_monomial(&monomial_part)?;
    let found = find_binomial_linear_factors(ctx, &core)?;
    let mut residual = core.clone();
    let mut factors = Vec::new();
    for f in found {
        while let Some(q) = residual.div_binomial(ctx, f.i, f.j, f.beta) {
            residual = q;
            factors.push(f);
        }
    }
    let n = core.total_degree();
    // The shape is read off the cofactor of the first binomial factor; in
    // the three-variable case that quadratic may split further.
    let cofactor = factors.first().and_then(|f| core.div_binomial(ctx, f.i, f.j, f.beta));
    let shape = match (factors.len(), n, cofactor) {
        (0, _, _) | (_, 0..=1, _) => Shape::IrreducibleCandidate,
        (2, 2, _) if factors[0].i == factors[1].i && factors[0].j == factors[1].j => Shape::Exc1,
        (_, 3, Some(c)) if (0..c.nvars()).filter(|&v| c.degree_in(v) > 0).count() == 3 => Shape::Exc2,
        _ => Shape::OtherSplit,
    };
    let r = if factors.is_empty() { n } else { 1 };
    Ok(FactorReport { monomial_part, binomial_linear_factors: factors, residual, shape, r, n })
}

impl FactorReport {
    /// Monomial part times factors times residual.
    pub fn expand(&self, ctx: &FieldCtx) -> MultiPoly {
        let n = self.residual.nvars();
        let mut p = self.residual.mul(ctx, &MultiPoly::monomial(n, self.monomial_part.clone(), ctx.one()));
        for f in &self.binomial_linear_factors {
            let lin = MultiPoly::var(n, f.i, f.alpha).add(ctx, &MultiPoly::var(n, f.j, f.beta));
            p = p.mul(ctx, &lin);
        }
        p
    }
}

/// Both sides of the two exceptional factorizations over `F_p`, as
/// polynomials in `x1, x2, x3, a, b, c` with the `c^{-1}` cleared by `c`.
/// `x3_sign` is the coefficient of `1/x3` in the second one; the
/// factorization holds for `+1` (and for `-1` only in characteristic 2).
pub fn exceptional_identity_sides(ctx: &FieldCtx, x3_sign: i64) -> [(MultiPoly, MultiPoly); 2] {
    let n = 6;
    let one = ctx.one();
    let v = |i: usize| MultiPoly::var(n, i, one);
    let (x1, x2, x3, a, b, c) = (v(0), v(1), v(2), v(3), v(4), v(5));
    let k = |e: i64| MultiPoly::constant(n, ctx.from_int(e));
    let m = |p: &MultiPoly, q: &MultiPoly| p.mul(ctx, q);
    let s = |p: &MultiPoly, q: &MultiPoly| p.add(ctx, q);
    let d = |p: &MultiPoly, q: &MultiPoly| p.sub(ctx, q);

    // c * x1 x2 (1 + (a/x1 + (a+c)/x2)(b x1 + (b - 1/c) x2))
    let apc = s(&a, &c);
    let bc_minus_1 = d(&m(&b, &c), &k(1));
    let lhs1 = s(
        &m(&c, &m(&x1, &x2)),
        &m(&s(&m(&a, &x2), &m(&apc, &x1)), &s(&m(&m(&b, &c), &x1), &m(&bc_minus_1, &x2))),
    );
    // c * (x1 + x2)((a+c) b x1 + a (b - 1/c) x2)
    let rhs1 = m(&s(&x1, &x2), &s(&m(&m(&apc, &m(&b, &c)), &x1), &m(&m(&a, &bc_minus_1), &x2)));

    // x1 x2 x3 (1 + (a/x1 + a/x2 + x3_sign/x3)(b x1 + b x2 - x3))
    let x123 = m(&x1, &m(&x2, &x3));
    let first = s(&s(&m(&a, &m(&x2, &x3)), &m(&a, &m(&x1, &x3))), &m(&k(x3_sign), &m(&x1, &x2)));
    let second = d(&s(&m(&b, &x1), &m(&b, &x2)), &x3);
    let lhs2 = s(&x123, &m(&first, &second));
    let ab = m(&a, &b);
    let rhs2 = m(
        &s(&x1, &x2),
        &d(
            &s(&s(&m(&ab, &m(&x2, &x3)), &m(&ab, &m(&x1, &x3))), &m(&b, &m(&x1, &x2))),
            &m(&a, &m(&x3, &x3)),
        ),
    );
    [(lhs1, rhs1), (lhs2, rhs2)]
}

/// Whether both exceptional factorizations hold identically over `F_p`.
pub fn verify_exceptional_identities(p: u64) -> Result<[bool; 2]> {
    let ctx = FieldCtx::new(p, 1, 1)?;
    let sides = exceptional_identity_sides(&ctx, 1);
    Ok([sides[0].0 == sides[0].1, sides[1].0 == sides[1].1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateChange {
    /// `F_q`-basis of the roots of the adjoint q-polynomial.
    pub gammas: Vec<FieldElem>,
    /// `functionals[l][i]`: coefficient of `x^{q^i}` in `z_l`.
    pub functionals: Vec<Vec<FieldElem>>,
    /// `transition[i][l]`: coefficient of `z_l` in `x_i`.
    pub transition: Vec<Vec<FieldElem>>,
}

/// Coordinates `z_l` on `ker B`, taking values in `F_q`, built from the roots
/// of `b_0^{q^d} x^{q^d} + b_1^{q^{d-1}} x^{q^{d-1}} + ... + b_d x`.
pub fn coordinate_change(ctx: &FieldCtx, b: &QPoly) -> Result<CoordinateChange> {
    let d = b.dim();
    if b.qcoeff(0).is_zero() {
        return Err(Error::NotSeparable);
    }
    let adjoint: Vec<FieldElem> = (0..=d).map(|i| ctx.frobenius(b.qcoeff(d - i), i)).collect();
    let roots = linspace::linear_kernel(ctx, &adjoint);
    if roots.dim() < d {
        return Err(Error::KernelTooSmall { expected: d, found: roots.dim() });
    }
    let gammas = roots.basis().to_vec();
    let functionals: Vec<Vec<FieldElem>> = gammas
        .iter()
        .map(|&g| {
            (0..d)
                .map(|i| {
                    (0..=i).fold(FieldElem::ZERO, |s, k| {
                        let t = ctx.frobenius(ctx.mul(b.qcoeff(k), g), i - k);
                        ctx.add(s, t)
                    })
                })
                .collect()
        })
        .collect();
    let transition = linalg::inverse(ctx, &functionals)
        .ok_or_else(|| Error::IdentityFailure("coordinate functionals are dependent".into()))?;
    Ok(CoordinateChange { gammas, functionals, transition })
}

impl CoordinateChange {
    /// `z_l(x)` for an ambient element `x`.
    pub fn z(&self, ctx: &FieldCtx, x: FieldElem) -> Vec<FieldElem> {
        self.functionals.iter().map(|f| linspace::eval_linearized(ctx, f, x)).collect()
    }

    /// `e` rewritten in the `z` coordinates.
    pub fn transform(&self, ctx: &FieldCtx, e: &MultiPoly) -> MultiPoly {
        let d = self.transition.len();
        let forms: Vec<MultiPoly> = self
            .transition
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(MultiPoly::zero(d), |acc, (l, &c)| acc.add(ctx, &MultiPoly::var(d, l, c)))
            })
            .collect();
        e.substitute(ctx, &forms)
    }
}

/// Scaled so the first nonzero coefficient is 1, are all coefficients in `F_q`?
pub fn defined_over_fq(ctx: &FieldCtx, coeffs: &[FieldElem]) -> bool {
    let Some(&lead) = coeffs.iter().find(|c| !c.is_zero()) else {
        return true;
    };
    let s = ctx.inv(lead).expect("nonzero");
    coeffs.iter().all(|&c| ctx.in_fq(ctx.mul(c, s)))
}

pub fn multipoly_defined_over_fq(ctx: &FieldCtx, e: &MultiPoly) -> bool {
    let c: Vec<FieldElem> = e.terms().values().copied().collect();
    defined_over_fq(ctx, &c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateTriples {
    pub triples: [[FieldElem; 3]; 3],
    pub vanish_on_e: [bool; 3],
    pub vanish_on_conjugate: [bool; 3],
    /// Whether each triple is proportional to `(w, w^q, w^{q^2})` for some `w` in `B`.
    pub rational: [bool; 3],
}

/// `E^sigma`: coefficients raised to the `q`-th power, `x_0 -> x_1`,
/// `x_1 -> x_2`, `x_2 -> -(b_0 x_0 + b_1 x_1 + b_2 x_2)`.
pub fn conjugate_form(ctx: &FieldCtx, e: &MultiPoly, b: &QPoly) -> Result<MultiPoly> {
    if b.dim() != 3 || e.nvars() != 3 {
        return Err(Error::Precondition("conjugate form needs d = 3".into()));
    }
    let fr = e.map_coeffs(ctx, |c| ctx.frobenius(c, 1));
    let last = (0..3).fold(MultiPoly::zero(3), |acc, i| acc.add(ctx, &MultiPoly::var(3, i, ctx.neg(b.qcoeff(i)))));
    Ok(fr.substitute(ctx, &[MultiPoly::var(3, 1, ctx.one()), MultiPoly::var(3, 2, ctx.one()), last]))
}

/// `C_0(x)^q mod B(x)` with each exponent expanded in base `q` as
/// `x_0^{e_0} x_1^{e_1} x_2^{e_2}`. Agrees with [`conjugate_form`] when `q > 3`.
pub fn conjugate_form_by_reduction(ctx: &FieldCtx, a: &QPoly, b: &QPoly) -> Result<MultiPoly> {
    let c0 = crate::certify::certificate_c0(ctx, a, b)?;
    let q = ctx.q() as usize;
    let powered = Poly::from_terms(ctx, c0.terms().map(|(e, c)| (e * q, ctx.frobenius(c, 1))));
    let r = powered.rem(ctx, &b.to_poly(ctx))?;
    let mut out = MultiPoly::zero(3);
    for (e, c) in r.terms() {
        let digits = vec![(e % q) as u8, (e / q % q) as u8, (e / (q * q)) as u8];
        out.add_term(ctx, digits, c);
    }
    Ok(out)
}

pub fn frobenius_conjugate_points(ctx: &FieldCtx, a: &QPoly, b: &QPoly, b_space: &Subspace) -> Result<ConjugateTriples> {
    if a.dim() != 3 || b.dim() != 3 {
        return Err(Error::Precondition("conjugate triples need d = 3".into()));
    }
    let e = e_of_pair(ctx, a, b)?;
    let es = conjugate_form(ctx, &e, b)?;
    let (b0, b1, b2) = (b.qcoeff(0), b.qcoeff(1), b.qcoeff(2));
    let z = ctx.zero();
    let triples = [[ctx.one(), z, z], [b1, ctx.neg(b0), z], [b2, z, ctx.neg(b0)]];
    let vanish_on_e = triples.map(|t| e.eval(ctx, &t).is_zero());
    let vanish_on_conjugate = triples.map(|t| es.eval(ctx, &t).is_zero());
    let points: Vec<[FieldElem; 3]> = b_space
        .elements(ctx)
        .into_iter()
        .filter(|w| !w.is_zero())
        .map(|w| [w, ctx.frobenius(w, 1), ctx.frobenius(w, 2)])
        .collect();
    let proportional = |t: &[FieldElem; 3], p: &[FieldElem; 3]| {
        (0..3).all(|i| (0..3).all(|j| ctx.mul(t[i], p[j]) == ctx.mul(t[j], p[i])))
    };
    let rational = triples.map(|t| points.iter().any(|p| proportional(&t, p)));
    Ok(ConjugateTriples { triples, vanish_on_e, vanish_on_conjugate, rational })
}
