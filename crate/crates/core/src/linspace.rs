//! F_q-subspaces of the ambient field and their subspace polynomials.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::linalg;
use crate::poly::Poly;

/// Monic separable q-polynomial `sum_{i<=d} a_i x^{q^i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    qcoeffs: Vec<FieldElem>,
}

impl QPoly {
    pub fn new(qcoeffs: Vec<FieldElem>) -> Result<Self> {
        match qcoeffs.last() {
            Some(&c) if c == FieldElem::ONE => {}
            _ => return Err(Error::NotMonic),
        }
        if qcoeffs.len() > 1 && qcoeffs[0].is_zero() {
            return Err(Error::NotSeparable);
        }
        Ok(QPoly { qcoeffs })
    }

    pub fn dim(&self) -> usize {
        self.qcoeffs.len() - 1
    }

    pub fn qcoeffs(&self) -> &[FieldElem] {
        &self.qcoeffs
    }

    pub fn qcoeff(&self, i: usize) -> FieldElem {
        self.qcoeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn eval(&self, ctx: &FieldCtx, e: FieldElem) -> FieldElem {
        eval_linearized(ctx, &self.qcoeffs, e)
    }

    /// The ordinary polynomial of degree `q^d`.
    pub fn to_poly(&self, ctx: &FieldCtx) -> Poly {
        let q = ctx.q() as usize;
        Poly::from_terms(ctx, self.qcoeffs.iter().enumerate().map(|(i, &c)| (q.pow(i as u32), c)))
    }

    /// `gamma^{-q^d} A(gamma x)`, whose kernel is `gamma^{-1} ker A`.
    pub fn rescale(&self, ctx: &FieldCtx, gamma: FieldElem) -> Result<QPoly> {
        let d = self.dim();
        let norm = ctx.inv(ctx.frobenius(gamma, d))?;
        let coeffs =
            self.qcoeffs.iter().enumerate().map(|(i, &c)| ctx.mul(norm, ctx.mul(c, ctx.frobenius(gamma, i)))).collect();
        QPoly::new(coeffs)
    }

    /// Literal: `;`-separated element literals `a_0; ...; a_d`.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<QPoly> {
        let c = s.split(';').map(|t| ctx.parse_elem(t)).collect::<Result<Vec<_>>>()?;
        QPoly::new(c)
    }

    pub fn format(&self, ctx: &FieldCtx) -> String {
        self.qcoeffs.iter().map(|&c| ctx.format_elem(c)).collect::<Vec<_>>().join(";")
    }
}

/// `sum c_i e^{q^i}` for arbitrary (not necessarily monic) coefficients.
pub fn eval_linearized(ctx: &FieldCtx, coeffs: &[FieldElem], e: FieldElem) -> FieldElem {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(FieldElem::ZERO, |acc, (i, &c)| ctx.add(acc, ctx.mul(c, ctx.frobenius(e, i))))
}

/// F_q-subspace stored as the reduced row-echelon basis of its coordinate
/// vectors. Equality, ordering and hashing use the basis only.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Vec<FieldElem>,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.basis.len().cmp(&other.basis.len()).then_with(|| self.basis.cmp(&other.basis))
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

impl Subspace {
    /// Span of arbitrary elements; dependent generators are dropped.
    pub fn span(ctx: &FieldCtx, gens: &[FieldElem]) -> Subspace {
        let mut rows: Vec<Vec<FieldElem>> = gens.iter().map(|&g| ctx.coords(g)).collect();
        let pivots = linalg::rref(ctx, &mut rows);
        let basis = rows.iter().map(|r| ctx.from_coords(r)).collect();
        Subspace { basis, rows, pivots }
    }

    /// Span of an independent family.
    pub fn from_basis(ctx: &FieldCtx, basis: &[FieldElem]) -> Result<Subspace> {
        for &b in basis {
            ctx.check(b)?;
        }
        let s = Subspace::span(ctx, basis);
        if s.dim() != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(s)
    }

    pub fn zero() -> Subspace {
        Subspace { basis: Vec::new(), rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis (reduced echelon form).
    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    pub fn contains(&self, ctx: &FieldCtx, e: FieldElem) -> bool {
        let mut v = ctx.coords(e);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if !f.is_zero() {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ctx.sub(*x, ctx.mul(f, r));
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    /// All `q^d` elements. The coefficient vector runs through `F_q^d` with
    /// the last basis vector varying slowest.
    pub fn elements(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        let fq = ctx.fq_elements();
        let mut out = vec![FieldElem::ZERO];
        for &b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * fq.len());
            for &c in &fq {
                let cb = ctx.mul(c, b);
                next.extend(out.iter().map(|&e| ctx.add(e, cb)));
            }
            out = next;
        }
        out
    }

    /// `gamma * S`.
    pub fn scale(&self, ctx: &FieldCtx, gamma: FieldElem) -> Subspace {
        let gens: Vec<FieldElem> = self.basis.iter().map(|&b| ctx.mul(gamma, b)).collect();
        Subspace::span(ctx, &gens)
    }

    pub fn is_subspace_of(&self, ctx: &FieldCtx, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(ctx, b))
    }

    /// Literal: `;`-separated element literals of a spanning set, echelonized.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Subspace> {
        let gens = s.split(';').map(|t| ctx.parse_elem(t)).collect::<Result<Vec<_>>>()?;
        Subspace::from_basis(ctx, &gens)
    }

    pub fn format(&self, ctx: &FieldCtx) -> String {
        self.basis.iter().map(|&c| ctx.format_elem(c)).collect::<Vec<_>>().join(";")
    }

    /// Uniformly chosen independent `d`-tuple, echelonized.
    pub fn random<R: Rng + ?Sized>(ctx: &FieldCtx, d: usize, rng: &mut R) -> Result<Subspace> {
        if d > ctx.fq_dim() {
            return Err(Error::DimensionMismatch(d, ctx.fq_dim()));
        }
        let mut gens = Vec::with_capacity(d);
        while gens.len() < d {
            let e = ctx.elem(rng.gen_range(1..ctx.size())).expect("index in range");
            gens.push(e);
            if Subspace::span(ctx, &gens).dim() < gens.len() {
                gens.pop();
            }
        }
        Subspace::from_basis(ctx, &gens)
    }
}

/// Subspace polynomial built by `A_{i+1} = A_i^q - A_i(beta)^{q-1} A_i`.
pub fn qpoly_from_subspace(ctx: &FieldCtx, s: &Subspace) -> Result<QPoly> {
    let mut a = vec![FieldElem::ONE];
    for &beta in s.basis() {
        let v = eval_linearized(ctx, &a, beta);
        if v.is_zero() {
            return Err(Error::DependentBasis);
        }
        let f = ctx.pow(v, ctx.q() - 1);
        let mut next = vec![FieldElem::ZERO; a.len() + 1];
        for (i, &c) in a.iter().enumerate() {
            next[i + 1] = ctx.add(next[i + 1], ctx.frobenius(c, 1));
            next[i] = ctx.sub(next[i], ctx.mul(f, c));
        }
        a = next;
    }
    QPoly::new(a)
}

/// F_q-kernel of `e -> sum c_i e^{q^i}` inside the ambient field.
pub fn linear_kernel(ctx: &FieldCtx, coeffs: &[FieldElem]) -> Subspace {
    let m = ctx.fq_dim();
    let cols: Vec<Vec<FieldElem>> =
        ctx.fq_basis().iter().map(|&t| ctx.coords(eval_linearized(ctx, coeffs, t))).collect();
    let mat: linalg::Matrix = (0..m).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let gens: Vec<FieldElem> = linalg::nullspace(ctx, &mat, m).iter().map(|v| ctx.from_coords(v)).collect();
    Subspace::span(ctx, &gens)
}

/// Root space of a subspace polynomial; fails if not all roots are ambient.
pub fn kernel(ctx: &FieldCtx, a: &QPoly) -> Result<Subspace> {
    if a.dim() > 0 && a.qcoeff(0).is_zero() {
        return Err(Error::NotSeparable);
    }
    let s = linear_kernel(ctx, a.qcoeffs());
    if s.dim() < a.dim() {
        return Err(Error::KernelTooSmall { expected: a.dim(), found: s.dim() });
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Intersection {
    pub count: usize,
    /// Sorted in serialization order.
    pub witnesses: Vec<FieldElem>,
}

/// `A^{-1} ∩ B` by inverting every nonzero element of `A` and evaluating the
/// subspace polynomial of `B`.
pub fn inverse_intersection_bruteforce(ctx: &FieldCtx, a: &Subspace, b: &Subspace) -> Result<Intersection> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let bq = qpoly_from_subspace(ctx, b)?;
    let mut witnesses: Vec<FieldElem> = a
        .elements(ctx)
        .into_iter()
        .filter(|e| !e.is_zero())
        .map(|e| ctx.inv(e).expect("nonzero"))
        .filter(|&w| bq.eval(ctx, w).is_zero())
        .collect();
    witnesses.sort();
    Ok(Intersection { count: witnesses.len(), witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn subfield_polynomial() {
        let f = FieldCtx::new(5, 4, 1).unwrap();
        let s = Subspace::from_basis(&f, &[f.one()]).unwrap();
        let a = qpoly_from_subspace(&f, &s).unwrap();
        assert_eq!(a.qcoeffs(), &[f.minus_one(), f.one()]);
        let f9 = FieldCtx::new(3, 2, 1).unwrap();
        let s = Subspace::from_basis(&f9, &[f9.one(), f9.generator()]).unwrap();
        let a = qpoly_from_subspace(&f9, &s).unwrap();
        assert_eq!(a.qcoeffs(), &[f9.minus_one(), f9.zero(), f9.one()]);
    }

    #[test]
    fn round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in ["5^1:4", "2^2:4", "3^1:4", "2^1:6"] {
            let f = FieldCtx::parse(spec).unwrap();
            for d in 1..=f.fq_dim().min(3) {
                let s = Subspace::random(&f, d, &mut rng).unwrap();
                let a = qpoly_from_subspace(&f, &s).unwrap();
                assert_eq!(kernel(&f, &a).unwrap(), s);
                let elems = s.elements(&f);
                assert_eq!(elems.len() as u64, f.q().pow(d as u32));
                assert!(elems.iter().all(|&e| a.eval(&f, e).is_zero() && s.contains(&f, e)));
            }
        }
    }

    #[test]
    fn kernel_errors() {
        let f = FieldCtx::new(3, 2, 1).unwrap();
        // on F_9, x^{27} - x agrees with x^3 - x
        let a = QPoly::new(vec![f.minus_one(), f.zero(), f.zero(), f.one()]).unwrap();
        assert_eq!(kernel(&f, &a), Err(Error::KernelTooSmall { expected: 3, found: 1 }));
        assert_eq!(QPoly::new(vec![f.zero(), f.one()]), Err(Error::NotSeparable));
        assert_eq!(QPoly::new(vec![f.one(), f.minus_one()]), Err(Error::NotMonic));
    }

    #[test]
    fn subfield_pair_is_full() {
        let f = FieldCtx::new(3, 4, 1).unwrap();
        let f9 = Subspace::span(&f, &f.subfield_elements(9).unwrap());
        let r = inverse_intersection_bruteforce(&f, &f9, &f9).unwrap();
        assert_eq!(r.count, 8);
        let d1 = Subspace::from_basis(&f, &[f.one()]).unwrap();
        assert_eq!(inverse_intersection_bruteforce(&f, &d1, &f9), Err(Error::DimensionMismatch(1, 2)));
    }

    #[test]
    fn literal_round_trip() {
        let f = FieldCtx::new(3, 4, 1).unwrap();
        let s = Subspace::parse(&f, "0,1,0,0;1,0,0,0").unwrap();
        assert_eq!(s.format(&f), "1,0,0,0;0,1,0,0");
        assert_eq!(Subspace::parse(&f, "1,0;2,0"), Err(Error::DependentBasis));
    }
}
