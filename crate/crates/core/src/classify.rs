//! Equivalence of pairs, exhaustive censuses and orbit counts.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::certify;
use crate::construct::{self, CaseTag, Prediction};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::linspace::{self, QPoly, Subspace};

/// Representatives `g^i`, `i < (|F| - 1)/(q - 1)`, of `F^* / F_q^*`.
pub fn scalar_reps(ctx: &FieldCtx) -> impl Iterator<Item = FieldElem> + '_ {
    let n = (ctx.size() - 1) / (ctx.q() - 1);
    (0..n).map(|i| ctx.generator_pow(i))
}

/// `(gamma^{-1} A, gamma B)`.
pub fn act(ctx: &FieldCtx, gamma: FieldElem, a: &Subspace, b: &Subspace) -> Result<(Subspace, Subspace)> {
    let gi = ctx.inv(gamma)?;
    Ok((a.scale(ctx, gi), b.scale(ctx, gamma)))
}

/// Some `gamma` with `gamma^{-1} A = A2` and `gamma B = B2`.
pub fn equivalent(ctx: &FieldCtx, a: &Subspace, b: &Subspace, a2: &Subspace, b2: &Subspace) -> Option<FieldElem> {
    if a.dim() != a2.dim() || b.dim() != b2.dim() {
        return None;
    }
    scalar_reps(ctx).find(|&g| {
        b.scale(ctx, g) == *b2 && a.scale(ctx, ctx.inv(g).expect("nonzero")) == *a2
    })
}

/// All `gamma` in the ambient field fixing both `A` and `B` under the action.
pub fn stabilizer(ctx: &FieldCtx, a: &Subspace, b: &Subspace) -> Vec<FieldElem> {
    ctx.elements()
        .filter(|g| !g.is_zero())
        .filter(|&g| b.scale(ctx, g) == *b && a.scale(ctx, ctx.inv(g).expect("nonzero")) == *a)
        .collect()
}

/// Number of `d`-dimensional subspaces of an `e`-dimensional space over `F_q`.
pub fn gaussian_binomial(e: u32, d: u32, q: u64) -> u64 {
    if d > e {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= (q as u128).pow(e - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// Every `d`-dimensional `F_q`-subspace of `F_{q^e}`, each once, sorted.
pub fn enumerate_subspaces(ctx: &FieldCtx, d: usize, e: usize) -> Result<Vec<Subspace>> {
    if e == 0 || !ctx.fq_dim().is_multiple_of(e) {
        return Err(Error::NotASubfield(ctx.q().pow(e as u32)));
    }
    if d > e {
        return Err(Error::DimensionMismatch(d, e));
    }
    let order = ctx.q().pow(e as u32);
    let zeta = ctx.generator_pow((ctx.size() - 1) / (order - 1));
    let basis: Vec<FieldElem> = (0..e as u64).map(|i| ctx.pow(zeta, i)).collect();
    let fq = ctx.fq_elements();
    let mut out = Vec::with_capacity(gaussian_binomial(e as u32, d as u32, ctx.q()) as usize);
    for pivots in combinations(e, d) {
        // free entries: row r, columns c > pivots[r] with c not a pivot
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| ((pivots[r] + 1)..e).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (fq.len() as u64).pow(free.len() as u32);
        for mut idx in 0..total {
            let mut rows = vec![vec![FieldElem::ZERO; e]; d];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = FieldElem::ONE;
            }
            for &(r, c) in &free {
                rows[r][c] = fq[(idx % fq.len() as u64) as usize];
                idx /= fq.len() as u64;
            }
            let gens: Vec<FieldElem> = rows
                .iter()
                .map(|row| row.iter().zip(&basis).fold(FieldElem::ZERO, |s, (&c, &b)| ctx.add(s, ctx.mul(c, b))))
                .collect();
            out.push(Subspace::from_basis(ctx, &gens)?);
        }
    }
    out.sort();
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

type Bits = Vec<u64>;

fn bitset(size: usize, elems: impl Iterator<Item = FieldElem>) -> Bits {
    let mut b = vec![0u64; size.div_ceil(64)];
    for e in elems {
        b[e.index() / 64] |= 1 << (e.index() % 64);
    }
    b
}

/// Precomputed membership tables for a list of equal-dimension subspaces.
pub struct CensusTables<'a> {
    ctx: &'a FieldCtx,
    subspaces: Vec<Subspace>,
    qpolys: Vec<QPoly>,
    member: Vec<Bits>,
    inverses: Vec<Bits>,
}

impl<'a> CensusTables<'a> {
    pub fn new(ctx: &'a FieldCtx, subspaces: Vec<Subspace>) -> Result<Self> {
        let size = ctx.size() as usize;
        let mut member = Vec::with_capacity(subspaces.len());
        let mut inverses = Vec::with_capacity(subspaces.len());
        let mut qpolys = Vec::with_capacity(subspaces.len());
        for s in &subspaces {
            let elems = s.elements(ctx);
            member.push(bitset(size, elems.iter().copied()));
            inverses.push(bitset(size, elems.iter().filter(|e| !e.is_zero()).map(|&e| ctx.inv(e).expect("nonzero"))));
            qpolys.push(linspace::qpoly_from_subspace(ctx, s)?);
        }
        Ok(CensusTables { ctx, subspaces, qpolys, member, inverses })
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn qpoly(&self, i: usize) -> &QPoly {
        &self.qpolys[i]
    }

    /// `|S_i^{-1} ∩ S_j|`.
    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.inverses[i].iter().zip(&self.member[j]).map(|(a, b)| (a & b).count_ones() as u64).sum()
    }

    pub fn witnesses(&self, i: usize, j: usize) -> Vec<FieldElem> {
        let mut out = Vec::new();
        for (w, (a, b)) in self.inverses[i].iter().zip(&self.member[j]).enumerate() {
            let mut x = a & b;
            while x != 0 {
                let t = x.trailing_zeros() as u64;
                out.push(self.ctx.elem(w as u64 * 64 + t).expect("in range"));
                x &= x - 1;
            }
        }
        out
    }

    /// Whether the certificate polynomials of `(S_i, S_j)` contain all
    /// witnesses and respect their degree bounds.
    pub fn certificate_holds(&self, i: usize, j: usize) -> Result<bool> {
        let (a, b) = (&self.qpolys[i], &self.qpolys[j]);
        let c = certify::certificate_c(self.ctx, a, b)?;
        let d = if a.dim() > 1 { Some(certify::certificate_d(self.ctx, a, b)?) } else { None };
        let q = self.ctx.q() as usize;
        let dim = a.dim() as u32;
        if c.degree().is_some_and(|g| g > 2 * q.pow(dim - 1) - 2) {
            return Ok(false);
        }
        if let Some(dp) = &d {
            if dp.degree().is_some_and(|g| g > q.pow(dim) - q.pow(dim - 1) + q.pow(dim - 2) - 1) {
                return Ok(false);
            }
        }
        Ok(self.witnesses(i, j).into_iter().all(|w| {
            c.eval(self.ctx, w).is_zero() && d.as_ref().is_none_or(|dp| dp.eval(self.ctx, w).is_zero())
        }))
    }

    /// Tally of counts over `(i, j)` for all `j`.
    pub fn tally_row(&self, i: usize) -> BTreeMap<u64, u64> {
        let mut t = BTreeMap::new();
        for j in 0..self.len() {
            *t.entry(self.count(i, j)).or_insert(0) += 1;
        }
        t
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub q: u64,
    pub d: usize,
    /// Ordered pairs per intersection size, subfield pairs included.
    pub counts: BTreeMap<u64, u64>,
    /// Pairs with `A^{-1} ⊆ B`.
    pub subfield_pairs: u64,
}

impl Census {
    pub fn from_tally(q: u64, d: usize, counts: BTreeMap<u64, u64>) -> Census {
        let full = q.pow(d as u32) - 1;
        let subfield_pairs = counts.get(&full).copied().unwrap_or(0);
        Census { q, d, counts, subfield_pairs }
    }

    pub fn total_pairs(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Largest count among pairs with `A^{-1} ⊄ B`.
    pub fn max_non_subfield(&self) -> Option<u64> {
        let full = self.q.pow(self.d as u32) - 1;
        self.counts.keys().copied().filter(|&c| c != full).max()
    }
}

pub fn merge_tally(into: &mut BTreeMap<u64, u64>, other: &BTreeMap<u64, u64>) {
    for (&k, &v) in other {
        *into.entry(k).or_insert(0) += v;
    }
}

/// `|A^{-1} ∩ B|` over all ordered pairs of `d`-subspaces of `F_{q^e}`.
pub fn intersection_census(ctx: &FieldCtx, d: usize, e: usize) -> Result<Census> {
    let tables = CensusTables::new(ctx, enumerate_subspaces(ctx, d, e)?)?;
    let mut counts = BTreeMap::new();
    for i in 0..tables.len() {
        merge_tally(&mut counts, &tables.tally_row(i));
    }
    Ok(Census::from_tally(ctx.q(), d, counts))
}

pub fn weil_threshold(q: u64) -> u64 {
    q + 1 + construct::isqrt(4 * q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilReport {
    pub q: u64,
    pub threshold: u64,
    pub allowed: Vec<u64>,
    /// Ratios above the threshold, with their pair counts.
    pub above: BTreeMap<u64, u64>,
    pub offenders: Vec<u64>,
    /// The statement has no content at this `q`.
    pub skipped: bool,
    pub pass: bool,
}

/// Ratios `|A^{-1} ∩ B|/(q-1)` above `q + 1 + floor(2 sqrt q)` must be
/// `2q + 2` or `2q` for odd `q` and `2q + 1` for even `q`.
pub fn weil_gap_check(census: &Census) -> WeilReport {
    let q = census.q;
    let threshold = weil_threshold(q);
    let allowed = if q % 2 == 1 { vec![2 * q, 2 * q + 2] } else { vec![2 * q + 1] };
    let full = q.pow(census.d as u32) - 1;
    let mut above = BTreeMap::new();
    for (&c, &n) in &census.counts {
        if c == full || c % (q - 1) != 0 {
            continue;
        }
        if c / (q - 1) > threshold {
            above.insert(c / (q - 1), n);
        }
    }
    let skipped = q == 2;
    let offenders: Vec<u64> = above.keys().copied().filter(|r| !allowed.contains(r)).collect();
    let non_integral = census.counts.keys().any(|&c| c % (q - 1) != 0);
    WeilReport {
        q,
        threshold,
        allowed,
        above,
        pass: skipped || (offenders.is_empty() && !non_integral),
        offenders,
        skipped,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    pub a: FieldElem,
    pub b: FieldElem,
    /// Parameter pairs `(a, b)` in this class.
    pub members: usize,
    pub self_paired: usize,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub q: u64,
    pub target: u64,
    pub case: CaseTag,
    pub parameter_pairs: u64,
    /// `parameter_pairs / (q + 1)`.
    pub classes: u64,
    /// Classes found by grouping the special pairs under equivalence.
    pub classes_by_action: Vec<OrbitClass>,
    /// The class count is asserted by the classification only in this range.
    pub theorem_range: bool,
}

/// Equivalence classes of special-form pairs with `|A^{-1} ∩ B| = target`.
/// The ambient field must be `F_{q^4}`.
pub fn orbit_census(ctx: &FieldCtx, target: u64) -> Result<OrbitCensus> {
    let q = ctx.q();
    if ctx.fq_dim() != 4 {
        return Err(Error::Precondition("orbit census needs the ambient field F_{q^4}".into()));
    }
    let (case, theorem_range) = if q % 2 == 1 && target == 2 * q * q - 2 {
        (CaseTag::External, true)
    } else if q % 2 == 1 && target == 2 * q * q - 2 * q {
        (CaseTag::Secant, q > 5)
    } else if q.is_multiple_of(2) && target == 2 * q * q - q - 1 {
        (CaseTag::Tangent, q > 4)
    } else {
        return Err(Error::Precondition(format!("no extremal case has count {target} at q = {q}")));
    };
    let params: Vec<FieldElem> = ctx.subfield_elements(q * q)?.into_iter().filter(|e| !e.is_zero()).collect();
    let mut pairs = Vec::new();
    for &a in &params {
        for &b in &params {
            if construct::classify_special_case(ctx, a, b)? == (case, Prediction::Exact(target)) {
                pairs.push((a, b));
            }
        }
    }
    let parameter_pairs = pairs.len() as u64;
    let mut spaces = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        let (_, sa, sb) = construct::make_special_pair(ctx, 3, a, b)?;
        spaces.push((sa, sb));
    }
    let mut class_of: Vec<Option<usize>> = vec![None; pairs.len()];
    let mut classes: Vec<OrbitClass> = Vec::new();
    for i in 0..pairs.len() {
        if class_of[i].is_some() {
            continue;
        }
        let id = classes.len();
        class_of[i] = Some(id);
        let (sa, sb) = &spaces[i];
        let mut members = 1;
        for j in i + 1..pairs.len() {
            if class_of[j].is_none() && equivalent(ctx, sa, sb, &spaces[j].0, &spaces[j].1).is_some() {
                class_of[j] = Some(id);
                members += 1;
            }
        }
        let self_paired = scalar_reps(ctx)
            .filter(|&g| sa.scale(ctx, ctx.inv(g).expect("nonzero")) == sb.scale(ctx, g))
            .count();
        let count = linspace::inverse_intersection_bruteforce(ctx, sa, sb)?.count as u64;
        classes.push(OrbitClass { a: pairs[i].0, b: pairs[i].1, members, self_paired, count });
    }
    Ok(OrbitCensus {
        q,
        target,
        case,
        parameter_pairs,
        classes: parameter_pairs / (q + 1),
        classes_by_action: classes,
        theorem_range,
    })
}

/// Partition of explicit pairs into equivalence classes; returns class sizes.
pub fn orbit_partition(ctx: &FieldCtx, pairs: &[(Subspace, Subspace)]) -> Vec<usize> {
    let set: HashSet<&(Subspace, Subspace)> = pairs.iter().collect();
    let mut seen: HashSet<(Subspace, Subspace)> = HashSet::new();
    let mut sizes = Vec::new();
    for p in pairs {
        if seen.contains(p) {
            continue;
        }
        let mut size = 0;
        for g in scalar_reps(ctx) {
            let img = act(ctx, g, &p.0, &p.1).expect("nonzero");
            if set.contains(&img) && seen.insert(img) {
                size += 1;
            }
        }
        sizes.push(size);
    }
    sizes
}

/// The `c` with `A(x) = x^{q^3} + c x^{q^2} + c^{q+1} x^q + c^{q^2+q+1} x`,
/// `c^{2(q+1)} = 1`, `c^2 != 1`, if the subspace has that form.
pub fn self_paired_parameter(ctx: &FieldCtx, s: &Subspace) -> Result<Option<FieldElem>> {
    if s.dim() != 3 {
        return Ok(None);
    }
    let a = linspace::qpoly_from_subspace(ctx, s)?;
    let q = ctx.q();
    let c = a.qcoeff(2);
    let ok = a.qcoeff(1) == ctx.pow(c, q + 1)
        && a.qcoeff(0) == ctx.pow(c, q * q + q + 1)
        && ctx.pow(c, 2 * (q + 1)) == ctx.one()
        && ctx.mul(c, c) != ctx.one();
    Ok(ok.then_some(c))
}

/// Degree over `F_p` of the subfield generated by `elems`.
pub fn generated_subfield_degree(ctx: &FieldCtx, elems: &[FieldElem]) -> usize {
    let m = ctx.degree();
    let divisors: Vec<usize> = (1..=m).filter(|j| m.is_multiple_of(*j)).collect();
    let mut deg = 1;
    for &e in elems {
        let j = divisors
            .iter()
            .copied()
            .find(|&j| ctx.pow(e, ctx.p().pow(j as u32)) == e)
            .expect("m itself works");
        deg = lcm(deg, j);
    }
    deg
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldPairCount {
    pub q: u64,
    pub total_pairs: u64,
    pub self_paired: u64,
    /// Intersection sizes over the distinct pairs.
    pub counts: BTreeMap<u64, u64>,
    /// `2q(q^2+q+1)` for odd `q`, `q(q^2+q+1)` for even `q`.
    pub expected_pairs: u64,
    /// `2q` for odd `q`, `q` for even `q`.
    pub expected_self_paired: u64,
}

/// Distinct corollary pairs `(gamma alpha^{-1} T, gamma^{-1} alpha^{-1} T)`
/// inside `F_{q^4}`, over all admissible `alpha` and all `gamma`.
pub fn field_pair_count(ctx: &FieldCtx) -> Result<FieldPairCount> {
    let q = ctx.q();
    if ctx.fq_dim() != 4 {
        return Err(Error::Precondition("pair count needs the ambient field F_{q^4}".into()));
    }
    let t = linspace::linear_kernel(ctx, &[ctx.one(); 4]);
    let mut pairs: HashSet<(Subspace, Subspace)> = HashSet::new();
    for alpha in ctx.elements().filter(|e| !e.is_zero()) {
        let sq = ctx.mul(alpha, alpha);
        if ctx.pow(sq, q * q) != sq || ctx.in_fq(sq) {
            continue;
        }
        let ainv = ctx.inv(alpha)?;
        for gamma in ctx.elements().filter(|e| !e.is_zero()) {
            let gi = ctx.inv(gamma)?;
            pairs.insert((t.scale(ctx, ctx.mul(gamma, ainv)), t.scale(ctx, ctx.mul(gi, ainv))));
        }
    }
    let mut counts = BTreeMap::new();
    let mut self_paired = 0;
    for (a, b) in &pairs {
        self_paired += (a == b) as u64;
        *counts.entry(linspace::inverse_intersection_bruteforce(ctx, a, b)?.count as u64).or_insert(0) += 1;
    }
    let mult = if q % 2 == 1 { 2 } else { 1 };
    Ok(FieldPairCount {
        q,
        total_pairs: pairs.len() as u64,
        self_paired,
        counts,
        expected_pairs: mult * q * (q * q + q + 1),
        expected_self_paired: mult * q,
    })
}
