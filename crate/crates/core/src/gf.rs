//! Explicit finite fields `F_{p^M}` in a fixed polynomial basis.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{M-1} p^{M-1}`
//! built from its polynomial-basis digits, so the integer order is also the
//! serialization order. Multiplication, inversion and Frobenius powers go
//! through discrete log tables; addition uses Zech logarithms. The tables are
//! built once from plain polynomial arithmetic modulo the canonical modulus.
//!
//! Every context carries a working subfield `F_q`, `q = p^k`, and an
//! `F_q`-coordinate model of the ambient field (basis `1, x, ..., x^{m-1}`
//! with `m = M/k`), which is what the subspace machinery works in.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient field for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

const NO_LOG: u32 = u32::MAX;

/// An element of the ambient field of some [`FieldCtx`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Position of the element in serialization order.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The ambient field `F_{p^M}` together with its working subfield `F_q`.
pub struct FieldCtx {
    p: u32,
    degree: usize,
    k: usize,
    q: u64,
    size: u64,
    modulus: Vec<u32>,
    generator: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    minus_one: FieldElem,
    /// `q^j mod (size - 1)` for `0 <= j < m`.
    frob_exp: Vec<u64>,
    coord: CoordModel,
}

/// Change of basis between polynomial-basis digits and `F_q`-coordinates.
struct CoordModel {
    /// Inverse of the matrix whose column `i*k + j` holds the digits of `omega^j x^i`.
    inverse: Vec<Vec<u32>>,
    omega_pows: Vec<FieldElem>,
    theta_pows: Vec<FieldElem>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("spec", &self.spec_string())
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldCtx {
    /// Builds `F_{p^M}` with working subfield `F_{p^k}`.
    pub fn new(p: u64, degree: usize, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 || k == 0 || !degree.is_multiple_of(k) {
            return Err(Error::DegreeNotDivisible { k, m: degree });
        }
        let size = checked_pow(p, degree)
            .filter(|&n| n <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p, m: degree })?;
        let p32 = p as u32;
        let modulus = canonical_modulus(p32, degree);
        let digits_of = |idx: u64| -> Vec<u32> {
            let mut v = Vec::with_capacity(degree);
            let mut r = idx;
            for _ in 0..degree {
                v.push((r % p) as u32);
                r /= p;
            }
            v
        };
        let index_of = |d: &[u32]| -> u32 {
            d.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64) as u32
        };

        let order = size - 1;
        let prime_factors = factor_distinct(order);
        let one = digits_of(1);
        let generator_digits = (1..size)
            .map(digits_of)
            .find(|g| {
                order == 1
                    || prime_factors
                        .iter()
                        .all(|&r| fp_poly::pow_mod(g, order / r, &modulus, p32) != one)
            })
            .expect("multiplicative group is cyclic");

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = one.clone();
        for (i, slot) in exp.iter_mut().enumerate() {
            let idx = index_of(&cur);
            *slot = idx;
            log[idx as usize] = i as u32;
            cur = fp_poly::mul_mod(&cur, &generator_digits, &modulus, p32);
        }
        debug_assert_eq!(cur, one);

        // zech[i] = log(1 + g^i); adding one only touches the constant digit.
        let zech = exp
            .iter()
            .map(|&idx| {
                let idx = idx as u64;
                let sum = if idx % p == p - 1 { idx - (p - 1) } else { idx + 1 };
                log[sum as usize]
            })
            .collect();

        let minus_one = if p == 2 {
            FieldElem::ONE
        } else {
            FieldElem(exp[(order / 2) as usize])
        };
        let q = p.pow(k as u32);
        let m = degree / k;
        let frob_exp = (0..m)
            .map(|j| if order == 0 { 0 } else { mod_pow(q, j as u64, order) })
            .collect();

        let mut ctx = FieldCtx {
            p: p32,
            degree,
            k,
            q,
            size,
            modulus,
            generator: FieldElem(index_of(&generator_digits)),
            exp,
            log,
            zech,
            minus_one,
            frob_exp,
            coord: CoordModel { inverse: Vec::new(), omega_pows: Vec::new(), theta_pows: Vec::new() },
        };
        ctx.coord = ctx.build_coord_model();
        Ok(ctx)
    }

    /// Parses a field spec `"p^k:M"`, e.g. `"5^1:4"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("field spec {spec:?} is not of the form p^k:M"));
        let (pk, m) = spec.trim().split_once(':').ok_or_else(bad)?;
        let (p, k) = pk.split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        Self::new(p, m, k)
    }

    pub fn spec_string(&self) -> String {
        format!("{}^{}:{}", self.p, self.k, self.degree)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    /// Ambient extension degree `M` over `F_p`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Dimension `m = M/k` of the ambient field over `F_q`.
    pub fn fq_dim(&self) -> usize {
        self.degree / self.k
    }

    /// Number of elements `p^M`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    pub fn minus_one(&self) -> FieldElem {
        self.minus_one
    }

    pub fn elem(&self, index: u64) -> Result<FieldElem> {
        if index < self.size {
            Ok(FieldElem(index as u32))
        } else {
            Err(Error::ForeignElement(format!("index {index} >= {}", self.size)))
        }
    }

    pub fn check(&self, e: FieldElem) -> Result<()> {
        self.elem(e.0 as u64).map(|_| ())
    }

    /// The prime-field element `c mod p`.
    pub fn from_int(&self, c: i64) -> FieldElem {
        FieldElem(c.rem_euclid(self.p as i64) as u32)
    }

    /// All elements in serialization order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size as u32).map(FieldElem)
    }

    /// `g^i` for the fixed primitive element `g`.
    pub fn generator_pow(&self, i: u64) -> FieldElem {
        if self.size == 2 {
            return FieldElem::ONE;
        }
        FieldElem(self.exp[(i % (self.size - 1)) as usize])
    }

    /// Discrete log to the base [`generator`](Self::generator); `None` for zero.
    pub fn log(&self, e: FieldElem) -> Option<u64> {
        match self.log[e.index()] {
            NO_LOG => None,
            l => Some(l as u64),
        }
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElem> {
        if digits.len() > self.degree {
            return Err(Error::ForeignElement(format!(
                "{} digits for a degree-{} field",
                digits.len(),
                self.degree
            )));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= self.p) {
            return Err(Error::ForeignElement(format!("digit {d} out of range mod {}", self.p)));
        }
        let idx = digits.iter().rev().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64);
        Ok(FieldElem(idx as u32))
    }

    /// Polynomial-basis digits, constant term first, always `M` of them.
    pub fn digits(&self, e: FieldElem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree);
        let mut r = e.0;
        for _ in 0..self.degree {
            out.push(r % self.p);
            r /= self.p;
        }
        out
    }

    /// Element literal: comma-separated digits, constant term first.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let digits = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad element literal {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        self.from_digits(&digits)
    }

    pub fn format_elem(&self, e: FieldElem) -> String {
        self.digits(e).iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let order = self.exp.len() as u32;
        let la = self.log[a.index()];
        let lb = self.log[b.index()];
        let diff = if lb >= la { lb - la } else { lb + order - la };
        match self.zech[diff as usize] {
            NO_LOG => FieldElem::ZERO,
            z => {
                let s = la as u64 + z as u64;
                FieldElem(self.exp[(s % order as u64) as usize])
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            a
        } else {
            self.mul(a, self.minus_one)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let order = self.exp.len();
        let s = self.log[a.index()] as usize + self.log[b.index()] as usize;
        FieldElem(self.exp[if s >= order { s - order } else { s }])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        let order = self.exp.len();
        let l = self.log[a.index()] as usize;
        Ok(FieldElem(self.exp[if l == 0 { 0 } else { order - l }]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let order = self.exp.len() as u128;
        let l = (self.log[a.index()] as u128 * (e as u128 % order)) % order;
        FieldElem(self.exp[l as usize])
    }

    /// `a^(q^j)`.
    #[inline]
    pub fn frobenius(&self, a: FieldElem, j: usize) -> FieldElem {
        if a.0 == 0 {
            return a;
        }
        let order = self.exp.len() as u64;
        let e = self.frob_exp[j % self.frob_exp.len()];
        let l = (self.log[a.index()] as u64 * e) % order;
        FieldElem(self.exp[l as usize])
    }

    /// `a^p`, computed in the polynomial basis from the `p`-th powers of the
    /// basis monomials. Independent of the log tables.
    pub fn frobenius_p_by_basis(&self, a: FieldElem) -> FieldElem {
        let p = self.p;
        let mut unit = vec![0u32; self.degree];
        unit[0] = 1;
        let x_to_p = if self.degree == 1 {
            unit.clone()
        } else {
            let mut x = vec![0u32; self.degree];
            x[1] = 1;
            fp_poly::pow_mod(&x, p as u64, &self.modulus, p)
        };
        // images of x^i under the p-power map
        let mut acc = vec![0u32; self.degree];
        let mut img = unit;
        for &c in &self.digits(a) {
            if c != 0 {
                for (s, &v) in acc.iter_mut().zip(&img) {
                    *s = (*s + c * v) % p;
                }
            }
            img = fp_poly::mul_mod(&img, &x_to_p, &self.modulus, p);
        }
        self.from_digits(&acc).expect("digits in range")
    }

    /// Whether `e` lies in the subfield of order `r`.
    pub fn in_subfield(&self, e: FieldElem, r: u64) -> Result<bool> {
        self.subfield_degree(r)?;
        Ok(self.pow(e, r) == e)
    }

    /// Degree `j` over `F_p` of the subfield of order `r = p^j`.
    pub fn subfield_degree(&self, r: u64) -> Result<usize> {
        let mut j = 0;
        let mut acc = 1u64;
        while acc < r {
            acc = acc.saturating_mul(self.p as u64);
            j += 1;
        }
        if acc != r || j == 0 || !self.degree.is_multiple_of(j) {
            return Err(Error::NotASubfield(r));
        }
        Ok(j)
    }

    #[inline]
    pub fn in_fq(&self, e: FieldElem) -> bool {
        self.frobenius(e, 1) == e
    }

    /// Elements of the subfield of order `r`, in serialization order.
    pub fn subfield_elements(&self, r: u64) -> Result<Vec<FieldElem>> {
        let j = self.subfield_degree(r)?;
        let step = (self.size - 1) / (r - 1);
        let mut v: Vec<FieldElem> = std::iter::once(FieldElem::ZERO)
            .chain((0..r - 1).map(|i| self.generator_pow(i * step)))
            .collect();
        v.sort();
        debug_assert_eq!(v.len() as u64, (self.p as u64).pow(j as u32));
        Ok(v)
    }

    /// Elements of `F_q`, in serialization order.
    pub fn fq_elements(&self) -> Vec<FieldElem> {
        self.subfield_elements(self.q).expect("q is a subfield order")
    }

    /// Coordinates of `e` with respect to the `F_q`-basis `1, x, ..., x^{m-1}`.
    pub fn coords(&self, e: FieldElem) -> Vec<FieldElem> {
        let digits = self.digits(e);
        if self.k == 1 {
            return digits.into_iter().map(FieldElem).collect();
        }
        let p = self.p as u64;
        let m = self.fq_dim();
        let v: Vec<u32> = self
            .coord
            .inverse
            .iter()
            .map(|row| (row.iter().zip(&digits).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32)
            .collect();
        (0..m)
            .map(|i| {
                (0..self.k).fold(FieldElem::ZERO, |acc, j| {
                    let c = FieldElem(v[i * self.k + j]);
                    self.add(acc, self.mul(c, self.coord.omega_pows[j]))
                })
            })
            .collect()
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn from_coords(&self, c: &[FieldElem]) -> FieldElem {
        c.iter()
            .zip(&self.coord.theta_pows)
            .fold(FieldElem::ZERO, |acc, (&ci, &t)| self.add(acc, self.mul(ci, t)))
    }

    /// The `F_q`-basis `1, x, ..., x^{m-1}` of the ambient field.
    pub fn fq_basis(&self) -> &[FieldElem] {
        &self.coord.theta_pows
    }

    fn build_coord_model(&self) -> CoordModel {
        let m = self.fq_dim();
        let theta = if self.degree == 1 { FieldElem::ONE } else { FieldElem(self.p) };
        let theta_pows: Vec<FieldElem> = (0..m as u64).map(|i| self.pow(theta, i)).collect();
        let omega = self.generator_pow((self.size - 1) / (self.q - 1));
        let omega_pows: Vec<FieldElem> = (0..self.k as u64).map(|j| self.pow(omega, j)).collect();
        if self.k == 1 {
            return CoordModel { inverse: Vec::new(), omega_pows, theta_pows };
        }
        let n = self.degree;
        let mut mat = vec![vec![0u32; n]; n];
        for i in 0..m {
            for j in 0..self.k {
                let col = self.digits(self.mul(omega_pows[j], theta_pows[i]));
                for (r, &d) in col.iter().enumerate() {
                    mat[r][i * self.k + j] = d;
                }
            }
        }
        let inverse = fp_matrix_inverse(mat, self.p).expect("omega^j x^i is an F_p-basis");
        CoordModel { inverse, omega_pows, theta_pows }
    }
}

fn fp_matrix_inverse(mut a: Vec<Vec<u32>>, p: u32) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let p64 = p as u64;
    let mut inv: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = mod_pow(a[col][col] as u64, p64 - 2, p64) as u32;
        for j in 0..n {
            a[col][j] = ((a[col][j] as u64 * s as u64) % p64) as u32;
            inv[col][j] = ((inv[col][j] as u64 * s as u64) % p64) as u32;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col] as u64;
                for j in 0..n {
                    a[r][j] = ((a[r][j] as u64 + (p64 - f) * a[col][j] as u64) % p64) as u32;
                    inv[r][j] = ((inv[r][j] as u64 + (p64 - f) * inv[col][j] as u64) % p64) as u32;
                }
            }
        }
    }
    Some(inv)
}

/// Lexicographically smallest monic irreducible of the given degree with
/// nonzero constant term, comparing coefficient sequences constant term first.
pub fn canonical_modulus(p: u32, degree: usize) -> Vec<u32> {
    let mut tail = vec![0u32; degree];
    loop {
        let mut f = tail.clone();
        f.push(1);
        if f[0] != 0 && fp_poly::is_irreducible(&f, p) {
            return f;
        }
        // advance in constant-term-first lexicographic order: last slot fastest
        let mut i = degree;
        loop {
            i -= 1;
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn factor_distinct(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mut b128 = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m as u128;
        }
        b128 = b128 * b128 % m as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Dense polynomials over `F_p` with `u32` coefficients, constant term first.
/// Only used to construct fields.
pub(crate) mod fp_poly {
    fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let p64 = p as u64;
        let mut r = trim(a.to_vec());
        let df = f.len() - 1;
        let lead_inv = super::mod_pow(f[df] as u64, p64 - 2, p64);
        while r.len() > df {
            let top = r.len() - 1;
            let c = (r[top] as u64 * lead_inv) % p64;
            let shift = top - df;
            for (i, &fi) in f.iter().enumerate() {
                r[shift + i] = ((r[shift + i] as u64 + (p64 - c) * fi as u64) % p64) as u32;
            }
            r = trim(r);
        }
        r
    }

    /// `a * b mod f`, padded to `deg f` digits.
    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let p64 = p as u64;
        let mut prod = vec![0u32; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p64) as u32;
            }
        }
        let mut r = rem(&prod, f, p);
        r.resize(f.len() - 1, 0);
        r
    }

    pub fn pow_mod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![0u32; f.len() - 1];
        result[0] = 1;
        let mut base = a.to_vec();
        base.resize(f.len() - 1, 0);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        result
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or test: `gcd(f, x^{p^i} - x) = 1` for `1 <= i <= deg f / 2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let mut x = vec![0u32; n];
        x[1] = 1;
        let mut h = x.clone();
        for _ in 0..n / 2 {
            h = pow_mod(&h, p as u64, f, p);
            let mut diff = h.clone();
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = FieldCtx::new(2, 1, 1).unwrap();
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.size(), 2);
        assert_eq!(f.inv(f.one()).unwrap(), f.one());
        assert_eq!(f.add(f.one(), f.one()), f.zero());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(4, 2, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldCtx::new(3, 4, 3), Err(Error::DegreeNotDivisible { .. })));
        assert!(matches!(FieldCtx::new(3, 40, 1), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn f625_modulus_is_irreducible_by_gcd_test() {
        let f = FieldCtx::new(5, 4, 1).unwrap();
        assert_eq!(f.q(), 5);
        assert!(fp_poly::is_irreducible(f.modulus(), 5));
        // smallest candidates are reducible
        assert!(!fp_poly::is_irreducible(&[1, 0, 0, 0, 1], 5));
    }

    #[test]
    fn tower_with_f9_working_subfield() {
        let f = FieldCtx::new(3, 4, 2).unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f.fq_dim(), 2);
        assert_eq!(f.fq_elements().len(), 9);
    }

    #[test]
    fn field_axioms_small() {
        let f = FieldCtx::new(3, 2, 1).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in f.elements() {
                // digitwise addition
                let da = f.digits(a);
                let db = f.digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add(a, b), f.from_digits(&sum).unwrap());
            }
        }
        assert_eq!(f.inv(f.zero()), Err(Error::InverseOfZero));
    }

    #[test]
    fn multiplication_matches_polynomial_arithmetic() {
        let f = FieldCtx::new(5, 3, 1).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                let expected = fp_poly::mul_mod(&f.digits(a), &f.digits(b), f.modulus(), 5);
                assert_eq!(f.digits(f.mul(a, b)), expected);
            }
        }
    }

    #[test]
    fn frobenius_composition_and_basis_route() {
        let f = FieldCtx::new(3, 4, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 0), a);
            assert_eq!(f.frobenius(f.frobenius(a, 1), 1), f.frobenius(a, 2));
            assert_eq!(f.frobenius(a, 1), f.pow(a, 9));
            assert_eq!(f.frobenius(a, f.fq_dim()), a);
            let by_basis = f.frobenius_p_by_basis(f.frobenius_p_by_basis(a));
            assert_eq!(by_basis, f.frobenius(a, 1));
        }
    }

    #[test]
    fn subfield_counts() {
        let f = FieldCtx::new(5, 4, 1).unwrap();
        assert_eq!(f.elements().filter(|&e| f.in_subfield(e, 25).unwrap()).count(), 25);
        assert_eq!(f.elements().filter(|&e| f.in_subfield(e, 5).unwrap()).count(), 5);
        assert!(f.in_subfield(f.zero(), 625).unwrap());
        assert!(matches!(f.in_subfield(f.one(), 125), Err(Error::NotASubfield(125))));
        // a^{q+1} = -1 forces a into F_{q^2}
        let roots: Vec<_> = f.elements().filter(|&a| f.pow(a, 6) == f.minus_one()).collect();
        assert_eq!(roots.len(), 6);
        assert!(roots.iter().all(|&a| f.in_subfield(a, 25).unwrap()));
    }

    #[test]
    fn coordinates_round_trip_and_are_fq_linear() {
        for (p, m, k) in [(2, 4, 2), (3, 4, 2), (2, 6, 3), (5, 2, 1)] {
            let f = FieldCtx::new(p, m, k).unwrap();
            let fq = f.fq_elements();
            for e in f.elements() {
                let c = f.coords(e);
                assert_eq!(c.len(), f.fq_dim());
                assert!(c.iter().all(|&x| f.in_fq(x)));
                assert_eq!(f.from_coords(&c), e);
            }
            let c = fq[fq.len() - 1];
            let e = f.generator();
            let scaled: Vec<_> = f.coords(e).iter().map(|&x| f.mul(c, x)).collect();
            assert_eq!(f.coords(f.mul(c, e)), scaled);
        }
    }

    #[test]
    fn literals() {
        let f = FieldCtx::parse("5^1:4").unwrap();
        let e = f.parse_elem("1,2,0,3").unwrap();
        assert_eq!(f.format_elem(e), "1,2,0,3");
        assert_eq!(f.format_elem(f.parse_elem("4").unwrap()), "4,0,0,0");
        assert!(f.parse_elem("5").is_err());
        assert!(f.parse_elem("1,1,1,1,1").is_err());
        assert!(FieldCtx::parse("5:4").is_err());
        assert_eq!(f.spec_string(), "5^1:4");
    }
}
