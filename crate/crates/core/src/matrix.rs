//! Dense square matrices over a field context: products, inverses,
//! characteristic polynomials (Hessenberg recurrence) and eigenvalue
//! extraction in the smallest splitting extension.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::poly::{self, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    ctx: FieldCtx,
    dim: usize,
    /// Row-major entries, length dim * dim.
    entries: Vec<FieldElement>,
}

impl SquareMatrix {
    pub fn new(ctx: FieldCtx, dim: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("dim must be >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let width = ctx.degree();
        if entries.iter().any(|e| e.coeffs().len() != width) {
            return Err(Error::FieldMismatch);
        }
        Ok(SquareMatrix { ctx, dim, entries })
    }

    pub fn zeros(ctx: &FieldCtx, dim: usize) -> Self {
        SquareMatrix {
            ctx: ctx.clone(),
            dim,
            entries: vec![ctx.zero(); dim * dim],
        }
    }

    pub fn identity(ctx: &FieldCtx, dim: usize) -> Self {
        let mut m = Self::zeros(ctx, dim);
        for i in 0..dim {
            m.set(i, i, ctx.one());
        }
        m
    }

    /// Build from signed integer rows, reducing mod ell (prime fields).
    pub fn from_i64_rows(ctx: &FieldCtx, rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &v in row {
                entries.push(ctx.from_i64(v));
            }
        }
        Self::new(ctx.clone(), dim, entries)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        let one = self.ctx.one();
        let zero = self.ctx.zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let want = if i == j { &one } else { &zero };
                if self.get(i, j) != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "field mismatch");
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let ctx = &self.ctx;
        if ctx.degree() == 1 {
            // fast path on raw residues
            let ell = ctx.ell() as u128;
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut acc: u128 = 0;
                    for k in 0..n {
                        let a = self.entries[i * n + k].coeffs()[0] as u128;
                        let b = other.entries[k * n + j].coeffs()[0] as u128;
                        acc += a * b;
                    }
                    out.push(ctx.from_u64((acc % ell) as u64));
                }
            }
            return SquareMatrix {
                ctx: ctx.clone(),
                dim: n,
                entries: out,
            };
        }
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ctx.zero();
                for k in 0..n {
                    acc = ctx.add(&acc, &ctx.mul(self.get(i, k), other.get(k, j)));
                }
                out.push(acc);
            }
        }
        SquareMatrix {
            ctx: ctx.clone(),
            dim: n,
            entries: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx);
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ctx.add(a, b))
            .collect();
        SquareMatrix {
            ctx: self.ctx.clone(),
            dim: self.dim,
            entries,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx);
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ctx.sub(a, b))
            .collect();
        SquareMatrix {
            ctx: self.ctx.clone(),
            dim: self.dim,
            entries,
        }
    }

    pub fn scalar_mul(&self, c: &FieldElement) -> Self {
        let entries = self.entries.iter().map(|a| self.ctx.mul(a, c)).collect();
        SquareMatrix {
            ctx: self.ctx.clone(),
            dim: self.dim,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(&self.ctx, n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u128) -> Self {
        let mut acc = Self::identity(&self.ctx, self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> FieldElement {
        let mut acc = self.ctx.zero();
        for i in 0..self.dim {
            acc = self.ctx.add(&acc, self.get(i, i));
        }
        acc
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.dim);
        let ctx = &self.ctx;
        (0..self.dim)
            .map(|i| {
                let mut acc = ctx.zero();
                for j in 0..self.dim {
                    acc = ctx.add(&acc, &ctx.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> FieldElement {
        let ctx = &self.ctx;
        let n = self.dim;
        let mut m: Vec<FieldElement> = self.entries.clone();
        let mut det = ctx.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !ctx.is_zero(&m[r * n + col]));
            let Some(p) = pivot else {
                return ctx.zero();
            };
            if p != col {
                for j in 0..n {
                    m.swap(p * n + j, col * n + j);
                }
                det = ctx.neg(&det);
            }
            let piv = m[col * n + col].clone();
            det = ctx.mul(&det, &piv);
            let piv_inv = ctx.inv(&piv).expect("pivot nonzero");
            for r in col + 1..n {
                if ctx.is_zero(&m[r * n + col]) {
                    continue;
                }
                let factor = ctx.mul(&m[r * n + col], &piv_inv);
                for j in col..n {
                    let sub = ctx.mul(&factor, &m[col * n + j]);
                    m[r * n + j] = ctx.sub(&m[r * n + j], &sub);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        let ctx = &self.ctx;
        let n = self.dim;
        let mut m: Vec<FieldElement> = self.entries.clone();
        let mut inv = Self::identity(ctx, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !ctx.is_zero(&m[r * n + col]));
            let Some(p) = pivot else {
                return Err(Error::NotInvertible);
            };
            if p != col {
                for j in 0..n {
                    m.swap(p * n + j, col * n + j);
                    inv.entries.swap(p * n + j, col * n + j);
                }
            }
            let piv_inv = ctx.inv(&m[col * n + col]).expect("pivot nonzero");
            for j in 0..n {
                m[col * n + j] = ctx.mul(&m[col * n + j], &piv_inv);
                inv.entries[col * n + j] = ctx.mul(&inv.entries[col * n + j], &piv_inv);
            }
            for r in 0..n {
                if r == col || ctx.is_zero(&m[r * n + col]) {
                    continue;
                }
                let factor = m[r * n + col].clone();
                for j in 0..n {
                    let s = ctx.mul(&factor, &m[col * n + j]);
                    m[r * n + j] = ctx.sub(&m[r * n + j], &s);
                    let s = ctx.mul(&factor, &inv.entries[col * n + j]);
                    inv.entries[r * n + j] = ctx.sub(&inv.entries[r * n + j], &s);
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        !self.ctx.is_zero(&self.det())
    }

    /// det(XI - m), monic of degree dim, via Hessenberg reduction and the
    /// leading-principal-minor recurrence. Works over any field context.
    pub fn char_poly(&self) -> Poly {
        let ctx = &self.ctx;
        let n = self.dim;
        // reduce a copy to upper Hessenberg form by similarity
        let mut h: Vec<FieldElement> = self.entries.clone();
        let idx = |i: usize, j: usize| i * n + j;
        for j in 0..n.saturating_sub(2) {
            let pivot = (j + 1..n).find(|&r| !ctx.is_zero(&h[idx(r, j)]));
            let Some(p) = pivot else { continue };
            if p != j + 1 {
                for c in 0..n {
                    h.swap(idx(p, c), idx(j + 1, c));
                }
                for r in 0..n {
                    h.swap(idx(r, p), idx(r, j + 1));
                }
            }
            let piv_inv = ctx.inv(&h[idx(j + 1, j)]).expect("pivot nonzero");
            for r in j + 2..n {
                if ctx.is_zero(&h[idx(r, j)]) {
                    continue;
                }
                let factor = ctx.mul(&h[idx(r, j)], &piv_inv);
                // row_r -= factor * row_{j+1}; col_{j+1} += factor * col_r
                for c in 0..n {
                    let s = ctx.mul(&factor, &h[idx(j + 1, c)]);
                    h[idx(r, c)] = ctx.sub(&h[idx(r, c)], &s);
                }
                for r2 in 0..n {
                    let s = ctx.mul(&factor, &h[idx(r2, r)]);
                    h[idx(r2, j + 1)] = ctx.add(&h[idx(r2, j + 1)], &s);
                }
            }
        }
        // p_0 = 1; p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod subdiag) p_{i-1}
        let mut ps: Vec<Poly> = Vec::with_capacity(n + 1);
        ps.push(Poly::constant(ctx, ctx.one()));
        for m in 1..=n {
            let x_minus = Poly::from_coeffs(ctx, vec![ctx.neg(&h[idx(m - 1, m - 1)]), ctx.one()]);
            let mut p = x_minus.mul(ctx, &ps[m - 1]);
            let mut subdiag = ctx.one();
            for i in (1..m).rev() {
                // product h_{i+1,i} ... h_{m-1,m-2} in 1-based terms
                subdiag = ctx.mul(&subdiag, &h[idx(i, i - 1)]);
                let coeff = ctx.mul(&h[idx(i - 1, m - 1)], &subdiag);
                if !ctx.is_zero(&coeff) {
                    let term = ps[i - 1].scale(ctx, &coeff);
                    p = p.sub(ctx, &term);
                }
            }
            ps.push(p);
        }
        ps.pop().unwrap()
    }

    /// Canonical byte encoding for dedup in closure enumeration.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let ell = self.ctx.ell();
        let width: usize = if ell < 1 << 8 {
            1
        } else if ell < 1 << 16 {
            2
        } else {
            8
        };
        let mut out = Vec::with_capacity(self.entries.len() * self.ctx.degree() * width);
        for e in &self.entries {
            for &c in e.coeffs() {
                out.extend_from_slice(&c.to_le_bytes()[..width]);
            }
        }
        out
    }
}

/// Eigenvalues of a matrix, living in the named splitting field.
#[derive(Debug, Clone)]
pub struct EigenSplit {
    pub field: FieldCtx,
    /// All dim roots of the characteristic polynomial, with multiplicity.
    pub values: Vec<FieldElement>,
}

fn lcm_usize(a: usize, b: usize) -> usize {
    fn gcd(mut a: usize, mut b: usize) -> usize {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

/// Embed an element of `from` into `to` (same ell, from.degree | to.degree),
/// sending the residue class of x to a canonical root of the modulus of
/// `from` inside `to`.
pub fn embed_element(from: &FieldCtx, to: &FieldCtx, a: &FieldElement) -> Result<FieldElement> {
    if from.ell() != to.ell() || to.degree() % from.degree() != 0 {
        return Err(Error::FieldMismatch);
    }
    if from == to {
        return Ok(a.clone());
    }
    if from.degree() == 1 {
        return Ok(to.from_u64(a.coeffs()[0]));
    }
    let root = canonical_modulus_root(from, to)?;
    Ok(eval_at(to, a.coeffs(), &root))
}

fn eval_at(to: &FieldCtx, coeffs: &[u64], at: &FieldElement) -> FieldElement {
    let mut acc = to.zero();
    for &c in coeffs.iter().rev() {
        acc = to.mul(&acc, at);
        acc = to.add(&acc, &to.from_u64(c));
    }
    acc
}

fn canonical_modulus_root(from: &FieldCtx, to: &FieldCtx) -> Result<FieldElement> {
    let lifted = Poly::from_base_coeffs(to, from.modulus_coeffs());
    let mut roots: Vec<FieldElement> = poly::roots(to, &lifted, 0)
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    if roots.is_empty() {
        return Err(Error::FieldMismatch);
    }
    roots.sort();
    Ok(roots.swap_remove(0))
}

impl SquareMatrix {
    /// Multiset of the dim roots of char_poly in the smallest extension
    /// where it splits. Errs with `splitting-too-large` when the absolute
    /// degree of that extension exceeds `cap`.
    pub fn eigenvalues_split(&self, cap: usize) -> Result<EigenSplit> {
        let ctx = &self.ctx;
        let f = self.char_poly();
        let seed = crate::rngutil::fold_seed(
            0x5eed_e16e,
            f.coeffs().iter().flat_map(|c| c.coeffs().iter().copied()),
        );
        let factors = poly::factor(ctx, &f, seed);
        let rel = factors
            .iter()
            .fold(1usize, |acc, (g, _)| lcm_usize(acc, g.degree().unwrap()));
        let abs = rel * ctx.degree();
        if abs > cap {
            return Err(Error::SplittingTooLarge { needed: abs, cap });
        }
        if rel == 1 {
            let mut values = Vec::with_capacity(self.dim);
            for (g, m) in &factors {
                let root = ctx.neg(&g.coeff(0));
                for _ in 0..*m {
                    values.push(root.clone());
                }
            }
            values.sort();
            return Ok(EigenSplit {
                field: ctx.clone(),
                values,
            });
        }
        let ext = FieldCtx::extension(ctx.ell(), abs)?;
        let ext_for_embed = ext.clone();
        let embed: Box<dyn Fn(&FieldElement) -> FieldElement> = if ctx.degree() == 1 {
            Box::new(move |a: &FieldElement| ext_for_embed.from_u64(a.coeffs()[0]))
        } else {
            let root = canonical_modulus_root(ctx, &ext)?;
            Box::new(move |a: &FieldElement| eval_at(&ext_for_embed, a.coeffs(), &root))
        };
        let mut values = Vec::with_capacity(self.dim);
        for (g, mult) in &factors {
            let lifted = Poly::from_coeffs(&ext, g.coeffs().iter().map(&embed).collect());
            let roots = poly::roots(&ext, &lifted, seed);
            let found: usize = roots.iter().map(|(_, m)| m).sum();
            assert_eq!(
                found,
                g.degree().unwrap(),
                "irreducible factor must split in the computed extension"
            );
            for (r, m) in roots {
                for _ in 0..m * mult {
                    values.push(r.clone());
                }
            }
        }
        values.sort();
        assert_eq!(values.len(), self.dim);
        Ok(EigenSplit { field: ext, values })
    }

    /// Exact multiplicative order, as long as it does not exceed `cap`.
    pub fn element_order(&self, cap: u128) -> Result<ElementOrder> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let ctx = &self.ctx;
        let f = self.char_poly();
        let seed = crate::rngutil::fold_seed(
            0x05de5,
            f.coeffs().iter().flat_map(|c| c.coeffs().iter().copied()),
        );
        let factors = poly::factor(ctx, &f, seed);
        // order divides lcm(q^d - 1 over factor degrees d) * ell^t where
        // ell^t >= max multiplicity
        let q = ctx.order();
        let mut multiple = BigUint::from(1u32);
        let mut max_mult = 1usize;
        for (g, m) in &factors {
            let d = g.degree().unwrap() as u32;
            let part = q.pow(d) - 1u32;
            multiple = lcm_big(&multiple, &part);
            max_mult = max_mult.max(*m);
        }
        let ell = ctx.ell();
        let mut ell_pow = 1u128;
        while ell_pow < max_mult as u128 {
            ell_pow *= ell as u128;
            multiple *= ell;
        }
        let Some(mut order) = to_u128(&multiple) else {
            // candidate multiple does not even fit u128; compare against cap
            return Ok(ElementOrder::ExceedsCap);
        };
        debug_assert!(self.pow(order).is_identity());
        for p in crate::intfactor::prime_factors_u128(order) {
            while order % p == 0 && self.pow(order / p).is_identity() {
                order /= p;
            }
        }
        if order > cap {
            Ok(ElementOrder::ExceedsCap)
        } else {
            Ok(ElementOrder::Exact(order))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementOrder {
    Exact(u128),
    ExceedsCap,
}

fn lcm_big(a: &BigUint, b: &BigUint) -> BigUint {
    use num_bigint::BigUint as B;
    fn gcd(a: &B, b: &B) -> B {
        let (mut a, mut b) = (a.clone(), b.clone());
        while b != B::from(0u32) {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }
    a / gcd(a, b) * b
}

fn to_u128(b: &BigUint) -> Option<u128> {
    let digits = b.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0] as u128),
        2 => Some(digits[0] as u128 | (digits[1] as u128) << 64),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Cofactor-expansion determinant, the independent oracle.
    fn det_cofactor(m: &SquareMatrix) -> FieldElement {
        let ctx = m.ctx().clone();
        let n = m.dim();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = ctx.zero();
        for j in 0..n {
            if ctx.is_zero(m.get(0, j)) {
                continue;
            }
            let mut entries = Vec::with_capacity((n - 1) * (n - 1));
            for i in 1..n {
                for k in 0..n {
                    if k != j {
                        entries.push(m.get(i, k).clone());
                    }
                }
            }
            let minor = SquareMatrix::new(ctx.clone(), n - 1, entries).unwrap();
            let term = ctx.mul(m.get(0, j), &det_cofactor(&minor));
            if j % 2 == 0 {
                acc = ctx.add(&acc, &term);
            } else {
                acc = ctx.sub(&acc, &term);
            }
        }
        acc
    }

    fn random_matrix(ctx: &FieldCtx, dim: usize, rng: &mut ChaCha8Rng) -> SquareMatrix {
        let entries = (0..dim * dim).map(|_| ctx.random_element(rng)).collect();
        SquareMatrix::new(ctx.clone(), dim, entries).unwrap()
    }

    fn random_invertible(ctx: &FieldCtx, dim: usize, rng: &mut ChaCha8Rng) -> SquareMatrix {
        loop {
            let m = random_matrix(ctx, dim, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        let ctx = FieldCtx::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matrix(&ctx, 5, &mut rng);
            assert_eq!(m.det(), det_cofactor(&m));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let ctx = FieldCtx::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let m = random_invertible(&ctx, 4, &mut rng);
            assert!(m.mul(&m.inverse().unwrap()).is_identity());
        }
    }

    #[test]
    fn char_poly_companion_matrix() {
        // [[0,1],[-1,0]] over F_5 has char poly X^2 + 1
        let ctx = FieldCtx::prime(5).unwrap();
        let m = SquareMatrix::from_i64_rows(&ctx, &[vec![0, 1], vec![-1, 0]]).unwrap();
        let f = m.char_poly();
        assert_eq!(f, Poly::from_base_coeffs(&ctx, &[1, 0, 1]));
    }

    #[test]
    fn char_poly_identity() {
        // (X - 1)^3 over F_7
        let ctx = FieldCtx::prime(7).unwrap();
        let m = SquareMatrix::identity(&ctx, 3);
        let f = m.char_poly();
        let lin = Poly::from_base_coeffs(&ctx, &[6, 1]);
        let expect = lin.mul(&ctx, &lin).mul(&ctx, &lin);
        assert_eq!(f, expect);
    }

    #[test]
    fn char_poly_constant_term_is_signed_det() {
        let ctx = FieldCtx::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = random_matrix(&ctx, 5, &mut rng);
            let f = m.char_poly();
            assert_eq!(f.degree(), Some(5));
            assert_eq!(f.leading().unwrap(), &ctx.one());
            // char_poly(0) = det(-m) = (-1)^5 det(m)
            let expect = ctx.neg(&det_cofactor(&m));
            assert_eq!(f.coeff(0), expect);
            // coefficient of X^4 is -trace
            assert_eq!(f.coeff(4), ctx.neg(&m.trace()));
        }
    }

    #[test]
    fn char_poly_invariant_under_conjugation() {
        let ctx = FieldCtx::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..10 {
            let m = random_matrix(&ctx, 4, &mut rng);
            let p = random_invertible(&ctx, 4, &mut rng);
            let conj = p.inverse().unwrap().mul(&m).mul(&p);
            assert_eq!(m.char_poly(), conj.char_poly());
        }
    }

    #[test]
    fn eigenvalues_diagonal() {
        let ctx = FieldCtx::prime(7).unwrap();
        let m = SquareMatrix::from_i64_rows(&ctx, &[vec![2, 0], vec![0, 3]]).unwrap();
        let eig = m.eigenvalues_split(12).unwrap();
        assert_eq!(eig.field, ctx);
        assert_eq!(eig.values, vec![ctx.from_u64(2), ctx.from_u64(3)]);
    }

    #[test]
    fn eigenvalues_split_in_prime_field_when_possible() {
        // X^2 + 1 factors over F_5, so the rotation matrix splits in F_5
        let ctx = FieldCtx::prime(5).unwrap();
        let m = SquareMatrix::from_i64_rows(&ctx, &[vec![0, 1], vec![-1, 0]]).unwrap();
        let eig = m.eigenvalues_split(12).unwrap();
        assert_eq!(eig.field, ctx);
        let mut vals = eig.values.clone();
        vals.sort();
        assert_eq!(vals, vec![ctx.from_u64(2), ctx.from_u64(3)]);
    }

    #[test]
    fn eigenvalues_need_quadratic_extension() {
        // over F_7 the same matrix needs F_49: two square roots of -1
        let ctx = FieldCtx::prime(7).unwrap();
        let m = SquareMatrix::from_i64_rows(&ctx, &[vec![0, 1], vec![-1, 0]]).unwrap();
        let eig = m.eigenvalues_split(12).unwrap();
        assert_eq!(eig.field.degree(), 2);
        for v in &eig.values {
            let sq = eig.field.mul(v, v);
            assert_eq!(sq, eig.field.from_i64(-1));
        }
    }

    #[test]
    fn eigenvalues_cubic_extension_roots_check() {
        // companion matrix of X^3 - 2 over F_7: three roots in F_{7^3}
        let ctx = FieldCtx::prime(7).unwrap();
        let m = SquareMatrix::from_i64_rows(
            &ctx,
            &[vec![0, 0, 2], vec![1, 0, 0], vec![0, 1, 0]],
        )
        .unwrap();
        let eig = m.eigenvalues_split(12).unwrap();
        assert_eq!(eig.field.degree(), 3);
        assert_eq!(eig.values.len(), 3);
        for v in &eig.values {
            let cube = eig.field.pow(v, 3);
            assert_eq!(cube, eig.field.from_u64(2));
        }
    }

    #[test]
    fn eigenvalue_cap_respected() {
        let ctx = FieldCtx::prime(7).unwrap();
        let m = SquareMatrix::from_i64_rows(
            &ctx,
            &[vec![0, 0, 2], vec![1, 0, 0], vec![0, 1, 0]],
        )
        .unwrap();
        match m.eigenvalues_split(2) {
            Err(Error::SplittingTooLarge { needed: 3, cap: 2 }) => {}
            other => panic!("expected splitting-too-large, got {other:?}"),
        }
    }

    #[test]
    fn eigenvalue_product_is_det_and_sum_is_trace() {
        let ctx = FieldCtx::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let m = random_matrix(&ctx, 5, &mut rng);
            let eig = m.eigenvalues_split(60).unwrap();
            let ext = &eig.field;
            let mut prod = ext.one();
            let mut sum = ext.zero();
            for v in &eig.values {
                prod = ext.mul(&prod, v);
                sum = ext.add(&sum, v);
            }
            assert_eq!(prod, embed_element(&ctx, ext, &m.det()).unwrap());
            assert_eq!(sum, embed_element(&ctx, ext, &m.trace()).unwrap());
        }
    }

    #[test]
    fn element_order_small_cases() {
        let ctx = FieldCtx::prime(5).unwrap();
        let id = SquareMatrix::identity(&ctx, 3);
        assert_eq!(id.element_order(100).unwrap(), ElementOrder::Exact(1));
        // [[0,1],[-1,-1]] has order 3
        let m = SquareMatrix::from_i64_rows(&ctx, &[vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(m.element_order(100).unwrap(), ElementOrder::Exact(3));
        assert_eq!(m.element_order(2).unwrap(), ElementOrder::ExceedsCap);
    }

    #[test]
    fn element_order_matches_naive_iteration() {
        let ctx = FieldCtx::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..15 {
            let m = loop {
                let c = random_matrix(&ctx, 3, &mut rng);
                if c.is_invertible() {
                    break c;
                }
            };
            let ElementOrder::Exact(order) = m.element_order(1 << 40).unwrap() else {
                panic!("order should be computable");
            };
            // naive oracle
            let mut acc = m.clone();
            let mut naive = 1u128;
            while !acc.is_identity() {
                acc = acc.mul(&m);
                naive += 1;
                assert!(naive < 100000);
            }
            assert_eq!(order, naive);
        }
        let _ = rng.gen_range(0..2u32);
    }
}
