//! Dense univariate polynomials over a [`FieldCtx`], with the factorization
//! machinery needed for characteristic polynomials: Rabin irreducibility,
//! distinct-degree factorization and Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldCtx, FieldElement};

/// Coefficients constant-term first; no trailing zeros (zero = empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(ctx: &FieldCtx, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| ctx.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_base_coeffs(ctx: &FieldCtx, coeffs: &[u64]) -> Self {
        Self::from_coeffs(ctx, coeffs.iter().map(|&c| ctx.from_u64(c)).collect())
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElement) -> Self {
        Self::from_coeffs(ctx, vec![c])
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Poly {
            coeffs: vec![ctx.zero(), ctx.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^i (zero if beyond the degree of a nonzero polynomial).
    pub fn coeff(&self, i: usize) -> FieldElement {
        let width = self
            .coeffs
            .first()
            .expect("coeff() on the zero polynomial")
            .coeffs()
            .len();
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or(FieldElement { coeffs: vec![0; width] })
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => ctx.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(ctx, out)
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        self.add(ctx, &other.neg(ctx))
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| ctx.neg(c)).collect(),
        }
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ctx.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
            }
        }
        Poly::from_coeffs(ctx, out)
    }

    pub fn scale(&self, ctx: &FieldCtx, c: &FieldElement) -> Poly {
        Poly::from_coeffs(ctx, self.coeffs.iter().map(|a| ctx.mul(a, c)).collect())
    }

    pub fn make_monic(&self, ctx: &FieldCtx) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = ctx.inv(lc).expect("leading coefficient nonzero");
                self.scale(ctx, &inv)
            }
        }
    }

    /// Quotient and remainder of self by a nonzero divisor.
    pub fn divrem(&self, ctx: &FieldCtx, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by zero polynomial");
        if self.degree().is_none() || self.degree().unwrap() < d {
            return (Poly::zero(), self.clone());
        }
        let lc_inv = ctx.inv(divisor.leading().unwrap()).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ctx.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if ctx.is_zero(&rem[i]) {
                continue;
            }
            let q = ctx.mul(&rem[i], &lc_inv);
            for j in 0..=d {
                let sub = ctx.mul(&q, &divisor.coeffs[j]);
                rem[i - d + j] = ctx.sub(&rem[i - d + j], &sub);
            }
            quot[i - d] = q;
        }
        (Poly::from_coeffs(ctx, quot), Poly::from_coeffs(ctx, rem))
    }

    pub fn rem(&self, ctx: &FieldCtx, divisor: &Poly) -> Poly {
        self.divrem(ctx, divisor).1
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| ctx.scalar_mul((i + 1) as u64 % ctx.ell(), c))
            .collect();
        Poly::from_coeffs(ctx, out)
    }

    pub fn eval(&self, ctx: &FieldCtx, at: &FieldElement) -> FieldElement {
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = ctx.add(&ctx.mul(&acc, at), c);
        }
        acc
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn gcd(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Poly {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let r = r0.rem(ctx, &r1);
        r0 = r1;
        r1 = r;
    }
    r0.make_monic(ctx)
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g.
pub fn ext_gcd(ctx: &FieldCtx, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let one = Poly::constant(ctx, ctx.one());
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), one);
    while !r1.is_zero() {
        let (q, r) = r0.divrem(ctx, &r1);
        let s = s0.sub(ctx, &q.mul(ctx, &s1));
        let t = t0.sub(ctx, &q.mul(ctx, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    (r0, s0, t0)
}

/// base^exp mod modulus, exponent arbitrary precision.
pub fn pow_mod(ctx: &FieldCtx, base: &Poly, exp: &BigUint, modulus: &Poly) -> Poly {
    let mut acc = Poly::constant(ctx, ctx.one()).rem(ctx, modulus);
    let mut b = base.rem(ctx, modulus);
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            acc = acc.mul(ctx, &b).rem(ctx, modulus);
        }
        if i + 1 < bits {
            b = b.mul(ctx, &b).rem(ctx, modulus);
        }
    }
    acc
}

fn distinct_prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// x^{q^m} mod f for m = 1..=max, where q is the order of ctx.
fn frobenius_powers(ctx: &FieldCtx, f: &Poly, max: usize) -> Vec<Poly> {
    let q = ctx.order();
    let mut out = Vec::with_capacity(max);
    let mut h = Poly::x(ctx).rem(ctx, f);
    for _ in 0..max {
        h = pow_mod(ctx, &h, &q, f);
        out.push(h.clone());
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial of degree >= 1.
pub fn is_irreducible(ctx: &FieldCtx, f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.make_monic(ctx);
    let x = Poly::x(ctx).rem(ctx, &f);
    let frob = frobenius_powers(ctx, &f, n);
    if frob[n - 1] != x {
        return false;
    }
    for r in distinct_prime_divisors(n) {
        let h = frob[n / r - 1].sub(ctx, &x);
        let g = gcd(ctx, &f, &h);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Degrees (with multiplicity of occurrence, not counted) of the irreducible
/// factors of f, as (degree, total degree of that part) pairs from the
/// squarefree part. Used to size splitting fields.
pub fn factor_degrees(ctx: &FieldCtx, f: &Poly, seed: u64) -> Vec<usize> {
    factor(ctx, f, seed)
        .into_iter()
        .map(|(g, _)| g.degree().unwrap())
        .collect()
}

/// Full factorization into monic irreducibles with multiplicities.
/// Deterministic for a fixed seed.
pub fn factor(ctx: &FieldCtx, f: &Poly, seed: u64) -> Vec<(Poly, usize)> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let f = f.make_monic(ctx);
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(crate::rngutil::fold_seed(
        seed,
        f.coeffs().iter().flat_map(|c| c.coeffs().iter().copied()),
    ));
    for g in distinct_irreducible_factors(ctx, &f, &mut rng) {
        let mut mult = 0;
        let mut rest = f.clone();
        loop {
            let (q, r) = rest.divrem(ctx, &g);
            if !r.is_zero() {
                break;
            }
            mult += 1;
            rest = q;
        }
        out.push((g, mult));
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| poly_key(&a.0).cmp(&poly_key(&b.0)))
    });
    out
}

fn poly_key(p: &Poly) -> Vec<u64> {
    p.coeffs().iter().flat_map(|c| c.coeffs().iter().copied()).collect()
}

/// Distinct monic irreducible factors, multiplicities dropped.
fn distinct_irreducible_factors(ctx: &FieldCtx, f: &Poly, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut stack = vec![f.make_monic(ctx)];
    while let Some(cur) = stack.pop() {
        let n = match cur.degree() {
            None | Some(0) => continue,
            Some(n) => n,
        };
        if n == 1 {
            push_unique(&mut out, cur);
            continue;
        }
        let deriv = cur.derivative(ctx);
        if deriv.is_zero() {
            // cur = h(x^ell); in F_{ell^s} every coefficient has an ell-th
            // root c^(q/ell), and cur = (h_root(x))^ell
            stack.push(ell_th_root(ctx, &cur));
            continue;
        }
        let g = gcd(ctx, &cur, &deriv);
        let squarefree = cur.divrem(ctx, &g).0;
        for factor in ddf_then_edf(ctx, &squarefree, rng) {
            push_unique(&mut out, factor);
        }
        if g.degree().unwrap_or(0) > 0 {
            stack.push(g);
        }
    }
    out
}

fn push_unique(out: &mut Vec<Poly>, p: Poly) {
    if !out.contains(&p) {
        out.push(p);
    }
}

fn ell_th_root(ctx: &FieldCtx, f: &Poly) -> Poly {
    let ell = ctx.ell() as usize;
    let root_exp = ctx.order() / BigUint::from(ctx.ell());
    let mut coeffs = Vec::new();
    for i in (0..f.len()).step_by(ell) {
        let c = f.coeff(i);
        // c^(q/ell) is the unique ell-th root in F_q
        coeffs.push(ctx.pow_big(&c, &root_exp));
    }
    Poly::from_coeffs(ctx, coeffs)
}

/// Factor a squarefree monic polynomial: distinct-degree split followed by
/// Cantor-Zassenhaus equal-degree splitting (odd q).
fn ddf_then_edf(ctx: &FieldCtx, f: &Poly, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut rest = f.make_monic(ctx);
    let q = ctx.order();
    let x = Poly::x(ctx);
    let mut h = x.rem(ctx, &rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            // remainder is irreducible
            out.push(rest.make_monic(ctx));
            break;
        }
        h = pow_mod(ctx, &h, &q, &rest);
        let g = gcd(ctx, &rest, &h.sub(ctx, &x));
        if g.degree().unwrap_or(0) > 0 {
            edf(ctx, &g, d, rng, &mut out);
            rest = rest.divrem(ctx, &g).0;
            h = h.rem(ctx, &rest);
        }
    }
    out
}

/// Equal-degree splitting of a product of degree-d irreducibles.
fn edf(ctx: &FieldCtx, f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.make_monic(ctx));
        return;
    }
    let exp = (ctx.order().pow(d as u32) - 1u32) / 2u32;
    loop {
        let coeffs: Vec<FieldElement> = (0..n).map(|_| ctx.random_element(rng)).collect();
        let r = Poly::from_coeffs(ctx, coeffs);
        if r.degree().is_none() {
            continue;
        }
        let s = pow_mod(ctx, &r, &exp, f);
        let s1 = s.sub(ctx, &Poly::constant(ctx, ctx.one()));
        let g = gcd(ctx, f, &s1);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            edf(ctx, &g, d, rng, out);
            edf(ctx, &f.divrem(ctx, &g).0, d, rng, out);
            return;
        }
    }
}

/// Roots of f in the coefficient field, with multiplicities.
pub fn roots(ctx: &FieldCtx, f: &Poly, seed: u64) -> Vec<(FieldElement, usize)> {
    factor(ctx, f, seed)
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, m)| (ctx.neg(&g.coeff(0)), m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldCtx {
        FieldCtx::prime(7).unwrap()
    }

    #[test]
    fn divrem_roundtrip() {
        let ctx = f7();
        let a = Poly::from_base_coeffs(&ctx, &[1, 2, 3, 4, 5]);
        let b = Poly::from_base_coeffs(&ctx, &[2, 0, 1]);
        let (q, r) = a.divrem(&ctx, &b);
        let back = q.mul(&ctx, &b).add(&ctx, &r);
        assert_eq!(back, a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn irreducibility_known_cases() {
        let ctx = f7();
        // x^2 + 1 is irreducible mod 7 (7 = 3 mod 4)
        assert!(is_irreducible(&ctx, &Poly::from_base_coeffs(&ctx, &[1, 0, 1])));
        // x^2 - 2 is reducible mod 7 (3^2 = 2)
        assert!(!is_irreducible(&ctx, &Poly::from_base_coeffs(&ctx, &[5, 0, 1])));
        // x^3 - 2 irreducible mod 7 (2 is not a cube)
        assert!(is_irreducible(&ctx, &Poly::from_base_coeffs(&ctx, &[5, 0, 0, 1])));
        let f5 = FieldCtx::prime(5).unwrap();
        // x^2 + 1 splits mod 5: (x-2)(x-3)
        assert!(!is_irreducible(&f5, &Poly::from_base_coeffs(&f5, &[1, 0, 1])));
    }

    #[test]
    fn factor_recovers_known_product() {
        let ctx = f7();
        // (x-1)^2 (x-2) (x^2+1)
        let a = Poly::from_base_coeffs(&ctx, &[6, 1]); // x - 1
        let b = Poly::from_base_coeffs(&ctx, &[5, 1]); // x - 2
        let c = Poly::from_base_coeffs(&ctx, &[1, 0, 1]);
        let f = a.mul(&ctx, &a).mul(&ctx, &b).mul(&ctx, &c);
        let factors = factor(&ctx, &f, 0);
        let mut total = 0;
        for (g, m) in &factors {
            assert!(is_irreducible(&ctx, g));
            total += g.degree().unwrap() * m;
        }
        assert_eq!(total, f.degree().unwrap());
        assert!(factors.iter().any(|(g, m)| *g == a && *m == 2));
        assert!(factors.iter().any(|(g, m)| *g == b && *m == 1));
        assert!(factors.iter().any(|(g, m)| *g == c.make_monic(&ctx) && *m == 1));
    }

    #[test]
    fn factor_handles_ell_th_powers() {
        let ctx = f7();
        // (x - 3)^7 has zero derivative
        let lin = Poly::from_base_coeffs(&ctx, &[4, 1]);
        let mut f = Poly::constant(&ctx, ctx.one());
        for _ in 0..7 {
            f = f.mul(&ctx, &lin);
        }
        let factors = factor(&ctx, &f, 0);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0], (lin, 7));
    }

    #[test]
    fn roots_with_multiplicity() {
        let ctx = f7();
        // x^2 (x + 5) = x^3 + 5x^2 has roots 0 (twice) and 2
        let f = Poly::from_base_coeffs(&ctx, &[0, 0, 5, 1]);
        let r = roots(&ctx, &f, 0);
        assert!(r.contains(&(ctx.zero(), 2)));
        assert!(r.contains(&(ctx.from_u64(2), 1)));
    }

    #[test]
    fn roots_in_extension() {
        // x^2 + 1 over F_25 picks up the two square roots of -1
        let ctx = FieldCtx::extension(5, 2).unwrap();
        let f = Poly::from_base_coeffs(&ctx, &[1, 0, 1]);
        let r = roots(&ctx, &f, 0);
        assert_eq!(r.len(), 2);
        for (root, m) in r {
            assert_eq!(m, 1);
            assert_eq!(ctx.mul(&root, &root), ctx.from_i64(-1));
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        let ctx = f7();
        let a = Poly::from_base_coeffs(&ctx, &[1, 2, 0, 1]);
        let b = Poly::from_base_coeffs(&ctx, &[3, 1]);
        let (g, s, t) = ext_gcd(&ctx, &a, &b);
        let lhs = s.mul(&ctx, &a).add(&ctx, &t.mul(&ctx, &b));
        assert_eq!(lhs, g);
    }
}
