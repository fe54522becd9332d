//! Exact arithmetic in prime fields F_ell and extensions F_{ell^k}.
//!
//! A [`FieldCtx`] carries the characteristic, the extension degree and the
//! monic irreducible modulus; elements are coefficient vectors reduced mod
//! ell. The modulus for `extension(ell, k)` is found by seeded random
//! search, so the same `(ell, k)` always yields the same field model.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// An element of F_{ell^k}: coefficients of a residue polynomial,
/// constant term first, length k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub(crate) coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

/// A finite field F_{ell^k}, ell an odd prime.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    ell: u64,
    /// Monic modulus, constant term first, length degree + 1.
    /// Degree 1 uses the polynomial x.
    modulus: Arc<[u64]>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell && *self.modulus == *other.modulus
    }
}
impl Eq for FieldCtx {}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.ell)
        } else {
            write!(f, "F_{{{}^{}}}", self.ell, self.degree())
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn inv_mod(a: u64, m: u64) -> u64 {
    // extended Euclid on integers
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "inverse of non-unit");
    t0.rem_euclid(m as i128) as u64
}

impl FieldCtx {
    /// The prime field F_ell, ell an odd prime.
    pub fn prime(ell: u64) -> Result<Self> {
        if ell < 3 || !is_prime_u64(ell) {
            return Err(Error::NotPrime(ell));
        }
        Ok(FieldCtx {
            ell,
            modulus: Arc::from(vec![0, 1]),
        })
    }

    /// F_{ell^degree} with a canonical irreducible modulus found by seeded
    /// random search; the same (ell, degree) always produces the same field.
    pub fn extension(ell: u64, degree: usize) -> Result<Self> {
        if ell < 3 || !is_prime_u64(ell) {
            return Err(Error::NotPrime(ell));
        }
        if degree == 0 {
            return Err(Error::DimensionMismatch("degree must be >= 1".into()));
        }
        if degree == 1 {
            return Self::prime(ell);
        }
        use std::collections::HashMap;
        use std::sync::{Mutex, OnceLock};
        static CACHE: OnceLock<Mutex<HashMap<(u64, usize), FieldCtx>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = cache.lock().unwrap().get(&(ell, degree)) {
            return Ok(ctx.clone());
        }
        let base = Self::prime(ell)?;
        let seed = crate::rngutil::derive_seed(ell ^ ((degree as u64) << 40), "extension-modulus");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut coeffs: Vec<u64> = (0..degree).map(|_| rng.gen_range(0..ell)).collect();
            if coeffs[0] == 0 {
                coeffs[0] = 1 + rng.gen_range(0..ell - 1);
            }
            coeffs.push(1);
            let poly = crate::poly::Poly::from_base_coeffs(&base, &coeffs);
            if crate::poly::is_irreducible(&base, &poly) {
                let ctx = FieldCtx {
                    ell,
                    modulus: Arc::from(coeffs),
                };
                cache.lock().unwrap().insert((ell, degree), ctx.clone());
                return Ok(ctx);
            }
        }
    }

    /// F_{ell^k} from an explicit monic modulus (constant term first,
    /// length k + 1); irreducibility is verified.
    pub fn with_modulus(ell: u64, modulus: Vec<u64>) -> Result<Self> {
        if ell < 3 || !is_prime_u64(ell) {
            return Err(Error::NotPrime(ell));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() % ell != 1 {
            return Err(Error::MalformedInput("modulus must be monic of degree >= 1".into()));
        }
        let modulus: Vec<u64> = modulus.iter().map(|c| c % ell).collect();
        if modulus.len() > 2 {
            let base = Self::prime(ell)?;
            let poly = crate::poly::Poly::from_base_coeffs(&base, &modulus);
            if !crate::poly::is_irreducible(&base, &poly) {
                return Err(Error::NotIrreducible { ell });
            }
        }
        Ok(FieldCtx {
            ell,
            modulus: Arc::from(modulus),
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    /// Field size ell^degree.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.ell).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = c % self.ell;
        FieldElement { coeffs }
    }

    pub fn from_i64(&self, c: i64) -> FieldElement {
        self.from_u64(c.rem_euclid(self.ell as i64) as u64)
    }

    /// Element from raw coefficients (constant term first); shorter vectors
    /// are zero-padded, entries reduced mod ell.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::MalformedInput(format!(
                "coefficient vector of length {} in a degree-{} field",
                coeffs.len(),
                self.degree()
            )));
        }
        let mut out = vec![0; self.degree()];
        for (i, c) in coeffs.iter().enumerate() {
            out[i] = c % self.ell;
        }
        Ok(FieldElement { coeffs: out })
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.ell {
                    s - self.ell
                } else {
                    s
                }
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| if x >= y { x - y } else { x + self.ell - y })
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.ell - x })
            .collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let k = self.degree();
        if k == 1 {
            return FieldElement {
                coeffs: vec![mul_mod(a.coeffs[0], b.coeffs[0], self.ell)],
            };
        }
        // schoolbook product then reduction by the monic modulus
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x as u128 * y as u128;
            }
        }
        let ell = self.ell as u128;
        for i in (k..2 * k - 1).rev() {
            let c = prod[i] % ell;
            if c != 0 {
                // subtract c * x^(i-k) * modulus
                for j in 0..k {
                    let m = self.modulus[j] as u128;
                    if m != 0 {
                        prod[i - k + j] += (ell - (c * m) % ell) % ell;
                    }
                }
            }
            prod[i] = 0;
        }
        FieldElement {
            coeffs: prod[..k].iter().map(|&c| (c % ell) as u64).collect(),
        }
    }

    pub fn scalar_mul(&self, c: u64, a: &FieldElement) -> FieldElement {
        let c = c % self.ell;
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| mul_mod(x, c, self.ell)).collect(),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::NotInvertible);
        }
        if self.degree() == 1 {
            return Ok(FieldElement {
                coeffs: vec![inv_mod(a.coeffs[0], self.ell)],
            });
        }
        // extended Euclid in F_ell[x] against the modulus
        let base = FieldCtx::prime(self.ell).expect("valid prime");
        let modulus = crate::poly::Poly::from_base_coeffs(&base, &self.modulus);
        let elem = crate::poly::Poly::from_base_coeffs(&base, &a.coeffs);
        let (g, _, t) = crate::poly::ext_gcd(&base, &modulus, &elem);
        assert_eq!(g.degree(), Some(0), "modulus is irreducible");
        let ginv = inv_mod(g.coeff(0).coeffs[0], self.ell);
        let mut out = vec![0u64; self.degree()];
        for i in 0..t.len() {
            out[i] = mul_mod(t.coeff(i).coeffs[0], ginv, self.ell);
        }
        Ok(FieldElement { coeffs: out })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u128) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &FieldElement, exp: &BigUint) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = self.mul(&acc, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Norm down to the prime field: a^((q-1)/(ell-1)).
    pub fn norm_to_prime(&self, a: &FieldElement) -> u64 {
        if self.degree() == 1 {
            return a.coeffs[0];
        }
        let exp = (self.order() - 1u32) / BigUint::from(self.ell - 1);
        let n = self.pow_big(a, &exp);
        debug_assert!(n.coeffs[1..].iter().all(|&c| c == 0));
        n.coeffs[0]
    }

    /// Euler criterion on the prime field after norming down.
    pub fn is_square(&self, a: &FieldElement) -> Result<bool> {
        if self.is_zero(a) {
            return Err(Error::NotInvertible);
        }
        let n = self.norm_to_prime(a);
        Ok(pow_mod(n, (self.ell - 1) / 2, self.ell) == 1)
    }

    /// Square root by Tonelli-Shanks over F_q, q odd; None for nonsquares.
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a).expect("nonzero") {
            return None;
        }
        let one = BigUint::from(1u32);
        let q_minus_1 = self.order() - &one;
        let mut t = q_minus_1.clone();
        let mut s = 0u32;
        while !t.bit(0) {
            t >>= 1;
            s += 1;
        }
        if s == 1 {
            // q = 3 mod 4: a^((q+1)/4)
            let exp = (self.order() + &one) >> 2;
            return Some(self.pow_big(a, &exp));
        }
        // find a nonsquare deterministically
        let mut rng = ChaCha8Rng::seed_from_u64(crate::rngutil::derive_seed(
            self.ell ^ ((self.degree() as u64) << 48),
            "nonsquare-search",
        ));
        let z = loop {
            let c = self.random_nonzero(&mut rng);
            if !self.is_square(&c).expect("nonzero") {
                break c;
            }
        };
        let mut m = s;
        let mut c = self.pow_big(&z, &t);
        let mut r = self.pow_big(a, &((&t + &one) >> 1));
        let mut u = self.pow_big(a, &t);
        while u != self.one() {
            let mut i = 0u32;
            let mut probe = u.clone();
            while probe != self.one() {
                probe = self.mul(&probe, &probe);
                i += 1;
                debug_assert!(i < m);
            }
            let mut b = c.clone();
            for _ in 0..m - i - 1 {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            u = self.mul(&u, &c);
            r = self.mul(&r, &b);
        }
        debug_assert_eq!(self.mul(&r, &r), *a);
        Some(r)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> FieldElement {
        FieldElement {
            coeffs: (0..self.degree()).map(|_| rng.gen_range(0..self.ell)).collect(),
        }
    }

    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> FieldElement {
        loop {
            let a = self.random_element(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// Inverse of a small integer constant, for exponential denominators.
    pub fn inv_u64(&self, c: u64) -> Result<FieldElement> {
        let c = c % self.ell;
        if c == 0 {
            return Err(Error::NotInvertible);
        }
        Ok(self.from_u64(inv_mod(c, self.ell)))
    }
}
