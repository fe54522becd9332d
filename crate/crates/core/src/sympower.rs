//! The symmetric power functor on 2x2 matrices and the eigenvalue
//! geometric-progression obstruction: elements of a symmetric power of
//! GL_2 have eigenvalues in geometric progression, so a single word whose
//! eigenvalue multiset admits no progression arrangement rules out
//! conjugacy into that image.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::SquareMatrix;
use crate::poly;
use crate::quadspace::GeneratorSet;
use crate::rngutil::derive_seed;

/// Matrix of the induced action of a 2x2 matrix on degree-k monomials, in
/// the basis x^k, x^{k-1} y, ..., y^k. Multiplicative: the image of a
/// product is the product of the images.
pub fn sym_power_matrix(m: &SquareMatrix, k: usize) -> Result<SquareMatrix> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch("symmetric power source must be 2x2".into()));
    }
    if k == 0 {
        return Err(Error::DimensionMismatch("power must be >= 1".into()));
    }
    let ctx = m.ctx().clone();
    // x maps to a x + c y, y maps to b x + d y; column j is the expansion
    // of (a x + c y)^{k-j} (b x + d y)^j
    let img_x = [m.get(0, 0).clone(), m.get(1, 0).clone()];
    let img_y = [m.get(0, 1).clone(), m.get(1, 1).clone()];
    let n = k + 1;
    let mut out = SquareMatrix::zeros(&ctx, n);
    for j in 0..n {
        // coefficients indexed by y-degree
        let mut acc = vec![ctx.one()];
        for _ in 0..k - j {
            acc = mul_linear(&ctx, &acc, &img_x);
        }
        for _ in 0..j {
            acc = mul_linear(&ctx, &acc, &img_y);
        }
        debug_assert_eq!(acc.len(), n);
        for (i, coeff) in acc.into_iter().enumerate() {
            out.set(i, j, coeff);
        }
    }
    Ok(out)
}

/// Multiply a binary-form coefficient vector (indexed by y-degree) by
/// (p x + q y).
fn mul_linear(ctx: &FieldCtx, acc: &[FieldElement], lin: &[FieldElement; 2]) -> Vec<FieldElement> {
    let mut out = vec![ctx.zero(); acc.len() + 1];
    for (i, coeff) in acc.iter().enumerate() {
        out[i] = ctx.add(&out[i], &ctx.mul(coeff, &lin[0]));
        out[i + 1] = ctx.add(&out[i + 1], &ctx.mul(coeff, &lin[1]));
    }
    out
}

fn multiset_eq(a: &[FieldElement], b: &[FieldElement]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

fn progression_from(
    ctx: &FieldCtx,
    start: &FieldElement,
    ratio: &FieldElement,
    n: usize,
) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(n);
    let mut cur = start.clone();
    for _ in 0..n {
        out.push(cur.clone());
        cur = ctx.mul(&cur, ratio);
    }
    out
}

/// Search for an ordering v_1, ..., v_n with v_{i+1} = v_i r; returns the
/// smallest working ratio in coefficient order. Any valid arrangement has
/// its ratio among the pairwise quotients and its start among the values,
/// so enumerating those is exhaustive.
pub fn geometric_progression_arrangeable(
    ctx: &FieldCtx,
    vals: &[FieldElement],
) -> Result<Option<FieldElement>> {
    if vals.iter().any(|v| ctx.is_zero(v)) {
        return Err(Error::ZeroEigenvalue);
    }
    if vals.len() <= 1 {
        return Ok(Some(ctx.one()));
    }
    let mut starts: Vec<FieldElement> = vals.to_vec();
    starts.sort();
    starts.dedup();
    let mut ratios = Vec::new();
    for (i, a) in vals.iter().enumerate() {
        let inv = ctx.inv(a)?;
        for (j, b) in vals.iter().enumerate() {
            if i != j {
                ratios.push(ctx.mul(b, &inv));
            }
        }
    }
    ratios.sort();
    ratios.dedup();
    for r in &ratios {
        for s in &starts {
            if multiset_eq(&progression_from(ctx, s, r, vals.len()), vals) {
                return Ok(Some(r.clone()));
            }
        }
    }
    Ok(None)
}

/// Exhaustive check trying every ordered pair of positions as the first
/// two progression terms; used to re-verify exclusion witnesses.
pub fn progression_arrangement_exists_bruteforce(ctx: &FieldCtx, vals: &[FieldElement]) -> bool {
    if vals.iter().any(|v| ctx.is_zero(v)) {
        return false;
    }
    if vals.len() <= 1 {
        return true;
    }
    for (i, a) in vals.iter().enumerate() {
        for (j, b) in vals.iter().enumerate() {
            if i == j {
                continue;
            }
            let r = ctx.mul(b, &ctx.inv(a).expect("nonzero"));
            if multiset_eq(&progression_from(ctx, a, &r, vals.len()), vals) {
                return true;
            }
        }
    }
    false
}

/// A word whose eigenvalue multiset admits no progression arrangement;
/// re-checkable from the stored generator indices.
#[derive(Debug, Clone)]
pub struct ProgressionWitness {
    /// Indices into the generator list; the witness matrix is their product.
    pub word: Vec<usize>,
    pub matrix: SquareMatrix,
    pub eigen_field: FieldCtx,
    pub eigenvalues: Vec<FieldElement>,
}

#[derive(Debug, Clone)]
pub enum ObstructionVerdict {
    /// Every sampled word was progression-consistent. One-sided: this is
    /// "cannot exclude", not a containment proof.
    Consistent {
        words_tested: usize,
        regular_words: usize,
    },
    /// Sound exclusion with an explicit witness.
    Excluded(ProgressionWitness),
}

/// Sample random words and test their eigenvalue multisets; one word whose
/// multiset is not progression-arrangeable excludes containment in a
/// symmetric-power image.
pub fn sympower_obstruction(
    gens: &GeneratorSet,
    trials: usize,
    seed: u64,
) -> Result<ObstructionVerdict> {
    sympower_obstruction_with(gens, trials, 8, 60, seed)
}

pub fn sympower_obstruction_with(
    gens: &GeneratorSet,
    trials: usize,
    word_cap: usize,
    eig_cap: usize,
    seed: u64,
) -> Result<ObstructionVerdict> {
    if gens.dim() % 2 == 0 {
        return Err(Error::DimensionMismatch("target dimension must be odd".into()));
    }
    let ctx = gens.ctx().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "sympower-obstruction"));
    let mut words_tested = 0usize;
    let mut regular_words = 0usize;
    for _ in 0..trials {
        let len = rng.gen_range(1..=word_cap.max(1));
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..gens.gens().len())).collect();
        let mut m = SquareMatrix::identity(&ctx, gens.dim());
        for &i in &word {
            m = m.mul(&gens.gens()[i]);
        }
        let f = m.char_poly();
        let regular = poly::gcd(&ctx, &f, &f.derivative(&ctx)).degree() == Some(0);
        let eig = match m.eigenvalues_split(eig_cap) {
            Ok(e) => e,
            Err(Error::SplittingTooLarge { .. }) => continue,
            Err(e) => return Err(e),
        };
        words_tested += 1;
        if regular {
            regular_words += 1;
        }
        if geometric_progression_arrangeable(&eig.field, &eig.values)?.is_none() {
            return Ok(ObstructionVerdict::Excluded(ProgressionWitness {
                word,
                matrix: m,
                eigen_field: eig.field,
                eigenvalues: eig.values,
            }));
        }
    }
    if words_tested == 0 {
        return Err(Error::NoRegularElement { trials });
    }
    Ok(ObstructionVerdict::Consistent {
        words_tested,
        regular_words,
    })
}
