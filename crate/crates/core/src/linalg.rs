//! Exact linear-system solving and the word-span (Burnside) dimension used
//! as the absolute-irreducibility certificate.

use crate::field::{FieldCtx, FieldElement};
use crate::matrix::SquareMatrix;

/// Solution of A x = b: a particular solution when consistent plus a basis
/// of the homogeneous kernel.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub particular: Option<Vec<FieldElement>>,
    pub kernel: Vec<Vec<FieldElement>>,
}

/// Row-reduce in place; returns the pivot column of every nonzero row.
pub fn rref(ctx: &FieldCtx, rows: &mut Vec<Vec<FieldElement>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| !ctx.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = ctx.inv(&rows[rank][col]).expect("pivot nonzero");
        for c in col..ncols {
            rows[rank][c] = ctx.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r != rank && !ctx.is_zero(&rows[r][col]) {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let s = ctx.mul(&factor, &rows[rank][c]);
                    rows[r][c] = ctx.sub(&rows[r][c], &s);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of { x : A x = 0 }.
pub fn kernel_basis(ctx: &FieldCtx, a: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<FieldElement>> = a.to_vec();
    let pivots = rref(ctx, &mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![ctx.zero(); ncols];
        v[free] = ctx.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = ctx.neg(&rows[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Solve A x = b over the field; shapes: A is m x n, b has length m.
pub fn solve_linear(
    ctx: &FieldCtx,
    a: &[Vec<FieldElement>],
    b: &[FieldElement],
) -> LinearSolution {
    assert_eq!(a.len(), b.len(), "rhs length mismatch");
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(ctx, &mut rows);
    // inconsistent iff some pivot lands in the rhs column
    if pivots.last().is_some_and(|&p| p == ncols) {
        return LinearSolution {
            particular: None,
            kernel: kernel_basis(ctx, a),
        };
    }
    let mut x = vec![ctx.zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = rows[r][ncols].clone();
    }
    LinearSolution {
        particular: Some(x),
        kernel: kernel_basis(ctx, a),
    }
}

/// Incremental echelon basis of flattened matrices.
#[derive(Debug, Default)]
pub struct VectorSpan {
    /// (pivot column, reduced row with pivot normalized to 1)
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl VectorSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the basis; insert and report true when independent.
    pub fn insert(&mut self, ctx: &FieldCtx, mut v: Vec<FieldElement>) -> bool {
        for (pivot, row) in &self.rows {
            if !ctx.is_zero(&v[*pivot]) {
                let factor = v[*pivot].clone();
                for (c, rc) in row.iter().enumerate() {
                    let s = ctx.mul(&factor, rc);
                    v[c] = ctx.sub(&v[c], &s);
                }
            }
        }
        let Some(pivot) = v.iter().position(|c| !ctx.is_zero(c)) else {
            return false;
        };
        let inv = ctx.inv(&v[pivot]).expect("nonzero pivot");
        for c in v.iter_mut() {
            *c = ctx.mul(c, &inv);
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, ctx: &FieldCtx, v: &[FieldElement]) -> bool {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !ctx.is_zero(&v[*pivot]) {
                let factor = v[*pivot].clone();
                for (c, rc) in row.iter().enumerate() {
                    let s = ctx.mul(&factor, rc);
                    v[c] = ctx.sub(&v[c], &s);
                }
            }
        }
        v.iter().all(|c| ctx.is_zero(c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanResult {
    /// Dimension of the linear span of all words of length <= word_cap.
    pub dim: usize,
    /// True when a whole length level added nothing new (or the span is
    /// already full), so longer words cannot enlarge the span.
    pub saturated: bool,
}

/// Dimension of the matrix algebra spanned by words in the generators,
/// grown level by level until stable or until word_cap. dim == n^2 is the
/// Burnside certificate of absolute irreducibility.
pub fn span_dimension(gens: &[SquareMatrix], word_cap: usize) -> SpanResult {
    assert!(!gens.is_empty(), "need at least one generator");
    let ctx = gens[0].ctx().clone();
    let n = gens[0].dim();
    let full = n * n;
    let mut span = VectorSpan::new();
    let mut frontier: Vec<SquareMatrix> = Vec::new();
    let id = SquareMatrix::identity(&ctx, n);
    if span.insert(&ctx, id.entries().to_vec()) {
        frontier.push(id);
    }
    for _len in 1..=word_cap {
        if span.dim() == full {
            return SpanResult {
                dim: full,
                saturated: true,
            };
        }
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let p = m.mul(g);
                if span.insert(&ctx, p.entries().to_vec()) {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            return SpanResult {
                dim: span.dim(),
                saturated: true,
            };
        }
        frontier = next;
    }
    SpanResult {
        dim: span.dim(),
        saturated: span.dim() == full,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn f5() -> FieldCtx {
        FieldCtx::prime(5).unwrap()
    }

    #[test]
    fn solve_identity_system() {
        let ctx = f5();
        let a: Vec<Vec<FieldElement>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { ctx.one() } else { ctx.zero() })
                    .collect()
            })
            .collect();
        let b = vec![ctx.zero(), ctx.zero(), ctx.zero()];
        let sol = solve_linear(&ctx, &a, &b);
        assert_eq!(sol.particular, Some(b));
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn kernel_of_rank_deficient_system() {
        // over F_5 the second row is 2x the first, so rank 1, kernel dim 2
        let ctx = f5();
        let a = vec![
            vec![ctx.from_u64(1), ctx.from_u64(2), ctx.from_u64(3)],
            vec![ctx.from_u64(2), ctx.from_u64(4), ctx.from_u64(1)],
        ];
        let k = kernel_basis(&ctx, &a);
        assert_eq!(k.len(), 2);
        // over F_7 the same rows are independent: rank 2, kernel dim 1
        let ctx7 = FieldCtx::prime(7).unwrap();
        let a7 = vec![
            vec![ctx7.from_u64(1), ctx7.from_u64(2), ctx7.from_u64(3)],
            vec![ctx7.from_u64(2), ctx7.from_u64(4), ctx7.from_u64(1)],
        ];
        let k7 = kernel_basis(&ctx7, &a7);
        assert_eq!(k7.len(), 1);
        for v in k.iter().chain(&[]) {
            for row in &a {
                let mut acc = ctx.zero();
                for (x, c) in v.iter().zip(row) {
                    acc = ctx.add(&acc, &ctx.mul(x, c));
                }
                assert!(ctx.is_zero(&acc));
            }
        }
    }

    #[test]
    fn inconsistent_system_has_no_particular() {
        let ctx = f5();
        let a = vec![
            vec![ctx.from_u64(1), ctx.from_u64(0)],
            vec![ctx.from_u64(1), ctx.from_u64(0)],
        ];
        let b = vec![ctx.from_u64(1), ctx.from_u64(2)];
        let sol = solve_linear(&ctx, &a, &b);
        assert!(sol.particular.is_none());
    }

    #[test]
    fn solve_verifies_by_substitution() {
        use rand::SeedableRng;
        let ctx = FieldCtx::prime(7).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a: Vec<Vec<FieldElement>> = (0..4)
                .map(|_| (0..5).map(|_| ctx.random_element(&mut rng)).collect())
                .collect();
            let b: Vec<FieldElement> = (0..4).map(|_| ctx.random_element(&mut rng)).collect();
            let sol = solve_linear(&ctx, &a, &b);
            if let Some(x) = &sol.particular {
                for (row, rhs) in a.iter().zip(&b) {
                    let mut acc = ctx.zero();
                    for (c, xi) in row.iter().zip(x) {
                        acc = ctx.add(&acc, &ctx.mul(c, xi));
                    }
                    assert_eq!(&acc, rhs);
                }
            }
            // rank-nullity
            let mut rows = a.clone();
            let rank = rref(&ctx, &mut rows).len();
            assert_eq!(rank + sol.kernel.len(), 5);
        }
    }

    #[test]
    fn span_of_identity_is_one() {
        let ctx = f5();
        let gens = vec![SquareMatrix::identity(&ctx, 2)];
        let r = span_dimension(&gens, 8);
        assert_eq!(r.dim, 1);
        assert!(r.saturated);
    }

    #[test]
    fn span_full_for_irreducible_pair() {
        let ctx = f5();
        let a = SquareMatrix::from_i64_rows(&ctx, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = SquareMatrix::from_i64_rows(&ctx, &[vec![0, -1], vec![1, 0]]).unwrap();
        let r = span_dimension(&[a, b], 8);
        assert_eq!(r.dim, 4);
        assert!(r.saturated);
    }

    /// Independent oracle: brute-force enumeration of all words up to a cap.
    #[test]
    fn span_matches_word_enumeration_oracle() {
        let ctx = f5();
        let a = SquareMatrix::from_i64_rows(&ctx, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = SquareMatrix::from_i64_rows(&ctx, &[vec![0, -1], vec![1, 0]]).unwrap();
        let gens = [a, b];
        let cap = 5;
        // enumerate every word of length <= cap explicitly
        let mut words: Vec<SquareMatrix> = vec![SquareMatrix::identity(&ctx, 2)];
        let mut level = words.clone();
        for _ in 1..=cap {
            let mut next = Vec::new();
            for w in &level {
                for g in &gens {
                    next.push(w.mul(g));
                }
            }
            words.extend(next.iter().cloned());
            level = next;
        }
        let mut span = VectorSpan::new();
        for w in &words {
            span.insert(&ctx, w.entries().to_vec());
        }
        let r = span_dimension(&gens, cap);
        assert_eq!(r.dim, span.dim());
    }

    #[test]
    fn block_diagonal_span_stays_proper() {
        let ctx = FieldCtx::prime(7).unwrap();
        // diag(A, B) words keep block-diagonal shape: span < 16 but stable
        let a = SquareMatrix::from_i64_rows(
            &ctx,
            &[
                vec![1, 1, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 2, 0],
                vec![0, 0, 0, 3],
            ],
        )
        .unwrap();
        let b = SquareMatrix::from_i64_rows(
            &ctx,
            &[
                vec![0, 1, 0, 0],
                vec![6, 0, 0, 0],
                vec![0, 0, 3, 1],
                vec![0, 0, 0, 5],
            ],
        )
        .unwrap();
        let r = span_dimension(&[a, b], 12);
        assert!(r.dim < 16);
        assert!(r.saturated);
    }

    #[test]
    fn span_monotone_in_word_cap() {
        let ctx = f5();
        let a = SquareMatrix::from_i64_rows(&ctx, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = SquareMatrix::from_i64_rows(&ctx, &[vec![0, -1], vec![1, 0]]).unwrap();
        let gens = [a, b];
        let mut prev = 0;
        for cap in 0..6 {
            let r = span_dimension(&gens, cap);
            assert!(r.dim >= prev);
            prev = r.dim;
        }
    }
}
