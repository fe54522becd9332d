//! Quadratic spaces over F_{ell^k} (ell odd): isometry and SO membership,
//! reflections, the spinor norm via constructive reflection decomposition,
//! the kernel subgroup Omega_n, invariant-form discovery, and seeded
//! generation of Omega_n sample subgroups.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::{kernel_basis, VectorSpan};
use crate::matrix::SquareMatrix;
use crate::rngutil::derive_seed;

/// A nondegenerate symmetric bilinear form B; the quadratic form is
/// Q(v) = B(v, v), interchangeable with B away from characteristic 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSpace {
    gram: SquareMatrix,
}

impl QuadraticSpace {
    pub fn new(gram: SquareMatrix) -> Result<Self> {
        if gram != gram.transpose() {
            return Err(Error::MalformedInput("gram matrix must be symmetric".into()));
        }
        if !gram.is_invertible() {
            return Err(Error::MalformedInput("gram matrix must be nondegenerate".into()));
        }
        Ok(QuadraticSpace { gram })
    }

    /// Identity gram matrix.
    pub fn standard(ctx: &FieldCtx, dim: usize) -> Self {
        QuadraticSpace {
            gram: SquareMatrix::identity(ctx, dim),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.gram.ctx()
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &SquareMatrix {
        &self.gram
    }

    pub fn bilinear(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        let ctx = self.ctx();
        let gv = self.gram.apply(v);
        let mut acc = ctx.zero();
        for (a, b) in u.iter().zip(&gv) {
            acc = ctx.add(&acc, &ctx.mul(a, b));
        }
        acc
    }

    pub fn quad(&self, v: &[FieldElement]) -> FieldElement {
        self.bilinear(v, v)
    }
}

/// F_q^x modulo squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareClass {
    Trivial,
    NonTrivial,
}

impl SquareClass {
    pub fn of(ctx: &FieldCtx, a: &FieldElement) -> Result<SquareClass> {
        if ctx.is_square(a)? {
            Ok(SquareClass::Trivial)
        } else {
            Ok(SquareClass::NonTrivial)
        }
    }

    pub fn combine(self, other: SquareClass) -> SquareClass {
        if self == other {
            SquareClass::Trivial
        } else {
            SquareClass::NonTrivial
        }
    }

    pub fn is_trivial(self) -> bool {
        self == SquareClass::Trivial
    }
}

/// Isometry test with the determinant report used for SO filtering.
#[derive(Debug, Clone)]
pub struct IsometryReport {
    pub isometry: bool,
    pub det: FieldElement,
    /// det == +1
    pub special: bool,
}

pub fn is_isometry(qs: &QuadraticSpace, m: &SquareMatrix) -> IsometryReport {
    let ctx = qs.ctx();
    let det = m.det();
    let preserved = m.transpose().mul(qs.gram()).mul(m) == *qs.gram();
    IsometryReport {
        isometry: preserved,
        special: det == ctx.one(),
        det,
    }
}

/// r_v(x) = x - (2 B(x,v) / Q(v)) v, an involution of determinant -1
/// fixing the hyperplane orthogonal to v.
pub fn reflection(qs: &QuadraticSpace, v: &[FieldElement]) -> Result<SquareMatrix> {
    let ctx = qs.ctx();
    let qv = qs.quad(v);
    if ctx.is_zero(&qv) {
        return Err(Error::IsotropicVector);
    }
    let n = qs.dim();
    let scale = ctx.mul(&ctx.from_u64(2), &ctx.inv(&qv)?);
    let gv = qs.gram().apply(v);
    let mut m = SquareMatrix::identity(ctx, n);
    for i in 0..n {
        for j in 0..n {
            let outer = ctx.mul(&v[i], &gv[j]);
            let sub = ctx.mul(&scale, &outer);
            m.set(i, j, ctx.sub(m.get(i, j), &sub));
        }
    }
    Ok(m)
}

/// An orthogonal basis of anisotropic vectors; exists in odd characteristic
/// for any nondegenerate space.
pub fn orthogonal_anisotropic_basis(qs: &QuadraticSpace) -> Vec<Vec<FieldElement>> {
    let ctx = qs.ctx();
    let n = qs.dim();
    let mut out: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
    let mut remaining: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            let mut v = vec![ctx.zero(); n];
            v[i] = ctx.one();
            v
        })
        .collect();
    while !remaining.is_empty() {
        let v = pick_anisotropic(qs, &remaining);
        let qv_inv = ctx.inv(&qs.quad(&v)).expect("anisotropic");
        let mut span = VectorSpan::new();
        let mut next = Vec::new();
        for w in &remaining {
            let c = ctx.mul(&qs.bilinear(w, &v), &qv_inv);
            let proj: Vec<FieldElement> = w
                .iter()
                .zip(&v)
                .map(|(wi, vi)| ctx.sub(wi, &ctx.mul(&c, vi)))
                .collect();
            if span.insert(ctx, proj.clone()) {
                next.push(proj);
            }
        }
        debug_assert_eq!(next.len(), remaining.len() - 1);
        out.push(v);
        remaining = next;
    }
    out
}

fn pick_anisotropic(qs: &QuadraticSpace, vecs: &[Vec<FieldElement>]) -> Vec<FieldElement> {
    let ctx = qs.ctx();
    for v in vecs {
        if !ctx.is_zero(&qs.quad(v)) {
            return v.clone();
        }
    }
    // all basis vectors isotropic: some pair has B(u,w) != 0, and then
    // Q(u + w) = 2 B(u,w) != 0
    for (i, u) in vecs.iter().enumerate() {
        for w in &vecs[i + 1..] {
            if !ctx.is_zero(&qs.bilinear(u, w)) {
                return u.iter().zip(w).map(|(a, b)| ctx.add(a, b)).collect();
            }
        }
    }
    unreachable!("form is degenerate on the remaining subspace");
}

/// Spinor norm of a special isometry: decompose into reflections
/// r_{v_1} ... r_{v_2t} and return the square class of prod Q(v_i).
pub fn spinor_norm(qs: &QuadraticSpace, m: &SquareMatrix) -> Result<SquareClass> {
    let report = is_isometry(qs, m);
    if !report.isometry || !report.special {
        return Err(Error::NotInSO);
    }
    let ctx = qs.ctx();
    let mut g = m.clone();
    let mut class = SquareClass::Trivial;
    for b in orthogonal_anisotropic_basis(qs) {
        let y = g.apply(&b);
        if y == b {
            continue;
        }
        let diff: Vec<FieldElement> = b.iter().zip(&y).map(|(a, c)| ctx.sub(a, c)).collect();
        let q_diff = qs.quad(&diff);
        if !ctx.is_zero(&q_diff) {
            // r_{b-y} maps y back to b
            let r = reflection(qs, &diff)?;
            g = r.mul(&g);
            class = class.combine(SquareClass::of(ctx, &q_diff)?);
        } else {
            // Q(b+y) = 4Q(b) - Q(b-y) != 0; r_b r_{b+y} maps y to b
            let sum: Vec<FieldElement> = b.iter().zip(&y).map(|(a, c)| ctx.add(a, c)).collect();
            let q_sum = qs.quad(&sum);
            debug_assert!(!ctx.is_zero(&q_sum));
            let r1 = reflection(qs, &sum)?;
            let rb = reflection(qs, &b)?;
            g = rb.mul(&r1.mul(&g));
            class = class.combine(SquareClass::of(ctx, &q_sum)?);
            class = class.combine(SquareClass::of(ctx, &qs.quad(&b))?);
        }
        debug_assert_eq!(g.apply(&b), b);
    }
    debug_assert!(g.is_identity());
    Ok(class)
}

/// Membership in Omega_n = kernel of the spinor norm inside SO_n.
pub fn omega_membership(qs: &QuadraticSpace, m: &SquareMatrix) -> bool {
    let report = is_isometry(qs, m);
    if !report.isometry || !report.special {
        return false;
    }
    spinor_norm(qs, m).map(|c| c.is_trivial()).unwrap_or(false)
}

/// A labelled set of invertible matrices generating a subgroup of GL_n.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub label: String,
    gens: Vec<SquareMatrix>,
}

impl GeneratorSet {
    pub fn new(label: impl Into<String>, gens: Vec<SquareMatrix>) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::MalformedInput("generator set must be nonempty".into()));
        };
        let (ctx, dim) = (first.ctx().clone(), first.dim());
        for g in &gens {
            if g.ctx() != &ctx || g.dim() != dim {
                return Err(Error::MalformedInput(
                    "generators must share one field and dimension".into(),
                ));
            }
            if !g.is_invertible() {
                return Err(Error::MalformedInput("generators must be invertible".into()));
            }
        }
        Ok(GeneratorSet {
            label: label.into(),
            gens,
        })
    }

    pub fn gens(&self) -> &[SquareMatrix] {
        &self.gens
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.gens[0].ctx()
    }

    pub fn dim(&self) -> usize {
        self.gens[0].dim()
    }
}

/// Basis of { S symmetric : g^T S g = S for all generators }. Dimension 1
/// with a nondegenerate representative certifies orthogonal self-duality.
pub fn invariant_symmetric_forms(gens: &GeneratorSet) -> Vec<SquareMatrix> {
    let ctx = gens.ctx().clone();
    let n = gens.dim();
    // unknowns s_{kl}, k <= l
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|k| (k..n).map(move |l| (k, l)))
        .collect();
    let col_of = |k: usize, l: usize| -> usize {
        let (k, l) = if k <= l { (k, l) } else { (l, k) };
        k * (2 * n - k + 1) / 2 - k + l
    };
    let mut rows = Vec::new();
    for g in gens.gens() {
        for &(a, b) in &unknowns {
            let mut row = vec![ctx.zero(); unknowns.len()];
            // sum_{k<=l} s_{kl} (g_ka g_lb + [k != l] g_la g_kb) - s_ab
            for (idx, &(k, l)) in unknowns.iter().enumerate() {
                let mut c = ctx.mul(g.get(k, a), g.get(l, b));
                if k != l {
                    c = ctx.add(&c, &ctx.mul(g.get(l, a), g.get(k, b)));
                }
                row[idx] = c;
            }
            let ab = col_of(a, b);
            row[ab] = ctx.sub(&row[ab], &ctx.one());
            rows.push(row);
        }
    }
    kernel_basis(&ctx, &rows)
        .into_iter()
        .map(|v| {
            let mut m = SquareMatrix::zeros(&ctx, n);
            for (idx, &(k, l)) in unknowns.iter().enumerate() {
                m.set(k, l, v[idx].clone());
                m.set(l, k, v[idx].clone());
            }
            m
        })
        .collect()
}

fn random_anisotropic_vector(
    qs: &QuadraticSpace,
    rng: &mut ChaCha8Rng,
) -> (Vec<FieldElement>, FieldElement) {
    let ctx = qs.ctx();
    loop {
        let v: Vec<FieldElement> = (0..qs.dim()).map(|_| ctx.random_element(rng)).collect();
        let q = qs.quad(&v);
        if !ctx.is_zero(&q) {
            return (v, q);
        }
    }
}

/// Products of reflection pairs r_u r_v with Q(u) Q(v) a square, w.r.t. the
/// standard diagonal form; every output is verified to lie in Omega_n.
pub fn random_omega_generators(
    dim: usize,
    ctx: &FieldCtx,
    count: usize,
    seed: u64,
) -> Result<GeneratorSet> {
    if dim % 2 == 0 {
        return Err(Error::DimensionMismatch("dim must be odd".into()));
    }
    let qs = QuadraticSpace::standard(ctx, dim);
    random_omega_generators_in(
        &qs,
        count,
        seed,
        format!("omega-sample(dim={dim}, ell={}, seed={seed})", ctx.ell()),
    )
}

/// Same construction w.r.t. an arbitrary nondegenerate form.
pub fn random_omega_generators_in(
    qs: &QuadraticSpace,
    count: usize,
    seed: u64,
    label: String,
) -> Result<GeneratorSet> {
    let ctx = qs.ctx().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "omega-generators"));
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let (u, qu) = random_anisotropic_vector(qs, &mut rng);
        let (v, qv) = random_anisotropic_vector(qs, &mut rng);
        if SquareClass::of(&ctx, &qu)? != SquareClass::of(&ctx, &qv)? {
            continue;
        }
        let m = reflection(qs, &u)?.mul(&reflection(qs, &v)?);
        if m.is_identity() {
            continue;
        }
        assert!(omega_membership(qs, &m), "construction must land in Omega");
        gens.push(m);
    }
    GeneratorSet::new(label, gens)
}

/// Products of random reflection pairs with arbitrary square classes; these
/// generate SO_n rather than Omega_n.
pub fn random_so_generators(
    dim: usize,
    ctx: &FieldCtx,
    count: usize,
    seed: u64,
) -> Result<GeneratorSet> {
    let qs = QuadraticSpace::standard(ctx, dim);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "so-generators"));
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let (u, _) = random_anisotropic_vector(&qs, &mut rng);
        let (v, _) = random_anisotropic_vector(&qs, &mut rng);
        let m = reflection(&qs, &u)?.mul(&reflection(&qs, &v)?);
        if m.is_identity() {
            continue;
        }
        gens.push(m);
    }
    GeneratorSet::new(
        format!("so-sample(dim={dim}, ell={}, seed={seed})", ctx.ell()),
        gens,
    )
}

/// Change of basis P with P^T gram P = I, when the discriminant class
/// allows; None otherwise. Scaling the form does not change O, SO or Omega,
/// so both odd-dimensional form classes behave identically downstream.
pub fn unit_form_change_of_basis(qs: &QuadraticSpace) -> Option<SquareMatrix> {
    let ctx = qs.ctx();
    let n = qs.dim();
    let basis = orthogonal_anisotropic_basis(qs);
    let mut square_cols: Vec<Vec<FieldElement>> = Vec::new();
    let mut nonsquare: Vec<Vec<FieldElement>> = Vec::new();
    for b in basis {
        let d = qs.quad(&b);
        match ctx.sqrt(&d) {
            Some(root) => {
                let inv = ctx.inv(&root).expect("nonzero");
                square_cols.push(b.iter().map(|c| ctx.mul(c, &inv)).collect());
            }
            None => nonsquare.push(b),
        }
    }
    if nonsquare.len() % 2 != 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(
        ctx.ell() ^ ((n as u64) << 32),
        "unit-form",
    ));
    while let (Some(bi), Some(bj)) = (nonsquare.pop(), nonsquare.pop()) {
        let di = qs.quad(&bi);
        let dj = qs.quad(&bj);
        // find x, y with di x^2 + dj y^2 = 1; every nondegenerate binary
        // form over F_q represents 1
        let (x, y) = loop {
            let x = ctx.random_element(&mut rng);
            let rest = ctx.sub(&ctx.one(), &ctx.mul(&di, &ctx.mul(&x, &x)));
            let target = ctx.mul(&rest, &ctx.inv(&dj).expect("nonzero"));
            if let Some(y) = ctx.sqrt(&target) {
                if !ctx.is_zero(&y) {
                    break (x, y);
                }
            }
        };
        let v1: Vec<FieldElement> = bi
            .iter()
            .zip(&bj)
            .map(|(a, b)| ctx.add(&ctx.mul(&x, a), &ctx.mul(&y, b)))
            .collect();
        debug_assert_eq!(qs.quad(&v1), ctx.one());
        // orthogonal complement inside span(bi, bj): (y dj) bi - (x di) bj,
        // whose discriminant di dj is a square
        let a1 = ctx.mul(&y, &dj);
        let a2 = ctx.neg(&ctx.mul(&x, &di));
        let v2: Vec<FieldElement> = bi
            .iter()
            .zip(&bj)
            .map(|(a, b)| ctx.add(&ctx.mul(&a1, a), &ctx.mul(&a2, b)))
            .collect();
        let q2 = qs.quad(&v2);
        let root = ctx.sqrt(&q2)?;
        let inv = ctx.inv(&root).ok()?;
        square_cols.push(v1);
        square_cols.push(v2.iter().map(|c| ctx.mul(c, &inv)).collect());
    }
    let mut p = SquareMatrix::zeros(ctx, n);
    for (j, col) in square_cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            p.set(i, j, c.clone());
        }
    }
    debug_assert!(p.transpose().mul(qs.gram()).mul(&p).is_identity());
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldCtx {
        FieldCtx::prime(5).unwrap()
    }

    fn e(ctx: &FieldCtx, n: usize, i: usize) -> Vec<FieldElement> {
        let mut v = vec![ctx.zero(); n];
        v[i] = ctx.one();
        v
    }

    #[test]
    fn reflection_in_first_axis() {
        let ctx = f5();
        let qs = QuadraticSpace::standard(&ctx, 5);
        let r = reflection(&qs, &e(&ctx, 5, 0)).unwrap();
        let mut expect = SquareMatrix::identity(&ctx, 5);
        expect.set(0, 0, ctx.from_i64(-1));
        assert_eq!(r, expect);
    }

    #[test]
    fn reflection_is_involution_and_fixes_perp() {
        let ctx = FieldCtx::prime(7).unwrap();
        let qs = QuadraticSpace::standard(&ctx, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let (v, _) = random_anisotropic_vector(&qs, &mut rng);
            let r = reflection(&qs, &v).unwrap();
            assert!(r.mul(&r).is_identity());
            let rep = is_isometry(&qs, &r);
            assert!(rep.isometry);
            assert_eq!(rep.det, ctx.from_i64(-1));
            // r fixes the orthogonal hyperplane pointwise
            let qv_inv = ctx.inv(&qs.quad(&v)).unwrap();
            for i in 0..4 {
                let b = e(&ctx, 4, i);
                let c = ctx.mul(&qs.bilinear(&b, &v), &qv_inv);
                let perp: Vec<FieldElement> = b
                    .iter()
                    .zip(&v)
                    .map(|(a, w)| ctx.sub(a, &ctx.mul(&c, w)))
                    .collect();
                assert_eq!(r.apply(&perp), perp);
            }
        }
    }

    #[test]
    fn reflection_ignores_scaling() {
        let ctx = f5();
        let qs = QuadraticSpace::standard(&ctx, 3);
        let v = vec![ctx.from_u64(1), ctx.from_u64(1), ctx.from_u64(0)];
        assert_eq!(qs.quad(&v), ctx.from_u64(2));
        let w: Vec<FieldElement> = v.iter().map(|c| ctx.mul(c, &ctx.from_u64(3))).collect();
        assert_eq!(reflection(&qs, &v).unwrap(), reflection(&qs, &w).unwrap());
    }

    #[test]
    fn isotropic_vector_rejected() {
        let ctx = f5();
        let qs = QuadraticSpace::standard(&ctx, 2);
        // (1, 2): Q = 1 + 4 = 0 mod 5
        let v = vec![ctx.from_u64(1), ctx.from_u64(2)];
        assert_eq!(reflection(&qs, &v), Err(Error::IsotropicVector));
    }

    #[test]
    fn non_isometry_detected() {
        let ctx = FieldCtx::prime(7).unwrap();
        let qs = QuadraticSpace::standard(&ctx, 5);
        let m = SquareMatrix::from_i64_rows(
            &ctx,
            &[
                vec![2, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0],
                vec![0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 1],
            ],
        )
        .unwrap();
        assert!(!is_isometry(&qs, &m).isometry);
    }

    #[test]
    fn spinor_norm_identity_and_known_products() {
        let ctx = f5();
        let qs = QuadraticSpace::standard(&ctx, 5);
        let id = SquareMatrix::identity(&ctx, 5);
        assert_eq!(spinor_norm(&qs, &id).unwrap(), SquareClass::Trivial);
        // Q(u) = 1, Q(v) = 2: product class of 2 is nontrivial mod 5
        let u = e(&ctx, 5, 0);
        let v = vec![
            ctx.from_u64(1),
            ctx.from_u64(1),
            ctx.from_u64(0),
            ctx.from_u64(0),
            ctx.from_u64(0),
        ];
        assert_eq!(qs.quad(&v), ctx.from_u64(2));
        let m = reflection(&qs, &u).unwrap().mul(&reflection(&qs, &v).unwrap());
        assert_eq!(spinor_norm(&qs, &m).unwrap(), SquareClass::NonTrivial);
        assert!(!omega_membership(&qs, &m));
        // both square classes trivial: lands in Omega
        let w = vec![
            ctx.from_u64(2),
            ctx.from_u64(0),
            ctx.from_u64(0),
            ctx.from_u64(0),
            ctx.from_u64(0),
        ];
        let m2 = reflection(&qs, &u).unwrap().mul(&reflection(&qs, &w).unwrap());
        assert_eq!(spinor_norm(&qs, &m2).unwrap(), SquareClass::Trivial);
        assert!(omega_membership(&qs, &m2));
    }

    #[test]
    fn spinor_norm_rejects_reflections() {
        let ctx = f5();
        let qs = QuadraticSpace::standard(&ctx, 3);
        let r = reflection(&qs, &e(&ctx, 3, 0)).unwrap();
        assert_eq!(spinor_norm(&qs, &r), Err(Error::NotInSO));
    }

    #[test]
    fn spinor_norm_is_a_homomorphism() {
        let ctx = FieldCtx::prime(7).unwrap();
        let qs = QuadraticSpace::standard(&ctx, 5);
        let so = random_so_generators(5, &ctx, 12, 99).unwrap();
        for a in so.gens() {
            for b in so.gens() {
                let na = spinor_norm(&qs, a).unwrap();
                let nb = spinor_norm(&qs, b).unwrap();
                let nab = spinor_norm(&qs, &a.mul(b)).unwrap();
                assert_eq!(nab, na.combine(nb));
            }
        }
    }

    #[test]
    fn invariant_forms_of_trivial_group() {
        let ctx = FieldCtx::prime(7).unwrap();
        let gens = GeneratorSet::new("trivial", vec![SquareMatrix::identity(&ctx, 5)]).unwrap();
        assert_eq!(invariant_symmetric_forms(&gens).len(), 15);
    }

    #[test]
    fn invariant_forms_of_omega_sample_is_gram_line() {
        let ctx = FieldCtx::prime(3).unwrap();
        let gens = random_omega_generators(5, &ctx, 6, 0).unwrap();
        let forms = invariant_symmetric_forms(&gens);
        assert_eq!(forms.len(), 1);
        // the line is spanned by a scalar multiple of the identity gram
        let f = &forms[0];
        let c = f.get(0, 0).clone();
        assert!(!ctx.is_zero(&c));
        assert_eq!(f, &SquareMatrix::identity(&ctx, 5).scalar_mul(&c));
    }

    #[test]
    fn omega_generators_pass_membership() {
        for (dim, ell) in [(3usize, 5u64), (5, 7), (7, 11)] {
            let ctx = FieldCtx::prime(ell).unwrap();
            let qs = QuadraticSpace::standard(&ctx, dim);
            let gens = random_omega_generators(dim, &ctx, 6, 42).unwrap();
            for g in gens.gens() {
                assert!(omega_membership(&qs, g));
            }
        }
    }

    #[test]
    fn unit_form_normalization() {
        let ctx = FieldCtx::prime(7).unwrap();
        // diag(2, 2, 1): disc 4 is a square, so congruent to the identity
        let gram = SquareMatrix::from_i64_rows(
            &ctx,
            &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let qs = QuadraticSpace::new(gram).unwrap();
        let p = unit_form_change_of_basis(&qs).expect("square discriminant");
        assert!(p.transpose().mul(qs.gram()).mul(&p).is_identity());
        // diag(3, 1, 1): disc 3 is a nonsquare mod 7, no unit congruence
        let gram2 = SquareMatrix::from_i64_rows(
            &ctx,
            &[vec![3, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let qs2 = QuadraticSpace::new(gram2).unwrap();
        assert!(unit_form_change_of_basis(&qs2).is_none());
    }

    #[test]
    fn orthogonal_basis_on_isotropic_diagonal() {
        // gram with a hyperbolic plane: e1, e2 isotropic, B(e1,e2) = 1
        let ctx = f5();
        let gram = SquareMatrix::from_i64_rows(
            &ctx,
            &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let qs = QuadraticSpace::new(gram).unwrap();
        let basis = orthogonal_anisotropic_basis(&qs);
        assert_eq!(basis.len(), 3);
        for (i, u) in basis.iter().enumerate() {
            assert!(!ctx.is_zero(&qs.quad(u)));
            for w in &basis[i + 1..] {
                assert!(ctx.is_zero(&qs.bilinear(u, w)));
            }
        }
    }
}
