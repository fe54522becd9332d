//! The split octonion algebra over F_ell in Zorn vector-matrix form, the
//! automorphism test on the 7-dimensional trace-zero representation, the
//! derivation algebra, exponentials of nilpotent derivations, and the
//! invariant alternating 3-form dimension separating automorphism-type
//! subgroups from full orthogonal ones.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::kernel_basis;
use crate::matrix::SquareMatrix;
use crate::quadspace::{GeneratorSet, QuadraticSpace};
use crate::rngutil::derive_seed;

/// Zorn vector matrix [[a, x], [y, b]]: two scalars and two 3-vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZornOctonion {
    pub a: FieldElement,
    pub x: [FieldElement; 3],
    pub y: [FieldElement; 3],
    pub b: FieldElement,
}

fn dot(ctx: &FieldCtx, u: &[FieldElement; 3], v: &[FieldElement; 3]) -> FieldElement {
    let mut acc = ctx.zero();
    for i in 0..3 {
        acc = ctx.add(&acc, &ctx.mul(&u[i], &v[i]));
    }
    acc
}

fn cross(ctx: &FieldCtx, u: &[FieldElement; 3], v: &[FieldElement; 3]) -> [FieldElement; 3] {
    let term = |i: usize, j: usize| ctx.sub(&ctx.mul(&u[i], &v[j]), &ctx.mul(&u[j], &v[i]));
    [term(1, 2), term(2, 0), term(0, 1)]
}

fn vec3_add(ctx: &FieldCtx, u: &[FieldElement; 3], v: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        ctx.add(&u[0], &v[0]),
        ctx.add(&u[1], &v[1]),
        ctx.add(&u[2], &v[2]),
    ]
}

fn vec3_sub(ctx: &FieldCtx, u: &[FieldElement; 3], v: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        ctx.sub(&u[0], &v[0]),
        ctx.sub(&u[1], &v[1]),
        ctx.sub(&u[2], &v[2]),
    ]
}

fn vec3_scale(ctx: &FieldCtx, c: &FieldElement, u: &[FieldElement; 3]) -> [FieldElement; 3] {
    [ctx.mul(c, &u[0]), ctx.mul(c, &u[1]), ctx.mul(c, &u[2])]
}

fn vec3_zero(ctx: &FieldCtx) -> [FieldElement; 3] {
    [ctx.zero(), ctx.zero(), ctx.zero()]
}

impl ZornOctonion {
    pub fn unit(ctx: &FieldCtx) -> Self {
        ZornOctonion {
            a: ctx.one(),
            x: vec3_zero(ctx),
            y: vec3_zero(ctx),
            b: ctx.one(),
        }
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        ZornOctonion {
            a: ctx.zero(),
            x: vec3_zero(ctx),
            y: vec3_zero(ctx),
            b: ctx.zero(),
        }
    }

    pub fn norm(&self, ctx: &FieldCtx) -> FieldElement {
        ctx.sub(&ctx.mul(&self.a, &self.b), &dot(ctx, &self.x, &self.y))
    }

    pub fn trace(&self, ctx: &FieldCtx) -> FieldElement {
        ctx.add(&self.a, &self.b)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Self) -> Self {
        ZornOctonion {
            a: ctx.add(&self.a, &other.a),
            x: vec3_add(ctx, &self.x, &other.x),
            y: vec3_add(ctx, &self.y, &other.y),
            b: ctx.add(&self.b, &other.b),
        }
    }

    pub fn scale(&self, ctx: &FieldCtx, c: &FieldElement) -> Self {
        ZornOctonion {
            a: ctx.mul(c, &self.a),
            x: vec3_scale(ctx, c, &self.x),
            y: vec3_scale(ctx, c, &self.y),
            b: ctx.mul(c, &self.b),
        }
    }

    /// Coordinates (a, x1, x2, x3, y1, y2, y3, b).
    pub fn to_vec8(&self) -> Vec<FieldElement> {
        let mut v = Vec::with_capacity(8);
        v.push(self.a.clone());
        v.extend(self.x.iter().cloned());
        v.extend(self.y.iter().cloned());
        v.push(self.b.clone());
        v
    }

    pub fn from_vec8(v: &[FieldElement]) -> Self {
        ZornOctonion {
            a: v[0].clone(),
            x: [v[1].clone(), v[2].clone(), v[3].clone()],
            y: [v[4].clone(), v[5].clone(), v[6].clone()],
            b: v[7].clone(),
        }
    }
}

/// Zorn product; the norm is multiplicative for this sign convention.
pub fn zorn_mul(ctx: &FieldCtx, u: &ZornOctonion, v: &ZornOctonion) -> ZornOctonion {
    let a = ctx.add(&ctx.mul(&u.a, &v.a), &dot(ctx, &u.x, &v.y));
    let x = vec3_sub(
        ctx,
        &vec3_add(
            ctx,
            &vec3_scale(ctx, &u.a, &v.x),
            &vec3_scale(ctx, &v.b, &u.x),
        ),
        &cross(ctx, &u.y, &v.y),
    );
    let y = vec3_add(
        ctx,
        &vec3_add(
            ctx,
            &vec3_scale(ctx, &v.a, &u.y),
            &vec3_scale(ctx, &u.b, &v.y),
        ),
        &cross(ctx, &u.x, &v.x),
    );
    let b = ctx.add(&ctx.mul(&u.b, &v.b), &dot(ctx, &u.y, &v.x));
    ZornOctonion { a, x, y, b }
}

/// The 8 coordinate basis octonions.
pub fn basis8(ctx: &FieldCtx) -> Vec<ZornOctonion> {
    (0..8)
        .map(|i| {
            let mut v = vec![ctx.zero(); 8];
            v[i] = ctx.one();
            ZornOctonion::from_vec8(&v)
        })
        .collect()
}

/// Trace-zero coordinates (h, x1, x2, x3, y1, y2, y3) embed into the
/// algebra as (h, x, y, -h).
pub fn trace_zero_to_vec8(ctx: &FieldCtx, v7: &[FieldElement]) -> Vec<FieldElement> {
    let mut v = Vec::with_capacity(8);
    v.push(v7[0].clone());
    v.extend(v7[1..7].iter().cloned());
    v.push(ctx.neg(&v7[0]));
    v
}

/// Project a trace-zero 8-vector back to 7 coordinates.
fn vec8_to_trace_zero(v8: &[FieldElement]) -> Vec<FieldElement> {
    v8[..7].to_vec()
}

/// Extend a 7x7 matrix on the trace-zero space to the linear map on the
/// algebra fixing the unit, and test multiplicativity on all basis pairs.
pub fn is_octonion_automorphism(m7: &SquareMatrix) -> bool {
    if m7.dim() != 7 {
        return false;
    }
    let ctx = m7.ctx().clone();
    let half = ctx.inv_u64(2).expect("odd characteristic");
    let apply8 = |v8: &[FieldElement]| -> Vec<FieldElement> {
        // split off the unit component: c = (a + b)/2
        let c = ctx.mul(&ctx.add(&v8[0], &v8[7]), &half);
        let mut t = v8.to_vec();
        t[0] = ctx.sub(&t[0], &c);
        t[7] = ctx.sub(&t[7], &c);
        let image7 = m7.apply(&vec8_to_trace_zero(&t));
        let mut out = trace_zero_to_vec8(&ctx, &image7);
        out[0] = ctx.add(&out[0], &c);
        out[7] = ctx.add(&out[7], &c);
        out
    };
    let basis = basis8(&ctx);
    let images: Vec<ZornOctonion> = basis
        .iter()
        .map(|e| ZornOctonion::from_vec8(&apply8(&e.to_vec8())))
        .collect();
    for (i, ei) in basis.iter().enumerate() {
        for (j, ej) in basis.iter().enumerate() {
            let prod = zorn_mul(&ctx, ei, ej);
            let lhs = ZornOctonion::from_vec8(&apply8(&prod.to_vec8()));
            let rhs = zorn_mul(&ctx, &images[i], &images[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Basis of the Leibniz kernel { D : D(uv) = D(u)v + u D(v) } as 8x8
/// matrices in algebra coordinates; 14-dimensional away from small
/// characteristic.
pub fn derivation_space(ctx: &FieldCtx) -> Result<Vec<SquareMatrix>> {
    if ctx.ell() < 5 {
        return Err(Error::CharTooSmall(ctx.ell()));
    }
    let basis = basis8(ctx);
    // unknowns D[r][c], row-major
    let mut rows = Vec::with_capacity(8 * 64);
    for (i, ei) in basis.iter().enumerate() {
        for (j, ej) in basis.iter().enumerate() {
            let prod = zorn_mul(ctx, ei, ej).to_vec8();
            // coordinate k of: D(ei ej) - D(ei) ej - ei D(ej) = 0, where
            // D(ei ej)_k = sum_c D[k][c] prod_c,
            // (D(ei) ej)_k = sum_r D[r][i] (e_r ej)_k,
            // (ei D(ej))_k = sum_r D[r][j] (ei e_r)_k
            let left: Vec<Vec<FieldElement>> = basis
                .iter()
                .map(|er| zorn_mul(ctx, er, ej).to_vec8())
                .collect();
            let right: Vec<Vec<FieldElement>> = basis
                .iter()
                .map(|er| zorn_mul(ctx, ei, er).to_vec8())
                .collect();
            for k in 0..8 {
                let mut row = vec![ctx.zero(); 64];
                for (c, pc) in prod.iter().enumerate() {
                    row[k * 8 + c] = ctx.add(&row[k * 8 + c], pc);
                }
                for r in 0..8 {
                    row[r * 8 + i] = ctx.sub(&row[r * 8 + i], &left[r][k]);
                    row[r * 8 + j] = ctx.sub(&row[r * 8 + j], &right[r][k]);
                }
                rows.push(row);
            }
        }
    }
    kernel_basis(ctx, &rows)
        .into_iter()
        .map(|v| SquareMatrix::new(ctx.clone(), 8, v))
        .collect()
}

/// Restrict an 8x8 derivation to trace-zero coordinates, checking that it
/// kills the unit and preserves the trace-zero subspace.
pub fn restrict_to_trace_zero(d8: &SquareMatrix) -> Result<SquareMatrix> {
    let ctx = d8.ctx().clone();
    let unit = ZornOctonion::unit(&ctx).to_vec8();
    if !d8.apply(&unit).iter().all(|c| ctx.is_zero(c)) {
        return Err(Error::MalformedInput("derivation must kill the unit".into()));
    }
    let mut out = SquareMatrix::zeros(&ctx, 7);
    for j in 0..7 {
        let mut e7 = vec![ctx.zero(); 7];
        e7[j] = ctx.one();
        let img = d8.apply(&trace_zero_to_vec8(&ctx, &e7));
        if !ctx.is_zero(&ctx.add(&img[0], &img[7])) {
            return Err(Error::MalformedInput(
                "derivation must preserve the trace-zero subspace".into(),
            ));
        }
        for (i, c) in vec8_to_trace_zero(&img).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// I + d + d^2/2! + ... + d^6/6! for a nilpotent derivation restricted to
/// trace-zero; the output is an algebra automorphism for ell > 7.
pub fn exp_nilpotent_derivation(ctx: &FieldCtx, d7: &SquareMatrix) -> Result<SquareMatrix> {
    if ctx.ell() <= 7 {
        return Err(Error::CharTooSmall(ctx.ell()));
    }
    if d7.dim() != 7 {
        return Err(Error::DimensionMismatch("expected a 7x7 restriction".into()));
    }
    if !d7.pow(7).entries().iter().all(|c| ctx.is_zero(c)) {
        return Err(Error::NotNilpotent);
    }
    let mut acc = SquareMatrix::identity(ctx, 7);
    let mut power = SquareMatrix::identity(ctx, 7);
    let mut factorial = 1u64;
    for k in 1..=6u64 {
        power = power.mul(d7);
        factorial *= k;
        let coeff = ctx.inv_u64(factorial % ctx.ell())?;
        acc = acc.add(&power.scalar_mul(&coeff));
    }
    Ok(acc)
}

/// The Zorn automorphism (a, x, y, b) -> (a, Ax, (A^T)^{-1} y, b) for
/// A in SL_3, as a 7x7 matrix in trace-zero coordinates.
pub fn sl3_block_automorphism(a: &SquareMatrix) -> Result<SquareMatrix> {
    let ctx = a.ctx().clone();
    if a.dim() != 3 {
        return Err(Error::DimensionMismatch("expected a 3x3 block".into()));
    }
    if a.det() != ctx.one() {
        return Err(Error::MalformedInput("block must have determinant 1".into()));
    }
    let ainv_t = a.inverse()?.transpose();
    let mut out = SquareMatrix::identity(&ctx, 7);
    for i in 0..3 {
        for j in 0..3 {
            out.set(1 + i, 1 + j, a.get(i, j).clone());
            out.set(4 + i, 4 + j, ainv_t.get(i, j).clone());
        }
    }
    Ok(out)
}

/// Gram matrix of the norm form restricted to the trace-zero subspace.
pub fn norm_form_quadspace(ctx: &FieldCtx) -> QuadraticSpace {
    let n = 7;
    let half = ctx.inv_u64(2).expect("odd characteristic");
    let mut gram = SquareMatrix::zeros(ctx, n);
    for i in 0..n {
        for j in 0..n {
            let mut ei = vec![ctx.zero(); n];
            ei[i] = ctx.one();
            let mut ej = vec![ctx.zero(); n];
            ej[j] = ctx.one();
            let u = ZornOctonion::from_vec8(&trace_zero_to_vec8(ctx, &ei));
            let v = ZornOctonion::from_vec8(&trace_zero_to_vec8(ctx, &ej));
            let sum = u.add(ctx, &v);
            let b = ctx.mul(
                &ctx.sub(&sum.norm(ctx), &ctx.add(&u.norm(ctx), &v.norm(ctx))),
                &half,
            );
            gram.set(i, j, b);
        }
    }
    QuadraticSpace::new(gram).expect("norm form is nondegenerate")
}

/// Random SL_3 element: random invertible with the first row rescaled.
fn random_sl3(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> SquareMatrix {
    loop {
        let m = SquareMatrix::new(
            ctx.clone(),
            3,
            (0..9).map(|_| ctx.random_element(rng)).collect(),
        )
        .unwrap();
        let d = m.det();
        if ctx.is_zero(&d) {
            continue;
        }
        let scale = ctx.inv(&d).unwrap();
        let mut out = m;
        for j in 0..3 {
            let v = ctx.mul(out.get(0, j), &scale);
            out.set(0, j, v);
        }
        return out;
    }
}

const NILPOTENT_SEARCH_CAP: usize = 100_000;

/// Random nilpotent derivation (characteristic polynomial t^7 on the
/// trace-zero part) found by rejection over the derivation space.
fn random_nilpotent_derivation(
    ctx: &FieldCtx,
    basis7: &[SquareMatrix],
    rng: &mut ChaCha8Rng,
) -> Result<SquareMatrix> {
    let x7 = {
        let x = crate::poly::Poly::x(ctx);
        let mut acc = crate::poly::Poly::constant(ctx, ctx.one());
        for _ in 0..7 {
            acc = acc.mul(ctx, &x);
        }
        acc
    };
    for _ in 0..NILPOTENT_SEARCH_CAP {
        let mut d = SquareMatrix::zeros(ctx, 7);
        for b in basis7 {
            let c = ctx.random_element(rng);
            d = d.add(&b.scalar_mul(&c));
        }
        if d.char_poly() == x7 && !d.entries().iter().all(|c| ctx.is_zero(c)) {
            return Ok(d);
        }
    }
    Err(Error::NoNilpotentFound(NILPOTENT_SEARCH_CAP))
}

/// Sample generators inside the octonion automorphism group: two SL_3
/// block maps and two exponentials of random nilpotent derivations, each
/// verified by the automorphism test.
pub fn g2_sample_generators(ctx: &FieldCtx, seed: u64) -> Result<GeneratorSet> {
    if ctx.ell() < 11 {
        return Err(Error::CharTooSmall(ctx.ell()));
    }
    if ctx.degree() != 1 {
        return Err(Error::MalformedInput("samples are over prime fields".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "g2-sample"));
    let derivations = derivation_space(ctx)?;
    let basis7: Vec<SquareMatrix> = derivations
        .iter()
        .map(restrict_to_trace_zero)
        .collect::<Result<_>>()?;
    let mut gens = Vec::with_capacity(4);
    for _ in 0..2 {
        let g = sl3_block_automorphism(&random_sl3(ctx, &mut rng))?;
        assert!(is_octonion_automorphism(&g));
        gens.push(g);
    }
    for _ in 0..2 {
        let d = random_nilpotent_derivation(ctx, &basis7, &mut rng)?;
        let g = exp_nilpotent_derivation(ctx, &d)?;
        assert!(is_octonion_automorphism(&g));
        gens.push(g);
    }
    GeneratorSet::new(format!("g2-sample(ell={}, seed={seed})", ctx.ell()), gens)
}

/// Dimension of { alternating trilinear T : T(gu, gv, gw) = T(u, v, w) }
/// on a 7-dimensional space (35 unknowns). Octonion automorphism groups
/// fix exactly one line; groups containing a full Omega_7 fix none.
pub fn invariant_three_form_dim(gens: &GeneratorSet) -> Result<usize> {
    if gens.dim() != 7 {
        return Err(Error::DimensionMismatch("3-form invariants need dim 7".into()));
    }
    let ctx = gens.ctx().clone();
    let triples: Vec<(usize, usize, usize)> = (0..7)
        .flat_map(|i| (i + 1..7).flat_map(move |j| (j + 1..7).map(move |k| (i, j, k))))
        .collect();
    let mut rows = Vec::new();
    for g in gens.gens() {
        for (col_t, &(i, j, k)) in triples.iter().enumerate() {
            let mut row = vec![ctx.zero(); triples.len()];
            for (pos, &(a, b, c)) in triples.iter().enumerate() {
                // 3x3 minor of g with rows (a,b,c), columns (i,j,k)
                row[pos] = minor3(&ctx, g, [a, b, c], [i, j, k]);
            }
            row[col_t] = ctx.sub(&row[col_t], &ctx.one());
            rows.push(row);
        }
    }
    Ok(kernel_basis(&ctx, &rows).len())
}

fn minor3(ctx: &FieldCtx, g: &SquareMatrix, rows: [usize; 3], cols: [usize; 3]) -> FieldElement {
    let m = |i: usize, j: usize| g.get(rows[i], cols[j]);
    let mut acc = ctx.zero();
    let terms = [
        (0usize, 1usize, 2usize, true),
        (1, 2, 0, true),
        (2, 0, 1, true),
        (2, 1, 0, false),
        (1, 0, 2, false),
        (0, 2, 1, false),
    ];
    for (p0, p1, p2, pos) in terms {
        let t = ctx.mul(&ctx.mul(m(0, p0), m(1, p1)), m(2, p2));
        acc = if pos { ctx.add(&acc, &t) } else { ctx.sub(&acc, &t) };
    }
    acc
}
