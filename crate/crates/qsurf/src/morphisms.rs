//! Maps between the surface algebras: piecewise functional calculus, the
//! cross-parameter isomorphism between spheres, circle actions, antipodal
//! and equatorial reflections, the disc embedding, and the ℤ₂-obstruction
//! pair.
//!
//! Some of these maps are polynomial in the generators and live as
//! [`StarHom`]s; others (the cross-parameter map, the ladder flip) exist
//! only after representing the algebra on a ladder, and are provided as
//! [`MatrixHom`]s — generator images in a fixed matrix context.

use nalgebra::DMatrix;

use crate::algebra::{AlgebraId, Element, Letter, Presentation, StarHom};
use crate::error::{Error, Result};
use crate::reps::{self, hermitian_deviation, max_abs, op_norm, Rep, ResidualReport};
use crate::scalar::{Floats, Ring, C64};
use crate::surfaces::{self, SphereC, SphereParams};

// ---------------------------------------------------------------------------
// Piecewise scalar functions
// ---------------------------------------------------------------------------

/// The piecewise-defined scalar functions used by the cross-parameter
/// isomorphism and the reflections.  All are real-valued on their domains.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PiecewiseKind {
    /// `η_c(t) = √(t - t² + c)`.
    Eta,
    /// `F_c(x) = λ₊x` for `x ≥ 0`, `-λ₋x` for `x < 0`;  domain `[-1, 1]`.
    CapF,
    /// `G_c(x) = (1 - q⁴x²)^{-1/2}·η_c(±q²λ∓·(-x))`, branch by sign of `x`.
    CapG,
    /// `f_c(x) = (λ₋/λ₊)x` for `x ≥ 0`, `(λ₊/λ₋)x` for `x < 0`; domain
    /// `[λ₋, λ₊]`; requires `c > 0`.
    SmallF,
    /// `g_c(t) = η_c((λ₋/λ₊)q²t)` for `t ≥ 0`, `η_c((λ₊/λ₋)q²t)` for
    /// `t < 0`; domain `[λ₋, λ₊]`; requires `c > 0`.
    SmallG,
    /// `β(x) = (1-x)^{-1/2}(1-q⁻⁴x)^{-1/2}`, real only for `x < q⁴`.
    Beta,
}

#[derive(Clone, Copy, Debug)]
pub struct PiecewiseFn {
    kind: PiecewiseKind,
    q: f64,
    c: f64,
    lambda_plus: f64,
    lambda_minus: f64,
}

/// Slack allowed at domain boundaries before reporting a violation.
const DOMAIN_SLACK: f64 = 1e-12;

impl PiecewiseFn {
    fn with(kind: PiecewiseKind, q: f64, c: f64) -> Self {
        let root = (c + 0.25).sqrt();
        PiecewiseFn {
            kind,
            q,
            c,
            lambda_plus: 0.5 + root,
            lambda_minus: 0.5 - root,
        }
    }

    pub fn eta(c: f64) -> Result<Self> {
        if c.is_nan() || c < 0.0 {
            return Err(Error::InvalidParams(format!("eta_c needs c ≥ 0, got {c}")));
        }
        Ok(Self::with(PiecewiseKind::Eta, 0.0, c))
    }

    pub fn cap_f(c: f64) -> Result<Self> {
        if c.is_nan() || c < 0.0 {
            return Err(Error::InvalidParams(format!("F_c needs c ≥ 0, got {c}")));
        }
        Ok(Self::with(PiecewiseKind::CapF, 0.0, c))
    }

    pub fn cap_g(q: f64, c: f64) -> Result<Self> {
        if c.is_nan() || c < 0.0 {
            return Err(Error::InvalidParams(format!("G_c needs c ≥ 0, got {c}")));
        }
        Ok(Self::with(PiecewiseKind::CapG, q, c))
    }

    pub fn small_f(c: f64) -> Result<Self> {
        if c.is_nan() || c <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "f_c needs c > 0 (λ₋ vanishes at c = 0), got {c}"
            )));
        }
        Ok(Self::with(PiecewiseKind::SmallF, 0.0, c))
    }

    pub fn small_g(q: f64, c: f64) -> Result<Self> {
        if c.is_nan() || c <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "g_c needs c > 0 (λ₋ vanishes at c = 0), got {c}"
            )));
        }
        Ok(Self::with(PiecewiseKind::SmallG, q, c))
    }

    pub fn beta(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParams(format!(
                "beta needs q in (0,1), got {q}"
            )));
        }
        Ok(Self::with(PiecewiseKind::Beta, q, 0.0))
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            PiecewiseKind::Eta => "eta_c",
            PiecewiseKind::CapF => "F_c",
            PiecewiseKind::CapG => "G_c",
            PiecewiseKind::SmallF => "f_c",
            PiecewiseKind::SmallG => "g_c",
            PiecewiseKind::Beta => "beta",
        }
    }

    fn eta_raw(&self, t: f64) -> Result<f64> {
        let v = t - t * t + self.c;
        if v < -DOMAIN_SLACK {
            return Err(Error::DomainViolation { name: "eta_c", at: t });
        }
        Ok(v.max(0.0).sqrt())
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let (lp, lm) = (self.lambda_plus, self.lambda_minus);
        match self.kind {
            PiecewiseKind::Eta => self.eta_raw(t),
            PiecewiseKind::CapF => {
                if t.abs() > 1.0 + DOMAIN_SLACK {
                    return Err(Error::DomainViolation { name: "F_c", at: t });
                }
                // Both branches agree at 0 (both vanish).
                Ok(if t >= 0.0 { lp * t } else { -lm * t })
            }
            PiecewiseKind::CapG => {
                if t.abs() > 1.0 + DOMAIN_SLACK {
                    return Err(Error::DomainViolation { name: "G_c", at: t });
                }
                let q2 = self.q * self.q;
                let denom = 1.0 - q2 * q2 * t * t;
                if denom <= 0.0 {
                    return Err(Error::DomainViolation { name: "G_c", at: t });
                }
                let inner = if t >= 0.0 { q2 * lp * t } else { -q2 * lm * t };
                let eta = PiecewiseFn::with(PiecewiseKind::Eta, 0.0, self.c).eta_raw(inner)?;
                Ok(eta / denom.sqrt())
            }
            PiecewiseKind::SmallF => {
                if t > lp + DOMAIN_SLACK || t < lm - DOMAIN_SLACK {
                    return Err(Error::DomainViolation { name: "f_c", at: t });
                }
                Ok(if t >= 0.0 { (lm / lp) * t } else { (lp / lm) * t })
            }
            PiecewiseKind::SmallG => {
                if t > lp + DOMAIN_SLACK || t < lm - DOMAIN_SLACK {
                    return Err(Error::DomainViolation { name: "g_c", at: t });
                }
                let q2 = self.q * self.q;
                let inner = if t >= 0.0 { (lm / lp) * q2 * t } else { (lp / lm) * q2 * t };
                self.eta_raw(inner)
            }
            PiecewiseKind::Beta => {
                let a = 1.0 - t;
                let b = 1.0 - t / self.q.powi(4);
                if a <= DOMAIN_SLACK || b <= DOMAIN_SLACK {
                    return Err(Error::DomainViolation { name: "beta", at: t });
                }
                Ok(1.0 / (a.sqrt() * b.sqrt()))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Functional calculus
// ---------------------------------------------------------------------------

/// Apply a real scalar function to a hermitian matrix through its spectral
/// decomposition.  Diagonal inputs skip the eigensolver.
pub fn functional_calculus_with(
    m: &DMatrix<C64>,
    f: impl Fn(f64) -> Result<f64>,
) -> Result<DMatrix<C64>> {
    let dev = hermitian_deviation(m);
    if dev > 1e-12 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = m.nrows();
    let off_diag = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| m[(i, j)].norm())
        .fold(0.0, f64::max);
    if off_diag < 1e-14 {
        let mut out = DMatrix::<C64>::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = C64::new(f(m[(i, i)].re)?, 0.0);
        }
        return Ok(out);
    }
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let mut scaled = eig.eigenvectors.clone();
    for (j, &lam) in eig.eigenvalues.iter().enumerate() {
        let fv = C64::new(f(lam)?, 0.0);
        for i in 0..n {
            scaled[(i, j)] *= fv;
        }
    }
    Ok(&scaled * eig.eigenvectors.adjoint())
}

/// Functional calculus with one of the named piecewise functions.
pub fn functional_calculus(m: &DMatrix<C64>, f: &PiecewiseFn) -> Result<DMatrix<C64>> {
    functional_calculus_with(m, |t| f.eval(t))
}

// ---------------------------------------------------------------------------
// Matrix-level homomorphisms
// ---------------------------------------------------------------------------

/// A *-homomorphism that exists only at the matrix level: one image matrix
/// per plain generator of the source algebra, acting in a fixed ladder
/// context whose block structure is retained for protected-column
/// bookkeeping.
#[derive(Clone, Debug)]
pub struct MatrixHom {
    pub name: String,
    pub source: AlgebraId,
    pub dim: usize,
    pub blocks: Vec<usize>,
    images: Vec<DMatrix<C64>>,
}

impl MatrixHom {
    pub fn new(
        name: impl Into<String>,
        source: AlgebraId,
        blocks: Vec<usize>,
        images: Vec<DMatrix<C64>>,
    ) -> Result<Self> {
        if images.len() != source.gens().len() {
            return Err(Error::InvalidParams(format!(
                "expected {} generator images, got {}",
                source.gens().len(),
                images.len()
            )));
        }
        let dim: usize = blocks.iter().sum();
        for m in &images {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "image is {}x{}, context dimension is {dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(MatrixHom { name: name.into(), source, dim, blocks, images })
    }

    pub fn image(&self, gen: usize) -> &DMatrix<C64> {
        &self.images[gen]
    }

    pub fn letter_image(&self, l: Letter) -> DMatrix<C64> {
        let m = &self.images[l.gen as usize];
        if l.star {
            m.adjoint()
        } else {
            m.clone()
        }
    }

    /// Evaluate an element of the source algebra.
    pub fn apply(&self, a: &Element<Floats>) -> Result<DMatrix<C64>> {
        if a.algebra() != self.source {
            return Err(Error::AlphabetMismatch {
                expected: self.source.name().into(),
                got: a.algebra().name().into(),
            });
        }
        let n = self.dim;
        let mut acc = DMatrix::<C64>::zeros(n, n);
        for (w, k) in a.terms() {
            let mut m = DMatrix::<C64>::identity(n, n);
            for &l in &w.0 {
                m *= self.letter_image(l);
            }
            acc += m * *k;
        }
        Ok(acc)
    }

    pub fn protected_columns(&self, degree: usize) -> Vec<usize> {
        let mut cols = Vec::new();
        let mut offset = 0;
        for &b in &self.blocks {
            for j in 0..b.saturating_sub(degree) {
                cols.push(offset + j);
            }
            offset += b;
        }
        cols
    }

    /// Residuals of the source relations under the generator images,
    /// measured like [`reps::relation_residual`].
    pub fn relation_residuals(&self, pres: &Presentation<Floats>) -> Result<ResidualReport> {
        if pres.algebra() != self.source {
            return Err(Error::AlphabetMismatch {
                expected: self.source.name().into(),
                got: pres.algebra().name().into(),
            });
        }
        let mut per_rule = Vec::new();
        let mut max = 0.0f64;
        for (label, rel) in pres.relation_elements() {
            let m = self.apply(&rel)?;
            let cols = self.protected_columns(rel.shift_degree());
            if cols.is_empty() {
                return Err(Error::DimensionMismatch(format!(
                    "context dimension {} leaves no protected columns for `{label}`",
                    self.dim
                )));
            }
            let res = op_norm(&m.select_columns(&cols));
            max = max.max(res);
            per_rule.push((label, res));
        }
        Ok(ResidualReport { per_rule, max })
    }
}

// ---------------------------------------------------------------------------
// Cross-parameter isomorphism
// ---------------------------------------------------------------------------

/// The cross-parameter isomorphism realised on the faithful ladder sum:
/// the finite-`c` sphere generators expressed as functions of the
/// equatorial ones, together with both ambient representations.
pub struct Chi {
    pub params: SphereParams,
    /// Per-block truncation dimension.
    pub n: usize,
    /// Equatorial `π₊ ⊕ π₋` (the context in which images live).
    pub equator_rep: Rep,
    /// Finite-`c` `π₊ ⊕ π₋`, entrywise equal to the images.
    pub sphere_rep: Rep,
    /// `Ac ↦ F_c(A)`, `Bc ↦ G_c(A)·B` (identity map at `c = ∞`).
    pub hom: MatrixHom,
}

/// Build the cross-parameter isomorphism at truncation `n` per block.
/// Errors at `c = 0` (the degenerate sphere is not isomorphic to the
/// equatorial one); at `c = ∞` the map degenerates to the identity.
pub fn chi_c(q: f64, c: SphereC, n: usize) -> Result<Chi> {
    let params = SphereParams::new(q, c)?;
    let equator_rep = reps::sphere_pm(q, SphereC::Infinity, n)?;
    match c {
        SphereC::Finite(cv) if cv > 0.0 => {
            let a = equator_rep.generator_matrix(0);
            let b = equator_rep.generator_matrix(1);
            let fa = functional_calculus(a, &PiecewiseFn::cap_f(cv)?)?;
            let ga = functional_calculus(a, &PiecewiseFn::cap_g(q, cv)?)?;
            let hom = MatrixHom::new(
                "chi_c",
                AlgebraId::Sphere,
                equator_rep.blocks.clone(),
                vec![fa, ga * b],
            )?;
            let sphere_rep = reps::sphere_pm(q, c, n)?;
            Ok(Chi { params, n, equator_rep, sphere_rep, hom })
        }
        SphereC::Finite(_) => Err(Error::InvalidParams(
            "the cross-parameter map is undefined at c = 0".into(),
        )),
        SphereC::Infinity => {
            let images = vec![
                equator_rep.generator_matrix(0).clone(),
                equator_rep.generator_matrix(1).clone(),
            ];
            let hom = MatrixHom::new(
                "chi_inf",
                AlgebraId::Equator,
                equator_rep.blocks.clone(),
                images,
            )?;
            let sphere_rep = equator_rep.clone();
            Ok(Chi { params, n, equator_rep, sphere_rep, hom })
        }
    }
}

// ---------------------------------------------------------------------------
// Circle action
// ---------------------------------------------------------------------------

/// The circle action `δ_g` as a *-homomorphism: fixes the diagonal
/// generator, scales the off-diagonal one by `g²`.  Defined on the equator
/// and finite-`c` sphere alphabets; `g` must be unimodular.
pub fn delta_hom<R: Ring>(pres: &Presentation<R>, g: R::Elem) -> Result<StarHom<R>> {
    let alg = pres.algebra();
    if !matches!(alg, AlgebraId::Equator | AlgebraId::Sphere) {
        return Err(Error::InvalidParams(format!(
            "the circle action lives on the sphere alphabets, not {}",
            alg.name()
        )));
    }
    let ring = pres.ring().clone();
    let modulus_defect = ring.add(&ring.mul(&g, &ring.conj(&g)), &ring.neg(&ring.one()));
    if !ring.is_negligible(&modulus_defect) {
        return Err(Error::InvalidParams(
            "the circle action parameter must be unimodular".into(),
        ));
    }
    let g2 = ring.mul(&g, &g);
    let a = Element::generator(ring.clone(), alg, 0)?;
    let b = Element::generator(ring, alg, 1)?.scale(&g2);
    StarHom::new("delta_g", pres.clone(), pres.clone(), vec![a, b])
}

/// The unitary implementing `δ_g` on a ladder representation: block-diagonal
/// `diag(g^{-2k})` on each summand.
pub fn delta_unitary(g: C64, blocks: &[usize]) -> DMatrix<C64> {
    let dim: usize = blocks.iter().sum();
    let g2_inv = (g * g).conj(); // g^{-2} for unimodular g
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    let mut offset = 0;
    for &b in blocks {
        let mut w = C64::new(1.0, 0.0);
        for k in 0..b {
            m[(offset + k, offset + k)] = w;
            w *= g2_inv;
        }
        offset += b;
    }
    m
}

// ---------------------------------------------------------------------------
// Reflections
// ---------------------------------------------------------------------------

/// Polynomial reflection negating the diagonal generator: `A ↦ -A, B ↦ B`.
pub fn r1_hom<R: Ring>(ring: R) -> Result<StarHom<R>> {
    let pres = surfaces::equator(ring.clone());
    let a = Element::generator(ring.clone(), AlgebraId::Equator, 0)?;
    let b = Element::generator(ring, AlgebraId::Equator, 1)?;
    StarHom::new("r1", pres.clone(), pres, vec![-&a, b])
}

/// Polynomial antipodal reflection: `A ↦ -A, B ↦ -B`.
pub fn r2_hom<R: Ring>(ring: R) -> Result<StarHom<R>> {
    let pres = surfaces::equator(ring.clone());
    let a = Element::generator(ring.clone(), AlgebraId::Equator, 0)?;
    let b = Element::generator(ring, AlgebraId::Equator, 1)?;
    StarHom::new("r2", pres.clone(), pres, vec![-&a, -&b])
}

/// The block-swap unitary on a two-block ladder sum (`e_k ↔ e_{k+n}`).
pub fn flip_unitary(blocks: &[usize]) -> Result<DMatrix<C64>> {
    if blocks.len() != 2 || blocks[0] != blocks[1] {
        return Err(Error::DimensionMismatch(format!(
            "ladder flip needs two equal blocks, got {blocks:?}"
        )));
    }
    let n = blocks[0];
    let dim = 2 * n;
    Ok(DMatrix::from_fn(dim, dim, |i, j| {
        if (i + n) % dim == j {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// The ladder-flip reflection on a two-block sum: conjugates every
/// generator image by the block swap.  On the equatorial sum this is the
/// matrix realisation of the reflection fixing `B` and negating `A`; on a
/// finite-`c` sum it is the transported (non-polynomial) reflection.
pub fn rbar1(rep: &Rep) -> Result<MatrixHom> {
    let j = flip_unitary(&rep.blocks)?;
    let gens = rep.algebra.gens();
    let images = (0..gens.len())
        .map(|g| &j * rep.generator_matrix(g) * &j)
        .collect();
    MatrixHom::new("rbar1", rep.algebra, rep.blocks.clone(), images)
}

/// The antipodal reflection on a two-block sum: the ladder flip combined
/// with the sign of the square root of `-1` acting through the circle
/// action (`B ↦ -B`).
pub fn rbar2(rep: &Rep) -> Result<MatrixHom> {
    let j = flip_unitary(&rep.blocks)?;
    let gens = rep.algebra.gens();
    if gens.len() != 2 {
        return Err(Error::InvalidParams(
            "the antipodal reflection lives on the sphere alphabets".into(),
        ));
    }
    let a_img = &j * rep.generator_matrix(0) * &j;
    let b_img = -(&j * rep.generator_matrix(1) * &j);
    MatrixHom::new("rbar2", rep.algebra, rep.blocks.clone(), vec![a_img, b_img])
}

/// Average an element with its image under an involutive *-endomorphism.
/// Errors when the action is not an involution of its own algebra.
pub fn fixed_point_project<R: Ring>(
    action: &StarHom<R>,
    a: &Element<R>,
) -> Result<Element<R>> {
    let src = action.source();
    let tgt = action.target();
    if src.algebra() != tgt.algebra() {
        return Err(Error::NotInvolutive(format!(
            "{} maps {} into {}",
            action.name,
            src.algebra().name(),
            tgt.algebra().name()
        )));
    }
    let squared = StarHom::compose("action²", action, action)?;
    for g in 0..src.algebra().gens().len() {
        let gen = Element::generator(tgt.ring().clone(), tgt.algebra(), g)?;
        if !tgt.equals(squared.image(g), &gen)? {
            return Err(Error::NotInvolutive(format!(
                "{} squared moves generator {}",
                action.name,
                src.algebra().gens()[g].name
            )));
        }
    }
    let img = action.apply(a)?;
    let half = tgt.ring().from_ratio(1, 2);
    tgt.normal_form(&(a + &img).scale(&half))
}

// ---------------------------------------------------------------------------
// Disc embedding and projective-plane inclusion
// ---------------------------------------------------------------------------

/// The embedding of the quantum disc (with deformation `q⁴`) into the
/// equatorial sphere, `x ↦ B*`.
pub fn phi_disc<R: Ring>(ring: R) -> Result<StarHom<R>> {
    let source = surfaces::disc(ring.clone(), ring.q_pow(4));
    let target = surfaces::equator(ring.clone());
    let b_star = Element::generator(ring, AlgebraId::Equator, 1)?.star();
    StarHom::new("phi", source, target, vec![b_star])
}

/// The inclusion of the projective plane into the equatorial sphere:
/// `P ↦ A²`, `R ↦ B²`, `T ↦ AB`.
pub fn iota_rp2<R: Ring>(ring: R) -> Result<StarHom<R>> {
    let source = surfaces::rp2(ring.clone());
    let target = surfaces::equator(ring.clone());
    let a = Element::generator(ring.clone(), AlgebraId::Equator, 0)?;
    let b = Element::generator(ring, AlgebraId::Equator, 1)?;
    StarHom::new("iota", source, target, vec![&a * &a, &b * &b, &a * &b])
}

// ---------------------------------------------------------------------------
// Polar decomposition
// ---------------------------------------------------------------------------

/// Polar decomposition `m = v·pos` with `pos = (m*m)^{1/2}` positive
/// semidefinite and `v` a partial isometry vanishing on `ker pos`.
pub fn polar_decompose(m: &DMatrix<C64>) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    let mm = m.adjoint() * m;
    let eig = nalgebra::SymmetricEigen::new(mm);
    let n = m.nrows();
    let smax = eig
        .eigenvalues
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .fold(0.0, f64::max);
    let cutoff = 1e-12 * smax.max(1.0);
    let mut pos_scaled = eig.eigenvectors.clone();
    let mut pinv_scaled = eig.eigenvectors.clone();
    for (j, &lam) in eig.eigenvalues.iter().enumerate() {
        let s = lam.max(0.0).sqrt();
        let s_inv = if s > cutoff { 1.0 / s } else { 0.0 };
        for i in 0..n {
            pos_scaled[(i, j)] *= C64::new(s, 0.0);
            pinv_scaled[(i, j)] *= C64::new(s_inv, 0.0);
        }
    }
    let pos = &pos_scaled * eig.eigenvectors.adjoint();
    let pos_pinv = &pinv_scaled * eig.eigenvectors.adjoint();
    let v = m * pos_pinv;
    let residual = max_abs(&(&v * &pos - m));
    if residual > 1e-8 * smax.max(1.0) {
        return Err(Error::Numerics(format!(
            "polar reconstruction residual {residual:.3e}"
        )));
    }
    Ok((v, pos))
}

// ---------------------------------------------------------------------------
// ℤ₂ obstruction pair
// ---------------------------------------------------------------------------

/// The value of the canonical bimodule map on a sum of elementary tensors:
/// the pair of evaluations over the two points of the ℤ₂ fibre.
#[derive(Clone, Debug)]
pub struct Z2Pair<R: Ring> {
    /// `Σ pᵢ·pᵢ'` normalized.
    pub at_identity: Element<R>,
    /// `Σ pᵢ·r(pᵢ')` normalized.
    pub at_flip: Element<R>,
}

/// Evaluate the obstruction pair for a tensor list against a reflection.
pub fn kappa<R: Ring>(
    tensors: &[(Element<R>, Element<R>)],
    reflection: &StarHom<R>,
) -> Result<Z2Pair<R>> {
    let tgt = reflection.target();
    let ring = tgt.ring().clone();
    let alg = tgt.algebra();
    let mut at_identity = Element::zero(ring.clone(), alg);
    let mut at_flip = Element::zero(ring, alg);
    for (p, p2) in tensors {
        at_identity = &at_identity + &(p * p2);
        at_flip = &at_flip + &(p * &reflection.apply(p2)?);
    }
    Ok(Z2Pair {
        at_identity: tgt.normal_form(&at_identity)?,
        at_flip: tgt.normal_form(&at_flip)?,
    })
}
