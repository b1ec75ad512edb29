//! Index witnesses: finite-rank defect projections extracted from the
//! ladder representations, spectral matrix units, and the conditional
//! expectation onto the even subalgebra together with its quasi-basis and
//! index element.
//!
//! The defects certify nontrivial classes: a co-isometry whose source
//! projection misses a finite-rank piece.  On the projective plane the
//! missing piece has rank two; on the disc it has rank one.  Both ranks
//! are stable across truncation sizes because the defect lives at the
//! bottom of the ladder, far from the truncation edge.

use nalgebra::DMatrix;

use crate::algebra::{AlgebraId, Element, Presentation, Word};
use crate::error::{Error, Result};
use crate::morphisms::{functional_calculus_with, polar_decompose, PiecewiseFn};
use crate::reps::{build_rep, max_abs, RepKind};
use crate::scalar::{Ring, C64};
use crate::surfaces::SphereC;

/// Tolerance for the integrality of a projection trace.
pub const TRACE_TOL: f64 = 1e-8;

// ---------------------------------------------------------------------------
// Defect witnesses
// ---------------------------------------------------------------------------

/// A co-isometry together with its source defect `1 - u*u`: a finite-rank
/// projection whose rank is the integer invariant being witnessed.
#[derive(Clone, Debug)]
pub struct DefectWitness {
    /// The truncation dimension.
    pub dim: usize,
    /// The (truncated) co-isometry `u`.
    pub coisometry: DMatrix<C64>,
    /// `1 - u*u`.
    pub defect: DMatrix<C64>,
    /// Real trace of the defect.
    pub trace: f64,
    /// The integer rank certified by the trace.
    pub rank: usize,
    /// `max |(defect² - defect)_{ij}|` — how close the defect is to a
    /// projection.
    pub projection_residual: f64,
    /// `max |(u·u* - 1)_{ij}|` over the protected columns — how close `u`
    /// is to a genuine co-isometry away from the truncation edge.
    pub coisometry_residual: f64,
}

/// Round a hermitian projection's trace to its integer rank, refusing
/// matrices that are not numerically projections of integer trace.
pub fn projection_rank(p: &DMatrix<C64>) -> Result<(usize, f64, f64)> {
    let residual = max_abs(&(p * p - p));
    let tr = p.trace();
    if tr.im.abs() > TRACE_TOL || residual > TRACE_TOL {
        return Err(Error::NonIntegerTrace { trace: tr.re, tol: TRACE_TOL });
    }
    let rounded = tr.re.round();
    if (tr.re - rounded).abs() > TRACE_TOL || rounded < 0.0 {
        return Err(Error::NonIntegerTrace { trace: tr.re, tol: TRACE_TOL });
    }
    Ok((rounded as usize, tr.re, residual))
}

fn witness_from(
    u: DMatrix<C64>,
    protected: &[usize],
) -> Result<DefectWitness> {
    let dim = u.nrows();
    let id = DMatrix::<C64>::identity(dim, dim);
    let defect = &id - u.adjoint() * &u;
    let (rank, trace, projection_residual) = projection_rank(&defect)?;
    let cois = &u * u.adjoint() - &id;
    let coisometry_residual = if protected.is_empty() {
        return Err(Error::DimensionMismatch(
            "truncation too small to leave protected columns for the defect".into(),
        ));
    } else {
        max_abs(&cois.select_columns(protected))
    };
    Ok(DefectWitness {
        dim,
        coisometry: u,
        defect,
        trace,
        rank,
        projection_residual,
        coisometry_residual,
    })
}

/// The projective-plane defect: apply the compensating function `β` to the
/// diagonal generator (extended by zero across its two poles, which are
/// exactly the top two spectral values) and multiply by the lowering
/// generator.  The resulting co-isometry drops the bottom two ladder
/// levels, so `1 - u*u` is the rank-two projection onto them.
pub fn rp2_defect(q: f64, n: usize) -> Result<DefectWitness> {
    let rep = build_rep(RepKind::Rp2Infinite, q, SphereC::Infinity, n)?;
    let p = rep.generator_matrix(0);
    let r = rep.generator_matrix(1);
    let beta = PiecewiseFn::beta(q)?;
    let q4 = q.powi(4);
    // Half the spectral gap below the lower pole: eigenvalues at the poles
    // are zeroed, all others are untouched.
    let guard = (q4 - q4 * q4) / 2.0;
    let beta_ext = functional_calculus_with(p, |t| {
        if (t - 1.0).abs() <= guard || (t - q4).abs() <= guard {
            Ok(0.0)
        } else {
            beta.eval(t)
        }
    })?;
    let u = r * beta_ext;
    // u·u* carries total shift weight 4 (two lowering steps and their
    // adjoints), so columns within 4 of the truncation edge are unprotected.
    witness_from(u, &rep.protected_columns(4))
}

/// The disc defect: the adjoint of the isometric part of the polar
/// decomposition of the generator.  The co-isometry drops the bottom
/// ladder level, so `1 - u*u` is the rank-one projection onto it.
pub fn disc_defect(qhat: f64, n: usize) -> Result<DefectWitness> {
    let rep = build_rep(RepKind::DiscInfinite, qhat, SphereC::Infinity, n)?;
    let x = rep.generator_matrix(0);
    let (v, _pos) = polar_decompose(x)?;
    witness_from(v.adjoint(), &rep.protected_columns(2))
}

// ---------------------------------------------------------------------------
// Spectral matrix units
// ---------------------------------------------------------------------------

/// Matrix units recovered from the spectral projections of the diagonal
/// generator of the projective plane and powers of the lowering generator.
#[derive(Clone, Debug)]
pub struct MatrixUnits {
    /// Units were built for ladder indices `0..count`.
    pub count: usize,
    /// `units[i][j]` targets the canonical unit `e_{ij}`.
    pub units: Vec<Vec<DMatrix<C64>>>,
    /// Smallest gap between consecutive spectral values used.
    pub min_gap: f64,
    /// Set when the spectral values cluster below `1e-12`; the isolation
    /// windows are then too narrow to trust under perturbation, though the
    /// construction itself still proceeds.
    pub clustered: bool,
    /// `max |(units[i][j] - e_{ij})_{kl}|` over all built units.
    pub max_residual: f64,
}

/// The canonical matrix unit `e_{ij}` in dimension `n`.
pub fn canonical_unit(n: usize, i: usize, j: usize) -> DMatrix<C64> {
    let mut m = DMatrix::<C64>::zeros(n, n);
    m[(i, j)] = C64::new(1.0, 0.0);
    m
}

/// Build matrix units `e_{ij}` for `i, j < count` on the projective-plane
/// ladder: spectral projections of the diagonal generator isolate each
/// level, and sandwiched powers of the lowering generator connect them.
pub fn matrix_units(q: f64, n: usize, count: usize) -> Result<MatrixUnits> {
    if count == 0 || count + 1 >= n {
        return Err(Error::InvalidParams(format!(
            "need 0 < count and count + 1 < dim, got count={count}, dim={n}"
        )));
    }
    let rep = build_rep(RepKind::Rp2Infinite, q, SphereC::Infinity, n)?;
    let p = rep.generator_matrix(0);
    let t = rep.generator_matrix(2);

    // Spectral values of the diagonal generator, descending down the ladder.
    let values: Vec<f64> = (0..n as i32).map(|k| q.powi(4 * k)).collect();
    let mut min_gap = f64::INFINITY;
    for k in 0..count {
        min_gap = min_gap.min(values[k] - values[k + 1]);
        if k > 0 {
            min_gap = min_gap.min(values[k - 1] - values[k]);
        }
    }
    let clustered = min_gap < 1e-12;

    // Isolating spectral projections via indicator functions.
    let mut projections = Vec::with_capacity(count);
    for k in 0..count {
        let center = values[k];
        let mut half_gap = values[k] - values[k + 1];
        if k > 0 {
            half_gap = half_gap.min(values[k - 1] - values[k]);
        }
        half_gap /= 2.0;
        let proj = functional_calculus_with(p, move |x| {
            Ok(if (x - center).abs() < half_gap { 1.0 } else { 0.0 })
        })?;
        projections.push(proj);
    }

    // Powers of the lowering generator.
    let mut t_pows = Vec::with_capacity(count);
    t_pows.push(DMatrix::<C64>::identity(n, n));
    for _ in 1..count {
        t_pows.push(t * t_pows.last().unwrap());
    }

    let mut units = vec![vec![DMatrix::<C64>::zeros(n, n); count]; count];
    let mut max_residual = 0.0f64;
    for i in 0..count {
        for j in i..count {
            let raw = &projections[i] * &t_pows[j - i] * &projections[j];
            let pivot = raw[(i, j)];
            if pivot.norm() < 1e-14 {
                return Err(Error::Numerics(format!(
                    "spectral unit ({i},{j}) has vanishing pivot"
                )));
            }
            let unit = raw / pivot;
            max_residual = max_residual.max(max_abs(&(&unit - canonical_unit(n, i, j))));
            if i != j {
                let adj = unit.adjoint();
                max_residual = max_residual.max(max_abs(&(&adj - canonical_unit(n, j, i))));
                units[j][i] = adj;
            }
            units[i][j] = unit;
        }
    }

    Ok(MatrixUnits { count, units, min_gap, clustered, max_residual })
}

// ---------------------------------------------------------------------------
// Conditional expectation and quasi-basis
// ---------------------------------------------------------------------------

/// The conditional expectation onto the even subalgebra: normalize and
/// keep only the words of even length (the part fixed by the antipodal
/// reflection).
pub fn expectation_even<R: Ring>(
    pres: &Presentation<R>,
    a: &Element<R>,
) -> Result<Element<R>> {
    let nf = pres.normal_form(a)?;
    let mut out = Element::zero(pres.ring().clone(), pres.algebra());
    for (w, k) in nf.terms() {
        if w.0.len() % 2 == 0 {
            let term =
                Element::from_word(pres.ring().clone(), pres.algebra(), w.clone(), k.clone());
            out = &out + &term;
        }
    }
    Ok(out)
}

/// The quasi-basis `{1, A, B*}` of the even-subalgebra expectation on the
/// equatorial sphere.
pub fn quasi_basis<R: Ring>(ring: R) -> Result<Vec<Element<R>>> {
    let alg = AlgebraId::Equator;
    Ok(vec![
        Element::one(ring.clone(), alg),
        Element::generator(ring.clone(), alg, 0)?,
        Element::generator(ring, alg, 1)?.star(),
    ])
}

/// Both quasi-basis reconstructions of an element, next to its normal form.
#[derive(Clone, Debug)]
pub struct QuasiBasisWitness<R: Ring> {
    /// `Σᵢ E(a·uᵢ)·uᵢ*`.
    pub left: Element<R>,
    /// `Σᵢ uᵢ·E(uᵢ*·a)`.
    pub right: Element<R>,
    /// The normal form of `a` both sums must reproduce.
    pub original: Element<R>,
}

/// Reconstruct `a` through the conditional expectation from either side.
pub fn quasi_basis_reconstruct<R: Ring>(
    pres: &Presentation<R>,
    a: &Element<R>,
) -> Result<QuasiBasisWitness<R>> {
    if pres.algebra() != AlgebraId::Equator {
        return Err(Error::AlphabetMismatch {
            expected: AlgebraId::Equator.name().into(),
            got: pres.algebra().name().into(),
        });
    }
    let us = quasi_basis(pres.ring().clone())?;
    let mut left = Element::zero(pres.ring().clone(), pres.algebra());
    let mut right = Element::zero(pres.ring().clone(), pres.algebra());
    for u in &us {
        left = &left + &(&expectation_even(pres, &(a * u))? * &u.star());
        right = &right + &(u * &expectation_even(pres, &(&u.star() * a))?);
    }
    Ok(QuasiBasisWitness {
        left: pres.normal_form(&left)?,
        right: pres.normal_form(&right)?,
        original: pres.normal_form(a)?,
    })
}

/// The index element `Σᵢ uᵢ·uᵢ*` of the expectation, in normal form.  Its
/// value is twice the identity: the expectation has index two, matching
/// the two-sheeted covering it encodes.
pub fn expectation_index<R: Ring>(pres: &Presentation<R>) -> Result<Element<R>> {
    if pres.algebra() != AlgebraId::Equator {
        return Err(Error::AlphabetMismatch {
            expected: AlgebraId::Equator.name().into(),
            got: pres.algebra().name().into(),
        });
    }
    let us = quasi_basis(pres.ring().clone())?;
    let mut acc = Element::zero(pres.ring().clone(), pres.algebra());
    for u in &us {
        acc = &acc + &(u * &u.star());
    }
    pres.normal_form(&acc)
}

/// Convenience: the word-length filter underlying [`expectation_even`],
/// exposed for building even sample elements in tests and suites.
pub fn is_even_word(w: &Word) -> bool {
    w.0.len().is_multiple_of(2)
}
