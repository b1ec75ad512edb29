//! Truncated matrix representations of the surface algebras.
//!
//! The infinite irreducible representations act on a basis ladder
//! `e_0, e_1, ...`; truncating to `dim` levels keeps every formula exact on
//! a *protected* subspace.  A word whose letters shift the ladder by a
//! total of `d` levels maps `span{e_0, ..., e_{dim-1-d}}` exactly as the
//! untruncated operator would, because no intermediate vector escapes the
//! window.  Residual and oracle comparisons therefore restrict to the
//! protected columns; the one-dimensional `θ`-family representations have
//! no truncation error and are never restricted.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{AlgebraId, Element, Letter, Presentation, Word};
use crate::error::{Error, Result};
use crate::scalar::{Exact, Floats, GaussRat, QcPoly, C64, DEFAULT_EPS};
use crate::surfaces::{geometry_constants, Sign, SphereC, SphereParams};

// ---------------------------------------------------------------------------
// Matrix helpers
// ---------------------------------------------------------------------------

/// Largest singular value.
pub fn op_norm(m: &DMatrix<C64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let svd = nalgebra::SVD::new(m.clone(), false, false);
    svd.singular_values.iter().copied().fold(0.0, f64::max)
}

/// Largest entry magnitude.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |m - m*|` entrywise.
pub fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// `max(|uu* - 1|, |u*u - 1|)` entrywise.
pub fn unitary_deviation(u: &DMatrix<C64>) -> f64 {
    let id = DMatrix::<C64>::identity(u.nrows(), u.ncols());
    let d1 = max_abs(&(u * u.adjoint() - &id));
    let d2 = max_abs(&(u.adjoint() * u - &id));
    d1.max(d2)
}

/// Eigenvalues of a hermitian matrix, ascending.  Errors when the input
/// deviates from hermitian by more than `1e-12` entrywise.
pub fn spectrum(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    let dev = hermitian_deviation(m);
    if dev > 1e-12 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let sym = nalgebra::SymmetricEigen::new(m.clone());
    let mut vals: Vec<f64> = sym.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

// ---------------------------------------------------------------------------
// Representation kinds
// ---------------------------------------------------------------------------

/// The catalog of shipped representations, plus tags for combined ones.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum RepKind {
    /// Infinite `+` representation of the sphere family.
    SpherePlus,
    /// Infinite `-` representation (identically zero at `c = 0`).
    SphereMinus,
    /// One-dimensional sphere representation at circle angle `θ`.
    SphereTheta(f64),
    /// Infinite representation of the quantum disc.
    DiscInfinite,
    /// One-dimensional disc representation.
    DiscTheta(f64),
    /// Infinite representation of the projective plane.
    Rp2Infinite,
    /// One-dimensional projective-plane representation.
    Rp2Theta(f64),
    /// Result of `direct_sum`.
    DirectSum,
    /// Result of `conjugate_by`.
    Conjugated,
}

impl RepKind {
    /// Parse a CLI kind name; `theta` feeds the one-dimensional kinds.
    pub fn parse(name: &str, theta: f64) -> Result<RepKind> {
        match name {
            "sphere_plus" => Ok(RepKind::SpherePlus),
            "sphere_minus" => Ok(RepKind::SphereMinus),
            "sphere_theta" => Ok(RepKind::SphereTheta(theta)),
            "disc" => Ok(RepKind::DiscInfinite),
            "disc_theta" => Ok(RepKind::DiscTheta(theta)),
            "rp2" => Ok(RepKind::Rp2Infinite),
            "rp2_theta" => Ok(RepKind::Rp2Theta(theta)),
            other => Err(Error::InvalidParams(format!(
                "unknown representation kind `{other}` (expected sphere_plus, \
                 sphere_minus, sphere_theta, disc, disc_theta, rp2 or rp2_theta)"
            ))),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RepKind::SpherePlus => "sphere_plus".into(),
            RepKind::SphereMinus => "sphere_minus".into(),
            RepKind::SphereTheta(t) => format!("sphere_theta({t})"),
            RepKind::DiscInfinite => "disc".into(),
            RepKind::DiscTheta(t) => format!("disc_theta({t})"),
            RepKind::Rp2Infinite => "rp2".into(),
            RepKind::Rp2Theta(t) => format!("rp2_theta({t})"),
            RepKind::DirectSum => "direct_sum".into(),
            RepKind::Conjugated => "conjugated".into(),
        }
    }
}

/// A concrete matrix representation: one matrix per plain generator;
/// starred letters act by the adjoint.
#[derive(Clone, Debug)]
pub struct Rep {
    pub kind: RepKind,
    pub algebra: AlgebraId,
    pub q: f64,
    /// Sphere parameter; `Infinity` also stands in for the disc and the
    /// projective plane, which have no `c`.
    pub c: SphereC,
    pub dim: usize,
    /// Ladder lengths of the direct summands (`[dim]` when irreducible).
    pub blocks: Vec<usize>,
    /// One-dimensional kinds multiply exactly; no protected-column
    /// restriction is ever needed.
    pub exact_multiplicative: bool,
    /// The `c = 0` minus representation is identically zero.
    pub trivial: bool,
    /// At `c = 0` the `θ`-family collapses: all angles give the same
    /// (zero) image of the off-diagonal generator.
    pub theta_degenerate: bool,
    mats: Vec<DMatrix<C64>>,
}

impl Rep {
    /// Matrix of the `gen`-th plain generator.
    pub fn generator_matrix(&self, gen: usize) -> &DMatrix<C64> {
        &self.mats[gen]
    }

    /// Matrix of a letter (adjoint for starred letters).
    pub fn letter_matrix(&self, l: Letter) -> DMatrix<C64> {
        let m = &self.mats[l.gen as usize];
        if l.star {
            m.adjoint()
        } else {
            m.clone()
        }
    }

    /// Columns on which words of the given shift degree act exactly.
    pub fn protected_columns(&self, degree: usize) -> Vec<usize> {
        if self.exact_multiplicative {
            return (0..self.dim).collect();
        }
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
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

fn check_dim(dim: usize) -> Result<()> {
    if dim < 4 {
        return Err(Error::InvalidParams(format!(
            "truncation dimension must be at least 4, got {dim}"
        )));
    }
    Ok(())
}

fn sphere_infinite(p: &SphereParams, sign: Sign, dim: usize) -> (DMatrix<C64>, DMatrix<C64>) {
    let g = geometry_constants(p);
    let a = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            C64::new(g.a_eigenvalue(sign, i), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let b = DMatrix::from_fn(dim, dim, |i, j| {
        if j >= 1 && i + 1 == j {
            C64::new(g.b_weight_sq(sign, j).max(0.0).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    (a, b)
}

/// Build a representation.  `q` is the deformation parameter of the
/// represented algebra itself (pass `q⁴` to realise the disc inside the
/// equatorial sphere); `c` is consulted only by the sphere kinds.  The
/// one-dimensional kinds ignore `dim`.
pub fn build_rep(kind: RepKind, q: f64, c: SphereC, dim: usize) -> Result<Rep> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParams(format!(
            "q must lie strictly between 0 and 1, got {q}"
        )));
    }
    let zero = C64::new(0.0, 0.0);
    match kind {
        RepKind::SpherePlus | RepKind::SphereMinus => {
            check_dim(dim)?;
            let p = SphereParams::new(q, c)?;
            let sign = if kind == RepKind::SpherePlus { Sign::Plus } else { Sign::Minus };
            let (a, b) = sphere_infinite(&p, sign, dim);
            let trivial =
                sign == Sign::Minus && matches!(c, SphereC::Finite(cv) if cv == 0.0);
            let algebra = if c.is_infinite() { AlgebraId::Equator } else { AlgebraId::Sphere };
            Ok(Rep {
                kind,
                algebra,
                q,
                c,
                dim,
                blocks: vec![dim],
                exact_multiplicative: false,
                trivial,
                theta_degenerate: false,
                mats: vec![a, b],
            })
        }
        RepKind::SphereTheta(theta) => {
            let p = SphereParams::new(q, c)?;
            let phase = C64::from_polar(1.0, theta);
            let (b_val, degenerate) = match p.c {
                SphereC::Finite(cv) => (phase * cv.sqrt(), cv == 0.0),
                SphereC::Infinity => (phase, false),
            };
            let a = DMatrix::from_element(1, 1, zero);
            let b = DMatrix::from_element(1, 1, b_val);
            let algebra = if c.is_infinite() { AlgebraId::Equator } else { AlgebraId::Sphere };
            Ok(Rep {
                kind,
                algebra,
                q,
                c,
                dim: 1,
                blocks: vec![1],
                exact_multiplicative: true,
                trivial: false,
                theta_degenerate: degenerate,
                mats: vec![a, b],
            })
        }
        RepKind::DiscInfinite => {
            check_dim(dim)?;
            let x = DMatrix::from_fn(dim, dim, |i, j| {
                if i == j + 1 {
                    C64::new((1.0 - q.powi(j as i32 + 1)).sqrt(), 0.0)
                } else {
                    zero
                }
            });
            Ok(Rep {
                kind,
                algebra: AlgebraId::Disc,
                q,
                c: SphereC::Infinity,
                dim,
                blocks: vec![dim],
                exact_multiplicative: false,
                trivial: false,
                theta_degenerate: false,
                mats: vec![x],
            })
        }
        RepKind::DiscTheta(theta) => {
            let x = DMatrix::from_element(1, 1, C64::from_polar(1.0, theta));
            Ok(Rep {
                kind,
                algebra: AlgebraId::Disc,
                q,
                c: SphereC::Infinity,
                dim: 1,
                blocks: vec![1],
                exact_multiplicative: true,
                trivial: false,
                theta_degenerate: false,
                mats: vec![x],
            })
        }
        RepKind::Rp2Infinite => {
            check_dim(dim)?;
            let p = DMatrix::from_fn(dim, dim, |i, j| {
                if i == j {
                    C64::new(q.powi(4 * i as i32), 0.0)
                } else {
                    zero
                }
            });
            let t = DMatrix::from_fn(dim, dim, |i, j| {
                if j >= 1 && i + 1 == j {
                    let k = j as i32;
                    C64::new(
                        q.powi(2 * (k - 1)) * (1.0 - q.powi(4 * k)).sqrt(),
                        0.0,
                    )
                } else {
                    zero
                }
            });
            let r = DMatrix::from_fn(dim, dim, |i, j| {
                if j >= 2 && i + 2 == j {
                    let k = j as i32;
                    C64::new(
                        ((1.0 - q.powi(4 * k)) * (1.0 - q.powi(4 * (k - 1)))).sqrt(),
                        0.0,
                    )
                } else {
                    zero
                }
            });
            Ok(Rep {
                kind,
                algebra: AlgebraId::Rp2,
                q,
                c: SphereC::Infinity,
                dim,
                blocks: vec![dim],
                exact_multiplicative: false,
                trivial: false,
                theta_degenerate: false,
                mats: vec![p, r, t],
            })
        }
        RepKind::Rp2Theta(theta) => {
            let p = DMatrix::from_element(1, 1, zero);
            let r = DMatrix::from_element(1, 1, C64::from_polar(1.0, theta));
            let t = DMatrix::from_element(1, 1, zero);
            Ok(Rep {
                kind,
                algebra: AlgebraId::Rp2,
                q,
                c: SphereC::Infinity,
                dim: 1,
                blocks: vec![1],
                exact_multiplicative: true,
                trivial: false,
                theta_degenerate: false,
                mats: vec![p, r, t],
            })
        }
        RepKind::DirectSum | RepKind::Conjugated => Err(Error::InvalidParams(
            "combined kinds are built with direct_sum / conjugate_by".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

fn check_context(a: &Element<Floats>, rep: &Rep) -> Result<()> {
    if a.algebra() != rep.algebra {
        return Err(Error::AlphabetMismatch {
            expected: rep.algebra.name().into(),
            got: a.algebra().name().into(),
        });
    }
    let ring = a.ring();
    if ring.q != rep.q {
        return Err(Error::BackendMismatch(format!(
            "element context has q = {}, representation has q = {}",
            ring.q, rep.q
        )));
    }
    if rep.algebra == AlgebraId::Sphere && ring.c != rep.c.finite() {
        return Err(Error::BackendMismatch(format!(
            "element context has c = {:?}, representation has c = {}",
            ring.c, rep.c
        )));
    }
    Ok(())
}

/// Evaluate an element in a representation.
pub fn represent(a: &Element<Floats>, rep: &Rep) -> Result<DMatrix<C64>> {
    check_context(a, rep)?;
    let n = rep.dim;
    let mut acc = DMatrix::<C64>::zeros(n, n);
    for (w, k) in a.terms() {
        let mut m = DMatrix::<C64>::identity(n, n);
        for &l in &w.0 {
            m *= rep.letter_matrix(l);
        }
        acc += m * *k;
    }
    Ok(acc)
}

/// Residuals of the defining relations in a representation, measured in
/// operator norm on the protected columns.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub per_rule: Vec<(String, f64)>,
    pub max: f64,
}

pub fn relation_residual(pres: &Presentation<Floats>, rep: &Rep) -> Result<ResidualReport> {
    let mut per_rule = Vec::new();
    let mut max = 0.0f64;
    for (label, rel) in pres.relation_elements() {
        let m = represent(&rel, rep)?;
        let cols = rep.protected_columns(rel.shift_degree());
        let res = if cols.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "truncation dimension {} leaves no protected columns for `{label}`",
                rep.dim
            )));
        } else {
            op_norm(&m.select_columns(&cols))
        };
        max = max.max(res);
        per_rule.push((label, res));
    }
    Ok(ResidualReport { per_rule, max })
}

/// Distance, in operator norm on the protected columns, between an element
/// and its normal form after both are evaluated in a representation.  This
/// is the matrix oracle for confluence of the rewrite systems.
pub fn oracle_residual(
    pres: &Presentation<Floats>,
    rep: &Rep,
    a: &Element<Floats>,
) -> Result<f64> {
    let nf = pres.normal_form(a)?;
    let m1 = represent(a, rep)?;
    let m2 = represent(&nf, rep)?;
    let degree = a.shift_degree().max(nf.shift_degree());
    let cols = rep.protected_columns(degree);
    if cols.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "truncation dimension {} leaves no protected columns for degree {degree}",
            rep.dim
        )));
    }
    Ok(op_norm(&(m1 - m2).select_columns(&cols)))
}

/// Binary exponentiation for exact rationals.
fn rat_pow(base: &BigRational, mut e: u64) -> BigRational {
    let mut result = BigRational::one();
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result *= &sq;
        }
        sq = &sq * &sq;
        e >>= 1;
    }
    result
}

/// Evaluate a symbolic coefficient at an exact rational deformation value.
/// Fails if the coefficient involves the sphere parameter.
fn eval_coeff_exact(p: &QcPoly, q: &BigRational) -> Result<GaussRat> {
    let mut acc = GaussRat::new(BigRational::zero(), BigRational::zero());
    for (qe, ce, v) in p.iter() {
        if ce != 0 {
            return Err(Error::InvalidParams(
                "exact oracle coefficients must not involve the sphere parameter".into(),
            ));
        }
        let f = if qe >= 0 {
            rat_pow(q, qe as u64)
        } else {
            rat_pow(q, (-qe) as u64).recip()
        };
        acc += v.clone() * f;
    }
    Ok(acc)
}

/// Certified variant of [`oracle_residual`] for a single word.
///
/// Normal forms of words mixing starred and unstarred shifts can carry
/// individual coefficients that are astronomically larger than the final,
/// almost-cancelled sum (1e25 is routine at moderate word length), so
/// evaluating the normal form term-by-term in floating point destroys the
/// comparison. This variant exploits the structure of the bases: every
/// rewrite preserves the signed shift of a word, hence all normal-form terms
/// of a single word share one shift tail and differ only in the power of the
/// diagonal generator in front. The matrix of the normal form is then
/// `diag(s_0, ..., s_{n-1}) * tail`, where each `s_r` is a scalar sum that we
/// evaluate in exact rational arithmetic before rounding once to f64.
///
/// Supports the representations whose diagonal generator acts as
/// `diag(q^{step*k})`: the plus half of the equatorial ladder (`step = 2`)
/// and the projective-plane ladder (`step = 4`).
pub fn exact_oracle_residual(
    pres: &Presentation<Exact>,
    rep: &Rep,
    w: &Word,
) -> Result<f64> {
    let step: u64 = match rep.kind {
        RepKind::SpherePlus if rep.c == SphereC::Infinity => 2,
        RepKind::Rp2Infinite => 4,
        _ => {
            return Err(Error::InvalidParams(
                "exact oracle supports the equatorial plus ladder and the projective-plane ladder"
                    .into(),
            ))
        }
    };
    let algebra = rep.algebra;
    if pres.algebra() != algebra {
        return Err(Error::AlphabetMismatch {
            expected: algebra.name().into(),
            got: pres.algebra().name().into(),
        });
    }
    let diag = Letter::plain(0);

    let a = Element::from_word(Exact, algebra, w.clone(), QcPoly::from_int(1));
    let nf = pres.normal_form(&a)?;

    // Split each normal-form term as diag^m * tail and check the tails agree.
    let mut tail: Option<Vec<Letter>> = None;
    let mut diag_terms: Vec<(u64, QcPoly)> = Vec::new();
    for (word, coeff) in nf.terms() {
        let m = word.0.iter().take_while(|l| **l == diag).count();
        let rest = word.0[m..].to_vec();
        match &tail {
            None => tail = Some(rest),
            Some(t) if *t == rest => {}
            Some(_) => {
                return Err(Error::Numerics(
                    "normal-form terms do not share a single shift tail".into(),
                ))
            }
        }
        diag_terms.push((m as u64, coeff.clone()));
    }

    let ring = Floats::new(rep.q, DEFAULT_EPS)?;
    let tail_word = Word(tail.unwrap_or_default());
    let tail_mat = represent(
        &Element::from_word(ring, algebra, tail_word, C64::new(1.0, 0.0)),
        rep,
    )?;

    // Exact diagonal sums: s_r = sum_m coeff_m * q^{step*m*r}.
    let q_rat = BigRational::from_float(rep.q).ok_or_else(|| {
        Error::InvalidParams(format!("deformation parameter {} is not finite", rep.q))
    })?;
    let n = rep.dim;
    let zero = GaussRat::new(BigRational::zero(), BigRational::zero());
    let mut sums = vec![zero; n];
    for (m, coeff) in &diag_terms {
        let factor = rat_pow(&q_rat, step * m);
        let mut value = eval_coeff_exact(coeff, &q_rat)?;
        for s in sums.iter_mut() {
            *s += value.clone();
            value *= factor.clone();
        }
    }

    let mut semiexact = tail_mat;
    for r in 0..n {
        let re = sums[r].re.to_f64().unwrap_or(f64::NAN);
        let im = sums[r].im.to_f64().unwrap_or(f64::NAN);
        let s = C64::new(re, im);
        for k in 0..n {
            semiexact[(r, k)] *= s;
        }
    }

    let direct = represent(&a.to_float(ring)?, rep)?;
    let degree = a.shift_degree().max(nf.shift_degree());
    let cols = rep.protected_columns(degree);
    if cols.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "truncation dimension {} leaves no protected columns for degree {degree}",
            rep.dim
        )));
    }
    Ok(op_norm(&(direct - semiexact).select_columns(&cols)))
}

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

/// Block-diagonal direct sum of two representations of the same algebra
/// with identical parameters.
pub fn direct_sum(a: &Rep, b: &Rep) -> Result<Rep> {
    if a.algebra != b.algebra {
        return Err(Error::AlphabetMismatch {
            expected: a.algebra.name().into(),
            got: b.algebra.name().into(),
        });
    }
    if a.q != b.q || a.c != b.c {
        return Err(Error::BackendMismatch(format!(
            "direct summands disagree on parameters: (q={}, c={}) vs (q={}, c={})",
            a.q, a.c, b.q, b.c
        )));
    }
    let n = a.dim + b.dim;
    let mats = a
        .mats
        .iter()
        .zip(&b.mats)
        .map(|(ma, mb)| {
            let mut m = DMatrix::<C64>::zeros(n, n);
            m.view_mut((0, 0), (a.dim, a.dim)).copy_from(ma);
            m.view_mut((a.dim, a.dim), (b.dim, b.dim)).copy_from(mb);
            m
        })
        .collect();
    let mut blocks = a.blocks.clone();
    blocks.extend_from_slice(&b.blocks);
    Ok(Rep {
        kind: RepKind::DirectSum,
        algebra: a.algebra,
        q: a.q,
        c: a.c,
        dim: n,
        blocks,
        exact_multiplicative: a.exact_multiplicative && b.exact_multiplicative,
        trivial: a.trivial && b.trivial,
        theta_degenerate: a.theta_degenerate && b.theta_degenerate,
        mats,
    })
}

/// The faithful direct sum `plus ⊕ minus` of the two infinite sphere
/// representations, with blocks `[n, n]`.
pub fn sphere_pm(q: f64, c: SphereC, n: usize) -> Result<Rep> {
    let plus = build_rep(RepKind::SpherePlus, q, c, n)?;
    let minus = build_rep(RepKind::SphereMinus, q, c, n)?;
    direct_sum(&plus, &minus)
}

/// Conjugate a representation by a unitary.  The caller is expected to use
/// ladder-compatible unitaries (e.g. diagonal sign flips); the protected
/// column bookkeeping is carried over unchanged.
pub fn conjugate_by(rep: &Rep, u: &DMatrix<C64>) -> Result<Rep> {
    if u.nrows() != rep.dim || u.ncols() != rep.dim {
        return Err(Error::DimensionMismatch(format!(
            "unitary is {}x{}, representation dimension is {}",
            u.nrows(),
            u.ncols(),
            rep.dim
        )));
    }
    let dev = unitary_deviation(u);
    if dev > 1e-12 {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let uh = u.adjoint();
    let mats = rep.mats.iter().map(|m| u * m * &uh).collect();
    Ok(Rep {
        kind: RepKind::Conjugated,
        mats,
        blocks: rep.blocks.clone(),
        ..rep.clone()
    })
}
