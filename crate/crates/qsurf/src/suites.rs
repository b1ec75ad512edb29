//! The verification suite catalog.
//!
//! Each suite turns one slice of the theory into a deterministic list of
//! [`Check`]s: exact statements on the symbolic backend, residual bounds
//! on the operator backend, and integer invariants.  All sampling is
//! driven by a counter-based generator seeded from the configuration, so
//! a report depends only on its configuration.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraId, Element, Letter, Presentation, StarHom, Word};
use crate::error::{Error, Result};
use crate::ktheory;
use crate::morphisms::{self, MatrixHom};
use crate::report::{Check, SuiteConfig, VerificationReport};
use crate::reps::{self, build_rep, max_abs, represent, RepKind};
use crate::scalar::{Exact, Floats, QcPoly, C64};
use crate::surfaces::{self, SphereC, SphereParams, Sign};

/// Suite identifiers with one-line descriptions, in execution order.
pub const SUITES: &[(&str, &str)] = &[
    ("relations", "defining relations: symbolic normal forms and operator residuals"),
    ("bases-oracle", "random words against the matrix oracle; basis-form invariants"),
    ("geometry", "cartesian embedding identity, ladder heights, equatorial circle"),
    ("chi", "cross-parameter isomorphism: entrywise images and multiplicativity"),
    ("actions", "circle action, reflections, equivariance, obstruction pair"),
    ("disc", "quantum disc: relations, sphere embedding, defect"),
    ("rp2-reps", "projective plane: representation, factorizations, spectrum"),
    ("ktheory", "defect ranks, spectral matrix units, expectation and quasi-basis"),
    ("all", "every suite above, concatenated"),
];

fn salted_rng(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn validate(cfg: &SuiteConfig) -> Result<()> {
    if !(cfg.q > 0.0 && cfg.q < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "q must lie strictly between 0 and 1, got {}",
            cfg.q
        )));
    }
    if let SphereC::Finite(c) = cfg.c {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidConfig(format!("c must be >= 0, got {c}")));
        }
    }
    if cfg.dim < 16 {
        return Err(Error::InvalidConfig(format!(
            "dim must be at least 16, got {}",
            cfg.dim
        )));
    }
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "tol must be positive, got {}",
            cfg.tol
        )));
    }
    Ok(())
}

/// Run one suite (or `all`) under a validated configuration.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    validate(cfg)?;
    let checks = match cfg.suite.as_str() {
        "relations" => relations(cfg)?,
        "bases-oracle" => bases_oracle(cfg)?,
        "geometry" => geometry(cfg)?,
        "chi" => chi(cfg)?,
        "actions" => actions(cfg)?,
        "disc" => disc(cfg)?,
        "rp2-reps" => rp2_reps(cfg)?,
        "ktheory" => ktheory_suite(cfg)?,
        "all" => {
            let mut all = Vec::new();
            all.extend(relations(cfg)?);
            all.extend(bases_oracle(cfg)?);
            all.extend(geometry(cfg)?);
            all.extend(chi(cfg)?);
            all.extend(actions(cfg)?);
            all.extend(disc(cfg)?);
            all.extend(rp2_reps(cfg)?);
            all.extend(ktheory_suite(cfg)?);
            all
        }
        other => return Err(Error::UnknownSuite(other.into())),
    };
    Ok(VerificationReport::new(cfg.clone(), checks))
}

// ---------------------------------------------------------------------------
// Sampling helpers
// ---------------------------------------------------------------------------

fn letter_pool(algebra: AlgebraId) -> Vec<Letter> {
    let mut pool = Vec::new();
    for (gi, g) in algebra.gens().iter().enumerate() {
        pool.push(Letter::plain(gi));
        if !g.self_adjoint {
            pool.push(Letter::starred(gi));
        }
    }
    pool
}

fn random_word(rng: &mut ChaCha8Rng, algebra: AlgebraId, max_len: usize) -> Word {
    let pool = letter_pool(algebra);
    let len = rng.gen_range(1..=max_len);
    Word((0..len).map(|_| pool[rng.gen_range(0..pool.len())]).collect())
}

fn random_exact_element(
    rng: &mut ChaCha8Rng,
    algebra: AlgebraId,
    max_len: usize,
    max_terms: usize,
) -> Element<Exact> {
    let terms = rng.gen_range(1..=max_terms);
    let mut acc = Element::zero(Exact, algebra);
    for _ in 0..terms {
        let word = if rng.gen_bool(0.1) {
            Word::empty()
        } else {
            random_word(rng, algebra, max_len)
        };
        let mut k = QcPoly::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        if rng.gen_bool(0.3) {
            k = k.mul(&QcPoly::i());
        }
        acc = &acc + &Element::from_word(Exact, algebra, word, k);
    }
    acc
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> C64 {
    C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// The finite `c` grid every sphere check walks, extended by the
/// configured value when it is finite.
fn c_grid(cfg: &SuiteConfig) -> Vec<f64> {
    let mut grid = vec![0.0, 0.5, 1.0, 10.0];
    if let SphereC::Finite(c) = cfg.c {
        if !grid.contains(&c) {
            grid.push(c);
        }
    }
    grid
}

fn q_grid(cfg: &SuiteConfig) -> Vec<f64> {
    let mut grid = vec![0.3, 0.5, 0.9];
    if !grid.contains(&cfg.q) {
        grid.push(cfg.q);
    }
    grid
}

fn fmt_c(c: f64) -> String {
    format!("{c}")
}

// ---------------------------------------------------------------------------
// relations
// ---------------------------------------------------------------------------

fn relations(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut rng = salted_rng(cfg, 1);

    // Symbolic: every defining relation of every algebra normalizes to
    // zero with q (and c) kept symbolic.
    for alg in [AlgebraId::Equator, AlgebraId::Sphere, AlgebraId::Disc, AlgebraId::Rp2] {
        let pres = surfaces::build_presentation(alg, Exact)?;
        let mut ok = true;
        for (_, rel) in pres.relation_elements() {
            ok &= pres.normal_form(&rel)?.is_structurally_zero();
        }
        checks.push(Check::exact(
            format!("relations.exact.{}", alg.name()),
            format!(
                "defining relations of {} normalize to zero symbolically",
                alg.name()
            ),
            ok,
        ));
    }

    // Confluence samples: normalizing a product must agree with
    // normalizing its normalized factors.
    for alg in [AlgebraId::Equator, AlgebraId::Sphere, AlgebraId::Disc, AlgebraId::Rp2] {
        let pres = surfaces::build_presentation(alg, Exact)?;
        let mut ok = true;
        for _ in 0..40 {
            let u = Element::from_word(
                Exact,
                alg,
                random_word(&mut rng, alg, 4),
                QcPoly::from_int(1),
            );
            let v = Element::from_word(
                Exact,
                alg,
                random_word(&mut rng, alg, 4),
                QcPoly::from_int(1),
            );
            let direct = pres.normal_form(&(&u * &v))?;
            let staged = pres.normal_form(&(&pres.normal_form(&u)? * &pres.normal_form(&v)?))?;
            ok &= direct == staged;
        }
        checks.push(Check::exact(
            format!("relations.confluence.{}", alg.name()),
            format!("staged and direct normal forms agree on {}", alg.name()),
            ok,
        ));
    }

    // Operator residuals across the parameter grid.
    for q in q_grid(cfg) {
        let qs = format!("{q}");
        // Equatorial sphere.
        let ring = Floats::new(q, cfg.tol)?;
        let pres = surfaces::equator(ring);
        for (kind, label) in [
            (RepKind::SpherePlus, "plus"),
            (RepKind::SphereMinus, "minus"),
        ] {
            let rep = build_rep(kind, q, SphereC::Infinity, cfg.dim)?;
            let r = reps::relation_residual(&pres, &rep)?;
            checks.push(Check::residual(
                format!("relations.rep.q={qs}.equator.{label}"),
                format!("equatorial ladder ({label}) satisfies the relations at q={qs}"),
                r.max,
                cfg.tol,
            ));
        }
        let theta_rep = build_rep(RepKind::SphereTheta(0.7), q, SphereC::Infinity, 1)?;
        let r = reps::relation_residual(&pres, &theta_rep)?;
        checks.push(Check::residual(
            format!("relations.rep.q={qs}.equator.theta"),
            format!("equatorial circle point satisfies the relations at q={qs}"),
            r.max,
            cfg.tol,
        ));

        // Finite-c spheres.
        for c in c_grid(cfg) {
            let ring = Floats::with_c(q, c, cfg.tol)?;
            let pres = surfaces::build_presentation(AlgebraId::Sphere, ring)?;
            let mut worst = 0.0f64;
            for kind in [RepKind::SpherePlus, RepKind::SphereMinus] {
                let rep = build_rep(kind, q, SphereC::Finite(c), cfg.dim)?;
                worst = worst.max(reps::relation_residual(&pres, &rep)?.max);
            }
            if c > 0.0 {
                let rep = build_rep(RepKind::SphereTheta(1.3), q, SphereC::Finite(c), 1)?;
                worst = worst.max(reps::relation_residual(&pres, &rep)?.max);
            }
            checks.push(Check::residual(
                format!("relations.rep.q={qs}.sphere.c={}", fmt_c(c)),
                format!("sphere ladders satisfy the relations at q={qs}, c={}", fmt_c(c)),
                worst,
                cfg.tol,
            ));
        }

        // Disc and projective plane.
        let ring = Floats::new(q, cfg.tol)?;
        let pres = surfaces::build_presentation(AlgebraId::Disc, ring)?;
        let mut worst = reps::relation_residual(
            &pres,
            &build_rep(RepKind::DiscInfinite, q, SphereC::Infinity, cfg.dim)?,
        )?
        .max;
        worst = worst.max(
            reps::relation_residual(
                &pres,
                &build_rep(RepKind::DiscTheta(2.1), q, SphereC::Infinity, 1)?,
            )?
            .max,
        );
        checks.push(Check::residual(
            format!("relations.rep.q={qs}.disc"),
            format!("disc ladder and circle point satisfy the relations at q={qs}"),
            worst,
            cfg.tol,
        ));

        let pres = surfaces::build_presentation(AlgebraId::Rp2, ring)?;
        let mut worst = reps::relation_residual(
            &pres,
            &build_rep(RepKind::Rp2Infinite, q, SphereC::Infinity, cfg.dim)?,
        )?
        .max;
        worst = worst.max(
            reps::relation_residual(
                &pres,
                &build_rep(RepKind::Rp2Theta(0.4), q, SphereC::Infinity, 1)?,
            )?
            .max,
        );
        checks.push(Check::residual(
            format!("relations.rep.q={qs}.rp2"),
            format!("projective-plane ladder and circle point satisfy the relations at q={qs}"),
            worst,
            cfg.tol,
        ));
    }

    Ok(checks)
}

// ---------------------------------------------------------------------------
// bases-oracle
// ---------------------------------------------------------------------------

fn oracle_block(
    cfg: &SuiteConfig,
    rng: &mut ChaCha8Rng,
    algebra: AlgebraId,
    kind: RepKind,
    words: usize,
    max_len: usize,
) -> Result<Vec<Check>> {
    let exact_pres = surfaces::build_presentation(algebra, Exact)?;
    let ring = Floats::new(cfg.q, cfg.tol)?;
    let pres = surfaces::build_presentation(algebra, ring)?;
    let rep = build_rep(kind, cfg.q, SphereC::Infinity, cfg.dim)?;

    let mut worst = 0.0f64;
    let mut idempotent = true;
    let mut basis_form = true;
    for _ in 0..words {
        let w = random_word(rng, algebra, max_len);
        worst = worst.max(reps::exact_oracle_residual(&exact_pres, &rep, &w)?);
        let a = Element::from_word(ring, algebra, w, C64::new(1.0, 0.0));
        let nf = pres.normal_form(&a)?;
        idempotent &= pres.normal_form(&nf)? == nf;
        basis_form &= nf.terms().all(|(w, _)| pres.is_basis_word(w));
    }
    let name = algebra.name();
    Ok(vec![
        Check::residual(
            format!("bases.{name}.oracle"),
            format!("{words} random {name} words match the matrix oracle after normalization"),
            worst,
            cfg.tol,
        ),
        Check::exact(
            format!("bases.{name}.idempotent"),
            format!("normalization is idempotent on random {name} words"),
            idempotent,
        ),
        Check::exact(
            format!("bases.{name}.basis-form"),
            format!("normal forms of random {name} words contain only basis words"),
            basis_form,
        ),
    ])
}

fn bases_oracle(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rng = salted_rng(cfg, 2);
    let mut checks = Vec::new();
    checks.extend(oracle_block(
        cfg,
        &mut rng,
        AlgebraId::Equator,
        RepKind::SpherePlus,
        500,
        8,
    )?);
    checks.extend(oracle_block(
        cfg,
        &mut rng,
        AlgebraId::Rp2,
        RepKind::Rp2Infinite,
        500,
        6,
    )?);

    // Cross-backend agreement: normalize symbolically, evaluate at the
    // configured q, and compare coefficient by coefficient with the float
    // normalization.
    let exact_pres = surfaces::equator(Exact);
    let ring = Floats::new(cfg.q, cfg.tol)?;
    let float_pres = surfaces::equator(ring);
    let mut worst = 0.0f64;
    for _ in 0..40 {
        let w = random_word(&mut rng, AlgebraId::Equator, 6);
        let nf_exact = exact_pres.normal_form(&Element::from_word(
            Exact,
            AlgebraId::Equator,
            w.clone(),
            QcPoly::from_int(1),
        ))?;
        let nf_float = float_pres.normal_form(&Element::from_word(
            ring,
            AlgebraId::Equator,
            w,
            C64::new(1.0, 0.0),
        ))?;
        let words: BTreeSet<Word> = nf_exact
            .terms()
            .map(|(w, _)| w.clone())
            .chain(nf_float.terms().map(|(w, _)| w.clone()))
            .collect();
        for word in words {
            let ev = nf_exact
                .coeff(&word)
                .map_or(Ok(C64::new(0.0, 0.0)), |k| k.eval(cfg.q, None))?;
            let fv = nf_float.coeff(&word).copied().unwrap_or(C64::new(0.0, 0.0));
            worst = worst.max((ev - fv).norm() / ev.norm().max(1.0));
        }
    }
    checks.push(Check::residual(
        "bases.equator.exact-float",
        "symbolic normal forms evaluated at q agree with float normal forms",
        worst,
        cfg.tol,
    ));

    Ok(checks)
}

// ---------------------------------------------------------------------------
// geometry
// ---------------------------------------------------------------------------

fn geometry(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rng = salted_rng(cfg, 3);
    let mut checks = Vec::new();

    let mut cs: Vec<SphereC> = c_grid(cfg).into_iter().map(SphereC::Finite).collect();
    cs.push(SphereC::Infinity);

    for c in cs {
        let cl = format!("{c}");
        let params = SphereParams::new(cfg.q, c)?;
        let coords = surfaces::cartesian_coordinates(&params, cfg.tol)?;
        let g = &coords.constants;

        // Algebraic identity x² + y² + z² = 1 after normalization.
        let sum = &(&(&coords.x * &coords.x) + &(&coords.y * &coords.y))
            + &(&coords.z * &coords.z);
        let one = Element::one(*coords.presentation.ring(), coords.presentation.algebra());
        let nf = coords.presentation.normal_form(&(&sum - &one))?;
        checks.push(Check::residual(
            format!("geometry.identity.c={cl}"),
            format!("x² + y² + z² - 1 normalizes to zero at c={cl}"),
            nf.max_abs(),
            1e-12,
        ));

        // The same identity through the faithful ladder sum.
        let rep = reps::sphere_pm(cfg.q, c, cfg.dim)?;
        let m = represent(&(&sum - &one), &rep)?;
        let cols = rep.protected_columns(2);
        let residual = reps::op_norm(&m.select_columns(&cols));
        checks.push(Check::residual(
            format!("geometry.identity-rep.c={cl}"),
            format!("the represented coordinate identity vanishes at c={cl}"),
            residual,
            1e-12,
        ));

        // Ladder heights: the diagonal of the represented z matches the
        // closed-form levels on each summand.
        let mut worst = 0.0f64;
        for (kind, sign) in [
            (RepKind::SpherePlus, Sign::Plus),
            (RepKind::SphereMinus, Sign::Minus),
        ] {
            let rep = build_rep(kind, cfg.q, c, cfg.dim)?;
            let zm = represent(&coords.z, &rep)?;
            let ladder = surfaces::z_ladder(&params, sign, cfg.dim - 1);
            for (k, expect) in ladder.iter().enumerate() {
                worst = worst.max((zm[(k, k)].re - expect).abs());
                worst = worst.max(zm[(k, k)].im.abs());
            }
        }
        checks.push(Check::residual(
            format!("geometry.ladder.c={cl}"),
            format!("represented heights match the closed-form ladder at c={cl}"),
            worst,
            1e-10,
        ));

        // Ladder convergence toward the limit height.
        let plus = surfaces::z_ladder(&params, Sign::Plus, 40);
        checks.push(Check::residual(
            format!("geometry.ladder-limit.c={cl}"),
            format!("the descending ladder reaches its limit height by level 40 at c={cl}"),
            (plus[40] - g.z_inf).abs(),
            1e-8,
        ));

        // Circle points sit on the circle of radius √(1 - z_∞²) at height
        // z_∞.
        if c.is_positive() {
            let mut worst_height = 0.0f64;
            let mut worst_radius = 0.0f64;
            for _ in 0..8 {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                let rep = build_rep(RepKind::SphereTheta(theta), cfg.q, c, 1)?;
                let x = represent(&coords.x, &rep)?[(0, 0)];
                let y = represent(&coords.y, &rep)?[(0, 0)];
                let z = represent(&coords.z, &rep)?[(0, 0)];
                worst_height = worst_height.max((z - C64::new(g.z_inf, 0.0)).norm());
                let radius_sq = x.norm_sqr() + y.norm_sqr();
                worst_radius = worst_radius.max((radius_sq - (1.0 - g.z_inf * g.z_inf)).abs());
                worst_radius = worst_radius.max(x.im.abs().max(y.im.abs()));
            }
            checks.push(Check::residual(
                format!("geometry.circle.c={cl}"),
                format!("circle points lie at height z_inf with squared radius 1 - z_inf² at c={cl}"),
                worst_height.max(worst_radius),
                1e-12,
            ));
        }
    }

    Ok(checks)
}

impl SphereC {
    fn is_positive(self) -> bool {
        match self {
            SphereC::Finite(c) => c > 0.0,
            SphereC::Infinity => true,
        }
    }
}

// ---------------------------------------------------------------------------
// chi
// ---------------------------------------------------------------------------

fn chi_c_grid(cfg: &SuiteConfig) -> Vec<f64> {
    let mut grid = vec![0.5, 1.0, 10.0];
    if let SphereC::Finite(c) = cfg.c {
        if c > 0.0 && !grid.contains(&c) {
            grid.push(c);
        }
    }
    grid
}

fn chi(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    for c in chi_c_grid(cfg) {
        let cl = fmt_c(c);
        let chi = morphisms::chi_c(cfg.q, SphereC::Finite(c), cfg.dim)?;
        let mut worst = 0.0f64;
        for g in 0..2 {
            worst = worst.max(max_abs(
                &(chi.hom.image(g) - chi.sphere_rep.generator_matrix(g)),
            ));
        }
        checks.push(Check::residual(
            format!("chi.images.c={cl}"),
            format!("functional-calculus images equal the c={cl} ladder generators entrywise"),
            worst,
            1e-12,
        ));

        let ring = Floats::with_c(cfg.q, c, cfg.tol)?;
        let pres = surfaces::build_presentation(AlgebraId::Sphere, ring)?;
        let r = chi.hom.relation_residuals(&pres)?;
        checks.push(Check::residual(
            format!("chi.relations.c={cl}"),
            format!("the images satisfy the c={cl} sphere relations"),
            r.max,
            cfg.tol,
        ));
    }

    checks.push(Check::exact(
        "chi.rejects-degenerate",
        "the cross-parameter map refuses c = 0",
        morphisms::chi_c(cfg.q, SphereC::Finite(0.0), cfg.dim).is_err(),
    ));

    let id_chi = morphisms::chi_c(cfg.q, SphereC::Infinity, cfg.dim)?;
    let identity = (0..2).all(|g| {
        max_abs(&(id_chi.hom.image(g) - id_chi.equator_rep.generator_matrix(g))) == 0.0
    });
    checks.push(Check::exact(
        "chi.identity-at-infinity",
        "at c = inf the map is the identity on the equatorial ladder sum",
        identity,
    ));

    // The ladder weights c_+(k) = t - t² + c (t = λ₊q^{2k}) are not always
    // injective in k: c_+(k₁) = c_+(k₂) exactly when q^{2k₁} + q^{2k₂} = 1/λ₊.
    // For the level pair (1, 2) that equation reads u + u² = 1/λ₊ in u = q²,
    // solved in closed form; the resulting q lies in (0, 1) for every c ≥ 0.
    let c_fixed = match cfg.c {
        SphereC::Finite(v) => v,
        SphereC::Infinity => 1.0,
    };
    let lambda_plus = 0.5 + (c_fixed + 0.25).sqrt();
    let u = 0.5 * ((1.0 + 4.0 / lambda_plus).sqrt() - 1.0);
    let q_star = u.sqrt();
    let gap = if 0.0 < q_star && q_star < 1.0 {
        let p = SphereParams::new(q_star, SphereC::Finite(c_fixed))?;
        let g = surfaces::geometry_constants(&p);
        (g.b_weight_sq(Sign::Plus, 1) - g.b_weight_sq(Sign::Plus, 2)).abs()
    } else {
        f64::INFINITY
    };
    checks.push(Check::residual(
        format!("chi.weight-collision.c={}", fmt_c(c_fixed)),
        format!(
            "q = {q_star:.6} in (0,1) collides the level-1 and level-2 ladder weights at c={}",
            fmt_c(c_fixed)
        ),
        gap,
        1e-12,
    ));

    Ok(checks)
}

// ---------------------------------------------------------------------------
// actions
// ---------------------------------------------------------------------------

fn equivariance_residual(
    hom: &MatrixHom,
    source_pres: &Presentation<Floats>,
    action: &StarHom<Floats>,
    w: &DMatrix<C64>,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for g in 0..source_pres.algebra().gens().len() {
        let lhs = w * hom.image(g) * w.adjoint();
        let gen_image = action.image(g);
        let rhs = hom.apply(gen_image)?;
        worst = worst.max(max_abs(&(lhs - rhs)));
    }
    Ok(worst)
}

fn actions(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rng = salted_rng(cfg, 5);
    let mut checks = Vec::new();

    // Polynomial layer, symbolic backend.
    let r1 = morphisms::r1_hom(Exact)?;
    let r2 = morphisms::r2_hom(Exact)?;
    checks.push(Check::exact(
        "actions.reflections.star-homs",
        "both polynomial reflections preserve the relations",
        r1.check()? && r2.check()?,
    ));

    let pres = surfaces::equator(Exact);
    let di = morphisms::delta_hom(&pres, QcPoly::i())?;
    let composed = StarHom::compose("r1·di", &r1, &di)?;
    let same = (0..2).all(|g| composed.image(g) == r2.image(g));
    checks.push(Check::exact(
        "actions.reflections.factorization",
        "the antipodal reflection is the first reflection after a quarter turn",
        same && di.check()?,
    ));

    let mut fixed_ok = true;
    for _ in 0..20 {
        let a = random_exact_element(&mut rng, AlgebraId::Equator, 4, 3);
        let averaged = morphisms::fixed_point_project(&r2, &a)?;
        let filtered = ktheory::expectation_even(&pres, &a)?;
        fixed_ok &= averaged == filtered;
    }
    checks.push(Check::exact(
        "actions.fixed-point.average",
        "the antipodal average equals the even-word projection on random elements",
        fixed_ok,
    ));

    // Equivariance at the operator layer: the circle action commutes with
    // the cross-parameter map and with both transported reflections.
    let c = match cfg.c {
        SphereC::Finite(c) if c > 0.0 => c,
        _ => 1.0,
    };
    let n = cfg.dim;
    let chi = morphisms::chi_c(cfg.q, SphereC::Finite(c), n)?;
    let sphere_ring = Floats::with_c(cfg.q, c, cfg.tol)?;
    let sphere_pres = surfaces::build_presentation(AlgebraId::Sphere, sphere_ring)?;
    let sum_c = reps::sphere_pm(cfg.q, SphereC::Finite(c), n)?;
    let rb1c = morphisms::rbar1(&sum_c)?;
    let eq_ring = Floats::new(cfg.q, cfg.tol)?;
    let eq_pres = surfaces::equator(eq_ring);
    let sum_inf = reps::sphere_pm(cfg.q, SphereC::Infinity, n)?;
    let rb2 = morphisms::rbar2(&sum_inf)?;

    let mut worst_chi = 0.0f64;
    let mut worst_rb1 = 0.0f64;
    let mut worst_rb2 = 0.0f64;
    for _ in 0..8 {
        let g = random_unimodular(&mut rng);
        let w = morphisms::delta_unitary(g, &sum_c.blocks);
        let dg_sphere = morphisms::delta_hom(&sphere_pres, g)?;
        let dg_eq = morphisms::delta_hom(&eq_pres, g)?;
        worst_chi = worst_chi.max(equivariance_residual(&chi.hom, &sphere_pres, &dg_sphere, &w)?);
        worst_rb1 = worst_rb1.max(equivariance_residual(&rb1c, &sphere_pres, &dg_sphere, &w)?);
        worst_rb2 = worst_rb2.max(equivariance_residual(&rb2, &eq_pres, &dg_eq, &w)?);
    }
    checks.push(Check::residual(
        "actions.equivariance.chi",
        format!("the circle action commutes with the cross-parameter map at c={c}"),
        worst_chi,
        1e-10,
    ));
    checks.push(Check::residual(
        "actions.equivariance.rbar1",
        format!("the circle action commutes with the transported reflection at c={c}"),
        worst_rb1,
        1e-10,
    ));
    checks.push(Check::residual(
        "actions.equivariance.rbar2",
        "the circle action commutes with the equatorial antipodal flip",
        worst_rb2,
        1e-10,
    ));

    // Obstruction pair: the canonical map applied to random tensor lists
    // always lands on pairs whose circle-point evaluations agree, so the
    // target pair (1, -1) — whose evaluations differ by 2 — is never hit.
    let r1f = {
        let a = Element::generator(eq_ring, AlgebraId::Equator, 0)?;
        let b = Element::generator(eq_ring, AlgebraId::Equator, 1)?;
        StarHom::new("r1", eq_pres.clone(), eq_pres.clone(), vec![-&a, b])?
    };
    let mut worst_agree = 0.0f64;
    let mut separated = true;
    for _ in 0..100 {
        let pairs: Vec<(Element<Floats>, Element<Floats>)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let p = random_exact_element(&mut rng, AlgebraId::Equator, 3, 2);
                let p2 = random_exact_element(&mut rng, AlgebraId::Equator, 3, 2);
                Ok((p.to_float(eq_ring)?, p2.to_float(eq_ring)?))
            })
            .collect::<Result<_>>()?;
        let pair = morphisms::kappa(&pairs, &r1f)?;
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let rep = build_rep(RepKind::SphereTheta(theta), cfg.q, SphereC::Infinity, 1)?;
        let v_id = represent(&pair.at_identity, &rep)?[(0, 0)];
        let v_flip = represent(&pair.at_flip, &rep)?[(0, 0)];
        worst_agree = worst_agree.max((v_id - v_flip).norm());
        // Sup-distance to the target pair (1, -1).
        let dist = (v_id - C64::new(1.0, 0.0))
            .norm()
            .max((v_flip - C64::new(-1.0, 0.0)).norm());
        separated &= dist > 0.9;
    }
    checks.push(Check::residual(
        "actions.obstruction.agreement",
        "both components of the obstruction pair agree at every circle point",
        worst_agree,
        1e-12,
    ));
    checks.push(Check::exact(
        "actions.obstruction.target-unreached",
        "no sampled tensor list reaches the glueing pair (1, -1)",
        separated,
    ));

    Ok(checks)
}

// ---------------------------------------------------------------------------
// disc
// ---------------------------------------------------------------------------

fn disc(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rng = salted_rng(cfg, 6);
    let mut checks = Vec::new();

    let phi = morphisms::phi_disc(Exact)?;
    checks.push(Check::exact(
        "disc.embedding.star-hom",
        "the disc embeds into the equatorial sphere as a *-homomorphism",
        phi.check()?,
    ));
    let r1 = morphisms::r1_hom(Exact)?;
    let x_img = phi.image(0).clone();
    checks.push(Check::exact(
        "disc.embedding.reflection-invariant",
        "the embedded generator is fixed by the equatorial reflection",
        r1.apply(&x_img)? == x_img,
    ));

    // Entrywise: the plus ladder composed with the embedding equals the
    // disc ladder at the fourth-power deformation.
    let qhat = cfg.q.powi(4);
    let plus = build_rep(RepKind::SpherePlus, cfg.q, SphereC::Infinity, cfg.dim)?;
    let disc_rep = build_rep(RepKind::DiscInfinite, qhat, SphereC::Infinity, cfg.dim)?;
    let eq_ring = Floats::new(cfg.q, cfg.tol)?;
    let disc_ring = Floats::new(qhat, cfg.tol)?;
    let phi_f = morphisms::phi_disc(eq_ring)?;
    let x_f = phi_f.image(0);
    let embedded = represent(x_f, &plus)?;
    checks.push(Check::residual(
        "disc.embedding.generator",
        "the embedded generator matches the disc ladder entrywise",
        max_abs(&(&embedded - disc_rep.generator_matrix(0))),
        1e-12,
    ));

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let w = random_word(&mut rng, AlgebraId::Disc, 5);
        // Normalizing in the sphere changes which paths hit the truncation
        // edge, so compare only on columns the edge cannot reach.
        let cols = plus.protected_columns(w.shift_degree(AlgebraId::Disc));
        let a_disc = Element::from_word(disc_ring, AlgebraId::Disc, w.clone(), C64::new(1.0, 0.0));
        let a_eq = Element::from_word(eq_ring, AlgebraId::Disc, w, C64::new(1.0, 0.0));
        let through_sphere = represent(&phi_f.apply(&a_eq)?, &plus)?;
        let direct = represent(&a_disc, &disc_rep)?;
        worst = worst.max(max_abs(&(through_sphere - direct).select_columns(&cols)));
    }
    checks.push(Check::residual(
        "disc.embedding.words",
        "random disc words factor through the sphere without loss",
        worst,
        1e-10,
    ));

    let w = ktheory::disc_defect(cfg.q, cfg.dim)?;
    checks.push(Check::integer(
        "disc.defect.rank",
        "the polar defect of the disc generator has rank one",
        w.rank as i64,
        1,
    ));
    checks.push(Check::residual(
        "disc.defect.residuals",
        "the disc defect is a projection and its co-isometry is exact away from the edge",
        w.projection_residual.max(w.coisometry_residual),
        cfg.tol,
    ));

    Ok(checks)
}

// ---------------------------------------------------------------------------
// rp2-reps
// ---------------------------------------------------------------------------

fn rp2_reps(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let ring = Floats::new(cfg.q, cfg.tol)?;
    let pres = surfaces::build_presentation(AlgebraId::Rp2, ring)?;
    let rho = build_rep(RepKind::Rp2Infinite, cfg.q, SphereC::Infinity, cfg.dim)?;
    let r = reps::relation_residual(&pres, &rho)?;
    checks.push(Check::residual(
        "rp2.relations",
        "the projective-plane ladder satisfies all sixteen relations",
        r.max,
        cfg.tol,
    ));

    let iota = morphisms::iota_rp2(Exact)?;
    checks.push(Check::exact(
        "rp2.inclusion.star-hom",
        "the projective plane includes into the equatorial sphere",
        iota.check()?,
    ));

    // Factorizations through the two equatorial ladders.
    let iota_f = morphisms::iota_rp2(ring)?;
    let plus = build_rep(RepKind::SpherePlus, cfg.q, SphereC::Infinity, cfg.dim)?;
    let minus = build_rep(RepKind::SphereMinus, cfg.q, SphereC::Infinity, cfg.dim)?;
    let u = DMatrix::<C64>::from_fn(cfg.dim, cfg.dim, |i, j| {
        if i == j {
            C64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let mut worst_plus = 0.0f64;
    let mut worst_minus = 0.0f64;
    for g in 0..3 {
        let img = iota_f.image(g);
        let through_plus = represent(img, &plus)?;
        worst_plus = worst_plus.max(max_abs(&(&through_plus - rho.generator_matrix(g))));
        let through_minus = &u * represent(img, &minus)? * &u;
        worst_minus = worst_minus.max(max_abs(&(&through_minus - rho.generator_matrix(g))));
    }
    checks.push(Check::residual(
        "rp2.factorization.plus",
        "the ladder equals the plus equatorial ladder restricted along the inclusion",
        worst_plus,
        1e-12,
    ));
    checks.push(Check::residual(
        "rp2.factorization.minus",
        "the ladder equals the sign-conjugated minus equatorial ladder along the inclusion",
        worst_minus,
        1e-12,
    ));

    // Spectrum of the diagonal generator.
    let spec = reps::spectrum(rho.generator_matrix(0))?;
    let mut expected: Vec<f64> = (0..cfg.dim as i32).map(|k| cfg.q.powi(4 * k)).collect();
    expected.sort_by(f64::total_cmp);
    let worst = spec
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(Check::residual(
        "rp2.spectrum",
        "the diagonal generator has exactly the geometric spectrum",
        worst,
        1e-10,
    ));

    let theta = build_rep(RepKind::Rp2Theta(0.9), cfg.q, SphereC::Infinity, 1)?;
    let r = reps::relation_residual(&pres, &theta)?;
    checks.push(Check::residual(
        "rp2.theta.relations",
        "the boundary circle point satisfies the relations",
        r.max,
        cfg.tol,
    ));

    Ok(checks)
}

// ---------------------------------------------------------------------------
// ktheory
// ---------------------------------------------------------------------------

fn ktheory_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rng = salted_rng(cfg, 8);
    let mut checks = Vec::new();

    let mut dims: Vec<usize> = vec![16, 32, 64, 128];
    if !dims.contains(&cfg.dim) {
        dims.push(cfg.dim);
    }

    for n in dims {
        let w = ktheory::rp2_defect(cfg.q, n)?;
        checks.push(Check::integer(
            format!("ktheory.rp2.rank.n={n}"),
            format!("the projective-plane defect has rank two at dimension {n}"),
            w.rank as i64,
            2,
        ));
        checks.push(Check::residual(
            format!("ktheory.rp2.residuals.n={n}"),
            format!("projection and co-isometry residuals stay small at dimension {n}"),
            w.projection_residual.max(w.coisometry_residual),
            cfg.tol,
        ));
        let d = ktheory::disc_defect(cfg.q, n)?;
        checks.push(Check::integer(
            format!("ktheory.disc.rank.n={n}"),
            format!("the disc defect has rank one at dimension {n}"),
            d.rank as i64,
            1,
        ));
    }

    let mu = ktheory::matrix_units(cfg.q, cfg.dim, 6)?;
    checks.push(Check::residual(
        "ktheory.units.residual",
        "spectral matrix units match the canonical units",
        mu.max_residual,
        1e-10,
    ));
    checks.push(Check::exact(
        "ktheory.units.isolated",
        "the spectral values used for the units are numerically isolated",
        !mu.clustered,
    ));

    let pres = surfaces::equator(Exact);
    let idx = ktheory::expectation_index(&pres)?;
    let two = Element::one(Exact, AlgebraId::Equator).scale(&QcPoly::from_int(2));
    checks.push(Check::exact(
        "ktheory.expectation.index",
        "the even-part expectation has index exactly two",
        idx == two,
    ));

    let mut ok = true;
    for _ in 0..100 {
        let a = random_exact_element(&mut rng, AlgebraId::Equator, 5, 4);
        let w = ktheory::quasi_basis_reconstruct(&pres, &a)?;
        ok &= w.left == w.original && w.right == w.original;
    }
    checks.push(Check::exact(
        "ktheory.expectation.quasi-basis",
        "the quasi-basis reconstructs 100 random elements from either side",
        ok,
    ));

    Ok(checks)
}
