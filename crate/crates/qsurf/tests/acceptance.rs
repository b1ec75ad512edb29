//! Acceptance gate: the ten guarantees the crate makes, each as one test
//! that prints a single PASS/FAIL line (visible with `--nocapture`) and
//! panics with the same message on failure.

use std::time::Instant;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsurf::algebra::{AlgebraId, Element, Letter, Word};
use qsurf::ktheory;
use qsurf::morphisms::{self, functional_calculus, PiecewiseFn};
use qsurf::reps::{self, build_rep, max_abs, represent, RepKind};
use qsurf::scalar::{Exact, Floats, QcPoly, C64, DEFAULT_EPS};
use qsurf::surfaces::{self, Sign, SphereC, SphereParams};

const Q: f64 = 0.5;
const DIM: usize = 64;

fn conclude(label: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("[{status}] {label}: {detail}");
    assert!(pass, "[{status}] {label}: {detail}");
}

fn random_word(rng: &mut ChaCha8Rng, algebra: AlgebraId, max_len: usize) -> Word {
    let gens = algebra.gens();
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(0..gens.len());
            if !gens[g].self_adjoint && rng.gen_bool(0.5) {
                Letter::starred(g)
            } else {
                Letter::plain(g)
            }
        })
        .collect();
    Word(letters)
}

/// Random symbolic element: up to `terms` words of length `<= max_len` with
/// small rational coefficients, some rotated by `i`.
fn random_exact_element(
    rng: &mut ChaCha8Rng,
    algebra: AlgebraId,
    terms: usize,
    max_len: usize,
) -> Element<Exact> {
    let mut acc = Element::zero(Exact, algebra);
    for _ in 0..rng.gen_range(1..=terms) {
        let mut k = QcPoly::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        if rng.gen_bool(0.3) {
            k = k.mul(&QcPoly::i());
        }
        let w = random_word(rng, algebra, max_len);
        acc = &acc + &Element::from_word(Exact, algebra, w, k);
    }
    acc
}

/// All defining relations normalize to zero symbolically (with the sphere
/// parameter kept symbolic, which covers every finite value at once), and
/// every infinite-dimensional ladder satisfies them to 1e-10 on protected
/// columns at dimension 64 for q in {0.3, 0.5, 0.9}.
#[test]
fn criterion_01_defining_relations() {
    let t0 = Instant::now();
    let mut exact_zero = true;
    for alg in [
        AlgebraId::Equator,
        AlgebraId::Sphere,
        AlgebraId::Disc,
        AlgebraId::Rp2,
    ] {
        let pres = surfaces::build_presentation(alg, Exact).unwrap();
        for (_, rel) in pres.relation_elements() {
            exact_zero &= pres.normal_form(&rel).unwrap().terms().next().is_none();
        }
    }

    let mut worst = 0.0f64;
    for q in [0.3, 0.5, 0.9] {
        let ring = Floats::new(q, 1e-10).unwrap();
        let eq_pres = surfaces::build_presentation(AlgebraId::Equator, ring).unwrap();
        for kind in [RepKind::SpherePlus, RepKind::SphereMinus] {
            let rep = build_rep(kind, q, SphereC::Infinity, DIM).unwrap();
            worst = worst.max(reps::relation_residual(&eq_pres, &rep).unwrap().max);
        }
        for cv in [0.0, 0.5, 1.0, 10.0] {
            let ring = Floats::with_c(q, cv, 1e-10).unwrap();
            let pres = surfaces::build_presentation(AlgebraId::Sphere, ring).unwrap();
            for kind in [RepKind::SpherePlus, RepKind::SphereMinus] {
                let rep = build_rep(kind, q, SphereC::Finite(cv), DIM).unwrap();
                worst = worst.max(reps::relation_residual(&pres, &rep).unwrap().max);
            }
        }
        let disc_pres = surfaces::build_presentation(AlgebraId::Disc, ring).unwrap();
        let disc_rep = build_rep(RepKind::DiscInfinite, q, SphereC::Infinity, DIM).unwrap();
        worst = worst.max(reps::relation_residual(&disc_pres, &disc_rep).unwrap().max);
        let rp2_pres = surfaces::build_presentation(AlgebraId::Rp2, ring).unwrap();
        let rp2_rep = build_rep(RepKind::Rp2Infinite, q, SphereC::Infinity, DIM).unwrap();
        worst = worst.max(reps::relation_residual(&rp2_pres, &rp2_rep).unwrap().max);
    }

    let secs = t0.elapsed().as_secs_f64();
    conclude(
        "relations",
        exact_zero && worst < 1e-10 && secs < 30.0,
        &format!(
            "symbolic zero for all four algebras; ladder residual {worst:.3e} < 1e-10 \
             at N=64, q in {{0.3, 0.5, 0.9}}, c in {{0, 0.5, 1, 10, inf}}; {secs:.1}s < 30s"
        ),
    );
}

/// 500 random words in each word algebra agree with the matrix oracle:
/// the represented normal form (diagonal sums evaluated in exact rational
/// arithmetic) matches the direct product of generator matrices to 1e-10 on
/// protected columns.
#[test]
fn criterion_02_oracle_equivalence() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for (algebra, kind, count, max_len) in [
        (AlgebraId::Equator, RepKind::SpherePlus, 500, 8),
        (AlgebraId::Rp2, RepKind::Rp2Infinite, 500, 6),
    ] {
        let pres = surfaces::build_presentation(algebra, Exact).unwrap();
        let rep = build_rep(kind, Q, SphereC::Infinity, DIM).unwrap();
        for _ in 0..count {
            let w = random_word(&mut rng, algebra, max_len);
            worst = worst.max(reps::exact_oracle_residual(&pres, &rep, &w).unwrap());
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        "oracle equivalence",
        worst < 1e-10 && secs < 60.0,
        &format!(
            "500 equator words (len <= 8) + 500 projective-plane words (len <= 6): \
             residual {worst:.3e} < 1e-10; {secs:.1}s < 60s"
        ),
    );
}

/// The cartesian embedding satisfies x² + y² + z² = 1 across the parameter
/// grid (coefficients below 1e-12 after normalization), and the circle of
/// one-dimensional representations sits at height z_inf with squared radius
/// 1 - z_inf² — the unit circle in the equatorial limit.
#[test]
fn criterion_03_cartesian_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_coeff = 0.0f64;
    let mut worst_circle = 0.0f64;
    for q in [0.3, 0.5, 0.9] {
        for c in [
            SphereC::Finite(0.0),
            SphereC::Finite(0.5),
            SphereC::Finite(1.0),
            SphereC::Finite(10.0),
            SphereC::Infinity,
        ] {
            let params = SphereParams::new(q, c).unwrap();
            let coords = surfaces::cartesian_coordinates(&params, DEFAULT_EPS).unwrap();
            let sum = &(&(&coords.x * &coords.x) + &(&coords.y * &coords.y))
                + &(&coords.z * &coords.z);
            let one = Element::one(*coords.presentation.ring(), coords.presentation.algebra());
            let nf = coords.presentation.normal_form(&(&sum - &one)).unwrap();
            worst_coeff = worst_coeff.max(nf.max_abs());

            // Circle points exist for c > 0 and at the equatorial limit.
            if matches!(c, SphereC::Finite(v) if v == 0.0) {
                continue;
            }
            let g = &coords.constants;
            for _ in 0..8 {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                let rep = build_rep(RepKind::SphereTheta(theta), q, c, 1).unwrap();
                let x = represent(&coords.x, &rep).unwrap()[(0, 0)];
                let y = represent(&coords.y, &rep).unwrap()[(0, 0)];
                let z = represent(&coords.z, &rep).unwrap()[(0, 0)];
                worst_circle = worst_circle.max((z - C64::new(g.z_inf, 0.0)).norm());
                let radius_sq = x.norm_sqr() + y.norm_sqr();
                worst_circle =
                    worst_circle.max((radius_sq - (1.0 - g.z_inf * g.z_inf)).abs());
            }
        }
    }
    conclude(
        "cartesian identity",
        worst_coeff < 1e-12 && worst_circle < 1e-12,
        &format!(
            "normal form of x² + y² + z² - 1 has coefficients {worst_coeff:.3e} < 1e-12 \
             over the (q, c) grid; circle points off by {worst_circle:.3e} < 1e-12"
        ),
    );
}

/// Functional calculus transports the equatorial ladder onto every finite-c
/// ladder: F_c applied to the diagonal generator reproduces the c-sphere
/// diagonal, and G_c times the shift reproduces the c-sphere shift,
/// entrywise to 1e-12 at dimension 64.
#[test]
fn criterion_04_cross_parameter_transport() {
    let equator = reps::sphere_pm(Q, SphereC::Infinity, DIM).unwrap();
    let a = equator.generator_matrix(0);
    let b = equator.generator_matrix(1);
    let mut worst = 0.0f64;
    for cv in [0.5, 1.0, 10.0] {
        let target = reps::sphere_pm(Q, SphereC::Finite(cv), DIM).unwrap();
        let fa = functional_calculus(a, &PiecewiseFn::cap_f(cv).unwrap()).unwrap();
        let ga = functional_calculus(a, &PiecewiseFn::cap_g(Q, cv).unwrap()).unwrap();
        worst = worst.max(max_abs(&(&fa - target.generator_matrix(0))));
        worst = worst.max(max_abs(&(ga * b - target.generator_matrix(1))));
    }
    conclude(
        "cross-parameter transport",
        worst < 1e-12,
        &format!(
            "F_c(A) and G_c(A)·B match the c-sphere generators entrywise to \
             {worst:.3e} < 1e-12 for c in {{0.5, 1, 10}}, N=64"
        ),
    );
}

/// The circle action commutes with the cross-parameter isomorphism and with
/// both reflections, on generators, to 1e-10, for eight sampled circle
/// elements.
#[test]
fn criterion_05_equivariance() {
    let cv = 1.0;
    let eq_ring = Floats::new(Q, DEFAULT_EPS).unwrap();
    let sp_ring = Floats::with_c(Q, cv, DEFAULT_EPS).unwrap();
    let eq_pres = surfaces::build_presentation(AlgebraId::Equator, eq_ring).unwrap();
    let sp_pres = surfaces::build_presentation(AlgebraId::Sphere, sp_ring).unwrap();

    let chi = morphisms::chi_c(Q, SphereC::Finite(cv), DIM).unwrap();
    let rb1 = morphisms::rbar1(&reps::sphere_pm(Q, SphereC::Finite(cv), DIM).unwrap()).unwrap();
    let rb2 = morphisms::rbar2(&reps::sphere_pm(Q, SphereC::Infinity, DIM).unwrap()).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..8 {
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let g = C64::new(phase.cos(), phase.sin());
        let delta_sp = morphisms::delta_hom(&sp_pres, g).unwrap();
        let delta_eq = morphisms::delta_hom(&eq_pres, g).unwrap();
        for (hom, delta) in [(&chi.hom, &delta_sp), (&rb1, &delta_sp), (&rb2, &delta_eq)] {
            let w = morphisms::delta_unitary(g, &hom.blocks);
            for gen in 0..hom.source.gens().len() {
                let lhs = &w * hom.image(gen) * w.adjoint();
                let rhs = hom.apply(delta.image(gen)).unwrap();
                worst = worst.max(max_abs(&(lhs - rhs)));
            }
        }
    }
    conclude(
        "equivariance",
        worst < 1e-10,
        &format!(
            "circle action commutes with the cross-parameter map and both \
             reflections on generators to {worst:.3e} < 1e-10 for 8 sampled elements"
        ),
    );
}

/// The disc embeds in the equatorial sphere: the embedding is a symbolic
/// *-homomorphism, the plus ladder restricted along it is the disc ladder at
/// the fourth-power deformation, and the glueing obstruction holds — both
/// components of the canonical pair agree at every circle point, while the
/// target pair (1, -1) has components 2 apart.
#[test]
fn criterion_06_disc_embedding_and_obstruction() {
    let phi_exact = morphisms::phi_disc(Exact).unwrap();
    let star_hom = phi_exact.check().unwrap();

    let eq_ring = Floats::new(Q, DEFAULT_EPS).unwrap();
    let phi = morphisms::phi_disc(eq_ring).unwrap();
    let plus = build_rep(RepKind::SpherePlus, Q, SphereC::Infinity, DIM).unwrap();
    let disc = build_rep(RepKind::DiscInfinite, Q.powi(4), SphereC::Infinity, DIM).unwrap();
    let embedded = represent(phi.image(0), &plus).unwrap();
    let entrywise = max_abs(&(embedded - disc.generator_matrix(0)));

    let r1 = morphisms::r1_hom(eq_ring).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_agree = 0.0f64;
    let mut min_gap = f64::INFINITY;
    for _ in 0..100 {
        let pairs: Vec<(Element<Floats>, Element<Floats>)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let p = random_exact_element(&mut rng, AlgebraId::Equator, 3, 3);
                let p2 = random_exact_element(&mut rng, AlgebraId::Equator, 3, 3);
                (p.to_float(eq_ring).unwrap(), p2.to_float(eq_ring).unwrap())
            })
            .collect();
        let pair = morphisms::kappa(&pairs, &r1).unwrap();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let rep = build_rep(RepKind::SphereTheta(theta), Q, SphereC::Infinity, 1).unwrap();
        let v_id = represent(&pair.at_identity, &rep).unwrap()[(0, 0)];
        let v_flip = represent(&pair.at_flip, &rep).unwrap()[(0, 0)];
        worst_agree = worst_agree.max((v_id - v_flip).norm());
        // Components of the target differ by |1 - (-1)| = 2; any pair with
        // equal components keeps |v - 1| + |v + 1| >= 2 away from it.
        min_gap = min_gap
            .min((v_id - C64::new(1.0, 0.0)).norm() + (v_flip - C64::new(-1.0, 0.0)).norm());
    }
    conclude(
        "disc embedding and obstruction",
        star_hom && entrywise < 1e-12 && worst_agree < 1e-12 && min_gap > 2.0 - 1e-9,
        &format!(
            "embedding is a *-homomorphism; ladder restriction off by {entrywise:.3e} < 1e-12; \
             obstruction components agree to {worst_agree:.3e} < 1e-12 over 100 tensor lists \
             while the target pair stays {min_gap:.3} >= 2 away"
        ),
    );
}

/// The projective-plane ladder satisfies its relations, factors through both
/// equatorial ladders along the inclusion (entrywise to 1e-12), and its
/// diagonal generator has exactly the geometric spectrum.
#[test]
fn criterion_07_projective_plane_ladder() {
    let ring = Floats::new(Q, DEFAULT_EPS).unwrap();
    let pres = surfaces::build_presentation(AlgebraId::Rp2, ring).unwrap();
    let rho = build_rep(RepKind::Rp2Infinite, Q, SphereC::Infinity, DIM).unwrap();
    let relations = reps::relation_residual(&pres, &rho).unwrap().max;

    let iota = morphisms::iota_rp2(ring).unwrap();
    let plus = build_rep(RepKind::SpherePlus, Q, SphereC::Infinity, DIM).unwrap();
    let minus = build_rep(RepKind::SphereMinus, Q, SphereC::Infinity, DIM).unwrap();
    let u = DMatrix::<C64>::from_fn(DIM, DIM, |i, j| {
        if i == j {
            C64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let mut factor = 0.0f64;
    for gen in 0..3 {
        let img = iota.image(gen);
        factor = factor.max(max_abs(
            &(represent(img, &plus).unwrap() - rho.generator_matrix(gen)),
        ));
        factor = factor.max(max_abs(
            &(&u * represent(img, &minus).unwrap() * &u - rho.generator_matrix(gen)),
        ));
    }

    let spec = reps::spectrum(rho.generator_matrix(0)).unwrap();
    let mut expected: Vec<f64> = (0..DIM as i32).map(|k| Q.powi(4 * k)).collect();
    expected.sort_by(f64::total_cmp);
    let spec_err = spec
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    conclude(
        "projective-plane ladder",
        relations < 1e-10 && factor < 1e-12 && spec_err < 1e-10,
        &format!(
            "relations {relations:.3e} < 1e-10 at N=64; factorizations through both \
             equatorial ladders off by {factor:.3e} < 1e-12; spectrum matches \
             {{q^(4k)}} to {spec_err:.3e} < 1e-10"
        ),
    );
}

/// Defect projections witness the index pairing: the projective-plane defect
/// has rank 2 and the disc defect rank 1, stable across dimensions 16 to
/// 128, and the spectral matrix units satisfy their identities to 1e-10.
#[test]
fn criterion_08_index_witnesses() {
    let mut pass = true;
    let mut rp2_trace_err = 0.0f64;
    for n in [16, 32, 64, 128] {
        let w_rp2 = ktheory::rp2_defect(Q, n).unwrap();
        pass &= w_rp2.rank == 2;
        rp2_trace_err = rp2_trace_err.max((w_rp2.trace - 2.0).abs());
        let w_disc = ktheory::disc_defect(Q, n).unwrap();
        pass &= w_disc.rank == 1;
    }
    pass &= rp2_trace_err < 1e-8;

    let units = ktheory::matrix_units(Q, DIM, 6).unwrap();
    pass &= units.max_residual < 1e-10 && !units.clustered;

    conclude(
        "index witnesses",
        pass,
        &format!(
            "projective-plane defect rank 2 (trace off by {rp2_trace_err:.3e} < 1e-8) and \
             disc defect rank 1 across N in {{16, 32, 64, 128}}; matrix-unit identities \
             to {:.3e} < 1e-10",
            units.max_residual
        ),
    );
}

/// The conditional expectation onto the reflection-fixed subalgebra has
/// index two: the index element normalizes to exactly twice the identity,
/// and the quasi-basis reconstructs 100 random symbolic elements of degree
/// at most 5 from either side.
#[test]
fn criterion_09_expectation_index() {
    let pres = surfaces::build_presentation(AlgebraId::Equator, Exact).unwrap();
    let index = ktheory::expectation_index(&pres).unwrap();
    let two = Element::constant(Exact, AlgebraId::Equator, QcPoly::from_int(2));
    let index_is_two = index == two;

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut reconstructed = true;
    for _ in 0..100 {
        let a = random_exact_element(&mut rng, AlgebraId::Equator, 4, 5);
        let w = ktheory::quasi_basis_reconstruct(&pres, &a).unwrap();
        reconstructed &= w.left == w.original && w.right == w.original;
    }
    conclude(
        "expectation index",
        index_is_two && reconstructed,
        "index element normalizes to exactly 2·1; quasi-basis reconstruction exact \
         for 100 random symbolic elements of degree <= 5",
    );
}

/// The closed-form height ladder matches the represented height observable
/// on both ladders to 1e-10 for every sphere parameter, and descends to the
/// limit height within 1e-8 by level 40.
#[test]
fn criterion_10_height_ladder() {
    let mut worst = 0.0f64;
    let mut limit_err = 0.0f64;
    for c in [
        SphereC::Finite(0.0),
        SphereC::Finite(0.5),
        SphereC::Finite(1.0),
        SphereC::Finite(10.0),
        SphereC::Infinity,
    ] {
        let params = SphereParams::new(Q, c).unwrap();
        let coords = surfaces::cartesian_coordinates(&params, DEFAULT_EPS).unwrap();
        for (kind, sign) in [
            (RepKind::SpherePlus, Sign::Plus),
            (RepKind::SphereMinus, Sign::Minus),
        ] {
            let rep = build_rep(kind, Q, c, DIM).unwrap();
            let zm = represent(&coords.z, &rep).unwrap();
            let ladder = surfaces::z_ladder(&params, sign, DIM - 1);
            for (k, expect) in ladder.iter().enumerate() {
                worst = worst.max((zm[(k, k)].re - expect).abs());
                worst = worst.max(zm[(k, k)].im.abs());
            }
        }
        let plus = surfaces::z_ladder(&params, Sign::Plus, 40);
        limit_err = limit_err.max((plus[40] - coords.constants.z_inf).abs());
    }
    conclude(
        "height ladder",
        worst < 1e-10 && limit_err < 1e-8,
        &format!(
            "represented heights match the closed form to {worst:.3e} < 1e-10 on both \
             ladders for every sphere parameter; level 40 is within {limit_err:.3e} < 1e-8 \
             of the limit height at q=0.5"
        ),
    );
}
