use dirichlet_rkhs::embeddings::{
    embedding_sweep, halfstrip_embedding_quadrature, halfstrip_embedding_ratio, line_embedding_quadrature,
    line_embedding_ratio, random_polynomial_corpus,
};
use dirichlet_rkhs::DirichletPolynomial;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_term(rng: &mut ChaCha8Rng, first: usize) -> DirichletPolynomial {
    let m = rng.random_range(first..12);
    let n = loop {
        let n = rng.random_range(first..12);
        if n != m {
            break n;
        }
    };
    let mut coeffs = vec![c(0.0, 0.0); m.max(n)];
    coeffs[m - 1] = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    coeffs[n - 1] = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    DirichletPolynomial::new(coeffs).unwrap()
}

#[test]
fn single_term_line_ratio() {
    for n in [1usize, 2, 5, 100] {
        for theta in [0.0, 1.0, 10.0, 100.0] {
            let f = DirichletPolynomial::monomial(n, c(1.0, 0.0)).unwrap();
            assert!((line_embedding_ratio(&f, theta).unwrap().ratio - 1.0 / n as f64).abs() < 1e-15);
        }
    }
}

#[test]
fn two_term_closed_form_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let f = two_term(&mut rng, 1);
        let theta = rng.random_range(-50.0..50.0);
        let a = line_embedding_ratio(&f, theta).unwrap().ratio;
        let b = line_embedding_quadrature(&f, theta).unwrap().ratio;
        assert!((a - b).abs() < 1e-8, "θ = {theta}: {a} vs {b}");
    }
}

#[test]
fn halfstrip_closed_form_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for alpha in [-1.0, -0.5, 0.5, 1.0] {
        for _ in 0..3 {
            let f = two_term(&mut rng, 2);
            let theta = rng.random_range(-10.0..10.0);
            let a = halfstrip_embedding_ratio(&f, theta, alpha).unwrap().ratio;
            let b = halfstrip_embedding_quadrature(&f, theta, alpha).unwrap().ratio;
            assert!((a - b).abs() < 1e-8 * a.max(1.0), "α = {alpha}, θ = {theta}: {a} vs {b}");
        }
    }
}

#[test]
fn halfstrip_domain_errors() {
    let with_constant = DirichletPolynomial::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    assert!(halfstrip_embedding_ratio(&with_constant, 0.0, -1.0).is_err());
    assert!(halfstrip_embedding_ratio(&with_constant, 0.0, 0.0).is_err());
    assert!(halfstrip_embedding_ratio(&with_constant, 0.0, 1.5).is_err());
    assert!(halfstrip_embedding_ratio(&with_constant, 0.0, 0.5).is_ok());
    let zero = DirichletPolynomial::new(vec![c(0.0, 0.0)]).unwrap();
    assert!(line_embedding_ratio(&zero, 0.0).is_err());
}

#[test]
fn derivative_vanishes_on_constants() {
    let one = DirichletPolynomial::monomial(1, c(2.0, 0.0)).unwrap();
    for alpha in [0.5, 1.0] {
        assert_eq!(halfstrip_embedding_ratio(&one, 3.0, alpha).unwrap().ratio, 0.0);
        assert_eq!(halfstrip_embedding_quadrature(&one, 3.0, alpha).unwrap().ratio, 0.0);
    }
}

#[test]
fn corpus_is_reproducible_and_normalised() {
    let a = random_polynomial_corpus(200, 100, 1).unwrap();
    let b = random_polynomial_corpus(200, 100, 1).unwrap();
    assert_eq!(a, b);
    assert!(a.iter().all(|f| (1..=100).contains(&f.degree())));
    let mean = a.iter().map(|f| f.norm_sq()).sum::<f64>() / a.len() as f64;
    assert!((mean - 1.0).abs() < 0.2, "{mean}");
    assert_ne!(a, random_polynomial_corpus(200, 100, 2).unwrap());
}

#[test]
fn sweep_rows_and_bounds() {
    let corpus = random_polynomial_corpus(20, 50, 3).unwrap();
    let thetas = [0.0, 1.0, 10.0, 100.0];
    let rows = embedding_sweep(&corpus, &thetas, None).unwrap();
    assert_eq!(rows.len(), 80);
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row.theta, thetas[k / 20]);
        assert_eq!(row.degree, corpus[k % 20].degree());
        assert!(row.ratio >= 0.0 && row.ratio <= 3.0, "{row:?}");
    }
    let strip = embedding_sweep(&corpus, &[0.0], Some(0.5)).unwrap();
    assert!(strip.iter().all(|r| r.ratio.is_finite() && r.ratio >= 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn line_ratio_is_nonnegative_and_scale_invariant(
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..30),
        theta in -200.0f64..200.0,
        scale in 0.1f64..10.0,
    ) {
        let v: Vec<Complex64> = coeffs.iter().map(|&(x, y)| c(x, y)).collect();
        let f = DirichletPolynomial::new(v.clone()).unwrap();
        prop_assume!(!f.is_zero());
        let g = DirichletPolynomial::new(v.iter().map(|z| z * scale).collect()).unwrap();
        let a = line_embedding_ratio(&f, theta).unwrap();
        let b = line_embedding_ratio(&g, theta).unwrap();
        prop_assert!(a.ratio >= 0.0);
        prop_assert!((a.ratio - b.ratio).abs() <= 1e-12 * a.ratio.max(1.0));
    }
}
