use germlab_core::jetlin::span_build;
use germlab_core::matrix::mat_mul;
use germlab_core::tangent::{miniversal_unfolding, tangent_generators, tau};
use germlab_core::{EquivalenceGroup, MatrixGerm, MatrixKind, Monomial, Poly, Rational, TangentSettings, VariableSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn germ(vars: &str, rows: &[&[&str]]) -> MatrixGerm {
    MatrixGerm::parse(&VariableSet::parse(vars).unwrap(), MatrixKind::General, rows).unwrap()
}

/// Finitely determined germs with small codimension.
fn samples() -> Vec<MatrixGerm> {
    vec![
        germ("x, y, z", &[&["x", "0", "z"], &["0", "y", "z"]]),
        germ("x, y, z", &[&["x", "y"], &["z", "x"]]),
        germ("x, y", &[&["x", "y"], &["y^3", "x^2"]]),
        germ("x, y", &[&["x", "y^2"], &["y^2", "x^2"]]),
        germ("x, y, z", &[&["x", "z^2"], &["z^3", "y"]]),
        germ("x, y, z, w", &[&["w", "y", "x"], &["z", "w", "y^2"]]),
        germ("x, y", &[&["x", "y", "0"], &["0", "x^2", "y"]]),
    ]
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, min_deg: u32, max_deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let d = rng.gen_range(min_deg..=max_deg);
        let mons = Monomial::of_degree(nvars, d);
        let m = mons[rng.gen_range(0..mons.len())].clone();
        p.add_term(m, &Rational::from_int(rng.gen_range(-3..=3)));
    }
    p
}

fn random_unit_matrix(rng: &mut ChaCha8Rng, size: usize, nvars: usize) -> Vec<Vec<Poly>> {
    let mut p = vec![vec![Poly::zero(nvars); size]; size];
    for (i, row) in p.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let c = if i == j { rng.gen_range(1..=2) } else if i < j { rng.gen_range(-2..=2) } else { 0 };
            *e = Poly::constant(nvars, Rational::from_int(c)).add(&random_poly(rng, nvars, 1, 2, 2));
        }
    }
    p
}

fn settings() -> TangentSettings {
    TangentSettings::default()
}

#[test]
fn diagonal_closed_forms() {
    let x = VariableSet::parse("x").unwrap();
    for m in 1..=3usize {
        let mut alphas = vec![1u32; m];
        loop {
            let mut e = vec![vec![Poly::zero(1); m]; m];
            for (i, &a) in alphas.iter().enumerate() {
                e[i][i] = Poly::var(1, 0).pow(a);
            }
            let general = MatrixGerm::new(x.clone(), MatrixKind::General, e.clone()).unwrap();
            let sym = MatrixGerm::new(x.clone(), MatrixKind::Symmetric, e).unwrap();
            let gl: u32 = alphas.iter().enumerate().map(|(i, &a)| (2 * (m - i - 1) as u32 + 1) * a).sum::<u32>() - 1;
            let sy: u32 = alphas.iter().enumerate().map(|(i, &a)| ((m - i - 1) as u32 + 1) * a).sum::<u32>() - 1;
            let got = tau(&general, EquivalenceGroup::Gl, &settings()).unwrap();
            assert_eq!(got.value(), Some(gl as usize), "gl, alphas {alphas:?}");
            let got = tau(&sym, EquivalenceGroup::Sym, &settings()).unwrap();
            assert_eq!(got.value(), Some(sy as usize), "sym, alphas {alphas:?}");
            // next non-decreasing tuple with entries <= 4
            let Some(i) = (0..m).rev().find(|&i| alphas[i] < 4) else { break };
            let v = alphas[i] + 1;
            for a in alphas[i..].iter_mut() {
                *a = v;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tau_is_an_orbit_invariant(seed in any::<u64>(), which in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = &samples()[which];
        let nv = a.nvars();
        let p = random_unit_matrix(&mut rng, a.rows(), nv);
        let q = random_unit_matrix(&mut rng, a.cols(), nv);
        let e = mat_mul(&mat_mul(&p, a.entries(), nv, None), &q, nv, None);
        let b = MatrixGerm::new(a.vars().clone(), MatrixKind::General, e).unwrap();
        let ta = tau(a, EquivalenceGroup::Gl, &settings()).unwrap();
        let tb = tau(&b, EquivalenceGroup::Gl, &settings()).unwrap();
        prop_assert!(ta.certified && tb.certified);
        prop_assert_eq!(ta.dim, tb.dim);
    }

    #[test]
    fn gl_codimension_bounds_sl(seed in any::<u64>(), which in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = &samples()[which];
        let nv = a.nvars();
        // a higher-order perturbation keeps the germ finitely determined
        let e: Vec<Vec<Poly>> = a
            .entries()
            .iter()
            .map(|r| r.iter().map(|f| f.add(&random_poly(&mut rng, nv, 4, 5, 1))).collect())
            .collect();
        let b = MatrixGerm::new(a.vars().clone(), MatrixKind::General, e).unwrap();
        let gl = tau(&b, EquivalenceGroup::Gl, &settings()).unwrap();
        let sl = tau(&b, EquivalenceGroup::Sl, &settings()).unwrap();
        if let (Some(gl), Some(sl)) = (gl.value(), sl.value()) {
            prop_assert!(gl <= sl);
        }
    }
}

#[test]
fn unfolding_complements_the_tangent_space() {
    for a in samples() {
        for g in [EquivalenceGroup::Gl, EquivalenceGroup::Sl] {
            let u = miniversal_unfolding(&a, g, &settings()).unwrap();
            let t = tau(&a, g, &settings()).unwrap();
            assert_eq!(u.tau, t.dim);
            assert_eq!(u.basis.len(), t.dim);
            let mut gens = tangent_generators(&a, g).unwrap();
            gens.extend(u.basis.iter().map(MatrixGerm::pack));
            let span = span_build(&gens, a.packed_dim(), a.nvars(), u.certified_at).unwrap();
            assert_eq!(span.dim(), span.ambient_dim(), "{:?}", a.display_rows());
        }
    }
}
