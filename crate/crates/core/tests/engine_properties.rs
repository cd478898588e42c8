//! Property tests for the colength engine, the determinantal ideals and the
//! invariant relations between Milnor and Tjurina numbers.

use germlab_core::detideal::{apply, buchsbaum_eisenbud_vector, det, hilbert_burch_vector, minors, pfaffian};
use germlab_core::invariants::{milnor, quasi_homogeneous, tjurina_number};
use germlab_core::jetlin::{colength, recheck_certificate, span_equal};
use germlab_core::matrix::mat_mul;
use germlab_core::{ColengthConfig, MatrixGerm, MatrixKind, ModuleElement, Monomial, Poly, Rational, VariableSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Counts standard monomials of a monomial ideal by enumeration inside the
/// box cut out by the pure powers.
fn staircase(nvars: usize, gens: &[Vec<u32>], box_sizes: &[u32]) -> usize {
    let mut count = 0;
    let mut e = vec![0u32; nvars];
    loop {
        if !gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return count;
            }
            e[i] += 1;
            if e[i] < box_sizes[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn monomial_poly(exps: &[u32]) -> Poly {
    let mut p = Poly::zero(exps.len());
    let mut m = Monomial::one(exps.len());
    for (i, &k) in exps.iter().enumerate() {
        for _ in 0..k {
            m = m.mul(&Monomial::var(exps.len(), i));
        }
    }
    p.add_term(m, &Rational::one());
    p
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

/// An invertible jet: a random unit upper-triangular constant part times a
/// lower-triangular one, plus random higher-order terms.
fn random_unit_matrix(rng: &mut ChaCha8Rng, size: usize, nvars: usize) -> Vec<Vec<Poly>> {
    let c = |rng: &mut ChaCha8Rng| Poly::constant(nvars, Rational::from_int(rng.gen_range(-2..=2)));
    let mut up = vec![vec![Poly::zero(nvars); size]; size];
    let mut lo = vec![vec![Poly::zero(nvars); size]; size];
    for i in 0..size {
        up[i][i] = Poly::one(nvars);
        lo[i][i] = Poly::one(nvars);
        for j in i + 1..size {
            up[i][j] = c(rng);
            lo[j][i] = c(rng);
        }
    }
    let mut p = mat_mul(&up, &lo, nvars, None);
    for row in p.iter_mut() {
        for e in row.iter_mut() {
            *e = e.add(&random_poly(rng, nvars, 1, 2, 2));
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn colength_matches_staircase(
        nvars in 1usize..=3,
        powers in prop::collection::vec(1u32..=5, 3),
        extra in prop::collection::vec(prop::collection::vec(0u32..=3, 3), 0..=2),
    ) {
        let box_sizes: Vec<u32> = powers[..nvars].to_vec();
        let mut gens: Vec<Vec<u32>> = (0..nvars)
            .map(|i| (0..nvars).map(|j| if i == j { box_sizes[i] } else { 0 }).collect())
            .collect();
        for e in extra.iter().take(5 - nvars) {
            let g: Vec<u32> = e[..nvars].to_vec();
            let d: u32 = g.iter().sum();
            if (1..=5).contains(&d) {
                gens.push(g);
            }
        }
        let elems: Vec<ModuleElement> = gens.iter().map(|g| ModuleElement::scalar(monomial_poly(g))).collect();
        let res = colength(&elems, 1, nvars, 64).unwrap();
        prop_assert!(res.certified);
        prop_assert_eq!(res.dim, staircase(nvars, &gens, &box_sizes));
        prop_assert_eq!(res.cobasis.len(), res.dim);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 * half;
        let nvars = 2;
        let mut e = vec![vec![Poly::zero(nvars); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let p = random_poly(&mut rng, nvars, 0, 2, 2);
                e[j][i] = p.neg();
                e[i][j] = p;
            }
        }
        let pf = pfaffian(&e, nvars);
        prop_assert_eq!(pf.mul(&pf), det(&e, nvars));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn minor_ideals_are_invariant(seed in any::<u64>(), t in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = VariableSet::parse("x, y, z").unwrap();
        let nv = 3;
        let a: Vec<Vec<Poly>> = (0..2).map(|_| (0..3).map(|_| random_poly(&mut rng, nv, 1, 3, 3)).collect()).collect();
        let p = random_unit_matrix(&mut rng, 2, nv);
        let q = random_unit_matrix(&mut rng, 3, nv);
        let b = mat_mul(&mat_mul(&p, &a, nv, None), &q, nv, None);
        let ma = MatrixGerm::new(vars.clone(), MatrixKind::General, a).unwrap();
        let mb = MatrixGerm::new(vars, MatrixKind::General, b).unwrap();
        let ga: Vec<ModuleElement> = minors(&ma, t).unwrap().into_iter().map(|(_, _, f)| ModuleElement::scalar(f)).collect();
        let gb: Vec<ModuleElement> = minors(&mb, t).unwrap().into_iter().map(|(_, _, f)| ModuleElement::scalar(f)).collect();
        prop_assert!(span_equal(&ga, &gb, 1, nv, 6).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Random isolated plane curves: a generic part of degree d plus pure
    /// powers, so the Jacobian ideal has finite colength.
    #[test]
    fn milnor_bounds_tjurina(seed in any::<u64>(), a in 2u32..=6, b in 2u32..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = monomial_poly(&[a, 0]).add(&monomial_poly(&[0, b])).add(&random_poly(&mut rng, 2, 2, 4, 2));
        let cfg = ColengthConfig::default();
        let mu = milnor(&f, &cfg).unwrap();
        let tau = tjurina_number(&f, &cfg).unwrap();
        if let (Some(mu), Some(tau)) = (mu.value(), tau.value()) {
            prop_assert!(mu >= tau);
            if quasi_homogeneous(&f).is_some() {
                prop_assert_eq!(mu, tau);
            }
        }
    }
}

/// Generators of a random ideal with finite colength in two variables: pure
/// powers with higher-order tails, so the initial forms are a regular sequence.
fn random_primary(rng: &mut ChaCha8Rng) -> Vec<ModuleElement> {
    let a = rng.gen_range(1..=5);
    let b = rng.gen_range(1..=5);
    let mut gens = vec![
        ModuleElement::scalar(monomial_poly(&[a, 0]).add(&random_poly(rng, 2, a + 1, a + 2, 2))),
        ModuleElement::scalar(monomial_poly(&[0, b]).add(&random_poly(rng, 2, b + 1, b + 2, 2))),
    ];
    if rng.gen_bool(0.5) {
        gens.push(ModuleElement::scalar(random_poly(rng, 2, 1, 3, 3)));
    }
    gens
}

/// Product of the orders of two generators (the intersection multiplicity
/// when the initial forms share no factor).
fn a_times_b(gens: &[ModuleElement]) -> u32 {
    gens.iter().map(|g| g.order().unwrap()).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn certified_colength_is_stable(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_primary(&mut rng);
        let r = colength(&gens, 1, 2, 40).unwrap();
        prop_assert!(r.certified);
        if gens.len() == 2 {
            prop_assert_eq!(r.dim as u32, a_times_b(&gens));
        }
        prop_assert!(recheck_certificate(&gens, 1, 2, &r).unwrap());
        let wider = colength(&gens, 1, 2, 64).unwrap();
        prop_assert_eq!(&wider.cobasis, &r.cobasis);
        prop_assert_eq!(wider.dim, r.dim);
        // more generators, smaller quotient
        let mut more = gens.clone();
        more.push(ModuleElement::scalar(random_poly(&mut rng, 2, 1, 3, 2)));
        let m = colength(&more, 1, 2, 64).unwrap();
        prop_assert!(m.certified && m.dim <= r.dim);
    }

    #[test]
    fn span_equality_is_an_equivalence(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_primary(&mut rng);
        // b generates the same ideal as a; c is a perturbation that may or may not
        let mut b: Vec<ModuleElement> = a.iter().rev().cloned().collect();
        let unit = Poly::one(2).add(&random_poly(&mut rng, 2, 1, 2, 2));
        b[0] = b[0].mul_poly(&unit).add(&b[1].mul_poly(&random_poly(&mut rng, 2, 0, 2, 2)));
        let mut c = a.clone();
        c[0] = c[0].add(&ModuleElement::scalar(random_poly(&mut rng, 2, 3, 5, 1)));
        let n = 6;
        let eq = |x: &[ModuleElement], y: &[ModuleElement]| span_equal(x, y, 1, 2, n).unwrap();
        prop_assert!(eq(&a, &a));
        prop_assert!(eq(&a, &b) && eq(&b, &a));
        prop_assert_eq!(eq(&a, &c), eq(&c, &a));
        if eq(&b, &c) {
            prop_assert!(eq(&a, &c));
        }
    }

    /// A unit in the corner: the 2-minors of A and the entries of its Schur
    /// complement generate the same ideal.
    #[test]
    fn unit_entries_can_be_deleted(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = VariableSet::parse("x, y, z").unwrap();
        let nv = 3;
        let mut e: Vec<Vec<Poly>> = (0..2).map(|_| (0..3).map(|_| random_poly(&mut rng, nv, 1, 2, 2)).collect()).collect();
        e[0][0] = Poly::constant(nv, Rational::from_int(rng.gen_range(1..=3))).add(&random_poly(&mut rng, nv, 1, 2, 2));
        let a = MatrixGerm::new(vars, MatrixKind::General, e).unwrap();
        let (reduced, steps) = a.reduce_units(8).unwrap();
        prop_assert_eq!(steps, 1);
        let b = reduced.unwrap();
        prop_assert_eq!((b.rows(), b.cols()), (1, 2));
        let ga: Vec<ModuleElement> = minors(&a, 2).unwrap().into_iter().map(|(_, _, f)| ModuleElement::scalar(f)).collect();
        let gb: Vec<ModuleElement> = b.flatten().into_iter().map(ModuleElement::scalar).collect();
        prop_assert!(span_equal(&ga, &gb, 1, nv, 6).unwrap());
    }

    #[test]
    fn syzygy_vectors_annihilate(seed in any::<u64>(), m in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = VariableSet::parse("x, y, z").unwrap();
        let nv = 3;
        let e: Vec<Vec<Poly>> = (0..m).map(|_| (0..=m).map(|_| random_poly(&mut rng, nv, 0, 2, 2)).collect()).collect();
        let a = MatrixGerm::new(vars.clone(), MatrixKind::General, e).unwrap();
        let f = hilbert_burch_vector(&a).unwrap();
        prop_assert!(apply(&a, &f).iter().all(Poly::is_zero));
        let size = 2 * m + 1;
        let upper: Vec<Poly> = (0..size * (size - 1) / 2).map(|_| random_poly(&mut rng, nv, 0, 2, 2)).collect();
        let s = MatrixGerm::skew_from_upper(vars, size, upper).unwrap();
        let g = buchsbaum_eisenbud_vector(&s).unwrap();
        prop_assert!(apply(&s, &g).iter().all(Poly::is_zero));
    }
}
