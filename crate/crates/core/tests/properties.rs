use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mqindex_core::alexander::{
    alexander_matrix_with, alexander_polynomial, elementary_ideal, fox_derivative, ideal_is_unit,
    knot_determinant, nakanishi_lower, GroupRingElement, IdealDecision, ProperWitness,
};
use mqindex_core::knots::{
    cf_from_fraction, crossing_change_relator_delta, montesinos_equiv, pairing, pd_for_montesinos,
    pd_from_braid, tangle_fraction, virtualize_relator_delta, wirtinger_from_gauss,
    wirtinger_from_pd, BraidWord, EndpointPairing, MontesinosKnot, PdCode, RationalTangle,
};
use mqindex_core::laurent::is_prime;
use mqindex_core::matrix::snf;
use mqindex_core::mq::{
    gordian_lower_bound, rank_bound_ngs, transfer_ngs, LowerCertificate, MoveCatalogEntry,
    MqInterval,
};
use mqindex_core::polymatrix::LaurentMatrix;
use mqindex_core::presentation::{
    knuth_bendix, Completion, KbLimits, Presentation, RelatorMatching,
};
use mqindex_core::{IntegerMatrix, LaurentPolynomial, Letter, Symbol, Word};

fn symbols(n: usize) -> Vec<Symbol> {
    (1..=n)
        .map(|i| Symbol::new(&format!("x{i}")).unwrap())
        .collect()
}

fn word_in(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n, any::<bool>()), 0..=max_len).prop_map(move |v| {
        let gens = symbols(n);
        Word::reduce(
            v.into_iter()
                .map(|(i, inv)| Letter::new(gens[i].clone(), inv)),
        )
    })
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[Symbol], max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=max_len);
        let w = Word::reduce((0..len).map(|_| {
            Letter::new(
                gens[rng.gen_range(0..gens.len())].clone(),
                rng.gen_bool(0.5),
            )
        }));
        if !w.is_identity() {
            return w;
        }
    }
}

fn random_presentation(rng: &mut ChaCha8Rng, min_gens: usize) -> Presentation {
    let gens = symbols(rng.gen_range(min_gens..=4));
    let r = rng.gen_range(0..=4);
    let relators = (0..r).map(|_| random_word(rng, &gens, 8)).collect();
    Presentation::new(gens, relators).unwrap()
}

fn random_knot(rng: &mut ChaCha8Rng) -> PdCode {
    loop {
        let strands = rng.gen_range(2..=4);
        let letters: Vec<i32> = (0..rng.gen_range(1..=10))
            .map(|_| {
                let i = rng.gen_range(1..strands);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        if let Ok(pd) = pd_from_braid(&BraidWord::new(letters).unwrap()) {
            return pd;
        }
    }
}

fn element(w: &Word) -> GroupRingElement {
    GroupRingElement::from_word(w.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fox_product_rule(u in word_in(3, 8), v in word_in(3, 8), g in 0..3usize) {
        let g = &symbols(3)[g];
        let lhs = fox_derivative(&u.multiply(&v), g);
        let rhs = &fox_derivative(&u, g) + &(&element(&u) * &fox_derivative(&v, g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fox_fundamental_identity(w in word_in(4, 12)) {
        let mut sum = GroupRingElement::zero();
        for g in symbols(4) {
            let g_minus_1 = &element(&Word::generator(g.clone())) - &GroupRingElement::one();
            sum = &sum + &(&fox_derivative(&w, &g) * &g_minus_1);
        }
        prop_assert_eq!(sum, &element(&w) - &GroupRingElement::one());
    }

    #[test]
    fn smith_normal_form_contract(
        rows in (1..6usize, 1..6usize).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-12i64..=12, c), r)
        })
    ) {
        let m = IntegerMatrix::from_i64_rows(&rows, rows[0].len()).unwrap();
        let d = snf(&m);
        prop_assert!(d.u.mul(&m).unwrap().mul(&d.v).unwrap() == d.s);
        prop_assert!(d.u.determinant().unwrap().abs().is_one());
        prop_assert!(d.v.determinant().unwrap().abs().is_one());
        let k = d.invariant_factors.len();
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                let x = &d.s[(i, j)];
                if i == j && i < k {
                    prop_assert_eq!(x, &d.invariant_factors[i]);
                    prop_assert!(x.is_positive());
                } else {
                    prop_assert!(x.is_zero());
                }
            }
        }
        for w in d.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn laurent_determinant_matches_cofactor_expansion(
        entries in (1..=4usize).prop_flat_map(|n| {
            prop::collection::vec((-1i64..=1, prop::collection::vec(-3i64..=3, 1..=3)), n * n)
        })
    ) {
        let n = (entries.len() as f64).sqrt() as usize;
        let rows: Vec<Vec<LaurentPolynomial>> = entries
            .chunks(n)
            .map(|r| r.iter().map(|(low, c)| LaurentPolynomial::from_i64(*low, c)).collect())
            .collect();
        let expected = cofactor(&rows);
        prop_assert_eq!(LaurentMatrix::from_rows(rows).unwrap().determinant().unwrap(), expected);
    }

    #[test]
    fn ideal_decisions_carry_checkable_evidence(
        polys in prop::collection::vec((-2i64..=2, prop::collection::vec(-5i64..=5, 1..=4)), 1..=3),
        shift in -3i64..=3,
    ) {
        let gens: Vec<LaurentPolynomial> =
            polys.iter().map(|(low, c)| LaurentPolynomial::from_i64(*low, c)).collect();
        let decision = ideal_is_unit(&gens).unwrap();
        match &decision {
            IdealDecision::Unit(cert) => prop_assert!(cert.verify(&gens)),
            IdealDecision::Proper(ProperWitness::AllZero) => {
                prop_assert!(gens.iter().all(LaurentPolynomial::is_zero))
            }
            IdealDecision::Proper(ProperWitness::RationalGcd(g)) => {
                prop_assert!(g.span() > 0);
                for f in gens.iter().filter(|f| !f.is_zero()) {
                    prop_assert_eq!(f.gcd_over_rationals(g).unwrap().span(), g.span());
                }
            }
            IdealDecision::Proper(ProperWitness::Modular { modulus, gcd }) => {
                prop_assert!(modulus > &BigInt::one());
                prop_assert!(gcd.is_zero() || gcd.span() > 0);
                if is_prime(modulus) {
                    for f in &gens {
                        let reduced = f.mod_p(modulus);
                        if gcd.is_zero() {
                            prop_assert!(reduced.is_zero());
                        } else if !reduced.is_zero() {
                            prop_assert_eq!(reduced.gcd_mod_p(gcd, modulus).unwrap().span(), gcd.span());
                        }
                    }
                }
            }
        }
        let moved: Vec<LaurentPolynomial> = gens.iter().map(|g| -&g.shift(shift)).collect();
        prop_assert_eq!(ideal_is_unit(&moved).unwrap().is_unit(), decision.is_unit());
    }

    #[test]
    fn tangle_fraction_round_trip(p in -60i64..=60, q in 0i64..=60) {
        prop_assume!(num_integer::gcd(p, q) == 1 && q > 0);
        let t = RationalTangle::new(p, q).unwrap();
        let cf = cf_from_fraction(p, q).unwrap();
        prop_assert_eq!(tangle_fraction(&cf).unwrap(), (t.numerator(), t.denominator()));
        let expected = match (p.rem_euclid(2), q % 2) {
            (0, _) => EndpointPairing::Horizontal,
            (_, 0) => EndpointPairing::Vertical,
            _ => EndpointPairing::Diagonal,
        };
        prop_assert_eq!(pairing(p, q).unwrap(), expected);
    }

    #[test]
    fn gordian_bound_is_monotone(gap in 0usize..12, extra in 0usize..4, n in 2usize..6) {
        let interval = |lower, upper| MqInterval {
            lower,
            upper: Some(upper),
            lower_certificate: LowerCertificate::Trivial,
            upper_certificate: None,
        };
        let small = MoveCatalogEntry::new("small", n, &[]);
        let large = MoveCatalogEntry::new("large", n + 1, &[]);
        let unknot = interval(0, 0);
        let k = interval(gap, gap);
        let k2 = interval(gap + extra, gap + extra);
        prop_assert!(gordian_lower_bound(&k, &unknot, &small) <= gordian_lower_bound(&k2, &unknot, &small));
        prop_assert!(gordian_lower_bound(&k, &unknot, &large) <= gordian_lower_bound(&k, &unknot, &small));
        prop_assert_eq!(gordian_lower_bound(&k, &k, &small), 0);
    }
}

fn cofactor(m: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    if m.is_empty() {
        return LaurentPolynomial::one();
    }
    let mut acc = LaurentPolynomial::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<LaurentPolynomial>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nielsen_automorphism_is_invertible(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(&mut rng, 1);
        let a = rank_bound_ngs(&p).automorphism;
        let gens = p.generators().to_vec();
        for _ in 0..4 {
            let w = random_word(&mut rng, &gens, 10);
            prop_assert_eq!(a.inverse().apply(&a.apply(&w)), w.clone());
            prop_assert_eq!(a.apply(&a.inverse().apply(&w)), w);
        }
    }

    #[test]
    fn rank_bound_witness(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(&mut rng, 1);
        let cert = rank_bound_ngs(&p);
        let (n, h) = (p.generator_count() as i64, cert.h as i64);
        prop_assert_eq!(cert.witness.len() as i64, n + h * (h - 3) / 2);
        for w in &cert.witness.words {
            prop_assert_eq!(p.is_null_homologous(w), Ok(true));
        }
        let q = p.with_relators(&cert.witness.words).unwrap();
        prop_assert_eq!(q.abelianization(), p.abelianization());
    }

    #[test]
    fn transfer_size(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(&mut rng, 2);
        prop_assume!(!p.relators().is_empty());
        let gens = p.generators().to_vec();
        let i = rng.gen_range(0..p.relators().len());
        let u = random_word(&mut rng, &gens, 3);
        let v = random_word(&mut rng, &gens, 3);
        let new = p.relators()[i].multiply(&Word::commutator(&u, &v));
        prop_assume!(new != p.relators()[i]);
        let q = p.replace_relator_at(i, new).unwrap();
        let w = rank_bound_ngs(&p).witness;
        let out = transfer_ngs(&p, &q, &w).unwrap();
        let r_g = p.diff(&q, RelatorMatching::Exact).unwrap().only_left.len();
        prop_assert_eq!(out.len(), r_g + w.len());
        prop_assert!(out.words.iter().all(|x| q.is_null_homologous(x) == Ok(true)));
    }

    #[test]
    fn completion_is_confluent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(&mut rng, 1);
        let Completion::Complete(rs) = knuth_bendix(&p, KbLimits::default()) else {
            return Ok(());
        };
        for r in p.relators() {
            prop_assert!(rs.word_problem(r).unwrap());
        }
        let gens = p.generators().to_vec();
        for _ in 0..4 {
            let w = random_word(&mut rng, &gens, 12);
            let nf = rs.normal_form(&w).unwrap();
            let mut v = rs.encode(&w).unwrap();
            while let Some(next) = rs.rewrite_step(&v, rng.gen()) {
                v = next;
            }
            prop_assert_eq!(rs.decode(&v), nf);
        }
    }

    #[test]
    fn crossing_moves_replace_one_relator(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_knot(&mut rng).to_gauss();
        let id = rng.gen_range(1..=code.crossing_count() as u32);
        for d in [
            crossing_change_relator_delta(&code, id).unwrap(),
            virtualize_relator_delta(&code, id).unwrap(),
        ] {
            let (a, b) = (d.before.relators(), d.after.relators());
            prop_assert_eq!(a.len(), b.len());
            prop_assert!((0..a.len()).all(|i| i == d.index || a[i] == b[i]));
            prop_assert_eq!(d.before.is_null_homologous(&b[d.index]), Ok(true));
            prop_assert_eq!(d.after.is_null_homologous(&a[d.index]), Ok(true));
            prop_assert!(d.before.h1_equal(&d.after));
        }
    }

    #[test]
    fn pd_and_gauss_routes_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pd = random_knot(&mut rng);
        let a = wirtinger_from_pd(&pd);
        let b = wirtinger_from_gauss(&pd.to_gauss());
        prop_assert_eq!(a.abelianization(), b.abelianization());
        prop_assert_eq!(alexander_polynomial(&a).unwrap(), alexander_polynomial(&b).unwrap());
        prop_assert_eq!(knot_determinant(&a).unwrap(), knot_determinant(&b).unwrap());
        prop_assert_eq!(nakanishi_lower(&a).unwrap().value, nakanishi_lower(&b).unwrap().value);
    }

    #[test]
    fn alexander_polynomial_is_well_defined(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = wirtinger_from_pd(&random_knot(&mut rng));
        let delta = alexander_polynomial(&p).unwrap();
        prop_assert!(delta.evaluate_at(&BigInt::one()).unwrap().abs().is_one());
        let c = delta.coefficients();
        prop_assert!((0..c.len()).all(|i| c[i] == c[c.len() - 1 - i]));
        let n = p.generator_count();
        let relator = rng.gen_range(0..p.relators().len());
        let column = rng.gen_range(0..n);
        let m = alexander_matrix_with(&p, Some(relator), column).unwrap();
        let other = m.matrix.determinant().unwrap().normalize();
        prop_assert_eq!(other, delta.normalize());
        let (simplified, _) = p.tietze_simplify(200);
        prop_assert_eq!(alexander_polynomial(&simplified).unwrap(), delta);
    }

    #[test]
    fn elementary_ideal_chain(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = wirtinger_from_pd(&random_knot(&mut rng));
        let mut unit = false;
        for k in 0..3 {
            let e = elementary_ideal(&p, k).unwrap();
            prop_assert!(!unit || e.decision.is_unit());
            unit = e.decision.is_unit();
        }
    }

    #[test]
    fn montesinos_symmetries(
        fractions in prop::collection::vec((-9i64..=9, 2i64..=9), 3..=4),
        rotate in 0usize..4,
        reverse in any::<bool>(),
        shift in -2i64..=2,
    ) {
        prop_assume!(fractions.iter().all(|&(p, q)| num_integer::gcd(p, q) == 1));
        let tangles: Vec<RationalTangle> =
            fractions.iter().map(|&(p, q)| RationalTangle::new(p, q).unwrap()).collect();
        let m = MontesinosKnot::new(tangles.clone()).unwrap();
        let mut moved = tangles.clone();
        let len = moved.len();
        moved.rotate_left(rotate % len);
        if reverse {
            moved.reverse();
        }
        let (a, b) = (moved[0], moved[1]);
        moved[0] = RationalTangle::new(a.numerator() + shift * a.denominator(), a.denominator()).unwrap();
        moved[1] = RationalTangle::new(b.numerator() - shift * b.denominator(), b.denominator()).unwrap();
        let n = MontesinosKnot::new(moved).unwrap();
        prop_assert!(montesinos_equiv(&m, &n));
        prop_assert_eq!(m.determinant(), n.determinant());

        let mut other = tangles;
        other[0] = RationalTangle::new(other[0].numerator() + other[0].denominator(), other[0].denominator()).unwrap();
        prop_assert!(!montesinos_equiv(&m, &MontesinosKnot::new(other).unwrap()));
    }

    #[test]
    fn montesinos_determinant_matches_its_diagram(
        fractions in prop::collection::vec((-5i64..=5, 2i64..=5), 3),
    ) {
        prop_assume!(fractions.iter().all(|&(p, q)| num_integer::gcd(p, q) == 1));
        let m = MontesinosKnot::new(
            fractions.iter().map(|&(p, q)| RationalTangle::new(p, q).unwrap()).collect(),
        ).unwrap();
        let Ok(pd) = pd_for_montesinos(&m) else { return Ok(()); };
        let p = wirtinger_from_pd(&pd);
        prop_assume!(p.abelianization().is_infinite_cyclic());
        prop_assert_eq!(knot_determinant(&p).unwrap(), BigInt::from(m.determinant()));
    }
}
