use super::instances::{
    default_gen_labels, full_upper_triangular, scalar_plus_strictly_upper, trunc_free, zmod_pk,
    InstanceAlgebra,
};
use super::*;
use crate::scalars::{Scalar, ScalarRing};

fn gf5() -> ScalarRing {
    ScalarRing::prime_field(5).unwrap()
}

fn free2() -> InstanceAlgebra {
    trunc_free(gf5(), default_gen_labels(2), 3).unwrap()
}

/// GF(5) x GF(5) with orthogonal idempotents e1, e2.
fn product_of_two_fields() -> (Algebra, Ideal) {
    let ring = gf5();
    let row = |v: [i64; 2]| v.iter().map(|&x| ring.from_i64(x)).collect::<Vec<_>>();
    let table = vec![row([1, 0]), row([0, 0]), row([0, 0]), row([0, 1])];
    let a = Algebra::new(
        ring,
        vec!["e1".into(), "e2".into()],
        table,
        row([1, 1]),
    )
    .unwrap();
    let e1 = a.basis_element(0);
    let ideal = Ideal::closure(&a, &[e1]);
    (a, ideal)
}

#[test]
fn ideal_closure_examples() {
    let inst = free2();
    let a = &inst.algebra;

    let zero = Ideal::closure(a, &[a.zero()]);
    assert!(zero.is_zero());

    // The ideal generated by u is the span of every monomial containing u:
    // u, uu, uv, vu (degree-3 products truncate).
    let u = &inst.ideal_gens[0];
    let i_u = Ideal::closure(a, std::slice::from_ref(u));
    assert_eq!(i_u.rank(), 4);
    for label in ["u", "uu", "uv", "vu"] {
        let idx = a.labels().iter().position(|l| l == label).unwrap();
        assert!(i_u.contains(&a.basis_element(idx)), "{label} missing");
    }
    assert!(!i_u.contains(&a.one()));

    let whole = Ideal::closure(a, &[a.one()]);
    assert_eq!(whole.rank(), a.dim());
}

#[test]
fn ideal_closure_is_idempotent() {
    let inst = free2();
    let a = &inst.algebra;
    let i1 = Ideal::closure(a, &inst.ideal_gens);
    let i2 = Ideal::closure(a, &i1.basis_elements());
    assert_eq!(i1, i2);
}

#[test]
fn ideal_membership_examples() {
    let inst = free2();
    let a = &inst.algebra;
    let u = &inst.ideal_gens[0];
    let i_u = Ideal::closure(a, std::slice::from_ref(u));
    assert!(i_u.contains(&a.zero()));
    assert!(i_u.contains(u));
    assert!(!i_u.contains(&a.one()));
}

#[test]
fn quotient_by_zero_is_identity() {
    let inst = free2();
    let a = &inst.algebra;
    let qd = quotient_algebra(a, &Ideal::zero(a)).unwrap();
    assert_eq!(qd.quotient().dim(), a.dim());
    for i in 0..a.dim() {
        assert_eq!(
            qd.project(&a.basis_element(i)).coords(),
            a.basis_element(i).coords()
        );
    }
}

#[test]
fn quotient_of_trunc_free_by_augmentation() {
    let gf5 = gf5();
    let inst = trunc_free(gf5, default_gen_labels(1), 2).unwrap();
    let a = &inst.algebra;
    let i = Ideal::closure(a, &inst.ideal_gens);
    let qd = quotient_algebra(a, &i).unwrap();
    assert_eq!(qd.quotient().dim(), 1);
    assert_eq!(qd.quotient().ring(), gf5);
    // the projection is a verified morphism (A, I) -> (A/I, 0)
    let src = Pair::new(a.clone(), i).unwrap();
    let tgt = Pair::new(qd.quotient().clone(), Ideal::zero(qd.quotient())).unwrap();
    let proj = PairMorphism::new(src, tgt, qd.projection_matrix());
    assert!(validate_morphism(&proj).ok());
}

#[test]
fn quotient_of_chain_ring_changes_scalars() {
    // Z/49 modulo (7) behaves like GF(7).
    let inst = zmod_pk(7, 2).unwrap();
    let a = &inst.algebra;
    let i = Ideal::closure(a, &inst.ideal_gens);
    let qd = quotient_algebra(a, &i).unwrap();
    let gf7 = ScalarRing::prime_field(7).unwrap();
    assert_eq!(qd.quotient().ring(), gf7);
    assert_eq!(qd.quotient().dim(), 1);
    // canonical surjection: 40 mod 7 = 5
    let e = a.element_from_i64(&[40]);
    assert_eq!(qd.project(&e).coords()[0], gf7.from_i64(5));
    // section lifts representatives
    let lifted = qd.lift(&qd.quotient().element_from_i64(&[5]));
    assert_eq!(lifted.coords()[0], a.ring().from_i64(5));
}

#[test]
fn commutator_filtration_ground_truth() {
    // Commutative pair: I^(2) = 0.
    let inst = zmod_pk(7, 2).unwrap();
    let pair = Pair::new(
        inst.algebra.clone(),
        Ideal::closure(&inst.algebra, &inst.ideal_gens),
    )
    .unwrap();
    let cf = commutator_filtration(&pair);
    assert!(cf.terminates_at_zero);
    assert_eq!(cf.levels.len(), 2);

    // GF(5)<u,v> deg < 3: I^(2) = span{uv - vu}, I^(3) = 0.
    let inst = free2();
    let a = &inst.algebra;
    let pair = Pair::new(a.clone(), Ideal::closure(a, &inst.ideal_gens)).unwrap();
    let cf = commutator_filtration(&pair);
    assert!(cf.terminates_at_zero);
    assert_eq!(cf.levels.len(), 3);
    assert_eq!(cf.levels[1].rank(), 1);
    let u = &inst.ideal_gens[0];
    let v = &inst.ideal_gens[1];
    assert!(cf.levels[1].contains(&u.commutator(v)));
    assert!(cf.levels[2].is_zero());
    assert!(is_perfect(&pair));

    // Full upper-triangular 2x2: the commutator filtration stabilizes at I.
    let inst = full_upper_triangular(gf5(), 2).unwrap();
    let a = &inst.algebra;
    let i = Ideal::closure(a, &inst.ideal_gens);
    let pair = Pair::new(a.clone(), i.clone()).unwrap();
    let cf = commutator_filtration(&pair);
    assert!(!cf.terminates_at_zero);
    assert_eq!(cf.stable(), &i);
    assert!(!is_perfect(&pair));
}

#[test]
fn commutator_filtration_is_monotone_under_morphisms() {
    // phi(I^(n)) inside J^(n) for the quotient projection of the
    // full upper-triangular specimen.
    let inst = full_upper_triangular(gf5(), 2).unwrap();
    let a = &inst.algebra;
    let pair = Pair::new(a.clone(), Ideal::closure(a, &inst.ideal_gens)).unwrap();
    let (target, proj) = perfect_quotient(&pair).unwrap();
    let src_cf = commutator_filtration(&pair);
    let tgt_cf = commutator_filtration(&target);
    for (n, level) in src_cf.levels.iter().enumerate() {
        let tgt_level = if n < tgt_cf.levels.len() {
            &tgt_cf.levels[n]
        } else {
            tgt_cf.levels.last().unwrap()
        };
        for g in level.basis_elements() {
            assert!(tgt_level.contains(&proj.apply(&g)));
        }
    }
}

#[test]
fn perfect_quotient_of_upper_triangular_is_diagonal() {
    let inst = full_upper_triangular(gf5(), 2).unwrap();
    let a = &inst.algebra;
    let pair = Pair::new(a.clone(), Ideal::closure(a, &inst.ideal_gens)).unwrap();
    let (target, proj) = perfect_quotient(&pair).unwrap();
    assert_eq!(target.algebra().dim(), 2);
    assert!(target.ideal().is_zero());
    assert!(is_perfect(&target));
    assert!(validate_morphism(&proj).ok());

    // Idempotence: applying the functor again changes nothing.
    let (target2, _) = perfect_quotient(&target).unwrap();
    assert_eq!(target2.algebra().dim(), target.algebra().dim());

    // Perfect input: dimensions preserved.
    let inst = free2();
    let pair = Pair::new(
        inst.algebra.clone(),
        Ideal::closure(&inst.algebra, &inst.ideal_gens),
    )
    .unwrap();
    let (same, _) = perfect_quotient(&pair).unwrap();
    assert_eq!(same.algebra().dim(), pair.algebra().dim());
}

#[test]
fn filtration_hypotheses_hold_on_good_instances() {
    // Z/49 with the adic chain.
    let inst = zmod_pk(7, 2).unwrap();
    let pair = Pair::new(
        inst.algebra.clone(),
        Ideal::closure(&inst.algebra, &inst.ideal_gens),
    )
    .unwrap();
    let filt = Filtration::from_generator_chain(pair, &inst.chain_gens).unwrap();
    assert!(filt.flags().all_verified_true());

    // GF(5)<u,v> deg < 3 with the degree chain.
    let inst = free2();
    let pair = Pair::new(
        inst.algebra.clone(),
        Ideal::closure(&inst.algebra, &inst.ideal_gens),
    )
    .unwrap();
    let filt = Filtration::from_generator_chain(pair, &inst.chain_gens).unwrap();
    assert!(filt.flags().all_verified_true());
    assert_eq!(filt.len(), 3);
}

#[test]
fn filtration_hypotheses_fail_on_full_upper_triangular() {
    let inst = full_upper_triangular(gf5(), 2).unwrap();
    let pair = Pair::new(
        inst.algebra.clone(),
        Ideal::closure(&inst.algebra, &inst.ideal_gens),
    )
    .unwrap();
    let filt = Filtration::from_generator_chain(pair, &inst.chain_gens).unwrap();
    assert_eq!(filt.flags().f_commutative, Tri::VerifiedFalse);
    let (_, report) = filt.checked();
    assert!(!report.levels[0].f_commutative);
    assert!(report.violations.iter().any(|v| v.contains("[A, I_1]")));
}

#[test]
fn invert_one_plus_examples() {
    let inst = trunc_free(gf5(), default_gen_labels(1), 2).unwrap();
    let a = &inst.algebra;
    let pair = Pair::new(a.clone(), Ideal::closure(a, &inst.ideal_gens)).unwrap();
    let filt = Filtration::from_generator_chain(pair, &inst.chain_gens).unwrap();

    // a = 0 -> 1
    let inv = invert_one_plus(&a.zero(), &filt).unwrap();
    assert_eq!(inv, a.one());

    // a = u -> 1 - u = 1 + 4u
    let u = &inst.ideal_gens[0];
    let inv = invert_one_plus(u, &filt).unwrap();
    assert_eq!(inv, a.element_from_i64(&[1, 4]));

    // Z/8: (1 + 2)^-1 = 3 since 3 * 3 = 9 = 1.
    let inst = zmod_pk(2, 3).unwrap();
    let a = &inst.algebra;
    let pair = Pair::new(a.clone(), Ideal::closure(a, &inst.ideal_gens)).unwrap();
    let filt = Filtration::from_generator_chain(pair, &inst.chain_gens).unwrap();
    let two = a.element_from_i64(&[2]);
    let inv = invert_one_plus(&two, &filt).unwrap();
    assert_eq!(inv, a.element_from_i64(&[3]));
}

#[test]
fn invert_one_plus_requires_verified_flags() {
    let inst = trunc_free(gf5(), default_gen_labels(1), 2).unwrap();
    let a = &inst.algebra;
    let pair = Pair::new(a.clone(), Ideal::closure(a, &inst.ideal_gens)).unwrap();
    let chain = vec![pair.ideal().clone(), Ideal::zero(a)];
    let unchecked = Filtration::new(pair, chain).unwrap();
    let u = &inst.ideal_gens[0];
    assert!(matches!(
        invert_one_plus(u, &unchecked),
        Err(crate::error::Error::HypothesesUnverified(_))
    ));
}

#[test]
fn jacobson_examples() {
    // I = 0 is always Jacobson.
    let inst = zmod_pk(5, 1).unwrap();
    let pair = Pair::new(inst.algebra.clone(), Ideal::zero(&inst.algebra)).unwrap();
    assert_eq!(is_jacobson(&pair, 1 << 20), Verdict::True);

    // Nilpotent augmentation ideal.
    let inst = free2();
    let pair = Pair::new(
        inst.algebra.clone(),
        Ideal::closure(&inst.algebra, &inst.ideal_gens),
    )
    .unwrap();
    assert_eq!(is_jacobson(&pair, 1 << 20), Verdict::True);

    // GF(5) x GF(5) with I = (e1): 1 - e1 = e2 is not a unit.
    let (a, ideal) = product_of_two_fields();
    let pair = Pair::new(a, ideal).unwrap();
    assert_eq!(is_jacobson(&pair, 1 << 20), Verdict::False);
}

#[test]
fn unit_testing() {
    let inst = free2();
    let a = &inst.algebra;
    assert_eq!(is_unit(&a.one()), Some(a.one()));

    let u = &inst.ideal_gens[0];
    assert!(is_unit(u).is_none(), "nilpotent nonzero element");

    // 1 + uv - vu is a unit with inverse 1 - (uv - vu).
    let v = &inst.ideal_gens[1];
    let c = u.mul(v).sub(&v.mul(u));
    let elt = a.one().add(&c);
    let inv = is_unit(&elt).expect("unit");
    assert_eq!(inv, a.one().sub(&c));
}

#[test]
fn unit_agrees_with_exhaustive_search() {
    // On GF(5)<u> deg < 2 (25 elements) compare against brute force.
    let inst = trunc_free(gf5(), default_gen_labels(1), 2).unwrap();
    let a = &inst.algebra;
    for x in a.iter_elements() {
        let fast = is_unit(&x).is_some();
        let brute = a.iter_elements().any(|y| x.mul(&y) == a.one() && y.mul(&x) == a.one());
        assert_eq!(fast, brute, "disagreement at {x}");
    }
}

#[test]
fn local_pair_examples() {
    let inst = zmod_pk(5, 1).unwrap();
    let pair = Pair::new(inst.algebra.clone(), Ideal::zero(&inst.algebra)).unwrap();
    assert_eq!(is_local_pair(&pair, 1 << 20), Verdict::True);

    let inst = free2();
    let pair = Pair::new(
        inst.algebra.clone(),
        Ideal::closure(&inst.algebra, &inst.ideal_gens),
    )
    .unwrap();
    assert_eq!(is_local_pair(&pair, 1 << 20), Verdict::True);

    let (a, ideal) = product_of_two_fields();
    let pair = Pair::new(a, ideal).unwrap();
    assert_eq!(is_local_pair(&pair, 1 << 20), Verdict::False);
}

#[test]
fn morphism_validation() {
    let inst = free2();
    let a = &inst.algebra;
    let pair = Pair::new(a.clone(), Ideal::closure(a, &inst.ideal_gens)).unwrap();
    assert!(validate_morphism(&PairMorphism::identity(&pair)).ok());

    // u -> 1 into GF(5) is not multiplicative: u^2 = 0 but 1^2 = 1.
    let inst1 = trunc_free(gf5(), default_gen_labels(1), 2).unwrap();
    let a1 = &inst1.algebra;
    let src = Pair::new(a1.clone(), Ideal::closure(a1, &inst1.ideal_gens)).unwrap();
    let f = zmod_pk(5, 1).unwrap();
    let tgt = Pair::new(f.algebra.clone(), Ideal::zero(&f.algebra)).unwrap();
    let mut m = crate::scalars::ScalarMatrix::zero(gf5(), 1, 2);
    m.set(0, 0, Scalar::one(gf5()));
    m.set(0, 1, Scalar::one(gf5()));
    let bad = PairMorphism::new(src, tgt, m);
    let report = validate_morphism(&bad);
    assert!(!report.ok());
    assert!(!report.multiplicative);
}

#[test]
fn preimage_condition_detected() {
    // The zero map GF(5)<u>/(u^2) -> GF(5) with J = 0 pulls J back to all
    // of the kernel (u), so with I = 0 the preimage condition fails.
    let inst1 = trunc_free(gf5(), default_gen_labels(1), 2).unwrap();
    let a1 = &inst1.algebra;
    let src = Pair::new(a1.clone(), Ideal::zero(a1)).unwrap();
    let f = zmod_pk(5, 1).unwrap();
    let tgt = Pair::new(f.algebra.clone(), Ideal::zero(&f.algebra)).unwrap();
    let mut m = crate::scalars::ScalarMatrix::zero(gf5(), 1, 2);
    m.set(0, 0, Scalar::one(gf5()));
    // u -> 0: multiplicative and unit-preserving, but phi^-1(0) = (u) != 0.
    let morph = PairMorphism::new(src, tgt, m);
    let report = validate_morphism(&morph);
    assert!(report.multiplicative && report.unit_preserved);
    assert!(!report.preimage_contained);
}

#[test]
fn opposite_pair_and_filtration() {
    let inst = free2();
    let a = &inst.algebra;
    let pair = Pair::new(a.clone(), Ideal::closure(a, &inst.ideal_gens)).unwrap();
    let filt = Filtration::from_generator_chain(pair.clone(), &inst.chain_gens).unwrap();
    let (op_filt, report) = filt.opposite_checked();
    assert!(report.all_hold(), "graded hypotheses are mirror-symmetric");
    assert_eq!(op_filt.pair().algebra(), &a.opposite());
}

#[test]
fn commutative_algebra_opposite_is_identical() {
    let inst = zmod_pk(7, 2).unwrap();
    let a = &inst.algebra;
    assert_eq!(&a.opposite(), a);
}
