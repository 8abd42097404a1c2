use super::oracle::brute_force_factorizations;
use super::*;
use crate::algebra::instances::{default_gen_labels, trunc_free, zmod_pk, InstanceAlgebra};
use crate::algebra::{Filtration, Ideal, Pair};
use crate::poly::Side;
use crate::scalars::ScalarRing;

fn setup(inst: &InstanceAlgebra) -> (Filtration, QuotientData) {
    let pair = Pair::new(
        inst.algebra.clone(),
        Ideal::closure(&inst.algebra, &inst.ideal_gens),
    )
    .unwrap();
    let filt = Filtration::from_generator_chain(pair.clone(), &inst.chain_gens).unwrap();
    let qd = pair.residue().unwrap();
    (filt, qd)
}

fn poly(algebra: &Algebra, coeffs: &[&[i64]]) -> Poly {
    Poly::from_coeffs(
        algebra,
        coeffs.iter().map(|c| algebra.element_from_i64(c)).collect(),
    )
}

#[test]
fn z49_flagship_lift() {
    let inst = zmod_pk(7, 2).unwrap();
    let (filt, qd) = setup(&inst);
    let a = &inst.algebra;
    let rq = qd.quotient().clone();

    let f = poly(a, &[&[-15], &[0], &[1]]);
    let f1 = poly(&rq, &[&[-1], &[1]]);
    let f2 = poly(&rq, &[&[1], &[1]]);
    let prob = LiftProblem::new(filt, f.clone(), f1, f2, Side::Left, None).unwrap();
    let result = hensel_lift(&prob).unwrap();

    assert_eq!(result.factor1, poly(a, &[&[-8], &[1]]), "x - 8");
    assert_eq!(result.factor2, poly(a, &[&[8], &[1]]), "x + 8");
    assert_eq!(result.factor1.mul(&result.factor2), f);
    assert!(result.certificate.verify());

    // Defect trace: level 1 defect lies in (7) and the loop used one
    // correction.
    assert_eq!(result.iterations.len(), 1);
    assert!(result.iterations[0].defect_in_level);
}

#[test]
fn truncated_free_flagship_lift() {
    let gf5 = ScalarRing::prime_field(5).unwrap();
    let inst = trunc_free(gf5, default_gen_labels(1), 2).unwrap();
    let (filt, qd) = setup(&inst);
    let a = &inst.algebra;
    let rq = qd.quotient().clone();

    let f = poly(a, &[&[-1, 1], &[0, 0], &[1, 0]]); // x^2 + u - 1
    let f1 = poly(&rq, &[&[-1], &[1]]);
    let f2 = poly(&rq, &[&[1], &[1]]);
    let prob = LiftProblem::new(filt, f.clone(), f1, f2, Side::Left, None).unwrap();
    let result = hensel_lift(&prob).unwrap();

    assert_eq!(result.factor1, poly(a, &[&[-1, 3], &[1, 0]]), "x - 1 + 3u");
    assert_eq!(result.factor2, poly(a, &[&[1, 2], &[1, 0]]), "x + 1 + 2u");
    assert_eq!(result.factor1.mul(&result.factor2), f);
}

#[test]
fn exact_input_is_a_fixed_point() {
    // When F is already the product of the canonical monic lifts of its
    // residue factors, the loop is a no-op with an all-zero defect trace.
    let inst = zmod_pk(7, 2).unwrap();
    let (filt, qd) = setup(&inst);
    let rq = qd.quotient().clone();

    let rf1 = poly(&rq, &[&[-1], &[1]]);
    let rf2 = poly(&rq, &[&[1], &[1]]);
    let g1 = rf1.lift_monic(&qd).unwrap();
    let g2 = rf2.lift_monic(&qd).unwrap();
    let f = g1.mul(&g2);
    let prob = LiftProblem::new(filt, f, rf1, rf2, Side::Left, None).unwrap();
    let result = hensel_lift(&prob).unwrap();
    assert_eq!(result.factor1, g1);
    assert_eq!(result.factor2, g2);
    assert!(result.iterations.iter().all(|r| r.defect.is_zero()));
}

#[test]
fn verify_factorization_checks() {
    let inst = zmod_pk(7, 2).unwrap();
    let (_filt, qd) = setup(&inst);
    let a = &inst.algebra;
    let rq = qd.quotient().clone();

    let f = poly(a, &[&[-15], &[0], &[1]]);
    let x_minus_8 = poly(a, &[&[-8], &[1]]);
    let x_plus_8 = poly(a, &[&[8], &[1]]);
    let rf1 = poly(&rq, &[&[-1], &[1]]);
    let rf2 = poly(&rq, &[&[1], &[1]]);

    assert!(verify_factorization(&f, &x_minus_8, &x_plus_8, &rf1, &rf2, &qd).ok());

    // Swapped factors break the residue match.
    let check = verify_factorization(&f, &x_plus_8, &x_minus_8, &rf1, &rf2, &qd);
    assert!(check.product_exact);
    assert!(!check.residues_match);
}

#[test]
fn uniqueness_on_equal_and_brute_force_oracle() {
    let inst = zmod_pk(7, 2).unwrap();
    let (filt, qd) = setup(&inst);
    let a = &inst.algebra;
    let rq = qd.quotient().clone();

    let f = poly(a, &[&[-15], &[0], &[1]]);
    let f1 = poly(&rq, &[&[-1], &[1]]);
    let f2 = poly(&rq, &[&[1], &[1]]);
    let prob = LiftProblem::new(filt.clone(), f.clone(), f1.clone(), f2.clone(), Side::Left, None)
        .unwrap();
    let result = hensel_lift(&prob).unwrap();

    let outcome = uniqueness_check(
        filt.pair(),
        &f,
        (&result.factor1, &result.factor2),
        (&result.factor1, &result.factor2),
    )
    .unwrap();
    assert!(matches!(outcome, UniquenessOutcome::Equal));

    // Oracle: the 49^2 scan of monic linear pairs with matching residues
    // finds exactly the lifted factorization.
    let ideal = filt.pair().ideal();
    let all = brute_force_factorizations(&f, 1, 1, Some((&qd, ideal, &f1, &f2)), 1 << 20).unwrap();
    assert_eq!(all.len(), 1);
    assert_eq!(all[0].0, result.factor1);
    assert_eq!(all[0].1, result.factor2);
}

#[test]
fn separation_levels() {
    let gf5 = ScalarRing::prime_field(5).unwrap();
    let inst = trunc_free(gf5, default_gen_labels(2), 3).unwrap();
    let a = &inst.algebra;
    let pair = Pair::new(a.clone(), Ideal::closure(a, &inst.ideal_gens)).unwrap();
    let u = &inst.ideal_gens[0];
    let v = &inst.ideal_gens[1];

    // N = uv - vu lies in I^(2) but not I^(3) = 0.
    let n = Poly::constant(u.mul(v).sub(&v.mul(u)));
    assert_eq!(find_separation_level(&n, &pair).unwrap(), 2);

    // N = u lies in I but not in I^(2).
    let n = Poly::constant(u.clone());
    assert_eq!(find_separation_level(&n, &pair).unwrap(), 1);

    // N = 0 is an error.
    assert!(matches!(
        find_separation_level(&Poly::zero(a), &pair),
        Err(Error::ZeroPolynomial)
    ));
}

#[test]
fn brute_force_examples() {
    // F = x^2 over GF(2): only (x, x).
    let inst = zmod_pk(2, 1).unwrap();
    let a = &inst.algebra;
    let f = poly(a, &[&[0], &[0], &[1]]);
    let all = brute_force_factorizations(&f, 1, 1, None, 1 << 20).unwrap();
    assert_eq!(all.len(), 1);
    assert_eq!(all[0].0, Poly::x(a));
    assert_eq!(all[0].1, Poly::x(a));

    // F = x^2 - 1 over GF(5): (x+1)(x+4) and (x+4)(x+1), in enumeration
    // order.
    let inst = zmod_pk(5, 1).unwrap();
    let a = &inst.algebra;
    let f = poly(a, &[&[-1], &[0], &[1]]);
    let all = brute_force_factorizations(&f, 1, 1, None, 1 << 20).unwrap();
    assert_eq!(all.len(), 2);
    assert_eq!(all[0].0, poly(a, &[&[1], &[1]]));
    assert_eq!(all[0].1, poly(a, &[&[4], &[1]]));
    assert_eq!(all[1].0, poly(a, &[&[4], &[1]]));
    assert_eq!(all[1].1, poly(a, &[&[1], &[1]]));

    // Over-cap spaces are rejected.
    assert!(matches!(
        brute_force_factorizations(&f, 1, 1, None, 10),
        Err(Error::SearchSpaceOverCap(_))
    ));
}

#[test]
fn right_lift_on_commutative_instance_matches_left() {
    let gf5 = ScalarRing::prime_field(5).unwrap();
    let inst = trunc_free(gf5, default_gen_labels(1), 2).unwrap();
    let (filt, qd) = setup(&inst);
    let a = &inst.algebra;
    let rq = qd.quotient().clone();

    let f = poly(a, &[&[-1, 1], &[0, 0], &[1, 0]]);
    let f1 = poly(&rq, &[&[-1], &[1]]);
    let f2 = poly(&rq, &[&[1], &[1]]);

    let left = hensel_lift(
        &LiftProblem::new(filt.clone(), f.clone(), f1.clone(), f2.clone(), Side::Left, None)
            .unwrap(),
    )
    .unwrap();
    let right = hensel_lift(
        &LiftProblem::new(filt, f.clone(), f1, f2, Side::Right, None).unwrap(),
    )
    .unwrap();
    assert_eq!(left.factor1, right.factor1);
    assert_eq!(left.factor2, right.factor2);
    assert!(right.certificate.verify());
    assert!(matches!(right.certificate.side, Side::Right));
}

#[test]
fn right_lift_is_the_opposite_transport_of_left() {
    // On a noncommutative instance, run the right lift directly and
    // compare against manually transporting the left lift of the opposite
    // problem.
    let gf5 = ScalarRing::prime_field(5).unwrap();
    let inst = trunc_free(gf5, default_gen_labels(2), 3).unwrap();
    let (filt, qd) = setup(&inst);
    let a = &inst.algebra;
    let rq = qd.quotient().clone();

    let u = &inst.ideal_gens[0];
    let v = &inst.ideal_gens[1];
    // F = (x - 1 + u)(x + 1 + v) expanded, then re-lifted from residues
    // (x - 1, x + 1).
    let g1 = Poly::from_coeffs(a, vec![a.one().neg().add(u), a.one()]);
    let g2 = Poly::from_coeffs(a, vec![a.one().add(v), a.one()]);
    let f = g1.mul(&g2);
    let rf1 = poly(&rq, &[&[-1], &[1]]);
    let rf2 = poly(&rq, &[&[1], &[1]]);

    let right = hensel_lift(
        &LiftProblem::new(filt.clone(), f.clone(), rf1.clone(), rf2.clone(), Side::Right, None)
            .unwrap(),
    )
    .unwrap();
    assert_eq!(right.factor1.mul(&right.factor2), f);
    assert_eq!(right.factor1.residue(&qd), rf1);
    assert_eq!(right.factor2.residue(&qd), rf2);

    // Transport by hand: left lift in the opposite algebra with swapped
    // residue factors.
    let (op_filt, _) = filt.opposite_checked();
    let op_a = op_filt.pair().algebra().clone();
    let op_qd = op_filt.pair().residue().unwrap();
    let op_rq = op_qd.quotient().clone();
    let op_prob = LiftProblem::new(
        op_filt,
        f.transport(&op_a),
        rf2.transport(&op_rq),
        rf1.transport(&op_rq),
        Side::Left,
        None,
    )
    .unwrap();
    let op_left = hensel_lift(&op_prob).unwrap();
    assert_eq!(op_left.factor2.transport(a), right.factor1);
    assert_eq!(op_left.factor1.transport(a), right.factor2);
}

#[test]
fn noncoprime_residues_are_inconclusive() {
    let inst = zmod_pk(2, 2).unwrap();
    let (filt, qd) = setup(&inst);
    let a = &inst.algebra;
    let rq = qd.quotient().clone();
    // x^2 over Z/4 with residue split x * x: not coprime.
    let f = poly(a, &[&[0], &[0], &[1]]);
    let x = Poly::x(&rq);
    assert!(matches!(
        LiftProblem::new(filt, f, x.clone(), x, Side::Left, None),
        Err(Error::CoprimalityInconclusive)
    ));
}

#[test]
fn unverified_hypotheses_are_rejected() {
    let inst = zmod_pk(7, 2).unwrap();
    let pair = Pair::new(
        inst.algebra.clone(),
        Ideal::closure(&inst.algebra, &inst.ideal_gens),
    )
    .unwrap();
    let chain = vec![pair.ideal().clone(), Ideal::zero(&inst.algebra)];
    let unchecked = Filtration::new(pair, chain).unwrap();
    let a = &inst.algebra;
    let qd = unchecked.pair().residue().unwrap();
    let rq = qd.quotient().clone();
    let f = poly(a, &[&[-15], &[0], &[1]]);
    let f1 = poly(&rq, &[&[-1], &[1]]);
    let f2 = poly(&rq, &[&[1], &[1]]);
    assert!(matches!(
        LiftProblem::new(unchecked, f, f1, f2, Side::Left, None),
        Err(Error::HypothesesUnverified(_))
    ));
}
