//! Independent re-verification of emitted reports: every certificate is
//! re-checked from the scenario data (products, containments, residues,
//! morphism identities) without rerunning the producing algorithms.

use super::build::{build_filtration, build_ideal, build_instance};
use super::wire::{
    algebra_from_wire, matrix_from_wire, poly_from_wire,
};
use super::{BezoutWire, Certificate, LiftCertificate, Report, Scenario, SideSpec, Status};
use crate::algebra::{validate_morphism, Algebra, Ideal, Pair, PairMorphism};
use crate::error::{Error, Result};
use crate::poly::{Poly, Side};

/// Outcome of re-verifying a report against its scenario.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub ok: bool,
    pub failures: Vec<String>,
}

struct Checker {
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            failures: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, pass: bool) {
        if !pass {
            self.failures.push(name.to_string());
        }
    }
}

/// Re-checks a report. Input errors (malformed scenario or report) are
/// `Err`; verification failures are enumerated in the outcome.
pub fn verify_report(report_text: &str, scenario_text: &str) -> Result<VerifyOutcome> {
    let report = Report::from_json(report_text)?;
    let scenario = Scenario::from_json(scenario_text)?;
    let mut c = Checker::new();

    c.check(
        "scenario_hash_matches",
        report.body.scenario_sha256 == super::scenario_hash(&scenario),
    );
    c.check("task_matches", report.body.task == scenario.task);
    c.check("seed_matches", report.body.seed == scenario.seed);

    if report.body.outcome.status != Status::Ok {
        // Negative and inconclusive reports claim no identities beyond the
        // echo fields.
        return Ok(VerifyOutcome {
            ok: c.failures.is_empty(),
            failures: c.failures,
        });
    }

    match &report.body.certificate {
        Certificate::Lift(cert) => verify_lift(&scenario, cert, &mut c)?,
        Certificate::Bezout(cert) => verify_bezout(&scenario, cert, &mut c)?,
        Certificate::Divide(cert) => {
            let inst = build_instance(&scenario.instance)?;
            let g = poly_from_wire(inst.algebra(), req(&scenario.dividend, "dividend")?)?;
            let f = poly_from_wire(inst.algebra(), req(&scenario.divisor, "divisor")?)?;
            let q = poly_from_wire(inst.algebra(), &cert.quotient)?;
            let r = poly_from_wire(inst.algebra(), &cert.remainder)?;
            c.check("reconstruction_exact", q.mul(&f).add(&r) == g);
            c.check(
                "remainder_degree",
                r.degree().map_or(true, |dr| dr < f.degree().unwrap_or(0)),
            );
            if cert.ideal_membership_checked {
                let ideal = build_ideal(&inst, scenario.ideal.as_ref())?;
                c.check("quotient_in_ideal", q.coeffs_in(&ideal));
                c.check("remainder_in_ideal", r.coeffs_in(&ideal));
            }
        }
        Certificate::BruteForce(cert) => {
            let inst = build_instance(&scenario.instance)?;
            let f = poly_from_wire(inst.algebra(), req(&scenario.poly, "poly")?)?;
            c.check("count_matches", cert.count == cert.pairs.len());
            for (i, (wa, wb)) in cert.pairs.iter().enumerate() {
                let a = poly_from_wire(inst.algebra(), wa)?;
                let b = poly_from_wire(inst.algebra(), wb)?;
                c.check(&format!("pair_{i}_product_exact"), a.mul(&b) == f);
                c.check(&format!("pair_{i}_monic"), a.is_monic() && b.is_monic());
            }
        }
        Certificate::Verify(cert) => {
            let inst = build_instance(&scenario.instance)?;
            let ideal = build_ideal(&inst, scenario.ideal.as_ref())?;
            let pair = Pair::new(inst.algebra().clone(), ideal)?;
            let qd = pair.residue()?;
            let f = poly_from_wire(inst.algebra(), req(&scenario.poly, "poly")?)?;
            let (w1, w2) = req(&scenario.factors, "factors")?;
            let f1 = poly_from_wire(inst.algebra(), w1)?;
            let f2 = poly_from_wire(inst.algebra(), w2)?;
            let rf1 = poly_from_wire(qd.quotient(), req(&scenario.residue_f1, "residue_f1")?)?;
            let rf2 = poly_from_wire(qd.quotient(), req(&scenario.residue_f2, "residue_f2")?)?;
            c.check("product_claim", cert.product_exact == (f1.mul(&f2) == f));
            c.check(
                "residue_claim",
                cert.residues_match
                    == (f1.residue(&qd) == rf1 && f2.residue(&qd) == rf2),
            );
        }
        Certificate::CheckPair(cert) => {
            // The claims are property values; re-derive them.
            let inst = build_instance(&scenario.instance)?;
            let ideal = build_ideal(&inst, scenario.ideal.as_ref())?;
            let pair = Pair::new(inst.algebra().clone(), ideal)?;
            let cf = crate::algebra::commutator_filtration(&pair);
            c.check(
                "perfect_claim",
                cert.perfect == cf.terminates_at_zero,
            );
            c.check(
                "commutator_ranks",
                cert.commutator_ranks
                    == cf.levels.iter().map(|i| i.rank()).collect::<Vec<_>>(),
            );
        }
        Certificate::CommutatorFiltration(cert) => {
            let inst = build_instance(&scenario.instance)?;
            let ideal = build_ideal(&inst, scenario.ideal.as_ref())?;
            let algebra = inst.algebra();
            // Each serialized level must be a descending chain of ideals
            // with the claimed ranks, the first being the given ideal.
            let mut prev: Option<Ideal> = None;
            for (n, level) in cert.levels.iter().enumerate() {
                let elems = level
                    .iter()
                    .map(|w| super::wire::element_from_wire(algebra, w))
                    .collect::<Result<Vec<_>>>()?;
                let this = Ideal::closure(algebra, &elems);
                c.check(
                    &format!("level_{n}_rank"),
                    this.rank() == cert.ranks.get(n).copied().unwrap_or(usize::MAX),
                );
                if n == 0 {
                    c.check("level_0_is_ideal", this == ideal);
                }
                if let Some(p) = &prev {
                    c.check(&format!("level_{n}_descends"), p.contains_ideal(&this));
                }
                prev = Some(this);
            }
            if cert.terminates_at_zero {
                c.check(
                    "terminal_zero",
                    cert.ranks.last().copied() == Some(0),
                );
            }
        }
        Certificate::LfExtend(cert) => {
            let inst = build_instance(&scenario.instance)?;
            let src = inst.presented()?;
            let f = poly_from_wire(src.algebra(), req(&scenario.poly, "poly")?)?;
            let rf1 = poly_from_wire(src.residue_algebra(), req(&scenario.residue_f1, "residue_f1")?)?;
            let rf2 = poly_from_wire(src.residue_algebra(), req(&scenario.residue_f2, "residue_f2")?)?;

            // The serialized target table must itself validate.
            let target = algebra_from_wire(&cert.target)?;
            let gamma = matrix_from_wire(src.residue_algebra().ring(), &cert.target_residue_matrix)?;
            let kernel = kernel_of(&target, &gamma)?;
            let tpair = Pair::new(target.clone(), kernel)?;
            let res_pair = Pair::new(
                src.residue_algebra().clone(),
                Ideal::zero(src.residue_algebra()),
            )?;
            let residue_map = PairMorphism::new(tpair.clone(), res_pair, gamma);
            c.check("target_residue_map_validates", validate_morphism(&residue_map).ok());

            let phi_m = matrix_from_wire(target.ring(), &cert.phi_matrix)?;
            let phi = PairMorphism::new(src.pair().clone(), tpair.clone(), phi_m);
            c.check("phi_validates", validate_morphism(&phi).ok());

            let l1 = poly_from_wire(&target, &cert.lifted1)?;
            let l2 = poly_from_wire(&target, &cert.lifted2)?;
            c.check("lifted_product_exact", l1.mul(&l2) == f.map(&phi));
            c.check(
                "lifted_residues_match",
                l1.map(&residue_map) == rf1 && l2.map(&residue_map) == rf2,
            );

            if let Some(u) = &cert.universal {
                let psi_m = matrix_from_wire(src.algebra().ring(), &u.psi_matrix)?;
                let psi = PairMorphism::new(tpair, src.pair().clone(), psi_m);
                c.check("psi_validates", validate_morphism(&psi).ok());
                c.check(
                    "universal_composition",
                    psi.compose(&phi).matrix()
                        == PairMorphism::identity(src.pair()).matrix(),
                );
                let sf1 = poly_from_wire(src.algebra(), &u.source_factor1)?;
                let sf2 = poly_from_wire(src.algebra(), &u.source_factor2)?;
                c.check("universal_factors_exact", sf1.mul(&sf2) == f);
                c.check(
                    "universal_reproduces_lift",
                    l1.map(&psi) == sf1 && l2.map(&psi) == sf2,
                );
            }
        }
        Certificate::AbelianizeCompare(cert) => {
            let inst = build_instance(&scenario.instance)?;
            let src = inst.presented()?;
            let f = poly_from_wire(src.algebra(), req(&scenario.poly, "poly")?)?;
            let ab = algebra_from_wire(&cert.ab_target)?;
            let gamma = matrix_from_wire(src.residue_algebra().ring(), &cert.ab_residue_matrix)?;
            let kernel = kernel_of(&ab, &gamma)?;
            let ab_pair = Pair::new(ab.clone(), kernel)?;
            let phi_m = matrix_from_wire(ab.ring(), &cert.phi_to_ab_matrix)?;
            let phi = PairMorphism::new(src.pair().clone(), ab_pair, phi_m);
            c.check("phi_to_ab_validates", validate_morphism(&phi).ok());

            let cf1 = poly_from_wire(src.algebra(), &cert.commutative_factor1)?;
            let cf2 = poly_from_wire(src.algebra(), &cert.commutative_factor2)?;
            c.check("commutative_factors_exact", cf1.mul(&cf2) == f);

            let t1 = poly_from_wire(&ab, &cert.transported1)?;
            let t2 = poly_from_wire(&ab, &cert.transported2)?;
            c.check("transported_product_exact", t1.mul(&t2) == f.map(&phi));
            c.check(
                "match_claim",
                cert.matches == (cf1.map(&phi) == t1 && cf2.map(&phi) == t2),
            );
        }
        Certificate::None => {
            c.check("ok_report_has_certificate", false);
        }
    }

    // The recorded assertion ledger must be all-pass on an ok report.
    for a in &report.body.assertions {
        c.check(&format!("ledger:{}", a.name), a.pass);
    }

    Ok(VerifyOutcome {
        ok: c.failures.is_empty(),
        failures: c.failures,
    })
}

fn req<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T> {
    field
        .as_ref()
        .ok_or_else(|| Error::Scenario(format!("missing required field: {name}")))
}

fn kernel_of(algebra: &Algebra, gamma: &crate::scalars::ScalarMatrix) -> Result<Ideal> {
    let rhs = vec![crate::scalars::Scalar::zero(gamma.ring()); gamma.nrows()];
    let sol = crate::scalars::solve_linear(gamma, &rhs)
        .ok_or_else(|| Error::Scenario("degenerate residue matrix".into()))?;
    let gens: Vec<_> = (0..sol.kernel.nrows())
        .map(|r| algebra.element(sol.kernel.row(r).to_vec()))
        .collect();
    Ok(Ideal::closure(algebra, &gens))
}

fn verify_lift(scenario: &Scenario, cert: &LiftCertificate, c: &mut Checker) -> Result<()> {
    let inst = build_instance(&scenario.instance)?;
    let ideal = build_ideal(&inst, scenario.ideal.as_ref())?;
    let pair = Pair::new(inst.algebra().clone(), ideal)?;
    let filt = build_filtration(&inst, &pair, scenario.filtration.as_ref())?;
    let qd = pair.residue()?;
    let f = poly_from_wire(inst.algebra(), req(&scenario.poly, "poly")?)?;

    let factor1 = poly_from_wire(inst.algebra(), &cert.factor1)?;
    let factor2 = poly_from_wire(inst.algebra(), &cert.factor2)?;
    let rf1 = poly_from_wire(qd.quotient(), &cert.residue_f1)?;
    let rf2 = poly_from_wire(qd.quotient(), &cert.residue_f2)?;

    c.check("factors_monic", factor1.is_monic() && factor2.is_monic());
    c.check("product_exact", factor1.mul(&factor2) == f);
    c.check(
        "residues_match",
        factor1.residue(&qd) == rf1 && factor2.residue(&qd) == rf2,
    );
    c.check(
        "chain_ranks",
        cert.chain_ranks == filt.chain().iter().map(|i| i.rank()).collect::<Vec<_>>(),
    );

    // Re-derive each recorded defect and its claimed level membership.
    let mut prev: Option<(Poly, Poly)> = None;
    for it in &cert.iterations {
        let c1 = poly_from_wire(inst.algebra(), &it.factor1)?;
        let c2 = poly_from_wire(inst.algebra(), &it.factor2)?;
        let defect = poly_from_wire(inst.algebra(), &it.defect)?;
        let name = format!("iteration_{}", it.level);
        c.check(
            &format!("{name}_defect_recomputes"),
            f.sub(&c1.mul(&c2)) == defect,
        );
        c.check(
            &format!("{name}_defect_in_level"),
            defect.coeffs_in(filt.level_or_zero(it.level)),
        );
        c.check(
            &format!("{name}_residues"),
            c1.residue(&qd) == rf1 && c2.residue(&qd) == rf2,
        );
        if let Some((p1, p2)) = &prev {
            // Updates descend through the chain.
            let lvl = filt.level_or_zero(it.level.saturating_sub(1));
            c.check(
                &format!("{name}_update_in_previous_level"),
                c1.sub(p1).coeffs_in(lvl) && c2.sub(p2).coeffs_in(lvl),
            );
        }
        prev = Some((c1, c2));
    }
    if let Some((p1, p2)) = &prev {
        let last_level = cert.iterations.last().unwrap().level;
        let lvl = filt.level_or_zero(last_level);
        c.check(
            "final_update_in_last_level",
            factor1.sub(p1).coeffs_in(lvl) && factor2.sub(p2).coeffs_in(lvl),
        );
    }

    verify_bezout_cert(&cert.bezout, inst.algebra(), c, "final_bezout")?;
    // The final certificate must witness the emitted factors.
    let bf1 = poly_from_wire(inst.algebra(), &cert.bezout.f1)?;
    let bf2 = poly_from_wire(inst.algebra(), &cert.bezout.f2)?;
    c.check(
        "bezout_matches_factors",
        bf1 == factor1 && bf2 == factor2,
    );
    let _ = side_of(&cert.side);
    Ok(())
}

fn verify_bezout(scenario: &Scenario, cert: &BezoutWire, c: &mut Checker) -> Result<()> {
    let inst = build_instance(&scenario.instance)?;
    verify_bezout_cert(cert, inst.algebra(), c, "bezout")?;
    // The witnessed polynomials must be the scenario inputs.
    let f1 = poly_from_wire(inst.algebra(), req(&scenario.residue_f1, "residue_f1")?)?;
    let f2 = poly_from_wire(inst.algebra(), req(&scenario.residue_f2, "residue_f2")?)?;
    let cf1 = poly_from_wire(inst.algebra(), &cert.f1)?;
    let cf2 = poly_from_wire(inst.algebra(), &cert.f2)?;
    c.check("bezout_inputs_match", cf1 == f1 && cf2 == f2);
    Ok(())
}

fn side_of(s: &SideSpec) -> Side {
    match s {
        SideSpec::Left => Side::Left,
        SideSpec::Right => Side::Right,
    }
}

fn verify_bezout_cert(
    cert: &BezoutWire,
    algebra: &Algebra,
    c: &mut Checker,
    name: &str,
) -> Result<()> {
    let f1 = poly_from_wire(algebra, &cert.f1)?;
    let f2 = poly_from_wire(algebra, &cert.f2)?;
    let g1 = poly_from_wire(algebra, &cert.g1)?;
    let g2 = poly_from_wire(algebra, &cert.g2)?;
    let one = Poly::one(algebra);
    let sum = match side_of(&cert.side) {
        Side::Left => g1.mul(&f1).add(&g2.mul(&f2)),
        Side::Right => f1.mul(&g1).add(&f2.mul(&g2)),
    };
    c.check(&format!("{name}_identity"), sum == one);
    Ok(())
}
