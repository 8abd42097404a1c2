//! The certified factorization-lifting loop for filtered pairs, its
//! uniqueness diagnostics, the brute-force oracle, and the right-handed
//! mirror through the opposite algebra.

pub mod oracle;

use crate::algebra::{
    commutator_filtration, is_perfect, Algebra, Filtration, Pair, QuotientData,
};
use crate::error::{Error, Result};
use crate::poly::{bezout_lift, bezout_search, euclid_divide, BezoutCertificate, Poly, Side};

/// A validated lifting problem: a monic F over the filtered pair together
/// with a coprime monic residue factorization and its stored Bezout
/// certificate.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    filtration: Filtration,
    residue: QuotientData,
    f: Poly,
    f1: Poly,
    f2: Poly,
    side: Side,
    residue_cert: BezoutCertificate,
}

impl LiftProblem {
    /// Validates the data and finds the residue certificate by bounded
    /// search (default cap: deg f1 + deg f2). A missing certificate is
    /// inconclusive, not a disproof of coprimality.
    pub fn new(
        filtration: Filtration,
        f: Poly,
        f1: Poly,
        f2: Poly,
        side: Side,
        bezout_cap: Option<usize>,
    ) -> Result<LiftProblem> {
        filtration.require_verified()?;
        let pair = filtration.pair().clone();
        if f.algebra() != pair.algebra() {
            return Err(Error::Shape("polynomial is not over the pair's ring".into()));
        }
        let residue = pair.residue()?;
        Self::validate_shapes(&residue, &f, &f1, &f2)?;
        let d1 = f1.degree().unwrap();
        let d2 = f2.degree().unwrap();
        let cap = bezout_cap.unwrap_or(d1 + d2);
        let residue_cert =
            bezout_search(&f1, &f2, side, cap).ok_or(Error::CoprimalityInconclusive)?;
        Ok(LiftProblem {
            filtration,
            residue,
            f,
            f1,
            f2,
            side,
            residue_cert,
        })
    }

    /// Like [`LiftProblem::new`] with an externally supplied residue
    /// certificate (used by the opposite-algebra transport).
    pub fn with_certificate(
        filtration: Filtration,
        f: Poly,
        f1: Poly,
        f2: Poly,
        side: Side,
        residue_cert: BezoutCertificate,
    ) -> Result<LiftProblem> {
        filtration.require_verified()?;
        let pair = filtration.pair().clone();
        if f.algebra() != pair.algebra() {
            return Err(Error::Shape("polynomial is not over the pair's ring".into()));
        }
        let residue = pair.residue()?;
        Self::validate_shapes(&residue, &f, &f1, &f2)?;
        if residue_cert.side != side
            || residue_cert.f1 != f1
            || residue_cert.f2 != f2
            || !residue_cert.verify()
        {
            return Err(Error::Precondition(
                "supplied residue certificate does not match the problem".into(),
            ));
        }
        Ok(LiftProblem {
            filtration,
            residue,
            f,
            f1,
            f2,
            side,
            residue_cert,
        })
    }

    fn validate_shapes(residue: &QuotientData, f: &Poly, f1: &Poly, f2: &Poly) -> Result<()> {
        if !f.is_monic() || !f1.is_monic() || !f2.is_monic() {
            return Err(Error::NotMonic);
        }
        if f1.algebra() != residue.quotient() || f2.algebra() != residue.quotient() {
            return Err(Error::Shape(
                "residue factors are not over the residue algebra".into(),
            ));
        }
        if f1.degree() == Some(0) || f2.degree() == Some(0) {
            return Err(Error::Precondition(
                "residue factors must have positive degree".into(),
            ));
        }
        if f.residue(residue) != f1.mul(f2) {
            return Err(Error::ResidueMismatch(
                "residue of F does not equal f1 * f2".into(),
            ));
        }
        Ok(())
    }

    pub fn pair(&self) -> &Pair {
        self.filtration.pair()
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn residue_data(&self) -> &QuotientData {
        &self.residue
    }

    pub fn residue_algebra(&self) -> &Algebra {
        self.residue.quotient()
    }

    pub fn polynomial(&self) -> &Poly {
        &self.f
    }

    pub fn residue_factors(&self) -> (&Poly, &Poly) {
        (&self.f1, &self.f2)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn residue_certificate(&self) -> &BezoutCertificate {
        &self.residue_cert
    }
}

/// One level of the lifting loop: the factors entering the level, the
/// defect F - F1_i F2_i, and the verified claim that the defect's
/// coefficients lie in I_i.
#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub level: usize,
    pub factor1: Poly,
    pub factor2: Poly,
    pub defect: Poly,
    pub defect_in_level: bool,
}

/// A completed lift: exact monic factors, the per-level trace, and an
/// exact Bezout certificate for the final factors.
#[derive(Clone, Debug)]
pub struct LiftResult {
    pub factor1: Poly,
    pub factor2: Poly,
    pub iterations: Vec<IterationRecord>,
    pub certificate: BezoutCertificate,
}

/// Runs the lifting loop on a validated problem, dispatching on the side.
pub fn hensel_lift(prob: &LiftProblem) -> Result<LiftResult> {
    match prob.side {
        Side::Left => left_lift(prob),
        Side::Right => right_hensel_lift(prob),
    }
}

/// The left-handed lifting loop. Every containment the argument relies on
/// is re-checked at runtime; a violation aborts with a diagnostic naming
/// the failed containment.
fn left_lift(prob: &LiftProblem) -> Result<LiftResult> {
    let filt = &prob.filtration;
    let qd = &prob.residue;
    let f = &prob.f;
    let levels = filt.len();

    let mut c1 = prob.f1.lift_monic(qd)?;
    let mut c2 = prob.f2.lift_monic(qd)?;
    let deg1 = c1.degree().unwrap();
    let deg2 = c2.degree().unwrap();
    let mut iterations = Vec::with_capacity(levels.saturating_sub(1));

    for level in 1..levels {
        let here = filt.level(level);
        let next = filt.level(level + 1);
        let defect = f.sub(&c1.mul(&c2));
        if !defect.coeffs_in(here) {
            return Err(Error::ContainmentViolation(format!(
                "defect at level {level} has a coefficient outside I_{level}"
            )));
        }
        iterations.push(IterationRecord {
            level,
            factor1: c1.clone(),
            factor2: c2.clone(),
            defect: defect.clone(),
            defect_in_level: true,
        });
        if defect.is_zero() {
            continue;
        }

        // Exact certificate against the current factors.
        let cert = bezout_lift(&prob.residue_cert, &c1, &c2, qd, filt)?;
        let g1 = defect.mul(&cert.g1);
        let g2 = defect.mul(&cert.g2);
        if !g1.coeffs_in(here) || !g2.coeffs_in(here) {
            return Err(Error::ContainmentViolation(format!(
                "defect cofactors at level {level} left I_{level}[x]"
            )));
        }

        // G1 = Q * F2 + R1 with deg R1 < deg F2.
        let (quot, r1) = euclid_divide(&g1, &c2)?;
        if !quot.coeffs_in(here) || !r1.coeffs_in(here) {
            return Err(Error::ContainmentViolation(format!(
                "division output at level {level} left I_{level}[x]"
            )));
        }

        // Truncate G2 + Q * F1 at degrees >= deg F1; every dropped
        // coefficient must already sit one level deeper.
        let t = g2.add(&quot.mul(&c1));
        let mut low = Vec::with_capacity(deg1);
        for m in 0..deg1 {
            low.push(t.coeff(m));
        }
        if let Some(dt) = t.degree() {
            for m in deg1..=dt {
                let b = t.coeff(m);
                if !next.contains(&b) {
                    return Err(Error::ContainmentViolation(format!(
                        "truncated coefficient of degree {m} at level {level} is not in I_{}",
                        level + 1
                    )));
                }
            }
        }
        let r2 = Poly::from_coeffs(f.algebra(), low);

        c1 = c1.add(&r2);
        c2 = c2.add(&r1);
        if !c1.is_monic() || !c2.is_monic() || c1.degree() != Some(deg1) || c2.degree() != Some(deg2)
        {
            return Err(Error::ContainmentViolation(format!(
                "factor degrees or monicity broke at level {level}"
            )));
        }

        let new_defect = f.sub(&c1.mul(&c2));
        if !new_defect.coeffs_in(next) {
            return Err(Error::ContainmentViolation(format!(
                "updated defect at level {level} is not in I_{}",
                level + 1
            )));
        }
    }

    let final_defect = f.sub(&c1.mul(&c2));
    if !final_defect.is_zero() {
        return Err(Error::ContainmentViolation(
            "final defect is nonzero after the terminal zero level".into(),
        ));
    }
    if c1.residue(qd) != prob.f1 || c2.residue(qd) != prob.f2 {
        return Err(Error::ContainmentViolation(
            "final factors do not reduce to the residue factorization".into(),
        ));
    }
    let certificate = bezout_lift(&prob.residue_cert, &c1, &c2, qd, filt)?;
    Ok(LiftResult {
        factor1: c1,
        factor2: c2,
        iterations,
        certificate,
    })
}

/// Right-handed lift: transport the problem to the opposite algebra
/// (coefficientwise, x stays central, factor roles swapped), run the left
/// loop there, and transport back.
pub fn right_hensel_lift(prob: &LiftProblem) -> Result<LiftResult> {
    if prob.side != Side::Right {
        return Err(Error::Precondition("problem side is not right".into()));
    }
    let (op_filt, _report) = prob.filtration.opposite_checked();
    op_filt.require_verified()?;
    let op_algebra = op_filt.pair().algebra().clone();
    let op_qd = op_filt.pair().residue()?;
    let op_res_algebra = op_qd.quotient().clone();
    debug_assert!(op_res_algebra == prob.residue_algebra().opposite());

    let f_op = prob.f.transport(&op_algebra);
    let f1_op = prob.f2.transport(&op_res_algebra);
    let f2_op = prob.f1.transport(&op_res_algebra);
    // The right certificate f1 g1 + f2 g2 = 1 transports to the left
    // certificate (g2^op) f2^op + (g1^op) f1^op = 1 for the swapped pair.
    let cert_op = BezoutCertificate {
        side: Side::Left,
        f1: f1_op.clone(),
        f2: f2_op.clone(),
        g1: prob.residue_cert.g2.transport(&op_res_algebra),
        g2: prob.residue_cert.g1.transport(&op_res_algebra),
    };
    let op_prob = LiftProblem::with_certificate(
        op_filt,
        f_op,
        f1_op,
        f2_op,
        Side::Left,
        cert_op,
    )?;
    let op_result = left_lift(&op_prob)?;

    let algebra = prob.f.algebra();
    let factor1 = op_result.factor2.transport(algebra);
    let factor2 = op_result.factor1.transport(algebra);
    let iterations = op_result
        .iterations
        .iter()
        .map(|rec| IterationRecord {
            level: rec.level,
            factor1: rec.factor2.transport(algebra),
            factor2: rec.factor1.transport(algebra),
            defect: rec.defect.transport(algebra),
            defect_in_level: rec.defect_in_level,
        })
        .collect();
    let certificate = BezoutCertificate {
        side: Side::Right,
        f1: factor1.clone(),
        f2: factor2.clone(),
        g1: op_result.certificate.g2.transport(algebra),
        g2: op_result.certificate.g1.transport(algebra),
    };
    if !certificate.verify() {
        return Err(Error::ContainmentViolation(
            "transported certificate does not verify".into(),
        ));
    }
    Ok(LiftResult {
        factor1,
        factor2,
        iterations,
        certificate,
    })
}

/// Exact verification of a claimed factorization against its residue data.
#[derive(Clone, Copy, Debug)]
pub struct FactorizationCheck {
    pub product_exact: bool,
    pub residues_match: bool,
    pub monic: bool,
}

impl FactorizationCheck {
    pub fn ok(&self) -> bool {
        self.product_exact && self.residues_match && self.monic
    }
}

pub fn verify_factorization(
    f: &Poly,
    factor1: &Poly,
    factor2: &Poly,
    rf1: &Poly,
    rf2: &Poly,
    qd: &QuotientData,
) -> FactorizationCheck {
    FactorizationCheck {
        product_exact: factor1.mul(factor2) == *f,
        residues_match: factor1.residue(qd) == *rf1 && factor2.residue(qd) == *rf2,
        monic: f.is_monic() && factor1.is_monic() && factor2.is_monic(),
    }
}

/// Outcome of comparing two lifts of the same residue factorization.
#[derive(Clone, Debug)]
pub enum UniquenessOutcome {
    Equal,
    /// The lifts differ; the difference of the right factors separates at
    /// this commutator-filtration level. On instances satisfying the
    /// lifting hypotheses this branch witnesses a counterexample candidate.
    Separated { difference: Poly, level: usize },
}

/// Compares two verified factorizations of F with identical coprime monic
/// residues over a perfect pair.
pub fn uniqueness_check(
    pair: &Pair,
    f: &Poly,
    lhs: (&Poly, &Poly),
    rhs: (&Poly, &Poly),
) -> Result<UniquenessOutcome> {
    let qd = pair.residue()?;
    for (a, b) in [lhs, rhs] {
        if !a.is_monic() || !b.is_monic() {
            return Err(Error::NotMonic);
        }
        if a.mul(b) != *f {
            return Err(Error::Precondition(
                "input is not an exact factorization of F".into(),
            ));
        }
    }
    if lhs.0.residue(&qd) != rhs.0.residue(&qd) || lhs.1.residue(&qd) != rhs.1.residue(&qd) {
        return Err(Error::ResidueMismatch(
            "the two factorizations have different residues".into(),
        ));
    }
    if !is_perfect(pair) {
        return Err(Error::Precondition("pair is not perfect".into()));
    }
    if lhs.0 == rhs.0 && lhs.1 == rhs.1 {
        return Ok(UniquenessOutcome::Equal);
    }
    let difference = lhs.1.sub(rhs.1);
    if difference.is_zero() {
        // With monic right factors equal, left factors are forced equal by
        // leading-coefficient cancellation; reaching here means the inputs
        // were inconsistent.
        return Err(Error::Precondition(
            "right factors equal but left factors differ".into(),
        ));
    }
    let level = find_separation_level(&difference, pair)?;
    Ok(UniquenessOutcome::Separated { difference, level })
}

/// The least d such that every coefficient of N lies in I^(d) while some
/// coefficient escapes I^(d+1). Requires a perfect pair and nonzero N in
/// I[x].
pub fn find_separation_level(n: &Poly, pair: &Pair) -> Result<usize> {
    if n.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_perfect(pair) {
        return Err(Error::Precondition("pair is not perfect".into()));
    }
    let cf = commutator_filtration(pair);
    if !n.coeffs_in(&cf.levels[0]) {
        return Err(Error::Precondition(
            "polynomial has a coefficient outside I".into(),
        ));
    }
    let mut d = 1usize;
    loop {
        let next = if d < cf.levels.len() {
            &cf.levels[d]
        } else {
            cf.levels.last().unwrap()
        };
        if !n.coeffs_in(next) {
            return Ok(d);
        }
        d += 1;
        assert!(
            d <= cf.levels.len() + 1,
            "separation search passed the stabilized zero ideal"
        );
    }
}

#[cfg(test)]
mod tests;
