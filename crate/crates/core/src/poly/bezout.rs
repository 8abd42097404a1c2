//! Bezout coprimality certificates: bounded-degree search by exact linear
//! algebra, and constructive lifting of residue certificates along a
//! nilpotent filtered ideal.

use super::Poly;
use crate::algebra::{Element, Filtration, QuotientData};
use crate::error::{Error, Result};
use crate::scalars::{Scalar, ScalarMatrix};

/// Which sided ideal-combination the certificate witnesses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// g1 f1 + g2 f2 = 1 (cofactors multiply from the left).
    Left,
    /// f1 g1 + f2 g2 = 1.
    Right,
}

/// An exact Bezout identity witnessing coprimality of (f1, f2).
#[derive(Clone, Debug, PartialEq)]
pub struct BezoutCertificate {
    pub side: Side,
    pub f1: Poly,
    pub f2: Poly,
    pub g1: Poly,
    pub g2: Poly,
}

impl BezoutCertificate {
    /// Re-multiplies the identity; certificates are handed out only when
    /// this holds, and reports re-check it independently.
    pub fn verify(&self) -> bool {
        let one = Poly::one(self.f1.algebra());
        let sum = match self.side {
            Side::Left => self.g1.mul(&self.f1).add(&self.g2.mul(&self.f2)),
            Side::Right => self.f1.mul(&self.g1).add(&self.f2.mul(&self.g2)),
        };
        sum == one
    }
}

/// Searches for cofactors of degree <= cap making the Bezout identity
/// exact, as one linear system over the scalar ring in the unknown
/// coefficient coordinates of (g1, g2). `None` means not-found-within-cap,
/// which does not disprove coprimality.
///
/// Unknowns are ordered g1 coefficients by ascending degree then g2
/// coefficients, coordinates within each; the solver's canonical solution
/// makes the returned certificate deterministic.
pub fn bezout_search(f1: &Poly, f2: &Poly, side: Side, cap: usize) -> Option<BezoutCertificate> {
    assert!(f1.algebra() == f2.algebra(), "mixed parent algebras");
    let algebra = f1.algebra().clone();
    if f1.is_zero() || f2.is_zero() {
        return None;
    }
    let ring = algebra.ring();
    let n = algebra.dim();
    let d1 = f1.degree().unwrap();
    let d2 = f2.degree().unwrap();
    let out_deg = cap + d1.max(d2);
    let unknowns_per_poly = cap + 1;
    let unknown_count = 2 * unknowns_per_poly * n;
    let eq_count = (out_deg + 1) * n;

    // Linear operator of "unknown element * known element" (left side) and
    // of "known element * unknown element" (right side) on coordinates.
    let op_matrix = |known: &Element, known_on_right: bool| -> Vec<Vec<Scalar>> {
        (0..n)
            .map(|s| {
                let basis = algebra.basis_element(s);
                let prod = if known_on_right {
                    basis.mul(known)
                } else {
                    known.mul(&basis)
                };
                prod.coords().to_vec()
            })
            .collect()
    };

    let mut mat = ScalarMatrix::zero(ring, eq_count, unknown_count);
    for (which, f) in [(0usize, f1), (1usize, f2)] {
        for i in 0..unknowns_per_poly {
            for (j, fc) in f.coeffs().iter().enumerate() {
                if fc.is_zero() {
                    continue;
                }
                let block = op_matrix(fc, matches!(side, Side::Left));
                let d = i + j;
                for s in 0..n {
                    for t in 0..n {
                        if block[s][t].is_zero() {
                            continue;
                        }
                        let row = d * n + t;
                        let col = (which * unknowns_per_poly + i) * n + s;
                        let cur = mat.get(row, col).add(&block[s][t]);
                        mat.set(row, col, cur);
                    }
                }
            }
        }
    }

    let mut rhs = vec![Scalar::zero(ring); eq_count];
    for (t, c) in algebra.unit_coords().iter().enumerate() {
        rhs[t] = c.clone();
    }

    let sol = crate::scalars::solve_linear(&mat, &rhs)?;
    let extract = |which: usize| -> Poly {
        let coeffs: Vec<Element> = (0..unknowns_per_poly)
            .map(|i| {
                let base = (which * unknowns_per_poly + i) * n;
                algebra.element(sol.particular[base..base + n].to_vec())
            })
            .collect();
        Poly::from_coeffs(&algebra, coeffs)
    };
    let cert = BezoutCertificate {
        side,
        f1: f1.clone(),
        f2: f2.clone(),
        g1: extract(0),
        g2: extract(1),
    };
    assert!(cert.verify(), "solver produced a non-identity certificate");
    Some(cert)
}

/// Lifts a residue Bezout certificate to an exact certificate over the
/// filtered pair: with coefficient lifts h_i of the residue cofactors, the
/// defect e = h1 f1 + h2 f2 - 1 has all coefficients in the ideal, and
/// (1 + e)^-1 = 1 - e + e^2 - ... terminates because the squares condition
/// pushes e^(2^j) down the chain. The cofactors are then (1 + e)^-1 h_i.
pub fn bezout_lift(
    residue_cert: &BezoutCertificate,
    f1: &Poly,
    f2: &Poly,
    qd: &QuotientData,
    filtration: &Filtration,
) -> Result<BezoutCertificate> {
    if !filtration.flags().squares.is_true() {
        return Err(Error::HypothesesUnverified(
            "squares condition must be verified-true to lift certificates".into(),
        ));
    }
    if !f1.is_monic() || !f2.is_monic() {
        return Err(Error::NotMonic);
    }
    if f1.residue(qd) != residue_cert.f1 || f2.residue(qd) != residue_cert.f2 {
        return Err(Error::ResidueMismatch(
            "lifts do not reduce to the certificate's polynomials".into(),
        ));
    }
    let algebra = f1.algebra().clone();
    let ideal = filtration.pair().ideal();
    let side = residue_cert.side;

    let h1 = residue_cert.g1.lift_with(qd);
    let h2 = residue_cert.g2.lift_with(qd);
    let combo = match side {
        Side::Left => h1.mul(f1).add(&h2.mul(f2)),
        Side::Right => f1.mul(&h1).add(&f2.mul(&h2)),
    };
    let e = combo.sub(&Poly::one(&algebra));
    if !e.coeffs_in(ideal) {
        return Err(Error::ResidueMismatch(
            "certificate defect has coefficients outside the ideal".into(),
        ));
    }

    // Geometric series sum of (-e)^m; terminates for nilpotent defects.
    let mut series = Poly::one(&algebra);
    let mut term = e.neg();
    let mut guard = 0usize;
    let max_terms = 1usize << (filtration.len().min(20));
    while !term.is_zero() {
        series = series.add(&term);
        term = term.mul(&e.neg());
        guard += 1;
        if guard > max_terms {
            return Err(Error::ContainmentViolation(
                "certificate-defect series did not terminate".into(),
            ));
        }
    }

    let (g1, g2) = match side {
        Side::Left => (series.mul(&h1), series.mul(&h2)),
        Side::Right => (h1.mul(&series), h2.mul(&series)),
    };
    let cert = BezoutCertificate {
        side,
        f1: f1.clone(),
        f2: f2.clone(),
        g1,
        g2,
    };
    if !cert.verify() {
        return Err(Error::ContainmentViolation(
            "lifted certificate does not satisfy the identity".into(),
        ));
    }
    Ok(cert)
}
