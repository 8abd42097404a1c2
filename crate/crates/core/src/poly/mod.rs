//! Polynomials over an algebra with a central indeterminate, Euclidean
//! division by monic polynomials, and Bezout coprimality certificates.

mod bezout;

pub use bezout::{bezout_lift, bezout_search, BezoutCertificate, Side};

use crate::algebra::{Algebra, Element, Ideal, PairMorphism, QuotientData};
use crate::error::{Error, Result};
use std::fmt;

/// A polynomial sum a_i x^i with coefficients in an [`Algebra`] and x
/// commuting with all coefficients. Coefficients are stored by ascending
/// degree and normalized: no trailing zero, the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    algebra: Algebra,
    coeffs: Vec<Element>,
}

impl Poly {
    pub fn from_coeffs(algebra: &Algebra, mut coeffs: Vec<Element>) -> Poly {
        for c in &coeffs {
            assert!(c.algebra() == algebra, "coefficient from another algebra");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            algebra: algebra.clone(),
            coeffs,
        }
    }

    pub fn zero(algebra: &Algebra) -> Poly {
        Poly {
            algebra: algebra.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Element) -> Poly {
        let algebra = c.algebra().clone();
        Poly::from_coeffs(&algebra, vec![c])
    }

    pub fn one(algebra: &Algebra) -> Poly {
        Poly::constant(algebra.one())
    }

    pub fn x(algebra: &Algebra) -> Poly {
        Poly::from_coeffs(algebra, vec![algebra.zero(), algebra.one()])
    }

    /// c * x^deg.
    pub fn monomial(c: Element, deg: usize) -> Poly {
        let algebra = c.algebra().clone();
        let mut coeffs = vec![algebra.zero(); deg];
        coeffs.push(c);
        Poly::from_coeffs(&algebra, coeffs)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Element {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.algebra.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Element> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| *c == self.algebra.one())
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        assert!(self.algebra == rhs.algebra, "mixed parent algebras");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        Poly::from_coeffs(&self.algebra, coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(&self.algebra, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    /// Product with noncommutative coefficients and central x:
    /// (a x^i)(b x^j) = (a b) x^(i+j).
    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert!(self.algebra == rhs.algebra, "mixed parent algebras");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.algebra);
        }
        let deg = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut coeffs = vec![self.algebra.zero(); deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(&self.algebra, coeffs)
    }

    /// Left scalar-side product c * P (coefficientwise c * a_i).
    pub fn scale_left(&self, c: &Element) -> Poly {
        Poly::from_coeffs(&self.algebra, self.coeffs.iter().map(|a| c.mul(a)).collect())
    }

    /// P * x^m.
    pub fn shift(&self, m: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.algebra.zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::from_coeffs(&self.algebra, coeffs)
    }

    /// Coefficientwise projection through a quotient.
    pub fn residue(&self, qd: &QuotientData) -> Poly {
        Poly::from_coeffs(
            qd.quotient(),
            self.coeffs.iter().map(|c| qd.project(c)).collect(),
        )
    }

    /// Coefficientwise canonical section lift through a quotient.
    pub fn lift_with(&self, qd: &QuotientData) -> Poly {
        Poly::from_coeffs(
            qd.source(),
            self.coeffs.iter().map(|c| qd.lift(c)).collect(),
        )
    }

    /// Monic lift: section on the lower coefficients, exact unit on top.
    pub fn lift_monic(&self, qd: &QuotientData) -> Result<Poly> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let deg = self.degree().unwrap();
        let mut coeffs: Vec<Element> = self.coeffs[..deg]
            .iter()
            .map(|c| qd.lift(c))
            .collect();
        coeffs.push(qd.source().one());
        Ok(Poly::from_coeffs(qd.source(), coeffs))
    }

    /// Coefficientwise image under a pair morphism.
    pub fn map(&self, m: &PairMorphism) -> Poly {
        Poly::from_coeffs(
            m.target().algebra(),
            self.coeffs.iter().map(|c| m.apply(c)).collect(),
        )
    }

    /// The same coefficients read in the opposite algebra.
    pub fn transport(&self, target: &Algebra) -> Poly {
        Poly::from_coeffs(
            target,
            self.coeffs.iter().map(|c| c.transport(target)).collect(),
        )
    }

    /// True when every coefficient lies in the ideal.
    pub fn coeffs_in(&self, ideal: &Ideal) -> bool {
        self.coeffs.iter().all(|c| ideal.contains(c))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Euclidean division of G by a monic F: G = Q * F + R with
/// deg R < deg F and the quotient multiplying F from the left. When G has
/// all coefficients in a right ideal, so do Q and R (the reduction step
/// only multiplies leading coefficients by F's coefficients on the right).
pub fn euclid_divide(g: &Poly, f: &Poly) -> Result<(Poly, Poly)> {
    assert!(g.algebra() == f.algebra(), "mixed parent algebras");
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap();
    let mut q = Poly::zero(g.algebra());
    let mut r = g.clone();
    while let Some(m) = r.degree() {
        if m < n {
            break;
        }
        let b = r.leading_coeff().unwrap().clone();
        let step = Poly::monomial(b, m - n);
        q = q.add(&step);
        r = r.sub(&step.mul(f));
        debug_assert!(r.degree().map_or(true, |d| d < m));
    }
    Ok((q, r))
}

/// Division wrapper that additionally certifies the ideal bookkeeping:
/// all coefficients of G, Q and R are checked against the ideal.
pub fn euclid_divide_in_ideal(g: &Poly, f: &Poly, ideal: &Ideal) -> Result<(Poly, Poly)> {
    if !g.coeffs_in(ideal) {
        return Err(Error::Precondition(
            "dividend coefficients are not all in the ideal".into(),
        ));
    }
    let (q, r) = euclid_divide(g, f)?;
    if !q.coeffs_in(ideal) || !r.coeffs_in(ideal) {
        return Err(Error::ContainmentViolation(
            "division quotient or remainder left the coefficient ideal".into(),
        ));
    }
    Ok((q, r))
}
