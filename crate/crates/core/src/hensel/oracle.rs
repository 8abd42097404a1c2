//! Exhaustive factorization search over finite instances: the independent
//! oracle the lifting loop is checked against.

use crate::algebra::{Algebra, QuotientData};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// All monic polynomials of the given degree, lower coefficients running
/// lexicographically over the algebra's elements (least significant first).
pub fn enumerate_monic_polys(algebra: &Algebra, deg: usize) -> impl Iterator<Item = Poly> + '_ {
    let card = algebra
        .cardinality()
        .expect("finite scalar ring required for enumeration");
    let total = card.checked_pow(deg as u32).expect("search space overflow");
    (0..total).map(move |code| {
        let mut c = code;
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            let idx = c % card;
            c /= card;
            coeffs.push(element_by_code(algebra, idx));
            let _ = &coeffs;
        }
        coeffs.push(algebra.one());
        Poly::from_coeffs(algebra, coeffs)
    })
}

fn element_by_code(algebra: &Algebra, mut code: u128) -> crate::algebra::Element {
    let card = algebra.ring().cardinality().unwrap() as u128;
    let mut coords = Vec::with_capacity(algebra.dim());
    for _ in 0..algebra.dim() {
        coords.push(algebra.ring().from_i64((code % card) as i64));
        code /= card;
    }
    algebra.element(coords)
}

/// Monic polynomials of the given degree whose residue is fixed: the
/// canonical monic lift plus ideal elements on the lower coefficients.
pub fn enumerate_monic_lifts<'a>(
    qd: &'a QuotientData,
    ideal: &'a crate::algebra::Ideal,
    residue: &'a Poly,
) -> Result<impl Iterator<Item = Poly> + 'a> {
    let base = residue.lift_monic(qd)?;
    let deg = base.degree().unwrap();
    let per_coeff = ideal
        .cardinality()
        .ok_or_else(|| Error::SearchSpaceOverCap("infinite ideal".into()))?;
    let total = per_coeff
        .checked_pow(deg as u32)
        .ok_or_else(|| Error::SearchSpaceOverCap("ideal power overflow".into()))?;
    let algebra = qd.source().clone();
    Ok((0..total).map(move |code| {
        let mut c = code;
        let mut coeffs: Vec<crate::algebra::Element> = (0..deg).map(|i| base.coeff(i)).collect();
        for item in coeffs.iter_mut() {
            let idx = c % per_coeff;
            c /= per_coeff;
            let offset = ideal_element_by_code(ideal, idx);
            *item = item.add(&offset);
        }
        coeffs.push(algebra.one());
        Poly::from_coeffs(&algebra, coeffs)
    }))
}

fn ideal_element_by_code(ideal: &crate::algebra::Ideal, code: u128) -> crate::algebra::Element {
    // Same ordering as Ideal::iter_elements.
    let ring = ideal.algebra().ring();
    let k = ring.chain_length();
    let p = ring.prime().unwrap() as u128;
    let mut c = code;
    let mut acc = ideal.algebra().zero();
    for r in 0..ideal.basis().nrows() {
        let e = ideal.basis().row(r).iter().find_map(|s| s.valuation()).unwrap();
        let range = p.pow(k - e);
        let lam = ring.from_i64((c % range) as i64);
        c /= range;
        let row = ideal.algebra().element(ideal.basis().row(r).to_vec());
        acc = acc.add(&row.scale(&lam));
    }
    acc
}

/// Exhaustive enumeration of monic factor pairs with exact product F,
/// optionally filtered by a residue constraint, in deterministic
/// lexicographic order. Errors when the candidate space exceeds the cap.
pub fn brute_force_factorizations(
    f: &Poly,
    d1: usize,
    d2: usize,
    residue_constraint: Option<(&QuotientData, &crate::algebra::Ideal, &Poly, &Poly)>,
    cap: u128,
) -> Result<Vec<(Poly, Poly)>> {
    let algebra = f.algebra().clone();
    if d1 == 0 || d2 == 0 {
        return Err(Error::Precondition(
            "factor degrees must be positive".into(),
        ));
    }
    if f.degree() != Some(d1 + d2) || !f.is_monic() {
        return Err(Error::Precondition(
            "product degree must equal the split and F must be monic".into(),
        ));
    }

    let mut results = Vec::new();
    match residue_constraint {
        None => {
            let card = algebra
                .cardinality()
                .ok_or_else(|| Error::SearchSpaceOverCap("infinite scalar ring".into()))?;
            let space = card
                .checked_pow((d1 + d2) as u32)
                .filter(|&s| s <= cap)
                .ok_or_else(|| {
                    Error::SearchSpaceOverCap(format!("|A|^(d1+d2) exceeds cap {cap}"))
                })?;
            let _ = space;
            for f1 in enumerate_monic_polys(&algebra, d1) {
                for f2 in enumerate_monic_polys(&algebra, d2) {
                    if f1.mul(&f2) == *f {
                        results.push((f1.clone(), f2));
                    }
                }
            }
        }
        Some((qd, ideal, rf1, rf2)) => {
            if rf1.degree() != Some(d1) || rf2.degree() != Some(d2) {
                return Err(Error::Precondition(
                    "residue degrees do not match the split".into(),
                ));
            }
            let per = ideal
                .cardinality()
                .ok_or_else(|| Error::SearchSpaceOverCap("infinite ideal".into()))?;
            per.checked_pow((d1 + d2) as u32)
                .filter(|&s| s <= cap)
                .ok_or_else(|| {
                    Error::SearchSpaceOverCap(format!("|I|^(d1+d2) exceeds cap {cap}"))
                })?;
            let lifts1: Vec<Poly> = enumerate_monic_lifts(qd, ideal, rf1)?.collect();
            let lifts2: Vec<Poly> = enumerate_monic_lifts(qd, ideal, rf2)?.collect();
            for f1 in &lifts1 {
                for f2 in &lifts2 {
                    if f1.mul(f2) == *f {
                        results.push((f1.clone(), f2.clone()));
                    }
                }
            }
        }
    }
    Ok(results)
}

/// Stable key of a polynomial over a finite ring: canonical representatives
/// of all coordinates by ascending degree. Used to group enumerated
/// products.
pub fn poly_key(p: &Poly) -> Vec<Vec<u64>> {
    p.coeffs()
        .iter()
        .map(|c| c.coords().iter().map(|s| s.rep().expect("finite ring")).collect())
        .collect()
}
