//! Two-sided ideals as canonical-form scalar submodules and quotients by
//! them.

use super::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalars::{
    canonical_rows, reduce_mod_row_module, row_module_contains, Scalar, ScalarMatrix, ScalarRing,
};

use crate::scalars::canonical_row_form;

/// A two-sided ideal, stored as its generators plus the canonical (Howell /
/// reduced echelon) basis of the underlying scalar submodule. The basis is
/// saturated under left and right multiplication by every algebra basis
/// element, so membership and inclusion are plain row-module questions.
#[derive(Clone, Debug)]
pub struct Ideal {
    algebra: Algebra,
    generators: Vec<Element>,
    basis: ScalarMatrix,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.basis == other.basis
    }
}
impl Eq for Ideal {}

impl Ideal {
    /// The least two-sided ideal containing `gens`: saturates the span
    /// under one-sided multiplications until the canonical basis is stable.
    pub fn closure(algebra: &Algebra, gens: &[Element]) -> Ideal {
        for g in gens {
            assert!(g.algebra() == algebra, "generator from a different algebra");
        }
        let ring = algebra.ring();
        let dim = algebra.dim();
        let rows: Vec<Vec<Scalar>> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.coords().to_vec())
            .collect();
        let mut basis = canonical_rows(ring, dim, rows);
        loop {
            let mut fresh: Vec<Vec<Scalar>> = Vec::new();
            for r in 0..basis.nrows() {
                let v = algebra.element(basis.row(r).to_vec());
                for i in 0..dim {
                    let e = algebra.basis_element(i);
                    for prod in [e.mul(&v), v.mul(&e)] {
                        if !prod.is_zero() && !row_module_contains(&basis, prod.coords()) {
                            fresh.push(prod.coords().to_vec());
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            fresh.extend(basis.rows_vec());
            basis = canonical_rows(ring, dim, fresh);
        }
        Ideal {
            algebra: algebra.clone(),
            generators: gens.to_vec(),
            basis,
        }
    }

    pub fn zero(algebra: &Algebra) -> Ideal {
        Ideal {
            algebra: algebra.clone(),
            generators: Vec::new(),
            basis: ScalarMatrix::zero(algebra.ring(), 0, algebra.dim()),
        }
    }

    /// Rebuilds an ideal from an existing canonical basis (used when
    /// transporting to the opposite algebra, where two-sidedness is
    /// preserved). Saturation is re-checked in debug builds.
    pub(crate) fn from_canonical_basis(
        algebra: &Algebra,
        generators: Vec<Element>,
        basis: ScalarMatrix,
    ) -> Ideal {
        let ideal = Ideal {
            algebra: algebra.clone(),
            generators,
            basis,
        };
        debug_assert!(ideal.is_saturated());
        ideal
    }

    fn is_saturated(&self) -> bool {
        let dim = self.algebra.dim();
        for r in 0..self.basis.nrows() {
            let v = self.algebra.element(self.basis.row(r).to_vec());
            for i in 0..dim {
                let e = self.algebra.basis_element(i);
                if !self.contains(&e.mul(&v)) || !self.contains(&v.mul(&e)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn basis(&self) -> &ScalarMatrix {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.basis.nrows())
            .map(|r| self.algebra.element(self.basis.row(r).to_vec()))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.nrows() == 0
    }

    /// Exact membership against the closed basis.
    pub fn contains(&self, e: &Element) -> bool {
        assert!(e.algebra() == &self.algebra, "element from another algebra");
        row_module_contains(&self.basis, e.coords())
    }

    /// Canonical coset representative of `e` modulo the ideal.
    pub fn reduce(&self, e: &Element) -> Element {
        assert!(e.algebra() == &self.algebra, "element from another algebra");
        self.algebra
            .element(reduce_mod_row_module(&self.basis, e.coords()))
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        (0..other.basis.nrows()).all(|r| row_module_contains(&self.basis, other.basis.row(r)))
    }

    pub fn contains_unit(&self) -> bool {
        row_module_contains(&self.basis, self.algebra.unit_coords())
    }

    /// Module span of the union (already a two-sided ideal).
    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert!(self.algebra == other.algebra);
        let mut rows = self.basis.rows_vec();
        rows.extend(other.basis.rows_vec());
        let basis = canonical_rows(self.algebra.ring(), self.algebra.dim(), rows);
        let mut generators = self.generators.clone();
        generators.extend(other.generators.clone());
        let out = Ideal {
            algebra: self.algebra.clone(),
            generators,
            basis,
        };
        debug_assert!(out.is_saturated());
        out
    }

    /// The ideal spanned by pairwise products of basis vectors. For
    /// two-sided inputs the span is already two-sided.
    pub fn product(&self, other: &Ideal) -> Ideal {
        assert!(self.algebra == other.algebra);
        let mut rows = Vec::new();
        for r in 0..self.basis.nrows() {
            let a = self.algebra.element(self.basis.row(r).to_vec());
            for s in 0..other.basis.nrows() {
                let b = self.algebra.element(other.basis.row(s).to_vec());
                let p = a.mul(&b);
                if !p.is_zero() {
                    rows.push(p.coords().to_vec());
                }
            }
        }
        let basis = canonical_rows(self.algebra.ring(), self.algebra.dim(), rows);
        let out = Ideal {
            algebra: self.algebra.clone(),
            generators: Vec::new(),
            basis,
        };
        debug_assert!(out.is_saturated());
        out
    }

    /// Number of elements of the ideal as a module over a finite ring.
    pub fn cardinality(&self) -> Option<u128> {
        let ring = self.algebra.ring();
        ring.cardinality()?;
        let k = ring.chain_length();
        let p = ring.prime()? as u128;
        let mut total: u128 = 1;
        for r in 0..self.basis.nrows() {
            let row = self.basis.row(r);
            let e = row
                .iter()
                .find_map(|s| s.valuation())
                .expect("canonical basis has no zero rows");
            total = total.checked_mul(p.pow(k - e))?;
        }
        Some(total)
    }

    /// All ideal elements (finite rings). Every element appears exactly
    /// once: coefficients of basis row r range over 0..p^(k - e_r).
    pub fn iter_elements(&self) -> impl Iterator<Item = Element> + '_ {
        let ring = self.algebra.ring();
        let k = ring.chain_length();
        let p = ring.prime().expect("finite ring required") as u128;
        let ranges: Vec<u128> = (0..self.basis.nrows())
            .map(|r| {
                let e = self.basis.row(r).iter().find_map(|s| s.valuation()).unwrap();
                p.pow(k - e)
            })
            .collect();
        let total: u128 = ranges.iter().product();
        (0..total).map(move |code| {
            let mut acc = self.algebra.zero();
            let mut c = code;
            for (r, range) in ranges.iter().enumerate() {
                let lam = self.algebra.ring().from_i64((c % range) as i64);
                c /= range;
                let row = self.algebra.element(self.basis.row(r).to_vec());
                acc = acc.add(&row.scale(&lam));
            }
            acc
        })
    }
}

/// Projection and section data for a quotient A -> A/I.
///
/// Over a field the quotient lives on the complement of the pivot columns.
/// Over Z/p^k the quotient is representable in the single-ring model only
/// when the ideal basis is a direct sum of coordinate multiples p^e * e_j
/// with one common exponent; the surviving coordinates then carry Z/p^e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    source: Algebra,
    quotient: Algebra,
    /// Basis indices of the source that carry the quotient coordinates.
    section_cols: Vec<usize>,
    ideal_basis: ScalarMatrix,
}

impl QuotientData {
    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn quotient(&self) -> &Algebra {
        &self.quotient
    }

    pub fn section_cols(&self) -> &[usize] {
        &self.section_cols
    }

    /// Image of a source element in the quotient.
    pub fn project(&self, e: &Element) -> Element {
        assert!(e.algebra() == &self.source, "element from another algebra");
        let reduced = reduce_mod_row_module(&self.ideal_basis, e.coords());
        let tring = self.quotient.ring();
        self.quotient.element(
            self.section_cols
                .iter()
                .map(|&c| reduced[c].reduce_into(tring))
                .collect(),
        )
    }

    /// The canonical section: coordinates are lifted representative-wise
    /// onto the complement basis. A right inverse of `project`.
    pub fn lift(&self, e: &Element) -> Element {
        assert!(e.algebra() == &self.quotient, "element from another algebra");
        let sring = self.source.ring();
        let mut coords = vec![Scalar::zero(sring); self.source.dim()];
        for (slot, &c) in self.section_cols.iter().enumerate() {
            coords[c] = e.coords()[slot].lift_into(sring);
        }
        self.source.element(coords)
    }

    /// Matrix of the projection (quotient dim x source dim, quotient ring).
    pub fn projection_matrix(&self) -> ScalarMatrix {
        let tring = self.quotient.ring();
        let mut m = ScalarMatrix::zero(tring, self.quotient.dim(), self.source.dim());
        for j in 0..self.source.dim() {
            let img = self.project(&self.source.basis_element(j));
            for i in 0..self.quotient.dim() {
                m.set(i, j, img.coords()[i].clone());
            }
        }
        m
    }
}

/// Quotient of an algebra by a proper two-sided ideal, with induced
/// structure constants on a complement basis.
pub fn quotient_algebra(algebra: &Algebra, ideal: &Ideal) -> Result<QuotientData> {
    assert!(ideal.algebra() == algebra, "ideal from another algebra");
    if ideal.contains_unit() {
        return Err(Error::ImproperIdeal);
    }
    let ring = algebra.ring();
    let dim = algebra.dim();
    let basis = canonical_row_form(ideal.basis());

    let pivots: Vec<(usize, u32)> = (0..basis.nrows())
        .map(|r| {
            let row = basis.row(r);
            let c = row.iter().position(|s| !s.is_zero()).unwrap();
            (c, row[c].valuation().unwrap())
        })
        .collect();

    let (section_cols, target_ring): (Vec<usize>, ScalarRing) = if ring.is_field() {
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
        let cols = (0..dim).filter(|c| !pivot_cols.contains(c)).collect();
        (cols, ring)
    } else {
        // Chain ring: every basis row must be an elementary multiple
        // p^e * e_j, else the quotient mixes moduli.
        for r in 0..basis.nrows() {
            let nonzero = basis.row(r).iter().filter(|s| !s.is_zero()).count();
            if nonzero != 1 {
                return Err(Error::QuotientNotRepresentable(
                    "ideal basis entangles coordinates over a chain ring".into(),
                ));
            }
        }
        // Coordinates with a unit pivot die; a pivot p^e leaves Z/p^e on
        // its coordinate; pivot-free coordinates keep the full ring.
        let nonunit: Vec<u32> = pivots.iter().map(|&(_, e)| e).filter(|&e| e > 0).collect();
        let reduced_cols: Vec<usize> = pivots
            .iter()
            .filter(|&&(_, e)| e > 0)
            .map(|&(c, _)| c)
            .collect();
        let free_cols: Vec<usize> = (0..dim)
            .filter(|c| !pivots.iter().any(|&(pc, _)| pc == *c))
            .collect();
        if nonunit.is_empty() {
            (free_cols, ring)
        } else if free_cols.is_empty() && nonunit.iter().all(|&e| e == nonunit[0]) {
            let p = ring.prime().unwrap();
            (reduced_cols, ScalarRing::prime_power(p, nonunit[0])?)
        } else {
            return Err(Error::QuotientNotRepresentable(format!(
                "mixed coordinate moduli: exponents {:?} with {} free coordinates",
                nonunit,
                free_cols.len()
            )));
        }
    };

    let qdim = section_cols.len();
    if qdim == 0 {
        return Err(Error::QuotientNotRepresentable(
            "quotient has no surviving coordinates".into(),
        ));
    }

    let qd_partial = QuotientDataPartial {
        section_cols: section_cols.clone(),
        ideal_basis: basis.clone(),
        target_ring,
    };

    let mut table = Vec::with_capacity(qdim * qdim);
    for &ci in &section_cols {
        for &cj in &section_cols {
            let prod = algebra
                .basis_element(ci)
                .mul(&algebra.basis_element(cj));
            table.push(qd_partial.project_coords(prod.coords()));
        }
    }
    let unit = qd_partial.project_coords(algebra.unit_coords());
    let labels: Vec<String> = section_cols
        .iter()
        .map(|&c| algebra.labels()[c].clone())
        .collect();
    let quotient = Algebra::new(target_ring, labels, table, unit)?;

    Ok(QuotientData {
        source: algebra.clone(),
        quotient,
        section_cols,
        ideal_basis: basis,
    })
}

struct QuotientDataPartial {
    section_cols: Vec<usize>,
    ideal_basis: ScalarMatrix,
    target_ring: ScalarRing,
}

impl QuotientDataPartial {
    fn project_coords(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let reduced = reduce_mod_row_module(&self.ideal_basis, coords);
        self.section_cols
            .iter()
            .map(|&c| reduced[c].reduce_into(self.target_ring))
            .collect()
    }
}
