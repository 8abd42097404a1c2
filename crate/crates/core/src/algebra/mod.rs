//! Finite-dimensional associative unital algebras given by structure
//! constants, their elements, ideals, pairs and filtrations.

mod ideal;
pub mod instances;
mod pair;
#[cfg(test)]
mod tests;

pub use ideal::{quotient_algebra, Ideal, QuotientData};
pub use pair::{
    check_filtration_hypotheses, commutator_filtration, ideal_is_nilpotent, invert_one_plus,
    is_jacobson, is_local_pair, is_perfect, is_unit, module_span, perfect_quotient,
    validate_morphism, CommutatorFiltration, Filtration, FiltrationReport, HypothesisFlags,
    LevelHypotheses, MorphismReport, Pair, PairMorphism, Tri, Verdict,
};

use crate::error::{Error, Result};
use crate::scalars::{Scalar, ScalarRing};
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
struct Inner {
    ring: ScalarRing,
    dim: usize,
    labels: Vec<String>,
    /// table[i * dim + j] = coordinates of (basis i) * (basis j).
    table: Vec<Vec<Scalar>>,
    unit: Vec<Scalar>,
}

/// A finite-dimensional associative unital algebra over an exact scalar
/// ring, presented by its multiplication table on a chosen basis.
/// Associativity and the unit laws are verified at construction.
///
/// Cloning is cheap; equality is structural on (ring, table, unit) so that
/// independently built copies of the same table interoperate.
#[derive(Clone, Debug)]
pub struct Algebra(Arc<Inner>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring
                && self.0.dim == other.0.dim
                && self.0.table == other.0.table
                && self.0.unit == other.0.unit)
    }
}
impl Eq for Algebra {}

impl Algebra {
    /// Builds and validates an algebra. The table rows are the products of
    /// basis pairs in basis coordinates; `unit` is the coordinate vector of
    /// the multiplicative identity.
    pub fn new(
        ring: ScalarRing,
        labels: Vec<String>,
        table: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
    ) -> Result<Algebra> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Shape("algebra dimension must be at least 1".into()));
        }
        if table.len() != dim * dim {
            return Err(Error::Shape(format!(
                "table has {} rows, expected {}",
                table.len(),
                dim * dim
            )));
        }
        if unit.len() != dim {
            return Err(Error::Shape("unit vector length mismatch".into()));
        }
        for row in table.iter().chain(std::iter::once(&unit)) {
            if row.len() != dim {
                return Err(Error::Shape("table row length mismatch".into()));
            }
            for s in row {
                if s.ring() != ring {
                    return Err(Error::Shape("table entry from a different ring".into()));
                }
            }
        }

        let a = Algebra(Arc::new(Inner {
            ring,
            dim,
            labels,
            table,
            unit,
        }));

        // Unit laws on every basis vector.
        let one = a.one();
        for i in 0..dim {
            let e = a.basis_element(i);
            if one.mul(&e) != e || e.mul(&one) != e {
                return Err(Error::BrokenUnit(i));
            }
        }
        // Associativity on every basis triple.
        for i in 0..dim {
            for j in 0..dim {
                let ij = a.element(a.basis_product(i, j).to_vec());
                for k in 0..dim {
                    let jk = a.element(a.basis_product(j, k).to_vec());
                    if ij.mul(&a.basis_element(k)) != a.basis_element(i).mul(&jk) {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn ring(&self) -> ScalarRing {
        self.0.ring
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.0.table[i * self.0.dim + j]
    }

    pub fn unit_coords(&self) -> &[Scalar] {
        &self.0.unit
    }

    pub fn zero(&self) -> Element {
        self.element(vec![Scalar::zero(self.0.ring); self.0.dim])
    }

    pub fn one(&self) -> Element {
        self.element(self.0.unit.clone())
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut coords = vec![Scalar::zero(self.0.ring); self.0.dim];
        coords[i] = Scalar::one(self.0.ring);
        self.element(coords)
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Element {
        assert_eq!(coords.len(), self.0.dim, "coordinate count != dimension");
        Element {
            algebra: self.clone(),
            coords,
        }
    }

    /// Convenience constructor from integer coordinates.
    pub fn element_from_i64(&self, coords: &[i64]) -> Element {
        assert_eq!(coords.len(), self.0.dim, "coordinate count != dimension");
        self.element(coords.iter().map(|&v| self.0.ring.from_i64(v)).collect())
    }

    /// The opposite algebra: same module, products reversed
    /// (c_op[i][j] = c[j][i]). An involution.
    pub fn opposite(&self) -> Algebra {
        let dim = self.0.dim;
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(self.basis_product(j, i).to_vec());
            }
        }
        Algebra(Arc::new(Inner {
            ring: self.0.ring,
            dim,
            labels: self.0.labels.clone(),
            table,
            unit: self.0.unit.clone(),
        }))
    }

    /// Number of elements for algebras over a finite scalar ring.
    pub fn cardinality(&self) -> Option<u128> {
        let c = self.0.ring.cardinality()? as u128;
        let mut total: u128 = 1;
        for _ in 0..self.0.dim {
            total = total.checked_mul(c)?;
        }
        Some(total)
    }

    /// All elements of an algebra over a finite scalar ring, in
    /// lexicographic coordinate order.
    pub fn iter_elements(&self) -> impl Iterator<Item = Element> + '_ {
        let card = self
            .0
            .ring
            .cardinality()
            .expect("cannot enumerate an algebra over an infinite ring");
        let dim = self.0.dim;
        let total = self.cardinality().expect("cardinality overflow");
        (0..total).map(move |code| {
            let mut c = code;
            let mut coords = Vec::with_capacity(dim);
            for _ in 0..dim {
                coords.push(self.0.ring.from_i64((c % card as u128) as i64));
                c /= card as u128;
            }
            self.element(coords)
        })
    }
}

/// An element of an [`Algebra`], stored as its coordinate vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    algebra: Algebra,
    coords: Vec<Scalar>,
}

#[inline]
fn assert_same_parent(a: &Element, b: &Element) {
    assert!(
        a.algebra == b.algebra,
        "elements from different parent algebras"
    );
}

impl Element {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|s| s.is_zero())
    }

    pub fn add(&self, rhs: &Element) -> Element {
        assert_same_parent(self, rhs);
        self.algebra.element(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Element) -> Element {
        assert_same_parent(self, rhs);
        self.algebra.element(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn neg(&self) -> Element {
        self.algebra
            .element(self.coords.iter().map(|s| s.neg()).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        self.algebra
            .element(self.coords.iter().map(|s| s.mul(c)).collect())
    }

    /// Product by bilinear extension of the structure-constant table.
    pub fn mul(&self, rhs: &Element) -> Element {
        assert_same_parent(self, rhs);
        let dim = self.algebra.dim();
        let ring = self.algebra.ring();
        let mut acc = vec![Scalar::zero(ring); dim];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = a.mul(b);
                for (k, t) in self.algebra.basis_product(i, j).iter().enumerate() {
                    if !t.is_zero() {
                        acc[k] = acc[k].add(&c.mul(t));
                    }
                }
            }
        }
        self.algebra.element(acc)
    }

    /// st - ts.
    pub fn commutator(&self, rhs: &Element) -> Element {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn pow(&self, mut e: u32) -> Element {
        let mut acc = self.algebra.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The same coordinates read in the opposite algebra.
    pub fn transport(&self, target: &Algebra) -> Element {
        assert_eq!(
            self.algebra.dim(),
            target.dim(),
            "transport requires equal dimension"
        );
        assert_eq!(self.algebra.ring(), target.ring());
        target.element(self.coords.clone())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let label = &self.algebra.labels()[i];
            if label == "1" {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{c}*{label}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
