//! Serialized forms of scalars, elements, polynomials and algebras as they
//! appear in scenario files and reports: integers for modular scalars,
//! "num/den" strings for rationals, coordinate vectors for elements,
//! ascending-degree coefficient arrays for polynomials.

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalars::{parse_scalar, Scalar, ScalarRing};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireScalar {
    Int(i64),
    Text(String),
}

pub type WireElement = Vec<WireScalar>;
pub type WirePoly = Vec<WireElement>;

pub fn scalar_from_wire(ring: ScalarRing, w: &WireScalar) -> Result<Scalar> {
    match w {
        WireScalar::Int(v) => Ok(ring.from_i64(*v)),
        WireScalar::Text(s) => parse_scalar(ring, s),
    }
}

pub fn scalar_to_wire(s: &Scalar) -> WireScalar {
    match s.rep() {
        Some(v) => WireScalar::Int(v as i64),
        None => WireScalar::Text(s.to_string()),
    }
}

pub fn element_from_wire(algebra: &Algebra, w: &WireElement) -> Result<Element> {
    if w.len() != algebra.dim() {
        return Err(Error::Scenario(format!(
            "element has {} coordinates, algebra dimension is {}",
            w.len(),
            algebra.dim()
        )));
    }
    let coords = w
        .iter()
        .map(|s| scalar_from_wire(algebra.ring(), s))
        .collect::<Result<Vec<_>>>()?;
    Ok(algebra.element(coords))
}

pub fn element_to_wire(e: &Element) -> WireElement {
    e.coords().iter().map(scalar_to_wire).collect()
}

pub fn poly_from_wire(algebra: &Algebra, w: &WirePoly) -> Result<Poly> {
    let coeffs = w
        .iter()
        .map(|c| element_from_wire(algebra, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(algebra, coeffs))
}

pub fn poly_to_wire(p: &Poly) -> WirePoly {
    p.coeffs().iter().map(element_to_wire).collect()
}

/// A scalar ring in wire form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WireRing {
    PrimeField { p: u64 },
    PrimePower { p: u64, k: u32 },
    Rational,
}

pub fn ring_from_wire(w: &WireRing) -> Result<ScalarRing> {
    match w {
        WireRing::PrimeField { p } => ScalarRing::prime_field(*p),
        WireRing::PrimePower { p, k } => ScalarRing::prime_power(*p, *k),
        WireRing::Rational => Ok(ScalarRing::rationals()),
    }
}

pub fn ring_to_wire(r: &ScalarRing) -> WireRing {
    match r {
        ScalarRing::PrimeField { p } => WireRing::PrimeField { p: *p },
        ScalarRing::PrimePower { p, k, .. } => WireRing::PrimePower { p: *p, k: *k },
        ScalarRing::Rational => WireRing::Rational,
    }
}

/// A full structure-constant table in wire form; `table[i][j]` is the
/// coordinate vector of (basis i) * (basis j).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireAlgebra {
    pub ring: WireRing,
    pub labels: Vec<String>,
    pub table: Vec<Vec<WireElement>>,
    pub unit: WireElement,
}

pub fn algebra_from_wire(w: &WireAlgebra) -> Result<Algebra> {
    let ring = ring_from_wire(&w.ring)?;
    let dim = w.labels.len();
    if w.table.len() != dim || w.unit.len() != dim {
        return Err(Error::Scenario("table shape mismatch".into()));
    }
    let mut rows = Vec::with_capacity(dim * dim);
    for row_group in &w.table {
        if row_group.len() != dim {
            return Err(Error::Scenario("table shape mismatch".into()));
        }
        for cell in row_group {
            if cell.len() != dim {
                return Err(Error::Scenario("table cell width mismatch".into()));
            }
            rows.push(
                cell.iter()
                    .map(|s| scalar_from_wire(ring, s))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
    }
    let unit = w
        .unit
        .iter()
        .map(|s| scalar_from_wire(ring, s))
        .collect::<Result<Vec<_>>>()?;
    Algebra::new(ring, w.labels.clone(), rows, unit)
}

pub fn algebra_to_wire(a: &Algebra) -> WireAlgebra {
    let dim = a.dim();
    let table = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| a.basis_product(i, j).iter().map(scalar_to_wire).collect())
                .collect()
        })
        .collect();
    WireAlgebra {
        ring: ring_to_wire(&a.ring()),
        labels: a.labels().to_vec(),
        table,
        unit: a.unit_coords().iter().map(scalar_to_wire).collect(),
    }
}

/// A matrix in wire form, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<WireScalar>,
}

pub fn matrix_to_wire(m: &crate::scalars::ScalarMatrix) -> WireMatrix {
    let mut entries = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            entries.push(scalar_to_wire(m.get(i, j)));
        }
    }
    WireMatrix {
        rows: m.nrows(),
        cols: m.ncols(),
        entries,
    }
}

pub fn matrix_from_wire(ring: ScalarRing, w: &WireMatrix) -> Result<crate::scalars::ScalarMatrix> {
    if w.entries.len() != w.rows * w.cols {
        return Err(Error::Scenario("matrix entry count mismatch".into()));
    }
    let mut m = crate::scalars::ScalarMatrix::zero(ring, w.rows, w.cols);
    for i in 0..w.rows {
        for j in 0..w.cols {
            m.set(i, j, scalar_from_wire(ring, &w.entries[i * w.cols + j])?);
        }
    }
    Ok(m)
}
