//! Constructors for the instance families the test corpus runs on:
//! truncated free algebras, scalar-plus-strictly-upper-triangular matrix
//! algebras, Z/p^k viewed as a one-dimensional algebra, and the full
//! upper-triangular specimen whose filtration hypotheses fail.

use super::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalars::{Scalar, ScalarRing};
use std::collections::HashMap;

/// An algebra together with its distinguished ideal generators and the
/// generator sets of its natural descending chain (first entry generates
/// the distinguished ideal, last entry generates the zero ideal).
#[derive(Clone, Debug)]
pub struct InstanceAlgebra {
    pub algebra: Algebra,
    pub ideal_gens: Vec<Element>,
    pub chain_gens: Vec<Vec<Element>>,
}

/// Label of a basis word: "1" for the empty word, plain concatenation when
/// all generator names are single characters, '*'-joined otherwise.
pub fn word_label(gen_labels: &[String], word: &[u16]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let single = gen_labels.iter().all(|l| l.chars().count() == 1);
    let parts: Vec<&str> = word.iter().map(|&g| gen_labels[g as usize].as_str()).collect();
    if single {
        parts.concat()
    } else {
        parts.join("*")
    }
}

/// Default generator names: u, v, w for up to three, u1..ug beyond.
pub fn default_gen_labels(count: usize) -> Vec<String> {
    if count <= 3 {
        ["u", "v", "w"][..count].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=count).map(|i| format!("u{i}")).collect()
    }
}

/// All words over `gens` letters of length < cap, ordered by length then
/// lexicographically. This is the basis order of the truncated free algebra.
pub fn words_below(gens: usize, cap: usize) -> Vec<Vec<u16>> {
    let mut words: Vec<Vec<u16>> = vec![Vec::new()];
    let mut layer: Vec<Vec<u16>> = vec![Vec::new()];
    for _ in 1..cap {
        let mut next = Vec::with_capacity(layer.len() * gens);
        for w in &layer {
            for g in 0..gens as u16 {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    words
}

/// The truncated free algebra R<u_1..u_g> modulo all monomials of degree
/// >= cap. Basis: words of length < cap; products concatenate and truncate
/// to zero at the cap. The distinguished ideal is generated by the
/// generators; the natural chain is by word length.
pub fn trunc_free(ring: ScalarRing, gen_labels: Vec<String>, cap: usize) -> Result<InstanceAlgebra> {
    if cap < 2 {
        return Err(Error::Shape("truncated free algebra needs cap >= 2".into()));
    }
    if gen_labels.is_empty() {
        return Err(Error::Shape("truncated free algebra needs generators".into()));
    }
    let gens = gen_labels.len();
    let words = words_below(gens, cap);
    let index: HashMap<Vec<u16>, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let dim = words.len();
    let zero_row = vec![Scalar::zero(ring); dim];
    let mut table = Vec::with_capacity(dim * dim);
    for wi in &words {
        for wj in &words {
            let mut row = zero_row.clone();
            if wi.len() + wj.len() < cap {
                let mut concat = wi.clone();
                concat.extend_from_slice(wj);
                row[index[&concat]] = Scalar::one(ring);
            }
            table.push(row);
        }
    }
    let labels: Vec<String> = words.iter().map(|w| word_label(&gen_labels, w)).collect();
    let mut unit = zero_row;
    unit[0] = Scalar::one(ring);
    let algebra = Algebra::new(ring, labels, table, unit)?;

    let ideal_gens: Vec<Element> = (0..gens)
        .map(|g| algebra.basis_element(index[&vec![g as u16]]))
        .collect();
    let mut chain_gens = Vec::new();
    for level in 1..=cap {
        let gens_at: Vec<Element> = words
            .iter()
            .enumerate()
            .filter(|(_, w)| w.len() == level)
            .map(|(i, _)| algebra.basis_element(i))
            .collect();
        chain_gens.push(gens_at); // empty at level == cap: the zero ideal
    }
    Ok(InstanceAlgebra {
        algebra,
        ideal_gens,
        chain_gens,
    })
}

/// Scalar multiples of the identity plus strictly upper triangular size x
/// size matrices. Basis: 1, then E_ij for i < j in lexicographic order.
/// The distinguished ideal is the strictly upper part; the natural chain is
/// by superdiagonal distance j - i.
pub fn scalar_plus_strictly_upper(ring: ScalarRing, size: usize) -> Result<InstanceAlgebra> {
    if size < 2 {
        return Err(Error::Shape("matrix size must be at least 2".into()));
    }
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 0..size {
        for j in (i + 1)..size {
            cells.push((i, j));
        }
    }
    let dim = 1 + cells.len();
    let idx = |i: usize, j: usize| 1 + cells.iter().position(|&c| c == (i, j)).unwrap();
    let zero_row = vec![Scalar::zero(ring); dim];
    let mut table = vec![zero_row.clone(); dim * dim];
    let one = Scalar::one(ring);
    // 1 * 1 = 1; 1 * E = E * 1 = E; E_ab * E_cd = delta_bc E_ad.
    table[0][0] = one.clone();
    for n in 0..cells.len() {
        let b = 1 + n;
        table[b][b] = one.clone();
        table[b * dim][b] = one.clone();
    }
    for (n1, &(a, b)) in cells.iter().enumerate() {
        for (n2, &(c, d)) in cells.iter().enumerate() {
            let mut row = zero_row.clone();
            if b == c {
                row[idx(a, d)] = one.clone();
            }
            table[(1 + n1) * dim + (1 + n2)] = row;
        }
    }
    let mut labels = vec!["1".to_string()];
    labels.extend(cells.iter().map(|&(i, j)| format!("e{}{}", i + 1, j + 1)));
    let mut unit = vec![Scalar::zero(ring); dim];
    unit[0] = one;
    let algebra = Algebra::new(ring, labels, table, unit)?;

    let ideal_gens: Vec<Element> = (0..cells.len())
        .map(|n| algebra.basis_element(1 + n))
        .collect();
    let mut chain_gens = Vec::new();
    for level in 1..=(size) {
        let gens_at: Vec<Element> = cells
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| j - i == level)
            .map(|(n, _)| algebra.basis_element(1 + n))
            .collect();
        chain_gens.push(gens_at); // empty at level == size: the zero ideal
    }
    Ok(InstanceAlgebra {
        algebra,
        ideal_gens,
        chain_gens,
    })
}

/// Z/p^k as a one-dimensional algebra over itself, with the adic chain
/// (p) > (p^2) > ... > (p^k) = 0.
pub fn zmod_pk(p: u64, k: u32) -> Result<InstanceAlgebra> {
    let ring = ScalarRing::prime_power(p, k)?;
    let one = Scalar::one(ring);
    let algebra = Algebra::new(
        ring,
        vec!["1".to_string()],
        vec![vec![one.clone()]],
        vec![one],
    )?;
    // p^e reduces to zero at e = k, which keeps k = 1 (a plain field with
    // the zero ideal) in the same shape.
    let p_power = |e: u32| {
        let mut v = Scalar::one(ring);
        let ps = ring.from_i64(p as i64);
        for _ in 0..e {
            v = v.mul(&ps);
        }
        v
    };
    let ideal_gens = vec![algebra.element(vec![p_power(1)])];
    let chain_gens: Vec<Vec<Element>> = (1..=k)
        .map(|e| {
            if e == k {
                Vec::new()
            } else {
                vec![algebra.element(vec![p_power(e)])]
            }
        })
        .collect();
    Ok(InstanceAlgebra {
        algebra,
        ideal_gens,
        chain_gens,
    })
}

/// The full upper-triangular size x size matrix algebra (diagonal
/// included). Documented hypothesis-failure specimen: with the strictly
/// upper ideal, commutators with the diagonal regenerate the ideal. The
/// chain is (strict upper, 0).
pub fn full_upper_triangular(ring: ScalarRing, size: usize) -> Result<InstanceAlgebra> {
    if size < 2 {
        return Err(Error::Shape("matrix size must be at least 2".into()));
    }
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 0..size {
        for j in i..size {
            cells.push((i, j));
        }
    }
    let dim = cells.len();
    let idx = |i: usize, j: usize| cells.iter().position(|&c| c == (i, j)).unwrap();
    let zero_row = vec![Scalar::zero(ring); dim];
    let one = Scalar::one(ring);
    let mut table = Vec::with_capacity(dim * dim);
    for &(a, b) in &cells {
        for &(c, d) in &cells {
            let mut row = zero_row.clone();
            if b == c {
                row[idx(a, d)] = one.clone();
            }
            table.push(row);
        }
    }
    let labels: Vec<String> = cells.iter().map(|&(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let mut unit = zero_row;
    for i in 0..size {
        unit[idx(i, i)] = one.clone();
    }
    let algebra = Algebra::new(ring, labels, table, unit)?;

    let strict: Vec<Element> = cells
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| i < j)
        .map(|(n, _)| algebra.basis_element(n))
        .collect();
    Ok(InstanceAlgebra {
        algebra,
        ideal_gens: strict.clone(),
        chain_gens: vec![strict, Vec::new()],
    })
}
