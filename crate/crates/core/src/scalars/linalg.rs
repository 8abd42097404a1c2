//! Canonical-form exact linear algebra over the supported scalar rings.
//!
//! Row modules are put into Howell form: over a field this is the reduced
//! row echelon form, over Z/p^k it additionally carries the annihilator
//! completion rows that make membership and equality of row modules
//! decidable. The Howell form is canonical: equal row modules have equal
//! forms.

use super::{Scalar, ScalarRing};

/// A dense row-major matrix of scalars from one ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix {
    ring: ScalarRing,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(ring: ScalarRing, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            ring,
            rows,
            cols,
            entries: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: ScalarRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ring));
        }
        m
    }

    pub fn from_rows(ring: ScalarRing, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r);
        }
        ScalarMatrix {
            ring,
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Matrix-vector product M * x.
    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.ring);
                for j in 0..self.cols {
                    let e = self.get(i, j);
                    if !e.is_zero() && !x[j].is_zero() {
                        acc = acc.add(&e.mul(&x[j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix product self * other.
    pub fn mul_mat(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul_mat");
        let mut out = ScalarMatrix::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

fn scale_row(row: &mut [Scalar], c: &Scalar) {
    for e in row.iter_mut() {
        *e = e.mul(c);
    }
}

/// row += c * other
fn row_axpy(row: &mut [Scalar], c: &Scalar, other: &[Scalar]) {
    for (e, o) in row.iter_mut().zip(other) {
        if !o.is_zero() {
            *e = e.add(&c.mul(o));
        }
    }
}

struct HowellOutput {
    /// Echelon rows sorted by pivot column, pivots normalized to p^e,
    /// entries above pivots reduced.
    rows: Vec<Vec<Scalar>>,
    /// (pivot column, pivot valuation) per row.
    pivots: Vec<(usize, u32)>,
    /// Nonzero rows that vanish on every pivot-eligible column.
    tails: Vec<Vec<Scalar>>,
}

/// Core Howell engine. Pivots are chosen only among the first
/// `pivot_limit` columns; trailing columns ride along (used to carry the
/// transform in the solver). Over fields this computes the RREF.
fn howell_engine(
    ring: ScalarRing,
    pivot_limit: usize,
    mut work: Vec<Vec<Scalar>>,
) -> HowellOutput {
    let cap = ring.chain_length();
    let mut tails: Vec<Vec<Scalar>> = Vec::new();
    let mut guard = 0usize;
    loop {
        guard += 1;
        assert!(
            guard <= (cap as usize + 1) * pivot_limit + 2,
            "howell completion failed to stabilize"
        );

        let mut pool = std::mem::take(&mut work);
        pool.retain(|r| r.iter().any(|s| !s.is_zero()));
        let mut ech: Vec<(usize, u32, Vec<Scalar>)> = Vec::new();

        for col in 0..pivot_limit {
            let mut best: Option<(usize, u32)> = None;
            for (i, r) in pool.iter().enumerate() {
                if let Some(v) = r[col].valuation() {
                    if best.map_or(true, |(_, bv)| v < bv) {
                        best = Some((i, v));
                    }
                }
            }
            let Some((idx, e)) = best else { continue };
            let mut piv = pool.remove(idx);
            let u_inv = piv[col]
                .unit_part()
                .inverse()
                .expect("unit part is invertible");
            scale_row(&mut piv, &u_inv);
            for r in pool.iter_mut() {
                if !r[col].is_zero() {
                    let c = r[col].div_pow_p(e).neg();
                    row_axpy(r, &c, &piv);
                }
            }
            ech.push((col, e, piv));
        }

        for r in pool {
            if r.iter().any(|s| !s.is_zero()) {
                tails.push(r);
            }
        }

        // Annihilator completion: p^(cap-e) times a non-unit pivot row stays
        // in the module but escapes the echelon span; reduce it and feed
        // whatever survives back in.
        for idx in 0..ech.len() {
            let (col, e, ref row) = ech[idx];
            if e == 0 {
                continue;
            }
            let mult = Scalar::pow_p(ring, cap - e);
            let mut cand: Vec<Scalar> = row.iter().map(|s| s.mul(&mult)).collect();
            for &(c2, e2, ref r2) in ech.iter().skip(idx + 1) {
                if let Some(v) = cand[c2].valuation() {
                    if v >= e2 {
                        let q = cand[c2].div_pow_p(e2).neg();
                        row_axpy(&mut cand, &q, r2);
                    }
                }
            }
            let _ = col;
            if cand[..pivot_limit].iter().any(|s| !s.is_zero()) {
                work.push(cand);
            } else if cand.iter().any(|s| !s.is_zero()) {
                tails.push(cand);
            }
        }

        if !work.is_empty() {
            work.extend(ech.into_iter().map(|(_, _, r)| r));
            continue;
        }

        // Upward reduction: entries above the pivot of row j are reduced
        // modulo p^(e_j); over a field that clears them entirely.
        let pivots: Vec<(usize, u32)> = ech.iter().map(|&(c, e, _)| (c, e)).collect();
        let mut rows: Vec<Vec<Scalar>> = ech.into_iter().map(|(_, _, r)| r).collect();
        for j in (0..rows.len()).rev() {
            let (cj, ej) = pivots[j];
            for i in 0..j {
                if !rows[i][cj].is_zero() {
                    let q = rows[i][cj].div_pow_p(ej).neg();
                    if !q.is_zero() {
                        let rj = rows[j].clone();
                        row_axpy(&mut rows[i], &q, &rj);
                    }
                }
            }
        }
        return HowellOutput {
            rows,
            pivots,
            tails,
        };
    }
}

/// Canonical form of the row module of `m` (Howell form; RREF over fields).
/// Zero rows are dropped, so the result has one row per pivot.
pub fn canonical_row_form(m: &ScalarMatrix) -> ScalarMatrix {
    canonical_rows(m.ring(), m.ncols(), m.rows_vec())
}

pub fn canonical_rows(ring: ScalarRing, cols: usize, rows: Vec<Vec<Scalar>>) -> ScalarMatrix {
    let out = howell_engine(ring, cols, rows);
    debug_assert!(out.tails.is_empty());
    ScalarMatrix::from_rows(ring, cols, out.rows)
}

fn pivot_of(row: &[Scalar]) -> Option<(usize, u32)> {
    row.iter()
        .position(|s| !s.is_zero())
        .map(|c| (c, row[c].valuation().unwrap()))
}

/// Reduces `v` modulo the row module given by its canonical form. The
/// result is the canonical coset representative; it is zero exactly when
/// `v` lies in the module.
pub fn reduce_mod_row_module(canon: &ScalarMatrix, v: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(v.len(), canon.ncols(), "vector/module width mismatch");
    let mut out = v.to_vec();
    for i in 0..canon.nrows() {
        let row = canon.row(i);
        let Some((c, e)) = pivot_of(row) else { continue };
        if !out[c].is_zero() {
            let q = out[c].div_pow_p(e).neg();
            if !q.is_zero() {
                row_axpy(&mut out, &q, row);
            }
        }
    }
    out
}

pub fn row_module_contains(canon: &ScalarMatrix, v: &[Scalar]) -> bool {
    reduce_mod_row_module(canon, v).iter().all(|s| s.is_zero())
}

/// One exact solution of M x = rhs together with a canonical basis of the
/// homogeneous solution module.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<Scalar>,
    pub kernel: ScalarMatrix,
}

/// Solves M x = rhs exactly over the matrix ring. Returns `None` when the
/// system has no solution. The computation transposes into a row-module
/// problem: rows (column_j(M) | e_j) are put into Howell form with pivots
/// restricted to the equation columns, the right-hand side is greedily
/// reduced against the pivots (deciding membership), and rows that vanish
/// on all equation columns yield the kernel.
pub fn solve_linear(m: &ScalarMatrix, rhs: &[Scalar]) -> Option<LinearSolution> {
    let ring = m.ring();
    let eqs = m.nrows();
    let unknowns = m.ncols();
    assert_eq!(rhs.len(), eqs, "rhs length mismatch");

    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(unknowns);
    for j in 0..unknowns {
        let mut row = Vec::with_capacity(eqs + unknowns);
        for i in 0..eqs {
            row.push(m.get(i, j).clone());
        }
        for jj in 0..unknowns {
            row.push(if jj == j {
                Scalar::one(ring)
            } else {
                Scalar::zero(ring)
            });
        }
        rows.push(row);
    }

    let out = howell_engine(ring, eqs, rows);

    let mut residual = rhs.to_vec();
    let mut solution = vec![Scalar::zero(ring); unknowns];
    for (row, &(c, e)) in out.rows.iter().zip(&out.pivots) {
        if residual[c].is_zero() {
            continue;
        }
        let v = residual[c].valuation().unwrap();
        if v < e {
            return None;
        }
        let q = m_div(&residual[c], e);
        let nq = q.neg();
        for i in 0..eqs {
            if !row[i].is_zero() {
                residual[i] = residual[i].add(&nq.mul(&row[i]));
            }
        }
        for j in 0..unknowns {
            let t = &row[eqs + j];
            if !t.is_zero() {
                solution[j] = solution[j].add(&q.mul(t));
            }
        }
    }
    if residual.iter().any(|s| !s.is_zero()) {
        return None;
    }

    let kernel_rows: Vec<Vec<Scalar>> = out
        .tails
        .iter()
        .map(|r| r[eqs..].to_vec())
        .filter(|r| r.iter().any(|s| !s.is_zero()))
        .collect();
    let kernel = canonical_rows(ring, unknowns, kernel_rows);

    debug_assert_eq!(m.mul_vec(&solution), rhs.to_vec());
    Some(LinearSolution {
        particular: solution,
        kernel,
    })
}

fn m_div(a: &Scalar, e: u32) -> Scalar {
    a.div_pow_p(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ScalarRing;

    fn mat(ring: ScalarRing, cols: usize, data: &[&[i64]]) -> ScalarMatrix {
        ScalarMatrix::from_rows(
            ring,
            cols,
            data.iter()
                .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
                .collect(),
        )
    }

    fn vecs(ring: ScalarRing, data: &[i64]) -> Vec<Scalar> {
        data.iter().map(|&v| ring.from_i64(v)).collect()
    }

    #[test]
    fn identity_solve_over_field() {
        let gf5 = ScalarRing::prime_field(5).unwrap();
        let m = ScalarMatrix::identity(gf5, 2);
        let sol = solve_linear(&m, &vecs(gf5, &[3, 1])).unwrap();
        assert_eq!(sol.particular, vecs(gf5, &[3, 1]));
        assert_eq!(sol.kernel.nrows(), 0);
    }

    #[test]
    fn chain_ring_solution_module() {
        // Z/4, 2x = 2: x = 1 plus kernel {2}, i.e. solution set {1, 3}.
        let z4 = ScalarRing::prime_power(2, 2).unwrap();
        let m = mat(z4, 1, &[&[2]]);
        let sol = solve_linear(&m, &vecs(z4, &[2])).unwrap();
        assert_eq!(sol.particular, vecs(z4, &[1]));
        assert_eq!(sol.kernel.nrows(), 1);
        assert_eq!(sol.kernel.row(0), &vecs(z4, &[2])[..]);

        // Independent oracle: enumerate all residues.
        let solutions: Vec<u64> = (0..4).filter(|x| (2 * x) % 4 == 2).collect();
        assert_eq!(solutions, vec![1, 3]);

        assert!(solve_linear(&m, &vecs(z4, &[1])).is_none());
    }

    #[test]
    fn kernel_completeness_by_enumeration() {
        // Exhaustively compare the described solution set with brute force
        // over small chain-ring systems.
        let z8 = ScalarRing::prime_power(2, 3).unwrap();
        let cases: Vec<(ScalarMatrix, Vec<Scalar>)> = vec![
            (mat(z8, 2, &[&[2, 4], &[4, 2]]), vecs(z8, &[6, 2])),
            (mat(z8, 2, &[&[2, 1]]), vecs(z8, &[1])),
            (mat(z8, 3, &[&[2, 4, 6], &[0, 4, 4]]), vecs(z8, &[2, 4])),
            (mat(z8, 2, &[&[4, 4]]), vecs(z8, &[0])),
        ];
        for (m, rhs) in cases {
            let n = m.ncols();
            let mut brute: Vec<Vec<u64>> = Vec::new();
            let total = 8u64.pow(n as u32);
            for code in 0..total {
                let mut x = Vec::with_capacity(n);
                let mut c = code;
                for _ in 0..n {
                    x.push(z8.from_i64((c % 8) as i64));
                    c /= 8;
                }
                if m.mul_vec(&x) == rhs {
                    brute.push(x.iter().map(|s| s.rep().unwrap()).collect());
                }
            }
            match solve_linear(&m, &rhs) {
                None => assert!(brute.is_empty(), "solver missed solutions"),
                Some(sol) => {
                    assert_eq!(m.mul_vec(&sol.particular), rhs);
                    // span the kernel module and add the particular solution
                    let k = sol.kernel.nrows();
                    let mut described: Vec<Vec<u64>> = Vec::new();
                    let combos = 8u64.pow(k as u32);
                    for code in 0..combos {
                        let mut x = sol.particular.clone();
                        let mut c = code;
                        for r in 0..k {
                            let lam = z8.from_i64((c % 8) as i64);
                            c /= 8;
                            for j in 0..n {
                                x[j] = x[j].add(&lam.mul(sol.kernel.get(r, j)));
                            }
                        }
                        let key: Vec<u64> = x.iter().map(|s| s.rep().unwrap()).collect();
                        if !described.contains(&key) {
                            described.push(key);
                        }
                    }
                    described.sort();
                    brute.sort();
                    assert_eq!(described, brute, "solution set mismatch");
                }
            }
        }
    }

    #[test]
    fn howell_form_is_canonical_under_unimodular_ops() {
        // Random row operations preserve the row module, hence the form.
        let z8 = ScalarRing::prime_power(2, 3).unwrap();
        let base = mat(z8, 3, &[&[2, 1, 4], &[0, 4, 6], &[4, 0, 2]]);
        let canon = canonical_row_form(&base);

        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let mut rows = base.rows_vec();
            for _ in 0..12 {
                match rng() % 3 {
                    0 => {
                        let i = (rng() % 3) as usize;
                        let j = (rng() % 3) as usize;
                        if i != j {
                            rows.swap(i, j);
                        }
                    }
                    1 => {
                        let i = (rng() % 3) as usize;
                        let units = [1i64, 3, 5, 7];
                        let u = z8.from_i64(units[(rng() % 4) as usize]);
                        for e in rows[i].iter_mut() {
                            *e = e.mul(&u);
                        }
                    }
                    _ => {
                        let i = (rng() % 3) as usize;
                        let j = (rng() % 3) as usize;
                        if i != j {
                            let c = z8.from_i64((rng() % 8) as i64);
                            let src = rows[j].clone();
                            row_axpy(&mut rows[i], &c, &src);
                        }
                    }
                }
            }
            let m = ScalarMatrix::from_rows(z8, 3, rows);
            assert_eq!(canonical_row_form(&m), canon);
        }
    }

    #[test]
    fn membership_over_chain_ring() {
        let z4 = ScalarRing::prime_power(2, 2).unwrap();
        let canon = canonical_row_form(&mat(z4, 2, &[&[2, 1]]));
        assert!(row_module_contains(&canon, &vecs(z4, &[2, 1])));
        assert!(row_module_contains(&canon, &vecs(z4, &[0, 2])));
        assert!(!row_module_contains(&canon, &vecs(z4, &[2, 0])));
        assert!(!row_module_contains(&canon, &vecs(z4, &[1, 0])));
    }

    #[test]
    fn rational_rref() {
        let q = ScalarRing::rationals();
        let m = mat(q, 3, &[&[2, 4, 6], &[1, 3, 5]]);
        let canon = canonical_row_form(&m);
        // RREF of [[2,4,6],[1,3,5]] = [[1,0,-1],[0,1,2]]
        assert_eq!(canon.nrows(), 2);
        assert_eq!(canon.row(0), &vecs(q, &[1, 0, -1])[..]);
        assert_eq!(canon.row(1), &vecs(q, &[0, 1, 2])[..]);
    }
}
