//! Square matrices over [`CycNum`], stored as sorted sparse rows.
//!
//! Group elements of the built-in error groups are monomial, so the sparse
//! layout keeps thousands of exact matrices cheap. Zero entries are never
//! stored, which makes equality and hashing structural.

use std::fmt;

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::integer::Integer;

use crate::cyclo::{CycNum, Term};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, CycNum)>>,
}

impl CycMatrix {
    pub fn zeros(dim: usize) -> Self {
        CycMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, CycNum::one())
    }

    pub fn scalar(dim: usize, c: CycNum) -> Self {
        if c.is_zero() {
            return Self::zeros(dim);
        }
        CycMatrix {
            dim,
            rows: (0..dim).map(|i| vec![(i, c.clone())]).collect(),
        }
    }

    /// Builds a matrix from dense rows. Panics if the rows are not square.
    pub fn from_dense(rows: Vec<Vec<CycNum>>) -> Self {
        let dim = rows.len();
        let rows = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), dim, "matrix must be square");
                r.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        CycMatrix { dim, rows }
    }

    /// Convenience constructor from small integers.
    pub fn from_integers(rows: &[&[i64]]) -> Self {
        Self::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycNum::from_integer(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix from a flat list of `(row, col, value)` triples.
    /// Repeated positions are summed.
    pub fn from_triples(dim: usize, triples: impl IntoIterator<Item = (usize, usize, CycNum)>) -> Self {
        let mut dense = DenseAcc::new(dim);
        for (i, j, c) in triples {
            dense.add(i, j, &c);
        }
        dense.finish()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, CycNum)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> CycNum {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_else(|_| CycNum::zero())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycNum)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, c)| (i, *j, c)))
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, &CycNum)> {
        self.entries().next()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// The scalar `c` if the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<CycNum> {
        if self.dim == 0 {
            return Some(CycNum::zero());
        }
        let c = self.get(0, 0);
        (*self == Self::scalar(self.dim, c.clone())).then_some(c)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = Vec::with_capacity(self.dim);
        let mut acc: Vec<Option<CycNum>> = vec![None; self.dim];
        let mut touched = Vec::new();
        for row in &self.rows {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let p = a * b;
                    match &mut acc[*j] {
                        Some(v) => *v = &*v + &p,
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut r = Vec::with_capacity(touched.len());
            for j in touched.drain(..) {
                let v = acc[j].take().expect("touched slot");
                if !v.is_zero() {
                    r.push((j, v));
                }
            }
            out.push(r);
        }
        CycMatrix {
            dim: self.dim,
            rows: out,
        }
    }

    pub fn add(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(a, b, |x, y| x + y))
            .collect();
        CycMatrix { dim: self.dim, rows }
    }

    pub fn sub(&self, other: &CycMatrix) -> CycMatrix {
        self.add(&other.scale(&CycNum::from_integer(-1)))
    }

    pub fn scale(&self, c: &CycNum) -> CycMatrix {
        if c.is_zero() {
            return Self::zeros(self.dim);
        }
        CycMatrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
                .collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CycMatrix {
        let mut rows = vec![Vec::new(); self.dim];
        for (i, j, c) in self.entries() {
            rows[j].push((i, c.conj()));
        }
        CycMatrix { dim: self.dim, rows }
    }

    pub fn trace(&self) -> CycNum {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &CycMatrix) -> CycNum {
        let mut acc = CycNum::zero();
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                let b = other.get(*k, i);
                if !b.is_zero() {
                    acc = acc + a * &b;
                }
            }
        }
        acc
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()).is_identity()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn kron(&self, other: &CycMatrix) -> CycMatrix {
        let n = other.dim;
        let mut rows = vec![Vec::new(); self.dim * n];
        for (i, j, a) in self.entries() {
            for (k, orow) in other.rows.iter().enumerate() {
                for (l, b) in orow {
                    rows[i * n + k].push((j * n + l, a * b));
                }
            }
        }
        for r in &mut rows {
            r.sort_by_key(|(c, _)| *c);
        }
        CycMatrix {
            dim: self.dim * n,
            rows,
        }
    }

    pub fn direct_sum(&self, other: &CycMatrix) -> CycMatrix {
        let off = self.dim;
        let mut rows = self.rows.clone();
        for r in &other.rows {
            rows.push(r.iter().map(|(j, c)| (j + off, c.clone())).collect());
        }
        CycMatrix {
            dim: self.dim + other.dim,
            rows,
        }
    }

    /// Least common multiple of the entry conductors.
    pub fn conductor(&self) -> u32 {
        self.entries().fold(1u32, |acc, (_, _, c)| acc.lcm(&c.conductor()))
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, j, c) in self.entries() {
            m[(i, j)] = c.embed();
        }
        m
    }

    /// Dense `[num, den, k]` encoding over `ζ_m`.
    pub fn to_terms(&self, m: u32) -> Result<Vec<Vec<Vec<Term>>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).to_terms(m)).collect())
            .collect()
    }

    pub fn from_terms(m: u32, rows: &[Vec<Vec<Term>>]) -> Result<Self> {
        let dim = rows.len();
        let mut dense = Vec::with_capacity(dim);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {dim}",
                    r.len()
                )));
            }
            dense.push(r.iter().map(|t| CycNum::from_terms(m, t)).collect::<Result<Vec<_>>>()?);
        }
        Ok(Self::from_dense(dense))
    }
}

fn merge_rows(
    a: &[(usize, CycNum)],
    b: &[(usize, CycNum)],
    op: impl Fn(&CycNum, &CycNum) -> CycNum,
) -> Vec<(usize, CycNum)> {
    let zero = CycNum::zero();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, op(va, vb))
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, op(va, &zero))
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, op(va, &zero))
            }
            (_, Some((cb, vb))) => {
                j += 1;
                (*cb, op(&zero, vb))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Dense accumulator for sums of many sparse matrices.
pub(crate) struct DenseAcc {
    dim: usize,
    cells: Vec<CycNum>,
}

impl DenseAcc {
    pub(crate) fn new(dim: usize) -> Self {
        DenseAcc {
            dim,
            cells: vec![CycNum::zero(); dim * dim],
        }
    }

    pub(crate) fn add(&mut self, i: usize, j: usize, c: &CycNum) {
        let cell = &mut self.cells[i * self.dim + j];
        *cell = &*cell + c;
    }

    /// Adds `c · m`.
    pub(crate) fn add_scaled(&mut self, m: &CycMatrix, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        for (i, j, v) in m.entries() {
            self.add(i, j, &(v * c));
        }
    }

    pub(crate) fn finish(self) -> CycMatrix {
        let dim = self.dim;
        let mut rows = vec![Vec::new(); dim];
        for (k, c) in self.cells.into_iter().enumerate() {
            if !c.is_zero() {
                rows[k / dim].push((k % dim, c));
            }
        }
        CycMatrix { dim, rows }
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> CycMatrix {
        CycMatrix::from_integers(&[&[0, 1], &[1, 0]])
    }

    fn pauli_z() -> CycMatrix {
        CycMatrix::from_integers(&[&[1, 0], &[0, -1]])
    }

    fn pauli_y() -> CycMatrix {
        let i = CycNum::zeta(4, 1);
        CycMatrix::from_dense(vec![vec![CycNum::zero(), -&i], vec![i, CycNum::zero()]])
    }

    #[test]
    fn pauli_products() {
        let (x, y, z) = (pauli_x(), pauli_y(), pauli_z());
        let i = CycNum::zeta(4, 1);
        assert_eq!(x.mul(&y), z.scale(&i));
        assert!(x.mul(&x).is_identity());
        assert!(y.is_hermitian() && y.is_unitary());
        assert_eq!(x.mul(&z).trace(), CycNum::zero());
        assert_eq!(x.trace_of_product(&x), CycNum::from_integer(2));
    }

    #[test]
    fn kron_and_direct_sum() {
        let xz = pauli_x().kron(&pauli_z());
        assert_eq!(xz.dim(), 4);
        assert_eq!(xz.get(0, 2), CycNum::one());
        assert_eq!(xz.get(1, 3), CycNum::from_integer(-1));
        assert_eq!(xz.nnz(), 4);
        let ds = pauli_x().direct_sum(&pauli_z());
        assert_eq!(ds.get(3, 3), CycNum::from_integer(-1));
        assert_eq!(ds.trace(), CycNum::zero());
    }

    #[test]
    fn add_cancels_to_zero() {
        let z = pauli_z();
        assert!(z.sub(&z).is_zero());
        let p = CycMatrix::identity(2).add(&z).scale(&CycNum::from_fraction(1, 2));
        assert!(p.is_idempotent() && p.is_hermitian());
        assert_eq!(p.as_scalar(), None);
        assert_eq!(
            CycMatrix::scalar(2, CycNum::zeta(4, 3)).as_scalar(),
            Some(CycNum::zeta(4, 3))
        );
    }

    #[test]
    fn terms_encoding() {
        let y = pauli_y();
        let t = y.to_terms(4).unwrap();
        assert_eq!(CycMatrix::from_terms(4, &t).unwrap(), y);
    }
}
