//! Finitely generated abelian groups presented by integer relation
//! matrices: Smith normal form, quotient structure, and coordinates of
//! classes in the quotient.
//!
//! Entries stay exact (`BigInt`); the gcd-driven reduction keeps no
//! anti-blowup machinery since every matrix here is tiny.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("matrix data has length {found}, expected {rows} x {cols} = {expected}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },
    #[error("vector has length {found}, expected {expected} (one entry per generator)")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("presentation has {found} relation columns for {expected} generators")]
    ColumnMismatch { expected: usize, found: usize },
}

/// Dense rectangular matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, GroupError> {
        if data.len() != rows * cols {
            return Err(GroupError::ShapeMismatch {
                rows,
                cols,
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        IntMatrix::new(rows, cols, data.iter().map(|&x| BigInt::from(x)).collect())
            .expect("shape mismatch")
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix*vector");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !at(&m, i, k).is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &at(&m, i, j) * &at(&m, k, k) - &at(&m, i, k) * &at(&m, k, j);
                    m[i * n + j] = &num / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        sign * at(&m, n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// row[to] += k * row[from]
    fn add_row_multiple(&mut self, to: usize, from: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = k * &self[(from, j)];
            self[(to, j)] += add;
        }
    }

    /// col[to] += k * col[from]
    fn add_col_multiple(&mut self, to: usize, from: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = k * &self[(i, from)];
            self[(i, to)] += add;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular and `D`
/// diagonal with non-negative entries in a divisibility chain.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal of `D`, length `min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for k in 0..steps {
        'pivot: loop {
            // Minimal nonzero pivot in the remaining block keeps the gcd
            // steps short.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    let better = match pivot {
                        Some((pi, pj)) => d[(i, j)].abs() < d[(pi, pj)].abs(),
                        None => true,
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break 'pivot; // remaining block is zero
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut dirty = false;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = &d[(i, k)] / &d[(k, k)];
                d.add_row_multiple(i, k, &-q.clone());
                u.add_row_multiple(i, k, &-q);
                if !d[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = &d[(k, j)] / &d[(k, k)];
                d.add_col_multiple(j, k, &-q.clone());
                v.add_col_multiple(j, k, &-q);
                if !d[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot; // smaller remainders became new pivot candidates
            }

            // Pivot must divide the whole remaining block for the
            // divisibility chain; pull a bad row up and retry.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !d[(i, j)].mod_floor(&d[(k, k)]).is_zero() {
                        d.add_row_multiple(k, i, &BigInt::one());
                        u.add_row_multiple(k, i, &BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }

    Snf { d, u, v }
}

/// Generators with one relation row per generator column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: IntMatrix,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relations: IntMatrix) -> Result<Self, GroupError> {
        if relations.cols() != generators.len() {
            return Err(GroupError::ColumnMismatch {
                expected: generators.len(),
                found: relations.cols(),
            });
        }
        Ok(GroupPresentation {
            generators,
            relations,
        })
    }
}

/// Structure of `Z^g / rowspan(relations)`: free rank, invariant factors,
/// and the change of basis needed to read off coordinates.
#[derive(Debug, Clone)]
pub struct FGAbelian {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    /// Full diagonal of the Smith form of the relation matrix.
    diagonal: Vec<BigInt>,
    /// Unimodular map sending a generator-basis vector to coordinates in
    /// the diagonalized presentation (the transpose of the SNF `V`).
    basis_map: IntMatrix,
    snf: Snf,
}

/// Coordinates of a class in the computed decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinates {
    /// Canonical residues in `[0, d_i)`, aligned with the invariant factors.
    pub torsion: Vec<BigInt>,
    /// Integer coordinates on the free part.
    pub free: Vec<BigInt>,
}

impl FGAbelian {
    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn snf(&self) -> &Snf {
        &self.snf
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.free_rank == r && self.invariant_factors.is_empty()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .product::<BigInt>()
                .max(BigInt::one()),
        )
    }

    /// Finite cyclic: at most one nontrivial invariant factor, no free part.
    pub fn is_finite_cyclic(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.len() <= 1
    }

    /// Image of a generator-basis vector in the decomposition.
    pub fn coordinates(&self, vec: &[BigInt]) -> Result<Coordinates, GroupError> {
        if vec.len() != self.basis_map.cols() {
            return Err(GroupError::DimensionMismatch {
                expected: self.basis_map.cols(),
                found: vec.len(),
            });
        }
        let y = self.basis_map.mul_vec(vec);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (i, coord) in y.iter().enumerate() {
            match self.diagonal.get(i) {
                Some(d) if d.is_one() => {} // trivial factor
                Some(d) if !d.is_zero() => torsion.push(coord.mod_floor(d)),
                _ => free.push(coord.clone()),
            }
        }
        Ok(Coordinates { torsion, free })
    }
}

pub fn quotient_structure(p: &GroupPresentation) -> FGAbelian {
    let snf = smith_normal_form(&p.relations);
    let diagonal = snf.diagonal();
    let gens = p.generators.len();
    let nonzero = diagonal.iter().filter(|d| !d.is_zero()).count();
    let invariant_factors = diagonal
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    FGAbelian {
        free_rank: gens - nonzero,
        invariant_factors,
        diagonal,
        basis_map: snf.v.transpose(),
        snf,
    }
}

pub fn class_coordinates(vec: &[BigInt], p: &GroupPresentation) -> Result<Coordinates, GroupError> {
    quotient_structure(p).coordinates(vec)
}
