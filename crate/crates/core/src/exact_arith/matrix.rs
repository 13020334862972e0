use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use super::CycloNumber;
use crate::error::{Error, Result};

/// Dense square matrix over [`CycloNumber`], stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<CycloNumber>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![CycloNumber::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = CycloNumber::one();
        }
        m
    }

    pub fn diag(values: Vec<CycloNumber>) -> Self {
        let dim = values.len();
        let mut m = Self::zeros(dim);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * dim + i] = v;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloNumber>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a {dim}x{dim} matrix",
                bad.len()
            )));
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose entries are `ζ^k`, or zero where `None`.
    pub fn from_zeta_powers(rows: &[&[Option<i64>]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|e| e.map_or_else(CycloNumber::zero, CycloNumber::zeta_pow))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &CycloNumber {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: CycloNumber) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[CycloNumber] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycloNumber]> {
        self.entries.chunks(self.dim)
    }

    /// Exact product; zero entries of the left factor are skipped, which
    /// keeps the sparse braid generators cheap at large dimension.
    pub fn try_mul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.entries[i * n + j];
                    *slot = &*slot + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    /// Kronecker product, first factor most significant.
    pub fn tensor(&self, rhs: &CMatrix) -> CMatrix {
        let (a, b) = (self.dim, rhs.dim);
        let n = a * b;
        let mut out = CMatrix::zeros(n);
        for i1 in 0..a {
            for j1 in 0..a {
                let x = self.get(i1, j1);
                if x.is_zero() {
                    continue;
                }
                for i2 in 0..b {
                    for j2 in 0..b {
                        let y = rhs.get(i2, j2);
                        if y.is_zero() {
                            continue;
                        }
                        out.entries[(i1 * b + i2) * n + j1 * b + j2] = x * y;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &CycloNumber) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == CMatrix::identity(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycloNumber::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| i == j || self.entries[i * n + j].is_zero()))
    }

    /// Exact check of `M·M† = I`.
    pub fn is_unitary(&self) -> bool {
        (self * &self.dagger()).is_identity()
    }

    /// Inverse of a unitary matrix via its adjoint; errors if not unitary.
    pub fn unitary_inverse(&self) -> Result<CMatrix> {
        let d = self.dagger();
        if (self * &d).is_identity() {
            Ok(d)
        } else {
            Err(Error::InvalidArgument("matrix is not unitary".into()))
        }
    }

    pub fn pow(&self, mut e: u64) -> CMatrix {
        let mut base = self.clone();
        let mut acc = CMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn first_nonzero(&self) -> Option<usize> {
        self.entries.iter().position(|e| !e.is_zero())
    }

    /// `Some(λ)` with `self = λ·other` for a unit-modulus scalar `λ`.
    ///
    /// `λ` is read off the first nonzero entry of `other` and then verified on
    /// every entry.
    pub fn equal_up_to_phase(&self, other: &CMatrix) -> Option<CycloNumber> {
        if self.dim != other.dim {
            return None;
        }
        if self == other {
            return Some(CycloNumber::one());
        }
        let p = other.first_nonzero()?;
        let lambda = self.entries[p].try_div(&other.entries[p]).ok()?;
        if !lambda.is_unit_modulus() {
            return None;
        }
        let matches = self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| *a == b * &lambda);
        matches.then_some(lambda)
    }

    /// Rescales so that the first nonzero entry (row-major) is 1. `None` for
    /// the zero matrix.
    pub fn phase_gauged(&self) -> Option<CMatrix> {
        let p = self.first_nonzero()?;
        let pivot = &self.entries[p];
        if pivot.is_one() {
            return Some(self.clone());
        }
        let s = pivot.inv().ok()?;
        Some(self.scale(&s))
    }

    /// Rank over `Q(ζ)` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let mut rows: Vec<Vec<CycloNumber>> = self.rows().map(<[_]>::to_vec).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = rows[rank][col].inv().expect("pivot is nonzero");
            for r in 0..n {
                if r == rank || rows[r][col].is_zero() {
                    continue;
                }
                let factor = &rows[r][col] * &inv;
                for c in col..n {
                    let t = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - &t;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> CMatrix {
        let m = indices.len();
        let mut out = CMatrix::zeros(m);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out.entries[a * m + b] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        self.rows()
            .map(|r| r.iter().map(CycloNumber::to_complex).collect())
            .collect()
    }

    pub fn canonical_key(&self) -> String {
        let body: Vec<String> = self
            .entries
            .iter()
            .map(CycloNumber::canonical_key)
            .collect();
        format!("{}:{}", self.dim, body.join(";"))
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;

    /// Panics on a dimension mismatch; use [`CMatrix::try_mul`] to get an error.
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.dim, self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
