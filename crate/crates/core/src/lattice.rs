//! Full-rank integer lattices given by a row basis, with exact coordinate solves.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A full-rank sublattice of `Z^n` spanned by the rows of `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    basis: Vec<Vec<i64>>,
    /// `|det basis|`
    det: i64,
    /// `det * basis^{-1}`, an integer matrix.
    scaled_inverse: Vec<Vec<i64>>,
}

impl IntLattice {
    /// Returns `None` when the rows are not a square nonsingular matrix.
    pub fn new(basis: Vec<Vec<i64>>) -> Option<Self> {
        let n = basis.len();
        if n == 0 || basis.iter().any(|row| row.len() != n) {
            return None;
        }
        let (det, inv) = rational_inverse(&basis)?;
        let det_abs = det.abs();
        let scaled_inverse = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x * BigRational::from_integer(det_abs.clone());
                        debug_assert!(v.is_integer());
                        v.to_integer().to_i64().expect("lattice entries overflow i64")
                    })
                    .collect()
            })
            .collect();
        Some(Self {
            basis,
            det: det_abs.to_i64()?,
            scaled_inverse,
        })
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Index of the lattice in `Z^n`.
    pub fn index(&self) -> i64 {
        self.det
    }

    /// Coordinates `c` with `c * basis = v`, if `v` lies in the lattice.
    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let n = self.rank();
        if v.len() != n {
            return None;
        }
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let s: i64 = (0..n).map(|i| v[i] * self.scaled_inverse[i][j]).sum();
            if s % self.det != 0 {
                return None;
            }
            out.push(s / self.det);
        }
        Some(out)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coords(v).is_some()
    }

    /// `c * basis`.
    pub fn combine(&self, c: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).map(|i| c[i] * self.basis[i][j]).sum())
            .collect()
    }
}

/// Determinant and inverse over the rationals by Gauss-Jordan elimination.
fn rational_inverse(m: &[Vec<i64>]) -> Option<(BigInt, Vec<Vec<BigRational>>)> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    debug_assert!(det.is_integer());
    Some((det.to_integer(), inv))
}

/// Integer determinant of a square matrix.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    match rational_inverse(m) {
        Some((d, _)) => d.to_i64().expect("determinant overflows i64"),
        None => 0,
    }
}
