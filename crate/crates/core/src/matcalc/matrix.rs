//! Dense complex square matrices.
//!
//! Storage is row-major. Orders handled by this crate are small (r ≤ ~10), so
//! every operation is written as a plain triple loop.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{MatError, Result};

pub type C64 = Complex64;

pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Clone, PartialEq)]
pub struct SquareMatrix {
    order: usize,
    data: Vec<C64>,
}

impl SquareMatrix {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn new(order: usize, data: Vec<C64>) -> Result<Self> {
        if order == 0 {
            return Err(MatError::InvalidMatrix("order must be at least 1".into()));
        }
        if data.len() != order * order {
            return Err(MatError::InvalidMatrix(format!(
                "expected {} entries for order {}, found {}",
                order * order,
                order,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.is_finite()) {
            return Err(MatError::InvalidMatrix(format!(
                "non-finite entry at ({}, {})",
                pos / order,
                pos % order
            )));
        }
        Ok(Self { order, data })
    }

    pub(crate) fn from_vec_unchecked(order: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(data.len(), order * order);
        Self { order, data }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(MatError::InvalidMatrix("rows must form a square array".into()));
        }
        Self::new(order, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(order: usize) -> Self {
        Self { order, data: vec![ZERO; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        Self::scalar(order, ONE)
    }

    pub fn scalar(order: usize, c: C64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.data[i * order + i] = c;
        }
        m
    }

    pub fn real_scalar(order: usize, c: f64) -> Self {
        Self::scalar(order, C64::new(c, 0.0))
    }

    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn real_diag(values: &[f64]) -> Self {
        Self::diag(&values.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.data[i * self.order + j] = value;
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.order).map(|i| self.get(i, i)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn frobenius_norm(&self) -> f64 {
        let plain = self.data.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if plain.is_finite() && plain > 1e-280 {
            return plain.sqrt();
        }
        // rescale to dodge overflow / underflow of the squares
        let m = self.data.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        m * self.data.iter().map(|z| (z / m).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let n = self.order;
        (0..n)
            .map(|j| (0..n).map(|i| self.data[i * n + j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_vec_unchecked(self.order, self.data.iter().map(|&z| z * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self::from_vec_unchecked(self.order, self.data.iter().map(|&z| z * c).collect())
    }

    /// `self + c·I`.
    pub fn shift(&self, c: C64) -> Self {
        let mut out = self.clone();
        for i in 0..self.order {
            out.data[i * self.order + i] += c;
        }
        out
    }

    /// `self + c·I` for real c.
    pub fn shift_real(&self, c: f64) -> Self {
        self.shift(C64::new(c, 0.0))
    }

    /// In-place `self += c·other`.
    pub fn axpy(&mut self, c: C64, other: &SquareMatrix) {
        debug_assert_eq!(self.order, other.order);
        for (a, &b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += c * b;
        }
    }

    pub fn check_same_order(&self, other: &SquareMatrix) -> Result<()> {
        if self.order != other.order {
            return Err(MatError::Dimension { expected: self.order, found: other.order });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &SquareMatrix) -> SquareMatrix {
        let n = self.order;
        assert_eq!(n, other.order, "matmul order mismatch");
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Self::from_vec_unchecked(n, out)
    }

    /// LU factorisation with partial pivoting. Returns packed LU and the row permutation.
    fn lu(&self) -> Result<(Vec<C64>, Vec<usize>)> {
        let n = self.order;
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = self.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax <= scale * 1e-300 || pmax == 0.0 || !pmax.is_finite() {
                return Err(MatError::Singular(format!("zero pivot in column {k}")));
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= f * u;
                }
            }
        }
        Ok((lu, perm))
    }

    /// Solves `self · X = rhs`.
    pub fn solve(&self, rhs: &SquareMatrix) -> Result<SquareMatrix> {
        self.check_same_order(rhs)?;
        let n = self.order;
        let (lu, perm) = self.lu()?;
        let mut x = vec![ZERO; n * n];
        for col in 0..n {
            let mut y = vec![ZERO; n];
            for i in 0..n {
                let mut s = rhs.data[perm[i] * n + col];
                for j in 0..i {
                    s -= lu[i * n + j] * y[j];
                }
                y[i] = s;
            }
            for i in (0..n).rev() {
                let mut s = y[i];
                for j in i + 1..n {
                    s -= lu[i * n + j] * x[j * n + col];
                }
                x[i * n + col] = s / lu[i * n + i];
            }
        }
        let out = Self::from_vec_unchecked(n, x);
        if !out.is_finite() {
            return Err(MatError::Singular("solution is not finite".into()));
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<SquareMatrix> {
        self.solve(&Self::identity(self.order))
    }

    pub fn determinant(&self) -> C64 {
        match self.lu() {
            Ok((lu, perm)) => {
                let n = self.order;
                let mut det = ONE;
                for i in 0..n {
                    det *= lu[i * n + i];
                }
                // parity of the permutation
                let mut seen = vec![false; n];
                let mut sign = 1.0;
                for i in 0..n {
                    if seen[i] {
                        continue;
                    }
                    let mut j = i;
                    let mut len = 0;
                    while !seen[j] {
                        seen[j] = true;
                        j = perm[j];
                        len += 1;
                    }
                    if len % 2 == 0 {
                        sign = -sign;
                    }
                }
                det * sign
            }
            Err(_) => ZERO,
        }
    }

    /// Frobenius distance relative to `max(‖self‖, ‖other‖, 1)`.
    pub fn relative_distance(&self, other: &SquareMatrix) -> f64 {
        let d = (self - other).frobenius_norm();
        d / self.frobenius_norm().max(other.frobenius_norm()).max(1.0)
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<C64> {
        nalgebra::DMatrix::from_row_slice(self.order, self.order, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &nalgebra::DMatrix<C64>) -> Self {
        let n = m.nrows();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(m[(i, j)]);
            }
        }
        Self::from_vec_unchecked(n, data)
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix({}x{})[", self.order, self.order)?;
        for row in self.data.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(|z| format!("{:.6e}{:+.6e}i", z.re, z.im)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&SquareMatrix> for &SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: &SquareMatrix) -> SquareMatrix {
                assert_eq!(self.order, rhs.order, "order mismatch");
                SquareMatrix::from_vec_unchecked(
                    self.order,
                    self.data.iter().zip(rhs.data.iter()).map(|(a, b)| a $op b).collect(),
                )
            }
        }
        impl $trait<SquareMatrix> for SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: SquareMatrix) -> SquareMatrix {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&SquareMatrix> for SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: &SquareMatrix) -> SquareMatrix {
                (&self).$method(rhs)
            }
        }
        impl $trait<SquareMatrix> for &SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: SquareMatrix) -> SquareMatrix {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);

impl Mul<&SquareMatrix> for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        self.matmul(rhs)
    }
}
impl Mul<SquareMatrix> for SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: SquareMatrix) -> SquareMatrix {
        self.matmul(&rhs)
    }
}
impl Mul<&SquareMatrix> for SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        self.matmul(rhs)
    }
}
impl Mul<SquareMatrix> for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: SquareMatrix) -> SquareMatrix {
        self.matmul(&rhs)
    }
}

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;
    fn neg(self) -> SquareMatrix {
        SquareMatrix::from_vec_unchecked(self.order, self.data.iter().map(|z| -z).collect())
    }
}
impl Neg for SquareMatrix {
    type Output = SquareMatrix;
    fn neg(self) -> SquareMatrix {
        -&self
    }
}

impl AddAssign<&SquareMatrix> for SquareMatrix {
    fn add_assign(&mut self, rhs: &SquareMatrix) {
        assert_eq!(self.order, rhs.order, "order mismatch");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
    }
}
impl SubAssign<&SquareMatrix> for SquareMatrix {
    fn sub_assign(&mut self, rhs: &SquareMatrix) {
        assert_eq!(self.order, rhs.order, "order mismatch");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
    }
}

// JSON: {"order": r, "entries": [[[re, im], ...], ...]}; real rows [[1.0, 2.0], ...] are
// promoted on input.

impl Serialize for SquareMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<[f64; 2]>> = self
            .data
            .chunks(self.order)
            .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        let mut s = serializer.serialize_struct("SquareMatrix", 2)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("entries", &entries)?;
        s.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixRepr {
    Full { order: usize, entries: Vec<Vec<EntryRepr>> },
    Rows(Vec<Vec<EntryRepr>>),
}

impl<'de> Deserialize<'de> for SquareMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        let (declared, rows) = match repr {
            MatrixRepr::Full { order, entries } => (Some(order), entries),
            MatrixRepr::Rows(rows) => (None, rows),
        };
        let rows: Vec<Vec<C64>> = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| match e {
                        EntryRepr::Real(x) => C64::new(x, 0.0),
                        EntryRepr::Complex([re, im]) => C64::new(re, im),
                    })
                    .collect()
            })
            .collect();
        if let Some(order) = declared {
            if order != rows.len() {
                return Err(de::Error::custom(format!(
                    "declared order {order} does not match {} rows",
                    rows.len()
                )));
            }
        }
        SquareMatrix::from_rows(&rows).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_triangular() {
        let a = SquareMatrix::from_real_rows(&[vec![2.0, 1.0], vec![0.0, 4.0]]).unwrap();
        let inv = a.inverse().unwrap();
        let prod = &a * &inv;
        assert!(prod.relative_distance(&SquareMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = SquareMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(a.inverse(), Err(MatError::Singular(_))));
    }

    #[test]
    fn construction_rejects_non_finite() {
        let err = SquareMatrix::new(1, vec![C64::new(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, MatError::InvalidMatrix(_)));
        assert!(SquareMatrix::new(2, vec![ONE; 3]).is_err());
        assert!(SquareMatrix::new(0, vec![]).is_err());
    }

    #[test]
    fn json_accepts_real_shorthand_and_full_form() {
        let m: SquareMatrix = serde_json::from_str("[[1.0, 2.0], [3.0, 4.0]]").unwrap();
        assert_eq!(m.get(1, 0), C64::new(3.0, 0.0));
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(
            text,
            r#"{"order":2,"entries":[[[1.0,0.0],[2.0,0.0]],[[3.0,0.0],[4.0,0.0]]]}"#
        );
        let back: SquareMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        let bad = serde_json::from_str::<SquareMatrix>(r#"{"order":3,"entries":[[1.0]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn determinant_tracks_permutation_sign() {
        let a = SquareMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!((a.determinant() - C64::new(-1.0, 0.0)).norm() < 1e-15);
    }
}
