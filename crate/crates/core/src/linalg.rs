//! Dense matrices over a [`Field`] with exact row reduction.
//!
//! A vector space is its dimension with the standard basis. Subspaces are
//! carried as injective matrices (columns form a basis), quotients as
//! surjective matrices. Pivot choice is the leftmost nonzero column and the
//! topmost nonzero row, so every basis produced here is deterministic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field = Rat> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F: Field = Rat> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

/// Output of [`Matrix::rref_kernel_image`].
#[derive(Clone, Debug, PartialEq)]
pub struct KernelImage<F: Field = Rat> {
    pub rref: Matrix<F>,
    pub pivot_cols: Vec<usize>,
    pub kernel_basis: Matrix<F>,
    pub image_basis: Matrix<F>,
}

/// A quotient `F^rows -> F^dim` of the target of a matrix by its column space.
#[derive(Clone, Debug, PartialEq)]
pub struct Cokernel<F: Field = Rat> {
    pub dim: usize,
    pub projection: Matrix<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from row vectors. `cols` is needed to express `0 x n` shapes.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| F::from_int(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    /// Column vector.
    pub fn column(entries: Vec<F>) -> Self {
        let n = entries.len();
        Matrix { rows: n, cols: 1, data: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, k: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul_ref(k)).collect(),
        }
    }

    /// Matrix product `self * rhs`. Panics on incompatible shapes.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn try_compose(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.compose(rhs))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack needs equal row counts");
        Self::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        })
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn hstack_all(rows: usize, blocks: &[Self]) -> Self {
        blocks.iter().fold(Self::zeros(rows, 0), |acc, b| acc.hstack(b))
    }

    pub fn vstack_all(cols: usize, blocks: &[Self]) -> Self {
        blocks.iter().fold(Self::zeros(0, cols), |acc, b| acc.vstack(b))
    }

    /// Block diagonal `self ⊕ rhs`.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows + rhs.rows, self.cols + rhs.cols, |r, c| {
            match (r < self.rows, c < self.cols) {
                (true, true) => self.get(r, c).clone(),
                (false, false) => rhs.get(r - self.rows, c - self.cols).clone(),
                _ => F::zero(),
            }
        })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows.start + r, cols.start + c).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    /// Places `block` with its top left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    /// Kronecker product; the row and column index of `A ⊗ B` is `i * dim_B + j`.
    pub fn kronecker(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            let (i, k) = (r / rhs.rows, r % rhs.rows);
            let (j, l) = (c / rhs.cols, c % rhs.cols);
            self.get(i, j).mul_ref(rhs.get(k, l))
        })
    }

    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = F::one().div_ref(m.get(lead, c));
            if !inv.is_one() {
                for j in c..m.cols {
                    let v = m.get(lead, j).mul_ref(&inv);
                    m.set(lead, j, v);
                }
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let lv = m.get(lead, j);
                    if lv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, j).sub_ref(&factor.mul_ref(lv));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    fn kernel_from_rref(rref: &Rref<F>, cols: usize) -> Matrix<F> {
        let free: Vec<usize> = (0..cols).filter(|c| !rref.pivots.contains(c)).collect();
        let mut k = Matrix::zeros(cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, F::one());
            for (i, &pc) in rref.pivots.iter().enumerate() {
                let v = rref.reduced.get(i, fc);
                if !v.is_zero() {
                    k.set(pc, j, -v.clone());
                }
            }
        }
        k
    }

    /// Columns form a basis of `{x : Ax = 0}`, one per free column.
    pub fn kernel_basis(&self) -> Self {
        Self::kernel_from_rref(&self.rref(), self.cols)
    }

    /// The pivot columns of `A`, a basis of its column space.
    pub fn image_basis(&self) -> Self {
        self.select_columns(&self.rref().pivots)
    }

    pub fn rref_kernel_image(&self) -> KernelImage<F> {
        let rref = self.rref();
        let kernel_basis = Self::kernel_from_rref(&rref, self.cols);
        let image_basis = self.select_columns(&rref.pivots);
        KernelImage { rref: rref.reduced, pivot_cols: rref.pivots, kernel_basis, image_basis }
    }

    /// Quotient of the target by the column space. The rows of the projection
    /// are the kernel basis of `Aᵀ`, indexed by its non-pivot coordinates.
    pub fn cokernel(&self) -> Cokernel<F> {
        let projection = self.transpose().kernel_basis().transpose();
        Cokernel { dim: projection.rows, projection }
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.is_injective()
    }

    /// Some `X` with `self * X = rhs`, free variables set to zero.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "solve needs equal row counts");
        let aug = self.hstack(rhs).rref();
        if aug.pivots.last().is_some_and(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &pc) in aug.pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                x.set(pc, k, aug.reduced.get(i, self.cols + k).clone());
            }
        }
        Some(x)
    }

    /// The unique `g` with `i * g = f`, for `i` injective.
    pub fn factor_through_mono(f: &Self, i: &Self) -> Result<Self> {
        if f.rows != i.rows {
            return Err(Error::DimensionMismatch(format!(
                "factor {}x{} through {}x{}",
                f.rows, f.cols, i.rows, i.cols
            )));
        }
        if !i.is_injective() {
            return Err(Error::NotInjective);
        }
        i.solve(f).ok_or(Error::NotContained)
    }

    /// `L` with `L * self = I`, for injective `self`.
    pub fn left_inverse(&self) -> Result<Self> {
        if !self.is_injective() {
            return Err(Error::NotInjective);
        }
        let lt = self
            .transpose()
            .solve(&Self::identity(self.cols))
            .expect("injective matrix has a left inverse");
        Ok(lt.transpose())
    }

    /// `S` with `self * S = I`, for surjective `self`.
    pub fn right_inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.rows)).ok_or_else(|| {
            Error::DimensionMismatch(format!("{}x{} matrix is not surjective", self.rows, self.cols))
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not invertible",
                self.rows, self.cols
            )));
        }
        Ok(self.solve(&Self::identity(self.rows)).expect("invertible"))
    }

    /// True when the column spaces coincide.
    pub fn same_column_space(&self, rhs: &Self) -> bool {
        self.rows == rhs.rows && {
            let r = self.rank();
            r == rhs.rank() && self.hstack(rhs).rank() == r
        }
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: Self) -> Matrix<F> {
        self.compose(rhs)
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: Self) -> Matrix<F> {
        self.zip_with(rhs, |a, b| a.add_ref(b))
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: Self) -> Matrix<F> {
        self.zip_with(rhs, |a, b| a.sub_ref(b))
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type M = Matrix<Rat>;

    #[test]
    fn identity_kernel_image() {
        let ki = M::identity(2).rref_kernel_image();
        assert_eq!(ki.kernel_basis.shape(), (2, 0));
        assert_eq!(ki.image_basis, M::identity(2));
        assert_eq!(ki.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn coordinate_projection() {
        let ki = M::from_ints(&[[1, 0]]).rref_kernel_image();
        assert_eq!(ki.kernel_basis, M::from_ints(&[[0], [1]]));
        assert_eq!(ki.pivot_cols.len(), 1);
    }

    #[test]
    fn rank_one_hand_reduction() {
        // [[1,2],[2,4]] -> [[1,2],[0,0]]; free column 1 gives (-2, 1).
        let a = M::from_ints(&[[1, 2], [2, 4]]);
        let ki = a.rref_kernel_image();
        assert_eq!(ki.rref, M::from_ints(&[[1, 2], [0, 0]]));
        assert_eq!(ki.pivot_cols, vec![0]);
        assert_eq!(ki.kernel_basis, M::from_ints(&[[-2], [1]]));
        assert_eq!(ki.image_basis, M::from_ints(&[[1], [2]]));
    }

    #[test]
    fn empty_shapes() {
        let a = M::zeros(0, 3);
        assert_eq!(a.kernel_basis(), M::identity(3));
        assert_eq!(a.image_basis().shape(), (0, 0));
        let b = M::zeros(3, 0);
        assert_eq!(b.kernel_basis().shape(), (0, 0));
        assert_eq!(b.cokernel().projection, M::identity(3));
        assert_eq!((&b * &M::zeros(0, 2)).shape(), (3, 2));
    }

    #[test]
    fn cokernel_examples() {
        let c = M::identity(2).cokernel();
        assert_eq!(c.dim, 0);
        assert_eq!(c.projection.shape(), (0, 2));

        let c = M::zeros(3, 1).cokernel();
        assert_eq!(c.dim, 3);
        assert_eq!(c.projection, M::identity(3));

        // Completing (1,1) to a basis: the quotient is 1-dimensional and
        // killed by the functional (-1, 1).
        let a = M::from_ints(&[[1], [1]]);
        let c = a.cokernel();
        assert_eq!(c.dim, 1);
        assert!((&c.projection * &a).is_zero());
        assert_eq!(c.projection, M::from_ints(&[[-1, 1]]));
    }

    #[test]
    fn factor_through_mono_examples() {
        let i = M::from_ints(&[[1, 0], [0, 1], [1, 1]]);
        assert_eq!(M::factor_through_mono(&i, &i).unwrap(), M::identity(2));
        assert_eq!(M::factor_through_mono(&M::zeros(3, 4), &i).unwrap(), M::zeros(2, 4));

        let i = M::from_ints(&[[1], [0]]);
        let f = M::from_ints(&[[3], [0]]);
        assert_eq!(M::factor_through_mono(&f, &i).unwrap(), M::from_ints(&[[3]]));

        let not_mono = M::from_ints(&[[1, 1], [0, 0]]);
        assert_eq!(M::factor_through_mono(&f, &not_mono), Err(Error::NotInjective));
        let outside = M::from_ints(&[[0], [1]]);
        assert_eq!(M::factor_through_mono(&outside, &i), Err(Error::NotContained));
    }

    #[test]
    fn kronecker_examples() {
        let two = M::from_ints(&[[2]]);
        assert_eq!(two.kronecker(&M::identity(2)), M::from_ints(&[[2, 0], [0, 2]]));
        let b = M::from_ints(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(M::identity(1).kronecker(&b), b);
        let a = M::from_ints(&[[1], [1]]);
        let b = M::from_ints(&[[1, 0]]);
        assert_eq!(a.kronecker(&b), M::from_ints(&[[1, 0], [1, 0]]));
    }

    #[test]
    fn inverses() {
        let a = M::from_ints(&[[2, 1], [1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, M::identity(2));
        let i = M::from_ints(&[[1, 0], [2, 1], [0, 3]]);
        assert_eq!(&i.left_inverse().unwrap() * &i, M::identity(2));
        let p = i.transpose();
        assert_eq!(&p * &p.right_inverse().unwrap(), M::identity(2));
    }

    #[test]
    fn other_fields() {
        let a: Matrix<f64> = Matrix::from_ints(&[[1, 2], [2, 4]]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.kernel_basis(), Matrix::from_ints(&[[-2], [1]]));
        let b: Matrix<Ratio<i64>> = Matrix::from_ints(&[[3, 1], [1, 2]]);
        let inv = b.inverse().unwrap();
        assert_eq!(inv.get(0, 0), &Ratio::new(2, 5));
    }
}
