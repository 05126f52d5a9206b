//! Matrices over the normal-form algebras and over the scalar ring.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Element, Presentation};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// A rectangular matrix of scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![Scalar::one(); n])
    }

    pub fn diag(d: &[Scalar]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (k, s) in d.iter().enumerate() {
            m.set(k, k, s.clone());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` entries, 0-based.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize, Scalar)]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, j, s) in entries {
            let v = &m.data[i * cols + j] + s;
            m.set(*i, *j, v);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.cols + j] = s;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn mul(&self, o: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, o.rows, "scalar matrix shape mismatch");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc += &(a * o.get(k, j));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn add(&self, o: &ScalarMatrix) -> ScalarMatrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "scalar matrix shape mismatch");
        ScalarMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &ScalarMatrix) -> ScalarMatrix {
        self.add(&o.scale(&Scalar::integer(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> ScalarMatrix {
        ScalarMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ScalarMatrix {
        let mut m = self.transpose();
        for s in m.data.iter_mut() {
            *s = s.conj();
        }
        m
    }

    /// Entrywise conjugation.
    pub fn conj(&self) -> ScalarMatrix {
        ScalarMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|s| s.conj()).collect() }
    }

    pub fn commutator(&self, o: &ScalarMatrix) -> ScalarMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    /// Entrywise evaluation at the classical point.
    pub fn specialize_q1(&self) -> ScalarMatrix {
        ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|s| Scalar::base(s.specialize_q1())).collect(),
        }
    }

    /// Diagonal entries, if the matrix is diagonal.
    pub fn diagonal(&self) -> Option<Vec<Scalar>> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some((0..self.rows.min(self.cols)).map(|k| self.get(k, k).clone()).collect())
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A rectangular matrix with entries in one presentation.
#[derive(Clone)]
pub struct MatrixForm {
    pres: Arc<Presentation>,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Element>,
}

impl fmt::Debug for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                writeln!(f, "({},{}): {}", i + 1, j + 1, self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl PartialEq for MatrixForm {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.pres, &o.pres) && self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl Eq for MatrixForm {}

impl MatrixForm {
    pub fn from_elements(pres: &Arc<Presentation>, rows: usize, cols: usize, data: Vec<Element>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        assert!(data.iter().all(|e| Arc::ptr_eq(e.presentation(), pres)), "matrix entries from another presentation");
        MatrixForm { pres: pres.clone(), rows, cols, data }
    }

    pub fn zeros(pres: &Arc<Presentation>, rows: usize, cols: usize) -> Self {
        MatrixForm { pres: pres.clone(), rows, cols, data: vec![Element::zero(pres); rows * cols] }
    }

    pub fn identity(pres: &Arc<Presentation>, n: usize) -> Self {
        Self::from_scalars(pres, &ScalarMatrix::identity(n))
    }

    pub fn from_scalars(pres: &Arc<Presentation>, m: &ScalarMatrix) -> Self {
        let data = (0..m.rows * m.cols).map(|k| Element::scalar(pres, m.get(k / m.cols, k % m.cols).clone())).collect();
        MatrixForm { pres: pres.clone(), rows: m.rows, cols: m.cols, data }
    }

    /// The scalar matrix of an element multiple of the identity structure.
    pub fn scalar_times(pres: &Arc<Presentation>, m: &ScalarMatrix, e: &Element) -> Self {
        Self::from_scalars(pres, m).mul_element_right(e)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Element) {
        assert!(Arc::ptr_eq(e.presentation(), &self.pres));
        self.data[i * self.cols + j] = e;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Element)> {
        self.data.iter().enumerate().map(move |(k, e)| (k / self.cols, k % self.cols, e))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn column(&self, j: usize) -> MatrixForm {
        let data = (0..self.rows).map(|i| self.get(i, j).clone()).collect();
        MatrixForm { pres: self.pres.clone(), rows: self.rows, cols: 1, data }
    }

    /// Common form degree of the non-zero entries.
    pub fn form_degree(&self) -> Option<usize> {
        let mut d = None;
        for e in self.data.iter().filter(|e| !e.is_zero()) {
            let k = e.form_degree()?;
            match d {
                None => d = Some(k),
                Some(d0) if d0 != k => return None,
                _ => {}
            }
        }
        d
    }

    pub fn try_matmul(&self, o: &MatrixForm) -> Result<MatrixForm, MatrixError> {
        if self.cols != o.rows {
            return Err(MatrixError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let prods: Vec<Element> = (0..self.cols)
                    .filter(|&k| !self.get(i, k).is_zero() && !o.get(k, j).is_zero())
                    .map(|k| self.get(i, k) * o.get(k, j))
                    .collect();
                data.push(Element::sum(&self.pres, prods.iter()));
            }
        }
        Ok(MatrixForm { pres: self.pres.clone(), rows: self.rows, cols: o.cols, data })
    }

    pub fn matmul(&self, o: &MatrixForm) -> MatrixForm {
        self.try_matmul(o).expect("matrix shape mismatch")
    }

    pub fn try_add(&self, o: &MatrixForm) -> Result<MatrixForm, MatrixError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(MatrixError::Shape(format!("{}x{} plus {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(MatrixForm { pres: self.pres.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &MatrixForm) -> MatrixForm {
        self.try_add(o).expect("matrix shape mismatch")
    }

    pub fn sub(&self, o: &MatrixForm) -> MatrixForm {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MatrixForm {
        self.map(|e| -e)
    }

    pub fn scale(&self, s: &Scalar) -> MatrixForm {
        self.map(|e| e.scale(s))
    }

    pub fn mul_element_left(&self, e: &Element) -> MatrixForm {
        self.map(|x| e * x)
    }

    pub fn mul_element_right(&self, e: &Element) -> MatrixForm {
        self.map(|x| x * e)
    }

    /// Entrywise map into the same presentation.
    pub fn map<F: Fn(&Element) -> Element>(&self, f: F) -> MatrixForm {
        let data = self.data.iter().map(f).collect();
        MatrixForm { pres: self.pres.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Entrywise map into another presentation.
    pub fn map_into<F: Fn(&Element) -> Element>(&self, target: &Arc<Presentation>, f: F) -> MatrixForm {
        let data: Vec<Element> = self.data.iter().map(f).collect();
        Self::from_elements(target, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> MatrixForm {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        MatrixForm { pres: self.pres.clone(), rows: self.cols, cols: self.rows, data }
    }

    /// Transpose with the graded involution applied entrywise.
    pub fn dagger(&self) -> MatrixForm {
        self.transpose().map(|e| e.involution())
    }

    /// Entrywise exterior differential.
    pub fn d(&self) -> MatrixForm {
        self.map(|e| e.differential())
    }

    pub fn trace(&self) -> Element {
        let diag: Vec<Element> = (0..self.rows.min(self.cols)).map(|k| self.get(k, k).clone()).collect();
        Element::sum(&self.pres, diag.iter())
    }

    pub fn specialize_q1(&self) -> MatrixForm {
        let data: Vec<Element> = self.data.iter().map(|e| e.specialize_q1()).collect();
        let target = data.first().map(|e| e.presentation().clone()).unwrap_or_else(|| self.pres.clone());
        MatrixForm { pres: target, rows: self.rows, cols: self.cols, data }
    }

    /// First entry at which two matrices differ, rendered for reports.
    pub fn first_difference(&self, o: &MatrixForm) -> Option<String> {
        if self.rows != o.rows || self.cols != o.cols {
            return Some(format!("shape {}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (a, b) = (self.get(i, j), o.get(i, j));
                if a != b {
                    return Some(format!("entry ({},{}): {} vs {}", i + 1, j + 1, a, b));
                }
            }
        }
        None
    }
}

/// Right Hermitian pairing `⟨η, ξ⟩ = Σᵢ ηᵢ* ξᵢ` of column vectors.
pub fn hermitian_pairing(eta: &MatrixForm, xi: &MatrixForm) -> Result<Element, MatrixError> {
    if eta.cols != 1 || xi.cols != 1 || eta.rows != xi.rows {
        return Err(MatrixError::Shape(format!("pairing {}x{} with {}x{}", eta.rows, eta.cols, xi.rows, xi.cols)));
    }
    if !Arc::ptr_eq(eta.presentation(), xi.presentation()) {
        return Err(MatrixError::Shape("pairing across presentations".into()));
    }
    let prods: Vec<Element> = (0..eta.rows).map(|i| &eta.get(i, 0).involution() * xi.get(i, 0)).collect();
    Ok(Element::sum(eta.presentation(), prods.iter()))
}
