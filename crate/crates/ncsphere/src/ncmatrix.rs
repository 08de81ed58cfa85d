//! Matrices and graded forms over a rewrite-system algebra: products with
//! normalization, dagger, entrywise differential, the Grassmann connection
//! curvature p dp dp and the Bianchi identity check.

use crate::ncalg::{AlgError, NCPoly, RewriteSystem};
use crate::scalars::Scalar;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatError {
    #[error("shape mismatch: ({0},{1}) vs ({2},{3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix is not a projection: {0}")]
    NotAProjection(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// A matrix of normalized NCPoly entries over a shared rewrite system.
#[derive(Debug, Clone)]
pub struct NCMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<NCPoly>,
    pub sys: Arc<RewriteSystem>,
}

impl NCMatrix {
    pub fn zero(sys: Arc<RewriteSystem>, rows: usize, cols: usize) -> Self {
        NCMatrix {
            rows,
            cols,
            entries: vec![NCPoly::zero(); rows * cols],
            sys,
        }
    }

    pub fn identity(sys: Arc<RewriteSystem>, n: usize) -> Self {
        let mut m = Self::zero(sys, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = NCPoly::one();
        }
        m
    }

    pub fn from_fn(
        sys: Arc<RewriteSystem>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> NCPoly,
    ) -> Self {
        let mut m = Self::zero(sys.clone(), rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = sys.nf(&f(i, j));
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut NCPoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, o: &NCMatrix) -> NCMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&o.entries) {
            *a = self.sys.nf(&a.add(b));
        }
        m
    }

    pub fn sub(&self, o: &NCMatrix) -> NCMatrix {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> NCMatrix {
        let mut m = self.clone();
        for a in m.entries.iter_mut() {
            *a = a.neg();
        }
        m
    }

    pub fn scale(&self, c: &Scalar) -> NCMatrix {
        let mut m = self.clone();
        for a in m.entries.iter_mut() {
            *a = a.scale(c);
        }
        m
    }

    /// Left-multiply every entry by an algebra element.
    pub fn scale_left(&self, f: &NCPoly) -> NCMatrix {
        let mut m = self.clone();
        for a in m.entries.iter_mut() {
            *a = self.sys.mul_nf(f, a);
        }
        m
    }

    /// Right-multiply every entry by an algebra element.
    pub fn scale_right(&self, f: &NCPoly) -> NCMatrix {
        let mut m = self.clone();
        for a in m.entries.iter_mut() {
            *a = self.sys.mul_nf(a, f);
        }
        m
    }

    pub fn mul(&self, o: &NCMatrix) -> Result<NCMatrix, MatError> {
        if self.cols != o.rows {
            return Err(MatError::ShapeMismatch(self.rows, self.cols, o.rows, o.cols));
        }
        let mut m = NCMatrix::zero(self.sys.clone(), self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = NCPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(o.at(k, j)));
                }
                *m.at_mut(i, j) = self.sys.nf(&acc);
            }
        }
        Ok(m)
    }

    pub fn mm(&self, o: &NCMatrix) -> NCMatrix {
        self.mul(o).expect("compatible shapes")
    }

    /// Transpose with entrywise star (graded signs handled by star itself).
    pub fn dagger(&self) -> NCMatrix {
        let mut m = NCMatrix::zero(self.sys.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.sys.star(self.at(i, j));
            }
        }
        m
    }

    /// Entrywise exterior differential.
    pub fn d(&self) -> Result<NCMatrix, MatError> {
        let mut m = self.clone();
        for a in m.entries.iter_mut() {
            *a = self.sys.differential(a)?;
        }
        Ok(m)
    }

    pub fn trace(&self) -> NCPoly {
        assert_eq!(self.rows, self.cols);
        let mut acc = NCPoly::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        self.sys.nf(&acc)
    }

    pub fn eq(&self, o: &NCMatrix) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.sub(o).is_zero()
    }

    /// Verify p^2 = p = p^dagger; returns the residuals if it fails.
    pub fn check_projection(&self) -> Result<(), MatError> {
        if self.rows != self.cols {
            return Err(MatError::ShapeMismatch(self.rows, self.cols, self.cols, self.rows));
        }
        let idem = self.mm(self).sub(self);
        if !idem.is_zero() {
            return Err(MatError::NotAProjection("p^2 != p".into()));
        }
        if !self.dagger().sub(self).is_zero() {
            return Err(MatError::NotAProjection("p != p^dagger".into()));
        }
        Ok(())
    }

    /// Curvature of the Grassmann connection: F0 = p dp dp.
    pub fn grassmann_curvature(&self) -> Result<NCMatrix, MatError> {
        self.check_projection()?;
        let dp = self.d()?;
        Ok(self.mm(&dp).mm(&dp))
    }

    /// Bianchi identity for the Grassmann connection: on each basis column
    /// xi_j = p e_j the composition p d(F0 xi_j) equals F0 p d(xi_j).
    pub fn bianchi_check(&self) -> Result<bool, MatError> {
        let f0 = self.grassmann_curvature()?;
        for j in 0..self.cols {
            let xi = self.column(j);
            let lhs = self.mm(&f0.mm(&xi).d()?);
            let rhs = f0.mm(&self.mm(&xi.d()?));
            if !lhs.eq(&rhs) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn column(&self, j: usize) -> NCMatrix {
        let mut m = NCMatrix::zero(self.sys.clone(), self.rows, 1);
        for i in 0..self.rows {
            *m.at_mut(i, 0) = self.at(i, j).clone();
        }
        m
    }

    /// Hermitian pairing of column vectors: <eta, xi> = sum_j eta_j^* xi_j.
    pub fn pairing(eta: &NCMatrix, xi: &NCMatrix) -> NCPoly {
        assert_eq!(eta.cols, 1);
        assert_eq!(xi.cols, 1);
        assert_eq!(eta.rows, xi.rows);
        let sys = &eta.sys;
        let mut acc = NCPoly::zero();
        for i in 0..eta.rows {
            acc = acc.add(&sys.star(eta.at(i, 0)).mul(xi.at(i, 0)));
        }
        sys.nf(&acc)
    }

    /// Common form degree of all monomials, if homogeneous.
    pub fn form_degree(&self) -> Option<u64> {
        let mut deg = None;
        for e in &self.entries {
            for w in e.terms.keys() {
                let d = self.sys.degree(w);
                match deg {
                    None => deg = Some(d),
                    Some(x) if x != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub fn pretty(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push_str(&format!("[{},{}] {}\n", i, j, self.sys.poly_string(self.at(i, j))));
            }
        }
        s
    }
}
