//! Matrices over the ring of dual numbers `R[t]/(t²)`.

use crate::matrixdga::MatrixForm;

/// `base + t·tangent` with `t² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrder {
    pub base: MatrixForm,
    pub tangent: MatrixForm,
}

impl FirstOrder {
    pub fn new(base: MatrixForm, tangent: MatrixForm) -> Self {
        FirstOrder { base, tangent }
    }

    /// A `t`-independent matrix.
    pub fn constant(base: MatrixForm) -> Self {
        let tangent = base.map(|e| crate::algebra::Element::zero(e.presentation()));
        FirstOrder { base, tangent }
    }

    pub fn add(&self, o: &FirstOrder) -> FirstOrder {
        FirstOrder { base: self.base.add(&o.base), tangent: self.tangent.add(&o.tangent) }
    }

    /// The product truncated at first order: the `t²` term is dropped.
    pub fn matmul(&self, o: &FirstOrder) -> FirstOrder {
        FirstOrder {
            base: self.base.matmul(&o.base),
            tangent: self.base.matmul(&o.tangent).add(&self.tangent.matmul(&o.base)),
        }
    }

    /// Entrywise differential; `t` is a constant.
    pub fn d(&self) -> FirstOrder {
        FirstOrder { base: self.base.d(), tangent: self.tangent.d() }
    }

    /// Conjugation `X ↦ AXB` by `t`-independent matrices.
    pub fn sandwich(&self, a: &MatrixForm, b: &MatrixForm) -> FirstOrder {
        FirstOrder { base: a.matmul(&self.base).matmul(b), tangent: a.matmul(&self.tangent).matmul(b) }
    }

    /// Curvature `dA + A²` of a first-order connection form.
    pub fn curvature(&self) -> FirstOrder {
        self.d().add(&self.matmul(self))
    }
}
