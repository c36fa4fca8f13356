//! First-order deformations `ω + εη` of integrable one-forms.
//!
//! The integrability condition linearizes to `ω∧dη + dω∧η = 0`. For a form
//! with integrating factor `F` there is also the relative cohomology equation
//! `(F dη − dF∧η)∧ω = 0`. Both are linear in `η`, so their solutions of a
//! given degree are computed as exact kernels over the monomial basis.

mod dicritical;
mod perturbation;
mod subspace;
mod verify;

pub use dicritical::{dicritical_classify, dicritical_decompose, different_degree_solutions, DicriticalClass};
pub use perturbation::{eigen_perturbation_space, param_perturbation_space, slot_perturbation_space};
pub use subspace::SubspaceBasis;
pub use verify::{
    verify_coro1, verify_decomposition, verify_forward_implication, DecompositionVerdict, DeformationReport,
    ForwardCheck, Hypotheses,
};

use crate::error::{ensure_dim, Error, Result};
use crate::exactalg::{Poly, Scalar};
use crate::extcalc::{differential, Form, FormBasis};
use crate::foliations::{integrating_factor, FoliationSpec};
use crate::linalg::Matrix;

/// `ω∧dη + dω∧η`.
pub fn deform_operator(omega: &Form, eta: &Form) -> Result<Form> {
    omega.expect_arity(1)?;
    eta.expect_arity(1)?;
    ensure_dim(omega.dim(), eta.dim())?;
    Ok(&omega.wedge(&eta.d())? + &omega.d().wedge(eta)?)
}

/// `(F dη − dF∧η)∧ω`, i.e. `F² d(η/F)∧ω`.
pub fn relcohom_operator(omega: &Form, f: &Poly, eta: &Form) -> Result<Form> {
    omega.expect_arity(1)?;
    eta.expect_arity(1)?;
    ensure_dim(omega.dim(), eta.dim())?;
    ensure_dim(omega.dim(), f.dim())?;
    let inner = &eta.d().mul_poly(f) - &differential(f).wedge(eta)?;
    inner.wedge(omega)
}

#[derive(Clone, Debug)]
pub enum KernelOperator {
    Deform(Form),
    RelCohom(Form, Poly),
}

impl KernelOperator {
    /// The relative cohomology operator with the canonical integrating factor.
    pub fn relcohom_for(spec: &FoliationSpec) -> Result<Self> {
        let (f, _) = integrating_factor(spec)?;
        Ok(KernelOperator::RelCohom(spec.realize()?, f))
    }

    pub fn omega(&self) -> &Form {
        match self {
            KernelOperator::Deform(w) | KernelOperator::RelCohom(w, _) => w,
        }
    }

    pub fn apply(&self, eta: &Form) -> Result<Form> {
        match self {
            KernelOperator::Deform(w) => deform_operator(w, eta),
            KernelOperator::RelCohom(w, f) => relcohom_operator(w, f, eta),
        }
    }

    /// Total degree of the image of a degree-`e` one-form.
    fn image_degree(&self, e: u32) -> Result<u32> {
        let w = form_degree(self.omega())?;
        Ok(match self {
            KernelOperator::Deform(_) => w + e,
            KernelOperator::RelCohom(_, f) => {
                let d = f
                    .homogeneous_degree()
                    .degree()
                    .ok_or_else(|| Error::NotHomogeneous { what: "integrating factor".into() })?;
                d + e + w
            }
        })
    }
}

pub(crate) fn form_degree(omega: &Form) -> Result<u32> {
    omega
        .homogeneous_degree()
        .degree()
        .ok_or_else(|| Error::NotHomogeneous { what: "nonzero one-form".into() })
}

/// Solutions `η` of total degree `e`, optionally modulo `C·ω` (which needs
/// `deg ω = e`).
pub fn kernel_space(op: &KernelOperator, e: u32, quotient_by_omega: bool) -> Result<SubspaceBasis> {
    if e < 1 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    let omega = op.omega();
    let w = form_degree(omega)?;
    if quotient_by_omega && w != e {
        return Err(Error::Precondition(format!(
            "quotient by ω needs e = deg ω = {w}, got {e}"
        )));
    }
    let n = omega.dim();
    let domain = FormBasis::new(n, 1, e);
    let codomain = FormBasis::new(n, 3, op.image_degree(e)?);
    let columns = (0..domain.len())
        .map(|j| codomain.coordinates(&op.apply(&domain.element(j))?))
        .collect::<Result<Vec<_>>>()?;
    let kernel = linear_kernel(&domain, codomain.len(), &columns);
    if quotient_by_omega {
        kernel.quotient_by(omega)
    } else {
        Ok(kernel)
    }
}

/// Kernel of the linear map sending `domain.element(j)` to `columns[j]`.
pub(crate) fn linear_kernel(domain: &FormBasis, rows: usize, columns: &[Vec<Scalar>]) -> SubspaceBasis {
    let mut m = Matrix::zeros(rows, domain.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !num_traits::Zero::is_zero(v) {
                m.set(i, j, v.clone());
            }
        }
    }
    let null = m.nullspace();
    let generators = null.iter().map(|v| domain.form(v)).collect();
    SubspaceBasis::from_vectors(domain.clone(), &null, generators)
}
