//! Mechanical checks of the decomposition theorems and of the relation
//! between the deformation and relative cohomology kernels.

use std::fmt;

use num_traits::Zero;

use crate::error::Result;
use crate::extcalc::Form;
use crate::foliations::{genericity_check, integrating_factor, FoliationSpec, Verdict};
use crate::linalg::Matrix;

use super::{
    eigen_perturbation_space, kernel_space, param_perturbation_space, relcohom_operator, KernelOperator,
    SubspaceBasis,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionVerdict {
    /// The kernel is the direct sum of the parameter and eigenvalue spaces.
    DirectSumEqual,
    /// The sum of the perturbation spaces is strictly smaller than the kernel.
    ProperSubspace,
    /// The perturbation spaces leave the kernel, or their sum is not direct.
    Mismatch,
}

impl fmt::Display for DecompositionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecompositionVerdict::DirectSumEqual => "direct_sum_equal",
            DecompositionVerdict::ProperSubspace => "proper_subspace",
            DecompositionVerdict::Mismatch => "mismatch",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypotheses {
    Unchecked,
    Satisfied,
    /// Sampling found no violation but did not reach every stratum.
    Inconclusive,
    Outside(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct DeformationReport {
    pub spec_kind: &'static str,
    pub degree: u32,
    pub dim_kernel: usize,
    pub dim_param: usize,
    pub dim_eigen: usize,
    pub dim_sum: usize,
    /// Rank of all raw perturbation generators, minus one for `ω`.
    pub generator_rank: usize,
    pub verdict: DecompositionVerdict,
    /// Kernel rows outside the sum of the perturbation spaces.
    pub witnesses: Vec<Form>,
    pub hypotheses: Hypotheses,
    pub kernel: SubspaceBasis,
    pub sum: SubspaceBasis,
}

/// Compares `D(ω, e)/Cω` with the sum of the parameter and eigenvalue
/// perturbation spaces (for an exact spec, with `{dQ}/C·dP`). When
/// `genericity` is `Some((trials, seed))` the hypotheses are sampled too.
pub fn verify_decomposition(spec: &FoliationSpec, genericity: Option<(u32, u64)>) -> Result<DeformationReport> {
    let omega = spec.realize()?;
    let e = spec.degree()?;
    let kernel = kernel_space(&KernelOperator::Deform(omega.clone()), e, true)?;
    let param = param_perturbation_space(spec, None, true)?;
    let eigen = match spec {
        FoliationSpec::Exact { .. } => SubspaceBasis::zero_like(&param),
        _ => eigen_perturbation_space(spec, true)?,
    };
    let sum = param.sum(&eigen)?;

    let basis = kernel.monomial_basis();
    let all_generators = param
        .generators()
        .iter()
        .chain(eigen.generators())
        .map(|g| basis.coordinates(g))
        .collect::<Result<Vec<_>>>()?;
    let generator_rank = Matrix::from_rows(basis.len(), all_generators).rank().saturating_sub(1);

    let direct = sum.dim() == param.dim() + eigen.dim();
    let verdict = if !sum.is_subspace_of(&kernel) {
        DecompositionVerdict::Mismatch
    } else if sum.dim() < kernel.dim() {
        DecompositionVerdict::ProperSubspace
    } else if direct {
        DecompositionVerdict::DirectSumEqual
    } else {
        DecompositionVerdict::Mismatch
    };
    let hypotheses = match genericity {
        Some((trials, seed)) if !matches!(spec, FoliationSpec::Exact { .. }) => check_hypotheses(spec, trials, seed)?,
        _ => Hypotheses::Unchecked,
    };
    Ok(DeformationReport {
        spec_kind: spec.kind(),
        degree: e,
        dim_kernel: kernel.dim(),
        dim_param: param.dim(),
        dim_eigen: eigen.dim(),
        dim_sum: sum.dim(),
        generator_rank,
        verdict,
        witnesses: kernel.outside(&sum),
        hypotheses,
        kernel,
        sum,
    })
}

fn check_hypotheses(spec: &FoliationSpec, trials: u32, seed: u64) -> Result<Hypotheses> {
    let report = genericity_check(spec, trials, seed)?;
    let mut reasons = report.violations.clone();
    if !report.eigenvalues_ok {
        reasons.push("eigenvalues not pairwise distinct and nonzero".into());
    }
    if !report.mu_nonzero {
        reasons.push("mu = 0".into());
    }
    let (_, lambda) = spec.logarithmic_data()?;
    let minus_mu = -&report.mu;
    if !minus_mu.is_zero() && lambda.contains(&minus_mu) {
        reasons.push(format!("-mu = {minus_mu} is an eigenvalue"));
    }
    Ok(if !reasons.is_empty() {
        Hypotheses::Outside(reasons)
    } else if report.verdict == Verdict::Inconclusive {
        Hypotheses::Inconclusive
    } else {
        Hypotheses::Satisfied
    })
}

/// Whether the deformation and relative cohomology kernels coincide in the
/// degree of `ω`.
pub fn verify_coro1(spec: &FoliationSpec) -> Result<bool> {
    let e = spec.degree()?;
    let deform = kernel_space(&KernelOperator::Deform(spec.realize()?), e, false)?;
    let relcohom = kernel_space(&KernelOperator::relcohom_for(spec)?, e, false)?;
    Ok(deform == relcohom)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardCheck {
    pub degree: u32,
    pub dim_kernel: usize,
    pub all_vanish: bool,
}

/// Every degree-`d` solution of the deformation equation also solves the
/// relative cohomology equation.
pub fn verify_forward_implication(spec: &FoliationSpec, degree: u32) -> Result<ForwardCheck> {
    let omega = spec.realize()?;
    let (f, _) = integrating_factor(spec)?;
    let kernel = kernel_space(&KernelOperator::Deform(omega.clone()), degree, false)?;
    let mut all_vanish = true;
    for eta in kernel.forms() {
        if !relcohom_operator(&omega, &f, &eta)?.is_zero() {
            all_vanish = false;
        }
    }
    Ok(ForwardCheck {
        degree,
        dim_kernel: kernel.dim(),
        all_vanish,
    })
}
