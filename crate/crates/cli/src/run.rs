use std::time::Instant;

use folia_core::deformation::{
    dicritical_classify, different_degree_solutions, kernel_space, param_perturbation_space,
    verify_coro1, verify_decomposition, verify_forward_implication, DecompositionVerdict, DicriticalClass,
    Hypotheses, KernelOperator,
};
use folia_core::exactalg::{Poly, Scalar};
use folia_core::extcalc::{radial_contraction, Form};
use folia_core::foliations::{
    decompose_with_factor, genericity_check, integrating_factor, integration_lemma_decompose, is_integrable,
    mu_closed_form, mu_of, FoliationSpec, Verdict,
};
use folia_core::projective::{
    descends, projective_deformation_space, projectivize, projectivized_log_parameters, verify_affine_def_lemma,
};
use folia_core::selfcheck::{calculus_identities, integrating_factor_identities, Tally};
use folia_core::Error;

use crate::input::render_foliation;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Rational,
    Logarithmic,
    Exact,
    Coro1,
    AffineDef,
    Dicritical,
    Identities,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Rational => "rational",
            Theorem::Logarithmic => "logarithmic",
            Theorem::Exact => "exact",
            Theorem::Coro1 => "coro1",
            Theorem::AffineDef => "affine-def",
            Theorem::Dicritical => "dicritical",
            Theorem::Identities => "identities",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Command {
    Check {
        spec: FoliationSpec,
        seed: Option<u64>,
        trials: u32,
    },
    Deform {
        spec: FoliationSpec,
        degree: Option<u32>,
        quotient: Option<bool>,
    },
    RelCohom {
        spec: FoliationSpec,
        degree: Option<u32>,
    },
    Projectivize {
        spec: FoliationSpec,
    },
    Verify {
        theorem: Theorem,
        spec: Option<FoliationSpec>,
        eta: Option<Form>,
        factors: Vec<Poly>,
        mult: Vec<u32>,
        seed: Option<u64>,
        trials: u32,
    },
    Decompose {
        form: Form,
        factors: Vec<Poly>,
        mult: Vec<u32>,
        factor: Option<Poly>,
    },
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Check { .. } => "check".into(),
            Command::Deform { .. } => "deform".into(),
            Command::RelCohom { .. } => "relcohom".into(),
            Command::Projectivize { .. } => "projectivize".into(),
            Command::Verify { theorem, .. } => format!("verify {}", theorem.name()),
            Command::Decompose { .. } => "decompose".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Invocation {
    pub vars: Vec<String>,
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Failure = 1,
    InputError = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub status: Status,
}

const DEFAULT_IDENTITY_INSTANCES: u32 = 500;

pub fn run(inv: &Invocation) -> Outcome {
    let start = Instant::now();
    let mut report = Report::new();
    report.field("command", inv.command.name());
    report.field("vars", inv.vars.join(","));
    let status = match dispatch(inv, &mut report) {
        Ok(true) => Status::Success,
        Ok(false) => Status::Failure,
        Err(e) => {
            report.field("error", &e);
            match e {
                Error::Internal(_) => Status::Failure,
                _ => Status::InputError,
            }
        }
    };
    report.field("status", status.code());
    report.set_elapsed(start.elapsed());
    Outcome { report, status }
}

fn input_error(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

fn dispatch(inv: &Invocation, r: &mut Report) -> Result<bool, Error> {
    let vars = &inv.vars;
    match &inv.command {
        Command::Check { spec, seed, trials } => check(spec, *seed, *trials, vars, r),
        Command::Deform { spec, degree, quotient } => deform(spec, *degree, *quotient, vars, r),
        Command::RelCohom { spec, degree } => relcohom(spec, *degree, vars, r),
        Command::Projectivize { spec } => projectivize_cmd(spec, vars, r),
        Command::Verify {
            theorem,
            spec,
            eta,
            factors,
            mult,
            seed,
            trials,
        } => {
            if *theorem == Theorem::Identities {
                return identities(*seed, *trials, r);
            }
            let spec = spec
                .as_ref()
                .ok_or_else(|| input_error(format!("verify {} needs a foliation", theorem.name())))?;
            r.field("foliation", render_foliation(spec, vars));
            match theorem {
                Theorem::Rational | Theorem::Logarithmic => decomposition(*theorem, spec, *seed, *trials, vars, r),
                Theorem::Exact => exact(spec, vars, r),
                Theorem::Coro1 => coro1(spec, r),
                Theorem::AffineDef => affine_def(spec, r),
                Theorem::Dicritical => dicritical(spec, eta.as_ref(), factors, mult, vars, r),
                Theorem::Identities => unreachable!(),
            }
        }
        Command::Decompose {
            form,
            factors,
            mult,
            factor,
        } => decompose(form, factors, mult, factor.as_ref(), vars, r),
    }
}

fn render_forms(forms: &[Form], vars: &[String]) -> Vec<String> {
    forms.iter().map(|f| f.render(vars)).collect()
}

fn seed_required(seed: Option<u64>, what: &str) -> Result<u64, Error> {
    seed.ok_or_else(|| input_error(format!("{what} runs a probabilistic check; pass --seed")))
}

fn has_parameters(spec: &FoliationSpec) -> bool {
    matches!(spec, FoliationSpec::AffineRational { .. } | FoliationSpec::AffineLogarithmic { .. })
}

fn check(spec: &FoliationSpec, seed: Option<u64>, trials: u32, vars: &[String], r: &mut Report) -> Result<bool, Error> {
    let omega = spec.realize()?;
    r.field("foliation", render_foliation(spec, vars));
    r.field("kind", spec.kind());
    r.field("omega", omega.render(vars));
    r.field("degree", spec.degree()?);
    let integrable = is_integrable(&omega)?;
    r.field("integrable", integrable);
    r.field("descends", descends(&omega)?);
    if !has_parameters(spec) {
        return Ok(integrable);
    }
    let seed = seed_required(seed, "check")?;
    let (f, verified) = integrating_factor(spec)?;
    r.field("integrating_factor", f.render(vars));
    r.field("integrating_factor_verified", verified);
    r.field("mu", mu_of(spec)?);
    r.field("mu_closed_form", mu_closed_form(spec)?);
    let g = genericity_check(spec, trials, seed)?;
    r.field("seed", seed);
    r.field("trials", g.trials_used);
    r.field("eigenvalues_ok", g.eigenvalues_ok);
    r.field("mu_nonzero", g.mu_nonzero);
    r.field("normal_crossings_ok", g.normal_crossings_ok);
    r.field("sampled_points", g.sampled_points);
    r.list(
        "unsampled_strata",
        g.unsampled_strata.iter().map(|s| {
            let names: Vec<String> = s.iter().map(|i| format!("f{}", i + 1)).collect();
            format!("{{{}}}", names.join(","))
        }),
    );
    r.list("violations", &g.violations);
    r.field("verdict", g.verdict.as_str());
    Ok(integrable && verified && g.verdict != Verdict::NotGeneric)
}

fn deform(
    spec: &FoliationSpec,
    degree: Option<u32>,
    quotient: Option<bool>,
    vars: &[String],
    r: &mut Report,
) -> Result<bool, Error> {
    let omega = spec.realize()?;
    let w = spec.degree()?;
    let e = degree.unwrap_or(w);
    let quotient = quotient.unwrap_or(e == w);
    r.field("foliation", render_foliation(spec, vars));
    r.field("omega", omega.render(vars));
    r.field("degree", e);
    r.field("quotient_by_omega", quotient);
    let space = kernel_space(&KernelOperator::Deform(omega), e, quotient)?;
    r.field("domain_dim", space.monomial_basis().len());
    r.field("dim", space.dim());
    r.list("basis", render_forms(&space.forms(), vars));
    Ok(true)
}

fn relcohom(spec: &FoliationSpec, degree: Option<u32>, vars: &[String], r: &mut Report) -> Result<bool, Error> {
    if !has_parameters(spec) {
        return Err(Error::Precondition(format!(
            "{} foliation has no canonical integrating factor",
            spec.kind()
        )));
    }
    let op = KernelOperator::relcohom_for(spec)?;
    let e = degree.unwrap_or(spec.degree()?);
    r.field("foliation", render_foliation(spec, vars));
    if let KernelOperator::RelCohom(_, f) = &op {
        r.field("integrating_factor", f.render(vars));
    }
    r.field("degree", e);
    let space = kernel_space(&op, e, false)?;
    r.field("dim", space.dim());
    r.list("basis", render_forms(&space.forms(), vars));

    let s = spec.factors().len();
    let mut solutions = Vec::new();
    for skip in (0..s).rev() {
        let subset: Vec<usize> = (0..s).filter(|&i| i != skip).collect();
        let eta = different_degree_solutions(spec, &subset)?;
        let label: Vec<String> = subset.iter().map(|i| (i + 1).to_string()).collect();
        solutions.push(format!("J={{{}}}: {} (relcohom = 0)", label.join(","), eta.render(vars)));
    }
    r.list("different_degree_solutions", solutions);
    Ok(true)
}

fn extended_vars(vars: &[String]) -> Vec<String> {
    let mut out = vars.to_vec();
    let name = ["w", "t", "u", "v"]
        .iter()
        .map(|s| s.to_string())
        .find(|c| !vars.contains(c))
        .unwrap_or_else(|| format!("x{}", vars.len()));
    out.push(name);
    out
}

fn projectivize_cmd(spec: &FoliationSpec, vars: &[String], r: &mut Report) -> Result<bool, Error> {
    let omega = spec.realize()?;
    let e = spec.degree()?;
    let big = extended_vars(vars);
    let lifted = projectivize(&omega, e)?;
    r.field("foliation", render_foliation(spec, vars));
    r.field("projective_vars", big.join(","));
    r.field("degree", e + 1);
    r.field("form", lifted.render(&big));
    let ok = descends(&lifted)?;
    r.field("descends", ok);
    if !has_parameters(spec) {
        return Ok(ok);
    }
    let params = projectivized_log_parameters(spec)?;
    r.list("factors", params.factors.iter().map(|f| f.render(&big)));
    r.list("lambda", &params.lambda);
    r.field("parameters_verified", params.verified);
    r.field("mu_zero", params.mu_zero);
    r.field("eigenvalues_generic", params.eigenvalues_generic);
    Ok(ok && params.verified)
}

fn hypotheses_text(h: &Hypotheses) -> String {
    match h {
        Hypotheses::Unchecked => "unchecked".into(),
        Hypotheses::Satisfied => "satisfied".into(),
        Hypotheses::Inconclusive => "inconclusive".into(),
        Hypotheses::Outside(reasons) => format!("outside ({})", reasons.join("; ")),
    }
}

fn decomposition(
    theorem: Theorem,
    spec: &FoliationSpec,
    seed: Option<u64>,
    trials: u32,
    vars: &[String],
    r: &mut Report,
) -> Result<bool, Error> {
    let expected = if theorem == Theorem::Rational { "rational" } else { "logarithmic" };
    if spec.kind() != expected {
        return Err(input_error(format!(
            "verify {} needs a {expected} foliation, got {}",
            theorem.name(),
            spec.kind()
        )));
    }
    let seed = seed_required(seed, "verify")?;
    let report = verify_decomposition(spec, Some((trials, seed)))?;
    r.field("seed", seed);
    r.field("trials", trials);
    r.field("degree", report.degree);
    r.field("mu", mu_of(spec)?);
    r.field("dim_kernel", report.dim_kernel);
    r.field("dim_param", report.dim_param);
    r.field("dim_eigen", report.dim_eigen);
    r.field("dim_sum", report.dim_sum);
    r.field("generator_rank", report.generator_rank);
    r.field("hypotheses", hypotheses_text(&report.hypotheses));
    r.field("verdict", report.verdict);
    r.list("witnesses", render_forms(&report.witnesses, vars));
    r.list("kernel_basis", render_forms(&report.kernel.forms(), vars));
    Ok(report.verdict == DecompositionVerdict::DirectSumEqual && report.generator_rank == report.dim_sum)
}

fn exact(spec: &FoliationSpec, vars: &[String], r: &mut Report) -> Result<bool, Error> {
    let FoliationSpec::Exact { p } = spec else {
        return Err(input_error(format!("verify exact needs exact(P), got {}", spec.kind())));
    };
    let report = verify_decomposition(spec, None)?;
    r.field("degree", report.degree);
    r.field("dim_kernel", report.dim_kernel);
    r.field("dim_exact_perturbations", report.dim_param);
    r.field("verdict", report.verdict);
    r.list("kernel_basis", render_forms(&report.kernel.forms(), vars));
    let affine_ok = report.verdict == DecompositionVerdict::DirectSumEqual;

    // z dP − e P dz is the rational form r f₁df₂ − s f₂df₁ with (f₁, f₂) = (z, P), (r, s) = (1, e)
    let n = p.dim();
    let e = report.degree;
    let big = extended_vars(vars);
    let lifted = projectivize(&spec.realize()?, e)?;
    let pencil = FoliationSpec::rational(
        Poly::var(n + 1, n),
        p.extend_dim(n + 1),
        Scalar::from_int(1),
        Scalar::from_int(e as i64),
    )?;
    if pencil.realize()? != lifted {
        return Err(Error::Internal("projectivized dP is not z dP - e P dz".into()));
    }
    let projective = projective_deformation_space(&lifted, e + 1)?;
    let generators = param_perturbation_space(&pencil, None, true)?;
    let projective_ok = projective == generators;
    r.field("projective_vars", big.join(","));
    r.field("projective_form", lifted.render(&big));
    r.field("projective_degree", e + 1);
    r.field("dim_projective", projective.dim());
    r.field("dim_parameter_perturbations", generators.dim());
    r.field("projective_equal", projective_ok);
    Ok(affine_ok && projective_ok)
}

fn coro1(spec: &FoliationSpec, r: &mut Report) -> Result<bool, Error> {
    if !has_parameters(spec) {
        return Err(input_error("verify coro1 needs a rational or logarithmic foliation"));
    }
    let e = spec.degree()?;
    let equal = verify_coro1(spec)?;
    r.field("degree", e);
    r.field("kernels_equal", equal);
    let mut all = equal;
    let mut lines = Vec::new();
    for d in e.saturating_sub(1).max(1)..=e + 2 {
        let check = verify_forward_implication(spec, d)?;
        all &= check.all_vanish;
        lines.push(format!("degree {d}: dim {} all_vanish {}", check.dim_kernel, check.all_vanish));
    }
    r.list("forward_implication", lines);
    Ok(all)
}

fn affine_def(spec: &FoliationSpec, r: &mut Report) -> Result<bool, Error> {
    let omega = spec.realize()?;
    let e = spec.degree()?;
    let kernel = kernel_space(&KernelOperator::Deform(omega.clone()), e, false)?;
    let (mut forward, mut converse) = (0, 0);
    for eta in kernel.forms() {
        let check = verify_affine_def_lemma(&omega, &eta)?;
        forward += check.forward as usize;
        converse += check.converse as usize;
    }
    r.field("degree", e);
    r.field("kernel_elements", kernel.dim());
    r.field("forward_ok", forward);
    r.field("converse_ok", converse);
    Ok(forward == kernel.dim() && converse == kernel.dim())
}

fn dicritical(
    spec: &FoliationSpec,
    eta: Option<&Form>,
    factors: &[Poly],
    mult: &[u32],
    vars: &[String],
    r: &mut Report,
) -> Result<bool, Error> {
    let eta = eta.ok_or_else(|| input_error("verify dicritical needs --eta"))?;
    let omega = spec.realize()?;
    r.field("eta", eta.render(vars));
    match dicritical_classify(&omega, eta)? {
        DicriticalClass::Descends => {
            r.field("class", "descends");
            Ok(true)
        }
        DicriticalClass::IntegratingFactor {
            f,
            omega_over_f_closed,
            eta_over_f_closed,
        } => {
            r.field("class", "integrating_factor");
            r.field("integrating_factor", f.render(vars));
            r.field("omega_over_f_closed", omega_over_f_closed);
            r.field("eta_over_f_closed", eta_over_f_closed);
            let mut ok = omega_over_f_closed && eta_over_f_closed;
            if !factors.is_empty() {
                let mult = default_mult(factors, mult)?;
                let a = decompose_with_factor(&omega, &f, factors, &mult)?;
                let b = decompose_with_factor(eta, &f, factors, &mult)?;
                write_decomposition(r, "omega", &a, vars);
                write_decomposition(r, "eta", &b, vars);
                ok &= a.residual_ok && b.residual_ok;
            }
            Ok(ok)
        }
    }
}

fn default_mult(factors: &[Poly], mult: &[u32]) -> Result<Vec<u32>, Error> {
    if mult.is_empty() {
        return Ok(vec![1; factors.len()]);
    }
    if mult.len() != factors.len() || mult.contains(&0) {
        return Err(input_error("--mult needs one positive integer per factor"));
    }
    Ok(mult.to_vec())
}

fn write_decomposition(r: &mut Report, prefix: &str, d: &folia_core::foliations::Decomposition, vars: &[String]) {
    r.list(&format!("{prefix}_lambda"), &d.lambda);
    r.field(&format!("{prefix}_g"), d.g.render(vars));
    r.field(&format!("{prefix}_residual_ok"), d.residual_ok);
}

fn decompose(
    form: &Form,
    factors: &[Poly],
    mult: &[u32],
    factor: Option<&Poly>,
    vars: &[String],
    r: &mut Report,
) -> Result<bool, Error> {
    if factors.is_empty() {
        return Err(input_error("decompose needs --factors"));
    }
    let mult = default_mult(factors, mult)?;
    r.field("form", form.render(vars));
    r.list("factors", factors.iter().map(|f| f.render(vars)));
    r.list("mult", &mult);
    let d = match factor {
        Some(f) => {
            r.field("integrating_factor", f.render(vars));
            decompose_with_factor(form, f, factors, &mult)?
        }
        None => integration_lemma_decompose(form, factors, &mult)?,
    };
    r.field("radial_contraction", radial_contraction(form)?.render(vars));
    r.list("lambda", &d.lambda);
    r.field("g", d.g.render(vars));
    r.field("residual_ok", d.residual_ok);
    Ok(d.residual_ok)
}

fn write_tally(r: &mut Report, key: &str, t: &Tally) {
    r.list(
        key,
        t.checks.iter().map(|(name, n, failed)| format!("{name}: {} of {n} hold", n - failed)),
    );
}

fn identities(seed: Option<u64>, trials: u32, r: &mut Report) -> Result<bool, Error> {
    let seed = seed_required(seed, "verify identities")?;
    let instances = if trials == 0 { DEFAULT_IDENTITY_INSTANCES } else { trials } as usize;
    let calculus = calculus_identities(seed, instances)?;
    let factors = integrating_factor_identities(seed, (instances / 5).max(1))?;
    r.field("seed", seed);
    r.field("instances", instances);
    write_tally(r, "calculus", &calculus);
    write_tally(r, "integrating_factor", &factors);
    Ok(calculus.all_passed() && factors.all_passed())
}
