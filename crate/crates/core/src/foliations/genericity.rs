//! Seeded probabilistic genericity checks.
//!
//! The eigenvalue condition is checked exactly. Normal crossings is sampled:
//!
//! 1. *Reducedness.* `F = Π f_i` restricted to a random affine line must be
//!    squarefree for at least one trial. A repeated factor of `F` makes every
//!    restriction non-squarefree, so failure across all trials is reported as
//!    a violation.
//! 2. *Transversality.* For every stratum `S` (a set of at most three
//!    components, `|S| ≤ n − 1`) the forms `f_i, i ∈ S` are pulled back along a
//!    random linear map `C^{|S|+1} → C^n`, which cuts the stratum down to
//!    finitely many projective points. Rational points among them are found
//!    exactly (iterated resultants plus rational roots), and at each point the
//!    gradients of all components through it must be linearly independent.
//!
//! Strata whose sampled points are never rational leave the verdict
//! inconclusive rather than guessed.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{eigenvalues_ok, mu_of, FoliationSpec};
use crate::error::{Error, Result};
use crate::exactalg::{Monomial, Poly, Scalar};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Generic,
    NotGeneric,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Generic => "generic",
            Verdict::NotGeneric => "not_generic",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub normal_crossings_ok: bool,
    pub eigenvalues_ok: bool,
    pub mu: Scalar,
    pub mu_nonzero: bool,
    pub trials_used: u32,
    pub verdict: Verdict,
    /// Number of rational intersection points at which transversality was tested.
    pub sampled_points: usize,
    /// Strata (0-based component indices) for which no rational point was found.
    pub unsampled_strata: Vec<Vec<usize>>,
    /// Human-readable descriptions of violations found.
    pub violations: Vec<String>,
}

/// Largest |integer| whose divisors are enumerated for rational roots.
const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000;
const COORD_RANGE: i64 = 6;

pub fn genericity_check(spec: &FoliationSpec, trials: u32, seed: u64) -> Result<GenericityReport> {
    if trials < 1 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    let (factors, _) = spec.logarithmic_data()?;
    let eig_ok = eigenvalues_ok(spec)?;
    let mu = mu_of(spec)?;
    let mu_nonzero = !mu.is_zero();

    let n = spec.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();

    let product = super::product(&factors, n);
    let expected_degree = product.total_degree().unwrap_or(0) as usize;
    let mut reduced = false;
    for _ in 0..trials {
        let line = restrict_to_line(&product, &random_vector(&mut rng, n), &random_vector(&mut rng, n));
        if degree(&line) == Some(expected_degree) && is_squarefree(&line) {
            reduced = true;
        }
    }
    if !reduced {
        violations.push("divisor is not reduced (repeated or proportional components)".to_string());
    }

    let mut sampled_points = 0;
    let mut unsampled = Vec::new();
    let max_stratum = 3.min(n.saturating_sub(1));
    for size in 1..=max_stratum {
        for stratum in subsets(factors.len(), size) {
            let mut hit = false;
            for _ in 0..trials {
                let map = random_linear_map(&mut rng, n, size + 1);
                let pulled: Vec<Poly> = stratum
                    .iter()
                    .map(|&i| factors[i].substitute(&map))
                    .collect::<Result<_>>()?;
                let Some(points) = projective_zeros(&pulled) else {
                    continue;
                };
                for u in points {
                    let x: Vec<Scalar> = map.iter().map(|l| l.evaluate(&u)).collect::<Result<_>>()?;
                    if x.iter().all(Zero::is_zero) {
                        continue;
                    }
                    hit = true;
                    sampled_points += 1;
                    if let Some(msg) = transversality_violation(&factors, &x)? {
                        violations.push(msg);
                    }
                }
            }
            if !hit {
                unsampled.push(stratum);
            }
        }
    }
    violations.sort();
    violations.dedup();

    let nc_ok = violations.is_empty() && unsampled.is_empty();
    let verdict = if !violations.is_empty() || !eig_ok || !mu_nonzero {
        Verdict::NotGeneric
    } else if nc_ok {
        Verdict::Generic
    } else {
        Verdict::Inconclusive
    };
    Ok(GenericityReport {
        normal_crossings_ok: nc_ok,
        eigenvalues_ok: eig_ok,
        mu,
        mu_nonzero,
        trials_used: trials,
        verdict,
        sampled_points,
        unsampled_strata: unsampled,
        violations,
    })
}

fn transversality_violation(factors: &[Poly], x: &[Scalar]) -> Result<Option<String>> {
    let mut through = Vec::new();
    let mut gradients = Vec::new();
    for (j, f) in factors.iter().enumerate() {
        if !f.evaluate(x)?.is_zero() {
            continue;
        }
        through.push(j);
        let grad = (0..f.dim())
            .map(|i| f.partial_derivative(i)?.evaluate(x))
            .collect::<Result<Vec<_>>>()?;
        gradients.push(grad);
    }
    let rank = Matrix::from_rows(x.len(), gradients).rank();
    if rank == through.len() {
        return Ok(None);
    }
    let point: Vec<String> = normalize(x.to_vec()).iter().map(ToString::to_string).collect();
    let comps: Vec<String> = through.iter().map(|j| format!("f{}", j + 1)).collect();
    Ok(Some(format!(
        "components {{{}}} are not transversal at [{}]",
        comps.join(","),
        point.join(":")
    )))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| Scalar::from_int(rng.gen_range(-COORD_RANGE..=COORD_RANGE))).collect()
}

/// Random injective linear map `C^k → C^n`, as `n` linear forms in `k` variables.
fn random_linear_map(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<Poly> {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n).map(|_| random_vector(rng, k)).collect();
        if Matrix::from_rows(k, rows.clone()).rank() < k {
            continue;
        }
        return rows
            .into_iter()
            .map(|r| {
                Poly::from_terms(
                    k,
                    r.into_iter().enumerate().map(|(j, c)| (Monomial::var(k, j), c)),
                )
            })
            .collect();
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials, coefficients low to high, no trailing zeros.

type UPoly = Vec<Scalar>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &UPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

fn from_univariate(p: &Poly) -> UPoly {
    assert_eq!(p.dim(), 1);
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exps()[0] as usize;
        if out.len() <= e {
            out.resize(e + 1, Scalar::zero());
        }
        out[e] = c.clone();
    }
    trim(out)
}

fn restrict_to_line(f: &Poly, base: &[Scalar], dir: &[Scalar]) -> UPoly {
    let images: Vec<Poly> = base
        .iter()
        .zip(dir)
        .map(|(b, d)| {
            Poly::from_terms(1, [(Monomial::one(1), b.clone()), (Monomial::var(1, 0), d.clone())])
        })
        .collect();
    from_univariate(&f.substitute(&images).expect("line has ambient dimension"))
}

fn derivative(p: &UPoly) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Scalar::from_int(i as i64))
            .collect(),
    )
}

fn rem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = degree(b).expect("division by zero polynomial");
    let inv = b[db].inv().unwrap();
    let mut r = a.clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] * &inv;
        for i in 0..=db {
            let v = &r[dr - db + i] - &(&f * &b[i]);
            r[dr - db + i] = v;
        }
        r = trim(r);
    }
    r
}

fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let inv = a[d].inv().unwrap();
        a = a.iter().map(|c| c * &inv).collect();
    }
    a
}

fn is_squarefree(p: &UPoly) -> bool {
    degree(&gcd(p, &derivative(p))) == Some(0)
}

fn eval(p: &UPoly, t: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * t) + c)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&v| v <= ROOT_SEARCH_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots, or `None` when coefficients are not rational or
/// too large to search.
fn rational_roots(p: &UPoly) -> Option<Vec<Scalar>> {
    if p.is_empty() {
        return None;
    }
    if !p.iter().all(Scalar::is_rational) {
        return None;
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c.re() * num_rational::BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
    if shift > 0 {
        roots.push(Scalar::zero());
    }
    let ints = &ints[shift..];
    if ints.len() <= 1 {
        return Some(roots);
    }
    let numerators = divisors(&ints[0])?;
    let denominators = divisors(ints.last().unwrap())?;
    let mut seen = BTreeSet::new();
    for q in &denominators {
        for p_ in &numerators {
            for sign in [1i64, -1] {
                let cand = Scalar::rational(num_rational::BigRational::new(p_ * sign, q.clone()));
                let key = cand.to_string();
                if seen.contains(&key) {
                    continue;
                }
                seen.insert(key);
                if eval(p, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

// ---------------------------------------------------------------------------
// Projective zeros of k homogeneous polynomials in k+1 variables.

/// Coefficients of `p` as a polynomial in its last variable, each living in
/// the first `dim - 1` variables.
fn coefficients_in_last(p: &Poly) -> Vec<Poly> {
    let dim = p.dim();
    let mut out: Vec<Poly> = Vec::new();
    for (m, c) in p.terms() {
        let (&e, rest) = m.exps().split_last().unwrap();
        let e = e as usize;
        while out.len() <= e {
            out.push(Poly::zero(dim - 1));
        }
        out[e] = &out[e] + &Poly::term(dim - 1, Monomial::new(rest.to_vec()), c.clone());
    }
    out
}

/// Sylvester resultant with respect to the last variable (fraction-free
/// determinant with exact polynomial division).
fn resultant_last(a: &Poly, b: &Poly) -> Poly {
    let ca = coefficients_in_last(a);
    let cb = coefficients_in_last(b);
    let dim = a.dim() - 1;
    let (p, q) = (ca.len().saturating_sub(1), cb.len().saturating_sub(1));
    let size = p + q;
    if size == 0 {
        return Poly::one(dim);
    }
    let mut m = vec![vec![Poly::zero(dim); size]; size];
    for row in 0..q {
        for (i, c) in ca.iter().rev().enumerate() {
            m[row][row + i] = c.clone();
        }
    }
    for row in 0..p {
        for (i, c) in cb.iter().rev().enumerate() {
            m[q + row][row + i] = c.clone();
        }
    }
    let mut negate = false;
    let mut prev = Poly::one(dim);
    for k in 0..size {
        let Some(piv) = (k..size).find(|&i| !m[i][k].is_zero()) else {
            return Poly::zero(dim);
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_divide(&prev)
                    .expect("same dimension")
                    .expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero(dim);
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

fn normalize(mut v: Vec<Scalar>) -> Vec<Scalar> {
    if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
        let inv = lead.inv().unwrap();
        for c in &mut v {
            *c = &*c * &inv;
        }
    }
    v
}

/// Rational projective zeros, normalized so the first nonzero coordinate is 1.
/// `None` when the system is not zero-dimensional or a root search gives up.
fn projective_zeros(polys: &[Poly]) -> Option<Vec<Vec<Scalar>>> {
    let dim = polys.first()?.dim();
    if dim < 2 || polys.iter().any(Poly::is_zero) {
        return None;
    }
    let mut points: Vec<Vec<Scalar>> = Vec::new();
    let mut last_axis = vec![Scalar::zero(); dim];
    last_axis[dim - 1] = Scalar::one();
    if polys.iter().all(|p| p.evaluate(&last_axis).unwrap().is_zero()) {
        points.push(last_axis);
    }

    let bases: Vec<Vec<Scalar>> = if dim == 2 {
        vec![vec![Scalar::one()]]
    } else {
        let pivot = (0..polys.len()).max_by_key(|&i| coefficients_in_last(&polys[i]).len())?;
        if coefficients_in_last(&polys[pivot]).len() < 2 {
            return None;
        }
        let eliminated: Vec<Poly> = (0..polys.len())
            .filter(|&i| i != pivot)
            .map(|i| resultant_last(&polys[pivot], &polys[i]))
            .collect();
        if eliminated.is_empty() {
            return None;
        }
        projective_zeros(&eliminated)?
    };

    for base in bases {
        let mut common: Option<UPoly> = None;
        for p in polys {
            let images: Vec<Poly> = base
                .iter()
                .map(|c| Poly::constant(1, c.clone()))
                .chain(std::iter::once(Poly::var(1, 0)))
                .collect();
            let u = from_univariate(&p.substitute(&images).ok()?);
            common = Some(match common {
                None => u,
                Some(g) => gcd(&g, &u),
            });
        }
        let common = common?;
        if common.is_empty() {
            return None;
        }
        for t in rational_roots(&common)? {
            let mut pt = base.clone();
            pt.push(t);
            points.push(normalize(pt));
        }
    }
    points.sort_by_key(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>());
    points.dedup();
    Some(points)
}
