//! Randomized identity suites over seeded homogeneous instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactalg::Scalar;
use crate::extcalc::{cartan_check, differential, radial_contraction, VectorField};
use crate::foliations::{integrating_factor, is_integrable, mu_of};
use crate::sampling::{homogeneous_form, homogeneous_poly, logarithmic_spec, rational_spec};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checks: Vec<(&'static str, usize, usize)>,
}

impl Tally {
    fn record(&mut self, name: &'static str, ok: bool) {
        let entry = match self.checks.iter_mut().find(|(n, _, _)| *n == name) {
            Some(e) => e,
            None => {
                self.checks.push((name, 0, 0));
                self.checks.last_mut().unwrap()
            }
        };
        entry.1 += 1;
        if !ok {
            entry.2 += 1;
        }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.2).sum()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0 && !self.checks.is_empty()
    }
}

fn sign(k: usize) -> Scalar {
    Scalar::from_int(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// Leibniz, `d∘d = 0`, the anti-derivation rule for `i_X`, Euler and the
/// homogeneous Cartan formula, on `instances` random instances with
/// `n ∈ {3, 4}` and total degrees at most 6.
pub fn calculus_identities(seed: u64, instances: usize) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    for _ in 0..instances {
        let n = rng.gen_range(3..=4);
        let k = rng.gen_range(0..=2usize);
        let l = rng.gen_range(0..=1usize);
        let ea = rng.gen_range(k.max(1) as u32..=3);
        let eb = rng.gen_range(l.max(1) as u32..=3);
        let a = homogeneous_form(&mut rng, n, k, ea, 3);
        let b = homogeneous_form(&mut rng, n, l, eb, 3);

        let lhs = a.wedge(&b)?.d();
        let rhs = &a.d().wedge(&b)? + &a.wedge(&b.d())?.scale(&sign(k));
        tally.record("leibniz", lhs == rhs);

        let e = rng.gen_range(k.max(1) as u32..=6);
        let c = homogeneous_form(&mut rng, n, k, e, 3);
        tally.record("d_squared", c.d().d().is_zero());

        if k >= 1 {
            let x = VectorField::new((0..n).map(|_| homogeneous_poly(&mut rng, n, 1, 2)).collect())?;
            let b1 = homogeneous_form(&mut rng, n, 1, 2, 3);
            let lhs = a.wedge(&b1)?.contract(&x)?;
            let rhs = &a.contract(&x)?.wedge(&b1)? + &a.wedge(&b1.contract(&x)?)?.scale(&sign(k));
            tally.record("antiderivation", lhs == rhs);
        }

        let h = homogeneous_poly(&mut rng, n, e, 4);
        let euler = radial_contraction(&differential(&h))?;
        tally.record("euler", euler == h.scale(&Scalar::from_int(e as i64)));

        tally.record("cartan", cartan_check(&c, e)?);
    }
    Ok(tally)
}

/// `F dω = dF∧ω`, integrability and `i_R(ω) = μF` on random rational and
/// logarithmic specs with `n = 3` and parameter degrees at most 3.
pub fn integrating_factor_identities(seed: u64, instances: usize) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    for i in 0..instances {
        let spec = if i % 2 == 0 {
            rational_spec(&mut rng, 3, 3)
        } else {
            let count = rng.gen_range(2..=3);
            logarithmic_spec(&mut rng, 3, count, 3)
        };
        let (f, ok) = integrating_factor(&spec)?;
        tally.record("integrating_factor", ok);
        let omega = spec.realize()?;
        tally.record("integrable", is_integrable(&omega)?);
        let mu = mu_of(&spec)?;
        tally.record("radial_contraction", radial_contraction(&omega)? == f.scale(&mu));
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let t = calculus_identities(1, 40).unwrap();
        assert!(t.all_passed(), "{t:?}");
        assert_eq!(t.checks.iter().find(|c| c.0 == "euler").unwrap().1, 40);
        assert!(integrating_factor_identities(2, 10).unwrap().all_passed());
    }

    #[test]
    fn deterministic() {
        assert_eq!(calculus_identities(5, 10).unwrap(), calculus_identities(5, 10).unwrap());
    }
}
