use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::Scalar;
use crate::extcalc::{Form, FormBasis};
use crate::linalg::{echelonize, Rref};

/// A subspace of homogeneous one-forms of a fixed total degree, stored as a
/// reduced echelon matrix over the monomial basis. Two values compare equal
/// exactly when they describe the same subspace (and the same quotient).
///
/// A quotient by `C·ω` is kept concretely: every row has a zero in the first
/// nonzero coordinate of `ω`, so the rows are canonical coset representatives.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    basis: FormBasis,
    rows: Rref,
    generators: Vec<Form>,
    quotient: Option<Form>,
}

impl PartialEq for SubspaceBasis {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.rows == other.rows && self.quotient_key() == other.quotient_key()
    }
}

impl Eq for SubspaceBasis {}

impl SubspaceBasis {
    /// Echelonized span of one-forms of total degree `degree` on `C^dim`.
    pub fn span(dim: usize, degree: u32, generators: Vec<Form>) -> Result<Self> {
        let basis = FormBasis::new(dim, 1, degree);
        let vectors = generators
            .iter()
            .map(|g| basis.coordinates(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vectors(basis, &vectors, generators))
    }

    pub(crate) fn from_vectors(basis: FormBasis, vectors: &[Vec<Scalar>], generators: Vec<Form>) -> Self {
        let rows = echelonize(basis.len(), vectors);
        SubspaceBasis {
            basis,
            rows,
            generators,
            quotient: None,
        }
    }

    /// The zero subspace with the same ambient space and quotient as `other`.
    pub fn zero_like(other: &SubspaceBasis) -> Self {
        SubspaceBasis {
            basis: other.basis.clone(),
            rows: echelonize(other.basis.len(), &[]),
            generators: Vec::new(),
            quotient: other.quotient.clone(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn degree(&self) -> u32 {
        self.basis.degree()
    }

    pub fn monomial_basis(&self) -> &FormBasis {
        &self.basis
    }

    pub fn rows(&self) -> &Rref {
        &self.rows
    }

    pub fn generators(&self) -> &[Form] {
        &self.generators
    }

    pub fn quotient(&self) -> Option<&Form> {
        self.quotient.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.rows.rank()
    }

    /// Rows as one-forms, in echelon order.
    pub fn forms(&self) -> Vec<Form> {
        self.rows.row_vectors().iter().map(|r| self.basis.form(r)).collect()
    }

    /// Membership (modulo `C·ω` for a quotient).
    pub fn contains(&self, form: &Form) -> Result<bool> {
        let mut v = self.basis.coordinates(form)?;
        if let Some(omega) = &self.quotient {
            let w = self.basis.coordinates(omega)?;
            reduce_by(&mut v, &normalized(&w));
        }
        Ok(self.rows.contains(&v))
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.basis == other.basis
            && self.quotient_key() == other.quotient_key()
            && self.rows.row_vectors().iter().all(|r| other.rows.contains(r))
    }

    /// The image of this space in `V / C·ω`; requires `ω` to lie in the space.
    pub fn quotient_by(&self, omega: &Form) -> Result<SubspaceBasis> {
        if self.quotient.is_some() {
            return Err(Error::Precondition("space is already a quotient".into()));
        }
        let w = self.basis.coordinates(omega).map_err(|_| {
            Error::Precondition(format!(
                "quotient by ω needs deg ω = {}",
                self.degree()
            ))
        })?;
        if w.iter().all(Zero::is_zero) {
            return Err(Error::Precondition("cannot take a quotient by the zero form".into()));
        }
        if !self.rows.contains(&w) {
            return Err(Error::Precondition("ω does not lie in the space".into()));
        }
        let w = normalized(&w);
        let reps: Vec<Vec<Scalar>> = self
            .rows
            .row_vectors()
            .into_iter()
            .map(|mut r| {
                reduce_by(&mut r, &w);
                r
            })
            .collect();
        Ok(SubspaceBasis {
            rows: echelonize(self.basis.len(), &reps),
            basis: self.basis.clone(),
            generators: self.generators.clone(),
            quotient: Some(omega.clone()),
        })
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.basis != other.basis {
            return Err(Error::Precondition("spaces live in different ambient spaces".into()));
        }
        if self.quotient_key() != other.quotient_key() {
            return Err(Error::Precondition("spaces are quotients by different forms".into()));
        }
        let mut vectors = self.rows.row_vectors();
        vectors.extend(other.rows.row_vectors());
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(SubspaceBasis {
            rows: echelonize(self.basis.len(), &vectors),
            basis: self.basis.clone(),
            generators,
            quotient: self.quotient.clone(),
        })
    }

    /// Rows of `self` that are not in `other`, as one-forms.
    pub fn outside(&self, other: &SubspaceBasis) -> Vec<Form> {
        self.rows
            .row_vectors()
            .iter()
            .filter(|r| !other.rows.contains(r))
            .map(|r| self.basis.form(r))
            .collect()
    }

    /// The quotient line, normalized so spaces quotiented by proportional
    /// forms compare equal.
    fn quotient_key(&self) -> Option<Vec<Scalar>> {
        let omega = self.quotient.as_ref()?;
        Some(normalized(&self.basis.coordinates(omega).expect("checked on construction")))
    }
}

fn normalized(w: &[Scalar]) -> Vec<Scalar> {
    let lead = w.iter().find(|c| !c.is_zero()).expect("nonzero vector");
    let inv = lead.inv().unwrap();
    w.iter().map(|c| c * &inv).collect()
}

/// `v ← v − v_p·w` where `p` is the leading position of `w` and `w_p = 1`.
fn reduce_by(v: &mut [Scalar], w: &[Scalar]) {
    let p = w.iter().position(|c| !c.is_zero()).unwrap();
    let f = v[p].clone();
    if f.is_zero() {
        return;
    }
    for (vi, wi) in v.iter_mut().zip(w) {
        if !wi.is_zero() {
            *vi = &*vi - &(&f * wi);
        }
    }
}
