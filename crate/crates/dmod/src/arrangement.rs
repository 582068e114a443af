//! Central line arrangements in the plane: validation, exponent normalization,
//! coordinate normalization to the shape x, y, c_3*x+y, ..., c_m*x+y, and the
//! no-broken-circuit combinatorics of the plane case.

use serde::Deserialize;
use thiserror::Error;

use crate::poly::{pairwise_independent, LinearForm};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ArrangementError {
    #[error("forms {0} and {1} define the same line")]
    DuplicateLine(usize, usize),
    #[error("{forms} forms but {beta} exponents")]
    LengthMismatch { forms: usize, beta: usize },
    #[error("arrangement must contain at least one form")]
    Empty,
    #[error("a linear form must have a nonzero coefficient")]
    ZeroForm,
    #[error("coordinate normalization needs at least two forms")]
    TooFewForms,
    #[error("invalid arrangement file: {0}")]
    Parse(String),
}

/// A validated central arrangement: pairwise independent forms with one
/// exponent per form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    forms: Vec<LinearForm>,
    beta: Vec<Scalar>,
}

impl Arrangement {
    pub fn new(forms: Vec<LinearForm>, beta: Vec<Scalar>) -> Result<Self, ArrangementError> {
        if forms.is_empty() {
            return Err(ArrangementError::Empty);
        }
        if forms.len() != beta.len() {
            return Err(ArrangementError::LengthMismatch {
                forms: forms.len(),
                beta: beta.len(),
            });
        }
        for (i, f) in forms.iter().enumerate() {
            for (j, g) in forms.iter().enumerate().skip(i + 1) {
                if f.proportional(g) {
                    return Err(ArrangementError::DuplicateLine(i + 1, j + 1));
                }
            }
        }
        debug_assert!(pairwise_independent(&forms));
        Ok(Arrangement { forms, beta })
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn beta(&self) -> &[Scalar] {
        &self.beta
    }

    pub fn beta_sum(&self) -> Scalar {
        self.beta.iter().fold(Scalar::zero(), |acc, b| acc + b)
    }

    /// k and the 1-based indices i with beta_i an integer.
    pub fn integer_count(&self) -> (usize, Vec<usize>) {
        let indices: Vec<usize> = self
            .beta
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_integer())
            .map(|(i, _)| i + 1)
            .collect();
        (indices.len(), indices)
    }

    /// Replace each exponent by its canonical mod-Z representative: integers
    /// become 0, non-integers keep their imaginary part and get a real part
    /// in [0, 1).
    pub fn normalize_beta(&self) -> Arrangement {
        let beta = self
            .beta
            .iter()
            .map(|b| {
                if b.is_integer() {
                    Scalar::zero()
                } else {
                    let fract = b.re() - Rational::from_integer(b.re().floor().to_integer());
                    Scalar::new(fract, b.im().clone())
                }
            })
            .collect();
        Arrangement {
            forms: self.forms.clone(),
            beta,
        }
    }

    /// Apply an invertible change of coordinates: each form's coefficient row
    /// (a, b) becomes (a, b) * t.
    pub fn transformed(&self, t: &[[Scalar; 2]; 2]) -> Result<Arrangement, ArrangementError> {
        let forms = self
            .forms
            .iter()
            .map(|f| {
                let a = f.a() * &t[0][0] + f.b() * &t[1][0];
                let b = f.a() * &t[0][1] + f.b() * &t[1][1];
                LinearForm::new(a, b).ok_or(ArrangementError::ZeroForm)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(forms, self.beta.clone())
    }

    /// Joint permutation of forms and exponents; `perm[i]` is the source index
    /// of position i.
    pub fn permuted(&self, perm: &[usize]) -> Arrangement {
        assert_eq!(perm.len(), self.m());
        Arrangement {
            forms: perm.iter().map(|&i| self.forms[i].clone()).collect(),
            beta: perm.iter().map(|&i| self.beta[i].clone()).collect(),
        }
    }

    /// Bring the arrangement to the shape x, y, c_3*x+y, ..., c_m*x+y by an
    /// exact change of basis plus per-form scalings.
    pub fn normalize_coordinates(&self) -> Result<NormalizedArrangement, ArrangementError> {
        if self.m() < 2 {
            return Err(ArrangementError::TooFewForms);
        }
        let (a1, b1) = (self.forms[0].a(), self.forms[0].b());
        let (a2, b2) = (self.forms[1].a(), self.forms[1].b());
        let det = a1 * b2 - b1 * a2;
        // det != 0 by pairwise independence.
        let inv = det.inv().expect("independent forms have nonzero determinant");
        let t = [
            [b2 * &inv, -(b1 * &inv)],
            [-(a2 * &inv), a1 * &inv],
        ];
        let mut c = Vec::new();
        let mut scale = vec![Scalar::one(), Scalar::one()];
        for f in &self.forms[2..] {
            let a = f.a() * &t[0][0] + f.b() * &t[1][0];
            let b = f.a() * &t[0][1] + f.b() * &t[1][1];
            // b = 0 would make the form proportional to the first one.
            let s = b.inv().expect("form independent from the first");
            let ci = &a * &s;
            assert!(!ci.is_zero(), "form independent from the second");
            assert!(
                !c.contains(&ci),
                "pairwise independent forms give distinct slopes"
            );
            c.push(ci);
            scale.push(s);
        }
        Ok(NormalizedArrangement {
            base: self.clone(),
            change_of_basis: t,
            c,
            scale,
        })
    }
}

/// An arrangement together with the basis change taking it to normalized
/// coordinates where the forms are exactly x, y, c_3*x+y, ..., c_m*x+y.
#[derive(Debug, Clone)]
pub struct NormalizedArrangement {
    base: Arrangement,
    change_of_basis: [[Scalar; 2]; 2],
    c: Vec<Scalar>,
    scale: Vec<Scalar>,
}

impl NormalizedArrangement {
    /// Build directly from slopes c_3, ..., c_m and exponents; the forms are
    /// already x, y, c_i*x + y.
    pub fn from_slopes(c: Vec<Scalar>, beta: Vec<Scalar>) -> Result<Self, ArrangementError> {
        let mut forms = vec![LinearForm::x(), LinearForm::y()];
        for ci in &c {
            forms.push(LinearForm::slanted(ci.clone()));
        }
        let m = forms.len();
        let base = Arrangement::new(forms, beta)?;
        let id = [
            [Scalar::one(), Scalar::zero()],
            [Scalar::zero(), Scalar::one()],
        ];
        Ok(NormalizedArrangement {
            base,
            change_of_basis: id,
            c,
            scale: vec![Scalar::one(); m],
        })
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn base(&self) -> &Arrangement {
        &self.base
    }

    pub fn beta(&self) -> &[Scalar] {
        self.base.beta()
    }

    pub fn beta_sum(&self) -> Scalar {
        self.base.beta_sum()
    }

    pub fn change_of_basis(&self) -> &[[Scalar; 2]; 2] {
        &self.change_of_basis
    }

    pub fn slopes(&self) -> &[Scalar] {
        &self.c
    }

    pub fn scales(&self) -> &[Scalar] {
        &self.scale
    }

    /// The forms in normalized coordinates.
    pub fn normalized_forms(&self) -> Vec<LinearForm> {
        let mut forms = vec![LinearForm::x(), LinearForm::y()];
        for ci in &self.c {
            forms.push(LinearForm::slanted(ci.clone()));
        }
        forms
    }

    /// The normalized arrangement as a plain [`Arrangement`] with the same
    /// exponents.
    pub fn as_arrangement(&self) -> Arrangement {
        Arrangement::new(self.normalized_forms(), self.base.beta().to_vec())
            .expect("normalized forms are pairwise independent")
    }
}

/// The no-broken-circuit subsets of the plane case, 1-based, in the canonical
/// order: the empty set, the singletons, then {1,2}, ..., {1,m}. There are
/// always exactly 2m of them.
pub fn nbc_subsets(m: usize) -> Vec<Vec<usize>> {
    assert!(m >= 1);
    let mut out = vec![vec![]];
    for i in 1..=m {
        out.push(vec![i]);
    }
    for i in 2..=m {
        out.push(vec![1, i]);
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementFile {
    forms: Vec<[String; 2]>,
    beta: Vec<String>,
}

/// Strict JSON parsing of the arrangement file format:
/// `{"forms": [["1","0"],["0","1"],["1","1"]], "beta": ["1/2","1/3","1/5"]}`.
pub fn arrangement_from_json(text: &str) -> Result<Arrangement, ArrangementError> {
    let file: ArrangementFile =
        serde_json::from_str(text).map_err(|e| ArrangementError::Parse(e.to_string()))?;
    let forms = file
        .forms
        .iter()
        .map(|[a, b]| {
            let a: Scalar = a.parse().map_err(|e| ArrangementError::Parse(format!("{e}")))?;
            let b: Scalar = b.parse().map_err(|e| ArrangementError::Parse(format!("{e}")))?;
            LinearForm::new(a, b).ok_or(ArrangementError::ZeroForm)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let beta = file
        .beta
        .iter()
        .map(|s| s.parse().map_err(|e| ArrangementError::Parse(format!("{e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Arrangement::new(forms, beta)
}
