//! The twisted module: canonical elements p * alpha^(beta + N), the action of
//! the Weyl algebra generators, valuations along linear forms, and exact
//! annihilator verification.
//!
//! Elements are kept canonical: no form divides the numerator, divisibility is
//! absorbed into the integer shift vector N. Zero-testing and equality are then
//! structural.


use thiserror::Error;

use crate::arrangement::{Arrangement, NormalizedArrangement};
use crate::poly::{divides_linear, form_multiplicity, LinearForm, Poly2};
use crate::scalar::Scalar;
use crate::weyl::{AnnPair, WeylMonomial, WeylOp};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ActionError {
    #[error("the zero element has no valuation")]
    ZeroElement,
    #[error("empty input")]
    EmptyInput,
}

/// The module of elements p * alpha^(beta + N) over a fixed arrangement.
#[derive(Debug, Clone)]
pub struct TwistedModule {
    arr: Arrangement,
}

/// A canonical element p * alpha^(beta + N): the numerator p is coprime to
/// every form of the arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedElement {
    p: Poly2,
    shift: Vec<i64>,
}

impl TwistedElement {
    pub fn numerator(&self) -> &Poly2 {
        &self.p
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }
}

impl TwistedModule {
    pub fn new(arr: Arrangement) -> Self {
        TwistedModule { arr }
    }

    pub fn over_normalized(narr: &NormalizedArrangement) -> Self {
        TwistedModule {
            arr: narr.as_arrangement(),
        }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    fn m(&self) -> usize {
        self.arr.m()
    }

    /// The generator alpha^beta itself: p = 1, N = 0.
    pub fn generator(&self) -> TwistedElement {
        TwistedElement {
            p: Poly2::one(),
            shift: vec![0; self.m()],
        }
    }

    pub fn zero(&self) -> TwistedElement {
        TwistedElement {
            p: Poly2::zero(),
            shift: vec![0; self.m()],
        }
    }

    /// Build p * alpha^(beta + N) and canonicalize.
    pub fn element(&self, p: Poly2, shift: Vec<i64>) -> TwistedElement {
        assert_eq!(shift.len(), self.m());
        self.canonicalize(TwistedElement { p, shift })
    }

    fn canonicalize(&self, mut e: TwistedElement) -> TwistedElement {
        if e.p.is_zero() {
            return self.zero();
        }
        for (i, form) in self.arr.forms().iter().enumerate() {
            while let Some(q) = divides_linear(form, &e.p) {
                if q.is_zero() {
                    break;
                }
                e.p = q;
                e.shift[i] += 1;
            }
        }
        e
    }

    pub fn add(&self, a: &TwistedElement, b: &TwistedElement) -> TwistedElement {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let common: Vec<i64> = a
            .shift
            .iter()
            .zip(&b.shift)
            .map(|(&x, &y)| x.min(y))
            .collect();
        let lift = |e: &TwistedElement| {
            let mut p = e.p.clone();
            for (i, form) in self.arr.forms().iter().enumerate() {
                let excess = (e.shift[i] - common[i]) as u32;
                if excess > 0 {
                    p = p.mul(&form.as_poly().pow(excess));
                }
            }
            p
        };
        let p = lift(a).add(&lift(b));
        self.canonicalize(TwistedElement { p, shift: common })
    }

    pub fn scale(&self, c: &Scalar, e: &TwistedElement) -> TwistedElement {
        if c.is_zero() {
            return self.zero();
        }
        TwistedElement {
            p: e.p.scalar_mul(c),
            shift: e.shift.clone(),
        }
    }

    /// Multiply by a polynomial (action of the multiplication operators).
    pub fn mul_poly(&self, q: &Poly2, e: &TwistedElement) -> TwistedElement {
        self.canonicalize(TwistedElement {
            p: e.p.mul(q),
            shift: e.shift.clone(),
        })
    }

    /// Action of a single derivation: d/dx when `along_x`, else d/dy.
    /// d(p * alpha^(beta+N)) = (dp) alpha^(beta+N)
    ///   + p * sum_i (beta_i + N_i) (d alpha_i) alpha^(beta + N - e_i).
    fn apply_derivation(&self, along_x: bool, e: &TwistedElement) -> TwistedElement {
        if e.is_zero() {
            return self.zero();
        }
        let dp = if along_x { e.p.partial_x() } else { e.p.partial_y() };
        let mut acc = self.canonicalize(TwistedElement {
            p: dp,
            shift: e.shift.clone(),
        });
        for (i, form) in self.arr.forms().iter().enumerate() {
            let d_alpha = if along_x { form.a() } else { form.b() };
            if d_alpha.is_zero() {
                continue;
            }
            let exponent = &self.arr.beta()[i] + &Scalar::from_int(e.shift[i]);
            if exponent.is_zero() {
                continue;
            }
            let mut shift = e.shift.clone();
            shift[i] -= 1;
            let term = self.canonicalize(TwistedElement {
                p: e.p.scalar_mul(&(&exponent * d_alpha)),
                shift,
            });
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// Action of one generator of A2.
    pub fn apply_generator(&self, g: Generator, e: &TwistedElement) -> TwistedElement {
        match g {
            Generator::X => self.mul_poly(&Poly2::x(), e),
            Generator::Y => self.mul_poly(&Poly2::y(), e),
            Generator::Dx => self.apply_derivation(true, e),
            Generator::Dy => self.apply_derivation(false, e),
        }
    }

    /// Linear extension of the generator action over a normal-ordered word:
    /// the rightmost generator acts first.
    pub fn apply_monomial(&self, mono: &WeylMonomial, e: &TwistedElement) -> TwistedElement {
        let mut cur = e.clone();
        for _ in 0..mono.l {
            cur = self.apply_derivation(false, &cur);
        }
        for _ in 0..mono.k {
            cur = self.apply_derivation(true, &cur);
        }
        if mono.j > 0 || mono.i > 0 {
            cur = self.mul_poly(&Poly2::monomial(mono.j, mono.i, Scalar::one()), &cur);
        }
        cur
    }

    pub fn apply_op(&self, op: &WeylOp, e: &TwistedElement) -> TwistedElement {
        let mut acc = self.zero();
        for (mono, c) in op.terms() {
            let t = self.apply_monomial(mono, e);
            acc = self.add(&acc, &self.scale(c, &t));
        }
        acc
    }

    /// Valuation of a nonzero element along a linear form: for L proportional
    /// to alpha_i it is N_i plus the multiplicity of alpha_i in p; otherwise
    /// the multiplicity of L in p.
    pub fn valuation(&self, l: &LinearForm, e: &TwistedElement) -> Result<i64, ActionError> {
        if e.is_zero() {
            return Err(ActionError::ZeroElement);
        }
        for (i, form) in self.arr.forms().iter().enumerate() {
            if l.proportional(form) {
                return Ok(e.shift[i] + form_multiplicity(form, &e.p) as i64);
            }
        }
        Ok(form_multiplicity(l, &e.p) as i64)
    }

    /// Diagnostic rendering: "p / (alpha_1^a1 ... ) * alpha^beta".
    pub fn render(&self, e: &TwistedElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut denom_parts = Vec::new();
        let mut numer_parts = Vec::new();
        for (i, form) in self.arr.forms().iter().enumerate() {
            let n = e.shift[i];
            if n < 0 {
                denom_parts.push(format!("({})^{}", form, -n));
            } else if n > 0 {
                numer_parts.push(format!("({})^{}", form, n));
            }
        }
        let mut out = format!("({})", e.p);
        for part in numer_parts {
            out.push_str(&format!(" * {part}"));
        }
        if !denom_parts.is_empty() {
            out.push_str(&format!(" / ({})", denom_parts.join(" * ")));
        }
        out.push_str(" * alpha^beta");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
    Dx,
    Dy,
}

/// Exact check that both annihilators kill the generator; on failure the
/// nonzero residuals are returned for diagnostics.
pub fn verify_annihilators(
    ann: &AnnPair,
    narr: &NormalizedArrangement,
) -> Result<(), Vec<(String, TwistedElement)>> {
    let module = TwistedModule::over_normalized(narr);
    let gen = module.generator();
    let mut failures = Vec::new();
    for (name, op) in [("P", &ann.p), ("Q", &ann.q)] {
        let residual = module.apply_op(op, &gen);
        if !residual.is_zero() {
            failures.push((name.to_string(), residual));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

/// One-variable reduction: apply prod_{i=0}^{k-1} (x*Dx - (beta + i)) to
/// f = sum_t c_t x^(beta + t); the result is the single monomial
/// c_k * k! * x^(beta + k).
pub fn euler_reduction_a1(
    f: &[(Scalar, u32)],
    beta1: &Scalar,
) -> Result<TwistedElement, ActionError> {
    let terms: Vec<&(Scalar, u32)> = f.iter().filter(|(c, _)| !c.is_zero()).collect();
    if terms.is_empty() {
        return Err(ActionError::EmptyInput);
    }
    let k = terms.iter().map(|(_, t)| *t).max().unwrap();
    let arr = Arrangement::new(vec![LinearForm::x()], vec![beta1.clone()])
        .expect("single form is valid");
    let module = TwistedModule::new(arr);
    let mut p = Poly2::zero();
    for (c, t) in terms {
        p = p.add(&Poly2::monomial(*t, 0, c.clone()));
    }
    let element = module.element(p, vec![0]);
    let xdx = WeylOp::from_monomial(WeylMonomial::new(0, 1, 1, 0), Scalar::one());
    let mut cur = element;
    for i in 0..k {
        let op = xdx.sub(&WeylOp::constant(beta1 + &Scalar::from_int(i as i64)));
        cur = module.apply_op(&op, &cur);
    }
    Ok(cur)
}
