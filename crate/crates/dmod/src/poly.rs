//! Bivariate polynomials over the Gaussian rationals, and linear forms on C^2.
//!
//! Polynomials are sparse maps from (deg_x, deg_y) to nonzero coefficients.
//! The only division ever needed is exact division by a linear form, which is
//! what canonicalizes elements of the twisted module.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Sparse bivariate polynomial; the zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn one() -> Self {
        Poly2::constant(Scalar::one())
    }

    pub fn x() -> Self {
        Poly2::monomial(1, 0, Scalar::one())
    }

    pub fn y() -> Self {
        Poly2::monomial(0, 1, Scalar::one())
    }

    pub fn monomial(dx: u32, dy: u32, c: Scalar) -> Self {
        let mut p = Poly2::zero();
        p.add_term(dx, dy, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> Scalar {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    fn add_term(&mut self, dx: u32, dy: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((dx, dy)).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn add(&self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(a, b), c) in rhs.terms.iter() {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly2) -> Poly2 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a, b), c) in self.terms.iter() {
            out.add_term(a, b, -c);
        }
        out
    }

    pub fn mul(&self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a1, b1), c1) in self.terms.iter() {
            for (&(a2, b2), c2) in rhs.terms.iter() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a, b), v) in self.terms.iter() {
            out.add_term(a, b, v * c);
        }
        out
    }

    pub fn partial_x(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a, b), c) in self.terms.iter() {
            if a > 0 {
                out.add_term(a - 1, b, c * &Scalar::from_int(a as i64));
            }
        }
        out
    }

    pub fn partial_y(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a, b), c) in self.terms.iter() {
            if b > 0 {
                out.add_term(a, b - 1, c * &Scalar::from_int(b as i64));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        let mut out = Poly2::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() || (a == 0 && b == 0) {
                let cs = c.to_string();
                if cs.contains('+') || cs.contains('i') || cs[1..].contains('-') {
                    parts.push(format!("({cs})"));
                } else {
                    parts.push(cs);
                }
            }
            if a == 1 {
                parts.push("x".into());
            } else if a > 1 {
                parts.push(format!("x^{a}"));
            }
            if b == 1 {
                parts.push("y".into());
            } else if b > 1 {
                parts.push(format!("y^{b}"));
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// A nonzero linear form a*x + b*y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    a: Scalar,
    b: Scalar,
}

impl LinearForm {
    pub fn new(a: Scalar, b: Scalar) -> Option<Self> {
        if a.is_zero() && b.is_zero() {
            None
        } else {
            Some(LinearForm { a, b })
        }
    }

    pub fn x() -> Self {
        LinearForm { a: Scalar::one(), b: Scalar::zero() }
    }

    pub fn y() -> Self {
        LinearForm { a: Scalar::zero(), b: Scalar::one() }
    }

    /// c*x + y, the normalized shape of the third and later forms.
    pub fn slanted(c: Scalar) -> Self {
        LinearForm { a: c, b: Scalar::one() }
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn as_poly(&self) -> Poly2 {
        let mut p = Poly2::zero();
        p.add_term(1, 0, self.a.clone());
        p.add_term(0, 1, self.b.clone());
        p
    }

    /// First nonzero coefficient rescaled to 1; used for independence tests.
    pub fn normalized(&self) -> LinearForm {
        let lead = if !self.a.is_zero() { &self.a } else { &self.b };
        LinearForm {
            a: &self.a / lead,
            b: &self.b / lead,
        }
    }

    /// True iff the two forms are scalar multiples of each other.
    pub fn proportional(&self, other: &LinearForm) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

/// Exact division of `p` by the linear form `l`: returns the quotient q with
/// p = l*q when it exists.
pub fn divides_linear(l: &LinearForm, p: &Poly2) -> Option<Poly2> {
    if p.is_zero() {
        return Some(Poly2::zero());
    }
    if l.b.is_zero() {
        // l = a*x: every term needs deg_x >= 1.
        let inv_a = l.a.inv().expect("linear form is nonzero");
        let mut q = Poly2::zero();
        for (&(dx, dy), c) in p.terms.iter() {
            if dx == 0 {
                return None;
            }
            q.add_term(dx - 1, dy, c * &inv_a);
        }
        return Some(q);
    }
    // Divide by y + (a/b)x, then rescale by 1/b.
    let c = &l.a / &l.b;
    let mut rem = p.clone();
    let mut q = Poly2::zero();
    loop {
        // Leading term in y-degree, x-degree as tie break.
        let lead = rem
            .terms
            .iter()
            .filter(|(&(_, dy), _)| dy >= 1)
            .max_by_key(|(&(dx, dy), _)| (dy, dx))
            .map(|(&k, v)| (k, v.clone()));
        let Some(((dx, dy), coeff)) = lead else { break };
        q.add_term(dx, dy - 1, coeff.clone());
        rem.add_term(dx, dy, -&coeff);
        rem.add_term(dx + 1, dy - 1, -(&coeff * &c));
    }
    if rem.is_zero() {
        let inv_b = l.b.inv().expect("nonzero coefficient");
        Some(q.scalar_mul(&inv_b))
    } else {
        None
    }
}

/// Multiplicity of the linear form in `p`: largest e with l^e | p.
/// Returns 0 for coprime inputs; `p` must be nonzero.
pub fn form_multiplicity(l: &LinearForm, p: &Poly2) -> u32 {
    assert!(!p.is_zero(), "multiplicity of the zero polynomial");
    let mut e = 0;
    let mut cur = p.clone();
    while let Some(q) = divides_linear(l, &cur) {
        e += 1;
        cur = q;
    }
    e
}

/// True iff no two forms are scalar multiples of each other.
pub fn pairwise_independent(forms: &[LinearForm]) -> bool {
    for (idx, f) in forms.iter().enumerate() {
        for g in &forms[idx + 1..] {
            if f.proportional(g) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp() -> Poly2 {
        Poly2::x()
    }

    fn yp() -> Poly2 {
        Poly2::y()
    }

    #[test]
    fn arith_basics() {
        let p = xp().add(&yp()).mul(&xp().sub(&yp()));
        let expected = xp().mul(&xp()).sub(&yp().mul(&yp()));
        assert_eq!(p, expected);
        // dx(x^2 y) = 2xy
        let q = Poly2::monomial(2, 1, Scalar::one());
        assert_eq!(q.partial_x(), Poly2::monomial(1, 1, Scalar::from_int(2)));
        // dy(c3 x + y) = 1
        let f = LinearForm::slanted(Scalar::from_int(3));
        assert_eq!(f.as_poly().partial_y(), Poly2::one());
    }

    #[test]
    fn linear_division() {
        let l = LinearForm::x();
        let p = Poly2::monomial(2, 1, Scalar::one());
        assert_eq!(divides_linear(&l, &p), Some(Poly2::monomial(1, 1, Scalar::one())));

        let l = LinearForm::new(Scalar::one(), Scalar::one()).unwrap();
        let p = xp().mul(&xp()).sub(&yp().mul(&yp()));
        assert_eq!(divides_linear(&l, &p), Some(xp().sub(&yp())));

        let l = LinearForm::x();
        assert_eq!(divides_linear(&l, &xp().add(&yp())), None);
    }

    #[test]
    fn division_reconstructs() {
        let l = LinearForm::new(Scalar::from_int(2), Scalar::from_int(-3)).unwrap();
        let q0 = xp().mul(&yp()).add(&Poly2::monomial(0, 2, Scalar::ratio(1, 2)));
        let p = l.as_poly().mul(&q0);
        let q = divides_linear(&l, &p).expect("divides by construction");
        assert_eq!(l.as_poly().mul(&q), p);
    }

    #[test]
    fn independence() {
        let forms = vec![
            LinearForm::x(),
            LinearForm::y(),
            LinearForm::slanted(Scalar::one()),
            LinearForm::slanted(Scalar::ratio(1, 2)),
        ];
        assert!(pairwise_independent(&forms));
        let dup = vec![
            LinearForm::x(),
            LinearForm::new(Scalar::from_int(2), Scalar::zero()).unwrap(),
        ];
        assert!(!pairwise_independent(&dup));
    }

    #[test]
    fn mixed_partials_commute() {
        let p = Poly2::monomial(3, 2, Scalar::ratio(2, 3))
            .add(&Poly2::monomial(1, 4, Scalar::i()))
            .add(&Poly2::monomial(0, 1, Scalar::from_int(-7)));
        assert_eq!(p.partial_x().partial_y(), p.partial_y().partial_x());
    }
}
