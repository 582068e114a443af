//! The Weyl algebras A1 and A2: normal-ordered operator arithmetic, the
//! weighted grading, the graded reverse lexicographic term order on
//! y > x > Dx > Dy, and the normal-form division against the annihilator
//! pair {P, Q} of the twist generator.
//!
//! Operators are stored as maps from normal-ordered words y^i x^j Dx^k Dy^l
//! to nonzero coefficients; the map's key order is the term order, so the
//! greatest key is the initial term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::arrangement::NormalizedArrangement;
use crate::poly::Poly2;
use crate::scalar::{Rational, Scalar};

/// The normal-ordered word y^i x^j Dx^k Dy^l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylMonomial {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub l: u32,
}

impl WeylMonomial {
    pub fn new(i: u32, j: u32, k: u32, l: u32) -> Self {
        WeylMonomial { i, j, k, l }
    }

    pub fn one() -> Self {
        WeylMonomial::new(0, 0, 0, 0)
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j + self.k + self.l
    }

    /// Weight grading: x, y carry weight 1 and Dx, Dy weight -1.
    pub fn weight(&self) -> i64 {
        self.i as i64 + self.j as i64 - self.k as i64 - self.l as i64
    }

    /// Order as a differential operator.
    pub fn op_order(&self) -> u32 {
        self.k + self.l
    }
}

/// Graded reverse lexicographic order with y > x > Dx > Dy: compare total
/// degree first; on ties the word whose exponent difference has a negative
/// last nonzero coordinate (in the order i, j, k, l) is the greater one.
impl Ord for WeylMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diffs = [
            self.i as i64 - other.i as i64,
            self.j as i64 - other.j as i64,
            self.k as i64 - other.k as i64,
            self.l as i64 - other.l as i64,
        ];
        for d in diffs.iter().rev() {
            if *d != 0 {
                return if *d < 0 { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for WeylMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, e) in [("y", self.i), ("x", self.j), ("Dx", self.k), ("Dy", self.l)] {
            if e == 1 {
                parts.push(sym.to_string());
            } else if e > 1 {
                parts.push(format!("{sym}^{e}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// An element of A2: a finite Scalar-linear combination of normal-ordered
/// words. A1 sits inside as the operators not involving one of the variable
/// pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeylOp {
    terms: BTreeMap<WeylMonomial, Scalar>,
}

fn binomial(n: u32, t: u32) -> BigInt {
    let mut acc = BigInt::one();
    for s in 0..t {
        acc = acc * BigInt::from(n - s) / BigInt::from(s + 1);
    }
    acc
}

/// n * (n-1) * ... * (n-t+1)
fn falling(n: u32, t: u32) -> BigInt {
    let mut acc = BigInt::one();
    for s in 0..t {
        acc *= BigInt::from(n - s);
    }
    acc
}

impl WeylOp {
    pub fn zero() -> Self {
        WeylOp::default()
    }

    pub fn one() -> Self {
        WeylOp::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        WeylOp::from_monomial(WeylMonomial::one(), c)
    }

    pub fn from_monomial(m: WeylMonomial, c: Scalar) -> Self {
        let mut op = WeylOp::zero();
        op.add_term(m, c);
        op
    }

    pub fn var_x() -> Self {
        WeylOp::from_monomial(WeylMonomial::new(0, 1, 0, 0), Scalar::one())
    }

    pub fn var_y() -> Self {
        WeylOp::from_monomial(WeylMonomial::new(1, 0, 0, 0), Scalar::one())
    }

    pub fn dx() -> Self {
        WeylOp::from_monomial(WeylMonomial::new(0, 0, 1, 0), Scalar::one())
    }

    pub fn dy() -> Self {
        WeylOp::from_monomial(WeylMonomial::new(0, 0, 0, 1), Scalar::one())
    }

    /// Embed a polynomial as a multiplication operator.
    pub fn from_poly(p: &Poly2) -> Self {
        let mut op = WeylOp::zero();
        for (&(dx, dy), c) in p.terms() {
            op.add_term(WeylMonomial::new(dy, dx, 0, 0), c.clone());
        }
        op
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &WeylMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: WeylMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, rhs: &WeylOp) -> WeylOp {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &WeylOp) -> WeylOp {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> WeylOp {
        WeylOp::zero().sub(self)
    }

    pub fn scale(&self, c: &Scalar) -> WeylOp {
        let mut out = WeylOp::zero();
        for (m, v) in self.terms.iter() {
            out.add_term(*m, v * c);
        }
        out
    }

    /// The order-maximal monomial with its coefficient; None for the zero
    /// operator.
    pub fn initial_term(&self) -> Option<(WeylMonomial, Scalar)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    /// Sum of the terms of weight w.
    pub fn weight_component(&self, w: i64) -> WeylOp {
        let mut out = WeylOp::zero();
        for (m, c) in self.terms.iter() {
            if m.weight() == w {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// Some(w) iff the operator is nonzero and all terms share weight w.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let w = it.next()?.weight();
        it.all(|m| m.weight() == w).then_some(w)
    }

    /// Order as a differential operator: the largest Dx/Dy degree.
    pub fn op_order(&self) -> Option<u32> {
        self.terms.keys().map(WeylMonomial::op_order).max()
    }

    pub fn pow(&self, n: u32) -> WeylOp {
        let mut out = WeylOp::one();
        for _ in 0..n {
            out = weyl_mul(&out, self);
        }
        out
    }

    pub fn commutator(&self, rhs: &WeylOp) -> WeylOp {
        weyl_mul(self, rhs).sub(&weyl_mul(rhs, self))
    }
}

/// Product of two normal-ordered words, re-normal-ordered via the relations
/// [Dx, x] = 1 and [Dy, y] = 1 (all other generator pairs commute).
fn mono_mul(a: &WeylMonomial, b: &WeylMonomial) -> WeylOp {
    // Move Dx^a.k past x^b.j and Dy^a.l past y^b.i:
    // Dx^k x^j = sum_t C(k,t) * j!/(j-t)! * x^(j-t) Dx^(k-t).
    let mut out = WeylOp::zero();
    for t in 0..=a.k.min(b.j) {
        let cx = binomial(a.k, t) * falling(b.j, t);
        for s in 0..=a.l.min(b.i) {
            let cy = binomial(a.l, s) * falling(b.i, s);
            let coeff = Scalar::from_rational(Rational::from_integer(&cx * cy));
            out.add_term(
                WeylMonomial::new(
                    a.i + b.i - s,
                    a.j + b.j - t,
                    a.k + b.k - t,
                    a.l + b.l - s,
                ),
                coeff,
            );
        }
    }
    out
}

/// Exact normal-ordered product in A2.
pub fn weyl_mul(a: &WeylOp, b: &WeylOp) -> WeylOp {
    let mut out = WeylOp::zero();
    for (ma, ca) in a.terms.iter() {
        for (mb, cb) in b.terms.iter() {
            let prod = mono_mul(ma, mb);
            for (m, c) in prod.terms.iter() {
                out.add_term(*m, &(ca * cb) * c);
            }
        }
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WeylError {
    #[error("the zero operator has no initial term")]
    ZeroOperator,
    #[error("operator is not weight-homogeneous of weight 0")]
    NotHomogeneous,
    #[error("annihilator pair needs a normalized arrangement with m >= 2")]
    BadArrangement,
    #[error("invalid operator literal: {0}")]
    Parse(String),
}

/// The annihilator pair of the twist generator in normalized coordinates:
/// the Euler operator P = x*Dx + y*Dy - |beta| and the denominator-cleared
/// Dy-annihilator Q.
#[derive(Debug, Clone)]
pub struct AnnPair {
    pub p: WeylOp,
    pub q: WeylOp,
    pub m: usize,
    pub beta: Vec<Scalar>,
}

/// P(beta) for an exponent total |beta|.
pub fn euler_operator(beta_sum: &Scalar) -> WeylOp {
    let mut p = WeylOp::zero();
    p.add_term(WeylMonomial::new(0, 1, 1, 0), Scalar::one());
    p.add_term(WeylMonomial::new(1, 0, 0, 1), Scalar::one());
    p.add_term(WeylMonomial::one(), -beta_sum);
    p
}

/// Q(beta) = (prod_{j>=2} alpha_j) Dy - sum_{i>=2} beta_i prod_{j>=2, j!=i} alpha_j
/// over the normalized forms alpha_2 = y, alpha_i = c_i x + y.
pub fn q_operator(c: &[Scalar], beta: &[Scalar]) -> WeylOp {
    let m = beta.len();
    assert!(m >= 2);
    assert_eq!(c.len(), m - 2);
    let tail_forms: Vec<Poly2> = std::iter::once(Poly2::y())
        .chain(c.iter().map(|ci| {
            Poly2::monomial(1, 0, ci.clone()).add(&Poly2::y())
        }))
        .collect();
    let mut full = Poly2::one();
    for f in &tail_forms {
        full = full.mul(f);
    }
    let mut lower = Poly2::zero();
    for (idx, _) in tail_forms.iter().enumerate() {
        let mut prod = Poly2::one();
        for (jdx, f) in tail_forms.iter().enumerate() {
            if jdx != idx {
                prod = prod.mul(f);
            }
        }
        lower = lower.add(&prod.scalar_mul(&beta[idx + 1]));
    }
    weyl_mul(&WeylOp::from_poly(&full), &WeylOp::dy()).sub(&WeylOp::from_poly(&lower))
}

/// Build {P, Q} for a normalized arrangement with m >= 2.
pub fn build_annihilators(narr: &NormalizedArrangement) -> Result<AnnPair, WeylError> {
    let m = narr.m();
    if m < 2 {
        return Err(WeylError::BadArrangement);
    }
    let beta = narr.beta().to_vec();
    let p = euler_operator(&narr.beta_sum());
    let q = q_operator(narr.slopes(), &beta);
    Ok(AnnPair { p, q, m, beta })
}

/// Result of division by {P, Q}: F = s1*P + s2*Q + r exactly, with every
/// monomial of r outside the initial-term multiples of P and Q.
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub s1: WeylOp,
    pub s2: WeylOp,
    pub r: WeylOp,
}

/// True iff the word avoids both initial terms x*Dx and y^(m-1)*Dy, i.e.
/// jk = 0 and (l != 0 implies i <= m-2).
pub fn in_remainder_space(m: usize, mono: &WeylMonomial) -> bool {
    (mono.j == 0 || mono.k == 0) && (mono.l == 0 || (mono.i as usize) <= m - 2)
}

/// Full-reduction division of F by {P, Q}. Reducible monomials are processed
/// in decreasing term order; when both initial terms divide, P is used.
pub fn normal_form(f: &WeylOp, ann: &AnnPair) -> NormalForm {
    let m = ann.m as u32;
    let mut work = f.clone();
    let mut s1 = WeylOp::zero();
    let mut s2 = WeylOp::zero();
    let mut r = WeylOp::zero();
    while let Some((mono, coeff)) = work.initial_term() {
        if mono.j >= 1 && mono.k >= 1 {
            let cof = WeylOp::from_monomial(
                WeylMonomial::new(mono.i, mono.j - 1, mono.k - 1, mono.l),
                coeff,
            );
            work = work.sub(&weyl_mul(&cof, &ann.p));
            s1 = s1.add(&cof);
        } else if mono.i >= m - 1 && mono.l >= 1 {
            let cof = WeylOp::from_monomial(
                WeylMonomial::new(mono.i - (m - 1), mono.j, mono.k, mono.l - 1),
                coeff,
            );
            work = work.sub(&weyl_mul(&cof, &ann.q));
            s2 = s2.add(&cof);
        } else {
            r.add_term(mono, coeff);
            work.terms.remove(&mono);
        }
    }
    r
        .terms
        .keys()
        .for_each(|mono| debug_assert!(in_remainder_space(ann.m, mono)));
    NormalForm { s1, s2, r }
}

/// The basis of the weight-0 normal-form space: powers (y*Dx)^k, mixed words
/// (y*Dx)^k (y*Dy)^l with k + l <= m - 2, and (y*Dy)^l (x*Dy)^k with
/// l <= m - 2 (the constant 1 is the k = l = 0 member of the last block).
pub fn n0_span_generators(m: usize, max_order: u32) -> Vec<WeylOp> {
    let ydx = weyl_mul(&WeylOp::var_y(), &WeylOp::dx());
    let ydy = weyl_mul(&WeylOp::var_y(), &WeylOp::dy());
    let xdy = weyl_mul(&WeylOp::var_x(), &WeylOp::dy());
    let cap = m.saturating_sub(2) as u32;
    let mut gens = Vec::new();
    for k in 1..=max_order {
        gens.push(ydx.pow(k));
    }
    for k in 1..=max_order {
        for l in 1..=max_order.saturating_sub(k) {
            if k + l <= cap {
                gens.push(weyl_mul(&ydx.pow(k), &ydy.pow(l)));
            }
        }
    }
    for l in 0..=cap.min(max_order) {
        for k in 0..=(max_order - l) {
            gens.push(weyl_mul(&ydy.pow(l), &xdy.pow(k)));
        }
    }
    gens
}

/// Membership of `target` in the Scalar-span of `gens`, by exact Gaussian
/// elimination on the coefficient matrix in the monomial basis.
pub fn in_span(target: &WeylOp, gens: &[WeylOp]) -> bool {
    if target.is_zero() {
        return true;
    }
    let mut monos: Vec<WeylMonomial> = Vec::new();
    for op in gens.iter().chain(std::iter::once(target)) {
        for m in op.terms.keys() {
            if !monos.contains(m) {
                monos.push(*m);
            }
        }
    }
    let rows = monos.len();
    let cols = gens.len();
    let mut mat: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Scalar> = gens.iter().map(|g| g.coeff(&monos[r])).collect();
            row.push(target.coeff(&monos[r]));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(sel) = (pivot_row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(pivot_row, sel);
        let inv = mat[pivot_row][col].inv().expect("pivot is nonzero");
        for c in col..=cols {
            mat[pivot_row][c] = &mat[pivot_row][c] * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..=cols {
                    let delta = &factor * &mat[pivot_row][c];
                    mat[r][c] = &mat[r][c] - &delta;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // Inconsistent iff some row is zero on the generators but not on target.
    !mat.iter()
        .any(|row| row[..cols].iter().all(Scalar::is_zero) && !row[cols].is_zero())
}

/// True iff a weight-0 homogeneous operator lies in the normal-form span.
pub fn in_n0_span(a: &WeylOp, m: usize) -> Result<bool, WeylError> {
    if a.is_zero() {
        return Ok(true);
    }
    if a.homogeneous_weight() != Some(0) {
        return Err(WeylError::NotHomogeneous);
    }
    let order = a.op_order().unwrap_or(0);
    Ok(in_span(a, &n0_span_generators(m, order)))
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_real() && c.re() < &Rational::from_integer(0.into()) {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let trivial_mono = *m == WeylMonomial::one();
            if mag.is_one() && !trivial_mono {
                write!(f, "{m}")?;
            } else {
                let cs = mag.to_string();
                if cs.contains('i') || cs[1..].contains('+') || cs[1..].contains('-') {
                    write!(f, "({cs})")?;
                } else {
                    write!(f, "{cs}")?;
                }
                if !trivial_mono {
                    write!(f, "*{m}")?;
                }
            }
        }
        Ok(())
    }
}

fn parse_factor(tok: &str) -> Result<WeylOp, WeylError> {
    let tok = tok.trim();
    let err = || WeylError::Parse(tok.to_string());
    if let Some(inner) = tok.strip_prefix('(') {
        let inner = inner.strip_suffix(')').ok_or_else(err)?;
        let s: Scalar = inner.parse().map_err(|_| err())?;
        return Ok(WeylOp::constant(s));
    }
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b, e.parse::<u32>().map_err(|_| err())?),
        None => (tok, 1),
    };
    let op = match base {
        "y" => WeylOp::from_monomial(WeylMonomial::new(exp, 0, 0, 0), Scalar::one()),
        "x" => WeylOp::from_monomial(WeylMonomial::new(0, exp, 0, 0), Scalar::one()),
        "Dx" => WeylOp::from_monomial(WeylMonomial::new(0, 0, exp, 0), Scalar::one()),
        "Dy" => WeylOp::from_monomial(WeylMonomial::new(0, 0, 0, exp), Scalar::one()),
        _ => {
            if exp != 1 {
                return Err(err());
            }
            let s: Scalar = base.parse().map_err(|_| err())?;
            WeylOp::constant(s)
        }
    };
    Ok(op)
}

/// Parser for the pretty-printed operator syntax, e.g. "y^2*x*Dx - 3".
/// Factors multiply left to right through the normal-ordered product, so any
/// operator expression round-trips (fixtures are written in normal order).
impl FromStr for WeylOp {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(WeylError::Parse(s.to_string()));
        }
        if s == "0" {
            return Ok(WeylOp::zero());
        }
        // Split into signed terms at top-level +/-.
        let mut terms: Vec<(Scalar, String)> = Vec::new();
        let mut depth = 0usize;
        let mut sign = Scalar::one();
        let mut cur = String::new();
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(|| WeylError::Parse(s.into()))?;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 && !cur.trim().is_empty() => {
                    terms.push((sign.clone(), std::mem::take(&mut cur)));
                    sign = if ch == '-' {
                        -Scalar::one()
                    } else {
                        Scalar::one()
                    };
                }
                '-' if depth == 0 && cur.trim().is_empty() => {
                    sign = -&sign;
                }
                _ => cur.push(ch),
            }
        }
        if cur.trim().is_empty() {
            return Err(WeylError::Parse(s.to_string()));
        }
        terms.push((sign, cur));

        let mut out = WeylOp::zero();
        for (sgn, term) in terms {
            let mut acc = WeylOp::constant(sgn);
            for factor in term.split('*') {
                acc = weyl_mul(&acc, &parse_factor(factor)?);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(i: u32, j: u32, k: u32, l: u32) -> WeylMonomial {
        WeylMonomial::new(i, j, k, l)
    }

    #[test]
    fn commutation_relations() {
        // Dx * x = x*Dx + 1
        let lhs = weyl_mul(&WeylOp::dx(), &WeylOp::var_x());
        let mut expect = WeylOp::from_monomial(mono(0, 1, 1, 0), Scalar::one());
        expect.add_term(WeylMonomial::one(), Scalar::one());
        assert_eq!(lhs, expect);

        // Dy * y^2 = y^2*Dy + 2y
        let y2 = weyl_mul(&WeylOp::var_y(), &WeylOp::var_y());
        let lhs = weyl_mul(&WeylOp::dy(), &y2);
        let mut expect = WeylOp::from_monomial(mono(2, 0, 0, 1), Scalar::one());
        expect.add_term(mono(1, 0, 0, 0), Scalar::from_int(2));
        assert_eq!(lhs, expect);

        // x * Dx already normal-ordered
        assert_eq!(
            weyl_mul(&WeylOp::var_x(), &WeylOp::dx()),
            WeylOp::from_monomial(mono(0, 1, 1, 0), Scalar::one())
        );

        // [Dx, x] = 1, [Dx, y] = 0, [Dy, y] = 1, [Dy, x] = 0
        assert_eq!(WeylOp::dx().commutator(&WeylOp::var_x()), WeylOp::one());
        assert_eq!(WeylOp::dx().commutator(&WeylOp::var_y()), WeylOp::zero());
        assert_eq!(WeylOp::dy().commutator(&WeylOp::var_y()), WeylOp::one());
        assert_eq!(WeylOp::dy().commutator(&WeylOp::var_x()), WeylOp::zero());
    }

    #[test]
    fn term_order() {
        // x*Dx > y*Dy
        assert!(mono(0, 1, 1, 0) > mono(1, 0, 0, 1));
        // y^(m-1)*Dy > y^(m-2)*x*Dy for m = 3
        assert!(mono(2, 0, 0, 1) > mono(1, 1, 0, 1));
        // x > 1
        assert!(mono(0, 1, 0, 0) > mono(0, 0, 0, 0));
    }

    fn sample_ann(m: usize) -> AnnPair {
        // slopes 1, 2, ..., m-2; beta_i = 1/(i+1)
        let c: Vec<Scalar> = (1..=(m as i64 - 2)).map(Scalar::from_int).collect();
        let beta: Vec<Scalar> = (1..=m as i64).map(|i| Scalar::ratio(1, i + 1)).collect();
        let sum = beta.iter().fold(Scalar::zero(), |a, b| a + b);
        AnnPair {
            p: euler_operator(&sum),
            q: q_operator(&c, &beta),
            m,
            beta,
        }
    }

    #[test]
    fn initial_terms_of_annihilators() {
        let ann = sample_ann(3);
        assert_eq!(
            ann.p.initial_term().unwrap(),
            (mono(0, 1, 1, 0), Scalar::one())
        );
        assert_eq!(
            ann.q.initial_term().unwrap(),
            (mono(2, 0, 0, 1), Scalar::one())
        );
        assert_eq!(
            WeylOp::constant(Scalar::from_int(5)).initial_term().unwrap(),
            (WeylMonomial::one(), Scalar::from_int(5))
        );
    }

    #[test]
    fn q_collapses_for_m2() {
        // m = 2: Q = y*Dy - beta_2
        let beta = vec![Scalar::ratio(1, 2), Scalar::ratio(1, 3)];
        let q = q_operator(&[], &beta);
        let mut expect = WeylOp::from_monomial(mono(1, 0, 0, 1), Scalar::one());
        expect.add_term(WeylMonomial::one(), -Scalar::ratio(1, 3));
        assert_eq!(q, expect);
    }

    #[test]
    fn q_for_m3() {
        // forms x, y, x+y: Q = y(x+y)Dy - beta2(x+y) - beta3*y
        let beta = vec![Scalar::ratio(1, 2), Scalar::ratio(1, 3), Scalar::ratio(1, 5)];
        let q = q_operator(&[Scalar::one()], &beta);
        let expect: WeylOp = "y*x*Dy + y^2*Dy - 1/3*x - 1/3*y - 1/5*y"
            .parse()
            .unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn division_examples() {
        let ann = sample_ann(3);
        // F = P: quotient (1, 0), remainder 0.
        let nf = normal_form(&ann.p, &ann);
        assert_eq!(nf.s1, WeylOp::one());
        assert_eq!(nf.s2, WeylOp::zero());
        assert_eq!(nf.r, WeylOp::zero());

        // F = x*Dx: one reduction step; R = |beta| - y*Dy.
        let f = WeylOp::from_monomial(mono(0, 1, 1, 0), Scalar::one());
        let nf = normal_form(&f, &ann);
        let sum = ann.beta.iter().fold(Scalar::zero(), |a, b| a + b);
        let mut expect = WeylOp::constant(sum);
        expect.add_term(mono(1, 0, 0, 1), -Scalar::one());
        assert_eq!(nf.r, expect);

        // F = y^(m-1)*Dy: all remainder monomials in the normal-form space.
        let f = WeylOp::from_monomial(mono(2, 0, 0, 1), Scalar::one());
        let nf = normal_form(&f, &ann);
        let recon = weyl_mul(&nf.s1, &ann.p)
            .add(&weyl_mul(&nf.s2, &ann.q))
            .add(&nf.r);
        assert_eq!(recon, f);
        for (m, _) in nf.r.terms() {
            assert!(in_remainder_space(ann.m, m));
        }
    }

    #[test]
    fn weight_components() {
        let ann = sample_ann(3);
        let mut a = WeylOp::from_monomial(mono(0, 1, 1, 0), Scalar::one());
        a.add_term(mono(0, 1, 0, 0), Scalar::one());
        assert_eq!(
            a.weight_component(0),
            WeylOp::from_monomial(mono(0, 1, 1, 0), Scalar::one())
        );
        assert_eq!(ann.p.weight_component(0), ann.p);
        assert_eq!(ann.p.homogeneous_weight(), Some(0));
        // every term of Q has weight m - 2
        assert_eq!(ann.q.homogeneous_weight(), Some(1));
    }

    #[test]
    fn n0_span_membership() {
        let ydx = weyl_mul(&WeylOp::var_y(), &WeylOp::dx());
        assert!(in_n0_span(&ydx.pow(2), 4).unwrap());
        assert!(in_n0_span(&WeylOp::one(), 3).unwrap());

        // (y*Dy)^(m-1) exceeds l <= m-2 in both mixed blocks.
        let m = 4;
        let ydy = weyl_mul(&WeylOp::var_y(), &WeylOp::dy());
        assert!(!in_n0_span(&ydy.pow(m as u32 - 1), m).unwrap());

        let not_homog = WeylOp::var_x();
        assert_eq!(in_n0_span(&not_homog, 3), Err(WeylError::NotHomogeneous));
    }

    #[test]
    fn display_round_trip() {
        let ann = sample_ann(4);
        for op in [
            ann.p.clone(),
            ann.q.clone(),
            WeylOp::zero(),
            WeylOp::constant(Scalar::gaussian(1, 2, -1, 3)),
            "y^2*x*Dx - 3".parse().unwrap(),
        ] {
            let text = op.to_string();
            assert_eq!(text.parse::<WeylOp>().unwrap(), op, "round trip of {text}");
        }
    }

    #[test]
    fn parser_respects_operator_order() {
        let parsed: WeylOp = "Dx*x".parse().unwrap();
        let mut expect = WeylOp::from_monomial(mono(0, 1, 1, 0), Scalar::one());
        expect.add_term(WeylMonomial::one(), Scalar::one());
        assert_eq!(parsed, expect);
    }
}
