//! Executable reduction certificates for the structural lemmas behind the
//! count: the ideal simplification splitting Q along x, the one-variable
//! membership chain for A1(y*Dy - gamma) + A1*y^k, and the simplicity /
//! vanishing classifier for the quotient at the origin.
//!
//! Certificates are materialized operator identities, re-verified by the Weyl
//! product on construction, so each one can be printed and independently
//! checked.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::weyl::{weyl_mul, AnnPair, WeylMonomial, WeylOp};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CertError {
    #[error("precondition violated: beta_1 + 1 = 0")]
    BetaOneIsMinusOne,
    #[error("arrangement data inconsistent with the annihilator pair")]
    Inconsistent,
}

/// One verified identity A - B = C in the Weyl algebra, stored with its
/// rendering for the proof log.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub lhs: WeylOp,
    pub rhs: WeylOp,
    pub rendered: String,
}

impl ChainStep {
    fn checked(lhs: WeylOp, rhs: WeylOp, rendered: String) -> Self {
        assert_eq!(lhs, rhs, "chain step failed to verify: {rendered}");
        ChainStep { lhs, rhs, rendered }
    }

    /// Re-verify the stored identity.
    pub fn verify(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainConclusion {
    IdealIsFull,
    ReducedGenerators(Vec<WeylOp>),
}

/// A chain of verified identities reducing the ideal
/// A1(y*Dy - gamma) + A1*y^k.
#[derive(Debug, Clone)]
pub struct MembershipChain {
    pub gamma: Scalar,
    pub k: u32,
    pub steps: Vec<ChainStep>,
    pub conclusion: ChainConclusion,
}

impl fmt::Display for MembershipChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ideal J = A1(y*Dy - ({})) + A1*y^{}",
            self.gamma, self.k
        )?;
        for step in &self.steps {
            writeln!(f, "  {}", step.rendered)?;
        }
        match &self.conclusion {
            ChainConclusion::IdealIsFull => write!(f, "  conclusion: J = A1"),
            ChainConclusion::ReducedGenerators(gens) => {
                let rendered: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "  conclusion: J = <{}>", rendered.join(", "))
            }
        }
    }
}

fn y_pow(t: u32) -> WeylOp {
    WeylOp::from_monomial(WeylMonomial::new(t, 0, 0, 0), Scalar::one())
}

fn ydy_minus(gamma: &Scalar) -> WeylOp {
    WeylOp::from_monomial(WeylMonomial::new(1, 0, 0, 1), Scalar::one())
        .sub(&WeylOp::constant(gamma.clone()))
}

/// Is gamma a negative integer in {-1, ..., -k}?
fn gamma_in_range(gamma: &Scalar, k: u32) -> bool {
    match gamma.to_integer() {
        Some(g) => g.is_negative() && g >= BigInt::from(-(k as i64)),
        None => false,
    }
}

/// The reduction chain Dy*y^t - y^(t-1)(y*Dy - gamma) = (t + gamma) y^(t-1),
/// iterated from t = k downward while t + gamma is nonzero.
///
/// For gamma outside {-1, ..., -k} the chain reaches a nonzero constant and
/// the ideal is all of A1. For gamma = -g in range it stops at y^g and the
/// reduced generators are returned. k = 0 is a boundary case: the single
/// generator y*Dy - gamma is returned unreduced.
pub fn reduce_one_var_ideal(gamma: &Scalar, k: u32) -> MembershipChain {
    let euler = ydy_minus(gamma);
    if k == 0 {
        return MembershipChain {
            gamma: gamma.clone(),
            k,
            steps: Vec::new(),
            conclusion: ChainConclusion::ReducedGenerators(vec![euler]),
        };
    }
    let in_range = gamma_in_range(gamma, k);
    let stop = if in_range {
        (-gamma.to_integer().unwrap()).to_u32().unwrap()
    } else {
        0
    };
    let mut steps = Vec::new();
    for t in ((stop + 1)..=k).rev() {
        let coeff = &Scalar::from_int(t as i64) + gamma;
        assert!(!coeff.is_zero());
        let lhs = weyl_mul(&WeylOp::dy(), &y_pow(t)).sub(&weyl_mul(&y_pow(t - 1), &euler));
        let rhs = y_pow(t - 1).scale(&coeff);
        let rendered = format!(
            "Dy*y^{t} - y^{}*(y*Dy - ({gamma})) = ({coeff})*y^{}",
            t - 1,
            t - 1
        );
        steps.push(ChainStep::checked(lhs, rhs, rendered));
    }
    let conclusion = if in_range {
        ChainConclusion::ReducedGenerators(vec![euler, y_pow(stop)])
    } else {
        ChainConclusion::IdealIsFull
    };
    MembershipChain {
        gamma: gamma.clone(),
        k,
        steps,
        conclusion,
    }
}

/// The simplified generator triple for A2*x + A2*P + A2*Q with shifted
/// exponents: [x, y*Dy - (|beta| + 1), y^(m-2)], together with the verified
/// extraction Q = G*x + (y^(m-1)*Dy - sum_{i>=2} beta_i * y^(m-2)).
#[derive(Debug, Clone)]
pub struct IdealSimplification {
    pub g: WeylOp,
    pub generators: Vec<WeylOp>,
    pub steps: Vec<ChainStep>,
}

/// Split Q along divisibility by x and verify the identities used to replace
/// the generators {x, P, Q} by {x, y*Dy - (|beta|+1), y^(m-2)}.
/// Requires beta_1 + 1 != 0.
pub fn simplify_annihilator_ideal(
    ann: &AnnPair,
    beta_tilde: &[Scalar],
) -> Result<IdealSimplification, CertError> {
    if beta_tilde.len() != ann.m {
        return Err(CertError::Inconsistent);
    }
    let beta1_plus_1 = &beta_tilde[0] + &Scalar::one();
    if beta1_plus_1.is_zero() {
        return Err(CertError::BetaOneIsMinusOne);
    }
    let m = ann.m as u32;
    let beta_sum = beta_tilde.iter().fold(Scalar::zero(), |a, b| a + b);
    let tail_sum = beta_tilde[1..].iter().fold(Scalar::zero(), |a, b| a + b);

    // Split the expanded Q into x-divisible terms (forming G*x) and the rest.
    let mut g = WeylOp::zero();
    let mut rest = WeylOp::zero();
    for (mono, c) in ann.q.terms() {
        if mono.j >= 1 {
            g.add_term(WeylMonomial::new(mono.i, mono.j - 1, mono.k, mono.l), c.clone());
        } else {
            rest.add_term(*mono, c.clone());
        }
    }
    let mut steps = Vec::new();

    // Q = G*x + (y^(m-1)*Dy - (sum_{i>=2} beta_i) y^(m-2)).
    let expected_rest = WeylOp::from_monomial(WeylMonomial::new(m - 1, 0, 0, 1), Scalar::one())
        .sub(&y_pow(m - 2).scale(&tail_sum));
    if rest != expected_rest {
        return Err(CertError::Inconsistent);
    }
    let recombined = weyl_mul(&g, &WeylOp::var_x()).add(&rest);
    steps.push(ChainStep::checked(
        recombined,
        ann.q.clone(),
        format!("Q = ({g})*x + ({rest})"),
    ));

    // P = Dx*x + y*Dy - (|beta| + 1).
    let sum_plus_1 = &beta_sum + &Scalar::one();
    let p_alt = weyl_mul(&WeylOp::dx(), &WeylOp::var_x())
        .add(&ydy_minus(&sum_plus_1));
    steps.push(ChainStep::checked(
        p_alt,
        ann.p.clone(),
        format!("P = Dx*x + y*Dy - ({sum_plus_1})"),
    ));

    // rest - y^(m-2)(y*Dy - (|beta|+1)) = (beta_1 + 1) y^(m-2).
    let lhs = rest.sub(&weyl_mul(&y_pow(m - 2), &ydy_minus(&sum_plus_1)));
    let rhs = y_pow(m - 2).scale(&beta1_plus_1);
    steps.push(ChainStep::checked(
        lhs,
        rhs,
        format!(
            "(y^{}*Dy - ({tail_sum})*y^{}) - y^{}*(y*Dy - ({sum_plus_1})) = ({beta1_plus_1})*y^{}",
            m - 1,
            m - 2,
            m - 2,
            m - 2
        ),
    ));

    let generators = vec![WeylOp::var_x(), ydy_minus(&sum_plus_1), y_pow(m - 2)];
    Ok(IdealSimplification { g, generators, steps })
}

/// Classification of the quotient at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientClass {
    Zero,
    NonzeroSimple,
}

/// Nonzero simple iff |beta| + 1 is an integer in [-(m-2), -1]; zero
/// otherwise.
pub fn origin_quotient_class(beta_tilde_sum: &Scalar, m: u32) -> QuotientClass {
    assert!(m >= 2);
    let t = beta_tilde_sum + &Scalar::one();
    if gamma_in_range(&t, m - 2) {
        QuotientClass::NonzeroSimple
    } else {
        QuotientClass::Zero
    }
}

/// The same classification obtained by composing the ideal simplification
/// with the one-variable chain: the quotient is the external product of
/// A1/A1*x with A1/(A1(y*Dy - (|beta|+1)) + A1*y^(m-2)), so it is nonzero
/// exactly when the chain fails to produce 1.
pub fn origin_quotient_class_via_chain(beta_tilde_sum: &Scalar, m: u32) -> QuotientClass {
    assert!(m >= 2);
    if m == 2 {
        // y^(m-2) = 1 is already a generator.
        return QuotientClass::Zero;
    }
    let gamma = beta_tilde_sum + &Scalar::one();
    match reduce_one_var_ideal(&gamma, m - 2).conclusion {
        ChainConclusion::IdealIsFull => QuotientClass::Zero,
        ChainConclusion::ReducedGenerators(_) => QuotientClass::NonzeroSimple,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::NormalizedArrangement;
    use crate::weyl::build_annihilators;

    #[test]
    fn chain_full_ideal() {
        let chain = reduce_one_var_ideal(&Scalar::ratio(1, 2), 3);
        assert_eq!(chain.conclusion, ChainConclusion::IdealIsFull);
        assert_eq!(chain.steps.len(), 3);
        assert!(chain.steps.iter().all(ChainStep::verify));
        // last step produces a nonzero constant
        let last = chain.steps.last().unwrap();
        let (mono, c) = last.rhs.initial_term().unwrap();
        assert_eq!(mono, WeylMonomial::one());
        assert!(!c.is_zero());
    }

    #[test]
    fn chain_stops_in_range() {
        let chain = reduce_one_var_ideal(&Scalar::from_int(-2), 3);
        match &chain.conclusion {
            ChainConclusion::ReducedGenerators(gens) => {
                assert_eq!(gens.len(), 2);
                assert_eq!(gens[1], y_pow(2));
                let expect = "y*Dy + 2".parse::<WeylOp>().unwrap();
                assert_eq!(gens[0], expect);
            }
            other => panic!("expected reduced generators, got {other:?}"),
        }
        assert_eq!(chain.steps.len(), 1);
    }

    #[test]
    fn chain_k_zero_boundary() {
        let chain = reduce_one_var_ideal(&Scalar::zero(), 0);
        assert!(chain.steps.is_empty());
        match chain.conclusion {
            ChainConclusion::ReducedGenerators(gens) => assert_eq!(gens.len(), 1),
            _ => panic!("k = 0 must not conclude a full ideal"),
        }
    }

    fn ann_m(m: usize, beta: Vec<Scalar>) -> AnnPair {
        let c: Vec<Scalar> = (1..=(m as i64 - 2)).map(Scalar::from_int).collect();
        let narr = NormalizedArrangement::from_slopes(c, beta).unwrap();
        build_annihilators(&narr).unwrap()
    }

    #[test]
    fn ideal_simplification() {
        let beta = vec![Scalar::ratio(1, 2), Scalar::ratio(1, 3), Scalar::ratio(1, 5)];
        let ann = ann_m(3, beta.clone());
        let simplification = simplify_annihilator_ideal(&ann, &beta).unwrap();
        assert!(simplification.steps.iter().all(ChainStep::verify));
        assert_eq!(simplification.generators.len(), 3);
        assert_eq!(simplification.generators[0], WeylOp::var_x());

        // m = 2: y^(m-2) = 1 appears among the generators.
        let beta2 = vec![Scalar::ratio(1, 2), Scalar::ratio(1, 3)];
        let ann2 = ann_m(2, beta2.clone());
        let s2 = simplify_annihilator_ideal(&ann2, &beta2).unwrap();
        assert_eq!(s2.generators[2], WeylOp::one());
    }

    #[test]
    fn ideal_simplification_precondition() {
        let beta = vec![Scalar::from_int(-1), Scalar::ratio(1, 3), Scalar::ratio(1, 5)];
        let ann = ann_m(3, beta.clone());
        assert_eq!(
            simplify_annihilator_ideal(&ann, &beta).unwrap_err(),
            CertError::BetaOneIsMinusOne
        );
    }

    #[test]
    fn quotient_classification() {
        // |beta| = -3, m = 4: t = -2 in [-2, -1]
        assert_eq!(
            origin_quotient_class(&Scalar::from_int(-3), 4),
            QuotientClass::NonzeroSimple
        );
        assert_eq!(
            origin_quotient_class(&Scalar::zero(), 5),
            QuotientClass::Zero
        );
        assert_eq!(
            origin_quotient_class(&Scalar::ratio(1, 2), 4),
            QuotientClass::Zero
        );
        // non-real sums are never in range
        assert_eq!(
            origin_quotient_class(&Scalar::gaussian(-3, 1, 1, 1), 4),
            QuotientClass::Zero
        );
    }

    #[test]
    fn classifier_matches_chain_path() {
        let sums: Vec<Scalar> = (-6..=2)
            .map(Scalar::from_int)
            .chain([Scalar::ratio(1, 2)])
            .collect();
        for m in 2..=6u32 {
            for s in &sums {
                assert_eq!(
                    origin_quotient_class(s, m),
                    origin_quotient_class_via_chain(s, m),
                    "mismatch at |beta| = {s}, m = {m}"
                );
            }
        }
    }
}
