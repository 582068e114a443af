//! Seeded verification suites: randomized checks of the annihilators, the
//! division algorithm, the certificate chains, and the counting cross-checks.
//! Every suite is deterministic for a fixed seed; failures carry a printable
//! witness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{euler_reduction_a1, verify_annihilators, TwistedElement, TwistedModule};
use crate::arrangement::{Arrangement, NormalizedArrangement};
use crate::certs::{
    origin_quotient_class, origin_quotient_class_via_chain, reduce_one_var_ideal,
    simplify_annihilator_ideal, ChainConclusion, ChainStep, QuotientClass,
};
use crate::decomp::{count_factors, normal_crossings_count, FactorKind};
use crate::poly::{LinearForm, Poly2};
use crate::scalar::Scalar;
use crate::weyl::{
    build_annihilators, in_n0_span, in_remainder_space, n0_span_generators, normal_form,
    weyl_mul, WeylMonomial, WeylOp,
};

// pin the generator so a fixed seed gives the same stream across releases
type Prng = ChaCha8Rng;

/// Result of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("suite {:<16} pass  ({} cases)", self.name, self.cases)
        } else {
            format!(
                "suite {:<16} FAIL  ({} cases, {} failures)",
                self.name,
                self.cases,
                self.failures.len()
            )
        }
    }
}

pub const SUITES: &[&str] = &[
    "annihilators",
    "division",
    "weight-zero-span",
    "chains",
    "classifier",
    "nonvanishing",
    "invariance",
    "structure",
    "counts",
];

/// Run one named suite. `corrupt_q` perturbs a Q coefficient in the
/// annihilator suite, as a negative control that must be reported as a
/// failure.
pub fn run_suite(name: &str, seed: u64, corrupt_q: bool) -> Option<SuiteOutcome> {
    let rng = Prng::seed_from_u64(seed);
    Some(match name {
        "annihilators" => annihilator_suite(rng, corrupt_q),
        "division" => division_suite(rng),
        "weight-zero-span" => weight_zero_span_suite(rng),
        "chains" => chain_suite(),
        "classifier" => classifier_suite(rng),
        "nonvanishing" => nonvanishing_suite(rng),
        "invariance" => invariance_suite(rng),
        "structure" => structure_suite(rng),
        "counts" => count_suite(),
        _ => return None,
    })
}

pub fn run_all(seed: u64, corrupt_q: bool) -> Vec<SuiteOutcome> {
    SUITES
        .iter()
        .map(|name| run_suite(name, seed, corrupt_q).expect("known suite"))
        .collect()
}

fn rand_rational(rng: &mut Prng, max_den: i64) -> Scalar {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(-10..=10);
    Scalar::ratio(num, den)
}

/// Random exponent in Q(i) with small denominators; one in four draws gets a
/// nonzero imaginary part.
fn rand_beta_entry(rng: &mut Prng) -> Scalar {
    let re = rand_rational(rng, 7);
    if rng.gen_range(0..4) == 0 {
        let im = rand_rational(rng, 7);
        Scalar::new(re.re().clone(), im.re().clone())
    } else {
        re
    }
}

fn rand_noninteger_beta(rng: &mut Prng) -> Scalar {
    loop {
        let b = rand_beta_entry(rng);
        if !b.is_integer() {
            return b;
        }
    }
}

/// Distinct nonzero rational slopes for the normalized forms.
fn rand_slopes(rng: &mut Prng, count: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    while out.len() < count {
        let c = rand_rational(rng, 5);
        if !c.is_zero() && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn rand_normalized(rng: &mut Prng, m: usize) -> NormalizedArrangement {
    let c = rand_slopes(rng, m - 2);
    let beta: Vec<Scalar> = (0..m).map(|_| rand_beta_entry(rng)).collect();
    NormalizedArrangement::from_slopes(c, beta).expect("random slopes are valid")
}

fn rand_weyl_op(rng: &mut Prng, max_deg: u32, terms: usize) -> WeylOp {
    let mut op = WeylOp::zero();
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_deg);
        let i = rng.gen_range(0..=deg);
        let j = rng.gen_range(0..=(deg - i));
        let k = rng.gen_range(0..=(deg - i - j));
        let l = deg - i - j - k;
        op.add_term(WeylMonomial::new(i, j, k, l), rand_beta_entry(rng));
    }
    op
}

/// Random weight-homogeneous operator of weight 0: monomials with
/// i + j = k + l.
fn rand_weight_zero_op(rng: &mut Prng, max_half_deg: u32, terms: usize) -> WeylOp {
    let mut op = WeylOp::zero();
    for _ in 0..terms {
        let h = rng.gen_range(0..=max_half_deg);
        let i = rng.gen_range(0..=h);
        let k = rng.gen_range(0..=h);
        op.add_term(
            WeylMonomial::new(i, h - i, k, h - k),
            rand_beta_entry(rng),
        );
    }
    op
}

fn annihilator_suite(mut rng: Prng, corrupt_q: bool) -> SuiteOutcome {
    let mut failures = Vec::new();
    let cases = 50;
    for case in 0..cases {
        let m = rng.gen_range(2..=6);
        let narr = rand_normalized(&mut rng, m);
        let mut ann = build_annihilators(&narr).expect("m >= 2");
        if corrupt_q {
            ann.q = ann.q.add(&WeylOp::constant(Scalar::ratio(1, 7)));
        }
        if let Err(residuals) = verify_annihilators(&ann, &narr) {
            let module = TwistedModule::over_normalized(&narr);
            for (op_name, residual) in residuals {
                failures.push(format!(
                    "case {case}: {op_name} * alpha^beta = {} (m = {m})",
                    module.render(&residual)
                ));
            }
        }
    }
    SuiteOutcome { name: "annihilators", cases, failures }
}

fn division_suite(mut rng: Prng) -> SuiteOutcome {
    let mut failures = Vec::new();
    let cases = 100;
    for case in 0..cases {
        let m = rng.gen_range(3..=5);
        let narr = rand_normalized(&mut rng, m);
        let ann = build_annihilators(&narr).expect("m >= 2");
        // every fourth input weight-0 homogeneous, to exercise the span check
        let f = if case % 4 == 0 {
            rand_weight_zero_op(&mut rng, 3, 4)
        } else {
            rand_weyl_op(&mut rng, 6, 5)
        };
        let nf = normal_form(&f, &ann);
        let recon = weyl_mul(&nf.s1, &ann.p)
            .add(&weyl_mul(&nf.s2, &ann.q))
            .add(&nf.r);
        if recon != f {
            failures.push(format!("case {case}: S1*P + S2*Q + R != F for F = {f}"));
            continue;
        }
        if let Some((mono, _)) = nf
            .r
            .terms()
            .find(|(mono, _)| !in_remainder_space(m, mono))
        {
            failures.push(format!(
                "case {case}: remainder monomial {mono} outside the normal-form space"
            ));
            continue;
        }
        if f.homogeneous_weight() == Some(0) {
            match in_n0_span(&nf.r, m) {
                Ok(true) => {}
                _ => failures.push(format!(
                    "case {case}: weight-0 remainder {} not in the span (m = {m})",
                    nf.r
                )),
            }
        }
    }
    SuiteOutcome { name: "division", cases, failures }
}

fn weight_zero_span_suite(mut rng: Prng) -> SuiteOutcome {
    let mut failures = Vec::new();
    let cases = 40;
    for case in 0..cases {
        let m = rng.gen_range(3..=5);
        let narr = rand_normalized(&mut rng, m);
        let ann = build_annihilators(&narr).expect("m >= 2");
        let f = rand_weight_zero_op(&mut rng, 3, 4);
        if f.is_zero() {
            continue;
        }
        let nf = normal_form(&f, &ann);
        match in_n0_span(&nf.r, m) {
            Ok(true) => {}
            _ => failures.push(format!(
                "case {case}: remainder of weight-0 operator not in span (m = {m}, F = {f})"
            )),
        }
    }
    SuiteOutcome { name: "weight-zero-span", cases, failures }
}

fn chain_suite() -> SuiteOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    // all integer and half-integer gamma in [-6, 6], k <= 6
    for twice_gamma in -12..=12i64 {
        let gamma = Scalar::ratio(twice_gamma, 2);
        for k in 0..=6u32 {
            cases += 1;
            let chain = reduce_one_var_ideal(&gamma, k);
            if !chain.steps.iter().all(ChainStep::verify) {
                failures.push(format!("gamma = {gamma}, k = {k}: a step fails to re-verify"));
                continue;
            }
            let in_range = gamma.is_integer()
                && twice_gamma % 2 == 0
                && (-(k as i64)..=-1).contains(&(twice_gamma / 2));
            let expect_full = k > 0 && !in_range;
            let got_full = chain.conclusion == ChainConclusion::IdealIsFull;
            if expect_full != got_full {
                failures.push(format!(
                    "gamma = {gamma}, k = {k}: conclusion {:?} disagrees with the dichotomy",
                    chain.conclusion
                ));
            }
            if got_full {
                // the final identity must end in a nonzero constant
                let last = chain.steps.last().expect("k > 0 gives steps");
                let (mono, c) = last.rhs.initial_term().expect("nonzero right side");
                if mono != WeylMonomial::one() || c.is_zero() {
                    failures.push(format!(
                        "gamma = {gamma}, k = {k}: full-ideal chain does not reach a constant"
                    ));
                }
            }
        }
    }
    SuiteOutcome { name: "chains", cases, failures }
}

fn classifier_suite(mut rng: Prng) -> SuiteOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    let sums: Vec<Scalar> = (-6..=2)
        .map(Scalar::from_int)
        .chain([Scalar::ratio(1, 2)])
        .collect();
    for m in 2..=6u32 {
        for s in &sums {
            cases += 1;
            let direct = origin_quotient_class(s, m);
            let composed = origin_quotient_class_via_chain(s, m);
            if direct != composed {
                failures.push(format!(
                    "|beta| = {s}, m = {m}: direct {direct:?} vs composed {composed:?}"
                ));
            }
            let expect = if let Some(t) = (s + &Scalar::one()).to_integer() {
                let t: i64 = i64::try_from(&t).unwrap();
                if (-(m as i64 - 2)..=-1).contains(&t) {
                    QuotientClass::NonzeroSimple
                } else {
                    QuotientClass::Zero
                }
            } else {
                QuotientClass::Zero
            };
            if direct != expect {
                failures.push(format!("|beta| = {s}, m = {m}: classifier gives {direct:?}"));
            }
        }
    }
    // the ideal simplification certificates re-verify on random data
    for case in 0..10 {
        let m = rng.gen_range(2..=6);
        let narr = rand_normalized(&mut rng, m);
        let ann = build_annihilators(&narr).expect("m >= 2");
        cases += 1;
        match simplify_annihilator_ideal(&ann, narr.beta()) {
            Ok(simp) => {
                if !simp.steps.iter().all(ChainStep::verify) {
                    failures.push(format!("case {case}: simplification step fails"));
                }
            }
            Err(crate::certs::CertError::BetaOneIsMinusOne) => {}
            Err(e) => failures.push(format!("case {case}: {e}")),
        }
    }
    SuiteOutcome { name: "classifier", cases, failures }
}

/// Random nonzero elements of the weight-0 normal-form span act nonzero on
/// the generator when no exponent is an integer.
fn nonvanishing_suite(mut rng: Prng) -> SuiteOutcome {
    let mut failures = Vec::new();
    let cases = 50;
    let m = 4;
    for case in 0..cases {
        let c = rand_slopes(&mut rng, m - 2);
        let beta: Vec<Scalar> = (0..m).map(|_| rand_noninteger_beta(&mut rng)).collect();
        let narr = NormalizedArrangement::from_slopes(c, beta).expect("valid slopes");
        let gens = n0_span_generators(m, 3);
        let mut u = WeylOp::zero();
        while u.is_zero() {
            for g in &gens {
                if rng.gen_range(0..3) == 0 {
                    u = u.add(&g.scale(&rand_beta_entry(&mut rng)));
                }
            }
        }
        let module = TwistedModule::over_normalized(&narr);
        let image = module.apply_op(&u, &module.generator());
        if image.is_zero() {
            failures.push(format!(
                "case {case}: nonzero span element U = {u} kills alpha^beta"
            ));
        }
    }
    SuiteOutcome { name: "nonvanishing", cases, failures }
}

fn factor_multiset(report: &crate::decomp::DecompositionReport) -> Vec<(String, usize)> {
    let mut v: Vec<(String, usize)> = report
        .factors
        .iter()
        .map(|f| {
            let kind = match &f.kind {
                FactorKind::Plane => "plane".to_string(),
                FactorKind::Line { index } => format!("line{index}"),
                FactorKind::Origin => "origin".to_string(),
            };
            (kind, f.multiplicity)
        })
        .collect();
    v.sort();
    v
}

fn rand_arrangement(rng: &mut Prng, m: usize) -> Arrangement {
    loop {
        let forms: Vec<LinearForm> = (0..m)
            .map(|_| {
                loop {
                    let a = rand_rational(rng, 3);
                    let b = rand_rational(rng, 3);
                    if let Some(f) = LinearForm::new(a, b) {
                        return f;
                    }
                }
            })
            .collect();
        let beta: Vec<Scalar> = (0..m).map(|_| rand_beta_entry(rng)).collect();
        if let Ok(arr) = Arrangement::new(forms, beta) {
            return arr;
        }
    }
}

fn invariance_suite(mut rng: Prng) -> SuiteOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    // 20 random exact GL2 changes of coordinates
    for case in 0..20 {
        let m = rng.gen_range(1..=5);
        let arr = rand_arrangement(&mut rng, m);
        let t = loop {
            let t = [
                [rand_rational(&mut rng, 3), rand_rational(&mut rng, 3)],
                [rand_rational(&mut rng, 3), rand_rational(&mut rng, 3)],
            ];
            let det = &t[0][0] * &t[1][1] - &t[0][1] * &t[1][0];
            if !det.is_zero() {
                break t;
            }
        };
        cases += 1;
        let Ok(moved) = arr.transformed(&t) else {
            failures.push(format!("case {case}: transform produced a zero form"));
            continue;
        };
        let before = count_factors(&arr).expect("valid arrangement");
        let after = count_factors(&moved).expect("transformed arrangement stays valid");
        if before.count != after.count || factor_multiset(&before) != factor_multiset(&after) {
            failures.push(format!(
                "case {case}: count or supports changed under a coordinate change"
            ));
        }
    }
    // 20 random joint permutations of (forms, beta)
    for case in 0..20 {
        let m = rng.gen_range(1..=5);
        let arr = rand_arrangement(&mut rng, m);
        let mut perm: Vec<usize> = (0..m).collect();
        for idx in (1..m).rev() {
            let other = rng.gen_range(0..=idx);
            perm.swap(idx, other);
        }
        cases += 1;
        let permuted = arr.permuted(&perm);
        let before = count_factors(&arr).expect("valid");
        let after = count_factors(&permuted).expect("valid");
        // a line factor at source index perm[i] shows up at position i
        let mut expected = factor_multiset(&before);
        let relabel: Vec<(String, usize)> = expected
            .iter()
            .map(|(kind, mult)| {
                if let Some(idx) = kind.strip_prefix("line") {
                    let old: usize = idx.parse().unwrap();
                    let new = perm.iter().position(|&p| p + 1 == old).unwrap() + 1;
                    (format!("line{new}"), *mult)
                } else {
                    (kind.clone(), *mult)
                }
            })
            .collect();
        expected = relabel;
        expected.sort();
        if before.count != after.count || expected != factor_multiset(&after) {
            failures.push(format!("case {case}: count or supports changed under permutation"));
        }
    }
    SuiteOutcome { name: "invariance", cases, failures }
}

fn rand_element(rng: &mut Prng, module: &TwistedModule) -> TwistedElement {
    let m = module.arrangement().m();
    let mut p = Poly2::zero();
    for _ in 0..3 {
        let dx = rng.gen_range(0..=2);
        let dy = rng.gen_range(0..=2);
        p = p.add(&Poly2::monomial(dx, dy, rand_beta_entry(rng)));
    }
    if p.is_zero() {
        p = Poly2::one();
    }
    let shift: Vec<i64> = (0..m).map(|_| rng.gen_range(-2..=2)).collect();
    module.element(p, shift)
}

fn structure_suite(mut rng: Prng) -> SuiteOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    // associativity on 200 random triples
    for case in 0..200 {
        cases += 1;
        let a = rand_weyl_op(&mut rng, 3, 3);
        let b = rand_weyl_op(&mut rng, 3, 3);
        let c = rand_weyl_op(&mut rng, 3, 3);
        if weyl_mul(&weyl_mul(&a, &b), &c) != weyl_mul(&a, &weyl_mul(&b, &c)) {
            failures.push(format!("case {case}: associativity fails"));
        }
    }
    // module-action compatibility on 100 random instances
    for case in 0..100 {
        cases += 1;
        let m = rng.gen_range(2..=4);
        let narr = rand_normalized(&mut rng, m);
        let module = TwistedModule::over_normalized(&narr);
        let a = rand_weyl_op(&mut rng, 3, 2);
        let b = rand_weyl_op(&mut rng, 3, 2);
        let e = rand_element(&mut rng, &module);
        let via_product = module.apply_op(&weyl_mul(&a, &b), &e);
        let sequential = module.apply_op(&a, &module.apply_op(&b, &e));
        if via_product != sequential {
            failures.push(format!("case {case}: apply(AB, e) != apply(A, apply(B, e))"));
        }
    }
    // valuation bounds
    for case in 0..30 {
        cases += 1;
        let m = rng.gen_range(2..=4);
        let narr = rand_normalized(&mut rng, m);
        let module = TwistedModule::over_normalized(&narr);
        let e = rand_element(&mut rng, &module);
        if e.is_zero() {
            continue;
        }
        let s = rand_weyl_op(&mut rng, 3, 2);
        let image = module.apply_op(&s, &e);
        if image.is_zero() {
            continue;
        }
        let order = s.op_order().unwrap_or(0) as i64;
        for form in module.arrangement().forms() {
            let before = module.valuation(&form, &e).unwrap();
            let after = module.valuation(&form, &image).unwrap();
            if after < before - order {
                failures.push(format!(
                    "case {case}: valuation along {form} dropped by more than the order"
                ));
            }
        }
        // transverse derivations preserve the valuation
        let dy_image = module.apply_op(&WeylOp::dy(), &e);
        if !dy_image.is_zero() {
            let before = module.valuation(&LinearForm::x(), &e).unwrap();
            let after = module.valuation(&LinearForm::x(), &dy_image).unwrap();
            if after < before {
                failures.push(format!("case {case}: Dy decreased the x-valuation"));
            }
        }
        let dx_image = module.apply_op(&WeylOp::dx(), &e);
        if !dx_image.is_zero() {
            let before = module.valuation(&LinearForm::y(), &e).unwrap();
            let after = module.valuation(&LinearForm::y(), &dx_image).unwrap();
            if after < before {
                failures.push(format!("case {case}: Dx decreased the y-valuation"));
            }
        }
    }
    // the one-variable reduction reproduces c_k * k! * x^(beta + k)
    for k in 0..=4u32 {
        cases += 1;
        let beta = rand_noninteger_beta(&mut rng);
        let mut f: Vec<(Scalar, u32)> = (0..k).map(|t| (rand_beta_entry(&mut rng), t)).collect();
        let top = loop {
            let c = rand_beta_entry(&mut rng);
            if !c.is_zero() {
                break c;
            }
        };
        f.push((top.clone(), k));
        match euler_reduction_a1(&f, &beta) {
            Ok(out) => {
                let expect_coeff = &top * &Scalar::factorial(k);
                let ok = out.shift() == [k as i64]
                    && out.numerator() == &Poly2::constant(expect_coeff);
                if !ok {
                    failures.push(format!("k = {k}: reduction did not isolate the top term"));
                }
            }
            Err(e) => failures.push(format!("k = {k}: {e}")),
        }
    }
    SuiteOutcome { name: "structure", cases, failures }
}

/// Standard arrangement with forms x, y, x+y, 2x+y, ... used by the sweeps.
pub fn standard_arrangement(m: usize, beta: Vec<Scalar>) -> Arrangement {
    let mut forms = Vec::new();
    if m >= 1 {
        forms.push(LinearForm::x());
    }
    if m >= 2 {
        forms.push(LinearForm::y());
    }
    for c in 1..=(m as i64).saturating_sub(2) {
        forms.push(LinearForm::slanted(Scalar::from_int(c)));
    }
    Arrangement::new(forms, beta).expect("standard forms are pairwise independent")
}

/// Exhaustive reproduction of the count table: every pattern over the value
/// set {0, 1, 1/2, 1/3, -5/2} for m up to 6 matches the closed formulas, and
/// m <= 2 agrees with the normal-crossings count.
pub fn count_suite() -> SuiteOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    let values = [
        Scalar::zero(),
        Scalar::one(),
        Scalar::ratio(1, 2),
        Scalar::ratio(1, 3),
        Scalar::ratio(-5, 2),
    ];
    for m in 1..=6usize {
        let mut patterns: Vec<Vec<Scalar>> = vec![vec![]];
        for _ in 0..m {
            patterns = patterns
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        for beta in patterns {
            cases += 1;
            let arr = standard_arrangement(m, beta.clone());
            let (k, _) = arr.integer_count();
            let sum_integer = arr.beta_sum().is_integer();
            let expect = if k == m {
                2 * m
            } else if sum_integer {
                m + k - 1
            } else {
                k + 1
            };
            let report = count_factors(&arr).expect("valid");
            if report.count != expect {
                failures.push(format!(
                    "m = {m}, beta = {:?}: got {}, formula says {expect}",
                    beta.iter().map(Scalar::to_string).collect::<Vec<_>>(),
                    report.count,
                ));
            }
            if m <= 2 {
                let nc = normal_crossings_count(k, m, 2).expect("m <= n");
                if report.count != nc {
                    failures.push(format!(
                        "m = {m}: count {} disagrees with normal crossings {nc}",
                        report.count
                    ));
                }
            }
        }
    }
    SuiteOutcome { name: "counts", cases, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_default_seed() {
        for outcome in run_all(0, false) {
            assert!(outcome.passed(), "{}\n{}", outcome.summary(), outcome.failures.join("\n"));
        }
    }

    #[test]
    fn corruption_is_detected() {
        let outcome = run_suite("annihilators", 0, true).unwrap();
        assert!(!outcome.passed());
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("nope", 0, false).is_none());
    }

    #[test]
    fn determinism() {
        let a = run_all(42, false);
        let b = run_all(42, false);
        let render = |v: &[SuiteOutcome]| {
            v.iter()
                .map(|o| format!("{}:{:?}", o.summary(), o.failures))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(render(&a), render(&b));
    }
}
