//! Verification suites over a finite lattice window.
//!
//! A [`SuiteConfig`] selects a lattice size, a part cutoff, the parameter
//! tuples and a set of checks. [`run_suite`] enumerates every case, evaluates
//! the cases on a worker pool, and assembles a [`SuiteReport`] in enumeration
//! order, so the report does not depend on scheduling.

use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coeffs::{
    check_gauge_relation, coeff_u, coeff_v, coeff_w, gauge_h, u_potential, w_minus, w_plus,
    CoeffVariant,
};
use crate::error::{Error, Result};
use crate::hall_littlewood::{principal_point, verify_pieri, HlCache};
use crate::lattice::{enumerate_partitions, enumerate_shift_pairs, shift_partition, Partition};
use crate::operators::{apply_h, apply_h1_explicit, commutator, LatticeFunction};
use crate::params::{Mode, ParamJson, ParamSet};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Gauge,
    H1,
    Commute,
    Pieri,
    Principal,
    Degenerate,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Gauge, Check::H1, Check::Commute, Check::Pieri, Check::Principal, Check::Degenerate];

    pub fn name(self) -> &'static str {
        match self {
            Check::Gauge => "gauge",
            Check::H1 => "h1",
            Check::Commute => "commute",
            Check::Pieri => "pieri",
            Check::Principal => "principal",
            Check::Degenerate => "degenerate",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

/// Where the parameter tuples come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamSource {
    Explicit(Vec<ParamJson>),
    Random {
        seed: u64,
        count: usize,
        bound: i64,
        /// Pin `t2 = 0` on every drawn tuple.
        #[serde(default)]
        zero_t2: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub cutoff: u32,
    pub lmax: usize,
    pub modes: Vec<Mode>,
    pub variant: CoeffVariant,
    pub params: ParamSource,
    pub checks: Vec<Check>,
    /// Record wall time per check. Off by default so that reports are
    /// byte-reproducible.
    #[serde(default)]
    pub timing: bool,
}

impl SuiteConfig {
    pub fn new(n: usize, cutoff: u32, lmax: usize) -> Self {
        SuiteConfig {
            n,
            cutoff,
            lmax,
            modes: vec![Mode::ThreeParam, Mode::FourParam],
            variant: CoeffVariant::RestrictedInnerSum,
            params: ParamSource::Random { seed: 0, count: 3, bound: 13, zero_t2: false },
            checks: Check::ALL.to_vec(),
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.cutoff < 1 {
            return Err(Error::Config("cutoff must be at least 1".into()));
        }
        if self.lmax < 1 || self.lmax > self.n {
            return Err(Error::Config(format!("lmax must lie in 1..={}", self.n)));
        }
        if self.modes.is_empty() || self.checks.is_empty() {
            return Err(Error::Config("at least one mode and one check are required".into()));
        }
        if let ParamSource::Random { count, bound, .. } = self.params {
            if count == 0 || bound < 2 {
                return Err(Error::Config("random tuples need count >= 1 and bound >= 2".into()));
            }
        }
        Ok(())
    }
}

/// One failing case with enough data to replay it through the query commands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub mode: Mode,
    pub params: ParamSet,
    pub lambda: Partition,
    /// Case-specific coordinates (`pair`, `l`, `k`, ...).
    pub case: Value,
    pub residual: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TupleInfo {
    pub mode: Mode,
    pub params: ParamSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub tuples: Vec<TupleInfo>,
    pub redraws: usize,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn check(&self, check: Check) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.check == check)
    }

    /// Plain-text rendering of the report: one line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.failed == 0 { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {:<10} cases={} passed={} failed={}\n",
                c.check.name(),
                c.cases,
                c.passed,
                c.failed
            ));
        }
        out.push_str(if self.pass { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }
}

/// Resolves the configured tuples, in mode order then draw order. Returns the
/// tuples and the number of rejected random draws.
pub fn resolve_params(config: &SuiteConfig) -> Result<(Vec<ParamSet>, usize)> {
    let mut out = Vec::new();
    let mut redraws = 0;
    for (mi, &mode) in config.modes.iter().enumerate() {
        match &config.params {
            ParamSource::Explicit(list) => {
                for pj in list {
                    let p = pj.clone().into_params(mode)?;
                    p.check_generic(config.n)?;
                    out.push(p);
                }
            }
            &ParamSource::Random { seed, count, bound, zero_t2 } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(mi as u64));
                let mut drawn = 0;
                while drawn < count {
                    let (mut p, r) = ParamSet::random(mode, config.n, bound, &mut rng)?;
                    redraws += r;
                    if zero_t2 {
                        p = ParamSet::new(mode, p.t, p.t0, p.t1, Rational::zero(), p.t3)?;
                        if p.check_generic(config.n).is_err() {
                            redraws += 1;
                            continue;
                        }
                    }
                    out.push(p);
                    drawn += 1;
                }
            }
        }
    }
    Ok((out, redraws))
}

#[derive(Debug, Clone)]
enum Case {
    Gauge { tuple: usize, lambda: Partition, pair: usize },
    H1 { tuple: usize, mu: Partition },
    Commute { tuple: usize, mu: Partition, k: usize, l: usize },
    Pieri { tuple: usize, lambda: Partition, l: usize },
    Principal { tuple: usize, lambda: Partition },
    Degenerate { tuple: usize, lambda: Partition },
}

struct Outcome {
    pass: bool,
    failure: Option<Failure>,
}

struct Context<'a> {
    config: &'a SuiteConfig,
    tuples: &'a [ParamSet],
    caches: Vec<Arc<HlCache>>,
    pairs: Vec<crate::lattice::ShiftPair>,
}

fn enumerate_cases(check: Check, ctx: &Context<'_>) -> Vec<Case> {
    let cfg = ctx.config;
    let lattice = enumerate_partitions(cfg.n, cfg.cutoff);
    let mut cases = Vec::new();
    for tuple in 0..ctx.tuples.len() {
        for lambda in &lattice {
            match check {
                Check::Gauge => {
                    for (pair, pr) in ctx.pairs.iter().enumerate() {
                        if shift_partition(lambda, pr).is_some() {
                            cases.push(Case::Gauge { tuple, lambda: lambda.clone(), pair });
                        }
                    }
                }
                Check::H1 => cases.push(Case::H1 { tuple, mu: lambda.clone() }),
                Check::Commute => {
                    for k in 1..=cfg.lmax {
                        for l in k + 1..=cfg.lmax {
                            cases.push(Case::Commute { tuple, mu: lambda.clone(), k, l });
                        }
                    }
                }
                Check::Pieri => {
                    for l in 1..=cfg.lmax {
                        cases.push(Case::Pieri { tuple, lambda: lambda.clone(), l });
                    }
                }
                Check::Principal => cases.push(Case::Principal { tuple, lambda: lambda.clone() }),
                Check::Degenerate => cases.push(Case::Degenerate { tuple, lambda: lambda.clone() }),
            }
        }
    }
    cases
}

fn outcome(
    pass: bool,
    p: &ParamSet,
    lambda: &Partition,
    case: Value,
    residual: impl FnOnce() -> Value,
) -> Outcome {
    if pass {
        return Outcome { pass, failure: None };
    }
    Outcome {
        pass,
        failure: Some(Failure {
            mode: p.mode,
            params: p.clone(),
            lambda: lambda.clone(),
            case,
            residual: residual(),
        }),
    }
}

fn errored(p: &ParamSet, lambda: &Partition, case: Value, e: Error) -> Outcome {
    outcome(false, p, lambda, case, || json!({ "error": e.to_string() }))
}

fn run_case(case: &Case, ctx: &Context<'_>) -> Outcome {
    let variant = ctx.config.variant;
    match case {
        Case::Gauge { tuple, lambda, pair } => {
            let p = &ctx.tuples[*tuple];
            let pr = &ctx.pairs[*pair];
            let key = json!({ "pair": pr });
            match check_gauge_relation(lambda, pr, p) {
                Ok(ok) => outcome(ok, p, lambda, key, || {
                    let shifted = shift_partition(lambda, pr).expect("admissible");
                    let lhs = coeff_v(lambda, pr, p).and_then(|v| Ok(v * gauge_h(&shifted, p)?));
                    let rhs = coeff_w(lambda, pr, p).and_then(|w| Ok(w * gauge_h(lambda, p)?));
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) => json!(crate::rational::format_rational(&(a - b))),
                        _ => Value::Null,
                    }
                }),
                Err(e) => errored(p, lambda, key, e),
            }
        }
        Case::H1 { tuple, mu } => {
            let p = &ctx.tuples[*tuple];
            let f = LatticeFunction::delta(mu);
            let key = json!({ "f": "delta" });
            let res = apply_h(1, &f, p, variant)
                .and_then(|a| apply_h1_explicit(&f, p).and_then(|b| a.sub(&b)));
            match res {
                Ok(diff) => outcome(diff.is_zero(), p, mu, key, || json!(diff)),
                Err(e) => errored(p, mu, key, e),
            }
        }
        Case::Commute { tuple, mu, k, l } => {
            let p = &ctx.tuples[*tuple];
            let key = json!({ "k": k, "l": l, "f": "delta" });
            match commutator(*k, *l, &LatticeFunction::delta(mu), p, variant) {
                Ok(c) => outcome(c.is_zero(), p, mu, key, || json!(c)),
                Err(e) => errored(p, mu, key, e),
            }
        }
        Case::Pieri { tuple, lambda, l } => {
            let p = &ctx.tuples[*tuple];
            let key = json!({ "l": l });
            let cache = &ctx.caches[*tuple];
            let report = match verify_pieri(lambda, *l, cache, variant) {
                Ok(r) => r,
                Err(e) => return errored(p, lambda, key, e),
            };
            // Structure of every polynomial touched by this case.
            let mut structural = Vec::new();
            for mu in std::iter::once(lambda).chain(report.expansion.iter().map(|t| &t.mu)) {
                match cache.get(mu) {
                    Ok(hl) => {
                        if !hl.is_hyperoctahedral_invariant() {
                            structural.push(format!("P{mu} not invariant"));
                        }
                        if hl.poly().max_abs_exponent() > mu.max_part() as i32 {
                            structural.push(format!("P{mu} exceeds support bound"));
                        }
                    }
                    Err(e) => structural.push(format!("P{mu}: {e}")),
                }
            }
            let pass = report.pass && structural.is_empty();
            outcome(pass, p, lambda, key, || {
                json!({ "residual": report.residual, "structure": structural })
            })
        }
        Case::Principal { tuple, lambda } => {
            let p = &ctx.tuples[*tuple];
            let key = json!({});
            let value = ctx.caches[*tuple]
                .get(lambda)
                .and_then(|hl| hl.poly().evaluate(&principal_point(lambda.n(), p)));
            match value {
                Ok(v) => outcome(v.is_one(), p, lambda, key, || {
                    json!(crate::rational::format_rational(&v))
                }),
                Err(e) => errored(p, lambda, key, e),
            }
        }
        Case::Degenerate { tuple, lambda } => {
            let p = &ctx.tuples[*tuple];
            let key = json!({});
            match degeneration_mismatches(lambda, p, variant) {
                Ok(bad) => outcome(bad.is_empty(), p, lambda, key, || json!(bad)),
                Err(e) => errored(p, lambda, key, e),
            }
        }
    }
}

/// Compares every coefficient of the two formula families at `t3 = 0`.
/// Returns the names of the coefficients that disagree.
pub fn degeneration_mismatches(
    lambda: &Partition,
    p: &ParamSet,
    variant: CoeffVariant,
) -> Result<Vec<String>> {
    let p3 = ParamSet::new(
        Mode::ThreeParam,
        p.t.clone(),
        p.t0.clone(),
        p.t1.clone(),
        p.t2.clone(),
        Rational::zero(),
    )?;
    let p4 = p3.with_mode(Mode::FourParam)?;
    let n = lambda.n();
    let mut bad = Vec::new();
    let mut cmp = |name: String, a: Rational, b: Rational| {
        if a != b {
            bad.push(name);
        }
    };
    for pair in enumerate_shift_pairs(n, n)? {
        if shift_partition(lambda, &pair).is_none() {
            continue;
        }
        cmp(format!("W{pair:?}"), coeff_w(lambda, &pair, &p3)?, coeff_w(lambda, &pair, &p4)?);
        cmp(format!("V{pair:?}"), coeff_v(lambda, &pair, &p3)?, coeff_v(lambda, &pair, &p4)?);
        let k_set = pair.complement(n);
        for m in 0..=k_set.len() {
            cmp(
                format!("U{k_set:?},{m}"),
                coeff_u(lambda, &k_set, m, &p3, variant)?,
                coeff_u(lambda, &k_set, m, &p4, variant)?,
            );
        }
    }
    cmp("h".into(), gauge_h(lambda, &p3)?, gauge_h(lambda, &p4)?);
    cmp("u".into(), u_potential(lambda, &p3)?, u_potential(lambda, &p4)?);
    for j in 1..=n {
        let up = crate::lattice::ShiftPair { plus: vec![j], minus: vec![] };
        if shift_partition(lambda, &up).is_some() {
            cmp(format!("w+{j}"), w_plus(lambda, j, &p3)?, w_plus(lambda, j, &p4)?);
        }
        cmp(format!("w-{j}"), w_minus(lambda, j, &p3)?, w_minus(lambda, j, &p4)?);
    }
    Ok(bad)
}

/// Worker count from `QBOSON_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("QBOSON_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let (tuples, redraws) = resolve_params(config)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(cap) = thread_cap() {
        builder = builder.num_threads(cap);
    }
    let pool = builder.build().map_err(|e| Error::Config(e.to_string()))?;

    let ctx = Context {
        config,
        tuples: &tuples,
        caches: tuples.iter().map(|p| Arc::new(HlCache::new(p.clone()))).collect(),
        pairs: enumerate_shift_pairs(config.n, config.n)?,
    };

    let mut checks = Vec::new();
    for &check in &config.checks {
        let start = Instant::now();
        let cases = enumerate_cases(check, &ctx);
        let outcomes: Vec<Outcome> =
            pool.install(|| cases.par_iter().map(|c| run_case(c, &ctx)).collect());
        let passed = outcomes.iter().filter(|o| o.pass).count();
        checks.push(CheckReport {
            check,
            cases: outcomes.len(),
            passed,
            failed: outcomes.len() - passed,
            failures: outcomes.into_iter().filter_map(|o| o.failure).collect(),
            wall_ms: config.timing.then(|| start.elapsed().as_millis()),
        });
    }
    let pass = checks.iter().all(|c| c.failed == 0);
    Ok(SuiteReport {
        config: config.clone(),
        tuples: tuples.iter().map(|p| TupleInfo { mode: p.mode, params: p.clone() }).collect(),
        redraws,
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SuiteConfig::new(2, 0, 1).validate().is_err());
        assert!(SuiteConfig::new(2, 2, 3).validate().is_err());
        assert!(SuiteConfig::new(2, 2, 2).validate().is_ok());
        assert!(Check::parse("pieri").is_ok());
        assert!(Check::parse("nope").is_err());
    }

    #[test]
    fn n1_pieri_suite_passes() {
        let mut cfg = SuiteConfig::new(1, 3, 1);
        cfg.modes = vec![Mode::ThreeParam];
        cfg.checks = vec![Check::Pieri];
        let r = run_suite(&cfg).unwrap();
        assert!(r.pass, "{}", r.summary());
        assert_eq!(r.check(Check::Pieri).unwrap().cases, 3 * 4);
    }

    #[test]
    fn literal_variant_fails_with_witness() {
        let mut cfg = SuiteConfig::new(1, 1, 1);
        cfg.modes = vec![Mode::ThreeParam];
        cfg.checks = vec![Check::Pieri];
        cfg.variant = CoeffVariant::LiteralInnerSum;
        let r = run_suite(&cfg).unwrap();
        assert!(!r.pass);
        let f = &r.check(Check::Pieri).unwrap().failures[0];
        assert_eq!(f.lambda, Partition::zero(1));
    }

    #[test]
    fn reports_are_reproducible() {
        let mut cfg = SuiteConfig::new(2, 2, 2);
        cfg.params = ParamSource::Random { seed: 99, count: 2, bound: 13, zero_t2: false };
        let a = serde_json::to_string(&run_suite(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn explicit_degenerate_tuple_is_rejected() {
        let mut cfg = SuiteConfig::new(2, 1, 1);
        let one = Rational::one();
        cfg.modes = vec![Mode::ThreeParam];
        cfg.params = ParamSource::Explicit(vec![ParamJson {
            t: -one.clone(),
            t0: one.clone(),
            t1: one.clone(),
            t2: one.clone(),
            t3: Rational::zero(),
        }]);
        assert!(matches!(run_suite(&cfg), Err(Error::ParameterDegeneracy(_))));
    }
}
