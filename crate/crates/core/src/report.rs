//! Verification runs: configuration, the canonical check list, and the
//! JSON report.

use std::cell::OnceCell;
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cache::{BasisCache, CacheKey};
use crate::error::{HomologyError, LieError, RunError};
use crate::homology::{
    bockstein_homology, splitting_check, subalgebra_generated, verify_splitting, verify_truncated,
    HomologyTable, SeriesCheck,
};
use crate::james::{cup, hopf_unit_certificate, small_alphabets, verify_word_suite, FnClass};
use crate::lie::{
    bracket_closure, filtration_step, ideal_closure, truncated_filtration, x_elements, CmnModel,
};
use crate::plocal::{binomial, factorial, is_p_local_unit, vp, vp_binomial, vp_factorial};
use crate::plocal::{PLocalRational, PrimeConfig};
use crate::series::{omega2_sphere_series, tensor_algebra_series, vn_factor_series, HilbertSeries};
use crate::tensor::{Derivation, GradedSubspace, TensorAlgebra};

pub const DEFAULT_DEGREE_CEILING: u32 = 24;

/// The canonical checks, in run order.
pub const CANONICAL_CHECKS: [&str; 12] = [
    "tensor-oracle",
    "enveloping-l0",
    "filtration-exactness",
    "sigma-decomposability",
    "splitting",
    "bockstein",
    "truncated",
    "valuations",
    "hopf-certificate",
    "james-words",
    "negative-controls",
    "cap-monotonicity",
];

/// Everything a verification run needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub prime: PrimeConfig,
    /// Selected checks; empty means all of [`CANONICAL_CHECKS`].
    pub checks: Vec<String>,
    pub cache_dir: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub degree_ceiling: u32,
}

impl RunConfig {
    pub fn new(prime: PrimeConfig) -> Self {
        RunConfig {
            prime,
            checks: Vec::new(),
            cache_dir: None,
            report: None,
            jobs: None,
            degree_ceiling: DEFAULT_DEGREE_CEILING,
        }
    }

    pub fn validate(&self) -> Result<(), RunError> {
        if self.prime.max_degree > self.degree_ceiling {
            return Err(RunError::Config(format!(
                "max degree {} exceeds the ceiling {}",
                self.prime.max_degree, self.degree_ceiling
            )));
        }
        if let Some(bad) = self
            .checks
            .iter()
            .find(|c| !CANONICAL_CHECKS.contains(&c.as_str()))
        {
            return Err(RunError::Config(format!("unknown check {bad:?}")));
        }
        if self.jobs == Some(0) {
            return Err(RunError::Config("jobs must be positive".into()));
        }
        Ok(())
    }

    /// Selected checks in canonical order, without duplicates.
    pub fn selected(&self) -> Vec<&'static str> {
        CANONICAL_CHECKS
            .iter()
            .copied()
            .filter(|c| self.checks.is_empty() || self.checks.iter().any(|s| s == c))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub d: u64,
    pub expected: i64,
    pub computed: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub degrees: Vec<DegreeRow>,
    /// First failing degree (or index, for checks not graded by degree).
    pub first_fail: Option<u64>,
    pub detail: Vec<String>,
    pub ms: u64,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            status: Status::Pass,
            degrees: Vec::new(),
            first_fail: None,
            detail: Vec::new(),
            ms: 0,
        }
    }

    fn skip(name: &str, why: &str) -> Self {
        let mut c = CheckResult::new(name);
        c.status = Status::Skip;
        c.detail.push(why.to_string());
        c
    }

    fn row(&mut self, d: u64, expected: i64, computed: i64) {
        self.degrees.push(DegreeRow {
            d,
            expected,
            computed,
        });
        if expected != computed {
            self.fail_at(d);
        }
    }

    /// Records a boolean condition as a row with expected 1.
    fn condition(&mut self, d: u64, holds: bool, what: impl Into<String>) {
        let what = what.into();
        if !holds {
            self.detail.push(format!("failed: {what}"));
        }
        self.row(d, 1, holds as i64);
    }

    fn series(&mut self, label: &str, check: &SeriesCheck) {
        self.detail.push(format!("rows from {label}"));
        let n = check.expected.cap().max(check.computed.cap());
        for d in 0..=n {
            self.row(
                d as u64,
                check.expected.coeffs().get(d).copied().unwrap_or(0),
                check.computed.coeffs().get(d).copied().unwrap_or(0),
            );
        }
    }

    fn fail_at(&mut self, d: u64) {
        self.status = Status::Fail;
        self.first_fail = Some(self.first_fail.map_or(d, |f| f.min(d)));
    }

    fn error(&mut self, d: u64, e: impl std::fmt::Display) {
        self.detail.push(format!("error: {e}"));
        self.fail_at(d);
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportConfig {
    pub p: u32,
    pub n: u32,
    pub r: u32,
    pub max_degree: u32,
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub config: ReportConfig,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    /// Process exit code: 0 if every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with wall times zeroed, for comparing runs.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        r.checks.iter_mut().for_each(|c| c.ms = 0);
        r
    }
}

/// Lazily computed objects shared between checks.
pub struct RunContext {
    pub cfg: PrimeConfig,
    cache: Option<BasisCache>,
    model: OnceCell<Result<CmnModel, LieError>>,
    beta: OnceCell<Derivation>,
    l_inf: OnceCell<Result<GradedSubspace, LieError>>,
    u0: OnceCell<Result<GradedSubspace, HomologyError>>,
    u_inf: OnceCell<Result<GradedSubspace, HomologyError>>,
    h0: OnceCell<Result<HomologyTable, HomologyError>>,
    h_inf: OnceCell<Result<HomologyTable, HomologyError>>,
}

impl RunContext {
    pub fn new(cfg: PrimeConfig, cache: Option<BasisCache>) -> Self {
        RunContext {
            cfg,
            cache,
            model: OnceCell::new(),
            beta: OnceCell::new(),
            l_inf: OnceCell::new(),
            u0: OnceCell::new(),
            u_inf: OnceCell::new(),
            h0: OnceCell::new(),
            h_inf: OnceCell::new(),
        }
    }

    /// Degrees are computed one past `max_degree` so that homology in the
    /// top degree sees its incoming boundaries.
    pub fn internal_cap(&self) -> u32 {
        self.cfg.max_degree + 1
    }

    fn cap(&self) -> usize {
        self.cfg.max_degree as usize
    }

    pub fn model(&self) -> Result<&CmnModel, LieError> {
        self.model
            .get_or_init(|| self.build_model())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn build_model(&self) -> Result<CmnModel, LieError> {
        let cap = self.internal_cap();
        let Some(cache) = &self.cache else {
            return CmnModel::build(&self.cfg, cap);
        };
        let alg = TensorAlgebra::uv(&self.cfg, cap)?;
        let u = alg.generator(0)?;
        let v = alg.generator(1)?;
        let x = x_elements(&alg)?;
        let key = |obj| CacheKey::new(self.cfg.p, self.cfg.n, cap, obj);
        let l = cache.get_or_compute(&key("L"), &alg, || {
            bracket_closure(&alg, &[u.clone(), v.clone()], cap)
        })?;
        let l0 = cache.get_or_compute(&key("L0"), &alg, || {
            ideal_closure(&alg, &[u.clone(), v.clone()], &x, cap)
        })?;
        CmnModel::from_parts(&self.cfg, alg, x, l, l0)
    }

    pub fn beta(&self) -> Result<&Derivation, LieError> {
        let m = self.model()?;
        Ok(self
            .beta
            .get_or_init(|| Derivation::bockstein(&m.algebra).expect("u, v algebra")))
    }

    pub fn l_infinity(&self) -> Result<&GradedSubspace, LieError> {
        self.l_inf
            .get_or_init(|| self.model()?.l_infinity())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn lie_to_homology(e: LieError) -> HomologyError {
        match e {
            LieError::Tensor(t) => HomologyError::Tensor(t),
            other => HomologyError::Lie(other.to_string()),
        }
    }

    pub fn u0(&self) -> Result<&GradedSubspace, HomologyError> {
        self.u0
            .get_or_init(|| {
                let m = self.model().map_err(Self::lie_to_homology)?;
                Ok(subalgebra_generated(m.l0(), "L(0)")?.0)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn u_inf(&self) -> Result<&GradedSubspace, HomologyError> {
        self.u_inf
            .get_or_init(|| {
                let l = self.l_infinity().map_err(Self::lie_to_homology)?;
                Ok(subalgebra_generated(l, "L(inf)")?.0)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn h0(&self) -> Result<&HomologyTable, HomologyError> {
        self.h0
            .get_or_init(|| {
                let beta = self.beta().map_err(Self::lie_to_homology)?;
                bockstein_homology(self.u0()?, beta)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn h_inf(&self) -> Result<&HomologyTable, HomologyError> {
        self.h_inf
            .get_or_init(|| {
                let beta = self.beta().map_err(Self::lie_to_homology)?;
                bockstein_homology(self.u_inf()?, beta)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn dims(&self, s: &GradedSubspace) -> HilbertSeries {
        s.dims().truncate(self.cap())
    }
}

/// Runs the selected checks and writes the report if a path is set.
pub fn run_verify(cfg: &RunConfig) -> Result<Report, RunError> {
    cfg.validate()?;
    let run = || {
        let ctx = RunContext::new(cfg.prime, cfg.cache_dir.clone().map(BasisCache::new));
        let checks = cfg
            .selected()
            .into_iter()
            .map(|name| {
                let t = Instant::now();
                let mut c = run_check(&ctx, name);
                c.ms = t.elapsed().as_millis() as u64;
                log::info!("{name}: {:?} ({} ms)", c.status, c.ms);
                c
            })
            .collect();
        Report {
            config: ReportConfig {
                p: cfg.prime.p,
                n: cfg.prime.n,
                r: cfg.prime.r,
                max_degree: cfg.prime.max_degree,
                checks: cfg.selected().iter().map(|s| s.to_string()).collect(),
            },
            checks,
        }
    };
    let report = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| RunError::Config(e.to_string()))?
            .install(run),
        None => run(),
    };
    if let Some(path) = &cfg.report {
        std::fs::write(path, report.to_json() + "\n").map_err(|e| RunError::Io(e.to_string()))?;
    }
    Ok(report)
}

/// Sizes the global thread pool; fails if it was already initialized.
pub fn configure_threads(jobs: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Runs one named check against a shared context.
pub fn run_check(ctx: &RunContext, name: &str) -> CheckResult {
    let mut c = CheckResult::new(name);
    match name {
        "tensor-oracle" => check_tensor_oracle(ctx, &mut c),
        "enveloping-l0" => check_enveloping_l0(ctx, &mut c),
        "filtration-exactness" => check_filtration(ctx, &mut c),
        "sigma-decomposability" => return check_sigma(ctx, c),
        "splitting" => check_splitting(ctx, &mut c),
        "bockstein" => check_bockstein(ctx, &mut c),
        "truncated" => check_truncated(ctx, &mut c),
        "valuations" => check_valuations(ctx, &mut c),
        "hopf-certificate" => check_hopf(ctx, &mut c),
        "james-words" => check_james(&mut c),
        "negative-controls" => return check_negative(ctx, c),
        "cap-monotonicity" => return check_monotonicity(ctx, c),
        other => c.error(0, format!("unknown check {other:?}")),
    }
    c
}

fn check_tensor_oracle(ctx: &RunContext, c: &mut CheckResult) {
    let result = ctx
        .model()
        .map_err(|e| e.to_string())
        .and_then(|m| subalgebra_generated(&m.l, "L").map_err(|e| e.to_string()));
    match result {
        Ok((_, dims)) => {
            let n = ctx.cfg.n;
            let expected =
                tensor_algebra_series(&[2 * n - 1, 2 * n], ctx.cap()).expect("positive degrees");
            c.series(
                "U(free Lie algebra on u, v)",
                &SeriesCheck::compare(expected, dims.dims.truncate(ctx.cap())),
            );
        }
        Err(e) => c.error(0, e),
    }
}

fn check_enveloping_l0(ctx: &RunContext, c: &mut CheckResult) {
    match ctx.u0() {
        Ok(u0) => {
            let cap = ctx.cap();
            let n = ctx.cfg.n as usize;
            // (1 - t^{2n}) / (1 - t^{2n-1} - t^{2n})
            let one = HilbertSeries::one(cap);
            let even = HilbertSeries::monomial(cap, 2 * n, 1);
            let odd = HilbertSeries::monomial(cap, 2 * n - 1, 1);
            let expected = (&one - &even)
                .div(&(&(&one - &odd) - &even))
                .expect("unit constant term");
            c.series("U(L(0))", &SeriesCheck::compare(expected, ctx.dims(u0)));
        }
        Err(e) => c.error(0, e),
    }
}

fn check_filtration(ctx: &RunContext, c: &mut CheckResult) {
    let m = match ctx.model() {
        Ok(m) => m,
        Err(e) => {
            let d = match e {
                LieError::Degeneracy { degree, .. } => degree,
                _ => 0,
            };
            return c.error(d as u64, e);
        }
    };
    filtration_rows(ctx, m, c);
}

fn filtration_rows(ctx: &RunContext, m: &CmnModel, c: &mut CheckResult) {
    let cap = ctx.cfg.max_degree;
    for (i, cert) in m.certificates.iter().enumerate() {
        let (upper, lower) = (&m.stages[i], &m.stages[i + 1]);
        c.detail.push(format!(
            "stage {}: dim L({})_d = dim L({})_d + [d = {}] + [d = {}]",
            cert.k,
            cert.k,
            cert.k + 1,
            ctx.cfg.tau_degree(cert.k),
            if cert.k == 0 {
                "-".to_string()
            } else {
                ctx.cfg.sigma_degree(cert.k).to_string()
            }
        ));
        for d in 0..=cap {
            let marks = upper
                .marked()
                .iter()
                .filter(|(_, e)| e.degree() == d)
                .count();
            c.row(
                d as u64,
                (lower.subspace.dim(d) + marks) as i64,
                upper.subspace.dim(d) as i64,
            );
        }
        if !cert.bracket_closed {
            c.detail
                .push(format!("L({}) is not bracket-closed", cert.k + 1));
            c.fail_at(0);
        }
        if !cert.kills_decomposables {
            c.detail
                .push(format!("L({}) misses part of [L({0}), L({0})]", cert.k + 1));
            c.fail_at(0);
        }
    }
}

fn check_sigma(ctx: &RunContext, mut c: CheckResult) -> CheckResult {
    let m = match ctx.model() {
        Ok(m) => m,
        Err(e) => {
            c.error(0, e);
            return c;
        }
    };
    let sigmas: Vec<_> = m
        .stages
        .iter()
        .filter_map(|s| s.sigma.clone().map(|e| (s.k, e)))
        .filter(|(_, e)| e.degree() <= ctx.cfg.max_degree)
        .collect();
    if sigmas.is_empty() {
        return CheckResult::skip(&c.name, "no sigma_k fits under the max degree");
    }
    sigma_rows(m, &sigmas, &mut c);
    c
}

/// For each `(k, sigma)`: `sigma ∈ [L(k-1), L(k-1)]`, `sigma ∉ [L(k), L(k)]`,
/// and at `p = 3` the identity `sigma_1 = [x_1, x_2]`.
fn sigma_rows(m: &CmnModel, sigmas: &[(u32, crate::NCPoly)], c: &mut CheckResult) {
    for (k, sigma) in sigmas {
        let k = *k as usize;
        let d = sigma.degree() as u64;
        let inside = m.stages[k - 1].decomposables.contains(sigma);
        let outside = m.stages[k].decomposables.contains(sigma).map(|b| !b);
        c.condition(
            d,
            inside == Ok(true),
            format!("sigma_{k} ∈ [L({}), L({})]", k - 1, k - 1),
        );
        c.condition(
            d,
            outside == Ok(true),
            format!("sigma_{k} ∉ [L({k}), L({k})]"),
        );
        if k == 1 && m.cfg.p == 3 {
            let identity = match (m.x(1), m.x(2)) {
                (Some(x1), Some(x2)) => m.algebra.commutator(x1, x2).as_ref() == Ok(sigma),
                _ => false,
            };
            c.condition(d, identity, "sigma_1 = [x_1, x_2]");
        }
    }
}

fn check_splitting(ctx: &RunContext, c: &mut CheckResult) {
    match (ctx.u0(), ctx.u_inf()) {
        (Ok(u0), Ok(uinf)) => {
            let check = splitting_check(&ctx.cfg, &u0.dims(), &uinf.dims());
            c.series("U(L(0)) vs factor × U(L(∞))", &check);
        }
        (Err(e), _) | (_, Err(e)) => {
            let d = match e {
                HomologyError::NotBracketClosed { degree } => degree,
                _ => 0,
            };
            c.error(d as u64, e)
        }
    }
}

fn check_bockstein(ctx: &RunContext, c: &mut CheckResult) {
    let cap = ctx.cap();
    match ctx.h0() {
        Ok(h) => c.series(
            "H(U(L(0)), β)",
            &SeriesCheck::compare(
                omega2_sphere_series(&ctx.cfg),
                h.homology_series().truncate(cap),
            ),
        ),
        Err(e) => c.error(0, e),
    }
    match ctx.h_inf() {
        Ok(h) => c.series(
            "H(U(L(∞)), β)",
            &SeriesCheck::compare(HilbertSeries::one(cap), h.homology_series().truncate(cap)),
        ),
        Err(e) => c.error(0, e),
    }
}

fn check_truncated(ctx: &RunContext, c: &mut CheckResult) {
    let m = match ctx.model() {
        Ok(m) => m,
        Err(e) => return c.error(0, e),
    };
    let s = 1;
    let result = truncated_filtration(m, s)
        .map_err(|e| e.to_string())
        .and_then(|t| {
            verify_truncated(&ctx.cfg, &t)
                .map(|check| (t, check))
                .map_err(|e| e.to_string())
        });
    match result {
        Ok((t, check)) => {
            c.series(
                &format!("U(L_{s}(0)) vs tensor algebra"),
                &check.tensor_oracle,
            );
            c.series(
                &format!("U(L_{s}(0)) vs factor × U(L_{s}({}))", s + 1),
                &check.factorization,
            );
            let d = ctx.cfg.tau_degree(s);
            c.condition(
                d,
                t.tau_line_absent,
                format!("tau_{s} line absent from L_{s}"),
            );
            c.condition(0, t.inside_l_infinity, format!("L_{s}({}) ⊆ L(∞)", s + 1));
        }
        Err(e) => c.error(0, e),
    }
}

/// Largest run prime also fed to the arithmetic checks; beyond it the
/// exact binomials `C(i p^2, p^2)` run to hundreds of thousands of digits.
const MAX_ARITHMETIC_PRIME: u32 = 13;

/// Primes exercised by the arithmetic checks: 3, 5 and a small run prime.
fn arithmetic_primes(cfg: &PrimeConfig) -> Vec<u64> {
    let mut ps = vec![3, 5];
    if cfg.p <= MAX_ARITHMETIC_PRIME && !ps.contains(&(cfg.p as u64)) {
        ps.push(cfg.p as u64);
    }
    ps
}

fn check_valuations(ctx: &RunContext, c: &mut CheckResult) {
    let mut index = 0u64;
    for p in arithmetic_primes(&ctx.cfg) {
        for s in 1..=2u32 {
            let ps = p.pow(s);
            let bad = (1..=200u64).find(|&i| {
                let v = vp_binomial(p, ps * i, ps);
                v.ok() != Some(vp(p, &BigInt::from(i)).unwrap_or(u64::MAX))
            });
            index += 1;
            c.condition(
                index,
                bad.is_none(),
                format!("v_{p}(C({ps} i, {ps})) = v_{p}(i) for i <= 200 (first bad: {bad:?})"),
            );
        }
        let bad = (0..=40u64).find(|&m| {
            let direct = vp(p, &BigInt::from(factorial(m))).unwrap_or(u64::MAX);
            direct != vp_factorial(p, m)
        });
        index += 1;
        c.condition(
            index,
            bad.is_none(),
            format!("Legendre formula for m! at p = {p}, m <= 40 (first bad: {bad:?})"),
        );
        for k in 1..=3u32 {
            let unit = binomial(p.pow(k), p.pow(k - 1))
                .ok()
                .and_then(|b| PLocalRational::new(p, BigInt::from(b), BigInt::from(2 * p)).ok());
            index += 1;
            c.condition(
                index,
                unit.as_ref().is_some_and(is_p_local_unit),
                format!("C({p}^{k}, {p}^{}) / 2{p} is a {p}-local unit", k - 1),
            );
        }
    }
}

fn check_hopf(ctx: &RunContext, c: &mut CheckResult) {
    let mut index = 0u64;
    for p in arithmetic_primes(&ctx.cfg) {
        for s in 1..=2u32 {
            index += 1;
            match hopf_unit_certificate(p, s, 20) {
                Ok(cert) => c.condition(
                    index,
                    cert.passed(),
                    format!(
                        "v_{p}(u_i) = 0 for i <= 20 at s = {s} (first bad: {:?})",
                        cert.first_non_unit()
                    ),
                ),
                Err(e) => c.error(index, e),
            }
        }
        index += 1;
        let e = |i| FnClass::generator(p, i);
        let mut assoc = true;
        'outer: for i in 0..=30u64 {
            for j in 0..=30 - i {
                for k in 0..=30 - i - j {
                    let lhs = cup(&e(i), &e(j)).and_then(|a| cup(&a, &e(k)));
                    let rhs = cup(&e(j), &e(k)).and_then(|b| cup(&e(i), &b));
                    let comm = cup(&e(i), &e(j)) == cup(&e(j), &e(i));
                    if lhs.is_err() || lhs != rhs || !comm {
                        assoc = false;
                        break 'outer;
                    }
                }
            }
        }
        c.condition(
            index,
            assoc,
            format!("cup products at p = {p} associative and commutative for i + j + k <= 30"),
        );
    }
}

fn check_james(c: &mut CheckResult) {
    let rep = verify_word_suite(&small_alphabets(3), 5);
    c.detail
        .push("rows: word length, cases, cases passed".into());
    for &(len, cases, ok) in &rep.by_length {
        c.row(len as u64, cases as i64, ok as i64);
    }
    c.detail
        .extend(rep.failures.iter().map(|f| format!("failed: {f}")));
}

fn check_negative(ctx: &RunContext, mut c: CheckResult) -> CheckResult {
    let m = match ctx.model() {
        Ok(m) => m,
        Err(e) => {
            c.error(0, e);
            return c;
        }
    };
    let cfg = &ctx.cfg;

    // Dropping the lowest basis vector of L(∞) must break the splitting.
    let mut ran = false;
    let lowest = ctx.l_infinity().map(|linf| {
        (1..=cfg.max_degree)
            .find(|&d| linf.dim(d) > 0)
            .map(|d| (linf, d))
    });
    match lowest {
        Ok(Some((linf, d))) => {
            ran = true;
            let mut basis = linf.basis(d);
            basis.remove(0);
            let check = linf
                .with_degree(d, &basis)
                .map_err(|e| e.to_string())
                .and_then(|broken| {
                    verify_splitting(cfg, m.l0(), &broken).map_err(|e| e.to_string())
                });
            match check {
                Ok(check) => {
                    c.detail.push(format!(
                        "L(∞) minus one vector in degree {d}: splitting first fails at {:?}",
                        check.first_fail
                    ));
                    c.condition(
                        d as u64,
                        check.first_fail.is_some(),
                        "perturbed L(∞) fails the splitting",
                    );
                }
                Err(e) => c.error(d as u64, e),
            }
        }
        Ok(None) => c
            .detail
            .push("L(∞) is zero below the max degree; drop control skipped".into()),
        Err(e) => c.error(0, e),
    }

    // Corrupting one coefficient of sigma_1 must break exactness or the
    // sigma checks.
    let stage1 = m.stages.get(1).filter(|s| {
        s.sigma
            .as_ref()
            .is_some_and(|e| e.degree() <= cfg.max_degree)
    });
    let Some(stage1) = stage1 else {
        c.detail
            .push("sigma_1 above the max degree; corruption control skipped".into());
        if !ran {
            c.status = Status::Skip;
        }
        return c;
    };
    let sigma = stage1.sigma.clone().expect("filtered");
    let d = sigma.degree();
    let (i, _) = sigma.indexed_terms().next().expect("sigma_1 is nonzero");
    let bump = crate::NCPoly::from_dense(d, i, &[1]);
    let corrupted = m.algebra.add(&sigma, &bump).expect("same degree");
    let mut exactness = CheckResult::new("filtration-exactness");
    let mut stage = stage1.clone();
    stage.sigma = Some(corrupted.clone());
    match filtration_step(cfg, &stage, &m.weights) {
        Ok((_, cert)) => {
            for (dd, got, want) in &cert.codims {
                if *dd <= cfg.max_degree {
                    exactness.row(*dd as u64, *want as i64, *got as i64);
                }
            }
        }
        Err(e) => exactness.error(d as u64, e),
    }
    let mut sigma_check = CheckResult::new("sigma-decomposability");
    sigma_rows(m, &[(1, corrupted)], &mut sigma_check);
    let caught = !exactness.passed() || !sigma_check.passed();
    c.detail.push(format!(
        "sigma_1 with one coefficient changed: exactness {:?}, sigma checks {:?}",
        exactness.status, sigma_check.status
    ));
    c.condition(
        d as u64,
        caught,
        "corrupted sigma_1 fails exactness or decomposability",
    );
    c
}

fn check_monotonicity(ctx: &RunContext, mut c: CheckResult) -> CheckResult {
    let big = ctx.cfg.max_degree;
    let small = if big > 12 { 12 } else { big / 2 };
    let small_cfg = match ctx.cfg.with_max_degree(small) {
        Ok(s) => s,
        Err(_) => return CheckResult::skip(&c.name, "max degree too small for a second cap"),
    };
    let other = RunContext::new(small_cfg, None);
    let collect = |r: &RunContext| -> Result<Vec<(String, HilbertSeries)>, String> {
        let cap = small as usize;
        let m = r.model().map_err(|e| e.to_string())?;
        let mut out = Vec::new();
        for s in &m.stages {
            out.push((format!("L({})", s.k), r.dims(&s.subspace).truncate(cap)));
        }
        out.push((
            "U(L(0))".into(),
            r.u0().map_err(|e| e.to_string())?.dims().truncate(cap),
        ));
        out.push((
            "U(L(∞))".into(),
            r.u_inf().map_err(|e| e.to_string())?.dims().truncate(cap),
        ));
        out.push((
            "H(U(L(0)))".into(),
            r.h0()
                .map_err(|e| e.to_string())?
                .homology_series()
                .truncate(cap),
        ));
        out.push((
            "H(U(L(∞)))".into(),
            r.h_inf()
                .map_err(|e| e.to_string())?
                .homology_series()
                .truncate(cap),
        ));
        Ok(out)
    };
    match (collect(ctx), collect(&other)) {
        (Ok(a), Ok(b)) => {
            c.detail.push(format!(
                "degrees <= {small}: cap {big} (expected) vs cap {small} (computed)"
            ));
            for (name, sa) in &a {
                // stages beyond the small run's last one equal its last stage
                let sb = b
                    .iter()
                    .find(|(n, _)| n == name)
                    .or_else(|| {
                        name.starts_with("L(")
                            .then(|| b.iter().rfind(|(n, _)| n.starts_with("L(")))
                            .flatten()
                    })
                    .map(|(_, s)| s);
                match sb.and_then(|sb| sa.first_difference(sb).map(|d| (d, sb))) {
                    None if sb.is_some() => {}
                    None => {
                        c.detail.push(format!("{name} missing at cap {small}"));
                        c.fail_at(0);
                    }
                    Some((d, sb)) => {
                        c.detail.push(format!("{name} differs"));
                        c.row(d as u64, sa.coeff(d), sb.coeff(d));
                    }
                }
            }
            let u0a = &a.iter().find(|(n, _)| n == "U(L(0))").expect("present").1;
            let u0b = &b.iter().find(|(n, _)| n == "U(L(0))").expect("present").1;
            for d in 0..=small as usize {
                c.row(d as u64, u0a.coeff(d), u0b.coeff(d));
            }
        }
        (Err(e), _) | (_, Err(e)) => c.error(0, e),
    }
    c
}

/// Hilbert series by name, truncated to `max_degree`: `omega2`, `Vn`,
/// `tensor`, `UL0`, `ULinf`, or `truncated-<s>` for `U(L_s(0))`.
pub fn named_series(ctx: &RunContext, which: &str) -> Result<HilbertSeries, RunError> {
    let cfg = &ctx.cfg;
    let cap = ctx.cap();
    Ok(match which {
        "omega2" => omega2_sphere_series(cfg),
        "Vn" => vn_factor_series(cfg, 0),
        "tensor" => tensor_algebra_series(&[2 * cfg.n - 1, 2 * cfg.n], cap)
            .map_err(|e| RunError::Config(e.to_string()))?,
        "UL0" => ctx.dims(ctx.u0()?),
        "ULinf" => ctx.dims(ctx.u_inf()?),
        other => {
            let s: u32 = other
                .strip_prefix("truncated-")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| RunError::Config(format!("unknown series {other:?}")))?;
            let t = truncated_filtration(ctx.model()?, s)?;
            subalgebra_generated(&t.stages[0], "L_s(0)")?
                .1
                .dims
                .truncate(cap)
        }
    })
}

/// Subspace by name: `L`, `Linf`, `UL0`, `ULinf`, or `L<k>` for stage `k`.
pub fn named_subspace<'a>(
    ctx: &'a RunContext,
    which: &str,
) -> Result<&'a GradedSubspace, RunError> {
    let m = ctx.model()?;
    Ok(match which {
        "L" => &m.l,
        "Linf" => ctx.l_infinity()?,
        "UL0" => ctx.u0()?,
        "ULinf" => ctx.u_inf()?,
        other => {
            let k: u32 = other
                .strip_prefix('L')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| RunError::Config(format!("unknown subspace {other:?}")))?;
            m.stage(k)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(d: u32, checks: &[&str]) -> Report {
        let mut cfg = RunConfig::new(PrimeConfig::new(3, 1, 1, d).unwrap());
        cfg.checks = checks.iter().map(|s| s.to_string()).collect();
        run_verify(&cfg).unwrap()
    }

    #[test]
    fn all_checks_pass_at_small_degree() {
        let r = run(10, &[]);
        for c in &r.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.detail);
        }
        assert_eq!(r.checks.len(), CANONICAL_CHECKS.len());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn selection_and_validation() {
        let r = run(4, &["splitting", "splitting"]);
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].degrees.len(), 5);
        let mut bad = RunConfig::new(PrimeConfig::new(3, 1, 1, 30).unwrap());
        assert!(matches!(run_verify(&bad), Err(RunError::Config(_))));
        bad.prime.max_degree = 10;
        bad.checks = vec!["nope".into()];
        assert!(matches!(run_verify(&bad), Err(RunError::Config(_))));
    }

    #[test]
    fn report_is_deterministic() {
        let a = run(8, &[]).without_timings();
        let b = run(8, &[]).without_timings();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn named_series_examples() {
        let ctx = RunContext::new(PrimeConfig::new(3, 1, 1, 8).unwrap(), None);
        let tensor = named_series(&ctx, "tensor").unwrap();
        assert_eq!(tensor.coeffs(), &[1, 1, 2, 3, 5, 8, 13, 21, 34]);
        assert_eq!(named_series(&ctx, "truncated-1").unwrap().coeff(4), 3);
        assert!(named_series(&ctx, "bogus").is_err());
        assert_eq!(named_subspace(&ctx, "L0").unwrap().dim(1), 1);
        assert_eq!(named_subspace(&ctx, "L1").unwrap().dim(1), 0);
    }
}
