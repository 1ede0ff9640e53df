//! Verification suites: seeded batches of exact and numeric identity checks
//! with a canonical JSON report.
//!
//! Every case draws its data from a stream labelled by the case group, so a
//! report depends only on the seed and the configuration. Batches that hit a
//! non-generic parameter point are redrawn; a batch that stays non-generic
//! after [`MAX_RETRIES`](crate::random::MAX_RETRIES) draws is reported as
//! skipped.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cfactors::{check_recurrences, kprincipal_closed};
use crate::diffops::{check_lemma22, check_third_identity, check_triangularity as diff_triangular, DifferenceKind, Direction};
use crate::error::{Error, Result};
use crate::intops::{check_annihilation, check_triangularity as int_triangular, IntegralKind};
use crate::koornwinder::{
    build_interpolation, build_khat, difference_actions, integral_actions, koornwinder, koornwinder_oracle,
    mimachi_check, principal_specialize, Method,
};
use crate::params::ParamPoint;
use crate::partition::{box_partitions, Partition};
use crate::quadrature::{
    adjointness_check, awtrans_check, gustafson_check, norm_check, typei_check, Adjointness, NumericReport,
    QuadratureSpec,
};
use crate::random::Sampler;
use crate::scalar::{rat, Field, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseStatus {
    Pass,
    Fail,
    SkippedNongeneric,
}

impl CaseStatus {
    pub fn name(self) -> &'static str {
        match self {
            CaseStatus::Pass => "pass",
            CaseStatus::Fail => "fail",
            CaseStatus::SkippedNongeneric => "skipped-nongeneric",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub id: String,
    pub status: CaseStatus,
    pub detail: Value,
}

impl CaseResult {
    fn check(id: String, ok: bool, detail: Value) -> Self {
        let status = if ok { CaseStatus::Pass } else { CaseStatus::Fail };
        CaseResult { id, status, detail }
    }

    fn from_error(id: String, e: &Error) -> Self {
        let status = match e {
            Error::NonGenericParameters(_) => CaseStatus::SkippedNongeneric,
            _ => CaseStatus::Fail,
        };
        CaseResult { id, status, detail: json!({ "error": e.to_string() }) }
    }

    fn numeric(id: String, r: &NumericReport) -> Self {
        Self::check(id, r.matched, r.to_json())
    }

    pub fn to_json(&self) -> Value {
        json!({ "id": self.id, "status": self.status.name(), "detail": self.detail })
    }
}

/// Outcome of one suite; cases are kept sorted by id.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteResult {
    pub fn new(suite: &str, mut cases: Vec<CaseResult>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        SuiteResult { suite: suite.to_string(), cases }
    }

    /// True iff no case failed.
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != CaseStatus::Fail)
    }

    pub fn count(&self, status: CaseStatus) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "pass": self.passed(),
            "counts": {
                "pass": self.count(CaseStatus::Pass),
                "fail": self.count(CaseStatus::Fail),
                "skipped-nongeneric": self.count(CaseStatus::SkippedNongeneric),
            },
            "cases": self.cases.iter().map(CaseResult::to_json).collect::<Vec<_>>(),
        })
    }

    /// Compact canonical JSON (keys sorted).
    pub fn to_canonical_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("report serializes")
    }
}

/// Knobs shared by all suites. `None` selects the per-check defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Quadrature grid for every numeric check.
    pub grid: Option<usize>,
    /// Relative tolerance for every numeric check.
    pub tol: Option<f64>,
    /// `(M, N)`: partitions with `λ_1 <= M` in `n <= N` variables.
    pub max_box: Option<(u32, usize)>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 1, grid: None, tol: None, max_box: None }
    }
}

impl VerifyConfig {
    pub fn with_seed(seed: u64) -> Self {
        VerifyConfig { seed, ..Self::default() }
    }

    fn boxed(&self, default: (u32, usize)) -> (u32, usize) {
        self.max_box.unwrap_or(default)
    }

    fn spec(&self, default_grid: usize) -> Result<QuadratureSpec> {
        QuadratureSpec::new(self.grid.unwrap_or(default_grid))
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn sampler(&self, label: &str) -> Sampler {
        Sampler::labelled(self.seed, label)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma22,
    Triangularity,
    Adjointness,
    Gustafson,
    TypeI,
    AwTrans,
    Actions,
    Recurrences,
    ClosedForms,
    Construction,
    Mimachi,
    Annihilation,
    Interpolation,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 13] = [
        Suite::Lemma22,
        Suite::Triangularity,
        Suite::Adjointness,
        Suite::Gustafson,
        Suite::TypeI,
        Suite::AwTrans,
        Suite::Actions,
        Suite::Recurrences,
        Suite::ClosedForms,
        Suite::Construction,
        Suite::Mimachi,
        Suite::Annihilation,
        Suite::Interpolation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma22 => "lemma22",
            Suite::Triangularity => "triangularity",
            Suite::Adjointness => "adjointness",
            Suite::Gustafson => "gustafson",
            Suite::TypeI => "typeI",
            Suite::AwTrans => "awtrans",
            Suite::Actions => "actions",
            Suite::Recurrences => "recurrences",
            Suite::ClosedForms => "closedforms",
            Suite::Construction => "construction",
            Suite::Mimachi => "mimachi",
            Suite::Annihilation => "annihilation",
            Suite::Interpolation => "interpolation",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Runs one suite (or all of them) under `cfg`.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteResult {
    let cases = match suite {
        Suite::Lemma22 => constant_identity_cases(cfg),
        Suite::Triangularity => {
            let mut v = difference_triangularity_cases(cfg);
            v.extend(integral_triangularity_cases(cfg));
            v
        }
        Suite::Adjointness => adjointness_cases(cfg),
        Suite::Gustafson => gustafson_cases(cfg),
        Suite::TypeI => typei_cases(cfg),
        Suite::AwTrans => awtrans_cases(cfg),
        Suite::Actions => action_cases(cfg),
        Suite::Recurrences => recurrence_cases(cfg),
        Suite::ClosedForms => {
            let mut v = principal_cases(cfg);
            v.extend(norm_cases(cfg));
            v
        }
        Suite::Construction => construction_cases(cfg),
        Suite::Mimachi => mimachi_cases(cfg),
        Suite::Annihilation => annihilation_cases(cfg),
        Suite::Interpolation => interpolation_cases(cfg),
        Suite::All => Suite::INDIVIDUAL.iter().flat_map(|s| run_suite(*s, cfg).cases).collect(),
    };
    SuiteResult::new(suite.name(), cases)
}

fn lambda_tag(l: &Partition) -> String {
    let parts: Vec<String> = l.parts().iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn point_json(p: &ParamPoint) -> Value {
    serde_json::to_value(p.to_json()).expect("plain strings")
}

/// Partitions with `λ_1 <= m` and `ℓ(λ) <= n`.
fn shapes(m: u32, n: usize) -> Vec<Partition> {
    box_partitions(m, n)
}

/// Runs `batch` at a generic point from `draw`, retrying on
/// non-genericity; a batch that never becomes generic yields one skipped
/// case under `group`.
fn generic_batch(
    sampler: &mut Sampler,
    group: &str,
    draw: impl FnMut(&mut Sampler) -> ParamPoint,
    mut batch: impl FnMut(&ParamPoint) -> Result<Vec<CaseResult>>,
) -> Vec<CaseResult> {
    match sampler.retry_generic(draw, |p| batch(p)) {
        Ok((_, cases)) => cases,
        Err(e) => vec![CaseResult::from_error(group.to_string(), &e)],
    }
}

fn exact(s: &mut Sampler) -> ParamPoint {
    s.exact_point()
}

/// Number of seeded points for the exact per-λ checks.
const EXACT_POINTS: usize = 3;

/// Construction versus the eigenfunction oracle.
pub fn construction_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let (m, nmax) = cfg.boxed((3, 3));
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut s = cfg.sampler(&format!("construction/{n}"));
        for k in 0..EXACT_POINTS {
            let group = format!("construction/n={n}/point={k}");
            out.extend(generic_batch(&mut s, &group, exact, |p| {
                let mut cases = Vec::new();
                for l in shapes(m, n) {
                    let a = build_khat(&l, n, p)?;
                    let b = koornwinder_oracle(&l, n, p)?;
                    let ok = a.poly == b.poly && a.is_monic();
                    cases.push(CaseResult::check(
                        format!("{group}/lambda={}", lambda_tag(&l)),
                        ok,
                        json!({ "params": point_json(p), "terms": a.poly.len() }),
                    ));
                }
                Ok(cases)
            }));
        }
    }
    out
}

/// Principal specialization of the construction against the closed form.
pub fn principal_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let (m, nmax) = cfg.boxed((3, 3));
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut s = cfg.sampler(&format!("principal/{n}"));
        for k in 0..EXACT_POINTS {
            let group = format!("principal-specialization/n={n}/point={k}");
            out.extend(generic_batch(&mut s, &group, exact, |p| {
                let mut cases = Vec::new();
                for l in shapes(m, n) {
                    let k = koornwinder(&l, n, p, Method::Construction)?;
                    let left = principal_specialize(&k, n, p)?;
                    let right = kprincipal_closed(&l, n, p)?;
                    cases.push(CaseResult::check(
                        format!("{group}/lambda={}", lambda_tag(&l)),
                        left == right,
                        json!({ "left": left.to_string(), "right": right.to_string() }),
                    ));
                }
                Ok(cases)
            }));
        }
    }
    out
}

/// Grids used by default for the Koornwinder density in `n` variables.
fn default_grid(n: usize) -> usize {
    match n {
        0 | 1 => 128,
        2 => 96,
        _ => 48,
    }
}

/// Quadrature norms against the closed form, `n <= 2`, `|λ| <= 3`.
pub fn norm_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for n in 1..=2usize {
        let mut s = cfg.sampler(&format!("norm/{n}"));
        let group = format!("norm/n={n}");
        let spec = match cfg.spec(default_grid(n)) {
            Ok(x) => x,
            Err(e) => return vec![CaseResult::from_error(group, &e)],
        };
        let tol = cfg.tol(1e-6);
        out.extend(generic_batch(&mut s, &group, |s| s.numeric_point(&rat(1, 2)), |p| {
            let mut cases = Vec::new();
            for l in shapes(3, n).into_iter().filter(|l| l.size() <= 3) {
                let r = norm_check(&l, n, p, Method::Oracle, &spec, tol)?;
                cases.push(CaseResult::numeric(format!("{group}/lambda={}", lambda_tag(&l)), &r));
            }
            Ok(cases)
        }));
    }
    out
}

/// The constant-term identities of the difference operators at pole-free
/// rational points.
pub fn constant_identity_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    const POINTS: usize = 20;
    let mut out = Vec::new();
    for n in 1..=4usize {
        let mut s = cfg.sampler(&format!("lemma22/{n}"));
        let p = s.exact_point();
        let zs: Vec<Vec<Rational>> = (0..POINTS).map(|_| s.pole_free_point(n)).collect();
        let id = format!("lemma22/n={n}");
        out.push(match check_lemma22(n, &p, &zs) {
            Ok(ok) => CaseResult::check(id, ok, json!({ "params": point_json(&p), "points": POINTS })),
            Err(e) => CaseResult::from_error(id, &e),
        });
        let ts = s.exact_params(n + 1);
        let id = format!("third-identity/n={n}");
        out.push(match check_third_identity(&ts, &zs) {
            Ok(ok) => CaseResult::check(
                id,
                ok,
                json!({ "t": ts.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "points": POINTS }),
            ),
            Err(e) => CaseResult::from_error(id, &e),
        });
    }
    out
}

/// Triangularity and leading coefficients of `D^-`, `D^0`, `D^+`.
pub fn difference_triangularity_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let (m, nmax) = cfg.boxed((3, 3));
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut s = cfg.sampler(&format!("difference-triangularity/{n}"));
        let group = format!("difference-triangularity/n={n}");
        out.extend(generic_batch(&mut s, &group, exact, |p| {
            let kinds = [
                ("minus", DifferenceKind::Minus),
                ("zero", DifferenceKind::Zero(p.t_r(0).clone(), p.t_r(1).clone())),
                ("plus", DifferenceKind::Plus),
            ];
            let mut cases = Vec::new();
            for l in shapes(m, n) {
                for (name, kind) in &kinds {
                    let ok = diff_triangular(kind, Direction::Q, n, &l, p)?;
                    cases.push(CaseResult::check(
                        format!("{group}/{name}/lambda={}", lambda_tag(&l)),
                        ok,
                        json!({ "params": point_json(p) }),
                    ));
                }
            }
            Ok(cases)
        }));
    }
    out
}

/// Triangularity and leading coefficients of `I^+`, `I^0`, `I^-`.
pub fn integral_triangularity_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let (m, nmax) = cfg.boxed((3, 2));
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut s = cfg.sampler(&format!("integral-triangularity/{n}"));
        let group = format!("integral-triangularity/n={n}");
        out.extend(generic_batch(&mut s, &group, exact, |p| {
            let kinds = [
                ("plus", IntegralKind::Plus),
                ("zero", IntegralKind::Zero(p.t_r(0).clone(), p.t_r(1).clone())),
                ("minus", IntegralKind::Minus),
            ];
            let mut cases = Vec::new();
            for l in shapes(m, n) {
                for (name, kind) in &kinds {
                    let ok = int_triangular(kind, n, &l, p)?;
                    cases.push(CaseResult::check(
                        format!("{group}/{name}/lambda={}", lambda_tag(&l)),
                        ok,
                        json!({ "params": point_json(p) }),
                    ));
                }
            }
            Ok(cases)
        }));
    }
    out
}

/// The four adjointness relations by quadrature, `n <= 2`, random `f`, `g`
/// with `|λ| <= 2`.
pub fn adjointness_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    const POINTS: usize = 2;
    let tol = cfg.tol(1e-6);
    let mut out = Vec::new();
    for n in 1..=2usize {
        let mut s = cfg.sampler(&format!("adjointness/{n}"));
        let spec = match cfg.spec(default_grid(n)) {
            Ok(x) => x,
            Err(e) => return vec![CaseResult::from_error(format!("adjointness/n={n}"), &e)],
        };
        for k in 0..POINTS {
            let group = format!("adjointness/n={n}/point={k}");
            let f = s.bcpoly(n, 2, 2);
            let g = s.bcpoly(n, 2, 2);
            let h = s.bcpoly(n - 1, 2, 2);
            out.extend(generic_batch(&mut s, &group, |s| s.numeric_point(&rat(3, 10)), |p| {
                let mut cases = Vec::new();
                for which in [Adjointness::DiffZero, Adjointness::DiffPlusMinus, Adjointness::IntZero] {
                    let r = adjointness_check(which, &f, &g, p, &spec, tol)?;
                    cases.push(CaseResult::numeric(format!("{group}/{}", which.name()), &r));
                }
                let r = adjointness_check(Adjointness::IntPlusMinus, &f, &h, p, &spec, tol)?;
                cases.push(CaseResult::numeric(format!("{group}/{}", Adjointness::IntPlusMinus.name()), &r));
                Ok(cases)
            }));
        }
    }
    out
}

/// `<1>'` by quadrature against the closed form, `n <= 3`.
pub fn gustafson_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    const POINTS: usize = 2;
    let mut out = Vec::new();
    for n in 1..=3usize {
        let mut s = cfg.sampler(&format!("gustafson/{n}"));
        let tol = cfg.tol(if n <= 2 { 1e-6 } else { 1e-4 });
        for k in 0..POINTS {
            let id = format!("gustafson/n={n}/point={k}");
            let p = s.numeric_point(&rat(1, 2));
            out.push(match cfg.spec(default_grid(n)).and_then(|spec| gustafson_check(n, &p, &spec, tol)) {
                Ok(r) => CaseResult::numeric(id, &r),
                Err(e) => CaseResult::from_error(id, &e),
            });
        }
    }
    out
}

/// Draws `q` and `2n + 2` parameters for the type I integral.
fn type_one_data(s: &mut Sampler, n: usize) -> (Rational, Vec<Rational>) {
    let q = s.rational_in(&rat(1, 4), &rat(1, 2), false);
    let ts = s.numeric_params(2 * n + 2, &rat(1, 2));
    (q, ts)
}

fn type_one_grid(n: usize) -> usize {
    match n {
        0 | 1 => 128,
        _ => 64,
    }
}

/// The type I integral by quadrature against its closed form, `n <= 2`.
pub fn typei_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    const POINTS: usize = 2;
    let mut out = Vec::new();
    for n in 0..=2usize {
        let mut s = cfg.sampler(&format!("typeI/{n}"));
        let tol = cfg.tol(if n <= 1 { 1e-6 } else { 1e-5 });
        for k in 0..POINTS {
            let id = format!("typeI/n={n}/point={k}");
            let (q, ts) = type_one_data(&mut s, n);
            out.push(match cfg.spec(type_one_grid(n)).and_then(|spec| typei_check(&ts, &q, &spec, tol)) {
                Ok(r) => CaseResult::numeric(id, &r),
                Err(e) => CaseResult::from_error(id, &e),
            });
        }
    }
    out
}

/// The kernel integral, numeric left side against the exact right side.
pub fn awtrans_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    const POINTS: usize = 2;
    let tol = cfg.tol(1e-5);
    let mut out = Vec::new();
    for (n, m) in [(1usize, 0usize), (1, 1), (2, 1), (1, 2)] {
        let mut s = cfg.sampler(&format!("awtrans/{n}/{m}"));
        for k in 0..POINTS {
            let id = format!("awtrans/n={n}/m={m}/point={k}");
            let (q, ts) = type_one_data(&mut s, n);
            let ys: Vec<Rational> = loop {
                let ys: Vec<Rational> = (0..m).map(|_| s.rational_in(&rat(1, 2), &rat(9, 10), true)).collect();
                if (0..m).all(|i| (i + 1..m).all(|j| ys[i] != ys[j])) {
                    break ys;
                }
            };
            out.push(match cfg.spec(type_one_grid(n)).and_then(|spec| awtrans_check(n, &ys, &ts, &q, &spec, tol)) {
                Ok(r) => CaseResult::numeric(id, &r),
                Err(e) => CaseResult::from_error(id, &e),
            });
        }
    }
    out
}

/// Difference and integral operator actions on the oracle polynomials.
pub fn action_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let (m, nmax) = cfg.boxed((2, 2));
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut s = cfg.sampler(&format!("actions/{n}"));
        let group = format!("actions/n={n}");
        out.extend(generic_batch(&mut s, &group, exact, |p| {
            let mut cases = Vec::new();
            for l in shapes(m, n) {
                let mut ids = difference_actions(&l, n, p, Method::Oracle)?;
                ids.extend(integral_actions(&l, n, p, Method::Oracle)?);
                for id in ids {
                    cases.push(CaseResult::check(
                        format!("{group}/{}/lambda={}", id.identity, lambda_tag(&l)),
                        id.holds(),
                        json!({ "params": point_json(p) }),
                    ));
                }
            }
            Ok(cases)
        }));
    }
    out
}

/// The eight closed-form recurrences.
pub fn recurrence_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let (m, nmax) = cfg.boxed((3, 3));
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut s = cfg.sampler(&format!("recurrences/{n}"));
        for k in 0..EXACT_POINTS {
            let group = format!("recurrences/n={n}/point={k}");
            out.extend(generic_batch(&mut s, &group, exact, |p| {
                let mut cases = Vec::new();
                for l in shapes(m, n) {
                    for r in check_recurrences(&l, n, p)? {
                        cases.push(CaseResult::check(
                            format!("{group}/{}/lambda={}", r.identity, lambda_tag(&l)),
                            r.matched,
                            r.to_json(),
                        ));
                    }
                }
                Ok(cases)
            }));
        }
    }
    out
}

/// The dual Cauchy identity.
pub fn mimachi_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    const POINTS: usize = 2;
    let mut out = Vec::new();
    for (n, m) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
        let mut s = cfg.sampler(&format!("mimachi/{n}/{m}"));
        for k in 0..POINTS {
            let id = format!("mimachi/n={n}/m={m}/point={k}");
            out.extend(generic_batch(&mut s, &id, exact, |p| {
                let ok = mimachi_check(n, m, p, Method::Construction)?;
                Ok(vec![CaseResult::check(id.clone(), ok, json!({ "params": point_json(p) }))])
            }));
        }
    }
    out
}

/// `D^- I^+ = 0` and `I^- D^+ = 0` on random polynomials.
pub fn annihilation_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    const POLYS: usize = 5;
    let mut out = Vec::new();
    for n in 1..=2usize {
        let mut s = cfg.sampler(&format!("annihilation/{n}"));
        for k in 0..POLYS {
            let id = format!("annihilation/n={n}/poly={k}");
            let f = s.bcpoly(n, 2, 4);
            out.extend(generic_batch(&mut s, &id, exact, |p| {
                let ok = check_annihilation(n, p, &f)?;
                Ok(vec![CaseResult::check(id.clone(), ok, json!({ "params": point_json(p), "f": f.to_json() }))])
            }));
        }
    }
    out
}

/// `z_i = q^{μ_i} t^{n-i} s`.
fn interpolation_node(mu: &Partition, n: usize, p: &ParamPoint, s: &Rational) -> Vec<Rational> {
    (1..=n).map(|i| p.q().powi(mu.part(i) as i64) * p.t().powi((n - i) as i64) * s).collect()
}

/// Monicity and the vanishing property of the interpolation polynomials:
/// `P*_λ` vanishes at the node of every `μ` not containing `λ`, and is
/// nonzero at its own node.
pub fn interpolation_cases(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let (m, nmax) = cfg.boxed((2, 2));
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut smp = cfg.sampler(&format!("interpolation/{n}"));
        let s = smp.rational();
        let group = format!("interpolation/n={n}");
        out.extend(generic_batch(&mut smp, &group, exact, |p| {
            let mut cases = Vec::new();
            for l in shapes(m, n) {
                let f = build_interpolation(&l, n, p, &s)?;
                let monic = f.leading().map(|(lead, c)| lead == l && c.is_one()).unwrap_or(false);
                cases.push(CaseResult::check(format!("{group}/monic/lambda={}", lambda_tag(&l)), monic, json!({})));
                for mu in shapes(m, n) {
                    let z = interpolation_node(&mu, n, p, &s);
                    let value = f.evaluate(&z)?;
                    let (kind, ok) = if !mu.contains(&l) {
                        ("vanishing", value.is_zero())
                    } else if mu == l {
                        ("nonvanishing", !value.is_zero())
                    } else {
                        continue;
                    };
                    cases.push(CaseResult::check(
                        format!("{group}/{kind}/lambda={}/mu={}", lambda_tag(&l), lambda_tag(&mu)),
                        ok,
                        json!({ "s": s.to_string(), "value": value.to_string() }),
                    ));
                }
            }
            Ok(cases)
        }));
    }
    out
}
