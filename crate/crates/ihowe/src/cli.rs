//! Registry of parameterized checks, the runner, and JSON reports.
//!
//! Every check returns a [`CheckReport`]; the serialized body is a pure
//! function of the check and its parameters, and timing lives in fields
//! that are skipped by serialization.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::actions::{
    hecke_sigma, iota_n, lambda_iso, omega_tilde, sl_right_operator, tensor_igen_operator, Direction, GlRep, HoweSpace,
    SlGen, TensorRep,
};
use crate::bases::{index_pos, index_set, theta_count, Family, Half, Tuple, DEFAULT_SIZE_CAP};
use crate::braid::{deepest_truncation, idivided_series, truncation_cap, unequal_parameter, RhoSpace};
use crate::freemod::{
    commutant_dimension, operator_span_rank, BasisLabel, LinearOperator, SparseVector, CONFIRM_SPECIALIZATION,
    DEFAULT_SPECIALIZATION,
};
use crate::kmatrix::{
    braid_k_exponent, column_b0, column_t0, extremal_label, longest_word, lusztig_t_prime, lusztig_t_w0,
    lusztig_t_word, measure_braid_k, GConvention, RankOneModule,
};
use crate::qscalar::{qint, RatScalar};
use crate::uqalg::{
    expand_igenerator, idivided_power_polynomial, igenerators, relation_words, AlgebraWord, Gen, IGen, Parity,
    Representation, Side,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    /// Number of identities evaluated.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub details: Value,
    #[serde(skip)]
    pub elapsed_ms: u64,
    /// Process-dependent observations, kept out of the body.
    #[serde(skip)]
    pub sidecar: BTreeMap<String, Value>,
}

impl CheckReport {
    /// The stable part of the report.
    pub fn body(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Body plus the sidecar, as written by `--json`.
    pub fn to_json(&self) -> Value {
        let mut side = serde_json::Map::new();
        side.insert("elapsed_ms".into(), json!(self.elapsed_ms));
        for (k, v) in &self.sidecar {
            side.insert(k.clone(), v.clone());
        }
        json!({ "report": self.body(), "sidecar": side })
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `(checked, failed)` of one named part, if the check has it.
    pub fn part(&self, name: &str) -> Option<(u64, u64)> {
        let p = self.details.get("parts")?.get(name)?;
        Some((p.get("checked")?.as_u64()?, p.get("failed")?.as_u64()?))
    }
}

/// Parameters of a check. Unset fields take the check's default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub family: Option<Family>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub d: Option<u32>,
    /// Rank of `gl_M` for checks that are not indexed by `m`.
    pub big_m: Option<u32>,
    pub s: Option<i64>,
    pub specialize: Option<BigRational>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn family(mut self, f: Family) -> Self {
        self.family = Some(f);
        self
    }

    pub fn m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    pub fn d(mut self, d: u32) -> Self {
        self.d = Some(d);
        self
    }

    pub fn big_m(mut self, big_m: u32) -> Self {
        self.big_m = Some(big_m);
        self
    }

    pub fn s(mut self, s: i64) -> Self {
        self.s = Some(s);
        self
    }

    pub fn specialize(mut self, x: BigRational) -> Self {
        self.specialize = Some(x);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Largest basis a check may enumerate.
    pub cap: u128,
}

impl Default for Options {
    fn default() -> Self {
        Options { cap: DEFAULT_SIZE_CAP }
    }
}

// ---------------------------------------------------------------------------
// Registry

type CheckFn = fn(&mut Ctx) -> Result<Tally>;

const REGISTRY: &[(&str, &str, &str, CheckFn)] = &[
    (
        "qgroup-relations",
        "defining relations of U(gl_M) act by zero on V and V (x) V",
        "Chevalley and quantum Serre relations",
        qgroup_relations,
    ),
    (
        "commute",
        "left and right iquantum actions commute on the Howe space",
        "commuting iquantum actions on the q-Howe space",
        commute,
    ),
    ("commute-glsl", "left gl_M and right sl_n actions commute on column matrices", "(gl_M, sl_n) q-Howe duality", commute_glsl),
    ("lambda-iso-i", "Lambda intertwines tensor space and the rho-bar space, i family", "iSchur duality inside iHowe duality", lambda_iso_i),
    ("lambda-iso-j", "Lambda intertwines tensor space and the rho-bar space, j family", "jSchur duality inside jHowe duality", lambda_iso_j),
    (
        "omega-diagram",
        "Omega~ intertwines the i-Howe actions with U(gl_2m) and U(sl_n)",
        "restriction of the (gl, sl) Howe pair",
        omega_diagram,
    ),
    ("hecke-identify", "-q T_i acts as sigma_i under Lambda", "relative braid operators as Hecke generators", hecke_identify),
    ("hecke-quadratic", "(T_i + q^-2)(T_i - 1) = 0 on the rho-bar space", "Hecke quadratic relations", hecke_quadratic),
    ("braid-relations", "type B braid relations among the T_i", "relative braid group action", braid_relations),
    ("commutant", "commutant of the left action on the rho-bar space and the Hecke image", "double centralizer property", commutant),
    ("rank-one", "B_0 and T_0 on L(d) and on its copy in V_{M|1,d}", "rank-one integrable modules", rank_one),
    ("rank-one-matrices", "B_0 and T_0 on the two-dimensional rho-bar blocks", "rank-one braid matrices", rank_one_matrices),
    ("braidK", "K = Upsilon g T_w0 against T_0 on V_{M|1,d}", "K-matrix and the relative braid symmetry", braid_k),
    ("truncation", "every braid series vanishes before its cap", "integrability and series truncation", truncation),
    ("unequal-parameter", "eigenvalues of T_0 built from B_{0,s}", "unequal parameter Hecke algebra", unequal),
    ("integrability", "(i)divided powers of the generators annihilate each basis vector", "integrable modules", integrability),
    ("t0-element", "the j-family element t_0: its word and its commuting with the other side", "the element t_0", t0_element),
];

/// `(check_id, description, anchor)` in a fixed order.
pub fn list_checks() -> Vec<(&'static str, &'static str, &'static str)> {
    REGISTRY.iter().map(|(id, d, a, _)| (*id, *d, *a)).collect()
}

pub fn run_check(check_id: &str, params: &Params, options: &Options) -> Result<CheckReport> {
    let f = REGISTRY
        .iter()
        .find(|e| e.0 == check_id)
        .map(|e| e.3)
        .ok_or_else(|| Error::UnknownCheck(check_id.to_string()))?;
    let start = Instant::now();
    let mut ctx = Ctx { p: params.clone(), cap: options.cap, record: BTreeMap::new() };
    let out = f(&mut ctx);
    let mut report = match out {
        Err(e @ Error::SizeLimit(..)) => return Err(e),
        Err(e) => CheckReport {
            check_id: check_id.to_string(),
            params: ctx.record,
            status: Status::Error,
            checked: 0,
            witness: None,
            message: Some(e.to_string()),
            details: json!({}),
            elapsed_ms: 0,
            sidecar: BTreeMap::new(),
        },
        Ok(t) => t.into_report(check_id, ctx.record),
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Worker count from `IHOWE_WORKERS`; `0` lets the pool decide.
pub fn workers() -> usize {
    std::env::var("IHOWE_WORKERS").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

/// Runs independent checks in a pool; results keep the input order.
pub fn run_batch(jobs: &[(String, Params)], options: &Options) -> Vec<Result<CheckReport>> {
    let run = || jobs.par_iter().map(|(id, p)| run_check(id, p, options)).collect::<Vec<_>>();
    match rayon::ThreadPoolBuilder::new().num_threads(workers()).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

/// 0 if everything passed, 1 on a failure, 2 on an error.
pub fn exit_code(results: &[Result<CheckReport>]) -> i32 {
    let mut code = 0;
    for r in results {
        match r {
            Err(_) => return 2,
            Ok(r) if r.status == Status::Error => return 2,
            Ok(r) if r.status == Status::Fail => code = 1,
            Ok(_) => {}
        }
    }
    code
}

// ---------------------------------------------------------------------------
// Plumbing

struct Ctx {
    p: Params,
    cap: u128,
    record: BTreeMap<String, Value>,
}

impl Ctx {
    fn family(&mut self) -> Family {
        let f = self.p.family.unwrap_or(Family::I);
        self.fixed_family(f)
    }

    fn fixed_family(&mut self, f: Family) -> Family {
        self.record.insert("family".into(), json!(f.name()));
        f
    }

    fn require_family(&mut self, f: Family) -> Result<Family> {
        if self.p.family.is_some_and(|g| g != f) {
            return Err(Error::IndexOutOfRange(format!("this check exists only for the {f} family")));
        }
        Ok(self.fixed_family(f))
    }

    fn u(&mut self, key: &str, v: Option<u32>, default: u32) -> u32 {
        let x = v.unwrap_or(default);
        self.record.insert(key.into(), json!(x));
        x
    }

    fn m(&mut self) -> u32 {
        self.u("m", self.p.m, 1)
    }

    fn n(&mut self) -> u32 {
        self.u("n", self.p.n, 1)
    }

    fn d(&mut self) -> u32 {
        self.u("d", self.p.d, 1)
    }

    fn big_m(&mut self) -> u32 {
        self.u("M", self.p.big_m.or(self.p.m), 2)
    }

    fn positive(&self, key: &str, v: u32) -> Result<()> {
        if v == 0 {
            return Err(Error::IndexOutOfRange(format!("{key} must be positive")));
        }
        Ok(())
    }

    fn limit(&self, count: u128) -> Result<()> {
        if count > self.cap {
            return Err(Error::SizeLimit(count, self.cap));
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    parts: BTreeMap<String, (u64, u64)>,
    witness: Option<(String, Witness)>,
    details: serde_json::Map<String, Value>,
    sidecar: BTreeMap<String, Value>,
}

impl Tally {
    fn assert(&mut self, part: &str, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        let e = self.parts.entry(part.to_string()).or_default();
        e.0 += 1;
        if !ok {
            e.1 += 1;
            if self.witness.is_none() {
                self.witness = Some((part.to_string(), witness()));
            }
        }
    }

    fn compare(&mut self, part: &str, label: &dyn std::fmt::Display, lhs: &SparseVector, rhs: &SparseVector) {
        self.assert(part, lhs == rhs, || Witness { label: label.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() });
    }

    /// Compares `f(l) = (lhs, rhs)` on every label, in parallel.
    fn sweep<F>(&mut self, part: &str, basis: &[BasisLabel], f: F) -> Result<()>
    where
        F: Fn(&BasisLabel) -> Result<(SparseVector, SparseVector)> + Sync,
    {
        let res = basis.par_iter().map(&f).collect::<Result<Vec<_>>>()?;
        for (l, (a, b)) in basis.iter().zip(res) {
            self.compare(part, l, &a, &b);
        }
        Ok(())
    }

    fn detail(&mut self, key: &str, v: Value) {
        self.details.insert(key.into(), v);
    }

    fn into_report(mut self, id: &str, params: BTreeMap<String, Value>) -> CheckReport {
        let parts: serde_json::Map<String, Value> = self
            .parts
            .iter()
            .map(|(k, (c, f))| (k.clone(), json!({ "checked": c, "failed": f })))
            .collect();
        self.details.insert("parts".into(), Value::Object(parts));
        let (status, witness, message) = match self.witness {
            None => (Status::Pass, None, None),
            Some((part, w)) => {
                let failed: u64 = self.parts.values().map(|p| p.1).sum();
                (Status::Fail, Some(w), Some(format!("{failed} of {} identities failed; first in {part}", self.checked)))
            }
        };
        CheckReport {
            check_id: id.to_string(),
            params,
            status,
            checked: self.checked,
            witness,
            message,
            details: Value::Object(self.details),
            elapsed_ms: 0,
            sidecar: self.sidecar,
        }
    }
}

fn q(e: i64) -> RatScalar {
    RatScalar::q_pow(e)
}

fn by(l: &BasisLabel) -> SparseVector {
    SparseVector::basis(l.clone())
}

fn zero() -> SparseVector {
    SparseVector::zero()
}

/// `v` pushed through `ops` in order.
fn chain(ops: &[&LinearOperator], v: SparseVector) -> Result<SparseVector> {
    ops.iter().try_fold(v, |v, op| op.apply(&v))
}

fn ki(family: Family, rank: u32) -> Vec<IGen> {
    match family {
        Family::I => (1..rank as i32).map(|i| IGen::Ki(Half::int(i))).collect(),
        Family::J => (0..rank as i32).map(|k| IGen::Ki(Half(2 * k + 1))).collect(),
    }
}

/// Generators, Cartan elements included, of the iquantum group of a side.
fn side_gens(family: Family, rank: u32, side: Side) -> Vec<IGen> {
    let mut g = igenerators(family, rank);
    g.extend(ki(family, rank));
    if family == Family::J && side == Side::Right {
        g.push(IGen::T0);
    }
    g
}

fn howe_ops(h: &HoweSpace, side: Side, gens: &[IGen]) -> Result<Vec<(String, LinearOperator)>> {
    gens.iter().map(|g| Ok((g.to_string(), h.operator(side, g)?))).collect()
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn column_count(big_m: u32, n: u32, d: u32) -> u128 {
    let cells = big_m as u128 * n as u128;
    binom(cells + d as u128 - 1, d as u128)
}

fn tuple_labels(sp: &RhoSpace) -> Result<Vec<BasisLabel>> {
    Ok(sp.tuple_basis()?.into_iter().map(BasisLabel::Tuple).collect())
}

fn rho(ctx: &mut Ctx, family: Family) -> Result<RhoSpace> {
    let (m, n) = (ctx.m(), ctx.n());
    ctx.positive("m", m)?;
    ctx.positive("n", n)?;
    ctx.limit(theta_count(family, m, n, n))?;
    RhoSpace::new(family, m, n)
}

fn rat(p: i64, r: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(r))
}

// ---------------------------------------------------------------------------
// Checks

fn qgroup_relations(ctx: &mut Ctx) -> Result<Tally> {
    let big_m = ctx.u("M", ctx.p.big_m.or(ctx.p.m), 2);
    let n = ctx.n();
    ctx.limit((big_m as u128).saturating_pow(n))?;
    let rep = Arc::new(TensorRep::new(big_m, n));
    let basis = rep.basis()?;
    let rels = relation_words(big_m)?;
    let mut t = Tally::default();
    for (name, w) in &rels {
        let op = w.operator(rep.clone(), Side::Left);
        t.sweep(name, &basis, |l| Ok((op.apply_label(l)?, zero())))?;
    }
    t.detail("relations", json!(rels.len()));
    t.detail("dimension", json!(basis.len()));
    Ok(t)
}

fn commute(ctx: &mut Ctx) -> Result<Tally> {
    let f = ctx.family();
    let (m, n, d) = (ctx.m(), ctx.n(), ctx.d());
    ctx.positive("m", m)?;
    ctx.positive("n", n)?;
    ctx.limit(theta_count(f, m, n, d))?;
    let h = HoweSpace::new(f, m, n, d);
    let basis = h.basis()?;
    let left = howe_ops(&h, Side::Left, &side_gens(f, m, Side::Left))?;
    let right = howe_ops(&h, Side::Right, &side_gens(f, n, Side::Right))?;
    let mut t = Tally::default();
    for (ln, lo) in &left {
        for (rn, ro) in &right {
            t.sweep(&format!("{ln} | {rn}"), &basis, |l| {
                Ok((lo.apply(&ro.apply_label(l)?)?, ro.apply(&lo.apply_label(l)?)?))
            })?;
        }
    }
    t.detail("dimension", json!(basis.len()));
    t.detail("pairs", json!(left.len() * right.len()));
    Ok(t)
}

fn commute_glsl(ctx: &mut Ctx) -> Result<Tally> {
    let big_m = ctx.u("M", ctx.p.big_m.or(ctx.p.m), 2);
    let (n, d) = (ctx.n(), ctx.d());
    ctx.limit(column_count(big_m, n, d))?;
    let rep = Arc::new(GlRep::new(big_m, n));
    let basis = rep.basis(d)?;
    let mut left = Vec::new();
    for i in index_set(big_m - 1) {
        left.push(Gen::E(i));
        left.push(Gen::F(i));
    }
    for a in index_set(big_m) {
        left.push(Gen::D(a, 1));
        left.push(Gen::D(a, -1));
    }
    let left = left
        .into_iter()
        .map(|g| Ok((g.to_string(), AlgebraWord::gen(big_m, g)?.operator(rep.clone(), Side::Left))))
        .collect::<Result<Vec<_>>>()?;
    let right: Vec<(String, LinearOperator)> = (1..n as i32)
        .flat_map(|i| [SlGen::E(i), SlGen::F(i), SlGen::K(i)])
        .map(|g| (format!("{g:?}"), sl_right_operator(big_m, n, g)))
        .collect();
    let mut t = Tally::default();
    for (ln, lo) in &left {
        for (rn, ro) in &right {
            t.sweep(&format!("{ln} | {rn}"), &basis, |l| {
                Ok((lo.apply(&ro.apply_label(l)?)?, ro.apply(&lo.apply_label(l)?)?))
            })?;
        }
    }
    t.detail("dimension", json!(basis.len()));
    Ok(t)
}

fn lambda_check(ctx: &mut Ctx, f: Family) -> Result<Tally> {
    let f = ctx.require_family(f)?;
    let sp = rho(ctx, f)?;
    let (m, n) = (sp.howe.m, sp.howe.n);
    let tuples = tuple_labels(&sp)?;
    let rho_set: HashSet<&BasisLabel> = sp.basis().iter().collect();
    let mut seen = HashSet::new();
    let mut t = Tally::default();
    for l in &tuples {
        let img = lambda_iso(f, m, Direction::ToMatrix, &by(l))?;
        let target = img.labels().next().cloned();
        let ok = img.len() == 1
            && img.iter().all(|(_, c)| c.is_one())
            && target.as_ref().is_some_and(|a| rho_set.contains(a) && seen.insert(a.clone()));
        t.assert("bijection", ok, || Witness { label: l.to_string(), lhs: img.to_string(), rhs: "a new rho-bar label".into() });
    }
    t.assert("bijection", seen.len() == rho_set.len(), || Witness {
        label: "image size".into(),
        lhs: seen.len().to_string(),
        rhs: rho_set.len().to_string(),
    });
    for g in side_gens(f, m, Side::Left) {
        let tens = tensor_igen_operator(f, m, n, &g)?;
        let howe = sp.howe.operator(Side::Left, &g)?;
        t.sweep(&g.to_string(), &tuples, |l| {
            let lhs = lambda_iso(f, m, Direction::ToMatrix, &tens.apply_label(l)?)?;
            let rhs = howe.apply(&lambda_iso(f, m, Direction::ToMatrix, &by(l))?)?;
            Ok((lhs, rhs))
        })?;
    }
    t.detail("dimension", json!(tuples.len()));
    Ok(t)
}

fn lambda_iso_i(ctx: &mut Ctx) -> Result<Tally> {
    lambda_check(ctx, Family::I)
}

fn lambda_iso_j(ctx: &mut Ctx) -> Result<Tally> {
    lambda_check(ctx, Family::J)
}

fn omega_diagram(ctx: &mut Ctx) -> Result<Tally> {
    let f = ctx.require_family(Family::I)?;
    let (m, n, d) = (ctx.m(), ctx.n(), ctx.d());
    ctx.positive("m", m)?;
    ctx.positive("n", n)?;
    ctx.limit(theta_count(f, m, n, d))?;
    let h = HoweSpace::new(f, m, n, d);
    let basis = h.basis()?;
    let rep: Arc<dyn Representation> = Arc::new(GlRep::new(2 * m, n));
    let mut t = Tally::default();
    for g in side_gens(f, m, Side::Left) {
        let ho = h.operator(Side::Left, &g)?;
        let w = expand_igenerator(&g, f, m)?.operator(rep.clone(), Side::Left);
        t.sweep(&format!("left {g}"), &basis, |l| Ok((omega_tilde(&ho.apply_label(l)?)?, w.apply(&omega_tilde(&by(l))?)?)))?;
    }
    for g in (1..n as i32).flat_map(|i| [SlGen::E(i), SlGen::F(i), SlGen::K(i)]) {
        let ho = h.operator(Side::Right, &iota_n(g))?;
        let so = sl_right_operator(2 * m, n, g);
        t.sweep(&format!("right {g:?}"), &basis, |l| {
            Ok((omega_tilde(&ho.apply_label(l)?)?, so.apply(&omega_tilde(&by(l))?)?))
        })?;
    }
    t.detail("dimension", json!(basis.len()));
    Ok(t)
}

fn hecke_identify(ctx: &mut Ctx) -> Result<Tally> {
    let f = ctx.family();
    let sp = rho(ctx, f)?;
    let (m, n) = (sp.howe.m, sp.howe.n);
    let tuples = tuple_labels(&sp)?;
    let mut t = Tally::default();
    for i in 0..n {
        let op = sp.braid_t(i)?;
        t.sweep(&format!("T{i}"), &tuples, |l| {
            let v = lambda_iso(f, m, Direction::ToMatrix, &by(l))?;
            let lhs = lambda_iso(f, m, Direction::ToTuple, &op.apply(&v)?)?.scale(&-q(1));
            Ok((lhs, hecke_sigma(&[i as usize], &by(l))?))
        })?;
    }
    t.detail("dimension", json!(tuples.len()));
    Ok(t)
}

fn hecke_quadratic(ctx: &mut Ctx) -> Result<Tally> {
    let f = ctx.family();
    let sp = rho(ctx, f)?;
    let mut t = Tally::default();
    let c1 = &q(-2) - &RatScalar::one();
    for i in 0..sp.howe.n {
        let op = sp.braid_t(i)?;
        t.sweep(&format!("T{i}"), sp.basis(), |l| {
            let v = by(l);
            let tv = op.apply(&v)?;
            let ttv = op.apply(&tv)?;
            Ok((ttv.add(&tv.scale(&c1)).sub(&v.scale(&q(-2))), zero()))
        })?;
    }
    t.detail("quadratics", json!(sp.howe.n));
    t.detail("dimension", json!(sp.basis().len()));
    Ok(t)
}

fn braid_relations(ctx: &mut Ctx) -> Result<Tally> {
    let f = ctx.family();
    let sp = rho(ctx, f)?;
    let n = sp.howe.n;
    let ts = (0..n).map(|i| sp.braid_t(i)).collect::<Result<Vec<_>>>()?;
    let mut t = Tally::default();
    let rel = |t: &mut Tally, name: String, a: Vec<usize>, b: Vec<usize>| -> Result<()> {
        let (oa, ob): (Vec<&LinearOperator>, Vec<&LinearOperator>) =
            (a.iter().map(|&i| &ts[i]).collect(), b.iter().map(|&i| &ts[i]).collect());
        t.sweep(&name, sp.basis(), |l| Ok((chain(&oa, by(l))?, chain(&ob, by(l))?)))
    };
    let n = n as usize;
    if n >= 2 {
        rel(&mut t, "T0 T1 T0 T1".into(), vec![0, 1, 0, 1], vec![1, 0, 1, 0])?;
    }
    for i in 1..n.saturating_sub(1) {
        rel(&mut t, format!("T{i} T{} T{i}", i + 1), vec![i, i + 1, i], vec![i + 1, i, i + 1])?;
    }
    for i in 0..n {
        for j in i + 2..n {
            rel(&mut t, format!("T{i} T{j}"), vec![i, j], vec![j, i])?;
        }
    }
    t.detail("dimension", json!(sp.basis().len()));
    Ok(t)
}

/// A reduced word for every element of the type B Weyl group of rank `n`,
/// found by breadth-first search on signed permutations. `s_0` negates the
/// first entry and `s_i` swaps entries `i - 1` and `i`.
pub fn type_b_words(n: u32) -> Vec<Vec<u32>> {
    let start: Vec<i32> = (1..=n as i32).collect();
    let mut seen: HashSet<Vec<i32>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, Vec::new())]);
    let mut out = Vec::new();
    while let Some((w, word)) = queue.pop_front() {
        for i in 0..n {
            let mut x = w.clone();
            if i == 0 {
                x[0] = -x[0];
            } else {
                x.swap(i as usize - 1, i as usize);
            }
            if seen.insert(x.clone()) {
                let mut wd: Vec<u32> = word.clone();
                wd.push(i);
                queue.push_back((x, wd));
            }
        }
        out.push(word);
    }
    out
}

fn partitions(n: u32, max_len: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max_part: u32, len_left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if len_left == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            go(n - p, p, len_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_len, &mut Vec::new(), &mut out);
    out
}

/// Number of standard tableaux of shape `lambda`, by the hook length formula.
fn standard_tableaux(lambda: &[u32]) -> u128 {
    let n: u32 = lambda.iter().sum();
    let mut hooks = 1u128;
    for (r, &row) in lambda.iter().enumerate() {
        for c in 0..row {
            let below = lambda[r + 1..].iter().filter(|&&x| x > c).count() as u128;
            hooks *= (row - c) as u128 + below;
        }
    }
    (1..=n as u128).product::<u128>() / hooks
}

/// Dimension of the image of the type B Hecke algebra of rank `n` acting
/// on tensor space: bipartitions `(lambda, mu)` of `n` occur exactly when
/// `lambda` has at most `m` rows (`m + 1` for j) and `mu` at most `m`.
pub fn hecke_image_dimension(family: Family, m: u32, n: u32) -> u128 {
    let a = if family == Family::J { m + 1 } else { m };
    let mut total = 0u128;
    for k in 0..=n {
        for l in partitions(k, a) {
            for u in partitions(n - k, m) {
                let dim = binom(n as u128, k as u128) * standard_tableaux(&l) * standard_tableaux(&u);
                total += dim * dim;
            }
        }
    }
    total
}

fn commutant(ctx: &mut Ctx) -> Result<Tally> {
    let f = ctx.family();
    let sp = rho(ctx, f)?;
    let (m, n) = (sp.howe.m, sp.howe.n);
    let basis = sp.basis().to_vec();
    let gens = howe_ops(&sp.howe, Side::Left, &side_gens(f, m, Side::Left))?;
    let gen_ops: Vec<LinearOperator> = gens.iter().map(|g| g.1.clone()).collect();
    let words = type_b_words(n);
    let order = (1..=n as usize).product::<usize>() << n;
    let expected = hecke_image_dimension(f, m, n) as usize;
    let hecke = words.iter().map(|w| sp.hecke_image_operator(w)).collect::<Result<Vec<_>>>()?;
    let mut t = Tally::default();
    t.assert("group order", words.len() == order, || Witness {
        label: "|W(B_n)|".into(),
        lhs: words.len().to_string(),
        rhs: order.to_string(),
    });
    let points: Vec<Option<BigRational>> = match &ctx.p.specialize {
        Some(x) => vec![Some(x.clone())],
        None if basis.len() <= 32 => vec![None],
        None => [DEFAULT_SPECIALIZATION, CONFIRM_SPECIALIZATION].iter().map(|&(a, b)| Some(rat(a, b))).collect(),
    };
    if let Some(x) = &ctx.p.specialize {
        ctx.record.insert("specialize".into(), json!(x.to_string()));
    }
    let mut runs = Vec::new();
    for pt in &points {
        let c = commutant_dimension(&gen_ops, &basis, pt.as_ref())?;
        let r = operator_span_rank(&hecke, &basis, pt.as_ref())?;
        let at = pt.as_ref().map_or("generic".to_string(), |x| x.to_string());
        t.assert("commutant dimension", c == expected, || Witness {
            label: format!("q = {at}"),
            lhs: c.to_string(),
            rhs: expected.to_string(),
        });
        t.assert("hecke span", r == expected, || Witness {
            label: format!("q = {at}"),
            lhs: r.to_string(),
            rhs: expected.to_string(),
        });
        runs.push(json!({ "q": at, "commutant": c, "hecke_span": r }));
    }
    for i in 0..n {
        let ti = sp.braid_t(i)?;
        for (name, g) in &gens {
            t.sweep(&format!("T{i} | {name}"), &basis, |l| Ok((g.apply(&ti.apply_label(l)?)?, ti.apply(&g.apply_label(l)?)?)))?;
        }
    }
    t.detail("dimension", json!(basis.len()));
    t.detail("expected", json!(expected));
    t.detail("hecke_dimension", json!(order));
    t.detail("faithful", json!(expected == order));
    t.detail("evaluations", json!(runs));
    Ok(t)
}

fn embed_rank_one(big_m: u32, d: u32, v: &SparseVector) -> Result<SparseVector> {
    v.map_labels(|l| match l {
        BasisLabel::RankOne { k, .. } => Ok(extremal_label(big_m, d - *k, *k)),
        _ => Err(Error::BasisMismatch(format!("{l} is not in L({d})"))),
    })
}

/// `k` with `c = (-q)^k`, if there is one.
fn neg_q_exponent(c: &RatScalar) -> Option<i64> {
    let (a, e) = c.as_monomial()?;
    let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
    (a == rat(sign, 1)).then_some(e)
}

fn rank_one(ctx: &mut Ctx) -> Result<Tally> {
    let d = ctx.u("d", ctx.p.d, 1);
    let big_m = ctx.big_m();
    if big_m % 2 != 0 || big_m == 0 {
        return Err(Error::OddRank(big_m));
    }
    ctx.limit(theta_count(Family::I, big_m / 2, 1, d))?;
    let l = RankOneModule::new(d);
    let rep = Arc::new(l);
    let basis = l.basis();
    let mut t = Tally::default();
    for (name, w) in relation_words(2)? {
        let op = w.operator(rep.clone(), Side::Right);
        t.sweep(&format!("relation {name}"), &basis, |x| Ok((op.apply_label(x)?, zero())))?;
    }
    let (b0, b0w) = (l.b0_operator(), l.b0_word_operator()?);
    t.sweep("B0 closed form", &basis, |x| Ok((b0.apply_label(x)?, b0w.apply_label(x)?)))?;

    let e = (d as i64 + 1) / 2;
    let got = l.t0_on_v0()?;
    let want = SparseVector::term(l.label(d), RatScalar::neg_q_pow(e));
    t.compare("v0 T0", &l.label(0), &got, &want);
    let c = got.get(&l.label(d));
    let measured = (got == SparseVector::term(l.label(d), c.clone())).then(|| neg_q_exponent(&c)).flatten();
    t.detail("v0_t0", json!(got.to_string()));
    t.detail("v0_t0_exponent", json!({ "claimed": e, "measured": measured }));

    let cb0 = column_b0(big_m, d)?;
    let ct0 = column_t0(big_m, d)?;
    let parity = Parity::of(d as i64 + 1);
    let cap = truncation_cap(d as usize + 1);
    for k in 0..=d {
        let x = extremal_label(big_m, d - k, k);
        let vk = by(&l.label(k));
        t.compare("embedded B0", &x, &cb0.apply_label(&x)?, &embed_rank_one(big_m, d, &b0.apply(&vk)?)?);
        let tk = idivided_series(&b0, parity, &vk, cap)?;
        t.compare("embedded T0", &x, &ct0.apply_label(&x)?, &embed_rank_one(big_m, d, &tk)?);
    }
    Ok(t)
}

fn rank_one_matrices(ctx: &mut Ctx) -> Result<Tally> {
    let f = ctx.family();
    let m = ctx.m();
    ctx.positive("m", m)?;
    ctx.limit(theta_count(f, m, 1, 1))?;
    let sp = RhoSpace::new(f, m, 1)?;
    let big = f.ambient(m);
    let lab = |j: Half| sp.label_of(&Tuple::new(big, vec![j])?);
    let t0 = sp.braid_t(0)?;
    let mut t = Tally::default();
    let pair = |a: (RatScalar, &BasisLabel), b: (RatScalar, &BasisLabel)| {
        let mut v = SparseVector::term(a.1.clone(), a.0);
        v.add_term(b.1.clone(), b.0);
        v
    };
    let one = RatScalar::one;
    // B_0 for i, and B_{1/2} B_{-1/2} for j, act on each block by the same matrix.
    let bb: LinearOperator = match f {
        Family::I => sp.howe.operator(Side::Right, &IGen::B0)?,
        Family::J => sp
            .howe
            .operator(Side::Right, &IGen::B(Half::HALF))?
            .then(&sp.howe.operator(Side::Right, &IGen::B(-Half::HALF))?)?,
    };
    let bname = if f == Family::I { "B0 block" } else { "B(1/2) B(-1/2) block" };
    let blocks: Vec<Half> = match f {
        Family::I => (0..m as i32).map(|k| Half(2 * k + 1)).collect(),
        Family::J => (1..=m as i32).map(Half::int).collect(),
    };
    let mut traces = Vec::new();
    for j in blocks {
        let (vj, vm) = (lab(j)?, lab(-j)?);
        let bj = bb.apply_label(&vj)?;
        let bm = bb.apply_label(&vm)?;
        t.compare(bname, &vj, &bj, &pair((q(1), &vj), (one(), &vm)));
        t.compare(bname, &vm, &bm, &pair((one(), &vj), (q(-1), &vm)));
        let tr = &bj.get(&vj) + &bm.get(&vm);
        let det = &(&bj.get(&vj) * &bm.get(&vm)) - &(&bj.get(&vm) * &bm.get(&vj));
        t.assert("eigenvalues [2], 0", tr == qint(2) && det.is_zero(), || Witness {
            label: format!("block {j}"),
            lhs: format!("trace {tr}, det {det}"),
            rhs: "trace [2], det 0".into(),
        });
        traces.push(json!({ "j": j.to_string(), "trace": tr.to_string(), "det": det.to_string() }));
        t.compare("T0 block", &vj, &t0.apply_label(&vj)?, &SparseVector::term(vm.clone(), -q(-1)));
        t.compare("T0 block", &vm, &t0.apply_label(&vm)?, &pair((-q(-1), &vj), (&one() - &q(-2), &vm)));
        t.compare("-q T0", &vj, &t0.apply_label(&vj)?.scale(&-q(1)), &by(&vm));
    }
    if f == Family::J {
        let v0 = lab(Half::ZERO)?;
        t.compare("v0 B(1/2) B(-1/2)", &v0, &bb.apply_label(&v0)?, &SparseVector::term(v0.clone(), qint(2)));
        t.compare("v0 T0", &v0, &t0.apply_label(&v0)?, &SparseVector::term(v0.clone(), -q(-2)));
    }
    t.detail("blocks", json!(traces));
    Ok(t)
}

fn braid_k(ctx: &mut Ctx) -> Result<Tally> {
    let big_m = ctx.u("M", ctx.p.big_m.or(ctx.p.m), 2);
    let d = ctx.u("d", ctx.p.d, 1);
    if big_m % 2 != 0 || big_m == 0 {
        return Err(Error::OddRank(big_m));
    }
    ctx.limit(column_count(big_m, 1, d))?;
    let meas = measure_braid_k(big_m, d)?;
    let rep = GlRep::new(big_m, 1);
    let basis = rep.basis(d)?;
    let mut t = Tally::default();

    for (h, (unknowns, nullity)) in meas.heights.iter().enumerate() {
        t.assert("Upsilon unique", *nullity == 0, || Witness {
            label: format!("height {}", h + 1),
            lhs: format!("nullity {nullity} of {unknowns}"),
            rhs: "nullity 0".into(),
        });
    }

    // Lusztig's T_w0: word independence, weight map, braid relations.
    let mut rev = longest_word(big_m);
    rev.reverse();
    t.sweep("T_w0 word independence", &basis, |l| Ok((lusztig_t_w0(&rep, &by(l))?, lusztig_t_word(&rep, &rev, &by(l))?)))?;
    let simple = index_set(big_m - 1);
    for &i in &simple {
        let res = basis
            .par_iter()
            .map(|l| lusztig_t_prime(&rep, i, &by(l)))
            .collect::<Result<Vec<_>>>()?;
        for (l, img) in basis.iter().zip(res) {
            let mut want = l.as_column().map(|c| c.weight()).unwrap_or_default();
            let (a, b) = (index_pos(big_m, i - Half::HALF), index_pos(big_m, i + Half::HALF));
            if let (Some(a), Some(b)) = (a, b) {
                want.swap(a, b);
            }
            let ok = !img.is_zero() && img.labels().all(|x| x.as_column().is_some_and(|c| c.weight() == want));
            t.assert(&format!("T'({i}) weight map"), ok, || Witness {
                label: l.to_string(),
                lhs: img.to_string(),
                rhs: format!("weight {want:?}"),
            });
        }
    }
    for w in simple.windows(2) {
        let (a, b) = (w[0], w[1]);
        t.sweep(&format!("T'({a}) T'({b}) T'({a})"), &basis, |l| {
            Ok((lusztig_t_word(&rep, &[a, b, a], &by(l))?, lusztig_t_word(&rep, &[b, a, b], &by(l))?))
        })?;
    }

    let disp = meas.outcome(GConvention::AsDisplayed).expect("measured");
    let top = RatScalar::neg_q_pow(-(d as i64) * (big_m as i64 - 1));
    let hi = extremal_label(big_m, 0, d);
    t.compare("K lowest vector", &extremal_label(big_m, d, 0), &disp.lowest_image, &SparseVector::term(hi, top));
    t.assert("K commutes with U^i_m", disp.noncommuting.is_none(), || match &disp.mismatch {
        Some((l, a, b)) => Witness {
            label: format!("{} on {l}", disp.noncommuting.clone().unwrap_or_default()),
            lhs: a.to_string(),
            rhs: b.to_string(),
        },
        None => Witness { label: "generator".into(), lhs: "x K".into(), rhs: "K x".into() },
    });
    t.assert("K = c T0", meas.holds(), || Witness {
        label: "K / T0".into(),
        lhs: disp.scalar.as_ref().map_or("not a multiple of T0".into(), |c| c.to_string()),
        rhs: meas.expected.to_string(),
    });

    let outcomes: Vec<Value> = meas
        .outcomes
        .iter()
        .map(|o| {
            json!({
                "convention": o.convention.name(),
                "commutes": o.noncommuting.is_none(),
                "noncommuting": o.noncommuting,
                "scalar": o.scalar.as_ref().map(|c| c.to_string()),
                "scalar_exponent": o.scalar.as_ref().and_then(neg_q_exponent),
                "lowest_image": o.lowest_image.to_string(),
            })
        })
        .collect();
    t.detail("dimension", json!(meas.dim));
    t.detail("expected_scalar", json!(meas.expected.to_string()));
    t.detail("expected_exponent", json!(braid_k_exponent(big_m, d)));
    t.detail("upsilon_heights", json!(meas.heights));
    t.detail("conventions", json!(outcomes));
    Ok(t)
}

fn truncation(ctx: &mut Ctx) -> Result<Tally> {
    let _ = ctx;
    let mut t = Tally::default();
    let mut instances = Vec::new();
    let mut note = |t: &mut Tally, name: String, cap: usize, res: Vec<(BasisLabel, Result<SparseVector>)>| -> Result<()> {
        let count = res.len();
        for (l, r) in res {
            match r {
                Ok(_) => t.assert(&name, true, || unreachable!()),
                Err(Error::TruncationCapExceeded(c)) => t.assert(&name, false, || Witness {
                    label: l.to_string(),
                    lhs: format!("nonzero past {c}"),
                    rhs: "vanishing term".into(),
                }),
                Err(e) => return Err(e),
            }
        }
        instances.push(json!({ "instance": name, "cap": cap, "evaluations": count }));
        Ok(())
    };
    let mut rho_grid: Vec<(u32, u32)> = vec![(1, 1), (1, 2), (2, 1), (2, 2)];
    rho_grid.push((2, 3));
    for f in [Family::I, Family::J] {
        for &(m, n) in &rho_grid {
            let sp = RhoSpace::new(f, m, n)?;
            for i in 0..n {
                let op = sp.braid_t(i)?;
                let res = sp.basis().par_iter().map(|l| (l.clone(), op.apply_label(l))).collect();
                note(&mut t, format!("{f} m={m} n={n} T{i}"), sp.cap(), res)?;
            }
        }
    }
    for d in 0..=6u32 {
        let l = RankOneModule::new(d);
        let b0 = l.b0_operator();
        let cap = truncation_cap(d as usize + 1);
        let res = l
            .basis()
            .into_iter()
            .map(|x| {
                let r = idivided_series(&b0, Parity::of(d as i64 + 1), &by(&x), cap);
                (x, r)
            })
            .collect();
        note(&mut t, format!("L({d}) T0"), cap, res)?;
    }
    for big_m in [2u32, 4] {
        for d in 0..=4u32 {
            let op = column_t0(big_m, d)?;
            let basis = GlRep::new(big_m, 1).basis(d)?;
            let res = basis.par_iter().map(|l| (l.clone(), op.apply_label(l))).collect();
            note(&mut t, format!("V({big_m}|1,{d}) T0"), truncation_cap(basis.len()), res)?;
        }
    }
    for s in 1..=4i64 {
        for m in [1u32, 2] {
            let label = BasisLabel::RankOne { d: 0, k: 0 };
            let r = unequal_parameter(s, m).map(|_| SparseVector::zero());
            let cap = RhoSpace::new(Family::I, m, 1)?.cap();
            note(&mut t, format!("B0s({s}) m={m} T0"), cap, vec![(label, r)])?;
        }
    }
    t.detail("instances", json!(instances));
    t.sidecar.insert("deepest_index".into(), json!(deepest_truncation()));
    Ok(t)
}

fn unequal(ctx: &mut Ctx) -> Result<Tally> {
    let s = ctx.p.s.unwrap_or(1);
    ctx.record.insert("s".into(), json!(s));
    let m = ctx.m();
    ctx.positive("m", m)?;
    if s < 1 {
        return Err(Error::IndexOutOfRange(format!("s = {s}")));
    }
    let r = unequal_parameter(s, m)?;
    let mut t = Tally::default();
    for b in &r.blocks {
        t.assert("B0s block", b.b0_matrix_ok, || Witness {
            label: format!("block {}", b.j),
            lhs: "measured B0s matrix".into(),
            rhs: "[[q[s], 1], [1, q^-1[s]]]".into(),
        });
        t.assert("matches one convention", b.convention.is_some(), || Witness {
            label: format!("block {}", b.j),
            lhs: format!("trace {}, det {}", r.trace, r.det),
            rhs: "roots of either sign convention".into(),
        });
    }
    t.assert("consistent across blocks", r.convention().is_some(), || Witness {
        label: "blocks".into(),
        lhs: "mixed conventions".into(),
        rhs: "one convention".into(),
    });
    let blocks: Vec<Value> = r
        .blocks
        .iter()
        .map(|b| {
            json!({
                "j": b.j.to_string(),
                "matrix": b.matrix.iter().map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "convention": b.convention.map(|c| c.name()),
            })
        })
        .collect();
    t.detail("convention", json!(r.convention().map(|c| c.name())));
    t.detail("series", json!(if r.parity == Parity::Even { "even" } else { "odd" }));
    t.detail("trace", json!(r.trace.to_string()));
    t.detail("det", json!(r.det.to_string()));
    t.detail("renormalization", json!(r.renormalization.as_ref().map(|c| c.to_string())));
    t.detail("blocks", json!(blocks));
    Ok(t)
}

enum Powers {
    Divided(LinearOperator),
    IDivided(LinearOperator, LinearOperator),
}

/// Least `k` with all powers from `k` on killing `v`, or `None` past `cap`.
fn vanishing_index(p: &Powers, l: &BasisLabel, cap: usize) -> Result<Option<usize>> {
    let v = by(l);
    match p {
        Powers::Divided(op) => {
            let mut x = v;
            for k in 1..=cap {
                x = op.apply(&x)?.scale(&qint(k as i64).inv()?);
                if x.is_zero() {
                    return Ok(Some(k));
                }
            }
            Ok(None)
        }
        Powers::IDivided(op, dr) => {
            let e = dr
                .apply_label(l)?
                .get(l)
                .as_q_power()
                .ok_or_else(|| Error::NotDiagonal(format!("d(1/2) on {l}")))?;
            let parity = Parity::of(e + 1);
            let mut run = 0;
            for k in 0..=cap + 1 {
                let y = op.apply_polynomial(&idivided_power_polynomial(parity, k as u32), &v)?;
                run = if y.is_zero() { run + 1 } else { 0 };
                if run == 2 {
                    return Ok(Some(k - 1));
                }
            }
            Ok(None)
        }
    }
}

fn integrability(ctx: &mut Ctx) -> Result<Tally> {
    let f = ctx.family();
    let (m, n, d) = (ctx.m(), ctx.n(), ctx.d());
    ctx.positive("m", m)?;
    ctx.positive("n", n)?;
    ctx.limit(theta_count(f, m, n, d))?;
    let h = HoweSpace::new(f, m, n, d);
    let basis = h.basis()?;
    let cap = truncation_cap(basis.len());
    let mut t = Tally::default();
    let mut max = serde_json::Map::new();
    for (side, rank) in [(Side::Left, m), (Side::Right, n)] {
        let mut deepest = 0usize;
        for g in igenerators(f, rank) {
            let p = match g {
                IGen::B0 => Powers::IDivided(h.operator(side, &g)?, h.operator(side, &IGen::Dr(Half::HALF))?),
                IGen::B(_) => Powers::Divided(h.operator(side, &g)?),
                _ => continue,
            };
            let res = basis.par_iter().map(|l| vanishing_index(&p, l, cap)).collect::<Result<Vec<_>>>()?;
            for (l, r) in basis.iter().zip(res) {
                deepest = deepest.max(r.unwrap_or(0));
                t.assert(&format!("{side:?} {g}"), r.is_some(), || Witness {
                    label: l.to_string(),
                    lhs: format!("nonzero power past {cap}"),
                    rhs: "0".into(),
                });
            }
        }
        max.insert(format!("{side:?}").to_lowercase(), json!(deepest));
    }
    t.detail("dimension", json!(basis.len()));
    t.detail("vanishing_index", Value::Object(max));
    Ok(t)
}

fn t0_element(ctx: &mut Ctx) -> Result<Tally> {
    let f = ctx.require_family(Family::J)?;
    let (m, n, d) = (ctx.m(), ctx.n(), ctx.d());
    ctx.positive("m", m)?;
    ctx.positive("n", n)?;
    ctx.limit(theta_count(f, m, n, d))?;
    ctx.limit((f.ambient(m) as u128).saturating_pow(n))?;
    let mut t = Tally::default();

    let h = Half::HALF;
    let tw = tensor_igen_operator(f, m, n, &IGen::T0)?;
    let bp = tensor_igen_operator(f, m, n, &IGen::B(h))?;
    let bm = tensor_igen_operator(f, m, n, &IGen::B(-h))?;
    let kk = tensor_igen_operator(f, m, n, &IGen::Ki(h))?;
    let tens = TensorRep::new(f.ambient(m), n).basis()?;
    t.sweep("tensor word", &tens, |l| {
        let v = by(l);
        let e = kk
            .apply_label(l)?
            .get(l)
            .as_q_power()
            .ok_or_else(|| Error::NotDiagonal(format!("k(1/2) on {l}")))?;
        let rhs = bp
            .apply(&bm.apply(&v)?)?
            .sub(&bm.apply(&bp.apply(&v)?)?.scale(&q(1)))
            .sub(&v.scale(&qint(e)));
        Ok((tw.apply_label(l)?, rhs))
    })?;

    let hs = HoweSpace::new(f, m, n, d);
    let basis = hs.basis()?;
    for (side, rank) in [(Side::Right, m), (Side::Left, n)] {
        let other = if side == Side::Right { Side::Left } else { Side::Right };
        let t0 = hs.operator(side, &IGen::T0)?;
        let mut gens = igenerators(f, rank);
        gens.extend(ki(f, rank));
        for (name, g) in howe_ops(&hs, other, &gens)? {
            let (a, b) = match side {
                Side::Right => (g.clone(), t0.clone()),
                Side::Left => (t0.clone(), g.clone()),
            };
            // a on the left, b on the right
            t.sweep(&format!("{side:?} t0 | {name}"), &basis, |l| {
                Ok((a.apply(&b.apply_label(l)?)?, b.apply(&a.apply_label(l)?)?))
            })?;
        }
    }
    t.detail("dimension", json!(basis.len()));
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete() {
        let ids: Vec<_> = list_checks().into_iter().map(|c| c.0).collect();
        for id in ["qgroup-relations", "lambda-iso-i", "lambda-iso-j", "unequal-parameter", "braidK", "truncation"] {
            assert!(ids.contains(&id), "{id}");
        }
        let uniq: HashSet<_> = ids.iter().collect();
        assert_eq!(uniq.len(), ids.len());
    }

    #[test]
    fn unknown_check() {
        assert!(matches!(run_check("nope", &Params::new(), &Options::default()), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn size_limit() {
        let p = Params::new().family(Family::I).m(2).n(2).d(2);
        let r = run_check("commute", &p, &Options { cap: 3 });
        assert!(matches!(r, Err(Error::SizeLimit(_, 3))));
    }

    #[test]
    fn type_b_group() {
        assert_eq!(type_b_words(1).len(), 2);
        assert_eq!(type_b_words(2).len(), 8);
        assert_eq!(type_b_words(3).len(), 48);
        let longest = type_b_words(2).into_iter().map(|w| w.len()).max();
        assert_eq!(longest, Some(4));
    }

    #[test]
    fn hecke_image_dimensions() {
        assert_eq!(hecke_image_dimension(Family::I, 2, 2), 8);
        assert_eq!(hecke_image_dimension(Family::I, 3, 3), 48);
        assert_eq!(hecke_image_dimension(Family::I, 2, 3), 46);
        assert_eq!(hecke_image_dimension(Family::I, 1, 2), 6);
        assert_eq!(hecke_image_dimension(Family::J, 1, 2), 7);
        assert_eq!(hecke_image_dimension(Family::I, 1, 1), 2);
    }

    #[test]
    fn hecke_quadratic_counts() {
        let p = Params::new().family(Family::I).m(2).n(2);
        let r = run_check("hecke-quadratic", &p, &Options::default()).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.checked, 32);
    }

    #[test]
    fn commute_j111() {
        let p = Params::new().family(Family::J).m(1).n(1).d(1);
        let r = run_check("commute", &p, &Options::default()).unwrap();
        assert_eq!(r.status, Status::Pass, "{:?}", r.witness);
    }

    #[test]
    fn body_is_stable() {
        let p = Params::new().family(Family::I).m(1).n(2).d(1);
        let a = run_check("commute", &p, &Options::default()).unwrap();
        let b = run_check("commute", &p, &Options::default()).unwrap();
        assert_eq!(a.body().to_string(), b.body().to_string());
        assert!(a.body().get("elapsed_ms").is_none());
        assert!(a.to_json()["sidecar"].get("elapsed_ms").is_some());
    }

    #[test]
    fn exit_codes() {
        let ok = run_check("qgroup-relations", &Params::new().big_m(2), &Options::default());
        assert_eq!(exit_code(&[ok]), 0);
        assert_eq!(exit_code(&[Err(Error::UnknownCheck("x".into()))]), 2);
    }
}
