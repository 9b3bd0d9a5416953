//! Batch verification: suite selection, parallel execution and report assembly.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{QtkError, Result};
use crate::hopf::{cocycle_check_symbolic, jordanian_twist, jordanian_twist_double_xi, PbwTensor, TwistedHopf, UElement};
use crate::matrix::Matrix;
use crate::qmink::{self, Gauge, NCPolynomial, TableFixtures};
use crate::replib::{
    abelian_cartan, cartan_pair, jordanian, jordanian_cartan, lorentz_jordanian, minkowski_weight_rep, q_spin_rep, q_tensor,
    rq_as_twist, spin_rep, AlgRep, RMatrix, RepTwist,
};
use crate::report::{CheckReport, Status};
use crate::scalars::{classical_bindings, Bindings, GaussRat, Var};
use crate::spindirac;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hopf,
    Rep,
    Mink,
    Dirac,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Hopf, Suite::Rep, Suite::Mink, Suite::Dirac];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Rep => "rep",
            Suite::Mink => "mink",
            Suite::Dirac => "dirac",
        }
    }

    pub fn module(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf-sl2",
            Suite::Rep => "replib",
            Suite::Mink => "qmink",
            Suite::Dirac => "spindirac",
        }
    }

    /// Parse a comma-separated list; `all` selects every suite.
    pub fn parse_list(s: &str) -> Result<BTreeSet<Suite>> {
        let mut out = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "all" => out.extend(Suite::ALL),
                "hopf" => {
                    out.insert(Suite::Hopf);
                }
                "rep" => {
                    out.insert(Suite::Rep);
                }
                "mink" => {
                    out.insert(Suite::Mink);
                }
                "dirac" => {
                    out.insert(Suite::Dirac);
                }
                other => return Err(QtkError::Unsupported(format!("unknown suite '{other}'"))),
            }
        }
        if out.is_empty() {
            return Err(QtkError::Unsupported("empty suite list".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub suites: BTreeSet<Suite>,
    /// ξ-truncation order for the Hopf suite.
    pub order: usize,
    /// Polynomial degree bound for plane waves and operator checks.
    pub degree: u32,
    pub gauge: Gauge,
    pub fixtures: TableFixtures,
    /// Treat discrepancies with displayed formulas as failures.
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suites: Suite::ALL.into_iter().collect(),
            order: 6,
            degree: 6,
            gauge: Gauge::Paper,
            fixtures: TableFixtures::default(),
            strict: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.order < 1 {
            return Err(QtkError::Unsupported("order must be at least 1".into()));
        }
        if self.degree < 2 {
            return Err(QtkError::Unsupported("degree must be at least 2".into()));
        }
        if self.gauge != Gauge::Paper && self.suites.contains(&Suite::Dirac) {
            return Err(QtkError::Unsupported(format!("the dirac suite is built on the paper gauge, not {}", self.gauge.name())));
        }
        Ok(())
    }
}

/// One report line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub suite: Suite,
    pub module: String,
    pub check: String,
    /// Topic the check belongs to.
    pub anchor: String,
    pub status: Status,
    pub order: Option<usize>,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub config: RunConfig,
    pub entries: Vec<Entry>,
    /// Wall time per task, kept out of the canonical payload.
    pub timings: Vec<(String, Duration)>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.entries.iter().filter(|e| e.status == s).count()
    }

    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| match e.status {
            Status::Pass => true,
            Status::Fail => false,
            Status::Discrepancy => !self.config.strict,
        })
    }

    pub fn to_json(&self) -> Value {
        let c = &self.config;
        json!({
            "config": {
                "suites": c.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
                "order": c.order,
                "degree": c.degree,
                "gauge": c.gauge.name(),
                "strict": c.strict,
                "fixtures": {
                    "a": qmink::table_strings(&c.fixtures.a),
                    "b": qmink::table_strings(&c.fixtures.b),
                },
            },
            "summary": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "discrepancy": self.count(Status::Discrepancy),
                "status": if self.ok() { "pass" } else { "fail" },
            },
            "checks": self.entries,
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("# Verification report\n\n");
        let c = &self.config;
        let suites: Vec<_> = c.suites.iter().map(|s| s.name()).collect();
        s += &format!(
            "suites: {} | order: {} | degree: {} | gauge: {} | strict: {}\n\n",
            suites.join(","),
            c.order,
            c.degree,
            c.gauge.name(),
            c.strict
        );
        s += &format!(
            "**{}**: {} pass, {} fail, {} discrepancy\n\n",
            if self.ok() { "PASS" } else { "FAIL" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Discrepancy)
        );
        s += "| suite | module | anchor | check | status | order | witness |\n|---|---|---|---|---|---|---|\n";
        for e in &self.entries {
            let status = serde_json::to_value(e.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            let mut w = e.witness.clone().unwrap_or_default();
            if let Some(d) = &e.detail {
                if !w.is_empty() {
                    w += "; ";
                }
                w += d;
            }
            let order = e.order.map(|o| o.to_string()).unwrap_or_default();
            s += &format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                e.suite,
                e.module,
                md_cell(&e.anchor),
                md_cell(&e.check),
                status,
                order,
                md_cell(&w)
            );
        }
        s
    }
}

pub(crate) fn md_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

type TaskFn = Box<dyn Fn() -> Result<Vec<CheckReport>> + Send + Sync>;

struct Task {
    suite: Suite,
    anchor: &'static str,
    run: TaskFn,
}

fn task(suite: Suite, anchor: &'static str, run: impl Fn() -> Result<Vec<CheckReport>> + Send + Sync + 'static) -> Task {
    Task { suite, anchor, run: Box::new(run) }
}

/// Run the selected suites. Tasks execute in parallel; entries come back in task order.
pub fn run_suite(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let tasks: Vec<Task> = cfg.suites.iter().flat_map(|&s| tasks_for(s, cfg)).collect();
    let results: Vec<(Vec<Entry>, (String, Duration))> = tasks
        .par_iter()
        .map(|t| {
            let start = Instant::now();
            let reports = (t.run)().unwrap_or_else(|e| vec![CheckReport::fail(t.anchor, None, format!("error: {e}"))]);
            let elapsed = start.elapsed();
            let entries = reports
                .into_iter()
                .map(|r| Entry {
                    suite: t.suite,
                    module: t.suite.module().to_string(),
                    check: r.check,
                    anchor: t.anchor.to_string(),
                    status: r.status,
                    order: r.order,
                    witness: r.witness,
                    detail: r.detail,
                })
                .collect();
            (entries, (format!("{}/{}", t.suite, t.anchor), elapsed))
        })
        .collect();
    let mut entries = Vec::new();
    let mut timings = Vec::new();
    for (e, t) in results {
        entries.extend(e);
        timings.push(t);
    }
    Ok(Report { config: cfg.clone(), entries, timings })
}

fn tasks_for(suite: Suite, cfg: &RunConfig) -> Vec<Task> {
    match suite {
        Suite::Hopf => hopf_tasks(cfg.order),
        Suite::Rep => rep_tasks(),
        Suite::Mink => mink_tasks(cfg),
        Suite::Dirac => dirac_tasks(cfg.degree),
    }
}

/// Lowest order at which the doubled-ξ alternative is distinguishable.
const PROBE_MIN_ORDER: usize = 3;

/// A rejected alternative passes when it fails the identity it was meant to satisfy.
fn rejected(name: &str, probe: CheckReport) -> CheckReport {
    match probe.status {
        Status::Pass => CheckReport::fail(name, probe.order, "alternative satisfies the identity"),
        _ => CheckReport::pass(name, probe.order).with_detail(format!("alternative fails: {}", probe.witness.unwrap_or_default())),
    }
}

fn hopf_tasks(order: usize) -> Vec<Task> {
    let s = Suite::Hopf;
    vec![
        task(s, "jordanian cocycle", move || Ok(vec![cocycle_check_symbolic("jordanian twist cocycle", &jordanian_twist(order), order)])),
        task(s, "jordanian cocycle", move || {
            let n = order.max(PROBE_MIN_ORDER);
            let probe = cocycle_check_symbolic("double-xi", &jordanian_twist_double_xi(n), n);
            Ok(vec![rejected("double-xi jordanian form rejected", probe)])
        }),
        task(s, "twisted hopf structure", move || Ok(TwistedHopf::jordanian(order)?.structure_checks())),
        task(s, "real forms", move || Ok(TwistedHopf::jordanian(order)?.real_form_checks())),
        task(s, "classical limit", move || hopf_classical(order)),
    ]
}

/// Witness for the first term of `t` whose `ξ⁰` coefficient differs from that of `expect`.
fn xi0_witness(t: &PbwTensor, expect: &PbwTensor) -> Option<String> {
    let d = t.sub_ref(expect);
    let w = d.terms().find(|(_, c)| !c.coeff(0).is_zero()).map(|(k, c)| {
        let legs: Vec<String> = k.iter().map(|m| m.to_string()).collect();
        format!("{} at xi=0: {}", legs.join("⊗"), c.coeff(0))
    });
    w
}

fn xi0_witness_u(u: &UElement, expect: &UElement) -> Option<String> {
    let d = u.sub_ref(expect);
    let w = d.terms().find(|(_, c)| !c.coeff(0).is_zero()).map(|(m, c)| format!("{m} at xi=0: {}", c.coeff(0)));
    w
}

pub fn hopf_classical(order: usize) -> Result<Vec<CheckReport>> {
    let th = TwistedHopf::jordanian(order)?;
    let mut out = vec![
        CheckReport::from_witness("twist at xi=0 is 1⊗1", Some(order), xi0_witness(&th.phi, &PbwTensor::one(2, order))),
        CheckReport::from_witness("u at xi=0 is 1", Some(order), xi0_witness_u(&th.u, &UElement::one(order))),
    ];
    let w = th.generators().into_iter().find_map(|(n, g)| xi0_witness(&th.coproduct(&g), &g.coproduct()).map(|w| format!("{n}: {w}")));
    out.push(CheckReport::from_witness("twisted coproduct at xi=0 is classical", Some(order), w));
    let w = th.generators().into_iter().find_map(|(n, g)| xi0_witness_u(&th.antipode(&g), &g.antipode()).map(|w| format!("{n}: {w}")));
    out.push(CheckReport::from_witness("twisted antipode at xi=0 is classical", Some(order), w));
    Ok(out)
}

fn half() -> AlgRep {
    spin_rep(1)
}

fn cube(t: &RepTwist, v: &AlgRep) -> Result<CheckReport> {
    t.cocycle_check_rep(v, v, v)
}

fn rep_tasks() -> Vec<Task> {
    let s = Suite::Rep;
    vec![
        task(s, "cocycle on representations", || {
            let m = minkowski_weight_rep();
            let (h, one) = (half(), spin_rep(2));
            let j = jordanian();
            Ok(vec![
                cube(&abelian_cartan(), &m)?,
                cube(&j, &h)?,
                cube(&j, &one)?,
                j.cocycle_check_rep(&h, &one, &h)?,
                cube(&lorentz_jordanian(), &m)?,
                cube(&jordanian_cartan(true), &m)?,
                rejected("reversed jordanian-cartan composite rejected", cube(&jordanian_cartan(false), &m)?),
            ])
        }),
        task(s, "twist normalization", || {
            let m = minkowski_weight_rep();
            Ok(vec![
                abelian_cartan().normalization_check(&m)?,
                jordanian().normalization_check(&half())?,
                jordanian().normalization_check(&spin_rep(2))?,
                lorentz_jordanian().normalization_check(&m)?,
                jordanian_cartan(true).normalization_check(&m)?,
            ])
        }),
        task(s, "r-matrices", || {
            let (h, q) = (half(), q_spin_rep(1));
            let m = minkowski_weight_rep();
            let rq = RMatrix::rq(&q)?;
            let rh = RMatrix::rh(&h)?;
            let ab = RMatrix::twisted(&RMatrix::classical(4), &abelian_cartan(), &m)?;
            Ok(vec![
                rq.ybe_check("rq spin-1/2")?,
                rh.ybe_check("rh spin-1/2")?,
                ab.ybe_check("abelian twist of the classical r-matrix")?,
                rh.triangularity_check("rh spin-1/2"),
                ab.triangularity_check("abelian twist of the classical r-matrix"),
                rq.intertwining_check("rq spin-1/2", &q_tensor(&q, &q, 1)?),
                rh.intertwining_check("rh spin-1/2", &jordanian().twisted_tensor(&h, &h)?),
                ab.intertwining_check("abelian twist of the classical r-matrix", &abelian_cartan().twisted_tensor(&m, &m)?),
            ])
        }),
        task(s, "factorizable twists", || {
            let (h, q) = (half(), q_spin_rep(1));
            let mut out = rq_as_twist().factorizability_check(&q, &q, &q, &q)?;
            out.extend(cartan_pair().factorizability_check(&h, &h, &h, &h)?);
            Ok(out)
        }),
        task(s, "classical limit", rep_classical),
    ]
}

/// `r = s = 1`, `ξ = 0`, `t = ln r = 0`.
pub fn classical_bindings_with_t() -> Bindings {
    let mut b = classical_bindings();
    b.push((Var::T, GaussRat::zero()));
    b
}

fn identity_witness(m: &Matrix) -> Result<Option<String>> {
    let c = m.substitute(&classical_bindings_with_t())?;
    Ok(c.diff_witness(&Matrix::identity(c.rows())))
}

pub fn rep_classical() -> Result<Vec<CheckReport>> {
    let m = minkowski_weight_rep();
    let (h, one, q) = (half(), spin_rep(2), q_spin_rep(1));
    let mut out = Vec::new();
    let cases: [(RepTwist, &AlgRep); 5] =
        [(abelian_cartan(), &m), (jordanian(), &h), (jordanian(), &one), (lorentz_jordanian(), &m), (jordanian_cartan(true), &m)];
    for (t, v) in &cases {
        let w = identity_witness(&t.matrix(v, v)?)?;
        out.push(CheckReport::from_witness(format!("twist at classical point is 1 [{}; {}]", t.label, v.label), None, w));
        let (l, r) = t.cocycle_sides(v, v, v)?;
        let w = identity_witness(&l)?.or(identity_witness(&r)?);
        out.push(CheckReport::from_witness(format!("cocycle sides at classical point are 1 [{}; {}]", t.label, v.label), None, w));
    }
    let rs = [
        ("rq spin-1/2", RMatrix::rq(&q)?),
        ("rh spin-1/2", RMatrix::rh(&h)?),
        ("abelian twist of the classical r-matrix", RMatrix::twisted(&RMatrix::classical(4), &abelian_cartan(), &m)?),
    ];
    for (name, r) in rs {
        out.push(CheckReport::from_witness(format!("r-matrix at classical point is 1 [{name}]"), None, identity_witness(&r.matrix)?));
    }
    Ok(out)
}

fn mink_tasks(cfg: &RunConfig) -> Vec<Task> {
    let s = Suite::Mink;
    let fixtures = cfg.fixtures.clone();
    let gauge = cfg.gauge;
    let n = cfg.degree;
    let mut out = vec![
        task(s, "exchange tables", move || Ok(vec![qmink::tables_check(&fixtures)])),
        task(s, "exchange relations", || Ok(qmink::quasi_commutation_checks())),
        task(s, "coordinate relations", || {
            let mut v = qmink::six_relations_check();
            v.extend(qmink::centrality_checks());
            Ok(v)
        }),
        task(s, "invariants", || {
            let mut v = qmink::invariants_check(Gauge::Paper)?;
            v.extend(qmink::delta_basis_checks());
            Ok(v)
        }),
        task(s, "matrix form", || Ok(qmink::v_form_checks())),
        task(s, "klein-gordon", move || Ok(qmink::kgf_checks(n as u16, n))),
        task(s, "omega", qmink::omega_checks),
        task(s, "undressing", qmink::undressing_checks),
        task(s, "conjugation", qmink::bar_checks),
        task(s, "classical limit", mink_classical),
    ];
    if gauge != Gauge::Paper {
        out.push(task(s, "gauge choice", move || gauge_checks(gauge)));
    }
    out
}

/// Checks that only depend on the exchange factors, run in another gauge.
pub fn gauge_checks(gauge: Gauge) -> Result<Vec<CheckReport>> {
    let mut out = qmink::invariants_check(gauge)?;
    let (a, b) = qmink::exchange_tables(gauge)?;
    let (pa, pb) = qmink::exchange_tables(Gauge::Paper)?;
    let mut w = None;
    for i in 0..4 {
        for j in 0..4 {
            let x = a[i][j].mul_ref(&b[j][i]);
            let y = pa[i][j].mul_ref(&pb[j][i]);
            if x != y {
                w.get_or_insert(format!("({},{}): {x} vs {y}", i + 1, j + 1));
            }
        }
    }
    out.push(CheckReport::from_witness(format!("exchange factors agree with the paper gauge [{}]", gauge.name()), None, w));
    let gens: Vec<NCPolynomial> = (1..=4).map(NCPolynomial::z).chain((1..=4).map(NCPolynomial::p)).collect();
    let mut w = None;
    'outer: for x in &gens {
        for y in &gens {
            for z in &gens {
                let l = x.star_in(y, gauge)?.star_in(z, gauge)?;
                let r = x.star_in(&y.star_in(z, gauge)?, gauge)?;
                if let Some(t) = l.sub_ref(&r).first_term() {
                    w = Some(format!("{x}, {y}, {z}: {t}"));
                    break 'outer;
                }
            }
        }
    }
    out.push(CheckReport::from_witness(format!("star product associative on generator triples [{}]", gauge.name()), None, w));
    Ok(out)
}

pub fn mink_classical() -> Result<Vec<CheckReport>> {
    let b = classical_bindings();
    let mut out = Vec::new();
    let (a, bt) = qmink::exchange_tables(Gauge::Paper)?;
    let mut w = None;
    for (name, t) in [("a", &a), ("b", &bt)] {
        for i in 0..4 {
            for j in 0..4 {
                let v = t[i][j].substitute(&b)?;
                if !v.is_one() {
                    w.get_or_insert(format!("{name}({},{}) = {v}", i + 1, j + 1));
                }
            }
        }
    }
    out.push(CheckReport::from_witness("exchange tables at r=1 are 1", None, w));

    let gens: Vec<NCPolynomial> =
        (1..=4).map(NCPolynomial::z).chain((1..=4).map(NCPolynomial::p)).chain((1..=4).map(NCPolynomial::d)).collect();
    let mut w = None;
    for x in &gens {
        for y in &gens {
            let d = x.star(y).substitute(&b)?.sub_ref(&x.classical_mul(y));
            if let Some(t) = d.first_term() {
                w.get_or_insert(format!("{x}*{y}: {t}"));
            }
        }
    }
    out.push(CheckReport::from_witness("star product at r=1 is classical", None, w));

    for (name, l, r) in qmink::six_relations() {
        let d = l.sub_ref(&r).substitute(&b)?;
        out.push(CheckReport::from_witness(format!("relation {name} at r=1 is commutativity"), None, d.first_term()));
    }

    let w = (1..=4).find_map(|m| {
        (1..=4).find_map(|n| {
            let v = qmink::twisted_metric(m, n).substitute(&b).ok()?;
            (v != qmink::metric(m, n)).then(|| format!("({m},{n}): {v}"))
        })
    });
    out.push(CheckReport::from_witness("twisted metric at r=1 is classical", None, w));
    let d = qmink::twisted_dalembertian().substitute(&b)?.sub_ref(&qmink::dalembertian());
    out.push(CheckReport::from_witness("twisted d'Alembertian at r=1 is classical", None, d.first_term()));
    Ok(out)
}

fn dirac_tasks(degree: u32) -> Vec<Task> {
    let s = Suite::Dirac;
    vec![
        task(s, "gamma matrices", spindirac::gamma_checks),
        task(s, "dirac equation", move || spindirac::dirac_checks(degree)),
        task(s, "classical limit", dirac_classical),
    ]
}

pub fn dirac_classical() -> Result<Vec<CheckReport>> {
    let b = classical_bindings();
    let mut out = Vec::new();
    let w = (1..=4).find_map(|mu| {
        let g = spindirac::twisted_gamma(mu).substitute(&b).ok()?;
        g.diff_witness(&spindirac::classical_gamma(mu)).map(|w| format!("gamma{mu} {w}"))
    });
    out.push(CheckReport::from_witness("twisted gammas at r=1 are classical", None, w));
    let mut w = None;
    for mu in 1..=4 {
        for nu in 1..=4 {
            let (g, h) = (spindirac::classical_gamma(mu), spindirac::classical_gamma(nu));
            let ac = g.mul_ref(&h).add_ref(&h.mul_ref(&g));
            let two_g = qmink::metric(mu, nu).mul_ref(&crate::scalars::int(2));
            if let Some(d) = ac.diff_witness(&Matrix::identity(4).scale(&two_g)) {
                w.get_or_insert(format!("({mu},{nu}) {d}"));
            }
        }
    }
    out.push(CheckReport::from_witness("classical clifford relations", None, w));
    let d = spindirac::dirac_operator().star(&spindirac::dirac_operator()).substitute(&b)?;
    let box_cl = spindirac::MatPoly::scalar(&qmink::dalembertian());
    out.push(CheckReport::from_witness("dirac square at r=1 is minus classical box", None, d.add_ref(&box_cl).first_nonzero()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suites: &[Suite]) -> RunConfig {
        RunConfig { suites: suites.iter().copied().collect(), ..RunConfig::default() }
    }

    #[test]
    fn suite_list_parsing() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 4);
        assert_eq!(Suite::parse_list("mink, dirac").unwrap().len(), 2);
        assert!(Suite::parse_list("nope").is_err());
        assert!(Suite::parse_list("").is_err());
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig { order: 0, ..RunConfig::default() }.validate().is_err());
        assert!(RunConfig { degree: 1, ..RunConfig::default() }.validate().is_err());
        let sym = RunConfig { gauge: Gauge::SymmetricFootnote, ..cfg(&[Suite::Mink]) };
        assert!(sym.validate().is_ok());
        assert!(RunConfig { gauge: Gauge::SymmetricFootnote, ..RunConfig::default() }.validate().is_err());
    }

    #[test]
    fn hopf_order_one_passes() {
        let r = run_suite(&RunConfig { order: 1, ..cfg(&[Suite::Hopf]) }).unwrap();
        for e in &r.entries {
            assert_ne!(e.status, Status::Fail, "{e:?}");
        }
        assert!(r.ok());
    }

    #[test]
    fn classical_groups_pass() {
        for r in hopf_classical(4).unwrap().into_iter().chain(rep_classical().unwrap()).chain(mink_classical().unwrap()) {
            assert!(r.passed(), "{r:?}");
        }
        for r in dirac_classical().unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn symmetric_gauge_checks_pass() {
        for r in gauge_checks(Gauge::SymmetricFootnote).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn corrupted_fixture_fails_and_strict_mode() {
        let mut fixtures = TableFixtures::default();
        fixtures.a[0][0] = crate::scalars::r_pow(1);
        let r = run_suite(&RunConfig { fixtures, ..cfg(&[Suite::Mink]) }).unwrap();
        assert!(!r.ok());
        let bad = r.entries.iter().find(|e| e.status == Status::Fail).unwrap();
        assert!(bad.witness.as_deref().unwrap().contains("a(1,1)"));

        let r = run_suite(&cfg(&[Suite::Mink])).unwrap();
        assert!(r.ok());
        assert!(r.count(Status::Discrepancy) > 0);
        let strict = Report { config: RunConfig { strict: true, ..r.config.clone() }, ..r };
        assert!(!strict.ok());
    }

    #[test]
    fn report_is_deterministic() {
        let c = cfg(&[Suite::Rep]);
        let a = serde_json::to_string(&run_suite(&c).unwrap().to_json()).unwrap();
        let b = serde_json::to_string(&run_suite(&c).unwrap().to_json()).unwrap();
        assert_eq!(a, b);
    }
}
