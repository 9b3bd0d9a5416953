//! Table and twist artifacts for the command line.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{QtkError, Result};
use crate::hopf::jordanian_twist;
use crate::matrix::Matrix;
use crate::qmink::{self, Gauge, NCPolynomial};
use crate::replib::{
    build_twist, minkowski_weight_rep, q_spin_rep, spin_rep, AlgRep, RMatrix, RepTwist, TwistFamily,
};
use crate::report::{CheckReport, Status};
use crate::scalars::{parse_scalar, Bindings, GaussRat, Scalar, Var};
use crate::spindirac;
use crate::suite::md_cell;

/// Output format for artifacts and reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

impl Format {
    pub fn from_name(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "markdown" | "md" => Some(Format::Markdown),
            _ => None,
        }
    }
}

/// Parse `key=value` parameter bindings. Keys are `r`, `s`, `xi`, `t`; values
/// must be constants.
pub fn parse_param(kv: &str) -> Result<(Var, GaussRat)> {
    let (k, v) = kv.split_once('=').ok_or_else(|| QtkError::Unsupported(format!("parameter '{kv}' is not key=value")))?;
    let var = Var::from_name(k.trim()).ok_or_else(|| QtkError::Unsupported(format!("unknown parameter '{}'", k.trim())))?;
    let val = parse_scalar(v.trim())?
        .as_constant()
        .ok_or_else(|| QtkError::Unsupported(format!("parameter {} needs a constant value", k.trim())))?;
    Ok((var, val))
}

/// Renders scalars after applying parameter bindings.
#[derive(Clone, Debug, Default)]
pub struct Renderer {
    pub bindings: Bindings,
}

impl Renderer {
    pub fn new(bindings: Bindings) -> Self {
        Renderer { bindings }
    }

    pub fn scalar(&self, s: &Scalar) -> Result<String> {
        if self.bindings.is_empty() {
            return Ok(s.to_string());
        }
        Ok(s.substitute(&self.bindings)?.to_string())
    }

    pub fn matrix(&self, m: &Matrix) -> Result<Vec<Vec<String>>> {
        m.to_rows().iter().map(|r| r.iter().map(|x| self.scalar(x)).collect()).collect()
    }

    fn table(&self, t: &qmink::Table) -> Result<Vec<Vec<String>>> {
        t.iter().map(|r| r.iter().map(|x| self.scalar(x)).collect()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    A,
    B,
    Relations,
    Quasi,
    Gamma,
    Clifford,
}

impl TableKind {
    pub const NAMES: [&'static str; 6] = ["a", "b", "relations", "quasi", "gamma", "clifford"];

    pub fn from_name(s: &str) -> Option<TableKind> {
        Some(match s {
            "a" => TableKind::A,
            "b" => TableKind::B,
            "relations" => TableKind::Relations,
            "quasi" => TableKind::Quasi,
            "gamma" => TableKind::Gamma,
            "clifford" => TableKind::Clifford,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            TableKind::A => "a",
            TableKind::B => "b",
            TableKind::Relations => "relations",
            TableKind::Quasi => "quasi",
            TableKind::Gamma => "gamma",
            TableKind::Clifford => "clifford",
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exchange factor `c` in `x * y = c y * x` for monomial generators.
fn exchange_factor(x: &NCPolynomial, y: &NCPolynomial, gauge: Gauge) -> Result<Scalar> {
    let xy = x.star_in(y, gauge)?;
    let yx = y.star_in(x, gauge)?;
    let (m, c1) = xy.terms().next().ok_or_else(|| QtkError::Evaluation("zero product".into()))?;
    let c2 = yx.coeff(m);
    if xy.len() != 1 || yx.len() != 1 || c2.is_zero() {
        return Err(QtkError::Evaluation(format!("{x} and {y} do not quasi-commute")));
    }
    c1.div_ref(&c2)
}

type Gen = fn(usize) -> NCPolynomial;

/// Build the artifact as JSON. `Gamma` and `Clifford` need the paper gauge.
pub fn emit_tables(what: TableKind, gauge: Gauge, r: &Renderer) -> Result<Value> {
    if matches!(what, TableKind::Gamma | TableKind::Clifford) && gauge != Gauge::Paper {
        return Err(QtkError::Unsupported(format!("{what} tables are built on the paper gauge, not {}", gauge.name())));
    }
    let head = |v: Value| json!({ "what": what.name(), "gauge": gauge.name(), "data": v });
    Ok(match what {
        TableKind::A | TableKind::B => {
            let (a, b) = qmink::exchange_tables(gauge)?;
            head(json!(r.table(if what == TableKind::A { &a } else { &b })?))
        }
        TableKind::Relations => {
            let pairs = [(1, 2), (1, 3), (4, 1), (2, 3), (2, 4), (3, 4)];
            let mut rows = Vec::new();
            for (i, j) in pairs {
                let c = exchange_factor(&NCPolynomial::z(i), &NCPolynomial::z(j), gauge)?;
                rows.push(json!({
                    "lhs": format!("z{i}*z{j}"),
                    "rhs": format!("z{j}*z{i}"),
                    "factor": r.scalar(&c)?,
                }));
            }
            head(json!(rows))
        }
        TableKind::Quasi => {
            let sectors: [(&str, Gen, Gen, &str, &str); 3] = [
                ("zz", NCPolynomial::z, NCPolynomial::z, "z", "z"),
                ("pp", NCPolynomial::p, NCPolynomial::p, "p", "p"),
                ("pz", NCPolynomial::p, NCPolynomial::z, "p", "z"),
            ];
            let mut out = serde_json::Map::new();
            for (name, x, y, xn, yn) in sectors {
                let mut t = Vec::new();
                for mu in 1..=4 {
                    let mut row = Vec::new();
                    for nu in 1..=4 {
                        row.push(r.scalar(&exchange_factor(&x(mu), &y(nu), gauge)?)?);
                    }
                    t.push(row);
                }
                out.insert(name.into(), json!({ "rows": format!("{xn}_mu"), "cols": format!("{yn}_nu"), "factors": t }));
            }
            head(Value::Object(out))
        }
        TableKind::Gamma => {
            let mut out = Vec::new();
            for mu in 1..=4 {
                out.push(json!({ "mu": mu, "matrix": r.matrix(&spindirac::twisted_gamma(mu))? }));
            }
            head(json!(out))
        }
        TableKind::Clifford => {
            let mut out = Vec::new();
            for mu in 1..=4 {
                for nu in 1..=4 {
                    let (g, h) = (spindirac::twisted_gamma(mu), spindirac::twisted_gamma(nu));
                    let ac = g.mul_ref(&h).add_ref(&h.mul_ref(&g));
                    let value = match scalar_multiple_of_identity(&ac) {
                        Some(c) => json!(r.scalar(&c)?),
                        None => json!(r.matrix(&ac)?),
                    };
                    out.push(json!({ "mu": mu, "nu": nu, "anticommutator": value }));
                }
            }
            head(json!(out))
        }
    })
}

fn scalar_multiple_of_identity(m: &Matrix) -> Option<Scalar> {
    let c = m.get(0, 0).clone();
    m.diff_witness(&Matrix::identity(m.rows()).scale(&c)).is_none().then_some(c)
}

fn md_grid(rows: &Value) -> String {
    let rows = rows.as_array().cloned().unwrap_or_default();
    let n = rows.first().and_then(|r| r.as_array()).map_or(0, |r| r.len());
    let mut s = format!("| |{}\n|---|{}\n", (1..=n).map(|j| format!(" {j} |")).collect::<String>(), "---|".repeat(n));
    for (i, row) in rows.iter().enumerate() {
        s += &format!("| {} |", i + 1);
        for x in row.as_array().into_iter().flatten() {
            s += &format!(" {} |", md_cell(&json_text(x)));
        }
        s.push('\n');
    }
    s
}

fn json_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Markdown rendering of an [`emit_tables`] artifact.
pub fn tables_markdown(v: &Value) -> String {
    let what = v["what"].as_str().unwrap_or("");
    let mut s = format!("# Table `{what}` ({} gauge)\n\n", v["gauge"].as_str().unwrap_or(""));
    let data = &v["data"];
    match what {
        "a" | "b" => s += &md_grid(data),
        "relations" => {
            s += "| relation | factor |\n|---|---|\n";
            for row in data.as_array().into_iter().flatten() {
                s += &format!("| {} = c {} | {} |\n", json_text(&row["lhs"]), json_text(&row["rhs"]), md_cell(&json_text(&row["factor"])));
            }
        }
        "quasi" => {
            for (name, t) in data.as_object().into_iter().flatten() {
                s += &format!("## {name}\n\n{}\n", md_grid(&t["factors"]));
            }
        }
        "gamma" => {
            for g in data.as_array().into_iter().flatten() {
                s += &format!("## gamma{}\n\n{}\n", g["mu"], md_grid(&g["matrix"]));
            }
        }
        "clifford" => {
            s += "| mu | nu | anticommutator |\n|---|---|---|\n";
            for e in data.as_array().into_iter().flatten() {
                s += &format!("| {} | {} | {} |\n", e["mu"], e["nu"], md_cell(&json_text(&e["anticommutator"])));
            }
        }
        _ => {}
    }
    s
}

/// Representation named by a spin label: `1/2`, `1`, ... for sl2 families,
/// `a:b` for Lorentz families (`1/2:1/2` is the coordinate rep).
pub fn rep_for(family: TwistFamily, spin: &str) -> Result<AlgRep> {
    let lorentz = matches!(family, TwistFamily::AbelianCartan | TwistFamily::LorentzJordanian | TwistFamily::JordanianCartan);
    if lorentz {
        let (a, b) = spin.split_once(':').unwrap_or((spin, spin));
        let (a, b) = (two_j(a)?, two_j(b)?);
        if (a, b) == (1, 1) {
            return Ok(minkowski_weight_rep());
        }
        return Ok(AlgRep::lorentz_pair(&spin_rep(a), &spin_rep(b)));
    }
    if spin.contains(':') {
        return Err(QtkError::UnsupportedRep(format!("{family} acts on sl2 reps, got '{spin}'")));
    }
    let j = two_j(spin)?;
    Ok(match family {
        TwistFamily::RqAsTwist => q_spin_rep(j),
        _ => spin_rep(j),
    })
}

/// `2j` for a spin label such as `1/2` or `3/2` or `1`.
fn two_j(s: &str) -> Result<usize> {
    let s = s.trim();
    let bad = || QtkError::UnsupportedRep(format!("spin '{s}'"));
    let v = match s.split_once('/') {
        Some((n, "2")) => n.parse::<usize>().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => 2 * s.parse::<usize>().map_err(|_| bad())?,
    };
    if v == 0 || v > 6 {
        return Err(bad());
    }
    Ok(v)
}

/// Whether `R̃ = Φ₂₁⁻¹Φ` twists the classical `R = 1`.
fn has_classical_r(family: TwistFamily) -> bool {
    matches!(
        family,
        TwistFamily::AbelianCartan
            | TwistFamily::Jordanian
            | TwistFamily::LorentzJordanian
            | TwistFamily::JordanianCartan
            | TwistFamily::Identity
    )
}

/// Twist matrix on `V⊗W`, its twisted classical R-matrix (for `V = W`) and checks.
pub fn emit_twist(family: TwistFamily, spins: &[String], order: usize, r: &Renderer) -> Result<Value> {
    let (sv, sw) = match spins {
        [] => (default_spin(family), default_spin(family)),
        [a] => (a.clone(), a.clone()),
        [a, b] => (a.clone(), b.clone()),
        _ => return Err(QtkError::Unsupported("at most two spins".into())),
    };
    let (v, w) = (rep_for(family, &sv)?, rep_for(family, &sw)?);
    let t: RepTwist = build_twist(family);
    let phi = t.matrix(&v, &w)?;
    let mut checks: Vec<CheckReport> = vec![t.normalization_check(&v)?];
    let mut rt = Value::Null;
    if v == w {
        if v.dim <= 4 {
            checks.push(t.cocycle_check_rep(&v, &v, &v)?);
        }
        if has_classical_r(family) {
            let rm = RMatrix::twisted(&RMatrix::classical(v.dim), &t, &v)?;
            checks.push(rm.ybe_check(&t.label)?);
            checks.push(rm.triangularity_check(&t.label));
            rt = json!(r.matrix(&rm.matrix)?);
        }
    }
    let mut out = json!({
        "family": family.to_string(),
        "label": t.label,
        "reps": [v.label, w.label],
        "matrix": r.matrix(&phi)?,
        "r_matrix": rt,
        "checks": checks,
        "status": if checks.iter().all(|c| c.status != Status::Fail) { "pass" } else { "fail" },
    });
    if family == TwistFamily::Jordanian {
        out["order"] = json!(order);
        out["universal"] = json!(jordanian_twist(order).to_string());
    }
    Ok(out)
}

fn default_spin(family: TwistFamily) -> String {
    match family {
        TwistFamily::AbelianCartan | TwistFamily::LorentzJordanian | TwistFamily::JordanianCartan => "1/2:1/2".into(),
        _ => "1/2".into(),
    }
}

pub fn twist_markdown(v: &Value) -> String {
    let mut s = format!("# Twist `{}`\n\nreps: {}\n\n## twist matrix\n\n{}\n", json_text(&v["family"]), v["reps"], md_grid(&v["matrix"]));
    if !v["r_matrix"].is_null() {
        s += &format!("## twisted R-matrix\n\n{}\n", md_grid(&v["r_matrix"]));
    }
    if let Some(u) = v.get("universal") {
        s += &format!("## universal element to order {}\n\n`{}`\n\n", v["order"], json_text(u));
    }
    s += "## checks\n\n| check | status | witness |\n|---|---|---|\n";
    for c in v["checks"].as_array().into_iter().flatten() {
        s += &format!(
            "| {} | {} | {} |\n",
            md_cell(&json_text(&c["check"])),
            json_text(&c["status"]),
            md_cell(c["witness"].as_str().unwrap_or(""))
        );
    }
    s
}

/// Canonical JSON text: sorted keys, two-space indent, trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_table_matches_fixture() {
        let v = emit_tables(TableKind::A, Gauge::Paper, &Renderer::default()).unwrap();
        assert_eq!(v["data"], json!(qmink::table_strings(&qmink::paper_a_table())));
    }

    #[test]
    fn relations_at_r_one_are_trivial() {
        let r = Renderer::new(vec![parse_param("r=1").unwrap()]);
        let v = emit_tables(TableKind::Relations, Gauge::Paper, &r).unwrap();
        let rows = v["data"].as_array().unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|x| x["factor"] == "1"));
        let plain = emit_tables(TableKind::Relations, Gauge::Paper, &Renderer::default()).unwrap();
        let factors: Vec<&str> = plain["data"].as_array().unwrap().iter().map(|x| x["factor"].as_str().unwrap()).collect();
        assert_eq!(factors.iter().filter(|f| **f == "1").count(), 2);
    }

    #[test]
    fn clifford_has_sixteen_entries() {
        let v = emit_tables(TableKind::Clifford, Gauge::Paper, &Renderer::default()).unwrap();
        let d = v["data"].as_array().unwrap();
        assert_eq!(d.len(), 16);
        let e13 = d.iter().find(|e| e["mu"] == 1 && e["nu"] == 3).unwrap();
        assert_eq!(e13["anticommutator"], json!(crate::scalars::r_pow(1).to_string()));
        assert!(emit_tables(TableKind::Gamma, Gauge::SymmetricFootnote, &Renderer::default()).is_err());
    }

    #[test]
    fn abelian_twist_is_diagonal_monomial() {
        let v = emit_twist(TwistFamily::AbelianCartan, &[], 6, &Renderer::default()).unwrap();
        assert_eq!(v["status"], "pass");
        let m = v["matrix"].as_array().unwrap();
        assert_eq!(m.len(), 16);
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.as_array().unwrap().iter().enumerate() {
                if i != j {
                    assert_eq!(x, "0");
                }
            }
        }
    }

    #[test]
    fn jordanian_twist_at_xi_zero_is_identity() {
        let r = Renderer::new(vec![parse_param("xi=0").unwrap()]);
        let v = emit_twist(TwistFamily::Jordanian, &["1/2".into()], 3, &r).unwrap();
        assert_eq!(v["matrix"], json!([["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]));
        let plain = emit_twist(TwistFamily::Jordanian, &["1/2".into()], 3, &Renderer::default()).unwrap();
        assert_ne!(plain["matrix"], v["matrix"]);
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_param("r").is_err());
        assert!(parse_param("w=1").is_err());
        assert!(parse_param("r=xi").is_err());
        assert!(rep_for(TwistFamily::Jordanian, "1/3").is_err());
        assert!(rep_for(TwistFamily::Jordanian, "1/2:1/2").is_err());
        assert!(TableKind::from_name("d").is_none());
    }
}
