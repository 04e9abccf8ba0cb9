use clap::ValueEnum;
use clifford_stringy::contributions::{
    chi_t, chi_t_via_delta, delta_closed, delta_direct, delta_recursive, G_of, OddChain, PairRule,
};
use clifford_stringy::exact::{Rational, RationalFunction};
use clifford_stringy::strata::{chi_t_strata, discrepancy_table};
use clifford_stringy::theorem::verify_main;
use clifford_stringy::toric::{
    check_local_convexity, cone_multiplicity, enumerate_max_cones, remark_a_holds, ConvexityCase, G_phi,
};
use clifford_stringy::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::ladder;
use crate::output::Section;

/// Largest `j` for the subset-sum δ.
pub const DIRECT_DELTA_MAX_J: u32 = 14;
/// Largest `t` for the subset-table and strata χ_t.
pub const TABLE_CHI_MAX_T: u32 = 32;
pub const FAN_MAX_L: usize = 14;
/// Keeps `k(n)` within the χ_t table cap.
pub const VERIFY_MAX_N: u64 = 500;

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation: exit 2.
    Usage(String),
    /// A computation failed outright: exit 1.
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Parse(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub sections: Vec<Section>,
    /// First failed identity; the output is still emitted.
    pub failure: Option<String>,
}

impl Outcome {
    fn new(sections: Vec<Section>, failure: Option<String>) -> Self {
        Outcome { sections, failure }
    }
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChiMethod {
    Direct,
    Delta,
    Strata,
    All,
}

type ChiFn = fn(u32) -> clifford_stringy::Result<Rational>;

pub fn chi_table(max_t: u32, method: ChiMethod) -> Result<Outcome, CliError> {
    let uses_table = matches!(method, ChiMethod::Direct | ChiMethod::Strata | ChiMethod::All);
    if uses_table && max_t > TABLE_CHI_MAX_T {
        return Err(CliError::Usage(format!(
            "--max-t {max_t}: direct and strata methods are capped at {TABLE_CHI_MAX_T}; use --method delta"
        )));
    }
    let methods: Vec<(&str, ChiFn)> = match method {
        ChiMethod::Direct => vec![("direct", chi_t)],
        ChiMethod::Delta => vec![("delta", chi_t_via_delta)],
        ChiMethod::Strata => vec![("strata", chi_t_strata)],
        ChiMethod::All => vec![("direct", chi_t), ("delta", chi_t_via_delta), ("strata", chi_t_strata)],
    };
    let mut rows = Section::new("chi_t");
    let mut failure = None;
    for t in 1..=max_t {
        let expected = Rational::from(if t % 2 == 1 { 1 } else { 2 });
        let mut row = serde_json::Map::new();
        row.insert("t".into(), json!(t));
        let mut ok = true;
        for (name, f) in &methods {
            let v = f(t)?;
            ok &= v == expected;
            row.insert((*name).into(), s(&v));
        }
        row.insert("ok".into(), json!(ok));
        if !ok && failure.is_none() {
            failure = Some(format!("chi_t pattern or method agreement fails at t = {t}"));
        }
        rows.push(Value::Object(row));
    }
    Ok(Outcome::new(vec![rows], failure))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DeltaMethod {
    Direct,
    Closed,
    Recursive,
}

impl DeltaMethod {
    fn name(self) -> &'static str {
        match self {
            DeltaMethod::Direct => "direct",
            DeltaMethod::Closed => "closed",
            DeltaMethod::Recursive => "recursive",
        }
    }

    fn compute(self, j: u32) -> RationalFunction {
        match self {
            DeltaMethod::Direct => delta_direct(j),
            DeltaMethod::Closed => delta_closed(j),
            DeltaMethod::Recursive => delta_recursive(j).swap_remove(j as usize),
        }
    }
}

pub fn delta(j: u32, method: Option<DeltaMethod>, eval_at: Option<&str>) -> Result<Outcome, CliError> {
    let at: Option<Rational> = eval_at
        .map(|x| x.parse().map_err(|_| CliError::Usage(format!("--eval {x}: not a rational number"))))
        .transpose()?;
    let mut skipped = None;
    let methods = match method {
        Some(DeltaMethod::Direct) if j > DIRECT_DELTA_MAX_J => {
            return Err(CliError::Usage(format!(
                "direct δ is capped at j ≤ {DIRECT_DELTA_MAX_J}; use --method closed or recursive"
            )));
        }
        Some(m) => vec![m],
        None if j > DIRECT_DELTA_MAX_J => {
            skipped = Some(format!("direct (j > {DIRECT_DELTA_MAX_J})"));
            vec![DeltaMethod::Closed, DeltaMethod::Recursive]
        }
        None => vec![DeltaMethod::Direct, DeltaMethod::Closed, DeltaMethod::Recursive],
    };
    let values: Vec<RationalFunction> = methods.iter().map(|m| m.compute(j)).collect();
    let mut rows = Section::new("delta");
    for (m, f) in methods.iter().zip(&values) {
        let row = match &at {
            None => json!({"j": j, "method": m.name(), "delta": f.factored_string()}),
            Some(x) => {
                let v = f.eval(x).map_err(|e| match e {
                    Error::Pole(_) => CliError::Failed(format!("δ[{j},a] has a pole at a = {x}")),
                    other => other.into(),
                })?;
                json!({"j": j, "method": m.name(), "a": s(x), "value": s(v)})
            }
        };
        rows.push(row);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    let mut summary = Section::new("summary");
    summary.push(json!({
        "j": j,
        "methods": methods.iter().map(|m| m.name()).collect::<Vec<_>>().join(","),
        "skipped": skipped,
        "agree": agree,
    }));
    let failure = (!agree).then(|| format!("δ methods disagree at j = {j}"));
    Ok(Outcome::new(vec![rows, summary], failure))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FanCheck {
    Smooth,
    Convex,
    Bridge,
}

/// `G_φ(T)` against `G(2T-1)` for every nonempty `T ⊆ {1..l}`; mismatching `T`.
pub fn bridge_mismatches(l: usize) -> Result<(usize, Vec<String>), CliError> {
    let total = (1u32 << l) - 1;
    let bad: Vec<Option<String>> = (1..=total)
        .into_par_iter()
        .map(|mask| {
            let t: Vec<usize> = (0..l).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            let odd = OddChain::new(t.iter().map(|&x| 2 * x as u32 - 1).collect())?;
            Ok((G_phi(&t)? != G_of(&odd)?).then(|| format!("{t:?}")))
        })
        .collect::<clifford_stringy::Result<_>>()?;
    Ok((total as usize, bad.into_iter().flatten().collect()))
}

pub fn fan(l: usize, checks: &[FanCheck]) -> Result<Outcome, CliError> {
    if !(1..=FAN_MAX_L).contains(&l) {
        return Err(CliError::Usage(format!("--l {l} outside 1..={FAN_MAX_L}")));
    }
    let cones = enumerate_max_cones(l)?;
    let mut failures: Vec<String> = Vec::new();
    let mut row = serde_json::Map::new();
    row.insert("l".into(), json!(l));
    row.insert("cone_count".into(), json!(cones.len()));
    if cones.len() != 1 << (l - 1) {
        failures.push(format!("cone count {} ≠ 2^{}", cones.len(), l - 1));
    }
    row.insert("cones".into(), serde_json::to_value(&cones).expect("serializable"));
    if checks.contains(&FanCheck::Smooth) {
        let mult: Vec<u64> = cones.iter().map(cone_multiplicity).collect::<clifford_stringy::Result<_>>()?;
        if mult.iter().any(|&m| m != 1) {
            failures.push("a cone has multiplicity ≠ 1".into());
        }
        row.insert("multiplicities".into(), json!(mult));
    }
    if checks.contains(&FanCheck::Convex) {
        let (violations, equality, strict) = if l >= 2 {
            let report = check_local_convexity(l)?;
            let v = serde_json::to_value(report.violations()).expect("serializable");
            (v, report.count(ConvexityCase::Equality), report.count(ConvexityCase::Strict))
        } else {
            (json!([]), 0, 0)
        };
        if violations.as_array().is_some_and(|v| !v.is_empty()) {
            failures.push("local convexity violated".into());
        }
        let remark = remark_a_holds(l)?;
        if !remark {
            failures.push("φ on a cone depends on more than its point segment".into());
        }
        row.insert("convexity_violations".into(), violations);
        row.insert("equality_pairs".into(), json!(equality));
        row.insert("strict_pairs".into(), json!(strict));
        row.insert("point_segment_determines_phi".into(), json!(remark));
    }
    if checks.contains(&FanCheck::Bridge) {
        let (count, bad) = bridge_mismatches(l)?;
        if !bad.is_empty() {
            failures.push(format!("G_φ ≠ G on {}", bad[0]));
        }
        row.insert("bridge_subsets".into(), json!(count));
        row.insert("bridge_mismatches".into(), json!(bad));
    }
    row.insert("ok".into(), json!(failures.is_empty()));
    let mut section = Section::new("fan");
    section.push(Value::Object(row));
    Ok(Outcome::new(vec![section], failures.into_iter().next()))
}

pub fn verify(n_max: u64) -> Result<Outcome, CliError> {
    if n_max > VERIFY_MAX_N {
        return Err(CliError::Usage(format!("--n-max {n_max} above the cap {VERIFY_MAX_N}")));
    }
    let mut failure = None;
    let mut theorem = Section::new("theorem");
    for n in 2..=n_max {
        let r = verify_main(n)?;
        if !r.passed() && failure.is_none() {
            failure = Some(format!("χ_cst = χ(Y) fails at n = {n}: {} vs {}", r.chi_cst_expr, r.chi_Y_expr));
        }
        theorem.push(json!({
            "n": n,
            "k": r.k,
            "symbolic_equal": r.symbolic_equal,
            "oracle_chi_Y": s(&r.oracle_chi_Y),
            "normal_forms_agree": r.normal_forms_agree,
            "constant_zero": r.constant_zero,
            "chi_cst": s(&r.chi_cst_expr),
            "chi_Y": s(&r.chi_Y_expr),
        }));
    }
    let mut checks = Section::new("ladder");
    for check in ladder::run() {
        if !check.ok && failure.is_none() {
            failure = Some(format!("{}: {}", check.name, check.detail));
        }
        checks.push(json!({"check": check.name, "ok": check.ok, "detail": check.detail}));
    }
    let mut summary = Section::new("summary");
    summary.push(json!({"n_max": n_max, "passed": failure.is_none(), "first_failure": failure}));
    Ok(Outcome::new(vec![theorem, checks, summary], failure))
}

pub fn discrepancies(k: u32) -> Result<Outcome, CliError> {
    let table = discrepancy_table(k)?;
    let printed_pair_37 = PairRule::PrintedExample.pair(3, 7);
    let mut rows = Section::new("discrepancies");
    let mut push = |family: &str, index: String, value: &Rational, note: Option<String>| {
        rows.push(json!({"family": family, "index": index, "value": s(value), "note": note}));
    };
    for (i, v) in &table.classical {
        push("classical", i.to_string(), v, None);
    }
    for (i, v) in &table.beta {
        push("beta", i.to_string(), v, None);
    }
    for (i, v) in &table.gamma {
        push("gamma", i.to_string(), v, None);
    }
    for ((i, j), v) in &table.tilde_pair {
        push("tilde", format!("{i},{j}"), v, None);
    }
    for (label, v) in &table.modified {
        let note = (label.to_string() == "3,7" && *v != printed_pair_37).then(|| {
            format!("paper-example-divergence: printed value {printed_pair_37}")
        });
        push("modified", label.to_string(), v, note);
    }
    Ok(Outcome::new(vec![rows], None))
}
