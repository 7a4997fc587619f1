//! Check records and their JSON / TSV renderings.
//!
//! Every number is exact: integers that fit in `i64` are JSON numbers, and
//! everything else (big integers, rationals, matrices) is a string such as
//! `"3/2"` or `"[[2,-1],[-1,2]]"`.

use std::fmt::{self, Display, Write as _};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, IntMatrix, RatMatrix, Rational};
use crate::hk_analysis::{
    analyze, brute_force_fixed_components, fixed_locus_on_abelian, freeness_codim_check, resolution_verdict, Freeness,
    LatticeSelector, RESOLUTION_SOURCE,
};
use crate::invariant_theory::{decomposition_check, invariant_report};
use crate::lattice_tower::{invariant_intermediate_lattices, TowerBase, TowerReport, DEFAULT_SUBGROUP_CAP};
use crate::root_data::{dual_lattice_quotient_check, Family, RootDatum, RootSystemSpec};
use crate::weyl::{check_signed_permutation_structure, generate_group, group_order_formula, GroupCap};

pub(crate) fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_bigints<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub(crate) fn ser_bigint_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&r.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    }
    seq.end()
}

pub(crate) fn ser_ratmatrix<S: Serializer>(m: &RatMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratmatrix_string(m))
}

pub(crate) fn ser_intmatrix<S: Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_string())
}

pub(crate) fn ser_display<T: Display, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_opt_display<T: Display, S: Serializer>(x: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// `[[1/2,0],[0,1]]`.
pub fn ratmatrix_string(m: &RatMatrix) -> String {
    let mut out = String::from("[");
    for i in 0..m.rows() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for j in 0..m.cols() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format_rational(m.get(i, j)));
        }
        out.push(']');
    }
    out.push(']');
    out
}

/// One exact value in a check record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Text(String),
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Int(x) => s.serialize_i64(*x),
            Value::Text(t) => s.serialize_str(t),
        }
    }
}

impl Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(x) => write!(f, "{x}"),
            Value::Text(t) => f.write_str(t),
        }
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        i64::try_from(x).map_or_else(|_| Value::Text(x.to_string()), Value::Int)
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<&BigInt> for Value {
    fn from(x: &BigInt) -> Self {
        x.to_i64().map_or_else(|| Value::Text(x.to_string()), Value::Int)
    }
}

impl From<BigInt> for Value {
    fn from(x: BigInt) -> Self {
        Value::from(&x)
    }
}

impl From<&Rational> for Value {
    fn from(x: &Rational) -> Self {
        if x.is_integer() {
            Value::from(x.to_integer())
        } else {
            Value::Text(format_rational(x))
        }
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl From<&IntMatrix> for Value {
    fn from(m: &IntMatrix) -> Self {
        Value::Text(m.to_string())
    }
}

impl From<&RatMatrix> for Value {
    fn from(m: &RatMatrix) -> Self {
        Value::Text(ratmatrix_string(m))
    }
}

fn list<T: Display>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Text(format!("[{}]", xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
}

/// Ordered string-keyed values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Values(Vec<(String, Value)>);

impl Values {
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn push(&mut self, key: impl Into<String>, value: Value) {
        self.0.push((key.into(), value));
    }
}

impl Serialize for Values {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One named check: its outcome, the exact values behind it, and the claim
/// it tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub values: Values,
    pub paper_ref: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, status: Status, claim: impl Into<String>) -> Self {
        Self { name: name.into(), status, values: Values::default(), paper_ref: claim.into() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.values.push(key, value.into());
        self
    }

    fn failed_with(name: impl Into<String>, claim: &str, err: &Error) -> Self {
        Self::new(name, Status::Fail, claim).with("error", err.to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub arguments: Values,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
}

pub const TOOL_NAME: &str = "roothk";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

impl ReportDocument {
    pub fn new(command: impl Into<String>, arguments: Vec<(&str, Value)>, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Self {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            command: command.into(),
            arguments: Values(arguments.into_iter().map(|(k, v)| (k.to_string(), v)).collect()),
            summary,
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    /// 0 when no check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Header, then one row per check; values are `key=value` joined by `;`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("name\tstatus\tvalues\tpaper_ref\n");
        for c in &self.checks {
            let values = c.values.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
            let _ = writeln!(out, "{}\t{}\t{}\t{}", c.name, c.status.as_str(), tsv_clean(&values), tsv_clean(&c.paper_ref));
        }
        out
    }
}

fn tsv_clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

impl ReportDocument {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Tsv => self.to_tsv(),
        }
    }
}

const CLAIM_LEMMA: &str =
    "irreducible reflection representation: dim (Sym^2 V)^W = 1, dim (Wedge^2 V)^W = 0, dim (Wedge^2(V+V))^W = 1";
const CLAIM_DECOMPOSITION: &str = "Wedge^2(V+V) = 3 Wedge^2 V + Sym^2 V, on dimensions and on W-invariants";
const CLAIM_FREENESS: &str = "every w != 1 fixes a subspace of V+V of codimension at least 2";
const CLAIM_TOWER: &str = "W-stable lattices between the root lattice and its dual";
const CLAIM_RESOLUTION: &str = "symplectic resolution of (L x C^2)/W exists exactly for types A, B, C";
const CLAIM_DUAL_QUOTIENT: &str = "A_n*/A_n is cyclic of order n+1 and A_n* is the image of Z^(n+1) in the sum-zero hyperplane";
const CLAIM_SIGNED: &str = "W(B_n) is the group of 2^n n! signed permutation matrices";
const CLAIM_FIXED: &str = "fixed locus of w on L x A has (torsion of coker(w - I))^4 components, checked by enumerating torsion points";
const CLAIM_FORM: &str = "dim (Wedge^2(L x C^2))^W = 1: a unique W-invariant holomorphic 2-form";
const CLAIM_IRREDUCIBLE: &str = "L x Q is an irreducible W-module";
const CLAIM_MODEL: &str = "identification with a known hyperkahler model";

/// Lemma rows for each type in `specs`.
pub fn lemma_rows(specs: &[RootSystemSpec]) -> Vec<CheckRecord> {
    specs
        .iter()
        .map(|&spec| {
            let r = invariant_report(&RootDatum::new(spec));
            CheckRecord::new(format!("lemma/{spec}"), Status::from_bool(r.is_rank_one()), CLAIM_LEMMA)
                .with("sym2_invariants", r.dim_sym2_inv)
                .with("wedge2_invariants", r.dim_wedge2_inv)
                .with("wedge2_doubled_invariants", r.dim_wedge2_doubled_inv)
                .with("irreducible", r.irreducible)
        })
        .collect()
}

/// Decomposition identity for each type in `specs`.
pub fn decomposition_rows(specs: &[RootSystemSpec]) -> Vec<CheckRecord> {
    specs
        .iter()
        .map(|&spec| {
            let d = decomposition_check(&RootDatum::new(spec));
            CheckRecord::new(format!("decomposition/{spec}"), Status::from_bool(d.passed), CLAIM_DECOMPOSITION)
                .with("dim_wedge2_doubled", d.dim_wedge2_doubled)
                .with("dim_wedge2", d.dim_wedge2)
                .with("dim_sym2", d.dim_sym2)
                .with("inv_wedge2_doubled", d.inv_wedge2_doubled)
                .with("inv_wedge2", d.inv_wedge2)
                .with("inv_sym2", d.inv_sym2)
        })
        .collect()
}

/// What the tower over a given type is expected to be, when that is known
/// in closed form.
fn expected_tower(spec: RootSystemSpec) -> Option<(String, Vec<String>)> {
    let n = spec.rank();
    match spec.family() {
        Family::A => {
            let divisors = (1..=n + 1).filter(|d| (n + 1).is_multiple_of(*d)).count();
            Some((format!("{divisors} lattices, one per divisor of {}", n + 1), Vec::new()))
        }
        Family::B | Family::C if n >= 3 => {
            Some(("exactly D_n, Z^n, D_n*".into(), vec![format!("D{n}"), format!("Z{n}"), format!("D{n}*")]))
        }
        _ => None,
    }
}

fn tower_status(spec: RootSystemSpec, tower: &TowerReport) -> Status {
    match (spec.family(), expected_tower(spec)) {
        (Family::A, Some(_)) => {
            let n = spec.rank();
            Status::from_bool(tower.lattices.len() == (1..=n + 1).filter(|d| (n + 1).is_multiple_of(*d)).count())
        }
        (_, Some((_, labels))) => Status::from_bool(tower.labels() == labels),
        (_, None) => Status::Pass,
    }
}

/// The tower over one type: a summary row, then one row per lattice.
pub fn sublattice_rows(spec: RootSystemSpec) -> Vec<CheckRecord> {
    let name = format!("sublattices/{spec}");
    let tower = match TowerBase::for_spec(spec).and_then(|b| invariant_intermediate_lattices(&b, DEFAULT_SUBGROUP_CAP)) {
        Ok(t) => t,
        Err(e) => return vec![CheckRecord::failed_with(name, CLAIM_TOWER, &e)],
    };
    let mut summary = CheckRecord::new(name.clone(), tower_status(spec, &tower), CLAIM_TOWER)
        .with("base", tower.base_label.as_str())
        .with("discriminant_factors", list(&tower.discriminant_factors))
        .with("subgroups", tower.subgroup_count)
        .with("stable_lattices", tower.lattices.len())
        .with("labels", list(tower.labels()))
        .with("rescaling_classes", tower.classes.rescaling_classes.len());
    if let Some((expectation, _)) = expected_tower(spec) {
        summary = summary.with("expected", expectation);
    }
    let mut rows = vec![summary];
    for (i, l) in tower.lattices.iter().enumerate() {
        rows.push(
            CheckRecord::new(format!("{name}/{}", l.label), Status::Pass, CLAIM_TOWER)
                .with("position", i)
                .with("index", &l.index_over_root)
                .with("generators", list(l.subgroup_generators.iter().map(list)))
                .with("gram", &l.gram)
                .with("primitive_gram", &l.primitive_gram)
                .with("rescaling_class", tower.classes.rescaling_class_of(i)),
        );
    }
    rows
}

fn freeness_record(name: String, f: &Freeness) -> CheckRecord {
    match f {
        Freeness::Verified { min_codim, minimizers, elements_checked } => {
            CheckRecord::new(name, Status::Pass, CLAIM_FREENESS)
                .with("min_codim", *min_codim)
                .with("minimizers", *minimizers)
                .with("elements_checked", *elements_checked)
        }
        Freeness::Violated { min_codim } => {
            CheckRecord::new(name, Status::Fail, CLAIM_FREENESS).with("min_codim", *min_codim)
        }
        Freeness::SkippedGroupTooLarge { order, cap } => CheckRecord::new(name, Status::Skipped, CLAIM_FREENESS)
            .with("group_order", order)
            .with("group_cap", *cap),
    }
}

/// Freeness in codimension 2 for each type, skipping groups over the cap.
pub fn freeness_rows(specs: &[RootSystemSpec], cap: GroupCap) -> Vec<CheckRecord> {
    specs
        .iter()
        .map(|&spec| {
            let name = format!("freeness/{spec}");
            match freeness_codim_check(&RootDatum::new(spec), cap) {
                Ok(f @ Freeness::SkippedGroupTooLarge { .. }) => freeness_record(name, &f),
                Ok(f) => freeness_record(name, &f).with("group_order", group_order_formula(spec)),
                Err(e) => CheckRecord::failed_with(name, CLAIM_FREENESS, &e),
            }
        })
        .collect()
}

/// Smith-form component counts against torsion-point enumeration, over
/// every element of `W(spec)` with `|det(w − I)| ≤ max_det`.
pub fn fixed_locus_oracle_row(spec: RootSystemSpec, max_det: i64, cap: GroupCap) -> CheckRecord {
    let name = format!("fixed_locus/{spec}");
    let group = match generate_group(&RootDatum::new(spec), cap) {
        Ok(g) => g,
        Err(e) => return CheckRecord::failed_with(name, CLAIM_FIXED, &e),
    };
    let (mut compared, mut mismatches) = (0usize, 0usize);
    let mut counts = std::collections::BTreeMap::<BigInt, usize>::new();
    for (i, w) in group.element_iter().expect("enumerated").enumerate() {
        let det = w.sub(&IntMatrix::identity(w.rows())).determinant();
        if det.magnitude() > &max_det.unsigned_abs().into() {
            continue;
        }
        let entry = fixed_locus_on_abelian(&w, Some(i));
        compared += 1;
        match brute_force_fixed_components(&w) {
            Some((c, f)) if c == entry.component_count && f == entry.fix_dim_v => {}
            _ => mismatches += 1,
        }
        *counts.entry(entry.component_count).or_default() += 1;
    }
    CheckRecord::new(name, Status::from_bool(mismatches == 0 && compared > 0), CLAIM_FIXED)
        .with("elements_compared", compared)
        .with("mismatches", mismatches)
        .with("component_count_histogram", list(counts.iter().map(|(c, k)| format!("{c}:{k}"))))
}

pub fn resolution_rows() -> Vec<CheckRecord> {
    [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G, Family::H]
        .into_iter()
        .map(|f| {
            CheckRecord::new(format!("resolution/{f}"), Status::Pass, CLAIM_RESOLUTION)
                .with("verdict", resolution_verdict(f).to_string())
                .with("source", RESOLUTION_SOURCE)
        })
        .collect()
}

pub fn dual_quotient_rows(max_n: usize) -> Vec<CheckRecord> {
    (1..=max_n)
        .map(|n| {
            let name = format!("dual_quotient/A{n}");
            match dual_lattice_quotient_check(n) {
                Ok(c) => CheckRecord::new(name, Status::from_bool(c.passed), CLAIM_DUAL_QUOTIENT)
                    .with("invariant_factors", list(&c.invariant_factors))
                    .with("dual_gram", &c.dual_gram)
                    .with("basis_change", &c.basis_change),
                Err(e) => CheckRecord::failed_with(name, CLAIM_DUAL_QUOTIENT, &e),
            }
        })
        .collect()
}

pub fn signed_permutation_rows(ns: impl IntoIterator<Item = usize>, cap: GroupCap) -> Vec<CheckRecord> {
    ns.into_iter()
        .map(|n| {
            let name = format!("signed_permutations/B{n}");
            match check_signed_permutation_structure(n, cap) {
                Ok(r) => CheckRecord::new(name, Status::from_bool(r.passed), CLAIM_SIGNED)
                    .with("elements", r.element_count)
                    .with("expected", &r.expected_count)
                    .with("sign_changes", r.sign_changes)
                    .with("permutations", r.permutations),
                Err(e) => CheckRecord::failed_with(name, CLAIM_SIGNED, &e),
            }
        })
        .collect()
}

/// Rows for `analyze`: lattice, irreducibility, invariant 2-forms,
/// freeness, resolution and known model.
pub fn analyze_rows(spec: RootSystemSpec, selector: LatticeSelector, cap: GroupCap) -> Result<Vec<CheckRecord>> {
    let v = analyze(spec, selector, cap)?;
    let prefix = format!("{spec}/{}", v.lattice_label);
    let mut rows = vec![
        CheckRecord::new(format!("{prefix}/lattice"), Status::Pass, CLAIM_TOWER)
            .with("label", v.lattice_label.as_str())
            .with("index_over_base", &v.index_over_base)
            .with("primitive_gram", &v.lattice_gram),
        CheckRecord::new(format!("{prefix}/irreducible"), Status::from_bool(v.irreducible), CLAIM_IRREDUCIBLE)
            .with("irreducible", v.irreducible)
            .with("sym2_invariants", v.sym2_invariants)
            .with("wedge2_invariants", v.wedge2_invariants),
        CheckRecord::new(format!("{prefix}/symplectic_form_dim"), Status::from_bool(v.symplectic_form_dim == 1), CLAIM_FORM)
            .with("dim", v.symplectic_form_dim),
        freeness_record(format!("{prefix}/freeness_codim2"), &v.free_in_codim2),
        CheckRecord::new(format!("{prefix}/resolution"), Status::Pass, CLAIM_RESOLUTION)
            .with("verdict", v.resolution.to_string())
            .with("source", RESOLUTION_SOURCE),
    ];
    let model = CheckRecord::new(format!("{prefix}/known_model"), Status::Pass, CLAIM_MODEL);
    rows.push(match &v.known_model {
        Some(m) => model.with("tag", m.tag.as_str()).with("source", m.source.as_str()),
        None => model.with("tag", "none"),
    });
    Ok(rows)
}

/// Types checked by the lemma table of the default suite.
pub fn lemma_table() -> Vec<RootSystemSpec> {
    let mut out = Vec::new();
    let mut push = |f: Family, ranks: std::ops::RangeInclusive<usize>| {
        out.extend(ranks.map(|n| RootSystemSpec::new(f, n).expect("supported")));
    };
    push(Family::A, 1..=8);
    push(Family::B, 2..=7);
    push(Family::C, 2..=7);
    push(Family::D, 3..=8);
    push(Family::E, 6..=8);
    push(Family::F, 4..=4);
    push(Family::G, 2..=2);
    out
}

pub const DEFAULT_SUITE: &str = "default";

/// The `default` suite: lemma table, decomposition identity, towers,
/// freeness, fixed-locus oracle comparisons and the resolution table.
pub fn default_suite(cap: GroupCap) -> Vec<CheckRecord> {
    let table = lemma_table();
    let spec = |f, n| RootSystemSpec::new(f, n).expect("supported");
    let mut checks = lemma_rows(&table);
    checks.extend(decomposition_rows(&table));
    checks.extend(dual_quotient_rows(6));
    checks.extend(signed_permutation_rows(2..=5, cap));
    let mut towers: Vec<RootSystemSpec> = (1..=8).map(|n| spec(Family::A, n)).collect();
    towers.extend((3..=7).map(|n| spec(Family::B, n)));
    towers.extend((3..=7).map(|n| spec(Family::C, n)));
    towers.extend([spec(Family::D, 4), spec(Family::D, 5), spec(Family::E, 6), spec(Family::E, 7)]);
    for t in towers {
        checks.extend(sublattice_rows(t));
    }
    checks.extend(freeness_rows(&table, cap));
    for (f, n) in [(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::A, 3)] {
        checks.push(fixed_locus_oracle_row(spec(f, n), 8, cap));
    }
    checks.extend(resolution_rows());
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_render_exactly() {
        assert_eq!(Value::from(3usize), Value::Int(3));
        assert_eq!(Value::from(&crate::exact_linalg::rat(3, 2)), Value::Text("3/2".into()));
        let big = BigInt::from(10).pow(30);
        assert_eq!(Value::from(&big), Value::Text(big.to_string()));
        assert_eq!(ratmatrix_string(&RatMatrix::identity(2)), "[[1,0],[0,1]]");
    }

    #[test]
    fn document_shape() {
        let checks = vec![
            CheckRecord::new("a", Status::Pass, "x").with("k", 1usize),
            CheckRecord::new("b", Status::Skipped, "y"),
        ];
        let doc = ReportDocument::new("test", vec![("suite", "default".into())], checks);
        assert_eq!(doc.exit_code(), 0);
        let json: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(json["checks"][0]["values"]["k"], 1);
        assert_eq!(json["checks"][1]["status"], "skipped");
        assert_eq!(doc.to_tsv(), "name\tstatus\tvalues\tpaper_ref\na\tpass\tk=1\tx\nb\tskipped\t\ty\n");
        let failing = ReportDocument::new("t", vec![], vec![CheckRecord::new("c", Status::Fail, "z")]);
        assert_eq!(failing.exit_code(), 1);
    }

    #[test]
    fn lemma_and_tower_rows() {
        let rows = lemma_rows(&[RootSystemSpec::new(Family::G, 2).unwrap()]);
        assert_eq!(rows[0].status, Status::Pass);
        let rows = sublattice_rows(RootSystemSpec::new(Family::B, 3).unwrap());
        assert_eq!(rows[0].status, Status::Pass);
        assert_eq!(rows.len(), 4);
        let rows = sublattice_rows(RootSystemSpec::new(Family::A, 5).unwrap());
        assert_eq!(rows[0].values.get("stable_lattices"), Some(&Value::Int(4)));
    }

    #[test]
    fn oracle_row_on_a2() {
        let r = fixed_locus_oracle_row(RootSystemSpec::new(Family::A, 2).unwrap(), 8, GroupCap::default());
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.values.get("elements_compared"), Some(&Value::Int(6)));
    }
}
