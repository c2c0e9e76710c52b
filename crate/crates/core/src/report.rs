//! Target-by-target verification reports and their canonical serialization.
//!
//! Each target recomputes a block of results and compares every derived
//! value with its expected value. JSON output goes through
//! `serde_json::Value`, whose maps are sorted, so emitted bytes depend only
//! on the report contents.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{main_theorem_check, main_theorem_targets, mu, FixTable};
use crate::cyclo::{signature_defect, spin_number_feasible};
use crate::dynkin::{free_linear_on_s3, orbit_budget_check, ComponentGraph, ComponentKind};
use crate::groups::BuiltinGroup;
use crate::index_solver::{
    apply_filters, enumerate_profiles, project, solve_order4, standard_types, Filter, FixedPointProfile, ManifoldInvariants,
    MuFilter,
};
use crate::kummer::{build_tori, isotropy_certificate, kummer_verify, Deltas};
use crate::lattice::{betti_solver, k3_sublattice_for_factors, primitive_closure_quotient, BettiBranch, IntMatrix, IntegralLattice};
use crate::rational::{frac, int, to_canonical_string};
use crate::swcalc::{adjunction_check, basic_classes, knot_surgery_sw, sw_symmetry_check, Knot, SurgerySpec};
use crate::{par, Error, Rational, Result};

/// Target ids accepted by [`run_lemma`], besides `all`.
pub const TARGETS: [&str; 9] = ["2.2", "2.3", "2.4", "2.5", "3.2", "3.4", "4.1", "1.2", "main"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Mismatch,
    Unsupported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Mismatch => "mismatch",
            Status::Unsupported => "unsupported",
        }
    }
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// A published value.
    Reference,
    /// An independent recomputation.
    Recomputed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub derived: Value,
    pub basis: Basis,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub target: String,
    pub title: String,
    pub inputs: BTreeMap<String, Value>,
    pub derived: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub timing: bool,
}

fn q(r: &Rational) -> Value {
    Value::String(to_canonical_string(r))
}

fn qs(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(q).collect())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

struct Builder {
    target: &'static str,
    title: &'static str,
    inputs: BTreeMap<String, Value>,
    derived: BTreeMap<String, Value>,
    checks: Vec<Check>,
    unsupported: bool,
}

impl Builder {
    fn new(target: &'static str, title: &'static str) -> Builder {
        Builder { target, title, inputs: BTreeMap::new(), derived: BTreeMap::new(), checks: Vec::new(), unsupported: false }
    }

    fn input<T: Serialize>(&mut self, key: &str, v: T) -> &mut Self {
        self.inputs.insert(key.to_string(), to_value(&v));
        self
    }

    fn derive<T: Serialize>(&mut self, key: &str, v: T) -> &mut Self {
        self.derived.insert(key.to_string(), to_value(&v));
        self
    }

    fn expect<E: Serialize, D: Serialize>(&mut self, name: &str, basis: Basis, expected: E, derived: D) -> &mut Self {
        let (expected, derived) = (to_value(&expected), to_value(&derived));
        let pass = expected == derived;
        self.checks.push(Check { name: name.to_string(), expected, derived, basis, pass });
        self
    }

    fn reference<E: Serialize, D: Serialize>(&mut self, name: &str, expected: E, derived: D) -> &mut Self {
        self.expect(name, Basis::Reference, expected, derived)
    }

    fn recomputed<E: Serialize, D: Serialize>(&mut self, name: &str, expected: E, derived: D) -> &mut Self {
        self.expect(name, Basis::Recomputed, expected, derived)
    }

    fn finish(self) -> VerificationReport {
        let status = if self.checks.iter().any(|c| !c.pass) {
            Status::Mismatch
        } else if self.unsupported {
            Status::Unsupported
        } else {
            Status::Verified
        };
        VerificationReport {
            target: self.target.to_string(),
            title: self.title.to_string(),
            inputs: self.inputs,
            derived: self.derived,
            checks: self.checks,
            status,
            children: Vec::new(),
            elapsed_ms: None,
        }
    }
}

fn tuples(ps: &[FixedPointProfile]) -> Vec<Vec<i64>> {
    ps.iter().map(FixedPointProfile::tuple).collect()
}

fn solve(p: u32) -> Result<Vec<FixedPointProfile>> {
    enumerate_profiles(p, &standard_types(p)?, &ManifoldInvariants::k3(), 3)
}

fn type_defects(p: u32) -> Result<BTreeMap<String, Value>> {
    Ok(standard_types(p)?.into_iter().filter(|t| !t.unconstrained).map(|t| (t.label, q(&t.defect))).collect())
}

fn filter_names(fs: &[Filter]) -> Vec<String> {
    fs.iter().map(Filter::name).collect()
}

const EQUATIONS: [&str; 2] = [
    "lefschetz: 2 + t - (22 - t)/(p - 1) = sum_i n_i euler_i",
    "g-signature: p (2 b2plus_quotient - t) = sign(X) + sum_i n_i defect_i",
];

fn solution_summary(b: &mut Builder, raw: &[FixedPointProfile], filters: &[Filter], fin: &[FixedPointProfile]) {
    b.derive("equations", EQUATIONS)
        .derive("raw_solutions", tuples(raw))
        .derive("filters", filter_names(filters))
        .derive("final_solutions", tuples(fin));
}

fn lemma_2_2() -> Result<VerificationReport> {
    let mut b = Builder::new("2.2", "involution and order-4 fixed data");
    let inv = ManifoldInvariants::k3();
    b.input("manifold", &inv).input("b2plus_quotient", 3);
    let o2 = solve(2)?;
    b.derive("order2_profiles", &o2);
    b.reference("order2_solutions", [[14, 8]], tuples(&o2));
    b.reference("order2_isolated_points", [8], o2.iter().map(|p| p.isolated_points).collect::<Vec<_>>());
    let o4 = solve_order4(&inv)?;
    let spin = [Filter::spin()];
    let out = apply_filters(&o4, &spin)?;
    b.input("order4_filters", filter_names(&spin));
    b.derive("order4_profiles", &o4).derive("order4_removed", &out.removed);
    solution_summary(&mut b, &o4, &spin, &out.survivors);
    b.reference("order4_raw_solutions", [[8, 4, 0], [9, 4, 2], [10, 4, 4]], tuples(&o4));
    b.reference("order4_filtered_solutions", [[8, 4, 0]], tuples(&out.survivors));
    let split: Vec<[u64; 2]> = out.survivors.iter().filter_map(|p| p.order4.map(|s| [s.s_plus, s.s_minus])).collect();
    b.reference("order4_filtered_s_plus_s_minus", [[4, 0]], split);
    b.reference("order4_isolated_points", [4], out.survivors.iter().map(|p| p.isolated_points).collect::<Vec<_>>());
    b.reference("spin_number_feasible_8_-16", [-2, 2], spin_number_feasible(8, -16)?);
    b.reference("defect_1_3_4", "2", q(&signature_defect(1, 3, 4)?));
    b.reference("defect_1_1_4", "-2", q(&signature_defect(1, 1, 4)?));
    b.reference("defect_1_1_2", "0", q(&signature_defect(1, 1, 2)?));
    Ok(b.finish())
}

fn lemma_2_3() -> Result<VerificationReport> {
    let mut b = Builder::new("2.3", "order-3 fixed data");
    b.input("order", 3).input("b2plus_quotient", 3).input("types", standard_types(3)?.iter().map(|t| &t.label).collect::<Vec<_>>());
    let ps = solve(3)?;
    let projected = project(&ps, &["I", "II"]);
    b.derive("profiles", &ps).derive("profile_count", ps.len()).derive("solutions", &projected);
    solution_summary(&mut b, &ps, &[], &ps);
    b.reference("solutions", [[6, 0], [3, 2], [0, 4]], projected);
    let uvw = |p: &FixedPointProfile| (p.counts[0], p.counts[1], p.counts[2]);
    b.reference("2u+3v=12", true, ps.iter().all(|p| 2 * p.counts[0] + 3 * p.counts[1] == 12));
    b.reference("w<=6", true, ps.iter().all(|p| p.counts[2] <= 6));
    b.reference("t>=10", true, ps.iter().all(|p| p.t >= 10));
    b.reference("t=10_iff_(6,0,0)", true, ps.iter().all(|p| (p.t == 10) == (uvw(p) == (6, 0, 0))));
    b.reference("type_IV_unconstrained", true, ps.iter().all(|p| p.unconstrained == ["IV"]));
    b.reference("type_defects", json!({"I": "2/3", "II": "-2", "III": "-6"}), type_defects(3)?);
    b.recomputed("defect_1_2_3", "2/3", q(&signature_defect(1, 2, 3)?));
    Ok(b.finish())
}

fn lemma_2_4() -> Result<VerificationReport> {
    let mut b = Builder::new("2.4", "order-7 fixed data");
    let filters = [Filter::divisibility(3), Filter::mccooey()];
    b.input("order", 7).input("b2plus_quotient", 3).input("filters", filter_names(&filters));
    let ps = solve(7)?;
    let out = apply_filters(&ps, &filters)?;
    b.derive("profiles", &ps).derive("removed", &out.removed);
    solution_summary(&mut b, &ps, &filters, &out.survivors);
    b.reference("raw_solutions", [[4, 3, 0], [10, 2, 4], [16, 1, 8], [22, 0, 12]], tuples(&ps));
    b.reference("filtered_solutions", [[4, 3, 0]], tuples(&out.survivors));
    b.reference("isolated_points", [3], out.survivors.iter().map(|p| p.isolated_points).collect::<Vec<_>>());
    b.reference("type_defects", json!({"7-type-1": "10", "7-type-2": "-8"}), type_defects(7)?);
    let l = BuiltinGroup::L27.group();
    let seven = l.elements_of_order(7)[0];
    let n = l.normalizer(&l.cyclic_subgroup(seven)?)?;
    b.reference("normalizer_of_order7_in_L2(7)", json!({"order": 21, "index": 8}), json!({"order": n.group.order(), "index": n.index}));
    let d4 = orbit_budget_check(&ComponentGraph::new(ComponentKind::AffineD(4))?, 8, 19)?;
    b.derive("budget_D4_orbit8", &d4);
    b.reference("budget_D4_orbit8_pass", false, d4.pass);
    b.reference("D21_free_linear_on_S3", false, free_linear_on_s3(BuiltinGroup::D21).map(|f| f.acts_freely_linearly_on_s3));
    Ok(b.finish())
}

fn lemma_2_5() -> Result<VerificationReport> {
    let mut b = Builder::new("2.5", "order-5 fixed data");
    let filters = [Filter::divisibility(2), Filter::budget("5-type-2", ComponentKind::TangencyPairB, 6), Filter::mccooey()];
    b.input("order", 5).input("b2plus_quotient", 3).input("filters", filter_names(&filters));
    let ps = solve(5)?;
    let out = apply_filters(&ps, &filters)?;
    b.derive("profiles", &ps).derive("removed", &out.removed);
    solution_summary(&mut b, &ps, &filters, &out.survivors);
    b.reference("raw_solutions", [[6, 4, 0], [10, 3, 2], [14, 2, 4], [18, 1, 6], [22, 0, 8]], tuples(&ps));
    b.reference("filtered_solutions", [[6, 4, 0]], tuples(&out.survivors));
    b.reference("isolated_points", [4], out.survivors.iter().map(|p| p.isolated_points).collect::<Vec<_>>());
    b.reference("type_defects", json!({"5-type-1": "4", "5-type-2": "-8"}), type_defects(5)?);
    let a5 = BuiltinGroup::A5.group();
    let five = a5.elements_of_order(5)[0];
    let n = a5.normalizer(&a5.cyclic_subgroup(five)?)?;
    b.recomputed("normalizer_of_order5_in_A5", json!({"order": 10, "index": 6}), json!({"order": n.group.order(), "index": n.index}));
    b.reference("D10_free_linear_on_S3", false, free_linear_on_s3(BuiltinGroup::D10).map(|f| f.acts_freely_linearly_on_s3));
    Ok(b.finish())
}

fn lemma_3_2() -> Result<VerificationReport> {
    let mut b = Builder::new("3.2", "Betti arithmetic of the resolved quotient");
    b.input("branches", ["minus", "plus"]);
    let minus = betti_solver(BettiBranch::Minus);
    let plus = betti_solver(BettiBranch::Plus);
    b.derive("minus", &minus).derive("plus", &plus);
    b.reference("(m,k)", [[3, 1]], minus.iter().map(|s| [s.m, s.k]).collect::<Vec<_>>());
    b.reference("signature", [-16], minus.iter().map(|s| s.signature).collect::<Vec<_>>());
    b.recomputed("b2", [22], minus.iter().map(|s| s.b2).collect::<Vec<_>>());
    b.recomputed("plus_branch_solutions", 0, plus.len());
    Ok(b.finish())
}

fn lemma_3_4() -> Result<VerificationReport> {
    let mut b = Builder::new("3.4", "closure quotient against the abelianization");
    let groups = [BuiltinGroup::L27, BuiltinGroup::S5, BuiltinGroup::T192, BuiltinGroup::T48, BuiltinGroup::A44, BuiltinGroup::N72];
    b.input("ambient", "K3").input("groups", groups.iter().map(|g| g.name()).collect::<Vec<_>>());
    let k3 = IntegralLattice::k3();
    let rows = par::map(&groups, |g| -> Result<(String, Vec<i64>, Value, bool, Vec<i64>)> {
        let ab = g.group().commutator_data().abelianization.clone();
        let sub = k3_sublattice_for_factors(&ab)?;
        let cq = primitive_closure_quotient(&k3, &sub)?;
        let ab = ab.iter().map(|&d| d as i64).collect();
        Ok((g.name().to_string(), ab, to_value(&cq), cq.discriminant_relation_holds, cq.factors))
    });
    for row in rows {
        let (name, ab, cq, disc, factors) = row?;
        b.derive(&format!("quotient_{name}"), cq);
        b.recomputed(&format!("L/L'_{name}"), &ab, factors);
        b.recomputed(&format!("discriminant_relation_{name}"), true, disc);
    }
    Ok(b.finish())
}

fn knot_triples() -> Vec<[Knot; 3]> {
    let choices = [Knot::Unknot, Knot::trefoil()];
    let mut out = Vec::new();
    for m in 0..8usize {
        out.push([0, 1, 2].map(|j| choices[(m >> j) & 1].clone()));
    }
    out
}

fn theorem_4_1() -> Result<VerificationReport> {
    let mut b = Builder::new("4.1", "isotropy of basic classes and the r_X bound");
    let fam = build_tori(Deltas::default())?;
    b.input("deltas", fam.deltas).input("multiplicity", 4);
    let iso = isotropy_certificate(&fam)?;
    b.derive("isotropy", &iso);
    let k3 = IntegralLattice::k3();
    let inertia = k3.inertia();
    b.reference("K3_unimodular", true, k3.is_unimodular()?);
    b.reference("K3_even", true, k3.is_even());
    b.reference("K3_signature", -16, k3.signature());
    b.reference("K3_b2plus_b2minus", [3, 19], [inertia.positive, inertia.negative]);
    b.reference("torus_gram_zero", true, iso.gram.iter().flatten().all(|&x| x == 0));
    b.reference("torus_classes_isotropic", true, iso.isotropic);
    b.recomputed("torus_class_rank", 3, iso.rank);
    b.reference("rx_bound", 3, iso.rx_bound);
    let gram = IntMatrix::from_rows(&iso.gram)?;
    let mut per_triple = Vec::new();
    for knots in knot_triples() {
        let nontrivial = knots.iter().filter(|k| !k.is_trivial().unwrap_or(true)).count();
        let set = basic_classes(&knot_surgery_sw(&SurgerySpec::three_groups(knots.clone(), 4))?);
        let adj = adjunction_check(&set, &gram)?;
        per_triple.push(json!({
            "knots": knots.iter().map(Knot::to_string).collect::<Vec<_>>(),
            "nontrivial": nontrivial,
            "r_x": set.r_x,
            "adjunction_ok": adj,
        }));
        b.recomputed(&format!("r_x_{}", knots.iter().map(Knot::to_string).collect::<Vec<_>>().join("|")), nontrivial, set.r_x);
    }
    b.reference(
        "r_x_at_most_bound",
        true,
        per_triple.iter().all(|t| t["r_x"].as_u64().is_some_and(|r| r <= iso.rx_bound as u64)),
    );
    b.recomputed("adjunction_all", true, per_triple.iter().all(|t| t["adjunction_ok"] == json!(true)));
    b.derive("surgeries", per_triple);
    Ok(b.finish())
}

fn theorem_1_2() -> Result<VerificationReport> {
    let mut b = Builder::new("1.2", "equivariant Kummer construction and its basic classes");
    let deltas = Deltas::default();
    b.input("deltas", deltas).input("knot", "torus:2,3").input("multiplicity", 4);
    let k = kummer_verify(deltas)?;
    b.reference("rho_fixed_points", 16, k.rho_fixed);
    b.reference(
        "fixed_points_per_element",
        vec![8; 7],
        k.per_element_fixed.iter().map(|e| e.count).collect::<Vec<_>>(),
    );
    b.reference("fixed_point_pattern", true, k.per_element_fixed.iter().all(|e| e.pattern_ok));
    b.reference("pseudofree", true, k.pseudofree);
    b.reference("tori", 12, k.tori);
    b.reference("tori_disjoint", true, k.disjoint);
    b.recomputed("tori_pairs_checked", 66, k.pairs_checked);
    b.recomputed("tori_embedded", true, k.embedded);
    b.recomputed("tori_avoid_fixed_points", true, k.tori_avoid_fixed_points);
    b.reference("orbit_sizes", [4, 4, 4], k.orbits.iter().map(|o| o.orbit_size).collect::<Vec<_>>());
    b.reference("stabilizers_free_involutions", true, k.orbits.iter().all(|o| o.holds()));
    b.reference("omega_invariant", true, k.omega.rho_invariant && k.omega.g_invariant);
    b.recomputed("omega_nondegenerate", true, k.omega.det != 0);
    b.reference("tori_symplectic", true, k.omega.tori_symplectic);
    b.reference("induced_action_identity", true, k.induced_action_identity);
    let sw = knot_surgery_sw(&SurgerySpec::three_groups([Knot::trefoil(), Knot::trefoil(), Knot::trefoil()], 4))?;
    let set = basic_classes(&sw);
    b.recomputed("central_coefficient", 6859, set.zero_class_value);
    b.recomputed("basic_class_count", 729, set.count());
    b.reference("r_x", 3, set.r_x);
    b.recomputed("palindromic", true, sw_symmetry_check(&sw, 24, -16)?);
    b.reference("zero_class_basic", true, set.zero_class_violation().is_none());
    b.recomputed("sw_at_one", 1, sw.eval_at_one()?);
    b.derive("kummer", &k).derive("basic_class_count", set.count());
    Ok(b.finish())
}

fn main_theorem() -> Result<VerificationReport> {
    let mut b = Builder::new("main", "r_X bound for the main groups");
    let targets = main_theorem_targets();
    b.input("fix_table", FixTable::standard().entries()).input("b2plus_quotient", 3);
    b.input("groups", targets.iter().map(|(g, via)| json!({"group": g.name(), "evaluate_on_commutator": via})).collect::<Vec<_>>());
    let reports = par::map(&targets, |(g, _)| main_theorem_check(*g));
    for ((g, _), r) in targets.iter().zip(reports) {
        let r = r?;
        b.reference(&format!("mu_{}", g.name()), "5", q(&r.mu));
        b.reference(&format!("rx_bound_{}", g.name()), 0, r.rx_bound);
        b.recomputed(&format!("identities_{}", g.name()), true, r.identities_hold());
        b.derive(&format!("trace_{}", g.name()), &r);
    }
    let table = FixTable::standard();
    for g in [BuiltinGroup::A4xA4, BuiltinGroup::Q8CentralQ8Z3, BuiltinGroup::T24] {
        b.reference(&format!("mu_{}", g.name()), "5", q(&mu(&g.group(), &table)?));
    }
    b.reference("mu_trivial", "24", q(&mu(&BuiltinGroup::Trivial.group(), &table)?));
    // the alternative order-3 profile with Lefschetz number 12, i.e. (0,4,0)
    let a6 = MuFilter::for_group(BuiltinGroup::A6, 3)?;
    let a6_deltas = a6.deltas(12);
    b.derive("mu_units_A6", &a6);
    b.reference("mu_perturbation_A6", qs(&[frac(2, 3), frac(4, 3)]), dedup(&a6_deltas));
    let a44 = MuFilter::for_group(BuiltinGroup::A44, 3)?;
    let a44_deltas: Vec<Rational> = [9, 12].iter().flat_map(|&l| a44.deltas(l)).collect();
    b.derive("mu_units_A44", &a44).derive("mu_perturbation_A44", qs(&a44_deltas));
    b.reference("mu_perturbation_A44_nonintegral", true, a44_deltas.iter().all(|d| !d.is_integer()));
    b.recomputed("mu_perturbation_A6_nonintegral", true, a6_deltas.iter().all(|d| !d.is_integer()));
    b.recomputed("mu_floor", "5", q(&int(2 + 3)));
    Ok(b.finish())
}

/// Main-theorem report for a single group. Groups outside the theorem's
/// list come back `unsupported`.
pub fn main_theorem_report(group: BuiltinGroup) -> Result<VerificationReport> {
    let mut b = Builder::new("main", "r_X bound for one group");
    b.input("group", group.name()).input("fix_table", FixTable::standard().entries()).input("b2plus_quotient", 3);
    let r = main_theorem_check(group)?;
    if r.supported {
        b.reference(&format!("mu_{}", group.name()), "5", q(&r.mu));
        b.reference(&format!("rx_bound_{}", group.name()), 0, r.rx_bound);
    } else {
        b.unsupported = true;
    }
    b.recomputed(&format!("identities_{}", group.name()), true, r.identities_hold());
    b.derive("trace", &r);
    Ok(b.finish())
}

fn dedup(v: &[Rational]) -> Value {
    let mut s: Vec<Rational> = v.to_vec();
    s.sort();
    s.dedup();
    qs(&s)
}

fn dispatch(id: &str) -> Result<VerificationReport> {
    match id {
        "2.2" => lemma_2_2(),
        "2.3" => lemma_2_3(),
        "2.4" => lemma_2_4(),
        "2.5" => lemma_2_5(),
        "3.2" => lemma_3_2(),
        "3.4" => lemma_3_4(),
        "4.1" => theorem_4_1(),
        "1.2" => theorem_1_2(),
        "main" => main_theorem(),
        "all" => {
            let children = par::map(&TARGETS, |t| run_lemma(t)).into_iter().collect::<Result<Vec<_>>>()?;
            let mut b = Builder::new("all", "every target");
            b.input("targets", TARGETS);
            for c in &children {
                b.expect(&c.target, Basis::Recomputed, "verified", c.status.as_str());
            }
            let mut r = b.finish();
            r.children = children;
            Ok(r)
        }
        other => Err(Error::UnknownTarget(other.to_string())),
    }
}

pub fn run_lemma(id: &str) -> Result<VerificationReport> {
    run_lemma_with(id, RunOptions::default())
}

pub fn run_lemma_with(id: &str, opts: RunOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = dispatch(id.trim())?;
    if opts.timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Single-line JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(v: &T) -> String {
    let value = to_value(v);
    let mut s = serde_json::to_string(&value).unwrap_or_else(|_| "null".into());
    s.push('\n');
    s
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn paint(s: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{s}\x1b[0m")
    } else {
        s.to_string()
    }
}

fn status_tag(s: Status, color: bool) -> String {
    match s {
        Status::Verified => paint("verified", "32", color),
        Status::Mismatch => paint("mismatch", "31", color),
        Status::Unsupported => paint("unsupported", "33", color),
    }
}

fn text_into(r: &VerificationReport, color: bool, quiet: bool, out: &mut String) {
    out.push_str(&format!("[{}] {}  {}", status_tag(r.status, color), r.target, r.title));
    if let Some(ms) = r.elapsed_ms {
        out.push_str(&format!("  ({ms} ms)"));
    }
    out.push('\n');
    if r.children.is_empty() {
        for c in &r.checks {
            if quiet && c.pass {
                continue;
            }
            let mark = if c.pass { paint("ok  ", "32", color) } else { paint("FAIL", "31", color) };
            if c.pass {
                out.push_str(&format!("  {mark} {} = {}\n", c.name, compact(&c.derived)));
            } else {
                out.push_str(&format!(
                    "  {mark} {}: expected {}, derived {}\n",
                    c.name,
                    compact(&c.expected),
                    compact(&c.derived)
                ));
            }
        }
    }
    for c in &r.children {
        text_into(c, color, quiet, out);
    }
}

/// Text rendering. `quiet` keeps only status lines and failing checks.
pub fn emit_text(r: &VerificationReport, color: bool, quiet: bool) -> String {
    let mut out = String::new();
    text_into(r, color, quiet, &mut out);
    out
}

pub fn emit(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => to_canonical_json(r),
        Format::Text => emit_text(r, false, false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_target_verifies() {
        for t in TARGETS {
            let r = run_lemma(t).unwrap();
            let failed: Vec<_> = r.failed_checks().map(|c| &c.name).collect();
            assert_eq!(r.status, Status::Verified, "{t}: {failed:?}");
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn named_examples() {
        let r = run_lemma("2.4").unwrap();
        assert_eq!(r.check("filtered_solutions").unwrap().derived, json!([[4, 3, 0]]));
        let r = run_lemma("3.2").unwrap();
        assert_eq!(r.check("(m,k)").unwrap().derived, json!([[3, 1]]));
        let json = emit(&run_lemma("2.3").unwrap(), Format::Json);
        assert!(json.contains(r#""solutions":[[6,0],[3,2],[0,4]]"#));
        assert_eq!(json.lines().count(), 1);
        assert!(matches!(run_lemma("9.9"), Err(Error::UnknownTarget(_))));
    }

    #[test]
    fn emission_is_deterministic() {
        let a = emit(&run_lemma("2.5").unwrap(), Format::Json);
        let b = emit(&run_lemma("2.5").unwrap(), Format::Json);
        assert_eq!(a, b);
        assert!(!a.contains("elapsed_ms"));
        let timed = run_lemma_with("3.2", RunOptions { timing: true }).unwrap();
        assert!(timed.elapsed_ms.is_some());
    }

    #[test]
    fn single_group_reports() {
        assert_eq!(main_theorem_report(BuiltinGroup::T48).unwrap().status, Status::Verified);
        assert_eq!(main_theorem_report(BuiltinGroup::S5).unwrap().status, Status::Unsupported);
    }

    #[test]
    fn mismatch_status() {
        let mut b = Builder::new("x", "synthetic");
        b.reference("one", 1, 2);
        let r = b.finish();
        assert_eq!(r.status, Status::Mismatch);
        assert!(emit_text(&r, false, true).contains("FAIL one: expected 1, derived 2"));
    }
}
