//! Trace bookkeeping on `H*(X; R)`: Lefschetz traces, `μ(G)`, eigenspace
//! dimensions and the `r_X` bound.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::invalid;
use crate::groups::{BuiltinGroup, FiniteGroup};
use crate::rational::{self, int};
use crate::{Error, Rational, Result};

/// Fixed-point counts by element order; order 1 holds `χ(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixTable {
    entries: BTreeMap<u32, i64>,
}

/// Provenance of each standard entry.
pub const FIX_TABLE_PROVENANCE: [(u32, &str); 8] = [
    (1, "Euler characteristic of K3"),
    (2, "even-type involution in the b2+ = 3 subgroup"),
    (3, "order-3 profile surviving all filters"),
    (4, "order-4 profile surviving the spin filter"),
    (5, "order-5 profile surviving all filters"),
    (6, "structural count for order-6 elements"),
    (7, "order-7 profile surviving all filters"),
    (8, "external constant: fixed points of an order-8 symplectic automorphism of a K3 surface"),
];

impl FixTable {
    /// `{1: 24, 2: 8, 3: 6, 4: 4, 5: 4, 6: 2, 7: 3, 8: 2}`.
    pub fn standard() -> FixTable {
        let entries = [(1, 24), (2, 8), (3, 6), (4, 4), (5, 4), (6, 2), (7, 3), (8, 2)].into_iter().collect();
        FixTable { entries }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u32, i64)>) -> Result<FixTable> {
        let entries: BTreeMap<u32, i64> = entries.into_iter().collect();
        if entries.values().any(|&v| v < 0) {
            return Err(invalid("fixed-point counts must be nonnegative"));
        }
        Ok(FixTable { entries })
    }

    pub fn get(&self, order: u32) -> Result<i64> {
        self.entries
            .get(&order)
            .copied()
            .ok_or_else(|| invalid(format!("fix table has no entry for element order {order}")))
    }

    pub fn with(mut self, order: u32, count: i64) -> FixTable {
        self.entries.insert(order, count);
        self
    }

    pub fn entries(&self) -> &BTreeMap<u32, i64> {
        &self.entries
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LefschetzTrace {
    /// Trace on `H*`.
    pub total: i64,
    /// Trace on `H²`.
    pub h2: i64,
}

/// Trace of a pseudofree element with `fix_count` fixed points.
pub fn lefschetz_trace(fix_count: i64) -> LefschetzTrace {
    LefschetzTrace { total: fix_count, h2: fix_count - 2 }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTrace {
    pub class: usize,
    pub representative: String,
    pub element_order: u32,
    pub size: usize,
    pub trace: i64,
}

pub fn class_traces(g: &FiniteGroup, table: &FixTable) -> Result<Vec<ClassTrace>> {
    g.conjugacy_classes()
        .iter()
        .enumerate()
        .map(|(class, c)| {
            Ok(ClassTrace {
                class,
                representative: c.representative_label.clone(),
                element_order: c.element_order,
                size: c.size,
                trace: lefschetz_trace(table.get(c.element_order)?).total,
            })
        })
        .collect()
}

/// `μ(G) = (1/|G|) Σ_classes size · trace`.
pub fn mu(g: &FiniteGroup, table: &FixTable) -> Result<Rational> {
    mu_from_traces(g.order(), &class_traces(g, table)?)
}

fn mu_from_traces(order: usize, traces: &[ClassTrace]) -> Result<Rational> {
    let total: i64 = traces.iter().map(|c| c.size as i64 * c.trace).sum();
    Ok(Rational::new(total, order as i64))
}

/// Alternative fixed-point count `fix_count` on the listed classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Perturbation {
    pub classes: Vec<usize>,
    pub fix_count: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuCheck {
    #[serde(with = "rational::serde_string")]
    pub baseline: Rational,
    #[serde(with = "rational::serde_string")]
    pub mu: Rational,
    #[serde(with = "rational::serde_string")]
    pub delta: Rational,
    pub accept: bool,
}

/// Recomputes `μ` with the perturbed classes and accepts iff it is integral.
pub fn mu_integrality_filter(g: &FiniteGroup, table: &FixTable, perturbation: &Perturbation) -> Result<MuCheck> {
    let mut traces = class_traces(g, table)?;
    let baseline = mu_from_traces(g.order(), &traces)?;
    for &c in &perturbation.classes {
        let t = traces
            .get_mut(c)
            .ok_or_else(|| invalid(format!("{} has no class {c}", g.name())))?;
        t.trace = lefschetz_trace(perturbation.fix_count).total;
    }
    let mu = mu_from_traces(g.order(), &traces)?;
    Ok(MuCheck { baseline, mu, delta: mu - baseline, accept: mu.is_integer() })
}

/// A union of classes of `h` whose fixed-point counts must change together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerturbationUnit {
    pub classes: Vec<usize>,
    pub size: usize,
    pub representative: String,
}

/// Classes of order-`order` elements of `h` open to a nonstandard count,
/// merged along conjugacy in `fusion` when given.
///
/// An order-3 element commuting with three involutions is forced to the
/// standard profile, so such classes are left out.
pub fn perturbation_units(h: &FiniteGroup, fusion: Option<&FiniteGroup>, order: u32) -> Result<Vec<PerturbationUnit>> {
    let classes = h.conjugacy_classes();
    let blocks: Vec<Vec<usize>> = match fusion {
        Some(g) => g.fuse_classes(h)?,
        None => (0..classes.len()).map(|c| vec![c]).collect(),
    };
    let mut out = Vec::new();
    for block in blocks {
        let first = &classes[block[0]];
        if first.element_order != order {
            continue;
        }
        if order == 3 && h.commuting_involutions(first.representative)? >= 3 {
            continue;
        }
        out.push(PerturbationUnit {
            size: block.iter().map(|&c| classes[c].size).sum(),
            representative: first.representative_label.clone(),
            classes: block,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenspaceDims {
    pub t: i64,
    pub p: u32,
    pub nontrivial_eigenvalues: u32,
    pub per_eigenvalue: i64,
}

/// Dimension `(22 − t)/(p − 1)` of each nontrivial eigenspace on `H²`.
pub fn eigenspace_dims(t: i64, p: u32) -> Result<EigenspaceDims> {
    if p < 2 {
        return Err(invalid("order must be at least 2"));
    }
    if !(0..=22).contains(&t) {
        return Err(invalid(format!("t = {t} is outside 0..=22")));
    }
    let m = p as i64 - 1;
    if (22 - t) % m != 0 {
        return Err(invalid(format!("22 - {t} is not divisible by {m}")));
    }
    Ok(EigenspaceDims { t, p, nontrivial_eigenvalues: p - 1, per_eigenvalue: (22 - t) / m })
}

/// `b₂⁺` of a quotient must be odd, and at most 3.
pub fn validate_b2plus_quotient(b: i64) -> Result<()> {
    if b == 1 || b == 3 {
        Ok(())
    } else {
        Err(invalid(format!("b2+ of the quotient must be 1 or 3, got {b}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub group: String,
    /// Group whose traces are averaged; `[G,G]` for some targets.
    pub evaluated_group: String,
    pub evaluated_order: usize,
    pub class_traces: Vec<ClassTrace>,
    #[serde(with = "rational::serde_string")]
    pub mu: Rational,
    #[serde(with = "rational::serde_string")]
    pub invariant_h2: Rational,
    pub b2plus_quotient: i64,
    #[serde(with = "rational::serde_string")]
    pub b2minus_quotient: Rational,
    pub rx_bound: i64,
    pub supported: bool,
    pub assumption: String,
}

impl TraceReport {
    /// `μ = 2 + b₂⁺ + b₂⁻` and `bound = min(b₂⁺, b₂⁻)`.
    pub fn identities_hold(&self) -> bool {
        self.mu == int(2 + self.b2plus_quotient) + self.b2minus_quotient
            && self.b2minus_quotient.is_integer()
            && self.rx_bound == self.b2plus_quotient.min(self.b2minus_quotient.to_integer())
    }
}

const ASSUMPTION: &str = "b2+(X/G0) = 3 is assumed, not computed";

/// Trace report for `g` with `b₂⁺` of the quotient given.
pub fn trace_report(
    name: &str,
    g: &FiniteGroup,
    table: &FixTable,
    b2plus_quotient: i64,
    supported: bool,
) -> Result<TraceReport> {
    validate_b2plus_quotient(b2plus_quotient)?;
    let class_traces = class_traces(g, table)?;
    let mu = mu_from_traces(g.order(), &class_traces)?;
    let b2minus = mu - int(2 + b2plus_quotient);
    if !b2minus.is_integer() || b2minus < int(0) {
        return Err(Error::Consistency(format!(
            "{}: mu = {} does not give a valid b2- of the quotient",
            g.name(),
            rational::to_canonical_string(&mu)
        )));
    }
    Ok(TraceReport {
        group: name.to_string(),
        evaluated_group: g.name().to_string(),
        evaluated_order: g.order(),
        class_traces,
        mu,
        invariant_h2: mu - int(2),
        b2plus_quotient,
        b2minus_quotient: b2minus,
        rx_bound: b2plus_quotient.min(b2minus.to_integer()),
        supported,
        assumption: ASSUMPTION.to_string(),
    })
}

/// Groups covered by the main theorem, with the subgroup whose traces are
/// averaged.
pub fn main_theorem_targets() -> [(BuiltinGroup, bool); 6] {
    [
        (BuiltinGroup::L27, false),
        (BuiltinGroup::A6, false),
        (BuiltinGroup::M20, false),
        (BuiltinGroup::A44, true),
        (BuiltinGroup::T192, true),
        (BuiltinGroup::T48, true),
    ]
}

/// `r_X` bound for `group` with the standard fix table. Groups outside the
/// theorem's list get a report with `supported = false`.
pub fn main_theorem_check(group: BuiltinGroup) -> Result<TraceReport> {
    let g = group.group();
    match main_theorem_targets().iter().find(|(t, _)| *t == group) {
        Some(&(_, via_commutator)) => {
            let h = if via_commutator { g.commutator_data().subgroup.clone() } else { g.clone() };
            trace_report(group.name(), &h, &FixTable::standard(), 3, true)
        }
        None => trace_report(group.name(), &g, &FixTable::standard(), 3, false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn brute_mu(g: &FiniteGroup, table: &FixTable) -> Rational {
        let total: i64 = g.elements().map(|e| table.get(g.element_order(e)).unwrap()).sum();
        Rational::new(total, g.order() as i64)
    }

    #[test]
    fn traces() {
        assert_eq!(lefschetz_trace(8), LefschetzTrace { total: 8, h2: 6 });
        assert_eq!(lefschetz_trace(3).total, 3);
        assert_eq!(lefschetz_trace(24).h2, 22);
    }

    #[test]
    fn mu_values() {
        let t = FixTable::standard();
        assert_eq!(mu(&BuiltinGroup::L27.group(), &t).unwrap(), int(5));
        assert_eq!(int(24 + 21 * 8 + 56 * 6 + 42 * 4 + 48 * 3) / int(168), int(5));
        assert_eq!(mu(&BuiltinGroup::A6.group(), &t).unwrap(), int(5));
        assert_eq!(mu(&BuiltinGroup::Trivial.group(), &t).unwrap(), int(24));
        for b in [BuiltinGroup::M20, BuiltinGroup::A4xA4, BuiltinGroup::Q8CentralQ8Z3, BuiltinGroup::T24] {
            assert_eq!(mu(&b.group(), &t).unwrap(), int(5), "{}", b.name());
        }
    }

    #[test]
    fn mu_matches_elementwise_sum() {
        let t = FixTable::standard();
        for &b in BuiltinGroup::all() {
            let g = b.group();
            let m = mu(&g, &t).unwrap();
            assert_eq!(m, brute_mu(&g, &t), "{}", b.name());
            assert!(m.is_integer() && m >= int(0), "{}", b.name());
        }
    }

    #[test]
    fn mu_of_subgroups_dominates() {
        let t = FixTable::standard();
        for b in [BuiltinGroup::T48, BuiltinGroup::T192, BuiltinGroup::A44, BuiltinGroup::F384, BuiltinGroup::S5] {
            let g = b.group();
            let h = g.commutator_data().subgroup.clone();
            assert!(mu(&h, &t).unwrap() >= mu(&g, &t).unwrap(), "{}", b.name());
        }
        let l = BuiltinGroup::L27.group();
        assert!(mu(&BuiltinGroup::D21.group(), &t).unwrap() >= mu(&l, &t).unwrap());
    }

    #[test]
    fn missing_order_is_named() {
        let t = FixTable::from_entries([(1, 24), (2, 8)]).unwrap();
        let err = mu(&BuiltinGroup::S3.group(), &t).unwrap_err();
        assert!(err.to_string().contains("order 3"));
        assert!(FixTable::from_entries([(1, -1)]).is_err());
    }

    #[test]
    fn a6_perturbations() {
        let g = BuiltinGroup::A6.group();
        let t = FixTable::standard();
        let units = perturbation_units(&g, None, 3).unwrap();
        assert_eq!(units.iter().map(|u| u.size).collect::<Vec<_>>(), vec![40, 40]);
        let one = mu_integrality_filter(&g, &t, &Perturbation { classes: units[0].classes.clone(), fix_count: 12 }).unwrap();
        assert_eq!((one.delta, one.accept), (frac(2, 3), false));
        let both: Vec<usize> = units.iter().flat_map(|u| u.classes.clone()).collect();
        let two = mu_integrality_filter(&g, &t, &Perturbation { classes: both, fix_count: 12 }).unwrap();
        assert_eq!((two.delta, two.accept), (frac(4, 3), false));
        let none = mu_integrality_filter(&g, &t, &Perturbation { classes: vec![], fix_count: 12 }).unwrap();
        assert_eq!((none.delta, none.accept), (int(0), true));
        assert!(mu_integrality_filter(&g, &t, &Perturbation { classes: vec![99], fix_count: 12 }).is_err());
    }

    #[test]
    fn a44_commutator_perturbations() {
        let g = BuiltinGroup::A44.group();
        let h = g.commutator_data().subgroup.clone();
        let t = FixTable::standard();
        let units = perturbation_units(&h, Some(&g), 3).unwrap();
        assert_eq!(units.len(), 2);
        assert!(units.iter().all(|u| u.classes.len() == 2 && u.size == 32));
        let mut deltas = Vec::new();
        for subset in [vec![0], vec![1], vec![0, 1]] {
            let classes: Vec<usize> = subset.iter().flat_map(|&i| units[i].classes.clone()).collect();
            let r = mu_integrality_filter(&h, &t, &Perturbation { classes, fix_count: 12 }).unwrap();
            assert!(!r.accept);
            deltas.push(r.delta);
        }
        assert_eq!(deltas, vec![frac(4, 3), frac(4, 3), frac(8, 3)]);
        assert_eq!(frac(4, 3), int(2) * frac(6, 9));
    }

    #[test]
    fn eigenspaces() {
        assert_eq!(eigenspace_dims(4, 7).unwrap().per_eigenvalue, 3);
        assert_eq!(eigenspace_dims(22, 5).unwrap().per_eigenvalue, 0);
        assert_eq!(eigenspace_dims(10, 3).unwrap().per_eigenvalue, 6);
        assert!(eigenspace_dims(5, 7).is_err());
        assert!(eigenspace_dims(30, 2).is_err());
    }

    #[test]
    fn main_theorem_reports() {
        for (b, _) in main_theorem_targets() {
            let r = main_theorem_check(b).unwrap();
            assert!(r.supported);
            assert_eq!(r.mu, int(5), "{}", b.name());
            assert_eq!(r.invariant_h2, int(3));
            assert_eq!(r.b2minus_quotient, int(0));
            assert_eq!(r.rx_bound, 0);
            assert!(r.identities_hold());
        }
        let a44 = main_theorem_check(BuiltinGroup::A44).unwrap();
        assert_eq!(a44.evaluated_order, 144);
        let s5 = main_theorem_check(BuiltinGroup::S5).unwrap();
        assert!(!s5.supported);
    }

    /// `μ ≥ 2 + b₂⁺ = 5` for any action, so this model cannot be symplectic.
    #[test]
    fn even_weight_model_is_not_symplectic() {
        let g = crate::groups::even_weight_extension().unwrap();
        assert_eq!(mu(&g, &FixTable::standard()).unwrap(), int(4));
        assert!(trace_report("2^4:A5", &g, &FixTable::standard(), 3, false).is_err());
    }

    #[test]
    fn a5_gives_no_restriction() {
        let a5 = BuiltinGroup::A5.group();
        let t = FixTable::standard().with(3, 12);
        let r = trace_report("A5", &a5, &t, 3, false).unwrap();
        assert_eq!(r.mu, int(8));
        assert_eq!(r.rx_bound, 3);
        assert!(r.identities_hold());
        assert!(r.mu <= int(8));
        assert!(trace_report("A5", &a5, &t, 2, false).is_err());
    }
}
