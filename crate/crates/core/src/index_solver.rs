//! Fixed-point profiles from the Lefschetz and G-signature equations, and
//! declarative filters that prune them.
//!
//! For an element of prime order `p` with `t`-dimensional 1-eigenspace on
//! `H²` and the nontrivial eigenvalues split equally:
//!
//! ```text
//! 2 + t − (22 − t)/(p − 1)      = Σ counts · euler
//! p · (2·b₂⁺(X/g) − t)          = −16 + Σ counts · defect
//! ```

use std::fmt;

use serde::Serialize;

use crate::cohomology::{perturbation_units, FixTable};
use crate::cyclo::{signature_defect, spin_number_feasible, surface_defect};
use crate::dynkin::{budget, ComponentGraph, ComponentKind};
use crate::error::invalid;
use crate::groups::BuiltinGroup;
use crate::rational::{self, int};
use crate::{par, Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ManifoldInvariants {
    pub b2plus: i64,
    pub b2minus: i64,
    pub b2: i64,
    pub euler: i64,
    pub signature: i64,
    pub b1: i64,
}

impl ManifoldInvariants {
    pub fn k3() -> ManifoldInvariants {
        ManifoldInvariants { b2plus: 3, b2minus: 19, b2: 22, euler: 24, signature: -16, b1: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.b2 == self.b2plus + self.b2minus
            && self.signature == self.b2plus - self.b2minus
            && self.euler == 2 - 2 * self.b1 + self.b2;
        if ok && self.b1 == 0 {
            Ok(())
        } else {
            Err(invalid("inconsistent manifold invariants"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixedSurface {
    pub euler: i64,
    pub self_intersection: i64,
}

/// One kind of group of fixed points, as a unit of the count vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedGroupTypeSpec {
    pub label: String,
    pub order: u32,
    pub points: u64,
    pub euler: i64,
    #[serde(with = "rational::serde_string")]
    pub defect: Rational,
    /// Rotation weights `(a, b)` at the isolated points.
    pub representations: Vec<(i64, i64)>,
    pub surfaces: Vec<FixedSurface>,
    /// Carried as an annotation and never solved for.
    pub unconstrained: bool,
}

impl FixedGroupTypeSpec {
    /// Builds a type from local data, computing Euler number and defect.
    pub fn new(label: &str, order: u32, representations: &[(i64, i64)], surfaces: &[FixedSurface]) -> Result<Self> {
        let points = representations.len() as u64;
        let euler = points as i64 + surfaces.iter().map(|s| s.euler).sum::<i64>();
        let defect = recompute_defect(order, representations, surfaces)?;
        let unconstrained = euler == 0 && defect == int(0);
        Ok(FixedGroupTypeSpec {
            label: label.to_string(),
            order,
            points,
            euler,
            defect,
            representations: representations.to_vec(),
            surfaces: surfaces.to_vec(),
            unconstrained,
        })
    }

    /// Builds a type with stated totals, failing if the local data disagree.
    pub fn stated(
        label: &str,
        order: u32,
        representations: &[(i64, i64)],
        surfaces: &[FixedSurface],
        euler: i64,
        defect: Rational,
    ) -> Result<Self> {
        let spec = FixedGroupTypeSpec::new(label, order, representations, surfaces)?;
        if spec.euler != euler || spec.defect != defect {
            return Err(Error::Consistency(format!(
                "type {label}: stated (euler {euler}, defect {}) but local data give (euler {}, defect {})",
                rational::to_canonical_string(&defect),
                spec.euler,
                rational::to_canonical_string(&spec.defect)
            )));
        }
        Ok(spec)
    }

    pub fn verify(&self) -> Result<()> {
        let d = recompute_defect(self.order, &self.representations, &self.surfaces)?;
        if d == self.defect {
            Ok(())
        } else {
            Err(Error::Consistency(format!("type {}: defect does not match its local data", self.label)))
        }
    }
}

fn recompute_defect(p: u32, reps: &[(i64, i64)], surfaces: &[FixedSurface]) -> Result<Rational> {
    let mut d = int(0);
    for &(a, b) in reps {
        d += signature_defect(a, b, p)?;
    }
    for s in surfaces {
        d += surface_defect(p, s.self_intersection);
    }
    Ok(d)
}

const SPHERE: FixedSurface = FixedSurface { euler: 2, self_intersection: -2 };
const TORUS: FixedSurface = FixedSurface { euler: 0, self_intersection: 0 };

/// The fixed-point group types used for order `p`.
pub fn standard_types(p: u32) -> Result<Vec<FixedGroupTypeSpec>> {
    let s = FixedGroupTypeSpec::stated;
    match p {
        2 => Ok(vec![s("2-point", 2, &[(1, 1)], &[], 1, int(0))?]),
        3 => Ok(vec![
            s("I", 3, &[(1, 2)], &[], 1, Rational::new(2, 3))?,
            s("II", 3, &[(1, 1), (1, 1), (1, 1)], &[], 3, int(-2))?,
            s("III", 3, &[(1, 1)], &[SPHERE], 3, int(-6))?,
            s("IV", 3, &[], &[TORUS], 0, int(0))?,
        ]),
        4 => Ok(vec![s("4-plus", 4, &[(1, 3)], &[], 1, int(2))?, s("4-minus", 4, &[(1, 1)], &[], 1, int(-2))?]),
        5 => Ok(vec![
            s("5-type-1", 5, &[(1, 4)], &[], 1, int(4))?,
            s("5-type-2", 5, &[(1, 2), (4, 4), (4, 4)], &[], 3, int(-8))?,
        ]),
        7 => Ok(vec![s("7-type-1", 7, &[(1, 6)], &[], 1, int(10))?, s("7-type-2", 7, &[(2, 3), (6, 6)], &[], 2, int(-8))?]),
        _ => Err(invalid(format!("no standard fixed-point types for order {p}"))),
    }
}

/// Eigenspace split of an order-4 element whose square fixes a
/// 14-dimensional subspace of `H²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Order4Split {
    pub t_plus: i64,
    pub t_minus: i64,
    pub s_plus: u64,
    pub s_minus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointProfile {
    pub order: u32,
    /// Dimension of the 1-eigenspace on `H²`.
    pub t: i64,
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
    /// Types present in any number without affecting either equation.
    pub unconstrained: Vec<String>,
    pub isolated_points: u64,
    /// Trace on `H*`, i.e. the Lefschetz number.
    pub lefschetz: i64,
    pub order4: Option<Order4Split>,
}

impl FixedPointProfile {
    /// `(t, counts…)`.
    pub fn tuple(&self) -> Vec<i64> {
        std::iter::once(self.t).chain(self.counts.iter().map(|&c| c as i64)).collect()
    }

    pub fn count(&self, label: &str) -> Option<u64> {
        self.labels.iter().position(|l| l == label).map(|i| self.counts[i])
    }

    fn sort_key(&self) -> (i64, Vec<u64>) {
        (self.t, self.counts.clone())
    }
}

impl fmt::Display for FixedPointProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuple().iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `2 + t − (22 − t)/(p − 1)`.
pub fn lefschetz_lhs(t: i64, p: u32) -> Result<Rational> {
    lefschetz_lhs_for(&ManifoldInvariants::k3(), t, p)
}

fn lefschetz_lhs_for(inv: &ManifoldInvariants, t: i64, p: u32) -> Result<Rational> {
    if p < 2 {
        return Err(invalid("order must be at least 2"));
    }
    if !(0..=inv.b2).contains(&t) {
        return Err(invalid(format!("t = {t} is outside 0..={}", inv.b2)));
    }
    let m = p as i64 - 1;
    if (inv.b2 - t) % m != 0 {
        return Err(invalid(format!("{} - {t} is not divisible by {m}", inv.b2)));
    }
    Ok(int(2 + t - (inv.b2 - t) / m))
}

/// `p · (2·b₂⁺(X/g) − t)`, the left side of the G-signature equation.
pub fn gsignature_lhs(t: i64, p: u32, b2plus_quotient: i64) -> i64 {
    p as i64 * (2 * b2plus_quotient - t)
}

/// Whether a profile satisfies both equations exactly.
pub fn resubstitute(
    profile: &FixedPointProfile,
    types: &[FixedGroupTypeSpec],
    inv: &ManifoldInvariants,
    b2plus_quotient: i64,
) -> Result<bool> {
    let constrained: Vec<&FixedGroupTypeSpec> = types.iter().filter(|t| !t.unconstrained).collect();
    if constrained.len() != profile.counts.len() {
        return Err(invalid("profile and type list do not match"));
    }
    let euler: i64 = constrained.iter().zip(&profile.counts).map(|(t, &c)| t.euler * c as i64).sum();
    let defect: Rational = constrained.iter().zip(&profile.counts).map(|(t, &c)| t.defect * int(c as i64)).sum();
    Ok(lefschetz_lhs_for(inv, profile.t, profile.order)? == int(euler)
        && int(gsignature_lhs(profile.t, profile.order, b2plus_quotient)) == int(inv.signature) + defect)
}

/// All nonnegative solutions for order `p`, sorted by `(t, counts)`.
pub fn enumerate_profiles(
    p: u32,
    types: &[FixedGroupTypeSpec],
    inv: &ManifoldInvariants,
    b2plus_quotient: i64,
) -> Result<Vec<FixedPointProfile>> {
    if types.is_empty() {
        return Err(invalid("empty fixed-point type list"));
    }
    crate::cohomology::validate_b2plus_quotient(b2plus_quotient)?;
    inv.validate()?;
    for t in types {
        if t.order != p {
            return Err(invalid(format!("type {} is for order {}, not {p}", t.label, t.order)));
        }
        t.verify()?;
    }
    let constrained: Vec<&FixedGroupTypeSpec> = types.iter().filter(|t| !t.unconstrained).collect();
    if let Some(t) = constrained.iter().find(|t| t.euler <= 0) {
        return Err(invalid(format!("type {} has no positive Euler contribution", t.label)));
    }
    let unconstrained: Vec<String> = types.iter().filter(|t| t.unconstrained).map(|t| t.label.clone()).collect();
    let labels: Vec<String> = constrained.iter().map(|t| t.label.clone()).collect();
    let m = p as i64 - 1;
    let ts: Vec<i64> = (0..=inv.b2).filter(|t| (inv.b2 - t) % m == 0).collect();

    let per_t = par::map(&ts, |&t| {
        let lhs = lefschetz_lhs_for(inv, t, p).expect("t filtered for divisibility").to_integer();
        let target = int(gsignature_lhs(t, p, b2plus_quotient) - inv.signature);
        let mut found = Vec::new();
        if lhs >= 0 {
            let mut counts = vec![0u64; constrained.len()];
            search(&constrained, 0, lhs, int(0), target, &mut counts, &mut found);
        }
        found
            .into_iter()
            .map(|counts| profile(p, t, &labels, &unconstrained, &constrained, counts, None))
            .collect::<Vec<_>>()
    });
    let mut out: Vec<FixedPointProfile> = per_t.into_iter().flatten().collect();
    out.sort_by_key(FixedPointProfile::sort_key);
    Ok(out)
}

fn search(
    types: &[&FixedGroupTypeSpec],
    i: usize,
    euler_left: i64,
    defect: Rational,
    target: Rational,
    counts: &mut Vec<u64>,
    found: &mut Vec<Vec<u64>>,
) {
    if i == types.len() {
        if euler_left == 0 && defect == target {
            found.push(counts.clone());
        }
        return;
    }
    let e = types[i].euler;
    for c in 0..=euler_left / e {
        counts[i] = c as u64;
        search(types, i + 1, euler_left - c * e, defect + types[i].defect * int(c), target, counts, found);
    }
    counts[i] = 0;
}

fn profile(
    p: u32,
    t: i64,
    labels: &[String],
    unconstrained: &[String],
    types: &[&FixedGroupTypeSpec],
    counts: Vec<u64>,
    order4: Option<Order4Split>,
) -> FixedPointProfile {
    let isolated_points = types.iter().zip(&counts).map(|(ty, &c)| ty.points * c).sum();
    let lefschetz = types.iter().zip(&counts).map(|(ty, &c)| ty.euler * c as i64).sum();
    FixedPointProfile {
        order: p,
        t,
        labels: labels.to_vec(),
        counts,
        unconstrained: unconstrained.to_vec(),
        isolated_points,
        lefschetz,
        order4,
    }
}

/// Order-4 elements whose square is an involution with 14-dimensional
/// 1-eigenspace: solutions of
/// `2 + t₊ − (14 − t₊) = s₊ + s₋`, `4(6 − t₊) = −16 + 2s₊ − 2s₋`,
/// `s₊ + s₋ ≤ 8`, reported with `t = t₊`.
pub fn solve_order4(inv: &ManifoldInvariants) -> Result<Vec<FixedPointProfile>> {
    inv.validate()?;
    let types = standard_types(4)?;
    let refs: Vec<&FixedGroupTypeSpec> = types.iter().collect();
    let labels: Vec<String> = types.iter().map(|t| t.label.clone()).collect();
    let (dp, dm) = (types[0].defect, types[1].defect);
    let fixed_by_square = 14;
    let mut out = Vec::new();
    for t_plus in 0..=fixed_by_square {
        let t_minus = fixed_by_square - t_plus;
        for sp in 0..=8u64 {
            for sm in 0..=8 - sp {
                let lef = 2 + t_plus - t_minus == (sp + sm) as i64;
                let sig = int(4 * (2 * inv.b2plus - t_plus)) == int(inv.signature) + dp * int(sp as i64) + dm * int(sm as i64);
                if lef && sig {
                    let split = Order4Split { t_plus, t_minus, s_plus: sp, s_minus: sm };
                    out.push(profile(4, t_plus, &labels, &[], &refs, vec![sp, sm], Some(split)));
                }
            }
        }
    }
    out.sort_by_key(FixedPointProfile::sort_key);
    Ok(out)
}

/// `points = 2 + trace on H²`, the only check applied to composite orders.
pub fn check_direct_profile(fix_count: i64, trace_h2: i64) -> Result<()> {
    if fix_count == 2 + trace_h2 {
        Ok(())
    } else {
        Err(Error::Validation(format!("{fix_count} fixed points do not match trace {trace_h2} on H^2")))
    }
}

/// Units a μ-integrality filter perturbs, with the group's order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuFilter {
    pub group: String,
    pub order: u32,
    pub group_order: u64,
    pub baseline: i64,
    pub unit_sizes: Vec<u64>,
}

impl MuFilter {
    /// Units for `group`; groups with nontrivial abelianization use
    /// `[G,G]`, with classes fused under `G`.
    pub fn for_group(group: BuiltinGroup, order: u32) -> Result<MuFilter> {
        let g = group.group();
        let (h, fusion) = if g.is_perfect() { (g.clone(), None) } else { (g.commutator_data().subgroup.clone(), Some(&g)) };
        let units = perturbation_units(&h, fusion, order)?;
        Ok(MuFilter {
            group: group.name().to_string(),
            order,
            group_order: h.order() as u64,
            baseline: FixTable::standard().get(order)?,
            unit_sizes: units.iter().map(|u| u.size as u64).collect(),
        })
    }

    /// `Δμ` for each nonempty subset of units taking the profile's count.
    pub fn deltas(&self, lefschetz: i64) -> Vec<Rational> {
        let n = self.unit_sizes.len();
        (1..1u64 << n)
            .map(|mask| {
                let size: u64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.unit_sizes[i]).sum();
                Rational::new(size as i64 * (lefschetz - self.baseline), self.group_order as i64)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "filter", rename_all = "snake_case")]
pub enum Filter {
    /// Total isolated fixed points divisible by `d`.
    Divisibility { d: u64, provenance: String },
    /// Drops `t = 22`.
    ExcludeHomologicallyTrivial { provenance: String },
    /// Drops profiles where `count(type) · min_orbit` components of `kind`
    /// overrun `b₂⁻`.
    Budget { type_label: String, kind: ComponentKind, min_orbit: u64, b2minus: u64, provenance: String },
    /// Order 4: the square's spin weights are uniform, so `s₊ = 0` or `s₋ = 0`.
    SpinUniform { provenance: String },
    ExcludeType { label: String, provenance: String },
    /// Drops profiles whose count would make `μ` non-integral on every
    /// subset of perturbable classes.
    MuIntegrality { mu: MuFilter, provenance: String },
}

impl Filter {
    pub fn name(&self) -> String {
        match self {
            Filter::Divisibility { d, .. } => format!("div:{d}"),
            Filter::ExcludeHomologicallyTrivial { .. } => "mccooey".into(),
            Filter::Budget { type_label, kind, min_orbit, .. } => format!("budget:{type_label}:{kind}:{min_orbit}"),
            Filter::SpinUniform { .. } => "spin".into(),
            Filter::ExcludeType { label, .. } => format!("exclude:{label}"),
            Filter::MuIntegrality { mu, .. } => format!("mu:{}", mu.group),
        }
    }

    pub fn provenance(&self) -> &str {
        match self {
            Filter::Divisibility { provenance, .. }
            | Filter::ExcludeHomologicallyTrivial { provenance }
            | Filter::Budget { provenance, .. }
            | Filter::SpinUniform { provenance }
            | Filter::ExcludeType { provenance, .. }
            | Filter::MuIntegrality { provenance, .. } => provenance,
        }
    }

    pub fn divisibility(d: u64) -> Filter {
        Filter::Divisibility {
            d,
            provenance: format!("a subgroup that cannot act freely and linearly on S^3 permutes the isolated fixed points freely in orbits of {d}"),
        }
    }

    pub fn mccooey() -> Filter {
        Filter::ExcludeHomologicallyTrivial {
            provenance: "McCooey: a nonabelian group cannot act trivially on H^2 of a homotopy K3".into(),
        }
    }

    pub fn budget(type_label: &str, kind: ComponentKind, min_orbit: u64) -> Filter {
        Filter::Budget {
            type_label: type_label.to_string(),
            kind,
            min_orbit,
            b2minus: 19,
            provenance: format!("each {type_label} group sits on a {kind} component with orbit at least {min_orbit}; ranks must fit in b2- = 19"),
        }
    }

    pub fn spin() -> Filter {
        Filter::SpinUniform {
            provenance: "Spin(g^2) = d0 - d1 with d0 + d1 = -sign/8 and d0, d1 even excludes 0, forcing uniform spin weights".into(),
        }
    }

    pub fn exclude(label: &str) -> Filter {
        Filter::ExcludeType { label: label.to_string(), provenance: format!("type {label} excluded by a separate orbit argument") }
    }

    pub fn mu(group: BuiltinGroup, order: u32) -> Result<Filter> {
        Ok(Filter::MuIntegrality {
            mu: MuFilter::for_group(group, order)?,
            provenance: "mu(G) is the dimension of an invariant subspace and must be an integer".into(),
        })
    }

    /// Parses `div:<d>`, `mccooey`, `spin`, `budget:<label>:<kind>:<orbit>`,
    /// `mu:<group>` or `exclude:<label>`; `order` is the profile order.
    pub fn parse(s: &str, order: u32) -> Result<Filter> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["div", d] => match d.parse::<u64>() {
                Ok(d) if d > 0 => Ok(Filter::divisibility(d)),
                _ => Err(invalid(format!("bad divisor in `{s}`"))),
            },
            ["mccooey"] => Ok(Filter::mccooey()),
            ["spin"] => Ok(Filter::spin()),
            ["exclude", label] => Ok(Filter::exclude(label)),
            ["budget", label, kind, orbit] => {
                let kind = parse_kind(kind)?;
                let orbit: u64 = orbit.parse().map_err(|_| invalid(format!("bad orbit size in `{s}`")))?;
                if orbit == 0 {
                    return Err(invalid("orbit size must be positive"));
                }
                Ok(Filter::budget(label, kind, orbit))
            }
            ["mu", group] => Filter::mu(BuiltinGroup::from_name(group)?, order),
            _ => Err(invalid(format!("unknown filter `{s}`"))),
        }
    }

    /// `Ok(None)` keeps the profile, `Ok(Some(reason))` removes it.
    fn judge(&self, p: &FixedPointProfile) -> Result<Option<String>> {
        Ok(match self {
            Filter::Divisibility { d, .. } => {
                (p.isolated_points % d != 0).then(|| format!("{} isolated points not divisible by {d}", p.isolated_points))
            }
            Filter::ExcludeHomologicallyTrivial { .. } => (p.t == 22).then(|| "acts trivially on H^2".to_string()),
            Filter::Budget { type_label, kind, min_orbit, b2minus, .. } => {
                let count = p
                    .count(type_label)
                    .ok_or_else(|| invalid(format!("profile has no type {type_label}")))?;
                if count == 0 {
                    return Ok(None);
                }
                let rank = ComponentGraph::new(*kind)?.neg_def_rank as u64;
                let check = budget(rank, count * min_orbit, *b2minus)?;
                (!check.pass).then(|| format!("rank {} exceeds b2- = {b2minus}", check.product))
            }
            Filter::SpinUniform { .. } => {
                let split = p.order4.ok_or_else(|| invalid("spin filter applies to order-4 profiles only"))?;
                if spin_number_feasible(8, -16)?.contains(&0) {
                    None
                } else {
                    (split.s_plus > 0 && split.s_minus > 0).then(|| "mixed spin weights".to_string())
                }
            }
            Filter::ExcludeType { label, .. } => {
                let count = p.count(label).ok_or_else(|| invalid(format!("profile has no type {label}")))?;
                (count > 0).then(|| format!("contains {count} groups of type {label}"))
            }
            Filter::MuIntegrality { mu, .. } => {
                if mu.order != p.order {
                    return Err(invalid(format!("mu filter is for order {}, profile has order {}", mu.order, p.order)));
                }
                let deltas = mu.deltas(p.lefschetz);
                let any_integral = p.lefschetz == mu.baseline || deltas.iter().any(|d| d.is_integer());
                (!any_integral).then(|| {
                    let shown: Vec<String> = deltas.iter().map(rational::to_canonical_string).collect();
                    format!("delta mu in {{{}}} never integral", shown.join(", "))
                })
            }
        })
    }
}

fn parse_kind(s: &str) -> Result<ComponentKind> {
    let lower = s.to_ascii_lowercase();
    let (head, digits): (String, String) = lower.chars().partition(|c| !c.is_ascii_digit());
    let n = if digits.is_empty() { None } else { digits.parse().ok() };
    ComponentKind::parse(&head, n).or_else(|_| ComponentKind::parse(&lower, None))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Removal {
    pub profile: FixedPointProfile,
    pub filter: String,
    pub provenance: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterOutcome {
    pub survivors: Vec<FixedPointProfile>,
    pub removed: Vec<Removal>,
}

/// Applies filters in order; each removal records the first filter that
/// rejected the profile.
pub fn apply_filters(profiles: &[FixedPointProfile], filters: &[Filter]) -> Result<FilterOutcome> {
    let mut survivors = Vec::new();
    let mut removed = Vec::new();
    'profiles: for p in profiles {
        for f in filters {
            if let Some(reason) = f.judge(p)? {
                removed.push(Removal { profile: p.clone(), filter: f.name(), provenance: f.provenance().to_string(), reason });
                continue 'profiles;
            }
        }
        survivors.push(p.clone());
    }
    Ok(FilterOutcome { survivors, removed })
}

/// Projection of profiles onto the listed labels, first occurrences kept
/// in order.
pub fn project(profiles: &[FixedPointProfile], labels: &[&str]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    for p in profiles {
        let v: Vec<u64> = labels.iter().map(|l| p.count(l).unwrap_or(0)).collect();
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}
