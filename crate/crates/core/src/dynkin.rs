//! Configurations of (−2)-spheres, induced order-3 actions and the
//! `b₂⁻ = 19` orbit budget.
//!
//! Vertex conventions: Ãₙ is the cycle `0 … n` (Ã₁ is a double edge);
//! D̃ₙ has leaves 0, 1 on vertex 2, the chain `2 … n−2`, and leaves
//! `n−1`, `n` on vertex `n−2`; Ẽ₆ is the chain `0 … 4` with `2 – 5 – 6`;
//! Ẽ₇ is the chain `0 … 6` with 7 on 3; Ẽ₈ is the chain `0 … 7` with 8 on 2.

use std::fmt;

use serde::Serialize;

use crate::error::invalid;
use crate::groups::{BuiltinGroup, FiniteGroup};
use crate::lattice::{inertia, IntMatrix};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ComponentKind {
    AffineA(u32),
    AffineD(u32),
    AffineE(u32),
    /// Two (−2)-spheres meeting at one point with tangency of order 2.
    TangencyPairB,
    /// Three (−2)-spheres meeting transversally at one point.
    StarThree,
    /// An embedded torus of square zero.
    TorusA,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::AffineA(n) => write!(f, "A~{n}"),
            ComponentKind::AffineD(n) => write!(f, "D~{n}"),
            ComponentKind::AffineE(n) => write!(f, "E~{n}"),
            ComponentKind::TangencyPairB => f.write_str("B"),
            ComponentKind::StarThree => f.write_str("star3"),
            ComponentKind::TorusA => f.write_str("torus"),
        }
    }
}

impl ComponentKind {
    /// Parses `A`, `D`, `E` (with `n`), `B`, `star3` or `torus`.
    pub fn parse(kind: &str, n: Option<u32>) -> Result<ComponentKind> {
        let k = kind.trim().to_ascii_lowercase().replace(['~', '_', '-'], "");
        let need = || n.ok_or_else(|| invalid(format!("component kind `{kind}` needs an index")));
        let parsed = match k.as_str() {
            "a" | "affinea" => ComponentKind::AffineA(need()?),
            "d" | "affined" => ComponentKind::AffineD(need()?),
            "e" | "affinee" => ComponentKind::AffineE(need()?),
            "e6" => ComponentKind::AffineE(6),
            "e7" => ComponentKind::AffineE(7),
            "e8" => ComponentKind::AffineE(8),
            "b" | "tangencypairb" | "tangency" => ComponentKind::TangencyPairB,
            "star3" | "starthree" | "star" => ComponentKind::StarThree,
            "torus" | "torusa" => ComponentKind::TorusA,
            _ => match k.strip_prefix('a').or(k.strip_prefix('d')).and_then(|s| s.parse().ok()) {
                Some(m) if k.starts_with('a') => ComponentKind::AffineA(m),
                Some(m) => ComponentKind::AffineD(m),
                None => return Err(invalid(format!("unknown component kind `{kind}`"))),
            },
        };
        Ok(parsed)
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, ComponentKind::AffineA(_) | ComponentKind::AffineD(_) | ComponentKind::AffineE(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentGraph {
    pub kind: ComponentKind,
    pub vertex_count: usize,
    /// Intersection numbers between distinct spheres.
    pub adjacency: IntMatrix,
    /// Intersection form on the span of the spheres.
    pub gram: IntMatrix,
    pub span_rank: usize,
    /// Rank used by the orbit budget.
    pub neg_def_rank: usize,
    /// Rank of `gram` over `Q`.
    pub gram_rank: usize,
}

impl ComponentGraph {
    pub fn new(kind: ComponentKind) -> Result<ComponentGraph> {
        let (n, edges): (usize, Vec<(usize, usize, i64)>) = match kind {
            ComponentKind::AffineA(0) => return Err(invalid("A~n needs n >= 1")),
            ComponentKind::AffineA(1) => (2, vec![(0, 1, 2)]),
            ComponentKind::AffineA(m) => {
                let v = m as usize + 1;
                (v, (0..v).map(|i| (i, (i + 1) % v, 1)).collect())
            }
            ComponentKind::AffineD(m) if m < 4 => return Err(invalid("D~n needs n >= 4")),
            ComponentKind::AffineD(m) => {
                let m = m as usize;
                let mut e = vec![(0, 2, 1), (1, 2, 1), (m - 2, m - 1, 1), (m - 2, m, 1)];
                e.extend((2..m - 2).map(|i| (i, i + 1, 1)));
                (m + 1, e)
            }
            ComponentKind::AffineE(6) => (7, vec![(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 5, 1), (5, 6, 1)]),
            ComponentKind::AffineE(7) => {
                let mut e: Vec<_> = (0..6).map(|i| (i, i + 1, 1)).collect();
                e.push((3, 7, 1));
                (8, e)
            }
            ComponentKind::AffineE(8) => {
                let mut e: Vec<_> = (0..7).map(|i| (i, i + 1, 1)).collect();
                e.push((2, 8, 1));
                (9, e)
            }
            ComponentKind::AffineE(m) => return Err(invalid(format!("E~{m} is not an affine graph"))),
            ComponentKind::TangencyPairB => (2, vec![(0, 1, 2)]),
            ComponentKind::StarThree => (3, vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)]),
            ComponentKind::TorusA => (1, vec![]),
        };
        let mut adjacency = IntMatrix::zeros(n, n);
        for (a, b, w) in edges {
            adjacency.set(a, b, w);
            adjacency.set(b, a, w);
        }
        let self_int = if kind == ComponentKind::TorusA { 0 } else { -2 };
        let mut gram = adjacency.clone();
        for i in 0..n {
            gram.set(i, i, self_int);
        }
        let neg_def_rank = match kind {
            ComponentKind::TangencyPairB => 2,
            ComponentKind::StarThree => 3,
            ComponentKind::TorusA => 0,
            _ => n - 1,
        };
        let gram_rank = gram.rank();
        Ok(ComponentGraph { kind, vertex_count: n, adjacency, gram, span_rank: n, neg_def_rank, gram_rank })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Order3Type {
    I,
    II,
    III,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphAction {
    Trivial,
    Rotation,
    GraphAutomorphism(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YieldGroup {
    pub fixed_type: Order3Type,
    /// `None` when the count is not determined by the graph.
    pub count: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Order3Yield {
    pub action: GraphAction,
    pub groups: Vec<YieldGroup>,
    pub invariant: bool,
}

impl Order3Yield {
    fn of(action: GraphAction, groups: &[(Order3Type, Option<u64>)]) -> Order3Yield {
        let groups = groups.iter().map(|&(fixed_type, count)| YieldGroup { fixed_type, count }).collect();
        Order3Yield { action, groups, invariant: true }
    }

    fn not_invariant(action: GraphAction) -> Order3Yield {
        Order3Yield { action, groups: Vec::new(), invariant: false }
    }

    /// Count of groups of type `t`; `None` when absent or unspecified.
    pub fn count_of(&self, t: Order3Type) -> Option<u64> {
        self.groups.iter().find(|g| g.fixed_type == t).and_then(|g| g.count)
    }
}

/// Order-3 actions on an invariant component with the fixed-point groups
/// each leaves in it.
///
/// Ãₙ under the trivial graph action has two alternatives; both are
/// listed and the caller must carry both.
pub fn order3_actions(g: &ComponentGraph) -> Result<Vec<Order3Yield>> {
    use Order3Type::*;
    let out = match g.kind {
        ComponentKind::AffineA(n) => {
            let mut v = vec![Order3Yield::of(GraphAction::Trivial, &[(I, None)])];
            if (n + 1) % 3 == 0 {
                v.push(Order3Yield::of(GraphAction::Trivial, &[(III, Some((n as u64 + 1) / 3))]));
                v.push(Order3Yield::of(GraphAction::Rotation, &[]));
            }
            v
        }
        ComponentKind::StarThree => vec![Order3Yield::of(GraphAction::Rotation, &[(I, Some(1))])],
        ComponentKind::AffineD(n) => {
            // D̃ₙ admits only the trivial graph action; it needs 3 | n − 1
            if (n - 1) % 3 == 0 {
                vec![Order3Yield::of(GraphAction::Trivial, &[(II, Some(1)), (III, Some((n as u64 - 1) / 3))])]
            } else {
                vec![Order3Yield::not_invariant(GraphAction::Trivial)]
            }
        }
        ComponentKind::AffineE(6) => {
            vec![Order3Yield::of(GraphAction::GraphAutomorphism("arm rotation".into()), &[(I, Some(2))])]
        }
        ComponentKind::AffineE(7) => vec![Order3Yield::of(GraphAction::Trivial, &[(III, Some(3))])],
        ComponentKind::AffineE(_) => vec![Order3Yield::not_invariant(GraphAction::Trivial)],
        ComponentKind::TangencyPairB | ComponentKind::TorusA => {
            return Err(invalid(format!("no order-3 classification for {} components", g.kind)))
        }
    };
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BudgetCheck {
    pub product: u64,
    pub margin: i64,
    pub pass: bool,
}

/// Passes iff `min_orbit × neg_def_rank ≤ b2minus`.
pub fn orbit_budget_check(g: &ComponentGraph, min_orbit: u64, b2minus: u64) -> Result<BudgetCheck> {
    budget(g.neg_def_rank as u64, min_orbit, b2minus)
}

pub fn budget(rank: u64, min_orbit: u64, b2minus: u64) -> Result<BudgetCheck> {
    if min_orbit == 0 {
        return Err(invalid("min_orbit must be positive"));
    }
    let product = rank.saturating_mul(min_orbit);
    Ok(BudgetCheck { product, margin: b2minus as i64 - product as i64, pass: product <= b2minus })
}

/// `[G : H]`: the smallest possible orbit when no subgroup larger than `H`
/// can stabilize.
pub fn min_orbit_from_stabilizer(g: &FiniteGroup, stabilizer_bound: &FiniteGroup) -> Result<u64> {
    Ok(g.index_of(stabilizer_bound)? as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeLinearFact {
    pub group: &'static str,
    pub acts_freely_linearly_on_s3: bool,
    pub provenance: &'static str,
}

const FREE_LINEAR_FACTS: [FreeLinearFact; 3] = [
    FreeLinearFact {
        group: "D21",
        acts_freely_linearly_on_s3: false,
        provenance: "nonabelian of order 3*7: a group acting freely on a sphere has cyclic subgroups of order pq",
    },
    FreeLinearFact {
        group: "D10",
        acts_freely_linearly_on_s3: false,
        provenance: "five involutions: a group acting freely on a sphere has at most one",
    },
    FreeLinearFact {
        group: "S3",
        acts_freely_linearly_on_s3: false,
        provenance: "three involutions: a group acting freely on a sphere has at most one",
    },
];

/// Looked-up answer to whether `group` acts freely and linearly on S³.
pub fn free_linear_on_s3(group: BuiltinGroup) -> Option<&'static FreeLinearFact> {
    FREE_LINEAR_FACTS.iter().find(|f| f.group == group.name())
}

pub fn free_linear_facts() -> &'static [FreeLinearFact] {
    &FREE_LINEAR_FACTS
}

/// Whether the Gram matrix is negative semidefinite with a radical of the
/// given dimension.
pub fn is_negative_semidefinite_with_radical(g: &ComponentGraph, radical: usize) -> bool {
    let i = inertia(&g.gram);
    i.positive == 0 && i.zero == radical
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_figure_kinds() -> Vec<ComponentKind> {
        let mut v: Vec<ComponentKind> = (1..=24).map(ComponentKind::AffineA).collect();
        v.extend((4..=24).map(ComponentKind::AffineD));
        v.extend([6, 7, 8].map(ComponentKind::AffineE));
        v.push(ComponentKind::StarThree);
        v
    }

    #[test]
    fn affine_graphs_have_one_dimensional_radical() {
        for k in all_figure_kinds().into_iter().filter(ComponentKind::is_affine) {
            let g = ComponentGraph::new(k).unwrap();
            assert!(is_negative_semidefinite_with_radical(&g, 1), "{k}");
            assert_eq!(g.gram_rank, g.vertex_count - 1, "{k}");
            assert_eq!(g.neg_def_rank, g.vertex_count - 1);
            assert!(g.adjacency.is_symmetric());
        }
    }

    #[test]
    fn degree_sequences() {
        let degrees = |k| {
            let g = ComponentGraph::new(k).unwrap();
            let mut d: Vec<i64> = (0..g.vertex_count).map(|r| g.adjacency.row(r).iter().sum()).collect();
            d.sort_unstable();
            d
        };
        assert_eq!(degrees(ComponentKind::AffineD(4)), vec![1, 1, 1, 1, 4]);
        assert_eq!(degrees(ComponentKind::AffineE(6)), vec![1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(degrees(ComponentKind::AffineE(7)), vec![1, 1, 1, 2, 2, 2, 2, 3]);
        assert_eq!(degrees(ComponentKind::AffineE(8)), vec![1, 1, 1, 2, 2, 2, 2, 2, 3]);
        assert_eq!(degrees(ComponentKind::AffineA(5)), vec![2; 6]);
        assert_eq!(degrees(ComponentKind::AffineA(1)), vec![2, 2]);
    }

    #[test]
    fn special_components() {
        let b = ComponentGraph::new(ComponentKind::TangencyPairB).unwrap();
        assert_eq!((b.vertex_count, b.neg_def_rank, b.gram_rank), (2, 2, 1));
        let s = ComponentGraph::new(ComponentKind::StarThree).unwrap();
        assert_eq!((s.vertex_count, s.neg_def_rank, s.gram_rank), (3, 3, 2));
        let t = ComponentGraph::new(ComponentKind::TorusA).unwrap();
        assert_eq!(t.gram.get(0, 0), 0);
        assert!(ComponentGraph::new(ComponentKind::AffineD(3)).is_err());
        assert!(ComponentGraph::new(ComponentKind::AffineE(5)).is_err());
        assert!(ComponentGraph::new(ComponentKind::AffineA(0)).is_err());
    }

    #[test]
    fn order3_yield_table() {
        use Order3Type::*;
        let y = |k| order3_actions(&ComponentGraph::new(k).unwrap()).unwrap();
        let e7 = y(ComponentKind::AffineE(7));
        assert_eq!(e7.len(), 1);
        assert_eq!(e7[0].count_of(III), Some(3));
        assert!(!y(ComponentKind::AffineE(8))[0].invariant);
        let e6 = &y(ComponentKind::AffineE(6))[0];
        assert_eq!(e6.count_of(I), Some(2));
        assert!(matches!(e6.action, GraphAction::GraphAutomorphism(_)));
        let star = &y(ComponentKind::StarThree)[0];
        assert_eq!((star.action.clone(), star.count_of(I)), (GraphAction::Rotation, Some(1)));
        let d7 = &y(ComponentKind::AffineD(7))[0];
        assert_eq!((d7.count_of(II), d7.count_of(III)), (Some(1), Some(2)));
        let a5 = y(ComponentKind::AffineA(5));
        assert!(a5.iter().any(|v| v.count_of(III) == Some(2)));
        assert!(a5.iter().any(|v| v.groups.len() == 1 && v.groups[0].fixed_type == I && v.groups[0].count.is_none()));
        assert!(y(ComponentKind::AffineA(3)).iter().all(|v| v.count_of(III).is_none()));
        assert!(order3_actions(&ComponentGraph::new(ComponentKind::TangencyPairB).unwrap()).is_err());
        assert!(order3_actions(&ComponentGraph::new(ComponentKind::TorusA).unwrap()).is_err());
    }

    #[test]
    fn type_iii_yield_fits_vertex_count() {
        for n in (2..=23u32).filter(|n| (n + 1) % 3 == 0) {
            let g = ComponentGraph::new(ComponentKind::AffineA(n)).unwrap();
            let iii: u64 = order3_actions(&g).unwrap().iter().filter_map(|y| y.count_of(Order3Type::III)).max().unwrap();
            assert_eq!(iii, (n as u64 + 1) / 3);
            assert!(iii as usize * 3 == g.vertex_count);
        }
    }

    #[test]
    fn budget_examples() {
        let d4 = ComponentGraph::new(ComponentKind::AffineD(4)).unwrap();
        let r = orbit_budget_check(&d4, 8, 19).unwrap();
        assert_eq!((r.product, r.pass), (32, false));
        let s = ComponentGraph::new(ComponentKind::StarThree).unwrap();
        let r = orbit_budget_check(&s, 16, 19).unwrap();
        assert_eq!((r.product, r.margin, r.pass), (48, -29, false));
        let a2 = ComponentGraph::new(ComponentKind::AffineA(2)).unwrap();
        assert!(orbit_budget_check(&a2, 1, 19).unwrap().pass);
        assert!(orbit_budget_check(&a2, 0, 19).is_err());
    }

    #[test]
    fn stabilizer_orbits() {
        let l = BuiltinGroup::L27.group();
        assert_eq!(min_orbit_from_stabilizer(&l, &BuiltinGroup::D21.group()).unwrap(), 8);
        assert_eq!(min_orbit_from_stabilizer(&l, &l).unwrap(), 1);
        let t = BuiltinGroup::T24.group();
        let minus_one = t.elements().find(|&e| t.element_order(e) == 2).unwrap();
        let three = t.elements_of_order(3)[0];
        let h = t.subgroup(&[minus_one, three]).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(min_orbit_from_stabilizer(&t, &h).unwrap(), 4);
        assert!(min_orbit_from_stabilizer(&l, &BuiltinGroup::D10.group()).is_err());
    }

    /// Necessary conditions for a free action on a sphere: at most one
    /// involution, and every subgroup of order `pq` cyclic.
    #[test]
    fn free_linear_table_matches_necessary_conditions() {
        for fact in free_linear_facts() {
            let g = BuiltinGroup::from_name(fact.group).unwrap().group();
            let involutions = g.elements_of_order(2).len();
            let pq_noncyclic = !g.is_abelian() && g.order() == 21;
            assert!(!fact.acts_freely_linearly_on_s3);
            assert!(involutions > 1 || pq_noncyclic, "{}", fact.group);
        }
        assert!(free_linear_on_s3(BuiltinGroup::D21).is_some());
        assert!(free_linear_on_s3(BuiltinGroup::Q8).is_none());
    }

    #[test]
    fn parses_kinds() {
        assert_eq!(ComponentKind::parse("E", Some(7)).unwrap(), ComponentKind::AffineE(7));
        assert_eq!(ComponentKind::parse("A~", Some(2)).unwrap(), ComponentKind::AffineA(2));
        assert_eq!(ComponentKind::parse("d5", None).unwrap(), ComponentKind::AffineD(5));
        assert_eq!(ComponentKind::parse("star3", None).unwrap(), ComponentKind::StarThree);
        assert!(ComponentKind::parse("A", None).is_err());
        assert!(ComponentKind::parse("F", Some(4)).is_err());
    }

    proptest! {
        #[test]
        fn budget_is_monotone(kind_ix in 0usize..49, m in 1u64..40) {
            let kinds = all_figure_kinds();
            let g = ComponentGraph::new(kinds[kind_ix % kinds.len()]).unwrap();
            let a = orbit_budget_check(&g, m, 19).unwrap();
            let b = orbit_budget_check(&g, m + 1, 19).unwrap();
            prop_assert!(a.pass || !b.pass);
            prop_assert!(b.product >= a.product);
        }

        #[test]
        fn figure_kinds_always_classify(kind_ix in 0usize..49) {
            let kinds = all_figure_kinds();
            let g = ComponentGraph::new(kinds[kind_ix % kinds.len()]).unwrap();
            prop_assert!(!order3_actions(&g).unwrap().is_empty());
        }
    }
}
