//! Finite groups given by generators, with enumerated Cayley tables.
//!
//! Every group here has order at most a few thousand, so each
//! [`FiniteGroup`] enumerates its elements once, sorts them by a canonical
//! key and stores the full multiplication table. All queries (classes,
//! centralizers, normalizers, commutator subgroups) then run on element
//! indices.
//!
//! Elements are [`Elem`] handles that remember which group they belong to,
//! so passing an element of one group to another group's query is reported
//! as an input error rather than silently reinterpreted.

mod build;
mod builtin;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::invalid;
use crate::{par, Error, Result};

pub use build::{
    action_from_generators, central_product, direct_product, perm_from_cycles, permutation_group,
    semidirect_product, Action, Automorphism, Perm,
};
pub use builtin::{even_weight_extension, BuiltinFacts, BuiltinGroup};

/// Hard cap on enumerated group orders.
pub const MAX_ORDER: usize = 20_000;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a specific [`FiniteGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    group: u64,
    index: u32,
}

impl Elem {
    /// Position of the element in its group's canonical ordering.
    pub fn index(self) -> usize {
        self.index as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    Permutation,
    Direct,
    Semidirect,
    Quotient,
    Subgroup,
    Named,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClassRecord {
    #[serde(skip)]
    pub representative: Elem,
    pub representative_label: String,
    pub size: usize,
    pub element_order: u32,
    pub centralizer_order: usize,
}

#[derive(Debug, Clone)]
pub struct CommutatorData {
    pub subgroup: FiniteGroup,
    /// Invariant factors of `G/[G,G]`, ascending, factor 1 suppressed.
    pub abelianization: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct Normalizer {
    pub group: FiniteGroup,
    pub index: usize,
}

#[derive(Debug)]
enum Origin {
    Free,
    Subgroup { parent: FiniteGroup, embedding: Vec<u32> },
    Quotient { source: FiniteGroup, projection: Vec<u32> },
}

struct ClassData {
    records: Vec<ConjugacyClassRecord>,
    class_of: Vec<u32>,
}

pub(crate) struct GroupData {
    id: u64,
    name: String,
    kind: ConstructionKind,
    identity: u32,
    table: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    keys: Vec<Vec<u32>>,
    labels: Vec<String>,
    lookup: HashMap<Vec<u32>, u32>,
    generators: Vec<u32>,
    /// Elements in breadth-first order from the identity.
    bfs: Vec<u32>,
    /// `tree[b] = Some((p, s))` means `b = p · generators[s]`.
    tree: Vec<Option<(u32, u32)>>,
    origin: Origin,
    classes: OnceLock<ClassData>,
    commutator: OnceLock<CommutatorData>,
}

/// An immutable finite group with a cached multiplication table.
///
/// Cloning is cheap; lazily computed data (classes, commutator subgroup) is
/// filled in at most once and shared between clones.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("name", &self.0.name).field("order", &self.order()).finish()
    }
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn kind(&self) -> ConstructionKind {
        self.0.kind
    }

    /// Returns a copy of this group under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> FiniteGroup {
        let d = &self.0;
        FiniteGroup(Arc::new(GroupData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            kind: d.kind,
            identity: d.identity,
            table: d.table.clone(),
            inverse: d.inverse.clone(),
            orders: d.orders.clone(),
            keys: d.keys.clone(),
            labels: d.labels.clone(),
            lookup: d.lookup.clone(),
            generators: d.generators.clone(),
            bfs: d.bfs.clone(),
            tree: d.tree.clone(),
            origin: match &d.origin {
                Origin::Free => Origin::Free,
                Origin::Subgroup { parent, embedding } => {
                    Origin::Subgroup { parent: parent.clone(), embedding: embedding.clone() }
                }
                Origin::Quotient { source, projection } => {
                    Origin::Quotient { source: source.clone(), projection: projection.clone() }
                }
            },
            classes: OnceLock::new(),
            commutator: OnceLock::new(),
        }))
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.0.keys.len()
    }

    pub fn identity(&self) -> Elem {
        self.elem(self.0.identity)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order() as u32).map(move |i| self.elem(i))
    }

    pub fn element(&self, index: usize) -> Result<Elem> {
        if index < self.order() {
            Ok(self.elem(index as u32))
        } else {
            Err(invalid(format!("{} has no element #{index}", self.name())))
        }
    }

    pub fn generators(&self) -> Vec<Elem> {
        self.0.generators.iter().map(|&g| self.elem(g)).collect()
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.group == self.0.id && (e.index as usize) < self.order()
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (a, b) = (self.ix(a), self.ix(b));
        self.elem(self.m(a, b))
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.elem(self.0.inverse[self.ix(a) as usize])
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let a = self.ix(a);
        let ord = self.0.orders[a as usize] as i64;
        let k = k.rem_euclid(ord);
        let mut acc = self.0.identity;
        for _ in 0..k {
            acc = self.m(acc, a);
        }
        self.elem(acc)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let (a, b) = (self.ix(a), self.ix(b));
        self.elem(self.comm(a, b))
    }

    /// `b⁻¹ a b`.
    pub fn conjugate(&self, a: Elem, b: Elem) -> Elem {
        let (a, b) = (self.ix(a), self.ix(b));
        self.elem(self.conj(a, b))
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.0.orders[self.ix(a) as usize]
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.0.labels[self.ix(a) as usize]
    }

    pub fn key(&self, a: Elem) -> &[u32] {
        &self.0.keys[self.ix(a) as usize]
    }

    pub fn find(&self, key: &[u32]) -> Option<Elem> {
        self.0.lookup.get(key).map(|&i| self.elem(i))
    }

    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.0.labels.iter().position(|l| l == label).map(|i| self.elem(i as u32))
    }

    /// All elements of the given order, ascending.
    pub fn elements_of_order(&self, k: u32) -> Vec<Elem> {
        self.elements().filter(|&e| self.element_order(e) == k).collect()
    }

    /// Sorted distinct element orders.
    pub fn order_spectrum(&self) -> Vec<u32> {
        let mut v = self.0.orders.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.0.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.m(a, b) == self.m(b, a)))
    }

    /// The parent group and embedding if this group was built as a subgroup.
    pub fn parent(&self) -> Option<&FiniteGroup> {
        match &self.0.origin {
            Origin::Subgroup { parent, .. } => Some(parent),
            _ => None,
        }
    }

    /// Image of an element of this subgroup in its parent group.
    pub fn embed(&self, e: Elem) -> Result<Elem> {
        let i = self.check(e)?;
        match &self.0.origin {
            Origin::Subgroup { parent, embedding } => Ok(parent.elem(embedding[i as usize])),
            _ => Err(invalid(format!("{} is not a subgroup", self.name()))),
        }
    }

    /// Image of a source element in this quotient group.
    pub fn project(&self, e: Elem) -> Result<Elem> {
        match &self.0.origin {
            Origin::Quotient { source, projection } => {
                let i = source.check(e)?;
                Ok(self.elem(projection[i as usize]))
            }
            _ => Err(invalid(format!("{} is not a quotient", self.name()))),
        }
    }

    /// Whether `h` was built as a subgroup of `self` (or is `self`).
    pub fn has_subgroup(&self, h: &FiniteGroup) -> bool {
        h.0.id == self.0.id || h.parent().is_some_and(|p| p.0.id == self.0.id)
    }

    /// Parent-indexed membership mask of a subgroup.
    fn member_mask(&self, h: &FiniteGroup) -> Result<Vec<bool>> {
        if h.0.id == self.0.id {
            return Ok(vec![true; self.order()]);
        }
        match &h.0.origin {
            Origin::Subgroup { parent, embedding } if parent.0.id == self.0.id => {
                let mut mask = vec![false; self.order()];
                for &i in embedding {
                    mask[i as usize] = true;
                }
                Ok(mask)
            }
            _ => Err(invalid(format!("{} is not a subgroup of {}", h.name(), self.name()))),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[Elem]) -> Result<FiniteGroup> {
        let gens = gens.iter().map(|&g| self.check(g)).collect::<Result<Vec<_>>>()?;
        let labels: Vec<&str> = gens.iter().map(|&g| self.0.labels[g as usize].as_str()).collect();
        let name = format!("<{}> in {}", labels.join(", "), self.name());
        build::subgroup_from_generators(self, &gens, name)
    }

    pub fn subgroup_named(&self, gens: &[Elem], name: impl Into<String>) -> Result<FiniteGroup> {
        let gens = gens.iter().map(|&g| self.check(g)).collect::<Result<Vec<_>>>()?;
        build::subgroup_from_generators(self, &gens, name.into())
    }

    pub fn cyclic_subgroup(&self, g: Elem) -> Result<FiniteGroup> {
        self.subgroup(&[g])
    }

    /// Conjugacy classes sorted by element order, class size, then
    /// representative index. The representative is the smallest element of
    /// its class.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClassRecord] {
        &self.class_data().records
    }

    /// Index into [`Self::conjugacy_classes`] of the class containing `g`.
    pub fn class_index(&self, g: Elem) -> Result<usize> {
        let i = self.check(g)?;
        Ok(self.class_data().class_of[i as usize] as usize)
    }

    /// Members of the class at `class` (see [`Self::conjugacy_classes`]).
    pub fn class_members(&self, class: usize) -> Vec<Elem> {
        let cd = self.class_data();
        (0..self.order() as u32).filter(|&i| cd.class_of[i as usize] as usize == class).map(|i| self.elem(i)).collect()
    }

    fn class_data(&self) -> &ClassData {
        self.0.classes.get_or_init(|| {
            let n = self.order();
            let mut raw_of = vec![u32::MAX; n];
            let mut raw: Vec<(u32, Vec<u32>)> = Vec::new();
            for a in 0..n as u32 {
                if raw_of[a as usize] != u32::MAX {
                    continue;
                }
                let id = raw.len() as u32;
                let mut orbit = vec![a];
                raw_of[a as usize] = id;
                let mut head = 0;
                while head < orbit.len() {
                    let x = orbit[head];
                    head += 1;
                    for &s in &self.0.generators {
                        let y = self.conj(x, s);
                        if raw_of[y as usize] == u32::MAX {
                            raw_of[y as usize] = id;
                            orbit.push(y);
                        }
                    }
                }
                raw.push((a, orbit));
            }
            let mut order: Vec<usize> = (0..raw.len()).collect();
            order.sort_by_key(|&c| (self.0.orders[raw[c].0 as usize], raw[c].1.len(), raw[c].0));
            let mut rank = vec![0u32; raw.len()];
            for (pos, &c) in order.iter().enumerate() {
                rank[c] = pos as u32;
            }
            let records = order
                .iter()
                .map(|&c| {
                    let (rep, members) = &raw[c];
                    ConjugacyClassRecord {
                        representative: self.elem(*rep),
                        representative_label: self.0.labels[*rep as usize].clone(),
                        size: members.len(),
                        element_order: self.0.orders[*rep as usize],
                        centralizer_order: n / members.len(),
                    }
                })
                .collect();
            let class_of = raw_of.iter().map(|&c| rank[c as usize]).collect();
            ClassData { records, class_of }
        })
    }

    /// `[G,G]` together with the invariant factors of `G/[G,G]`.
    pub fn commutator_data(&self) -> &CommutatorData {
        self.0.commutator.get_or_init(|| self.compute_commutator().expect("commutator subgroup of a valid group"))
    }

    fn compute_commutator(&self) -> Result<CommutatorData> {
        let gens = &self.0.generators;
        let mut seeds = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.comm(a, b);
                if c != self.0.identity {
                    seeds.push(c);
                }
            }
        }
        // normal closure of the generator commutators
        let mut members = build::closure_in(self, &seeds);
        loop {
            let mut mask = vec![false; self.order()];
            members.iter().for_each(|&i| mask[i as usize] = true);
            let extra = seeds
                .iter()
                .flat_map(|&h| gens.iter().map(move |&s| (h, s)))
                .map(|(h, s)| self.conj(h, s))
                .find(|&c| !mask[c as usize]);
            match extra {
                Some(c) => {
                    seeds.push(c);
                    members = build::closure_in(self, &seeds);
                }
                None => break,
            }
        }
        let name = format!("[{0},{0}]", self.name());
        let subgroup = build::subgroup_from_members(self, &members, name)?;
        let quotient = self.quotient(&subgroup)?;
        let abelianization = abelian_invariants(&quotient)?;
        Ok(CommutatorData { subgroup, abelianization })
    }

    pub fn is_perfect(&self) -> bool {
        self.commutator_data().subgroup.order() == self.order()
    }

    /// Subgroup of elements commuting with `g`.
    pub fn centralizer(&self, g: Elem) -> Result<FiniteGroup> {
        let gi = self.check(g)?;
        let members: Vec<u32> =
            par::filter_range(self.order(), |x| self.m(x as u32, gi) == self.m(gi, x as u32)).into_iter().map(|x| x as u32).collect();
        build::subgroup_from_members(self, &members, format!("C({})", self.0.labels[gi as usize]))
    }

    /// Normalizer of a subgroup `h` (built from this group), with its index.
    pub fn normalizer(&self, h: &FiniteGroup) -> Result<Normalizer> {
        let mask = self.member_mask(h)?;
        let hgens: Vec<u32> = match h.parent() {
            Some(_) => h.0.generators.iter().map(|&g| h.embed(h.elem(g)).unwrap().index).collect(),
            None => self.0.generators.clone(),
        };
        let members: Vec<u32> = par::filter_range(self.order(), |x| {
            let xinv = self.0.inverse[x];
            hgens.iter().all(|&s| mask[self.m(self.m(xinv, s), x as u32) as usize])
        })
        .into_iter()
        .map(|x| x as u32)
        .collect();
        let group = build::subgroup_from_members(self, &members, format!("N({})", h.name()))?;
        let index = self.order() / group.order();
        Ok(Normalizer { group, index })
    }

    /// Index `[G : H]` of a subgroup built from this group.
    pub fn index_of(&self, h: &FiniteGroup) -> Result<usize> {
        self.member_mask(h)?;
        Ok(self.order() / h.order())
    }

    pub fn is_normal(&self, h: &FiniteGroup) -> Result<bool> {
        Ok(self.normalizer(h)?.index == 1)
    }

    /// Number of involutions commuting with `g`.
    pub fn commuting_involutions(&self, g: Elem) -> Result<usize> {
        let gi = self.check(g)?;
        Ok(par::filter_range(self.order(), |x| {
            self.0.orders[x] == 2 && self.m(x as u32, gi) == self.m(gi, x as u32)
        })
        .len())
    }

    /// Quotient by a normal subgroup built from this group.
    pub fn quotient(&self, normal: &FiniteGroup) -> Result<FiniteGroup> {
        let mask = self.member_mask(normal)?;
        let nmembers: Vec<u32> = (0..self.order() as u32).filter(|&i| mask[i as usize]).collect();
        for &s in &self.0.generators {
            for &n in &nmembers {
                if !mask[self.conj(n, s) as usize] {
                    return Err(invalid(format!("{} is not normal in {}", normal.name(), self.name())));
                }
            }
        }
        build::quotient(self, &nmembers, format!("{}/{}", self.name(), normal.name()))
    }

    /// Partitions the classes of a subgroup `h` according to conjugacy in
    /// `self`. Each inner list holds indices into `h.conjugacy_classes()`.
    pub fn fuse_classes(&self, h: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
        self.member_mask(h)?;
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (ci, rec) in h.conjugacy_classes().iter().enumerate() {
            let e = if h.0.id == self.0.id { rec.representative } else { h.embed(rec.representative)? };
            groups.entry(self.class_index(e)?).or_default().push(ci);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        Ok(out)
    }

    // index-level helpers

    fn elem(&self, index: u32) -> Elem {
        Elem { group: self.0.id, index }
    }

    fn check(&self, e: Elem) -> Result<u32> {
        if self.contains(e) {
            Ok(e.index)
        } else {
            Err(invalid(format!("element does not belong to {}", self.name())))
        }
    }

    fn ix(&self, e: Elem) -> u32 {
        assert!(self.contains(e), "element does not belong to {}", self.name());
        e.index
    }

    pub(crate) fn m(&self, a: u32, b: u32) -> u32 {
        self.0.table[a as usize * self.order() + b as usize]
    }

    fn conj(&self, a: u32, b: u32) -> u32 {
        self.m(self.m(self.0.inverse[b as usize], a), b)
    }

    fn comm(&self, a: u32, b: u32) -> u32 {
        let (ai, bi) = (self.0.inverse[a as usize], self.0.inverse[b as usize]);
        self.m(self.m(ai, bi), self.m(a, b))
    }
}

/// Invariant factors of an abelian group, ascending with factor 1 dropped.
///
/// Uses the counts `#{x : x^(p^k) = 1} = p^(Σ min(k, aᵢ))` to recover each
/// primary component, then merges primary parts into invariant factors.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<Vec<u64>> {
    if !g.is_abelian() {
        return Err(invalid(format!("{} is not abelian", g.name())));
    }
    let n = g.order() as u64;
    let orders = &g.0.orders;
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for p in prime_factors(n) {
        let mut e = 0;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        // s[k] = log_p #{x : x^(p^k) = 1}
        let mut s = vec![0u32; e + 2];
        for (k, slot) in s.iter_mut().enumerate().skip(1) {
            let pk = p.pow(k as u32);
            let count = orders.iter().filter(|&&o| pk % o as u64 == 0).count() as u64;
            *slot = ilog(count, p);
        }
        // number of cyclic factors of exponent ≥ k is s[k] - s[k-1]
        let at_least: Vec<u32> = (1..=e + 1).map(|k| s[k] - s[k - 1]).collect();
        let mut powers = Vec::new();
        for k in (1..=e).rev() {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            for _ in 0..exactly {
                powers.push(p.pow(k as u32));
            }
        }
        columns.push(powers);
    }
    let width = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> =
        (0..width).map(|i| columns.iter().map(|c| c.get(i).copied().unwrap_or(1)).product()).collect();
    factors.retain(|&f| f > 1);
    factors.sort_unstable();
    Ok(factors)
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Error {
        Error::MalformedGroup(msg.into())
    }
}

#[cfg(test)]
mod tests;
