//! Construction of [`FiniteGroup`]s: closure under a key multiplication,
//! subgroups and quotients of existing tables, and the direct, semidirect
//! and central product combinators.

use std::collections::HashMap;
use std::sync::atomic::Ordering;
use std::sync::{Arc, OnceLock};

use super::{ConstructionKind, Elem, FiniteGroup, GroupData, Origin, MAX_ORDER, NEXT_ID};
use crate::error::invalid;
use crate::{par, Error, Result};

/// A permutation of `0..n` as its image list. Products read left to right:
/// `(a·b)[i] = b[a[i]]`.
pub type Perm = Vec<u32>;

/// Builds a permutation of `0..degree` from disjoint cycles.
pub fn perm_from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Perm> {
    let mut p: Perm = (0..degree as u32).collect();
    let mut seen = vec![false; degree];
    for cyc in cycles {
        for (k, &x) in cyc.iter().enumerate() {
            let x = x as usize;
            if x >= degree || seen[x] {
                return Err(invalid(format!("bad cycle {cyc:?} on {degree} points")));
            }
            seen[x] = true;
            p[x] = cyc[(k + 1) % cyc.len()];
        }
    }
    Ok(p)
}

fn perm_label(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x.to_string());
            x = p[x] as usize;
        }
        out.push('(');
        out.push_str(&cyc.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

/// Group generated by permutations of `0..degree`.
pub fn permutation_group(name: impl Into<String>, degree: usize, gens: &[Perm]) -> Result<FiniteGroup> {
    for g in gens {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&x| (x as usize) >= degree || std::mem::replace(&mut seen[x as usize], true)) {
            return Err(invalid(format!("{g:?} is not a permutation of {degree} points")));
        }
    }
    from_keys(
        name.into(),
        ConstructionKind::Permutation,
        (0..degree as u32).collect(),
        gens.to_vec(),
        |a, b| a.iter().map(|&x| b[x as usize]).collect(),
        |k| perm_label(k),
    )
}

/// Closes `gens` under `mul`, starting from `identity`.
///
/// Keys must be canonical: two keys are the same element iff they are
/// equal. The result lists elements in ascending key order.
pub(crate) fn from_keys<M, L>(
    name: String,
    kind: ConstructionKind,
    identity: Vec<u32>,
    gens: Vec<Vec<u32>>,
    mul: M,
    label: L,
) -> Result<FiniteGroup>
where
    M: Fn(&[u32], &[u32]) -> Vec<u32> + Sync + Send,
    L: Fn(&[u32]) -> String,
{
    let mut gen_keys: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        if g != identity && !gen_keys.contains(&g) {
            gen_keys.push(g);
        }
    }
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity, 0);
    let mut rmul: Vec<Vec<u32>> = vec![Vec::new(); gen_keys.len()];
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        for (s, g) in gen_keys.iter().enumerate() {
            let y = mul(&x, g);
            let next = elems.len() as u32;
            let yi = *index.entry(y.clone()).or_insert(next);
            if yi == next {
                elems.push(y);
                if elems.len() > MAX_ORDER {
                    return Err(Error::malformed(format!("{name}: closure exceeds {MAX_ORDER} elements")));
                }
            }
            rmul[s].push(yi);
        }
        head += 1;
    }

    let n = elems.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| elems[a as usize].cmp(&elems[b as usize]));
    let mut new_of = vec![0u32; n];
    for (pos, &old) in order.iter().enumerate() {
        new_of[old as usize] = pos as u32;
    }
    let keys: Vec<Vec<u32>> = order.iter().map(|&old| elems[old as usize].clone()).collect();
    let rmul: Vec<Vec<u32>> = rmul
        .iter()
        .map(|r| {
            let mut out = vec![0u32; n];
            for (old, &img) in r.iter().enumerate() {
                out[new_of[old] as usize] = new_of[img as usize];
            }
            out
        })
        .collect();
    let generators: Vec<u32> = gen_keys.iter().map(|k| new_of[index[k] as usize]).collect();
    let labels = keys.iter().map(|k| label(k)).collect();
    let identity = new_of[0];
    let group = assemble(name, kind, keys, labels, identity, generators, rmul, Origin::Free)?;

    // left multiplication by generators must agree with the key product
    let ok = par::all_range(n * group.0.generators.len(), |t| {
        let (s, b) = (t / n, t % n);
        let g = group.0.generators[s];
        let key = mul(&group.0.keys[g as usize], &group.0.keys[b]);
        group.0.lookup.get(&key) == Some(&group.m(g, b as u32))
    });
    if !ok {
        return Err(Error::malformed(format!("{}: key product is not a group law", group.name())));
    }
    Ok(group)
}

/// Finishes a group from canonically ordered keys and right-multiplication
/// maps for each generator.
#[allow(clippy::too_many_arguments)]
fn assemble(
    name: String,
    kind: ConstructionKind,
    keys: Vec<Vec<u32>>,
    labels: Vec<String>,
    identity: u32,
    generators: Vec<u32>,
    rmul: Vec<Vec<u32>>,
    origin: Origin,
) -> Result<FiniteGroup> {
    let n = keys.len();
    let mut tree: Vec<Option<(u32, u32)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut bfs = vec![identity];
    seen[identity as usize] = true;
    let mut head = 0;
    while head < bfs.len() {
        let x = bfs[head];
        head += 1;
        for (s, r) in rmul.iter().enumerate() {
            let y = r[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                tree[y as usize] = Some((x, s as u32));
                bfs.push(y);
            }
        }
    }
    if bfs.len() != n {
        return Err(Error::malformed(format!("{name}: generators reach {} of {n} elements", bfs.len())));
    }

    let mut table = vec![0u32; n * n];
    par::fill_rows(&mut table, n, |a, row| {
        row[identity as usize] = a as u32;
        for &b in &bfs[1..] {
            let (p, s) = tree[b as usize].expect("tree edge");
            row[b as usize] = rmul[s as usize][row[p as usize] as usize];
        }
    });

    let inverse: Vec<u32> = par::map_range(n, |a| {
        table[a * n..(a + 1) * n].iter().position(|&x| x == identity).map(|b| b as u32).unwrap_or(u32::MAX)
    });
    if inverse.contains(&u32::MAX) {
        return Err(Error::malformed(format!("{name}: some element has no inverse")));
    }
    let orders: Vec<u32> = par::map_range(n, |a| {
        let mut x = a as u32;
        let mut k = 1;
        while x != identity {
            x = table[x as usize * n + a];
            k += 1;
        }
        k
    });
    let lookup = keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();

    Ok(FiniteGroup(Arc::new(GroupData {
        id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        name,
        kind,
        identity,
        table,
        inverse,
        orders,
        keys,
        labels,
        lookup,
        generators,
        bfs,
        tree,
        origin,
        classes: OnceLock::new(),
        commutator: OnceLock::new(),
    })))
}

/// Sorted members of the subgroup of `g` generated by the given indices.
pub(crate) fn closure_in(g: &FiniteGroup, gens: &[u32]) -> Vec<u32> {
    let e = g.0.identity;
    let mut seen = vec![false; g.order()];
    seen[e as usize] = true;
    let mut out = vec![e];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for &s in gens {
            let y = g.m(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn subgroup_from_generators(g: &FiniteGroup, gens: &[u32], name: String) -> Result<FiniteGroup> {
    let mut gens: Vec<u32> = gens.iter().copied().filter(|&x| x != g.0.identity).collect();
    gens.dedup();
    let members = closure_in(g, &gens);
    restrict(g, &members, gens, name)
}

/// Subgroup with exactly the given (sorted) members, using a greedy
/// generating set: each member not yet reached becomes a generator.
pub(crate) fn subgroup_from_members(g: &FiniteGroup, members: &[u32], name: String) -> Result<FiniteGroup> {
    let mut gens = Vec::new();
    let mut reached = vec![false; g.order()];
    reached[g.0.identity as usize] = true;
    for &x in members {
        if !reached[x as usize] {
            gens.push(x);
            for y in closure_in(g, &gens) {
                reached[y as usize] = true;
            }
        }
    }
    let closure = closure_in(g, &gens);
    if closure != members {
        return Err(Error::Consistency(format!("{name}: members do not form a subgroup")));
    }
    restrict(g, members, gens, name)
}

fn restrict(g: &FiniteGroup, members: &[u32], gens: Vec<u32>, name: String) -> Result<FiniteGroup> {
    let mut local = vec![u32::MAX; g.order()];
    for (i, &m) in members.iter().enumerate() {
        local[m as usize] = i as u32;
    }
    let rmul = gens.iter().map(|&s| members.iter().map(|&x| local[g.m(x, s) as usize]).collect()).collect();
    let keys = members.iter().map(|&m| g.0.keys[m as usize].clone()).collect();
    let labels = members.iter().map(|&m| g.0.labels[m as usize].clone()).collect();
    let identity = local[g.0.identity as usize];
    let generators = gens.iter().map(|&s| local[s as usize]).collect();
    let origin = Origin::Subgroup { parent: g.clone(), embedding: members.to_vec() };
    assemble(name, ConstructionKind::Subgroup, keys, labels, identity, generators, rmul, origin)
}

/// Quotient by the normal subgroup with the given members.
pub(crate) fn quotient(g: &FiniteGroup, normal: &[u32], name: String) -> Result<FiniteGroup> {
    let n = g.order();
    let mut coset_rep = vec![u32::MAX; n];
    for a in 0..n as u32 {
        if coset_rep[a as usize] != u32::MAX {
            continue;
        }
        // a is the smallest element of its coset
        for &h in normal {
            coset_rep[g.m(a, h) as usize] = a;
        }
    }
    let mut reps: Vec<u32> = coset_rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut local = vec![u32::MAX; n];
    for (i, &r) in reps.iter().enumerate() {
        local[r as usize] = i as u32;
    }
    let projection: Vec<u32> = coset_rep.iter().map(|&r| local[r as usize]).collect();
    let mut gens: Vec<u32> = Vec::new();
    for &s in &g.0.generators {
        let c = projection[s as usize];
        if c != projection[g.0.identity as usize] && !gens.contains(&c) {
            gens.push(c);
        }
    }
    let rmul =
        gens.iter().map(|&s| reps.iter().map(|&r| projection[g.m(r, reps[s as usize]) as usize]).collect()).collect();
    let keys = reps.iter().map(|&r| g.0.keys[r as usize].clone()).collect();
    let labels = reps.iter().map(|&r| g.0.labels[r as usize].clone()).collect();
    let identity = projection[g.0.identity as usize];
    let origin = Origin::Quotient { source: g.clone(), projection };
    assemble(name, ConstructionKind::Quotient, keys, labels, identity, gens, rmul, origin)
}

/// `A × B` with generators `(a, 1)` followed by `(1, b)`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, name: impl Into<String>) -> Result<FiniteGroup> {
    let (ea, eb) = (a.0.identity, b.0.identity);
    let gens = a.0.generators.iter().map(|&x| vec![x, eb]).chain(b.0.generators.iter().map(|&y| vec![ea, y])).collect();
    from_keys(
        name.into(),
        ConstructionKind::Direct,
        vec![ea, eb],
        gens,
        |x, y| vec![a.m(x[0], y[0]), b.m(x[1], y[1])],
        |k| format!("({},{})", a.0.labels[k[0] as usize], b.0.labels[k[1] as usize]),
    )
}

/// `(A × B)/⟨(za, zb)⟩` for central elements `za`, `zb`.
pub fn central_product(
    a: &FiniteGroup,
    b: &FiniteGroup,
    za: Elem,
    zb: Elem,
    name: impl Into<String>,
) -> Result<FiniteGroup> {
    let prod = direct_product(a, b, format!("{}x{}", a.name(), b.name()))?;
    let z = prod.find(&[a.check(za)?, b.check(zb)?]).expect("pair is in the product");
    let zg = prod.cyclic_subgroup(z)?;
    if !prod.generators().iter().all(|&g| prod.mul(g, z) == prod.mul(z, g)) {
        return Err(invalid("central product needs central elements"));
    }
    Ok(prod.quotient(&zg)?.renamed(name))
}

/// An automorphism of a [`FiniteGroup`] as an index permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    group: u64,
    images: Vec<u32>,
}

impl Automorphism {
    pub fn identity(g: &FiniteGroup) -> Automorphism {
        Automorphism { group: g.0.id, images: (0..g.order() as u32).collect() }
    }

    /// The unique homomorphism sending `g.generators()[k]` to `images[k]`,
    /// checked to be a well-defined bijection.
    pub fn from_generator_images(g: &FiniteGroup, images: &[Elem]) -> Result<Automorphism> {
        if images.len() != g.0.generators.len() {
            return Err(invalid(format!("{} has {} generators, got {} images", g.name(), g.0.generators.len(), images.len())));
        }
        let img: Vec<u32> = images.iter().map(|&e| g.check(e)).collect::<Result<_>>()?;
        let f = extend_along_tree(g, |p, s| g.m(p, img[s]), g.0.identity);
        let ok = par::all_range(g.order() * img.len(), |t| {
            let (a, s) = ((t / img.len()) as u32, t % img.len());
            f[g.m(a, g.0.generators[s]) as usize] == g.m(f[a as usize], img[s])
        });
        let mut seen = vec![false; g.order()];
        let bijective = f.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true));
        if !ok || !bijective {
            return Err(Error::malformed(format!("generator images do not define an automorphism of {}", g.name())));
        }
        Ok(Automorphism { group: g.0.id, images: f })
    }

    pub fn apply(&self, g: &FiniteGroup, e: Elem) -> Result<Elem> {
        if g.0.id != self.group {
            return Err(invalid("automorphism applied to a different group"));
        }
        Ok(g.elem(self.images[g.check(e)? as usize]))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { group: self.group, images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

/// Values `f(b)` for every element, with `f(identity) = root` and
/// `f(p · s) = step(f(p), s)` along the breadth-first tree.
fn extend_along_tree<T: Clone>(g: &FiniteGroup, step: impl Fn(T, usize) -> T, root: T) -> Vec<T> {
    let mut out: Vec<Option<T>> = vec![None; g.order()];
    out[g.0.identity as usize] = Some(root);
    for &b in &g.0.bfs[1..] {
        let (p, s) = g.0.tree[b as usize].expect("tree edge");
        let v = step(out[p as usize].clone().expect("parent visited first"), s as usize);
        out[b as usize] = Some(v);
    }
    out.into_iter().map(|v| v.expect("all elements visited")).collect()
}

/// A left action `H → Aut(N)`, `φ(h₁h₂) = φ(h₁) ∘ φ(h₂)`.
#[derive(Debug, Clone)]
pub struct Action {
    acting: u64,
    target: u64,
    maps: Vec<Automorphism>,
}

impl Action {
    pub fn of(&self, h: Elem) -> &Automorphism {
        assert_eq!(h.group, self.acting, "element of the wrong acting group");
        &self.maps[h.index()]
    }

    /// Action given elementwise by `f(h, n)`; each map and the
    /// homomorphism property are checked.
    pub fn from_fn(h: &FiniteGroup, n: &FiniteGroup, f: impl Fn(Elem, Elem) -> Elem) -> Result<Action> {
        let maps = h
            .elements()
            .map(|x| {
                let images = n.generators().iter().map(|&g| f(x, g)).collect::<Vec<_>>();
                Automorphism::from_generator_images(n, &images)
            })
            .collect::<Result<Vec<_>>>()?;
        let action = Action { acting: h.0.id, target: n.0.id, maps };
        action.check_hom(h)?;
        Ok(action)
    }

    fn check_hom(&self, h: &FiniteGroup) -> Result<()> {
        for a in 0..h.order() as u32 {
            for &s in &h.0.generators {
                if self.maps[h.m(a, s) as usize] != self.maps[a as usize].compose(&self.maps[s as usize]) {
                    return Err(Error::malformed(format!("{}: assignment is not a homomorphism", h.name())));
                }
            }
        }
        Ok(())
    }
}

/// The action of `h` on `n` sending generator `k` of `h` to `images[k]`.
pub fn action_from_generators(h: &FiniteGroup, n: &FiniteGroup, images: &[Automorphism]) -> Result<Action> {
    if images.len() != h.0.generators.len() || images.iter().any(|a| a.group != n.0.id) {
        return Err(invalid(format!("need one automorphism of {} per generator of {}", n.name(), h.name())));
    }
    let maps = extend_along_tree(h, |p: Automorphism, s| p.compose(&images[s]), Automorphism::identity(n));
    let action = Action { acting: h.0.id, target: n.0.id, maps };
    action.check_hom(h)?;
    Ok(action)
}

/// `N ⋊_φ H` with `(n₁,h₁)(n₂,h₂) = (n₁·φ(h₁)(n₂), h₁h₂)`.
pub fn semidirect_product(
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &Action,
    name: impl Into<String>,
) -> Result<FiniteGroup> {
    if action.acting != h.0.id || action.target != n.0.id {
        return Err(invalid("action does not match the factors"));
    }
    let (en, eh) = (n.0.identity, h.0.identity);
    let gens = n.0.generators.iter().map(|&x| vec![x, eh]).chain(h.0.generators.iter().map(|&y| vec![en, y])).collect();
    let maps = &action.maps;
    from_keys(
        name.into(),
        ConstructionKind::Semidirect,
        vec![en, eh],
        gens,
        |x, y| vec![n.m(x[0], maps[x[1] as usize].images[y[0] as usize]), h.m(x[1], y[1])],
        |k| format!("({},{})", n.0.labels[k[0] as usize], h.0.labels[k[1] as usize]),
    )
}

/// Group on integer keys closed under `mul`, for small hand-coded models.
pub(crate) fn keyed_group<M, L>(
    name: &str,
    identity: Vec<u32>,
    gens: Vec<Vec<u32>>,
    mul: M,
    label: L,
) -> Result<FiniteGroup>
where
    M: Fn(&[u32], &[u32]) -> Vec<u32> + Sync + Send,
    L: Fn(&[u32]) -> String,
{
    from_keys(name.to_string(), ConstructionKind::Named, identity, gens, mul, label)
}
