//! The `(Z₂)³`-equivariant Kummer model: `T⁴` with `ρ = −1`, the translation
//! action of `G = (Z₂)³`, its fixed points and the twelve tori `T_{j,k}`.
//!
//! Angles are rationals in units of `π`, reduced into `[0, 2)`, so every
//! incidence question is an exact finite comparison. The resolution of the
//! sixteen singular points is not modelled; all certificates live in the
//! smooth locus.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::invalid;
use crate::lattice::{isotropy_check, IntMatrix, IntegralLattice};
use crate::rational::{frac, int, to_canonical_string};
use crate::swcalc::{induced_action_on_l, TorusId};
use crate::{Error, Rational, Result};

/// An angle `qπ` with `0 ≤ q < 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational);

impl Angle {
    pub fn new(q: Rational) -> Angle {
        let two = int(2);
        let r = q - (q / two).floor() * two;
        Angle(r)
    }

    pub fn pi_units(n: i64, d: i64) -> Angle {
        Angle::new(frac(n, d))
    }

    pub fn value(self) -> Rational {
        self.0
    }

    pub fn add(self, other: Angle) -> Angle {
        Angle::new(self.0 + other.0)
    }

    pub fn neg(self) -> Angle {
        Angle::new(-self.0)
    }

    pub fn shift(self, half_turns: u8) -> Angle {
        Angle::new(self.0 + int(half_turns as i64))
    }

    /// Whether the angle is one of `0, π/2, π, 3π/2`.
    pub fn is_quarter(self) -> bool {
        (self.0 * int(2)).is_integer()
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_canonical_string(&self.0))
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub type Point = [Angle; 4];

pub fn rho(x: &Point) -> Point {
    x.map(Angle::neg)
}

/// Element `(a₁, a₂, a₃)` of `(Z₂)³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElem(pub [u8; 3]);

impl GElem {
    pub fn all() -> Vec<GElem> {
        (0..8u8).map(|m| GElem([m & 1, (m >> 1) & 1, (m >> 2) & 1])).collect()
    }

    pub fn nonzero() -> Vec<GElem> {
        GElem::all().into_iter().filter(|a| !a.is_zero()).collect()
    }

    pub fn is_zero(self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn add(self, other: GElem) -> GElem {
        GElem([self.0[0] ^ other.0[0], self.0[1] ^ other.0[1], self.0[2] ^ other.0[2]])
    }

    /// Half-turn shift applied to coordinate `c` (coordinate 0 is never moved).
    pub fn shift_of(self, c: usize) -> u8 {
        if c == 0 {
            0
        } else {
            self.0[c - 1]
        }
    }

    pub fn apply(self, x: &Point) -> Point {
        [x[0], x[1].shift(self.0[0]), x[2].shift(self.0[1]), x[3].shift(self.0[2])]
    }

    pub fn parse(s: &str) -> Result<GElem> {
        let bits: Vec<u8> = s
            .trim()
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|b| match b.trim() {
                "0" => Ok(0),
                "1" => Ok(1),
                other => Err(invalid(format!("group element entry `{other}` is not 0 or 1"))),
            })
            .collect::<Result<_>>()?;
        match bits.as_slice() {
            &[a, b, c] => Ok(GElem([a, b, c])),
            _ => Err(invalid(format!("group element `{s}` needs three entries"))),
        }
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for GElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A point of `T⁴/ρ`, stored as the lexicographically smaller of `{x, ρx}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuotientPoint(pub Point);

impl QuotientPoint {
    pub fn canonical(x: &Point) -> QuotientPoint {
        QuotientPoint((*x).min(rho(x)))
    }

    pub fn representative(&self) -> &Point {
        &self.0
    }

    pub fn is_singular(&self) -> bool {
        rho(&self.0) == self.0
    }
}

fn grid(denominator: i64) -> Vec<Point> {
    let steps: Vec<Angle> = (0..2 * denominator).map(|k| Angle::pi_units(k, denominator)).collect();
    let mut out = Vec::with_capacity(steps.len().pow(4));
    for &a in &steps {
        for &b in &steps {
            for &c in &steps {
                for &d in &steps {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// The sixteen points with every coordinate in `{0, π}`.
pub fn rho_fixed_points() -> Vec<QuotientPoint> {
    let pts: BTreeSet<QuotientPoint> =
        grid(1).into_iter().filter(|x| rho(x) == *x).map(|x| QuotientPoint::canonical(&x)).collect();
    pts.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "points", rename_all = "snake_case")]
pub enum FixedLocus {
    WholeSpace,
    Points(Vec<QuotientPoint>),
}

impl FixedLocus {
    pub fn points(&self) -> Option<&[QuotientPoint]> {
        match self {
            FixedLocus::WholeSpace => None,
            FixedLocus::Points(p) => Some(p),
        }
    }
}

/// Fixed points of `a` on `T⁴/ρ`, from `a·x ∈ {x, ρx}`. Either branch forces
/// `2θ_c ∈ πZ` coordinatewise, so the quarter grid is exhaustive.
pub fn fixed_points_of(a: GElem) -> FixedLocus {
    if a.is_zero() {
        return FixedLocus::WholeSpace;
    }
    let pts: BTreeSet<QuotientPoint> = grid(2)
        .into_iter()
        .filter(|x| {
            let y = a.apply(x);
            y == *x || y == rho(x)
        })
        .map(|x| QuotientPoint::canonical(&x))
        .collect();
    FixedLocus::Points(pts.into_iter().collect())
}

/// Checks `θ₀ ∈ {0, π}` and, for `j = 1, 2, 3`, `θ_j ∈ {0, π}` when `a_j = 0`
/// and `θ_j ∈ {π/2, 3π/2}` when `a_j = 1`.
pub fn matches_fixed_pattern(a: GElem, x: &QuotientPoint) -> bool {
    let p = x.representative();
    let integral = |t: Angle| t.value().is_integer();
    integral(p[0]) && (1..4).all(|c| integral(p[c]) == (a.shift_of(c) == 0) && p[c].is_quarter())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Deltas {
    pub d12: Angle,
    pub d13: Angle,
    pub d21: Angle,
    pub d23: Angle,
    pub d31: Angle,
    pub d32: Angle,
}

impl Default for Deltas {
    /// `(1/5, 1/7, 2/5, 2/7, 1/3, 3/7)·π`.
    fn default() -> Deltas {
        Deltas::from_rationals([frac(1, 5), frac(1, 7), frac(2, 5), frac(2, 7), frac(1, 3), frac(3, 7)])
    }
}

impl Deltas {
    /// Values in the order `δ₁₂, δ₁₃, δ₂₁, δ₂₃, δ₃₁, δ₃₂`, in units of `π`.
    pub fn from_rationals(q: [Rational; 6]) -> Deltas {
        let a = q.map(Angle::new);
        Deltas { d12: a[0], d13: a[1], d21: a[2], d23: a[3], d31: a[4], d32: a[5] }
    }

    pub fn parse(s: &str) -> Result<Deltas> {
        let vals: Vec<Rational> = s.split(',').map(crate::rational::parse).collect::<Result<_>>()?;
        let arr: [Rational; 6] =
            vals.try_into().map_err(|_| invalid(format!("`{s}` needs six rationals q12,q13,q21,q23,q31,q32")))?;
        Ok(Deltas::from_rationals(arr))
    }

    fn named(&self) -> [(&'static str, Angle); 6] {
        [
            ("δ_12", self.d12),
            ("δ_13", self.d13),
            ("δ_21", self.d21),
            ("δ_23", self.d23),
            ("δ_31", self.d31),
            ("δ_32", self.d32),
        ]
    }

    /// The base-point and cross conditions, first failure first.
    pub fn validate(&self) -> Result<()> {
        for (name, d) in self.named() {
            if d.is_quarter() {
                return Err(Error::Validation(format!("{name} = {d}π must avoid 0, π/2, π and 3π/2")));
            }
        }
        let cross = [
            ("δ_13", self.d13, "δ_23", self.d23),
            ("δ_12", self.d12, "δ_32", self.d32),
            ("δ_21", self.d21, "δ_31", self.d31),
        ];
        for (na, a, nb, b) in cross {
            let forbidden = [b, b.neg(), b.shift(1), b.shift(1).neg()];
            if forbidden.contains(&a) {
                return Err(Error::Validation(format!("{na} ≠ ±{nb}, ±({nb}+π) fails: {na} = {a}π, {nb} = {b}π")));
            }
        }
        Ok(())
    }
}

/// `T_{j,k} = π_j⁻¹(base)`: the two constrained coordinates and their values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Torus {
    pub id: TorusId,
    pub constrained: [usize; 2],
    pub base: [Angle; 2],
}

impl Torus {
    /// The two free coordinates, which parametrize the torus.
    pub fn free(&self) -> [usize; 2] {
        let f: Vec<usize> = (0..4).filter(|c| !self.constrained.contains(c)).collect();
        [f[0], f[1]]
    }

    fn rho_base(&self) -> [Angle; 2] {
        self.base.map(Angle::neg)
    }

    fn image(&self, a: GElem) -> [Angle; 2] {
        [self.base[0].shift(a.shift_of(self.constrained[0])), self.base[1].shift(a.shift_of(self.constrained[1]))]
    }

    pub fn contains(&self, x: &Point) -> bool {
        x[self.constrained[0]] == self.base[0] && x[self.constrained[1]] == self.base[1]
    }

    /// Whether the torus meets the quotient point `x`.
    pub fn meets(&self, x: &QuotientPoint) -> bool {
        self.contains(x.representative()) || self.contains(&rho(x.representative()))
    }
}

fn constraints_compatible(a: &[usize; 2], av: &[Angle; 2], b: &[usize; 2], bv: &[Angle; 2]) -> bool {
    (0..2).all(|i| (0..2).all(|j| a[i] != b[j] || av[i] == bv[j]))
}

/// Whether two tori meet in `T⁴/ρ`, i.e. `T ∩ T′` or `T ∩ ρT′` is nonempty
/// in `T⁴`.
pub fn tori_meet(t: &Torus, u: &Torus) -> bool {
    constraints_compatible(&t.constrained, &t.base, &u.constrained, &u.base)
        || constraints_compatible(&t.constrained, &t.base, &u.constrained, &u.rho_base())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToriFamily {
    pub deltas: Deltas,
    pub tori: Vec<Torus>,
    /// Each torus is disjoint from its `ρ`-image, so it embeds in `T⁴/ρ`.
    pub embedded: bool,
    pub pairs_checked: usize,
    pub disjoint: bool,
}

impl ToriFamily {
    pub fn torus(&self, id: TorusId) -> Option<&Torus> {
        self.tori.iter().find(|t| t.id == id)
    }

    /// Identifies a torus by its constraints, up to `ρ`.
    fn locate(&self, constrained: [usize; 2], base: [Angle; 2]) -> Option<TorusId> {
        let neg = base.map(Angle::neg);
        self.tori.iter().find(|t| t.constrained == constrained && (t.base == base || t.base == neg)).map(|t| t.id)
    }

    /// The permutation of the twelve tori induced by `a`.
    pub fn permutation(&self, a: GElem) -> Result<BTreeMap<TorusId, TorusId>> {
        self.tori
            .iter()
            .map(|t| {
                let target = self
                    .locate(t.constrained, t.image(a))
                    .ok_or_else(|| Error::NonEquivariant(format!("{a} moves {} off the family", t.id)))?;
                Ok((t.id, target))
            })
            .collect()
    }
}

pub fn build_tori(deltas: Deltas) -> Result<ToriFamily> {
    deltas.validate()?;
    let groups = [(1, [2, 3], [deltas.d12, deltas.d13]), (2, [1, 3], [deltas.d21, deltas.d23]), (3, [1, 2], [deltas.d31, deltas.d32])];
    let mut tori = Vec::with_capacity(12);
    for (j, constrained, base) in groups {
        for k in 0..4u8 {
            let base = [base[0].shift(k & 1), base[1].shift(k >> 1)];
            tori.push(Torus { id: TorusId::new(j, k as usize), constrained, base });
        }
    }
    let embedded = tori.iter().all(|t| !constraints_compatible(&t.constrained, &t.base, &t.constrained, &t.rho_base()));
    let mut pairs_checked = 0;
    let mut disjoint = true;
    for (i, t) in tori.iter().enumerate() {
        for u in &tori[i + 1..] {
            pairs_checked += 1;
            if tori_meet(t, u) {
                disjoint = false;
            }
        }
    }
    Ok(ToriFamily { deltas, tori, embedded, pairs_checked, disjoint })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusStabilizer {
    pub torus: TorusId,
    pub stabilizer: Vec<GElem>,
    /// Shift of the free coordinates under the involution, when it maps the
    /// torus to itself in `T⁴`.
    pub translation: Option<[Angle; 2]>,
    pub free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCertificate {
    pub group: usize,
    pub invariant_union: bool,
    pub orbit: Vec<TorusId>,
    pub orbit_size: usize,
    pub stabilizers: Vec<TorusStabilizer>,
}

impl OrbitCertificate {
    /// Orbit of size 4, each stabilizer of order 2 acting freely.
    pub fn holds(&self) -> bool {
        self.invariant_union
            && self.orbit_size == 4
            && self.stabilizers.iter().all(|s| s.stabilizer.len() == 2 && s.free)
    }
}

pub fn orbit_certificates(fam: &ToriFamily) -> Result<Vec<OrbitCertificate>> {
    let perms: Vec<(GElem, BTreeMap<TorusId, TorusId>)> =
        GElem::all().into_iter().map(|a| fam.permutation(a).map(|p| (a, p))).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for j in 1..=3 {
        let members: Vec<&Torus> = fam.tori.iter().filter(|t| t.id.group == j).collect();
        let invariant_union = perms.iter().all(|(_, p)| members.iter().all(|t| p[&t.id].group == j));
        let orbit: BTreeSet<TorusId> = perms.iter().map(|(_, p)| p[&TorusId::new(j, 0)]).collect();
        let mut stabilizers = Vec::new();
        for t in &members {
            let stabilizer: Vec<GElem> = perms.iter().filter(|(_, p)| p[&t.id] == t.id).map(|(a, _)| *a).collect();
            let mut translation = None;
            let mut free = true;
            for a in stabilizer.iter().filter(|a| !a.is_zero()) {
                if t.image(*a) == t.base {
                    let shift = t.free().map(|c| Angle::new(int(a.shift_of(c) as i64)));
                    free &= shift.iter().any(|s| s.value() != int(0));
                    translation = Some(shift);
                } else {
                    // a maps T onto ρT; the induced map x ↦ ρ(a·x) has fixed points
                    free = false;
                }
            }
            stabilizers.push(TorusStabilizer { torus: t.id, stabilizer, translation, free });
        }
        out.push(OrbitCertificate {
            group: j,
            invariant_union,
            orbit_size: orbit.len(),
            orbit: orbit.into_iter().collect(),
            stabilizers,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementFixedPoints {
    pub element: GElem,
    pub count: usize,
    pub pattern_ok: bool,
    pub points: Vec<QuotientPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudofreeCertificate {
    pub per_element: Vec<ElementFixedPoints>,
    pub identity_fixes_everything: bool,
    pub total_with_multiplicity: usize,
    pub distinct: usize,
    /// Nonzero `a ≠ b` share no fixed point.
    pub pairwise_disjoint: bool,
    pub pseudofree: bool,
}

pub fn pseudofree_certificate() -> PseudofreeCertificate {
    let mut per_element = Vec::new();
    let mut pseudofree = true;
    for a in GElem::nonzero() {
        match fixed_points_of(a) {
            FixedLocus::Points(points) => {
                let pattern_ok = points.iter().all(|x| matches_fixed_pattern(a, x) && !x.is_singular());
                per_element.push(ElementFixedPoints { element: a, count: points.len(), pattern_ok, points });
            }
            FixedLocus::WholeSpace => pseudofree = false,
        }
    }
    let total_with_multiplicity = per_element.iter().map(|e| e.count).sum();
    let distinct = per_element.iter().flat_map(|e| e.points.iter()).collect::<BTreeSet<_>>().len();
    PseudofreeCertificate {
        identity_fixes_everything: fixed_points_of(GElem([0, 0, 0])) == FixedLocus::WholeSpace,
        pairwise_disjoint: distinct == total_with_multiplicity,
        total_with_multiplicity,
        distinct,
        per_element,
        pseudofree,
    }
}

/// Coefficient matrix of `Ω = Σ (dθ₀∧dθᵢ + dθⱼ∧dθₖ)` over the cyclic triples.
pub fn omega() -> IntMatrix {
    let mut w = IntMatrix::zeros(4, 4);
    for (i, j) in [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)] {
        w.set(i, j, 1);
        w.set(j, i, -1);
    }
    w
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaCheck {
    pub det: i128,
    pub rho_invariant: bool,
    pub g_invariant: bool,
    /// `Ω` restricted to the free plane of each torus is nonzero.
    pub tori_symplectic: bool,
}

pub fn omega_check(fam: &ToriFamily) -> Result<OmegaCheck> {
    let w = omega();
    let pullback = |l: &IntMatrix| -> Result<IntMatrix> { l.transpose().mul(&w)?.mul(l) };
    let minus = IntMatrix::diagonal(&[-1, -1, -1, -1]);
    let rho_invariant = pullback(&minus)? == w;
    // every a acts by a translation, so its linear part is the identity
    let g_invariant = pullback(&IntMatrix::identity(4))? == w;
    let tori_symplectic = fam.tori.iter().all(|t| {
        let [u, v] = t.free();
        w.get(u, v) != 0
    });
    Ok(OmegaCheck { det: w.det()?, rho_invariant, g_invariant, tori_symplectic })
}

/// `H₂(T⁴) = Λ²Z⁴` with basis `e_{ij}` (`i < j`, lexicographic) and the
/// wedge pairing.
pub fn h2_torus_lattice() -> Result<IntegralLattice> {
    let basis: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    let mut g = IntMatrix::zeros(6, 6);
    for (r, &(i, j)) in basis.iter().enumerate() {
        for (c, &(k, l)) in basis.iter().enumerate() {
            let idx = [i, j, k, l];
            if idx.iter().collect::<BTreeSet<_>>().len() == 4 {
                let inversions = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).filter(|&(a, b)| idx[a] > idx[b]).count();
                g.set(r, c, if inversions % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    let labels = basis.iter().map(|(i, j)| format!("e{i}{j}")).collect();
    IntegralLattice::new("H2(T4)", g)?.with_labels(labels)
}

/// Class of a torus in `Λ²Z⁴`: the wedge of its free directions.
pub fn torus_class(t: &Torus) -> Vec<i64> {
    let [u, v] = t.free();
    let basis: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    basis.iter().map(|&p| (p == (u, v)) as i64).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyCertificate {
    /// Intersection matrix of `[T_{1,0}], [T_{2,0}], [T_{3,0}]`.
    pub gram: Vec<Vec<i64>>,
    pub isotropic: bool,
    pub rank: usize,
    /// Classes within a group coincide.
    pub groups_homologous: bool,
    /// Largest isotropic rank in the K3 lattice.
    pub rx_bound: usize,
}

/// Images in `X₀` carry the form scaled by 2, so isotropy and rank transfer.
pub fn isotropy_certificate(fam: &ToriFamily) -> Result<IsotropyCertificate> {
    let lat = h2_torus_lattice()?;
    let reps: Vec<Vec<i64>> = (1..=3)
        .map(|j| fam.torus(TorusId::new(j, 0)).map(torus_class).ok_or_else(|| invalid("missing representative torus")))
        .collect::<Result<_>>()?;
    let gram = lat.restricted_gram(&reps)?;
    let groups_homologous = fam.tori.iter().all(|t| torus_class(t) == reps[t.id.group - 1]);
    let k3 = IntegralLattice::k3().inertia();
    Ok(IsotropyCertificate {
        gram: gram.to_rows(),
        isotropic: isotropy_check(&reps, &lat)?,
        rank: IntMatrix::from_rows(&reps)?.rank(),
        groups_homologous,
        rx_bound: k3.positive.min(k3.negative),
    })
}

/// Exponent-vector class of each torus: `T_{j,k} ↦ e_j`.
pub fn torus_exponent_classes(fam: &ToriFamily) -> BTreeMap<TorusId, Vec<i64>> {
    fam.tori
        .iter()
        .map(|t| {
            let mut e = vec![0; 3];
            e[t.id.group - 1] = 1;
            (t.id, e)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedAction {
    pub element: GElem,
    pub matrix: Vec<Vec<i64>>,
    pub identity: bool,
}

pub fn induced_actions(fam: &ToriFamily) -> Result<Vec<InducedAction>> {
    let classes = torus_exponent_classes(fam);
    GElem::all()
        .into_iter()
        .map(|a| {
            let m = induced_action_on_l(&classes, &fam.permutation(a)?)?;
            Ok(InducedAction { element: a, identity: m == IntMatrix::identity(3), matrix: m.to_rows() })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KummerReport {
    pub deltas: Deltas,
    pub rho_fixed: usize,
    pub per_element_fixed: Vec<ElementFixedPoints>,
    pub pseudofree: bool,
    pub tori: usize,
    pub embedded: bool,
    pub disjoint: bool,
    pub pairs_checked: usize,
    pub tori_avoid_fixed_points: bool,
    pub orbits: Vec<OrbitCertificate>,
    pub omega: OmegaCheck,
    pub isotropy: IsotropyCertificate,
    pub induced_action: Vec<InducedAction>,
    pub induced_action_identity: bool,
}

impl KummerReport {
    pub fn all_hold(&self) -> bool {
        self.rho_fixed == 16
            && self.per_element_fixed.len() == 7
            && self.per_element_fixed.iter().all(|e| e.count == 8 && e.pattern_ok)
            && self.pseudofree
            && self.tori == 12
            && self.embedded
            && self.disjoint
            && self.tori_avoid_fixed_points
            && self.orbits.iter().all(OrbitCertificate::holds)
            && self.omega.rho_invariant
            && self.omega.g_invariant
            && self.omega.tori_symplectic
            && self.omega.det != 0
            && self.isotropy.isotropic
            && self.isotropy.groups_homologous
            && self.isotropy.rank <= self.isotropy.rx_bound
            && self.induced_action_identity
    }
}

pub fn kummer_verify(deltas: Deltas) -> Result<KummerReport> {
    let fam = build_tori(deltas)?;
    let singular = rho_fixed_points();
    let pf = pseudofree_certificate();
    let avoid = singular.iter().chain(pf.per_element.iter().flat_map(|e| e.points.iter()));
    let tori_avoid_fixed_points = avoid.into_iter().all(|x| fam.tori.iter().all(|t| !t.meets(x)));
    let induced_action = induced_actions(&fam)?;
    Ok(KummerReport {
        deltas,
        rho_fixed: singular.len(),
        pseudofree: pf.pseudofree,
        per_element_fixed: pf.per_element,
        tori: fam.tori.len(),
        embedded: fam.embedded,
        disjoint: fam.disjoint,
        pairs_checked: fam.pairs_checked,
        tori_avoid_fixed_points,
        orbits: orbit_certificates(&fam)?,
        omega: omega_check(&fam)?,
        isotropy: isotropy_certificate(&fam)?,
        induced_action_identity: induced_action.iter().all(|a| a.identity),
        induced_action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sixteen_singular_points() {
        let pts = rho_fixed_points();
        assert_eq!(pts.len(), 16);
        assert!(pts.contains(&QuotientPoint([Angle::pi_units(0, 1); 4])));
        assert!(pts.iter().all(|p| rho(p.representative()) == *p.representative()));
    }

    #[test]
    fn element_fixed_points() {
        let a = GElem([1, 0, 0]);
        let pts = fixed_points_of(a);
        let pts = pts.points().unwrap();
        assert_eq!(pts.len(), 8);
        assert!(pts.iter().all(|x| matches_fixed_pattern(a, x)));
        let b = fixed_points_of(GElem([0, 1, 0]));
        let shared = pts.iter().filter(|x| b.points().unwrap().contains(x)).count();
        assert_eq!(shared, 0);
        assert_eq!(fixed_points_of(GElem([0, 0, 0])), FixedLocus::WholeSpace);
    }

    #[test]
    fn fixed_points_brute_force() {
        // the quarter grid scan agrees with a finer grid
        for a in GElem::nonzero() {
            let fine: BTreeSet<QuotientPoint> = grid(4)
                .into_iter()
                .filter(|x| {
                    let y = a.apply(x);
                    y == *x || y == rho(x)
                })
                .map(|x| QuotientPoint::canonical(&x))
                .collect();
            assert_eq!(fixed_points_of(a).points().unwrap(), fine.into_iter().collect::<Vec<_>>().as_slice());
        }
    }

    #[test]
    fn pseudofree() {
        let pf = pseudofree_certificate();
        assert!(pf.pseudofree);
        assert_eq!(pf.per_element.len(), 7);
        assert!(pf.per_element.iter().all(|e| e.count == 8 && e.pattern_ok));
        assert!(pf.distinct <= 56);
        assert!(pf.pairwise_disjoint);
        assert!(pf.identity_fixes_everything);
    }

    #[test]
    fn default_family() {
        let fam = build_tori(Deltas::default()).unwrap();
        assert_eq!(fam.tori.len(), 12);
        assert_eq!(fam.pairs_checked, 66);
        assert!(fam.disjoint && fam.embedded);
        let report = kummer_verify(Deltas::default()).unwrap();
        assert!(report.all_hold(), "{report:#?}");
    }

    #[test]
    fn orbit_and_stabilizer() {
        let fam = build_tori(Deltas::default()).unwrap();
        let certs = orbit_certificates(&fam).unwrap();
        let g1 = &certs[0];
        assert_eq!(g1.orbit_size, 4);
        assert_eq!(g1.stabilizers[0].stabilizer, vec![GElem([0, 0, 0]), GElem([1, 0, 0])]);
        assert_eq!(g1.stabilizers[0].translation, Some([Angle::pi_units(0, 1), Angle::pi_units(1, 1)]));
        assert!(certs.iter().all(OrbitCertificate::holds));
        assert_eq!(certs[1].stabilizers[0].stabilizer[1], GElem([0, 1, 0]));
        assert_eq!(certs[2].stabilizers[0].stabilizer[1], GElem([0, 0, 1]));
    }

    #[test]
    fn rejected_families() {
        let mut q = [frac(1, 5), frac(1, 7), frac(2, 5), frac(2, 7), frac(3, 5), frac(3, 7)];
        // δ_21 = 2/5 = −δ_31 + π
        let err = build_tori(Deltas::from_rationals(q)).unwrap_err();
        assert!(err.to_string().contains("δ_21 ≠ ±δ_31"), "{err}");
        q[4] = frac(1, 3);
        q[1] = q[3];
        let err = build_tori(Deltas::from_rationals(q)).unwrap_err();
        assert!(err.to_string().contains("δ_13 ≠ ±δ_23"), "{err}");
        q[1] = frac(1, 7);
        q[0] = frac(1, 2);
        let err = build_tori(Deltas::from_rationals(q)).unwrap_err();
        assert!(err.to_string().contains("δ_12"), "{err}");
    }

    #[test]
    fn omega_and_lattice() {
        let fam = build_tori(Deltas::default()).unwrap();
        let om = omega_check(&fam).unwrap();
        assert_eq!(om.det, 9);
        assert!(om.rho_invariant && om.g_invariant && om.tori_symplectic);
        let lat = h2_torus_lattice().unwrap();
        assert!(lat.is_even() && lat.is_unimodular().unwrap());
        assert_eq!(lat.signature(), 0);
        let iso = isotropy_certificate(&fam).unwrap();
        assert_eq!(iso.gram, vec![vec![0; 3]; 3]);
        assert!(iso.isotropic && iso.groups_homologous);
        assert_eq!((iso.rank, iso.rx_bound), (3, 3));
    }

    #[test]
    fn induced_action_is_trivial() {
        let fam = build_tori(Deltas::default()).unwrap();
        let acts = induced_actions(&fam).unwrap();
        assert_eq!(acts.len(), 8);
        assert!(acts.iter().all(|a| a.identity));
        let p = fam.permutation(GElem([1, 1, 0])).unwrap();
        assert_eq!(p[&TorusId::new(1, 0)], TorusId::new(1, 1));
        assert_eq!(p[&TorusId::new(2, 0)], TorusId::new(2, 1));
        assert_eq!(p[&TorusId::new(3, 0)], TorusId::new(3, 3));
    }

    #[test]
    fn parsing() {
        assert_eq!(Deltas::parse("1/5,1/7,2/5,2/7,1/3,3/7").unwrap(), Deltas::default());
        assert!(Deltas::parse("1/5,1/7").is_err());
        assert_eq!(GElem::parse("(1,0,1)").unwrap(), GElem([1, 0, 1]));
        assert!(GElem::parse("1,2,0").is_err());
        assert_eq!(Angle::pi_units(-1, 2), Angle::pi_units(3, 2));
        assert_eq!(Angle::pi_units(7, 3).to_string(), "1/3");
    }

    fn angle() -> impl Strategy<Value = Angle> {
        (-30i64..30, 1i64..13).prop_map(|(n, d)| Angle::pi_units(n, d))
    }

    fn generic_angle() -> impl Strategy<Value = Angle> {
        prop_oneof![Just(3i64), Just(5), Just(7), Just(9), Just(11), Just(13)]
            .prop_flat_map(|d| (1..2 * d).prop_filter("off the quarter grid", move |n| n % d != 0).prop_map(move |n| Angle::pi_units(n, d)))
    }

    proptest! {
        #[test]
        fn rho_commutes_with_g(x in proptest::array::uniform4(angle()), m in 0u8..8) {
            let a = GElem::all()[m as usize];
            prop_assert_eq!(a.apply(&rho(&x)), rho(&a.apply(&x)));
            let q = QuotientPoint::canonical(&x);
            prop_assert_eq!(QuotientPoint::canonical(q.representative()), q);
            prop_assert_eq!(QuotientPoint::canonical(&rho(&x)), q);
        }

        #[test]
        fn generic_families_certify(d in proptest::array::uniform6(generic_angle())) {
            let deltas = Deltas::from_rationals(d.map(|a| a.value()));
            prop_assume!(deltas.validate().is_ok());
            let report = kummer_verify(deltas).unwrap();
            prop_assert!(report.all_hold());
        }
    }
}
