//! Named groups: the eleven maximal finite symplectic K3 groups and the
//! auxiliary groups used in their analysis.
//!
//! Each builtin carries a small table of expected facts (order, order of the
//! commutator subgroup, abelianization). The test suite rebuilds every group
//! and compares against the table.

use std::sync::OnceLock;

use serde::Serialize;

use super::build::{keyed_group, perm_from_cycles};
use super::{
    action_from_generators, direct_product, permutation_group, semidirect_product, Action, Automorphism,
    FiniteGroup, Perm,
};
use crate::error::invalid;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BuiltinGroup {
    L27,
    A6,
    S5,
    M20,
    F384,
    A44,
    T192,
    H192,
    N72,
    M9,
    T48,
    Q8,
    T24,
    A4xA4,
    Z2Cubed,
    A5,
    A4,
    S3,
    Q8CentralQ8,
    Q8CentralQ8Z3,
    D21,
    D10,
    Trivial,
}

/// Expected structural data for a builtin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuiltinFacts {
    pub order: usize,
    pub commutator_order: usize,
    pub abelianization: Vec<u64>,
    /// Largest element order.
    pub max_element_order: u32,
    /// Whether this is one of the eleven maximal groups.
    pub maximal: bool,
}

const ALL: [BuiltinGroup; 23] = [
    BuiltinGroup::L27,
    BuiltinGroup::A6,
    BuiltinGroup::S5,
    BuiltinGroup::M20,
    BuiltinGroup::F384,
    BuiltinGroup::A44,
    BuiltinGroup::T192,
    BuiltinGroup::H192,
    BuiltinGroup::N72,
    BuiltinGroup::M9,
    BuiltinGroup::T48,
    BuiltinGroup::Q8,
    BuiltinGroup::T24,
    BuiltinGroup::A4xA4,
    BuiltinGroup::Z2Cubed,
    BuiltinGroup::A5,
    BuiltinGroup::A4,
    BuiltinGroup::S3,
    BuiltinGroup::Q8CentralQ8,
    BuiltinGroup::Q8CentralQ8Z3,
    BuiltinGroup::D21,
    BuiltinGroup::D10,
    BuiltinGroup::Trivial,
];

static CACHE: [OnceLock<FiniteGroup>; 23] = [const { OnceLock::new() }; 23];

impl BuiltinGroup {
    pub fn all() -> &'static [BuiltinGroup] {
        &ALL
    }

    /// The eleven maximal symplectic K3 groups.
    pub fn maximal() -> &'static [BuiltinGroup] {
        &ALL[..11]
    }

    pub fn name(self) -> &'static str {
        use BuiltinGroup::*;
        match self {
            L27 => "L2(7)",
            A6 => "A6",
            S5 => "S5",
            M20 => "M20",
            F384 => "F384",
            A44 => "A4,4",
            T192 => "T192",
            H192 => "H192",
            N72 => "N72",
            M9 => "M9",
            T48 => "T48",
            Q8 => "Q8",
            T24 => "T24",
            A4xA4 => "A4xA4",
            Z2Cubed => "Z2^3",
            A5 => "A5",
            A4 => "A4",
            S3 => "S3",
            Q8CentralQ8 => "Q8*Q8",
            Q8CentralQ8Z3 => "Q8*Q8:Z3",
            D21 => "D21",
            D10 => "D10",
            Trivial => "1",
        }
    }

    pub fn structure(self) -> &'static str {
        use BuiltinGroup::*;
        match self {
            L27 => "PSL(2,7) on the projective line over F7",
            A6 => "alternating group on 6 points",
            S5 => "symmetric group on 5 points",
            M20 => "2^4 A5: F4^2 with SL2(4) = A5 acting naturally",
            F384 => "4^2 S4",
            A44 => "2^4 A3,3: even pairs in S4 x S4",
            T192 => "(Q8*Q8) : S3",
            H192 => "2^4 D12",
            N72 => "3^2 D8 = S3 wr Z2",
            M9 => "3^2 Q8",
            T48 => "Q8 : S3",
            Q8 => "quaternion group",
            T24 => "Q8 : Z3",
            A4xA4 => "direct product",
            Z2Cubed => "elementary abelian of rank 3",
            A5 => "alternating group on 5 points",
            A4 => "alternating group on 4 points",
            S3 => "symmetric group on 3 points",
            Q8CentralQ8 => "central product of two copies of Q8",
            Q8CentralQ8Z3 => "(Q8*Q8) : Z3",
            D21 => "normalizer of an order-7 subgroup of L2(7), Z7 : Z3",
            D10 => "normalizer of an order-5 subgroup of A5",
            Trivial => "trivial group",
        }
    }

    /// Look up a builtin by name. Case, spaces, underscores and braces are
    /// ignored, so `L_2(7)`, `l2(7)` and `A_{4,4}` all resolve.
    pub fn from_name(name: &str) -> Result<BuiltinGroup> {
        let norm = |s: &str| {
            s.chars().filter(|c| !matches!(c, ' ' | '_' | '{' | '}')).collect::<String>().to_lowercase().replace('×', "x")
        };
        let want = norm(name);
        let aliases: &[(&str, BuiltinGroup)] = &[
            ("psl(2,7)", BuiltinGroup::L27),
            ("l27", BuiltinGroup::L27),
            ("a44", BuiltinGroup::A44),
            ("(z2)^3", BuiltinGroup::Z2Cubed),
            ("z2^3", BuiltinGroup::Z2Cubed),
            ("trivial", BuiltinGroup::Trivial),
            ("gl(2,3)", BuiltinGroup::T48),
        ];
        ALL.iter()
            .copied()
            .find(|g| norm(g.name()) == want)
            .or_else(|| aliases.iter().find(|(a, _)| *a == want).map(|&(_, g)| g))
            .ok_or_else(|| invalid(format!("unknown group `{name}`")))
    }

    pub fn facts(self) -> BuiltinFacts {
        use BuiltinGroup::*;
        let (order, commutator_order, ab, max_element_order): (usize, usize, &[u64], u32) = match self {
            L27 => (168, 168, &[], 7),
            A6 => (360, 360, &[], 5),
            S5 => (120, 60, &[2], 6),
            M20 => (960, 960, &[], 5),
            F384 => (384, 192, &[2], 8),
            A44 => (288, 144, &[2], 6),
            T192 => (192, 96, &[2], 6),
            H192 => (192, 48, &[2, 2], 6),
            N72 => (72, 18, &[2, 2], 6),
            M9 => (72, 18, &[2, 2], 4),
            T48 => (48, 24, &[2], 8),
            Q8 => (8, 2, &[2, 2], 4),
            T24 => (24, 8, &[3], 6),
            A4xA4 => (144, 16, &[3, 3], 6),
            Z2Cubed => (8, 1, &[2, 2, 2], 2),
            A5 => (60, 60, &[], 5),
            A4 => (12, 4, &[3], 3),
            S3 => (6, 3, &[2], 3),
            Q8CentralQ8 => (32, 2, &[2, 2, 2, 2], 4),
            Q8CentralQ8Z3 => (96, 32, &[3], 6),
            D21 => (21, 7, &[3], 7),
            D10 => (10, 5, &[2], 5),
            Trivial => (1, 1, &[], 1),
        };
        BuiltinFacts {
            order,
            commutator_order,
            abelianization: ab.to_vec(),
            max_element_order,
            maximal: (self as usize) < 11,
        }
    }

    /// The group, built once per process and shared afterwards.
    pub fn group(self) -> FiniteGroup {
        CACHE[self as usize].get_or_init(|| self.build().expect("builtin construction")).clone()
    }

    fn build(self) -> Result<FiniteGroup> {
        use BuiltinGroup::*;
        let g = match self {
            L27 => permutation_group(
                "L2(7)",
                8,
                &[
                    vec![1, 2, 3, 4, 5, 6, 0, 7],
                    vec![0, 2, 4, 6, 1, 3, 5, 7],
                    vec![7, 6, 3, 2, 5, 4, 1, 0],
                ],
            )?,
            A6 => permutation_group("A6", 6, &[cycles(6, &[&[0, 1, 2]]), cycles(6, &[&[1, 2, 3, 4, 5]])])?,
            S5 => permutation_group("S5", 5, &[cycles(5, &[&[0, 1, 2, 3, 4]]), cycles(5, &[&[0, 1]])])?,
            A5 => alternating(5)?,
            A4 => alternating(4)?,
            S3 => permutation_group("S3", 3, &[cycles(3, &[&[0, 1, 2]]), cycles(3, &[&[0, 1]])])?,
            M20 => m20()?,
            F384 => f384()?,
            A44 => permutation_group(
                "A4,4",
                8,
                &[
                    cycles(8, &[&[0, 1, 2]]),
                    cycles(8, &[&[1, 2, 3]]),
                    cycles(8, &[&[4, 5, 6]]),
                    cycles(8, &[&[5, 6, 7]]),
                    cycles(8, &[&[0, 1], &[4, 5]]),
                ],
            )?,
            T192 => {
                let (qq, r, s) = q8_central_q8()?;
                let s3 = S3.group();
                let act = action_from_generators(&s3, &qq, &[r, s])?;
                semidirect_product(&qq, &s3, &act, "T192")?
            }
            Q8CentralQ8 => q8_central_q8()?.0,
            Q8CentralQ8Z3 => {
                let (qq, r, _) = q8_central_q8()?;
                let z3 = cyclic(3)?;
                let act = action_from_generators(&z3, &qq, &[r])?;
                semidirect_product(&qq, &z3, &act, "Q8*Q8:Z3")?
            }
            H192 => h192()?,
            N72 => permutation_group(
                "N72",
                6,
                &[cycles(6, &[&[0, 1, 2]]), cycles(6, &[&[0, 1]]), cycles(6, &[&[0, 3], &[1, 4], &[2, 5]])],
            )?,
            M9 => m9()?,
            Q8 => q8()?,
            T24 => {
                let q = Q8.group();
                let z3 = cyclic(3)?;
                let act = action_from_generators(&z3, &q, &[q8_alpha(&q)?])?;
                semidirect_product(&q, &z3, &act, "T24")?
            }
            T48 => {
                let q = Q8.group();
                let s3 = S3.group();
                let act = action_from_generators(&s3, &q, &[q8_alpha(&q)?, q8_beta(&q)?])?;
                semidirect_product(&q, &s3, &act, "T48")?
            }
            A4xA4 => direct_product(&A4.group(), &A4.group(), "A4xA4")?,
            Z2Cubed => keyed_group(
                "Z2^3",
                vec![0, 0, 0],
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                |a, b| a.iter().zip(b).map(|(x, y)| x ^ y).collect(),
                |k| format!("({},{},{})", k[0], k[1], k[2]),
            )?,
            D21 => {
                let l = L27.group();
                let t = l.find(&[1, 2, 3, 4, 5, 6, 0, 7]).expect("translation is in L2(7)");
                l.normalizer(&l.cyclic_subgroup(t)?)?.group
            }
            D10 => {
                let a = A5.group();
                let c = a.find(&cycles(5, &[&[0, 1, 2, 3, 4]])).expect("5-cycle is in A5");
                a.normalizer(&a.cyclic_subgroup(c)?)?.group
            }
            Trivial => permutation_group("1", 1, &[])?,
        };
        Ok(g.renamed(self.name()))
    }
}

fn cycles(degree: usize, cs: &[&[u32]]) -> Perm {
    perm_from_cycles(degree, cs).expect("valid cycle literal")
}

/// `A_n` generated by the 3-cycles `(0 1 i)`.
pub(crate) fn alternating(n: u32) -> Result<FiniteGroup> {
    let gens: Vec<Perm> = (2..n).map(|i| cycles(n as usize, &[&[0, 1, i]])).collect();
    permutation_group(format!("A{n}"), n as usize, &gens)
}

/// `Z_n` on keys `[k]`.
pub(crate) fn cyclic(n: u32) -> Result<FiniteGroup> {
    keyed_group(&format!("Z{n}"), vec![0], vec![vec![1 % n]], move |a, b| vec![(a[0] + b[0]) % n], |k| {
        format!("g^{}", k[0])
    })
}

/// Q8 on keys `[sign, unit]` with units `1, i, j, k` numbered `0..4`.
fn q8() -> Result<FiniteGroup> {
    fn unit_mul(a: u32, b: u32) -> (u32, u32) {
        match (a, b) {
            (0, u) | (u, 0) => (0, u),
            (x, y) if x == y => (1, 0),
            (1, 2) | (2, 3) | (3, 1) => (0, 6 - a - b),
            _ => (1, 6 - a - b),
        }
    }
    keyed_group(
        "Q8",
        vec![0, 0],
        vec![vec![0, 1], vec![0, 2]],
        |a, b| {
            let (s, u) = unit_mul(a[1], b[1]);
            vec![(a[0] + b[0] + s) % 2, u]
        },
        |k| format!("{}{}", if k[0] == 1 { "-" } else { "" }, ["1", "i", "j", "k"][k[1] as usize]),
    )
}

fn q8_elem(q: &FiniteGroup, label: &str) -> super::Elem {
    q.find_label(label).expect("quaternion unit label")
}

/// `i → j → k → i`.
fn q8_alpha(q: &FiniteGroup) -> Result<Automorphism> {
    Automorphism::from_generator_images(q, &[q8_elem(q, "j"), q8_elem(q, "k")])
}

/// `i → -j`, `j → -i`, `k → -k`; inverts `α` under conjugation.
fn q8_beta(q: &FiniteGroup) -> Result<Automorphism> {
    Automorphism::from_generator_images(q, &[q8_elem(q, "-j"), q8_elem(q, "-i")])
}

/// `Q8*Q8` with the automorphisms `x*y → α⁻¹(x)*α(y)` and `x*y → y*x`.
fn q8_central_q8() -> Result<(FiniteGroup, Automorphism, Automorphism)> {
    let q = BuiltinGroup::Q8.group();
    let prod = direct_product(&q, &q, "Q8xQ8")?;
    let minus = q8_elem(&q, "-1");
    let z = prod.find(&[minus.index() as u32, minus.index() as u32]).expect("(-1,-1)");
    let qq = prod.quotient(&prod.cyclic_subgroup(z)?)?.renamed("Q8*Q8");
    let pair = |x: &str, y: &str| -> Result<super::Elem> {
        let e = prod.find(&[q8_elem(&q, x).index() as u32, q8_elem(&q, y).index() as u32]).expect("pair");
        qq.project(e)
    };
    // generators of qq are the images of (i,1), (j,1), (1,i), (1,j)
    let r = Automorphism::from_generator_images(&qq, &[pair("k", "1")?, pair("i", "1")?, pair("1", "j")?, pair("1", "k")?])?;
    let s = Automorphism::from_generator_images(&qq, &[pair("1", "i")?, pair("1", "j")?, pair("i", "1")?, pair("j", "1")?])?;
    Ok((qq, r, s))
}

/// `V ⋊ A5` with `V ⊂ (Z2)^5` the even-weight vectors and A5 permuting
/// coordinates.
/// `F₄ = {0, 1, ω, ω²}` as `0..4`; addition is xor.
fn f4_mul(a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        return 0;
    }
    // 1, ω, ω² are the powers 0, 1, 2 of ω
    [1, 2, 3][((a - 1 + b - 1) % 3) as usize]
}

const F4_LABELS: [&str; 4] = ["0", "1", "w", "w2"];

/// `2⁴:A₅` as `F₄² ⋊ SL₂(4)` with the natural action.
fn m20() -> Result<FiniteGroup> {
    let v = keyed_group(
        "F4^2",
        vec![0, 0],
        vec![vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 2]],
        |a, b| vec![a[0] ^ b[0], a[1] ^ b[1]],
        |k| format!("{} {}", F4_LABELS[k[0] as usize], F4_LABELS[k[1] as usize]),
    )?;
    let sl = keyed_group(
        "SL2(4)",
        vec![1, 0, 0, 1],
        vec![vec![1, 1, 0, 1], vec![1, 2, 0, 1], vec![0, 1, 1, 0]],
        |a, b| {
            let e = |i: usize, j: usize| f4_mul(a[2 * i], b[j]) ^ f4_mul(a[2 * i + 1], b[2 + j]);
            vec![e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
        },
        |k| format!("[{} {}; {} {}]", F4_LABELS[k[0] as usize], F4_LABELS[k[1] as usize], F4_LABELS[k[2] as usize], F4_LABELS[k[3] as usize]),
    )?;
    let act = Action::from_fn(&sl, &v, |s, x| {
        let m = sl.key(s);
        let w = v.key(x);
        let img = [f4_mul(m[0], w[0]) ^ f4_mul(m[1], w[1]), f4_mul(m[2], w[0]) ^ f4_mul(m[3], w[1])];
        v.find(&img).expect("F4^2 is closed")
    })?;
    semidirect_product(&v, &sl, &act, "M20")
}

/// `2⁴:A₅` on the even-weight vectors of `(Z₂)⁵` with `A₅` permuting
/// coordinates. Not isomorphic to `M20`: it has elements of order 6 and
/// `μ = 4` under the symplectic fix table.
pub fn even_weight_extension() -> Result<FiniteGroup> {
    let v = keyed_group(
        "V",
        vec![0],
        (1..5).map(|i| vec![1 | (1 << i)]).collect(),
        |a, b| vec![a[0] ^ b[0]],
        |k| format!("{:05b}", k[0]).chars().rev().collect(),
    )?;
    let a5 = BuiltinGroup::A5.group();
    let act = Action::from_fn(&a5, &v, |s, x| {
        let p = a5.key(s);
        let m = v.key(x)[0];
        let img = (0..5).filter(|&i| m >> p[i] & 1 == 1).fold(0, |acc, i| acc | 1 << i);
        v.find(&[img]).expect("even weight is preserved")
    })?;
    semidirect_product(&v, &a5, &act, "2^4:A5 (even-weight)")
}

/// Pairs `(a, σ)` with `a ∈ Z4⁴` modulo the diagonal and `σ ∈ S4`,
/// multiplied as `(a, σ)(b, τ) = (a + σ·b, στ)`.
fn f384() -> Result<FiniteGroup> {
    fn normalize(a: [u32; 4]) -> [u32; 4] {
        let c = a[0];
        a.map(|x| (x + 4 - c) % 4)
    }
    fn key(a: [u32; 4], s: [u32; 4]) -> Vec<u32> {
        let a = normalize(a);
        vec![a[1], a[2], a[3], s[0], s[1], s[2], s[3]]
    }
    let id = [0, 1, 2, 3];
    let gens = vec![
        key([1, 3, 0, 0], id),
        key([0, 1, 3, 0], id),
        key([0, 0, 1, 3], id),
        key([1, 1, 0, 0], [1, 2, 3, 0]),
        key([1, 1, 0, 0], [1, 0, 2, 3]),
    ];
    keyed_group(
        "F384",
        key([0; 4], id),
        gens,
        |x, y| {
            let a = [0, x[0], x[1], x[2]];
            let s = [x[3], x[4], x[5], x[6]];
            let b = [0, y[0], y[1], y[2]];
            let t = [y[3], y[4], y[5], y[6]];
            // (σ·b)_i = b_{σ(i)} is a left action for left-to-right products
            let sum: [u32; 4] = std::array::from_fn(|i| (a[i] + b[s[i] as usize]) % 4);
            let st: [u32; 4] = std::array::from_fn(|i| t[s[i] as usize]);
            key(sum, st)
        },
        |k| format!("({},{},{},{};{}{}{}{})", 0, k[0], k[1], k[2], k[3], k[4], k[5], k[6]),
    )
}

/// Linear automorphism `v → M v` of `(Z_p)^n` on keys `[x_0, …, x_{n-1}]`,
/// given by the images of the standard generators.
fn linear(group: &FiniteGroup, columns: &[Vec<u32>]) -> Result<Automorphism> {
    let images = columns.iter().map(|c| group.find(c).expect("vector in group")).collect::<Vec<_>>();
    Automorphism::from_generator_images(group, &images)
}

fn elementary(name: &str, p: u32, n: usize) -> Result<FiniteGroup> {
    let gens = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    keyed_group(name, vec![0; n], gens, move |a, b| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect(), |k| {
        format!("({})", k.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
    })
}

/// `(Z2)⁴ ⋊ (S3 × Z2)`: S3 ≅ GL2(F2) acts diagonally on `F2² ⊕ F2²` and
/// the Z2 swaps the two summands.
fn h192() -> Result<FiniteGroup> {
    let v = elementary("2^4", 2, 4)?;
    let acting = permutation_group(
        "S3xZ2",
        5,
        &[cycles(5, &[&[0, 1, 2]]), cycles(5, &[&[0, 1]]), cycles(5, &[&[3, 4]])],
    )?;
    let e = |bits: [u32; 4]| bits.to_vec();
    // r = [[0,1],[1,1]] and t = [[0,1],[1,0]] on each summand
    let r = linear(&v, &[e([0, 1, 0, 0]), e([1, 1, 0, 0]), e([0, 0, 0, 1]), e([0, 0, 1, 1])])?;
    let t = linear(&v, &[e([0, 1, 0, 0]), e([1, 0, 0, 0]), e([0, 0, 0, 1]), e([0, 0, 1, 0])])?;
    let swap = linear(&v, &[e([0, 0, 1, 0]), e([0, 0, 0, 1]), e([1, 0, 0, 0]), e([0, 1, 0, 0])])?;
    let act = action_from_generators(&acting, &v, &[r, t, swap])?;
    semidirect_product(&v, &acting, &act, "H192")
}

/// `(Z3)² ⋊ Q8` with `i → [[0,-1],[1,0]]` and `j → [[1,1],[1,-1]]`.
fn m9() -> Result<FiniteGroup> {
    let v = elementary("3^2", 3, 2)?;
    let q = BuiltinGroup::Q8.group();
    let i = linear(&v, &[vec![0, 1], vec![2, 0]])?;
    let j = linear(&v, &[vec![1, 1], vec![1, 2]])?;
    let act = action_from_generators(&q, &v, &[i, j])?;
    semidirect_product(&v, &q, &act, "M9")
}
