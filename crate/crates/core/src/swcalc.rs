//! Laurent polynomials, Alexander polynomials and the knot surgery product
//! formula for Seiberg–Witten invariants.
//!
//! Exponent convention: in variable `t_j = exp(2[T_j])` the exponent vector
//! `e` stands for the class `β = Σ 2·e_j·[T_j]`. Reports carry both `e` and
//! the class coefficients `2e`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::invalid;
use crate::lattice::IntMatrix;
use crate::{Error, Result};

fn overflow() -> Error {
    invalid("Laurent coefficient exceeds 64-bit range")
}

fn grlex(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A Laurent polynomial in `vars` variables with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiLaurent {
    vars: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl MultiLaurent {
    pub fn zero(vars: usize) -> MultiLaurent {
        MultiLaurent { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: i64) -> MultiLaurent {
        let mut p = MultiLaurent::zero(vars);
        if c != 0 {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn one(vars: usize) -> MultiLaurent {
        MultiLaurent::constant(vars, 1)
    }

    pub fn monomial(exponents: Vec<i64>, c: i64) -> MultiLaurent {
        let vars = exponents.len();
        let mut p = MultiLaurent::zero(vars);
        if c != 0 {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Builds from `(exponents, coeff)` pairs, summing repeats.
    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Result<MultiLaurent> {
        let mut p = MultiLaurent::zero(vars);
        for (e, c) in terms {
            if e.len() != vars {
                return Err(invalid(format!("exponent vector of length {} in {vars} variables", e.len())));
            }
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    /// One-variable polynomial `Σ coeffs[i] t^(low + i)`.
    pub fn univariate(low: i64, coeffs: &[i64]) -> MultiLaurent {
        let mut p = MultiLaurent::zero(1);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.terms.insert(vec![low + i as i64], c);
            }
        }
        p
    }

    fn add_term(&mut self, e: Vec<i64>, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let sum = self.coeff(&e).checked_add(c).ok_or_else(overflow)?;
        if sum == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[i64]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> Vec<(&[i64], i64)> {
        let mut out: Vec<(&[i64], i64)> = self.terms.iter().map(|(e, &c)| (e.as_slice(), c)).collect();
        out.sort_by(|a, b| grlex(a.0, b.0));
        out
    }

    /// Value at `t = (1, …, 1)`.
    pub fn eval_at_one(&self) -> Result<i64> {
        self.terms.values().try_fold(0i64, |acc, &c| acc.checked_add(c).ok_or_else(overflow))
    }

    fn check_vars(&self, other: &MultiLaurent) -> Result<()> {
        if self.vars != other.vars {
            return Err(invalid(format!("variable counts differ: {} vs {}", self.vars, other.vars)));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiLaurent) -> Result<MultiLaurent> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MultiLaurent) -> Result<MultiLaurent> {
        self.check_vars(other)?;
        let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca.checked_mul(cb).ok_or_else(overflow)?;
                let slot = acc.entry(e).or_insert(0);
                *slot = slot.checked_add(c).ok_or_else(overflow)?;
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(MultiLaurent { vars: self.vars, terms: acc })
    }

    pub fn pow(&self, k: u32) -> Result<MultiLaurent> {
        let mut out = MultiLaurent::one(self.vars);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Places a one-variable polynomial in variable `j` (0-based) of `vars`.
    pub fn embed(&self, j: usize, vars: usize) -> Result<MultiLaurent> {
        if self.vars != 1 || j >= vars {
            return Err(invalid(format!("cannot embed a {}-variable polynomial at slot {j} of {vars}", self.vars)));
        }
        let terms = self.terms.iter().map(|(e, &c)| {
            let mut v = vec![0; vars];
            v[j] = e[0];
            (v, c)
        });
        MultiLaurent::from_terms(vars, terms)
    }

    /// Substitutes `t^e ↦ t^(M e)` for a square integer matrix `M`.
    pub fn transform(&self, m: &IntMatrix) -> Result<MultiLaurent> {
        if m.rows() != self.vars || m.cols() != self.vars {
            return Err(invalid(format!("{}x{} matrix on {} variables", m.rows(), m.cols(), self.vars)));
        }
        let terms = self.terms.iter().map(|(e, &c)| {
            let img = (0..self.vars).map(|r| (0..self.vars).map(|k| m.get(r, k) * e[k]).sum()).collect();
            (img, c)
        });
        MultiLaurent::from_terms(self.vars, terms)
    }

    /// `t ↦ t⁻¹` in every variable.
    pub fn invert_variables(&self) -> MultiLaurent {
        let terms = self.terms.iter().map(|(e, &c)| (e.iter().map(|x| -x).collect(), c)).collect();
        MultiLaurent { vars: self.vars, terms }
    }
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let name = |j: usize| if self.vars == 1 { "t".to_string() } else { format!("t{}", j + 1) };
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| if x == 1 { name(j) } else { format!("{}^{x}", name(j)) })
                .collect();
            let sign = match (i, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = c.unsigned_abs();
            match (mono.is_empty(), mag) {
                (true, _) => write!(f, "{sign}{mag}")?,
                (false, 1) => write!(f, "{sign}{}", mono.join("*"))?,
                (false, _) => write!(f, "{sign}{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermOut<'a> {
    exponents: &'a [i64],
    coeff: i64,
}

/// Serialized as the graded-lex list of `{exponents, coeff}` terms.
impl Serialize for MultiLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermOut> = self.terms().into_iter().map(|(exponents, coeff)| TermOut { exponents, coeff }).collect();
        terms.serialize(s)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    num_integer::gcd(a, b)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a polynomial with leading coefficient ±1.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Result<Vec<i64>> {
    let lead = *den.last().ok_or_else(|| invalid("division by the zero polynomial"))?;
    if lead.abs() != 1 || num.len() < den.len() {
        return Err(Error::Consistency("non-exact polynomial division".into()));
    }
    let mut rem = num.to_vec();
    let mut q = vec![0; num.len() - den.len() + 1];
    for k in (0..q.len()).rev() {
        let c = rem[k + den.len() - 1] * lead;
        q[k] = c;
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    if rem.iter().any(|&r| r != 0) {
        return Err(Error::Consistency("non-exact polynomial division".into()));
    }
    Ok(q)
}

/// `t^n − 1` as a coefficient list.
fn t_pow_minus_one(n: u32) -> Vec<i64> {
    let mut v = vec![0; n as usize + 1];
    v[0] = -1;
    v[n as usize] = 1;
    v
}

/// Alexander polynomial of the `(p, q)` torus knot, centred so that
/// `Δ(t) = Δ(t⁻¹)`. `(1, 1)` is the unknot.
pub fn alexander_torus_knot(p: u32, q: u32) -> Result<MultiLaurent> {
    if (p, q) == (1, 1) {
        return Ok(MultiLaurent::one(1));
    }
    if p < 2 || q < 2 {
        return Err(invalid(format!("torus knot ({p},{q}) needs p, q >= 2")));
    }
    if gcd(p, q) != 1 {
        return Err(invalid(format!("torus knot ({p},{q}) needs coprime p, q")));
    }
    let num = poly_mul(&t_pow_minus_one(p * q), &t_pow_minus_one(1));
    let den = poly_mul(&t_pow_minus_one(p), &t_pow_minus_one(q));
    let coeffs = poly_div_exact(&num, &den)?;
    let degree = (coeffs.len() - 1) as i64;
    Ok(MultiLaurent::univariate(-degree / 2, &coeffs))
}

/// A knot, known through its Alexander polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Knot {
    Unknot,
    Torus { p: u32, q: u32 },
    /// Symmetric coefficient list `c₋ₙ … cₙ` of odd length.
    Coefficients(Vec<i64>),
}

impl Knot {
    pub fn trefoil() -> Knot {
        Knot::Torus { p: 2, q: 3 }
    }

    /// Parses `unknot`, `trefoil`, `torus:p,q` or `coeffs:c,…`.
    pub fn parse(s: &str) -> Result<Knot> {
        let s = s.trim();
        let ints = |body: &str| -> Result<Vec<i64>> {
            body.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| invalid(format!("bad integer `{x}` in knot `{s}`"))))
                .collect()
        };
        let knot = match s.split_once(':') {
            None if s.eq_ignore_ascii_case("unknot") => Knot::Unknot,
            None if s.eq_ignore_ascii_case("trefoil") => Knot::trefoil(),
            Some(("torus", body)) => match ints(body)?.as_slice() {
                &[p, q] if p > 0 && q > 0 => {
                    let (p, q) = (p as u32, q as u32);
                    if (p, q) == (1, 1) {
                        Knot::Unknot
                    } else {
                        Knot::Torus { p, q }
                    }
                }
                _ => return Err(invalid(format!("torus knot `{s}` needs two positive integers"))),
            },
            Some(("coeffs", body)) => Knot::Coefficients(ints(body)?),
            _ => return Err(invalid(format!("unknown knot `{s}`; use unknot, trefoil, torus:p,q or coeffs:c,..."))),
        };
        knot.alexander()?;
        Ok(knot)
    }

    pub fn alexander(&self) -> Result<MultiLaurent> {
        match self {
            Knot::Unknot => Ok(MultiLaurent::one(1)),
            Knot::Torus { p, q } => alexander_torus_knot(*p, *q),
            Knot::Coefficients(c) => {
                if c.len() % 2 == 0 || c.is_empty() {
                    return Err(invalid("Alexander coefficient list must have odd length"));
                }
                if c.iter().ne(c.iter().rev()) {
                    return Err(invalid("Alexander coefficient list must be symmetric"));
                }
                let at_one: i64 = c.iter().sum();
                if at_one.abs() != 1 {
                    return Err(invalid(format!("Alexander polynomial has Δ(1) = {at_one}, expected ±1")));
                }
                Ok(MultiLaurent::univariate(-((c.len() / 2) as i64), c))
            }
        }
    }

    /// Whether the Alexander polynomial is a unit, so surgery leaves the
    /// invariant unchanged.
    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.alexander()?.len() == 1)
    }
}

impl fmt::Display for Knot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Knot::Unknot => f.write_str("unknot"),
            Knot::Torus { p, q } => write!(f, "torus:{p},{q}"),
            Knot::Coefficients(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "coeffs:{}", parts.join(","))
            }
        }
    }
}

impl Serialize for Knot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Surgery on torus group `group` (1-based) with `knot`, repeated
/// `multiplicity` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSurgery {
    pub group: usize,
    pub knot: Knot,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgerySpec {
    pub base: MultiLaurent,
    pub surgeries: Vec<GroupSurgery>,
}

impl SurgerySpec {
    /// Three torus groups on a base with `sw = 1`, one knot per group.
    pub fn three_groups(knots: [Knot; 3], multiplicity: u32) -> SurgerySpec {
        let surgeries = knots
            .into_iter()
            .enumerate()
            .map(|(j, knot)| GroupSurgery { group: j + 1, knot, multiplicity })
            .collect();
        SurgerySpec { base: MultiLaurent::one(3), surgeries }
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for s in &self.surgeries {
            if s.group == 0 || s.group > self.base.vars() {
                return Err(invalid(format!("torus group {} outside 1..={}", s.group, self.base.vars())));
            }
            if !seen.insert(s.group) {
                return Err(invalid(format!("torus group {} assigned twice", s.group)));
            }
            if s.multiplicity == 0 {
                return Err(invalid(format!("torus group {} has multiplicity 0", s.group)));
            }
            s.knot.alexander()?;
        }
        Ok(())
    }
}

/// `base · Π_j Δ_{K_j}(t_j)^{mult_j}`.
pub fn knot_surgery_sw(spec: &SurgerySpec) -> Result<MultiLaurent> {
    spec.validate()?;
    let vars = spec.base.vars();
    let mut sw = spec.base.clone();
    for s in &spec.surgeries {
        let factor = s.knot.alexander()?.embed(s.group - 1, vars)?.pow(s.multiplicity)?;
        sw = sw.mul(&factor)?;
    }
    Ok(sw)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicClass {
    pub exponents: Vec<i64>,
    /// Coefficients of `β` on the torus classes, i.e. `2·exponents`.
    pub class: Vec<i64>,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicClassSet {
    pub classes: Vec<BasicClass>,
    pub r_x: usize,
    /// `β` is basic exactly when `−β` is.
    pub symmetric: bool,
    pub zero_class_value: i64,
}

impl BasicClassSet {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// A homotopy K3 always has `β = 0` as a basic class.
    pub fn zero_class_violation(&self) -> Option<String> {
        (self.zero_class_value == 0).then(|| "SW(0) = 0: not the invariant of a homotopy K3 surface".to_string())
    }
}

pub fn basic_classes(sw: &MultiLaurent) -> BasicClassSet {
    let classes: Vec<BasicClass> = sw
        .terms()
        .into_iter()
        .map(|(e, c)| BasicClass { exponents: e.to_vec(), class: e.iter().map(|x| 2 * x).collect(), value: c })
        .collect();
    let r_x = if classes.is_empty() {
        0
    } else {
        let rows: Vec<Vec<i64>> = classes.iter().map(|b| b.exponents.clone()).collect();
        IntMatrix::from_rows(&rows).map(|m| m.rank()).unwrap_or(0)
    };
    let symmetric = classes.iter().all(|b| {
        let neg: Vec<i64> = b.exponents.iter().map(|x| -x).collect();
        sw.coeff(&neg) != 0
    });
    BasicClassSet { classes, r_x, symmetric, zero_class_value: sw.coeff(&vec![0; sw.vars()]) }
}

/// Checks `SW(−β) = (−1)^{(χ+σ)/4} SW(β)` on every coefficient.
pub fn sw_symmetry_check(sw: &MultiLaurent, euler: i64, signature: i64) -> Result<bool> {
    let s = euler + signature;
    if s % 4 != 0 {
        return Err(invalid(format!("χ + σ = {s} is not divisible by 4")));
    }
    let sign = if (s / 4) % 2 == 0 { 1 } else { -1 };
    let mirrored = sw.invert_variables();
    Ok(sw.terms().into_iter().all(|(e, c)| mirrored.coeff(e) == sign * c) && mirrored.len() == sw.len())
}

/// Checks `|β·T_i| + T_i² ≤ 0` for every basic class and every torus,
/// which is the adjunction bound for tori of genus 1. `gram` is the
/// intersection matrix of the torus classes.
pub fn adjunction_check(set: &BasicClassSet, gram: &IntMatrix) -> Result<bool> {
    let n = gram.rows();
    for b in &set.classes {
        if b.class.len() != n {
            return Err(invalid(format!("class of length {} against a {n}x{n} Gram matrix", b.class.len())));
        }
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| b.class[j] * gram.get(j, i)).sum();
            if pairing.abs() + gram.get(i, i) > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Torus `T_{group,index}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusId {
    pub group: usize,
    pub index: usize,
}

impl TorusId {
    pub fn new(group: usize, index: usize) -> TorusId {
        TorusId { group, index }
    }
}

impl fmt::Display for TorusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{{{},{}}}", self.group, self.index)
    }
}

impl Serialize for TorusId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Linear map on `span{[T_{1,0}], …, [T_{v,0}]}` induced by a permutation of
/// tori. `classes` gives each torus class as an exponent vector, and each
/// `T_{j,0}` must be the `j`-th unit vector.
pub fn induced_action_on_l(classes: &BTreeMap<TorusId, Vec<i64>>, perm: &BTreeMap<TorusId, TorusId>) -> Result<IntMatrix> {
    let reps: Vec<TorusId> = classes.keys().filter(|t| t.index == 0).copied().collect();
    let v = reps.len();
    for (j, r) in reps.iter().enumerate() {
        let mut unit = vec![0; v];
        unit[j] = 1;
        if classes[r] != unit {
            return Err(invalid(format!("{r} must carry the unit class e{}", j + 1)));
        }
    }
    let keys: BTreeSet<TorusId> = classes.keys().copied().collect();
    let domain: BTreeSet<TorusId> = perm.keys().copied().collect();
    let image: BTreeSet<TorusId> = perm.values().copied().collect();
    if domain != keys || image != keys {
        return Err(invalid("torus permutation is not a bijection of the torus family"));
    }
    let mut m = IntMatrix::zeros(v, v);
    for (j, r) in reps.iter().enumerate() {
        let img = &classes[&perm[r]];
        if img.len() != v {
            return Err(invalid(format!("class of {} has length {}", perm[r], img.len())));
        }
        for (i, &x) in img.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    for (t, c) in classes {
        let predicted: Vec<i64> = (0..v).map(|i| (0..v).map(|k| m.get(i, k) * c[k]).sum()).collect();
        let target = perm[t];
        if classes[&target] != predicted {
            return Err(Error::NonEquivariant(format!(
                "{t} maps to {target}, whose class {:?} differs from the induced image {predicted:?}",
                classes[&target]
            )));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Coefficients of `Δ_{p,q}` from the semigroup `⟨p, q⟩`:
    /// `c_k = [k ∈ S] − [k − 1 ∈ S]` for `0 ≤ k ≤ (p−1)(q−1)`.
    fn semigroup_alexander(p: u32, q: u32) -> Vec<i64> {
        let top = ((p - 1) * (q - 1)) as i64;
        let in_s = |k: i64| k >= 0 && (0..=k / p as i64).any(|a| (k - a * p as i64) % q as i64 == 0);
        (0..=top).map(|k| in_s(k) as i64 - in_s(k - 1) as i64).collect()
    }

    fn coeffs_of(p: &MultiLaurent) -> Vec<i64> {
        p.terms().into_iter().map(|(_, c)| c).collect()
    }

    #[test]
    fn torus_knot_examples() {
        assert_eq!(alexander_torus_knot(2, 3).unwrap(), MultiLaurent::univariate(-1, &[1, -1, 1]));
        assert_eq!(alexander_torus_knot(2, 5).unwrap(), MultiLaurent::univariate(-2, &[1, -1, 1, -1, 1]));
        assert_eq!(alexander_torus_knot(1, 1).unwrap(), MultiLaurent::one(1));
        assert!(alexander_torus_knot(2, 4).is_err());
        assert!(alexander_torus_knot(1, 3).is_err());
    }

    #[test]
    fn trefoil_fourth_power() {
        let d4 = alexander_torus_knot(2, 3).unwrap().pow(4).unwrap();
        assert_eq!(coeffs_of(&d4), vec![1, -4, 10, -16, 19, -16, 10, -4, 1]);
    }

    #[test]
    fn trefoil_everywhere() {
        let spec = SurgerySpec::three_groups([Knot::trefoil(), Knot::trefoil(), Knot::trefoil()], 4);
        let sw = knot_surgery_sw(&spec).unwrap();
        assert_eq!(sw.coeff(&[0, 0, 0]), 6859);
        let set = basic_classes(&sw);
        assert_eq!(set.count(), 729);
        assert_eq!(set.r_x, 3);
        assert!(set.symmetric);
        assert!(set.zero_class_violation().is_none());
        assert!(sw_symmetry_check(&sw, 24, -16).unwrap());
        assert_eq!(sw.eval_at_one().unwrap(), 1);
    }

    #[test]
    fn unknot_and_single_group() {
        let spec = SurgerySpec::three_groups([Knot::Unknot, Knot::Unknot, Knot::Unknot], 4);
        let sw = knot_surgery_sw(&spec).unwrap();
        assert_eq!(sw, MultiLaurent::one(3));
        let set = basic_classes(&sw);
        assert_eq!((set.count(), set.r_x), (1, 0));

        let spec = SurgerySpec::three_groups([Knot::trefoil(), Knot::Unknot, Knot::Unknot], 4);
        let set = basic_classes(&knot_surgery_sw(&spec).unwrap());
        assert_eq!((set.count(), set.r_x), (9, 1));
        assert!(set.classes.iter().all(|b| b.exponents[1] == 0 && b.exponents[2] == 0));

        let single = SurgerySpec {
            base: MultiLaurent::one(1),
            surgeries: vec![GroupSurgery { group: 1, knot: Knot::trefoil(), multiplicity: 1 }],
        };
        assert_eq!(knot_surgery_sw(&single).unwrap(), MultiLaurent::univariate(-1, &[1, -1, 1]));
    }

    #[test]
    fn symmetry_check_cases() {
        let asym = MultiLaurent::univariate(0, &[-2, 1]);
        assert!(!sw_symmetry_check(&asym, 24, -16).unwrap());
        assert!(sw_symmetry_check(&MultiLaurent::one(3), 24, -16).unwrap());
        assert!(sw_symmetry_check(&asym, 24, -15).is_err());
        // (χ+σ)/4 odd flips the sign: t − t⁻¹ is antisymmetric
        let odd = MultiLaurent::univariate(-1, &[-1, 0, 1]);
        assert!(sw_symmetry_check(&odd, 4, 0).unwrap());
        assert!(!sw_symmetry_check(&odd, 8, 0).unwrap());
    }

    #[test]
    fn spec_validation() {
        let mut spec = SurgerySpec::three_groups([Knot::trefoil(), Knot::Unknot, Knot::Unknot], 1);
        spec.surgeries[1].group = 1;
        assert!(knot_surgery_sw(&spec).is_err());
        let mut spec = SurgerySpec::three_groups([Knot::trefoil(), Knot::Unknot, Knot::Unknot], 1);
        spec.surgeries[0].multiplicity = 0;
        assert!(spec.validate().is_err());
        spec.surgeries[0].multiplicity = 1;
        spec.surgeries[0].group = 4;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn knot_parsing() {
        assert_eq!(Knot::parse("torus:2,3").unwrap(), Knot::trefoil());
        assert_eq!(Knot::parse("unknot").unwrap(), Knot::Unknot);
        assert_eq!(Knot::parse("torus:1,1").unwrap(), Knot::Unknot);
        assert_eq!(Knot::parse("coeffs:1,-3,1").unwrap(), Knot::Coefficients(vec![1, -3, 1]));
        assert!(Knot::parse("coeffs:1,-2,1").is_err());
        assert!(Knot::parse("coeffs:1,-1").is_err());
        assert!(Knot::parse("coeffs:2,-1,1").is_err());
        assert!(Knot::parse("torus:2,4").is_err());
        assert!(Knot::parse("figure8").is_err());
        assert_eq!(Knot::parse("torus:3,4").unwrap().to_string(), "torus:3,4");
    }

    fn kummer_classes() -> BTreeMap<TorusId, Vec<i64>> {
        let mut m = BTreeMap::new();
        for j in 1..=3 {
            for k in 0..4 {
                let mut e = vec![0; 3];
                e[j - 1] = 1;
                m.insert(TorusId::new(j, k), e);
            }
        }
        m
    }

    #[test]
    fn induced_action_cases() {
        let classes = kummer_classes();
        let id: BTreeMap<_, _> = classes.keys().map(|&t| (t, t)).collect();
        assert_eq!(induced_action_on_l(&classes, &id).unwrap(), IntMatrix::identity(3));

        let within: BTreeMap<_, _> = classes.keys().map(|&t| (t, TorusId::new(t.group, t.index ^ 1))).collect();
        assert_eq!(induced_action_on_l(&classes, &within).unwrap(), IntMatrix::identity(3));

        let swap_group = |g: usize| match g {
            1 => 2,
            2 => 1,
            g => g,
        };
        let swap: BTreeMap<_, _> = classes.keys().map(|&t| (t, TorusId::new(swap_group(t.group), t.index))).collect();
        let m = induced_action_on_l(&classes, &swap).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap());
        let spec = SurgerySpec::three_groups([Knot::trefoil(), Knot::trefoil(), Knot::Torus { p: 2, q: 5 }], 4);
        let sw = knot_surgery_sw(&spec).unwrap();
        assert_eq!(sw.transform(&m).unwrap(), sw);

        let mut broken = id.clone();
        broken.insert(TorusId::new(1, 0), TorusId::new(2, 0));
        broken.insert(TorusId::new(2, 0), TorusId::new(1, 0));
        assert!(matches!(induced_action_on_l(&classes, &broken), Err(Error::NonEquivariant(_))));
    }

    #[test]
    fn adjunction_on_isotropic_tori() {
        let spec = SurgerySpec::three_groups([Knot::trefoil(), Knot::trefoil(), Knot::trefoil()], 4);
        let set = basic_classes(&knot_surgery_sw(&spec).unwrap());
        assert!(adjunction_check(&set, &IntMatrix::zeros(3, 3)).unwrap());
        let h = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        assert!(!adjunction_check(&set, &h).unwrap());
    }

    #[test]
    fn display_and_json() {
        let p = MultiLaurent::univariate(-1, &[1, -1, 1]);
        assert_eq!(p.to_string(), "t^-1 - 1 + t");
        assert_eq!(MultiLaurent::univariate(0, &[-2, 1]).to_string(), "-2 + t");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"exponents":[-1],"coeff":1},{"exponents":[0],"coeff":-1},{"exponents":[1],"coeff":1}]"#);
    }

    fn coprime_pair() -> impl Strategy<Value = (u32, u32)> {
        (2u32..10, 2u32..10).prop_filter("coprime", |(p, q)| gcd(*p, *q) == 1)
    }

    fn knot() -> impl Strategy<Value = Knot> {
        let small = (2u32..6, 2u32..6).prop_filter("coprime", |(p, q)| gcd(*p, *q) == 1);
        prop_oneof![Just(Knot::Unknot), small.prop_map(|(p, q)| Knot::Torus { p, q })]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn torus_knots_match_semigroup((p, q) in coprime_pair()) {
            let d = alexander_torus_knot(p, q).unwrap();
            prop_assert_eq!(coeffs_with_gaps(&d), semigroup_alexander(p, q));
            prop_assert_eq!(d.eval_at_one().unwrap(), 1);
            prop_assert_eq!(d.invert_variables(), d);
        }

        #[test]
        fn surgery_is_order_independent(a in knot(), b in knot(), c in knot(), m in 1u32..3) {
            let fwd = SurgerySpec::three_groups([a.clone(), b.clone(), c.clone()], m);
            let mut rev = fwd.clone();
            rev.surgeries.reverse();
            let sw = knot_surgery_sw(&fwd).unwrap();
            prop_assert_eq!(&sw, &knot_surgery_sw(&rev).unwrap());
            let set = basic_classes(&sw);
            let nontrivial = [a, b, c].iter().filter(|k| !k.is_trivial().unwrap()).count();
            prop_assert_eq!(set.r_x, nontrivial);
            prop_assert!(set.symmetric);
            prop_assert!(set.zero_class_violation().is_none());
            prop_assert!(sw_symmetry_check(&sw, 24, -16).unwrap());
        }
    }

    /// Dense coefficient list from lowest to highest exponent.
    fn coeffs_with_gaps(p: &MultiLaurent) -> Vec<i64> {
        let terms = p.terms();
        let lo = terms.first().unwrap().0[0];
        let hi = terms.last().unwrap().0[0];
        (lo..=hi).map(|e| p.coeff(&[e])).collect()
    }
}
