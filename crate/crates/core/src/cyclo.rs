//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! An element is a dense rational coefficient vector of length `φ(n)` in the
//! power basis `1, ζ, …, ζ^(φ(n)-1)`, reduced modulo the cyclotomic
//! polynomial `Φ_n`. Trigonometric values at rational multiples of `π` live
//! in `Q(ζ_n)` with `n = lcm(2p, 4)`, so that both `e^(iπ/p)` and `i` are
//! available:
//!
//! ```text
//! cot θ = i (z + z⁻¹) / (z − z⁻¹),   csc θ = 2i / (z − z⁻¹),   z = e^(iθ)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::{self, narrow};
use crate::{Error, Rational, Result};

/// Largest supported conductor. Orders up to 16 fit.
pub const MAX_CONDUCTOR: u32 = 64;

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = &r[r.len() - 1] / lead;
        for (k, bk) in b.iter().enumerate() {
            let t = &c * bk;
            r[shift + k] -= t;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn cyclotomic_polys() -> &'static [Poly] {
    static PHI: OnceLock<Vec<Poly>> = OnceLock::new();
    PHI.get_or_init(|| {
        let mut phi: Vec<Poly> = vec![Vec::new()];
        for n in 1..=MAX_CONDUCTOR as usize {
            // x^n - 1 divided by Φ_d for every proper divisor d
            let mut p = vec![BigRational::zero(); n + 1];
            p[0] = -BigRational::one();
            p[n] = BigRational::one();
            for (d, phi_d) in phi.iter().enumerate().take(n).skip(1) {
                if n % d == 0 {
                    let (q, r) = poly_divrem(&p, phi_d);
                    debug_assert!(r.is_empty());
                    p = q;
                }
            }
            phi.push(p);
        }
        phi
    })
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Result<Vec<i64>> {
    check_conductor(n)?;
    cyclotomic_polys()[n as usize].iter().map(|c| narrow(c).map(|q| *q.numer())).collect()
}

fn check_conductor(n: u32) -> Result<()> {
    if n == 0 || n > MAX_CONDUCTOR {
        Err(Error::InvalidInput(format!("conductor {n} outside 1..={MAX_CONDUCTOR}")))
    } else {
        Ok(())
    }
}

/// Conductor used for angles `aπ/p`.
pub fn conductor_for(p: u32) -> u32 {
    (2 * p).lcm(&4)
}

/// An exact element of `Q(ζ_n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(n: u32) -> Result<Self> {
        check_conductor(n)?;
        Ok(Self::raw_zero(n))
    }

    fn raw_zero(n: u32) -> Self {
        let deg = cyclotomic_polys()[n as usize].len() - 1;
        CyclotomicNumber { conductor: n, coeffs: vec![BigRational::zero(); deg] }
    }

    pub fn from_rational(n: u32, q: Rational) -> Result<Self> {
        let mut z = Self::zero(n)?;
        z.coeffs[0] = rational::widen(&q);
        Ok(z)
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Result<Self> {
        check_conductor(n)?;
        let k = k.rem_euclid(n as i64) as usize;
        let mut p = vec![BigRational::zero(); k + 1];
        p[k] = BigRational::one();
        Ok(Self::reduce(n, p))
    }

    fn reduce(n: u32, p: Poly) -> Self {
        let phi = &cyclotomic_polys()[n as usize];
        let (_, mut r) = poly_divrem(&p, phi);
        r.resize(phi.len() - 1, BigRational::zero());
        CyclotomicNumber { conductor: n, coeffs: r }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree `φ(n)` of the field.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// The value as a machine rational; errors if it is irrational or too
    /// large.
    pub fn to_rational(&self) -> Result<Rational> {
        match self.as_rational() {
            Some(q) => narrow(&q),
            None => Err(Error::Consistency(format!("{self} is not rational"))),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Φ_n`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Pole("inverse of zero".into()));
        }
        let phi = cyclotomic_polys()[self.conductor as usize].clone();
        let mut a = self.coeffs.clone();
        trim(&mut a);
        // invariant: s·self ≡ r (mod Φ)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ_n is irreducible, so a nonzero element leaves a constant remainder
        let c = r1[0].clone();
        let s: Poly = s1.iter().map(|x| x / &c).collect();
        Ok(Self::reduce(self.conductor, s))
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.conductor, other.conductor, "cyclotomic conductors differ");
    }

    pub fn scale(&self, q: Rational) -> Self {
        let q = rational::widen(&q);
        CyclotomicNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * &q).collect() }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{} (z = zeta_{})", terms.join(" + "), self.conductor)
        }
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber::reduce(self.conductor, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

fn check_order(p: u32) -> Result<()> {
    if p < 2 || conductor_for(p) > MAX_CONDUCTOR {
        Err(Error::InvalidInput(format!("order {p} outside 2..=16")))
    } else {
        Ok(())
    }
}

/// `(z, z⁻¹, i)` for `z = e^(iπa/p)` in `Q(ζ_n)`, `n = lcm(2p, 4)`.
fn angle(a: i64, p: u32) -> Result<(CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
    check_order(p)?;
    let n = conductor_for(p);
    let step = (n / (2 * p)) as i64;
    let z = CyclotomicNumber::zeta_pow(n, a * step)?;
    let zi = CyclotomicNumber::zeta_pow(n, -a * step)?;
    let i = CyclotomicNumber::zeta_pow(n, (n / 4) as i64)?;
    Ok((z, zi, i))
}

fn check_pole(a: i64, p: u32) -> Result<()> {
    if a.rem_euclid(p as i64) == 0 {
        Err(Error::Pole(format!("angle {a}π/{p} is a multiple of π")))
    } else {
        Ok(())
    }
}

/// `cot(aπ/p)`.
pub fn cot(a: i64, p: u32) -> Result<CyclotomicNumber> {
    check_order(p)?;
    check_pole(a, p)?;
    // cot has period π, so a mod p indexes a per-order table
    static TABLES: [OnceLock<Vec<CyclotomicNumber>>; 17] = [const { OnceLock::new() }; 17];
    let table = TABLES[p as usize].get_or_init(|| {
        (0..p as i64)
            .map(|r| match r {
                0 => CyclotomicNumber::raw_zero(conductor_for(p)),
                _ => cot_uncached(r, p).expect("nonzero angle"),
            })
            .collect()
    });
    Ok(table[a.rem_euclid(p as i64) as usize].clone())
}

fn cot_uncached(a: i64, p: u32) -> Result<CyclotomicNumber> {
    let (z, zi, i) = angle(a, p)?;
    Ok(&(&i * &(&z + &zi)) * &(&z - &zi).inverse()?)
}

/// `csc(aπ/p)`.
pub fn csc(a: i64, p: u32) -> Result<CyclotomicNumber> {
    check_order(p)?;
    check_pole(a, p)?;
    let (z, zi, i) = angle(a, p)?;
    let two_i = i.scale(rational::int(2));
    Ok(&two_i * &(&z - &zi).inverse()?)
}

/// Signature defect `−Σ_{j=1}^{p−1} cot(πja/p) cot(πjb/p)` of an isolated
/// fixed point with rotation weights `(a, b)` under an element of order `p`.
pub fn signature_defect(a: i64, b: i64, p: u32) -> Result<Rational> {
    check_order(p)?;
    check_pole(a, p)?;
    check_pole(b, p)?;
    let n = conductor_for(p);
    let mut sum = CyclotomicNumber::zero(n)?;
    for j in 1..p as i64 {
        if (j * a).rem_euclid(p as i64) == 0 || (j * b).rem_euclid(p as i64) == 0 {
            // a non-unit weight means some power fixes a curve through the point
            return Err(Error::Pole(format!("weight ({a},{b}) is not a unit mod {p}")));
        }
        sum = &sum + &(&cot(j * a, p)? * &cot(j * b, p)?);
    }
    (-&sum).to_rational()
}

/// Defect of a fixed surface with the given self-intersection under an
/// element of order `p`: `(p² − 1)/3 · self-intersection`.
pub fn surface_defect(p: u32, self_intersection: i64) -> Rational {
    let p = p as i64;
    Rational::new((p * p - 1) * self_intersection, 3)
}

/// Local contribution of a fixed point to a Spin number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinContribution {
    pub p: u32,
    pub a: i64,
    pub b: i64,
    pub r: i64,
    pub k: i64,
    #[serde(with = "rational::serde_string")]
    pub value: Rational,
}

/// `I = (−1)^(k+1) · ¼ · csc(aπ/p) csc(bπ/p)` with `k = (2r + a + b)/p`.
pub fn spin_contribution(p: u32, a: i64, b: i64, r: i64) -> Result<SpinContribution> {
    check_order(p)?;
    let num = 2 * r + a + b;
    if num.rem_euclid(p as i64) != 0 {
        return Err(Error::InvalidInput(format!("2r + a + b = {num} is not divisible by {p}")));
    }
    let k = num / p as i64;
    let sign = if k.rem_euclid(2) == 1 { 1 } else { -1 };
    let prod = &csc(a, p)? * &csc(b, p)?;
    let value = prod.scale(Rational::new(sign, 4)).to_rational()?;
    Ok(SpinContribution { p, a, b, r, k, value })
}

/// Spin numbers compatible with `num_points` contributions of `±¼` and a
/// splitting `d₀ + d₁ = −sign/8` into nonnegative even dimensions, where the
/// Spin number is `d₀ − d₁`.
pub fn spin_number_feasible(num_points: u32, sign: i64) -> Result<BTreeSet<i64>> {
    if sign % 8 != 0 {
        return Err(Error::InvalidInput(format!("signature {sign} is not divisible by 8")));
    }
    let s = -sign / 8;
    let n = num_points as i64;
    // Σ ±¼ over n points takes the values (n − 2m)/4
    let sums = (0..=n).map(|m| n - 2 * m).filter(|q| q % 4 == 0).map(|q| q / 4);
    Ok(sums
        .filter(|&v| {
            // 2·d₀ = s + v and 2·d₁ = s − v
            let (twice_d0, twice_d1) = (s + v, s - v);
            twice_d0 >= 0 && twice_d1 >= 0 && twice_d0 % 4 == 0 && twice_d1 % 4 == 0
        })
        .collect())
}

/// `Σ_{j=1}^{m} cot²(jπ/p)`.
pub fn cot_square_sum(p: u32, m: u32) -> Result<Rational> {
    check_order(p)?;
    let mut sum = CyclotomicNumber::zero(conductor_for(p))?;
    for j in 1..=m as i64 {
        let c = cot(j, p)?;
        sum = &sum + &(&c * &c);
    }
    sum.to_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8).unwrap(), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12).unwrap(), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(44).unwrap().len(), 21);
        assert!(cyclotomic_polynomial(65).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let n = 28;
        let x = &CyclotomicNumber::zeta_pow(n, 3).unwrap() - &CyclotomicNumber::from_rational(n, frac(2, 3)).unwrap();
        let y = x.inverse().unwrap();
        assert_eq!((&x * &y).to_rational().unwrap(), int(1));
        assert!(matches!(CyclotomicNumber::zero(8).unwrap().inverse(), Err(Error::Pole(_))));
    }

    #[test]
    fn small_cotangents() {
        assert_eq!(cot(1, 2).unwrap().to_rational().unwrap(), int(0));
        assert_eq!(cot(1, 4).unwrap().to_rational().unwrap(), int(1));
        assert_eq!(cot(3, 4).unwrap().to_rational().unwrap(), int(-1));
        let c = cot(1, 3).unwrap();
        assert_eq!((&c * &c).to_rational().unwrap(), frac(1, 3));
        assert!(matches!(cot(4, 4), Err(Error::Pole(_))));
        assert!(matches!(cot(0, 7), Err(Error::Pole(_))));
    }

    #[test]
    fn cot_square_sum_for_seven() {
        assert_eq!(cot_square_sum(7, 3).unwrap(), int(5));
    }

    #[test]
    fn defects_at_isolated_points() {
        assert_eq!(signature_defect(1, 1, 2).unwrap(), int(0));
        assert_eq!(signature_defect(1, 3, 4).unwrap(), int(2));
        assert_eq!(signature_defect(1, 1, 4).unwrap(), int(-2));
        assert_eq!(signature_defect(3, 3, 4).unwrap(), int(-2));
        assert_eq!(signature_defect(1, 2, 3).unwrap(), frac(2, 3));
        assert_eq!(signature_defect(1, 1, 3).unwrap(), frac(-2, 3));
        assert_eq!(signature_defect(1, 6, 7).unwrap(), int(10));
        assert_eq!(signature_defect(1, 4, 5).unwrap(), int(4));
        assert!(matches!(signature_defect(2, 1, 4), Err(Error::Pole(_))));
    }

    #[test]
    fn group_totals() {
        let d = |a, b, p| signature_defect(a, b, p).unwrap();
        assert_eq!(d(2, 3, 7) + d(6, 6, 7), int(-8));
        assert_eq!(d(1, 2, 5) + d(4, 4, 5) + d(4, 4, 5), int(-8));
        assert_eq!(surface_defect(3, -2) - frac(2, 3), int(-6));
        assert_eq!(surface_defect(2, 1), int(1));
    }

    #[test]
    fn spin_contributions() {
        let c = spin_contribution(2, 1, 1, 0).unwrap();
        assert_eq!((c.k, c.value), (1, frac(1, 4)));
        let c = spin_contribution(2, 1, 1, 1).unwrap();
        assert_eq!((c.k, c.value), (2, frac(-1, 4)));
        let c = spin_contribution(4, 1, 3, 0).unwrap();
        assert_eq!((c.k, c.value), (1, frac(1, 2)));
        assert!(matches!(spin_contribution(4, 1, 1, 0), Err(Error::InvalidInput(_))));
    }

    /// Brute force over sign assignments and even splittings.
    fn spin_oracle(n: u32, sign: i64) -> BTreeSet<i64> {
        let s = -sign / 8;
        let mut sums = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let plus = mask.count_ones() as i64;
            let quarter_units = plus - (n as i64 - plus);
            if quarter_units % 4 == 0 {
                sums.insert(quarter_units / 4);
            }
        }
        let mut out = BTreeSet::new();
        for d0 in (0..=s.max(0)).step_by(2) {
            let d1 = s - d0;
            if d1 >= 0 && d1 % 2 == 0 && sums.contains(&(d0 - d1)) {
                out.insert(d0 - d1);
            }
        }
        out
    }

    #[test]
    fn spin_feasibility() {
        assert_eq!(spin_number_feasible(8, -16).unwrap(), BTreeSet::from([-2, 2]));
        assert_eq!(spin_number_feasible(0, 0).unwrap(), BTreeSet::from([0]));
        assert!(spin_number_feasible(4, -16).unwrap().is_empty());
        assert!(spin_number_feasible(4, -12).is_err());
        for n in 0..=12 {
            for sign in [-32, -16, -8, 0] {
                assert_eq!(spin_number_feasible(n, sign).unwrap(), spin_oracle(n, sign), "n={n} sign={sign}");
            }
        }
    }

    fn units(p: u32) -> Vec<i64> {
        (1..p as i64).filter(|a| a.gcd(&(p as i64)) == 1).collect()
    }

    #[test]
    fn defect_symmetries_up_to_twelve() {
        for p in 2..=12u32 {
            let us = units(p);
            for &a in &us {
                for &b in &us {
                    let d = signature_defect(a, b, p).unwrap();
                    assert_eq!(d, signature_defect(b, a, p).unwrap());
                    assert_eq!(d, signature_defect(p as i64 - a, p as i64 - b, p).unwrap());
                }
                let sl2 = signature_defect(a, p as i64 - a, p).unwrap();
                let mut sq = CyclotomicNumber::zero(conductor_for(p)).unwrap();
                for j in 1..p as i64 {
                    let c = cot(j * a, p).unwrap();
                    sq = &sq + &(&c * &c);
                }
                assert_eq!(sl2, sq.to_rational().unwrap());
                if p > 2 {
                    assert!(sl2 > int(0));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn cot_square_identity(p in 3u32..=16) {
            let m = (p - 1) / 2;
            let expected = Rational::new(((p - 1) * (p - 2)) as i64, 6);
            if p % 2 == 1 {
                prop_assert_eq!(cot_square_sum(p, m).unwrap(), expected);
            }
            // csc² = 1 + cot²
            let c = cot(1, p).unwrap();
            let s = csc(1, p).unwrap();
            let one = CyclotomicNumber::from_rational(conductor_for(p), int(1)).unwrap();
            prop_assert_eq!(&s * &s, &one + &(&c * &c));
        }

        #[test]
        fn field_axioms(n in 3u32..=MAX_CONDUCTOR, i in 0i64..64, j in 0i64..64, q in -5i64..5) {
            let x = &CyclotomicNumber::zeta_pow(n, i).unwrap() + &CyclotomicNumber::from_rational(n, int(q)).unwrap();
            let y = CyclotomicNumber::zeta_pow(n, j).unwrap();
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &y.inverse().unwrap(), x.clone());
            prop_assert_eq!(&CyclotomicNumber::zeta_pow(n, i).unwrap() * &y, CyclotomicNumber::zeta_pow(n, i + j).unwrap());
            if !x.is_zero() {
                prop_assert_eq!((&x * &x.inverse().unwrap()).to_rational().unwrap(), int(1));
            }
        }
    }
}
