//! Integer matrices, Smith normal form and integral lattices.
//!
//! The E₈ Gram matrix uses the chain `0 – 1 – … – 6` with vertex 7 attached
//! to vertex 2, i.e. the Ẽ₈ graph with the affine end vertex removed. The
//! K3 lattice is `3H ⊕ 2(−E₈)` in that order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::invalid;
use crate::{par, Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IntMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(invalid("rows have different lengths"));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn diagonal(entries: &[i64]) -> IntMatrix {
        let mut m = IntMatrix::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = out.data[idx]
                        .checked_add(a.checked_mul(other.get(k, c)).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
            }
        }
        Ok(out)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c) == 0))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i128> {
        if !self.is_square() {
            return Err(invalid("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<BigInt>> = self.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let mut sign = 1i32;
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = &a[n - 1][n - 1] * sign;
        i128::try_from(d).map_err(|_| overflow())
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigRational>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..self.rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in c..self.cols {
                        let t = &f * &a[rank][k];
                        a[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += k · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        for c in 0..self.cols {
            let v = self.get(dst, c).checked_add(k.checked_mul(self.get(src, c)).ok_or_else(overflow)?).ok_or_else(overflow)?;
            self.set(dst, c, v);
        }
        Ok(())
    }

    /// `col[dst] += k · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        for r in 0..self.rows {
            let v = self.get(r, dst).checked_add(k.checked_mul(self.get(r, src)).ok_or_else(overflow)?).ok_or_else(overflow)?;
            self.set(r, dst, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

fn overflow() -> Error {
    Error::Consistency("integer overflow in lattice arithmetic".into())
}

/// `U·M·V = D` with `U`, `V` unimodular and `d₁ | d₂ | …` on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Kept alongside `v` so saturations need no inversion.
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i)).filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by alternating row and column reduction.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    if m.rows == 0 || m.cols == 0 {
        return Err(invalid("Smith normal form of an empty matrix"));
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut vi = IntMatrix::identity(cols);

    // column operation on a, mirrored on v and inversely on v⁻¹
    fn col_add(a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst: usize, src: usize, k: i64) -> Result<()> {
        a.add_col(dst, src, k)?;
        v.add_col(dst, src, k)?;
        vi.add_row(src, dst, -k)
    }
    fn col_swap(a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, x: usize, y: usize) {
        a.swap_cols(x, y);
        v.swap_cols(x, y);
        vi.swap_rows(x, y);
    }

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let x = a.get(r, c);
                    if x != 0 && best.is_none_or(|(br, bc)| x.abs() < a.get(br, bc).abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return finish(a, u, v, vi);
            };
            a.swap_rows(t, pr);
            u.swap_rows(t, pr);
            col_swap(&mut a, &mut v, &mut vi, t, pc);

            let p = a.get(t, t);
            let mut clean = true;
            for r in t + 1..rows {
                let q = a.get(r, t).div_euclid(p);
                if q != 0 {
                    a.add_row(r, t, -q)?;
                    u.add_row(r, t, -q)?;
                }
                clean &= a.get(r, t) == 0;
            }
            for c in t + 1..cols {
                let q = a.get(t, c).div_euclid(p);
                if q != 0 {
                    col_add(&mut a, &mut v, &mut vi, c, t, -q)?;
                }
                clean &= a.get(t, c) == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| a.get(r, c) % p != 0));
            match bad {
                Some(r) => {
                    a.add_row(t, r, 1)?;
                    u.add_row(t, r, 1)?;
                }
                None => {
                    if p < 0 {
                        a.negate_row(t);
                        u.negate_row(t);
                    }
                    break;
                }
            }
        }
    }
    finish(a, u, v, vi)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix, v_inv: IntMatrix) -> Result<SmithForm> {
    Ok(SmithForm { d, u, v, v_inv })
}

/// Smith forms of many matrices, computed in parallel when enabled.
pub fn smith_batch(ms: &[IntMatrix]) -> Vec<Result<SmithForm>> {
    par::map(ms, smith_normal_form)
}

/// A free abelian group with a symmetric integer bilinear form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralLattice {
    pub name: String,
    gram: IntMatrix,
    labels: Option<Vec<String>>,
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

impl IntegralLattice {
    pub fn new(name: impl Into<String>, gram: IntMatrix) -> Result<IntegralLattice> {
        if !gram.is_symmetric() {
            return Err(invalid("Gram matrix must be square and symmetric"));
        }
        Ok(IntegralLattice { name: name.into(), gram, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<IntegralLattice> {
        if labels.len() != self.rank() {
            return Err(invalid("one label per basis vector"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// `Z^n` with the standard form.
    pub fn standard(n: usize) -> IntegralLattice {
        IntegralLattice { name: format!("Z^{n}"), gram: IntMatrix::identity(n), labels: None }
    }

    /// The hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic() -> IntegralLattice {
        let gram = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).expect("2x2");
        IntegralLattice { name: "H".into(), gram, labels: Some(vec!["e".into(), "f".into()]) }
    }

    /// Positive-definite E₈.
    pub fn e8() -> IntegralLattice {
        let mut g = IntMatrix::diagonal(&[2; 8]);
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, i + 1)).collect();
        edges.push((2, 7));
        for (a, b) in edges {
            g.set(a, b, -1);
            g.set(b, a, -1);
        }
        IntegralLattice { name: "E8".into(), gram: g, labels: None }
    }

    pub fn negated(&self) -> IntegralLattice {
        let mut g = self.gram.clone();
        g.data.iter_mut().for_each(|x| *x = -*x);
        IntegralLattice { name: format!("-{}", self.name), gram: g, labels: self.labels.clone() }
    }

    pub fn direct_sum(parts: &[IntegralLattice], name: impl Into<String>) -> IntegralLattice {
        let n: usize = parts.iter().map(IntegralLattice::rank).sum();
        let mut g = IntMatrix::zeros(n, n);
        let mut labels = Vec::new();
        let mut off = 0;
        for (pi, p) in parts.iter().enumerate() {
            for r in 0..p.rank() {
                for c in 0..p.rank() {
                    g.set(off + r, off + c, p.gram.get(r, c));
                }
                let base = p.labels.as_ref().map_or_else(|| format!("b{r}"), |l| l[r].clone());
                labels.push(format!("{}{}.{base}", p.name, pi));
            }
            off += p.rank();
        }
        IntegralLattice { name: name.into(), gram: g, labels: Some(labels) }
    }

    /// `3H ⊕ 2(−E₈)`, rank 22 and signature −16.
    pub fn k3() -> IntegralLattice {
        let h = IntegralLattice::hyperbolic();
        let e = IntegralLattice::e8().negated();
        IntegralLattice::direct_sum(&[h.clone(), h.clone(), h, e.clone(), e], "K3")
    }

    /// Builtin lattices by name: `K3`, `H`, `E8`, `-E8`, `Z<n>`.
    pub fn from_name(name: &str) -> Result<IntegralLattice> {
        let lower = name.trim().to_ascii_lowercase();
        match lower.as_str() {
            "k3" => Ok(IntegralLattice::k3()),
            "h" | "u" => Ok(IntegralLattice::hyperbolic()),
            "e8" => Ok(IntegralLattice::e8()),
            "-e8" => Ok(IntegralLattice::e8().negated()),
            _ => match lower.strip_prefix('z').and_then(|n| n.trim_start_matches('^').parse::<usize>().ok()) {
                Some(n) if n > 0 => Ok(IntegralLattice::standard(n)),
                _ => Err(invalid(format!("unknown lattice `{name}`"))),
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn det(&self) -> Result<i128> {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i) % 2 == 0)
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.det()?.abs() == 1)
    }

    /// `u · G · v`.
    pub fn product(&self, u: &[i64], v: &[i64]) -> Result<i64> {
        if u.len() != self.rank() || v.len() != self.rank() {
            return Err(invalid(format!("vectors must have length {}", self.rank())));
        }
        let mut s: i128 = 0;
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                s += a as i128 * self.gram.get(i, j) as i128 * b as i128;
            }
        }
        i64::try_from(s).map_err(|_| overflow())
    }

    /// Gram matrix of the listed vectors.
    pub fn restricted_gram(&self, vectors: &[Vec<i64>]) -> Result<IntMatrix> {
        let mut g = IntMatrix::zeros(vectors.len(), vectors.len());
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate() {
                g.set(i, j, self.product(a, b)?);
            }
        }
        Ok(g)
    }

    /// Inertia of the form by exact symmetric elimination over `Q`.
    pub fn inertia(&self) -> Inertia {
        inertia(&self.gram)
    }

    pub fn signature(&self) -> i64 {
        self.inertia().signature()
    }
}

/// Inertia of a symmetric integer matrix via congruence diagonalization.
pub fn inertia(gram: &IntMatrix) -> Inertia {
    let n = gram.rows;
    let mut a: Vec<Vec<BigRational>> = gram
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut diag = Vec::new();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // pick a nonzero diagonal pivot, or create one from an off-diagonal entry
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => {
                        diag.extend(active.iter().map(|_| BigRational::zero()));
                        break;
                    }
                    Some((i, j)) => {
                        // e_i ← e_i + e_j makes a[i][i] = 2a[i][j] ≠ 0
                        for k in 0..n {
                            let t = a[j][k].clone();
                            a[i][k] += t;
                        }
                        for k in 0..n {
                            let t = a[k][j].clone();
                            a[k][i] += t;
                        }
                        i
                    }
                }
            }
        };
        let pv = a[p][p].clone();
        for &r in active.iter().filter(|&&r| r != p) {
            if a[r][p].is_zero() {
                continue;
            }
            let f = &a[r][p] / &pv;
            for k in 0..n {
                let t = &f * &a[p][k];
                a[r][k] -= t;
            }
            for k in 0..n {
                let t = &f * &a[k][p];
                a[k][r] -= t;
            }
        }
        diag.push(pv);
        active.retain(|&i| i != p);
    }
    Inertia {
        positive: diag.iter().filter(|d| d.is_positive()).count(),
        negative: diag.iter().filter(|d| d.is_negative()).count(),
        zero: diag.iter().filter(|d| d.is_zero()).count(),
    }
}

/// `L/L′` for `L′` spanned by `sub_basis` and `L` its primitive closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureQuotient {
    /// Invariant factors of `L/L′`, ascending with 1 suppressed.
    pub factors: Vec<i64>,
    pub index: i64,
    /// Basis of the primitive closure `L`.
    pub closure_basis: Vec<Vec<i64>>,
    pub det_sub: i128,
    pub det_closure: i128,
    /// `|det L′| = [L : L′]² |det L|`.
    pub discriminant_relation_holds: bool,
}

pub fn primitive_closure_quotient(ambient: &IntegralLattice, sub_basis: &[Vec<i64>]) -> Result<ClosureQuotient> {
    if sub_basis.is_empty() {
        return Err(invalid("empty sublattice basis"));
    }
    if !ambient.is_unimodular()? {
        return Err(invalid(format!("ambient lattice {} is not unimodular", ambient.name)));
    }
    if sub_basis.iter().any(|v| v.len() != ambient.rank()) {
        return Err(invalid(format!("vectors must have length {}", ambient.rank())));
    }
    let m = IntMatrix::from_rows(sub_basis)?;
    let snf = smith_normal_form(&m)?;
    let k = sub_basis.len();
    if snf.rank() != k {
        return Err(invalid("sublattice basis is linearly dependent"));
    }
    let diag = snf.invariant_factors();
    let index = diag.iter().try_fold(1i64, |acc, &d| acc.checked_mul(d)).ok_or_else(overflow)?;
    let mut factors: Vec<i64> = diag.into_iter().filter(|&d| d > 1).collect();
    factors.sort_unstable();
    // rows of M span the same rational space as the first k rows of V⁻¹
    let closure_basis: Vec<Vec<i64>> = (0..k).map(|i| snf.v_inv.row(i).to_vec()).collect();
    let det_sub = ambient.restricted_gram(sub_basis)?.det()?;
    let det_closure = ambient.restricted_gram(&closure_basis)?.det()?;
    let discriminant_relation_holds = det_sub.abs() == (index as i128).pow(2) * det_closure.abs();
    Ok(ClosureQuotient { factors, index, closure_basis, det_sub, det_closure, discriminant_relation_holds })
}

/// Whether every pairwise product of the vectors, squares included,
/// vanishes.
pub fn isotropy_check(vectors: &[Vec<i64>], lattice: &IntegralLattice) -> Result<bool> {
    for (i, a) in vectors.iter().enumerate() {
        for b in &vectors[i..] {
            if lattice.product(a, b)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BettiBranch {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BettiSolution {
    pub m: i64,
    pub k: i64,
    pub signature: i64,
    pub b2: i64,
    pub branch: BettiBranch,
}

/// `0 = 2(2 + 2m + 16k) ± 48k` over `m ∈ {1, 3}`, `k ≥ 1`.
///
/// The minus branch forces `m = 4k − 1`, so `k` is bounded; `k ≤ 16`
/// covers every admissible `m` with room to spare.
pub fn betti_solver(branch: BettiBranch) -> Vec<BettiSolution> {
    let sign = match branch {
        BettiBranch::Minus => -1,
        BettiBranch::Plus => 1,
    };
    let mut out = Vec::new();
    for m in [1i64, 3] {
        for k in 1..=16i64 {
            if 2 * (2 + 2 * m + 16 * k) + sign * 48 * k == 0 {
                out.push(BettiSolution { m, k, signature: -16 * k, b2: 2 * m + 16 * k, branch });
            }
        }
    }
    out
}

/// Parses whitespace-separated integer rows, one per nonblank line; `#`
/// starts a comment.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| invalid(format!("not an integer: `{t}`"))))
                .collect()
        })
        .collect()
}

/// Sublattice `⊕ dᵢ·vᵢ` of the K3 lattice realizing the given invariant
/// factors as `L/L′`: the first three use `e + f` in the hyperbolic
/// summands, later ones use basis vectors of the `−E₈` summands.
pub fn k3_sublattice_for_factors(factors: &[u64]) -> Result<Vec<Vec<i64>>> {
    if factors.len() > 19 {
        return Err(invalid("at most 19 factors fit in the K3 lattice this way"));
    }
    let mut rows = Vec::new();
    let mut seeds: Vec<Vec<i64>> = (0..3)
        .map(|h| {
            let mut v = vec![0; 22];
            v[2 * h] = 1;
            v[2 * h + 1] = 1;
            v
        })
        .collect();
    seeds.extend((6..22).map(|i| {
        let mut v = vec![0; 22];
        v[i] = 1;
        v
    }));
    let wanted: Vec<u64> = if factors.is_empty() { vec![1] } else { factors.to_vec() };
    for (d, seed) in wanted.iter().zip(seeds) {
        rows.push(seed.into_iter().map(|x| x * *d as i64).collect());
    }
    Ok(rows)
}
