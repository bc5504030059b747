//! Littlewood–Richardson products and tensor decompositions of homogeneous
//! bundles `L_α U ⊗ L_β Q`.
//!
//! Negative weights are reduced to partitions by tensoring with a power of
//! the determinant, multiplied with the LR rule, and shifted back. Terms with
//! more rows than the rank of the group vanish and are dropped.

use std::collections::BTreeMap;
use std::fmt;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::young::{check_grassmannian, Partition, Weight};

/// Number of column-strict fillings of the skew shape `ν/λ` with content `μ`
/// whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() || !nu.contains(lambda) {
        return 0;
    }
    let rows = nu.len();
    let mut filling: Vec<Vec<usize>> = (0..rows)
        .map(|r| vec![0; (nu.part(r) - lambda.part(r)) as usize])
        .collect();
    let mut counts = vec![0i64; mu.len() + 1];
    let mut total = 0u64;
    fill_skew(lambda, mu, 0, None, &mut filling, &mut counts, &mut total);
    total
}

/// Fills cells in reverse reading order: rows top to bottom, each row right
/// to left. `col` is the offset inside row `row` of the next cell to fill,
/// counted from the right end of the row.
fn fill_skew(
    lambda: &Partition,
    mu: &Partition,
    row: usize,
    col: Option<usize>,
    filling: &mut Vec<Vec<usize>>,
    counts: &mut Vec<i64>,
    total: &mut u64,
) {
    if row == filling.len() {
        if (1..=mu.len()).all(|i| counts[i] == mu.part(i - 1)) {
            *total += 1;
        }
        return;
    }
    let width = filling[row].len();
    let idx = match col {
        None if width == 0 => {
            return fill_skew(lambda, mu, row + 1, None, filling, counts, total);
        }
        None => width - 1,
        Some(c) => c,
    };
    // column in the full diagram
    let abs_col = lambda.part(row) as usize + idx;
    let max_entry = if idx + 1 < width {
        filling[row][idx + 1]
    } else {
        mu.len()
    };
    let min_entry = if row > 0 && abs_col >= lambda.part(row - 1) as usize {
        filling[row - 1][abs_col - lambda.part(row - 1) as usize] + 1
    } else {
        1
    };
    for e in min_entry..=max_entry {
        if counts[e] >= mu.part(e - 1) {
            continue;
        }
        if e > 1 && counts[e] + 1 > counts[e - 1] {
            continue;
        }
        counts[e] += 1;
        filling[row][idx] = e;
        if idx == 0 {
            fill_skew(lambda, mu, row + 1, None, filling, counts, total);
        } else {
            fill_skew(lambda, mu, row, Some(idx - 1), filling, counts, total);
        }
        counts[e] -= 1;
    }
}

/// The full product `s_λ · s_μ = Σ c^ν_{λμ} s_ν`, built by adding the
/// letters of `μ` as horizontal strips under the lattice-word condition.
pub fn lr_product(lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    let shape: Vec<i64> = lambda.parts().to_vec();
    // placed[r][i] = number of letters i+1 in row r
    let mut placed: Vec<Vec<i64>> = Vec::new();
    add_letter(mu, 0, shape, &mut placed, &mut out);
    out
}

fn add_letter(
    mu: &Partition,
    letter: usize,
    shape: Vec<i64>,
    placed: &mut Vec<Vec<i64>>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if letter == mu.len() {
        *out.entry(Partition::from_sorted(shape)).or_insert(0) += 1;
        return;
    }
    let boxes = mu.part(letter);
    let mut new_shape = shape.clone();
    new_shape.push(0);
    let mut added = vec![0i64; new_shape.len()];
    strip_rows(
        mu,
        letter,
        &shape,
        0,
        boxes,
        0,
        0,
        &mut new_shape,
        &mut added,
        placed,
        out,
    );
}

/// Chooses how many boxes of `letter` go into row `row`.
#[allow(clippy::too_many_arguments)]
fn strip_rows(
    mu: &Partition,
    letter: usize,
    old: &[i64],
    row: usize,
    remaining: i64,
    running_self: i64,
    running_prev: i64,
    new_shape: &mut Vec<i64>,
    added: &mut Vec<i64>,
    placed: &mut Vec<Vec<i64>>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if remaining == 0 {
        let shape: Vec<i64> = new_shape.iter().copied().filter(|&p| p > 0).collect();
        for (r, &a) in added.iter().enumerate() {
            if placed.len() <= r {
                placed.push(Vec::new());
            }
            if placed[r].len() <= letter {
                placed[r].resize(letter + 1, 0);
            }
            placed[r][letter] = a;
        }
        add_letter(mu, letter + 1, shape, placed, out);
        for (r, _) in added.iter().enumerate() {
            placed[r][letter] = 0;
        }
        return;
    }
    if row >= new_shape.len() {
        return;
    }
    let old_len = |r: usize| old.get(r).copied().unwrap_or(0);
    // horizontal strip: the row may grow up to the old length of the row above
    let cap = if row == 0 {
        remaining
    } else {
        old_len(row - 1) - old_len(row)
    };
    // lattice: letters of this kind in rows <= row must not exceed letters of
    // the previous kind in rows < row
    let prev_here = if letter == 0 {
        0
    } else {
        placed.get(row).and_then(|v| v.get(letter - 1)).copied().unwrap_or(0)
    };
    let lattice_cap = if letter == 0 {
        remaining
    } else {
        running_prev - running_self
    };
    let max_add = cap.min(remaining).min(lattice_cap).max(0);
    for a in (0..=max_add).rev() {
        new_shape[row] = old_len(row) + a;
        added[row] = a;
        strip_rows(
            mu,
            letter,
            old,
            row + 1,
            remaining - a,
            running_self + a,
            running_prev + prev_here,
            new_shape,
            added,
            placed,
            out,
        );
    }
    new_shape[row] = old_len(row);
    added[row] = 0;
}

/// A direct sum of irreducible `GL(rank)` representations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSum {
    rank: usize,
    terms: BTreeMap<Weight, u64>,
}

impl WeightSum {
    pub fn new(rank: usize) -> Self {
        WeightSum {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add(&mut self, w: Weight, mult: u64) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        if mult == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(w).or_insert(0);
        *slot = slot.checked_add(mult).ok_or(Error::Overflow("weight multiplicity"))?;
        Ok(())
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Σ mult · dim over all terms.
    pub fn dimension(&self) -> Result<u64> {
        self.terms.iter().try_fold(0u64, |acc, (w, &m)| {
            dim_schur(w)?
                .checked_mul(m)
                .and_then(|d| acc.checked_add(d))
                .ok_or(Error::Overflow("dimension"))
        })
    }
}

/// `L_λ ⊗ L_μ` in `GL(rank)`, for a dominant weight `λ` and a diagram `μ`.
pub fn tensor_schur(lambda: &Weight, mu: &Partition, rank: usize) -> Result<WeightSum> {
    if lambda.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: lambda.rank(),
        });
    }
    let shift = -lambda.min_part().min(0);
    let base = lambda
        .twist(shift)
        .to_partition()
        .expect("shifted weight is a partition");
    let mut out = WeightSum::new(rank);
    let mut discarded = 0u64;
    for (nu, mult) in lr_product(&base, mu) {
        if nu.len() > rank {
            discarded += mult;
            continue;
        }
        out.add(nu.to_weight(rank)?.twist(-shift), mult)?;
    }
    if discarded > 0 {
        debug!("tensor {lambda} x {mu} in GL({rank}): discarded {discarded} overflowing terms");
    }
    Ok(out)
}

/// `L_a ⊗ L_b` for two arbitrary dominant weights of the same rank.
pub fn tensor_weights(a: &Weight, b: &Weight) -> Result<WeightSum> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            found: b.rank(),
        });
    }
    let shift = -b.min_part().min(0);
    let b_part = b.twist(shift).to_partition().expect("shifted weight is a partition");
    let raw = tensor_schur(a, &b_part, a.rank())?;
    let mut out = WeightSum::new(a.rank());
    for (w, m) in raw.iter() {
        out.add(w.twist(-shift), m)?;
    }
    Ok(out)
}

/// Pieri's rule for `L_λ ⊗ Λ^m`: add `m` boxes, at most one per row.
pub fn pieri_wedge(lambda: &Partition, m: usize, rank: usize) -> Result<WeightSum> {
    let base = lambda.to_weight(rank)?;
    let mut out = WeightSum::new(rank);
    let mut parts = base.parts().to_vec();
    pieri_rows(&base, 0, m, &mut parts, &mut out)?;
    Ok(out)
}

fn pieri_rows(base: &Weight, row: usize, remaining: usize, parts: &mut Vec<i64>, out: &mut WeightSum) -> Result<()> {
    if remaining == 0 {
        return out.add(Weight::new(parts.clone())?, 1);
    }
    if row == parts.len() || parts.len() - row < remaining {
        return Ok(());
    }
    let can_grow = row == 0 || parts[row - 1] > base.parts()[row];
    if can_grow {
        parts[row] += 1;
        pieri_rows(base, row + 1, remaining - 1, parts, out)?;
        parts[row] -= 1;
    }
    pieri_rows(base, row + 1, remaining, parts, out)
}

/// Weyl dimension formula `∏_{i<j} (λ_i − λ_j + j − i) / (j − i)`.
pub fn dim_schur(lambda: &Weight) -> Result<u64> {
    let p = lambda.parts();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let a = (p[i] - p[j]) as u128 + (j - i) as u128;
            num = num.checked_mul(a).ok_or(Error::Overflow("Weyl dimension"))?;
            den = den
                .checked_mul((j - i) as u128)
                .ok_or(Error::Overflow("Weyl dimension"))?;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    u64::try_from(num / den).map_err(|_| Error::Overflow("Weyl dimension"))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A formal direct sum of irreducible bundles `L_α U ⊗ L_β Q` on `Gr(k, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleExpression {
    k: usize,
    n: usize,
    terms: BTreeMap<(Weight, Weight), u64>,
}

impl BundleExpression {
    pub fn zero(k: usize, n: usize) -> Result<Self> {
        check_grassmannian(k, n)?;
        Ok(BundleExpression {
            k,
            n,
            terms: BTreeMap::new(),
        })
    }

    /// The structure sheaf `O`.
    pub fn trivial(k: usize, n: usize) -> Result<Self> {
        Self::irreducible(k, n, Weight::zero(k), Weight::zero(n - k))
    }

    pub fn irreducible(k: usize, n: usize, u: Weight, q: Weight) -> Result<Self> {
        let mut e = Self::zero(k, n)?;
        e.add_term(u, q, 1)?;
        Ok(e)
    }

    /// `L_α U`.
    pub fn u_schur(k: usize, n: usize, alpha: Weight) -> Result<Self> {
        Self::irreducible(k, n, alpha, Weight::zero(n.saturating_sub(k)))
    }

    /// `L_β Q`.
    pub fn q_schur(k: usize, n: usize, beta: Weight) -> Result<Self> {
        Self::irreducible(k, n, Weight::zero(k), beta)
    }

    /// `L_λ U` for a diagram.
    pub fn u_diagram(k: usize, n: usize, lambda: &Partition) -> Result<Self> {
        Self::u_schur(k, n, lambda.to_weight(k)?)
    }

    /// `L_λ Q` for a diagram.
    pub fn q_diagram(k: usize, n: usize, lambda: &Partition) -> Result<Self> {
        check_grassmannian(k, n)?;
        Self::q_schur(k, n, lambda.to_weight(n - k)?)
    }

    /// `S^m U∨ = L_{(0, …, 0, −m)} U`.
    pub fn sym_u_dual(k: usize, n: usize, m: usize) -> Result<Self> {
        Ok(Self::u_diagram(k, n, &Partition::row(m))?.dual())
    }

    /// `Λ^m U∨`; zero for `m > k`.
    pub fn wedge_u_dual(k: usize, n: usize, m: usize) -> Result<Self> {
        Ok(Self::wedge_u(k, n, m)?.dual())
    }

    /// `Λ^m U`; zero for `m > k`.
    pub fn wedge_u(k: usize, n: usize, m: usize) -> Result<Self> {
        if m > k {
            return Self::zero(k, n);
        }
        Self::u_diagram(k, n, &Partition::column(m))
    }

    /// `Λ^m Q`; zero for `m > n − k`.
    pub fn wedge_q(k: usize, n: usize, m: usize) -> Result<Self> {
        check_grassmannian(k, n)?;
        if m > n - k {
            return Self::zero(k, n);
        }
        Self::q_diagram(k, n, &Partition::column(m))
    }

    /// `S^m Q`.
    pub fn sym_q(k: usize, n: usize, m: usize) -> Result<Self> {
        Self::q_diagram(k, n, &Partition::row(m))
    }

    /// The canonical bundle `ω = O(−n)`.
    pub fn canonical(k: usize, n: usize) -> Result<Self> {
        check_grassmannian(k, n)?;
        Self::irreducible(
            k,
            n,
            Weight::constant(k, (n - k) as i64),
            Weight::constant(n - k, -(k as i64)),
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn context(&self) -> (usize, usize) {
        (self.k, self.n)
    }

    pub fn add_term(&mut self, u: Weight, q: Weight, mult: u64) -> Result<()> {
        if u.rank() != self.k {
            return Err(Error::RankMismatch {
                expected: self.k,
                found: u.rank(),
            });
        }
        if q.rank() != self.n - self.k {
            return Err(Error::RankMismatch {
                expected: self.n - self.k,
                found: q.rank(),
            });
        }
        if mult == 0 {
            return Ok(());
        }
        let slot = self.terms.entry((u, q)).or_insert(0);
        *slot = slot.checked_add(mult).ok_or(Error::Overflow("bundle multiplicity"))?;
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Weight, u64)> {
        self.terms.iter().map(|((u, q), &m)| (u, q, m))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_context(&self, other: &BundleExpression) -> Result<()> {
        if self.context() != other.context() {
            return Err(Error::ContextMismatch(self.k, self.n, other.k, other.n));
        }
        Ok(())
    }

    /// Direct sum.
    pub fn sum(&self, other: &BundleExpression) -> Result<BundleExpression> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (u, q, m) in other.terms() {
            out.add_term(u.clone(), q.clone(), m)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Result<BundleExpression> {
        let mut out = BundleExpression::zero(self.k, self.n)?;
        for (u, q, m) in self.terms() {
            let m = m.checked_mul(c).ok_or(Error::Overflow("bundle multiplicity"))?;
            out.add_term(u.clone(), q.clone(), m)?;
        }
        Ok(out)
    }

    pub fn dual(&self) -> BundleExpression {
        BundleExpression {
            k: self.k,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((u, q), &m)| ((u.dual(), q.dual()), m))
                .collect(),
        }
    }

    /// Tensor product, decomposed into irreducibles factor by factor.
    pub fn tensor(&self, other: &BundleExpression) -> Result<BundleExpression> {
        self.check_context(other)?;
        let mut out = BundleExpression::zero(self.k, self.n)?;
        for (u1, q1, m1) in self.terms() {
            for (u2, q2, m2) in other.terms() {
                let us = tensor_weights(u1, u2)?;
                let qs = tensor_weights(q1, q2)?;
                let m12 = m1.checked_mul(m2).ok_or(Error::Overflow("tensor"))?;
                for (u, mu) in us.iter() {
                    for (q, mq) in qs.iter() {
                        let m = m12
                            .checked_mul(mu)
                            .and_then(|x| x.checked_mul(mq))
                            .ok_or(Error::Overflow("tensor"))?;
                        out.add_term(u.clone(), q.clone(), m)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Total rank as a vector bundle.
    pub fn rank(&self) -> Result<u64> {
        self.terms().try_fold(0u64, |acc, (u, q, m)| {
            let d = dim_schur(u)?
                .checked_mul(dim_schur(q)?)
                .and_then(|d| d.checked_mul(m))
                .ok_or(Error::Overflow("bundle rank"))?;
            acc.checked_add(d).ok_or(Error::Overflow("bundle rank"))
        })
    }
}

impl fmt::Display for BundleExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((u, q), m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m != 1 {
                write!(f, "{m}*")?;
            }
            match (u.is_zero(), q.is_zero()) {
                (true, true) => f.write_str("O")?,
                (false, true) => write!(f, "U[{u}]")?,
                (true, false) => write!(f, "Q[{q}]")?,
                (false, false) => write!(f, "U[{u}]*Q[{q}]")?,
            }
        }
        Ok(())
    }
}
