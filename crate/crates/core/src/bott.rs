//! Borel–Weil–Bott on `Gr(k, n)`.
//!
//! For `L_α U ⊗ L_β Q` the `GL(n)` weight is the concatenation `(β | α)`:
//! the quotient block comes first. Adding `ρ = (n−1, …, 0)`, a repeated
//! entry means all cohomology vanishes; otherwise sorting into strictly
//! decreasing order takes `ℓ` transpositions and the cohomology is the
//! irreducible `GL(n)`-module of the sorted weight minus `ρ`, placed in
//! degree `ℓ`.
//!
//! With this convention `U∨` has `H⁰ = V∨` and `U` is acyclic, so `U` is
//! the tautological subbundle (on `P^{n−1}`, `U = O(−1)`).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{dim_schur, BundleExpression};
use crate::young::{check_grassmannian, Weight};

/// Cohomology of one irreducible homogeneous bundle: zero, or a single
/// irreducible `GL(n)`-module in a single degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cohomology {
    Vanishes,
    Degree { degree: usize, weight: Weight },
}

impl Cohomology {
    pub fn dimension(&self) -> Result<u64> {
        match self {
            Cohomology::Vanishes => Ok(0),
            Cohomology::Degree { weight, .. } => dim_schur(weight),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            Cohomology::Vanishes => None,
            Cohomology::Degree { degree, .. } => Some(*degree),
        }
    }
}

/// Dimensions of a graded vector space, keyed by degree. Zero entries are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedDimension(BTreeMap<i64, u64>);

impl GradedDimension {
    pub fn zero() -> Self {
        GradedDimension(BTreeMap::new())
    }

    pub fn concentrated(degree: i64, dim: u64) -> Self {
        let mut g = GradedDimension::zero();
        g.add(degree, dim).expect("single entry cannot overflow");
        g
    }

    pub fn add(&mut self, degree: i64, dim: u64) -> Result<()> {
        if dim == 0 {
            return Ok(());
        }
        let slot = self.0.entry(degree).or_insert(0);
        *slot = slot.checked_add(dim).ok_or(Error::Overflow("graded dimension"))?;
        Ok(())
    }

    pub fn add_all(&mut self, other: &GradedDimension) -> Result<()> {
        for (&d, &v) in &other.0 {
            self.add(d, v)?;
        }
        Ok(())
    }

    /// `X[s]` has `X[s]^d = X^{d+s}`: degree `d` moves to `d − s`.
    pub fn shift(&self, s: i64) -> GradedDimension {
        GradedDimension(self.0.iter().map(|(&d, &v)| (d - s, v)).collect())
    }

    pub fn scale(&self, c: u64) -> Result<GradedDimension> {
        let mut out = GradedDimension::zero();
        for (&d, &v) in &self.0 {
            out.add(d, v.checked_mul(c).ok_or(Error::Overflow("graded dimension"))?)?;
        }
        Ok(out)
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &v)| (d, v))
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// `Σ (−1)^d dim`.
    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .map(|(&d, &v)| if d.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    /// True iff the only nonzero degree is 0.
    pub fn is_concentrated_in_zero(&self) -> bool {
        self.0.keys().all(|&d| d == 0)
    }
}

impl fmt::Display for GradedDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (d, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}: {v}")?;
        }
        f.write_str("}")
    }
}

/// Cohomology of `L_α U ⊗ L_β Q` on `Gr(k, n)`.
pub fn bwb(k: usize, n: usize, alpha: &Weight, beta: &Weight) -> Result<Cohomology> {
    check_grassmannian(k, n)?;
    if alpha.rank() != k {
        return Err(Error::RankMismatch {
            expected: k,
            found: alpha.rank(),
        });
    }
    if beta.rank() != n - k {
        return Err(Error::RankMismatch {
            expected: n - k,
            found: beta.rank(),
        });
    }
    let mut v: Vec<i64> = beta
        .parts()
        .iter()
        .chain(alpha.parts())
        .enumerate()
        .map(|(i, &x)| x + (n - 1 - i) as i64)
        .collect();

    // insertion sort into decreasing order; each swap is one inversion
    let mut length = 0usize;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] <= v[j] {
            if v[j - 1] == v[j] {
                return Ok(Cohomology::Vanishes);
            }
            v.swap(j - 1, j);
            length += 1;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return Ok(Cohomology::Vanishes);
        }
    }
    let weight = Weight::new(v.iter().enumerate().map(|(i, &x)| x - (n - 1 - i) as i64).collect())?;
    Ok(Cohomology::Degree { degree: length, weight })
}

/// `H^•` of a formal sum of irreducibles, as dimensions.
pub fn cohomology(expr: &BundleExpression) -> Result<GradedDimension> {
    let (k, n) = expr.context();
    let mut out = GradedDimension::zero();
    for (u, q, m) in expr.terms() {
        let h = bwb(k, n, u, q)?;
        if let Cohomology::Degree { degree, .. } = &h {
            let d = h.dimension()?.checked_mul(m).ok_or(Error::Overflow("cohomology"))?;
            out.add(*degree as i64, d)?;
        }
    }
    Ok(out)
}

pub fn euler_characteristic(expr: &BundleExpression) -> Result<i64> {
    Ok(cohomology(expr)?.euler())
}
