//! Young diagrams, dominant integer weights of `GL(m)`, and the box of
//! diagrams indexing Kapranov's collection.
//!
//! Two types live here. [`Weight`] is a nonincreasing integer tuple with an
//! explicit rank; it is what Schur functors of `U` (rank `k`) and `Q`
//! (rank `n - k`) are indexed by. [`Partition`] is a Young diagram with
//! trailing zeros stripped; it only turns into a weight once a rank is
//! chosen with [`Partition::to_weight`].
//!
//! The canonical text form of both is a comma-separated list of integers
//! (`2,1,0`); the empty diagram is the empty string.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dominant weight of `GL(rank)`: a nonincreasing tuple of integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weight {
    parts: Vec<i64>,
}

impl Weight {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(parts));
        }
        Ok(Weight { parts })
    }

    /// The trivial weight `(0, ..., 0)`.
    pub fn zero(rank: usize) -> Self {
        Weight { parts: vec![0; rank] }
    }

    /// `(c, ..., c)`, the weight of `det^c`.
    pub fn constant(rank: usize, c: i64) -> Self {
        Weight { parts: vec![c; rank] }
    }

    /// Parses the canonical syntax and pads with zeros up to `rank`.
    pub fn parse_padded(s: &str, rank: usize) -> Result<Self> {
        let mut parts = parse_ints(s)?;
        if parts.len() > rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: parts.len(),
            });
        }
        parts.resize(rank, 0);
        Weight::new(parts)
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// `(-a_m, ..., -a_1)`: the weight of the dual representation.
    pub fn dual(&self) -> Weight {
        Weight {
            parts: self.parts.iter().rev().map(|p| -p).collect(),
        }
    }

    /// Adds `c` to every part, i.e. tensors with `det^c`.
    pub fn twist(&self, c: i64) -> Weight {
        Weight {
            parts: self.parts.iter().map(|p| p + c).collect(),
        }
    }

    pub fn min_part(&self) -> i64 {
        self.parts.last().copied().unwrap_or(0)
    }

    /// The diagram of this weight, if every part is nonnegative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.min_part() < 0 {
            return None;
        }
        Some(Partition::from_sorted(self.parts.clone()))
    }
}

impl TryFrom<Vec<i64>> for Weight {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        Weight::new(parts)
    }
}

impl From<Weight> for Vec<i64> {
    fn from(w: Weight) -> Vec<i64> {
        w.parts
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ints(f, &self.parts)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Weight::new(parse_ints(s)?)
    }
}

/// A Young diagram. Trailing zero rows are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(parts));
        }
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::NegativePart(parts));
        }
        Ok(Partition::from_sorted(parts))
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The vertical diagram `(1^m)`.
    pub fn column(m: usize) -> Self {
        Partition { parts: vec![1; m] }
    }

    /// The one-row diagram `(m)`.
    pub fn row(m: usize) -> Self {
        if m == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![m as i64] }
        }
    }

    pub(crate) fn from_sorted(mut parts: Vec<i64>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Part `i` (zero-based); rows past the end read as 0.
    pub fn part(&self, i: usize) -> i64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`, the number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum::<i64>() as usize
    }

    pub fn width(&self) -> usize {
        self.part(0) as usize
    }

    /// The conjugate diagram.
    pub fn transpose(&self) -> Partition {
        let parts = (0..self.width())
            .map(|j| self.parts.iter().filter(|&&p| p > j as i64).count() as i64)
            .collect();
        Partition { parts }
    }

    /// True iff `other` fits inside `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }

    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.width() <= cols
    }

    /// Pads with zeros to a weight of the given rank.
    pub fn to_weight(&self, rank: usize) -> Result<Weight> {
        if self.len() > rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: self.len(),
            });
        }
        let mut parts = self.parts.clone();
        parts.resize(rank, 0);
        Ok(Weight { parts })
    }

    /// Order used by [`YoungBox`]: larger diagrams first, ties broken
    /// lexicographically descending.
    pub fn box_order(&self, other: &Partition) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.parts
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ints(f, &self.parts)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_ints(s)?)
    }
}

/// All diagrams with at most `rows` rows and at most `cols` columns, sorted
/// so that a diagram always precedes every diagram it strictly contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungBox {
    rows: usize,
    cols: usize,
    members: Vec<Partition>,
}

impl YoungBox {
    pub fn new(rows: usize, cols: usize) -> Self {
        let mut members = Vec::new();
        let mut current = Vec::with_capacity(rows);
        fill_box(rows, cols as i64, &mut current, &mut members);
        members.sort_by(|a, b| a.box_order(b));
        YoungBox { rows, cols, members }
    }

    /// The box `B_{k, n-k}` for `Gr(k, n)`.
    pub fn for_grassmannian(k: usize, n: usize) -> Result<Self> {
        check_grassmannian(k, n)?;
        Ok(YoungBox::new(k, n - k))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.members.iter().position(|m| m == p)
    }

    pub fn contains(&self, p: &Partition) -> bool {
        p.fits_in(self.rows, self.cols)
    }

    /// Members with exactly `rows` nonzero rows, in box order.
    pub fn exactly_full_rows(&self) -> Vec<Partition> {
        self.members
            .iter()
            .filter(|p| self.rows > 0 && p.len() == self.rows)
            .cloned()
            .collect()
    }

    /// Members with fewer than `rows` rows, in inclusion-preserving order
    /// (the reverse of box order).
    pub fn short_rows_ascending(&self) -> Vec<Partition> {
        self.members
            .iter()
            .rev()
            .filter(|p| p.len() < self.rows)
            .cloned()
            .collect()
    }

    /// Members strictly contained in `lambda`, in box order.
    pub fn strictly_below(&self, lambda: &Partition) -> Vec<Partition> {
        self.members
            .iter()
            .filter(|m| *m != lambda && lambda.contains(m))
            .cloned()
            .collect()
    }
}

fn fill_box(rows: usize, max: i64, current: &mut Vec<i64>, out: &mut Vec<Partition>) {
    if current.len() == rows {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    let bound = current.last().copied().unwrap_or(max);
    for p in 0..=bound {
        current.push(p);
        fill_box(rows, max, current, out);
        current.pop();
    }
}

pub fn check_grassmannian(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidGrassmannian { k, n });
    }
    Ok(())
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {:?} in weight {:?}", t.trim(), s)))
        })
        .collect()
}

fn write_ints(f: &mut fmt::Formatter<'_>, parts: &[i64]) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}
