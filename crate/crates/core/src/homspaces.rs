//! Graded Hom spaces on `Gr(k, n)` and on the total space `Tot(U)`.
//!
//! Objects are direct sums of shifted irreducible bundles. On `Tot(U)` only
//! pullbacks `π^*E` and pushforwards `j_*E` along the zero section occur:
//!
//! * `Hom(j_*F, j_*E) = ⊕_{i=0}^{k} Hom(F ⊗ Λ^i U∨, E)[−i]`
//! * `Hom(π^*F, j_*E) = Hom(F, E)`
//! * `Hom(π^*F, π^*E) = ⊕_{m≥0} Hom(F, E ⊗ S^m U∨)`, reported per
//!   symmetric degree up to a bound.
//!
//! Vanishing of the infinite pullback sum is decided by the finite test
//! against `F ⊗ Λ^m Q`, `0 ≤ m ≤ n − k`, which is equivalent.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bott::{bwb, cohomology, Cohomology, GradedDimension};
use crate::cache::{CacheKey, ResultCache};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::tensor::BundleExpression;
use crate::young::{check_grassmannian, Partition, Weight, YoungBox};

pub const DEFAULT_MAX_SYM_DEGREE: usize = 6;

/// An object of `D^b(Gr(k, n))`: a direct sum of shifted bundle expressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrObject {
    k: usize,
    n: usize,
    /// shift -> expression placed at that shift; never holds a zero expression
    parts: BTreeMap<i64, BundleExpression>,
}

impl GrObject {
    pub fn zero(k: usize, n: usize) -> Result<Self> {
        check_grassmannian(k, n)?;
        Ok(GrObject {
            k,
            n,
            parts: BTreeMap::new(),
        })
    }

    /// `expr[shift]`.
    pub fn new(expr: BundleExpression, shift: i64) -> Self {
        let (k, n) = expr.context();
        let mut parts = BTreeMap::new();
        if !expr.is_zero() {
            parts.insert(shift, expr);
        }
        GrObject { k, n, parts }
    }

    /// `L_λ U` for a diagram `λ`.
    pub fn u_diagram(k: usize, n: usize, lambda: &Partition) -> Result<Self> {
        Ok(GrObject::new(BundleExpression::u_diagram(k, n, lambda)?, 0))
    }

    /// `L_λ Q` for a diagram `λ`.
    pub fn q_diagram(k: usize, n: usize, lambda: &Partition) -> Result<Self> {
        Ok(GrObject::new(BundleExpression::q_diagram(k, n, lambda)?, 0))
    }

    pub fn context(&self) -> (usize, usize) {
        (self.k, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (i64, &BundleExpression)> {
        self.parts.iter().map(|(&s, e)| (s, e))
    }

    fn check_context(&self, other: &GrObject) -> Result<()> {
        if self.context() != other.context() {
            return Err(Error::ContextMismatch(self.k, self.n, other.k, other.n));
        }
        Ok(())
    }

    pub fn shifted(&self, s: i64) -> GrObject {
        GrObject {
            k: self.k,
            n: self.n,
            parts: self.parts.iter().map(|(&t, e)| (t + s, e.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &GrObject) -> Result<GrObject> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (&s, e) in &other.parts {
            let merged = match out.parts.remove(&s) {
                Some(existing) => existing.sum(e)?,
                None => e.clone(),
            };
            out.parts.insert(s, merged);
        }
        Ok(out)
    }

    /// Tensor product with a bundle expression (placed in degree 0).
    pub fn tensor_bundle(&self, b: &BundleExpression) -> Result<GrObject> {
        let mut out = GrObject::zero(self.k, self.n)?;
        for (&s, e) in &self.parts {
            out = out.direct_sum(&GrObject::new(e.tensor(b)?, s))?;
        }
        Ok(out)
    }
}

impl fmt::Display for GrObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, e)) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *s == 0 {
                write!(f, "{e}")?;
            } else if e.num_terms() == 1 {
                write!(f, "{e}@{s}")?;
            } else {
                write!(f, "({e})@{s}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TotKind {
    Pullback,
    Pushforward,
}

/// `π^*E` or `j_*E` on `Tot(U)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotObject {
    pub kind: TotKind,
    pub base: GrObject,
}

impl TotObject {
    pub fn pullback(base: GrObject) -> Self {
        TotObject {
            kind: TotKind::Pullback,
            base,
        }
    }

    pub fn pushforward(base: GrObject) -> Self {
        TotObject {
            kind: TotKind::Pushforward,
            base,
        }
    }
}

impl fmt::Display for TotObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TotKind::Pullback => write!(f, "pull:{}", self.base),
            TotKind::Pushforward => write!(f, "push:{}", self.base),
        }
    }
}

/// Graded Hom on `Tot(U)`, with the per-summand breakdown it was assembled
/// from: by `i` for two pushforwards, by symmetric degree `m` for two
/// pullbacks, a single stratum otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotHom {
    pub total: GradedDimension,
    pub strata: Vec<GradedDimension>,
    /// Set when the sum is infinite and its last computed stratum is nonzero.
    pub truncated: bool,
}

/// Class in `K_0(Gr(k, n))`, as the vector `(χ(L_λ U, X))_λ` over the box
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KClass {
    k: usize,
    n: usize,
    coords: Vec<i64>,
}

impl KClass {
    pub fn new(k: usize, n: usize, coords: Vec<i64>) -> Result<Self> {
        let expected = YoungBox::for_grassmannian(k, n)?.len();
        if coords.len() != expected {
            return Err(Error::KClassLength {
                expected,
                found: coords.len(),
            });
        }
        Ok(KClass { k, n, coords })
    }

    pub fn zero(k: usize, n: usize) -> Result<Self> {
        let len = YoungBox::for_grassmannian(k, n)?.len();
        Ok(KClass {
            k,
            n,
            coords: vec![0; len],
        })
    }

    pub fn context(&self) -> (usize, usize) {
        (self.k, self.n)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, c: i64) -> KClass {
        KClass {
            k: self.k,
            n: self.n,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Equal to `other` or to `−other`.
    pub fn eq_up_to_sign(&self, other: &KClass) -> bool {
        self == other || *self == -other.clone()
    }
}

impl Add for KClass {
    type Output = KClass;

    fn add(self, rhs: KClass) -> KClass {
        assert_eq!(self.context(), rhs.context(), "K-classes from different Grassmannians");
        KClass {
            k: self.k,
            n: self.n,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for KClass {
    type Output = KClass;

    fn sub(self, rhs: KClass) -> KClass {
        self + (-rhs)
    }
}

impl Neg for KClass {
    type Output = KClass;

    fn neg(self) -> KClass {
        self.scale(-1)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// The Kapranov basis `{[L_λ U]}` of `K_0(Gr(k, n))` with its Gram matrix
/// `G[i][j] = χ(L_{λ_i} U, L_{λ_j} U)`. In the box order the matrix is
/// upper unitriangular.
#[derive(Clone, Debug)]
pub struct KBasis {
    k: usize,
    n: usize,
    diagrams: YoungBox,
    gram: Matrix,
}

impl KBasis {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagrams(&self) -> &YoungBox {
        &self.diagrams
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dimension(&self) -> usize {
        self.diagrams.len()
    }

    /// Coordinates `c` with `[X] = Σ c_λ [L_λ U]`, i.e. `G · c = v`.
    pub fn expand(&self, v: &KClass) -> Result<Vec<i64>> {
        if v.context() != (self.k, self.n) {
            return Err(Error::ContextMismatch(v.k, v.n, self.k, self.n));
        }
        linalg::solve_upper_unitriangular(&self.gram, &v.coords)
    }

    /// The class with the given basis coordinates.
    pub fn class_of(&self, coeffs: &[i64]) -> Result<KClass> {
        KClass::new(self.k, self.n, linalg::mat_vec(&self.gram, coeffs)?)
    }

    /// The class of the basis element at box position `i`.
    pub fn basis_class(&self, i: usize) -> KClass {
        KClass {
            k: self.k,
            n: self.n,
            coords: self.gram.iter().map(|row| row[i]).collect(),
        }
    }

    /// `χ(a, b)` for classes.
    pub fn pairing(&self, a: &KClass, b: &KClass) -> Result<i64> {
        linalg::dot(&self.expand(a)?, &b.coords)
    }
}

/// Computes and memoizes Ext groups between irreducible bundles. Cheap to
/// clone; clones share the cache.
#[derive(Clone, Debug)]
pub struct Engine {
    cache: Arc<ResultCache>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            cache: Arc::new(ResultCache::in_memory()),
        }
    }

    pub fn with_cache(cache: ResultCache) -> Self {
        Engine { cache: Arc::new(cache) }
    }

    pub fn cache(&self) -> &ResultCache {
        &self.cache
    }

    /// `bwb` through the cache.
    pub fn bwb(&self, k: usize, n: usize, alpha: &Weight, beta: &Weight) -> Result<Cohomology> {
        let key = CacheKey::new("bwb", k, n, vec![alpha.clone(), beta.clone()]);
        self.cache.get_or_compute(&key, || bwb(k, n, alpha, beta))
    }

    /// `Ext^•(L_a U ⊗ L_b Q, L_c U ⊗ L_d Q)`.
    pub fn ext_irreducible(
        &self,
        k: usize,
        n: usize,
        from: (&Weight, &Weight),
        to: (&Weight, &Weight),
    ) -> Result<GradedDimension> {
        let key = CacheKey::new(
            "ext",
            k,
            n,
            vec![from.0.clone(), from.1.clone(), to.0.clone(), to.1.clone()],
        );
        self.cache.get_or_compute(&key, || {
            let f = BundleExpression::irreducible(k, n, from.0.clone(), from.1.clone())?;
            let e = BundleExpression::irreducible(k, n, to.0.clone(), to.1.clone())?;
            cohomology(&f.dual().tensor(&e)?)
        })
    }

    /// `Ext^•` between two bundle expressions, bilinearly.
    pub fn ext_bundles(&self, f: &BundleExpression, e: &BundleExpression) -> Result<GradedDimension> {
        if f.context() != e.context() {
            return Err(Error::ContextMismatch(f.k(), f.n(), e.k(), e.n()));
        }
        let (k, n) = f.context();
        let mut out = GradedDimension::zero();
        for (fu, fq, fm) in f.terms() {
            for (eu, eq, em) in e.terms() {
                let ext = self.ext_irreducible(k, n, (fu, fq), (eu, eq))?;
                let m = fm.checked_mul(em).ok_or(Error::Overflow("ext multiplicity"))?;
                out.add_all(&ext.scale(m)?)?;
            }
        }
        Ok(out)
    }

    /// `Hom^•(F, E)` on the Grassmannian.
    pub fn ext_gr(&self, f: &GrObject, e: &GrObject) -> Result<GradedDimension> {
        f.check_context(e)?;
        let mut out = GradedDimension::zero();
        for (a, fe) in f.parts() {
            for (b, ee) in e.parts() {
                out.add_all(&self.ext_bundles(fe, ee)?.shift(b - a))?;
            }
        }
        Ok(out)
    }

    /// `Hom^•(F, E)` on `Tot(U)`.
    pub fn hom_tot(&self, f: &TotObject, e: &TotObject, max_sym_degree: usize) -> Result<TotHom> {
        f.base.check_context(&e.base)?;
        let (k, n) = f.base.context();
        match (f.kind, e.kind) {
            (TotKind::Pushforward, TotKind::Pushforward) => {
                let mut strata = Vec::with_capacity(k + 1);
                let mut total = GradedDimension::zero();
                for i in 0..=k {
                    let twisted = f.base.tensor_bundle(&BundleExpression::wedge_u_dual(k, n, i)?)?;
                    let s = self.ext_gr(&twisted, &e.base)?.shift(-(i as i64));
                    total.add_all(&s)?;
                    strata.push(s);
                }
                Ok(TotHom {
                    total,
                    strata,
                    truncated: false,
                })
            }
            (TotKind::Pullback, TotKind::Pushforward) => {
                let total = self.ext_gr(&f.base, &e.base)?;
                Ok(TotHom {
                    strata: vec![total.clone()],
                    total,
                    truncated: false,
                })
            }
            (TotKind::Pullback, TotKind::Pullback) => {
                let mut strata = Vec::with_capacity(max_sym_degree + 1);
                let mut total = GradedDimension::zero();
                for m in 0..=max_sym_degree {
                    let twisted = e.base.tensor_bundle(&BundleExpression::sym_u_dual(k, n, m)?)?;
                    let s = self.ext_gr(&f.base, &twisted)?;
                    total.add_all(&s)?;
                    strata.push(s);
                }
                let truncated = strata.last().is_some_and(|s| !s.is_zero());
                Ok(TotHom {
                    total,
                    strata,
                    truncated,
                })
            }
            (TotKind::Pushforward, TotKind::Pullback) => Err(Error::UnsupportedDirection),
        }
    }

    /// First `m ∈ [0, n−k]` with `Hom^•(F ⊗ Λ^m Q, E) ≠ 0`, with that Hom.
    pub fn pullpull_witness(&self, f: &GrObject, e: &GrObject) -> Result<Option<(usize, GradedDimension)>> {
        f.check_context(e)?;
        let (k, n) = f.context();
        for m in 0..=n - k {
            let twisted = f.tensor_bundle(&BundleExpression::wedge_q(k, n, m)?)?;
            let h = self.ext_gr(&twisted, e)?;
            if !h.is_zero() {
                return Ok(Some((m, h)));
            }
        }
        Ok(None)
    }

    /// True iff `⟨π^*E, π^*F⟩` is semiorthogonal on `Tot(U)`.
    pub fn pullpull_vanishing(&self, f: &GrObject, e: &GrObject) -> Result<bool> {
        Ok(self.pullpull_witness(f, e)?.is_none())
    }

    /// First `m ∈ [0, k]` with `Hom^•(F ⊗ Λ^m U∨, E) ≠ 0`, with that Hom.
    pub fn pushpush_witness(&self, f: &GrObject, e: &GrObject) -> Result<Option<(usize, GradedDimension)>> {
        f.check_context(e)?;
        let (k, n) = f.context();
        for m in 0..=k {
            let twisted = f.tensor_bundle(&BundleExpression::wedge_u_dual(k, n, m)?)?;
            let h = self.ext_gr(&twisted, e)?;
            if !h.is_zero() {
                return Ok(Some((m, h)));
            }
        }
        Ok(None)
    }

    /// True iff `⟨j_*E, j_*F⟩` is semiorthogonal on `Tot(U)`.
    pub fn pushpush_vanishing(&self, f: &GrObject, e: &GrObject) -> Result<bool> {
        Ok(self.pushpush_witness(f, e)?.is_none())
    }

    /// `χ(F, E) = Σ (−1)^i dim Ext^i(F, E)`.
    pub fn euler_pairing(&self, f: &GrObject, e: &GrObject) -> Result<i64> {
        Ok(self.ext_gr(f, e)?.euler())
    }

    pub fn kclass(&self, x: &GrObject) -> Result<KClass> {
        let (k, n) = x.context();
        let diagrams = YoungBox::for_grassmannian(k, n)?;
        let coords = diagrams
            .members()
            .iter()
            .map(|lambda| self.euler_pairing(&GrObject::u_diagram(k, n, lambda)?, x))
            .collect::<Result<Vec<_>>>()?;
        KClass::new(k, n, coords)
    }

    pub fn gram_matrix(&self, k: usize, n: usize) -> Result<Matrix> {
        let diagrams = YoungBox::for_grassmannian(k, n)?;
        let objs = diagrams
            .members()
            .iter()
            .map(|l| GrObject::u_diagram(k, n, l))
            .collect::<Result<Vec<_>>>()?;
        objs.iter()
            .map(|a| objs.iter().map(|b| self.euler_pairing(a, b)).collect())
            .collect()
    }

    pub fn kbasis(&self, k: usize, n: usize) -> Result<KBasis> {
        Ok(KBasis {
            k,
            n,
            diagrams: YoungBox::for_grassmannian(k, n)?,
            gram: self.gram_matrix(k, n)?,
        })
    }

    /// Coordinates of `v` in the basis `{[L_λ U]}`.
    pub fn expand_in_basis(&self, v: &KClass) -> Result<Vec<i64>> {
        let (k, n) = v.context();
        self.kbasis(k, n)?.expand(v)
    }
}
