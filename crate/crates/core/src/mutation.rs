//! Mutations of exceptional collections, tracked in `K_0(Gr(k, n))`.
//!
//! For an exceptional pair `⟨A, B⟩` the right mutation of `A` through `B`
//! has class `[A] − χ(A, B)[B]` and the left mutation of `B` through `A`
//! has class `[B] − χ(A, B)[A]`. Shifts only flip signs, so results are
//! compared up to sign.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homspaces::{Engine, GrObject, KBasis, KClass};
use crate::linalg;
use crate::report::VerificationReport;
use crate::tensor::BundleExpression;
use crate::young::{Partition, YoungBox};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KCollection {
    pub classes: Vec<KClass>,
}

impl KCollection {
    pub fn new(classes: Vec<KClass>) -> Self {
        KCollection { classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Item-wise equality up to a sign per item.
    pub fn eq_up_to_signs(&self, other: &KCollection) -> bool {
        self.len() == other.len() && self.classes.iter().zip(&other.classes).all(|(a, b)| a.eq_up_to_sign(b))
    }
}

/// `[A] − χ(A, B)·[B]`.
pub fn right_mutation_k(basis: &KBasis, a: &KClass, b: &KClass) -> Result<KClass> {
    let chi = basis.pairing(a, b)?;
    Ok(a.clone() - b.scale(chi))
}

/// `[B] − χ(A, B)·[A]`.
pub fn left_mutation_k(basis: &KBasis, a: &KClass, b: &KClass) -> Result<KClass> {
    let chi = basis.pairing(a, b)?;
    Ok(b.clone() - a.scale(chi))
}

/// Moves the last class to the front by left mutations through all others.
pub fn rotate_right_k(basis: &KBasis, coll: &KCollection) -> Result<KCollection> {
    let Some((last, rest)) = coll.classes.split_last() else {
        return Ok(coll.clone());
    };
    let mut moved = last.clone();
    for e in rest.iter().rev() {
        moved = left_mutation_k(basis, e, &moved)?;
    }
    let mut classes = Vec::with_capacity(coll.len());
    classes.push(moved);
    classes.extend_from_slice(rest);
    Ok(KCollection { classes })
}

/// Moves the first class to the end by right mutations through all others.
pub fn rotate_left_k(basis: &KBasis, coll: &KCollection) -> Result<KCollection> {
    let Some((first, rest)) = coll.classes.split_first() else {
        return Ok(coll.clone());
    };
    let mut moved = first.clone();
    for e in rest {
        moved = right_mutation_k(basis, &moved, e)?;
    }
    let mut classes = rest.to_vec();
    classes.push(moved);
    Ok(KCollection { classes })
}

fn check_in_box(lambda: &Partition, k: usize, n: usize) -> Result<YoungBox> {
    let diagrams = YoungBox::for_grassmannian(k, n)?;
    if !diagrams.contains(lambda) {
        return Err(Error::OutsideBox {
            diagram: lambda.to_string(),
            rows: k,
            cols: n - k,
        });
    }
    Ok(diagrams)
}

fn q_of_transpose(k: usize, n: usize, mu: &Partition) -> Result<GrObject> {
    GrObject::q_diagram(k, n, &mu.transpose())
}

/// Checks the resolution
/// `0 → L_λ U → F_{|λ|−1} → … → F_0 → L_{λᵀ} Q → 0` with
/// `F_m = ⊕_{μ ⊊ λ, |μ| = m} Hom⁰(L_{μᵀ} Q, L_{λᵀ} Q) ⊗ L_μ U`, the
/// multiplicities computed by Borel–Weil–Bott.
pub fn verify_resolution(engine: &Engine, lambda: &Partition, k: usize, n: usize) -> Result<VerificationReport> {
    let diagrams = check_in_box(lambda, k, n)?;
    let mut report = VerificationReport::new(format!("resolution of L_{{({lambda})^T}}Q on Gr({k},{n})"));
    report.param("k", k).param("n", n).param("lambda", lambda);

    let target = q_of_transpose(k, n, lambda)?;
    let mut outside = None;
    let mut higher = None;
    let mut terms: Vec<GrObject> = vec![GrObject::zero(k, n)?; lambda.size() + 1];
    let mut top_mult = 0;
    for alpha in diagrams.members() {
        let h = engine.ext_gr(&q_of_transpose(k, n, alpha)?, &target)?;
        if !lambda.contains(alpha) {
            if !h.is_zero() && outside.is_none() {
                outside = Some(format!("alpha = ({alpha}) not in lambda: Hom = {h}"));
            }
            continue;
        }
        if !h.is_concentrated_in_zero() && higher.is_none() {
            higher = Some(format!("alpha = ({alpha}): Hom = {h}"));
        }
        let mult = h.get(0);
        if alpha == lambda {
            top_mult = mult;
            continue;
        }
        let piece = GrObject::new(BundleExpression::u_diagram(k, n, alpha)?.scale(mult)?, 0);
        terms[alpha.size()] = terms[alpha.size()].direct_sum(&piece)?;
    }
    report.check(
        "hom-support",
        outside.is_none(),
        outside.unwrap_or_else(|| "Hom(L_{alpha^T}Q, L_{lambda^T}Q) = 0 unless alpha is inside lambda".into()),
    );
    report.check(
        "higher-ext-vanishing",
        higher.is_none(),
        higher.unwrap_or_else(|| "all Hom(L_{alpha^T}Q, L_{lambda^T}Q) concentrated in degree 0".into()),
    );
    report.check(
        "leftmost-term",
        top_mult == 1,
        format!("Hom^0(L_{{lambda^T}}Q, L_{{lambda^T}}Q) = {top_mult}"),
    );

    // [L_{λᵀ}Q] = Σ_m (−1)^m [F_m] + (−1)^{|λ|} [L_λ U]
    let lambda_u = GrObject::u_diagram(k, n, lambda)?;
    let sign = |m: usize| if m.is_multiple_of(2) { 1 } else { -1 };
    let mut rhs = engine.kclass(&lambda_u)?.scale(sign(lambda.size()));
    let mut rank_rhs = sign(lambda.size()) * rank_of(&lambda_u)?;
    let mut witness_terms = Vec::new();
    for (m, f) in terms.iter().enumerate().take(lambda.size()) {
        rhs = rhs + engine.kclass(f)?.scale(sign(m));
        rank_rhs += sign(m) * rank_of(f)?;
        witness_terms.push(format!("F_{m} = {f}"));
    }
    let lhs = engine.kclass(&target)?;
    report.check(
        "k-identity",
        lhs == rhs,
        format!(
            "[L_{{lambda^T}}Q] = {lhs}, alternating sum = {rhs}; {}",
            witness_terms.join("; ")
        ),
    );
    let rank_lhs = rank_of(&target)?;
    report.check(
        "rank-identity",
        rank_lhs == rank_rhs,
        format!("rank {rank_lhs} vs alternating rank sum {rank_rhs}"),
    );
    Ok(report)
}

fn rank_of(x: &GrObject) -> Result<i64> {
    let mut r = 0i64;
    for (shift, e) in x.parts() {
        let d = e.rank()? as i64;
        r += if shift.rem_euclid(2) == 0 { d } else { -d };
    }
    Ok(r)
}

/// Rotates `⟨L_λ U, {L_μ U}_{μ ⊊ λ}⟩` step by step into
/// `⟨{L_{μᵀ} Q}_{μ ⊊ λ}, L_{λᵀ} Q⟩` and compares classes up to sign.
pub fn verify_mutation_equivalence(
    engine: &Engine,
    lambda: &Partition,
    k: usize,
    n: usize,
) -> Result<VerificationReport> {
    let diagrams = check_in_box(lambda, k, n)?;
    let basis = engine.kbasis(k, n)?;
    let mut report = VerificationReport::new(format!("mutation equivalence for lambda = ({lambda}) on Gr({k},{n})"));
    report.param("k", k).param("n", n).param("lambda", lambda);

    let mut chain = vec![lambda.clone()];
    chain.extend(diagrams.strictly_below(lambda));

    let mut u_block: Vec<KClass> = chain
        .iter()
        .map(|mu| engine.kclass(&GrObject::u_diagram(k, n, mu)?))
        .collect::<Result<_>>()?;
    let mut q_block: Vec<KClass> = Vec::with_capacity(chain.len());
    let mut step_failure = None;
    for mu in &chain {
        let sub = KCollection::new(std::mem::take(&mut u_block));
        let mut rotated = rotate_left_k(&basis, &sub)?.classes;
        let moved = rotated.pop().expect("nonempty sub-collection");
        let expected = engine.kclass(&q_of_transpose(k, n, mu)?)?;
        if !moved.eq_up_to_sign(&expected) && step_failure.is_none() {
            step_failure = Some(format!(
                "rotating out L_{{{mu}}}U gave {moved}, expected +-{expected} = +-[L_{{{mu}^T}}Q]"
            ));
        }
        q_block.insert(0, moved);
        u_block = rotated;
    }
    report.check(
        "rotation-steps",
        step_failure.is_none(),
        step_failure.unwrap_or_else(|| format!("each of {} left rotations ends in +-[L_{{mu^T}}Q]", chain.len())),
    );

    let target: Vec<KClass> = chain
        .iter()
        .rev()
        .map(|mu| engine.kclass(&q_of_transpose(k, n, mu)?))
        .collect::<Result<_>>()?;
    let target = KCollection::new(target);
    let result = KCollection::new(q_block);
    report.check(
        "final-collection",
        result.eq_up_to_signs(&target),
        format!("{} classes compared item by item up to sign", target.len()),
    );

    // the Q-collection is itself exceptional in this order
    let gram = target
        .classes
        .iter()
        .map(|a| {
            target
                .classes
                .iter()
                .map(|b| basis.pairing(a, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<linalg::Matrix>>()?;
    let defect = linalg::upper_unitriangular_defect(&gram);
    report.check(
        "target-gram-unitriangular",
        defect.is_none(),
        defect.unwrap_or_else(|| "Euler pairings of the Q-collection are upper unitriangular".into()),
    );
    Ok(report)
}

/// Result of rotating the full Kapranov collection `binomial(n, k)` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Periodicity {
    pub rotations: usize,
    /// Every class came back to itself up to sign.
    pub returns_to_original: bool,
    /// Every class came back as `±[E ⊗ ω]`.
    pub matches_serre_twist: bool,
}

pub fn rotation_periodicity(engine: &Engine, k: usize, n: usize) -> Result<Periodicity> {
    let basis = engine.kbasis(k, n)?;
    let objects: Vec<GrObject> = basis
        .diagrams()
        .members()
        .iter()
        .map(|l| GrObject::u_diagram(k, n, l))
        .collect::<Result<_>>()?;
    let start = KCollection::new(objects.iter().map(|o| engine.kclass(o)).collect::<Result<_>>()?);
    let mut coll = start.clone();
    for _ in 0..start.len() {
        coll = rotate_right_k(&basis, &coll)?;
    }
    let omega = BundleExpression::canonical(k, n)?;
    let twisted = KCollection::new(
        objects
            .iter()
            .map(|o| engine.kclass(&o.tensor_bundle(&omega)?))
            .collect::<Result<_>>()?,
    );
    Ok(Periodicity {
        rotations: start.len(),
        returns_to_original: coll.eq_up_to_signs(&start),
        matches_serre_twist: coll.eq_up_to_signs(&twisted),
    })
}
