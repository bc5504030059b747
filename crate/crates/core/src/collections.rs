//! The three collections: Kapranov's `{L_λ U}` on `Gr(k, n)`, its mutated
//! form `⟨{L_λ U}_{λ ∈ B′}, {L_{μᵀ} Q}_{μ ∉ B′}⟩`, and the decomposition of
//! `Tot(U)` obtained by pushing forward the first block along the zero
//! section and pulling back the second.
//!
//! `B′` is the set of diagrams with exactly `k` rows. The `U`-block is
//! ordered by the box order (inclusion-reversing), the `Q`-block
//! inclusion-preserving.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bott::GradedDimension;
use crate::error::{Error, Result};
use crate::homspaces::{Engine, GrObject, TotHom, TotKind, TotObject};
use crate::linalg;
use crate::report::VerificationReport;
use crate::young::{binomial, check_grassmannian, Partition, YoungBox};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Grassmannian,
    TotalSpace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockLabel {
    Plain,
    /// pushed forward along the zero section
    JPart,
    /// pulled back along the projection
    PiPart,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionItem {
    pub label: BlockLabel,
    /// Diagram indexing the item (`λ` for `L_λ U`, `μ` for `L_{μᵀ} Q`).
    pub diagram: Partition,
    pub object: GrObject,
}

impl CollectionItem {
    pub fn name(&self) -> String {
        match self.label {
            BlockLabel::Plain => self.object.to_string(),
            BlockLabel::JPart => format!("push:{}", self.object),
            BlockLabel::PiPart => format!("pull:{}", self.object),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionSpec {
    pub space: Space,
    pub k: usize,
    pub n: usize,
    pub items: Vec<CollectionItem>,
    /// Strongness is only asserted where it is known to hold.
    pub claims_strong: bool,
    pub order: String,
}

impl CollectionSpec {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The same collection with items `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Result<CollectionSpec> {
        if i >= self.len() || j >= self.len() {
            return Err(Error::Parse(format!(
                "swap indices {i},{j} out of range for {} items",
                self.len()
            )));
        }
        let mut out = self.clone();
        out.items.swap(i, j);
        out.order = format!("{} with items {i} and {j} swapped", self.order);
        Ok(out)
    }

    pub fn tot_object(&self, i: usize) -> TotObject {
        let item = &self.items[i];
        match item.label {
            BlockLabel::PiPart => TotObject::pullback(item.object.clone()),
            _ => TotObject::pushforward(item.object.clone()),
        }
    }

    pub fn block_sizes(&self) -> (usize, usize) {
        let j = self.items.iter().filter(|i| i.label == BlockLabel::JPart).count();
        let pi = self.items.iter().filter(|i| i.label == BlockLabel::PiPart).count();
        (j, pi)
    }

    fn objects(&self) -> Vec<GrObject> {
        self.items.iter().map(|i| i.object.clone()).collect()
    }
}

/// `{L_λ U}` over the box order.
pub fn kapranov_collection(k: usize, n: usize) -> Result<CollectionSpec> {
    let diagrams = YoungBox::for_grassmannian(k, n)?;
    let items = diagrams
        .members()
        .iter()
        .map(|l| {
            Ok(CollectionItem {
                label: BlockLabel::Plain,
                diagram: l.clone(),
                object: GrObject::u_diagram(k, n, l)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CollectionSpec {
        space: Space::Grassmannian,
        k,
        n,
        items,
        claims_strong: true,
        order: "size descending, lex descending".into(),
    })
}

fn two_blocks(k: usize, n: usize, j_label: BlockLabel, pi_label: BlockLabel) -> Result<Vec<CollectionItem>> {
    check_grassmannian(k, n)?;
    let diagrams = YoungBox::new(k, n - k);
    let mut items = Vec::with_capacity(diagrams.len());
    for l in diagrams.exactly_full_rows() {
        items.push(CollectionItem {
            label: j_label,
            object: GrObject::u_diagram(k, n, &l)?,
            diagram: l,
        });
    }
    for mu in diagrams.short_rows_ascending() {
        items.push(CollectionItem {
            label: pi_label,
            object: GrObject::q_diagram(k, n, &mu.transpose())?,
            diagram: mu,
        });
    }
    Ok(items)
}

/// `⟨{L_λ U}_{λ ∈ B′}, {L_{μᵀ} Q}_{μ ∉ B′}⟩` on `Gr(k, n)`.
pub fn modified_collection(k: usize, n: usize) -> Result<CollectionSpec> {
    Ok(CollectionSpec {
        space: Space::Grassmannian,
        k,
        n,
        items: two_blocks(k, n, BlockLabel::Plain, BlockLabel::Plain)?,
        claims_strong: false,
        order: "U-block inclusion-reversing, Q-block inclusion-preserving".into(),
    })
}

/// `⟨{j_* L_λ U}_{λ ∈ B′}, {π^* L_{μᵀ} Q}_{μ ∉ B′}⟩` on `Tot(U)`.
pub fn total_space_collection(k: usize, n: usize) -> Result<CollectionSpec> {
    Ok(CollectionSpec {
        space: Space::TotalSpace,
        k,
        n,
        items: two_blocks(k, n, BlockLabel::JPart, BlockLabel::PiPart)?,
        claims_strong: false,
        order: "j_*-block inclusion-reversing, pi^*-block inclusion-preserving".into(),
    })
}

/// One entry of [`hom_matrix`]; `None` marks an unsupported direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomEntry {
    pub dims: Option<GradedDimension>,
    pub truncated: bool,
}

/// Entry `(i, j)` is the graded Hom from item `i` to item `j`.
pub fn hom_matrix(engine: &Engine, spec: &CollectionSpec, max_sym_degree: usize) -> Result<Vec<Vec<HomEntry>>> {
    let n = spec.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let entries = cells
        .par_iter()
        .map(|&(i, j)| match spec.space {
            Space::Grassmannian => Ok(HomEntry {
                dims: Some(engine.ext_gr(&spec.items[i].object, &spec.items[j].object)?),
                truncated: false,
            }),
            Space::TotalSpace => match engine.hom_tot(&spec.tot_object(i), &spec.tot_object(j), max_sym_degree) {
                Ok(TotHom { total, truncated, .. }) => Ok(HomEntry {
                    dims: Some(total),
                    truncated,
                }),
                Err(Error::UnsupportedDirection) => Ok(HomEntry {
                    dims: None,
                    truncated: false,
                }),
                Err(e) => Err(e),
            },
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(entries.chunks(n.max(1)).map(|c| c.to_vec()).collect())
}

/// Ordered pairs `(earlier, later)`.
fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Runs `probe` over `pairs` in parallel and returns the first failure in
/// pair order, as a witness string.
fn first_failure<F>(pairs: &[(usize, usize)], probe: F) -> Result<Option<String>>
where
    F: Fn(usize, usize) -> Result<Option<String>> + Sync,
{
    let results = pairs
        .par_iter()
        .map(|&(i, j)| probe(i, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(results.into_iter().flatten().next())
}

pub fn verify(engine: &Engine, spec: &CollectionSpec, max_sym_degree: usize) -> Result<VerificationReport> {
    match spec.space {
        Space::Grassmannian => verify_grassmannian(engine, spec),
        Space::TotalSpace => verify_total_space(engine, spec, max_sym_degree),
    }
}

fn describe(spec: &CollectionSpec, i: usize) -> String {
    format!("#{i} {}", spec.items[i].name())
}

fn verify_grassmannian(engine: &Engine, spec: &CollectionSpec) -> Result<VerificationReport> {
    let (k, n) = (spec.k, spec.n);
    let mut report = VerificationReport::new(format!("collection on Gr({k},{n})"));
    report
        .param("k", k)
        .param("n", n)
        .param("space", "grassmannian")
        .param("order", &spec.order);
    let items = spec.len();
    let pairs = ordered_pairs(items);

    let expected = binomial(n as u64, k as u64) as usize;
    report.check(
        "basis-size",
        items == expected,
        format!("{items} items, rank of K_0 is binomial({n},{k}) = {expected}"),
    );

    let exc: Vec<GradedDimension> = spec
        .items
        .par_iter()
        .map(|it| engine.ext_gr(&it.object, &it.object))
        .collect::<Result<_>>()?;
    let bad = exc.iter().position(|h| *h != GradedDimension::concentrated(0, 1));
    report.check(
        "exceptionality",
        bad.is_none(),
        match bad {
            None => format!("Hom(E,E) = {{0: 1}} for all {items} items"),
            Some(i) => format!("Hom({0}, {0}) = {1}", describe(spec, i), exc[i]),
        },
    );

    let semi = first_failure(&pairs, |i, j| {
        let h = engine.ext_gr(&spec.items[j].object, &spec.items[i].object)?;
        Ok((!h.is_zero()).then(|| format!("Hom({}, {}) = {h}", describe(spec, j), describe(spec, i))))
    })?;
    report.check(
        "semiorthogonality",
        semi.is_none(),
        semi.unwrap_or_else(|| format!("Hom(later, earlier) = 0 for all {} pairs", pairs.len())),
    );

    if spec.claims_strong {
        let all: Vec<(usize, usize)> = (0..items).flat_map(|i| (0..items).map(move |j| (i, j))).collect();
        let strong = first_failure(&all, |i, j| {
            let h = engine.ext_gr(&spec.items[i].object, &spec.items[j].object)?;
            Ok((!h.is_concentrated_in_zero())
                .then(|| format!("Hom({}, {}) = {h}", describe(spec, i), describe(spec, j))))
        })?;
        report.check(
            "strongness",
            strong.is_none(),
            strong.unwrap_or_else(|| format!("all {} Hom spaces concentrated in degree 0", all.len())),
        );
    }

    k_spanning_checks(engine, spec, &mut report, "")?;
    report.note("fullness: K-theoretic surrogate only");
    Ok(report)
}

/// Gram matrix of the items and the determinant of their classes in the
/// Kapranov basis.
fn k_spanning_checks(
    engine: &Engine,
    spec: &CollectionSpec,
    report: &mut VerificationReport,
    prefix: &str,
) -> Result<()> {
    let objs = spec.objects();
    let gram = objs
        .par_iter()
        .map(|a| {
            objs.iter()
                .map(|b| engine.euler_pairing(a, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<linalg::Matrix>>()?;
    let defect = linalg::upper_unitriangular_defect(&gram);
    report.check(
        format!("{prefix}gram-unitriangular"),
        defect.is_none(),
        defect.unwrap_or_else(|| format!("{0}x{0} Euler-pairing matrix is upper unitriangular", gram.len())),
    );

    let basis = engine.kbasis(spec.k, spec.n)?;
    if objs.len() != basis.dimension() {
        report.check(
            format!("{prefix}k-spanning"),
            false,
            format!("{} classes in a rank-{} lattice", objs.len(), basis.dimension()),
        );
        return Ok(());
    }
    let coords = objs
        .par_iter()
        .map(|o| basis.expand(&engine.kclass(o)?))
        .collect::<Result<linalg::Matrix>>()?;
    let det = linalg::determinant(&coords)?;
    report.check(
        format!("{prefix}k-spanning"),
        det.abs() == 1,
        format!("classes in the Kapranov basis have determinant {det}"),
    );
    Ok(())
}

fn verify_total_space(engine: &Engine, spec: &CollectionSpec, max_sym_degree: usize) -> Result<VerificationReport> {
    let (k, n) = (spec.k, spec.n);
    let mut report = VerificationReport::new(format!("decomposition of Tot(U) over Gr({k},{n})"));
    report
        .param("k", k)
        .param("n", n)
        .param("space", "total_space")
        .param("max_sym_degree", max_sym_degree)
        .param("order", &spec.order);

    let (j_count, pi_count) = spec.block_sizes();
    let (want_j, want_pi) = (
        binomial(n as u64 - 1, k as u64) as usize,
        binomial(n as u64 - 1, k as u64 - 1) as usize,
    );
    report.check(
        "block-sizes",
        j_count == want_j && pi_count == want_pi && j_count + pi_count == spec.len(),
        format!(
            "{j_count} pushforwards (expected {want_j}), {pi_count} pullbacks (expected {want_pi}), total {} = binomial({n},{k}) = {}",
            spec.len(),
            binomial(n as u64, k as u64)
        ),
    );

    let kind = |i: usize| spec.tot_object(i).kind;
    let pairs = ordered_pairs(spec.len());
    let of_kinds = |a: TotKind, b: TotKind| -> Vec<(usize, usize)> {
        pairs
            .iter()
            .copied()
            .filter(|&(i, j)| kind(i) == a && kind(j) == b)
            .collect()
    };

    let pp = of_kinds(TotKind::Pushforward, TotKind::Pushforward);
    let fail = first_failure(&pp, |i, j| {
        Ok(engine
            .pushpush_witness(&spec.items[j].object, &spec.items[i].object)?
            .map(|(m, h)| {
                format!(
                    "Hom({} (x) wedge^{m} U^dual, {}) = {h}",
                    describe(spec, j),
                    describe(spec, i)
                )
            }))
    })?;
    report.check(
        "pushforward-semiorthogonality",
        fail.is_none(),
        fail.unwrap_or_else(|| format!("{} pairs, Hom(F (x) wedge^m U^dual, E) = 0 for 0 <= m <= {k}", pp.len())),
    );

    let mixed = of_kinds(TotKind::Pushforward, TotKind::Pullback);
    let fail = first_failure(&mixed, |i, j| {
        let h = engine.ext_gr(&spec.items[j].object, &spec.items[i].object)?;
        Ok((!h.is_zero()).then(|| format!("Hom({}, {}) = {h}", describe(spec, j), describe(spec, i))))
    })?;
    let reversed = of_kinds(TotKind::Pullback, TotKind::Pushforward);
    let fail = fail.or_else(|| {
        reversed.first().map(|&(i, j)| {
            format!(
                "{} follows {}: Hom(j_*, pi^*) is not computed",
                describe(spec, j),
                describe(spec, i)
            )
        })
    });
    report.check(
        "mixed-semiorthogonality",
        fail.is_none(),
        fail.unwrap_or_else(|| format!("{} pairs, Hom(pi^*F, j_*E) = Hom(F, E) = 0", mixed.len())),
    );

    let pb = of_kinds(TotKind::Pullback, TotKind::Pullback);
    let fail = first_failure(&pb, |i, j| {
        Ok(engine
            .pullpull_witness(&spec.items[j].object, &spec.items[i].object)?
            .map(|(m, h)| {
                format!(
                    "Hom({} (x) wedge^{m} Q, {}) = {h}",
                    describe(spec, j),
                    describe(spec, i)
                )
            }))
    })?;
    report.check(
        "pullback-semiorthogonality",
        fail.is_none(),
        fail.unwrap_or_else(|| {
            format!(
                "{} pairs, Hom(F (x) wedge^m Q, E) = 0 for 0 <= m <= {}",
                pb.len(),
                n - k
            )
        }),
    );

    let pushes: Vec<usize> = (0..spec.len()).filter(|&i| kind(i) == TotKind::Pushforward).collect();
    let homs = pushes
        .par_iter()
        .map(|&i| engine.hom_tot(&spec.tot_object(i), &spec.tot_object(i), max_sym_degree))
        .collect::<Result<Vec<_>>>()?;
    let bad = homs.iter().position(|h| h.total != GradedDimension::concentrated(0, 1));
    report.check(
        "pushforward-exceptionality",
        bad.is_none(),
        match bad {
            None => format!("Hom(j_*E, j_*E) = {{0: 1}} for all {} pushforwards", pushes.len()),
            Some(p) => format!("Hom({0}, {0}) = {1}", describe(spec, pushes[p]), homs[p].total),
        },
    );

    let pulls: Vec<usize> = (0..spec.len()).filter(|&i| kind(i) == TotKind::Pullback).collect();
    let homs = pulls
        .par_iter()
        .map(|&i| engine.hom_tot(&spec.tot_object(i), &spec.tot_object(i), max_sym_degree))
        .collect::<Result<Vec<_>>>()?;
    let mut fail = None;
    'outer: for (p, h) in pulls.iter().zip(&homs) {
        for (m, stratum) in h.strata.iter().enumerate() {
            let want = binomial((n + m - 1) as u64, m as u64);
            if *stratum != GradedDimension::concentrated(0, want) {
                fail = Some(format!(
                    "Hom({0}, {0}) in symmetric degree {m} is {stratum}, expected {{0: {want}}}",
                    describe(spec, *p)
                ));
                break 'outer;
            }
        }
    }
    report.check(
        "pullback-endomorphisms",
        fail.is_none(),
        fail.unwrap_or_else(|| {
            let dims: Vec<String> = (0..=max_sym_degree)
                .map(|m| binomial((n + m - 1) as u64, m as u64).to_string())
                .collect();
            format!(
                "all {} pullbacks: degree-m strata = dim S^m V^dual = [{}] for m <= {max_sym_degree}",
                pulls.len(),
                dims.join(", ")
            )
        }),
    );

    let base = CollectionSpec {
        space: Space::Grassmannian,
        claims_strong: false,
        ..spec.clone()
    };
    k_spanning_checks(engine, &base, &mut report, "base-")?;
    report.note("fullness: K-theoretic surrogate only");
    report.note("pi^*-block order is inclusion-preserving (not fixed by the decomposition statement)");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn names(spec: &CollectionSpec) -> Vec<String> {
        spec.items.iter().map(|i| i.name()).collect()
    }

    #[test]
    fn kapranov_examples() {
        assert_eq!(
            names(&kapranov_collection(1, 4).unwrap()),
            vec!["U[3]", "U[2]", "U[1]", "O"]
        );
        assert_eq!(kapranov_collection(2, 4).unwrap().len(), 6);
        let c = kapranov_collection(3, 4).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.items[0].diagram, p(&[1, 1, 1]));
    }

    #[test]
    fn modified_examples() {
        assert_eq!(names(&modified_collection(1, 2).unwrap()), vec!["U[1]", "O"]);
        assert_eq!(
            names(&modified_collection(2, 4).unwrap()),
            vec!["U[2,2]", "U[2,1]", "U[1,1]", "O", "Q[1,0]", "Q[1,1]"]
        );
        assert_eq!(names(&modified_collection(1, 3).unwrap()), vec!["U[2]", "U[1]", "O"]);
    }

    #[test]
    fn total_space_block_sizes() {
        for (k, n, j, pi) in [(1, 4, 3, 1), (2, 4, 3, 3), (3, 4, 1, 3)] {
            assert_eq!(total_space_collection(k, n).unwrap().block_sizes(), (j, pi));
        }
        assert_eq!(
            names(&total_space_collection(1, 3).unwrap()),
            vec!["push:U[2]", "push:U[1]", "pull:O"]
        );
    }

    #[test]
    fn small_verifications_pass() {
        let eng = Engine::new();
        for (k, n) in [(1, 2), (1, 3), (2, 4)] {
            let r = verify(&eng, &kapranov_collection(k, n).unwrap(), 6).unwrap();
            assert!(r.passed(), "{r}");
            let r = verify(&eng, &modified_collection(k, n).unwrap(), 6).unwrap();
            assert!(r.passed(), "{r}");
            let r = verify(&eng, &total_space_collection(k, n).unwrap(), 6).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn misordered_pushforwards_fail_with_witness() {
        let eng = Engine::new();
        let bad = total_space_collection(2, 4).unwrap().swapped(0, 1).unwrap();
        let r = verify(&eng, &bad, 6).unwrap();
        assert!(!r.passed());
        let fail = r
            .failures()
            .find(|c| c.name == "pushforward-semiorthogonality")
            .unwrap();
        // Hom(L_{2,2}U, L_{2,1}U) = H^0(U^dual) = V^dual
        assert!(fail.witness.contains("{0: 4}"), "{}", fail.witness);
    }

    #[test]
    fn hom_matrix_examples() {
        let eng = Engine::new();
        let m = hom_matrix(&eng, &kapranov_collection(1, 2).unwrap(), 6).unwrap();
        let dims: Vec<Vec<GradedDimension>> = m
            .iter()
            .map(|r| r.iter().map(|e| e.dims.clone().unwrap()).collect())
            .collect();
        assert_eq!(
            dims,
            vec![
                vec![GradedDimension::concentrated(0, 1), GradedDimension::concentrated(0, 2)],
                vec![GradedDimension::zero(), GradedDimension::concentrated(0, 1)],
            ]
        );

        let m = hom_matrix(&eng, &total_space_collection(1, 2).unwrap(), 6).unwrap();
        assert_eq!(m[1][0].dims, Some(GradedDimension::zero()));
        assert_eq!(m[0][1].dims, None);
        assert!(m[1][1].truncated);
    }
}
