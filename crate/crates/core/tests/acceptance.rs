//! Acceptance run: one line per criterion, exit status 1 if any fails.
//! All comparisons are exact integer equalities (zero tolerance); the only
//! numeric threshold is the wall-clock budget of criterion 1.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use common::*;
use grsod::bott::{bwb, cohomology, euler_characteristic, Cohomology, GradedDimension};
use grsod::collections::{kapranov_collection, total_space_collection, verify, BlockLabel};
use grsod::homspaces::{Engine, TotObject};
use grsod::mutation::{verify_mutation_equivalence, verify_resolution};
use grsod::tensor::{lr_product, BundleExpression};
use grsod::young::{binomial, Weight, YoungBox};

const BIN: &str = env!("CARGO_BIN_EXE_grsod");
const MAX_SYM_DEGREE: usize = 6;
const TOTAL_SPACE_BUDGET: Duration = Duration::from_secs(300);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn grassmannians(max_n: usize) -> impl Iterator<Item = (usize, usize)> {
    (2..=max_n).flat_map(|n| (1..n).map(move |k| (k, n)))
}

fn run_cli(args: &[&str]) -> (Option<i32>, Value) {
    let out = Command::new(BIN)
        .args(args)
        .env_remove("SOD_CACHE_DIR")
        .output()
        .unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v)
}

fn check_names(v: &Value) -> Vec<(String, String)> {
    v["checks"]
        .as_array()
        .map(|cs| {
            cs.iter()
                .map(|c| {
                    (
                        c["name"].as_str().unwrap_or("").into(),
                        c["verdict"].as_str().unwrap_or("").into(),
                    )
                })
                .collect()
        })
        .unwrap_or_default()
}

fn main_theorem() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for (k, n) in grassmannians(6) {
        let (ks, ns) = (k.to_string(), n.to_string());
        let (code, v) = run_cli(&["verify-total-space", "--k", &ks, "--n", &ns]);
        if code != Some(0) {
            return Err(format!("Gr({k},{n}): exit {code:?}, report {v}"));
        }
        let checks = check_names(&v);
        for needed in [
            "block-sizes",
            "pushforward-exceptionality",
            "pushforward-semiorthogonality",
            "mixed-semiorthogonality",
            "pullback-semiorthogonality",
        ] {
            if !checks.iter().any(|(name, verdict)| name == needed && verdict == "pass") {
                return Err(format!("Gr({k},{n}): check {needed} missing or failed"));
            }
        }
        let items = v["result"]["items"].as_array().map(Vec::len).unwrap_or(0);
        let push = v["result"]["items"]
            .as_array()
            .map(|a| {
                a.iter()
                    .filter(|s| s.as_str().is_some_and(|s| s.starts_with("push:")))
                    .count()
            })
            .unwrap_or(0);
        let (ku, nu) = (k as u64, n as u64);
        if push as u64 != binomial(nu - 1, ku) || (items - push) as u64 != binomial(nu - 1, ku - 1) {
            return Err(format!(
                "Gr({k},{n}): {push} pushforwards and {} pullbacks",
                items - push
            ));
        }
        runs += 1;
    }
    let elapsed = start.elapsed();
    if elapsed > TOTAL_SPACE_BUDGET {
        return Err(format!("{runs} runs took {elapsed:.1?}, budget {TOTAL_SPACE_BUDGET:?}"));
    }
    Ok(format!(
        "{runs} Grassmannians with n <= 6 in {elapsed:.1?} (budget {TOTAL_SPACE_BUDGET:?})"
    ))
}

fn endomorphism_algebra() -> Outcome {
    let eng = Engine::new();
    let mut objects = 0;
    for (k, n) in grassmannians(6) {
        let spec = total_space_collection(k, n).map_err(|e| e.to_string())?;
        for item in spec.items.iter().filter(|i| i.label == BlockLabel::PiPart) {
            let t = TotObject::pullback(item.object.clone());
            let h = eng.hom_tot(&t, &t, MAX_SYM_DEGREE).map_err(|e| e.to_string())?;
            for m in 0..=MAX_SYM_DEGREE {
                let expected = GradedDimension::concentrated(0, binom((n + m - 1) as i64, m as i64) as u64);
                if h.strata.get(m) != Some(&expected) {
                    return Err(format!(
                        "Gr({k},{n}) pull:{}: stratum {m} is {:?}",
                        item.object,
                        h.strata.get(m)
                    ));
                }
            }
            objects += 1;
        }
    }
    Ok(format!(
        "{objects} pullbacks, strata m <= {MAX_SYM_DEGREE} equal binomial(n+m-1,m) exactly"
    ))
}

fn kapranov() -> Outcome {
    let eng = Engine::new();
    let mut count = 0;
    for (k, n) in grassmannians(6) {
        let spec = kapranov_collection(k, n).map_err(|e| e.to_string())?;
        let r = verify(&eng, &spec, MAX_SYM_DEGREE).map_err(|e| e.to_string())?;
        for needed in [
            "basis-size",
            "gram-unitriangular",
            "strongness",
            "exceptionality",
            "semiorthogonality",
        ] {
            if !r.checks.iter().any(|c| c.name == needed) {
                return Err(format!("Gr({k},{n}): check {needed} missing"));
            }
        }
        if !r.passed() {
            return Err(format!("Gr({k},{n}): {r}"));
        }
        count += 1;
    }
    Ok(format!(
        "{count} Kapranov collections: unitriangular Gram, no positive-degree Homs, binomial(n,k) items"
    ))
}

fn orlov_degeneration() -> Outcome {
    let eng = Engine::new();
    for n in 2..=5 {
        let spec = total_space_collection(1, n).map_err(|e| e.to_string())?;
        let (push, pull) = spec.block_sizes();
        if (push, pull) != (n - 1, 1) {
            return Err(format!("P^{}: blocks ({push}, {pull})", n - 1));
        }
        let r = verify(&eng, &spec, MAX_SYM_DEGREE).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("P^{}: {r}", n - 1));
        }
    }
    Ok("k = 1, n = 2..5: n-1 exceptional pushforwards and one pullback block, all verified".into())
}

fn mutation_lemma() -> Outcome {
    let eng = Engine::new();
    let mut lambdas = 0;
    for (k, n) in grassmannians(5) {
        for l in YoungBox::for_grassmannian(k, n).unwrap().members() {
            let res = verify_resolution(&eng, l, k, n).map_err(|e| e.to_string())?;
            if !res.checks.iter().any(|c| c.name == "higher-ext-vanishing") {
                return Err("higher-Ext side condition not checked".into());
            }
            let mu = verify_mutation_equivalence(&eng, l, k, n).map_err(|e| e.to_string())?;
            if !res.passed() || !mu.passed() {
                return Err(format!("Gr({k},{n}) lambda = ({l}):\n{res}{mu}"));
            }
            lambdas += 1;
        }
    }
    Ok(format!(
        "{lambdas} diagrams over all Gr(k,n) with n <= 5, higher Exts verified"
    ))
}

fn oracle_equivalences() -> Outcome {
    // LR against Schur polynomial products
    let mut products = 0;
    for r in 1..=3 {
        let shapes = partitions_up_to(5, r);
        for l in &shapes {
            for m in &shapes {
                let oracle = schur_decompose(poly_mul(&schur_poly(l, r), &schur_poly(m, r)), r);
                let ours: std::collections::BTreeMap<_, _> = lr_product(l, m)
                    .into_iter()
                    .filter(|(nu, _)| nu.len() <= r)
                    .map(|(nu, c)| (nu, c as i64))
                    .collect();
                if ours != oracle {
                    return Err(format!("({l}) * ({m}) in {r} variables"));
                }
                products += 1;
            }
        }
    }
    let err = |e: grsod::Error| e.to_string();

    // uniqueness of the degree
    for (k, n) in grassmannians(5) {
        for a in YoungBox::new(k, 3).members() {
            for b in YoungBox::new(n - k, 3).members() {
                let (aw, bw) = (a.to_weight(k).unwrap().twist(-1), b.to_weight(n - k).unwrap().dual());
                if let Cohomology::Degree { degree, .. } = bwb(k, n, &aw, &bw).map_err(err)? {
                    if degree > k * (n - k) {
                        return Err(format!("degree {degree} on Gr({k},{n})"));
                    }
                }
            }
        }
    }
    // Serre duality
    for (k, n) in [(1usize, 3usize), (2, 4)] {
        let dim = (k * (n - k)) as i64;
        let omega = BundleExpression::canonical(k, n).map_err(err)?;
        for a in YoungBox::new(2, 2).members() {
            for b in YoungBox::new(2, 2).members() {
                let (Ok(aw), Ok(bw)) = (a.to_weight(k), b.to_weight(n - k)) else {
                    continue;
                };
                let e = BundleExpression::irreducible(k, n, aw, bw).map_err(err)?;
                let h = cohomology(&e).map_err(err)?;
                let hd = cohomology(&e.dual().tensor(&omega).map_err(err)?).map_err(err)?;
                if (0..=dim).any(|i| h.get(i) != hd.get(dim - i)) {
                    return Err(format!("Serre duality for U[{a}]*Q[{b}] on Gr({k},{n})"));
                }
            }
        }
    }
    // Koszul identities on Gr(2,4)
    let chi = |e: BundleExpression| euler_characteristic(&e).map_err(err);
    for i in 0..=3usize {
        let mut rhs = 0;
        for j in 0..=i {
            let s = if j % 2 == 0 { 1 } else { -1 };
            rhs += s
                * chi(BundleExpression::wedge_u(2, 4, j).map_err(err)?)?
                * binom(4 + (i - j) as i64 - 1, (i - j) as i64);
        }
        if chi(BundleExpression::sym_q(2, 4, i).map_err(err)?)? != rhs {
            return Err(format!("Koszul identity for S^{i}Q"));
        }
    }
    // nonpositivity
    for (k, n) in grassmannians(5) {
        let b = YoungBox::for_grassmannian(k, n).unwrap();
        for l in b.members() {
            for m in b.members().iter().filter(|m| !l.contains(m)) {
                let e = BundleExpression::u_diagram(k, n, l)
                    .map_err(err)?
                    .dual()
                    .tensor(&BundleExpression::u_diagram(k, n, m).map_err(err)?)
                    .map_err(err)?;
                for (u, _, _) in e.terms().filter(|(u, _, _)| u.parts().iter().any(|&x| x > 0)) {
                    if bwb(k, n, u, &Weight::zero(n - k)).map_err(err)? != Cohomology::Vanishes {
                        return Err(format!("U[{u}] on Gr({k},{n}) has cohomology"));
                    }
                }
            }
        }
    }
    // symmetric powers of the dual tautological bundle
    for (k, n) in [(1usize, 2usize), (2, 4), (2, 5)] {
        for m in 0..=4usize {
            let h = cohomology(&BundleExpression::sym_u_dual(k, n, m).map_err(err)?).map_err(err)?;
            if h != GradedDimension::concentrated(0, binom((n + m - 1) as i64, m as i64) as u64) {
                return Err(format!("S^{m}U^dual on Gr({k},{n}) gave {h}"));
            }
        }
    }
    Ok(format!("{products} LR products match the Schur-polynomial oracle; BWB degree, Serre, Koszul, nonpositivity, S^mU^dual all hold"))
}

fn negative_control() -> Outcome {
    let (code, v) = run_cli(&["verify-total-space", "--k", "2", "--n", "4", "--swap", "0,1"]);
    if code != Some(1) {
        return Err(format!("exit {code:?}"));
    }
    let witness = v["checks"]
        .as_array()
        .into_iter()
        .flatten()
        .filter(|c| c["verdict"] == "fail")
        .filter_map(|c| c["witness"].as_str())
        .find(|w| w.contains("Hom") && w.contains("{0: ") && !w.contains("{0: 0}"))
        .map(str::to_string);
    match witness {
        Some(w) => Ok(format!("exit 1 with witness {w}")),
        None => Err(format!("no nonzero Hom witness in {v}")),
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("total-space decomposition for all k < n <= 6", main_theorem),
        ("pullback endomorphism algebras", endomorphism_algebra),
        ("Kapranov collections for n <= 6", kapranov),
        ("projective-space degeneration", orlov_degeneration),
        ("resolutions and mutation equivalences for n <= 5", mutation_lemma),
        ("oracle equivalences", oracle_equivalences),
        ("misordered collection is rejected", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("acceptance {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("acceptance {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
