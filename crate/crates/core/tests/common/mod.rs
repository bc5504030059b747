#![allow(dead_code)]

use std::collections::BTreeMap;

use grsod::young::{Partition, Weight};

pub fn p(parts: &[i64]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

pub fn w(parts: &[i64]) -> Weight {
    Weight::new(parts.to_vec()).unwrap()
}

/// All partitions of `size` with at most `rows` parts.
pub fn partitions_of(size: i64, rows: usize) -> Vec<Partition> {
    fn go(rest: i64, max: i64, rows: usize, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(cur.clone()).unwrap());
            return;
        }
        if rows == 0 {
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, rows - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, rows, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_up_to(max_size: i64, rows: usize) -> Vec<Partition> {
    (0..=max_size).flat_map(|s| partitions_of(s, rows)).collect()
}

/// Multivariate polynomial in `r` variables: exponent vector -> coefficient.
pub type Poly = BTreeMap<Vec<u32>, i64>;

/// Schur polynomial `s_λ(x_1, ..., x_r)` as a sum over semistandard tableaux.
pub fn schur_poly(lambda: &Partition, r: usize) -> Poly {
    let shape: Vec<usize> = lambda.parts().iter().map(|&x| x as usize).collect();
    let mut poly = Poly::new();
    if shape.len() > r {
        return poly;
    }
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    fill(&cells, 0, &mut grid, r, &mut poly);
    poly
}

fn fill(cells: &[(usize, usize)], idx: usize, grid: &mut Vec<Vec<usize>>, r: usize, poly: &mut Poly) {
    if idx == cells.len() {
        let mut exps = vec![0u32; r];
        for row in grid.iter() {
            for &v in row {
                exps[v - 1] += 1;
            }
        }
        *poly.entry(exps).or_insert(0) += 1;
        return;
    }
    let (i, j) = cells[idx];
    let lo_left = if j > 0 { grid[i][j - 1] } else { 1 };
    let lo_up = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
    for v in lo_left.max(lo_up)..=r {
        grid[i][j] = v;
        fill(cells, idx + 1, grid, r, poly);
    }
    grid[i][j] = 0;
}

/// Number of semistandard tableaux of shape `λ` with entries in `1..=r`.
pub fn ssyt_count(lambda: &Partition, r: usize) -> u64 {
    schur_poly(lambda, r).values().map(|&c| c as u64).sum()
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Writes a symmetric polynomial in the Schur basis by peeling off the
/// lexicographically largest monomial, which is always a dominant exponent.
pub fn schur_decompose(mut f: Poly, r: usize) -> BTreeMap<Partition, i64> {
    let mut out = BTreeMap::new();
    while let Some((lead, &c)) = f.iter().next_back() {
        let parts: Vec<i64> = lead.iter().map(|&e| e as i64).collect();
        let nu = Partition::new(parts).expect("leading exponent of a symmetric polynomial is dominant");
        let s = schur_poly(&nu, r);
        for (e, x) in s {
            *f.entry(e).or_insert(0) -= c * x;
        }
        f.retain(|_, x| *x != 0);
        out.insert(nu, c);
    }
    out
}

pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}
