//! Exact integer linear algebra on small dense matrices.

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i64>>;

/// Describes why `m` fails to be upper unitriangular, if it does.
pub fn upper_unitriangular_defect(m: &Matrix) -> Option<String> {
    for (i, row) in m.iter().enumerate() {
        if row.len() != m.len() {
            return Some(format!("row {i} has length {}", row.len()));
        }
        if row[i] != 1 {
            return Some(format!("diagonal entry ({i},{i}) is {}", row[i]));
        }
        if let Some(j) = (0..i).find(|&j| row[j] != 0) {
            return Some(format!("entry ({i},{j}) below the diagonal is {}", row[j]));
        }
    }
    None
}

/// Solves `m · x = v` for upper unitriangular `m` by back-substitution.
pub fn solve_upper_unitriangular(m: &Matrix, v: &[i64]) -> Result<Vec<i64>> {
    if let Some(why) = upper_unitriangular_defect(m) {
        return Err(Error::NotUnitriangular(why));
    }
    if v.len() != m.len() {
        return Err(Error::KClassLength {
            expected: m.len(),
            found: v.len(),
        });
    }
    let n = m.len();
    let mut x = vec![0i64; n];
    for i in (0..n).rev() {
        let mut acc = v[i] as i128;
        for j in i + 1..n {
            acc -= m[i][j] as i128 * x[j] as i128;
        }
        x[i] = i64::try_from(acc).map_err(|_| Error::Overflow("back-substitution"))?;
    }
    Ok(x)
}

/// `m · x`.
pub fn mat_vec(m: &Matrix, x: &[i64]) -> Result<Vec<i64>> {
    m.iter()
        .map(|row| {
            let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
            i64::try_from(s).map_err(|_| Error::Overflow("matrix product"))
        })
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    i64::try_from(s).map_err(|_| Error::Overflow("dot product"))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &Matrix) -> Result<i64> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])
                    .zip(a[i][k].checked_mul(a[k][j]))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or(Error::Overflow("determinant"))?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| Error::Overflow("determinant"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn back_substitution() {
        let m = vec![vec![1, 2, 3], vec![0, 1, 4], vec![0, 0, 1]];
        let x = vec![5, -1, 2];
        let v = mat_vec(&m, &x).unwrap();
        assert_eq!(solve_upper_unitriangular(&m, &v).unwrap(), x);
    }

    #[test]
    fn rejects_non_unitriangular() {
        let m = vec![vec![1, 0], vec![1, 1]];
        assert!(matches!(
            solve_upper_unitriangular(&m, &[1, 1]),
            Err(Error::NotUnitriangular(_))
        ));
        let m = vec![vec![2, 0], vec![0, 1]];
        assert!(upper_unitriangular_defect(&m).is_some());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&vec![vec![2, 1], vec![1, 1]]).unwrap(), 1);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(
            determinant(&vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap(),
            -3
        );
        assert_eq!(determinant(&vec![vec![1, 2], vec![2, 4]]).unwrap(), 0);
    }
}
