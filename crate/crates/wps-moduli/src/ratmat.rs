//! Exact linear algebra helpers: rational determinants and inverses, and the
//! Smith normal form of integer matrices with transform tracking.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Z = BigInt;
/// Arbitrary-precision rational.
pub type Q = BigRational;

/// Rational from a machine integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// Rational p/q from machine integers; panics on q = 0.
pub fn qq(p: i64, den: i64) -> Q {
    Q::new(Z::from(p), Z::from(den))
}

/// Determinant by exact Gaussian elimination. The empty matrix has
/// determinant 1.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    for row in m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut acc = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            acc = -acc;
        }
        let pv = a[col][col].clone();
        acc *= pv.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let s = &f * &a[col][c];
                a[r][c] -= s;
            }
        }
    }
    acc
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    for row in m {
        assert_eq!(row.len(), n, "inverse of a non-square matrix");
    }
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        inv.swap(p, col);
        let pv = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= pv.clone();
            inv[col][c] /= pv.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let (s, t) = (&f * &a[col][c], &f * &inv[col][c]);
                a[r][c] -= s;
                inv[r][c] -= t;
            }
        }
    }
    Some(inv)
}

/// Product of two integer matrices.
pub fn mul_z(a: &[Vec<Z>], b: &[Vec<Z>]) -> Vec<Vec<Z>> {
    let (n, k) = (a.len(), b.len());
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

/// Identity integer matrix.
pub fn identity_z(n: usize) -> Vec<Vec<Z>> {
    (0..n)
        .map(|i| (0..n).map(|j| Z::from(i64::from(i == j))).collect())
        .collect()
}

/// Smith normal form data: `u * a * v = diag(d)` with `u`, `v` unimodular,
/// `d[i] >= 0` and `d[i]` dividing `d[i+1]`.
pub struct Snf {
    pub d: Vec<Z>,
    pub u: Vec<Vec<Z>>,
    pub uinv: Vec<Vec<Z>>,
    pub v: Vec<Vec<Z>>,
}

/// Smith normal form of a rectangular integer matrix, tracking the row
/// transform, its inverse, and the column transform.
pub fn snf(input: &[Vec<Z>]) -> Snf {
    let rows = input.len();
    let cols = if rows == 0 { 0 } else { input[0].len() };
    let mut a: Vec<Vec<Z>> = input.to_vec();
    let mut u = identity_z(rows);
    let mut uinv = identity_z(rows);
    let mut v = identity_z(cols);

    // Row op r_i -= f*r_j on a and u; uinv absorbs the inverse as a column op.
    fn row_sub(a: &mut [Vec<Z>], u: &mut [Vec<Z>], uinv: &mut [Vec<Z>], i: usize, j: usize, f: &Z) {
        for c in 0..a[0].len() {
            let s = f * &a[j][c];
            a[i][c] -= s;
        }
        for c in 0..u[0].len() {
            let s = f * &u[j][c];
            u[i][c] -= s;
        }
        for r in 0..uinv.len() {
            let s = f * &uinv[r][i];
            uinv[r][j] += s;
        }
    }
    fn col_sub(a: &mut [Vec<Z>], v: &mut [Vec<Z>], i: usize, j: usize, f: &Z) {
        for r in 0..a.len() {
            let s = f * &a[r][j];
            a[r][i] -= s;
        }
        for r in 0..v.len() {
            let s = f * &v[r][j];
            v[r][i] -= s;
        }
    }
    fn row_swap(a: &mut [Vec<Z>], u: &mut [Vec<Z>], uinv: &mut [Vec<Z>], i: usize, j: usize) {
        a.swap(i, j);
        u.swap(i, j);
        for r in 0..uinv.len() {
            uinv[r].swap(i, j);
        }
    }
    fn col_swap(a: &mut [Vec<Z>], v: &mut [Vec<Z>], i: usize, j: usize) {
        for r in 0..a.len() {
            a[r].swap(i, j);
        }
        for r in 0..v.len() {
            v[r].swap(i, j);
        }
    }
    fn row_neg(a: &mut [Vec<Z>], u: &mut [Vec<Z>], uinv: &mut [Vec<Z>], i: usize) {
        for c in 0..a[0].len() {
            a[i][c] = -a[i][c].clone();
        }
        for c in 0..u[0].len() {
            u[i][c] = -u[i][c].clone();
        }
        for r in 0..uinv.len() {
            uinv[r][i] = -uinv[r][i].clone();
        }
    }

    let steps = rows.min(cols);
    for t in 0..steps {
        'outer: loop {
            // Pivot: smallest nonzero absolute value in the submatrix.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && pivot
                            .map(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                            .unwrap_or(true)
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break 'outer;
            };
            if pi != t {
                row_swap(&mut a, &mut u, &mut uinv, pi, t);
            }
            if pj != t {
                col_swap(&mut a, &mut v, pj, t);
            }
            if a[t][t].is_negative() {
                row_neg(&mut a, &mut u, &mut uinv, t);
            }
            // Reduce the pivot row and column.
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let f = a[i][t].clone() / a[t][t].clone();
                    row_sub(&mut a, &mut u, &mut uinv, i, t, &f);
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let f = a[t][j].clone() / a[t][t].clone();
                    col_sub(&mut a, &mut v, j, t, &f);
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'outer;
            }
            // Divisibility: fold in any entry the pivot does not divide.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        let one = Z::one();
                        let f = -one;
                        row_sub(&mut a, &mut u, &mut uinv, t, i, &f);
                        continue 'outer;
                    }
                }
            }
            break 'outer;
        }
    }
    let d: Vec<Z> = (0..steps).map(|t| a[t][t].clone()).collect();
    for t in 0..steps.saturating_sub(1) {
        if !d[t].is_zero() {
            assert!(
                (&d[t + 1] % &d[t]).is_zero(),
                "Smith form divisibility chain broken"
            );
        }
    }
    Snf { d, u, uinv, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmat(rows: &[&[i64]]) -> Vec<Vec<Z>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Z::from(x)).collect())
            .collect()
    }

    fn qmat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    fn diag_of(a: &[Vec<Z>]) -> Vec<Z> {
        (0..a.len().min(a.first().map_or(0, |r| r.len())))
            .map(|i| a[i][i].clone())
            .collect()
    }

    #[test]
    fn det_empty_is_one() {
        assert_eq!(det(&[]), Q::one());
    }

    #[test]
    fn det_known_values() {
        assert_eq!(det(&qmat(&[&[2, -1], &[-1, 2]])), q(3));
        assert_eq!(det(&qmat(&[&[2, -2], &[-1, 2]])), q(2));
        assert_eq!(det(&qmat(&[&[1, 2], &[2, 4]])), q(0));
        assert_eq!(
            det(&qmat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])),
            q(4)
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let m = qmat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let inv = inverse(&m).unwrap();
        let n = m.len();
        for i in 0..n {
            for j in 0..n {
                let s: Q = (0..n).map(|k| &m[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { Q::one() } else { Q::zero() });
            }
        }
        assert!(inverse(&qmat(&[&[1, 2], &[2, 4]])).is_none());
    }

    fn check_snf(a: &[Vec<Z>]) {
        let s = snf(a);
        let uav = mul_z(&mul_z(&s.u, a), &s.v);
        assert_eq!(diag_of(&uav), s.d);
        for (i, row) in uav.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if i != j {
                    assert!(e.is_zero(), "off-diagonal residue at ({i},{j})");
                }
            }
        }
        let id = mul_z(&s.u, &s.uinv);
        assert_eq!(id, identity_z(a.len()));
    }

    #[test]
    fn snf_cartan_like() {
        // A_3 Cartan: cyclic group of order 4.
        let a3 = zmat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        check_snf(&a3);
        let s = snf(&a3);
        assert_eq!(s.d, vec![Z::from(1), Z::from(1), Z::from(4)]);

        // D_4 Cartan: Klein group.
        let d4 = zmat(&[
            &[2, -1, -1, -1],
            &[-1, 2, 0, 0],
            &[-1, 0, 2, 0],
            &[-1, 0, 0, 2],
        ]);
        check_snf(&d4);
        let s = snf(&d4);
        assert_eq!(
            s.d,
            vec![Z::from(1), Z::from(1), Z::from(2), Z::from(2)]
        );
    }

    #[test]
    fn snf_single_row() {
        let row = zmat(&[&[6, 4, 10]]);
        check_snf(&row);
        let s = snf(&row);
        assert_eq!(s.d, vec![Z::from(2)]);
    }

    #[test]
    fn snf_zero_matrix() {
        let z = zmat(&[&[0, 0], &[0, 0]]);
        check_snf(&z);
        let s = snf(&z);
        assert_eq!(s.d, vec![Z::from(0), Z::from(0)]);
    }
}
