//! Small dense exact linear algebra: row reduction, ranks, nullspaces and
//! linear solves over [`Rat`]. Sizes here are tiny (ambient dimension and
//! facet counts), so everything is straightforward Gauss-Jordan.

use crate::rat::Rat;

/// Reduces `mat` to reduced row echelon form in place and returns the pivot
/// column of each pivot row (in order).
pub fn rref(mat: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mat[r][c].recip();
        for v in mat[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    if !mat[r][j].is_zero() {
                        let delta = &f * &mat[r][j];
                        mat[i][j] -= delta;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{ x : R x = 0 }` for the row space `rows` over `n` variables.
pub fn nullspace_basis(rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; n];
        for &c in &pivots {
            s[c] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Any solution of `A x = b` (rows of `a` are the equations), or `None` if
/// the system is inconsistent. Free variables are set to zero.
pub fn solve_any(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return Some(Vec::new());
    }
    let n = a[0].len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    // Inconsistent iff a pivot lands in the rhs column.
    if pivots.iter().any(|&c| c == n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][n].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Matrix-vector product.
pub fn mat_vec(a: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| crate::rat::dot(row, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace_basis(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert!(crate::rat::dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn solve_consistency() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let b = vec![rat(3), rat(1)];
        let x = solve_any(&a, &b).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);

        let a2 = m(&[&[1, 1], &[2, 2]]);
        assert!(solve_any(&a2, &[rat(1), rat(3)]).is_none());
        assert!(solve_any(&a2, &[rat(1), rat(2)]).is_some());
    }

    #[test]
    fn invert_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = invert(&a).unwrap();
        let prod: Vec<Vec<Rat>> = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        (0..2)
                            .map(|k| &a[i][k] * &inv[k][j])
                            .fold(Rat::zero(), |s, v| s + v)
                    })
                    .collect()
            })
            .collect();
        assert_eq!(prod, m(&[&[1, 0], &[0, 1]]));
        assert!(invert(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
