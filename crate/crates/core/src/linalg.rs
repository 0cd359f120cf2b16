//! Small dense exact linear algebra over `Q(ζ)` and `Q`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclo::CycRat;

/// Row-reduces in place and returns the rank.
pub fn rank_cyc(mut rows: Vec<Vec<CycRat>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..ncols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix by elimination.
pub fn det_cyc(mut rows: Vec<Vec<CycRat>>) -> CycRat {
    let n = rows.len();
    let mut det = CycRat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return CycRat::zero();
        };
        if pivot != col {
            rows.swap(col, pivot);
            det = -det;
        }
        det = &det * &rows[col][col];
        let inv = rows[col][col].inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &rows[col][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
    }
    det
}

/// Rank over `Q`.
pub fn rank_rat(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &lead;
            for c in col..ncols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{v : Σ normal[i]·v[i] = 0}` (plain dot product, no conjugation).
pub fn hyperplane_basis(normal: &[CycRat]) -> Vec<Vec<CycRat>> {
    let n = normal.len();
    let Some(k) = normal.iter().position(|x| !x.is_zero()) else {
        return (0..n).map(|i| unit_vector(n, i)).collect();
    };
    let inv = normal[k].inv().expect("nonzero");
    (0..n)
        .filter(|&i| i != k)
        .map(|i| {
            let mut v = unit_vector(n, i);
            v[k] = -(&normal[i] * &inv);
            v
        })
        .collect()
}

fn unit_vector(n: usize, i: usize) -> Vec<CycRat> {
    (0..n).map(|j| if i == j { CycRat::one() } else { CycRat::zero() }).collect()
}
