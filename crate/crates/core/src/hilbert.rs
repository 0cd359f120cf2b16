//! Graded dimensions: the printed table for `dim[G₃[3], k]`, the Hilbert
//! function of the complete intersection of two cubics in `P⁵`, and the ratio
//! of leading coefficients that recovers the covering degree.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;

/// Polynomial `Σ coeffs[i]·kⁱ` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    pub coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn eval(&self, k: i64) -> BigRational {
        let k = BigRational::from_integer(k.into());
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &k + c)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lagrange interpolation through `(xᵢ, yᵢ)`.
    pub fn interpolate(points: &[(i64, BigRational)]) -> Self {
        let n = points.len();
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, (xi, yi)) in points.iter().enumerate() {
            // basis polynomial Π_{j≠i} (k − xj)/(xi − xj)
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let xj = BigRational::from_integer((*xj).into());
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (d, c) in basis.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * &xj;
                }
                basis = next;
                denom *= BigRational::from_integer((*xi).into()) - xj;
            }
            let scale = yi / denom;
            for (d, c) in basis.into_iter().enumerate() {
                coeffs[d] += c * &scale;
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `−1377 + (8019/2)k − 2187k² + (729/2)k³`, valid for `k > 4`.
pub fn g33_cubic() -> RationalPoly {
    RationalPoly { coeffs: vec![q(-1377, 1), q(8019, 2), q(-2187, 1), q(729, 2)] }
}

const G33_TABLE: [u64; 5] = [1, 15, 130, 750, 3115];
const EISENSTEIN_TABLE: [u64; 4] = [15, 120, 405, 765];
const EISENSTEIN_STABLE: u64 = 810;

/// `dim[G₃[3], k]`: the table for `k ≤ 4`, the cubic above beyond.
pub fn dim_g33(k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::NegativeArgument(k));
    }
    if let Some(&d) = G33_TABLE.get(k as usize) {
        return Ok(d.into());
    }
    let v = g33_cubic().eval(k);
    if !v.is_integer() || v.is_negative() {
        return Err(Error::Verification(format!("cubic is not a nonnegative integer at k = {k}")));
    }
    Ok(v.to_integer())
}

/// `dim[G₃[3],k] − dim[G₃[3],k]₀` (the non-cusp part), `k ≥ 1`.
pub fn eisenstein_part(k: i64) -> Result<u64> {
    if k < 1 {
        return Err(Error::NegativeArgument(k));
    }
    Ok(EISENSTEIN_TABLE.get(k as usize - 1).copied().unwrap_or(EISENSTEIN_STABLE))
}

fn binomial(n: i64, r: i64) -> BigInt {
    if r < 0 || n < r {
        return BigInt::zero();
    }
    (0..r).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficient of `tᵏ` in `(1 − t³)² / (1 − t)⁶`.
pub fn ci_dim(k: u32) -> BigInt {
    let k = k as i64;
    binomial(k + 5, 5) - 2 * binomial(k + 2, 5) + binomial(k - 1, 5)
}

type Exponent = [u8; 6];

fn monomials(degree: u32) -> Vec<Exponent> {
    fn rec(var: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if var == 5 {
            cur[5] = left as u8;
            out.push(*cur);
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e as u8;
            rec(var + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, degree, &mut [0; 6], &mut out);
    out
}

/// Terms of `F = X0X1X2 − X3X4X5` and `G = ΣX0..2³ − ΣX3..5³`.
fn cubic_terms() -> [Vec<(Exponent, i64)>; 2] {
    let f = vec![([1, 1, 1, 0, 0, 0], 1), ([0, 0, 0, 1, 1, 1], -1)];
    let g = (0..6)
        .map(|i| {
            let mut e = [0u8; 6];
            e[i] = 3;
            (e, if i < 3 { 1 } else { -1 })
        })
        .collect();
    [f, g]
}

/// Grading by `e mod 3` modulo `(1,1,1,2,2,2)`; both cubics are homogeneous for it.
fn grading_key(e: &Exponent) -> [u8; 5] {
    let shift = e[0] % 3;
    let w = [1u8, 1, 1, 2, 2, 2];
    std::array::from_fn(|i| (e[i + 1] % 3 + 3 * 3 - shift * w[i + 1]) % 3)
}

/// Independent brute-force Hilbert function: number of degree-`k` monomials
/// minus the exact rank over `Q` of `{m·F, m·G : deg m = k − 3}`.
///
/// The relation matrix is block diagonal for the `(Z/3)⁵` grading of
/// [`grading_key`], so each block is reduced separately; `blocked = false`
/// reduces the whole matrix at once.
pub fn ci_dim_oracle_with(k: u32, blocked: bool) -> BigInt {
    let columns = monomials(k);
    let ambient = columns.len();
    if k < 3 {
        return ambient.into();
    }
    let col_index: HashMap<Exponent, usize> = columns.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
    for m in monomials(k - 3) {
        for terms in cubic_terms() {
            let row = terms
                .iter()
                .map(|(t, c)| {
                    let e: Exponent = std::array::from_fn(|i| m[i] + t[i]);
                    (col_index[&e], *c)
                })
                .collect();
            rows.push(row);
        }
    }
    let rank: usize = if blocked {
        let mut blocks: HashMap<[u8; 5], Vec<usize>> = HashMap::new();
        for (i, e) in columns.iter().enumerate() {
            blocks.entry(grading_key(e)).or_default().push(i);
        }
        let mut block_rows: HashMap<[u8; 5], Vec<&Vec<(usize, i64)>>> = HashMap::new();
        for r in &rows {
            block_rows.entry(grading_key(&columns[r[0].0])).or_default().push(r);
        }
        block_rows
            .iter()
            .map(|(key, rs)| {
                let cols = &blocks[key];
                let local: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
                let dense = rs
                    .iter()
                    .map(|r| {
                        let mut v = vec![BigRational::zero(); cols.len()];
                        for &(c, x) in r.iter() {
                            v[local[&c]] = BigRational::from_integer(x.into());
                        }
                        v
                    })
                    .collect();
                linalg::rank_rat(dense)
            })
            .sum()
    } else {
        let dense = rows
            .iter()
            .map(|r| {
                let mut v = vec![BigRational::zero(); ambient];
                for &(c, x) in r {
                    v[c] = BigRational::from_integer(x.into());
                }
                v
            })
            .collect();
        linalg::rank_rat(dense)
    };
    BigInt::from(ambient - rank)
}

pub fn ci_dim_oracle(k: u32) -> BigInt {
    ci_dim_oracle_with(k, true)
}

/// The cubic that agrees with [`ci_dim`] for every `k ≥ 1`.
pub fn hilbert_polynomial_ci() -> Result<RationalPoly> {
    let points: Vec<(i64, BigRational)> = (20..24).map(|k| (k, BigRational::from_integer(ci_dim(k as u32)))).collect();
    let poly = RationalPoly::interpolate(&points);
    for k in 1..=12 {
        if poly.eval(k) != BigRational::from_integer(ci_dim(k as u32)) {
            return Err(Error::Verification(format!("Hilbert polynomial disagrees at k = {k}")));
        }
    }
    Ok(poly)
}

/// `(729/2) / (3/2)`, required to be an integer.
pub fn covering_degree_from_leading() -> Result<BigInt> {
    let ratio = g33_cubic().leading() / hilbert_polynomial_ci()?.leading();
    if !ratio.is_integer() {
        return Err(Error::Verification(format!("leading-coefficient ratio {ratio} is not integral")));
    }
    Ok(ratio.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g33_table() {
        let got: Vec<BigInt> = (0..=5).map(|k| dim_g33(k).unwrap()).collect();
        let want: Vec<BigInt> = [1, 15, 130, 750, 3115, 9558].iter().map(|&x| x.into()).collect();
        assert_eq!(got, want);
        assert_eq!(dim_g33(-1), Err(Error::NegativeArgument(-1)));
    }

    #[test]
    fn cubic_is_integral() {
        let c = g33_cubic();
        for k in 1..=1000 {
            assert!(c.eval(k).is_integer(), "k = {k}");
        }
    }

    #[test]
    fn eisenstein_parts() {
        assert_eq!(eisenstein_part(2).unwrap(), 120);
        assert_eq!(eisenstein_part(7).unwrap(), 810);
        assert!(eisenstein_part(0).is_err());
        for k in 1..=20 {
            assert!(BigInt::from(eisenstein_part(k).unwrap()) <= dim_g33(k).unwrap());
        }
    }

    #[test]
    fn ci_small_degrees() {
        assert_eq!(ci_dim(0), 1.into());
        assert_eq!(ci_dim(1), 6.into());
        assert_eq!(ci_dim(3), 54.into());
        assert_eq!(ci_dim_oracle(0), 1.into());
        assert_eq!(ci_dim_oracle(3), 54.into());
    }

    #[test]
    fn ci_matches_series_convolution() {
        // (1+t+t²)²/(1−t)⁴ = (1 + 2t + 3t² + 2t³ + t⁴)/(1−t)⁴
        let h = [1i64, 2, 3, 2, 1];
        for k in 0..=40i64 {
            let conv: BigInt = h.iter().enumerate().map(|(j, &w)| w * binomial(k - j as i64 + 3, 3)).sum();
            assert_eq!(ci_dim(k as u32), conv, "k = {k}");
        }
        for k in 1..=12 {
            assert!(ci_dim(k) > ci_dim(k - 1));
        }
    }

    #[test]
    fn blocked_oracle_matches_full_elimination() {
        for k in 0..=7 {
            assert_eq!(ci_dim_oracle_with(k, true), ci_dim_oracle_with(k, false), "k = {k}");
        }
    }

    #[test]
    fn oracle_agrees() {
        for k in 0..=12 {
            assert_eq!(ci_dim_oracle(k), ci_dim(k), "k = {k}");
        }
    }

    #[test]
    fn hilbert_polynomial() {
        let p = hilbert_polynomial_ci().unwrap();
        assert_eq!(p.coeffs.len(), 4);
        assert_eq!(p.leading(), q(3, 2));
        // (9k³ + 27k)/6: no quadratic term; 9/2 sits in degree one
        assert_eq!(p.coeff(2), q(0, 1));
        assert_eq!(p.coeff(1), q(9, 2));
        assert_eq!(p.coeff(0), q(0, 1));
        assert_eq!(p.eval(10), BigRational::from_integer(ci_dim(10)));
        assert_eq!(covering_degree_from_leading().unwrap(), 243.into());
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let c = g33_cubic();
        let pts: Vec<_> = (5..9).map(|k| (k, c.eval(k))).collect();
        assert_eq!(RationalPoly::interpolate(&pts), c);
    }
}
