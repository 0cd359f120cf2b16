//! The hermitian space `V = C⁴` of signature `(1,3)` with coordinates in `Q(ζ)`:
//!
//! ```text
//! <a,b> = conj(a1) b2 + conj(a2) b1 − conj(a3) b3 − conj(a4) b4
//! ```
//!
//! together with complex reflections and the table of 15 short-mirror
//! representatives.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::cyclo::{CycRat, EisensteinInt};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermVector(pub [CycRat; 4]);

impl HermVector {
    pub fn from_eis(v: &[EisensteinInt; 4]) -> Self {
        Self(v.clone().map(CycRat::from))
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        Self(v.map(CycRat::from))
    }

    pub fn scale(&self, s: &CycRat) -> Self {
        Self(self.0.clone().map(|x| s * &x))
    }

    pub fn to_complex(&self) -> [Complex64; 4] {
        [0, 1, 2, 3].map(|i| self.0[i].to_complex())
    }
}

/// `<a,b>`, conjugate-linear in `a`.
pub fn herm_form(a: &HermVector, b: &HermVector) -> CycRat {
    let [a1, a2, a3, a4] = &a.0;
    let [b1, b2, b3, b4] = &b.0;
    let pos = &(&a1.conj() * b2) + &(&a2.conj() * b1);
    let neg = &(&a3.conj() * b3) + &(&a4.conj() * b4);
    &pos - &neg
}

/// Gram matrix of the form in the standard basis.
pub const GRAM: [[i64; 4]; 4] = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]];

/// 4×4 matrix over `Q(ζ)` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermMatrix(pub [[CycRat; 4]; 4]);

impl HermMatrix {
    pub fn identity() -> Self {
        Self::scalar(CycRat::one())
    }

    pub fn scalar(s: CycRat) -> Self {
        Self::diag([s.clone(), s.clone(), s.clone(), s])
    }

    pub fn diag(d: [CycRat; 4]) -> Self {
        let mut m = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = x;
        }
        m
    }

    fn zero() -> Self {
        Self(std::array::from_fn(|_| std::array::from_fn(|_| CycRat::zero())))
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Self(rows.map(|r| r.map(CycRat::from)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = CycRat::zero();
                for k in 0..4 {
                    acc = &acc + &(&self.0[i][k] * &rhs.0[k][j]);
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn apply(&self, v: &HermVector) -> HermVector {
        HermVector(std::array::from_fn(|i| (0..4).fold(CycRat::zero(), |acc, k| &acc + &(&self.0[i][k] * &v.0[k]))))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, s: &CycRat) -> Self {
        Self(self.0.clone().map(|r| r.map(|x| s * &x)))
    }

    pub fn det(&self) -> CycRat {
        linalg::det_cyc(self.0.iter().map(|r| r.to_vec()).collect())
    }

    pub fn column(&self, j: usize) -> HermVector {
        HermVector(std::array::from_fn(|i| self.0[i][j].clone()))
    }

    /// `<M e_i, M e_j> = <e_i, e_j>` for all 16 basis pairs.
    pub fn is_unitary(&self) -> bool {
        let cols: Vec<HermVector> = (0..4).map(|j| self.column(j)).collect();
        (0..4).all(|i| (0..4).all(|j| herm_form(&cols[i], &cols[j]) == CycRat::from(GRAM[i][j])))
    }

    /// Entries as Eisenstein integers, if they all are.
    pub fn to_eisenstein(&self) -> Result<[[EisensteinInt; 4]; 4]> {
        let mut out: [[EisensteinInt; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| EisensteinInt::zero()));
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] =
                    self.0[i][j].to_eisenstein().ok_or_else(|| Error::NonIntegralEntry(self.0[i][j].to_string()))?;
            }
        }
        Ok(out)
    }

    pub fn to_complex(&self) -> [[Complex64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].to_complex()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReflectionKind {
    Biflection,
    Triflection,
    Hexflection,
}

/// Order-based name of the reflection with multiplier `η`.
pub fn reflection_kind(eta: &EisensteinInt) -> Result<ReflectionKind> {
    let order = (1..=6).find(|&k| eta.pow(k) == EisensteinInt::one());
    match order {
        Some(2) if eta.norm() == 1.into() => Ok(ReflectionKind::Biflection),
        Some(3) => Ok(ReflectionKind::Triflection),
        Some(6) => Ok(ReflectionKind::Hexflection),
        _ => Err(Error::NotAUnit(eta.to_string())),
    }
}

/// `a ↦ a − (1−η)·(<b,a>/<b,b>)·b` as a matrix.
///
/// Fails when `<b,b> = 0` or when `η` is not a sixth root of unity other than 1.
pub fn reflection(b: &HermVector, eta: &EisensteinInt) -> Result<HermMatrix> {
    reflection_kind(eta)?;
    let bb = herm_form(b, b);
    if bb.is_zero() {
        return Err(Error::IsotropicMirror);
    }
    let coeff = (&CycRat::one() - &eta.to_cyc()).div(&bb)?;
    // <b,a> = Σ_j row[j]·a_j
    let [b1, b2, b3, b4] = &b.0;
    let row = [b2.conj(), b1.conj(), -b3.conj(), -b4.conj()];
    let mut m = HermMatrix::identity();
    for i in 0..4 {
        let ci = &coeff * &b.0[i];
        for j in 0..4 {
            m.0[i][j] = &m.0[i][j] - &(&ci * &row[j]);
        }
    }
    Ok(m)
}

/// Reflection with the default multiplier `η = ζ`.
pub fn triflection(b: &HermVector) -> Result<HermMatrix> {
    reflection(b, &EisensteinInt::zeta())
}

/// Short-mirror representatives, labels 1..=15, coordinates `(a, b)` meaning `a + bζ`.
const MIRRORS: [[(i64, i64); 4]; 15] = [
    [(0, 0), (0, 0), (1, 0), (0, 0)],
    [(0, 0), (0, 0), (0, 0), (1, 0)],
    [(1, 0), (0, 0), (1, 0), (0, 0)],
    [(1, 0), (0, 0), (-1, 0), (0, 0)],
    [(1, 0), (0, 0), (0, 0), (1, 0)],
    [(1, 0), (0, 0), (0, 0), (-1, 0)],
    [(0, 0), (1, 0), (1, 0), (0, 0)],
    [(0, 0), (1, 0), (-1, 0), (0, 0)],
    [(0, 0), (1, 0), (0, 0), (1, 0)],
    [(0, 0), (1, 0), (0, 0), (-1, 0)],
    [(0, 1), (-1, 0), (1, 0), (1, 0)],
    [(0, 1), (-1, 0), (1, 0), (-1, 0)],
    [(0, 1), (-1, 0), (-1, 0), (1, 0)],
    [(0, 1), (-1, 0), (-1, 0), (-1, 0)],
    [(0, 1), (1, 0), (0, 0), (0, 0)],
];

const TABLE_HEADER: &str = "# picard-cy mirror table v1\n\
# label c1 c2 c3 c4 ; coordinates a+b*z in Z[z], z a primitive cube root of unity\n";

/// Labeled lattice vectors in `M = Z[ζ]⁴`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorTable {
    entries: Vec<(usize, [EisensteinInt; 4])>,
}

impl MirrorTable {
    pub fn get(&self, label: usize) -> Result<&[EisensteinInt; 4]> {
        self.entries.iter().find(|(l, _)| *l == label).map(|(_, v)| v).ok_or(Error::LabelOutOfRange { label, max: 15 })
    }

    pub fn vector(&self, label: usize) -> Result<HermVector> {
        self.get(label).map(HermVector::from_eis)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[EisensteinInt; 4])> {
        self.entries.iter().map(|(l, v)| (*l, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Data-file rendering; one line per label.
    pub fn render(&self) -> String {
        let mut out = String::from(TABLE_HEADER);
        for (label, v) in &self.entries {
            write!(out, "{label}").unwrap();
            for c in v {
                write!(out, " {c}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(Error::Parse(format!("expected 5 fields: {line:?}")));
            }
            let label: usize = fields[0].parse().map_err(|_| Error::Parse(format!("bad label in {line:?}")))?;
            let mut coords: [EisensteinInt; 4] = std::array::from_fn(|_| EisensteinInt::zero());
            for (slot, tok) in coords.iter_mut().zip(&fields[1..]) {
                *slot = tok.parse()?;
            }
            entries.push((label, coords));
        }
        Ok(Self { entries })
    }
}

/// The 15 short-mirror representatives.
pub fn mirror_table() -> MirrorTable {
    let entries =
        MIRRORS.iter().enumerate().map(|(i, row)| (i + 1, row.map(|(a, b)| EisensteinInt::new(a, b)))).collect();
    MirrorTable { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn basis(i: usize) -> HermVector {
        let mut v = [0; 4];
        v[i] = 1;
        HermVector::from_ints(v)
    }

    #[test]
    fn form_examples() {
        assert_eq!(herm_form(&basis(2), &basis(2)), CycRat::from(-1));
        assert_eq!(herm_form(&basis(0), &basis(1)), CycRat::one());
        let t = mirror_table();
        let v11 = t.vector(11).unwrap();
        assert_eq!(herm_form(&v11, &v11), CycRat::from(-1));
    }

    #[test]
    fn form_is_hermitian() {
        let a = HermVector([CycRat::zeta(), CycRat::from(2), CycRat::from_ints(1, -3), CycRat::ratio(1, 2)]);
        let b = HermVector([CycRat::from(-1), CycRat::zeta2(), CycRat::from(5), CycRat::from_ints(0, 7)]);
        assert_eq!(herm_form(&a, &b), herm_form(&b, &a).conj());
    }

    #[test]
    fn table_labels() {
        let t = mirror_table();
        assert_eq!(t.len(), 15);
        assert_eq!(t.vector(1).unwrap(), HermVector::from_ints([0, 0, 1, 0]));
        let v15 = t.vector(15).unwrap();
        assert_eq!(v15.0[0], CycRat::zeta());
        assert_eq!(v15.0[1], CycRat::one());
        assert!(matches!(t.get(16), Err(Error::LabelOutOfRange { .. })));
        for (label, _) in t.iter() {
            let v = t.vector(label).unwrap();
            assert_eq!(herm_form(&v, &v), CycRat::from(-1), "label {label}");
        }
    }

    #[test]
    fn data_file_matches_defaults() {
        let file = include_str!("../data/mirrors.txt");
        assert_eq!(mirror_table().render(), file);
        assert_eq!(MirrorTable::parse(file).unwrap(), mirror_table());
    }

    #[test]
    fn reflection_eigenstructure() {
        let t = mirror_table();
        for (label, _) in t.iter() {
            let b = t.vector(label).unwrap();
            for eta in [EisensteinInt::zeta(), EisensteinInt::new(-1, -1)] {
                let r = reflection(&b, &eta).unwrap();
                assert_eq!(r.apply(&b), b.scale(&eta.to_cyc()), "label {label}");
                assert!(r.is_unitary());
                assert!(r.to_eisenstein().is_ok());
                assert_eq!(r.pow(3), HermMatrix::identity());
                assert_ne!(r, HermMatrix::identity());
                assert_eq!(r.det(), eta.to_cyc());
                // the orthogonal complement of b is fixed
                for j in 0..4 {
                    let e = basis(j);
                    let c = herm_form(&b, &e);
                    // e − (<b,e>/<b,b>) b  is orthogonal to b
                    let a = HermVector(std::array::from_fn(|i| &e.0[i] + &(&c * &b.0[i])));
                    assert!(herm_form(&b, &a).is_zero());
                    assert_eq!(r.apply(&a), a);
                }
            }
        }
    }

    #[test]
    fn reflection_kinds_and_errors() {
        let b = basis(2);
        assert_eq!(
            triflection(&b).unwrap(),
            HermMatrix::diag([CycRat::one(), CycRat::one(), CycRat::zeta(), CycRat::one()])
        );
        let bi = reflection(&b, &EisensteinInt::new(-1, 0)).unwrap();
        assert_eq!(bi.pow(2), HermMatrix::identity());
        let hex = reflection(&b, &EisensteinInt::new(0, -1)).unwrap();
        assert_eq!(hex.pow(6), HermMatrix::identity());
        assert_ne!(hex.pow(3), HermMatrix::identity());
        assert_eq!(reflection_kind(&EisensteinInt::new(0, -1)).unwrap(), ReflectionKind::Hexflection);
        assert!(matches!(reflection(&b, &EisensteinInt::one()), Err(Error::NotAUnit(_))));
        assert!(matches!(reflection(&b, &EisensteinInt::new(2, 0)), Err(Error::NotAUnit(_))));
        let isotropic = HermVector::from_ints([1, 0, 0, 0]);
        assert_eq!(reflection(&isotropic, &EisensteinInt::zeta()), Err(Error::IsotropicMirror));
    }

    #[test]
    fn unitary_examples() {
        assert!(HermMatrix::identity().is_unitary());
        assert!(!HermMatrix::from_ints([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).is_unitary());
    }

    #[test]
    fn signature_is_one_three() {
        // symmetric Gaussian diagonalization of the Gram matrix over Q
        let mut g: Vec<Vec<BigRational>> =
            GRAM.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let n = 4;
        let mut diag = Vec::new();
        for k in 0..n {
            if g[k][k] == BigRational::from_integer(0.into()) {
                // pivot via a_k ← a_k + a_j for some j with g[k][j] ≠ 0
                if let Some(j) = (k + 1..n).find(|&j| g[k][j] != BigRational::from_integer(0.into())) {
                    for c in 0..n {
                        let v = g[j][c].clone();
                        g[k][c] += v;
                    }
                    for r in 0..n {
                        let v = g[r][j].clone();
                        g[r][k] += v;
                    }
                }
            }
            let p = g[k][k].clone();
            diag.push(p.clone());
            for r in k + 1..n {
                let f = &g[r][k] / &p;
                for c in k..n {
                    let d = &f * &g[k][c];
                    g[r][c] -= d;
                }
            }
            for c in k + 1..n {
                g[k][c] = BigRational::from_integer(0.into());
            }
        }
        let zero = BigRational::from_integer(0.into());
        let pos = diag.iter().filter(|d| **d > zero).count();
        let neg = diag.iter().filter(|d| **d < zero).count();
        assert_eq!((pos, neg), (1, 3));
        let v = HermVector::from_ints([1, 1, 0, 0]);
        assert_eq!(herm_form(&v, &v), CycRat::from(2));
    }
}
