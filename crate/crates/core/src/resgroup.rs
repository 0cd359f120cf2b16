//! The residue ring `Z[ζ]/3` and finite matrix groups over it.
//!
//! `G'` is generated by the principal congruence subgroup `G₃[3]` and six
//! triflections. Since `G₃[3]` is exactly the kernel of reduction mod 3, the
//! quotient `G'/G₃[3]` is the group generated by the six reduced triflections,
//! which is finite and small enough for a plain breadth-first closure.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::cyclo::EisensteinInt;
use crate::error::{Error, Result};
use crate::hermitian::{self, HermMatrix, GRAM};

/// Class of `a + bζ` modulo `3Z[ζ]`, digits in `0..3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mod3Residue {
    a: u8,
    b: u8,
}

impl Mod3Residue {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const ZETA: Self = Self { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Self { a: a.rem_euclid(3) as u8, b: b.rem_euclid(3) as u8 }
    }

    pub fn digits(self) -> (u8, u8) {
        (self.a, self.b)
    }

    /// All nine residues in digit order.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..9).map(|i| Self { a: i / 3, b: i % 3 })
    }

    pub fn reduce(x: &EisensteinInt) -> Self {
        let three = BigInt::from(3);
        let digit = |v: &BigInt| v.mod_floor(&three).to_u8().expect("digit below 3");
        Self { a: digit(&x.a), b: digit(&x.b) }
    }

    pub fn conj(self) -> Self {
        Self::new(self.a as i64 - self.b as i64, -(self.b as i64))
    }

    /// Units are the classes outside the maximal ideal `(1−ζ)`, i.e. `a + b ≢ 0`.
    pub fn is_unit(self) -> bool {
        (self.a + self.b) % 3 != 0
    }

    pub fn inv(self) -> Option<Self> {
        Self::all().find(|&y| self * y == Self::ONE)
    }
}

impl Add for Mod3Residue {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self { a: (self.a + r.a) % 3, b: (self.b + r.b) % 3 }
    }
}

impl Sub for Mod3Residue {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + (-r)
    }
}

impl Neg for Mod3Residue {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: (3 - self.a) % 3, b: (3 - self.b) % 3 }
    }
}

impl Mul for Mod3Residue {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let (a, b, c, d) = (self.a as i64, self.b as i64, r.a as i64, r.b as i64);
        Self::new(a * c - b * d, a * d + b * c - b * d)
    }
}

/// 4×4 matrix over `Z[ζ]/3`. Derived ordering is row-major on digit pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueMatrix(pub [[Mod3Residue; 4]; 4]);

impl ResidueMatrix {
    pub fn zero() -> Self {
        Self([[Mod3Residue::ZERO; 4]; 4])
    }

    pub fn scalar(u: Mod3Residue) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = u;
        }
        m
    }

    pub fn identity() -> Self {
        Self::scalar(Mod3Residue::ONE)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = (0..4).fold(Mod3Residue::ZERO, |acc, k| acc + self.0[i][k] * rhs.0[k][j]);
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    /// Leibniz expansion; no division needed.
    pub fn det(&self) -> Mod3Residue {
        let mut total = Mod3Residue::ZERO;
        for perm in permutations4() {
            let sign = if perm_parity(&perm) { -Mod3Residue::ONE } else { Mod3Residue::ONE };
            let term = (0..4).fold(sign, |acc, i| acc * self.0[i][perm[i]]);
            total = total + term;
        }
        total
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// Scalar `u` when the matrix is `u·identity`.
    pub fn as_scalar(&self) -> Option<Mod3Residue> {
        let u = self.0[0][0];
        (*self == Self::scalar(u)).then_some(u)
    }

    /// `X* J X = J` for the reduced Gram matrix.
    pub fn preserves_form(&self) -> bool {
        let j = gram_mod3();
        self.adjoint().mul(&j).mul(self) == j
    }

    /// Sixteen space-separated digit pairs, row-major.
    pub fn to_digit_line(&self) -> String {
        self.0.iter().flatten().map(|r| format!("{}{}", r.a, r.b)).collect::<Vec<_>>().join(" ")
    }

    pub fn from_digit_line(line: &str) -> Result<Self> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 16 {
            return Err(Error::Parse(format!("expected 16 digit pairs: {line:?}")));
        }
        let mut m = Self::zero();
        for (k, t) in toks.iter().enumerate() {
            let d: Vec<u8> = t.bytes().map(|c| c.wrapping_sub(b'0')).collect();
            if d.len() != 2 || d.iter().any(|&x| x > 2) {
                return Err(Error::Parse(format!("bad digit pair {t:?}")));
            }
            m.0[k / 4][k % 4] = Mod3Residue { a: d[0], b: d[1] };
        }
        Ok(m)
    }
}

impl fmt::Display for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digit_line())
    }
}

fn gram_mod3() -> ResidueMatrix {
    let mut j = ResidueMatrix::zero();
    for (i, row) in GRAM.iter().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            j.0[i][k] = Mod3Residue::new(x, 0);
        }
    }
    j
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// `true` for odd permutations.
fn perm_parity(p: &[usize; 4]) -> bool {
    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 1
}

/// Entrywise reduction of a matrix with entries in `Z[ζ]`.
pub fn reduce_mod3(m: &HermMatrix) -> Result<ResidueMatrix> {
    let eis = m.to_eisenstein()?;
    let mut out = ResidueMatrix::zero();
    for i in 0..4 {
        for j in 0..4 {
            out.0[i][j] = Mod3Residue::reduce(&eis[i][j]);
        }
    }
    Ok(out)
}

/// A finite group of residue matrices with its generators.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    generators: Vec<ResidueMatrix>,
    elements: BTreeSet<ResidueMatrix>,
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ResidueMatrix] {
        &self.generators
    }

    /// Elements in canonical (row-major digit) order.
    pub fn elements(&self) -> impl Iterator<Item = &ResidueMatrix> {
        self.elements.iter()
    }

    pub fn contains(&self, m: &ResidueMatrix) -> bool {
        self.elements.contains(m)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|g| self.generators.iter().all(|h| g.mul(h) == h.mul(g)))
    }

    /// One element per line, canonical order.
    pub fn export_text(&self) -> String {
        let mut out = format!("# {} elements; 16 digit pairs ab = a+b*z mod 3, row-major\n", self.order());
        for m in &self.elements {
            out.push_str(&m.to_digit_line());
            out.push('\n');
        }
        out
    }
}

/// Breadth-first closure under right multiplication by the generators.
pub fn closure(generators: &[ResidueMatrix]) -> Result<FiniteMatrixGroup> {
    if let Some(i) = generators.iter().position(|g| !g.is_invertible()) {
        return Err(Error::NotInvertible(i));
    }
    let id = ResidueMatrix::identity();
    let mut elements = BTreeSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.mul(g);
            if elements.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(FiniteMatrixGroup { generators: generators.to_vec(), elements })
}

/// Elements of the form `u·identity`.
pub fn scalar_subgroup(group: &FiniteMatrixGroup) -> Vec<ResidueMatrix> {
    group.elements().filter(|m| m.as_scalar().is_some()).copied().collect()
}

/// Order of the image in `PGL`: `|G| / |scalars ∩ G|`.
pub fn covering_degree(group: &FiniteMatrixGroup) -> usize {
    group.order() / scalar_subgroup(group).len()
}

/// Mirror labels whose triflections generate `G'` together with `G₃[3]`.
pub const GENERATING_MIRRORS: [usize; 6] = [1, 2, 7, 8, 9, 10];

/// Reduced triflections with multiplier `eta` along the generating mirrors.
pub fn g_prime_generators(eta: &EisensteinInt) -> Result<Vec<ResidueMatrix>> {
    let table = hermitian::mirror_table();
    GENERATING_MIRRORS
        .iter()
        .map(|&label| {
            let b = table.vector(label)?;
            reduce_mod3(&hermitian::reflection(&b, eta)?)
        })
        .collect()
}

/// Image of `G'` in `GL(4, Z[ζ]/3)`, generated with `η = ζ`.
pub fn g_prime_image() -> Result<FiniteMatrixGroup> {
    closure(&g_prime_generators(&EisensteinInt::zeta())?)
}

/// The image of `G'` with `−identity` adjoined. `−identity` acts trivially
/// on the ball, so this group has the same image in `PGL`.
pub fn g_prime_image_with_minus_identity() -> Result<FiniteMatrixGroup> {
    let mut gens = g_prime_generators(&EisensteinInt::zeta())?;
    gens.push(ResidueMatrix::scalar(-Mod3Residue::ONE));
    closure(&gens)
}
