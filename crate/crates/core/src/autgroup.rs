//! The monomial automorphism group `H` of the cubic pair and its character
//! on the Calabi–Yau form.
//!
//! An element acts on `P⁵` by `x ↦ D_s P_σ x` where `P_σ e_j = e_σ(j)` and
//! `D_s = diag(ζ^s₀, …, ζ^s₅)`. `σ` preserves or swaps the blocks `{0,1,2}`
//! and `{3,4,5}`, and `s₀+s₁+s₂ ≡ s₃+s₄+s₅ (mod 3)`. Scalars `ζ·id` act
//! trivially, so `s` is stored normalized to `s₀ = 0`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::cyclo::CycRat;
use crate::error::{Error, Result};
use crate::linalg;
use crate::variety::{self, ProjPoint};

pub const H_ORDER: usize = 5832;
pub const KERNEL_ORDER: usize = 972;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialAut {
    perm: [u8; 6],
    exps: [u8; 6],
}

fn is_block_compatible(perm: &[u8; 6]) -> bool {
    let image: BTreeSet<u8> = perm[..3].iter().copied().collect();
    let mut seen = *perm;
    seen.sort_unstable();
    seen == [0, 1, 2, 3, 4, 5] && (image == BTreeSet::from([0, 1, 2]) || image == BTreeSet::from([3, 4, 5]))
}

fn torus_condition(exps: &[u8; 6]) -> bool {
    (exps[0] + exps[1] + exps[2]) % 3 == (exps[3] + exps[4] + exps[5]) % 3
}

fn permutation_sign(perm: &[u8; 6]) -> i8 {
    let inversions = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl MonomialAut {
    /// Builds and canonicalizes `(σ, s)`; `exps` are exponents of `ζ`, taken mod 3.
    pub fn new(perm: [u8; 6], exps: [i64; 6]) -> Result<Self> {
        if !is_block_compatible(&perm) {
            return Err(Error::NotAnAutomorphism(format!("permutation {perm:?} mixes blocks")));
        }
        let exps = exps.map(|e| e.rem_euclid(3) as u8);
        if !torus_condition(&exps) {
            return Err(Error::NotAnAutomorphism(format!("scalings {exps:?} violate the torus condition")));
        }
        Ok(Self::canonical(perm, exps))
    }

    fn canonical(perm: [u8; 6], exps: [u8; 6]) -> Self {
        let shift = exps[0];
        Self { perm, exps: exps.map(|e| (e + 3 - shift) % 3) }
    }

    pub fn identity() -> Self {
        Self { perm: [0, 1, 2, 3, 4, 5], exps: [0; 6] }
    }

    pub fn permutation(perm: [u8; 6]) -> Result<Self> {
        Self::new(perm, [0; 6])
    }

    pub fn diagonal(exps: [i64; 6]) -> Result<Self> {
        Self::new([0, 1, 2, 3, 4, 5], exps)
    }

    /// `X0 ↔ X3, X1 ↔ X4, X2 ↔ X5`.
    pub fn block_swap() -> Self {
        Self { perm: [3, 4, 5, 0, 1, 2], exps: [0; 6] }
    }

    pub fn perm(&self) -> [u8; 6] {
        self.perm
    }

    /// Normalized exponents, `exps()[0] == 0`.
    pub fn exps(&self) -> [u8; 6] {
        self.exps
    }

    pub fn swaps_blocks(&self) -> bool {
        self.perm[0] >= 3
    }

    pub fn is_permutation(&self) -> bool {
        self.exps == [0; 6]
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm == [0, 1, 2, 3, 4, 5]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.map(|j| self.perm[j as usize]);
        let mut inv = [0u8; 6];
        for (j, &i) in self.perm.iter().enumerate() {
            inv[i as usize] = j as u8;
        }
        let exps = std::array::from_fn(|i| (self.exps[i] + other.exps[inv[i] as usize]) % 3);
        Self::canonical(perm, exps)
    }

    pub fn inverse(&self) -> Self {
        let mut g = *self;
        let mut prev = Self::identity();
        // every element has order dividing 2·3·6 = 36
        while g != Self::identity() {
            prev = g;
            g = g.compose(self);
        }
        prev
    }

    /// The 6×6 monomial matrix `D_s P_σ`.
    pub fn matrix(&self) -> [[CycRat; 6]; 6] {
        let mut m: [[CycRat; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| CycRat::zero()));
        for j in 0..6 {
            let i = self.perm[j] as usize;
            m[i][j] = CycRat::zeta_pow(self.exps[i] as i64);
        }
        m
    }

    pub fn det(&self) -> CycRat {
        linalg::det_cyc(self.matrix().iter().map(|r| r.to_vec()).collect())
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let m = self.matrix();
        let x = p.coords();
        let y = std::array::from_fn(|i| (0..6).fold(CycRat::zero(), |acc, j| &acc + &(&m[i][j] * &x[j])));
        ProjPoint::new(y).expect("invertible map keeps the point nonzero")
    }
}

impl fmt::Display for MonomialAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm={:?} exps={:?}", self.perm, self.exps)
    }
}

/// Element `±ζ^k` of `μ₆`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharacterValue {
    negative: bool,
    cube: u8,
}

impl CharacterValue {
    pub const ONE: Self = Self { negative: false, cube: 0 };

    pub fn new(sign: i8, cube_exponent: i64) -> Self {
        Self { negative: sign < 0, cube: cube_exponent.rem_euclid(3) as u8 }
    }

    pub fn mul(self, rhs: Self) -> Self {
        Self { negative: self.negative ^ rhs.negative, cube: (self.cube + rhs.cube) % 3 }
    }

    pub fn pow(self, k: u32) -> Self {
        (0..k).fold(Self::ONE, |acc, _| acc.mul(self))
    }

    pub fn to_cyc(self) -> CycRat {
        let z = CycRat::zeta_pow(self.cube as i64);
        if self.negative {
            -z
        } else {
            z
        }
    }

    pub fn from_cyc(x: &CycRat) -> Option<Self> {
        if let Some(k) = x.cube_root_exponent() {
            return Some(Self { negative: false, cube: k });
        }
        (-x).cube_root_exponent().map(|k| Self { negative: true, cube: k })
    }

    /// All six values.
    pub fn all() -> [Self; 6] {
        std::array::from_fn(|i| Self { negative: i >= 3, cube: (i % 3) as u8 })
    }
}

impl fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match self.cube {
            0 => write!(f, "{sign}1"),
            1 => write!(f, "{sign}z"),
            _ => write!(f, "{sign}z2"),
        }
    }
}

/// `χ` on an un-normalized `(σ, s)`: `sgn(σ) · ζ^(s₀+s₁+s₂)`.
///
/// Block permutations give their sign, the block swap (three transpositions)
/// gives `−1`, and a torus element gives `ζ₀ζ₁ζ₂`; the formula is the
/// multiplicative extension of those three rules.
pub fn chi_of_raw(perm: &[u8; 6], exps: &[i64; 6]) -> CharacterValue {
    CharacterValue::new(permutation_sign(perm), exps[0] + exps[1] + exps[2])
}

pub fn chi(g: &MonomialAut) -> CharacterValue {
    chi_of_raw(&g.perm, &g.exps.map(i64::from))
}

/// `det(M_g) / (λ_F λ_G)`: the factor by which `g` pulls back the residue
/// form of `Σ(−1)ⁱ zᵢ dz₀∧…∧dẑᵢ∧…∧dz₅ / (F·G)`.
pub fn chi_via_pullback(g: &MonomialAut) -> Result<CharacterValue> {
    let (lambda_f, lambda_g) = variety::h_stabilizes_ideal(g)?;
    let value = g.det().div(&(&lambda_f * &lambda_g))?;
    CharacterValue::from_cyc(&value).ok_or_else(|| Error::Verification(format!("pullback factor {value} is not in μ₆")))
}

pub fn generators() -> Vec<MonomialAut> {
    let perms = [[1, 0, 2, 3, 4, 5], [0, 2, 1, 3, 4, 5], [0, 1, 2, 4, 3, 5], [0, 1, 2, 3, 5, 4]];
    let torus = [[1, 2, 0, 0, 0, 0], [0, 1, 2, 0, 0, 0], [0, 0, 0, 1, 2, 0], [0, 0, 0, 0, 1, 2], [1, 0, 0, 1, 0, 0]];
    perms
        .into_iter()
        .map(|p| MonomialAut::permutation(p).expect("block permutation"))
        .chain([MonomialAut::block_swap()])
        .chain(torus.into_iter().map(|e| MonomialAut::diagonal(e).expect("torus element")))
        .collect()
}

/// Breadth-first closure of `generators`, in canonical order.
pub fn close(generators: &[MonomialAut]) -> Vec<MonomialAut> {
    let mut seen = BTreeSet::from([MonomialAut::identity()]);
    let mut queue = VecDeque::from([MonomialAut::identity()]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// All of `H`; fails unless the closure has order 5832.
pub fn h_group() -> Result<Vec<MonomialAut>> {
    let h = close(&generators());
    if h.len() != H_ORDER {
        return Err(Error::Verification(format!("|H| = {}, expected {H_ORDER}", h.len())));
    }
    Ok(h)
}

pub fn permutation_subgroup(h: &[MonomialAut]) -> Vec<MonomialAut> {
    h.iter().filter(|g| g.is_permutation()).copied().collect()
}

pub fn torus_subgroup(h: &[MonomialAut]) -> Vec<MonomialAut> {
    h.iter().filter(|g| g.is_diagonal()).copied().collect()
}

/// `ker χ`; fails unless it has order 972.
pub fn chi_kernel(h: &[MonomialAut]) -> Result<Vec<MonomialAut>> {
    let kernel: Vec<_> = h.iter().filter(|g| chi(g) == CharacterValue::ONE).copied().collect();
    if kernel.len() != KERNEL_ORDER {
        return Err(Error::Verification(format!("|ker χ| = {}, expected {KERNEL_ORDER}", kernel.len())));
    }
    Ok(kernel)
}

pub fn chi_image(h: &[MonomialAut]) -> BTreeSet<CharacterValue> {
    h.iter().map(chi).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_basics() {
        let g = MonomialAut::new([1, 2, 0, 4, 3, 5], [0, 1, 2, 1, 1, 1]).unwrap();
        assert_eq!(g.compose(&MonomialAut::identity()), g);
        assert_eq!(MonomialAut::identity().compose(&g), g);
        assert_eq!(g.compose(&g.inverse()), MonomialAut::identity());
        let s = MonomialAut::block_swap();
        let t = MonomialAut::new([4, 3, 5, 2, 0, 1], [0; 6]).unwrap();
        assert!(!s.compose(&t).swaps_blocks());
        assert!(s.swaps_blocks() && t.swaps_blocks());
    }

    #[test]
    fn composition_matches_matrices() {
        let a = MonomialAut::new([3, 5, 4, 1, 0, 2], [0, 2, 1, 2, 0, 1]).unwrap();
        let b = MonomialAut::new([1, 0, 2, 5, 3, 4], [0, 1, 1, 0, 2, 0]).unwrap();
        let (ma, mb, mab) = (a.matrix(), b.matrix(), a.compose(&b).matrix());
        let mut prod: [[CycRat; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| CycRat::zero()));
        for i in 0..6 {
            for j in 0..6 {
                prod[i][j] = (0..6).fold(CycRat::zero(), |acc, k| &acc + &(&ma[i][k] * &mb[k][j]));
            }
        }
        // equal up to a global cube root of unity
        let (i, j) = (0..36).map(|n| (n / 6, n % 6)).find(|&(i, j)| !prod[i][j].is_zero()).unwrap();
        let c = mab[i][j].div(&prod[i][j]).unwrap();
        assert!(c.cube_root_exponent().is_some());
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(mab[i][j], &c * &prod[i][j]);
            }
        }
    }

    #[test]
    fn invalid_elements() {
        assert!(MonomialAut::permutation([0, 3, 2, 1, 4, 5]).is_err());
        assert!(MonomialAut::diagonal([1, 0, 0, 0, 0, 0]).is_err());
        assert!(MonomialAut::permutation([0, 0, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn group_orders() {
        let h = h_group().unwrap();
        assert_eq!(h.len(), 5832);
        assert_eq!(permutation_subgroup(&h).len(), 72);
        assert_eq!(torus_subgroup(&h).len(), 81);
    }

    #[test]
    fn chi_rules() {
        let t01 = MonomialAut::permutation([1, 0, 2, 3, 4, 5]).unwrap();
        assert_eq!(chi(&t01), CharacterValue::new(-1, 0));
        assert_eq!(chi(&MonomialAut::block_swap()), CharacterValue::new(-1, 0));
        let d = MonomialAut::diagonal([1, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(chi(&d), CharacterValue::new(1, 1));
        assert_eq!(chi(&d).to_cyc(), CycRat::zeta());
        assert_eq!(chi(&MonomialAut::identity()), CharacterValue::ONE);
    }

    #[test]
    fn character_values() {
        for v in CharacterValue::all() {
            assert_eq!(v.pow(6), CharacterValue::ONE);
            assert_eq!(CharacterValue::from_cyc(&v.to_cyc()), Some(v));
        }
        assert_eq!(CharacterValue::from_cyc(&CycRat::from(2)), None);
    }

    #[test]
    fn chi_well_defined_under_rescaling() {
        for g in close(&generators()).iter().step_by(7) {
            let raw = g.exps().map(i64::from);
            for c in 0..3 {
                let shifted = raw.map(|e| e + c);
                assert_eq!(chi_of_raw(&g.perm(), &shifted), chi(g));
                assert_eq!(MonomialAut::new(g.perm(), shifted).unwrap(), *g);
            }
        }
    }

    #[test]
    fn chi_is_homomorphism_on_generators() {
        let gens = generators();
        for a in &gens {
            for b in &gens {
                assert_eq!(chi(&a.compose(b)), chi(a).mul(chi(b)));
            }
        }
    }

    #[test]
    fn kernel_and_image() {
        let h = h_group().unwrap();
        assert_eq!(chi_kernel(&h).unwrap().len(), 972);
        assert_eq!(h.len() / 972, 6);
        assert_eq!(chi_image(&h).len(), 6);
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(chi_via_pullback(&MonomialAut::identity()).unwrap(), CharacterValue::ONE);
        let s = MonomialAut::block_swap();
        assert_eq!(s.det(), CycRat::from(-1));
        assert_eq!(chi_via_pullback(&s).unwrap(), CharacterValue::new(-1, 0));
    }
}
