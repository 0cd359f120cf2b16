//! The threefold `X ⊂ P⁵` cut out by
//!
//! ```text
//! F = X0X1X2 − X3X4X5,    G = X0³ + X1³ + X2³ − X3³ − X4³ − X5³
//! ```
//!
//! and its singular locus.
//!
//! # Completeness of the singular-point search
//!
//! A point is singular when `F = G = 0` and `∇F`, `∇G` are dependent.
//!
//! *All coordinates nonzero.* Then `∇F ≠ 0`, so `∇G = μ∇F`, which reads
//! `3xᵢ² = μ·(x₀x₁x₂)/xᵢ` on the first block and `3xᵢ² = μ·(x₃x₄x₅)/xᵢ` on
//! the second (the signs cancel). With `P = x₀x₁x₂ = x₃x₄x₅` this gives
//! `xᵢ³ = μP/3` for every `i`, so all six cubes agree; scaling `x₀ = 1`
//! puts every coordinate in `μ₃`. `G = 0` then holds automatically and
//! `F = 0` is the torus condition, leaving `3⁵/3 = 81` points.
//!
//! *Some coordinate zero.* Say `x₀ = 0` (the blocks are symmetric). `F = 0`
//! forces a zero in the other block, say `x₃ = 0`. Then
//! `∇F = (x₁x₂, 0, 0, −x₄x₅, 0, 0)` and `∇G = 3(0, x₁², x₂², 0, −x₄², −x₅²)`
//! have disjoint supports, so one of them vanishes. `∇G = 0` would make the
//! point zero; hence `∇F = 0`, i.e. `x₁x₂ = x₄x₅ = 0`, and each block has at
//! most one nonzero coordinate. `G = 0` then says the two remaining cubes
//! agree (both blocks nonzero, else the point is zero), so scaling puts both
//! coordinates in `μ₃`: `3 · 3 · 3 = 27` points.
//!
//! Hence every singular point is, after scaling, a vector over `{0} ∪ μ₃`,
//! and [`singular_points`] enumerates exactly that finite set.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autgroup::MonomialAut;
use crate::cyclo::CycRat;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::Poly;

pub const NODE_COUNT: usize = 108;

/// Point of `P⁵` whose first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([CycRat; 6]);

impl ProjPoint {
    pub fn new(coords: [CycRat; 6]) -> Result<Self> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(Error::DivisionByZero)?;
        let inv = lead.inv()?;
        Ok(Self(coords.map(|c| &c * &inv)))
    }

    pub fn from_ints(coords: [i64; 6]) -> Result<Self> {
        Self::new(coords.map(CycRat::from))
    }

    pub fn coords(&self) -> &[CycRat; 6] {
        &self.0
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    /// Space-separated `0|1|z|z2` tokens, when every coordinate is one of those.
    pub fn tokens(&self) -> Option<String> {
        self.0
            .iter()
            .map(|c| if c.is_zero() { Some("0") } else { c.cube_root_exponent().map(|k| ["1", "z", "z2"][k as usize]) })
            .collect::<Option<Vec<_>>>()
            .map(|t| t.join(" "))
    }

    pub fn parse_tokens(line: &str) -> Result<Self> {
        let coords: Vec<CycRat> = line
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(CycRat::zero()),
                "1" => Ok(CycRat::one()),
                "z" => Ok(CycRat::zeta()),
                "z2" => Ok(CycRat::zeta2()),
                _ => Err(Error::Parse(format!("bad point token {t:?}"))),
            })
            .collect::<Result<_>>()?;
        let coords: [CycRat; 6] =
            coords.try_into().map_err(|_| Error::Parse(format!("expected 6 tokens: {line:?}")))?;
        Self::new(coords)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(":"))
    }
}

pub fn f_poly() -> Poly {
    let x = |i| Poly::var(i);
    x(0).mul(&x(1)).mul(&x(2)).sub(&x(3).mul(&x(4)).mul(&x(5)))
}

pub fn g_poly() -> Poly {
    (0..6).fold(Poly::zero(), |acc, i| {
        let cube = Poly::var(i).pow(3);
        if i < 3 {
            acc.add(&cube)
        } else {
            acc.sub(&cube)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalGradient {
    pub f: CycRat,
    pub g: CycRat,
    pub grad_f: [CycRat; 6],
    pub grad_g: [CycRat; 6],
}

pub fn eval_and_gradient(p: &ProjPoint) -> EvalGradient {
    let x = &p.0;
    let prod = |a: usize, b: usize| &x[a] * &x[b];
    let first = &prod(0, 1) * &x[2];
    let second = &prod(3, 4) * &x[5];
    let cubes: Vec<CycRat> = x.iter().map(|c| c.pow(3)).collect();
    let g = (0..6).fold(CycRat::zero(), |acc, i| if i < 3 { &acc + &cubes[i] } else { &acc - &cubes[i] });
    let grad_f = [prod(1, 2), prod(0, 2), prod(0, 1), -prod(4, 5), -prod(3, 5), -prod(3, 4)];
    let grad_g = std::array::from_fn(|i| {
        let sq = &CycRat::from(3) * &x[i].pow(2);
        if i < 3 {
            sq
        } else {
            -sq
        }
    });
    EvalGradient { f: &first - &second, g, grad_f, grad_g }
}

/// All fifteen 2×2 minors of the Jacobian vanish.
pub fn jacobian_rank_at_most_one(e: &EvalGradient) -> bool {
    (0..6).all(|i| (i + 1..6).all(|j| (&e.grad_f[i] * &e.grad_g[j] - &e.grad_f[j] * &e.grad_g[i]).is_zero()))
}

pub fn is_singular(p: &ProjPoint) -> bool {
    let e = eval_and_gradient(p);
    e.f.is_zero() && e.g.is_zero() && jacobian_rank_at_most_one(&e)
}

/// Canonical points with coordinates in `{0} ∪ μ₃`: `4⁶ − 1` vectors up to scaling.
fn candidate_points() -> Vec<ProjPoint> {
    let values = [CycRat::zero(), CycRat::one(), CycRat::zeta(), CycRat::zeta2()];
    let mut out = Vec::new();
    for code in 1..4usize.pow(6) {
        let digits: [usize; 6] = std::array::from_fn(|i| (code / 4usize.pow(5 - i as u32)) % 4);
        // only canonical representatives: first nonzero digit is 1
        if digits.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        let coords = digits.map(|d| values[d].clone());
        out.push(ProjPoint(coords));
    }
    out
}

/// The singular locus, sorted; fails unless it has exactly 108 points.
pub fn singular_points() -> Result<Vec<ProjPoint>> {
    let mut pts: Vec<ProjPoint> = candidate_points().into_iter().filter(is_singular).collect();
    pts.sort();
    if pts.len() != NODE_COUNT {
        return Err(Error::Verification(format!("found {} singular points, expected {NODE_COUNT}", pts.len())));
    }
    Ok(pts)
}

/// One line of tokens per singular point.
pub fn export_points(points: &[ProjPoint]) -> String {
    let mut out = String::from("# singular points of X, canonical coordinates, tokens 0|1|z|z2\n");
    for p in points {
        out.push_str(&p.tokens().unwrap_or_else(|| p.to_string()));
        out.push('\n');
    }
    out
}

fn hessian_f(x: &[CycRat; 6]) -> [[CycRat; 6]; 6] {
    let mut h: [[CycRat; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| CycRat::zero()));
    for (a, b, c, sign) in [(0, 1, 2, 1), (0, 2, 1, 1), (1, 2, 0, 1), (3, 4, 5, -1), (3, 5, 4, -1), (4, 5, 3, -1)] {
        let v = &CycRat::from(sign) * &x[c];
        h[a][b] = v.clone();
        h[b][a] = v;
    }
    h
}

fn hessian_g(x: &[CycRat; 6]) -> [[CycRat; 6]; 6] {
    let mut h: [[CycRat; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| CycRat::zero()));
    for i in 0..6 {
        let six = CycRat::from(if i < 3 { 6 } else { -6 });
        h[i][i] = &six * &x[i];
    }
    h
}

/// Nonzero `(α, β)` with `α∇F + β∇G = 0` and the nonzero gradient, if any.
fn degenerate_combination(e: &EvalGradient) -> Result<(CycRat, CycRat, [CycRat; 6])> {
    let f_zero = e.grad_f.iter().all(CycRat::is_zero);
    let g_zero = e.grad_g.iter().all(CycRat::is_zero);
    match (f_zero, g_zero) {
        (true, true) => Err(Error::AmbiguousCombination),
        (true, false) => Ok((CycRat::one(), CycRat::zero(), e.grad_g.clone())),
        (false, true) => Ok((CycRat::zero(), CycRat::one(), e.grad_f.clone())),
        (false, false) => {
            // ∇F = c·∇G
            let k = e.grad_g.iter().position(|x| !x.is_zero()).expect("nonzero");
            let c = e.grad_f[k].div(&e.grad_g[k])?;
            Ok((CycRat::one(), -c, e.grad_g.clone()))
        }
    }
}

/// Tangent-cone test: the Hessian of the degenerate combination `αF + βG`,
/// restricted to `{v : n·v = 0}` for the surviving gradient `n`, has rank 4.
/// The Euler vector `p` lies in its radical, so rank 4 on the 5-dimensional
/// hyperplane is nondegeneracy on the 4-dimensional quotient.
pub fn is_node(p: &ProjPoint) -> Result<bool> {
    let e = eval_and_gradient(p);
    if !(e.f.is_zero() && e.g.is_zero() && jacobian_rank_at_most_one(&e)) {
        return Err(Error::NotSingular);
    }
    let (alpha, beta, normal) = degenerate_combination(&e)?;
    let (hf, hg) = (hessian_f(&p.0), hessian_g(&p.0));
    let h: Vec<Vec<CycRat>> =
        (0..6).map(|i| (0..6).map(|j| &(&alpha * &hf[i][j]) + &(&beta * &hg[i][j])).collect()).collect();
    let basis = linalg::hyperplane_basis(&normal);
    let gram: Vec<Vec<CycRat>> = basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|v| {
                    let mut acc = CycRat::zero();
                    for i in 0..6 {
                        for j in 0..6 {
                            if !h[i][j].is_zero() {
                                acc = &acc + &(&(&u[i] * &h[i][j]) * &v[j]);
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(linalg::rank_cyc(gram) == 4)
}

/// `(λ_F, λ_G)` with `F∘g = λ_F·F` and `G∘g = λ_G·G`, both in `μ₆`.
pub fn h_stabilizes_ideal(g: &MonomialAut) -> Result<(CycRat, CycRat)> {
    let m = g.matrix();
    let images: [Poly; 6] =
        std::array::from_fn(|i| (0..6).fold(Poly::zero(), |acc, j| acc.add(&Poly::var(j).scale(&m[i][j]))));
    let scalar = |p: Poly, name: &str| -> Result<CycRat> {
        let pulled = p.substitute(&images);
        let lambda = pulled
            .ratio_to(&p)
            .ok_or_else(|| Error::NotAnAutomorphism(format!("{name}∘g is not a multiple of {name}")))?;
        if lambda.pow(6).is_one() {
            Ok(lambda)
        } else {
            Err(Error::NotAnAutomorphism(format!("{name} scales by {lambda}")))
        }
    };
    Ok((scalar(f_poly(), "F")?, scalar(g_poly(), "G")?))
}

/// Signs `(s_F, s_G)` with `F(subst) = s_F·R₁`, `G(subst) = s_G·R₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionOutcome {
    pub f_sign: Option<i64>,
    pub g_sign: Option<i64>,
    pub f_image: Poly,
    pub g_image: Poly,
}

impl SubstitutionOutcome {
    pub fn holds(&self) -> bool {
        self.f_sign.is_some() && self.g_sign.is_some()
    }
}

/// Slots of the six trivial-multiplier forms in the target ring.
pub const B_SLOTS: [usize; 6] = [6, 7, 8, 9, 12, 13];

/// Variable `Y_k` standing for `B_{B_SLOTS[k]}`.
fn b(label: usize) -> Poly {
    Poly::var(B_SLOTS.iter().position(|&l| l == label).expect("trivial-multiplier form"))
}

/// `B₆B₈B₁₃ − B₇B₉B₁₂` and `B₆³ + B₇³ − B₈³ + B₉³ − B₁₂³ − B₁₃³`.
pub fn modular_relations() -> (Poly, Poly) {
    let r1 = b(6).mul(&b(8)).mul(&b(13)).sub(&b(7).mul(&b(9)).mul(&b(12)));
    let r2 = b(6).pow(3).add(&b(7).pow(3)).sub(&b(8).pow(3)).add(&b(9).pow(3)).sub(&b(12).pow(3)).sub(&b(13).pow(3));
    (r1, r2)
}

/// Substitutes `X ↦ (−B₆, B₈, B₁₃, B₇, B₉, −B₁₂)` into `F` and `G`.
pub fn substitution_identity() -> SubstitutionOutcome {
    let neg = CycRat::from(-1);
    let images = [b(6).scale(&neg), b(8), b(13), b(7), b(9), b(12).scale(&neg)];
    let f_image = f_poly().substitute(&images);
    let g_image = g_poly().substitute(&images);
    let (r1, r2) = modular_relations();
    let sign = |img: &Poly, rel: &Poly| [1, -1].into_iter().find(|&s| *img == rel.scale(&CycRat::from(s)));
    SubstitutionOutcome { f_sign: sign(&f_image, &r1), g_sign: sign(&g_image, &r2), f_image, g_image }
}

pub fn substitution_identity_check() -> bool {
    substitution_identity().holds()
}

/// Floating-point screen: random points of `X` have Jacobian rank 2.
///
/// Points come from a random `(x0..x3)` with `x5 = x0x1x2/(x3x4)` and `x4`
/// a root of `u² − A u + B` in `u = x4³`. Returns the smallest normalized
/// wedge `|∇F ∧ ∇G| / (|∇F||∇G|)` seen.
pub fn smoothness_sweep(seed: u64, samples: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut done = 0;
    while done < samples {
        let mut c = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let (x0, x1, x2, x3) = (c(), c(), c(), c());
        if x3.norm() < 0.1 {
            continue;
        }
        let a = x0.powu(3) + x1.powu(3) + x2.powu(3) - x3.powu(3);
        let bq = (x0 * x1 * x2 / x3).powu(3);
        let disc = (a * a - 4.0 * bq).sqrt();
        let u = (a + disc) / 2.0;
        if u.norm() < 1e-3 {
            continue;
        }
        let x4 = u.cbrt();
        let x5 = x0 * x1 * x2 / (x3 * x4);
        let x = [x0, x1, x2, x3, x4, x5];
        let f = x0 * x1 * x2 - x3 * x4 * x5;
        let g = a - x4.powu(3) - x5.powu(3);
        let scale = x.iter().map(|v| v.norm()).fold(0.0, f64::max).powi(3);
        if f.norm() > 1e-9 * scale || g.norm() > 1e-9 * scale {
            continue;
        }
        let gf = [x1 * x2, x0 * x2, x0 * x1, -x4 * x5, -x3 * x5, -x3 * x4];
        let gg: [Complex64; 6] = std::array::from_fn(|i| if i < 3 { 3.0 * x[i] * x[i] } else { -3.0 * x[i] * x[i] });
        let nf: f64 = gf.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let ng: f64 = gg.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let wedge: f64 = (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .map(|(i, j)| (gf[i] * gg[j] - gf[j] * gg[i]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.min(wedge / (nf * ng));
        done += 1;
    }
    worst
}
