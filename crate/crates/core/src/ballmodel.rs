//! Double-precision model of the ball of positive lines in `V`.
//!
//! Chart: `e = (0,1,0,0)`, `W = {a₂ = 0}`. A positive line has a unique
//! representative `e + z` with `z = (w₁, 0, w₃, w₄)`, and positivity reads
//! `2·Re(w₁) − |w₃|² − |w₄|² > 0`. For `g ∈ U(V)`,
//! `g(e + z) = j(g,z)·(e + g⟨z⟩)`, so `j` is the second coordinate of `g(e+z)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::EisensteinInt;
use crate::error::{Error, Result};
use crate::hermitian::{self, HermMatrix, GRAM};

pub type CVector = [Complex64; 4];
pub type CMatrix = [[Complex64; 4]; 4];

pub const UNITARY_TOL: f64 = 1e-10;
pub const CHART_TOL: f64 = 1e-12;
pub const FD_STEP: f64 = 1e-5;
pub const LEMMA_TOL: f64 = 1e-6;

/// `dim V − 1`.
const N: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallPoint {
    pub w1: Complex64,
    pub w3: Complex64,
    pub w4: Complex64,
}

impl BallPoint {
    pub fn new(w1: Complex64, w3: Complex64, w4: Complex64) -> Result<Self> {
        let p = Self { w1, w3, w4 };
        let m = p.positivity();
        if !(m > 0.0) || [w1, w3, w4].iter().any(|w| !w.is_finite()) {
            return Err(Error::OutsideChart(m));
        }
        Ok(p)
    }

    /// `<e+z, e+z> = 2·Re(w₁) − |w₃|² − |w₄|²`.
    pub fn positivity(&self) -> f64 {
        2.0 * self.w1.re - self.w3.norm_sqr() - self.w4.norm_sqr()
    }

    pub fn lift(&self) -> CVector {
        [self.w1, Complex64::new(1.0, 0.0), self.w3, self.w4]
    }

    fn coords(&self) -> [Complex64; 3] {
        [self.w1, self.w3, self.w4]
    }

    fn from_coords(c: [Complex64; 3]) -> Result<Self> {
        Self::new(c[0], c[1], c[2])
    }
}

pub fn herm_form(a: &CVector, b: &CVector) -> Complex64 {
    a[0].conj() * b[1] + a[1].conj() * b[0] - a[2].conj() * b[2] - a[3].conj() * b[3]
}

pub fn embed(m: &HermMatrix) -> CMatrix {
    m.to_complex()
}

pub fn apply(g: &CMatrix, v: &CVector) -> CVector {
    std::array::from_fn(|i| (0..4).map(|k| g[i][k] * v[k]).sum())
}

pub fn mat_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn scalar(s: Complex64) -> CMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { s } else { Complex64::new(0.0, 0.0) }))
}

/// `max |<g eᵢ, g eⱼ> − <eᵢ, eⱼ>|`, relative to `max(1, max |gᵢⱼ|²)`.
pub fn unitarity_defect(g: &CMatrix) -> f64 {
    let scale = g.iter().flatten().map(|x| x.norm_sqr()).fold(1.0f64, f64::max);
    let cols: Vec<CVector> = (0..4).map(|j| std::array::from_fn(|i| g[i][j])).collect();
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let d = herm_form(&cols[i], &cols[j]) - Complex64::new(GRAM[i][j] as f64, 0.0);
            worst = worst.max(d.norm());
        }
    }
    worst / scale
}

pub fn det(g: &CMatrix) -> Complex64 {
    let mut m = *g;
    let mut d = Complex64::new(1.0, 0.0);
    for c in 0..4 {
        let p = (c..4).max_by(|&a, &b| m[a][c].norm().total_cmp(&m[b][c].norm())).expect("rows");
        if m[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..4 {
            let f = m[r][c] / m[c][c];
            for k in c..4 {
                let delta = f * m[c][k];
                m[r][k] -= delta;
            }
        }
    }
    d
}

fn act_unchecked(g: &CMatrix, z: &BallPoint) -> Result<(Complex64, BallPoint)> {
    let v = apply(g, &z.lift());
    let j = v[1];
    if j.norm() < CHART_TOL {
        return Err(Error::OutsideChart(j.norm()));
    }
    Ok((j, BallPoint::from_coords([v[0] / j, v[2] / j, v[3] / j])?))
}

/// `(j(g,z), g⟨z⟩)`.
pub fn act(g: &CMatrix, z: &BallPoint) -> Result<(Complex64, BallPoint)> {
    let defect = unitarity_defect(g);
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    act_unchecked(g, z)
}

fn det3(m: &[[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant of the complex derivative of `z ↦ g⟨z⟩`, by central differences
/// along the real direction of each chart coordinate.
pub fn jacobian_numeric(g: &CMatrix, z: &BallPoint) -> Result<Complex64> {
    let defect = unitarity_defect(g);
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    let base = z.coords();
    let mut jac = [[Complex64::new(0.0, 0.0); 3]; 3];
    for col in 0..3 {
        let mut plus = base;
        let mut minus = base;
        plus[col] += FD_STEP;
        minus[col] -= FD_STEP;
        let (_, fp) = act_unchecked(g, &BallPoint::from_coords(plus)?)?;
        let (_, fm) = act_unchecked(g, &BallPoint::from_coords(minus)?)?;
        let (fp, fm) = (fp.coords(), fm.coords());
        for row in 0..3 {
            jac[row][col] = (fp[row] - fm[row]) / (2.0 * FD_STEP);
        }
    }
    Ok(det3(&jac))
}

/// `|J − det(g)·j(g,z)^{−(n+1)}| / |J|` with `J` the numeric Jacobian.
pub fn jacobian_lemma_check(g: &CMatrix, z: &BallPoint) -> Result<f64> {
    let numeric = jacobian_numeric(g, z)?;
    let (j, _) = act(g, z)?;
    let predicted = det(g) * j.powi(-(N + 1));
    Ok((numeric - predicted).norm() / numeric.norm())
}

/// Deterministic point with `Re w₁ ∈ [0.5, 2]`, `Im w₁ ∈ [−1, 1]` and
/// `w₃, w₄` in the disk of radius 0.5; positivity margin at least 0.5.
pub fn sample_ball_point(seed: u64) -> BallPoint {
    sample_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn sample_disk(rng: &mut impl Rng, radius: f64) -> Complex64 {
    loop {
        let c = Complex64::new(rng.random_range(-radius..radius), rng.random_range(-radius..radius));
        if c.norm() <= radius {
            return c;
        }
    }
}

fn sample_with(rng: &mut impl Rng) -> BallPoint {
    loop {
        let w1 = Complex64::new(rng.random_range(0.5..=2.0), rng.random_range(-1.0..=1.0));
        let w3 = sample_disk(rng, 0.5);
        let w4 = sample_disk(rng, 0.5);
        let p = BallPoint { w1, w3, w4 };
        if p.positivity() >= 0.1 {
            return p;
        }
    }
}

/// Product of 1–4 random mirror-table triflections (`η ∈ {ζ, ζ²}`), exactly.
pub fn random_triflection_product(rng: &mut impl Rng) -> HermMatrix {
    let table = hermitian::mirror_table();
    let len = rng.random_range(1..=4);
    (0..len).fold(HermMatrix::identity(), |acc, _| {
        let label = rng.random_range(1..=15);
        let eta = if rng.random_bool(0.5) { EisensteinInt::zeta() } else { EisensteinInt::new(-1, -1) };
        let r = hermitian::reflection(&table.vector(label).expect("label"), &eta).expect("table mirror");
        acc.mul(&r)
    })
}

/// Relative errors of the Jacobian lemma over `samples` seeded `(g, z)` pairs.
pub fn jacobian_lemma_sweep(seed: u64, samples: usize) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let g = embed(&random_triflection_product(&mut rng));
            let z = sample_with(&mut rng);
            jacobian_lemma_check(&g, &z)
        })
        .collect()
}
