//! Sparse polynomials in six variables over `Q(ζ)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::CycRat;

pub type Exponent = [u32; 6];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exponent, CycRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: CycRat) -> Self {
        Self::monomial([0; 6], c)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 6];
        e[i] = 1;
        Self::monomial(e, CycRat::one())
    }

    pub fn monomial(e: Exponent, c: CycRat) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &CycRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> CycRat {
        self.terms.get(e).cloned().unwrap_or_else(CycRat::zero)
    }

    fn add_term(&mut self, e: Exponent, c: CycRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(CycRat::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&CycRat::from(-1)))
    }

    pub fn scale(&self, s: &CycRat) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, s * c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = std::array::from_fn(|i| ea[i] + eb[i]);
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(CycRat::one()), |acc, _| acc.mul(self))
    }

    /// `p(images[0], …, images[5])`.
    pub fn substitute(&self, images: &[Poly; 6]) -> Self {
        if images.iter().all(|p| p.terms.len() == 1) {
            return self.substitute_monomial(images);
        }
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let term = (0..6).fold(Self::constant(c.clone()), |acc, i| acc.mul(&images[i].pow(e[i])));
            out = out.add(&term);
        }
        out
    }

    // Every image a single term: each term maps to a single term.
    fn substitute_monomial(&self, images: &[Poly; 6]) -> Self {
        let single: Vec<(&Exponent, &CycRat)> =
            images.iter().map(|p| p.terms.iter().next().expect("one term")).collect();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut exp = [0u32; 6];
            let mut coeff = c.clone();
            for (i, &(ie, ic)) in single.iter().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                coeff = &coeff * &ic.pow(e[i]);
                for (slot, k) in exp.iter_mut().zip(ie) {
                    *slot += k * e[i];
                }
            }
            out.add_term(exp, coeff);
        }
        out
    }

    pub fn eval(&self, x: &[CycRat; 6]) -> CycRat {
        self.terms.iter().fold(CycRat::zero(), |acc, (e, c)| {
            let v = (0..6).fold(c.clone(), |v, i| &v * &x[i].pow(e[i]));
            &acc + &v
        })
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = *e;
            d[var] -= 1;
            out.add_term(d, c * &CycRat::from(e[var] as i64));
        }
        out
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// `Some(λ)` with `self = λ·other`, when such a scalar exists.
    pub fn ratio_to(&self, other: &Self) -> Option<CycRat> {
        let (e, c) = other.terms.iter().next()?;
        let lambda = self.coeff(e).div(c).ok()?;
        (*self == other.scale(&lambda)).then_some(lambda)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: String = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("*x{i}") } else { format!("*x{i}^{k}") })
                    .collect();
                format!("({c}){vars}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
