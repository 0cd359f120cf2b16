//! Formal divisors on the 15 short-mirror classes.
//!
//! Each weight-one form `B_i` vanishes on three mirror classes; each cusp
//! form `C_i` is a Laurent monomial `B_a B_b B_c / B_d`. Everything here is
//! integer bookkeeping on those tables.

use std::fmt::Write as _;
use std::ops::{Add, Mul};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::resgroup::GENERATING_MIRRORS;

pub const MIRROR_COUNT: usize = 15;
pub const FORM_COUNT: usize = 15;
pub const CUSP_FORM_COUNT: usize = 10;

/// Zero divisors of `B_1..B_15`.
const B_DIVISORS: [[usize; 3]; FORM_COUNT] = [
    [1, 2, 15],
    [2, 4, 8],
    [2, 3, 7],
    [1, 6, 10],
    [1, 5, 9],
    [12, 13, 15],
    [11, 14, 15],
    [4, 6, 11],
    [4, 5, 12],
    [8, 10, 14],
    [8, 9, 13],
    [3, 6, 13],
    [3, 5, 14],
    [7, 10, 12],
    [7, 9, 11],
];

/// `C_i = B_n1 B_n2 B_n3 / B_d` as `([n1, n2, n3], d)`.
const C_WORDS: [([usize; 3], usize); CUSP_FORM_COUNT] = [
    ([2, 4, 15], 8),
    ([2, 13, 15], 3),
    ([3, 6, 10], 14),
    ([3, 5, 8], 15),
    ([8, 13, 14], 9),
    ([5, 7, 14], 15),
    ([2, 6, 15], 11),
    ([1, 8, 11], 2),
    ([6, 13, 15], 7),
    ([2, 4, 6], 1),
];

/// Forms without zeros on the generating mirrors.
pub const TRIVIAL_MULTIPLIER_FORMS: [usize; 6] = [6, 7, 8, 9, 12, 13];

/// Integer multiplicities indexed by mirror labels 1..=15.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Divisor(pub [i64; MIRROR_COUNT]);

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut d = Self::zero();
        for &l in labels {
            check_label(l, MIRROR_COUNT)?;
            d.0[l - 1] += 1;
        }
        Ok(d)
    }

    pub fn multiplicity(&self, label: usize) -> i64 {
        self.0[label - 1]
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&m| m >= 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (1..=MIRROR_COUNT).filter(|&l| self.0[l - 1] != 0).collect()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Add for Divisor {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

impl Mul<Divisor> for i64 {
    type Output = Divisor;
    fn mul(self, mut d: Divisor) -> Divisor {
        d.0.iter_mut().for_each(|m| *m *= self);
        d
    }
}

/// Exponents of `B_1..B_15` in a Laurent monomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct LaurentWord(pub [i64; FORM_COUNT]);

impl LaurentWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Every `B_i` has weight one.
    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, form: usize) -> i64 {
        self.0[form - 1]
    }
}

impl Add for LaurentWord {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

impl Mul<LaurentWord> for i64 {
    type Output = LaurentWord;
    fn mul(self, mut w: LaurentWord) -> LaurentWord {
        w.0.iter_mut().for_each(|e| *e *= self);
        w
    }
}

fn check_label(label: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&label) {
        Ok(())
    } else {
        Err(Error::LabelOutOfRange { label, max })
    }
}

pub fn b_divisor(i: usize) -> Result<Divisor> {
    check_label(i, FORM_COUNT)?;
    Divisor::from_labels(&B_DIVISORS[i - 1])
}

pub fn c_word(i: usize) -> Result<LaurentWord> {
    check_label(i, CUSP_FORM_COUNT)?;
    let (num, den) = C_WORDS[i - 1];
    let mut w = LaurentWord::empty();
    for n in num {
        w.0[n - 1] += 1;
    }
    w.0[den - 1] -= 1;
    Ok(w)
}

/// `Σ exponent(i) · div(B_i)`.
pub fn divisor_of(w: &LaurentWord) -> Divisor {
    (1..=FORM_COUNT).fold(Divisor::zero(), |acc, i| acc + w.exponent(i) * b_divisor(i).expect("label in range"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EffectivityRecord {
    pub form: usize,
    pub effective: bool,
    pub support: Vec<usize>,
    pub multiplicities: Divisor,
}

impl EffectivityRecord {
    /// Effective with exactly six simple mirrors.
    pub fn is_six_simple(&self) -> bool {
        self.effective
            && self.support.len() == 6
            && self.support.iter().all(|&l| self.multiplicities.multiplicity(l) == 1)
    }
}

pub fn effectivity_report() -> Vec<EffectivityRecord> {
    (1..=CUSP_FORM_COUNT)
        .map(|i| {
            let d = divisor_of(&c_word(i).expect("label in range"));
            EffectivityRecord { form: i, effective: d.is_effective(), support: d.support(), multiplicities: d }
        })
        .collect()
}

/// The forms `B_6, B_7, B_8, B_9, B_12, B_13` avoid the generating mirrors.
pub fn trivial_multiplier_support_check() -> bool {
    TRIVIAL_MULTIPLIER_FORMS.iter().all(|&i| {
        let support = b_divisor(i).expect("label in range").support();
        support.iter().all(|l| !GENERATING_MIRRORS.contains(l))
    })
}

/// `C_1²` has weight `n + 1` with `n = 3`.
pub fn cy_weight_check() -> bool {
    const N: i64 = 3;
    (2 * c_word(1).expect("label in range")).weight() == N + 1
}

const FORMS_HEADER: &str = "# picard-cy form table v1\n\
# B <i> <m1> <m2> <m3>      zero divisor of B_i: three mirror labels\n\
# C <i> <n1> <n2> <n3> <d>  C_i = B_n1 B_n2 B_n3 / B_d\n";

/// The B and C tables as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTable {
    pub b: Vec<[usize; 3]>,
    pub c: Vec<([usize; 3], usize)>,
}

impl FormTable {
    pub fn builtin() -> Self {
        Self { b: B_DIVISORS.to_vec(), c: C_WORDS.to_vec() }
    }

    pub fn render(&self) -> String {
        let mut out = String::from(FORMS_HEADER);
        for (i, [a, b, c]) in self.b.iter().enumerate() {
            writeln!(out, "B {} {a} {b} {c}", i + 1).unwrap();
        }
        for (i, ([a, b, c], d)) in self.c.iter().enumerate() {
            writeln!(out, "C {} {a} {b} {c} {d}", i + 1).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut table = Self { b: Vec::new(), c: Vec::new() };
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("bad form line {line:?}"));
            let mut fields = line.split_whitespace();
            let kind = fields.next().ok_or_else(bad)?;
            let nums: Vec<usize> = fields.map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
            match (kind, nums.as_slice()) {
                ("B", &[i, a, b, c]) if i == table.b.len() + 1 => table.b.push([a, b, c]),
                ("C", &[i, a, b, c, d]) if i == table.c.len() + 1 => table.c.push(([a, b, c], d)),
                _ => return Err(bad()),
            }
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Supports of div(C_i), computed independently from the printed
    // tables with a throwaway script.
    const C_SUPPORTS: [[usize; 6]; 10] = [
        [1, 2, 7, 8, 9, 10],
        [4, 5, 8, 9, 11, 14],
        [2, 3, 8, 13, 14, 15],
        [1, 2, 3, 4, 5, 6],
        [3, 6, 7, 10, 11, 14],
        [1, 5, 10, 12, 14, 15],
        [2, 4, 7, 11, 12, 15],
        [1, 6, 9, 11, 13, 15],
        [3, 5, 7, 9, 12, 13],
        [4, 6, 8, 10, 12, 13],
    ];

    #[test]
    fn b_examples() {
        assert_eq!(b_divisor(1).unwrap().support(), vec![1, 2, 15]);
        assert_eq!(b_divisor(8).unwrap().support(), vec![4, 6, 11]);
        assert!(matches!(b_divisor(0), Err(Error::LabelOutOfRange { .. })));
        assert!(matches!(b_divisor(16), Err(Error::LabelOutOfRange { .. })));
        let total = (1..=15).fold(Divisor::zero(), |acc, i| acc + b_divisor(i).unwrap());
        assert_eq!(total, Divisor([3; 15]));
    }

    #[test]
    fn c_examples() {
        let c1 = c_word(1).unwrap();
        for (form, e) in [(2, 1), (4, 1), (15, 1), (8, -1)] {
            assert_eq!(c1.exponent(form), e);
        }
        assert_eq!(c1.0.iter().filter(|&&e| e != 0).count(), 4);
        let c10 = c_word(10).unwrap();
        for (form, e) in [(2, 1), (4, 1), (6, 1), (1, -1)] {
            assert_eq!(c10.exponent(form), e);
        }
        for i in 1..=10 {
            assert_eq!(c_word(i).unwrap().weight(), 2);
        }
        assert!(c_word(11).is_err());
    }

    #[test]
    fn divisors_of_words() {
        assert_eq!(divisor_of(&c_word(1).unwrap()).support(), vec![1, 2, 7, 8, 9, 10]);
        assert_eq!(divisor_of(&c_word(4).unwrap()), Divisor::from_labels(&[1, 2, 3, 4, 5, 6]).unwrap());
        assert_eq!(divisor_of(&LaurentWord::empty()), Divisor::zero());
        for (i, expected) in C_SUPPORTS.iter().enumerate() {
            let d = divisor_of(&c_word(i + 1).unwrap());
            assert_eq!(d, Divisor::from_labels(expected).unwrap(), "C{}", i + 1);
        }
    }

    #[test]
    fn effectivity() {
        let report = effectivity_report();
        assert_eq!(report.len(), 10);
        assert!(report.iter().all(EffectivityRecord::is_six_simple));
        assert_eq!(report[1].support, vec![4, 5, 8, 9, 11, 14]);
        assert_eq!(report[0].support, GENERATING_MIRRORS.to_vec());
    }

    #[test]
    fn trivial_multipliers() {
        assert_eq!(b_divisor(6).unwrap().support(), vec![12, 13, 15]);
        assert_eq!(b_divisor(13).unwrap().support(), vec![3, 5, 14]);
        assert!(trivial_multiplier_support_check());
        // B1 does vanish on a generating mirror
        assert!(b_divisor(1).unwrap().support().iter().any(|l| GENERATING_MIRRORS.contains(l)));
    }

    #[test]
    fn weights() {
        assert_eq!((2 * c_word(1).unwrap()).weight(), 4);
        assert!(cy_weight_check());
    }

    #[test]
    fn data_file_matches_defaults() {
        let file = include_str!("../data/forms.txt");
        assert_eq!(FormTable::builtin().render(), file);
        assert_eq!(FormTable::parse(file).unwrap(), FormTable::builtin());
        assert!(FormTable::parse("B 2 1 2 3\n").is_err());
        assert!(FormTable::parse("C 1 1 2 3\n").is_err());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn word() -> impl Strategy<Value = LaurentWord> {
            proptest::array::uniform15(-5i64..5).prop_map(LaurentWord)
        }

        proptest! {
            #[test]
            fn divisor_of_is_additive(a in word(), b in word()) {
                prop_assert_eq!(divisor_of(&(a + b)), divisor_of(&a) + divisor_of(&b));
                // each B has degree 3
                prop_assert_eq!(divisor_of(&a).degree(), 3 * a.weight());
            }
        }
    }
}
