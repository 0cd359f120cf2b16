//! Check registry and the machine-readable verification report.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autgroup::{self, H_ORDER, KERNEL_ORDER};
use crate::ballmodel;
use crate::cyclo::CycRat;
use crate::divisor::{self, FormTable};
use crate::error::{Error, Result};
use crate::hermitian::{self, mirror_table};
use crate::hilbert;
use crate::resgroup::{self, Mod3Residue, ResidueMatrix};
use crate::variety::{self, NODE_COUNT};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: CheckStatus,
    pub expected: String,
    pub actual: String,
    pub runtime_ms: u64,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.status == CheckStatus::Pass)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = writeln!(
                out,
                "{:<5} {:<28} expected {} | actual {} ({} ms)",
                r.status.as_str(),
                r.check_id,
                r.expected,
                r.actual,
                r.runtime_ms
            );
        }
        let _ = writeln!(
            out,
            "{} checks: {} pass, {} fail, {} error (seed {})",
            self.results.len(),
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Fail),
            self.count(CheckStatus::Error),
            self.seed
        );
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckInfo {
    pub id: &'static str,
    pub citation: &'static str,
    /// Only numeric checks read the tolerance.
    pub numeric: bool,
}

const fn exact(id: &'static str, citation: &'static str) -> CheckInfo {
    CheckInfo { id, citation, numeric: false }
}

/// Sorted by id; this is also the report order.
pub const CHECKS: [CheckInfo; 19] = [
    exact("chi-homomorphism", "character of H on the Calabi-Yau form"),
    exact("chi-kernel-972", "character of H on the Calabi-Yau form: kernel"),
    exact("chi-pullback-agree", "character of H via pullback of the residue form"),
    exact("degree-243", "mod-3 congruence quotient: covering degree"),
    exact("dim-integrality", "dimension cubic for level-3 forms"),
    exact("dim-table", "dimension table for level-3 forms"),
    exact("divisor-c1-support", "zero divisor of the first cusp form"),
    exact("divisors-effective", "cusp forms as quotients of B-forms"),
    exact("group-order-486", "mod-3 congruence quotient: group order"),
    exact("h-order-5832", "automorphism group H of the cubic pair"),
    exact("hilbert-ci-oracle", "Hilbert series of the two-cubic complete intersection"),
    exact("hilbert-leading-ratio-243", "Hilbert polynomial leading coefficients"),
    CheckInfo { id: "jacobian-lemma", citation: "Jacobian of the ball action", numeric: true },
    exact("mirror-norms", "table of short mirrors"),
    exact("nodes-108", "singular locus of the cubic pair"),
    exact("nodes-all-A1", "singular locus of the cubic pair: node type"),
    exact("scalars-pm1", "mod-3 congruence quotient: scalar subgroup"),
    exact("substitution-identity", "cubic relations among trivial-multiplier forms"),
    exact("trivial-multiplier-supports", "B-forms with trivial multiplier"),
];

pub fn check_info(id: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.id == id)
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub tol: f64,
    pub samples: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, tol: DEFAULT_TOL, samples: DEFAULT_SAMPLES }
    }
}

struct Outcome {
    expected: String,
    actual: String,
    pass: bool,
}

fn compare(expected: impl Into<String>, actual: impl Into<String>) -> Outcome {
    let (expected, actual) = (expected.into(), actual.into());
    Outcome { pass: expected == actual, expected, actual }
}

fn set_string<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn scalar_name(m: &ResidueMatrix) -> String {
    match m.as_scalar().map(Mod3Residue::digits) {
        Some((1, 0)) => "+id".into(),
        Some((2, 0)) => "-id".into(),
        Some((a, b)) => format!("({a}+{b}z)id"),
        None => "non-scalar".into(),
    }
}

fn evaluate(id: &str, opts: &RunOptions) -> Result<Outcome> {
    Ok(match id {
        "group-order-486" => compare("486", resgroup::g_prime_image()?.order().to_string()),
        "scalars-pm1" => {
            let group = resgroup::g_prime_image()?;
            let names: BTreeSet<String> = resgroup::scalar_subgroup(&group).iter().map(scalar_name).collect();
            compare("{+id,-id}", set_string(names))
        }
        "degree-243" => compare("243", resgroup::covering_degree(&resgroup::g_prime_image()?).to_string()),
        "nodes-108" => compare(NODE_COUNT.to_string(), variety::singular_points()?.len().to_string()),
        "nodes-all-A1" => {
            let points = variety::singular_points()?;
            let mut nodes = 0;
            for p in &points {
                nodes += usize::from(variety::is_node(p)?);
            }
            compare(format!("{NODE_COUNT}/{NODE_COUNT}"), format!("{nodes}/{}", points.len()))
        }
        "h-order-5832" => compare(H_ORDER.to_string(), autgroup::h_group()?.len().to_string()),
        "chi-homomorphism" => {
            let h = autgroup::h_group()?;
            let mut violations = 0usize;
            let mut pair = |g: &autgroup::MonomialAut, k: &autgroup::MonomialAut| {
                if autgroup::chi(&g.compose(k)) != autgroup::chi(g).mul(autgroup::chi(k)) {
                    violations += 1;
                }
            };
            for g in &autgroup::generators() {
                for k in &h {
                    pair(g, k);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..2000 {
                let (a, b) = (rng.random_range(0..h.len()), rng.random_range(0..h.len()));
                pair(&h[a], &h[b]);
            }
            compare("0 violations", format!("{violations} violations"))
        }
        "chi-kernel-972" => {
            let h = autgroup::h_group()?;
            let kernel = autgroup::chi_kernel(&h)?;
            let index = if kernel.is_empty() { 0 } else { h.len() / kernel.len() };
            compare(format!("{KERNEL_ORDER} (index 6)"), format!("{} (index {index})", kernel.len()))
        }
        "chi-pullback-agree" => {
            let h = autgroup::h_group()?;
            let mut agree = 0;
            for g in &h {
                agree += usize::from(autgroup::chi_via_pullback(g)? == autgroup::chi(g));
            }
            compare(format!("{H_ORDER}/{H_ORDER}"), format!("{agree}/{}", h.len()))
        }
        "divisors-effective" => {
            let report = divisor::effectivity_report();
            let good = report.iter().filter(|r| r.is_six_simple()).count();
            compare("10/10", format!("{good}/{}", report.len()))
        }
        "divisor-c1-support" => {
            let d = divisor::divisor_of(&divisor::c_word(1)?);
            compare(set_string(resgroup::GENERATING_MIRRORS), set_string(d.support()))
        }
        "trivial-multiplier-supports" => {
            let hits: BTreeSet<usize> = divisor::TRIVIAL_MULTIPLIER_FORMS
                .iter()
                .flat_map(|&i| divisor::b_divisor(i).expect("label in range").support())
                .filter(|l| resgroup::GENERATING_MIRRORS.contains(l))
                .collect();
            let actual = if hits.is_empty() && divisor::trivial_multiplier_support_check() {
                "disjoint".to_string()
            } else {
                format!("meets {}", set_string(hits))
            };
            compare("disjoint", actual)
        }
        "hilbert-ci-oracle" => {
            let bad: Vec<u32> = (0..=12).filter(|&k| hilbert::ci_dim(k) != hilbert::ci_dim_oracle(k)).collect();
            let actual = if bad.is_empty() { "agree k=0..12".to_string() } else { format!("disagree at {bad:?}") };
            compare("agree k=0..12", actual)
        }
        "hilbert-leading-ratio-243" => {
            let leading = hilbert::hilbert_polynomial_ci()?.leading();
            let ratio = hilbert::covering_degree_from_leading()?;
            let degree = resgroup::covering_degree(&resgroup::g_prime_image()?);
            compare(
                "leading 3/2, ratio 243, group degree 243",
                format!("leading {leading}, ratio {ratio}, group degree {degree}"),
            )
        }
        "dim-table" => {
            let table: Vec<String> = (0..=4).map(|k| dim_g33_string(k)).collect::<Result<_>>()?;
            let mut actual = table.join(",");
            for k in 1..=20 {
                if BigInt::from(hilbert::eisenstein_part(k)?) > hilbert::dim_g33(k)? {
                    actual = format!("{actual}; non-cusp part exceeds total at k={k}");
                }
            }
            compare("1,15,130,750,3115", actual)
        }
        "dim-integrality" => {
            let cubic = hilbert::g33_cubic();
            let integral = (1..=1000).filter(|&k| cubic.eval(k).is_integer()).count();
            compare("1000/1000", format!("{integral}/1000"))
        }
        "jacobian-lemma" => {
            let errs = ballmodel::jacobian_lemma_sweep(opts.seed, opts.samples)?;
            let worst = errs.iter().copied().fold(0.0f64, f64::max);
            let within = errs.iter().filter(|&&e| e <= opts.tol).count();
            Outcome {
                expected: format!("{0}/{0} samples with relative error <= {1:e}", errs.len(), opts.tol),
                actual: format!("{within}/{} samples, max relative error {worst:.3e}", errs.len()),
                pass: !errs.is_empty() && within == errs.len(),
            }
        }
        "substitution-identity" => {
            let out = variety::substitution_identity();
            let sign = |s: Option<i64>| s.map_or("none".to_string(), |s| format!("{s:+}"));
            let actual = if out.holds() {
                "both relations up to sign".to_string()
            } else {
                format!("signs F {} G {}", sign(out.f_sign), sign(out.g_sign))
            };
            compare("both relations up to sign", actual)
        }
        "mirror-norms" => {
            let table = mirror_table();
            let minus_one = CycRat::from(-1);
            let good = table
                .iter()
                .filter(|(label, _)| {
                    let v = table.vector(*label).expect("label in table");
                    hermitian::herm_form(&v, &v) == minus_one
                })
                .count();
            compare("15/15 norm -1", format!("{good}/{} norm -1", table.len()))
        }
        other => return Err(Error::UnknownCheck(other.to_string())),
    })
}

fn dim_g33_string(k: i64) -> Result<String> {
    Ok(hilbert::dim_g33(k)?.to_string())
}

/// Runs one check; failures inside the computation become `error` results.
pub fn run_check(info: &CheckInfo, opts: &RunOptions) -> CheckResult {
    let start = Instant::now();
    let outcome = evaluate(info.id, opts);
    let runtime_ms = start.elapsed().as_millis() as u64;
    let (status, expected, actual) = match outcome {
        Ok(o) => (if o.pass { CheckStatus::Pass } else { CheckStatus::Fail }, o.expected, o.actual),
        Err(e) => (CheckStatus::Error, String::new(), e.to_string()),
    };
    CheckResult {
        check_id: info.id.to_string(),
        status,
        expected,
        actual,
        runtime_ms,
        citation: info.citation.to_string(),
    }
}

/// Validates the selection (empty means all), then runs the checks
/// concurrently; results come back in id order.
pub fn run(selection: &[String], opts: &RunOptions) -> Result<Report> {
    let mut chosen: Vec<&'static CheckInfo> = Vec::new();
    if selection.is_empty() || selection.iter().any(|s| s == "all") {
        chosen.extend(CHECKS.iter());
    } else {
        for id in selection {
            let info = check_info(id).ok_or_else(|| Error::UnknownCheck(id.clone()))?;
            if !chosen.iter().any(|c| c.id == info.id) {
                chosen.push(info);
            }
        }
        chosen.sort_by_key(|c| c.id);
    }
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = chosen.iter().map(|info| s.spawn(move || run_check(info, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread")).collect()
    });
    Ok(Report { schema_version: SCHEMA_VERSION, seed: opts.seed, results })
}

/// Writes the group, node, mirror and form tables into `dir`; returns the file names.
pub fn export_tables(dir: &Path) -> std::result::Result<Vec<String>, Box<dyn std::error::Error>> {
    std::fs::create_dir_all(dir)?;
    let files = [
        ("group_mod3.txt", resgroup::g_prime_image()?.export_text()),
        ("nodes.txt", variety::export_points(&variety::singular_points()?)),
        ("mirrors.txt", mirror_table().render()),
        ("forms.txt", FormTable::builtin().render()),
    ];
    let mut names = Vec::new();
    for (name, body) in files {
        std::fs::write(dir.join(name), body)?;
        names.push(name.to_string());
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids: Vec<&str> = CHECKS.iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert!(CHECKS.iter().all(|c| !c.citation.is_empty()));
    }

    #[test]
    fn unknown_id_is_rejected() {
        let err = run(&["nonexistent".to_string()], &RunOptions::default()).unwrap_err();
        assert_eq!(err, Error::UnknownCheck("nonexistent".into()));
    }

    #[test]
    fn selection_is_reordered_by_id() {
        let sel = ["mirror-norms", "dim-table", "mirror-norms"].map(String::from);
        let report = run(&sel, &RunOptions::default()).unwrap();
        let ids: Vec<&str> = report.results.iter().map(|r| r.check_id.as_str()).collect();
        assert_eq!(ids, ["dim-table", "mirror-norms"]);
        assert!(report.all_passed());
    }

    #[test]
    fn tolerance_binds_numeric_check_only() {
        let tight = RunOptions { tol: 1e-30, samples: 5, ..RunOptions::default() };
        let report = run(&["jacobian-lemma".into(), "dim-integrality".into()], &tight).unwrap();
        assert_eq!(report.results[0].status, CheckStatus::Pass);
        assert_eq!(report.results[1].status, CheckStatus::Fail);
    }
}
