use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use qrank_core::degree::{
    brute_force_h_with_bound, bucket_divisors, classify_blocks, degree_from_form, degree_report, rectangle_corank,
    verify_central_candidate_guarded, BlockReport, Finding, Verdict, VerifyMode, BRUTE_FORCE_BOUND,
};
use qrank_core::minors::{
    candidate_quarter, candidates_even_m, candidates_theta_chain, candidates_za, quantum_minor, CentralCandidate,
    MinorDescriptor,
};
use qrank_core::ncalgebra::{AlgebraDescriptor, AlgebraKind};
use qrank_core::skewlat::{image_cardinality_from_form, kernel_from_form, skew_normal_form, SkewNormalForm};

use crate::output::Section;
use crate::{reproduce, Cli, CliError, Command, Family, Report, Resolved};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResult {
    pub algebra: String,
    pub modulus: u64,
    #[serde(with = "qrank_core::serde_big")]
    pub h: BigInt,
    #[serde(with = "qrank_core::serde_big")]
    pub degree: BigInt,
    #[serde(with = "qrank_core::serde_big::vec")]
    pub divisors: Vec<BigInt>,
    pub corank: usize,
    #[serde(with = "qrank_core::serde_big::option")]
    pub closed_form: Option<BigInt>,
    pub matches: bool,
    #[serde(with = "qrank_core::serde_big::option")]
    pub enumerated_h: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksResult {
    pub algebra: String,
    pub report: BlockReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterResult {
    pub algebra: String,
    pub modulus: u64,
    pub dim: usize,
    pub corank: usize,
    #[serde(with = "qrank_core::serde_big")]
    pub kernel_cardinality: BigInt,
    /// Echelon generators of the kernel mod `m`.
    pub kernel_generators: Vec<Vec<u64>>,
    pub candidates: Vec<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorankResult {
    pub algebra: String,
    pub corank: usize,
    pub expected: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub algebra: String,
    pub normal_form: SkewNormalForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorResult {
    pub algebra: String,
    pub minor: MinorDescriptor,
    pub polynomial: String,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub algebra: String,
    pub modulus: u64,
    pub family: Family,
    pub mode: VerifyMode,
    pub verdicts: Vec<Verdict>,
}

fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("results serialize")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn check_modulus(m: u64) -> Result<(), CliError> {
    if m == 0 {
        Err(CliError::Usage("--m must be at least 1".into()))
    } else {
        Ok(())
    }
}

pub(crate) fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Degree { target, m, enumerate } => degree(&target.resolve()?, *m, *enumerate, cli.unsafe_guard_enum),
        Command::Blocks { target } => blocks(&target.resolve()?),
        Command::Center { target, m } => center(&target.resolve()?, *m),
        Command::Corank { target } => corank(&target.resolve()?),
        Command::Snf { target } => snf(&target.resolve()?),
        Command::Minor { target, rows, cols } => minor(&target.resolve()?, rows, cols),
        Command::Verify { target, m, family, mode } => {
            verify(&target.resolve()?, *m, *family, (*mode).into(), !cli.unsafe_guard_symbolic)
        }
        Command::Reproduce { suite, max_n, r, moduli } => {
            reproduce::run(*suite, *max_n, *r, moduli.as_deref(), cli.unsafe_guard_enum)
        }
    }
}

fn degree(target: &Resolved, m: u64, enumerate: bool, unguarded: bool) -> Result<Report, CliError> {
    check_modulus(m)?;
    let j = target.matrix();
    let mut res = match target {
        Resolved::Algebra(alg) => {
            let r = degree_report(alg, m)?;
            DegreeResult {
                algebra: alg.name(),
                modulus: m,
                h: r.h,
                degree: r.degree,
                divisors: r.divisors,
                corank: r.corank,
                closed_form: r.closed_form,
                matches: r.matches,
                enumerated_h: None,
            }
        }
        Resolved::Matrix(j) => {
            let nf = skew_normal_form(j);
            DegreeResult {
                algebra: target.name(),
                modulus: m,
                h: image_cardinality_from_form(&nf, m),
                degree: degree_from_form(&nf, m),
                divisors: nf.divisors,
                corank: nf.zero_rank,
                closed_form: None,
                matches: true,
                enumerated_h: None,
            }
        }
    };
    let mut findings = Vec::new();
    if !res.matches {
        findings.push(Finding {
            check: "degree against closed form".into(),
            expected: res.closed_form.as_ref().map(ToString::to_string).unwrap_or_default(),
            actual: res.degree.to_string(),
        });
    }
    if enumerate {
        let bound = if unguarded { u128::MAX } else { BRUTE_FORCE_BOUND };
        let e = brute_force_h_with_bound(&j, m, bound)?;
        if e != res.h {
            findings.push(Finding { check: "h against enumeration".into(), expected: e.to_string(), actual: res.h.to_string() });
        }
        res.enumerated_h = Some(e);
    }
    let mut s = Section::fields("degree");
    s.field("algebra", &res.algebra)
        .field("m", res.modulus)
        .field("h", &res.h)
        .field("degree", &res.degree)
        .field("divisors", join(&res.divisors))
        .field("corank", res.corank)
        .field("closed_form", res.closed_form.as_ref().map_or("n/a".to_string(), ToString::to_string))
        .field("match", if res.closed_form.is_some() { res.matches.to_string() } else { "n/a".into() });
    if let Some(e) = &res.enumerated_h {
        s.field("enumerated_h", e);
    }
    Ok(Report { result: to_value(&res), findings, sections: vec![s] })
}

fn blocks(target: &Resolved) -> Result<Report, CliError> {
    let report = match target {
        Resolved::Algebra(alg) => classify_blocks(alg),
        Resolved::Matrix(j) => bucket_divisors(&skew_normal_form(j)),
    };
    let mut s = Section::fields("blocks");
    s.field("algebra", target.name())
        .field("divisors", join(&report.divisors))
        .field("count_1", report.count_1)
        .field("count_2", report.count_2)
        .field("count_4", report.count_4)
        .field("other", join(&report.other))
        .field("corank", report.corank);
    let findings = report.findings.clone();
    let res = BlocksResult { algebra: target.name(), report };
    Ok(Report { result: to_value(&res), findings, sections: vec![s] })
}

/// `(rows, cols)` of the grid the algebra sits on, as candidate builders
/// expect them.
fn dims(alg: &AlgebraDescriptor) -> Option<(u32, u32)> {
    match alg.kind() {
        AlgebraKind::Square { n } => Some((n, n)),
        AlgebraKind::Rectangle { rows, cols } => Some((rows, cols)),
        AlgebraKind::Hook { n, r } => Some((n, r)),
        _ => None,
    }
}

fn det_candidate(n: u32) -> CentralCandidate {
    CentralCandidate {
        label: "det".into(),
        shape: (n as usize, n as usize),
        factors: vec![(MinorDescriptor::block(1, n, 1, n), 1)],
    }
}

fn family_candidates(alg: &AlgebraDescriptor, family: Family, m: u64) -> Result<Vec<CentralCandidate>, CliError> {
    let kind = alg.kind();
    let (n, r) = dims(alg).ok_or_else(|| CliError::Usage(format!("no candidate families for {}", alg.name())))?;
    let rectangular = matches!(kind, AlgebraKind::Square { .. } | AlgebraKind::Rectangle { .. });
    let wrong = || CliError::Usage(format!("family {family:?} does not apply to {}", alg.name()));
    Ok(match family {
        Family::Za if rectangular => candidates_za(n, r)?,
        Family::ThetaChain if matches!(kind, AlgebraKind::Square { .. } | AlgebraKind::Hook { .. }) => {
            candidates_theta_chain(n, r)?
        }
        Family::EvenM if rectangular => candidates_even_m(n, r, m)?,
        Family::Quarter if rectangular => vec![candidate_quarter(n, r, m)?],
        Family::Det if matches!(kind, AlgebraKind::Square { .. }) => vec![det_candidate(n)],
        _ => return Err(wrong()),
    })
}

/// Every family that applies at `(alg, m)`, silently skipping the rest.
fn applicable_candidates(alg: &AlgebraDescriptor, m: u64) -> Vec<CentralCandidate> {
    let Some((n, r)) = dims(alg) else { return Vec::new() };
    let mut out = Vec::new();
    for family in [Family::Det, Family::Za, Family::ThetaChain, Family::EvenM, Family::Quarter] {
        if family == Family::Za && r > n {
            continue;
        }
        if let Ok(c) = family_candidates(alg, family, m) {
            out.extend(c);
        }
    }
    out
}

fn verdict_section(title: &str, verdicts: &[Verdict]) -> Section {
    let mut s = Section::new(title, &["candidate", "mode", "m", "status", "witness"]);
    for v in verdicts {
        s.push(vec![
            v.label.clone(),
            format!("{:?}", v.mode).to_lowercase(),
            v.modulus.to_string(),
            if v.passed { "pass" } else { "FAIL" }.into(),
            v.witness.map_or(String::new(), |g| g.to_string()),
        ]);
    }
    s
}

fn verdict_findings(verdicts: &[Verdict]) -> Vec<Finding> {
    verdicts
        .iter()
        .filter(|v| !v.passed)
        .map(|v| Finding {
            check: format!("{} is central mod {}", v.label, v.modulus),
            expected: "commutes with every generator".into(),
            actual: v.witness.map_or("not central".into(), |g| format!("fails against {g}")),
        })
        .collect()
}

fn center(target: &Resolved, m: u64) -> Result<Report, CliError> {
    check_modulus(m)?;
    let nf = skew_normal_form(&target.matrix());
    let kernel = kernel_from_form(&nf, m)?;
    let mut verdicts = Vec::new();
    if let Resolved::Algebra(alg) = target {
        for c in applicable_candidates(alg, m) {
            verdicts.push(verify_central_candidate_guarded(&c, alg, m, VerifyMode::Lattice, true)?);
        }
    }
    let res = CenterResult {
        algebra: target.name(),
        modulus: m,
        dim: kernel.dim(),
        corank: nf.zero_rank,
        kernel_cardinality: kernel.cardinality(),
        kernel_generators: kernel.generators().to_vec(),
        candidates: verdicts,
    };
    let mut s = Section::fields("kernel");
    s.field("algebra", &res.algebra)
        .field("m", m)
        .field("dim", res.dim)
        .field("corank", res.corank)
        .field("kernel_cardinality", &res.kernel_cardinality);
    let mut g = Section::new("kernel generators", &["row", "vector"]);
    for (i, v) in res.kernel_generators.iter().enumerate() {
        g.push(vec![(i + 1).to_string(), join(v)]);
    }
    let sections = vec![s, g, verdict_section("candidates", &res.candidates)];
    Ok(Report { result: to_value(&res), findings: verdict_findings(&res.candidates), sections })
}

fn corank(target: &Resolved) -> Result<Report, CliError> {
    let c = skew_normal_form(&target.matrix()).zero_rank;
    let expected = match target {
        Resolved::Algebra(a) => match a.kind() {
            AlgebraKind::Square { n } => Some(rectangle_corank(n, n)),
            AlgebraKind::Rectangle { rows, cols } => Some(rectangle_corank(rows, cols)),
            _ => None,
        },
        Resolved::Matrix(_) => None,
    };
    let mut findings = Vec::new();
    if let Some(e) = expected.filter(|e| *e != c) {
        findings.push(Finding { check: "corank against gcd formula".into(), expected: e.to_string(), actual: c.to_string() });
    }
    let res = CorankResult { algebra: target.name(), corank: c, expected };
    let mut s = Section::fields("corank");
    s.field("algebra", &res.algebra).field("corank", c);
    if let Some(e) = expected {
        s.field("expected", e);
    }
    Ok(Report { result: to_value(&res), findings, sections: vec![s] })
}

fn snf(target: &Resolved) -> Result<Report, CliError> {
    let nf = skew_normal_form(&target.matrix());
    let mut s = Section::fields("normal form");
    s.field("algebra", target.name()).field("divisors", join(&nf.divisors)).field("zero_rank", nf.zero_rank);
    let mut u = Section::new("U", &["row", "entries"]);
    for i in 0..nf.u.rows() {
        u.push(vec![(i + 1).to_string(), join(nf.u.row(i))]);
    }
    let res = SnfResult { algebra: target.name(), normal_form: nf };
    Ok(Report { result: to_value(&res), findings: Vec::new(), sections: vec![s, u] })
}

fn minor(target: &Resolved, rows: &[u32], cols: &[u32]) -> Result<Report, CliError> {
    let alg = target.algebra()?;
    let d = MinorDescriptor::new(rows.to_vec(), cols.to_vec())?;
    let p = quantum_minor(&d, alg)?;
    let res = MinorResult { algebra: alg.name(), minor: d, polynomial: p.to_string(), terms: p.len() };
    let mut s = Section::fields("minor");
    s.field("algebra", &res.algebra)
        .field("minor", &res.minor)
        .field("terms", res.terms)
        .field("polynomial", &res.polynomial);
    Ok(Report { result: to_value(&res), findings: Vec::new(), sections: vec![s] })
}

fn verify(target: &Resolved, m: u64, family: Family, mode: VerifyMode, guarded: bool) -> Result<Report, CliError> {
    check_modulus(m)?;
    let alg = target.algebra()?;
    let verdicts = family_candidates(alg, family, m)?
        .iter()
        .map(|c| verify_central_candidate_guarded(c, alg, m, mode, guarded))
        .collect::<Result<Vec<_>, _>>()?;
    let res = VerifyResult { algebra: alg.name(), modulus: m, family, mode, verdicts };
    let sections = vec![verdict_section("verdicts", &res.verdicts)];
    Ok(Report { result: to_value(&res), findings: verdict_findings(&res.verdicts), sections })
}
