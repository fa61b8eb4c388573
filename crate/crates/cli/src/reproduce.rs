use num_bigint::BigInt;
use num_traits::Pow;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qrank_core::degree::{
    brute_force_h_with_bound, center_generation_check, classify_blocks, degree_report, expected_four_blocks,
    is_good_modulus, rectangle_corank, verify_central_candidate, VerifyMode, BRUTE_FORCE_BOUND,
};
use qrank_core::minors::{candidate_quarter, CentralCandidate, candidates_even_m, candidates_theta_chain, candidates_za};
use qrank_core::ncalgebra::AlgebraDescriptor;
use qrank_core::skewlat::{corank, defining_matrix, image_cardinality, skew_normal_form};

use crate::output::Section;
use crate::{CliError, Report, Suite};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Cell {
    fn new(params: String, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Self { pass: expected == actual, params, expected, actual }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteTable {
    pub suite: Suite,
    pub cells: Vec<Cell>,
}

const ALL: [Suite; 10] = [
    Suite::Detdeg,
    Suite::Gcd,
    Suite::Goodlabel,
    Suite::Bl1,
    Suite::Blocks,
    Suite::BlocksRprime,
    Suite::Hook,
    Suite::Centrality,
    Suite::Oracle,
    Suite::Generation,
];

struct Params<'a> {
    max_n: Option<u32>,
    r: Option<u32>,
    moduli: Option<&'a [u64]>,
    enum_bound: u128,
}

impl Params<'_> {
    fn max_n(&self, default: u32) -> u32 {
        self.max_n.unwrap_or(default)
    }

    fn moduli(&self, default: &[u64]) -> Vec<u64> {
        self.moduli.map_or_else(|| default.to_vec(), <[u64]>::to_vec)
    }

    fn rs(&self, default: &[u32]) -> Vec<u32> {
        self.r.map_or_else(|| default.to_vec(), |r| vec![r])
    }
}

fn pow(b: u64, e: u64) -> BigInt {
    Pow::pow(BigInt::from(b), e)
}

fn alg<T>(r: qrank_core::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::from)
}

/// Evaluates every cell in parallel and keeps the input order.
fn cells<P, F>(params: Vec<P>, f: F) -> Result<Vec<Cell>, CliError>
where
    P: Send + Sync,
    F: Fn(&P) -> Result<Vec<Cell>, CliError> + Send + Sync,
{
    let nested: Vec<Vec<Cell>> = params.par_iter().map(f).collect::<Result<_, _>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn grid(max_n: u32, square_only_lower: bool) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let top = if square_only_lower { n } else { max_n };
        for r in 1..=top {
            out.push((n, r));
        }
    }
    out
}

fn detdeg(p: &Params) -> Result<Vec<Cell>, CliError> {
    let moduli: Vec<u64> = p.moduli(&[3, 5, 7]).into_iter().filter(|m| m % 2 == 1).collect();
    let jobs: Vec<(u32, u64)> = (1..=p.max_n(3)).flat_map(|n| moduli.iter().map(move |&m| (n, m))).collect();
    cells(jobs, |&(n, m)| {
        let d = alg(degree_report(&alg(AlgebraDescriptor::square(n))?, m))?.degree;
        Ok(vec![Cell::new(format!("n={n} m={m}"), pow(m, u64::from(n * (n - 1) / 2)), d)])
    })
}

fn gcd(p: &Params) -> Result<Vec<Cell>, CliError> {
    cells(grid(p.max_n(8), true), |&(n, r)| {
        let c = corank(&defining_matrix(&alg(AlgebraDescriptor::rectangle(n, r))?));
        Ok(vec![Cell::new(format!("n={n} r={r}"), rectangle_corank(n, r), c)])
    })
}

fn goodlabel(p: &Params) -> Result<Vec<Cell>, CliError> {
    let moduli = p.moduli(&[3, 5, 7]);
    cells(grid(p.max_n(4), false), |&(n, r)| {
        let a = alg(AlgebraDescriptor::rectangle(n, r))?;
        let nf = skew_normal_form(&defining_matrix(&a));
        let mut out = Vec::new();
        for &m in moduli.iter().filter(|&&m| is_good_modulus(&nf.divisors, m)) {
            let c = rectangle_corank(n, r) as u64;
            let d = alg(degree_report(&a, m))?.degree;
            out.push(Cell::new(format!("n={n} r={r} m={m}"), pow(m, (u64::from(n * r) - c) / 2), d));
        }
        Ok(out)
    })
}

fn bl1(p: &Params) -> Result<Vec<Cell>, CliError> {
    cells(grid(p.max_n(6), false), |&(n, r)| {
        let d = alg(degree_report(&alg(AlgebraDescriptor::rectangle(n, r))?, 2))?.degree;
        Ok(vec![Cell::new(format!("n={n} r={r} m=2"), pow(2, u64::from((n + r - 1) / 2)), d)])
    })
}

fn blocks(p: &Params) -> Result<Vec<Cell>, CliError> {
    cells(grid(p.max_n(6), false), |&(n, r)| {
        let b = classify_blocks(&alg(AlgebraDescriptor::rectangle(n, r))?);
        let d0 = (n + r - 1) / 2;
        let rest = ((n * r) as usize - rectangle_corank(n, r)) / 2;
        let expected = format!("1^{d0} (2|4)^{} other=0", rest.saturating_sub(d0 as usize));
        let actual = format!("1^{} (2|4)^{} other={}", b.count_1, b.count_2 + b.count_4, b.other.len());
        Ok(vec![Cell::new(format!("n={n} r={r}"), expected, actual)])
    })
}

fn blocks_rprime(p: &Params) -> Result<Vec<Cell>, CliError> {
    let rs = p.rs(&[2, 3, 5]);
    let max_n = p.max_n(12);
    let jobs: Vec<(u32, u32)> = rs.iter().flat_map(|&r| (1..=max_n).map(move |n| (n, r))).collect();
    cells(jobs, |&(n, r)| {
        let want = expected_four_blocks(n, r).ok_or_else(|| CliError::Usage(format!("r = {r} is not prime")))?;
        let b = classify_blocks(&alg(AlgebraDescriptor::rectangle(n, r))?);
        Ok(vec![Cell::new(format!("n={n} r={r}"), want, b.count_4)])
    })
}

fn hook(p: &Params) -> Result<Vec<Cell>, CliError> {
    let moduli = p.moduli(&[2, 3, 4, 5]);
    cells(grid(p.max_n(5), true), |&(n, r)| {
        let a = alg(AlgebraDescriptor::hook(n, r))?;
        let (nn, rr) = (u64::from(n), u64::from(r));
        let top = nn * rr - rr * (rr + 1) / 2;
        let mut out = Vec::new();
        for &m in &moduli {
            let want = if m % 2 == 1 { pow(m, top) } else { pow(m, nn - 1) * pow(m / 2, top - (nn - 1)) };
            let d = alg(degree_report(&a, m))?.degree;
            out.push(Cell::new(format!("n={n} r={r} m={m}"), want, d));
        }
        let b = classify_blocks(&a);
        let expected = format!("1^{} 2^{} other=0", n - 1, top - (nn - 1));
        let actual = format!("1^{} 2^{} other={}", b.count_1, b.count_2, b.count_4 + b.other.len());
        out.push(Cell::new(format!("n={n} r={r} divisors"), expected, actual));
        Ok(out)
    })
}

fn centrality(p: &Params) -> Result<Vec<Cell>, CliError> {
    let max_n = p.max_n(7);
    let odd = p.moduli(&[3, 5]);
    let even = p.moduli(&[2, 4, 6]);
    let verdict = |c: &CentralCandidate, a: &std::sync::Arc<AlgebraDescriptor>, m, tag: String| -> Result<Cell, CliError> {
        let v = alg(verify_central_candidate(c, a, m, VerifyMode::Lattice))?;
        let actual = v.witness.map_or("central".to_string(), |g| format!("fails at {g}"));
        Ok(Cell::new(tag, "central", actual))
    };
    let mut out = cells(grid(max_n, true), |&(n, r)| {
        let mut out = Vec::new();
        let rect = alg(AlgebraDescriptor::rectangle(n, r))?.into_arc();
        for c in alg(candidates_za(n, r))? {
            for &m in odd.iter().filter(|m| *m % 2 == 1) {
                out.push(verdict(&c, &rect, m, format!("{} M_q({n},{r}) m={m}", c.label))?);
            }
        }
        if r <= 3 {
            let hook = alg(AlgebraDescriptor::hook(n, r))?.into_arc();
            for c in alg(candidates_theta_chain(n, r))? {
                for &m in odd.iter().filter(|m| *m % 2 == 1) {
                    out.push(verdict(&c, &hook, m, format!("{} A({n},{r}) m={m}", c.label))?);
                }
            }
        }
        Ok(out)
    })?;
    out.extend(cells(grid(max_n.min(4), false), |&(n, r)| {
        let rect = alg(AlgebraDescriptor::rectangle(n, r))?.into_arc();
        let mut out = Vec::new();
        for &m in even.iter().filter(|m| *m % 2 == 0) {
            for c in alg(candidates_even_m(n, r, m))? {
                out.push(verdict(&c, &rect, m, format!("{} M_q({n},{r}) m={m}", c.label))?);
            }
        }
        Ok(out)
    })?);
    let rect = alg(AlgebraDescriptor::rectangle(6, 3))?.into_arc();
    out.push(verdict(&alg(candidate_quarter(6, 3, 4))?, &rect, 4, "quarter M_q(6,3) m=4".into())?);
    Ok(out)
}

fn oracle(p: &Params) -> Result<Vec<Cell>, CliError> {
    let moduli = p.moduli(&[2, 3, 5]);
    let jobs: Vec<(u32, u64)> = (1..=p.max_n(3)).flat_map(|n| moduli.iter().map(move |&m| (n, m))).collect();
    cells(jobs, |&(n, m)| {
        let j = defining_matrix(&alg(AlgebraDescriptor::square(n))?);
        let e = alg(brute_force_h_with_bound(&j, m, p.enum_bound))?;
        Ok(vec![Cell::new(format!("M_q({n}) m={m}"), e, image_cardinality(&j, m))])
    })
}

fn generation() -> Result<Vec<Cell>, CliError> {
    cells(vec![(2u32, 2u32, 3u64), (3, 3, 5), (6, 2, 3)], |&(n, r, m)| {
        let v = alg(center_generation_check(n, r, m))?;
        Ok(vec![Cell::new(format!("n={n} r={r} m={m}"), v.kernel_cardinality, v.generated_cardinality)])
    })
}

fn suite_name(s: Suite) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

pub(crate) fn run(
    suite: Suite,
    max_n: Option<u32>,
    r: Option<u32>,
    moduli: Option<&[u64]>,
    unguarded: bool,
) -> Result<Report, CliError> {
    let p = Params { max_n, r, moduli, enum_bound: if unguarded { u128::MAX } else { BRUTE_FORCE_BOUND } };
    let suites: Vec<Suite> = if suite == Suite::All { ALL.to_vec() } else { vec![suite] };
    let mut tables = Vec::new();
    for s in suites {
        let cells = match s {
            Suite::Detdeg => detdeg(&p)?,
            Suite::Gcd => gcd(&p)?,
            Suite::Goodlabel => goodlabel(&p)?,
            Suite::Bl1 => bl1(&p)?,
            Suite::Blocks => blocks(&p)?,
            Suite::BlocksRprime => blocks_rprime(&p)?,
            Suite::Hook => hook(&p)?,
            Suite::Centrality => centrality(&p)?,
            Suite::Oracle => oracle(&p)?,
            Suite::Generation => generation()?,
            Suite::All => unreachable!("expanded above"),
        };
        tables.push(SuiteTable { suite: s, cells });
    }
    let mut findings = Vec::new();
    let mut sections = Vec::new();
    for t in &tables {
        let name = suite_name(t.suite);
        let mut s = Section::new(name.clone(), &["params", "expected", "actual", "status"]);
        for c in &t.cells {
            s.push(vec![c.params.clone(), c.expected.clone(), c.actual.clone(), if c.pass { "pass" } else { "FAIL" }.into()]);
            if !c.pass {
                findings.push(qrank_core::degree::Finding {
                    check: format!("{name}: {}", c.params),
                    expected: c.expected.clone(),
                    actual: c.actual.clone(),
                });
            }
        }
        sections.push(s);
    }
    Ok(Report { result: serde_json::to_value(&tables).expect("tables serialize"), findings, sections })
}
