//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Pow};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qrank_core::degree::{
    brute_force_h, center_generation_check, classify_blocks, degree_quasipoly, degree_report, expected_four_blocks,
    is_good_modulus, rectangle_corank, verify_central_candidate, VerifyMode,
};
use qrank_core::minors::{
    candidate_quarter, candidate_za, candidates_even_m, candidates_theta_chain, candidates_za, quantum_minor,
    structural_balance, MinorDescriptor,
};
use qrank_core::ncalgebra::{is_central, normal_form, normal_form_with, AlgebraDescriptor, GeneratorId, Strategy};
use qrank_core::skewlat::{corank, defining_matrix, image_cardinality, skew_normal_form, SkewMatrix};

const CELL_BUDGET: Duration = Duration::from_secs(1);
const BRUTE_FORCE_BUDGET: Duration = Duration::from_secs(30);
const CORANK_BUDGET: Duration = Duration::from_secs(5);
const RANDOM_SEED: u64 = 0x5eed_2026;
const RANDOM_SKEW_CASES: usize = 200;
const RANDOM_REWRITE_CASES: usize = 500;

type Outcome = Result<String, String>;

fn pow(b: u64, e: u64) -> BigInt {
    Pow::pow(BigInt::from(b), e)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ac1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for n in 1..=3u32 {
        let j = defining_matrix(&AlgebraDescriptor::square(n).map_err(err)?);
        for m in [3u64, 5, 7] {
            let t = Instant::now();
            let d = degree_quasipoly(&j, m);
            let el = t.elapsed();
            slowest = slowest.max(el);
            let want = pow(m, u64::from(n * (n - 1) / 2));
            ensure(d == want, || format!("M_q({n}), m={m}: degree {d}, expected {want}"))?;
            ensure(el < CELL_BUDGET, || format!("M_q({n}), m={m} took {el:?}"))?;
        }
    }
    let j = defining_matrix(&AlgebraDescriptor::square(3).map_err(err)?);
    let t = Instant::now();
    let h = brute_force_h(&j, 5).map_err(err)?;
    let el = t.elapsed();
    ensure(h == pow(5, 6), || format!("brute force h(M_q(3), 5) = {h}"))?;
    ensure(el < BRUTE_FORCE_BUDGET, || format!("brute force took {el:?}"))?;
    Ok(format!("9 cells, slowest {slowest:?}; 5^9 enumeration in {el:?}"))
}

fn ac2() -> Outcome {
    let t = Instant::now();
    let mut cells = 0;
    for n in 1..=8u32 {
        for r in 1..=n {
            let c = corank(&defining_matrix(&AlgebraDescriptor::rectangle(n, r).map_err(err)?));
            let want = rectangle_corank(n, r);
            ensure(c == want, || format!("M_q({n},{r}): corank {c}, expected {want}"))?;
            cells += 1;
        }
    }
    let el = t.elapsed();
    ensure(el < CORANK_BUDGET, || format!("took {el:?}"))?;
    Ok(format!("{cells} cells in {el:?}"))
}

fn ac3() -> Outcome {
    let mut cells = 0;
    for n in 1..=4u32 {
        for r in 1..=4u32 {
            let alg = AlgebraDescriptor::rectangle(n, r).map_err(err)?;
            let nf = skew_normal_form(&defining_matrix(&alg));
            for m in [3u64, 5, 7] {
                if !is_good_modulus(&nf.divisors, m) {
                    continue;
                }
                let c = rectangle_corank(n, r) as u64;
                let want = pow(m, (u64::from(n * r) - c) / 2);
                let d = degree_report(&alg, m).map_err(err)?.degree;
                ensure(d == want, || format!("M_q({n},{r}), m={m}: {d} vs {want}"))?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} good cells"))
}

fn ac4() -> Outcome {
    for n in 1..=6u32 {
        for r in 1..=6u32 {
            let d = degree_report(&AlgebraDescriptor::rectangle(n, r).map_err(err)?, 2).map_err(err)?.degree;
            let want = pow(2, u64::from((n + r - 1) / 2));
            ensure(d == want, || format!("M_q({n},{r}), m=2: {d} vs {want}"))?;
        }
    }
    Ok("36 cells".into())
}

fn ac5() -> Outcome {
    for n in 1..=6u32 {
        for r in 1..=6u32 {
            let b = classify_blocks(&AlgebraDescriptor::rectangle(n, r).map_err(err)?);
            ensure(b.other.is_empty(), || format!("M_q({n},{r}): divisors {:?} outside {{1,2,4}}", b.other))?;
            let d0 = ((n + r - 1) / 2) as usize;
            ensure(b.count_1 == d0, || format!("M_q({n},{r}): {} one-blocks, expected {d0}", b.count_1))?;
            let c = rectangle_corank(n, r);
            let want = ((n * r) as usize - c).div_euclid(2).saturating_sub(d0);
            let got = b.count_2 + b.count_4;
            ensure(got == want, || format!("M_q({n},{r}): {got} blocks of 2 or 4, expected {want}"))?;
        }
    }
    Ok("36 cells".into())
}

fn ac6() -> Outcome {
    let mut with_fours = Vec::new();
    for r in [2u32, 3, 5] {
        for n in 1..=12u32 {
            let b = classify_blocks(&AlgebraDescriptor::rectangle(n, r).map_err(err)?);
            let want = expected_four_blocks(n, r).expect("prime r");
            ensure(b.count_4 == want, || format!("M_q({n},{r}): {} four-blocks, expected {want}", b.count_4))?;
            if want > 0 {
                with_fours.push(format!("({n},{r})"));
            }
        }
    }
    Ok(format!("36 cells; four-blocks at {}", with_fours.join(" ")))
}

fn ac7() -> Outcome {
    let mut cells = 0;
    for n in 1..=5u32 {
        for r in 1..=n {
            let alg = AlgebraDescriptor::hook(n, r).map_err(err)?;
            let (nn, rr) = (u64::from(n), u64::from(r));
            let top = nn * rr - rr * (rr + 1) / 2;
            for m in [3u64, 5] {
                let d = degree_report(&alg, m).map_err(err)?.degree;
                ensure(d == pow(m, top), || format!("A({n},{r}), m={m}: {d}"))?;
                cells += 1;
            }
            for m in [2u64, 4] {
                let want = pow(m, nn - 1) * pow(m / 2, top - (nn - 1));
                let d = degree_report(&alg, m).map_err(err)?.degree;
                ensure(d == want, || format!("A({n},{r}), m={m}: {d} vs {want}"))?;
                cells += 1;
            }
            let b = classify_blocks(&alg);
            let twos = (top - (nn - 1)) as usize;
            ensure(
                b.other.is_empty() && b.count_4 == 0 && b.count_1 == n as usize - 1 && b.count_2 == twos,
                || format!("A({n},{r}): divisors {:?}", b.divisors),
            )?;
        }
    }
    Ok(format!("{cells} degree cells, 15 divisor checks"))
}

fn ac8() -> Outcome {
    let mut checked = 0;
    for n in [2u32, 3] {
        let alg = AlgebraDescriptor::square(n).map_err(err)?.into_arc();
        let det = quantum_minor(&MinorDescriptor::block(1, n, 1, n), &alg).map_err(err)?;
        ensure(is_central(&det, None).map_err(err)?, || format!("det_q({n}) is not central"))?;
        checked += 1;
    }
    let mut structural = Vec::new();
    for n in 1..=7u32 {
        for r in 1..=n {
            let alg = AlgebraDescriptor::rectangle(n, r).map_err(err)?.into_arc();
            for c in candidates_za(n, r).map_err(err)? {
                for m in [3u64, 5] {
                    let v = verify_central_candidate(&c, &alg, m, VerifyMode::Lattice).map_err(err)?;
                    ensure(v.passed, || format!("{} on M_q({n},{r}), m={m}: witness {:?}", c.label, v.witness))?;
                    if let Some(g) = structural_balance(&c, &alg, Some(m)).map_err(err)? {
                        structural.push(format!("{} ({n},{r}) m={m} at {g}", c.label));
                    }
                    checked += 1;
                }
            }
        }
    }
    let alg = AlgebraDescriptor::rectangle(2, 2).map_err(err)?.into_arc();
    let v = verify_central_candidate(&candidate_za(2, 2, 2).map_err(err)?, &alg, 3, VerifyMode::Symbolic).map_err(err)?;
    ensure(v.passed, || format!("Z_2 symbolic: witness {:?}", v.witness))?;
    checked += 1;
    for m in [2u64, 4, 6] {
        for n in 1..=4u32 {
            for r in 1..=4u32 {
                let alg = AlgebraDescriptor::rectangle(n, r).map_err(err)?.into_arc();
                for c in candidates_even_m(n, r, m).map_err(err)? {
                    let v = verify_central_candidate(&c, &alg, m, VerifyMode::Lattice).map_err(err)?;
                    ensure(v.passed, || format!("{} on M_q({n},{r}), m={m}: witness {:?}", c.label, v.witness))?;
                    checked += 1;
                }
            }
        }
    }
    let alg = AlgebraDescriptor::rectangle(6, 3).map_err(err)?.into_arc();
    let v = verify_central_candidate(&candidate_quarter(6, 3, 4).map_err(err)?, &alg, 4, VerifyMode::Lattice).map_err(err)?;
    ensure(v.passed, || format!("quarter (6,3,4): witness {:?}", v.witness))?;
    checked += 1;
    for n in 1..=7u32 {
        for r in 1..=n.min(3) {
            let alg = AlgebraDescriptor::hook(n, r).map_err(err)?.into_arc();
            for c in candidates_theta_chain(n, r).map_err(err)? {
                let v = verify_central_candidate(&c, &alg, 3, VerifyMode::Lattice).map_err(err)?;
                ensure(v.passed, || format!("{} on A({n},{r}): witness {:?}", c.label, v.witness))?;
                if let Some(g) = structural_balance(&c, &alg, Some(3)).map_err(err)? {
                    structural.push(format!("{} A({n},{r}) at {g}", c.label));
                }
                checked += 1;
            }
        }
    }
    ensure(structural.is_empty(), || format!("structural rule findings: {}", structural.join("; ")))?;
    Ok(format!("{checked} verifications, no structural findings"))
}

fn random_skew(rng: &mut StdRng) -> SkewMatrix {
    let n = rng.gen_range(1..=6);
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.gen_range(-8..=8);
            rows[i][j] = x;
            rows[j][i] = -x;
        }
    }
    SkewMatrix::new(rows).expect("skew by construction")
}

fn random_word(rng: &mut StdRng, alg: &AlgebraDescriptor, max_len: usize) -> Vec<GeneratorId> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| alg.generators()[rng.gen_range(0..alg.len())]).collect()
}

fn ac9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
    for case in 0..RANDOM_SKEW_CASES {
        let j = random_skew(&mut rng);
        let m = rng.gen_range(1..=4u64);
        let h = image_cardinality(&j, m);
        let b = brute_force_h(&j, m).map_err(err)?;
        ensure(h == b, || format!("case {case}: image {h} vs enumeration {b} for {:?}", j.to_rows()))?;
        let nf = skew_normal_form(&j);
        let det = nf.u.det();
        ensure(det == BigInt::one() || det == -BigInt::one(), || format!("case {case}: det U = {det}"))?;
        let ju = nf.u.mul(&j.to_int_matrix()).and_then(|x| x.mul(&nf.u.transpose())).map_err(err)?;
        ensure(ju == nf.block_form(), || format!("case {case}: U J U^T is not the block form"))?;
        ensure(
            nf.divisors.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)),
            || format!("case {case}: divisors {:?} do not form a chain", nf.divisors),
        )?;
    }
    let j3 = defining_matrix(&AlgebraDescriptor::square(3).map_err(err)?);
    for m in [2u64, 3, 5] {
        ensure(image_cardinality(&j3, m) == brute_force_h(&j3, m).map_err(err)?, || format!("M_q(3) at m={m}"))?;
    }
    let algs = [
        AlgebraDescriptor::square(3).map_err(err)?.into_arc(),
        AlgebraDescriptor::rectangle(2, 3).map_err(err)?.into_arc(),
        AlgebraDescriptor::hook(3, 2).map_err(err)?.into_arc(),
    ];
    for case in 0..RANDOM_REWRITE_CASES {
        let alg = &algs[case % algs.len()];
        let w = random_word(&mut rng, alg, 6);
        let fast = normal_form(&w, alg).map_err(err)?;
        let left = normal_form_with(&w, alg, Strategy::Leftmost).map_err(err)?;
        let right = normal_form_with(&w, alg, Strategy::Rightmost).map_err(err)?;
        ensure(fast == left && left == right, || format!("confluence case {case}: word {w:?}"))?;
        let (a, b, c) = (random_word(&mut rng, alg, 3), random_word(&mut rng, alg, 3), random_word(&mut rng, alg, 3));
        let pa = normal_form(&a, alg).map_err(err)?;
        let pb = normal_form(&b, alg).map_err(err)?;
        let pc = normal_form(&c, alg).map_err(err)?;
        let lhs = pa.multiply(&pb).and_then(|x| x.multiply(&pc)).map_err(err)?;
        let rhs = pa.multiply(&pb.multiply(&pc).map_err(err)?).map_err(err)?;
        let whole: Vec<GeneratorId> = a.iter().chain(&b).chain(&c).copied().collect();
        ensure(lhs == rhs && rhs == normal_form(&whole, alg).map_err(err)?, || format!("associativity case {case}"))?;
    }
    Ok(format!("{RANDOM_SKEW_CASES} skew matrices, {RANDOM_REWRITE_CASES} rewrite cases"))
}

fn ac10() -> Outcome {
    let mut notes = Vec::new();
    for (n, r, m) in [(2u32, 2u32, 3u64), (3, 3, 5), (6, 2, 3)] {
        let v = center_generation_check(n, r, m).map_err(err)?;
        ensure(v.equal, || {
            format!("({n},{r},{m}): generated {} vs kernel {}", v.generated_cardinality, v.kernel_cardinality)
        })?;
        notes.push(format!("({n},{r},{m}) |K|={}", v.kernel_cardinality));
    }
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("AC1 square degree", ac1),
        ("AC2 rectangle corank", ac2),
        ("AC3 rectangle degree at good m", ac3),
        ("AC4 rectangle degree at m=2", ac4),
        ("AC5 rectangle block counts", ac5),
        ("AC6 four-blocks for prime r", ac6),
        ("AC7 hook degree and divisors", ac7),
        ("AC8 centrality suites", ac8),
        ("AC9 oracle equivalence", ac9),
        ("AC10 center generation", ac10),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {name} ({:.2?}): {detail}", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({:.2?}): {why}", t.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
