//! Degrees at roots of unity from the defining matrix, closed-form tables,
//! block classification, brute-force oracles and centrality verification.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minors::{candidates_za, expand_candidate, gcd_quotients, leading_exponent, CentralCandidate};
use crate::ncalgebra::{central_witness, AlgebraDescriptor, AlgebraKind, GeneratorId};
use crate::skewlat::{
    defining_matrix, image_cardinality_from_form, kernel_from_form, skew_normal_form, LatticeBasisModM, SkewMatrix,
    SkewNormalForm,
};

/// Largest `m^N` that [`brute_force_h`] will enumerate.
pub const BRUTE_FORCE_BOUND: u128 = 100_000_000;
/// Symbolic verification is limited to grids with at most this many generators.
pub const SYMBOLIC_MAX_GENERATORS: usize = 9;
/// and to moduli up to this one.
pub const SYMBOLIC_MAX_MODULUS: u64 = 3;

fn exact_sqrt(h: &BigInt) -> BigInt {
    let s = h.sqrt();
    assert_eq!(&s * &s, *h, "image cardinality {h} is not a perfect square");
    s
}

/// `sqrt |{J w mod m}|`.
pub fn degree_quasipoly(j: &SkewMatrix, m: u64) -> BigInt {
    degree_from_form(&skew_normal_form(j), m)
}

pub fn degree_from_form(nf: &SkewNormalForm, m: u64) -> BigInt {
    exact_sqrt(&image_cardinality_from_form(nf, m))
}

/// `m` odd and coprime to every elementary divisor.
pub fn is_good_modulus(divisors: &[BigInt], m: u64) -> bool {
    let mb = BigInt::from(m);
    m % 2 == 1 && divisors.iter().all(|d| d.gcd(&mb).is_one())
}

/// Corank of the `n x r` rectangle: `gcd(n, r)` when both quotients are odd,
/// else 0.
pub fn rectangle_corank(n: u32, r: u32) -> usize {
    let (s, qn, qr) = gcd_quotients(n, r);
    if qn % 2 == 1 && qr % 2 == 1 {
        s as usize
    } else {
        0
    }
}

fn pow(base: u64, e: u64) -> BigInt {
    Pow::pow(BigInt::from(base), e)
}

fn closed_form_with(alg: &AlgebraDescriptor, m: u64, divisors: &[BigInt]) -> Option<BigInt> {
    match alg.kind() {
        AlgebraKind::Square { n } if m % 2 == 1 => {
            let n = u64::from(n);
            Some(pow(m, n * n.saturating_sub(1) / 2))
        }
        AlgebraKind::Rectangle { rows, cols } => {
            if is_good_modulus(divisors, m) {
                let c = rectangle_corank(rows, cols) as u64;
                Some(pow(m, (u64::from(rows) * u64::from(cols) - c) / 2))
            } else if m == 2 {
                Some(pow(2, (u64::from(rows) + u64::from(cols) - 1) / 2))
            } else {
                None
            }
        }
        AlgebraKind::Hook { n, r } => {
            let (n, r) = (u64::from(n), u64::from(r));
            let top = n * r - r * (r + 1) / 2;
            if m % 2 == 1 {
                Some(pow(m, top))
            } else {
                Some(pow(m, n - 1) * pow(m / 2, top - (n - 1)))
            }
        }
        _ => None,
    }
}

/// The degree predicted by a closed formula, when one applies: squares at
/// odd `m`, rectangles at good `m` or `m = 2`, hooks at every `m`.
pub fn closed_form_degree(alg: &AlgebraDescriptor, m: u64) -> Option<BigInt> {
    let divisors = match alg.kind() {
        AlgebraKind::Rectangle { .. } => skew_normal_form(&defining_matrix(alg)).divisors,
        _ => Vec::new(),
    };
    closed_form_with(alg, m, &divisors)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeReport {
    pub algebra: AlgebraDescriptor,
    pub modulus: u64,
    #[serde(with = "crate::serde_big")]
    pub h: BigInt,
    #[serde(with = "crate::serde_big")]
    pub degree: BigInt,
    #[serde(with = "crate::serde_big::vec")]
    pub divisors: Vec<BigInt>,
    pub corank: usize,
    #[serde(with = "crate::serde_big::option")]
    pub closed_form: Option<BigInt>,
    /// Degree equals the closed form; vacuously true without one.
    pub matches: bool,
}

pub fn degree_report(alg: &AlgebraDescriptor, m: u64) -> Result<DegreeReport> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let nf = skew_normal_form(&defining_matrix(alg));
    let h = image_cardinality_from_form(&nf, m);
    let degree = exact_sqrt(&h);
    let closed_form = closed_form_with(alg, m, &nf.divisors);
    let matches = closed_form.as_ref().is_none_or(|c| *c == degree);
    Ok(DegreeReport {
        algebra: alg.clone(),
        modulus: m,
        h,
        degree,
        divisors: nf.divisors,
        corank: nf.zero_rank,
        closed_form,
        matches,
    })
}

/// `|{J w mod m}|` by enumerating every `w` in `(Z/m)^N`.
pub fn brute_force_h(j: &SkewMatrix, m: u64) -> Result<BigInt> {
    brute_force_h_with_bound(j, m, BRUTE_FORCE_BOUND)
}

pub fn brute_force_h_with_bound(j: &SkewMatrix, m: u64, bound: u128) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let n = j.dim();
    let total = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > bound {
        return Err(Error::GuardExceeded { what: "brute-force enumeration of m^N vectors", requested: total, bound });
    }
    let total = total as usize;
    let mi = m as i64;
    // Codes of image vectors are base-m numbers below m^N.
    let weights: Vec<usize> = (0..n).map(|i| (m as usize).pow(i as u32)).collect();
    let cols: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|i| j.get(i, k).rem_euclid(mi)).collect()).collect();
    let mut seen = vec![0u64; total.div_ceil(64)];
    let mut img = vec![0i64; n];
    let mut code = 0usize;
    let mut w = vec![0u64; n];
    let mut count = 0u64;
    loop {
        if seen[code / 64] & (1 << (code % 64)) == 0 {
            seen[code / 64] |= 1 << (code % 64);
            count += 1;
        }
        // Adding column k m times returns the image to where it was, so a
        // wrapping digit needs no correction.
        let mut k = 0;
        loop {
            if k == n {
                return Ok(BigInt::from(count));
            }
            for i in 0..n {
                let c = cols[k][i];
                if c != 0 {
                    let old = img[i];
                    let new = (old + c) % mi;
                    img[i] = new;
                    code = code + new as usize * weights[i] - old as usize * weights[i];
                }
            }
            w[k] += 1;
            if w[k] < m {
                break;
            }
            w[k] = 0;
            k += 1;
        }
    }
}

/// A proposition instance that did not hold: what was expected, what was seen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub expected: String,
    pub actual: String,
}

impl Finding {
    fn new(check: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        Self { check: check.into(), expected: expected.to_string(), actual: actual.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    #[serde(with = "crate::serde_big::vec")]
    pub divisors: Vec<BigInt>,
    pub count_1: usize,
    pub count_2: usize,
    pub count_4: usize,
    #[serde(with = "crate::serde_big::vec")]
    pub other: Vec<BigInt>,
    pub corank: usize,
    pub findings: Vec<Finding>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Expected number of 4-blocks of the `n x r` rectangle when `r` is prime:
/// `(r - 1) / 2` if `r` is odd and `n` is an even multiple of `r`, else 0.
pub fn expected_four_blocks(n: u32, r: u32) -> Option<usize> {
    if !is_prime(r) {
        return None;
    }
    Some(if r % 2 == 1 && n.is_multiple_of(r) && (n / r).is_multiple_of(2) { (r as usize - 1) / 2 } else { 0 })
}

/// Divisors of a normal form sorted into 1-, 2-, 4-blocks and the rest.
pub fn bucket_divisors(nf: &SkewNormalForm) -> BlockReport {
    let mut rep = BlockReport {
        divisors: nf.divisors.clone(),
        count_1: 0,
        count_2: 0,
        count_4: 0,
        other: Vec::new(),
        corank: nf.zero_rank,
        findings: Vec::new(),
    };
    for d in &nf.divisors {
        match d.to_u64() {
            Some(1) => rep.count_1 += 1,
            Some(2) => rep.count_2 += 1,
            Some(4) => rep.count_4 += 1,
            _ => rep.other.push(d.clone()),
        }
    }
    rep
}

/// Multiset of elementary divisors, bucketed, with the expected counts for
/// rectangles and hooks checked and any disagreement recorded as a finding.
pub fn classify_blocks(alg: &AlgebraDescriptor) -> BlockReport {
    let mut rep = bucket_divisors(&skew_normal_form(&defining_matrix(alg)));
    let mut f = Vec::new();
    match alg.kind() {
        AlgebraKind::Rectangle { rows: n, cols: r } => {
            if !rep.other.is_empty() {
                f.push(Finding::new("divisors within {1,2,4}", "[]", format!("{:?}", rep.other)));
            }
            let d0 = ((n + r - 1) / 2) as usize;
            if rep.count_1 != d0 {
                f.push(Finding::new("count of 1-blocks", d0, rep.count_1));
            }
            let c = rectangle_corank(n, r);
            if rep.corank != c {
                f.push(Finding::new("corank", c, rep.corank));
            }
            let upper = ((n * r) as usize - c) / 2;
            let want = upper.saturating_sub(d0);
            if rep.count_2 + rep.count_4 != want {
                f.push(Finding::new("count of 2- and 4-blocks", want, rep.count_2 + rep.count_4));
            }
            if let Some(k) = expected_four_blocks(n, r) {
                if rep.count_4 != k {
                    f.push(Finding::new("count of 4-blocks for prime r", k, rep.count_4));
                }
            }
        }
        AlgebraKind::Hook { n, r } => {
            if !rep.other.is_empty() || rep.count_4 != 0 {
                let mut bad: Vec<String> = rep.other.iter().map(ToString::to_string).collect();
                bad.extend(std::iter::repeat_n("4".to_string(), rep.count_4));
                f.push(Finding::new("divisors within {1,2}", "[]", format!("[{}]", bad.join(", "))));
            }
            let (n, r) = (n as usize, r as usize);
            if rep.count_1 != n - 1 {
                f.push(Finding::new("count of 1-blocks", n - 1, rep.count_1));
            }
            let twos = n * r - r * (r + 1) / 2 - (n - 1);
            if rep.count_2 != twos {
                f.push(Finding::new("count of 2-blocks", twos, rep.count_2));
            }
        }
        _ => {}
    }
    rep.findings = f;
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Lattice,
    Symbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: String,
    pub mode: VerifyMode,
    pub modulus: u64,
    pub passed: bool,
    /// A generator that fails to commute, on failure.
    pub witness: Option<GeneratorId>,
}

/// Lattice mode asks whether the leading exponent lies in the kernel of `J`
/// mod `m`; symbolic mode expands the product and commutes it with every
/// generator modulo the `m`-th cyclotomic polynomial.
pub fn verify_central_candidate(
    c: &CentralCandidate,
    alg: &Arc<AlgebraDescriptor>,
    m: u64,
    mode: VerifyMode,
) -> Result<Verdict> {
    verify_central_candidate_guarded(c, alg, m, mode, true)
}

pub fn verify_central_candidate_guarded(
    c: &CentralCandidate,
    alg: &Arc<AlgebraDescriptor>,
    m: u64,
    mode: VerifyMode,
    enforce_guard: bool,
) -> Result<Verdict> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let witness = match mode {
        VerifyMode::Lattice => {
            let v = leading_exponent(c, Some(m)).vectorize(alg)?;
            let jv = defining_matrix(alg).apply(&v);
            alg.generators().iter().zip(&jv).find(|(_, x)| x.rem_euclid(m as i64) != 0).map(|(g, _)| *g)
        }
        VerifyMode::Symbolic => {
            if enforce_guard {
                if alg.len() > SYMBOLIC_MAX_GENERATORS {
                    return Err(Error::GuardExceeded {
                        what: "symbolic verification generator count",
                        requested: alg.len() as u128,
                        bound: SYMBOLIC_MAX_GENERATORS as u128,
                    });
                }
                if m > SYMBOLIC_MAX_MODULUS {
                    return Err(Error::GuardExceeded {
                        what: "symbolic verification modulus",
                        requested: u128::from(m),
                        bound: u128::from(SYMBOLIC_MAX_MODULUS),
                    });
                }
            }
            let p = expand_candidate(c, alg, Some(m))?;
            central_witness(&p, Some(m))?
        }
    };
    Ok(Verdict { label: c.label.clone(), mode, modulus: m, passed: witness.is_none(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationVerdict {
    pub n: u32,
    pub r: u32,
    pub modulus: u64,
    pub za_count: usize,
    #[serde(with = "crate::serde_big")]
    pub kernel_cardinality: BigInt,
    #[serde(with = "crate::serde_big")]
    pub generated_cardinality: BigInt,
    pub equal: bool,
}

/// Compares the subgroup spanned by the leading exponents of the `Z_a` (the
/// `m e_{ij}` vanish mod `m`) with the full kernel of `J` mod `m`.
pub fn center_generation_check(n: u32, r: u32, m: u64) -> Result<GenerationVerdict> {
    let alg = AlgebraDescriptor::rectangle(n, r)?;
    let nf = skew_normal_form(&defining_matrix(&alg));
    if !is_good_modulus(&nf.divisors, m) {
        return Err(Error::Precondition(format!("m = {m} is not odd and coprime to the divisors of J")));
    }
    let kernel = kernel_from_form(&nf, m)?;
    let gens = candidates_za(n, r)?
        .iter()
        .map(|c| leading_exponent(c, Some(m)).vectorize(&alg))
        .collect::<Result<Vec<_>>>()?;
    let generated = LatticeBasisModM::from_generators(m, alg.len(), &gens)?;
    Ok(GenerationVerdict {
        n,
        r,
        modulus: m,
        za_count: gens.len(),
        kernel_cardinality: kernel.cardinality(),
        generated_cardinality: generated.cardinality(),
        equal: generated == kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::{candidate_quarter, candidate_za, candidates_even_m, candidates_theta_chain};
    use crate::skewlat::image_cardinality;
    use proptest::prelude::*;

    fn big(x: u64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn degree_examples() {
        let m2 = defining_matrix(&AlgebraDescriptor::square(2).unwrap());
        assert_eq!(degree_quasipoly(&m2, 3), big(3));
        let m3 = defining_matrix(&AlgebraDescriptor::square(3).unwrap());
        assert_eq!(degree_quasipoly(&m3, 5), big(125));
        assert_eq!(degree_quasipoly(&SkewMatrix::zero(4), 7), big(1));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_degree(&AlgebraDescriptor::square(3).unwrap(), 5), Some(big(125)));
        assert_eq!(closed_form_degree(&AlgebraDescriptor::square(3).unwrap(), 4), None);
        let hook = AlgebraDescriptor::hook(3, 2).unwrap();
        assert_eq!(closed_form_degree(&hook, 3), Some(big(27)));
        assert_eq!(closed_form_degree(&hook, 4), Some(big(32)));
        // Divisor 2 appears for (3,2), so 3 is good but 2 falls to the m = 2 rule.
        let rect = AlgebraDescriptor::rectangle(3, 2).unwrap();
        assert_eq!(closed_form_degree(&rect, 3), Some(big(27)));
        assert_eq!(closed_form_degree(&rect, 2), Some(big(4)));
        assert_eq!(closed_form_degree(&rect, 4), None);
        assert_eq!(closed_form_degree(&AlgebraDescriptor::cross(3, 2).unwrap(), 3), None);
    }

    #[test]
    fn brute_force_examples() {
        let m2 = defining_matrix(&AlgebraDescriptor::square(2).unwrap());
        assert_eq!(brute_force_h(&m2, 3).unwrap(), big(9));
        assert_eq!(brute_force_h(&m2, 2).unwrap(), big(4));
        assert_eq!(brute_force_h(&SkewMatrix::zero(1), 7).unwrap(), big(1));
        let m3 = defining_matrix(&AlgebraDescriptor::square(3).unwrap());
        assert!(matches!(brute_force_h(&m3, 9), Err(Error::GuardExceeded { .. })));
        assert_eq!(brute_force_h_with_bound(&m2, 3, 81).unwrap(), big(9));
        assert!(brute_force_h_with_bound(&m2, 3, 80).is_err());
    }

    #[test]
    fn brute_force_agrees_on_small_algebras() {
        for alg in [
            AlgebraDescriptor::square(3).unwrap(),
            AlgebraDescriptor::rectangle(3, 2).unwrap(),
            AlgebraDescriptor::hook(3, 1).unwrap(),
            AlgebraDescriptor::cross(3, 3).unwrap(),
        ] {
            let j = defining_matrix(&alg);
            for m in [2u64, 3, 4] {
                assert_eq!(brute_force_h(&j, m).unwrap(), image_cardinality(&j, m), "{alg} at m={m}");
            }
        }
    }

    fn skew_strategy() -> impl Strategy<Value = SkewMatrix> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(-6i64..=6, n * (n - 1) / 2).prop_map(move |upper| {
                let mut rows = vec![vec![0i64; n]; n];
                let mut it = upper.into_iter();
                for i in 0..n {
                    for j in i + 1..n {
                        let x = it.next().unwrap();
                        rows[i][j] = x;
                        rows[j][i] = -x;
                    }
                }
                SkewMatrix::new(rows).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn degree_squares_to_the_enumerated_image(j in skew_strategy(), m in 1u64..=4) {
            let d = degree_quasipoly(&j, m);
            prop_assert_eq!(&d * &d, brute_force_h(&j, m).unwrap());
        }
    }

    #[test]
    fn block_examples() {
        let r22 = classify_blocks(&AlgebraDescriptor::rectangle(2, 2).unwrap());
        assert_eq!((r22.count_1, r22.count_2 + r22.count_4, r22.corank), (1, 0, 2));
        assert!(r22.findings.is_empty());
        let r32 = classify_blocks(&AlgebraDescriptor::rectangle(3, 2).unwrap());
        assert_eq!((r32.count_1, r32.count_2 + r32.count_4, r32.corank), (2, 1, 0));
        assert!(r32.findings.is_empty());
        let r63 = classify_blocks(&AlgebraDescriptor::rectangle(6, 3).unwrap());
        assert_eq!(r63.count_4, 1);
        assert!(r63.findings.is_empty(), "{:?}", r63.findings);
        let h = classify_blocks(&AlgebraDescriptor::hook(4, 2).unwrap());
        assert_eq!((h.count_1, h.count_2, h.count_4), (3, 2, 0));
        assert!(h.findings.is_empty());
    }

    #[test]
    fn blocks_partition_the_divisors() {
        for n in 1..=5 {
            for r in 1..=5 {
                let b = classify_blocks(&AlgebraDescriptor::rectangle(n, r).unwrap());
                assert_eq!(b.count_1 + b.count_2 + b.count_4 + b.other.len(), b.divisors.len());
                assert!(b.findings.is_empty(), "({n},{r}): {:?}", b.findings);
            }
        }
    }

    #[test]
    fn verify_examples() {
        let alg = AlgebraDescriptor::rectangle(2, 2).unwrap().into_arc();
        let z2 = candidate_za(2, 2, 2).unwrap();
        assert!(verify_central_candidate(&z2, &alg, 3, VerifyMode::Lattice).unwrap().passed);
        assert!(verify_central_candidate(&z2, &alg, 3, VerifyMode::Symbolic).unwrap().passed);
        assert!(verify_central_candidate(&z2, &alg, 5, VerifyMode::Lattice).unwrap().passed);
        let z12 = CentralCandidate {
            label: "Z12".into(),
            shape: (2, 2),
            factors: vec![(crate::minors::MinorDescriptor::block(1, 1, 2, 2), 1)],
        };
        let v = verify_central_candidate(&z12, &alg, 5, VerifyMode::Lattice).unwrap();
        assert!(!v.passed);
        assert_eq!(v.witness, Some(GeneratorId::new(1, 1)));
        assert!(matches!(
            verify_central_candidate(&z12, &alg, 5, VerifyMode::Symbolic),
            Err(Error::GuardExceeded { .. })
        ));
        let sym = verify_central_candidate_guarded(&z12, &alg, 5, VerifyMode::Symbolic, false).unwrap();
        assert_eq!(sym.witness, v.witness);

        let alg = AlgebraDescriptor::rectangle(6, 3).unwrap().into_arc();
        let q = candidate_quarter(6, 3, 4).unwrap();
        assert!(verify_central_candidate(&q, &alg, 4, VerifyMode::Lattice).unwrap().passed);
    }

    #[test]
    fn symbolic_and_lattice_agree_on_small_candidates() {
        let alg = AlgebraDescriptor::rectangle(2, 2).unwrap().into_arc();
        for c in candidates_even_m(2, 2, 2).unwrap() {
            let l = verify_central_candidate(&c, &alg, 2, VerifyMode::Lattice).unwrap();
            let s = verify_central_candidate(&c, &alg, 2, VerifyMode::Symbolic).unwrap();
            assert!(l.passed && s.passed, "{}", c.label);
        }
        let hook = AlgebraDescriptor::square(2).unwrap().into_arc();
        for c in candidates_theta_chain(2, 2).unwrap() {
            let s = verify_central_candidate(&c, &hook, 3, VerifyMode::Symbolic).unwrap();
            assert!(s.passed, "{}", c.label);
        }
    }

    #[test]
    fn generation_examples() {
        let v = center_generation_check(2, 2, 3).unwrap();
        assert!(v.equal);
        assert_eq!(v.za_count, 2);
        assert!(center_generation_check(3, 3, 5).unwrap().equal);
        let v = center_generation_check(3, 2, 5).unwrap();
        assert!(v.equal);
        assert_eq!((v.za_count, v.kernel_cardinality.clone()), (0, big(1)));
        assert!(center_generation_check(2, 2, 4).is_err());
    }

    #[test]
    fn report_invariants() {
        let alg = AlgebraDescriptor::hook(4, 2).unwrap();
        let r = degree_report(&alg, 4).unwrap();
        assert_eq!(&r.degree * &r.degree, r.h);
        assert!(r.matches);
        assert_eq!(r.closed_form, Some(big(4u64.pow(3) * 2u64.pow(2))));
        let cross = degree_report(&AlgebraDescriptor::cross(3, 2).unwrap(), 3).unwrap();
        assert!(cross.closed_form.is_none() && cross.matches);
        let json = serde_json::to_string(&r).unwrap();
        let back: DegreeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.degree, r.degree);
        assert_eq!(back.algebra.generators(), alg.generators());
    }
}
