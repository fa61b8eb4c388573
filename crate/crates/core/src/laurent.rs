//! Coefficient arithmetic: integer Laurent polynomials in `q`, and their
//! images in `Z[q]/(Phi_m)` when `q` is specialised to a primitive `m`-th
//! root of unity.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of `Z[q, q^-1]`, stored as exponent -> nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// `q - q^-1`, the correction constant of the diagonal relation.
    pub fn q_minus_q_inv() -> Self {
        Self::from_terms([(1, 1), (-1, -1)])
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Returns `(exp, coeff)` when the scalar is a single term.
    pub fn single_term(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Adds `factor * other` in place.
    pub fn add_scaled(&mut self, other: &Self, factor: &Self) {
        for (e1, c1) in &factor.terms {
            for (e2, c2) in &other.terms {
                self.add_term(e1 + e2, &(c1 * c2));
            }
        }
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&LaurentScalar> for LaurentScalar {
    fn sub_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        out.add_scaled(rhs, self);
        out
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

/// Renders one `c*q^e` term without its sign. Returns the text and whether
/// the coefficient was negative.
fn render_term(exp: i64, c: &BigInt) -> (String, bool) {
    let neg = c.is_negative();
    let mag = c.abs();
    let var = match exp {
        0 => String::new(),
        1 => "q".to_string(),
        e => format!("q^{e}"),
    };
    let body = if var.is_empty() {
        mag.to_string()
    } else if mag.is_one() {
        var
    } else {
        format!("{mag}*{var}")
    };
    (body, neg)
}

/// Highest exponent first, e.g. `q^2 - 2 + q^-2`.
impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (body, neg) = render_term(*e, c);
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentScalar {
    type Err = Error;

    /// Parses the grammar produced by `Display`: signed terms `c`, `q`,
    /// `q^e`, `c*q` or `c*q^e`, separated by ` + ` / ` - `.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty Laurent polynomial".into()));
        }
        let mut out = LaurentScalar::zero();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut i = 0;
        let mut pieces = Vec::new();
        while i <= bytes.len() {
            let at_split = i == bytes.len()
                || (i > start && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if at_split {
                pieces.push(&compact[start..i]);
                start = i;
            }
            i += 1;
        }
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, piece),
            };
            let bad = || Error::Parse(format!("bad Laurent term `{piece}`"));
            let (coeff, var) = match body.split_once('*') {
                Some((c, v)) => (c.parse::<BigInt>().map_err(|_| bad())?, Some(v)),
                None if body.starts_with('q') => (BigInt::one(), Some(body)),
                None => (body.parse::<BigInt>().map_err(|_| bad())?, None),
            };
            let exp = match var {
                None => 0,
                Some("q") => 1,
                Some(v) => v
                    .strip_prefix("q^")
                    .and_then(|e| e.parse::<i64>().ok())
                    .ok_or_else(bad)?,
            };
            out.add_term(exp, &(coeff * sign));
        }
        Ok(out)
    }
}

/// A dense integer polynomial in `q`, lowest degree first, with no trailing
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `q^m - 1`.
    pub fn x_pow_minus_one(m: usize) -> Self {
        let mut c = vec![BigInt::zero(); m + 1];
        c[0] = BigInt::from(-1);
        c[m] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact quotient by a monic divisor; `None` if the division leaves a
    /// remainder.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let d = divisor.degree()?;
        if !divisor.0[d].is_one() {
            return None;
        }
        let mut rem = self.0.clone();
        if rem.len() <= d {
            return rem.iter().all(Zero::is_zero).then(|| IntPoly(Vec::new()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let as_laurent =
            LaurentScalar::from_terms(self.0.iter().enumerate().map(|(e, c)| (e as i64, c.clone())));
        write!(f, "{as_laurent}")
    }
}

pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// The `m`-th cyclotomic polynomial, obtained by dividing `q^m - 1` by
/// `Phi_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_poly(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic_poly needs m >= 1");
    let mut quotient = IntPoly::x_pow_minus_one(m as usize);
    for d in divisors(m) {
        if d < m {
            quotient = quotient
                .div_exact_monic(&cyclotomic_poly(d))
                .expect("Phi_d divides q^m - 1");
        }
    }
    quotient
}

/// A residue in `Z[q]/(Phi_m)`, stored as the `phi(m)` coefficients of the
/// reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicScalar {
    modulus: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicScalar {
    pub fn zero(m: u64) -> Self {
        Self {
            modulus: m,
            coeffs: vec![BigInt::zero(); euler_phi(m) as usize],
        }
    }

    pub fn one(m: u64) -> Self {
        reduce_at_root(&LaurentScalar::one(), m)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixing residues for different moduli");
    }

    /// Reduces an arbitrary-length polynomial (low to high) modulo `Phi_m`.
    fn from_dense(m: u64, mut dense: Vec<BigInt>, phi: &IntPoly) -> Self {
        let d = phi.degree().expect("cyclotomic polynomial is nonzero");
        for k in (d..dense.len()).rev() {
            let c = std::mem::take(&mut dense[k]);
            if c.is_zero() {
                continue;
            }
            for (j, pc) in phi.coeffs().iter().enumerate().take(d) {
                dense[k - d + j] -= &c * pc;
            }
        }
        dense.resize(d, BigInt::zero());
        Self { modulus: m, coeffs: dense }
    }
}

/// Specialises `q` to a primitive `m`-th root of unity: exponents are taken
/// mod `m` (so `q^-1` becomes `q^(m-1)`) and the result is reduced mod `Phi_m`.
pub fn reduce_at_root(a: &LaurentScalar, m: u64) -> CyclotomicScalar {
    assert!(m >= 1, "reduce_at_root needs m >= 1");
    let mut dense = vec![BigInt::zero(); m as usize];
    for (e, c) in a.terms() {
        let idx = e.rem_euclid(m as i64) as usize;
        dense[idx] += c;
    }
    CyclotomicScalar::from_dense(m, dense, &cyclotomic_poly(m))
}

impl Add for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self.check(rhs);
        CyclotomicScalar {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self.check(rhs);
        CyclotomicScalar {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self.check(rhs);
        let len = (self.coeffs.len() * 2).max(1);
        let mut dense = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                dense[i + j] += a * b;
            }
        }
        CyclotomicScalar::from_dense(self.modulus, dense, &cyclotomic_poly(self.modulus))
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod Phi_{}", IntPoly::new(self.coeffs.clone()), self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentScalar {
        LaurentScalar::from_terms(terms.iter().copied())
    }

    #[test]
    fn inverse_pair() {
        assert!((LaurentScalar::q_pow(1) * LaurentScalar::q_pow(-1)).is_one());
    }

    #[test]
    fn difference_of_squares() {
        let a = lp(&[(1, 1), (-1, -1)]);
        let b = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &b, lp(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn square_of_correction_constant() {
        // Hand expansion: (q - q^-1)^2 = q^2 - 2 + q^-2.
        let a = LaurentScalar::q_minus_q_inv();
        assert_eq!(a.pow(2), lp(&[(2, 1), (0, -2), (-2, 1)]));
    }

    #[test]
    fn display_and_parse() {
        let a = lp(&[(2, 1), (0, -2), (-2, 1)]);
        assert_eq!(a.to_string(), "q^2 - 2 + q^-2");
        assert_eq!(lp(&[(1, -3)]).to_string(), "-3*q");
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        for s in ["q^2 - 2 + q^-2", "-3*q", "q - q^-1", "7", "-q^-4 + 5*q^3"] {
            let parsed: LaurentScalar = s.parse().unwrap();
            assert_eq!(parsed.to_string().parse::<LaurentScalar>().unwrap(), parsed);
        }
        assert!("q^x".parse::<LaurentScalar>().is_err());
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), IntPoly::from_i64(&[1, 1, 1]));
        // q^6 - 1 = Phi_1 Phi_2 Phi_3 Phi_6, so Phi_6 = (q^6 - 1) / ((q^2 - 1)(q^2 + q + 1)).
        let partial = IntPoly::from_i64(&[-1, 0, 1]).mul(&IntPoly::from_i64(&[1, 1, 1]));
        let phi6 = IntPoly::x_pow_minus_one(6).div_exact_monic(&partial).unwrap();
        assert_eq!(phi6, IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(6), phi6);
        assert_eq!(cyclotomic_poly(6).to_string(), "q^2 - q + 1");
    }

    #[test]
    fn cyclotomic_product_identity() {
        for m in 1..=24u64 {
            let mut prod = IntPoly::from_i64(&[1]);
            for d in divisors(m) {
                prod = prod.mul(&cyclotomic_poly(d));
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(m as usize), "m = {m}");
            assert_eq!(cyclotomic_poly(m).degree(), Some(euler_phi(m) as usize));
        }
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_at_root(&LaurentScalar::q_pow(3), 3), CyclotomicScalar::one(3));
        assert!(reduce_at_root(&lp(&[(0, 1), (1, 1), (2, 1)]), 3).is_zero());
        // q = -1 at m = 2, so q - q^-1 = -1 - (-1) = 0.
        assert!(reduce_at_root(&LaurentScalar::q_minus_q_inv(), 2).is_zero());
        assert!(!reduce_at_root(&LaurentScalar::q_minus_q_inv(), 3).is_zero());
        // q^-1 maps to q^(m-1).
        assert_eq!(
            reduce_at_root(&LaurentScalar::q_pow(-1), 5),
            reduce_at_root(&LaurentScalar::q_pow(4), 5)
        );
    }

    #[test]
    fn cancellation_is_canonical() {
        let a = lp(&[(3, 4), (-1, 2), (0, -7)]);
        let z = &a + &(-&a);
        assert!(z.is_zero());
        assert_eq!(z.terms().count(), 0);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentScalar> {
        proptest::collection::vec((-6i64..=6, -5i64..=5), 0..5).prop_map(LaurentScalar::from_terms)
    }

    proptest! {
        #[test]
        fn reduction_is_multiplicative(a in arb_laurent(), b in arb_laurent(), m in 1u64..=12) {
            let lhs = reduce_at_root(&(&a * &b), m);
            let rhs = &reduce_at_root(&a, m) * &reduce_at_root(&b, m);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduction_is_additive(a in arb_laurent(), b in arb_laurent(), m in 1u64..=12) {
            let lhs = reduce_at_root(&(&a - &b), m);
            let rhs = &reduce_at_root(&a, m) - &reduce_at_root(&b, m);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn cyclotomic_ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent(), m in 1u64..=12) {
            let (x, y, z) = (reduce_at_root(&a, m), reduce_at_root(&b, m), reduce_at_root(&c, m));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(x.coeffs().len() as u64, euler_phi(m));
        }
    }
}
