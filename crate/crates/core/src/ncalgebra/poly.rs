use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::rewrite::Multiplier;
use super::{AlgebraDescriptor, GeneratorId};
use crate::error::{Error, Result};
use crate::laurent::LaurentScalar;

/// Exponent vector indexed by the generators of an algebra in PBW order.
///
/// The derived order compares the earliest generator first, which is a
/// monomial order: the PBW-greatest term of a product is the sum of the
/// factors' greatest exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(pub(crate) Vec<u32>);

impl PbwMonomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn unit(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Generator indices with multiplicity, in PBW order.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize))
            .collect()
    }

    pub fn render(&self, alg: &AlgebraDescriptor) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(alg.generators())
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A finite sum of PBW monomials with nonzero Laurent coefficients.
#[derive(Clone, Debug)]
pub struct NcPolynomial {
    alg: Arc<AlgebraDescriptor>,
    terms: BTreeMap<PbwMonomial, LaurentScalar>,
}

impl PartialEq for NcPolynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.terms == other.terms
    }
}

impl Eq for NcPolynomial {}

impl NcPolynomial {
    pub fn zero(alg: &Arc<AlgebraDescriptor>) -> Self {
        Self { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<AlgebraDescriptor>) -> Self {
        Self::scalar(alg, LaurentScalar::one())
    }

    pub fn scalar(alg: &Arc<AlgebraDescriptor>, c: LaurentScalar) -> Self {
        Self::monomial(alg, PbwMonomial::unit(alg.len()), c)
    }

    pub fn monomial(alg: &Arc<AlgebraDescriptor>, mono: PbwMonomial, c: LaurentScalar) -> Self {
        assert_eq!(mono.0.len(), alg.len(), "monomial length must match the generator count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Self { alg: alg.clone(), terms }
    }

    pub fn generator(alg: &Arc<AlgebraDescriptor>, g: GeneratorId) -> Result<Self> {
        let k = alg.require(g)?;
        let mut exps = vec![0; alg.len()];
        exps[k] = 1;
        Ok(Self::monomial(alg, PbwMonomial(exps), LaurentScalar::one()))
    }

    pub(crate) fn from_map(alg: &Arc<AlgebraDescriptor>, terms: BTreeMap<PbwMonomial, LaurentScalar>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self { alg: alg.clone(), terms }
    }

    pub fn algebra(&self) -> &Arc<AlgebraDescriptor> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing PBW order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PbwMonomial, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &PbwMonomial) -> LaurentScalar {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// The PBW-greatest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&PbwMonomial, &LaurentScalar)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, mono: PbwMonomial, c: &LaurentScalar) {
        add_into(&mut self.terms, mono, c);
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&LaurentScalar::constant(-1))
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = Self::zero(&self.alg);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    /// Product in normal form.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(Multiplier::new(&self.alg).multiply(self, other))
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut mult = Multiplier::new(&self.alg);
        let mut acc = Self::one(&self.alg);
        for _ in 0..k {
            acc = mult.multiply(&acc, self);
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping terms that vanish.
    pub fn map_coeffs(&self, mut f: impl FnMut(&LaurentScalar) -> LaurentScalar) -> Self {
        let mut out = Self::zero(&self.alg);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }
}

pub(crate) fn add_into(terms: &mut BTreeMap<PbwMonomial, LaurentScalar>, mono: PbwMonomial, c: &LaurentScalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(mono) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Formats one coefficient for a term, returning whether a leading minus was
/// pulled out. Multi-term coefficients are parenthesised.
fn coeff_text(c: &LaurentScalar) -> (Option<String>, bool) {
    let (_, top) = c.terms().next_back().expect("nonzero coefficient");
    let negative = top.is_negative();
    let c = if negative { -c } else { c.clone() };
    if c.is_one() {
        return (None, negative);
    }
    if c.len() == 1 {
        return (Some(c.to_string()), negative);
    }
    (Some(format!("({c})")), negative)
}

/// Greatest monomial first. Terms are `coeff*Z11*Z22^2` with the coefficient
/// omitted when it is 1, a leading `-` pulled out of the coefficient when its
/// top-degree term is negative, and multi-term coefficients in parentheses:
/// `Z11*Z22 - (q - q^-1)*Z12*Z21`. The zero polynomial renders as `0`.
impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (coeff, negative) = coeff_text(c);
            let mono = m.render(&self.alg);
            let body = match (coeff, mono.as_str()) {
                (None, _) => mono.clone(),
                (Some(c), "1") => c,
                (Some(c), _) => format!("{c}*{mono}"),
            };
            match (i, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl From<&NcPolynomial> for BTreeMap<PbwMonomial, LaurentScalar> {
    fn from(p: &NcPolynomial) -> Self {
        p.terms.clone()
    }
}

/// `(-q)^k`.
pub(crate) fn minus_q_pow(k: u32) -> LaurentScalar {
    let sign = if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    LaurentScalar::monomial(sign, i64::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> Arc<AlgebraDescriptor> {
        AlgebraDescriptor::square(2).unwrap().into_arc()
    }

    fn z(alg: &Arc<AlgebraDescriptor>, i: u32, j: u32) -> NcPolynomial {
        NcPolynomial::generator(alg, GeneratorId::new(i, j)).unwrap()
    }

    #[test]
    fn rendering() {
        let alg = m2();
        let d = z(&alg, 1, 1)
            .multiply(&z(&alg, 2, 2))
            .unwrap()
            .try_sub(&z(&alg, 1, 2).multiply(&z(&alg, 2, 1)).unwrap().scale(&LaurentScalar::q_pow(1)))
            .unwrap();
        assert_eq!(d.to_string(), "Z11*Z22 - q*Z12*Z21");
        assert_eq!(NcPolynomial::zero(&alg).to_string(), "0");
        assert_eq!(NcPolynomial::one(&alg).to_string(), "1");
        assert_eq!(z(&alg, 1, 2).pow(3).to_string(), "Z12^3");
        let odd = z(&alg, 2, 1).scale(&LaurentScalar::q_minus_q_inv()).neg();
        assert_eq!(odd.to_string(), "-(q - q^-1)*Z21");
        let scalar = NcPolynomial::scalar(&alg, LaurentScalar::from_terms([(1, 2), (0, 1)]));
        assert_eq!(scalar.to_string(), "(2*q + 1)");
    }

    #[test]
    fn mismatch_is_rejected() {
        let a = z(&m2(), 1, 1);
        let b = NcPolynomial::one(&AlgebraDescriptor::square(3).unwrap().into_arc());
        assert_eq!(a.multiply(&b), Err(Error::DescriptorMismatch));
        assert_eq!(a.try_add(&b), Err(Error::DescriptorMismatch));
    }

    #[test]
    fn equal_descriptors_in_different_arcs_are_compatible() {
        let a = z(&m2(), 1, 1);
        let b = z(&m2(), 1, 2);
        assert!(a.multiply(&b).is_ok());
    }

    #[test]
    fn monomial_word() {
        assert_eq!(PbwMonomial::new(vec![2, 0, 1]).word(), vec![0, 0, 2]);
    }
}
