//! Two independent routes to PBW normal form.
//!
//! [`Multiplier`] right-multiplies ordered monomials by single letters with a
//! per-call memo table; it drives `multiply`. [`normal_form_with`] rewrites
//! words one adjacent descent at a time under an explicit strategy and checks
//! on every step that the termination measure drops.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use super::poly::{add_into, NcPolynomial, PbwMonomial};
use super::{AlgebraDescriptor, GeneratorId};
use crate::error::{Error, Result};
use crate::laurent::LaurentScalar;

/// Which adjacent out-of-order pair to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Letters sorted in decreasing order, then the inversion count.
///
/// Both swap rules keep the letter multiset and remove one inversion. The
/// diagonal rule keeps `Z_{i,j}Z_{s,t}` and replaces the largest letter
/// `Z_{s,t}` by the two strictly smaller letters `Z_{i,t}, Z_{s,j}`, which
/// lowers the multiset. Words of a fixed length over a finite alphabet make
/// the order well founded.
pub type Measure = (Vec<usize>, usize);

pub fn rewrite_measure(word: &[usize]) -> Measure {
    let mut sorted = word.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut inversions = 0;
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if word[a] > word[b] {
                inversions += 1;
            }
        }
    }
    (sorted, inversions)
}

/// Rewrites the out-of-order product `Z_hi * Z_lo` (`hi > lo` in PBW order)
/// as a list of `(coefficient, first, second)` ordered pairs of generator
/// indices.
pub(crate) fn relation_terms(alg: &AlgebraDescriptor, hi: usize, lo: usize) -> Vec<(LaurentScalar, usize, usize)> {
    debug_assert!(hi > lo);
    let GeneratorId { row: s, col: t } = alg.generators()[hi];
    let GeneratorId { row: i, col: j } = alg.generators()[lo];
    if s == i || t == j {
        return vec![(LaurentScalar::q_pow(-1), lo, hi)];
    }
    if t < j {
        return vec![(LaurentScalar::one(), lo, hi)];
    }
    let it = alg.index_of(GeneratorId::new(i, t)).expect("descriptor is closed");
    let sj = alg.index_of(GeneratorId::new(s, j)).expect("descriptor is closed");
    vec![(LaurentScalar::one(), lo, hi), (-LaurentScalar::q_minus_q_inv(), it, sj)]
}

/// The PBW expansion of `g1 * g2` for `g1 > g2`.
pub fn relation(g1: GeneratorId, g2: GeneratorId, alg: &Arc<AlgebraDescriptor>) -> Result<NcPolynomial> {
    let hi = alg.require(g1)?;
    let lo = alg.require(g2)?;
    if hi <= lo {
        return Err(Error::Precondition(format!("relation needs {g1} > {g2} in PBW order")));
    }
    let mut out = NcPolynomial::zero(alg);
    for (c, a, b) in relation_terms(alg, hi, lo) {
        let mut exps = vec![0; alg.len()];
        exps[a] += 1;
        exps[b] += 1;
        out.add_term(PbwMonomial::new(exps), &c);
    }
    Ok(out)
}

type Terms = BTreeMap<PbwMonomial, LaurentScalar>;

/// Right multiplication of ordered monomials by letters, memoised for the
/// lifetime of one value.
pub(crate) struct Multiplier<'a> {
    alg: &'a Arc<AlgebraDescriptor>,
    memo: HashMap<(PbwMonomial, usize), Rc<Terms>>,
}

impl<'a> Multiplier<'a> {
    pub(crate) fn new(alg: &'a Arc<AlgebraDescriptor>) -> Self {
        Self { alg, memo: HashMap::new() }
    }

    /// Normal form of `Z^mono * Z_letter`.
    fn mono_letter(&mut self, mono: &PbwMonomial, letter: usize) -> Rc<Terms> {
        let last = mono.0.iter().rposition(|&e| e > 0);
        if last.is_none_or(|l| l <= letter) {
            let mut exps = mono.0.clone();
            exps[letter] += 1;
            let mut t = Terms::new();
            t.insert(PbwMonomial(exps), LaurentScalar::one());
            return Rc::new(t);
        }
        let key = (mono.clone(), letter);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let last = last.unwrap();
        let mut prefix = mono.clone();
        prefix.0[last] -= 1;
        let mut out = Terms::new();
        for (c, a, b) in relation_terms(self.alg, last, letter) {
            let left = self.mono_letter(&prefix, a);
            for (m, c1) in left.iter() {
                let c1 = c1 * &c;
                let right = self.mono_letter(m, b);
                for (m2, c2) in right.iter() {
                    add_into(&mut out, m2.clone(), &(&c1 * c2));
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    fn terms_letter(&mut self, terms: &Terms, letter: usize) -> Terms {
        let mut out = Terms::new();
        for (m, c) in terms {
            let prod = self.mono_letter(m, letter);
            for (m2, c2) in prod.iter() {
                add_into(&mut out, m2.clone(), &(c * c2));
            }
        }
        out
    }

    pub(crate) fn multiply(&mut self, p: &NcPolynomial, r: &NcPolynomial) -> NcPolynomial {
        let left: Terms = p.into();
        let mut out = Terms::new();
        for (mono, c) in r.terms() {
            let mut acc = left.clone();
            for letter in mono.word() {
                acc = self.terms_letter(&acc, letter);
            }
            for (m, v) in acc {
                add_into(&mut out, m, &(&v * c));
            }
        }
        NcPolynomial::from_map(self.alg, out)
    }

    pub(crate) fn word(&mut self, word: &[usize]) -> NcPolynomial {
        let mut acc = Terms::new();
        acc.insert(PbwMonomial::unit(self.alg.len()), LaurentScalar::one());
        for &letter in word {
            acc = self.terms_letter(&acc, letter);
        }
        NcPolynomial::from_map(self.alg, acc)
    }
}

fn word_indices(word: &[GeneratorId], alg: &AlgebraDescriptor) -> Result<Vec<usize>> {
    word.iter().map(|g| alg.require(*g)).collect()
}

/// Normal form of a word through the memoised multiplier.
pub fn normal_form(word: &[GeneratorId], alg: &Arc<AlgebraDescriptor>) -> Result<NcPolynomial> {
    let idx = word_indices(word, alg)?;
    Ok(Multiplier::new(alg).word(&idx))
}

/// Normal form of a word by explicit rewriting. Panics if a rewrite step
/// fails to lower [`rewrite_measure`].
pub fn normal_form_with(word: &[GeneratorId], alg: &Arc<AlgebraDescriptor>, strategy: Strategy) -> Result<NcPolynomial> {
    let idx = word_indices(word, alg)?;
    let mut pending: BTreeMap<(Measure, Vec<usize>), LaurentScalar> = BTreeMap::new();
    pending.insert((rewrite_measure(&idx), idx), LaurentScalar::one());
    let mut out = NcPolynomial::zero(alg);
    while let Some(((measure, w), c)) = pending.pop_last() {
        let descents = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]);
        let pos = match strategy {
            Strategy::Leftmost => descents.min(),
            Strategy::Rightmost => descents.max(),
        };
        let Some(p) = pos else {
            let mut exps = vec![0; alg.len()];
            for &l in &w {
                exps[l] += 1;
            }
            out.add_term(PbwMonomial::new(exps), &c);
            continue;
        };
        for (rc, a, b) in relation_terms(alg, w[p], w[p + 1]) {
            let mut next = w.clone();
            next[p] = a;
            next[p + 1] = b;
            let m = rewrite_measure(&next);
            assert!(m < measure, "rewrite step did not lower the termination measure");
            let key = (m, next);
            let mut v = pending.remove(&key).unwrap_or_default();
            v += &(&rc * &c);
            if !v.is_zero() {
                pending.insert(key, v);
            }
        }
    }
    Ok(out)
}
