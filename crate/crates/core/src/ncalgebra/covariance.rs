use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::poly::NcPolynomial;
use super::GeneratorId;
use crate::error::{Error, Result};
use crate::laurent::reduce_at_root;

/// How `p` moves past one generator: `p * g = q^e * g * p`, or no such `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Covariance {
    Exponent(i64),
    NotCovariant,
}

fn nonzero(p: &NcPolynomial) -> Result<()> {
    if p.is_zero() {
        Err(Error::Precondition("expected a nonzero element".into()))
    } else {
        Ok(())
    }
}

fn both_sides(p: &NcPolynomial, g: GeneratorId) -> (NcPolynomial, NcPolynomial) {
    let z = NcPolynomial::generator(p.algebra(), g).expect("generator of the algebra");
    (p.multiply(&z).expect("same algebra"), z.multiply(p).expect("same algebra"))
}

pub fn covariance_profile(p: &NcPolynomial) -> Result<BTreeMap<GeneratorId, Covariance>> {
    nonzero(p)?;
    let mut out = BTreeMap::new();
    for &g in p.algebra().generators() {
        let (pg, gp) = both_sides(p, g);
        // Both products share their leading monomial, so any exponent is
        // pinned by the leading coefficients.
        let (_, c1) = pg.leading_term().expect("domain");
        let (_, c2) = gp.leading_term().expect("domain");
        let e = c1.min_exponent().unwrap() - c2.min_exponent().unwrap();
        let verdict = if gp.scale(&crate::laurent::LaurentScalar::q_pow(e)) == pg {
            Covariance::Exponent(e)
        } else {
            Covariance::NotCovariant
        };
        out.insert(g, verdict);
    }
    Ok(out)
}

/// First generator that fails to commute with `p`, exactly or after sending
/// `q` to a primitive `m`-th root of unity.
pub fn central_witness(p: &NcPolynomial, m: Option<u64>) -> Result<Option<GeneratorId>> {
    nonzero(p)?;
    for &g in p.algebra().generators() {
        let (pg, gp) = both_sides(p, g);
        let diff = pg.try_sub(&gp)?;
        let vanishes = match m {
            None => diff.is_zero(),
            Some(m) => diff.terms().all(|(_, c)| reduce_at_root(c, m).is_zero()),
        };
        if !vanishes {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub fn is_central(p: &NcPolynomial, m: Option<u64>) -> Result<bool> {
    Ok(central_witness(p, m)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentScalar;
    use crate::ncalgebra::{normal_form, AlgebraDescriptor};
    use std::sync::Arc;

    fn g(i: u32, j: u32) -> GeneratorId {
        GeneratorId::new(i, j)
    }

    fn det2(a: &Arc<AlgebraDescriptor>) -> NcPolynomial {
        normal_form(&[g(1, 1), g(2, 2)], a)
            .unwrap()
            .try_sub(&normal_form(&[g(1, 2), g(2, 1)], a).unwrap().scale(&LaurentScalar::q_pow(1)))
            .unwrap()
    }

    #[test]
    fn corner_generator_is_covariant() {
        let a = AlgebraDescriptor::square(2).unwrap().into_arc();
        let prof = covariance_profile(&NcPolynomial::generator(&a, g(1, 2)).unwrap()).unwrap();
        assert!(prof.values().all(|c| matches!(c, Covariance::Exponent(_))));
        assert_eq!(prof[&g(1, 1)], Covariance::Exponent(-1));
        assert_eq!(prof[&g(1, 2)], Covariance::Exponent(0));
    }

    #[test]
    fn determinant_is_central() {
        let a = AlgebraDescriptor::square(2).unwrap().into_arc();
        let d = det2(&a);
        let prof = covariance_profile(&d).unwrap();
        assert!(prof.values().all(|c| *c == Covariance::Exponent(0)));
        assert!(is_central(&d, None).unwrap());
    }

    #[test]
    fn diagonal_generator_is_not_covariant() {
        let a = AlgebraDescriptor::square(2).unwrap().into_arc();
        let prof = covariance_profile(&NcPolynomial::generator(&a, g(1, 1)).unwrap()).unwrap();
        assert_eq!(prof[&g(2, 2)], Covariance::NotCovariant);
        assert!(!is_central(&NcPolynomial::generator(&a, g(1, 2)).unwrap(), None).unwrap());
    }

    #[test]
    fn central_at_root_of_unity() {
        let a = AlgebraDescriptor::rectangle(2, 2).unwrap().into_arc();
        let p = normal_form(&[g(1, 2), g(1, 2), g(2, 1)], &a).unwrap();
        assert!(is_central(&p, Some(3)).unwrap());
        assert!(!is_central(&p, None).unwrap());
        assert_eq!(central_witness(&p, Some(5)).unwrap(), Some(g(1, 1)));
    }

    #[test]
    fn zero_is_rejected() {
        let a = AlgebraDescriptor::square(2).unwrap().into_arc();
        assert!(covariance_profile(&NcPolynomial::zero(&a)).is_err());
    }
}
