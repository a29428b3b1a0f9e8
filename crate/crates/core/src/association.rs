//! β-associated pairs and (β, t)-self-associated polynomials.
//!
//! `L ~_β M` means L(x)^q = β x^{-deg L} M(x) on μ_D, and `L ~_{β,t} L` means
//! L(x)^q = β x^{-t} L(x) on μ_D, where D = (|F| - 1)/(q - 1) (so D = q + 1
//! for F_{q^2}). Both are decided exactly by comparing reductions modulo
//! x^D - 1: two reduced polynomials of degree < D agreeing on all D points of
//! μ_D are equal.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssociationKind {
    Pair,
    #[serde(rename = "self")]
    SelfAssociated,
}

/// Witness for a pair or self relation. For the pair kind `t` is deg L.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AssociationCertificate {
    pub kind: AssociationKind,
    pub beta: FieldElement,
    pub t: u64,
}

pub(crate) fn check_beta(field: &Field, beta: FieldElement) -> Result<()> {
    field.check(beta)?;
    if field.in_norm_subgroup(beta) {
        Ok(())
    } else {
        Err(Error::BetaNotInMu)
    }
}

/// x^t P(x)^q ≡ β Q(x) on μ_D, with no side conditions on degrees.
pub fn relation_holds(p: &Polynomial, q: &Polynomial, beta: FieldElement, t: u64) -> bool {
    let d = p.field().norm_order() as usize;
    p.mu_reverse(t) == q.scale(beta).reduce_cyclic(d)
}

fn check_pair(l: &Polynomial, m: &Polynomial) -> Result<()> {
    if l.field() != m.field() {
        return Err(Error::MixedFields);
    }
    if l.degree_i64() != m.degree_i64() {
        return Err(Error::DegreeMismatch(l.degree_i64(), m.degree_i64()));
    }
    Ok(())
}

pub fn is_beta_associated(l: &Polynomial, m: &Polynomial, beta: FieldElement) -> Result<bool> {
    check_pair(l, m)?;
    if l == m {
        return Err(Error::EqualPolynomials);
    }
    check_beta(l.field(), beta)?;
    Ok(relation_holds(l, m, beta, l.degree_i64().max(0) as u64))
}

pub fn is_self_associated(l: &Polynomial, beta: FieldElement, t: u64) -> Result<bool> {
    check_beta(l.field(), beta)?;
    Ok(relation_holds(l, l, beta, t))
}

/// The unique M of degree at most D - 1 with L ~_β M, namely β^{-1} x^{deg L} L^q
/// reduced on μ_D.
pub fn associate_of(l: &Polynomial, beta: FieldElement) -> Result<Polynomial> {
    let field = l.field();
    check_beta(field, beta)?;
    let deg = l.degree().ok_or(Error::ZeroPolynomial)?;
    if deg as u64 >= field.norm_order() {
        return Err(Error::DegreeMismatch(
            deg as i64,
            field.norm_order() as i64 - 1,
        ));
    }
    let m = l.mu_reverse(deg as u64).scale(field.inv(beta)?);
    if m.degree() != Some(deg) {
        return Err(Error::DegreeMismatch(deg as i64, m.degree_i64()));
    }
    if &m == l {
        return Err(Error::SelfAssociatedResult);
    }
    Ok(m)
}

/// The β ∈ μ_D with L ~_β M, if any. β is forced to be the ratio of any
/// nonzero coefficient of the reduced M to the matching coefficient of the
/// reversed L, so at most one exists.
pub fn find_association(l: &Polynomial, m: &Polynomial) -> Result<Option<FieldElement>> {
    check_pair(l, m)?;
    if l == m {
        return Ok(None);
    }
    let field = l.field();
    let d = field.norm_order() as usize;
    let rev = l.mu_reverse(l.degree_i64().max(0) as u64);
    let m_red = m.reduce_cyclic(d);
    let Some(pos) = m_red.coeffs().iter().position(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let beta = field.div(rev.coeff(pos), m_red.coeff(pos))?;
    if field.in_norm_subgroup(beta) && rev == m_red.scale(beta) {
        Ok(Some(beta))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Field {
        "3^2/1".parse().unwrap()
    }

    fn el(f: &Field, s: &str) -> FieldElement {
        f.parse_element(s).unwrap()
    }

    fn poly(f: &Field, s: &str) -> Polynomial {
        Polynomial::parse(f, s).unwrap()
    }

    /// L^q = β x^{-t} M checked point by point on μ_D.
    fn pointwise(l: &Polynomial, m: &Polynomial, beta: FieldElement, t: u64) -> bool {
        let f = l.field();
        f.norm_subgroup().iter().all(|&x| {
            let lhs = f.pow(l.eval(x).unwrap(), f.q());
            let rhs = f.mul(
                f.mul(beta, f.pow_signed(x, -(t as i64)).unwrap()),
                m.eval(x).unwrap(),
            );
            lhs == rhs
        })
    }

    /// L = x - γ^q β, M = γ x - β over F_9 with β = 1, γ = u + 1.
    fn zieve_block(f: &Field) -> (Polynomial, Polynomial) {
        let beta = f.one();
        let gamma = el(f, "1,1");
        let l = Polynomial::from_terms(
            f,
            &[(1, f.one()), (0, f.neg(f.mul(f.frobenius(gamma), beta)))],
        )
        .unwrap();
        let m = Polynomial::from_terms(f, &[(1, gamma), (0, f.neg(beta))]).unwrap();
        (l, m)
    }

    #[test]
    fn zieve_block_is_minus_inverse_beta_associated() {
        let f = f9();
        let gamma = el(&f, "1,1");
        assert!(!f.pow(gamma, 4).is_one());
        let (l, m) = zieve_block(&f);
        let two = f.from_int(2);
        assert!(is_beta_associated(&l, &m, two).unwrap());
        assert!(pointwise(&l, &m, two, 1));
        assert!(!is_beta_associated(&l, &m, f.one()).unwrap());
        assert_eq!(find_association(&l, &m).unwrap(), Some(two));
        // scan of all β agrees
        let hits: Vec<_> = f
            .norm_subgroup()
            .iter()
            .copied()
            .filter(|&b| pointwise(&l, &m, b, 1))
            .collect();
        assert_eq!(hits, vec![two]);
    }

    #[test]
    fn non_associated_and_errors() {
        let f = f9();
        let l = poly(&f, "1:1");
        let m = poly(&f, "1:1;0:1");
        assert!(!is_beta_associated(&l, &m, f.one()).unwrap());
        assert!(f.norm_subgroup().iter().all(|&b| !pointwise(&l, &m, b, 1)));
        assert_eq!(
            is_beta_associated(&l, &poly(&f, "2:1"), f.one()),
            Err(Error::DegreeMismatch(1, 2))
        );
        let recip = poly(&f, "0:1;1:2;2:1");
        assert_eq!(
            is_beta_associated(&recip, &recip, f.one()),
            Err(Error::EqualPolynomials)
        );
        assert!(is_self_associated(&recip, f.one(), 2).unwrap());
        assert_eq!(
            is_beta_associated(&l, &m, el(&f, "1,1")),
            Err(Error::BetaNotInMu)
        );
        assert_eq!(
            find_association(&poly(&f, "1:1;0:1"), &poly(&f, "1:1;0:2")).unwrap(),
            None
        );
    }

    #[test]
    fn associate_of_examples() {
        let f = f9();
        let (l, m) = zieve_block(&f);
        let two = f.from_int(2);
        let got = associate_of(&l, two).unwrap();
        assert_eq!(got, m);
        assert!(is_beta_associated(&l, &got, two).unwrap());
        assert!(matches!(
            associate_of(&poly(&f, "2:1"), f.one()),
            Err(Error::DegreeMismatch(2, 0))
        ));
        assert_eq!(
            associate_of(&poly(&f, "0:1;1:1;2:1"), f.one()),
            Err(Error::SelfAssociatedResult)
        );
    }

    #[test]
    fn grado2_instance_over_f16() {
        let f: Field = "2^4/2".parse().unwrap();
        // w: a primitive cube root of unity, i.e. a generator of F_4^*
        let w = f.mu_subgroup(3).unwrap()[1];
        let l = Polynomial::from_terms(&f, &[(2, w), (0, f.one())]).unwrap();
        let m = Polynomial::from_terms(&f, &[(2, f.one()), (0, w)]).unwrap();
        assert_eq!(find_association(&l, &m).unwrap(), Some(f.one()));
        assert!(pointwise(&l, &m, f.one(), 2));
    }

    #[test]
    fn anydeg_shape_is_self_associated() {
        // q = 4: L = a0 + a1 x + a1^q x^3 + a0^q x^4
        let f: Field = "2^4/2".parse().unwrap();
        let a0 = f.generator();
        let a1 = f.pow(a0, 7);
        let l = Polynomial::from_terms(
            &f,
            &[(0, a0), (4, f.frobenius(a0)), (1, a1), (3, f.frobenius(a1))],
        )
        .unwrap();
        assert!(is_self_associated(&l, f.one(), 4).unwrap());
        assert!(pointwise(&l, &l, f.one(), 4));
    }

    #[test]
    fn ex1_cubic_is_self_associated() {
        let f: Field = "7^2/1".parse().unwrap();
        let alpha = f
            .norm_subgroup()
            .iter()
            .copied()
            .find(|&a| {
                let v = f.add(f.sub(f.mul(a, a), f.mul(f.from_int(3), a)), f.one());
                v.is_zero()
            })
            .unwrap();
        let x = Polynomial::x(&f);
        let c = |e| Polynomial::constant(&f, e);
        let l = &(&x - &c(alpha)) * &(&x.pow(2).scale(alpha) - &c(f.one()));
        let m = &(&x.scale(alpha) - &c(f.one())) * &(&x.pow(2) - &c(alpha));
        // the multiplier is α^{-2}; α^2 differs from it since α^4 = -1 here
        let a2 = f.mul(alpha, alpha);
        let b = f.inv(a2).unwrap();
        assert!(is_self_associated(&l, b, 3).unwrap());
        assert!(is_self_associated(&m, b, 3).unwrap());
        assert!(pointwise(&l, &l, b, 3));
        assert!(pointwise(&m, &m, b, 3));
        assert!(!is_self_associated(&l, a2, 3).unwrap());
        assert!(!pointwise(&l, &l, a2, 3));
    }
}
