use super::{cond, coprime_signed, lift, require_quadratic, Construction};
use crate::association::check_beta;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::Polynomial;

fn linear(f: &Field, a: FieldElement, b: FieldElement) -> Polynomial {
    Polynomial::from_terms(f, &[(1, a), (0, b)]).expect("elements of f")
}

fn common_checks(f: &Field, beta: FieldElement, n: u64) -> Result<()> {
    require_quadratic(f)?;
    check_beta(f, beta).map_err(|_| Error::BadBeta)?;
    if n == 0 {
        return Err(Error::ParamConstraintViolated("n must be positive".into()));
    }
    Ok(())
}

/// x^{n+k(q+1)}((γx^{q-1} - β)^n - γ(x^{q-1} - γ^q β)^n); permutes F_{q^2} iff
/// gcd(n+2k, q-1) = 1 and gcd(n, q+1) = 1.
pub fn zieve11(
    f: &Field,
    beta: FieldElement,
    gamma: FieldElement,
    n: u64,
    k: u64,
) -> Result<Construction> {
    common_checks(f, beta, n)?;
    f.check(gamma)?;
    if f.in_norm_subgroup(gamma) {
        return Err(Error::BadGamma("gamma lies in mu_{q+1}".into()));
    }
    let q = f.q();
    let a = linear(f, gamma, f.neg(beta)).pow(n);
    let b = linear(f, f.one(), f.neg(f.mul(f.frobenius(gamma), beta))).pow(n);
    let inner = &a - &b.scale(gamma);
    let poly = lift(&inner, n + k * (q + 1));
    Ok(Construction::new(
        poly,
        vec![
            cond("gcd(n+2k,q-1)=1", coprime_signed((n + 2 * k) as i64, q - 1)),
            cond("gcd(n,q+1)=1", coprime_signed(n as i64, q + 1)),
        ],
    ))
}

/// x^{n+k(q+1)}((δx^{q-1} - βδ^q)^n - δ(x^{q-1} - β)^n); permutes F_{q^2} iff
/// gcd(n(n+2k), q-1) = 1.
pub fn zieve12(
    f: &Field,
    beta: FieldElement,
    delta: FieldElement,
    n: u64,
    k: u64,
) -> Result<Construction> {
    common_checks(f, beta, n)?;
    f.check(delta)?;
    if f.in_base_subfield(delta) {
        return Err(Error::BadDelta);
    }
    let q = f.q();
    let a = linear(f, delta, f.neg(f.mul(beta, f.frobenius(delta)))).pow(n);
    let b = linear(f, f.one(), f.neg(beta)).pow(n);
    let inner = &a - &b.scale(delta);
    let poly = lift(&inner, n + k * (q + 1));
    Ok(Construction::new(
        poly,
        vec![cond(
            "gcd(n(n+2k),q-1)=1",
            coprime_signed((n * (n + 2 * k)) as i64, q - 1),
        )],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_permutation_of_field;

    fn f9() -> Field {
        "3^2/1".parse().unwrap()
    }

    #[test]
    fn zieve11_examples() {
        let f = f9();
        let gamma = f.parse_element("1,1").unwrap();
        let c = zieve11(&f, f.one(), gamma, 3, 0).unwrap();
        assert!(c.predicted);
        assert!(is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);
        let c = zieve11(&f, f.one(), gamma, 2, 0).unwrap();
        assert!(!c.predicted);
        assert!(!is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);
    }

    #[test]
    fn zieve11_expansion_matches_pointwise_formula() {
        let f = f9();
        let gamma = f.parse_element("1,1").unwrap();
        let beta = f.parse_element("0,1").unwrap();
        let (n, k) = (4u64, 1u64);
        let c = zieve11(&f, beta, gamma, n, k).unwrap();
        for x in f.elements() {
            let y = f.pow(x, 2);
            let a = f.pow(f.sub(f.mul(gamma, y), beta), n);
            let b = f.pow(f.sub(y, f.mul(f.frobenius(gamma), beta)), n);
            let expect = f.mul(f.pow(x, n + 4 * k), f.sub(a, f.mul(gamma, b)));
            assert_eq!(c.poly.eval(x).unwrap(), expect);
        }
    }

    #[test]
    fn zieve12_example_and_errors() {
        let f = f9();
        let u = f.parse_element("0,1").unwrap();
        let c = zieve12(&f, f.one(), u, 3, 0).unwrap();
        assert!(c.predicted);
        assert!(is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);
        assert_eq!(
            zieve12(&f, f.one(), f.one(), 3, 0).unwrap_err(),
            Error::BadDelta
        );
        let not_mu = f.parse_element("1,1").unwrap();
        assert_eq!(zieve12(&f, not_mu, u, 3, 0).unwrap_err(), Error::BadBeta);
        assert!(matches!(
            zieve11(&f, f.one(), f.one(), 3, 0),
            Err(Error::BadGamma(_))
        ));
    }
}
