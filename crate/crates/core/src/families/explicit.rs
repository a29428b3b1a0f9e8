use super::require_quadratic;
use crate::association::{
    find_association, is_beta_associated, is_self_associated, AssociationCertificate,
    AssociationKind,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::Polynomial;

/// An explicit pair together with the relation it satisfies.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitPair {
    pub l: Polynomial,
    pub m: Polynomial,
    pub certificate: AssociationCertificate,
}

fn violated(name: &str) -> Error {
    Error::ParamConstraintViolated(name.to_string())
}

fn require_base(f: &Field, values: &[(&str, FieldElement)]) -> Result<()> {
    for &(name, v) in values {
        f.check(v)?;
        if !f.in_base_subfield(v) {
            return Err(violated(&format!("{name}_not_in_base_field")));
        }
    }
    Ok(())
}

/// Absolute trace F_q -> F_2 for q even.
fn trace_to_f2(f: &Field, xi: FieldElement) -> FieldElement {
    let mut acc = f.zero();
    let mut term = xi;
    for _ in 0..f.base_power() {
        acc = f.add(acc, term);
        term = f.mul(term, term);
    }
    acc
}

/// Degree-two pair over F_{q^2}, q even:
/// L = (C1 + (i+1)C2) x^2 + A1 + (i+1)A2, M = (A1 + iA2) x^2 + C1 + iC2
/// with i^2 = i + ξ and Tr(ξ) = 1. The certificate β is recovered by
/// `find_association`.
pub fn grado2(
    f: &Field,
    xi: FieldElement,
    a: [FieldElement; 2],
    c: [FieldElement; 2],
    i_elt: Option<FieldElement>,
) -> Result<ExplicitPair> {
    require_quadratic(f)?;
    if !f.q().is_multiple_of(2) {
        return Err(violated("q_odd"));
    }
    require_base(
        f,
        &[
            ("xi", xi),
            ("A1", a[0]),
            ("A2", a[1]),
            ("C1", c[0]),
            ("C2", c[1]),
        ],
    )?;
    if !trace_to_f2(f, xi).is_one() {
        return Err(violated("trace_not_one"));
    }
    let is_root = |i: FieldElement| f.mul(i, i) == f.add(i, xi);
    let i = match i_elt {
        Some(i) => {
            f.check(i)?;
            if !is_root(i) {
                return Err(violated("i_not_root"));
            }
            i
        }
        None => f
            .elements()
            .find(|&i| is_root(i))
            .expect("trace one gives a root in F_{q^2}"),
    };
    let i1 = f.add(i, f.one());
    let lead_l = f.add(c[0], f.mul(i1, c[1]));
    let const_l = f.add(a[0], f.mul(i1, a[1]));
    let lead_m = f.add(a[0], f.mul(i, a[1]));
    let const_m = f.add(c[0], f.mul(i, c[1]));
    if f.mul(lead_m, const_m).is_zero() {
        return Err(violated("leading_or_constant_zero"));
    }
    let alpha2 = [
        f.mul(a[0], a[0]),
        f.mul(a[0], a[1]),
        f.mul(c[0], c[0]),
        f.mul(c[0], c[1]),
        f.mul(xi, f.add(f.mul(a[1], a[1]), f.mul(c[1], c[1]))),
    ]
    .into_iter()
    .fold(f.zero(), |acc, v| f.add(acc, v));
    if alpha2.is_zero() {
        return Err(violated("alpha2_zero"));
    }
    let l = Polynomial::from_terms(f, &[(2, lead_l), (0, const_l)])?;
    let m = Polynomial::from_terms(f, &[(2, lead_m), (0, const_m)])?;
    let beta = find_association(&l, &m)?
        .ok_or_else(|| Error::RelationFailed("grado2 pair is not associated".into()))?;
    Ok(ExplicitPair {
        l,
        m,
        certificate: AssociationCertificate {
            kind: AssociationKind::Pair,
            beta,
            t: 2,
        },
    })
}

/// The degree-three pair with no side conditions checked:
/// L = -A1 x^3 + (-3A1 + B1 - iB2) x^2 + (B1 - iB2) x + A1,
/// M = A1 x^3 + (B1 + iB2) x^2 + (-3A1 + B1 + iB2) x - A1.
pub fn grado3_polys(
    f: &Field,
    a1: FieldElement,
    b1: FieldElement,
    b2: FieldElement,
    i: FieldElement,
) -> Result<(Polynomial, Polynomial)> {
    let minus3a1 = f.mul(f.from_int(-3), a1);
    let ib2 = f.mul(i, b2);
    let minus = f.sub(b1, ib2);
    let plus = f.add(b1, ib2);
    let l = Polynomial::from_terms(
        f,
        &[
            (3, f.neg(a1)),
            (2, f.add(minus3a1, minus)),
            (1, minus),
            (0, a1),
        ],
    )?;
    let m = Polynomial::from_terms(
        f,
        &[
            (3, a1),
            (2, plus),
            (1, f.add(minus3a1, plus)),
            (0, f.neg(a1)),
        ],
    )?;
    Ok((l, m))
}

/// Degree-three pair over F_{q^2}, q odd with 3 ∤ q+1, i^q = -i and
/// A1(3A1 - 2B1) != 0; certified 1-associated.
pub fn grado3(
    f: &Field,
    a1: FieldElement,
    b1: FieldElement,
    b2: FieldElement,
    i_elt: Option<FieldElement>,
) -> Result<ExplicitPair> {
    require_quadratic(f)?;
    let q = f.q();
    if q.is_multiple_of(2) {
        return Err(violated("q_even"));
    }
    if (q + 1).is_multiple_of(3) {
        return Err(violated("three_divides_qplus1"));
    }
    require_base(f, &[("A1", a1), ("B1", b1), ("B2", b2)])?;
    let anti = |i: FieldElement| !i.is_zero() && f.frobenius(i) == f.neg(i);
    let i = match i_elt {
        Some(i) => {
            f.check(i)?;
            if !anti(i) {
                return Err(violated("i_not_antiinvariant"));
            }
            i
        }
        None => f
            .elements()
            .find(|&i| anti(i))
            .expect("q odd gives a square root of a nonsquare"),
    };
    let degenerate = f.mul(
        a1,
        f.sub(f.mul(f.from_int(3), a1), f.mul(f.from_int(2), b1)),
    );
    if degenerate.is_zero() {
        return Err(violated("a1_degenerate"));
    }
    let (l, m) = grado3_polys(f, a1, b1, b2, i)?;
    if !is_beta_associated(&l, &m, f.one())? {
        return Err(Error::RelationFailed(
            "grado3 pair is not 1-associated".into(),
        ));
    }
    Ok(ExplicitPair {
        l,
        m,
        certificate: AssociationCertificate {
            kind: AssociationKind::Pair,
            beta: f.one(),
            t: 3,
        },
    })
}

/// L = (x - α)(αx^2 - 1), M = (αx - 1)(x^2 - α) over F_{q^2}, q = p^{odd},
/// p ≡ 7, 17, 23, 33 (mod 40), α ∈ μ_{q+1} a root of α^2 - 3α + 1.
/// Both are (α^{-2}, 3)-self-associated.
pub fn ex1_cubic(f: &Field, alpha: Option<FieldElement>) -> Result<ExplicitPair> {
    require_quadratic(f)?;
    if f.base_power().is_multiple_of(2) {
        return Err(violated("q_not_odd_power"));
    }
    if ![7, 17, 23, 33].contains(&(f.characteristic() % 40)) {
        return Err(violated("p_residue"));
    }
    let is_root = |a: FieldElement| {
        f.add(f.sub(f.mul(a, a), f.mul(f.from_int(3), a)), f.one())
            .is_zero()
    };
    let alpha = match alpha {
        Some(a) => {
            f.check(a)?;
            if !is_root(a) {
                return Err(violated("alpha_not_root"));
            }
            a
        }
        None => f
            .elements()
            .find(|&a| is_root(a))
            .ok_or_else(|| violated("alpha_not_root"))?,
    };
    if !f.in_norm_subgroup(alpha) {
        return Err(violated("alpha_not_in_mu"));
    }
    let x = Polynomial::x(f);
    let c = |e| Polynomial::constant(f, e);
    let l = &(&x - &c(alpha)) * &(&x.pow(2).scale(alpha) - &c(f.one()));
    let m = &(&x.scale(alpha) - &c(f.one())) * &(&x.pow(2) - &c(alpha));
    let beta = f.inv(f.mul(alpha, alpha))?;
    if !(is_self_associated(&l, beta, 3)? && is_self_associated(&m, beta, 3)?) {
        return Err(Error::RelationFailed(
            "cubic pair is not self-associated".into(),
        ));
    }
    Ok(ExplicitPair {
        l,
        m,
        certificate: AssociationCertificate {
            kind: AssociationKind::SelfAssociated,
            beta,
            t: 3,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::good_pair;
    use crate::mu_maps::{bijects_mu_to_line, permutes_mu};
    use crate::poly::RationalMap;

    #[test]
    fn grado2_example() {
        let f: Field = "2^4/2".parse().unwrap();
        let w = f.mu_subgroup(3).unwrap()[1];
        assert!(trace_to_f2(&f, w).is_one());
        let (z, one) = (f.zero(), f.one());
        let pair = grado2(&f, w, [one, z], [w, z], None).unwrap();
        assert_eq!(
            pair.l,
            Polynomial::from_terms(&f, &[(2, w), (0, one)]).unwrap()
        );
        assert_eq!(
            pair.m,
            Polynomial::from_terms(&f, &[(2, one), (0, w)]).unwrap()
        );
        assert_eq!(pair.certificate.beta, one);
        assert_eq!(
            grado2(&f, one, [one, z], [w, z], None).unwrap_err(),
            violated("trace_not_one")
        );
        assert_eq!(
            grado2(&f, w, [one, z], [one, z], None).unwrap_err(),
            violated("alpha2_zero")
        );
        assert_eq!(
            grado2(&f, w, [z, z], [w, z], None).unwrap_err(),
            violated("leading_or_constant_zero")
        );
    }

    #[test]
    fn grado3_example() {
        let f: Field = "7^2/1".parse().unwrap();
        let (one, z) = (f.one(), f.zero());
        let pair = grado3(&f, one, z, z, None).unwrap();
        assert_eq!(
            pair.l,
            Polynomial::from_terms(&f, &[(3, f.from_int(-1)), (2, f.from_int(-3)), (0, one)])
                .unwrap()
        );
        assert!(permutes_mu(&RationalMap::new(pair.l.clone(), pair.m.clone()).unwrap()).unwrap());
        // gcd(3 + 2k, 6) = 1 needs k != 0 mod 3
        assert!(!good_pair(&pair.l, &pair.m, one, 0).unwrap().predicted);
        assert!(good_pair(&pair.l, &pair.m, one, 1).unwrap().predicted);
        // 3 A1 = 2 B1
        assert_eq!(
            grado3(&f, f.from_int(2), f.from_int(3), z, None).unwrap_err(),
            violated("a1_degenerate")
        );
        let f25: Field = "5^2/1".parse().unwrap();
        assert_eq!(
            grado3(&f25, f25.one(), f25.zero(), f25.zero(), None).unwrap_err(),
            violated("three_divides_qplus1")
        );
    }

    #[test]
    fn ex1_example() {
        let f: Field = "7^2/1".parse().unwrap();
        let pair = ex1_cubic(&f, None).unwrap();
        let r = RationalMap::new(pair.l.clone(), pair.m.clone()).unwrap();
        assert!(bijects_mu_to_line(&r).unwrap());
        let alpha = f.elements().find(|&a| {
            f.add(f.sub(f.mul(a, a), f.mul(f.from_int(3), a)), f.one())
                .is_zero()
        });
        assert!(f.pow(alpha.unwrap(), 8).is_one());
        let f9: Field = "3^2/1".parse().unwrap();
        assert_eq!(ex1_cubic(&f9, None).unwrap_err(), violated("p_residue"));
    }
}
