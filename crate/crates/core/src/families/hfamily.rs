use super::{cond, coprime_signed, lift, require_quadratic, Construction};
use crate::association::{is_self_associated, AssociationCertificate, AssociationKind};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::mu_maps::{
    bijects_mu_to_line_or_false, h_offdiagonal_base_points, h_sigma_gap_rootfree,
};
use crate::poly::{Polynomial, RationalMap};

/// x^{dn + k(q+1)} (H • L/M)(x^{q-1}) with n = deg H, no conditions checked.
pub fn h_bullet_poly(
    h: &Polynomial,
    l: &Polynomial,
    m: &Polynomial,
    d: u64,
    k: u64,
) -> Result<Polynomial> {
    let q = h.field().q();
    let n = h.degree().ok_or(Error::ZeroPolynomial)? as u64;
    Ok(lift(&Polynomial::bullet(h, l, m)?, d * n + k * (q + 1)))
}

/// H monic of degree n; L, M both (β, d)-self-associated with L/M a bijection
/// μ_{q+1} -> F_q ∪ {∞}; the ξ-product curve of H has no off-diagonal F_q
/// points; H^σ - H has no roots in F_q. Then the polynomial permutes
/// F_{q^2} iff gcd(dn + k(q+1), q-1) = 1.
pub fn h_bullet(
    h: &Polynomial,
    l: &Polynomial,
    m: &Polynomial,
    beta: FieldElement,
    d: u64,
    k: u64,
) -> Result<Construction> {
    let f = h.field();
    require_quadratic(f)?;
    if l.field() != f || m.field() != f {
        return Err(Error::MixedFields);
    }
    if !h.is_monic() {
        return Err(Error::NotMonic);
    }
    if !(is_self_associated(l, beta, d)? && is_self_associated(m, beta, d)?) {
        return Err(Error::NotSelfAssociated);
    }
    if !bijects_mu_to_line_or_false(&RationalMap::new(l.clone(), m.clone())?) {
        return Err(Error::ConditionFailed("i".into()));
    }
    if !h_offdiagonal_base_points(h).is_empty() {
        return Err(Error::ConditionFailed("ii".into()));
    }
    if !h_sigma_gap_rootfree(h) {
        return Err(Error::ConditionFailed("iii".into()));
    }
    let q = f.q();
    let n = h.degree().expect("monic") as u64;
    let poly = h_bullet_poly(h, l, m, d, k)?;
    Ok(Construction::new(
        poly,
        vec![
            cond("(i) L/M bijects mu_{q+1} onto F_q+inf", true),
            cond("(ii) no off-diagonal F_q points", true),
            cond("(iii) H^sigma-H rootfree on F_q", true),
            cond(
                "gcd(dn+k(q+1),q-1)=1",
                coprime_signed((d * n + k * (q + 1)) as i64, q - 1),
            ),
        ],
    )
    .with_certificate(AssociationCertificate {
        kind: AssociationKind::SelfAssociated,
        beta,
        t: d,
    }))
}

/// H = g f - γ f for monic f, g over F_q, f rootfree on F_q, g permuting F_q
/// and γ^q = -γ != 0; then delegates to [`h_bullet`].
#[allow(clippy::too_many_arguments)]
pub fn search_h(
    fpoly: &Polynomial,
    g: &Polynomial,
    gamma: FieldElement,
    l: &Polynomial,
    m: &Polynomial,
    beta: FieldElement,
    d: u64,
    k: u64,
) -> Result<Construction> {
    let field = fpoly.field();
    require_quadratic(field)?;
    if g.field() != field {
        return Err(Error::MixedFields);
    }
    field.check(gamma)?;
    if !fpoly.is_monic() || !g.is_monic() {
        return Err(Error::NotMonic);
    }
    for (name, p) in [("f", fpoly), ("g", g)] {
        if !p.over_base_subfield() {
            return Err(Error::ParamConstraintViolated(format!(
                "{name}_not_over_base_field"
            )));
        }
    }
    let base = field.base_elements();
    if base.iter().any(|&x| fpoly.eval_unchecked(x).is_zero()) {
        return Err(Error::ParamConstraintViolated("f_has_base_root".into()));
    }
    let mut images: Vec<_> = base.iter().map(|&x| g.eval_unchecked(x)).collect();
    images.sort();
    images.dedup();
    if images.len() != base.len() {
        return Err(Error::ParamConstraintViolated("g_not_permutation".into()));
    }
    if gamma.is_zero() || field.frobenius(gamma) != field.neg(gamma) {
        return Err(Error::BadGamma("need gamma^q = -gamma != 0".into()));
    }
    let h = &(g * fpoly) - &fpoly.scale(gamma);
    h_bullet(&h, l, m, beta, d, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::zieve12;
    use crate::field::Field;
    use crate::verify::is_permutation_of_field;

    fn poly(f: &Field, s: &str) -> Polynomial {
        Polynomial::parse(f, s).unwrap()
    }

    #[test]
    fn search_h_over_f9() {
        let f: Field = "3^2/1".parse().unwrap();
        let u = f.parse_element("0,1").unwrap();
        let fp = poly(&f, "2:1;0:1");
        let g = Polynomial::x(&f);
        let l = Polynomial::from_terms(&f, &[(1, u), (0, u)]).unwrap();
        let m = poly(&f, "1:1;0:2");
        let c = search_h(&fp, &g, u, &l, &m, f.from_int(2), 1, 0).unwrap();
        assert!(c.predicted);
        assert!(is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);
        // H = x^3 - u x^2 + x - u
        let h = &(&g * &fp) - &fp.scale(u);
        assert_eq!(
            h,
            Polynomial::from_terms(
                &f,
                &[(3, f.one()), (2, f.neg(u)), (1, f.one()), (0, f.neg(u))]
            )
            .unwrap()
        );
        assert!(matches!(
            search_h(&fp, &g, f.one(), &l, &m, f.from_int(2), 1, 0),
            Err(Error::BadGamma(_))
        ));
    }

    #[test]
    fn reproduces_zieve12() {
        let f: Field = "5^2/1".parse().unwrap();
        let delta = f.generator();
        for &beta in f.norm_subgroup() {
            for n in 1..5u64 {
                for k in 0..3u64 {
                    let h = Polynomial::from_terms(&f, &[(n as usize, f.one()), (0, f.neg(delta))])
                        .unwrap();
                    let l = Polynomial::from_terms(
                        &f,
                        &[(1, delta), (0, f.neg(f.mul(beta, f.frobenius(delta))))],
                    )
                    .unwrap();
                    let m = Polynomial::from_terms(&f, &[(1, f.one()), (0, f.neg(beta))]).unwrap();
                    let z = zieve12(&f, beta, delta, n, k).unwrap();
                    assert_eq!(h_bullet_poly(&h, &l, &m, 1, k).unwrap(), z.poly);
                    let sa = f.neg(f.inv(beta).unwrap());
                    match h_bullet(&h, &l, &m, sa, 1, k) {
                        Ok(c) => assert_eq!(c.predicted, z.predicted),
                        Err(e) => {
                            assert_eq!(e, Error::ConditionFailed("ii".into()));
                            assert!(!z.predicted);
                        }
                    }
                }
            }
        }
    }
}
