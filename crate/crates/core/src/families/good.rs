use super::{cond, coprime_signed, d_label, lift, require_quadratic, Construction};
use crate::association::{
    check_beta, is_beta_associated, is_self_associated, AssociationCertificate, AssociationKind,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::mu_maps::{permutes_mu_or_false, rootfree_on_mu};
use crate::numtheory::gcd_signed;
use crate::poly::{Polynomial, RationalMap};

fn ratio_permutes(l: &Polynomial, m: &Polynomial) -> Result<bool> {
    Ok(permutes_mu_or_false(&RationalMap::new(
        l.clone(),
        m.clone(),
    )?))
}

fn pair_certificate(l: &Polynomial, beta: FieldElement) -> AssociationCertificate {
    AssociationCertificate {
        kind: AssociationKind::Pair,
        beta,
        t: l.degree().unwrap_or(0) as u64,
    }
}

fn require_associated(l: &Polynomial, m: &Polynomial, beta: FieldElement) -> Result<()> {
    if is_beta_associated(l, m, beta)? {
        Ok(())
    } else {
        Err(Error::NotAssociated)
    }
}

/// x^{deg L + k(q+1)} M(x^{q-1}) for L ~_β M; permutes F_{q^2} iff
/// gcd(deg L + 2k, q-1) = 1 and L/M permutes μ_{q+1}.
pub fn good_pair(
    l: &Polynomial,
    m: &Polynomial,
    beta: FieldElement,
    k: u64,
) -> Result<Construction> {
    let f = l.field();
    require_quadratic(f)?;
    require_associated(l, m, beta)?;
    let q = f.q();
    let d = l.degree_i64();
    let poly = lift(m, d as u64 + k * (q + 1));
    Ok(Construction::new(
        poly,
        vec![
            cond(
                "gcd(deg L+2k,q-1)=1",
                coprime_signed(d + 2 * k as i64, q - 1),
            ),
            cond("L/M permutes mu_{q+1}", ratio_permutes(l, m)?),
        ],
    )
    .with_certificate(pair_certificate(l, beta)))
}

/// x^{n deg L + k(q+1)} (L^n - γ M^n)(x^{q-1}) for L ~_β M and γ outside μ_{q+1}.
/// Permutes F_{q^2} iff gcd(n deg L + 2k, q-1) = 1, gcd(n, q+1) = 1 and L/M
/// permutes μ_{q+1}.
pub fn twisted(
    l: &Polynomial,
    m: &Polynomial,
    beta: FieldElement,
    gamma: FieldElement,
    n: u64,
    k: u64,
) -> Result<Construction> {
    let f = l.field();
    require_quadratic(f)?;
    f.check(gamma)?;
    if f.in_norm_subgroup(gamma) {
        return Err(Error::BadGamma("gamma lies in mu_{q+1}".into()));
    }
    if n == 0 {
        return Err(Error::ParamConstraintViolated("n must be positive".into()));
    }
    require_associated(l, m, beta)?;
    let q = f.q();
    let d = l.degree_i64() as u64;
    let inner = &l.pow(n) - &m.pow(n).scale(gamma);
    let poly = lift(&inner, n * d + k * (q + 1));
    Ok(Construction::new(
        poly,
        vec![
            cond(
                "gcd(n deg L+2k,q-1)=1",
                coprime_signed((n * d + 2 * k) as i64, q - 1),
            ),
            cond("gcd(n,q+1)=1", coprime_signed(n as i64, q + 1)),
            cond("L/M permutes mu_{q+1}", ratio_permutes(l, m)?),
        ],
    )
    .with_certificate(pair_certificate(l, beta)))
}

/// x^{s+kD} L(x^{q-1}) for L^q = β x^{-t} L on μ_D, over any F_{q^κ}.
pub(crate) fn self_construction(
    l: &Polynomial,
    beta: FieldElement,
    t: u64,
    s: u64,
    k: u64,
) -> Construction {
    let f = l.field();
    let q = f.q();
    let d = f.norm_order();
    let label = d_label(f);
    let poly = lift(l, s + k * d);
    Construction::new(
        poly,
        vec![
            cond(
                format!("gcd(s-t,{label})=1"),
                coprime_signed(s as i64 - t as i64, d),
            ),
            cond(
                format!("gcd(s+k({label}),q-1)=1"),
                coprime_signed((s + k * d) as i64, q - 1),
            ),
            cond(
                format!("L has no roots in mu_{{{label}}}"),
                rootfree_on_mu(l),
            ),
        ],
    )
    .with_certificate(AssociationCertificate {
        kind: AssociationKind::SelfAssociated,
        beta,
        t,
    })
}

/// x^{s+k(q+1)} L(x^{q-1}) for L ~_{β,t} L; permutes F_{q^2} iff gcd(s-t, q+1) = 1,
/// gcd(s+k(q+1), q-1) = 1 and L has no roots in μ_{q+1}.
pub fn self_assoc(
    l: &Polynomial,
    beta: FieldElement,
    t: u64,
    s: u64,
    k: u64,
) -> Result<Construction> {
    require_quadratic(l.field())?;
    if !is_self_associated(l, beta, t)? {
        return Err(Error::NotSelfAssociated);
    }
    Ok(self_construction(l, beta, t, s, k))
}

/// L = Σ (a_i x^i + a_i^q x^{q-i}), i ≤ (q-1)/2, over F_{q^2} with q even; it
/// is (1, q)-self-associated.
pub fn any_deg_even(l: &Polynomial, s: u64, k: u64) -> Result<Construction> {
    let f = l.field();
    require_quadratic(f)?;
    let q = f.q();
    if !q.is_multiple_of(2) {
        return Err(Error::ParamConstraintViolated("q must be even".into()));
    }
    if l.is_zero() || l.degree_i64() > q as i64 {
        return Err(Error::BadShape);
    }
    let q = q as usize;
    let symmetric = (0..=q).all(|i| l.coeff(q - i) == f.frobenius(l.coeff(i)));
    if !symmetric || !l.coeff(q / 2).is_zero() {
        return Err(Error::BadShape);
    }
    self_assoc(l, f.one(), q as u64, s, k)
}

/// h = a x^i + a^q x^{q-i} with q even, (2i+1) | (q+1) and a^{(q^2-1)/(2i+1)} != 1,
/// which has no roots in μ_{q+1}.
pub fn ex2_binomial(f: &Field, a: FieldElement, i: u64, s: u64, k: u64) -> Result<Construction> {
    require_quadratic(f)?;
    f.check(a)?;
    let q = f.q();
    if !q.is_multiple_of(2) {
        return Err(Error::BadBinomialParams("q must be even".into()));
    }
    if !(q + 1).is_multiple_of(2 * i + 1) {
        return Err(Error::BadBinomialParams(format!(
            "2i+1 = {} does not divide q+1",
            2 * i + 1
        )));
    }
    if a.is_zero() || f.pow(a, (q * q - 1) / (2 * i + 1)).is_one() {
        return Err(Error::BadBinomialParams("a^((q^2-1)/(2i+1)) = 1".into()));
    }
    let h = Polynomial::from_terms(f, &[(i as usize, a), ((q - i) as usize, f.frobenius(a))])?;
    self_assoc(&h, f.one(), q, s, k)
}

/// Conditions (ii)-(iii) of a (β, k)-good pair on top of L ~_β M.
pub fn is_good_pair(l: &Polynomial, m: &Polynomial, beta: FieldElement, k: u64) -> Result<bool> {
    let q = l.field().q();
    Ok(is_beta_associated(l, m, beta)?
        && gcd_signed(l.degree_i64() + 2 * k as i64, q - 1) == 1
        && ratio_permutes(l, m)?)
}

/// Whether L is (β, t, k, s)-good.
pub fn is_good_self(l: &Polynomial, beta: FieldElement, t: u64, k: u64, s: u64) -> Result<bool> {
    check_beta(l.field(), beta)?;
    Ok(is_self_associated(l, beta, t)? && self_construction(l, beta, t, s, k).predicted)
}

/// First (s, k) in lexicographic order over [0, q^2)^2 satisfying the two gcd
/// conditions of the self-associated construction for exponent t.
pub fn first_valid_sk(f: &Field, t: u64) -> Option<(u64, u64)> {
    let q = f.q();
    let d = f.norm_order();
    let bound = q * q;
    (0..bound).find_map(|s| {
        (0..bound)
            .find(|&k| {
                coprime_signed(s as i64 - t as i64, d) && coprime_signed((s + k * d) as i64, q - 1)
            })
            .map(|k| (s, k))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_permutation_of_field;

    fn f16() -> (Field, FieldElement) {
        let f: Field = "2^4/2".parse().unwrap();
        let w = f.mu_subgroup(3).unwrap()[1];
        (f, w)
    }

    #[test]
    fn grado2_instance_good_pair() {
        let (f, w) = f16();
        let l = Polynomial::from_terms(&f, &[(2, w), (0, f.one())]).unwrap();
        let m = Polynomial::from_terms(&f, &[(2, f.one()), (0, w)]).unwrap();
        let c = good_pair(&l, &m, f.one(), 0).unwrap();
        assert!(c.predicted);
        assert_eq!(
            c.poly,
            Polynomial::from_terms(&f, &[(8, f.one()), (2, w)]).unwrap()
        );
        assert!(is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);

        let c = good_pair(&l, &m, f.one(), 2).unwrap();
        assert!(!c.predicted);
        assert!(!is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);

        let c = good_pair(&m, &l, f.one(), 0).unwrap();
        assert!(c.predicted);
        assert!(is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);
    }

    #[test]
    fn not_associated() {
        let (f, w) = f16();
        let l = Polynomial::from_terms(&f, &[(2, w), (0, f.one())]).unwrap();
        let m = Polynomial::from_terms(&f, &[(2, f.one()), (1, f.one())]).unwrap();
        assert_eq!(
            good_pair(&l, &m, f.one(), 0).unwrap_err(),
            Error::NotAssociated
        );
    }

    #[test]
    fn twisted_gcd_uses_n_times_degree() {
        // q = 4, deg L = 2, n = 3, k = 0: gcd(n deg L, 3) = 3 but gcd(deg L, 3) = 1
        let (f, w) = f16();
        let l = Polynomial::from_terms(&f, &[(2, w), (0, f.one())]).unwrap();
        let m = Polynomial::from_terms(&f, &[(2, f.one()), (0, w)]).unwrap();
        let gamma = f.generator();
        assert!(!f.in_norm_subgroup(gamma));
        let c = twisted(&l, &m, f.one(), gamma, 3, 0).unwrap();
        assert!(!c.predicted);
        assert!(!is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);
        let c = twisted(&l, &m, f.one(), gamma, 2, 0).unwrap();
        assert!(c.predicted);
        assert!(is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);
    }

    #[test]
    fn twisted_degree_one_blocks_give_zieve11() {
        let f: Field = "5^2/1".parse().unwrap();
        let gamma = f
            .elements()
            .find(|&g| !g.is_zero() && !f.in_norm_subgroup(g))
            .unwrap();
        for &beta in f.norm_subgroup() {
            let l = Polynomial::from_terms(&f, &[(1, gamma), (0, f.neg(beta))]).unwrap();
            let m = Polynomial::from_terms(
                &f,
                &[(1, f.one()), (0, f.neg(f.mul(f.frobenius(gamma), beta)))],
            )
            .unwrap();
            let b = f.neg(f.inv(beta).unwrap());
            for n in 1..5 {
                for k in 0..3 {
                    let z = crate::families::zieve11(&f, beta, gamma, n, k).unwrap();
                    let t = twisted(&l, &m, b, gamma, n, k).unwrap();
                    assert_eq!(t.poly, z.poly);
                    assert_eq!(t.predicted, z.predicted);
                }
            }
        }
    }

    #[test]
    fn ex2_over_f64() {
        let f: Field = "2^6/3".parse().unwrap();
        let a = f.generator();
        assert!(!f.pow(a, 21).is_one());
        let mut hits = 0;
        for s in 0..10 {
            for k in 0..5 {
                let c = ex2_binomial(&f, a, 1, s, k).unwrap();
                let verified = is_permutation_of_field(&c.poly, &f).unwrap().is_permutation;
                assert_eq!(c.predicted, verified, "s={s} k={k}");
                hits += verified as u32;
            }
        }
        assert!(hits > 0);
        assert!(matches!(
            ex2_binomial(&f, a, 2, 0, 0),
            Err(Error::BadBinomialParams(_))
        ));
        let cube = f.pow(a, 3);
        assert!(matches!(
            ex2_binomial(&f, cube, 1, 0, 0),
            Err(Error::BadBinomialParams(_))
        ));
    }

    #[test]
    fn self_assoc_with_root_on_mu() {
        let f: Field = "3^2/1".parse().unwrap();
        // x - 1 vanishes at 1 ∈ μ_4 and is (-1, 1)-self-associated
        let l = Polynomial::parse(&f, "1:1;0:2").unwrap();
        let minus_one = f.from_int(-1);
        let (s, k) = (0, 0);
        let c = self_assoc(&l, minus_one, 1, s, k).unwrap();
        assert!(!c.predicted);
        assert!(!is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);
        assert_eq!(
            self_assoc(&l, f.one(), 1, 0, 0).unwrap_err(),
            Error::NotSelfAssociated
        );
    }

    #[test]
    fn anydeg_shape_checks() {
        let (f, _) = f16();
        let a0 = f.generator();
        let good = Polynomial::from_terms(&f, &[(0, a0), (4, f.frobenius(a0))]).unwrap();
        assert!(any_deg_even(&good, 1, 0).is_ok());
        let bad = Polynomial::from_terms(&f, &[(0, a0), (4, a0)]).unwrap();
        assert_eq!(any_deg_even(&bad, 1, 0).unwrap_err(), Error::BadShape);
        let middle = Polynomial::from_terms(&f, &[(2, f.one())]).unwrap();
        assert_eq!(any_deg_even(&middle, 1, 0).unwrap_err(), Error::BadShape);
    }

    #[test]
    fn first_valid_sk_is_lexicographic() {
        let f: Field = "7^2/1".parse().unwrap();
        let ok = |s: u64, k: u64| {
            coprime_signed(s as i64 - 2, 8) && coprime_signed((s + 8 * k) as i64, 6)
        };
        let (s, k) = first_valid_sk(&f, 2).unwrap();
        assert_eq!((s, k), (1, 0));
        assert!(ok(s, k));
        // odd t with q odd: s - t odd forces s + k(q+1) even
        assert_eq!(first_valid_sk(&f, 3), None);
    }
}
