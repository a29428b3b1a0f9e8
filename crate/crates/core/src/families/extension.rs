use super::good::self_construction;
use super::{cond, coprime_signed, lift, require_extension, Construction};
use crate::association::{check_beta, relation_holds, AssociationCertificate, AssociationKind};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::mu_maps::permutes_mu_or_false;
use crate::poly::{Polynomial, RationalMap};

/// x^{deg L + kD} M(x^{q-1}) over F_{q^κ}, D = q^{κ-1} + ... + 1, for
/// M^q = β x^{-deg L} L on μ_D. Permutes iff gcd(deg L + kD, q-1) = 1 and
/// L/M permutes μ_D.
pub fn ext_general(
    l: &Polynomial,
    m: &Polynomial,
    beta: FieldElement,
    k: u64,
) -> Result<Construction> {
    let f = l.field();
    require_extension(f)?;
    if m.field() != f {
        return Err(Error::MixedFields);
    }
    check_beta(f, beta)?;
    let deg = l.degree().ok_or(Error::ZeroPolynomial)? as u64;
    if !relation_holds(m, l, beta, deg) {
        return Err(Error::RelationFailed(
            "M^q = beta x^{-deg L} L fails on mu_D".into(),
        ));
    }
    let (q, d) = (f.q(), f.norm_order());
    let ratio = RationalMap::new(l.clone(), m.clone())?;
    Ok(Construction::new(
        lift(m, deg + k * d),
        vec![
            cond(
                "gcd(deg L+kD,q-1)=1",
                coprime_signed((deg + k * d) as i64, q - 1),
            ),
            cond("L/M permutes mu_D", permutes_mu_or_false(&ratio)),
        ],
    )
    .with_certificate(AssociationCertificate {
        kind: AssociationKind::Pair,
        beta,
        t: deg,
    }))
}

/// x^{s+kD} L(x^{q-1}) over F_{q^κ} for L^q = β x^{-t} L on μ_D. Permutes iff
/// gcd(s-t, D) = 1, gcd(s+kD, q-1) = 1 and L has no roots in μ_D.
pub fn ext_self(
    l: &Polynomial,
    beta: FieldElement,
    t: u64,
    s: u64,
    k: u64,
) -> Result<Construction> {
    let f = l.field();
    require_extension(f)?;
    check_beta(f, beta)?;
    if !relation_holds(l, l, beta, t) {
        return Err(Error::RelationFailed(
            "L^q = beta x^{-t} L fails on mu_D".into(),
        ));
    }
    Ok(self_construction(l, beta, t, s, k))
}

/// L_{A,B} = A x^{3kq+3j} + B x^{(k+j)q+2j-k} + A^q x^{3jq+3j-3k} + A^{q^2}
/// over F_{q^3}, for 0 < j <= k <= q/3 and B ∈ F_q.
pub fn lab_polynomial(
    f: &Field,
    a: FieldElement,
    b: FieldElement,
    j: u64,
    k: u64,
) -> Result<Polynomial> {
    if f.ext_ratio() != 3 {
        return Err(Error::BadTower {
            degree: f.degree(),
            base_power: f.base_power(),
        });
    }
    let q = f.q();
    if j == 0 || j > k || 3 * k > q {
        return Err(Error::BadExponentRange(format!(
            "need 0 < j <= k <= q/3, got j={j}, k={k}, q={q}"
        )));
    }
    f.check(a)?;
    f.check(b)?;
    if !f.in_base_subfield(b) {
        return Err(Error::ParamConstraintViolated("B_not_in_base_field".into()));
    }
    let aq = f.frobenius(a);
    let aqq = f.frobenius(aq);
    let e_top = 3 * k * q + 3 * j;
    let e_mid = (k + j) * q + 2 * j - k;
    let e_low = 3 * j * q + 3 * j - 3 * k;
    Polynomial::from_terms(
        f,
        &[
            (e_top as usize, a),
            (e_mid as usize, b),
            (e_low as usize, aq),
            (0, aqq),
        ],
    )
}

/// [`ext_self`] applied to L_{A,B} with β = 1 and t = 3kq + 3j.
pub fn lab_k3(
    f: &Field,
    a: FieldElement,
    b: FieldElement,
    j: u64,
    lab_k: u64,
    s: u64,
    k: u64,
) -> Result<Construction> {
    let l = lab_polynomial(f, a, b, j, lab_k)?;
    ext_self(&l, f.one(), 3 * lab_k * f.q() + 3 * j, s, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::first_valid_sk;
    use crate::mu_maps::rootfree_on_mu;
    use crate::verify::is_permutation_of_field;

    fn pointwise_self(l: &Polynomial, t: u64) -> bool {
        let f = l.field();
        f.norm_subgroup().iter().all(|&x| {
            let lhs = f.pow(l.eval(x).unwrap(), f.q());
            lhs == f.mul(f.pow_signed(x, -(t as i64)).unwrap(), l.eval(x).unwrap())
        })
    }

    #[test]
    fn lab_over_f27() {
        let f: Field = "3^3/1".parse().unwrap();
        let l = lab_polynomial(&f, f.one(), f.zero(), 1, 1).unwrap();
        let one = f.one();
        assert_eq!(
            l,
            Polynomial::from_terms(&f, &[(12, one), (9, one), (0, one)]).unwrap()
        );
        assert_eq!(f.norm_subgroup().len(), 13);
        assert!(pointwise_self(&l, 12));
        assert!(matches!(
            lab_polynomial(&f, one, one, 2, 1),
            Err(Error::BadExponentRange(_))
        ));
    }

    #[test]
    fn lab_over_f343() {
        let f: Field = "7^3/1".parse().unwrap();
        let roots: Vec<u64> = (0..7u64)
            .filter(|&b| (b * b + 4 * b + 9) % 7 == 0)
            .collect();
        assert_eq!(roots, vec![1, 2]);
        let mut any_perm = false;
        for b in roots {
            let l = lab_polynomial(&f, f.one(), f.from_int(b as i64), 1, 1).unwrap();
            assert!(pointwise_self(&l, 24));
            if !rootfree_on_mu(&l) {
                continue;
            }
            let (s, k) = first_valid_sk(&f, 24).unwrap();
            let c = lab_k3(&f, f.one(), f.from_int(b as i64), 1, 1, s, k).unwrap();
            assert!(c.predicted);
            let verified = is_permutation_of_field(&c.poly, &f).unwrap().is_permutation;
            assert!(verified);
            any_perm = true;
        }
        assert!(any_perm);
    }

    #[test]
    fn ext_self_bad_gcd() {
        let f: Field = "3^3/1".parse().unwrap();
        let l = lab_polynomial(&f, f.one(), f.zero(), 1, 1).unwrap();
        // s - t = 13 shares 13 with D
        let c = ext_self(&l, f.one(), 12, 25, 0).unwrap();
        assert!(!c.predicted);
        assert!(!is_permutation_of_field(&c.poly, &f).unwrap().is_permutation);
    }
}
