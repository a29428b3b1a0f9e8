use super::require_quadratic;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::numtheory::gcd;
use crate::poly::Polynomial;

/// A (β, k)-good pair found by [`enumerate_good_pairs`].
#[derive(Clone, Debug, PartialEq)]
pub struct GoodPair {
    pub l: Polynomial,
    pub m: Polynomial,
    pub beta: FieldElement,
}

/// Ceiling on the number of candidate L scanned.
const MAX_CANDIDATES: u64 = 1 << 24;

/// Whether x -> L(x)/R(x) permutes μ_{q+1}; a common root counts as failure.
fn ratio_permutes(f: &Field, l: &Polynomial, r: &Polynomial) -> bool {
    let mu = f.norm_subgroup();
    let mut seen = vec![false; f.size() as usize];
    for &x in mu {
        let (a, b) = (l.eval_unchecked(x), r.eval_unchecked(x));
        if b.is_zero() {
            return false;
        }
        let v = f.div(a, b).expect("nonzero");
        if !f.in_norm_subgroup(v) || std::mem::replace(&mut seen[v.index() as usize], true) {
            return false;
        }
    }
    true
}

fn scan_lead(f: &Field, degree: usize, lead: u32) -> Vec<GoodPair> {
    let n = f.size();
    let lower = n.pow(degree as u32);
    let mu = f.norm_subgroup();
    let mut out = Vec::new();
    for idx in 0..lower {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = idx;
        for _ in 0..degree {
            coeffs.push(f.element((rest % n) as u32).expect("in range"));
            rest /= n;
        }
        coeffs.push(f.element(lead).expect("in range"));
        let l = Polynomial::from_coeffs(f, coeffs).expect("same field");
        let rev = l.mu_reverse(degree as u64);
        // degree drops for every β: no associate of this degree
        if rev.degree() != Some(degree) {
            continue;
        }
        // L/(β^{-1} R) = β L/R, so one test covers every β
        if !ratio_permutes(f, &l, &rev) {
            continue;
        }
        for &beta in mu {
            let m = rev.scale(f.inv(beta).expect("nonzero"));
            if m != l {
                out.push(GoodPair {
                    l: l.clone(),
                    m,
                    beta,
                });
            }
        }
    }
    out
}

/// All (β, k)-good pairs (L, M) of the given degree over F_{q^2}. M is
/// determined by L and β as β^{-1} x^{deg L} L^q on μ_{q+1}. The output is
/// ordered by (leading coefficient of L, lower coefficients of L as a base-|F|
/// number with the constant term least significant, β).
pub fn enumerate_good_pairs(
    f: &Field,
    degree: usize,
    k: u64,
    jobs: usize,
) -> Result<Vec<GoodPair>> {
    require_quadratic(f)?;
    let q = f.q();
    if degree == 0 || degree as u64 > q {
        return Err(Error::ParamConstraintViolated(format!(
            "degree must lie in [1, {q}]"
        )));
    }
    let n = f.size();
    let candidates = (n as u128).pow(degree as u32) * (n as u128 - 1);
    if candidates > MAX_CANDIDATES as u128 {
        return Err(Error::TooLarge(format!(
            "{candidates} candidate polynomials"
        )));
    }
    if gcd(degree as u64 + 2 * k, q - 1) != 1 {
        return Ok(Vec::new());
    }
    let leads: Vec<u32> = (1..n as u32).collect();
    let jobs = jobs.max(1).min(leads.len());
    let mut per_lead: Vec<(u32, Vec<GoodPair>)> = if jobs == 1 {
        leads
            .iter()
            .map(|&lead| (lead, scan_lead(f, degree, lead)))
            .collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let leads = &leads;
                    s.spawn(move || {
                        leads
                            .iter()
                            .skip(w)
                            .step_by(jobs)
                            .map(|&lead| (lead, scan_lead(f, degree, lead)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    per_lead.sort_by_key(|(lead, _)| *lead);
    Ok(per_lead.into_iter().flat_map(|(_, v)| v).collect())
}

/// The closed-form degree-two family for q even: L = c x^2 + a with a, c
/// nonzero and N(a) != N(c), M = a^q x^2 + c^q, β = 1. Ordered by (c, a).
pub fn degree_two_family(f: &Field) -> Result<Vec<GoodPair>> {
    require_quadratic(f)?;
    if !f.q().is_multiple_of(2) {
        return Err(Error::ParamConstraintViolated("q_odd".into()));
    }
    let norm = |a: FieldElement| f.mul(a, f.frobenius(a));
    let mut out = Vec::new();
    for c in f.elements().skip(1) {
        for a in f.elements().skip(1) {
            if norm(a) == norm(c) {
                continue;
            }
            let l = Polynomial::from_terms(f, &[(2, c), (0, a)])?;
            let m = Polynomial::from_terms(f, &[(2, f.frobenius(a)), (0, f.frobenius(c))])?;
            out.push(GoodPair {
                l,
                m,
                beta: f.one(),
            });
        }
    }
    Ok(out)
}
