//! Exhaustive permutation checks and the AGW criterion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::numtheory::gcd;
use crate::poly::Polynomial;

/// Ceiling on |F| times the number of terms evaluated.
pub const MAX_EVALUATIONS: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationReport {
    pub is_permutation: bool,
    /// Smallest colliding pair in canonical order: the first b whose value
    /// was already taken, together with the earlier a that took it.
    pub collision_witness: Option<(FieldElement, FieldElement)>,
    pub image_size: u64,
}

#[derive(Serialize)]
struct ReportDoc {
    is_permutation: bool,
    collision_witness: Option<(String, String)>,
    image_size: u64,
}

impl PermutationReport {
    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        let doc = ReportDoc {
            is_permutation: self.is_permutation,
            collision_witness: self
                .collision_witness
                .map(|(a, b)| (field.format_element(a), field.format_element(b))),
            image_size: self.image_size,
        };
        serde_json::to_value(doc).expect("plain data")
    }
}

/// Scans a value table indexed by the canonical order of the domain.
fn scan(
    domain: &[FieldElement],
    values: &[FieldElement],
    codomain_size: usize,
) -> PermutationReport {
    const UNSEEN: u32 = u32::MAX;
    let mut first = vec![UNSEEN; codomain_size];
    let mut witness = None;
    let mut image = 0u64;
    for (pos, v) in values.iter().enumerate() {
        let slot = &mut first[v.index() as usize];
        if *slot == UNSEEN {
            *slot = pos as u32;
            image += 1;
        } else if witness.is_none() {
            witness = Some((domain[*slot as usize], domain[pos]));
        }
    }
    PermutationReport {
        is_permutation: witness.is_none() && image == domain.len() as u64,
        collision_witness: witness,
        image_size: image,
    }
}

/// Evaluates `f` on every element of `domain`, split across `jobs` threads.
pub(crate) fn parallel_map<T, F>(domain: &[FieldElement], jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(FieldElement) -> T + Sync,
{
    let jobs = jobs.max(1);
    if jobs == 1 || domain.len() < 2 * jobs {
        return domain.iter().map(|&x| f(x)).collect();
    }
    let chunk = domain.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = domain
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                s.spawn(move || part.iter().map(|&x| f(x)).collect::<Vec<_>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

pub fn is_permutation_of_field(p: &Polynomial, field: &Field) -> Result<PermutationReport> {
    is_permutation_of_field_with_jobs(p, field, 1)
}

pub fn is_permutation_of_field_with_jobs(
    p: &Polynomial,
    field: &Field,
    jobs: usize,
) -> Result<PermutationReport> {
    if p.field() != field {
        return Err(Error::MixedFields);
    }
    let work = field.size().saturating_mul(p.weight().max(1) as u64);
    if work > MAX_EVALUATIONS {
        return Err(Error::TooLarge(format!("{work} term evaluations")));
    }
    let domain: Vec<_> = field.elements().collect();
    let ev = p.evaluator();
    let values = parallel_map(&domain, jobs, |x| ev.eval(x));
    Ok(scan(&domain, &values, domain.len()))
}

/// Bijectivity of an arbitrary map on F, by the same scan.
pub fn is_permutation_fn(
    field: &Field,
    f: impl Fn(FieldElement) -> FieldElement + Sync,
) -> PermutationReport {
    let domain: Vec<_> = field.elements().collect();
    let values = parallel_map(&domain, 1, f);
    scan(&domain, &values, domain.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AgwOutcome {
    /// x^r h(x^d) permutes F.
    pub lhs: bool,
    /// gcd(r, d) = 1 and x^r h(x)^d permutes μ_{(|F|-1)/d}.
    pub rhs: bool,
}

/// Both sides of: x^r h(x^d) permutes F iff gcd(r, d) = 1 and x^r h(x)^d
/// permutes μ_{(|F|-1)/d}, for r > 0. Returned separately so callers can
/// compare them.
pub fn check_agw_criterion(r: u64, d: u64, h: &Polynomial, field: &Field) -> Result<AgwOutcome> {
    if h.field() != field {
        return Err(Error::MixedFields);
    }
    // with r = 0 the value at 0 is h(0) and the subgroup side no longer sees it
    if r == 0 {
        return Err(Error::ParamConstraintViolated("r must be positive".into()));
    }
    let order = field.size() - 1;
    if d == 0 || !order.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, order });
    }
    let ev = h.evaluator();
    let lhs = is_permutation_fn(field, |x| {
        field.mul(field.pow(x, r), ev.eval(field.pow(x, d)))
    })
    .is_permutation;
    let rhs = gcd(r, d) == 1 && {
        let sub = field.mu_subgroup(order / d)?;
        let values: Vec<_> = sub
            .iter()
            .map(|&x| field.mul(field.pow(x, r), field.pow(ev.eval(x), d)))
            .collect();
        // the image must be inside the subgroup and have full size
        let mut marks = vec![false; field.size() as usize];
        let mut ok = true;
        for v in &values {
            let inside = field.log(*v).is_some_and(|l| (l as u64).is_multiple_of(d));
            if !inside || std::mem::replace(&mut marks[v.index() as usize], true) {
                ok = false;
                break;
            }
        }
        ok
    };
    Ok(AgwOutcome { lhs, rhs })
}
