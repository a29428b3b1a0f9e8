//! Bijection tests for rational maps on μ_D and brute-force curve point scans.
//!
//! All "curve has no points" conditions are decided by scanning the finite
//! point sets directly; nothing here factors polynomials.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{Polynomial, ProjValue, RationalMap};

/// Projective values of `r` on `points`, in order.
pub fn value_table(r: &RationalMap, points: &[FieldElement]) -> Result<Vec<ProjValue>> {
    points.iter().map(|&x| r.eval(x)).collect()
}

fn all_distinct(values: &[ProjValue]) -> bool {
    let mut seen = HashSet::with_capacity(values.len());
    values.iter().all(|v| seen.insert(*v))
}

/// Whether x -> L(x)/M(x) is a bijection of μ_D (μ_{q+1} for F_{q^2}).
/// A pole on μ_D makes this false since ∞ is not in μ_D.
pub fn permutes_mu(r: &RationalMap) -> Result<bool> {
    let f = r.field();
    let values = value_table(r, f.norm_subgroup())?;
    let inside = values.iter().all(|v| match v {
        ProjValue::Finite(y) => f.in_norm_subgroup(*y),
        ProjValue::Infinity => false,
    });
    Ok(inside && all_distinct(&values))
}

/// Whether x -> L(x)/M(x) maps μ_{q+1} bijectively onto F_q ∪ {∞}.
pub fn bijects_mu_to_line(r: &RationalMap) -> Result<bool> {
    let f = r.field();
    let values = value_table(r, f.norm_subgroup())?;
    let on_line = values.iter().all(|v| match v {
        ProjValue::Finite(y) => f.in_base_subfield(*y),
        ProjValue::Infinity => true,
    });
    Ok(on_line && values.len() as u64 == f.q() + 1 && all_distinct(&values))
}

/// Treats a common root on μ_D as "not a permutation" instead of an error.
pub(crate) fn permutes_mu_or_false(r: &RationalMap) -> bool {
    permutes_mu(r).unwrap_or(false)
}

pub(crate) fn bijects_mu_to_line_or_false(r: &RationalMap) -> bool {
    bijects_mu_to_line(r).unwrap_or(false)
}

fn require_quadratic(f: &Field) -> Result<()> {
    if f.ext_ratio() != 2 {
        return Err(Error::BadTower {
            degree: f.degree(),
            base_power: f.base_power(),
        });
    }
    Ok(())
}

fn linear(f: &Field, a: FieldElement, b: FieldElement) -> Polynomial {
    Polynomial::from_terms(f, &[(1, a), (0, b)]).expect("elements of f")
}

/// The maps as a set of value tables on μ_D, for comparing lists of maps as
/// functions.
pub fn function_set(maps: &[RationalMap]) -> Result<HashSet<Vec<ProjValue>>> {
    maps.iter()
        .map(|r| value_table(r, r.field().norm_subgroup()))
        .collect()
}

fn dedup_as_functions(
    f: &Field,
    maps: impl Iterator<Item = RationalMap>,
) -> Result<Vec<RationalMap>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in maps {
        if seen.insert(value_table(&r, f.norm_subgroup())?) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Every degree-one map permuting μ_{q+1}: β/x and (x - γ^q β)/(γ x - β) for
/// β ∈ μ_{q+1}, γ ∈ F_{q^2} \ μ_{q+1} (γ = 0 included), deduplicated as
/// functions on μ_{q+1}.
pub fn enumerate_degree_one_mu_bijections(f: &Field) -> Result<Vec<RationalMap>> {
    require_quadratic(f)?;
    let mu = f.norm_subgroup();
    let first = mu.iter().map(|&beta| {
        RationalMap::new(Polynomial::constant(f, beta), Polynomial::x(f)).expect("nonzero den")
    });
    let second = mu.iter().flat_map(move |&beta| {
        f.elements()
            .filter(|&g| !f.in_norm_subgroup(g))
            .map(move |gamma| {
                let num = linear(f, f.one(), f.neg(f.mul(f.frobenius(gamma), beta)));
                let den = linear(f, gamma, f.neg(beta));
                RationalMap::new(num, den).expect("den nonzero since beta != 0")
            })
    });
    dedup_as_functions(f, first.chain(second))
}

/// Every degree-one map (ρx + ρ^q)/(εx + ε^q) with ρ, ε nonzero and
/// ρ^{q-1} != ε^{q-1}, deduplicated as functions on μ_{q+1}.
pub fn enumerate_degree_one_line_bijections(f: &Field) -> Result<Vec<RationalMap>> {
    require_quadratic(f)?;
    let q = f.q();
    let nonzero: Vec<_> = f.elements().skip(1).collect();
    let maps = nonzero.iter().flat_map(|&rho| {
        nonzero
            .iter()
            .filter(move |&&eps| f.pow(rho, q - 1) != f.pow(eps, q - 1))
            .map(move |&eps| {
                RationalMap::new(
                    linear(f, rho, f.frobenius(rho)),
                    linear(f, eps, f.frobenius(eps)),
                )
                .expect("nonzero den")
            })
    });
    dedup_as_functions(f, maps)
}

/// Which codomain a brute-force degree-one scan targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeOneTarget {
    /// μ_{q+1} -> μ_{q+1}
    Mu,
    /// μ_{q+1} -> F_q ∪ {∞}
    Line,
}

/// All Möbius maps (ax + b)/(cx + d), ad - bc != 0, taken up to scalars, that
/// satisfy the target bijection, deduplicated as functions on μ_{q+1}.
/// Independent of the closed forms above; used as their oracle.
pub fn brute_force_degree_one(f: &Field, target: DegreeOneTarget) -> Result<Vec<RationalMap>> {
    require_quadratic(f)?;
    let elems: Vec<_> = f.elements().collect();
    let mut hits = Vec::new();
    let mut consider = |a, b, c, d| -> Result<()> {
        let r = RationalMap::new(linear(f, a, b), linear(f, c, d))?;
        let ok = match target {
            DegreeOneTarget::Mu => permutes_mu(&r)?,
            DegreeOneTarget::Line => bijects_mu_to_line(&r)?,
        };
        if ok {
            hits.push(r);
        }
        Ok(())
    };
    // c = 1
    for &a in &elems {
        for &b in &elems {
            for &d in &elems {
                if f.mul(a, d) != b {
                    consider(a, b, f.one(), d)?;
                }
            }
        }
    }
    // c = 0, d = 1
    for &a in &elems[1..] {
        for &b in &elems {
            consider(a, b, f.zero(), f.one())?;
        }
    }
    dedup_as_functions(f, hits.into_iter())
}

/// Pairs (a, b) ∈ μ_D², a != b, with L(a)M(b) = L(b)M(a), sorted canonically.
pub fn offdiagonal_mu_points(r: &RationalMap) -> Vec<(FieldElement, FieldElement)> {
    let f = r.field();
    let mu = f.norm_subgroup();
    let lv: Vec<_> = mu.iter().map(|&x| r.num().eval_unchecked(x)).collect();
    let mv: Vec<_> = mu.iter().map(|&x| r.den().eval_unchecked(x)).collect();
    let mut out = Vec::new();
    for i in 0..mu.len() {
        for j in 0..mu.len() {
            if i != j && f.mul(lv[i], mv[j]) == f.mul(lv[j], mv[i]) {
                out.push((mu[i], mu[j]));
            }
        }
    }
    out.sort();
    out
}

/// Points (x, y) ∈ F_q², x != y, of the curve prod_{ξ ∈ F_q} (H(x) - ξ H(y)) = 0,
/// i.e. H(x) = ξ H(y) for some ξ ∈ F_q (ξ = 0 included).
pub fn h_offdiagonal_base_points(h: &Polynomial) -> Vec<(FieldElement, FieldElement)> {
    let f = h.field();
    let base = f.base_elements();
    let values: Vec<_> = base.iter().map(|&x| h.eval_unchecked(x)).collect();
    let mut out = Vec::new();
    for (i, &hx) in values.iter().enumerate() {
        for (j, &hy) in values.iter().enumerate() {
            if i == j {
                continue;
            }
            let on_curve = hx.is_zero()
                || (!hy.is_zero() && f.in_base_subfield(f.div(hx, hy).expect("hy is nonzero")));
            if on_curve {
                out.push((base[i], base[j]));
            }
        }
    }
    out
}

/// Whether H^σ - H has no roots in F_q.
pub fn h_sigma_gap_rootfree(h: &Polynomial) -> bool {
    let gap = &h.sigma_conjugate() - h;
    let f = h.field();
    f.base_elements()
        .into_iter()
        .all(|x| !gap.eval_unchecked(x).is_zero())
}

/// Whether P has no root on μ_D.
pub fn rootfree_on_mu(p: &Polynomial) -> bool {
    p.field()
        .norm_subgroup()
        .iter()
        .all(|&x| !p.eval_unchecked(x).is_zero())
}
