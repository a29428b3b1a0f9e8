use serde_json::{json, Value};

use super::{
    any_deg_even, ex1_cubic, ex2_binomial, ext_general, ext_self, good_pair, grado2, grado3,
    h_bullet, lab_k3, search_h, self_assoc, twisted, zieve11, zieve12, Condition, Construction,
    ExplicitPair, Family, FamilySpec,
};
use crate::association::{AssociationCertificate, AssociationKind};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::Polynomial;
use crate::verify::{is_permutation_of_field_with_jobs, PermutationReport};

/// A construction plus, optionally, the outcome of the exhaustive check.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionReport {
    pub spec: FamilySpec,
    pub poly: Polynomial,
    pub predicted: bool,
    pub verified: Option<bool>,
    pub collision_witness: Option<(FieldElement, FieldElement)>,
    pub conditions: Vec<Condition>,
    pub certificate: Option<AssociationCertificate>,
}

impl ConstructionReport {
    fn new(spec: &FamilySpec, c: Construction) -> Self {
        ConstructionReport {
            spec: spec.clone(),
            poly: c.poly,
            predicted: c.predicted,
            verified: None,
            collision_witness: None,
            conditions: c.conditions,
            certificate: c.certificate,
        }
    }

    /// Runs the exhaustive permutation check over the top field.
    pub fn verify(&mut self, jobs: usize) -> Result<PermutationReport> {
        let rep = is_permutation_of_field_with_jobs(&self.poly, &self.spec.field, jobs)?;
        self.verified = Some(rep.is_permutation);
        self.collision_witness = rep.collision_witness;
        Ok(rep)
    }

    /// Predicted and verified disagree.
    pub fn mismatch(&self) -> bool {
        self.verified.is_some_and(|v| v != self.predicted)
    }

    pub fn to_json(&self) -> Value {
        let f = &self.spec.field;
        let params: serde_json::Map<String, Value> = self
            .spec
            .params
            .keys()
            .map(|k| {
                (
                    k.to_string(),
                    Value::String(self.spec.params.format_value(f, k).unwrap_or_default()),
                )
            })
            .collect();
        let certificate = self.certificate.map(|c| {
            json!({
                "kind": match c.kind {
                    AssociationKind::Pair => "pair",
                    AssociationKind::SelfAssociated => "self",
                },
                "beta": f.format_element(c.beta),
                "t": c.t,
            })
        });
        json!({
            "family": self.spec.family.name(),
            "field": f.to_string(),
            "params": params,
            "polynomial": self.poly.to_sparse_string(),
            "degree": self.poly.degree_i64(),
            "predicted": self.predicted,
            "verified": self.verified,
            "collision_witness": self
                .collision_witness
                .map(|(a, b)| vec![f.format_element(a), f.format_element(b)]),
            "conditions": self.conditions,
            "certificate": certificate,
        })
    }
}

fn from_pair(spec: &FamilySpec, pair: ExplicitPair) -> Result<Construction> {
    let p = &spec.params;
    let k = p.int("k")?;
    let beta = pair.certificate.beta;
    match (p.opt_int("n"), p.opt_elt("gamma")) {
        (Some(n), Some(gamma)) => twisted(&pair.l, &pair.m, beta, gamma, n, k),
        (None, None) => good_pair(&pair.l, &pair.m, beta, k),
        (Some(_), None) => Err(Error::MissingParam("gamma".into())),
        (None, Some(_)) => Err(Error::MissingParam("n".into())),
    }
}

/// Validates `spec` and runs the family's builder.
pub fn build(spec: &FamilySpec) -> Result<ConstructionReport> {
    spec.validate()?;
    let f = &spec.field;
    let p = &spec.params;
    let c = match spec.family {
        Family::Zieve11 => zieve11(f, p.elt("beta")?, p.elt("gamma")?, p.int("n")?, p.int("k")?)?,
        Family::Zieve12 => zieve12(f, p.elt("beta")?, p.elt("delta")?, p.int("n")?, p.int("k")?)?,
        Family::GoodPair => good_pair(p.poly("L")?, p.poly("M")?, p.elt("beta")?, p.int("k")?)?,
        Family::Twisted => twisted(
            p.poly("L")?,
            p.poly("M")?,
            p.elt("beta")?,
            p.elt("gamma")?,
            p.int("n")?,
            p.int("k")?,
        )?,
        Family::SelfAssoc => self_assoc(
            p.poly("L")?,
            p.elt("beta")?,
            p.int("t")?,
            p.int("s")?,
            p.int("k")?,
        )?,
        Family::AnyDegEven => any_deg_even(p.poly("L")?, p.int("s")?, p.int("k")?)?,
        Family::Ex2Binomial => ex2_binomial(f, p.elt("a")?, p.int("i")?, p.int("s")?, p.int("k")?)?,
        Family::Grado2 => {
            let pair = grado2(
                f,
                p.elt("xi")?,
                [p.elt("A1")?, p.elt("A2")?],
                [p.elt("C1")?, p.elt("C2")?],
                p.opt_elt("i_elt"),
            )?;
            from_pair(spec, pair)?
        }
        Family::Grado3 => {
            let pair = grado3(
                f,
                p.elt("A1")?,
                p.elt("B1")?,
                p.elt("B2")?,
                p.opt_elt("i_elt"),
            )?;
            from_pair(spec, pair)?
        }
        Family::Ex1Cubic => {
            let pair = ex1_cubic(f, p.opt_elt("alpha"))?;
            let cert = pair.certificate;
            match (p.opt_int("s"), p.poly("H").ok()) {
                (Some(s), None) => self_assoc(&pair.l, cert.beta, cert.t, s, p.int("k")?)?,
                (None, Some(h)) => h_bullet(h, &pair.l, &pair.m, cert.beta, cert.t, p.int("k")?)?,
                (None, None) => return Err(Error::MissingParam("s".into())),
                (Some(_), Some(_)) => return Err(Error::ExtraneousParam("H".into())),
            }
        }
        Family::HBullet => h_bullet(
            p.poly("H")?,
            p.poly("L")?,
            p.poly("M")?,
            p.elt("beta")?,
            p.int("d")?,
            p.int("k")?,
        )?,
        Family::SearchH => search_h(
            p.poly("f")?,
            p.poly("g")?,
            p.elt("gamma")?,
            p.poly("L")?,
            p.poly("M")?,
            p.elt("beta")?,
            p.int("d")?,
            p.int("k")?,
        )?,
        Family::ExtGeneral => ext_general(p.poly("L")?, p.poly("M")?, p.elt("beta")?, p.int("k")?)?,
        Family::ExtSelf => ext_self(
            p.poly("L")?,
            p.elt("beta")?,
            p.int("t")?,
            p.int("s")?,
            p.int("k")?,
        )?,
        Family::LabK3 => lab_k3(
            f,
            p.elt("A")?,
            p.elt("B")?,
            p.int("j")?,
            p.int("lab_k")?,
            p.int("s")?,
            p.int("k")?,
        )?,
    };
    Ok(ConstructionReport::new(spec, c))
}
