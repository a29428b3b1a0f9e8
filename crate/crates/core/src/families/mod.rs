//! Constructors for the permutation-polynomial families.
//!
//! Every builder returns the expanded polynomial over the top field together
//! with `predicted`, the verdict of the family's iff conditions. The
//! exhaustive check is run separately so the two can be compared.

mod explicit;
mod extension;
mod good;
mod hfamily;
mod params;
mod report;
mod search;
mod spec_text;
mod zieve;

pub use explicit::{ex1_cubic, grado2, grado3, grado3_polys, ExplicitPair};
pub use extension::{ext_general, ext_self, lab_k3, lab_polynomial};
pub use good::{
    any_deg_even, ex2_binomial, first_valid_sk, good_pair, is_good_pair, is_good_self, self_assoc,
    twisted,
};
pub use hfamily::{h_bullet, h_bullet_poly, search_h};
pub use params::{ParamKind, ParamValue, Params};
pub use report::{build, ConstructionReport};
pub use search::{degree_two_family, enumerate_good_pairs, GoodPair};
pub use zieve::{zieve11, zieve12};

use std::fmt;
use std::str::FromStr;

use crate::association::AssociationCertificate;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::numtheory::gcd_signed;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Zieve11,
    Zieve12,
    GoodPair,
    SelfAssoc,
    Twisted,
    Grado2,
    Grado3,
    AnyDegEven,
    Ex2Binomial,
    ExtGeneral,
    ExtSelf,
    LabK3,
    HBullet,
    SearchH,
    Ex1Cubic,
}

impl Family {
    pub const ALL: [Family; 15] = [
        Family::Zieve11,
        Family::Zieve12,
        Family::GoodPair,
        Family::SelfAssoc,
        Family::Twisted,
        Family::Grado2,
        Family::Grado3,
        Family::AnyDegEven,
        Family::Ex2Binomial,
        Family::ExtGeneral,
        Family::ExtSelf,
        Family::LabK3,
        Family::HBullet,
        Family::SearchH,
        Family::Ex1Cubic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Zieve11 => "zieve11",
            Family::Zieve12 => "zieve12",
            Family::GoodPair => "good-pair",
            Family::SelfAssoc => "self-assoc",
            Family::Twisted => "twisted",
            Family::Grado2 => "grado2",
            Family::Grado3 => "grado3",
            Family::AnyDegEven => "anydeg",
            Family::Ex2Binomial => "ex2",
            Family::ExtGeneral => "ext-general",
            Family::ExtSelf => "ext-self",
            Family::LabK3 => "lab-k3",
            Family::HBullet => "h-bullet",
            Family::SearchH => "search-h",
            Family::Ex1Cubic => "ex1",
        }
    }

    /// Parameters the family cannot do without.
    pub fn required(self) -> &'static [&'static str] {
        match self {
            Family::Zieve11 => &["beta", "gamma", "n", "k"],
            Family::Zieve12 => &["beta", "delta", "n", "k"],
            Family::GoodPair => &["L", "M", "beta", "k"],
            Family::Twisted => &["L", "M", "beta", "gamma", "n", "k"],
            Family::SelfAssoc => &["L", "beta", "t", "s", "k"],
            Family::AnyDegEven => &["L", "s", "k"],
            Family::Ex2Binomial => &["a", "i", "s", "k"],
            Family::Grado2 => &["xi", "A1", "A2", "C1", "C2", "k"],
            Family::Grado3 => &["A1", "B1", "B2", "k"],
            Family::Ex1Cubic => &["k"],
            Family::HBullet => &["H", "L", "M", "beta", "d", "k"],
            Family::SearchH => &["f", "g", "gamma", "L", "M", "beta", "d", "k"],
            Family::ExtGeneral => &["L", "M", "beta", "k"],
            Family::ExtSelf => &["L", "beta", "t", "s", "k"],
            Family::LabK3 => &["A", "B", "j", "lab_k", "s", "k"],
        }
    }

    /// Parameters with a default. For grado2/grado3, `n` and `gamma` together
    /// switch from the plain good-pair polynomial to the twisted one. For ex1,
    /// exactly one of `s` (self-associated construction on L) and `H` (the
    /// H • L/M construction with d = 3) is given.
    pub fn optional(self) -> &'static [&'static str] {
        match self {
            Family::Grado2 | Family::Grado3 => &["i_elt", "n", "gamma"],
            Family::Ex1Cubic => &["alpha", "s", "H"],
            _ => &[],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let s = s.trim();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::Parse(format!(
                    "unknown family `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// A family together with its field and parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub field: Field,
    pub params: Params,
}

impl FamilySpec {
    pub fn new(family: Family, field: Field, params: Params) -> Result<Self> {
        let spec = FamilySpec {
            family,
            field,
            params,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Every required parameter present and nothing extraneous.
    pub fn validate(&self) -> Result<()> {
        let fam = self.family;
        for key in self.params.keys() {
            if !fam.required().contains(&key) && !fam.optional().contains(&key) {
                return Err(Error::ExtraneousParam(key.to_string()));
            }
        }
        for key in fam.required() {
            if !self.params.contains(key) {
                return Err(Error::MissingParam(key.to_string()));
            }
        }
        self.params.check_field(&self.field)
    }
}

/// A named iff condition of a construction and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

pub(crate) fn cond(name: impl Into<String>, holds: bool) -> Condition {
    Condition {
        name: name.into(),
        holds,
    }
}

/// Output of a typed builder.
#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub poly: Polynomial,
    /// All conditions hold.
    pub predicted: bool,
    pub conditions: Vec<Condition>,
    pub certificate: Option<AssociationCertificate>,
}

impl Construction {
    pub(crate) fn new(poly: Polynomial, conditions: Vec<Condition>) -> Self {
        let predicted = conditions.iter().all(|c| c.holds);
        Construction {
            poly,
            predicted,
            conditions,
            certificate: None,
        }
    }

    pub(crate) fn with_certificate(mut self, cert: AssociationCertificate) -> Self {
        self.certificate = Some(cert);
        self
    }
}

pub(crate) fn require_quadratic(f: &Field) -> Result<()> {
    if f.ext_ratio() != 2 {
        return Err(Error::BadTower {
            degree: f.degree(),
            base_power: f.base_power(),
        });
    }
    Ok(())
}

pub(crate) fn require_extension(f: &Field) -> Result<()> {
    if f.ext_ratio() < 2 {
        return Err(Error::BadTower {
            degree: f.degree(),
            base_power: f.base_power(),
        });
    }
    Ok(())
}

/// x^e h(x^{q-1}).
pub(crate) fn lift(h: &Polynomial, e: u64) -> Polynomial {
    let q = h.field().q() as usize;
    h.substitute_power(q - 1).shift(e as usize)
}

pub(crate) fn coprime_signed(a: i64, m: u64) -> bool {
    gcd_signed(a, m) == 1
}

/// Label for the norm order D: "q+1" for quadratic towers.
pub(crate) fn d_label(f: &Field) -> &'static str {
    if f.ext_ratio() == 2 {
        "q+1"
    } else {
        "D"
    }
}
