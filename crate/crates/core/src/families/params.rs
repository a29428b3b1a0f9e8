use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Int,
    Element,
    /// Element of the base subfield F_q.
    BaseElement,
    Poly,
}

const KEYS: &[(&str, ParamKind)] = &[
    ("n", ParamKind::Int),
    ("k", ParamKind::Int),
    ("s", ParamKind::Int),
    ("t", ParamKind::Int),
    ("d", ParamKind::Int),
    ("j", ParamKind::Int),
    ("i", ParamKind::Int),
    ("lab_k", ParamKind::Int),
    ("beta", ParamKind::Element),
    ("gamma", ParamKind::Element),
    ("delta", ParamKind::Element),
    ("alpha", ParamKind::Element),
    ("xi", ParamKind::BaseElement),
    ("i_elt", ParamKind::Element),
    ("a", ParamKind::Element),
    ("A", ParamKind::Element),
    ("B", ParamKind::BaseElement),
    ("A1", ParamKind::BaseElement),
    ("A2", ParamKind::BaseElement),
    ("B1", ParamKind::BaseElement),
    ("B2", ParamKind::BaseElement),
    ("C1", ParamKind::BaseElement),
    ("C2", ParamKind::BaseElement),
    ("L", ParamKind::Poly),
    ("M", ParamKind::Poly),
    ("H", ParamKind::Poly),
    ("f", ParamKind::Poly),
    ("g", ParamKind::Poly),
];

#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Int(u64),
    Element(FieldElement),
    Poly(Polynomial),
}

/// Named family parameters, keyed by the symbols used in the theorems.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params(BTreeMap<&'static str, ParamValue>);

fn lookup(key: &str) -> Result<(&'static str, ParamKind)> {
    KEYS.iter()
        .find(|(k, _)| *k == key)
        .copied()
        .ok_or_else(|| Error::Parse(format!("unknown parameter `{key}`")))
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn kind_of(key: &str) -> Option<ParamKind> {
        lookup(key).ok().map(|(_, kind)| kind)
    }

    pub fn known_keys() -> impl Iterator<Item = &'static str> {
        KEYS.iter().map(|(k, _)| *k)
    }

    pub fn set(&mut self, key: &str, value: ParamValue) -> Result<()> {
        let (key, kind) = lookup(key)?;
        let ok = matches!(
            (kind, &value),
            (ParamKind::Int, ParamValue::Int(_))
                | (
                    ParamKind::Element | ParamKind::BaseElement,
                    ParamValue::Element(_)
                )
                | (ParamKind::Poly, ParamValue::Poly(_))
        );
        if !ok {
            return Err(Error::Parse(format!("wrong value kind for `{key}`")));
        }
        self.0.insert(key, value);
        Ok(())
    }

    pub fn with_int(mut self, key: &str, v: u64) -> Self {
        self.set(key, ParamValue::Int(v))
            .expect("integer parameter");
        self
    }

    pub fn with_elt(mut self, key: &str, v: FieldElement) -> Self {
        self.set(key, ParamValue::Element(v))
            .expect("element parameter");
        self
    }

    pub fn with_poly(mut self, key: &str, v: Polynomial) -> Self {
        self.set(key, ParamValue::Poly(v))
            .expect("polynomial parameter");
        self
    }

    /// Parses `text` according to the kind of `key`.
    pub fn set_text(&mut self, field: &Field, key: &str, text: &str) -> Result<()> {
        let (_, kind) = lookup(key)?;
        let text = text.trim();
        let value = match kind {
            ParamKind::Int => ParamValue::Int(text.parse().map_err(|_| {
                Error::Parse(format!("`{key}` needs a nonnegative integer, got `{text}`"))
            })?),
            ParamKind::Element | ParamKind::BaseElement => {
                ParamValue::Element(field.parse_element(text)?)
            }
            ParamKind::Poly => ParamValue::Poly(Polynomial::parse(field, text)?),
        };
        self.set(key, value)
    }

    pub fn format_value(&self, field: &Field, key: &str) -> Option<String> {
        self.0.get(key).map(|v| match v {
            ParamValue::Int(n) => n.to_string(),
            ParamValue::Element(e) => field.format_element(*e),
            ParamValue::Poly(p) => p.to_sparse_string(),
        })
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.keys().copied()
    }

    pub fn contains(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    pub fn int(&self, key: &str) -> Result<u64> {
        match self.0.get(key) {
            Some(ParamValue::Int(n)) => Ok(*n),
            _ => Err(Error::MissingParam(key.to_string())),
        }
    }

    pub fn elt(&self, key: &str) -> Result<FieldElement> {
        match self.0.get(key) {
            Some(ParamValue::Element(e)) => Ok(*e),
            _ => Err(Error::MissingParam(key.to_string())),
        }
    }

    pub fn poly(&self, key: &str) -> Result<&Polynomial> {
        match self.0.get(key) {
            Some(ParamValue::Poly(p)) => Ok(p),
            _ => Err(Error::MissingParam(key.to_string())),
        }
    }

    pub fn opt_int(&self, key: &str) -> Option<u64> {
        self.int(key).ok()
    }

    pub fn opt_elt(&self, key: &str) -> Option<FieldElement> {
        self.elt(key).ok()
    }

    /// Every value belongs to `field`; base-field slots hold F_q elements.
    pub(crate) fn check_field(&self, field: &Field) -> Result<()> {
        for (key, value) in &self.0 {
            match value {
                ParamValue::Int(_) => {}
                ParamValue::Element(e) => {
                    field.check(*e)?;
                    if lookup(key)?.1 == ParamKind::BaseElement && !field.in_base_subfield(*e) {
                        return Err(Error::ParamConstraintViolated(format!(
                            "{key}_not_in_base_field"
                        )));
                    }
                }
                ParamValue::Poly(p) => {
                    if p.field() != field {
                        return Err(Error::MixedFields);
                    }
                }
            }
        }
        Ok(())
    }
}
