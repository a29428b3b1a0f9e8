//! Text form of a [`FamilySpec`]: the family name first, then the field,
//! then one `key = value` line per parameter. Blank lines and lines starting
//! with `#` are ignored.
//!
//! ```text
//! family = zieve11
//! field = 3^2/1:1,0,1
//! beta = 1,0
//! gamma = 1,1
//! k = 0
//! n = 3
//! ```

use std::fmt;
use std::str::FromStr;

use super::{Family, FamilySpec, Params};
use crate::error::{Error, Result};
use crate::field::Field;

fn split_kv(line: &str) -> Result<(&str, &str)> {
    line.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Error::Parse(format!("expected `key = value`, got `{line}`")))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<FamilySpec> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("empty family spec".into()))?;
        let family: Family = match first.split_once('=') {
            Some((key, value)) if key.trim() == "family" => value.parse()?,
            Some(_) => return Err(Error::Parse("the first line must name the family".into())),
            None => first.parse()?,
        };
        let (key, value) = split_kv(
            lines
                .next()
                .ok_or_else(|| Error::Parse("missing field line".into()))?,
        )?;
        if key != "field" {
            return Err(Error::Parse("the second line must be `field = ...`".into()));
        }
        let field: Field = value.parse()?;
        let mut params = Params::new();
        for line in lines {
            let (key, value) = split_kv(line)?;
            if params.contains(key) {
                return Err(Error::Parse(format!("parameter `{key}` given twice")));
            }
            params.set_text(&field, key, value)?;
        }
        FamilySpec::new(family, field, params)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "family = {}", self.family.name())?;
        writeln!(out, "field = {}", self.field)?;
        for key in self.params.keys() {
            let value = self
                .params
                .format_value(&self.field, key)
                .unwrap_or_default();
            writeln!(out, "{key} = {value}")?;
        }
        Ok(())
    }
}
