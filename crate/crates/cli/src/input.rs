//! Lookup tables read from JSON files.
//!
//! A subject file looks like `{"space": "Z5", "table": [0, 1, 4, 4, 1]}` with one
//! entry per domain element in enumeration order. Entries are numbers or strings
//! in point syntax. An optional `"cod"` sets the codomain (default: the space),
//! and `"nu"` gives a structure map `T(space) -> space` for `algebra-check`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use diffkit::{element, morphism, Element, Morphism, Space};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Deserialize)]
struct TableFile {
    space: String,
    #[serde(default)]
    cod: Option<String>,
    #[serde(default)]
    table: Option<Vec<Value>>,
    #[serde(default)]
    nu: Option<Vec<Value>>,
}

/// The maps described by one input file.
#[derive(Debug)]
pub struct TableInput {
    pub space: Space,
    pub subject: Option<Morphism>,
    pub nu: Option<Morphism>,
}

fn entry(space: &Space, value: &Value) -> Result<Element> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => bail!("table entries must be numbers or strings, found {other}"),
    };
    Ok(element::parse(space, &text)?)
}

fn build(dom: &Space, cod: &Space, values: &[Value], label: &str) -> Result<Morphism> {
    let size = dom.size().with_context(|| format!("{dom} is not finite"))?;
    if values.len() as u128 != size {
        bail!("`{label}` has {} entries but {dom} has {size} elements", values.len());
    }
    let values = values.iter().map(|v| entry(cod, v)).collect::<Result<Vec<_>>>()?;
    Ok(morphism::table(dom, cod, values)?.named(label))
}

pub fn load(path: &Path) -> Result<TableInput> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

pub fn parse(text: &str) -> Result<TableInput> {
    let file: TableFile = serde_json::from_str(text)?;
    let space: Space = file.space.parse()?;
    let cod: Space = match &file.cod {
        Some(c) => c.parse()?,
        None => space.clone(),
    };
    let subject = file.table.as_deref().map(|t| build(&space, &cod, t, "table")).transpose()?;
    let nu = file.nu.as_deref().map(|t| build(&space.square(), &space, t, "nu")).transpose()?;
    if subject.is_none() && nu.is_none() {
        bail!("expected a `table` or a `nu` field");
    }
    Ok(TableInput { space, subject, nu })
}
