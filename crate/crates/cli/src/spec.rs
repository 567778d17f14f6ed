//! Template spec files and pairing literals.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use triplication::template::Base;
use triplication::Pairing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    OneStarter,
    ThreeStarter,
    Epicycloidal,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::OneStarter => "one-starter",
            Mode::ThreeStarter => "three-starter",
            Mode::Epicycloidal => "epicycloidal",
        }
    }
}

/// A pairing given either as `"x,y;x,y"` or as `[[x,y],...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairsField {
    Literal(String),
    List(Vec<[u32; 2]>),
}

impl PairsField {
    fn to_pairing(&self, m: u32) -> Result<Pairing> {
        match self {
            PairsField::Literal(s) => parse_pairing(m, s),
            PairsField::List(v) => Ok(Pairing::new(m, v.iter().map(|&[x, y]| (x, y)).collect())?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFile {
    pub mode: Mode,
    pub m: u32,
    #[serde(rename = "T0")]
    pub t0: PairsField,
    #[serde(rename = "T1", default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<PairsField>,
    #[serde(rename = "T2", default, skip_serializing_if = "Option::is_none")]
    pub t2: Option<PairsField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<u32>,
}

impl SpecFile {
    pub fn load(path: &std::path::Path) -> Result<SpecFile> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing spec file {}", path.display()))
    }

    pub fn base(&self) -> Result<Base> {
        let t0 = self.t0.to_pairing(self.m)?;
        let base = match self.mode {
            Mode::OneStarter => Base::one_starter(&t0)?,
            Mode::Epicycloidal => {
                let Some(mu) = self.mu else {
                    bail!(triplication::Error::InvalidInput("epicycloidal mode needs mu".into()));
                };
                Base::epicycloidal(&t0, mu)?
            }
            Mode::ThreeStarter => {
                let (Some(t1), Some(t2)) = (&self.t1, &self.t2) else {
                    bail!(triplication::Error::InvalidInput("three-starter mode needs T1 and T2".into()));
                };
                Base::new(&t0, &t1.to_pairing(self.m)?, &t2.to_pairing(self.m)?)?
            }
        };
        Ok(base)
    }
}

/// Parses `"2,3;4,6;1,5"` into a pairing over `Z_m`. Whitespace and a
/// trailing separator are tolerated; parentheses are stripped.
pub fn parse_pairing(m: u32, text: &str) -> Result<Pairing> {
    let mut pairs = Vec::new();
    for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let chunk = chunk.trim_start_matches('(').trim_end_matches(')');
        let nums: Vec<&str> = chunk.split(',').map(str::trim).collect();
        let [x, y] = nums.as_slice() else {
            bail!(triplication::Error::InvalidInput(format!("bad pair literal {chunk:?}")));
        };
        let parse = |s: &str| {
            s.parse::<u32>()
                .map_err(|_| triplication::Error::InvalidInput(format!("bad number {s:?} in {chunk:?}")))
        };
        pairs.push((parse(x)?, parse(y)?));
    }
    Ok(Pairing::new(m, pairs)?)
}
