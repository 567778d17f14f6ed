//! Explicit table constructions from a base triple `(T0, T1, T2)` and a key.
//!
//! Row `i` of the template holds `T0[i]`, `t + T1[i]` and `t + T2[i]`; the
//! special row holds `(t, t)`. Such a template always meets the multiplicity,
//! row and sum clauses, and becomes a table exactly when it has no repeated
//! pair. Keys for which that happens are called admissible.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, TableClause};
use crate::modular::{add_mod, gcd, mod_inverse, require_odd_order};
use crate::pairing::{is_special_pair, Pairing};
use crate::table::TriplicationTable;

pub use crate::pairing::patterned_starter;

/// A validated base triple, re-oriented so that all three pairings share
/// the directed-difference sign of `T0` at every index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Base {
    m: u32,
    t0: Pairing,
    t1: Pairing,
    t2: Pairing,
}

impl Base {
    /// Checks that `t0` is a starter and `(t1, t2)` a special pair of
    /// pseudostarters. Columns 1 and 2 are flipped pairwise to match the
    /// orientation of `t0`.
    pub fn new(t0: &Pairing, t1: &Pairing, t2: &Pairing) -> Result<Base> {
        Base::build(t0, t1, t2, true)
    }

    /// Like [`Base::new`] but refuses sign disagreements instead of
    /// re-orienting.
    pub fn strict(t0: &Pairing, t1: &Pairing, t2: &Pairing) -> Result<Base> {
        Base::build(t0, t1, t2, false)
    }

    fn build(t0: &Pairing, t1: &Pairing, t2: &Pairing, normalize: bool) -> Result<Base> {
        let m = t0.modulus();
        require_odd_order(m)?;
        if t1.modulus() != m || t2.modulus() != m {
            return Err(Error::InvalidInput(format!(
                "base pairings have moduli {}, {}, {}",
                m,
                t1.modulus(),
                t2.modulus()
            )));
        }
        let c0 = t0.classify();
        if !c0.is_starter() {
            return Err(Error::InvalidInput(format!(
                "T0 is not a starter: {}",
                c0.witness.unwrap_or_else(|| c0.kind.to_string())
            )));
        }
        for (name, t) in [("T1", t1), ("T2", t2)] {
            let c = t.classify();
            if !c.is_pseudostarter() {
                return Err(Error::InvalidInput(format!(
                    "{name} is not a pseudostarter: {}",
                    c.witness.unwrap_or_else(|| c.kind.to_string())
                )));
            }
        }
        if !is_special_pair(t1, t2) {
            return Err(Error::SpecialPairViolation(format!(
                "{t1} and {t2} do not cover every nonzero element exactly twice"
            )));
        }
        let t0 = t0.index_ordered()?;
        let signs = t0.signs()?;
        let mut cols = Vec::with_capacity(2);
        for (name, t) in [("T1", t1), ("T2", t2)] {
            let ordered = t.index_ordered()?;
            if !normalize {
                let own = ordered.signs()?;
                if let Some(i) = own.iter().zip(&signs).position(|(a, b)| a != b) {
                    return Err(Error::InconsistentOrdering(format!(
                        "{name} has sign {} at index {} where T0 has {}",
                        own[i],
                        i + 1,
                        signs[i]
                    )));
                }
            }
            cols.push(ordered.with_signs(&signs)?);
        }
        let t2 = cols.pop().unwrap();
        let t1 = cols.pop().unwrap();
        Ok(Base { m, t0, t1, t2 })
    }

    /// `(T, T, T')`.
    pub fn one_starter(t: &Pairing) -> Result<Base> {
        Base::new(t, t, &t.conjugate())
    }

    /// `(T0, E(μ), E'(μ))`.
    pub fn epicycloidal(t0: &Pairing, mu: u32) -> Result<Base> {
        let e = epicycloidal(EpicycloidalSpec { m: t0.modulus(), mu })?;
        Base::new(t0, &e, &e.conjugate())
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn t0(&self) -> &Pairing {
        &self.t0
    }

    pub fn t1(&self) -> &Pairing {
        &self.t1
    }

    pub fn t2(&self) -> &Pairing {
        &self.t2
    }

    /// Base with columns 1 and 2 exchanged.
    pub fn swapped(&self) -> Base {
        Base {
            m: self.m,
            t0: self.t0.clone(),
            t1: self.t2.clone(),
            t2: self.t1.clone(),
        }
    }

    /// The `3q + 1` template pairs for key `t`, in table index order.
    pub fn template_pairs(&self, t: u32) -> Vec<(u32, u32)> {
        let m = self.m;
        let shift = |(x, y): (u32, u32)| (add_mod(x, t, m), add_mod(y, t, m));
        let mut pairs = Vec::with_capacity(3 * self.t0.len() + 1);
        pairs.push((t, t));
        for i in 0..self.t0.len() {
            pairs.push(self.t0.pairs()[i]);
            pairs.push(shift(self.t1.pairs()[i]));
            pairs.push(shift(self.t2.pairs()[i]));
        }
        pairs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSpec {
    pub base: Base,
    pub key: u32,
}

/// A template that may still contain repeated pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub m: u32,
    pub key: u32,
    pub pairs: Vec<(u32, u32)>,
}

impl Template {
    pub fn rows(&self) -> Vec<Vec<(u32, u32)>> {
        let mut rows = vec![vec![self.pairs[0]]];
        rows.extend(self.pairs[1..].chunks(3).map(<[_]>::to_vec));
        rows
    }

    pub fn has_repeated_pair(&self) -> bool {
        has_duplicate(&self.pairs)
    }

    pub fn into_table(self) -> Result<TriplicationTable> {
        if self.has_repeated_pair() {
            return Err(Error::KeyNotAdmissible { key: self.key });
        }
        TriplicationTable::validate(self.m, self.pairs)
    }
}

pub fn build_template(spec: &TemplateSpec) -> Result<Template> {
    let m = spec.base.m;
    let t = spec.key;
    if t == 0 || t >= m {
        return Err(Error::InvalidInput(format!(
            "key must lie in 1..{m}, got {t}"
        )));
    }
    let pairs = spec.base.template_pairs(t);
    // Clauses (i)-(iii) hold by construction; only (iv) may fail.
    match TriplicationTable::validate(m, pairs.clone()) {
        Ok(_)
        | Err(Error::NotATable {
            clause: TableClause::DistinctPairs,
            ..
        }) => {}
        Err(e) => {
            return Err(Error::InternalVerificationFailure(format!(
                "template for key {t} breaks a structural clause: {e}"
            )))
        }
    }
    Ok(Template { m, key: t, pairs })
}

fn has_duplicate(pairs: &[(u32, u32)]) -> bool {
    let mut seen = HashSet::with_capacity(pairs.len());
    !pairs.iter().all(|p| seen.insert(*p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeySet {
    pub m: u32,
    pub admissible: Vec<u32>,
}

impl KeySet {
    pub fn contains(&self, t: u32) -> bool {
        self.admissible.binary_search(&t).is_ok()
    }

    pub fn len(&self) -> usize {
        self.admissible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.admissible.is_empty()
    }
}

/// Tests every key in `Z_m^*` for repeated template pairs.
pub fn admissible_keys(base: &Base) -> KeySet {
    let admissible = (1..base.m)
        .filter(|&t| !has_duplicate(&base.template_pairs(t)))
        .collect();
    KeySet {
        m: base.m,
        admissible,
    }
}

fn table_for(base: &Base, t: u32) -> Result<TriplicationTable> {
    build_template(&TemplateSpec {
        base: base.clone(),
        key: t,
    })?
    .into_table()
}

/// `Σ_m(T, t)` built on `(T, T, T')`.
pub fn one_starter_table(t0: &Pairing, t: u32) -> Result<TriplicationTable> {
    table_for(&Base::one_starter(t0)?, t)
}

/// Table from three starters of the same order.
pub fn three_starter_table(t0: &Pairing, t1: &Pairing, t2: &Pairing, t: u32) -> Result<TriplicationTable> {
    for (name, s) in [("T1", t1), ("T2", t2)] {
        let c = s.classify();
        if !c.is_starter() {
            return Err(Error::InvalidInput(format!(
                "{name} is not a starter: {}",
                c.witness.unwrap_or_else(|| c.kind.to_string())
            )));
        }
    }
    table_for(&Base::new(t0, t1, t2)?, t)
}

/// Table built on `(T0, E(μ), E'(μ))`.
pub fn epicycloidal_table(t0: &Pairing, mu: u32, t: u32) -> Result<TriplicationTable> {
    table_for(&Base::epicycloidal(t0, mu)?, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpicycloidalSpec {
    pub m: u32,
    pub mu: u32,
}

impl EpicycloidalSpec {
    /// `gcd(μ(μ-1), m) = 1`: the pseudostarter and its conjugate are special.
    pub fn gives_special_pair(&self) -> bool {
        gcd(self.mu as u64 * (self.mu as u64 - 1), self.m as u64) == 1
    }

    /// Additionally `gcd(μ+1, m) = 1`: the pair is disjoint.
    pub fn gives_disjoint_pair(&self) -> bool {
        self.gives_special_pair() && gcd(self.mu as u64 + 1, self.m as u64) == 1
    }
}

/// `E(μ) = [(x_i, μ x_i)]` with `(μ - 1) x_i = i`.
pub fn epicycloidal(spec: EpicycloidalSpec) -> Result<Pairing> {
    let EpicycloidalSpec { m, mu } = spec;
    let q = require_odd_order(m)?;
    if mu < 2 || mu + 2 > m {
        return Err(Error::InvalidInput(format!(
            "multiplier must lie in 2..={}, got {mu}",
            m.saturating_sub(2)
        )));
    }
    let inv = mod_inverse(mu as i64 - 1, m as i64)
        .ok_or(Error::MultiplierNotInvertible { mu, m })? as u64;
    let pairs = (1..=q as u64)
        .map(|i| {
            let x = inv * i % m as u64;
            (x as u32, (x * mu as u64 % m as u64) as u32)
        })
        .collect();
    Pairing::new_ordered(m, pairs)
}
