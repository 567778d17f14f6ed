//! Pairings over `Z_m`: starters, strong starters and pseudostarters.
//!
//! A [`Pairing`] is an ordered list of ordered pairs with one common modulus.
//! It is the carrier for base starters, pseudostarters, triplication-table
//! columns and recovered starters alike. Values are immutable: every
//! transform returns a fresh pairing.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{add_mod, neg_mod, sub_mod, Residue};

/// Orders above this are refused by the brute-force enumerators unless the
/// caller overrides the guard.
pub const ENUMERATION_GUARD: u32 = 15;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pairing {
    modulus: u32,
    pairs: Vec<(u32, u32)>,
    /// Set when the pairing was checked to hold `y_i - x_i = ±i` at position `i`.
    #[serde(skip)]
    ordered: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StarterKind {
    NotAny,
    Pseudostarter,
    Starter,
    StrongStarter,
}

impl fmt::Display for StarterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StarterKind::NotAny => "NotAny",
            StarterKind::Pseudostarter => "Pseudostarter",
            StarterKind::Starter => "Starter",
            StarterKind::StrongStarter => "StrongStarter",
        };
        f.write_str(s)
    }
}

/// Strongest class a pairing belongs to, with the first property that kept it
/// out of the next class up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarterClass {
    pub kind: StarterKind,
    pub witness: Option<String>,
}

impl StarterClass {
    pub fn is_strong(&self) -> bool {
        self.kind == StarterKind::StrongStarter
    }

    pub fn is_starter(&self) -> bool {
        self.kind >= StarterKind::Starter
    }

    pub fn is_pseudostarter(&self) -> bool {
        self.kind >= StarterKind::Pseudostarter
    }
}

impl Pairing {
    pub fn new(modulus: u32, pairs: Vec<(u32, u32)>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= modulus || y >= modulus) {
            return Err(Error::InvalidInput(format!(
                "pair ({x},{y}) has a component outside Z_{modulus}"
            )));
        }
        Ok(Pairing {
            modulus,
            pairs,
            ordered: false,
        })
    }

    /// Builds a pairing from arbitrary integers, reducing each component.
    pub fn from_signed(modulus: u32, pairs: &[(i64, i64)]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let m = modulus as i64;
        Pairing::new(
            modulus,
            pairs
                .iter()
                .map(|&(x, y)| (x.rem_euclid(m) as u32, y.rem_euclid(m) as u32))
                .collect(),
        )
    }

    pub fn from_residues(pairs: &[(Residue, Residue)]) -> Result<Self> {
        let modulus = match pairs.first() {
            Some((a, _)) => a.modulus(),
            None => return Err(Error::InvalidInput("empty pairing".into())),
        };
        if pairs
            .iter()
            .any(|(a, b)| a.modulus() != modulus || b.modulus() != modulus)
        {
            return Err(Error::InvalidInput("mixed moduli in pairing".into()));
        }
        Pairing::new(
            modulus,
            pairs.iter().map(|(a, b)| (a.value(), b.value())).collect(),
        )
    }

    /// Like [`Pairing::new`], additionally requiring `y_i - x_i = ±i` at
    /// (1-based) position `i`.
    pub fn new_ordered(modulus: u32, pairs: Vec<(u32, u32)>) -> Result<Self> {
        let mut p = Pairing::new(modulus, pairs)?;
        if let Some(i) = p.first_index_violation() {
            let (x, y) = p.pairs[i - 1];
            return Err(Error::InvalidInput(format!(
                "pair {i} ({x},{y}) has directed difference {} which is not ±{i} mod {modulus}",
                sub_mod(y, x, modulus)
            )));
        }
        p.ordered = true;
        Ok(p)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    fn first_index_violation(&self) -> Option<usize> {
        let m = self.modulus;
        self.pairs.iter().enumerate().find_map(|(k, &(x, y))| {
            let i = (k as u32 + 1) % m;
            let d = sub_mod(y, x, m);
            let ok = i != 0 && (d == i || d == neg_mod(i, m));
            (!ok).then_some(k + 1)
        })
    }

    /// Directed difference `y - x mod m` of every pair.
    pub fn directed_differences(&self) -> Vec<u32> {
        self.pairs
            .iter()
            .map(|&(x, y)| sub_mod(y, x, self.modulus))
            .collect()
    }

    /// Multiset `{x_i + y_i mod m}`, in pairing order.
    pub fn sums(&self) -> Vec<u32> {
        self.pairs
            .iter()
            .map(|&(x, y)| add_mod(x, y, self.modulus))
            .collect()
    }

    /// `[(-y_i, -x_i)]`; preserves every directed difference.
    pub fn conjugate(&self) -> Pairing {
        let m = self.modulus;
        Pairing {
            modulus: m,
            pairs: self
                .pairs
                .iter()
                .map(|&(x, y)| (neg_mod(y, m), neg_mod(x, m)))
                .collect(),
            ordered: self.ordered,
        }
    }

    /// Adds `t` to every component.
    pub fn translate(&self, t: u32) -> Pairing {
        let m = self.modulus;
        Pairing {
            modulus: m,
            pairs: self
                .pairs
                .iter()
                .map(|&(x, y)| (add_mod(x, t, m), add_mod(y, t, m)))
                .collect(),
            ordered: self.ordered,
        }
    }

    /// Reduces every component modulo a divisor of the current modulus.
    pub fn reduce_mod(&self, m: u32) -> Result<Pairing> {
        if m == 0 || self.modulus % m != 0 {
            return Err(Error::InvalidInput(format!(
                "{m} does not divide {}",
                self.modulus
            )));
        }
        Pairing::new(m, self.pairs.iter().map(|&(x, y)| (x % m, y % m)).collect())
    }

    /// Row sign of every position of an index-ordered pairing: `+1` when
    /// `y_i - x_i = +i`, `-1` when it is `-i`.
    pub fn signs(&self) -> Result<Vec<i8>> {
        let m = self.modulus;
        self.pairs
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| {
                let i = k as u32 + 1;
                let d = sub_mod(y, x, m);
                if d == i % m {
                    Ok(1)
                } else if d == neg_mod(i, m) {
                    Ok(-1)
                } else {
                    Err(Error::InvalidInput(format!(
                        "pair {i} ({x},{y}) is not at its difference index"
                    )))
                }
            })
            .collect()
    }

    /// Reorders pairs so position `i` holds the pair whose differences are
    /// `±i`, keeping each pair's orientation. Requires difference coverage.
    pub fn index_ordered(&self) -> Result<Pairing> {
        let m = self.modulus;
        let q = (m as usize).saturating_sub(1) / 2;
        if m % 2 == 0 || self.pairs.len() != q {
            return Err(Error::InvalidInput(format!(
                "expected {q} pairs over odd modulus, got {} over Z_{m}",
                self.pairs.len()
            )));
        }
        let mut slots: Vec<Option<(u32, u32)>> = vec![None; q];
        for &(x, y) in &self.pairs {
            let d = sub_mod(y, x, m);
            let idx = d.min(m - d) as usize;
            if idx == 0 {
                return Err(Error::InvalidInput(format!(
                    "pair ({x},{y}) has zero difference"
                )));
            }
            if slots[idx - 1].replace((x, y)).is_some() {
                return Err(Error::InvalidInput(format!(
                    "difference ±{idx} occurs more than once"
                )));
            }
        }
        let mut p = Pairing::new(m, slots.into_iter().map(Option::unwrap).collect())?;
        p.ordered = true;
        Ok(p)
    }

    /// Orients pair `i` so that its directed difference is `signs[i] * i`.
    pub fn with_signs(&self, signs: &[i8]) -> Result<Pairing> {
        let p = self.index_ordered()?;
        if signs.len() != p.len() {
            return Err(Error::InvalidInput("sign vector length mismatch".into()));
        }
        let current = p.signs()?;
        let pairs = p
            .pairs
            .iter()
            .zip(current.iter().zip(signs))
            .map(|(&(x, y), (&have, &want))| if have == want { (x, y) } else { (y, x) })
            .collect();
        let mut out = Pairing::new(self.modulus, pairs)?;
        out.ordered = true;
        Ok(out)
    }

    /// Preferred ordered form: position `i` holds the pair with `y - x = +i`.
    pub fn canonical_ordered(&self) -> Result<Pairing> {
        let q = self.pairs.len();
        self.with_signs(&vec![1; q])
    }

    /// Unordered view: each pair as `(min, max)`, then sorted.
    pub fn canonical_unordered(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self
            .pairs
            .iter()
            .map(|&(x, y)| (x.min(y), x.max(y)))
            .collect();
        v.sort_unstable();
        v
    }

    /// True when the two pairings share no unordered pair.
    pub fn is_disjoint_from(&self, other: &Pairing) -> bool {
        let a: BTreeSet<_> = self.canonical_unordered().into_iter().collect();
        other
            .canonical_unordered()
            .iter()
            .all(|p| !a.contains(p))
    }

    pub fn classify(&self) -> StarterClass {
        classify(self)
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (x, y)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "] mod {}", self.modulus)
    }
}

fn not_any(witness: String) -> StarterClass {
    StarterClass {
        kind: StarterKind::NotAny,
        witness: Some(witness),
    }
}

/// Strongest of {pseudostarter, starter, strong starter} the pairing satisfies.
pub fn classify(p: &Pairing) -> StarterClass {
    let m = p.modulus;
    if m < 3 || m % 2 == 0 {
        return not_any(format!("modulus {m} is not an odd integer >= 3"));
    }
    let q = (m as usize - 1) / 2;
    if p.pairs.len() != q {
        return not_any(format!("{} pairs, expected {q}", p.pairs.len()));
    }

    // Difference coverage: the 2q values ±(y - x) hit every nonzero residue once.
    let mut diff_seen = vec![false; m as usize];
    for (k, &(x, y)) in p.pairs.iter().enumerate() {
        let d = sub_mod(y, x, m);
        for v in [d, neg_mod(d, m)] {
            if v == 0 || std::mem::replace(&mut diff_seen[v as usize], true) {
                return not_any(format!(
                    "pair {} ({x},{y}): difference ±{} is zero or repeated",
                    k + 1,
                    d.min(m - d)
                ));
            }
        }
    }

    let mut elem_seen = vec![false; m as usize];
    for (k, &(x, y)) in p.pairs.iter().enumerate() {
        for v in [x, y] {
            if v == 0 || std::mem::replace(&mut elem_seen[v as usize], true) {
                return StarterClass {
                    kind: StarterKind::Pseudostarter,
                    witness: Some(format!(
                        "pair {} ({x},{y}): element {v} is zero or repeated",
                        k + 1
                    )),
                };
            }
        }
    }

    let mut sum_seen = vec![false; m as usize];
    for (k, &(x, y)) in p.pairs.iter().enumerate() {
        let s = add_mod(x, y, m);
        if s == 0 || std::mem::replace(&mut sum_seen[s as usize], true) {
            return StarterClass {
                kind: StarterKind::Starter,
                witness: Some(format!(
                    "pair {} ({x},{y}): sum {s} is zero or repeated",
                    k + 1
                )),
            };
        }
    }

    StarterClass {
        kind: StarterKind::StrongStarter,
        witness: None,
    }
}

/// The patterned starter `{(x, m - x)}`, in preferred directed-difference order.
pub fn patterned_starter(m: u32) -> Result<Pairing> {
    let q = crate::modular::require_odd_order(m)?;
    let raw: Vec<(u32, u32)> = (1..=q).map(|x| (x, m - x)).collect();
    Pairing::new(m, raw)?.canonical_ordered()
}

/// All starters of order `m` (strong or not), each in preferred ordered form,
/// sorted lexicographically. Refuses `m > 15` unless `allow_large` is set.
pub fn enumerate_starters(m: u32, limit: Option<usize>, allow_large: bool) -> Result<Vec<Pairing>> {
    enumerate(m, limit, allow_large, false)
}

/// All strong starters of order `m`, each in preferred ordered form, sorted
/// lexicographically. Refuses `m > 15` without an explicit override; use
/// [`enumerate_strong_starters_with`] to lift the guard.
pub fn enumerate_strong_starters(m: u32, limit: Option<usize>) -> Result<Vec<Pairing>> {
    enumerate(m, limit, false, true)
}

pub fn enumerate_strong_starters_with(
    m: u32,
    limit: Option<usize>,
    allow_large: bool,
) -> Result<Vec<Pairing>> {
    enumerate(m, limit, allow_large, true)
}

fn enumerate(m: u32, limit: Option<usize>, allow_large: bool, strong: bool) -> Result<Vec<Pairing>> {
    let q = crate::modular::require_odd_order(m)? as usize;
    if m > ENUMERATION_GUARD && !allow_large {
        return Err(Error::OrderTooLarge {
            m,
            limit: ENUMERATION_GUARD,
        });
    }
    let mut search = StarterSearch {
        m,
        strong,
        limit: limit.unwrap_or(usize::MAX),
        used_elem: vec![false; m as usize],
        used_diff: vec![false; q + 1],
        used_sum: vec![false; m as usize],
        // slot d-1 holds the pair (x, x + d)
        slots: vec![(0, 0); q],
        found: Vec::new(),
    };
    search.used_elem[0] = true;
    search.used_sum[0] = true;
    search.run(q);
    let mut out = search.found;
    out.sort_unstable();
    out.into_iter()
        .map(|pairs| {
            let mut p = Pairing::new(m, pairs)?;
            p.ordered = true;
            Ok(p)
        })
        .collect()
}

struct StarterSearch {
    m: u32,
    strong: bool,
    limit: usize,
    used_elem: Vec<bool>,
    used_diff: Vec<bool>,
    used_sum: Vec<bool>,
    slots: Vec<(u32, u32)>,
    found: Vec<Vec<(u32, u32)>>,
}

impl StarterSearch {
    /// Pairs the smallest unused element with a partner at an unused
    /// difference; each starter is produced exactly once.
    fn run(&mut self, remaining: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if remaining == 0 {
            self.found.push(self.slots.clone());
            return;
        }
        let m = self.m;
        let q = (m - 1) / 2;
        let x = (1..m).find(|&v| !self.used_elem[v as usize]).unwrap();
        for d in 1..=q {
            if self.used_diff[d as usize] {
                continue;
            }
            for (a, b) in [(x, add_mod(x, d, m)), (sub_mod(x, d, m), x)] {
                // (a, b) has directed difference +d; the partner of x is the other end.
                let partner = if a == x { b } else { a };
                if partner == 0 || self.used_elem[partner as usize] {
                    continue;
                }
                let s = add_mod(a, b, m);
                if self.strong && self.used_sum[s as usize] {
                    continue;
                }
                self.used_elem[x as usize] = true;
                self.used_elem[partner as usize] = true;
                self.used_diff[d as usize] = true;
                if self.strong {
                    self.used_sum[s as usize] = true;
                }
                self.slots[d as usize - 1] = (a, b);
                self.run(remaining - 1);
                self.used_elem[x as usize] = false;
                self.used_elem[partner as usize] = false;
                self.used_diff[d as usize] = false;
                if self.strong {
                    self.used_sum[s as usize] = false;
                }
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }
}

/// True when the multiset union of the two pairings holds every element of
/// `Z_m^*` exactly twice.
pub fn is_special_pair(a: &Pairing, b: &Pairing) -> bool {
    if a.modulus != b.modulus {
        return false;
    }
    let m = a.modulus as usize;
    let mut count = vec![0u32; m];
    for &(x, y) in a.pairs.iter().chain(b.pairs.iter()) {
        count[x as usize] += 1;
        count[y as usize] += 1;
    }
    count[0] == 0 && count[1..].iter().all(|&c| c == 2)
}
