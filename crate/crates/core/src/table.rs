//! Triplication tables and their derived index structures.
//!
//! A table of order `m = 2q + 1` is an ordered pairing of `3q + 1` pairs over
//! `Z_m`. Index 0 holds the special pair `(t, t)`; regular row `d` holds
//! indices `3d - 2 ..= 3d`, all with directed difference `±d`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, TableClause};
use crate::modular::{add_mod, neg_mod, require_odd_order, sub_mod};
use crate::pairing::Pairing;

/// Which component of a pair a position refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    U,
    V,
}

/// Double index `<i, l>`: pair `i`, component `u` (`l = 0`) or `v` (`l = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub pair: usize,
    pub side: Side,
}

impl Position {
    pub fn u(pair: usize) -> Self {
        Position { pair, side: Side::U }
    }

    pub fn v(pair: usize) -> Self {
        Position { pair, side: Side::V }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::U => write!(f, "U{}", self.pair),
            Side::V => write!(f, "V{}", self.pair),
        }
    }
}

/// `M_c` for every color `c`, positions in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonochromeSets {
    sets: Vec<Vec<Position>>,
}

impl MonochromeSets {
    pub fn get(&self, color: u32) -> &[Position] {
        &self.sets[color as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &[Position])> {
        self.sets
            .iter()
            .enumerate()
            .map(|(c, s)| (c as u32, s.as_slice()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakSet {
    pub sum: u32,
    pub indices: Vec<usize>,
}

/// Weak sets (shared sums, or sum zero) and the remaining strong pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakSets {
    sets: Vec<WeakSet>,
    strong: Vec<usize>,
}

impl WeakSets {
    /// Weak sets in increasing order of their sum.
    pub fn sets(&self) -> &[WeakSet] {
        &self.sets
    }

    pub fn get(&self, sum: u32) -> Option<&WeakSet> {
        self.sets.iter().find(|w| w.sum == sum)
    }

    /// Indices of strong pairs, increasing.
    pub fn strong(&self) -> &[usize] {
        &self.strong
    }
}

/// Difference carries `δ_i = [u_i < v_i]` and summation carries
/// `σ_i = [u_i + v_i >= m]`, over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarryTables {
    pub difference: Vec<u8>,
    pub summation: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexStructures {
    pub monochrome: MonochromeSets,
    pub weak: WeakSets,
    pub carries: CarryTables,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplicationTable {
    m: u32,
    key: u32,
    pairs: Vec<(u32, u32)>,
    signs: Vec<i8>,
    index: IndexStructures,
}

impl TriplicationTable {
    /// Checks every clause of the table definition, reporting the first
    /// violation in clause order.
    pub fn validate(m: u32, pairs: Vec<(u32, u32)>) -> Result<Self> {
        let q = require_odd_order(m)? as usize;
        if pairs.len() % 3 != 1 {
            return Err(Error::InvalidInput(format!(
                "a triplication table has 3q+1 pairs; got {}",
                pairs.len()
            )));
        }
        if pairs.len() != 3 * q + 1 {
            return Err(Error::InvalidInput(format!(
                "order {m} needs {} pairs, got {}",
                3 * q + 1,
                pairs.len()
            )));
        }
        if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| u >= m || v >= m) {
            return Err(Error::InvalidInput(format!(
                "pair ({u},{v}) has a component outside Z_{m}"
            )));
        }

        let violation = |clause, detail: String| Err(Error::NotATable { clause, detail });

        let mut count = vec![0u32; m as usize];
        for &(u, v) in &pairs {
            count[u as usize] += 1;
            count[v as usize] += 1;
        }
        for (c, &n) in count.iter().enumerate() {
            let want = if c == 0 { 2 } else { 3 };
            if n != want {
                return violation(
                    TableClause::Multiplicity,
                    format!("element {c} occurs {n} times, expected {want}"),
                );
            }
        }

        let (t, t2) = pairs[0];
        if t != t2 || t == 0 {
            return violation(
                TableClause::RowStructure,
                format!("pair 0 is ({t},{t2}); expected (t,t) with t != 0"),
            );
        }
        if let Some(i) = (1..pairs.len()).find(|&i| pairs[i].0 == pairs[i].1) {
            return violation(
                TableClause::RowStructure,
                format!("pair {i} {:?} is a second pair of type (t,t)", pairs[i]),
            );
        }
        let mut signs = Vec::with_capacity(q);
        for d in 1..=q {
            let base = 3 * d - 2;
            let diffs: Vec<u32> = (base..base + 3)
                .map(|i| sub_mod(pairs[i].1, pairs[i].0, m))
                .collect();
            let plus = d as u32;
            let minus = neg_mod(plus, m);
            let sign = if diffs[0] == plus {
                1
            } else if diffs[0] == minus {
                -1
            } else {
                return violation(
                    TableClause::RowStructure,
                    format!(
                        "pair {base} {:?} has directed difference {}, expected ±{d}",
                        pairs[base], diffs[0]
                    ),
                );
            };
            if let Some(k) = (1..3).find(|&k| diffs[k] != diffs[0]) {
                return violation(
                    TableClause::RowStructure,
                    format!(
                        "row {d}: pair {} {:?} has directed difference {} but pair {base} has {}",
                        base + k,
                        pairs[base + k],
                        diffs[k],
                        diffs[0]
                    ),
                );
            }
            signs.push(sign);
        }

        let mut sum_count = vec![0u32; m as usize];
        for &(u, v) in &pairs {
            sum_count[add_mod(u, v, m) as usize] += 1;
        }
        for (s, &n) in sum_count.iter().enumerate() {
            let cap = if s == 0 { 2 } else { 3 };
            if n > cap {
                return violation(
                    TableClause::SumMultiplicity,
                    format!("{n} pairs have sum {s}, at most {cap} allowed"),
                );
            }
        }

        let mut seen = HashSet::with_capacity(pairs.len());
        for (i, p) in pairs.iter().enumerate() {
            if !seen.insert(*p) {
                let first = pairs.iter().position(|x| x == p).unwrap();
                return violation(
                    TableClause::DistinctPairs,
                    format!("pairs {first} and {i} are both {p:?}"),
                );
            }
        }

        let index = derive_index_structures(m, &pairs);
        Ok(TriplicationTable {
            m,
            key: t,
            pairs,
            signs,
            index,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> usize {
        (self.m as usize - 1) / 2
    }

    pub fn key(&self) -> u32 {
        self.key
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn index(&self) -> &IndexStructures {
        &self.index
    }

    pub fn monochrome(&self) -> &MonochromeSets {
        &self.index.monochrome
    }

    pub fn weak_sets(&self) -> &WeakSets {
        &self.index.weak
    }

    pub fn carries(&self) -> &CarryTables {
        &self.index.carries
    }

    /// Pair indices of regular row `d` (1-based).
    pub fn row_indices(d: usize) -> [usize; 3] {
        [3 * d - 2, 3 * d - 1, 3 * d]
    }

    /// Rows as displayed: row 0 holds the special pair, rows `1..=q` three pairs.
    pub fn rows(&self) -> Vec<Vec<(u32, u32)>> {
        let mut rows = vec![vec![self.pairs[0]]];
        rows.extend(self.pairs[1..].chunks(3).map(<[_]>::to_vec));
        rows
    }

    /// The three columns of the regular part, each an ordered pseudostarter.
    pub fn columns(&self) -> [Pairing; 3] {
        let col = |j: usize| {
            let pairs = (1..=self.q()).map(|d| self.pairs[3 * d - 2 + j]).collect();
            Pairing::new(self.m, pairs).expect("components are reduced")
        };
        [col(0), col(1), col(2)]
    }

    pub fn to_pairing(&self) -> Pairing {
        Pairing::new(self.m, self.pairs.clone()).expect("components are reduced")
    }

    /// Representative of the equivalence class: every row flipped to sign
    /// `+1`, then the three pairs of each row sorted. Idempotent.
    pub fn canonicalize(&self) -> TriplicationTable {
        let mut pairs = self.pairs.clone();
        for d in 1..=self.q() {
            let row = &mut pairs[3 * d - 2..=3 * d];
            if self.signs[d - 1] < 0 {
                for p in row.iter_mut() {
                    *p = (p.1, p.0);
                }
            }
            row.sort_unstable();
        }
        TriplicationTable::validate(self.m, pairs).expect("row permutations preserve validity")
    }

    pub fn equivalent(&self, other: &TriplicationTable) -> bool {
        self.m == other.m && self.canonicalize().pairs == other.canonicalize().pairs
    }

    /// Swaps both components of every pair in regular row `d`.
    pub fn flip_row(&self, d: usize) -> Result<TriplicationTable> {
        if d == 0 || d > self.q() {
            return Err(Error::InvalidInput(format!("no regular row {d}")));
        }
        let mut pairs = self.pairs.clone();
        for p in &mut pairs[3 * d - 2..=3 * d] {
            *p = (p.1, p.0);
        }
        TriplicationTable::validate(self.m, pairs)
    }

    /// Applies a permutation of `{0, 1, 2}` to the pairs of regular row `d`.
    pub fn permute_row(&self, d: usize, perm: [usize; 3]) -> Result<TriplicationTable> {
        if d == 0 || d > self.q() {
            return Err(Error::InvalidInput(format!("no regular row {d}")));
        }
        let mut sorted = perm;
        sorted.sort_unstable();
        if sorted != [0, 1, 2] {
            return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
        }
        let mut pairs = self.pairs.clone();
        let base = 3 * d - 2;
        for (k, &src) in perm.iter().enumerate() {
            pairs[base + k] = self.pairs[base + src];
        }
        TriplicationTable::validate(self.m, pairs)
    }

    /// Boxed rendering with the special pair centered over column 1.
    pub fn render(&self) -> String {
        render_rows(&self.rows())
    }
}

impl fmt::Display for TriplicationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Renders a `3q + 1`-pair table in the boxed layout.
pub fn render_rows(rows: &[Vec<(u32, u32)>]) -> String {
    let cell = |p: &(u32, u32)| format!("({}, {})", p.0, p.1);
    let width = rows
        .iter()
        .flatten()
        .map(|p| cell(p).len())
        .max()
        .unwrap_or(6);
    let rule = format!(
        "+{}+",
        vec!["-".repeat(width + 2); 3].join("+")
    );
    let mut out = String::new();
    out.push_str(&rule);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = if row.len() == 1 {
            vec![String::new(), cell(&row[0]), String::new()]
        } else {
            row.iter().map(cell).collect()
        };
        out.push('|');
        for c in cells {
            out.push_str(&format!(" {c:^width$} |"));
        }
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
    }
    out
}

/// Monochrome sets, weak sets and carry tables of a raw `3q + 1`-pair table.
pub fn derive_index_structures(m: u32, pairs: &[(u32, u32)]) -> IndexStructures {
    let mut sets = vec![Vec::new(); m as usize];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        sets[u as usize].push(Position::u(i));
        sets[v as usize].push(Position::v(i));
    }

    let mut by_sum = vec![Vec::new(); m as usize];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        by_sum[add_mod(u, v, m) as usize].push(i);
    }
    let mut weak = Vec::new();
    let mut strong = Vec::new();
    for (s, indices) in by_sum.into_iter().enumerate() {
        if s == 0 && !indices.is_empty() || indices.len() > 1 {
            weak.push(WeakSet {
                sum: s as u32,
                indices,
            });
        } else {
            strong.extend(indices);
        }
    }
    strong.sort_unstable();

    let carries = CarryTables {
        difference: pairs.iter().map(|&(u, v)| u8::from(u < v)).collect(),
        summation: pairs.iter().map(|&(u, v)| u8::from(u + v >= m)).collect(),
    };

    IndexStructures {
        monochrome: MonochromeSets { sets },
        weak: WeakSets { sets: weak, strong },
        carries,
    }
}

/// Table induced by a strong starter of order `3m`, together with the
/// starter re-ordered and re-oriented to line up with the table index by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedTable {
    pub table: TriplicationTable,
    /// Ordered pairing over `Z_{3m}` whose reduction mod `m` is `table`.
    pub aligned: Pairing,
}

/// Reduces a strong starter of order `3m` modulo `m` and arranges the pairs
/// into a table with every row sign `+1`. Within a row, pairs keep the order
/// in which they appear in `s`.
pub fn induce_from_starter(s: &Pairing) -> Result<InducedTable> {
    let class = s.classify();
    if !class.is_strong() {
        return Err(Error::InputNotStrongStarter(
            class.witness.unwrap_or_else(|| class.kind.to_string()),
        ));
    }
    let n = s.modulus();
    if n % 3 != 0 {
        return Err(Error::InvalidInput(format!(
            "starter order {n} is not divisible by 3"
        )));
    }
    let m = n / 3;
    let q = require_odd_order(m)? as usize;

    let mut special = Vec::new();
    let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); q + 1];
    for &(x, y) in s.pairs() {
        let (u, v) = (x % m, y % m);
        let d = sub_mod(v, u, m);
        if d == 0 {
            special.push((x, y));
            continue;
        }
        let row = d.min(m - d) as usize;
        let oriented = if d as usize == row { (x, y) } else { (y, x) };
        rows[row].push(oriented);
    }
    if special.len() != 1 || rows[1..].iter().any(|r| r.len() != 3) {
        return Err(Error::InternalVerificationFailure(
            "reduction of a strong starter does not have the triplication shape".into(),
        ));
    }
    let mut aligned = special;
    for row in &rows[1..] {
        aligned.extend_from_slice(row);
    }
    let reduced: Vec<(u32, u32)> = aligned.iter().map(|&(x, y)| (x % m, y % m)).collect();
    let table = TriplicationTable::validate(m, reduced)?;
    Ok(InducedTable {
        table,
        aligned: Pairing::new(n, aligned)?,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct TableJson {
    m: u32,
    key: u32,
    rows: Vec<Vec<[u32; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<Vec<i8>>,
}

impl TriplicationTable {
    /// Builds a table from displayed rows: row 0 with one pair, then `q` rows of three.
    pub fn from_rows(m: u32, rows: &[Vec<(u32, u32)>]) -> Result<Self> {
        match rows.first() {
            Some(r) if r.len() == 1 => {}
            _ => {
                return Err(Error::InvalidInput(
                    "row 0 must hold exactly one pair".into(),
                ))
            }
        }
        if let Some((d, r)) = rows.iter().enumerate().skip(1).find(|(_, r)| r.len() != 3) {
            return Err(Error::InvalidInput(format!(
                "regular row {d} holds {} pairs, expected 3",
                r.len()
            )));
        }
        TriplicationTable::validate(m, rows.iter().flatten().copied().collect())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = TableJson {
            m: self.m,
            key: self.key,
            rows: self
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|(u, v)| [u, v]).collect())
                .collect(),
            signs: Some(self.signs.clone()),
        };
        serde_json::to_value(doc).expect("table serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("table serializes")
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let doc: TableJson = serde_json::from_value(value)
            .map_err(|e| Error::InvalidInput(format!("table JSON: {e}")))?;
        let rows: Vec<Vec<(u32, u32)>> = doc
            .rows
            .iter()
            .map(|r| r.iter().map(|&[u, v]| (u, v)).collect())
            .collect();
        let table = TriplicationTable::from_rows(doc.m, &rows)?;
        if table.key != doc.key {
            return Err(Error::InvalidInput(format!(
                "declared key {} but the special pair is {:?}",
                doc.key, table.pairs[0]
            )));
        }
        if let Some(signs) = doc.signs {
            if signs != table.signs {
                return Err(Error::InvalidInput(format!(
                    "declared signs {signs:?} disagree with row differences {:?}",
                    table.signs
                )));
            }
        }
        Ok(table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("table JSON: {e}")))?;
        TriplicationTable::from_json_value(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_62() -> TriplicationTable {
        TriplicationTable::validate(
            7,
            vec![
                (1, 1),
                (2, 3),
                (3, 4),
                (5, 6),
                (4, 6),
                (5, 0),
                (2, 4),
                (1, 5),
                (2, 6),
                (3, 0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn carries_and_weak_sets_example_62() {
        let tt = table_62();
        let ones = |v: &[u8]| {
            v.iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        };
        assert_eq!(ones(&tt.carries().difference), vec![1, 2, 3, 4, 6, 7, 8]);
        // summation carries only matter on weak pairs
        let weak: Vec<usize> = tt.weak_sets().sets().iter().flat_map(|w| w.indices.clone()).collect();
        let sigma_weak: Vec<usize> = ones(&tt.carries().summation)
            .into_iter()
            .filter(|i| weak.contains(i))
            .collect();
        assert_eq!(sigma_weak, vec![2, 4]);
        let strong: Vec<_> = tt.weak_sets().strong().iter().map(|&i| tt.pairs()[i]).collect();
        assert_eq!(strong, vec![(1, 1), (5, 6), (2, 6)]);
        assert_eq!(tt.weak_sets().get(0).unwrap().indices, vec![2]);
        assert_eq!(tt.weak_sets().get(3).unwrap().indices, vec![4, 9]);
        assert_eq!(tt.weak_sets().get(5).unwrap().indices, vec![1, 5]);
        assert_eq!(tt.weak_sets().get(6).unwrap().indices, vec![6, 7]);
        assert_eq!(
            tt.monochrome().get(1),
            &[Position::u(0), Position::v(0), Position::u(7)]
        );
        assert_eq!(tt.monochrome().get(0), &[Position::v(5), Position::v(9)]);
    }

    #[test]
    fn duplicate_pair_is_clause_iv() {
        let err = TriplicationTable::validate(
            7,
            vec![
                (3, 3),
                (2, 3),
                (5, 6),
                (0, 1),
                (4, 6),
                (4, 6),
                (0, 2),
                (5, 1),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::NotATable {
                clause: TableClause::DistinctPairs,
                ..
            }
        ));
    }

    #[test]
    fn clause_order_reported() {
        // element count broken first
        let err = TriplicationTable::validate(
            7,
            vec![
                (1, 1),
                (2, 3),
                (3, 4),
                (5, 6),
                (4, 6),
                (5, 0),
                (2, 4),
                (1, 5),
                (2, 6),
                (3, 1),
            ],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::NotATable {
                clause: TableClause::Multiplicity,
                ..
            }
        ));
        // key zero
        let mut pairs = table_62().pairs().to_vec();
        pairs[0] = (0, 0);
        pairs[5] = (5, 1);
        pairs[9] = (3, 1);
        let err = TriplicationTable::validate(7, pairs).unwrap_err();
        assert!(matches!(err, Error::NotATable { .. }));
        assert!(matches!(
            TriplicationTable::validate(7, vec![(1, 1); 9]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn row_sign_mismatch_is_clause_ii() {
        // row 1 with mixed signs: (3,2) has difference -1
        let mut pairs = table_62().pairs().to_vec();
        pairs[1] = (3, 2);
        let err = TriplicationTable::validate(7, pairs).unwrap_err();
        assert!(matches!(
            err,
            Error::NotATable {
                clause: TableClause::RowStructure,
                ..
            }
        ));
    }

    #[test]
    fn canonical_form() {
        let tt = table_62();
        let c = tt.canonicalize();
        assert!(c.signs().iter().all(|&s| s == 1));
        assert_eq!(c.canonicalize(), c);
        let flipped = tt.flip_row(2).unwrap();
        assert_eq!(flipped.signs()[1], -1);
        assert!(flipped.equivalent(&tt));
        let permuted = tt.permute_row(3, [2, 0, 1]).unwrap();
        assert!(permuted.equivalent(&tt));
        assert_eq!(permuted.canonicalize(), c);
    }

    #[test]
    fn json_round_trip() {
        let tt = table_62();
        let back = TriplicationTable::from_json(&tt.to_json()).unwrap();
        assert_eq!(back, tt);
        let bad = tt.to_json().replace("\"key\": 1", "\"key\": 2");
        assert!(TriplicationTable::from_json(&bad).is_err());
    }

    #[test]
    fn render_centers_special_pair() {
        let text = table_62().render();
        let second = text.lines().nth(1).unwrap();
        let cells: Vec<&str> = second.split('|').collect();
        assert_eq!(cells[2].trim(), "(1, 1)");
        assert!(cells[1].trim().is_empty());
    }
}
