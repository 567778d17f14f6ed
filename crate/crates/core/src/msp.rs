//! Modular Sudoku problems: for a triplication table over `Z_m` and a
//! scenario, find discriminators `(U_i, V_i)` for every pair so that the
//! lifted pairs form a strong starter of order `3m`.
//!
//! Each variable has exactly three candidates, so an instance is a 3-valued
//! CSP whose constraints are all "these expressions are pairwise distinct
//! (and possibly nonzero)". The solver is plain chronological backtracking
//! with forward checking and smallest-domain-first variable choice.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{add_mod, require_odd_order};
use crate::scenario::{difference_carry, summation_carry, Encoded, Scenario, ScenarioKind};
use crate::table::{Side, TriplicationTable};

/// Discriminator table aligned index by index with its source table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CongruousTable {
    kind: ScenarioKind,
    r: u32,
    values: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct CongruousJson {
    scenario: ScenarioKind,
    r: u32,
    rows: Vec<Vec<[u32; 2]>>,
}

impl CongruousTable {
    pub fn new(kind: ScenarioKind, r: u32, values: Vec<(u32, u32)>) -> Self {
        CongruousTable { kind, r, values }
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn values(&self) -> &[(u32, u32)] {
        &self.values
    }

    pub fn rows(&self) -> Vec<Vec<(u32, u32)>> {
        if self.values.is_empty() {
            return Vec::new();
        }
        let mut rows = vec![vec![self.values[0]]];
        rows.extend(self.values[1..].chunks(3).map(<[_]>::to_vec));
        rows
    }

    /// Builds from displayed rows (one value pair, then triples).
    pub fn from_rows(kind: ScenarioKind, r: u32, rows: &[Vec<(u32, u32)>]) -> Result<Self> {
        if rows.first().map(Vec::len) != Some(1) || rows[1..].iter().any(|row| row.len() != 3) {
            return Err(Error::InvalidInput(
                "discriminator rows must be one pair followed by rows of three".into(),
            ));
        }
        Ok(CongruousTable::new(kind, r, rows.iter().flatten().copied().collect()))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = CongruousJson {
            scenario: self.kind,
            r: self.r,
            rows: self
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(|(a, b)| [a, b]).collect())
                .collect(),
        };
        serde_json::to_value(doc).expect("solution serializes")
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let doc: CongruousJson = serde_json::from_value(value)
            .map_err(|e| Error::InvalidInput(format!("solution JSON: {e}")))?;
        let rows: Vec<Vec<(u32, u32)>> = doc
            .rows
            .iter()
            .map(|row| row.iter().map(|&[a, b]| (a, b)).collect())
            .collect();
        CongruousTable::from_rows(doc.scenario, doc.r, &rows)
    }

    pub fn render(&self) -> String {
        crate::table::render_rows(&self.rows())
    }
}

impl fmt::Display for CongruousTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Result of re-checking a discriminator table against its source table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CongruenceReport {
    pub violations: Vec<String>,
}

impl CongruenceReport {
    pub fn is_congruous(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies every constraint straight from the definitions, without going
/// through a compiled instance.
pub fn check_congruous(tt: &TriplicationTable, ct: &CongruousTable, sc: &Scenario) -> CongruenceReport {
    let mut bad = Vec::new();
    if sc.m() != tt.m() {
        bad.push(format!("scenario is for m = {} but the table has m = {}", sc.m(), tt.m()));
    }
    if ct.kind != sc.kind() || ct.r != sc.r() {
        bad.push(format!(
            "solution is for {} with r = {}, expected {} with r = {}",
            ct.kind,
            ct.r,
            sc.kind(),
            sc.r()
        ));
    }
    if ct.values.len() != tt.pairs().len() {
        bad.push(format!(
            "solution has {} entries but the table has {} pairs",
            ct.values.len(),
            tt.pairs().len()
        ));
    }
    if !bad.is_empty() {
        return CongruenceReport { violations: bad };
    }

    let m = tt.m();
    let cells: Vec<(Encoded, Encoded)> = tt
        .pairs()
        .iter()
        .zip(&ct.values)
        .map(|(&(u, v), &(big_u, big_v))| (Encoded::new(u, big_u), Encoded::new(v, big_v)))
        .collect();

    // range and consistency
    for (i, (a, b)) in cells.iter().enumerate() {
        for (side, e) in [("U", a), ("V", b)] {
            if e.big_u >= sc.r() {
                bad.push(format!("{side}{i} = {} is outside Z_{}", e.big_u, sc.r()));
            } else if !sc.contains(*e) {
                bad.push(format!("{side}{i} = {} is incompatible with residue {}", e.big_u, e.u));
            }
        }
    }
    if !bad.is_empty() {
        return CongruenceReport { violations: bad };
    }

    let diff = |i: usize| {
        let (a, b) = cells[i];
        sc.box_sub(a, b, difference_carry(a.u, b.u))
    };
    let sum = |i: usize| {
        let (a, b) = cells[i];
        sc.box_add(a, b, summation_carry(a.u, b.u, m))
    };

    if diff(0) == 0 {
        bad.push("special pair: U0 and V0 give a zero difference".into());
    }
    for d in 1..=tt.q() {
        let idx = TriplicationTable::row_indices(d);
        let vals: Vec<u32> = idx.iter().map(|&i| diff(i)).collect();
        if let Some((a, b)) = first_repeat(&vals) {
            bad.push(format!(
                "row {d}: differences at {} and {} coincide ({})",
                idx[a], idx[b], vals[a]
            ));
        }
    }

    let mut by_sum: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &(u, v)) in tt.pairs().iter().enumerate() {
        by_sum.entry(add_mod(u, v, m)).or_default().push(i);
    }
    for (s, idx) in by_sum {
        if s != 0 && idx.len() < 2 {
            continue;
        }
        let vals: Vec<u32> = idx.iter().map(|&i| sum(i)).collect();
        if let Some((a, b)) = first_repeat(&vals) {
            bad.push(format!(
                "weak set {s}: sums at {} and {} coincide ({})",
                idx[a], idx[b], vals[a]
            ));
        }
        if s == 0 {
            for (k, &val) in vals.iter().enumerate() {
                if val == 0 {
                    bad.push(format!("weak set 0: sum at {} is zero", idx[k]));
                }
            }
        }
    }

    let mut by_color: BTreeMap<u32, Vec<(String, u32)>> = BTreeMap::new();
    for (i, (a, b)) in cells.iter().enumerate() {
        by_color.entry(a.u).or_default().push((format!("U{i}"), a.big_u));
        by_color.entry(b.u).or_default().push((format!("V{i}"), b.big_u));
    }
    for (c, members) in by_color {
        let vals: Vec<u32> = members.iter().map(|(_, x)| *x).collect();
        if let Some((a, b)) = first_repeat(&vals) {
            bad.push(format!(
                "color {c}: {} and {} are both {}",
                members[a].0, members[b].0, vals[a]
            ));
        }
        if c == 0 {
            for (name, val) in &members {
                if *val == 0 {
                    bad.push(format!("color 0: {name} is zero"));
                }
            }
        }
    }
    CongruenceReport { violations: bad }
}

fn first_repeat(vals: &[u32]) -> Option<(usize, usize)> {
    for b in 1..vals.len() {
        for a in 0..b {
            if vals[a] == vals[b] {
                return Some((a, b));
            }
        }
    }
    None
}

/// Variable index of `U_i` or `V_i`.
#[inline]
pub fn var_index(pair: usize, side: Side) -> usize {
    2 * pair + usize::from(side == Side::V)
}

const MAX_TERMS: usize = 3;

/// An expression over one or two selectors, tabulated over their domains.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    vars: [u16; 2],
    arity: u8,
    table: [[u32; 3]; 3],
}

impl Term {
    fn var(v: usize, domain: [u32; 3]) -> Term {
        Term {
            vars: [v as u16, v as u16],
            arity: 1,
            table: [[domain[0]; 3], [domain[1]; 3], [domain[2]; 3]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    SpecialRow,
    Row(u32),
    Weak(u32),
    Color(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Constraint {
    kind: ConstraintKind,
    terms: Vec<Term>,
    nonzero: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ConstraintCounts {
    pub row: usize,
    pub special: usize,
    pub weak: usize,
    pub color: usize,
}

/// A compiled problem: `2(3q + 1)` selector variables, `U_i` at `2i` and
/// `V_i` at `2i + 1`, each choosing one of three discriminators.
#[derive(Debug, Clone)]
pub struct MspInstance {
    scenario: Scenario,
    residues: Vec<u32>,
    domains: Vec<[u32; 3]>,
    constraints: Vec<Constraint>,
    occurs: Vec<Vec<u32>>,
}

pub fn compile(tt: &TriplicationTable, sc: &Scenario) -> Result<MspInstance> {
    if sc.m() != tt.m() {
        return Err(Error::ScenarioMismatch {
            scenario_m: sc.m(),
            table_m: tt.m(),
        });
    }
    let pairs = tt.pairs();
    let carries = tt.carries();
    let mut residues = Vec::with_capacity(2 * pairs.len());
    for &(u, v) in pairs {
        residues.push(u);
        residues.push(v);
    }
    let domains: Vec<[u32; 3]> = residues.iter().map(|&u| sc.variable_domain(u)).collect();

    let binary = |i: usize, add: bool| {
        let (u, v) = pairs[i];
        let (a, b) = (2 * i, 2 * i + 1);
        let mut table = [[0; 3]; 3];
        for (ka, row) in table.iter_mut().enumerate() {
            for (kb, cell) in row.iter_mut().enumerate() {
                let ea = Encoded::new(u, domains[a][ka]);
                let eb = Encoded::new(v, domains[b][kb]);
                *cell = if add {
                    sc.box_add(ea, eb, carries.summation[i])
                } else {
                    sc.box_sub(ea, eb, carries.difference[i])
                };
            }
        }
        Term {
            vars: [a as u16, b as u16],
            arity: 2,
            table,
        }
    };

    let mut constraints = vec![Constraint {
        kind: ConstraintKind::SpecialRow,
        terms: vec![binary(0, false)],
        nonzero: true,
    }];
    for d in 1..=tt.q() {
        constraints.push(Constraint {
            kind: ConstraintKind::Row(d as u32),
            terms: TriplicationTable::row_indices(d)
                .iter()
                .map(|&i| binary(i, false))
                .collect(),
            nonzero: false,
        });
    }
    for w in tt.weak_sets().sets() {
        constraints.push(Constraint {
            kind: ConstraintKind::Weak(w.sum),
            terms: w.indices.iter().map(|&i| binary(i, true)).collect(),
            nonzero: w.sum == 0,
        });
    }
    for (c, positions) in tt.monochrome().iter() {
        if positions.is_empty() {
            continue;
        }
        constraints.push(Constraint {
            kind: ConstraintKind::Color(c),
            terms: positions
                .iter()
                .map(|p| {
                    let v = var_index(p.pair, p.side);
                    Term::var(v, domains[v])
                })
                .collect(),
            nonzero: c == 0,
        });
    }
    debug_assert!(constraints.iter().all(|c| c.terms.len() <= MAX_TERMS));
    if constraints.iter().any(|c| c.terms.len() > MAX_TERMS) {
        return Err(Error::InternalVerificationFailure(
            "a constraint has more than three terms".into(),
        ));
    }

    let mut occurs = vec![Vec::new(); domains.len()];
    for (ci, c) in constraints.iter().enumerate() {
        for t in &c.terms {
            occurs[t.vars[0] as usize].push(ci as u32);
            if t.arity == 2 {
                occurs[t.vars[1] as usize].push(ci as u32);
            }
        }
    }
    Ok(MspInstance {
        scenario: *sc,
        residues,
        domains,
        constraints,
        occurs,
    })
}

/// Order in which the three candidates of a variable are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValueOrder {
    #[default]
    Fixed,
    Shuffled(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolverConfig {
    /// Maximum number of assignments tried; `None` means unbounded.
    pub budget: Option<u64>,
    pub value_order: ValueOrder,
}

impl SolverConfig {
    pub fn with_budget(budget: u64) -> Self {
        SolverConfig {
            budget: Some(budget),
            value_order: ValueOrder::Fixed,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub backtracks: u64,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Solution(CongruousTable),
    /// The search space was exhausted without a solution.
    Unsatisfiable,
    Aborted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub stats: SolveStats,
}

impl MspInstance {
    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    /// Candidate discriminators of variable `v`, in selector order.
    pub fn domain(&self, v: usize) -> [u32; 3] {
        self.domains[v]
    }

    /// Residue `u` or `v` that variable `v` sits on.
    pub fn residue(&self, v: usize) -> u32 {
        self.residues[v]
    }

    pub fn constraint_counts(&self) -> ConstraintCounts {
        let mut counts = ConstraintCounts::default();
        for c in &self.constraints {
            match c.kind {
                ConstraintKind::SpecialRow => counts.special += 1,
                ConstraintKind::Row(_) => counts.row += 1,
                ConstraintKind::Weak(_) => counts.weak += 1,
                ConstraintKind::Color(_) => counts.color += 1,
            }
        }
        counts
    }

    /// Kinds of all constraints, in compilation order.
    pub fn constraint_kinds(&self) -> Vec<ConstraintKind> {
        self.constraints.iter().map(|c| c.kind).collect()
    }

    fn to_table(&self, selectors: &[u8]) -> CongruousTable {
        let values = selectors
            .chunks(2)
            .enumerate()
            .map(|(i, k)| {
                (
                    self.domains[2 * i][k[0] as usize],
                    self.domains[2 * i + 1][k[1] as usize],
                )
            })
            .collect();
        CongruousTable::new(self.scenario.kind(), self.scenario.r(), values)
    }

    /// Searches for one solution.
    pub fn solve_first(&self, cfg: &SolverConfig) -> SolveReport {
        let mut found = None;
        let (stats, complete) = self.search(cfg, |sel| {
            found = Some(self.to_table(sel));
            false
        });
        let outcome = match found {
            Some(t) => SolveOutcome::Solution(t),
            None if complete => SolveOutcome::Unsatisfiable,
            None => SolveOutcome::Aborted,
        };
        SolveReport { outcome, stats }
    }

    /// Every solution, in search order. Fails when more than `max` exist or
    /// the budget runs out.
    pub fn solve_all(&self, cfg: &SolverConfig, max: usize) -> Result<(Vec<CongruousTable>, SolveStats)> {
        let mut out = Vec::new();
        let mut overflow = false;
        let (stats, complete) = self.search(cfg, |sel| {
            if out.len() == max {
                overflow = true;
                return false;
            }
            out.push(self.to_table(sel));
            true
        });
        if overflow {
            return Err(Error::TooManySolutions { limit: max });
        }
        if !complete {
            return Err(Error::Aborted { nodes: stats.nodes });
        }
        Ok((out, stats))
    }

    pub fn count(&self, cfg: &SolverConfig) -> Result<(u64, SolveStats)> {
        let mut n = 0u64;
        let (stats, complete) = self.search(cfg, |_| {
            n += 1;
            true
        });
        if !complete {
            return Err(Error::Aborted { nodes: stats.nodes });
        }
        Ok((n, stats))
    }

    /// Runs the search, handing each solution's selectors to `visit`; the
    /// callback returns whether to keep going. Returns the statistics and
    /// whether the search ran to completion or was stopped by the visitor
    /// (as opposed to the budget).
    fn search<F: FnMut(&[u8]) -> bool>(&self, cfg: &SolverConfig, visit: F) -> (SolveStats, bool) {
        let start = Instant::now();
        let n = self.domains.len();
        let mut s = Search {
            inst: self,
            dom: vec![0b111; n],
            assigned: vec![u8::MAX; n],
            trail: Vec::with_capacity(4 * n),
            nodes: 0,
            backtracks: 0,
            budget: cfg.budget.unwrap_or(u64::MAX),
            rng: match cfg.value_order {
                ValueOrder::Fixed => None,
                ValueOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
            visit,
            stopped: false,
            aborted: false,
        };
        let ok = (0..self.constraints.len()).all(|c| s.revise(c));
        if ok {
            s.descend(n);
        }
        let stats = SolveStats {
            nodes: s.nodes,
            backtracks: s.backtracks,
            elapsed: start.elapsed(),
        };
        (stats, !s.aborted)
    }
}

struct Search<'a, F> {
    inst: &'a MspInstance,
    dom: Vec<u8>,
    /// Chosen selector, or `u8::MAX` while unassigned.
    assigned: Vec<u8>,
    trail: Vec<(u16, u8)>,
    nodes: u64,
    backtracks: u64,
    budget: u64,
    rng: Option<ChaCha8Rng>,
    visit: F,
    stopped: bool,
    aborted: bool,
}

impl<F: FnMut(&[u8]) -> bool> Search<'_, F> {
    fn set_dom(&mut self, v: usize, mask: u8) {
        if self.dom[v] != mask {
            self.trail.push((v as u16, self.dom[v]));
            self.dom[v] = mask;
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, mask) = self.trail.pop().unwrap();
            self.dom[v as usize] = mask;
        }
    }

    /// Forward check of one constraint: assigned terms must be distinct (and
    /// nonzero when required); terms with a single open variable lose the
    /// candidates that would clash.
    fn revise(&mut self, ci: usize) -> bool {
        let c = &self.inst.constraints[ci];
        let mut fixed = [0u32; MAX_TERMS];
        let mut nfixed = 0;
        let mut open = [(0usize, 0usize); MAX_TERMS];
        let mut nopen = 0;
        for (ti, t) in c.terms.iter().enumerate() {
            let a = self.assigned[t.vars[0] as usize];
            let b = if t.arity == 2 { self.assigned[t.vars[1] as usize] } else { 0 };
            match (a != u8::MAX, b != u8::MAX) {
                (true, true) => {
                    let val = t.table[a as usize][b as usize];
                    if (c.nonzero && val == 0) || fixed[..nfixed].contains(&val) {
                        return false;
                    }
                    fixed[nfixed] = val;
                    nfixed += 1;
                }
                (false, false) => {}
                (false, true) => {
                    open[nopen] = (ti, 0);
                    nopen += 1;
                }
                (true, false) => {
                    open[nopen] = (ti, 1);
                    nopen += 1;
                }
            }
        }
        for &(ti, slot) in &open[..nopen] {
            let t = &c.terms[ti];
            let w = t.vars[slot] as usize;
            let mut mask = self.dom[w];
            for k in 0..3 {
                if mask & (1 << k) == 0 {
                    continue;
                }
                let val = if slot == 0 {
                    let b = if t.arity == 2 { self.assigned[t.vars[1] as usize] } else { 0 };
                    t.table[k][b as usize]
                } else {
                    t.table[self.assigned[t.vars[0] as usize] as usize][k]
                };
                if (c.nonzero && val == 0) || fixed[..nfixed].contains(&val) {
                    mask &= !(1 << k);
                }
            }
            if mask == 0 {
                return false;
            }
            self.set_dom(w, mask);
        }
        true
    }

    fn pick(&self) -> Option<usize> {
        let mut best = None;
        let mut best_size = 4;
        for (v, &mask) in self.dom.iter().enumerate() {
            if self.assigned[v] != u8::MAX {
                continue;
            }
            let size = mask.count_ones();
            if size < best_size {
                best = Some(v);
                best_size = size;
                if size == 1 {
                    break;
                }
            }
        }
        best
    }

    fn descend(&mut self, remaining: usize) {
        if remaining == 0 {
            if !(self.visit)(&self.assigned) {
                self.stopped = true;
            }
            return;
        }
        let v = self.pick().expect("an unassigned variable remains");
        let mut values: Vec<u8> = (0..3u8).filter(|k| self.dom[v] & (1 << k) != 0).collect();
        if let Some(rng) = self.rng.as_mut() {
            values.shuffle(rng);
        }
        for k in values {
            if self.nodes >= self.budget {
                self.aborted = true;
                return;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            self.set_dom(v, 1 << k);
            self.assigned[v] = k;
            let ok = self.inst.occurs[v]
                .iter()
                .all(|&ci| self.revise(ci as usize));
            if ok {
                self.descend(remaining - 1);
            }
            self.assigned[v] = u8::MAX;
            self.undo(mark);
            if self.stopped || self.aborted {
                return;
            }
            self.backtracks += 1;
        }
    }
}

/// Samples a triplication table by randomized search over the table clauses
/// directly: row `d` holds three pairs `(u, u + d)`, element and sum
/// multiplicities are tracked with counters. Dead ends trigger a restart
/// with fresh random choices; the overall node budget bounds the work.
pub fn random_tt(m: u32, seed: u64, budget: u64) -> Result<TriplicationTable> {
    let q = require_odd_order(m)? as usize;
    if m < 5 {
        return Err(Error::InvalidInput(format!("random tables need m >= 5, got {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = 0u64;
    let per_restart = 64 * (m as u64) * (m as u64);
    while nodes < budget {
        let mut s = RandomFill {
            m,
            elem: vec![3u8; m as usize],
            sums: vec![3u8; m as usize],
            rows: vec![[0u32; 3]; q + 1],
            order: (1..=q).collect(),
            nodes: 0,
            limit: per_restart.min(budget - nodes),
        };
        s.elem[0] = 2;
        s.sums[0] = 2;
        let t = rng.gen_range(1..m);
        s.elem[t as usize] -= 2;
        s.sums[add_mod(t, t, m) as usize] -= 1;
        s.order.shuffle(&mut rng);
        let done = s.fill(0, &mut rng);
        nodes += s.nodes;
        if done {
            let mut pairs = vec![(t, t)];
            for d in 1..=q {
                let mut row: Vec<(u32, u32)> = s.rows[d]
                    .iter()
                    .map(|&u| (u, add_mod(u, d as u32, m)))
                    .collect();
                row.shuffle(&mut rng);
                pairs.extend(row);
            }
            return TriplicationTable::validate(m, pairs).map_err(|e| {
                Error::InternalVerificationFailure(format!("sampled table is invalid: {e}"))
            });
        }
    }
    Err(Error::Aborted { nodes })
}

struct RandomFill {
    m: u32,
    elem: Vec<u8>,
    sums: Vec<u8>,
    rows: Vec<[u32; 3]>,
    order: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl RandomFill {
    /// Fills slot `k` (row `order[k / 3]`, position `k % 3`).
    fn fill(&mut self, k: usize, rng: &mut ChaCha8Rng) -> bool {
        if k == 3 * self.order.len() {
            return true;
        }
        let m = self.m;
        let d = self.order[k / 3] as u32;
        let j = k % 3;
        // increasing u inside a row keeps the three pairs distinct
        let lo = if j == 0 { 0 } else { self.rows[d as usize][j - 1] + 1 };
        let mut cands: Vec<u32> = (lo..m)
            .filter(|&u| {
                let v = add_mod(u, d, m);
                self.elem[u as usize] > 0
                    && self.elem[v as usize] > 0
                    && self.sums[add_mod(u, v, m) as usize] > 0
            })
            .collect();
        cands.shuffle(rng);
        for u in cands {
            if self.nodes >= self.limit {
                return false;
            }
            self.nodes += 1;
            let v = add_mod(u, d, m);
            let s = add_mod(u, v, m) as usize;
            self.elem[u as usize] -= 1;
            self.elem[v as usize] -= 1;
            self.sums[s] -= 1;
            self.rows[d as usize][j] = u;
            if self.fill(k + 1, rng) {
                return true;
            }
            self.elem[u as usize] += 1;
            self.elem[v as usize] += 1;
            self.sums[s] += 1;
        }
        false
    }
}
