//! Published tables shared by the integration and acceptance tests.
#![allow(dead_code)]

pub type Pairs = &'static [(u32, u32)];
pub type Rows = &'static [&'static [(u32, u32)]];

pub fn rows(r: Rows) -> Vec<Vec<(u32, u32)>> {
    r.iter().map(|row| row.to_vec()).collect()
}

pub fn flat(r: Rows) -> Vec<(u32, u32)> {
    r.iter().flat_map(|row| row.iter().copied()).collect()
}

/// Sorted unordered form of a list of pairs.
pub fn unordered(p: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = p.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
    v.sort_unstable();
    v
}

// m = 7 one-starter template with key 3; row 2 repeats a pair.
pub const EX41_T: Pairs = &[(2, 3), (4, 6), (5, 1)];
pub const EX41_TEMPLATE_KEY3: Rows = &[
    &[(3, 3)],
    &[(2, 3), (5, 6), (0, 1)],
    &[(4, 6), (0, 2), (4, 6)],
    &[(5, 1), (1, 4), (2, 5)],
];
pub const EX41_KEYS: &[u32] = &[1, 2, 4];

// m = 7, one-starter table with key 1, Carry solution and its starter.
pub const EX_CARRY_T: Pairs = &[(2, 3), (4, 6), (1, 5)];
pub const EX_CARRY_TT: Rows = &[
    &[(1, 1)],
    &[(2, 3), (3, 4), (5, 6)],
    &[(4, 6), (5, 0), (2, 4)],
    &[(1, 5), (2, 6), (3, 0)],
];
pub const EX_CARRY_CT: Rows = &[
    &[(0, 1)],
    &[(2, 0), (2, 2), (2, 1)],
    &[(1, 2), (1, 2), (1, 0)],
    &[(2, 0), (0, 0), (1, 1)],
];
pub const EX_CARRY_STARTER: Rows = &[
    &[(1, 8)],
    &[(16, 3), (17, 18), (19, 13)],
    &[(11, 20), (12, 14), (9, 4)],
    &[(15, 5), (2, 6), (10, 7)],
];
pub const EX_CARRY_DELTA_ONES: &[usize] = &[1, 2, 3, 4, 6, 7, 8];
/// Weak indices with a summation carry.
pub const EX_CARRY_SIGMA_WEAK_ONES: &[usize] = &[2, 4];
pub const EX_CARRY_WEAK: &[(u32, &[usize])] = &[(0, &[2]), (3, &[4, 9]), (5, &[1, 5]), (6, &[6, 7])];
pub const EX_CARRY_STRONG: &[usize] = &[0, 3, 8];
/// Monochrome sets as (color, [(pair, is_v)]).
pub const EX_CARRY_MONO: &[(u32, &[(usize, bool)])] = &[
    (0, &[(5, true), (9, true)]),
    (1, &[(0, false), (0, true), (7, false)]),
    (2, &[(1, false), (6, false), (8, false)]),
    (3, &[(1, true), (2, false), (9, false)]),
    (4, &[(2, true), (4, false), (6, true)]),
    (5, &[(3, false), (5, false), (7, true)]),
    (6, &[(3, true), (4, true), (8, true)]),
];

// m = 15, one-starter table with key 4, Mod solution (r = 9) and the order-45 starter.
pub const EX45_T: Pairs = &[(3, 4), (12, 14), (7, 10), (2, 6), (8, 13), (5, 11), (9, 1)];
pub const EX45_TT: Rows = &[
    &[(4, 4)],
    &[(3, 4), (7, 8), (0, 1)],
    &[(12, 14), (1, 3), (5, 7)],
    &[(7, 10), (11, 14), (9, 12)],
    &[(2, 6), (6, 10), (13, 2)],
    &[(8, 13), (12, 2), (6, 11)],
    &[(5, 11), (9, 0), (8, 14)],
    &[(9, 1), (13, 5), (3, 10)],
];
pub const EX45_CT: Rows = &[
    &[(1, 7)],
    &[(3, 4), (1, 5), (6, 4)],
    &[(3, 5), (1, 0), (8, 4)],
    &[(7, 1), (5, 2), (6, 6)],
    &[(8, 3), (0, 7), (1, 2)],
    &[(8, 7), (0, 5), (6, 8)],
    &[(2, 2), (0, 3), (2, 8)],
    &[(3, 7), (4, 5), (6, 4)],
];
pub const EX45_STARTER: Rows = &[
    &[(19, 34)],
    &[(3, 4), (37, 23), (15, 31)],
    &[(12, 14), (1, 18), (35, 22)],
    &[(7, 10), (41, 29), (24, 42)],
    &[(17, 21), (36, 25), (28, 2)],
    &[(8, 43), (27, 32), (6, 26)],
    &[(20, 11), (9, 30), (38, 44)],
    &[(39, 16), (13, 5), (33, 40)],
];
pub const EX45_WEAK: &[(u32, &[usize])] = &[
    (0, &[2, 12]),
    (1, &[3, 11, 16]),
    (2, &[7, 15]),
    (6, &[9, 13]),
    (7, &[1, 18]),
    (8, &[0, 10]),
    (10, &[8, 19]),
];
pub const EX45_MONO: &[(u32, &[(usize, bool)])] = &[
    (0, &[(3, false), (17, true)]),
    (1, &[(3, true), (5, false), (19, true)]),
    (2, &[(10, false), (12, true), (14, true)]),
    (3, &[(1, false), (5, true), (21, false)]),
    (4, &[(0, false), (0, true), (1, true)]),
    (5, &[(6, false), (16, false), (20, true)]),
    (6, &[(10, true), (11, false), (15, false)]),
    (7, &[(2, false), (6, true), (7, false)]),
    (8, &[(2, true), (13, false), (18, false)]),
    (9, &[(9, false), (17, false), (19, false)]),
    (10, &[(7, true), (11, true), (21, true)]),
    (11, &[(8, false), (15, true), (16, true)]),
    (12, &[(4, false), (9, true), (14, false)]),
    (13, &[(12, false), (13, true), (20, false)]),
    (14, &[(4, true), (8, true), (18, true)]),
];
/// Residues mod 3 that the discriminators must have.
pub const EX45_RESIDUES_MOD3: Rows = &[
    &[(1, 1)],
    &[(0, 1), (1, 2), (0, 1)],
    &[(0, 2), (1, 0), (2, 1)],
    &[(1, 1), (2, 2), (0, 0)],
    &[(2, 0), (0, 1), (1, 2)],
    &[(2, 1), (0, 2), (0, 2)],
    &[(2, 2), (0, 0), (2, 2)],
    &[(0, 1), (1, 2), (0, 1)],
];

// m = 9 one-starter base: a starter that is not strong.
pub const EX27_T: Pairs = &[(5, 6), (2, 4), (7, 1), (8, 3)];
pub const EX27_KEYS: &[u32] = &[1, 3, 4, 5, 7];
/// Sample strong starters of order 27, one per admissible key.
pub const SS27: &[(u32, Pairs)] = &[
    (1, &[(19, 1), (23, 15), (6, 16), (4, 5), (20, 13), (3, 14), (24, 26), (10, 25), (2, 8), (21, 18), (12, 17), (22, 9), (11, 7)]),
    (3, &[(21, 12), (5, 6), (17, 9), (15, 25), (20, 4), (14, 7), (8, 10), (1, 16), (22, 19), (23, 2), (3, 26), (24, 11), (13, 18)]),
    (4, &[(4, 13), (14, 24), (18, 19), (7, 26), (2, 22), (6, 8), (9, 20), (1, 25), (23, 11), (15, 21), (3, 17), (16, 12), (5, 10)]),
    (5, &[(23, 14), (5, 24), (10, 20), (8, 9), (2, 22), (7, 18), (1, 3), (19, 16), (6, 12), (25, 13), (21, 26), (17, 4), (15, 11)]),
    (7, &[(7, 25), (14, 24), (12, 4), (10, 11), (20, 13), (18, 2), (21, 23), (19, 16), (17, 5), (9, 15), (3, 26), (1, 6), (8, 22)]),
];

// Epicycloidal bases over m = 7.
pub const EPI_T0: Pairs = &[(2, 3), (4, 6), (5, 1)];
pub const EPI_TEMPLATE_MU2_KEY3: Rows = &[
    &[(3, 3)],
    &[(2, 3), (4, 5), (1, 2)],
    &[(4, 6), (5, 0), (6, 1)],
    &[(5, 1), (6, 2), (4, 0)],
];
pub const EPI_CT_MU2_KEY3: Rows = &[
    &[(1, 0)],
    &[(0, 2), (1, 1), (0, 1)],
    &[(2, 1), (2, 2), (0, 1)],
    &[(0, 2), (2, 2), (0, 1)],
];
/// (μ, E(μ), [(key, ordered order-21 starter)]).
pub const EPI_TABLE: &[(u32, Pairs, &[(u32, Pairs)])] = &[
    (2, &[(1, 2), (2, 4), (3, 6)], &[
        (3, &[(10, 3), (9, 17), (4, 19), (15, 16), (11, 13), (5, 14), (6, 1), (12, 8), (20, 2), (18, 7)]),
        (5, &[(19, 12), (16, 17), (13, 7), (3, 11), (18, 6), (14, 9), (8, 10), (5, 1), (15, 4), (20, 2)]),
        (6, &[(20, 6), (2, 10), (14, 15), (18, 12), (11, 13), (1, 17), (16, 4), (5, 8), (9, 19), (7, 3)]),
    ]),
    (3, &[(4, 5), (1, 3), (5, 1)], &[
        (1, &[(15, 8), (16, 17), (12, 6), (10, 18), (11, 13), (9, 4), (19, 7), (5, 1), (20, 2), (14, 3)]),
        (2, &[(16, 2), (9, 3), (20, 7), (18, 19), (4, 13), (10, 5), (6, 8), (12, 1), (14, 17), (15, 11)]),
        (4, &[(4, 11), (2, 3), (15, 9), (20, 7), (18, 13), (5, 14), (8, 10), (19, 1), (16, 12), (17, 6)]),
    ]),
    (4, &[(5, 6), (3, 5), (1, 4)], &[
        (3, &[(3, 17), (9, 10), (15, 2), (11, 5), (4, 20), (6, 8), (19, 7), (12, 1), (18, 14), (13, 16)]),
        (5, &[(5, 19), (9, 17), (10, 4), (6, 7), (18, 13), (15, 3), (14, 16), (12, 8), (20, 2), (1, 11)]),
        (6, &[(6, 13), (9, 3), (11, 12), (7, 15), (18, 20), (16, 4), (1, 17), (19, 8), (14, 10), (2, 5)]),
    ]),
    (5, &[(2, 3), (4, 6), (6, 2)], &[
        (1, &[(1, 8), (9, 3), (17, 18), (12, 20), (4, 6), (5, 14), (16, 11), (19, 15), (7, 10), (13, 2)]),
        (2, &[(16, 2), (9, 10), (11, 19), (13, 7), (18, 6), (20, 15), (3, 5), (12, 1), (8, 4), (14, 17)]),
        (4, &[(4, 18), (16, 17), (20, 14), (1, 9), (11, 13), (15, 3), (12, 7), (19, 8), (10, 6), (2, 5)]),
    ]),
];
/// m = 13 epicycloidal base with fewer than (m-1)/2 keys.
pub const EPI13_T0: Pairs = &[(3, 4), (6, 8), (9, 12), (10, 1), (2, 7), (5, 11)];
pub const EPI13_MU: u32 = 3;
pub const EPI13_KEYS: &[u32] = &[4, 10, 12];

// A strong starter of order 21 whose reduction mod 7 is not a template table,
// the table it induces, and two Mod solutions of that table.
pub const WILD_S: Pairs = &[(13, 12), (19, 17), (7, 4), (10, 14), (15, 20), (3, 9), (1, 8), (5, 18), (11, 2), (16, 6)];
pub const WILD_TT: Rows = &[
    &[(1, 1)],
    &[(5, 6), (2, 3), (4, 5)],
    &[(3, 5), (2, 4), (6, 1)],
    &[(6, 2), (4, 0), (0, 3)],
];
pub const WILD_CT_A: Rows = &[
    &[(1, 2)],
    &[(0, 1), (0, 0), (0, 2)],
    &[(2, 1), (2, 2), (2, 0)],
    &[(0, 1), (1, 1), (2, 1)],
];
pub const WILD_STARTER_A: Rows = &[
    &[(1, 8)],
    &[(12, 13), (9, 3), (18, 5)],
    &[(17, 19), (2, 11), (20, 15)],
    &[(6, 16), (4, 7), (14, 10)],
];
pub const WILD_CT_B: Rows = &[
    &[(2, 0)],
    &[(0, 0), (2, 1), (0, 1)],
    &[(0, 2), (0, 1), (1, 1)],
    &[(2, 1), (2, 2), (1, 2)],
];
pub const WILD_STARTER_B: Rows = &[
    &[(8, 15)],
    &[(12, 6), (2, 10), (18, 19)],
    &[(3, 5), (9, 4), (13, 1)],
    &[(20, 16), (11, 14), (7, 17)],
];

// Tables whose Sudoku problem has no solution.
pub const UNSAT_11: Rows = &[
    &[(7, 7)],
    &[(1, 2), (10, 0), (7, 8)],
    &[(4, 6), (3, 5), (1, 3)],
    &[(6, 9), (1, 4), (10, 2)],
    &[(6, 10), (5, 9), (4, 8)],
    &[(0, 5), (8, 2), (9, 3)],
];
pub const UNSAT_13: Rows = &[
    &[(10, 10)],
    &[(3, 4), (10, 11), (4, 5)],
    &[(9, 11), (3, 5), (12, 1)],
    &[(1, 4), (8, 11), (5, 8)],
    &[(2, 6), (9, 0), (3, 7)],
    &[(2, 7), (9, 1), (7, 12)],
    &[(2, 8), (6, 12), (0, 6)],
];

// Four pairwise disjoint strong starters of order 11.
pub const R11: [Pairs; 4] = [
    &[(1, 2), (7, 9), (3, 6), (4, 8), (5, 10)],
    &[(2, 3), (5, 7), (6, 9), (8, 1), (10, 4)],
    &[(9, 10), (2, 4), (5, 8), (3, 7), (1, 6)],
    &[(8, 9), (4, 6), (2, 5), (10, 3), (7, 1)],
];
/// Triples (1-based) with no admissible key.
pub const R11_EMPTY: &[[usize; 3]] = &[[1, 2, 3], [1, 2, 4], [3, 1, 4], [3, 2, 4]];

// Four strong starters of order 19 and the admissible keys of each triple.
pub const S19: [Pairs; 4] = [
    &[(15, 16), (4, 6), (10, 13), (8, 12), (2, 7), (14, 1), (17, 5), (3, 11), (9, 18)],
    &[(2, 3), (16, 18), (14, 17), (5, 9), (6, 11), (7, 13), (8, 15), (4, 12), (1, 10)],
    &[(13, 14), (8, 10), (2, 5), (16, 1), (4, 9), (11, 17), (18, 6), (7, 15), (3, 12)],
    &[(11, 12), (4, 6), (17, 1), (9, 13), (3, 8), (10, 16), (14, 2), (18, 7), (15, 5)],
];
/// Rows of the published key table: (triple, crosses, printed count).
pub const S19_KEYS: &[([usize; 3], &[u32], usize)] = &[
    ([1, 1, 2], &[1, 2, 4, 5, 6, 10, 11, 12, 14, 16, 17], 11),
    ([1, 1, 3], &[1, 4, 5, 7, 9, 10, 12, 13, 14, 16], 10),
    ([1, 1, 4], &[], 0),
    ([2, 2, 1], &[2, 3, 5, 7, 8, 9, 13, 14, 15, 17, 18], 10),
    ([2, 2, 3], &[1, 3, 4, 5, 6, 7, 10, 11, 13, 14, 18], 11),
    ([2, 2, 4], &[1, 2, 4, 6, 7, 8, 9, 11, 14, 17, 18], 11),
    ([3, 3, 1], &[3, 5, 6, 7, 9, 10, 12, 14, 15, 18], 10),
    ([3, 3, 2], &[1, 5, 6, 8, 9, 12, 13, 14, 15, 16, 18], 11),
    ([3, 3, 4], &[3, 5, 6, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18], 13),
    ([4, 4, 1], &[], 0),
    ([4, 4, 2], &[1, 2, 5, 8, 10, 11, 12, 13, 15, 17, 18], 11),
    ([4, 4, 3], &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 13, 14, 16], 13),
    ([1, 2, 3], &[1, 4, 5, 10, 12, 14, 16], 7),
    ([1, 2, 4], &[1, 2, 5, 6, 10, 11, 14, 16, 17], 9),
    ([1, 3, 4], &[1, 5, 7, 9, 10, 14, 16], 7),
    ([2, 1, 3], &[3, 5, 7, 13, 14, 18], 6),
    ([2, 1, 4], &[], 0),
    ([2, 3, 4], &[1, 4, 6, 7, 11, 14, 18], 7),
    ([3, 1, 2], &[5, 6, 9, 12, 14, 15, 18], 7),
    ([3, 1, 4], &[], 0),
    ([3, 2, 4], &[5, 6, 9, 12, 13, 14, 15, 16, 18], 9),
    ([4, 1, 2], &[2, 5, 8, 10, 11, 12, 13, 17, 18], 9),
    ([4, 1, 3], &[2, 3, 4, 5, 8, 9, 10, 13, 14], 9),
    ([4, 2, 3], &[1, 2, 5, 8, 10, 13], 6),
];

// Order-13 strong starters sharing pairs.
pub const R13: Pairs = &[(3, 4), (6, 8), (9, 12), (10, 1), (2, 7), (5, 11)];
pub const S13: Pairs = &[(3, 4), (5, 7), (9, 12), (10, 1), (6, 11), (2, 8)];
pub const T13: Pairs = &[(9, 10), (5, 7), (1, 4), (12, 3), (6, 11), (2, 8)];
pub const SRT_KEYS: &[u32] = &[1, 2, 3, 5, 6, 9];
