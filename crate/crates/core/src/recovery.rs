//! Recovering strong starters of order `3m` from a table and a congruous
//! discriminator table, plus the CRT for non-coprime moduli that the Mod
//! scenario decodes with.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{gcd, mod_inverse};
use crate::msp::{check_congruous, CongruousTable};
use crate::pairing::Pairing;
use crate::scenario::Scenario;
use crate::table::{induce_from_starter, TriplicationTable};

/// `x ≡ u (mod m)`, `x ≡ U (mod h)`; solvable iff `u ≡ U (mod gcd(m, h))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrtProblem {
    pub u: u64,
    pub m: u64,
    pub big_u: u64,
    pub h: u64,
}

impl CrtProblem {
    pub fn new(u: u64, m: u64, big_u: u64, h: u64) -> Self {
        CrtProblem { u, m, big_u, h }
    }

    pub fn d(&self) -> u64 {
        gcd(self.m, self.h)
    }

    /// `lcm(m, h)`, the modulus of the answer.
    pub fn n(&self) -> u64 {
        self.m / self.d() * self.h
    }

    pub fn is_compatible(&self) -> bool {
        let d = self.d();
        self.u % d == self.big_u % d
    }
}

/// Unique `x ∈ [0, lcm(m, h))` with `x ≡ u (mod m)` and `x ≡ U (mod h)`.
///
/// With `d = gcd(m, h)` and `ū = u mod d`, both `(u - ū)/d` and `(U - ū)/d`
/// are integers; `x' ` solves the coprime system modulo `m/d` and `h/d`, and
/// `x = ū + d·x'`.
pub fn crt_general(p: CrtProblem) -> Result<u64> {
    if p.m == 0 || p.h == 0 {
        return Err(Error::InvalidInput("CRT moduli must be positive".into()));
    }
    let (u, big_u) = (p.u % p.m, p.big_u % p.h);
    let d = p.d();
    if u % d != big_u % d {
        return Err(Error::IncompatibleResidues {
            u,
            m: p.m,
            big_u,
            h: p.h,
            d,
        });
    }
    let u_bar = u % d;
    let (m1, h1) = (p.m / d, p.h / d);
    let a = (u - u_bar) / d;
    let b = (big_u - u_bar) / d;
    // x' = a + m1 * k with m1 * k ≡ b - a (mod h1)
    let x_prime = if h1 == 1 {
        a
    } else {
        let inv = mod_inverse((m1 % h1) as i64, h1 as i64).expect("m/d and h/d are coprime") as i128;
        let k = ((b as i128 - a as i128) * inv).rem_euclid(h1 as i128);
        (a as i128 + m1 as i128 * k) as u64
    };
    Ok((u_bar + d * x_prime) % p.n())
}

/// A recovered starter in both forms: table-index order, and canonical
/// unordered form for deduplication across solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveredStarter {
    pub ordered: Pairing,
    pub unordered: Vec<(u32, u32)>,
}

/// Combines a table with a congruous discriminator table: `x_i = F(u_i, U_i)`,
/// `y_i = F(v_i, V_i)`. The result is re-verified as a strong starter.
pub fn recover_starter(
    tt: &TriplicationTable,
    ct: &CongruousTable,
    sc: &Scenario,
) -> Result<RecoveredStarter> {
    let report = check_congruous(tt, ct, sc);
    if !report.is_congruous() {
        return Err(Error::NotCongruous(report.violations.join("; ")));
    }
    let pairs = decode_pairs(tt, ct, sc)?;
    let ordered = Pairing::new(sc.order(), pairs)?;
    let class = ordered.classify();
    if !class.is_strong() {
        return Err(Error::InternalVerificationFailure(format!(
            "recovered pairing {ordered} is {}: {}",
            class.kind,
            class.witness.unwrap_or_default()
        )));
    }
    let unordered = ordered.canonical_unordered();
    Ok(RecoveredStarter { ordered, unordered })
}

fn decode_pairs(tt: &TriplicationTable, ct: &CongruousTable, sc: &Scenario) -> Result<Vec<(u32, u32)>> {
    tt.pairs()
        .iter()
        .zip(ct.values())
        .map(|(&(u, v), &(big_u, big_v))| {
            Ok((
                sc.decode(crate::scenario::Encoded::new(u, big_u))?,
                sc.decode(crate::scenario::Encoded::new(v, big_v))?,
            ))
        })
        .collect()
}

/// Splits a strong starter of order `3m` into its induced table and the
/// aligned discriminator table in the given scenario.
pub fn round_trip(s: &Pairing, sc: &Scenario) -> Result<(TriplicationTable, CongruousTable)> {
    let induced = induce_from_starter(s)?;
    if induced.table.m() != sc.m() {
        return Err(Error::ScenarioMismatch {
            scenario_m: sc.m(),
            table_m: induced.table.m(),
        });
    }
    let values = induced
        .aligned
        .pairs()
        .iter()
        .map(|&(x, y)| (sc.discriminator(x), sc.discriminator(y)))
        .collect();
    let ct = CongruousTable::new(sc.kind(), sc.r(), values);
    Ok((induced.table, ct))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let x = crt_general(CrtProblem::new(22, 45, 13, 27)).unwrap();
        assert_eq!(x, 67);
        assert_eq!(CrtProblem::new(22, 45, 13, 27).n(), 135);
    }

    #[test]
    fn small_examples() {
        assert_eq!(crt_general(CrtProblem::new(1, 7, 2, 3)).unwrap(), 8);
        assert_eq!(crt_general(CrtProblem::new(0, 7, 0, 3)).unwrap(), 0);
        assert_eq!(crt_general(CrtProblem::new(0, 45, 0, 27)).unwrap(), 0);
        assert!(matches!(
            crt_general(CrtProblem::new(1, 15, 3, 9)),
            Err(Error::IncompatibleResidues { d: 3, .. })
        ));
    }

    #[test]
    fn agrees_with_scan() {
        for m in 1u64..=30 {
            for h in 1u64..=30 {
                let n = m / gcd(m, h) * h;
                for u in 0..m {
                    for big_u in 0..h {
                        let scan = (0..n).find(|x| x % m == u && x % h == big_u);
                        let got = crt_general(CrtProblem::new(u, m, big_u, h)).ok();
                        assert_eq!(got, scan, "u={u} m={m} U={big_u} h={h}");
                    }
                }
            }
        }
    }
}
