//! Discrimination scenarios: how an element `x` of `Z_{3m}` is split into
//! its residue `u = x mod m` and a discriminator `U` that tells the three
//! lifts of `u` apart.
//!
//! * `Mod`: `U = x mod 3^(ν+1)` where `m = 3^ν p`, `3 ∤ p`.
//! * `Carry`: `U = ⌊x / m⌋ ∈ {0, 1, 2}`.
//!
//! Both satisfy `f(0) = 0`, and in both every residue `u` admits exactly three
//! discriminators, so a table of discriminators can always be searched as a
//! ternary selector per cell.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{require_odd_order, three_adic_split};
use crate::recovery::{crt_general, CrtProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Mod,
    Carry,
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::Mod => "mod",
            ScenarioKind::Carry => "carry",
        })
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mod" => Ok(ScenarioKind::Mod),
            "carry" => Ok(ScenarioKind::Carry),
            other => Err(Error::InvalidInput(format!(
                "unknown scenario {other:?}; expected mod or carry"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scenario {
    kind: ScenarioKind,
    m: u32,
    nu: u32,
    /// `3^ν`
    step: u32,
    r: u32,
}

/// `(u, U)` with `u ∈ Z_m` and `U` a discriminator in `Z_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Encoded {
    pub u: u32,
    pub big_u: u32,
}

impl Encoded {
    pub fn new(u: u32, big_u: u32) -> Self {
        Encoded { u, big_u }
    }
}

/// `[u - v < 0]` over the integers.
#[inline]
pub fn difference_carry(u: u32, v: u32) -> u8 {
    u8::from(u < v)
}

/// `[u + v >= m]` over the integers.
#[inline]
pub fn summation_carry(u: u32, v: u32, m: u32) -> u8 {
    u8::from(u + v >= m)
}

impl Scenario {
    pub fn new(kind: ScenarioKind, m: u32) -> Result<Self> {
        require_odd_order(m)?;
        let (nu, _) = three_adic_split(m);
        let step = 3u32.pow(nu);
        let r = match kind {
            ScenarioKind::Mod => 3 * step,
            ScenarioKind::Carry => 3,
        };
        Ok(Scenario {
            kind,
            m,
            nu,
            step,
            r,
        })
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Exponent of 3 in `m`.
    pub fn nu(&self) -> u32 {
        self.nu
    }

    /// Size of the discriminator range `Z_r`.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// The order `3m` of the group being encoded.
    pub fn order(&self) -> u32 {
        3 * self.m
    }

    /// The discriminating function `f`.
    pub fn discriminator(&self, x: u32) -> u32 {
        debug_assert!(x < self.order());
        match self.kind {
            ScenarioKind::Mod => x % self.r,
            ScenarioKind::Carry => x / self.m,
        }
    }

    pub fn encode(&self, x: u32) -> Result<Encoded> {
        if x >= self.order() {
            return Err(Error::InvalidInput(format!(
                "{x} is outside Z_{}",
                self.order()
            )));
        }
        Ok(Encoded {
            u: x % self.m,
            big_u: self.discriminator(x),
        })
    }

    /// Membership in the range `Ω` of the encoding.
    pub fn contains(&self, e: Encoded) -> bool {
        e.u < self.m
            && e.big_u < self.r
            && match self.kind {
                ScenarioKind::Mod => e.big_u % self.step == e.u % self.step,
                ScenarioKind::Carry => true,
            }
    }

    /// Inverse of [`Scenario::encode`] on `Ω`.
    pub fn decode(&self, e: Encoded) -> Result<u32> {
        if e.u >= self.m || e.big_u >= self.r {
            return Err(Error::InvalidInput(format!(
                "({}, {}) is outside Z_{} x Z_{}",
                e.u, e.big_u, self.m, self.r
            )));
        }
        match self.kind {
            ScenarioKind::Carry => Ok(self.m * e.big_u + e.u),
            ScenarioKind::Mod => {
                let x = crt_general(CrtProblem::new(
                    e.u as u64,
                    self.m as u64,
                    e.big_u as u64,
                    self.r as u64,
                ))?;
                Ok(x as u32)
            }
        }
    }

    /// `U ⊟ V = f(F(a) - F(b))`. The carry bit is `[a.u < b.u]`; it is
    /// ignored by the Mod scenario.
    pub fn box_sub(&self, a: Encoded, b: Encoded, carry: u8) -> u32 {
        match self.kind {
            ScenarioKind::Mod => (a.big_u + self.r - b.big_u) % self.r,
            ScenarioKind::Carry => (a.big_u + 6 - b.big_u - carry as u32) % 3,
        }
    }

    /// `U ⊞ V = f(F(a) + F(b))`. The carry bit is `[a.u + b.u >= m]`; it is
    /// ignored by the Mod scenario.
    pub fn box_add(&self, a: Encoded, b: Encoded, carry: u8) -> u32 {
        match self.kind {
            ScenarioKind::Mod => (a.big_u + b.big_u) % self.r,
            ScenarioKind::Carry => (a.big_u + b.big_u + carry as u32) % 3,
        }
    }

    /// The three discriminators compatible with residue `u`, indexed by a
    /// ternary selector `k`: Mod gives `u + k·3^ν mod 3^(ν+1)`, Carry gives `k`.
    pub fn variable_domain(&self, u: u32) -> [u32; 3] {
        match self.kind {
            ScenarioKind::Mod => {
                let base = u % self.r;
                [
                    base,
                    (base + self.step) % self.r,
                    (base + 2 * self.step) % self.r,
                ]
            }
            ScenarioKind::Carry => [0, 1, 2],
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m = {}, r = {})", self.kind, self.m, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(kind: ScenarioKind, m: u32) -> Scenario {
        Scenario::new(kind, m).unwrap()
    }

    #[test]
    fn parameters() {
        let s = sc(ScenarioKind::Mod, 15);
        assert_eq!((s.nu(), s.r()), (1, 9));
        assert_eq!(sc(ScenarioKind::Mod, 7).r(), 3);
        assert_eq!(sc(ScenarioKind::Mod, 45).r(), 27);
        assert_eq!(sc(ScenarioKind::Carry, 45).r(), 3);
        assert!(Scenario::new(ScenarioKind::Mod, 8).is_err());
    }

    #[test]
    fn encode_examples() {
        assert_eq!(sc(ScenarioKind::Mod, 7).encode(8).unwrap(), Encoded::new(1, 2));
        assert_eq!(sc(ScenarioKind::Mod, 15).encode(16).unwrap(), Encoded::new(1, 7));
        assert_eq!(sc(ScenarioKind::Carry, 15).encode(16).unwrap(), Encoded::new(1, 1));
        assert!(sc(ScenarioKind::Carry, 7).encode(21).is_err());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(sc(ScenarioKind::Mod, 7).decode(Encoded::new(1, 2)).unwrap(), 8);
        assert_eq!(sc(ScenarioKind::Mod, 15).decode(Encoded::new(1, 7)).unwrap(), 16);
        assert!(matches!(
            sc(ScenarioKind::Mod, 15).decode(Encoded::new(1, 3)),
            Err(Error::IncompatibleResidues { .. })
        ));
    }

    #[test]
    fn mod_discrimination_table_rows() {
        // x = u, u + m, u + 2m and their discriminators
        let s7 = sc(ScenarioKind::Mod, 7);
        let rows7 = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 1, 2]];
        for (u, want) in rows7.iter().enumerate() {
            let got: Vec<u32> = (0..3).map(|k| s7.discriminator(u as u32 + 7 * k)).collect();
            assert_eq!(got, want);
        }
        let s15 = sc(ScenarioKind::Mod, 15);
        let rows15 = [(0, [0, 6, 3]), (1, [1, 7, 4]), (2, [2, 8, 5]), (3, [3, 0, 6]), (4, [4, 1, 7]), (14, [5, 2, 8])];
        for (u, want) in rows15 {
            let got: Vec<u32> = (0..3).map(|k| s15.discriminator(u + 15 * k)).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn box_examples() {
        let m7 = sc(ScenarioKind::Mod, 7);
        assert_eq!(m7.box_sub(Encoded::new(2, 2), Encoded::new(3, 0), 0), 2);
        let c7 = sc(ScenarioKind::Carry, 7);
        assert_eq!(c7.box_sub(Encoded::new(2, 2), Encoded::new(3, 0), 1), 1);
        assert_eq!(c7.box_add(Encoded::new(3, 2), Encoded::new(4, 2), 1), 2);
        assert_eq!(c7.box_add(Encoded::new(2, 2), Encoded::new(3, 0), 0), 2);
        assert_eq!(c7.box_add(Encoded::new(0, 0), Encoded::new(0, 0), 0), 0);
        let a = Encoded::new(4, 1);
        assert_eq!(c7.box_sub(a, a, 0), 0);
        assert_eq!(m7.box_sub(a, a, 0), 0);
    }

    #[test]
    fn domains() {
        let mut d = sc(ScenarioKind::Mod, 15).variable_domain(3).to_vec();
        d.sort_unstable();
        assert_eq!(d, vec![0, 3, 6]);
        for u in 0..7 {
            let mut d = sc(ScenarioKind::Mod, 7).variable_domain(u).to_vec();
            d.sort_unstable();
            assert_eq!(d, vec![0, 1, 2]);
            assert_eq!(sc(ScenarioKind::Carry, 7).variable_domain(u), [0, 1, 2]);
        }
    }

    #[test]
    fn parse_kind() {
        assert_eq!("Mod".parse::<ScenarioKind>().unwrap(), ScenarioKind::Mod);
        assert_eq!("carry".parse::<ScenarioKind>().unwrap(), ScenarioKind::Carry);
        assert!("crt".parse::<ScenarioKind>().is_err());
    }
}
