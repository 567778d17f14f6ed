//! Exact integer arithmetic in `Z_n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z_n`, always stored reduced into `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u32,
    modulus: u32,
}

impl Residue {
    /// Reduces an arbitrary integer into `Z_modulus`.
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Residue {
            value: reduce(value, modulus),
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Residue> {
        mod_inverse(self.value as i64, self.modulus as i64)
            .map(|inv| Residue::new(inv, self.modulus))
    }
}

impl Add for Residue {
    type Output = Residue;

    fn add(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue::new(self.value as i64 + other.value as i64, self.modulus)
    }
}

impl Sub for Residue {
    type Output = Residue;

    fn sub(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue::new(self.value as i64 - other.value as i64, self.modulus)
    }
}

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        Residue::new(-(self.value as i64), self.modulus)
    }
}

impl Mul for Residue {
    type Output = Residue;

    fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue::new(self.value as i64 * other.value as i64, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Least nonnegative representative of `value` modulo `modulus`.
#[inline]
pub fn reduce(value: i64, modulus: u32) -> u32 {
    value.rem_euclid(modulus as i64) as u32
}

#[inline]
pub fn add_mod(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 + b as u64) % m as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, m: u32) -> u32 {
    reduce(a as i64 - b as i64, m)
}

#[inline]
pub fn neg_mod(a: u32, m: u32) -> u32 {
    reduce(-(a as i64), m)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m <= 0 {
        return None;
    }
    let (g, x, _) = extended_gcd(a.rem_euclid(m), m);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m))
}

/// Writes `m = 3^nu * p` with `3 ∤ p`.
pub fn three_adic_split(m: u32) -> (u32, u32) {
    assert!(m > 0);
    let mut nu = 0;
    let mut p = m;
    while p % 3 == 0 {
        p /= 3;
        nu += 1;
    }
    (nu, p)
}

/// Checks that `m` is an odd integer of at least 3.
pub fn require_odd_order(m: u32) -> Result<u32> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "order must be odd and at least 3, got {m}"
        )));
    }
    Ok((m - 1) / 2)
}
