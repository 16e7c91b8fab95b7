//! Exact polynomials and the factorization identities for rook numbers.
//!
//! For a board with `N >= max(columns, levels)`:
//!
//! ```text
//! sum_k r_k(B) * x(x-m)...(x-(N-k-1)m) = prod_{i=1..N} (x + l_{N-i+1} - (i-1)m)
//! ```
//!
//! and for singleton boards the right side also equals
//! `prod_{i=1..N} (x + b_i - (i-1)m)` with `B` left-padded to `N` columns.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Deserializer;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::board::FerrersBoard;
use crate::error::{Result, RookError};
use crate::placement;

/// A polynomial in `q` with non-negative integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<usize, BigUint>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Generating function of a list of exponents: one `q^e` per entry.
    pub fn from_exponents(exponents: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zero();
        for e in exponents {
            p.add_term(e, BigUint::one());
        }
        p
    }

    pub fn add_term(&mut self, exponent: usize, coefficient: BigUint) {
        if coefficient.is_zero() {
            return;
        }
        *self.coeffs.entry(exponent).or_default() += coefficient;
    }

    pub fn coefficient(&self, exponent: usize) -> BigUint {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    /// Non-zero `(exponent, coefficient)` pairs, lowest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_at_one(&self) -> BigUint {
        self.coeffs.values().sum()
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&e, c)| monomial(&c.to_string(), "q", e))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A polynomial in `x` with integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: BTreeMap<usize, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c.into());
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `x + c`.
    pub fn linear(c: impl Into<BigInt>) -> Self {
        let mut p = Self::constant(c);
        p.add_term(1, BigInt::one());
        p
    }

    /// Coefficients lowest degree first; the zero polynomial gives `[]`.
    pub fn from_coefficients(coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut p = Self::zero();
        for (e, c) in coeffs.into_iter().enumerate() {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: usize, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_default();
        *entry += coefficient;
        if entry.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn coefficient(&self, exponent: usize) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Dense coefficient list, lowest degree first.
    pub fn coefficients(&self) -> Vec<BigInt> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|e| self.coefficient(e)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.coeffs {
            out.add_term(e, c * factor);
        }
        out
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients()
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let body = monomial(&c.abs().to_string(), "x", e);
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

fn monomial(coefficient: &str, var: &str, e: usize) -> String {
    let power = match e {
        0 => return coefficient.to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    };
    if coefficient == "1" {
        power
    } else {
        format!("{coefficient}{power}")
    }
}

/// JSON coefficient: a number when it fits in 64 bits, otherwise a decimal string.
#[derive(Deserialize)]
#[serde(untagged)]
enum JsonCoefficient {
    Int(i64),
    Text(String),
}

impl JsonCoefficient {
    fn into_bigint(self) -> std::result::Result<BigInt, String> {
        match self {
            JsonCoefficient::Int(v) => Ok(BigInt::from(v)),
            JsonCoefficient::Text(s) => s.parse().map_err(|_| format!("bad coefficient {s:?}")),
        }
    }
}

fn serialize_coeffs<'a, S: Serializer>(
    entries: impl ExactSizeIterator<Item = (usize, BigInt)> + 'a,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut map = serializer.serialize_map(Some(entries.len()))?;
    for (e, c) in entries {
        match c.to_i64() {
            Some(v) => map.serialize_entry(&e.to_string(), &v)?,
            None => map.serialize_entry(&e.to_string(), &c.to_string())?,
        }
    }
    map.end()
}

fn deserialize_coeffs<'de, D: Deserializer<'de>>(
    deserializer: D,
) -> std::result::Result<Vec<(usize, BigInt)>, D::Error> {
    use serde::de::Error;
    let raw = BTreeMap::<String, JsonCoefficient>::deserialize(deserializer)?;
    raw.into_iter()
        .map(|(k, v)| {
            let e = k
                .parse::<usize>()
                .map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            Ok((e, v.into_bigint().map_err(D::Error::custom)?))
        })
        .collect()
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_coeffs(self.coeffs.iter().map(|(&e, c)| (e, c.clone())), serializer)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let mut p = IntPolynomial::zero();
        for (e, c) in deserialize_coeffs(deserializer)? {
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_coeffs(
            self.coeffs.iter().map(|(&e, c)| (e, BigInt::from(c.clone()))),
            serializer,
        )
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let mut p = QPolynomial::zero();
        for (e, c) in deserialize_coeffs(deserializer)? {
            let c = c.to_biguint().ok_or_else(|| D::Error::custom("negative coefficient"))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// `x(x-m)(x-2m)...(x-(k-1)m)`; the empty product for `k = 0`.
pub fn falling_factorial(k: usize, m: usize) -> IntPolynomial {
    (0..k).fold(IntPolynomial::one(), |acc, j| {
        &acc * &IntPolynomial::linear(-((j * m) as i64))
    })
}

/// Smallest `N` accepted by the factorization identities.
pub fn default_n(board: &FerrersBoard, m: usize) -> usize {
    board.num_columns().max(board.num_levels(m))
}

fn check_budget(board: &FerrersBoard, m: usize, n: usize) -> Result<()> {
    let needed = default_n(board, m);
    if n < needed {
        return Err(RookError::BudgetTooSmall { needed, given: n });
    }
    Ok(())
}

/// `sum_{k=0..N} r_k(B) * x_(N-k, m)`, rook numbers by enumeration.
pub fn rook_side(board: &FerrersBoard, m: usize, n: usize) -> Result<IntPolynomial> {
    check_budget(board, m, n)?;
    let counts = placement::rook_numbers(board, m);
    let mut out = IntPolynomial::zero();
    for (k, &r) in counts.iter().enumerate() {
        out = &out + &falling_factorial(n - k, m).scaled(&BigInt::from(r));
    }
    Ok(out)
}

/// `prod_{i=1..N} (x + l_{N-i+1} - (i-1)m)` with `l_p = 0` past the last level.
pub fn level_product_side(board: &FerrersBoard, m: usize, n: usize) -> Result<IntPolynomial> {
    check_budget(board, m, n)?;
    let counts = board.level_counts(m);
    let l = |p: usize| counts.get(p - 1).copied().unwrap_or(0) as i64;
    Ok((1..=n).fold(IntPolynomial::one(), |acc, i| {
        &acc * &IntPolynomial::linear(l(n - i + 1) - ((i - 1) * m) as i64)
    }))
}

/// `prod_{i=1..N} (x + b_i - (i-1)m)` for a singleton board padded to `N` columns.
pub fn root_product_side(board: &FerrersBoard, m: usize, n: usize) -> Result<IntPolynomial> {
    if !board.is_singleton(m) {
        return Err(RookError::NotSingleton);
    }
    check_budget(board, m, n)?;
    let padded = board.padded_to(n)?;
    Ok(padded
        .heights()
        .iter()
        .enumerate()
        .fold(IntPolynomial::one(), |acc, (i, &b)| {
            &acc * &IntPolynomial::linear(b as i64 - (i * m) as i64)
        }))
}

/// Same m-level rook numbers, decided by comparing m-increasing representatives.
pub fn are_equivalent(a: &FerrersBoard, b: &FerrersBoard, m: usize) -> Result<bool> {
    Ok(a.m_increasing_representative(m)?.0 == b.m_increasing_representative(m)?.0)
}
