use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of Z[ζ_p], stored in the basis {1, ζ, ..., ζ^{p-2}}.
///
/// The relation 1 + ζ + ... + ζ^{p-1} = 0 makes this basis canonical, so
/// equality is coefficient-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt { p, coeffs: vec![0; (p - 1) as usize] }
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n;
        z
    }

    /// `n·ζ^k`.
    pub fn monomial(p: u32, n: i64, k: u32) -> Self {
        let mut counts = vec![0i64; p as usize];
        counts[(k % p) as usize] = n;
        Self::from_exponent_counts(p, &counts).expect("single term cannot overflow")
    }

    /// Builds Σ counts[k]·ζ^k from a length-p vector indexed by exponent.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Result<Self> {
        assert_eq!(counts.len(), p as usize);
        let top = counts[(p - 1) as usize];
        let coeffs = counts[..(p - 1) as usize]
            .iter()
            .map(|&c| c.checked_sub(top).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycInt { p, coeffs })
    }

    /// Constructs from canonical coefficients c_0..c_{p-2}.
    pub fn from_coeffs(p: u32, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), (p - 1) as usize, "need p-1 coefficients");
        CycInt { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer this equals, if it lies in Z.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    fn check_p(&self, other: &CycInt) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("ζ_{} vs ζ_{}", self.p, other.p)))
        }
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check_p(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_neg(&self) -> Result<CycInt> {
        self.checked_scale(-1)
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_scale(&self, k: i64) -> Result<CycInt> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check_p(other)?;
        let p = self.p as usize;
        let mut counts = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(Error::Overflow)?;
                let slot = &mut counts[(i + j) % p];
                *slot = slot.checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Self::from_exponent_counts(self.p, &counts)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conjugate(&self) -> CycInt {
        let p = self.p as usize;
        let mut counts = vec![0i64; p];
        for (k, &c) in self.coeffs.iter().enumerate() {
            counts[(p - k) % p] = c;
        }
        Self::from_exponent_counts(self.p, &counts).expect("conjugation preserves magnitudes")
    }

    /// Exact division by a rational integer, if every coefficient is divisible.
    pub fn div_exact(&self, d: i64) -> Option<CycInt> {
        if d == 0 || self.coeffs.iter().any(|c| c % d != 0) {
            return None;
        }
        Some(CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c / d).collect() })
    }
}

impl std::ops::Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.checked_add(rhs).expect("CycInt addition")
    }
}

impl std::ops::Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.checked_mul(rhs).expect("CycInt multiplication")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => c.to_string(),
                _ => format!("{c}z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// A character value that is either zero or q^m·ζ_p^k.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    Unit { q_exp: u32, zeta_exp: u32 },
}

impl CharValue {
    pub const ONE: CharValue = CharValue::Unit { q_exp: 0, zeta_exp: 0 };

    pub fn is_zero(&self) -> bool {
        matches!(self, CharValue::Zero)
    }

    pub fn conjugate(self, p: u32) -> CharValue {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Unit { q_exp, zeta_exp } => {
                CharValue::Unit { q_exp, zeta_exp: (p - zeta_exp % p) % p }
            }
        }
    }

    /// Expands into Z[ζ_p].
    pub fn to_cyc(self, q: u32, p: u32) -> Result<CycInt> {
        match self {
            CharValue::Zero => Ok(CycInt::zero(p)),
            CharValue::Unit { q_exp, zeta_exp } => {
                let mag = (q as i64).checked_pow(q_exp).ok_or(Error::Overflow)?;
                Ok(CycInt::monomial(p, mag, zeta_exp))
            }
        }
    }

    /// The value as an integer when it is real-rational (ζ^k = ±1).
    pub fn as_integer(self, q: u32, p: u32) -> Option<i64> {
        match self {
            CharValue::Zero => Some(0),
            CharValue::Unit { q_exp, zeta_exp } => {
                let mag = (q as i64).checked_pow(q_exp)?;
                match zeta_exp % p {
                    0 => Some(mag),
                    k if p == 2 && k == 1 => Some(-mag),
                    _ => None,
                }
            }
        }
    }

    /// Renders as `q^m*z^k` (or `0`).
    pub fn to_power_string(self) -> String {
        match self {
            CharValue::Zero => "0".into(),
            CharValue::Unit { q_exp, zeta_exp } => format!("q^{q_exp}*z^{zeta_exp}"),
        }
    }
}

impl Serialize for CharValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CharValue::Zero => s.serialize_none(),
            CharValue::Unit { q_exp, zeta_exp } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("q_exp", q_exp)?;
                m.serialize_entry("zeta_exp", zeta_exp)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for CharValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CharValue;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "null or {{\"q_exp\":m,\"zeta_exp\":k}}")
            }
            fn visit_unit<E: de::Error>(self) -> std::result::Result<CharValue, E> {
                Ok(CharValue::Zero)
            }
            fn visit_none<E: de::Error>(self) -> std::result::Result<CharValue, E> {
                Ok(CharValue::Zero)
            }
            fn visit_some<D: Deserializer<'de>>(
                self,
                d: D,
            ) -> std::result::Result<CharValue, D::Error> {
                d.deserialize_any(V)
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<CharValue, A::Error> {
                let (mut q_exp, mut zeta_exp) = (None, None);
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "q_exp" => q_exp = Some(map.next_value()?),
                        "zeta_exp" => zeta_exp = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["q_exp", "zeta_exp"])),
                    }
                }
                Ok(CharValue::Unit {
                    q_exp: q_exp.ok_or_else(|| de::Error::missing_field("q_exp"))?,
                    zeta_exp: zeta_exp.ok_or_else(|| de::Error::missing_field("zeta_exp"))?,
                })
            }
        }
        d.deserialize_option(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_unity_sum_vanishes() {
        let one = CycInt::monomial(3, 1, 0);
        let z = CycInt::monomial(3, 1, 1);
        let z2 = CycInt::monomial(3, 1, 2);
        assert!((&(&one + &z) + &z2).is_zero());
    }

    #[test]
    fn p2_zeta_squared_is_one() {
        let z = CycInt::monomial(2, 1, 1);
        assert_eq!(z.coeffs(), &[-1]);
        assert_eq!(&z * &z, CycInt::from_int(2, 1));
    }

    #[test]
    fn conjugate_reduces() {
        let z = CycInt::monomial(3, 1, 1);
        assert_eq!(z.conjugate(), CycInt::from_coeffs(3, vec![-1, -1]));
        assert_eq!(z.conjugate().conjugate(), z);
        let w = CycInt::from_coeffs(2, vec![-7]);
        assert_eq!(w.conjugate(), w);
    }

    #[test]
    fn overflow_is_reported() {
        let big = CycInt::from_int(5, i64::MAX);
        assert_eq!(big.checked_add(&big), Err(Error::Overflow));
        assert_eq!(big.checked_mul(&CycInt::from_int(5, 2)), Err(Error::Overflow));
        assert_eq!(big.checked_scale(3), Err(Error::Overflow));
    }

    #[test]
    fn mismatched_p_is_rejected() {
        let a = CycInt::from_int(3, 1);
        let b = CycInt::from_int(5, 1);
        assert!(matches!(a.checked_add(&b), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn char_value_json() {
        let v = CharValue::Unit { q_exp: 2, zeta_exp: 1 };
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"q_exp":2,"zeta_exp":1}"#);
        assert_eq!(serde_json::from_str::<CharValue>(&s).unwrap(), v);
        assert_eq!(serde_json::to_string(&CharValue::Zero).unwrap(), "null");
        assert_eq!(serde_json::from_str::<CharValue>("null").unwrap(), CharValue::Zero);
        let c = CycInt::from_coeffs(3, vec![1, -2]);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"p":3,"coeffs":[1,-2]}"#);
    }

    #[test]
    fn char_value_expansion() {
        let v = CharValue::Unit { q_exp: 1, zeta_exp: 2 };
        assert_eq!(v.to_cyc(3, 3).unwrap(), CycInt::from_coeffs(3, vec![-3, -3]));
        assert_eq!(CharValue::Unit { q_exp: 2, zeta_exp: 1 }.as_integer(2, 2), Some(-4));
        assert_eq!(v.as_integer(3, 3), None);
    }
}
