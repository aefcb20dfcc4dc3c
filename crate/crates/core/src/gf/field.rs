use std::fmt;

use crate::error::{Error, Result};

/// An element of F_q, packed as the base-p integer `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`
/// of its polynomial coefficients.
///
/// Ordering compares the packed integers; it is the ordering used for lexicographic
/// comparison of functionals.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// The packed integer encoding.
    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Largest field order supported.
pub const MAX_ORDER: u32 = 1 << 16;

/// Default moduli (constant term first) for the small extension fields.
const DEFAULT_MODULI: &[(u32, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (27, &[1, 2, 0, 1]),
];

/// The finite field F_q with q = p^r.
///
/// Extension fields are F_p[X]/(modulus); multiplication goes through discrete
/// log tables, which is why the order is capped at 2^16.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    r: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q into (p, r) with q = p^r, p prime.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut r = 0;
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

// Polynomials over F_p, constant term first, no trailing zeros (zero poly is empty).

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    poly_trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm] as u64, (p - 2) as u64, p as u64) as u32;
    while a.len() > dm {
        let shift = a.len() - 1 - dm;
        let factor = (a[a.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &c) in m.iter().enumerate() {
            let sub = (factor as u64 * c as u64 % p as u64) as u32;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        poly_trim(&mut a);
    }
    a
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                f.push((x % p as u64) as u32);
                x /= p as u64;
            }
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds F_q. For proper prime powers the modulus defaults to a built-in
    /// table (q in {4, 8, 9, 16, 25, 27}) or, failing that, the first monic
    /// irreducible polynomial in increasing coefficient order.
    pub fn new(q: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(Error::BadField(format!("q = {q} exceeds 2^16")));
        }
        let (p, r) =
            prime_power(q).ok_or_else(|| Error::BadField(format!("{q} is not a prime power")))?;
        if r == 1 {
            if let Some(m) = &modulus {
                if m.len() != 2 || m[1] % p != 1 {
                    return Err(Error::BadField(format!(
                        "modulus for a prime field must be monic of degree 1, got {m:?}"
                    )));
                }
            }
            let trace = (0..q).collect();
            return Ok(GaloisField { p, r, q, modulus: None, exp: Vec::new(), log: Vec::new(), trace });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadField(format!("modulus coefficients must lie in [0,{p})")));
                }
                if m.len() != r as usize + 1 || m[r as usize] != 1 {
                    return Err(Error::BadField(format!(
                        "modulus must be monic of degree {r}, got {m:?}"
                    )));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::BadField(format!("reducible polynomial {m:?} over F_{p}")));
                }
                m
            }
            None => Self::default_modulus(p, r),
        };
        let mut field =
            GaloisField { p, r, q, modulus: Some(modulus), exp: Vec::new(), log: Vec::new(), trace: Vec::new() };
        field.build_tables()?;
        Ok(field)
    }

    /// Shorthand for a prime field.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not prime")));
        }
        Self::new(p, None)
    }

    fn default_modulus(p: u32, r: u32) -> Vec<u32> {
        let q = p.pow(r);
        if let Some((_, m)) = DEFAULT_MODULI.iter().find(|(qq, _)| *qq == q) {
            return m.to_vec();
        }
        (0..q)
            .map(|idx| {
                let mut m: Vec<u32> = (0..r).map(|i| idx / p.pow(i) % p).collect();
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial exists in every degree")
    }

    fn poly_mul_packed(&self, a: u32, b: u32) -> u32 {
        let m = self.modulus.as_ref().expect("extension field");
        let (p, r) = (self.p, self.r as usize);
        let da = self.coeffs(FieldElem(a));
        let db = self.coeffs(FieldElem(b));
        let mut prod = vec![0u32; 2 * r];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        let rem = poly_rem(&prod, m, p);
        rem.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn build_tables(&mut self) -> Result<()> {
        let q = self.q;
        let order = q - 1;
        let generator = (2..q)
            .find(|&g| {
                let mut x = 1u32;
                for k in 1..=order {
                    x = self.poly_mul_packed(x, g);
                    if x == 1 {
                        return k == order;
                    }
                }
                false
            })
            .ok_or_else(|| Error::BadField("no primitive element found".into()))?;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..order {
            exp[k as usize] = x;
            log[x as usize] = k;
            x = self.poly_mul_packed(x, generator);
        }
        self.exp = exp;
        self.log = log;
        let mut trace = vec![0u32; q as usize];
        for a in 1..q {
            let mut acc = FieldElem(0);
            let mut power = FieldElem(a);
            for _ in 0..self.r {
                acc = self.add(acc, power);
                power = self.pow(power, self.p as u64);
            }
            if acc.0 >= self.p {
                return Err(Error::InternalInvariantViolation(format!(
                    "trace of {a} is not in the prime field"
                )));
            }
            trace[a as usize] = acc.0;
        }
        self.trace = trace;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients (constant first); `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// All q elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    /// Nonzero elements in packed order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q).map(FieldElem)
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.q
    }

    /// Element with the given packed index; errors if out of range.
    pub fn from_packed(&self, v: u32) -> Result<FieldElem> {
        if v < self.q {
            Ok(FieldElem(v))
        } else {
            Err(Error::SpecMismatch(format!("{v} is not an element of F_{}", self.q)))
        }
    }

    /// Element of the prime subfield, reduced mod p.
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p as i64) as u32)
    }

    /// Element with polynomial coefficients `c_0, c_1, ...` (at most r of them).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElem> {
        if coeffs.len() > self.r as usize {
            return Err(Error::BadField(format!(
                "{} coefficients given for a degree-{} extension",
                coeffs.len(),
                self.r
            )));
        }
        let p = self.p as i64;
        Ok(FieldElem(
            coeffs.iter().rev().fold(0i64, |acc, &c| acc * p + c.rem_euclid(p)) as u32,
        ))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.r)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.r == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.r {
            out += (x % self.p + y % self.p) % self.p * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.r == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..self.r {
            out += (self.p - x % self.p) % self.p * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        if self.r == 1 {
            return FieldElem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[(s % (self.q - 1)) as usize])
    }

    /// `a + b*c`, the inner step of every dot product.
    #[inline]
    pub fn mul_add(&self, a: FieldElem, b: FieldElem, c: FieldElem) -> FieldElem {
        self.add(a, self.mul(b, c))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem(1);
        }
        if a.0 == 0 {
            return FieldElem(0);
        }
        if self.r == 1 {
            return FieldElem(pow_mod(a.0 as u64, e, self.p as u64) as u32);
        }
        let l = self.log[a.0 as usize] as u64 * (e % (self.q as u64 - 1));
        FieldElem(self.exp[(l % (self.q as u64 - 1)) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    /// Absolute trace Tr_{F_q/F_p}(a), as an integer in [0, p).
    pub fn trace(&self, a: FieldElem) -> u32 {
        self.trace[a.0 as usize]
    }

    /// Checks that two fields are the same, for operations combining objects.
    pub fn ensure_same(&self, other: &GaloisField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("F_{} vs F_{}", self.q, other.q)))
        }
    }

    /// Parses an integer literal (reduced mod p) or a `c0:c1:...` coefficient string.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        let parts: Vec<&str> = s.split(':').collect();
        let coeffs = parts
            .iter()
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::BadField(format!("bad field element literal '{s}'")))?;
        self.from_coeffs(&coeffs)
    }

    /// Inverse of [`parse_elem`](Self::parse_elem): decimal in prime fields,
    /// `c0:c1:...:c_{r-1}` otherwise.
    pub fn format_elem(&self, a: FieldElem) -> String {
        if self.r == 1 {
            a.0.to_string()
        } else {
            self.coeffs(a).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":")
        }
    }
}
