//! Arithmetic in GF(p^m) over a polynomial basis.
//!
//! Elements are encoded as `u32` values: for p = 2 the bits are the
//! coefficients of 1, x, x², …; for odd p the base-p digits are. The raw
//! operations on [`FieldSpec`] work on these encodings and are what the
//! code and matrix modules use in their inner loops. [`FieldElement`] is the
//! checked wrapper that carries its field along.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default moduli for GF(2^m), as bit masks including the leading term.
const BINARY_MODULI: [u32; 17] = [
    0,
    0b10,                  // x
    0b111,                 // x^2 + x + 1
    0b1011,                // x^3 + x + 1
    0b1_0011,              // x^4 + x + 1
    0b10_0101,             // x^5 + x^2 + 1
    0b100_0011,            // x^6 + x + 1
    0b1000_0011,           // x^7 + x + 1
    0b1_0001_1101,         // x^8 + x^4 + x^3 + x^2 + 1
    0b10_0001_0001,        // x^9 + x^4 + 1
    0b100_0000_1001,       // x^10 + x^3 + 1
    0b1000_0000_0101,      // x^11 + x^2 + 1
    0b1_0000_0101_0011,    // x^12 + x^6 + x^4 + x + 1
    0b10_0000_0001_1011,   // x^13 + x^4 + x^3 + x + 1
    0b100_0100_0100_0011,  // x^14 + x^10 + x^6 + x + 1
    0b1000_0000_0000_0011, // x^15 + x + 1
    0x1_100B,              // x^16 + x^12 + x^3 + x + 1
];

/// A finite field GF(p^m) with a fixed irreducible modulus.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    /// Monic modulus, coefficients lowest degree first (length m + 1).
    modulus: Vec<u32>,
    q: u64,
    /// Bit mask of the modulus for p = 2.
    modulus_bits: u64,
    /// Tr(x^i) for each basis element.
    basis_trace: Vec<u32>,
    /// For p = 2: mask whose parity with an element gives its trace.
    trace_mask: u32,
    generator: u32,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.m, self.modulus)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo `b` over GF(p); `b` must have a nonzero leading coefficient.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let db = b.len() - 1;
    let lead_inv = mod_inverse(b[db] as u64, p);
    while r.len() > db {
        let top = *r.last().unwrap() % p;
        if top != 0 {
            let factor = top * lead_inv % p;
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let v = &mut r[shift + i];
                *v = (*v + p * p - factor * bc as u64 % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| (c % p) as u32).collect()
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Exhaustive irreducibility check: trial division by every monic polynomial
/// of degree 1..=deg/2.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for lower in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut rest = lower;
            for _ in 0..d {
                divisor.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^m) with the given monic modulus (lowest degree first).
    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= 1u64 << 32)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{m} exceeds 2^32")))?;
        if modulus.len() != m as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have degree {m}, got {} coefficients",
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "modulus coefficient out of range".into(),
            ));
        }
        if modulus[m as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        let modulus_bits = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        };
        let mut spec = FieldSpec {
            p,
            m,
            modulus,
            q,
            modulus_bits,
            basis_trace: Vec::new(),
            trace_mask: 0,
            generator: 0,
        };
        spec.basis_trace = (0..m)
            .map(|i| spec.frobenius_trace(spec.basis_element(i)))
            .collect();
        if p == 2 {
            spec.trace_mask = spec
                .basis_trace
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &t)| acc | (t << i));
        }
        spec.generator = spec.find_generator();
        Ok(spec)
    }

    /// GF(2^m) with the default modulus for m ≤ 16, else the first
    /// irreducible polynomial in enumeration order.
    pub fn binary(m: u32) -> Result<Self> {
        if (1..=16).contains(&m) {
            let bits = BINARY_MODULI[m as usize];
            let modulus = (0..=m).map(|i| (bits >> i) & 1).collect();
            return FieldSpec::new(2, m, modulus);
        }
        Self::with_default_modulus(2, m)
    }

    /// GF(p^m) with a default modulus.
    pub fn with_default_modulus(p: u32, m: u32) -> Result<Self> {
        if p == 2 && (1..=16).contains(&m) {
            return Self::binary(m);
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 1 {
            return FieldSpec::new(p, 1, vec![0, 1]);
        }
        let count = (p as u64)
            .checked_pow(m)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{m} overflows")))?;
        for lower in 0..count {
            let mut modulus = Vec::with_capacity(m as usize + 1);
            let mut rest = lower;
            for _ in 0..m {
                modulus.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return FieldSpec::new(p, m, modulus);
            }
        }
        Err(Error::InvalidField(format!(
            "no irreducible polynomial of degree {m} over GF({p})"
        )))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::with_default_modulus(p, 1)
    }

    /// Parses a modulus written as comma-separated coefficients, lowest degree first.
    pub fn parse_modulus(text: &str) -> Result<Vec<u32>> {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("modulus coefficient {s:?}: {e}")))
            })
            .collect()
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The designated primitive element (multiplicative order q − 1).
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn is_binary(&self) -> bool {
        self.p == 2
    }

    /// True for GF(2) itself.
    pub fn is_gf2(&self) -> bool {
        self.p == 2 && self.m == 1
    }

    /// Encoding of the basis element x^i.
    pub fn basis_element(&self, i: u32) -> u32 {
        if self.p == 2 {
            1 << i
        } else {
            self.p.pow(i)
        }
    }

    /// Polynomial-basis coefficients of an encoded element.
    pub fn coeffs(&self, mut a: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + (c % self.p) as u64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.from_coeffs(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let c: Vec<u32> = self
            .coeffs(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            let m = self.m;
            let top = 1u64 << m;
            let mut x = a as u64;
            let mut y = b as u64;
            let mut acc = 0u64;
            while y != 0 {
                if y & 1 == 1 {
                    acc ^= x;
                }
                y >>= 1;
                x <<= 1;
                if x & top != 0 {
                    x ^= self.modulus_bits;
                }
            }
            return acc as u32;
        }
        let p = self.p as u64;
        if self.m == 1 {
            return (a as u64 * b as u64 % p) as u32;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * self.m as usize - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        self.from_coeffs(&poly_rem(&prod, &self.modulus, self.p))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.q - 2))
        }
    }

    /// Absolute trace into GF(p), via linearity over the basis traces.
    pub fn trace(&self, a: u32) -> u32 {
        if self.p == 2 {
            return (a & self.trace_mask).count_ones() & 1;
        }
        let p = self.p as u64;
        self.coeffs(a)
            .iter()
            .zip(&self.basis_trace)
            .fold(0u64, |acc, (&c, &t)| (acc + c as u64 * t as u64) % p) as u32
    }

    /// Absolute trace computed directly as a + a^p + … + a^{p^{m−1}}.
    pub fn frobenius_trace(&self, a: u32) -> u32 {
        let mut sum = 0u32;
        let mut term = a;
        for _ in 0..self.m {
            sum = self.add(sum, term);
            term = self.pow(term, self.p as u64);
        }
        // the sum is a constant polynomial
        sum
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut order = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == 1 {
                order /= r;
            }
        }
        Some(order)
    }

    fn find_generator(&self) -> u32 {
        let n = self.q - 1;
        let factors = prime_factors(n);
        (1..self.q)
            .map(|v| v as u32)
            .find(|&g| factors.iter().all(|&r| self.pow(g, n / r) != 1))
            .expect("multiplicative group of a field is cyclic")
    }

    pub fn element(self: &Arc<Self>, value: u32) -> Result<FieldElement> {
        if value as u64 >= self.q {
            return Err(Error::Domain(format!(
                "{value} is not an element encoding of GF({})",
                self.q
            )));
        }
        Ok(FieldElement {
            spec: Arc::clone(self),
            value,
        })
    }

    pub fn element_from_coeffs(self: &Arc<Self>, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Domain(format!(
                "coefficients {coeffs:?} do not describe an element of GF({})",
                self.q
            )));
        }
        self.element(self.from_coeffs(coeffs))
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            spec: Arc::clone(self),
            value: 0,
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            spec: Arc::clone(self),
            value: 1,
        }
    }

    pub fn primitive(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            spec: Arc::clone(self),
            value: self.generator,
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        (0..self.q).map(|v| v as u32)
    }
}

/// An element of a specific finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in GF({})", self.coeffs(), self.spec.q)
    }
}

impl FieldElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.spec.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.spec.q,
                right: other.spec.q,
            })
        }
    }

    fn with_value(&self, value: u32) -> FieldElement {
        FieldElement {
            spec: Arc::clone(&self.spec),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_value(self.spec.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_value(self.spec.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_value(self.spec.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with_value(self.spec.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.spec
            .inv(self.value)
            .map(|v| self.with_value(v))
            .ok_or_else(|| Error::Domain("zero has no inverse".into()))
    }

    /// Square-and-multiply; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        if e < 0 {
            let inv = self
                .inv()
                .map_err(|_| Error::Domain("zero raised to a negative power".into()))?;
            return Ok(inv.with_value(self.spec.pow(inv.value, e.unsigned_abs())));
        }
        Ok(self.with_value(self.spec.pow(self.value, e as u64)))
    }

    /// Absolute trace as a residue in [0, p).
    pub fn trace_value(&self) -> u32 {
        self.spec.trace(self.value)
    }

    /// Absolute trace as an element of the prime subfield.
    pub fn trace(&self) -> FieldElement {
        let prime = Arc::new(FieldSpec::prime(self.spec.p).expect("characteristic is prime"));
        FieldElement {
            spec: prime,
            value: self.trace_value(),
        }
    }
}
