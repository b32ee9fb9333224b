//! The binary field tower GF(2) ⊂ GF(2^m) ⊂ GF(2^{2m}).
//!
//! Elements of the big field are stored as their coordinate vector in the
//! polynomial basis `1, x, …, x^{n-1}` packed into a `u64`. The subfield
//! GF(2^m) is not a separate type: it is the set of Frobenius-fixed points
//! `z^{2^m} = z` inside the big field.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hexfmt;

/// Smallest supported subfield degree.
pub const MIN_M: u32 = 2;
/// Largest supported subfield degree.
pub const MAX_M: u32 = 16;
/// Log/antilog tables are built for towers with `n` up to this value.
pub const TABLE_LIMIT: u32 = 20;

/// An element of GF(2^n), coordinates in the polynomial basis.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub const fn new(bits: u64) -> Self {
        Self(bits)
    }

    /// Integer encoding `Σ c_i 2^i`.
    pub const fn value(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Little-endian hex of the coordinate bit vector, `bytes` bytes wide.
    pub fn to_hex(self, bytes: usize) -> String {
        hexfmt::u64_to_hex(self.0, bytes)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        hexfmt::hex_to_u64(s).map(Self)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:#x})", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl Add for FieldElement {
    type Output = Self;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        Self(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

/// Carry-less product of two polynomials of degree < 32.
fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Remainder of `a` modulo the polynomial `modulus` (degree ≥ 1).
fn poly_rem(mut a: u64, modulus: u64) -> u64 {
    let dm = degree(modulus);
    while a != 0 && degree(a) >= dm {
        a ^= modulus << (degree(a) - dm);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

fn mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    poly_rem(clmul(a, b), modulus)
}

/// Ben-Or irreducibility test: `f` of degree `n` is irreducible iff
/// `gcd(x^{2^i} - x, f) = 1` for every `1 ≤ i ≤ n/2`.
pub fn is_irreducible(f: u64) -> bool {
    let n = degree(f);
    if n < 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let mut h = 2u64; // x
    for _ in 1..=n / 2 {
        h = mulmod(h, h, f);
        if poly_gcd(f, h ^ 2) != 1 {
            return false;
        }
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Reduces a non-negative exponent modulo `order` into `{0} ∪ [1, order]`:
/// zero stays zero (so `0^0 = 1`), everything else lands in `[1, order]`
/// (so `0^e = 0` for `e > 0`).
pub fn reduce_exponent(e: u128, order: u64) -> u64 {
    if e == 0 {
        0
    } else {
        ((e - 1) % order as u128) as u64 + 1
    }
}

/// Signed variant of [`reduce_exponent`]; nonzero exponents land in `[1, order]`.
pub fn reduce_signed_exponent(e: i128, order: u64) -> u64 {
    if e == 0 {
        0
    } else {
        let r = e.rem_euclid(order as i128) as u64;
        if r == 0 {
            order
        } else {
            r
        }
    }
}

#[derive(Clone)]
pub(crate) struct LogTables {
    /// `exp[k] = g^k` for `0 ≤ k < 2^n - 1`.
    pub(crate) exp: Vec<u32>,
    /// `log[x]` for `x ≠ 0`; `log[0]` is unused.
    pub(crate) log: Vec<u32>,
    /// `Tr_n(g^k)`.
    pub(crate) tr_n: Vec<u8>,
    /// `Tr_m(g^{k(2^m+1)})`, the trace of the `k`-th subfield power.
    pub(crate) tr_m: Vec<u8>,
}

/// GF(2^{2m}) with its identified subfield GF(2^m).
#[derive(Clone)]
pub struct FieldTower {
    m: u32,
    n: u32,
    modulus: u64,
    generator: FieldElement,
    trace_mask: u64,
    sub_trace_mask: u64,
    /// Columns of the GF(2)-linear map `x ↦ x^{2^m}`.
    conj_columns: Vec<u64>,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("m", &self.m)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("generator", &self.generator)
            .finish()
    }
}

/// Serializable tower description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDescription {
    pub m: u32,
    pub modulus_hex: String,
    pub generator_hex: String,
}

impl FieldTower {
    /// Builds the tower for subfield degree `m`: the modulus is the
    /// irreducible polynomial of degree `2m` with the smallest encoding and
    /// the generator is the primitive element with the smallest encoding.
    pub fn new(m: u32) -> Result<Self> {
        if !(MIN_M..=MAX_M).contains(&m) {
            return Err(Error::Size(format!("subfield degree m = {m} outside [{MIN_M}, {MAX_M}]")));
        }
        let n = 2 * m;
        let modulus = ((1u64 << n)..(1u64 << (n + 1)))
            .find(|&f| is_irreducible(f))
            .ok_or_else(|| Error::Internal(format!("no irreducible polynomial of degree {n}")))?;
        let mut tower = Self {
            m,
            n,
            modulus,
            generator: FieldElement::ZERO,
            trace_mask: 0,
            sub_trace_mask: 0,
            conj_columns: Vec::new(),
            tables: None,
        };
        tower.conj_columns = (0..n).map(|i| (0..m).fold(FieldElement(1 << i), |y, _| tower.mul_slow(y, y)).0).collect();
        let order = tower.order();
        let factors = prime_factors(order);
        let generator = (2..(1u64 << n))
            .map(FieldElement)
            .find(|&g| factors.iter().all(|p| tower.pow_slow(g, order / p) != FieldElement::ONE))
            .ok_or_else(|| Error::Internal("no primitive element found".into()))?;
        tower.generator = generator;

        tower.trace_mask = (0..n)
            .filter(|&i| tower.trace_slow(FieldElement(1 << i), n) == FieldElement::ONE)
            .fold(0, |acc, i| acc | (1 << i));

        if n <= TABLE_LIMIT {
            let mut exp = Vec::with_capacity(order as usize);
            let mut log = vec![0u32; 1usize << n];
            let mut x = FieldElement::ONE;
            for k in 0..order {
                exp.push(x.0 as u32);
                log[x.0 as usize] = k as u32;
                x = tower.mul_slow(x, generator);
            }
            let tr_n = exp.iter().map(|&x| tower.abs_trace(FieldElement(x as u64))).collect();
            tower.tables = Some(LogTables { exp, log, tr_n, tr_m: Vec::new() });
        }

        // Tr_m(y) = Tr_n(θ y) on the subfield whenever θ + θ^{2^m} = 1.
        let theta = tower.find_unit_relative_trace(false)?;
        tower.sub_trace_mask = (0..n)
            .filter(|&i| tower.abs_trace(tower.mul(theta, FieldElement(1 << i))) == 1)
            .fold(0, |acc, i| acc | (1 << i));
        let step = (1usize << m) + 1;
        let sub_mask = tower.sub_trace_mask;
        if let Some(t) = tower.tables.as_mut() {
            t.tr_m = t.exp.iter().step_by(step).map(|&x| ((x as u64 & sub_mask).count_ones() & 1) as u8).collect();
        }
        Ok(tower)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Modulus encoding including the leading `x^n` bit.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// `2^n - 1`, the order of the multiplicative group.
    pub fn order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// `2^m - 1`, the order of the subfield's multiplicative group.
    pub fn sub_order(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Number of hex bytes used to print one element.
    pub fn element_bytes(&self) -> usize {
        (self.n as usize).div_ceil(8)
    }

    pub(crate) fn tables(&self) -> Option<&LogTables> {
        self.tables.as_ref()
    }

    pub fn description(&self) -> TowerDescription {
        TowerDescription {
            m: self.m,
            modulus_hex: hexfmt::u64_to_hex(self.modulus, (self.n as usize + 1).div_ceil(8)),
            generator_hex: self.generator.to_hex(self.element_bytes()),
        }
    }

    /// Interprets raw bits as an element, checking the width.
    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits >> self.n != 0 {
            return domain(format!("{bits:#x} is not an element of GF(2^{})", self.n));
        }
        Ok(FieldElement(bits))
    }

    pub fn parse_element(&self, hex: &str) -> Result<FieldElement> {
        self.element(hexfmt::hex_to_u64(hex)?)
    }

    pub fn fmt_element(&self, x: FieldElement) -> String {
        x.to_hex(self.element_bytes())
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..1u64 << self.n).map(FieldElement)
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(mulmod(a.0, b.0, self.modulus))
    }

    fn pow_slow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn trace_slow(&self, x: FieldElement, k: u32) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..k {
            acc += y;
            y = self.mul_slow(y, y);
        }
        acc
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    return FieldElement::ZERO;
                }
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                let order = self.order();
                let s = if s >= order { s - order } else { s };
                FieldElement(t.exp[s as usize] as u64)
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return domain("inversion of zero");
        }
        Ok(self.pow_reduced(a, self.order() - 1))
    }

    /// `a / b`.
    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^e` for an already reduced exponent.
    fn pow_reduced(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.is_zero() {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let k = (t.log[x.0 as usize] as u128 * e as u128 % self.order() as u128) as usize;
                FieldElement(t.exp[k] as u64)
            }
            None => self.pow_slow(x, e),
        }
    }

    /// `x^e` with `e` reduced modulo `2^n - 1` (`0^0 = 1`).
    pub fn pow(&self, x: FieldElement, e: u128) -> FieldElement {
        self.pow_reduced(x, reduce_exponent(e, self.order()))
    }

    /// `x^e` for signed `e`; negative powers of zero are taken as zero.
    pub fn pow_signed(&self, x: FieldElement, e: i128) -> FieldElement {
        self.pow_reduced(x, reduce_signed_exponent(e, self.order()))
    }

    /// `x^{2^j}`, `j` taken modulo `n`.
    pub fn frobenius(&self, x: FieldElement, j: i64) -> FieldElement {
        let j = j.rem_euclid(self.n as i64) as u32;
        match &self.tables {
            Some(t) if !x.is_zero() => {
                let k = (t.log[x.0 as usize] as u64) << j;
                FieldElement(t.exp[(k % self.order()) as usize] as u64)
            }
            _ => (0..j).fold(x, |y, _| self.mul(y, y)),
        }
    }

    pub fn is_subfield(&self, x: FieldElement) -> bool {
        self.conj(x) == x
    }

    /// The conjugate `x^{2^m}`.
    pub fn conj(&self, x: FieldElement) -> FieldElement {
        let mut bits = x.0;
        let mut acc = 0;
        while bits != 0 {
            acc ^= self.conj_columns[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        FieldElement(acc)
    }

    /// `x + x^{2^m}`.
    pub fn rel_trace_nm(&self, x: FieldElement) -> FieldElement {
        x + self.conj(x)
    }

    /// `x^{2^m + 1}`.
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        self.mul(x, self.conj(x))
    }

    /// Relative trace `Tr^k_r(x) = Σ_{i < k/r} x^{2^{ir}}` for `k ∈ {m, n}`.
    pub fn rel_trace(&self, k: u32, r: u32, x: FieldElement) -> Result<FieldElement> {
        if k != self.m && k != self.n {
            return domain(format!("trace source degree {k} must be m = {} or n = {}", self.m, self.n));
        }
        if r == 0 || !k.is_multiple_of(r) {
            return domain(format!("{r} does not divide {k}"));
        }
        if k == self.m && !self.is_subfield(x) {
            return domain(format!("{x} is not in GF(2^{})", self.m));
        }
        Ok((0..k / r).map(|i| self.frobenius(x, (i * r) as i64)).sum())
    }

    /// Absolute trace `Tr_n(x)` as a bit.
    pub fn abs_trace(&self, x: FieldElement) -> u8 {
        ((x.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// Absolute trace `Tr_m(y)` of a subfield element.
    pub fn sub_trace(&self, y: FieldElement) -> Result<u8> {
        if !self.is_subfield(y) {
            return Err(Error::Representation(format!("Tr_m applied to {y}, which is outside GF(2^{})", self.m)));
        }
        Ok(self.sub_trace_unchecked(y))
    }

    pub(crate) fn sub_trace_unchecked(&self, y: FieldElement) -> u8 {
        ((y.0 & self.sub_trace_mask).count_ones() & 1) as u8
    }

    /// Multiplicative order test against `2^n - 1`.
    pub fn is_primitive(&self, x: FieldElement) -> bool {
        if x.is_zero() {
            return false;
        }
        let order = self.order();
        if let Some(t) = &self.tables {
            let k = t.log[x.0 as usize] as u64;
            return gcd(k, order) == 1;
        }
        prime_factors(order).iter().all(|p| self.pow_slow(x, order / p) != FieldElement::ONE)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: FieldElement) -> Result<u64> {
        if x.is_zero() {
            return domain("zero has no multiplicative order");
        }
        let mut ord = self.order();
        for p in prime_factors(ord) {
            while ord.is_multiple_of(p) && self.pow_reduced(x, ord / p) == FieldElement::ONE {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// Without `require_primitive`: the smallest `a` with `a + a^{2^m} = 1`.
    /// With it: the smallest primitive `a` with `a + a^{2^m} ≠ 0`.
    pub fn find_unit_relative_trace(&self, require_primitive: bool) -> Result<FieldElement> {
        let found = if require_primitive {
            self.elements().find(|&a| self.is_primitive(a) && !self.rel_trace_nm(a).is_zero())
        } else {
            self.elements().find(|&a| self.rel_trace_nm(a) == FieldElement::ONE)
        };
        found.ok_or_else(|| Error::Internal("relative-trace scan exhausted the field".into()))
    }

    /// The smallest primitive `a` with `a + a^{2^m} = 1`, if any.
    pub fn find_primitive_unit_trace(&self) -> Option<FieldElement> {
        self.elements().find(|&a| self.rel_trace_nm(a) == FieldElement::ONE && self.is_primitive(a))
    }

    /// Subfield elements in encoding order.
    pub fn subfield_elements(&self) -> Vec<FieldElement> {
        let mut v: Vec<FieldElement> = match &self.tables {
            Some(t) => {
                let step = (1u64 << self.m) + 1;
                std::iter::once(FieldElement::ZERO)
                    .chain((0..self.sub_order()).map(|k| FieldElement(t.exp[(k * step) as usize] as u64)))
                    .collect()
            }
            None => {
                let h = self.pow_slow(self.generator, (1u64 << self.m) + 1);
                let mut out = vec![FieldElement::ZERO];
                let mut x = FieldElement::ONE;
                for _ in 0..self.sub_order() {
                    out.push(x);
                    x = self.mul_slow(x, h);
                }
                out
            }
        };
        v.sort_unstable();
        v
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial division by every polynomial of degree 1..=deg/2.
    fn irreducible_by_trial_division(f: u64) -> bool {
        let d = degree(f);
        for g in 2u64..(1u64 << (d / 2 + 1)) {
            if degree(g) >= 1 && degree(g) <= d / 2 && poly_rem(f, g) == 0 {
                return false;
            }
        }
        true
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for f in 4u64..(1 << 11) {
            assert_eq!(is_irreducible(f), irreducible_by_trial_division(f), "f = {f:#b}");
        }
    }

    #[test]
    fn golden_moduli() {
        // Frozen from the trial-division oracle above.
        let first = |n: u32| ((1u64 << n)..(1u64 << (n + 1))).find(|&f| irreducible_by_trial_division(f)).unwrap();
        assert_eq!(first(4), 0b1_0011);
        assert_eq!(first(6), 0b100_0011);
        assert_eq!(FieldTower::new(2).unwrap().modulus(), 0x13);
        assert_eq!(FieldTower::new(3).unwrap().modulus(), 0x43);
        for m in 2..=6 {
            assert_eq!(FieldTower::new(m).unwrap().modulus(), first(2 * m));
        }
    }

    #[test]
    fn tower_range() {
        assert!(matches!(FieldTower::new(1), Err(Error::Size(_))));
        assert!(matches!(FieldTower::new(17), Err(Error::Size(_))));
    }

    #[test]
    fn subfield_has_2_pow_m_elements() {
        for m in 2..=5 {
            let t = FieldTower::new(m).unwrap();
            let count = t.elements().filter(|&x| t.pow(x, 1 << m) == x).count();
            assert_eq!(count, 1 << m);
            assert_eq!(t.subfield_elements().len(), 1 << m);
            assert!(t.subfield_elements().iter().all(|&x| t.is_subfield(x)));
        }
    }

    #[test]
    fn generator_order_m5() {
        let t = FieldTower::new(5).unwrap();
        let g = t.generator();
        let order = 1023u64;
        assert_eq!(t.pow_slow(g, order), FieldElement::ONE);
        for d in 1..order {
            if order.is_multiple_of(d) {
                assert_ne!(t.pow_slow(g, d), FieldElement::ONE, "g^{d} = 1");
            }
        }
        // Generator is the smallest primitive element.
        for x in 2..g.value() {
            assert!(t.element_order(FieldElement(x)).unwrap() < order);
        }
    }

    #[test]
    fn arithmetic_laws() {
        let t = FieldTower::new(3).unwrap();
        let g = t.generator();
        assert_eq!(t.mul(g, t.inv(g).unwrap()), FieldElement::ONE);
        assert!(matches!(t.inv(FieldElement::ZERO), Err(Error::Domain(_))));
        for x in t.elements() {
            assert!((x + x).is_zero());
            assert_eq!(t.mul(x, FieldElement::ONE), x);
            if !x.is_zero() {
                assert_eq!(t.pow(x, t.order() as u128), FieldElement::ONE);
            }
            for y in t.elements() {
                assert_eq!(t.mul(x, y), t.mul_slow(x, y));
            }
        }
        assert_eq!(t.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        assert_eq!(t.pow(FieldElement::ZERO, 63), FieldElement::ZERO);
    }

    #[test]
    fn norm_lands_in_subfield() {
        for m in 2..=5 {
            let t = FieldTower::new(m).unwrap();
            for x in t.elements() {
                assert!(t.is_subfield(t.pow(x, (1 << m) + 1)));
            }
        }
    }

    #[test]
    fn frobenius_basics() {
        let t = FieldTower::new(4).unwrap();
        for x in t.elements() {
            assert_eq!(t.frobenius(x, 0), x);
            assert_eq!(t.frobenius(x, 8), x);
            assert_eq!(t.frobenius(t.frobenius(x, 4), 4), x);
            assert_eq!(t.frobenius(x, 3), t.pow(x, 8));
            assert_eq!(t.frobenius(x, -1), t.frobenius(x, 7));
            assert_eq!(t.conj(x), t.pow(x, 16));
        }
    }

    #[test]
    fn traces() {
        let t = FieldTower::new(3).unwrap();
        assert_eq!(t.rel_trace(6, 3, FieldElement::ZERO).unwrap(), FieldElement::ZERO);
        let zeros = t.elements().filter(|&x| t.abs_trace(x) == 0).count();
        assert_eq!(zeros, 32);
        for x in t.elements() {
            let rel = t.rel_trace(6, 3, x).unwrap();
            assert_eq!(rel, x + t.pow(x, 8));
            assert!(t.is_subfield(rel));
            // Tr_n = Tr_m ∘ Tr^n_m
            assert_eq!(t.abs_trace(x), t.sub_trace(rel).unwrap());
            assert_eq!(t.rel_trace(6, 1, x).unwrap(), FieldElement::new(t.abs_trace(x) as u64));
        }
        assert!(matches!(t.rel_trace(6, 4, FieldElement::ONE), Err(Error::Domain(_))));
        assert!(matches!(t.sub_trace(t.generator()), Err(Error::Representation(_))));
    }

    #[test]
    fn unit_relative_trace_search() {
        let t = FieldTower::new(3).unwrap();
        let a = t.find_unit_relative_trace(false).unwrap();
        assert_eq!(t.rel_trace_nm(a), FieldElement::ONE);
        assert!(!t.is_subfield(a));
        assert!(t.elements().take_while(|&x| x < a).all(|x| t.rel_trace_nm(x) != FieldElement::ONE));

        let p = t.find_unit_relative_trace(true).unwrap();
        assert!(t.is_primitive(p));
        assert!(!t.rel_trace_nm(p).is_zero());
        // Brute-force order computation over GF(2^6).
        let order_of = |x: FieldElement| {
            let mut y = x;
            let mut k = 1;
            while y != FieldElement::ONE {
                y = t.mul_slow(y, x);
                k += 1;
            }
            k
        };
        let expected = t.elements().skip(1).find(|&x| order_of(x) == 63 && !t.rel_trace_nm(x).is_zero()).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn slow_path_tower() {
        let t = FieldTower::new(11).unwrap();
        assert!(t.tables().is_none());
        let g = t.generator();
        assert_eq!(t.pow(g, t.order() as u128), FieldElement::ONE);
        assert_eq!(t.mul(g, t.inv(g).unwrap()), FieldElement::ONE);
        let a = t.find_unit_relative_trace(false).unwrap();
        assert_eq!(t.rel_trace_nm(a), FieldElement::ONE);
    }

    #[test]
    fn description_json() {
        let t = FieldTower::new(3).unwrap();
        let d = t.description();
        assert_eq!(d.m, 3);
        assert_eq!(d.modulus_hex, "43");
        let js = serde_json::to_string(&d).unwrap();
        let back: TowerDescription = serde_json::from_str(&js).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn exponent_reduction() {
        assert_eq!(reduce_exponent(0, 63), 0);
        assert_eq!(reduce_exponent(63, 63), 63);
        assert_eq!(reduce_exponent(64, 63), 1);
        assert_eq!(reduce_signed_exponent(-1, 31), 30);
        assert_eq!(reduce_signed_exponent(-31, 31), 31);
    }
}
