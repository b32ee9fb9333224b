//! Niho exponents and the explicit Niho bent families.
//!
//! Every constructor returns a [`TracePolynomial`]; bentness is a property
//! of the evaluated truth table and is never assumed here.

use serde::{Deserialize, Serialize};

use crate::boolfun::{TraceKind, TracePolynomial};
use crate::error::{domain, Error, Result};
use crate::gf2::{gcd, reduce_exponent, FieldElement, FieldTower};

/// Largest number of Niho index terms a single constructor will emit.
pub const MAX_TERMS: u128 = 1 << 22;

/// A normalized Niho exponent `d = (2^m - 1)s + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NihoExponent {
    pub m: u32,
    /// `s` reduced modulo `2^m + 1`.
    pub s: u64,
    /// `d` reduced modulo `2^n - 1`.
    pub d: u64,
    /// `2^m d` reduced modulo `2^n - 1`.
    pub conjugate: u64,
    pub coset_leader: u64,
}

fn order_of(m: u32) -> u64 {
    (1u64 << (2 * m)) - 1
}

fn mod_inverse(a: i128, modulus: i128) -> Option<i128> {
    let (mut r0, mut r1) = (a.rem_euclid(modulus), modulus);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(modulus))
}

/// Normalizes `s = num / den`, the fraction taken modulo `2^m + 1`.
pub fn normalize_exponent(m: u32, num: i128, den: i128) -> Result<NihoExponent> {
    if !(1..=16).contains(&m) {
        return domain(format!("m = {m} is out of range"));
    }
    let q = (1i128 << m) + 1;
    let Some(inv) = mod_inverse(den, q) else {
        return domain(format!("denominator {den} is not invertible modulo 2^{m} + 1 = {q}"));
    };
    let s = (num.rem_euclid(q) * inv).rem_euclid(q) as u64;
    let order = order_of(m);
    let d = reduce_exponent(((1u128 << m) - 1) * s as u128 + 1, order);
    let conjugate = reduce_exponent((d as u128) << m, order);
    Ok(NihoExponent { m, s, d, conjugate, coset_leader: coset_leader(d as u128, 2 * m) })
}

pub fn two_weight(e: u128) -> u32 {
    e.count_ones()
}

/// Smallest element of the cyclotomic coset of `e` modulo `2^n - 1`, with
/// `e` first reduced into `{0} ∪ [1, 2^n - 1]`.
pub fn coset_leader(e: u128, n: u32) -> u64 {
    let order = (1u64 << n) - 1;
    let e = reduce_exponent(e, order);
    (0..n).map(|j| ((e << j) | (e >> (n - j))) & order).min().unwrap_or(0)
}

/// `(2^m - 1)(2^{shift} i + 1) + 1` with `shift` taken modulo `2m`.
pub fn index_exponent(m: u32, shift: i64, i: u128) -> u128 {
    let n = 2 * m as i64;
    let order = order_of(m) as u128;
    let p = 1u128 << shift.rem_euclid(n);
    ((1u128 << m) - 1) * ((p * (i % order) + 1) % order) + 1
}

/// `2^{m-1}(2^m + 1)`, the self-conjugate exponent.
pub fn self_conjugate_exponent(m: u32) -> u128 {
    (1u128 << (m - 1)) * ((1u128 << m) + 1)
}

fn check_unit_trace(tower: &FieldTower, a: FieldElement) -> Result<()> {
    if tower.rel_trace_nm(a) != FieldElement::ONE {
        return domain(format!("a = {} must satisfy a + a^(2^m) = 1", tower.fmt_element(a)));
    }
    Ok(())
}

fn check_term_count(count: u128) -> Result<()> {
    if count > MAX_TERMS {
        return Err(Error::Size(format!("{count} Niho terms exceeds the limit of {MAX_TERMS}")));
    }
    Ok(())
}

/// `Tr_m(a t^{2^m+1})`.
pub fn build_quadratic(tower: &FieldTower, a: FieldElement) -> Result<TracePolynomial> {
    if a.is_zero() || !tower.is_subfield(a) {
        return domain(format!("a = {} must be a nonzero subfield element", tower.fmt_element(a)));
    }
    let m = tower.m();
    Ok(TracePolynomial::new().with(tower, TraceKind::Sub, a, (1u128 << m) + 1))
}

/// Which second exponent a binomial uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinomialVariant {
    /// `d_2 = 3(2^m - 1) + 1`.
    D2_3,
    /// `6 d_2 ≡ 2^m + 5 (mod 2^n - 1)`, `m` even.
    D2_16,
}

/// The second exponent of a binomial variant. For `d2_16` the congruence has
/// three solutions modulo `2^n - 1`; the one that is `≡ 1 (mod 2^m - 1)` is
/// returned.
pub fn binomial_exponent(m: u32, variant: BinomialVariant) -> Result<u64> {
    let order = order_of(m);
    match variant {
        BinomialVariant::D2_3 => Ok(reduce_exponent(3 * ((1u128 << m) - 1) + 1, order)),
        BinomialVariant::D2_16 => {
            if m % 2 == 1 {
                return domain(format!("variant d2_16 needs m even, got m = {m}"));
            }
            // gcd(6, 2^n - 1) = 3 and 3 | 2^m + 5 for even m.
            let rhs = (1u64 << m) + 5;
            let third = order / 3;
            let half = third.div_ceil(2);
            let d0 = ((rhs / 3) as u128 * half as u128 % third as u128) as u64;
            let sub = (1u64 << m) - 1;
            (0..3)
                .map(|j| reduce_exponent((d0 + j * third) as u128, order))
                .find(|d| d % sub == 1 % sub)
                .ok_or_else(|| Error::Internal("no Niho solution of 6 d = 2^m + 5".into()))
        }
    }
}

/// `Tr_m(a t^{2^m+1}) + Tr_n(b t^{d_2})` with `a = b^{2^m+1}`.
pub fn build_binomial(tower: &FieldTower, b: FieldElement, variant: BinomialVariant) -> Result<TracePolynomial> {
    if b.is_zero() {
        return domain("b must be nonzero");
    }
    let m = tower.m();
    let d2 = binomial_exponent(m, variant)?;
    Ok(TracePolynomial::new().with(tower, TraceKind::Sub, tower.norm(b), (1u128 << m) + 1).with(
        tower,
        TraceKind::Full,
        b,
        d2 as u128,
    ))
}

/// Whether `r` is accepted by [`build_lk`] without the unchecked flag.
pub fn lk_r_is_valid(m: u32, r: u32) -> bool {
    let m64 = m as u64;
    let r64 = r as u64;
    if 1 < r && r < m {
        gcd(r64, m64) == 1
    } else if m < r && r < 2 * m {
        let s = r64 - m64;
        s == 1 || gcd(s, m64) == 1
    } else {
        false
    }
}

/// The coefficient vector `A_1, …, A_{2^{r-1}}` of the Kyureghyan-type
/// family in the generic Niho form.
pub fn lk_coefficients(tower: &FieldTower, a: FieldElement, r: u32) -> Result<Vec<FieldElement>> {
    let b = tower.rel_trace_nm(a);
    if b.is_zero() {
        return domain(format!("a = {} has a + a^(2^m) = 0", tower.fmt_element(a)));
    }
    check_term_count(1u128 << (r - 1))?;
    let len = 1usize << (r - 1);
    let mut v = vec![b; len];
    v[len - 1] = tower.square(a);
    Ok(v)
}

/// `Tr_n(a^2 t^{2^m+1} + (a + a^{2^m}) Σ_{i=1}^{2^{r-1}-1} t^{(2^m-1)(2^{m-r}i+1)+1})`.
///
/// Accepts `1 < r < m` with `gcd(r, m) = 1`, and `m < r < 2m` when
/// `r - m = 1` or `gcd(r - m, m) = 1`.
pub fn build_lk(tower: &FieldTower, a: FieldElement, r: u32) -> Result<TracePolynomial> {
    let m = tower.m();
    if !lk_r_is_valid(m, r) {
        return domain(format!(
            "r = {r} needs 1 < r < m with gcd(r, m) = 1, or m < r < 2m with gcd(r - m, m) = 1 (m = {m})"
        ));
    }
    build_lk_unchecked(tower, a, r)
}

/// [`build_lk`] for any `1 ≤ r < 2m`.
pub fn build_lk_unchecked(tower: &FieldTower, a: FieldElement, r: u32) -> Result<TracePolynomial> {
    let m = tower.m();
    if r == 0 || r >= 2 * m {
        return domain(format!("r = {r} must lie in [1, 2m) for m = {m}"));
    }
    let b = tower.rel_trace_nm(a);
    if b.is_zero() {
        return domain(format!("a = {} has a + a^(2^m) = 0", tower.fmt_element(a)));
    }
    check_term_count(1u128 << (r - 1))?;
    let mut p = TracePolynomial::new().with(tower, TraceKind::Full, tower.square(a), (1u128 << m) + 1);
    let shift = m as i64 - r as i64;
    for i in 1..(1u128 << (r - 1)) {
        p.push(tower, TraceKind::Full, b, index_exponent(m, shift, i));
    }
    Ok(p)
}

/// The generic form `Tr_n(A_{2^{r-1}} t^{2^m+1} + Σ_{i<2^{r-1}} A_i t^{(2^m-1)(2^{m-r}i+1)+1})`;
/// `coeffs[i - 1]` is `A_i`.
pub fn build_lk_coeff(tower: &FieldTower, r: u32, coeffs: &[FieldElement]) -> Result<TracePolynomial> {
    let m = tower.m();
    if r == 0 || r >= m {
        return domain(format!("r = {r} must satisfy 0 < r < m = {m}"));
    }
    let len = 1usize << (r - 1);
    if coeffs.len() != len {
        return domain(format!("r = {r} needs {len} coefficients, got {}", coeffs.len()));
    }
    let mut p = TracePolynomial::new();
    let shift = (m - r) as i64;
    for (i, &c) in coeffs[..len - 1].iter().enumerate() {
        p.push(tower, TraceKind::Full, c, index_exponent(m, shift, i as u128 + 1));
    }
    p.push(tower, TraceKind::Full, coeffs[len - 1], (1u128 << m) + 1);
    Ok(p)
}

/// Parameters of the quadratic-o-monomial family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuParams {
    pub r: u32,
    pub c: u32,
    #[serde(rename = "I")]
    pub i: u32,
    #[serde(rename = "J")]
    pub j: u32,
}

impl QuParams {
    fn validate(&self, m: u32) -> Result<()> {
        let QuParams { r, c, i, j } = *self;
        if !(2 < r && r <= m) {
            return domain(format!("r = {r} must satisfy 2 < r <= m = {m}"));
        }
        if !(0 < c && c + 1 < r) {
            return domain(format!("c = {c} must satisfy 0 < c < r - 1 = {}", r - 1));
        }
        if !(j < i && i + 1 < m) {
            return domain(format!("I = {i}, J = {j} must satisfy 0 <= J < I < m - 1 = {}", m - 1));
        }
        Ok(())
    }

    /// `m - 1`, `c = 1`, `I = 2`, `J = 1`: the `z^6` parameterization (`m` odd).
    pub fn segre(m: u32) -> Self {
        QuParams { r: m - 1, c: 1, i: 2, j: 1 }
    }

    /// `m = 4k - 1`: `r = 3k - 1`, `c = k`, `I = 2k`, `J = k`.
    pub fn glynn_a(k: u32) -> Self {
        QuParams { r: 3 * k - 1, c: k, i: 2 * k, j: k }
    }

    /// `m = 4k + 1`: `r = 2k`, `c = k`, `I = 3k + 1`, `J = 2k + 1`.
    pub fn glynn_b(k: u32) -> Self {
        QuParams { r: 2 * k, c: k, i: 3 * k + 1, j: 2 * k + 1 }
    }

    /// `m = 2k - 1`: `r = m - 1`, `c = k - 1`, `I = k`, `J = 1`.
    pub fn frobenius_pair(k: u32) -> Self {
        QuParams { r: 2 * k - 2, c: k - 1, i: k, j: 1 }
    }
}

/// The three coefficients `A_1, A_2, A_3` of the quadratic family.
pub fn qu_coefficients(tower: &FieldTower, p: QuParams, a: FieldElement) -> [FieldElement; 3] {
    let ai = tower.frobenius(a, p.i as i64);
    let aj = tower.frobenius(a, p.j as i64);
    let a1 = ai + FieldElement::ONE;
    let a2 = ai + aj;
    [a1, a2, a2 + FieldElement::ONE]
}

pub fn build_qu_family(tower: &FieldTower, p: QuParams, a: FieldElement) -> Result<TracePolynomial> {
    let m = tower.m();
    p.validate(m)?;
    check_unit_trace(tower, a)?;
    check_term_count(1u128 << (p.r - 1))?;
    let [a1, a2, a3] = qu_coefficients(tower, p, a);
    let a1c = tower.conj(a1);
    let shift = (m - p.r) as i64;
    let cyc = 1u128 << (p.c + 1);
    let half = 1u128 << p.c;
    let blocks = 1u128 << (p.r - p.c - 2);

    let mut f = TracePolynomial::new().with(tower, TraceKind::Sub, a3, self_conjugate_exponent(m));
    for j in 0..blocks {
        let base = cyc * j;
        for i in 1..half {
            f.push(tower, TraceKind::Full, a1, index_exponent(m, shift, base + i));
        }
        f.push(tower, TraceKind::Full, a2, index_exponent(m, shift, base + half));
        for i in half + 1..cyc {
            f.push(tower, TraceKind::Full, a1c, index_exponent(m, shift, base + i));
        }
        if j + 1 < blocks {
            f.push(tower, TraceKind::Full, a3, index_exponent(m, shift, base + cyc));
        }
    }
    Ok(f)
}

/// The class-H data induced by a family: for `t = basis·x + y`,
/// `f(t) = Tr_m(x G(y/x))` when `x ≠ 0` and `Tr_m(µ y)` otherwise, with
/// `G(z) = F(z) + µ z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedOPoly {
    pub basis: FieldElement,
    pub mu: FieldElement,
    /// Terms `(coefficient, exponent)` of `F`; exponent 0 is the constant.
    pub f: Vec<(FieldElement, u64)>,
}

fn sub_exponent(m: u32, e: u128) -> u64 {
    reduce_exponent(e, (1u64 << m) - 1)
}

/// `F(z)` induced by [`build_qu_family`], basis `(a, 1)`, `µ = A_3`.
pub fn qu_induced(tower: &FieldTower, p: QuParams, a: FieldElement) -> Result<InducedOPoly> {
    let m = tower.m();
    p.validate(m)?;
    check_unit_trace(tower, a)?;
    let fr = |k: u32| tower.frobenius(a, k as i64);
    let lo = m - p.r;
    let hi = m - p.r + p.c;
    let [_, _, a3] = qu_coefficients(tower, p, a);
    let one = FieldElement::ONE;
    let constant =
        tower.mul(a + one, a3) + tower.mul(fr(p.i), fr(lo)) + tower.mul(fr(p.j), fr(hi)) + tower.mul(fr(hi), fr(lo));
    Ok(InducedOPoly {
        basis: a,
        mu: a3,
        f: vec![
            (one, sub_exponent(m, (1u128 << hi) + (1u128 << lo))),
            (fr(lo) + fr(p.j), sub_exponent(m, 1u128 << hi)),
            (fr(hi) + fr(p.i), sub_exponent(m, 1u128 << lo)),
            (constant, 0),
        ],
    })
}

/// The companion family with `r = m - J`, `A_1 = a^{2^{m-1}}`,
/// `A_3 = a^{2^{m-1}} + a^{2^J}`.
pub fn build_g_lk2(tower: &FieldTower, j: u32, a: FieldElement) -> Result<TracePolynomial> {
    let m = tower.m();
    if j + 1 >= m {
        return domain(format!("J = {j} must satisfy 0 <= J < m - 1 = {}", m - 1));
    }
    check_unit_trace(tower, a)?;
    let r = m - j;
    check_term_count(1u128 << (r - 1))?;
    let a1 = tower.frobenius(a, m as i64 - 1);
    let a3 = a1 + tower.frobenius(a, j as i64);
    let mut f = TracePolynomial::new().with(tower, TraceKind::Sub, a3, self_conjugate_exponent(m));
    for i in 1..(1u128 << (r - 1)) {
        f.push(tower, TraceKind::Full, a1, index_exponent(m, j as i64, i));
    }
    Ok(f)
}

/// Parameters of the cubic-o-monomial family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicParams {
    #[serde(rename = "I")]
    pub i: u32,
    #[serde(rename = "J")]
    pub j: u32,
}

impl CubicParams {
    fn validate(&self, m: u32) -> Result<()> {
        if !(self.j + 1 < self.i && self.i + 1 < m) {
            return domain(format!("I = {}, J = {} must satisfy 0 < J + 1 < I < m - 1 = {}", self.i, self.j, m - 1));
        }
        Ok(())
    }

    /// `m = 2k - 1`: `I = k + 1`, `J = 2`.
    pub fn for_k(k: u32) -> Self {
        CubicParams { i: k + 1, j: 2 }
    }

    /// `3·2^{I-1} + 2^J`.
    pub fn monomial_exponent(&self) -> u128 {
        3 * (1u128 << (self.i - 1)) + (1u128 << self.j)
    }
}

/// `A_1, A_2, A_3` of the cubic family.
pub fn cubic_coefficients(tower: &FieldTower, p: CubicParams, a: FieldElement) -> [FieldElement; 3] {
    let e = p.monomial_exponent();
    let a1 = tower.pow(a, 3 * (1u128 << (p.i - 1)));
    let a2 =
        tower.mul(tower.frobenius(a, p.i as i64), tower.frobenius(a, p.i as i64 - 1) + tower.frobenius(a, p.j as i64));
    let a3 = tower.pow(a, e) + tower.pow(a + FieldElement::ONE, e);
    [a1, a2, a3]
}

pub fn build_cubic_family(tower: &FieldTower, p: CubicParams, a: FieldElement) -> Result<TracePolynomial> {
    let m = tower.m();
    p.validate(m)?;
    check_unit_trace(tower, a)?;
    check_term_count(1u128 << (m - p.j - 1))?;
    let [a1, a2, a3] = cubic_coefficients(tower, p, a);
    let order = tower.order() as u128;
    let e = (1u128 << (p.i - 1)) * ((1u128 << m) - 1) % order;
    let ae: Vec<FieldElement> = (0..4).map(|j| tower.pow(a, j * e)).collect();
    let width = 1u128 << (p.i - p.j - 1);
    let shift = p.j as i64;
    let blocks = 1u128 << (m - p.i - 2);

    let mut f = TracePolynomial::new().with(tower, TraceKind::Sub, a3, self_conjugate_exponent(m));
    for l in 0..blocks {
        for (j, &aej) in ae.iter().enumerate() {
            let base = width * (4 * l + j as u128);
            let c1 = tower.mul(a1, aej);
            for i in 1..width {
                f.push(tower, TraceKind::Full, c1, index_exponent(m, shift, base + i));
            }
            if j < 3 {
                f.push(tower, TraceKind::Full, tower.mul(a2, aej), index_exponent(m, shift, base + width));
            }
        }
        if l + 1 < blocks {
            f.push(tower, TraceKind::Full, a3, index_exponent(m, shift, width * (4 * l + 4)));
        }
    }
    Ok(f)
}

/// `F(z)` induced by [`build_cubic_family`], basis `(a + 1, 1)`, `µ = A_3`.
pub fn cubic_induced(tower: &FieldTower, p: CubicParams, a: FieldElement) -> Result<InducedOPoly> {
    let m = tower.m();
    p.validate(m)?;
    check_unit_trace(tower, a)?;
    let e = p.monomial_exponent();
    let one = FieldElement::ONE;
    let [_, _, a3] = cubic_coefficients(tower, p, a);
    Ok(InducedOPoly {
        basis: a + one,
        mu: a3,
        f: vec![(one, sub_exponent(m, e)), (tower.pow(a, e + 1) + tower.pow(a + one, e + 1), 0)],
    })
}

/// The three summands of the trinomial construction for `m = 2k - 1`.
pub fn trinomial_parts(tower: &FieldTower, k: u32, a: FieldElement) -> Result<[TracePolynomial; 3]> {
    let m = tower.m();
    if m != 2 * k - 1 || m <= 5 {
        return domain(format!("the trinomial sum needs m = 2k - 1 > 5, got m = {m}, k = {k}"));
    }
    check_unit_trace(tower, a)?;
    Ok([
        build_lk(tower, a, k - 1)?,
        build_qu_family(tower, QuParams::frobenius_pair(k), a)?,
        build_cubic_family(tower, CubicParams::for_k(k), a + FieldElement::ONE)?,
    ])
}

/// Sum of [`trinomial_parts`], merged.
pub fn build_trinomial_sum(tower: &FieldTower, k: u32, a: FieldElement) -> Result<TracePolynomial> {
    Ok(TracePolynomial::sum(&trinomial_parts(tower, k, a)?).merged())
}

/// Family tag for [`FamilyParams`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Quadratic,
    #[serde(rename = "binomial_3")]
    Binomial3,
    #[serde(rename = "binomial_16")]
    Binomial16,
    Lk,
    LkCoeff,
    QuFamily,
    GLk2,
    #[serde(alias = "cubic")]
    CubicFamily,
    #[serde(alias = "trinomial")]
    TrinomialSum,
}

/// Serializable constructor arguments. Missing `a` is resolved to the
/// smallest element with `a + a^{2^m} = 1` (or `1` for the quadratic
/// family); missing `b` to `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    #[serde(default, rename = "I", skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(default, rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_hex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_hex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs_hex: Option<Vec<String>>,
    /// Lifts the `gcd(r, m) = 1` check of the `lk` family.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unchecked: bool,
}

impl FamilyParams {
    pub fn new(family: Family, m: u32) -> Self {
        FamilyParams {
            family,
            m,
            r: None,
            c: None,
            i: None,
            j: None,
            k: None,
            a_hex: None,
            b_hex: None,
            coeffs_hex: None,
            unchecked: false,
        }
    }

    fn need(v: Option<u32>, name: &str, family: Family) -> Result<u32> {
        v.ok_or_else(|| Error::Domain(format!("family {family:?} needs parameter {name}")))
    }

    fn element(tower: &FieldTower, hex: &Option<String>) -> Result<Option<FieldElement>> {
        match hex.as_deref() {
            None | Some("auto") => Ok(None),
            Some(h) => tower.parse_element(h).map(Some),
        }
    }

    /// The `a` the constructor will use.
    pub fn resolve_a(&self, tower: &FieldTower) -> Result<FieldElement> {
        match Self::element(tower, &self.a_hex)? {
            Some(a) => Ok(a),
            None if self.family == Family::Quadratic => Ok(FieldElement::ONE),
            None => tower.find_unit_relative_trace(false),
        }
    }

    /// Builds the polynomial the parameters describe.
    pub fn build(&self, tower: &FieldTower) -> Result<TracePolynomial> {
        if tower.m() != self.m {
            return domain(format!("parameters are for m = {}, tower has m = {}", self.m, tower.m()));
        }
        let fam = self.family;
        Ok(match fam {
            Family::Quadratic => build_quadratic(tower, self.resolve_a(tower)?)?,
            Family::Binomial3 | Family::Binomial16 => {
                let b = Self::element(tower, &self.b_hex)?.unwrap_or(FieldElement::ONE);
                let variant = if fam == Family::Binomial3 { BinomialVariant::D2_3 } else { BinomialVariant::D2_16 };
                build_binomial(tower, b, variant)?
            }
            Family::Lk => {
                let r = Self::need(self.r, "r", fam)?;
                let a = self.resolve_a(tower)?;
                if self.unchecked {
                    build_lk_unchecked(tower, a, r)?
                } else {
                    build_lk(tower, a, r)?
                }
            }
            Family::LkCoeff => {
                let r = Self::need(self.r, "r", fam)?;
                let coeffs = self
                    .coeffs_hex
                    .as_ref()
                    .ok_or_else(|| Error::Domain("family lk_coeff needs coeffs_hex".into()))?
                    .iter()
                    .map(|h| tower.parse_element(h))
                    .collect::<Result<Vec<_>>>()?;
                build_lk_coeff(tower, r, &coeffs)?
            }
            Family::QuFamily => {
                let p = QuParams {
                    r: Self::need(self.r, "r", fam)?,
                    c: Self::need(self.c, "c", fam)?,
                    i: Self::need(self.i, "I", fam)?,
                    j: Self::need(self.j, "J", fam)?,
                };
                build_qu_family(tower, p, self.resolve_a(tower)?)?
            }
            Family::GLk2 => build_g_lk2(tower, Self::need(self.j, "J", fam)?, self.resolve_a(tower)?)?,
            Family::CubicFamily => {
                let p = CubicParams { i: Self::need(self.i, "I", fam)?, j: Self::need(self.j, "J", fam)? };
                build_cubic_family(tower, p, self.resolve_a(tower)?)?
            }
            Family::TrinomialSum => {
                let k = Self::need(self.k, "k", fam)?;
                build_trinomial_sum(tower, k, self.resolve_a(tower)?)?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{algebraic_degree, evaluate, is_affine_difference, is_bent, Pairing};

    fn tower(m: u32) -> FieldTower {
        FieldTower::new(m).unwrap()
    }

    fn bent(t: &FieldTower, p: &TracePolynomial) -> bool {
        is_bent(&evaluate(t, p).unwrap(), Pairing::Trace(t)).unwrap().bent
    }

    fn unit(t: &FieldTower) -> FieldElement {
        t.find_unit_relative_trace(false).unwrap()
    }

    /// Direct evaluation of `G(z)` from its term list.
    fn eval_f(t: &FieldTower, f: &[(FieldElement, u64)], z: FieldElement) -> FieldElement {
        f.iter().map(|&(c, e)| t.mul(c, t.pow(z, e as u128))).sum()
    }

    /// `f(basis·x + y)` against the class-H formula at every `(x, y)`.
    fn matches_class_h(t: &FieldTower, p: &TracePolynomial, ind: &InducedOPoly) {
        let tt = evaluate(t, p).unwrap();
        let sub = t.subfield_elements();
        for &x in &sub {
            for &y in &sub {
                let pt = t.mul(ind.basis, x) + y;
                let expect = if x.is_zero() {
                    t.sub_trace(t.mul(ind.mu, y)).unwrap()
                } else {
                    let z = t.div(y, x).unwrap();
                    let g = eval_f(t, &ind.f, z) + t.mul(ind.mu, z);
                    t.sub_trace(t.mul(x, g)).unwrap()
                };
                assert_eq!(tt.get(pt.value() as usize) as u8, expect, "x = {x}, y = {y}");
            }
        }
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalize_exponent(4, 1, 2).unwrap().s, 9);
        assert_eq!(normalize_exponent(4, 3, 1).unwrap().d, 46);
        for m in 2..=8 {
            let e = normalize_exponent(m, (1 << (m - 1)) + 1, 1).unwrap();
            assert_eq!(e.coset_leader, coset_leader((1u128 << m) + 1, 2 * m));
            assert_eq!(e.d as u128 % ((1u128 << m) - 1), 1);
        }
        assert!(normalize_exponent(4, 1, 17).is_err());
        let e = normalize_exponent(5, 7, 5).unwrap();
        assert_eq!(e.s * 5 % 33, 7);
        assert_eq!(e.conjugate, (e.d << 5) % 1023);
    }

    #[test]
    fn weights_and_cosets() {
        assert_eq!(two_weight(0), 0);
        assert_eq!(two_weight(index_exponent(5, 2, 2) % 1023), 3);
        for j in 0..10 {
            assert_eq!(coset_leader(33u128 << j, 10), 33);
        }
        assert_eq!(coset_leader(1023, 10), 1023);
        assert_eq!(coset_leader(0, 10), 0);
    }

    #[test]
    fn quadratic() {
        let t = tower(3);
        let p = build_quadratic(&t, FieldElement::ONE).unwrap();
        let tt = evaluate(&t, &p).unwrap();
        assert!(is_bent(&tt, Pairing::Trace(&t)).unwrap().bent);
        assert_eq!(algebraic_degree(&tt), 2);
        let t4 = tower(4);
        for a in t4.subfield_elements().into_iter().skip(1) {
            assert!(bent(&t4, &build_quadratic(&t4, a).unwrap()));
        }
        assert!(build_quadratic(&t, FieldElement::ZERO).is_err());
        assert!(build_quadratic(&t, t.generator()).is_err());
    }

    #[test]
    fn binomials() {
        let t = tower(4);
        assert_eq!(binomial_exponent(4, BinomialVariant::D2_3).unwrap(), 46);
        let p = build_binomial(&t, FieldElement::ONE, BinomialVariant::D2_3).unwrap();
        let tt = evaluate(&t, &p).unwrap();
        assert!(is_bent(&tt, Pairing::Trace(&t)).unwrap().bent);
        assert_eq!(algebraic_degree(&tt), 4);

        for m in [2, 4, 6] {
            let t = tower(m);
            let d = binomial_exponent(m, BinomialVariant::D2_16).unwrap();
            let order = (1u128 << (2 * m)) - 1;
            assert_eq!(6 * d as u128 % order, ((1u128 << m) + 5) % order);
            assert_eq!(d % ((1 << m) - 1), 1 % ((1 << m) - 1));
            for b in [FieldElement::ONE, t.generator()] {
                assert!(bent(&t, &build_binomial(&t, b, BinomialVariant::D2_16).unwrap()), "m = {m}");
            }
        }
        assert_eq!(binomial_exponent(6, BinomialVariant::D2_16).unwrap(), 694);
        assert!(binomial_exponent(5, BinomialVariant::D2_16).is_err());
        assert!(build_binomial(&t, FieldElement::ZERO, BinomialVariant::D2_3).is_err());
    }

    #[test]
    fn lk_bent_with_degree_r_plus_one() {
        for m in 3..=6 {
            let t = tower(m);
            let a = unit(&t);
            for r in 2..m {
                if gcd(r as u64, m as u64) != 1 {
                    assert!(build_lk(&t, a, r).is_err());
                    continue;
                }
                let tt = evaluate(&t, &build_lk(&t, a, r).unwrap()).unwrap();
                assert!(is_bent(&tt, Pairing::Trace(&t)).unwrap().bent, "m = {m}, r = {r}");
                assert_eq!(algebraic_degree(&tt), r + 1, "m = {m}, r = {r}");
            }
        }
    }

    #[test]
    fn lk_exponents_are_niho_and_coset_distinct() {
        for m in 3..=7 {
            for r in 2..m {
                let mut leaders = std::collections::HashSet::new();
                for i in 1..(1u128 << (r - 1)) {
                    let e = index_exponent(m, (m - r) as i64, i);
                    assert_eq!(e % ((1 << m) - 1), 1);
                    assert!(leaders.insert(coset_leader(e, 2 * m)));
                }
            }
        }
    }

    #[test]
    fn lk_ea_normalization() {
        let t = tower(5);
        let a = t.generator();
        let b = t.rel_trace_nm(a);
        assert_ne!(b, FieldElement::ONE);
        let a_norm = t.div(a, b).unwrap();
        let binv = t.inv(b).unwrap();
        let f = evaluate(&t, &build_lk(&t, a, 3).unwrap()).unwrap();
        let g = evaluate(&t, &build_lk(&t, a_norm, 3).unwrap()).unwrap();
        let substituted = f.map_inputs(|x| t.mul(binv, FieldElement::new(x as u64)).value() as usize);
        assert_eq!(substituted, g);
    }

    #[test]
    fn lk_degenerate_r() {
        let t = tower(5);
        let a = unit(&t);
        let quad = build_quadratic(&t, t.square(t.rel_trace_nm(a))).unwrap();
        let f = evaluate(&t, &build_lk(&t, a, 6).unwrap()).unwrap();
        assert!(is_affine_difference(&f, &evaluate(&t, &quad).unwrap()).unwrap());
        for s in 2..5 {
            let big = evaluate(&t, &build_lk(&t, a, 5 + s).unwrap()).unwrap();
            let small = evaluate(&t, &build_lk(&t, a, s).unwrap()).unwrap();
            assert!(is_affine_difference(&big, &small).unwrap(), "s = {s}");
        }
        assert!(build_lk(&t, a, 5).is_err());
        assert!(build_lk_unchecked(&t, a, 5).is_ok());
    }

    #[test]
    fn lk_coeff_specializes() {
        let t = tower(5);
        let a = t.generator();
        for r in 2..5 {
            let coeffs = lk_coefficients(&t, a, r).unwrap();
            let p = build_lk_coeff(&t, r, &coeffs).unwrap();
            assert_eq!(evaluate(&t, &p).unwrap(), evaluate(&t, &build_lk_unchecked(&t, a, r).unwrap()).unwrap());
        }
        let zeros = vec![FieldElement::ZERO; 4];
        assert!(evaluate(&t, &build_lk_coeff(&t, 3, &zeros).unwrap()).unwrap().is_zero());
        assert!(build_lk_coeff(&t, 5, &zeros).is_err());
        assert!(build_lk_coeff(&t, 3, &zeros[..3]).is_err());
    }

    #[test]
    fn qu_family_parameterizations() {
        let cases = [
            (5, QuParams::segre(5)),
            (7, QuParams::segre(7)),
            (7, QuParams::glynn_a(2)),
            (7, QuParams::frobenius_pair(4)),
            (5, QuParams::frobenius_pair(3)),
        ];
        for (m, p) in cases {
            let t = tower(m);
            let a = unit(&t);
            let f = build_qu_family(&t, p, a).unwrap();
            assert!(bent(&t, &f), "m = {m}, {p:?}");
            matches_class_h(&t, &f, &qu_induced(&t, p, a).unwrap());
        }
    }

    #[test]
    fn qu_family_induced_form_for_generic_params() {
        let t = tower(6);
        let a = unit(&t);
        let p = QuParams { r: 5, c: 2, i: 3, j: 0 };
        matches_class_h(&t, &build_qu_family(&t, p, a).unwrap(), &qu_induced(&t, p, a).unwrap());
    }

    #[test]
    fn qu_family_rejects_bad_params() {
        let t = tower(5);
        let a = unit(&t);
        assert!(build_qu_family(&t, QuParams { r: 2, c: 1, i: 2, j: 1 }, a).is_err());
        assert!(build_qu_family(&t, QuParams { r: 4, c: 3, i: 2, j: 1 }, a).is_err());
        assert!(build_qu_family(&t, QuParams { r: 4, c: 1, i: 4, j: 1 }, a).is_err());
        assert!(build_qu_family(&t, QuParams::segre(5), t.generator()).is_err());
    }

    #[test]
    fn g_lk2_shapes() {
        let t = tower(5);
        let a = unit(&t);
        assert_eq!(build_g_lk2(&t, 3, a).unwrap().len(), 2);
        assert!(build_g_lk2(&t, 4, a).is_err());
        let t4 = tower(4);
        assert_eq!(build_g_lk2(&t4, 0, unit(&t4)).unwrap().len(), 8);
    }

    #[test]
    fn cubic_family() {
        let t = tower(7);
        let a = unit(&t);
        let p = CubicParams::for_k(4);
        let f = build_cubic_family(&t, p, a).unwrap();
        assert!(bent(&t, &f));
        let ind = cubic_induced(&t, p, a).unwrap();
        assert_eq!(ind.f[0].1, 52);
        matches_class_h(&t, &f, &ind);
        assert!(build_cubic_family(&t, CubicParams { i: 3, j: 2 }, a).is_err());
    }

    #[test]
    fn cubic_family_generic_params_match_class_h() {
        let t = tower(6);
        let a = unit(&t);
        for p in [CubicParams { i: 2, j: 0 }, CubicParams { i: 4, j: 1 }, CubicParams { i: 3, j: 0 }] {
            matches_class_h(&t, &build_cubic_family(&t, p, a).unwrap(), &cubic_induced(&t, p, a).unwrap());
        }
    }

    #[test]
    fn trinomial_sum() {
        let t = tower(7);
        let a = unit(&t);
        let parts = trinomial_parts(&t, 4, a).unwrap();
        for p in &parts {
            assert!(bent(&t, p));
        }
        let sum = build_trinomial_sum(&t, 4, a).unwrap();
        assert!(bent(&t, &sum));
        let mut coeffs: Vec<FieldElement> =
            sum.terms().iter().filter(|x| x.kind == TraceKind::Full).map(|x| x.coef).collect();
        coeffs.sort_unstable();
        coeffs.dedup();
        assert!(coeffs.len() <= 10, "{} distinct coefficients", coeffs.len());
        assert!(build_trinomial_sum(&tower(5), 3, unit(&tower(5))).is_err());
    }

    #[test]
    fn family_params_json() {
        let js = r#"{"family":"lk","m":5,"r":2}"#;
        let p: FamilyParams = serde_json::from_str(js).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), js);
        let t = tower(5);
        let built = p.build(&t).unwrap();
        assert_eq!(built, build_lk(&t, unit(&t), 2).unwrap());

        let q: FamilyParams = serde_json::from_str(r#"{"family":"qu_family","m":5,"r":4,"c":1,"I":2,"J":1}"#).unwrap();
        assert!(bent(&t, &q.build(&t).unwrap()));
        let bad: FamilyParams = serde_json::from_str(r#"{"family":"lk","m":6,"r":2}"#).unwrap();
        assert!(bad.build(&tower(6)).is_err());
        let unchecked = FamilyParams { unchecked: true, ..bad };
        assert!(unchecked.build(&tower(6)).is_ok());
    }
}
