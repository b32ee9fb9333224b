//! Maps on the subfield GF(2^m): o-polynomial checks, a catalog of known
//! o-polynomials, inverses, the `z F(1/z)` transform and the equivalent
//! o-monomial tables.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::gf2::{gcd, reduce_exponent, reduce_signed_exponent, FieldElement, FieldTower};

/// The subfield of a tower with a dense index `0..2^m`.
#[derive(Clone, Debug)]
pub struct Subfield<'a> {
    tower: &'a FieldTower,
    elems: Vec<FieldElement>,
    index: HashMap<FieldElement, usize>,
}

impl<'a> Subfield<'a> {
    pub fn new(tower: &'a FieldTower) -> Self {
        let elems = tower.subfield_elements();
        let index = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Subfield { tower, elems, index }
    }

    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn m(&self) -> u32 {
        self.tower.m()
    }

    /// `2^m`.
    pub fn size(&self) -> usize {
        self.elems.len()
    }

    /// `2^m - 1`.
    pub fn order(&self) -> u64 {
        self.tower.sub_order()
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elems
    }

    pub fn element(&self, idx: usize) -> FieldElement {
        self.elems[idx]
    }

    pub fn index_of(&self, x: FieldElement) -> Result<usize> {
        self.index
            .get(&x)
            .copied()
            .ok_or_else(|| Error::Domain(format!("{} is outside GF(2^{})", self.tower.fmt_element(x), self.m())))
    }

    /// `x^e` for a subfield `x`, exponent taken modulo `2^m - 1`.
    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        let e = reduce_exponent(e as u128, self.order());
        if e == 0 {
            FieldElement::ONE
        } else {
            self.tower.pow(x, e as u128)
        }
    }
}

/// A map on GF(2^m) with its sparse polynomial and full value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OPolyMap {
    m: u32,
    /// `(coefficient, exponent)` sorted by exponent, exponents in
    /// `{0} ∪ [1, 2^m - 1]`, coefficients nonzero.
    terms: Vec<(FieldElement, u64)>,
    /// `table[i]` is the value at `Subfield::element(i)`.
    table: Vec<FieldElement>,
}

fn normalize_terms(order: u64, terms: impl IntoIterator<Item = (FieldElement, u64)>) -> Vec<(FieldElement, u64)> {
    let mut acc: std::collections::BTreeMap<u64, FieldElement> = Default::default();
    for (c, e) in terms {
        *acc.entry(reduce_exponent(e as u128, order)).or_default() += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (c, e)).collect()
}

impl OPolyMap {
    /// The map `z ↦ Σ c z^e`; coefficients must lie in the subfield.
    pub fn from_terms(sub: &Subfield<'_>, terms: &[(FieldElement, u64)]) -> Result<Self> {
        for &(c, _) in terms {
            sub.index_of(c)?;
        }
        let terms = normalize_terms(sub.order(), terms.iter().copied());
        let table =
            sub.elements().iter().map(|&z| terms.iter().map(|&(c, e)| sub.tower.mul(c, sub.pow(z, e))).sum()).collect();
        Ok(OPolyMap { m: sub.m(), terms, table })
    }

    /// The monomial `z^e`.
    pub fn monomial(sub: &Subfield<'_>, e: u64) -> Self {
        Self::from_terms(sub, &[(FieldElement::ONE, e)]).expect("1 is in every subfield")
    }

    /// Builds the map from its values and recovers the polynomial by
    /// interpolation.
    pub fn from_table(sub: &Subfield<'_>, table: Vec<FieldElement>) -> Result<Self> {
        if table.len() != sub.size() {
            return domain(format!("table has {} entries, expected {}", table.len(), sub.size()));
        }
        for &v in &table {
            sub.index_of(v)?;
        }
        let terms = interpolate(sub, &table);
        Ok(OPolyMap { m: sub.m(), terms, table })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> &[(FieldElement, u64)] {
        &self.terms
    }

    pub fn table(&self) -> &[FieldElement] {
        &self.table
    }

    pub fn eval(&self, sub: &Subfield<'_>, z: FieldElement) -> Result<FieldElement> {
        Ok(self.table[sub.index_of(z)?])
    }

    /// `F(z) + c z^e` as a new map.
    pub fn plus_term(&self, sub: &Subfield<'_>, c: FieldElement, e: u64) -> Result<Self> {
        let mut t = self.terms.clone();
        t.push((c, e));
        Self::from_terms(sub, &t)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.table.len());
        self.table.iter().all(|&v| seen.insert(v))
    }

    pub fn to_json(&self, tower: &FieldTower) -> Vec<TermHex> {
        self.terms.iter().map(|&(c, e)| TermHex { coef_hex: tower.fmt_element(c), exp: e }).collect()
    }
}

/// Coefficients of the unique polynomial of degree `< 2^m` with the given
/// values: `c_0 = f(0)`, `c_k = Σ_x f(x) x^{q-1-k}` for `1 ≤ k ≤ q - 1`.
pub fn interpolate(sub: &Subfield<'_>, table: &[FieldElement]) -> Vec<(FieldElement, u64)> {
    let t = sub.tower;
    let q1 = sub.order();
    let zero_idx = 0;
    debug_assert!(sub.element(zero_idx).is_zero());
    let mut terms = vec![(table[zero_idx], 0)];
    let nonzero: Vec<(FieldElement, FieldElement)> = (1..sub.size()).map(|i| (sub.element(i), table[i])).collect();
    for k in 1..=q1 {
        let e = q1 - k;
        let mut acc = if e == 0 { table[zero_idx] } else { FieldElement::ZERO };
        for &(x, fx) in &nonzero {
            if !fx.is_zero() {
                acc += t.mul(fx, sub.pow(x, e));
            }
        }
        terms.push((acc, k));
    }
    normalize_terms(q1, terms)
}

/// A `(coefficient, exponent)` pair in hex form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermHex {
    pub coef_hex: String,
    pub exp: u64,
}

/// A value of `F(z) + βz` hit other than 0 or 2 times.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OPolyWitness {
    pub beta: FieldElement,
    pub value: FieldElement,
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OPolyVerdict {
    pub is_opoly: bool,
    pub is_permutation: bool,
    pub witness: Option<OPolyWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub beta_hex: String,
    pub value_hex: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub m: u32,
    pub terms: Vec<TermHex>,
    pub is_opoly: bool,
    pub is_permutation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

impl OPolyVerdict {
    pub fn to_json(&self, tower: &FieldTower, f: &OPolyMap) -> VerdictJson {
        VerdictJson {
            m: f.m,
            terms: f.to_json(tower),
            is_opoly: self.is_opoly,
            is_permutation: self.is_permutation,
            witness: self.witness.map(|w| WitnessJson {
                beta_hex: tower.fmt_element(w.beta),
                value_hex: tower.fmt_element(w.value),
                count: w.count,
            }),
        }
    }
}

/// Whether `z ↦ F(z) + βz` is 2-to-1 for every nonzero `β`.
pub fn is_opolynomial(sub: &Subfield<'_>, f: &OPolyMap) -> OPolyVerdict {
    let t = sub.tower;
    let size = sub.size();
    let mut counts = vec![0usize; size];
    let mut witness = None;
    'beta: for bi in 1..size {
        let beta = sub.element(bi);
        counts.iter_mut().for_each(|c| *c = 0);
        for (zi, &fz) in f.table.iter().enumerate() {
            let v = fz + t.mul(beta, sub.element(zi));
            counts[sub.index[&v]] += 1;
        }
        for (vi, &c) in counts.iter().enumerate() {
            if c != 0 && c != 2 {
                witness = Some(OPolyWitness { beta, value: sub.element(vi), count: c });
                break 'beta;
            }
        }
    }
    OPolyVerdict { is_opoly: witness.is_none(), is_permutation: f.is_permutation(), witness }
}

/// The compositional inverse of a permutation.
pub fn inverse_map(sub: &Subfield<'_>, f: &OPolyMap) -> Result<OPolyMap> {
    let mut inv = vec![None; sub.size()];
    for (zi, &v) in f.table.iter().enumerate() {
        let vi = sub.index_of(v)?;
        if inv[vi].is_some() {
            return domain(format!("map is not a permutation: {} is hit twice", sub.tower.fmt_element(v)));
        }
        inv[vi] = Some(sub.element(zi));
    }
    OPolyMap::from_table(sub, inv.into_iter().map(|x| x.expect("bijection")).collect())
}

/// `z ↦ z F(z^{-1})` on nonzero `z`, `0 ↦ 0`.
pub fn transform_zfinv(sub: &Subfield<'_>, f: &OPolyMap) -> Result<OPolyMap> {
    let q1 = sub.order();
    let terms: Vec<(FieldElement, u64)> =
        f.terms.iter().map(|&(c, e)| (c, reduce_signed_exponent(1 - e as i128, q1))).collect();
    OPolyMap::from_terms(sub, &terms)
}

/// `p / q` modulo `2^m - 1`.
pub fn fraction_exponent(m: u32, p: u64, q: u64) -> Result<u64> {
    let order = (1u64 << m) - 1;
    if gcd(q, order) != 1 {
        return domain(format!("{q} is not invertible modulo 2^{m} - 1"));
    }
    let inv = (1..order).find(|&x| x * q % order == 1).unwrap_or(1);
    Ok(reduce_exponent(p as u128 * inv as u128, order))
}

/// Which o-polynomial shape an entry instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogKind {
    Frobenius,
    Segre,
    GlynnA,
    GlynnB,
    PairedFrobenius,
    TranslatedFrobenius,
    Cubic,
    Trinomial,
    FractionalTrinomial,
}

/// A catalog entry instantiated at a given `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub kind: CatalogKind,
    pub name: String,
    pub m: u32,
    /// Exponents of the monomials, all coefficients 1.
    pub exponents: Vec<u64>,
}

impl CatalogEntry {
    pub fn map(&self, sub: &Subfield<'_>) -> OPolyMap {
        let terms: Vec<_> = self.exponents.iter().map(|&e| (FieldElement::ONE, e)).collect();
        OPolyMap::from_terms(sub, &terms).expect("unit coefficients")
    }
}

fn sub_exp(m: u32, e: u128) -> u64 {
    reduce_exponent(e, (1u64 << m) - 1)
}

/// Every entry kind whose exponent formula parses at `m`, with a flag for
/// whether its validity condition holds. Entries of one kind with several
/// instances (Frobenius) are expanded.
pub fn catalog_candidates(m: u32) -> Vec<(CatalogEntry, bool)> {
    let mut out = Vec::new();
    let odd = m % 2 == 1;
    let mut push = |kind, name: String, exponents: Vec<u64>, valid: bool| {
        out.push((CatalogEntry { kind, name, m, exponents }, valid));
    };
    for i in 1..m {
        push(CatalogKind::Frobenius, format!("z^(2^{i})"), vec![sub_exp(m, 1 << i)], gcd(i as u64, m as u64) == 1);
    }
    push(CatalogKind::Segre, "z^6".into(), vec![sub_exp(m, 6)], odd);
    if (m + 1).is_multiple_of(4) {
        let k = (m + 1) / 4;
        push(CatalogKind::GlynnA, format!("z^(2^{}+2^{k})", 2 * k), vec![sub_exp(m, (1 << (2 * k)) + (1 << k))], true);
    }
    if m % 4 == 1 && m > 1 {
        let k = (m - 1) / 4;
        let e = (1u128 << (3 * k + 1)) + (1u128 << (2 * k + 1));
        push(CatalogKind::GlynnB, format!("z^(2^{}+2^{})", 3 * k + 1, 2 * k + 1), vec![sub_exp(m, e)], true);
    }
    if odd && m >= 3 {
        let k = m.div_ceil(2);
        push(CatalogKind::PairedFrobenius, format!("z^(2^{k}+2)"), vec![sub_exp(m, (1 << k) + 2)], k >= 2);
        push(CatalogKind::Cubic, format!("z^(3*2^{k}+4)"), vec![sub_exp(m, 3 * (1 << k) + 4)], true);
        push(
            CatalogKind::Trinomial,
            format!("z^(2^{k})+z^(2^{k}+2)+z^(3*2^{k}+4)"),
            vec![sub_exp(m, 1 << k), sub_exp(m, (1 << k) + 2), sub_exp(m, 3 * (1 << k) + 4)],
            true,
        );
    }
    if m >= 2 {
        let e = (1u128 << (m - 1)) + (1u128 << (m - 2));
        push(CatalogKind::TranslatedFrobenius, format!("z^(2^{}+2^{})", m - 1, m - 2), vec![sub_exp(m, e)], odd);
    }
    if let (Ok(a), Ok(b), Ok(c)) = (fraction_exponent(m, 1, 6), fraction_exponent(m, 1, 2), fraction_exponent(m, 5, 6))
    {
        push(CatalogKind::FractionalTrinomial, "z^(1/6)+z^(1/2)+z^(5/6)".into(), vec![a, b, c], odd);
    }
    out
}

/// Entries whose validity condition holds at `m`.
pub fn catalog(m: u32) -> Vec<CatalogEntry> {
    catalog_candidates(m).into_iter().filter(|(_, v)| *v).map(|(e, _)| e).collect()
}

/// One cell of the equivalent-monomial table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    /// 1, 2 or 3.
    pub column: u8,
    pub exponent: u64,
    pub expected_degree: u32,
    /// Human-readable applicability condition for split rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    /// Whether the condition holds at this `m`; `None` when it is unclear
    /// whether the formula covers this cell.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub applies: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub m: u32,
    pub k: u32,
    /// The `G_1` map; polynomial rows carry several exponents.
    pub g1: Vec<u64>,
    pub cells: Vec<TableCell>,
}

fn bits(idx: impl IntoIterator<Item = i64>) -> u128 {
    idx.into_iter().filter(|&i| i >= 0).map(|i| 1u128 << i).sum()
}

fn range(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    lo..=hi
}

fn cell(m: u32, column: u8, e: i128, d: i64, cond: Option<(&str, Option<bool>)>) -> TableCell {
    TableCell {
        column,
        exponent: reduce_signed_exponent(e, (1u64 << m) - 1),
        expected_degree: d as u32,
        condition: cond.map(|(c, _)| c.to_string()),
        applies: cond.and_then(|(_, a)| a),
    }
}

/// The rows of the equivalent o-monomial table (and the o-trinomial row)
/// that apply at `m`, with exponents instantiated. `G_2 = G_1^{-1}` and
/// `G_3 = (z G_2(z^{-1}))^{-1}`.
pub fn table1_report(m: u32) -> Vec<TableRow> {
    let mut rows = Vec::new();
    if m < 3 || m.is_multiple_of(2) {
        return rows;
    }
    let mi = m as i64;
    let p = |e: i64| 1i128 << e;

    // m = 2k - 1.
    let k = (mi + 1) / 2;
    rows.push(TableRow {
        family: "frobenius".into(),
        m,
        k: k as u32,
        g1: vec![sub_exp(m, 1 << k)],
        cells: vec![cell(m, 1, p(k), k, None), cell(m, 2, p(k - 1), k + 1, None), cell(m, 3, p(k) + 2, mi, None)],
    });

    // z^6, m odd.
    let g2 = bits(range(0, (mi - 3) / 2).map(|i| 2 * i + 1)) + (1u128 << (mi - 1));
    let g3 = if m % 4 == 1 {
        let kk = (mi - 1) / 4;
        cell(
            m,
            3,
            2 + bits(range(1, kk).map(|i| 4 * i)) as i128 + bits(range(1, kk).map(|i| 4 * i - 1)) as i128,
            mi,
            None,
        )
    } else {
        let kk = (mi - 3) / 4;
        cell(
            m,
            3,
            4 + bits(range(1, kk).map(|i| 4 * i)) as i128 + bits(range(1, kk).map(|i| 4 * i + 1)) as i128,
            mi - 1,
            None,
        )
    };
    rows.push(TableRow {
        family: "segre".into(),
        m,
        k: ((mi - 1) / 4) as u32,
        g1: vec![sub_exp(m, 6)],
        cells: vec![cell(m, 1, 6, mi, None), cell(m, 2, g2 as i128, mi, None), g3],
    });

    if m % 4 == 3 {
        let k = (mi + 1) / 4;
        let odd_k = k % 2 == 1;
        let mut cells = vec![
            cell(m, 1, p(2 * k) + p(k), 3 * k, None),
            cell(m, 2, p(mi) - p(3 * k - 1) + p(2 * k) - p(k), 3 * k, None),
        ];
        if odd_k {
            let e = 2
                + bits(range(1, (k - 1) / 2).map(|i| 2 * i))
                + bits(range((k - 1) / 2, (3 * k - 3) / 2).map(|i| 2 * i + 1));
            cells.push(cell(m, 3, e as i128, mi, Some(("k > 1 odd", Some(k > 1)))));
        } else {
            let e = p(k) as u128
                + bits(range(k / 2, (3 * k - 2) / 2).map(|i| 2 * i + 1))
                + bits(range(3 * k / 2, 2 * k - 1).map(|i| 2 * i));
            cells.push(cell(m, 3, e as i128, 3 * k, Some(("k > 0 even", Some(true)))));
        }
        rows.push(TableRow {
            family: "glynn_a".into(),
            m,
            k: k as u32,
            g1: vec![sub_exp(m, (p(2 * k) + p(k)) as u128)],
            cells,
        });
    }

    if m % 4 == 1 {
        let k = (mi - 1) / 4;
        let mut cells = vec![
            cell(m, 1, p(3 * k + 1) + p(2 * k + 1), 2 * k + 1, None),
            cell(m, 2, p(mi) - p(3 * k + 1) + p(2 * k + 1) - p(k), 3 * k + 2, None),
        ];
        if k % 2 == 1 {
            let e = p(k + 1) as u128
                + bits(range((k + 1) / 2, (3 * k - 1) / 2).map(|i| 2 * i + 1))
                + bits(range((3 * k + 1) / 2, 2 * k).map(|i| 2 * i));
            cells.push(cell(m, 3, e as i128, 3 * k + 1, Some(("k odd", Some(true)))));
        } else {
            let e = 2 + bits(range(1, k / 2).map(|i| 2 * i)) + bits(range(k / 2, (3 * k - 2) / 2).map(|i| 2 * i + 1));
            cells.push(cell(m, 3, e as i128, mi, Some(("k even, applicability unclear", None))));
        }
        rows.push(TableRow {
            family: "glynn_b".into(),
            m,
            k: k as u32,
            g1: vec![sub_exp(m, (p(3 * k + 1) + p(2 * k + 1)) as u128)],
            cells,
        });
    }

    // Cubic, m = 2k - 1.
    {
        let k = (mi + 1) / 2;
        let mut cells = vec![cell(m, 1, 3 * p(k) + 4, mi - 1, None), cell(m, 2, 3 * p(k - 1) - 2, mi, None)];
        if k % 2 == 1 {
            let e = p(k) as u128 + bits(range((k + 1) / 2, k - 1).map(|i| 2 * i));
            cells.push(cell(m, 3, e as i128, k, Some(("k odd, applicability unclear", None))));
        } else {
            let e = 2 + bits(range(1, (k - 2) / 2).map(|i| 2 * i));
            cells.push(cell(m, 3, e as i128, mi, Some(("k > 2 even", Some(k > 2)))));
        }
        rows.push(TableRow {
            family: "cubic".into(),
            m,
            k: k as u32,
            g1: vec![sub_exp(m, (3 * p(k) + 4) as u128)],
            cells,
        });
    }

    // O-trinomial, m = 2k - 1; G_2 has no monomial form.
    {
        let k = (mi + 1) / 2;
        rows.push(TableRow {
            family: "trinomial".into(),
            m,
            k: k as u32,
            g1: vec![sub_exp(m, 1 << k), sub_exp(m, (1 << k) + 2), sub_exp(m, 3 * (1 << k) + 4)],
            cells: vec![
                TableCell {
                    column: 1,
                    exponent: 0,
                    expected_degree: m,
                    condition: Some("k > 2".into()),
                    applies: Some(k > 2),
                },
                TableCell { column: 2, exponent: 0, expected_degree: m, condition: None, applies: None },
            ],
        });
    }
    rows
}

/// The `G_1`, `G_2 = G_1^{-1}`, `G_3 = (z G_2(z^{-1}))^{-1}` maps of a row,
/// computed as tables.
pub fn row_pipeline(sub: &Subfield<'_>, row: &TableRow) -> Result<[OPolyMap; 3]> {
    let terms: Vec<_> = row.g1.iter().map(|&e| (FieldElement::ONE, e)).collect();
    let g1 = OPolyMap::from_terms(sub, &terms)?;
    let g2 = inverse_map(sub, &g1)?;
    let g3 = inverse_map(sub, &transform_zfinv(sub, &g2)?)?;
    Ok([g1, g2, g3])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_sub<R>(m: u32, f: impl FnOnce(&Subfield<'_>) -> R) -> R {
        let t = FieldTower::new(m).unwrap();
        let sub = Subfield::new(&t);
        f(&sub)
    }

    #[test]
    fn frobenius_and_segre() {
        with_sub(5, |s| {
            assert!(is_opolynomial(s, &OPolyMap::monomial(s, 2)).is_opoly);
            assert!(is_opolynomial(s, &OPolyMap::monomial(s, 6)).is_opoly);
        });
        with_sub(4, |s| {
            let v = is_opolynomial(s, &OPolyMap::monomial(s, 6));
            assert!(!v.is_opoly);
            let w = v.witness.unwrap();
            assert!(w.count != 0 && w.count != 2);
        });
    }

    #[test]
    fn identity_collapses() {
        with_sub(4, |s| {
            let v = is_opolynomial(s, &OPolyMap::monomial(s, 1));
            assert!(!v.is_opoly);
            assert!(v.is_permutation);
            let w = v.witness.unwrap();
            assert_eq!((w.beta, w.value, w.count), (FieldElement::ONE, FieldElement::ZERO, 16));
        });
    }

    #[test]
    fn zero_power_convention() {
        with_sub(3, |s| {
            let c = OPolyMap::monomial(s, 0);
            assert!(c.table().iter().all(|&v| v == FieldElement::ONE));
            let f = OPolyMap::monomial(s, 7);
            assert_eq!(f.table()[0], FieldElement::ZERO);
        });
    }

    #[test]
    fn interpolation_recovers_terms() {
        with_sub(5, |s| {
            let t = s.tower();
            let g = s.element(5);
            let f = OPolyMap::from_terms(s, &[(g, 6), (FieldElement::ONE, 0), (t.square(g), 31), (g, 17)]).unwrap();
            let back = OPolyMap::from_table(s, f.table().to_vec()).unwrap();
            assert_eq!(back, f);
        });
    }

    #[test]
    fn catalog_contents() {
        let names = |m| catalog(m).into_iter().map(|e| e.exponents).collect::<Vec<_>>();
        let m5 = names(5);
        for e in [vec![6], vec![10], vec![24], vec![2], vec![4], vec![8], vec![16]] {
            assert!(m5.contains(&e), "{e:?}");
        }
        assert_eq!(fraction_exponent(5, 1, 6).unwrap(), 26);
        assert_eq!(fraction_exponent(5, 1, 2).unwrap(), 16);
        assert_eq!(fraction_exponent(5, 5, 6).unwrap(), 6);
        assert!(names(7).contains(&vec![52]));
        assert!(names(7).contains(&vec![16, 18, 52]));
        assert_eq!(names(4), vec![vec![2], vec![8]]);
        assert!(fraction_exponent(4, 1, 6).is_err());
    }

    #[test]
    fn catalog_is_sound() {
        for m in 3..=7 {
            with_sub(m, |s| {
                for (e, valid) in catalog_candidates(m) {
                    let f = e.map(s);
                    let v = is_opolynomial(s, &f);
                    if valid {
                        assert!(v.is_opoly, "m = {m}: {}", e.name);
                        assert!(e.exponents.iter().all(|x| x % 2 == 0), "{}", e.name);
                        assert!(is_opolynomial(s, &inverse_map(s, &f).unwrap()).is_opoly);
                        assert!(is_opolynomial(s, &transform_zfinv(s, &f).unwrap()).is_opoly);
                    } else if e.kind != CatalogKind::Frobenius {
                        assert!(!v.is_opoly, "m = {m}: {} should fail", e.name);
                    }
                }
            });
        }
    }

    #[test]
    fn inverse_examples() {
        with_sub(5, |s| {
            let f = OPolyMap::monomial(s, 8);
            let inv = inverse_map(s, &f).unwrap();
            assert_eq!(inv.terms(), &[(FieldElement::ONE, 4)]);
            assert_eq!(inverse_map(s, &inv).unwrap(), f);
            let g = inverse_map(s, &OPolyMap::monomial(s, 10)).unwrap();
            assert_eq!(g.terms(), &[(FieldElement::ONE, reduce_signed_exponent(1 - 4, 31))]);
            assert!(inverse_map(s, &OPolyMap::monomial(s, 0)).is_err());
        });
    }

    #[test]
    fn transform_examples() {
        with_sub(5, |s| {
            let f = transform_zfinv(s, &OPolyMap::monomial(s, 8)).unwrap();
            assert_eq!(f.terms(), &[(FieldElement::ONE, 24)]);
            let one = OPolyMap::monomial(s, 0);
            let id = transform_zfinv(s, &one).unwrap();
            assert!(!is_opolynomial(s, &id).is_opoly);
            let g = OPolyMap::monomial(s, 6);
            let back = transform_zfinv(s, &transform_zfinv(s, &g).unwrap()).unwrap();
            assert_eq!(back.table()[1..], g.table()[1..]);
        });
    }

    #[test]
    fn table_rows_match_pipeline() {
        for m in [3, 5, 7, 9] {
            with_sub(m, |s| {
                for row in table1_report(m).iter().filter(|r| r.family != "trinomial") {
                    let [_, g2, g3] = row_pipeline(s, row).unwrap();
                    assert_eq!(g2.terms().len(), 1);
                    let c2 = &row.cells[1];
                    assert_eq!(g2.terms()[0].1, c2.exponent, "m = {m} {} G2", row.family);
                    if row.cells[2].applies != Some(false) {
                        assert_eq!(
                            g3.terms(),
                            &[(FieldElement::ONE, row.cells[2].exponent)],
                            "m = {m} {} G3",
                            row.family
                        );
                    }
                }
            });
        }
    }

    #[test]
    fn table_m5_values() {
        let rows = table1_report(5);
        let fro = &rows[0];
        let e: Vec<_> = fro.cells.iter().map(|c| (c.exponent, c.expected_degree)).collect();
        assert_eq!(e, vec![(8, 3), (4, 4), (10, 5)]);
        assert_eq!(rows[1].cells[0].expected_degree, 5);
        let cubic = table1_report(7).into_iter().find(|r| r.family == "cubic").unwrap();
        assert_eq!((cubic.cells[0].exponent, cubic.cells[1].exponent), (52, 22));
    }
}
