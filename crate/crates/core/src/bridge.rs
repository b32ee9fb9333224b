//! Between bivariate class-H functions on GF(2^m)² and univariate Niho
//! trace polynomials on GF(2^{2m}).

use serde::{Deserialize, Serialize};

use crate::boolfun::{algebraic_degree, evaluate, TraceKind, TracePolynomial, TruthTable};
use crate::error::{domain, Result};
use crate::gf2::{reduce_exponent, FieldElement, FieldTower};
use crate::niho::self_conjugate_exponent;
use crate::opoly::{row_pipeline, OPolyMap, Subfield, TableRow};

/// `g(x, y) = Tr_m(x G(y/x))` for `x ≠ 0`, `Tr_m(µ y)` for `x = 0`,
/// read at `t = basis·x + y`.
#[derive(Clone, Copy, Debug)]
pub struct BivariateSpec<'a> {
    pub g: &'a OPolyMap,
    pub mu: FieldElement,
    pub basis: FieldElement,
}

pub fn bivariate_truth_table(sub: &Subfield<'_>, spec: &BivariateSpec<'_>) -> Result<TruthTable> {
    let t = sub.tower();
    if t.rel_trace_nm(spec.basis).is_zero() {
        return domain(format!("basis element {} lies in the subfield", t.fmt_element(spec.basis)));
    }
    sub.index_of(spec.mu)?;
    let mut tt = TruthTable::zeros(t.n())?;
    for &x in sub.elements() {
        let ax = t.mul(spec.basis, x);
        let xinv = if x.is_zero() { None } else { Some(t.inv(x)?) };
        for &y in sub.elements() {
            let v = match xinv {
                None => t.sub_trace(t.mul(spec.mu, y))?,
                Some(xi) => t.sub_trace(t.mul(x, spec.g.eval(sub, t.mul(y, xi))?))?,
            };
            if v == 1 {
                tt.set((ax + y).value() as usize, true);
            }
        }
    }
    Ok(tt)
}

/// A coefficient and exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpTerm {
    pub coef: FieldElement,
    pub exp: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NihoTerm {
    pub cprime: u64,
    /// `A_{c'}` before the `λ` factor.
    pub raw: FieldElement,
    /// `λ A_{c'}`.
    pub coef: FieldElement,
    pub exp: u64,
}

/// Univariate form of `Tr_m(λ x^{2^m-d} y^d)` under `x = t + t^{2^m}`,
/// `y = a t + (a t)^{2^m}`: the `Tr_n` linear term, the `Tr_m`
/// self-conjugate term and the `Tr_n` Niho terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult {
    pub m: u32,
    pub d: u64,
    /// Position of the lowest one bit of `d`.
    pub l: u32,
    pub lambda: FieldElement,
    pub a: FieldElement,
    pub linear: ExpTerm,
    pub self_conj: ExpTerm,
    pub terms: Vec<NihoTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpTermJson {
    pub coef_hex: String,
    pub exp: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NihoTermJson {
    pub cprime: u64,
    pub coef_hex: String,
    pub exp: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionJson {
    pub d: u64,
    pub l: u32,
    pub linear: ExpTermJson,
    pub self_conj: ExpTermJson,
    pub terms: Vec<NihoTermJson>,
}

impl ExpansionResult {
    pub fn to_polynomial(&self, tower: &FieldTower, include_linear: bool) -> TracePolynomial {
        let mut p = TracePolynomial::new();
        if include_linear {
            p.push(tower, TraceKind::Full, self.linear.coef, self.linear.exp as u128);
        }
        p.push(tower, TraceKind::Sub, self.self_conj.coef, self.self_conj.exp as u128);
        for t in &self.terms {
            p.push(tower, TraceKind::Full, t.coef, t.exp as u128);
        }
        p
    }

    pub fn to_json(&self, tower: &FieldTower) -> ExpansionJson {
        let term = |t: ExpTerm| ExpTermJson { coef_hex: tower.fmt_element(t.coef), exp: t.exp };
        ExpansionJson {
            d: self.d,
            l: self.l,
            linear: term(self.linear),
            self_conj: term(self.self_conj),
            terms: self
                .terms
                .iter()
                .map(|t| NihoTermJson { cprime: t.cprime, coef_hex: tower.fmt_element(t.coef), exp: t.exp })
                .collect(),
        }
    }

    /// `2^{m-l-1}`, one past the largest `c'`.
    pub fn span(&self) -> u64 {
        1 << (self.m - self.l - 1)
    }
}

/// `X(c) = Σ_{i ∈ D \ {l}} (c_i 2^i + (1 - c_i) 2^{m+i})` where `c_i` for
/// `l ≤ i ≤ m - 2` is bit `i - l` of `c` and `c_{m-1} = 1`.
fn x_exponent(m: u32, d: u64, l: u32, c: u64) -> u128 {
    let mut x = 0u128;
    for i in (l + 1)..m {
        if d >> i & 1 == 0 {
            continue;
        }
        let ci = if i == m - 1 { 1 } else { c >> (i - l) & 1 };
        x += if ci == 1 { 1u128 << i } else { 1u128 << (m + i) };
    }
    x
}

pub fn lemma1_expand(tower: &FieldTower, d: u64, lambda: FieldElement, a: FieldElement) -> Result<ExpansionResult> {
    let m = tower.m();
    if d == 0 || d >= 1 << m {
        return domain(format!("d = {d} must satisfy 1 <= d <= 2^m - 1 = {}", (1u64 << m) - 1));
    }
    if lambda.is_zero() || !tower.is_subfield(lambda) {
        return domain(format!("lambda = {} must be a nonzero subfield element", tower.fmt_element(lambda)));
    }
    if !tower.is_primitive(a) {
        return domain(format!("a = {} is not primitive", tower.fmt_element(a)));
    }
    if tower.rel_trace_nm(a).is_zero() {
        return domain(format!("a = {} has a + a^(2^m) = 0", tower.fmt_element(a)));
    }
    let order = tower.order();
    let l = d.trailing_zeros();
    let top = d >> (m - 1) & 1 == 1;
    let d_tilde = d as u128 + if top { (1u128 << (m - 1)) * ((1u128 << m) - 1) } else { 0 };
    let ad = tower.pow(a, d_tilde);
    let self_coef = tower.mul(lambda, ad + tower.conj(ad));

    let span = 1u64 << (m - l - 1);
    let mut terms = Vec::with_capacity(span as usize);
    for cp in 1..span {
        let x1 = x_exponent(m, d, l, cp) + (1u128 << (m + l));
        let x0 = x_exponent(m, d, l, cp - 1) + (1u128 << l);
        let raw = tower.pow(a, x1) + tower.pow(a, x0);
        let exp = ((1u128 << m) - 1) * (1u128 << l) * (span - cp) as u128 + (1u128 << m);
        terms.push(NihoTerm { cprime: cp, raw, coef: tower.mul(lambda, raw), exp: reduce_exponent(exp, order) });
    }
    Ok(ExpansionResult {
        m,
        d,
        l,
        lambda,
        a,
        linear: ExpTerm { coef: tower.mul(lambda, tower.pow(a, d as u128)), exp: 1 << m },
        self_conj: ExpTerm { coef: self_coef, exp: reduce_exponent(self_conjugate_exponent(m), order) },
        terms,
    })
}

/// `Tr_m(λ x^{2^m-d} y^d)` at `t`, `x = t + t^{2^m}`, `y = a t + (a t)^{2^m}`.
pub fn lemma1_direct(tower: &FieldTower, d: u64, lambda: FieldElement, a: FieldElement, t: FieldElement) -> u8 {
    let m = tower.m();
    let x = tower.rel_trace_nm(t);
    let y = tower.rel_trace_nm(tower.mul(a, t));
    let v = tower.mul(lambda, tower.mul(tower.pow(x, ((1u64 << m) - d) as u128), tower.pow(y, d as u128)));
    tower.sub_trace(v).expect("subfield value")
}

fn expand_opoly(tower: &FieldTower, f: &OPolyMap, a: FieldElement, allow_odd: bool) -> Result<TracePolynomial> {
    let mut out = TracePolynomial::new();
    for &(lambda, d) in f.terms() {
        if d == 0 {
            continue;
        }
        if d % 2 == 1 && !allow_odd {
            return domain(format!("exponent {d} is odd; all terms in an o-polynomial have even powers"));
        }
        if d == (1 << tower.m()) - 1 {
            return domain(format!("exponent {d} = 2^m - 1 has no Niho expansion"));
        }
        out.extend(&lemma1_expand(tower, d, lambda, a)?.to_polynomial(tower, false));
    }
    Ok(out.merged())
}

/// Sum of the expansions of every monomial of `F`, linear terms dropped.
pub fn opoly_to_univariate(tower: &FieldTower, f: &OPolyMap, a: FieldElement) -> Result<TracePolynomial> {
    expand_opoly(tower, f, a, false)
}

/// [`opoly_to_univariate`] without the even-exponent check.
pub fn opoly_to_univariate_unchecked(tower: &FieldTower, f: &OPolyMap, a: FieldElement) -> Result<TracePolynomial> {
    expand_opoly(tower, f, a, true)
}

/// Algebraic degree of the Niho bent function produced from `F`.
pub fn pipeline_degree(tower: &FieldTower, f: &OPolyMap, a: FieldElement) -> Result<u32> {
    Ok(algebraic_degree(&evaluate(tower, &opoly_to_univariate(tower, f, a)?)?))
}

/// Measured degrees for the cells of a table row, in column order.
pub fn row_degrees(sub: &Subfield<'_>, row: &TableRow, a: FieldElement) -> Result<Vec<u32>> {
    let maps = row_pipeline(sub, row)?;
    row.cells.iter().map(|c| pipeline_degree(sub.tower(), &maps[c.column as usize - 1], a)).collect()
}

/// Outcome of one coefficient property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub cprime: u64,
    pub lhs_hex: String,
    pub rhs_hex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientReport {
    pub conjugation: PropertyStatus,
    pub middle_in_subfield: PropertyStatus,
    pub odd_factorization: PropertyStatus,
    pub all_nonzero: bool,
    pub violations: Vec<Violation>,
}

impl CoefficientReport {
    pub fn all_pass(&self) -> bool {
        self.conjugation != PropertyStatus::Fail
            && self.middle_in_subfield != PropertyStatus::Fail
            && self.odd_factorization != PropertyStatus::Fail
            && self.all_nonzero
    }
}

/// Checks the conjugation law, the subfield membership of the middle
/// coefficient and the factorization of odd-index coefficients.
pub fn verify_coefficient_properties(tower: &FieldTower, res: &ExpansionResult) -> CoefficientReport {
    let m = res.m;
    let a = res.a;
    let top = res.d >> (m - 1) & 1 == 1;
    let span = res.span();
    let raw = |cp: u64| res.terms[(cp - 1) as usize].raw;
    let mut violations = Vec::new();
    let mut fail = |cp, lhs, rhs| {
        violations.push(Violation { cprime: cp, lhs_hex: tower.fmt_element(lhs), rhs_hex: tower.fmt_element(rhs) });
    };
    let twist = if top { tower.pow(a, (1u128 << (m - 1)) * ((1u128 << m) - 1)) } else { FieldElement::ONE };

    let status = |ok: bool| if ok { PropertyStatus::Pass } else { PropertyStatus::Fail };

    let mut ok1 = true;
    for cp in 1..span {
        let lhs = tower.conj(raw(cp));
        let rhs = tower.mul(twist, raw(span - cp));
        if lhs != rhs {
            ok1 = false;
            fail(cp, lhs, rhs);
        }
    }

    let middle = if res.l + 2 > m {
        PropertyStatus::Skipped
    } else {
        let cp = span / 2;
        let v = if top {
            tower.mul(tower.inv(tower.frobenius(a, m as i64 - 1)).expect("a ≠ 0"), raw(cp))
        } else {
            raw(cp)
        };
        let ok = tower.is_subfield(v);
        if !ok {
            fail(cp, v, tower.conj(v));
        }
        status(ok)
    };

    let mut ok3 = true;
    let mut any_odd = false;
    let base = tower.frobenius(tower.rel_trace_nm(a), res.l as i64);
    for cp in (1..span).step_by(2) {
        any_odd = true;
        let rhs = tower.mul(tower.pow(a, x_exponent(m, res.d, res.l, cp)), base);
        if raw(cp) != rhs {
            ok3 = false;
            fail(cp, raw(cp), rhs);
        }
    }

    CoefficientReport {
        conjugation: if span > 1 { status(ok1) } else { PropertyStatus::Skipped },
        middle_in_subfield: middle,
        odd_factorization: if any_odd { status(ok3) } else { PropertyStatus::Skipped },
        all_nonzero: res.terms.iter().all(|t| !t.raw.is_zero()),
        violations,
    }
}

/// Whether the merged polynomial keeps a term in the coset of `2^m + 1`.
pub fn has_quadratic_coset_term(tower: &FieldTower, p: &TracePolynomial) -> bool {
    let n = tower.n();
    let target = crate::niho::coset_leader((1u128 << tower.m()) + 1, n);
    p.merged().terms().iter().any(|t| crate::niho::coset_leader(t.exp as u128, n) == target)
}
