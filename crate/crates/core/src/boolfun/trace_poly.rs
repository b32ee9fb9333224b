//! Sparse trace polynomials `Σ Tr_{k_i}(c_i t^{e_i})` and their evaluation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TruthTable;
use crate::error::{Error, Result};
use crate::gf2::{reduce_exponent, FieldElement, FieldTower};

/// Which trace a term is placed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TraceKind {
    /// `Tr_n` on the full field.
    #[serde(rename = "n")]
    Full,
    /// `Tr_m`; the argument must lie in the subfield at every point.
    #[serde(rename = "m")]
    Sub,
    /// No trace: the value itself must be `0` or `1`.
    #[serde(rename = "1")]
    Bit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceTerm {
    pub kind: TraceKind,
    pub coef: FieldElement,
    /// Reduced into `{0} ∪ [1, 2^n - 1]`.
    pub exp: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TracePolynomial {
    terms: Vec<TraceTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub trace: TraceKind,
    pub coef_hex: String,
    pub exp: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePolynomialJson {
    pub m: u32,
    pub terms: Vec<TermJson>,
}

impl TracePolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &[TraceTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Appends `Tr_kind(coef · t^exp)` with `exp` reduced mod `2^n - 1`.
    pub fn push(&mut self, tower: &FieldTower, kind: TraceKind, coef: FieldElement, exp: u128) {
        self.terms.push(TraceTerm { kind, coef, exp: reduce_exponent(exp, tower.order()) });
    }

    pub fn with(mut self, tower: &FieldTower, kind: TraceKind, coef: FieldElement, exp: u128) -> Self {
        self.push(tower, kind, coef, exp);
        self
    }

    pub fn extend(&mut self, other: &TracePolynomial) {
        self.terms.extend_from_slice(&other.terms);
    }

    pub fn sum<'a>(polys: impl IntoIterator<Item = &'a TracePolynomial>) -> Self {
        let mut out = Self::new();
        for p in polys {
            out.extend(p);
        }
        out
    }

    /// Adds coefficients of terms sharing a trace kind and exponent, drops
    /// zero coefficients and sorts by `(exponent, kind)`.
    pub fn merged(&self) -> Self {
        let mut acc: BTreeMap<(u64, TraceKind), FieldElement> = BTreeMap::new();
        for t in &self.terms {
            *acc.entry((t.exp, t.kind)).or_default() += t.coef;
        }
        Self {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((exp, kind), coef)| TraceTerm { kind, coef, exp })
                .collect(),
        }
    }

    /// The polynomial of `t ↦ f(β t)`.
    pub fn scale_input(&self, tower: &FieldTower, beta: FieldElement) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| TraceTerm { coef: tower.mul(t.coef, tower.pow(beta, t.exp as u128)), ..*t })
                .collect(),
        }
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filtered(&self, keep: impl Fn(&TraceTerm) -> bool) -> Self {
        Self { terms: self.terms.iter().copied().filter(|t| keep(t)).collect() }
    }

    pub fn to_json(&self, tower: &FieldTower) -> TracePolynomialJson {
        TracePolynomialJson {
            m: tower.m(),
            terms: self
                .terms
                .iter()
                .map(|t| TermJson { trace: t.kind, coef_hex: tower.fmt_element(t.coef), exp: t.exp })
                .collect(),
        }
    }

    pub fn from_json(tower: &FieldTower, js: &TracePolynomialJson) -> Result<Self> {
        if js.m != tower.m() {
            return Err(Error::Domain(format!("polynomial is over m = {}, tower has m = {}", js.m, tower.m())));
        }
        let mut p = Self::new();
        for t in &js.terms {
            p.push(tower, t.trace, tower.parse_element(&t.coef_hex)?, t.exp as u128);
        }
        Ok(p)
    }
}

fn term_value(tower: &FieldTower, term: &TraceTerm, t: FieldElement) -> Result<u8> {
    let v = tower.mul(term.coef, tower.pow(t, term.exp as u128));
    match term.kind {
        TraceKind::Full => Ok(tower.abs_trace(v)),
        TraceKind::Sub => tower.sub_trace(v).map_err(|_| {
            Error::Representation(format!(
                "Tr_m term {}·t^{} leaves GF(2^{}) at t = {}",
                term.coef,
                term.exp,
                tower.m(),
                tower.fmt_element(t)
            ))
        }),
        TraceKind::Bit => match v.value() {
            0 | 1 => Ok(v.value() as u8),
            _ => Err(Error::Representation(format!(
                "untraced term {}·t^{} is not in GF(2) at t = {}",
                term.coef,
                term.exp,
                tower.fmt_element(t)
            ))),
        },
    }
}

/// Evaluates the polynomial at a single point.
pub fn evaluate_at(tower: &FieldTower, p: &TracePolynomial, t: FieldElement) -> Result<bool> {
    let mut bit = 0u8;
    for term in &p.terms {
        bit ^= term_value(tower, term, t)?;
    }
    Ok(bit == 1)
}

/// Truth table of `p` over GF(2^n), indexed by element encoding.
pub fn evaluate(tower: &FieldTower, p: &TracePolynomial) -> Result<TruthTable> {
    let Some(tables) = tower.tables() else {
        return TruthTable::from_fn(tower.n(), |_| false).and_then(|mut tt| {
            for t in tower.elements() {
                if evaluate_at(tower, p, t)? {
                    tt.set(t.value() as usize, true);
                }
            }
            Ok(tt)
        });
    };

    let order = tower.order();
    let q = (1u64 << tower.m()) + 1;
    let mut acc = vec![0u8; order as usize];
    let mut at_zero = 0u8;
    let mut constant = 0u8;
    for term in p.terms.iter().filter(|t| !t.coef.is_zero()) {
        // t = 0 and exponent-0 terms through the pointwise path.
        if term.exp == 0 {
            let b = term_value(tower, term, FieldElement::ONE)?;
            constant ^= b;
            at_zero ^= b;
            continue;
        }
        at_zero ^= term_value(tower, term, FieldElement::ZERO)?;
        let lc = tables.log[term.coef.value() as usize] as u64;
        let step = term.exp % order;
        let offending = |k: u64| {
            Error::Representation(format!(
                "{:?} term {}·t^{} leaves its field at t = {}",
                term.kind,
                term.coef,
                term.exp,
                tower.fmt_element(FieldElement::new(tables.exp[k as usize] as u64))
            ))
        };
        match term.kind {
            TraceKind::Full => {
                let mut l = lc;
                for a in acc.iter_mut() {
                    *a ^= tables.tr_n[l as usize];
                    l += step;
                    if l >= order {
                        l -= order;
                    }
                }
            }
            TraceKind::Sub => {
                if !lc.is_multiple_of(q) {
                    return Err(offending(0));
                }
                if !step.is_multiple_of(q) {
                    return Err(offending(1));
                }
                let sub_order = order / q;
                let (mut l, step) = (lc / q, step / q);
                for a in acc.iter_mut() {
                    *a ^= tables.tr_m[l as usize];
                    l += step;
                    if l >= sub_order {
                        l -= sub_order;
                    }
                }
            }
            TraceKind::Bit => {
                if lc != 0 {
                    return Err(offending(0));
                }
                if step != 0 {
                    return Err(offending(1));
                }
                constant ^= 1;
            }
        }
    }
    let mut tt = TruthTable::zeros(tower.n())?;
    tt.set(0, at_zero == 1);
    for (k, &a) in acc.iter().enumerate() {
        if a ^ constant == 1 {
            tt.set(tables.exp[k] as usize, true);
        }
    }
    Ok(tt)
}
