//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes and returns JSON strings. The `*_json` functions hold
//! the logic so that native tests can call them.

use niho_bent::boolfun::{algebraic_degree, evaluate, is_bent, nonlinearity, walsh, Pairing, TracePolynomialJson};
use niho_bent::bridge::{lemma1_direct, lemma1_expand, opoly_to_univariate, ExpansionJson};
use niho_bent::gf2::{FieldElement, FieldTower};
use niho_bent::niho::FamilyParams;
use niho_bent::opoly::{is_opolynomial, OPolyMap, Subfield, VerdictJson};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

/// Largest `m` the page accepts; larger tables make the page unresponsive.
pub const MAX_M: u32 = 8;

#[derive(Serialize)]
pub struct FunctionSummary {
    pub n: u32,
    pub bent: bool,
    pub degree: u32,
    pub nonlinearity: u64,
    pub walsh_min: i32,
    pub walsh_max: i32,
    pub truth_table_hex: String,
    pub polynomial: TracePolynomialJson,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn tower(m: u32) -> Result<FieldTower, String> {
    if m > MAX_M {
        return Err(format!("m = {m} is larger than the demo limit {MAX_M}"));
    }
    FieldTower::new(m).map_err(err)
}

fn summarize(t: &FieldTower, poly: &niho_bent::boolfun::TracePolynomial) -> Result<FunctionSummary, String> {
    let tt = evaluate(t, poly).map_err(err)?;
    let spec = walsh(&tt, Pairing::Trace(t)).map_err(err)?;
    let s = spec.summary();
    Ok(FunctionSummary {
        n: t.n(),
        bent: is_bent(&tt, Pairing::Trace(t)).map_err(err)?.bent,
        degree: algebraic_degree(&tt),
        nonlinearity: nonlinearity(&tt),
        walsh_min: s.min,
        walsh_max: s.max,
        truth_table_hex: tt.to_hex(),
        polynomial: poly.to_json(t),
    })
}

/// Builds a family from `FamilyParams` JSON and verifies it.
pub fn construct_json(params: &str) -> Result<String, String> {
    let p: FamilyParams = serde_json::from_str(params).map_err(err)?;
    let t = tower(p.m)?;
    let poly = p.build(&t).map_err(err)?;
    serde_json::to_string(&summarize(&t, &poly)?).map_err(err)
}

#[derive(Deserialize)]
struct TermArg {
    c: String,
    e: u64,
}

#[derive(Serialize)]
struct OpolyOutput {
    verdict: VerdictJson,
    /// The Niho function built from the map, when every exponent is even.
    #[serde(skip_serializing_if = "Option::is_none")]
    function: Option<FunctionSummary>,
}

/// Checks `Σ c z^e` for the o-polynomial property and, when every exponent
/// is even, builds and verifies the associated Niho function.
pub fn check_opoly_json(m: u32, terms: &str) -> Result<String, String> {
    let t = tower(m)?;
    let sub = Subfield::new(&t);
    let raw: Vec<TermArg> = serde_json::from_str(terms).map_err(err)?;
    let terms =
        raw.iter().map(|x| Ok((t.parse_element(&x.c).map_err(err)?, x.e))).collect::<Result<Vec<_>, String>>()?;
    let f = OPolyMap::from_terms(&sub, &terms).map_err(err)?;
    let verdict = is_opolynomial(&sub, &f).to_json(&t, &f);
    let a = t.find_unit_relative_trace(true).map_err(err)?;
    let function = match opoly_to_univariate(&t, &f, a) {
        Ok(p) => Some(summarize(&t, &p)?),
        Err(_) => None,
    };
    serde_json::to_string(&OpolyOutput { verdict, function }).map_err(err)
}

#[derive(Serialize)]
struct ExpandOutput {
    a_hex: String,
    expansion: ExpansionJson,
    /// The expansion agrees with the bivariate form at every point.
    matches_bivariate: bool,
}

/// Expands `λ z^d` into univariate Niho form.
pub fn expand_json(m: u32, d: u32, lambda_hex: &str) -> Result<String, String> {
    let t = tower(m)?;
    let lambda = t.parse_element(lambda_hex).map_err(err)?;
    let a = t.find_unit_relative_trace(true).map_err(err)?;
    let res = lemma1_expand(&t, d as u64, lambda, a).map_err(err)?;
    let tt = evaluate(&t, &res.to_polynomial(&t, true)).map_err(err)?;
    let matches_bivariate =
        (0..t.size()).all(|i| tt.get(i) as u8 == lemma1_direct(&t, d as u64, lambda, a, FieldElement::new(i as u64)));
    serde_json::to_string(&ExpandOutput { a_hex: t.fmt_element(a), expansion: res.to_json(&t), matches_bivariate })
        .map_err(err)
}

#[wasm_bindgen]
pub fn construct(params: &str) -> Result<String, JsError> {
    construct_json(params).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = checkOpoly)]
pub fn check_opoly(m: u32, terms: &str) -> Result<String, JsError> {
    check_opoly_json(m, terms).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn expand(m: u32, d: u32, lambda_hex: &str) -> Result<String, JsError> {
    expand_json(m, d, lambda_hex).map_err(|e| JsError::new(&e))
}
