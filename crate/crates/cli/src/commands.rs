use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use niho_bent::boolfun::{evaluate, walsh as spectrum, Pairing, TracePolynomial, TracePolynomialJson, TruthTable};
use niho_bent::bridge::{
    lemma1_direct, lemma1_expand, opoly_to_univariate, row_degrees, verify_coefficient_properties,
};
use niho_bent::gf2::{FieldElement, FieldTower};
use niho_bent::niho::{lk_r_is_valid, Family, FamilyParams};
use niho_bent::opoly::{catalog, catalog_candidates, is_opolynomial, table1_report, OPolyMap, Subfield};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{checks_csv, csv_string, records_csv, Check, FunctionRecord, Outcome, RunReport};

pub struct Ctx {
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl Ctx {
    fn write(&self, report: &mut RunReport, name: &str, contents: &str) -> anyhow::Result<Option<PathBuf>> {
        let Some(dir) = &self.out else { return Ok(None) };
        let path = dir.join(name);
        std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        report.files.push(name.to_string());
        Ok(Some(path))
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|_| {
        "expected one of quadratic, binomial_3, binomial_16, lk, lk_coeff, qu_family, g_lk2, cubic_family, trinomial_sum"
            .to_string()
    })
}

fn tower(m: u32) -> anyhow::Result<FieldTower> {
    Ok(FieldTower::new(m)?)
}

/// `auto`, or a little-endian hex element.
fn element_or_auto(
    t: &FieldTower,
    s: &str,
    auto: impl FnOnce() -> anyhow::Result<FieldElement>,
) -> anyhow::Result<FieldElement> {
    if s == "auto" {
        auto()
    } else {
        Ok(t.parse_element(s)?)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct TermArg {
    c: String,
    e: u64,
}

fn parse_terms(sub: &Subfield<'_>, json: &str) -> anyhow::Result<OPolyMap> {
    let raw: Vec<TermArg> = serde_json::from_str(json).context("parsing terms")?;
    let t = sub.tower();
    let terms = raw.iter().map(|x| Ok((t.parse_element(&x.c)?, x.e))).collect::<anyhow::Result<Vec<_>>>()?;
    Ok(OPolyMap::from_terms(sub, &terms)?)
}

fn terms_label(t: &FieldTower, f: &OPolyMap) -> String {
    f.terms().iter().map(|&(c, e)| format!("{}*z^{e}", t.fmt_element(c))).collect::<Vec<_>>().join(" + ")
}

#[derive(Args)]
pub struct ConstructArgs {
    /// Family parameters as a JSON file; flags are ignored when given.
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    c: Option<u32>,
    #[arg(long = "I")]
    i: Option<u32>,
    #[arg(long = "J")]
    j: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// `auto` or hex.
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// Comma-separated hex coefficients for `lk_coeff`.
    #[arg(long, value_delimiter = ',')]
    coeffs: Option<Vec<String>>,
    /// Accept `lk` parameters with `gcd(r, m) > 1`.
    #[arg(long)]
    unchecked: bool,
}

impl ConstructArgs {
    fn family_params(&self) -> anyhow::Result<FamilyParams> {
        if let Some(path) = &self.params {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()));
        }
        let (Some(family), Some(m)) = (self.family, self.m) else {
            bail!("construct needs --params FILE or both --family and --m");
        };
        Ok(FamilyParams {
            r: self.r,
            c: self.c,
            i: self.i,
            j: self.j,
            k: self.k,
            a_hex: self.a.clone(),
            b_hex: self.b.clone(),
            coeffs_hex: self.coeffs.clone(),
            unchecked: self.unchecked,
            ..FamilyParams::new(family, m)
        })
    }
}

fn family_name(f: Family) -> String {
    serde_json::to_value(f).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

pub fn construct(ctx: &Ctx, args: &ConstructArgs) -> anyhow::Result<Outcome> {
    let params = args.family_params()?;
    let t = tower(params.m)?;
    let poly = params.build(&t)?;
    let tt = evaluate(&t, &poly)?;
    let stem = format!("{}_m{}", family_name(params.family), params.m);
    let mut report = RunReport::new(Some(&t));

    let mut rec = FunctionRecord::measure(&stem, &tt, Some(&t))?;
    rec.terms = poly.len();
    let mut resolved = params.clone();
    if !matches!(params.family, Family::LkCoeff | Family::Binomial3 | Family::Binomial16) {
        resolved.a_hex = Some(t.fmt_element(params.resolve_a(&t)?));
    }
    rec.params = Some(resolved);

    let tt_name = format!("{stem}.tt.hex");
    if let Some(path) = ctx.write(&mut report, &tt_name, &format!("{}\n", tt.to_hex()))? {
        rec.truth_table_file = Some(tt_name);
        rec.check_roundtrip(&path, t.n(), Some(&t))?;
    }
    let poly_name = format!("{stem}.poly.json");
    let poly_json = serde_json::to_string_pretty(&poly.to_json(&t))?;
    if ctx.write(&mut report, &poly_name, &format!("{poly_json}\n"))?.is_some() {
        rec.polynomial_file = Some(poly_name);
    }
    report.ok = rec.bent && rec.roundtrip != Some(false);
    let csv = records_csv(std::slice::from_ref(&rec));
    report.put("functions", [rec]);
    Ok(Outcome { report, csv })
}

#[derive(Args)]
pub struct OpolyArgs {
    #[arg(long)]
    m: u32,
    /// JSON list such as `[{"c":"01","e":6}]`.
    #[arg(long, conflicts_with = "catalog")]
    terms: Option<String>,
    /// Check every catalog entry valid at `m`.
    #[arg(long)]
    catalog: bool,
}

#[derive(Serialize)]
struct NamedVerdict {
    name: String,
    #[serde(flatten)]
    verdict: niho_bent::opoly::VerdictJson,
}

pub fn opoly(_ctx: &Ctx, args: &OpolyArgs) -> anyhow::Result<Outcome> {
    let t = tower(args.m)?;
    let sub = Subfield::new(&t);
    let maps: Vec<(String, OPolyMap)> = if args.catalog {
        catalog(args.m).into_iter().map(|e| (e.name.clone(), e.map(&sub))).collect()
    } else if let Some(json) = &args.terms {
        let f = parse_terms(&sub, json)?;
        vec![(terms_label(&t, &f), f)]
    } else {
        bail!("opoly needs --terms JSON or --catalog");
    };
    let verdicts: Vec<NamedVerdict> = maps
        .par_iter()
        .map(|(name, f)| NamedVerdict { name: name.clone(), verdict: is_opolynomial(&sub, f).to_json(&t, f) })
        .collect();
    let mut report = RunReport::new(Some(&t));
    report.ok = verdicts.iter().all(|v| v.verdict.is_opoly);
    let csv = csv_string(
        &["name", "is_opoly", "is_permutation", "beta_hex", "value_hex", "count"],
        verdicts.iter().map(|v| {
            let w = v.verdict.witness.as_ref();
            vec![
                v.name.clone(),
                v.verdict.is_opoly.to_string(),
                v.verdict.is_permutation.to_string(),
                w.map(|w| w.beta_hex.clone()).unwrap_or_default(),
                w.map(|w| w.value_hex.clone()).unwrap_or_default(),
                w.map(|w| w.count.to_string()).unwrap_or_default(),
            ]
        }),
    );
    report.put("maps", verdicts);
    Ok(Outcome { report, csv })
}

#[derive(Args)]
pub struct ExpandArgs {
    #[arg(long)]
    m: u32,
    /// Expand the single monomial `λ z^d`.
    #[arg(long, conflicts_with = "f")]
    d: Option<u64>,
    /// Expand an o-polynomial given as `[{"c":"01","e":6}]`.
    #[arg(long = "F")]
    f: Option<String>,
    #[arg(long, default_value = "01")]
    lambda: String,
    /// Primitive element with `a + a^{2^m} ≠ 0`; `auto` picks the smallest.
    #[arg(long, default_value = "auto")]
    a: String,
    /// Compare against the bivariate form at every point.
    #[arg(long)]
    check: bool,
    /// Extra random `λ` per checked monomial.
    #[arg(long, default_value_t = 3)]
    samples: usize,
}

/// Pointwise equality of the full expansion of `λ z^d` with the bivariate form.
fn equality_check(t: &FieldTower, d: u64, lambda: FieldElement, a: FieldElement) -> anyhow::Result<Check> {
    let res = lemma1_expand(t, d, lambda, a)?;
    let tt = evaluate(t, &res.to_polynomial(t, true))?;
    let bad = (0..t.size()).find(|&i| tt.get(i) as u8 != lemma1_direct(t, d, lambda, a, FieldElement::new(i as u64)));
    let name = format!("equality d = {d} lambda = {}", t.fmt_element(lambda));
    Ok(match bad {
        None => Check::new(name, true, format!("all {} points", t.size())),
        Some(i) => Check::new(name, false, format!("differs at t = {}", t.fmt_element(FieldElement::new(i as u64)))),
    })
}

pub fn expand(ctx: &Ctx, args: &ExpandArgs) -> anyhow::Result<Outcome> {
    let t = tower(args.m)?;
    let a = element_or_auto(&t, &args.a, || Ok(t.find_unit_relative_trace(true)?))?;
    let mut report = RunReport::new(Some(&t));
    report.put("a_hex", t.fmt_element(a));
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let subfield = t.subfield_elements();

    let csv = if let Some(d) = args.d {
        let lambda = t.parse_element(&args.lambda)?;
        let res = lemma1_expand(&t, d, lambda, a)?;
        let js = res.to_json(&t);
        let mut exps: Vec<u64> = res.terms.iter().map(|x| x.exp).collect();
        exps.push(res.self_conj.exp);
        exps.sort_unstable();
        report.put("niho_exponents", &exps);
        report.put("expansion", &js);
        ctx.write(&mut report, "expansion.json", &format!("{}\n", serde_json::to_string_pretty(&js)?))?;
        if args.check {
            let mut lambdas = vec![lambda];
            lambdas.extend((0..args.samples).map(|_| subfield[rng.gen_range(1..subfield.len())]));
            for &l in &lambdas {
                checks.push(equality_check(&t, d, l, a)?);
            }
            let props = verify_coefficient_properties(&t, &lemma1_expand(&t, d, lambda, a)?);
            let detail = format!(
                "conjugation {:?}, middle {:?}, odd {:?}, nonzero {}, {} violations",
                props.conjugation,
                props.middle_in_subfield,
                props.odd_factorization,
                props.all_nonzero,
                props.violations.len()
            );
            checks.push(Check::new("coefficient properties", props.all_pass(), detail));
            report.put("properties", &props);
        }
        csv_string(
            &["cprime", "coef_hex", "exp"],
            js.terms.iter().map(|x| vec![x.cprime.to_string(), x.coef_hex.clone(), x.exp.to_string()]),
        )
    } else if let Some(json) = &args.f {
        let sub = Subfield::new(&t);
        let f = parse_terms(&sub, json)?;
        let poly = opoly_to_univariate(&t, &f, a)?;
        let tt = evaluate(&t, &poly)?;
        let mut rec = FunctionRecord::measure(&terms_label(&t, &f), &tt, Some(&t))?;
        rec.terms = poly.len();
        let poly_json = poly.to_json(&t);
        ctx.write(&mut report, "univariate.poly.json", &format!("{}\n", serde_json::to_string_pretty(&poly_json)?))?;
        if args.check {
            for &(c, e) in f.terms().iter().filter(|x| x.1 != 0) {
                checks.push(equality_check(&t, e, c, a)?);
            }
            let is_o = is_opolynomial(&sub, &f).is_opoly;
            checks.push(Check::new(
                "bent iff o-polynomial",
                rec.bent == is_o,
                format!("bent = {}, o-polynomial = {is_o}", rec.bent),
            ));
        }
        let csv = records_csv(std::slice::from_ref(&rec));
        report.put("polynomial", &poly_json);
        report.put("functions", [rec]);
        csv
    } else {
        bail!("expand needs --d or --F");
    };
    report.ok = checks.iter().all(|c| c.pass);
    let csv = if args.check { format!("{csv}\n{}", checks_csv(&checks)) } else { csv };
    report.put("checks", &checks);
    Ok(Outcome { report, csv })
}

#[derive(Args)]
pub struct TablesArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, default_value = "auto")]
    a: String,
}

#[derive(Serialize)]
struct CellReport {
    column: u8,
    exponent: u64,
    expected: u32,
    measured: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition: Option<String>,
    /// `pass`, `fail`, `ambiguous` or `not_applicable`.
    status: &'static str,
}

#[derive(Serialize)]
struct RowReport {
    family: String,
    k: u32,
    g1: Vec<u64>,
    cells: Vec<CellReport>,
}

pub fn tables(_ctx: &Ctx, args: &TablesArgs) -> anyhow::Result<Outcome> {
    let t = tower(args.m)?;
    let a = element_or_auto(&t, &args.a, || Ok(t.find_unit_relative_trace(true)?))?;
    let sub = Subfield::new(&t);
    let rows = table1_report(args.m);
    let measured: Vec<Vec<u32>> = rows.par_iter().map(|r| row_degrees(&sub, r, a)).collect::<Result<_, _>>()?;
    let reports: Vec<RowReport> = rows
        .iter()
        .zip(measured)
        .map(|(row, got)| RowReport {
            family: row.family.clone(),
            k: row.k,
            g1: row.g1.clone(),
            cells: row
                .cells
                .iter()
                .zip(got)
                .map(|(c, d)| CellReport {
                    column: c.column,
                    exponent: c.exponent,
                    expected: c.expected_degree,
                    measured: d,
                    condition: c.condition.clone(),
                    status: match (c.applies, c.condition.is_some(), d == c.expected_degree) {
                        (Some(false), _, _) => "not_applicable",
                        (None, true, _) => "ambiguous",
                        (_, _, true) => "pass",
                        _ => "fail",
                    },
                })
                .collect(),
        })
        .collect();
    let mut report = RunReport::new(Some(&t));
    report.ok = reports.iter().flat_map(|r| &r.cells).all(|c| c.status != "fail");
    let csv = csv_string(
        &["family", "k", "column", "exponent", "expected", "measured", "status"],
        reports.iter().flat_map(|r| {
            r.cells.iter().map(|c| {
                vec![
                    r.family.clone(),
                    r.k.to_string(),
                    c.column.to_string(),
                    c.exponent.to_string(),
                    c.expected.to_string(),
                    c.measured.to_string(),
                    c.status.to_string(),
                ]
            })
        }),
    );
    report.put("a_hex", t.fmt_element(a));
    report.put("rows", reports);
    Ok(Outcome { report, csv })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairingArg {
    Trace,
    Dot,
}

#[derive(Args)]
pub struct WalshArgs {
    /// Truth-table hex file.
    #[arg(long, conflicts_with_all = ["poly", "hex"])]
    table: Option<PathBuf>,
    /// Trace polynomial JSON file.
    #[arg(long, conflicts_with = "hex")]
    poly: Option<PathBuf>,
    /// Truth-table hex on the command line.
    #[arg(long)]
    hex: Option<String>,
    /// Number of variables for a truth table; `2m` for the trace pairing.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value_t = PairingArg::Trace)]
    pairing: PairingArg,
    /// Fail unless the function is bent.
    #[arg(long)]
    expect_bent: bool,
}

fn vars_from_hex(hex: &str) -> anyhow::Result<u32> {
    let bits = hex.len() * 4;
    if bits < 8 {
        bail!("truth table hex is too short");
    }
    if !bits.is_power_of_two() {
        bail!("truth table of {} hex digits is not a power-of-two length; pass --n", hex.len());
    }
    Ok(bits.trailing_zeros())
}

fn walsh_input(args: &WalshArgs) -> anyhow::Result<(TruthTable, Option<FieldTower>)> {
    let read = |p: &Path| std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()));
    if let Some(path) = &args.poly {
        let js: TracePolynomialJson = serde_json::from_str(&read(path)?).context("parsing polynomial")?;
        let t = tower(js.m)?;
        let p = TracePolynomial::from_json(&t, &js)?;
        return Ok((evaluate(&t, &p)?, Some(t)));
    }
    let hex = match (&args.table, &args.hex) {
        (Some(p), _) => read(p)?.trim().to_string(),
        (None, Some(h)) => h.trim().to_string(),
        _ => bail!("walsh needs --table, --poly or --hex"),
    };
    let n = match args.n {
        Some(n) => n,
        None => vars_from_hex(&hex)?,
    };
    let tt = TruthTable::from_hex(n, &hex)?;
    let t = match args.pairing {
        PairingArg::Trace if n % 2 == 0 => Some(tower(n / 2)?),
        PairingArg::Trace => bail!("the trace pairing needs an even number of variables, got {n}"),
        PairingArg::Dot => None,
    };
    Ok((tt, t))
}

pub fn walsh(ctx: &Ctx, args: &WalshArgs) -> anyhow::Result<Outcome> {
    let (tt, t) = walsh_input(args)?;
    let t = if args.pairing == PairingArg::Dot { None } else { t };
    let spec = spectrum(&tt, t.as_ref().map_or(Pairing::Dot, Pairing::Trace))?;
    let rec = FunctionRecord::measure("input", &tt, t.as_ref())?;
    let mut report = RunReport::new(t.as_ref());
    report.ok = !args.expect_bent || rec.bent;
    ctx.write(&mut report, "spectrum.csv", &spec.to_csv())?;
    report.put("functions", [rec]);
    report.put("spectrum", spec.values());
    Ok(Outcome { report, csv: spec.to_csv() })
}

#[derive(Args)]
pub struct InfoArgs {
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Serialize)]
struct CatalogInfo {
    name: String,
    exponents: Vec<u64>,
    valid: bool,
}

pub fn info(_ctx: &Ctx, args: &InfoArgs) -> anyhow::Result<Outcome> {
    let families = [
        Family::Quadratic,
        Family::Binomial3,
        Family::Binomial16,
        Family::Lk,
        Family::LkCoeff,
        Family::QuFamily,
        Family::GLk2,
        Family::CubicFamily,
        Family::TrinomialSum,
    ]
    .map(family_name);
    let Some(m) = args.m else {
        let mut report = RunReport::new(None);
        report.put("families", &families);
        let csv = csv_string(&["family"], families.iter().map(|f| vec![f.clone()]));
        return Ok(Outcome { report, csv });
    };
    let t = tower(m)?;
    let mut report = RunReport::new(Some(&t));
    let unit = t.find_unit_relative_trace(false)?;
    let prim = t.find_unit_relative_trace(true)?;
    let prim_unit = t.find_primitive_unit_trace();
    let lk_r: Vec<u32> = (2..2 * m).filter(|&r| lk_r_is_valid(m, r)).collect();
    let entries: Vec<CatalogInfo> = catalog_candidates(m)
        .into_iter()
        .map(|(e, valid)| CatalogInfo { name: e.name, exponents: e.exponents, valid })
        .collect();
    let rows: Vec<String> = table1_report(m).into_iter().map(|r| r.family).collect();
    let mut kv = vec![
        ("n".to_string(), t.n().to_string()),
        ("modulus_hex".into(), t.description().modulus_hex),
        ("generator_hex".into(), t.description().generator_hex),
        ("unit_trace_hex".into(), t.fmt_element(unit)),
        ("primitive_nonzero_trace_hex".into(), t.fmt_element(prim)),
    ];
    if let Some(p) = prim_unit {
        kv.push(("primitive_unit_trace_hex".into(), t.fmt_element(p)));
    }
    for (k, v) in &kv {
        report.put(k, v);
    }
    kv.push(("lk_r".into(), format!("{lk_r:?}")));
    report.put("families", &families);
    report.put("lk_r", lk_r);
    report.put("catalog", entries);
    report.put("table_rows", rows);
    let csv = csv_string(&["key", "value"], kv.into_iter().map(|(k, v)| vec![k, v]));
    Ok(Outcome { report, csv })
}
