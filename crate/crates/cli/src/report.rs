use niho_bent::boolfun::{algebraic_degree, is_bent, nonlinearity, walsh, Pairing, SpectrumSummary, TruthTable};
use niho_bent::gf2::{FieldElement, FieldTower, TowerDescription};
use niho_bent::niho::FamilyParams;
use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerDescription>,
    pub ok: bool,
    #[serde(flatten)]
    pub body: Map<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub files: Vec<String>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(tower: Option<&FieldTower>) -> Self {
        RunReport {
            schema: SCHEMA,
            command: std::env::args().skip(1).collect(),
            tower: tower.map(|t| t.description()),
            ok: true,
            body: Map::new(),
            files: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn put(&mut self, key: &str, v: impl Serialize) {
        self.body.insert(key.into(), serde_json::to_value(v).expect("report field serializes"));
    }
}

pub struct Outcome {
    pub report: RunReport,
    pub csv: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub w_hex: String,
    pub value: i32,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionRecord {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<FamilyParams>,
    #[serde(skip_serializing_if = "is_zero")]
    pub terms: usize,
    pub bent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub degree: u32,
    pub nonlinearity: u64,
    pub spectrum: SpectrumSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_table_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial_file: Option<String>,
    /// Re-reading the written truth table reproduces this record.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roundtrip: Option<bool>,
}

impl FunctionRecord {
    /// Walsh values use the trace pairing when a tower is given.
    pub fn measure(label: &str, tt: &TruthTable, tower: Option<&FieldTower>) -> anyhow::Result<Self> {
        let pairing = tower.map_or(Pairing::Dot, Pairing::Trace);
        let spec = walsh(tt, pairing)?;
        let verdict = if tt.n().is_multiple_of(2) { Some(is_bent(tt, pairing)?) } else { None };
        let bytes = (tt.n() as usize).div_ceil(8).max(1);
        Ok(FunctionRecord {
            label: label.into(),
            params: None,
            terms: 0,
            bent: verdict.is_some_and(|v| v.bent),
            witness: verdict
                .and_then(|v| v.witness)
                .map(|(w, value)| Witness { w_hex: FieldElement::new(w as u64).to_hex(bytes), value }),
            degree: algebraic_degree(tt),
            nonlinearity: nonlinearity(tt),
            spectrum: spec.summary(),
            truth_table_file: None,
            polynomial_file: None,
            roundtrip: None,
        })
    }

    fn same_verdicts(&self, other: &FunctionRecord) -> bool {
        self.bent == other.bent
            && self.degree == other.degree
            && self.nonlinearity == other.nonlinearity
            && self.spectrum == other.spectrum
    }

    /// Reads `path` back and compares the verdicts.
    pub fn check_roundtrip(
        &mut self,
        path: &std::path::Path,
        n: u32,
        tower: Option<&FieldTower>,
    ) -> anyhow::Result<()> {
        let text = std::fs::read_to_string(path)?;
        let tt = TruthTable::from_hex(n, text.trim())?;
        let again = FunctionRecord::measure(&self.label, &tt, tower)?;
        self.roundtrip = Some(self.same_verdicts(&again));
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

pub fn records_csv(records: &[FunctionRecord]) -> String {
    csv_string(
        &["label", "bent", "degree", "nonlinearity", "min", "max", "count_pos", "count_neg"],
        records.iter().map(|r| {
            vec![
                r.label.clone(),
                r.bent.to_string(),
                r.degree.to_string(),
                r.nonlinearity.to_string(),
                r.spectrum.min.to_string(),
                r.spectrum.max.to_string(),
                r.spectrum.count_pos.to_string(),
                r.spectrum.count_neg.to_string(),
            ]
        }),
    )
}

pub fn checks_csv(checks: &[Check]) -> String {
    csv_string(
        &["check", "pass", "detail"],
        checks.iter().map(|c| vec![c.name.clone(), c.pass.to_string(), c.detail.clone()]),
    )
}
