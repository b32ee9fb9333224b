//! Walsh–Hadamard spectra, bentness, duals and nonlinearity.

use serde::Serialize;

use super::{algebraic_degree, TruthTable};
use crate::error::{domain, Result};
use crate::gf2::{FieldElement, FieldTower};

/// The inner product used to index the spectrum.
#[derive(Clone, Copy, Debug)]
pub enum Pairing<'a> {
    /// Bitwise dot product `⟨w, x⟩` on integer encodings.
    Dot,
    /// Field inner product `Tr_n(w x)` of the given tower.
    Trace(&'a FieldTower),
}

impl Pairing<'_> {
    fn check(&self, tt: &TruthTable) -> Result<()> {
        match self {
            Pairing::Trace(t) if t.n() != tt.n() => {
                domain(format!("tower has n = {} but the table has {} variables", t.n(), tt.n()))
            }
            _ => Ok(()),
        }
    }
}

/// Signed, unnormalized Walsh values indexed by `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: u32,
    values: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSummary {
    pub min: i32,
    pub max: i32,
    pub count_pos: usize,
    pub count_neg: usize,
}

/// Result of a bentness check. `witness` is the first `(w, value)` whose
/// value is not `±2^{n/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BentVerdict {
    pub bent: bool,
    pub witness: Option<(usize, i32)>,
}

impl WalshSpectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn get(&self, w: usize) -> i32 {
        self.values[w]
    }

    pub fn max_abs(&self) -> u32 {
        self.values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// `Σ_w W(w)^2 = 2^{2n}`.
    pub fn parseval_holds(&self) -> bool {
        let sum: i128 = self.values.iter().map(|&v| (v as i128) * (v as i128)).sum();
        sum == 1i128 << (2 * self.n)
    }

    pub fn summary(&self) -> SpectrumSummary {
        SpectrumSummary {
            min: self.values.iter().copied().min().unwrap_or(0),
            max: self.values.iter().copied().max().unwrap_or(0),
            count_pos: self.values.iter().filter(|&&v| v > 0).count(),
            count_neg: self.values.iter().filter(|&&v| v < 0).count(),
        }
    }

    pub fn bent_verdict(&self) -> Result<BentVerdict> {
        if self.n % 2 == 1 {
            return domain(format!("bentness needs an even number of variables, got {}", self.n));
        }
        let target = 1i32 << (self.n / 2);
        let witness = self.values.iter().enumerate().find(|(_, &v)| v.abs() != target).map(|(w, &v)| (w, v));
        Ok(BentVerdict { bent: witness.is_none(), witness })
    }

    /// CSV rows `w_hex,value`, `w` printed as a little-endian element hex.
    pub fn to_csv(&self) -> String {
        let bytes = (self.n as usize).div_ceil(8).max(1);
        let mut out = String::from("w_hex,value\n");
        for (w, v) in self.values.iter().enumerate() {
            out.push_str(&FieldElement::new(w as u64).to_hex(bytes));
            out.push(',');
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.values).expect("integer vector serializes")
    }
}

/// In-place fast Walsh–Hadamard transform (`⟨u, x⟩` indexing).
pub fn fwht(data: &mut [i32]) {
    let mut h = 1;
    while h < data.len() {
        for base in (0..data.len()).step_by(2 * h) {
            for i in base..base + h {
                let (a, b) = (data[i], data[i + h]);
                data[i] = a + b;
                data[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// `M(w)` for every `w`, where `Tr_n(w x) = ⟨M(w), x⟩`: bit `j` of `M(w)` is
/// `Tr_n(w β^j)` for the polynomial basis `β^j = x^j`.
pub fn trace_pairing_map(tower: &FieldTower) -> Vec<u32> {
    let n = tower.n();
    let columns: Vec<u32> = (0..n)
        .map(|i| {
            let bi = FieldElement::new(1 << i);
            (0..n)
                .filter(|&j| tower.abs_trace(tower.mul(bi, FieldElement::new(1 << j))) == 1)
                .fold(0u32, |acc, j| acc | (1 << j))
        })
        .collect();
    let mut map = vec![0u32; tower.size()];
    for w in 1..map.len() {
        map[w] = map[w & (w - 1)] ^ columns[w.trailing_zeros() as usize];
    }
    map
}

pub fn walsh(tt: &TruthTable, pairing: Pairing<'_>) -> Result<WalshSpectrum> {
    pairing.check(tt)?;
    let mut values = tt.signs();
    fwht(&mut values);
    if let Pairing::Trace(tower) = pairing {
        let map = trace_pairing_map(tower);
        values = map.iter().map(|&u| values[u as usize]).collect();
    }
    Ok(WalshSpectrum { n: tt.n(), values })
}

/// Direct evaluation of the defining sum, `O(4^n)`.
pub fn walsh_naive(tt: &TruthTable, pairing: Pairing<'_>) -> Result<WalshSpectrum> {
    pairing.check(tt)?;
    let len = tt.len();
    let values = (0..len)
        .map(|w| {
            (0..len)
                .map(|x| {
                    let ip = match pairing {
                        Pairing::Dot => ((w & x).count_ones() & 1) as u8,
                        Pairing::Trace(t) => {
                            t.abs_trace(t.mul(FieldElement::new(w as u64), FieldElement::new(x as u64)))
                        }
                    };
                    if tt.get(x) as u8 ^ ip == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum()
        })
        .collect();
    Ok(WalshSpectrum { n: tt.n(), values })
}

pub fn is_bent(tt: &TruthTable, pairing: Pairing<'_>) -> Result<BentVerdict> {
    if tt.n() % 2 == 1 {
        return domain(format!("bentness needs an even number of variables, got {}", tt.n()));
    }
    walsh(tt, pairing)?.bent_verdict()
}

/// The dual `f̃` defined by `W_f(w) = 2^{n/2} (-1)^{f̃(w)}`.
pub fn dual(tt: &TruthTable, pairing: Pairing<'_>) -> Result<TruthTable> {
    let spec = walsh(tt, pairing)?;
    let verdict = spec.bent_verdict()?;
    if let Some((w, v)) = verdict.witness {
        return domain(format!("dual of a non-bent function (W({w}) = {v})"));
    }
    TruthTable::from_fn(tt.n(), |w| spec.get(w) < 0)
}

/// `2^{n-1} - max |W| / 2`.
pub fn nonlinearity(tt: &TruthTable) -> u64 {
    let spec = walsh(tt, Pairing::Dot).expect("dot pairing accepts every table");
    (1u64 << tt.n()) / 2 - spec.max_abs() as u64 / 2
}

/// Whether `f + g` is affine.
pub fn is_affine_difference(f: &TruthTable, g: &TruthTable) -> Result<bool> {
    Ok(algebraic_degree(&f.xor(g)?) <= 1)
}
