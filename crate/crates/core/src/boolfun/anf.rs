//! Algebraic normal form via the binary Möbius transform.

use super::TruthTable;

const MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// ANF coefficients: bit `u` is the coefficient of the monomial `Π_{i ∈ u} x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anf {
    coeffs: TruthTable,
}

impl Anf {
    pub fn coeffs(&self) -> &TruthTable {
        &self.coeffs
    }

    /// Largest monomial degree with a nonzero coefficient; zero for the
    /// zero function.
    pub fn degree(&self) -> u32 {
        let mut best = 0;
        for (wi, &w) in self.coeffs.words().iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                best = best.max(((wi << 6) | b).count_ones());
            }
        }
        best
    }
}

/// In-place Möbius transform; it is an involution.
pub fn moebius(tt: &TruthTable) -> TruthTable {
    let n = tt.n();
    let mut out = tt.clone();
    let words = out.words_mut();
    for (s, mask) in MASKS.iter().enumerate().take(n.min(6) as usize) {
        let shift = 1u32 << s;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    let mut stride = 1;
    while stride < words.len() {
        for base in (0..words.len()).step_by(2 * stride) {
            for i in base..base + stride {
                words[i + stride] ^= words[i];
            }
        }
        stride *= 2;
    }
    out
}

pub fn anf(tt: &TruthTable) -> Anf {
    Anf { coeffs: moebius(tt) }
}

pub fn algebraic_degree(tt: &TruthTable) -> u32 {
    anf(tt).degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Coefficient of monomial u is the XOR of f over all x ⊆ u.
    fn anf_naive(tt: &TruthTable) -> TruthTable {
        TruthTable::from_fn(tt.n(), |u| (0..tt.len()).filter(|&x| x & !u == 0 && tt.get(x)).count() % 2 == 1).unwrap()
    }

    #[test]
    fn matches_subset_sum_definition() {
        for n in 0..=8 {
            let tt = TruthTable::from_fn(n, |i| ((i * 2654435761usize) >> 7) & 1 == 1).unwrap();
            assert_eq!(moebius(&tt), anf_naive(&tt), "n = {n}");
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(algebraic_degree(&TruthTable::zeros(6).unwrap()), 0);
        let one = TruthTable::from_fn(6, |_| true).unwrap();
        assert_eq!(algebraic_degree(&one), 0);
        let and2 = TruthTable::from_fn(2, |i| i == 3).unwrap();
        assert_eq!(algebraic_degree(&and2), 2);
        let lin = TruthTable::from_fn(8, |i| (i & 0b1010_0001).count_ones() % 2 == 1).unwrap();
        assert_eq!(algebraic_degree(&lin), 1);
    }
}
