use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A nonnegative integer with its little-endian binary vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryIndex {
    pub j: u64,
    /// `(j_0, …, j_{n−1})` with `j = Σ j_i 2^i`; minimal length, `[0]` for zero.
    pub bits: Vec<u8>,
    /// Number of ones in `bits`.
    pub weight: u32,
}

impl BinaryIndex {
    pub fn value(&self) -> u64 {
        self.bits.iter().enumerate().map(|(i, &b)| (b as u64) << i).sum()
    }
}

pub fn hamming_weight(j: u64) -> BinaryIndex {
    let len = (64 - j.leading_zeros()).max(1) as usize;
    let bits = (0..len).map(|i| ((j >> i) & 1) as u8).collect();
    BinaryIndex { j, bits, weight: j.count_ones() }
}

/// Coefficient family of a polygamy inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// Every term weighted 1.
    Unit,
    /// Term `j` weighted `β^{ω_H(j)}`.
    Hamming,
    /// Term `j` weighted `β^j`; valid under the dominance condition.
    Index,
}

impl WeightMode {
    pub const ALL: [WeightMode; 3] = [WeightMode::Unit, WeightMode::Hamming, WeightMode::Index];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Unit => "unit",
            Self::Hamming => "hamming",
            Self::Index => "index",
        }
    }

    /// Exponent of `β` for the term at position `j`.
    pub fn exponent(self, j: usize) -> u64 {
        match self {
            Self::Unit => 0,
            Self::Hamming => (j as u64).count_ones() as u64,
            Self::Index => j as u64,
        }
    }

    /// `β^exponent(j)`, with `0^0 = 1`.
    pub fn coefficient(self, j: usize, beta: f64) -> f64 {
        let e = self.exponent(j);
        if e == 0 {
            1.0
        } else {
            beta.powi(e.min(i32::MAX as u64) as i32)
        }
    }
}

impl std::fmt::Display for WeightMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Self::Unit),
            "hamming" => Ok(Self::Hamming),
            "index" => Ok(Self::Index),
            other => Err(Error::Config(format!("unknown weight mode `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let z = hamming_weight(0);
        assert_eq!((z.weight, z.bits.clone()), (0, vec![0]));
        let t = hamming_weight(3);
        assert_eq!((t.weight, t.bits.clone()), (2, vec![1, 1]));
        let e = hamming_weight(8);
        assert_eq!((e.weight, e.bits.clone()), (1, vec![0, 0, 0, 1]));
    }

    #[test]
    fn powers_of_two() {
        for k in 0..=30u32 {
            assert_eq!(hamming_weight(1 << k).weight, 1);
            assert_eq!(hamming_weight((1u64 << k) - 1).weight, k);
        }
    }

    #[test]
    fn bits_reconstruct_and_weight_bounded() {
        for j in 0..5000u64 {
            let b = hamming_weight(j);
            assert_eq!(b.value(), j);
            assert_eq!(b.weight as usize, b.bits.iter().filter(|&&x| x == 1).count());
            assert!(b.weight as u64 <= j);
        }
    }

    #[test]
    fn zero_beta_convention() {
        assert_eq!(WeightMode::Hamming.coefficient(0, 0.0), 1.0);
        assert_eq!(WeightMode::Hamming.coefficient(1, 0.0), 0.0);
        assert_eq!(WeightMode::Unit.coefficient(5, 0.0), 1.0);
        assert_eq!(WeightMode::Index.coefficient(0, 0.0), 1.0);
    }

    #[test]
    fn serde_names() {
        assert_eq!(serde_json::to_string(&WeightMode::Hamming).unwrap(), "\"hamming\"");
        assert_eq!("index".parse::<WeightMode>().unwrap(), WeightMode::Index);
        assert!("bogus".parse::<WeightMode>().is_err());
    }
}
