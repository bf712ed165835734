use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One tensor factor: a labelled subsystem of fixed local dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Party {
    pub label: String,
    pub dim: usize,
}

impl Party {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        Self { label: label.into(), dim }
    }
}

/// Ordered tensor factorisation of a Hilbert space.
///
/// Composite indices are party-major: the first party owns the most
/// significant digit. Party order is fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Party>", into = "Vec<Party>")]
pub struct SystemLayout {
    parties: Vec<Party>,
    total_dim: usize,
}

impl SystemLayout {
    /// Builds a layout; every local dimension must be at least 2.
    pub fn new(parties: Vec<Party>) -> Result<Self> {
        Self::build(parties, 2)
    }

    /// Layout that also admits one-dimensional factors, used for trivial
    /// purification ancillas.
    pub(crate) fn with_trivial_factors(parties: Vec<Party>) -> Result<Self> {
        Self::build(parties, 1)
    }

    fn build(parties: Vec<Party>, min_dim: usize) -> Result<Self> {
        if parties.is_empty() {
            return Err(Error::InvalidLayout("no parties".into()));
        }
        let mut total_dim: usize = 1;
        for (i, p) in parties.iter().enumerate() {
            if p.label.is_empty() {
                return Err(Error::InvalidLayout(format!("party {i} has an empty label")));
            }
            if p.dim < min_dim {
                return Err(Error::InvalidLayout(format!(
                    "party `{}` has dimension {} (minimum {min_dim})",
                    p.label, p.dim
                )));
            }
            if parties[..i].iter().any(|q| q.label == p.label) {
                return Err(Error::InvalidLayout(format!("duplicate label `{}`", p.label)));
            }
            total_dim = total_dim
                .checked_mul(p.dim)
                .ok_or_else(|| Error::InvalidLayout("total dimension overflows".into()))?;
        }
        Ok(Self { parties, total_dim })
    }

    pub fn from_pairs(pairs: &[(&str, usize)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(l, d)| Party::new(l, d)).collect())
    }

    /// `n` parties of dimension `d`, labelled `A`, `B`, `C`, ...
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new((0..n).map(|i| Party::new(default_label(i), d)).collect())
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    pub fn len(&self) -> usize {
        self.parties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parties.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn labels(&self) -> Vec<&str> {
        self.parties.iter().map(|p| p.label.as_str()).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parties.iter().map(|p| p.dim).collect()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.parties
            .iter()
            .position(|p| p.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.parties.iter().any(|p| p.label == label)
    }

    /// Positions of the given labels in layout order, deduplicated.
    pub fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        if labels.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut pos = labels
            .iter()
            .map(|l| self.position(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        pos.sort_unstable();
        pos.dedup();
        Ok(pos)
    }

    /// Layout of `self` followed by `other`.
    pub fn concat(&self, other: &SystemLayout) -> Result<Self> {
        if let Some(p) = other.parties.iter().find(|p| self.contains(&p.label)) {
            return Err(Error::LabelCollision(p.label.clone()));
        }
        let mut parties = self.parties.clone();
        parties.extend(other.parties.iter().cloned());
        Self::with_trivial_factors(parties)
    }

    /// Sub-layout made of the parties at `positions` (kept in the given order).
    pub fn select(&self, positions: &[usize]) -> Result<Self> {
        Self::with_trivial_factors(positions.iter().map(|&i| self.parties[i].clone()).collect())
    }

    /// A label not yet used in this layout, derived from `base`.
    pub fn fresh_label(&self, base: &str) -> String {
        if !self.contains(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|l| !self.contains(l))
            .expect("unbounded label search")
    }
}

impl TryFrom<Vec<Party>> for SystemLayout {
    type Error = Error;

    fn try_from(parties: Vec<Party>) -> Result<Self> {
        Self::with_trivial_factors(parties)
    }
}

impl From<SystemLayout> for Vec<Party> {
    fn from(layout: SystemLayout) -> Self {
        layout.parties
    }
}

/// `A`..`Z`, then `P26`, `P27`, ...
pub fn default_label(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("P{i}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_dim_is_product() {
        let l = SystemLayout::from_pairs(&[("A", 2), ("B", 3), ("C", 4)]).unwrap();
        assert_eq!(l.total_dim(), 24);
        assert_eq!(l.labels(), vec!["A", "B", "C"]);
    }

    #[test]
    fn rejects_bad_layouts() {
        assert!(SystemLayout::from_pairs(&[("A", 1)]).is_err());
        assert!(SystemLayout::from_pairs(&[("A", 2), ("A", 2)]).is_err());
        assert!(SystemLayout::from_pairs(&[]).is_err());
    }

    #[test]
    fn concat_detects_collision() {
        let a = SystemLayout::uniform(2, 2).unwrap();
        let err = a.concat(&a).unwrap_err();
        assert!(matches!(err, Error::LabelCollision(l) if l == "A"));
    }

    #[test]
    fn positions_sorted_and_deduped() {
        let l = SystemLayout::uniform(4, 2).unwrap();
        assert_eq!(l.positions(&["C", "A", "C"]).unwrap(), vec![0, 2]);
        assert!(matches!(l.positions::<&str>(&[]), Err(Error::EmptySelection)));
        assert!(matches!(l.positions(&["Z"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn json_shape() {
        let l = SystemLayout::from_pairs(&[("A", 2), ("B", 3)]).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"[{"label":"A","dim":2},{"label":"B","dim":3}]"#);
        let back: SystemLayout = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
    }
}
