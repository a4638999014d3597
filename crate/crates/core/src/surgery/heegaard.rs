//! Genus bookkeeping for ambient 3-manifolds of surgered branched surfaces.

use std::fmt;

use super::SurgeryError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientability {
    Orientable,
    NonOrientable,
}

impl fmt::Display for Orientability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientability::Orientable => "orientable",
            Orientability::NonOrientable => "non-orientable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegaardRecord {
    pub l: usize,
    pub target: Orientability,
    pub genus_before: usize,
    pub genus_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegaardLedger {
    pub genus_bound: usize,
    pub orientable_ambient: bool,
    pub history: Vec<HeegaardRecord>,
}

impl HeegaardLedger {
    pub fn new(genus: usize, orientable_ambient: bool) -> Self {
        Self {
            genus_bound: genus,
            orientable_ambient,
            history: Vec::new(),
        }
    }
}

/// Records an attachment along `l` circles: the bound becomes `g + l - 1`.
pub fn apply_heegaard(
    ledger: &HeegaardLedger,
    l: usize,
    target: Orientability,
) -> Result<HeegaardLedger, SurgeryError> {
    if l == 0 {
        return Err(SurgeryError::InvalidL);
    }
    if !ledger.orientable_ambient && target == Orientability::Orientable {
        return Err(SurgeryError::OrientabilityUnsupported);
    }
    let mut out = ledger.clone();
    out.genus_bound = ledger.genus_bound + l - 1;
    out.orientable_ambient = target == Orientability::Orientable;
    out.history.push(HeegaardRecord {
        l,
        target,
        genus_before: ledger.genus_bound,
        genus_after: out.genus_bound,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Orientability::*;

    #[test]
    fn genus_table() {
        for (g, l, want) in [(0, 3, 2), (2, 1, 2), (1, 2, 2)] {
            let out = apply_heegaard(&HeegaardLedger::new(g, true), l, Orientable).unwrap();
            assert_eq!(out.genus_bound, want);
            assert_eq!(out.history.len(), 1);
        }
    }

    #[test]
    fn non_orientable_target() {
        let out = apply_heegaard(&HeegaardLedger::new(0, true), 2, NonOrientable).unwrap();
        assert_eq!(out.genus_bound, 1);
        assert!(!out.orientable_ambient);
        assert_eq!(out.history[0].target, NonOrientable);
        assert_eq!(apply_heegaard(&out, 1, Orientable), Err(SurgeryError::OrientabilityUnsupported));
        assert_eq!(apply_heegaard(&out, 0, NonOrientable), Err(SurgeryError::InvalidL));
    }
}
