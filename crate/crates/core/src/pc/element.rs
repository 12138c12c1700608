use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Inline storage covers every corpus group without touching the heap.
pub type Exponents = SmallVec<[u32; 10]>;

/// An element of a pc-presented group in normal form `g_1^{e_1} ... g_n^{e_n}`.
///
/// Every exponent lies in `[0, p)`, so two elements are equal exactly when
/// their exponent vectors are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Exponents);

impl Element {
    pub fn identity(ngens: usize) -> Self {
        Element(SmallVec::from_elem(0, ngens))
    }

    /// Wraps an exponent vector without checking it against a presentation.
    /// Use [`PcPresentation::element`](crate::PcPresentation::element) for
    /// validated construction.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Element(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent, `None` for the identity.
    pub fn depth(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    /// The exponent at [`depth`](Self::depth), `0` for the identity.
    pub fn leading_exponent(&self) -> u32 {
        self.0.iter().copied().find(|&e| e != 0).unwrap_or(0)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.0.to_vec()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}
