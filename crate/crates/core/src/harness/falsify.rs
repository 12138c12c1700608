//! Sharpness search: drop one hypothesis of the main theorem and look for a
//! corpus group where the conclusion fails.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HarnessConfig;
use crate::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::oracle::CayleyOracle;
use crate::pc::{Element, PcPresentation};
use crate::powerful::{self, embedding_power_exponent};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DroppedHypothesis {
    /// `N` ranges over all normal subgroups of `G`, not only those in `G^p`.
    SubsetGp,
    /// `G` need not be powerful.
    Powerful,
    /// `N` need not be normal in `G`.
    Normal,
}

impl DroppedHypothesis {
    pub fn as_str(self) -> &'static str {
        match self {
            DroppedHypothesis::SubsetGp => "subset_gp",
            DroppedHypothesis::Powerful => "powerful",
            DroppedHypothesis::Normal => "normal",
        }
    }
}

impl fmt::Display for DroppedHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DroppedHypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subset_gp" => Ok(DroppedHypothesis::SubsetGp),
            "powerful" => Ok(DroppedHypothesis::Powerful),
            "normal" => Ok(DroppedHypothesis::Normal),
            other => Err(Error::InvalidFamily(format!(
                "unknown hypothesis {other:?} (expected subset_gp, powerful or normal)"
            ))),
        }
    }
}

/// A subgroup `N` of a corpus group that is not powerfully nilpotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsifyWitness {
    pub dropped: DroppedHypothesis,
    pub group_id: String,
    pub group_powerful: bool,
    pub n_normal: bool,
    pub n_in_bound: bool,
    pub n_powerful: bool,
    /// Canonical generators of `N`.
    pub n_igs: Vec<Vec<u32>>,
    pub n_order: u128,
}

fn candidates<'p>(
    g: &Subgroup<'p>,
    dropped: DroppedHypothesis,
    cap: u128,
) -> Result<Vec<Subgroup<'p>>> {
    let pres = g.presentation();
    let bound = g.power_subgroup(embedding_power_exponent(pres.prime()))?;
    match dropped {
        DroppedHypothesis::SubsetGp => g.normal_subgroups_within(g, cap),
        DroppedHypothesis::Powerful => bound.normal_subgroups_within(g, cap),
        DroppedHypothesis::Normal => bound.all_subgroups(cap),
    }
}

fn search_group(
    entry: &CorpusEntry,
    dropped: DroppedHypothesis,
    cfg: HarnessConfig,
) -> Result<Option<FalsifyWitness>> {
    let pres = &entry.presentation;
    let g = Subgroup::full(pres);
    let group_powerful = powerful::is_powerful(&g)?;
    if !group_powerful && dropped != DroppedHypothesis::Powerful {
        return Ok(None);
    }
    let bound = g.power_subgroup(embedding_power_exponent(pres.prime()))?;
    let cap = (pres.prime() as u128).pow(cfg.lattice_log_order);
    for n in candidates(&g, dropped, cap)? {
        if powerful::is_powerfully_nilpotent(&n)? {
            continue;
        }
        return Ok(Some(FalsifyWitness {
            dropped,
            group_id: entry.id.clone(),
            group_powerful,
            n_normal: n.is_normal_in(&g),
            n_in_bound: n.is_subgroup_of(&bound),
            n_powerful: powerful::is_powerful(&n)?,
            n_igs: n.igs_vectors(),
            n_order: n.order(),
        }));
    }
    Ok(None)
}

/// The first corpus group, in corpus order, with a subgroup violating the
/// main theorem's conclusion once `dropped` is removed from its hypotheses.
/// Groups whose candidate enumeration exceeds the lattice cap are skipped.
pub fn falsify(
    corpus: &[CorpusEntry],
    dropped: DroppedHypothesis,
    cfg: HarnessConfig,
) -> Result<Option<FalsifyWitness>> {
    for entry in corpus {
        match search_group(entry, dropped, cfg) {
            Ok(Some(w)) => return Ok(Some(w)),
            Ok(None) | Err(Error::CapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Confirms a witness independently with the Cayley-table oracle: `N` is
/// closed, and no chain of subgroups shows it powerfully nilpotent.
pub fn replay_witness(pres: &PcPresentation, w: &FalsifyWitness) -> Result<bool> {
    let oracle = CayleyOracle::build(pres)?;
    let gens: Vec<u32> = w
        .n_igs
        .iter()
        .map(|v| pres.element(v).map(|e: Element| oracle.index(&e)))
        .collect::<Result<_>>()?;
    let n = oracle.closure(&gens);
    Ok(n.len() as u128 == w.n_order && !oracle.powerfully_nilpotent_by_chain_search(&n))
}
