use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::pc::Element;
use crate::subgroup::Subgroup;

/// The claims the harness checks, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    #[serde(rename = "THM1_1")]
    PowersAreAgemo,
    #[serde(rename = "THM1_2")]
    AgemoPowerfullyEmbedded,
    #[serde(rename = "THM1_3")]
    GeneratorPowers,
    #[serde(rename = "LEM2_SHALEV")]
    ShalevCommutatorPowers,
    #[serde(rename = "THM3_FA")]
    CommutatorOrderBound,
    #[serde(rename = "THM4_POWERFUL")]
    NormalSubgroupPowerful,
    #[serde(rename = "PROP5")]
    ReductionModAgemo2,
    #[serde(rename = "PROP6")]
    ReductionModCentrePower,
    #[serde(rename = "LEM4")]
    OrderPCentral,
    #[serde(rename = "LEM5")]
    DeepElementsCentral,
    #[serde(rename = "LEM6")]
    CentralOrderP2Exists,
    #[serde(rename = "MAIN_ODD")]
    MainOdd,
    #[serde(rename = "MAIN_P2")]
    MainTwo,
    #[serde(rename = "COROLLARY")]
    Corollary,
}

impl ClaimId {
    pub const ALL: [ClaimId; 14] = [
        ClaimId::PowersAreAgemo,
        ClaimId::AgemoPowerfullyEmbedded,
        ClaimId::GeneratorPowers,
        ClaimId::ShalevCommutatorPowers,
        ClaimId::CommutatorOrderBound,
        ClaimId::NormalSubgroupPowerful,
        ClaimId::ReductionModAgemo2,
        ClaimId::ReductionModCentrePower,
        ClaimId::OrderPCentral,
        ClaimId::DeepElementsCentral,
        ClaimId::CentralOrderP2Exists,
        ClaimId::MainOdd,
        ClaimId::MainTwo,
        ClaimId::Corollary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::PowersAreAgemo => "THM1_1",
            ClaimId::AgemoPowerfullyEmbedded => "THM1_2",
            ClaimId::GeneratorPowers => "THM1_3",
            ClaimId::ShalevCommutatorPowers => "LEM2_SHALEV",
            ClaimId::CommutatorOrderBound => "THM3_FA",
            ClaimId::NormalSubgroupPowerful => "THM4_POWERFUL",
            ClaimId::ReductionModAgemo2 => "PROP5",
            ClaimId::ReductionModCentrePower => "PROP6",
            ClaimId::OrderPCentral => "LEM4",
            ClaimId::DeepElementsCentral => "LEM5",
            ClaimId::CentralOrderP2Exists => "LEM6",
            ClaimId::MainOdd => "MAIN_ODD",
            ClaimId::MainTwo => "MAIN_P2",
            ClaimId::Corollary => "COROLLARY",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown claim id `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
        })
    }
}

/// A counterexample: named elements and subgroups as exponent vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, Vec<u32>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subgroups: BTreeMap<String, Vec<Vec<u32>>>,
}

impl Witness {
    pub fn new(description: impl Into<String>) -> Self {
        Witness {
            description: description.into(),
            ..Default::default()
        }
    }

    pub fn element(mut self, name: &str, e: &Element) -> Self {
        self.elements.insert(name.to_string(), e.to_vec());
        self
    }

    pub fn subgroup(mut self, name: &str, s: &Subgroup<'_>) -> Self {
        self.subgroups.insert(name.to_string(), s.igs_vectors());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub claim_id: ClaimId,
    pub group_id: String,
    pub instances_checked: u64,
    pub hypothesis_filtered: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Why a check was skipped (failed precondition or exceeded cap).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl CheckReport {
    pub fn is_failure(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// Accumulates instances for one claim on one group.
#[derive(Debug, Clone)]
pub struct Tally {
    claim_id: ClaimId,
    group_id: String,
    instances: u64,
    filtered: u64,
    witness: Option<Witness>,
    reason: Option<String>,
}

impl Tally {
    pub fn new(claim_id: ClaimId, group_id: &str) -> Self {
        Tally {
            claim_id,
            group_id: group_id.to_string(),
            instances: 0,
            filtered: 0,
            witness: None,
            reason: None,
        }
    }

    pub fn checked(&mut self, n: u64) {
        self.instances += n;
    }

    pub fn filtered(&mut self, n: u64) {
        self.filtered += n;
    }

    /// Records a failing instance; the first witness is kept.
    pub fn fail(&mut self, w: Witness) {
        self.instances += 1;
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    /// Records an instance with the given outcome.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        if ok {
            self.instances += 1;
        } else {
            self.fail(witness());
        }
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        if self.reason.is_none() {
            self.reason = Some(reason.into());
        }
    }

    pub fn has_failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn finish(self) -> CheckReport {
        let verdict = if self.witness.is_some() {
            Verdict::Fail
        } else if self.instances == 0 {
            Verdict::Vacuous
        } else {
            Verdict::Pass
        };
        CheckReport {
            claim_id: self.claim_id,
            group_id: self.group_id,
            instances_checked: self.instances,
            hypothesis_filtered: self.filtered,
            verdict,
            witness: self.witness,
            reason: if verdict == Verdict::Vacuous {
                self.reason
            } else {
                None
            },
        }
    }
}

/// Folds several reports for the same claim and group into one.
pub fn merge_reports(claim_id: ClaimId, group_id: &str, parts: &[CheckReport]) -> CheckReport {
    let mut t = Tally::new(claim_id, group_id);
    for r in parts {
        t.instances += r.instances_checked;
        t.filtered += r.hypothesis_filtered;
        if t.witness.is_none() {
            t.witness = r.witness.clone();
        }
        if t.reason.is_none() {
            t.reason = r.reason.clone();
        }
    }
    t.finish()
}
