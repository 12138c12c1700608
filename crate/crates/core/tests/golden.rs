//! Recorded verdicts for the control groups, confirmed both by the pc
//! algorithms and by the Cayley-table oracle.

mod common;

use serde::Deserialize;

use ppn_core::corpus::CorpusEntry;
use ppn_core::powerful::{is_powerful, is_powerfully_nilpotent, powerful_class};
use ppn_core::{CayleyOracle, Subgroup};

#[derive(Debug, Deserialize)]
struct Control {
    group_id: String,
    order: u128,
    powerful: bool,
    powerfully_nilpotent: bool,
    powerful_class: Option<usize>,
}

#[derive(Debug, PartialEq)]
struct Verdicts {
    powerful: bool,
    powerfully_nilpotent: bool,
    powerful_class: Option<usize>,
}

fn computed(entry: &CorpusEntry) -> Verdicts {
    let g = Subgroup::full(&entry.presentation);
    Verdicts {
        powerful: is_powerful(&g).unwrap(),
        powerfully_nilpotent: is_powerfully_nilpotent(&g).unwrap(),
        powerful_class: powerful_class(&g).unwrap(),
    }
}

fn by_oracle(entry: &CorpusEntry) -> Verdicts {
    let o = CayleyOracle::build(&entry.presentation).unwrap();
    let whole = o.whole();
    let pn = o.powerfully_nilpotent_by_chain_search(&whole);
    let series = o.upper_powerfully_central_series(&whole);
    Verdicts {
        powerful: o.is_powerful(&whole),
        powerfully_nilpotent: pn,
        powerful_class: pn.then(|| series.len() - 1),
    }
}

#[test]
fn control_groups_match_golden_file() {
    let controls: Vec<Control> =
        serde_json::from_str(include_str!("golden/controls.json")).unwrap();
    let corpus = common::full_corpus();
    for c in &controls {
        let entry = corpus
            .iter()
            .find(|e| e.id == c.group_id)
            .unwrap_or_else(|| panic!("{} is not in the corpus", c.group_id));
        let want = Verdicts {
            powerful: c.powerful,
            powerfully_nilpotent: c.powerfully_nilpotent,
            powerful_class: c.powerful_class,
        };
        assert_eq!(entry.presentation.order(), c.order, "{}", c.group_id);
        assert_eq!(by_oracle(entry), want, "oracle on {}", c.group_id);
        assert_eq!(computed(entry), want, "pc algorithms on {}", c.group_id);
    }
}

#[test]
fn abelian_groups_have_class_at_most_one() {
    for entry in common::full_corpus()
        .iter()
        .filter(|e| e.spec.is_abelian_family())
    {
        let v = computed(entry);
        assert!(v.powerfully_nilpotent, "{}", entry.id);
        assert!(v.powerful_class.unwrap() <= 1, "{}", entry.id);
        if entry.presentation.ngens() <= 4 {
            assert_eq!(by_oracle(entry), v, "{}", entry.id);
        }
    }
}
