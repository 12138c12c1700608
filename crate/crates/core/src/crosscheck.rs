//! Cross-validation of the subgroup algebra against the Cayley-table oracle.

use serde::Serialize;

use crate::error::Result;
use crate::oracle::{CayleyOracle, ElementSet};
use crate::pc::PcPresentation;
use crate::powerful;
use crate::subgroup::Subgroup;

/// Above this many subgroups, pairwise operations pair every subgroup with an
/// evenly spaced sample of this many partners instead of all of them.
pub const PAIRWISE_FULL_LIMIT: usize = 64;

#[derive(Debug, Clone, Default, Serialize)]
pub struct CrossCheck {
    pub subgroups: usize,
    pub comparisons: u64,
    pub mismatches: Vec<String>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn compare<T: PartialEq + std::fmt::Debug>(
        &mut self,
        what: impl FnOnce() -> String,
        ours: T,
        theirs: T,
    ) {
        self.comparisons += 1;
        if ours != theirs && self.mismatches.len() < 20 {
            self.mismatches
                .push(format!("{}: {ours:?} vs oracle {theirs:?}", what()));
        }
    }
}

fn to_set(oracle: &CayleyOracle, s: &Subgroup<'_>) -> ElementSet {
    let mut v: Vec<u32> = s.elements().iter().map(|e| oracle.index(e)).collect();
    v.sort_unstable();
    v
}

/// Compares every subgroup-algebra operation with its set-based counterpart
/// on every subgroup (and pairs of subgroups) of `pres`.
pub fn cross_validate(pres: &PcPresentation) -> Result<CrossCheck> {
    let oracle = CayleyOracle::build(pres)?;
    let g = Subgroup::full(pres);
    let whole = oracle.whole();
    let mut out = CrossCheck::default();

    let subs = g.all_subgroups(u128::MAX)?;
    let sets: Vec<ElementSet> = subs.iter().map(|s| to_set(&oracle, s)).collect();
    out.subgroups = subs.len();
    let mut ours_lattice = sets.clone();
    ours_lattice.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.compare(
        || "subgroup lattice".into(),
        &ours_lattice,
        &oracle.all_subgroups(&whole),
    );

    let normals = g.normal_subgroups_within(&g, u128::MAX)?;
    let mut normal_sets: Vec<ElementSet> = normals.iter().map(|s| to_set(&oracle, s)).collect();
    normal_sets.sort();
    let mut oracle_normals: Vec<ElementSet> = sets
        .iter()
        .filter(|s| oracle.is_normal(s, &whole))
        .cloned()
        .collect();
    oracle_normals.sort();
    out.compare(|| "normal subgroups".into(), &normal_sets, &oracle_normals);

    for (h, set) in subs.iter().zip(&sets) {
        let name = || format!("{:?}", h.igs_vectors());
        out.compare(
            || format!("closure {}", name()),
            set,
            &oracle.closure(&set_of_igs(&oracle, h)),
        );
        out.compare(|| format!("order {}", name()), h.order(), set.len() as u128);
        let membership: Vec<bool> = oracle.elements().iter().map(|x| h.contains(x)).collect();
        let expected: Vec<bool> = (0..oracle.len() as u32)
            .map(|i| set.binary_search(&i).is_ok())
            .collect();
        out.compare(|| format!("membership {}", name()), membership, expected);
        out.compare(
            || format!("normal {}", name()),
            h.is_normal_in(&g),
            oracle.is_normal(set, &whole),
        );
        let closure = Subgroup::normal_closure(pres, h.igs().to_vec(), &g);
        out.compare(
            || format!("normal closure {}", name()),
            to_set(&oracle, &closure),
            oracle.normal_closure(set, &whole),
        );
        out.compare(
            || format!("centre {}", name()),
            to_set(&oracle, &h.center()?),
            oracle.center(set),
        );
        for k in 1..=2 {
            out.compare(
                || format!("power {k} {}", name()),
                to_set(&oracle, &h.power_subgroup(k)?),
                oracle.power_subgroup(set, k),
            );
        }
        out.compare(
            || format!("exponent {}", name()),
            h.exponent()?,
            oracle.exponent(set) as u128,
        );
        out.compare(
            || format!("abelian {}", name()),
            h.is_abelian(),
            oracle.is_abelian_set(set),
        );
        out.compare(
            || format!("[H,G] {}", name()),
            to_set(&oracle, &h.commutator_with(&g)),
            oracle.commutator_subgroup(set, &whole),
        );
        out.compare(
            || format!("powerfully embedded {}", name()),
            powerful::is_powerfully_embedded(h, &g)?,
            oracle.is_powerfully_embedded(set, &whole),
        );
        out.compare(
            || format!("powerful {}", name()),
            powerful::is_powerful(h)?,
            oracle.is_powerful(set),
        );
        let series = powerful::upper_powerfully_central_series(h)?;
        let terms: Vec<ElementSet> = series.terms.iter().map(|t| to_set(&oracle, t)).collect();
        out.compare(
            || format!("series {}", name()),
            terms,
            oracle.upper_powerfully_central_series(set),
        );
    }

    let partners: Vec<usize> = if subs.len() <= PAIRWISE_FULL_LIMIT {
        (0..subs.len()).collect()
    } else {
        (0..PAIRWISE_FULL_LIMIT)
            .map(|i| i * subs.len() / PAIRWISE_FULL_LIMIT)
            .collect()
    };
    for (a, h) in subs.iter().enumerate() {
        for &b in &partners {
            let k = &subs[b];
            let name = || format!("{:?} with {:?}", h.igs_vectors(), k.igs_vectors());
            out.compare(
                || format!("subset {}", name()),
                h.is_subgroup_of(k),
                oracle.contains_all(&sets[b], &sets[a]),
            );
            out.compare(
                || format!("join {}", name()),
                to_set(&oracle, &h.join(k)),
                oracle.join(&sets[a], &sets[b]),
            );
            out.compare(
                || format!("intersection {}", name()),
                to_set(&oracle, &h.intersection(k)?),
                oracle.intersection(&sets[a], &sets[b]),
            );
            out.compare(
                || format!("commutator {}", name()),
                to_set(&oracle, &h.commutator_with(k)),
                oracle.commutator_subgroup(&sets[a], &sets[b]),
            );
        }
    }

    for (n, set) in normals
        .iter()
        .zip(normals.iter().map(|s| to_set(&oracle, s)))
    {
        let q = n.quotient()?;
        out.compare(
            || format!("quotient order {:?}", n.igs_vectors()),
            q.quotient().order() * n.order(),
            pres.order(),
        );
        let mut hom = true;
        for x in oracle.elements() {
            for gen in pres.generators() {
                let lhs = q.project(&pres.multiply(x, &gen));
                let rhs = q.quotient().multiply(&q.project(x), &q.project(&gen));
                hom &= lhs == rhs;
            }
        }
        let kernel: ElementSet = (0..oracle.len() as u32)
            .filter(|&i| q.project(oracle.element(i)).is_identity())
            .collect();
        out.compare(
            || format!("quotient homomorphism {:?}", n.igs_vectors()),
            hom,
            true,
        );
        out.compare(
            || format!("quotient kernel {:?}", n.igs_vectors()),
            kernel,
            set,
        );
    }
    Ok(out)
}

fn set_of_igs(oracle: &CayleyOracle, h: &Subgroup<'_>) -> Vec<u32> {
    h.igs().iter().map(|e| oracle.index(e)).collect()
}
