//! Powerful, powerfully embedded and powerfully nilpotent groups.
//!
//! Every predicate takes the group as a [`Subgroup`], so the same code runs
//! on a whole presentation (`Subgroup::full`) and on subgroups `N` of it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

/// Groups at most this large get the defining quantifier of each upper
/// series term checked over all pairs of elements.
pub const DEFAULT_FULL_QUANTIFIER_CAP: u128 = 243;

/// `k` such that `N^{p^k}` is the power subgroup in the powerful and
/// powerfully embedded conditions: `N^p` for odd `p`, `N^4` for `p = 2`.
pub fn embedding_power_exponent(prime: u32) -> u32 {
    if prime == 2 {
        2
    } else {
        1
    }
}

/// `[N, G] <= N^p` (odd `p`) or `[N, G] <= N^4` (`p = 2`).
pub fn is_powerfully_embedded(n: &Subgroup<'_>, g: &Subgroup<'_>) -> Result<bool> {
    let comm = n.commutator_with(g);
    if comm.is_trivial() {
        return Ok(true);
    }
    let k = embedding_power_exponent(n.presentation().prime());
    Ok(comm.is_subgroup_of(&n.power_subgroup(k)?))
}

pub fn is_powerful(g: &Subgroup<'_>) -> Result<bool> {
    is_powerfully_embedded(g, g)
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport<'p> {
    /// `Z_0 <= Z_1 <= ...` up to and including the first repeated term.
    pub terms: Vec<Subgroup<'p>>,
    /// The `n` with `Z_{n+1} = Z_n`.
    pub stabilized_at: usize,
    pub reaches_group: bool,
    pub powerful: bool,
    /// `Some(n)` exactly when the group is powerfully nilpotent.
    pub powerful_class: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct SeriesOptions {
    pub full_quantifier_cap: u128,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            full_quantifier_cap: DEFAULT_FULL_QUANTIFIER_CAP,
        }
    }
}

pub fn upper_powerfully_central_series<'p>(g: &Subgroup<'p>) -> Result<SeriesReport<'p>> {
    upper_powerfully_central_series_with(g, SeriesOptions::default())
}

/// The upper powerfully central series
/// `Z_0 = 1`, `Z_n = {a in G : [a, x] in Z_{n-1}^p for all x in G}`.
///
/// `Z_{n-1}^p` is normal in `G`, so testing `x` over the generators of `G`
/// is enough; each candidate term is still checked to be a normal subgroup,
/// and for small groups against the quantifier over every `x`.
pub fn upper_powerfully_central_series_with<'p>(
    g: &Subgroup<'p>,
    opts: SeriesOptions,
) -> Result<SeriesReport<'p>> {
    let pres = g.presentation();
    let elements = g.try_elements()?;
    let full_check = g.order() <= opts.full_quantifier_cap;
    let mut terms = vec![Subgroup::trivial(pres)];
    loop {
        let prev = terms.last().unwrap();
        let target = prev.power_subgroup(1)?;
        let members: Vec<_> = elements
            .iter()
            .filter(|a| {
                g.igs()
                    .iter()
                    .all(|x| target.contains(&pres.commutator(a, x)))
            })
            .cloned()
            .collect();
        if full_check {
            for a in &elements {
                let by_quantifier = elements
                    .iter()
                    .all(|x| target.contains(&pres.commutator(a, x)));
                if by_quantifier != members.contains(a) {
                    return Err(Error::InvariantViolation(format!(
                        "series term {}: generator test and full quantifier disagree at {a}",
                        terms.len()
                    )));
                }
            }
        }
        let count = members.len() as u128;
        let next = Subgroup::generated(pres, members);
        if next.order() != count {
            return Err(Error::InvariantViolation(format!(
                "series term {} is not closed under multiplication",
                terms.len()
            )));
        }
        if !next.is_normal_in(g) || !prev.is_subgroup_of(&next) {
            return Err(Error::InvariantViolation(format!(
                "series term {} is not a normal overgroup of its predecessor",
                terms.len()
            )));
        }
        if &next == prev {
            break;
        }
        terms.push(next);
    }
    let stabilized_at = terms.len() - 1;
    let reaches_group = terms.last().unwrap() == g;
    if reaches_group && !verify_chain(g, &terms)?.verified {
        return Err(Error::InvariantViolation(
            "upper series reaches the group but is not powerfully central".into(),
        ));
    }
    let powerful = is_powerful(g)?;
    Ok(SeriesReport {
        terms,
        stabilized_at,
        reaches_group,
        powerful,
        powerful_class: (reaches_group && powerful).then_some(stabilized_at),
    })
}

/// Powerful, with an upper powerfully central series that reaches the group.
pub fn is_powerfully_nilpotent(g: &Subgroup<'_>) -> Result<bool> {
    if !is_powerful(g)? {
        return Ok(false);
    }
    Ok(upper_powerfully_central_series(g)?.reaches_group)
}

/// Least `n` with `Z_n = G`; `None` when the group is not powerfully nilpotent.
pub fn powerful_class(g: &Subgroup<'_>) -> Result<Option<usize>> {
    Ok(upper_powerfully_central_series(g)?.powerful_class)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainFailure {
    Empty,
    NotStartingAtTrivial,
    NotAscending {
        index: usize,
    },
    /// `[H_index, G]` is not inside `H_{index-1}^p`.
    NotPowerfullyCentral {
        index: usize,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainCertificate<'p> {
    pub chain: Vec<Subgroup<'p>>,
    pub verified: bool,
    /// Whether the last term is the whole group.
    pub ends_at_group: bool,
    pub failure: Option<ChainFailure>,
}

/// Checks `H_0 = 1`, `H_{i-1} <= H_i` and `[H_i, G] <= H_{i-1}^p` for every
/// `i`. The power is `p` for every prime, `p = 2` included.
pub fn verify_chain<'p>(g: &Subgroup<'p>, chain: &[Subgroup<'p>]) -> Result<ChainCertificate<'p>> {
    let failure = chain_failure(g, chain)?;
    Ok(ChainCertificate {
        chain: chain.to_vec(),
        verified: failure.is_none(),
        ends_at_group: chain.last().is_some_and(|h| h == g),
        failure,
    })
}

fn chain_failure(g: &Subgroup<'_>, chain: &[Subgroup<'_>]) -> Result<Option<ChainFailure>> {
    let Some(first) = chain.first() else {
        return Ok(Some(ChainFailure::Empty));
    };
    if !first.is_trivial() {
        return Ok(Some(ChainFailure::NotStartingAtTrivial));
    }
    for (i, pair) in chain.windows(2).enumerate() {
        let (lower, upper) = (&pair[0], &pair[1]);
        let index = i + 1;
        if !lower.is_subgroup_of(upper) {
            return Ok(Some(ChainFailure::NotAscending { index }));
        }
        let comm = upper.commutator_with(g);
        if comm.is_trivial() {
            continue;
        }
        let target = lower.power_subgroup(1)?;
        if !comm.igs().iter().all(|c| target.contains(c)) {
            return Ok(Some(ChainFailure::NotPowerfullyCentral { index }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcPresentation;

    fn heis27() -> PcPresentation {
        PcPresentation::builder(3, 3)
            .conj(1, 0, &[0, 0, 1])
            .build()
            .unwrap()
    }

    /// b = g1 of order 3, a = g2 of order 9 with a^3 = g3, a^b = a^4.
    fn modular27() -> PcPresentation {
        PcPresentation::builder(3, 3)
            .power(1, &[0, 0, 1])
            .conj(1, 0, &[0, 0, 1])
            .build()
            .unwrap()
    }

    #[test]
    fn heisenberg_is_not_powerful() {
        let h = heis27();
        let g = Subgroup::full(&h);
        assert!(!is_powerful(&g).unwrap());
        assert!(!is_powerfully_nilpotent(&g).unwrap());
        assert!(is_powerfully_embedded(&Subgroup::generated(&h, [h.generator(2)]), &g).unwrap());
        assert!(is_powerfully_embedded(&Subgroup::trivial(&h), &g).unwrap());
        let cert = verify_chain(&g, &[Subgroup::trivial(&h), g.clone()]).unwrap();
        assert!(!cert.verified);
        assert_eq!(
            cert.failure,
            Some(ChainFailure::NotPowerfullyCentral { index: 1 })
        );
    }

    #[test]
    fn modular_is_powerful_but_stalls() {
        let m = modular27();
        let g = Subgroup::full(&m);
        assert!(is_powerful(&g).unwrap());
        let s = upper_powerfully_central_series(&g).unwrap();
        assert_eq!(s.terms.len(), 2);
        assert_eq!(s.terms[1], Subgroup::generated(&m, [m.generator(2)]));
        assert!(!s.reaches_group);
        assert_eq!(s.powerful_class, None);
        assert!(!is_powerfully_nilpotent(&g).unwrap());
    }

    #[test]
    fn abelian_and_trivial_classes() {
        let c = PcPresentation::builder(3, 2)
            .power(0, &[0, 1])
            .build()
            .unwrap();
        assert_eq!(powerful_class(&Subgroup::full(&c)).unwrap(), Some(1));
        assert_eq!(powerful_class(&Subgroup::trivial(&c)).unwrap(), Some(0));
        let cert = verify_chain(
            &Subgroup::full(&c),
            &[Subgroup::trivial(&c), Subgroup::full(&c)],
        )
        .unwrap();
        assert!(cert.verified && cert.ends_at_group);
    }

    #[test]
    fn chain_shape_failures() {
        let c = PcPresentation::builder(3, 2)
            .power(0, &[0, 1])
            .build()
            .unwrap();
        let g = Subgroup::full(&c);
        assert_eq!(
            verify_chain(&g, &[]).unwrap().failure,
            Some(ChainFailure::Empty)
        );
        assert_eq!(
            verify_chain(&g, std::slice::from_ref(&g)).unwrap().failure,
            Some(ChainFailure::NotStartingAtTrivial)
        );
        let a3 = Subgroup::generated(&c, [c.generator(1)]);
        let chain = [Subgroup::trivial(&c), g.clone(), a3];
        assert_eq!(
            verify_chain(&g, &chain).unwrap().failure,
            Some(ChainFailure::NotAscending { index: 2 })
        );
    }
}
