use std::collections::HashSet;

use crate::config::ensure_within;
use crate::error::Result;
use crate::pc::Element;
use crate::subgroup::Subgroup;

/// Default lattice bound: `p^5` elements in the subgroup being enumerated.
pub const DEFAULT_LATTICE_LOG_ORDER: u32 = 5;

fn sort_lattice(subs: &mut [Subgroup<'_>]) {
    subs.sort_by(|a, b| {
        a.log_order()
            .cmp(&b.log_order())
            .then_with(|| a.igs().cmp(b.igs()))
    });
}

impl<'p> Subgroup<'p> {
    /// One generator for each cyclic subgroup.
    fn cyclic_generators(&self) -> Vec<Element> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in self.elements() {
            if x.is_identity() {
                continue;
            }
            let c = Subgroup::generated(self.pres, [x.clone()]);
            if seen.insert(c) {
                out.push(x);
            }
        }
        out
    }

    /// Every subgroup of `self`, by repeatedly extending known subgroups by
    /// one element until nothing new appears. Sorted by (order, sequence).
    pub fn all_subgroups(&self, max_elements: u128) -> Result<Vec<Subgroup<'p>>> {
        ensure_within(self.order(), max_elements)?;
        let gens = self.cyclic_generators();
        let trivial = Subgroup::trivial(self.pres);
        let mut known: HashSet<Subgroup<'p>> = HashSet::from([trivial.clone()]);
        let mut frontier = vec![trivial];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for x in &gens {
                    if s.contains(x) {
                        continue;
                    }
                    let t = s.extend(x);
                    if !known.contains(&t) {
                        known.insert(t.clone());
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<_> = known.into_iter().collect();
        sort_lattice(&mut out);
        Ok(out)
    }

    /// Subgroups of `self` that are normal in `ambient`.
    ///
    /// When `self` is itself normal in `ambient`, every such subgroup is
    /// reached from the trivial group by normal closures of one extra
    /// element, which visits far fewer candidates than the full lattice.
    /// Otherwise the full lattice is filtered.
    pub fn normal_subgroups_within(
        &self,
        ambient: &Subgroup<'p>,
        max_elements: u128,
    ) -> Result<Vec<Subgroup<'p>>> {
        ensure_within(self.order(), max_elements)?;
        if !self.is_normal_in(ambient) {
            return self.normal_subgroups_by_filter(ambient, max_elements);
        }
        let gens = self.cyclic_generators();
        let trivial = Subgroup::trivial(self.pres);
        let mut known: HashSet<Subgroup<'p>> = HashSet::from([trivial.clone()]);
        let mut frontier = vec![trivial];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for x in &gens {
                    if s.contains(x) {
                        continue;
                    }
                    let mut seed = s.igs().to_vec();
                    seed.push(x.clone());
                    let t = Subgroup::normal_closure(self.pres, seed, ambient);
                    if !known.contains(&t) {
                        known.insert(t.clone());
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<_> = known.into_iter().collect();
        sort_lattice(&mut out);
        Ok(out)
    }

    /// The definitional route: all subgroups, filtered by normality.
    pub fn normal_subgroups_by_filter(
        &self,
        ambient: &Subgroup<'p>,
        max_elements: u128,
    ) -> Result<Vec<Subgroup<'p>>> {
        Ok(self
            .all_subgroups(max_elements)?
            .into_iter()
            .filter(|n| n.is_normal_in(ambient))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use crate::pc::PcPresentation;
    use crate::subgroup::Subgroup;

    const CAP: u128 = 1 << 12;

    #[test]
    fn cyclic_nine_has_three_subgroups() {
        let c = PcPresentation::builder(3, 2)
            .power(0, &[0, 1])
            .build()
            .unwrap();
        let subs = Subgroup::full(&c).all_subgroups(CAP).unwrap();
        let orders: Vec<u128> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 3, 9]);
    }

    #[test]
    fn heisenberg_lattice() {
        let h = PcPresentation::builder(3, 3)
            .conj(1, 0, &[0, 0, 1])
            .build()
            .unwrap();
        let g = Subgroup::full(&h);
        let subs = g.all_subgroups(CAP).unwrap();
        // 1 trivial, 13 of order 3, 4 of order 9, the whole group.
        assert_eq!(subs.len(), 19);
        let normal = g.normal_subgroups_within(&g, CAP).unwrap();
        assert_eq!(normal, g.normal_subgroups_by_filter(&g, CAP).unwrap());
        // trivial, the centre, the four maximal subgroups, G.
        assert_eq!(normal.len(), 7);
    }

    #[test]
    fn lattice_cap() {
        let h = PcPresentation::builder(3, 3)
            .conj(1, 0, &[0, 0, 1])
            .build()
            .unwrap();
        assert!(Subgroup::full(&h).all_subgroups(9).is_err());
    }
}
