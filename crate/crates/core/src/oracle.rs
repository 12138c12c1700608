//! Brute-force Cayley-table oracle.
//!
//! Everything here works on raw element indices and explicit element sets,
//! with no use of induced generating sequences, so it can cross-check the
//! subgroup algebra built on sifting.

use std::collections::BTreeSet;

use crate::config::{ensure_enumerable, ensure_within, MAX_TABLE_ENTRIES};
use crate::error::{Error, Result};
use crate::pc::{Element, PcPresentation};

/// A subset of group elements, as sorted element indices.
pub type ElementSet = Vec<u32>;

#[derive(Debug, Clone)]
pub struct CayleyOracle {
    prime: u32,
    elements: Vec<Element>,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl CayleyOracle {
    /// Enumerates every normal form and fills the multiplication table by
    /// collection, then checks the Latin-square and inverse invariants.
    pub fn build(pres: &PcPresentation) -> Result<Self> {
        let order = pres.order();
        ensure_enumerable(order)?;
        ensure_within(order.saturating_mul(order), MAX_TABLE_ENTRIES)?;
        let n = order as usize;
        let elements: Vec<Element> = pres.elements().collect();
        let mut table = vec![0u32; n * n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                table[a * n + b] = pres.index_of(&pres.multiply(x, y)) as u32;
            }
        }
        let mut inverses = vec![u32::MAX; n];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| table[a * n + b] == 0) {
                inverses[a] = b as u32;
            }
        }
        let oracle = CayleyOracle {
            prime: pres.prime(),
            elements,
            table,
            inverses,
        };
        oracle.check_invariants()?;
        Ok(oracle)
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.len();
        let bad = |what: &str| {
            Err(Error::InvalidElement(format!(
                "Cayley table invariant violated: {what}"
            )))
        };
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let c = self.table[a * n + b] as usize;
                if seen[c] {
                    return bad("row is not a permutation");
                }
                seen[c] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let c = self.table[b * n + a] as usize;
                if seen[c] {
                    return bad("column is not a permutation");
                }
                seen[c] = true;
            }
            if self.table[a] as usize != a || self.table[a * n] as usize != a {
                return bad("identity row or column");
            }
            let inv = self.inverses[a];
            if inv == u32::MAX || self.table[inv as usize * n + a] != 0 {
                return bad("missing two-sided inverse");
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, idx: u32) -> &Element {
        &self.elements[idx as usize]
    }

    /// Index of an element; matches [`PcPresentation::index_of`].
    pub fn index(&self, e: &Element) -> u32 {
        let p = self.prime as usize;
        e.exponents()
            .iter()
            .fold(0usize, |acc, &x| acc * p + x as usize) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.len() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn pow(&self, a: u32, m: u64) -> u32 {
        let mut r = 0;
        for _ in 0..m {
            r = self.mul(r, a);
        }
        r
    }

    pub fn comm(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn conj(&self, a: u32, g: u32) -> u32 {
        self.mul(self.inv(g), self.mul(a, g))
    }

    /// Smallest `m >= 1` with `a^m = 1`.
    pub fn order(&self, a: u32) -> u64 {
        let mut m = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            m += 1;
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian_set(&self.whole())
    }

    pub fn is_abelian_set(&self, h: &[u32]) -> bool {
        h.iter()
            .all(|&a| h.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> ElementSet {
        (0..self.len() as u32).collect()
    }

    pub fn trivial(&self) -> ElementSet {
        vec![0]
    }

    /// `<gens>`: the identity closed under right multiplication by the
    /// generators that are not already reached by earlier ones.
    pub fn closure(&self, gens: &[u32]) -> ElementSet {
        let mut member = vec![false; self.len()];
        member[0] = true;
        let mut list = vec![0u32];
        let mut used: Vec<u32> = Vec::new();
        for &g in gens {
            if member[g as usize] {
                continue;
            }
            used.push(g);
            let mut i = 0;
            // Elements already in `list` need only the new generator; the
            // ones found from here on need every generator used so far.
            let old = list.len();
            while i < list.len() {
                let x = list[i];
                let gs: &[u32] = if i < old {
                    std::slice::from_ref(&g)
                } else {
                    &used
                };
                for &s in gs {
                    let y = self.mul(x, s);
                    if !member[y as usize] {
                        member[y as usize] = true;
                        list.push(y);
                    }
                }
                i += 1;
            }
        }
        list.sort_unstable();
        list
    }

    pub fn is_subgroup(&self, set: &[u32]) -> bool {
        let member = self.membership(set);
        set.contains(&0)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| member[self.mul(a, b) as usize]))
    }

    fn membership(&self, set: &[u32]) -> Vec<bool> {
        let mut m = vec![false; self.len()];
        for &x in set {
            m[x as usize] = true;
        }
        m
    }

    pub fn contains_all(&self, outer: &[u32], inner: &[u32]) -> bool {
        let m = self.membership(outer);
        inner.iter().all(|&x| m[x as usize])
    }

    pub fn intersection(&self, a: &[u32], b: &[u32]) -> ElementSet {
        let m = self.membership(b);
        a.iter().copied().filter(|&x| m[x as usize]).collect()
    }

    pub fn join(&self, a: &[u32], b: &[u32]) -> ElementSet {
        let mut gens = a.to_vec();
        gens.extend_from_slice(b);
        self.closure(&gens)
    }

    /// `[H, K]`, generated by all commutators of elements.
    pub fn commutator_subgroup(&self, h: &[u32], k: &[u32]) -> ElementSet {
        let comms: Vec<u32> = h
            .iter()
            .flat_map(|&x| k.iter().map(move |&y| self.comm(x, y)))
            .collect();
        self.closure(&comms)
    }

    /// `H^{p^k}`, generated by the `p^k`-th powers of all elements.
    pub fn power_subgroup(&self, h: &[u32], k: u32) -> ElementSet {
        let e = (self.prime as u64).pow(k);
        let powers: BTreeSet<u32> = h.iter().map(|&x| self.pow(x, e)).collect();
        self.closure(&powers.into_iter().collect::<Vec<_>>())
    }

    /// The set `{x^{p^k} : x in H}` itself, not the subgroup it generates.
    pub fn power_set(&self, h: &[u32], k: u32) -> ElementSet {
        let e = (self.prime as u64).pow(k);
        let powers: BTreeSet<u32> = h.iter().map(|&x| self.pow(x, e)).collect();
        powers.into_iter().collect()
    }

    pub fn center(&self, h: &[u32]) -> ElementSet {
        h.iter()
            .copied()
            .filter(|&x| h.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
            .collect()
    }

    pub fn is_normal(&self, h: &[u32], ambient: &[u32]) -> bool {
        let m = self.membership(h);
        h.iter()
            .all(|&x| ambient.iter().all(|&g| m[self.conj(x, g) as usize]))
    }

    pub fn normal_closure(&self, gens: &[u32], ambient: &[u32]) -> ElementSet {
        let mut conjugates = BTreeSet::new();
        for &x in gens {
            for &g in ambient {
                conjugates.insert(self.conj(x, g));
            }
        }
        self.closure(&conjugates.into_iter().collect::<Vec<_>>())
    }

    pub fn exponent(&self, h: &[u32]) -> u64 {
        h.iter().map(|&x| self.order(x)).max().unwrap_or(1)
    }

    /// Every subgroup of `h`, found by joining cyclic subgroups until no new
    /// subgroup appears. Sorted by (order, elements).
    pub fn all_subgroups(&self, h: &[u32]) -> Vec<ElementSet> {
        let cyclic: BTreeSet<ElementSet> = h.iter().map(|&x| self.closure(&[x])).collect();
        let mut known: BTreeSet<ElementSet> = cyclic.clone();
        let mut frontier: Vec<ElementSet> = cyclic.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclic {
                    if self.contains_all(s, c) {
                        continue;
                    }
                    let j = self.join(s, c);
                    if known.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<ElementSet> = known.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// `[N, G] <= N^p` (`N^4` when `p = 2`), over the full Cayley table.
    pub fn is_powerfully_embedded(&self, n: &[u32], g: &[u32]) -> bool {
        let k = if self.prime == 2 { 2 } else { 1 };
        let lhs = self.commutator_subgroup(n, g);
        let rhs = self.power_subgroup(n, k);
        self.contains_all(&rhs, &lhs)
    }

    pub fn is_powerful(&self, g: &[u32]) -> bool {
        self.is_powerfully_embedded(g, g)
    }

    /// Upper powerfully central series of `g`, each term given by the full
    /// quantifier `{a : [a, x] in Z_{n-1}^p for all x in g}`.
    pub fn upper_powerfully_central_series(&self, g: &[u32]) -> Vec<ElementSet> {
        let mut terms = vec![self.trivial()];
        loop {
            let prev = terms.last().unwrap();
            let pw = self.membership(&self.power_subgroup(prev, 1));
            let next: ElementSet = g
                .iter()
                .copied()
                .filter(|&a| g.iter().all(|&x| pw[self.comm(a, x) as usize]))
                .collect();
            if &next == prev {
                return terms;
            }
            terms.push(next);
        }
    }

    /// Decides powerful nilpotence by searching all ascending chains of
    /// subgroups from `{1}` to `g`: a subgroup `K` is reachable when some
    /// reachable `H <= K` has `[K, g] <= H^p`.
    pub fn powerfully_nilpotent_by_chain_search(&self, g: &[u32]) -> bool {
        if !self.is_powerful(g) {
            return false;
        }
        let subs = self.all_subgroups(g);
        let commutators: Vec<ElementSet> = subs
            .iter()
            .map(|k| self.commutator_subgroup(k, g))
            .collect();
        let powers: Vec<ElementSet> = subs.iter().map(|h| self.power_subgroup(h, 1)).collect();
        let mut reachable = vec![false; subs.len()];
        reachable[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for k in 0..subs.len() {
                if reachable[k] {
                    continue;
                }
                let ok = (0..subs.len()).any(|h| {
                    reachable[h]
                        && self.contains_all(&subs[k], &subs[h])
                        && self.contains_all(&powers[h], &commutators[k])
                });
                if ok {
                    reachable[k] = true;
                    changed = true;
                }
            }
        }
        reachable[subs.len() - 1]
    }
}
