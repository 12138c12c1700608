//! Subgroups as canonical induced generating sequences.

mod lattice;
mod quotient;

pub use lattice::DEFAULT_LATTICE_LOG_ORDER;
pub use quotient::QuotientResult;

use std::hash::{Hash, Hasher};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::config::ensure_enumerable;
use crate::error::Result;
use crate::pc::{Element, PcPresentation};

/// A subgroup of a pc-presented group.
///
/// The generating sequence is kept in canonical form: one entry per leading
/// index (depth), increasing; every entry has leading exponent 1 and a zero
/// exponent at the depth of every other entry. Two subgroups are equal iff
/// their sequences are.
#[derive(Clone)]
pub struct Subgroup<'p> {
    pres: &'p PcPresentation,
    igs: Vec<Element>,
    // slot[d] = position in `igs` of the entry with depth d.
    slot: Vec<Option<u32>>,
    // powers[i][c] = igs[i]^c for c in 0..p.
    powers: Vec<Vec<Element>>,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.igs == other.igs
    }
}

impl Eq for Subgroup<'_> {}

impl Hash for Subgroup<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.igs.hash(state);
    }
}

impl std::fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.igs.iter()).finish()
    }
}

impl Serialize for Subgroup<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.igs.len()))?;
        for e in &self.igs {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}

fn powers_of(pres: &PcPresentation, t: &Element) -> Vec<Element> {
    let p = pres.prime() as usize;
    let mut out = Vec::with_capacity(p);
    out.push(pres.identity());
    for c in 1..p {
        let next = pres.multiply(&out[c - 1], t);
        out.push(next);
    }
    out
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^{p-2} is the inverse of a.
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Depth-indexed table used while closing a generating set.
struct SiftTable<'p> {
    pres: &'p PcPresentation,
    entries: Vec<Option<(Element, Vec<Element>)>>,
}

impl<'p> SiftTable<'p> {
    fn new(pres: &'p PcPresentation) -> Self {
        SiftTable {
            pres,
            entries: vec![None; pres.ngens()],
        }
    }

    fn sift(&self, mut x: Element) -> Element {
        let p = self.pres.prime();
        while let Some(d) = x.depth() {
            match &self.entries[d] {
                Some((_, pw)) => {
                    let c = p - x.exponents()[d];
                    x = self.pres.multiply(&x, &pw[c as usize]);
                }
                None => break,
            }
        }
        x
    }

    fn close(&mut self, gens: impl IntoIterator<Item = Element>) {
        let p = self.pres.prime();
        let mut queue: Vec<Element> = gens.into_iter().collect();
        while let Some(x) = queue.pop() {
            let r = self.sift(x);
            let Some(d) = r.depth() else { continue };
            let r = self
                .pres
                .power_unsigned(&r, inverse_mod(r.leading_exponent(), p) as u64);
            queue.push(self.pres.power_unsigned(&r, p as u64));
            for (t, _) in self.entries.iter().flatten() {
                queue.push(self.pres.commutator(&r, t));
            }
            let pw = powers_of(self.pres, &r);
            self.entries[d] = Some((r, pw));
        }
    }

    fn into_subgroup(self) -> Subgroup<'p> {
        let p = self.pres.prime();
        let raw: Vec<(usize, Element)> = self
            .entries
            .iter()
            .enumerate()
            .filter_map(|(d, e)| e.as_ref().map(|(t, _)| (d, t.clone())))
            .collect();
        let depths: Vec<usize> = raw.iter().map(|(d, _)| *d).collect();
        let mut igs = Vec::with_capacity(raw.len());
        for (d, t) in &raw {
            let mut x = t.clone();
            for &l in depths.iter().filter(|&&l| l > *d) {
                let e = x.exponents()[l];
                if e != 0 {
                    let pw = &self.entries[l].as_ref().unwrap().1;
                    x = self.pres.multiply(&x, &pw[(p - e) as usize]);
                }
            }
            igs.push(x);
        }
        Subgroup::from_canonical(self.pres, igs)
    }
}

impl<'p> Subgroup<'p> {
    fn from_canonical(pres: &'p PcPresentation, igs: Vec<Element>) -> Self {
        let mut slot = vec![None; pres.ngens()];
        for (i, t) in igs.iter().enumerate() {
            slot[t.depth().expect("igs entries are nontrivial")] = Some(i as u32);
        }
        let powers = igs.iter().map(|t| powers_of(pres, t)).collect();
        Subgroup {
            pres,
            igs,
            slot,
            powers,
        }
    }

    pub fn trivial(pres: &'p PcPresentation) -> Self {
        Subgroup::from_canonical(pres, Vec::new())
    }

    /// The whole group; its canonical sequence is the pc generators.
    pub fn full(pres: &'p PcPresentation) -> Self {
        Subgroup::from_canonical(pres, pres.generators())
    }

    /// `<gens>` in canonical form.
    pub fn generated<I>(pres: &'p PcPresentation, gens: I) -> Self
    where
        I: IntoIterator<Item = Element>,
    {
        let mut table = SiftTable::new(pres);
        table.close(gens);
        table.into_subgroup()
    }

    pub fn presentation(&self) -> &'p PcPresentation {
        self.pres
    }

    pub fn igs(&self) -> &[Element] {
        &self.igs
    }

    /// Leading indices of the generating sequence, increasing.
    pub fn depths(&self) -> Vec<usize> {
        self.igs.iter().map(|t| t.depth().unwrap()).collect()
    }

    /// `log_p |H|`.
    pub fn log_order(&self) -> usize {
        self.igs.len()
    }

    pub fn order(&self) -> u128 {
        (self.pres.prime() as u128)
            .checked_pow(self.igs.len() as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn is_trivial(&self) -> bool {
        self.igs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.igs.len() == self.pres.ngens()
    }

    /// Reduces `x` by the generating sequence. The residue is the identity
    /// exactly when `x` is a member.
    pub fn sift(&self, mut x: Element) -> Element {
        let p = self.pres.prime();
        while let Some(d) = x.depth() {
            match self.slot[d] {
                Some(i) => {
                    let c = p - x.exponents()[d];
                    x = self.pres.multiply(&x, &self.powers[i as usize][c as usize]);
                }
                None => break,
            }
        }
        x
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.sift(x.clone()).is_identity()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.igs.len() <= other.igs.len() && self.igs.iter().all(|t| other.contains(t))
    }

    pub fn join(&self, other: &Subgroup<'p>) -> Subgroup<'p> {
        if self.is_subgroup_of(other) {
            return other.clone();
        }
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        let mut table = self.to_table();
        table.close(other.igs.iter().cloned());
        table.into_subgroup()
    }

    /// `<H, x>`.
    pub fn extend(&self, x: &Element) -> Subgroup<'p> {
        if self.contains(x) {
            return self.clone();
        }
        let mut table = self.to_table();
        table.close([x.clone()]);
        table.into_subgroup()
    }

    fn to_table(&self) -> SiftTable<'p> {
        let mut table = SiftTable::new(self.pres);
        for (i, t) in self.igs.iter().enumerate() {
            table.entries[t.depth().unwrap()] = Some((t.clone(), self.powers[i].clone()));
        }
        table
    }

    /// Every element, as products `t_1^{e_1} ... t_r^{e_r}` over the sequence.
    pub fn elements(&self) -> Vec<Element> {
        let p = self.pres.prime() as usize;
        let mut out = vec![self.pres.identity()];
        // Build right to left so each step multiplies by a precomputed power.
        for pw in self.powers.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * p);
            for c in pw.iter() {
                for x in &out {
                    next.push(self.pres.multiply(c, x));
                }
            }
            out = next;
        }
        out
    }

    /// [`elements`](Self::elements) behind the enumeration cap.
    pub fn try_elements(&self) -> Result<Vec<Element>> {
        ensure_enumerable(self.order())?;
        Ok(self.elements())
    }

    /// Exact intersection by filtering the smaller operand's elements.
    pub fn intersection(&self, other: &Subgroup<'p>) -> Result<Subgroup<'p>> {
        let (small, big) = if self.igs.len() <= other.igs.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.is_subgroup_of(big) {
            return Ok(small.clone());
        }
        let members = small
            .try_elements()?
            .into_iter()
            .filter(|x| big.contains(x));
        Ok(Subgroup::generated(self.pres, members))
    }

    /// Whether every conjugate of a generator of `self` by a generator of
    /// `ambient` lies in `self`.
    pub fn is_normal_in(&self, ambient: &Subgroup<'_>) -> bool {
        self.igs.iter().all(|s| {
            ambient
                .igs
                .iter()
                .all(|g| self.contains(&self.pres.conjugate(s, g)))
        })
    }

    /// Smallest subgroup normal in `ambient` containing `gens`.
    pub fn normal_closure<I>(
        pres: &'p PcPresentation,
        gens: I,
        ambient: &Subgroup<'p>,
    ) -> Subgroup<'p>
    where
        I: IntoIterator<Item = Element>,
    {
        let mut table = SiftTable::new(pres);
        table.close(gens);
        let mut current = table.into_subgroup();
        loop {
            let missing: Vec<Element> = current
                .igs
                .iter()
                .flat_map(|s| ambient.igs.iter().map(move |g| (s, g)))
                .map(|(s, g)| pres.conjugate(s, g))
                .filter(|c| !current.contains(c))
                .collect();
            if missing.is_empty() {
                return current;
            }
            let mut table = current.to_table();
            table.close(missing);
            current = table.into_subgroup();
        }
    }

    /// `[H, K]`: the normal closure in `<H, K>` of the generator commutators.
    pub fn commutator_with(&self, other: &Subgroup<'p>) -> Subgroup<'p> {
        let comms: Vec<Element> = self
            .igs
            .iter()
            .flat_map(|x| other.igs.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.pres.commutator(x, y))
            .filter(|c| !c.is_identity())
            .collect();
        if comms.is_empty() {
            return Subgroup::trivial(self.pres);
        }
        let ambient = self.join(other);
        Subgroup::normal_closure(self.pres, comms, &ambient)
    }

    /// `H^{p^k} = <x^{p^k} : x in H>`, from every element of `H`.
    pub fn power_subgroup(&self, k: u32) -> Result<Subgroup<'p>> {
        if k == 0 {
            return Ok(self.clone());
        }
        let elements = self.try_elements()?;
        let mut table = SiftTable::new(self.pres);
        for x in elements {
            let y = self.pres.power_p(&x, k);
            if !y.is_identity() {
                table.close([y]);
            }
        }
        Ok(table.into_subgroup())
    }

    /// `Z(H)`: the elements commuting with every generator of `H`.
    pub fn center(&self) -> Result<Subgroup<'p>> {
        let elements = self.try_elements()?;
        let central: Vec<Element> = elements
            .into_iter()
            .filter(|x| {
                self.igs
                    .iter()
                    .all(|g| self.pres.commutator(x, g).is_identity())
            })
            .collect();
        let count = central.len() as u128;
        let z = Subgroup::generated(self.pres, central);
        debug_assert_eq!(z.order(), count, "central elements do not form a subgroup");
        Ok(z)
    }

    /// `log_p` of the exponent.
    pub fn log_exponent(&self) -> Result<u32> {
        let elements = self.try_elements()?;
        Ok(elements
            .iter()
            .map(|x| self.pres.log_order(x))
            .max()
            .unwrap_or(0))
    }

    pub fn exponent(&self) -> Result<u128> {
        Ok((self.pres.prime() as u128).pow(self.log_exponent()?))
    }

    pub fn is_abelian(&self) -> bool {
        self.igs.iter().enumerate().all(|(i, x)| {
            self.igs[i + 1..]
                .iter()
                .all(|y| self.pres.commutator(x, y).is_identity())
        })
    }

    /// Exponent vectors of the generating sequence.
    pub fn igs_vectors(&self) -> Vec<Vec<u32>> {
        self.igs.iter().map(Element::to_vec).collect()
    }
}
