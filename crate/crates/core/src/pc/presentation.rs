use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::pc::element::Element;

/// A generator power `g^e` inside a stored relation word.
pub(crate) type Letter = (usize, u32);

/// A consistent power-commutator presentation of a group of order `p^n`.
///
/// Generators are indexed from `0` internally (the text format is 1-based).
/// Relations are `g_i^p = power_tail(i)` and `g_j^{g_i} = g_j * conj_tail(i, j)`
/// for `i < j`, where each tail only involves generators beyond the left-hand
/// side.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PcPresentation {
    prime: u32,
    ngens: usize,
    power_tails: Vec<Element>,
    // Row-major `ngens x ngens`; only entries with i < j are meaningful.
    conj_tails: Vec<Element>,
    power_letters: Vec<Vec<Letter>>,
    conj_letters: Vec<Vec<Letter>>,
}

impl std::fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PcPresentation")
            .field("prime", &self.prime)
            .field("ngens", &self.ngens)
            .field("text", &self.to_text())
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn letters_of(e: &Element) -> Vec<Letter> {
    e.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x))
        .collect()
}

/// Collects relations before validation. Unset relations are trivial.
#[derive(Debug, Clone)]
pub struct PresentationBuilder {
    prime: u32,
    ngens: usize,
    powers: BTreeMap<usize, Vec<u32>>,
    conjs: BTreeMap<(usize, usize), Vec<u32>>,
}

impl PresentationBuilder {
    pub fn new(prime: u32, ngens: usize) -> Self {
        PresentationBuilder {
            prime,
            ngens,
            powers: BTreeMap::new(),
            conjs: BTreeMap::new(),
        }
    }

    /// Sets `g_i^p = tail`.
    pub fn power(mut self, i: usize, tail: &[u32]) -> Self {
        self.powers.insert(i, tail.to_vec());
        self
    }

    /// Sets `g_j^{g_i} = g_j * tail` (requires `i < j`).
    pub fn conj(mut self, j: usize, i: usize, tail: &[u32]) -> Self {
        self.conjs.insert((i, j), tail.to_vec());
        self
    }

    pub fn build(self) -> Result<PcPresentation> {
        PcPresentation::from_parts(self.prime, self.ngens, self.powers, self.conjs)
    }
}

impl PcPresentation {
    pub fn builder(prime: u32, ngens: usize) -> PresentationBuilder {
        PresentationBuilder::new(prime, ngens)
    }

    fn from_parts(
        prime: u32,
        ngens: usize,
        powers: BTreeMap<usize, Vec<u32>>,
        conjs: BTreeMap<(usize, usize), Vec<u32>>,
    ) -> Result<Self> {
        if !is_prime(prime as u64) {
            return Err(Error::NotPrime(prime as u64));
        }
        let check_word = |what: String, tail: &[u32], min_index: usize| -> Result<Element> {
            if tail.len() != ngens {
                return Err(Error::InvalidElement(format!(
                    "{what}: tail has length {}, expected {ngens}",
                    tail.len()
                )));
            }
            if let Some(&e) = tail.iter().find(|&&e| e >= prime) {
                return Err(Error::InvalidElement(format!(
                    "{what}: exponent {e} not below p = {prime}"
                )));
            }
            if let Some(pos) = tail[..min_index.min(ngens)].iter().position(|&e| e != 0) {
                return Err(Error::Triangularity(format!(
                    "{what} involves g{} but may only involve generators after g{}",
                    pos + 1,
                    min_index
                )));
            }
            Ok(Element::from_exponents(tail))
        };

        let mut power_tails = vec![Element::identity(ngens); ngens];
        for (&i, tail) in &powers {
            if i >= ngens {
                return Err(Error::InvalidElement(format!(
                    "power relation for g{} out of range",
                    i + 1
                )));
            }
            power_tails[i] = check_word(format!("power relation of g{}", i + 1), tail, i + 1)?;
        }
        let mut conj_tails = vec![Element::identity(ngens); ngens * ngens];
        for (&(i, j), tail) in &conjs {
            if i >= j || j >= ngens {
                return Err(Error::Triangularity(format!(
                    "conjugate relation g{}^g{} needs the conjugating index below the conjugated one",
                    j + 1,
                    i + 1
                )));
            }
            conj_tails[i * ngens + j] = check_word(
                format!("conjugate relation g{}^g{}", j + 1, i + 1),
                tail,
                j + 1,
            )?;
        }
        let power_letters = power_tails.iter().map(letters_of).collect();
        let conj_letters = conj_tails.iter().map(letters_of).collect();
        let pres = PcPresentation {
            prime,
            ngens,
            power_tails,
            conj_tails,
            power_letters,
            conj_letters,
        };
        pres.check_consistency()?;
        Ok(pres)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// `p^n`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        (self.prime as u128)
            .checked_pow(self.ngens as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn power_tail(&self, i: usize) -> &Element {
        &self.power_tails[i]
    }

    /// Tail of `g_j^{g_i}` for `i < j`.
    pub fn conj_tail(&self, i: usize, j: usize) -> &Element {
        assert!(i < j && j < self.ngens, "conj_tail needs i < j < ngens");
        &self.conj_tails[i * self.ngens + j]
    }

    pub(crate) fn power_letters(&self, i: usize) -> &[Letter] {
        &self.power_letters[i]
    }

    pub(crate) fn conj_letters(&self, i: usize, j: usize) -> &[Letter] {
        &self.conj_letters[i * self.ngens + j]
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.ngens)
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.identity();
        e.exponents_mut()[i] = 1;
        e
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.ngens).map(|i| self.generator(i)).collect()
    }

    /// Validated element construction.
    pub fn element(&self, exps: &[u32]) -> Result<Element> {
        if exps.len() != self.ngens {
            return Err(Error::InvalidElement(format!(
                "expected {} exponents, got {}",
                self.ngens,
                exps.len()
            )));
        }
        if let Some(&e) = exps.iter().find(|&&e| e >= self.prime) {
            return Err(Error::InvalidElement(format!(
                "exponent {e} not below p = {}",
                self.prime
            )));
        }
        Ok(Element::from_exponents(exps))
    }

    pub fn is_abelian(&self) -> bool {
        self.conj_tails.iter().all(Element::is_identity)
    }

    /// Position of `a` in the lexicographic enumeration of normal forms.
    pub fn index_of(&self, a: &Element) -> usize {
        a.exponents()
            .iter()
            .fold(0usize, |acc, &e| acc * self.prime as usize + e as usize)
    }

    pub fn element_at(&self, mut index: usize) -> Element {
        let p = self.prime as usize;
        let mut e = self.identity();
        for slot in e.exponents_mut().iter_mut().rev() {
            *slot = (index % p) as u32;
            index /= p;
        }
        e
    }

    /// Every element in lexicographic normal-form order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let count = self.order();
        let count = usize::try_from(count).unwrap_or(usize::MAX);
        (0..count).map(move |i| self.element_at(i))
    }

    /// Renders the presentation in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("pgroup p={} n={}\n", self.prime, self.ngens);
        let word = |e: &Element| -> String {
            letters_of(e)
                .iter()
                .map(|&(g, x)| {
                    if x == 1 {
                        format!("g{}", g + 1)
                    } else {
                        format!("g{}^{}", g + 1, x)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        for (i, tail) in self.power_tails.iter().enumerate() {
            if !tail.is_identity() {
                out.push_str(&format!("pow g{} = {}\n", i + 1, word(tail)));
            }
        }
        for i in 0..self.ngens {
            for j in i + 1..self.ngens {
                let tail = self.conj_tail(i, j);
                if !tail.is_identity() {
                    out.push_str(&format!(
                        "conj g{}^g{} = g{} {}\n",
                        j + 1,
                        i + 1,
                        j + 1,
                        word(tail)
                    ));
                }
            }
        }
        out
    }
}
