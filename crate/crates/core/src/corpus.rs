//! Parameterized group families and the default regression corpus.
//!
//! Each family has a concrete model (integer tuples with an explicit
//! multiplication). Presentations are derived from the model by choosing a
//! pc sequence in it and reading off every relation, and the model doubles as
//! a collection-free oracle for the presentation's arithmetic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::pc::{is_prime, Element, PcPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `C_{p^{l_1}} x ... x C_{p^{l_r}}`.
    Abelian {
        p: u32,
        partition: Vec<u32>,
    },
    /// Upper unitriangular 3x3 matrices over `Z/p^k`.
    Heisenberg {
        p: u32,
        k: u32,
    },
    /// `<a, b | a^{p^2}, b^p, a^b = a^{1+p}>`, order `p^3`.
    Modular {
        p: u32,
    },
    /// `<a> x| <b>` with `|a| = p^a_log`, `|b| = p^b_log`, `a^b = a^{1+p^e}`.
    SplitMetacyclic {
        p: u32,
        a_log: u32,
        b_log: u32,
        e: u32,
    },
    DirectProduct(Box<FamilySpec>, Box<FamilySpec>),
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    acc
}

impl FamilySpec {
    pub fn abelian(p: u32, partition: &[u32]) -> Self {
        FamilySpec::Abelian {
            p,
            partition: partition.to_vec(),
        }
    }

    pub fn heisenberg(p: u32, k: u32) -> Self {
        FamilySpec::Heisenberg { p, k }
    }

    pub fn modular(p: u32) -> Self {
        FamilySpec::Modular { p }
    }

    pub fn split(p: u32, a_log: u32, b_log: u32, e: u32) -> Self {
        FamilySpec::SplitMetacyclic { p, a_log, b_log, e }
    }

    pub fn product(a: FamilySpec, b: FamilySpec) -> Self {
        FamilySpec::DirectProduct(Box::new(a), Box::new(b))
    }

    pub fn prime(&self) -> u32 {
        match self {
            FamilySpec::Abelian { p, .. }
            | FamilySpec::Heisenberg { p, .. }
            | FamilySpec::Modular { p }
            | FamilySpec::SplitMetacyclic { p, .. } => *p,
            FamilySpec::DirectProduct(a, _) => a.prime(),
        }
    }

    /// `log_p` of the group order, from the family's order formula.
    pub fn log_order(&self) -> u32 {
        match self {
            FamilySpec::Abelian { partition, .. } => partition.iter().sum(),
            FamilySpec::Heisenberg { k, .. } => 3 * k,
            FamilySpec::Modular { .. } => 3,
            FamilySpec::SplitMetacyclic { a_log, b_log, .. } => a_log + b_log,
            FamilySpec::DirectProduct(a, b) => a.log_order() + b.log_order(),
        }
    }

    pub fn is_abelian_family(&self) -> bool {
        match self {
            FamilySpec::Abelian { .. } => true,
            FamilySpec::DirectProduct(a, b) => a.is_abelian_family() && b.is_abelian_family(),
            _ => false,
        }
    }

    pub fn group_id(&self) -> String {
        self.to_string()
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.prime();
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let bad = |m: String| Err(Error::InvalidFamily(m));
        match self {
            FamilySpec::Abelian { partition, .. } => {
                if partition.is_empty() {
                    return bad("empty partition".into());
                }
                if partition.contains(&0) {
                    return bad("partition parts must be positive".into());
                }
            }
            FamilySpec::Heisenberg { k, .. } => {
                if *k == 0 {
                    return bad("heisenberg needs k >= 1".into());
                }
            }
            FamilySpec::Modular { .. } => {}
            FamilySpec::SplitMetacyclic {
                a_log, b_log, e, ..
            } => {
                if *b_log == 0 || *e == 0 || e >= a_log {
                    return bad(format!(
                        "split metacyclic needs b_log >= 1 and 1 <= e < a_log, got {self}"
                    ));
                }
                let modulus = (p as u64).pow(*a_log);
                let r = 1 + (p as u64).pow(*e);
                if pow_mod(r, (p as u64).pow(*b_log), modulus) != 1 {
                    return bad(format!("{self}: 1+p^e has order above |b| modulo |a|"));
                }
            }
            FamilySpec::DirectProduct(a, b) => {
                if a.prime() != b.prime() {
                    return bad("direct product factors need the same prime".into());
                }
                a.validate()?;
                b.validate()?;
            }
        }
        Ok(())
    }

    /// The concrete model the presentation is read from.
    pub fn model(&self) -> Model {
        let p = self.prime() as u64;
        match self {
            FamilySpec::Abelian { partition, .. } => Model::Abelian {
                moduli: partition.iter().map(|&l| p.pow(l)).collect(),
                p,
            },
            FamilySpec::Heisenberg { k, .. } => Model::Heisenberg {
                modulus: p.pow(*k),
                p,
            },
            FamilySpec::Modular { .. } => FamilySpec::split(p as u32, 2, 1, 1).model(),
            FamilySpec::SplitMetacyclic {
                a_log, b_log, e, ..
            } => Model::Split {
                a_mod: p.pow(*a_log),
                b_mod: p.pow(*b_log),
                r: 1 + p.pow(*e),
                p,
            },
            FamilySpec::DirectProduct(a, b) => {
                Model::Product(Box::new(a.model()), Box::new(b.model()))
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Abelian { p, partition } => {
                let parts: Vec<String> = partition.iter().map(u32::to_string).collect();
                write!(f, "abelian({p},[{}])", parts.join(","))
            }
            FamilySpec::Heisenberg { p, k } => write!(f, "heis({p},{k})"),
            FamilySpec::Modular { p } => write!(f, "modular({p})"),
            FamilySpec::SplitMetacyclic { p, a_log, b_log, e } => {
                let p = *p as u64;
                write!(f, "split({},{},e={e})", p.pow(*a_log), p.pow(*b_log))
            }
            FamilySpec::DirectProduct(a, b) => write!(f, "dp({a},{b})"),
        }
    }
}

/// A group of integer tuples with explicit multiplication.
#[derive(Debug, Clone)]
pub enum Model {
    Abelian {
        moduli: Vec<u64>,
        p: u64,
    },
    /// `(a, b, c) (a', b', c') = (a + a', b + b', c + c' + b a')`.
    Heisenberg {
        modulus: u64,
        p: u64,
    },
    /// `(j, i)` is `b^j a^i`; `(j, i) (j', i') = (j + j', i r^{j'} + i')`.
    Split {
        a_mod: u64,
        b_mod: u64,
        r: u64,
        p: u64,
    },
    Product(Box<Model>, Box<Model>),
}

impl Model {
    pub fn width(&self) -> usize {
        match self {
            Model::Abelian { moduli, .. } => moduli.len(),
            Model::Heisenberg { .. } => 3,
            Model::Split { .. } => 2,
            Model::Product(a, b) => a.width() + b.width(),
        }
    }

    pub fn identity(&self) -> Vec<u64> {
        vec![0; self.width()]
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        match self {
            Model::Abelian { moduli, .. } => moduli
                .iter()
                .zip(x.iter().zip(y))
                .map(|(&m, (&a, &b))| (a + b) % m)
                .collect(),
            Model::Heisenberg { modulus: m, .. } => vec![
                (x[0] + y[0]) % m,
                (x[1] + y[1]) % m,
                (x[2] + y[2] + x[1] * y[0]) % m,
            ],
            Model::Split {
                a_mod, b_mod, r, ..
            } => {
                let twist = pow_mod(*r, y[0], *a_mod);
                vec![(x[0] + y[0]) % b_mod, (x[1] * twist + y[1]) % a_mod]
            }
            Model::Product(a, b) => {
                let w = a.width();
                let mut out = a.mul(&x[..w], &y[..w]);
                out.extend(b.mul(&x[w..], &y[w..]));
                out
            }
        }
    }

    pub fn pow(&self, x: &[u64], mut m: u64) -> Vec<u64> {
        let mut acc = self.identity();
        let mut base = x.to_vec();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            m >>= 1;
        }
        acc
    }

    /// The chosen pc sequence: successive `p`-power layers of each factor.
    pub fn pc_sequence(&self) -> Vec<Vec<u64>> {
        let unit = |width: usize, pos: usize, value: u64| {
            let mut v = vec![0; width];
            v[pos] = value;
            v
        };
        let layers = |p: u64, modulus: u64| {
            let mut out = Vec::new();
            let mut q = 1;
            while q < modulus {
                out.push(q);
                q *= p;
            }
            out
        };
        match self {
            Model::Abelian { moduli, p } => moduli
                .iter()
                .enumerate()
                .flat_map(|(i, &m)| layers(*p, m).into_iter().map(move |q| (i, q)))
                .map(|(i, q)| unit(moduli.len(), i, q))
                .collect(),
            Model::Heisenberg { modulus, p } => layers(*p, *modulus)
                .into_iter()
                .flat_map(|q| (0..3).map(move |pos| unit(3, pos, q)))
                .collect(),
            Model::Split {
                a_mod, b_mod, p, ..
            } => {
                let mut seq: Vec<Vec<u64>> =
                    layers(*p, *b_mod).into_iter().map(|q| vec![q, 0]).collect();
                seq.extend(layers(*p, *a_mod).into_iter().map(|q| vec![0, q]));
                seq
            }
            Model::Product(a, b) => {
                let (wa, wb) = (a.width(), b.width());
                let mut seq: Vec<Vec<u64>> = a
                    .pc_sequence()
                    .into_iter()
                    .map(|mut v| {
                        v.extend(std::iter::repeat_n(0, wb));
                        v
                    })
                    .collect();
                seq.extend(b.pc_sequence().into_iter().map(|v| {
                    let mut w = vec![0; wa];
                    w.extend(v);
                    w
                }));
                seq
            }
        }
    }

    /// The model element `s_1^{e_1} ... s_n^{e_n}` for the pc sequence `s`.
    pub fn evaluate(&self, seq: &[Vec<u64>], e: &Element) -> Vec<u64> {
        e.exponents()
            .iter()
            .zip(seq)
            .fold(self.identity(), |acc, (&x, s)| {
                self.mul(&acc, &self.pow(s, x as u64))
            })
    }
}

/// Reads a presentation off a concrete model and its pc sequence.
fn presentation_from_model(p: u32, model: &Model) -> Result<PcPresentation> {
    let seq = model.pc_sequence();
    let n = seq.len();
    let order = (p as usize).pow(n as u32);
    let mut normal_form: HashMap<Vec<u64>, Vec<u32>> = HashMap::with_capacity(order);
    let mut exps = vec![0u32; n];
    for _ in 0..order {
        let value = model.evaluate(&seq, &Element::from_exponents(&exps));
        if normal_form.insert(value, exps.clone()).is_some() {
            return Err(Error::InvalidFamily(
                "pc sequence does not give distinct normal forms".into(),
            ));
        }
        for slot in exps.iter_mut().rev() {
            *slot += 1;
            if *slot < p {
                break;
            }
            *slot = 0;
        }
    }
    let lookup = |v: &[u64]| -> Result<&Vec<u32>> {
        normal_form
            .get(v)
            .ok_or_else(|| Error::InvalidFamily("pc sequence does not span the model".into()))
    };
    let group_exponent = (p as u64).pow(n as u32);
    let inverse = |x: &[u64]| model.pow(x, group_exponent - 1);
    let mut builder = PcPresentation::builder(p, n);
    for i in 0..n {
        builder = builder.power(i, lookup(&model.pow(&seq[i], p as u64))?);
        for j in i + 1..n {
            let conj = model.mul(&inverse(&seq[i]), &model.mul(&seq[j], &seq[i]));
            let tail = model.mul(&inverse(&seq[j]), &conj);
            builder = builder.conj(j, i, lookup(&tail)?);
        }
    }
    builder.build()
}

pub fn build_family(spec: &FamilySpec) -> Result<PcPresentation> {
    spec.validate()?;
    let pres = presentation_from_model(spec.prime(), &spec.model())?;
    if pres.ngens() as u32 != spec.log_order() {
        return Err(Error::InvariantViolation(format!(
            "{spec}: built order p^{} differs from p^{}",
            pres.ngens(),
            spec.log_order()
        )));
    }
    Ok(pres)
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub spec: FamilySpec,
    pub id: String,
    pub presentation: PcPresentation,
}

/// Largest `log_p |G|` admitted into the corpus, per prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusCaps {
    pub log_order: BTreeMap<u32, u32>,
    pub fallback_log_order: u32,
}

impl Default for CorpusCaps {
    fn default() -> Self {
        CorpusCaps {
            log_order: BTreeMap::from([(2, 9), (3, 7), (5, 5)]),
            fallback_log_order: 4,
        }
    }
}

impl CorpusCaps {
    pub fn for_prime(&self, p: u32) -> u32 {
        self.log_order
            .get(&p)
            .copied()
            .unwrap_or(self.fallback_log_order)
    }

    /// Lowers every cap so that no group exceeds `max_order` elements.
    pub fn with_max_order(mut self, max_order: u128) -> Self {
        let limit = |p: u32| {
            let mut k = 0u32;
            while (p as u128).pow(k + 1) <= max_order {
                k += 1;
            }
            k
        };
        for (p, cap) in self.log_order.iter_mut() {
            *cap = (*cap).min(limit(*p));
        }
        self.fallback_log_order = self.fallback_log_order.min(limit(2));
        self
    }
}

fn partitions(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max_part)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// The family members for one prime, before building.
pub fn corpus_specs(p: u32, max_log: u32) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in 1..=max_log {
        let mut parts = Vec::new();
        partitions(n, n, &mut Vec::new(), &mut parts);
        specs.extend(parts.into_iter().map(|pt| FamilySpec::abelian(p, &pt)));
    }
    for k in [1, 2] {
        if 3 * k <= max_log {
            specs.push(FamilySpec::heisenberg(p, k));
        }
    }
    if max_log >= 3 {
        specs.push(FamilySpec::modular(p));
    }
    let mut small_nonabelian: Vec<FamilySpec> = specs
        .iter()
        .filter(|s| !s.is_abelian_family() && s.log_order() == 3)
        .filter(|s| !matches!(s, FamilySpec::Heisenberg { k: 2, .. }))
        .cloned()
        .collect();
    for a_log in 2..max_log {
        for b_log in 1..=max_log - a_log {
            for e in 1..a_log {
                if (a_log, b_log, e) == (2, 1, 1) {
                    // the modular group, already listed
                    continue;
                }
                let s = FamilySpec::split(p, a_log, b_log, e);
                if s.validate().is_ok() {
                    if s.log_order() <= 4 {
                        small_nonabelian.push(s.clone());
                    }
                    specs.push(s);
                }
            }
        }
    }
    let mut factors = small_nonabelian.clone();
    factors.push(FamilySpec::abelian(p, &[1]));
    factors.push(FamilySpec::abelian(p, &[2]));
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            if a.is_abelian_family() && b.is_abelian_family() {
                continue;
            }
            if a.log_order() + b.log_order() <= max_log {
                specs.push(FamilySpec::product(a.clone(), b.clone()));
            }
        }
    }
    specs
}

/// The regression corpus, in order of `p_list`, then family.
pub fn default_corpus(p_list: &[u32], caps: &CorpusCaps) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for &p in p_list {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        for spec in corpus_specs(p, caps.for_prime(p)) {
            let presentation = build_family(&spec)?;
            out.push(CorpusEntry {
                id: spec.group_id(),
                spec,
                presentation,
            });
        }
    }
    Ok(out)
}
