//! Exhaustive checkers for the structure theorems on concrete groups.
//!
//! Each checker enumerates every instance its claim quantifies over inside
//! one group, tests the hypotheses per instance, and reports the conclusion
//! with a witness on failure. Checks whose group-level precondition fails or
//! whose enumeration exceeds a cap report [`Verdict::Vacuous`] with a reason.

mod falsify;
mod report;

pub use falsify::{falsify, replay_witness, DroppedHypothesis, FalsifyWitness};
pub use report::{merge_reports, CheckReport, ClaimId, Tally, Verdict, Witness};

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::oracle::CayleyOracle;
use crate::pc::{Element, PcPresentation};
use crate::powerful::{self, embedding_power_exponent, is_powerfully_embedded};
use crate::subgroup::{Subgroup, DEFAULT_LATTICE_LOG_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    /// Subgroup lattices are enumerated only inside subgroups of at most
    /// `p^lattice_log_order` elements.
    pub lattice_log_order: u32,
    /// The commutator order bound is checked on groups of order at most
    /// `p^fa_max_log_order`.
    pub fa_max_log_order: u32,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            lattice_log_order: DEFAULT_LATTICE_LOG_ORDER,
            fa_max_log_order: 5,
        }
    }
}

impl HarnessConfig {
    fn lattice_cap(&self, p: u32) -> u128 {
        (p as u128).pow(self.lattice_log_order)
    }
}

/// One group under test, with the data every checker needs.
pub struct Harness<'p> {
    id: String,
    pres: &'p PcPresentation,
    g: Subgroup<'p>,
    cfg: HarnessConfig,
    powerful: bool,
    /// `log_p` of the exponent of `G`.
    log_exponent: u32,
    /// `tower[k] = G^{p^k}` for `k = 0..=log_exponent`.
    tower: Vec<Subgroup<'p>>,
}

fn describe(e: &Error) -> String {
    e.to_string()
}

impl<'p> Harness<'p> {
    pub fn new(id: &str, pres: &'p PcPresentation, cfg: HarnessConfig) -> Result<Self> {
        let g = Subgroup::full(pres);
        let log_exponent = g.log_exponent()?;
        let mut tower = vec![g.clone()];
        for k in 1..=log_exponent {
            tower.push(g.power_subgroup(k)?);
        }
        let powerful = powerful::is_powerful(&g)?;
        Ok(Harness {
            id: id.to_string(),
            pres,
            g,
            cfg,
            powerful,
            log_exponent,
            tower,
        })
    }

    pub fn group_id(&self) -> &str {
        &self.id
    }

    pub fn is_powerful(&self) -> bool {
        self.powerful
    }

    pub fn tower(&self) -> &[Subgroup<'p>] {
        &self.tower
    }

    fn prime(&self) -> u32 {
        self.pres.prime()
    }

    fn agemo(&self, k: u32) -> Subgroup<'p> {
        self.tower
            .get(k as usize)
            .cloned()
            .unwrap_or_else(|| Subgroup::trivial(self.pres))
    }

    fn tally(&self, claim: ClaimId) -> Tally {
        Tally::new(claim, &self.id)
    }

    /// A tally preloaded as vacuous when `G` is not powerful.
    fn powerful_tally(&self, claim: ClaimId) -> (Tally, bool) {
        let mut t = self.tally(claim);
        if !self.powerful {
            t.filtered(1);
            t.skip("group is not powerful");
        }
        (t, self.powerful)
    }

    fn run<F>(&self, claim: ClaimId, body: F) -> CheckReport
    where
        F: FnOnce(&mut Tally) -> Result<()>,
    {
        let mut t = self.tally(claim);
        if let Err(e) = body(&mut t) {
            t.skip(describe(&e));
        }
        t.finish()
    }

    fn run_powerful<F>(&self, claim: ClaimId, body: F) -> CheckReport
    where
        F: FnOnce(&mut Tally) -> Result<()>,
    {
        let (mut t, ok) = self.powerful_tally(claim);
        if ok {
            if let Err(e) = body(&mut t) {
                t.skip(describe(&e));
            }
        }
        t.finish()
    }

    /// `G^{p^k}` equals the set of `p^k`-th powers.
    pub fn check_thm1_powers(&self, k: u32) -> CheckReport {
        self.run_powerful(ClaimId::PowersAreAgemo, |t| {
            let sub = self.g.power_subgroup(k)?;
            let powers: HashSet<Element> = self
                .g
                .try_elements()?
                .iter()
                .map(|x| self.pres.power_p(x, k))
                .collect();
            let ok = powers.len() as u128 == sub.order() && powers.iter().all(|x| sub.contains(x));
            t.record(ok, || {
                let missing = sub.elements().into_iter().find(|x| !powers.contains(x));
                let mut w = Witness::new(format!("G^(p^{k}) is not the set of p^{k}-th powers"))
                    .subgroup("agemo", &sub);
                if let Some(m) = missing {
                    w = w.element("not_a_power", &m);
                }
                w
            });
            Ok(())
        })
    }

    /// `G^{p^k}` is powerfully embedded in `G`.
    pub fn check_thm1_embedded(&self, k: u32) -> CheckReport {
        self.run_powerful(ClaimId::AgemoPowerfullyEmbedded, |t| {
            let sub = self.g.power_subgroup(k)?;
            let ok = is_powerfully_embedded(&sub, &self.g)?;
            t.record(ok, || {
                Witness::new(format!("G^(p^{k}) is not powerfully embedded"))
                    .subgroup("agemo", &sub)
            });
            Ok(())
        })
    }

    /// `G^p = <a_1^p, ..., a_r^p>` for the pc generators and for a
    /// generating set of minimal size.
    pub fn check_thm1_generators(&self) -> CheckReport {
        self.run_powerful(ClaimId::GeneratorPowers, |t| {
            let target = self.agemo(1);
            let frattini = target.join(&self.g.commutator_with(&self.g));
            let fdepths = frattini.depths();
            let minimal: Vec<Element> = (0..self.pres.ngens())
                .filter(|d| !fdepths.contains(d))
                .map(|d| self.pres.generator(d))
                .collect();
            debug_assert_eq!(Subgroup::generated(self.pres, minimal.clone()), self.g);
            for (name, gens) in [
                ("pc generators", self.pres.generators()),
                ("minimal generators", minimal),
            ] {
                let generated =
                    Subgroup::generated(self.pres, gens.iter().map(|a| self.pres.power_p(a, 1)));
                t.record(generated == target, || {
                    Witness::new(format!("p-th powers of the {name} do not generate G^p"))
                        .subgroup("generated", &generated)
                        .subgroup("agemo", &target)
                });
            }
            Ok(())
        })
    }

    /// `[M^{p^i}, N^{p^j}] = [M, N]^{p^{i+j}}` for every pair `M, N` of
    /// powerfully embedded terms of the power tower, at fixed `i, j`.
    pub fn check_shalev(&self, i: u32, j: u32) -> CheckReport {
        let mut memo = ShalevMemo::default();
        self.run(ClaimId::ShalevCommutatorPowers, |t| {
            self.shalev_into(t, i, j, &mut memo)
        })
    }

    /// [`check_shalev`](Self::check_shalev) over all `i + j <= log_p exp(G)`.
    pub fn check_shalev_all(&self) -> CheckReport {
        let mut memo = ShalevMemo::default();
        self.run(ClaimId::ShalevCommutatorPowers, |t| {
            for s in 0..=self.log_exponent {
                for i in 0..=s {
                    self.shalev_into(t, i, s - i, &mut memo)?;
                }
            }
            Ok(())
        })
    }

    fn shalev_into(&self, t: &mut Tally, i: u32, j: u32, memo: &mut ShalevMemo<'p>) -> Result<()> {
        if i + j > self.log_exponent {
            t.filtered(1);
            t.skip("p^(i+j) exceeds the exponent of G");
            return Ok(());
        }
        let embedded: Vec<bool> = self
            .tower
            .iter()
            .map(|m| is_powerfully_embedded(m, &self.g))
            .collect::<Result<_>>()?;
        for (a, m) in self.tower.iter().enumerate() {
            for (b, n) in self.tower.iter().enumerate() {
                if !(embedded[a] && embedded[b]) {
                    t.filtered(1);
                    continue;
                }
                let mi = memo.power(a, i, m)?;
                let nj = memo.power(b, j, n)?;
                let lhs = mi.commutator_with(&nj);
                let mn = memo.commutator(a, b, m, n);
                let rhs = mn.power_subgroup(i + j)?;
                t.record(lhs == rhs, || {
                    Witness::new(format!("[M^(p^{i}), N^(p^{j})] != [M,N]^(p^{})", i + j))
                        .subgroup("M", m)
                        .subgroup("N", n)
                        .subgroup("lhs", &lhs)
                        .subgroup("rhs", &rhs)
                });
            }
        }
        Ok(())
    }

    /// `o([x^{p^j}, y^{p^k}]) <= p^{i-j-k}` whenever `o(x) <= p^{i+1}` and
    /// `o(y) <= p^i`; a negative bound means the commutator is trivial.
    pub fn check_fa_bound(&self) -> CheckReport {
        self.run_powerful(ClaimId::CommutatorOrderBound, |t| {
            if self.pres.ngens() as u32 > self.cfg.fa_max_log_order {
                t.filtered(1);
                t.skip(format!(
                    "order exceeds p^{} for the commutator order bound",
                    self.cfg.fa_max_log_order
                ));
                return Ok(());
            }
            self.fa_bound_into(t)
        })
    }

    fn fa_bound_into(&self, t: &mut Tally) -> Result<()> {
        let oracle = CayleyOracle::build(self.pres)?;
        let n = oracle.len() as u32;
        let p = self.prime();
        let e = self.log_exponent as usize;
        let log_order: Vec<usize> = (0..n).map(|x| ilog(oracle.order(x), p as u64)).collect();
        // powers[x][j] = x^{p^j} for j in 0..=e+1
        let powers: Vec<Vec<u32>> = (0..n)
            .map(|x| {
                let mut v = Vec::with_capacity(e + 2);
                let mut cur = x;
                for _ in 0..=e + 1 {
                    v.push(cur);
                    cur = oracle.pow(cur, p as u64);
                }
                v
            })
            .collect();
        let mut comm_log = vec![0usize; (e + 2) * (e + 2)];
        for x in 0..n {
            let ox = log_order[x as usize];
            for y in 0..n {
                let oy = log_order[y as usize];
                for j in 0..=e + 1 {
                    for k in 0..=e + 1 {
                        comm_log[j * (e + 2) + k] = if j < ox && k < oy {
                            let c = oracle.comm(powers[x as usize][j], powers[y as usize][k]);
                            log_order[c as usize]
                        } else {
                            0
                        };
                    }
                }
                for i in 0..=e {
                    let tuples = ((i + 2) * (i + 2)) as u64;
                    if ox > i + 1 || oy > i {
                        t.filtered(tuples);
                        continue;
                    }
                    let mut bad = None;
                    for j in 0..=i + 1 {
                        for k in 0..=i + 1 {
                            let lc = comm_log[j * (e + 2) + k];
                            let ok = if j + k > i { lc == 0 } else { lc <= i - j - k };
                            if !ok && bad.is_none() {
                                bad = Some((j, k));
                            }
                        }
                    }
                    match bad {
                        None => t.checked(tuples),
                        Some((j, k)) => {
                            t.checked(tuples - 1);
                            let c = oracle.comm(powers[x as usize][j], powers[y as usize][k]);
                            t.fail(
                                Witness::new(format!(
                                    "o([x^(p^{j}), y^(p^{k})]) exceeds p^({i}-{j}-{k})"
                                ))
                                .element("x", oracle.element(x))
                                .element("y", oracle.element(y))
                                .element("commutator", oracle.element(c)),
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Power subgroup exponent for the main theorem bound: `G^p`, or `G^4`
    /// when `p = 2`.
    fn main_bound_exponent(&self) -> u32 {
        embedding_power_exponent(self.prime())
    }

    /// Every normal `N <= G^p` (`G^4` for `p = 2`) is powerful and
    /// powerfully nilpotent. Returns (THM4_POWERFUL, MAIN_ODD, MAIN_P2).
    pub fn check_main_theorem(&self) -> [CheckReport; 3] {
        let (mut powerful_t, ok) = self.powerful_tally(ClaimId::NormalSubgroupPowerful);
        let (mut odd_t, _) = self.powerful_tally(ClaimId::MainOdd);
        let (mut two_t, _) = self.powerful_tally(ClaimId::MainTwo);
        let p2 = self.prime() == 2;
        if p2 {
            odd_t.skip("p = 2; the odd-prime statement does not apply");
        } else {
            two_t.skip("p is odd; the p = 2 statement does not apply");
        }
        if ok {
            let main_t = if p2 { &mut two_t } else { &mut odd_t };
            if let Err(e) = self.main_into(&mut powerful_t, main_t) {
                powerful_t.skip(describe(&e));
                main_t.skip(describe(&e));
            }
        }
        [powerful_t.finish(), odd_t.finish(), two_t.finish()]
    }

    fn main_into(&self, powerful_t: &mut Tally, main_t: &mut Tally) -> Result<()> {
        let k = self.main_bound_exponent();
        let bound = self.agemo(k);
        let normals = bound.normal_subgroups_within(&self.g, self.cfg.lattice_cap(self.prime()))?;
        for n in &normals {
            let series = powerful::upper_powerfully_central_series(n)?;
            powerful_t.record(series.powerful, || {
                Witness::new("normal subgroup inside the power bound is not powerful")
                    .subgroup("N", n)
            });
            main_t.record(series.powerful && series.reaches_group, || {
                Witness::new("normal subgroup inside the power bound is not powerfully nilpotent")
                    .subgroup("N", n)
                    .subgroup("bound", &bound)
            });
        }
        Ok(())
    }

    /// Lemmas on subgroups `N <= G^p` of exponent dividing `p^2` (odd `p`).
    /// Returns (LEM4, LEM5, LEM6).
    pub fn check_lemmas(&self) -> [CheckReport; 3] {
        let (mut l4, ok) = self.powerful_tally(ClaimId::OrderPCentral);
        let (mut l5, _) = self.powerful_tally(ClaimId::DeepElementsCentral);
        let (mut l6, _) = self.powerful_tally(ClaimId::CentralOrderP2Exists);
        if self.prime() == 2 {
            for t in [&mut l4, &mut l5, &mut l6] {
                t.skip("p = 2; the lemmas are stated for odd p");
            }
        } else if ok {
            if let Err(e) = self.lemmas_into(&mut l4, &mut l5, &mut l6) {
                for t in [&mut l4, &mut l5, &mut l6] {
                    t.skip(describe(&e));
                }
            }
        }
        for t in [&mut l4, &mut l5, &mut l6] {
            t.skip("no subgroup of G^p satisfies the hypotheses");
        }
        [l4.finish(), l5.finish(), l6.finish()]
    }

    fn lemmas_into(&self, l4: &mut Tally, l5: &mut Tally, l6: &mut Tally) -> Result<()> {
        let bound = self.agemo(1);
        let deep = self.agemo(2);
        let subs = bound.all_subgroups(self.cfg.lattice_cap(self.prime()))?;
        for n in &subs {
            let elements = n.elements();
            let logs: Vec<u32> = elements.iter().map(|x| self.pres.log_order(x)).collect();
            let exp = logs.iter().copied().max().unwrap_or(0);
            let central = |x: &Element| {
                n.igs()
                    .iter()
                    .all(|g| self.pres.commutator(x, g).is_identity())
            };
            if exp > 2 {
                l4.filtered(1);
            } else {
                let bad = elements
                    .iter()
                    .zip(&logs)
                    .find(|(x, &l)| l == 1 && !central(x));
                l4.record(bad.is_none(), || {
                    Witness::new("element of order p is not central in N")
                        .subgroup("N", n)
                        .element("x", bad.unwrap().0)
                });
            }
            if exp != 2 {
                l5.filtered(1);
                l6.filtered(1);
                continue;
            }
            let bad = elements.iter().find(|x| deep.contains(x) && !central(x));
            l5.record(bad.is_none(), || {
                Witness::new("element of G^(p^2) ∩ N is not central in N")
                    .subgroup("N", n)
                    .element("x", bad.unwrap())
            });
            if !n.is_normal_in(&self.g) {
                l6.filtered(1);
                continue;
            }
            let found = elements
                .iter()
                .zip(&logs)
                .any(|(x, &l)| l == 2 && central(x));
            l6.record(found, || {
                Witness::new("no central element of order p^2 in N").subgroup("N", n)
            });
        }
        Ok(())
    }

    /// `G` is powerfully nilpotent iff `G/G^{p^2}` is.
    pub fn check_prop5(&self) -> CheckReport {
        self.run(ClaimId::ReductionModAgemo2, |t| {
            let kernel = self.agemo(2);
            self.biconditional_into(t, &kernel, "G^(p^2)")
        })
    }

    /// `G` is powerfully nilpotent iff `G/Z(G)^p` is.
    pub fn check_prop6(&self) -> CheckReport {
        self.run(ClaimId::ReductionModCentrePower, |t| {
            let kernel = self.g.center()?.power_subgroup(1)?;
            self.biconditional_into(t, &kernel, "Z(G)^p")
        })
    }

    fn biconditional_into(&self, t: &mut Tally, kernel: &Subgroup<'p>, name: &str) -> Result<()> {
        let left = powerful::is_powerfully_nilpotent(&self.g)?;
        let q = kernel.quotient()?;
        let right = powerful::is_powerfully_nilpotent(&Subgroup::full(q.quotient()))?;
        t.record(left == right, || {
            Witness::new(format!(
                "G powerfully nilpotent = {left} but G/{name} powerfully nilpotent = {right}"
            ))
            .subgroup("kernel", kernel)
        });
        Ok(())
    }

    /// Every `N <= G^{p^{i+1}}` (`G^{p^{i+2}}` for `p = 2`) normal in
    /// `G^{p^i}` is powerfully nilpotent.
    pub fn check_corollary(&self, i: u32) -> CheckReport {
        self.run_powerful(ClaimId::Corollary, |t| self.corollary_into(t, i))
    }

    pub fn check_corollary_all(&self) -> CheckReport {
        self.run_powerful(ClaimId::Corollary, |t| {
            for i in 0..=self.log_exponent {
                self.corollary_into(t, i)?;
            }
            Ok(())
        })
    }

    fn corollary_into(&self, t: &mut Tally, i: u32) -> Result<()> {
        let ambient = self.agemo(i);
        let bound = self.agemo(i + self.main_bound_exponent());
        let normals =
            bound.normal_subgroups_within(&ambient, self.cfg.lattice_cap(self.prime()))?;
        for n in &normals {
            let ok = powerful::is_powerfully_nilpotent(n)?;
            t.record(ok, || {
                Witness::new(format!(
                    "N normal in G^(p^{i}) inside the bound is not powerfully nilpotent"
                ))
                .subgroup("N", n)
                .subgroup("ambient", &ambient)
            });
        }
        Ok(())
    }

    /// Every checker, one report per claim, in claim order.
    pub fn run_all(&self) -> Vec<CheckReport> {
        self.run_claims(&ClaimId::ALL)
    }

    /// The reports for `claims`, in claim order, each claim at most once.
    pub fn run_claims(&self, claims: &[ClaimId]) -> Vec<CheckReport> {
        let mut wanted: Vec<ClaimId> = claims.to_vec();
        wanted.sort();
        wanted.dedup();
        let e = self.log_exponent.max(1);
        let mut main: Option<[CheckReport; 3]> = None;
        let mut lemmas: Option<[CheckReport; 3]> = None;
        let mut out = Vec::with_capacity(wanted.len());
        for claim in wanted {
            let report = match claim {
                ClaimId::PowersAreAgemo => merge_reports(
                    claim,
                    &self.id,
                    &(1..=e)
                        .map(|k| self.check_thm1_powers(k))
                        .collect::<Vec<_>>(),
                ),
                ClaimId::AgemoPowerfullyEmbedded => merge_reports(
                    claim,
                    &self.id,
                    &(1..=e)
                        .map(|k| self.check_thm1_embedded(k))
                        .collect::<Vec<_>>(),
                ),
                ClaimId::GeneratorPowers => self.check_thm1_generators(),
                ClaimId::ShalevCommutatorPowers => self.check_shalev_all(),
                ClaimId::CommutatorOrderBound => self.check_fa_bound(),
                ClaimId::NormalSubgroupPowerful | ClaimId::MainOdd | ClaimId::MainTwo => {
                    let [a, b, c] = main.get_or_insert_with(|| self.check_main_theorem());
                    match claim {
                        ClaimId::NormalSubgroupPowerful => a.clone(),
                        ClaimId::MainOdd => b.clone(),
                        _ => c.clone(),
                    }
                }
                ClaimId::ReductionModAgemo2 => self.check_prop5(),
                ClaimId::ReductionModCentrePower => self.check_prop6(),
                ClaimId::OrderPCentral
                | ClaimId::DeepElementsCentral
                | ClaimId::CentralOrderP2Exists => {
                    let [a, b, c] = lemmas.get_or_insert_with(|| self.check_lemmas());
                    match claim {
                        ClaimId::OrderPCentral => a.clone(),
                        ClaimId::DeepElementsCentral => b.clone(),
                        _ => c.clone(),
                    }
                }
                ClaimId::Corollary => self.check_corollary_all(),
            };
            out.push(report);
        }
        out
    }
}

fn ilog(mut x: u64, p: u64) -> usize {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

#[derive(Default)]
struct ShalevMemo<'p> {
    powers: HashMap<(usize, u32), Subgroup<'p>>,
    commutators: HashMap<(usize, usize), Subgroup<'p>>,
}

impl<'p> ShalevMemo<'p> {
    fn power(&mut self, idx: usize, k: u32, m: &Subgroup<'p>) -> Result<Subgroup<'p>> {
        if let Some(s) = self.powers.get(&(idx, k)) {
            return Ok(s.clone());
        }
        let s = m.power_subgroup(k)?;
        self.powers.insert((idx, k), s.clone());
        Ok(s)
    }

    fn commutator(
        &mut self,
        a: usize,
        b: usize,
        m: &Subgroup<'p>,
        n: &Subgroup<'p>,
    ) -> Subgroup<'p> {
        self.commutators
            .entry((a, b))
            .or_insert_with(|| m.commutator_with(n))
            .clone()
    }
}

/// Runs every checker on one group with the default configuration.
pub fn run_all(id: &str, pres: &PcPresentation) -> Result<Vec<CheckReport>> {
    run_all_with(id, pres, HarnessConfig::default())
}

pub fn run_all_with(
    id: &str,
    pres: &PcPresentation,
    cfg: HarnessConfig,
) -> Result<Vec<CheckReport>> {
    Ok(Harness::new(id, pres, cfg)?.run_all())
}
