//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Every criterion is exact; the only numeric thresholds are the pinned
//! constants below.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use ppn_core::corpus::{default_corpus, CorpusCaps, CorpusEntry};
use ppn_core::crosscheck::cross_validate;
use ppn_core::harness::{replay_witness, run_all, CheckReport, ClaimId, FalsifyWitness, Verdict};
use ppn_core::powerful::{is_powerful, is_powerfully_nilpotent, powerful_class};
use ppn_core::{CayleyOracle, Element, Subgroup};

const MIN_MAIN_INSTANCES: u64 = 200;
const MAX_MAIN_RUN: Duration = Duration::from_secs(600);
const TRIPLES_PER_GROUP: usize = 10_000;
const ODD_PRIMES: [u32; 2] = [3, 5];

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

struct Run {
    corpus: Vec<CorpusEntry>,
    /// `reports[g]` holds every claim's report for `corpus[g]`, in claim order.
    reports: Vec<Vec<CheckReport>>,
    powerful: Vec<bool>,
    elapsed: Duration,
}

impl Run {
    fn new(primes: &[u32]) -> Run {
        let start = Instant::now();
        let corpus = default_corpus(primes, &CorpusCaps::default()).expect("corpus builds");
        let reports: Vec<Vec<CheckReport>> = corpus
            .par_iter()
            .map(|e| run_all(&e.id, &e.presentation).expect("harness runs"))
            .collect();
        let elapsed = start.elapsed();
        let powerful = corpus
            .iter()
            .map(|e| is_powerful(&Subgroup::full(&e.presentation)).unwrap())
            .collect();
        Run {
            corpus,
            reports,
            powerful,
            elapsed,
        }
    }

    fn claim(&self, claim: ClaimId) -> impl Iterator<Item = (usize, &CheckReport)> {
        self.reports.iter().enumerate().map(move |(g, rs)| {
            (
                g,
                rs.iter()
                    .find(|r| r.claim_id == claim)
                    .expect("every claim reported"),
            )
        })
    }

    fn failures(&self, claims: &[ClaimId]) -> Vec<String> {
        claims
            .iter()
            .flat_map(|&c| self.claim(c))
            .filter(|(_, r)| r.verdict == Verdict::Fail)
            .map(|(_, r)| format!("{} on {}", r.claim_id, r.group_id))
            .collect()
    }

    fn instances(&self, claim: ClaimId) -> u64 {
        self.claim(claim).map(|(_, r)| r.instances_checked).sum()
    }

    /// Powerful groups (optionally of at most `p^max_log` elements) whose
    /// report for `claim` is not a pass.
    fn not_passing_on_powerful(&self, claim: ClaimId, max_log: Option<usize>) -> Vec<String> {
        self.claim(claim)
            .filter(|&(g, _)| self.powerful[g])
            .filter(|&(g, _)| max_log.is_none_or(|m| self.corpus[g].presentation.ngens() <= m))
            .filter(|(_, r)| r.verdict != Verdict::Pass)
            .map(|(_, r)| format!("{} on {}: {:?}", r.claim_id, r.group_id, r.verdict))
            .collect()
    }

    fn powerful_count(&self) -> usize {
        self.powerful.iter().filter(|&&p| p).count()
    }
}

fn summarize(problems: &[String]) -> String {
    match problems.first() {
        None => String::new(),
        Some(first) => format!("; {} problem(s), first: {first}", problems.len()),
    }
}

fn criterion_main_odd(odd: &Run) -> Outcome {
    let fails = odd.failures(&[ClaimId::NormalSubgroupPowerful, ClaimId::MainOdd]);
    let n = odd.instances(ClaimId::MainOdd);
    let n_powerful = odd.instances(ClaimId::NormalSubgroupPowerful);
    let ok = fails.is_empty()
        && n >= MIN_MAIN_INSTANCES
        && n_powerful == n
        && odd.elapsed <= MAX_MAIN_RUN;
    outcome(
        ok,
        format!(
            "{n} (G,N) instances (min {MIN_MAIN_INSTANCES}) over {} powerful groups, full run {:.1}s (max {}s){}",
            odd.powerful_count(),
            odd.elapsed.as_secs_f64(),
            MAX_MAIN_RUN.as_secs(),
            summarize(&fails)
        ),
    )
}

fn criterion_main_two(two: &Run) -> Outcome {
    let fails = two.failures(&[ClaimId::NormalSubgroupPowerful, ClaimId::MainTwo]);
    let n = two.instances(ClaimId::MainTwo);
    outcome(
        fails.is_empty() && n > 0,
        format!(
            "{n} (G,N) instances with N <= G^4 over {} powerful 2-groups{}",
            two.powerful_count(),
            summarize(&fails)
        ),
    )
}

fn criterion_fa(runs: &[&Run]) -> Outcome {
    let mut problems = Vec::new();
    let mut n = 0;
    for run in runs {
        problems.extend(run.not_passing_on_powerful(ClaimId::CommutatorOrderBound, Some(5)));
        problems.extend(run.failures(&[ClaimId::CommutatorOrderBound]));
        n += run.instances(ClaimId::CommutatorOrderBound);
    }
    outcome(
        problems.is_empty(),
        format!("{n} (x,y,i,j,k) tuples checked{}", summarize(&problems)),
    )
}

fn criterion_shalev(runs: &[&Run]) -> Outcome {
    let mut problems = Vec::new();
    let mut n = 0;
    for run in runs {
        problems.extend(run.not_passing_on_powerful(ClaimId::ShalevCommutatorPowers, None));
        problems.extend(run.failures(&[ClaimId::ShalevCommutatorPowers]));
        n += run.instances(ClaimId::ShalevCommutatorPowers);
    }
    outcome(
        problems.is_empty(),
        format!("{n} tower pairs checked{}", summarize(&problems)),
    )
}

fn criterion_lubotzky_mann(runs: &[&Run]) -> Outcome {
    let claims = [
        ClaimId::PowersAreAgemo,
        ClaimId::AgemoPowerfullyEmbedded,
        ClaimId::GeneratorPowers,
    ];
    let mut problems = Vec::new();
    let mut counts = [0u64; 3];
    for run in runs {
        for (i, &c) in claims.iter().enumerate() {
            problems.extend(run.not_passing_on_powerful(c, None));
            problems.extend(run.failures(&[c]));
            counts[i] += run.instances(c);
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{} power-set, {} embedding, {} generator checks{}",
            counts[0],
            counts[1],
            counts[2],
            summarize(&problems)
        ),
    )
}

fn criterion_props(runs: &[&Run]) -> Outcome {
    let claims = [
        ClaimId::ReductionModAgemo2,
        ClaimId::ReductionModCentrePower,
    ];
    let mut problems = Vec::new();
    let (mut groups, mut n) = (0, 0);
    for run in runs {
        problems.extend(run.failures(&claims));
        groups += run.corpus.len();
        n += claims.iter().map(|&c| run.instances(c)).sum::<u64>();
    }
    outcome(
        problems.is_empty() && n > 0,
        format!(
            "{n} biconditionals checked over {groups} groups{}",
            summarize(&problems)
        ),
    )
}

fn criterion_lemmas(odd: &Run) -> Outcome {
    let claims = [
        ClaimId::OrderPCentral,
        ClaimId::DeepElementsCentral,
        ClaimId::CentralOrderP2Exists,
    ];
    let problems = odd.failures(&claims);
    let counts: Vec<u64> = claims.iter().map(|&c| odd.instances(c)).collect();
    outcome(
        problems.is_empty() && counts.iter().all(|&n| n >= 1),
        format!(
            "instances: {} / {} / {} (min 1 each){}",
            counts[0],
            counts[1],
            counts[2],
            summarize(&problems)
        ),
    )
}

fn small(corpus: &[CorpusEntry]) -> impl Iterator<Item = &CorpusEntry> {
    corpus.iter().filter(|e| e.presentation.ngens() <= 4)
}

fn criterion_oracle(all: &[CorpusEntry]) -> Outcome {
    let results: Vec<(String, u64, Vec<String>)> = small(all)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|e| {
            let mut problems = Vec::new();
            let r = cross_validate(&e.presentation).expect("oracle builds");
            problems.extend(r.mismatches.iter().map(|m| format!("{}: {m}", e.id)));
            let o = CayleyOracle::build(&e.presentation).unwrap();
            let chain = o.powerfully_nilpotent_by_chain_search(&o.whole());
            let series = is_powerfully_nilpotent(&Subgroup::full(&e.presentation)).unwrap();
            if chain != series {
                problems.push(format!("{}: chain search {chain}, series {series}", e.id));
            }
            (e.id.clone(), r.comparisons + 1, problems)
        })
        .collect();
    let problems: Vec<String> = results.iter().flat_map(|r| r.2.clone()).collect();
    let comparisons: u64 = results.iter().map(|r| r.1).sum();
    outcome(
        problems.is_empty(),
        format!(
            "{} groups, {comparisons} exact comparisons{}",
            results.len(),
            summarize(&problems)
        ),
    )
}

#[derive(Deserialize)]
struct Control {
    group_id: String,
    order: u128,
    powerful: bool,
    powerfully_nilpotent: bool,
    powerful_class: Option<usize>,
}

fn criterion_controls(all: &[CorpusEntry]) -> Outcome {
    let controls: Vec<Control> =
        serde_json::from_str(include_str!("../../core/tests/golden/controls.json"))
            .expect("golden file parses");
    let mut problems = Vec::new();
    for c in &controls {
        let Some(entry) = all.iter().find(|e| e.id == c.group_id) else {
            problems.push(format!("{} missing from corpus", c.group_id));
            continue;
        };
        let g = Subgroup::full(&entry.presentation);
        let got = (
            entry.presentation.order(),
            is_powerful(&g).unwrap(),
            is_powerfully_nilpotent(&g).unwrap(),
            powerful_class(&g).unwrap(),
        );
        let o = CayleyOracle::build(&entry.presentation).unwrap();
        let oracle_pn = o.powerfully_nilpotent_by_chain_search(&o.whole());
        let oracle = (
            o.len() as u128,
            o.is_powerful(&o.whole()),
            oracle_pn,
            oracle_pn.then(|| o.upper_powerfully_central_series(&o.whole()).len() - 1),
        );
        let want = (
            c.order,
            c.powerful,
            c.powerfully_nilpotent,
            c.powerful_class,
        );
        if got != want || oracle != want {
            problems.push(format!(
                "{}: golden {want:?}, computed {got:?}, oracle {oracle:?}",
                c.group_id
            ));
        }
    }
    let mut abelian = 0;
    for e in all.iter().filter(|e| e.spec.is_abelian_family()) {
        abelian += 1;
        let class = powerful_class(&Subgroup::full(&e.presentation)).unwrap();
        if !matches!(class, Some(0 | 1)) {
            problems.push(format!("{}: abelian with class {class:?}", e.id));
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{} golden controls, {abelian} abelian groups of class <= 1{}",
            controls.len(),
            summarize(&problems)
        ),
    )
}

fn criterion_sharpness(all: &[CorpusEntry]) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_ppn"))
        .args(["falsify", "--drop-hypothesis", "subset_gp", "--corpus"])
        .output()
        .expect("ppn runs");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let code = out.status.code();
    let json_start = stdout.find('{');
    let witness: Option<FalsifyWitness> =
        json_start.and_then(|i| serde_json::from_str(&stdout[i..]).ok());
    let Some(w) = witness else {
        return outcome(false, format!("exit {code:?}, no witness in output"));
    };
    let entry = all.iter().find(|e| e.id == w.group_id);
    let confirmed = entry.is_some_and(|e| {
        replay_witness(&e.presentation, &w).unwrap_or(false)
            && is_powerful(&Subgroup::full(&e.presentation)).unwrap()
    });
    let n_is_g = entry.is_some_and(|e| w.n_order == e.presentation.order());
    let group_id = &w.group_id;
    outcome(
        code == Some(1) && confirmed,
        format!(
            "exit {code:?}, witness {group_id} with N {}= G, oracle replay {}",
            if n_is_g { "" } else { "!" },
            if confirmed {
                "confirms"
            } else {
                "does not confirm"
            }
        ),
    )
}

fn criterion_collection(all: &[CorpusEntry]) -> Outcome {
    let problems: Vec<String> = all
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, e)| {
            let pres = &e.presentation;
            let mut rng = ChaCha8Rng::seed_from_u64(0xacce97 + i as u64);
            let mut random = || {
                let exps: Vec<u32> = (0..pres.ngens())
                    .map(|_| rng.gen_range(0..pres.prime()))
                    .collect();
                Element::from_exponents(&exps)
            };
            let mut problems = Vec::new();
            for _ in 0..TRIPLES_PER_GROUP {
                let (a, b, c) = (random(), random(), random());
                if pres.multiply(&pres.multiply(&a, &b), &c)
                    != pres.multiply(&a, &pres.multiply(&b, &c))
                {
                    problems.push(format!("{}: ({a} {b}) {c}", e.id));
                    break;
                }
            }
            if pres.ngens() <= 4 {
                let model = e.spec.model();
                let seq = model.pc_sequence();
                let mut seen = HashSet::new();
                for x in pres.elements() {
                    let word = (0..pres.ngens()).fold(pres.identity(), |acc, k| {
                        pres.multiply(
                            &acc,
                            &pres.power_unsigned(&pres.generator(k), x.exponents()[k] as u64),
                        )
                    });
                    if word != x || !seen.insert(model.evaluate(&seq, &x)) {
                        problems.push(format!("{}: normal form {x} not unique", e.id));
                        break;
                    }
                }
            }
            problems
        })
        .collect();
    outcome(
        problems.is_empty(),
        format!(
            "{TRIPLES_PER_GROUP} triples on each of {} groups, exhaustive normal forms on {}{}",
            all.len(),
            small(all).count(),
            summarize(&problems)
        ),
    )
}

fn main() {
    // `cargo test` passes harness flags such as `--quiet`; none apply here.
    let odd = Run::new(&ODD_PRIMES);
    let two = Run::new(&[2]);
    let all: Vec<CorpusEntry> = odd.corpus.iter().chain(&two.corpus).cloned().collect();
    let runs = [&odd, &two];

    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("main theorem, odd p", Box::new(|| criterion_main_odd(&odd))),
        ("main theorem, p = 2", Box::new(|| criterion_main_two(&two))),
        ("commutator order bound", Box::new(|| criterion_fa(&runs))),
        (
            "commutator-power identity",
            Box::new(|| criterion_shalev(&runs)),
        ),
        (
            "power subgroup facts",
            Box::new(|| criterion_lubotzky_mann(&runs)),
        ),
        ("quotient reductions", Box::new(|| criterion_props(&runs))),
        ("exponent p^2 lemmas", Box::new(|| criterion_lemmas(&odd))),
        ("oracle equivalence", Box::new(|| criterion_oracle(&all))),
        ("negative controls", Box::new(|| criterion_controls(&all))),
        ("sharpness", Box::new(|| criterion_sharpness(&all))),
        (
            "collection soundness",
            Box::new(|| criterion_collection(&all)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
