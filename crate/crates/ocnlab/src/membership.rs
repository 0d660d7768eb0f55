//! Polynomial-time membership for 2-OCNs, plus a brute-force bounded
//! explorer used as an independent oracle.
//!
//! The decision procedure tracks, per step index, the maximal counter with
//! which each (state, position) pair is reachable. Acceptance within the
//! step horizon is reported directly; otherwise a second scan seeded with
//! the per-pair maxima looks for a pair that recurs with a strictly larger
//! counter. Such a pair can be pumped to any counter value, so acceptance
//! then only depends on the counter-stripped two-way automaton from that
//! pair. The horizon is `P = (|w|+2)·|Q|`, the number of state/position
//! pairs including the marker cells.

use crate::ocn::{Config, CounterNet, NetError, Run, TapeSym, Termination};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};

/// Why a word was accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mechanism {
    /// An accepting run within the step horizon; the verdict's witness
    /// replays it.
    Direct,
    /// A pumpable counter-increasing cycle at (state, position), after which
    /// the stripped automaton accepts. Carries a replayable prefix run from
    /// the initial configuration to the cycle base and the cycle fragment
    /// itself.
    PositiveCycle { state: u32, position: usize, prefix: Run, cycle: Run },
}

/// Result of [`decide_membership`].
#[derive(Debug, Clone)]
pub struct MembershipVerdict {
    pub accepted: bool,
    /// For direct acceptance, the accepting run.
    pub witness: Option<Run>,
    pub mechanism: Option<Mechanism>,
}

/// Machine-readable record for the CLI.
#[derive(Debug, Serialize)]
pub struct MembershipRecord {
    pub accepted: bool,
    pub mechanism: &'static str,
    pub witness_steps: usize,
}

impl MembershipVerdict {
    pub fn record(&self) -> MembershipRecord {
        MembershipRecord {
            accepted: self.accepted,
            mechanism: match &self.mechanism {
                None => "none",
                Some(Mechanism::Direct) => "direct",
                Some(Mechanism::PositiveCycle { .. }) => "positive_cycle",
            },
            witness_steps: self.witness.as_ref().map_or(0, |r| r.steps.len()),
        }
    }
}

/// Step-indexed max-counter tables. `entries[i][pair]` is the maximal
/// counter with which the pair is reachable in exactly `i` steps, or `None`
/// for unreachable; `prev` carries backtracking links.
pub struct MaxCounterTable {
    pub horizon: usize,
    pub width: usize,
    pub entries: Vec<Vec<Option<BigInt>>>,
    prev: Vec<Vec<Option<u32>>>,
}

impl MaxCounterTable {
    fn pair(state: u32, pos: usize, width: usize) -> usize {
        state as usize * width + pos
    }

    /// Reconstructs the run ending at `pair` after `step` steps.
    fn backtrack(&self, net: &CounterNet, word: &[u32], mut step: usize, mut pair: usize) -> Vec<Config> {
        let mut rev = Vec::new();
        loop {
            let state = (pair / self.width) as u32;
            let pos = pair % self.width;
            rev.push(Config {
                state,
                counter: self.entries[step][pair].clone().unwrap(),
                pos,
            });
            if step == 0 {
                break;
            }
            pair = self.prev[step][pair].unwrap() as usize;
            step -= 1;
        }
        rev.reverse();
        let _ = (net, word);
        rev
    }
}

/// Builds max-counter tables over `horizon` steps from the given seeds
/// (pair -> starting counter).
fn build_tables(
    net: &CounterNet,
    word: &[u32],
    horizon: usize,
    seeds: &[(usize, BigInt)],
) -> MaxCounterTable {
    let width = word.len() + 2;
    let pairs = net.states.len() * width;
    let mut entries: Vec<Vec<Option<BigInt>>> = Vec::with_capacity(horizon + 1);
    let mut prev: Vec<Vec<Option<u32>>> = Vec::with_capacity(horizon + 1);
    let mut cur: Vec<Option<BigInt>> = vec![None; pairs];
    for (p, c) in seeds {
        match &cur[*p] {
            Some(old) if old >= c => {}
            _ => cur[*p] = Some(c.clone()),
        }
    }
    prev.push(vec![None; pairs]);
    entries.push(cur.clone());

    // Transition lists indexed by source state, in declaration order.
    let mut by_state: Vec<Vec<&crate::ocn::Transition>> = vec![Vec::new(); net.states.len()];
    for t in &net.transitions {
        by_state[t.source as usize].push(t);
    }

    for _ in 0..horizon {
        let mut next: Vec<Option<BigInt>> = vec![None; pairs];
        let mut link: Vec<Option<u32>> = vec![None; pairs];
        for pair in 0..pairs {
            let Some(c) = &cur[pair] else { continue };
            let state = (pair / width) as u32;
            if state == net.accepting {
                continue; // runs do not continue after the accepting state
            }
            let pos = pair % width;
            let sym = CounterNet::tape_symbol(word, pos);
            for t in &by_state[state as usize] {
                if t.symbol != sym {
                    continue;
                }
                let c2 = c + &t.effect;
                if c2 < BigInt::zero() {
                    continue;
                }
                let pos2 = (pos as i64 + t.shift as i64) as usize;
                let pair2 = MaxCounterTable::pair(t.target, pos2, width);
                match &next[pair2] {
                    Some(old) if *old >= c2 => {}
                    _ => {
                        next[pair2] = Some(c2);
                        link[pair2] = Some(pair as u32);
                    }
                }
            }
        }
        entries.push(next.clone());
        prev.push(link);
        cur = next;
    }
    MaxCounterTable { horizon, width, entries, prev }
}

/// Exposed for the monotonicity property test: tables from the initial
/// configuration with a chosen starting counter.
pub fn max_counter_tables(net: &CounterNet, word: &[u32], initial_counter: impl Into<BigInt>) -> MaxCounterTable {
    let width = word.len() + 2;
    let horizon = width * net.states.len();
    let seed = MaxCounterTable::pair(net.initial, 0, width);
    build_tables(net, word, horizon, &[(seed, initial_counter.into())])
}

/// True iff the counter-stripped pair graph reaches the accepting state
/// from `start` within `step_cap` steps.
pub fn nfa_accepts_from(
    stripped: &CounterNet,
    word: &[u32],
    start: (u32, usize),
    step_cap: usize,
) -> Result<bool, NetError> {
    if !stripped.is_counterless() {
        return Err(NetError::NonzeroEffect);
    }
    Ok(pair_reach(stripped, word, step_cap)[MaxCounterTable::pair(start.0, start.1, word.len() + 2)])
}

/// For every pair, whether the stripped automaton reaches acceptance from it
/// within `step_cap` steps (backward BFS; effects are ignored).
fn pair_reach(net: &CounterNet, word: &[u32], step_cap: usize) -> Vec<bool> {
    let width = word.len() + 2;
    let pairs = net.states.len() * width;
    // predecessor graph of the (state, position) step relation
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); pairs];
    for t in &net.transitions {
        if t.source == net.accepting {
            continue;
        }
        for pos in 0..width {
            if CounterNet::tape_symbol(word, pos) != t.symbol {
                continue;
            }
            let pos2 = pos as i64 + t.shift as i64;
            if pos2 < 0 || pos2 as usize >= width {
                continue; // cannot happen for valid nets, marker rule
            }
            let from = MaxCounterTable::pair(t.source, pos, width);
            let to = MaxCounterTable::pair(t.target, pos2 as usize, width);
            preds[to].push(from as u32);
        }
    }
    let mut reach = vec![false; pairs];
    let mut queue = VecDeque::new();
    for pos in 0..width {
        let p = MaxCounterTable::pair(net.accepting, pos, width);
        reach[p] = true;
        queue.push_back((p, 0usize));
    }
    while let Some((p, d)) = queue.pop_front() {
        if d >= step_cap {
            continue;
        }
        for &q in &preds[p] {
            if !reach[q as usize] {
                reach[q as usize] = true;
                queue.push_back((q as usize, d + 1));
            }
        }
    }
    reach
}

/// Decides `word ∈ L(net)` in time polynomial in `|word|`, `|Q|`, `|Δ|` and
/// the bit size of the effects.
pub fn decide_membership(net: &CounterNet, word: &[u32]) -> MembershipVerdict {
    debug_assert!(word.iter().all(|&l| (l as usize) < net.alphabet.len()));
    let width = word.len() + 2;
    let horizon = width * net.states.len();
    let init_pair = MaxCounterTable::pair(net.initial, 0, width);
    let f = build_tables(net, word, horizon, &[(init_pair, BigInt::zero())]);

    // Direct acceptance: earliest step where the accepting state appears.
    for step in 0..=horizon {
        for pos in 0..width {
            let pair = MaxCounterTable::pair(net.accepting, pos, width);
            if f.entries[step][pair].is_some() {
                let steps = f.backtrack(net, word, step, pair);
                let witness = Run { word: word.to_vec(), steps, termination: Termination::Accepted };
                return MembershipVerdict {
                    accepted: true,
                    witness: Some(witness),
                    mechanism: Some(Mechanism::Direct),
                };
            }
        }
    }

    // Per-pair maxima over all steps, with the step index attaining them.
    let pairs = net.states.len() * width;
    let mut maxima: Vec<Option<(BigInt, usize)>> = vec![None; pairs];
    for step in 0..=horizon {
        for pair in 0..pairs {
            if let Some(c) = &f.entries[step][pair] {
                match &maxima[pair] {
                    Some((old, _)) if old >= c => {}
                    _ => maxima[pair] = Some((c.clone(), step)),
                }
            }
        }
    }

    // Batched recurrence scan: seed every pair at its own maximum and look
    // for any pair exceeding it. An excess witnesses a pumpable positive
    // cycle somewhere on the path, so it marks candidates only; the
    // reported pair is re-established with an individual scan below.
    let seeds: Vec<(usize, BigInt)> =
        maxima.iter().enumerate().filter_map(|(p, m)| m.as_ref().map(|(c, _)| (p, c.clone()))).collect();
    if seeds.is_empty() {
        return MembershipVerdict { accepted: false, witness: None, mechanism: None };
    }
    let g = build_tables(net, word, horizon, &seeds);
    let mut candidates: Vec<usize> = Vec::new();
    for pair in 0..pairs {
        let Some((m, _)) = &maxima[pair] else { continue };
        for step in 1..=horizon {
            if let Some(c) = &g.entries[step][pair] {
                if c > m {
                    candidates.push(pair);
                    break;
                }
            }
        }
    }
    if candidates.is_empty() {
        return MembershipVerdict { accepted: false, witness: None, mechanism: None };
    }

    let stripped = net.strip_counter();
    let reach = pair_reach(&stripped, word, horizon);
    for pair in candidates {
        if !reach[pair] {
            continue;
        }
        // Individual scan: a genuine same-pair counter-increasing fragment.
        let (m, m_step) = maxima[pair].clone().unwrap();
        let solo = build_tables(net, word, horizon, &[(pair, m.clone())]);
        for step in 1..=horizon {
            let Some(c) = &solo.entries[step][pair] else { continue };
            if c > &m {
                let cycle_steps = solo.backtrack(net, word, step, pair);
                let prefix_steps = f.backtrack(net, word, m_step, pair);
                let state = (pair / width) as u32;
                let position = pair % width;
                let prefix =
                    Run { word: word.to_vec(), steps: prefix_steps, termination: Termination::Ongoing };
                let cycle =
                    Run { word: word.to_vec(), steps: cycle_steps, termination: Termination::Ongoing };
                return MembershipVerdict {
                    accepted: true,
                    witness: Some(prefix.clone()),
                    mechanism: Some(Mechanism::PositiveCycle { state, position, prefix, cycle }),
                };
            }
        }
    }
    MembershipVerdict { accepted: false, witness: None, mechanism: None }
}

/// Capped-exploration outcome; `RejectedExhaustively` is exact.
#[derive(Debug, Clone)]
pub enum ExploreOutcome {
    Accepted(Run),
    RejectedExhaustively,
    Unknown(CapReport),
}

/// Which caps stopped the exploration from being exhaustive.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CapReport {
    pub counter_cap_hit: bool,
    pub step_cap_hit: bool,
    pub configs: usize,
}

/// Breadth-first search over configurations with counter at most
/// `counter_cap` and depth at most `step_cap`. The rejection verdict is
/// exact only when the reachable set closed without touching either cap.
pub fn explore_bounded(net: &CounterNet, word: &[u32], step_cap: usize, counter_cap: u64) -> ExploreOutcome {
    let cap = BigInt::from(counter_cap);
    let start = Config::new(net.initial, 0, 0);
    let mut report = CapReport::default();
    if start.counter > cap {
        report.counter_cap_hit = true;
        return ExploreOutcome::Unknown(report);
    }
    let mut parents: HashMap<Config, Config> = HashMap::new();
    let mut seen: HashSet<Config> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start.clone()];
    let accept_run = |cfg: &Config, parents: &HashMap<Config, Config>| -> Run {
        let mut rev = vec![cfg.clone()];
        let mut cur = cfg.clone();
        while let Some(p) = parents.get(&cur) {
            rev.push(p.clone());
            cur = p.clone();
        }
        rev.reverse();
        Run { word: word.to_vec(), steps: rev, termination: Termination::Accepted }
    };
    if start.state == net.accepting {
        return ExploreOutcome::Accepted(accept_run(&start, &parents));
    }
    for _depth in 0..step_cap {
        if frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for cfg in &frontier {
            for succ in net.successors(word, cfg).expect("position in range") {
                if succ.counter > cap {
                    report.counter_cap_hit = true;
                    continue;
                }
                if seen.contains(&succ) {
                    continue;
                }
                seen.insert(succ.clone());
                parents.insert(succ.clone(), cfg.clone());
                if succ.state == net.accepting {
                    return ExploreOutcome::Accepted(accept_run(&succ, &parents));
                }
                next.push(succ);
            }
        }
        frontier = next;
    }
    report.configs = seen.len();
    if !frontier.is_empty() {
        report.step_cap_hit = true;
    }
    if report.counter_cap_hit || report.step_cap_hit {
        ExploreOutcome::Unknown(report)
    } else {
        ExploreOutcome::RejectedExhaustively
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, corpus};
    use crate::ocn::RunVerdict;

    fn member_str(name: &str, param: u32, word: &str) -> MembershipVerdict {
        let e = corpus(name, param).unwrap();
        let w = e.word_indices(word).unwrap();
        decide_membership(&e.net, &w)
    }

    #[test]
    fn fig1_examples() {
        assert!(member_str("fig1", 0, "aabb").accepted);
        assert!(!member_str("fig1", 0, "aab").accepted);
        assert!(member_str("fig1", 0, "").accepted);
        assert!(!member_str("fig1", 0, "ba").accepted);
    }

    #[test]
    fn direct_witness_replays() {
        let e = corpus("fig1", 0).unwrap();
        let w = e.word_indices("ab").unwrap();
        let v = decide_membership(&e.net, &w);
        assert!(v.accepted);
        let run = v.witness.unwrap();
        assert_eq!(e.net.validate_run(&run), RunVerdict::Valid);
        assert_eq!(run.steps.last().unwrap().state, e.net.accepting);
        assert_eq!(run.steps[0], Config::new(e.net.initial, 0, 0));
    }

    #[test]
    fn immediate_accept_net() {
        // q_init --⊢--> q_acc accepts every word.
        let mut b = corpus::NetBuilder::new("tiny", &["a"]);
        let q0 = b.state("q0");
        let q1 = b.state("q1");
        b.t(q0, "^", 0, 1, q1);
        let net = b.build(q0, q1);
        assert!(decide_membership(&net, &[]).accepted);
        assert!(decide_membership(&net, &[0, 0, 0]).accepted);
    }

    #[test]
    fn fig4_positive_cycle_mechanism() {
        let e = corpus("fig4", 20).unwrap();
        let w = e.word_indices("ab").unwrap();
        let v = decide_membership(&e.net, &w);
        assert!(v.accepted);
        match v.mechanism {
            Some(Mechanism::PositiveCycle { ref prefix, ref cycle, state, position }) => {
                assert_eq!(e.net.validate_run(prefix), RunVerdict::Valid);
                assert_eq!(e.net.validate_run(cycle), RunVerdict::Valid);
                let first = cycle.steps.first().unwrap();
                let last = cycle.steps.last().unwrap();
                assert_eq!((first.state, first.pos), (state, position));
                assert_eq!((last.state, last.pos), (state, position));
                assert!(last.counter > first.counter);
            }
            other => panic!("expected positive cycle, got {other:?}"),
        }
    }

    #[test]
    fn fig4_rejects_non_ab() {
        for w in ["a", "b", "", "ba", "aab", "abb"] {
            assert!(!member_str("fig4", 8, w).accepted, "fig4 should reject {w:?}");
        }
    }

    #[test]
    fn nfa_accepts_from_basics() {
        let e = corpus("fig1", 0).unwrap();
        let stripped = e.net.strip_counter();
        let w = e.word_indices("ab").unwrap();
        // From the accepting state, zero steps suffice.
        assert!(nfa_accepts_from(&stripped, &w, (e.net.accepting, 1), 0).unwrap());
        assert!(nfa_accepts_from(&stripped, &w, (e.net.initial, 0), 100).unwrap());
        // Net with no transitions, non-accepting start.
        let empty = corpus("empty", 0).unwrap().net;
        assert!(!nfa_accepts_from(&empty, &[0], (empty.initial, 0), 100).unwrap());
        assert!(matches!(nfa_accepts_from(&e.net, &w, (0, 0), 10), Err(NetError::NonzeroEffect)));
    }

    #[test]
    fn stripped_fig1_accepts_format_only() {
        let e = corpus("fig1", 0).unwrap();
        let stripped = e.net.strip_counter();
        let w = e.word_indices("aab").unwrap();
        assert!(decide_membership(&stripped, &w).accepted);
        let w2 = e.word_indices("aba").unwrap();
        assert!(!decide_membership(&stripped, &w2).accepted);
    }

    #[test]
    fn explore_bounded_examples() {
        let e = corpus("fig1", 0).unwrap();
        let w = e.word_indices("ab").unwrap();
        match explore_bounded(&e.net, &w, 500, 50) {
            ExploreOutcome::Accepted(run) => assert_eq!(e.net.validate_run(&run), RunVerdict::Valid),
            other => panic!("expected accept, got {other:?}"),
        }
        // No ⊢ transition at all: closure is immediate and exact.
        let empty = corpus("empty", 0).unwrap().net;
        assert!(matches!(explore_bounded(&empty, &[0, 1], 100, 10), ExploreOutcome::RejectedExhaustively));
        // The charge loop of fig4 with k = 30 saturates any small counter cap.
        let e4 = corpus("fig4", 30).unwrap();
        let w4 = e4.word_indices("ab").unwrap();
        match explore_bounded(&e4.net, &w4, 1000, 1000) {
            ExploreOutcome::Unknown(rep) => assert!(rep.counter_cap_hit),
            other => panic!("expected unknown, got {other:?}"),
        }
    }

    #[test]
    fn monotone_tables_under_seed_raise() {
        let e = corpus("fig1", 0).unwrap();
        let w = e.word_indices("aab").unwrap();
        let base = max_counter_tables(&e.net, &w, 0);
        let raised = max_counter_tables(&e.net, &w, 1);
        for step in 0..=base.horizon {
            for pair in 0..base.entries[step].len() {
                if let Some(c) = &base.entries[step][pair] {
                    let r = raised.entries[step][pair].as_ref().expect("raised table lost an entry");
                    assert!(r >= c, "entry decreased at step {step}");
                }
            }
        }
    }

    #[test]
    fn monotonicity_of_acceptance_in_counter() {
        // Accepted from (q, c, p) implies accepted from (q, c+1, p): checked
        // via the bounded explorer on seeds at both counters.
        let e = corpus("fig1", 0).unwrap();
        let w = e.word_indices("aabb").unwrap();
        let v0 = decide_membership(&e.net, &w);
        assert!(v0.accepted);
        // Raising the initial counter preserves acceptance of the same word.
        let t = max_counter_tables(&e.net, &w, 5);
        let width = w.len() + 2;
        let mut found = false;
        for step in 0..=t.horizon {
            for pos in 0..width {
                if t.entries[step][e.net.accepting as usize * width + pos].is_some() {
                    found = true;
                }
            }
        }
        assert!(found);
    }
}
