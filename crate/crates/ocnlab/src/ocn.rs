//! The 2-OCN machine model: nets, configurations, runs, structural
//! classification and the automaton combinators.
//!
//! A net reads ⊢ w ⊣ on a tape. Position 0 holds the left marker, position
//! `|w|+1` the right marker. Transitions on ⊢ always move right, transitions
//! on ⊣ always move left, so the head stays on the tape. The counter is a
//! nonnegative integer; a step that would make it negative does not exist.
//! Runs do not continue after the accepting state.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// A tape symbol: one of the two end-markers or a letter (alphabet index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TapeSym {
    /// Left end-marker ⊢, written `^` in the file format.
    Lmark,
    /// Right end-marker ⊣, written `$` in the file format.
    Rmark,
    /// Alphabet letter, by index into the net's alphabet.
    Letter(u32),
}

/// A guarded transition `(source, symbol, effect, shift, target)`.
///
/// The effect is an exact integer of arbitrary magnitude (effects are
/// binary-encoded data, so fixed-width arithmetic would be unsound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub source: u32,
    pub symbol: TapeSym,
    pub effect: BigInt,
    /// Head shift, `-1` or `+1`.
    pub shift: i8,
    pub target: u32,
}

/// Structural flags that a net file may declare; each declared flag is
/// validated against [`CounterNet::classify_structure`] at parse time.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DeclaredFlags {
    pub deterministic: bool,
    pub one_way: bool,
    pub sweeping: bool,
}

/// A two-way one-counter net.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterNet {
    pub name: String,
    /// Ordered alphabet; the order is significant (it fixes the segment
    /// order in bounded-language mode).
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: u32,
    pub accepting: u32,
    pub flags: DeclaredFlags,
    pub transitions: Vec<Transition>,
}

/// Errors from net construction and validation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetError {
    #[error("transition on ^ must have shift +1 and on $ shift -1 (transition {0})")]
    MarkerShift(usize),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("state index {0} out of range")]
    StateRange(u32),
    #[error("declared flag `{0}` fails the structural check")]
    FlagViolation(&'static str),
    #[error("head position {0} out of range for word of length {1}")]
    PositionRange(usize, usize),
    #[error("word symbol `{0}` is not in the alphabet")]
    WordSymbol(String),
    #[error("operation requires a deterministic net")]
    NotDeterministic,
    #[error("operation requires all effects to be zero")]
    NonzeroEffect,
    #[error("operation requires a sweeping net")]
    NotSweeping,
}

/// Report produced by [`CounterNet::classify_structure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// At most one transition per (state, symbol) pair.
    pub deterministic: bool,
    /// Every transition on a letter or on ⊢ has shift +1. Transitions on ⊣
    /// are exempt: the marker rule forces their shift to -1, and a final
    /// ⊣-read is the only way a one-way net can test that it consumed the
    /// whole input.
    pub one_way: bool,
    /// The states admit a forward/backward partition in which letter
    /// transitions keep their direction and class, and marker transitions
    /// enter the class matching their forced shift.
    pub sweeping_syntactic: bool,
}

/// A configuration `(state, counter, position)` with counter ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: u32,
    pub counter: BigInt,
    pub pos: usize,
}

impl Config {
    pub fn new(state: u32, counter: impl Into<BigInt>, pos: usize) -> Self {
        let counter = counter.into();
        debug_assert!(!counter.is_negative());
        Config { state, counter, pos }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q{}, {}, {})", self.state, self.counter, self.pos)
    }
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    /// Cut off by a step bound; nothing is known about the continuation.
    Ongoing,
    /// The last configuration is in the accepting state.
    Accepted,
    /// No transition applies at the last configuration.
    Stuck,
    /// Every applicable transition would drive the counter negative.
    CounterViolation,
}

/// A run: a word (without markers) and a nonempty configuration sequence in
/// which each configuration follows from the previous one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    /// Letters as alphabet indices; markers are implicit at positions 0 and
    /// `|word|+1`.
    pub word: Vec<u32>,
    pub steps: Vec<Config>,
    pub termination: Termination,
}

/// Verdict of [`CounterNet::validate_run`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunVerdict {
    Valid,
    Invalid { step: usize, reason: String },
}

impl RunVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, RunVerdict::Valid)
    }
}

impl CounterNet {
    /// Looks up a state index by name.
    pub fn state_index(&self, name: &str) -> Option<u32> {
        self.states.iter().position(|s| s == name).map(|i| i as u32)
    }

    /// Looks up a letter index by name.
    pub fn letter_index(&self, sym: &str) -> Option<u32> {
        self.alphabet.iter().position(|s| s == sym).map(|i| i as u32)
    }

    /// Converts a sequence of symbol names into a word of letter indices.
    pub fn parse_word(&self, syms: &[&str]) -> Result<Vec<u32>, NetError> {
        syms.iter()
            .map(|s| self.letter_index(s).ok_or_else(|| NetError::WordSymbol(s.to_string())))
            .collect()
    }

    /// Renders a word of letter indices back to symbol names.
    pub fn render_word(&self, word: &[u32]) -> String {
        word.iter().map(|&i| self.alphabet[i as usize].as_str()).collect::<Vec<_>>().join("")
    }

    /// Checks the type invariants: marker shifts, endpoint ranges and any
    /// declared flags.
    pub fn validate(&self) -> Result<(), NetError> {
        let n = self.states.len() as u32;
        if self.initial >= n {
            return Err(NetError::StateRange(self.initial));
        }
        if self.accepting >= n {
            return Err(NetError::StateRange(self.accepting));
        }
        for (i, t) in self.transitions.iter().enumerate() {
            if t.source >= n {
                return Err(NetError::StateRange(t.source));
            }
            if t.target >= n {
                return Err(NetError::StateRange(t.target));
            }
            match t.symbol {
                TapeSym::Lmark if t.shift != 1 => return Err(NetError::MarkerShift(i)),
                TapeSym::Rmark if t.shift != -1 => return Err(NetError::MarkerShift(i)),
                TapeSym::Letter(l) if l as usize >= self.alphabet.len() => {
                    return Err(NetError::UnknownSymbol(format!("#{l}")))
                }
                _ => {}
            }
            if t.shift != 1 && t.shift != -1 {
                return Err(NetError::MarkerShift(i));
            }
        }
        let report = self.classify_structure();
        if self.flags.deterministic && !report.deterministic {
            return Err(NetError::FlagViolation("deterministic"));
        }
        if self.flags.one_way && !report.one_way {
            return Err(NetError::FlagViolation("one-way"));
        }
        if self.flags.sweeping && !report.sweeping_syntactic {
            return Err(NetError::FlagViolation("sweeping"));
        }
        Ok(())
    }

    /// Classifies the net structurally. Pure; never fails.
    pub fn classify_structure(&self) -> StructureReport {
        let mut seen: HashMap<(u32, TapeSym), u32> = HashMap::new();
        let mut deterministic = true;
        for t in &self.transitions {
            if *seen.entry((t.source, t.symbol)).or_insert(0) >= 1 {
                deterministic = false;
            }
            *seen.get_mut(&(t.source, t.symbol)).unwrap() += 1;
        }
        let one_way = self
            .transitions
            .iter()
            .all(|t| t.shift == 1 || t.symbol == TapeSym::Rmark);
        StructureReport {
            deterministic,
            one_way,
            sweeping_syntactic: self.sweeping_partition().is_some(),
        }
    }

    /// Tries to 2-color the states into forward/backward classes.
    ///
    /// Constraints: a letter transition with shift +1 pins source and target
    /// forward, with shift -1 backward; a ⊢-transition pins its target
    /// forward and a ⊣-transition pins its target backward (the head leaves
    /// a marker in the direction the marker forces). Unconstrained states
    /// stay unassigned. Returns `forward[i]` per state, defaulting to true.
    pub fn sweeping_partition(&self) -> Option<Vec<bool>> {
        // None = unconstrained, Some(true) = forward, Some(false) = backward.
        let mut class: Vec<Option<bool>> = vec![None; self.states.len()];
        let mut assign = |state: u32, fwd: bool, class: &mut Vec<Option<bool>>| -> bool {
            match class[state as usize] {
                None => {
                    class[state as usize] = Some(fwd);
                    true
                }
                Some(c) => c == fwd,
            }
        };
        for t in &self.transitions {
            let ok = match t.symbol {
                TapeSym::Letter(_) => {
                    let fwd = t.shift == 1;
                    assign(t.source, fwd, &mut class) && assign(t.target, fwd, &mut class)
                }
                TapeSym::Lmark => assign(t.target, true, &mut class),
                TapeSym::Rmark => assign(t.target, false, &mut class),
            };
            if !ok {
                return None;
            }
        }
        Some(class.into_iter().map(|c| c.unwrap_or(true)).collect())
    }

    /// Tape symbol under position `pos` for `word` (0 = ⊢, `|w|+1` = ⊣).
    pub fn tape_symbol(word: &[u32], pos: usize) -> TapeSym {
        if pos == 0 {
            TapeSym::Lmark
        } else if pos == word.len() + 1 {
            TapeSym::Rmark
        } else {
            TapeSym::Letter(word[pos - 1])
        }
    }

    /// All configurations reachable in one step, counter kept nonnegative.
    /// No successors are produced from the accepting state.
    pub fn successors(&self, word: &[u32], cfg: &Config) -> Result<Vec<Config>, NetError> {
        if cfg.pos > word.len() + 1 {
            return Err(NetError::PositionRange(cfg.pos, word.len()));
        }
        if cfg.state == self.accepting {
            return Ok(Vec::new());
        }
        let sym = Self::tape_symbol(word, cfg.pos);
        let mut out = Vec::new();
        for t in &self.transitions {
            if t.source != cfg.state || t.symbol != sym {
                continue;
            }
            let counter = &cfg.counter + &t.effect;
            if counter.is_negative() {
                continue;
            }
            let pos = (cfg.pos as i64 + t.shift as i64) as usize;
            out.push(Config { state: t.target, counter, pos });
        }
        Ok(out)
    }

    /// Validates a run: a nonempty configuration sequence in which each
    /// adjacent pair is licensed by the transition relation, plus
    /// consistency of the claimed termination.
    pub fn validate_run(&self, run: &Run) -> RunVerdict {
        if run.steps.is_empty() {
            return RunVerdict::Invalid { step: 0, reason: "empty configuration sequence".into() };
        }
        for (i, c) in run.steps.iter().enumerate() {
            if c.counter.is_negative() {
                return RunVerdict::Invalid { step: i, reason: "negative counter".into() };
            }
            if c.pos > run.word.len() + 1 {
                return RunVerdict::Invalid { step: i, reason: "position out of range".into() };
            }
        }
        for i in 0..run.steps.len() - 1 {
            let succ = match self.successors(&run.word, &run.steps[i]) {
                Ok(s) => s,
                Err(e) => return RunVerdict::Invalid { step: i, reason: e.to_string() },
            };
            if !succ.contains(&run.steps[i + 1]) {
                return RunVerdict::Invalid {
                    step: i + 1,
                    reason: "configuration does not follow from the previous one".into(),
                };
            }
        }
        if run.termination == Termination::Accepted
            && run.steps.last().unwrap().state != self.accepting
        {
            return RunVerdict::Invalid {
                step: run.steps.len() - 1,
                reason: "claimed accepted but last state is not accepting".into(),
            };
        }
        RunVerdict::Valid
    }

    /// The reverse net: each letter transition `(q, σ, e, h, q')` becomes
    /// `(q', σ, -e, -h, q)`; initial and accepting states swap; all marker
    /// transitions are dropped.
    pub fn reverse_net(&self) -> CounterNet {
        let transitions = self
            .transitions
            .iter()
            .filter(|t| matches!(t.symbol, TapeSym::Letter(_)))
            .map(|t| Transition {
                source: t.target,
                symbol: t.symbol,
                effect: -&t.effect,
                shift: -t.shift,
                target: t.source,
            })
            .collect();
        CounterNet {
            name: format!("{}_rev", self.name),
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initial: self.accepting,
            accepting: self.initial,
            flags: DeclaredFlags::default(),
            transitions,
        }
    }

    /// The counter-stripped projection: same shape, every effect 0.
    pub fn strip_counter(&self) -> CounterNet {
        let mut net = self.clone();
        for t in &mut net.transitions {
            t.effect = BigInt::zero();
        }
        net.flags = DeclaredFlags::default();
        net
    }

    /// True if every effect is zero.
    pub fn is_counterless(&self) -> bool {
        self.transitions.iter().all(|t| t.effect.is_zero())
    }

    /// Transitions from `state` on `sym`, in declaration order.
    pub fn transitions_on(&self, state: u32, sym: TapeSym) -> impl Iterator<Item = &Transition> {
        self.transitions.iter().filter(move |t| t.source == state && t.symbol == sym)
    }

    /// Runs `first` to acceptance, then continues as `second` from
    /// `(second.initial, current counter, position 0)`.
    ///
    /// `first` must be deterministic and reset-disciplined: every accepting
    /// run finishes with a ⊢ read at counter 0, checkable with
    /// [`check_reset_discipline`]. First's accepting ⊢ reads splice with
    /// second's initial ⊢ transitions, so the continuation sees exactly the
    /// initial configuration of `second`. Under the precondition the
    /// language of the result is `L(first) ∩ L(second)`.
    pub fn sequence_conjunction(first: &CounterNet, second: &CounterNet) -> Result<CounterNet, NetError> {
        if !first.classify_structure().deterministic {
            return Err(NetError::NotDeterministic);
        }
        debug_assert_eq!(first.alphabet, second.alphabet);
        if first.initial == first.accepting {
            // `first` accepts instantly at the initial configuration, so the
            // conjunction is exactly `second`.
            return Ok(second.clone());
        }
        let off = first.states.len() as u32;
        let mut states = first.states.clone();
        states.extend(second.states.iter().map(|s| format!("{}'", s)));
        let accepting = off + second.accepting;
        let mut transitions = Vec::new();
        for t in &first.transitions {
            if t.source == first.accepting {
                continue; // runs do not continue after the accepting state
            }
            if t.target == first.accepting {
                // Under reset discipline only ⊢ reads enter the accepting
                // state; any other entry can never fire and is dropped.
                if t.symbol != TapeSym::Lmark {
                    continue;
                }
                if second.initial == second.accepting {
                    transitions.push(Transition { target: accepting, ..t.clone() });
                } else {
                    for t2 in second.transitions_on(second.initial, TapeSym::Lmark) {
                        transitions.push(Transition {
                            source: t.source,
                            symbol: TapeSym::Lmark,
                            effect: &t.effect + &t2.effect,
                            shift: 1,
                            target: t2.target + off,
                        });
                    }
                }
                continue;
            }
            transitions.push(t.clone());
        }
        for t in &second.transitions {
            let mut t = t.clone();
            t.source += off;
            t.target += off;
            transitions.push(t);
        }
        Ok(CounterNet {
            name: format!("{}_then_{}", first.name, second.name),
            alphabet: first.alphabet.clone(),
            states,
            initial: first.initial,
            accepting,
            flags: DeclaredFlags::default(),
            transitions,
        })
    }
}

/// Empirically checks the reset-discipline precondition of
/// [`CounterNet::sequence_conjunction`]: for every word up to `len_cap`
/// accepted by the deterministic net, the acceptance decision is a ⊢ read
/// (the step before acceptance sits at position 0) taken at counter 0.
pub fn check_reset_discipline(net: &CounterNet, len_cap: usize, step_cap: usize) -> Result<bool, NetError> {
    if !net.classify_structure().deterministic {
        return Err(NetError::NotDeterministic);
    }
    let k = net.alphabet.len() as u32;
    let mut words: Vec<Vec<u32>> = vec![Vec::new()];
    let mut i = 0;
    while i < words.len() {
        let w = words[i].clone();
        if w.len() < len_cap {
            for a in 0..k {
                let mut next = w.clone();
                next.push(a);
                words.push(next);
            }
        }
        i += 1;
    }
    for w in &words {
        let run = deterministic_closure(net, w, step_cap);
        if run.termination == Termination::Accepted {
            if run.steps.len() < 2 {
                continue; // initial state accepting: trivially at (0, 0)
            }
            let before = &run.steps[run.steps.len() - 2];
            let last = run.steps.last().unwrap();
            if before.pos != 0 || !last.counter.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Follows the unique run of a deterministic net from the initial
/// configuration, up to `step_cap` steps.
pub fn deterministic_closure(net: &CounterNet, word: &[u32], step_cap: usize) -> Run {
    let mut steps = vec![Config::new(net.initial, 0, 0)];
    let mut termination = Termination::Ongoing;
    for _ in 0..step_cap {
        let cur = steps.last().unwrap();
        if cur.state == net.accepting {
            termination = Termination::Accepted;
            break;
        }
        let sym = CounterNet::tape_symbol(word, cur.pos);
        let mut chosen = None;
        let mut blocked = false;
        for t in net.transitions_on(cur.state, sym) {
            let counter = &cur.counter + &t.effect;
            if counter.is_negative() {
                blocked = true;
                continue;
            }
            chosen = Some(Config {
                state: t.target,
                counter,
                pos: (cur.pos as i64 + t.shift as i64) as usize,
            });
            break;
        }
        match chosen {
            Some(c) => steps.push(c),
            None => {
                termination = if blocked { Termination::CounterViolation } else { Termination::Stuck };
                break;
            }
        }
    }
    if steps.last().unwrap().state == net.accepting {
        termination = Termination::Accepted;
    }
    Run { word: word.to_vec(), steps, termination }
}

/// Rewrites a sweeping net so that acceptance happens only on reading ⊢ with
/// effect 0, completing a backward sweep first where necessary.
///
/// The language is unchanged: the added sweeps carry effect 0 and the head
/// can always complete them.
pub fn normalize_sweep_accept(net: &CounterNet) -> Result<CounterNet, NetError> {
    if net.sweeping_partition().is_none() {
        return Err(NetError::NotSweeping);
    }
    if net.initial == net.accepting {
        // Accepts every word instantly; the normalized equivalent is the
        // all-accepting sweeper.
        let mut out = CounterNet {
            name: format!("{}_norm", net.name),
            alphabet: net.alphabet.clone(),
            states: vec!["fwd".into(), "bwd".into(), "acc".into()],
            initial: 0,
            accepting: 2,
            flags: DeclaredFlags::default(),
            transitions: Vec::new(),
        };
        let z = BigInt::zero();
        out.transitions.push(Transition { source: 0, symbol: TapeSym::Lmark, effect: z.clone(), shift: 1, target: 0 });
        for l in 0..net.alphabet.len() as u32 {
            out.transitions.push(Transition { source: 0, symbol: TapeSym::Letter(l), effect: z.clone(), shift: 1, target: 0 });
            out.transitions.push(Transition { source: 1, symbol: TapeSym::Letter(l), effect: z.clone(), shift: -1, target: 1 });
        }
        out.transitions.push(Transition { source: 0, symbol: TapeSym::Rmark, effect: z.clone(), shift: -1, target: 1 });
        out.transitions.push(Transition { source: 1, symbol: TapeSym::Lmark, effect: z, shift: 1, target: 2 });
        return Ok(out);
    }
    // Already in shape: every transition into the accepting state reads ⊢
    // with effect 0, and the accepting state has no outgoing transitions.
    let already = net.transitions.iter().all(|t| {
        (t.target != net.accepting || (t.symbol == TapeSym::Lmark && t.effect.is_zero()))
            && t.source != net.accepting
    });
    if already {
        return Ok(net.clone());
    }
    let off = net.states.len() as u32;
    let (acc_fwd, acc_bwd, acc_new) = (off, off + 1, off + 2);
    let mut states = net.states.clone();
    states.extend(["acc_fwd".into(), "acc_bwd".into(), "acc_final".into()]);
    let z = BigInt::zero();
    let mut transitions = Vec::new();
    for t in &net.transitions {
        if t.source == net.accepting {
            continue;
        }
        let mut t = t.clone();
        if t.target == net.accepting {
            // Redirect by travel direction: finish the current sweep
            // neutrally, then sweep back and accept at ⊢.
            t.target = if t.shift == 1 { acc_fwd } else { acc_bwd };
        }
        transitions.push(t);
    }
    for l in 0..net.alphabet.len() as u32 {
        transitions.push(Transition { source: acc_fwd, symbol: TapeSym::Letter(l), effect: z.clone(), shift: 1, target: acc_fwd });
        transitions.push(Transition { source: acc_bwd, symbol: TapeSym::Letter(l), effect: z.clone(), shift: -1, target: acc_bwd });
    }
    transitions.push(Transition { source: acc_fwd, symbol: TapeSym::Rmark, effect: z.clone(), shift: -1, target: acc_bwd });
    transitions.push(Transition { source: acc_bwd, symbol: TapeSym::Lmark, effect: z, shift: 1, target: acc_new });
    let out = CounterNet {
        name: format!("{}_norm", net.name),
        alphabet: net.alphabet.clone(),
        states,
        initial: net.initial,
        accepting: acc_new,
        flags: DeclaredFlags::default(),
        transitions,
    };
    debug_assert!(out.sweeping_partition().is_some());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn letter(i: u32) -> TapeSym {
        TapeSym::Letter(i)
    }

    fn simple_net(transitions: Vec<Transition>) -> CounterNet {
        CounterNet {
            name: "t".into(),
            alphabet: vec!["a".into(), "b".into()],
            states: vec!["q0".into(), "q1".into()],
            initial: 0,
            accepting: 1,
            flags: DeclaredFlags::default(),
            transitions,
        }
    }

    #[test]
    fn successors_single_applicable() {
        let net = simple_net(vec![Transition {
            source: 0,
            symbol: letter(0),
            effect: BigInt::from(1),
            shift: 1,
            target: 0,
        }]);
        let succ = net.successors(&[0], &Config::new(0, 0, 1)).unwrap();
        assert_eq!(succ, vec![Config::new(0, 1, 2)]);
    }

    #[test]
    fn successors_blocks_negative_counter() {
        let net = simple_net(vec![Transition {
            source: 0,
            symbol: letter(0),
            effect: BigInt::from(-1),
            shift: 1,
            target: 0,
        }]);
        let succ = net.successors(&[0], &Config::new(0, 0, 1)).unwrap();
        assert!(succ.is_empty());
    }

    #[test]
    fn successors_none_from_accepting() {
        let net = simple_net(vec![Transition {
            source: 1,
            symbol: letter(0),
            effect: BigInt::zero(),
            shift: 1,
            target: 0,
        }]);
        let succ = net.successors(&[0], &Config::new(1, 0, 1)).unwrap();
        assert!(succ.is_empty());
    }

    #[test]
    fn successors_position_out_of_range() {
        let net = simple_net(vec![]);
        assert!(net.successors(&[0], &Config::new(0, 0, 5)).is_err());
    }

    #[test]
    fn fig1_first_step_is_deterministic() {
        let net = corpus::corpus("fig1", 0).unwrap().net;
        let word = net.parse_word(&["a", "b"]).unwrap();
        let succ = net.successors(&word, &Config::new(net.initial, 0, 0)).unwrap();
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].pos, 1);
    }

    #[test]
    fn validate_single_config_run() {
        let net = simple_net(vec![]);
        let run = Run {
            word: vec![],
            steps: vec![Config::new(0, 0, 0)],
            termination: Termination::Stuck,
        };
        assert!(net.validate_run(&run).is_valid());
    }

    #[test]
    fn validate_rejects_forged_counter_dip() {
        let net = simple_net(vec![Transition {
            source: 0,
            symbol: letter(0),
            effect: BigInt::from(-1),
            shift: 1,
            target: 0,
        }]);
        // Pretends the -1 effect from counter 0 lands back on 0.
        let run = Run {
            word: vec![0],
            steps: vec![Config::new(0, 0, 1), Config::new(0, 0, 2)],
            termination: Termination::Stuck,
        };
        match net.validate_run(&run) {
            RunVerdict::Invalid { step: 1, .. } => {}
            v => panic!("expected invalid at step 1, got {v:?}"),
        }
    }

    #[test]
    fn classify_empty_net_all_true() {
        let net = simple_net(vec![]);
        let r = net.classify_structure();
        assert!(r.deterministic && r.one_way && r.sweeping_syntactic);
    }

    #[test]
    fn classify_fig1_deterministic_and_sweeping() {
        let net = corpus::corpus("fig1", 0).unwrap().net;
        let r = net.classify_structure();
        assert!(r.deterministic);
        assert!(r.sweeping_syntactic);
        assert!(!r.one_way);
    }

    #[test]
    fn classify_cor16_one_way() {
        let net = corpus::corpus("cor16", 0).unwrap().net;
        let r = net.classify_structure();
        assert!(r.one_way);
        assert!(!r.deterministic);
    }

    #[test]
    fn reverse_net_maps_and_drops_markers() {
        let mut net = simple_net(vec![
            Transition { source: 0, symbol: letter(0), effect: BigInt::from(3), shift: 1, target: 1 },
            Transition { source: 0, symbol: TapeSym::Lmark, effect: BigInt::zero(), shift: 1, target: 0 },
        ]);
        net.accepting = 1;
        let rev = net.reverse_net();
        assert_eq!(rev.transitions.len(), 1);
        let t = &rev.transitions[0];
        assert_eq!((t.source, t.target, t.shift), (1, 0, -1));
        assert_eq!(t.effect, BigInt::from(-3));
        assert_eq!(rev.initial, 1);
        assert_eq!(rev.accepting, 0);
    }

    #[test]
    fn reverse_net_involution_on_letter_part() {
        let net = corpus::corpus("fig1", 0).unwrap().net;
        let rr = net.reverse_net().reverse_net();
        let letter_only: Vec<_> = net
            .transitions
            .iter()
            .filter(|t| matches!(t.symbol, TapeSym::Letter(_)))
            .cloned()
            .collect();
        for t in &letter_only {
            assert!(rr.transitions.contains(t));
        }
        assert_eq!(rr.transitions.len(), letter_only.len());
        assert_eq!(rr.initial, net.initial);
        assert_eq!(rr.accepting, net.accepting);
    }

    #[test]
    fn strip_counter_idempotent() {
        let net = corpus::corpus("fig1", 0).unwrap().net;
        let s1 = net.strip_counter();
        assert!(s1.is_counterless());
        assert_eq!(s1, s1.strip_counter());
        assert_eq!(s1.transitions.len(), net.transitions.len());
    }

    #[test]
    fn reverse_run_duality() {
        // A valid letter-only fragment of n maps to a valid fragment of
        // reverse_net(n) with counters c_i replaced by (c_first + c_last) - c_i.
        let net = corpus::corpus("fig1", 0).unwrap().net;
        let word = net.parse_word(&["a", "a", "b", "b"]).unwrap();
        let run = deterministic_closure(&net, &word, 200);
        assert_eq!(run.termination, Termination::Accepted);
        // Pick a letter-only fragment: skip the initial ⊢ step and stop
        // before any marker read.
        let frag: Vec<Config> = run.steps[1..=4].to_vec();
        let rev = net.reverse_net();
        let total = &frag.first().unwrap().counter + &frag.last().unwrap().counter;
        let mapped: Vec<Config> = frag
            .iter()
            .rev()
            .map(|c| Config { state: c.state, counter: &total - &c.counter, pos: c.pos })
            .collect();
        for i in 0..mapped.len() - 1 {
            let succ = rev.successors(&word, &mapped[i]).unwrap();
            assert!(succ.contains(&mapped[i + 1]), "duality broken at {i}");
        }
    }

    #[test]
    fn sequence_conjunction_rejects_nondeterministic_first() {
        let net = corpus::corpus("cor16", 0).unwrap().net;
        assert!(matches!(
            CounterNet::sequence_conjunction(&net, &net),
            Err(NetError::NotDeterministic)
        ));
    }

    #[test]
    fn fig1_is_reset_disciplined() {
        let net = corpus::corpus("fig1", 0).unwrap().net;
        assert!(check_reset_discipline(&net, 6, 500).unwrap());
    }

    #[test]
    fn normalize_already_normalized_is_identity() {
        let net = corpus::corpus("fig1", 0).unwrap().net;
        let norm = normalize_sweep_accept(&net).unwrap();
        assert_eq!(norm.states.len(), net.states.len());
    }
}
