//! Generated example automata with executable reference predicates.
//!
//! Each entry pairs a net with a predicate over words; the fidelity tests
//! check that net language and predicate agree up to the entry's declared
//! check length. The separator letter that the source constructions write
//! as `#` is spelled `h` here, since `#` starts a comment in the file
//! format.

use crate::membership::{decide_membership, explore_bounded, ExploreOutcome};
use crate::ocn::{CounterNet, DeclaredFlags, TapeSym, Transition};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use thiserror::Error;

/// Incremental net assembly keyed by state names.
pub struct NetBuilder {
    name: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    index: HashMap<String, u32>,
    transitions: Vec<Transition>,
}

impl NetBuilder {
    pub fn new(name: &str, alphabet: &[&str]) -> Self {
        NetBuilder {
            name: name.to_string(),
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            states: Vec::new(),
            index: HashMap::new(),
            transitions: Vec::new(),
        }
    }

    /// Returns the index for a state name, creating it on first use.
    pub fn state(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.states.len() as u32;
        self.states.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    fn sym(&self, s: &str) -> TapeSym {
        match s {
            "^" => TapeSym::Lmark,
            "$" => TapeSym::Rmark,
            _ => TapeSym::Letter(
                self.alphabet.iter().position(|a| a == s).unwrap_or_else(|| panic!("no symbol {s}")) as u32,
            ),
        }
    }

    /// Adds a transition; `sym` is a letter name, `^` or `$`.
    pub fn t(&mut self, src: u32, sym: &str, effect: impl Into<BigInt>, shift: i8, dst: u32) -> &mut Self {
        self.transitions.push(Transition {
            source: src,
            symbol: self.sym(sym),
            effect: effect.into(),
            shift,
            target: dst,
        });
        self
    }

    pub fn build(self, initial: u32, accepting: u32) -> CounterNet {
        let net = CounterNet {
            name: self.name,
            alphabet: self.alphabet,
            states: self.states,
            initial,
            accepting,
            flags: DeclaredFlags::default(),
            transitions: self.transitions,
        };
        net.validate().expect("builder produced an invalid net");
        net
    }
}

/// A corpus net plus its executable reference predicate.
pub struct CorpusEntry {
    pub name: String,
    pub param: u32,
    pub net: CounterNet,
    predicate: Box<dyn Fn(&str) -> bool + Send + Sync>,
    /// Declared agreement horizon for the fidelity suite.
    pub check_len: usize,
}

impl CorpusEntry {
    /// Evaluates the reference predicate on a word given as one char per
    /// letter (all corpus alphabets are single-character).
    pub fn reference(&self, word: &str) -> bool {
        (self.predicate)(word)
    }

    /// Converts a char-词 into letter indices for this entry's net.
    pub fn word_indices(&self, word: &str) -> Option<Vec<u32>> {
        word.chars()
            .map(|c| self.net.letter_index(&c.to_string()))
            .collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("unknown corpus name `{0}`")]
    UnknownName(String),
    #[error("fig4 requires k >= 1")]
    BadParam,
}

/// `{a^n b^n}` by counter-reset: four sweeps, deterministic and sweeping,
/// accepting on the final ⊢ read with counter 0.
fn fig1() -> CounterNet {
    let mut b = NetBuilder::new("fig1", &["a", "b"]);
    let (q0, q1, q2, q3, q4, q5, acc) = (
        b.state("q0"),
        b.state("q1"),
        b.state("q2"),
        b.state("q3"),
        b.state("q4"),
        b.state("q5"),
        b.state("qacc"),
    );
    b.t(q0, "^", 0, 1, q1);
    b.t(q1, "a", 1, 1, q1);
    b.t(q1, "b", -1, 1, q2);
    b.t(q1, "$", 0, -1, q3);
    b.t(q2, "b", -1, 1, q2);
    b.t(q2, "$", 0, -1, q3);
    b.t(q3, "b", 1, -1, q3);
    b.t(q3, "a", -1, -1, q3);
    b.t(q3, "^", 0, 1, q4);
    b.t(q4, "a", 0, 1, q4);
    b.t(q4, "b", 0, 1, q4);
    b.t(q4, "$", 0, -1, q5);
    b.t(q5, "b", 1, -1, q5);
    b.t(q5, "a", -1, -1, q5);
    b.t(q5, "^", 0, 1, acc);
    let mut net = b.build(q0, acc);
    net.flags = DeclaredFlags { deterministic: true, one_way: false, sweeping: true };
    net
}

/// `{a^{m+1} b^m}`: like fig1 but the first `a` is left uncounted on both
/// forward checks, shifting the equality by one.
fn fig1_shifted() -> CounterNet {
    let mut b = NetBuilder::new("fig1_shifted", &["a", "b"]);
    let (s0, e, f, g, h, hp, i, j, jp, acc) = (
        b.state("s0"),
        b.state("e"),
        b.state("f"),
        b.state("g"),
        b.state("h"),
        b.state("hp"),
        b.state("i"),
        b.state("j"),
        b.state("jp"),
        b.state("acc"),
    );
    b.t(s0, "^", 0, 1, e);
    b.t(e, "a", 0, 1, f); // first a uncounted
    b.t(f, "a", 1, 1, f);
    b.t(f, "b", -1, 1, g);
    b.t(g, "b", -1, 1, g);
    b.t(f, "$", 0, -1, h);
    b.t(g, "$", 0, -1, h);
    // Reset sweep; the pending trick skips the word's first a again.
    b.t(h, "b", 1, -1, h);
    b.t(h, "a", 0, -1, hp);
    b.t(hp, "a", -1, -1, hp);
    b.t(hp, "^", 0, 1, i);
    b.t(i, "a", 0, 1, i);
    b.t(i, "b", 0, 1, i);
    b.t(i, "$", 0, -1, j);
    b.t(j, "b", 1, -1, j);
    b.t(j, "a", 0, -1, jp);
    b.t(jp, "a", -1, -1, jp);
    b.t(jp, "^", 0, 1, acc);
    let mut net = b.build(s0, acc);
    net.flags = DeclaredFlags { deterministic: true, one_way: false, sweeping: true };
    net
}

/// The binary-charging family: `L(A_k) = {ab}` but the only accepting run
/// charges the counter to `2^k` by bouncing between ⊢ and the `a`, so the
/// shortest accepting run has length `2^k + O(1)`.
fn fig4(k: u32) -> CounterNet {
    let mut b = NetBuilder::new(&format!("fig4_k{k}"), &["a", "b"]);
    let (q0, q1, q2, q3, q4, acc) = (
        b.state("q0"),
        b.state("q1"),
        b.state("q2"),
        b.state("q3"),
        b.state("q4"),
        b.state("qacc"),
    );
    let big = BigInt::one() << k;
    b.t(q0, "^", 0, 1, q1);
    b.t(q1, "a", 1, -1, q2); // charge: bounce back to ⊢
    b.t(q2, "^", 1, 1, q1);
    b.t(q1, "a", -big, 1, q3); // spend: requires counter >= 2^k
    b.t(q3, "b", 0, 1, q4);
    b.t(q4, "$", 0, -1, acc);
    b.build(q0, acc)
}

/// Words `a^{n_1} h ... h a^{n_k} h` with `n_1 = n_i` for some `i > 1`.
/// Needs a direction change in the middle of the tape: the single visit to
/// the guessed segment is compared against the first one on the way back.
fn example2() -> CounterNet {
    let mut b = NetBuilder::new("example2", &["a", "h"]);
    let (s0, f1, f2, r1, s1, s2, s3, s5, s6, s7, acc) = (
        b.state("s0"),
        b.state("f1"),
        b.state("f2"),
        b.state("r1"),
        b.state("s1"),
        b.state("s2"),
        b.state("s3"),
        b.state("s5"),
        b.state("s6"),
        b.state("s7"),
        b.state("acc"),
    );
    // Format sweep: word must end with the separator.
    b.t(s0, "^", 0, 1, f1);
    b.t(f1, "a", 0, 1, f1);
    b.t(f1, "h", 0, 1, f2);
    b.t(f2, "a", 0, 1, f1);
    b.t(f2, "h", 0, 1, f2);
    b.t(f2, "$", 0, -1, r1);
    b.t(r1, "a", 0, -1, r1);
    b.t(r1, "h", 0, -1, r1);
    b.t(r1, "^", 0, 1, s1);
    // +1 over the first segment; guess segment i at a separator.
    b.t(s1, "a", 1, 1, s1);
    b.t(s1, "h", 0, 1, s2);
    b.t(s1, "h", 0, 1, s3);
    b.t(s2, "a", 0, 1, s2);
    b.t(s2, "h", 0, 1, s2);
    b.t(s2, "h", 0, 1, s3);
    // -1 over segment i, turn at its closing separator, +2 back over it.
    b.t(s3, "a", -1, 1, s3);
    b.t(s3, "h", 0, -1, s5);
    b.t(s5, "a", 2, -1, s5);
    b.t(s5, "h", 0, -1, s6);
    b.t(s5, "h", 0, -1, s7);
    b.t(s6, "a", 0, -1, s6);
    b.t(s6, "h", 0, -1, s6);
    b.t(s6, "h", 0, -1, s7);
    // -2 over what must be the first segment: hitting ⊢ proves it.
    b.t(s7, "a", -2, -1, s7);
    b.t(s7, "^", 0, 1, acc);
    b.build(s0, acc)
}

/// `{a^l b^m c^n | l > m or m > n}` as a one-way net: guess the disjunct at
/// ⊢; strictness comes from leaving the first letter of the bigger block
/// uncounted, and the final ⊣ read checks the whole word was consumed.
fn cor16() -> CounterNet {
    let mut b = NetBuilder::new("cor16", &["a", "b", "c"]);
    let (q0, a1, a2, a3, a4, b1, b2, b3, acc) = (
        b.state("q0"),
        b.state("a1"),
        b.state("a2"),
        b.state("a3"),
        b.state("a4"),
        b.state("b1"),
        b.state("b2"),
        b.state("b3"),
        b.state("acc"),
    );
    // Branch: l > m.
    b.t(q0, "^", 0, 1, a1);
    b.t(a1, "a", 0, 1, a2); // first a uncounted
    b.t(a2, "a", 1, 1, a2);
    b.t(a2, "b", -1, 1, a3);
    b.t(a3, "b", -1, 1, a3);
    b.t(a2, "c", 0, 1, a4);
    b.t(a3, "c", 0, 1, a4);
    b.t(a4, "c", 0, 1, a4);
    b.t(a2, "$", 0, -1, acc);
    b.t(a3, "$", 0, -1, acc);
    b.t(a4, "$", 0, -1, acc);
    // Branch: m > n.
    b.t(q0, "^", 0, 1, b1);
    b.t(b1, "a", 0, 1, b1);
    b.t(b1, "b", 0, 1, b2); // first b uncounted
    b.t(b2, "b", 1, 1, b2);
    b.t(b2, "c", -1, 1, b3);
    b.t(b3, "c", -1, 1, b3);
    b.t(b2, "$", 0, -1, acc);
    b.t(b3, "$", 0, -1, acc);
    let mut net = b.build(q0, acc);
    net.flags = DeclaredFlags { deterministic: false, one_way: true, sweeping: false };
    net
}

const COR13_ALPHABET: [&str; 6] = ["a", "b", "c", "h", "B", "x"];

/// Format bullet for cor13: `a+ h b+ ( c+ | x+ (h B+ x+)* h B+ c+ )`,
/// one forward sweep and a neutral return.
fn cor13_format() -> CounterNet {
    let mut b = NetBuilder::new("cor13_format", &COR13_ALPHABET);
    let (u0, ua0, ua, ub0, ub, uc, ux, ub1, ubb, ret, acc) = (
        b.state("u0"),
        b.state("ua0"),
        b.state("ua"),
        b.state("ub0"),
        b.state("ub"),
        b.state("uc"),
        b.state("ux"),
        b.state("uB0"),
        b.state("uB"),
        b.state("ret"),
        b.state("acc"),
    );
    b.t(u0, "^", 0, 1, ua0);
    b.t(ua0, "a", 0, 1, ua);
    b.t(ua, "a", 0, 1, ua);
    b.t(ua, "h", 0, 1, ub0);
    b.t(ub0, "b", 0, 1, ub);
    b.t(ub, "b", 0, 1, ub);
    b.t(ub, "c", 0, 1, uc);
    b.t(uc, "c", 0, 1, uc);
    b.t(uc, "$", 0, -1, ret);
    b.t(ub, "x", 0, 1, ux);
    b.t(ux, "x", 0, 1, ux);
    b.t(ux, "h", 0, 1, ub1);
    b.t(ub1, "B", 0, 1, ubb);
    b.t(ubb, "B", 0, 1, ubb);
    b.t(ubb, "x", 0, 1, ux);
    b.t(ubb, "c", 0, 1, uc);
    for s in COR13_ALPHABET {
        b.t(ret, s, 0, -1, ret);
    }
    b.t(ret, "^", 0, 1, acc);
    b.build(u0, acc)
}

/// Count bullet for cor13: as many `a`s as separators, checked in both
/// directions over four sweeps.
fn cor13_count() -> CounterNet {
    let mut b = NetBuilder::new("cor13_count", &COR13_ALPHABET);
    let (v0, v1, v2, v3, v4, acc) = (
        b.state("v0"),
        b.state("v1"),
        b.state("v2"),
        b.state("v3"),
        b.state("v4"),
        b.state("acc"),
    );
    b.t(v0, "^", 0, 1, v1);
    for s in COR13_ALPHABET {
        let (e1, e2, e4): (i64, i64, i64) = match s {
            "a" => (1, -1, -1),
            "h" => (-1, 1, 1),
            _ => (0, 0, 0),
        };
        b.t(v1, s, e1, 1, v1);
        b.t(v2, s, e2, -1, v2);
        b.t(v3, s, 0, 1, v3);
        b.t(v4, s, e4, -1, v4);
    }
    b.t(v1, "$", 0, -1, v2);
    b.t(v2, "^", 0, 1, v3);
    b.t(v3, "$", 0, -1, v4);
    b.t(v4, "^", 0, 1, acc);
    b.build(v0, acc)
}

/// First-B bullet for cor13: the first `B` run is as long as the `b` run,
/// via a single round trip with a turn at the end of that run. With no `B`
/// run (n = 1) the check is vacuous and the counter is discharged backward.
fn cor13_first_b() -> CounterNet {
    let mut b = NetBuilder::new("cor13_first_b", &COR13_ALPHABET);
    let (w0, w1, w2, wv, wr, wr2, wr3, w3, w4, w5, w6, w7, w8, acc) = (
        b.state("w0"),
        b.state("w1"),
        b.state("w2"),
        b.state("wv"),
        b.state("wr"),
        b.state("wr2"),
        b.state("wr3"),
        b.state("w3"),
        b.state("w4"),
        b.state("w5"),
        b.state("w6"),
        b.state("w7"),
        b.state("w8"),
        b.state("acc"),
    );
    b.t(w0, "^", 0, 1, w1);
    b.t(w1, "a", 0, 1, w1);
    b.t(w1, "h", 0, 1, w2);
    b.t(w2, "b", 1, 1, w2);
    // n = 1: only c follows; discharge the count on the way back.
    b.t(w2, "c", 0, 1, wv);
    b.t(wv, "c", 0, 1, wv);
    b.t(wv, "$", 0, -1, wr);
    b.t(wr, "c", 0, -1, wr);
    b.t(wr, "b", -1, -1, wr2);
    b.t(wr2, "b", -1, -1, wr2);
    b.t(wr2, "h", 0, -1, wr3);
    b.t(wr3, "a", 0, -1, wr3);
    b.t(wr3, "^", 0, 1, acc);
    // Comparison: -1 over the first B run, turn, +2 back, -2 over the b run.
    b.t(w2, "x", 0, 1, w3);
    b.t(w3, "x", 0, 1, w3);
    b.t(w3, "h", 0, 1, w4);
    b.t(w4, "B", -1, 1, w4);
    b.t(w4, "x", 0, -1, w5);
    b.t(w4, "c", 0, -1, w5);
    b.t(w5, "B", 2, -1, w5);
    b.t(w5, "h", 0, -1, w6);
    b.t(w6, "x", 0, -1, w6);
    b.t(w6, "b", -2, -1, w7);
    b.t(w7, "b", -2, -1, w7);
    b.t(w7, "h", 0, -1, w8);
    b.t(w8, "a", 0, -1, w8);
    b.t(w8, "^", 0, 1, acc);
    b.build(w0, acc)
}

/// Equal-B bullet for cor13: every pair of adjacent `B` runs has equal
/// length; each comparison is a local round trip and the head then walks to
/// the next anchor.
fn cor13_equal_b() -> CounterNet {
    let mut b = NetBuilder::new("cor13_equal_b", &COR13_ALPHABET);
    let (x0, x1, x2, xv, xvb, x3, x4, x5, x6, x7, x8, x9, x10, xv2, xv3, xv4, xv5, acc) = (
        b.state("x0"),
        b.state("x1"),
        b.state("x2"),
        b.state("xv"),
        b.state("xvb"),
        b.state("x3"),
        b.state("x4"),
        b.state("x5"),
        b.state("x6"),
        b.state("x7"),
        b.state("x8"),
        b.state("x9"),
        b.state("x10"),
        b.state("xv2"),
        b.state("xv3"),
        b.state("xv4"),
        b.state("xv5"),
        b.state("acc"),
    );
    b.t(x0, "^", 0, 1, x1);
    b.t(x1, "a", 0, 1, x1);
    b.t(x1, "h", 0, 1, x2);
    b.t(x2, "b", 0, 1, x2);
    // No B runs at all (n = 1): vacuous.
    b.t(x2, "c", 0, 1, xv);
    b.t(xv, "c", 0, 1, xv);
    b.t(xv, "$", 0, -1, xvb);
    for s in COR13_ALPHABET {
        b.t(xvb, s, 0, -1, xvb);
    }
    b.t(xvb, "^", 0, 1, acc);
    // Find the first B run.
    b.t(x2, "x", 0, 1, x3);
    b.t(x3, "x", 0, 1, x3);
    b.t(x3, "h", 0, 1, x4);
    // Anchor: count run t.
    b.t(x4, "B", 1, 1, x4);
    // Run t is last (followed by c): discharge and accept.
    b.t(x4, "c", 0, 1, xv2);
    b.t(xv2, "c", 0, 1, xv2);
    b.t(xv2, "$", 0, -1, xv3);
    b.t(xv3, "c", 0, -1, xv3);
    b.t(xv3, "B", -1, -1, xv4);
    b.t(xv4, "B", -1, -1, xv4);
    b.t(xv4, "h", 0, -1, xv5);
    for s in COR13_ALPHABET {
        b.t(xv5, s, 0, -1, xv5);
    }
    b.t(xv5, "^", 0, 1, acc);
    // Compare with run t+1.
    b.t(x4, "x", 0, 1, x5);
    b.t(x5, "x", 0, 1, x5);
    b.t(x5, "h", 0, 1, x6);
    b.t(x6, "B", -1, 1, x6);
    b.t(x6, "x", 0, -1, x7);
    b.t(x6, "c", 0, -1, x7);
    b.t(x7, "B", 2, -1, x7);
    b.t(x7, "h", 0, -1, x8);
    b.t(x8, "x", 0, -1, x8);
    b.t(x8, "B", -2, -1, x9);
    b.t(x9, "B", -2, -1, x9);
    // Turn forward at the h before run t and walk to the next anchor.
    b.t(x9, "h", 0, 1, x10);
    b.t(x10, "B", 0, 1, x10);
    b.t(x10, "x", 0, 1, x10);
    b.t(x10, "h", 0, 1, x4);
    b.build(x0, acc)
}

/// Dyck prefixes over a (open) / b (close).
fn prop12_p() -> CounterNet {
    let mut b = NetBuilder::new("prop12_P", &["a", "b"]);
    let (p0, p1, p2, acc) = (b.state("p0"), b.state("p1"), b.state("p2"), b.state("acc"));
    b.t(p0, "^", 0, 1, p1);
    b.t(p1, "a", 1, 1, p1);
    b.t(p1, "b", -1, 1, p1);
    b.t(p1, "$", 0, -1, p2);
    b.t(p2, "a", -1, -1, p2);
    b.t(p2, "b", 1, -1, p2);
    b.t(p2, "^", 0, 1, acc);
    b.build(p0, acc)
}

/// `a* P'` where `P'` is the role-swapped prefix language; a `P'` word can
/// never start with `a`, so the split point is the first `b`.
fn prop12_ap() -> CounterNet {
    let mut b = NetBuilder::new("prop12_aP", &["a", "b"]);
    let (r0, r1, r2, acc) = (b.state("r0"), b.state("r1"), b.state("r2"), b.state("acc"));
    b.t(r0, "^", 0, 1, r1);
    b.t(r1, "a", 0, 1, r1);
    b.t(r1, "b", 1, 1, r2);
    b.t(r2, "b", 1, 1, r2);
    b.t(r2, "a", -1, 1, r2);
    b.t(r1, "$", 0, -1, acc);
    b.t(r2, "$", 0, -1, acc);
    b.build(r0, acc)
}

/// `a^+` over a unary alphabet; small sweeping net for reduction tests.
fn all_a() -> CounterNet {
    let mut b = NetBuilder::new("all_a", &["a"]);
    let (q0, e, f, bk, acc) =
        (b.state("q0"), b.state("e"), b.state("f"), b.state("bk"), b.state("acc"));
    b.t(q0, "^", 0, 1, e);
    b.t(e, "a", 0, 1, f);
    b.t(f, "a", 0, 1, f);
    b.t(f, "$", 0, -1, bk);
    b.t(bk, "a", 0, -1, bk);
    b.t(bk, "^", 0, 1, acc);
    b.build(q0, acc)
}

/// Accepts every word over {a, b} with one full round trip.
fn accept_all() -> CounterNet {
    let mut b = NetBuilder::new("accept_all", &["a", "b"]);
    let (q0, f, bk, acc) = (b.state("q0"), b.state("f"), b.state("bk"), b.state("acc"));
    b.t(q0, "^", 0, 1, f);
    b.t(f, "a", 0, 1, f);
    b.t(f, "b", 0, 1, f);
    b.t(f, "$", 0, -1, bk);
    b.t(bk, "a", 0, -1, bk);
    b.t(bk, "b", 0, -1, bk);
    b.t(bk, "^", 0, 1, acc);
    b.build(q0, acc)
}

/// No transitions at all; the empty language.
fn empty_net() -> CounterNet {
    let mut b = NetBuilder::new("empty", &["a", "b"]);
    let q0 = b.state("q0");
    let q1 = b.state("q1");
    b.build(q0, q1)
}

fn is_dyck_prefix(word: &str, open: char) -> bool {
    let mut bal: i64 = 0;
    for c in word.chars() {
        bal += if c == open { 1 } else { -1 };
        if bal < 0 {
            return false;
        }
    }
    true
}

/// Reference predicate for example2.
fn example2_member(word: &str) -> bool {
    if word.is_empty() || !word.ends_with('h') {
        return false;
    }
    if word.chars().any(|c| c != 'a' && c != 'h') {
        return false;
    }
    let segs: Vec<usize> = word.split('h').map(|s| s.len()).collect();
    // split leaves a trailing empty piece after the final h
    let segs = &segs[..segs.len() - 1];
    segs.len() >= 2 && segs[1..].iter().any(|&n| n == segs[0])
}

fn cor16_member(word: &str) -> bool {
    let (mut l, mut m, mut n) = (0usize, 0usize, 0usize);
    let mut phase = 0;
    for c in word.chars() {
        let p = match c {
            'a' => 0,
            'b' => 1,
            'c' => 2,
            _ => return false,
        };
        if p < phase {
            return false;
        }
        phase = p;
        match p {
            0 => l += 1,
            1 => m += 1,
            _ => n += 1,
        }
    }
    l > m || m > n
}

/// The structured family for cor13, one word per (n, m).
pub fn cor13_word(n: usize, m: usize) -> String {
    assert!(n >= 1 && m >= 1);
    let mut w = String::new();
    w.push_str(&"a".repeat(n));
    w.push('h');
    w.push_str(&"b".repeat(m));
    if n == 1 {
        w.push_str(&"c".repeat(m));
    } else {
        w.push_str(&"x".repeat(m));
        for i in 2..n {
            w.push('h');
            w.push_str(&"B".repeat(m));
            w.push_str(&"x".repeat(i * m));
        }
        w.push('h');
        w.push_str(&"B".repeat(m));
        w.push_str(&"c".repeat(n * m));
    }
    w
}

fn cor13_member(word: &str) -> bool {
    for n in 1..=word.len() {
        for m in 1..=word.len() {
            if cor13_word(n, m).len() > word.len() + 1 && m > word.len() {
                break;
            }
            if cor13_word(n, m) == word {
                return true;
            }
        }
    }
    false
}

fn prop12_k_member(word: &str) -> bool {
    if word.chars().any(|c| c != 'a' && c != 'b') {
        return false;
    }
    if !is_dyck_prefix(word, 'a') {
        return false;
    }
    // Split at the first b; the remainder must be a swapped prefix word.
    let split = word.find('b').unwrap_or(word.len());
    is_dyck_prefix(&word[split..], 'b')
}

/// Returns the named corpus entry. `param` is only meaningful for `fig4`
/// (the charge exponent k >= 1).
pub fn corpus(name: &str, param: u32) -> Result<CorpusEntry, CorpusError> {
    let entry = match name {
        "fig1" => CorpusEntry {
            name: name.into(),
            param: 0,
            net: fig1(),
            predicate: Box::new(|w| {
                let n = w.chars().take_while(|&c| c == 'a').count();
                w.len() == 2 * n && w[n..].chars().all(|c| c == 'b')
            }),
            check_len: 14,
        },
        "fig1_shifted" => CorpusEntry {
            name: name.into(),
            param: 0,
            net: fig1_shifted(),
            predicate: Box::new(|w| {
                let n = w.chars().take_while(|&c| c == 'a').count();
                n >= 1 && w.len() == 2 * n - 1 && w[n..].chars().all(|c| c == 'b')
            }),
            check_len: 11,
        },
        "fig4" => {
            if param < 1 {
                return Err(CorpusError::BadParam);
            }
            CorpusEntry {
                name: name.into(),
                param,
                net: fig4(param),
                predicate: Box::new(|w| w == "ab"),
                check_len: 4,
            }
        }
        "example2" => CorpusEntry {
            name: name.into(),
            param: 0,
            net: example2(),
            predicate: Box::new(example2_member),
            check_len: 9,
        },
        "cor16" => CorpusEntry {
            name: name.into(),
            param: 0,
            net: cor16(),
            predicate: Box::new(cor16_member),
            check_len: 9,
        },
        "cor13" => CorpusEntry {
            name: name.into(),
            param: 0,
            net: cor13(),
            predicate: Box::new(cor13_member),
            check_len: 12,
        },
        "prop12_K" => CorpusEntry {
            name: name.into(),
            param: 0,
            net: prop12_k(),
            predicate: Box::new(prop12_k_member),
            check_len: 10,
        },
        "all_a" => CorpusEntry {
            name: name.into(),
            param: 0,
            net: all_a(),
            predicate: Box::new(|w| !w.is_empty() && w.chars().all(|c| c == 'a')),
            check_len: 8,
        },
        "accept_all" => CorpusEntry {
            name: name.into(),
            param: 0,
            net: accept_all(),
            predicate: Box::new(|w| w.chars().all(|c| c == 'a' || c == 'b')),
            check_len: 8,
        },
        "empty" => CorpusEntry {
            name: name.into(),
            param: 0,
            net: empty_net(),
            predicate: Box::new(|_| false),
            check_len: 8,
        },
        other => return Err(CorpusError::UnknownName(other.into())),
    };
    Ok(entry)
}

/// The compositional cor13 net: five reset-disciplined deterministic
/// checkers chained with sequence_conjunction. The last two bullets turn in
/// the middle of the tape, so the result is deliberately not sweeping.
fn cor13() -> CounterNet {
    let parts = [cor13_format(), cor13_count(), cor13_first_b(), cor13_equal_b(), cor13_growth_chain()];
    let mut net = parts[parts.len() - 1].clone();
    for part in parts[..parts.len() - 1].iter().rev() {
        net = CounterNet::sequence_conjunction(part, &net).expect("cor13 chain");
    }
    net.name = "cor13".into();
    net
}

/// Growth bullet for cor13: each middle run (the b run first, then every B
/// run) plus the x run on its left equals the x run on its right; the right
/// run of the last step is the c run. Together with the other bullets this
/// forces x runs of lengths m, 2m, ... and a final c run of length n*m.
fn cor13_growth_chain() -> CounterNet {
    let mut b = NetBuilder::new("cor13_growth", &COR13_ALPHABET);
    let y0 = b.state("y0");
    let y1 = b.state("y1");
    let m0 = b.state("m0"); // counting the b run
    let m0x = b.state("m0x"); // -1 leg over the first x run
    let m0c = b.state("m0c"); // -1 leg over the c run (n = 1)
    let t0 = b.state("t0"); // +2 back over x
    let t0c = b.state("t0c"); // +2 back over c
    let u0 = b.state("u0"); // -2 back over b
    let u0c = b.state("u0c");
    let walk0 = b.state("walk0"); // reposition to the first x-run anchor
    let ax = b.state("ax"); // counting x run t (+1), first x already counted
    let ah = b.state("ah"); // counting B run t (+1)
    let arx = b.state("arx"); // -1 leg over x run t+1
    let arc = b.state("arc"); // -1 leg over the c run (final step)
    let bt = b.state("bt"); // +2 back over x run t+1
    let btc = b.state("btc"); // +2 back over c
    let bb = b.state("bb"); // -2 back over B run t
    let bbc = b.state("bbc");
    let bh = b.state("bh"); // -2 back over x run t
    let bhc = b.state("bhc");
    let walk = b.state("walk"); // reposition over x run t
    let walk2 = b.state("walk2"); // reposition over B run t
    let fin = b.state("fin"); // final leftward sweep to ⊢
    let acc = b.state("acc");

    b.t(y0, "^", 0, 1, y1);
    b.t(y1, "a", 0, 1, y1);
    b.t(y1, "h", 0, 1, m0);

    // Base step: 0 + |b run| = |right run|.
    b.t(m0, "b", 1, 1, m0);
    b.t(m0, "x", -1, 1, m0x);
    b.t(m0x, "x", -1, 1, m0x);
    b.t(m0x, "h", 0, -1, t0);
    b.t(t0, "x", 2, -1, t0);
    b.t(t0, "b", -2, -1, u0);
    b.t(u0, "b", -2, -1, u0);
    b.t(u0, "h", 0, 1, walk0);
    b.t(walk0, "b", 0, 1, walk0);
    b.t(walk0, "x", 1, 1, ax);
    b.t(m0, "c", -1, 1, m0c);
    b.t(m0c, "c", -1, 1, m0c);
    b.t(m0c, "$", 0, -1, t0c);
    b.t(t0c, "c", 2, -1, t0c);
    b.t(t0c, "b", -2, -1, u0c);
    b.t(u0c, "b", -2, -1, u0c);
    b.t(u0c, "h", 0, -1, fin);

    // Chain step: |x run t| + |B run t| = |right run|.
    b.t(ax, "x", 1, 1, ax);
    b.t(ax, "h", 0, 1, ah);
    b.t(ah, "B", 1, 1, ah);
    b.t(ah, "x", -1, 1, arx);
    b.t(arx, "x", -1, 1, arx);
    b.t(arx, "h", 0, -1, bt);
    b.t(bt, "x", 2, -1, bt);
    b.t(bt, "B", -2, -1, bb);
    b.t(bb, "B", -2, -1, bb);
    b.t(bb, "h", 0, -1, bh);
    b.t(bh, "x", -2, -1, bh);
    // Turn at the cell left of x run t: a B for t >= 2, the last b for t = 1.
    b.t(bh, "B", 0, 1, walk);
    b.t(bh, "b", 0, 1, walk);
    b.t(walk, "x", 0, 1, walk);
    b.t(walk, "h", 0, 1, walk2);
    b.t(walk2, "B", 0, 1, walk2);
    b.t(walk2, "x", 1, 1, ax); // first x of run t+1: new anchor
    // Final step: right run is the c run.
    b.t(ah, "c", -1, 1, arc);
    b.t(arc, "c", -1, 1, arc);
    b.t(arc, "$", 0, -1, btc);
    b.t(btc, "c", 2, -1, btc);
    b.t(btc, "B", -2, -1, bbc);
    b.t(bbc, "B", -2, -1, bbc);
    b.t(bbc, "h", 0, -1, bhc);
    b.t(bhc, "x", -2, -1, bhc);
    b.t(bhc, "B", 0, -1, fin);
    b.t(bhc, "b", 0, -1, fin);

    for s in COR13_ALPHABET {
        b.t(fin, s, 0, -1, fin);
    }
    b.t(fin, "^", 0, 1, acc);
    b.build(y0, acc)
}

/// K = P ∩ a*P' assembled with sequence_conjunction; sweeping and
/// deterministic.
fn prop12_k() -> CounterNet {
    let mut net = CounterNet::sequence_conjunction(&prop12_p(), &prop12_ap()).expect("prop12_K chain");
    net.name = "prop12_K".into();
    net
}

/// First accepted word in length-lexicographic order up to `word_cap`
/// letters, using the polynomial membership decision.
pub fn witness_search(net: &CounterNet, word_cap: usize) -> Option<Vec<u32>> {
    let k = net.alphabet.len() as u32;
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    for _len in 0..=word_cap {
        for w in &frontier {
            if decide_membership(net, w).accepted {
                return Some(w.clone());
            }
        }
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..k {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    None
}

/// Empirical letter-count probe: the set of Γ-letter counts over accepted
/// words of length at most `length_cap`. Enumeration is restricted to the
/// ordered a_1*...a_k* format when `bounded_format` is set, which keeps it
/// polynomial in the cap.
pub fn length_set_probe(
    net: &CounterNet,
    gamma: &[u32],
    length_cap: usize,
    bounded_format: bool,
) -> Vec<usize> {
    let mut out = std::collections::BTreeSet::new();
    if bounded_format {
        let k = net.alphabet.len();
        // enumerate compositions: counts per letter summing to <= cap
        let mut counts = vec![0usize; k];
        loop {
            let total: usize = counts.iter().sum();
            if total <= length_cap {
                let mut w = Vec::new();
                for (i, &c) in counts.iter().enumerate() {
                    for _ in 0..c {
                        w.push(i as u32);
                    }
                }
                if decide_membership(net, &w).accepted {
                    let g: usize = gamma.iter().map(|&l| counts[l as usize]).sum();
                    out.insert(g);
                }
            }
            // next composition with entries bounded by length_cap
            let mut i = 0;
            loop {
                if i == k {
                    return out.into_iter().collect();
                }
                counts[i] += 1;
                if counts.iter().sum::<usize>() <= length_cap {
                    break;
                }
                counts[i] = 0;
                i += 1;
            }
        }
    }
    let kk = net.alphabet.len() as u32;
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    for len in 0..=length_cap {
        for w in &frontier {
            if decide_membership(net, w).accepted {
                let g = w.iter().filter(|&&l| gamma.contains(&l)).count();
                out.insert(g);
            }
        }
        if len == length_cap {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..kk {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        frontier = next;
    }
    out.into_iter().collect()
}

/// Exhaustively compares net membership with the reference predicate on all
/// words up to `len`; panics with the first disagreement.
pub fn assert_fidelity(entry: &CorpusEntry, len: usize) {
    let k = entry.net.alphabet.len() as u32;
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    for l in 0..=len {
        for w in &frontier {
            let rendered = entry.net.render_word(w);
            let want = entry.reference(&rendered);
            let got = decide_membership(&entry.net, w).accepted;
            assert_eq!(got, want, "{} disagrees on {:?} (len {l})", entry.name, rendered);
        }
        if l == len {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..k {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        frontier = next;
    }
}

/// Convenience wrapper for tests that need a definite oracle verdict.
pub fn oracle_definite(net: &CounterNet, word: &[u32], step_cap: usize, counter_cap: u64) -> Option<bool> {
    match explore_bounded(net, word, step_cap, counter_cap) {
        ExploreOutcome::Accepted(_) => Some(true),
        ExploreOutcome::RejectedExhaustively => Some(false),
        ExploreOutcome::Unknown(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_reference_examples() {
        let e = corpus("fig1", 0).unwrap();
        assert!(e.reference("aabb"));
        assert!(e.reference(""));
        assert!(!e.reference("abab"));
        assert!(!e.reference("aab"));
    }

    #[test]
    fn cor13_word_shapes() {
        assert_eq!(cor13_word(1, 2), "ahbbcc");
        assert_eq!(cor13_word(2, 1), "aahbxhBcc");
        assert_eq!(cor13_word(3, 1), "aaahbxhBxxhBccc");
        assert_eq!(cor13_word(2, 2), "aahbbxxhBBcccc");
    }

    #[test]
    fn example2_reference_examples() {
        assert!(example2_member("aahaaahaah"));
        assert!(!example2_member("aahaaah"));
        assert!(example2_member("hh"));
        assert!(!example2_member("h"));
        assert!(!example2_member("aahaa"));
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(matches!(corpus("nope", 0), Err(CorpusError::UnknownName(_))));
        assert!(matches!(corpus("fig4", 0), Err(CorpusError::BadParam)));
    }
}
