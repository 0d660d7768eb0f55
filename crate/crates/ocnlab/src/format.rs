//! Line-oriented text format for nets.
//!
//! ```text
//! ocn <name>
//! alphabet: <sym> <sym> ...        # order is significant
//! states: <id> <id> ...
//! init: <id>
//! acc: <id>
//! flags: [deterministic] [one-way] [sweeping]     # optional
//! trans: <src> <symbol|^|$> <effect> <+1|-1> <dst>
//! ```
//!
//! `#` starts a comment, `^` is the left end-marker, `$` the right one.
//! Effects are signed decimals of arbitrary size.

use crate::ocn::{CounterNet, DeclaredFlags, NetError, TapeSym, Transition};
use num_bigint::BigInt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown state `{name}`")]
    UnknownState { line: usize, name: String },
    #[error("line {line}: unknown symbol `{name}`")]
    UnknownSymbol { line: usize, name: String },
    #[error("missing section `{0}`")]
    MissingSection(&'static str),
    #[error(transparent)]
    Net(#[from] NetError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Parses a net from its text form. Total over well-formed input,
/// position-reporting over malformed input.
pub fn parse_automaton(text: &str) -> Result<CounterNet, ParseError> {
    let mut name = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut states: Option<Vec<String>> = None;
    let mut init = None;
    let mut acc = None;
    let mut flags = DeclaredFlags::default();
    let mut raw_trans: Vec<(usize, Vec<String>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ocn") {
            if rest.starts_with(char::is_whitespace) || rest.is_empty() {
                name = Some(rest.trim().to_string());
                continue;
            }
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(line_no, format!("expected `key: ...`, got `{line}`")))?;
        let toks: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
        match key.trim() {
            "alphabet" => alphabet = Some(toks),
            "states" => states = Some(toks),
            "init" => {
                init = Some((line_no, toks.first().cloned().ok_or_else(|| syntax(line_no, "missing state"))?))
            }
            "acc" => {
                acc = Some((line_no, toks.first().cloned().ok_or_else(|| syntax(line_no, "missing state"))?))
            }
            "flags" => {
                for t in &toks {
                    match t.as_str() {
                        "deterministic" => flags.deterministic = true,
                        "one-way" => flags.one_way = true,
                        "sweeping" => flags.sweeping = true,
                        other => return Err(syntax(line_no, format!("unknown flag `{other}`"))),
                    }
                }
            }
            "trans" => {
                if toks.len() != 5 {
                    return Err(syntax(line_no, "expected `trans: <src> <sym> <effect> <+1|-1> <dst>`"));
                }
                raw_trans.push((line_no, toks));
            }
            other => return Err(syntax(line_no, format!("unknown section `{other}`"))),
        }
    }

    let name = name.ok_or(ParseError::MissingSection("ocn"))?;
    let alphabet = alphabet.ok_or(ParseError::MissingSection("alphabet"))?;
    let states = states.ok_or(ParseError::MissingSection("states"))?;
    let (init_line, init_name) = init.ok_or(ParseError::MissingSection("init"))?;
    let (acc_line, acc_name) = acc.ok_or(ParseError::MissingSection("acc"))?;

    let state_index = |line: usize, n: &str| -> Result<u32, ParseError> {
        states
            .iter()
            .position(|s| s == n)
            .map(|i| i as u32)
            .ok_or_else(|| ParseError::UnknownState { line, name: n.to_string() })
    };
    let sym_index = |line: usize, n: &str| -> Result<TapeSym, ParseError> {
        match n {
            "^" => Ok(TapeSym::Lmark),
            "$" => Ok(TapeSym::Rmark),
            _ => alphabet
                .iter()
                .position(|s| s == n)
                .map(|i| TapeSym::Letter(i as u32))
                .ok_or_else(|| ParseError::UnknownSymbol { line, name: n.to_string() }),
        }
    };

    let mut transitions = Vec::with_capacity(raw_trans.len());
    for (line, toks) in raw_trans {
        let source = state_index(line, &toks[0])?;
        let symbol = sym_index(line, &toks[1])?;
        let effect = BigInt::from_str(&toks[2])
            .map_err(|_| syntax(line, format!("bad effect `{}`", toks[2])))?;
        let shift = match toks[3].as_str() {
            "+1" | "1" => 1i8,
            "-1" => -1i8,
            other => return Err(syntax(line, format!("bad shift `{other}`"))),
        };
        let target = state_index(line, &toks[4])?;
        match symbol {
            TapeSym::Lmark if shift != 1 => return Err(NetError::MarkerShift(transitions.len()).into()),
            TapeSym::Rmark if shift != -1 => return Err(NetError::MarkerShift(transitions.len()).into()),
            _ => {}
        }
        transitions.push(Transition { source, symbol, effect, shift, target });
    }

    let net = CounterNet {
        name,
        alphabet,
        states,
        initial: state_index(init_line, &init_name)?,
        accepting: state_index(acc_line, &acc_name)?,
        flags,
        transitions,
    };
    net.validate()?;
    Ok(net)
}

/// Canonical text form; `parse ∘ serialize` is the identity and
/// `serialize ∘ parse` is idempotent.
pub fn serialize_automaton(net: &CounterNet) -> String {
    let mut out = String::new();
    out.push_str(&format!("ocn {}\n", net.name));
    out.push_str(&format!("alphabet: {}\n", net.alphabet.join(" ")));
    out.push_str(&format!("states: {}\n", net.states.join(" ")));
    out.push_str(&format!("init: {}\n", net.states[net.initial as usize]));
    out.push_str(&format!("acc: {}\n", net.states[net.accepting as usize]));
    let mut fl = Vec::new();
    if net.flags.deterministic {
        fl.push("deterministic");
    }
    if net.flags.one_way {
        fl.push("one-way");
    }
    if net.flags.sweeping {
        fl.push("sweeping");
    }
    if !fl.is_empty() {
        out.push_str(&format!("flags: {}\n", fl.join(" ")));
    }
    for t in &net.transitions {
        let sym = match t.symbol {
            TapeSym::Lmark => "^".to_string(),
            TapeSym::Rmark => "$".to_string(),
            TapeSym::Letter(i) => net.alphabet[i as usize].clone(),
        };
        let shift = if t.shift == 1 { "+1" } else { "-1" };
        out.push_str(&format!(
            "trans: {} {} {} {} {}\n",
            net.states[t.source as usize], sym, t.effect, shift, net.states[t.target as usize]
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn minimal_single_transition_file() {
        let text = "ocn tiny\nalphabet: a\nstates: q0\ninit: q0\nacc: q0\ntrans: q0 ^ 0 +1 q0\n";
        let net = parse_automaton(text).unwrap();
        assert_eq!(net.transitions.len(), 1);
        assert_eq!(net.states, vec!["q0"]);
    }

    #[test]
    fn marker_shift_violation_reported() {
        let text = "ocn bad\nalphabet: a\nstates: q0 q1\ninit: q0\nacc: q1\ntrans: q0 $ 0 +1 q1\n";
        match parse_automaton(text) {
            Err(ParseError::Net(NetError::MarkerShift(_))) => {}
            other => panic!("expected marker-shift error, got {other:?}"),
        }
    }

    use crate::ocn::NetError;

    #[test]
    fn unknown_state_with_line() {
        let text = "ocn bad\nalphabet: a\nstates: q0\ninit: q0\nacc: q0\ntrans: q0 a 0 +1 q9\n";
        match parse_automaton(text) {
            Err(ParseError::UnknownState { line: 6, name }) => assert_eq!(name, "q9"),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn fig1_parses_deterministic() {
        let entry = corpus::corpus("fig1", 0).unwrap();
        let text = serialize_automaton(&entry.net);
        let net = parse_automaton(&text).unwrap();
        assert!(net.classify_structure().deterministic);
        assert_eq!(net.alphabet, vec!["a", "b"]);
    }

    #[test]
    fn empty_transition_net_round_trips() {
        let text = "ocn empty\nalphabet: a\nstates: q0 q1\ninit: q0\nacc: q1\n";
        let net = parse_automaton(text).unwrap();
        assert!(net.transitions.is_empty());
        assert_eq!(parse_automaton(&serialize_automaton(&net)).unwrap(), net);
    }

    #[test]
    fn serialize_parse_serialize_byte_identical_on_corpus() {
        for name in ["fig1", "fig1_shifted", "cor16", "example2", "prop12_K", "all_a", "empty"] {
            let net = corpus::corpus(name, 0).unwrap().net;
            let s1 = serialize_automaton(&net);
            let reparsed = parse_automaton(&s1).unwrap();
            let s2 = serialize_automaton(&reparsed);
            assert_eq!(s1, s2, "round trip failed for {name}");
            assert_eq!(reparsed, net, "structural identity failed for {name}");
        }
        let fig4 = corpus::corpus("fig4", 7).unwrap().net;
        let s1 = serialize_automaton(&fig4);
        assert_eq!(parse_automaton(&s1).unwrap(), fig4);
    }
}
