//! Word-level oracles for the language operations the built-in modifiers
//! implement. Each oracle answers membership by running the *input* automata
//! only, so it is an independent check on the constructed state spaces.

use alloc::vec::Vec;

use crate::dfa::Cdfa;
use crate::modifier::{self, Modifier};
use crate::{Error, Result};

/// Default cap on words visited by [`exhaustive_agree`].
pub const DEFAULT_WORD_BUDGET: u64 = 1 << 20;

/// The language operations with word-level oracles. These are exactly the
/// built-in modifiers that implement an operation on languages; the
/// final-redirect recipe has no oracle because no language operation matches
/// it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Union,
    Inter,
    Xor,
    Comp,
    Prefin,
    Conc,
    Star,
    Sroot,
    Mirror,
}

impl Operation {
    pub const ALL: [Operation; 9] = [
        Operation::Union,
        Operation::Inter,
        Operation::Xor,
        Operation::Comp,
        Operation::Prefin,
        Operation::Conc,
        Operation::Star,
        Operation::Sroot,
        Operation::Mirror,
    ];

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "union" => Ok(Operation::Union),
            "inter" => Ok(Operation::Inter),
            "xor" => Ok(Operation::Xor),
            "comp" => Ok(Operation::Comp),
            "prefin" => Ok(Operation::Prefin),
            "conc" => Ok(Operation::Conc),
            "star" => Ok(Operation::Star),
            "sroot" => Ok(Operation::Sroot),
            "mirror" => Ok(Operation::Mirror),
            other => Err(Error::UnknownName(alloc::string::String::from(other))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operation::Union => "union",
            Operation::Inter => "inter",
            Operation::Xor => "xor",
            Operation::Comp => "comp",
            Operation::Prefin => "prefin",
            Operation::Conc => "conc",
            Operation::Star => "star",
            Operation::Sroot => "sroot",
            Operation::Mirror => "mirror",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Operation::Union | Operation::Inter | Operation::Xor | Operation::Conc => 2,
            _ => 1,
        }
    }

    /// The built-in modifier that implements this operation.
    pub fn modifier(self) -> alloc::boxed::Box<dyn Modifier> {
        modifier::builtin(self.name()).expect("every operation has a built-in")
    }
}

/// Does `word` belong to the operation applied to the input languages?
/// Decided by running the input automata alone.
pub fn member(op: Operation, inputs: &[&Cdfa], word: &[usize]) -> Result<bool> {
    if inputs.len() != op.arity() {
        return Err(Error::ArityMismatch {
            expected: op.arity(),
            got: inputs.len(),
        });
    }
    if op.arity() == 2 && inputs[0].letter_count() != inputs[1].letter_count() {
        return Err(Error::AlphabetMismatch {
            left: inputs[0].letter_count(),
            right: inputs[1].letter_count(),
        });
    }
    match op {
        Operation::Union => Ok(inputs[0].accepts(word)? || inputs[1].accepts(word)?),
        Operation::Inter => Ok(inputs[0].accepts(word)? && inputs[1].accepts(word)?),
        Operation::Xor => Ok(inputs[0].accepts(word)? != inputs[1].accepts(word)?),
        Operation::Comp => Ok(!inputs[0].accepts(word)?),
        Operation::Prefin => {
            for cut in 0..=word.len() {
                if inputs[0].accepts(&word[..cut])? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Operation::Conc => {
            for cut in 0..=word.len() {
                if inputs[0].accepts(&word[..cut])? && inputs[1].accepts(&word[cut..])? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Operation::Star => {
            // reachable[j]: the prefix of length j splits into factors from
            // the language. The empty word always does.
            let n = word.len();
            let mut reachable = alloc::vec![false; n + 1];
            reachable[0] = true;
            for j in 1..=n {
                for i in 0..j {
                    if reachable[i] && inputs[0].accepts(&word[i..j])? {
                        reachable[j] = true;
                        break;
                    }
                }
            }
            Ok(reachable[n])
        }
        Operation::Sroot => {
            let mut doubled = Vec::with_capacity(word.len() * 2);
            doubled.extend_from_slice(word);
            doubled.extend_from_slice(word);
            inputs[0].accepts(&doubled)
        }
        Operation::Mirror => {
            let reversed: Vec<usize> = word.iter().rev().copied().collect();
            inputs[0].accepts(&reversed)
        }
    }
}

/// Compares `apply(m, inputs)` against the oracle for `op` on every word of
/// length at most `max_len`, in length-then-lexicographic order. Returns the
/// first disagreeing word, or `None` when every word agrees. The full word
/// tree must fit in `word_budget`.
pub fn exhaustive_agree(
    op: Operation,
    m: &dyn Modifier,
    inputs: &[&Cdfa],
    max_len: usize,
    word_budget: u64,
) -> Result<Option<Vec<usize>>> {
    let letter_count = inputs[0].letter_count();
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        total += layer;
        layer = layer.saturating_mul(letter_count as u128);
    }
    if total > word_budget as u128 {
        return Err(Error::Budget {
            what: "oracle word enumeration",
            required: total,
            limit: word_budget as u128,
        });
    }
    let applied = modifier::apply(m, inputs)?;
    let mut word: Vec<usize> = Vec::new();
    for len in 0..=max_len {
        word.clear();
        word.resize(len, 0);
        loop {
            if applied.accepts(&word)? != member(op, inputs, &word)? {
                return Ok(Some(word));
            }
            // Advance the odometer; stop after the last word of this length.
            let mut at = len;
            loop {
                if at == 0 {
                    break;
                }
                at -= 1;
                word[at] += 1;
                if word[at] < letter_count {
                    break;
                }
                word[at] = 0;
            }
            if word.iter().all(|&a| a == 0) {
                break;
            }
        }
    }
    Ok(None)
}
