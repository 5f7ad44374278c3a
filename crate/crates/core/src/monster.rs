//! Monster automata: the worst-case inputs for state-complexity sweeps.
//!
//! For sizes `n1, .., nk` the alphabet is the full product of transformation
//! spaces: one letter per tuple `(t1, .., tk)` with `tj` acting on component
//! `j`. Every possible joint behaviour of `k` automata on a letter occurs
//! exactly once, which is what makes maxima over these inputs universal.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::StateSet;
use crate::dfa::Cdfa;
use crate::transform::{transformation_count, Transformation};
use crate::{Error, Result};

/// Default cap on alphabet size for [`build`].
pub const DEFAULT_LETTER_BUDGET: u64 = 50_000;

/// Sizes and final sets of a monster tuple. Component `j`'s transformation
/// index is digit `j` of the letter index, least significant first, in base
/// `nj ^ nj`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonsterSpec {
    sizes: Vec<usize>,
    finals: Vec<StateSet>,
}

impl MonsterSpec {
    /// Validates sizes against final sets. Each final set's universe must be
    /// the matching component size.
    pub fn new(sizes: Vec<usize>, finals: Vec<StateSet>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidArgument(String::from(
                "monster needs at least one component",
            )));
        }
        if sizes.len() != finals.len() {
            return Err(Error::ArityMismatch {
                expected: sizes.len(),
                got: finals.len(),
            });
        }
        for (j, (&n, f)) in sizes.iter().zip(finals.iter()).enumerate() {
            if n == 0 {
                return Err(Error::EmptyDomain);
            }
            if f.capacity() != n {
                return Err(Error::InvalidArgument(alloc::format!(
                    "final set {} has universe {}, component size is {}",
                    j + 1,
                    f.capacity(),
                    n
                )));
            }
        }
        Ok(MonsterSpec { sizes, finals })
    }

    pub fn arity(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn finals(&self) -> &[StateSet] {
        &self.finals
    }

    /// Product of `nj ^ nj` over the components, or `None` on overflow.
    pub fn alphabet_size(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for &n in &self.sizes {
            total = total.checked_mul(transformation_count(n)? as u128)?;
        }
        Some(total)
    }

    /// Decodes a letter index into its per-component transformations.
    pub fn letter_transformations(&self, letter: u64) -> Result<Vec<Transformation>> {
        let total = self.alphabet_size().ok_or(Error::Overflow {
            what: "monster alphabet",
        })?;
        if letter as u128 >= total {
            return Err(Error::InvalidLetter {
                letter: letter as usize,
                letter_count: total as usize,
            });
        }
        let mut rest = letter;
        let mut out = Vec::with_capacity(self.arity());
        for &n in &self.sizes {
            let count = transformation_count(n).expect("alphabet_size checked overflow");
            out.push(Transformation::decode(n, rest % count)?);
            rest /= count;
        }
        Ok(out)
    }

    /// Display label of a letter: bracketed image words of its component
    /// transformations, e.g. `[11,10]` for `([11],[10])`.
    pub fn letter_label(&self, letter: u64) -> Result<String> {
        let parts = self.letter_transformations(letter)?;
        let mut label = String::from("[");
        for (j, t) in parts.iter().enumerate() {
            if j > 0 {
                label.push(',');
            }
            // Strip the per-transformation brackets; the label supplies its own.
            let rendered = alloc::format!("{t}");
            label.push_str(&rendered[1..rendered.len() - 1]);
        }
        label.push(']');
        Ok(label)
    }
}

/// Builds the monster tuple with the default letter budget. Component `j` of
/// the result has `sizes[j]` states, initial state 0, finals `finals[j]`, and
/// one letter per transformation tuple.
pub fn build(spec: &MonsterSpec) -> Result<Vec<Cdfa>> {
    build_with_budget(spec, DEFAULT_LETTER_BUDGET)
}

/// Builds the monster tuple; the shared alphabet must fit in span
/// `letter_budget`.
pub fn build_with_budget(spec: &MonsterSpec, letter_budget: u64) -> Result<Vec<Cdfa>> {
    let total = spec.alphabet_size().ok_or(Error::Overflow {
        what: "monster alphabet",
    })?;
    if total > letter_budget as u128 {
        return Err(Error::Budget {
            what: "monster alphabet letters",
            required: total,
            limit: letter_budget as u128,
        });
    }
    let letter_count = total as usize;
    let mut out = Vec::with_capacity(spec.arity());
    let mut weight: u64 = 1;
    for (j, &n) in spec.sizes.iter().enumerate() {
        let count = transformation_count(n).expect("alphabet_size checked overflow");
        let mut table = alloc::vec![0usize; n * letter_count];
        for letter in 0..letter_count {
            let digit = (letter as u64 / weight) % count;
            let t = Transformation::decode(n, digit).expect("digit below count");
            for q in 0..n {
                table[q * letter_count + letter] = t.apply(q);
            }
        }
        out.push(Cdfa::new(
            letter_count,
            n,
            0,
            spec.finals[j].clone(),
            table,
        )?);
        weight *= count;
    }
    Ok(out)
}
