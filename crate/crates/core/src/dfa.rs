//! Complete deterministic finite automata over integer letters, with the
//! algorithms the rest of the crate leans on: runs, accessible part, Moore
//! minimization, language equivalence, and alphabet surgery.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::StateSet;
use crate::transform::Transformation;
use crate::{Error, Result};

/// The `(size, initial, finals)` triplet of an automaton: everything about it
/// except the transitions. Modifiers consume inputs through this view plus
/// the per-letter transformations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateConfig {
    pub size: usize,
    pub initial: usize,
    pub finals: StateSet,
}

/// A complete DFA: every state has exactly one target per letter.
///
/// States are `0, .., state_count-1` and letters are `0, .., letter_count-1`.
/// Letter labels are display metadata only; equality ignores them.
#[derive(Clone, Eq)]
pub struct Cdfa {
    letter_count: usize,
    state_count: usize,
    initial: usize,
    finals: StateSet,
    /// Row-major: entry `q * letter_count + a` is the target of `(q, a)`.
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Cdfa {
    fn eq(&self, other: &Self) -> bool {
        self.letter_count == other.letter_count
            && self.state_count == other.state_count
            && self.initial == other.initial
            && self.finals == other.finals
            && self.table == other.table
    }
}

impl core::fmt::Debug for Cdfa {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Cdfa")
            .field("letters", &self.letter_count)
            .field("states", &self.state_count)
            .field("initial", &self.initial)
            .field("finals", &self.finals)
            .field("table", &self.table)
            .finish()
    }
}

impl Cdfa {
    /// Builds an automaton from its flat transition table
    /// (`table[q * letter_count + a]` is the target of `(q, a)`).
    pub fn new(
        letter_count: usize,
        state_count: usize,
        initial: usize,
        finals: StateSet,
        table: Vec<usize>,
    ) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::EmptyDomain);
        }
        if letter_count == 0 {
            return Err(Error::InvalidArgument(String::from(
                "alphabet must have at least one letter",
            )));
        }
        if initial >= state_count {
            return Err(Error::OutOfRange {
                what: "initial state",
                value: initial,
                bound: state_count,
            });
        }
        if finals.capacity() != state_count {
            return Err(Error::DomainMismatch {
                left: finals.capacity(),
                right: state_count,
            });
        }
        if table.len() != state_count * letter_count {
            return Err(Error::InvalidArgument(alloc::format!(
                "transition table has {} entries, expected {}",
                table.len(),
                state_count * letter_count
            )));
        }
        for &target in &table {
            if target >= state_count {
                return Err(Error::OutOfRange {
                    what: "transition target",
                    value: target,
                    bound: state_count,
                });
            }
        }
        Ok(Cdfa {
            letter_count,
            state_count,
            initial,
            finals,
            table,
            labels: None,
        })
    }

    /// Builds an automaton whose letter `a` acts as `columns[a]` on the
    /// states. All columns must share the domain `state_count`.
    pub fn from_columns(
        state_count: usize,
        columns: &[Transformation],
        initial: usize,
        finals: StateSet,
    ) -> Result<Self> {
        let letter_count = columns.len();
        for c in columns {
            if c.degree() != state_count {
                return Err(Error::DomainMismatch {
                    left: c.degree(),
                    right: state_count,
                });
            }
        }
        let mut table = vec![0usize; state_count * letter_count];
        for (a, c) in columns.iter().enumerate() {
            for q in 0..state_count {
                table[q * letter_count + a] = c.apply(q);
            }
        }
        Self::new(letter_count, state_count, initial, finals, table)
    }

    /// Attaches display labels, one per letter.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.letter_count {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} labels for {} letters",
                labels.len(),
                self.letter_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn letter_count(&self) -> usize {
        self.letter_count
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(q)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Target of `(q, a)`. Both indices must be in range.
    pub fn step(&self, q: usize, a: usize) -> usize {
        self.table[q * self.letter_count + a]
    }

    /// The action of letter `a` on the state set, as a transformation.
    pub fn letter_action(&self, a: usize) -> Result<Transformation> {
        if a >= self.letter_count {
            return Err(Error::InvalidLetter {
                letter: a,
                letter_count: self.letter_count,
            });
        }
        let image = (0..self.state_count).map(|q| self.step(q, a)).collect();
        Ok(Transformation::from_image(image).expect("table targets are validated states"))
    }

    /// The `(size, initial, finals)` view of this automaton.
    pub fn state_config(&self) -> StateConfig {
        StateConfig {
            size: self.state_count,
            initial: self.initial,
            finals: self.finals.clone(),
        }
    }

    /// State reached from the initial state after reading `word`.
    pub fn run(&self, word: &[usize]) -> Result<usize> {
        let mut q = self.initial;
        for &a in word {
            if a >= self.letter_count {
                return Err(Error::InvalidLetter {
                    letter: a,
                    letter_count: self.letter_count,
                });
            }
            q = self.step(q, a);
        }
        Ok(q)
    }

    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        Ok(self.is_final(self.run(word)?))
    }

    /// The automaton restricted to states reachable from the initial state,
    /// renumbered in breadth-first discovery order (letters in increasing
    /// order), plus the map from new state indices to original ones.
    pub fn accessible_part(&self) -> (Cdfa, Vec<usize>) {
        let mut new_of_old: Vec<Option<usize>> = vec![None; self.state_count];
        let mut old_of_new: Vec<usize> = Vec::new();
        let mut queue = VecDeque::new();
        new_of_old[self.initial] = Some(0);
        old_of_new.push(self.initial);
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.letter_count {
                let target = self.step(q, a);
                if new_of_old[target].is_none() {
                    new_of_old[target] = Some(old_of_new.len());
                    old_of_new.push(target);
                    queue.push_back(target);
                }
            }
        }
        let n = old_of_new.len();
        let mut table = vec![0usize; n * self.letter_count];
        let mut finals = StateSet::empty(n);
        for (new_q, &old_q) in old_of_new.iter().enumerate() {
            if self.is_final(old_q) {
                finals.insert(new_q);
            }
            for a in 0..self.letter_count {
                table[new_q * self.letter_count + a] =
                    new_of_old[self.step(old_q, a)].expect("successor of a reachable state");
            }
        }
        let dfa = Cdfa {
            letter_count: self.letter_count,
            state_count: n,
            initial: 0,
            finals,
            table,
            labels: self.labels.clone(),
        };
        (dfa, old_of_new)
    }

    /// The minimal automaton of the same language, states renumbered
    /// canonically (breadth-first from the initial state).
    pub fn minimize(&self) -> Cdfa {
        self.minimize_detailed().dfa
    }

    /// Minimization together with diagnostics: the accessible-state count
    /// before merging and, for each minimal state, the original states that
    /// collapsed onto it.
    pub fn minimize_detailed(&self) -> Minimization {
        let (acc, old_of_new) = self.accessible_part();
        let (block_of, block_count) = moore_partition(&acc);

        // Quotient automaton over blocks, numbered by first occurrence.
        let mut rep_of_block = vec![usize::MAX; block_count];
        for (q, &b) in block_of.iter().enumerate() {
            if rep_of_block[b] == usize::MAX {
                rep_of_block[b] = q;
            }
        }
        let mut table = vec![0usize; block_count * acc.letter_count];
        let mut finals = StateSet::empty(block_count);
        for b in 0..block_count {
            let rep = rep_of_block[b];
            if acc.is_final(rep) {
                finals.insert(b);
            }
            for a in 0..acc.letter_count {
                table[b * acc.letter_count + a] = block_of[acc.step(rep, a)];
            }
        }
        let quotient = Cdfa {
            letter_count: acc.letter_count,
            state_count: block_count,
            initial: block_of[acc.initial],
            finals,
            table,
            labels: self.labels.clone(),
        };
        // The quotient of an accessible automaton is accessible; this pass
        // only renumbers blocks into canonical breadth-first order.
        let (dfa, block_order) = quotient.accessible_part();
        debug_assert_eq!(dfa.state_count, block_count);

        let mut canonical_of_block = vec![0usize; block_count];
        for (canonical, &b) in block_order.iter().enumerate() {
            canonical_of_block[b] = canonical;
        }
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); block_count];
        for q in 0..acc.state_count {
            classes[canonical_of_block[block_of[q]]].push(old_of_new[q]);
        }
        for class in &mut classes {
            class.sort_unstable();
        }
        Minimization {
            dfa,
            accessible_states: acc.state_count,
            classes,
        }
    }

    /// True when both automata accept the same language. They must use the
    /// same alphabet.
    pub fn equivalent(&self, other: &Cdfa) -> Result<bool> {
        if self.letter_count != other.letter_count {
            return Err(Error::AlphabetMismatch {
                left: self.letter_count,
                right: other.letter_count,
            });
        }
        let mut visited = StateSet::empty(self.state_count * other.state_count);
        let mut queue = VecDeque::new();
        let start = self.initial * other.state_count + other.initial;
        visited.insert(start);
        queue.push_back((self.initial, other.initial));
        while let Some((p, q)) = queue.pop_front() {
            if self.is_final(p) != other.is_final(q) {
                return Ok(false);
            }
            for a in 0..self.letter_count {
                let (p2, q2) = (self.step(p, a), other.step(q, a));
                let key = p2 * other.state_count + q2;
                if !visited.contains(key) {
                    visited.insert(key);
                    queue.push_back((p2, q2));
                }
            }
        }
        Ok(true)
    }

    /// Relabels letters: input letter `a` becomes output letter `sigma[a]`.
    /// `sigma` must be a permutation of the alphabet.
    pub fn rename_letters(&self, sigma: &[usize]) -> Result<Cdfa> {
        if sigma.len() != self.letter_count {
            return Err(Error::AlphabetMismatch {
                left: sigma.len(),
                right: self.letter_count,
            });
        }
        let mut seen = vec![false; self.letter_count];
        for &b in sigma {
            if b >= self.letter_count {
                return Err(Error::InvalidLetter {
                    letter: b,
                    letter_count: self.letter_count,
                });
            }
            if seen[b] {
                return Err(Error::InvalidArgument(alloc::format!(
                    "letter renaming repeats target {b}"
                )));
            }
            seen[b] = true;
        }
        let mut table = vec![0usize; self.table.len()];
        for q in 0..self.state_count {
            for a in 0..self.letter_count {
                table[q * self.letter_count + sigma[a]] = self.step(q, a);
            }
        }
        let labels = self.labels.as_ref().map(|ls| {
            let mut out = vec![String::new(); self.letter_count];
            for a in 0..self.letter_count {
                out[sigma[a]] = ls[a].clone();
            }
            out
        });
        Ok(Cdfa {
            table,
            labels,
            finals: self.finals.clone(),
            ..*self
        })
    }

    /// Keeps only the listed letters, in the order given; transition columns
    /// outside `keep` are dropped. Entries must be distinct valid letters and
    /// at least one must remain.
    pub fn restrict_alphabet(&self, keep: &[usize]) -> Result<Cdfa> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument(String::from(
                "restriction must keep at least one letter",
            )));
        }
        let mut seen = vec![false; self.letter_count];
        for &a in keep {
            if a >= self.letter_count {
                return Err(Error::InvalidLetter {
                    letter: a,
                    letter_count: self.letter_count,
                });
            }
            if seen[a] {
                return Err(Error::InvalidArgument(alloc::format!(
                    "restriction repeats letter {a}"
                )));
            }
            seen[a] = true;
        }
        let mut table = vec![0usize; self.state_count * keep.len()];
        for q in 0..self.state_count {
            for (new_a, &a) in keep.iter().enumerate() {
                table[q * keep.len() + new_a] = self.step(q, a);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| keep.iter().map(|&a| ls[a].clone()).collect());
        Ok(Cdfa {
            letter_count: keep.len(),
            table,
            labels,
            finals: self.finals.clone(),
            ..*self
        })
    }

    /// All accepted words of length at most `max_len`, in length-then-lexicographic
    /// order. The full enumeration tree (all words up to `max_len`) must fit
    /// in `word_budget`.
    pub fn enumerate_accepted(&self, max_len: usize, word_budget: u64) -> Result<Vec<Vec<usize>>> {
        let mut total: u128 = 0;
        let mut layer: u128 = 1;
        for _ in 0..=max_len {
            total += layer;
            layer = layer.saturating_mul(self.letter_count as u128);
        }
        if total > word_budget as u128 {
            return Err(Error::Budget {
                what: "word enumeration",
                required: total,
                limit: word_budget as u128,
            });
        }
        let mut accepted = Vec::new();
        let mut word = Vec::new();
        for len in 0..=max_len {
            self.enumerate_into(&mut word, self.initial, len, &mut accepted);
        }
        Ok(accepted)
    }

    fn enumerate_into(
        &self,
        word: &mut Vec<usize>,
        q: usize,
        remaining: usize,
        accepted: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            if self.is_final(q) {
                accepted.push(word.clone());
            }
            return;
        }
        for a in 0..self.letter_count {
            word.push(a);
            self.enumerate_into(word, self.step(q, a), remaining - 1, accepted);
            word.pop();
        }
    }

    /// Merges letters with identical transition columns, keeping the first
    /// occurrence of each distinct column. Returns the reduced automaton and
    /// the map from old letters to new ones.
    pub fn dedupe_letters(&self) -> (Cdfa, Vec<usize>) {
        let mut first_of_column: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut keep: Vec<usize> = Vec::new();
        let mut new_of_old = Vec::with_capacity(self.letter_count);
        for a in 0..self.letter_count {
            let column: Vec<usize> = (0..self.state_count).map(|q| self.step(q, a)).collect();
            let next = keep.len();
            let new_a = *first_of_column.entry(column).or_insert(next);
            if new_a == next {
                keep.push(a);
            }
            new_of_old.push(new_a);
        }
        let reduced = self
            .restrict_alphabet(&keep)
            .expect("kept letters are distinct and valid");
        (reduced, new_of_old)
    }
}

/// Result of [`Cdfa::minimize_detailed`]: the minimal automaton, the number of
/// accessible states before merging, and for each minimal state the sorted
/// original state indices it absorbed. Non-accessible originals appear in no
/// class.
#[derive(Clone, Debug)]
pub struct Minimization {
    pub dfa: Cdfa,
    pub accessible_states: usize,
    pub classes: Vec<Vec<usize>>,
}

/// Moore partition refinement on an accessible automaton. Returns the block
/// index of every state and the block count; two states share a block exactly
/// when they accept the same residual language.
fn moore_partition(dfa: &Cdfa) -> (Vec<usize>, usize) {
    let n = dfa.state_count();
    // Initial split: finals vs non-finals, block ids by first occurrence.
    let mut block_of = vec![0usize; n];
    let mut count = {
        let mut ids: BTreeMap<bool, usize> = BTreeMap::new();
        for (q, block) in block_of.iter_mut().enumerate() {
            let next = ids.len();
            *block = *ids.entry(dfa.is_final(q)).or_insert(next);
        }
        ids.len()
    };
    loop {
        let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut next_block = vec![0usize; n];
        for q in 0..n {
            let mut signature = Vec::with_capacity(dfa.letter_count() + 1);
            signature.push(block_of[q]);
            for a in 0..dfa.letter_count() {
                signature.push(block_of[dfa.step(q, a)]);
            }
            let next = ids.len();
            next_block[q] = *ids.entry(signature).or_insert(next);
        }
        let new_count = ids.len();
        block_of = next_block;
        if new_count == count {
            return (block_of, count);
        }
        count = new_count;
    }
}
