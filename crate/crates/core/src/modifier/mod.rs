//! State-space modifiers: recipes that build one automaton out of several in
//! a way that cannot look at letter identities, only at how each letter acts.
//!
//! A modifier of arity `k` fixes, for every tuple of input state counts, an
//! output state space (encoded as an integer range), an initial state, a
//! final-state set, and a lift that turns `k` input letter actions into one
//! output letter action. Applying it to `k` automata over a shared alphabet
//! instantiates the lift column by column. Because the lift sees only the
//! `(size, initial, finals)` configurations and the action tuple, two letters
//! that act identically always produce identical output columns.

mod builtins;

pub use builtins::{builtin, Comp, Conc, Fto1, Inter, Mirror, Prefin, Sroot, Star, Union, Xor};

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::StateSet;
use crate::dfa::{Cdfa, StateConfig};
use crate::transform::Transformation;
use crate::{Error, Result};

/// Default cap on output table cells (`states x letters`) for [`apply`].
pub const DEFAULT_CELL_BUDGET: u64 = 1 << 20;

/// A `k`-ary state-space modifier.
///
/// `state_count`, `initial`, `finals`, and `lift` may only depend on the
/// input configurations (and, for `lift`, the letter actions); nothing else
/// about the inputs is visible. `initial`, `finals`, and `lift` may assume
/// the configurations passed were accepted by `state_count`, i.e. the output
/// space fits in `usize`.
pub trait Modifier: Send + Sync {
    /// Number of input automata.
    fn arity(&self) -> usize;

    /// Canonical name, matching the chain syntax parsed by [`parse`].
    fn name(&self) -> String;

    /// Output state count for the given input sizes, or `None` on overflow.
    fn state_count(&self, sizes: &[usize]) -> Option<u128>;

    /// Encoded initial state.
    fn initial(&self, cfg: &[StateConfig]) -> usize;

    /// Final states over the encoded output space.
    fn finals(&self, cfg: &[StateConfig]) -> StateSet;

    /// Output action of a letter whose input actions are `actions`.
    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation;
}

/// Applies `m` to input automata over a shared alphabet, with the default
/// cell budget.
pub fn apply(m: &dyn Modifier, inputs: &[&Cdfa]) -> Result<Cdfa> {
    apply_with_budget(m, inputs, DEFAULT_CELL_BUDGET)
}

/// Applies `m` to input automata over a shared alphabet. The output table
/// (`state_count x letter_count` cells) must fit in `cell_budget`.
///
/// The output's states are the modifier's encoded state space in order; no
/// trimming or merging is performed here.
pub fn apply_with_budget(m: &dyn Modifier, inputs: &[&Cdfa], cell_budget: u64) -> Result<Cdfa> {
    if inputs.len() != m.arity() {
        return Err(Error::ArityMismatch {
            expected: m.arity(),
            got: inputs.len(),
        });
    }
    let letter_count = inputs[0].letter_count();
    for input in inputs {
        if input.letter_count() != letter_count {
            return Err(Error::AlphabetMismatch {
                left: letter_count,
                right: input.letter_count(),
            });
        }
    }
    let sizes: Vec<usize> = inputs.iter().map(|a| a.state_count()).collect();
    let space = m.state_count(&sizes).ok_or(Error::Overflow {
        what: "modifier state space",
    })?;
    let cells = space.saturating_mul(letter_count as u128);
    if cells > cell_budget as u128 || space > usize::MAX as u128 {
        return Err(Error::Budget {
            what: "modifier state table cells",
            required: cells,
            limit: cell_budget as u128,
        });
    }
    let space = space as usize;
    let cfg: Vec<StateConfig> = inputs.iter().map(|a| a.state_config()).collect();

    let initial = m.initial(&cfg);
    let finals = m.finals(&cfg);
    let mut table = alloc::vec![0usize; space * letter_count];
    for a in 0..letter_count {
        let actions: Vec<Transformation> = inputs
            .iter()
            .map(|input| input.letter_action(a).expect("letter index in range"))
            .collect();
        let column = m.lift(&cfg, &actions);
        debug_assert_eq!(column.degree(), space);
        for q in 0..space {
            table[q * letter_count + a] = column.apply(q);
        }
    }
    let dfa = Cdfa::new(letter_count, space, initial, finals, table)?;
    match inputs[0].labels() {
        Some(labels) => dfa.with_labels(labels.to_vec()),
        None => Ok(dfa),
    }
}

/// Composition `outer . inner` at input slot `position` (1-based): slot
/// `position` of `outer` is fed the output of `inner`, whose own inputs are
/// spliced into the argument list. The result has arity
/// `outer.arity() + inner.arity() - 1`.
pub fn compose(
    outer: Box<dyn Modifier>,
    position: usize,
    inner: Box<dyn Modifier>,
) -> Result<Box<dyn Modifier>> {
    if position == 0 || position > outer.arity() {
        return Err(Error::OutOfRange {
            what: "composition slot",
            value: position,
            bound: outer.arity() + 1,
        });
    }
    Ok(Box::new(Composed {
        outer,
        position,
        inner,
    }))
}

struct Composed {
    outer: Box<dyn Modifier>,
    /// 1-based slot of `outer` that `inner` fills.
    position: usize,
    inner: Box<dyn Modifier>,
}

impl Composed {
    fn slot(&self) -> usize {
        self.position - 1
    }

    /// Input configurations as `outer` sees them: the slice feeding `inner`
    /// is replaced by the configuration of `inner`'s output.
    fn outer_configs(&self, cfg: &[StateConfig]) -> Vec<StateConfig> {
        let s = self.slot();
        let k2 = self.inner.arity();
        let inner_cfg = &cfg[s..s + k2];
        let inner_sizes: Vec<usize> = inner_cfg.iter().map(|c| c.size).collect();
        let inner_size = self
            .inner
            .state_count(&inner_sizes)
            .expect("caller checked state_count");
        let merged = StateConfig {
            size: inner_size as usize,
            initial: self.inner.initial(inner_cfg),
            finals: self.inner.finals(inner_cfg),
        };
        let mut out: Vec<StateConfig> = Vec::with_capacity(self.outer.arity());
        out.extend_from_slice(&cfg[..s]);
        out.push(merged);
        out.extend_from_slice(&cfg[s + k2..]);
        out
    }
}

impl Modifier for Composed {
    fn arity(&self) -> usize {
        self.outer.arity() + self.inner.arity() - 1
    }

    fn name(&self) -> String {
        if self.position == 1 {
            alloc::format!("{}.{}", self.outer.name(), self.inner.name())
        } else {
            alloc::format!(
                "{}.{}:{}",
                self.outer.name(),
                self.position,
                self.inner.name()
            )
        }
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        let s = self.slot();
        let k2 = self.inner.arity();
        let inner_size = self.inner.state_count(&sizes[s..s + k2])?;
        let inner_size = usize::try_from(inner_size).ok()?;
        let mut outer_sizes: Vec<usize> = Vec::with_capacity(self.outer.arity());
        outer_sizes.extend_from_slice(&sizes[..s]);
        outer_sizes.push(inner_size);
        outer_sizes.extend_from_slice(&sizes[s + k2..]);
        self.outer.state_count(&outer_sizes)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        self.outer.initial(&self.outer_configs(cfg))
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        self.outer.finals(&self.outer_configs(cfg))
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        let s = self.slot();
        let k2 = self.inner.arity();
        let inner_action = self.inner.lift(&cfg[s..s + k2], &actions[s..s + k2]);
        let mut outer_actions: Vec<Transformation> = Vec::with_capacity(self.outer.arity());
        outer_actions.extend_from_slice(&actions[..s]);
        outer_actions.push(inner_action);
        outer_actions.extend_from_slice(&actions[s + k2..]);
        self.outer.lift(&self.outer_configs(cfg), &outer_actions)
    }
}

/// Parses a modifier chain: built-in names joined by `.`, read left to right
/// as composition, each segment optionally prefixed with a 1-based slot as in
/// `star.2:conc`. The slot defaults to 1.
pub fn parse(spec: &str) -> Result<Box<dyn Modifier>> {
    let mut segments = spec.split('.');
    let first = segments
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::InvalidArgument(String::from("empty modifier chain")))?;
    let mut m = builtin(first)?;
    for segment in segments {
        let (position, name) = match segment.split_once(':') {
            Some((pos, name)) => {
                let position: usize = pos.parse().map_err(|_| {
                    Error::InvalidArgument(alloc::format!("invalid slot number {pos:?}"))
                })?;
                (position, name)
            }
            None => (1, segment),
        };
        m = compose(m, position, builtin(name)?)?;
    }
    Ok(m)
}

/// Compares `apply(m, inputs)` against the word-level oracle for `op`,
/// checking every word up to `max_len` with the default word budget. Returns
/// the first disagreeing word, or `None` when all words agree.
pub fn oracle_check(
    m: &dyn Modifier,
    op: crate::oracle::Operation,
    inputs: &[&Cdfa],
    max_len: usize,
) -> Result<Option<Vec<usize>>> {
    crate::oracle::exhaustive_agree(op, m, inputs, max_len, crate::oracle::DEFAULT_WORD_BUDGET)
}

/// A boolean `n1 x n2` matrix wrapped around the encoded subset states of
/// pair-space constructions: bit `x * n2 + y` of the state index is entry
/// `(x, y)`. Handy for reading product-subset states off their encodings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tableau {
    n1: usize,
    n2: usize,
    bits: u64,
}

impl Tableau {
    /// The all-zero tableau. `n1 * n2` must fit the backing mask.
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::EmptyDomain);
        }
        let cells = n1.checked_mul(n2).filter(|&c| c <= 64);
        if cells.is_none() {
            return Err(Error::Overflow {
                what: "tableau cells",
            });
        }
        Ok(Tableau { n1, n2, bits: 0 })
    }

    /// Reads a tableau off an encoded subset state.
    pub fn from_index(n1: usize, n2: usize, index: u64) -> Result<Self> {
        let mut t = Self::new(n1, n2)?;
        let cells = n1 * n2;
        if cells < 64 && (index >> cells) != 0 {
            return Err(Error::OutOfRange {
                what: "tableau index",
                value: index as usize,
                bound: 1usize << cells,
            });
        }
        t.bits = index;
        Ok(t)
    }

    /// The encoded subset state this tableau denotes.
    pub fn index(&self) -> u64 {
        self.bits
    }

    pub fn rows(&self) -> usize {
        self.n1
    }

    pub fn columns(&self) -> usize {
        self.n2
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        debug_assert!(x < self.n1 && y < self.n2);
        self.bits >> (x * self.n2 + y) & 1 != 0
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        debug_assert!(x < self.n1 && y < self.n2);
        let bit = 1u64 << (x * self.n2 + y);
        if value {
            self.bits |= bit;
        } else {
            self.bits &= !bit;
        }
    }

    /// Number of 1 entries.
    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl core::fmt::Display for Tableau {
    /// One row per line, `0`/`1` entries.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for x in 0..self.n1 {
            if x > 0 {
                writeln!(f)?;
            }
            for y in 0..self.n2 {
                write!(f, "{}", self.get(x, y) as u8)?;
            }
        }
        Ok(())
    }
}
