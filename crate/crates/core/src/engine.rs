//! Exact state-complexity sweeps: for a modifier and input sizes, build the
//! monster inputs for every choice of final sets, apply the modifier,
//! minimize, and report the per-choice minimal sizes and their maximum.
//!
//! Because monsters carry every possible letter action, the maximum over all
//! final-set choices is the worst case over all regular operands of the given
//! sizes, so these sweeps compute operational state complexity exactly
//! rather than bounding it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::StateSet;
use crate::dfa::Cdfa;
use crate::modifier::{self, Modifier, Sroot, DEFAULT_CELL_BUDGET};
use crate::monster::{self, MonsterSpec, DEFAULT_LETTER_BUDGET};
use crate::transform::{transformation_count, Transformation};
use crate::{Error, Result};

/// Caps on enumeration sizes that grow exponentially in the inputs.
const FAMILY_CAP: u128 = 1 << 20;
const SCAN_CAP: u128 = 10_000;

/// Knobs shared by the sweep entry points.
#[derive(Debug, Clone)]
pub struct EngineOptions {
    /// Collapse duplicate letters before minimizing. Letters acting
    /// identically on a monster's output generate the same residuals, so
    /// this never changes a reported size; it only shrinks the alphabet the
    /// minimizer has to walk.
    pub dedupe_letters: bool,
    /// Cell budget handed to [`modifier::apply_with_budget`].
    pub cell_budget: u64,
    /// Letter budget handed to [`monster::build_with_budget`].
    pub letter_budget: u64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            dedupe_letters: true,
            cell_budget: DEFAULT_CELL_BUDGET,
            letter_budget: DEFAULT_LETTER_BUDGET,
        }
    }
}

/// Which final-set tuples a sweep visits.
#[derive(Debug, Clone)]
pub enum FinalsFamily {
    /// Every tuple, in the order produced by [`enumerate_all_finals`].
    All,
    /// One representative per relabeling class, from [`canonical_family`].
    Canonical,
    /// An explicit list of tuples, visited in the given order.
    Explicit(Vec<Vec<StateSet>>),
}

/// One row of a sweep: a final-set tuple and the minimal automaton size for
/// the language the modifier produces on that monster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceRow {
    pub finals: Vec<StateSet>,
    pub min_states: usize,
}

/// Result of [`state_complexity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityReport {
    pub modifier: String,
    pub sizes: Vec<usize>,
    /// One row per visited final-set tuple, in visiting order.
    pub rows: Vec<ChoiceRow>,
    /// Largest `min_states` over all rows.
    pub maximum: usize,
    /// The final-set tuples attaining `maximum`, in visiting order.
    pub argmax: Vec<Vec<StateSet>>,
}

/// Diagnostics for a single final-set choice, from [`witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    /// Minimal automaton, over the full monster alphabet.
    pub minimized: Cdfa,
    /// States of the applied automaton reachable from its initial state.
    pub accessible_states: usize,
    /// Accessible-state classes that actually merged (size at least two),
    /// listed in minimal-state order using the applied automaton's encoded
    /// state indices.
    pub merged_classes: Vec<Vec<usize>>,
    /// Final states of the minimal automaton.
    pub final_count: usize,
}

/// Closed forms checked by [`closed_form_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// `star.inter` on sizes `(n1, n2)`: `3/4 * 2^(n1*n2)`.
    StarInter,
    /// `sroot` on size `n`: `n^n - n(n-1)/2`, with `2` pinned at `n = 2`.
    Sroot,
}

/// Result of [`closed_form_check`]: the swept value next to the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormCheck {
    pub engine: usize,
    /// `None` when the closed form is undefined or overflows `u128`.
    pub formula: Option<u128>,
    pub matches: bool,
}

/// Result of [`two_letter_sqrt_scan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtScanReport {
    /// Number of automata scanned.
    pub automata: u64,
    /// Largest minimal size of the square-root language over the scan.
    pub maximum: usize,
    /// The sweep value for monsters of the same size, `n^n - n(n-1)/2`.
    pub bound: u128,
    /// True when `maximum` is strictly below `bound`, i.e. two letters do
    /// not suffice to reach the monster worst case.
    pub strictly_below: bool,
}

/// Enumerates every tuple of final sets for the given sizes, in the order
/// where component 1 varies fastest and, within a component, subsets are
/// ordered by their bitmask value.
pub fn enumerate_all_finals(sizes: &[usize]) -> Result<Vec<Vec<StateSet>>> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument(String::from("no input sizes")));
    }
    let mut bits = 0u32;
    for &n in sizes {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        bits += n as u32;
    }
    if bits >= 128 || (1u128 << bits) > FAMILY_CAP {
        return Err(Error::Budget {
            what: "final-set family",
            required: 1u128.checked_shl(bits).unwrap_or(u128::MAX),
            limit: FAMILY_CAP,
        });
    }
    let total = 1u64 << bits;
    let mut family = Vec::with_capacity(total as usize);
    for index in 0..total {
        let mut tuple = Vec::with_capacity(sizes.len());
        let mut rest = index;
        for &n in sizes {
            let mask = rest & ((1u64 << n) - 1);
            rest >>= n;
            tuple.push(StateSet::from_mask(n, mask).expect("mask fits capacity"));
        }
        family.push(tuple);
    }
    Ok(family)
}

/// Enumerates one final-set tuple per equivalence class under relabelings
/// of each component's states that fix the initial state `0`. Within a
/// component such a relabeling can produce any set of the same size and the
/// same membership of `0`, so representatives are the down-filled sets: for
/// each size, `{0,..,c-1}` and `{1,..,c}` where they exist.
///
/// Sweeping this family instead of all tuples is only sound for modifiers
/// whose language semantics commutes with letter renamings, which holds for
/// every built-in except `fto1`; the sweep tests pin this down.
pub fn canonical_family(sizes: &[usize]) -> Result<Vec<Vec<StateSet>>> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument(String::from("no input sizes")));
    }
    let mut per_component: Vec<Vec<StateSet>> = Vec::with_capacity(sizes.len());
    let mut total: u128 = 1;
    for &n in sizes {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        if n > 63 {
            return Err(Error::OutOfRange {
                what: "component size",
                value: n,
                bound: 64,
            });
        }
        let mut masks = Vec::with_capacity(2 * n);
        masks.push(0u64);
        for c in 1..=n {
            masks.push((1u64 << c) - 1);
            if c < n {
                masks.push(((1u64 << c) - 1) << 1);
            }
        }
        masks.sort_unstable();
        per_component.push(
            masks
                .into_iter()
                .map(|mask| StateSet::from_mask(n, mask).expect("mask fits capacity"))
                .collect(),
        );
        total = total.saturating_mul(2 * n as u128);
    }
    if total > FAMILY_CAP {
        return Err(Error::Budget {
            what: "final-set family",
            required: total,
            limit: FAMILY_CAP,
        });
    }
    let mut family = Vec::with_capacity(total as usize);
    let mut odometer = alloc::vec![0usize; sizes.len()];
    loop {
        family.push(
            odometer
                .iter()
                .zip(&per_component)
                .map(|(&i, list)| list[i].clone())
                .collect(),
        );
        let mut position = 0;
        loop {
            if position == sizes.len() {
                return Ok(family);
            }
            odometer[position] += 1;
            if odometer[position] < per_component[position].len() {
                break;
            }
            odometer[position] = 0;
            position += 1;
        }
    }
}

fn choice_label(finals: &[StateSet]) -> String {
    let mut label = String::from("(");
    for (i, f) in finals.iter().enumerate() {
        if i > 0 {
            label.push(',');
        }
        label.push_str(&format!("{f}"));
    }
    label.push(')');
    label
}

/// Minimal automaton size for `m` applied to the monster with the given
/// sizes and final sets. Any failure is wrapped in
/// [`Error::ChoiceFailed`] carrying the final-set tuple.
pub fn evaluate_choice(
    m: &dyn Modifier,
    sizes: &[usize],
    finals: &[StateSet],
    opts: &EngineOptions,
) -> Result<usize> {
    if sizes.len() != m.arity() {
        return Err(Error::ArityMismatch {
            expected: m.arity(),
            got: sizes.len(),
        });
    }
    let run = || -> Result<usize> {
        let spec = MonsterSpec::new(sizes.to_vec(), finals.to_vec())?;
        let inputs = monster::build_with_budget(&spec, opts.letter_budget)?;
        let refs: Vec<&Cdfa> = inputs.iter().collect();
        let applied = modifier::apply_with_budget(m, &refs, opts.cell_budget)?;
        let applied = if opts.dedupe_letters {
            applied.dedupe_letters().0
        } else {
            applied
        };
        Ok(applied.minimize().state_count())
    };
    run().map_err(|source| Error::ChoiceFailed {
        choice: choice_label(finals),
        source: alloc::boxed::Box::new(source),
    })
}

/// Sweeps the final-set family and reports every per-choice minimal size,
/// the maximum, and the choices attaining it.
pub fn state_complexity(
    m: &dyn Modifier,
    sizes: &[usize],
    family: &FinalsFamily,
    opts: &EngineOptions,
) -> Result<ComplexityReport> {
    if sizes.len() != m.arity() {
        return Err(Error::ArityMismatch {
            expected: m.arity(),
            got: sizes.len(),
        });
    }
    let choices = match family {
        FinalsFamily::All => enumerate_all_finals(sizes)?,
        FinalsFamily::Canonical => canonical_family(sizes)?,
        FinalsFamily::Explicit(list) => {
            if list.is_empty() {
                return Err(Error::InvalidArgument(String::from(
                    "empty final-set family",
                )));
            }
            list.clone()
        }
    };
    let mut rows = Vec::with_capacity(choices.len());
    for finals in choices {
        let min_states = evaluate_choice(m, sizes, &finals, opts)?;
        rows.push(ChoiceRow { finals, min_states });
    }
    let maximum = rows.iter().map(|r| r.min_states).max().expect("nonempty");
    let argmax = rows
        .iter()
        .filter(|r| r.min_states == maximum)
        .map(|r| r.finals.clone())
        .collect();
    Ok(ComplexityReport {
        modifier: m.name(),
        sizes: sizes.to_vec(),
        rows,
        maximum,
        argmax,
    })
}

/// Applies `m` to the monster for one final-set choice and reports merge
/// diagnostics. The monster alphabet is kept as is so merged classes and
/// letters line up with encoded monster letters.
pub fn witness(
    m: &dyn Modifier,
    sizes: &[usize],
    finals: &[StateSet],
    opts: &EngineOptions,
) -> Result<WitnessReport> {
    if sizes.len() != m.arity() {
        return Err(Error::ArityMismatch {
            expected: m.arity(),
            got: sizes.len(),
        });
    }
    let spec = MonsterSpec::new(sizes.to_vec(), finals.to_vec())?;
    let inputs = monster::build_with_budget(&spec, opts.letter_budget)?;
    let refs: Vec<&Cdfa> = inputs.iter().collect();
    let applied = modifier::apply_with_budget(m, &refs, opts.cell_budget)?;
    let detail = applied.minimize_detailed();
    let merged_classes = detail
        .classes
        .iter()
        .filter(|class| class.len() >= 2)
        .cloned()
        .collect();
    Ok(WitnessReport {
        final_count: detail.dfa.finals().len(),
        minimized: detail.dfa,
        accessible_states: detail.accessible_states,
        merged_classes,
    })
}

/// Runs the sweep behind a closed form and compares the two values.
pub fn closed_form_check(
    form: ClosedForm,
    sizes: &[usize],
    opts: &EngineOptions,
) -> Result<ClosedFormCheck> {
    let (engine, formula) = match form {
        ClosedForm::StarInter => {
            let m = modifier::parse("star.inter")?;
            let report = state_complexity(m.as_ref(), sizes, &FinalsFamily::All, opts)?;
            let exponent = sizes[0].checked_mul(sizes[1]).ok_or(Error::Overflow {
                what: "state space exponent",
            })?;
            let formula = if exponent >= 2 {
                1u128
                    .checked_shl((exponent - 2) as u32)
                    .and_then(|p| p.checked_mul(3))
            } else {
                None
            };
            (report.maximum, formula)
        }
        ClosedForm::Sroot => {
            let report = state_complexity(&Sroot, sizes, &FinalsFamily::All, opts)?;
            let n = sizes[0];
            let formula = if n == 2 {
                Some(2)
            } else {
                let pairs = (n as u128 * (n as u128 - 1)) / 2;
                (n as u128)
                    .checked_pow(n as u32)
                    .map(|power| power - pairs)
            };
            (report.maximum, formula)
        }
    };
    Ok(ClosedFormCheck {
        engine,
        matches: formula == Some(engine as u128),
        formula,
    })
}

/// Minimal sizes of square-root languages over every two-letter automaton
/// with `n` states and initial state `0`, compared against the monster
/// sweep value for the same size.
pub fn two_letter_sqrt_scan(n: usize) -> Result<SqrtScanReport> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let count = transformation_count(n).ok_or(Error::Overflow {
        what: "transformation count",
    })? as u128;
    let total = count * count * (1u128 << n);
    if total > SCAN_CAP {
        return Err(Error::Budget {
            what: "two-letter scan automata",
            required: total,
            limit: SCAN_CAP,
        });
    }
    let count = count as u64;
    let mut maximum = 0;
    for ia in 0..count {
        let ta = Transformation::decode(n, ia)?;
        for ib in 0..count {
            let tb = Transformation::decode(n, ib)?;
            let columns = [ta.clone(), tb.clone()];
            for fmask in 0..(1u64 << n) {
                let finals = StateSet::from_mask(n, fmask)?;
                let dfa = Cdfa::from_columns(n, &columns, 0, finals)?;
                let applied = modifier::apply(&Sroot, &[&dfa])?;
                maximum = maximum.max(applied.minimize().state_count());
            }
        }
    }
    let pairs = (n as u128 * (n as u128 - 1)) / 2;
    let bound = (n as u128)
        .checked_pow(n as u32)
        .map(|power| power - pairs)
        .ok_or(Error::Overflow {
            what: "transformation count",
        })?;
    Ok(SqrtScanReport {
        automata: total as u64,
        maximum,
        bound,
        strictly_below: (maximum as u128) < bound,
    })
}
