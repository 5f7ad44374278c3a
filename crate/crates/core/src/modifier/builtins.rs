//! The built-in modifiers: boolean combinations, concatenation, star, square
//! root, reversal, prefix closure, and two degenerate single-input recipes.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::StateSet;
use crate::dfa::StateConfig;
use crate::transform::Transformation;
use crate::{Error, Result};

use super::Modifier;

/// Looks up a built-in by its chain-syntax name.
pub fn builtin(name: &str) -> Result<Box<dyn Modifier>> {
    match name {
        "comp" => Ok(Box::new(Comp)),
        "prefin" => Ok(Box::new(Prefin)),
        "union" => Ok(Box::new(Union)),
        "inter" => Ok(Box::new(Inter)),
        "xor" => Ok(Box::new(Xor)),
        "conc" => Ok(Box::new(Conc)),
        "star" => Ok(Box::new(Star)),
        "sroot" => Ok(Box::new(Sroot)),
        "mirror" => Ok(Box::new(Mirror)),
        "fto1" => Ok(Box::new(Fto1)),
        other => Err(Error::UnknownName(String::from(other))),
    }
}

fn image(t: &Transformation, x: usize) -> usize {
    t.apply(x)
}

/// Mask of a final set; valid because budget checks keep subset-space inputs
/// within mask width.
fn finals_mask(cfg: &StateConfig) -> u64 {
    cfg.finals.to_mask()
}

/// `images[m]` is the image of subset `m` under `t`, as a mask.
fn subset_images(t: &Transformation) -> Vec<usize> {
    let full = 1usize << t.degree();
    let mut images = alloc::vec![0usize; full];
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        images[mask] = images[mask & (mask - 1)] | 1 << image(t, low);
    }
    images
}

/// `preimages[m]` is the preimage of subset `m` under `t`, as a mask.
fn subset_preimages(t: &Transformation) -> Vec<usize> {
    let n = t.degree();
    let mut point = alloc::vec![0usize; n];
    for q in 0..n {
        point[image(t, q)] |= 1 << q;
    }
    let full = 1usize << n;
    let mut preimages = alloc::vec![0usize; full];
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        preimages[mask] = preimages[mask & (mask - 1)] | point[low];
    }
    preimages
}

fn pair(q1: usize, q2: usize, n2: usize) -> usize {
    q1 * n2 + q2
}

fn pair_space(sizes: &[usize]) -> Option<u128> {
    (sizes[0] as u128).checked_mul(sizes[1] as u128)
}

fn pair_finals(cfg: &[StateConfig], keep: impl Fn(bool, bool) -> bool) -> StateSet {
    let (n1, n2) = (cfg[0].size, cfg[1].size);
    let mut finals = StateSet::empty(n1 * n2);
    for q1 in 0..n1 {
        for q2 in 0..n2 {
            if keep(cfg[0].finals.contains(q1), cfg[1].finals.contains(q2)) {
                finals.insert(pair(q1, q2, n2));
            }
        }
    }
    finals
}

fn pair_lift(cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
    let (n1, n2) = (cfg[0].size, cfg[1].size);
    let mut out = Vec::with_capacity(n1 * n2);
    for q1 in 0..n1 {
        for q2 in 0..n2 {
            out.push(pair(
                image(&actions[0], q1),
                image(&actions[1], q2),
                n2,
            ));
        }
    }
    Transformation::from_image(out).expect("pair targets are in range")
}

/// Complement: keeps the automaton, swaps final and non-final states.
pub struct Comp;

impl Modifier for Comp {
    fn arity(&self) -> usize {
        1
    }

    fn name(&self) -> String {
        String::from("comp")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        Some(sizes[0] as u128)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        cfg[0].initial
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        cfg[0].finals.complement()
    }

    fn lift(&self, _cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        actions[0].clone()
    }
}

/// Prefix-closure witness: final states absorb (every letter fixes them), so
/// the result accepts every word with a prefix in the input language.
pub struct Prefin;

impl Modifier for Prefin {
    fn arity(&self) -> usize {
        1
    }

    fn name(&self) -> String {
        String::from("prefin")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        Some(sizes[0] as u128)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        cfg[0].initial
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        cfg[0].finals.clone()
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        let out = (0..cfg[0].size)
            .map(|q| {
                if cfg[0].finals.contains(q) {
                    q
                } else {
                    image(&actions[0], q)
                }
            })
            .collect();
        Transformation::from_image(out).expect("targets are in range")
    }
}

/// Union on the product space: a pair is final when either side is.
pub struct Union;

impl Modifier for Union {
    fn arity(&self) -> usize {
        2
    }

    fn name(&self) -> String {
        String::from("union")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        pair_space(sizes)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        pair(cfg[0].initial, cfg[1].initial, cfg[1].size)
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        pair_finals(cfg, |f1, f2| f1 || f2)
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        pair_lift(cfg, actions)
    }
}

/// Intersection on the product space: a pair is final when both sides are.
pub struct Inter;

impl Modifier for Inter {
    fn arity(&self) -> usize {
        2
    }

    fn name(&self) -> String {
        String::from("inter")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        pair_space(sizes)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        pair(cfg[0].initial, cfg[1].initial, cfg[1].size)
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        pair_finals(cfg, |f1, f2| f1 && f2)
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        pair_lift(cfg, actions)
    }
}

/// Symmetric difference on the product space: a pair is final when exactly
/// one side is.
pub struct Xor;

impl Modifier for Xor {
    fn arity(&self) -> usize {
        2
    }

    fn name(&self) -> String {
        String::from("xor")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        pair_space(sizes)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        pair(cfg[0].initial, cfg[1].initial, cfg[1].size)
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        pair_finals(cfg, |f1, f2| f1 != f2)
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        pair_lift(cfg, actions)
    }
}

/// Concatenation: states are `(q1, E)` with `q1` tracking the first input
/// and `E` the subset of second-input states whose run began at some
/// first-final crossing. Encoded as `q1 * 2^n2 + E`. Whenever the first
/// component sits on a final state (including initially), the second input's
/// initial state joins `E`; acceptance asks `E` to meet the second finals.
pub struct Conc;

impl Modifier for Conc {
    fn arity(&self) -> usize {
        2
    }

    fn name(&self) -> String {
        String::from("conc")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        let subsets = 1u128.checked_shl(u32::try_from(sizes[1]).ok()?)?;
        (sizes[0] as u128).checked_mul(subsets)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        let seed = if cfg[0].finals.contains(cfg[0].initial) {
            1usize << cfg[1].initial
        } else {
            0
        };
        cfg[0].initial * (1 << cfg[1].size) + seed
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        let (n1, n2) = (cfg[0].size, cfg[1].size);
        let f2 = finals_mask(&cfg[1]) as usize;
        let subsets = 1usize << n2;
        let mut finals = StateSet::empty(n1 * subsets);
        for q1 in 0..n1 {
            for e in 0..subsets {
                if e & f2 != 0 {
                    finals.insert(q1 * subsets + e);
                }
            }
        }
        finals
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        let (n1, n2) = (cfg[0].size, cfg[1].size);
        let subsets = 1usize << n2;
        let images2 = subset_images(&actions[1]);
        let mut out = Vec::with_capacity(n1 * subsets);
        for q1 in 0..n1 {
            let q1_next = image(&actions[0], q1);
            let seed = if cfg[0].finals.contains(q1_next) {
                1usize << cfg[1].initial
            } else {
                0
            };
            for &img in &images2 {
                out.push(q1_next * subsets + (img | seed));
            }
        }
        Transformation::from_image(out).expect("targets are in range")
    }
}

/// Iteration (Kleene star) on the subset space of the input. State `E` is the
/// set of input states reachable by runs of the current factor; crossing a
/// final state re-arms the initial state so a fresh factor can start. The
/// empty subset is the initial state and is final (the empty word), and any
/// subset meeting the input finals is final.
pub struct Star;

/// Adds the initial state to any subset that meets the finals.
fn star_close(mask: usize, finals: usize, initial: usize) -> usize {
    if mask & finals != 0 {
        mask | 1 << initial
    } else {
        mask
    }
}

impl Modifier for Star {
    fn arity(&self) -> usize {
        1
    }

    fn name(&self) -> String {
        String::from("star")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        1u128.checked_shl(u32::try_from(sizes[0]).ok()?)
    }

    fn initial(&self, _cfg: &[StateConfig]) -> usize {
        0
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        let fmask = finals_mask(&cfg[0]) as usize;
        let mut finals = StateSet::empty(1 << cfg[0].size);
        finals.insert(0);
        for mask in 1..1usize << cfg[0].size {
            if mask & fmask != 0 {
                finals.insert(mask);
            }
        }
        finals
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        let fmask = finals_mask(&cfg[0]) as usize;
        let initial = cfg[0].initial;
        let images = subset_images(&actions[0]);
        let out = (0..1usize << cfg[0].size)
            .map(|mask| {
                if mask == 0 {
                    // The first letter of the word starts the first factor.
                    star_close(1 << image(&actions[0], initial), fmask, initial)
                } else {
                    star_close(images[mask], fmask, initial)
                }
            })
            .collect();
        Transformation::from_image(out).expect("targets are in range")
    }
}

/// Square root: accepts `w` exactly when the input accepts `ww`. States are
/// the transformations of the input state set (encoded densely); reading a
/// letter composes its action on the outside, so the state after `w` is the
/// full action of `w`, and acceptance applies that action twice.
pub struct Sroot;

impl Modifier for Sroot {
    fn arity(&self) -> usize {
        1
    }

    fn name(&self) -> String {
        String::from("sroot")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        (sizes[0] as u128).checked_pow(u32::try_from(sizes[0]).ok()?)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        Transformation::identity(cfg[0].size)
            .expect("nonempty domain")
            .encode() as usize
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        let n = cfg[0].size;
        let total = crate::transform::transformation_count(n).expect("budgeted domain");
        let mut finals = StateSet::empty(total as usize);
        for index in 0..total {
            let g = Transformation::decode(n, index).expect("index below count");
            if cfg[0].finals.contains(g.apply(g.apply(cfg[0].initial))) {
                finals.insert(index as usize);
            }
        }
        finals
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        let n = cfg[0].size;
        let total = crate::transform::transformation_count(n).expect("budgeted domain");
        let out = (0..total)
            .map(|index| {
                let g = Transformation::decode(n, index).expect("index below count");
                actions[0].compose(&g).expect("equal domains").encode() as usize
            })
            .collect();
        Transformation::from_image(out).expect("targets are in range")
    }
}

/// Reversal on the subset space: start from the input finals, read letters
/// by preimage, accept when the input initial state has been gathered.
pub struct Mirror;

impl Modifier for Mirror {
    fn arity(&self) -> usize {
        1
    }

    fn name(&self) -> String {
        String::from("mirror")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        1u128.checked_shl(u32::try_from(sizes[0]).ok()?)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        finals_mask(&cfg[0]) as usize
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        let mut finals = StateSet::empty(1 << cfg[0].size);
        for mask in 0..1usize << cfg[0].size {
            if mask >> cfg[0].initial & 1 != 0 {
                finals.insert(mask);
            }
        }
        finals
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        let preimages = subset_preimages(&actions[0]);
        let out = (0..1usize << cfg[0].size)
            .map(|mask| preimages[mask])
            .collect();
        Transformation::from_image(out).expect("targets are in range")
    }
}

/// Redirects every transition out of a final state to state 1 (when the
/// input has at least two states; otherwise it does nothing). This is a
/// deliberately non-semantic recipe: the language it produces depends on the
/// chosen automaton, not only on its language.
pub struct Fto1;

impl Modifier for Fto1 {
    fn arity(&self) -> usize {
        1
    }

    fn name(&self) -> String {
        String::from("fto1")
    }

    fn state_count(&self, sizes: &[usize]) -> Option<u128> {
        Some(sizes[0] as u128)
    }

    fn initial(&self, cfg: &[StateConfig]) -> usize {
        cfg[0].initial
    }

    fn finals(&self, cfg: &[StateConfig]) -> StateSet {
        cfg[0].finals.clone()
    }

    fn lift(&self, cfg: &[StateConfig], actions: &[Transformation]) -> Transformation {
        let n = cfg[0].size;
        let out = (0..n)
            .map(|q| {
                if cfg[0].finals.contains(q) && n >= 2 {
                    1
                } else {
                    image(&actions[0], q)
                }
            })
            .collect();
        Transformation::from_image(out).expect("targets are in range")
    }
}
