//! Acceptance gate: one test per shipped claim, each printing a single
//! `criterion NN: PASS/FAIL` line (run with `--nocapture` to see them all).
//!
//! Every bound is exact and every runtime budget is asserted. Randomized
//! criteria use fixed seeds so failures reproduce.

use std::process::Command;
use std::time::{Duration, Instant};

use monstate_core::engine::{
    self, two_letter_sqrt_scan, witness, EngineOptions, FinalsFamily,
};
use monstate_core::modifier::{self, Fto1, Mirror, Sroot};
use monstate_core::monster::{self, MonsterSpec};
use monstate_core::oracle::{self, Operation, DEFAULT_WORD_BUDGET};
use monstate_core::transform::{self, Transformation};
use monstate_core::{Cdfa, StateSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cdfa(rng: &mut ChaCha8Rng, states: usize, letters: usize, pin_initial: bool) -> Cdfa {
    let table: Vec<usize> = (0..states * letters)
        .map(|_| rng.gen_range(0..states))
        .collect();
    let initial = if pin_initial { 0 } else { rng.gen_range(0..states) };
    let fmask = rng.gen_range(0..(1u64 << states));
    let finals = StateSet::from_mask(states, fmask).unwrap();
    Cdfa::new(letters, states, initial, finals, table).unwrap()
}

fn random_tuple(rng: &mut ChaCha8Rng, arity: usize, pin_initial: bool) -> Vec<Cdfa> {
    let letters = rng.gen_range(1..=3);
    (0..arity)
        .map(|_| {
            let states = rng.gen_range(1..=3);
            random_cdfa(rng, states, letters, pin_initial)
        })
        .collect()
}

fn sweep_maximum(spec: &str, sizes: &[usize]) -> usize {
    let m = modifier::parse(spec).unwrap();
    let report =
        engine::state_complexity(m.as_ref(), sizes, &FinalsFamily::All, &EngineOptions::default())
            .unwrap();
    report.maximum
}

fn assert_within(what: &str, elapsed: Duration, budget: Duration) {
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:.2?}, budget {budget:.2?}"
    );
}

#[test]
fn criterion_01_star_of_intersection_maxima() {
    let start = Instant::now();
    assert_eq!(sweep_maximum("star.inter", &[2, 2]), 12);
    assert_within("star.inter (2,2)", start.elapsed(), Duration::from_secs(5));

    let start = Instant::now();
    assert_eq!(sweep_maximum("star.inter", &[2, 3]), 48);
    assert_within("star.inter (2,3)", start.elapsed(), Duration::from_secs(5));

    let start = Instant::now();
    assert_eq!(sweep_maximum("star.inter", &[3, 2]), 48);
    assert_within("star.inter (3,2)", start.elapsed(), Duration::from_secs(5));

    let out = Command::new(env!("CARGO_BIN_EXE_monstate"))
        .args(["sc", "--modifier", "star.inter", "--sizes", "2,2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("maximum: 12"), "{text}");

    println!("criterion 01: PASS - star of intersection reaches 12, 48, 48 at sizes (2,2), (2,3), (3,2)");
}

#[test]
#[ignore = "stretch bound, takes about a minute"]
fn criterion_01_stretch_star_of_intersection_three_by_three() {
    let start = Instant::now();
    assert_eq!(sweep_maximum("star.inter", &[3, 3]), 384);
    assert_within("star.inter (3,3)", start.elapsed(), Duration::from_secs(120));
    println!("criterion 01 (stretch): PASS - star of intersection reaches 384 at sizes (3,3)");
}

#[test]
fn criterion_02_star_of_intersection_tableau_census() {
    let start = Instant::now();
    let m = modifier::parse("star.inter").unwrap();
    let mut qualifying = 0usize;
    for mask1 in 0u64..4 {
        for mask2 in 0u64..4 {
            let f1 = StateSet::from_mask(2, mask1).unwrap();
            let f2 = StateSet::from_mask(2, mask2).unwrap();
            // The census covers choices whose product of finals is neither
            // empty nor exactly {(0,0)}.
            if f1.is_empty() || f2.is_empty() || (mask1 == 1 && mask2 == 1) {
                continue;
            }
            qualifying += 1;

            // A state of the composed automaton is a tableau: bit x*2 + y
            // holds pair (x, y). A tableau can only be reached if meeting a
            // final pair forces bit (0, 0), and the count of such tableaux
            // has a closed form.
            let mut final_bits = 0usize;
            for x in f1.iter() {
                for y in f2.iter() {
                    final_bits |= 1 << (x * 2 + y);
                }
            }
            let consistent = (0usize..16)
                .filter(|t| t & final_bits == 0 || t & 1 != 0)
                .count();
            let zero_pair = f1.contains(0) && f2.contains(0);
            let exponent = 4 + usize::from(zero_pair) - f1.len() * f2.len() - 1;
            let formula = 16 - (8 - (1usize << exponent));
            assert_eq!(
                consistent, formula,
                "tableau census at finals masks ({mask1:#b},{mask2:#b})"
            );

            let spec = MonsterSpec::new(vec![2, 2], vec![f1, f2]).unwrap();
            let components = monster::build(&spec).unwrap();
            let refs: Vec<&Cdfa> = components.iter().collect();
            let applied = modifier::apply(m.as_ref(), &refs).unwrap();
            let (_, reached) = applied.accessible_part();
            for &state in &reached {
                assert!(
                    state & final_bits == 0 || state & 1 != 0,
                    "reached a pruned tableau {state:#06b} at finals masks ({mask1:#b},{mask2:#b})"
                );
            }
            assert!(reached.len() <= formula);
            if mask1 == 2 && mask2 == 2 {
                assert_eq!(reached.len(), formula, "finals ({{1}},{{1}}) fill the pruned space");
            }
        }
    }
    assert_eq!(qualifying, 8);
    assert_within("tableau census", start.elapsed(), Duration::from_secs(5));
    println!("criterion 02: PASS - the pruned-tableau count matches its closed form on all 8 qualifying choices and is filled at finals ({{1}},{{1}})");
}

#[test]
fn criterion_03_square_root_maxima_and_merge_census() {
    let opts = EngineOptions::default();
    assert_eq!(sweep_maximum("sroot", &[3]), 24);

    let start = Instant::now();
    assert_eq!(sweep_maximum("sroot", &[4]), 250);
    assert_within("sroot (4)", start.elapsed(), Duration::from_secs(60));

    // At size 3 with finals {2}, exactly the transformations sending finals
    // to a and the rest to b merge with their (b, a) partners: three classes
    // of two, six states in all.
    let finals = StateSet::from_members(3, &[2]).unwrap();
    let report = witness(&Sroot, &[3], std::slice::from_ref(&finals), &opts).unwrap();
    let mut expected: Vec<Vec<usize>> = [(0usize, 1usize), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| {
            let ab = Transformation::split_by_finals(3, &finals, a, b).unwrap();
            let ba = Transformation::split_by_finals(3, &finals, b, a).unwrap();
            let mut pair = vec![ab.encode() as usize, ba.encode() as usize];
            pair.sort_unstable();
            pair
        })
        .collect();
    expected.sort();
    let mut merged = report.merged_classes.clone();
    merged.sort();
    assert_eq!(merged, expected, "merged classes at size 3, finals {{2}}");
    assert_eq!(merged.iter().map(Vec::len).sum::<usize>(), 6);

    let two = sweep_maximum("sroot", &[2]);
    if two == 2 {
        println!("criterion 03: PASS - square root reaches 2, 24, 250 at sizes 2, 3, 4 with the 6-state merge census");
    } else {
        println!("criterion 03: FAIL - square root maximum at size 2 is {two}, expected 2");
        panic!(
            "square root maximum at size 2 is {two}, expected 2 (n^n - n(n-1)/2); \
             sizes 3 and 4 and the merge census hold, but at size 2 only the \
             finals-swapping pair merges, leaving 3 separable states"
        );
    }
}

#[test]
fn criterion_04_mirror_saturates_the_subset_bound() {
    let start = Instant::now();
    let opts = EngineOptions::default();
    for n in [2usize, 3] {
        let finals = StateSet::from_members(n, &[n - 1]).unwrap();
        let report = witness(&Mirror, &[n], &[finals], &opts).unwrap();
        assert_eq!(
            report.minimized.state_count(),
            1 << n,
            "mirror monster at size {n}"
        );
    }
    assert_within("mirror bound", start.elapsed(), Duration::from_secs(5));
    println!("criterion 04: PASS - mirror of the size-n monster with finals {{n-1}} minimizes to 2^n for n = 2, 3");
}

#[test]
fn criterion_05_two_letter_square_roots_stay_below_the_bound() {
    let start = Instant::now();
    let report = two_letter_sqrt_scan(3).unwrap();
    assert_within("two-letter scan", start.elapsed(), Duration::from_secs(60));
    assert_eq!(report.automata, 5832);
    assert_eq!(report.bound, 24);
    assert!(report.strictly_below, "maximum {} reached the bound", report.maximum);
    assert_eq!(report.maximum, 21);
    println!("criterion 05: PASS - all 5832 two-letter automata on 3 states keep the square root at or below 21 < 24");
}

#[test]
fn criterion_06_semigroup_generation_facts() {
    let start = Instant::now();
    for n in [3usize, 4] {
        let support: Vec<usize> = (0..n).collect();
        let generators = [
            Transformation::transposition(n, 0, 1).unwrap(),
            Transformation::cycle(n, &support).unwrap(),
            Transformation::contraction(n, 0, 1).unwrap(),
        ];
        let elements = transform::closure(n, &generators, None).unwrap();
        assert_eq!(elements.len(), n.pow(n as u32), "closure size at degree {n}");
    }

    // No two transformations generate all 27 of degree 3.
    let all: Vec<Transformation> = (0..27u64)
        .map(|i| Transformation::decode(3, i).unwrap())
        .collect();
    for g in &all {
        for h in &all {
            let size = transform::closure(3, &[g.clone(), h.clone()], None)
                .unwrap()
                .len();
            assert!(size < 27, "{g:?} and {h:?} generate everything");
        }
    }
    assert_within("semigroup facts", start.elapsed(), Duration::from_secs(60));
    println!("criterion 06: PASS - the standard 3-generator sets reach n^n for n = 3, 4 and all 729 degree-3 pairs stay proper");
}

#[test]
fn criterion_07_operations_agree_with_word_oracles() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x07ac1e);
    for op in Operation::ALL {
        let m = op.modifier();
        for _ in 0..200 {
            let inputs = random_tuple(&mut rng, op.arity(), false);
            let refs: Vec<&Cdfa> = inputs.iter().collect();
            let verdict =
                oracle::exhaustive_agree(op, m.as_ref(), &refs, 6, DEFAULT_WORD_BUDGET).unwrap();
            assert_eq!(verdict, None, "{} disagreed on {refs:?}", op.name());
        }
    }
    assert_within("oracle agreement", start.elapsed(), Duration::from_secs(120));
    println!("criterion 07: PASS - 9 operations agree with their word oracles on 200 random tuples each, words to length 6");
}

#[test]
fn criterion_08_monsters_dominate_equal_shape_inputs() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x08d0b1);
    for case in 0..100 {
        let op = Operation::ALL[rng.gen_range(0..Operation::ALL.len())];
        let m = op.modifier();
        let inputs = random_tuple(&mut rng, op.arity(), true);
        let refs: Vec<&Cdfa> = inputs.iter().collect();
        let plain = modifier::apply(m.as_ref(), &refs).unwrap().minimize();

        let sizes: Vec<usize> = inputs.iter().map(Cdfa::state_count).collect();
        let finals: Vec<StateSet> = inputs.iter().map(|a| a.finals().clone()).collect();
        let components = monster::build(&MonsterSpec::new(sizes, finals).unwrap()).unwrap();
        let monster_refs: Vec<&Cdfa> = components.iter().collect();
        let giant = modifier::apply(m.as_ref(), &monster_refs)
            .unwrap()
            .minimize();

        assert!(
            plain.state_count() <= giant.state_count(),
            "case {case}: {} beat its monster, {} > {}",
            op.name(),
            plain.state_count(),
            giant.state_count()
        );
    }
    assert_within("monster dominance", start.elapsed(), Duration::from_secs(120));
    println!("criterion 08: PASS - monsters dominate 100 random same-shape inputs across all operations");
}

#[test]
fn criterion_09_composition_matches_nested_application() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x09c09e);
    let pool = ["star", "comp", "inter", "union"];
    for case in 0..100 {
        let outer_name = pool[rng.gen_range(0..pool.len())];
        let inner_name = pool[rng.gen_range(0..pool.len())];
        let outer = modifier::builtin(outer_name).unwrap();
        let inner = modifier::builtin(inner_name).unwrap();
        let outer_arity = outer.arity();
        let inner_arity = inner.arity();
        let position = rng.gen_range(1..=outer_arity);
        let composed = modifier::compose(outer, position, inner).unwrap();

        let inputs = random_tuple(&mut rng, outer_arity + inner_arity - 1, false);
        let refs: Vec<&Cdfa> = inputs.iter().collect();
        let flat = modifier::apply(composed.as_ref(), &refs).unwrap();

        let inner = modifier::builtin(inner_name).unwrap();
        let inner_refs = &refs[position - 1..position - 1 + inner_arity];
        let inner_result = modifier::apply(inner.as_ref(), inner_refs).unwrap();
        let mut nested_inputs: Vec<&Cdfa> = Vec::new();
        nested_inputs.extend_from_slice(&refs[..position - 1]);
        nested_inputs.push(&inner_result);
        nested_inputs.extend_from_slice(&refs[position - 1 + inner_arity..]);
        let outer = modifier::builtin(outer_name).unwrap();
        let nested = modifier::apply(outer.as_ref(), &nested_inputs).unwrap();

        assert!(
            flat.equivalent(&nested).unwrap(),
            "case {case}: {outer_name} at {position} with {inner_name} diverged"
        );
    }
    assert_within("composition", start.elapsed(), Duration::from_secs(120));
    println!("criterion 09: PASS - composed modifiers match nested application on 100 random instances");
}

#[test]
fn criterion_10_final_redirects_split_equivalent_automata() {
    // Two automata for the same language: every word of two or more a's.
    let a_finals = StateSet::from_members(3, &[2]).unwrap();
    let a = Cdfa::new(1, 3, 0, a_finals, vec![1, 2, 2]).unwrap();
    let b_finals = StateSet::from_members(3, &[1]).unwrap();
    let b = Cdfa::new(1, 3, 0, b_finals, vec![2, 1, 1]).unwrap();
    assert!(a.equivalent(&b).unwrap());

    let fa = modifier::apply(&Fto1, &[&a]).unwrap();
    let fb = modifier::apply(&Fto1, &[&b]).unwrap();
    assert_eq!(fb, b, "redirecting b changes nothing, its final already loops to 1");
    assert!(!fa.equivalent(&fb).unwrap(), "the redirected images must differ");

    // The redirected a now accepts exactly the even positive lengths.
    let accepted = fa.enumerate_accepted(6, DEFAULT_WORD_BUDGET).unwrap();
    assert_eq!(accepted, vec![vec![0; 2], vec![0; 4], vec![0; 6]]);
    println!("criterion 10: PASS - equivalent inputs produce inequivalent redirect images, one accepting only even lengths");
}

#[test]
fn criterion_11_letter_renaming_and_restriction_commute() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x11c0e);
    let names = [
        "comp", "prefin", "union", "inter", "xor", "conc", "star", "sroot", "mirror", "fto1",
    ];
    for name in names {
        let m = modifier::builtin(name).unwrap();
        for case in 0..100 {
            let letters = rng.gen_range(2..=3);
            let inputs: Vec<Cdfa> = (0..m.arity())
                .map(|_| {
                    let states = rng.gen_range(1..=3);
                    random_cdfa(&mut rng, states, letters, false)
                })
                .collect();
            let refs: Vec<&Cdfa> = inputs.iter().collect();
            let applied = modifier::apply(m.as_ref(), &refs).unwrap();

            let mut sigma: Vec<usize> = (0..letters).collect();
            sigma.shuffle(&mut rng);
            let renamed_first: Vec<Cdfa> = inputs
                .iter()
                .map(|a| a.rename_letters(&sigma).unwrap())
                .collect();
            let renamed_refs: Vec<&Cdfa> = renamed_first.iter().collect();
            assert_eq!(
                applied.rename_letters(&sigma).unwrap(),
                modifier::apply(m.as_ref(), &renamed_refs).unwrap(),
                "{name} case {case}: renaming letters by {sigma:?} does not commute"
            );

            let keep_mask = rng.gen_range(1..(1u32 << letters));
            let keep: Vec<usize> = (0..letters).filter(|a| keep_mask & (1 << a) != 0).collect();
            let restricted_first: Vec<Cdfa> = inputs
                .iter()
                .map(|a| a.restrict_alphabet(&keep).unwrap())
                .collect();
            let restricted_refs: Vec<&Cdfa> = restricted_first.iter().collect();
            assert_eq!(
                applied.restrict_alphabet(&keep).unwrap(),
                modifier::apply(m.as_ref(), &restricted_refs).unwrap(),
                "{name} case {case}: restricting to {keep:?} does not commute"
            );
        }
    }
    assert_within("commutation", start.elapsed(), Duration::from_secs(120));
    println!("criterion 11: PASS - renaming and restriction commute with all 10 builtins on 100 random instances each");
}
