//! Total transformations of `{0, .., n-1}`: special families, composition,
//! dense integer indexing, and semigroup closure with witness words.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::StateSet;
use crate::{Error, Result};

/// Largest domain size whose `n^n` transformation indices fit in a `u64`.
pub const MAX_ENCODABLE_DOMAIN: usize = 15;

/// A total function from `{0, .., n-1}` to itself, stored as its image word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transformation {
    image: Vec<usize>,
}

impl Transformation {
    /// Wraps an image word. Every entry must lie below the word's length.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        for &y in &image {
            if y >= n {
                return Err(Error::OutOfRange {
                    what: "image entry",
                    value: y,
                    bound: n,
                });
            }
        }
        Ok(Transformation { image })
    }

    /// The identity on `{0, .., n-1}`.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        Ok(Transformation {
            image: (0..n).collect(),
        })
    }

    /// The cyclic permutation sending `support[i]` to `support[i+1]` and the
    /// last listed point back to the first; points outside `support` are
    /// fixed. The support must name distinct points below `n`.
    pub fn cycle(n: usize, support: &[usize]) -> Result<Self> {
        let mut t = Self::identity(n)?;
        let mut seen = vec![false; n];
        for &x in support {
            if x >= n {
                return Err(Error::OutOfRange {
                    what: "cycle point",
                    value: x,
                    bound: n,
                });
            }
            if seen[x] {
                return Err(Error::InvalidArgument(alloc::format!(
                    "cycle support repeats point {x}"
                )));
            }
            seen[x] = true;
        }
        for i in 0..support.len() {
            t.image[support[i]] = support[(i + 1) % support.len()];
        }
        Ok(t)
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidArgument(alloc::format!(
                "transposition needs two distinct points, got {i} twice"
            )));
        }
        Self::cycle(n, &[i, j])
    }

    /// The contraction sending `i` to `j` and fixing every other point.
    pub fn contraction(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidArgument(alloc::format!(
                "contraction needs two distinct points, got {i} twice"
            )));
        }
        let mut t = Self::identity(n)?;
        if i >= n || j >= n {
            return Err(Error::OutOfRange {
                what: "contraction point",
                value: i.max(j),
                bound: n,
            });
        }
        t.image[i] = j;
        Ok(t)
    }

    /// Sends every state in `finals` to `a` and every other state to `b`.
    /// Requires `a != b` and a `finals` universe of size `n`.
    pub fn split_by_finals(n: usize, finals: &StateSet, a: usize, b: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        if finals.capacity() != n {
            return Err(Error::DomainMismatch {
                left: finals.capacity(),
                right: n,
            });
        }
        if a == b {
            return Err(Error::InvalidArgument(alloc::format!(
                "split values must differ, got {a} twice"
            )));
        }
        if a >= n || b >= n {
            return Err(Error::OutOfRange {
                what: "split value",
                value: a.max(b),
                bound: n,
            });
        }
        let image = (0..n)
            .map(|x| if finals.contains(x) { a } else { b })
            .collect();
        Ok(Transformation { image })
    }

    /// Domain size.
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// The image word: entry `x` is where `x` maps.
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Applies the transformation to one point.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        for &y in &self.image {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    /// Functional composition `self . inner`: `inner` acts first, so
    /// `f.compose(&g).apply(x) == f.apply(g.apply(x))`. Domains must agree.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.degree() != inner.degree() {
            return Err(Error::DomainMismatch {
                left: self.degree(),
                right: inner.degree(),
            });
        }
        Ok(Transformation {
            image: inner.image.iter().map(|&y| self.image[y]).collect(),
        })
    }

    /// Dense index of this transformation among all `n^n`: the image word read
    /// as a base-`n` numeral with entry 0 least significant. Panics when the
    /// domain exceeds [`MAX_ENCODABLE_DOMAIN`].
    pub fn encode(&self) -> u64 {
        let n = self.degree() as u64;
        assert!(
            self.degree() <= MAX_ENCODABLE_DOMAIN,
            "domain {} too large to encode in a u64",
            self.degree()
        );
        let mut index = 0u64;
        for &y in self.image.iter().rev() {
            index = index * n + y as u64;
        }
        index
    }

    /// Inverse of [`encode`](Self::encode): rebuilds the transformation on
    /// `{0, .., n-1}` from its dense index.
    pub fn decode(n: usize, index: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        if n > MAX_ENCODABLE_DOMAIN {
            return Err(Error::Overflow {
                what: "transformation index space",
            });
        }
        let total = transformation_count(n).expect("checked domain bound");
        if index >= total {
            return Err(Error::OutOfRange {
                what: "transformation index",
                value: index as usize,
                bound: total as usize,
            });
        }
        let mut image = Vec::with_capacity(n);
        let mut rest = index;
        for _ in 0..n {
            image.push((rest % n as u64) as usize);
            rest /= n as u64;
        }
        Ok(Transformation { image })
    }
}

impl fmt::Display for Transformation {
    /// Image word in brackets: digit-joined for domains up to 10, else
    /// comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.degree() <= 10 {
            for &y in &self.image {
                write!(f, "{y}")?;
            }
        } else {
            for (i, &y) in self.image.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{y}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `n^n`, or `None` when it overflows a `u64`.
pub fn transformation_count(n: usize) -> Option<u64> {
    let base = u64::try_from(n).ok()?;
    let exp = u32::try_from(n).ok()?;
    base.checked_pow(exp)
}

/// One element of a generated monoid together with a word over the generators
/// that produces it (generator indices, applied left to right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureElement {
    pub transformation: Transformation,
    pub witness: Vec<usize>,
}

/// The monoid generated by `generators` under composition, in breadth-first
/// discovery order starting from the identity (witness: the empty word).
///
/// A witness word `w = g1 g2 .. gk` denotes the transformation obtained by
/// applying generator `g1` first, matching how an automaton reads a word.
/// The identity is always included, so the empty generator set yields a
/// single element. `limit` caps the number of elements; exceeding it is a
/// budget error.
pub fn closure(
    n: usize,
    generators: &[Transformation],
    limit: Option<usize>,
) -> Result<Vec<ClosureElement>> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    for g in generators {
        if g.degree() != n {
            return Err(Error::DomainMismatch {
                left: g.degree(),
                right: n,
            });
        }
    }
    let cap = limit.unwrap_or(usize::MAX);
    let identity = Transformation::identity(n)?;
    let mut seen = BTreeMap::new();
    seen.insert(identity.encode(), ());
    let mut elements = vec![ClosureElement {
        transformation: identity,
        witness: Vec::new(),
    }];
    if elements.len() > cap {
        return Err(Error::Budget {
            what: "closure elements",
            required: elements.len() as u128,
            limit: cap as u128,
        });
    }
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while let Some(at) = queue.pop_front() {
        for (gi, g) in generators.iter().enumerate() {
            // Reading one more letter g after the word for `at` composes g on
            // the outside.
            let next = g.compose(&elements[at].transformation)?;
            let key = next.encode();
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, ());
            let mut witness = elements[at].witness.clone();
            witness.push(gi);
            elements.push(ClosureElement {
                transformation: next,
                witness,
            });
            if elements.len() > cap {
                return Err(Error::Budget {
                    what: "closure elements",
                    required: elements.len() as u128,
                    limit: cap as u128,
                });
            }
            queue.push_back(elements.len() - 1);
        }
    }
    Ok(elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn t(image: &[usize]) -> Transformation {
        Transformation::from_image(image.to_vec()).unwrap()
    }

    #[test]
    fn identity_examples() {
        assert_eq!(Transformation::identity(3).unwrap().image(), &[0, 1, 2]);
        assert_eq!(Transformation::identity(1).unwrap().image(), &[0]);
        assert_eq!(Transformation::identity(0), Err(Error::EmptyDomain));
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(Transformation::cycle(3, &[0, 1, 2]).unwrap().image(), &[1, 2, 0]);
        assert_eq!(Transformation::cycle(4, &[1, 3]).unwrap().image(), &[0, 3, 2, 1]);
        assert!(Transformation::cycle(3, &[2]).unwrap().is_identity());
        assert!(Transformation::cycle(3, &[0, 0]).is_err());
        assert!(Transformation::cycle(3, &[0, 3]).is_err());
        assert!(Transformation::cycle(4, &[0, 1, 0, 2]).is_err());
    }

    #[test]
    fn transposition_is_a_two_cycle() {
        assert_eq!(
            Transformation::transposition(3, 0, 1).unwrap(),
            Transformation::cycle(3, &[0, 1]).unwrap()
        );
        assert!(Transformation::transposition(3, 1, 1).is_err());
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(Transformation::contraction(3, 0, 1).unwrap().image(), &[1, 1, 2]);
        assert_eq!(Transformation::contraction(2, 1, 0).unwrap().image(), &[0, 0]);
        assert_eq!(Transformation::contraction(4, 3, 0).unwrap().image(), &[0, 1, 2, 0]);
        assert!(Transformation::contraction(3, 1, 1).is_err());
        assert!(Transformation::contraction(3, 3, 0).is_err());
    }

    #[test]
    fn split_by_finals_examples() {
        let f = StateSet::from_members(3, &[2]).unwrap();
        assert_eq!(
            Transformation::split_by_finals(3, &f, 0, 1).unwrap().image(),
            &[1, 1, 0]
        );
        let f2 = StateSet::from_members(2, &[1]).unwrap();
        assert_eq!(
            Transformation::split_by_finals(2, &f2, 0, 1).unwrap().image(),
            &[1, 0]
        );
        assert_eq!(
            Transformation::split_by_finals(2, &f2, 1, 0).unwrap().image(),
            &[0, 1]
        );
        assert!(Transformation::split_by_finals(3, &f, 1, 1).is_err());
    }

    #[test]
    fn compose_applies_inner_first() {
        let outer = t(&[1, 0]);
        let inner = t(&[1, 1]);
        assert_eq!(outer.compose(&inner).unwrap().image(), &[0, 0]);

        let id = Transformation::identity(4).unwrap();
        let any = t(&[3, 3, 0, 1]);
        assert_eq!(id.compose(&any).unwrap(), any);
        assert_eq!(any.compose(&id).unwrap(), any);

        let swap = Transformation::transposition(2, 0, 1).unwrap();
        assert!(swap.compose(&swap).unwrap().is_identity());

        assert!(t(&[0, 1]).compose(&t(&[0, 1, 2])).is_err());
    }

    #[test]
    fn encode_examples() {
        assert_eq!(t(&[0, 1]).encode(), 2);
        assert_eq!(t(&[0, 1, 2]).encode(), 21);
        assert_eq!(Transformation::decode(2, 0).unwrap().image(), &[0, 0]);
        assert_eq!(Transformation::decode(2, 3).unwrap().image(), &[1, 1]);
        assert!(Transformation::decode(2, 4).is_err());
        assert!(Transformation::decode(0, 0).is_err());
        assert!(Transformation::decode(16, 0).is_err());
    }

    #[test]
    fn decode_inverts_encode_exhaustively_small() {
        for n in 1..=4usize {
            let total = transformation_count(n).unwrap();
            for index in 0..total {
                let t = Transformation::decode(n, index).unwrap();
                assert_eq!(t.encode(), index, "n={n} index={index}");
            }
        }
    }

    #[test]
    fn count_overflow_boundary() {
        assert_eq!(transformation_count(15), Some(437_893_890_380_859_375));
        assert_eq!(transformation_count(16), None);
        assert_eq!(transformation_count(1), Some(1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", t(&[1, 1, 0])), "[110]");
        let big = Transformation::identity(11).unwrap();
        assert_eq!(format!("{big}"), "[0,1,2,3,4,5,6,7,8,9,10]");
    }

    #[test]
    fn closure_of_nothing_is_identity() {
        let c = closure(3, &[], None).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].transformation.is_identity());
        assert!(c[0].witness.is_empty());

        let id_only = closure(3, &[Transformation::identity(3).unwrap()], None).unwrap();
        assert_eq!(id_only.len(), 1);
    }

    #[test]
    fn closure_generates_full_transformation_monoid() {
        for n in [3usize, 4] {
            let gens = [
                Transformation::transposition(n, 0, 1).unwrap(),
                Transformation::cycle(n, &(0..n).collect::<Vec<_>>()).unwrap(),
                Transformation::contraction(n, 0, 1).unwrap(),
            ];
            let c = closure(n, &gens, None).unwrap();
            assert_eq!(c.len() as u64, transformation_count(n).unwrap());
        }
    }

    #[test]
    fn closure_witnesses_reproduce_their_elements() {
        let gens = [
            Transformation::transposition(3, 0, 1).unwrap(),
            Transformation::cycle(3, &[0, 1, 2]).unwrap(),
            Transformation::contraction(3, 0, 1).unwrap(),
        ];
        for el in closure(3, &gens, None).unwrap() {
            let mut acc = Transformation::identity(3).unwrap();
            for &gi in &el.witness {
                acc = gens[gi].compose(&acc).unwrap();
            }
            assert_eq!(acc, el.transformation);
        }
    }

    #[test]
    fn closure_limit_is_enforced() {
        let gens = [
            Transformation::transposition(3, 0, 1).unwrap(),
            Transformation::cycle(3, &[0, 1, 2]).unwrap(),
            Transformation::contraction(3, 0, 1).unwrap(),
        ];
        match closure(3, &gens, Some(10)) {
            Err(Error::Budget { what, limit, .. }) => {
                assert_eq!(what, "closure elements");
                assert_eq!(limit, 10);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(closure(3, &gens, Some(27)).is_ok());
    }

    #[test]
    fn two_generated_submonoids_of_t3_are_proper() {
        // No pair of transformations of a 3-point set generates all 27.
        let total = transformation_count(3).unwrap();
        for i in 0..total {
            for j in 0..total {
                let a = Transformation::decode(3, i).unwrap();
                let b = Transformation::decode(3, j).unwrap();
                let c = closure(3, &[a, b], None).unwrap();
                assert!(
                    (c.len() as u64) < total,
                    "pair ({i},{j}) unexpectedly generates everything"
                );
            }
        }
    }
}
