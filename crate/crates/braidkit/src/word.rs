//! Words in the Artin generators of `B_n` and their homomorphic shadows.
//!
//! A [`BraidWord`] is a strand count together with a sequence of nonzero signed
//! letters; letter `+i` is the generator `s_i`, letter `-i` its inverse. The
//! strand count is part of the value: operations across different strand counts
//! are errors, never coercions.

use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

pub const MAX_STRANDS: usize = 255;

/// A word in the Artin generators of the braid group on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 || strands > MAX_STRANDS {
            return Err(Error::StrandsOutOfRange(strands, 2, MAX_STRANDS));
        }
        for &e in &letters {
            if e == 0 || e.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidLetter(e, strands));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord::new(strands, Vec::new()).expect("empty word")
    }

    /// The generator `s_i`, `1 <= i <= strands - 1`.
    pub fn generator(strands: usize, i: usize) -> Result<Self> {
        BraidWord::new(strands, vec![i as i32])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Deletes adjacent canceling pairs until none remain. The result is
    /// independent of the deletion order.
    pub fn free_reduced(&self) -> BraidWord {
        let mut stack: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &e in &self.letters {
            if stack.last() == Some(&-e) {
                stack.pop();
            } else {
                stack.push(e);
            }
        }
        BraidWord { strands: self.strands, letters: stack }
    }

    /// Sum of letter signs: the abelianization `B_n -> Z`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&e| e.signum() as i64).sum()
    }

    /// True iff the word lies in the commutator subgroup `B_n'`.
    pub fn is_commutator_element(&self) -> bool {
        self.exponent_sum() == 0
    }

    /// Image in the symmetric group under `s_i -> (i, i+1)`.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &e in &self.letters {
            p.swap_values_inplace(e.unsigned_abs() as usize);
        }
        // swapping values i, i+1 after the fact composes transpositions in
        // word order: perm(uv) = perm(u).then(perm(v)).
        p
    }

    /// The full twist `(s_1 s_2 ... s_{n-1})^n`, a generator of the center.
    pub fn center(strands: usize) -> Result<Self> {
        if strands < 2 || strands > MAX_STRANDS {
            return Err(Error::StrandsOutOfRange(strands, 2, MAX_STRANDS));
        }
        let mut letters = Vec::with_capacity(strands * (strands - 1));
        for _ in 0..strands {
            for i in 1..strands {
                letters.push(i as i32);
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// A power of the center: `z^k`.
    pub fn center_pow(strands: usize, k: i64) -> Result<Self> {
        Ok(BraidWord::center(strands)?.pow(k))
    }

    /// The standard generating set `s_1 s_i^{-1}` of `B_n'`, `2 <= i <= n-1`.
    /// Defined for `n >= 5`.
    pub fn commutator_generators(strands: usize) -> Result<Vec<BraidWord>> {
        if strands < 5 {
            return Err(Error::StrandsOutOfRange(strands, 5, MAX_STRANDS));
        }
        (2..strands)
            .map(|i| BraidWord::new(strands, vec![1, -(i as i32)]))
            .collect()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters }.free_reduced())
    }

    pub fn inverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|&e| -e).collect();
        BraidWord { strands: self.strands, letters }
    }

    /// `g x g^{-1}`, freely reduced.
    pub fn conjugate(g: &BraidWord, x: &BraidWord) -> Result<BraidWord> {
        g.concat(x)?.concat(&g.inverse())
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        let mut letters = Vec::with_capacity(self.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }.free_reduced()
    }

    /// Concatenation of several words on the same strand count.
    pub fn product<'a>(strands: usize, parts: impl IntoIterator<Item = &'a BraidWord>) -> Result<BraidWord> {
        let mut acc = BraidWord::empty(strands);
        for p in parts {
            acc = acc.concat(p)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for BraidWord {
    /// Canonical text form: `n=7: 1 -3 5`. Round-trips exactly through parsing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:", self.strands)?;
        for e in &self.letters {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse(format!("expected `n=<int>:`, got {s:?}")))?;
        let (n_str, body) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse("missing `:` after strand count".into()))?;
        let strands: usize = n_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad strand count {n_str:?}")))?;
        let mut letters = Vec::new();
        for tok in body.split_whitespace() {
            let e: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?;
            letters.push(e);
        }
        BraidWord::new(strands, letters)
    }
}

/// A permutation of `{1..n}`, stored as the image array (0-indexed internally).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n as u8).collect() }
    }

    /// Builds from a 1-indexed image list; must be a bijection of `{1..n}`.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        if n == 0 || n > MAX_STRANDS {
            return Err(Error::StrandsOutOfRange(n, 1, MAX_STRANDS));
        }
        let mut seen = vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &im in images {
            if im < 1 || im > n || seen[im - 1] {
                return Err(Error::Parse(format!("not a bijection: {images:?}")));
            }
            seen[im - 1] = true;
            v.push((im - 1) as u8);
        }
        Ok(Permutation { images: v })
    }

    /// The adjacent transposition `(i, i+1)`, 1-indexed.
    pub fn transposition(n: usize, i: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-indexed point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// Composite `self` then `other`: `i -> other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = self.images.iter().map(|&x| other.images[x as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| im as usize == i)
    }

    /// Post-compose with the transposition of values `i`, `i+1` (1-indexed).
    /// Equivalent to `self.then(transposition(i))`.
    pub fn swap_values_inplace(&mut self, i: usize) {
        let a = (i - 1) as u8;
        let b = i as u8;
        for x in self.images.iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
    }

    /// Sorted cycle lengths; a conjugacy invariant.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable();
        cycles
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let transpositions: usize = self.cycle_type().iter().map(|c| c - 1).sum();
        debug_assert!(transpositions < n + 1);
        transpositions % 2 == 0
    }

    pub(crate) fn images(&self) -> &[u8] {
        &self.images
    }

    pub(crate) fn from_raw(images: Vec<u8>) -> Permutation {
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    /// One-line notation, 1-indexed: `2 1 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &im) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", im + 1)?;
        }
        Ok(())
    }
}

/// Iterates over all permutations of degree `n` (Heap's algorithm).
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut a: Vec<u8> = (0..n as u8).collect();
    let mut c = vec![0usize; n];
    out.push(Permutation { images: a.clone() });
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(Permutation { images: a.clone() });
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn free_reduce_cancels() {
        assert_eq!(w("n=5: 1 -1").free_reduced(), w("n=5:"));
        assert_eq!(w("n=5: 1 3 -3 2").free_reduced(), w("n=5: 1 2"));
        assert_eq!(w("n=5: 1 2 1").free_reduced(), w("n=5: 1 2 1"));
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("n=5: 1 -3").exponent_sum(), 0);
        assert_eq!(BraidWord::center(5).unwrap().exponent_sum(), 20);
        assert_eq!(w("n=5:").exponent_sum(), 0);
    }

    #[test]
    fn center_word_shape() {
        assert_eq!(BraidWord::center(3).unwrap().len(), 6);
        assert_eq!(BraidWord::center(5).unwrap().len(), 20);
        assert_eq!(BraidWord::center(2).unwrap(), w("n=2: 1 1"));
        assert!(BraidWord::center(1).is_err());
    }

    #[test]
    fn permutation_image_examples() {
        let p = w("n=4: 1").permutation();
        assert_eq!(p.to_string(), "2 1 3 4");
        // (1 2) then (2 3) is a 3-cycle sending 1 -> 3.
        let q = w("n=4: 1 -2").permutation();
        assert_eq!(q.apply(1), 3);
        assert_eq!(q.cycle_type(), vec![1, 3]);
        assert!(BraidWord::center(4).unwrap().permutation().is_identity());
    }

    #[test]
    fn permutation_homomorphism() {
        let u = w("n=6: 1 -4 3 2 -5");
        let v = w("n=6: 2 2 -1 4");
        let uv = u.concat(&v).unwrap();
        assert_eq!(uv.permutation(), u.permutation().then(&v.permutation()));
        assert_eq!(
            uv.exponent_sum(),
            u.exponent_sum() + v.exponent_sum()
        );
    }

    #[test]
    fn commutator_membership() {
        assert!(w("n=5: 1 -3").is_commutator_element());
        assert!(!w("n=5: 1").is_commutator_element());
        let z = BraidWord::center(5).unwrap();
        let sigma1_p = BraidWord::generator(5, 1).unwrap().pow(20);
        let zn_elt = sigma1_p.concat(&z.inverse()).unwrap();
        assert!(zn_elt.is_commutator_element());
    }

    #[test]
    fn commutator_generators_examples() {
        let gens = BraidWord::commutator_generators(5).unwrap();
        assert_eq!(gens.len(), 3);
        assert!(gens.iter().all(|g| g.exponent_sum() == 0));
        assert!(BraidWord::commutator_generators(4).is_err());

        let gens7 = BraidWord::commutator_generators(7).unwrap();
        assert_eq!(gens7.len(), 5);
        // each image is a product of two transpositions, hence even
        assert!(gens7.iter().all(|g| g.permutation().is_even()));
    }

    #[test]
    fn group_ops() {
        let u = w("n=4: 1 2");
        assert_eq!(u.inverse(), w("n=4: -2 -1"));
        assert_eq!(u.concat(&u.inverse()).unwrap(), w("n=4:"));
        let x = w("n=4: 2 -3");
        assert_eq!(BraidWord::conjugate(&BraidWord::empty(4), &x).unwrap(), x);
        assert!(u.concat(&w("n=5: 1")).is_err());
    }

    #[test]
    fn conjugation_preserves_shadows() {
        let g = w("n=6: 2 -4 1 1 -5");
        let x = w("n=6: 3 -2 5");
        let c = BraidWord::conjugate(&g, &x).unwrap();
        assert_eq!(c.exponent_sum(), x.exponent_sum());
        assert_eq!(c.permutation().cycle_type(), x.permutation().cycle_type());
    }

    #[test]
    fn text_format_round_trip() {
        for s in ["n=7: 1 -3 5", "n=2:", "n=3: -1 -1 2"] {
            let word: BraidWord = s.parse().unwrap();
            assert_eq!(word.to_string(), s);
        }
        assert!("n=3: 3".parse::<BraidWord>().is_err());
        assert!("n=3: 0".parse::<BraidWord>().is_err());
        assert!("3: 1".parse::<BraidWord>().is_err());
    }

    #[test]
    fn all_permutations_count() {
        assert_eq!(all_permutations(4).len(), 24);
        let mut seen = all_permutations(4);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 24);
    }
}
