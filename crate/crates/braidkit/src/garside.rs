//! A complete decision procedure for equality in `B_n`.
//!
//! Words are put into left-greedy normal form `Delta^k p_1 ... p_l` where
//! `Delta` is the positive half-twist and each `p_i` is a permutation braid.
//! Two words represent the same element iff their normal forms are identical,
//! so equality, triviality, commutation and conjugation witnesses all reduce
//! to normal-form computation. Cheap complete negatives (exponent sum and the
//! permutation image) run first.

use crate::word::{BraidWord, Permutation};
use crate::{Error, Result};
use std::fmt;

/// Left-greedy normal form: `Delta^inf * factors`, no factor trivial or equal
/// to `Delta`, and each adjacent pair left-weighted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    strands: usize,
    inf: i64,
    factors: Vec<Permutation>,
}

// Factors are manipulated as raw image arrays during normalization.
type Factor = Vec<u8>;

fn identity_factor(n: usize) -> Factor {
    (0..n as u8).collect()
}

fn is_identity(f: &[u8]) -> bool {
    f.iter().enumerate().all(|(i, &x)| x as usize == i)
}

/// The half-twist permutation `i -> n+1-i`.
fn omega(n: usize) -> Factor {
    (0..n).map(|i| (n - 1 - i) as u8).collect()
}

fn is_delta(f: &[u8]) -> bool {
    let n = f.len();
    f.iter().enumerate().all(|(i, &x)| x as usize == n - 1 - i)
}

/// Conjugation by the half-twist: `flip(p) = omega . p . omega`.
fn flip(f: &[u8]) -> Factor {
    let n = f.len();
    (0..n).map(|j| (n as u8 - 1) - f[n - 1 - j]).collect()
}

fn positions(f: &[u8]) -> Factor {
    let mut pos = vec![0u8; f.len()];
    for (i, &x) in f.iter().enumerate() {
        pos[x as usize] = i as u8;
    }
    pos
}

/// Rebalances the pair `(a, b)` to left-weighted form: while some generator
/// starts `b` but does not finish `a`, slide it from the head of `b` to the
/// tail of `a`. Returns true if anything moved.
fn rebalance(a: &mut [u8], pos_a: &mut [u8], b: &mut [u8]) -> bool {
    let n = a.len();
    let mut moved = false;
    loop {
        let mut found = None;
        for v in 0..n - 1 {
            // v encodes the generator s_{v+1}: a descent of b at position v
            // means s_{v+1} starts b; a descent of a^{-1} at value v means
            // s_{v+1} finishes a.
            if b[v] > b[v + 1] && pos_a[v] < pos_a[v + 1] {
                found = Some(v);
                break;
            }
        }
        let Some(v) = found else { break };
        moved = true;
        // a <- a * s_{v+1}: swap the values v, v+1 inside a.
        let (pa, pb) = (pos_a[v] as usize, pos_a[v + 1] as usize);
        a.swap(pa, pb);
        pos_a.swap(v, v + 1);
        // b <- s_{v+1}^{-1} * b: swap the entries at positions v, v+1.
        b.swap(v, v + 1);
    }
    moved
}

/// Computes the left-greedy normal form of a braid word.
pub fn normal_form(w: &BraidWord) -> NormalForm {
    let n = w.strands();
    let total_neg = w.letters().iter().filter(|&&e| e < 0).count() as i64;
    let mut inf = -total_neg;
    let mut factors: Vec<Factor> = Vec::with_capacity(w.len());

    let mut remaining_neg = total_neg;
    for &e in w.letters() {
        let i = e.unsigned_abs() as usize;
        let factor = if e > 0 {
            let flips = remaining_neg;
            let mut f = identity_factor(n);
            f.swap(i - 1, i);
            if flips % 2 == 1 {
                f = flip(&f);
            }
            f
        } else {
            remaining_neg -= 1;
            let flips = remaining_neg;
            // s_i^{-1} = Delta^{-1} * Y with Y the permutation braid of
            // Delta * s_i^{-1}: omega with the values i-1, i swapped.
            let mut f = omega(n);
            let (p1, p2) = (n - i, n - 1 - i);
            f.swap(p1, p2);
            if flips % 2 == 1 {
                f = flip(&f);
            }
            f
        };
        if !is_identity(&factor) {
            factors.push(factor);
        }
    }

    normalize_factors(n, &mut inf, &mut factors);

    NormalForm {
        strands: n,
        inf,
        factors: factors.into_iter().map(Permutation::from_raw).collect(),
    }
}

/// Shunting pass: locally rebalance adjacent pairs until every pair is
/// left-weighted, dropping emptied factors, then absorb leading half-twists
/// into the infimum.
fn normalize_factors(n: usize, inf: &mut i64, factors: &mut Vec<Factor>) {
    let mut i = 1;
    while i < factors.len() {
        let (left, right) = factors.split_at_mut(i);
        let a = &mut left[i - 1];
        let b = &mut right[0];
        let mut pos_a = positions(a);
        let moved = rebalance(a, &mut pos_a, b);
        if is_identity(b) {
            factors.remove(i);
            i = (i - 1).max(1);
        } else if moved {
            // the pair to the left may have been unbalanced by the growth of a
            i = (i - 1).max(1);
        } else {
            i += 1;
        }
    }
    while factors.first().is_some_and(|f| is_delta(f)) {
        factors.remove(0);
        *inf += 1;
    }
    debug_assert!(factors.iter().all(|f| !is_identity(f) && !is_delta(f)));
    debug_assert!(left_weighted(n, factors));
}

fn left_weighted(_n: usize, factors: &[Factor]) -> bool {
    factors.windows(2).all(|w| {
        let pos_a = positions(&w[0]);
        let b = &w[1];
        (0..b.len() - 1).all(|v| !(b[v] > b[v + 1] && pos_a[v] < pos_a[v + 1]))
    })
}

impl NormalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The power of the half-twist in front.
    pub fn infimum(&self) -> i64 {
        self.inf
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity_element(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Rebuilds a braid word; re-normalizing it reproduces `self`.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let delta = permutation_braid_word(n, &Permutation::from_raw(omega(n)));
        let mut acc = BraidWord::empty(n);
        let signed_delta = if self.inf >= 0 { delta.clone() } else { delta.inverse() };
        for _ in 0..self.inf.unsigned_abs() {
            acc = acc.concat(&signed_delta).expect("same strands");
        }
        for p in &self.factors {
            acc = acc
                .concat(&permutation_braid_word(n, p))
                .expect("same strands");
        }
        acc
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Delta^{}", self.inf)?;
        for p in &self.factors {
            write!(f, " | {p}")?;
        }
        Ok(())
    }
}

/// A positive word for the permutation braid of `p`.
pub fn permutation_braid_word(n: usize, p: &Permutation) -> BraidWord {
    let mut f: Factor = p.images().to_vec();
    let mut letters = Vec::new();
    loop {
        let mut descent = None;
        for v in 0..n - 1 {
            if f[v] > f[v + 1] {
                descent = Some(v);
                break;
            }
        }
        let Some(v) = descent else { break };
        letters.push((v + 1) as i32);
        f.swap(v, v + 1);
    }
    // letters were produced by peeling generators off the left
    BraidWord::new(n, letters).expect("valid letters")
}

/// Equality in `B_n`. Rejects fast via exponent sum and permutation image.
pub fn equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.strands() != v.strands() {
        return Err(Error::StrandMismatch(u.strands(), v.strands()));
    }
    if u.exponent_sum() != v.exponent_sum() {
        return Ok(false);
    }
    if u.permutation() != v.permutation() {
        return Ok(false);
    }
    Ok(normal_form(u) == normal_form(v))
}

pub fn is_trivial(w: &BraidWord) -> bool {
    if w.exponent_sum() != 0 || !w.permutation().is_identity() {
        return false;
    }
    normal_form(w).is_identity_element()
}

pub fn commutes(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.strands() != v.strands() {
        return Err(Error::StrandMismatch(u.strands(), v.strands()));
    }
    let commutator = u
        .concat(v)?
        .concat(&u.inverse())?
        .concat(&v.inverse())?;
    Ok(is_trivial(&commutator))
}

/// Tests `uvu = vuv`.
pub fn braid_relation(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    let uvu = u.concat(v)?.concat(u)?;
    let vuv = v.concat(u)?.concat(v)?;
    equal(&uvu, &vuv)
}

/// Tests `g x g^{-1} = y`.
pub fn conjugates_witness(g: &BraidWord, x: &BraidWord, y: &BraidWord) -> Result<bool> {
    equal(&BraidWord::conjugate(g, x)?, y)
}
