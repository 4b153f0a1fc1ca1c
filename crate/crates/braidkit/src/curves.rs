//! Isotopy classes of multicurves in the punctured disk and the braid action.
//!
//! A multicurve is carried as a set of reduced cyclic words in the standard
//! loop generators of the fundamental group of the punctured disk; braids act
//! exactly by the Artin substitution rules, so the action needs no tolerance
//! anywhere. The public identity of a class is its coordinate vector of
//! `2n - 4` integers (intersection-count differences along the puncture axis),
//! which is in bijection with isotopy classes; the word carrier is kept so the
//! action can be iterated.

use crate::garside::{braid_relation, commutes};
use crate::word::BraidWord;
use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// An essential round curve: the boundary of a disk around the consecutive
/// punctures `lo..=hi`. The full-boundary interval `(1, n)` is not essential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoundCurve {
    strands: usize,
    lo: usize,
    hi: usize,
}

impl RoundCurve {
    pub fn new(strands: usize, lo: usize, hi: usize) -> Result<Self> {
        if strands < 2 || lo < 1 || lo >= hi || hi > strands || (lo == 1 && hi == strands) {
            return Err(Error::InvalidCurve(lo, hi, strands));
        }
        Ok(RoundCurve { strands, lo, hi })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Number of punctures enclosed.
    pub fn weight(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_two_punctured(&self) -> bool {
        self.weight() == 2
    }

    /// Nested-or-disjoint test on the underlying intervals.
    pub fn compatible(&self, other: &RoundCurve) -> bool {
        let (a, b) = (self, other);
        a.hi < b.lo
            || b.hi < a.lo
            || (a.lo <= b.lo && b.hi <= a.hi)
            || (b.lo <= a.lo && a.hi <= b.hi)
    }
}

impl fmt::Display for RoundCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "round(n={})[{},{}]", self.strands, self.lo, self.hi)
    }
}

impl FromStr for RoundCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix("round(n=")
            .ok_or_else(|| Error::Parse(format!("expected `round(n=..)[lo,hi]`, got {s:?}")))?;
        let (n_str, rest) = rest
            .split_once(")[")
            .ok_or_else(|| Error::Parse("missing `)[` in round curve".into()))?;
        let body = rest
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse("missing `]` in round curve".into()))?;
        let (lo_str, hi_str) = body
            .split_once(',')
            .ok_or_else(|| Error::Parse("missing `,` in round curve".into()))?;
        let n = n_str.trim().parse().map_err(|_| Error::Parse("bad strand count".into()))?;
        let lo = lo_str.trim().parse().map_err(|_| Error::Parse("bad lo".into()))?;
        let hi = hi_str.trim().parse().map_err(|_| Error::Parse("bad hi".into()))?;
        RoundCurve::new(n, lo, hi)
    }
}

/// A round curve pushed around by a braid: represents `witness . base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushedCurve {
    pub base: RoundCurve,
    pub witness: BraidWord,
}

impl PushedCurve {
    pub fn new(base: RoundCurve, witness: BraidWord) -> Result<Self> {
        if base.strands() != witness.strands() {
            return Err(Error::StrandMismatch(base.strands(), witness.strands()));
        }
        Ok(PushedCurve { base, witness })
    }

    pub fn standard(base: RoundCurve) -> Self {
        let witness = BraidWord::empty(base.strands());
        PushedCurve { base, witness }
    }

    pub fn class(&self) -> CurveClass {
        act(&self.witness, &class_of_round(&self.base))
    }
}

impl fmt::Display for PushedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "push(n={})[{},{}] <-",
            self.base.strands, self.base.lo, self.base.hi
        )?;
        for e in self.witness.letters() {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

impl FromStr for PushedCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix("push(n=")
            .ok_or_else(|| Error::Parse(format!("expected `push(n=..)[lo,hi] <- ..`, got {s:?}")))?;
        let (n_str, rest) = rest
            .split_once(")[")
            .ok_or_else(|| Error::Parse("missing `)[` in pushed curve".into()))?;
        let (body, tail) = rest
            .split_once(']')
            .ok_or_else(|| Error::Parse("missing `]` in pushed curve".into()))?;
        let (lo_str, hi_str) = body
            .split_once(',')
            .ok_or_else(|| Error::Parse("missing `,` in pushed curve".into()))?;
        let n: usize = n_str.trim().parse().map_err(|_| Error::Parse("bad strand count".into()))?;
        let base = RoundCurve::new(
            n,
            lo_str.trim().parse().map_err(|_| Error::Parse("bad lo".into()))?,
            hi_str.trim().parse().map_err(|_| Error::Parse("bad hi".into()))?,
        )?;
        let tail = tail.trim();
        let tail = tail
            .strip_prefix("<-")
            .ok_or_else(|| Error::Parse("missing `<-` in pushed curve".into()))?;
        let mut letters = Vec::new();
        for tok in tail.split_whitespace() {
            letters.push(tok.parse().map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?);
        }
        PushedCurve::new(base, BraidWord::new(n, letters)?)
    }
}

/// An isotopy class of a multicurve, identified by its coordinate vector.
///
/// The vector lists `a_1 .. a_{n-2}` (signed above/below passage counts at the
/// interior punctures, halved) followed by `b_1 .. b_{n-2}` (differences of
/// crossing counts of consecutive vertical walls, halved). The zero vector is
/// the empty multicurve.
#[derive(Debug, Clone)]
pub struct CurveClass {
    strands: usize,
    coords: Vec<i64>,
    // canonicalized cyclic words in the puncture loop generators
    components: Vec<Vec<i32>>,
}

impl PartialEq for CurveClass {
    fn eq(&self, other: &Self) -> bool {
        self.strands == other.strands && self.components == other.components
    }
}

impl Eq for CurveClass {}

impl std::hash::Hash for CurveClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.strands.hash(state);
        self.components.hash(state);
    }
}

impl PartialOrd for CurveClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CurveClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.strands, &self.components).cmp(&(other.strands, &other.components))
    }
}

impl CurveClass {
    pub fn empty(strands: usize) -> CurveClass {
        CurveClass::from_components(strands, Vec::new())
    }

    fn from_components(strands: usize, raw: Vec<Vec<i32>>) -> CurveClass {
        let mut components: Vec<Vec<i32>> = raw
            .into_iter()
            .map(|w| canonical_cyclic(&w))
            .filter(|w| !w.is_empty())
            .collect();
        components.sort();
        let coords = coordinates(strands, &components);
        CurveClass { strands, coords, components }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The coordinate vector, `2n - 4` integers.
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Disjoint union of two multicurve classes on the same disk.
    pub fn union(&self, other: &CurveClass) -> Result<CurveClass> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut raw = self.components.clone();
        raw.extend(other.components.iter().cloned());
        Ok(CurveClass::from_components(self.strands, raw))
    }
}

impl fmt::Display for CurveClass {
    /// Space-separated coordinate vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.coords {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// The class of a standard round curve: the loop enclosing punctures `lo..=hi`.
pub fn class_of_round(c: &RoundCurve) -> CurveClass {
    let word: Vec<i32> = (c.lo..=c.hi).map(|k| k as i32).collect();
    CurveClass::from_components(c.strands, vec![word])
}

/// The braid action on multicurve classes: `act(uv, c) = act(u, act(v, c))`,
/// the empty word acts as the identity, and central words act trivially.
pub fn act(w: &BraidWord, class: &CurveClass) -> CurveClass {
    assert_eq!(
        w.strands(),
        class.strands(),
        "strand mismatch in curve action"
    );
    let mut components = class.components.clone();
    for &letter in w.letters().iter().rev() {
        for comp in components.iter_mut() {
            *comp = apply_generator(letter, comp);
        }
    }
    CurveClass::from_components(class.strands, components)
}

/// Artin substitution for one generator applied to a reduced cyclic word.
fn apply_generator(letter: i32, word: &[i32]) -> Vec<i32> {
    let i = letter.unsigned_abs() as i32;
    let mut out: Vec<i32> = Vec::with_capacity(word.len() * 2);
    let push = |v: i32, out: &mut Vec<i32>| {
        if out.last() == Some(&-v) {
            out.pop();
        } else {
            out.push(v);
        }
    };
    for &x in word {
        let k = x.abs();
        let image: &[i32] = if letter > 0 {
            // s_i: x_i -> x_i x_{i+1} x_i^{-1}, x_{i+1} -> x_i
            if k == i {
                if x > 0 { &[i, i + 1, -i] } else { &[i, -(i + 1), -i] }
            } else if k == i + 1 {
                if x > 0 { &[i] } else { &[-i] }
            } else {
                std::slice::from_ref(&x)
            }
        } else {
            // s_i^{-1}: x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^{-1} x_i x_{i+1}
            if k == i {
                if x > 0 { &[i + 1] } else { &[-(i + 1)] }
            } else if k == i + 1 {
                if x > 0 { &[-(i + 1), i, i + 1] } else { &[-(i + 1), -i, i + 1] }
            } else {
                std::slice::from_ref(&x)
            }
        };
        for &v in image {
            push(v, &mut out);
        }
    }
    cyclically_reduce(&mut out);
    out
}

fn cyclically_reduce(word: &mut Vec<i32>) {
    while word.len() >= 2 && *word.first().unwrap() == -*word.last().unwrap() {
        word.pop();
        word.remove(0);
    }
}

/// Lexicographically least representative of the cyclic class of `word`,
/// taken over both orientations.
fn canonical_cyclic(word: &[i32]) -> Vec<i32> {
    if word.is_empty() {
        return Vec::new();
    }
    let fwd = least_rotation_of(word);
    let inv: Vec<i32> = word.iter().rev().map(|&x| -x).collect();
    let bwd = least_rotation_of(&inv);
    if fwd <= bwd { fwd } else { bwd }
}

fn least_rotation_of(s: &[i32]) -> Vec<i32> {
    let k = least_rotation_index(s);
    let mut out = Vec::with_capacity(s.len());
    out.extend_from_slice(&s[k..]);
    out.extend_from_slice(&s[..k]);
    out
}

fn least_rotation_index(s: &[i32]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Crossing sequence of a component with the punctured axis: pairs of
/// (gap index, upward?) with gaps numbered `0..=n` left to right.
fn crossing_word(word: &[i32]) -> Vec<(u32, bool)> {
    let mut crossings: Vec<(u32, bool)> = Vec::with_capacity(word.len() * 2);
    for &x in word {
        let k = x.unsigned_abs();
        if x > 0 {
            crossings.push((k, true));
            crossings.push((k - 1, false));
        } else {
            crossings.push((k - 1, true));
            crossings.push((k, false));
        }
    }
    // bigon removal: adjacent crossings of the same gap cancel (cyclically)
    let mut stack: Vec<(u32, bool)> = Vec::with_capacity(crossings.len());
    for c in crossings {
        if stack.last().is_some_and(|&(g, _)| g == c.0) {
            stack.pop();
        } else {
            stack.push(c);
        }
    }
    loop {
        let len = stack.len();
        if len >= 2 && stack[0].0 == stack[len - 1].0 {
            stack.pop();
            stack.remove(0);
        } else {
            break;
        }
    }
    debug_assert!(stack.len() % 2 == 0);
    stack
}

/// Coordinates from wall and puncture-passage counts.
fn coordinates(strands: usize, components: &[Vec<i32>]) -> Vec<i64> {
    let n = strands;
    if n < 3 {
        return Vec::new();
    }
    let mut walls = vec![0i64; n + 1]; // m_j for walls j = 1..=n-1
    let mut above = vec![0i64; n + 1]; // passes over puncture k
    let mut below = vec![0i64; n + 1];
    for comp in components {
        let cw = crossing_word(comp);
        let len = cw.len();
        for t in 0..len {
            let (ga, up) = cw[t];
            let (gb, _) = cw[(t + 1) % len];
            let (lo, hi) = if ga <= gb { (ga, gb) } else { (gb, ga) };
            for j in lo + 1..=hi {
                if (j as usize) <= n - 1 {
                    walls[j as usize] += 1;
                }
                let k = j as usize; // arc passes puncture k
                if up {
                    above[k] += 1;
                } else {
                    below[k] += 1;
                }
            }
        }
    }
    let mut coords = Vec::with_capacity(2 * n - 4);
    for i in 1..=n - 2 {
        let d = above[i + 1] - below[i + 1];
        debug_assert!(d % 2 == 0);
        coords.push(d / 2);
    }
    for i in 1..=n - 2 {
        let d = walls[i] - walls[i + 1];
        debug_assert!(d % 2 == 0);
        coords.push(d / 2);
    }
    coords
}

/// The word `witness . s_j . witness^{-1}` for a pushed two-punctured curve;
/// its action fixes the curve's class.
pub fn half_twist(b: &PushedCurve) -> Result<BraidWord> {
    if !b.base.is_two_punctured() {
        return Err(Error::NotTwoPunctured(b.base.weight()));
    }
    let s = BraidWord::generator(b.base.strands, b.base.lo)?;
    BraidWord::conjugate(&b.witness, &s)
}

/// The Dehn twist about a round curve with `k` punctures:
/// `(s_lo ... s_{hi-1})^k`.
pub fn dehn_twist(c: &RoundCurve) -> BraidWord {
    let n = c.strands;
    let run: Vec<i32> = (c.lo..c.hi).map(|i| i as i32).collect();
    let base = BraidWord::new(n, run).expect("valid letters");
    base.pow(c.weight() as i64)
}

/// Disjointness of two pushed two-punctured curves, decided through
/// commutation of their half-twists.
pub fn disjoint(b1: &PushedCurve, b2: &PushedCurve) -> Result<bool> {
    let h1 = half_twist(b1)?;
    let h2 = half_twist(b2)?;
    if b1.class() == b2.class() {
        return Err(Error::ClassesEqual);
    }
    commutes(&h1, &h2)
}

/// A chain: consecutive half-twists satisfy the braid relation, all other
/// pairs commute. Every curve must surround exactly two punctures.
pub fn is_chain(curves: &[PushedCurve]) -> Result<bool> {
    let twists: Vec<BraidWord> = curves.iter().map(half_twist).collect::<Result<_>>()?;
    for i in 0..twists.len() {
        for j in i + 1..twists.len() {
            let ok = if j == i + 1 {
                braid_relation(&twists[i], &twists[j])?
            } else {
                commutes(&twists[i], &twists[j])?
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::BraidWord;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn round(n: usize, lo: usize, hi: usize) -> RoundCurve {
        RoundCurve::new(n, lo, hi).unwrap()
    }

    #[test]
    fn round_curve_validation() {
        assert!(RoundCurve::new(5, 1, 5).is_err());
        assert!(RoundCurve::new(5, 3, 3).is_err());
        assert!(RoundCurve::new(5, 0, 2).is_err());
        assert!(RoundCurve::new(5, 2, 4).is_ok());
    }

    #[test]
    fn distinct_round_curves_distinct_classes() {
        let n = 6;
        let mut seen = Vec::new();
        for lo in 1..=n {
            for hi in lo + 1..=n {
                if lo == 1 && hi == n {
                    continue;
                }
                let c = class_of_round(&round(n, lo, hi));
                assert!(!seen.contains(&c), "collision at [{lo},{hi}]");
                assert_eq!(c.coords().len(), 2 * n - 4);
                // vectors must also be distinct
                assert!(
                    seen.iter().all(|s: &CurveClass| s.coords() != c.coords()),
                    "vector collision at [{lo},{hi}]"
                );
                seen.push(c);
            }
        }
    }

    #[test]
    fn empty_class_is_zero() {
        let e = CurveClass::empty(7);
        assert!(e.coords().iter().all(|&c| c == 0));
        assert!(e.is_empty());
    }

    #[test]
    fn center_acts_trivially() {
        for n in 3..=6 {
            let z = BraidWord::center(n).unwrap();
            for lo in 1..n {
                for hi in lo + 1..=n {
                    if lo == 1 && hi == n {
                        continue;
                    }
                    let c = class_of_round(&round(n, lo, hi));
                    assert_eq!(act(&z, &c), c, "center moved [{lo},{hi}] in B_{n}");
                }
            }
        }
    }

    #[test]
    fn generator_fixes_own_curve() {
        let c = class_of_round(&round(4, 1, 2));
        assert_eq!(act(&w("n=4: 1"), &c), c);
        assert_ne!(act(&w("n=4: 2"), &c), c);
    }

    #[test]
    fn action_is_group_action() {
        let n = 5;
        let c = class_of_round(&round(n, 2, 3));
        let u = w("n=5: 1 -3 2 4");
        let v = w("n=5: -2 -2 1 3");
        let uv = u.concat(&v).unwrap();
        assert_eq!(act(&uv, &c), act(&u, &act(&v, &c)));
        assert_eq!(act(&BraidWord::empty(n), &c), c);
        let winv = act(&u.inverse(), &act(&u, &c));
        assert_eq!(winv, c);
    }

    #[test]
    fn action_matches_permutation_on_round_curves() {
        // the image of a round curve under a block-rigid move is round, and
        // the enclosed punctures transform by the inverse permutation
        let n = 5;
        let delta = w("n=5: 1 2 3 4");
        let p = delta.permutation().inverse();
        for lo in 1..n - 1 {
            let c = class_of_round(&round(n, lo, lo + 1));
            let img = act(&delta, &c);
            let (a, b) = (p.apply(lo), p.apply(lo + 1));
            let (a, b) = (a.min(b), a.max(b));
            if !(a == 1 && b == n) && b == a + 1 {
                assert_eq!(
                    img,
                    class_of_round(&round(n, a, b)),
                    "rotation image of [{lo},{}]",
                    lo + 1
                );
            }
        }
    }

    #[test]
    fn half_twist_examples() {
        let a1 = PushedCurve::standard(round(7, 1, 2));
        assert_eq!(half_twist(&a1).unwrap(), w("n=7: 1"));
        let pushed = PushedCurve::new(round(7, 1, 2), w("n=7: -2 -2 1 2")).unwrap();
        let h = half_twist(&pushed).unwrap();
        assert!(crate::garside::equal(&h, &w("n=7: 2")).unwrap());
        // a half-twist fixes its own curve's class
        assert_eq!(act(&h, &pushed.class()), pushed.class());
        let wide = PushedCurve::standard(round(7, 1, 3));
        assert!(half_twist(&wide).is_err());
    }

    #[test]
    fn dehn_twist_examples() {
        assert_eq!(dehn_twist(&round(5, 1, 2)), w("n=5: 1 1"));
        let t = dehn_twist(&round(7, 1, 6));
        for i in 1..=5 {
            let s = BraidWord::generator(7, i).unwrap();
            assert!(commutes(&t, &s).unwrap(), "T(c0) commutes with s_{i}");
        }
        // dehn twist fixes its own curve
        let c = class_of_round(&round(7, 1, 6));
        assert_eq!(act(&t, &c), c);
    }

    #[test]
    fn disjointness_examples() {
        let n = 7;
        let a = |i: usize| PushedCurve::standard(round(n, i, i + 1));
        assert!(disjoint(&a(1), &a(3)).unwrap());
        assert!(!disjoint(&a(1), &a(2)).unwrap());
        assert!(matches!(disjoint(&a(1), &a(1)), Err(Error::ClassesEqual)));
    }

    #[test]
    fn chain_examples() {
        let n = 7;
        let standard: Vec<PushedCurve> =
            (1..n).map(|i| PushedCurve::standard(round(n, i, i + 1))).collect();
        assert!(is_chain(&standard).unwrap());
        assert!(!is_chain(&[standard[0].clone(), standard[2].clone()]).unwrap());
        // replace a_2 by a pushed copy with a far-away witness
        let g = w("n=7: 5 5 6");
        let mut curves = standard[..3].to_vec();
        curves[1] = PushedCurve::new(round(n, 2, 3), g).unwrap();
        assert!(is_chain(&curves).unwrap());
    }

    #[test]
    fn curve_text_formats_round_trip() {
        for s in ["round(n=7)[3,4]", "round(n=5)[1,4]"] {
            let c: RoundCurve = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        for s in ["push(n=7)[3,4] <- 1 -2 5", "push(n=3)[1,2] <-"] {
            let c: PushedCurve = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
    }
}
