//! Cabling: building braids from an exterior braid on fat strands and
//! interior braids inside each fat strand, and verifying the semidirect
//! product structure of multicurve stabilizers.
//!
//! A pattern is an un-nested family of blocks of consecutive punctures.
//! Crushing each block to a marked point leaves a smaller disk whose points
//! carry the block sizes as labels; exteriors are braids on that disk whose
//! permutation preserves the labels. The composition rules are validated by
//! permutation and curve-action checks rather than trusted.

use crate::curves::{act, class_of_round, CurveClass, RoundCurve};
use crate::garside::equal;
use crate::report::Checks;
use crate::word::{BraidWord, Permutation};
use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Disjoint blocks of consecutive punctures in standard position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CablePattern {
    strands: usize,
    blocks: Vec<(usize, usize)>,
}

impl CablePattern {
    pub fn new(strands: usize, blocks: Vec<(usize, usize)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPattern("no blocks".into()));
        }
        let mut prev_hi = 0;
        for &(lo, hi) in &blocks {
            if lo <= prev_hi {
                return Err(Error::InvalidPattern(format!(
                    "blocks must be sorted and disjoint near [{lo},{hi}]"
                )));
            }
            if hi <= lo || hi > strands {
                return Err(Error::InvalidPattern(format!("bad block [{lo},{hi}]")));
            }
            if lo == 1 && hi == strands {
                return Err(Error::InvalidPattern("block equals the whole disk".into()));
            }
            prev_hi = hi;
        }
        Ok(CablePattern { strands, blocks })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|&(lo, hi)| hi - lo + 1).collect()
    }

    pub fn block_curves(&self) -> Vec<RoundCurve> {
        self.blocks
            .iter()
            .map(|&(lo, hi)| RoundCurve::new(self.strands, lo, hi).expect("validated"))
            .collect()
    }

    pub fn block_classes(&self) -> Vec<CurveClass> {
        self.block_curves().iter().map(class_of_round).collect()
    }

    /// Strand labels of the crushed disk: block sizes for crushed blocks and
    /// 1 for free punctures, in position order.
    pub fn delta_labels(&self) -> Vec<usize> {
        let mut labels = Vec::new();
        let mut p = 1;
        let mut block = 0;
        while p <= self.strands {
            if block < self.blocks.len() && self.blocks[block].0 == p {
                labels.push(self.blocks[block].1 - self.blocks[block].0 + 1);
                p = self.blocks[block].1 + 1;
                block += 1;
            } else {
                labels.push(1);
                p += 1;
            }
        }
        labels
    }

    pub fn delta_strands(&self) -> usize {
        self.delta_labels().len()
    }

    /// Index into the delta strands for each block, in block order.
    pub fn block_delta_positions(&self) -> Vec<usize> {
        let mut positions = Vec::new();
        let mut delta = 0;
        let mut p = 1;
        let mut block = 0;
        while p <= self.strands {
            if block < self.blocks.len() && self.blocks[block].0 == p {
                positions.push(delta);
                p = self.blocks[block].1 + 1;
                block += 1;
            } else {
                p += 1;
            }
            delta += 1;
        }
        positions
    }
}

impl fmt::Display for CablePattern {
    /// Format: `pattern(n=7) blocks=[1..2, 3..4]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&(lo, hi)| format!("{lo}..{hi}"))
            .collect();
        write!(f, "pattern(n={}) blocks=[{}]", self.strands, parts.join(", "))
    }
}

impl FromStr for CablePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix("pattern(n=")
            .ok_or_else(|| Error::Parse("expected `pattern(n=..) blocks=[..]`".into()))?;
        let (n_str, rest) = rest
            .split_once(')')
            .ok_or_else(|| Error::Parse("missing `)` in pattern".into()))?;
        let strands: usize = n_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad strand count".into()))?;
        let rest = rest.trim();
        let body = rest
            .strip_prefix("blocks=[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse("missing `blocks=[..]`".into()))?;
        let mut blocks = Vec::new();
        for part in body.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (lo_s, hi_s) = part
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("bad block {part:?}")))?;
            blocks.push((
                lo_s.trim().parse().map_err(|_| Error::Parse("bad block lo".into()))?,
                hi_s.trim().parse().map_err(|_| Error::Parse("bad block hi".into()))?,
            ));
        }
        CablePattern::new(strands, blocks)
    }
}

/// An element of the stabilizer presented in cabled form.
#[derive(Debug, Clone)]
pub struct CabledBraid {
    pub exterior: BraidWord,
    pub interiors: Vec<BraidWord>,
}

impl CabledBraid {
    pub fn trivial(pattern: &CablePattern) -> CabledBraid {
        CabledBraid {
            exterior: BraidWord::empty(pattern.delta_strands()),
            interiors: pattern
                .block_sizes()
                .iter()
                .map(|&s| BraidWord::empty(s))
                .collect(),
        }
    }
}

/// True iff the exterior's permutation sends every crushed strand to one of
/// the same label.
pub fn validate_exterior(pattern: &CablePattern, exterior: &BraidWord) -> Result<bool> {
    let labels = pattern.delta_labels();
    if exterior.strands() != labels.len() {
        return Err(Error::StrandMismatch(exterior.strands(), labels.len()));
    }
    let perm = exterior.permutation();
    Ok((1..=labels.len()).all(|i| labels[perm.apply(i) - 1] == labels[i - 1]))
}

/// Expands an exterior braid on the crushed disk to a braid on the full disk:
/// each generator becomes the block-crossing word for the current widths.
pub fn expand_exterior(pattern: &CablePattern, exterior: &BraidWord) -> Result<BraidWord> {
    if !validate_exterior(pattern, exterior)? {
        return Err(Error::ExteriorLabelMismatch);
    }
    let n = pattern.strands();
    let mut widths = pattern.delta_labels();
    let mut letters: Vec<i32> = Vec::new();
    for &e in exterior.letters() {
        let j = e.unsigned_abs() as usize; // crossing delta strands j, j+1
        let a = widths[j - 1];
        let b = widths[j];
        let start = 1 + widths[..j - 1].iter().sum::<usize>();
        if e > 0 {
            append_block_cross(&mut letters, start, a, b, false);
        } else {
            append_block_cross(&mut letters, start, b, a, true);
        }
        widths.swap(j - 1, j);
    }
    BraidWord::new(n, letters)
}

/// The word carrying a block of width `a` rigidly over a block of width `b`,
/// both starting at `start`. With `invert` the inverse crossing is emitted.
fn append_block_cross(letters: &mut Vec<i32>, start: usize, a: usize, b: usize, invert: bool) {
    let mut word = Vec::with_capacity(a * b);
    for j in 0..b {
        for i in (0..a).rev() {
            word.push((start + i + j) as i32);
        }
    }
    if invert {
        letters.extend(word.iter().rev().map(|&x| -x));
    } else {
        letters.extend(word);
    }
}

/// Embeds interior braids into their blocks: the disjoint juxtaposition.
pub fn embed_interiors(pattern: &CablePattern, interiors: &[BraidWord]) -> Result<BraidWord> {
    let sizes = pattern.block_sizes();
    if interiors.len() != sizes.len() {
        return Err(Error::InvalidPattern(format!(
            "{} interiors for {} blocks",
            interiors.len(),
            sizes.len()
        )));
    }
    let mut letters = Vec::new();
    for (braid, (&size, &(lo, _))) in
        interiors.iter().zip(sizes.iter().zip(pattern.blocks.iter()))
    {
        if braid.strands() != size {
            return Err(Error::StrandMismatch(braid.strands(), size));
        }
        let shift = (lo - 1) as i32;
        for &e in braid.letters() {
            letters.push(if e > 0 { e + shift } else { e - shift });
        }
    }
    BraidWord::new(pattern.strands(), letters)
}

/// Composes exterior and interiors into a braid of the full disk.
pub fn cable(pattern: &CablePattern, braid: &CabledBraid) -> Result<BraidWord> {
    let outside = expand_exterior(pattern, &braid.exterior)?;
    let inside = embed_interiors(pattern, &braid.interiors)?;
    outside.concat(&inside)
}

/// True iff the word maps the set of block curve classes to itself.
pub fn stabilizes(pattern: &CablePattern, word: &BraidWord) -> Result<bool> {
    if word.strands() != pattern.strands() {
        return Err(Error::StrandMismatch(word.strands(), pattern.strands()));
    }
    let classes = pattern.block_classes();
    let mut images: Vec<CurveClass> = classes.iter().map(|c| act(word, c)).collect();
    let mut originals = classes;
    images.sort();
    originals.sort();
    Ok(images == originals)
}

/// The induced permutation of the crushed disk's marked points, read off the
/// strand permutation of a stabilizing word.
pub fn block_permutation(pattern: &CablePattern, word: &BraidWord) -> Result<Permutation> {
    if !stabilizes(pattern, word)? {
        return Err(Error::DoesNotStabilize);
    }
    let perm = word.permutation();
    let labels = pattern.delta_labels();
    let delta_count = labels.len();
    // delta position of each puncture
    let mut delta_of_puncture = vec![0usize; pattern.strands() + 1];
    {
        let mut p = 1;
        let mut block = 0;
        let mut delta = 0;
        while p <= pattern.strands() {
            if block < pattern.blocks.len() && pattern.blocks[block].0 == p {
                for q in pattern.blocks[block].0..=pattern.blocks[block].1 {
                    delta_of_puncture[q] = delta;
                }
                p = pattern.blocks[block].1 + 1;
                block += 1;
            } else {
                delta_of_puncture[p] = delta;
                p += 1;
            }
            delta += 1;
        }
    }
    let mut images = vec![usize::MAX; delta_count];
    for p in 1..=pattern.strands() {
        let from = delta_of_puncture[p];
        let to = delta_of_puncture[perm.apply(p)];
        if images[from] == usize::MAX {
            images[from] = to + 1;
        } else if images[from] != to + 1 {
            return Err(Error::DoesNotStabilize);
        }
    }
    let perm = Permutation::from_images(&images)
        .map_err(|_| Error::DoesNotStabilize)?;
    for d in 1..=delta_count {
        if labels[perm.apply(d) - 1] != labels[d - 1] {
            return Err(Error::DoesNotStabilize);
        }
    }
    Ok(perm)
}

/// Reindexes interiors along the block permutation of an exterior: the
/// interior of a block travels with the block.
pub fn permute_interiors(
    pattern: &CablePattern,
    exterior: &BraidWord,
    interiors: &[BraidWord],
) -> Result<Vec<BraidWord>> {
    let perm = exterior.permutation();
    let positions = pattern.block_delta_positions();
    let mut out = interiors.to_vec();
    for (j, &pos) in positions.iter().enumerate() {
        let image_pos = perm.apply(pos + 1) - 1;
        let target = positions
            .iter()
            .position(|&p| p == image_pos)
            .ok_or(Error::ExteriorLabelMismatch)?;
        out[target] = interiors[j].clone();
    }
    Ok(out)
}

/// Verifies the three algebraic pieces of the semidirect decomposition on a
/// pair of cabled braids: the exterior section is a homomorphism, the kernel
/// is the blockwise direct product, and conjugation permutes the interiors.
pub fn check_semidirect(
    pattern: &CablePattern,
    cb1: &CabledBraid,
    cb2: &CabledBraid,
) -> Result<Checks> {
    let mut checks = Checks::new();

    let s1 = expand_exterior(pattern, &cb1.exterior)?;
    let s2 = expand_exterior(pattern, &cb2.exterior)?;
    let e12 = cb1.exterior.concat(&cb2.exterior)?;
    let s12 = expand_exterior(pattern, &e12)?;
    checks.push(
        "section multiplies exteriors",
        equal(&s1.concat(&s2)?, &s12)?,
        "",
    );

    let k1 = embed_interiors(pattern, &cb1.interiors)?;
    let k2 = embed_interiors(pattern, &cb2.interiors)?;
    let products: Vec<BraidWord> = cb1
        .interiors
        .iter()
        .zip(cb2.interiors.iter())
        .map(|(a, b)| a.concat(b))
        .collect::<Result<_>>()?;
    let k12 = embed_interiors(pattern, &products)?;
    checks.push(
        "kernel is the blockwise product",
        equal(&k1.concat(&k2)?, &k12)?,
        "",
    );

    let conjugated = BraidWord::conjugate(&s1, &k2)?;
    let moved = permute_interiors(pattern, &cb1.exterior, &cb2.interiors)?;
    let k_moved = embed_interiors(pattern, &moved)?;
    checks.push(
        "conjugation permutes interiors",
        equal(&conjugated, &k_moved)?,
        "",
    );

    // composite words stabilize and project onto the exterior permutation
    for (name, cb, section) in [("first", cb1, &s1), ("second", cb2, &s2)] {
        let whole = section.concat(&embed_interiors(pattern, &cb.interiors)?)?;
        let stab = stabilizes(pattern, &whole)?;
        checks.push(format!("{name} cabled braid stabilizes"), stab, "");
        if stab {
            let induced = block_permutation(pattern, &whole)?;
            checks.push(
                format!("{name} block permutation matches exterior"),
                induced == cb.exterior.permutation(),
                "",
            );
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(s: &str) -> CablePattern {
        s.parse().unwrap()
    }

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn pattern_validation_and_format() {
        let p = pattern("pattern(n=7) blocks=[1..2, 3..4]");
        assert_eq!(p.delta_labels(), vec![2, 2, 1, 1, 1]);
        assert_eq!(p.delta_strands(), 5);
        assert_eq!(p.to_string(), "pattern(n=7) blocks=[1..2, 3..4]");
        assert!("pattern(n=7) blocks=[1..2, 2..4]".parse::<CablePattern>().is_err());
        assert!("pattern(n=4) blocks=[1..4]".parse::<CablePattern>().is_err());
    }

    #[test]
    fn exterior_label_check() {
        let p = pattern("pattern(n=7) blocks=[1..2, 3..4]");
        // delta strands: [2, 2, 1, 1, 1]
        assert!(validate_exterior(&p, &w("n=5: 1")).unwrap());
        assert!(!validate_exterior(&p, &w("n=5: 2")).unwrap());
        assert!(validate_exterior(&p, &w("n=5: 3")).unwrap());
        assert!(validate_exterior(&p, &w("n=5:")).unwrap());
        assert!(validate_exterior(&p, &w("n=4: 1")).is_err());
    }

    #[test]
    fn identity_exterior_is_juxtaposition() {
        let p = pattern("pattern(n=7) blocks=[1..2, 3..4]");
        let cb = CabledBraid {
            exterior: BraidWord::empty(5),
            interiors: vec![w("n=2: 1"), w("n=2: 1"), ],
        };
        let word = cable(&p, &cb).unwrap();
        assert!(equal(&word, &w("n=7: 1 3")).unwrap());
        let trivial = cable(&p, &CabledBraid::trivial(&p)).unwrap();
        assert!(trivial.is_empty());
    }

    #[test]
    fn block_transposition_acts_on_classes() {
        let p = pattern("pattern(n=7) blocks=[1..2, 3..4]");
        let mut cb = CabledBraid::trivial(&p);
        cb.exterior = w("n=5: 1");
        let word = cable(&p, &cb).unwrap();
        let c12 = class_of_round(&RoundCurve::new(7, 1, 2).unwrap());
        let c34 = class_of_round(&RoundCurve::new(7, 3, 4).unwrap());
        assert_eq!(act(&word, &c12), c34);
        assert_eq!(act(&word, &c34), c12);
        // the square fixes both classes
        let sq = word.concat(&word).unwrap();
        assert_eq!(act(&sq, &c12), c12);
        assert_eq!(act(&sq, &c34), c34);
    }

    #[test]
    fn stabilizer_membership() {
        let p = pattern("pattern(n=7) blocks=[1..2, 3..4]");
        let mut cb = CabledBraid::trivial(&p);
        cb.exterior = w("n=5: 1 3 -4");
        cb.interiors[0] = w("n=2: 1 1");
        let word = cable(&p, &cb).unwrap();
        assert!(stabilizes(&p, &word).unwrap());
        assert!(!stabilizes(&p, &w("n=7: 2")).unwrap());
        assert!(stabilizes(&p, &BraidWord::center(7).unwrap()).unwrap());
    }

    #[test]
    fn block_permutation_examples() {
        let p = pattern("pattern(n=7) blocks=[1..2, 3..4]");
        let mut cb = CabledBraid::trivial(&p);
        cb.exterior = w("n=5: 1 4 3");
        let word = cable(&p, &cb).unwrap();
        assert_eq!(
            block_permutation(&p, &word).unwrap(),
            cb.exterior.permutation()
        );
        assert!(block_permutation(&p, &w("n=7: 2")).is_err());
        let z = BraidWord::center(7).unwrap();
        assert!(block_permutation(&p, &z).unwrap().is_identity());
    }

    #[test]
    fn semidirect_checks_pass() {
        let p = pattern("pattern(n=7) blocks=[1..2, 3..4]");
        let cb1 = CabledBraid {
            exterior: w("n=5: 1 3"),
            interiors: vec![w("n=2: 1"), w("n=2: -1")],
        };
        let cb2 = CabledBraid {
            exterior: w("n=5: -1 4"),
            interiors: vec![w("n=2: 1 1"), w("n=2:")],
        };
        let checks = check_semidirect(&p, &cb1, &cb2).unwrap();
        assert!(checks.all_passed(), "{checks}");
    }

    #[test]
    fn one_block_pattern() {
        let p = pattern("pattern(n=3) blocks=[1..2]");
        let cb1 = CabledBraid {
            exterior: w("n=2: 1 1"),
            interiors: vec![w("n=2: 1")],
        };
        let cb2 = CabledBraid {
            exterior: w("n=2: -1 -1"),
            interiors: vec![w("n=2: -1 -1")],
        };
        let checks = check_semidirect(&p, &cb1, &cb2).unwrap();
        assert!(checks.all_passed(), "{checks}");
    }

    #[test]
    fn mixed_width_blocks() {
        let p = pattern("pattern(n=9) blocks=[1..3, 4..5, 7..8]");
        assert_eq!(p.delta_labels(), vec![3, 2, 1, 2, 1]);
        // widths 3 and 2 cross: delta strands 2 and 4 share the label 2
        let mut cb = CabledBraid::trivial(&p);
        cb.exterior = w("n=5: 2 3 3 2");
        assert!(validate_exterior(&p, &cb.exterior).unwrap());
        let word = cable(&p, &cb).unwrap();
        assert!(stabilizes(&p, &word).unwrap());
        assert_eq!(
            block_permutation(&p, &word).unwrap(),
            cb.exterior.permutation()
        );
    }

    #[test]
    fn nested_flattening_consistency() {
        // the fat block's interior is itself cabled; flattening the nesting
        // gives the same element of the big braid group
        let outer = pattern("pattern(n=8) blocks=[1..4, 5..6]");
        let inner = pattern("pattern(n=4) blocks=[1..2, 3..4]");
        let inner_cb = CabledBraid {
            exterior: w("n=2: 1"),
            interiors: vec![w("n=2: 1"), w("n=2: -1")],
        };
        let inner_word = cable(&inner, &inner_cb).unwrap();
        // outer delta strands: [4, 2, 1, 1]; swap the two free punctures
        let outer_cb = CabledBraid {
            exterior: w("n=4: 3"),
            interiors: vec![inner_word, w("n=2: 1")],
        };
        let composite = cable(&outer, &outer_cb).unwrap();
        // flattened delta strands: [2, 2, 2, 1, 1]; the outer move becomes
        // s_4 and the inner exterior becomes s_1
        let flat = pattern("pattern(n=8) blocks=[1..2, 3..4, 5..6]");
        let flat_cb = CabledBraid {
            exterior: w("n=5: 4 1"),
            interiors: vec![w("n=2: 1"), w("n=2: -1"), w("n=2: 1")],
        };
        let flat_word = cable(&flat, &flat_cb).unwrap();
        assert!(equal(&composite, &flat_word).unwrap());
    }
}
