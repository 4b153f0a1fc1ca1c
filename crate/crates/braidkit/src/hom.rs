//! Homomorphisms of braid groups presented by generator images: validation,
//! transvection, restriction to the commutator subgroup, equivalence
//! witnesses, and the machine-checked identity suite for the conjugator
//! constructions used in the classification arguments.

use crate::crs::{gamma_of_set, zn_twist_forms};
use crate::curves::{is_chain, PushedCurve, RoundCurve};
use crate::garside::{braid_relation, commutes, conjugates_witness, equal, is_trivial};
use crate::multicurve::standard_m;
use crate::report::Status;
use crate::word::BraidWord;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A homomorphism `B_n -> B_m` given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    pub source_strands: usize,
    pub target_strands: usize,
    pub images: Vec<BraidWord>,
}

impl GeneratorMap {
    pub fn new(
        source_strands: usize,
        target_strands: usize,
        images: Vec<BraidWord>,
    ) -> Result<Self> {
        if images.len() != source_strands - 1 {
            return Err(Error::InvalidHom);
        }
        for im in &images {
            if im.strands() != target_strands {
                return Err(Error::StrandMismatch(im.strands(), target_strands));
            }
        }
        Ok(GeneratorMap { source_strands, target_strands, images })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let images = (1..n).map(|i| BraidWord::generator(n, i)).collect::<Result<_>>()?;
        GeneratorMap::new(n, n, images)
    }

    /// The map sending every generator to a fixed word; always a homomorphism.
    pub fn constant(n: usize, image: &BraidWord) -> Result<Self> {
        GeneratorMap::new(n, image.strands(), vec![image.clone(); n - 1])
    }

    /// Checks that the images satisfy the defining relations.
    pub fn validate(&self) -> Result<bool> {
        let m = self.images.len();
        for i in 0..m {
            for j in i + 1..m {
                let ok = if j - i >= 2 {
                    commutes(&self.images[i], &self.images[j])?
                } else {
                    braid_relation(&self.images[i], &self.images[j])?
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Substitutes images for letters.
    pub fn apply(&self, w: &BraidWord) -> Result<BraidWord> {
        if w.strands() != self.source_strands {
            return Err(Error::StrandMismatch(w.strands(), self.source_strands));
        }
        let mut acc = BraidWord::empty(self.target_strands);
        for &e in w.letters() {
            let img = &self.images[e.unsigned_abs() as usize - 1];
            acc = if e > 0 { acc.concat(img)? } else { acc.concat(&img.inverse())? };
        }
        Ok(acc)
    }

    /// Multiplies every image by `z^k`. The result is checked to still be a
    /// homomorphism rather than assumed.
    pub fn transvect(&self, k: i64) -> Result<GeneratorMap> {
        if self.source_strands != self.target_strands {
            return Err(Error::StrandMismatch(self.source_strands, self.target_strands));
        }
        let z = BraidWord::center_pow(self.target_strands, k)?;
        let images = self
            .images
            .iter()
            .map(|im| im.concat(&z))
            .collect::<Result<Vec<_>>>()?;
        let out = GeneratorMap::new(self.source_strands, self.target_strands, images)?;
        if !out.validate()? {
            return Err(Error::InvalidHom);
        }
        Ok(out)
    }

    /// Images of the commutator-subgroup generators `s_1 s_i^{-1}`.
    pub fn restrict(&self) -> Result<CommutatorMap> {
        let n = self.source_strands;
        let images = (2..n)
            .map(|i| {
                let gen = BraidWord::new(n, vec![1, -(i as i32)])?;
                self.apply(&gen)
            })
            .collect::<Result<_>>()?;
        Ok(CommutatorMap { strands: n, target_strands: self.target_strands, images })
    }

    /// True iff all generator images coincide, i.e. the image is cyclic.
    pub fn has_cyclic_image(&self) -> Result<bool> {
        for im in &self.images[1..] {
            if !equal(&self.images[0], im)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A homomorphism out of the commutator subgroup, recorded by the images of
/// the generators `s_1 s_i^{-1}` for `2 <= i <= n-1`. There is no finite
/// relation check here; well-definedness is certified only when the map
/// arises as a restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorMap {
    pub strands: usize,
    pub target_strands: usize,
    pub images: Vec<BraidWord>,
}

impl CommutatorMap {
    /// Image-wise equality against another map.
    pub fn images_equal(&self, other: &CommutatorMap) -> Result<bool> {
        if self.images.len() != other.images.len() {
            return Ok(false);
        }
        for (a, b) in self.images.iter().zip(other.images.iter()) {
            if !equal(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An automorphism in inner-times-inversion form: `w -> g i^e(w) g^{-1}`
/// where `i` inverts every generator letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    pub inner: BraidWord,
    pub inversion: bool,
}

impl Automorphism {
    pub fn identity(n: usize) -> Automorphism {
        Automorphism { inner: BraidWord::empty(n), inversion: false }
    }

    pub fn inversion(n: usize) -> Automorphism {
        Automorphism { inner: BraidWord::empty(n), inversion: true }
    }

    pub fn inner(g: BraidWord) -> Automorphism {
        Automorphism { inner: g, inversion: false }
    }

    pub fn apply(&self, w: &BraidWord) -> Result<BraidWord> {
        let flipped = if self.inversion {
            let letters = w.letters().iter().map(|&e| -e).collect();
            BraidWord::new(w.strands(), letters)?
        } else {
            w.clone()
        };
        BraidWord::conjugate(&self.inner, &flipped)
    }
}

/// Witness data for equivalence of two maps: an automorphism and a
/// transvection exponent (necessarily zero on commutator sources).
#[derive(Debug, Clone)]
pub struct EquivalenceWitness {
    pub auto: Automorphism,
    pub transvection: i64,
}

impl EquivalenceWitness {
    pub fn trivial(n: usize) -> EquivalenceWitness {
        EquivalenceWitness { auto: Automorphism::identity(n), transvection: 0 }
    }
}

/// `alpha . (m transvected by z^k)`, computed generator-wise.
pub fn compose_equivalence(m: &GeneratorMap, w: &EquivalenceWitness) -> Result<GeneratorMap> {
    let transvected = if w.transvection == 0 { m.clone() } else { m.transvect(w.transvection)? };
    let images = transvected
        .images
        .iter()
        .map(|im| w.auto.apply(im))
        .collect::<Result<_>>()?;
    GeneratorMap::new(m.source_strands, m.target_strands, images)
}

/// Commutator-source version; the transvection exponent must be zero.
pub fn compose_equivalence_commutator(
    m: &CommutatorMap,
    w: &EquivalenceWitness,
) -> Result<CommutatorMap> {
    if w.transvection != 0 {
        return Err(Error::TransvectionOnCommutator);
    }
    let images = m.images.iter().map(|im| w.auto.apply(im)).collect::<Result<_>>()?;
    Ok(CommutatorMap {
        strands: m.strands,
        target_strands: m.target_strands,
        images,
    })
}

/// True iff `alpha . m1^{z^k} = m2` generator by generator.
pub fn check_equivalence(
    m1: &GeneratorMap,
    m2: &GeneratorMap,
    w: &EquivalenceWitness,
) -> Result<bool> {
    if m1.source_strands != m2.source_strands || m1.target_strands != m2.target_strands {
        return Err(Error::StrandMismatch(m1.source_strands, m2.source_strands));
    }
    let composed = compose_equivalence(m1, w)?;
    for (a, b) in composed.images.iter().zip(m2.images.iter()) {
        if !equal(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The short conjugator `s_{k+1}^{-2} s_k s_{k+1}` taking `s_k` to `s_{k+1}`,
/// lying in the commutator subgroup and supported on three strands.
pub fn shift_mover(n: usize, k: usize) -> Result<BraidWord> {
    let i = k as i32;
    BraidWord::new(n, vec![-(i + 1), -(i + 1), i, i + 1])
}

/// The conjugator `s_i^{9-2i} (s_{i-1} .. s_5)(s_i .. s_5)` (descending
/// products) taking `s_5` to `s_i` while commuting with `s_1` and `s_3`.
pub fn distant_mover(n: usize, i: usize) -> Result<BraidWord> {
    if !(5..n).contains(&i) {
        return Err(Error::InvalidLetter(i as i32, n));
    }
    let mut letters = Vec::new();
    let head = BraidWord::generator(n, i)?.pow(9 - 2 * i as i64);
    letters.extend_from_slice(head.letters());
    for k in (5..=i - 1).rev() {
        letters.push(k as i32);
    }
    for k in (5..=i).rev() {
        letters.push(k as i32);
    }
    BraidWord::new(n, letters)
}

/// A word in the commutator subgroup conjugating `s_1 s_3^{-1}` to
/// `s_i s_j^{-1}` for `j - i >= 2`, built from shift movers with disjoint
/// supports.
pub fn commutator_conjugacy_witness(n: usize, i: usize, j: usize) -> Result<BraidWord> {
    if i < 1 || j > n - 1 || j < i + 2 {
        return Err(Error::InvalidLetter(j as i32, n));
    }
    // move s_3 up to s_j on strands 3..j+1, then s_1 up to s_i on 1..i+1
    let mut u = BraidWord::empty(n);
    for k in 3..j {
        u = shift_mover(n, k)?.concat(&u)?;
    }
    let mut v = BraidWord::empty(n);
    for k in 1..i {
        v = shift_mover(n, k)?.concat(&v)?;
    }
    v.concat(&u)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteItem {
    pub item: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub strands: usize,
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail && i.status != Status::Error)
    }

    pub fn status_of(&self, key: &str) -> Option<Status> {
        self.items.iter().find(|i| i.item == key).map(|i| i.status)
    }
}

/// Deliberate perturbations used to confirm that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tamper {
    None,
    /// Replace the distant-mover exponent `9-2i` by `8-2i`.
    DistantMoverExponent,
    /// Replace the adjacent mover by a bare generator.
    WrongConjugator,
}

/// Runs every identity in the conjugator toolkit and reports each one.
pub fn identity_suite(n: usize) -> Result<SuiteReport> {
    identity_suite_with(n, Tamper::None)
}

pub fn identity_suite_with(n: usize, tamper: Tamper) -> Result<SuiteReport> {
    if !(5..=12).contains(&n) {
        return Err(Error::StrandsOutOfRange(n, 5, 12));
    }
    let mut items = Vec::new();
    let mut push = |item: &str, status: Status, detail: String| {
        items.push(SuiteItem { item: item.to_string(), status, detail });
    };
    let gen = |i: usize| BraidWord::generator(n, i);
    let pass_fail = |ok: bool| if ok { Status::Pass } else { Status::Fail };

    // (a) the full twist is central with exponent sum n(n-1)
    {
        let z = BraidWord::center(n)?;
        let mut ok = z.exponent_sum() == (n * (n - 1)) as i64;
        for i in 1..n {
            ok &= commutes(&z, &gen(i)?)?;
        }
        push("a_center", pass_fail(ok), format!("exponent sum {}", z.exponent_sum()));
    }

    // (b) the central translates lie in the commutator subgroup and their
    // labeled multicurve is the standard model
    {
        let forms = zn_twist_forms(n)?;
        let mut ok = forms.iter().all(|t| t.word().is_commutator_element());
        let tree = gamma_of_set(&forms, forms.len())?;
        ok &= tree.equivalent(&standard_m(n)?)?;
        push("b_translate_family", pass_fail(ok), format!("{} members", forms.len()));
    }

    // (c) adjacent mover: conjugates s_1 to s_2, commutes with s_5, exponent 0
    if n >= 6 {
        let g = match tamper {
            Tamper::WrongConjugator => gen(2)?,
            _ => BraidWord::new(n, vec![-2, -2, 1, 2])?,
        };
        let ok = conjugates_witness(&g, &gen(1)?, &gen(2)?)?
            && commutes(&g, &gen(5)?)?
            && g.exponent_sum() == 0;
        push("c_adjacent_mover", pass_fail(ok), String::new());
    } else {
        push("c_adjacent_mover", Status::Skip, "needs six strands".into());
    }

    // (d) distant movers: g_i takes s_5 to s_i, commuting with s_1 and s_3
    if n >= 6 {
        let mut ok = true;
        let mut checked = 0;
        for i in 5..n {
            let g = match tamper {
                Tamper::DistantMoverExponent => {
                    let head = gen(i)?.pow(8 - 2 * i as i64);
                    let tail = distant_mover(n, i)?;
                    let correct_head = gen(i)?.pow(9 - 2 * i as i64);
                    head.concat(&correct_head.inverse())?.concat(&tail)?
                }
                _ => distant_mover(n, i)?,
            };
            ok &= conjugates_witness(&g, &gen(5)?, &gen(i)?)?;
            ok &= commutes(&g, &gen(1)?)?;
            ok &= commutes(&g, &gen(3)?)?;
            ok &= g.exponent_sum() == 0;
            checked += 1;
        }
        push("d_distant_movers", pass_fail(ok), format!("{checked} movers"));
    } else {
        push("d_distant_movers", Status::Skip, "needs six strands".into());
    }

    // (e) g_4 takes s_3 to s_4, commuting with s_1 and every s_i with i >= 6
    {
        let g = BraidWord::new(n, vec![-4, -4, 3, 4])?;
        let mut ok = conjugates_witness(&g, &gen(3)?, &gen(4)?)?
            && commutes(&g, &gen(1)?)?
            && g.exponent_sum() == 0;
        for i in 6..n {
            ok &= commutes(&g, &gen(i)?)?;
        }
        push("e_step_mover", pass_fail(ok), String::new());
    }

    // (f) difference identities through the common first factor
    if n >= 7 {
        let d = |a: usize, b: usize| BraidWord::new(n, vec![a as i32, -(b as i32)]);
        let lhs1 = d(1, 5)?.inverse().concat(&d(1, 6)?)?;
        let lhs2 = d(1, 4)?.inverse().concat(&d(1, 6)?)?;
        let ok = equal(&lhs1, &d(5, 6)?)? && equal(&lhs2, &d(4, 6)?)?;
        push("f_difference_identities", pass_fail(ok), String::new());
    } else {
        push("f_difference_identities", Status::Skip, "needs seven strands".into());
    }

    // (g) braid relations among difference generators
    {
        let d = |a: usize, b: usize| BraidWord::new(n, vec![a as i32, -(b as i32)]);
        let mut ok = true;
        let mut checked = 0;
        for i in 3..n - 1 {
            ok &= braid_relation(&d(1, i)?, &d(1, i + 1)?)?;
            checked += 1;
        }
        if n >= 6 {
            ok &= braid_relation(&d(1, 5)?, &d(2, 5)?)?;
            checked += 1;
        }
        push("g_braid_relations", pass_fail(ok), format!("{checked} relations"));
    }

    // (h) standard curves form a chain, also with a pushed middle curve
    {
        let standard: Vec<PushedCurve> = (1..n)
            .map(|i| Ok(PushedCurve::standard(RoundCurve::new(n, i, i + 1)?)))
            .collect::<Result<_>>()?;
        let mut ok = is_chain(&standard)?;
        if n >= 7 {
            let mut pushed = standard.clone();
            let far = BraidWord::new(n, vec![5, 5, 6])?;
            pushed[1] = PushedCurve::new(RoundCurve::new(n, 2, 3)?, far)?;
            ok &= is_chain(&pushed)?;
        }
        // a non-chain sanity case
        ok &= !is_chain(&[standard[0].clone(), standard[2].clone()])?;
        push("h_chains", pass_fail(ok), String::new());
    }

    // (i) every s_i s_j^{-1} with j - i >= 2 is conjugate to s_1 s_3^{-1} by
    // a commutator-subgroup witness
    {
        let base = BraidWord::new(n, vec![1, -3])?;
        let mut ok = true;
        let mut checked = 0;
        for i in 1..=n - 3 {
            for j in i + 2..n {
                let w = commutator_conjugacy_witness(n, i, j)?;
                let target = BraidWord::new(n, vec![i as i32, -(j as i32)])?;
                ok &= w.is_commutator_element();
                ok &= conjugates_witness(&w, &base, &target)?;
                checked += 1;
            }
        }
        push("i_conjugacy_witnesses", pass_fail(ok), format!("{checked} pairs"));
    }

    // (j) power rigidity: s_1^r s_3^{-r} equals s_1 s_3^{-1} only for r = 1
    {
        let base = BraidWord::new(n, vec![1, -3])?;
        let mut ok = true;
        for r in -3..=3i64 {
            let candidate = gen(1)?.pow(r).concat(&gen(3)?.pow(-r))?;
            let eq = equal(&candidate, &base)?;
            ok &= eq == (r == 1);
        }
        push("j_power_rigidity", pass_fail(ok), String::new());
    }

    Ok(SuiteReport { strands: n, items })
}

/// Map file format: a header `n=7 -> n=7` and one line per generator image,
/// `s1: 1 -3 ..`.
pub fn parse_map_file(text: &str) -> Result<GeneratorMap> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty map file".into()))?;
    let (src, tgt) = header
        .split_once("->")
        .ok_or_else(|| Error::Parse("map header must be `n=<int> -> n=<int>`".into()))?;
    let parse_n = |s: &str| -> Result<usize> {
        s.trim()
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse("expected `n=<int>`".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad strand count".into()))
    };
    let source = parse_n(src)?;
    let target = parse_n(tgt)?;
    let mut images = vec![None; source - 1];
    for line in lines {
        let (name, body) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad map line {line:?}")))?;
        let idx: usize = name
            .trim()
            .strip_prefix('s')
            .ok_or_else(|| Error::Parse(format!("bad generator name {name:?}")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator name {name:?}")))?;
        if idx < 1 || idx >= source {
            return Err(Error::Parse(format!("generator s{idx} out of range")));
        }
        let mut letters = Vec::new();
        for tok in body.split_whitespace() {
            letters.push(tok.parse().map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?);
        }
        images[idx - 1] = Some(BraidWord::new(target, letters)?);
    }
    let images: Vec<BraidWord> = images
        .into_iter()
        .enumerate()
        .map(|(i, im)| im.ok_or_else(|| Error::Parse(format!("missing image for s{}", i + 1))))
        .collect::<Result<_>>()?;
    GeneratorMap::new(source, target, images)
}

pub fn format_map_file(m: &GeneratorMap) -> String {
    let mut out = format!("n={} -> n={}\n", m.source_strands, m.target_strands);
    for (i, im) in m.images.iter().enumerate() {
        out.push_str(&format!("s{}:", i + 1));
        for e in im.letters() {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    out
}
