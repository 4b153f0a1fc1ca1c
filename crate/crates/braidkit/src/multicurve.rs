//! Labeled multicurves in the punctured disk up to the braid-group action.
//!
//! By the change-of-coordinates principle, the orbit of a labeled multicurve
//! under the braid group is determined by its nesting structure: a rooted tree
//! whose nodes carry puncture counts and label sets, with siblings unordered.
//! This turns orbit questions (equivalence, total symmetry, classification)
//! into finite tree computations.

use crate::curves::RoundCurve;
use crate::word::{all_permutations, Permutation};
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// Largest label universe accepted by the brute-force symmetry check.
pub const MAX_LABELS: usize = 8;

/// A label set: a nonempty subset of `{1..N}`, stored as a bitmask.
pub type LabelMask = u16;

fn full_mask(label_count: usize) -> LabelMask {
    ((1u32 << label_count) - 1) as LabelMask
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Node {
    weight: usize,
    label: LabelMask,
    children: Vec<Node>,
}

impl Node {
    fn canonicalize(&mut self) {
        for c in &mut self.children {
            c.canonicalize();
        }
        self.children.sort();
    }

    fn map_labels<F: Fn(LabelMask) -> LabelMask + Copy>(&self, f: F) -> Node {
        Node {
            weight: self.weight,
            label: f(self.label),
            children: self.children.iter().map(|c| c.map_labels(f)).collect(),
        }
    }

    fn for_each<F: FnMut(&Node)>(&self, f: &mut F) {
        f(self);
        for c in &self.children {
            c.for_each(f);
        }
    }
}

/// A labeled multicurve up to the braid action: a forest of weighted,
/// label-carrying nodes under an implicit root of weight `n`. Siblings are
/// unordered; comparisons are made on a canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    strands: usize,
    label_count: usize,
    roots: Vec<Node>,
}

impl LabeledTree {
    /// Builds the nesting tree of a family of round curves with labels.
    /// Curves must be pairwise distinct and pairwise nested-or-disjoint;
    /// labels must be nonempty subsets of `{1..label_count}`.
    pub fn from_round(
        strands: usize,
        label_count: usize,
        pairs: &[(RoundCurve, LabelMask)],
    ) -> Result<LabeledTree> {
        if label_count == 0 || label_count > 16 {
            return Err(Error::LabelUniverseTooLarge(label_count, 16));
        }
        let full = full_mask(label_count);
        for (c, label) in pairs {
            if c.strands() != strands {
                return Err(Error::StrandMismatch(c.strands(), strands));
            }
            if *label == 0 || *label & !full != 0 {
                return Err(Error::BadLabel);
            }
        }
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                let (a, b) = (&pairs[i].0, &pairs[j].0);
                if a == b {
                    return Err(Error::InvalidMulticurve(format!("duplicate curve {a}")));
                }
                if !a.compatible(b) {
                    return Err(Error::InvalidMulticurve(format!("{a} and {b} cross")));
                }
            }
        }
        // sort by (lo asc, hi desc) so containers come before their contents
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        order.sort_by_key(|&k| (pairs[k].0.lo(), usize::MAX - pairs[k].0.hi()));
        let mut roots: Vec<Node> = Vec::new();
        // stack of (hi, node) for the currently open nesting chain
        let mut stack: Vec<(usize, Node)> = Vec::new();
        let close_until = |lo: usize, stack: &mut Vec<(usize, Node)>, roots: &mut Vec<Node>| {
            while let Some((hi, _)) = stack.last() {
                if *hi < lo {
                    let (_, node) = stack.pop().unwrap();
                    match stack.last_mut() {
                        Some((_, parent)) => parent.children.push(node),
                        None => roots.push(node),
                    }
                } else {
                    break;
                }
            }
        };
        for &k in &order {
            let (c, label) = &pairs[k];
            close_until(c.lo(), &mut stack, &mut roots);
            stack.push((
                c.hi(),
                Node { weight: c.weight(), label: *label, children: Vec::new() },
            ));
        }
        close_until(strands + 1, &mut stack, &mut roots);
        let mut tree = LabeledTree { strands, label_count, roots };
        tree.canonicalize();
        Ok(tree)
    }

    fn canonicalize(&mut self) {
        for r in &mut self.roots {
            r.canonicalize();
        }
        self.roots.sort();
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn label_count(&self) -> usize {
        self.label_count
    }

    pub fn curve_count(&self) -> usize {
        let mut count = 0;
        for r in &self.roots {
            r.for_each(&mut |_| count += 1);
        }
        count
    }

    /// Orbit equality: weight- and label-preserving rooted forest isomorphism.
    pub fn equivalent(&self, other: &LabeledTree) -> Result<bool> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        if self.label_count != other.label_count {
            return Err(Error::LabelUniverseTooLarge(other.label_count, self.label_count));
        }
        Ok(self.roots == other.roots)
    }

    /// Relabels every node by a permutation of the label universe.
    pub fn permute_labels(&self, sigma: &Permutation) -> Result<LabeledTree> {
        if sigma.degree() != self.label_count {
            return Err(Error::LabelUniverseTooLarge(sigma.degree(), self.label_count));
        }
        let remap = |mask: LabelMask| -> LabelMask {
            let mut out = 0;
            for bit in 0..self.label_count {
                if mask & (1 << bit) != 0 {
                    out |= 1 << (sigma.apply(bit + 1) - 1);
                }
            }
            out
        };
        let mut tree = LabeledTree {
            strands: self.strands,
            label_count: self.label_count,
            roots: self.roots.iter().map(|r| r.map_labels(remap)).collect(),
        };
        tree.canonicalize();
        Ok(tree)
    }

    /// Brute force over all `N!` label permutations.
    pub fn is_totally_symmetric(&self) -> Result<bool> {
        if self.label_count > MAX_LABELS {
            return Err(Error::LabelUniverseTooLarge(self.label_count, MAX_LABELS));
        }
        for sigma in all_permutations(self.label_count) {
            if !self.equivalent(&self.permute_labels(&sigma)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complements every label. Total on trees whose labels are all proper.
    pub fn star(&self) -> Result<LabeledTree> {
        let full = full_mask(self.label_count);
        let mut proper = true;
        for r in &self.roots {
            r.for_each(&mut |n| proper &= n.label != full);
        }
        if !proper {
            return Err(Error::LabelNotProper);
        }
        let mut tree = LabeledTree {
            strands: self.strands,
            label_count: self.label_count,
            roots: self.roots.iter().map(|r| r.map_labels(|m| !m & full)).collect(),
        };
        tree.canonicalize();
        Ok(tree)
    }

    pub fn all_labels_trivial(&self) -> bool {
        let full = full_mask(self.label_count);
        let mut trivial = true;
        for r in &self.roots {
            r.for_each(&mut |n| trivial &= n.label == full);
        }
        trivial
    }

    /// Assigns left-packed intervals to the nodes, recovering a concrete
    /// multicurve in the orbit. Inverse to `from_round` up to equivalence.
    pub fn to_round(&self) -> Vec<(RoundCurve, LabelMask)> {
        fn walk(
            node: &Node,
            cursor: usize,
            strands: usize,
            out: &mut Vec<(RoundCurve, LabelMask)>,
        ) {
            let lo = cursor;
            let hi = cursor + node.weight - 1;
            out.push((RoundCurve::new(strands, lo, hi).expect("valid interval"), node.label));
            let mut c = lo;
            for child in &node.children {
                walk(child, c, strands, out);
                c += child.weight;
            }
        }
        let mut out = Vec::new();
        let mut cursor = 1;
        for r in &self.roots {
            walk(r, cursor, self.strands, &mut out);
            cursor += r.weight;
        }
        out
    }

    /// Compares against the standard models.
    pub fn classify(&self) -> Result<Classification> {
        if !self.is_totally_symmetric()? {
            return Ok(Classification::NotTotallySymmetric);
        }
        if self.all_labels_trivial() {
            return Ok(Classification::TrivialLabeling);
        }
        let n = self.strands;
        let cap = n / 2;
        if self.label_count == cap {
            if self.equivalent(&standard_m(n)?)? {
                return Ok(Classification::M);
            }
            if let Ok(ms) = standard_m(n)?.star() {
                if self.equivalent(&ms)? {
                    return Ok(Classification::MStar);
                }
            }
            if n % 2 == 1 {
                if self.equivalent(&standard_m_hat(n)?)? {
                    return Ok(Classification::MHat);
                }
                if self.equivalent(&standard_m_hat_star(n)?)? {
                    return Ok(Classification::MHatStar);
                }
            }
        }
        Ok(Classification::Other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    TrivialLabeling,
    M,
    MStar,
    MHat,
    MHatStar,
    NotTotallySymmetric,
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::TrivialLabeling => "TRIVIAL_LABELING",
            Classification::M => "M",
            Classification::MStar => "M_STAR",
            Classification::MHat => "M_HAT",
            Classification::MHatStar => "M_HAT_STAR",
            Classification::NotTotallySymmetric => "NOT_TOTALLY_SYMMETRIC",
            Classification::Other => "OTHER",
        };
        f.write_str(s)
    }
}

/// The standard curves `c_i` with half-twist `s_{2i-1}`, `1 <= i <= n/2`.
pub fn standard_curves(n: usize) -> Result<Vec<RoundCurve>> {
    (1..=n / 2).map(|i| RoundCurve::new(n, 2 * i - 1, 2 * i)).collect()
}

/// The model `M_n`: curves `c_1..c_N` labeled `{1}..{N}`.
pub fn standard_m(n: usize) -> Result<LabeledTree> {
    let cap = n / 2;
    let pairs: Vec<(RoundCurve, LabelMask)> = standard_curves(n)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, 1 << i))
        .collect();
    LabeledTree::from_round(n, cap, &pairs)
}

/// For odd `n`, the model with the extra curve `c_0` around the first `n-1`
/// punctures carrying the full label.
pub fn standard_m_hat(n: usize) -> Result<LabeledTree> {
    let cap = n / 2;
    let mut pairs: Vec<(RoundCurve, LabelMask)> = standard_curves(n)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, 1 << i))
        .collect();
    pairs.push((RoundCurve::new(n, 1, n - 1)?, full_mask(cap)));
    LabeledTree::from_round(n, cap, &pairs)
}

pub fn standard_m_hat_star(n: usize) -> Result<LabeledTree> {
    let cap = n / 2;
    let full = full_mask(cap);
    let mut pairs: Vec<(RoundCurve, LabelMask)> = standard_curves(n)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, !(1 << i) & full))
        .collect();
    pairs.push((RoundCurve::new(n, 1, n - 1)?, full));
    LabeledTree::from_round(n, cap, &pairs)
}

/// All equivalence classes of totally symmetric, nontrivially labeled
/// multicurve trees in the `n`-punctured disk with label universe `n/2`.
/// Exhaustive: every tree shape is generated, label assignments are pruned by
/// sound necessary conditions and survivors are checked honestly.
pub fn enumerate_totally_symmetric(n: usize) -> Result<Vec<LabeledTree>> {
    if !(5..=10).contains(&n) {
        return Err(Error::StrandsOutOfRange(n, 5, 10));
    }
    let label_count = n / 2;
    let mut out: Vec<LabeledTree> = Vec::new();
    let mut seen: BTreeSet<Vec<Node>> = BTreeSet::new();
    for shape in root_shapes(n) {
        if shape.is_empty() {
            continue;
        }
        let orbits = shape_orbits(&shape);
        let mut assignments: Vec<Vec<LabelMask>> = vec![Vec::new()];
        for orbit in &orbits {
            let choices = invariant_multisets(orbit.len(), label_count);
            if choices.is_empty() {
                assignments.clear();
                break;
            }
            let mut next = Vec::new();
            for partial in &assignments {
                for choice in &choices {
                    for arrangement in distinct_arrangements(choice) {
                        let mut a = partial.clone();
                        a.extend_from_slice(&arrangement);
                        next.push(a);
                    }
                }
            }
            assignments = next;
        }
        let flat_order: Vec<usize> = orbits.iter().flatten().copied().collect();
        let node_count = flat_order.len();
        for labels in assignments {
            let mut by_index = vec![0 as LabelMask; node_count];
            for (slot, &node_idx) in flat_order.iter().enumerate() {
                by_index[node_idx] = labels[slot];
            }
            let mut candidate = shape.clone();
            let mut cursor = 0;
            set_labels_preorder(&mut candidate, &by_index, &mut cursor);
            let mut tree = LabeledTree { strands: n, label_count, roots: candidate };
            tree.canonicalize();
            if tree.all_labels_trivial() {
                continue;
            }
            if seen.contains(&tree.roots) {
                continue;
            }
            if tree.is_totally_symmetric()? {
                seen.insert(tree.roots.clone());
                out.push(tree);
            }
        }
    }
    debug_assert!(out.iter().all(|t| !t.all_labels_trivial()));
    out.sort_by(|a, b| a.roots.cmp(&b.roots));
    Ok(out)
}

fn set_labels_preorder(roots: &mut [Node], by_index: &[LabelMask], cursor: &mut usize) {
    for r in roots {
        r.label = by_index[*cursor];
        *cursor += 1;
        set_labels_preorder(&mut r.children, by_index, cursor);
    }
}

/// All unlabeled shapes: forests under a root of capacity `n`, every node of
/// weight `>= 2`, children strictly lighter than their parent with weights
/// summing to at most the parent's weight. Root children must stay below `n`.
fn root_shapes(n: usize) -> Vec<Vec<Node>> {
    forests(n, n - 1)
}

/// Forests of total weight `<= capacity` with every tree weight `<= max_w`,
/// listed in canonical (sorted) order to avoid duplicates.
fn forests(capacity: usize, max_w: usize) -> Vec<Vec<Node>> {
    fn rec(capacity: usize, max_w: usize, out: &mut Vec<Vec<Node>>, prefix: &mut Vec<Node>) {
        out.push(prefix.clone());
        for w in (2..=max_w.min(capacity)).rev() {
            for sub in node_shapes(w) {
                // keep the forest sorted: only append nodes <= the last one
                if let Some(last) = prefix.last() {
                    if sub > *last {
                        continue;
                    }
                }
                prefix.push(sub);
                rec(capacity - w, max_w, out, prefix);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(capacity, max_w, &mut out, &mut Vec::new());
    out
}

fn node_shapes(weight: usize) -> Vec<Node> {
    forests(weight, weight - 1)
        .into_iter()
        .map(|children| Node { weight, label: 0, children })
        .collect()
}

/// Automorphism orbits of the nodes of a shape, as index lists into the
/// preorder traversal. Nodes are in one orbit iff their subtree codes and all
/// ancestor codes agree.
fn shape_orbits(roots: &[Node]) -> Vec<Vec<usize>> {
    fn walk(node: &Node, path: &mut Vec<Node>, idx: &mut usize, out: &mut Vec<(Vec<Node>, usize)>) {
        let mut key_node = node.clone();
        key_node.canonicalize();
        path.push(key_node);
        out.push((path.clone(), *idx));
        *idx += 1;
        for c in &node.children {
            walk(c, path, idx, out);
        }
        path.pop();
    }
    let mut keyed: Vec<(Vec<Node>, usize)> = Vec::new();
    let mut idx = 0;
    for r in roots {
        walk(r, &mut Vec::new(), &mut idx, &mut keyed);
    }
    keyed.sort();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut prev: Option<&Vec<Node>> = None;
    for (key, i) in &keyed {
        if prev == Some(key) {
            orbits.last_mut().unwrap().push(*i);
        } else {
            orbits.push(vec![*i]);
        }
        prev = Some(key);
    }
    orbits
}

/// All multisets of label masks of the given size that are invariant under
/// every permutation of the universe: unions of full k-subset families.
fn invariant_multisets(size: usize, label_count: usize) -> Vec<Vec<LabelMask>> {
    let masks_by_popcount: Vec<Vec<LabelMask>> = (0..=label_count)
        .map(|k| {
            (1..1u32 << label_count)
                .map(|m| m as LabelMask)
                .filter(|m| m.count_ones() as usize == k)
                .collect()
        })
        .collect();
    let binom: Vec<usize> = masks_by_popcount.iter().map(|v| v.len()).collect();
    // choose multiplicities m_k with sum over k of m_k * binom(k) = size
    fn rec(
        k: usize,
        remaining: usize,
        binom: &[usize],
        masks: &[Vec<LabelMask>],
        current: Vec<LabelMask>,
        out: &mut Vec<Vec<LabelMask>>,
    ) {
        if remaining == 0 {
            out.push(current);
            return;
        }
        if k >= binom.len() {
            return;
        }
        let b = binom[k];
        let mut copies = 0;
        while copies * b <= remaining {
            let mut cur = current.clone();
            for _ in 0..copies {
                cur.extend_from_slice(&masks[k]);
            }
            rec(k + 1, remaining - copies * b, binom, masks, cur, out);
            if b == 0 {
                break;
            }
            copies += 1;
        }
    }
    let mut out = Vec::new();
    rec(1, size, &binom, &masks_by_popcount, Vec::new(), &mut out);
    out
}

/// Distinct orderings of a multiset of label masks.
fn distinct_arrangements(multiset: &[LabelMask]) -> Vec<Vec<LabelMask>> {
    let mut sorted = multiset.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(sorted.len());
    let mut used = vec![false; sorted.len()];
    fn rec(
        sorted: &[LabelMask],
        used: &mut Vec<bool>,
        current: &mut Vec<LabelMask>,
        out: &mut Vec<Vec<LabelMask>>,
    ) {
        if current.len() == sorted.len() {
            out.push(current.clone());
            return;
        }
        let mut last: Option<LabelMask> = None;
        for i in 0..sorted.len() {
            if used[i] || last == Some(sorted[i]) {
                continue;
            }
            last = Some(sorted[i]);
            used[i] = true;
            current.push(sorted[i]);
            rec(sorted, used, current, out);
            current.pop();
            used[i] = false;
        }
    }
    rec(&sorted, &mut used, &mut current, &mut out);
    out
}

/// Parses a label mask like `{1,3}` or `*` (the full universe).
pub fn parse_label(s: &str, label_count: usize) -> Result<LabelMask> {
    let s = s.trim();
    if s == "*" {
        return Ok(full_mask(label_count));
    }
    let body = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected `{{..}}` or `*`, got {s:?}")))?;
    let mut mask = 0;
    for tok in body.split(',') {
        let v: usize = tok
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad label {tok:?}")))?;
        if v < 1 || v > label_count {
            return Err(Error::BadLabel);
        }
        mask |= 1 << (v - 1);
    }
    if mask == 0 {
        return Err(Error::BadLabel);
    }
    Ok(mask)
}

pub fn format_label(mask: LabelMask, label_count: usize) -> String {
    if mask == full_mask(label_count) {
        return "*".to_string();
    }
    let mut parts = Vec::new();
    for bit in 0..label_count {
        if mask & (1 << bit) != 0 {
            parts.push((bit + 1).to_string());
        }
    }
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for LabeledTree {
    /// S-expression form: `(disk n=7 (curve 1 6 label=* (curve 1 2 label={1}) ..) ..)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_node(
            node: &Node,
            lo: usize,
            label_count: usize,
            f: &mut fmt::Formatter<'_>,
        ) -> fmt::Result {
            write!(
                f,
                "(curve {} {} label={}",
                lo,
                lo + node.weight - 1,
                format_label(node.label, label_count)
            )?;
            let mut c = lo;
            for child in &node.children {
                write!(f, " ")?;
                write_node(child, c, label_count, f)?;
                c += child.weight;
            }
            write!(f, ")")
        }
        write!(f, "(disk n={} labels={}", self.strands, self.label_count)?;
        let mut cursor = 1;
        for r in &self.roots {
            write!(f, " ")?;
            write_node(r, cursor, self.label_count, f)?;
            cursor += r.weight;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for LabeledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut pos = 0;
        let tree = parse_disk(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse("trailing input after tree".into()));
        }
        Ok(tree)
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut word = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !word.is_empty() {
                    out.push(Token::Word(std::mem::take(&mut word)));
                }
                out.push(if ch == '(' { Token::Open } else { Token::Close });
            }
            c if c.is_whitespace() => {
                if !word.is_empty() {
                    out.push(Token::Word(std::mem::take(&mut word)));
                }
            }
            c => word.push(c),
        }
    }
    if !word.is_empty() {
        out.push(Token::Word(word));
    }
    Ok(out)
}

fn expect_word(tokens: &[Token], pos: &mut usize) -> Result<String> {
    match tokens.get(*pos) {
        Some(Token::Word(w)) => {
            *pos += 1;
            Ok(w.clone())
        }
        other => Err(Error::Parse(format!("expected word, got {other:?}"))),
    }
}

fn parse_disk(tokens: &[Token], pos: &mut usize) -> Result<LabeledTree> {
    if tokens.get(*pos) != Some(&Token::Open) {
        return Err(Error::Parse("expected `(disk ..`".into()));
    }
    *pos += 1;
    if expect_word(tokens, pos)? != "disk" {
        return Err(Error::Parse("expected `disk`".into()));
    }
    let n_word = expect_word(tokens, pos)?;
    let strands: usize = n_word
        .strip_prefix("n=")
        .ok_or_else(|| Error::Parse("expected `n=<int>`".into()))?
        .parse()
        .map_err(|_| Error::Parse("bad strand count".into()))?;
    let mut label_count = strands / 2;
    if let Some(Token::Word(w)) = tokens.get(*pos) {
        if let Some(v) = w.strip_prefix("labels=") {
            label_count = v.parse().map_err(|_| Error::Parse("bad label count".into()))?;
            *pos += 1;
        }
    }
    let mut pairs = Vec::new();
    while tokens.get(*pos) == Some(&Token::Open) {
        parse_curve(tokens, pos, strands, label_count, &mut pairs)?;
    }
    if tokens.get(*pos) != Some(&Token::Close) {
        return Err(Error::Parse("expected `)` closing disk".into()));
    }
    *pos += 1;
    LabeledTree::from_round(strands, label_count, &pairs)
}

fn parse_curve(
    tokens: &[Token],
    pos: &mut usize,
    strands: usize,
    label_count: usize,
    out: &mut Vec<(RoundCurve, LabelMask)>,
) -> Result<()> {
    *pos += 1; // consume Open
    if expect_word(tokens, pos)? != "curve" {
        return Err(Error::Parse("expected `curve`".into()));
    }
    let lo: usize = expect_word(tokens, pos)?
        .parse()
        .map_err(|_| Error::Parse("bad curve lo".into()))?;
    let hi: usize = expect_word(tokens, pos)?
        .parse()
        .map_err(|_| Error::Parse("bad curve hi".into()))?;
    let label_word = expect_word(tokens, pos)?;
    let label = parse_label(
        label_word
            .strip_prefix("label=")
            .ok_or_else(|| Error::Parse("expected `label=..`".into()))?,
        label_count,
    )?;
    out.push((RoundCurve::new(strands, lo, hi)?, label));
    while tokens.get(*pos) == Some(&Token::Open) {
        parse_curve(tokens, pos, strands, label_count, out)?;
    }
    if tokens.get(*pos) != Some(&Token::Close) {
        return Err(Error::Parse("expected `)` closing curve".into()));
    }
    *pos += 1;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize) -> LabeledTree {
        standard_m(n).unwrap()
    }

    #[test]
    fn from_round_builds_nesting() {
        let t = standard_m_hat(7).unwrap();
        assert_eq!(t.curve_count(), 4);
        assert_eq!(t.roots.len(), 1);
        assert_eq!(t.roots[0].weight, 6);
        assert_eq!(t.roots[0].children.len(), 3);
    }

    #[test]
    fn from_round_rejects_crossing_intervals() {
        let a = RoundCurve::new(5, 1, 3).unwrap();
        let b = RoundCurve::new(5, 2, 4).unwrap();
        assert!(LabeledTree::from_round(5, 2, &[(a, 1), (b, 2)]).is_err());
        assert!(LabeledTree::from_round(5, 2, &[(a, 1), (a, 2)]).is_err());
        assert!(LabeledTree::from_round(5, 2, &[(a, 0)]).is_err());
    }

    #[test]
    fn equivalence_ignores_sibling_order() {
        let n = 6;
        let c = standard_curves(n).unwrap();
        let shuffled = [(c[2], 4), (c[0], 1), (c[1], 2)];
        let t = LabeledTree::from_round(n, 3, &shuffled).unwrap();
        assert!(t.equivalent(&m(n)).unwrap());
        assert!(!m(7).equivalent(&standard_m_hat(7).unwrap()).unwrap());
    }

    #[test]
    fn permute_labels_examples() {
        let t = m(6);
        let id = Permutation::identity(3);
        assert!(t.permute_labels(&id).unwrap().equivalent(&t).unwrap());
        let swap = Permutation::transposition(3, 1);
        assert!(t.permute_labels(&swap).unwrap().equivalent(&t).unwrap());
        // a genuinely asymmetric labeling moves
        let c = standard_curves(6).unwrap();
        let asym = LabeledTree::from_round(6, 2, &[(c[0], 0b01), (c[1], 0b11)]).unwrap();
        let swapped = asym.permute_labels(&Permutation::transposition(2, 1)).unwrap();
        assert!(!asym.equivalent(&swapped).unwrap());
    }

    #[test]
    fn total_symmetry_examples() {
        assert!(m(6).is_totally_symmetric().unwrap());
        assert!(standard_m_hat(7).unwrap().is_totally_symmetric().unwrap());
        let c = standard_curves(6).unwrap();
        let trivial =
            LabeledTree::from_round(6, 3, &[(c[0], 0b111), (c[1], 0b111)]).unwrap();
        assert!(trivial.is_totally_symmetric().unwrap());
        let bad = LabeledTree::from_round(6, 2, &[(c[0], 0b01), (c[1], 0b11)]).unwrap();
        assert!(!bad.is_totally_symmetric().unwrap());
    }

    #[test]
    fn star_examples() {
        let t = m(8);
        let star = t.star().unwrap();
        assert!(!star.equivalent(&t).unwrap());
        assert!(star.star().unwrap().equivalent(&t).unwrap());
        assert!(standard_m_hat(7).unwrap().star().is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(standard_m_hat(7).unwrap().classify().unwrap(), Classification::MHat);
        assert_eq!(m(6).star().unwrap().classify().unwrap(), Classification::MStar);
        let c = standard_curves(6).unwrap();
        let bad = LabeledTree::from_round(6, 2, &[(c[0], 0b01), (c[1], 0b11)]).unwrap();
        assert_eq!(bad.classify().unwrap(), Classification::NotTotallySymmetric);
        let trivial =
            LabeledTree::from_round(6, 3, &[(c[0], 0b111), (c[1], 0b111)]).unwrap();
        assert_eq!(trivial.classify().unwrap(), Classification::TrivialLabeling);
    }

    #[test]
    fn enumeration_matches_classification() {
        let six = enumerate_totally_symmetric(6).unwrap();
        assert_eq!(six.len(), 2);
        let classes: Vec<Classification> =
            six.iter().map(|t| t.classify().unwrap()).collect();
        assert!(classes.contains(&Classification::M));
        assert!(classes.contains(&Classification::MStar));

        let seven = enumerate_totally_symmetric(7).unwrap();
        assert_eq!(seven.len(), 4);
        let classes: Vec<Classification> =
            seven.iter().map(|t| t.classify().unwrap()).collect();
        for want in [
            Classification::M,
            Classification::MStar,
            Classification::MHat,
            Classification::MHatStar,
        ] {
            assert!(classes.contains(&want), "missing {want}");
        }

        // N = 2 collapse: the starred models coincide with the plain ones
        let five = enumerate_totally_symmetric(5).unwrap();
        assert_eq!(five.len(), 2);
        assert!(standard_m(5)
            .unwrap()
            .equivalent(&standard_m(5).unwrap().star().unwrap())
            .unwrap());
    }

    #[test]
    fn tree_dsl_round_trip() {
        for t in [m(6), m(7), standard_m_hat(7).unwrap(), standard_m_hat_star(9).unwrap()] {
            let s = t.to_string();
            let back: LabeledTree = s.parse().unwrap();
            assert!(back.equivalent(&t).unwrap(), "round trip failed for {s}");
            assert_eq!(back.to_string(), s);
        }
        let explicit: LabeledTree =
            "(disk n=7 (curve 1 6 label=* (curve 1 2 label={1}) (curve 3 4 label={2}) (curve 5 6 label={3})))"
                .parse()
                .unwrap();
        assert!(explicit.equivalent(&standard_m_hat(7).unwrap()).unwrap());
    }
}
