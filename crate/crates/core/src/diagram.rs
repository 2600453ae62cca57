//! Chord diagrams on an oriented circle.
//!
//! A diagram of degree `n` is stored as its canonical double-occurrence word:
//! the lexicographically least of the `2n` rotations, each relabeled `1, 2, ...`
//! in order of first appearance. Reflections are not identified.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Chord label. Canonical words use `1..=degree`.
pub type Label = u8;

/// Largest degree representable (chord sets are stored as `u64` masks).
pub const MAX_CHORDS: usize = 64;

/// Default cap on exhaustive enumeration.
pub const DEFAULT_DEGREE_LIMIT: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ChordDiagram {
    word: Vec<Label>,
}

/// Relabels `word` read from `start` (cyclically) by first appearance into `out`.
fn relabel_rotation(word: &[Label], start: usize, out: &mut Vec<Label>) {
    let mut map = [0 as Label; 256];
    let mut next: Label = 0;
    out.clear();
    let len = word.len();
    for k in 0..len {
        let l = word[(start + k) % len] as usize;
        if map[l] == 0 {
            next += 1;
            map[l] = next;
        }
        out.push(map[l]);
    }
}

/// Canonical representative of a double-occurrence word with arbitrary labels.
pub(crate) fn canonical_word(word: &[Label]) -> Vec<Label> {
    if word.is_empty() {
        return Vec::new();
    }
    let mut best = Vec::with_capacity(word.len());
    relabel_rotation(word, 0, &mut best);
    let mut cand = Vec::with_capacity(word.len());
    for r in 1..word.len() {
        relabel_rotation(word, r, &mut cand);
        if cand < best {
            std::mem::swap(&mut cand, &mut best);
        }
    }
    best
}

fn check_double_occurrence(word: &[Label]) -> Result<()> {
    if !word.len().is_multiple_of(2) {
        return Err(Error::OddLength(word.len()));
    }
    let mut counts: HashMap<Label, usize> = HashMap::new();
    for &l in word {
        *counts.entry(l).or_default() += 1;
    }
    if let Some((&l, &c)) = counts.iter().filter(|(_, &c)| c != 2).min() {
        return Err(Error::BadLabelCount {
            label: l.to_string(),
            count: c,
        });
    }
    if counts.len() > MAX_CHORDS {
        return Err(Error::DegreeLimit {
            degree: counts.len(),
            limit: MAX_CHORDS,
        });
    }
    Ok(())
}

impl ChordDiagram {
    pub fn empty() -> Self {
        ChordDiagram { word: Vec::new() }
    }

    /// Canonicalizes a linear reading of a diagram with arbitrary labels.
    pub fn from_linear(word: &[Label]) -> Result<Self> {
        check_double_occurrence(word)?;
        Ok(ChordDiagram {
            word: canonical_word(word),
        })
    }

    pub(crate) fn from_linear_unchecked(word: &[Label]) -> Self {
        debug_assert!(check_double_occurrence(word).is_ok());
        ChordDiagram {
            word: canonical_word(word),
        }
    }

    /// Parses a whitespace-separated word (`"1 2 1 2"`) or a compact
    /// one-character-per-label word (`"abab"`), and canonicalizes it.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let tokens: Vec<String> = if text.split_whitespace().count() > 1 {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        for t in &tokens {
            if !t.chars().all(|c| c.is_ascii_alphanumeric()) {
                return Err(Error::MalformedWord(format!("unexpected token {t:?}")));
            }
        }
        if !tokens.len().is_multiple_of(2) {
            return Err(Error::OddLength(tokens.len()));
        }
        let mut ids: HashMap<&str, Label> = HashMap::new();
        let mut counts: Vec<(String, usize)> = Vec::new();
        let mut word = Vec::with_capacity(tokens.len());
        for t in &tokens {
            let next = ids.len();
            let id = *ids.entry(t.as_str()).or_insert_with(|| {
                counts.push((t.clone(), 0));
                next as Label
            });
            if ids.len() > MAX_CHORDS {
                return Err(Error::DegreeLimit {
                    degree: ids.len(),
                    limit: MAX_CHORDS,
                });
            }
            counts[id as usize].1 += 1;
            word.push(id + 1);
        }
        if let Some((label, count)) = counts.into_iter().find(|(_, c)| *c != 2) {
            return Err(Error::BadLabelCount { label, count });
        }
        Ok(ChordDiagram {
            word: canonical_word(&word),
        })
    }

    pub fn degree(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[Label] {
        &self.word
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        1..=(self.degree() as Label)
    }

    /// Bit `c - 1` set for every chord `c`.
    pub fn full_mask(&self) -> u64 {
        mask_of_degree(self.degree())
    }

    fn check_label(&self, c: Label) -> Result<()> {
        if c == 0 || c as usize > self.degree() {
            Err(Error::UnknownChord(c))
        } else {
            Ok(())
        }
    }

    /// Positions of the two endpoints of every chord, indexed by `label - 1`.
    pub fn endpoint_table(&self) -> Vec<(usize, usize)> {
        let mut table = vec![(usize::MAX, usize::MAX); self.degree()];
        for (i, &l) in self.word.iter().enumerate() {
            let e = &mut table[l as usize - 1];
            if e.0 == usize::MAX {
                e.0 = i;
            } else {
                e.1 = i;
            }
        }
        table
    }

    pub fn endpoints(&self, c: Label) -> Result<(usize, usize)> {
        self.check_label(c)?;
        Ok(self.endpoint_table()[c as usize - 1])
    }

    /// Intersection relation as one bitmask row per chord (bit `i` is chord `i + 1`).
    pub fn crossing_masks(&self) -> Vec<u64> {
        let ends = self.endpoint_table();
        let n = ends.len();
        let mut rows = vec![0u64; n];
        for a in 0..n {
            let (i, j) = ends[a];
            for b in (a + 1)..n {
                let (k, l) = ends[b];
                let inside = |p: usize| i < p && p < j;
                if inside(k) != inside(l) {
                    rows[a] |= 1 << b;
                    rows[b] |= 1 << a;
                }
            }
        }
        rows
    }

    /// True iff the endpoints of `c1` and `c2` alternate around the circle.
    pub fn chords_intersect(&self, c1: Label, c2: Label) -> Result<bool> {
        self.check_label(c1)?;
        self.check_label(c2)?;
        if c1 == c2 {
            return Err(Error::InapplicableMove(
                "a chord does not cross itself".into(),
            ));
        }
        let (i, j) = self.endpoints(c1)?;
        let (k, l) = self.endpoints(c2)?;
        let inside = |p: usize| i < p && p < j;
        Ok(inside(k) != inside(l))
    }

    pub fn has_isolated_chord(&self) -> bool {
        self.crossing_masks().contains(&0)
    }

    /// The diagram obtained by keeping only the chords in `keep` (bit `i` is chord `i + 1`).
    pub fn restrict(&self, keep: u64) -> ChordDiagram {
        let w: Vec<Label> = self
            .word
            .iter()
            .copied()
            .filter(|&l| keep & (1 << (l - 1)) != 0)
            .collect();
        ChordDiagram {
            word: canonical_word(&w),
        }
    }

    /// Splices `other` into the gap before position `gap` of this diagram's word.
    pub fn connect_sum(&self, other: &ChordDiagram, gap: usize) -> Result<ChordDiagram> {
        let gaps = self.word.len().max(1);
        if gap >= gaps {
            return Err(Error::InvalidGap { gap, gaps });
        }
        let shift = self.degree() as Label;
        let mut w = Vec::with_capacity(self.word.len() + other.word.len());
        w.extend_from_slice(&self.word[..gap]);
        w.extend(other.word.iter().map(|&l| l + shift));
        w.extend_from_slice(&self.word[gap..]);
        if w.len() / 2 > MAX_CHORDS {
            return Err(Error::DegreeLimit {
                degree: w.len() / 2,
                limit: MAX_CHORDS,
            });
        }
        Ok(ChordDiagram {
            word: canonical_word(&w),
        })
    }

    /// The word rotated so that it starts at `start`.
    pub(crate) fn rotated(&self, start: usize) -> Vec<Label> {
        let mut w = self.word[start..].to_vec();
        w.extend_from_slice(&self.word[..start]);
        w
    }
}

pub(crate) fn mask_of_degree(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl std::str::FromStr for ChordDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ChordDiagram::parse(s)
    }
}

impl TryFrom<String> for ChordDiagram {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        ChordDiagram::parse(&s)
    }
}

impl From<ChordDiagram> for String {
    fn from(d: ChordDiagram) -> String {
        d.to_string()
    }
}

/// All canonical diagrams of degree `n`, sorted by word.
pub fn enumerate_diagrams(n: usize) -> Result<Vec<ChordDiagram>> {
    enumerate_diagrams_with_limit(n, DEFAULT_DEGREE_LIMIT)
}

pub fn enumerate_diagrams_with_limit(n: usize, limit: usize) -> Result<Vec<ChordDiagram>> {
    if n > limit || n > MAX_CHORDS {
        return Err(Error::DegreeLimit {
            degree: n,
            limit: limit.min(MAX_CHORDS),
        });
    }
    if n == 0 {
        return Ok(vec![ChordDiagram::empty()]);
    }
    // Partition by the partner of position 0, then merge.
    let parts: Vec<HashSet<Vec<Label>>> = (1..2 * n)
        .into_par_iter()
        .map(|partner| {
            let mut word = vec![0 as Label; 2 * n];
            word[0] = 1;
            word[partner] = 1;
            let mut found = HashSet::new();
            fill_matchings(&mut word, 2, &mut |w| {
                found.insert(canonical_word(w));
            });
            found
        })
        .collect();
    let mut all: BTreeSet<Vec<Label>> = BTreeSet::new();
    for p in parts {
        all.extend(p);
    }
    Ok(all.into_iter().map(|word| ChordDiagram { word }).collect())
}

/// Visits every completion of a partially filled linear word; unfilled slots
/// are 0 and `next` is the next fresh label.
fn fill_matchings(word: &mut Vec<Label>, next: Label, visit: &mut dyn FnMut(&[Label])) {
    let Some(first) = word.iter().position(|&l| l == 0) else {
        visit(word);
        return;
    };
    word[first] = next;
    for p in (first + 1)..word.len() {
        if word[p] == 0 {
            word[p] = next;
            fill_matchings(word, next + 1, visit);
            word[p] = 0;
        }
    }
    word[first] = 0;
}

/// A subset of the chords of a diagram.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChordSubset {
    diagram: ChordDiagram,
    members: u64,
}

impl ChordSubset {
    pub fn new(diagram: &ChordDiagram, members: &[Label]) -> Result<Self> {
        let mut mask = 0u64;
        for &c in members {
            diagram.check_label(c)?;
            mask |= 1 << (c - 1);
        }
        Ok(ChordSubset {
            diagram: diagram.clone(),
            members: mask,
        })
    }

    /// Subset from a bit mask (bit `c - 1` for chord `c`); bits beyond the degree are dropped.
    pub fn from_mask(diagram: &ChordDiagram, mask: u64) -> Self {
        ChordSubset {
            diagram: diagram.clone(),
            members: mask & diagram.full_mask(),
        }
    }

    pub fn diagram(&self) -> &ChordDiagram {
        &self.diagram
    }

    pub fn mask(&self) -> u64 {
        self.members
    }

    pub fn contains(&self, c: Label) -> bool {
        c >= 1 && self.members & (1 << (c - 1)) != 0
    }

    pub fn members(&self) -> Vec<Label> {
        self.diagram
            .labels()
            .filter(|&c| self.contains(c))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn complement(&self) -> ChordSubset {
        ChordSubset::from_mask(&self.diagram, !self.members)
    }

    /// Number of places where membership changes going once around the circle.
    fn boundary_count(&self) -> usize {
        let w = self.diagram.word();
        (0..w.len())
            .filter(|&i| self.contains(w[i]) != self.contains(w[(i + 1) % w.len()]))
            .count()
    }

    /// True iff four points split the circle into arcs alternately holding
    /// only members and only non-members.
    pub fn is_share(&self) -> bool {
        self.boundary_count() <= 4
    }

    /// Maximal circular runs of member endpoints, as `(start, len)` in word positions.
    pub(crate) fn member_runs(&self) -> Vec<(usize, usize)> {
        let w = self.diagram.word();
        let len = w.len();
        if self.members == 0 {
            return Vec::new();
        }
        let Some(start) = (0..len).find(|&i| !self.contains(w[i])) else {
            return vec![(0, len)];
        };
        let mut runs = Vec::new();
        let mut k = 0;
        while k < len {
            let i = (start + k) % len;
            if self.contains(w[i]) {
                let mut l = 0;
                while l + k < len && self.contains(w[(start + k + l) % len]) {
                    l += 1;
                }
                runs.push((i, l));
                k += l;
            } else {
                k += 1;
            }
        }
        runs.sort();
        runs
    }
}

/// Connected components of the intersection graph minus `trunk`, as shares,
/// ordered by their smallest endpoint position.
pub fn boughs(d: &ChordDiagram, trunk: Label) -> Result<Vec<ChordSubset>> {
    d.check_label(trunk)?;
    let adj = d.crossing_masks();
    let n = d.degree();
    if n < 2 || component_of(&adj, 0, d.full_mask()) != d.full_mask() {
        return Err(Error::DisconnectedGraph);
    }
    let t = trunk as usize - 1;
    let mut rest = d.full_mask() & !(1 << t);
    let mut comps = Vec::new();
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        let comp = component_of(&adj, v, rest);
        rest &= !comp;
        comps.push(comp);
    }
    let ends = d.endpoint_table();
    let first_pos = |m: u64| {
        (0..n)
            .filter(|&c| m & (1 << c) != 0)
            .map(|c| ends[c].0)
            .min()
            .unwrap_or(usize::MAX)
    };
    comps.sort_by_key(|&m| first_pos(m));
    Ok(comps
        .into_iter()
        .map(|m| ChordSubset::from_mask(d, m))
        .collect())
}

fn component_of(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & within & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

/// Rewrites that preserve the intersection graph.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ElementaryMove {
    /// Reorders the boughs along `trunk`. Slots are numbered along the arc
    /// that follows the trunk's first endpoint; slot `s` receives the bough
    /// that currently sits in slot `permutation[s]`.
    PermuteBoughs {
        trunk: Label,
        permutation: Vec<usize>,
    },
    /// Mirrors one bough (indexed as in [`boughs`]) across `trunk`.
    ReflectBough { trunk: Label, bough: usize },
    /// Turns a share half a turn: its two arcs exchange contents, keeping
    /// their orientation.
    RotateShare180 { members: Vec<Label> },
}

/// Blocks of each bough on the two sides of a trunk.
struct TrunkLayout {
    trunk: Label,
    /// Bough indices along the first arc, in circle order.
    slots: Vec<usize>,
    /// Contents of each bough on the first / second arc.
    near: Vec<Vec<Label>>,
    far: Vec<Vec<Label>>,
}

fn trunk_layout(d: &ChordDiagram, trunk: Label) -> Result<(TrunkLayout, Vec<ChordSubset>)> {
    let bs = boughs(d, trunk)?;
    let mut owner = vec![usize::MAX; d.degree() + 1];
    for (i, b) in bs.iter().enumerate() {
        for c in b.members() {
            owner[c as usize] = i;
        }
    }
    let (i0, j0) = d.endpoints(trunk)?;
    let w = d.rotated(i0);
    let split = j0 - i0;
    let runs = |side: &[Label]| -> Vec<(usize, Vec<Label>)> {
        let mut out: Vec<(usize, Vec<Label>)> = Vec::new();
        for &l in side {
            let o = owner[l as usize];
            match out.last_mut() {
                Some((last, block)) if *last == o => block.push(l),
                _ => out.push((o, vec![l])),
            }
        }
        out
    };
    let near_runs = runs(&w[1..split]);
    let far_runs = runs(&w[split + 1..]);
    let k = bs.len();
    let bad = || Error::InapplicableMove("boughs are not nested along the trunk".into());
    if near_runs.len() != k || far_runs.len() != k {
        return Err(bad());
    }
    let slots: Vec<usize> = near_runs.iter().map(|(o, _)| *o).collect();
    let far_order: Vec<usize> = far_runs.iter().rev().map(|(o, _)| *o).collect();
    if slots != far_order {
        return Err(bad());
    }
    let mut near = vec![Vec::new(); k];
    let mut far = vec![Vec::new(); k];
    for (o, b) in near_runs {
        near[o] = b;
    }
    for (o, b) in far_runs {
        far[o] = b;
    }
    Ok((
        TrunkLayout {
            trunk,
            slots,
            near,
            far,
        },
        bs,
    ))
}

impl TrunkLayout {
    fn assemble(&self, order: &[usize]) -> Vec<Label> {
        let mut w = vec![self.trunk];
        for &b in order {
            w.extend_from_slice(&self.near[b]);
        }
        w.push(self.trunk);
        for &b in order.iter().rev() {
            w.extend_from_slice(&self.far[b]);
        }
        w
    }
}

/// Applies an elementary move and returns the canonical result.
pub fn apply_elementary(d: &ChordDiagram, m: &ElementaryMove) -> Result<ChordDiagram> {
    match m {
        ElementaryMove::PermuteBoughs { trunk, permutation } => {
            let (layout, _) = trunk_layout(d, *trunk)?;
            let k = layout.slots.len();
            let mut seen = vec![false; k];
            if permutation.len() != k {
                return Err(Error::InapplicableMove(format!(
                    "permutation has length {}, trunk has {k} boughs",
                    permutation.len()
                )));
            }
            for &p in permutation {
                if p >= k || seen[p] {
                    return Err(Error::InapplicableMove(
                        "permutation is not a bijection".into(),
                    ));
                }
                seen[p] = true;
            }
            let order: Vec<usize> = permutation.iter().map(|&p| layout.slots[p]).collect();
            Ok(ChordDiagram::from_linear_unchecked(
                &layout.assemble(&order),
            ))
        }
        ElementaryMove::ReflectBough { trunk, bough } => {
            let (mut layout, bs) = trunk_layout(d, *trunk)?;
            if *bough >= bs.len() {
                return Err(Error::InapplicableMove(format!(
                    "no bough with index {bough}"
                )));
            }
            let mut near = layout.far[*bough].clone();
            let mut far = layout.near[*bough].clone();
            near.reverse();
            far.reverse();
            layout.near[*bough] = near;
            layout.far[*bough] = far;
            let order = layout.slots.clone();
            Ok(ChordDiagram::from_linear_unchecked(
                &layout.assemble(&order),
            ))
        }
        ElementaryMove::RotateShare180 { members } => {
            let s = ChordSubset::new(d, members)?;
            if !s.is_share() {
                return Err(Error::NotAShare);
            }
            let runs = s.member_runs();
            if runs.len() < 2 {
                return Ok(d.clone());
            }
            let ((xs, xl), (ys, yl)) = (runs[0], runs[1]);
            let w = d.word();
            let x = &w[xs..xs + xl];
            let mut out = Vec::with_capacity(w.len());
            // runs[0] starts before runs[1]; runs[1] may wrap past the end.
            let y: Vec<Label> = (0..yl).map(|k| w[(ys + k) % w.len()]).collect();
            let a = &w[xs + xl..ys];
            let b: Vec<Label> = (ys + yl..w.len() + xs).map(|k| w[k % w.len()]).collect();
            out.extend_from_slice(&y);
            out.extend_from_slice(a);
            out.extend_from_slice(x);
            out.extend_from_slice(&b);
            Ok(ChordDiagram::from_linear_unchecked(&out))
        }
    }
}
