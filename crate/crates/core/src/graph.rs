//! Intersection graphs and their isomorphism classes.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{enumerate_diagrams_with_limit, ChordDiagram, Label};
use crate::error::{Error, Result};

/// Largest graph accepted by [`graph_class_key`].
pub const MAX_KEY_VERTICES: usize = 12;

/// Simple undirected graph on vertices `0..n` with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    rows: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "graphs are limited to 64 vertices");
        Graph { rows: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > 64 {
            return Err(Error::GraphTooLarge(n));
        }
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::MalformedGraph(format!("bad edge ({u}, {v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn cycle(k: usize) -> Self {
        let mut g = Graph::path(k);
        if k >= 3 {
            g.add_edge(k - 1, 0);
        }
        g
    }

    /// Cycle on vertices `0..k` with a pendant path `k, k+1, ..., n-1` hanging off vertex 0.
    pub fn tadpole(n: usize, k: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..k {
            g.add_edge(i, (i + 1) % k);
        }
        for i in k..n {
            g.add_edge(if i == k { 0 } else { i - 1 }, i);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & (1 << v) != 0
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let n = self.vertex_count();
        let mut rest = crate::diagram::mask_of_degree(n);
        let mut out = Vec::new();
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let mut seen = 1u64 << v;
            let mut frontier = seen;
            while frontier != 0 {
                let u = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.rows[u] & !seen;
                seen |= new;
                frontier |= new;
            }
            rest &= !seen;
            out.push(seen);
        }
        out
    }

    /// Induced subgraph on `mask`, vertices renumbered in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| mask & (1 << v) != 0)
            .collect();
        let mut g = Graph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let full = crate::diagram::mask_of_degree(n);
        Graph {
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(v, r)| !r & full & !(1 << v))
                .collect(),
        }
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.vertex_count());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Parses `n` on the first line followed by one `u v` edge per line (1-indexed).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::MalformedGraph("missing vertex count".into()))?
            .parse()
            .map_err(|_| Error::MalformedGraph("vertex count is not an integer".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::MalformedGraph(format!("bad edge line {line:?}")))?;
            match nums.as_slice() {
                [u, v] if *u >= 1 && *v >= 1 => edges.push((u - 1, v - 1)),
                _ => return Err(Error::MalformedGraph(format!("bad edge line {line:?}"))),
            }
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.vertex_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Vertex `i` is chord `i + 1`; edges join crossing chords.
pub fn intersection_graph(d: &ChordDiagram) -> Graph {
    Graph {
        rows: d.crossing_masks(),
    }
}

/// Isomorphism certificate: equal keys iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GraphClassKey(Vec<u8>);

impl GraphClassKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for GraphClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl From<GraphClassKey> for String {
    fn from(k: GraphClassKey) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for GraphClassKey {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        if !s.len().is_multiple_of(2) {
            return Err(Error::Json(format!("bad class key {s:?}")));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16))
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map(GraphClassKey)
            .map_err(|_| Error::Json(format!("bad class key {s:?}")))
    }
}

pub fn graph_class_key(g: &Graph) -> Result<GraphClassKey> {
    let n = g.vertex_count();
    if n > MAX_KEY_VERTICES {
        return Err(Error::GraphTooLarge(n));
    }
    Ok(GraphClassKey(certificate(g)))
}

// Certificates: [n, tag, ...]. Tag 0: disconnected, followed by the sorted
// component certificates, each length-prefixed. Tag 1: connected with
// disconnected complement, followed by the complement's certificate.
// Tag 2: best adjacency bit string over the leaves of an
// individualization-refinement search.
fn certificate(g: &Graph) -> Vec<u8> {
    let n = g.vertex_count();
    if n <= 1 {
        return vec![n as u8, 2];
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut parts: Vec<Vec<u8>> = comps.iter().map(|&m| certificate(&g.induced(m))).collect();
        parts.sort();
        let mut out = vec![n as u8, 0];
        for p in parts {
            out.push(p.len() as u8);
            out.extend(p);
        }
        return out;
    }
    let co = g.complement();
    if co.components().len() > 1 {
        let mut out = vec![n as u8, 1];
        out.extend(certificate(&co));
        return out;
    }
    let mut best: Option<Vec<u8>> = None;
    search(g, vec![(0..n).collect()], &mut best);
    let mut out = vec![n as u8, 2];
    out.extend(best.expect("search visits at least one leaf"));
    out
}

fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sig: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    (
                        masks.iter().map(|m| (g.rows[v] & m).count_ones()).collect(),
                        v,
                    )
                })
                .collect();
            sig.sort();
            let mut start = 0;
            for i in 1..=sig.len() {
                if i == sig.len() || sig[i].0 != sig[start].0 {
                    next.push(sig[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<Vec<u8>>) {
    let cells = refine(g, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = adjacency_bits(g, &order);
        if best.as_ref().is_none_or(|b| cert > *b) {
            *best = Some(cert);
        }
        return;
    };
    for &v in &cells[target] {
        let mut next = cells[..target].to_vec();
        next.push(vec![v]);
        next.push(cells[target].iter().copied().filter(|&u| u != v).collect());
        next.extend(cells[target + 1..].iter().cloned());
        search(g, next, best);
    }
}

/// Upper-triangle adjacency bits of `g` with vertices listed in `order`.
pub(crate) fn adjacency_bits(g: &Graph, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            bits.push(g.has_edge(order[i], order[j]) as u8);
        }
    }
    bits
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleClass {
    Forest,
    Unicyclic,
    Other,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CycleRank {
    pub betti: usize,
    pub class: CycleClass,
}

/// First Betti number `E - V + components` and the forest / unicyclic / other split.
pub fn cycle_rank_classify(g: &Graph) -> CycleRank {
    let betti = g.edge_count() + g.components().len() - g.vertex_count();
    let class = match betti {
        0 => CycleClass::Forest,
        1 => CycleClass::Unicyclic,
        _ => CycleClass::Other,
    };
    CycleRank { betti, class }
}

/// Wraps a new chord around the first occurrence of `parent`, so that it
/// crosses exactly that chord.
fn straddle(word: &mut Vec<Label>, parent: Label, child: Label) {
    let at = word
        .iter()
        .position(|&l| l == parent)
        .expect("parent chord is present");
    word.insert(at + 1, child);
    word.insert(at, child);
}

/// Labeled linear word realizing one connected component (labels are vertex + 1).
fn realize_component(g: &Graph, comp: u64) -> Result<Vec<Label>> {
    let verts: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| comp & (1 << v) != 0)
        .collect();
    let sub = g.induced(comp);
    let betti = cycle_rank_classify(&sub).betti;
    let label = |v: usize| (v + 1) as Label;
    let mut placed = 0u64;
    let mut word = Vec::new();
    let mut queue = VecDeque::new();
    match betti {
        0 => {
            let root = verts[0];
            word.extend([label(root), label(root)]);
            placed |= 1 << root;
            queue.push_back(root);
        }
        1 => {
            let cycle = find_cycle(g, comp);
            let k = cycle.len();
            word = vec![0; 2 * k];
            for (i, &v) in cycle.iter().enumerate() {
                word[2 * i] = label(v);
                word[(2 * i + 3) % (2 * k)] = label(v);
                placed |= 1 << v;
            }
            queue.extend(cycle);
        }
        b => return Err(Error::NotRealizable(b)),
    }
    while let Some(p) = queue.pop_front() {
        let mut kids = g.neighbors(p) & comp & !placed;
        while kids != 0 {
            let c = kids.trailing_zeros() as usize;
            kids &= kids - 1;
            straddle(&mut word, label(p), label(c));
            placed |= 1 << c;
            queue.push_back(c);
        }
    }
    Ok(word)
}

/// Vertices of the unique cycle of a unicyclic component, in cyclic order.
fn find_cycle(g: &Graph, comp: u64) -> Vec<usize> {
    let mut core = comp;
    loop {
        let leaf = (0..g.vertex_count())
            .find(|&v| core & (1 << v) != 0 && (g.neighbors(v) & core).count_ones() <= 1);
        match leaf {
            Some(v) => core &= !(1 << v),
            None => break,
        }
    }
    let start = core.trailing_zeros() as usize;
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let mut nb = g.neighbors(cur) & core;
        if prev != usize::MAX {
            nb &= !(1 << prev);
        }
        let next = nb.trailing_zeros() as usize;
        if next == start {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    cycle
}

/// A chord diagram whose intersection graph is `g`, for `g` a disjoint union
/// of trees and unicyclic graphs. Chord `v + 1` of the constructed word
/// realizes vertex `v`; the labeled crossing relation is checked before
/// canonicalizing.
pub fn realize_graph(g: &Graph) -> Result<ChordDiagram> {
    let mut word = Vec::with_capacity(2 * g.vertex_count());
    for comp in g.components() {
        word.extend(realize_component(g, comp)?);
    }
    let n = g.vertex_count();
    let mut pos = vec![Vec::with_capacity(2); n];
    for (i, &l) in word.iter().enumerate() {
        pos[l as usize - 1].push(i);
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let (i, j) = (pos[u][0], pos[u][1]);
            let inside = |p: usize| i < p && p < j;
            let crosses = inside(pos[v][0]) != inside(pos[v][1]);
            if crosses != g.has_edge(u, v) {
                return Err(Error::RealizationMismatch(format!(
                    "vertices {} and {} in word {:?}",
                    u + 1,
                    v + 1,
                    word
                )));
            }
        }
    }
    ChordDiagram::from_linear(&word)
}

/// Degree-`n` diagrams sharing one intersection graph class.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphClass {
    pub key: GraphClassKey,
    pub betti: usize,
    pub diagrams: Vec<ChordDiagram>,
}

/// Groups a list of same-degree diagrams by intersection graph class, ordered by key.
pub fn group_by_class(diagrams: &[ChordDiagram]) -> Result<Vec<GraphClass>> {
    let keyed: Vec<(GraphClassKey, usize, &ChordDiagram)> = diagrams
        .par_iter()
        .map(|d| {
            let g = intersection_graph(d);
            Ok((graph_class_key(&g)?, cycle_rank_classify(&g).betti, d))
        })
        .collect::<Result<_>>()?;
    let mut map: BTreeMap<GraphClassKey, GraphClass> = BTreeMap::new();
    for (key, betti, d) in keyed {
        map.entry(key.clone())
            .or_insert_with(|| GraphClass {
                key,
                betti,
                diagrams: Vec::new(),
            })
            .diagrams
            .push(d.clone());
    }
    Ok(map.into_values().collect())
}

pub fn classify_degree(n: usize, limit: usize) -> Result<Vec<GraphClass>> {
    group_by_class(&enumerate_diagrams_with_limit(n, limit)?)
}

/// Every canonical degree-`n` diagram whose intersection graph is isomorphic to `g`.
pub fn realizations_of(g: &Graph, n: usize, limit: usize) -> Result<Vec<ChordDiagram>> {
    if n != g.vertex_count() {
        return Err(Error::DegreeMismatch {
            expected: g.vertex_count(),
            found: n,
        });
    }
    let key = graph_class_key(g)?;
    let all = enumerate_diagrams_with_limit(n, limit)?;
    let hits: Vec<Option<ChordDiagram>> = all
        .par_iter()
        .map(|d| (graph_class_key(&intersection_graph(d)).ok()? == key).then(|| d.clone()))
        .collect();
    Ok(hits.into_iter().flatten().collect())
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ClassTable {
    pub degree: usize,
    pub classes: Vec<GraphClass>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_key(g: &Graph) -> Vec<u8> {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = adjacency_bits(g, &perm);
        while next_permutation(&mut perm) {
            best = best.max(adjacency_bits(g, &perm));
        }
        best
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    fn d(s: &str) -> ChordDiagram {
        ChordDiagram::parse(s).unwrap()
    }

    #[test]
    fn intersection_graph_examples() {
        assert_eq!(intersection_graph(&d("1 2 1 2")).edges(), vec![(0, 1)]);
        assert_eq!(intersection_graph(&d("1 1 2 2")).edges(), vec![]);
        assert_eq!(
            intersection_graph(&d("1 2 1 3 2 3")).edges(),
            vec![(0, 1), (1, 2)]
        );
    }

    #[test]
    fn class_keys() {
        let p3 = Graph::path(3);
        let relabeled = p3.permuted(&[2, 0, 1]);
        assert_eq!(
            graph_class_key(&p3).unwrap(),
            graph_class_key(&relabeled).unwrap()
        );
        assert_ne!(
            graph_class_key(&p3).unwrap(),
            graph_class_key(&Graph::cycle(3)).unwrap()
        );
        assert!(matches!(
            graph_class_key(&Graph::new(13)),
            Err(Error::GraphTooLarge(13))
        ));
        let k = graph_class_key(&Graph::cycle(5)).unwrap();
        assert_eq!(GraphClassKey::try_from(k.to_string()).unwrap(), k);
    }

    #[test]
    fn degree_four_classes_match_pairwise_oracle() {
        let diagrams = enumerate_diagrams_with_limit(4, 8).unwrap();
        // Oracle: pairwise isomorphism by brute-force minimal adjacency over all permutations.
        let mut oracle: Vec<Vec<u8>> = diagrams
            .iter()
            .map(|d| brute_key(&intersection_graph(d)))
            .collect();
        oracle.sort();
        oracle.dedup();
        let classes = group_by_class(&diagrams).unwrap();
        assert_eq!(classes.len(), oracle.len());
        assert_eq!(classes.iter().map(|c| c.diagrams.len()).sum::<usize>(), 18);
    }

    #[test]
    fn keys_agree_with_brute_force_on_all_six_vertex_graphs() {
        // 2^15 labeled graphs; keys must partition them exactly like the brute-force certificate.
        let mut by_key: std::collections::HashMap<GraphClassKey, Vec<u8>> = Default::default();
        let mut classes = std::collections::HashSet::new();
        for bits in 0u32..(1 << 15) {
            let mut g = Graph::new(6);
            let mut k = 0;
            for u in 0..6 {
                for v in (u + 1)..6 {
                    if bits & (1 << k) != 0 {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            let key = graph_class_key(&g).unwrap();
            let brute = brute_key(&g);
            classes.insert(brute.clone());
            let prev = by_key.entry(key).or_insert_with(|| brute.clone());
            assert_eq!(*prev, brute);
        }
        // 156 isomorphism classes of graphs on 6 vertices.
        assert_eq!(classes.len(), 156);
        assert_eq!(by_key.len(), 156);
    }

    #[test]
    fn keys_survive_random_relabeling_on_seven_and_eight_vertices() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in [7usize, 8] {
            for _ in 0..200 {
                let mut g = Graph::new(n);
                for u in 0..n {
                    for v in (u + 1)..n {
                        if rng.gen_bool(0.45) {
                            g.add_edge(u, v);
                        }
                    }
                }
                let key = graph_class_key(&g).unwrap();
                let brute = brute_key(&g);
                for _ in 0..5 {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.shuffle(&mut rng);
                    let h = g.permuted(&perm);
                    assert_eq!(graph_class_key(&h).unwrap(), key);
                    assert_eq!(brute_key(&h), brute);
                }
            }
        }
    }

    #[test]
    fn cycle_ranks() {
        let r = cycle_rank_classify(&Graph::path(3));
        assert_eq!((r.betti, r.class), (0, CycleClass::Forest));
        let r = cycle_rank_classify(&Graph::cycle(3));
        assert_eq!((r.betti, r.class), (1, CycleClass::Unicyclic));
        let mut k4 = Graph::new(4);
        for u in 0..4 {
            for v in (u + 1)..4 {
                k4.add_edge(u, v);
            }
        }
        let r = cycle_rank_classify(&k4);
        assert_eq!((r.betti, r.class), (3, CycleClass::Other));
    }

    #[test]
    fn realization_examples() {
        assert_eq!(
            realize_graph(&Graph::path(2)).unwrap().to_string(),
            "1 2 1 2"
        );
        assert_eq!(
            realize_graph(&Graph::cycle(3)).unwrap().to_string(),
            "1 2 3 1 2 3"
        );
        for k in 3..=8 {
            let dgm = realize_graph(&Graph::cycle(k)).unwrap();
            assert_eq!(
                graph_class_key(&intersection_graph(&dgm)).unwrap(),
                graph_class_key(&Graph::cycle(k)).unwrap()
            );
        }
        for (n, k) in [(5, 3), (6, 4), (7, 7), (8, 5)] {
            let g = Graph::tadpole(n, k);
            let dgm = realize_graph(&g).unwrap();
            assert_eq!(
                graph_class_key(&intersection_graph(&dgm)).unwrap(),
                graph_class_key(&g).unwrap()
            );
        }
        let mut theta = Graph::cycle(4);
        theta.add_edge(0, 2);
        assert!(matches!(
            realize_graph(&theta),
            Err(Error::NotRealizable(2))
        ));
        assert_eq!(
            realize_graph(&Graph::new(0)).unwrap(),
            ChordDiagram::empty()
        );
    }

    #[test]
    fn realization_sets() {
        let k2 = Graph::path(2);
        assert_eq!(realizations_of(&k2, 2, 8).unwrap(), vec![d("1 2 1 2")]);
        assert_eq!(
            realizations_of(&Graph::new(2), 2, 8).unwrap(),
            vec![d("1 1 2 2")]
        );
        assert!(realizations_of(&k2, 3, 8).is_err());
    }

    #[test]
    fn graph_text_round_trip() {
        let g = Graph::tadpole(5, 3);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert!(Graph::parse("3\n1 4\n").is_err());
        assert!(Graph::parse("x\n").is_err());
    }
}
