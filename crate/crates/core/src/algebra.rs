//! Linear combinations of chord diagrams and the quotient by the 1-term and
//! 4-term relations.
//!
//! Quotient classes are represented by normal forms: a combination is
//! reduced against the reduced row-echelon basis of the relation span, with
//! columns ordered by canonical word.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{enumerate_diagrams_with_limit, ChordDiagram, ChordSubset, Label};
use crate::error::{Error, Result};
use crate::graph::{graph_class_key, group_by_class, realize_graph, Graph, GraphClassKey};
use crate::linalg::{int_row, Echelon, Rational, SparseRow};

/// Version tag of the relation generator; part of every basis cache key.
pub const GENERATOR_TAG: &str = "4t-monodromy-v1";

pub(crate) fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Json(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Formal rational combination of canonical diagrams of one degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramCombo {
    degree: usize,
    terms: BTreeMap<ChordDiagram, Rational>,
}

impl DiagramCombo {
    pub fn zero(degree: usize) -> Self {
        DiagramCombo {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: &ChordDiagram) -> Self {
        let mut c = DiagramCombo::zero(d.degree());
        c.terms.insert(d.clone(), Rational::one());
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<ChordDiagram, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, d: &ChordDiagram, coeff: &Rational) -> Result<()> {
        if d.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: d.degree(),
            });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(d.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(d);
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &DiagramCombo, factor: &Rational) -> Result<()> {
        if other.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        for (d, c) in &other.terms {
            self.add_term(d, &(c * factor))?;
        }
        Ok(())
    }

    pub fn difference(a: &ChordDiagram, b: &ChordDiagram) -> Result<Self> {
        let mut c = DiagramCombo::from_diagram(a);
        c.add_term(b, &-Rational::one())?;
        Ok(c)
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComboDoc::from(self)).expect("combo documents serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: ComboDoc = serde_json::from_value(v.clone())?;
        DiagramCombo::try_from(doc)
    }
}

impl fmt::Display for DiagramCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}*[{}]", rational_to_string(&c.abs()), d)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coeff: String,
    word: String,
}

#[derive(Serialize, Deserialize)]
struct ComboDoc {
    degree: usize,
    terms: Vec<TermDoc>,
}

impl From<&DiagramCombo> for ComboDoc {
    fn from(c: &DiagramCombo) -> Self {
        ComboDoc {
            degree: c.degree,
            terms: c
                .terms
                .iter()
                .map(|(d, q)| TermDoc {
                    coeff: rational_to_string(q),
                    word: d.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ComboDoc> for DiagramCombo {
    type Error = Error;
    fn try_from(doc: ComboDoc) -> Result<Self> {
        let mut c = DiagramCombo::zero(doc.degree);
        for t in doc.terms {
            c.add_term(&ChordDiagram::parse(&t.word)?, &parse_rational(&t.coeff)?)?;
        }
        Ok(c)
    }
}

impl Serialize for DiagramCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComboDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagramCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ComboDoc::deserialize(d)?;
        DiagramCombo::try_from(doc).map_err(serde::de::Error::custom)
    }
}

/// The combination `D(before u) - D(after u) + D(before v) - D(after v)` for the
/// endpoint at `e` moving around the chord `a` with endpoints `u, v`.
fn four_term_at(word: &[Label], e: usize, a: Label) -> [ChordDiagram; 4] {
    let moving = word[e];
    let mut rest: Vec<Label> = word.to_vec();
    rest.remove(e);
    let ends: Vec<usize> = (0..rest.len()).filter(|&i| rest[i] == a).collect();
    let place = |gap: usize| {
        let mut w = rest.clone();
        w.insert(gap, moving);
        ChordDiagram::from_linear_unchecked(&w)
    };
    [
        place(ends[0]),
        place(ends[0] + 1),
        place(ends[1]),
        place(ends[1] + 1),
    ]
}

const FOUR_TERM_SIGNS: [i64; 4] = [1, -1, 1, -1];

/// Collects signed terms into a sorted row, normalized to a positive leading coefficient.
fn normalized_row(terms: impl IntoIterator<Item = (usize, i64)>) -> Vec<(usize, i64)> {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (c, s) in terms {
        *acc.entry(c).or_default() += s;
    }
    let mut row: Vec<(usize, i64)> = acc.into_iter().filter(|(_, s)| *s != 0).collect();
    if row.first().is_some_and(|(_, s)| *s < 0) {
        for t in row.iter_mut() {
            t.1 = -t.1;
        }
    }
    row
}

/// Deduplicated nonzero 4-term rows over the column order of `diagrams`.
fn four_term_rows(
    diagrams: &[ChordDiagram],
    index: &HashMap<ChordDiagram, usize>,
) -> Vec<Vec<(usize, i64)>> {
    let sets: Vec<BTreeSet<Vec<(usize, i64)>>> = diagrams
        .par_iter()
        .map(|d| {
            let mut out = BTreeSet::new();
            let w = d.word();
            for e in 0..w.len() {
                for a in d.labels().filter(|&a| a != w[e]) {
                    let ds = four_term_at(w, e, a);
                    let row =
                        normalized_row(ds.iter().zip(FOUR_TERM_SIGNS).map(|(d, s)| (index[d], s)));
                    if !row.is_empty() {
                        out.insert(row);
                    }
                }
            }
            out
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in sets {
        all.extend(s);
    }
    all.into_iter().collect()
}

fn column_index(diagrams: &[ChordDiagram]) -> HashMap<ChordDiagram, usize> {
    diagrams
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, d)| (d, i))
        .collect()
}

fn row_to_combo(n: usize, diagrams: &[ChordDiagram], row: &[(usize, i64)]) -> DiagramCombo {
    let mut c = DiagramCombo::zero(n);
    for &(col, s) in row {
        c.terms
            .insert(diagrams[col].clone(), Rational::from_integer(s.into()));
    }
    c
}

/// All distinct nonzero 4-term combinations in degree `n`.
pub fn four_term_relations(n: usize, limit: usize) -> Result<Vec<DiagramCombo>> {
    let diagrams = enumerate_diagrams_with_limit(n, limit)?;
    let index = column_index(&diagrams);
    Ok(four_term_rows(&diagrams, &index)
        .iter()
        .map(|r| row_to_combo(n, &diagrams, r))
        .collect())
}

/// One singleton combination per degree-`n` diagram with an isolated chord.
pub fn one_term_relations(n: usize, limit: usize) -> Result<Vec<DiagramCombo>> {
    Ok(enumerate_diagrams_with_limit(n, limit)?
        .iter()
        .filter(|d| d.has_isolated_chord())
        .map(DiagramCombo::from_diagram)
        .collect())
}

/// Reduced echelon basis of the relation span in one degree.
#[derive(Clone, Debug)]
pub struct RelationBasis {
    degree: usize,
    with_1t: bool,
    columns: Vec<ChordDiagram>,
    index: HashMap<ChordDiagram, usize>,
    echelon: Echelon,
}

impl RelationBasis {
    /// Builds the basis by eliminating all generated relations.
    pub fn build(n: usize, with_1t: bool, limit: usize) -> Result<Self> {
        let columns = enumerate_diagrams_with_limit(n, limit)?;
        let index = column_index(&columns);
        let mut echelon = Echelon::new(columns.len());
        if with_1t {
            for (i, d) in columns.iter().enumerate() {
                if d.has_isolated_chord() {
                    echelon.insert(int_row(&[(i, 1)]));
                }
            }
        }
        for row in four_term_rows(&columns, &index) {
            echelon.insert(int_row(&row));
        }
        Ok(RelationBasis {
            degree: n,
            with_1t,
            columns,
            index,
            echelon,
        })
    }

    pub(crate) fn from_parts(
        n: usize,
        with_1t: bool,
        columns: Vec<ChordDiagram>,
        rows: Vec<SparseRow>,
    ) -> Self {
        let index = column_index(&columns);
        let echelon = Echelon::from_rows(columns.len(), rows);
        RelationBasis {
            degree: n,
            with_1t,
            columns,
            index,
            echelon,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn with_1t(&self) -> bool {
        self.with_1t
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn diagram_count(&self) -> usize {
        self.columns.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.columns.len() - self.rank()
    }

    pub fn columns(&self) -> &[ChordDiagram] {
        &self.columns
    }

    /// Basis rows as combinations, ordered by pivot.
    pub fn rows(&self) -> Vec<DiagramCombo> {
        self.echelon
            .rows()
            .into_iter()
            .map(|r| self.sparse_to_combo(r.clone()))
            .collect()
    }

    /// Diagrams that are not pivots; their classes form a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<ChordDiagram> {
        (0..self.columns.len())
            .filter(|&c| !self.echelon.is_pivot(c))
            .map(|c| self.columns[c].clone())
            .collect()
    }

    fn combo_to_sparse(&self, c: &DiagramCombo) -> Result<SparseRow> {
        if c.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: c.degree,
            });
        }
        let mut v: SparseRow = c
            .terms
            .iter()
            .map(|(d, q)| (self.index[d], q.clone()))
            .collect();
        v.sort_by_key(|(col, _)| *col);
        Ok(v)
    }

    fn sparse_to_combo(&self, v: SparseRow) -> DiagramCombo {
        DiagramCombo {
            degree: self.degree,
            terms: v
                .into_iter()
                .map(|(c, q)| (self.columns[c].clone(), q))
                .collect(),
        }
    }

    /// Normal form of `c` modulo the relation span.
    pub fn reduce_combo(&self, c: &DiagramCombo) -> Result<DiagramCombo> {
        let v = self.combo_to_sparse(c)?;
        Ok(self.sparse_to_combo(self.echelon.reduce(v)))
    }

    pub fn normal_form(&self, d: &ChordDiagram) -> Result<DiagramCombo> {
        self.reduce_combo(&DiagramCombo::from_diagram(d))
    }

    pub fn contains(&self, c: &DiagramCombo) -> Result<bool> {
        Ok(self.reduce_combo(c)?.is_zero())
    }

    pub fn equivalent(&self, a: &ChordDiagram, b: &ChordDiagram) -> Result<bool> {
        self.contains(&DiagramCombo::difference(a, b)?)
    }

    pub(crate) fn sparse_rows(&self) -> Vec<&SparseRow> {
        self.echelon.rows()
    }
}

/// Element of the tensor square, stored by pairs of canonical diagrams.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorCombo {
    terms: BTreeMap<(ChordDiagram, ChordDiagram), Rational>,
}

impl TensorCombo {
    pub fn zero() -> Self {
        TensorCombo::default()
    }

    pub fn terms(&self) -> &BTreeMap<(ChordDiagram, ChordDiagram), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: &ChordDiagram, right: &ChordDiagram, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let key = (left.clone(), right.clone());
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorCombo, factor: &Rational) {
        for ((l, r), c) in &other.terms {
            self.add_term(l, r, &(c * factor));
        }
    }

    /// Terms grouped by bidegree.
    pub fn blocks(&self) -> BTreeMap<(usize, usize), TensorCombo> {
        let mut out: BTreeMap<(usize, usize), TensorCombo> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            out.entry((l.degree(), r.degree()))
                .or_default()
                .add_term(l, r, c);
        }
        out
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`, with products taken as connect sums at gap 0.
    pub fn product(&self, other: &TensorCombo) -> TensorCombo {
        let mut out = TensorCombo::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let l = a.connect_sum(c, 0).expect("gap 0 always exists");
                let r = b.connect_sum(d, 0).expect("gap 0 always exists");
                out.add_term(&l, &r, &(x * y));
            }
        }
        out
    }
}

impl fmt::Display for TensorCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| format!("{}*[{}]⊗[{}]", rational_to_string(c), l, r))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// All `2^n` coproduct terms `(D minus J, J)` before collection.
pub fn coproduct_terms(d: &ChordDiagram) -> Vec<(ChordDiagram, ChordDiagram)> {
    let full = d.full_mask();
    (0..(1u64 << d.degree()))
        .map(|j| (d.restrict(full & !j), d.restrict(j)))
        .collect()
}

pub fn coproduct(d: &ChordDiagram) -> TensorCombo {
    let mut t = TensorCombo::zero();
    let one = Rational::one();
    for (l, r) in coproduct_terms(d) {
        t.add_term(&l, &r, &one);
    }
    t
}

pub fn coproduct_combo(c: &DiagramCombo) -> TensorCombo {
    let mut t = TensorCombo::zero();
    for (d, q) in &c.terms {
        t.add_scaled(&coproduct(d), q);
    }
    t
}

/// Connect sum of two combinations (gap 0 of each left factor).
pub fn product(a: &DiagramCombo, b: &DiagramCombo) -> DiagramCombo {
    let mut out = DiagramCombo::zero(a.degree + b.degree);
    for (x, p) in &a.terms {
        for (y, q) in &b.terms {
            let d = x.connect_sum(y, 0).expect("gap 0 always exists");
            out.add_term(&d, &(p * q)).expect("degrees add");
        }
    }
    out
}

/// Reduces each tensor factor to its normal form, using `bases[degree]`.
pub fn reduce_tensor(
    t: &TensorCombo,
    bases: &BTreeMap<usize, RelationBasis>,
) -> Result<TensorCombo> {
    let mut cache: HashMap<ChordDiagram, DiagramCombo> = HashMap::new();
    let mut nf = |d: &ChordDiagram| -> Result<DiagramCombo> {
        if let Some(c) = cache.get(d) {
            return Ok(c.clone());
        }
        let b = bases
            .get(&d.degree())
            .ok_or(Error::MissingBasis(d.degree()))?;
        let c = b.normal_form(d)?;
        cache.insert(d.clone(), c.clone());
        Ok(c)
    };
    let mut out = TensorCombo::zero();
    for ((l, r), q) in &t.terms {
        let nl = nf(l)?;
        let nr = nf(r)?;
        for (a, x) in &nl.terms {
            for (b, y) in &nr.terms {
                out.add_term(a, b, &(q * x * y));
            }
        }
    }
    Ok(out)
}

/// `Δ(c) - 1⊗c - c⊗1`, reduced factorwise; zero certifies primitivity in the quotient.
pub fn primitive_defect(
    c: &DiagramCombo,
    bases: &BTreeMap<usize, RelationBasis>,
) -> Result<TensorCombo> {
    let mut t = coproduct_combo(c);
    let empty = ChordDiagram::empty();
    for (d, q) in &c.terms {
        let neg = -q;
        t.add_term(&empty, d, &neg);
        t.add_term(d, &empty, &neg);
    }
    reduce_tensor(&t, bases)
}

/// Which primitive element to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PrimitiveSpec {
    /// `p_n`, from the path on `n` vertices.
    Path { n: usize },
    /// `p_{n,k}`, from the `k`-cycle with a pendant path of `n - k` vertices.
    Tadpole { n: usize, k: usize },
}

impl PrimitiveSpec {
    pub fn degree(&self) -> usize {
        match *self {
            PrimitiveSpec::Path { n } | PrimitiveSpec::Tadpole { n, .. } => n,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        match *self {
            PrimitiveSpec::Path { n } if (1..=64).contains(&n) => Ok(Graph::path(n)),
            PrimitiveSpec::Tadpole { n, k } if 3 <= k && k <= n && n <= 64 => {
                Ok(Graph::tadpole(n, k))
            }
            other => Err(Error::InvalidPrimitive(format!("{other:?}"))),
        }
    }
}

impl fmt::Display for PrimitiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimitiveSpec::Path { n } => write!(f, "p_{n}"),
            PrimitiveSpec::Tadpole { n, k } => write!(f, "p_{{{n},{k}}}"),
        }
    }
}

/// Signed realizations `(-1)^|J| · a_J` over all edge subsets `J`, before collection.
pub fn primitive_terms(spec: PrimitiveSpec) -> Result<Vec<(i64, ChordDiagram)>> {
    let g = spec.graph()?;
    let edges = g.edges();
    if edges.len() > 20 {
        return Err(Error::InvalidPrimitive(format!(
            "{spec} has too many edges"
        )));
    }
    (0u32..(1 << edges.len()))
        .into_par_iter()
        .map(|j| {
            let mut h = g.clone();
            for (i, &(u, v)) in edges.iter().enumerate() {
                if j & (1 << i) != 0 {
                    h.remove_edge(u, v);
                }
            }
            let sign = if j.count_ones() % 2 == 0 { 1 } else { -1 };
            Ok((sign, realize_graph(&h)?))
        })
        .collect()
}

pub fn build_primitive(spec: PrimitiveSpec) -> Result<DiagramCombo> {
    let mut c = DiagramCombo::zero(spec.degree());
    for (s, d) in primitive_terms(spec)? {
        c.add_term(&d, &Rational::from_integer(s.into()))?;
    }
    Ok(c)
}

/// The four-position combination with one endpoint of `moving` placed just
/// before and just after each of the two arcs holding the share's endpoints.
pub fn generalized_four_term(
    d: &ChordDiagram,
    s: &ChordSubset,
    moving: Label,
    endpoint: usize,
) -> Result<DiagramCombo> {
    if s.diagram() != d {
        return Err(Error::InapplicableMove(
            "share belongs to another diagram".into(),
        ));
    }
    if !s.is_share() {
        return Err(Error::NotAShare);
    }
    if s.contains(moving) {
        return Err(Error::InapplicableMove(
            "moving chord lies in the share".into(),
        ));
    }
    let (p, q) = d.endpoints(moving)?;
    let e = if endpoint == 0 { p } else { q };
    let mut rest = d.word().to_vec();
    rest.remove(e);
    let len = rest.len();
    let member = |l: Label| s.contains(l);
    // Circular runs of member endpoints in `rest`.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    if let Some(off) = (0..len).find(|&i| !member(rest[i])) {
        let mut k = 0;
        while k < len {
            let i = (off + k) % len;
            if member(rest[i]) {
                let mut l = 0;
                while k + l < len && member(rest[(off + k + l) % len]) {
                    l += 1;
                }
                runs.push((i, l));
                k += l;
            } else {
                k += 1;
            }
        }
    }
    if runs.len() > 2 {
        return Err(Error::NotAShare);
    }
    let place = |gap: usize| {
        let mut w = rest.clone();
        w.insert(gap, moving);
        ChordDiagram::from_linear_unchecked(&w)
    };
    let mut c = DiagramCombo::zero(d.degree());
    let one = Rational::one();
    for (start, l) in runs {
        c.add_term(&place(start), &one)?;
        c.add_term(&place((start + l) % len), &-one.clone())?;
    }
    Ok(c)
}

/// Rational combination of intersection-graph classes.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GraphCombo {
    pub degree: usize,
    pub terms: BTreeMap<GraphClassKey, Rational>,
}

pub fn graph_image(c: &DiagramCombo) -> Result<GraphCombo> {
    let mut out = GraphCombo {
        degree: c.degree,
        terms: BTreeMap::new(),
    };
    for (d, q) in &c.terms {
        let key = graph_class_key(&crate::graph::intersection_graph(d))?;
        let slot = out.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            out.terms.remove(&key);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelReport {
    pub degree: usize,
    pub with_1t: bool,
    pub diagram_dim: usize,
    pub graph_dim: usize,
    pub kernel_trivial: bool,
}

/// Compares the quotient dimension with the dimension of graph classes
/// modulo the images of the same relations.
pub fn graph_kernel_check(basis: &RelationBasis) -> Result<KernelReport> {
    let n = basis.degree();
    let classes = group_by_class(basis.columns())?;
    let mut class_of = vec![0usize; basis.diagram_count()];
    for (ci, class) in classes.iter().enumerate() {
        for d in &class.diagrams {
            class_of[basis.index[d]] = ci;
        }
    }
    let mut echelon = Echelon::new(classes.len());
    let push = |echelon: &mut Echelon, row: &[(usize, i64)]| {
        echelon.insert(int_row(&normalized_row(
            row.iter().map(|&(c, s)| (class_of[c], s)),
        )));
    };
    if basis.with_1t() {
        for (i, d) in basis.columns().iter().enumerate() {
            if d.has_isolated_chord() {
                push(&mut echelon, &[(i, 1)]);
            }
        }
    }
    for row in four_term_rows(basis.columns(), &basis.index) {
        push(&mut echelon, &row);
    }
    let diagram_dim = basis.quotient_dim();
    let graph_dim = classes.len() - echelon.rank();
    Ok(KernelReport {
        degree: n,
        with_1t: basis.with_1t(),
        diagram_dim,
        graph_dim,
        kernel_trivial: diagram_dim == graph_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dense_rank;

    fn d(s: &str) -> ChordDiagram {
        ChordDiagram::parse(s).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    /// Independent oracle: dense elimination of every 4T placement, no dedup.
    fn dense_quotient_dim(n: usize, with_1t: bool) -> usize {
        let ds = enumerate_diagrams_with_limit(n, 8).unwrap();
        let idx = column_index(&ds);
        let mut m: Vec<Vec<Rational>> = Vec::new();
        for dg in &ds {
            if with_1t && dg.has_isolated_chord() {
                let mut r = vec![q(0); ds.len()];
                r[idx[dg]] = q(1);
                m.push(r);
            }
            let w = dg.word();
            for e in 0..w.len() {
                for a in dg.labels().filter(|&a| a != w[e]) {
                    let mut r = vec![q(0); ds.len()];
                    for (x, s) in four_term_at(w, e, a).iter().zip(FOUR_TERM_SIGNS) {
                        r[idx[x]] += q(s);
                    }
                    m.push(r);
                }
            }
        }
        ds.len() - dense_rank(m)
    }

    #[test]
    fn degree_two_relations_cancel() {
        assert!(four_term_relations(2, 8).unwrap().is_empty());
        assert_eq!(RelationBasis::build(2, false, 8).unwrap().quotient_dim(), 2);
        assert_eq!(RelationBasis::build(2, true, 8).unwrap().quotient_dim(), 1);
    }

    #[test]
    fn quotient_dims_match_dense_oracle() {
        for n in 2..=4 {
            for with_1t in [false, true] {
                let b = RelationBasis::build(n, with_1t, 8).unwrap();
                assert_eq!(
                    b.quotient_dim(),
                    dense_quotient_dim(n, with_1t),
                    "n={n} 1t={with_1t}"
                );
            }
        }
        assert_eq!(dense_quotient_dim(3, true), 1);
        assert_eq!(dense_quotient_dim(4, true), 3);
    }

    #[test]
    fn relations_have_zero_coefficient_sum() {
        for r in four_term_relations(4, 8).unwrap() {
            assert!(r.coefficient_sum().is_zero());
            assert!(r.len() <= 4);
        }
    }

    #[test]
    fn one_term_relations_are_isolated_chord_diagrams() {
        let w = |n| -> Vec<String> {
            one_term_relations(n, 8)
                .unwrap()
                .iter()
                .map(|c| c.terms().keys().next().unwrap().to_string())
                .collect()
        };
        assert_eq!(w(1), vec!["1 1"]);
        assert_eq!(w(2), vec!["1 1 2 2"]);
        let expected: Vec<String> = enumerate_diagrams_with_limit(3, 8)
            .unwrap()
            .into_iter()
            .filter(|d| {
                let g = crate::graph::intersection_graph(d);
                (0..g.vertex_count()).any(|v| g.degree(v) == 0)
            })
            .map(|d| d.to_string())
            .collect();
        assert_eq!(w(3), expected);
    }

    #[test]
    fn generators_reduce_to_zero() {
        let b = RelationBasis::build(4, false, 8).unwrap();
        for r in four_term_relations(4, 8).unwrap() {
            assert!(b.contains(&r).unwrap());
        }
        assert!(b
            .equivalent(&d("1 2 1 3 4 2 3 4"), &d("1 2 1 3 4 2 3 4"))
            .unwrap());
        assert!(b
            .reduce_combo(&DiagramCombo::from_diagram(&d("1 1")))
            .is_err());
    }

    #[test]
    fn coproduct_examples() {
        let one = d("1 1");
        let e = ChordDiagram::empty();
        let mut expected = TensorCombo::zero();
        expected.add_term(&e, &one, &q(1));
        expected.add_term(&one, &e, &q(1));
        assert_eq!(coproduct(&one), expected);

        let x = d("1 2 1 2");
        let mut expected = TensorCombo::zero();
        expected.add_term(&e, &x, &q(1));
        expected.add_term(&one, &one, &q(2));
        expected.add_term(&x, &e, &q(1));
        assert_eq!(coproduct(&x), expected);
        assert_eq!(coproduct_terms(&d("1 2 3 1 2 3")).len(), 8);
    }

    #[test]
    fn primitive_construction() {
        assert_eq!(
            build_primitive(PrimitiveSpec::Path { n: 1 }).unwrap(),
            DiagramCombo::from_diagram(&d("1 1"))
        );
        let p2 = build_primitive(PrimitiveSpec::Path { n: 2 }).unwrap();
        assert_eq!(
            p2,
            DiagramCombo::difference(&d("1 2 1 2"), &d("1 1 2 2")).unwrap()
        );
        assert_eq!(
            primitive_terms(PrimitiveSpec::Path { n: 3 }).unwrap().len(),
            4
        );
        assert_eq!(
            primitive_terms(PrimitiveSpec::Tadpole { n: 4, k: 4 })
                .unwrap()
                .len(),
            16
        );
        assert!(build_primitive(PrimitiveSpec::Tadpole { n: 4, k: 2 }).is_err());
        assert!(build_primitive(PrimitiveSpec::Tadpole { n: 3, k: 4 }).is_err());
        assert!(build_primitive(PrimitiveSpec::Path { n: 0 }).is_err());
    }

    #[test]
    fn primitive_defects() {
        let mut bases = BTreeMap::new();
        for n in 0..=2 {
            bases.insert(n, RelationBasis::build(n, false, 8).unwrap());
        }
        let p2 = build_primitive(PrimitiveSpec::Path { n: 2 }).unwrap();
        assert!(primitive_defect(&p2, &bases).unwrap().is_zero());
        let x = DiagramCombo::from_diagram(&d("1 2 1 2"));
        let defect = primitive_defect(&x, &bases).unwrap();
        assert_eq!(defect.terms().get(&(d("1 1"), d("1 1"))), Some(&q(2)));
        bases.remove(&1);
        assert!(matches!(
            primitive_defect(&x, &bases),
            Err(Error::MissingBasis(1))
        ));
    }

    #[test]
    fn generalized_relation_with_single_chord_is_plain() {
        let dg = d("1 2 1 3 2 3");
        let s = ChordSubset::new(&dg, &[2]).unwrap();
        let g = generalized_four_term(&dg, &s, 1, 0).unwrap();
        let (e, _) = dg.endpoints(1).unwrap();
        let plain = four_term_at(dg.word(), e, 2);
        let mut expected = DiagramCombo::zero(3);
        for (x, sgn) in plain.iter().zip(FOUR_TERM_SIGNS) {
            expected.add_term(x, &q(sgn)).unwrap();
        }
        assert_eq!(g, expected);
        assert!(g.coefficient_sum().is_zero());
        let bad = ChordSubset::new(&dg, &[1, 2]).unwrap();
        assert!(generalized_four_term(&dg, &bad, 1, 0).is_err());
    }

    #[test]
    fn combo_json_round_trip() {
        let mut c = DiagramCombo::zero(2);
        c.add_term(&d("1 2 1 2"), &Rational::new((-3).into(), 2.into()))
            .unwrap();
        c.add_term(&d("1 1 2 2"), &q(5)).unwrap();
        let v = c.to_json();
        assert_eq!(v["terms"][1]["coeff"], "-3/2");
        assert_eq!(DiagramCombo::from_json(&v).unwrap(), c);
        assert!(c.add_term(&d("1 1"), &q(1)).is_err());
    }

    #[test]
    fn kernel_small_degrees() {
        let r = graph_kernel_check(&RelationBasis::build(1, true, 8).unwrap()).unwrap();
        assert_eq!((r.diagram_dim, r.graph_dim, r.kernel_trivial), (0, 0, true));
        let r = graph_kernel_check(&RelationBasis::build(2, true, 8).unwrap()).unwrap();
        assert_eq!((r.diagram_dim, r.graph_dim, r.kernel_trivial), (1, 1, true));
    }
}
