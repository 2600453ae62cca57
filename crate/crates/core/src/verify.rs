//! Checks of the structural theorems and weight identities, with reports.
//!
//! Every check returns a [`CheckReport`]. A failing check always carries at
//! least one witness, written in the canonical text of the offending object
//! so it can be re-checked independently.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    build_primitive, four_term_relations, graph_kernel_check, one_term_relations, primitive_defect,
    DiagramCombo, PrimitiveSpec, RelationBasis, GENERATOR_TAG,
};
use crate::cache::Workspace;
use crate::diagram::{enumerate_diagrams_with_limit, ChordDiagram};
use crate::error::{Error, Result};
use crate::graph::classify_degree;
use crate::linalg::{Echelon, Rational};
use crate::poly::LaurentPoly;
use crate::weight::{eval_many, weight_factor, Convention, WeightEvaluator};

/// Witnesses kept per report; the rest are summarized in one final line.
pub const MAX_WITNESSES: usize = 50;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub id: String,
    #[serde(flatten)]
    pub status: Status,
    /// Inclusive degree range covered.
    pub degrees: [usize; 2],
    pub elapsed_ms: u64,
    pub witnesses: Vec<String>,
}

impl CheckReport {
    fn finish(id: &str, degrees: [usize; 2], start: Instant, mut witnesses: Vec<String>) -> Self {
        let status = if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        if witnesses.len() > MAX_WITNESSES {
            let extra = witnesses.len() - MAX_WITNESSES;
            witnesses.truncate(MAX_WITNESSES);
            witnesses.push(format!("... {extra} more"));
        }
        CheckReport {
            id: id.to_string(),
            status,
            degrees,
            elapsed_ms: start.elapsed().as_millis() as u64,
            witnesses,
        }
    }

    pub fn skipped(id: &str, degrees: [usize; 2], reason: impl Into<String>) -> Self {
        CheckReport {
            id: id.to_string(),
            status: Status::Skipped(reason.into()),
            degrees,
            elapsed_ms: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

fn fail_on_error(
    id: &str,
    degrees: [usize; 2],
    start: Instant,
    r: Result<CheckReport>,
) -> CheckReport {
    r.unwrap_or_else(|e| CheckReport::finish(id, degrees, start, vec![format!("error: {e}")]))
}

/// Diagram counts for degrees `1..=n_max` against the Burnside count.
pub fn verify_enumeration(ws: &Workspace, n_max: usize) -> CheckReport {
    let start = Instant::now();
    let id = "enumeration-counts";
    let r = (|| {
        let mut witnesses = Vec::new();
        for n in 1..=n_max {
            let found = enumerate_diagrams_with_limit(n, ws.limit())?.len();
            let expected = expected_count(n);
            if found != expected {
                witnesses.push(format!("n={n}: {found} diagrams, expected {expected}"));
            }
        }
        Ok(CheckReport::finish(id, [1, n_max], start, witnesses))
    })();
    fail_on_error(id, [1, n_max], start, r)
}

/// Number of chord diagrams of degree `n` up to rotation, from the
/// Burnside count over the cyclic group.
pub fn expected_count(n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let m = 2 * n;
    let mut total: u128 = 0;
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        // Rotations of order `d` (there are phi(d) of them) fix the matchings
        // invariant under a rotation by m/d steps.
        total += phi(d as u128) * fixed_matchings(m, m / d);
    }
    (total / m as u128) as usize
}

fn phi(mut n: u128) -> u128 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Perfect matchings on `m` points invariant under rotation by `s` (`s | m`).
fn fixed_matchings(m: usize, s: usize) -> u128 {
    let d = (m / s) as u128;
    let cycles = s;
    // Points split into `s` orbits of length `d`. A chord pairs two orbits
    // (d ways) or, when d is even, joins antipodal points within one orbit.
    let mut a = vec![0u128; cycles + 1];
    a[0] = 1;
    for k in 1..=cycles {
        let mut v = if d.is_multiple_of(2) { a[k - 1] } else { 0 };
        if k >= 2 {
            v += (k as u128 - 1) * d * a[k - 2];
        }
        a[k] = v;
    }
    a[cycles]
}

/// Quotient dimensions with the 1-term relation for degrees `1..=n_max`.
pub fn verify_dimensions(ws: &Workspace, n_max: usize, expected: &[(usize, usize)]) -> CheckReport {
    let start = Instant::now();
    let id = "quotient-dimensions";
    let r = (|| {
        let mut witnesses = Vec::new();
        for &(n, dim) in expected.iter().filter(|(n, _)| *n <= n_max) {
            let found = ws.basis(n, true)?.quotient_dim();
            if found != dim {
                witnesses.push(format!("n={n}: dimension {found}, expected {dim}"));
            }
        }
        Ok(CheckReport::finish(id, [1, n_max], start, witnesses))
    })();
    fail_on_error(id, [1, n_max], start, r)
}

/// Known quotient dimensions with the 1-term relation.
pub const KNOWN_DIMENSIONS: [(usize, usize); 7] =
    [(1, 0), (2, 1), (3, 1), (4, 3), (5, 4), (6, 9), (7, 14)];

/// Diagrams with isomorphic intersection graphs of cycle rank at most
/// `betti_max` (all of them when `None`) are equivalent modulo 4T and 1T.
pub fn verify_igc(ws: &Workspace, n: usize, betti_max: Option<usize>) -> CheckReport {
    let start = Instant::now();
    let id = match betti_max {
        Some(b) => format!("igc-betti-le-{b}-n{n}"),
        None => format!("igc-n{n}"),
    };
    let r = (|| {
        let basis = ws.basis(n, true)?;
        let classes = classify_degree(n, ws.limit())?;
        let witnesses: Vec<String> = classes
            .par_iter()
            .filter(|c| betti_max.is_none_or(|b| c.betti <= b))
            .map(|c| -> Result<Vec<String>> {
                let first = &c.diagrams[0];
                let nf = basis.normal_form(first)?;
                let mut out = Vec::new();
                for d in &c.diagrams[1..] {
                    if basis.normal_form(d)? != nf {
                        out.push(format!("{first} | {d}"));
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(CheckReport::finish(&id, [n, n], start, witnesses))
    })();
    fail_on_error(&id, [n, n], start, r)
}

/// `W` on the 4T and 1T generators of degree `1..=n` and the `y(x+y)` factor
/// of `W(D)` for every diagram.
pub fn verify_weight_axioms(ws: &Workspace, n: usize, convention: Convention) -> CheckReport {
    let start = Instant::now();
    let id = match convention {
        Convention::Standard => "weight-axioms".to_string(),
        other => format!("weight-axioms-{other:?}").to_lowercase(),
    };
    let r = (|| {
        let mut witnesses = Vec::new();
        let factor = weight_factor();
        for deg in 1..=n {
            let diagrams = enumerate_diagrams_with_limit(deg, ws.limit())?;
            let values = eval_many(&diagrams, convention);
            let table: BTreeMap<&ChordDiagram, &LaurentPoly> =
                diagrams.iter().zip(&values).collect();
            let eval = |c: &DiagramCombo| {
                c.terms()
                    .iter()
                    .fold(LaurentPoly::zero(), |acc, (d, q)| &acc + &table[d].scale(q))
            };
            for rel in four_term_relations(deg, ws.limit())? {
                let w = eval(&rel);
                if !w.is_zero() {
                    witnesses.push(format!("4T {rel} -> {w}"));
                }
            }
            for rel in one_term_relations(deg, ws.limit())? {
                let w = eval(&rel);
                if !w.is_zero() {
                    witnesses.push(format!("1T {rel} -> {w}"));
                }
            }
            for (d, w) in diagrams.iter().zip(&values) {
                let ok = w.is_polynomial() && w.has_integer_coefficients() && factor.divides(w);
                if !ok {
                    witnesses.push(format!("factor {d} -> {w}"));
                }
            }
        }
        Ok(CheckReport::finish(&id, [1, n], start, witnesses))
    })();
    fail_on_error(&id, [1, n], start, r)
}

/// Weights of `p_n` for `1 <= n <= n_max` and `p_{n,k}` for `3 <= k <= n <= n_max`.
#[derive(Clone, Debug)]
pub struct PrimitiveWeights {
    pub n_max: usize,
    paths: BTreeMap<usize, LaurentPoly>,
    tadpoles: BTreeMap<(usize, usize), LaurentPoly>,
}

impl PrimitiveWeights {
    pub fn compute(n_max: usize) -> Result<Self> {
        let mut specs = Vec::new();
        for n in 1..=n_max {
            specs.push(PrimitiveSpec::Path { n });
            for k in 3..=n {
                specs.push(PrimitiveSpec::Tadpole { n, k });
            }
        }
        let values: Vec<LaurentPoly> = specs
            .par_iter()
            .map_init(WeightEvaluator::new, |ev, s| {
                Ok(ev.eval_combo(&build_primitive(*s)?))
            })
            .collect::<Result<_>>()?;
        let mut paths = BTreeMap::new();
        let mut tadpoles = BTreeMap::new();
        for (s, v) in specs.into_iter().zip(values) {
            match s {
                PrimitiveSpec::Path { n } => {
                    paths.insert(n, v);
                }
                PrimitiveSpec::Tadpole { n, k } => {
                    tadpoles.insert((n, k), v);
                }
            }
        }
        Ok(PrimitiveWeights {
            n_max,
            paths,
            tadpoles,
        })
    }

    /// `W(p_n)`; `W(p_0)` is taken to be 0.
    pub fn path(&self, n: usize) -> LaurentPoly {
        self.paths.get(&n).cloned().unwrap_or_default()
    }

    pub fn tadpole(&self, n: usize, k: usize) -> LaurentPoly {
        self.tadpoles[&(n, k)].clone()
    }

    pub fn cycle(&self, n: usize) -> LaurentPoly {
        self.tadpole(n, n)
    }
}

fn x() -> LaurentPoly {
    LaurentPoly::x()
}

fn y() -> LaurentPoly {
    LaurentPoly::y()
}

fn x_plus_y() -> LaurentPoly {
    &x() + &y()
}

fn scaled(c: i64, p: &LaurentPoly) -> LaurentPoly {
    p.scale(&Rational::from_integer(c.into()))
}

fn mismatch(label: &str, found: &LaurentPoly, expected: &LaurentPoly) -> Option<String> {
    (found != expected).then(|| format!("{label}: got {found}, expected {expected}"))
}

/// `W(p_{4,4})`, `W(p_{5,5})`, `W(p_{6,6})` as printed in the literature.
pub fn published_cycle_weights() -> [(usize, LaurentPoly); 3] {
    let f = weight_factor();
    [
        (
            4,
            &f * &LaurentPoly::from_terms(&[(6, 2, 0), (3, 1, 1), (1, 0, 2)]),
        ),
        (
            5,
            &f * &LaurentPoly::from_terms(&[(-1, 3, 0), (6, 2, 1), (4, 1, 2), (1, 0, 3)]),
        ),
        (
            6,
            &f * &LaurentPoly::from_terms(&[
                (16, 4, 0),
                (10, 3, 1),
                (10, 2, 2),
                (5, 1, 3),
                (1, 0, 4),
            ]),
        ),
    ]
}

/// `Q_n = W(p_{n,n}) / (y(x+y))`.
pub fn q_poly(w: &PrimitiveWeights, n: usize) -> Result<LaurentPoly> {
    w.cycle(n).exact_div(&weight_factor())
}

/// `Q_n(-y, y) = c_n y^{n-2}`; returns `c_n`.
pub fn c_value(q: &LaurentPoly, n: usize) -> Result<Rational> {
    let s = q.substitute_x_neg_y()?;
    let mut other = s.clone();
    let e = (0, n as u32 - 2);
    let c = s.terms().get(&e).cloned().unwrap_or_else(Rational::zero);
    other.add_term(e, -c.clone());
    if !other.is_zero() {
        return Err(Error::InexactDivision);
    }
    Ok(c)
}

/// One report per weight identity, covering degrees up to `n_max`.
pub fn lemma_checks(n_max: usize) -> Vec<CheckReport> {
    let start = Instant::now();
    let weights = match PrimitiveWeights::compute(n_max) {
        Ok(w) => w,
        Err(e) => {
            return vec![CheckReport::finish(
                "primitive-weights",
                [1, n_max],
                start,
                vec![format!("error: {e}")],
            )]
        }
    };
    vec![
        check_path_weights(&weights),
        check_tadpole_weights(&weights),
        check_published_values(&weights),
        check_circle_identity(&weights),
        check_q_recursion(&weights),
        check_square_factor(&weights),
        check_independence(&weights),
    ]
}

/// All weight identities folded into one report.
pub fn verify_lemmas(n_max: usize) -> CheckReport {
    let start = Instant::now();
    let mut witnesses = Vec::new();
    for r in lemma_checks(n_max) {
        witnesses.extend(r.witnesses.iter().map(|w| format!("{}: {w}", r.id)));
    }
    CheckReport::finish("lemmas", [2, n_max], start, witnesses)
}

pub fn check_path_weights(w: &PrimitiveWeights) -> CheckReport {
    let start = Instant::now();
    let witnesses = (2..=w.n_max)
        .filter_map(|n| {
            let expected = -&(&y() * &x_plus_y().pow(n as u32 - 1));
            mismatch(&format!("W(p_{n})"), &w.path(n), &expected)
        })
        .collect();
    CheckReport::finish("path-weights", [2, w.n_max], start, witnesses)
}

pub fn check_tadpole_weights(w: &PrimitiveWeights) -> CheckReport {
    let start = Instant::now();
    let mut witnesses = Vec::new();
    for k in 4..=w.n_max {
        for n in k + 1..=w.n_max {
            let expected = &x_plus_y().pow((n - k) as u32) * &w.cycle(k);
            witnesses.extend(mismatch(
                &format!("W(p_{n},{k})"),
                &w.tadpole(n, k),
                &expected,
            ));
        }
    }
    CheckReport::finish("tadpole-weights", [5, w.n_max], start, witnesses)
}

pub fn check_published_values(w: &PrimitiveWeights) -> CheckReport {
    let start = Instant::now();
    let published = published_cycle_weights();
    if w.n_max < 6 {
        return CheckReport::skipped("published-cycle-weights", [4, 6], "needs degree 6");
    }
    let witnesses = published
        .iter()
        .filter_map(|(n, p)| mismatch(&format!("W(p_{n},{n})"), &w.cycle(*n), p))
        .collect();
    CheckReport::finish("published-cycle-weights", [4, 6], start, witnesses)
}

/// `W(p_{n,n}) = -2W(p_n) + yW(p_{n-1}) + 2x^2 W(p_{n-2}) + 3x^2 W(p_{n-2,n-2}) - 2x^3 W(p_{n-3,n-3})`.
pub fn circle_identity_rhs(w: &PrimitiveWeights, n: usize) -> LaurentPoly {
    let x2 = x().pow(2);
    let x3 = x().pow(3);
    let mut rhs = scaled(-2, &w.path(n));
    rhs = &rhs + &(&y() * &w.path(n - 1));
    rhs = &rhs + &scaled(2, &(&x2 * &w.path(n - 2)));
    rhs = &rhs + &scaled(3, &(&x2 * &w.cycle(n - 2)));
    &rhs - &scaled(2, &(&x3 * &w.cycle(n - 3)))
}

pub fn check_circle_identity(w: &PrimitiveWeights) -> CheckReport {
    let start = Instant::now();
    if w.n_max < 7 {
        return CheckReport::skipped("circle-identity", [7, 7], "needs degree 7");
    }
    let witnesses = (7..=w.n_max)
        .filter_map(|n| {
            mismatch(
                &format!("W(p_{n},{n})"),
                &w.cycle(n),
                &circle_identity_rhs(w, n),
            )
        })
        .collect();
    CheckReport::finish("circle-identity", [7, w.n_max], start, witnesses)
}

/// The `Q_n` recursion at `7..=n_max`, the values `Q_n(-y,y)` at 4, 5, 6 and
/// positivity and monotonicity of `c_n` up to `n_max + 2`.
pub fn check_q_recursion(w: &PrimitiveWeights) -> CheckReport {
    let start = Instant::now();
    let id = "q-recursion";
    let hi = w.n_max + 2;
    let r = (|| -> Result<Vec<String>> {
        let mut witnesses = Vec::new();
        let mut q = BTreeMap::new();
        for n in 4..=w.n_max {
            match q_poly(w, n) {
                Ok(p) => {
                    q.insert(n, p);
                }
                Err(_) => witnesses.push(format!(
                    "y(x+y) does not divide W(p_{n},{n}) = {}",
                    w.cycle(n)
                )),
            }
        }
        if q.len() != w.n_max.saturating_sub(3) {
            return Ok(witnesses);
        }
        for n in 7..=w.n_max {
            let lead = &(&y() * &(&scaled(3, &x()) + &y())) * &x_plus_y().pow(n as u32 - 4);
            let rhs = &(&lead + &scaled(3, &(&x().pow(2) * &q[&(n - 2)])))
                - &scaled(2, &(&x().pow(3) * &q[&(n - 3)]));
            witnesses.extend(mismatch(&format!("Q_{n}"), &q[&n], &rhs));
        }
        let mut c: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&n, p) in &q {
            c.insert(n, c_value(p, n)?);
        }
        for (n, expected) in [(4usize, 4i64), (5, 4), (6, 12)] {
            if let Some(v) = c.get(&n) {
                if *v != Rational::from_integer(expected.into()) {
                    witnesses.push(format!(
                        "Q_{n}(-y,y) = {v}*y^{}, expected {expected}*y^{}",
                        n - 2,
                        n - 2
                    ));
                }
            }
        }
        if w.n_max >= 6 {
            for n in w.n_max + 1..=hi {
                let next = &c[&(n - 2)] * Rational::from_integer(3.into())
                    + &c[&(n - 3)] * Rational::from_integer(2.into());
                c.insert(n, next);
            }
        }
        let mut prev: Option<&Rational> = None;
        for (n, v) in &c {
            if !v.is_positive() {
                witnesses.push(format!("c_{n} = {v} is not positive"));
            }
            if prev.is_some_and(|p| v < p) {
                witnesses.push(format!("c_{n} = {v} is smaller than c_{}", n - 1));
            }
            prev = Some(v);
        }
        Ok(witnesses)
    })();
    match r {
        Ok(witnesses) => CheckReport::finish(id, [4, hi], start, witnesses),
        Err(e) => CheckReport::finish(id, [4, hi], start, vec![format!("error: {e}")]),
    }
}

/// The values `c_n` for `4 <= n <= n_max`, then extended by the recursion.
pub fn c_sequence(w: &PrimitiveWeights, up_to: usize) -> Result<Vec<(usize, i64)>> {
    let mut c: BTreeMap<usize, Rational> = BTreeMap::new();
    for n in 4..=w.n_max.min(up_to) {
        c.insert(n, c_value(&q_poly(w, n)?, n)?);
    }
    for n in w.n_max + 1..=up_to {
        if n < 7 {
            return Err(Error::DegreeLimit {
                degree: n,
                limit: w.n_max,
            });
        }
        let next = &c[&(n - 2)] * Rational::from_integer(3.into())
            + &c[&(n - 3)] * Rational::from_integer(2.into());
        c.insert(n, next);
    }
    Ok(c.into_iter()
        .map(|(n, v)| (n, v.to_integer().to_i64().unwrap_or(i64::MAX)))
        .collect())
}

pub fn check_square_factor(w: &PrimitiveWeights) -> CheckReport {
    let start = Instant::now();
    let sq = x_plus_y().pow(2);
    let witnesses = (4..=w.n_max)
        .filter(|&n| sq.divides(&w.cycle(n)))
        .map(|n| format!("(x+y)^2 divides W(p_{n},{n}) = {}", w.cycle(n)))
        .collect();
    CheckReport::finish("square-factor", [4, w.n_max], start, witnesses)
}

/// Rank of `{W(p_n)} ∪ {W(p_{n,k}) : 4 <= k <= n}` as vectors of coefficients.
pub fn independence_rank(w: &PrimitiveWeights, n: usize) -> usize {
    let mut polys = vec![w.path(n)];
    polys.extend((4..=n).map(|k| w.tadpole(n, k)));
    let monomials: BTreeSet<(i32, u32)> = polys
        .iter()
        .flat_map(|p| p.terms().keys().copied())
        .collect();
    let index: BTreeMap<(i32, u32), usize> =
        monomials.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut e = Echelon::new(index.len());
    for p in polys {
        e.insert(
            p.terms()
                .iter()
                .map(|(m, c)| (index[m], c.clone()))
                .collect(),
        );
    }
    e.rank()
}

pub fn check_independence(w: &PrimitiveWeights) -> CheckReport {
    let start = Instant::now();
    let witnesses = (2..=w.n_max)
        .filter_map(|n| {
            let expected = if n <= 3 { 1 } else { n - 2 };
            let r = independence_rank(w, n);
            (r != expected).then(|| format!("n={n}: rank {r}, expected {expected}"))
        })
        .collect();
    CheckReport::finish("independence-rank", [2, w.n_max], start, witnesses)
}

/// The map from diagrams to graph classes is injective on the quotient in
/// every degree `1..=n_max`.
pub fn verify_kernel(ws: &Workspace, n_max: usize) -> CheckReport {
    let start = Instant::now();
    let id = "graph-kernel";
    let r = (|| {
        let mut witnesses = Vec::new();
        for n in 1..=n_max {
            let k = graph_kernel_check(&*ws.basis(n, true)?)?;
            if !k.kernel_trivial {
                witnesses.push(format!(
                    "n={n}: quotient dimension {} but graph quotient dimension {}",
                    k.diagram_dim, k.graph_dim
                ));
            }
        }
        Ok(CheckReport::finish(id, [1, n_max], start, witnesses))
    })();
    fail_on_error(id, [1, n_max], start, r)
}

/// Every `p_n` and `p_{n,k}` with `n <= n_max` is primitive modulo 4T.
pub fn verify_primitivity(ws: &Workspace, n_max: usize) -> CheckReport {
    let start = Instant::now();
    let id = "primitivity";
    let r = (|| {
        let mut bases: BTreeMap<usize, RelationBasis> = BTreeMap::new();
        for n in 0..=n_max {
            bases.insert(n, (*ws.basis(n, false)?).clone());
        }
        let mut witnesses = Vec::new();
        for n in 1..=n_max {
            let specs = std::iter::once(PrimitiveSpec::Path { n })
                .chain((3..=n).map(|k| PrimitiveSpec::Tadpole { n, k }));
            for spec in specs {
                let defect = primitive_defect(&build_primitive(spec)?, &bases)?;
                if !defect.is_zero() {
                    witnesses.push(format!("{spec}: defect {defect}"));
                }
            }
        }
        Ok(CheckReport::finish(id, [1, n_max], start, witnesses))
    })();
    fail_on_error(id, [1, n_max], start, r)
}

/// Degree budgets for the full suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub igc: usize,
    pub weight_axioms: usize,
    pub lemmas: usize,
    pub kernel: usize,
    pub primitivity: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            igc: 6,
            weight_axioms: 5,
            lemmas: 8,
            kernel: 5,
            primitivity: 4,
        }
    }
}

/// Runs every check in a fixed order.
pub fn run_suite(ws: &Workspace, cfg: SuiteConfig) -> Vec<CheckReport> {
    let mut out = vec![
        verify_enumeration(ws, cfg.igc),
        verify_dimensions(ws, cfg.igc, &KNOWN_DIMENSIONS),
    ];
    for n in 1..=cfg.igc {
        out.push(verify_igc(ws, n, Some(1)));
    }
    for n in 1..=cfg.igc {
        out.push(verify_igc(ws, n, None));
    }
    out.push(verify_weight_axioms(
        ws,
        cfg.weight_axioms,
        Convention::Standard,
    ));
    out.extend(lemma_checks(cfg.lemmas));
    out.push(verify_kernel(ws, cfg.kernel));
    out.push(verify_primitivity(ws, cfg.primitivity));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!(
                "unknown format {other:?}, expected json, csv or text"
            )),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
    pub version: String,
    pub generator_tag: String,
}

impl SuiteReport {
    pub fn new(checks: Vec<CheckReport>) -> Self {
        SuiteReport {
            checks,
            version: env!("CARGO_PKG_VERSION").to_string(),
            generator_tag: GENERATOR_TAG.to_string(),
        }
    }

    pub fn all_passed(&self) -> bool {
        !self.checks.iter().any(CheckReport::failed)
    }

    /// Sets every elapsed time to zero, making the document reproducible.
    pub fn without_timing(mut self) -> Self {
        for c in &mut self.checks {
            c.elapsed_ms = 0;
        }
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Renders a report document. Failures do not change the document; use
/// [`SuiteReport::all_passed`] for the exit status.
pub fn emit_report(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("id,status,degreeMin,degreeMax,elapsedMs,witnessCount\n");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    c.id,
                    status_word(&c.status),
                    c.degrees[0],
                    c.degrees[1],
                    c.elapsed_ms,
                    c.witnesses.len()
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let _ = write!(
                    s,
                    "{:<5} {} [{}..{}] {} ms",
                    status_word(&c.status).to_uppercase(),
                    c.id,
                    c.degrees[0],
                    c.degrees[1],
                    c.elapsed_ms
                );
                if let Status::Skipped(reason) = &c.status {
                    let _ = write!(s, " ({reason})");
                }
                s.push('\n');
                for w in &c.witnesses {
                    let _ = writeln!(s, "    {w}");
                }
            }
            s
        }
    }
}

fn status_word(s: &Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped(_) => "skip",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn burnside_counts() {
        let counts: Vec<usize> = (1..=6).map(expected_count).collect();
        assert_eq!(counts, vec![1, 2, 5, 18, 105, 902]);
    }

    #[test]
    fn small_checks_pass() {
        let ws = Workspace::default();
        assert!(verify_enumeration(&ws, 5).passed());
        assert!(verify_dimensions(&ws, 5, &KNOWN_DIMENSIONS).passed());
        assert!(verify_igc(&ws, 2, None).passed());
        assert!(verify_igc(&ws, 4, Some(1)).passed());
        assert!(verify_weight_axioms(&ws, 3, Convention::Standard).passed());
        assert!(verify_kernel(&ws, 4).passed());
        assert!(verify_primitivity(&ws, 3).passed());
    }

    #[test]
    fn flipped_conventions_fail_with_witnesses() {
        let ws = Workspace::default();
        for conv in [Convention::Flipped, Convention::FlippedAcross] {
            let r = verify_weight_axioms(&ws, 4, conv);
            assert!(r.failed(), "{conv:?}");
            assert!(!r.witnesses.is_empty());
        }
    }

    #[test]
    fn wrong_dimension_is_reported() {
        let ws = Workspace::default();
        let r = verify_dimensions(&ws, 4, &[(4, 5)]);
        assert!(r.failed());
        assert_eq!(
            r.witnesses,
            vec!["n=4: dimension 3, expected 5".to_string()]
        );
    }

    #[test]
    fn lemma_identities_at_small_degree() {
        let w = PrimitiveWeights::compute(6).unwrap();
        for r in [
            check_path_weights(&w),
            check_tadpole_weights(&w),
            check_published_values(&w),
            check_square_factor(&w),
            check_independence(&w),
        ] {
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(
            check_circle_identity(&w).status,
            Status::Skipped("needs degree 7".into())
        );
        assert_eq!(
            c_sequence(&w, 10).unwrap(),
            vec![
                (4, 4),
                (5, 4),
                (6, 12),
                (7, 20),
                (8, 44),
                (9, 84),
                (10, 172)
            ]
        );
        assert_eq!(independence_rank(&w, 5), 3);
    }

    #[test]
    fn report_documents() {
        let empty = SuiteReport::new(Vec::new());
        assert!(empty.all_passed());
        assert_eq!(
            SuiteReport::from_json(&emit_report(&empty, Format::Json)).unwrap(),
            empty
        );
        let failing = SuiteReport::new(vec![
            CheckReport::finish("a", [1, 2], Instant::now(), vec!["1 2 1 2".into()]),
            CheckReport::skipped("b", [3, 3], "too big"),
        ]);
        assert!(!failing.all_passed());
        let json = emit_report(&failing, Format::Json);
        assert!(json.contains("\"status\": \"skipped\""));
        assert_eq!(SuiteReport::from_json(&json).unwrap(), failing);
        assert!(emit_report(&failing, Format::Csv).contains("a,fail,1,2,"));
        assert!(emit_report(&failing, Format::Text).starts_with("FAIL  a [1..2]"));
    }

    #[test]
    fn witnesses_are_capped() {
        let r = CheckReport::finish(
            "w",
            [1, 1],
            Instant::now(),
            (0..60).map(|i| i.to_string()).collect(),
        );
        assert_eq!(r.witnesses.len(), MAX_WITNESSES + 1);
        assert_eq!(r.witnesses.last().unwrap(), "... 10 more");
    }
}
