//! The weight system coming from the Kauffman polynomial.
//!
//! A chord is resolved as `W(L!) = y W(L-) + x W(L*) - x W(L#)`: `L-` drops the
//! chord, `L*` is the smoothing that respects the local orientations of the two
//! strands and `L#` is the other one, which needs a pair of orientation-reversal
//! dots. Each circle beyond the last contributes `1 - y/x`; a single bare circle
//! evaluates to 1.
//!
//! Every endpoint remembers whether the true (semi-)orientation of its strand
//! agrees with the direction in which the circle is listed. Reversal dots sit
//! exactly between neighbouring endpoints whose flags differ, so dots always
//! come in pairs and dots with no endpoint between them are already cancelled.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::DiagramCombo;
use crate::diagram::{ChordDiagram, Label};
use crate::poly::LaurentPoly;

/// One chord endpoint on a circle of a skein state.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Endpoint {
    pub chord: Label,
    /// Whether the strand's orientation agrees with the listing direction.
    pub forward: bool,
}

impl Endpoint {
    fn reversed(self) -> Endpoint {
        Endpoint {
            chord: self.chord,
            forward: !self.forward,
        }
    }
}

/// Disjoint circles carrying chord endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkeinState {
    circles: Vec<Vec<Endpoint>>,
}

/// Where a reversal dot sits: between item `after` and the next item on a circle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DotPosition {
    pub circle: usize,
    pub after: usize,
}

/// Which smoothing gets `+x`. The flipped variants are negative controls:
/// `Flipped` swaps the two smoothings everywhere and breaks the 1-term
/// relation, `FlippedAcross` swaps them only for chords joining two circles
/// and breaks the 4-term relation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Convention {
    #[default]
    Standard,
    Flipped,
    FlippedAcross,
}

impl SkeinState {
    pub fn from_diagram(d: &ChordDiagram) -> SkeinState {
        SkeinState {
            circles: vec![d
                .word()
                .iter()
                .map(|&chord| Endpoint {
                    chord,
                    forward: true,
                })
                .collect()],
        }
    }

    pub fn from_circles(circles: Vec<Vec<Endpoint>>) -> SkeinState {
        SkeinState { circles }
    }

    pub fn circles(&self) -> &[Vec<Endpoint>] {
        &self.circles
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn chords(&self) -> Vec<Label> {
        let mut c: Vec<Label> = self.circles.iter().flatten().map(|e| e.chord).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Orientation-reversal dots implied by the endpoint flags.
    pub fn dots(&self) -> Vec<DotPosition> {
        let mut out = Vec::new();
        for (ci, c) in self.circles.iter().enumerate() {
            for i in 0..c.len() {
                if c[i].forward != c[(i + 1) % c.len()].forward {
                    out.push(DotPosition {
                        circle: ci,
                        after: i,
                    });
                }
            }
        }
        out
    }

    fn locate(&self, chord: Label) -> Option<[(usize, usize); 2]> {
        let mut found = Vec::with_capacity(2);
        for (ci, c) in self.circles.iter().enumerate() {
            for (i, e) in c.iter().enumerate() {
                if e.chord == chord {
                    found.push((ci, i));
                }
            }
        }
        (found.len() == 2).then(|| [found[0], found[1]])
    }
}

/// A coefficient of a resolution branch.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Branch {
    /// `y`: chord removed.
    Delete,
    /// `+x`: orientation-respecting smoothing (`L*`).
    Smooth,
    /// `-x`: smoothing with a new dot pair (`L#`).
    SmoothDotted,
}

impl Branch {
    pub fn coefficient(self) -> LaurentPoly {
        match self {
            Branch::Delete => LaurentPoly::y(),
            Branch::Smooth => LaurentPoly::x(),
            Branch::SmoothDotted => -&LaurentPoly::x(),
        }
    }
}

fn reversed_flipped(items: &[Endpoint]) -> Vec<Endpoint> {
    items.iter().rev().map(|e| e.reversed()).collect()
}

/// Resolves `chord` into its three branches `[y·L-, +x·L*, -x·L#]`.
/// Returns `None` when `chord` is not in the state.
pub fn resolve_chord(s: &SkeinState, chord: Label) -> Option<[(Branch, SkeinState); 3]> {
    resolve_with(s, chord, Convention::Standard)
}

fn resolve_with(
    s: &SkeinState,
    chord: Label,
    conv: Convention,
) -> Option<[(Branch, SkeinState); 3]> {
    let [(c1, i), (c2, j)] = s.locate(chord)?;
    let mut rest: Vec<Vec<Endpoint>> = Vec::with_capacity(s.circles.len() + 1);
    let (deleted, split, merged, consistent_is_split);
    if c1 == c2 {
        let circle = &s.circles[c1];
        let (p, q) = (circle[i], circle[j]);
        rest.extend(
            s.circles
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != c1)
                .map(|(_, c)| c.clone()),
        );
        // Arc `inner` runs from p to q, `outer` from q back to p.
        let inner = &circle[i + 1..j];
        let outer: Vec<Endpoint> = circle[j + 1..]
            .iter()
            .chain(&circle[..i])
            .copied()
            .collect();
        let mut del = inner.to_vec();
        del.extend_from_slice(&outer);
        deleted = vec![del];
        split = vec![inner.to_vec(), outer.clone()];
        let mut m = inner.to_vec();
        m.extend(reversed_flipped(&outer));
        merged = vec![m];
        consistent_is_split = p.forward == q.forward;
    } else {
        let (a, b) = (&s.circles[c1], &s.circles[c2]);
        let (p, q) = (a[i], b[j]);
        rest.extend(
            s.circles
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != c1 && k != c2)
                .map(|(_, c)| c.clone()),
        );
        let from_p: Vec<Endpoint> = a[i + 1..].iter().chain(&a[..i]).copied().collect();
        let from_q: Vec<Endpoint> = b[j + 1..].iter().chain(&b[..j]).copied().collect();
        deleted = vec![from_p.clone(), from_q.clone()];
        // Both smoothings join the circles; `split` keeps the second circle's direction.
        let mut keep = from_p.clone();
        keep.extend_from_slice(&from_q);
        let mut flip = from_p;
        flip.extend(reversed_flipped(&from_q));
        split = vec![keep];
        merged = vec![flip];
        consistent_is_split = p.forward == q.forward;
    }
    let build = |extra: Vec<Vec<Endpoint>>| {
        let mut circles = rest.clone();
        circles.extend(extra);
        SkeinState { circles }
    };
    let (mut good, mut bad) = if consistent_is_split {
        (split, merged)
    } else {
        (merged, split)
    };
    let same = c1 == c2;
    let flip = match conv {
        Convention::Standard => false,
        Convention::Flipped => true,
        Convention::FlippedAcross => !same,
    };
    if flip {
        std::mem::swap(&mut good, &mut bad);
    }
    Some([
        (Branch::Delete, build(deleted)),
        (Branch::Smooth, build(good)),
        (Branch::SmoothDotted, build(bad)),
    ])
}

/// `1 - y/x`, the value of an extra circle.
pub fn circle_factor() -> LaurentPoly {
    &LaurentPoly::one() - &LaurentPoly::monomial(1, -1, 1)
}

/// Label-free description of one reading of a circle: flag plus forward
/// distance to the partner endpoint when it lies on the same circle.
fn shape(items: &[Endpoint]) -> Vec<(bool, usize)> {
    let n = items.len();
    (0..n)
        .map(|i| {
            let partner = (1..n)
                .find(|&k| items[(i + k) % n].chord == items[i].chord)
                .unwrap_or(0);
            (items[i].forward, partner)
        })
        .collect()
}

fn best_reading(items: &[Endpoint]) -> (Vec<(bool, usize)>, Vec<Endpoint>) {
    let n = items.len();
    let rev = reversed_flipped(items);
    let mut best: Option<(Vec<(bool, usize)>, Vec<Endpoint>)> = None;
    for base in [items, &rev[..]] {
        for r in 0..n {
            let reading: Vec<Endpoint> = base[r..].iter().chain(&base[..r]).copied().collect();
            let sh = shape(&reading);
            if best.as_ref().is_none_or(|(b, _)| sh < *b) {
                best = Some((sh, reading));
            }
        }
    }
    best.unwrap_or_default()
}

/// Drops bare circles (each extra one is worth `1 - y/x`) and rewrites the
/// state in a canonical form: each circle read from its least label-free
/// reading, circles sorted, chords relabeled by first appearance.
pub fn normalize_state(s: &SkeinState) -> (LaurentPoly, SkeinState) {
    let bare = s.circles.iter().filter(|c| c.is_empty()).count();
    let live: Vec<&Vec<Endpoint>> = s.circles.iter().filter(|c| !c.is_empty()).collect();
    let extra = if live.is_empty() {
        bare.saturating_sub(1)
    } else {
        bare
    };
    let factor = circle_factor().pow(extra as u32);
    if live.is_empty() {
        return (
            factor,
            SkeinState {
                circles: vec![Vec::new()],
            },
        );
    }
    let mut readings: Vec<(Vec<(bool, usize)>, Vec<Endpoint>)> =
        live.iter().map(|c| best_reading(c)).collect();
    readings.sort_by(|a, b| a.0.cmp(&b.0));
    let mut map: HashMap<Label, Label> = HashMap::new();
    let circles = readings
        .into_iter()
        .map(|(_, items)| {
            items
                .into_iter()
                .map(|e| {
                    let next = map.len() as Label + 1;
                    let chord = *map.entry(e.chord).or_insert(next);
                    Endpoint {
                        chord,
                        forward: e.forward,
                    }
                })
                .collect()
        })
        .collect();
    (factor, SkeinState { circles })
}

/// Recursive evaluator with a memo keyed on normalized states.
#[derive(Debug, Default)]
pub struct WeightEvaluator {
    memo: HashMap<SkeinState, LaurentPoly>,
    convention: Convention,
    memoize: bool,
}

impl WeightEvaluator {
    pub fn new() -> Self {
        WeightEvaluator {
            memo: HashMap::new(),
            convention: Convention::Standard,
            memoize: true,
        }
    }

    pub fn with_convention(convention: Convention) -> Self {
        WeightEvaluator {
            convention,
            ..WeightEvaluator::new()
        }
    }

    /// Plain recursion on raw states, no normalization beyond circle counting.
    pub fn unmemoized() -> Self {
        WeightEvaluator {
            memoize: false,
            ..WeightEvaluator::new()
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn eval_state(&mut self, s: &SkeinState) -> LaurentPoly {
        if !self.memoize {
            return self.eval_raw(s);
        }
        let (factor, s) = normalize_state(s);
        let Some(&chord) = s.chords().first() else {
            return factor;
        };
        if let Some(v) = self.memo.get(&s) {
            return &factor * v;
        }
        let mut value = LaurentPoly::zero();
        for (branch, next) in resolve_with(&s, chord, self.convention).expect("chord is present") {
            let v = self.eval_state(&next);
            value = &value + &(&branch.coefficient() * &v);
        }
        let out = &factor * &value;
        self.memo.insert(s, value);
        out
    }

    fn eval_raw(&mut self, s: &SkeinState) -> LaurentPoly {
        let Some(&chord) = s.chords().first() else {
            return circle_factor().pow(s.circle_count().saturating_sub(1) as u32);
        };
        let mut value = LaurentPoly::zero();
        for (branch, next) in resolve_with(s, chord, self.convention).expect("chord is present") {
            value = &value + &(&branch.coefficient() * &self.eval_raw(&next));
        }
        value
    }

    /// In debug builds, a diagram of positive degree evaluated with the
    /// standard convention must give a polynomial divisible by `y(x+y)`.
    pub fn eval_diagram(&mut self, d: &ChordDiagram) -> LaurentPoly {
        let w = self.eval_state(&SkeinState::from_diagram(d));
        debug_assert!(
            self.convention != Convention::Standard
                || d.degree() == 0
                || (w.is_polynomial() && weight_factor().divides(&w)),
            "W({d}) = {w} is not a polynomial multiple of y(x+y)"
        );
        w
    }

    pub fn eval_combo(&mut self, c: &DiagramCombo) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (d, q) in c.terms() {
            out = &out + &self.eval_diagram(d).scale(q);
        }
        out
    }
}

/// `W(d)` with a fresh evaluator.
pub fn eval_weight(d: &ChordDiagram) -> LaurentPoly {
    WeightEvaluator::new().eval_diagram(d)
}

pub fn eval_weight_combo(c: &DiagramCombo) -> LaurentPoly {
    WeightEvaluator::new().eval_combo(c)
}

/// Evaluates many diagrams in parallel, one evaluator per worker split.
/// The output order follows the input.
pub fn eval_many(diagrams: &[ChordDiagram], convention: Convention) -> Vec<LaurentPoly> {
    diagrams
        .par_iter()
        .map_init(
            || WeightEvaluator::with_convention(convention),
            |ev, d| ev.eval_diagram(d),
        )
        .collect()
}

/// `y(x + y)`, which divides the weight of every diagram of positive degree.
pub fn weight_factor() -> LaurentPoly {
    &LaurentPoly::y() * &(&LaurentPoly::x() + &LaurentPoly::y())
}
