//! Exact sparse row reduction over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// Sparse vector: `(column, coefficient)` pairs, strictly increasing columns, no zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// `row += a * other`, both sorted by column.
fn axpy(row: &SparseRow, a: &Rational, other: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_row = j == other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_other = i == row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_other {
            out.push((other[j].0, a * &other[j].1));
            j += 1;
        } else {
            let v = &row[i].1 + a * &other[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row-echelon basis of a subspace of `Q^columns`.
///
/// Every row has leading coefficient 1 and is zero in every other pivot
/// column, so the basis is unique for a given span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    columns: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(columns: usize) -> Self {
        Echelon {
            columns,
            rows: Vec::new(),
            pivot_row: vec![None; columns],
        }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Rows sorted by pivot column.
    pub fn rows(&self) -> Vec<&SparseRow> {
        let mut r: Vec<&SparseRow> = self.rows.iter().collect();
        r.sort_by_key(|row| row[0].0);
        r
    }

    /// Normal form of `v` modulo the span: zero exactly on members of the span.
    pub fn reduce(&self, v: SparseRow) -> SparseRow {
        let mut v = v;
        // Pivot rows vanish on all other pivot columns, so one pass suffices.
        let pivots: Vec<(usize, Rational)> = v
            .iter()
            .filter(|(c, _)| self.pivot_row[*c].is_some())
            .cloned()
            .collect();
        for (c, a) in pivots {
            let row = &self.rows[self.pivot_row[c].unwrap()];
            v = axpy(&v, &-a, row);
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        let v = self.reduce(v);
        let Some((p, lead)) = v.first().cloned() else {
            return false;
        };
        let inv = Rational::one() / lead;
        let v: SparseRow = v.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        for row in self.rows.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&p, |(c, _)| *c) {
                let a = -row[k].1.clone();
                *row = axpy(row, &a, &v);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    pub(crate) fn from_rows(columns: usize, rows: Vec<SparseRow>) -> Self {
        let mut e = Echelon::new(columns);
        for r in rows {
            e.insert(r);
        }
        e
    }
}

pub(crate) fn int_row(entries: &[(usize, i64)]) -> SparseRow {
    let mut v: Vec<(usize, Rational)> = entries
        .iter()
        .filter(|(_, c)| *c != 0)
        .map(|&(col, c)| (col, Rational::from_integer(c.into())))
        .collect();
    v.sort_by_key(|(c, _)| *c);
    v
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
pub fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in c..cols {
                    let delta = &f * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
