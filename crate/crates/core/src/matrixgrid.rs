//! 0-1 matrices: divisions, grid minors, rank divisions, contraction sequences that
//! respect the line order, and width checks for trigraph contraction sequences.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{input, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl ZeroOneMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return input("matrix needs at least one row and one column");
        }
        Ok(ZeroOneMatrix {
            rows,
            cols,
            bits: vec![false; rows * cols],
        })
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), rows.first().map(|r| r.len()).unwrap_or(0))?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m.cols {
                return input("ragged matrix rows");
            }
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        m.bits.iter_mut().for_each(|b| *b = true);
        Ok(m)
    }

    /// One line per row of '0' and '1'; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let row: Result<Vec<bool>> = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(Error::Input(format!("unexpected matrix character `{other}`"))),
                })
                .collect();
            rows.push(row?);
        }
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.bits[i * self.cols + j] = b;
    }

    pub fn transpose(&self) -> ZeroOneMatrix {
        let mut t = ZeroOneMatrix {
            rows: self.cols,
            cols: self.rows,
            bits: vec![false; self.bits.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Whether the block `rows x cols` contains a 1.
    pub fn block_has_one(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> bool {
        rows.into_iter().any(|i| cols.clone().any(|j| self.get(i, j)))
    }

    fn distinct_rows(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> usize {
        rows.map(|i| cols.clone().map(|j| self.get(i, j)).collect::<Vec<_>>())
            .collect::<BTreeSet<_>>()
            .len()
    }

    fn distinct_cols(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> usize {
        cols.map(|j| rows.clone().map(|i| self.get(i, j)).collect::<Vec<_>>())
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<ZeroOneMatrix> {
        let mut m = Self::zeros(rows.len(), cols.len())?;
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        Ok(m)
    }
}

impl fmt::Display for ZeroOneMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Boundaries `0 = b_0 < ... < b_r = n` for rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Division {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Division {
    pub fn row_parts(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn col_parts(&self) -> usize {
        self.cols.len().saturating_sub(1)
    }

    pub fn row_range(&self, a: usize) -> std::ops::Range<usize> {
        self.rows[a]..self.rows[a + 1]
    }

    pub fn col_range(&self, b: usize) -> std::ops::Range<usize> {
        self.cols[b]..self.cols[b + 1]
    }

    /// Boundaries are strictly increasing and span the matrix.
    pub fn fits(&self, m: &ZeroOneMatrix) -> bool {
        let ok = |b: &[usize], n: usize| {
            b.len() >= 2 && b[0] == 0 && b[b.len() - 1] == n && b.windows(2).all(|w| w[0] < w[1])
        };
        ok(&self.rows, m.rows()) && ok(&self.cols, m.cols())
    }
}

/// Every cell of the division contains a 1.
pub fn is_grid_minor(m: &ZeroOneMatrix, d: &Division) -> bool {
    d.fits(m) && (0..d.row_parts()).all(|a| (0..d.col_parts()).all(|b| m.block_has_one(d.row_range(a), d.col_range(b))))
}

/// Every cell has at least `k` distinct rows and `k` distinct columns.
pub fn is_rank_division(m: &ZeroOneMatrix, d: &Division, k: usize) -> bool {
    d.fits(m)
        && (0..d.row_parts()).all(|a| {
            (0..d.col_parts()).all(|b| {
                m.distinct_rows(d.row_range(a), d.col_range(b)) >= k
                    && m.distinct_cols(d.row_range(a), d.col_range(b)) >= k
            })
        })
}

/// Row boundaries of every division of `n` lines into `k` intervals, lexicographically.
pub(crate) fn for_each_boundary(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k == 0 || k > n {
        return true;
    }
    for_each_combination(n - 1, k - 1, |cuts| {
        let mut b = Vec::with_capacity(k + 1);
        b.push(0);
        b.extend(cuts.iter().map(|c| c + 1));
        b.push(n);
        f(&b)
    })
}

/// Closes column blocks as early as possible; `cell_ok(rows_block, cols)` must be
/// monotone in the column range, so the last block may absorb the remaining columns.
fn greedy_columns(
    cols: usize,
    k: usize,
    parts: usize,
    cell_ok: impl Fn(usize, std::ops::Range<usize>) -> bool,
) -> Option<Vec<usize>> {
    let mut bounds = vec![0];
    let mut start = 0;
    for j in 0..cols {
        if bounds.len() > k {
            break;
        }
        if (0..parts).all(|a| cell_ok(a, start..j + 1)) {
            bounds.push(j + 1);
            start = j + 1;
        }
    }
    if bounds.len() <= k {
        return None;
    }
    bounds.truncate(k + 1);
    bounds[k] = cols;
    Some(bounds)
}

const DIVISION_LIMIT: u128 = 5_000_000;

fn guard_divisions(n: usize, k: usize) -> Result<()> {
    let count = binomial(n.saturating_sub(1), k.saturating_sub(1));
    if count > DIVISION_LIMIT {
        return Err(Error::Capacity {
            what: "row divisions",
            size: count,
            limit: DIVISION_LIMIT,
        });
    }
    Ok(())
}

/// A k-division whose cells all contain a 1, or None when no such division exists.
pub fn find_grid_minor(m: &ZeroOneMatrix, k: usize) -> Result<Option<Division>> {
    if k == 0 || k > m.rows().min(m.cols()) {
        return input(format!("k = {k} outside 1..={}", m.rows().min(m.cols())));
    }
    guard_divisions(m.rows(), k)?;
    let mut found = None;
    for_each_boundary(m.rows(), k, |rows| {
        let cols = greedy_columns(m.cols(), k, k, |a, range| m.block_has_one(rows[a]..rows[a + 1], range));
        if let Some(cols) = cols {
            found = Some(Division {
                rows: rows.to_vec(),
                cols,
            });
            return false;
        }
        true
    });
    Ok(found)
}

pub fn find_rank_division(m: &ZeroOneMatrix, k: usize) -> Result<Option<Division>> {
    if k == 0 || k * k > m.rows().min(m.cols()) {
        return Ok(None);
    }
    guard_divisions(m.rows(), k)?;
    let mut found = None;
    for_each_boundary(m.rows(), k, |rows| {
        if rows.windows(2).any(|w| w[1] - w[0] < k) {
            return true;
        }
        let cols = greedy_columns(m.cols(), k, k, |a, range| {
            m.distinct_rows(rows[a]..rows[a + 1], range.clone()) >= k
                && m.distinct_cols(rows[a]..rows[a + 1], range) >= k
        });
        if let Some(cols) = cols {
            found = Some(Division {
                rows: rows.to_vec(),
                cols,
            });
            return false;
        }
        true
    });
    Ok(found)
}

/// Largest k admitting a rank-k division. Every nonempty matrix has grid rank at least 1.
pub fn grid_rank(m: &ZeroOneMatrix) -> Result<usize> {
    let mut best = 1;
    let mut k = 2;
    while k * k <= m.rows().min(m.cols()) {
        if find_rank_division(m, k)?.is_some() {
            best = k;
        }
        k += 1;
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Row,
    Col,
}

/// First index `i` (0-based) with `counts[i] + counts[i + 1] <= limit`.
pub fn first_light_pair(counts: &[usize], limit: usize) -> Option<usize> {
    counts.windows(2).position(|w| w[0] + w[1] <= limit)
}

/// 0-based index of the first of two consecutive lines along `axis` holding at most
/// `4c - 1` ones together. Such a pair exists whenever the average number of ones per
/// line is at most `c`.
pub fn light_consecutive_lines(m: &ZeroOneMatrix, axis: Axis, c: usize) -> Option<usize> {
    let counts: Vec<usize> = match axis {
        Axis::Row => (0..m.rows())
            .map(|i| (0..m.cols()).filter(|&j| m.get(i, j)).count())
            .collect(),
        Axis::Col => (0..m.cols())
            .map(|j| (0..m.rows()).filter(|&i| m.get(i, j)).count())
            .collect(),
    };
    (4 * c)
        .checked_sub(1)
        .and_then(|limit| first_light_pair(&counts, limit))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Zero,
    One,
    Red,
}

impl Cell {
    fn merge(self, other: Cell) -> Cell {
        match (self, other) {
            (Cell::Zero, Cell::Zero) => Cell::Zero,
            (Cell::One, Cell::One) => Cell::One,
            _ => Cell::Red,
        }
    }

    fn nonzero(self) -> bool {
        self != Cell::Zero
    }
}

#[derive(Clone, Debug)]
struct TriMatrix {
    cells: Vec<Vec<Cell>>,
}

impl TriMatrix {
    fn new(m: &ZeroOneMatrix) -> Self {
        TriMatrix {
            cells: (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| if m.get(i, j) { Cell::One } else { Cell::Zero })
                        .collect()
                })
                .collect(),
        }
    }

    fn lines(&self, axis: Axis) -> usize {
        match axis {
            Axis::Row => self.cells.len(),
            Axis::Col => self.cells[0].len(),
        }
    }

    fn line(&self, axis: Axis, i: usize) -> Vec<Cell> {
        match axis {
            Axis::Row => self.cells[i].clone(),
            Axis::Col => self.cells.iter().map(|r| r[i]).collect(),
        }
    }

    fn load(&self, axis: Axis, i: usize) -> usize {
        self.line(axis, i).into_iter().filter(|c| c.nonzero()).count()
    }

    fn merge(&mut self, axis: Axis, i: usize) {
        match axis {
            Axis::Row => {
                let next = self.cells.remove(i + 1);
                for (a, b) in self.cells[i].iter_mut().zip(next) {
                    *a = a.merge(b);
                }
            }
            Axis::Col => {
                for row in &mut self.cells {
                    let next = row.remove(i + 1);
                    row[i] = row[i].merge(next);
                }
            }
        }
    }

    fn max_red(&self) -> usize {
        let by_row = self
            .cells
            .iter()
            .map(|r| r.iter().filter(|&&c| c == Cell::Red).count())
            .max()
            .unwrap_or(0);
        let by_col = (0..self.cells[0].len())
            .map(|j| self.cells.iter().filter(|r| r[j] == Cell::Red).count())
            .max()
            .unwrap_or(0);
        by_row.max(by_col)
    }
}

/// Merge of line `index` with line `index + 1` of the current matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContractionStep {
    pub axis: Axis,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixContraction {
    pub steps: Vec<ContractionStep>,
    /// Largest number of red entries in one line over the whole sequence.
    pub width: usize,
    /// Largest number of nonzero entries in a merged pair of lines.
    pub max_pair_load: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridOutcome {
    GridMinor(Division),
    Contraction(MatrixContraction),
    /// The matrix is denser than `c` allows yet has no k-grid minor: `c` is too small
    /// for this input. Carries the steps made so far.
    ThresholdTooLow(MatrixContraction),
}

/// Contracts the longer axis while its lines average at most `c` nonzero entries
/// (red counted as 1), always merging the first pair with at most `4c - 1` nonzero
/// entries. When the average exceeds `c`, an exact k-grid minor search decides.
pub fn gridminor_or_contraction(m: &ZeroOneMatrix, k: usize, c: usize) -> Result<GridOutcome> {
    if k == 0 || k > m.rows().min(m.cols()) {
        return input(format!("k = {k} outside 1..={}", m.rows().min(m.cols())));
    }
    let mut t = TriMatrix::new(m);
    let mut steps = Vec::new();
    let mut width = 0;
    let mut max_pair_load = 0;
    let mut minor_ruled_out = false;
    let limit = (4 * c).saturating_sub(1);
    while t.lines(Axis::Row) > 1 || t.lines(Axis::Col) > 1 {
        let axis = if t.lines(Axis::Row) >= t.lines(Axis::Col) {
            Axis::Row
        } else {
            Axis::Col
        };
        let n = t.lines(axis);
        let loads: Vec<usize> = (0..n).map(|i| t.load(axis, i)).collect();
        let total: usize = loads.iter().sum();
        if total > c * n && !minor_ruled_out {
            if let Some(d) = find_grid_minor(m, k)? {
                return Ok(GridOutcome::GridMinor(d));
            }
            minor_ruled_out = true;
        }
        let pick = first_light_pair(&loads, limit).map(|i| (axis, i, loads[i] + loads[i + 1]));
        let (axis, index, load) = match pick {
            Some(p) => p,
            None => {
                return Ok(GridOutcome::ThresholdTooLow(MatrixContraction {
                    steps,
                    width,
                    max_pair_load,
                }))
            }
        };
        t.merge(axis, index);
        steps.push(ContractionStep { axis, index });
        width = width.max(t.max_red());
        max_pair_load = max_pair_load.max(load);
    }
    Ok(GridOutcome::Contraction(MatrixContraction {
        steps,
        width,
        max_pair_load,
    }))
}

/// Replays `seq` on `m`: every step merges two existing consecutive lines holding at
/// most `4c` nonzero entries together, the run ends at a single cell, and the recorded
/// width matches. Returns the realized width.
pub fn verify_matrix_contraction(m: &ZeroOneMatrix, seq: &MatrixContraction, c: usize) -> Result<usize> {
    let mut t = TriMatrix::new(m);
    let mut width = 0;
    for (n, step) in seq.steps.iter().enumerate() {
        if step.index + 1 >= t.lines(step.axis) {
            return input(format!("step {n} merges a line that does not exist"));
        }
        let load = t.load(step.axis, step.index) + t.load(step.axis, step.index + 1);
        if load > 4 * c {
            return input(format!("step {n} merges lines holding {load} > 4c nonzero entries"));
        }
        t.merge(step.axis, step.index);
        width = width.max(t.max_red());
    }
    if t.lines(Axis::Row) != 1 || t.lines(Axis::Col) != 1 {
        return input("sequence does not end at a single cell");
    }
    if width != seq.width {
        return input(format!("recorded width {} differs from realized {width}", seq.width));
    }
    Ok(width)
}

/// Rows follow `d1`, columns follow `d2`; entry (x, y) is 1 iff `pi` maps x to y.
pub fn adj_of_permutation<T: Ord + Clone + fmt::Debug>(pi: &[(T, T)], d1: &[T], d2: &[T]) -> Result<ZeroOneMatrix> {
    let pos = |d: &[T]| -> Result<BTreeMap<T, usize>> {
        let map: BTreeMap<T, usize> = d.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        if map.len() != d.len() {
            return input("domain repeats a value");
        }
        Ok(map)
    };
    let (p1, p2) = (pos(d1)?, pos(d2)?);
    let mut m = ZeroOneMatrix::zeros(d1.len(), d2.len())?;
    let mut seen_x = BTreeSet::new();
    let mut seen_y = BTreeSet::new();
    for (x, y) in pi {
        if !seen_x.insert(x) || !seen_y.insert(y) {
            return input("permutation is not a bijection");
        }
        let i = *p1
            .get(x)
            .ok_or_else(|| Error::Input(format!("{x:?} not in the first domain")))?;
        let j = *p2
            .get(y)
            .ok_or_else(|| Error::Input(format!("{y:?} not in the second domain")))?;
        m.set(i, j, true);
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeColor {
    Black,
    Red,
}

/// Undirected graph with black and red edges on vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trigraph {
    pub n: usize,
    pub edges: BTreeMap<(usize, usize), EdgeColor>,
}

impl Trigraph {
    pub fn new(n: usize) -> Self {
        Trigraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    fn key(u: usize, v: usize) -> (usize, usize) {
        (u.min(v), u.max(v))
    }

    pub fn add_edge(&mut self, u: usize, v: usize, color: EdgeColor) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return input(format!("invalid edge ({u}, {v})"));
        }
        self.edges.insert(Self::key(u, v), color);
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let mut t = Trigraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                t.edges.insert((u, v), EdgeColor::Black);
            }
        }
        t
    }

    fn color(&self, u: usize, v: usize) -> Option<EdgeColor> {
        self.edges.get(&Self::key(u, v)).copied()
    }

    fn red_degree(&self, alive: &[bool]) -> usize {
        let mut deg = vec![0; self.n];
        for (&(u, v), &c) in &self.edges {
            if c == EdgeColor::Red && alive[u] && alive[v] {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        deg.into_iter().max().unwrap_or(0)
    }
}

/// Replays contractions `(u, v)`: `v` is merged into `u`. An edge from the merged vertex
/// to `z` stays black iff both `uz` and `vz` were black; it becomes red if either
/// existed otherwise. Returns the largest red degree seen.
pub fn verify_d_sequence(g: &Trigraph, steps: &[(usize, usize)]) -> Result<usize> {
    let mut t = g.clone();
    let mut alive = vec![true; t.n];
    let mut width = t.red_degree(&alive);
    for &(u, v) in steps {
        if u == v || u >= t.n || v >= t.n || !alive[u] || !alive[v] {
            return input(format!("malformed contraction ({u}, {v})"));
        }
        for z in (0..t.n).filter(|&z| alive[z] && z != u && z != v) {
            let merged = match (t.color(u, z), t.color(v, z)) {
                (None, None) => None,
                (Some(EdgeColor::Black), Some(EdgeColor::Black)) => Some(EdgeColor::Black),
                _ => Some(EdgeColor::Red),
            };
            t.edges.remove(&Trigraph::key(v, z));
            match merged {
                Some(c) => {
                    t.edges.insert(Trigraph::key(u, z), c);
                }
                None => {
                    t.edges.remove(&Trigraph::key(u, z));
                }
            }
        }
        t.edges.remove(&Trigraph::key(u, v));
        alive[v] = false;
        width = width.max(t.red_degree(&alive));
    }
    if alive.iter().filter(|&&a| a).count() != 1 {
        return input("contractions do not end at a single vertex");
    }
    Ok(width)
}
