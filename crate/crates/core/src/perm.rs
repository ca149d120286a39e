//! Partial permutations and their rank combinatorics.
//!
//! All row and column indices are 1-based. A partial permutation is stored as
//! a map from rows to optional columns; dense 0/1 matrices are only accepted
//! at the parsing boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A grid position `(p, q)`: row `p`, column `q`, both 1-based.
///
/// The derived ordering is row-major, which is the canonical cell order used
/// for reports and generator enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub p: usize,
    pub q: usize,
}

impl Cell {
    pub const fn new(p: usize, q: usize) -> Self {
        Cell { p, q }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// An `rows x cols` 0/1 matrix with at most one 1 in every row and column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialPermutation {
    rows: usize,
    cols: usize,
    /// `assignment[i - 1] = Some(j)` iff the entry `(i, j)` is 1.
    assignment: Vec<Option<usize>>,
}

impl PartialPermutation {
    pub fn new(rows: usize, cols: usize, assignment: Vec<Option<usize>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain("a partial permutation needs at least one row and one column"));
        }
        if assignment.len() != rows {
            return Err(Error::domain(format!(
                "assignment has {} rows, expected {rows}",
                assignment.len()
            )));
        }
        let mut seen = vec![false; cols + 1];
        for (i, col) in assignment.iter().enumerate() {
            if let Some(j) = *col {
                if j == 0 || j > cols {
                    return Err(Error::domain(format!("row {} maps to column {j} outside [1,{cols}]", i + 1)));
                }
                if seen[j] {
                    return Err(Error::domain(format!("column {j} is assigned twice")));
                }
                seen[j] = true;
            }
        }
        Ok(PartialPermutation {
            rows,
            cols,
            assignment,
        })
    }

    /// Parses the dense text format: `rows` lines of `cols` whitespace-separated 0/1 entries.
    pub fn from_matrix_text(text: &str) -> Result<Self> {
        let mut assignment = Vec::new();
        let mut cols = None;
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entries: Vec<&str> = line.split_whitespace().collect();
            match cols {
                None => cols = Some(entries.len()),
                Some(m) if m != entries.len() => {
                    return Err(Error::parse(
                        line_no + 1,
                        format!("row has {} entries, expected {m}", entries.len()),
                    ))
                }
                _ => {}
            }
            let mut one = None;
            for (j, e) in entries.iter().enumerate() {
                match *e {
                    "0" => {}
                    "1" if one.is_none() => one = Some(j + 1),
                    "1" => return Err(Error::parse(line_no + 1, "more than one 1 in a row")),
                    other => return Err(Error::parse(line_no + 1, format!("unexpected entry {other:?}"))),
                }
            }
            assignment.push(one);
        }
        let cols = cols.ok_or_else(|| Error::parse(1, "empty matrix"))?;
        let rows = assignment.len();
        PartialPermutation::new(rows, cols, assignment).map_err(|e| match e {
            Error::Domain(m) => Error::parse(rows, m),
            other => other,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `w(i)`, or `None` if row `i` has no 1.
    pub fn image(&self, i: usize) -> Option<usize> {
        self.assignment.get(i.wrapping_sub(1)).copied().flatten()
    }

    /// `w^{-1}(j)`, or `None` if column `j` has no 1.
    pub fn preimage(&self, j: usize) -> Option<usize> {
        self.assignment
            .iter()
            .position(|&c| c == Some(j))
            .map(|i| i + 1)
    }

    pub fn entries(&self) -> impl Iterator<Item = Cell> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|j| Cell::new(i + 1, j)))
    }

    pub fn is_permutation(&self) -> bool {
        self.rows == self.cols && self.assignment.iter().all(Option::is_some)
    }

    pub fn to_permutation(&self) -> Result<Permutation> {
        if !self.is_permutation() {
            return Err(Error::domain("partial permutation is not a full permutation"));
        }
        Ok(Permutation(self.clone()))
    }

    fn check_cell(&self, c: Cell) -> Result<()> {
        if c.p == 0 || c.q == 0 || c.p > self.rows || c.q > self.cols {
            return Err(Error::domain(format!(
                "cell {c} outside the {}x{} grid",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// `r_{p,q}(w)`: the rank of the upper-left `p x q` submatrix.
    pub fn rank_at(&self, c: Cell) -> Result<usize> {
        self.check_cell(c)?;
        Ok(self.rank_unchecked(c.p, c.q))
    }

    /// Rank with the convention `r_{p,q} = 0` when `p = 0` or `q = 0`.
    pub(crate) fn rank_unchecked(&self, p: usize, q: usize) -> usize {
        self.assignment[..p.min(self.rows)]
            .iter()
            .filter(|c| matches!(c, Some(j) if *j <= q))
            .count()
    }

    pub fn rank_matrix(&self) -> Vec<Vec<usize>> {
        (1..=self.rows)
            .map(|p| (1..=self.cols).map(|q| self.rank_unchecked(p, q)).collect())
            .collect()
    }

    fn in_diagram(&self, i: usize, j: usize, inverse: &[Option<usize>]) -> bool {
        let east_free = self.assignment[i - 1].map_or(true, |wi| wi > j);
        let south_free = inverse[j - 1].map_or(true, |wj| wj > i);
        east_free && south_free
    }

    fn inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.cols];
        for e in self.entries() {
            inv[e.q - 1] = Some(e.p);
        }
        inv
    }

    /// The diagram `D(w)`: cells neither due east nor due south of a 1.
    pub fn diagram(&self) -> Diagram {
        let inv = self.inverse();
        let mut ranks = BTreeMap::new();
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                if self.in_diagram(i, j, &inv) {
                    ranks.insert(Cell::new(i, j), self.rank_unchecked(i, j));
                }
            }
        }
        Diagram { ranks }
    }

    /// The essential set `E(w)` with ranks, in row-major order.
    pub fn essential_set(&self) -> Vec<(Cell, usize)> {
        self.diagram().essential()
    }

    /// The permutation of `S_{l+m}` that extends this partial permutation.
    pub fn extend_to_permutation(&self) -> Permutation {
        let n = self.rows + self.cols;
        let mut used = vec![false; n + 1];
        let mut images = Vec::with_capacity(n);
        for i in 1..=n {
            let j = if i <= self.rows {
                match self.assignment[i - 1] {
                    Some(j) => j,
                    None => (self.cols + 1..=n).find(|&j| !used[j]).expect("free column beyond m"),
                }
            } else {
                (1..=n).find(|&j| !used[j]).expect("free column")
            };
            used[j] = true;
            images.push(j);
        }
        Permutation::from_images(images).expect("extension is a bijection")
    }
}

impl fmt::Display for PartialPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.assignment.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<&str> = (1..=self.cols)
                .map(|j| if *c == Some(j) { "1" } else { "0" })
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation `w` of `S_n`, written in one-line notation `w(1) w(2) ... w(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(PartialPermutation);

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::domain("empty permutation"));
        }
        let mut seen = vec![false; n + 1];
        for (pos, &v) in images.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::parse(pos + 1, format!("value {v} outside [1,{n}]")));
            }
            if seen[v] {
                return Err(Error::parse(pos + 1, format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        let assignment = images.into_iter().map(Some).collect();
        Ok(Permutation(PartialPermutation::new(n, n, assignment)?))
    }

    pub fn identity(n: usize) -> Self {
        Permutation::from_images((1..=n).collect()).expect("identity")
    }

    /// The longest element `n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        Permutation::from_images((1..=n).rev().collect()).expect("longest element")
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }

    pub fn as_partial(&self) -> &PartialPermutation {
        &self.0
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.0.assignment[i - 1].expect("full permutation")
    }

    pub fn images(&self) -> Vec<usize> {
        (1..=self.size()).map(|i| self.at(i)).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for i in 1..=self.size() {
            inv[self.at(i) - 1] = i;
        }
        Permutation::from_images(inv).expect("inverse of a bijection")
    }

    pub fn rank_at(&self, c: Cell) -> Result<usize> {
        self.0.rank_at(c)
    }

    pub fn diagram(&self) -> Diagram {
        self.0.diagram()
    }

    pub fn essential_set(&self) -> Vec<(Cell, usize)> {
        self.0.essential_set()
    }

    /// The number of inversions `#{i < j : w(i) > w(j)}`.
    pub fn coxeter_length(&self) -> usize {
        let w = self.images();
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Deletes row `p0` and column `q0` (requires `w(p0) = q0`) and relabels
    /// the survivors order-preservingly.
    pub fn delete_row_col(&self, p0: usize, q0: usize) -> Result<DeletedRowCol> {
        if p0 == 0 || p0 > self.size() || self.at(p0) != q0 {
            return Err(Error::domain(format!("w({p0}) != {q0}")));
        }
        if self.size() == 1 {
            return Err(Error::domain("cannot delete the only row of a 1x1 permutation"));
        }
        let row_labels: Vec<usize> = (1..=self.size()).filter(|&i| i != p0).collect();
        let col_labels: Vec<usize> = (1..=self.size()).filter(|&j| j != q0).collect();
        let images = row_labels
            .iter()
            .map(|&i| {
                let j = self.at(i);
                col_labels.iter().position(|&c| c == j).unwrap() + 1
            })
            .collect();
        Ok(DeletedRowCol {
            perm: Permutation::from_images(images)?,
            row_labels,
            col_labels,
        })
    }

    /// Extracts the `r x r` block `w_{(p,q)}` on rows `p-r..p-1` and columns
    /// `q-r..q-1`, where `r = r_{p,q}(w)`.
    pub fn submatrix_w(&self, c: Cell) -> Result<Block> {
        let r = self.rank_at(c)?;
        if r == 0 {
            return Err(Error::domain(format!("r_{{p,q}}(w) = 0 at {c}")));
        }
        if c.p <= r || c.q <= r {
            return Err(Error::domain(format!("block of size {r} at {c} leaves the grid")));
        }
        let (row0, col0) = (c.p - r, c.q - r);
        let assignment = (row0..c.p)
            .map(|i| {
                let j = self.at(i);
                (col0..c.q).contains(&j).then(|| j - col0 + 1)
            })
            .collect();
        let block = PartialPermutation::new(r, r, assignment)?;
        Ok(Block {
            rank: r,
            first_row: row0,
            first_col: col0,
            block,
        })
    }

    /// All permutations of `S_n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation::from_images(current.clone()).expect("valid"));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Digits without separators when `n <= 9`, space-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(ToString::to_string).collect();
        if self.size() <= 9 {
            write!(f, "{}", parts.concat())
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line notation: a digit string (`"35142"`) or integers separated by
    /// whitespace and/or commas (`"10 2 1 3 4 5 6 7 8 9"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(1, "empty permutation"));
        }
        let separated = s.contains(|c: char| c.is_whitespace() || c == ',');
        let images = if separated {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .enumerate()
                .map(|(pos, t)| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(pos + 1, format!("{t:?} is not a positive integer")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .enumerate()
                .map(|(pos, ch)| {
                    ch.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse(pos + 1, format!("{ch:?} is not a digit")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        let n = images.len();
        if let Some(missing) = (1..=n).find(|v| !images.contains(v)) {
            // report the first offending position, falling back to the missing value
            let pos = images
                .iter()
                .enumerate()
                .find(|(i, v)| **v == 0 || **v > n || images[..*i].contains(v))
                .map(|(i, _)| i + 1)
                .unwrap_or(n);
            return Err(Error::parse(pos, format!("not a permutation of 1..{n}: value {missing} missing")));
        }
        Permutation::from_images(images)
    }
}

/// A permutation with one row and column removed, remembering where the
/// surviving rows and columns came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletedRowCol {
    pub perm: Permutation,
    /// `row_labels[i - 1]` is the original row of new row `i`.
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<usize>,
}

impl DeletedRowCol {
    pub fn original_cell(&self, c: Cell) -> Cell {
        Cell::new(self.row_labels[c.p - 1], self.col_labels[c.q - 1])
    }
}

/// The square block `w_{(p,q)}` of a permutation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub rank: usize,
    pub first_row: usize,
    pub first_col: usize,
    pub block: PartialPermutation,
}

impl Block {
    pub fn is_permutation(&self) -> bool {
        self.block.is_permutation()
    }

    pub fn as_permutation(&self) -> Option<Permutation> {
        self.block.to_permutation().ok()
    }
}

/// The diagram of a partial permutation, each cell annotated with `r_{p,q}(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagram {
    ranks: BTreeMap<Cell, usize>,
}

impl Diagram {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.ranks.contains_key(&c)
    }

    pub fn rank(&self, c: Cell) -> Option<usize> {
        self.ranks.get(&c).copied()
    }

    /// Cells with their ranks in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        self.ranks.iter().map(|(c, r)| (*c, *r))
    }

    pub fn cells(&self) -> BTreeSet<Cell> {
        self.ranks.keys().copied().collect()
    }

    /// `D_{=0}(w)`
    pub fn rank_zero(&self) -> Vec<Cell> {
        self.iter().filter(|(_, r)| *r == 0).map(|(c, _)| c).collect()
    }

    /// `D_{>0}(w)`
    pub fn rank_positive(&self) -> Vec<(Cell, usize)> {
        self.iter().filter(|(_, r)| *r > 0).collect()
    }

    /// Cells with no diagram cell immediately south or east.
    pub fn essential(&self) -> Vec<(Cell, usize)> {
        self.iter()
            .filter(|(c, _)| {
                !self.contains(Cell::new(c.p + 1, c.q)) && !self.contains(Cell::new(c.p, c.q + 1))
            })
            .collect()
    }
}
