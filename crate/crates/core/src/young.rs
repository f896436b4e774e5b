//! Young diagrams given by column heights, and the row-then-column projector.
//!
//! Slots are assigned to boxes column by column, top to bottom, so each
//! column occupies a contiguous block of slots. The projector symmetrizes
//! every row and then alternates every column, both as averages. It is
//! quasi-idempotent: `P∘P = c·P` with `c = Π hooks / (Π row! · Π col!)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::tensor::{permutations, Tensor};
use crate::{qi, Error, Result, Q};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YoungDiagram {
    columns: Vec<usize>,
}

impl YoungDiagram {
    /// Column heights must be positive and weakly decreasing.
    pub fn new(columns: Vec<usize>) -> Result<Self> {
        if columns.contains(&0) {
            return Err(Error::Domain(format!("zero-height column in {columns:?}")));
        }
        if columns.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("columns {columns:?} not weakly decreasing")));
        }
        Ok(YoungDiagram { columns })
    }

    /// Drops zero-height columns and sorts the rest.
    pub fn from_heights(heights: &[usize]) -> Self {
        let mut columns: Vec<usize> = heights.iter().copied().filter(|&h| h > 0).collect();
        columns.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram { columns }
    }

    pub fn empty() -> Self {
        YoungDiagram { columns: Vec::new() }
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn boxes(&self) -> usize {
        self.columns.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.columns.first().copied().unwrap_or(0)
    }

    /// Row lengths, top row first.
    pub fn rows(&self) -> Vec<usize> {
        (0..self.height())
            .map(|r| self.columns.iter().filter(|&&h| h > r).count())
            .collect()
    }

    /// Position (within the listed slots) of the box in column `c`, row `r`.
    pub fn box_position(&self, c: usize, r: usize) -> usize {
        self.columns[..c].iter().sum::<usize>() + r
    }

    /// Groups of slot positions forming rows and columns.
    pub fn row_groups(&self, slots: &[usize]) -> Vec<Vec<usize>> {
        let rows = self.rows();
        (0..rows.len())
            .map(|r| (0..rows[r]).map(|c| slots[self.box_position(c, r)]).collect())
            .collect()
    }

    pub fn column_groups(&self, slots: &[usize]) -> Vec<Vec<usize>> {
        (0..self.columns.len())
            .map(|c| (0..self.columns[c]).map(|r| slots[self.box_position(c, r)]).collect())
            .collect()
    }

    pub fn hook_lengths(&self) -> Vec<usize> {
        let rows = self.rows();
        let mut out = Vec::new();
        for (c, &h) in self.columns.iter().enumerate() {
            for r in 0..h {
                // arm to the right in row r, leg below in column c
                out.push((rows[r] - c - 1) + (h - r - 1) + 1);
            }
        }
        out
    }

    /// Number of standard tableaux.
    pub fn standard_tableaux(&self) -> u128 {
        let b = self.boxes() as u128;
        let fact: u128 = (1..=b).product();
        let hooks: u128 = self.hook_lengths().iter().map(|&h| h as u128).product();
        fact / hooks
    }

    /// `P∘P = c·P`.
    pub fn quasi_idempotence(&self) -> Q {
        let hooks: i128 = self.hook_lengths().iter().map(|&h| h as i128).product();
        let f = |m: usize| (1..=m as i128).product::<i128>();
        let rows: i128 = self.rows().iter().map(|&l| f(l)).product();
        let cols: i128 = self.columns.iter().map(|&h| f(h)).product();
        Q::new(hooks, rows * cols)
    }
}

/// Hook-content dimension of the GL(n)-module; zero when a column exceeds `n`.
pub fn dimension(d: &YoungDiagram, n: usize) -> u128 {
    if d.height() > n {
        return 0;
    }
    let rows = d.rows();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (c, &h) in d.columns().iter().enumerate() {
        for r in 0..h {
            // content of box (row r, column c) is c − r
            num *= (n + c - r) as u128;
            den *= ((rows[r] - c - 1) + (h - r - 1) + 1) as u128;
        }
    }
    num / den
}

fn check_slots(d: &YoungDiagram, t: &Tensor, slots: &[usize]) -> Result<()> {
    if slots.len() != d.boxes() {
        return Err(Error::Arity { expected: d.boxes(), got: slots.len() });
    }
    if let Some(&first) = slots.first() {
        let kind = *t.slots().get(first).ok_or(Error::Domain(format!("slot {first} out of range")))?;
        for &s in slots {
            let found = *t.slots().get(s).ok_or(Error::Domain(format!("slot {s} out of range")))?;
            if found != kind {
                return Err(Error::KindMismatch { expected: kind, found });
            }
        }
    }
    Ok(())
}

/// Row symmetrization followed by column alternation on the listed slots.
pub fn apply_projector(d: &YoungDiagram, t: &Tensor, slots: &[usize]) -> Result<Tensor> {
    check_slots(d, t, slots)?;
    let mut out = t.clone();
    for g in d.row_groups(slots) {
        out = out.symmetrize(&g)?;
    }
    for g in d.column_groups(slots) {
        out = out.alternate(&g)?;
    }
    Ok(out)
}

/// The idempotent rescaling `P / c`.
pub fn apply_normalized_projector(d: &YoungDiagram, t: &Tensor, slots: &[usize]) -> Result<Tensor> {
    let c = d.quasi_idempotence();
    Ok(apply_projector(d, t, slots)?.scale(qi(1) / c))
}

/// Sparse tensor: multi-index → nonzero coefficient.
pub type Sparse = BTreeMap<Vec<u8>, Q>;

pub(crate) fn sparse_group_average(t: &Sparse, group: &[usize], signed: bool) -> Sparse {
    let m = group.len();
    if m <= 1 {
        return t.clone();
    }
    let perms = permutations(m);
    let norm = Q::new(1, perms.len() as i128);
    let mut out = Sparse::new();
    for (key, v) in t {
        for (p, sign) in &perms {
            let mut k2 = key.clone();
            for j in 0..m {
                k2[group[j]] = key[group[p[j]]];
            }
            let c = if signed && *sign < 0 { -*v * norm } else { *v * norm };
            let e = out.entry(k2).or_insert_with(Q::zero);
            *e += c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Sparse version of [`apply_projector`]; slot kinds are the caller's concern.
pub fn apply_projector_sparse(d: &YoungDiagram, t: &Sparse, slots: &[usize]) -> Result<Sparse> {
    if slots.len() != d.boxes() {
        return Err(Error::Arity { expected: d.boxes(), got: slots.len() });
    }
    let mut out = t.clone();
    for g in d.row_groups(slots) {
        out = sparse_group_average(&out, &g, false);
    }
    for g in d.column_groups(slots) {
        out = sparse_group_average(&out, &g, true);
        if out.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// All diagrams with `b` boxes (as column heights).
pub fn diagrams_with_boxes(b: usize) -> Vec<YoungDiagram> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rem == 0 {
            out.push(YoungDiagram { columns: cur.clone() });
            return;
        }
        for h in (1..=rem.min(max)).rev() {
            cur.push(h);
            rec(rem - h, h, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(b, b, &mut Vec::new(), &mut out);
    out
}
