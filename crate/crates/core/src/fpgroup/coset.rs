//! Todd–Coxeter enumeration of the cosets of the trivial subgroup.
//!
//! HLT strategy: every live coset is scanned under every relator in turn,
//! defining new cosets to complete each scan, and coincidences are resolved
//! immediately with a union-find forwarding array that always keeps the
//! smaller coset number. The finished table is renumbered breadth-first from
//! coset 0, so the output depends only on the presentation.

use crate::permgroup::{PermGroup, Permutation};

use super::{FpGroupError, Presentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableStatus {
    InProgress,
    Complete,
}

/// A coset table. Column `2i` holds the action of generator `i` and column
/// `2i + 1` the action of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generator_count: usize,
    rows: Vec<u32>,
    status: TableStatus,
}

#[inline]
fn column(letter: i32) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

impl CosetTable {
    /// Builds a table from explicit rows (`rows[coset][column]`). The status
    /// is `Complete` exactly when every entry is defined.
    pub fn from_rows(generator_count: usize, rows: Vec<Vec<Option<usize>>>) -> Result<Self, FpGroupError> {
        let width = 2 * generator_count;
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * width);
        let mut complete = true;
        for row in &rows {
            if row.len() != width {
                return Err(FpGroupError::MalformedTable);
            }
            for entry in row {
                match entry {
                    Some(c) if *c >= n => return Err(FpGroupError::MalformedTable),
                    Some(c) => flat.push(*c as u32),
                    None => {
                        complete = false;
                        flat.push(UNDEF);
                    }
                }
            }
        }
        Ok(Self {
            generator_count,
            rows: flat,
            status: if complete {
                TableStatus::Complete
            } else {
                TableStatus::InProgress
            },
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn coset_count(&self) -> usize {
        self.rows.len() / (2 * self.generator_count)
    }

    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// Image of `coset` under a signed generator letter.
    pub fn entry(&self, coset: usize, letter: i32) -> Option<usize> {
        let v = self.rows[coset * 2 * self.generator_count + column(letter)];
        (v != UNDEF).then_some(v as usize)
    }

    /// Traces `word` from `coset`; `None` if the trace hits an undefined
    /// entry.
    pub fn trace(&self, coset: usize, word: &[i32]) -> Option<usize> {
        word.iter().try_fold(coset, |c, &l| self.entry(c, l))
    }
}

struct Enumerator {
    width: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    queue: Vec<u32>,
    max_cosets: usize,
}

impl Enumerator {
    fn new(generator_count: usize, max_cosets: usize) -> Self {
        let width = 2 * generator_count;
        Self {
            width,
            table: vec![UNDEF; width],
            forward: vec![0],
            queue: Vec::new(),
            max_cosets,
        }
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.width + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.width + col] = v;
    }

    fn allocated(&self) -> usize {
        self.forward.len()
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<(), FpGroupError> {
        if self.allocated() >= self.max_cosets {
            return Err(FpGroupError::CosetLimitExceeded {
                limit: self.max_cosets,
            });
        }
        let n = self.allocated() as u32;
        self.forward.push(n);
        self.table.extend(std::iter::repeat_n(UNDEF, self.width));
        self.set(c, col, n);
        self.set(n, col ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.forward[root as usize] != root {
            root = self.forward[root as usize];
        }
        let mut m = c;
        while self.forward[m as usize] != m {
            let next = self.forward[m as usize];
            self.forward[m as usize] = root;
            m = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (keep, kill) = if x < y { (x, y) } else { (y, x) };
            self.forward[kill as usize] = keep;
            self.queue.push(kill);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.width {
                let d = self.get(dead, col);
                if d == UNDEF {
                    continue;
                }
                self.set(d, col ^ 1, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_img = self.get(mu, col);
                if mu_img != UNDEF {
                    self.merge(nu, mu_img);
                } else {
                    let nu_img = self.get(nu, col ^ 1);
                    if nu_img != UNDEF {
                        self.merge(mu, nu_img);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: u32, word: &[usize]) -> Result<(), FpGroupError> {
        let mut f = alpha;
        let mut b = alpha;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j && self.get(f, word[i as usize]) != UNDEF {
                f = self.get(f, word[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, word[j as usize] ^ 1) != UNDEF {
                b = self.get(b, word[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let col = word[i as usize];
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>]) -> Result<(), FpGroupError> {
        let mut alpha = 0usize;
        while alpha < self.allocated() {
            let a = alpha as u32;
            for w in relators {
                if !self.is_live(a) {
                    break;
                }
                self.scan_and_fill(a, w)?;
            }
            if self.is_live(a) {
                for col in 0..self.width {
                    if self.get(a, col) == UNDEF {
                        self.define(a, col)?;
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    /// Live cosets renumbered breadth-first from coset 0.
    fn standardize(mut self, generator_count: usize) -> CosetTable {
        let n = self.allocated();
        let mut new_index = vec![UNDEF; n];
        let mut order = vec![0u32];
        new_index[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for col in 0..self.width {
                let d = self.get(c, col);
                let d = self.rep(d);
                if new_index[d as usize] == UNDEF {
                    new_index[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut rows = Vec::with_capacity(order.len() * self.width);
        for &c in &order {
            for col in 0..self.width {
                let d = self.get(c, col);
                let d = self.rep(d);
                rows.push(new_index[d as usize]);
            }
        }
        CosetTable {
            generator_count,
            rows,
            status: TableStatus::Complete,
        }
    }
}

/// Enumerates the cosets of the trivial subgroup, returning the group order
/// and the completed, canonically numbered table.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<(usize, CosetTable), FpGroupError> {
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|w: &Word| w.iter().map(|&l| column(l)).collect())
        .collect();
    let mut e = Enumerator::new(p.generator_count(), max_cosets.max(1));
    e.run(&relators)?;
    let table = e.standardize(p.generator_count());
    Ok((table.coset_count(), table))
}

/// Regular permutation representation read off a completed table.
pub fn table_to_permgroup(t: &CosetTable) -> Result<PermGroup, FpGroupError> {
    if !t.is_complete() {
        return Err(FpGroupError::IncompleteTable);
    }
    let n = t.coset_count();
    let mut gens = Vec::with_capacity(t.generator_count());
    for g in 0..t.generator_count() {
        let letter = g as i32 + 1;
        let images = (0..n).map(|c| t.entry(c, letter).expect("complete")).collect();
        gens.push(Permutation::from_images(images).map_err(|_| FpGroupError::MalformedTable)?);
    }
    PermGroup::generate(n, gens, n).map_err(|_| FpGroupError::MalformedTable)
}
