use std::collections::HashMap;

use thiserror::Error;

use super::Formula;

pub const DEFAULT_MAX_OPAQUE_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautologyError {
    #[error("formula has {found} opaque atoms, limit is {limit}")]
    TooManyAtoms { found: usize, limit: usize },
}

/// Propositional tautology test in which every maximal `B`, `[]` or `>`
/// subformula is an opaque atom. Structurally equal modal subformulas share
/// an atom.
#[derive(Debug, Clone, Copy)]
pub struct TautologyChecker {
    pub max_atoms: usize,
}

impl Default for TautologyChecker {
    fn default() -> Self {
        TautologyChecker {
            max_atoms: DEFAULT_MAX_OPAQUE_ATOMS,
        }
    }
}

/// Truth-table column: bit `r` of the column is the value in row `r`.
type Column = Vec<u64>;

impl TautologyChecker {
    pub fn check(&self, f: &Formula) -> Result<bool, TautologyError> {
        let mut index: HashMap<&Formula, usize> = HashMap::new();
        collect(f, &mut index);
        let m = index.len();
        if m > self.max_atoms {
            return Err(TautologyError::TooManyAtoms {
                found: m,
                limit: self.max_atoms,
            });
        }
        let rows = 1usize << m;
        let words = rows.div_ceil(64);
        let columns: Vec<Column> = (0..m).map(|i| atom_column(i, rows, words)).collect();
        let result = eval(f, &index, &columns);
        let last_bits = rows - (words - 1) * 64;
        let last_mask = if last_bits == 64 {
            u64::MAX
        } else {
            (1u64 << last_bits) - 1
        };
        let full = result[..words - 1].iter().all(|w| *w == u64::MAX)
            && result[words - 1] & last_mask == last_mask;
        Ok(full)
    }
}

/// [`TautologyChecker::check`] with the default bound.
pub fn is_tautology(f: &Formula) -> Result<bool, TautologyError> {
    TautologyChecker::default().check(f)
}

fn collect<'a>(f: &'a Formula, index: &mut HashMap<&'a Formula, usize>) {
    match f {
        Formula::Not(a) => collect(a, index),
        Formula::Or(a, b) => {
            collect(a, index);
            collect(b, index);
        }
        _ => {
            let next = index.len();
            index.entry(f).or_insert(next);
        }
    }
}

fn atom_column(i: usize, rows: usize, words: usize) -> Column {
    let mut col = vec![0u64; words];
    if i < 6 {
        // Pattern repeats within a word.
        let mut pattern = 0u64;
        for r in 0..64 {
            if (r >> i) & 1 == 1 {
                pattern |= 1 << r;
            }
        }
        col.iter_mut().for_each(|w| *w = pattern);
    } else {
        for (w, word) in col.iter_mut().enumerate() {
            if ((w * 64) >> i) & 1 == 1 {
                *word = u64::MAX;
            }
        }
    }
    if rows < 64 {
        col[0] &= (1u64 << rows) - 1;
    }
    col
}

fn eval(f: &Formula, index: &HashMap<&Formula, usize>, cols: &[Column]) -> Column {
    match f {
        Formula::Not(a) => eval(a, index, cols).into_iter().map(|w| !w).collect(),
        Formula::Or(a, b) => {
            let mut l = eval(a, index, cols);
            let r = eval(b, index, cols);
            l.iter_mut().zip(r).for_each(|(x, y)| *x |= y);
            l
        }
        _ => cols[index[f]].clone(),
    }
}
