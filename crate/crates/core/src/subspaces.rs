//! Indexed enumeration of the `sub`-dimensional subspaces of `F_q^dim`.
//!
//! Every subspace has a unique reduced row echelon basis. The listing walks
//! pivot column sets in lexicographic order and, inside one pivot set, the
//! free entries as an odometer whose first free entry (row-major) is the
//! most significant digit. Because the listing is indexed, a range of
//! indices can be handed to a worker without materializing anything.

use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::indices::enumerate_index_tuples;
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
struct Block {
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    start: u64,
}

#[derive(Clone, Debug)]
pub struct SubspaceEnumerator {
    field: Field,
    dim: usize,
    sub: usize,
    blocks: Vec<Block>,
    total: u64,
}

impl SubspaceEnumerator {
    /// Fails with `BudgetExceeded` when the listing would be longer than
    /// `budget`.
    pub fn new(field: &Field, dim: usize, sub: usize, budget: u64) -> Result<SubspaceEnumerator> {
        if sub > dim {
            return Err(Error::InvalidArgument(format!(
                "no {sub}-dimensional subspaces of a {dim}-dimensional space"
            )));
        }
        let q = field.q() as u128;
        let mut blocks = Vec::new();
        let mut total: u128 = 0;
        for piv in enumerate_index_tuples(sub, dim)? {
            let pivots: Vec<usize> = piv.entries().iter().map(|p| p - 1).collect();
            let mut free = Vec::new();
            for (row, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..dim {
                    if !pivots.contains(&c) {
                        free.push((row, c));
                    }
                }
            }
            let count = q.checked_pow(free.len() as u32).unwrap_or(u128::MAX);
            let next = total.saturating_add(count);
            if next > budget as u128 {
                return Err(Error::budget(
                    "subspace enumeration",
                    crate::indices::gaussian_binomial(dim, sub, q as u64)?,
                    budget,
                ));
            }
            blocks.push(Block {
                pivots,
                free,
                start: total as u64,
            });
            total = next;
        }
        Ok(SubspaceEnumerator {
            field: field.clone(),
            dim,
            sub,
            blocks,
            total: total as u64,
        })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sub(&self) -> usize {
        self.sub
    }

    /// Writes the rref basis of subspace `index` into `buf` (row-major,
    /// `sub * dim` entries) and returns its pivot columns.
    pub fn fill(&self, index: u64, buf: &mut [Felt]) -> &[usize] {
        debug_assert!(index < self.total);
        debug_assert_eq!(buf.len(), self.sub * self.dim);
        let b = match self.blocks.binary_search_by(|b| b.start.cmp(&index)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let block = &self.blocks[b];
        buf.fill(Felt::ZERO);
        for (row, &pc) in block.pivots.iter().enumerate() {
            buf[row * self.dim + pc] = Felt::ONE;
        }
        let q = self.field.q() as u64;
        let mut rest = index - block.start;
        for &(row, col) in block.free.iter().rev() {
            buf[row * self.dim + col] = Felt::raw((rest % q) as u32);
            rest /= q;
        }
        &block.pivots
    }

    pub fn get(&self, index: u64) -> Matrix {
        let mut buf = vec![Felt::ZERO; self.sub * self.dim];
        self.fill(index, &mut buf);
        Matrix::from_felts(&self.field, self.sub, self.dim, buf)
    }

    pub fn iter(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.total).map(|i| self.get(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indices::gaussian_binomial;
    use std::collections::HashSet;

    #[test]
    fn counts_match_gaussian_binomials() {
        for q in [2u32, 3, 4] {
            let f = Field::of_order(q).unwrap();
            for dim in 0..=4 {
                for sub in 0..=dim {
                    let e = SubspaceEnumerator::new(&f, dim, sub, u64::MAX).unwrap();
                    let gb = gaussian_binomial(dim, sub, q as u64).unwrap();
                    assert_eq!(gb, e.len().into());
                }
            }
        }
    }

    #[test]
    fn listing_is_rref_and_distinct() {
        let f = Field::of_order(3).unwrap();
        let e = SubspaceEnumerator::new(&f, 4, 2, u64::MAX).unwrap();
        let mut seen = HashSet::new();
        for m in e.iter() {
            let ech = m.rref();
            assert_eq!(ech.rank, 2);
            assert_eq!(ech.matrix, m);
            assert!(seen.insert(m.values()));
        }
        assert_eq!(seen.len(), 130);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::of_order(2).unwrap();
        assert!(matches!(
            SubspaceEnumerator::new(&f, 4, 2, 34),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(SubspaceEnumerator::new(&f, 4, 2, 35).is_ok());
    }
}
