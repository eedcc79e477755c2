use crate::correspondence::ChargeVector;

/// Row/column blocks of an `m×m` matrix for a charge `k`.
///
/// Block `I` (1-based) has size `k_{N−I}` and occupies the global rows
/// `m_{N+1−I}+1 ..= m_{N−I}`, so the blocks run through `kₙ, …, k₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockLayout {
    pub fn new(k: &ChargeVector) -> Self {
        let sizes: Vec<usize> = k.as_slice().iter().rev().copied().collect();
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for s in &sizes {
            offsets.push(acc);
            acc += s;
        }
        BlockLayout { sizes, offsets }
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn m(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Size of block `I`, 1-based.
    pub fn size(&self, block: usize) -> usize {
        self.sizes[block - 1]
    }

    /// 0-based global index of the first row of block `I`.
    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block - 1]
    }

    /// `(block, local)` for a 0-based global row; both results 1-based.
    pub fn locate(&self, row: usize) -> (usize, usize) {
        for b in (1..=self.n()).rev() {
            if self.size(b) > 0 && row >= self.offset(b) {
                return (b, row - self.offset(b) + 1);
            }
        }
        panic!("row {row} outside the layout")
    }

    /// The steps `(i, j)` for `i = 2..=n`, `j = 1..i`, in application order.
    pub fn schedule(&self) -> Vec<(usize, usize)> {
        (2..=self.n()).flat_map(|i| (1..i).map(move |j| (i, j))).collect()
    }
}
