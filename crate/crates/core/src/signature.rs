//! Block signatures sgn_s(w) and their row-wise products sgn_T(S).

use crate::combinatorics::{Letter, Table};

/// For each letter of s, the ordered positions where it occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    blocks: Vec<Vec<usize>>,
}

impl BlockStructure {
    pub fn new(s: &[Letter]) -> BlockStructure {
        let n = s.iter().copied().max().unwrap_or(0) as usize;
        let mut blocks = vec![Vec::new(); n];
        for (p, &x) in s.iter().enumerate() {
            blocks[x as usize - 1].push(p);
        }
        BlockStructure { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn signature(&self, w: &[Letter]) -> i32 {
        let mut sign = 1;
        let mut seen = Vec::new();
        for block in &self.blocks {
            let k = block.len();
            seen.clear();
            seen.resize(k + 1, false);
            let mut inv = 0;
            for (a, &p) in block.iter().enumerate() {
                let v = w[p] as usize;
                if v > k || seen[v] {
                    return 0;
                }
                seen[v] = true;
                inv += block[..a].iter().filter(|&&q| w[q] as usize > v).count();
            }
            if inv % 2 == 1 {
                sign = -sign;
            }
        }
        sign
    }
}

/// sgn_s(w): product over the blocks of s of the sign of w restricted to the
/// block, or 0 when some restriction is not a permutation of 1..k.
pub fn block_signature(s: &[Letter], w: &[Letter]) -> i32 {
    assert_eq!(s.len(), w.len(), "block_signature needs words of equal length");
    BlockStructure::new(s).signature(w)
}

/// sgn_T(S) = product of the row block signatures.
pub fn table_signature(t: &Table, s: &Table) -> i32 {
    assert!(t.d() == s.d() && t.m() == s.m(), "table_signature needs equal shapes");
    let mut sign = 1;
    for r in 0..t.d() {
        sign *= block_signature(t.row(r), s.row(r));
        if sign == 0 {
            return 0;
        }
    }
    sign
}
