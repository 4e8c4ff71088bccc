use super::FiniteFunction;
use crate::error::{Error, Result};
use crate::system::{Block, SetSystem, SpernerSystem};

/// `x ↦ max(a, min(b, max_S min_{i ∈ S} x_i))` on the chain `0 < ... < k-1`.
///
/// No blocks gives the constant `a`; the empty block gives the constant `b`.
pub fn sperner_to_function(s: &SetSystem, k: usize, a: usize, b: usize) -> Result<FiniteFunction> {
    if k < 2 || a >= b || b >= k {
        return Err(Error::Function(format!("need a < b < k with k >= 2, got a={a} b={b} k={k}")));
    }
    let blocks: Vec<Vec<usize>> = s.blocks().iter().map(|blk| blk.elements().map(|e| e - 1).collect()).collect();
    FiniteFunction::from_fn(k, k, s.n(), |x| {
        let join = blocks.iter().map(|blk| blk.iter().map(|&i| x[i]).min().unwrap_or(k - 1)).max().unwrap_or(0);
        a.max(b.min(join))
    })
}

/// The Boolean term operation of a set system.
pub fn term_function(s: &SetSystem) -> Result<FiniteFunction> {
    sperner_to_function(s, 2, 0, 1)
}

/// Minimal true points of a monotone Boolean function.
pub fn function_to_sperner(f: &FiniteFunction) -> Result<SpernerSystem> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    if !super::is_monotone(f)? {
        return Err(Error::NotMonotone);
    }
    let n = f.arity();
    let point_block = |idx: usize| -> Block { (1..=n).filter(|&i| idx >> (n - i) & 1 == 1).collect() };
    let table = f.table();
    let blocks: Vec<Block> = (0..table.len())
        .filter(|&idx| table[idx] == 1)
        .filter(|&idx| (0..n).all(|bit| idx >> bit & 1 == 0 || table[idx & !(1 << bit)] == 0))
        .map(point_block)
        .collect();
    SpernerSystem::new(SetSystem::new(n, blocks)?)
}
