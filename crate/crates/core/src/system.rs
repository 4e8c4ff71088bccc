use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 64;

/// Size of a ground set `[1..n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(u8);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSetSize(n));
        }
        Ok(GroundSet(n as u8))
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// The block holding every element.
    pub fn full(self) -> Block {
        if self.0 as usize == MAX_GROUND {
            Block(u64::MAX)
        } else {
            Block((1u64 << self.0) - 1)
        }
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        1..=self.size()
    }
}

/// A subset of `[1..64]`; bit `i` stands for element `i + 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(u64);

impl Block {
    pub const EMPTY: Block = Block(0);

    pub const fn from_bits(bits: u64) -> Self {
        Block(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Panics if `e` is not in `1..=64`.
    pub fn singleton(e: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&e), "element {e} out of range");
        Block(1u64 << (e - 1))
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        Block(self.0 | Block::singleton(e).0)
    }

    pub fn without(self, e: usize) -> Self {
        Block(self.0 & !Block::singleton(e).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Block) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Block) -> Block {
        Block(self.0 | other.0)
    }

    pub fn intersection(self, other: Block) -> Block {
        Block(self.0 & other.0)
    }

    pub fn difference(self, other: Block) -> Block {
        Block(self.0 & !other.0)
    }

    pub fn max_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Elements in increasing order.
    pub fn elements(self) -> BlockIter {
        BlockIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }
}

impl FromIterator<usize> for Block {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(Block::EMPTY, Block::with)
    }
}

pub struct BlockIter(u64);

impl Iterator for BlockIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }
}

/// A set of blocks over `[1..n]`, kept sorted by bit value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetSystem {
    ground: GroundSet,
    blocks: Vec<Block>,
}

impl SetSystem {
    /// Rejects repeated blocks and out-of-range elements.
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Block>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut blocks: Vec<Block> = blocks.into_iter().collect();
        blocks.sort_unstable();
        for w in blocks.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateBlock(w[0].to_vec()));
            }
        }
        Self::check_range(ground, &blocks)?;
        Ok(SetSystem { ground, blocks })
    }

    /// Like [`SetSystem::new`] but collapses repeated blocks.
    pub fn from_blocks(n: usize, blocks: impl IntoIterator<Item = Block>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut blocks: Vec<Block> = blocks.into_iter().collect();
        blocks.sort_unstable();
        blocks.dedup();
        Self::check_range(ground, &blocks)?;
        Ok(SetSystem { ground, blocks })
    }

    /// Builds from 1-based element lists.
    pub fn from_lists<I, B>(n: usize, lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = usize>,
    {
        let mut blocks = Vec::new();
        for list in lists {
            let mut b = Block::EMPTY;
            for e in list {
                if e == 0 || e > n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
                b = b.with(e);
            }
            blocks.push(b);
        }
        Self::new(n, blocks)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    fn check_range(ground: GroundSet, blocks: &[Block]) -> Result<()> {
        let full = ground.full();
        for b in blocks {
            if !b.is_subset(full) {
                let element = b.difference(full).max_element().unwrap_or(0);
                return Err(Error::ElementOutOfRange { element, n: ground.size() });
            }
        }
        Ok(())
    }

    pub(crate) fn from_sorted_unchecked(ground: GroundSet, blocks: Vec<Block>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0] < w[1]));
        SetSystem { ground, blocks }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains(&self, b: Block) -> bool {
        self.blocks.binary_search(&b).is_ok()
    }

    pub fn is_antichain(&self) -> bool {
        self.comparable_pair().is_none()
    }

    fn comparable_pair(&self) -> Option<(Block, Block)> {
        for (k, &a) in self.blocks.iter().enumerate() {
            for &b in &self.blocks[k + 1..] {
                if a.is_subset(b) {
                    return Some((a, b));
                }
                if b.is_subset(a) {
                    return Some((b, a));
                }
            }
        }
        None
    }

    /// Keeps the inclusion-minimal blocks.
    pub fn minimalize(&self) -> SpernerSystem {
        let mut by_size = self.blocks.clone();
        by_size.sort_by_key(|b| b.len());
        let mut kept: Vec<Block> = Vec::with_capacity(by_size.len());
        for b in by_size {
            if !kept.iter().any(|k| k.is_subset(b)) {
                kept.push(b);
            }
        }
        kept.sort_unstable();
        SpernerSystem(SetSystem::from_sorted_unchecked(self.ground, kept))
    }

    /// Image of the system under `sigma`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<SetSystem> {
        if sigma.len() != self.n() {
            return Err(Error::SizeMismatch { left: self.n(), right: sigma.len() });
        }
        let mut blocks: Vec<Block> = self.blocks.iter().map(|&b| sigma.apply_block(b)).collect();
        blocks.sort_unstable();
        Ok(SetSystem::from_sorted_unchecked(self.ground, blocks))
    }

    /// Union of all blocks.
    pub fn essential_elements(&self) -> Block {
        self.blocks.iter().fold(Block::EMPTY, |acc, &b| acc.union(b))
    }

    /// Complement of every block in `[1..n]`.
    pub fn complement(&self) -> SetSystem {
        let full = self.ground.full();
        let mut blocks: Vec<Block> = self.blocks.iter().map(|&b| full.difference(b)).collect();
        blocks.sort_unstable();
        SetSystem::from_sorted_unchecked(self.ground, blocks)
    }

    pub fn union(&self, other: &SetSystem) -> Result<SetSystem> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch { left: self.n(), right: other.n() });
        }
        SetSystem::from_blocks(self.n(), self.blocks.iter().chain(&other.blocks).copied())
    }

    /// Blocks containing element `e`.
    pub fn star(&self, e: usize) -> impl Iterator<Item = Block> + '_ {
        self.blocks.iter().copied().filter(move |b| b.contains(e))
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.to_vec()).collect()
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (t, e) in b.elements().enumerate() {
                if t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}} over [{}]", self.n())
    }
}

/// A set system whose blocks are pairwise incomparable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpernerSystem(SetSystem);

impl SpernerSystem {
    pub fn new(s: SetSystem) -> Result<Self> {
        if let Some((inner, outer)) = s.comparable_pair() {
            return Err(Error::NotAntichain { inner: inner.to_vec(), outer: outer.to_vec() });
        }
        Ok(SpernerSystem(s))
    }

    pub fn from_lists<I, B>(n: usize, lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = usize>,
    {
        Self::new(SetSystem::from_lists(n, lists)?)
    }

    pub fn as_set_system(&self) -> &SetSystem {
        &self.0
    }

    pub fn into_inner(self) -> SetSystem {
        self.0
    }

    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<SpernerSystem> {
        Ok(SpernerSystem(self.0.apply_permutation(sigma)?))
    }
}

impl Deref for SpernerSystem {
    type Target = SetSystem;

    fn deref(&self) -> &SetSystem {
        &self.0
    }
}

impl fmt::Display for SpernerSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A bijection of `[1..n]`, stored as 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > MAX_GROUND {
            return Err(Error::GroundSetSize(n));
        }
        let mut seen = 0u64;
        for &x in &images {
            if x == 0 || x > n {
                return Err(Error::InvalidPermutation(format!("image {x} outside [1..{n}]")));
            }
            if seen >> (x - 1) & 1 == 1 {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            seen |= 1 << (x - 1);
        }
        Ok(Permutation(images.into_iter().map(|x| x as u8).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!("({a} {b}) outside [1..{n}]")));
        }
        let mut p = Self::identity(n);
        p.0.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, e: usize) -> usize {
        self.0[e - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &x)| x as usize == k + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.0.len()];
        for (k, &x) in self.0.iter().enumerate() {
            inv[x as usize - 1] = (k + 1) as u8;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize - 1]).collect())
    }

    pub fn apply_block(&self, b: Block) -> Block {
        let mut out = 0u64;
        for e in b.elements() {
            out |= 1u64 << (self.0[e - 1] - 1);
        }
        Block(out)
    }

    /// Elements moved by the permutation.
    pub fn support(&self) -> Block {
        self.0.iter().enumerate().filter(|&(k, &x)| x as usize != k + 1).map(|(k, _)| k + 1).collect()
    }
}

/// A finite multiset; absent keys have multiplicity zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset<K: Ord>(BTreeMap<K, usize>);

impl<K: Ord> Default for Multiset<K> {
    fn default() -> Self {
        Multiset(BTreeMap::new())
    }
}

impl<K: Ord> Multiset<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, k: K) {
        self.insert_n(k, 1);
    }

    pub fn insert_n(&mut self, k: K, count: usize) {
        if count > 0 {
            *self.0.entry(k).or_insert(0) += count;
        }
    }

    pub fn multiplicity(&self, k: &K) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// Total count with repetition.
    pub fn cardinality(&self) -> usize {
        self.0.values().sum()
    }

    /// Number of distinct keys.
    pub fn distinct(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, usize)> {
        self.0.iter().map(|(k, &c)| (k, c))
    }
}

impl<K: Ord> FromIterator<K> for Multiset<K> {
    fn from_iter<T: IntoIterator<Item = K>>(iter: T) -> Self {
        let mut m = Multiset::new();
        for k in iter {
            m.insert(k);
        }
        m
    }
}
