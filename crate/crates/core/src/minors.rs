//! Identification minors, cards and decks.

use std::fmt;

use crate::error::{Error, Result};
use crate::iso::{canonical_form, CanonicalForm};
use crate::system::{Block, GroundSet, Multiset, Permutation, SetSystem, SpernerSystem};

/// A two-element subset `{i, j}` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentPair {
    i: usize,
    j: usize,
}

impl IdentPair {
    /// Accepts the two elements in either order.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return Err(Error::PairOutOfRange { i: a, j: b, n: a.max(b) });
        }
        Ok(IdentPair { i: a.min(b), j: a.max(b) })
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }

    /// All pairs over `[1..n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = IdentPair> {
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| IdentPair { i, j }))
    }

    fn check(self, n: usize) -> Result<()> {
        if self.j > n {
            return Err(Error::PairOutOfRange { i: self.i, j: self.j, n });
        }
        Ok(())
    }

    /// Image of `e` under the quotient map onto `[1..n-1]`.
    pub fn delta(self, e: usize) -> usize {
        match e.cmp(&self.j) {
            std::cmp::Ordering::Less => e,
            std::cmp::Ordering::Equal => self.i,
            std::cmp::Ordering::Greater => e - 1,
        }
    }

    /// Image of a block under the quotient map.
    pub fn delta_block(self, b: Block) -> Block {
        let bits = b.bits();
        let j0 = self.j - 1;
        let low = bits & ((1u64 << j0) - 1);
        let high = if j0 + 1 >= 64 { 0 } else { (bits >> (j0 + 1)) << j0 };
        let mut out = low | high;
        if bits >> j0 & 1 == 1 {
            out |= 1u64 << (self.i - 1);
        }
        Block::from_bits(out)
    }

    /// Transports a permutation fixing `{i, j}` setwise to `[1..n-1]`.
    pub fn delta_permutation(self, sigma: &Permutation) -> Result<Permutation> {
        let n = sigma.len();
        self.check(n)?;
        let moved = [sigma.image(self.i), sigma.image(self.j)];
        if !(moved.contains(&self.i) && moved.contains(&self.j)) {
            return Err(Error::InvalidPermutation(format!("does not fix {{{}, {}}} setwise", self.i, self.j)));
        }
        let images = (1..=n).filter(|&e| e != self.j).map(|e| self.delta(sigma.image(e))).collect();
        Permutation::new(images)
    }
}

impl fmt::Display for IdentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.i, self.j)
    }
}

/// Image of every block under the quotient map, as a set.
pub fn quotient(s: &SetSystem, pair: IdentPair) -> Result<SetSystem> {
    let n = s.n();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    pair.check(n)?;
    let mut blocks: Vec<Block> = s.blocks().iter().map(|&b| pair.delta_block(b)).collect();
    blocks.sort_unstable();
    blocks.dedup();
    Ok(SetSystem::from_sorted_unchecked(GroundSet::new(n - 1)?, blocks))
}

/// The minimal blocks of the quotient.
pub fn card(s: &SetSystem, pair: IdentPair) -> Result<SpernerSystem> {
    Ok(quotient(s, pair)?.minimalize())
}

/// Isomorphism class of a card.
pub fn card_form(s: &SetSystem, pair: IdentPair) -> Result<CanonicalForm> {
    canonical_form(card(s, pair)?.as_set_system())
}

/// Multiset of isomorphism classes of cards.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Deck(Multiset<CanonicalForm>);

impl Deck {
    pub fn cards(&self) -> &Multiset<CanonicalForm> {
        &self.0
    }

    pub fn cardinality(&self) -> usize {
        self.0.cardinality()
    }

    pub fn multiplicity(&self, card: &CanonicalForm) -> usize {
        self.0.multiplicity(card)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalForm, usize)> {
        self.0.iter()
    }
}

impl FromIterator<CanonicalForm> for Deck {
    fn from_iter<T: IntoIterator<Item = CanonicalForm>>(iter: T) -> Self {
        Deck(iter.into_iter().collect())
    }
}

fn collect_deck<F>(items: Vec<usize>, f: F) -> Result<Deck>
where
    F: Fn(usize) -> Result<CanonicalForm> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    let forms: Result<Vec<CanonicalForm>> = {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let forms: Result<Vec<CanonicalForm>> = items.into_iter().map(f).collect();
    Ok(forms?.into_iter().collect())
}

/// Deck of cards over all `n(n-1)/2` pairs.
pub fn sperner_deck(s: &SetSystem) -> Result<Deck> {
    let n = s.n();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let pairs: Vec<IdentPair> = IdentPair::all(n).collect();
    collect_deck((0..pairs.len()).collect(), |k| card_form(s, pairs[k]))
}

pub fn hypomorphic(a: &SetSystem, b: &SetSystem) -> Result<bool> {
    if a.n() != b.n() {
        return Ok(false);
    }
    Ok(sperner_deck(a)? == sperner_deck(b)?)
}

/// Cards agree pair by pair, up to isomorphism.
pub fn strongly_hypomorphic(a: &SetSystem, b: &SetSystem) -> Result<bool> {
    if a.n() != b.n() {
        return Ok(false);
    }
    if a.n() < 2 {
        return Err(Error::TooSmall { n: a.n(), min: 2 });
    }
    for pair in IdentPair::all(a.n()) {
        if card_form(a, pair)? != card_form(b, pair)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Removes `v` and every block through it, closing the gap in the labels.
pub fn vertex_deleted(s: &SetSystem, v: usize) -> Result<SetSystem> {
    let n = s.n();
    if v == 0 || v > n {
        return Err(Error::ElementOutOfRange { element: v, n });
    }
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let v0 = v - 1;
    let low_mask = (1u64 << v0) - 1;
    let blocks: Vec<Block> = s
        .blocks()
        .iter()
        .filter(|b| !b.contains(v))
        .map(|b| {
            let bits = b.bits();
            let high = if v0 + 1 >= 64 { 0 } else { (bits >> (v0 + 1)) << v0 };
            Block::from_bits(bits & low_mask | high)
        })
        .collect();
    SetSystem::new(n - 1, blocks)
}

/// Deck of vertex-deleted subsystems.
pub fn hypergraph_deck(s: &SetSystem) -> Result<Deck> {
    let n = s.n();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    collect_deck((1..=n).collect(), |v| canonical_form(&vertex_deleted(s, v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    fn sys(n: usize, lists: &[&[usize]]) -> SetSystem {
        SetSystem::from_lists(n, lists.iter().map(|l| l.iter().copied())).unwrap()
    }

    #[test]
    fn pair_normalizes() {
        let p = IdentPair::new(5, 2).unwrap();
        assert_eq!((p.i(), p.j()), (2, 5));
        assert!(IdentPair::new(3, 3).is_err());
        assert_eq!(IdentPair::all(4).count(), 6);
    }

    #[test]
    fn delta_values() {
        let p = IdentPair::new(2, 4).unwrap();
        let images: Vec<usize> = (1..=5).map(|e| p.delta(e)).collect();
        assert_eq!(images, vec![1, 2, 3, 2, 4]);
        let b: Block = [1, 4, 5].into_iter().collect();
        assert_eq!(p.delta_block(b).to_vec(), vec![1, 2, 4]);
    }

    #[test]
    fn quotient_of_triangle() {
        let t = sys(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let q = quotient(&t, IdentPair::new(1, 2).unwrap()).unwrap();
        assert_eq!(q.to_lists(), vec![vec![1], vec![1, 2]]);
        assert_eq!(card(&t, IdentPair::new(1, 2).unwrap()).unwrap().to_lists(), vec![vec![1]]);
    }

    #[test]
    fn pair_out_of_range() {
        let t = sys(3, &[&[1]]);
        assert!(matches!(card(&t, IdentPair::new(1, 4).unwrap()), Err(Error::PairOutOfRange { .. })));
        assert!(matches!(sperner_deck(&sys(1, &[&[1]])), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn deck_of_triangle() {
        let t = sys(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let d = sperner_deck(&t).unwrap();
        assert_eq!(d.cardinality(), 3);
        assert_eq!(d.multiplicity(&canonical_form(&sys(2, &[&[1]])).unwrap()), 3);
    }

    #[test]
    fn vertex_deletion() {
        let s = sys(4, &[&[1, 2], &[3, 4], &[2, 4]]);
        let d = vertex_deleted(&s, 2).unwrap();
        assert_eq!(d.to_lists(), vec![vec![2, 3]]);
        let e = hypergraph_deck(&sys(3, &[])).unwrap();
        assert_eq!(e.multiplicity(&canonical_form(&sys(2, &[])).unwrap()), 3);
    }

    #[test]
    fn transported_permutation() {
        let p = IdentPair::new(1, 3).unwrap();
        let sigma = Permutation::new(vec![3, 4, 1, 2]).unwrap();
        let t = p.delta_permutation(&sigma).unwrap();
        assert_eq!(t.images(), vec![1, 3, 2]);
        let bad = Permutation::new(vec![2, 1, 3, 4]).unwrap();
        assert!(p.delta_permutation(&bad).is_err());
    }

    #[test]
    fn strong_hypomorphism_of_copies() {
        let s = sys(4, &[&[1, 2], &[2, 3, 4]]);
        assert!(strongly_hypomorphic(&s, &s).unwrap());
        let path = sys(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        let star = sys(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(!is_isomorphic(&path, &star).unwrap());
        assert!(!strongly_hypomorphic(&path, &star).unwrap());
    }
}
