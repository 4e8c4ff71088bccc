//! Isomorphism of set systems via canonical labeling.
//!
//! Elements are first split into color classes by iterated refinement
//! (occurrence counts and block sizes, then neighbourhood signatures).
//! New labels are handed out class by class, lowest label first. Blocks that
//! lie inside the labeled part are fixed by then, so partial labelings can be
//! compared level by level and only the minimal ones kept. The result is the
//! least relabeled system among all color-respecting labelings, which depends
//! only on the isomorphism class.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::system::{Block, GroundSet, Multiset, Permutation, SetSystem};

/// Largest ground set accepted by [`canonical_form`].
pub const CANONICAL_CAP: usize = 24;

/// Canonical representative of an isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    blocks: Vec<Block>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
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

    pub fn to_system(&self) -> SetSystem {
        let ground = GroundSet::new(self.n()).expect("canonical form has a valid ground set");
        SetSystem::from_sorted_unchecked(ground, self.blocks.clone())
    }
}

/// Per-element data preserved by every isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementInvariant {
    pub occurrences: usize,
    /// Sizes of the blocks containing the element, ascending.
    pub block_sizes: Vec<usize>,
}

pub fn element_invariant(s: &SetSystem, e: usize) -> ElementInvariant {
    let mut block_sizes: Vec<usize> = s.star(e).map(Block::len).collect();
    block_sizes.sort_unstable();
    ElementInvariant { occurrences: block_sizes.len(), block_sizes }
}

/// Multiset of element invariants; equal for isomorphic systems.
pub fn invariant_profile(s: &SetSystem) -> Multiset<ElementInvariant> {
    s.ground().elements().map(|e| element_invariant(s, e)).collect()
}

pub fn canonical_form(s: &SetSystem) -> Result<CanonicalForm> {
    Ok(canonical_labeling(s)?.0)
}

/// Canonical form together with a permutation taking `s` onto it.
pub fn canonical_labeling(s: &SetSystem) -> Result<(CanonicalForm, Permutation)> {
    let n = s.n();
    if n > CANONICAL_CAP {
        return Err(Error::CanonicalCap { n, cap: CANONICAL_CAP });
    }
    let (blocks, map) = search(s);
    let labeling = Permutation::new(map.iter().map(|&x| x as usize + 1).collect()).expect("search yields a bijection");
    Ok((CanonicalForm { n: n as u8, blocks }, labeling))
}

pub fn is_isomorphic(a: &SetSystem, b: &SetSystem) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// A permutation `sigma` with `sigma(a) = b`, if one exists.
pub fn find_isomorphism(a: &SetSystem, b: &SetSystem) -> Result<Option<Permutation>> {
    if a.n() != b.n() || a.len() != b.len() {
        return Ok(None);
    }
    if invariant_profile(a) != invariant_profile(b) {
        return Ok(None);
    }
    let (fa, la) = canonical_labeling(a)?;
    let (fb, lb) = canonical_labeling(b)?;
    if fa != fb {
        return Ok(None);
    }
    let sigma = lb.inverse().compose(&la);
    debug_assert_eq!(&a.apply_permutation(&sigma)?, b);
    Ok(Some(sigma))
}

fn ranks<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Stable coloring of the elements (0-based), with canonical color values.
fn refine(s: &SetSystem) -> Vec<u32> {
    let n = s.n();
    let initial: Vec<ElementInvariant> = (1..=n).map(|e| element_invariant(s, e)).collect();
    let mut colors = ranks(&initial);
    let mut count = distinct(&colors);
    loop {
        let sigs: Vec<Vec<u32>> = s
            .blocks()
            .iter()
            .map(|b| {
                let mut v: Vec<u32> = b.elements().map(|e| colors[e - 1]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let keys: Vec<(u32, Vec<&Vec<u32>>)> = (0..n)
            .map(|e| {
                let mut around: Vec<&Vec<u32>> =
                    s.blocks().iter().zip(&sigs).filter(|(b, _)| b.contains(e + 1)).map(|(_, sig)| sig).collect();
                around.sort();
                (colors[e], around)
            })
            .collect();
        let next = ranks(&keys);
        let next_count = distinct(&next);
        colors = next;
        if next_count == count {
            return colors;
        }
        count = next_count;
    }
}

fn relabel(b: u64, map: &[u8]) -> u64 {
    let mut out = 0u64;
    let mut rest = b;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1u64 << map[e];
    }
    out
}

/// Orders two sorted block lists from the same label range; the longer list
/// wins a tie on the common prefix.
fn cmp_level(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x.cmp(y);
        }
    }
    b.len().cmp(&a.len())
}

#[derive(Clone)]
struct Node {
    map: Vec<u8>,
    used: u64,
}

const UNSET: u8 = u8::MAX;

fn search(s: &SetSystem) -> (Vec<Block>, Vec<u8>) {
    let n = s.n();
    let blocks: Vec<u64> = s.blocks().iter().map(|b| b.bits()).collect();
    let colors = refine(s);
    let mut by_elem: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut membership: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &b) in blocks.iter().enumerate() {
        for e in Block::from_bits(b).elements() {
            by_elem[e - 1].push(b);
            membership[e - 1].push(k);
        }
    }
    let twin = ranks(&membership);
    let mut pos_color = colors.clone();
    pos_color.sort_unstable();

    let mut form: Vec<u64> = Vec::with_capacity(blocks.len());
    if blocks.first() == Some(&0) {
        form.push(0);
    }
    let mut frontier = vec![Node { map: vec![UNSET; n], used: 0 }];
    for (level, &target) in pos_color.iter().enumerate() {
        let mut best: Option<Vec<u64>> = None;
        let mut next: Vec<Node> = Vec::new();
        let mut seen: HashSet<(u64, Vec<(u64, u64)>)> = HashSet::new();
        for node in &frontier {
            let mut tried: HashSet<u32> = HashSet::new();
            for c in 0..n {
                if node.used >> c & 1 == 1 || colors[c] != target {
                    continue;
                }
                if !tried.insert(twin[c]) {
                    continue;
                }
                let used = node.used | 1u64 << c;
                let mut map = node.map.clone();
                map[c] = level as u8;
                let mut fresh: Vec<u64> =
                    by_elem[c].iter().filter(|&&b| b & !used == 0).map(|&b| relabel(b, &map)).collect();
                fresh.sort_unstable();
                match best.as_ref().map(|b| cmp_level(&fresh, b)) {
                    Some(std::cmp::Ordering::Greater) => continue,
                    Some(std::cmp::Ordering::Equal) => {}
                    _ => {
                        best = Some(fresh);
                        next.clear();
                        seen.clear();
                    }
                }
                let mut key: Vec<(u64, u64)> = blocks.iter().map(|&b| (relabel(b & used, &map), b & !used)).collect();
                key.sort_unstable();
                if seen.insert((used, key)) {
                    next.push(Node { map, used });
                }
            }
        }
        form.extend(best.expect("every level has a candidate"));
        frontier = next;
    }
    let map = frontier.swap_remove(0).map;
    (form.into_iter().map(Block::from_bits).collect(), map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, lists: &[&[usize]]) -> SetSystem {
        SetSystem::from_lists(n, lists.iter().map(|l| l.iter().copied())).unwrap()
    }

    #[test]
    fn labeling_maps_onto_form() {
        let s = sys(5, &[&[1, 4], &[2, 4, 5], &[3]]);
        let (form, lambda) = canonical_labeling(&s).unwrap();
        assert_eq!(s.apply_permutation(&lambda).unwrap(), form.to_system());
    }

    #[test]
    fn relabeled_copies_agree() {
        let s = sys(4, &[&[1, 2], &[1, 3], &[2, 4]]);
        let p = Permutation::new(vec![4, 1, 3, 2]).unwrap();
        let t = s.apply_permutation(&p).unwrap();
        assert_eq!(canonical_form(&s).unwrap(), canonical_form(&t).unwrap());
        let sigma = find_isomorphism(&s, &t).unwrap().unwrap();
        assert_eq!(s.apply_permutation(&sigma).unwrap(), t);
    }

    #[test]
    fn distinguishes_path_from_star() {
        let path = sys(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        let star = sys(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(!is_isomorphic(&path, &star).unwrap());
    }

    #[test]
    fn regular_systems_with_equal_invariants() {
        let hexagon = sys(6, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6]]);
        let triangles = sys(6, &[&[1, 2], &[2, 3], &[1, 3], &[4, 5], &[5, 6], &[4, 6]]);
        assert_eq!(invariant_profile(&hexagon), invariant_profile(&triangles));
        assert!(!is_isomorphic(&hexagon, &triangles).unwrap());
    }

    #[test]
    fn trivial_systems() {
        let empty = sys(3, &[]);
        let unit = sys(3, &[&[]]);
        assert!(canonical_form(&empty).unwrap().is_empty());
        assert_eq!(canonical_form(&unit).unwrap().blocks(), &[Block::EMPTY]);
        assert!(find_isomorphism(&empty, &sys(4, &[])).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let s = SetSystem::empty(CANONICAL_CAP + 1).unwrap();
        assert!(matches!(canonical_form(&s), Err(Error::CanonicalCap { .. })));
    }

    #[test]
    fn complete_graph_stays_fast() {
        let mut blocks = Vec::new();
        for i in 1..=10 {
            for j in i + 1..=10 {
                blocks.push(Block::singleton(i).with(j));
            }
        }
        let s = SetSystem::new(10, blocks).unwrap();
        assert_eq!(canonical_form(&s).unwrap().len(), 45);
    }

    #[test]
    fn least_level_order() {
        use std::cmp::Ordering::*;
        assert_eq!(cmp_level(&[3, 5], &[3, 6]), Less);
        assert_eq!(cmp_level(&[3, 5], &[3]), Less);
        assert_eq!(cmp_level(&[], &[4]), Greater);
        assert_eq!(cmp_level(&[4], &[4]), Equal);
    }
}
