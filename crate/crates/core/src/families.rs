//! Pairs of strongly hypomorphic, nonisomorphic Sperner systems over
//! `E_m = [m] ∪ [m]'`.
//!
//! Element `i` is encoded as `i`, `i'` as `m + i`, and the extra elements
//! `0` and `0'` (used by the `U` family) as `2m + 1` and `2m + 2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::system::{Block, Permutation, SetSystem, SpernerSystem};

/// Which half of a pair: `Odd` is the first member, `Even` the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Parity::Odd),
            2 => Ok(Parity::Even),
            _ => Err(Error::FamilyParameter(format!("parity must be 1 or 2, got {i}"))),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Parity::Odd => 1,
            Parity::Even => 2,
        }
    }

    fn accepts(self, k: usize) -> bool {
        (k % 2 == 1) == (self == Parity::Odd)
    }
}

/// Labels of `E_m`, optionally with `0` and `0'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimedGroundEncoding {
    m: usize,
    extras: usize,
}

impl PrimedGroundEncoding {
    pub fn new(m: usize, extras: usize) -> Result<Self> {
        if m < 2 || extras > 2 || 2 * m + extras > 64 {
            return Err(Error::FamilyParameter(format!("no encoding for m = {m} with {extras} extras")));
        }
        Ok(PrimedGroundEncoding { m, extras })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        2 * self.m + self.extras
    }

    pub fn unprimed(&self, i: usize) -> usize {
        i
    }

    pub fn primed(&self, i: usize) -> usize {
        self.m + i
    }

    pub fn zero(&self) -> Option<usize> {
        (self.extras >= 1).then_some(2 * self.m + 1)
    }

    pub fn zero_prime(&self) -> Option<usize> {
        (self.extras >= 2).then_some(2 * self.m + 2)
    }

    /// Human-readable label such as `3`, `3'`, `0` or `0'`.
    pub fn label(&self, e: usize) -> String {
        let m = self.m;
        match e {
            e if (1..=m).contains(&e) => e.to_string(),
            e if (m + 1..=2 * m).contains(&e) => format!("{}'", e - m),
            e if e == 2 * m + 1 && self.extras >= 1 => "0".to_string(),
            e if e == 2 * m + 2 && self.extras >= 2 => "0'".to_string(),
            _ => format!("?{e}"),
        }
    }

    /// Inverse of [`PrimedGroundEncoding::label`].
    pub fn parse_label(&self, s: &str) -> Result<usize> {
        let (digits, primed) = match s.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let i: usize = digits.parse().map_err(|_| Error::Parse(format!("bad label {s:?}")))?;
        let e = match (i, primed) {
            (0, false) => self.zero(),
            (0, true) => self.zero_prime(),
            (i, false) if i <= self.m => Some(i),
            (i, true) if i <= self.m => Some(self.m + i),
            _ => None,
        };
        e.ok_or_else(|| Error::Parse(format!("label {s:?} outside the encoding")))
    }

    pub fn render_block(&self, b: Block) -> String {
        let labels: Vec<String> = b.elements().map(|e| self.label(e)).collect();
        format!("{{{}}}", labels.join(","))
    }

    pub fn render(&self, s: &SetSystem) -> String {
        let blocks: Vec<String> = s.blocks().iter().map(|&b| self.render_block(b)).collect();
        format!("{{{}}}", blocks.join(", "))
    }
}

/// `a + q` on `[1..m]`, with representatives `1..m`.
pub fn cyclic_add(m: usize, a: usize, q: isize) -> usize {
    let m_i = m as isize;
    ((a as isize - 1 + q).rem_euclid(m_i) + 1) as usize
}

fn mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Rotates a subset of `[m]` by `q` steps.
pub fn rotate_subset(m: usize, x: Block, q: usize) -> Block {
    let q = q % m;
    let bits = x.bits() & mask(m);
    if q == 0 {
        return Block::from_bits(bits);
    }
    Block::from_bits(((bits << q) | (bits >> (m - q))) & mask(m))
}

/// `X ∪ X'` style helpers over `E_m`.
fn primed(m: usize, x: Block) -> Block {
    Block::from_bits(x.bits() << m)
}

fn both(m: usize, x: Block) -> Block {
    x.union(primed(m, x))
}

fn check_m(m: usize, min: usize) -> Result<()> {
    if m < min || 2 * m > 64 {
        return Err(Error::FamilyParameter(format!("m must be in {min}..=32, got {m}")));
    }
    Ok(())
}

/// The rotation `i ↦ i + 1`, `i' ↦ (i + 1)'` on a ground set of size `n ≥ 2m`;
/// elements above `2m` are fixed.
pub fn rotation(m: usize, n: usize) -> Result<Permutation> {
    check_m(m, 1)?;
    if n < 2 * m {
        return Err(Error::FamilyParameter(format!("ground size {n} below 2m = {}", 2 * m)));
    }
    let images = (1..=n)
        .map(|e| match e {
            e if e <= m => cyclic_add(m, e, 1),
            e if e <= 2 * m => m + cyclic_add(m, e - m, 1),
            e => e,
        })
        .collect();
    Permutation::new(images)
}

/// The transposition `(i i')` on a ground set of size `n ≥ 2m`.
pub fn transposition(m: usize, i: usize, n: usize) -> Result<Permutation> {
    if i == 0 || i > m || n < 2 * m {
        return Err(Error::FamilyParameter(format!("no transposition of {i} for m = {m}")));
    }
    Permutation::transposition(n, i, m + i)
}

fn rotations(m: usize, blocks: impl IntoIterator<Item = Block>) -> Vec<Block> {
    let rho = rotation(m, 2 * m).expect("valid m");
    let mut out = Vec::new();
    for b in blocks {
        let mut cur = b;
        for _ in 0..m {
            out.push(cur);
            cur = rho.apply_block(cur);
        }
    }
    out
}

fn sperner(n: usize, blocks: Vec<Block>) -> Result<SpernerSystem> {
    SpernerSystem::new(SetSystem::from_blocks(n, blocks)?)
}

/// `G_J = J ∪ ([m] \ J)'` for each `J ⊆ [m]` of the given parity.
pub fn build_g(m: usize, parity: Parity) -> Result<SpernerSystem> {
    check_m(m, 2)?;
    let blocks = (0..1u64 << m)
        .filter(|j| parity.accepts(j.count_ones() as usize))
        .map(|j| Block::from_bits(j | ((!j & mask(m)) << m)))
        .collect();
    sperner(2 * m, blocks)
}

/// `F_p = E_m \ {p, p', (p + 1)'}`.
pub fn f_block(m: usize, p: usize) -> Block {
    let full = Block::from_bits(mask(2 * m));
    full.without(p).without(m + p).without(m + cyclic_add(m, p, 1))
}

pub fn build_f(m: usize) -> Result<SpernerSystem> {
    check_m(m, 3)?;
    sperner(2 * m, (1..=m).map(|p| f_block(m, p)).collect())
}

pub fn build_m(m: usize, parity: Parity) -> Result<SpernerSystem> {
    check_m(m, 3)?;
    let g = build_g(m, parity)?;
    let f = build_f(m)?;
    sperner(2 * m, g.blocks().iter().chain(f.blocks()).copied().collect())
}

/// `n = 2m + 1`: every block of `M` gains `0`; `n = 2m + 2` adds `{0, 0'}` too.
pub fn build_u(n: usize, parity: Parity) -> Result<SpernerSystem> {
    if !(7..=64).contains(&n) {
        return Err(Error::FamilyParameter(format!("n must be 2m+1 or 2m+2 with m >= 3, got {n}")));
    }
    let m = (n - 1) / 2;
    let enc = PrimedGroundEncoding::new(m, n - 2 * m)?;
    let zero = Block::singleton(enc.zero().expect("n > 2m"));
    let mut blocks: Vec<Block> = build_m(m, parity)?.blocks().iter().map(|b| b.union(zero)).collect();
    if let Some(zp) = enc.zero_prime() {
        blocks.push(zero.with(zp));
    }
    sperner(n, blocks)
}

/// Disjoint `X, Y ⊆ [m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XyPair {
    x: Block,
    y: Block,
}

impl XyPair {
    pub fn new(x: Block, y: Block) -> Result<Self> {
        if !x.intersection(y).is_empty() {
            return Err(Error::OverlappingXy);
        }
        Ok(XyPair { x, y })
    }

    pub fn from_lists(x: &[usize], y: &[usize]) -> Result<Self> {
        Self::new(x.iter().copied().collect(), y.iter().copied().collect())
    }

    pub fn x(&self) -> Block {
        self.x
    }

    pub fn y(&self) -> Block {
        self.y
    }

    pub fn swapped(&self) -> XyPair {
        XyPair { x: self.y, y: self.x }
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }

    pub fn rotated(&self, m: usize, q: usize) -> XyPair {
        XyPair { x: rotate_subset(m, self.x, q), y: rotate_subset(m, self.y, q) }
    }

    /// Least rotation; identifies the rotation class.
    pub fn class_representative(&self, m: usize) -> XyPair {
        (0..m).map(|q| self.rotated(m, q)).min_by_key(|p| (p.x.bits(), p.y.bits())).expect("m >= 1")
    }

    fn check(&self, m: usize) -> Result<()> {
        let bound = Block::from_bits(mask(m));
        if let Some(e) = self.x.union(self.y).difference(bound).max_element() {
            return Err(Error::ElementOutOfRange { element: e, n: m });
        }
        Ok(())
    }
}

impl fmt::Display for XyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}|{:?}>", self.x.to_vec(), self.y.to_vec())
    }
}

/// Blocks containing `x, x'` for `x ∈ X`, neither of `y, y'` for `y ∈ Y`,
/// and exactly one of `z, z'` for the remaining `z`.
pub fn q_set(m: usize, p: &XyPair) -> Result<SetSystem> {
    check_m(m, 1)?;
    p.check(m)?;
    let z = Block::from_bits(mask(m)).difference(p.x.union(p.y));
    let z_elems: Vec<usize> = z.to_vec();
    let base = both(m, p.x);
    let mut blocks = Vec::with_capacity(1 << z_elems.len());
    for t in 0..1u64 << z_elems.len() {
        let mut b = base;
        for (k, &e) in z_elems.iter().enumerate() {
            b = if t >> k & 1 == 1 { b.with(e) } else { b.with(m + e) };
        }
        blocks.push(b);
    }
    SetSystem::from_blocks(2 * m, blocks)
}

/// Union of `q_set` over all rotations of the pair.
pub fn q_rot(m: usize, p: &XyPair) -> Result<SetSystem> {
    let base = q_set(m, p)?;
    SetSystem::from_blocks(2 * m, rotations(m, base.blocks().iter().copied()))
}

/// `x`, `y` or `z` for each `i ∈ [m]`.
pub fn full_signature(m: usize, p: &XyPair) -> String {
    (1..=m)
        .map(|i| {
            if p.x.contains(i) {
                'x'
            } else if p.y.contains(i) {
                'y'
            } else {
                'z'
            }
        })
        .collect()
}

/// Replaces each `z` of a circular word by `α` or `β`: `β` after `x`, `α`
/// after `y`, and alternating along runs of `z`.
pub fn psi(w: &str) -> Result<String> {
    let d: Vec<char> = w.chars().collect();
    if let Some(c) = d.iter().find(|c| !matches!(c, 'x' | 'y' | 'z')) {
        return Err(Error::Parse(format!("unexpected letter {c:?}")));
    }
    let n = d.len();
    let anchor =
        d.iter().position(|&c| c != 'z').ok_or_else(|| Error::SignatureUndefined("word consists only of z".into()))?;
    let mut out = d.clone();
    for step in 1..n {
        let k = (anchor + step) % n;
        if d[k] != 'z' {
            continue;
        }
        let prev = (k + n - 1) % n;
        out[k] = match d[prev] {
            'x' => 'β',
            'y' => 'α',
            _ if out[prev] == 'α' => 'β',
            _ => 'α',
        };
    }
    Ok(out.into_iter().collect())
}

/// Reduced signature value: the letters among `α`, `β` occurring an odd
/// number of times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    Empty,
    Alpha,
    Beta,
    AlphaBeta,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signature::Empty => "∅",
            Signature::Alpha => "α",
            Signature::Beta => "β",
            Signature::AlphaBeta => "αβ",
        })
    }
}

pub fn phi(w: &str) -> Signature {
    let odd = |c: char| w.chars().filter(|&d| d == c).count() % 2 == 1;
    match (odd('α'), odd('β')) {
        (false, false) => Signature::Empty,
        (true, false) => Signature::Alpha,
        (false, true) => Signature::Beta,
        (true, true) => Signature::AlphaBeta,
    }
}

pub fn reduced_signature(m: usize, p: &XyPair) -> Result<Signature> {
    p.check(m)?;
    if p.is_empty() {
        return Err(Error::SignatureUndefined("(X, Y) = (∅, ∅)".into()));
    }
    Ok(phi(&psi(&full_signature(m, p))?))
}

/// One rotation class with `|X| = |Y|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QClass {
    pub representative: XyPair,
    pub blocks: SetSystem,
}

/// All rotation classes with `|X| = |Y|`, ordered by representative.
pub fn q_class_partition(m: usize) -> Result<Vec<QClass>> {
    check_m(m, 2)?;
    let mut reps: Vec<XyPair> = Vec::new();
    for x in 0..1u64 << m {
        let rest = !x & mask(m);
        let mut y = rest;
        loop {
            if y.count_ones() == x.count_ones() {
                let p = XyPair { x: Block::from_bits(x), y: Block::from_bits(y) };
                reps.push(p.class_representative(m));
            }
            if y == 0 {
                break;
            }
            y = (y - 1) & rest;
        }
    }
    reps.sort_by_key(|p| (p.x.bits(), p.y.bits()));
    reps.dedup();
    reps.into_iter().map(|representative| Ok(QClass { blocks: q_rot(m, &representative)?, representative })).collect()
}

fn check_odd(m: usize) -> Result<()> {
    check_m(m, 3)?;
    if m.is_multiple_of(2) {
        return Err(Error::FamilyParameter(format!("m must be odd, got {m}")));
    }
    Ok(())
}

/// `C = {1, 3, ..., m - 2}`.
pub fn c_set(m: usize) -> Block {
    (1..=m.saturating_sub(2)).step_by(2).collect()
}

pub fn a_block(m: usize) -> Block {
    both(m, rotate_subset(m, c_set(m), 1)).with(m)
}

pub fn b_block(m: usize) -> Block {
    both(m, c_set(m)).with(m)
}

/// The pair defining `Q_j = Q°<C \ {m-2} | (C + 1) \ {j}>`.
pub fn q_j_pair(m: usize, j: usize) -> Result<XyPair> {
    check_odd(m)?;
    let c = c_set(m);
    let c1 = rotate_subset(m, c, 1);
    if !c1.contains(j) {
        return Err(Error::FamilyParameter(format!("{j} is not in C + 1")));
    }
    XyPair::new(c.without(m - 2), c1.without(j))
}

/// Rotations of `A` and `B` together with every other class of signature `β`.
pub fn build_d(m: usize) -> Result<SetSystem> {
    check_odd(m)?;
    let c = c_set(m);
    let c1 = rotate_subset(m, c, 1);
    let excluded = [XyPair::new(c, c1)?.class_representative(m), XyPair::new(c1, c)?.class_representative(m)];
    let mut blocks = rotations(m, [a_block(m), b_block(m)]);
    for class in q_class_partition(m)? {
        if class.representative.is_empty() || excluded.contains(&class.representative) {
            continue;
        }
        if reduced_signature(m, &class.representative)? == Signature::Beta {
            blocks.extend_from_slice(class.blocks.blocks());
        }
    }
    SetSystem::from_blocks(2 * m, blocks)
}

pub fn build_s(m: usize, parity: Parity) -> Result<SpernerSystem> {
    check_odd(m)?;
    let d = build_d(m)?;
    let g = build_g(m, parity)?;
    sperner(2 * m, d.blocks().iter().chain(g.blocks()).copied().collect())
}
