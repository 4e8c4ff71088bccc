//! Exhaustive enumeration of Sperner systems up to isomorphism and the
//! deck tables built from it.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::format::{cmp_display, display_representative};
use crate::iso::{canonical_form, CanonicalForm};
use crate::minors::{sperner_deck, Deck};
use crate::system::{Block, SetSystem, SpernerSystem};

/// Default ceiling for exhaustive runs.
pub const ENUMERATION_CAP: usize = 5;

/// One isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpernerClass {
    pub form: CanonicalForm,
    /// Least relabeling in display order.
    pub representative: SpernerSystem,
    /// `∅` or `{∅}`.
    pub trivial: bool,
}

/// Classes over `[n]` sorted by canonical form; `n` is capped at
/// [`ENUMERATION_CAP`].
pub fn enumerate_sperner(n: usize) -> Result<Vec<SpernerClass>> {
    enumerate_sperner_with_cap(n, ENUMERATION_CAP)
}

/// As [`enumerate_sperner`] with a caller-chosen cap. The count grows
/// doubly exponentially; `n = 6` is already slow.
pub fn enumerate_sperner_with_cap(n: usize, cap: usize) -> Result<Vec<SpernerClass>> {
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let mut forms = HashSet::new();
    for_each_antichain(n, &mut |blocks| {
        let s = SetSystem::from_sorted_unchecked(crate::system::GroundSet::new(n).expect("checked"), sorted(blocks));
        forms.insert(canonical_form(&s).expect("n within cap"));
    })?;
    let mut forms: Vec<CanonicalForm> = forms.into_iter().collect();
    forms.sort();
    forms
        .into_iter()
        .map(|form| {
            let rep = display_representative(&form.to_system())?;
            let trivial = rep.is_empty() || rep.blocks() == [Block::EMPTY];
            Ok(SpernerClass { form, representative: SpernerSystem::new(rep)?, trivial })
        })
        .collect()
}

fn sorted(blocks: &[Block]) -> Vec<Block> {
    let mut v = blocks.to_vec();
    v.sort();
    v
}

/// Visits every antichain over `[n]` once, including `∅` and `{∅}`.
pub fn for_each_antichain(n: usize, visit: &mut dyn FnMut(&[Block])) -> Result<()> {
    crate::system::GroundSet::new(n)?;
    if n > 20 {
        return Err(Error::EnumerationCap { n, cap: 20 });
    }
    let mut chosen = Vec::new();
    grow(1u64 << n, 0, &mut chosen, visit);
    Ok(())
}

fn grow(end: u64, start: u64, chosen: &mut Vec<Block>, visit: &mut dyn FnMut(&[Block])) {
    visit(chosen);
    for bits in start..end {
        let b = Block::from_bits(bits);
        if chosen.iter().all(|&c| !c.is_subset(b) && !b.is_subset(c)) {
            chosen.push(b);
            grow(end, bits + 1, chosen, visit);
            chosen.pop();
        }
    }
}

/// One row of a deck table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckRow {
    pub system: SpernerSystem,
    pub form: CanonicalForm,
    pub deck: Deck,
    pub trivial: bool,
    /// Some other class over the same ground set has the same deck.
    pub nonreconstructible: bool,
}

/// Decks of every class over `[n]` against the nontrivial classes over
/// `[n-1]`, both in display order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckTable {
    pub n: usize,
    pub columns: Vec<SpernerClass>,
    pub rows: Vec<DeckRow>,
}

impl DeckTable {
    pub fn multiplicity(&self, row: usize, column: usize) -> usize {
        self.rows[row].deck.multiplicity(&self.columns[column].form)
    }

    pub fn nontrivial_rows(&self) -> impl Iterator<Item = &DeckRow> {
        self.rows.iter().filter(|r| !r.trivial)
    }

    pub fn nonreconstructible_rows(&self) -> impl Iterator<Item = &DeckRow> {
        self.rows.iter().filter(|r| r.nonreconstructible)
    }
}

fn display_sorted(mut classes: Vec<SpernerClass>) -> Vec<SpernerClass> {
    classes.sort_by(|a, b| cmp_display(&a.representative, &b.representative));
    classes
}

/// Deck table for `2 <= n <= 5`.
pub fn deck_table(n: usize) -> Result<DeckTable> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let columns: Vec<SpernerClass> =
        display_sorted(enumerate_sperner(n - 1)?).into_iter().filter(|c| !c.trivial).collect();
    let classes = display_sorted(enumerate_sperner(n)?);
    let decks: Vec<Deck> = classes.iter().map(|c| sperner_deck(&c.representative)).collect::<Result<_>>()?;
    let mut counts: BTreeMap<&Deck, usize> = BTreeMap::new();
    for d in &decks {
        *counts.entry(d).or_default() += 1;
    }
    let flags: Vec<bool> = decks.iter().map(|d| counts[d] > 1).collect();
    let rows = classes
        .into_iter()
        .zip(decks)
        .zip(flags)
        .map(|((c, deck), nonreconstructible)| DeckRow {
            system: c.representative,
            form: c.form,
            deck,
            trivial: c.trivial,
            nonreconstructible,
        })
        .collect();
    Ok(DeckTable { n, columns, rows })
}

/// Groups of pairwise non-isomorphic systems over `[n]` sharing a deck.
pub fn find_nonreconstructible(n: usize) -> Result<Vec<Vec<SpernerSystem>>> {
    let table = deck_table(n)?;
    let mut groups: BTreeMap<Deck, Vec<SpernerSystem>> = BTreeMap::new();
    for row in table.rows {
        groups.entry(row.deck).or_default().push(row.system);
    }
    Ok(groups.into_values().filter(|g| g.len() > 1).collect())
}

fn cached_decks(n: usize) -> Result<&'static [(CanonicalForm, Deck)]> {
    static CACHE: [OnceLock<Vec<(CanonicalForm, Deck)>>; ENUMERATION_CAP + 1] =
        [const { OnceLock::new() }; ENUMERATION_CAP + 1];
    let slot = CACHE.get(n).ok_or(Error::EnumerationCap { n, cap: ENUMERATION_CAP })?;
    if let Some(v) = slot.get() {
        return Ok(v);
    }
    let table = deck_table(n)?;
    let v = table.rows.into_iter().map(|r| (r.form, r.deck)).collect();
    Ok(slot.get_or_init(|| v))
}

/// Whether `s` is the only class over its ground set with its deck. Needs
/// the ground set to be within the enumeration cap.
pub fn is_reconstructible(s: &SpernerSystem) -> Result<bool> {
    let deck = sperner_deck(s)?;
    let rows = cached_decks(s.n())?;
    Ok(rows.iter().filter(|(_, d)| *d == deck).count() == 1)
}
