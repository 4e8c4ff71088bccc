//! Text formats: shorthand such as `12,13,23`, JSON system and function
//! files, and the display ordering used for tables.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::enumerate::{DeckRow, DeckTable};
use crate::error::{Error, Result};
use crate::functions::FiniteFunction;
use crate::iso::{canonical_form, CanonicalForm};
use crate::system::{Block, Permutation, SetSystem};

/// Shorthand needs single-digit elements.
pub const SHORTHAND_MAX: usize = 9;

/// Largest ground set for which display representatives are exact.
pub const DISPLAY_CAP: usize = 7;

/// Orders blocks by size, then by their sorted element lists.
pub fn cmp_blocks(a: Block, b: Block) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.elements().cmp(b.elements()))
}

/// Blocks in display order.
pub fn display_blocks(s: &SetSystem) -> Vec<Block> {
    let mut blocks = s.blocks().to_vec();
    blocks.sort_by(|&a, &b| cmp_blocks(a, b));
    blocks
}

/// Compares two systems block by block in display order; a proper prefix
/// comes first.
pub fn cmp_display(a: &SetSystem, b: &SetSystem) -> Ordering {
    let (da, db) = (display_blocks(a), display_blocks(b));
    for (&x, &y) in da.iter().zip(&db) {
        match cmp_blocks(x, y) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    da.len().cmp(&db.len()).then_with(|| a.n().cmp(&b.n()))
}

/// Least relabeling under [`cmp_display`]. Exact up to [`DISPLAY_CAP`]
/// elements; larger systems use the canonical form.
pub fn display_representative(s: &SetSystem) -> Result<SetSystem> {
    let n = s.n();
    if n > DISPLAY_CAP {
        return Ok(canonical_form(s)?.to_system());
    }
    let mut images: Vec<usize> = (1..=n).collect();
    let mut best = s.clone();
    loop {
        let sigma = Permutation::new(images.clone())?;
        let cand = s.apply_permutation(&sigma)?;
        if cmp_display(&cand, &best) == Ordering::Less {
            best = cand;
        }
        if !next_perm(&mut images) {
            break;
        }
    }
    Ok(best)
}

fn next_perm(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn render_block(b: Block) -> String {
    if b.is_empty() {
        "{}".to_string()
    } else {
        b.elements().map(|e| e.to_string()).collect()
    }
}

/// Shorthand in display order: `∅` for no blocks, `{∅}` for the empty block
/// alone, `{}` for an empty block among others.
pub fn to_shorthand(s: &SetSystem) -> Result<String> {
    if s.n() > SHORTHAND_MAX {
        return Err(Error::Parse(format!("shorthand needs n <= {SHORTHAND_MAX}, got {}", s.n())));
    }
    if s.is_empty() {
        return Ok("∅".to_string());
    }
    if s.blocks() == [Block::EMPTY] {
        return Ok("{∅}".to_string());
    }
    Ok(display_blocks(s).into_iter().map(render_block).collect::<Vec<_>>().join(","))
}

/// Shorthand when it applies, else a list of element lists.
pub fn render_label(s: &SetSystem) -> String {
    to_shorthand(s).unwrap_or_else(|_| {
        let blocks: Vec<String> = display_blocks(s)
            .into_iter()
            .map(|b| format!("[{}]", b.elements().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", blocks.join(","))
    })
}

/// Label of an isomorphism class.
pub fn class_label(form: &CanonicalForm) -> Result<String> {
    Ok(render_label(&display_representative(&form.to_system())?))
}

/// Parses one shorthand system. Without `n`, the largest element is used.
pub fn parse_shorthand(text: &str, n: Option<usize>) -> Result<SetSystem> {
    let text = text.trim();
    let (blocks, max) = match text {
        "∅" => (Vec::new(), 0),
        "{∅}" => (vec![Block::EMPTY], 0),
        _ => {
            let mut blocks = Vec::new();
            let mut max = 0;
            for token in text.split(',') {
                let token = token.trim();
                let mut b = Block::EMPTY;
                if token != "{}" && token != "∅" {
                    if token.is_empty() {
                        return Err(Error::Parse(format!("empty block token in {text:?}")));
                    }
                    for c in token.chars() {
                        let e = c
                            .to_digit(10)
                            .filter(|&d| d > 0)
                            .ok_or_else(|| Error::Parse(format!("bad element {c:?} in {token:?}")))?
                            as usize;
                        if b.contains(e) {
                            return Err(Error::Parse(format!("repeated element {e} in {token:?}")));
                        }
                        b = b.with(e);
                        max = max.max(e);
                    }
                }
                blocks.push(b);
            }
            (blocks, max)
        }
    };
    let n = n.unwrap_or(max.max(1));
    SetSystem::new(n, blocks)
}

/// JSON system file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl SystemFile {
    pub fn from_system(s: &SetSystem) -> Self {
        SystemFile { n: s.n(), blocks: s.to_lists() }
    }

    pub fn to_system(&self) -> Result<SetSystem> {
        SetSystem::from_lists(self.n, self.blocks.iter().map(|b| b.iter().copied()))
    }
}

pub fn to_json(s: &SetSystem) -> String {
    serde_json::to_string(&SystemFile::from_system(s)).expect("plain data serializes")
}

pub fn parse_json(text: &str) -> Result<SetSystem> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_system()
}

/// Reads every system in a file: one JSON document, a JSON array of them, or
/// shorthand lines (blank lines and `#` comments skipped).
pub fn parse_systems(text: &str, n: Option<usize>) -> Result<Vec<SetSystem>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') && !trimmed.starts_with("{∅}") && !trimmed.starts_with("{}") {
        return Ok(vec![parse_json(trimmed)?]);
    }
    if trimmed.starts_with('[') {
        let files: Vec<SystemFile> = serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        return files.iter().map(SystemFile::to_system).collect();
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_shorthand(l, n))
        .collect()
}

/// JSON function file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub domain: usize,
    pub codomain: usize,
    pub arity: usize,
    pub table: Vec<usize>,
}

pub fn parse_function(text: &str) -> Result<FiniteFunction> {
    let file: FunctionFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    FiniteFunction::new(file.domain, file.codomain, file.arity, file.table)
}

pub fn function_to_json(f: &FiniteFunction) -> String {
    let file = FunctionFile { domain: f.domain(), codomain: f.codomain(), arity: f.arity(), table: f.table().to_vec() };
    serde_json::to_string(&file).expect("plain data serializes")
}

/// Tab-separated deck table: a header of column labels, then one line per
/// nontrivial class with `*` after nonreconstructible labels and blank cells
/// for zero.
pub fn render_appendix_text(table: &DeckTable) -> Result<String> {
    let mut out = String::new();
    let headers: Vec<String> = table.columns.iter().map(|c| render_label(&c.representative)).collect();
    out.push('\t');
    out.push_str(&headers.join("\t"));
    out.push('\n');
    for row in table.nontrivial_rows() {
        out.push_str(&row_label(row));
        for column in &table.columns {
            out.push('\t');
            let m = row.deck.multiplicity(&column.form);
            if m > 0 {
                out.push_str(&m.to_string());
            }
        }
        out.push('\n');
    }
    Ok(out)
}

fn row_label(row: &DeckRow) -> String {
    let label = render_label(&row.system);
    if row.nonreconstructible {
        format!("{label} *")
    } else {
        label
    }
}

/// JSON deck table with nonzero multiplicities keyed by column label.
pub fn appendix_json(table: &DeckTable) -> serde_json::Value {
    let columns: Vec<String> = table.columns.iter().map(|c| render_label(&c.representative)).collect();
    let rows: Vec<serde_json::Value> = table
        .nontrivial_rows()
        .map(|row| {
            let cards: serde_json::Map<String, serde_json::Value> = table
                .columns
                .iter()
                .zip(&columns)
                .filter_map(|(c, label)| {
                    let m = row.deck.multiplicity(&c.form);
                    (m > 0).then(|| (label.clone(), m.into()))
                })
                .collect();
            serde_json::json!({
                "system": render_label(&row.system),
                "nonreconstructible": row.nonreconstructible,
                "cards": cards,
            })
        })
        .collect();
    serde_json::json!({ "n": table.n, "columns": columns, "rows": rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(text: &str, n: usize) -> SetSystem {
        parse_shorthand(text, Some(n)).unwrap()
    }

    #[test]
    fn shorthand_round_trip() {
        for (text, n) in [("12,13,23", 3), ("1,23", 4), ("∅", 2), ("{∅}", 3), ("1,2,34", 4)] {
            let s = sh(text, n);
            assert_eq!(to_shorthand(&s).unwrap(), text);
            assert_eq!(parse_shorthand(&to_shorthand(&s).unwrap(), Some(n)).unwrap(), s);
        }
        assert_eq!(parse_shorthand("23", None).unwrap().n(), 3);
    }

    #[test]
    fn shorthand_errors() {
        assert!(parse_shorthand("12,12", Some(3)).is_err());
        assert!(parse_shorthand("14", Some(3)).is_err());
        assert!(parse_shorthand("1a", Some(3)).is_err());
        assert!(parse_shorthand("10", Some(3)).is_err());
        assert!(parse_shorthand("1,,2", Some(3)).is_err());
        assert!(to_shorthand(&SetSystem::empty(10).unwrap()).is_err());
    }

    #[test]
    fn display_order() {
        let order = ["1,2,3", "1,23", "12", "12,13", "12,13,23", "123"];
        for w in order.windows(2) {
            assert_eq!(cmp_display(&sh(w[0], 4), &sh(w[1], 4)), Ordering::Less, "{w:?}");
        }
        assert_eq!(cmp_display(&sh("12,13,24", 4), &sh("12,13,24,34", 4)), Ordering::Less);
        assert_eq!(cmp_display(&sh("12,13,24,34", 4), &sh("12,13,234", 4)), Ordering::Less);
        assert_eq!(cmp_display(&sh("1,2,3,4", 4), &sh("1,2,34", 4)), Ordering::Less);
    }

    #[test]
    fn representatives() {
        let s = sh("24,14,3", 4);
        assert_eq!(to_shorthand(&display_representative(&s).unwrap()).unwrap(), "1,23,24");
        let path = sh("34,23,12", 4);
        assert_eq!(to_shorthand(&display_representative(&path).unwrap()).unwrap(), "12,13,24");
    }

    #[test]
    fn json_round_trip() {
        let s = sh("1,23", 4);
        assert_eq!(parse_json(&to_json(&s)).unwrap(), s);
        assert_eq!(parse_systems(&to_json(&s), None).unwrap(), vec![s.clone()]);
        assert_eq!(parse_systems("# c\n1,23\n\n12\n", Some(4)).unwrap().len(), 2);
        assert!(parse_json(r#"{"n": 2, "blocks": [[3]]}"#).is_err());
        assert_eq!(parse_systems("{∅}", Some(2)).unwrap()[0].blocks(), &[Block::EMPTY]);
    }

    #[test]
    fn long_labels() {
        let s = SetSystem::from_lists(10, [vec![1, 10]]).unwrap();
        assert_eq!(render_label(&s), "[[1,10]]");
    }

    #[test]
    fn function_files() {
        let f = parse_function(r#"{"domain":2,"codomain":2,"arity":2,"table":[0,0,0,1]}"#).unwrap();
        assert_eq!(f.eval(&[1, 1]), 1);
        assert_eq!(parse_function(&function_to_json(&f)).unwrap(), f);
        assert!(parse_function(r#"{"domain":2,"codomain":2,"arity":2,"table":[0]}"#).is_err());
    }
}
