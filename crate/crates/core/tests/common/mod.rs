#![allow(dead_code)]

use std::collections::HashSet;

use sperner_core::enumerate::{deck_table, for_each_antichain};
use sperner_core::format::render_appendix_text;
use sperner_core::functions::sperner_to_function;
use sperner_core::SetSystem;

fn data(name: &str) -> String {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn cells(line: &str) -> Vec<String> {
    let mut v: Vec<String> = line.split('\t').map(|c| c.trim().to_string()).collect();
    while v.last().is_some_and(|c| c.is_empty()) {
        v.pop();
    }
    v
}

pub fn expected_columns(n: usize) -> Vec<String> {
    data(&format!("columns_{n}.txt")).lines().map(str::to_string).collect()
}

pub fn columns_5() -> Vec<String> {
    expected_columns(5)
}

/// Cell-level differences between the rendered table and the golden file.
pub fn appendix_diff(n: usize) -> Vec<String> {
    let table = deck_table(n).unwrap();
    let text = render_appendix_text(&table).unwrap();
    let mut lines = text.lines();
    let mut diffs = Vec::new();
    let header = cells(lines.next().unwrap_or_default());
    let header: Vec<String> = header.into_iter().skip_while(String::is_empty).collect();
    if header != expected_columns(n) {
        diffs.push(format!("header {header:?}"));
    }
    let got: Vec<Vec<String>> = lines.map(cells).collect();
    let want: Vec<Vec<String>> = data(&format!("appendix_{n}.tsv")).lines().map(cells).collect();
    if got.len() != want.len() {
        diffs.push(format!("{} rows, expected {}", got.len(), want.len()));
    }
    for (g, w) in got.iter().zip(&want) {
        if g != w {
            diffs.push(format!("row {g:?}, expected {w:?}"));
        }
    }
    diffs
}

/// Table index of a tuple over the three-element chain.
pub fn index3(x: &[usize]) -> usize {
    x.iter().fold(0, |acc, &a| acc * 3 + a)
}

/// Tuples over the lattice bounds `{0, 2}`.
pub fn bound_tuples(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1usize << n).map(move |m| (0..n).map(|i| 2 * (m >> i & 1)).collect())
}

/// All `n`-ary polynomial tables of the chain `0 < 1 < 2`, and the
/// `(0, 2)`-truncated term tables.
pub fn chain_polynomials(n: usize) -> (HashSet<Vec<usize>>, HashSet<Vec<usize>>) {
    let size = 3usize.pow(n as u32);
    let tuples: Vec<Vec<usize>> =
        (0..size).map(|idx| (0..n).map(|i| idx / 3usize.pow((n - 1 - i) as u32) % 3).collect()).collect();
    let mut all: Vec<Vec<usize>> = (0..3).map(|c| vec![c; size]).collect();
    all.extend((0..n).map(|i| tuples.iter().map(|x| x[i]).collect()));
    let mut seen: HashSet<Vec<usize>> = all.iter().cloned().collect();
    let mut frontier = 0;
    while frontier < all.len() {
        let end = all.len();
        for a in frontier..end {
            for b in 0..end {
                for op in [usize::min, usize::max] {
                    let t: Vec<usize> = all[a].iter().zip(&all[b]).map(|(&x, &y)| op(x, y)).collect();
                    if seen.insert(t.clone()) {
                        all.push(t);
                    }
                }
            }
        }
        frontier = end;
    }
    let mut truncated = HashSet::new();
    for_each_antichain(n, &mut |blocks| {
        let s = SetSystem::new(n, blocks.iter().copied()).unwrap();
        truncated.insert(sperner_to_function(&s, 3, 0, 2).unwrap().table().to_vec());
    })
    .unwrap();
    (seen, truncated)
}
