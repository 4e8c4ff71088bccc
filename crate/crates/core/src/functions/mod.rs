//! Finite functions `A^n -> B` given by explicit tables.
//!
//! Carriers are `0..|A|` and `0..|B|`. Tables are in row-major order: the
//! first argument is the most significant digit.

mod bridge;
mod clones;
mod transforms;

pub use bridge::{function_to_sperner, sperner_to_function, term_function};
pub use clones::{
    a_separating, clone_report, in_lambda, in_v, is_linear, is_monotone, is_self_dual, preserves_0, preserves_1,
    CloneReport, Rank,
};
pub use transforms::{duplicate_pad, extend, modify_diagonal, relabel};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minors::IdentPair;
use crate::system::{Multiset, Permutation};

/// Largest table accepted, in entries.
pub const TABLE_CAP: usize = 1 << 24;

/// Largest number of essential arguments for canonical keys.
pub const KEY_ARITY_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteFunction {
    domain: usize,
    codomain: usize,
    arity: usize,
    table: Vec<usize>,
}

fn table_len(domain: usize, arity: usize) -> Result<usize> {
    let mut len = 1usize;
    for _ in 0..arity {
        len = len
            .checked_mul(domain)
            .filter(|&l| l <= TABLE_CAP)
            .ok_or_else(|| Error::TableCap(format!("{domain}^{arity}")))?;
    }
    Ok(len)
}

impl FiniteFunction {
    pub fn new(domain: usize, codomain: usize, arity: usize, table: Vec<usize>) -> Result<Self> {
        if domain == 0 || codomain == 0 {
            return Err(Error::Function("carriers must be nonempty".into()));
        }
        let len = table_len(domain, arity)?;
        if table.len() != len {
            return Err(Error::Function(format!("table has {} entries, expected {len}", table.len())));
        }
        if let Some(v) = table.iter().find(|&&v| v >= codomain) {
            return Err(Error::Function(format!("value {v} outside codomain of size {codomain}")));
        }
        Ok(FiniteFunction { domain, codomain, arity, table })
    }

    /// Tabulates `f` over all tuples.
    pub fn from_fn(domain: usize, codomain: usize, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> Result<Self> {
        let len = table_len(domain, arity)?;
        let mut args = vec![0; arity];
        let mut table = Vec::with_capacity(len);
        for idx in 0..len {
            decode(idx, domain, &mut args);
            table.push(f(&args));
        }
        Self::new(domain, codomain, arity, table)
    }

    pub fn constant(domain: usize, codomain: usize, arity: usize, value: usize) -> Result<Self> {
        Self::new(domain, codomain, arity, vec![value; table_len(domain, arity)?])
    }

    /// The `i`-th projection, 1-based.
    pub fn projection(domain: usize, arity: usize, i: usize) -> Result<Self> {
        if i == 0 || i > arity {
            return Err(Error::Function(format!("no argument {i} in arity {arity}")));
        }
        Self::from_fn(domain, domain, arity, |a| a[i - 1])
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_boolean(&self) -> bool {
        self.domain == 2 && self.codomain == 2
    }

    pub fn index_of(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.domain + a)
    }

    /// Panics on a wrong number of arguments or out-of-range values.
    pub fn eval(&self, args: &[usize]) -> usize {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        assert!(args.iter().all(|&a| a < self.domain), "argument outside domain");
        self.table[self.index_of(args)]
    }

    /// `f_I(a) = f(a δ_I)`: argument `k` of `f` receives `a_{δ(k)}`.
    pub fn identification_minor(&self, pair: IdentPair) -> Result<FiniteFunction> {
        let n = self.arity;
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        if pair.j() > n {
            return Err(Error::PairOutOfRange { i: pair.i(), j: pair.j(), n });
        }
        let delta: Vec<usize> = (1..=n).map(|k| pair.delta(k) - 1).collect();
        let mut full = vec![0; n];
        FiniteFunction::from_fn(self.domain, self.codomain, n - 1, |a| {
            for (k, &d) in delta.iter().enumerate() {
                full[k] = a[d];
            }
            self.table[self.index_of(&full)]
        })
    }

    /// 1-based indices of the arguments the function depends on.
    pub fn essential_args(&self) -> Vec<usize> {
        let n = self.arity;
        let d = self.domain;
        let mut out = Vec::new();
        let mut stride = 1usize;
        let mut strides = vec![0; n];
        for k in (0..n).rev() {
            strides[k] = stride;
            stride *= d;
        }
        for (k, &s) in strides.iter().enumerate() {
            let essential = (0..self.table.len()).any(|idx| {
                let digit = idx / s % d;
                digit > 0 && self.table[idx] != self.table[idx - digit * s]
            });
            if essential {
                out.push(k + 1);
            }
        }
        out
    }

    /// `g(a) = f(a σ)`, that is, argument `k` of `f` receives `a_{σ(k)}`.
    pub fn permute_args(&self, sigma: &Permutation) -> Result<FiniteFunction> {
        if sigma.len() != self.arity {
            return Err(Error::SizeMismatch { left: self.arity, right: sigma.len() });
        }
        let map: Vec<usize> = (1..=self.arity).map(|k| sigma.image(k) - 1).collect();
        Ok(self.permuted(&map))
    }

    fn permuted(&self, map: &[usize]) -> FiniteFunction {
        let mut full = vec![0; self.arity];
        FiniteFunction::from_fn(self.domain, self.codomain, self.arity, |a| {
            for (k, &m) in map.iter().enumerate() {
                full[k] = a[m];
            }
            self.table[self.index_of(&full)]
        })
        .expect("same shape")
    }

    /// Drops inessential arguments, keeping the order of the rest.
    pub fn delete_inessential(&self) -> FiniteFunction {
        let keep: Vec<usize> = self.essential_args().iter().map(|k| k - 1).collect();
        let mut full = vec![0; self.arity];
        FiniteFunction::from_fn(self.domain, self.codomain, keep.len(), |a| {
            for (t, &k) in keep.iter().enumerate() {
                full[k] = a[t];
            }
            self.table[self.index_of(&full)]
        })
        .expect("smaller table")
    }

    /// Least table over argument permutations after deleting inessential
    /// arguments; equal exactly for equivalent functions.
    pub fn canonical_key(&self) -> Result<FiniteFunction> {
        let core = self.delete_inessential();
        let k = core.arity;
        if k > KEY_ARITY_CAP {
            return Err(Error::CanonicalCap { n: k, cap: KEY_ARITY_CAP });
        }
        let mut perm: Vec<usize> = (0..k).collect();
        let mut best = core.clone();
        while next_permutation(&mut perm) {
            let cand = core.permuted(&perm);
            if cand.table < best.table {
                best = cand;
            }
        }
        Ok(best)
    }

    /// Boolean dual `x ↦ ¬f(¬x)`.
    pub fn dual(&self) -> Result<FiniteFunction> {
        if !self.is_boolean() {
            return Err(Error::NotBoolean);
        }
        let last = self.table.len() - 1;
        let table = (0..=last).map(|idx| 1 - self.table[last - idx]).collect();
        FiniteFunction::new(2, 2, self.arity, table)
    }

    /// Value on the constant tuple `(a, ..., a)`.
    pub fn diagonal(&self, a: usize) -> usize {
        self.eval(&vec![a; self.arity])
    }
}

pub(crate) fn decode(mut idx: usize, domain: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % domain;
        idx /= domain;
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `f(a) = g(a σ)` for some bijection after removing inessential arguments.
pub fn equivalent(f: &FiniteFunction, g: &FiniteFunction) -> Result<bool> {
    if f.domain != g.domain || f.codomain != g.codomain {
        return Ok(false);
    }
    if f.essential_args().len() != g.essential_args().len() {
        return Ok(false);
    }
    Ok(f.canonical_key()? == g.canonical_key()?)
}

/// Multiset of canonical keys of all identification minors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FunctionDeck(Multiset<FiniteFunction>);

impl FunctionDeck {
    pub fn cards(&self) -> &Multiset<FiniteFunction> {
        &self.0
    }

    pub fn cardinality(&self) -> usize {
        self.0.cardinality()
    }
}

pub fn function_deck(f: &FiniteFunction) -> Result<FunctionDeck> {
    let n = f.arity();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let pairs: Vec<IdentPair> = IdentPair::all(n).collect();
    let key = |p: &IdentPair| f.identification_minor(*p)?.canonical_key();
    #[cfg(feature = "parallel")]
    let keys: Result<Vec<FiniteFunction>> = {
        use rayon::prelude::*;
        pairs.par_iter().map(key).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let keys: Result<Vec<FiniteFunction>> = pairs.iter().map(key).collect();
    Ok(FunctionDeck(keys?.into_iter().collect()))
}
