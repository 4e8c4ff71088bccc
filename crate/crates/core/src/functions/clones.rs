//! Membership tests for named clones of Boolean functions.

use serde::Serialize;

use super::FiniteFunction;
use crate::error::{Error, Result};

fn boolean(f: &FiniteFunction) -> Result<()> {
    if f.is_boolean() {
        Ok(())
    } else {
        Err(Error::NotBoolean)
    }
}

pub fn preserves_0(f: &FiniteFunction) -> Result<bool> {
    boolean(f)?;
    Ok(f.diagonal(0) == 0)
}

pub fn preserves_1(f: &FiniteFunction) -> Result<bool> {
    boolean(f)?;
    Ok(f.diagonal(1) == 1)
}

pub fn is_monotone(f: &FiniteFunction) -> Result<bool> {
    boolean(f)?;
    let t = f.table();
    Ok((0..t.len()).all(|idx| (0..f.arity()).all(|bit| idx >> bit & 1 == 1 || t[idx] <= t[idx | 1 << bit])))
}

pub fn is_self_dual(f: &FiniteFunction) -> Result<bool> {
    Ok(&f.dual()? == f)
}

/// Rank of a separating condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank {
    Finite(usize),
    Infinite,
}

/// Every subset of `f⁻¹(a)` of size at most `rank` has a coordinate that is
/// constantly `a`.
pub fn a_separating(f: &FiniteFunction, a: usize, rank: Rank) -> Result<bool> {
    boolean(f)?;
    if a > 1 {
        return Err(Error::Function(format!("separating value must be 0 or 1, got {a}")));
    }
    let full = (1usize << f.arity()) - 1;
    // Tuples recoded so that coordinates equal to `a` are set bits.
    let points: Vec<usize> = f
        .table()
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v == a)
        .map(|(idx, _)| if a == 1 { idx } else { !idx & full })
        .collect();
    let limit = match rank {
        Rank::Finite(m) if m < 2 => return Err(Error::Function(format!("rank must be at least 2, got {m}"))),
        Rank::Finite(m) => m.min(points.len()),
        Rank::Infinite => points.len(),
    };
    if limit == points.len() {
        return Ok(points.iter().fold(full, |acc, &p| acc & p) != 0 || points.is_empty());
    }
    Ok(separated(&points, 0, full, limit))
}

fn separated(points: &[usize], start: usize, common: usize, left: usize) -> bool {
    if common == 0 {
        return false;
    }
    if left == 0 {
        return true;
    }
    (start..points.len()).all(|k| separated(points, k + 1, common & points[k], left - 1))
}

/// Constants and conjunctions of arguments.
pub fn in_lambda(f: &FiniteFunction) -> Result<bool> {
    boolean(f)?;
    Ok(matches_connective(f, true))
}

/// Constants and disjunctions of arguments.
pub fn in_v(f: &FiniteFunction) -> Result<bool> {
    boolean(f)?;
    Ok(matches_connective(f, false))
}

fn matches_connective(f: &FiniteFunction, conjunction: bool) -> bool {
    let ess = f.essential_args();
    if ess.is_empty() {
        return true;
    }
    let n = f.arity();
    let mask: usize = ess.iter().map(|&i| 1 << (n - i)).sum();
    f.table().iter().enumerate().all(|(idx, &v)| {
        let hit = if conjunction { idx & mask == mask } else { idx & mask != 0 };
        v == usize::from(hit)
    })
}

/// Affine over the two-element field.
pub fn is_linear(f: &FiniteFunction) -> Result<bool> {
    boolean(f)?;
    let n = f.arity();
    let t = f.table();
    let c0 = t[0];
    let coeff: usize = (0..n).filter(|&bit| t[1 << bit] != c0).map(|bit| 1 << bit).sum();
    Ok(t.iter().enumerate().all(|(idx, &v)| v == c0 ^ ((idx & coeff).count_ones() as usize & 1)))
}

/// Membership in the basic clones and the intersections used for
/// classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CloneReport {
    pub t0: bool,
    pub t1: bool,
    pub monotone: bool,
    pub self_dual: bool,
    pub linear: bool,
    pub lambda: bool,
    pub v: bool,
    pub u_inf: bool,
    pub w_inf: bool,
}

impl CloneReport {
    /// Preserves both constants.
    pub fn t_c(&self) -> bool {
        self.t0 && self.t1
    }

    pub fn m_c(&self) -> bool {
        self.monotone && self.t_c()
    }

    pub fn sm(&self) -> bool {
        self.self_dual && self.monotone
    }

    pub fn m_c_u_inf(&self) -> bool {
        self.m_c() && self.u_inf
    }

    pub fn m_c_w_inf(&self) -> bool {
        self.m_c() && self.w_inf
    }

    /// Named entries in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("T0", self.t0),
            ("T1", self.t1),
            ("M", self.monotone),
            ("S", self.self_dual),
            ("L", self.linear),
            ("Λ", self.lambda),
            ("V", self.v),
            ("U_∞", self.u_inf),
            ("W_∞", self.w_inf),
            ("T_c", self.t_c()),
            ("M_c", self.m_c()),
            ("SM", self.sm()),
            ("M_cU_∞", self.m_c_u_inf()),
            ("M_cW_∞", self.m_c_w_inf()),
        ]
    }
}

pub fn clone_report(f: &FiniteFunction) -> Result<CloneReport> {
    Ok(CloneReport {
        t0: preserves_0(f)?,
        t1: preserves_1(f)?,
        monotone: is_monotone(f)?,
        self_dual: is_self_dual(f)?,
        linear: is_linear(f)?,
        lambda: in_lambda(f)?,
        v: in_v(f)?,
        u_inf: a_separating(f, 1, Rank::Infinite)?,
        w_inf: a_separating(f, 0, Rank::Infinite)?,
    })
}
