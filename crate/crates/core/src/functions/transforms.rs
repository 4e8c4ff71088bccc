//! Table transforms that commute with identification minors.

use super::FiniteFunction;
use crate::error::{Error, Result};

fn check_bijection(map: &[usize], size: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; size];
    if map.len() != size {
        return Err(Error::Function(format!("{what} must have {size} entries")));
    }
    for &v in map {
        if v >= size || std::mem::replace(&mut seen[v], true) {
            return Err(Error::Function(format!("{what} is not a permutation")));
        }
    }
    Ok(())
}

/// `x ↦ psi(f(phi(x_1), ..., phi(x_n)))`.
pub fn relabel(f: &FiniteFunction, phi: &[usize], psi: &[usize]) -> Result<FiniteFunction> {
    check_bijection(phi, f.domain(), "phi")?;
    check_bijection(psi, f.codomain(), "psi")?;
    let mut inner = vec![0; f.arity()];
    FiniteFunction::from_fn(f.domain(), f.codomain(), f.arity(), |x| {
        for (slot, &a) in inner.iter_mut().zip(x) {
            *slot = phi[a];
        }
        psi[f.eval(&inner)]
    })
}

/// Replaces the value on each constant tuple `(a, ..., a)` by `delta[a]`.
pub fn modify_diagonal(f: &FiniteFunction, delta: &[usize]) -> Result<FiniteFunction> {
    if delta.len() != f.domain() || delta.iter().any(|&v| v >= f.codomain()) {
        return Err(Error::Function("delta must map the domain into the codomain".into()));
    }
    FiniteFunction::from_fn(f.domain(), f.codomain(), f.arity(), |x| {
        if x.iter().all(|&a| a == x[0]) && !x.is_empty() {
            delta[x[0]]
        } else {
            f.eval(x)
        }
    })
}

fn set_mask(x: &[usize]) -> usize {
    x.iter().fold(0, |acc, &a| acc | 1 << a)
}

/// Extends to carriers `0..domain` and `0..codomain`; tuples leaving the
/// old domain take `theta[mask]`, where `mask` has bit `a` set for every
/// entry `a` of the tuple.
pub fn extend(f: &FiniteFunction, domain: usize, codomain: usize, theta: &[usize]) -> Result<FiniteFunction> {
    if domain < f.domain() || codomain < f.codomain() {
        return Err(Error::Function("new carriers must contain the old ones".into()));
    }
    if domain > 20 {
        return Err(Error::Function("theta table too large".into()));
    }
    if theta.len() != 1 << domain || theta.iter().any(|&v| v >= codomain) {
        return Err(Error::Function(format!("theta must have {} entries below {codomain}", 1usize << domain)));
    }
    FiniteFunction::from_fn(domain, codomain, f.arity(), |x| {
        if x.iter().all(|&a| a < f.domain()) {
            f.eval(x)
        } else {
            theta[set_mask(x)]
        }
    })
}

/// Domain `A × {0, 1}` with `(a, b)` encoded as `a + b|A|`. Tuples with a
/// common second coordinate evaluate `f` on the first coordinates; the rest
/// take `theta[mask]` over the encoded entries.
pub fn duplicate_pad(f: &FiniteFunction, theta: &[usize]) -> Result<FiniteFunction> {
    let d = f.domain();
    if 2 * d > 20 {
        return Err(Error::Function("theta table too large".into()));
    }
    if theta.len() != 1 << (2 * d) || theta.iter().any(|&v| v >= f.codomain()) {
        return Err(Error::Function(format!("theta must have {} entries", 1usize << (2 * d))));
    }
    let mut inner = vec![0; f.arity()];
    FiniteFunction::from_fn(2 * d, f.codomain(), f.arity(), |x| {
        let layer = x.first().map_or(0, |&e| e / d);
        if x.iter().all(|&e| e / d == layer) {
            for (slot, &e) in inner.iter_mut().zip(x) {
                *slot = e % d;
            }
            f.eval(&inner)
        } else {
            theta[set_mask(x)]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::equivalent;

    fn and2() -> FiniteFunction {
        FiniteFunction::from_fn(2, 2, 2, |x| x[0] & x[1]).unwrap()
    }

    #[test]
    fn identity_relabel() {
        let f = and2();
        assert_eq!(relabel(&f, &[0, 1], &[0, 1]).unwrap(), f);
        let g = relabel(&f, &[1, 0], &[1, 0]).unwrap();
        assert_eq!(g, f.dual().unwrap());
        assert!(relabel(&f, &[0, 0], &[0, 1]).is_err());
    }

    #[test]
    fn diagonal_is_replaced() {
        let f = modify_diagonal(&and2(), &[1, 0]).unwrap();
        assert_eq!(f.table(), &[1, 0, 0, 0]);
    }

    /// Equal modified functions need not come from equivalent ones when the
    /// diagonals differ.
    #[test]
    fn diagonal_can_hide_differences() {
        let zero = FiniteFunction::constant(2, 2, 2, 0).unwrap();
        let identity = [0, 1];
        let a = modify_diagonal(&zero, &identity).unwrap();
        let b = modify_diagonal(&and2(), &identity).unwrap();
        assert!(equivalent(&a, &b).unwrap());
        assert!(!equivalent(&zero, &and2()).unwrap());
    }

    #[test]
    fn extension_keeps_old_values() {
        let theta: Vec<usize> = (0..8).map(|m: usize| m.count_ones() as usize % 3).collect();
        let f = extend(&and2(), 3, 3, &theta).unwrap();
        assert_eq!(f.eval(&[1, 1]), 1);
        assert_eq!(f.eval(&[2, 0]), theta[0b101]);
        assert!(extend(&and2(), 1, 2, &theta).is_err());
    }

    #[test]
    fn padding_doubles_domain() {
        let theta = vec![1; 16];
        let f = duplicate_pad(&and2(), &theta).unwrap();
        assert_eq!(f.domain(), 4);
        assert_eq!(f.eval(&[3, 3]), 1);
        assert_eq!(f.eval(&[2, 3]), 0);
        assert_eq!(f.eval(&[2, 1]), 1);
        assert_eq!(f.eval(&[0, 3]), 1);
    }
}
