use rug::{Integer, Rational};

use super::SeriesError;
use crate::algebra::{Atom, SymbolicValue};
use crate::numerics::factorial;

fn tilde_t(args: Vec<u32>) -> Atom {
    match args.len() {
        1 => Atom::TildeT(args[0]),
        2 => Atom::DoubleTildeT(args[0], args[1]),
        _ => Atom::MultiTildeT(args),
    }
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// T_{p₁…p_m,q} as a ℚ-combination of t̃-values: for every composition ξ of m and
/// every permutation σ of the p's, the block sums of σ(p) under ξ give
/// t̃(q, block₁, block₂, …) with weight 1/(ξ₁!⋯ξ_k!).
pub fn tsum_as_tvalues(p_list: &[u32], q: u32) -> Result<SymbolicValue, SeriesError> {
    let m = p_list.len();
    if m == 0 || m > 3 {
        return Err(SeriesError::Unsupported(format!("degree {m} outside 1..=3")));
    }
    if q < 2 {
        return Err(SeriesError::Divergent(format!("divergent family: q = {q}")));
    }
    let mut out = SymbolicValue::zero();
    let perms = permutations(p_list);
    for xi in compositions(m) {
        let mut den = Integer::from(1);
        for &x in &xi {
            den *= factorial(x as u32);
        }
        let w = Rational::from((Integer::from(1), den));
        for sigma in &perms {
            let mut args = vec![q];
            let mut pos = 0;
            for &len in &xi {
                args.push(sigma[pos..pos + len].iter().sum());
                pos += len;
            }
            out.add_term(crate::algebra::Monomial::atom(tilde_t(args)), w.clone());
        }
    }
    Ok(out)
}
