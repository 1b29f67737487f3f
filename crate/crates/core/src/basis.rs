//! Enumeration of admissible words of a given bidegree.

use crate::error::{Error, Result};
use crate::modular::Prime;
use crate::term::{display_key, Generator, Grading, Monomial};

/// All admissible words with exactly `s` power letters and internal degree
/// `n` under the standard grading, in display order.
pub fn admissible_basis(p: Prime, n: u64, s: u64, grading: &Grading) -> Result<Vec<Monomial>> {
    if !grading.is_standard(p) {
        return Err(Error::InvalidGrading);
    }
    let step = 2 * (p.get() as u64 - 1);
    let mut out = Vec::new();
    // (epsilon_j, t_j) pairs collected from the right
    let mut suffix: Vec<(bool, u64)> = Vec::with_capacity(s as usize);
    descend(p.get() as u64, step, n, s, &mut suffix, &mut out);
    out.sort_by_cached_key(|m| display_key(p, m));
    Ok(out)
}

fn descend(q: u64, step: u64, remaining: u64, todo: u64, suffix: &mut Vec<(bool, u64)>, out: &mut Vec<Monomial>) {
    if todo == 0 {
        // only the leading epsilon_0 is left
        if remaining <= 1 {
            out.push(assemble(remaining == 1, suffix));
        }
        return;
    }
    for eps in [false, true] {
        let e = eps as u64;
        if e > remaining {
            continue;
        }
        let min_t = match suffix.last() {
            // t_j >= p t_{j+1} + eps_j
            Some(&(_, next)) => q * next + e,
            // the rightmost power is unconstrained
            None => 0,
        };
        let budget = remaining - e;
        let mut t = min_t;
        while step * t <= budget {
            suffix.push((eps, t));
            descend(q, step, budget - step * t, todo - 1, suffix, out);
            suffix.pop();
            t += 1;
        }
    }
}

fn assemble(eps0: bool, suffix: &[(bool, u64)]) -> Monomial {
    let mut w = Vec::with_capacity(2 * suffix.len() + 1);
    if eps0 {
        w.push(Generator::Beta);
    }
    for &(eps, t) in suffix.iter().rev() {
        w.push(Generator::Power(t as u32));
        if eps {
            w.push(Generator::Beta);
        }
    }
    Monomial::new(w)
}
