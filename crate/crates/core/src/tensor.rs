//! Tensor powers of the algebra with the Koszul sign rule
//! `(a ⊗ b)(c ⊗ d) = (-1)^(|b||c|) ac ⊗ bd`, where `|x|` is the internal
//! (first) degree.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::modular::{Fp, Prime};
use crate::term::{display_key, Element, Grading, Monomial};

/// A linear combination of `N`-fold tensors of words, zero coefficients
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor<const N: usize> {
    terms: BTreeMap<[Monomial; N], Fp>,
}

pub type TensorElement = Tensor<2>;
pub type TensorMonomial = [Monomial; 2];

impl<const N: usize> Default for Tensor<N> {
    fn default() -> Self {
        Tensor { terms: BTreeMap::new() }
    }
}

impl<const N: usize> Tensor<N> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 ⊗ ... ⊗ 1`.
    pub fn one() -> Self {
        Self::basis(std::array::from_fn(|_| Monomial::unit()))
    }

    pub fn basis(factors: [Monomial; N]) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(factors, Fp::ONE);
        Tensor { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ([Monomial; N], Fp)>>(p: Prime, iter: I) -> Self {
        let mut t = Self::zero();
        for (k, c) in iter {
            t.add_term(p, k, c);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: &[Monomial; N]) -> Fp {
        self.terms.get(k).copied().unwrap_or(Fp::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial; N], Fp)> {
        self.terms.iter().map(|(k, c)| (k, *c))
    }

    pub fn add_term(&mut self, p: Prime, k: [Monomial; N], c: Fp) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = p.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, p: Prime, other: &Self, c: Fp) {
        for (k, d) in other.terms() {
            self.add_term(p, k.clone(), p.mul(c, d));
        }
    }

    pub fn sub(&self, p: Prime, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(p, other, p.neg(Fp::ONE));
        out
    }

    pub fn scale(&self, p: Prime, c: Fp) -> Self {
        let mut out = Self::zero();
        out.add_scaled(p, self, c);
        out
    }

    /// Normalizes every factor of every term and expands multilinearly.
    pub fn normalize(&self, alg: &Algebra) -> Result<Self> {
        let p = alg.prime();
        let mut out = Self::zero();
        for (k, c) in self.terms() {
            let factors = k.iter().map(|m| alg.normalize_monomial(m)).collect::<Result<Vec<_>>>()?;
            expand_into(p, &factors, c, &mut out);
        }
        Ok(out)
    }

    /// Koszul-signed product; each factor of the result is normalized.
    pub fn multiply(&self, other: &Self, grading: &Grading, alg: &Algebra) -> Result<Self> {
        let p = alg.prime();
        let mut out = Self::zero();
        for (a, c) in self.terms() {
            let a_odd: [bool; N] = std::array::from_fn(|i| grading.is_odd(&a[i]));
            for (b, d) in other.terms() {
                // moving b_i left past a_j for every j > i
                let mut odd = false;
                for i in 0..N {
                    if grading.is_odd(&b[i]) {
                        odd ^= a_odd[i + 1..].iter().filter(|x| **x).count() % 2 == 1;
                    }
                }
                let coeff = p.mul(p.mul(c, d), p.sign(odd as u64));
                let factors = (0..N).map(|i| alg.multiply_monomials(&a[i], &b[i])).collect::<Result<Vec<_>>>()?;
                expand_into(p, &factors, coeff, &mut out);
            }
        }
        Ok(out)
    }

    /// Applies a linear map to one tensor slot, yielding an `N`-fold tensor.
    pub fn map_slot<F>(&self, p: Prime, slot: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&Monomial) -> Result<Element>,
    {
        let mut out = Self::zero();
        for (k, c) in self.terms() {
            let image = f(&k[slot])?;
            for (m, d) in image.terms() {
                let mut key = k.clone();
                key[slot] = m.clone();
                out.add_term(p, key, p.mul(c, d));
            }
        }
        Ok(out)
    }

    /// Terms in display order (factorwise display order).
    pub fn sorted_terms(&self, p: Prime) -> Vec<(&[Monomial; N], Fp)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_cached_key(|(k, _)| k.iter().map(|m| display_key(p, m)).collect::<Vec<_>>());
        v
    }

    pub fn to_text(&self, p: Prime) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms(p)
            .into_iter()
            .map(|(k, c)| {
                let body = k.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ⊗ ");
                if c == Fp::ONE {
                    body
                } else {
                    format!("{c} ({body})")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Tensor<2> {
    pub fn pure(left: Monomial, right: Monomial) -> Self {
        Self::basis([left, right])
    }

    /// `x ⊗ y` for elements, expanded bilinearly.
    pub fn of_elements(p: Prime, x: &Element, y: &Element) -> Self {
        let mut out = Self::zero();
        expand_into(p, &[x.clone(), y.clone()], Fp::ONE, &mut out);
        out
    }
}

/// Adds `c * (f_1 ⊗ ... ⊗ f_N)` to `out`.
fn expand_into<const N: usize>(p: Prime, factors: &[Element], c: Fp, out: &mut Tensor<N>) {
    debug_assert_eq!(factors.len(), N);
    if c.is_zero() || factors.iter().any(Element::is_zero) {
        return;
    }
    let mut key: Vec<Monomial> = Vec::with_capacity(N);
    fn go<const N: usize>(p: Prime, factors: &[Element], c: Fp, key: &mut Vec<Monomial>, out: &mut Tensor<N>) {
        if key.len() == N {
            let k: [Monomial; N] = std::array::from_fn(|i| key[i].clone());
            out.add_term(p, k, c);
            return;
        }
        for (m, d) in factors[key.len()].terms() {
            key.push(m.clone());
            go(p, factors, p.mul(c, d), key, out);
            key.pop();
        }
    }
    go(p, factors, c, &mut key, out);
}

/// Product in the tensor square.
pub fn tensor_multiply(
    x: &TensorElement,
    y: &TensorElement,
    grading: &Grading,
    alg: &Algebra,
) -> Result<TensorElement> {
    x.multiply(y, grading, alg)
}

pub fn normalize_tensor(t: &TensorElement, alg: &Algebra) -> Result<TensorElement> {
    t.normalize(alg)
}
