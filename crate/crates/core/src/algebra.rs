//! Rewriting words to admissible normal form.
//!
//! The rules are `b b = 0` and the two Adem-type families
//!
//! ```text
//! P^a P^b   = sum_{t <= a/p}     A(b, a, t)   P^(a+b-t) P^t              (a <  pb)
//! P^a b P^b = sum_{t <= a/p}     B(b, a, t) b P^(a+b-t) P^t
//!           + sum_{t <= (a-1)/p} A(b, a-1, t) P^(a+b-t) b P^t            (a <= pb)
//! ```
//!
//! A word with no instance of a left-hand side is admissible, and the
//! admissible words form a basis, so each element has a unique normal form.
//! Normal forms of single words are memoized per [`Algebra`].

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::modular::{BinomialTable, Fp, Prime};
use crate::term::{first_redex, Element, Generator, Monomial, Redex, Strategy};

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Applies one substitution at the redex chosen by `strategy`. Returns
/// `None` when the word is admissible.
pub fn rewrite_step(m: &Monomial, table: &BinomialTable, strategy: Strategy) -> Option<Element> {
    let p = table.prime();
    let w = m.letters();
    let redex = first_redex(w, p, strategy)?;
    let q = p.get();
    let mut out = Element::zero();
    let mut emit = |at: usize, len: usize, middle: &[Generator], c: Fp| {
        if c.is_zero() {
            return;
        }
        let mut word = Vec::with_capacity(w.len() + 1);
        word.extend_from_slice(&w[..at]);
        word.extend_from_slice(middle);
        word.extend_from_slice(&w[at + len..]);
        out.add_term(p, Monomial::new(word), c);
    };
    use Generator::*;
    match redex {
        Redex::BetaSquare(_) => {}
        Redex::Powers { at, a, b } => {
            for t in 0..=a / q {
                let c = table.coeff_a(b as u64, a as u64, t as u64);
                emit(at, 2, &[Power(a + b - t), Power(t)], c);
            }
        }
        Redex::PowerBetaPower { at, a, b } => {
            for t in 0..=a / q {
                let c = table.coeff_b(b as u64, a as u64, t as u64);
                emit(at, 3, &[Beta, Power(a + b - t), Power(t)], c);
            }
            if a > 0 {
                for t in 0..=(a - 1) / q {
                    let c = table.coeff_a(b as u64, a as u64 - 1, t as u64);
                    emit(at, 3, &[Power(a + b - t), Beta, Power(t)], c);
                }
            }
        }
    }
    Some(out)
}

/// Rewriting context for one prime: coefficient table, strategy, fuel and
/// a shared cache of normal forms of words.
///
/// The cache is behind a lock and only ever receives complete normal
/// forms, so an `Algebra` can be shared across threads.
#[derive(Debug)]
pub struct Algebra {
    table: BinomialTable,
    strategy: Strategy,
    fuel: u64,
    memo: RwLock<HashMap<Monomial, Element>>,
}

impl Algebra {
    pub fn new(p: Prime) -> Self {
        Algebra::with_options(p, Strategy::Leftmost, DEFAULT_FUEL)
    }

    pub fn with_options(p: Prime, strategy: Strategy, fuel: u64) -> Self {
        Algebra { table: BinomialTable::new(p), strategy, fuel: fuel.max(1), memo: RwLock::new(HashMap::new()) }
    }

    pub fn prime(&self) -> Prime {
        self.table.prime()
    }

    pub fn table(&self) -> &BinomialTable {
        &self.table
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub fn cached_words(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn rewrite_step(&self, m: &Monomial) -> Option<Element> {
        rewrite_step(m, &self.table, self.strategy)
    }

    fn cached(&self, m: &Monomial) -> Option<Element> {
        self.memo.read().unwrap().get(m).cloned()
    }

    /// Normal form of a single word together with the number of
    /// substitutions performed (cache hits cost nothing).
    pub fn normalize_monomial_counted(&self, m: &Monomial) -> Result<(Element, u64)> {
        if let Some(e) = self.cached(m) {
            return Ok((e, 0));
        }
        let mut steps = 0u64;
        // post-order walk; each frame holds a word and, once expanded, its
        // one-step rewrite
        let mut stack: Vec<(Monomial, Option<Element>)> = vec![(m.clone(), None)];
        while let Some((word, expansion)) = stack.last_mut() {
            if self.memo.read().unwrap().contains_key(word) {
                stack.pop();
                continue;
            }
            let exp = match expansion {
                Some(e) => e,
                None => match self.rewrite_step(word) {
                    None => {
                        let word = word.clone();
                        let nf = Element::monomial(word.clone());
                        self.memo.write().unwrap().insert(word, nf);
                        stack.pop();
                        continue;
                    }
                    Some(e) => {
                        steps += 1;
                        if steps > self.fuel {
                            return Err(Error::FuelExhausted { fuel: self.fuel });
                        }
                        expansion.insert(e)
                    }
                },
            };
            let missing: Vec<Monomial> = {
                let memo = self.memo.read().unwrap();
                exp.monomials().filter(|w| !memo.contains_key(*w)).cloned().collect()
            };
            if missing.is_empty() {
                let p = self.prime();
                let mut nf = Element::zero();
                {
                    let memo = self.memo.read().unwrap();
                    for (w, c) in exp.terms() {
                        nf.add_scaled(p, &memo[w], c);
                    }
                }
                let word = word.clone();
                self.memo.write().unwrap().insert(word, nf);
                stack.pop();
            } else {
                stack.extend(missing.into_iter().map(|w| (w, None)));
            }
        }
        Ok((self.cached(m).expect("normal form recorded"), steps))
    }

    pub fn normalize_monomial(&self, m: &Monomial) -> Result<Element> {
        self.normalize_monomial_counted(m).map(|(e, _)| e)
    }

    /// Unique admissible representative of `e`, with the substitution count.
    pub fn normalize_counted(&self, e: &Element) -> Result<(Element, u64)> {
        let p = self.prime();
        let mut out = Element::zero();
        let mut steps = 0;
        for (m, c) in e.terms() {
            let (nf, s) = self.normalize_monomial_counted(m)?;
            steps += s;
            out.add_scaled(p, &nf, c);
        }
        Ok((out, steps))
    }

    pub fn normalize(&self, e: &Element) -> Result<Element> {
        self.normalize_counted(e).map(|(e, _)| e)
    }

    /// The instance of a defining relation that [`Algebra::rewrite_step`]
    /// applies to `m`, as (left-hand side, right-hand side).
    pub fn applied_relation(&self, m: &Monomial) -> Option<(Monomial, Element)> {
        let w = m.letters();
        let (at, len) = match first_redex(w, self.prime(), self.strategy)? {
            Redex::BetaSquare(at) => (at, 2),
            Redex::Powers { at, .. } => (at, 2),
            Redex::PowerBetaPower { at, .. } => (at, 3),
        };
        let lhs = Monomial::new(w[at..at + len].to_vec());
        let rhs = self.rewrite_step(&lhs).expect("redex rewrites");
        Some((lhs, rhs))
    }

    /// The sequence of single substitutions taking `e` to normal form,
    /// always rewriting the first inadmissible word in word order. Each
    /// entry is the rewritten word and what replaced it.
    pub fn derivation(&self, e: &Element) -> Result<Vec<(Monomial, Element)>> {
        let p = self.prime();
        let mut current = e.clone();
        let mut steps = Vec::new();
        loop {
            let Some((m, c)) = current.terms().find(|(m, _)| !m.is_admissible(p)).map(|(m, c)| (m.clone(), c)) else {
                return Ok(steps);
            };
            if steps.len() as u64 >= self.fuel {
                return Err(Error::FuelExhausted { fuel: self.fuel });
            }
            let image = self.rewrite_step(&m).expect("inadmissible word has a redex");
            current.add_term(p, m.clone(), p.neg(c));
            current.add_scaled(p, &image, c);
            steps.push((m, image));
        }
    }

    /// Concatenation followed by normalization.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.normalize(&x.concat(self.prime(), y))
    }

    pub fn multiply_monomials(&self, x: &Monomial, y: &Monomial) -> Result<Element> {
        self.normalize_monomial(&x.concat(y))
    }
}
