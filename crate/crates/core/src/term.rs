//! Words in the generators `b` (the Bockstein) and `P^k`, their F_p-linear
//! combinations, and bigradings.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{Fp, Prime};

/// A letter of the free algebra. `Beta` sorts before every power, and
/// powers sort by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Beta,
    Power(u32),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Beta => f.write_str("b"),
            Generator::Power(k) => write!(f, "P{k}"),
        }
    }
}

/// A word in the generators. The empty word is the unit; `P0` is an
/// ordinary letter and never the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(word: Vec<Generator>) -> Self {
        Monomial(word)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut w = Vec::with_capacity(self.0.len() + other.0.len());
        w.extend_from_slice(&self.0);
        w.extend_from_slice(&other.0);
        Monomial(w)
    }

    /// Number of power letters.
    pub fn power_count(&self) -> usize {
        self.0.iter().filter(|g| matches!(g, Generator::Power(_))).count()
    }

    /// True iff the word has the shape `b^e0 P^t1 b^e1 ... P^ts b^es` with
    /// every `e` in {0, 1} and `t_j >= p t_{j+1} + e_j` for `1 <= j < s`.
    pub fn is_admissible(&self, p: Prime) -> bool {
        first_redex(&self.0, p, Strategy::Leftmost).is_none()
    }

    /// The multiplicative counit: 1 when every letter is `P0` (the unit
    /// included), 0 otherwise.
    pub fn counit(&self) -> Fp {
        if self.0.iter().all(|g| *g == Generator::Power(0)) {
            Fp::ONE
        } else {
            Fp::ZERO
        }
    }
}

impl From<Vec<Generator>> for Monomial {
    fn from(word: Vec<Generator>) -> Self {
        Monomial(word)
    }
}

impl FromIterator<Generator> for Monomial {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Monomial(iter.into_iter().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Order in which reducible patterns are picked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

/// A reducible pattern located inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Redex {
    /// `b b` starting at the index.
    BetaSquare(usize),
    /// `P^a P^b` with `a < pb`, starting at the index.
    Powers { at: usize, a: u32, b: u32 },
    /// `P^a b P^b` with `a <= pb`, starting at the index.
    PowerBetaPower { at: usize, a: u32, b: u32 },
}

fn redex_at(w: &[Generator], i: usize, p: Prime) -> Option<Redex> {
    use Generator::*;
    let q = p.get() as u64;
    match (w[i], w.get(i + 1), w.get(i + 2)) {
        (Beta, Some(Beta), _) => Some(Redex::BetaSquare(i)),
        (Power(a), Some(Power(b)), _) if (a as u64) < q * *b as u64 => Some(Redex::Powers { at: i, a, b: *b }),
        (Power(a), Some(Beta), Some(Power(b))) if (a as u64) <= q * *b as u64 => {
            Some(Redex::PowerBetaPower { at: i, a, b: *b })
        }
        _ => None,
    }
}

pub(crate) fn first_redex(w: &[Generator], p: Prime, strategy: Strategy) -> Option<Redex> {
    match strategy {
        Strategy::Leftmost => (0..w.len()).find_map(|i| redex_at(w, i, p)),
        Strategy::Rightmost => (0..w.len()).rev().find_map(|i| redex_at(w, i, p)),
    }
}

/// `(n, s)`: internal degree and coalgebra index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bidegree {
    pub n: u64,
    pub s: u64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { n: 0, s: 0 };

    pub fn new(n: u64, s: u64) -> Self {
        Bidegree { n, s }
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree { n: self.n + o.n, s: self.s + o.s }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.s)
    }
}

/// An assignment of bidegrees to generators, extended additively to words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// `b` has bidegree `beta`; `P^k` has `(power.n + k * step, power.s)`.
    Concrete { beta: Bidegree, power: Bidegree, step: u64 },
    /// Only the parity of the internal degree is known: `b` is odd iff
    /// `beta_odd`, and every `P^k` is odd iff `power_odd`. Used for the
    /// scheme that admits no concrete bigrading.
    Parity { beta_odd: bool, power_odd: bool },
}

impl Grading {
    /// `|P^k| = (2k(p-1), 1)`, `|b| = (1, 0)`.
    pub fn standard(p: Prime) -> Self {
        Grading::Concrete { beta: Bidegree::new(1, 0), power: Bidegree::new(0, 1), step: 2 * (p.get() as u64 - 1) }
    }

    /// The grading of the subalgebra generated by `P^k` and `b P^k`:
    /// `|P^k| = (2k(p-1), 1)` and `|b P^k| = (2k(p-1) + 1, 2)`, i.e. `|b| = (1, 1)`.
    pub fn subalgebra_c(p: Prime) -> Self {
        Grading::Concrete { beta: Bidegree::new(1, 1), power: Bidegree::new(0, 1), step: 2 * (p.get() as u64 - 1) }
    }

    pub fn parity(beta_odd: bool, power_odd: bool) -> Self {
        Grading::Parity { beta_odd, power_odd }
    }

    pub fn is_standard(&self, p: Prime) -> bool {
        *self == Grading::standard(p)
    }

    pub fn generator_bidegree(&self, g: Generator) -> Result<Bidegree> {
        match (*self, g) {
            (Grading::Concrete { beta, .. }, Generator::Beta) => Ok(beta),
            (Grading::Concrete { power, step, .. }, Generator::Power(k)) => {
                Ok(Bidegree::new(power.n + k as u64 * step, power.s))
            }
            (Grading::Parity { .. }, _) => Err(Error::SymbolicGrading),
        }
    }

    pub fn bidegree_of(&self, m: &Monomial) -> Result<Bidegree> {
        m.letters().iter().try_fold(Bidegree::ZERO, |acc, g| Ok(acc + self.generator_bidegree(*g)?))
    }

    fn generator_odd(&self, g: Generator) -> bool {
        match (*self, g) {
            (Grading::Concrete { beta, .. }, Generator::Beta) => beta.n % 2 == 1,
            (Grading::Concrete { power, step, .. }, Generator::Power(k)) => (power.n + k as u64 * step) % 2 == 1,
            (Grading::Parity { beta_odd, .. }, Generator::Beta) => beta_odd,
            (Grading::Parity { power_odd, .. }, Generator::Power(_)) => power_odd,
        }
    }

    /// Parity of the internal degree of a word; this is all the Koszul sign
    /// rule needs and is defined for every grading.
    pub fn is_odd(&self, m: &Monomial) -> bool {
        m.letters().iter().filter(|g| self.generator_odd(**g)).count() % 2 == 1
    }
}

/// A finite F_p-linear combination of words. Zero coefficients are never
/// stored, so the zero element is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Fp>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::monomial(Monomial::unit())
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Fp::ONE);
        Element { terms }
    }

    pub fn generator(g: Generator) -> Self {
        Element::monomial(Monomial::new(vec![g]))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Fp)>>(p: Prime, iter: I) -> Self {
        let mut e = Element::zero();
        for (m, c) in iter {
            e.add_term(p, m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Fp {
        self.terms.get(m).copied().unwrap_or(Fp::ZERO)
    }

    /// Terms in word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Fp)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, p: Prime, m: Monomial, c: Fp) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add_scaled(&mut self, p: Prime, other: &Element, c: Fp) {
        if c.is_zero() {
            return;
        }
        for (m, d) in other.terms() {
            self.add_term(p, m.clone(), p.mul(c, d));
        }
    }

    pub fn add(&self, p: Prime, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(p, other, Fp::ONE);
        out
    }

    pub fn sub(&self, p: Prime, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(p, other, p.neg(Fp::ONE));
        out
    }

    pub fn scale(&self, p: Prime, c: Fp) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, d)| (m.clone(), p.mul(c, *d))).collect() }
    }

    /// Free (unreduced) product: bilinear extension of concatenation.
    pub fn concat(&self, p: Prime, other: &Element) -> Element {
        let mut out = Element::zero();
        for (a, c) in self.terms() {
            for (b, d) in other.terms() {
                out.add_term(p, a.concat(b), p.mul(c, d));
            }
        }
        out
    }

    /// Terms in display order: by internal degree under the standard
    /// grading, then word length, then letterwise with `b < P0 < P1 < ...`.
    pub fn sorted_terms(&self, p: Prime) -> Vec<(&Monomial, Fp)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_cached_key(|(m, _)| display_key(p, m));
        v
    }

    /// Text rendering in the surface syntax, e.g. `2 P2 P0 + b`.
    pub fn to_text(&self, p: Prime) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms(p)
            .into_iter()
            .map(|(m, c)| match (c.value(), m.is_unit()) {
                (1, _) => m.to_string(),
                (c, true) => c.to_string(),
                (c, false) => format!("{c} {m}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub(crate) fn display_key(p: Prime, m: &Monomial) -> (u64, usize, Monomial) {
    let n = Grading::standard(p).bidegree_of(m).map(|d| d.n).unwrap_or(0);
    (n, m.len(), m.clone())
}
