//! The braided module algebra H_I: free words in the generators x_i, y_i
//! reduced to a fixed PBW normal form.
//!
//! The defining relations, for i < j:
//!
//! ```text
//!   x_i y_i = q y_i x_i
//!   x_j x_i = q^2 x_i x_j          y_j y_i = q^2 y_i y_j
//!   x_j y_i = q y_i x_j + (q^2 - 1) x_i y_j
//!   y_j x_i = q x_i y_j
//! ```
//!
//! The normal form fixes the basis with indices ascending left to right and,
//! within each index, the x-power before the y-power. Several operators in
//! this crate are defined only on this basis, so every `Element` is kept
//! normalized at all times.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

pub type Index = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterKind {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub kind: LetterKind,
    pub index: Index,
}

pub fn x(i: Index) -> Letter {
    Letter { kind: LetterKind::X, index: i }
}

pub fn y(i: Index) -> Letter {
    Letter { kind: LetterKind::Y, index: i }
}

/// A free word, prior to normalization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

/// One PBW factor x_i^a y_i^b.
pub type Factor = (Index, u32, u32);

/// A PBW basis monomial: factors with strictly increasing indices, each with
/// xexp + yexp >= 1 and the x-power before the y-power.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PBWMonomial {
    factors: Vec<Factor>,
}

impl PBWMonomial {
    pub fn unit() -> Self {
        PBWMonomial { factors: vec![] }
    }

    /// Construct from factors; validates the basis invariants.
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidInput("factor indices must strictly increase".into()));
            }
        }
        if factors.iter().any(|&(_, a, b)| a + b == 0) {
            return Err(Error::InvalidInput("empty factor".into()));
        }
        Ok(PBWMonomial { factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree_in(&self, i: Index) -> u32 {
        self.factors
            .iter()
            .find(|&&(j, _, _)| j == i)
            .map_or(0, |&(_, a, b)| a + b)
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, a, b)| a + b).sum()
    }

    /// K-eigenvalue exponent: total y-degree minus total x-degree.
    pub fn weight(&self) -> i64 {
        self.factors
            .iter()
            .map(|&(_, a, b)| b as i64 - a as i64)
            .sum()
    }

    pub fn multidegree(&self) -> BTreeMap<Index, u32> {
        self.factors.iter().map(|&(i, a, b)| (i, a + b)).collect()
    }

    /// Letters of the monomial, left to right.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.total_degree() as usize);
        for &(i, a, b) in &self.factors {
            for _ in 0..a {
                out.push(x(i));
            }
            for _ in 0..b {
                out.push(y(i));
            }
        }
        out
    }
}

/// A normalized element of H_I: a sparse linear combination of PBW monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<PBWMonomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Element::from_term(PBWMonomial::unit(), Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Element::from_term(PBWMonomial::unit(), c)
    }

    pub fn from_term(m: PBWMonomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    pub fn from_letter(l: Letter) -> Self {
        let (a, b) = match l.kind {
            LetterKind::X => (1, 0),
            LetterKind::Y => (0, 1),
        };
        Element::from_term(PBWMonomial { factors: vec![(l.index, a, b)] }, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &PBWMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.add(&c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect(),
        }
    }

    /// Right multiplication by a single letter, renormalizing.
    pub fn mul_letter(&self, l: Letter) -> Self {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            for (c2, m2) in monomial_mul_letter(m, l) {
                out.add_term(m2, c.mul(&c2));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Element::zero();
        for (m2, c2) in &other.terms {
            let mut partial = Element::zero();
            for (m1, c1) in &self.terms {
                partial.add_term(m1.clone(), c1.mul(c2));
            }
            for l in m2.letters() {
                partial = partial.mul_letter(l);
            }
            out = out.add(&partial);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Element::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The star involution: antihomomorphism with x_i^* = x_i, y_i^* = y_i
    /// and the scalar star on coefficients.
    pub fn star(&self) -> Self {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            let mut letters = m.letters();
            letters.reverse();
            out = out.add(&normalize(&Word(letters)).scale(&c.star()));
        }
        out
    }

    /// Indices occurring in the element.
    pub fn support(&self) -> BTreeSet<Index> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for &(i, _, _) in m.factors() {
                s.insert(i);
            }
        }
        s
    }

    /// Per-index total degree, if every monomial agrees; `None` otherwise.
    /// The zero element and scalars report an empty map.
    pub fn multidegree(&self) -> Option<BTreeMap<Index, u32>> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Some(BTreeMap::new()),
            Some(m) => m.multidegree(),
        };
        for m in it {
            if m.multidegree() != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.multidegree().is_some()
    }

    /// Degree in one index, if homogeneous with respect to it.
    pub fn degree_in(&self, i: Index) -> Result<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree_in(i);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Err(Error::Inhomogeneous(i)),
                _ => {}
            }
        }
        Ok(deg.unwrap_or(0))
    }

    /// K-eigenvalue exponent (K a = q^{w/2} a), if uniform.
    pub fn weight(&self) -> Option<i64> {
        let mut w = None;
        for m in self.terms.keys() {
            let mw = m.weight();
            match w {
                None => w = Some(mw),
                Some(prev) if prev != mw => return None,
                _ => {}
            }
        }
        Some(w.unwrap_or(0))
    }

    /// Total degree (L-eigenvalue exponent), if uniform.
    pub fn total_degree(&self) -> Option<u32> {
        let mut d = None;
        for m in self.terms.keys() {
            let md = m.total_degree();
            match d {
                None => d = Some(md),
                Some(prev) if prev != md => return None,
                _ => {}
            }
        }
        Some(d.unwrap_or(0))
    }

    /// True if some coefficient is nonzero at s = s0 (fast pre-check for
    /// nonzero elements; a `false` is inconclusive at poles).
    pub fn definitely_nonzero_at(&self, s0: &Rat) -> bool {
        self.terms
            .values()
            .any(|c| c.eval(s0).map_or(false, |v| !num_traits::Zero::is_zero(&v)))
    }
}

/// Push one letter into a PBW monomial from the right.
fn monomial_mul_letter(m: &PBWMonomial, l: Letter) -> Vec<(Scalar, PBWMonomial)> {
    // work items: (coeff, factors, letter, position); the letter still has to
    // pass factors[..pos] from the right.
    let mut out = Vec::new();
    let mut work = vec![(Scalar::one(), m.factors.clone(), l, m.factors.len())];
    while let Some((coeff, factors, letter, pos)) = work.pop() {
        if pos == 0 || factors[pos - 1].0 < letter.index {
            // settle: any equal-index factor would have been merged while
            // passing, so a fresh factor is inserted here
            let mut f = factors.clone();
            let nf = match letter.kind {
                LetterKind::X => (letter.index, 1, 0),
                LetterKind::Y => (letter.index, 0, 1),
            };
            f.insert(pos, nf);
            out.push((coeff, PBWMonomial { factors: f }));
            continue;
        }
        let (i, a, b) = factors[pos - 1];
        if letter.index == i {
            let mut f = factors.clone();
            match letter.kind {
                LetterKind::Y => {
                    f[pos - 1] = (i, a, b + 1);
                    out.push((coeff, PBWMonomial { factors: f }));
                }
                LetterKind::X => {
                    // x_i^a y_i^b x_i = q^{-b} x_i^{a+1} y_i^b
                    f[pos - 1] = (i, a + 1, b);
                    out.push((coeff.mul(&Scalar::q_pow(-(b as i64))), PBWMonomial { factors: f }));
                }
            }
            continue;
        }
        // letter.index < i: pass the factor to the left
        match letter.kind {
            LetterKind::X => {
                // x_i^a y_i^b x_j = q^{2a+b} x_j x_i^a y_i^b
                let c = coeff.mul(&Scalar::q_pow(2 * a as i64 + b as i64));
                work.push((c, factors, letter, pos - 1));
            }
            LetterKind::Y => {
                // x_i^a y_i^b y_j = q^{a+2b} y_j x_i^a y_i^b
                //                 + q^{2b} (q^{2a}-1) x_j x_i^{a-1} y_i^{b+1}
                let c1 = coeff.mul(&Scalar::q_pow(a as i64 + 2 * b as i64));
                work.push((c1, factors.clone(), letter, pos - 1));
                if a > 0 {
                    let c2 = coeff.mul(&Scalar::q_pow(2 * b as i64)).mul(
                        &Scalar::q_pow(2 * a as i64).sub(&Scalar::one()),
                    );
                    let mut f = factors;
                    f[pos - 1] = (i, a - 1, b + 1);
                    work.push((c2, f, x(letter.index), pos - 1));
                }
            }
        }
    }
    out
}

/// Normalize a free word into the PBW basis.
pub fn normalize(w: &Word) -> Element {
    let mut acc = Element::one();
    for &l in &w.0 {
        acc = acc.mul_letter(l);
    }
    acc
}

/// Reduction strategy for the rewriting normalizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostFirst,
    RightmostFirst,
}

/// Naive adjacent-transposition rewriting, used as an independent oracle for
/// the production normalizer. Applies the defining relations one adjacent
/// pair at a time until no pair violates the PBW order.
pub fn normalize_rewrite(w: &Word, strategy: Strategy) -> Element {
    fn violation(letters: &[Letter], strategy: Strategy) -> Option<usize> {
        let idx: Vec<usize> = (0..letters.len().saturating_sub(1)).collect();
        let check = |p: usize| {
            let (u, v) = (letters[p], letters[p + 1]);
            u.index > v.index
                || (u.index == v.index && u.kind == LetterKind::Y && v.kind == LetterKind::X)
        };
        match strategy {
            Strategy::LeftmostFirst => idx.into_iter().find(|&p| check(p)),
            Strategy::RightmostFirst => idx.into_iter().rev().find(|&p| check(p)),
        }
    }

    let q = Scalar::q();
    let q2 = Scalar::q_pow(2);
    let mut out = Element::zero();
    let mut work = vec![(Scalar::one(), w.0.clone())];
    while let Some((coeff, letters)) = work.pop() {
        let p = match violation(&letters, strategy) {
            None => {
                // sorted: compress into a PBW monomial
                let mut factors: Vec<Factor> = Vec::new();
                for l in &letters {
                    match factors.last_mut() {
                        Some(f) if f.0 == l.index => match l.kind {
                            LetterKind::X => f.1 += 1,
                            LetterKind::Y => f.2 += 1,
                        },
                        _ => factors.push(match l.kind {
                            LetterKind::X => (l.index, 1, 0),
                            LetterKind::Y => (l.index, 0, 1),
                        }),
                    }
                }
                out.add_term(PBWMonomial { factors }, coeff);
                continue;
            }
            Some(p) => p,
        };
        let (u, v) = (letters[p], letters[p + 1]);
        let mut swapped = letters.clone();
        swapped.swap(p, p + 1);
        if u.index == v.index {
            // y_i x_i = q^{-1} x_i y_i
            work.push((coeff.mul(&Scalar::q_pow(-1)), swapped));
        } else {
            match (u.kind, v.kind) {
                (LetterKind::X, LetterKind::X) | (LetterKind::Y, LetterKind::Y) => {
                    work.push((coeff.mul(&q2), swapped));
                }
                (LetterKind::Y, LetterKind::X) => {
                    // y_j x_i = q x_i y_j
                    work.push((coeff.mul(&q), swapped));
                }
                (LetterKind::X, LetterKind::Y) => {
                    // x_j y_i = q y_i x_j + (q^2 - 1) x_i y_j
                    work.push((coeff.mul(&q), swapped));
                    let mut replaced = letters.clone();
                    replaced[p] = x(v.index);
                    replaced[p + 1] = y(u.index);
                    work.push((coeff.mul(&q2.sub(&Scalar::one())), replaced));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Display and JSON
// ---------------------------------------------------------------------------

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        for &(i, a, b) in &self.factors {
            if a == 1 {
                parts.push(format!("x[{i}]"));
            } else if a > 1 {
                parts.push(format!("x[{i}]^{a}"));
            }
            if b == 1 {
                parts.push(format!("y[{i}]"));
            } else if b > 1 {
                parts.push(format!("y[{i}]^{b}"));
            }
        }
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.display_q();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => {
                    (true, rest.to_string())
                }
                _ => (false, cs),
            };
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let needs_parens = mag.contains(" + ") || mag.contains(" - ");
            if m.is_unit() {
                if needs_parens {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else if needs_parens {
                write!(f, "({mag})*{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct TermRepr {
    monomial: Vec<(Index, u32, u32)>,
    coef: Scalar,
}

impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr { monomial: m.factors.clone(), coef: c.clone() })
            .collect();
        v.serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<TermRepr>::deserialize(de)?;
        let mut out = Element::zero();
        for t in v {
            let m = PBWMonomial::new(t.monomial).map_err(D::Error::custom)?;
            out.add_term(m, t.coef);
        }
        Ok(out)
    }
}
