//! The free coefficient algebra of universal forms, the Clebsch-Gordan
//! symbolic method, realization homomorphisms, and the catalog of named
//! universal invariants and covariants of the linear, quadratic, cubic and
//! quartic forms.
//!
//! A universal n-form is x^n A_0 + [n 1] x^{n-1} y A_1 + ... + y^n A_n with
//! abstract coefficients; the induced action on the symbols is
//!
//! ```text
//!   E[A_i] = -q^{(2i-n+2)/2} [i]   A_{i-1}     K[A_i] = q^{(n-2i)/2} A_i
//!   F[A_i] = -q^{(n-2i-4)/2} [n-i] A_{i+1}     L[A_i] = q^{n/2} A_i
//! ```
//!
//! extended to words by the twisted Leibniz rule. The symbolic method turns
//! an invariant element d, homogeneous of degree n in each point 1..k, into
//! a universal invariant by rewriting each PBW block x_j^i y_j^{n-i} as the
//! coefficient A^{(j)}_i of the realization (0j)^n.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use crate::action::{bracket, is_invariant, z1, z3, Generator};
use crate::error::{Error, Result};
use crate::forms::NForm;
use crate::pbw::{Element, PBWMonomial};
use crate::scalar::Scalar;

/// One abstract coefficient symbol A^{(form_id)}_i of a universal n-form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct CoeffSymbol {
    pub form_id: u32,
    pub n: u32,
    pub i: u32,
}

impl CoeffSymbol {
    pub fn new(form_id: u32, n: u32, i: u32) -> Result<Self> {
        if i > n {
            return Err(Error::OutOfRange(format!("symbol position {i} > degree {n}")));
        }
        Ok(CoeffSymbol { form_id, n, i })
    }

    /// K-eigenvalue s-exponent.
    fn k_exp(&self) -> i64 {
        self.n as i64 - 2 * self.i as i64
    }
}

pub type SymbolWord = Vec<CoeffSymbol>;

/// Sparse element of the free algebra on coefficient symbols. No rewriting
/// happens here: distinct words stay distinct.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FreeElement {
    terms: BTreeMap<SymbolWord, Scalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn one() -> Self {
        FreeElement::from_word(vec![], Scalar::one())
    }

    pub fn from_word(w: SymbolWord, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreeElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymbolWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &SymbolWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: SymbolWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v.mul(c))).collect(),
        }
    }

    /// Free (concatenation) product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = FreeElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.mul(c2));
            }
        }
        out
    }

    /// Rename every form id to 0 (identification of simultaneous forms).
    pub fn identify_forms(&self) -> Self {
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            let nw: SymbolWord =
                w.iter().map(|s| CoeffSymbol { form_id: 0, ..*s }).collect();
            out.add_term(nw, c.clone());
        }
        out
    }
}

/// Apply a generator of U_q(gl(2)) to a free element, by the coefficient
/// action extended with the twisted Leibniz rule.
pub fn free_act(g: Generator, a: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    for (w, c) in &a.terms {
        match g {
            Generator::K | Generator::Kinv | Generator::L | Generator::Linv => {
                let e: i64 = w
                    .iter()
                    .map(|s| match g {
                        Generator::K => s.k_exp(),
                        Generator::Kinv => -s.k_exp(),
                        Generator::L => s.n as i64,
                        Generator::Linv => -(s.n as i64),
                        _ => unreachable!(),
                    })
                    .sum();
                out.add_term(w.clone(), c.mul(&Scalar::s_pow(e)));
            }
            Generator::E | Generator::F => {
                let total: i64 = w.iter().map(|s| s.k_exp()).sum();
                let mut prefix = 0i64;
                for (t, s) in w.iter().enumerate() {
                    let suffix = total - prefix - s.k_exp();
                    let twist = Scalar::s_pow(-prefix + suffix);
                    let (coeff, ni) = match g {
                        Generator::E => {
                            if s.i == 0 {
                                prefix += s.k_exp();
                                continue;
                            }
                            // E[A_i] = -q^{(2i-n+2)/2} [i] A_{i-1}
                            (
                                Scalar::s_pow(2 * s.i as i64 - s.n as i64 + 2)
                                    .mul(&Scalar::qnum(s.i as i64))
                                    .neg(),
                                s.i - 1,
                            )
                        }
                        Generator::F => {
                            if s.i == s.n {
                                prefix += s.k_exp();
                                continue;
                            }
                            // F[A_i] = -q^{(n-2i-4)/2} [n-i] A_{i+1}
                            (
                                Scalar::s_pow(s.n as i64 - 2 * s.i as i64 - 4)
                                    .mul(&Scalar::qnum(s.n as i64 - s.i as i64))
                                    .neg(),
                                s.i + 1,
                            )
                        }
                        _ => unreachable!(),
                    };
                    let mut nw = w.clone();
                    nw[t] = CoeffSymbol { i: ni, ..*s };
                    out.add_term(nw, c.mul(&coeff).mul(&twist));
                    prefix += s.k_exp();
                }
            }
        }
    }
    out
}

/// E(a) = F(a) = 0 and K(a) = a in the free algebra.
pub fn is_universal_invariant(a: &FreeElement) -> bool {
    free_act(Generator::E, a).is_zero()
        && free_act(Generator::F, a).is_zero()
        && free_act(Generator::K, a) == *a
}

/// A universal covariant of order m: the components C_0..C_m of
/// x^{m-a} y^a with q-binomial weights. Order 0 is a universal invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct UniversalCovariant {
    pub order: u32,
    pub components: Vec<FreeElement>,
}

impl UniversalCovariant {
    pub fn invariant(a: FreeElement) -> Self {
        UniversalCovariant { order: 0, components: vec![a] }
    }

    pub fn single(&self) -> &FreeElement {
        debug_assert_eq!(self.order, 0);
        &self.components[0]
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        UniversalCovariant {
            order: self.order,
            components: self.components.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn identify_forms(&self) -> Self {
        UniversalCovariant {
            order: self.order,
            components: self.components.iter().map(|a| a.identify_forms()).collect(),
        }
    }
}

/// Componentwise covariance test: the coefficients of an m-form transform by
/// the coefficient action, which for m = 0 is the invariance predicate.
pub fn is_universal_covariant(u: &UniversalCovariant) -> bool {
    let m = u.order as i64;
    let zero = FreeElement::zero();
    for a in 0..=u.order as usize {
        let ca = &u.components[a];
        let prev = if a == 0 { &zero } else { &u.components[a - 1] };
        let next = if a == u.order as usize { &zero } else { &u.components[a + 1] };
        let a64 = a as i64;
        let e_ok = free_act(Generator::E, ca)
            == prev.scale(&Scalar::s_pow(2 * a64 - m + 2).mul(&Scalar::qnum(a64)).neg());
        let f_ok = free_act(Generator::F, ca)
            == next.scale(&Scalar::s_pow(m - 2 * a64 - 4).mul(&Scalar::qnum(m - a64)).neg());
        let k_ok = free_act(Generator::K, ca) == ca.scale(&Scalar::s_pow(m - 2 * a64));
        if !(e_ok && f_ok && k_ok) {
            return false;
        }
    }
    true
}

/// The Clebsch-Gordan symbolic method, keeping one form id per point index:
/// d must be invariant, homogeneous of degree n in each of the indices
/// 1..=k, with any index-0 content giving the covariant order. Each block
/// x_j^i y_j^{n-i} becomes the symbol A^{(j-1)}_i via the coefficient
/// dictionary of the realizations (0j)^n.
pub fn symbol_to_universal_multi(d: &Element, n: u32, k: u32) -> Result<UniversalCovariant> {
    if !is_invariant(d) {
        return Err(Error::NotInvariant);
    }
    if d.support().iter().any(|&i| i < 0 || i > k as i32) {
        return Err(Error::Mismatch(format!("support must lie in 0..={k}")));
    }
    for j in 1..=k as i32 {
        if d.degree_in(j)? != n {
            return Err(Error::Mismatch(format!("degree in index {j} is not {n}")));
        }
    }
    let m = d.degree_in(0)?;
    let n64 = n as i64;
    let mut components = vec![FreeElement::zero(); m as usize + 1];
    for (mono, c) in d.terms() {
        let mut coeff = c.clone();
        let mut word: SymbolWord = Vec::with_capacity(k as usize);
        let mut slot = 0u32; // y_0-exponent
        for &(idx, xe, ye) in mono.factors() {
            if idx == 0 {
                slot = ye;
                continue;
            }
            // x_j^i y_j^{n-i} = (-1)^i q^{-(n^2/2 + (i-n)(1+i))} A^{(j-1)}_i
            let i = xe as i64;
            debug_assert_eq!(xe + ye, n);
            let mut w = Scalar::s_pow(n64 * n64 + 2 * (i - n64) * (1 + i));
            if i % 2 == 1 {
                w = w.neg();
            }
            coeff = coeff.div(&w)?;
            word.push(CoeffSymbol { form_id: idx as u32 - 1, n, i: xe });
        }
        if word.len() != k as usize {
            return Err(Error::Mismatch("every point index must occur".into()));
        }
        coeff = coeff.div(&Scalar::qbinomial(m as i64, slot as i64)?)?;
        components[slot as usize].add_term(word, coeff);
    }
    Ok(UniversalCovariant { order: m, components })
}

/// The symbolic method followed by identification of all form ids
/// (simultaneous invariants of copies of one form become invariants of it).
pub fn symbol_to_universal(d: &Element, n: u32, k: u32) -> Result<UniversalCovariant> {
    Ok(symbol_to_universal_multi(d, n, k)?.identify_forms())
}

/// Substitute concrete form coefficients for the symbols and multiply in
/// H_I; for a covariant of order m the result is assembled with the
/// q-binomial weights on x_0^{m-a} y_0^a.
pub fn realize(u: &UniversalCovariant, forms: &[NForm]) -> Result<Element> {
    let realize_free = |a: &FreeElement| -> Result<Element> {
        let mut acc = Element::zero();
        for (w, c) in a.terms() {
            let mut prod = Element::scalar(c.clone());
            for s in w {
                let form = forms.get(s.form_id as usize).ok_or_else(|| {
                    Error::Mismatch(format!("word uses form {} but only {} given", s.form_id, forms.len()))
                })?;
                if form.n != s.n {
                    return Err(Error::Mismatch(format!(
                        "form {} has degree {}, symbol expects {}",
                        s.form_id, form.n, s.n
                    )));
                }
                prod = prod.mul(form.coefficient(s.i as usize));
            }
            acc = acc.add(&prod);
        }
        Ok(acc)
    };
    let m = u.order;
    let mut out = Element::zero();
    for (a, comp) in u.components.iter().enumerate() {
        let realized = realize_free(comp)?;
        let head = if m == 0 {
            Element::one()
        } else {
            Element::from_term(
                PBWMonomial::new(vec![(0, m - a as u32, a as u32)]).expect("valid"),
                Scalar::one(),
            )
        };
        out = out.add(
            &head
                .mul(&realized)
                .scale(&Scalar::qbinomial(m as i64, a as i64)?),
        );
    }
    Ok(out)
}

/// Prop. 5.3 round trip: realizing the (non-identified) universal invariant
/// of d on the defining forms (01)^n, ..., (0k)^n returns d exactly.
pub fn roundtrip_check(d: &Element, n: u32, k: u32) -> Result<bool> {
    let u = symbol_to_universal_multi(d, n, k)?;
    let mut forms = Vec::new();
    for j in 1..=k as i32 {
        forms.push(crate::forms::extract(&bracket(0, j).pow(n), n)?);
    }
    Ok(realize(&u, &forms)? == *d)
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Scale a covariant so that `word` in component `comp` has coefficient
/// `target` (used to pin catalog entries to the printed normalizations).
fn scaled_to_anchor(
    u: UniversalCovariant,
    comp: usize,
    word: &SymbolWord,
    target: &Scalar,
) -> UniversalCovariant {
    let current = u.components[comp].coefficient(word);
    assert!(!current.is_zero(), "anchor word missing from catalog entry");
    u.scale(&target.div(&current).expect("nonzero anchor"))
}

fn sym(form_id: u32, n: u32, i: u32) -> CoeffSymbol {
    CoeffSymbol { form_id, n, i }
}

/// Build a single-form word from letters 'A'..='E' at degree n.
pub fn word(letters: &str, n: u32) -> SymbolWord {
    letters
        .bytes()
        .map(|b| sym(0, n, (b - b'A') as u32))
        .collect()
}

/// The Prop. 6.1 family of universal invariants of the linear form, from
/// the symbols (1,2n)(2,2n-1)...(n,n+1), normalized so that the word B^n A^n
/// carries the coefficient -q^{3n(n-1)/2}.
pub fn linear_family(n: u32) -> Result<UniversalCovariant> {
    let pairs: Vec<(i32, i32)> = (1..=n as i32).map(|t| (t, 2 * n as i32 + 1 - t)).collect();
    let d = crate::action::bracket_product(&pairs);
    let u = symbol_to_universal(&d, 1, 2 * n)?;
    let mut anchor: SymbolWord = Vec::new();
    anchor.extend(std::iter::repeat(sym(0, 1, 1)).take(n as usize)); // B = A_1
    anchor.extend(std::iter::repeat(sym(0, 1, 0)).take(n as usize)); // A = A_0
    let n64 = n as i64;
    Ok(scaled_to_anchor(u, 0, &anchor, &Scalar::s_pow(3 * n64 * (n64 - 1)).neg()))
}

fn build_catalog(name: &str) -> Result<UniversalCovariant> {
    let q = Scalar::q();
    match name {
        "linear.I1" => symbol_to_universal(&bracket(1, 2), 1, 2),
        "linear.I2" => linear_family(2),
        "linear.I3" => linear_family(3),
        "quadratic.I1" => {
            let d = bracket(1, 2).pow(2).scale(&q.inv()?);
            symbol_to_universal(&d, 2, 2)
        }
        "quadratic.I2" => {
            let d = crate::action::bracket_product(&[(1, 2), (1, 3), (2, 3)])
                .scale(&Scalar::q_pow(-4).neg());
            symbol_to_universal(&d, 2, 3)
        }
        "quadratic.I31" | "quadratic.I32" | "quadratic.I33" => {
            let (za, zb) = (z1(1, 2, 3, 4), z3(1, 2, 3, 4));
            let d = match name {
                "quadratic.I31" => za.mul(&za),
                "quadratic.I32" => za.mul(&zb),
                _ => zb.mul(&zb),
            };
            symbol_to_universal(&d, 2, 4)
        }
        "twoform.I1" => {
            let d = bracket(1, 2).pow(2).scale(&q.inv()?);
            symbol_to_universal_multi(&d, 2, 2)
        }
        "twoform.Delta" => {
            let d = bracket(1, 2).mul(&bracket(0, 1)).mul(&bracket(0, 2));
            let u = symbol_to_universal_multi(&d, 2, 2)?;
            // K = -q^7 B A' + q^9 A B'
            let anchor = vec![sym(0, 2, 1), sym(1, 2, 0)];
            Ok(scaled_to_anchor(u, 0, &anchor, &Scalar::q_pow(7).neg()))
        }
        "threeform.combinant" => {
            let d = crate::action::bracket_product(&[(1, 2), (1, 3), (2, 3)])
                .scale(&Scalar::q_pow(-4).neg());
            symbol_to_universal_multi(&d, 2, 3)
        }
        "cubic.I1" => {
            let d = bracket(1, 2).pow(3).scale(&Scalar::q_pow(-5));
            symbol_to_universal(&d, 3, 2)
        }
        "cubic.D1" | "cubic.D2" | "cubic.D3" | "cubic.D4" => {
            let (za, zb) = (z1(1, 2, 3, 4), z3(1, 2, 3, 4));
            let (d, anchor, target) = match name {
                "cubic.D1" => (za.pow(3), word("ADAD", 3), Scalar::q_pow(24)),
                "cubic.D2" => (za.pow(2).mul(&zb), word("ADAD", 3), Scalar::q_pow(23).neg()),
                "cubic.D3" => (za.mul(&zb.pow(2)), word("ADAD", 3), Scalar::q_pow(22)),
                _ => (zb.pow(3), word("AADD", 3), Scalar::q_pow(24)),
            };
            let u = symbol_to_universal(&d, 3, 4)?;
            Ok(scaled_to_anchor(u, 0, &anchor, &target))
        }
        "cubic.Delta" => {
            let d = bracket(1, 2).pow(2).mul(&bracket(0, 1)).mul(&bracket(0, 2));
            let u = symbol_to_universal(&d, 3, 2)?;
            // K = q^9 C A - q^12 [2] B B + q^13 A C
            Ok(scaled_to_anchor(u, 0, &word("CA", 3), &Scalar::q_pow(9)))
        }
        "cubic.IDelta" => {
            // discriminant of the quadratic covariant Delta:
            // [2] M K - q^2 L L + q^2 [2] K M
            let delta = catalog("cubic.Delta")?;
            let k = &delta.components[0];
            let l = delta.components[1].scale(&Scalar::qnum(2));
            let m = &delta.components[2];
            let two = Scalar::qnum(2);
            let out = m
                .mul(k)
                .scale(&two)
                .sub(&l.mul(&l).scale(&Scalar::q_pow(2)))
                .add(&k.mul(m).scale(&Scalar::q_pow(2).mul(&two)));
            Ok(UniversalCovariant::invariant(out))
        }
        "quartic.I1" => {
            let d = bracket(1, 2).pow(4).scale(&Scalar::q_pow(-6));
            symbol_to_universal(&d, 4, 2)
        }
        "quartic.I2" => {
            let d = bracket(1, 2)
                .pow(2)
                .mul(&bracket(1, 3).pow(2))
                .mul(&bracket(2, 3).pow(2))
                .scale(&Scalar::q_pow(-12));
            symbol_to_universal(&d, 4, 3)
        }
        "quartic.D" => {
            // D = [3][4]^3 / ([2]^5 (-q^{-4}+2q^{-2}-1+2q^2-q^4)^2) I2^2 - I1^3
            let i1 = catalog("quartic.I1")?.single().clone();
            let i2 = catalog("quartic.I2")?.single().clone();
            let c = Scalar::q_pow(-4)
                .neg()
                .add(&Scalar::q_pow(-2).mul(&Scalar::from_int(2)))
                .sub(&Scalar::one())
                .add(&Scalar::q_pow(2).mul(&Scalar::from_int(2)))
                .sub(&Scalar::q_pow(4));
            let lead = Scalar::qnum(3)
                .mul(&Scalar::qnum(4).pow(3)?)
                .div(&Scalar::qnum(2).pow(5)?.mul(&c).mul(&c))?;
            Ok(UniversalCovariant::invariant(
                i2.mul(&i2).scale(&lead).sub(&i1.mul(&i1).mul(&i1)),
            ))
        }
        _ => Err(Error::UnknownCatalogEntry(name.into())),
    }
}

static CATALOG_CACHE: LazyLock<Mutex<BTreeMap<String, UniversalCovariant>>> =
    LazyLock::new(|| Mutex::new(BTreeMap::new()));

/// All valid catalog names.
pub const CATALOG_NAMES: &[&str] = &[
    "linear.I1",
    "linear.I2",
    "linear.I3",
    "quadratic.I1",
    "quadratic.I2",
    "quadratic.I31",
    "quadratic.I32",
    "quadratic.I33",
    "twoform.I1",
    "twoform.Delta",
    "threeform.combinant",
    "cubic.I1",
    "cubic.D1",
    "cubic.D2",
    "cubic.D3",
    "cubic.D4",
    "cubic.Delta",
    "cubic.IDelta",
    "quartic.I1",
    "quartic.I2",
    "quartic.D",
];

/// Fetch a named universal invariant or covariant, derived from its symbol.
pub fn catalog(name: &str) -> Result<UniversalCovariant> {
    if let Some(hit) = CATALOG_CACHE.lock().unwrap().get(name) {
        return Ok(hit.clone());
    }
    let built = build_catalog(name)?;
    CATALOG_CACHE
        .lock()
        .unwrap()
        .insert(name.to_string(), built.clone());
    Ok(built)
}

// ---------------------------------------------------------------------------
// Display and JSON
// ---------------------------------------------------------------------------

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let ws = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|s| {
                            let letter = (b'A' + (s.i % 26) as u8) as char;
                            format!("{letter}[{},{},{}]", s.form_id, s.n, s.i)
                        })
                        .collect::<Vec<_>>()
                        .join("*")
                };
                format!("({}) * {}", c.display_q(), ws)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct FreeTermRepr {
    word: Vec<(u32, u32, u32)>,
    coef: Scalar,
}

impl serde::Serialize for FreeElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<FreeTermRepr> = self
            .terms
            .iter()
            .map(|(w, c)| FreeTermRepr {
                word: w.iter().map(|s| (s.form_id, s.n, s.i)).collect(),
                coef: c.clone(),
            })
            .collect();
        v.serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for FreeElement {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<FreeTermRepr>::deserialize(de)?;
        let mut out = FreeElement::zero();
        for t in v {
            let mut w = Vec::new();
            for (fid, n, i) in t.word {
                w.push(CoeffSymbol::new(fid, n, i).map_err(D::Error::custom)?);
            }
            out.add_term(w, t.coef);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{act, bracket_product};
    use crate::forms::{extract, product_form};

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn free_action_on_quadratic_symbols() {
        // n=2: E(A)=0, E(B)=-qA, E(C)=-q^2[2]B; K(B)=B
        let a = FreeElement::from_word(vec![sym(0, 2, 0)], Scalar::one());
        let b = FreeElement::from_word(vec![sym(0, 2, 1)], Scalar::one());
        let c = FreeElement::from_word(vec![sym(0, 2, 2)], Scalar::one());
        assert!(free_act(Generator::E, &a).is_zero());
        assert_eq!(free_act(Generator::E, &b), a.scale(&q().neg()));
        assert_eq!(
            free_act(Generator::E, &c),
            b.scale(&Scalar::q_pow(2).mul(&Scalar::qnum(2)).neg())
        );
        assert_eq!(free_act(Generator::K, &b), b);
        assert_eq!(free_act(Generator::K, &a), a.scale(&q()));
        // Leibniz on a word
        let ac = a.mul(&c);
        let lhs = free_act(Generator::E, &ac);
        let rhs = free_act(Generator::E, &a)
            .mul(&free_act(Generator::K, &c))
            .add(&free_act(Generator::Kinv, &a).mul(&free_act(Generator::E, &c)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn example_5_3_invariant() {
        // I = (1/q) AC + (1/q^3) CA - (1/q)[2] B^2 is a universal invariant
        let a = FreeElement::from_word(vec![sym(0, 2, 0)], Scalar::one());
        let b = FreeElement::from_word(vec![sym(0, 2, 1)], Scalar::one());
        let c = FreeElement::from_word(vec![sym(0, 2, 2)], Scalar::one());
        let inv = a
            .mul(&c)
            .scale(&q().inv().unwrap())
            .add(&c.mul(&a).scale(&Scalar::q_pow(-3)))
            .sub(&b.mul(&b).scale(&Scalar::qnum(2).div(&q()).unwrap()));
        assert!(is_universal_invariant(&inv));
        // while a bare symbol is not
        assert!(!is_universal_invariant(&a));
        // products of invariants are invariant
        assert!(is_universal_invariant(&inv.mul(&inv)));
    }

    #[test]
    fn example_5_4_symbolic_method() {
        // d = (1/q)(12)^2 -> I = q^{-3} CA - [2]/q BB + 1/q AC
        let d = bracket(1, 2).pow(2).scale(&q().inv().unwrap());
        let u = symbol_to_universal(&d, 2, 2).unwrap();
        assert_eq!(u.order, 0);
        let inv = u.single();
        let mut expect = FreeElement::zero();
        expect.add_term(word("CA", 2), Scalar::q_pow(-3));
        expect.add_term(word("BB", 2), Scalar::qnum(2).div(&q()).unwrap().neg());
        expect.add_term(word("AC", 2), q().inv().unwrap());
        assert_eq!(*inv, expect);
        assert!(is_universal_invariant(inv));
        // and the multi-form variant keeps distinct ids
        let multi = symbol_to_universal_multi(&d, 2, 2).unwrap();
        let mut expect = FreeElement::zero();
        expect.add_term(vec![sym(0, 2, 2), sym(1, 2, 0)], Scalar::q_pow(-3));
        expect.add_term(
            vec![sym(0, 2, 1), sym(1, 2, 1)],
            Scalar::qnum(2).div(&q()).unwrap().neg(),
        );
        expect.add_term(vec![sym(0, 2, 0), sym(1, 2, 2)], q().inv().unwrap());
        assert_eq!(*multi.single(), expect);
    }

    #[test]
    fn linear_i1() {
        // I_1 = -q^{-1/2} BA + q^{1/2} AB
        let u = catalog("linear.I1").unwrap();
        let mut expect = FreeElement::zero();
        expect.add_term(word("BA", 1), Scalar::s_pow(-1).neg());
        expect.add_term(word("AB", 1), Scalar::s_pow(1));
        assert_eq!(*u.single(), expect);
    }

    #[test]
    fn linear_family_monomial() {
        // I_n contains -q^{3n(n-1)/2} B^n A^n
        for n in 1..=3u32 {
            let u = if n == 1 {
                linear_family(1).unwrap()
            } else {
                catalog(&format!("linear.I{n}")).unwrap()
            };
            assert!(is_universal_invariant(u.single()), "n = {n}");
            let mut anchor = word(&"B".repeat(n as usize), 1);
            anchor.extend(word(&"A".repeat(n as usize), 1));
            let n64 = n as i64;
            assert_eq!(
                u.single().coefficient(&anchor),
                Scalar::s_pow(3 * n64 * (n64 - 1)).neg(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn realizations_quadratic() {
        // Eq. (24): I_{1,f} = -(1/[2]) (12)^2 for f = q(01)(02)
        let f = extract(&product_form(&[1, 2], &q()).unwrap(), 2).unwrap();
        let i1 = catalog("quadratic.I1").unwrap();
        let got = realize(&i1, &[f.clone()]).unwrap();
        let expect = bracket(1, 2).pow(2).scale(&Scalar::qnum(2).inv().unwrap()).neg();
        assert_eq!(got, expect);
        // Example 6.3: I_{1,f} = 0 for f = (01)^2
        let f2 = extract(&bracket(0, 1).pow(2), 2).unwrap();
        assert!(realize(&i1, &[f2]).unwrap().is_zero());
        // realization of I_2 is proportional to (12)^3
        let i2 = catalog("quadratic.I2").unwrap();
        let got = realize(&i2, &[f]).unwrap();
        let b3 = bracket(1, 2).pow(3);
        let lam = crate::solve::solve_linear(&[b3.clone()], &got).unwrap();
        assert_eq!(got, b3.scale(&lam[0]));
        assert!(!got.is_zero());
    }

    #[test]
    fn intertwining() {
        // X(h(a)) = h(X(a)) for the coefficient realization homomorphism
        let f = extract(&product_form(&[1, 2], &q()).unwrap(), 2).unwrap();
        let a = FreeElement::from_word(word("AC", 2), Scalar::one())
            .add(&FreeElement::from_word(word("BB", 2), Scalar::s_pow(3)));
        let u = |x: FreeElement| UniversalCovariant::invariant(x);
        for g in [Generator::E, Generator::F, Generator::K, Generator::L] {
            let lhs = act(g, &realize(&u(a.clone()), &[f.clone()]).unwrap());
            let rhs = realize(&u(free_act(g, &a)), &[f.clone()]).unwrap();
            assert_eq!(lhs, rhs, "{g:?}");
        }
    }

    #[test]
    fn roundtrips() {
        assert!(roundtrip_check(&bracket(1, 2).pow(2), 2, 2).unwrap());
        assert!(roundtrip_check(&bracket_product(&[(1, 2), (1, 3), (2, 3)]), 2, 3).unwrap());
        assert!(roundtrip_check(&Element::one(), 0, 0).unwrap());
        assert!(roundtrip_check(&bracket(1, 2).pow(3), 3, 2).unwrap());
    }

    #[test]
    fn catalog_is_covariant() {
        for name in CATALOG_NAMES {
            let u = catalog(name).unwrap();
            assert!(is_universal_covariant(&u), "{name}");
        }
        assert!(catalog("quartic.I9").is_err());
    }
}
