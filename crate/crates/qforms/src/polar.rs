//! Polarisation operators, the Omega-process, cofactor extraction, the
//! constructive bracket decomposition and the Gordan-Capelli series.
//!
//! All operators here are defined on the fixed PBW basis only; different
//! bases give different operators. Inputs are always normalized `Element`s,
//! so this is automatic.

use std::collections::BTreeMap;
use std::fmt;

use crate::action::{bracket, is_invariant};
use crate::error::{Error, Result};
use crate::pbw::{normalize, Element, Index, Word};
use crate::scalar::Scalar;
use crate::solve::solve_linear;

/// The substitution operator Delta_{kl}: replaces one index-k letter by the
/// matching index-l letter in every position, summed, on the PBW basis.
/// Delta_{kk} is the Euler operator: it multiplies a monomial by its
/// integer degree in k.
pub fn delta(k: Index, l: Index, a: &Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in a.terms() {
        if k == l {
            let d = m.degree_in(k) as i64;
            out.add_term(m.clone(), c.mul(&Scalar::from_int(d)));
            continue;
        }
        let letters = m.letters();
        for (p, letter) in letters.iter().enumerate() {
            if letter.index != k {
                continue;
            }
            let mut replaced = letters.clone();
            replaced[p].index = l;
            out = out.add(&normalize(&Word(replaced)).scale(c));
        }
    }
    out
}

/// P_{kl} = Delta_{kl} / (n_k)_{q^2}, applied monomial-wise with each
/// monomial's own degree n_k in the index k. Monomials of degree zero in k
/// map to zero.
pub fn polar(k: Index, l: Index, a: &Element) -> Result<Element> {
    if k == l {
        return Err(Error::InvalidInput("polar requires k != l".into()));
    }
    let mut out = Element::zero();
    for (m, c) in a.terms() {
        let d = m.degree_in(k) as i64;
        if d == 0 {
            continue;
        }
        let single = Element::from_term(m.clone(), c.clone());
        let norm = Scalar::qparen(d)?.inv()?;
        out = out.add(&delta(k, l, &single).scale(&norm));
    }
    Ok(out)
}

/// Iterated polarisation P_{kl}^t.
pub fn polar_iter(k: Index, l: Index, a: &Element, t: u32) -> Result<Element> {
    let mut acc = a.clone();
    for _ in 0..t {
        acc = polar(k, l, &acc)?;
    }
    Ok(acc)
}

/// The two lowest indices in the support.
fn lowest_pair(a: &Element) -> Option<(Index, Index)> {
    let mut it = a.support().into_iter();
    Some((it.next()?, it.next()?))
}

/// The Omega-process for an explicit index pair k < l, which must be the two
/// lowest indices of `a` (remaining factors sit at higher indices).
///
/// On a monomial x_k^{m-i} y_k^i x_l^{n-j} y_l^j b the operator acts by
///
/// ```text
///   Omega (x_k^{m-i} y_k^i x_l^{n-j} y_l^j b)
///     = ( -q^{j-i+3/2} [i][n-j] x_k^{m-i} y_k^{i-1} x_l^{n-j-1} y_l^j b
///         +q^{-m+1/2} [m-i][j] x_k^{m-i-1} y_k^i x_l^{n-j} y_l^{j-1} b )
///       / ([m][n])
/// ```
///
/// which is the unique operator with f = P_{lk} P_{kl} f + ([n]/[n+1]) (kl)
/// Omega(f). The overall sign is fixed by that decomposition (and by the
/// classical limit Omega -> (1/mn) (d_{x_k} d_{y_l} - d_{y_k} d_{x_l})).
pub fn omega_at(k: Index, l: Index, a: &Element) -> Result<Element> {
    if a.is_zero() {
        return Ok(Element::zero());
    }
    let m = a.degree_in(k)? as i64;
    let n = a.degree_in(l)? as i64;
    if m == 0 || n == 0 {
        return Ok(Element::zero());
    }
    if a.support().iter().any(|&i| i < l && i != k) {
        return Err(Error::InvalidInput(
            "omega is defined for the two lowest indices".into(),
        ));
    }
    let norm = Scalar::qnum(m).mul(&Scalar::qnum(n)).inv()?;
    let mut out = Element::zero();
    for (mono, c) in a.terms() {
        let mut fk = None;
        let mut fl = None;
        for (t, &(idx, a_, b_)) in mono.factors().iter().enumerate() {
            if idx == k {
                fk = Some((t, a_, b_));
            } else if idx == l {
                fl = Some((t, a_, b_));
            }
        }
        let (tk, xk, i) = fk.expect("degree m >= 1");
        let (tl, xl, j) = fl.expect("degree n >= 1");
        debug_assert_eq!(xk + i, m as u32);
        debug_assert_eq!(xl + j, n as u32);
        let i = i as i64;
        let j = j as i64;
        // kill one y_k and one x_l
        if i >= 1 && n - j >= 1 {
            let coeff = Scalar::s_pow(2 * (j - i) + 3)
                .mul(&Scalar::qnum(i))
                .mul(&Scalar::qnum(n - j))
                .neg();
            let mut f = mono.factors().to_vec();
            f[tk].2 -= 1;
            f[tl].1 -= 1;
            f.retain(|&(_, a_, b_)| a_ + b_ > 0);
            let nm = crate::pbw::PBWMonomial::new(f)?;
            out.add_term(nm, c.mul(&coeff).mul(&norm));
        }
        // kill one x_k and one y_l
        if m - i >= 1 && j >= 1 {
            let coeff = Scalar::s_pow(-2 * m + 1)
                .mul(&Scalar::qnum(m - i))
                .mul(&Scalar::qnum(j));
            let mut f = mono.factors().to_vec();
            f[tk].1 -= 1;
            f[tl].2 -= 1;
            f.retain(|&(_, a_, b_)| a_ + b_ > 0);
            let nm = crate::pbw::PBWMonomial::new(f)?;
            out.add_term(nm, c.mul(&coeff).mul(&norm));
        }
    }
    Ok(out)
}

/// Omega for the two lowest indices present in the element.
pub fn omega(a: &Element) -> Result<Element> {
    if a.is_zero() {
        return Ok(Element::zero());
    }
    match lowest_pair(a) {
        Some((k, l)) => omega_at(k, l, a),
        None => Ok(Element::zero()),
    }
}

/// Prop. 3.5(i) decomposition f = P_{lk} P_{kl} f + (kl) cof for the two
/// lowest indices k < l; returns (P_{lk} P_{kl} f, cof). Requires f
/// bihomogeneous of degrees >= 1 in both indices.
pub fn extract_cofactor(a: &Element) -> Result<(Element, Element)> {
    let (k, l) = lowest_pair(a)
        .ok_or_else(|| Error::InvalidInput("need two indices for cofactor extraction".into()))?;
    extract_cofactor_at(k, l, a)
}

pub fn extract_cofactor_at(k: Index, l: Index, a: &Element) -> Result<(Element, Element)> {
    let n = a.degree_in(l)? as i64;
    let pp = polar(l, k, &polar(k, l, a)?)?;
    let cof = omega_at(k, l, a)?.scale(&Scalar::qnum(n).div(&Scalar::qnum(n + 1))?);
    debug_assert_eq!(pp.add(&bracket(k, l).mul(&cof)), *a);
    Ok((pp, cof))
}

/// The Gordan-Capelli series of an invariant element with respect to its two
/// lowest indices.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PolarisationReport {
    /// the index pair the series is taken over
    pub pair: Option<(Index, Index)>,
    /// (k, component P_{21}^{n1-k} P_{12}^{n1-k} Omega^k f)
    pub components: Vec<(u32, Element)>,
    /// the alpha-coefficients, indexed like `components`
    pub coefficients: Vec<Scalar>,
}

impl PolarisationReport {
    /// Reassemble sum_k alpha_k (12)^k component_k.
    pub fn recombine(&self) -> Element {
        let mut acc = Element::zero();
        for ((k, comp), alpha) in self.components.iter().zip(&self.coefficients) {
            let mut term = comp.scale(alpha);
            if let Some((i, j)) = self.pair {
                term = bracket(i, j).pow(*k).mul(&term);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// Gordan-Capelli coefficient alpha_k for degrees (n1, n2):
/// [n1 k][n2 k] / [n1+n2-k+1 k], zero outside range.
pub fn gc_alpha(n1: i64, n2: i64, k: i64) -> Scalar {
    let num = Scalar::qbinomial_or_zero(n1, k).mul(&Scalar::qbinomial_or_zero(n2, k));
    if num.is_zero() {
        return Scalar::zero();
    }
    num.div(&Scalar::qbinomial_or_zero(n1 + n2 - k + 1, k))
        .expect("denominator binomial nonzero in range")
}

/// Decompose an invariant element into its Gordan-Capelli series
///
/// ```text
///   f = sum_k  [n1 k][n2 k]/[n1+n2-k+1 k]  (12)^k  P21^{n1-k} P12^{n1-k} Omega^k f
/// ```
///
/// over the two lowest indices. Elements supported on fewer than two indices
/// are returned as a single trivial component.
pub fn gordan_capelli(a: &Element) -> Result<PolarisationReport> {
    if !is_invariant(a) {
        return Err(Error::NotInvariant);
    }
    if a.multidegree().is_none() {
        return Err(Error::Inhomogeneous(0));
    }
    let Some((k1, k2)) = lowest_pair(a) else {
        return Ok(PolarisationReport {
            pair: None,
            components: vec![(0, a.clone())],
            coefficients: vec![Scalar::one()],
        });
    };
    let n1 = a.degree_in(k1)? as i64;
    let n2 = a.degree_in(k2)? as i64;
    let mut components = Vec::new();
    let mut coefficients = Vec::new();
    let mut omega_k = a.clone();
    for k in 0..=n1 {
        if k > 0 {
            omega_k = omega_at(k1, k2, &omega_k)?;
        }
        let tower = (n1 - k) as u32;
        let comp = polar_iter(k2, k1, &polar_iter(k1, k2, &omega_k, tower)?, tower)?;
        components.push((k as u32, comp));
        coefficients.push(gc_alpha(n1, n2, k));
    }
    Ok(PolarisationReport { pair: Some((k1, k2)), components, coefficients })
}

// ---------------------------------------------------------------------------
// Bracket polynomials and the constructive decomposition of Theorem 3.6
// ---------------------------------------------------------------------------

/// A formal polynomial in bracket symbols; monomials are ordered factor
/// lists (multiplication of brackets is not commutative).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BracketPoly {
    terms: BTreeMap<Vec<(Index, Index)>, Scalar>,
}

impl BracketPoly {
    pub fn zero() -> Self {
        BracketPoly::default()
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        BracketPoly { terms }
    }

    pub fn monomial(factors: Vec<(Index, Index)>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(factors, c);
        }
        BracketPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<(Index, Index)>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, factors: Vec<(Index, Index)>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&factors) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&factors);
                }
            }
            None => {
                self.terms.insert(factors, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    /// Prepend one bracket factor to every monomial.
    pub fn prepend(&self, pair: (Index, Index)) -> Self {
        let mut out = BracketPoly::zero();
        for (f, c) in &self.terms {
            let mut nf = Vec::with_capacity(f.len() + 1);
            nf.push(pair);
            nf.extend_from_slice(f);
            out.add_term(nf, c.clone());
        }
        out
    }

    /// Evaluate back into H_I.
    pub fn eval(&self) -> Element {
        let mut acc = Element::zero();
        for (f, c) in &self.terms {
            acc = acc.add(&crate::action::bracket_product(f).scale(c));
        }
        acc
    }
}

impl fmt::Display for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(factors, c)| {
                let mono = if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors
                        .iter()
                        .map(|(i, j)| format!("b[{i},{j}]"))
                        .collect::<Vec<_>>()
                        .join("*")
                };
                format!("({}) * {}", c.display_q(), mono)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Enumerate all bracket monomials (as sorted pair-power lists) with the
/// given per-index degrees.
fn bracket_monomials_of_degree(deg: &BTreeMap<Index, u32>) -> Vec<Vec<(Index, Index)>> {
    let indices: Vec<Index> = deg.keys().copied().collect();
    let mut pairs = Vec::new();
    for (a, &i) in indices.iter().enumerate() {
        for &j in indices.iter().skip(a + 1) {
            pairs.push((i, j));
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<(Index, Index)> = Vec::new();
    fn rec(
        pairs: &[(Index, Index)],
        p: usize,
        rem: &mut BTreeMap<Index, u32>,
        current: &mut Vec<(Index, Index)>,
        out: &mut Vec<Vec<(Index, Index)>>,
    ) {
        if p == pairs.len() {
            if rem.values().all(|&v| v == 0) {
                out.push(current.clone());
            }
            return;
        }
        let (i, j) = pairs[p];
        let max = rem[&i].min(rem[&j]);
        for e in 0..=max {
            if e > 0 {
                *rem.get_mut(&i).unwrap() -= 1;
                *rem.get_mut(&j).unwrap() -= 1;
                current.push((i, j));
            }
            rec(pairs, p + 1, rem, current, out);
        }
        for _ in 0..max {
            current.pop();
        }
        *rem.get_mut(&i).unwrap() += max;
        *rem.get_mut(&j).unwrap() += max;
    }
    let mut rem = deg.clone();
    rec(&pairs, 0, &mut rem, &mut current, &mut out);
    out
}

/// Express an invariant element exactly as a bracket polynomial by solving
/// in the spanning set of all bracket monomials of its multidegree.
pub fn express_in_brackets(e: &Element) -> Result<BracketPoly> {
    if e.is_zero() {
        return Ok(BracketPoly::zero());
    }
    let deg = e.multidegree().ok_or(Error::Inhomogeneous(0))?;
    if deg.values().all(|&v| v == 0) {
        return Ok(BracketPoly::scalar(e.coefficient(&crate::pbw::PBWMonomial::unit())));
    }
    let monos = bracket_monomials_of_degree(&deg);
    if monos.is_empty() {
        return Err(Error::NotInvariant);
    }
    let columns: Vec<Element> = monos.iter().map(|m| crate::action::bracket_product(m)).collect();
    let x = solve_linear(&columns, e).ok_or(Error::NotInvariant)?;
    let mut out = BracketPoly::zero();
    for (m, c) in monos.into_iter().zip(x) {
        out.add_term(m, c);
    }
    Ok(out)
}

/// Constructive bracket decomposition of an invariant element, following the
/// variable-elimination recursion: strip the lowest index with a
/// P_{12}-tower, split off the (12)-cofactor, recurse on the cofactor (two
/// degrees lower), and express the polarised remainder in brackets.
pub fn bracket_decompose(a: &Element) -> Result<BracketPoly> {
    if !is_invariant(a) {
        return Err(Error::NotInvariant);
    }
    if a.multidegree().is_none() {
        return Err(Error::Inhomogeneous(0));
    }
    decompose_rec(a)
}

fn decompose_rec(f: &Element) -> Result<BracketPoly> {
    if f.is_zero() {
        return Ok(BracketPoly::zero());
    }
    let deg = f.total_degree().ok_or(Error::Inhomogeneous(0))?;
    if deg == 0 {
        return Ok(BracketPoly::scalar(f.coefficient(&crate::pbw::PBWMonomial::unit())));
    }
    let Some((i1, i2)) = lowest_pair(f) else {
        // a nonzero invariant of positive degree needs at least two indices
        return Err(Error::NotInvariant);
    };
    let n1 = f.degree_in(i1)? as i64;
    let n2 = f.degree_in(i2)? as i64;

    // P_{12}-tower: g_t = P12^t f, with cofactors g_t = P21 P12 g_t + (12) a_t
    let mut cofactors = Vec::new();
    let mut g = f.clone();
    for _ in 0..n1 {
        let (_, cof) = extract_cofactor_at(i1, i2, &g)?;
        cofactors.push(cof);
        g = polar(i1, i2, &g)?;
    }
    let h = g; // no i1-content, one variable fewer

    // Pull the P21-towers through the bracket with
    // P21^t ((12) u) = q^{-t} ([n2]/[n2+t]) (12) P21^t u, telescoped from
    // P21((12)u) = q^{-1} [deg2 u]/[deg2 u + 1] (12) P21 u, so that
    // f = P21^{n1} h + (12) c with c as below.
    let mut c = Element::zero();
    for (t, a_t) in cofactors.iter().enumerate() {
        let t = t as i64;
        let gamma = Scalar::s_pow(-2 * t)
            .mul(&Scalar::qnum(n2).div(&Scalar::qnum(n2 + t)).expect("nonzero"));
        let lifted = polar_iter(i2, i1, a_t, t as u32)?;
        c = c.add(&lifted.scale(&gamma));
    }
    let e = polar_iter(i2, i1, &h, n1 as u32)?;
    debug_assert_eq!(e.add(&bracket(i1, i2).mul(&c)), *f);

    let bc = decompose_rec(&c)?;
    let be = express_in_brackets(&e)?;
    Ok(be.add(&bc.prepend((i1, i2))))
}
