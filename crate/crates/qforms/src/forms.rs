//! Quantum binary n-forms: invariant elements of the shape
//!
//! ```text
//!   f = x^n A_0 + [n 1] x^{n-1} y A_1 + ... + y^n A_n ,   x = x_0, y = y_0,
//! ```
//!
//! with coefficients off index 0, together with coefficient extraction,
//! realizations from bracket products, the coefficient action, polars of
//! forms and points.

use crate::action::{act, bracket, bracket_product, is_invariant, Generator};
use crate::error::{Error, Result};
use crate::pbw::{Element, Index, PBWMonomial};
use crate::polar::polar;
use crate::scalar::Scalar;

/// An n-form given by its coefficient list A_0 ... A_n.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct NForm {
    pub n: u32,
    pub coefficients: Vec<Element>,
}

impl NForm {
    pub fn new(n: u32, coefficients: Vec<Element>) -> Result<Self> {
        if coefficients.len() != n as usize + 1 {
            return Err(Error::Mismatch(format!(
                "an {n}-form takes {} coefficients, got {}",
                n + 1,
                coefficients.len()
            )));
        }
        Ok(NForm { n, coefficients })
    }

    pub fn coefficient(&self, i: usize) -> &Element {
        &self.coefficients[i]
    }
}

/// Assemble sum_i [n i] x_0^{n-i} y_0^i A_i.
pub fn assemble(form: &NForm) -> Element {
    let n = form.n;
    let mut acc = Element::zero();
    for (i, a) in form.coefficients.iter().enumerate() {
        let i = i as u32;
        let mut factors = Vec::new();
        if n > 0 {
            factors.push((0, n - i, i));
        }
        let head = if factors.is_empty() || n == 0 {
            Element::one()
        } else {
            Element::from_term(PBWMonomial::new(factors).expect("valid"), Scalar::one())
        };
        let binom = Scalar::qbinomial(n as i64, i as i64).expect("in range");
        acc = acc.add(&head.mul(a).scale(&binom));
    }
    acc
}

/// Extract the unique coefficients of an n-form. The input must be
/// invariant, homogeneous of degree n in index 0, and supported on
/// nonnegative indices only (so the x_0/y_0 block is leftmost in the PBW
/// basis).
pub fn extract(f: &Element, n: u32) -> Result<NForm> {
    if f.support().iter().any(|&i| i < 0) {
        return Err(Error::InvalidInput(
            "extract requires all point indices positive".into(),
        ));
    }
    if f.degree_in(0)? != n {
        return Err(Error::Mismatch(format!("element is not of degree {n} in index 0")));
    }
    if !is_invariant(f) {
        return Err(Error::NotInvariant);
    }
    let mut coeffs = vec![Element::zero(); n as usize + 1];
    for (m, c) in f.terms() {
        let mut rest = m.factors().to_vec();
        let i = if n == 0 {
            0
        } else {
            let head = rest.remove(0);
            debug_assert_eq!(head.0, 0);
            head.2
        };
        let tail = PBWMonomial::new(rest)?;
        let binom = Scalar::qbinomial(n as i64, i as i64)?;
        coeffs[i as usize].add_term(tail, c.div(&binom)?);
    }
    let form = NForm { n, coefficients: coeffs };
    debug_assert_eq!(assemble(&form), *f);
    Ok(form)
}

/// The scaled bracket product `scale * (0 i_1)(0 i_2)...(0 i_n)`; with the
/// weight q^{n(n-1)/2} and distinct positive ascending indices this is a
/// star-fixed ("real") form.
pub fn product_form(indices: &[Index], scale: &Scalar) -> Result<Element> {
    if indices.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("indices must be nondecreasing".into()));
    }
    if indices.iter().any(|&i| i == 0) {
        return Err(Error::InvalidInput("index 0 is the form variable".into()));
    }
    let pairs: Vec<(Index, Index)> = indices.iter().map(|&i| (0, i)).collect();
    Ok(bracket_product(&pairs).scale(scale))
}

/// The real form f_{i_1..i_n} = q^{n(n-1)/2} (0 i_1)...(0 i_n).
pub fn real_product_form(indices: &[Index]) -> Result<Element> {
    let n = indices.len() as i64;
    product_form(indices, &Scalar::s_pow(n * (n - 1)))
}

/// Residuals of the coefficient action (each zero iff the relation holds):
///
/// ```text
///   E[A_i] = -q^{(2i-n+2)/2} [i]   A_{i-1}
///   F[A_i] = -q^{(n-2i-4)/2} [n-i] A_{i+1}
///   K[A_i] =  q^{(n-2i)/2} A_i         L[A_i] = q^{n/2} A_i
/// ```
///
/// The F-exponent is forced by F(f) = 0 together with the commutator
/// relation [E, F] = (K^2 - K^{-2})/(q - q^{-1}) on the coefficients.
pub fn coefficient_action_residuals(form: &NForm) -> Vec<(String, Element)> {
    let n = form.n as i64;
    let zero = Element::zero();
    let mut out = Vec::new();
    for i in 0..=form.n as usize {
        let ai = &form.coefficients[i];
        let prev = if i == 0 { &zero } else { &form.coefficients[i - 1] };
        let next = if i == form.n as usize { &zero } else { &form.coefficients[i + 1] };
        let i64i = i as i64;
        let e = act(Generator::E, ai).sub(
            &prev.scale(&Scalar::s_pow(2 * i64i - n + 2).mul(&Scalar::qnum(i64i)).neg()),
        );
        out.push((format!("E[A_{i}]"), e));
        let f = act(Generator::F, ai).sub(
            &next.scale(&Scalar::s_pow(n - 2 * i64i - 4).mul(&Scalar::qnum(n - i64i)).neg()),
        );
        out.push((format!("F[A_{i}]"), f));
        let k = act(Generator::K, ai).sub(&ai.scale(&Scalar::s_pow(n - 2 * i64i)));
        out.push((format!("K[A_{i}]"), k));
        let l = act(Generator::L, ai).sub(&ai.scale(&Scalar::s_pow(n)));
        out.push((format!("L[A_{i}]"), l));
    }
    out
}

/// The k-th polar f^{(k)} = (P_{0p})^k f of an n-form with respect to a
/// point index p that does not occur in f.
pub fn polar_form(f: &Element, n: u32, p: Index, k: u32) -> Result<Element> {
    if p == 0 {
        return Err(Error::InvalidInput("polar point index must differ from 0".into()));
    }
    if f.support().contains(&p) {
        return Err(Error::InvalidInput(format!("index {p} already occurs in the form")));
    }
    if f.degree_in(0)? != n {
        return Err(Error::Mismatch(format!("element is not of degree {n} in index 0")));
    }
    let mut acc = f.clone();
    for _ in 0..k {
        acc = polar(0, p, &acc)?;
    }
    Ok(acc)
}

/// The components C_i^{n,k} of the closed polar formula: the unique
/// elements of H_{0,1} with (02)^{n-k} (12)^k = sum_i C_i^{n,k} A_i, where
/// A_i are the coefficients of (02)^n. The k-th polar of an n-form with
/// coefficients over indices > 1 is then sum_i C_i^{n,k} A_i.
pub fn polar_components(n: u32, k: u32) -> Result<Vec<Element>> {
    if k > n {
        return Err(Error::OutOfRange(format!("polar_components({n},{k})")));
    }
    let lhs = bracket(0, 2).pow(n - k).mul(&bracket(1, 2).pow(k));
    let n64 = n as i64;
    let mut comps = vec![Element::zero(); n as usize + 1];
    for (m, c) in lhs.terms() {
        let mut head = m.factors().to_vec();
        let (i, block_coeff) = match head.iter().position(|&(idx, _, _)| idx == 2) {
            Some(pos) => {
                let (_, a, b) = head.remove(pos);
                debug_assert_eq!(a + b, n);
                let i = a as i64;
                // A_i^{(2)} = (-1)^i q^{n^2/2 + (i-n)(1+i)} x_2^i y_2^{n-i}
                let mut w = Scalar::s_pow(n64 * n64 + 2 * (i - n64) * (1 + i));
                if i % 2 == 1 {
                    w = w.neg();
                }
                (i, w)
            }
            None => return Err(Error::Mismatch("missing point block".into())),
        };
        let tail = PBWMonomial::new(head)?;
        comps[i as usize].add_term(tail, c.div(&block_coeff)?);
    }
    Ok(comps)
}

/// A candidate point: an ordered pair of elements supported off index 0.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Point {
    pub x: Element,
    pub y: Element,
}

/// Point predicate: q^{-1/2} x_0 Y - q^{1/2} y_0 X is invariant and X, Y
/// are homogeneous of equal degree with respect to every index.
pub fn is_point(p: &Point) -> bool {
    if p.x.is_zero() || p.y.is_zero() {
        return false;
    }
    if p.x.support().contains(&0) || p.y.support().contains(&0) {
        return false;
    }
    let (Some(dx), Some(dy)) = (p.x.multidegree(), p.y.multidegree()) else {
        return false;
    };
    if dx != dy {
        return false;
    }
    let x0 = Element::from_term(PBWMonomial::new(vec![(0, 1, 0)]).unwrap(), Scalar::one());
    let y0 = Element::from_term(PBWMonomial::new(vec![(0, 0, 1)]).unwrap(), Scalar::one());
    let lin = x0
        .mul(&p.y)
        .scale(&Scalar::s_pow(-1))
        .sub(&y0.mul(&p.x).scale(&Scalar::s_pow(1)));
    is_invariant(&lin)
}
