//! The noncommutative algebra of the coordinates v_i with
//!
//! ```text
//!   v_j v_i = q^2 v_i v_j + (1 - q^2) v_i^2      (i < j)
//! ```
//!
//! together with the polynomials p_{i_1,...,i_n} = [0i_1]...[0i_n] (where
//! [ij] = v_i - v_j and v_0 is an ordinary smallest generator), the
//! q-symmetric functions, q-power sums and the Newton relations.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pbw::Index;
use crate::scalar::Scalar;

/// A v-monomial: strictly increasing indices with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VMonomial {
    factors: Vec<(Index, u32)>,
}

impl VMonomial {
    pub fn unit() -> Self {
        VMonomial { factors: vec![] }
    }

    pub fn new(factors: Vec<(Index, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidInput("v-monomial indices must increase".into()));
            }
        }
        if factors.iter().any(|&(_, e)| e == 0) {
            return Err(Error::InvalidInput("zero exponent".into()));
        }
        Ok(VMonomial { factors })
    }

    pub fn factors(&self) -> &[(Index, u32)] {
        &self.factors
    }

    fn letters(&self) -> Vec<Index> {
        let mut out = Vec::new();
        for &(i, e) in &self.factors {
            out.extend(std::iter::repeat(i).take(e as usize));
        }
        out
    }
}

/// Sparse element of the v-algebra.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VElement {
    terms: BTreeMap<VMonomial, Scalar>,
}

impl VElement {
    pub fn zero() -> Self {
        VElement::default()
    }

    pub fn one() -> Self {
        VElement::from_term(VMonomial::unit(), Scalar::one())
    }

    pub fn from_term(m: VMonomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        VElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &VMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: VMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
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
        VElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return VElement::zero();
        }
        VElement {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = VElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut word = m1.letters();
                word.extend(m2.letters());
                out = out.add(&v_normalize(&word).scale(&c1.mul(c2)));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = VElement::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// The single generator v_i.
pub fn v(i: Index) -> VElement {
    VElement::from_term(VMonomial { factors: vec![(i, 1)] }, Scalar::one())
}

/// Normalize a word of v-letters into the ascending PBW basis by the
/// adjacent rewriting rule v_j v_i -> q^2 v_i v_j + (1 - q^2) v_i v_i.
pub fn v_normalize(word: &[Index]) -> VElement {
    let q2 = Scalar::q_pow(2);
    let one_minus_q2 = Scalar::one().sub(&q2);
    let mut out = VElement::zero();
    let mut work = vec![(Scalar::one(), word.to_vec())];
    while let Some((coeff, letters)) = work.pop() {
        match (0..letters.len().saturating_sub(1)).find(|&p| letters[p] > letters[p + 1]) {
            None => {
                let mut factors: Vec<(Index, u32)> = Vec::new();
                for &i in &letters {
                    match factors.last_mut() {
                        Some(f) if f.0 == i => f.1 += 1,
                        _ => factors.push((i, 1)),
                    }
                }
                out.add_term(VMonomial { factors }, coeff);
            }
            Some(p) => {
                let mut swapped = letters.clone();
                swapped.swap(p, p + 1);
                work.push((coeff.mul(&q2), swapped));
                let mut squared = letters;
                squared[p] = squared[p + 1];
                work.push((coeff.mul(&one_minus_q2), squared));
            }
        }
    }
    out
}

/// [0i] = v_0 - v_i.
pub fn vbracket(i: Index) -> VElement {
    v(0).sub(&v(i))
}

/// The polynomial p_{i_1,...,i_n} = [0i_1][0i_2]...[0i_n].
pub fn poly_seq(indices: &[Index]) -> VElement {
    let mut acc = VElement::one();
    for &i in indices {
        acc = acc.mul(&vbracket(i));
    }
    acc
}

/// p_{1,2,...,n}.
pub fn poly(n: u32) -> Result<VElement> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("poly({n})")));
    }
    let idx: Vec<Index> = (1..=n as Index).collect();
    Ok(poly_seq(&idx))
}

/// The j-th q-symmetric function of v_1,...,v_n:
///
/// ```text
///   A_j = (-1)^j sum_{i_1 < ... < i_j} q^{2j - 2(i_1+...+i_j)} v_{i_1}...v_{i_j}
/// ```
///
/// with A_0 = 1.
pub fn elementary_symmetric(n: u32, j: u32) -> Result<VElement> {
    if j > n {
        return Err(Error::OutOfRange(format!("elementary_symmetric({n},{j})")));
    }
    if j == 0 {
        return Ok(VElement::one());
    }
    fn rec(n: Index, j: usize, start: Index, subset: &mut Vec<Index>, out: &mut VElement) {
        if subset.len() == j {
            let sum: i64 = subset.iter().map(|&i| i as i64).sum();
            let mut c = Scalar::q_pow(2 * j as i64 - 2 * sum);
            if j % 2 == 1 {
                c = c.neg();
            }
            let m = VMonomial { factors: subset.iter().map(|&i| (i, 1)).collect() };
            out.add_term(m, c);
            return;
        }
        for i in start..=n {
            subset.push(i);
            rec(n, j, i + 1, subset, out);
            subset.pop();
        }
    }
    let mut out = VElement::zero();
    let mut subset: Vec<Index> = Vec::new();
    rec(n as Index, j as usize, 1, &mut subset, &mut out);
    Ok(out)
}

/// The j-th q-power sum P_j = v_1^j + q^{-2} v_2^j + ... + q^{2-2n} v_n^j.
pub fn power_sum(n: u32, j: u32) -> Result<VElement> {
    if n < 1 || j < 1 {
        return Err(Error::OutOfRange(format!("power_sum({n},{j})")));
    }
    let mut out = VElement::zero();
    for t in 1..=n {
        out.add_term(
            VMonomial { factors: vec![(t as Index, j)] },
            Scalar::q_pow(2 - 2 * t as i64),
        );
    }
    Ok(out)
}

/// Left-hand side minus right-hand side of the Newton relation
///
/// ```text
///   P_k = -q^{2(k-1)(n-1)} (k)_{q^2} A_k - sum_{i=1}^{k-1} q^{2(k-i)(n-1)} A_{k-i} P_i
/// ```
///
/// with A_t := 0 for t > n; zero iff the relation holds.
pub fn newton_residual(n: u32, k: u32) -> Result<VElement> {
    if n < 1 || k < 1 {
        return Err(Error::OutOfRange(format!("newton_residual({n},{k})")));
    }
    let a = |t: u32| -> Result<VElement> {
        if t > n {
            Ok(VElement::zero())
        } else {
            elementary_symmetric(n, t)
        }
    };
    let mut rhs = a(k)?
        .scale(&Scalar::q_pow(2 * (k as i64 - 1) * (n as i64 - 1)).mul(&Scalar::qparen(k as i64)?))
        .neg();
    for i in 1..k {
        let term = a(k - i)?
            .mul(&power_sum(n, i)?)
            .scale(&Scalar::q_pow(2 * (k as i64 - i as i64) * (n as i64 - 1)));
        rhs = rhs.sub(&term);
    }
    Ok(power_sum(n, k)?.sub(&rhs))
}

/// p_{1..n} - q^{n(n-1)} sum_j v_0^{n-j} A_j; zero iff the expansion of
/// p_{1..n} in the v_0-first basis matches the symmetric functions.
pub fn poly_expansion_residual(n: u32) -> Result<VElement> {
    let p = poly(n)?;
    let mut rhs = VElement::zero();
    for j in 0..=n {
        let v0pow = if n == j {
            VElement::one()
        } else {
            VElement::from_term(VMonomial { factors: vec![(0, n - j)] }, Scalar::one())
        };
        rhs = rhs.add(&v0pow.mul(&elementary_symmetric(n, j)?));
    }
    Ok(p.sub(&rhs.scale(&Scalar::q_pow(n as i64 * (n as i64 - 1)))))
}

impl fmt::Display for VMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(i, e)| if e == 1 { format!("v[{i}]") } else { format!("v[{i}]^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Display for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({}) * {}", c.display_q(), m))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct VTermRepr {
    monomial: Vec<(Index, u32)>,
    coef: Scalar,
}

impl serde::Serialize for VElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<VTermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| VTermRepr { monomial: m.factors.clone(), coef: c.clone() })
            .collect();
        v.serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for VElement {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<VTermRepr>::deserialize(de)?;
        let mut out = VElement::zero();
        for t in v {
            out.add_term(VMonomial::new(t.monomial).map_err(D::Error::custom)?, t.coef);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_traits::Zero;

    fn vm(factors: &[(Index, u32)]) -> VElement {
        VElement::from_term(VMonomial::new(factors.to_vec()).unwrap(), Scalar::one())
    }

    #[test]
    fn normalize_rule() {
        // v_2 v_1 = q^2 v_1 v_2 + (1 - q^2) v_1^2
        let got = v_normalize(&[2, 1]);
        let expect = vm(&[(1, 1), (2, 1)])
            .scale(&Scalar::q_pow(2))
            .add(&vm(&[(1, 2)]).scale(&Scalar::one().sub(&Scalar::q_pow(2))));
        assert_eq!(got, expect);
        // already normal
        assert_eq!(v_normalize(&[1, 2]), vm(&[(1, 1), (2, 1)]));
        // v_3 v_1^2 = q^4 v_1^2 v_3 + (1 - q^4) v_1^3
        let got = v_normalize(&[3, 1, 1]);
        let expect = vm(&[(1, 2), (3, 1)])
            .scale(&Scalar::q_pow(4))
            .add(&vm(&[(1, 3)]).scale(&Scalar::one().sub(&Scalar::q_pow(4))));
        assert_eq!(got, expect);
        // the power identity used in the Newton proof:
        // v_{n+1} v_j^i = q^{2i} v_j^i v_{n+1} + (1 - q^{2i}) v_j^{i+1}
        for i in 1..=4u32 {
            let mut word = vec![4];
            word.extend(std::iter::repeat(2).take(i as usize));
            let got = v_normalize(&word);
            let expect = vm(&[(2, i), (4, 1)])
                .scale(&Scalar::q_pow(2 * i as i64))
                .add(&vm(&[(2, i + 1)]).scale(&Scalar::one().sub(&Scalar::q_pow(2 * i as i64))));
            assert_eq!(got, expect, "i = {i}");
        }
    }

    #[test]
    fn poly_small() {
        assert_eq!(poly(1).unwrap(), v(0).sub(&v(1)));
        // p_{1,2} = q^2 v0^2 - q^2 v0 v1 - v0 v2 + v1 v2
        let got = poly(2).unwrap();
        let expect = vm(&[(0, 2)])
            .scale(&Scalar::q_pow(2))
            .sub(&vm(&[(0, 1), (1, 1)]).scale(&Scalar::q_pow(2)))
            .sub(&vm(&[(0, 1), (2, 1)]))
            .add(&vm(&[(1, 1), (2, 1)]));
        assert_eq!(got, expect);
    }

    #[test]
    fn order_sensitivity_pair() {
        // p_{1,2} != p_{2,1}; the reversed product picks up a v_1^2 term.
        // Up to the overall factor q^{n(n-1)} these are the two displayed
        // expansions (whose printed prefactor q^{n(1-n)} is a typo).
        let p12 = poly_seq(&[1, 2]);
        let p21 = poly_seq(&[2, 1]);
        assert_ne!(p12, p21);
        let display12 = vm(&[(0, 2)])
            .scale(&Scalar::q_pow(-2))
            .sub(&vm(&[(0, 1), (1, 1)]).scale(&Scalar::q_pow(-2)))
            .sub(&vm(&[(0, 1), (2, 1)]).scale(&Scalar::q_pow(-4)))
            .add(&vm(&[(1, 1), (2, 1)]).scale(&Scalar::q_pow(-4)));
        assert_eq!(p12.scale(&Scalar::q_pow(-4)), display12);
        let display21 = vm(&[(0, 2)])
            .scale(&Scalar::q_pow(-2))
            .sub(&vm(&[(0, 1), (1, 1)]).scale(&Scalar::q_pow(-4)))
            .sub(&vm(&[(0, 1), (2, 1)]).scale(&Scalar::q_pow(-2)))
            .add(&vm(&[(1, 1), (2, 1)]).scale(&Scalar::q_pow(-2)))
            .add(&vm(&[(1, 2)]).scale(&Scalar::q_pow(-4).sub(&Scalar::q_pow(-2))));
        assert_eq!(p21.scale(&Scalar::q_pow(-4)), display21);
        // the extra term
        let diff_coeff = p21.coefficient(&VMonomial::new(vec![(1, 2)]).unwrap());
        assert_eq!(diff_coeff, Scalar::one().sub(&Scalar::q_pow(2)));
    }

    #[test]
    fn symmetric_functions() {
        assert_eq!(elementary_symmetric(3, 0).unwrap(), VElement::one());
        // A_1 for n=2: -(v_1 + q^{-2} v_2)
        let got = elementary_symmetric(2, 1).unwrap();
        let expect = vm(&[(1, 1)]).add(&vm(&[(2, 1)]).scale(&Scalar::q_pow(-2))).neg();
        assert_eq!(got, expect);
        // A_n: single summand (-1)^n q^{2n - 2(1+...+n)} v_1...v_n
        for n in 1..=4u32 {
            let got = elementary_symmetric(n, n).unwrap();
            let sum: i64 = (1..=n as i64).sum();
            let mut c = Scalar::q_pow(2 * n as i64 - 2 * sum);
            if n % 2 == 1 {
                c = c.neg();
            }
            let m = VMonomial::new((1..=n as Index).map(|i| (i, 1)).collect()).unwrap();
            assert_eq!(got, VElement::from_term(m, c));
        }
        assert!(elementary_symmetric(2, 3).is_err());
    }

    #[test]
    fn power_sums() {
        assert_eq!(power_sum(1, 3).unwrap(), vm(&[(1, 3)]));
        let got = power_sum(2, 1).unwrap();
        assert_eq!(got, vm(&[(1, 1)]).add(&vm(&[(2, 1)]).scale(&Scalar::q_pow(-2))));
        let got = power_sum(3, 2).unwrap();
        assert_eq!(
            got,
            vm(&[(1, 2)])
                .add(&vm(&[(2, 2)]).scale(&Scalar::q_pow(-2)))
                .add(&vm(&[(3, 2)]).scale(&Scalar::q_pow(-4)))
        );
    }

    #[test]
    fn newton_relations_hold() {
        assert!(newton_residual(1, 1).unwrap().is_zero());
        assert!(newton_residual(2, 2).unwrap().is_zero());
        assert!(newton_residual(3, 5).unwrap().is_zero());
        // P_1 = -A_1
        assert_eq!(power_sum(3, 1).unwrap(), elementary_symmetric(3, 1).unwrap().neg());
    }

    #[test]
    fn poly_expansion_matches() {
        for n in 1..=4 {
            assert!(poly_expansion_residual(n).unwrap().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn classical_limit_commutes() {
        // at q = 1 the algebra is commutative: p_{1,2} and p_{2,1} agree
        // coefficient-wise after evaluation
        let p12 = poly_seq(&[1, 2]);
        let p21 = poly_seq(&[2, 1]);
        let diff = p12.sub(&p21);
        let s0 = Rat::new(1.into(), 1.into());
        for (_, c) in diff.terms() {
            assert!(c.eval(&s0).unwrap().is_zero());
        }
    }

    #[test]
    fn json_roundtrip() {
        let e = poly(3).unwrap();
        let text = serde_json::to_string(&e).unwrap();
        let back: VElement = serde_json::from_str(&text).unwrap();
        assert_eq!(e, back);
    }
}
