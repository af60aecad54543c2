//! Exact arithmetic in the field Q(s) of rational functions in a single
//! formal variable s with s^2 = q, together with the q-combinatorics
//! ([i], (i), q-factorials, q-binomials) used everywhere else.
//!
//! Working in s = q^(1/2) keeps every half-integer power of q at an integer
//! exponent, so a scalar is a quotient of two Laurent polynomials in s.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse Laurent polynomial in s over exact rationals.
///
/// Invariant: no stored zero coefficients; the zero polynomial is the empty
/// map. Exponents may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rat::one())
    }

    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_add(&mut self, exp: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiply by the unit c * s^k.
    fn mul_unit(&self, k: i64, c: &Rat) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (e + k, v * c)).collect(),
        }
    }

    /// s -> s^{-1} on every term.
    pub fn star(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval(&self, s0: &Rat) -> Result<Rat> {
        if s0.is_zero() && self.min_exp().map_or(false, |e| e < 0) {
            return Err(Error::Pole("0".into()));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rat(s0, *e)?;
        }
        Ok(acc)
    }

    /// Dense coefficient vector after shifting the lowest exponent to zero.
    fn to_dense(&self) -> (i64, Vec<Rat>) {
        if self.is_zero() {
            return (0, vec![]);
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut v = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i64, v: Vec<Rat>) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                terms.insert(shift + i as i64, c);
            }
        }
        LaurentPoly { terms }
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lo_a, a) = self.to_dense();
        let (lo_b, b) = other.to_dense();
        let (q, r) = dense_divmod(&a, &b);
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(lo_a - lo_b, q))
    }
}

fn pow_rat(base: &Rat, exp: i64) -> Result<Rat> {
    if exp == 0 {
        return Ok(Rat::one());
    }
    if base.is_zero() {
        if exp < 0 {
            return Err(Error::Pole("0".into()));
        }
        return Ok(Rat::zero());
    }
    let mut acc = Rat::one();
    let b = if exp > 0 { base.clone() } else { base.recip() };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    Ok(acc)
}

/// Dense polynomial division with remainder (coefficients ascending).
fn dense_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = b.iter().rposition(|c| !c.is_zero()).expect("nonzero divisor");
    let mut r: Vec<Rat> = a.to_vec();
    let mut da = match r.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => return (vec![], vec![]),
    };
    if da < db {
        return (vec![], r);
    }
    let mut q = vec![Rat::zero(); da - db + 1];
    let lead = b[db].clone();
    while da >= db && r.iter().any(|c| !c.is_zero()) {
        if r[da].is_zero() {
            if da == 0 {
                break;
            }
            da -= 1;
            continue;
        }
        let f = &r[da] / &lead;
        q[da - db] = f.clone();
        for i in 0..=db {
            let t = &b[i] * &f;
            r[da - db + i] -= t;
        }
        if da == 0 {
            break;
        }
        da -= 1;
    }
    (q, r)
}

/// Monic gcd of two dense polynomials over Q.
fn dense_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let db = b.iter().rposition(|c| !c.is_zero());
        let db = match db {
            None => {
                // make `a` monic
                if let Some(da) = a.iter().rposition(|c| !c.is_zero()) {
                    let lead = a[da].clone();
                    for c in a.iter_mut() {
                        *c /= &lead;
                    }
                    a.truncate(da + 1);
                }
                return a;
            }
            Some(d) => d,
        };
        let (_, r) = dense_divmod(&a, &b);
        a = b;
        a.truncate(db + 1);
        b = r;
    }
}

/// Exact rational function in s with s^2 = q.
///
/// Canonical form: numerator and denominator share no polynomial factor, the
/// denominator's lowest exponent is 0 and the denominator is a primitive
/// integer polynomial whose lowest coefficient is positive. Equality of
/// scalars is structural equality of the canonical pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    fn make(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar { num, den: LaurentPoly::one() };
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        // strip the common polynomial factor
        let (_, a) = num.to_dense();
        let (_, b) = den.to_dense();
        let g = dense_gcd(&a, &b);
        let (num, den) = if g.len() > 1 {
            let g = LaurentPoly::from_dense(0, g);
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        } else {
            (num, den)
        };
        // shift the denominator so its minimal exponent is 0
        let shift = den.min_exp().unwrap();
        let num = num.mul_unit(-shift, &Rat::one());
        let den = den.mul_unit(-shift, &Rat::one());
        // scale so the denominator is integer-primitive with positive lowest
        // coefficient
        let mut content = BigInt::zero();
        let mut denom_lcm = BigInt::one();
        for (_, c) in den.terms() {
            content = num_integer::gcd(content, c.numer().clone());
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut unit = Rat::new(content, denom_lcm);
        let low = den.terms().next().unwrap().1;
        if low.is_negative() {
            unit = -unit;
        }
        let inv = unit.recip();
        Scalar { num: num.mul_unit(0, &inv), den: den.mul_unit(0, &inv) }
    }

    pub fn zero() -> Self {
        Scalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { num: LaurentPoly::monomial(0, rat(n, 1)), den: LaurentPoly::one() }
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar { num: LaurentPoly::monomial(0, r), den: LaurentPoly::one() }
    }

    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(num, den))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// s^k, i.e. q^(k/2).
    pub fn s_pow(k: i64) -> Self {
        Scalar { num: LaurentPoly::monomial(k, Rat::one()), den: LaurentPoly::one() }
    }

    /// q^k.
    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    /// q.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Scalar { num: self.num.add(&other.num), den: LaurentPoly::one() };
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::make(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Scalar { num: self.num.mul(&other.num), den: LaurentPoly::one() };
        }
        Self::make(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// The star involution: s -> s^{-1} (conjugation for |q| = 1).
    pub fn star(&self) -> Self {
        Self::make(self.num.star(), self.den.star())
    }

    /// Exact evaluation at a rational value of s.
    pub fn eval(&self, s0: &Rat) -> Result<Rat> {
        let d = self.den.eval(s0)?;
        if d.is_zero() {
            return Err(Error::Pole(s0.to_string()));
        }
        Ok(self.num.eval(s0)? / d)
    }

    /// The q-number [i] = (q^i - q^{-i}) / (q - q^{-1}); [-i] = -[i].
    pub fn qnum(i: i64) -> Self {
        let (sign, i) = if i < 0 { (-1, -i) } else { (1, i) };
        let mut p = LaurentPoly::zero();
        let mut e = 2 * (i - 1);
        while e >= -2 * (i - 1) {
            p.insert_add(e, rat(sign, 1));
            e -= 4;
        }
        Scalar { num: p, den: LaurentPoly::one() }
    }

    /// The round q-number (i) = 1 + q^2 + ... + q^{2i-2} = q^{i-1} [i].
    pub fn qparen(i: i64) -> Result<Self> {
        if i < 0 {
            return Err(Error::OutOfRange(format!("qparen({i})")));
        }
        let mut p = LaurentPoly::zero();
        for t in 0..i {
            p.insert_add(4 * t, Rat::one());
        }
        Ok(Scalar { num: p, den: LaurentPoly::one() })
    }

    /// [n]! = [1] [2] ... [n].
    pub fn qfactorial(n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::OutOfRange(format!("qfactorial({n})")));
        }
        let mut acc = Scalar::one();
        for t in 1..=n {
            acc = acc.mul(&Self::qnum(t));
        }
        Ok(acc)
    }

    /// Gaussian binomial [n]! / ([n-k]! [k]!); always a Laurent polynomial.
    pub fn qbinomial(n: i64, k: i64) -> Result<Self> {
        if k < 0 || k > n {
            return Err(Error::OutOfRange(format!("qbinomial({n},{k})")));
        }
        let b = Self::qfactorial(n)?
            .div(&Self::qfactorial(n - k)?.mul(&Self::qfactorial(k)?))?;
        debug_assert!(b.den.is_one(), "q-binomial must clear its denominator");
        Ok(b)
    }

    /// [n choose k] extended by zero outside 0 <= k <= n.
    pub(crate) fn qbinomial_or_zero(n: i64, k: i64) -> Self {
        if k < 0 || k > n {
            Scalar::zero()
        } else {
            Self::qbinomial(n, k).expect("in range")
        }
    }

    /// True if the scalar is a Laurent polynomial (unit denominator).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    fn display(&self, var: PowerVar) -> String {
        // for printing, negative powers of s move into the denominator
        let shift = self.num.min_exp().unwrap_or(0).min(0);
        let num = self.num.mul_unit(-shift, &Rat::one());
        let den = self.den.mul_unit(-shift, &Rat::one());
        let num_str = poly_string(&num, var);
        if den.is_one() {
            return num_str;
        }
        let den_str = poly_string(&den, var);
        let wrap = |s: String| {
            if s.contains(" + ") || s.contains(" - ") || s.starts_with('-') || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(num_str), wrap(den_str))
    }

    /// Canonical text in s, numerator and denominator as descending sums.
    pub fn display_s(&self) -> String {
        self.display(PowerVar::S)
    }

    /// Text in q, writing s^k as q^(k/2) for odd k.
    pub fn display_q(&self) -> String {
        self.display(PowerVar::Q)
    }
}

#[derive(Clone, Copy)]
enum PowerVar {
    S,
    Q,
}

fn power_string(exp: i64, var: PowerVar) -> Option<String> {
    if exp == 0 {
        return None;
    }
    Some(match var {
        PowerVar::S => {
            if exp == 1 {
                "s".into()
            } else {
                format!("s^{exp}")
            }
        }
        PowerVar::Q => {
            if exp == 2 {
                "q".into()
            } else if exp % 2 == 0 {
                format!("q^{}", exp / 2)
            } else {
                format!("q^({exp}/2)")
            }
        }
    })
}

fn poly_string(p: &LaurentPoly, var: PowerVar) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match power_string(*e, var) {
            None => out.push_str(&mag.to_string()),
            Some(p) => {
                if mag.is_one() {
                    out.push_str(&p);
                } else {
                    out.push_str(&format!("{mag}*{p}"));
                }
            }
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_s())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        Scalar::div(self, rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

// ---------------------------------------------------------------------------
// JSON form: Laurent polynomials as exponent -> [p, q] maps.
// ---------------------------------------------------------------------------

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = ser.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            m.serialize_entry(&e.to_string(), &[c.numer().to_string(), c.denom().to_string()])?;
        }
        m.end()
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: BTreeMap<String, [String; 2]> = BTreeMap::deserialize(de)?;
        let mut out = LaurentPoly::zero();
        for (e, [p, q]) in raw {
            let e: i64 = e.parse().map_err(D::Error::custom)?;
            let p: BigInt = p.parse().map_err(D::Error::custom)?;
            let q: BigInt = q.parse().map_err(D::Error::custom)?;
            if q.is_zero() {
                return Err(D::Error::custom("zero denominator in coefficient"));
            }
            out.insert_add(e, Rat::new(p, q));
        }
        Ok(out)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ScalarRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr { num: self.num.clone(), den: self.den.clone() }.serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ScalarRepr::deserialize(de)?;
        Scalar::from_parts(repr.num, repr.den).map_err(D::Error::custom)
    }
}

// Re-export gcd/lcm helpers through num-bigint's integer impls.
mod num_integer {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    pub fn gcd(a: BigInt, b: BigInt) -> BigInt {
        let (mut a, mut b) = (a.abs(), b.abs());
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(a: BigInt, b: BigInt) -> BigInt {
        if a.is_zero() || b.is_zero() {
            return BigInt::zero();
        }
        let g = gcd(a.clone(), b.clone());
        (a / g * b).abs()
    }
}
