//! Exact arithmetic in the rational function field Q(q).
//!
//! [`LaurentPoly`] is a sparse Laurent polynomial with rational coefficients.
//! [`RatScalar`] is a reduced fraction of two of them, kept in a canonical
//! form so that equality is structural. [`Poly`] is a dense polynomial in
//! `q` used for gcd computations and fraction-free elimination.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("denominator vanishes at q = {0}")]
    SpecializationSingular(String),
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_pow(x: &BigRational, e: i64) -> BigRational {
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = BigRational::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Dense polynomials

/// Dense polynomial in `q`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = o.0.get(i);
            c.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    /// Euclidean division: `self = quo * d + rem` with `deg rem < deg d`.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), ScalarError> {
        let dd = d.degree().ok_or(ScalarError::DivisionByZero)?;
        let lc = d.lc().unwrap().clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quo = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &c * dc;
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(rem)))
    }

    /// Division known to be exact; panics in debug builds otherwise.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d).expect("exact_div by zero");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Poly::one();
            }
            let (_, r) = a.divrem(&b).unwrap();
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Splits `self = c * p` where `p` has coprime integer coefficients and
    /// a positive leading coefficient.
    pub fn primitive(&self) -> (BigRational, Poly) {
        if self.is_zero() {
            return (BigRational::one(), Poly::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in &self.0 {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in &self.0 {
            let v = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&v);
        }
        let mut c = BigRational::new(num_gcd, den_lcm);
        if self.lc().unwrap().is_negative() {
            c = -c;
        }
        let p = self.scale(&c.recip());
        (c, p)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Laurent polynomials

/// Sparse Laurent polynomial in `q` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigRational::one())
    }

    pub fn q_pow(e: i64) -> Self {
        LaurentPoly::monomial(e, BigRational::one())
    }

    pub fn monomial(e: i64, c: BigRational) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    pub fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn lowest(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn highest(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Returns `(e, c)` if the polynomial is the single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational, ScalarError> {
        if x.is_zero() && self.lowest().is_some_and(|e| e < 0) {
            return Err(ScalarError::SpecializationSingular(x.to_string()));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * rat_pow(x, *e);
        }
        Ok(acc)
    }

    /// Writes `self = q^shift * p` with `p` a polynomial with nonzero
    /// constant term. Zero maps to `(0, 0)`.
    pub fn to_dense(&self) -> (i64, Poly) {
        let Some(lo) = self.lowest() else {
            return (0, Poly::zero());
        };
        let hi = self.highest().unwrap();
        let mut c = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, v) in &self.terms {
            c[(e - lo) as usize] = v.clone();
        }
        (lo, Poly::from_coeffs(c))
    }

    pub fn from_dense(shift: i64, p: &Poly) -> Self {
        let mut out = LaurentPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(shift + i as i64, c.clone());
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

fn fmt_coeff_term(c: &BigRational, e: i64) -> String {
    let body = match e {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    };
    if e == 0 {
        return c.to_string();
    }
    if c.is_one() {
        body
    } else if c.is_integer() {
        format!("{c}{body}")
    } else {
        format!("({c}){body}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            let t = fmt_coeff_term(&a, *e);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{t}")?;
                first = false;
            } else {
                write!(f, " {} {t}", if neg { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Rational functions

/// An element of Q(q) in canonical reduced form.
///
/// The denominator is a polynomial with nonzero constant term, coprime
/// integer coefficients and positive leading coefficient; every power of
/// `q` lives in the numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RatScalar {
    fn default() -> Self {
        RatScalar::zero()
    }
}

impl RatScalar {
    pub fn zero() -> Self {
        RatScalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatScalar::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        RatScalar::from_laurent(LaurentPoly::constant(rat(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatScalar::from_laurent(LaurentPoly::constant(c))
    }

    pub fn q_pow(e: i64) -> Self {
        RatScalar::from_laurent(LaurentPoly::q_pow(e))
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(e: i64) -> Self {
        let s = RatScalar::q_pow(e);
        if e.rem_euclid(2) == 1 {
            -&s
        } else {
            s
        }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatScalar {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return RatScalar::zero();
        }
        let (sd, dd) = den.to_dense();
        if dd.degree() == Some(0) {
            let c = dd.coeffs()[0].recip();
            return RatScalar::from_laurent(num.shift(-sd).scale(&c));
        }
        let (sn, nd) = num.to_dense();
        let g = nd.gcd(&dd);
        let (nd, dd) = if g.degree() == Some(0) {
            (nd, dd)
        } else {
            (nd.exact_div(&g), dd.exact_div(&g))
        };
        let (c, dd) = dd.primitive();
        let nd = nd.scale(&c.recip());
        if dd.degree() == Some(0) {
            return RatScalar::from_laurent(LaurentPoly::from_dense(sn - sd, &nd));
        }
        RatScalar {
            num: LaurentPoly::from_dense(sn - sd, &nd),
            den: LaurentPoly::from_dense(0, &dd),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    /// Returns `e` when the scalar equals `q^e`.
    pub fn as_q_power(&self) -> Option<i64> {
        let p = self.as_laurent()?;
        match p.as_monomial() {
            Some((e, c)) if c.is_one() => Some(e),
            _ => None,
        }
    }

    /// Returns `(c, e)` when the scalar equals `c q^e` for a rational `c`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        let p = self.as_laurent()?;
        p.as_monomial().map(|(e, c)| (c.clone(), e))
    }

    pub fn shift(&self, k: i64) -> Self {
        RatScalar {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return RatScalar::zero();
        }
        RatScalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatScalar) -> Result<Self, ScalarError> {
        if o.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if o.is_laurent() && o.num.as_monomial().is_some() {
            let (e, c) = o.num.as_monomial().unwrap();
            return Ok(RatScalar {
                num: self.num.shift(-e).scale(&c.recip()),
                den: self.den.clone(),
            });
        }
        Ok(Self::normalize(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RatScalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(ScalarError::SpecializationSingular(x.to_string()));
        }
        Ok(self.num.eval(x)? / d)
    }

    /// Re-run canonicalization; a no-op on values built through the API.
    pub fn renormalized(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }

    /// Builds a possibly non-canonical value, for testing canonicalization.
    pub fn raw(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(RatScalar { num, den })
    }
}

impl Add for &RatScalar {
    type Output = RatScalar;
    fn add(self, o: &RatScalar) -> RatScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatScalar::from_laurent(&self.num + &o.num);
            }
            return RatScalar::normalize(&self.num + &o.num, self.den.clone());
        }
        RatScalar::normalize(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatScalar {
    type Output = RatScalar;
    fn sub(self, o: &RatScalar) -> RatScalar {
        self + &(-o)
    }
}

impl Mul for &RatScalar {
    type Output = RatScalar;
    fn mul(self, o: &RatScalar) -> RatScalar {
        if self.is_zero() || o.is_zero() {
            return RatScalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatScalar::from_laurent(&self.num * &o.num);
        }
        RatScalar::normalize(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RatScalar {
    type Output = RatScalar;
    fn neg(self) -> RatScalar {
        RatScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatScalar {
    type Output = RatScalar;
    fn neg(self) -> RatScalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for RatScalar {
            type Output = RatScalar;
            fn $m(self, o: RatScalar) -> RatScalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&RatScalar> for RatScalar {
            type Output = RatScalar;
            fn $m(self, o: &RatScalar) -> RatScalar {
                (&self).$m(o)
            }
        }
        impl $tr<RatScalar> for &RatScalar {
            type Output = RatScalar;
            fn $m(self, o: RatScalar) -> RatScalar {
                self.$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&RatScalar> for RatScalar {
    fn add_assign(&mut self, o: &RatScalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&RatScalar> for RatScalar {
    fn sub_assign(&mut self, o: &RatScalar) {
        *self = &*self - o;
    }
}

impl fmt::Display for RatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LaurentPoly| {
            if p.terms().len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

// ---------------------------------------------------------------------------
// Quantum combinatorics

/// `[r] = (q^r - q^-r)/(q - q^-1)` as a Laurent polynomial.
pub fn qint_poly(r: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    let (sign, r) = if r < 0 { (-1, -r) } else { (1, r) };
    let mut e = r - 1;
    while e >= 1 - r {
        p.add_term(e, rat(sign));
        e -= 2;
    }
    p
}

pub fn qint(r: i64) -> RatScalar {
    RatScalar::from_laurent(qint_poly(r))
}

fn fact_cache() -> &'static Mutex<Vec<LaurentPoly>> {
    static C: OnceLock<Mutex<Vec<LaurentPoly>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(vec![LaurentPoly::one()]))
}

fn binom_cache() -> &'static Mutex<HashMap<(i64, i64), LaurentPoly>> {
    static C: OnceLock<Mutex<HashMap<(i64, i64), LaurentPoly>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `[r]! = [1][2]...[r]`.
pub fn qfact(r: i64) -> Result<RatScalar, ScalarError> {
    if r < 0 {
        return Err(ScalarError::InvalidArgument(format!("qfact({r})")));
    }
    let mut cache = fact_cache().lock().unwrap();
    while cache.len() <= r as usize {
        let k = cache.len() as i64;
        let next = &cache[cache.len() - 1] * &qint_poly(k);
        cache.push(next);
    }
    Ok(RatScalar::from_laurent(cache[r as usize].clone()))
}

/// Gaussian binomial, computed by the Pascal recursion and memoized.
pub fn qbinom(m: i64, r: i64) -> Result<RatScalar, ScalarError> {
    if r < 0 || r > m {
        return Err(ScalarError::InvalidArgument(format!("qbinom({m}, {r})")));
    }
    Ok(RatScalar::from_laurent(qbinom_poly(m, r)))
}

fn qbinom_poly(m: i64, r: i64) -> LaurentPoly {
    if r == 0 || r == m {
        return LaurentPoly::one();
    }
    if let Some(p) = binom_cache().lock().unwrap().get(&(m, r)) {
        return p.clone();
    }
    let a = qbinom_poly(m - 1, r).shift(-r);
    let b = qbinom_poly(m - 1, r - 1).shift(m - r);
    let p = &a + &b;
    binom_cache().lock().unwrap().insert((m, r), p.clone());
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(*e, rat(*c));
        }
        p
    }

    #[test]
    fn self_division() {
        let x = RatScalar::from_laurent(lp(&[(1, 1), (-1, -1)]));
        assert!(x.checked_div(&x).unwrap().is_one());
    }

    #[test]
    fn bracket_two_factorization() {
        let a = RatScalar::from_laurent(lp(&[(2, 1), (-2, -1)]));
        let b = RatScalar::from_laurent(lp(&[(1, 1), (-1, -1)]));
        let r = a.checked_div(&b).unwrap();
        assert_eq!(r, RatScalar::from_laurent(lp(&[(1, 1), (-1, 1)])));
        assert_eq!(r.to_string(), "q + q^-1");
    }

    #[test]
    fn product_expansion() {
        let a = RatScalar::from_laurent(lp(&[(1, 1), (-1, 1)]));
        let b = RatScalar::from_laurent(lp(&[(2, 1), (0, 1), (-2, 1)]));
        let expect = RatScalar::from_laurent(lp(&[(3, 1), (1, 2), (-1, 2), (-3, 1)]));
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn bracket_values() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(3).to_string(), "q^2 + 1 + q^-2");
        assert_eq!(qint(-2), -qint(2));
        assert_eq!(qbinom(4, 2).unwrap().to_string(), "q^4 + q^2 + 2 + q^-2 + q^-4");
    }

    #[test]
    fn range_errors() {
        assert!(qfact(-1).is_err());
        assert!(qbinom(2, 3).is_err());
        assert!(qbinom(2, -1).is_err());
        assert_eq!(
            RatScalar::one().checked_div(&RatScalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn canonical_denominator() {
        let x = RatScalar::one().checked_div(&qint(2)).unwrap();
        assert_eq!(x.den().lowest(), Some(0));
        assert_eq!(x.to_string(), "q/(q^2 + 1)");
        let y = RatScalar::new(lp(&[(0, 2)]), lp(&[(3, 4), (1, -6)])).unwrap();
        assert_eq!(y.den().terms().values().next_back().unwrap(), &rat(2));
        assert_eq!(y.renormalized(), y);
    }

    #[test]
    fn specialization() {
        let x = RatScalar::one().checked_div(&(&RatScalar::q_pow(1) - &RatScalar::one())).unwrap();
        assert!(x.eval(&rat(1)).is_err());
        assert_eq!(x.eval(&rat(3)).unwrap(), BigRational::new(1.into(), 2.into()));
    }
}
