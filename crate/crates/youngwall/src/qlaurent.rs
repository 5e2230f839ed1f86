//! Exact integer Laurent polynomials in one variable `q`.
//!
//! Every scalar produced by the Fock space action, the divided powers and the
//! canonical-basis recursion lives in `Z[q, q^-1]`.  [`LaurentPoly`] stores a
//! sparse, normalized term list (ascending exponents, no zero coefficients),
//! so structural equality is ring equality.
//!
//! The coefficient ring is generic over any signed integer type implementing
//! [`Coefficient`]; the crate works with [`Poly`] (arbitrary precision) and
//! offers [`SmallPoly`] (`i64`) for callers that know their coefficients are
//! small.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Integer types usable as polynomial coefficients.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + Hash + Ord + Signed + Integer + ToPrimitive + FromPrimitive
    + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + Hash
        + Ord
        + Signed
        + Integer
        + ToPrimitive
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Errors raised by Laurent polynomial arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    /// `a / b` has no exact quotient in `Z[q, q^-1]`.
    #[error("NotDivisible: {numerator} is not divisible by {denominator}")]
    NotDivisible { numerator: String, denominator: String },
    /// Division by the zero polynomial.
    #[error("NotDivisible: division by zero")]
    DivisionByZero,
    /// A quantum integer or binomial was requested outside its domain.
    #[error("OutOfRange: {0}")]
    OutOfRange(String),
    /// The text form could not be parsed.
    #[error("ParseError: {0}")]
    Parse(String),
}

/// An element of `Z[q, q^-1]` with coefficients of type `C`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<C> {
    terms: Vec<(i64, C)>,
}

/// Arbitrary-precision Laurent polynomial, used throughout the crate.
pub type Poly = LaurentPoly<BigInt>;
/// Machine-word Laurent polynomial.
pub type SmallPoly = LaurentPoly<i64>;

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    /// The constant `1`.
    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, C::one())
    }

    /// `c * q^e` (zero if `c == 0`).
    pub fn monomial(e: i64, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// The integer constant `c`.
    pub fn constant(c: i64) -> Self {
        Self::monomial(0, C::from_i64(c).expect("coefficient type holds i64 constants"))
    }

    /// Build from arbitrary `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut v: Vec<(i64, C)> = terms.into_iter().collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, C)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.clone() + c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms: out }
    }

    /// Build from `i64` pairs, for literals in tests and fixtures.
    pub fn from_i64_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, C::from_i64(c).expect("coefficient type holds i64"))),
        )
    }

    /// Normalized terms in ascending exponent order.
    pub fn terms(&self) -> &[(i64, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> C {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(idx) => self.terms[idx].1.clone(),
            Err(_) => C::zero(),
        }
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (*e, x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Substitute `q -> q^s` (used for `q_i = q^{s_i}`).
    pub fn dilate(&self, s: i64) -> Self {
        assert!(s > 0, "dilation factor must be positive");
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * s, c.clone())).collect(),
        }
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<(i64, C)> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        LaurentPoly { terms }
    }

    /// Whether `bar(self) == self`.
    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// Raise to a nonnegative power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The bar-invariant part used by the canonical-basis peeling:
    /// `sum_{i>=1} a_{-i} (q^i + q^-i) + a_0`.
    ///
    /// `self - gamma_symmetrize(self)` has no terms of exponent `<= 0`.
    pub fn gamma_symmetrize(&self) -> Self {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            match e.cmp(&0) {
                Ordering::Less => {
                    terms.push((*e, c.clone()));
                    terms.push((-e, c.clone()));
                }
                Ordering::Equal => terms.push((0, c.clone())),
                Ordering::Greater => {}
            }
        }
        Self::from_terms(terms)
    }

    /// Whether every exponent is `>= 1`, i.e. the polynomial lies in `qZ[q]`.
    pub fn in_q_zq(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 1)
    }

    /// Exact division in `Z[q, q^-1]`.
    ///
    /// Returns [`LaurentError::NotDivisible`] when no Laurent polynomial `c`
    /// with `self = divisor * c` exists.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let not_divisible = || LaurentError::NotDivisible {
            numerator: self.to_string(),
            denominator: divisor.to_string(),
        };
        // Both operands shifted to honest polynomials with nonzero constant
        // term; the quotient is then a polynomial as well.
        let a_min = self.min_exponent().unwrap();
        let b_min = divisor.min_exponent().unwrap();
        let b_deg = (divisor.max_exponent().unwrap() - b_min) as usize;
        let a_deg = (self.max_exponent().unwrap() - a_min) as usize;
        if a_deg < b_deg {
            return Err(not_divisible());
        }
        let mut rem = vec![C::zero(); a_deg + 1];
        for (e, c) in &self.terms {
            rem[(e - a_min) as usize] = c.clone();
        }
        let mut den = vec![C::zero(); b_deg + 1];
        for (e, c) in &divisor.terms {
            den[(e - b_min) as usize] = c.clone();
        }
        let lead = den[b_deg].clone();
        let mut quot = vec![C::zero(); a_deg - b_deg + 1];
        for top in (b_deg..=a_deg).rev() {
            let c = rem[top].clone();
            if c.is_zero() {
                continue;
            }
            let (qc, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            let shift = top - b_deg;
            for (j, d) in den.iter().enumerate() {
                if !d.is_zero() {
                    rem[shift + j] = rem[shift + j].clone() - qc.clone() * d.clone();
                }
            }
            quot[shift] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(not_divisible());
        }
        Ok(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(j, c)| (j as i64 + a_min - b_min, c)),
        ))
    }

    /// Evaluate the text form produced by [`fmt::Display`].
    pub fn parse(s: &str) -> Result<Self, LaurentError> {
        s.parse()
    }
}

/// `[n]_i = (q_i^n - q_i^-n) / (q_i - q_i^-1)` with `q_i = q^s`.
pub fn quantum_int<C: Coefficient>(n: i64, s: i64) -> Result<LaurentPoly<C>, LaurentError> {
    if n < 0 {
        return Err(LaurentError::OutOfRange(format!("quantum integer of negative n = {n}")));
    }
    if s <= 0 {
        return Err(LaurentError::OutOfRange(format!("symmetrizer s = {s} must be positive")));
    }
    Ok(LaurentPoly::from_terms(
        (0..n).map(|j| (s * (n - 1 - 2 * j), C::one())),
    ))
}

/// Quantum integer allowing a negative argument: `[-n] = -[n]`.
pub fn quantum_int_signed<C: Coefficient>(n: i64, s: i64) -> LaurentPoly<C> {
    let p = quantum_int::<C>(n.abs(), s).expect("nonnegative argument");
    if n < 0 {
        -p
    } else {
        p
    }
}

/// `[n]_i! = [1]_i [2]_i ... [n]_i`.
pub fn quantum_factorial<C: Coefficient>(n: i64, s: i64) -> Result<LaurentPoly<C>, LaurentError> {
    if n < 0 {
        return Err(LaurentError::OutOfRange(format!("quantum factorial of negative n = {n}")));
    }
    let mut acc = LaurentPoly::one();
    for j in 1..=n {
        acc = &acc * &quantum_int::<C>(j, s)?;
    }
    Ok(acc)
}

/// Quantum binomial `[m choose k]_i`, computed by exact division of factorials.
pub fn quantum_binomial<C: Coefficient>(
    m: i64,
    k: i64,
    s: i64,
) -> Result<LaurentPoly<C>, LaurentError> {
    if k < 0 || k > m {
        return Err(LaurentError::OutOfRange(format!("binomial [{m} choose {k}]")));
    }
    let num = quantum_factorial::<C>(m, s)?;
    let den = &quantum_factorial::<C>(k, s)? * &quantum_factorial::<C>(m - k, s)?;
    num.exact_div(&den)
}

fn merge<C: Coefficient>(a: &[(i64, C)], b: &[(i64, C)], negate_b: bool) -> Vec<(i64, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &C| if negate_b { -c.clone() } else { c.clone() };
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, nb(&b[j].1)));
            j += 1;
        } else {
            let c = a[i].1.clone() + nb(&b[j].1);
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<C: Coefficient> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl<C: Coefficient> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl<C: Coefficient> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let lo = self.min_exponent().unwrap() + rhs.min_exponent().unwrap();
        let hi = self.max_exponent().unwrap() + rhs.max_exponent().unwrap();
        let mut dense = vec![C::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let slot = &mut dense[(ea + eb - lo) as usize];
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        LaurentPoly {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as i64 + lo, c))
                .collect(),
        }
    }
}

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -(self.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: Self) -> LaurentPoly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coefficient> $tr<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    /// Canonical text form, e.g. `q^-1 + 3 + 2*q^2`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            match (var.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{var}")?,
                (false, false) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> FromStr for LaurentPoly<C> {
    type Err = LaurentError;

    /// Parses the canonical text form (and tolerates any term order,
    /// repeated exponents and missing spaces).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(LaurentError::Parse("empty polynomial".into()));
        }
        // Split into signed terms, keeping exponent minus signs attached.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let chars: Vec<char> = cleaned.chars().collect();
        for (idx, &ch) in chars.iter().enumerate() {
            let after_caret = idx > 0 && chars[idx - 1] == '^';
            if (ch == '+' || ch == '-') && !after_caret {
                if !current.is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                } else if idx != 0 {
                    return Err(LaurentError::Parse(format!("dangling sign in {s:?}")));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(LaurentError::Parse(format!("trailing sign in {s:?}")));
        }
        pieces.push((negative, current));

        let parse_int = |t: &str| -> Result<C, LaurentError> {
            C::from_str_radix(t, 10).map_err(|_| LaurentError::Parse(format!("bad integer {t:?}")))
        };
        let mut terms = Vec::new();
        for (neg, body) in pieces {
            let (coef, var) = match body.split_once('*') {
                Some((c, v)) => (parse_int(c)?, Some(v.to_string())),
                None if body.starts_with('q') => (C::one(), Some(body.clone())),
                None => (parse_int(&body)?, None),
            };
            let exp = match var {
                None => 0,
                Some(v) if v == "q" => 1,
                Some(v) => {
                    let rest = v
                        .strip_prefix("q^")
                        .ok_or_else(|| LaurentError::Parse(format!("bad monomial {v:?}")))?;
                    rest.parse::<i64>()
                        .map_err(|_| LaurentError::Parse(format!("bad exponent {rest:?}")))?
                }
            };
            terms.push((exp, if neg { -coef } else { coef }));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<C: Coefficient> Serialize for LaurentPoly<C> {
    /// JSON form: `[[exponent, coefficient], ...]` sorted by exponent.
    /// Coefficients beyond the `i64` range are emitted as decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, serde_json::Value)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let v = match c.to_i64() {
                    Some(x) => serde_json::Value::from(x),
                    None => serde_json::Value::from(c.to_string()),
                };
                (*e, v)
            })
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for LaurentPoly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, serde_json::Value)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, v) in pairs {
            let c = match &v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .and_then(C::from_i64)
                    .ok_or_else(|| D::Error::custom(format!("bad coefficient {n}")))?,
                serde_json::Value::String(s) => C::from_str_radix(s, 10)
                    .map_err(|_| D::Error::custom(format!("bad coefficient {s:?}")))?,
                other => return Err(D::Error::custom(format!("bad coefficient {other}"))),
            };
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<C: Coefficient> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for LaurentPoly<C> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

/// Convenience: `[n]` with `q_i = q^s` over [`Poly`].
pub fn qint(n: i64, s: i64) -> Poly {
    quantum_int_signed(n, s)
}
