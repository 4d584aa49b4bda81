//! Exact arithmetic in `Z[q, q^-1]`.
//!
//! A [`LaurentPoly`] is stored sparsely as `(exponent, coefficient)` pairs in
//! strictly ascending exponent order with no zero coefficients, so structural
//! equality is ring equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `q`
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `coeff * q^exp`
    pub fn monomial(coeff: i64, exp: i32) -> Self {
        Self::big_monomial(BigInt::from(coeff), exp)
    }

    pub fn big_monomial(coeff: BigInt, exp: i32) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, coeff)] }
        }
    }

    /// `q^exp`
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(i32, BigInt)] {
        &self.terms
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(idx) => self.terms[idx].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// The ring involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True when every exponent is nonnegative (the polynomial lies in `Z[q]`).
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// Value at `q = 0`; fails when a negative power is present.
    pub fn eval_at_zero(&self) -> Result<BigInt> {
        match self.min_exp() {
            None => Ok(BigInt::zero()),
            Some(e) if e < 0 => Err(Error::NegativePower(self.to_string())),
            Some(0) => Ok(self.terms[0].1.clone()),
            Some(_) => Ok(BigInt::zero()),
        }
    }

    /// Value at `q = 1` (sum of coefficients).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Exact quotient `self / den` by long division from the lowest term.
    pub fn divide_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly> {
        let inexact = || Error::InexactDivision { num: self.to_string(), den: den.to_string() };
        let (d_lo, d_lc) = match den.terms.first() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(inexact()),
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let d_hi = den.max_exp().unwrap();
        let q_hi = self.max_exp().unwrap() - d_hi;
        let mut rem = self.clone();
        let mut quot: Vec<(i32, BigInt)> = Vec::new();
        while let Some((r_lo, r_lc)) = rem.terms.first().cloned() {
            let qe = r_lo - d_lo;
            if qe > q_hi {
                return Err(inexact());
            }
            if (&r_lc % &d_lc) != BigInt::zero() {
                return Err(inexact());
            }
            let qc = &r_lc / &d_lc;
            rem -= &den.shift(qe).scale(&qc);
            quot.push((qe, qc));
        }
        Ok(Self { terms: quot })
    }

    /// `[m]_d = (q^{dm} - q^{-dm}) / (q^d - q^{-d})`.
    pub fn quantum_int(m: u32, d: u32) -> Self {
        let m = m as i32;
        let d = d as i32;
        Self::from_terms((0..m).map(|j| (d * (m - 1 - 2 * j), 1)))
    }

    /// `[m]_d! = [m]_d [m-1]_d ... [1]_d`.
    pub fn quantum_factorial(m: u32, d: u32) -> Self {
        (1..=m).fold(Self::one(), |acc, k| &acc * &Self::quantum_int(k, d))
    }

    /// `(1 - (-q^2)^r)`, a factor that appears throughout the type B tables.
    pub fn one_minus_neg_q2_pow(r: u32) -> Self {
        let sign: i64 = if r.is_multiple_of(2) { 1 } else { -1 };
        Self::one() - Self::monomial(sign, 2 * r as i32)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| match c.to_i64() {
                    Some(small) => json!([e, small]),
                    None => json!([e, c.to_string()]),
                })
                .collect(),
        )
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            match *e {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    if *e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the textual form produced by `Display`, e.g. `q^-1+2-q^3`.
    /// Braces (`q^{-1}`) and `*` between coefficient and `q` are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}' && *c != '*').collect();
        let err = || Error::Parse(format!("bad Laurent polynomial `{s}`"));
        if s.is_empty() {
            return Err(err());
        }
        let bytes = s.as_bytes();
        let mut terms: Vec<(i32, BigInt)> = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(err());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: BigInt = if pos > start { s[start..pos].parse().map_err(|_| err())? } else { BigInt::one() };
            let mut exp = 0i32;
            if pos < bytes.len() && bytes[pos] == b'q' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let es = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = s[es..pos].parse().map_err(|_| err())?;
                }
            } else if pos == start {
                return Err(err());
            }
            terms.push((exp, coeff * sign));
        }
        Ok(Self::from_terms(terms))
    }
}

fn merge(a: &[(i32, BigInt)], b: &[(i32, BigInt)], negate_b: bool) -> Vec<(i32, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &BigInt| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, nb(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (*e, nb(c))));
    out
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.max_exp().unwrap() + rhs.max_exp().unwrap();
        let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        LaurentPoly {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (lo + k as i32, c))
                .collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.terms = merge(&self.terms, &rhs.terms, true);
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}
