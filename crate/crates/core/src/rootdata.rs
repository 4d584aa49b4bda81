//! Algebra kinds, alphabets, weights and Cartan pairings for types B and D.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    B,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B => write!(f, "B"),
            Family::D => write!(f, "D"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::InvalidAlgebra(format!("unknown family `{other}`"))),
        }
    }
}

/// A Lie type `B_n` or `D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraKind {
    pub family: Family,
    pub rank: usize,
}

/// Largest rank supported; letters are stored in an `i8` and spin columns in a bitmask.
pub const MAX_RANK: usize = 30;

impl AlgebraKind {
    /// `B_n` with `n >= 2` or `D_n` with `n >= 3`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::B => 2,
            Family::D => 3,
        };
        if rank < min || rank > MAX_RANK {
            return Err(Error::InvalidAlgebra(format!("{family}{rank} is not supported")));
        }
        Ok(Self { family, rank })
    }

    /// Like [`AlgebraKind::new`] but also accepts `D_2`, for which nothing is promised.
    pub fn new_experimental(family: Family, rank: usize) -> Result<Self> {
        if family == Family::D && rank == 2 {
            return Ok(Self { family, rank });
        }
        Self::new(family, rank)
    }

    pub fn b(rank: usize) -> Self {
        Self::new(Family::B, rank).expect("valid rank")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("valid rank")
    }

    pub fn is_b(&self) -> bool {
        self.family == Family::B
    }

    pub fn is_d(&self) -> bool {
        self.family == Family::D
    }

    /// The exponent `d` with `q_i = q^d`.
    pub fn qi_exponent(&self, i: usize) -> u32 {
        match self.family {
            Family::B if i < self.rank => 2,
            _ => 1,
        }
    }

    /// Every letter of the alphabet in increasing order.
    pub fn alphabet(&self) -> Vec<Letter> {
        let n = self.rank as i8;
        let mut out: Vec<Letter> = (1..=n).map(Letter).collect();
        if self.is_b() {
            out.push(Letter::ZERO);
        }
        out.extend((1..=n).rev().map(|k| Letter(-k)));
        out
    }

    pub fn check_letter(&self, x: Letter) -> Result<()> {
        let ok = x.index() <= self.rank && (x.0 != 0 || self.is_b());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidLetter { letter: x.0 as i32, rank: self.rank })
        }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i >= 1 && i <= self.rank {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(format!("index {i} out of range for rank {}", self.rank)))
        }
    }

    /// Doubled ε-coordinates of the simple root `α_i`.
    pub fn simple_root(&self, i: usize) -> Weight {
        let n = self.rank;
        let mut w = vec![0; n];
        if i < n {
            w[i - 1] = 2;
            w[i] = -2;
        } else if self.is_b() {
            w[n - 1] = 2;
        } else {
            w[n - 2] = 2;
            w[n - 1] = 2;
        }
        Weight(w)
    }

    /// `<w, α_i^∨>` for a weight in doubled coordinates.
    pub fn cartan_exponent(&self, w: &Weight, i: usize) -> Result<i32> {
        let n = self.rank;
        let v = &w.0;
        let doubled = if i < n {
            v[i - 1] - v[i]
        } else if self.is_b() {
            return Ok(v[n - 1]);
        } else {
            v[n - 2] + v[n - 1]
        };
        if doubled % 2 != 0 {
            return Err(Error::NonIntegralPairing { weight: v.clone(), index: i });
        }
        Ok(doubled / 2)
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A letter of the alphabet: `k > 0` is `k`, `k < 0` is `\bar{|k|}`, and `0` is zero.
///
/// `Ord` is the type B order `1 < 2 < ... < n < 0 < \bar n < ... < \bar 1`, which is also
/// the order used to compare readings in type D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter(pub i8);

impl Letter {
    pub const ZERO: Letter = Letter(0);

    pub fn unbarred(k: usize) -> Self {
        Letter(k as i8)
    }

    pub fn barred(k: usize) -> Self {
        Letter(-(k as i8))
    }

    pub fn value(self) -> i32 {
        self.0 as i32
    }

    /// `|k|`, zero for the letter 0.
    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_barred(self) -> bool {
        self.0 < 0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn bar(self) -> Self {
        Letter(-self.0)
    }

    fn order_key(self) -> (u8, i8) {
        match self.0.cmp(&0) {
            Ordering::Greater => (0, self.0),
            Ordering::Equal => (1, 0),
            Ordering::Less => (2, self.0),
        }
    }

    /// Doubled weight: `+2` at position `k` for `k`, `-2` for `\bar k`, zero for 0.
    pub fn weight(self, rank: usize) -> Weight {
        let mut w = vec![0; rank];
        if self.0 != 0 {
            w[self.index() - 1] = if self.0 > 0 { 2 } else { -2 };
        }
        Weight(w)
    }

    pub fn add_weight_to(self, w: &mut [i32]) {
        if self.0 != 0 {
            w[self.index() - 1] += if self.0 > 0 { 2 } else { -2 };
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: i8 = s.trim().parse().map_err(|_| Error::Parse(format!("bad letter `{s}`")))?;
        Ok(Letter(v))
    }
}

/// `x ⪯ y` in the type B order.
pub fn letter_leq_b(x: Letter, y: Letter) -> bool {
    x <= y
}

/// A weight in doubled ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// True when `self - other` is a nonnegative integer combination of simple roots.
    pub fn dominates(&self, other: &Weight, kind: AlgebraKind) -> bool {
        let diff = self.sub(other);
        let d = &diff.0;
        let n = kind.rank;
        // Partial sums of the doubled difference give twice the root coefficients
        // for the roots ε_k - ε_{k+1}.
        let mut partial = Vec::with_capacity(n);
        let mut s = 0;
        for &x in d {
            s += x;
            partial.push(s);
        }
        match kind.family {
            Family::B => partial.iter().all(|&s| s >= 0 && s % 2 == 0),
            Family::D => {
                let sn = partial[n - 1];
                let sn1 = partial[n - 2];
                if sn < 0 || sn % 4 != 0 {
                    return false;
                }
                let cn = sn / 2;
                let cn1 = sn1 - cn;
                partial[..n - 2].iter().all(|&s| s >= 0 && s % 2 == 0) && cn1 >= 0 && cn1 % 2 == 0
            }
        }
    }

    /// Parses comma-separated ε-coordinates, allowing `a/2` halves.
    pub fn parse_eps(s: &str, rank: usize) -> Result<Weight> {
        let err = || Error::Parse(format!("bad weight `{s}`"));
        let coords: Vec<i32> = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if let Some((num, den)) = tok.split_once('/') {
                    if den.trim() != "2" {
                        return Err(err());
                    }
                    num.trim().parse::<i32>().map_err(|_| err())
                } else {
                    tok.parse::<i32>().map(|v| 2 * v).map_err(|_| err())
                }
            })
            .collect::<Result<_>>()?;
        if coords.len() != rank {
            return Err(Error::Parse(format!("weight `{s}` must have {rank} coordinates")));
        }
        let parity = coords[0].rem_euclid(2);
        if coords.iter().any(|c| c.rem_euclid(2) != parity) {
            return Err(Error::Parse(format!("weight `{s}` mixes integral and half-integral coordinates")));
        }
        Ok(Weight(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|&c| if c % 2 == 0 { (c / 2).to_string() } else { format!("{c}/2") }).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Coefficients `λ_1..λ_n` of a dominant weight on the fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight(pub Vec<u32>);

impl DominantWeight {
    pub fn new(coeffs: Vec<u32>) -> Self {
        DominantWeight(coeffs)
    }

    /// The fundamental weight `Λ_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        DominantWeight(v)
    }

    /// `ω_p = ε_1 + ... + ε_p`, the highest weight of the column `[1, ..., p]`.
    pub fn omega(kind: AlgebraKind, p: usize) -> Self {
        let n = kind.rank;
        let mut v = vec![0; n];
        match kind.family {
            Family::B if p == n => v[n - 1] = 2,
            Family::D if p == n => v[n - 1] = 2,
            Family::D if p == n - 1 => {
                v[n - 2] = 1;
                v[n - 1] = 1;
            }
            _ => v[p - 1] = 1,
        }
        DominantWeight(v)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Doubled ε-coordinates.
    pub fn to_weight(&self, kind: AlgebraKind) -> Weight {
        let n = kind.rank;
        let mut w = vec![0i32; n];
        for (idx, &c) in self.0.iter().enumerate() {
            let i = idx + 1;
            let c = c as i32;
            let (spin, full_upto) = match kind.family {
                Family::B if i == n => (true, n),
                Family::D if i == n => (true, n),
                Family::D if i == n - 1 => (true, n),
                _ => (false, i),
            };
            for (k, slot) in w.iter_mut().enumerate().take(full_upto) {
                if !spin {
                    *slot += 2 * c;
                } else if kind.is_d() && i == n - 1 && k == n - 1 {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        Weight(w)
    }

    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let coeffs: Vec<u32> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad dominant weight `{s}`"))))
            .collect::<Result<_>>()?;
        if coeffs.len() != rank {
            return Err(Error::Parse(format!("dominant weight `{s}` must have {rank} coefficients")));
        }
        Ok(DominantWeight(coeffs))
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: i8) -> Letter {
        Letter(v)
    }

    #[test]
    fn alphabet_order() {
        assert!(letter_leq_b(l(1), l(0)));
        assert!(letter_leq_b(l(3), l(-3)));
        assert!(letter_leq_b(l(-2), l(-1)));
        assert!(!letter_leq_b(l(-1), l(-2)));
        let alpha = AlgebraKind::b(3).alphabet();
        let mut sorted = alpha.clone();
        sorted.sort();
        assert_eq!(alpha, sorted);
        assert_eq!(alpha.len(), 7);
        assert_eq!(AlgebraKind::d(3).alphabet().len(), 6);
    }

    #[test]
    fn letter_weights() {
        assert_eq!(l(1).weight(2), Weight(vec![2, 0]));
        assert_eq!(l(0).weight(2), Weight(vec![0, 0]));
        assert_eq!(l(-2).weight(2), Weight(vec![0, -2]));
        for kind in [AlgebraKind::b(3), AlgebraKind::d(4)] {
            let total = kind.alphabet().iter().fold(Weight::zero(kind.rank), |acc, x| acc.add(&x.weight(kind.rank)));
            assert_eq!(total, Weight::zero(kind.rank));
        }
    }

    #[test]
    fn pairings() {
        let b2 = AlgebraKind::b(2);
        assert_eq!(b2.cartan_exponent(&l(2).weight(2), 2).unwrap(), 2);
        assert_eq!(b2.cartan_exponent(&Weight(vec![2, 2]), 1).unwrap(), 0);
        let d3 = AlgebraKind::d(3);
        assert_eq!(d3.cartan_exponent(&Weight(vec![0, 2, 2]), 3).unwrap(), 2);
        assert!(matches!(d3.cartan_exponent(&Weight(vec![1, 0, 0]), 1), Err(Error::NonIntegralPairing { .. })));
        for kind in [AlgebraKind::b(3), AlgebraKind::d(3), AlgebraKind::b(4), AlgebraKind::d(5)] {
            for x in kind.alphabet() {
                for i in 1..=kind.rank {
                    let a = kind.cartan_exponent(&x.weight(kind.rank), i).unwrap();
                    assert!((-2..=2).contains(&a));
                }
            }
        }
    }

    #[test]
    fn root_lengths() {
        let b3 = AlgebraKind::b(3);
        assert_eq!(b3.qi_exponent(1), 2);
        assert_eq!(b3.qi_exponent(3), 1);
        assert_eq!(AlgebraKind::d(4).qi_exponent(2), 1);
        for kind in [b3, AlgebraKind::d(4)] {
            for i in 1..=kind.rank {
                assert_eq!(kind.cartan_exponent(&kind.simple_root(i), i).unwrap(), 2);
            }
        }
    }

    #[test]
    fn fundamental_weights_pair_to_identity() {
        for kind in [AlgebraKind::b(3), AlgebraKind::b(4), AlgebraKind::d(3), AlgebraKind::d(5)] {
            for i in 1..=kind.rank {
                let w = DominantWeight::fundamental(kind.rank, i).to_weight(kind);
                for j in 1..=kind.rank {
                    assert_eq!(kind.cartan_exponent(&w, j).unwrap(), (i == j) as i32, "{kind} Λ{i} α{j}");
                }
            }
        }
    }

    #[test]
    fn weight_parsing() {
        assert_eq!(Weight::parse_eps("0,2,-1", 3).unwrap(), Weight(vec![0, 4, -2]));
        assert_eq!(Weight::parse_eps("1/2,1/2", 2).unwrap(), Weight(vec![1, 1]));
        assert!(Weight::parse_eps("1/2,1", 2).is_err());
        assert_eq!(Weight(vec![1, -1]).to_string(), "1/2,-1/2");
    }

    #[test]
    fn dominance() {
        let b2 = AlgebraKind::b(2);
        let top = DominantWeight(vec![0, 2]).to_weight(b2);
        assert!(top.dominates(&Weight::zero(2), b2));
        assert!(!Weight::zero(2).dominates(&top, b2));
        let d3 = AlgebraKind::d(3);
        let hw = Weight(vec![2, 0, 0]);
        assert!(hw.dominates(&Weight(vec![0, 0, 2]), d3));
        assert!(hw.dominates(&Weight(vec![0, 0, -2]), d3));
        assert!(!hw.dominates(&Weight(vec![0, 2, 2]), d3));
    }
}
