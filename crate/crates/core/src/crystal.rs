//! Kashiwara operators on letters, spin columns and words.
//!
//! Words are tensor products read left to right. The tensor rule is the
//! signature rule: each factor contributes `ε` minus signs followed by `φ` plus
//! signs, adjacent `+ -` pairs cancel, `f̃_i` acts on the factor carrying the
//! leftmost surviving `+` and `ẽ_i` on the factor carrying the rightmost
//! surviving `-`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rootdata::{AlgebraKind, Family, Letter, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    E,
    F,
}

/// Edge of the vector representation crystal leaving `x` with label `i`.
pub fn vec_edge(x: Letter, i: usize, dir: Dir, kind: AlgebraKind) -> Option<Letter> {
    match dir {
        Dir::F => vec_f(x, i, kind),
        Dir::E => vec_e(x, i, kind),
    }
}

fn vec_f(x: Letter, i: usize, kind: AlgebraKind) -> Option<Letter> {
    let n = kind.rank;
    let v = x.value();
    let i32_ = i as i32;
    let n32 = n as i32;
    match kind.family {
        Family::B if i == n => match v {
            _ if v == n32 => Some(Letter::ZERO),
            0 => Some(Letter::barred(n)),
            _ => None,
        },
        Family::D if i == n => {
            if v == n32 - 1 {
                Some(Letter::barred(n))
            } else if v == n32 {
                Some(Letter::barred(n - 1))
            } else {
                None
            }
        }
        _ => {
            if v == i32_ {
                Some(Letter::unbarred(i + 1))
            } else if v == -(i32_ + 1) {
                Some(Letter::barred(i))
            } else {
                None
            }
        }
    }
}

fn vec_e(x: Letter, i: usize, kind: AlgebraKind) -> Option<Letter> {
    let n = kind.rank;
    let v = x.value();
    let i32_ = i as i32;
    let n32 = n as i32;
    match kind.family {
        Family::B if i == n => match v {
            0 => Some(Letter::unbarred(n)),
            _ if v == -n32 => Some(Letter::ZERO),
            _ => None,
        },
        Family::D if i == n => {
            if v == -n32 {
                Some(Letter::unbarred(n - 1))
            } else if v == -(n32 - 1) {
                Some(Letter::unbarred(n))
            } else {
                None
            }
        }
        _ => {
            if v == i32_ + 1 {
                Some(Letter::unbarred(i))
            } else if v == -i32_ {
                Some(Letter::barred(i + 1))
            } else {
                None
            }
        }
    }
}

/// `(ε_i(x), φ_i(x))` for a single letter.
pub fn letter_eps_phi(x: Letter, i: usize, kind: AlgebraKind) -> (u32, u32) {
    let n = kind.rank;
    if kind.is_b() && i == n {
        let v = x.value();
        return match v {
            0 => (1, 1),
            _ if v == n as i32 => (0, 2),
            _ if v == -(n as i32) => (2, 0),
            _ => (0, 0),
        };
    }
    let eps = vec_e(x, i, kind).is_some() as u32;
    let phi = vec_f(x, i, kind).is_some() as u32;
    (eps, phi)
}

/// A spin column: one letter out of each pair `{k, \bar k}`, stored as the set of barred indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinColumn {
    pub kind: AlgebraKind,
    barred: u32,
}

impl SpinColumn {
    /// `{1, ..., n}`
    pub fn highest(kind: AlgebraKind) -> Self {
        SpinColumn { kind, barred: 0 }
    }

    /// `{1, ..., n-1, \bar n}`, the highest column of the odd class in type D.
    pub fn highest_odd(kind: AlgebraKind) -> Self {
        SpinColumn { kind, barred: 1 << (kind.rank - 1) }
    }

    pub fn from_mask(kind: AlgebraKind, barred: u32) -> Self {
        SpinColumn { kind, barred: barred & ((1u32 << kind.rank) - 1) }
    }

    pub fn from_letters(kind: AlgebraKind, letters: &[Letter]) -> Result<Self> {
        let n = kind.rank;
        let mut seen = 0u32;
        let mut barred = 0u32;
        for &x in letters {
            if x.is_zero() || x.index() > n {
                return Err(Error::InvalidSpinColumn(format!("letter {x} not allowed")));
            }
            let bit = 1u32 << (x.index() - 1);
            if seen & bit != 0 {
                return Err(Error::InvalidSpinColumn(format!("index {} chosen twice", x.index())));
            }
            seen |= bit;
            if x.is_barred() {
                barred |= bit;
            }
        }
        if seen.count_ones() as usize != n {
            return Err(Error::InvalidSpinColumn("needs exactly one letter from each pair".into()));
        }
        Ok(SpinColumn { kind, barred })
    }

    pub fn mask(&self) -> u32 {
        self.barred
    }

    pub fn is_barred(&self, k: usize) -> bool {
        self.barred & (1 << (k - 1)) != 0
    }

    /// Number of barred letters modulo 2; selects the class in type D.
    pub fn parity(&self) -> u32 {
        self.barred.count_ones() % 2
    }

    /// Letters sorted increasingly; this is the column `C_𝔊` used for comparisons.
    pub fn letters(&self) -> Vec<Letter> {
        let n = self.kind.rank;
        let mut out: Vec<Letter> = (1..=n).filter(|&k| !self.is_barred(k)).map(Letter::unbarred).collect();
        out.extend((1..=n).rev().filter(|&k| self.is_barred(k)).map(Letter::barred));
        out
    }

    /// Doubled weight: `±1` in each coordinate.
    pub fn weight(&self) -> Weight {
        let n = self.kind.rank;
        Weight((1..=n).map(|k| if self.is_barred(k) { -1 } else { 1 }).collect())
    }

    pub fn apply(&self, i: usize, dir: Dir) -> Option<SpinColumn> {
        spin_apply(self, i, dir)
    }

    pub fn eps_phi(&self, i: usize) -> (u32, u32) {
        (spin_apply(self, i, Dir::E).is_some() as u32, spin_apply(self, i, Dir::F).is_some() as u32)
    }

    /// All spin columns of the kind, optionally restricted to one parity class.
    pub fn enumerate(kind: AlgebraKind, parity: Option<u32>) -> Vec<SpinColumn> {
        let mut out: Vec<SpinColumn> = (0..(1u32 << kind.rank))
            .map(|m| SpinColumn { kind, barred: m })
            .filter(|s| parity.is_none_or(|p| s.parity() == p))
            .collect();
        out.sort();
        out
    }

    pub fn parse(kind: AlgebraKind, s: &str) -> Result<Self> {
        let body = s.trim().strip_prefix("s:").unwrap_or(s.trim());
        let letters = parse_letters(body)?;
        Self::from_letters(kind, &letters)
    }
}

impl Ord for SpinColumn {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters().cmp(&other.letters()).then(self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for SpinColumn {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SpinColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s:{}", join_letters(&self.letters()))
    }
}

/// Crystal operators on spin columns.
pub fn spin_apply(s: &SpinColumn, i: usize, dir: Dir) -> Option<SpinColumn> {
    let n = s.kind.rank;
    let bit = |k: usize| 1u32 << (k - 1);
    let m = s.barred;
    let (from, to) = if i < n {
        // f_i: {i, \bar{i+1}} -> {i+1, \bar i}
        (bit(i + 1), bit(i))
    } else if s.kind.is_b() {
        (0, bit(n))
    } else {
        (0, bit(n) | bit(n - 1))
    };
    let (need, give) = match dir {
        Dir::F => (from, to),
        Dir::E => (to, from),
    };
    let touched = from | to;
    if m & touched == need {
        Some(SpinColumn { kind: s.kind, barred: (m & !touched) | give })
    } else {
        None
    }
}

pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.parse::<Letter>()).collect()
}

pub fn join_letters(letters: &[Letter]) -> String {
    letters.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// A tensor product of letters, optionally followed by one spin column factor.
///
/// The derived order compares letters lexicographically in the type B order and
/// then the spin columns through their sorted letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub spin: Option<SpinColumn>,
    pub kind: AlgebraKind,
}

impl Word {
    pub fn new(kind: AlgebraKind, letters: Vec<Letter>) -> Self {
        Word { letters, spin: None, kind }
    }

    pub fn with_spin(kind: AlgebraKind, letters: Vec<Letter>, spin: Option<SpinColumn>) -> Self {
        Word { letters, spin, kind }
    }

    pub fn parse(kind: AlgebraKind, s: &str) -> Result<Self> {
        let (body, spin) = match s.split_once('|') {
            Some((b, sp)) => (b, Some(SpinColumn::parse(kind, sp)?)),
            None => (s, None),
        };
        let letters = parse_letters(body)?;
        for &x in &letters {
            kind.check_letter(x)?;
        }
        Ok(Word { letters, spin, kind })
    }

    pub fn len(&self) -> usize {
        self.letters.len() + self.spin.is_some() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weight(&self) -> Weight {
        let mut w = match &self.spin {
            Some(s) => s.weight().0,
            None => vec![0; self.kind.rank],
        };
        for &x in &self.letters {
            x.add_weight_to(&mut w);
        }
        Weight(w)
    }

    fn factor_eps_phi(&self, pos: usize, i: usize) -> (u32, u32) {
        if pos < self.letters.len() {
            letter_eps_phi(self.letters[pos], i, self.kind)
        } else {
            self.spin.as_ref().expect("spin factor").eps_phi(i)
        }
    }

    pub fn eps_phi(&self, i: usize) -> (u32, u32) {
        word_eps_phi(self, i)
    }

    pub fn apply(&self, i: usize, dir: Dir) -> Option<Word> {
        word_apply(self, i, dir)
    }

    pub fn is_highest(&self) -> bool {
        (1..=self.kind.rank).all(|i| self.eps_phi(i).0 == 0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join_letters(&self.letters))?;
        if let Some(s) = &self.spin {
            write!(f, "|{s}")?;
        }
        Ok(())
    }
}

/// `(ε_i, φ_i)` by folding the two-factor rule over the word.
pub fn word_eps_phi(w: &Word, i: usize) -> (u32, u32) {
    let mut acc = (0u32, 0u32);
    for pos in 0..w.len() {
        let (e2, p2) = w.factor_eps_phi(pos, i);
        let (e1, p1) = acc;
        let cancel = p1.min(e2);
        acc = (e1 + e2 - cancel, p1 + p2 - cancel);
    }
    acc
}

/// Applies `ẽ_i` or `f̃_i` at the position selected by the signature rule.
pub fn word_apply(w: &Word, i: usize, dir: Dir) -> Option<Word> {
    // Unmatched pluses are kept on a stack; each minus cancels the nearest plus to its left.
    let mut pluses: Vec<usize> = Vec::new();
    let mut last_minus: Option<usize> = None;
    for pos in 0..w.len() {
        let (eps, phi) = w.factor_eps_phi(pos, i);
        for _ in 0..eps {
            if pluses.pop().is_none() {
                last_minus = Some(pos);
            }
        }
        for _ in 0..phi {
            pluses.push(pos);
        }
    }
    let target = match dir {
        Dir::F => pluses.first().copied()?,
        Dir::E => last_minus?,
    };
    let mut out = w.clone();
    if target < w.letters.len() {
        out.letters[target] = vec_edge(w.letters[target], i, dir, w.kind)?;
    } else {
        out.spin = Some(spin_apply(w.spin.as_ref()?, i, dir)?);
    }
    Some(out)
}

/// Raises to the highest weight vertex, always applying the smallest applicable `ẽ_i`
/// as far as it goes. Returns the vertex and the `(i, count)` steps in application order.
pub fn raise_to_highest(w: &Word) -> (Word, Vec<(usize, u32)>) {
    let mut cur = w.clone();
    let mut path = Vec::new();
    'outer: loop {
        for i in 1..=cur.kind.rank {
            let (eps, _) = word_eps_phi(&cur, i);
            if eps > 0 {
                for _ in 0..eps {
                    cur = word_apply(&cur, i, Dir::E).expect("ε counts applicable raisings");
                }
                path.push((i, eps));
                continue 'outer;
            }
        }
        return (cur, path);
    }
}

/// All vertices reachable from `w0` by lowering operators.
pub fn component_bfs(w0: &Word) -> BTreeSet<Word> {
    component_bfs_filtered(w0, |_| true)
}

/// Breadth-first lowering closure visiting only vertices accepted by `keep`.
pub fn component_bfs_filtered<F: Fn(&Word) -> bool>(w0: &Word, keep: F) -> BTreeSet<Word> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    if keep(w0) {
        seen.insert(w0.clone());
        queue.push_back(w0.clone());
    }
    while let Some(w) = queue.pop_front() {
        for i in 1..=w.kind.rank {
            if let Some(next) = word_apply(&w, i, Dir::F) {
                if !seen.contains(&next) && keep(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Crystal edges `(source, i, target)` among the given vertices.
pub fn crystal_edges(vertices: &BTreeSet<Word>) -> Vec<(Word, usize, Word)> {
    let mut out = Vec::new();
    for w in vertices {
        for i in 1..=w.kind.rank {
            if let Some(t) = word_apply(w, i, Dir::F) {
                out.push((w.clone(), i, t));
            }
        }
    }
    out
}

impl FromStr for Dir {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(Dir::E),
            "f" => Ok(Dir::F),
            _ => Err(Error::Parse(format!("bad direction `{s}`"))),
        }
    }
}
