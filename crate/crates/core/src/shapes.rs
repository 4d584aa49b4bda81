//! Columns, shapes, tabloids, readings and the orthogonal tableaux of `B(λ)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::crystal::{component_bfs_filtered, join_letters, parse_letters, raise_to_highest, SpinColumn, Word};
use crate::error::{Error, Result};
use crate::rootdata::{AlgebraKind, DominantWeight, Family, Letter, Weight};

/// Letters of a column, top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column(pub Vec<Letter>);

/// True when `y` may sit directly below `x` in a column.
pub fn may_follow(kind: AlgebraKind, x: Letter, y: Letter) -> bool {
    match kind.family {
        Family::B => x < y || (x.is_zero() && y.is_zero()),
        Family::D => {
            let n = kind.rank;
            let block = |z: Letter| z.index() == n;
            (block(x) && block(y) && x != y) || x < y
        }
    }
}

impl Column {
    pub fn new(kind: AlgebraKind, letters: Vec<Letter>) -> Result<Self> {
        let c = Column(letters);
        c.validate(kind)?;
        Ok(c)
    }

    pub fn parse(kind: AlgebraKind, s: &str) -> Result<Self> {
        Self::new(kind, parse_letters(s)?)
    }

    pub fn validate(&self, kind: AlgebraKind) -> Result<()> {
        for &x in &self.0 {
            kind.check_letter(x)?;
        }
        if self.0.windows(2).all(|p| may_follow(kind, p[0], p[1])) {
            Ok(())
        } else {
            Err(Error::InvalidColumn(self.to_string()))
        }
    }

    pub fn is_valid(&self, kind: AlgebraKind) -> bool {
        self.validate(kind).is_ok()
    }

    /// `[1, 2, ..., p]`
    pub fn highest(p: usize) -> Self {
        Column((1..=p).map(Letter::unbarred).collect())
    }

    /// `[1, ..., n-1, \bar n]`
    pub fn highest_odd(n: usize) -> Self {
        let mut v: Vec<Letter> = (1..n).map(Letter::unbarred).collect();
        v.push(Letter::barred(n));
        Column(v)
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn contains(&self, x: Letter) -> bool {
        self.0.contains(&x)
    }

    pub fn word(&self, kind: AlgebraKind) -> Word {
        Word::new(kind, self.0.clone())
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let mut w = vec![0; rank];
        for &x in &self.0 {
            x.add_weight_to(&mut w);
        }
        Weight(w)
    }

    pub fn is_highest(&self, kind: AlgebraKind) -> bool {
        self.word(kind).is_highest()
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join_letters(&self.0))
    }
}

/// Which spin representation, if any, is split off from `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinClass {
    /// `Λ_n` in type B.
    B,
    /// `Λ_n` in type D: spin columns with an even number of barred letters.
    DEven,
    /// `Λ_{n-1}` in type D: spin columns with an odd number of barred letters.
    DOdd,
}

impl SpinClass {
    pub fn parity(&self) -> Option<u32> {
        match self {
            SpinClass::B => None,
            SpinClass::DEven => Some(0),
            SpinClass::DOdd => Some(1),
        }
    }

    pub fn highest(&self, kind: AlgebraKind) -> SpinColumn {
        match self {
            SpinClass::DOdd => SpinColumn::highest_odd(kind),
            _ => SpinColumn::highest(kind),
        }
    }
}

/// Sign of `λ_n - λ_{n-1}` for the spin-free part in type D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DSign {
    Plus,
    Zero,
    Minus,
}

/// Splits `λ = Λ + λ'` with `Λ` a spin weight or zero and `λ'` expressible by columns.
pub fn decompose_lambda(lambda: &DominantWeight, kind: AlgebraKind) -> (Option<SpinClass>, DominantWeight) {
    let n = kind.rank;
    let mut rest = lambda.0.clone();
    let spin = match kind.family {
        Family::B => {
            if rest[n - 1] % 2 == 1 {
                rest[n - 1] -= 1;
                Some(SpinClass::B)
            } else {
                None
            }
        }
        Family::D => {
            let d = rest[n - 1] as i64 - rest[n - 2] as i64;
            if d.rem_euclid(2) == 1 {
                if d > 0 {
                    rest[n - 1] -= 1;
                    Some(SpinClass::DEven)
                } else {
                    rest[n - 2] -= 1;
                    Some(SpinClass::DOdd)
                }
            } else {
                None
            }
        }
    };
    (spin, DominantWeight(rest))
}

/// The diagram of `λ`: an optional spin column followed by columns of weakly decreasing heights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub kind: AlgebraKind,
    pub lambda: DominantWeight,
    pub spin: Option<SpinClass>,
    pub heights: Vec<usize>,
    pub sign: DSign,
}

/// Column heights and sign for a weight in `Ω_+`.
pub fn shape_of(rest: &DominantWeight, spin: Option<SpinClass>, kind: AlgebraKind) -> Result<Shape> {
    let n = kind.rank;
    let c = &rest.0;
    let mut counts = vec![0usize; n + 1];
    let mut sign = DSign::Zero;
    match kind.family {
        Family::B => {
            if !c[n - 1].is_multiple_of(2) {
                return Err(Error::NotInOmegaPlus(rest.to_string()));
            }
            counts[1..n].copy_from_slice(&c[..n - 1].iter().map(|&x| x as usize).collect::<Vec<_>>());
            counts[n] = c[n - 1] as usize / 2;
        }
        Family::D => {
            let (a, b) = (c[n - 2] as usize, c[n - 1] as usize);
            if a % 2 != b % 2 {
                return Err(Error::NotInOmegaPlus(rest.to_string()));
            }
            for h in 1..=n.saturating_sub(2) {
                counts[h] = c[h - 1] as usize;
            }
            counts[n - 1] = a.min(b);
            counts[n] = a.abs_diff(b) / 2;
            sign = match b.cmp(&a) {
                Ordering::Greater => DSign::Plus,
                Ordering::Less => DSign::Minus,
                Ordering::Equal => DSign::Zero,
            };
        }
    }
    let mut heights = Vec::new();
    for h in (1..=n).rev() {
        heights.extend(std::iter::repeat_n(h, counts[h]));
    }
    let mut lambda = rest.clone();
    match spin {
        Some(SpinClass::B) | Some(SpinClass::DEven) => lambda.0[n - 1] += 1,
        Some(SpinClass::DOdd) => lambda.0[n - 2] += 1,
        None => {}
    }
    Ok(Shape { kind, lambda, spin, heights, sign })
}

impl Shape {
    pub fn new(lambda: &DominantWeight, kind: AlgebraKind) -> Result<Self> {
        if lambda.0.len() != kind.rank {
            return Err(Error::Parse(format!("λ must have {} coefficients", kind.rank)));
        }
        let (spin, rest) = decompose_lambda(lambda, kind);
        shape_of(&rest, spin, kind)
    }

    pub fn boxes(&self) -> usize {
        self.heights.iter().sum()
    }

    /// Number of factors in the tensor factorisation.
    pub fn factor_count(&self) -> usize {
        self.heights.len() + self.spin.is_some() as usize
    }

    pub fn highest_column(&self, h: usize) -> Column {
        let n = self.kind.rank;
        if self.kind.is_d() && h == n && self.sign == DSign::Minus {
            Column::highest_odd(n)
        } else {
            Column::highest(h)
        }
    }

    /// `T_λ`: the `k`-th row filled with `k` (with `\bar n` in row `n` for sign minus).
    pub fn highest_tabloid(&self) -> Tabloid {
        Tabloid {
            spin: self.spin.map(|s| s.highest(self.kind)),
            columns: self.heights.iter().map(|&h| self.highest_column(h)).collect(),
        }
    }

    pub fn highest_weight(&self) -> Weight {
        self.lambda.to_weight(self.kind)
    }

    pub fn matches(&self, t: &Tabloid) -> bool {
        t.columns.len() == self.heights.len()
            && t.columns.iter().zip(&self.heights).all(|(c, &h)| c.height() == h)
            && match (&self.spin, &t.spin) {
                (None, None) => true,
                (Some(cls), Some(s)) => cls.parity().is_none_or(|p| s.parity() == p),
                _ => false,
            }
    }
}

/// A filling of the diagram: optional spin column (drawn on the left) and columns `C_1..C_r`.
///
/// The order is `⊴`: lexicographic on `w(C_r)...w(C_1)` followed by the sorted
/// letters of the spin column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tabloid {
    pub spin: Option<SpinColumn>,
    pub columns: Vec<Column>,
}

impl Tabloid {
    pub fn new(spin: Option<SpinColumn>, columns: Vec<Column>) -> Self {
        Tabloid { spin, columns }
    }

    pub fn reading_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.columns.iter().rev().flat_map(|c| c.0.iter().copied())
    }

    /// `w(C_r)...w(C_1)` followed by the spin factor.
    pub fn reading(&self, kind: AlgebraKind) -> Word {
        Word::with_spin(kind, self.reading_letters().collect(), self.spin)
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let mut w = match &self.spin {
            Some(s) => s.weight().0,
            None => vec![0; rank],
        };
        for c in &self.columns {
            for &x in &c.0 {
                x.add_weight_to(&mut w);
            }
        }
        Weight(w)
    }

    pub fn heights(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.height()).collect()
    }

    pub fn parse(kind: AlgebraKind, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Tabloid { spin: None, columns: Vec::new() });
        }
        let mut spin = None;
        let mut columns = Vec::new();
        for (idx, part) in s.split('/').enumerate() {
            let part = part.trim();
            if let Some(body) = part.strip_prefix("s:") {
                if idx != 0 {
                    return Err(Error::Parse(format!("spin column must come first in `{s}`")));
                }
                spin = Some(SpinColumn::parse(kind, body)?);
            } else {
                columns.push(Column::parse(kind, part)?);
            }
        }
        Ok(Tabloid { spin, columns })
    }
}

impl Tabloid {
    /// Rows top to bottom; row `k` lists the `k`-th entries of `C_1, C_2, ...` that reach it.
    pub fn rows(&self) -> Vec<Vec<Letter>> {
        let depth = self.columns.iter().map(|c| c.height()).max().unwrap_or(0);
        (0..depth).map(|k| self.columns.iter().filter_map(|c| c.0.get(k).copied()).collect()).collect()
    }

    /// Parses the row form `2,2,1/-3,0/-1`, optionally preceded by a spin column `s:.../`.
    pub fn parse_rows(kind: AlgebraKind, s: &str) -> Result<Self> {
        let s = s.trim();
        let (spin, body) = match s.strip_prefix("s:") {
            Some(rest) => {
                let (sp, body) = rest.split_once('/').unwrap_or((rest, ""));
                (Some(SpinColumn::parse(kind, sp)?), body)
            }
            None => (None, s),
        };
        let rows: Vec<Vec<Letter>> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split('/').map(parse_letters).collect::<Result<_>>()?
        };
        if rows.windows(2).any(|p| p[1].len() > p[0].len()) {
            return Err(Error::Parse(format!("row lengths of `{s}` must weakly decrease")));
        }
        let width = rows.first().map_or(0, |r| r.len());
        let columns = (0..width)
            .map(|j| Column::new(kind, rows.iter().filter_map(|r| r.get(j).copied()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tabloid { spin, columns })
    }
}

impl Ord for Tabloid {
    fn cmp(&self, other: &Self) -> Ordering {
        self.reading_letters()
            .cmp(other.reading_letters())
            .then_with(|| self.spin.cmp(&other.spin))
            .then_with(|| self.heights().cmp(&other.heights()))
    }
}

impl PartialOrd for Tabloid {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if let Some(s) = &self.spin {
            parts.push(s.to_string());
        }
        parts.extend(self.columns.iter().map(|c| c.to_string()));
        if parts.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "{}", parts.join("/"))
        }
    }
}

/// `τ1 ⊴ τ2` for tabloids of one shape.
pub fn tabloid_leq(a: &Tabloid, b: &Tabloid) -> Result<bool> {
    if a.heights() != b.heights() || a.spin.is_some() != b.spin.is_some() {
        return Err(Error::ShapeMismatch);
    }
    Ok(a <= b)
}

pub fn tabloid_reading(t: &Tabloid, kind: AlgebraKind) -> Word {
    t.reading(kind)
}

pub fn weight_of_tabloid(t: &Tabloid, rank: usize) -> Weight {
    t.weight(rank)
}

/// Splits a reading back into columns of the shape.
pub fn word_to_tabloid(w: &Word, shape: &Shape) -> Result<Tabloid> {
    if w.letters.len() != shape.boxes() || w.spin.is_some() != shape.spin.is_some() {
        return Err(Error::MalformedWord(format!("`{w}` does not fit heights {:?}", shape.heights)));
    }
    let mut columns = Vec::with_capacity(shape.heights.len());
    let mut pos = 0;
    for &h in shape.heights.iter().rev() {
        let col = Column(w.letters[pos..pos + h].to_vec());
        col.validate(shape.kind).map_err(|_| Error::MalformedWord(format!("`{w}`: bad column {col}")))?;
        columns.push(col);
        pos += h;
    }
    columns.reverse();
    let t = Tabloid { spin: w.spin, columns };
    if !shape.matches(&t) {
        return Err(Error::MalformedWord(format!("`{w}` has a spin column of the wrong class")));
    }
    Ok(t)
}

/// Highest weight column words of height `p`.
fn highest_columns(kind: AlgebraKind, p: usize) -> Vec<Column> {
    if kind.is_d() && p == kind.rank {
        vec![Column::highest(p), Column::highest_odd(p)]
    } else {
        vec![Column::highest(p)]
    }
}

/// True when `w(C)` lies in the component of a highest weight column of its height.
pub fn is_admissible(kind: AlgebraKind, c: &Column) -> bool {
    let (top, _) = raise_to_highest(&c.word(kind));
    highest_columns(kind, c.height()).iter().any(|h| h.0 == top.letters)
}

/// True when `w(T)` lies in the component of `w(T_λ)`.
pub fn is_orthogonal_tableau(shape: &Shape, t: &Tabloid) -> bool {
    if !shape.matches(t) {
        return false;
    }
    let (top, _) = raise_to_highest(&t.reading(shape.kind));
    top == shape.highest_tabloid().reading(shape.kind)
}

/// All valid (or admissible) columns of height `p`, in increasing order.
pub fn enumerate_columns(kind: AlgebraKind, p: usize, admissible_only: bool) -> Vec<Column> {
    let alphabet = kind.alphabet();
    let mut out = Vec::new();
    let mut stack: Vec<Letter> = Vec::with_capacity(p);
    fn rec(kind: AlgebraKind, alphabet: &[Letter], p: usize, stack: &mut Vec<Letter>, out: &mut Vec<Column>) {
        if stack.len() == p {
            out.push(Column(stack.clone()));
            return;
        }
        for &x in alphabet {
            if stack.last().is_none_or(|&prev| may_follow(kind, prev, x)) {
                stack.push(x);
                rec(kind, alphabet, p, stack, out);
                stack.pop();
            }
        }
    }
    rec(kind, &alphabet, p, &mut stack, &mut out);
    if admissible_only {
        out.retain(|c| is_admissible(kind, c));
    }
    out.sort();
    out
}

/// All tabloids of the shape with weight `mu`, in increasing order.
pub fn enumerate_tabloids(shape: &Shape, mu: &Weight) -> Vec<Tabloid> {
    let kind = shape.kind;
    let rank = kind.rank;
    // Slot options grouped by weight: one slot per column, then the spin slot.
    let mut slots: Vec<BTreeMap<Weight, Vec<SlotFill>>> = Vec::new();
    let mut by_height: BTreeMap<usize, BTreeMap<Weight, Vec<SlotFill>>> = BTreeMap::new();
    for &h in &shape.heights {
        let group = by_height.entry(h).or_insert_with(|| {
            let mut g: BTreeMap<Weight, Vec<SlotFill>> = BTreeMap::new();
            for c in enumerate_columns(kind, h, false) {
                g.entry(c.weight(rank)).or_default().push(SlotFill::Col(c));
            }
            g
        });
        slots.push(group.clone());
    }
    if let Some(cls) = shape.spin {
        let mut g: BTreeMap<Weight, Vec<SlotFill>> = BTreeMap::new();
        for s in SpinColumn::enumerate(kind, cls.parity()) {
            g.entry(s.weight()).or_default().push(SlotFill::Spin(s));
        }
        slots.push(g);
    }
    let mut reach: Vec<BTreeSet<Weight>> = vec![BTreeSet::new(); slots.len() + 1];
    reach[slots.len()].insert(Weight::zero(rank));
    for k in (0..slots.len()).rev() {
        let mut set = BTreeSet::new();
        for w in slots[k].keys() {
            for s in &reach[k + 1] {
                set.insert(w.add(s));
            }
        }
        reach[k] = set;
    }
    let mut out = Vec::new();
    if !reach[0].contains(mu) {
        return out;
    }
    let mut chosen: Vec<&Vec<SlotFill>> = Vec::new();
    fn choose<'a>(
        k: usize,
        remaining: &Weight,
        slots: &'a [BTreeMap<Weight, Vec<SlotFill>>],
        reach: &[BTreeSet<Weight>],
        chosen: &mut Vec<&'a Vec<SlotFill>>,
        out: &mut Vec<Tabloid>,
    ) {
        if k == slots.len() {
            expand(chosen, out);
            return;
        }
        for (w, fills) in &slots[k] {
            let rest = remaining.sub(w);
            if reach[k + 1].contains(&rest) {
                chosen.push(fills);
                choose(k + 1, &rest, slots, reach, chosen, out);
                chosen.pop();
            }
        }
    }
    fn expand(chosen: &[&Vec<SlotFill>], out: &mut Vec<Tabloid>) {
        let mut idx = vec![0usize; chosen.len()];
        loop {
            let mut t = Tabloid { spin: None, columns: Vec::with_capacity(chosen.len()) };
            for (slot, &i) in chosen.iter().zip(&idx) {
                match &slot[i] {
                    SlotFill::Col(c) => t.columns.push(c.clone()),
                    SlotFill::Spin(s) => t.spin = Some(*s),
                }
            }
            out.push(t);
            let mut k = chosen.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < chosen[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    choose(0, mu, &slots, &reach, &mut chosen, &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug)]
enum SlotFill {
    Col(Column),
    Spin(SpinColumn),
}

/// Orthogonal tableaux of the shape, optionally of one weight, in increasing order.
///
/// Generated as the crystal component of `w(T_λ)`; when a weight is given the
/// search is confined to vertices whose weight still dominates it.
pub fn enumerate_tableaux(shape: &Shape, mu: Option<&Weight>) -> Vec<Tabloid> {
    let kind = shape.kind;
    let top = shape.highest_tabloid().reading(kind);
    let vertices = match mu {
        Some(m) => component_bfs_filtered(&top, |w| w.weight().dominates(m, kind)),
        None => component_bfs_filtered(&top, |_| true),
    };
    let mut out: Vec<Tabloid> = vertices
        .into_iter()
        .filter(|w| mu.is_none_or(|m| w.weight() == *m))
        .map(|w| word_to_tabloid(&w, shape).expect("crystal vertices are readings of tabloids"))
        .collect();
    out.sort();
    out
}
