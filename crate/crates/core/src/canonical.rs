//! Global bases: columns by Marsh's algorithm, the monomial vectors `A(T)` and
//! their unitriangular correction to `G(T)`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::crystal::{vec_edge, word_apply, word_eps_phi, Dir, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lincomb::LinComb;
use crate::modvec::{Lowering, ModuleVector};
use crate::rootdata::{AlgebraKind, Family, Letter, Weight};
use crate::shapes::{enumerate_tableaux, is_admissible, is_orthogonal_tableau, Column, Shape, Tabloid};
use crate::wedge::{wedge_f, wedge_f_divided, WedgeVector};

/// `G(C) = f_{i_1}^{(p_1)} ... f_{i_r}^{(p_r)} v_{start}`; `steps` lists `(i_k, p_k)` in operator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarshPath {
    pub start: Column,
    pub steps: Vec<(usize, u32)>,
}

fn raise(kind: AlgebraKind, c: &Column, i: usize, times: u32) -> Result<Column> {
    let mut w = c.word(kind);
    for _ in 0..times {
        w = word_apply(&w, i, Dir::E).ok_or_else(|| Error::Internal(format!("ẽ_{i} vanishes on {c}")))?;
    }
    Ok(Column(w.letters))
}

fn column_eps(kind: AlgebraKind, c: &Column, i: usize) -> u32 {
    word_eps_phi(&c.word(kind), i).0
}

/// Letters of `C` touched by `f_{n-1}` and `f_n` in type D.
fn tail_subword(kind: AlgebraKind, c: &Column) -> Vec<Letter> {
    let n = kind.rank;
    c.0.iter().copied().filter(|x| x.index() + 1 >= n).collect()
}

/// True when `w` is `(a b)^r` followed by `last`, `r ≥ 0`.
fn alternating_then(w: &[Letter], a: Letter, b: Letter, last: Letter) -> bool {
    match w.split_last() {
        Some((&l, body)) if l == last => body.len() % 2 == 0 && body.chunks(2).all(|p| p[0] == a && p[1] == b),
        _ => false,
    }
}

/// The index `i_1` chosen by Marsh's rule from the leftmost movable letter, or `None`
/// when the column reading is already of highest weight.
pub fn marsh_index(kind: AlgebraKind, c: &Column) -> Result<Option<usize>> {
    if c.is_highest(kind) {
        return Ok(None);
    }
    let n = kind.rank;
    let movable = |x: Letter| (1..=n).any(|i| vec_edge(x, i, Dir::E, kind).is_some_and(|y| !c.contains(y)));
    let z =
        c.0.iter()
            .copied()
            .find(|&x| movable(x))
            .ok_or_else(|| Error::Internal(format!("no movable letter in {c}")))?;
    let unique = || {
        (1..=n)
            .find(|&i| vec_edge(z, i, Dir::E, kind).is_some())
            .ok_or_else(|| Error::Internal(format!("letter {z} cannot be raised")))
    };
    let i1 = match kind.family {
        Family::B => unique()?,
        Family::D => {
            let (nn, nb, pb) = (Letter::unbarred(n), Letter::barred(n), Letter::barred(n - 1));
            if z == pb {
                n - 1
            } else if z == nb {
                if alternating_then(&tail_subword(kind, c), nb, nn, pb) {
                    n - 1
                } else {
                    n
                }
            } else if z == nn {
                if alternating_then(&tail_subword(kind, c), nn, nb, pb) {
                    n
                } else {
                    n - 1
                }
            } else {
                unique()?
            }
        }
    };
    if column_eps(kind, c, i1) == 0 {
        return Err(Error::Internal(format!("Marsh index {i1} does not raise {c}")));
    }
    Ok(Some(i1))
}

pub fn marsh_path(kind: AlgebraKind, c: &Column) -> Result<MarshPath> {
    c.validate(kind)?;
    if !is_admissible(kind, c) {
        return Err(Error::NotAdmissible(c.to_string()));
    }
    let mut cur = c.clone();
    let mut steps = Vec::new();
    while let Some(i) = marsh_index(kind, &cur)? {
        let p = column_eps(kind, &cur, i);
        cur = raise(kind, &cur, i, p)?;
        steps.push((i, p));
        if steps.len() > 4 * kind.rank * kind.rank * c.height().max(1) {
            return Err(Error::IterationLimit(steps.len()));
        }
    }
    Ok(MarshPath { start: cur, steps })
}

/// `G(C)` in `W(ω_p)`.
pub fn global_column(kind: AlgebraKind, c: &Column) -> Result<WedgeVector> {
    let path = marsh_path(kind, c)?;
    let mut v = WedgeVector::basis(path.start.clone());
    for &(i, p) in path.steps.iter().rev() {
        v = wedge_f_divided(kind, &v, i, p)?;
    }
    Ok(v)
}

/// `A(T) = f_{i_1}^{(r_1)} ... f_{i_m}^{(r_m)} v_{base}` with `steps` in operator order.
///
/// `chain` holds the successive tableaux `T_1, ..., T_m`. The base is `T_λ` unless
/// the walk stopped at a tableau whose non-spin part is of highest weight; then
/// `direct` is set and `v_{base}` is used as is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APath {
    pub steps: Vec<(usize, u32)>,
    pub chain: Vec<Tabloid>,
    pub base: Tabloid,
    pub direct: bool,
}

fn non_spin_is_highest(kind: AlgebraKind, t: &Tabloid) -> bool {
    Word::new(kind, t.reading_letters().collect()).is_highest()
}

pub fn a_path(shape: &Shape, t: &Tabloid) -> Result<APath> {
    let kind = shape.kind;
    if !is_orthogonal_tableau(shape, t) {
        return Err(Error::NotOrthogonalTableau(t.to_string()));
    }
    let target = shape.highest_tabloid();
    let limit = 8 * (shape.boxes() + 1) * kind.rank * kind.rank;
    let mut cur = t.clone();
    let mut steps = Vec::new();
    let mut chain = Vec::new();
    let mut direct = false;
    while cur != target {
        if steps.len() >= limit {
            return Err(Error::IterationLimit(limit));
        }
        if cur.spin.is_some() && non_spin_is_highest(kind, &cur) {
            direct = true;
            break;
        }
        let cols = &cur.columns;
        let k = (0..cols.len())
            .rev()
            .find(|&j| !cols[j].is_highest(kind))
            .ok_or_else(|| Error::Internal(format!("{cur} has highest columns but is not T_λ")))?;
        let i1 = marsh_index(kind, &cols[k])?.expect("column is not highest");
        let moves = |j: usize| !wedge_f(kind, &cols[j], i1).is_zero();
        let raisable = |j: usize| column_eps(kind, &cols[j], i1) > 0;
        let l = if k == 0 || moves(k) || !raisable(k - 1) {
            k
        } else {
            let mut l = k - 1;
            while l > 0 && !moves(l) && raisable(l - 1) {
                l -= 1;
            }
            l
        };
        let mut next = cur.clone();
        let mut r = 0;
        for (col, slot) in cols[l..=k].iter().zip(&mut next.columns[l..=k]) {
            let e = column_eps(kind, col, i1);
            *slot = raise(kind, col, i1, e)?;
            r += e;
        }
        if l == 0 && !moves(0) {
            if let Some(s) = cur.spin {
                if s.eps_phi(i1).0 == 1 {
                    next.spin = s.apply(i1, Dir::E);
                    r += 1;
                }
            }
        }
        if r == 0 {
            return Err(Error::Internal(format!("no raising step found for {cur}")));
        }
        steps.push((i1, r));
        chain.push(next.clone());
        cur = next;
    }
    Ok(APath { steps, chain, base: cur, direct })
}

/// `A(T)`, reusing the column actions cached in `lowering`.
pub fn a_vector_with(lowering: &mut Lowering, shape: &Shape, t: &Tabloid) -> Result<ModuleVector> {
    let path = a_path(shape, t)?;
    let v0 = ModuleVector::basis(shape.clone(), path.base.clone())?;
    lowering.apply_monomial(&v0, &path.steps)
}

pub fn a_vector(shape: &Shape, t: &Tabloid) -> Result<ModuleVector> {
    a_vector_with(&mut Lowering::new(shape.kind), shape, t)
}

/// The bar-invariant correction read off a coefficient: its non-positive part plus
/// the mirror image of its negative part.
pub fn symmetric_part(c: &LaurentPoly) -> LaurentPoly {
    let mut terms = Vec::new();
    for (e, a) in c.terms() {
        if *e <= 0 {
            terms.push((*e, a.clone()));
        }
        if *e < 0 {
            terms.push((-*e, a.clone()));
        }
    }
    LaurentPoly::from_terms(terms)
}

/// One subtraction `G(T^{(col)}) -= γ G(T^{(j)})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaEntry {
    pub col: usize,
    pub j: usize,
    pub gamma: LaurentPoly,
}

/// The matrix `d_{τ,T}` of one weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMatrix {
    pub shape: Shape,
    pub weight: Weight,
    /// Tabloids carrying a nonzero entry, in increasing order.
    pub rows: Vec<Tabloid>,
    /// Orthogonal tableaux of the weight, in increasing order.
    pub cols: Vec<Tabloid>,
    /// `G(T)` for each column.
    pub vectors: Vec<LinComb<Tabloid>>,
    /// `A(T)` for each column.
    pub monomials: Vec<LinComb<Tabloid>>,
    pub gamma: Vec<GammaEntry>,
}

impl CanonicalMatrix {
    pub fn dimension(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, row: &Tabloid, col: &Tabloid) -> LaurentPoly {
        match self.cols.iter().position(|c| c == col) {
            Some(j) => self.vectors[j].coeff(row),
            None => LaurentPoly::zero(),
        }
    }

    /// `(row index, column index, entry)` for nonzero entries, row-major.
    pub fn sparse_entries(&self) -> Vec<(usize, usize, LaurentPoly)> {
        let index: BTreeMap<&Tabloid, usize> = self.rows.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let mut out = Vec::new();
        for (c, v) in self.vectors.iter().enumerate() {
            for (t, p) in v {
                out.push((index[t], c, p.clone()));
            }
        }
        out.sort_by_key(|e| (e.0, e.1));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.shape.kind.to_string(),
            "lambda": self.shape.lambda.0,
            "weight2": self.weight.0,
            "rows": self.rows.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "entries": self
                .sparse_entries()
                .into_iter()
                .map(|(r, c, p)| json!([r, c, p.to_json()]))
                .collect::<Vec<_>>(),
            "gamma": self.gamma.iter().map(|g| json!([g.col, g.j, g.gamma.to_json()])).collect::<Vec<_>>(),
        })
    }
}

/// Distinct weights of `V(λ)`, in increasing order of their doubled coordinates.
pub fn weights_of(shape: &Shape) -> Vec<Weight> {
    let rank = shape.kind.rank;
    let set: BTreeSet<Weight> = enumerate_tableaux(shape, None).iter().map(|t| t.weight(rank)).collect();
    set.into_iter().collect()
}

/// The canonical basis of the weight space `μ` of `V(λ)`.
pub fn canonical_matrix(shape: &Shape, mu: &Weight) -> Result<CanonicalMatrix> {
    let cols = enumerate_tableaux(shape, Some(mu));
    let mut lowering = Lowering::new(shape.kind);
    let mut vectors: Vec<LinComb<Tabloid>> = Vec::with_capacity(cols.len());
    let mut monomials = Vec::with_capacity(cols.len());
    let mut gamma = Vec::new();
    for (idx, t) in cols.iter().enumerate() {
        let a = a_vector_with(&mut lowering, shape, t)?.terms;
        if !a.coeff(t).is_one() {
            return Err(Error::Internal(format!("A({t}) has coefficient {} on v_T", a.coeff(t))));
        }
        let mut v = a.clone();
        for j in (0..idx).rev() {
            let g = symmetric_part(&v.coeff(&cols[j]));
            if !g.is_zero() {
                v.add_scaled(&vectors[j], &-&g);
                gamma.push(GammaEntry { col: idx, j, gamma: g });
            }
            let rest = v.coeff(&cols[j]);
            if rest.min_exp().is_some_and(|e| e <= 0) {
                return Err(Error::Internal(format!("coefficient {rest} of {} left after correction", cols[j])));
            }
        }
        monomials.push(a);
        vectors.push(v);
    }
    let rows: BTreeSet<Tabloid> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
    Ok(CanonicalMatrix {
        shape: shape.clone(),
        weight: mu.clone(),
        rows: rows.into_iter().collect(),
        cols,
        vectors,
        monomials,
        gamma,
    })
}

/// All weight spaces of `V(λ)`, in the order of [`weights_of`].
pub fn canonical_basis(shape: &Shape) -> Result<Vec<CanonicalMatrix>> {
    weights_of(shape).iter().map(|mu| canonical_matrix(shape, mu)).collect()
}
