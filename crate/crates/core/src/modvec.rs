//! Vectors of `W(λ)` on the tabloid basis.
//!
//! A tabloid `τ = 𝔊 C_1 ... C_r` labels `v_τ = v_{C_r} ⊗ ... ⊗ v_{C_1} ⊗ v_𝔊`, so the
//! tensor factors follow the reading order: columns from right to left, then the
//! spin column. Divided powers act through
//! `f^{(m)}(u ⊗ w) = Σ_k q_i^{(m-k)(a-k)} f^{(k)} u ⊗ f^{(m-k)} w` with `t_i u = q_i^a u`.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::crystal::SpinColumn;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lincomb::LinComb;
use crate::rootdata::{AlgebraKind, DominantWeight, Weight};
use crate::shapes::{Column, Shape, Tabloid};
use crate::spinmod::{spin_module_f_divided, SpinVector};
use crate::wedge::{wedge_f_divided, WedgeVector};

/// A vector of `W(λ)` for a fixed shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    pub shape: Shape,
    pub terms: LinComb<Tabloid>,
}

impl ModuleVector {
    pub fn zero(shape: Shape) -> Self {
        ModuleVector { shape, terms: LinComb::new() }
    }

    pub fn basis(shape: Shape, t: Tabloid) -> Result<Self> {
        if !shape.matches(&t) {
            return Err(Error::ShapeMismatch);
        }
        Ok(ModuleVector { shape, terms: LinComb::basis(t) })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.shape.kind
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, t: &Tabloid) -> LaurentPoly {
        self.terms.coeff(t)
    }

    /// The common weight of the support, or `None` for zero or inhomogeneous vectors.
    pub fn homogeneous_weight(&self) -> Option<Weight> {
        let rank = self.kind().rank;
        let mut weights = self.terms.keys().map(|t| t.weight(rank));
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind().to_string(),
            "lambda": self.shape.lambda.0,
            "terms": self
                .terms
                .iter()
                .map(|(t, c)| json!({"tabloid": t.to_string(), "coeff": c.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

/// `v_λ = v_{T_λ}`.
pub fn highest_vector(lambda: &DominantWeight, kind: AlgebraKind) -> Result<ModuleVector> {
    let shape = Shape::new(lambda, kind)?;
    let t = shape.highest_tabloid();
    ModuleVector::basis(shape, t)
}

/// Trailing tensor factors: columns in tensor order, then the spin column.
type Tail = (Vec<Column>, Option<SpinColumn>);

/// Computes divided powers on `W(λ)`, caching the action on single columns.
pub struct Lowering {
    kind: AlgebraKind,
    cache: HashMap<(Column, usize, u32), WedgeVector>,
}

impl Lowering {
    pub fn new(kind: AlgebraKind) -> Self {
        Lowering { kind, cache: HashMap::new() }
    }

    fn column_f(&mut self, c: &Column, i: usize, k: u32) -> Result<WedgeVector> {
        if k == 0 {
            return Ok(WedgeVector::basis(c.clone()));
        }
        let key = (c.clone(), i, k);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = wedge_f_divided(self.kind, &WedgeVector::basis(c.clone()), i, k)?;
        self.cache.insert(key, v.clone());
        Ok(v)
    }

    /// `f_i^{(m)} v_τ`.
    pub fn f_divided_basis(&mut self, t: &Tabloid, i: usize, m: u32) -> Result<LinComb<Tabloid>> {
        let kind = self.kind;
        kind.check_index(i)?;
        let d = kind.qi_exponent(i) as i32;
        let m_us = m as usize;

        // tails[j] = f^{(j)} applied to the factors processed so far
        let mut tails: Vec<LinComb<Tail>> = vec![LinComb::new(); m_us + 1];
        match t.spin {
            Some(s) => {
                for (j, tail) in tails.iter_mut().enumerate() {
                    let v = spin_module_f_divided(&SpinVector::basis(s), i, j as u32);
                    *tail = v.into_iter().map(|(s2, c)| ((Vec::new(), Some(s2)), c)).collect();
                }
            }
            None => tails[0] = LinComb::basis((Vec::new(), None)),
        }

        // Tensor order is C_r, ..., C_1, spin; fold from the right starting with C_1.
        for col in &t.columns {
            let a = kind.cartan_exponent(&col.weight(kind.rank), i)?;
            let heads: Vec<WedgeVector> = (0..=m).map(|k| self.column_f(col, i, k)).collect::<Result<_>>()?;
            let mut next: Vec<LinComb<Tail>> = vec![LinComb::new(); m_us + 1];
            for (total, slot) in next.iter_mut().enumerate() {
                for (k, head) in heads.iter().enumerate().take(total + 1) {
                    let rest = &tails[total - k];
                    if head.is_zero() || rest.is_zero() {
                        continue;
                    }
                    let e = d * (total - k) as i32 * (a - k as i32);
                    for (c, hc) in head {
                        let scale = hc * &LaurentPoly::q_pow(e);
                        for ((cols, spin), rc) in rest {
                            let mut cols2 = Vec::with_capacity(cols.len() + 1);
                            cols2.push(c.clone());
                            cols2.extend(cols.iter().cloned());
                            slot.add_term((cols2, *spin), &scale * rc);
                        }
                    }
                }
            }
            tails = next;
        }

        let out = std::mem::take(&mut tails[m_us]);
        Ok(out
            .into_iter()
            .map(|((mut cols, spin), c)| {
                cols.reverse();
                (Tabloid::new(spin, cols), c)
            })
            .collect())
    }

    /// `f_i^{(m)} v`.
    pub fn f_divided(&mut self, v: &ModuleVector, i: usize, m: u32) -> Result<ModuleVector> {
        if m == 0 {
            return Ok(v.clone());
        }
        let terms = v.terms.try_map_linear(|t| self.f_divided_basis(t, i, m))?;
        Ok(ModuleVector { shape: v.shape.clone(), terms })
    }

    /// `f_{i_1}^{(r_1)} ... f_{i_s}^{(r_s)} v0` for `path = [(i_1, r_1), ..., (i_s, r_s)]`.
    pub fn apply_monomial(&mut self, v0: &ModuleVector, path: &[(usize, u32)]) -> Result<ModuleVector> {
        let mut v = v0.clone();
        for &(i, r) in path.iter().rev() {
            v = self.f_divided(&v, i, r)?;
            if v.is_zero() {
                break;
            }
        }
        Ok(v)
    }
}

pub fn module_f_divided(v: &ModuleVector, i: usize, m: u32) -> Result<ModuleVector> {
    Lowering::new(v.kind()).f_divided(v, i, m)
}

pub fn apply_monomial(v0: &ModuleVector, path: &[(usize, u32)]) -> Result<ModuleVector> {
    Lowering::new(v0.kind()).apply_monomial(v0, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::word_eps_phi;
    use crate::shapes::enumerate_tabloids;
    use crate::spinmod::spin_module_f;
    use crate::wedge::wedge_f;
    use proptest::prelude::*;

    fn tab(kind: AlgebraKind, s: &str) -> Tabloid {
        Tabloid::parse(kind, s).unwrap()
    }

    fn lam(s: &str) -> DominantWeight {
        DominantWeight::new(s.split(',').map(|x| x.trim().parse().unwrap()).collect())
    }

    /// `f_i v_τ` from `Δ(f) = f ⊗ 1 + t ⊗ f` written out factor by factor.
    fn naive_f(kind: AlgebraKind, t: &Tabloid, i: usize) -> LinComb<Tabloid> {
        let d = kind.qi_exponent(i) as i32;
        let mut out = LinComb::new();
        let mut prefix = 0;
        for pos in (0..t.columns.len()).rev() {
            let col = &t.columns[pos];
            for (c, coeff) in wedge_f(kind, col, i) {
                let mut cols = t.columns.clone();
                cols[pos] = c;
                out.add_term(Tabloid::new(t.spin, cols), &coeff * &LaurentPoly::q_pow(d * prefix));
            }
            prefix += kind.cartan_exponent(&col.weight(kind.rank), i).unwrap();
        }
        if let Some(s) = t.spin {
            for (s2, coeff) in spin_module_f(&SpinVector::basis(s), i) {
                out.add_term(Tabloid::new(Some(s2), t.columns.clone()), &coeff * &LaurentPoly::q_pow(d * prefix));
            }
        }
        out
    }

    fn naive_power(kind: AlgebraKind, t: &Tabloid, i: usize, m: u32) -> LinComb<Tabloid> {
        let mut v = LinComb::basis(t.clone());
        for _ in 0..m {
            v = v.map_linear(|x| naive_f(kind, x, i));
        }
        let fact = LaurentPoly::quantum_factorial(m, kind.qi_exponent(i));
        v.map_coeffs(|c| c.divide_exact(&fact).unwrap())
    }

    #[test]
    fn two_factor_example() {
        let b2 = AlgebraKind::b(2);
        let v = highest_vector(&lam("2,0"), b2).unwrap();
        let w = module_f_divided(&v, 1, 2).unwrap();
        assert_eq!(w.terms, LinComb::basis(tab(b2, "2/2")));
        assert_eq!(module_f_divided(&v, 1, 0).unwrap(), v);
    }

    #[test]
    fn single_factor_is_the_wedge_action() {
        let b3 = AlgebraKind::b(3);
        let v = highest_vector(&lam("0,1,0"), b3).unwrap();
        for path in [vec![(3, 2), (2, 1)], vec![(3, 1), (2, 1)], vec![(1, 1), (2, 1)]] {
            let got = apply_monomial(&v, &path).unwrap();
            let mut w = WedgeVector::basis(Column::highest(2));
            for &(i, r) in path.iter().rev() {
                w = wedge_f_divided(b3, &w, i, r).unwrap();
            }
            let expected: LinComb<Tabloid> = w.into_iter().map(|(c, p)| (Tabloid::new(None, vec![c]), p)).collect();
            assert_eq!(got.terms, expected);
        }
    }

    #[test]
    fn highest_vectors() {
        let b3 = AlgebraKind::b(3);
        let v = highest_vector(&lam("1,1,2"), b3).unwrap();
        assert_eq!(v.terms, LinComb::basis(tab(b3, "1,2,3/1,2/1")));
        let d4 = AlgebraKind::d(4);
        let v = highest_vector(&lam("0,0,2,0"), d4).unwrap();
        assert_eq!(v.terms, LinComb::basis(tab(d4, "1,2,3,-4")));
        let v = highest_vector(&lam("0,0,1"), b3).unwrap();
        assert_eq!(v.terms, LinComb::basis(tab(b3, "s:1,2,3")));
        let v = highest_vector(&lam("0,0,1,0"), d4).unwrap();
        assert_eq!(v.terms, LinComb::basis(tab(d4, "s:1,2,3,-4")));
        for (kind, l) in [(b3, "1,1,3"), (d4, "1,0,1,2"), (d4, "0,1,3,0")] {
            let v = highest_vector(&lam(l), kind).unwrap();
            let t = v.terms.keys().next().unwrap().clone();
            let w = t.reading(kind);
            assert!((1..=kind.rank).all(|i| word_eps_phi(&w, i).0 == 0));
        }
    }

    #[test]
    fn spin_factor_is_last() {
        // f_1 on v_{[1]} ⊗ v_𝔊 with 𝔊 = {1, \bar 2}: the spin term picks up t_1 of the column.
        let b2 = AlgebraKind::b(2);
        let shape = Shape::new(&lam("1,1"), b2).unwrap();
        let t = tab(b2, "s:1,-2/1");
        let v = ModuleVector::basis(shape, t.clone()).unwrap();
        let w = module_f_divided(&v, 1, 1).unwrap();
        let mut expected = LinComb::basis(tab(b2, "s:1,-2/2"));
        expected.add_term(tab(b2, "s:2,-1/1"), LaurentPoly::q_pow(2));
        assert_eq!(w.terms, expected);
    }

    #[test]
    fn divided_powers_match_the_coproduct() {
        let cases = [
            (AlgebraKind::b(2), "1,1"),
            (AlgebraKind::b(2), "2,1"),
            (AlgebraKind::b(3), "1,0,1"),
            (AlgebraKind::d(3), "1,1,0"),
            (AlgebraKind::d(3), "0,1,2"),
        ];
        for (kind, l) in cases {
            let shape = Shape::new(&lam(l), kind).unwrap();
            let mut mu = shape.highest_weight();
            let mut taken = 0;
            for (i, steps) in [(1, 2), (2, 2), (kind.rank, 2)] {
                for _ in 0..steps {
                    mu = mu.sub(&kind.simple_root(i));
                }
                let ts = enumerate_tabloids(&shape, &mu);
                for t in ts.iter().take(12) {
                    let v = ModuleVector::basis(shape.clone(), t.clone()).unwrap();
                    for j in 1..=kind.rank {
                        for m in 1..=3 {
                            let got = module_f_divided(&v, j, m).unwrap();
                            assert_eq!(got.terms, naive_power(kind, t, j, m), "{kind} {t} f_{j}^({m})");
                            taken += 1;
                        }
                    }
                }
            }
            assert!(taken > 0);
        }
    }

    proptest! {
        #[test]
        fn monomials_are_integral_and_homogeneous(
            path in prop::collection::vec((1usize..=3, 1u32..=3), 0..6),
            which in 0usize..4,
        ) {
            let (kind, l) = [
                (AlgebraKind::b(3), "1,1,2"),
                (AlgebraKind::b(3), "0,1,1"),
                (AlgebraKind::d(3), "1,0,1"),
                (AlgebraKind::d(3), "0,2,2"),
            ][which];
            let v = highest_vector(&lam(l), kind).unwrap();
            let w = apply_monomial(&v, &path).unwrap();
            if !w.is_zero() {
                let mut mu = v.shape.highest_weight();
                for &(i, r) in &path {
                    mu = mu.sub(&kind.simple_root(i).scale(r as i32));
                }
                prop_assert_eq!(w.homogeneous_weight(), Some(mu));
            }
        }
    }
}
