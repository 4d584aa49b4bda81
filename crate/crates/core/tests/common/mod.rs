//! Reference computations shared by the integration tests.
#![allow(dead_code)]

use qcb::crystal::{spin_apply, vec_edge, Dir, SpinColumn};
use qcb::lincomb::LinComb;
use qcb::shapes::{Column, Shape, Tabloid};
use qcb::wedge::straighten;
use qcb::{AlgebraKind, LaurentPoly, Letter};

/// A basis vector of `V(Λ_1)^{⊗N}`, optionally tensored with a spin column on the right.
pub type Flat = (Vec<Letter>, Option<SpinColumn>);

fn letter_f(kind: AlgebraKind, x: Letter, i: usize) -> Option<(Letter, LaurentPoly)> {
    let y = vec_edge(x, i, Dir::F, kind)?;
    let c =
        if kind.is_b() && i == kind.rank && x.is_zero() { LaurentPoly::quantum_int(2, 1) } else { LaurentPoly::one() };
    Some((y, c))
}

/// `f_i` through `Δ(f) = f ⊗ 1 + t ⊗ f` on a tensor product of letters and a spin column.
pub fn flat_f(kind: AlgebraKind, v: &LinComb<Flat>, i: usize) -> LinComb<Flat> {
    let d = kind.qi_exponent(i) as i32;
    let mut out = LinComb::new();
    for ((word, spin), coeff) in v {
        let mut prefix = 0;
        for (pos, &x) in word.iter().enumerate() {
            if let Some((y, c)) = letter_f(kind, x, i) {
                let mut w2 = word.clone();
                w2[pos] = y;
                out.add_term((w2, *spin), &(coeff * &c) * &LaurentPoly::q_pow(d * prefix));
            }
            prefix += kind.cartan_exponent(&x.weight(kind.rank), i).unwrap();
        }
        if let Some(s) = spin {
            if let Some(s2) = spin_apply(s, i, Dir::F) {
                out.add_term((word.clone(), Some(s2)), coeff * &LaurentPoly::q_pow(d * prefix));
            }
        }
    }
    out
}

/// `f_{i_1}^{(r_1)} ... f_{i_s}^{(r_s)}` applied to `v_τ`, computed in the full tensor power of
/// the vector representation and projected onto `W(λ)` column by column.
pub fn lifted_monomial(shape: &Shape, base: &Tabloid, path: &[(usize, u32)]) -> LinComb<Tabloid> {
    let kind = shape.kind;
    let word: Vec<Letter> = base.reading_letters().collect();
    let mut v: LinComb<Flat> = LinComb::basis((word, base.spin));
    for &(i, r) in path.iter().rev() {
        for _ in 0..r {
            v = flat_f(kind, &v, i);
        }
        let fact = LaurentPoly::quantum_factorial(r, kind.qi_exponent(i));
        v = v.map_coeffs(|c| c.divide_exact(&fact).expect("divided power is integral"));
    }
    project(shape, &v)
}

/// Straightens each column block of every word.
pub fn project(shape: &Shape, v: &LinComb<Flat>) -> LinComb<Tabloid> {
    let kind = shape.kind;
    let mut out = LinComb::new();
    for ((word, spin), coeff) in v {
        // blocks in reading order: C_r, ..., C_1
        let mut partial: LinComb<Vec<Column>> = LinComb::basis(Vec::new());
        let mut pos = 0;
        for &h in shape.heights.iter().rev() {
            let block = straighten(kind, &word[pos..pos + h]).expect("straightening terminates");
            pos += h;
            let mut next = LinComb::new();
            for (cols, c1) in &partial {
                for (col, c2) in &block {
                    let mut cols2 = cols.clone();
                    cols2.push(col.clone());
                    next.add_term(cols2, c1 * c2);
                }
            }
            partial = next;
        }
        for (mut cols, c) in partial {
            cols.reverse();
            out.add_term(Tabloid::new(*spin, cols), &c * coeff);
        }
    }
    out
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}
