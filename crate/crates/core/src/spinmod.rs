//! Spin representations on the basis of spin columns.

use crate::crystal::{spin_apply, Dir, SpinColumn};
use crate::error::Result;
use crate::lincomb::LinComb;

/// Linear combination of spin columns.
pub type SpinVector = LinComb<SpinColumn>;

/// `f_i` on a spin vector. Every structure constant is 1 and `f_i^2 = 0`.
pub fn spin_module_f(v: &SpinVector, i: usize) -> SpinVector {
    v.map_linear(|s| match spin_apply(s, i, Dir::F) {
        Some(t) => SpinVector::basis(t),
        None => SpinVector::new(),
    })
}

/// `f_i^{(k)}` on a spin vector: the identity for `k = 0`, `f_i` for `k = 1`, zero beyond.
pub fn spin_module_f_divided(v: &SpinVector, i: usize, k: u32) -> SpinVector {
    match k {
        0 => v.clone(),
        1 => spin_module_f(v, i),
        _ => SpinVector::new(),
    }
}

/// `<wt(𝔊), α_i^∨>`, the exponent of `q_i` in `t_i v_𝔊`.
pub fn spin_t_exponent(s: &SpinColumn, i: usize) -> Result<i32> {
    s.kind.cartan_exponent(&s.weight(), i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::AlgebraKind;
    use std::collections::BTreeSet;

    fn kinds() -> Vec<AlgebraKind> {
        vec![AlgebraKind::b(2), AlgebraKind::b(3), AlgebraKind::b(4), AlgebraKind::d(3), AlgebraKind::d(4)]
    }

    #[test]
    fn examples() {
        let b3 = AlgebraKind::b(3);
        let top = SpinColumn::highest(b3);
        let v = spin_module_f(&SpinVector::basis(top), 3);
        assert_eq!(v, SpinVector::basis(SpinColumn::parse(b3, "s:1,2,-3").unwrap()));
        assert!(spin_module_f(&SpinVector::basis(top), 1).is_zero());
        assert!(spin_module_f(&v, 3).is_zero());
        assert!(spin_module_f_divided(&v, 2, 2).is_zero());
        assert_eq!(spin_module_f_divided(&v, 2, 0), v);
    }

    #[test]
    fn t_exponents() {
        let b3 = AlgebraKind::b(3);
        let top = SpinColumn::highest(b3);
        assert_eq!(spin_t_exponent(&top, 3).unwrap(), 1);
        assert_eq!(spin_t_exponent(&top, 1).unwrap(), 0);
        let s = SpinColumn::parse(b3, "s:1,2,-3").unwrap();
        assert_eq!(spin_t_exponent(&s, 2).unwrap(), 1);
        let d4 = AlgebraKind::d(4);
        assert_eq!(spin_t_exponent(&SpinColumn::highest(d4), 4).unwrap(), 1);
        assert_eq!(spin_t_exponent(&SpinColumn::highest_odd(d4), 4).unwrap(), 0);
        assert_eq!(spin_t_exponent(&SpinColumn::highest_odd(d4), 3).unwrap(), 1);
    }

    #[test]
    fn agrees_with_crystal_and_strings_are_short() {
        for kind in kinds() {
            for s in SpinColumn::enumerate(kind, None) {
                for i in 1..=kind.rank {
                    let v = spin_module_f(&SpinVector::basis(s), i);
                    match spin_apply(&s, i, Dir::F) {
                        Some(t) => {
                            assert_eq!(v, SpinVector::basis(t));
                            if kind.is_d() {
                                assert_eq!(t.parity(), s.parity());
                            }
                        }
                        None => assert!(v.is_zero()),
                    }
                    assert!(spin_module_f(&v, i).is_zero());
                }
            }
        }
    }

    #[test]
    fn orbit_of_highest_column() {
        for kind in kinds() {
            let starts = if kind.is_d() {
                vec![SpinColumn::highest(kind), SpinColumn::highest_odd(kind)]
            } else {
                vec![SpinColumn::highest(kind)]
            };
            for start in starts {
                let mut seen = BTreeSet::from([start]);
                let mut todo = vec![start];
                while let Some(s) = todo.pop() {
                    for i in 1..=kind.rank {
                        for (t, _) in spin_module_f(&SpinVector::basis(s), i) {
                            if seen.insert(t) {
                                todo.push(t);
                            }
                        }
                    }
                }
                let expected = if kind.is_d() { 1 << (kind.rank - 1) } else { 1 << kind.rank };
                assert_eq!(seen.len(), expected);
            }
        }
    }
}
