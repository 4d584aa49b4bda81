//! Compares the closed-form wedge action with the coproduct-and-straighten reference for
//! every column and index up to rank 6, printing the first mismatches per kind.

use qcb::shapes::enumerate_columns;
use qcb::wedge::{tensor_lift_f, wedge_f};
use qcb::AlgebraKind;

fn main() {
    for kind in [
        AlgebraKind::b(2),
        AlgebraKind::b(3),
        AlgebraKind::d(3),
        AlgebraKind::b(4),
        AlgebraKind::d(4),
        AlgebraKind::d(5),
        AlgebraKind::d(6),
        AlgebraKind::b(5),
    ] {
        let mut bad = 0;
        for h in 1..=kind.rank {
            for c in enumerate_columns(kind, h, false) {
                for i in 1..=kind.rank {
                    let a = wedge_f(kind, &c, i);
                    let b = tensor_lift_f(kind, &c, i).unwrap();
                    if a != b {
                        bad += 1;
                        if bad <= 40 {
                            let fa: Vec<String> = a.iter().map(|(k, v)| format!("{v}*[{k}]")).collect();
                            let fb: Vec<String> = b.iter().map(|(k, v)| format!("{v}*[{k}]")).collect();
                            println!("{kind} f{i} [{c}]: table {} | lift {}", fa.join(" + "), fb.join(" + "));
                        }
                    }
                }
            }
        }
        println!("{kind}: {bad} mismatches");
    }
}
