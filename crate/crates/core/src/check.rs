//! Exhaustive invariant sweep over small ranks.
//!
//! Each property is evaluated on every case in range and reported with its case
//! count and the first few failures.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::canonical::{a_path, canonical_basis, global_column, symmetric_part, CanonicalMatrix};
use crate::crystal::{raise_to_highest, word_apply, word_eps_phi, Dir, SpinColumn, Word};
use crate::error::Result;
use crate::lincomb::LinComb;
use crate::modvec::{highest_vector, Lowering, ModuleVector};
use crate::rootdata::{AlgebraKind, DominantWeight, Family};
use crate::shapes::{enumerate_columns, enumerate_tableaux, Shape, Tabloid};
use crate::wedge::{tensor_lift_f, wedge_f};

const MAX_REPORTED: usize = 5;

/// Which algebras and highest weights the sweep covers.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub b_ranks: Vec<usize>,
    pub d_ranks: Vec<usize>,
    /// Highest weights with `Σ λ_i ≤ max_level` are swept.
    pub max_level: u32,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { b_ranks: vec![2, 3], d_ranks: vec![3], max_level: 2 }
    }
}

impl CheckConfig {
    pub fn kinds(&self) -> Vec<AlgebraKind> {
        let b = self.b_ranks.iter().map(|&n| AlgebraKind::b(n));
        let d = self.d_ranks.iter().map(|&n| AlgebraKind::d(n));
        b.chain(d).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    pub examples: Vec<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases, {} failures)", self.name, self.cases, self.failed)?;
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

/// Collects outcomes by property name.
#[derive(Clone, Debug, Default)]
pub struct Report {
    props: BTreeMap<String, PropertyOutcome>,
}

impl Report {
    pub fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let p = self
            .props
            .entry(name.to_string())
            .or_insert_with(|| PropertyOutcome { name: name.to_string(), ..Default::default() });
        p.cases += 1;
        if !ok {
            p.failed += 1;
            if p.examples.len() < MAX_REPORTED {
                p.examples.push(detail());
            }
        }
    }

    /// Records the outcome of a fallible computation under `arithmetic`, returning its value.
    fn guard<T>(&mut self, what: impl Fn() -> String, r: Result<T>) -> Option<T> {
        let ok = r.is_ok();
        let msg = r.as_ref().err().map(|e| e.to_string());
        self.record("arithmetic", ok, || format!("{}: {}", what(), msg.unwrap_or_default()));
        r.ok()
    }

    pub fn merge(&mut self, other: Report) {
        for (name, o) in other.props {
            let p = self.props.entry(name.clone()).or_insert_with(|| PropertyOutcome { name, ..Default::default() });
            p.cases += o.cases;
            p.failed += o.failed;
            for e in o.examples {
                if p.examples.len() < MAX_REPORTED {
                    p.examples.push(e);
                }
            }
        }
    }

    pub fn outcomes(&self) -> Vec<PropertyOutcome> {
        self.props.values().cloned().collect()
    }

    pub fn get(&self, name: &str) -> Option<&PropertyOutcome> {
        self.props.get(name)
    }

    pub fn all_passed(&self) -> bool {
        self.props.values().all(|p| p.passed())
    }
}

/// Dimension of `V(λ)` by Weyl's formula.
pub fn weyl_dimension(kind: AlgebraKind, lambda: &DominantWeight) -> BigInt {
    let n = kind.rank;
    let lam = lambda.to_weight(kind).0;
    // doubled ρ
    let rho: Vec<i64> = match kind.family {
        Family::B => (0..n).map(|k| 2 * (n - k) as i64 - 1).collect(),
        Family::D => (0..n).map(|k| 2 * (n - 1 - k) as i64).collect(),
    };
    let top: Vec<i64> = lam.iter().zip(&rho).map(|(&l, &r)| l as i64 + r).collect();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for a in 0..n {
        for b in a + 1..n {
            num *= (top[a] - top[b]) * (top[a] + top[b]);
            den *= (rho[a] - rho[b]) * (rho[a] + rho[b]);
        }
        if kind.is_b() {
            num *= top[a];
            den *= rho[a];
        }
    }
    num / den
}

/// Dominant weights of the kind with `Σ λ_i ≤ level`, excluding zero.
pub fn dominant_weights_up_to(kind: AlgebraKind, level: u32) -> Vec<DominantWeight> {
    let n = kind.rank;
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DominantWeight>) {
        if pos == cur.len() {
            if cur.iter().any(|&c| c > 0) {
                out.push(DominantWeight(cur.clone()));
            }
            return;
        }
        for c in 0..=left {
            cur[pos] = c;
            rec(pos + 1, left - c, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, level, &mut cur, &mut out);
    out
}

/// Properties of the wedge modules, columns and spin columns of one kind.
pub fn check_kind(kind: AlgebraKind) -> Report {
    let mut rep = Report::default();
    let n = kind.rank;
    for p in 1..=n {
        let all = enumerate_columns(kind, p, false);
        let adm = enumerate_columns(kind, p, true);
        let alphabet = 2 * n + kind.is_b() as usize;
        let expected_all: usize = (0..=p / 2).map(|k| binom(alphabet, p - 2 * k)).sum();
        rep.record("column_counts", all.len() == expected_all, || {
            format!("{kind} p={p}: {} columns, expected {expected_all}", all.len())
        });
        rep.record("column_counts", adm.len() == binom(alphabet, p), || {
            format!("{kind} p={p}: {} admissible, expected {}", adm.len(), binom(alphabet, p))
        });
        for c in &all {
            for i in 1..=n {
                let closed = wedge_f(kind, c, i);
                let lifted = rep.guard(|| format!("{kind} lift f_{i} {c}"), tensor_lift_f(kind, c, i));
                if let Some(lifted) = lifted {
                    rep.record("wedge_oracle", closed == lifted, || format!("{kind} f_{i} [{c}]"));
                }
                let target = c.weight(n).sub(&kind.simple_root(i));
                rep.record("weight_homogeneity", closed.keys().all(|d| d.weight(n) == target), || {
                    format!("{kind} f_{i} [{c}]")
                });
            }
        }
        for c in &adm {
            if let Some(g) = rep.guard(|| format!("{kind} G([{c}])"), global_column(kind, c)) {
                let ok = match g.eval_at_zero() {
                    Ok(m) => m.len() == 1 && m.get(c) == Some(&BigInt::from(1)),
                    Err(_) => false,
                };
                rep.record("marsh_congruence", ok, || format!("{kind} G([{c}])"));
            }
        }
    }
    let spins = SpinColumn::enumerate(kind, None).len();
    rep.record("spin_counts", spins == 1 << n, || format!("{kind}: {spins} spin columns"));
    if kind.is_d() {
        for parity in 0..2 {
            let k = SpinColumn::enumerate(kind, Some(parity)).len();
            rep.record("spin_counts", k == 1 << (n - 1), || format!("{kind} parity {parity}: {k}"));
        }
    }
    rep
}

/// Crystal and canonical basis properties of `V(λ)`.
pub fn check_shape(shape: &Shape) -> Report {
    let mut rep = Report::default();
    let kind = shape.kind;
    let n = kind.rank;
    let name = format!("{kind} λ=({})", shape.lambda);

    let tableaux = enumerate_tableaux(shape, None);
    let dim = weyl_dimension(kind, &shape.lambda);
    rep.record("tableau_count_weyl_dimension", BigInt::from(tableaux.len()) == dim, || {
        format!("{name}: {} tableaux, Weyl dimension {dim}", tableaux.len())
    });

    let top = shape.highest_tabloid().reading(kind);
    for t in &tableaux {
        let w = t.reading(kind);
        for i in 1..=n {
            let (eps, phi) = word_eps_phi(&w, i);
            let mut ok = true;
            if let Some(x) = word_apply(&w, i, Dir::F) {
                ok &= word_apply(&x, i, Dir::E).as_ref() == Some(&w);
            }
            if let Some(x) = word_apply(&w, i, Dir::E) {
                ok &= word_apply(&x, i, Dir::F).as_ref() == Some(&w);
            }
            ok &= string_length(&w, i, Dir::E) == eps && string_length(&w, i, Dir::F) == phi;
            rep.record("crystal_edge_symmetry", ok, || format!("{name}: {w} i={i}"));
        }
        let (up, _) = raise_to_highest(&w);
        let down = raise_descending(&w);
        rep.record("crystal_path_independence", up == top && down == top, || format!("{name}: {w}"));
    }

    let Some(matrices) = rep.guard(|| name.clone(), canonical_basis(shape)) else {
        return rep;
    };
    let mut lowering = Lowering::new(kind);
    for m in &matrices {
        check_matrix(&mut rep, &mut lowering, &name, m);
    }
    if shape.spin.is_some() {
        check_direct(&mut rep, &mut lowering, shape, &tableaux, &name);
    }
    rep
}

fn check_matrix(rep: &mut Report, lowering: &mut Lowering, name: &str, m: &CanonicalMatrix) {
    let kind = m.shape.kind;
    let n = kind.rank;
    for (idx, t) in m.cols.iter().enumerate() {
        let a = &m.monomials[idx];
        let tri = a.coeff(t).is_one() && a.keys().all(|s| s <= t && s.weight(n) == m.weight);
        rep.record("a_vector_triangularity", tri, || format!("{name}: A({t})"));

        let g = &m.vectors[idx];
        let congruent = match g.eval_at_zero() {
            Ok(z) => z.len() == 1 && z.get(t) == Some(&BigInt::from(1)),
            Err(_) => false,
        };
        rep.record("crystal_congruence", congruent, || format!("{name}: G({t})"));
        let unitri = g.coeff(t).is_one() && g.keys().all(|s| s <= t && s.weight(n) == m.weight);
        rep.record("unitriangularity", unitri, || format!("{name}: G({t})"));
        rep.record("integrality", g.iter().all(|(_, c)| c.is_polynomial()), || format!("{name}: G({t})"));
        let idempotent = m.cols[..idx].iter().all(|s| symmetric_part(&g.coeff(s)).is_zero());
        rep.record("correction_idempotence", idempotent, || format!("{name}: G({t})"));

        let v = ModuleVector { shape: m.shape.clone(), terms: g.clone() };
        for i in 1..=n {
            if let Some(w) = rep.guard(|| format!("{name}: f_{i} G({t})"), lowering.f_divided(&v, i, 1)) {
                let target = m.weight.sub(&kind.simple_root(i));
                let ok = w.is_zero() || w.homogeneous_weight() == Some(target);
                rep.record("weight_homogeneity", ok, || format!("{name}: f_{i} G({t})"));
            }
        }
    }
    for g in &m.gamma {
        rep.record("gamma_bar_symmetry", g.gamma.is_bar_invariant(), || {
            format!("{name}: γ = {} at ({}, {})", g.gamma, g.col, g.j)
        });
    }
}

/// Tableaux whose non-spin part is of highest weight are used as `A(T) = v_T`; check that
/// `v_T` is the divided-power monomial along its crystal path, hence lies in `V(λ)`.
fn check_direct(rep: &mut Report, lowering: &mut Lowering, shape: &Shape, tableaux: &[Tabloid], name: &str) {
    let kind = shape.kind;
    let Ok(v0) = highest_vector(&shape.lambda, kind) else {
        return;
    };
    for t in tableaux {
        let Ok(path) = a_path(shape, t) else {
            rep.record("direct_tableaux", false, || format!("{name}: no path for {t}"));
            continue;
        };
        if !path.direct {
            continue;
        }
        let (_, steps) = raise_to_highest(&path.base.reading(kind));
        if let Some(v) = rep.guard(|| format!("{name}: v_{}", path.base), lowering.apply_monomial(&v0, &steps)) {
            let expected: LinComb<Tabloid> = LinComb::basis(path.base.clone());
            rep.record("direct_tableaux", v.terms == expected, || format!("{name}: v_{}", path.base));
        }
    }
}

fn string_length(w: &Word, i: usize, dir: Dir) -> u32 {
    let mut cur = w.clone();
    let mut k = 0;
    while let Some(next) = word_apply(&cur, i, dir) {
        cur = next;
        k += 1;
    }
    k
}

/// Raises with the largest applicable index first, one step at a time.
fn raise_descending(w: &Word) -> Word {
    let mut cur = w.clone();
    'outer: loop {
        for i in (1..=cur.kind.rank).rev() {
            if let Some(next) = word_apply(&cur, i, Dir::E) {
                cur = next;
                continue 'outer;
            }
        }
        return cur;
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Runs every property over the configured range.
pub fn run_checks(cfg: &CheckConfig) -> Report {
    let mut rep = Report::default();
    for kind in cfg.kinds() {
        rep.merge(check_kind(kind));
        for lambda in dominant_weights_up_to(kind, cfg.max_level) {
            match Shape::new(&lambda, kind) {
                Ok(shape) => rep.merge(check_shape(&shape)),
                Err(e) => rep.record("arithmetic", false, || format!("{kind} λ=({lambda}): {e}")),
            }
        }
    }
    rep
}
