use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::combinat::{compositions, surjections};
use crate::error::{Error, Result};
use crate::exactlin::{Poly, Scalar};

use super::hopf::{coproduct_delta, inf_pi, monotone_splits, mul, TopoElem, MAX_DELTA_VERTICES};
use super::order::{full_mask, Partition, QuasiOrder, QuasiOrderClass};

/// Largest vertex count for the direct Eulerian idempotent formula.
pub const MAX_DIRECT_VERTICES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpsilonMethod {
    /// Recursion over nonempty sets of minimal classes.
    Recursive,
    /// Counting class-constant strictly monotone surjections.
    SurjectionOracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaMethod {
    /// `∫_0^1 Υ(T)(X) dX`.
    UpsilonIntegral,
    /// `Σ_k (-1)^{k-1}/k Σ_f Π ε_δ(T|A_i)` over monotone surjections.
    DeltaSeries,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerianMethod {
    /// `Σ_{∼} λ(T/∼) T|∼` from the contraction coproduct.
    ViaDelta,
    /// `Σ_k (-1)^{k-1}/k Σ_f T|A1 ⋯ T|Ak` from the deconcatenation side.
    Direct,
}

type PolyMemo = RwLock<HashMap<QuasiOrderClass, Poly>>;

fn upsilon_memo() -> &'static PolyMemo {
    static MEMO: OnceLock<PolyMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

pub fn upsilon(t: &QuasiOrderClass, method: UpsilonMethod) -> Result<Poly> {
    if t.is_unit() {
        return Err(Error::UnitTopology);
    }
    match method {
        UpsilonMethod::Recursive => upsilon_rec(t),
        UpsilonMethod::SurjectionOracle => Ok(upsilon_oracle(&t.order())),
    }
}

fn upsilon_rec(t: &QuasiOrderClass) -> Result<Poly> {
    if let Some(p) = upsilon_memo().read().unwrap().get(t) {
        return Ok(p.clone());
    }
    let q = t.order();
    let mins = q.min_classes();
    let all = full_mask(q.len());
    let mut out = Poly::zero();
    for sel in 1u32..(1 << mins.len()) {
        let removed = (0..mins.len())
            .filter(|&i| sel >> i & 1 == 1)
            .fold(0u32, |acc, i| acc | mins[i]);
        let rest = all & !removed;
        if rest == 0 {
            out = out + Poly::one();
        } else {
            let sub = q.restrict_mask(rest).canonical()?;
            out = out + upsilon_rec(&sub)?.shift(1);
        }
    }
    upsilon_memo().write().unwrap().insert(*t, out.clone());
    Ok(out)
}

/// `Σ_k #{class-constant f: E ↠ [k], x < y ⇒ f(x) < f(y)} X^{k-1}`.
fn upsilon_oracle(q: &QuasiOrder) -> Poly {
    let classes = q.classes();
    let m = classes.len();
    let rep: Vec<usize> = classes
        .iter()
        .map(|c| c.trailing_zeros() as usize)
        .collect();
    let below: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).filter(|&b| q.lt(rep[b], rep[a])).collect())
        .collect();
    let mut counts = vec![0i64; m + 1];
    for k in 1..=m {
        let mut f = vec![0usize; m];
        let mut n = 0;
        count_assignments(0, k, &below, &mut f, &mut n);
        counts[k] = n;
    }
    Poly::from_terms((1..=m).map(|k| ((k - 1) as u32, Scalar::from_int(counts[k]))))
}

fn count_assignments(a: usize, k: usize, below: &[Vec<usize>], f: &mut [usize], n: &mut i64) {
    if a == f.len() {
        let mut hit = vec![false; k];
        f.iter().for_each(|&v| hit[v] = true);
        if hit.iter().all(|&h| h) {
            *n += 1;
        }
        return;
    }
    for v in 0..k {
        f[a] = v;
        let ok = below[a].iter().all(|&b| b >= a || f[b] < v)
            && (0..a).all(|b| !below[b].contains(&a) || v < f[b]);
        if ok {
            count_assignments(a + 1, k, below, f, n);
        }
    }
}

/// The infinitesimal character `λ`; `λ(1) = 0`.
pub fn lambda(t: &QuasiOrderClass, method: LambdaMethod) -> Result<Scalar> {
    if t.is_unit() {
        return Ok(Scalar::zero());
    }
    match method {
        LambdaMethod::UpsilonIntegral => {
            Ok(upsilon(t, UpsilonMethod::Recursive)?.integrate_unit_interval())
        }
        LambdaMethod::DeltaSeries => {
            let q = t.order();
            let mut out = Scalar::zero();
            for blocks in monotone_splits(&q) {
                let k = blocks.len();
                let all_sym = blocks.iter().all(|&b| q.restrict_mask(b).is_equivalence());
                if all_sym {
                    out += Scalar::sign(k - 1) * Scalar::recip_int(k as i64);
                }
            }
            Ok(out)
        }
    }
}

pub fn lambda_lin(x: &TopoElem, method: LambdaMethod) -> Result<Scalar> {
    let mut out = Scalar::zero();
    for (t, c) in x {
        out += c * lambda(t, method)?;
    }
    Ok(out)
}

/// The Eulerian idempotent of the topology bialgebra; `e(1) = 0`.
pub fn eulerian_e(t: &QuasiOrderClass, method: EulerianMethod) -> Result<TopoElem> {
    if t.is_unit() {
        return Ok(TopoElem::zero());
    }
    match method {
        EulerianMethod::ViaDelta => {
            let mut out = TopoElem::zero();
            for ((left, right), c) in &coproduct_delta(t)? {
                let l = lambda(left, LambdaMethod::UpsilonIntegral)?;
                if !l.is_zero() {
                    out.add_term(*right, c * l);
                }
            }
            Ok(out)
        }
        EulerianMethod::Direct => {
            if t.len() > MAX_DIRECT_VERTICES {
                return Err(Error::SizeBound {
                    what: "topology for direct Eulerian idempotent",
                    size: t.len(),
                    limit: MAX_DIRECT_VERTICES,
                });
            }
            let q = t.order();
            let mut out = TopoElem::zero();
            for blocks in monotone_splits(&q) {
                let k = blocks.len();
                let part = Partition::from_blocks(blocks);
                let r = q.restrict(&part)?.canonical()?;
                out.add_term(r, Scalar::sign(k - 1) * Scalar::recip_int(k as i64));
            }
            Ok(out)
        }
    }
}

pub fn eulerian_lin(x: &TopoElem, method: EulerianMethod) -> Result<TopoElem> {
    let mut out = TopoElem::zero();
    for (t, c) in x {
        out.add_scaled(&eulerian_e(t, method)?, c);
    }
    Ok(out)
}

/// `π ∘ e`.
pub fn canonical_pi_idem(t: &QuasiOrderClass) -> Result<TopoElem> {
    inf_pi(&eulerian_e(t, EulerianMethod::ViaDelta)?)
}

/// The total order on `n` points (`l1` is the point).
pub fn ladder(n: usize) -> Result<QuasiOrderClass> {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    QuasiOrder::from_pairs(n, &pairs)?.canonical()
}

/// One minimum below `n - 1` pairwise incomparable points; `c1` is the point
/// and `c2` the ladder `l2`.
pub fn corolla(n: usize) -> Result<QuasiOrderClass> {
    let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
    QuasiOrder::from_pairs(n, &pairs)?.canonical()
}

/// Number of surjections `[n] ↠ [k + 1]`.
pub fn surjection_count(n: u64, k: u64) -> u64 {
    surjections(n, k + 1)
}

/// `λ(c_n) = Σ_{k=0}^{n-2} s_{n-1,k} (-1)^{k+1} / (k + 2)`, `λ(c_1) = 1`.
pub fn lambda_corolla_closed(n: usize) -> Scalar {
    if n <= 1 {
        return Scalar::from_int(n as i64);
    }
    (0..=n - 2)
        .map(|k| {
            Scalar::from_int(surjection_count((n - 1) as u64, k as u64) as i64)
                * Scalar::sign(k + 1)
                * Scalar::recip_int(k as i64 + 2)
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Ladder,
    Corolla,
}

/// Closed forms of the Eulerian idempotent on ladders and corollas.
pub fn closed_form_e(shape: Shape, n: usize) -> Result<TopoElem> {
    if n == 0 {
        return Ok(TopoElem::zero());
    }
    let mut out = TopoElem::zero();
    match shape {
        Shape::Ladder => {
            for comp in compositions(n) {
                let k = comp.len();
                let mut prod = QuasiOrderClass::unit();
                for &part in &comp {
                    prod = mul(&prod, &ladder(part)?)?;
                }
                out.add_term(prod, Scalar::sign(k + 1) * Scalar::recip_int(k as i64));
            }
        }
        Shape::Corolla => {
            let point = ladder(1)?;
            for i in 0..n {
                let mut prod = corolla(n - i)?;
                for _ in 0..i {
                    prod = mul(&prod, &point)?;
                }
                let c = Scalar::from_int(crate::combinat::binomial((n - 1) as u64, i as u64) as i64)
                    * lambda_corolla_closed(i + 1);
                out.add_term(prod, c);
            }
        }
    }
    Ok(out)
}

type ClassList = RwLock<HashMap<usize, Vec<QuasiOrderClass>>>;

fn iso_memo() -> &'static ClassList {
    static MEMO: OnceLock<ClassList> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// All isomorphism classes of topologies on `n` points, sorted.
pub fn isoclasses(n: usize) -> Result<Vec<QuasiOrderClass>> {
    if n > MAX_DELTA_VERTICES {
        return Err(Error::SizeBound {
            what: "isoclass enumeration",
            size: n,
            limit: MAX_DELTA_VERTICES,
        });
    }
    if let Some(v) = iso_memo().read().unwrap().get(&n) {
        return Ok(v.clone());
    }
    let out = if n == 0 {
        vec![QuasiOrderClass::unit()]
    } else {
        let mut set = std::collections::BTreeSet::new();
        for base in isoclasses(n - 1)? {
            let q = base.order();
            // The new vertex sits above the down-set `d` and below the up-set
            // `u`; transitivity forces `d ≤ u` elementwise.
            let downs: Vec<u32> = (0..=full_mask(n - 1)).filter(|&m| is_down(&q, m)).collect();
            let ups: Vec<u32> = (0..=full_mask(n - 1)).filter(|&m| q.is_open(m)).collect();
            for &d in &downs {
                for &u in &ups {
                    let compatible = (0..n - 1)
                        .filter(|&i| d >> i & 1 == 1)
                        .all(|i| q.up_mask(i) & u == u);
                    if !compatible {
                        continue;
                    }
                    let mut pairs = Vec::new();
                    for i in 0..n - 1 {
                        for j in 0..n - 1 {
                            if q.le(i, j) {
                                pairs.push((i, j));
                            }
                        }
                        if d >> i & 1 == 1 {
                            pairs.push((i, n - 1));
                        }
                        if u >> i & 1 == 1 {
                            pairs.push((n - 1, i));
                        }
                    }
                    set.insert(QuasiOrder::from_pairs(n, &pairs)?.canonical()?);
                }
            }
        }
        set.into_iter().collect()
    };
    iso_memo().write().unwrap().insert(n, out.clone());
    Ok(out)
}

fn is_down(q: &QuasiOrder, mask: u32) -> bool {
    (0..q.len())
        .filter(|&i| mask >> i & 1 == 1)
        .all(|i| q.down_mask(i) & !mask == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> QuasiOrderClass {
        QuasiOrderClass::parse(s).unwrap()
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn upsilon_examples() {
        let cases = [
            ("l1", "1"),
            ("disc2", "2X+1"),
            ("disc3", "6X^2+6X+1"),
            ("l2", "X"),
            ("c3", "2X^2+X"),
            ("[3; 1<3, 2<3]", "2X^2+X"),
            ("l3", "X^2"),
            ("3; 1<2", "3X^2+2X"),
        ];
        for (t, p) in cases {
            for m in [UpsilonMethod::Recursive, UpsilonMethod::SurjectionOracle] {
                assert_eq!(upsilon(&c(t), m).unwrap().to_string(), p, "{t} {m:?}");
            }
        }
        assert!(matches!(
            upsilon(&c("1"), UpsilonMethod::Recursive),
            Err(Error::UnitTopology)
        ));
    }

    #[test]
    fn lambda_examples() {
        let cases = [
            ("l1", q(1, 1)),
            ("l2", q(-1, 2)),
            ("c3", q(1, 6)),
            ("[3; 1<3, 2<3]", q(1, 6)),
            ("disc2", q(0, 1)),
            ("disc3", q(0, 1)),
            ("3; 1<2", q(0, 1)),
            ("l3", q(1, 3)),
            ("c4", q(0, 1)),
            ("l4", q(-1, 4)),
            ("c5", q(-1, 30)),
        ];
        for (t, v) in cases {
            for m in [LambdaMethod::UpsilonIntegral, LambdaMethod::DeltaSeries] {
                assert_eq!(lambda(&c(t), m).unwrap(), v, "{t} {m:?}");
            }
        }
        for n in 1..=6 {
            assert_eq!(
                lambda(&corolla(n).unwrap(), LambdaMethod::UpsilonIntegral).unwrap(),
                lambda_corolla_closed(n),
                "c{n}"
            );
        }
    }

    #[test]
    fn eulerian_examples() {
        let e = |terms: &[(Scalar, &str)]| -> TopoElem {
            terms.iter().map(|(k, s)| (c(s), k.clone())).collect()
        };
        let cases = [
            ("l1", e(&[(q(1, 1), "l1")])),
            ("l2", e(&[(q(1, 1), "l2"), (q(-1, 2), "disc2")])),
            (
                "c3",
                e(&[(q(1, 1), "c3"), (q(-1, 1), "3; 1<2"), (q(1, 6), "disc3")]),
            ),
            (
                "[3; 1<3, 2<3]",
                e(&[
                    (q(1, 1), "[3; 1<3, 2<3]"),
                    (q(-1, 1), "3; 1<2"),
                    (q(1, 6), "disc3"),
                ]),
            ),
            (
                "l3",
                e(&[(q(1, 1), "l3"), (q(-1, 1), "3; 1<2"), (q(1, 3), "disc3")]),
            ),
        ];
        for (t, v) in cases {
            for m in [EulerianMethod::ViaDelta, EulerianMethod::Direct] {
                assert_eq!(eulerian_e(&c(t), m).unwrap(), v, "{t} {m:?}");
            }
        }
    }

    #[test]
    fn closed_forms_match() {
        for n in 1..=5 {
            for (shape, t) in [
                (Shape::Ladder, ladder(n).unwrap()),
                (Shape::Corolla, corolla(n).unwrap()),
            ] {
                assert_eq!(
                    closed_form_e(shape, n).unwrap(),
                    eulerian_e(&t, EulerianMethod::ViaDelta).unwrap(),
                    "{shape:?} {n}"
                );
            }
        }
    }

    #[test]
    fn isoclass_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| isoclasses(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 9, 33, 139]);
    }
}
