use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::combinat::set_partitions;
use crate::error::{Error, Result};
use crate::exactlin::{LinComb, Scalar};
use crate::par;

use super::order::{full_mask, Partition, QuasiOrder, QuasiOrderClass};

/// Linear combination of topology classes.
pub type TopoElem = LinComb<QuasiOrderClass>;
/// Element of the tensor square.
pub type TopoTensor = LinComb<(QuasiOrderClass, QuasiOrderClass)>;

/// Largest vertex count accepted by the contraction coproduct.
pub const MAX_DELTA_VERTICES: usize = 7;

pub fn fmt_elem(x: &TopoElem) -> String {
    x.to_text(|b| b.name())
}

pub fn fmt_tensor(x: &TopoTensor) -> String {
    x.to_text(|(a, b)| format!("{a} ⊗ {b}"))
}

fn class(q: &QuasiOrder) -> QuasiOrderClass {
    // Callers stay within the canonical size bound.
    q.canonical().expect("topology within canonical bound")
}

fn checked_class(q: &QuasiOrder) -> Result<QuasiOrderClass> {
    q.canonical()
}

/// Disjoint-union product on classes.
pub fn mul(a: &QuasiOrderClass, b: &QuasiOrderClass) -> Result<QuasiOrderClass> {
    checked_class(&a.order().disjoint_union(&b.order()))
}

pub fn mul_lin(x: &TopoElem, y: &TopoElem) -> Result<TopoElem> {
    let mut out = TopoElem::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_term(mul(a, b)?, ca * cb);
        }
    }
    Ok(out)
}

/// `a ↓ b`: every vertex of `a` below every vertex of `b`.
pub fn down(a: &QuasiOrderClass, b: &QuasiOrderClass) -> Result<QuasiOrderClass> {
    checked_class(&a.order().below(&b.order()))
}

pub fn down_lin(x: &TopoElem, y: &TopoElem) -> Result<TopoElem> {
    let mut out = TopoElem::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_term(down(a, b)?, ca * cb);
        }
    }
    Ok(out)
}

/// `x1 ↓ x2 ↓ … ↓ xk`; the empty product is the unit.
pub fn down_all(xs: &[TopoElem]) -> Result<TopoElem> {
    let mut acc = TopoElem::basis(QuasiOrderClass::unit());
    for x in xs {
        acc = down_lin(&acc, x)?;
    }
    Ok(acc)
}

/// Componentwise `↓` on the tensor square.
pub fn down_tensor(x: &TopoTensor, y: &TopoTensor) -> Result<TopoTensor> {
    let mut out = TopoTensor::zero();
    for ((a, b), cx) in x {
        for ((c, d), cy) in y {
            out.add_term((down(a, c)?, down(b, d)?), cx * cy);
        }
    }
    Ok(out)
}

/// Componentwise disjoint union on the tensor square.
pub fn mul_tensor(x: &TopoTensor, y: &TopoTensor) -> Result<TopoTensor> {
    let mut out = TopoTensor::zero();
    for ((a, b), cx) in x {
        for ((c, d), cy) in y {
            out.add_term((mul(a, c)?, mul(b, d)?), cx * cy);
        }
    }
    Ok(out)
}

/// Counit of `Δ`: picks the unit coefficient.
pub fn counit(x: &TopoElem) -> Scalar {
    x.coeff(&QuasiOrderClass::unit())
}

/// `Δ(T) = Σ_{O open} T|(E∖O) ⊗ T|O`.
pub fn coproduct(t: &QuasiOrderClass) -> Result<TopoTensor> {
    let q = t.order();
    let all = full_mask(q.len());
    let mut out = TopoTensor::zero();
    for o in q.open_sets()? {
        let left = class(&q.restrict_mask(all & !o));
        let right = class(&q.restrict_mask(o));
        out.add_term((left, right), Scalar::one());
    }
    Ok(out)
}

pub fn coproduct_lin(x: &TopoElem) -> Result<TopoTensor> {
    let mut out = TopoTensor::zero();
    for (t, c) in x {
        out.add_scaled(&coproduct(t)?, c);
    }
    Ok(out)
}

/// Sequences `(A1, …, Ak)` of nonempty blocks whose partial unions are
/// down-sets, i.e. the fibers of monotone surjections `E ↠ [k]`.
pub fn monotone_splits(q: &QuasiOrder) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    splits_rec(q, full_mask(q.len()), &mut prefix, &mut out);
    out
}

fn splits_rec(q: &QuasiOrder, rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        return;
    }
    let mut a = rest;
    while a != 0 {
        let closed = (0..q.len())
            .filter(|&i| a >> i & 1 == 1)
            .all(|i| q.down_mask(i) & rest & !a == 0);
        if closed {
            prefix.push(a);
            splits_rec(q, rest & !a, prefix, out);
            prefix.pop();
        }
        a = (a - 1) & rest;
    }
}

/// The infinitesimal projector on the augmentation ideal:
/// `π(T) = Σ_k (-1)^{k+1} Σ_f T|A1 ↓ … ↓ T|Ak`.
pub fn inf_pi_class(t: &QuasiOrderClass) -> Result<TopoElem> {
    if t.is_unit() {
        return Err(Error::UnitComponent);
    }
    let q = t.order();
    let mut out = TopoElem::zero();
    for blocks in monotone_splits(&q) {
        out.add_term(class(&q.stack(&blocks)), Scalar::sign(blocks.len() + 1));
    }
    Ok(out)
}

pub fn inf_pi(x: &TopoElem) -> Result<TopoElem> {
    if !counit(x).is_zero() {
        return Err(Error::UnitComponent);
    }
    let terms: Vec<_> = x.iter().map(|(t, c)| (*t, c.clone())).collect();
    par::try_sum_lincomb(&terms, |(t, c)| Ok(inf_pi_class(t)?.scale(c)))
}

/// `⟨x1 ⊗ … ⊗ xk, y1 ⊗ … ⊗ yl⟩ = π((x1 ↓ … ↓ xk) · (y1 ↓ … ↓ yl))` on
/// primitive entries.
pub fn binf_bracket(xs: &[TopoElem], ys: &[TopoElem]) -> Result<TopoElem> {
    for x in xs.iter().chain(ys) {
        if x.is_zero() {
            continue;
        }
        if inf_pi(x)? != *x {
            return Err(Error::Invalid(format!(
                "{} is not in the image of the projector",
                fmt_elem(x)
            )));
        }
    }
    let prod = mul_lin(&down_all(xs)?, &down_all(ys)?)?;
    let unit = QuasiOrderClass::unit();
    inf_pi(&prod.filter(|b| *b != unit))
}

type ElemMemo = RwLock<HashMap<QuasiOrderClass, TopoElem>>;

fn antipode_memo() -> &'static ElemMemo {
    static MEMO: OnceLock<ElemMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Antipode of `(H, ↓, Δ)`: `S(T) = -Σ_{O ≠ ∅ open} S(T|E∖O) ↓ T|O`.
pub fn antipode_down(t: &QuasiOrderClass) -> Result<TopoElem> {
    if t.is_unit() {
        return Ok(TopoElem::basis(*t));
    }
    if let Some(s) = antipode_memo().read().unwrap().get(t) {
        return Ok(s.clone());
    }
    let q = t.order();
    let all = full_mask(q.len());
    let mut out = TopoElem::zero();
    for o in q.open_sets()? {
        if o == 0 {
            continue;
        }
        let left = antipode_down(&checked_class(&q.restrict_mask(all & !o))?)?;
        let right = TopoElem::basis(checked_class(&q.restrict_mask(o))?);
        out -= &down_lin(&left, &right)?;
    }
    antipode_memo().write().unwrap().insert(*t, out.clone());
    Ok(out)
}

pub fn antipode_down_lin(x: &TopoElem) -> Result<TopoElem> {
    let mut out = TopoElem::zero();
    for (t, c) in x {
        out.add_scaled(&antipode_down(t)?, c);
    }
    Ok(out)
}

fn connected_in(q: &QuasiOrder, block: u32) -> bool {
    let start = block & block.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let i = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nbrs = (q.up_mask(i) | q.down_mask(i)) & block & !seen;
        seen |= nbrs;
        frontier |= nbrs;
    }
    seen == block
}

/// Partitions `∼` with every block connected in the comparability graph of
/// `T|∼` and with `T/∼` identifying exactly the blocks.
pub fn ec_partitions(q: &QuasiOrder) -> Result<Vec<Partition>> {
    if q.len() > MAX_DELTA_VERTICES {
        return Err(Error::SizeBound {
            what: "topology for contraction coproduct",
            size: q.len(),
            limit: MAX_DELTA_VERTICES,
        });
    }
    let mut out = Vec::new();
    for labels in set_partitions(q.len()) {
        let p = Partition::from_labels(&labels);
        let r = q.restrict(&p)?;
        if !p.blocks().iter().all(|&b| connected_in(&r, b)) {
            continue;
        }
        if q.quotient(&p)?.classes() == p.blocks() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Contraction–extraction coproduct `δ(T) = Σ_{∼} T/∼ ⊗ T|∼`.
pub fn coproduct_delta(t: &QuasiOrderClass) -> Result<TopoTensor> {
    let q = t.order();
    let mut out = TopoTensor::zero();
    for p in ec_partitions(&q)? {
        let left = class(&q.quotient(&p)?);
        let right = class(&q.restrict(&p)?);
        out.add_term((left, right), Scalar::one());
    }
    Ok(out)
}

pub fn coproduct_delta_lin(x: &TopoElem) -> Result<TopoTensor> {
    let terms: Vec<_> = x.iter().map(|(t, c)| (*t, c.clone())).collect();
    par::try_sum_lincomb(&terms, |(t, c)| Ok(coproduct_delta(t)?.scale(c)))
}

/// Counit of `δ`: `1` on topologies whose relation is symmetric.
pub fn eps_delta(t: &QuasiOrderClass) -> Scalar {
    if t.order().is_equivalence() {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

pub fn eps_delta_lin(x: &TopoElem) -> Scalar {
    x.iter().map(|(t, c)| c * eps_delta(t)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> QuasiOrderClass {
        QuasiOrderClass::parse(s).unwrap()
    }

    fn e(terms: &[(i64, &str)]) -> TopoElem {
        terms
            .iter()
            .map(|&(k, s)| (c(s), Scalar::from_int(k)))
            .collect()
    }

    fn t(terms: &[(i64, &str, &str)]) -> TopoTensor {
        terms
            .iter()
            .map(|&(k, a, b)| ((c(a), c(b)), Scalar::from_int(k)))
            .collect()
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(
            coproduct(&c("l2")).unwrap(),
            t(&[(1, "l2", "1"), (1, "1", "l2"), (1, "l1", "l1")])
        );
        assert_eq!(
            coproduct(&c("c3")).unwrap(),
            t(&[
                (1, "c3", "1"),
                (1, "1", "c3"),
                (2, "l2", "l1"),
                (1, "l1", "disc2")
            ])
        );
    }

    #[test]
    fn projector_examples() {
        let pi = |s: &str| inf_pi(&e(&[(1, s)])).unwrap();
        assert_eq!(pi("l1"), e(&[(1, "l1")]));
        assert!(pi("l2").is_zero());
        assert_eq!(pi("disc2"), e(&[(1, "disc2"), (-2, "l2")]));
        assert!(pi("c3").is_zero());
        assert!(pi("[3; 1<3, 2<3]").is_zero());
        assert!(pi("l3").is_zero());
        assert_eq!(
            pi("disc3"),
            e(&[(1, "disc3"), (-3, "c3"), (-3, "[3; 1<3, 2<3]"), (6, "l3")])
        );
        assert!(matches!(inf_pi(&e(&[(1, "1")])), Err(Error::UnitComponent)));
    }

    #[test]
    fn bracket_examples() {
        let pt = e(&[(1, "l1")]);
        assert_eq!(
            binf_bracket(&[pt.clone()], &[pt.clone()]).unwrap(),
            e(&[(1, "disc2"), (-2, "l2")])
        );
        let b = binf_bracket(&[e(&[(1, "disc2"), (-2, "l2")])], &[pt.clone()]).unwrap();
        assert_eq!(
            b,
            e(&[
                (1, "disc3"),
                (-2, "3; 1<2"),
                (-1, "c3"),
                (-1, "[3; 1<3, 2<3]"),
                (4, "l3")
            ])
        );
        assert!(binf_bracket(&[e(&[(1, "l2")])], &[pt]).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(
            coproduct_delta(&c("l2")).unwrap(),
            t(&[(1, "l2", "disc2"), (1, "eq2", "l2")])
        );
        let q = c("c3").order();
        assert_eq!(ec_partitions(&q).unwrap().len(), 4);
        assert_eq!(
            coproduct_delta(&c("c3")).unwrap(),
            t(&[
                (1, "c3", "disc3"),
                (2, "3; 1~2, 1<3", "3; 1<2"),
                (1, "eq3", "c3")
            ])
        );
        assert_eq!(eps_delta(&c("eq2")), Scalar::one());
        assert_eq!(eps_delta(&c("1")), Scalar::one());
        assert!(eps_delta(&c("l2")).is_zero());
    }

    #[test]
    fn antipode_small() {
        assert_eq!(antipode_down(&c("l1")).unwrap(), e(&[(-1, "l1")]));
        assert_eq!(
            antipode_down(&c("disc2")).unwrap(),
            e(&[(-1, "disc2"), (2, "l2")])
        );
    }
}
