//! Finite topologies (quasi-orders) up to isomorphism, with the disjoint-union
//! product, the open-set coproduct `Δ`, the down product `↓`, the
//! contraction–extraction coproduct `δ`, and the characters and idempotents
//! built from them.

mod character;
mod hopf;
mod order;

pub use character::{
    canonical_pi_idem, closed_form_e, corolla, eulerian_e, eulerian_lin, isoclasses, ladder,
    lambda, lambda_corolla_closed, lambda_lin, surjection_count, upsilon, EulerianMethod,
    LambdaMethod, Shape, UpsilonMethod, MAX_DIRECT_VERTICES,
};
pub use hopf::{
    antipode_down, antipode_down_lin, binf_bracket, coproduct, coproduct_delta,
    coproduct_delta_lin, coproduct_lin, counit, down, down_all, down_lin, down_tensor,
    ec_partitions, eps_delta, eps_delta_lin, fmt_elem, fmt_tensor, inf_pi, inf_pi_class,
    monotone_splits, mul, mul_lin, mul_tensor, TopoElem, TopoTensor, MAX_DELTA_VERTICES,
};
pub use order::{
    canonical_code_uncached, canonicalize, Partition, QuasiOrder, QuasiOrderClass, MAX_CANONICAL,
    MAX_VERTICES,
};
