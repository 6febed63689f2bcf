use binfty_core::binfty::fixtures::{cyclic_group, flalg, positive_integers};
use binfty_core::binfty::BInftyStructure;
use binfty_core::idem::{
    eulerian_idempotent, eulerian_lin, hoffman_exp, hoffman_exp_tilde, hoffman_log,
    hoffman_log_tilde, omega_tilde, varpi, zeta_tilde, TangentEndo, Varpi,
};
use binfty_core::words::{
    inverse_structure_endo, map_letters, project_letters, structure_endo, TensorElem, Word,
};
use binfty_core::LinComb;

fn corpus() -> Vec<BInftyStructure> {
    vec![cyclic_group(3), positive_integers(3), flalg()]
}

#[test]
fn eulerian_is_an_idempotent_tangent_to_identity() {
    for b in corpus() {
        for w in b.alphabet().words_up_to(4) {
            let e = eulerian_idempotent(&b, &w).unwrap();
            assert_eq!(eulerian_lin(&b, &e).unwrap(), e, "{b:?} {w:?}");
            assert_eq!(project_letters(&e), varpi(&b, &w).unwrap());
        }
        assert!(TangentEndo::Eulerian.verify(&b, 4).unwrap().is_tangent());
    }
}

#[test]
fn omega_and_zeta_are_inverse() {
    for b in corpus() {
        for w in b.alphabet().words_up_to(4) {
            let x = TensorElem::basis(w);
            assert_eq!(zeta_tilde(&b, &omega_tilde(&b, &x).unwrap()).unwrap(), x);
            assert_eq!(omega_tilde(&b, &zeta_tilde(&b, &x).unwrap()).unwrap(), x);
        }
    }
}

#[test]
fn zeta_recursion_matches_generic_inverse() {
    for b in corpus() {
        let v = Varpi::new(&b);
        for w in b.alphabet().words_up_to(4) {
            let x = TensorElem::basis(w);
            assert_eq!(
                structure_endo(&v, &x).unwrap(),
                omega_tilde(&b, &x).unwrap()
            );
            assert_eq!(
                inverse_structure_endo(&v, &x).unwrap(),
                zeta_tilde(&b, &x).unwrap()
            );
        }
    }
}

#[test]
fn omega_turns_the_product_into_shuffle() {
    let b = cyclic_group(3);
    let ws = b.alphabet().words_up_to(2);
    for u in &ws {
        for v in &ws {
            let prod = b.product_words(u, v).unwrap();
            let lhs = omega_tilde(&b, &prod).unwrap();
            let ou = omega_tilde(&b, &TensorElem::basis(u.clone())).unwrap();
            let ov = omega_tilde(&b, &TensorElem::basis(v.clone())).unwrap();
            assert_eq!(lhs, binfty_core::words::shuffle_lin(&ou, &ov));
        }
    }
}

#[test]
fn hoffman_closed_forms() {
    for b in [cyclic_group(3), positive_integers(3)] {
        let p = b.letter_product().unwrap();
        for w in b.alphabet().words_up_to(4) {
            assert_eq!(hoffman_log(p, &w), varpi(&b, &w).unwrap());
            let x = TensorElem::basis(w.clone());
            assert_eq!(
                hoffman_log_tilde(p, &x).unwrap(),
                omega_tilde(&b, &x).unwrap()
            );
            assert_eq!(
                hoffman_exp_tilde(p, &hoffman_log_tilde(p, &x).unwrap()).unwrap(),
                x
            );
            assert_eq!(
                project_letters(&zeta_tilde(&b, &x).unwrap()),
                hoffman_exp(p, &w)
            );
        }
    }
}

/// `z_k ↦ z_{2k}` from `z1..z3` into `z1..z6` respects the brackets, so it
/// commutes with the canonical idempotent.
#[test]
fn eulerian_is_natural() {
    let (src, dst) = (positive_integers(3), positive_integers(6));
    let f = |l: u32| 2 * l + 1;
    for w in src.alphabet().words_up_to(4) {
        let image = Word(w.0.iter().map(|&l| f(l)).collect());
        assert_eq!(
            map_letters(&eulerian_idempotent(&src, &w).unwrap(), f),
            eulerian_idempotent(&dst, &image).unwrap()
        );
        assert_eq!(
            varpi(&src, &w).unwrap().map_basis(|&l| f(l)),
            varpi(&dst, &image).unwrap()
        );
    }
    assert!(varpi(&dst, &Word(vec![0])).unwrap() == LinComb::basis(0));
}
