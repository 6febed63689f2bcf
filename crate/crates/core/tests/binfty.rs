use binfty_core::binfty::fixtures::{cyclic_group, flalg, positive_integers, random_explicit};
use binfty_core::binfty::{BInftyStructure, Mode};
use binfty_core::words::{Alphabet, TensorElem, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<BInftyStructure> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut v = vec![
        BInftyStructure::shuffle(Alphabet::parse("a,b").unwrap()),
        cyclic_group(3),
        positive_integers(4),
        flalg(),
    ];
    for _ in 0..3 {
        v.push(random_explicit(|| rng.gen_range(-2..=2), 4));
    }
    v
}

fn pairs(b: &BInftyStructure, total: usize) -> Vec<(Word, Word)> {
    let mut ws = b.alphabet().words_up_to(total);
    ws.insert(0, Word::empty());
    let mut out = Vec::new();
    for u in &ws {
        for v in &ws {
            if u.len() + v.len() <= total {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

#[test]
fn product_matches_surjection_oracle() {
    for b in corpus() {
        for (u, v) in pairs(&b, 4) {
            assert_eq!(
                b.product_words(&u, &v).unwrap(),
                b.surjection_product_oracle(&u, &v).unwrap(),
                "{b:?} on {u:?}, {v:?}"
            );
        }
    }
}

#[test]
fn quasi_shuffle_matches_recursion() {
    for b in [cyclic_group(3), positive_integers(4)] {
        assert!(matches!(b.mode(), Mode::QuasiShuffle(_)));
        for (u, v) in pairs(&b, 5) {
            assert_eq!(
                b.product_words(&u, &v).unwrap(),
                b.quasi_shuffle_recursive(&u, &v).unwrap()
            );
        }
    }
}

#[test]
fn products_are_associative_and_unital() {
    for b in corpus() {
        let comm = b.check_axioms(4).unwrap().comm;
        let ws = b.alphabet().words_up_to(2);
        for u in &ws {
            let x = TensorElem::basis(u.clone());
            assert_eq!(b.product(&TensorElem::basis(Word::empty()), &x).unwrap(), x);
            for v in &ws {
                let y = TensorElem::basis(v.clone());
                let xy = b.product(&x, &y).unwrap();
                if comm {
                    assert_eq!(xy, b.product(&y, &x).unwrap(), "{b:?}");
                }
                for w in ws.iter().filter(|w| u.len() + v.len() + w.len() <= 4) {
                    let z = TensorElem::basis(w.clone());
                    assert_eq!(
                        b.product(&xy, &z).unwrap(),
                        b.product(&x, &b.product(&y, &z).unwrap()).unwrap(),
                        "{b:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn table_text_reparses() {
    for b in corpus() {
        let back = BInftyStructure::parse_table(&b.to_table_text()).unwrap();
        assert_eq!(back.mode(), b.mode());
    }
}
