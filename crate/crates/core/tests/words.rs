use binfty_core::words::{
    cofree_lift, deconcat, deconcat_lin, inverse_structure_endo, reduced_coproduct_iter, shuffle,
    structure_endo, Alphabet, Letter, ProjectionTable, TensorElem, Word,
};
use binfty_core::{LinComb, Scalar};
use proptest::prelude::*;

fn arb_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u32..3, 0..=max).prop_map(Word)
}

fn arb_elem(max: usize) -> impl Strategy<Value = TensorElem> {
    prop::collection::vec((arb_word(max), -3i64..=3), 1..5).prop_map(|ts| {
        TensorElem::from_terms(ts.into_iter().map(|(w, c)| (w, Scalar::from_int(c))))
    })
}

fn arb_letters() -> impl Strategy<Value = LinComb<Letter>> {
    prop::collection::vec((0u32..3, -2i64..=2), 0..3)
        .prop_map(|ts| LinComb::from_terms(ts.into_iter().map(|(l, c)| (l, Scalar::from_int(c)))))
}

/// Values on every word of length 2 or 3 over three letters.
fn arb_table() -> impl Strategy<Value = ProjectionTable> {
    let al = Alphabet::parse("a,b,c").unwrap();
    let words: Vec<Word> = (2..=3).flat_map(|n| al.words_of_length(n)).collect();
    prop::collection::vec(arb_letters(), words.len()).prop_map(move |vals| {
        let mut t = ProjectionTable::canonical();
        for (w, v) in words.iter().zip(vals) {
            t.insert(w.clone(), v);
        }
        t
    })
}

fn triple_left(x: &TensorElem) -> LinComb<(Word, Word, Word)> {
    let mut out = LinComb::zero();
    for ((u, v), c) in &deconcat_lin(x) {
        for ((a, b), d) in &deconcat(u) {
            out.add_term((a.clone(), b.clone(), v.clone()), c * d);
        }
    }
    out
}

fn triple_right(x: &TensorElem) -> LinComb<(Word, Word, Word)> {
    let mut out = LinComb::zero();
    for ((u, v), c) in &deconcat_lin(x) {
        for ((a, b), d) in &deconcat(v) {
            out.add_term((u.clone(), a.clone(), b.clone()), c * d);
        }
    }
    out
}

proptest! {
    #[test]
    fn deconcat_is_coassociative(x in arb_elem(5)) {
        prop_assert_eq!(triple_left(&x), triple_right(&x));
    }

    #[test]
    fn structure_endo_round_trips(t in arb_table(), x in arb_elem(4)) {
        let y = structure_endo(&t, &x).unwrap();
        prop_assert_eq!(inverse_structure_endo(&t, &y).unwrap(), x.clone());
        prop_assert_eq!(structure_endo(&t, &inverse_structure_endo(&t, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn cofree_lift_is_a_coalgebra_map(t in arb_table(), w in arb_word(4)) {
        let x = TensorElem::basis(w.clone());
        let lhs = deconcat_lin(&cofree_lift(&t, &x).unwrap());
        let mut rhs = LinComb::zero();
        for ((u, v), c) in &deconcat(&w) {
            let fu = cofree_lift(&t, &TensorElem::basis(u.clone())).unwrap();
            let fv = cofree_lift(&t, &TensorElem::basis(v.clone())).unwrap();
            rhs.add_scaled(&fu.tensor(&fv), c);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shuffle_is_commutative_and_associative(a in arb_word(3), b in arb_word(3), c in arb_word(2)) {
        prop_assert_eq!(shuffle(&a, &b), shuffle(&b, &a));
        let ab_c = shuffle(&a, &b).apply(|u| shuffle(u, &c));
        let a_bc = shuffle(&b, &c).apply(|u| shuffle(&a, u));
        prop_assert_eq!(ab_c, a_bc);
        let total: Scalar = shuffle(&a, &b).iter().map(|(_, k)| k.clone()).sum();
        let n = (a.len() + b.len()) as i64;
        let binom = (1..=a.len() as i64).fold(1i64, |acc, i| acc * (n - a.len() as i64 + i) / i);
        prop_assert_eq!(total, Scalar::from_int(binom));
    }
}

#[test]
fn words_are_ordered_by_length_then_lex() {
    let al = Alphabet::parse("a,b").unwrap();
    let ws = al.words_up_to(2);
    let names: Vec<String> = ws.iter().map(|w| al.fmt_word(w)).collect();
    assert_eq!(names, ["a", "b", "a.a", "a.b", "b.a", "b.b"]);
    let mut sorted = ws.clone();
    sorted.push(Word::empty());
    sorted.sort();
    assert_eq!(sorted[0], Word::empty());
    assert_eq!(sorted[1..], ws[..]);
}

#[test]
fn iterated_reduced_coproducts_recurse() {
    let al = Alphabet::parse("a,b,c").unwrap();
    for w in al.words_up_to(6) {
        let x = TensorElem::basis(w);
        assert_eq!(triple_left(&x), triple_right(&x));
        for k in 1..=4 {
            let mut expect: LinComb<Vec<Word>> = LinComb::zero();
            for (parts, c) in &reduced_coproduct_iter(&x, k).unwrap() {
                for ((u, v), d) in &deconcat(&parts[0]) {
                    if u.is_empty() || v.is_empty() {
                        continue;
                    }
                    let mut next = vec![u.clone(), v.clone()];
                    next.extend_from_slice(&parts[1..]);
                    expect.add_term(next, c * d);
                }
            }
            assert_eq!(reduced_coproduct_iter(&x, k + 1).unwrap(), expect);
        }
    }
}
