//! Property tests for the algebraic invariants: reduction, evaluation
//! homomorphisms, root extraction, backend group axioms, and exact
//! arithmetic.

use proptest::prelude::*;

use lawbench_core::grigorchuk::{GrigLetter, GrigWord};
use lawbench_core::groups::{FreeBackend, GroupBackend, SymBackend, SymElement};
use lawbench_core::thompson::{make_a, make_b, Dyadic};
use lawbench_core::words::FreeWord;
use lawbench_core::wreath::WreathBackend;

fn letter() -> impl Strategy<Value = i32> {
    prop_oneof![Just(1), Just(-1), Just(2), Just(-2)]
}

fn raw_word(max: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(letter(), 0..max)
}

fn sym4_element() -> impl Strategy<Value = SymElement> {
    Just(()).prop_perturb(|_, mut rng| {
        let mut images: Vec<u16> = (0..4).collect();
        for i in (1..4usize).rev() {
            let j = (rng.next_u32() as usize) % (i + 1);
            images.swap(i, j);
        }
        SymElement::from_images(images)
    })
}

proptest! {
    #[test]
    fn reduce_is_idempotent(raw in raw_word(24)) {
        let once = FreeWord::from_letters(raw.iter().copied());
        let twice = FreeWord::from_letters(once.letters().iter().copied());
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.len() <= raw.len());
    }

    #[test]
    fn concat_never_exceeds_sum(a in raw_word(12), b in raw_word(12)) {
        let u = FreeWord::from_letters(a);
        let v = FreeWord::from_letters(b);
        let w = u.concat(&v);
        prop_assert!(w.len() <= u.len() + v.len());
        // and inverse is a two-sided inverse
        prop_assert!(u.concat(&u.inverse()).is_empty());
        prop_assert!(u.inverse().concat(&u).is_empty());
    }

    #[test]
    fn cyclic_reduction_recomposes(raw in raw_word(16)) {
        let w = FreeWord::from_letters(raw);
        let (conj, core) = w.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(conj.concat(&core).concat(&conj.inverse()), w);
    }

    #[test]
    fn root_reexponentiation(raw in raw_word(14)) {
        let w = FreeWord::from_letters(raw);
        if !w.is_empty() {
            let (root, e) = w.free_root().unwrap();
            prop_assert_eq!(root.pow(e as i64), w);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        a in raw_word(8), b in raw_word(8),
        g in sym4_element(), h in sym4_element(),
    ) {
        let s4 = SymBackend::new(4);
        let u = FreeWord::from_letters(a);
        let v = FreeWord::from_letters(b);
        let tuple = [g, h];
        let lhs = u.concat(&v).evaluate(&s4, &tuple);
        let rhs = s4.multiply(&u.evaluate(&s4, &tuple), &v.evaluate(&s4, &tuple));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_tuple_kills_every_word(raw in raw_word(10)) {
        let w = FreeWord::from_letters(raw);
        let s4 = SymBackend::new(4);
        let tuple = [s4.identity(), s4.identity()];
        prop_assert!(s4.is_identity(&w.evaluate(&s4, &tuple)));
    }

    #[test]
    fn grig_portrait_respects_word_arithmetic(
        a in prop::collection::vec(0..4u8, 0..10),
        b in prop::collection::vec(0..4u8, 0..10),
    ) {
        let to_word = |v: &[u8]| {
            GrigWord::normalize(v.iter().map(|&i| {
                [GrigLetter::A, GrigLetter::B, GrigLetter::C, GrigLetter::D][i as usize]
            }))
        };
        let u = to_word(&a);
        let v = to_word(&b);
        // portrait of the concatenation equals the product of portraits
        let lhs = u.concat(&v).to_portrait();
        let rhs = u.to_portrait().multiply(&v.to_portrait());
        prop_assert_eq!(lhs, rhs);
        // inversion matches
        prop_assert_eq!(u.inverse().to_portrait(), u.to_portrait().inverse());
    }

    #[test]
    fn grig_sections_recompose(raw in prop::collection::vec(0..4u8, 0..12)) {
        use lawbench_core::grigorchuk::Portrait;
        let w = GrigWord::normalize(raw.iter().map(|&i| {
            [GrigLetter::A, GrigLetter::B, GrigLetter::C, GrigLetter::D][i as usize]
        }));
        let p = w.to_portrait();
        let (act, s0, s1) = p.sections();
        prop_assert_eq!(Portrait::from_parts(act, s0, s1), p);
    }

    #[test]
    fn wreath_inverse_reverses_products(
        a in prop::collection::vec(0..3usize, 1..6),
        b in prop::collection::vec(0..3usize, 1..6),
    ) {
        let backend = WreathBackend::new(2);
        let eval = |v: &[usize]| {
            v.iter().fold(backend.identity(), |acc, &i| {
                backend.multiply(&acc, &backend.generator(i))
            })
        };
        let g = eval(&a);
        let h = eval(&b);
        let lhs = backend.invert(&backend.multiply(&g, &h));
        let rhs = backend.multiply(&backend.invert(&h), &backend.invert(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn thompson_words_compose_exactly(word in raw_word(8)) {
        // evaluate a word over {A, B} and check the inverse word inverts it
        let f = FreeWord::from_letters(word);
        let backend = lawbench_core::thompson::ThompsonBackend::new();
        let tuple = [make_a(), make_b()];
        let g = f.evaluate(&backend, &tuple);
        let ginv = f.inverse().evaluate(&backend, &tuple);
        prop_assert!(g.compose(&ginv).is_identity());
    }

    #[test]
    fn thompson_composition_associates(
        a in raw_word(5), b in raw_word(5), c in raw_word(5),
    ) {
        let backend = lawbench_core::thompson::ThompsonBackend::new();
        let tuple = [make_a(), make_b()];
        let f = FreeWord::from_letters(a).evaluate(&backend, &tuple);
        let g = FreeWord::from_letters(b).evaluate(&backend, &tuple);
        let h = FreeWord::from_letters(c).evaluate(&backend, &tuple);
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    #[test]
    fn dyadic_field_identities(
        a in -2000i128..2000, ea in 0u32..8,
        b in -2000i128..2000, eb in 0u32..8,
        c in -2000i128..2000, ec in 0u32..8,
    ) {
        let x = Dyadic::new(a, ea);
        let y = Dyadic::new(b, eb);
        let z = Dyadic::new(c, ec);
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn free_backend_matches_word_arithmetic(a in raw_word(10), b in raw_word(10)) {
        let f2 = FreeBackend::new(2);
        let u = FreeWord::from_letters(a);
        let v = FreeWord::from_letters(b);
        prop_assert_eq!(f2.multiply(&u, &v), u.concat(&v));
        prop_assert!(f2.is_identity(&f2.multiply(&u, &f2.invert(&u))));
    }
}
