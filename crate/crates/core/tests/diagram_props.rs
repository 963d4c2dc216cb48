mod common;

use common::{random_diagram, relabel, rng, Angles, Gen};
use deltazx::rewrite::is_isomorphic;
use deltazx::{Calculus, Diagram};
use proptest::prelude::*;

fn small() -> Gen {
    Gen { max_nodes: 4, ..Gen::zx(Angles::Quarter) }
}

/// Three random diagrams that compose in sequence.
fn chain(seed: u64) -> (Diagram, Diagram, Diagram) {
    let mut r = rng(seed);
    let a = random_diagram(&mut r, &small());
    let mut b = random_diagram(&mut r, &small());
    while b.n_inputs != a.n_outputs {
        b = random_diagram(&mut r, &small());
    }
    let mut c = random_diagram(&mut r, &small());
    while c.n_inputs != b.n_outputs {
        c = random_diagram(&mut r, &small());
    }
    (a, b, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn compositions_are_associative(seed in any::<u64>()) {
        let (a, b, c) = chain(seed);
        let left = c.compose(&b.compose(&a).unwrap()).unwrap();
        let right = c.compose(&b).unwrap().compose(&a).unwrap();
        prop_assert!(left.is_valid() && right.is_valid());
        prop_assert!(is_isomorphic(&left, &right));
        let t1 = a.tensor(&b).unwrap().tensor(&c).unwrap();
        let t2 = a.tensor(&b.tensor(&c).unwrap()).unwrap();
        prop_assert!(t1.is_valid());
        prop_assert!(is_isomorphic(&t1, &t2));
        let e = Diagram::empty(Calculus::Zx);
        prop_assert!(is_isomorphic(&a.tensor(&e).unwrap(), &a));
        prop_assert!(is_isomorphic(&e.tensor(&a).unwrap(), &a));
    }

    #[test]
    fn isomorphism_sees_through_relabelling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, &Gen::zx(Angles::Quarter));
        let e = relabel(&d, &mut r);
        prop_assert!(is_isomorphic(&d, &e));
        prop_assert!(is_isomorphic(&e, &d));
        let f = relabel(&e, &mut r);
        prop_assert!(is_isomorphic(&d, &f));
    }

    #[test]
    fn colour_swap_is_an_involution_without_triangles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, &Gen { triangles: false, ..Gen::zx(Angles::Quarter) });
        let twice = d.color_swap().unwrap().color_swap().unwrap();
        prop_assert!(is_isomorphic(&twice, &d));
    }

    #[test]
    fn transpose_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, &Gen::zx(Angles::Quarter));
        prop_assert!(d.transpose().is_valid());
        prop_assert!(is_isomorphic(&d.transpose().transpose(), &d));
    }
}

#[test]
fn colour_swap_wraps_triangles_in_hadamards() {
    let t = Diagram::triangle();
    let twice = t.color_swap().unwrap().color_swap().unwrap();
    let h = Diagram::hadamard();
    let expected = Diagram::sequence(&[h.clone(), h.clone(), t, h.clone(), h]).unwrap();
    assert!(is_isomorphic(&twice, &expected));
}
