//! Property tests for the order axioms, the ring axioms, canonical printing
//! and the Groebner/ideal-calculus invariants.

mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use nilfilt::{
    cmp_monomials, normal_form, subquotient_dim, Field, Ideal, Limits, Monomial, MonomialOrder,
    Polynomial, Ring, Scalar,
};
use proptest::prelude::*;

fn monomial_strategy(arity: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_deg, arity).prop_map(Monomial)
}

fn order_strategy(arity: usize) -> impl Strategy<Value = MonomialOrder> {
    let base = prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::DegRevLex)];
    if arity < 2 {
        return base.boxed();
    }
    let block = (1..arity, any::<bool>(), any::<bool>()).prop_map(|(split, o, i)| {
        let pick = |b: bool| {
            Box::new(if b {
                MonomialOrder::Lex
            } else {
                MonomialOrder::DegRevLex
            })
        };
        MonomialOrder::Block {
            split,
            outer: pick(o),
            inner: pick(i),
        }
    });
    prop_oneof![base, block].boxed()
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Field::Rationals.ratio(n, d).unwrap())
}

fn poly_strategy(
    ring: Arc<Ring>,
    max_terms: usize,
    max_deg: u32,
) -> impl Strategy<Value = Polynomial> {
    let arity = ring.arity();
    prop::collection::vec(
        (monomial_strategy(arity, max_deg), scalar_strategy()),
        0..=max_terms,
    )
    .prop_map(move |terms| Polynomial::from_terms(&ring, terms))
}

fn ring3() -> Arc<Ring> {
    Ring::rational(&["x", "y", "z"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    // totality, antisymmetry, multiplicativity and 1-minimality
    #[test]
    fn order_axioms(
        arity in 1usize..=5,
        seed in prop::collection::vec(0u32..=8, 15),
        flip in any::<bool>(),
    ) {
        let a = Monomial(seed[0..arity].to_vec());
        let b = Monomial(seed[5..5 + arity].to_vec());
        let c = Monomial(seed[10..10 + arity].to_vec());
        let order = if flip { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let cmp = |x: &Monomial, y: &Monomial| cmp_monomials(x, y, &order).unwrap();

        prop_assert_eq!(cmp(&a, &b), cmp(&b, &a).reverse());
        prop_assert_eq!(cmp(&a, &a), Ordering::Equal);
        if cmp(&a, &b) == Ordering::Equal {
            prop_assert_eq!(&a, &b);
        }
        // multiplicative: a > b implies ac > bc
        prop_assert_eq!(cmp(&a.mul(&c), &b.mul(&c)), cmp(&a, &b));
        // 1 is minimal
        let one = Monomial::one(arity);
        if !a.is_one() {
            prop_assert_eq!(cmp(&a, &one), Ordering::Greater);
        }
    }

    #[test]
    fn block_order_axioms(
        seed in prop::collection::vec(0u32..=6, 12),
        order in order_strategy(4),
    ) {
        let a = Monomial(seed[0..4].to_vec());
        let b = Monomial(seed[4..8].to_vec());
        let c = Monomial(seed[8..12].to_vec());
        let cmp = |x: &Monomial, y: &Monomial| cmp_monomials(x, y, &order).unwrap();
        prop_assert_eq!(cmp(&a, &b), cmp(&b, &a).reverse());
        prop_assert_eq!(cmp(&a.mul(&c), &b.mul(&c)), cmp(&a, &b));
        if !a.is_one() {
            prop_assert_eq!(cmp(&a, &Monomial::one(4)), Ordering::Greater);
        }
    }

    #[test]
    fn polynomial_ring_axioms(
        fs in (poly_strategy(ring3(), 4, 4), poly_strategy(ring3(), 4, 4), poly_strategy(ring3(), 4, 4)),
    ) {
        let (f, g, h) = fs;
        let left = f.add(&g).unwrap().add(&h).unwrap();
        let right = f.add(&g.add(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
        let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let assoc_l = f.mul(&g).unwrap().mul(&h).unwrap();
        let assoc_r = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
    }

    #[test]
    fn print_parse_identity(f in poly_strategy(ring3(), 5, 5)) {
        let printed = f.to_string();
        let back = Polynomial::parse(f.ring(), &printed).unwrap();
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_reduce_to_zero(
        gens in prop::collection::vec(poly_strategy(ring3(), 3, 4), 1..=4),
    ) {
        let ring = ring3();
        let ideal = Ideal::new(&ring, gens.clone()).unwrap();
        for g in &gens {
            prop_assert!(ideal.is_member(g).unwrap());
        }
        // idempotence: the basis of the basis is the basis
        let again = Ideal::new(&ring, ideal.gb().elements().to_vec()).unwrap();
        prop_assert_eq!(ideal.gb(), again.gb());
    }

    #[test]
    fn normal_form_soundness(
        gens in prop::collection::vec(poly_strategy(ring3(), 3, 3), 1..=3),
        f in poly_strategy(ring3(), 4, 5),
    ) {
        let ring = ring3();
        let ideal = Ideal::new(&ring, gens).unwrap();
        let nf = ideal.gb().normal_form(&f).unwrap();
        let diff = f.sub(&nf).unwrap();
        prop_assert!(ideal.is_member(&diff).unwrap());
        // no term of the normal form is reducible
        let leads = ideal.leading_monomials();
        for (m, _) in nf.terms() {
            prop_assert!(!leads.iter().any(|l| l.divides(m)));
        }
        // full reduction is idempotent
        let nf2 = normal_form(&nf, ideal.gb().elements()).unwrap();
        prop_assert_eq!(nf2, nf);
    }

    #[test]
    fn colon_galois_properties(
        a_gens in prop::collection::vec(poly_strategy(ring3(), 2, 3), 1..=3),
        b_gens in prop::collection::vec(poly_strategy(ring3(), 2, 2), 1..=2),
    ) {
        let ring = ring3();
        let a = Ideal::new(&ring, a_gens).unwrap();
        let b = Ideal::new(&ring, b_gens).unwrap();
        prop_assume!(!b.is_zero());
        let lim = Limits::default();

        let quot = a.colon(&b).unwrap();
        prop_assert!(quot.contains(&a).unwrap());
        prop_assert!(a.contains(&quot.product(&b).unwrap()).unwrap());

        let meet = a.intersect(&b).unwrap();
        prop_assert!(a.contains(&meet).unwrap());
        prop_assert!(b.contains(&meet).unwrap());

        let sat = a.saturate(&b, &lim).unwrap();
        prop_assert!(sat.contains(&a).unwrap());
    }

    #[test]
    fn power_additivity(
        gens in prop::collection::vec(poly_strategy(ring3(), 2, 2), 1..=2),
        a in 0u32..=3,
        b in 0u32..=3,
    ) {
        let ring = ring3();
        let i = Ideal::new(&ring, gens).unwrap();
        let lhs = i.power(a).unwrap().product(&i.power(b).unwrap()).unwrap();
        let rhs = i.power(a + b).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // zero-dimensional inclusion–exclusion for monomial ideals
    #[test]
    fn dimension_inclusion_exclusion(
        a_extra in prop::collection::vec(prop::collection::vec(0u32..=4, 3), 0..=3),
        b_extra in prop::collection::vec(prop::collection::vec(0u32..=4, 3), 0..=3),
        bounds in prop::collection::vec(1u32..=4, 6),
    ) {
        let ring = ring3();
        let pure = |k: usize, e: u32| {
            let mut v = vec![0u32; 3];
            v[k] = e;
            v
        };
        let build = |extra: &[Vec<u32>], offs: usize| {
            let mut gens: Vec<Polynomial> = (0..3)
                .map(|k| {
                    Polynomial::term(&ring, Monomial(pure(k, bounds[offs + k])), ring.field().one())
                })
                .collect();
            for e in extra {
                if e.iter().any(|&x| x > 0) {
                    gens.push(Polynomial::term(&ring, Monomial(e.clone()), ring.field().one()));
                }
            }
            Ideal::new(&ring, gens).unwrap()
        };
        let a = build(&a_extra, 0);
        let b = build(&b_extra, 3);
        let lhs = a.intersect(&b).unwrap().quotient_dim().unwrap()
            + a.sum(&b).unwrap().quotient_dim().unwrap();
        let rhs = a.quotient_dim().unwrap() + b.quotient_dim().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // dim A/B is additive along B ⊆ mid ⊆ A
    #[test]
    fn subquotient_additivity(
        bounds in prop::collection::vec(2u32..=4, 3),
        extra in prop::collection::vec(0u32..=3, 3),
    ) {
        let ring = ring3();
        let mk = |exps: Vec<Vec<u32>>| {
            let gens = exps
                .into_iter()
                .map(|e| Polynomial::term(&ring, Monomial(e), ring.field().one()))
                .collect();
            Ideal::new(&ring, gens).unwrap()
        };
        let small = mk(vec![
            vec![bounds[0] + extra[0], 0, 0],
            vec![0, bounds[1] + extra[1], 0],
            vec![0, 0, bounds[2] + extra[2]],
        ]);
        let mid = mk(vec![
            vec![bounds[0], 0, 0],
            vec![0, bounds[1] + extra[1], 0],
            vec![0, 0, bounds[2]],
        ]);
        let big = mk(vec![vec![bounds[0], 0, 0], vec![0, bounds[1], 0], vec![0, 0, bounds[2]]]);
        prop_assert_eq!(
            subquotient_dim(&big, &small).unwrap(),
            subquotient_dim(&big, &mid).unwrap() + subquotient_dim(&mid, &small).unwrap()
        );
    }
}
