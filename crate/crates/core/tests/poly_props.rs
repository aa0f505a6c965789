use galois_core::ff::{make_field, Elem, Field};
use galois_core::poly::{bi_factor, resultant_y, uni_factor, BiPoly, UniPoly};
use proptest::prelude::*;

fn field(p: u64, k: usize) -> Field {
    make_field(p, k, 0).unwrap()
}

fn bipoly(f: &Field, dt: u32, dy: u32, coeffs: &[u64]) -> BiPoly {
    let mut it = coeffs.iter().cycle();
    let mut terms = Vec::new();
    for i in 0..=dt {
        for j in 0..=dy {
            let c = *it.next().unwrap();
            terms.push((i, j, f.from_i64((c % f.characteristic()) as i64)));
        }
    }
    BiPoly::from_terms(f, terms)
}

fn uni(f: &Field, coeffs: &[u64]) -> UniPoly {
    UniPoly::from_raw(
        f,
        coeffs
            .iter()
            .map(|&c| f.from_i64((c % f.characteristic()) as i64))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bifactor_reconstructs(p in prop::sample::select(vec![2u64, 3, 5, 7]),
                             d1 in (0u32..4, 1u32..4), d2 in (0u32..3, 0u32..3),
                             c in prop::collection::vec(0u64..7, 32)) {
        let f = field(p, 1);
        let a = bipoly(&f, d1.0, d1.1, &c);
        let b = bipoly(&f, d2.0, d2.1, &c[7..]);
        let g = a.mul(&b).mul(&a);
        prop_assume!(!g.is_constant());
        let fl = bi_factor(&g, 1).unwrap();
        prop_assert_eq!(fl.product(&f), g.clone());
        // every factor is irreducible at a specialization or divides
        // consistently: the specialized factors refine uni_factor
        for t0 in f.elements() {
            let u = g.eval_t(t0);
            if u.degree() != Some(g.deg_y()) || u.is_constant() {
                continue;
            }
            let pieces: usize = fl.factors.iter()
                .filter(|(h, _)| h.deg_y() > 0)
                .map(|(h, m)| uni_factor(&h.eval_t(t0), 0).unwrap().count_with_multiplicity() * *m as usize)
                .sum();
            prop_assert_eq!(pieces, uni_factor(&u, 0).unwrap().count_with_multiplicity());
        }
    }

    #[test]
    fn uni_factor_reconstructs_and_is_irreducible(p in prop::sample::select(vec![2u64, 3, 5]),
                                                  k in 1usize..3,
                                                  c in prop::collection::vec(0u64..5, 2..14)) {
        let f = field(p, k);
        let u = uni(&f, &c);
        prop_assume!(!u.is_constant());
        let fl = uni_factor(&u, 3).unwrap();
        prop_assert_eq!(fl.product(&f), u);
        for (g, _) in &fl.factors {
            prop_assert!(g.is_monic() && g.is_irreducible());
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_root(p in prop::sample::select(vec![3u64, 5]),
                                          c in prop::collection::vec(0u64..5, 24)) {
        let f = field(p, 1);
        let a = bipoly(&f, 2, 2, &c);
        let b = bipoly(&f, 1, 2, &c[9..]);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let r = resultant_y(&a, &b).unwrap();
        for t0 in f.elements() {
            let (x, y) = (a.eval_t(t0), b.eval_t(t0));
            let expect = !x.gcd(&y).is_constant()
                || (x.degree() != Some(a.deg_y()) && y.degree() != Some(b.deg_y()));
            prop_assert_eq!(r.eval(t0).is_zero(), expect);
        }
    }

    #[test]
    fn frobenius_is_additive_and_group_order_holds(p in prop::sample::select(vec![2u64, 3, 5, 7]),
                                                   k in 1usize..5,
                                                   a in prop::collection::vec(0u64..7, 5),
                                                   b in prop::collection::vec(0u64..7, 5)) {
        let f = field(p, k);
        let mk = |v: &[u64]| f.from_coords(&v[..k].iter().map(|x| x % p).collect::<Vec<_>>()).unwrap();
        let (x, y) = (mk(&a), mk(&b));
        prop_assert_eq!(f.frobenius(f.add(x, y), 1), f.add(f.frobenius(x, 1), f.frobenius(y, 1)));
        if !x.is_zero() {
            prop_assert_eq!(f.pow(x, f.order() as u128 - 1), Elem::ONE);
        }
        for d in 1..=k {
            if k % d == 0 {
                prop_assert_eq!(f.in_subfield(x, d).unwrap(), f.frobenius(x, d) == x);
            }
        }
    }

    #[test]
    fn embedding_commutes_with_arithmetic(p in prop::sample::select(vec![2u64, 3, 5]),
                                          a in prop::collection::vec(0u64..5, 2),
                                          b in prop::collection::vec(0u64..5, 2)) {
        let small = field(p, 2);
        let big = field(p, 6);
        let e = galois_core::ff::embedding(&small, &big).unwrap();
        let mk = |v: &[u64]| small.from_coords(&v.iter().map(|x| x % p).collect::<Vec<_>>()).unwrap();
        let (x, y) = (mk(&a), mk(&b));
        prop_assert_eq!(e.apply(small.mul(x, y)), big.mul(e.apply(x), e.apply(y)));
        prop_assert_eq!(e.apply(small.add(x, y)), big.add(e.apply(x), e.apply(y)));
        prop_assert_eq!(e.apply(small.frobenius(x, 1)), big.frobenius(e.apply(x), 1));
        prop_assert!(big.in_subfield(e.apply(x), 2).unwrap());
        prop_assert_eq!(e.restrict(e.apply(x)), Some(x));
    }
}
