use std::sync::Arc;

use num_bigint::BigInt;
use pcml_core::equivalence::{positive_integer_roots, PhiHom};
use pcml_core::oracle::{ideal_member, FreeElement};
use pcml_core::{Algebra, GeneratorOrder, Graph, LieElement};
use proptest::prelude::*;

fn element(alg: &Arc<Algebra>, terms: &[(Vec<usize>, i64)]) -> LieElement {
    let n = alg.generator_count();
    let mut e = LieElement::zero(alg);
    for (letters, c) in terms {
        let letters: Vec<usize> = letters.iter().map(|v| v % n).collect();
        e.add_assign(&LieElement::left_normed(alg, &letters).unwrap().scale(&BigInt::from(*c)));
    }
    e
}

fn terms() -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..8, 1..=4), -3i64..=3), 0..=4)
}

fn graph() -> impl Strategy<Value = Graph> {
    (3usize..=5, any::<u16>()).prop_map(|(n, mask)| {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> k & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::new(n, &edges).unwrap()
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(g in graph(), t in terms()) {
        let alg = Algebra::new(g);
        let e = element(&alg, &t);
        let back = alg.parse_element(&e.to_string()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn bracket_is_anticommutative_and_bilinear(g in graph(), a in terms(), b in terms(), c in terms()) {
        let alg = Algebra::new(g);
        let (a, b, c) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        prop_assert_eq!(a.bracket(&b).unwrap(), -&b.bracket(&a).unwrap());
        let left = a.checked_add(&b).unwrap().bracket(&c).unwrap();
        let right = a.bracket(&c).unwrap().checked_add(&b.bracket(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reexpression_round_trips(g in graph(), t in terms(), rot in 0usize..5) {
        let n = g.vertex_count();
        let ascending = Algebra::new(g.clone());
        let mut seq: Vec<usize> = (0..n).collect();
        seq.rotate_left(rot % n);
        let other = Algebra::with_order(g, GeneratorOrder::from_sequence(seq).unwrap()).unwrap();
        let e = element(&ascending, &t);
        let moved = e.reexpress(&other).unwrap();
        prop_assert_eq!(moved.is_zero(), e.is_zero());
        prop_assert_eq!(moved.reexpress(&ascending).unwrap(), e);
    }

    #[test]
    fn normal_form_zero_matches_oracle(g in graph(), t in terms()) {
        let n = g.vertex_count();
        let alg = Algebra::new(g.clone());
        let exprs: Vec<_> = t.iter().map(|(l, c)| {
            let l: Vec<usize> = l.iter().map(|v| v % n).collect();
            pcml_core::RawExpr::scale(*c, pcml_core::RawExpr::left_normed(&l))
        }).collect();
        let expr = pcml_core::RawExpr::sum(exprs);
        let engine = alg.normal_form(&expr).unwrap().is_zero();
        prop_assert_eq!(engine, ideal_member(&FreeElement::from_expr(n, &expr), &g));
    }

    #[test]
    fn planted_roots_are_found(r1 in 1i64..30, r2 in 1i64..30, c in 1i64..5, shift in 0usize..3) {
        // c * λ^shift * (λ - r1) * (λ - r2)
        let mut coeffs = vec![BigInt::from(0); shift];
        coeffs.extend([BigInt::from(c * r1 * r2), BigInt::from(-c * (r1 + r2)), BigInt::from(c)]);
        let roots = positive_integer_roots(&coeffs);
        prop_assert!(roots.contains(&BigInt::from(r1)));
        prop_assert!(roots.contains(&BigInt::from(r2)));
        prop_assert!(roots.len() <= 2);
    }

    #[test]
    fn merging_map_is_a_homomorphism(a in terms(), b in terms(), lambda in 1u32..6) {
        let g = Graph::new(5, &[(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (2, 4)]).unwrap();
        let h = PhiHom::new(&g, 3, 2, BigInt::from(lambda)).unwrap();
        let (a, b) = (element(h.source(), &a), element(h.source(), &b));
        let image = h.apply(&a.bracket(&b).unwrap()).unwrap();
        prop_assert_eq!(image, h.apply(&a).unwrap().bracket(&h.apply(&b).unwrap()).unwrap());
        prop_assert_eq!(h.apply(&a).unwrap(), h.apply_by_components(&a).unwrap());
    }
}

proptest! {
    #[test]
    fn theta_ignores_nonzero_scaling(js in prop::collection::vec(0usize..6, 6), k in 0usize..6, c in 1i64..4, neg in any::<bool>()) {
        use pcml_core::equivalence::{eval_theta, ThetaInstance};
        let alg = Algebra::new(Graph::cycle(6).unwrap());
        let inst = ThetaInstance::new(&alg, 6).unwrap();
        let mut vals: Vec<LieElement> = js.iter().map(|&j| LieElement::generator(&alg, j).unwrap()).collect();
        let before = eval_theta(&inst, &vals).unwrap().holds;
        vals[k] = vals[k].scale(&BigInt::from(if neg { -c } else { c }));
        prop_assert_eq!(eval_theta(&inst, &vals).unwrap().holds, before);
    }
}
