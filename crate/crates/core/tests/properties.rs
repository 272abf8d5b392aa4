use proptest::prelude::*;

use htlab::catalog::template::{env_n, evaluate};
use htlab::hassett::point_test;
use htlab::invariants::{pencil_signature, squaring_pencil, substitute_ideal, verify_substitution_isomorphism};
use htlab::linalg::{nullspace, rank, Matrix};
use htlab::localalgebra::validate_hs_shape;
use htlab::rational::int;
use htlab::transitivity::{complement_orbit_rank, derivation_space};
use htlab::{build_algebra, default_hpair, hypersurface_equation, parse_polynomial, Ideal, Polynomial, Ring};

fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec((-4i64..=4, 0u32..4, 0u32..4), 0..5).prop_map(|terms| {
        let parts: Vec<String> = terms
            .iter()
            .map(|(c, a, b)| format!("({c})*x^{}*y^{}", a + 1, b + 1))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    })
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(int), c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_laws(p in poly_text(), q in poly_text(), r in poly_text()) {
        let ring = Ring::vars_only(&["x", "y"]);
        let p = parse_polynomial(&p, &ring).unwrap();
        let q = parse_polynomial(&q, &ring).unwrap();
        let r = parse_polynomial(&r, &ring).unwrap();
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(parse_polynomial(&p.to_string(), &ring).unwrap(), p);
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let cols = m[0].len();
        let kernel = nullspace(&m, cols);
        prop_assert_eq!(rank(&m) + kernel.len(), cols);
        for v in &kernel {
            for row in &m {
                let dot = row.iter().zip(v).fold(int(0), |acc, (a, b)| acc + a * b);
                prop_assert_eq!(dot, int(0));
            }
        }
    }

    #[test]
    fn monomial_quotients_are_associative(a in 1u32..6, b in 1u32..6, c in 0u32..4, d in 0u32..4) {
        let ring = Ring::vars_only(&["x", "y"]);
        let text = format!("x^{a}, y^{b}, x^{}*y^{}", c + 1, d + 1);
        let alg = build_algebra(&Ideal::parse(&ring, &text).unwrap()).unwrap();
        alg.check_structure().unwrap();
        let hs = alg.hilbert_samuel();
        prop_assert_eq!(hs.iter().sum::<usize>(), alg.dim());
        // in two variables r_k <= k forces a non-increasing tail
        let shape = validate_hs_shape(&hs);
        prop_assert!(shape.violations.is_empty(), "{:?} {:?}", hs, shape);
    }

    #[test]
    fn equations_vanish_on_orbits(k in 2u32..7, seed in 0u64..1000) {
        let ring = Ring::vars_only(&["x", "y"]);
        let i = Ideal::parse(&ring, &format!("xy, y^2 - x^{k}")).unwrap();
        let a = build_algebra(&i).unwrap();
        let h = default_hpair(&a).unwrap();
        let f = hypersurface_equation(&h);
        prop_assert_eq!(point_test(&h, &f, 20, seed).failures, 0);
        prop_assert_eq!(f.degree(), k as usize);
    }

    #[test]
    fn restricted_derivations_form_a_nilpotent_subalgebra(k in 3u32..8) {
        let ring = Ring::vars_only(&["x", "y"]);
        let i = Ideal::parse(&ring, &format!("y^2 - xy - x^{k}, x^2*y")).unwrap();
        let a = build_algebra(&i).unwrap();
        let space = derivation_space(&a, true).unwrap();
        prop_assert!(space.all_nilpotent());
        prop_assert!(space.is_closed_under_commutator());
        let r = complement_orbit_rank(&a).unwrap();
        prop_assert!(r.transitive);
    }

    #[test]
    fn invertible_substitutions_preserve_invariants(
        m in prop::collection::vec(-2i64..=2, 9).prop_filter("invertible", |m| {
            let m: Matrix = m.chunks(3).map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            rank(&m) == 3
        }),
    ) {
        let ring = Ring::vars_only(&["x", "y", "z"]);
        let i = Ideal::parse(&ring, "xy, xz, yz, y^3 - x^3, z^2 - x^3").unwrap();
        let vars = ["x", "y", "z"];
        let images: Vec<Polynomial> = m
            .chunks(3)
            .map(|c| {
                let lin: Vec<String> = c.iter().zip(vars).map(|(c, v)| format!("({c})*{v}")).collect();
                parse_polynomial(&lin.join(" + "), &ring).unwrap()
            })
            .collect();
        let j = substitute_ideal(&i, &images).unwrap();
        prop_assert!(verify_substitution_isomorphism(&i, &images, &j).unwrap());
        let si = pencil_signature(&squaring_pencil(&build_algebra(&i).unwrap()).unwrap());
        let sj = pencil_signature(&squaring_pencil(&build_algebra(&j).unwrap()).unwrap());
        prop_assert_eq!(si.zero_locus_dim, sj.zero_locus_dim);
        prop_assert_eq!(si.generic_rank, sj.generic_rank);
        prop_assert_eq!(si.squarefree_degrees, sj.squarefree_degrees);
    }

    #[test]
    fn template_arithmetic(n in 0i64..40, a in -20i64..20) {
        let mut env = env_n(n as u32);
        env.insert("a".into(), a);
        prop_assert_eq!(evaluate("n + a*(n - 1)", &env).unwrap(), n + a * (n - 1));
        prop_assert_eq!(evaluate("C(n, 2)", &env).unwrap(), n * (n - 1) / 2);
    }
}
