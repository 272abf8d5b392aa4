//! Expected values computed independently with a computer algebra system
//! (reduced Gröbner bases under the same order, quotient dimensions and
//! the log-expansion hypersurface equations on explicit monomial bases).

use std::sync::Arc;

use htlab::hassett::HPair;
use htlab::{build_algebra, buchberger, hypersurface_equation, parse_polynomial, HomogeneousForm};
use htlab::{Ideal, Monomial, Polynomial, Rational, Ring};
use num_traits::One;

struct Case {
    vars: &'static str,
    ideal: &'static str,
    dim: usize,
    degree: usize,
    basis: &'static [&'static [u32]],
    equation: &'static str,
    groebner: &'static [&'static str],
}

const CASES: &[Case] = &[
    Case {
        vars: "x",
        ideal: "x^3",
        dim: 3,
        degree: 2,
        basis: &[&[1], &[2]],
        equation: "(1)*z0*z2 + (-1/2)*z1^2",
        groebner: &["(1)*x^3"],
    },
    Case {
        vars: "x",
        ideal: "x^4",
        dim: 4,
        degree: 3,
        basis: &[&[1], &[2], &[3]],
        equation: "(1)*z0^2*z3 + (-1)*z0*z1*z2 + (1/3)*z1^3",
        groebner: &["(1)*x^4"],
    },
    Case {
        vars: "x",
        ideal: "x^5",
        dim: 5,
        degree: 4,
        basis: &[&[1], &[2], &[3], &[4]],
        equation: "(1)*z0^3*z4 + (-1)*z0^2*z1*z3 + (-1/2)*z0^2*z2^2 + (1)*z0*z1^2*z2 + (-1/4)*z1^4",
        groebner: &["(1)*x^5"],
    },
    Case {
        vars: "x",
        ideal: "x^6",
        dim: 6,
        degree: 5,
        basis: &[&[1], &[2], &[3], &[4], &[5]],
        equation: "(1)*z0^4*z5 + (-1)*z0^3*z1*z4 + (-1)*z0^3*z2*z3 + (1)*z0^2*z1^2*z3 + (1)*z0^2*z1*z2^2 + (-1)*z0*z1^3*z2 + (1/5)*z1^5",
        groebner: &["(1)*x^6"],
    },
    Case {
        vars: "x",
        ideal: "x^7",
        dim: 7,
        degree: 6,
        basis: &[&[1], &[2], &[3], &[4], &[5], &[6]],
        equation: "(1)*z0^5*z6 + (-1)*z0^4*z1*z5 + (-1)*z0^4*z2*z4 + (-1/2)*z0^4*z3^2 + (1)*z0^3*z1^2*z4 + (2)*z0^3*z1*z2*z3 + (1/3)*z0^3*z2^3 + (-1)*z0^2*z1^3*z3 + (-3/2)*z0^2*z1^2*z2^2 + (1)*z0*z1^4*z2 + (-1/6)*z1^6",
        groebner: &["(1)*x^7"],
    },
    Case {
        vars: "x,y",
        ideal: "xy, y^2 - x^3",
        dim: 5,
        degree: 3,
        basis: &[&[1,0], &[0,1], &[2,0], &[0,2]],
        equation: "(1)*z0^2*z4 + (-1)*z0*z1*z3 + (-1/2)*z0*z2^2 + (1/3)*z1^3",
        groebner: &["(1)*y^3", "(1)*x^3 + (-1)*y^2", "(1)*x*y"],
    },
    Case {
        vars: "x,y",
        ideal: "xy, y^2 - x^4",
        dim: 6,
        degree: 4,
        basis: &[&[1,0], &[0,1], &[2,0], &[3,0], &[0,2]],
        equation: "(1)*z0^3*z5 + (-1)*z0^2*z1*z4 + (-1/2)*z0^2*z2^2 + (-1/2)*z0^2*z3^2 + (1)*z0*z1^2*z3 + (-1/4)*z1^4",
        groebner: &["(1)*x^4 + (-1)*y^2", "(1)*y^3", "(1)*x*y"],
    },
    Case {
        vars: "x,y",
        ideal: "y^2 - xy - x^3, x^2*y",
        dim: 7,
        degree: 4,
        basis: &[&[1,0], &[0,1], &[2,0], &[1,1], &[0,2], &[1,2]],
        equation: "(1)*z0^3*z6 + (-1)*z0^2*z1*z5 + (-1)*z0^2*z2*z4 + (-1)*z0^2*z2*z5 + (-1/2)*z0^2*z3^2 + (1)*z0*z1^2*z3 + (1)*z0*z1*z2^2 + (1/3)*z0*z2^3 + (-1/4)*z1^4",
        groebner: &["(-1)*x*y^2 + (1)*y^3", "(1)*x^2*y", "(1)*x^3 + (1)*x*y + (-1)*y^2"],
    },
    Case {
        vars: "x,y",
        ideal: "y^2 - x^4, x^2*y",
        dim: 8,
        degree: 5,
        basis: &[&[1,0], &[0,1], &[2,0], &[1,1], &[0,2], &[3,0], &[1,2]],
        equation: "(1)*z0^4*z7 + (-1)*z0^3*z1*z5 + (-1)*z0^3*z2*z4 + (-1)*z0^3*z3*z6 + (1)*z0^2*z1^2*z6 + (1)*z0^2*z1*z2^2 + (1)*z0^2*z1*z3^2 + (-1)*z0*z1^3*z3 + (1/5)*z1^5",
        groebner: &["(1)*x^4 + (-1)*y^2", "(1)*y^3", "(1)*x^2*y"],
    },
    Case {
        vars: "x,y,z",
        ideal: "xy, xz, yz, y^2 - x^4, z^2 - x^4",
        dim: 7,
        degree: 4,
        basis: &[&[1,0,0], &[0,1,0], &[0,0,1], &[2,0,0], &[3,0,0], &[0,2,0]],
        equation: "(1)*z0^3*z6 + (-1)*z0^2*z1*z5 + (-1/2)*z0^2*z2^2 + (-1/2)*z0^2*z3^2 + (-1/2)*z0^2*z4^2 + (1)*z0*z1^2*z4 + (-1/4)*z1^4",
        groebner: &["(1)*x^4 + (-1)*y^2", "(1)*y^3", "(-1)*y^2 + (1)*z^2", "(1)*y*z", "(1)*x*z", "(1)*x*y"],
    },
    Case {
        vars: "x,y",
        ideal: "xy, x^3 - y^3",
        dim: 6,
        degree: 3,
        basis: &[&[1,0], &[0,1], &[2,0], &[0,2], &[3,0]],
        equation: "(1)*z0^2*z5 + (-1)*z0*z1*z3 + (-1)*z0*z2*z4 + (1/3)*z1^3 + (1/3)*z2^3",
        groebner: &["(1)*x^4", "(-1)*x^3 + (1)*y^3", "(1)*x*y"],
    },
    Case {
        vars: "x,y",
        ideal: "y^2 - xy - x^4, x^3*y",
        dim: 10,
        degree: 6,
        basis: &[&[1,0], &[0,1], &[2,0], &[1,1], &[0,2], &[3,0], &[2,1], &[1,2], &[2,2]],
        equation: "(1)*z0^5*z9 + (-1)*z0^4*z1*z8 + (-1)*z0^4*z2*z7 + (-1)*z0^4*z2*z8 + (-1)*z0^4*z3*z5 + (-1/2)*z0^4*z4^2 + (-1)*z0^4*z4*z5 + (-1/2)*z0^4*z5^2 + (-1/2)*z0^4*z6^2 + (1)*z0^3*z1^2*z5 + (2)*z0^3*z1*z2*z4 + (2)*z0^3*z1*z2*z5 + (2)*z0^3*z1*z3*z6 + (1)*z0^3*z2^2*z3 + (1)*z0^3*z2^2*z4 + (1)*z0^3*z2^2*z5 + (1/3)*z0^3*z3^3 + (-1)*z0^2*z1^3*z6 + (-3/2)*z0^2*z1^2*z2^2 + (-3/2)*z0^2*z1^2*z3^2 + (-1)*z0^2*z1*z2^3 + (-1/4)*z0^2*z2^4 + (1)*z0*z1^4*z3 + (-1/6)*z1^6",
        groebner: &["(1)*x^3*y", "(1)*x^4 + (1)*x*y + (-1)*y^2", "(-1)*x*y^2 + (1)*y^3"],
    },
    Case {
        vars: "x,y,z",
        ideal: "xy, xz, yz, y^3 - x^3, z^2 - x^3",
        dim: 7,
        degree: 3,
        basis: &[&[1,0,0], &[0,1,0], &[0,0,1], &[2,0,0], &[0,2,0], &[0,0,2]],
        equation: "(1)*z0^2*z6 + (-1)*z0*z1*z4 + (-1)*z0*z2*z5 + (-1/2)*z0*z3^2 + (1/3)*z1^3 + (1/3)*z2^3",
        groebner: &["(1)*z^3", "(1)*y^3 + (-1)*z^2", "(1)*x^3 + (-1)*z^2", "(1)*y*z", "(1)*x*z", "(1)*x*y"],
    },
    Case {
        vars: "x,y",
        ideal: "y^2, x^4 - x^3*y",
        dim: 8,
        degree: 4,
        basis: &[&[1,0], &[0,1], &[2,0], &[1,1], &[3,0], &[2,1], &[4,0]],
        equation: "(1)*z0^3*z7 + (-1)*z0^2*z1*z5 + (-1)*z0^2*z1*z6 + (-1)*z0^2*z2*z5 + (-1/2)*z0^2*z3^2 + (-1)*z0^2*z3*z4 + (1)*z0*z1^2*z3 + (1)*z0*z1^2*z4 + (2)*z0*z1*z2*z3 + (-1/4)*z1^4 + (-1)*z1^3*z2",
        groebner: &["(1)*x^5", "(-1)*x^4 + (1)*x^3*y", "(1)*y^2"],
    },
    Case {
        vars: "x,y",
        ideal: "y^2 - x^2*y - 2*x^4, x^3*y",
        dim: 10,
        degree: 6,
        basis: &[&[1,0], &[0,1], &[2,0], &[1,1], &[0,2], &[3,0], &[2,1], &[1,2], &[0,3]],
        equation: "(1)*z0^5*z9 + (-1)*z0^4*z1*z8 + (-1)*z0^4*z2*z5 + (-1)*z0^4*z2*z7 + (-1)*z0^4*z3*z5 + (-1/2)*z0^4*z4^2 + (-1/4)*z0^4*z6^2 + (1)*z0^3*z1^2*z5 + (2)*z0^3*z1*z2*z4 + (1)*z0^3*z1*z3*z6 + (1/3)*z0^3*z2^3 + (1)*z0^3*z2^2*z3 + (1/6)*z0^3*z3^3 + (-1/2)*z0^2*z1^3*z6 + (-3/2)*z0^2*z1^2*z2^2 + (-3/4)*z0^2*z1^2*z3^2 + (1/2)*z0*z1^4*z3 + (-1/12)*z1^6",
        groebner: &["(1)*y^4", "(1)*x*y^3", "(1)*x^2*y^2 + (-1)*y^3", "(1)*x^3*y", "(2)*x^4 + (1)*x^2*y + (-1)*y^2"],
    },
    Case {
        vars: "x,y,z",
        ideal: "x^2*y - x^3, y^2, xz, yz, z^2 - x^3",
        dim: 7,
        degree: 3,
        basis: &[&[1,0,0], &[0,1,0], &[0,0,1], &[2,0,0], &[1,1,0], &[0,0,2]],
        equation: "(1)*z0^2*z6 + (-1)*z0*z1*z4 + (-1)*z0*z1*z5 + (-1)*z0*z2*z4 + (-1/2)*z0*z3^2 + (1/3)*z1^3 + (1)*z1^2*z2",
        groebner: &["(1)*z^3", "(1)*x^2*y + (-1)*z^2", "(1)*x^3 + (-1)*z^2", "(1)*y*z", "(1)*x*z", "(1)*y^2"],
    },
];

fn ideal(case: &Case) -> (Arc<Ring>, Ideal) {
    let vars: Vec<&str> = case.vars.split(',').collect();
    let ring = Ring::vars_only(&vars);
    let i = Ideal::parse(&ring, case.ideal).unwrap();
    (ring, i)
}

#[test]
fn reduced_groebner_bases() {
    for case in CASES {
        let (ring, i) = ideal(case);
        let gb = buchberger(&i).unwrap();
        let mut got: Vec<Polynomial> = gb.elements().iter().map(|p| p.monic().unwrap()).collect();
        let mut want: Vec<Polynomial> = case
            .groebner
            .iter()
            .map(|t| parse_polynomial(t, &ring).unwrap().monic().unwrap())
            .collect();
        let key = |p: &Polynomial| p.to_string();
        got.sort_by_key(key);
        want.sort_by_key(key);
        assert_eq!(got, want, "{}", case.ideal);
        assert_eq!(gb.quotient_dim().unwrap(), case.dim, "{}", case.ideal);
    }
}

#[test]
fn hypersurface_equations_on_monomial_bases() {
    for case in CASES {
        let (ring, i) = ideal(case);
        let a = build_algebra(&i).unwrap();
        assert_eq!(a.dim(), case.dim);
        let basis: Vec<_> = case
            .basis
            .iter()
            .map(|e| {
                let m = Polynomial::monomial(&ring, Monomial::new(e.to_vec()), Rational::one());
                a.evaluate(&m).unwrap()
            })
            .collect();
        let h = HPair::with_basis(a, basis).unwrap();
        assert_eq!(h.degree(), case.degree, "{}", case.ideal);
        let f = hypersurface_equation(&h);
        let want = HomogeneousForm::parse(case.equation, f.variables()).unwrap();
        assert_eq!(f.polynomial(), want.polynomial(), "{}: got {}", case.ideal, f);
    }
}
