//! H-pairs and the equation `z_0^d π(ln(1 + z/z_0)) = 0` of the induced
//! hypersurface.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, add_scaled, zero_vector, Matrix, Vector};
use crate::localalgebra::{FiniteAlgebra, Subspace};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::rational::{self, Rational};

/// An algebra with a hyperplane `U` of `m` generating it, and an adapted
/// basis `S_1..S_n` of `m` whose first `n - 1` vectors span `U`.
#[derive(Debug, Clone)]
pub struct HPair {
    algebra: FiniteAlgebra,
    basis: Vec<Vector>,
    labels: Vec<String>,
    u: Subspace,
    /// `coords[i]` is the functional giving the `S_i` coordinate on `m`.
    coords: Matrix,
}

fn sequential_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

impl HPair {
    /// Pair with the given adapted basis of `m` (last vector outside `U`).
    pub fn with_basis(algebra: FiniteAlgebra, basis: Vec<Vector>) -> Result<HPair> {
        let n = basis.len();
        HPair::with_labels(algebra, basis, sequential_labels(n))
    }

    pub fn with_labels(algebra: FiniteAlgebra, basis: Vec<Vector>, labels: Vec<String>) -> Result<HPair> {
        let dim = algebra.dim();
        let n = dim - 1;
        if n == 0 {
            return Err(Error::InvalidPair("the algebra is a field".into()));
        }
        if basis.len() != n || labels.len() != n {
            return Err(Error::InvalidPair(format!(
                "expected {n} basis vectors and labels, got {} and {}",
                basis.len(),
                labels.len()
            )));
        }
        let m = algebra.maximal_ideal();
        if basis.iter().any(|v| v.len() != dim || !m.contains(v)) {
            return Err(Error::InvalidPair("basis vector outside the maximal ideal".into()));
        }
        if linalg::rank(&basis) != n {
            return Err(Error::InvalidPair("basis vectors are dependent".into()));
        }
        let u = Subspace::span(dim, basis[..n - 1].to_vec());
        // invert [1, S_1..S_n]
        let mut full = vec![algebra.one()];
        full.extend(basis.iter().cloned());
        let cols = linalg::transpose(&full, dim);
        let coords: Matrix = (1..=n)
            .map(|k| {
                // row k of the inverse: solve cols^T y = e_k
                let t = linalg::transpose(&cols, dim);
                linalg::solve(&t, &linalg::unit_vector(dim, k), dim).expect("invertible")
            })
            .collect();
        let pair = HPair {
            algebra,
            basis,
            labels,
            u,
            coords,
        };
        if !pair.generates_algebra() {
            return Err(Error::InvalidPair("U does not generate the algebra".into()));
        }
        Ok(pair)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn u(&self) -> &Subspace {
        &self.u
    }

    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Result<HPair> {
        if labels.len() != self.n() {
            return Err(Error::InvalidPair("wrong number of labels".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Coordinates `(z_1..z_n)` of an element of `m` in the adapted basis.
    pub fn coordinates(&self, v: &[Rational]) -> Vector {
        self.coords
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// The projection `π`: the `S_n` coordinate.
    pub fn pi(&self) -> &Vector {
        &self.coords[self.n() - 1]
    }

    fn generates_algebra(&self) -> bool {
        let a = &self.algebra;
        let dim = a.dim();
        let mut rows = vec![a.one()];
        rows.extend(self.u.rows().iter().cloned());
        let mut s = Subspace::span(dim, rows);
        loop {
            let mut more = s.rows().clone();
            for v in s.rows() {
                for w in self.u.rows() {
                    more.push(a.mul(v, w));
                }
            }
            let next = Subspace::span(dim, more);
            if next == s {
                return s.dim() == dim;
            }
            s = next;
        }
    }

    /// Largest `d` with `m^d ⊄ U`.
    pub fn degree(&self) -> usize {
        let filt = self.algebra.radical_filtration();
        (1..filt.powers().len())
            .rev()
            .find(|&k| !self.u.contains_space(&filt.powers()[k]))
            .expect("m is not inside U")
    }

    /// Largest ideal of the algebra contained in `U`.
    pub fn largest_ideal(&self) -> Subspace {
        self.algebra.largest_ideal_in_subspace(&self.u)
    }

    pub fn equation(&self) -> HomogeneousForm {
        hypersurface_equation(self)
    }
}

/// The pair with `U` spanned by the standard monomials of `m` other than
/// the leading monomial of the socle generator.
pub fn default_hpair(algebra: &FiniteAlgebra) -> Result<HPair> {
    let s = algebra.gorenstein_certificate()?;
    let top = s.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    let dim = algebra.dim();
    let mut basis: Vec<Vector> = (1..dim)
        .filter(|&i| i != top)
        .map(|i| algebra.basis_vector(i))
        .collect();
    basis.push(s);
    HPair::with_basis(algebra.clone(), basis)
}

pub fn hypersurface_degree(h: &HPair) -> usize {
    h.degree()
}

/// Degree-`d` form in `z_0..z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    variables: Vec<String>,
    degree: usize,
    poly: Polynomial,
    basis_labels: Vec<String>,
}

/// Ring for `z_0..z_n` with `z_0` most significant, so that printing in
/// decreasing order starts from the highest power of `z_0`.
fn form_ring(variables: &[String]) -> Arc<Ring> {
    let rev: Vec<&String> = variables.iter().rev().collect();
    Ring::vars_only(&rev)
}

impl HomogeneousForm {
    /// Builds from a polynomial whose variables are `z_0..z_n` in natural order.
    pub fn from_polynomial(poly: &Polynomial, degree: usize) -> Result<HomogeneousForm> {
        let variables = poly.ring().vars().to_vec();
        let ring = form_ring(&variables);
        let n = variables.len();
        let images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&ring, n - 1 - i)).collect();
        let poly = poly.substitute_vars(&images)?;
        if !poly.is_homogeneous_of_degree(degree as u32) {
            return Err(Error::Consistency("form is not homogeneous".into()));
        }
        Ok(HomogeneousForm {
            basis_labels: variables.iter().skip(1).cloned().collect(),
            variables,
            degree,
            poly,
        })
    }

    /// Parses a form in the given variables (natural order `z_0..z_n`).
    pub fn parse<S: AsRef<str>>(text: &str, variables: &[S]) -> Result<HomogeneousForm> {
        let ring = Ring::vars_only(variables);
        let p = crate::poly::parse_polynomial(text, &ring)?;
        let d = p.total_degree().unwrap_or(0) as usize;
        HomogeneousForm::from_polynomial(&p, d)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    /// Underlying polynomial; its ring lists the variables in reverse.
    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    fn natural_exponents(&self, m: &Monomial) -> Vec<u32> {
        m.exponents().iter().rev().copied().collect()
    }

    /// Terms in printing order as (exponents in `z_0..z_n` order, coefficient).
    pub fn terms(&self) -> Vec<(Vec<u32>, Rational)> {
        self.poly
            .terms()
            .rev()
            .map(|(m, _, c)| (self.natural_exponents(m), c.clone()))
            .collect()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        let rev: Vec<u32> = exponents.iter().rev().copied().collect();
        self.poly
            .rational_coefficient(&Monomial::new(rev))
            .unwrap_or_else(Rational::zero)
    }

    /// Renames the variables; positions are unchanged.
    pub fn relabel<S: AsRef<str>>(&self, names: &[S]) -> Result<HomogeneousForm> {
        if names.len() != self.variables.len() {
            return Err(Error::InvalidPair("wrong number of names".into()));
        }
        let variables: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let ring = form_ring(&variables);
        let poly = Polynomial::from_terms(
            &ring,
            self.poly.terms().map(|(m, q, c)| (m.clone(), q.clone(), c.clone())),
        );
        Ok(HomogeneousForm {
            basis_labels: variables.iter().skip(1).cloned().collect(),
            variables,
            degree: self.degree,
            poly,
        })
    }

    /// The coefficient `f_k` of `z_0^{d-k}`, as a form in the remaining variables.
    pub fn z0_slice(&self, k: usize) -> HomogeneousForm {
        let nv = self.variables.len();
        let ring = form_ring(&self.variables);
        let target = (self.degree - k) as u32;
        let poly = Polynomial::from_terms(
            &ring,
            self.poly
                .terms()
                .filter(|(m, _, _)| m.exponents()[nv - 1] == target)
                .map(|(m, q, c)| {
                    let mut e = m.exponents().to_vec();
                    e[nv - 1] = 0;
                    (Monomial::new(e), q.clone(), c.clone())
                }),
        );
        HomogeneousForm {
            variables: self.variables.clone(),
            degree: k,
            poly,
            basis_labels: self.basis_labels.clone(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let rev: Vec<Rational> = point.iter().rev().cloned().collect();
        self.poly.evaluate(&rev).expect("parameter-free")
    }

    /// Canonical text, factors in `z_0..z_n` order.
    pub fn to_text(&self) -> String {
        self.render(|name, e| if e == 1 { name.to_string() } else { format!("{name}^{e}") }, "*", |c| {
            rational::format(c)
        })
    }

    pub fn to_latex(&self) -> String {
        let body = self.render(
            |name, e| {
                let sub = latex_name(name);
                if e == 1 {
                    sub
                } else {
                    format!("{sub}^{{{e}}}")
                }
            },
            " ",
            |c| {
                if c.denom().is_one() {
                    c.numer().to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
                }
            },
        );
        format!("{body} = 0")
    }

    fn render(
        &self,
        power: impl Fn(&str, u32) -> String,
        sep: &str,
        coeff: impl Fn(&Rational) -> String,
    ) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exps, c)) in terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = exps
                .iter()
                .zip(&self.variables)
                .filter(|(e, _)| **e > 0)
                .map(|(e, name)| power(name, *e))
                .collect();
            if factors.is_empty() {
                out.push_str(&coeff(&abs));
            } else if abs.is_one() {
                out.push_str(&factors.join(sep));
            } else {
                out.push_str(&coeff(&abs));
                out.push_str(sep);
                out.push_str(&factors.join(sep));
            }
        }
        out
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            degree: self.degree,
            variables: self.variables.clone(),
            terms: self
                .terms()
                .into_iter()
                .map(|(exponents, c)| TermJson {
                    exponents,
                    coefficient: rational::format(&c),
                })
                .collect(),
        }
    }
}

impl std::fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn latex_name(name: &str) -> String {
    let digits = name.chars().rev().take_while(|c| c.is_ascii_digit()).count();
    if digits == 0 || digits == name.len() {
        return name.to_string();
    }
    let (base, idx) = name.split_at(name.len() - digits);
    format!("{base}_{{{idx}}}")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormJson {
    pub degree: usize,
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// `f = Σ_{k=1}^{d} ((-1)^{k-1}/k) z_0^{d-k} π(z^k)` with `z = Σ z_i S_i`.
pub fn hypersurface_equation(h: &HPair) -> HomogeneousForm {
    let a = &h.algebra;
    let dim = a.dim();
    let n = h.n();
    let d = h.degree();
    let mut variables = vec!["z0".to_string()];
    variables.extend(h.labels.iter().cloned());
    let ring = form_ring(&variables);
    // variable index of z_i in the reversed ring
    let zvar = |i: usize| Polynomial::var(&ring, n - i);

    // z as a vector of polynomial coordinates in the algebra basis
    let mut z: Vec<Polynomial> = vec![Polynomial::zero(&ring); dim];
    for (i, s) in h.basis.iter().enumerate() {
        let zi = zvar(i + 1);
        for (k, c) in s.iter().enumerate() {
            if !c.is_zero() {
                z[k] = &z[k] + &zi.scale(c);
            }
        }
    }
    let pi = h.pi();
    let project = |v: &[Polynomial]| -> Polynomial {
        let mut out = Polynomial::zero(&ring);
        for (p, c) in v.iter().zip(pi) {
            if !c.is_zero() && !p.is_zero() {
                out = &out + &p.scale(c);
            }
        }
        out
    };
    let z0 = zvar(0);
    let mut f = Polynomial::zero(&ring);
    let mut zk = z.clone();
    for k in 1..=d {
        if k > 1 {
            zk = mul_poly_vectors(a, &zk, &z);
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let coeff = rational::frac(sign, k as i64);
        let term = &z0.pow((d - k) as u32) * &project(&zk).scale(&coeff);
        f = &f + &term;
    }
    HomogeneousForm {
        variables,
        degree: d,
        poly: f,
        basis_labels: h.labels.clone(),
    }
}

pub(crate) fn mul_poly_vectors(a: &FiniteAlgebra, x: &[Polynomial], y: &[Polynomial]) -> Vec<Polynomial> {
    let dim = a.dim();
    let ring = x[0].ring().clone();
    let mut out = vec![Polynomial::zero(&ring); dim];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let entries = a.product_of_basis(i, j);
            if entries.is_empty() {
                continue;
            }
            let prod = xi * yj;
            for (k, c) in entries {
                out[*k] = &out[*k] + &prod.scale(c);
            }
        }
    }
    out
}

/// Dimension of the span of the first partial derivatives.
pub fn essential_variable_count(f: &HomogeneousForm) -> usize {
    let p = f.polynomial();
    let partials: Vec<Polynomial> = (0..p.ring().nvars()).map(|i| p.derivative(i)).collect();
    let mut monos: Vec<Monomial> = partials.iter().flat_map(|q| q.var_monomials()).collect();
    monos.sort();
    monos.dedup();
    let rows: Matrix = partials
        .iter()
        .map(|q| {
            monos
                .iter()
                .map(|m| q.rational_coefficient(m).unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    linalg::rank(&rows)
}

/// Result of the orbit point test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointTest {
    pub points: usize,
    pub failures: usize,
}

/// Checks `f(1, coords(exp u)) = 0` for random `u ∈ U`.
pub fn point_test(h: &HPair, f: &HomogeneousForm, points: usize, seed: u64) -> PointTest {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = h.algebra();
    let n = h.n();
    let mut failures = 0;
    for _ in 0..points {
        let mut u = zero_vector(a.dim());
        for s in &h.basis[..n - 1] {
            let c = rational::int(rng.gen_range(-5..=5));
            add_scaled(&mut u, s, &c);
        }
        let mut e = a.exp(&u);
        e[0] -= Rational::one();
        let mut point = vec![Rational::one()];
        point.extend(h.coordinates(&e));
        if !f.evaluate(&point).is_zero() {
            failures += 1;
        }
    }
    PointTest { points, failures }
}

/// The pair `(A/J, U/J)` for an ideal `J ⊆ U`.
pub fn reduce_hpair(h: &HPair, j: &Subspace) -> Result<HPair> {
    if !h.u.contains_space(j) {
        return Err(Error::NotContained("J is not inside U".into()));
    }
    let q = h.algebra.quotient(j)?;
    let dim = q.algebra.dim();
    let n = h.n();
    let mut chosen: Vec<Vector> = Vec::new();
    let mut labels = Vec::new();
    for (s, l) in h.basis[..n - 1].iter().zip(&h.labels) {
        let p = q.project(s);
        let mut trial = chosen.clone();
        trial.push(p.clone());
        if linalg::rank(&trial) == trial.len() {
            chosen = trial;
            labels.push(l.clone());
        }
    }
    chosen.push(q.project(&h.basis[n - 1]));
    labels.push(h.labels[n - 1].clone());
    debug_assert_eq!(chosen.len(), dim - 1);
    HPair::with_labels(q.algebra, chosen, labels)
}
