//! Finite local algebras as multiplication tables.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, Ideal};
use crate::linalg::{self, add_scaled, is_zero_vector, unit_vector, zero_vector, Matrix, RowSpace, Vector};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::rational::{self, Rational};

/// Subspaces of an algebra are row spaces of coordinate vectors.
pub type Subspace = RowSpace;

type Sparse = Vec<(usize, Rational)>;

#[derive(Debug, Clone)]
pub enum Provenance {
    Ideal { ideal: Ideal, basis: GroebnerBasis },
    Quotient { parent_dim: usize, ideal_dim: usize },
}

/// `K[x_1..x_h]/I` with a basis of monomials, `basis[0] = 1`.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    ring: Arc<Ring>,
    monomials: Vec<Monomial>,
    table: Vec<Vec<Sparse>>,
    generators: Vec<Vector>,
    provenance: Provenance,
}

fn to_sparse(v: &[Rational]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Builds the quotient algebra of a zero-dimensional ideal whose variables
/// are all nilpotent.
pub fn build_algebra(ideal: &Ideal) -> Result<FiniteAlgebra> {
    if let Some(p) = ideal.ring().params().first() {
        return Err(Error::MissingParameter(p.clone()));
    }
    let gb = buchberger(ideal)?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let monomials = gb.standard_monomials()?;
    let dim = monomials.len();
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let ring = ideal.ring().clone();
    let coords = |p: &Polynomial| -> Result<Vector> {
        let nf = gb.normal_form(p)?;
        let mut v = zero_vector(dim);
        for (m, _, c) in nf.terms() {
            v[index[m]] = c.clone();
        }
        Ok(v)
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let p = Polynomial::monomial(&ring, monomials[i].mul(&monomials[j]), Rational::one());
            let s = to_sparse(&coords(&p)?);
            table[j][i] = s.clone();
            table[i][j] = s;
        }
    }
    let generators = (0..ring.nvars())
        .map(|i| coords(&Polynomial::var(&ring, i)))
        .collect::<Result<Vec<_>>>()?;
    let algebra = FiniteAlgebra {
        ring: ring.clone(),
        monomials,
        table,
        generators,
        provenance: Provenance::Ideal {
            ideal: ideal.clone(),
            basis: gb,
        },
    };
    for (i, g) in algebra.generators.iter().enumerate() {
        if !is_zero_vector(&algebra.power(g, dim as u32)) {
            return Err(Error::NotLocal {
                variable: ring.vars()[i].clone(),
            });
        }
    }
    algebra.check_structure()?;
    Ok(algebra)
}

impl FiniteAlgebra {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn basis_monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.monomials
            .iter()
            .map(|m| m.format_with(self.ring.vars()).unwrap_or_else(|| "1".to_string()))
            .collect()
    }

    /// Images of the ring variables.
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn one(&self) -> Vector {
        unit_vector(self.dim(), 0)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    /// `e_i * e_j` as a sparse vector.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (k, t) in &self.table[i][j] {
                    out[*k] += &c * t;
                }
            }
        }
        out
    }

    pub fn power(&self, a: &[Rational], k: u32) -> Vector {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, a);
            if is_zero_vector(&out) {
                break;
            }
        }
        out
    }

    /// Truncated exponential series of a nilpotent element.
    pub fn exp(&self, a: &[Rational]) -> Vector {
        debug_assert!(a[0].is_zero());
        let mut out = self.one();
        let mut term = self.one();
        for k in 1..=self.dim() {
            term = self.mul(&term, a);
            if is_zero_vector(&term) {
                break;
            }
            add_scaled(&mut out, &term, &rational::factorial(k as u32).recip());
        }
        out
    }

    /// Image of a parameter-free polynomial under `x_i -> generators[i]`.
    pub fn evaluate(&self, p: &Polynomial) -> Result<Vector> {
        self.ring.check_same_vars(p.ring())?;
        let mut cache: HashMap<(usize, u32), Vector> = HashMap::new();
        let mut out = zero_vector(self.dim());
        for (m, q, c) in p.terms() {
            if !q.is_one() {
                return Err(Error::SymbolicLeadingCoefficient(p.to_string()));
            }
            let mut t = self.one();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| self.power(&self.generators[i], e))
                    .clone();
                t = self.mul(&t, &pw);
            }
            add_scaled(&mut out, &t, c);
        }
        Ok(out)
    }

    /// Multiplication operator `v -> a v` as a matrix (rows indexed by output).
    pub fn multiplication_matrix(&self, a: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut m = vec![zero_vector(n); n];
        for j in 0..n {
            let col = self.mul(a, &unit_vector(n, j));
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        m
    }

    /// Exhaustive unit, commutativity and associativity checks.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            if self.table[0][i] != vec![(i, Rational::one())] {
                return Err(Error::Consistency(format!("1 is not a unit on basis element {i}")));
            }
            for j in 0..n {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::Consistency(format!("e{i} e{j} != e{j} e{i}")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let eij = densify(&self.table[i][j], n);
                for k in 0..n {
                    let ejk = densify(&self.table[j][k], n);
                    let left = self.mul(&eij, &unit_vector(n, k));
                    let right = self.mul(&unit_vector(n, i), &ejk);
                    if left != right {
                        return Err(Error::Consistency(format!("(e{i} e{j}) e{k} != e{i} (e{j} e{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The maximal ideal: all basis vectors except 1.
    pub fn maximal_ideal(&self) -> Subspace {
        let n = self.dim();
        Subspace::span(n, (1..n).map(|i| unit_vector(n, i)).collect())
    }

    pub fn radical_filtration(&self) -> Filtration {
        let n = self.dim();
        let mut powers = vec![Subspace::full(n), self.maximal_ideal()];
        while !powers.last().expect("non-empty").is_zero() {
            let last = powers.last().expect("non-empty");
            let mut products = Vec::new();
            for g in &self.generators {
                for v in last.rows() {
                    products.push(self.mul(g, v));
                }
            }
            powers.push(Subspace::span(n, products));
        }
        Filtration { powers }
    }

    pub fn hilbert_samuel(&self) -> Vec<usize> {
        self.radical_filtration().hilbert_samuel()
    }

    pub fn is_ideal(&self, j: &Subspace) -> bool {
        j.rows()
            .iter()
            .all(|v| self.generators.iter().all(|g| j.contains(&self.mul(g, v))))
    }

    /// `{a : a m = 0}`.
    pub fn socle(&self) -> Subspace {
        let n = self.dim();
        let mut eqs: Matrix = Vec::new();
        for g in &self.generators {
            eqs.extend(self.multiplication_matrix(g));
        }
        Subspace::span(n, linalg::nullspace(&eqs, n))
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle().dim() == 1
    }

    /// Socle generator scaled so that its last nonzero coordinate is 1,
    /// after checking that the socle is the top power of `m`.
    pub fn gorenstein_certificate(&self) -> Result<Vector> {
        let soc = self.socle();
        if soc.dim() != 1 {
            return Err(Error::NotGorenstein { socle_dim: soc.dim() });
        }
        let filt = self.radical_filtration();
        if filt.top() != &soc {
            return Err(Error::Consistency("socle differs from the top power of m".into()));
        }
        let mut v = soc.rows()[0].clone();
        let last = v.iter().rposition(|c| !c.is_zero()).expect("nonzero");
        let inv = v[last].recip();
        for c in v.iter_mut() {
            *c *= &inv;
        }
        Ok(v)
    }

    /// Largest ideal contained in `u`: `{a : a A ⊆ u}`.
    pub fn largest_ideal_in_subspace(&self, u: &Subspace) -> Subspace {
        let n = self.dim();
        let ann = u.annihilator();
        let mut eqs: Matrix = Vec::new();
        for phi in &ann {
            for j in 0..n {
                // column i holds phi(e_i e_j)
                let row: Vector = (0..n)
                    .map(|i| {
                        self.table[i][j]
                            .iter()
                            .fold(Rational::zero(), |acc, (k, c)| acc + c * &phi[*k])
                    })
                    .collect();
                eqs.push(row);
            }
        }
        Subspace::span(n, linalg::nullspace(&eqs, n))
    }

    /// Fixed point of `J -> {a in J : a x_i in J}` starting from `u`.
    pub fn largest_ideal_brute_force(&self, u: &Subspace) -> Subspace {
        let n = self.dim();
        let mut j = u.clone();
        loop {
            // a = sum c_r row_r; require (a g) reduced mod J vanishes for every generator
            let rows = j.rows().clone();
            let mut eqs: Matrix = Vec::new();
            for g in &self.generators {
                let images: Vec<Vector> = rows.iter().map(|r| j.reduce(&self.mul(g, r))).collect();
                for k in 0..n {
                    eqs.push(images.iter().map(|im| im[k].clone()).collect());
                }
            }
            let kernel = linalg::nullspace(&eqs, rows.len());
            let next: Matrix = kernel
                .iter()
                .map(|c| {
                    let mut v = zero_vector(n);
                    for (r, ci) in rows.iter().zip(c) {
                        add_scaled(&mut v, r, ci);
                    }
                    v
                })
                .collect();
            let next = Subspace::span(n, next);
            if next == j {
                return j;
            }
            j = next;
        }
    }

    /// `A/J` on the complement spanned by the non-pivot basis vectors of `J`.
    pub fn quotient(&self, j: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(j) {
            return Err(Error::NotAnIdeal);
        }
        if !self.maximal_ideal().contains_space(j) {
            return Err(Error::NotContained("ideal is not inside the maximal ideal".into()));
        }
        let keep = j.complement_indices();
        let project = |v: &[Rational]| -> Vector {
            let r = j.reduce(v);
            keep.iter().map(|&i| r[i].clone()).collect()
        };
        let m = keep.len();
        let mut table = vec![vec![Vec::new(); m]; m];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &k) in keep.iter().enumerate() {
                table[a][b] = to_sparse(&project(&densify(&self.table[i][k], self.dim())));
            }
        }
        let algebra = FiniteAlgebra {
            ring: self.ring.clone(),
            monomials: keep.iter().map(|&i| self.monomials[i].clone()).collect(),
            table,
            generators: self.generators.iter().map(|g| project(g)).collect(),
            provenance: Provenance::Quotient {
                parent_dim: self.dim(),
                ideal_dim: j.dim(),
            },
        };
        algebra.check_structure()?;
        Ok(Quotient {
            algebra,
            kept: keep,
            kernel: j.clone(),
        })
    }

    pub fn quotient_algebra(&self, j: &Subspace) -> Result<FiniteAlgebra> {
        Ok(self.quotient(j)?.algebra)
    }

    /// Human-readable element, e.g. `x^2 - 1/2*y`.
    pub fn format_element(&self, v: &[Rational]) -> String {
        let labels = self.basis_labels();
        let mut out = String::new();
        for (i, c) in v.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if i == 0 {
                out.push_str(&rational::format(&abs));
            } else if abs.is_one() {
                out.push_str(&labels[i]);
            } else {
                out.push_str(&format!("{}*{}", rational::format(&abs), labels[i]));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn report(&self) -> AlgebraReport {
        let hs = self.hilbert_samuel();
        let soc = self.socle();
        let gorenstein = soc.dim() == 1;
        AlgebraReport {
            dim: self.dim(),
            length: hs.len(),
            hilbert_samuel: hs,
            gorenstein,
            socle_generator: self
                .gorenstein_certificate()
                .ok()
                .map(|v| v.iter().map(rational::format).collect()),
            basis: self.basis_labels(),
        }
    }
}

fn densify(s: &[(usize, Rational)], n: usize) -> Vector {
    let mut v = zero_vector(n);
    for (i, c) in s {
        v[*i] = c.clone();
    }
    v
}

/// A quotient algebra together with its projection data.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    /// Parent basis indices kept as the quotient basis.
    pub kept: Vec<usize>,
    pub kernel: Subspace,
}

impl Quotient {
    pub fn project(&self, v: &[Rational]) -> Vector {
        let r = self.kernel.reduce(v);
        self.kept.iter().map(|&i| r[i].clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub dim: usize,
    pub length: usize,
    pub hilbert_samuel: Vec<usize>,
    pub gorenstein: bool,
    pub socle_generator: Option<Vec<String>>,
    pub basis: Vec<String>,
}

/// `A = m^0 ⊃ m ⊃ ... ⊃ m^d ⊃ m^{d+1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    powers: Vec<Subspace>,
}

impl Filtration {
    pub fn powers(&self) -> &[Subspace] {
        &self.powers
    }

    pub fn power(&self, k: usize) -> Subspace {
        match self.powers.get(k) {
            Some(s) => s.clone(),
            None => Subspace::zero(self.powers[0].ambient_dim()),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(Subspace::dim).collect()
    }

    /// `d + 1`.
    pub fn length(&self) -> usize {
        self.powers.len() - 1
    }

    /// Largest `d` with `m^d != 0`.
    pub fn top_exponent(&self) -> usize {
        self.powers.len() - 2
    }

    pub fn top(&self) -> &Subspace {
        &self.powers[self.powers.len() - 2]
    }

    pub fn hilbert_samuel(&self) -> Vec<usize> {
        self.powers.windows(2).map(|w| w[0].dim() - w[1].dim()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeViolation {
    /// A term after some `r_k = 1` differs from 1.
    TailAfterOne { index: usize },
    /// `r_2 = 2` but the tail is not `2,...,2,1,...,1`.
    TailAfterTwo { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub violations: Vec<ShapeViolation>,
    /// `(1,2,3,1,...,1)`: no Gorenstein algebra has this sequence.
    pub gorenstein_impossible: bool,
}

impl ShapeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_hs_shape(r: &[usize]) -> ShapeReport {
    let mut violations = Vec::new();
    if let Some(k) = (1..r.len()).find(|&k| r[k] == 1) {
        if let Some(i) = (k + 1..r.len()).find(|&i| r[i] != 1) {
            violations.push(ShapeViolation::TailAfterOne { index: i });
        }
    }
    if r.get(2) == Some(&2) {
        let mut seen_one = false;
        for (i, &x) in r.iter().enumerate().skip(2) {
            let ok = match x {
                2 => !seen_one,
                1 => {
                    seen_one = true;
                    true
                }
                _ => false,
            };
            if !ok {
                violations.push(ShapeViolation::TailAfterTwo { index: i });
                break;
            }
        }
    }
    let gorenstein_impossible =
        r.len() >= 4 && r[..3] == [1, 2, 3] && r[3..].iter().all(|&x| x == 1);
    ShapeReport {
        violations,
        gorenstein_impossible,
    }
}

/// Outcome of a sampled spanning check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanCheck {
    pub holds: bool,
    pub draws: usize,
    pub escalated: bool,
}

/// Checks `span{z^k} + m^{k+1} = m^k` for random `z ∈ m`.
pub fn power_span_check(a: &FiniteAlgebra, k: u32, trials: usize, seed: u64) -> SpanCheck {
    let filt = a.radical_filtration();
    let target = filt.power(k as usize);
    let below = filt.power(k as usize + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut span = below.clone();
    let mut draws = 0;
    for (bound, escalated) in [(3i64, false), (10i64, true)] {
        for _ in 0..trials {
            draws += 1;
            let mut z = zero_vector(a.dim());
            for c in z.iter_mut().skip(1) {
                *c = rational::int(rng.gen_range(-bound..=bound));
            }
            span = span.sum(&Subspace::span(a.dim(), vec![a.power(&z, k)]));
            if span == target {
                return SpanCheck {
                    holds: true,
                    draws,
                    escalated,
                };
            }
        }
    }
    SpanCheck {
        holds: false,
        draws,
        escalated: true,
    }
}
