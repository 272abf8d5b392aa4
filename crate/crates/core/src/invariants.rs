//! Isomorphism invariants: the squaring pencil `m/m^2 -> m^2/m^3` and
//! verification of explicit changes of variables.

use num_traits::{One, Zero};
use serde::ser::{Serialize as SerializeTrait, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, Ideal};
use crate::linalg::{self, zero_vector, Matrix, RowSpace, Vector};
use crate::localalgebra::{build_algebra, FiniteAlgebra, Provenance};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::rational::{self, Rational};

/// Components of `s -> s^2 mod m^3` as symmetric matrices on a complement
/// of `m^2` in `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPencil {
    source: Vec<Vector>,
    target: Vec<Vector>,
    forms: Vec<Matrix>,
}

impl QuadraticPencil {
    /// `h`, the embedding dimension.
    pub fn source_dim(&self) -> usize {
        self.source.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target.len()
    }

    pub fn forms(&self) -> &[Matrix] {
        &self.forms
    }

    pub fn source_basis(&self) -> &[Vector] {
        &self.source
    }

    pub fn target_basis(&self) -> &[Vector] {
        &self.target
    }

    /// Values of every form at `v`.
    pub fn evaluate(&self, v: &[Rational]) -> Vector {
        self.forms.iter().map(|m| quadratic(m, v)).collect()
    }
}

fn bilinear(m: &Matrix, u: &[Rational], v: &[Rational]) -> Rational {
    let mv = linalg::mat_vec(m, v);
    u.iter().zip(&mv).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

fn quadratic(m: &Matrix, v: &[Rational]) -> Rational {
    bilinear(m, v, v)
}

/// Greedy basis of a complement of `sub` inside `span(candidates) + sub`.
fn greedy_complement(sub: &RowSpace, candidates: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut acc = sub.clone();
    let mut out = Vec::new();
    for v in candidates {
        if !acc.contains(&v) {
            acc = acc.sum(&RowSpace::span(acc.ambient_dim(), vec![v.clone()]));
            out.push(v);
        }
    }
    out
}

pub fn squaring_pencil(a: &FiniteAlgebra) -> Result<QuadraticPencil> {
    let filt = a.radical_filtration();
    let (m1, m2, m3) = (filt.power(1), filt.power(2), filt.power(3));
    let dim = a.dim();
    let source = greedy_complement(
        &m2,
        a.generators().iter().cloned().chain(m1.rows().iter().cloned()),
    );
    let products: Vec<Vector> = (0..source.len())
        .flat_map(|i| (i..source.len()).map(move |j| (i, j)))
        .map(|(i, j)| a.mul(&source[i], &source[j]))
        .collect();
    let target = greedy_complement(&m3, products.into_iter().chain(m2.rows().iter().cloned()));
    if target.is_empty() {
        return Err(Error::EmptyPencil);
    }
    // columns: target basis then m^3 basis
    let cols: Vec<&Vector> = target.iter().chain(m3.rows()).collect();
    let system: Matrix = (0..dim)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let h = source.len();
    let mut forms = vec![vec![zero_vector(h); h]; target.len()];
    for i in 0..h {
        for j in i..h {
            let p = a.mul(&source[i], &source[j]);
            let x = linalg::solve(&system, &p, cols.len())
                .ok_or_else(|| Error::Consistency("square outside m^2".into()))?;
            for (k, form) in forms.iter_mut().enumerate() {
                form[i][j] = x[k].clone();
                form[j][i] = x[k].clone();
            }
        }
    }
    Ok(QuadraticPencil { source, target, forms })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroLocus {
    Linear(usize),
    Nonlinear,
}

impl SerializeTrait for ZeroLocus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ZeroLocus::Linear(d) => s.serialize_u64(*d as u64),
            ZeroLocus::Nonlinear => s.serialize_str("nonlinear"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquarefreeFactor {
    pub multiplicity: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PencilSignature {
    pub source_dim: usize,
    pub target_dim: usize,
    pub radical_dim: usize,
    pub generic_rank: usize,
    pub zero_locus_dim: ZeroLocus,
    /// `det(l1*M1 + l2*M2)` on the non-radical part, for two-member pencils.
    pub degeneracy_form: Option<String>,
    pub squarefree_degrees: Vec<SquarefreeFactor>,
}

const GENERIC_SAMPLES: [i64; 4] = [1, 2, 3, 5];

fn combine(forms: &[Matrix], weights: &[Rational]) -> Matrix {
    let h = forms[0].len();
    let mut out = vec![zero_vector(h); h];
    for (m, w) in forms.iter().zip(weights) {
        for (row, mrow) in out.iter_mut().zip(m) {
            linalg::add_scaled(row, mrow, w);
        }
    }
    out
}

fn restrict(m: &Matrix, basis: &[Vector]) -> Matrix {
    basis
        .iter()
        .map(|u| basis.iter().map(|v| bilinear(m, u, v)).collect())
        .collect()
}

pub fn pencil_signature(p: &QuadraticPencil) -> PencilSignature {
    let h = p.source_dim();
    let r = p.target_dim();
    let stacked: Matrix = p.forms.iter().flatten().cloned().collect();
    let radical = RowSpace::span(h, linalg::nullspace(&stacked, h));
    let radical_dim = radical.dim();
    let reduced_basis: Vec<Vector> = radical
        .complement_indices()
        .into_iter()
        .map(|i| linalg::unit_vector(h, i))
        .collect();
    let reduced: Vec<Matrix> = p.forms.iter().map(|m| restrict(m, &reduced_basis)).collect();

    let generic_rank = GENERIC_SAMPLES
        .iter()
        .map(|&t| {
            let mut w = vec![Rational::one(); r];
            if r > 1 {
                w[1] = rational::int(t);
            }
            for (k, wk) in w.iter_mut().enumerate().skip(2) {
                *wk = rational::int(t.pow(k as u32));
            }
            linalg::rank(&combine(&p.forms, &w))
        })
        .max()
        .unwrap_or(0);

    let (degeneracy_form, squarefree_degrees) = if r == 2 {
        let coeffs = binary_determinant(&reduced);
        let text = format_binary_form(&coeffs);
        (Some(text), squarefree_binary(&coeffs))
    } else {
        (None, Vec::new())
    };

    let zero_locus_dim = match linear_zero_locus(&reduced) {
        Some(d) => ZeroLocus::Linear(d + radical_dim),
        None => ZeroLocus::Nonlinear,
    };

    PencilSignature {
        source_dim: h,
        target_dim: r,
        radical_dim,
        generic_rank,
        zero_locus_dim,
        degeneracy_form,
        squarefree_degrees,
    }
}

/// Coefficients `c_k` of `l1^{m-k} l2^k` in `det(l1*N1 + l2*N2)`.
fn binary_determinant(forms: &[Matrix]) -> Vec<Rational> {
    let m = forms[0].len();
    // interpolate t -> det(N1 + t N2) at t = 0..=m
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for t in 0..=m as i64 {
        let t = rational::int(t);
        let w = [Rational::one(), t.clone()];
        values.push(linalg::determinant(&combine(forms, &w)));
        let mut pw = Rational::one();
        let mut row = Vec::new();
        for _ in 0..=m {
            row.push(pw.clone());
            pw *= &t;
        }
        rows.push(row);
    }
    linalg::solve(&rows, &values, m + 1).unwrap_or_else(|| zero_vector(m + 1))
}

fn format_binary_form(c: &[Rational]) -> String {
    let m = c.len() - 1;
    let ring = Ring::vars_only(&["l1", "l2"]);
    let p = Polynomial::from_terms(
        &ring,
        c.iter().enumerate().map(|(k, ck)| {
            (
                Monomial::new(vec![(m - k) as u32, k as u32]),
                Monomial::one(0),
                ck.clone(),
            )
        }),
    );
    p.to_string()
}

type Univariate = Vec<Rational>;

fn trim(mut p: Univariate) -> Univariate {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[Rational]) -> Univariate {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rational::int(i as i64))
            .collect(),
    )
}

/// `(quotient, remainder)`.
fn divmod(a: &[Rational], b: &[Rational]) -> (Univariate, Univariate) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = zero_vector(r.len() - db);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = &r[r.len() - 1] / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &f * bi;
        }
        q[shift] = f;
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Univariate {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = divmod(&a, &b).1;
        a = b;
        b = r;
    }
    a
}

/// Yun's square-free decomposition of a univariate polynomial.
fn squarefree(p: &[Rational]) -> Vec<SquarefreeFactor> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let dp = derivative(&p);
    let a0 = gcd(&p, &dp);
    let mut b = divmod(&p, &a0).0;
    let mut c = divmod(&dp, &a0).0;
    let mut d: Univariate = trim(
        c.iter()
            .zip(derivative(&b).into_iter().chain(std::iter::repeat(Rational::zero())))
            .map(|(x, y)| x - y)
            .collect(),
    );
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d);
        if a.len() > 1 {
            out.push(SquarefreeFactor {
                multiplicity: i,
                degree: a.len() - 1,
            });
        }
        b = divmod(&b, &a).0;
        c = divmod(&d, &a).0;
        let db = derivative(&b);
        let len = c.len().max(db.len());
        d = trim(
            (0..len)
                .map(|k| {
                    c.get(k).cloned().unwrap_or_else(Rational::zero)
                        - db.get(k).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        );
        i += 1;
    }
    out
}

/// Squarefree decomposition of a binary form, counting the root `l1 = 0`.
fn squarefree_binary(c: &[Rational]) -> Vec<SquarefreeFactor> {
    let m = c.len() - 1;
    let p = trim(c.to_vec());
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = squarefree(&p);
    let at_infinity = m - (p.len() - 1);
    if at_infinity > 0 {
        match out.iter_mut().find(|f| f.multiplicity == at_infinity) {
            Some(f) => f.degree += 1,
            None => out.push(SquarefreeFactor {
                multiplicity: at_infinity,
                degree: 1,
            }),
        }
    }
    out.sort_by_key(|f| f.multiplicity);
    out
}

/// Dimension of `{v : Q_k(v) = 0}` when the candidate span is totally
/// isotropic, i.e. closed under addition inside the locus.
fn linear_zero_locus(forms: &[Matrix]) -> Option<usize> {
    let m = forms.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(0);
    }
    let r = forms.len();
    let mut members: Vec<Vec<Rational>> = (0..r).map(|k| linalg::unit_vector(r, k)).collect();
    for t in GENERIC_SAMPLES {
        let mut w = vec![Rational::one(); r];
        for (k, wk) in w.iter_mut().enumerate().skip(1) {
            *wk = rational::int(t.pow(k as u32));
        }
        members.push(w);
    }
    let mut candidates: Vec<Vector> = (0..m).map(|i| linalg::unit_vector(m, i)).collect();
    for w in &members {
        candidates.extend(linalg::nullspace(&combine(forms, w), m));
    }
    let isotropic: Vec<Vector> = candidates
        .into_iter()
        .filter(|v| forms.iter().all(|f| quadratic(f, v).is_zero()))
        .collect();
    let span = RowSpace::span(m, isotropic);
    let rows = span.rows();
    let closed = rows.iter().all(|u| {
        rows.iter()
            .all(|v| forms.iter().all(|f| bilinear(f, u, v).is_zero()))
    });
    closed.then_some(span.dim())
}

/// Linear part of a substitution without constant terms.
fn linear_part(images: &[Polynomial]) -> Result<Matrix> {
    let h = images.len();
    let mut out = Vec::with_capacity(h);
    for p in images {
        if !p.is_param_free() {
            return Err(Error::InvalidPair("substitution must not involve parameters".into()));
        }
        let c0 = p.rational_coefficient(&Monomial::one(h)).unwrap_or_else(Rational::zero);
        if !c0.is_zero() {
            return Err(Error::NonInvertibleLinearPart);
        }
        out.push(
            (0..h)
                .map(|j| {
                    p.rational_coefficient(&Monomial::var(h, j))
                        .unwrap_or_else(Rational::zero)
                })
                .collect(),
        );
    }
    Ok(out)
}

/// Whether `x_i -> images[i]` induces an isomorphism `K[x]/I -> K[x]/J`.
///
/// With an invertible linear part the induced map is surjective onto the
/// local algebra `K[x]/J`, so `φ(I) ⊆ J` and equal colength suffice.
pub fn verify_substitution_isomorphism(i: &Ideal, images: &[Polynomial], j: &Ideal) -> Result<bool> {
    i.ring().check_same(j.ring())?;
    if images.len() != i.ring().nvars() {
        return Err(Error::InvalidPair("one image per variable is required".into()));
    }
    let lin = linear_part(images)?;
    if linalg::determinant(&lin).is_zero() {
        return Err(Error::NonInvertibleLinearPart);
    }
    let target = build_algebra(j)?;
    let Provenance::Ideal { basis: gj, .. } = target.provenance() else {
        unreachable!()
    };
    for g in i.generators() {
        if !gj.contains(&g.substitute_vars(images)?)? {
            return Ok(false);
        }
    }
    let gi = buchberger(i)?;
    if gi.is_unit() {
        return Ok(false);
    }
    match gi.quotient_dim() {
        Ok(d) => Ok(d == target.dim()),
        Err(Error::InfiniteDimensional { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Image ideal under a substitution, for recomputing invariants.
pub fn substitute_ideal(i: &Ideal, images: &[Polynomial]) -> Result<Ideal> {
    let gens = i
        .generators()
        .iter()
        .map(|g| g.substitute_vars(images))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(i.ring(), gens)
}
