//! Buchberger's algorithm, normal forms and standard monomials.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{parse_ideal, Monomial, Polynomial, Ring};
use crate::rational::Rational;

/// An ideal given by generators in a common ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            g.ring().check_same(ring)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// Parses a comma-separated generator list.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        Ideal::new(ring, parse_ideal(text, ring)?)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Replaces a parameter by a rational value in every generator.
    pub fn substitute_param(&self, name: &str, value: &Rational) -> Result<Ideal> {
        let gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.substitute_param(name, value))
            .collect::<Result<_>>()?;
        let ring = match gens.first() {
            Some(g) => g.ring().clone(),
            None => {
                let rest: Vec<&String> =
                    self.ring.params().iter().filter(|p| p.as_str() != name).collect();
                self.ring.with_params(&rest)
            }
        };
        Ideal::new(&ring, gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// A reduced Groebner basis, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    elements: Vec<Polynomial>,
}

struct Lead {
    mono: Monomial,
    coeff: Rational,
}

fn lead(p: &Polynomial) -> Result<Lead> {
    let mono = p.leading_monomial().expect("nonzero").clone();
    let coeff = p.leading_coefficient()?.expect("nonzero");
    Ok(Lead { mono, coeff })
}

/// Fully reduces `p` by `basis`; every basis element must have a rational
/// leading coefficient.
fn reduce(p: &Polynomial, basis: &[(Polynomial, Lead)]) -> Polynomial {
    let mut p = p.clone();
    let mut rem = Polynomial::zero(p.ring());
    while let Some(lm) = p.leading_monomial().cloned() {
        let coeff = p.param_coefficient(&lm);
        match basis.iter().find(|(_, l)| l.mono.divides(&lm)) {
            Some((g, l)) => {
                let shift = l.mono.quotient_of(&lm).expect("divides");
                let scale: Vec<(Monomial, Rational)> = coeff
                    .into_iter()
                    .map(|(q, c)| (q, -(c / &l.coeff)))
                    .collect();
                p.add_scaled_shifted(g, &shift, &scale);
            }
            None => {
                for (q, c) in coeff {
                    rem.add_term(lm.clone(), q.clone(), c.clone());
                    p.add_term(lm.clone(), q, -c);
                }
            }
        }
    }
    rem
}

fn s_polynomial(f: &(Polynomial, Lead), g: &(Polynomial, Lead)) -> Polynomial {
    let l = f.1.mono.lcm(&g.1.mono);
    let mut s = Polynomial::zero(f.0.ring());
    let one = Monomial::one(f.0.ring().nparams());
    s.add_scaled_shifted(
        &f.0,
        &f.1.mono.quotient_of(&l).expect("divides lcm"),
        &[(one.clone(), f.1.coeff.recip())],
    );
    s.add_scaled_shifted(
        &g.0,
        &g.1.mono.quotient_of(&l).expect("divides lcm"),
        &[(one, -g.1.coeff.recip())],
    );
    s
}

/// Reduced Groebner basis by Buchberger's algorithm with the normal
/// selection strategy and the coprime criterion.
pub fn buchberger(ideal: &Ideal) -> Result<GroebnerBasis> {
    let ring = ideal.ring().clone();
    let mut basis: Vec<(Polynomial, Lead)> = Vec::new();
    for g in ideal.generators() {
        let l = lead(g)?;
        basis.push((g.clone(), l));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties by index for determinism
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = basis[a.0].1.mono.lcm(&basis[a.1].1.mono);
                let lb = basis[b.0].1.mono.lcm(&basis[b.1].1.mono);
                la.cmp(&lb).then(a.cmp(b))
            })
            .expect("non-empty");
        let (i, j) = pairs.swap_remove(k);
        if basis[i].1.mono.is_coprime(&basis[j].1.mono) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        let l = lead(&r)?;
        let new = basis.len();
        basis.push((r, l));
        for i in 0..new {
            pairs.push((i, new));
        }
    }
    Ok(GroebnerBasis {
        ring,
        elements: interreduce(basis)?,
    })
}

fn interreduce(basis: Vec<(Polynomial, Lead)>) -> Result<Vec<Polynomial>> {
    // minimal basis: drop elements whose leading monomial is a multiple of another's
    let mut minimal: Vec<(Polynomial, Lead)> = Vec::new();
    for (idx, (p, l)) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(jdx, (_, m))| {
            jdx != idx && m.mono.divides(&l.mono) && (m.mono != l.mono || jdx < idx)
        });
        if !redundant {
            minimal.push((p.clone(), Lead { mono: l.mono.clone(), coeff: l.coeff.clone() }));
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<(Polynomial, Lead)> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, (p, l))| (p.clone(), Lead { mono: l.mono.clone(), coeff: l.coeff.clone() }))
            .collect();
        let (p, l) = &minimal[idx];
        // keep the leading term, reduce the tail
        let lt = Polynomial::monomial(p.ring(), l.mono.clone(), l.coeff.clone());
        let tail = reduce(&(p - &lt), &others);
        out.push((&lt + &tail).monic()?);
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(out)
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    /// Normal form of `p`; `p` may live in a ring with the same variables
    /// and extra parameters.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same_vars(p.ring())?;
        let basis: Vec<(Polynomial, Lead)> = self
            .elements
            .iter()
            .map(|g| {
                let g = if g.ring() == p.ring() { g.clone() } else { g.in_ring(p.ring())? };
                let l = lead(&g)?;
                Ok((g, l))
            })
            .collect::<Result<_>>()?;
        Ok(reduce(p, &basis))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Monomials outside the leading-term ideal, increasing.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let lms = self.leading_monomials();
        let n = self.ring.nvars();
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let bound = lms
                .iter()
                .filter(|m| m.is_one() || m.pure_power_of() == Some(i))
                .map(|m| m.exponents()[i])
                .min();
            match bound {
                Some(b) => bounds.push(b),
                None => {
                    return Err(Error::InfiniteDimensional {
                        variable: self.ring.vars()[i].clone(),
                    })
                }
            }
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        'outer: loop {
            let m = Monomial::new(exps.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            for i in 0..n {
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    continue 'outer;
                }
                exps[i] = 0;
            }
            break;
        }
        if n == 0 && !self.is_unit() {
            out = vec![Monomial::one(0)];
        }
        out.sort();
        Ok(out)
    }

    /// Dimension of the quotient ring.
    pub fn quotient_dim(&self) -> Result<usize> {
        Ok(self.standard_monomials()?.len())
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.elements.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", gens.join(", "))
    }
}

/// Equality of ideals via their reduced Groebner bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.ring().check_same(b.ring())?;
    Ok(buchberger(a)?.elements == buchberger(b)?.elements)
}

/// `a ⊆ b`.
pub fn ideal_contained(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.ring().check_same(b.ring())?;
    let g = buchberger(b)?;
    for p in a.generators() {
        if !g.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}
