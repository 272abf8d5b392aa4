use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::ring::Ring;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A term key: variable monomial first, parameter monomial second.
///
/// Ordering the map by this pair keeps all parameter terms that share a
/// variable monomial contiguous, so the coefficient of a variable monomial
/// (a polynomial in the parameters) is a range of the map.
type Key = (Monomial, Monomial);

/// Multivariate polynomial over `Q[params]`, kept sorted by the ring's
/// monomial order and free of zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Key, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(Monomial::one(ring.nvars()), Monomial::one(ring.nparams()), c);
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i), Rational::one())
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring.var_index(name).ok_or_else(|| Error::UnknownIdentifier {
            pos: 0,
            name: name.to_string(),
        })?;
        Ok(Polynomial::var(ring, i))
    }

    pub fn param(ring: &Arc<Ring>, j: usize) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(
            Monomial::one(ring.nvars()),
            Monomial::var(ring.nparams(), j),
            Rational::one(),
        );
        p
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(m, Monomial::one(ring.nparams()), c);
        p
    }

    /// Builds from `(variable monomial, parameter monomial, coefficient)` triples.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, q, c) in terms {
            p.add_term(m, q, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Monomial, &Rational)> {
        self.terms.iter().map(|((m, q), c)| (m, q, c))
    }

    pub fn is_param_free(&self) -> bool {
        self.terms.keys().all(|(_, q)| q.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back().map(|(m, _)| m)
    }

    /// Leading coefficient, which must be a parameter-free rational.
    pub fn leading_coefficient(&self) -> Result<Option<Rational>> {
        let Some(lm) = self.leading_monomial() else {
            return Ok(None);
        };
        self.rational_coefficient(lm).map(Some).ok_or_else(|| {
            Error::SymbolicLeadingCoefficient(self.coefficient_text(&lm.clone()))
        })
    }

    /// Coefficient of `m` when it is parameter-free (zero if absent).
    pub fn rational_coefficient(&self, m: &Monomial) -> Option<Rational> {
        let mut found = Rational::zero();
        for ((_, q), c) in self.coefficient_range(m) {
            if !q.is_one() {
                return None;
            }
            found = c.clone();
        }
        Some(found)
    }

    fn coefficient_range<'a>(
        &'a self,
        m: &Monomial,
    ) -> impl Iterator<Item = (&'a Key, &'a Rational)> + 'a {
        let lo = (m.clone(), Monomial::one(self.ring.nparams()));
        let m = m.clone();
        self.terms
            .range(lo..)
            .take_while(move |((mm, _), _)| *mm == m)
    }

    /// Coefficient of `m` as a polynomial in `param_ring`, whose variables
    /// are this ring's parameters.
    pub fn coefficient_in(&self, m: &Monomial, param_ring: &Arc<Ring>) -> Polynomial {
        debug_assert_eq!(param_ring.nvars(), self.ring.nparams());
        let mut out = Polynomial::zero(param_ring);
        for ((_, q), c) in self.coefficient_range(m) {
            out.add_term(q.clone(), Monomial::one(param_ring.nparams()), c.clone());
        }
        out
    }

    /// Part multiplying the parameter monomial `q`, as a parameter-free
    /// polynomial in the variables.
    pub fn coefficient_of_param(&self, q: &Monomial) -> Polynomial {
        let ring = self.ring.without_params();
        let mut out = Polynomial::zero(&ring);
        for ((m, qq), c) in &self.terms {
            if qq == q {
                out.add_term(m.clone(), Monomial::one(0), c.clone());
            }
        }
        out
    }

    fn coefficient_text(&self, m: &Monomial) -> String {
        let mut p = Polynomial::zero(&self.ring);
        for ((_, q), c) in self.coefficient_range(m) {
            p.add_term(Monomial::one(self.ring.nvars()), q.clone(), c.clone());
        }
        p.to_string()
    }

    /// Distinct variable monomials, increasing.
    pub fn var_monomials(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = Vec::new();
        for (m, _) in self.terms.keys() {
            if out.last() != Some(m) {
                out.push(m.clone());
            }
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|(m, _)| m.degree() == d)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, q: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((m, q)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += scale * m * other`; `other` must share the variable list and
    /// be parameter-free whenever its parameter list differs.
    pub(crate) fn add_scaled_shifted(
        &mut self,
        other: &Polynomial,
        m: &Monomial,
        scale: &[(Monomial, Rational)],
    ) {
        for ((om, oq), oc) in &other.terms {
            let mm = om.mul(m);
            for (q, c) in scale {
                let qq = if oq.nvars() == q.nvars() { oq.mul(q) } else { q.clone() };
                self.add_term(mm.clone(), qq, oc * c);
            }
        }
    }

    /// Coefficient of `m` as `(parameter monomial, rational)` pairs.
    pub(crate) fn param_coefficient(&self, m: &Monomial) -> Vec<(Monomial, Rational)> {
        self.coefficient_range(m)
            .map(|((_, q), c)| (q.clone(), c.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.0.clone(), k.1.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.0.clone(), k.1.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = Polynomial::zero(&self.ring);
        for ((am, aq), ac) in &self.terms {
            for ((bm, bq), bc) in &other.terms {
                out.add_term(am.mul(bm), aq.mul(bq), ac * bc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces parameter `name` by `value`; the parameter is removed from the ring.
    pub fn substitute_param(&self, name: &str, value: &Rational) -> Result<Polynomial> {
        let j = self
            .ring
            .param_index(name)
            .ok_or_else(|| Error::UnknownIdentifier {
                pos: 0,
                name: name.to_string(),
            })?;
        let remaining: Vec<&String> = self
            .ring
            .params()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, s)| s)
            .collect();
        let ring = self.ring.with_params(&remaining);
        let mut out = Polynomial::zero(&ring);
        for ((m, q), c) in &self.terms {
            let e = q.exponents()[j];
            let rest: Vec<u32> = q
                .exponents()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, e)| *e)
                .collect();
            let factor = num_traits::pow(value.clone(), e as usize);
            out.add_term(m.clone(), Monomial::new(rest), c * factor);
        }
        Ok(out)
    }

    /// Ring homomorphism `x_i -> images[i]`; parameters of `self` are carried
    /// over by name into the images' ring.
    pub fn substitute_vars(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch {
                left: self.ring.describe(),
                right: format!("{} images", images.len()),
            });
        }
        let Some(target) = images.first().map(|p| p.ring.clone()) else {
            // no variables: only constants
            return Ok(self.clone());
        };
        for p in images {
            p.ring.check_same(&target)?;
        }
        let param_map: Vec<usize> = self
            .ring
            .params()
            .iter()
            .map(|name| {
                target.param_index(name).ok_or_else(|| Error::RingMismatch {
                    left: self.ring.describe(),
                    right: target.describe(),
                })
            })
            .collect::<Result<_>>()?;

        // cache powers of each image
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(&target);
        for ((m, q), c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            if !q.is_one() {
                let mut exps = vec![0u32; target.nparams()];
                for (j, e) in q.exponents().iter().enumerate() {
                    exps[param_map[j]] += e;
                }
                term.terms = term
                    .terms
                    .into_iter()
                    .map(|((mm, _), cc)| ((mm, Monomial::new(exps.clone())), cc))
                    .collect();
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a ring with the same variables and a
    /// parameter list containing all parameters used here.
    pub fn in_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        self.ring.check_same_vars(ring)?;
        if self.ring.params() == ring.params() {
            return Ok(Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut out = Polynomial::zero(ring);
        for ((m, q), c) in &self.terms {
            let mut exps = vec![0u32; ring.nparams()];
            for (j, &e) in q.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.ring.params()[j];
                let k = ring.param_index(name).ok_or_else(|| Error::RingMismatch {
                    left: self.ring.describe(),
                    right: ring.describe(),
                })?;
                exps[k] += e;
            }
            out.add_term(m.clone(), Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for ((m, q), c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), q.clone(), c * rational::int(e as i64));
        }
        out
    }

    /// Evaluates a parameter-free polynomial at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::RingMismatch {
                left: self.ring.describe(),
                right: format!("point of length {}", point.len()),
            });
        }
        let mut total = Rational::zero();
        for ((m, q), c) in &self.terms {
            if !q.is_one() {
                return Err(Error::SymbolicLeadingCoefficient(self.to_string()));
            }
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Polynomial> {
        match self.leading_coefficient()? {
            None => Ok(self.clone()),
            Some(lc) => Ok(self.scale(&lc.recip())),
        }
    }

    /// Parameter-free part of the coefficient of each variable monomial,
    /// exposed as a plain map for callers that never use parameters.
    pub fn rational_terms(&self) -> Result<Vec<(Monomial, Rational)>> {
        self.terms
            .iter()
            .map(|((m, q), c)| {
                if q.is_one() {
                    Ok((m.clone(), c.clone()))
                } else {
                    Err(Error::SymbolicLeadingCoefficient(self.to_string()))
                }
            })
            .collect()
    }

    /// LaTeX rendering: `\frac{p}{q}` coefficients, subscripted trailing digits.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, ((m, q), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (e, name) in q.exponents().iter().zip(self.ring.params()) {
                if *e > 0 {
                    factors.push(latex_power(name, *e));
                }
            }
            for (e, name) in m.exponents().iter().zip(self.ring.vars()) {
                if *e > 0 {
                    factors.push(latex_power(name, *e));
                }
            }
            let body = factors.join(" ");
            if body.is_empty() {
                out.push_str(&latex_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&latex_rational(&abs));
                out.push(' ');
                out.push_str(&body);
            }
        }
        out
    }
}

fn latex_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_name(name: &str) -> String {
    let split = name
        .char_indices()
        .rev()
        .take_while(|(_, ch)| ch.is_ascii_digit())
        .last()
        .map(|(i, _)| i);
    match split {
        Some(i) if i > 0 => {
            let base = name[..i].trim_end_matches('_');
            format!("{}_{{{}}}", base, &name[i..])
        }
        _ => name.to_string(),
    }
}

fn latex_power(name: &str, e: u32) -> String {
    if e == 1 {
        latex_name(name)
    } else {
        format!("{}^{{{}}}", latex_name(name), e)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: decreasing order, ` + `/` - ` separators, `*` between factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, ((m, q), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let params = q.format_with(self.ring.params());
            let vars = m.format_with(self.ring.vars());
            let body: Vec<String> = params.into_iter().chain(vars).collect();
            if body.is_empty() {
                write!(f, "{}", rational::format(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", body.join("*"))?;
            } else {
                write!(f, "{}*{}", rational::format(&abs), body.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`Polynomial::checked_add`] for a `Result`.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::rational::{frac, int};

    fn p(text: &str, ring: &Arc<Ring>) -> Polynomial {
        parse_polynomial(text, ring).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::vars_only(&["x", "y"]);
        let a = p("x + y", &r);
        let b = p("x - y", &r);
        assert_eq!(&a * &b, p("x^2 - y^2", &r));
    }

    #[test]
    fn parameter_substitution() {
        let r = Ring::new(&["x", "y"], &["c"]);
        let f = p("y^2 - c*x^4", &r);
        let g = f.substitute_param("c", &int(1)).unwrap();
        assert_eq!(g, p("y^2 - x^4", &Ring::vars_only(&["x", "y"])));
        assert!(g.is_param_free());
    }

    #[test]
    fn square_with_coefficient_variables() {
        // (z1 x + z2 x^2)^2, hand-expanded
        let r = Ring::vars_only(&["x", "z1", "z2"]);
        let f = p("z1*x + z2*x^2", &r).pow(2);
        assert_eq!(f, p("z1^2*x^2 + 2*z1*z2*x^3 + z2^2*x^4", &r));
    }

    #[test]
    fn substitution_examples() {
        let r = Ring::vars_only(&["x", "y"]);
        let images = [p("x + y", &r), p("x - y", &r)];
        assert_eq!(p("x*y", &r).substitute_vars(&images).unwrap(), p("x^2 - y^2", &r));
        let expected = &p("x + y", &r).pow(2) * &p("x - y", &r);
        assert_eq!(p("x^2*y", &r).substitute_vars(&images).unwrap(), expected);

        let rx = Ring::new(&["x"], &["a2"]);
        let img = [p("x + a2*x^2", &rx)];
        let x = p("x", &Ring::vars_only(&["x"]));
        assert_eq!(x.substitute_vars(&img).unwrap(), p("x + a2*x^2", &rx));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = p("x", &Ring::vars_only(&["x", "y"]));
        let b = p("x", &Ring::vars_only(&["x", "z"]));
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn canonical_printing() {
        let r = Ring::new(&["x", "y"], &["c"]);
        assert_eq!(p("-x*y + y^2 - x^3", &r).to_string(), "-x^3 + y^2 - x*y");
        assert_eq!(p("1/2*x - c*x^4", &r).to_string(), "-c*x^4 + 1/2*x");
        assert_eq!(p("0", &r).to_string(), "0");
        assert_eq!(p("-2/3", &r).to_string(), "-2/3");
    }

    #[test]
    fn latex_rendering() {
        let r = Ring::vars_only(&["z0", "z1", "w1"]);
        let f = p("z0^2*z1 - 1/2*z0*w1^2 + 1/3*z1^3", &r);
        assert_eq!(
            f.to_latex(),
            "-\\frac{1}{2} z_{0} w_{1}^{2} + \\frac{1}{3} z_{1}^{3} + z_{0}^{2} z_{1}"
        );
    }

    #[test]
    fn evaluate_and_derivative() {
        let r = Ring::vars_only(&["x", "y"]);
        let f = p("x^2*y - 1/2*y", &r);
        assert_eq!(f.evaluate(&[int(2), int(3)]).unwrap(), frac(21, 2));
        assert_eq!(f.derivative(0), p("2*x*y", &r));
    }
}
