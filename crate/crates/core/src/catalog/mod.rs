//! Registry of the Gorenstein algebras behind low-codimension hypersurfaces,
//! with a verification harness.

pub mod template;

use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{ideal_equal, Ideal};
use crate::hassett::{default_hpair, essential_variable_count, hypersurface_equation, HPair, HomogeneousForm};
use crate::invariants::{pencil_signature, squaring_pencil, verify_substitution_isomorphism, PencilSignature};
use crate::localalgebra::{build_algebra, validate_hs_shape, FiniteAlgebra};
use crate::poly::{parse_polynomial, Polynomial, Ring};
use crate::rational::{self, Rational};
use crate::transitivity::{complement_orbit_rank, family_constraints, relations_equivalent, stabilizer_dimension, ParametricFamily};
use template::{env_n, evaluate, render, render_list};

/// Default upper bound on `n` for batch verification.
pub const DEFAULT_MAX_N: u32 = 14;

const BUILTIN: &str = include_str!("catalog.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct FamilySpec {
    pub params: Vec<String>,
    pub images: Vec<String>,
    /// Expected generators of the constraint ideal; `None` skips the comparison.
    pub relations: Option<Vec<String>>,
    pub n_min: Option<u32>,
    pub dim_g: String,
    pub stabilizer: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenSpec {
    pub n: u32,
    pub c: Option<String>,
    pub labels: Option<Vec<String>>,
    pub equation: Option<String>,
    #[serde(default)]
    pub slices: Vec<(usize, String)>,
    pub erratum: Option<String>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub name: String,
    pub vars: Vec<String>,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub samples: Vec<String>,
    pub generators: Vec<String>,
    pub equivalent: Option<Vec<String>>,
    pub original: Option<Vec<String>>,
    pub original_substitution: Option<Vec<String>>,
    pub n_min: u32,
    pub n_max: Option<u32>,
    #[serde(default)]
    pub exclude: Vec<u32>,
    pub count_from: Option<u32>,
    #[serde(default)]
    pub count_exclude: Vec<u32>,
    #[serde(default = "yes")]
    pub counted: bool,
    pub codim: u32,
    pub hilbert_samuel: Vec<usize>,
    #[serde(default)]
    pub infinite: bool,
    pub coordinates: Option<Vec<String>>,
    pub labels: Option<Vec<String>>,
    pub note: Option<String>,
    pub family: Option<FamilySpec>,
    #[serde(default)]
    pub golden: Vec<GoldenSpec>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CountSpec {
    pub codim: u32,
    pub cells: Vec<(u32, String)>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CertificateSpec {
    pub name: String,
    pub vars: Vec<String>,
    pub source: Option<String>,
    pub target: Option<String>,
    pub source_generators: Option<Vec<String>>,
    pub target_generators: Option<Vec<String>>,
    pub n: u32,
    pub images: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Catalog {
    #[serde(rename = "counts")]
    counts: Vec<CountSpec>,
    #[serde(rename = "entry")]
    entries: Vec<CatalogEntry>,
    #[serde(rename = "certificate", default)]
    certificates: Vec<CertificateSpec>,
}

/// Parameter value for entries with a parameter (`c`).
pub type ParamValue = Option<Rational>;

impl CatalogEntry {
    pub fn valid_at(&self, n: u32) -> bool {
        n >= self.n_min && self.n_max.is_none_or(|m| n <= m) && !self.exclude.contains(&n)
    }

    pub fn counted_at(&self, n: u32) -> bool {
        self.counted
            && self.valid_at(n)
            && n >= self.count_from.unwrap_or(self.n_min)
            && !self.count_exclude.contains(&n)
    }

    pub fn degree(&self, n: u32) -> u32 {
        n - self.codim
    }

    /// Stored prefix padded with ones to total `n + 1`.
    pub fn expected_hilbert_samuel(&self, n: u32) -> Vec<usize> {
        let mut hs = self.hilbert_samuel.clone();
        let sum: usize = hs.iter().sum();
        hs.extend(std::iter::repeat_n(1, (n as usize + 1).saturating_sub(sum)));
        hs
    }

    /// Parameter values to test (`[None]` for rigid entries).
    pub fn parameter_samples(&self) -> Result<Vec<ParamValue>> {
        if self.params.is_empty() {
            return Ok(vec![None]);
        }
        self.samples
            .iter()
            .map(|s| {
                rational::parse(s)
                    .map(Some)
                    .ok_or_else(|| Error::Catalog(format!("bad sample `{s}` in {}", self.id)))
            })
            .collect()
    }

    fn check_args(&self, n: u32, c: &ParamValue) -> Result<()> {
        if !self.valid_at(n) {
            return Err(Error::OutOfRange { id: self.id.clone(), n });
        }
        if let Some(p) = self.params.first() {
            match c {
                None => return Err(Error::MissingParameter(p.clone())),
                Some(v) if v.is_zero() => return Err(Error::ZeroParameter(p.clone())),
                _ => {}
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Arc<Ring> {
        Ring::vars_only(&self.vars)
    }

    fn ideal_from(&self, templates: &[String], n: u32, c: &ParamValue) -> Result<Ideal> {
        let ring = Ring::new(&self.vars, &self.params);
        let gens = render_list(templates, &env_n(n))?
            .iter()
            .map(|t| parse_polynomial(t, &ring))
            .collect::<Result<Vec<_>>>()?;
        let mut ideal = Ideal::new(&ring, gens)?;
        if let (Some(p), Some(v)) = (self.params.first(), c) {
            ideal = ideal.substitute_param(p, v)?;
        }
        Ok(ideal)
    }

    pub fn instantiate(&self, n: u32, c: &ParamValue) -> Result<Ideal> {
        self.check_args(n, c)?;
        self.ideal_from(&self.generators, n, c)
    }

    pub fn build(&self, n: u32, c: &ParamValue) -> Result<FiniteAlgebra> {
        build_algebra(&self.instantiate(n, c)?)
    }

    /// Pair on the stored coordinate basis, or the default pair.
    pub fn hpair(&self, a: &FiniteAlgebra, n: u32, labels: Option<&[String]>) -> Result<HPair> {
        let env = env_n(n);
        let Some(coords) = &self.coordinates else {
            let h = default_hpair(a)?;
            return match labels {
                Some(l) => h.relabel(render_list(l, &env)?),
                None => Ok(h),
            };
        };
        let basis = render_list(coords, &env)?
            .iter()
            .map(|t| a.evaluate(&parse_polynomial(t, a.ring())?))
            .collect::<Result<Vec<_>>>()?;
        let labels = match labels.or(self.labels.as_deref()) {
            Some(l) => render_list(l, &env)?,
            None => (1..=basis.len()).map(|i| format!("z{i}")).collect(),
        };
        HPair::with_labels(a.clone(), basis, labels)
    }

    pub fn family_at(&self, n: u32) -> Option<&FamilySpec> {
        self.family
            .as_ref()
            .filter(|f| n >= f.n_min.unwrap_or(self.n_min))
    }

    pub fn parametric_family(&self, spec: &FamilySpec, n: u32) -> Result<ParametricFamily> {
        let env = env_n(n);
        let params = render_list(&spec.params, &env)?;
        let images = spec
            .images
            .iter()
            .map(|t| render(t, &env))
            .collect::<Result<Vec<_>>>()?;
        ParametricFamily::parse(&self.vars, &params, &images)
    }

    /// Expected relations, as polynomials in the family's parameter ring.
    pub fn expected_relations(&self, spec: &FamilySpec, fam: &ParametricFamily, n: u32) -> Result<Option<Vec<Polynomial>>> {
        let Some(rels) = &spec.relations else {
            return Ok(None);
        };
        let ring = fam.param_ring();
        let env = env_n(n);
        rels.iter()
            .map(|t| parse_polynomial(&render(t, &env)?, &ring))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }
}

/// Whether `form` equals the form written in `expected` (same variables).
pub fn equation_matches(form: &HomogeneousForm, expected: &str) -> Result<bool> {
    let parsed = HomogeneousForm::parse(expected, form.variables())?;
    Ok(parsed.polynomial() == form.polynomial())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub n: u32,
    pub c: Option<String>,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl EntryReport {
    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn expect<T: std::fmt::Debug + PartialEq>(&mut self, name: &str, got: T, want: T) {
        let passed = got == want;
        let detail = if passed {
            format!("{got:?}")
        } else {
            format!("got {got:?}, expected {want:?}")
        };
        self.push(name, passed, detail);
    }

    fn error(&mut self, name: &str, e: &Error) {
        self.push(name, false, e.to_string());
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    None,
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expected::None => write!(f, "--"),
            Expected::Finite(k) => write!(f, "{k}"),
            Expected::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub codim: u32,
    pub degree: u32,
    pub entries: Vec<String>,
    pub rigid: usize,
    pub infinite_family: bool,
    pub expected: Expected,
    pub matches: bool,
    pub distinctions: Vec<String>,
}

impl CountRow {
    pub fn count(&self) -> Expected {
        if self.infinite_family {
            Expected::Infinite
        } else if self.rigid == 0 {
            Expected::None
        } else {
            Expected::Finite(self.rigid)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: u32,
    pub rows: Vec<CountRow>,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub name: String,
    pub verified: bool,
    pub detail: String,
}

impl Catalog {
    pub fn from_toml(text: &str) -> Result<Catalog> {
        let cat: Catalog = toml::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        for e in &cat.entries {
            let n = e.n_min;
            let c = e.parameter_samples()?.into_iter().next().flatten();
            e.instantiate(n, &c)?;
            let sum = e.expected_hilbert_samuel(n).iter().sum::<usize>();
            if sum != n as usize + 1 {
                return Err(Error::Catalog(format!("{}: HS template exceeds n + 1", e.id)));
            }
        }
        Ok(cat)
    }

    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::from_toml(BUILTIN).expect("built-in catalog is valid"))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEntry(id.to_string()))
    }

    pub fn certificates(&self) -> &[CertificateSpec] {
        &self.certificates
    }

    pub fn instantiate(&self, id: &str, n: u32, c: &ParamValue) -> Result<Ideal> {
        self.entry(id)?.instantiate(n, c)
    }

    /// Expected number of classes of degree `n - codim`.
    pub fn expected_count(&self, n: u32, codim: u32) -> Expected {
        let Some(row) = self.counts.iter().find(|r| r.codim == codim) else {
            return Expected::None;
        };
        match row.cells.iter().rev().find(|(from, _)| n >= *from) {
            None => Expected::None,
            Some((_, v)) if v == "inf" => Expected::Infinite,
            Some((_, v)) => v.parse().map_or(Expected::None, Expected::Finite),
        }
    }

    pub fn count_codims(&self) -> Vec<u32> {
        self.counts.iter().map(|r| r.codim).collect()
    }

    pub fn verify_entry(&self, id: &str, n: u32, c: &ParamValue) -> Result<EntryReport> {
        let entry = self.entry(id)?;
        entry.check_args(n, c)?;
        let mut checks = Checks(Vec::new());
        run_checks(entry, n, c, &mut checks);
        let passed = checks.0.iter().all(|c| c.passed);
        Ok(EntryReport {
            id: id.to_string(),
            n,
            c: c.as_ref().map(rational::format),
            passed,
            checks: checks.0,
        })
    }

    /// All `(entry, n, c)` combinations with `lo <= n <= hi`, in catalog order.
    pub fn jobs(&self, lo: u32, hi: u32) -> Vec<(String, u32, ParamValue)> {
        let mut out = Vec::new();
        for e in &self.entries {
            for n in lo..=hi {
                if !e.valid_at(n) {
                    continue;
                }
                for c in e.parameter_samples().unwrap_or_default() {
                    out.push((e.id.clone(), n, c));
                }
            }
        }
        out
    }

    /// Verifies every job in parallel; results follow `jobs` order.
    pub fn verify_range(&self, lo: u32, hi: u32) -> Vec<EntryReport> {
        self.jobs(lo, hi)
            .par_iter()
            .map(|(id, n, c)| {
                self.verify_entry(id, *n, c).unwrap_or_else(|e| EntryReport {
                    id: id.clone(),
                    n: *n,
                    c: c.as_ref().map(rational::format),
                    passed: false,
                    checks: vec![Check {
                        name: "instantiate".into(),
                        passed: false,
                        detail: e.to_string(),
                    }],
                })
            })
            .collect()
    }

    pub fn verify_counts(&self, n: u32) -> CountReport {
        let rows = self
            .count_codims()
            .into_iter()
            .map(|codim| {
                let members: Vec<&CatalogEntry> = self
                    .entries
                    .iter()
                    .filter(|e| e.codim == codim && e.counted_at(n))
                    .collect();
                let rigid = members.iter().filter(|e| !e.infinite).count();
                let infinite_family = members.iter().any(|e| e.infinite);
                let expected = self.expected_count(n, codim);
                let mut row = CountRow {
                    codim,
                    degree: n.saturating_sub(codim),
                    entries: members.iter().map(|e| e.id.clone()).collect(),
                    rigid,
                    infinite_family,
                    expected,
                    matches: false,
                    distinctions: distinctions(&members, n),
                };
                row.matches = row.count() == expected;
                row
            })
            .collect();
        CountReport { n, rows }
    }

    pub fn verify_certificates(&self) -> Vec<CertificateReport> {
        self.certificates.iter().map(|c| self.verify_certificate(c)).collect()
    }

    fn certificate_ideal(&self, id: &Option<String>, gens: &Option<Vec<String>>, cert: &CertificateSpec) -> Result<Ideal> {
        match (id, gens) {
            (Some(id), _) => self.instantiate(id, cert.n, &None),
            (None, Some(g)) => {
                let ring = Ring::vars_only(&cert.vars);
                let polys = render_list(g, &env_n(cert.n))?
                    .iter()
                    .map(|t| parse_polynomial(t, &ring))
                    .collect::<Result<Vec<_>>>()?;
                Ideal::new(&ring, polys)
            }
            (None, None) => Err(Error::Catalog(format!("certificate `{}` has no ideal", cert.name))),
        }
    }

    fn verify_certificate(&self, cert: &CertificateSpec) -> CertificateReport {
        let run = || -> Result<bool> {
            let source = self.certificate_ideal(&cert.source, &cert.source_generators, cert)?;
            let target = self.certificate_ideal(&cert.target, &cert.target_generators, cert)?;
            let ring = Ring::vars_only(&cert.vars);
            let images = cert
                .images
                .iter()
                .map(|t| parse_polynomial(t, &ring))
                .collect::<Result<Vec<_>>>()?;
            verify_substitution_isomorphism(&source, &images, &target)
        };
        let (verified, detail) = match run() {
            Ok(v) => (v, if v { "isomorphism certified" } else { "substitution does not map the ideals" }.into()),
            Err(e) => (false, e.to_string()),
        };
        CertificateReport {
            name: cert.name.clone(),
            verified,
            detail,
        }
    }
}

fn run_checks(entry: &CatalogEntry, n: u32, c: &ParamValue, checks: &mut Checks) {
    let ideal = match entry.instantiate(n, c) {
        Ok(i) => i,
        Err(e) => return checks.error("instantiate", &e),
    };
    let a = match build_algebra(&ideal) {
        Ok(a) => a,
        Err(e) => return checks.error("build", &e),
    };
    checks.expect("dimension", a.dim(), n as usize + 1);
    let hs = a.hilbert_samuel();
    checks.push(
        "hs_shape",
        validate_hs_shape(&hs).is_valid(),
        format!("{hs:?}"),
    );
    checks.expect("hilbert_samuel", hs, entry.expected_hilbert_samuel(n));
    checks.expect("gorenstein", a.is_gorenstein(), true);
    if !a.is_gorenstein() {
        return;
    }
    match default_hpair(&a) {
        Ok(h) => {
            let d = h.degree() as u32;
            checks.expect("degree", d, entry.degree(n));
            checks.push("degree_bound", d <= n, format!("{d} <= {n}"));
            let f = hypersurface_equation(&h);
            checks.expect("essential_variables", essential_variable_count(&f), n as usize + 1);
        }
        Err(e) => checks.error("hpair", &e),
    }
    match complement_orbit_rank(&a) {
        Ok(r) => checks.expect("orbit_rank", r.orbit_rank, n as usize - 1),
        Err(e) => checks.error("orbit_rank", &e),
    }
    for g in entry.golden.iter().filter(|g| g.n == n) {
        if let Some(gc) = &g.c {
            if c.as_ref().map(rational::format).as_deref() != Some(gc.as_str()) {
                continue;
            }
        }
        match golden_check(entry, &a, n, g) {
            Ok((ok, detail)) => checks.push("golden", ok, detail),
            Err(e) => checks.error("golden", &e),
        }
    }
    if let Some(spec) = entry.family_at(n) {
        if let Err(e) = family_checks(entry, &a, spec, n, checks) {
            checks.error("family", &e);
        }
    }
    if let Some(eq) = &entry.equivalent {
        match entry.ideal_from(eq, n, c).and_then(|j| ideal_equal(&ideal, &j)) {
            Ok(ok) => checks.push("equivalent_presentation", ok, ""),
            Err(e) => checks.error("equivalent_presentation", &e),
        }
    }
    if let (Some(orig), Some(sub)) = (&entry.original, &entry.original_substitution) {
        let run = || -> Result<bool> {
            let i = entry.ideal_from(orig, n, c)?;
            let images = render_list(sub, &env_n(n))?
                .iter()
                .map(|t| parse_polynomial(t, ideal.ring()))
                .collect::<Result<Vec<_>>>()?;
            verify_substitution_isomorphism(&i, &images, &ideal)
        };
        match run() {
            Ok(ok) => checks.push("original_presentation", ok, ""),
            Err(e) => checks.error("original_presentation", &e),
        }
    }
}

fn golden_check(entry: &CatalogEntry, a: &FiniteAlgebra, n: u32, g: &GoldenSpec) -> Result<(bool, String)> {
    let h = entry.hpair(a, n, g.labels.as_deref())?;
    let f = hypersurface_equation(&h);
    let mut ok = true;
    if let Some(eq) = &g.equation {
        ok &= equation_matches(&f, eq)?;
    }
    for (k, text) in &g.slices {
        ok &= equation_matches(&f.z0_slice(*k), text)?;
    }
    Ok((ok, f.to_text()))
}

fn family_checks(entry: &CatalogEntry, a: &FiniteAlgebra, spec: &FamilySpec, n: u32, checks: &mut Checks) -> Result<()> {
    let fam = entry.parametric_family(spec, n)?;
    let rels = family_constraints(a, &fam)?;
    let got: Vec<Polynomial> = rels.iter().map(|r| r.polynomial.clone()).collect();
    let shown: Vec<String> = rels.iter().map(ToString::to_string).collect();
    if let Some(want) = entry.expected_relations(spec, &fam, n)? {
        let ok = relations_equivalent(&got, &want)?;
        checks.push("family_constraints", ok, shown.join("; "));
    }
    let h = default_hpair(a)?;
    let s = stabilizer_dimension(&h, &fam)?;
    let dim_g = evaluate(&spec.dim_g, &env_n(n))? as usize;
    checks.expect("family_dim_g", s.dim_g, dim_g);
    checks.expect("stabilizer", s.stabilizer_dim, spec.stabilizer);
    checks.expect("orbit_dim", s.orbit_dim, n as usize - 1);
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Fingerprint {
    hs: Vec<usize>,
    pencil: Option<PencilSignature>,
}

fn fingerprint(e: &CatalogEntry, n: u32) -> Option<Fingerprint> {
    let c = e.parameter_samples().ok()?.into_iter().next().flatten();
    let a = e.build(n, &c).ok()?;
    Some(Fingerprint {
        hs: a.hilbert_samuel(),
        pencil: squaring_pencil(&a).ok().map(|p| pencil_signature(&p)),
    })
}

fn distinctions(members: &[&CatalogEntry], n: u32) -> Vec<String> {
    let prints: Vec<Option<Fingerprint>> = members.iter().map(|e| fingerprint(e, n)).collect();
    let mut out = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let how = match (&prints[i], &prints[j]) {
                (Some(p), Some(q)) if p.hs != q.hs => "hilbert_samuel",
                (Some(p), Some(q)) if p.pencil != q.pencil => "pencil_signature",
                _ => "distinct per classification",
            };
            out.push(format!("{} / {}: {how}", members[i].id, members[j].id));
        }
    }
    out
}
