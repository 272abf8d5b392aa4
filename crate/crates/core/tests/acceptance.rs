//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;

use rayon::prelude::*;

use htlab::catalog::{equation_matches, Catalog, EntryReport, Expected, ParamValue, DEFAULT_MAX_N};
use htlab::hassett::point_test;
use htlab::invariants::{pencil_signature, squaring_pencil, verify_substitution_isomorphism, ZeroLocus};
use htlab::localalgebra::{power_span_check, validate_hs_shape};
use htlab::transitivity::derivation_space;
use htlab::{essential_variable_count, hypersurface_equation, ideal_equal, parse_polynomial, rational, Ideal, Ring};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            passed: true,
            detail: summary,
        }
    } else {
        Outcome {
            passed: false,
            detail: failures.join("; "),
        }
    }
}

fn max_n() -> u32 {
    std::env::var("HTLAB_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

/// Displays transcribed term for term, with the coordinate names used in
/// the text.
fn golden_equations(cat: &Catalog) -> Outcome {
    let cases: [(&str, u32, &str); 4] = [
        (
            "DegNm1",
            4,
            "z0^2*z3 - z0*z1*z2 - 1/2*z0*z4^2 + 1/3*z1^3",
        ),
        (
            "DegNm1",
            6,
            "z0^4*z5 - z0^3*z1*z4 - z0^3*z2*z3 - 1/2*z0^2*z6^2 + z0^2*z1^2*z3 + z0^2*z1*z2^2 - z0*z1^3*z2 + 1/5*z1^5",
        ),
        (
            "A0_2",
            5,
            "z0^2*z3 - z0*(z1*z2 + w1*w2) + 1/3*(z1^3 + w1^3 + 3*z1*w1^2)",
        ),
        (
            "A0_2",
            6,
            "z0^3*z4 - 1/2*z0^2*(z2^2 + 2*z1*z3 + 2*w1*w2) + 1/3*z0*(w1^3 + 2*z1*w1^2 + 3*z1^2*z2) - 1/4*z1^4",
        ),
    ];
    let mut failures = Vec::new();
    let mut checked = 0;
    for (id, n, display) in cases {
        checked += 1;
        let result = (|| {
            let e = cat.entry(id)?;
            let a = e.build(n, &None)?;
            let h = e.hpair(&a, n, None)?;
            let f = hypersurface_equation(&h);
            match equation_matches(&f, display) {
                Ok(true) => Ok(None),
                Ok(false) => Ok(Some(format!("{id} n={n}: computed {f}"))),
                Err(err) => Ok(Some(format!("{id} n={n}: display rejected ({err}); computed {f}"))),
            }
        })();
        match result {
            Ok(None) => {}
            Ok(Some(msg)) => failures.push(msg),
            Err::<_, htlab::Error>(err) => failures.push(format!("{id} n={n}: {err}")),
        }
    }
    for c in ["1", "2"] {
        checked += 1;
        let cv: ParamValue = rational::parse(c);
        let result = (|| {
            let e = cat.entry("A5_9")?;
            let a = e.build(9, &cv)?;
            let h = e.hpair(&a, 9, None)?;
            let f = hypersurface_equation(&h);
            let mut bad = Vec::new();
            for (k, want) in [(6, "-1/6*z1^6"), (5, "z1^4*z2")] {
                let slice = f.z0_slice(k);
                if !equation_matches(&slice, want)? {
                    bad.push(format!("A5_9 c={c}: f{k} = {slice}"));
                }
            }
            Ok::<_, htlab::Error>(bad)
        })();
        match result {
            Ok(bad) => failures.extend(bad),
            Err(err) => failures.push(format!("A5_9 c={c}: {err}")),
        }
    }
    outcome(failures, format!("{checked} displays reproduced"))
}

fn degree_bounds(cat: &Catalog, reports: &[EntryReport]) -> Outcome {
    let mut failures = Vec::new();
    let e = cat.entry("DegN").expect("entry");
    for n in 2..=8u32 {
        let r = (|| {
            let a = e.build(n, &None)?;
            let h = e.hpair(&a, n, None)?;
            let f = hypersurface_equation(&h);
            Ok::<_, htlab::Error>((f.degree(), essential_variable_count(&f)))
        })();
        match r {
            Ok((d, ess)) if d == n as usize && ess == n as usize + 1 => {}
            Ok((d, ess)) => failures.push(format!("x^{} : degree {d}, essential {ess}", n + 1)),
            Err(err) => failures.push(format!("DegN n={n}: {err}")),
        }
    }
    for r in reports {
        match r.check("degree_bound") {
            Some(c) if c.passed => {}
            Some(c) => failures.push(format!("{} n={}: {}", r.id, r.n, c.detail)),
            None => failures.push(format!("{} n={}: no degree computed", r.id, r.n)),
        }
    }
    outcome(failures, format!("degree n for x^(n+1), n=2..8; degree <= n for {} pairs", reports.len()))
}

fn check_names(reports: &[EntryReport], names: &[&str]) -> Vec<String> {
    let mut failures = Vec::new();
    for r in reports {
        for name in names {
            match r.check(name) {
                Some(c) if c.passed => {}
                Some(c) => failures.push(format!("{} n={} {name}: {}", r.id, r.n, c.detail)),
                None => failures.push(format!("{} n={} {name}: not run", r.id, r.n)),
            }
        }
    }
    failures
}

fn hilbert_samuel(reports: &[EntryReport]) -> Outcome {
    let failures = check_names(reports, &["dimension", "hilbert_samuel", "gorenstein"]);
    outcome(failures, format!("{} instances", reports.len()))
}

fn transitivity(reports: &[EntryReport]) -> Outcome {
    let mut failures = check_names(reports, &["orbit_rank"]);
    let required: [(&str, &[u32]); 4] = [
        ("A0_2", &[6, 7, 8]),
        ("A5_n", &[10, 11, 12]),
        ("A6_n", &[10, 11, 12]),
        ("A4_n", &[10, 11, 12]),
    ];
    let mut relation_checks = 0;
    for (id, ns) in required {
        for &n in ns {
            let Some(r) = reports.iter().find(|r| r.id == id && r.n == n) else {
                failures.push(format!("{id} n={n}: not verified"));
                continue;
            };
            relation_checks += 1;
            match r.check("family_constraints") {
                Some(c) if c.passed => {}
                Some(c) => failures.push(format!("{id} n={n}: {}", c.detail)),
                None => failures.push(format!("{id} n={n}: no relations compared")),
            }
        }
    }
    for r in reports.iter().filter(|r| r.check("family_constraints").is_some()) {
        if let Some(c) = r.check("family_constraints").filter(|c| !c.passed) {
            failures.push(format!("{} n={}: {}", r.id, r.n, c.detail));
        }
    }
    outcome(
        failures,
        format!("rank n-1 on {} instances; {relation_checks} relation sets", reports.len()),
    )
}

fn isomorphisms(cat: &Catalog) -> Outcome {
    let mut failures = Vec::new();
    match cat.verify_certificates().iter().find(|c| c.name == "B3 from B1") {
        Some(c) if c.verified => {}
        Some(c) => failures.push(format!("B3 from B1: {}", c.detail)),
        None => failures.push("B3 from B1: no certificate".into()),
    }
    let direct = (|| {
        let b1 = cat.instantiate("B1_6", 6, &None)?;
        let b3 = cat.instantiate("B3", 6, &None)?;
        let ring = b1.ring().clone();
        let images = ["x + y", "x - y", "2*z"]
            .iter()
            .map(|t| parse_polynomial(t, &ring))
            .collect::<htlab::Result<Vec<_>>>()?;
        verify_substitution_isomorphism(&b1, &images, &b3)
    })();
    if !matches!(direct, Ok(true)) {
        failures.push(format!("B1(x+y, x-y, 2z) = B3: {direct:?}"));
    }
    let ring = Ring::vars_only(&["x", "y"]);
    for n in 6..=max_n() {
        let a = Ideal::parse(&ring, &format!("y^2 - x^2*y - x^{}, x^2*y", n - 3)).expect("ideal");
        let b = Ideal::parse(&ring, &format!("y^2 - x^{}, x^2*y", n - 3)).expect("ideal");
        if !matches!(ideal_equal(&a, &b), Ok(true)) {
            failures.push(format!("I_(1,1) presentations differ at n={n}"));
        }
    }
    let mut loci = Vec::new();
    for id in ["B1_6", "B2_6"] {
        let r = cat
            .entry(id)
            .and_then(|e| e.build(6, &None))
            .and_then(|a| squaring_pencil(&a))
            .map(|p| pencil_signature(&p).zero_locus_dim);
        match r {
            Ok(z) => loci.push(z),
            Err(err) => failures.push(format!("{id} pencil: {err}")),
        }
    }
    if failures.is_empty() && loci != [ZeroLocus::Linear(1), ZeroLocus::Linear(2)] {
        failures.push(format!("zero loci {loci:?}, expected (1, 2)"));
    }
    outcome(failures, "B3 = B1 certified; I_(1,1) simplification; zero loci (1, 2)".into())
}

fn counts(cat: &Catalog) -> Outcome {
    let mut failures = Vec::new();
    for n in 3..=12 {
        let report = cat.verify_counts(n);
        for row in report.rows.iter().filter(|r| !r.matches) {
            failures.push(format!("n={n} d={}: {} vs {}", row.degree, row.count(), row.expected));
        }
    }
    let nine = cat.verify_counts(9);
    if !nine.rows.iter().any(|r| r.degree == 6 && r.count() == Expected::Infinite) {
        failures.push("no infinite marker at (9, 6)".into());
    }
    outcome(failures, "n = 3..12 match, inf at (9, 6)".into())
}

fn properties(cat: &Catalog, max: u32) -> Outcome {
    let jobs = cat.jobs(2, max);
    let failures: Vec<String> = jobs
        .par_iter()
        .flat_map_iter(|(id, n, c)| {
            let tag = format!("{id} n={n}{}", c.as_ref().map(|c| format!(" c={}", rational::format(c))).unwrap_or_default());
            let mut out = Vec::new();
            let run = || -> htlab::Result<Vec<String>> {
                let mut bad = Vec::new();
                let e = cat.entry(id)?;
                let a = e.build(*n, c)?;
                if let Err(err) = a.check_structure() {
                    bad.push(format!("structure: {err}"));
                }
                let hs = a.hilbert_samuel();
                if !validate_hs_shape(&hs).is_valid() {
                    bad.push(format!("shape of {hs:?}"));
                }
                for k in 1..hs.len() as u32 {
                    if !power_span_check(&a, k, 8, 0).holds {
                        bad.push(format!("powers do not span m^{k}"));
                    }
                }
                let h = e.hpair(&a, *n, None)?;
                let f = hypersurface_equation(&h);
                let t = point_test(&h, &f, 200, 0);
                if t.failures > 0 {
                    bad.push(format!("{} of {} orbit points off the hypersurface", t.failures, t.points));
                }
                let space = derivation_space(&a, true)?;
                if !space.all_nilpotent() {
                    bad.push("non-nilpotent restricted derivation".into());
                }
                if !space.is_closed_under_commutator() {
                    bad.push("restricted derivations not closed under brackets".into());
                }
                Ok(bad)
            };
            match run() {
                Ok(bad) => out.extend(bad.into_iter().map(|b| format!("{tag}: {b}"))),
                Err(err) => out.push(format!("{tag}: {err}")),
            }
            out
        })
        .collect();
    outcome(failures, format!("{} algebras", jobs.len()))
}

fn main() -> ExitCode {
    let cat = Catalog::builtin();
    let max = max_n();
    let reports = cat.verify_range(2, max);
    let results = [
        ("1 golden equations", golden_equations(cat)),
        ("2 degree bound", degree_bounds(cat, &reports)),
        ("3 Hilbert-Samuel and Gorenstein", hilbert_samuel(&reports)),
        ("4 transitivity and family relations", transitivity(&reports)),
        ("5 isomorphism certificates", isomorphisms(cat)),
        ("6 class counts", counts(cat)),
        ("7 property suites", properties(cat, max)),
    ];
    let mut all = true;
    for (name, o) in &results {
        all &= o.passed;
        println!("{} criterion {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    let passed = results.iter().filter(|(_, o)| o.passed).count();
    println!("acceptance: {passed}/{} criteria pass (n <= {max})", results.len());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
