//! Acceptance gate: one line per criterion, `ACCEPT <id> <PASS|FAIL> <name>`.
//! Every comparison is exact. The process exits nonzero if any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use braidw::antisym::{
    build_hom, check_biideal, check_factorizations, kernel_analysis, w_direct, w_recursive,
};
use braidw::bialgebra::{
    check_associativity, check_coassociativity, check_compatibility, shuffle_mult,
};
use braidw::braidperm::{Permutation, DEFAULT_ENUMERATION_CAP as CAP};
use braidw::scalar::Ring;
use braidw::tensorlin::ExactMatrix;
use braidw::yb::{catalog, matsumoto_defect, verify_braid_equation, CatalogParams};
use common::{catalog_d_le_2, classical_sum, label, naive_rank, q_factorial_oracle};
use num_rational::BigRational;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, start: Instant) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{:.2}s", took.as_secs_f64()))
}

fn c1_golden_shuffle() -> Outcome {
    let start = Instant::now();
    let ops = catalog_d_le_2();
    for b in &ops {
        let id = ExactMatrix::identity(b.ring(), b.dim());
        let b_id = b.matrix().kron(&id).unwrap();
        let id_b = id.kron(b.matrix()).unwrap();
        let expected = b
            .identity(3)
            .add(&b_id)
            .unwrap()
            .add(&b_id.mul(&id_b).unwrap())
            .unwrap();
        let got = shuffle_mult(b, 1, 2).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{} differs at {:?}", label(b), got.first_difference(&expected)))?;
    }
    Ok(format!("{} operators, {}", ops.len(), timed(Duration::from_secs(1), start)?))
}

fn c2_direct_equals_recursive() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut run = |b: &braidw::YbOperator, max: usize| -> Result<(), String> {
        let (family, _) = w_recursive(b, max).map_err(|e| e.to_string())?;
        for n in 0..=max {
            let direct = w_direct(b, n, CAP).map_err(|e| e.to_string())?;
            ensure(family.get(n).unwrap() == &direct, || format!("{} n={n}", label(b)))?;
            cases += 1;
        }
        Ok(())
    };
    for b in catalog_d_le_2() {
        run(&b, 5)?;
    }
    for name in ["flip", "signed-flip", "diagonal"] {
        let params = CatalogParams {
            dim: Some(3),
            param: None,
        };
        run(&catalog(name, Ring::Rationals, &params).unwrap(), 4)?;
    }
    Ok(format!("{cases} components, {}", timed(Duration::from_secs(60), start)?))
}

fn c3_classical_dimensions() -> Outcome {
    let ranks = |name: &str, dim: usize| -> Vec<usize> {
        let params = CatalogParams {
            dim: Some(dim),
            param: None,
        };
        let b = catalog(name, Ring::Rationals, &params).unwrap();
        let (family, _) = w_recursive(&b, 5).unwrap();
        kernel_analysis(&family, false, &[]).unwrap().hilbert()
    };
    let exterior = ranks("signed-flip", 3);
    let symmetric = ranks("flip", 2);
    let exterior_oracle: Vec<usize> = (0..=5).map(|n| naive_rank(classical_sum(3, n, true))).collect();
    let symmetric_oracle: Vec<usize> = (0..=5).map(|n| naive_rank(classical_sum(2, n, false))).collect();
    ensure(exterior_oracle == [1, 3, 3, 1, 0, 0], || format!("oracle {exterior_oracle:?}"))?;
    ensure(symmetric_oracle == [1, 2, 3, 4, 5, 6], || format!("oracle {symmetric_oracle:?}"))?;
    ensure(exterior == exterior_oracle, || format!("exterior {exterior:?}"))?;
    ensure(symmetric == symmetric_oracle, || format!("symmetric {symmetric:?}"))?;
    Ok(format!("exterior {exterior:?}, symmetric {symmetric:?}"))
}

fn c4_q_factorial() -> Outcome {
    let b = catalog("scalar-q", Ring::Laurent, &CatalogParams::default()).unwrap();
    let (family, _) = w_recursive(&b, 6).unwrap();
    for n in 0..=6 {
        let w = family.get(n).unwrap();
        let poly = w.get(0, 0).as_laurent().unwrap();
        let oracle = q_factorial_oracle(n);
        let got: Vec<(i64, BigRational)> = poly.terms().map(|(e, c)| (e, c.clone())).collect();
        let expected: Vec<(i64, BigRational)> = oracle
            .iter()
            .map(|(&e, &c)| (e, BigRational::from_integer(c.into())))
            .collect();
        ensure(got == expected, || format!("n={n}: {poly} vs {oracle:?}"))?;
        ensure(w_direct(&b, n, CAP).unwrap() == *w, || format!("direct n={n}"))?;
    }
    Ok("n = 0..6".into())
}

fn c5_factorizations() -> Outcome {
    let mut total = 0;
    for b in catalog_d_le_2() {
        let (family, _) = w_recursive(&b, 5).unwrap();
        let report = check_factorizations(&family).map_err(|e| e.to_string())?;
        if let Some(v) = report.verdicts.iter().find(|v| !v.passed()) {
            return Err(format!("{}: {v}", label(&b)));
        }
        total += report.len();
    }
    Ok(format!("{total} verdicts"))
}

fn c6_main_theorem() -> Outcome {
    let mut total = 0;
    for b in catalog_d_le_2() {
        let hom = build_hom(&b, 5, CAP).map_err(|e| e.to_string())?;
        if let Some(v) = hom.report.verdicts.iter().find(|v| !v.passed()) {
            return Err(format!("{}: {v}", label(&b)));
        }
        total += hom.report.len();
    }
    Ok(format!("{total} verdicts up to degree 5"))
}

fn c7_bialgebra_axioms() -> Outcome {
    let mut total = 0;
    for b in catalog_d_le_2() {
        for report in [
            check_associativity(&b, 4),
            check_coassociativity(&b, 4),
            check_compatibility(&b, 4),
        ] {
            let report = report.map_err(|e| e.to_string())?;
            if let Some(v) = report.verdicts.iter().find(|v| !v.passed()) {
                return Err(format!("{}: {v}", label(&b)));
            }
            total += report.len();
        }
    }
    Ok(format!("{total} verdicts"))
}

fn c8_biideal() -> Outcome {
    let mut total = 0;
    let mut nontrivial = 0;
    for b in catalog_d_le_2() {
        let (family, _) = w_recursive(&b, 4).unwrap();
        let report = check_biideal(&family).map_err(|e| e.to_string())?;
        if let Some(v) = report.verdicts.iter().find(|v| !v.passed()) {
            return Err(format!("{}: {v}", label(&b)));
        }
        let ideal = report.verdicts.iter().filter(|v| v.check == "biideal-ideal").count();
        let coideal = report.verdicts.iter().filter(|v| v.check == "biideal-coideal").count();
        ensure(ideal == 15 && coideal == 15, || format!("{}: sub-check counts", label(&b)))?;
        let kernels = kernel_analysis(&family, false, &[]).unwrap();
        nontrivial += kernels.degrees.iter().filter(|d| d.kernel_dim > 0).count();
        total += report.len();
    }
    ensure(nontrivial > 0, || "every kernel was trivial".into())?;
    Ok(format!("{total} verdicts, {nontrivial} nonzero kernels"))
}

fn c9_matsumoto() -> Outcome {
    let b = catalog("hecke-q", Ring::Laurent, &CatalogParams::default()).unwrap();
    let mut words = 0;
    for n in 0..=4 {
        ensure(matsumoto_defect(&b, n, CAP).unwrap().is_none(), || format!("n={n}"))?;
        for p in braidw::braidperm::permutations(n, CAP).unwrap() {
            for w in p.all_reduced_words() {
                ensure(Permutation::from_word(n, &w).unwrap() == p, || format!("{p} {w:?}"))?;
                words += 1;
            }
        }
    }
    Ok(format!("hecke-q, {words} reduced words"))
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_braidw"))
}

fn c10_robustness() -> Outcome {
    let diag = ExactMatrix::from_i64(
        Ring::Rationals,
        &[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 4]],
    );
    let check = verify_braid_equation(&diag, 2).unwrap();
    ensure(check.failing_index() == Some(vec![0, 0, 1]), || format!("{:?}", check.failing_index()))?;
    let entry = check.residual.get(1, 1).as_rational().unwrap().clone();
    ensure(entry == BigRational::from_integer(2.into()), || format!("residual {entry}"))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let diag_file = dir.path().join("diag.op");
    std::fs::write(&diag_file, "ring rational\ndim 2\n1 0 0 0\n0 2 0 0\n0 0 3 0\n0 0 0 4\n").unwrap();
    let transcripts = [
        (vec!["verify-yb".to_string(), "--op".into(), "flip".into()], 0, "CHECK braid-equation PASS"),
        (
            vec!["verify-yb".into(), "--op".into(), diag_file.display().to_string()],
            1,
            "CHECK braid-equation FAIL at index (0,0,1)",
        ),
        (
            vec!["verify-yb".into(), "--op".into(), dir.path().join("missing.op").display().to_string()],
            2,
            "",
        ),
    ];
    for (args, code, needle) in transcripts {
        let out = binary().args(&args).output().map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        ensure(out.status.code() == Some(code), || format!("{args:?}: exit {:?}", out.status.code()))?;
        ensure(stdout.contains(needle), || format!("{args:?}: {stdout}"))?;
    }
    Ok("residual at (0,0,1); exits 0/1/2".into())
}

fn c11_performance() -> Outcome {
    let start = Instant::now();
    for op in ["flip", "signed-flip", "diagonal", "hecke-q"] {
        let out = binary()
            .args(["verify-identities", "--op", op])
            .output()
            .map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        ensure(out.status.success(), || format!("{op}: {}", stdout.lines().last().unwrap_or("")))?;
        ensure(stdout.contains("SUITE PASS"), || format!("{op}: no SUITE PASS"))?;
    }
    timed(Duration::from_secs(120), start)
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1", "golden shuffle product mu_{1,2}", c1_golden_shuffle),
        ("2", "direct sum equals recurrence", c2_direct_equals_recursive),
        ("3", "classical exterior and symmetric ranks", c3_classical_dimensions),
        ("4", "q-factorial law", c4_q_factorial),
        ("5", "factorizations through mu and the coshuffle", c5_factorizations),
        ("6", "homomorphism theorem", c6_main_theorem),
        ("7", "bialgebra axioms", c7_bialgebra_axioms),
        ("8", "kernel is a biideal", c8_biideal),
        ("9", "reduced-word invariance", c9_matsumoto),
        ("10", "robustness and exit codes", c10_robustness),
        ("11", "suite performance envelope", c11_performance),
    ];
    let mut failed = 0;
    for (id, name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("ACCEPT {id:>2} PASS {name} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("ACCEPT {id:>2} FAIL {name}: {why}");
            }
        }
    }
    println!("ACCEPTANCE {} passed={} failed={failed}", if failed == 0 { "PASS" } else { "FAIL" }, 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
