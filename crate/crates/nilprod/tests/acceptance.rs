//! Acceptance criteria, one report line each.

use std::process::Command;
use std::time::{Duration, Instant};

use nilprod_core::nilfactor::{census_set_product, formula_count, sharpness_example};
use nilprod_core::{
    DecomposeError, Decomposer, Gl2, MOrbitAtlas, Ring, RingSpec, Suite, Verifier, DEFAULT_CAP,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 218184014;

fn ring(spec: &str) -> Ring {
    Ring::new(spec.parse::<RingSpec>().unwrap()).unwrap()
}

fn atlas(r: &Ring) -> MOrbitAtlas {
    MOrbitAtlas::build(r, &Gl2::new(r, DEFAULT_CAP).unwrap())
}

/// Closed-form value when it exists and fits in u64.
fn big(q: u64, n: u32, s: u32) -> Option<u64> {
    formula_count(q, n, s).ok().and_then(|v| v.to_string().parse().ok())
}

fn products(r: &Ring, s: u32) -> u64 {
    census_set_product(r, s, DEFAULT_CAP).unwrap().count()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let r = ring("zmod:3^2");
    let nil = r.enumerate_nilpotents(DEFAULT_CAP).unwrap().len();
    let singular = r
        .enumerate_matrices(DEFAULT_CAP)
        .unwrap()
        .filter(|m| !r.is_invertible(m))
        .count();
    let s3 = products(&r, 3);
    let union = atlas(&r).size();
    let formula = big(3, 2, 3);
    outcome(
        nil == 729 && singular == 2673 && s3 == 897 && union == 897 && formula == Some(897),
        format!("Z9: {nil} nilpotents, {singular} singular, S_3 {s3}, union {union}, formula {formula:?}"),
    )
}

fn criterion_2() -> Outcome {
    let r = ring("zmod:3^1");
    let brute: Vec<u64> = (1..=4).map(|s| products(&r, s)).collect();
    let formula: Vec<Option<u64>> = (1..=4).map(|s| big(3, 1, s)).collect();
    let expected = [9, 25, 33, 33];
    let ok = brute == expected && formula.iter().zip(expected).all(|(f, e)| *f == Some(e));
    outcome(ok, format!("GF(3) s=1..4: brute {brute:?}, formula {formula:?}"))
}

fn criterion_3() -> Outcome {
    let r = ring("zmod:5^1");
    let brute: Vec<u64> = (1..=3).map(|s| products(&r, s)).collect();
    let third = big(5, 1, 3);
    let ok = brute[0] == 25 && brute[1] == 121 && Some(brute[2]) == third && third == Some(145);
    outcome(ok, format!("GF(5) s=1..3: brute {brute:?}, third branch {third:?}"))
}

fn criterion_4() -> Outcome {
    let pairs: Vec<(usize, u64)> = ["zmod:3^2", "polyq:3^1^2"]
        .iter()
        .map(|spec| {
            let r = ring(spec);
            (r.enumerate_nilpotents(DEFAULT_CAP).unwrap().len(), atlas(&r).size())
        })
        .collect();
    outcome(
        pairs[0] == pairs[1] && pairs[0] == (729, 897),
        format!("Z9 {:?}, GF(3)[t]/(t^2) {:?}", pairs[0], pairs[1]),
    )
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for spec in ["zmod:3^2", "polyq:3^1^2"] {
        let r = ring(spec);
        let at = atlas(&r);
        let cert = sharpness_example(&r, &at).unwrap();
        let refusal = Decomposer::new(&r, &at).decompose(&cert.target, 3);
        let refused = refusal == Err(DecomposeError::NotInOrbitUnion)
            && refusal.unwrap_err().to_string() == "not in orbit union";
        let good = cert.factorization.factors.len() == 2
            && cert.factorization.verify(&r)
            && !cert.in_orbit_union
            && !at.contains(&r, &cert.target)
            && refused;
        ok &= good;
        notes.push(format!("{spec} {}", if good { "certified" } else { "broken" }));
    }
    outcome(ok, notes.join(", "))
}

fn criterion_6() -> Outcome {
    let r = ring("zmod:3^2");
    let s3 = census_set_product(&r, 3, DEFAULT_CAP).unwrap();
    let at = atlas(&r);
    outcome(
        &s3 == at.union(),
        format!("S_3 and orbit union as bitsets: {} vs {}", s3.count(), at.size()),
    )
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut pairs = 0u64;
    for spec in ["zmod:3^1", "zmod:5^1"] {
        let r = ring(spec);
        let nil = r.enumerate_nilpotents(DEFAULT_CAP).unwrap();
        for x in &nil {
            for y in &nil {
                let p = r.mat_mul(x, y);
                ok &= p.is_zero() || !r.trace(&p).is_zero();
                pairs += 1;
            }
        }
    }
    outcome(ok, format!("{pairs} nilpotent pairs over GF(3) and GF(5)"))
}

fn criterion_8() -> Outcome {
    let plan: [(&str, &[Suite]); 4] = [
        ("zmod:3^1", &Suite::ALL),
        ("zmod:3^2", &Suite::ALL),
        ("polyq:3^1^2", &[Suite::Axioms, Suite::Iso, Suite::Lemma33, Suite::Lemma34, Suite::Lemma35]),
        ("polyq:3^1^3", &[Suite::Axioms, Suite::Lemma37]),
    ];
    let mut failed = Vec::new();
    let mut checks = 0;
    let mut lemma37_hits = 0;
    for (spec, suites) in plan {
        let r = ring(spec);
        let at = (r.n() <= 2).then(|| atlas(&r));
        let mut v = Verifier::new(&r, DEFAULT_CAP, 100_000);
        if let Some(a) = &at {
            v = v.with_atlas(a);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for &suite in suites {
            let rep = v.run(suite, &mut rng).unwrap();
            checks += rep.checks;
            if suite == Suite::Lemma37 && r.n() == 3 {
                lemma37_hits = rep.checks;
            }
            if !rep.passed() {
                failed.push(format!("{spec}/{suite}"));
            }
        }
    }
    outcome(
        failed.is_empty() && lemma37_hits > 0,
        format!("{checks} checks, lemma37 hits on GF(3)[t]/(t^3): {lemma37_hits}, failures {failed:?}"),
    )
}

fn criterion_9() -> Outcome {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_nilprod"))
            .args(["census", "--ring", "zmod:3^2", "--s", "3", "--stable-output", "--threads", threads])
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    let ok = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(ok, format!("{} bytes, threads 1 vs 4", a.stdout.len()))
}

/// Criterion number, check, time limit in seconds.
type Criterion = (u32, fn() -> Outcome, u64);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        (1, criterion_1, 10),
        (2, criterion_2, 1),
        (3, criterion_3, 30),
        (4, criterion_4, 10),
        (5, criterion_5, 5),
        (6, criterion_6, 30),
        (7, criterion_7, 5),
        (8, criterion_8, 120),
        (9, criterion_9, 30),
    ];
    let mut all = true;
    for (id, check, limit) in criteria {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = out.ok && in_time;
        all &= pass;
        println!(
            "criterion {id}: {} ({} ms, limit {limit} s) {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_millis(),
            out.detail
        );
    }
    assert!(all, "some acceptance criteria failed");
}
