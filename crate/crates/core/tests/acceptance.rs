//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use paralift::verify::{
    verify_corollary, verify_endo_lift, verify_function_lifts, verify_oneform_lifts,
    verify_para_structures, verify_theorem1, verify_theorem1_with, verify_vector_lifts, CaseSpec,
    IdentityReport, QVariant, Status,
};

struct Criterion {
    number: u32,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn spec(m: usize, cases: usize) -> CaseSpec {
    CaseSpec {
        m,
        cases,
        seed: 0,
        max_degree: 2,
        max_terms: 3,
    }
}

fn failures(reports: &[IdentityReport]) -> Vec<String> {
    reports
        .iter()
        .flat_map(|r| r.results.iter())
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{}/{} {:?}", r.suite, r.identity, r.status))
        .collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn within(budget: Duration, took: Duration) -> String {
    format!("{:.2}s of {}s", took.as_secs_f64(), budget.as_secs())
}

fn main() -> ExitCode {
    let mut all_reports: Vec<IdentityReport> = Vec::new();
    let mut out = Vec::new();

    // 1. lift laws
    let (lifts, took) = timed(|| {
        let mut reps = Vec::new();
        for m in [1, 2] {
            let s = spec(m, 25);
            reps.push(verify_function_lifts(&s).unwrap());
            reps.push(verify_vector_lifts(&s).unwrap());
            reps.push(verify_oneform_lifts(&s).unwrap());
            reps.push(verify_endo_lift(&s).unwrap());
        }
        reps
    });
    let bad = failures(&lifts);
    let counts_ok = lifts
        .iter()
        .flat_map(|r| &r.results)
        .all(|r| r.cases == 25 && r.degenerate == 3);
    let budget = Duration::from_secs(10);
    out.push(Criterion {
        number: 1,
        title: "lift-law suites, m in {1,2}, 25 random + 3 degenerate",
        ok: bad.is_empty() && counts_ok && took < budget,
        detail: format!("{} identities, {}; {}", lifts.iter().map(|r| r.results.len()).sum::<usize>(), within(budget, took), bad.join(", ")),
    });
    all_reports.extend(lifts);

    // 2. structures
    let (structs, took) = timed(|| [1, 2].map(|m| verify_para_structures(&spec(m, 25)).unwrap()));
    let budget = Duration::from_secs(1);
    let bad = failures(&structs);
    let required = [
        "structure.involution",
        "dual.involution",
        "lifted.involution",
        "lifted.on-complete",
        "real.bridge",
    ];
    let present = structs.iter().all(|r| required.iter().all(|id| r.result(id).is_some()));
    out.push(Criterion {
        number: 2,
        title: "J^2 = I, J*^2 = I, (J^c)^2 = I, J^c(X^c) = (JX)^c, real bridge",
        ok: bad.is_empty() && present && took < budget,
        detail: format!("{}; {}", within(budget, took), bad.join(", ")),
    });
    all_reports.extend(structs);

    // 3. and 5. construction on torsion-free connections
    let (theorem, took) = timed(|| [1, 2].map(|m| verify_theorem1(&spec(m, 10)).unwrap()));
    let budget = Duration::from_secs(30);
    let core_ids = [
        "corrected.parallel",
        "torsion.nijenhuis",
        "involution.corrected.parallel",
        "involution.torsion.nijenhuis",
    ];
    let core_ok = theorem
        .iter()
        .all(|r| core_ids.iter().all(|id| r.result(id).map(|x| x.status) == Some(Status::Pass)));
    let notes: Vec<String> = theorem.iter().flat_map(|r| r.notes.iter().cloned()).collect();
    out.push(Criterion {
        number: 3,
        title: "~nabla J = 0 and 4T = -N_J, 10 random torsion-free connections, m in {1,2}",
        ok: core_ok && took < budget,
        detail: format!("{}; {}", within(budget, took), notes.join("; ")),
    });
    let proof_ids = [
        "proof.a-term",
        "proof.j-nabla-j",
        "involution.proof.a-term",
        "involution.proof.j-nabla-j",
    ];
    let proof_ok = theorem
        .iter()
        .all(|r| proof_ids.iter().all(|id| r.result(id).map(|x| x.status) == Some(Status::Pass)));
    let rest = failures(&theorem);
    out.push(Criterion {
        number: 5,
        title: "A(X,Y) = -(nabla_X J)Y and J((nabla_X J)JY) = -(nabla_X J)Y",
        ok: proof_ok && rest.is_empty(),
        detail: rest.join(", "),
    });
    all_reports.extend(theorem);

    // 4. corollary
    let (corollary, took) = timed(|| verify_corollary(&spec(1, 5)).unwrap());
    let budget = Duration::from_secs(60);
    let bad = failures(std::slice::from_ref(&corollary));
    out.push(Criterion {
        number: 4,
        title: "complete lift -> J^c -> corrected: torsion 0 and ~nabla J^c = 0 on TM, m = 1",
        ok: bad.is_empty() && took < budget,
        detail: format!("{}; {}", within(budget, took), bad.join(", ")),
    });
    all_reports.extend(std::iter::once(corollary));

    // 7. mutation
    let flipped = verify_theorem1_with(&spec(1, 10), QVariant::Flipped).unwrap();
    let witness = flipped
        .results
        .iter()
        .filter(|r| r.status == Status::Fail)
        .find_map(|r| r.witness.clone().map(|w| (r.identity.clone(), w)));
    let mutation_ok = !flipped.passed()
        && matches!(&witness, Some((_, w)) if !w.assignment.is_empty() && w.left_value != w.right_value);
    let mutation_detail = match &witness {
        Some((id, w)) => format!("{id}: case {} at {}: {} != {}", w.case, w.assignment, w.left_value, w.right_value),
        None => "no witness".into(),
    };
    all_reports.push(flipped);

    // 6. oracle consistency over everything above
    let consistency: usize = all_reports.iter().map(|r| r.consistency_failures).sum();
    out.push(Criterion {
        number: 6,
        title: "oracle consistency",
        ok: consistency == 0,
        detail: format!("{consistency} internal-consistency failures"),
    });
    out.push(Criterion {
        number: 7,
        title: "sign-flipped Q is detected",
        ok: mutation_ok,
        detail: mutation_detail,
    });

    out.sort_by_key(|c| c.number);
    for c in &out {
        println!(
            "criterion {}: {} - {} [{}]",
            c.number,
            if c.ok { "PASS" } else { "FAIL" },
            c.title,
            c.detail
        );
    }
    if out.iter().all(|c| c.ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
