//! Acceptance suite: one PASS/FAIL line per criterion, exact equality only.
//! Runs without the libtest harness so every line is printed on each run.

use std::time::Instant;

use ncsym::compositions::{check_c_symmetry, enumerate_up_to};
use ncsym::corpus::corpus;
use ncsym::diffops::{default_test_space, OperatorSystem};
use ncsym::inversion::{
    check_flow, dlog, dlog_bch, dlog_exp_matches_inverse, flow, inverse_slices, InversionMethod,
};
use ncsym::jacobian::{generate_triangular_h, no_vanishing, run_jc_experiment};
use ncsym::nsym::formulas::check_all_tables;
use ncsym::nsym::{
    binomial_identity_check, exp_phi_series, verify_identity, DLogBasis, FamilyKind, FamilyTable, IdentityId,
};
use ncsym::par::Exec;
use ncsym::rational::{qi, Q};
use ncsym::series::Poly;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn square() -> Vec<Poly<Q>> {
    let z = Poly::var(1, 0);
    vec![z.mul(&z)]
}

fn criterion_1() -> Outcome {
    let table = FamilyTable::new(7);
    let mut failing = Vec::new();
    let mut checked = 0;
    for id in IdentityId::ALL {
        let r = verify_identity(&table, id, Exec::Parallel).expect("weights within cap");
        checked += r.checked;
        if !r.passed() {
            failing.push(id.label());
        }
    }
    let symmetry = check_c_symmetry(7);
    let ok = failing.is_empty() && symmetry.is_none();
    outcome(
        ok,
        format!(
            "21 identities over {checked} compositions of weight <= 7; failing: {failing:?}; c symmetry counterexample: {symmetry:?}"
        ),
    )
}

fn criterion_2() -> Outcome {
    let residuals = FamilyTable::new(8).axiom_residuals();
    let entries = corpus(21, 2024);
    let reports: Vec<(usize, bool)> = entries
        .iter()
        .map(|e| {
            let sys = OperatorSystem::new(e.h.clone(), 8).expect("valid field");
            let r = sys.check_axioms(&default_test_space(e.n)).expect("orders within cap");
            (e.n, r.all())
        })
        .collect();
    let passed = reports.iter().filter(|(_, ok)| *ok).count();
    let ok = residuals.all_zero() && passed == reports.len();
    outcome(
        ok,
        format!(
            "NSym residuals to weight 8 failing: {:?}; operator axioms to t^8 hold for {passed}/{} random H",
            residuals.failing(),
            reports.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let z = Poly::<Q>::var(1, 0);
    let sys = OperatorSystem::new(square(), 4).expect("valid field");
    let catalan = [1, 2, 5, 14];
    let mut catalan_ok = true;
    for method in InversionMethod::FORMULAS {
        let slices = inverse_slices(&sys, method).expect("order within cap");
        for (m, c) in catalan.iter().enumerate() {
            catalan_ok &= slices[m][0] == z.pow(1, m + 2).scale(&qi(*c));
        }
    }
    let entries = corpus(20, 77);
    let mut agreeing = 0;
    let mut total = 0;
    for e in &entries {
        let sys = OperatorSystem::new(e.h.clone(), 8).expect("valid field");
        let oracle = inverse_slices(&sys, InversionMethod::Oracle).expect("oracle");
        for method in InversionMethod::FORMULAS {
            total += 1;
            if inverse_slices(&sys, method).expect("order within cap") == oracle {
                agreeing += 1;
            }
        }
    }
    outcome(
        catalan_ok && agreeing == total,
        format!("Catalan slices for H=z^2: {catalan_ok}; method/field pairs agreeing with the oracle to t^8: {agreeing}/{total}"),
    )
}

fn criterion_4() -> Outcome {
    let table = FamilyTable::new(7);
    let series = exp_phi_series(&table).expect("weights within cap");
    let forms_ok = series.all_agree();
    let comps = enumerate_up_to(7);
    let binomial_ok = comps.iter().all(|i| binomial_identity_check(i).expect("nonempty"));
    outcome(
        forms_ok && binomial_ok,
        format!(
            "{} exp(-u Phi) forms agree with direct exponentiation to weight 7: {forms_ok}; binomial identity over {} compositions: {binomial_ok}",
            series.forms.len(),
            comps.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let tables = check_all_tables(&FamilyTable::new(6), 4).expect("weights within cap");
    let nsym_ok = tables.iter().all(|t| t.holds);
    let mut fields = vec![square()];
    fields.extend(corpus(6, 5).into_iter().map(|e| e.h));
    let mut bases_ok = true;
    let mut exp_ok = true;
    let mut bch_ok = true;
    for h in &fields {
        let sys = OperatorSystem::new(h.clone(), 6).expect("valid field");
        let reference = dlog(&sys, DLogBasis::Lambda).expect("dlog");
        for b in DLogBasis::ALL {
            bases_ok &= dlog(&sys, b).expect("dlog").a_t == reference.a_t;
        }
        exp_ok &= dlog_exp_matches_inverse(&sys, &reference);
        let bch = dlog_bch(&sys, 4).expect("depth 4");
        bch_ok &= (1..=4).all(|m| bch.slice(m) == reference.slice(m));
    }
    outcome(
        nsym_ok && bases_ok && exp_ok && bch_ok,
        format!(
            "{} fields to t^6: four bases coincide {bases_ok}, exp(d(t))z = G_t {exp_ok}, BCH depth 4 matches to t^4 {bch_ok}; NSym tables {nsym_ok}",
            fields.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut fields = vec![square()];
    fields.extend(corpus(3, 11).into_iter().map(|e| e.h));
    let mut ok = true;
    let mut failures = Vec::new();
    for (k, h) in fields.iter().enumerate() {
        let sys = OperatorSystem::new(h.clone(), 5).expect("valid field");
        let f = flow(&sys, FamilyKind::Phi).expect("flow");
        let checks = check_flow(&sys, &f, &[-1, 2]).expect("checks");
        if !checks.all() {
            ok = false;
            failures.push(k);
        }
    }
    outcome(
        ok,
        format!("{} fields, T=5, 6x6 rational grid, F(z,-1) = oracle inverse, F(z,2) = F o F; failing fields: {failures:?}", fields.len()),
    )
}

fn criterion_7() -> Outcome {
    let entries = corpus(6, 31);
    let mut ok = true;
    let mut witnesses = Vec::new();
    for e in &entries {
        let sys = OperatorSystem::new(e.h.clone(), 5).expect("valid field");
        for m in 1..=5 {
            if let Some(w) = sys.lambda_psi_identity_witness(m, 8).expect("order within cap") {
                ok = false;
                witnesses.push((e.seed, m, format!("{:?}", w.exps())));
            }
        }
    }
    outcome(
        ok,
        format!("{} random fields, m <= 5, all monomials of degree <= 8; witnesses: {witnesses:?}", entries.len()),
    )
}

fn criterion_8() -> Outcome {
    const T: usize = 10;
    let mut ok = true;
    let mut cells = Vec::new();
    for n in 2..=4 {
        for d in 2..=3 {
            let (mut nilpotent, mut euler, mut xi) = (0, 0, 0);
            for seed in 0..10 {
                let h = generate_triangular_h(n, d, seed).expect("valid shape");
                let e = run_jc_experiment(&h, T);
                nilpotent += usize::from(e.nilpotency_index.is_some_and(|k| k <= n));
                euler += usize::from(e.euler_bound_holds == Some(true) && e.euler_identity_holds == Some(true));
                xi += usize::from(e.xi_vanish_from.is_some() && e.polynomial_inverse_verified == Some(true));
            }
            ok &= nilpotent == 10 && euler == 10 && xi == 10;
            cells.push(format!("(n={n},d={d}) nilpotent {nilpotent}/10 euler {euler}/10 xi {xi}/10"));
        }
    }
    let control = no_vanishing(&run_jc_experiment(&square(), T));
    ok &= control;
    outcome(ok, format!("T={T}: {}; control H=z^2 never vanishes: {control}", cells.join(", ")))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("NSym identity suite", criterion_1),
        ("NCS-system axioms", criterion_2),
        ("inversion four-way agreement", criterion_3),
        ("exp/flow formulas", criterion_4),
        ("D-Log", criterion_5),
        ("flow group law", criterion_6),
        ("lambda-psi operator identity", criterion_7),
        ("JC lab", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {} [{status}] {name}: {} ({:.1}s)", k + 1, o.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
